# coding: utf-8

# # Degrees up a torsion tower
#
# Run with `python demos/tower_degrees.py`.
#
# For a point P of order n and C = <P>, the degree [F(P):F(C)] equals the
# stabilizer index [Stab(C):Stab(P)], which always divides phi(n). Here we
# tabulate which divisors actually occur for random subgroups.

# In[1]:

from collections import defaultdict

import numpy as np

from gl2lab import MatrixGroup, Mat2
from gl2lab.orbits import orbit_size_grid
from gl2lab.residue import euler_phi

rng = np.random.default_rng(2024)


def random_subgroup(n, k=2):
    gens = []
    while len(gens) < k:
        m = Mat2(n, *(int(v) for v in rng.integers(0, n, 4)))
        if m.is_invertible():
            gens.append(m)
    return MatrixGroup(n, gens)


# # Degrees [F(P):F(C)] per modulus
#
# The ratio of orbit sizes on vectors and on cyclic submodules, taken at
# every point of exact order n.

# In[2]:

seen = defaultdict(set)
for n in (5, 7, 8, 9, 12):
    for _ in range(40):
        G = random_subgroup(n, k=int(rng.integers(1, 3)))
        vec, cyc = orbit_size_grid(G, "vec"), orbit_size_grid(G, "cyc")
        for x in range(n):
            for y in range(n):
                if np.gcd(np.gcd(x, y), n) == 1:
                    seen[n].add(int(vec[x * n + y] // cyc[x * n + y]))
    print(f"n = {n:2d}  phi = {euler_phi(n):2d}  degrees seen {sorted(seen[n])}")
    assert all(euler_phi(n) % d == 0 for d in seen[n])

# Degrees are divisors of phi(n), and small generator sets already reach
# most of them.
