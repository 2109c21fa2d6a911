# coding: utf-8

# # A tour of Cyc-orbits
#
# Run with `python demos/orbit_tour.py`. Each cell prints what it computes.
#
# The objects here are subgroups G of GL_2(Z/lZ) acting on the l+1 cyclic
# subgroups of order l in (Z/lZ)^2. An orbit of size s corresponds to a
# cyclic isogeny whose field of definition has degree s over the base, so
# orbit sizes are what we care about.

# In[1]:

from collections import Counter

import numpy as np

from gl2lab import Space, orbit_decomposition, parse_group_spec, standard_group
from gl2lab.groups import index, minimal_cartan_power
from gl2lab.census import enumerate_ns_subgroups, CensusConstraints

ell = 13
cyc = Space("cyc", ell)

# # The standard families
#
# GL_2 and the normalizer of a nonsplit Cartan are transitive; the Borel
# fixes the line through e_1 and moves the other l lines together.

# In[2]:

for fam in ("GL2", "Borel", "SplitCartan", "SplitNormalizer", "NonsplitCartan",
            "NonsplitNormalizer", "Gell"):
    G = standard_group(fam, ell)
    print(f"{fam:>19}  order {G.order:>6}  orbit sizes {sorted(orbit_decomposition(G, cyc).sizes)}")

# The exceptional group G(l) sits in N_ns(l) with index 3, so each of its
# orbit sizes is even and l+1 divides three times it.

# In[3]:

Nns, Gl = standard_group("NonsplitNormalizer", ell), standard_group("Gell", ell)
print("index", index(Nns, Gl))

# # Inside the split normalizer
#
# Walk the census of subgroups of N_s(13) that contain the scalars, have
# full determinant on their Cartan part, are not inside C_s, and whose
# minimal Cartan power lies in {1,2,3,4,6}. Every orbit size is even.

# In[4]:

groups = enumerate_ns_subgroups(ell, CensusConstraints.all())
print(len(groups), "groups survive the constraints")
tally = Counter()
for G in groups:
    sizes = orbit_decomposition(G, cyc).sizes
    tally[tuple(sorted(sizes))] += 1
    assert all(s % 2 == 0 for s in sizes)
for sizes, count in sorted(tally.items()):
    print(f"  {count:2d} group(s) with orbit sizes {list(sizes)}")

# Drop the constraints and odd orbits appear quickly.

# In[5]:

odd = [G for G in enumerate_ns_subgroups(ell)
       if any(s % 2 for s in orbit_decomposition(G, cyc).sizes)]
print(len(odd), "unconstrained subgroups have an odd orbit; e.g.")
G = odd[-1]
print(" ", G.spec, "order", G.order, "e =", minimal_cartan_power(G),
      "sizes", sorted(orbit_decomposition(G, cyc).sizes))

# # Group specs replay
#
# Any group prints a spec string that parses back to the same element set.

# In[6]:

H = parse_group_spec(G.spec)
print("round trip ok:", np.array_equal(H.elements, G.elements))
