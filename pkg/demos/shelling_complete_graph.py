"""Shell the forest complex of the complete double graph and count its spheres."""

import sys

from dirforest.complex import build_delta
from dirforest.graph import complete_double_graph
from dirforest.homology import reduced_nonzero, simplicial_homology
from dirforest.shelling import facet_label, shelling_order, spanning_facets_count, verify_shelling

n = int(sys.argv[1]) if len(sys.argv) > 1 else 4
G = complete_double_graph(n)
K = build_delta(G)
order = shelling_order(G)
print(f"n={n}: {len(order)} facets, f-vector {K.f_vector()}")
print("first facets by label:")
for f in order[:5]:
    print("  ", facet_label(G, f), [G.edges[e] for e in f])
print("label order is a shelling:", verify_shelling(K, order))
print("facets attached along their whole boundary:", spanning_facets_count(order))
for d, g in reduced_nonzero(simplicial_homology(K)).items():
    print(f"reduced H_{d} = {g}")
