"""The two-path forest on 8 vertices: an odd edge symmetry and 2-torsion in its label complex."""

from dirforest.quotient.spectral import e_t_complex, e_t_homology, two_path_forest
from dirforest.quotient.symmetry import cycles, forest_symmetry_group, is_admissible, perm_sign

T = two_path_forest()
G = forest_symmetry_group(T)
print("forest", T.string, "with", T.k, "edges")
for g in G.elements:
    print("  edge permutation", g, "cycles", cycles(g), "sign", perm_sign(g))
print("admissible (all symmetries even):", is_admissible(T))
print("chain ranks of the label complex:", e_t_complex(T).ranks)
for g in e_t_homology(T):
    print(f"  H_{g.degree} = {g}")
