"""Compare closed-form homotopy types of path and cycle families with direct homology."""

from dirforest.complex import build_delta, c_complex, l_complex
from dirforest.families import c_homotopy, delta_cycle_homotopy, delta_string_homotopy, l_homotopy
from dirforest.graph import double_cycle_graph, double_string_graph
from dirforest.homology import reduced_nonzero, simplicial_homology


def betti(K):
    return {d: g.betti for d, g in reduced_nonzero(simplicial_homology(K)).items()}


rows = []
for n in range(3, 8):
    rows.append(("path independence", n, l_homotopy(n)[0], betti(l_complex(n))))
    rows.append(("string forests", n, delta_string_homotopy(n), betti(build_delta(double_string_graph(n)))))
    rows.append(("cycle independence", n, c_homotopy(n), betti(c_complex(n))))
    rows.append(("cycle forests", n, delta_cycle_homotopy(n), betti(build_delta(double_cycle_graph(n)))))
for name, n, predicted, observed in rows:
    ok = "ok" if predicted.betti() == observed else "MISMATCH"
    print(f"{name:20s} n={n}  predicted {str(predicted):28s} observed {observed}  {ok}")
