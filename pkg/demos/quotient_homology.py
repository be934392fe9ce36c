"""Homology of the symmetric quotient computed from its cells and from the first page."""

import sys
import time

from dirforest.homology import homology, reduced_nonzero
from dirforest.quotient.cells import x_chain_complex
from dirforest.quotient.spectral import d1_page, e1_homology

top = int(sys.argv[1]) if len(sys.argv) > 1 else 6
for n in range(3, top + 1):
    t0 = time.perf_counter()
    X = x_chain_complex(n)
    direct = homology(X)
    t1 = time.perf_counter()
    page = d1_page(n)
    first = e1_homology(n, page=page)
    t2 = time.perf_counter()
    text = ", ".join(f"H~{d}={g}" for d, g in reduced_nonzero(direct).items())
    print(f"n={n}: cells per degree {X.ranks}; generators on the first page {[len(page.basis[k]) for k in range(n)]}")
    print(f"      {text}   agree={direct == first}   ({t1 - t0:.2f}s direct, {t2 - t1:.2f}s first page)")
