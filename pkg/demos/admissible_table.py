"""Count forests whose edge symmetries are all even, by edges k and vertices n."""

import sys

from dirforest.quotient.symmetry import f_table, format_f_table

n_max = int(sys.argv[1]) if len(sys.argv) > 1 else 8
print(format_f_table(f_table(n_max)))
