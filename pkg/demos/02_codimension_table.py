"""
Graded codimensions of S(2)
===========================

The partial codimension c_{k,m} is the dimension of the space of multilinear
polynomials in k even and m odd variables, modulo the graded identities.
It is the rank of an exact evaluation matrix.
"""
from pi_codim.codim import codim_table
from pi_codim.ut import build_S

S, _ = build_S(2, "orth")
table = codim_table(S, 6, cochar_max=4)

for row in table.rows:
    partial = [s.codim for s in row.sectors]
    print(f"n={row.n}  c_k,n-k={partial}  c_gr={row.c_gr}  root={row.root}")

# cocharacters: multiplicities of pairs of irreducible characters
row = table.rows[3]
print()
for s in row.sectors:
    pairs = ", ".join(f"{a}x{b}:{v}" for (a, b), v in sorted(s.multiplicities.items(), key=str))
    print(f"sector ({s.k},{s.m}): {pairs}")
