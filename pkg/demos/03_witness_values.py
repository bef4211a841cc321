"""
Evaluating the alternating witness polynomials
==============================================

The witnesses W(p, q) are alternating sums over nested commutators.  Their
values are computed two ways (formal expansion and direct summation) and
compared with the element [E_(1,2m-1), Y0] they were expected to hit.
In practice they land on a multiple of [E_(1,2m), Y0] instead.
"""
from pi_codim.algebra import bracket
from pi_codim.ut import build_S
from pi_codim.witness import claimed_value, proportionality, witness_W

for t in (2, 4):
    S, N = build_S(t, "orth")
    m = t // 2
    top = bracket(N.E[(1, 2 * m)], N.Y0)
    for p, q in [(1, 1), (1, 2), (2, 1), (2, 2)]:
        w = witness_W(p, q, t)
        value = w.value()
        expected = claimed_value(t, "orth", q)
        print(f"t={t} (p,q)=({p},{q})  degree={w.degree}  "
              f"value = {proportionality(value, top)} * [E_(1,{2 * m}), Y0]   "
              f"matches expected: {value == expected or value == -expected}")

# in the symplectic case the same commutator vanishes, so every witness is zero
S, N = build_S(2, "sympl")
print()
print("symplectic t=2, W(1,1) is zero:", witness_W(1, 1, 2, "sympl").value().is_zero())
