"""
Building the superalgebras S(t) and looking at their ideals
===========================================================

Each S(t) is assembled from upper triangular t x t matrices and an
involution.  We build the small cases, check the superalgebra identities,
and print the data of the nilpotent graded ideal.
"""
from pi_codim.suites import relation_check
from pi_codim.ut import build_S, ideal_data

# the orthogonal involution exists for every t, the symplectic one for even t
cases = [(t, "orth") for t in range(2, 7)] + [(t, "sympl") for t in (2, 4, 6)]

for t, kind in cases:
    S, names = build_S(t, kind)
    data = ideal_data(S)
    print(f"{S.name:22s} dim={S.dim:3d}  codim of ideal={data.d0 + data.d1:2d}  "
          f"(d0, d1)=({data.d0}, {data.d1})  nilpotency index={data.index_all}")

# the commutation rules among the named generators, checked exactly
S, names = build_S(4, "orth")
rel = relation_check(4, "orth")
print()
print("relations for S(t=4,inv=orth):")
for key, value in sorted(rel.items()):
    print(f"  {key}: {value}")
