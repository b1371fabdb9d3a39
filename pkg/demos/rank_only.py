"""Characters of central elements depend only on the rank of the symmetry.

Three rank-2 Hecke symmetries at q = 13/7: the standard one, a conjugate of
it, and a multiparameter twist.  Their R-matrices differ; the eigenvalues of
tr L and e_2 on every isotypic block agree.
"""

from flint import fmpq, fmpq_mat

from qcasimir import QContext, build_multiparameter, build_standard, conjugate, trace_data
from qcasimir.casimir import CentralExpr, character_table
from qcasimir.young import partitions

ctx = QContext(fmpq(13, 7))
standard = build_standard(2, ctx)
symmetries = {
    "standard": standard,
    "conjugated": conjugate(standard, fmpq_mat([[1, 3], [0, 2]])),
    "twisted": build_multiparameter(2, ctx, {(1, 2): fmpq(5, 3)}),
}

for label in ("trL", "e:2"):
    x = CentralExpr.parse(label)
    for k in (1, 2, 3):
        line = []
        for name, R in symmetries.items():
            T = trace_data(R)
            table = character_table(x, k, R, T)
            line.append(tuple(table[lam].value for lam in partitions(k, max_rows=2)))
        agree = all(v == line[0] for v in line)
        print(f"{label} on V^(x){k}: {[str(v) for v in line[0]]}  same for all three: {agree}")
