"""Walk through the q-Casimir tr L on the standard U_q(sl(2)) symmetry at q = 2.

Run with ``python demos/casimir_spectrum.py``.  Every number printed is an
exact rational.
"""

from flint import fmpq

from qcasimir import QContext, build_standard, trace_data, validate
from qcasimir.casimir import (TRL, CentralExpr, char_closed_forms, character_table,
                              platform_action, jm_trace_operator)
from qcasimir.young import partitions

q = fmpq(2)
R = build_standard(2, QContext(q))
T = trace_data(R)

# %% The symmetry is an involutive Hecke braiding of rank m = 2.
report = validate(R)
print(f"braid residual {report.braid_residual}, Hecke residual {report.hecke_residual}")
print(f"rank m = {T.rank}, Hilbert coefficients {T.hilbert}")

# %% tr L acts on V^{(x)k} through the R-trace of the inverse Jucys-Murphy element.
for k in range(4):
    same = platform_action(TRL, k, R, T) == jm_trace_operator(R, T, k)
    print(f"k = {k}: chain action equals the closed operator: {same}")

# %% Its eigenvalue on each isotypic block depends only on the diagram.
for k in range(1, 4):
    table = character_table(TRL, k, R, T)
    for lam in partitions(k, max_rows=T.rank):
        ch = table[lam]
        forms = char_closed_forms(lam, T.rank)
        print(f"  {str(lam):<8} operator {ch.value}   content form {forms.trL_contents(q)}")

# %% Higher central elements: e_2 of the quantum eigenvalues.
e2 = CentralExpr.parse("e:2")
table = character_table(e2, 3, R, T)
for lam in partitions(3, max_rows=T.rank):
    forms = char_closed_forms(lam, T.rank)
    print(f"e_2 on {lam}: {table[lam].value}, conjectured {forms.conjectured_e(2)(q)}")
