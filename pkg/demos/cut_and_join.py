"""Cut-and-join operators on the reflection-equation algebra, N = 2, q = 2.

Run with ``python demos/cut_and_join.py`` (a few seconds).
"""

from flint import fmpq

from qcasimir import QContext, build_standard, trace_data
from qcasimir.casimir import char_closed_forms
from qcasimir.cutjoin import (IDENTITIES, check_identity, commutator_report, normal_order,
                              wdelta_spectrum)
from qcasimir.words import WordModel

q = fmpq(2)
R = build_standard(2, QContext(q))
T = trace_data(R)
words = WordModel(R, T, 3)

# %% Normal ordering: move every D to the right; the numeric tail is what is left.
for delta in ("2", "1,1", "3"):
    op = normal_order(delta, words)
    print(f"W({delta}): tail on {op.slots} slots, nullity {op.nullity}, "
          f"matches the closed form: {op.matches_closed_form}")

# %% The three identities against traces of powers of MD.
for which in IDENTITIES:
    for k in range(4):
        rep = check_identity(which, k, words)
        print(f"{which} on B_{k}: residual {rep.residual}, routes differ by {rep.route_residual}")

# %% W(1) on q-Schur elements.
for lam in ("", "1", "2", "1,1"):
    print(f"W(1) on s_({lam}): {wdelta_spectrum('1', lam, words).value}")

# %% Commutators are measured, not assumed.
for a, b, size in commutator_report(["1", "2", "1,1"], 2, words):
    print(f"[W{a}, W{b}] on B_2: max entry {size}")

# %% The shifted Casimir at the empty diagram: the shift gives 0, the printed
# row formula does not.
forms = char_closed_forms("", 2)
print(f"empty diagram: shift {forms.hat_trL(q)}, printed {forms.hat_trL_printed(q)}")
