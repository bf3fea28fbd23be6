"""
Asymptotic formulas with explicit error envelopes
=================================================

Every quantity below is an outward-rounded interval; comparisons with the
exact integers are certified or reported as undecided.
"""

from crankparity import asymptotics as asy
from crankparity import build_table

table = build_table(3000)

# Main term versus the exact difference, with the explicit error bound.
for n in (3, 50, 500, 2000):
    p = asy.working_precision(n)
    err = abs(table.delta[n] - asy.main_term(n, p))
    bound = asy.e_beta_bound(n, p)
    print(f"n={n:5d}  |Delta - main| / bound = {(err / bound).to_decimal(6)}")

# The finite series over hat-A_j(n) is far more accurate.
for n in (10, 100, 1000):
    p = asy.working_precision(n)
    err = abs(table.delta[n] - asy.ckl_series(n, p))
    print(f"n={n:5d}  terms={asy.ckl_term_count(n):2d}  |Delta - series| = {err.to_decimal(6)}"
          f"  bound = {asy.ckl_error_bound(n, p).to_decimal(6)}")

# Hypotheses are stated in mu(n); the first admissible n are computed, not assumed.
print("mu >= 88 from n =", asy.first_n_with_mu_at_least(88))
print("mu >= 115 from n =", asy.first_n_with_mu_at_least(115))

env = asy.mk_envelope(1500, asy.working_precision(1500))
print("M0(1500) in envelope:", env.contains(table.m0[1500]))

try:
    asy.mk_envelope(1000)
except asy.HypothesisNotMet as exc:
    print("rejected:", exc)
