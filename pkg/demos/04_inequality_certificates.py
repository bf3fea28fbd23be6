"""
Inequality certificates
=======================

Exact checks cover the finite ranges; analytic certificates built from the
interval envelopes take over once mu(n) >= 115.
"""

from fractions import Fraction

from crankparity import build_table
from crankparity import certify as cert

table = build_table(3000)

for name, check in [("convexity", cert.check_convexity),
                    ("log-concavity", cert.check_log_concavity),
                    ("higher Turan", cert.check_higher_turan)]:
    last = [cert.last_violation(check, table, k) for k in (0, 1)]
    print(f"{name:14s} last failure k=0: n={last[0]}, k=1: n={last[1]}")

print(cert.check_log_concavity(table, 0, 94, 2011).to_json())

# Above n = 2011 the envelopes alone prove log-concavity and the order-3
# Turan inequality, here on a short range.
lc = cert.certify_log_concavity_analytic(2011, 3000)
tu = cert.certify_higher_turan_analytic(2011, 2500)
print(lc.status.value, tu.status.value, tu.metadata)

# Where both apply, the analytic and exact verdicts agree.
print(cert.check_higher_turan(table, 0, 2011, 2500).status.value)

# Jia's criterion on explicit ratios.
print(cert.jia_criterion(Fraction(7, 10), Fraction(71, 100)))
print(cert.jia_criterion(Fraction(1, 2), Fraction(9, 10)))
