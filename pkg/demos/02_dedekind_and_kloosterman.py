"""
Dedekind sums and the exponential sums hat-A_j(n)
=================================================

Dedekind sums are exact rationals; hat-A_j(n) combines them into phases
and is evaluated as a pair of certified intervals.
"""

from crankparity.dedekind import a_hat, a_hat_reference, dedekind_reciprocity_check, dedekind_sum

print("s(1,3) =", dedekind_sum(1, 3))
print("s(5,17) =", dedekind_sum(5, 17))
print("reciprocity (5,17):", dedekind_reciprocity_check(5, 17))

# hat-A_1(n) is (-1)^n exactly.
print([a_hat(1, n).real.to_decimal(3) for n in range(6)])

# For larger j the sum is real up to the certified error, and |A| <= 2j.
for j, n in [(4, 7), (13, 100), (25, 3)]:
    v = a_hat(j, n, 192)
    print(f"j={j:2d} n={n:3d}  Re={v.real.to_decimal(25)}  |Im|<={float(v.imag.magnitude()):.1e}"
          f"  bound 2j={2 * j}  err={float(v.error):.1e}")

# Independent floating-point summation for comparison.
print(a_hat_reference(13, 100, dps=30))
