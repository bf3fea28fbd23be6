"""
Exact crank-parity tables
=========================

Build p(n), M0(n) and M1(n) from the q-series, confirm them against brute
force, and look at how the two parity classes split.
"""

from fractions import Fraction

from crankparity import brute_force_crank_counts, build_table, crank_of_partition

# The crank of a partition: largest part if there are no ones, otherwise
# (#parts larger than the number of ones) - (number of ones).
for parts in [(5,), (1,), (3, 1), (2, 1, 1)]:
    print(parts, "crank", crank_of_partition(parts))

table = build_table(2000)
print("p(0..10)     ", table.p[:11])
print("M0(n)-M1(n)  ", table.delta[:11])

# The q-series table agrees with enumerating every partition.
for n in (10, 20, 30):
    print(n, (table.m0[n], table.m1[n]), brute_force_crank_counts(n))

# Sign alternation: (-1)^n (M0(n) - M1(n)) > 0 for every n in the table.
print("sign alternates:", all((-1) ** n * d > 0 for n, d in enumerate(table.delta)))

# ... yet both classes approach half of all partitions.
for n in (10, 100, 1000, 2000):
    ratio = Fraction(table.m0[n], table.p[n])
    print(f"n={n:5d}  M0/p = {float(ratio):.15f}")

# Tables are cached as plain text and reload identically.
text = table.truncate(5).dumps()
print(text)
