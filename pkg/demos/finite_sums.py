# %% [markdown]
# # Finite-sum certificates
#
# Odd-indexed Fibonacci numbers never carry when added in Zeckendorff form, so
# every sum of distinct F_1, F_3, F_5, ... lands on a 0 of the Fibonacci word.
# The 1s of the word admit no such structure: split them at alpha' and every
# sum of three elements of one piece, or two of the other, falls back on a 0.

# %%
from fractions import Fraction

from ipword.generators import fibonacci
from ipword.ipcheck import (
    OccurrenceTarget,
    fibonacci_split_classes,
    ip_witness_search,
    non_ip_partition_certificate,
    split_point,
    verify_fs_subset,
)
from ipword.numeration import fibonacci_odd

gens = fibonacci_odd(10)
zeros = OccurrenceTarget(fibonacci(), "0", 20_000)
cert = verify_fs_subset(gens, zeros)
print("generators:", gens)
print("subset sums checked:", cert.sums_checked)

# %%
bound = 2000
ones = OccurrenceTarget(fibonacci(), "1", bound)
for frac in (Fraction(1, 2), Fraction(1, 3)):
    classes = fibonacci_split_classes(split_point(frac), bound)
    res = non_ip_partition_certificate(ones, classes, (3, 2), bound)
    print(f"alpha' = {frac}(1 - alpha):", type(res).__name__, "sums checked per class", res.sums_checked)

# %% [markdown]
# Central factors also have small FS witnesses that a search finds directly.

# %%
for u in ("0", "01", "0100", "01001010"):
    t = OccurrenceTarget(fibonacci(), u, 10_000 + len(u) - 1)
    print(u, ip_witness_search(t, 4, 10_000))
