# %% [markdown]
# # Generalized Thue-Morse and a weak-mixing substitution
#
# The r fixed points of j -> j, j+1, ..., r, 1, ..., j-1 differ at every index.
# Prepending a reversed prefix gives a finite partition whose first N shifts are
# all central, after which exactly one class stays central at each shift.

# %%
from ipword.dynamics import coincidence_check, t3_build, t4_partition, thickness_profile
from ipword.generators import generalized_tm_fixed_point, weak_mixing_substitution
from ipword.words import word_str

for r in (2, 3, 4):
    print(r, word_str(generalized_tm_fixed_point(r, 1).prefix(3 * r)),
          "coincidence:", coincidence_check(r, 1, r, 100_000))

part = t3_build(2, 3)
print(word_str(part.word.prefix(24)))
for n in range(1, 9):
    print(n, [part.verdict(i, n) for i in (1, 2)])

# %% [markdown]
# For 0 -> 001, 1 -> 11001 the gaps between two zeros cover long intervals.

# %%
prof = thickness_profile(weak_mixing_substitution(), "0", "0", 200, 100_000)
print("longest run of achievable gaps:", prof.longest_run)
for r in (1, 2, 3, 5):
    t4 = t4_partition(r, 10_000)
    print(r, "m =", t4.m, [len(c) for c in t4.classes], t4.verified)
