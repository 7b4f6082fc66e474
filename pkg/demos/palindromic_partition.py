# %% [markdown]
# # Palindromic closure and an infinite partition
#
# psi(wa) is the shortest palindrome starting with psi(w)a.  Driving psi with
# the staircase 0; 0,1; 0,1,2; ... uses every letter infinitely often and
# yields a word whose letter classes partition the positive integers.

# %%
from ipword.palindromic import infinite_central_partition, iterated_pal_closure, pal_closure, psi_staircase
from ipword.words import recurrence_gap, word_str

print(pal_closure("aab"), iterated_pal_closure("aaba"))
w = psi_staircase()
print(word_str(w.prefix(40)))

# %%
part = infinite_central_partition(1000)
print("exact partition of [1, 1000):", part.verified)
for a, members in sorted(part.classes.items()):
    gap = recurrence_gap(w, (a,), 999) if len(members) > 1 else None
    print(a, len(members), members[:6], "max gap", gap)
