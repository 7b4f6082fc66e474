# %% [markdown]
# # The Fibonacci word, three ways
#
# The same infinite word comes out of a substitution, a rotation of the circle
# and a rule on Zeckendorff digits.  Everything below is exact.

# %%
import numpy as np

from ipword.generators import GOLDEN_ALPHA, SturmianParams, fibonacci, mechanical_word
from ipword.numeration import digit_rule_letter, greedy_representation
from ipword.words import complexity_profile, special_factors, word_str

n = 100_000
by_substitution = fibonacci().array(n)
by_rotation = mechanical_word(SturmianParams(GOLDEN_ALPHA, 0, 1)).array(n)
by_digits = np.array([digit_rule_letter(2, i + 1) for i in range(n)])

print("prefix:", word_str(by_substitution[:34]))
print("rotation agrees:", np.array_equal(by_substitution, by_rotation))
print("digit rule agrees:", np.array_equal(by_substitution, by_digits))

# %% [markdown]
# Greedy representations in base 1, 2, 3, 5, 8, ...  A position n of the
# Fibonacci word holds a 1 exactly when the representation of n + 1 ends in 01.

# %%
for k in (12, 20, 33, 50):
    print(k, str(greedy_representation(2, k)), "letter f_%d =" % (k - 1), by_substitution[k - 1])

# %% [markdown]
# Sturmian words have n + 1 factors of length n, with one left special and one
# right special factor of each length.

# %%
prof = complexity_profile(fibonacci(), 12, n)
print("complexity:", prof.counts)
sf = special_factors(fibonacci(), 6, n)
print("left special:", [word_str(u) for u in sf.left], "right special:", [word_str(u) for u in sf.right])
