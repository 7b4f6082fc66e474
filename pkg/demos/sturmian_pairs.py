# %% [markdown]
# # Pairs of Sturmian words: merge or separate
#
# Two mechanical words with the same slope either end up equal (the singular
# pair s and s', which differ in at most two places) or never agree on a long
# window.  The window length is bounded by how finely the rotation orbit cuts
# the circle.

# %%
from fractions import Fraction

from ipword.dynamics import classify_singularity, ip_verdict_sturmian, n_epsilon, rotation_gaps, separation_analysis
from ipword.generators import GOLDEN_ALPHA as alpha
from ipword.generators import SturmianParams, characteristic_word, mechanical_word
from ipword.words import word_str

low = SturmianParams(alpha)
print(word_str(mechanical_word(low).prefix(20)))
print(word_str(mechanical_word(low.companion()).prefix(20)))
cert = separation_analysis(mechanical_word(low), mechanical_word(low.companion()), 10_000, characteristic_word(alpha))
print(cert.verdict, "from", cert.n0, "tail is the characteristic word:", cert.characteristic_tail)

# %%
half = SturmianParams(alpha, Fraction(1, 2))
cert = separation_analysis(mechanical_word(low), mechanical_word(half), 10_000)
print(cert.verdict, "window", cert.window, "rotation bound", n_epsilon(alpha, min(alpha, Fraction(1, 2))))

# %%
for eps in (Fraction(1, 2), Fraction(1, 10), Fraction(1, 100)):
    n = n_epsilon(alpha, eps)
    print(f"eps={eps}: N={n}, largest gap {float(max(rotation_gaps(alpha, n))):.5f}")

# %% [markdown]
# Which factors have central occurrence sets?  Only prefixes, and for the
# singular word also prefixes of its companion.

# %%
for params in (half, low):
    print(classify_singularity(params))
    w = mechanical_word(params).prefix(6)
    other = mechanical_word(params.companion()).prefix(6)
    for u in {w[:4], other[:4], (1, 0, 0, 1)}:
        v = ip_verdict_sturmian(params, u, 10_000)
        print("  ", word_str(u), v.verdict, v.reason)
