# %% [markdown]
# Four truth-value algebras and their law checks.

# %%
from fpcl import Algebra, check_laws
from fpcl.algebra import sample_grid

for alg in (Algebra.BOOL2, Algebra.KLEENE3, Algebra.FOUR):
    print(f"== {alg.value}")
    report = check_laws(alg)
    for line in report.lines():
        print("  " + line)

# %% [markdown]
# In the four-element algebra u and w are incomparable, so their meet is 0
# and their join is 1.  That pair breaks the Kleene condition.

# %%
u, w = Algebra.FOUR.element("u"), Algebra.FOUR.element("w")
print("u & w =", u & w, "  u | w =", u | w, "  ~u =", ~u)

# %% [markdown]
# The unit interval is checked on a rational grid.

# %%
print(check_laws(Algebra.FUZZY, grid=6).classification.value)
print([str(x) for x in sample_grid(4)])
