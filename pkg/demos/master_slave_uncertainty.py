# %% [markdown]
# A two-master, two-slave architecture and the degree to which fuzzy
# configurations satisfy it.

# %%
from fpcl import Algebra, Configuration, Interaction, eval_pcl, print_formula, uncertainty
from fpcl.archlib import master_slave_formula
from fpcl.batch import ConfigurationSpace
from fpcl.semantics import enumerate_interactions

z, ports = master_slave_formula(2, 2)
print(print_formula(z))


def inter(**w):
    return Interaction.of({p: w.get(p, "0") for p in ports}, Algebra.FUZZY)


# %% [markdown]
# Each slave serves a master with some confidence.  The value is the weakest
# link; the uncertainty also looks at sub-configurations.

# %%
g = Configuration.of(
    [
        inter(s1="0.9", m1="1", s2="0.1"),
        inter(s2="0.7", m2="0.8"),
        inter(s1="0.4", s2="0.5"),
    ]
)
print("value      ", eval_pcl(z, g))
print("uncertainty", uncertainty(z, g))

# %% [markdown]
# Over Bool2 the architecture accepts exactly the four crisp pairings.

# %%
sp = ConfigurationSpace(enumerate_interactions(ports, Algebra.BOOL2), max_size=2)
vals = sp.evaluate(z)
for i in range(len(sp)):
    if sp.decode(vals[i]) != Algebra.BOOL2.one:
        continue
    print(sp.configuration(i))

# %% [markdown]
# Sweeping one weight shows the value tracking the weakest port.

# %%
for x in ["0", "1/4", "1/2", "3/4", "1"]:
    h = Configuration.of([inter(s1="1", m1=x), inter(s2="1", m2="1")])
    print(x, eval_pcl(z, h))
