# %% [markdown]
# Peer-to-peer templates grow quickly with the number of components.

# %%
from fpcl import Algebra, Configuration, Interaction, eval_pcl
from fpcl.archlib import p2p_component_summands, p2p_formula, p2p_summands

for n in range(2, 6):
    per = len(p2p_component_summands(1, n))
    print(f"n={n}: {per} summands per component, {len(p2p_summands(n))} at top level")

# %% [markdown]
# With three components, two independent links satisfy the formula.

# %%
z, ports = p2p_formula(3)


def link(*on):
    return Interaction.of({p: "1" if p in on else "0" for p in ports}, Algebra.BOOL2)


print(eval_pcl(z, Configuration.of([link("r1", "s2"), link("r3", "s1")])))
print(eval_pcl(z, Configuration.of([link("r1", "s1")])))
