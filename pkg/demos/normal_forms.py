# %% [markdown]
# The same pair of formulas is or is not equivalent depending on the algebra.

# %%
from fpcl import Algebra, Configuration, Interaction, NormalizationMode, decide_equiv, eval_pcl, parse_pcl
from fpcl import oracle_equiv, pcl_normal_form

phi = parse_pcl("p & !p")
phi2 = parse_pcl("(p & !p & q) | (p & !p & !q)")
ports = ["p", "q"]

for mode in NormalizationMode:
    print(f"{mode.value:9} {pcl_normal_form(phi, ports, mode)!s:28} {pcl_normal_form(phi2, ports, mode)}")
    print(f"{'':9} equivalent: {decide_equiv(phi, phi2, ports, mode)}")

# %% [markdown]
# The exhaustive oracle over Kleene3 agrees with Kleene mode.  Over the
# four-element algebra it finds a one-interaction witness.

# %%
print("kleene3:", oracle_equiv(phi, phi2, ports, Algebra.KLEENE3).status.value)
v = oracle_equiv(phi, phi2, ports, Algebra.FOUR, max_config_size=15)
print("four:", v.status.value, "on", v.witness, "values", [str(x) for x in v.values])

g = Configuration.of([Interaction.of({"p": "u", "q": "w"}, Algebra.FOUR)])
print(eval_pcl(phi, g), eval_pcl(phi2, g))

# %% [markdown]
# Configuration operators normalize into a sum of coalescings.

# %%
for text in ["neg (p # q)", "cl p * q", "(p + q) # !p"]:
    print(f"{text:16} -> {pcl_normal_form(parse_pcl(text), ports)}")
