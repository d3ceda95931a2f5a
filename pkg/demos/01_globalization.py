"""Globalize a partial action of Z2 and look at what comes out.

    python3 demos/01_globalization.py
"""

from pact import globalize, make_action, verify_globalization
from pact.groups import cyclic
from pact.topology import discrete, sierpinski

Z2 = cyclic(2)

# The generator fixes 0 and is undefined at 1.
a = make_action(Z2, discrete(["0", "1"]), {"a": {"0": "0"}})
env = globalize(a)
print(f"G x X has {len(Z2) * len(a.space)} points; the enveloping space has {len(env.space)}:")
for block in env.classes:
    members = ", ".join(f"({g},{x})" for g, x in block)
    print(f"  {env.cls(*block[0])} = {{{members}}}")
print("mu(a) on classes:", env.mu("a").as_dict())
print(verify_globalization(env).render())

# On the Sierpinski space the fixed point is the open point; the enveloping
# space inherits a non-Hausdorff topology.
b = make_action(Z2, sierpinski(), {"a": {"1": "1"}})
env_b = globalize(b)
print("\nSierpinski version: opens of the enveloping space")
for o in env_b.space.canonical_opens():
    print("  {" + ", ".join(o) + "}")
print("iota:", env_b.iota.as_dict())
