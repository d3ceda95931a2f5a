"""Induce a partial action on C(X, Y) and run every function-space checker.

    python3 demos/02_function_spaces.py
"""

from pact import build_bundle, make_action
from pact.funcspace import THEOREMS, j_embed
from pact.groups import cyclic
from pact.topology import discrete, sierpinski

Z2 = cyclic(2)
X = discrete(["p", "q"])

for title, a in [
    ("Y discrete, a fixes 0", make_action(Z2, discrete(["0", "1"]), {"a": {"0": "0"}})),
    ("Y Sierpinski, a fixes 1", make_action(Z2, sierpinski(), {"a": {"1": "1"}})),
]:
    b = build_bundle(X, a)
    print(f"== {title}")
    print(f"C(X,Y) has {len(b.cxy)} maps: {', '.join(b.cxy.points)}")
    print("dom theta_hat(a):", b.ahat("a").domain_labels())
    print(f"|Y_G| = {len(b.env_y.space)}, |C(X,Y)_G| = {len(b.env_c.space)}")
    J, _ = j_embed(b)
    print("J:", J.as_dict())
    for name, check in THEOREMS.items():
        report = check(b)
        skipped = [c.name for c in report.clauses if c.status == "n/a"]
        tail = f" (n/a: {'; '.join(skipped)})" if skipped else ""
        print(f"  {name:10s} {'PASS' if report.passed else 'FAIL'}{tail}")
    print()
