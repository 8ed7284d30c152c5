"""No solvable extension has nilradical M^{1,1}.

A generic one-dimensional extension takes [e_i, x] from the general
derivation of M^{1,1} and leaves [x, e_i], [x, x] unknown.  Three Leibniz
triples force a1 = 0, which makes the action of x nilpotent.
"""

from __future__ import annotations

from leibniz.harness import M11_NONEXISTENCE_SCRIPT
from leibniz.workbench import run_script

print(M11_NONEXISTENCE_SCRIPT)
result = run_script(M11_NONEXISTENCE_SCRIPT)
print(result.output)
print("contradiction found:", result.contradiction)
