# %% [markdown]
# Composing two dinatural transformations and reading off the proof.
#
# phi = delta x id  and  psi = id x eval  are both dinatural in every
# variable, but their composite is a single-variable family whose
# dinaturality has to be argued.  The glued graph does the arguing.

# %%
from dinaturality import vcompose, witness
from dinaturality.catalogue import gss_pair
from dinaturality.cli import render_dot
from dinaturality.graphcat import collapse
from dinaturality.petri import fire, m0

phi, psi = gss_pair()
phi.signature.type, psi.signature.type

# %%
t = vcompose(phi, psi)
print(t)                               # one variable, delta = [1]
print(t.net.places, t.net.transitions)

# %% the glued net keeps the three interface places as internal ones
g = t.graph.cospan
print("boundary:", g.left, g.right)
print("internal:", [p for p in g.net.places if p not in g.left + g.right])

# %% play the token game by hand
marking = m0(t.net)
for tr in witness(t, 1).sequence:
    marking = fire(t.net, marking, tr)
    print(f"fire {tr:<3}", {p: k for p, k in marking.items() if k})

# %% the same sequence, read as hexagon applications
print(witness(t, 1))

# %% collapsing forgets the inside of the component
c = collapse(g)
print(c.net.places, c.net.transitions, dict(c.net.inputs), dict(c.net.outputs))

# %% DOT for graphviz
print(render_dot(t))
