# %% [markdown]
# Why composites keep their glued graphs instead of collapsing them.
#
# Three transformations phi, psi, chi.  Glue all three and both bracketings
# give the same acyclic net.  Collapse the middle composite too early and
# the two bracketings disagree about dinaturality.

# %%
from dinaturality import vcompose, witness
from dinaturality.catalogue import associativity_triple, collapsed
from dinaturality.errors import ComponentCyclic
from dinaturality.graphcat import iso_equal

phi, psi, chi = associativity_triple()
for t in (phi, psi, chi):
    print(t)

# %% glued graphs: associative
left = vcompose(vcompose(phi, psi), chi)
right = vcompose(phi, vcompose(psi, chi))
print(left.delta, right.delta, iso_equal(left.graph, right.graph))
print(len(left.net.places), "places,", len(left.net.transitions), "transitions")

# %% collapsed middles
chi_psi = collapsed(vcompose(psi, chi), "chi.psi")
psi_phi = collapsed(vcompose(phi, psi), "psi.phi")
a = vcompose(phi, chi_psi)
b = vcompose(psi_phi, chi)
print("(chi.psi).phi  delta =", list(a.delta))
print("chi.(psi.phi)  delta =", list(b.delta))

# %% the second one has a cycle through the collapsed transition
try:
    witness(b, 1)
except ComponentCyclic as exc:
    print(exc)
