# %% [markdown]
# Brute-force dinaturality in finite sets.
#
# Objects are sizes, arrows are tables.  check_dinaturality walks every
# hexagon with objects up to a given size; a failure comes back with the
# offending arrow and both legs.

# %%
from itertools import product

from dinaturality.catalogue import gss
from dinaturality.dinat import witness
from dinaturality.finset_oracle import (
    Arg, FinSetMap, all_maps, check_dinaturality, church, concrete_composite,
    from_tables, hexagon_count, hexagon_legs, realize_marking,
)
from dinaturality.petri import fire_labelled, initial_labelled
from dinaturality.signature import CospanType, Signature

# %% Church numerals: g |-> g^n on A => A
for n in range(4):
    print(church(n).name, church(n).at((2,)).table, check_dinaturality(church(n), 1))

print(hexagon_count(1, 3), "hexagons per variable at max size 3")

# %% reversing every set is not natural
sig = Signature("rev", "+", "+", CospanType((1,), (1,), 1))
rev = from_tables(sig, Arg(1), Arg(1), {(k,): tuple(reversed(range(k))) for k in range(4)})
print(check_dinaturality(rev, 1))

# %% the composite from the walkthrough, and the maps its markings stand for
t, semantics = gss()
ct = concrete_composite(semantics)
print(check_dinaturality(ct, 1, max_size=2))

f = FinSetMap(2, 2, (1, 1))
upper, lower = hexagon_legs(ct, 1, [0], f)
lm = initial_labelled(t.net, tag=f)
print("start", realize_marking(t, semantics, lm, f) == lower)
for tr in witness(t, 1).sequence:
    lm = fire_labelled(t.net, lm, tr)
    print(tr, realize_marking(t, semantics, lm, f) == lower)
print("upper leg reached:", realize_marking(t, semantics, lm, f) == upper)

# %% every arrow between sets of size <= 2
agree = sum(hexagon_legs(ct, 1, [0], f)[0] == hexagon_legs(ct, 1, [0], f)[1]
            for a, b in product(range(3), repeat=2) for f in all_maps(a, b))
print(agree, "hexagons commute")
