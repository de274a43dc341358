"""Forward-backward conflict free Petri nets and their token game.

Places and transitions are arbitrary hashable ids (the nets built by this
package use ``"p1", "p2", ...`` and ``"t1", "t2", ...``); the order in which
they are listed is the id order used for every tie-break.  Markings are plain
dicts from place ids to non-negative integers.

>>> church = PetriNet(["p1", "p2", "p3", "p4"], ["t"],
...                   {"t": {"p2", "p3"}}, {"t": {"p1", "p4"}})
>>> topo_fire(church)
['t']
>>> fire(church, m0(church), "t") == md(church)
True
"""

from collections import deque, namedtuple
from dataclasses import dataclass, field
from functools import cached_property

from .errors import Cyclic, InvalidNet, NotEnabled, StateSpaceExceeded, WrongLabel

A, B = "A", "B"

SourcesSinks = namedtuple("SourcesSinks",
                          "sources sinks proper_sources proper_sinks")


@dataclass(frozen=True, eq=False)
class PetriNet:
    """A Petri net without self-loops in which every place has at most one
    input and at most one output transition.

    ``inputs[t]`` is the set of places with an arc into ``t`` and
    ``outputs[t]`` the set of places ``t`` has an arc to.
    """

    places: tuple
    transitions: tuple
    inputs: dict = field(default_factory=dict)
    outputs: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "places", tuple(self.places))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        ins = {t: frozenset(self.inputs.get(t, ())) for t in self.transitions}
        outs = {t: frozenset(self.outputs.get(t, ())) for t in self.transitions}
        object.__setattr__(self, "inputs", ins)
        object.__setattr__(self, "outputs", outs)
        self._validate()

    def _validate(self):
        pset, tset = set(self.places), set(self.transitions)
        if len(pset) != len(self.places) or len(tset) != len(self.transitions):
            raise InvalidNet("duplicate place or transition id")
        if pset & tset:
            raise InvalidNet(f"ids used as both place and transition: {pset & tset}")
        for extra in (set(self._raw_keys()) - tset):
            raise InvalidNet(f"arcs given for unknown transition {extra!r}")
        seen_in, seen_out = {}, {}
        for t in self.transitions:
            if self.inputs[t] & self.outputs[t]:
                raise InvalidNet(f"self-loop on {t!r}")
            for p in self.inputs[t] | self.outputs[t]:
                if p not in pset:
                    raise InvalidNet(f"{t!r} refers to unknown place {p!r}")
            for p in self.inputs[t]:
                if p in seen_out:
                    raise InvalidNet(f"place {p!r} has two output transitions")
                seen_out[p] = t
            for p in self.outputs[t]:
                if p in seen_in:
                    raise InvalidNet(f"place {p!r} has two input transitions")
                seen_in[p] = t
        object.__setattr__(self, "_pre", seen_in)
        object.__setattr__(self, "_post", seen_out)

    def _raw_keys(self):
        return list(self.inputs) + list(self.outputs)

    def pre(self, p):
        """The input transition of place ``p`` (``None`` if it is a source)."""
        return self._pre.get(p)

    def post(self, p):
        """The output transition of place ``p`` (``None`` if it is a sink)."""
        return self._post.get(p)

    @cached_property
    def _rank(self):
        rank = {p: i for i, p in enumerate(self.places)}
        rank.update({t: len(self.places) + i
                     for i, t in enumerate(self.transitions)})
        return rank

    def successors(self, v):
        if v in self.inputs:
            return sorted(self.outputs[v], key=self._rank.__getitem__)
        t = self._post.get(v)
        return [] if t is None else [t]

    def neighbours(self, v):
        if v in self.inputs:
            return self.inputs[v] | self.outputs[v]
        return {t for t in (self._pre.get(v), self._post.get(v)) if t is not None}

    def is_place(self, v):
        return v in self._rank and v not in self.inputs

    def __eq__(self, other):
        if not isinstance(other, PetriNet):
            return NotImplemented
        return (self.places == other.places
                and self.transitions == other.transitions
                and self.inputs == other.inputs and self.outputs == other.outputs)

    __hash__ = None

    def __repr__(self):
        arcs = ", ".join(
            f"{sorted(self.inputs[t])}->{t}->{sorted(self.outputs[t])}"
            for t in self.transitions)
        return f"PetriNet(places={list(self.places)}, {arcs})"


def subnet(net, vertices):
    """The net induced by a set of vertices (arcs leaving it are dropped)."""
    vs = set(vertices)
    places = [p for p in net.places if p in vs]
    trans = [t for t in net.transitions if t in vs]
    return PetriNet(places, trans,
                    {t: net.inputs[t] & vs for t in trans},
                    {t: net.outputs[t] & vs for t in trans})


def components(net):
    """Weakly connected components, as a list of frozensets of vertex ids.

    Components containing places come first, ordered by their earliest
    place; place-free components follow, ordered by their transition.
    """
    seen = {}
    comps = []
    for start in net.places + net.transitions:
        if start in seen:
            continue
        block = {start}
        seen[start] = len(comps)
        todo = [start]
        while todo:
            v = todo.pop()
            for w in net.neighbours(v):
                if w not in seen:
                    seen[w] = len(comps)
                    block.add(w)
                    todo.append(w)
        comps.append(frozenset(block))
    # scanning places before transitions already yields the required order
    return comps


def find_cycle(net, vertices=None):
    """A directed cycle as a closed vertex list ``[v0, ..., v0]``, or ``None``."""
    allowed = set(net.places + net.transitions) if vertices is None else set(vertices)
    WHITE, GREY, BLACK = 0, 1, 2
    colour = {v: WHITE for v in allowed}
    for root in net.places + net.transitions:
        if root not in allowed or colour[root] != WHITE:
            continue
        stack = [(root, iter(net.successors(root)))]
        path = [root]
        colour[root] = GREY
        while stack:
            v, it = stack[-1]
            for w in it:
                if w not in allowed:
                    continue
                if colour[w] == GREY:
                    return path[path.index(w):] + [w]
                if colour[w] == WHITE:
                    colour[w] = GREY
                    path.append(w)
                    stack.append((w, iter(net.successors(w))))
                    break
            else:
                colour[v] = BLACK
                stack.pop()
                path.pop()
    return None


def is_acyclic(net, component=None):
    """Whether the net (or its ``component``-th component, 1-based) has no
    directed cycle."""
    if component is None:
        return find_cycle(net) is None
    comps = components(net)
    if not 1 <= component <= len(comps):
        raise IndexError(f"component {component} not in 1..{len(comps)}")
    return find_cycle(net, comps[component - 1]) is None


def sources_sinks(net):
    sources = {p for p in net.places if net.pre(p) is None}
    sinks = {p for p in net.places if net.post(p) is None}
    return SourcesSinks(frozenset(sources), frozenset(sinks),
                        frozenset(p for p in sources if net.post(p) is not None),
                        frozenset(p for p in sinks if net.pre(p) is not None))


def m0(net):
    """One token on every source, none elsewhere."""
    return {p: int(net.pre(p) is None) for p in net.places}


def md(net):
    """One token on every sink, none elsewhere."""
    return {p: int(net.post(p) is None) for p in net.places}


def enabled(net, marking, t):
    return all(marking.get(p, 0) >= 1 for p in net.inputs[t])


def fire(net, marking, t):
    """Fire ``t``: one token off each input place, one onto each output place."""
    if t not in net.inputs:
        raise NotEnabled(f"unknown transition {t!r}")
    if not enabled(net, marking, t):
        raise NotEnabled(f"transition {t!r} is not enabled")
    out = dict(marking)
    for p in net.inputs[t]:
        out[p] -= 1
    for p in net.outputs[t]:
        out[p] = out.get(p, 0) + 1
    return out


def replay(net, sequence, start=None):
    """Fire ``sequence`` from ``start`` (default ``m0``) and return the final marking."""
    marking = m0(net) if start is None else dict(start)
    for t in sequence:
        marking = fire(net, marking, t)
    return marking


def topo_fire(net):
    """Fire every transition exactly once, always picking the earliest
    transition whose input places are all fed by already-fired transitions.

    Raises :class:`Cyclic` when the net has a directed cycle.
    """
    cycle = find_cycle(net)
    if cycle is not None:
        raise Cyclic("net has a directed cycle: " + " -> ".join(map(str, cycle)),
                     cycle)
    waiting = {t: {net.pre(p) for p in net.inputs[t]} - {None}
               for t in net.transitions}
    fired, order = set(), []
    while len(order) < len(net.transitions):
        t = next(t for t in net.transitions
                 if t not in fired and waiting[t] <= fired)
        fired.add(t)
        order.append(t)
    return order


def reachable_bfs(net, start, target, token_bound=2):
    """Breadth-first search of the marking graph for a firing sequence from
    ``start`` to ``target``.

    Markings putting more than ``token_bound`` tokens on a place are not
    explored.  Returns the sequence, or ``None`` when ``target`` is
    unreachable; raises :class:`StateSpaceExceeded` if the bound cut off part
    of the search and ``target`` was not found.
    """
    places = net.places
    src = tuple(start.get(p, 0) for p in places)
    dst = tuple(target.get(p, 0) for p in places)
    index = {p: i for i, p in enumerate(places)}
    parent = {src: None}
    queue = deque([src])
    pruned = False
    while queue:
        state = queue.popleft()
        if state == dst:
            seq = []
            while parent[state] is not None:
                state, t = parent[state]
                seq.append(t)
            return seq[::-1]
        for t in net.transitions:
            if any(state[index[p]] < 1 for p in net.inputs[t]):
                continue
            nxt = list(state)
            for p in net.inputs[t]:
                nxt[index[p]] -= 1
            for p in net.outputs[t]:
                nxt[index[p]] += 1
            nxt = tuple(nxt)
            if max(nxt, default=0) > token_bound:
                pruned = True
                continue
            if nxt not in parent:
                parent[nxt] = (state, t)
                queue.append(nxt)
    if pruned:
        raise StateSpaceExceeded(
            f"token bound {token_bound} reached before the target was found")
    return None


@dataclass(frozen=True, eq=False)
class LabelledMarking:
    """A 0/1 marking together with an ``A``/``B`` label on every transition.

    The arrow ``f`` the tokens stand for is kept as an opaque ``tag``.
    """

    marking: dict
    labels: dict
    tag: object = None

    def __eq__(self, other):
        return (isinstance(other, LabelledMarking)
                and self.marking == other.marking and self.labels == other.labels)

    __hash__ = None


def is_labelled_marking(net, lm):
    for p in net.places:
        tok = lm.marking.get(p, 0)
        if tok not in (0, 1):
            return False
        i, o = net.pre(p), net.post(p)
        li = None if i is None else lm.labels[i]
        lo = None if o is None else lm.labels[o]
        if tok == 1:
            if li not in (None, A) or lo not in (None, B):
                return False
        elif li is not None and lo is not None and li != lo:
            return False
    return all(lm.labels.get(t) in (A, B) for t in net.transitions)


def initial_labelled(net, tag=None):
    """``(M0, L0)``: tokens on the sources, every transition labelled ``B``."""
    return LabelledMarking(m0(net), {t: B for t in net.transitions}, tag)


def final_labelled(net, tag=None):
    """``(Md, Ld)``: tokens on the sinks, every transition labelled ``A``."""
    return LabelledMarking(md(net), {t: A for t in net.transitions}, tag)


def fire_labelled(net, lm, t):
    if not enabled(net, lm.marking, t):
        raise NotEnabled(f"transition {t!r} is not enabled")
    if lm.labels[t] != B:
        raise WrongLabel(f"transition {t!r} is labelled {lm.labels[t]}, not B")
    marking = dict(lm.marking)
    for p in net.inputs[t]:
        marking[p] = 0
    for p in net.outputs[t]:
        marking[p] = 1
    labels = dict(lm.labels)
    labels[t] = A
    return LabelledMarking(marking, labels, lm.tag)
