"""Transformations with graphs, composition, and dinaturality witnesses.

A :class:`Transformation` bundles a signature, a coherent graph with a
discriminant function and its provenance: an identity, an atomic
transformation (whose graph is its standard graph), or a composite of
atomic constituents glued together.  Tags on transitions and places remember
which constituent, variable and interface each vertex came from, which is
what turns a firing sequence into a chain of dinaturality hexagons.

>>> from dinaturality.signature import Signature, CospanType
>>> phi = make_atomic(Signature("phi", "+-", "++-", CospanType((1, 2), (1, 1, 2), 2)), [1, 1])
>>> psi = make_atomic(Signature("psi", "++-", "+", CospanType((1, 2, 2), (1,), 2)), [1, 1])
>>> gss = vcompose(phi, psi)
>>> gss.signature.type, gss.delta
(CospanType(sigma=(1, 1), tau=(1,), vars=1), (1,))
>>> [(s.constituent_name, s.variable) for s in witness(gss, 1).steps]
[('phi', 1), ('psi', 1), ('psi', 2), ('phi', 2)]
"""

from dataclasses import dataclass

from .errors import (
    ArityMismatch,
    ComponentCyclic,
    InterfaceMismatch,
    InvalidSignature,
    MissingDinaturality,
    PsiNotDinaturalAtI,
    VarIndexOutOfRange,
)
from .graphcat import (
    GCMorphism,
    coherent,
    compose_gc_with_maps,
    gc_identity,
    iso_equal,
    skeleton,
    standard_graph,
)
from .petri import (
    A,
    find_cycle,
    fire_labelled,
    initial_labelled,
    m0,
    md,
    subnet,
    topo_fire,
)
from .signature import (
    Signature,
    compose_types,
    hcomp_signature,
    identity_type,
    permutation_equivalent,
    variance,
)

IDENTITY, ATOMIC, COMPOSITE = "identity", "atomic", "composite"


@dataclass(frozen=True, eq=False)
class Transformation:
    """A morphism of the generalised functor category.

    ``transition_tags[t] = (c, x)`` says that transition ``t`` is variable
    ``x`` of constituent ``c`` (both 1-based).  ``place_tags[p] = (l, j)``
    says that place ``p`` is argument ``j`` of interface ``l``: interface 1
    is the domain of the first constituent and interface ``k+1`` the
    codomain of the last one.
    """

    signature: Signature
    graph: GCMorphism
    kind: str
    constituents: tuple
    transition_tags: dict
    place_tags: dict

    def __post_init__(self):
        if not coherent(self.graph.cospan, self.signature.type):
            raise InvalidSignature(
                f"{self.name}: graph is not coherent with the type")

    @property
    def name(self):
        return self.signature.name

    @property
    def delta(self):
        return self.graph.delta

    @property
    def net(self):
        return self.graph.cospan.net

    def __repr__(self):
        s = self.signature
        return (f"<{self.kind} {s.name}: {''.join(s.dom) or '()'} -> "
                f"{''.join(s.cod) or '()'}, sigma={list(s.sigma)}, "
                f"tau={list(s.tau)}, delta={list(self.delta)}>")


def _check_delta(s, delta):
    delta = tuple(delta)
    if len(delta) != s.vars or any(d not in (0, 1, True, False) for d in delta):
        raise InvalidSignature(
            f"{s.name}: delta must be {s.vars} entries from {{0, 1}}, got {list(delta)}")
    return tuple(int(d) for d in delta)


def make_atomic(s, delta):
    """The atomic transformation on ``s``; ``delta`` records the variables
    in which it is *assumed* dinatural."""
    delta = _check_delta(s, delta)
    g = standard_graph(s)
    t = Transformation(
        s, GCMorphism(g, delta), ATOMIC, (),
        {f"t{x}": (1, x) for x in range(1, s.vars + 1)},
        {**{p: (1, j) for j, p in enumerate(g.left, start=1)},
         **{p: (2, j) for j, p in enumerate(g.right, start=1)}})
    object.__setattr__(t, "constituents", (t,))
    return t


def identity_of(symbol, alpha):
    """Identity on the functor ``symbol`` with variance ``alpha``."""
    alpha = variance(alpha)
    s = Signature(f"id_{symbol}", alpha, alpha, identity_type(len(alpha)),
                  dom_functor=symbol, cod_functor=symbol)
    g = gc_identity(alpha)
    return Transformation(s, g, IDENTITY, (), {},
                          {p: (1, j) for j, p in enumerate(g.cospan.left, start=1)})


def _interfaces_match(phi, psi):
    if phi.signature.cod != psi.signature.dom:
        raise InterfaceMismatch(
            f"codomain of {phi.name} is {''.join(phi.signature.cod)!r} but "
            f"domain of {psi.name} is {''.join(psi.signature.dom)!r}")
    f, g = phi.signature.cod_functor, psi.signature.dom_functor
    if f is not None and g is not None and f != g:
        raise InterfaceMismatch(f"functor {f!r} does not match {g!r}")


def vcompose(phi, psi):
    """``psi . phi``: glue the graphs and re-derive the discriminant.

    Identities are absorbed, so the constituents of a composite are always
    atomic transformations in composition order.
    """
    _interfaces_match(phi, psi)
    if phi.kind == IDENTITY:
        return psi
    if psi.kind == IDENTITY:
        return phi
    try:
        gm, maps = compose_gc_with_maps(phi.graph, psi.graph)
    except ArityMismatch as exc:
        raise InterfaceMismatch(str(exc)) from None
    t = compose_types(phi.signature.type, psi.signature.type)
    assert skeleton(gm.cospan) == t
    s = Signature(f"{psi.name}.{phi.name}", phi.signature.dom, psi.signature.cod, t,
                  dom_functor=phi.signature.dom_functor,
                  cod_functor=psi.signature.cod_functor)
    shift = len(phi.constituents)
    ttags = {maps.trans_u[t]: tag for t, tag in phi.transition_tags.items()}
    ttags.update({maps.trans_v[t]: (c + shift, x)
                  for t, (c, x) in psi.transition_tags.items()})
    ptags = {maps.places_u[p]: tag for p, tag in phi.place_tags.items()}
    for p, (lvl, j) in psi.place_tags.items():
        ptags.setdefault(maps.places_v[p], (lvl + shift, j))
    return Transformation(s, gm, COMPOSITE, phi.constituents + psi.constituents,
                          ttags, ptags)


def vcompose_all(ts):
    """Left fold of :func:`vcompose` over a non-empty sequence."""
    ts = list(ts)
    out = ts[0]
    for t in ts[1:]:
        out = vcompose(out, t)
    return out


def hcompose(phi, psi, i):
    """Substitute ``phi`` into variable ``i`` of ``psi``.

    The result is recorded as atomic; its discriminant inherits ``psi``'s
    entries for the untouched variables and ``phi``'s for the new ones.
    """
    if not 1 <= i <= psi.signature.vars:
        raise VarIndexOutOfRange(f"variable {i} not in 1..{psi.signature.vars}")
    if not psi.delta[i - 1]:
        raise PsiNotDinaturalAtI(
            f"{psi.name} is not known to be dinatural in variable {i}")
    s = hcomp_signature(phi.signature, psi.signature, i)
    n = phi.signature.vars
    delta = list(psi.delta[:i - 1]) + list(phi.delta) + list(psi.delta[i:])
    assert len(delta) == s.vars == n + psi.signature.vars - 1
    return make_atomic(s, delta)


def decompose(t):
    """``[(signature, delta), ...]`` of the atomic constituents in order."""
    return [(c.signature, c.delta) for c in t.constituents]


def equivalent(t1, t2):
    """Same signature up to variable permutation, and isomorphic graphs with
    matching discriminants."""
    if permutation_equivalent(t1.signature, t2.signature) is None:
        return False
    return iso_equal(t1.graph, t2.graph)


@dataclass(frozen=True)
class WitnessStep:
    constituent: int
    constituent_name: str
    variable: int
    transition: str

    def __str__(self):
        return (f"apply dinaturality of {self.constituent_name} "
                f"in variable {self.variable}")


@dataclass(frozen=True, eq=False)
class WitnessTrace:
    """A firing sequence of one component, read as hexagon applications."""

    component: int
    initial: dict
    steps: tuple
    final: dict

    @property
    def sequence(self):
        return [s.transition for s in self.steps]

    def __str__(self):
        return "\n".join(str(s) for s in self.steps)


def component_net(t, i):
    if not 1 <= i <= t.signature.vars:
        raise VarIndexOutOfRange(f"component {i} not in 1..{t.signature.vars}")
    return subnet(t.net, t.graph.cospan.components[i - 1])


def _describe(t, tr):
    c, x = t.transition_tags[tr]
    return f"{tr} ({t.constituents[c - 1].name}, variable {x})"


def _step(t, tr):
    c, x = t.transition_tags[tr]
    return WitnessStep(c, t.constituents[c - 1].name, x, tr)


def witness(t, i):
    """A dinaturality proof of ``t`` in variable ``i``, as a trace.

    Raises :class:`ComponentCyclic` when the component has a cycle (then no
    proof from the constituents exists), and :class:`MissingDinaturality`
    when some constituent variable in the component is not known dinatural.
    """
    net = component_net(t, i)
    cycle = find_cycle(net)
    if cycle is not None:
        trs = [v for v in cycle[:-1] if v in net.inputs]
        raise ComponentCyclic(
            f"component {i} of {t.name} is cyclic: "
            + " -> ".join(_describe(t, v) for v in trs + trs[:1]), cycle)
    missing = []
    for tr in net.transitions:
        c, x = t.transition_tags[tr]
        if not t.constituents[c - 1].delta[x - 1]:
            missing.append((c, x))
    if missing:
        raise MissingDinaturality(
            f"component {i} of {t.name} needs dinaturality of "
            + ", ".join(f"{t.constituents[c - 1].name} in variable {x}"
                        for c, x in missing), missing)
    order = topo_fire(net)
    return WitnessTrace(i, m0(net), tuple(_step(t, tr) for tr in order), md(net))


def transition_for(t, constituent, variable):
    """The transition of ``t`` tagged ``(constituent, variable)``."""
    for tr, tag in t.transition_tags.items():
        if tag == (constituent, variable):
            return tr
    raise KeyError((constituent, variable))


def replay_witness(t, i, sequence):
    """Fire ``sequence`` (transition ids) as B-labelled firings from
    ``(m0, all B)`` on component ``i``; return True iff every firing is
    legal and the end state is ``(md, all A)``."""
    net = component_net(t, i)
    lm = initial_labelled(net)
    try:
        for tr in sequence:
            lm = fire_labelled(net, lm, tr)
    except (ValueError, KeyError):
        return False
    return lm.marking == md(net) and all(lm.labels[tr] == A for tr in net.transitions)
