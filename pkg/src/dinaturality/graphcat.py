"""Nets with boundaries: standard graphs, gluing and discriminant functions.

A :class:`GraphCospan` is a Petri net together with two injections of the
domain and codomain argument positions into its places.  Its connected
components play the role of variables, so every cospan carries an explicit
component order, given by one *anchor* vertex per component.  Standard
graphs anchor their components at their transitions (component ``x`` is the
one containing ``t_x``), and gluing lists the anchors of the left factor
before those of the right one, which reproduces the pushout numbering of
:func:`dinaturality.signature.pushout_types`.

>>> from dinaturality.signature import Signature, CospanType
>>> ev = Signature("eval", "+-+", "+", CospanType((1, 1, 2), (2,), 2))
>>> g = standard_graph(ev)
>>> g.net.inputs["t1"], g.net.outputs["t1"]
(frozenset({'p1'}), frozenset({'p2'}))
>>> skeleton(g) == ev.type
True
"""

import os
from dataclasses import dataclass
from functools import cached_property

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from .errors import ArityMismatch, InvalidCospan, SizeLimitExceeded
from .petri import PetriNet, components as net_components, find_cycle, sources_sinks
from .signature import MINUS, PLUS, CospanType, Signature, variance

DEFAULT_MAX_ISO_NODES = 64


def _max_iso_nodes():
    return int(os.environ.get("DINAT_MAX_ISO_NODES", DEFAULT_MAX_ISO_NODES))


@dataclass(frozen=True, eq=False)
class GraphCospan:
    """A net ``net`` with boundary maps ``left: |dom| -> P`` and
    ``right: |cod| -> P``.

    ``left[i-1]`` is the place of domain argument ``i``.  ``anchors`` fixes
    the order of the components; when omitted the default order of
    :func:`dinaturality.petri.components` is used.
    """

    dom: tuple
    cod: tuple
    net: PetriNet
    left: tuple
    right: tuple
    anchors: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "dom", variance(self.dom))
        object.__setattr__(self, "cod", variance(self.cod))
        object.__setattr__(self, "left", tuple(self.left))
        object.__setattr__(self, "right", tuple(self.right))
        comps = net_components(self.net)
        if self.anchors is None:
            object.__setattr__(self, "anchors",
                               tuple(self._default_anchor(c) for c in comps))
        else:
            object.__setattr__(self, "anchors", tuple(self.anchors))
        self._validate(comps)

    def _default_anchor(self, comp):
        return next(v for v in self.net.places + self.net.transitions if v in comp)

    def _validate(self, comps):
        if len(self.left) != len(self.dom) or len(self.right) != len(self.cod):
            raise InvalidCospan("boundary maps do not match the variance lists")
        for name, m in (("left", self.left), ("right", self.right)):
            if len(set(m)) != len(m):
                raise InvalidCospan(f"{name} boundary map is not injective")
            for p in m:
                if not self.net.is_place(p):
                    raise InvalidCospan(f"{name} boundary refers to {p!r}, not a place")
        if len(self.anchors) != len(comps):
            raise InvalidCospan(
                f"{len(self.anchors)} anchors for {len(comps)} components")
        owner = {v: k for k, c in enumerate(comps) for v in c}
        if sorted(owner.get(a, -1) for a in self.anchors) != list(range(len(comps))):
            raise InvalidCospan("anchors must pick exactly one vertex per component")
        ss = sources_sinks(self.net)
        want_src = ({p for p, s in zip(self.left, self.dom) if s == PLUS}
                    | {p for p, s in zip(self.right, self.cod) if s == MINUS})
        want_snk = ({p for p, s in zip(self.left, self.dom) if s == MINUS}
                    | {p for p, s in zip(self.right, self.cod) if s == PLUS})
        if set(ss.sources) != want_src or set(ss.sinks) != want_snk:
            raise InvalidCospan(
                "sources/sinks do not agree with the boundary variances: "
                f"sources {sorted(ss.sources)} vs {sorted(want_src)}, "
                f"sinks {sorted(ss.sinks)} vs {sorted(want_snk)}")

    @cached_property
    def components(self):
        """Components as frozensets, in anchor order (index ``x`` is variable ``x+1``)."""
        comps = net_components(self.net)
        by_anchor = {a: c for c in comps for a in c if a in set(self.anchors)}
        return tuple(by_anchor[a] for a in self.anchors)

    @cached_property
    def component_of(self):
        """Vertex id -> 1-based component index."""
        return {v: k for k, c in enumerate(self.components, start=1) for v in c}

    @property
    def n_components(self):
        return len(self.anchors)

    def __eq__(self, other):
        if not isinstance(other, GraphCospan):
            return NotImplemented
        return (self.dom == other.dom and self.cod == other.cod
                and self.net == other.net and self.left == other.left
                and self.right == other.right and self.anchors == other.anchors)

    __hash__ = None


@dataclass(frozen=True, eq=False)
class GCMorphism:
    """A cospan with a discriminant function: ``delta[x-1] == 1`` claims
    dinaturality in the variable of component ``x``, and is only allowed
    when that component is acyclic."""

    cospan: GraphCospan
    delta: tuple

    def __post_init__(self):
        object.__setattr__(self, "delta", tuple(int(d) for d in self.delta))
        if len(self.delta) != self.cospan.n_components:
            raise InvalidCospan(
                f"delta has {len(self.delta)} entries for "
                f"{self.cospan.n_components} components")
        for x, d in enumerate(self.delta, start=1):
            if d not in (0, 1):
                raise InvalidCospan(f"delta entries must be 0 or 1, got {d}")
            if d and find_cycle(self.cospan.net, self.cospan.components[x - 1]):
                raise InvalidCospan(f"delta({x}) = 1 but component {x} is cyclic")

    def __eq__(self, other):
        if not isinstance(other, GCMorphism):
            return NotImplemented
        return self.cospan == other.cospan and self.delta == other.delta

    __hash__ = None


def standard_graph(s):
    """One place per argument and one transition per variable.

    Transition ``t_x`` consumes the covariant domain places and the
    contravariant codomain places sent to ``x`` and produces the others.
    """
    k = len(s.dom)
    places = [f"p{j}" for j in range(1, k + len(s.cod) + 1)]
    left, right = places[:k], places[k:]
    trans = [f"t{x}" for x in range(1, s.vars + 1)]
    ins = {t: set() for t in trans}
    outs = {t: set() for t in trans}
    for p, sign, x in zip(left, s.dom, s.sigma):
        (ins if sign == PLUS else outs)[f"t{x}"].add(p)
    for p, sign, x in zip(right, s.cod, s.tau):
        (outs if sign == PLUS else ins)[f"t{x}"].add(p)
    return GraphCospan(s.dom, s.cod, PetriNet(places, trans, ins, outs),
                       left, right, anchors=tuple(trans))


def identity_cospan(alpha):
    """Isolated places, one per argument, with ``left = right``."""
    alpha = variance(alpha)
    places = tuple(f"p{j}" for j in range(1, len(alpha) + 1))
    return GraphCospan(alpha, alpha, PetriNet(places, ()), places, places, places)


@dataclass(frozen=True)
class GlueMaps:
    """Where the vertices of the two factors ended up in a glued net."""

    places_u: dict
    places_v: dict
    trans_u: dict
    trans_v: dict


def glue_with_maps(u, v):
    """:func:`glue`, also returning the vertex injections of both factors."""
    if u.cod != v.dom:
        raise ArityMismatch(
            f"cannot glue: codomain {''.join(u.cod)!r} against "
            f"domain {''.join(v.dom)!r}")
    places_u = {p: f"p{k}" for k, p in enumerate(u.net.places, start=1)}
    # v's interface places are represented by the place of u they meet
    places_v = {q: places_u[p] for p, q in zip(u.right, v.left)}
    k = len(places_u)
    for q in v.net.places:
        if q not in places_v:
            k += 1
            places_v[q] = f"p{k}"
    nu = len(u.net.transitions)
    trans_u = {t: f"t{k}" for k, t in enumerate(u.net.transitions, start=1)}
    trans_v = {t: f"t{nu + k}" for k, t in enumerate(v.net.transitions, start=1)}

    places = list(places_u.values()) + [places_v[q] for q in v.net.places
                                        if q not in set(v.left)]
    ins, outs = {}, {}
    for net, pm, tm in ((u.net, places_u, trans_u), (v.net, places_v, trans_v)):
        for t in net.transitions:
            ins[tm[t]] = {pm[p] for p in net.inputs[t]}
            outs[tm[t]] = {pm[p] for p in net.outputs[t]}
    glued = PetriNet(places, list(trans_u.values()) + list(trans_v.values()),
                     ins, outs)

    vmap = {**places_u, **trans_u}
    wmap = {**places_v, **trans_v}
    candidates = [vmap[a] for a in u.anchors] + [wmap[a] for a in v.anchors]
    comps = net_components(glued)
    owner = {x: k for k, c in enumerate(comps) for x in c}
    anchors, taken = [], set()
    for a in candidates:
        if owner[a] not in taken:
            taken.add(owner[a])
            anchors.append(a)
    g = GraphCospan(u.dom, v.cod, glued,
                    [places_u[p] for p in u.left], [places_v[q] for q in v.right],
                    anchors=tuple(anchors))
    return g, GlueMaps(places_u, places_v, trans_u, trans_v)


def glue(u, v):
    """Glue ``u: alpha -> beta`` and ``v: beta -> gamma`` along ``beta``.

    Place ids are renumbered: ``u``'s places first, then ``v``'s places that
    are not identified with one of ``u``'s, then ``u``'s and ``v``'s
    transitions.
    """
    return glue_with_maps(u, v)[0]


def skeleton(g):
    """The type of a cospan: which component each boundary place lies in."""
    c = g.component_of
    return CospanType(tuple(c[p] for p in g.left), tuple(c[p] for p in g.right),
                      g.n_components)


def coherent(g, t):
    """Whether ``g`` has ``t.vars`` components laid out as ``t`` prescribes."""
    if len(g.left) != t.dom_arity or len(g.right) != t.cod_arity:
        return False
    if g.n_components != t.vars:
        return False
    c = g.component_of
    return (all(c[p] == x for p, x in zip(g.left, t.sigma))
            and all(c[p] == x for p, x in zip(g.right, t.tau)))


def component_maps(u, v, g, maps):
    """``(zeta, xi)``: component of ``g`` containing each component of ``u``
    and of ``v``, read off through the gluing injections."""
    cg = g.component_of
    um = {**maps.places_u, **maps.trans_u}
    vm = {**maps.places_v, **maps.trans_v}
    zeta = tuple(cg[um[a]] for a in u.anchors)
    xi = tuple(cg[vm[a]] for a in v.anchors)
    return zeta, xi


def compose_gc_with_maps(m1, m2):
    g, maps = glue_with_maps(m1.cospan, m2.cospan)
    zeta, xi = component_maps(m1.cospan, m2.cospan, g, maps)
    delta = []
    for x, comp in enumerate(g.components, start=1):
        ok = (find_cycle(g.net, comp) is None
              and all(d for y, d in zip(zeta, m1.delta) if y == x)
              and all(d for z, d in zip(xi, m2.delta) if z == x))
        delta.append(int(ok))
    return GCMorphism(g, tuple(delta)), maps


def compose_gc(m1, m2):
    """Composite in GC: glue the nets; component ``x`` is guaranteed
    dinatural iff it is acyclic and every component of either factor that
    lands in it was."""
    return compose_gc_with_maps(m1, m2)[0]


def gc_identity(alpha):
    alpha = variance(alpha)
    return GCMorphism(identity_cospan(alpha), (1,) * len(alpha))


def _as_digraph(g):
    dg = nx.DiGraph()
    lefts, rights = {}, {}
    for i, p in enumerate(g.left, start=1):
        lefts.setdefault(p, set()).add(i)
    for j, p in enumerate(g.right, start=1):
        rights.setdefault(p, set()).add(j)
    for p in g.net.places:
        dg.add_node(p, key=("p", frozenset(lefts.get(p, ())),
                            frozenset(rights.get(p, ()))))
    for t in g.net.transitions:
        dg.add_node(t, key=("t", frozenset(), frozenset()))
        dg.add_edges_from((p, t) for p in g.net.inputs[t])
        dg.add_edges_from((t, p) for p in g.net.outputs[t])
    return dg


def iso_equal(m1, m2):
    """Whether there is a net isomorphism respecting both boundaries under
    which the two discriminant functions agree component by component.

    Bare :class:`GraphCospan` values are accepted too; then only the nets
    and boundaries are compared.
    """
    if isinstance(m1, GraphCospan):
        m1 = GCMorphism(m1, (0,) * m1.n_components)
    if isinstance(m2, GraphCospan):
        m2 = GCMorphism(m2, (0,) * m2.n_components)
    g1, g2 = m1.cospan, m2.cospan
    if g1.dom != g2.dom or g1.cod != g2.cod:
        return False
    n1 = len(g1.net.places) + len(g1.net.transitions)
    n2 = len(g2.net.places) + len(g2.net.transitions)
    if n1 != n2 or g1.n_components != g2.n_components:
        return False
    budget = _max_iso_nodes()
    if n1 > budget:
        raise SizeLimitExceeded(
            f"{n1} vertices exceed the isomorphism budget of {budget} "
            "(set DINAT_MAX_ISO_NODES to raise it)")
    matcher = DiGraphMatcher(_as_digraph(g1), _as_digraph(g2),
                             node_match=lambda a, b: a["key"] == b["key"])
    c1, c2 = g1.component_of, g2.component_of
    for iso in matcher.isomorphisms_iter():
        if all(m1.delta[c1[a] - 1] == m2.delta[c2[iso[a]] - 1]
               for a in g1.anchors):
            return True
    return False


def collapse(g):
    """Replace every component by a single transition touching only the
    boundary places: the standard graph of the skeleton."""
    return standard_graph(Signature("collapse", g.dom, g.cod, skeleton(g)))
