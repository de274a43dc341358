"""Brute-force semantics in finite sets.

Objects are sizes ``k`` standing for ``{0, ..., k-1}`` and arrows are
:class:`FinSetMap` tables.  Functor expressions are built from argument
slots, constants, products and function sets.  Encodings are fixed so that
tables can be compared entry by entry:

* a product ``X1 x ... x Xm`` enumerates tuples lexicographically, first
  coordinate most significant;
* a function set ``Hom(X, Y)`` enumerates tables ``(h(0), ..., h(|X|-1))``
  the same way, ``h(0)`` most significant.

>>> e = Hom(Arg(1, "-"), Arg(2, "+"))
>>> eval_functor(e, (2, 2))
4
>>> church(2).at((2,)).table     # g -> g.g on the four maps 2 -> 2
(0, 1, 1, 3)
"""

from dataclasses import dataclass, field
from itertools import product as cartesian

from .errors import (
    ArityMismatch,
    BudgetExceeded,
    IndexOutOfRange,
    InterfaceMismatch,
    ShapeMismatch,
)
from .petri import A, B
from .signature import (
    MINUS,
    PLUS,
    CospanType,
    Signature,
    compose_types,
    identity_type,
    negate,
    permutation_equivalent,
    pushout_types,
    variance,
)

MAX_SET_SIZE = 250_000
DEFAULT_BUDGET = 200_000


@dataclass(frozen=True)
class FinSetMap:
    """A function ``{0..dom-1} -> {0..cod-1}`` given by its table."""

    dom: int
    cod: int
    table: tuple

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != self.dom:
            raise ShapeMismatch(f"table of length {len(self.table)} for domain {self.dom}")
        if any(not 0 <= y < self.cod for y in self.table):
            raise ShapeMismatch(f"table entries must lie in 0..{self.cod - 1}")

    @classmethod
    def identity(cls, k):
        return cls(k, k, tuple(range(k)))

    def __call__(self, x):
        return self.table[x]

    def then(self, other):
        """``other . self``."""
        if self.cod != other.dom:
            raise ShapeMismatch(
                f"cannot compose {self.dom}->{self.cod} with {other.dom}->{other.cod}")
        return FinSetMap(self.dom, other.cod, tuple(other.table[y] for y in self.table))


def all_maps(a, b):
    """Every map ``a -> b``, in table order."""
    for table in cartesian(range(b), repeat=a):
        yield FinSetMap(a, b, table)


def encode(coords, sizes):
    idx = 0
    for c, s in zip(coords, sizes):
        idx = idx * s + c
    return idx


def decode(idx, sizes):
    out = []
    for s in reversed(sizes):
        idx, c = divmod(idx, s)
        out.append(c)
    return tuple(reversed(out))


def _guard(n):
    if n > MAX_SET_SIZE:
        raise BudgetExceeded(f"set of size {n} exceeds the limit {MAX_SET_SIZE}")
    return n


# functor expressions


@dataclass(frozen=True)
class Arg:
    """Argument ``slot`` (1-based) of the functor, used with ``variance``."""

    slot: int
    variance: str = PLUS

    def __post_init__(self):
        object.__setattr__(self, "variance", variance(self.variance)[0])


@dataclass(frozen=True)
class Const:
    size: int


@dataclass(frozen=True)
class Prod:
    children: tuple = ()

    def __init__(self, *children):
        if len(children) == 1 and isinstance(children[0], (list, tuple)):
            children = tuple(children[0])
        object.__setattr__(self, "children", tuple(children))


@dataclass(frozen=True)
class Hom:
    """Function set ``contra => co``; contravariant in its first child."""

    contra: object
    co: object


def expr_variance(e, arity):
    """The variance list an expression realises on ``arity`` slots.

    Every slot must be used, and always with its declared variance at the
    polarity where it occurs.
    """
    found = {}

    def walk(e, pol):
        if isinstance(e, Arg):
            if not 1 <= e.slot <= arity:
                raise ArityMismatch(f"slot {e.slot} outside 1..{arity}")
            if e.variance != pol:
                raise ArityMismatch(
                    f"slot {e.slot} declared {e.variance} but occurs at polarity {pol}")
            if found.setdefault(e.slot, pol) != pol:
                raise ArityMismatch(f"slot {e.slot} used with both polarities")
        elif isinstance(e, Prod):
            for c in e.children:
                walk(c, pol)
        elif isinstance(e, Hom):
            walk(e.contra, negate((pol,))[0])
            walk(e.co, pol)
        elif not isinstance(e, Const):
            raise TypeError(f"not a functor expression: {e!r}")

    walk(e, PLUS)
    return tuple(found.get(s) for s in range(1, arity + 1))


def check_expr(e, alpha):
    """Raise :class:`ArityMismatch` unless ``e`` implements variance ``alpha``."""
    alpha = variance(alpha)
    got = expr_variance(e, len(alpha))
    for s, (g, a) in enumerate(zip(got, alpha), start=1):
        if g is not None and g != a:
            raise ArityMismatch(f"slot {s} has variance {g}, declared {a}")


def eval_functor(e, args):
    """Size of ``e`` applied to the objects ``args`` (one size per slot)."""
    if isinstance(e, Arg):
        if not 1 <= e.slot <= len(args):
            raise ArityMismatch(f"slot {e.slot} but only {len(args)} arguments")
        return args[e.slot - 1]
    if isinstance(e, Const):
        return e.size
    if isinstance(e, Prod):
        n = 1
        for c in e.children:
            n *= eval_functor(c, args)
        return _guard(n)
    if isinstance(e, Hom):
        return _guard(eval_functor(e.co, args) ** eval_functor(e.contra, args))
    raise TypeError(f"not a functor expression: {e!r}")


def _act(e, maps):
    # a contravariant child is handed its arrows unchanged: the Hom case
    # precomposes with them, which is what reverses the direction
    if isinstance(e, Arg):
        if not 1 <= e.slot <= len(maps):
            raise ArityMismatch(f"slot {e.slot} but only {len(maps)} arrows")
        return maps[e.slot - 1]
    if isinstance(e, Const):
        return FinSetMap.identity(e.size)
    if isinstance(e, Prod):
        parts = [_act(c, maps) for c in e.children]
        doms = [m.dom for m in parts]
        cods = [m.cod for m in parts]
        n = 1
        for d in doms:
            n *= d
        m = 1
        for c in cods:
            m *= c
        _guard(n)
        table = [encode([p.table[x] for p, x in zip(parts, xs)], cods)
                 for xs in cartesian(*[range(d) for d in doms])]
        return FinSetMap(n, m, table)
    if isinstance(e, Hom):
        pre = _act(e.contra, maps)
        post = _act(e.co, maps)
        # h: pre.cod -> post.dom  becomes  post . h . pre : pre.dom -> post.cod
        n = _guard(post.dom ** pre.cod)
        m = _guard(post.cod ** pre.dom)
        src = [post.dom] * pre.cod
        dst = [post.cod] * pre.dom
        table = []
        for idx in range(n):
            h = decode(idx, src)
            table.append(encode([post.table[h[pre.table[x]]] for x in range(pre.dom)], dst))
        return FinSetMap(n, m, table)
    raise TypeError(f"not a functor expression: {e!r}")


def fmap(e, maps):
    """Action of ``e`` on one arrow per slot.

    For a covariant slot ``g: X -> Y`` puts ``X`` in the source and ``Y``
    in the target; for a contravariant one it is the other way round.
    """
    return _act(e, tuple(maps))


# tuple substitution


def substitute_tuple(a, x, i):
    """``a`` with its ``i``-th entry (1-based) replaced by ``x``.

    >>> substitute_tuple(("a", "b", "c"), "X", 2)
    ('a', 'X', 'c')
    """
    if not 1 <= i <= len(a):
        raise IndexOutOfRange(f"position {i} not in 1..{len(a)}")
    return tuple(a[:i - 1]) + (x,) + tuple(a[i:])


def substitute_mixed(a, x, y, i, sigma, alpha):
    """The tuple ``(a_{sigma(1)}, ...)`` where arguments on variable ``i``
    become ``x`` if contravariant and ``y`` if covariant.

    >>> substitute_mixed(("A",), "X", "Y", 1, (1, 1), "-+")
    ('X', 'Y')
    """
    if not 1 <= i <= len(a):
        raise IndexOutOfRange(f"variable {i} not in 1..{len(a)}")
    alpha = variance(alpha)
    if len(alpha) != len(sigma):
        raise IndexOutOfRange("sigma and the variance list differ in length")
    out = []
    for s, v in zip(alpha, sigma):
        if not 1 <= v <= len(a):
            raise IndexOutOfRange(f"sigma entry {v} not in 1..{len(a)}")
        out.append((x if s == MINUS else y) if v == i else a[v - 1])
    return tuple(out)


# concrete transformations


@dataclass(frozen=True, eq=False)
class ConcreteTransformation:
    """A family of finite-set maps ``F(A sigma) -> G(A tau)``.

    ``component`` takes a tuple with one object size per variable.  ``spec``
    is a JSON-friendly description of how the family was built.
    """

    signature: Signature
    dom_expr: object
    cod_expr: object
    component: object = field(repr=False)
    spec: dict = field(default=None, compare=False)

    def __post_init__(self):
        check_expr(self.dom_expr, self.signature.dom)
        check_expr(self.cod_expr, self.signature.cod)

    @property
    def name(self):
        return self.signature.name

    def dom_size(self, sizes):
        return eval_functor(self.dom_expr, tuple(sizes[x - 1] for x in self.signature.sigma))

    def cod_size(self, sizes):
        return eval_functor(self.cod_expr, tuple(sizes[x - 1] for x in self.signature.tau))

    def at(self, sizes):
        """The component at objects ``sizes``, shape-checked."""
        sizes = tuple(sizes)
        if len(sizes) != self.signature.vars:
            raise ShapeMismatch(f"{len(sizes)} objects for {self.signature.vars} variables")
        m = self.component(sizes)
        if (m.dom, m.cod) != (self.dom_size(sizes), self.cod_size(sizes)):
            raise ShapeMismatch(
                f"{self.name} at {sizes}: component is {m.dom}->{m.cod}, expected "
                f"{self.dom_size(sizes)}->{self.cod_size(sizes)}")
        return m


def _sig(name, dom, cod, sigma, tau, n):
    return Signature(name, dom, cod, CospanType(sigma, tau, n))


def diagonal():
    """``delta_A: A -> A x A``."""
    def comp(sizes):
        (a,) = sizes
        return FinSetMap(a, a * a, [x * a + x for x in range(a)])
    return ConcreteTransformation(_sig("delta", "+", "++", (1,), (1, 1), 1),
                                  Arg(1), Prod(Arg(1), Arg(2)), comp,
                                  {"builtin": "diagonal"})


def evaluation(const=None):
    """``eval_{A,B}: A x (A => B) -> B``, or with ``const=r`` the one-variable
    ``A x (A => R) -> R`` for a fixed set ``R`` of size ``r``."""
    if const is None:
        sig = _sig("eval", "+-+", "+", (1, 1, 2), (2,), 2)
        dom, cod = Prod(Arg(1), Hom(Arg(2, MINUS), Arg(3))), Arg(1)
    else:
        sig = _sig(f"eval_{const}", "+-", "", (1, 1), (), 1)
        dom, cod = Prod(Arg(1), Hom(Arg(2, MINUS), Const(const))), Const(const)

    def comp(sizes):
        a = sizes[0]
        b = sizes[1] if const is None else const
        hs = b ** a
        table = [decode(h, [b] * a)[x] for x in range(a) for h in range(hs)]
        return FinSetMap(a * hs, b, table)
    spec = {"builtin": "eval"} if const is None else {"builtin": "eval", "const": const}
    return ConcreteTransformation(sig, dom, cod, comp, spec)


def church(n):
    """``n_A: (A => A) -> (A => A)``, ``g -> g^n`` (``0_A`` is constantly the identity)."""
    if n < 0:
        raise ValueError("church numerals are non-negative")
    e = Hom(Arg(1, MINUS), Arg(2))

    def comp(sizes):
        (a,) = sizes
        shape = [a] * a
        table = []
        for idx in range(a ** a):
            g = decode(idx, shape)
            h = tuple(range(a))
            for _ in range(n):
                h = tuple(g[y] for y in h)
            table.append(encode(h, shape))
        return FinSetMap(a ** a, a ** a, table)
    return ConcreteTransformation(_sig(f"church{n}", "-+", "-+", (1, 1), (1, 1), 1),
                                  e, e, comp, {"builtin": "church", "n": n})


def identity_on(expr, alpha, name=None):
    """The identity transformation on the functor ``expr`` of variance ``alpha``."""
    alpha = variance(alpha)
    sig = Signature(name or "id", alpha, alpha, identity_type(len(alpha)))

    def comp(sizes):
        return FinSetMap.identity(eval_functor(expr, sizes))
    return ConcreteTransformation(sig, expr, expr, comp,
                                  {"builtin": "identity_on", "expr": expr_to_json(expr),
                                   "variance": "".join(alpha)})


def const_point():
    """``1 -> (A => A)`` picking the identity of ``A``."""
    e = Hom(Arg(1, MINUS), Arg(2))

    def comp(sizes):
        (a,) = sizes
        return FinSetMap(1, a ** a, [encode(range(a), [a] * a)])
    return ConcreteTransformation(_sig("point", "", "-+", (), (1, 1), 1),
                                  Prod(), e, comp, {"builtin": "const_point"})


def _shift(e, k):
    if isinstance(e, Arg):
        return Arg(e.slot + k, e.variance)
    if isinstance(e, Prod):
        return Prod(*[_shift(c, k) for c in e.children])
    if isinstance(e, Hom):
        return Hom(_shift(e.contra, k), _shift(e.co, k))
    return e


def _factors(e):
    return e.children if isinstance(e, Prod) else (e,)


def product_pair(c1, c2):
    """``c1 x c2`` on disjoint variables; top-level products are flattened,
    which leaves the element encoding unchanged."""
    s1, s2 = c1.signature, c2.signature
    n1 = s1.vars
    sig = Signature(f"{s1.name}x{s2.name}", s1.dom + s2.dom, s1.cod + s2.cod,
                    CospanType(s1.sigma + tuple(x + n1 for x in s2.sigma),
                               s1.tau + tuple(x + n1 for x in s2.tau),
                               n1 + s2.vars))
    dom = Prod(*(_factors(c1.dom_expr)
                 + tuple(_shift(e, len(s1.dom)) for e in _factors(c2.dom_expr))))
    cod = Prod(*(_factors(c1.cod_expr)
                 + tuple(_shift(e, len(s1.cod)) for e in _factors(c2.cod_expr))))

    def comp(sizes):
        m1, m2 = c1.at(sizes[:n1]), c2.at(sizes[n1:])
        return FinSetMap(m1.dom * m2.dom, m1.cod * m2.cod,
                         [y1 * m2.cod + y2 for y1 in m1.table for y2 in m2.table])
    return ConcreteTransformation(sig, dom, cod, comp,
                                  {"builtin": "product_pair", "parts": [c1.spec, c2.spec]})


def from_tables(signature, dom_expr, cod_expr, tables):
    """A family given by explicit tables keyed by size tuples; asking for a
    size tuple that has no table is an error."""
    tables = {tuple(k): tuple(v) for k, v in dict(tables).items()}

    def comp(sizes):
        try:
            table = tables[tuple(sizes)]
        except KeyError:
            raise ShapeMismatch(f"{signature.name}: no table for objects {tuple(sizes)}") from None
        return FinSetMap(len(table), eval_functor(cod_expr, tuple(
            sizes[x - 1] for x in signature.tau)), table)
    spec = {"tables": [{"sizes": list(k), "table": list(v)} for k, v in tables.items()],
            "dom_expr": expr_to_json(dom_expr), "cod_expr": expr_to_json(cod_expr)}
    return ConcreteTransformation(signature, dom_expr, cod_expr, comp, spec)


def tabulate(ct, max_size):
    """Every component of ``ct`` with objects of size at most ``max_size``."""
    return {sizes: ct.at(sizes).table
            for sizes in cartesian(range(max_size + 1), repeat=ct.signature.vars)}


def rename(ct, name):
    s = ct.signature
    sig = Signature(name, s.dom, s.cod, s.type, s.dom_functor, s.cod_functor)
    return ConcreteTransformation(sig, ct.dom_expr, ct.cod_expr, ct.component, ct.spec)


def expr_to_json(e):
    if isinstance(e, Arg):
        return {"arg": e.slot, "var": e.variance}
    if isinstance(e, Const):
        return {"const": e.size}
    if isinstance(e, Prod):
        return {"prod": [expr_to_json(c) for c in e.children]}
    if isinstance(e, Hom):
        return {"hom": [expr_to_json(e.contra), expr_to_json(e.co)]}
    raise TypeError(f"not a functor expression: {e!r}")


def expr_from_json(d):
    if "arg" in d:
        return Arg(int(d["arg"]), d.get("var", PLUS))
    if "const" in d:
        return Const(int(d["const"]))
    if "prod" in d:
        return Prod(*[expr_from_json(c) for c in d["prod"]])
    if "hom" in d:
        contra, co = d["hom"]
        return Hom(expr_from_json(contra), expr_from_json(co))
    raise ValueError(f"not a functor expression: {d!r}")


def from_spec(spec, signature=None):
    """Rebuild a concrete transformation from its ``spec`` dictionary."""
    kind = spec.get("builtin")
    if kind == "diagonal":
        return diagonal()
    if kind == "eval":
        return evaluation(spec.get("const"))
    if kind == "church":
        return church(int(spec["n"]))
    if kind == "const_point":
        return const_point()
    if kind == "identity_on":
        return identity_on(expr_from_json(spec["expr"]), spec["variance"])
    if kind == "product_pair":
        c1, c2 = (from_spec(p) for p in spec["parts"])
        return product_pair(c1, c2)
    if "tables" in spec:
        if signature is None:
            raise ValueError("table semantics need the signature")
        return from_tables(signature, expr_from_json(spec["dom_expr"]),
                           expr_from_json(spec["cod_expr"]),
                           {tuple(r["sizes"]): r["table"] for r in spec["tables"]})
    raise ValueError(f"unknown semantics {spec!r}")


# hexagons


@dataclass(frozen=True)
class HexagonReport:
    """Outcome of a brute-force hexagon check in one variable.

    On failure ``objects`` holds the sizes of the fixed objects with ``A``
    in the checked position, ``target`` is ``|B|`` and ``arrow`` is ``f``.
    """

    variable: int
    passed: bool
    checked: int = 0
    objects: tuple = None
    target: int = None
    arrow: FinSetMap = None
    upper: tuple = None
    lower: tuple = None

    def __bool__(self):
        return self.passed

    def __str__(self):
        if self.passed:
            return f"variable {self.variable}: pass ({self.checked} hexagons)"
        return (f"variable {self.variable}: FAIL at A={self.objects}, "
                f"B={self.target}, f={list(self.arrow.table)}: upper leg "
                f"{list(self.upper)} != lower leg {list(self.lower)}")


def _leg_maps(alpha, sigma, sizes, i, f, contra_gets_f, still):
    # slots on variable i receive f or the identity on the object `still`
    maps = []
    for s, x in zip(alpha, sigma):
        if x != i:
            maps.append(FinSetMap.identity(sizes[x - 1]))
        elif (s == MINUS) == contra_gets_f:
            maps.append(f)
        else:
            maps.append(FinSetMap.identity(still))
    return maps


def hexagon_legs(ct, i, sizes, f):
    """``(upper, lower)`` legs ``F(A[B,A/i]) -> G(A[A,B/i])`` of the
    hexagon for ``f: A -> B`` in variable ``i``; ``sizes`` fixes the other
    variables (its ``i``-th entry is ignored)."""
    s = ct.signature
    sizes = list(sizes)
    at_a = substitute_tuple(sizes, f.dom, i)
    at_b = substitute_tuple(sizes, f.cod, i)
    a, b = f.dom, f.cod
    upper = (fmap(ct.dom_expr, _leg_maps(s.dom, s.sigma, sizes, i, f, True, a))
             .then(ct.at(at_a))
             .then(fmap(ct.cod_expr, _leg_maps(s.cod, s.tau, sizes, i, f, False, a))))
    lower = (fmap(ct.dom_expr, _leg_maps(s.dom, s.sigma, sizes, i, f, False, b))
             .then(ct.at(at_b))
             .then(fmap(ct.cod_expr, _leg_maps(s.cod, s.tau, sizes, i, f, True, b))))
    if (upper.dom, upper.cod) != (lower.dom, lower.cod):
        raise ShapeMismatch(f"hexagon legs differ in shape: {upper.dom}->{upper.cod} "
                            f"vs {lower.dom}->{lower.cod}")
    return upper, lower


def hexagon_count(n_vars, max_size):
    k = max_size + 1
    arrows = sum(b ** a for a in range(k) for b in range(k))
    return arrows * k ** (n_vars - 1)


def check_dinaturality(ct, i, max_size=3, budget=DEFAULT_BUDGET):
    """Check every hexagon in variable ``i`` with all objects of size at most
    ``max_size`` (including the empty set) and every arrow between them."""
    n = ct.signature.vars
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"variable {i} not in 1..{n}")
    total = hexagon_count(n, max_size)
    if total > budget:
        raise BudgetExceeded(f"{total} hexagons exceed the budget of {budget}")
    checked = 0
    for others in cartesian(range(max_size + 1), repeat=n - 1):
        sizes = list(others[:i - 1]) + [0] + list(others[i - 1:])
        for a in range(max_size + 1):
            for b in range(max_size + 1):
                for f in all_maps(a, b):
                    upper, lower = hexagon_legs(ct, i, sizes, f)
                    checked += 1
                    if upper.table != lower.table:
                        return HexagonReport(i, False, checked,
                                             tuple(substitute_tuple(sizes, a, i)), b, f,
                                             upper.table, lower.table)
    return HexagonReport(i, True, checked)


def vcompose_concrete(c1, c2, signature=None):
    """Componentwise composite ``psi_{A xi} . phi_{A zeta}`` over the pushout."""
    s1, s2 = c1.signature, c2.signature
    if s1.cod != s2.dom or c1.cod_expr != c2.dom_expr:
        raise InterfaceMismatch(f"{c1.name} does not end where {c2.name} starts")
    _, zeta, xi = pushout_types(s1.type, s2.type)
    t = compose_types(s1.type, s2.type)
    sig = Signature(f"{s2.name}.{s1.name}", s1.dom, s2.cod, t)
    if signature is not None:
        if (signature.dom, signature.cod, signature.type) != (sig.dom, sig.cod, sig.type):
            raise InterfaceMismatch("composite signature does not match the pushout")
        sig = signature

    def comp(sizes):
        return c1.at([sizes[z - 1] for z in zeta]).then(c2.at([sizes[x - 1] for x in xi]))
    return ConcreteTransformation(sig, c1.dom_expr, c2.cod_expr, comp,
                                  {"composite": [c1.spec, c2.spec]})


def concrete_composite(semantics):
    """Left fold of :func:`vcompose_concrete`."""
    semantics = list(semantics)
    out = semantics[0]
    for c in semantics[1:]:
        out = vcompose_concrete(out, c)
    return out


def _check_constituents(t, semantics):
    if len(semantics) != len(t.constituents):
        raise ShapeMismatch(
            f"{len(semantics)} semantics for {len(t.constituents)} constituents")
    for c, ct in zip(t.constituents, semantics):
        if c.signature != ct.signature:
            raise ShapeMismatch(f"semantics of {ct.name} does not match {c.name}")


def realize_marking(t, semantics, lm, f, component=1, fixed=None):
    """The map a labelled marking stands for: functor images alternating
    with constituent components, interface by interface.

    A marked place contributes ``f``, an empty one the identity on the label
    of its neighbouring transition.  ``lm`` lives on component ``component``
    of ``t``'s net; every other variable sits at the object ``fixed[x-1]``.
    """
    semantics = list(semantics)
    _check_constituents(t, semantics)
    cospan = t.graph.cospan
    comp_of = cospan.component_of
    n = t.signature.vars
    fixed = list(fixed) if fixed is not None else [0] * n
    if len(fixed) != n:
        raise ShapeMismatch(f"{len(fixed)} fixed objects for {n} variables")
    obj = {A: f.dom, B: f.cod}
    net = t.net

    def place_arrow(p):
        x = comp_of[p]
        if x != component:
            return FinSetMap.identity(fixed[x - 1])
        if lm.marking.get(p, 0):
            return f
        tr = net.pre(p) if net.pre(p) is not None else net.post(p)
        if tr is None:
            raise ShapeMismatch(f"isolated place {p!r} has no label to read")
        return FinSetMap.identity(obj[lm.labels[tr]])

    def trans_object(tr):
        x = comp_of[tr]
        return obj[lm.labels[tr]] if x == component else fixed[x - 1]

    by_level = {}
    for p, (lvl, j) in t.place_tags.items():
        by_level.setdefault(lvl, {})[j] = p
    by_tag = {tag: tr for tr, tag in t.transition_tags.items()}
    k = len(semantics)
    result = None
    for lvl in range(1, k + 2):
        expr = semantics[lvl - 1].dom_expr if lvl <= k else semantics[k - 1].cod_expr
        places = by_level.get(lvl, {})
        m = fmap(expr, [place_arrow(places[j]) for j in sorted(places)])
        result = m if result is None else _then(result, m)
        if lvl <= k:
            ct = semantics[lvl - 1]
            sizes = [trans_object(by_tag[(lvl, x)]) for x in range(1, ct.signature.vars + 1)]
            result = _then(result, ct.at(sizes))
    return result


def _then(m1, m2):
    if m1.cod != m2.dom:
        raise ShapeMismatch(f"cannot follow {m1.dom}->{m1.cod} by {m2.dom}->{m2.cod}")
    return m1.then(m2)


@dataclass(frozen=True)
class PredictionReport:
    reports: tuple
    no_guarantee: tuple

    @property
    def passed(self):
        return all(r.passed for r in self.reports)

    def __str__(self):
        lines = [str(r) for r in self.reports]
        lines += [f"variable {x}: no guarantee (delta = 0), not checked"
                  for x in self.no_guarantee]
        return "\n".join(lines)


def check_prediction(t, ct, max_size=3, budget=DEFAULT_BUDGET):
    """Brute-force every variable in which ``t`` is claimed dinatural.

    A failure refutes the dinaturality assumed for some constituent; a
    variable with ``delta = 0`` is reported as carrying no guarantee.
    """
    pi = permutation_equivalent(t.signature, ct.signature)
    if pi is None:
        raise InterfaceMismatch(f"semantics {ct.name} does not have the signature of {t.name}")
    reports, none = [], []
    for x, d in enumerate(t.delta, start=1):
        if d:
            reports.append(check_dinaturality(ct, pi[x - 1], max_size, budget))
        else:
            none.append(x)
    return PredictionReport(tuple(reports), tuple(none))
