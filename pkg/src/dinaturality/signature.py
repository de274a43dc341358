"""Variance lists, cospan types and the algebra of transformation signatures.

A transformation ``phi: F -> G`` with ``F: B^alpha -> C`` and ``G: B^beta -> C``
has a *type*, a cospan of finite sets ``|alpha| -> n <- |beta|`` recording
which arguments of ``F`` and ``G`` are computed on the same variable.  All
indices are 1-based, as in the mathematical notation.

>>> ev = Signature("eval", "+-+", "+", CospanType((1, 1, 2), (2,), 2))
>>> canonical_form(ev) == ev
True
>>> delta = Signature("delta", "+", "++", CospanType((1,), (1, 1), 1))
>>> s = hcomp_signature(delta, ev, 1)
>>> variance_str(s.dom), s.type.sigma, s.type.tau
('+--+', (1, 1, 1, 2), (2,))
"""

from dataclasses import dataclass, field, replace
from itertools import permutations

from .errors import (
    ArityMismatch,
    InvalidSignature,
    OutOfRangeIndex,
    VarIndexOutOfRange,
    ZeroVars,
)

PLUS, MINUS = "+", "-"
_SIGN_ALIASES = {"+": PLUS, "-": MINUS, "−": MINUS}


def variance(signs):
    """Normalise ``signs`` (a string such as ``"+-"`` or an iterable of
    sign strings) into a tuple of ``"+"``/``"-"``.

    >>> variance("+−+")
    ('+', '-', '+')
    """
    out = []
    for s in signs:
        try:
            out.append(_SIGN_ALIASES[s])
        except KeyError:
            raise InvalidSignature(f"not a variance sign: {s!r}") from None
    return tuple(out)


def negate(alpha):
    """Swap every sign of a variance list."""
    return tuple(MINUS if s == PLUS else PLUS for s in alpha)


def variance_str(alpha):
    return "".join(alpha)


def validate_type(t):
    """Raise unless ``t`` describes a well-formed cospan ``|alpha| -> n <- |beta|``."""
    if t.vars < 1:
        raise ZeroVars("a type needs at least one variable")
    for name, m in (("sigma", t.sigma), ("tau", t.tau)):
        for x in m:
            if not isinstance(x, int) or not 1 <= x <= t.vars:
                raise OutOfRangeIndex(
                    f"{name} entry {x!r} outside 1..{t.vars}")


@dataclass(frozen=True)
class CospanType:
    """The type ``|alpha| --sigma--> vars <--tau-- |beta|`` of a transformation."""

    sigma: tuple
    tau: tuple
    vars: int

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "tau", tuple(self.tau))
        validate_type(self)

    @property
    def dom_arity(self):
        return len(self.sigma)

    @property
    def cod_arity(self):
        return len(self.tau)

    def permuted(self, perm):
        """Apply the variable permutation ``perm`` (``perm[x-1]`` is the image of x)."""
        return CospanType(tuple(perm[x - 1] for x in self.sigma),
                          tuple(perm[x - 1] for x in self.tau), self.vars)


def identity_type(k):
    """The type ``k -> k <- k`` of an identity transformation on ``k`` arguments."""
    return CospanType(tuple(range(1, k + 1)), tuple(range(1, k + 1)), k)


@dataclass(frozen=True)
class Signature:
    """Name, domain/codomain variances and type of a transformation.

    ``dom_functor`` and ``cod_functor`` are optional opaque symbols for ``F``
    and ``G``; when both sides of a composition carry them they must agree.
    Equality compares variances and type only, never names or symbols.
    """

    name: str = field(compare=False)
    dom: tuple
    cod: tuple
    type: CospanType
    dom_functor: str = field(default=None, compare=False)
    cod_functor: str = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "dom", variance(self.dom))
        object.__setattr__(self, "cod", variance(self.cod))
        if len(self.dom) != self.type.dom_arity:
            raise ArityMismatch(
                f"{self.name}: |dom| = {len(self.dom)} but sigma has "
                f"{self.type.dom_arity} entries")
        if len(self.cod) != self.type.cod_arity:
            raise ArityMismatch(
                f"{self.name}: |cod| = {len(self.cod)} but tau has "
                f"{self.type.cod_arity} entries")

    @property
    def vars(self):
        return self.type.vars

    @property
    def sigma(self):
        return self.type.sigma

    @property
    def tau(self):
        return self.type.tau


def _union_find(size):
    parent = list(range(size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    return find, union


def pushout_types(t1, t2):
    """Canonical pushout of ``t1.tau`` against ``t2.sigma``.

    Returns ``(l, zeta, xi)`` where ``zeta`` maps the variables of ``t1`` and
    ``xi`` those of ``t2`` into ``1..l``.  Classes are numbered by first
    occurrence scanning ``1..n1`` and then ``1..n2``.
    """
    if t1.cod_arity != t2.dom_arity:
        raise ArityMismatch(
            f"cannot compose: {t1.cod_arity} codomain arguments against "
            f"{t2.dom_arity} domain arguments")
    n1, n2 = t1.vars, t2.vars
    find, union = _union_find(n1 + n2)
    for a, b in zip(t1.tau, t2.sigma):
        union(a - 1, n1 + b - 1)
    number = {}
    classes = []
    for x in range(n1 + n2):
        r = find(x)
        if r not in number:
            number[r] = len(number) + 1
        classes.append(number[r])
    return len(number), tuple(classes[:n1]), tuple(classes[n1:])


def compose_types(t1, t2):
    """Type of the vertical composite: ``(zeta sigma1, xi theta2, l)``."""
    l, zeta, xi = pushout_types(t1, t2)
    return CospanType(tuple(zeta[x - 1] for x in t1.sigma),
                      tuple(xi[x - 1] for x in t2.tau), l)


def _first_occurrence(t):
    order = {}
    for x in t.sigma + t.tau:
        if x not in order:
            order[x] = len(order) + 1
    # variables not touching the boundary keep their relative order at the end
    for x in range(1, t.vars + 1):
        if x not in order:
            order[x] = len(order) + 1
    return tuple(order[x] for x in range(1, t.vars + 1))


def canonical_form(s):
    """Representative of the permutation class of ``s``: variables renumbered by
    first occurrence in ``sigma`` then ``tau``.

    >>> s = Signature("s", "+-+", "+", CospanType((2, 2, 1), (1,), 2))
    >>> canonical_form(s).type
    CospanType(sigma=(1, 1, 2), tau=(2,), vars=2)
    """
    return replace(s, type=s.type.permuted(_first_occurrence(s.type)))


def permutation_equivalent(s1, s2):
    """Return a permutation ``pi`` with ``sigma2 = pi sigma1`` and
    ``tau2 = pi tau1`` (variances equal), or ``None``.
    """
    if s1.dom != s2.dom or s1.cod != s2.cod or s1.vars != s2.vars:
        return None
    c1 = _first_occurrence(s1.type)
    c2 = _first_occurrence(s2.type)
    if s1.type.permuted(c1) != s2.type.permuted(c2):
        return None
    # pi = c2^-1 . c1
    inv2 = {c: x for x, c in enumerate(c2, start=1)}
    return tuple(inv2[c] for c in c1)


def brute_force_permutation(s1, s2):
    """Exhaustive search for a permutation witness (small ``vars`` only)."""
    if s1.dom != s2.dom or s1.cod != s2.cod or s1.vars != s2.vars:
        return None
    for perm in permutations(range(1, s1.vars + 1)):
        if s1.type.permuted(perm) == s2.type:
            return perm
    return None


def hcomp_signature(phi, psi, i):
    """Signature of the ``i``-th horizontal composite: ``phi`` substituted
    into variable ``i`` of ``psi``.
    """
    m = psi.vars
    if not 1 <= i <= m:
        raise VarIndexOutOfRange(f"variable {i} not in 1..{m}")
    n = phi.vars

    def iota_n(x):
        return i - 1 + x

    def iota_m(x):
        return x if x < i else x + n - 1

    alpha, beta = phi.dom, phi.cod
    sigma, tau = phi.sigma, phi.tau

    dom, a = [], []
    for u, sign in enumerate(psi.dom):
        if psi.sigma[u] == i:
            if sign == PLUS:
                dom += alpha
                a += [iota_n(x) for x in sigma]
            else:
                dom += negate(beta)
                a += [iota_n(x) for x in tau]
        else:
            dom.append(sign)
            a.append(iota_m(psi.sigma[u]))

    cod, b = [], []
    for v, sign in enumerate(psi.cod):
        if psi.tau[v] == i:
            if sign == PLUS:
                cod += beta
                b += [iota_n(x) for x in tau]
            else:
                cod += negate(alpha)
                b += [iota_n(x) for x in sigma]
        else:
            cod.append(sign)
            b.append(iota_m(psi.tau[v]))

    dom_f = cod_f = None
    if None not in (phi.dom_functor, phi.cod_functor, psi.dom_functor):
        dom_f = f"{psi.dom_functor}[{phi.cod_functor}^op,{phi.dom_functor}/{i}]"
    if None not in (phi.dom_functor, phi.cod_functor, psi.cod_functor):
        cod_f = f"{psi.cod_functor}[{phi.dom_functor}^op,{phi.cod_functor}/{i}]"
    return Signature(f"{phi.name}*{psi.name}@{i}", tuple(dom), tuple(cod),
                     CospanType(tuple(a), tuple(b), n + m - 1),
                     dom_functor=dom_f, cod_functor=cod_f)
