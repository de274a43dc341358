"""Worked examples used throughout the tests, the demos and the corpus.

>>> phi, psi = gss_pair()
>>> vcompose(phi, psi).signature.type
CospanType(sigma=(1, 1), tau=(1,), vars=1)
"""

from dataclasses import replace

from .dinat import make_atomic, vcompose
from .finset_oracle import (
    Arg,
    Const,
    Hom,
    church,
    diagonal,
    evaluation,
    identity_on,
    product_pair,
    rename,
)
from .petri import PetriNet
from .signature import CospanType, Signature


def delta_signature():
    return Signature("delta", "+", "++", CospanType((1,), (1, 1), 1))


def eval_signature():
    return Signature("eval", "+-+", "+", CospanType((1, 1, 2), (2,), 2))


def church_signature(n=2):
    return Signature(f"church{n}", "-+", "-+", CospanType((1, 1), (1, 1), 1))


def gss_semantics(r=2):
    """``phi = delta x id_{A => R}`` and ``psi = id_A x eval_R`` with ``|R| = r``."""
    phi = rename(product_pair(diagonal(), identity_on(Hom(Arg(1, "-"), Const(r)), "-")), "phi")
    psi = rename(product_pair(identity_on(Arg(1), "+"), evaluation(r)), "psi")
    return phi, psi


def gss_pair(r=2):
    """The two atomic factors of the composite ``A x (A => R) -> A x R``."""
    cphi, cpsi = gss_semantics(r)
    return make_atomic(cphi.signature, [1, 1]), make_atomic(cpsi.signature, [1, 1])


def gss():
    """The glued composite together with the semantics of its factors."""
    phi, psi = gss_pair()
    return vcompose(phi, psi), list(gss_semantics())


def associativity_triple():
    """Three transformations whose composite changes its discriminant when
    an intermediate composite is collapsed too early."""
    phi = Signature("phi", "+-", "++--", CospanType((1, 2), (1, 1, 2, 2), 2))
    psi = Signature("psi", "++--", "+-", CospanType((1, 2, 2, 3), (1, 3), 3))
    chi = Signature("chi", "+-", "", CospanType((1, 1), (), 1))
    return tuple(make_atomic(s, [1] * s.vars) for s in (phi, psi, chi))


def collapsed(t, name=None):
    """``t`` forgotten down to an atomic transformation on its own signature,
    keeping the discriminant it had."""
    s = t.signature if name is None else replace(t.signature, name=name)
    return make_atomic(s, t.delta)


def builtin_semantics():
    """Atomic transformations with finite-set semantics, all claimed
    dinatural in every variable."""
    cts = [diagonal(), evaluation()] + [church(n) for n in range(4)]
    return [(make_atomic(ct.signature, [1] * ct.signature.vars), ct) for ct in cts]


def constant_loop():
    """Two transitions feeding each other through two places."""
    return PetriNet(["p1", "p2"], ["t1", "t2"],
                    {"t1": {"p1"}, "t2": {"p2"}}, {"t1": {"p2"}, "t2": {"p1"}})


def token_game_net():
    """``t`` moves tokens from three places to five; ``t'`` then consumes
    one of them together with a token already waiting.

    Returns the net and its initial marking.
    """
    net = PetriNet(["p1", "p2", "p3", "p4", "p5", "q1", "q2", "q3", "q4", "q5"],
                   ["t", "t'"],
                   {"t": {"p1", "p2", "p3"}, "t'": {"q5", "p4"}},
                   {"t": {"q1", "q2", "q3", "q4", "q5"}, "t'": {"p5"}})
    marking = {"p1": 1, "p2": 1, "p3": 2, "p4": 1, "p5": 0,
               "q1": 0, "q2": 0, "q3": 0, "q4": 1, "q5": 0}
    return net, marking
