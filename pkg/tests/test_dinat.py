import random

import pytest

from dinaturality.catalogue import (
    associativity_triple,
    collapsed,
    delta_signature,
    eval_signature,
    gss_pair,
)
from dinaturality.dinat import (
    ATOMIC,
    COMPOSITE,
    decompose,
    equivalent,
    hcompose,
    identity_of,
    make_atomic,
    replay_witness,
    transition_for,
    vcompose,
    vcompose_all,
    witness,
)
from dinaturality.errors import (
    ComponentCyclic,
    InterfaceMismatch,
    InvalidSignature,
    MissingDinaturality,
    PsiNotDinaturalAtI,
    VarIndexOutOfRange,
)
from dinaturality.generators import random_chain
from dinaturality.petri import md, replay


def test_make_atomic_validates_delta():
    with pytest.raises(InvalidSignature):
        make_atomic(eval_signature(), [1])
    with pytest.raises(InvalidSignature):
        make_atomic(eval_signature(), [1, 2])
    t = make_atomic(eval_signature(), [1, 0])
    assert t.kind == ATOMIC and t.constituents == (t,)


def test_gss_witness_in_paper_order():
    phi, psi = gss_pair()
    t = vcompose(phi, psi)
    assert t.kind == COMPOSITE and t.name == "psi.phi"
    trace = witness(t, 1)
    assert [(s.constituent_name, s.variable) for s in trace.steps] == [
        ("phi", 1), ("psi", 1), ("psi", 2), ("phi", 2)]
    assert str(trace.steps[0]) == "apply dinaturality of phi in variable 1"
    assert replay(t.net, trace.sequence) == md(t.net)
    order = [transition_for(t, c, x) for c, x in [(1, 1), (2, 1), (2, 2), (1, 2)]]
    assert replay_witness(t, 1, order)
    assert not replay_witness(t, 1, order[::-1])
    assert not replay_witness(t, 1, order[:3])


def test_identities_are_absorbed():
    phi, psi = gss_pair()
    left = identity_of("F", phi.signature.dom)
    right = identity_of("G", phi.signature.cod)
    assert vcompose(left, phi) is phi
    assert vcompose(phi, right) is phi


def test_interface_mismatch():
    phi, psi = gss_pair()
    with pytest.raises(InterfaceMismatch):
        vcompose(psi, phi)


def test_cycle_reported_before_missing_dinaturality():
    phi, psi, chi = associativity_triple()
    bad = vcompose(collapsed(vcompose(phi, psi)), make_atomic(chi.signature, [0]))
    with pytest.raises(ComponentCyclic) as err:
        witness(bad, 1)
    assert "cyclic" in str(err.value)
    lazy = vcompose(gss_pair()[0], make_atomic(gss_pair()[1].signature, [1, 0]))
    with pytest.raises(MissingDinaturality) as err:
        witness(lazy, 1)
    assert err.value.missing == [(2, 2)]


def test_hcompose():
    d = make_atomic(delta_signature(), [1])
    e = make_atomic(eval_signature(), [1, 1])
    h = hcompose(d, e, 1)
    assert h.kind == ATOMIC and h.delta == (1, 1)
    assert (h.signature.sigma, h.signature.tau) == ((1, 1, 1, 2), (2,))
    with pytest.raises(VarIndexOutOfRange):
        hcompose(d, e, 3)
    with pytest.raises(PsiNotDinaturalAtI):
        hcompose(d, make_atomic(eval_signature(), [1, 0]), 2)
    assert hcompose(make_atomic(delta_signature(), [0]), e, 2).delta == (1, 0)


def test_decompose_and_equivalent():
    phi, psi = gss_pair()
    t = vcompose(phi, psi)
    assert decompose(t) == [(phi.signature, (1, 1)), (psi.signature, (1, 1))]
    assert equivalent(t, vcompose(*gss_pair()))
    assert not equivalent(t, collapsed(t))


def transformations(rng, length):
    return [make_atomic(s, [rng.randint(0, 1) for _ in range(s.vars)])
            for s in random_chain(rng, length)]


@pytest.mark.parametrize("seed", range(120))
def test_delta_agrees_with_witness(seed):
    rng = random.Random(seed)
    t = vcompose_all(transformations(rng, rng.randint(1, 4)))
    for x in range(1, t.signature.vars + 1):
        if t.delta[x - 1]:
            trace = witness(t, x)
            assert replay_witness(t, x, trace.sequence)
        else:
            with pytest.raises((ComponentCyclic, MissingDinaturality)):
                witness(t, x)


@pytest.mark.parametrize("seed", range(60))
def test_vertical_composition_associative(seed):
    a, b, c = transformations(random.Random(seed), 3)
    l = vcompose(vcompose(a, b), c)
    r = vcompose(a, vcompose(b, c))
    assert equivalent(l, r)
    assert decompose(l) == decompose(r)
