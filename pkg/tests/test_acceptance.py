"""Acceptance suite: one check per criterion, each at its stated tolerance.

Run under pytest, or directly with ``python3 tests/test_acceptance.py`` to
get one PASS/FAIL line per criterion.
"""

import io
import random
import sys
from itertools import product
from pathlib import Path

import pytest

from dinaturality.catalogue import (
    associativity_triple,
    collapsed,
    delta_signature,
    eval_signature,
    gss,
)
from dinaturality.cli import default_corpus, load, main, render_dot
from dinaturality.dinat import (
    make_atomic,
    replay_witness,
    transition_for,
    vcompose,
    witness,
)
from dinaturality.errors import ComponentCyclic
from dinaturality.finset_oracle import (
    all_maps,
    check_dinaturality,
    church,
    concrete_composite,
    diagonal,
    evaluation,
    hexagon_legs,
    realize_marking,
)
from dinaturality.generators import (
    random_acyclic_net,
    random_chain,
    random_cyclic_net,
    random_signature,
)
from dinaturality.graphcat import (
    GCMorphism,
    collapse,
    compose_gc,
    gc_identity,
    glue,
    iso_equal,
    skeleton,
    standard_graph,
)
from dinaturality.petri import (
    components,
    fire_labelled,
    initial_labelled,
    is_acyclic,
    m0,
    md,
    reachable_bfs,
    replay,
    topo_fire,
)
from dinaturality.signature import (
    CospanType,
    Signature,
    canonical_form,
    compose_types,
    hcomp_signature,
    permutation_equivalent,
    pushout_types,
)

CASES = 500
CORPUS = Path(str(default_corpus()))
GOLDEN = Path(__file__).parent / "golden"


def criterion_1():
    phi = CospanType((1, 2), (1, 1, 2), 2)
    psi = CospanType((1, 2, 2), (1,), 2)
    assert compose_types(phi, psi) == CospanType((1, 1), (1,), 1)


def gss_glued():
    t, _ = gss()
    g = t.graph.cospan
    boundary = set(g.left) | set(g.right)
    return t, g, boundary


def criterion_2_structure():
    """Every clause of the criterion except the total place count."""
    t, g, boundary = gss_glued()
    internal = [p for p in g.net.places if p not in boundary]
    assert (len(g.left), len(g.right), len(internal)) == (2, 1, 3)
    assert len(g.net.transitions) == 4
    assert len(components(g.net)) == 1 and is_acyclic(g.net)
    c = collapse(g)
    assert (len(c.net.places), len(c.net.transitions)) == (3, 1)
    assert c.net.inputs["t1"] == {"p1"} and c.net.outputs["t1"] == {"p2", "p3"}
    # the count the pushout of place sets gives: 5 + 4 places, 3 identified
    assert len(g.net.places) == 6


def criterion_2():
    criterion_2_structure()
    _, g, _ = gss_glued()
    assert len(g.net.places) == 9, (
        f"glued net has {len(g.net.places)} places; the stated 9 counts the "
        "3 shared interface places twice")


def criterion_3():
    t, _ = gss()
    net = t.net
    order = topo_fire(net)
    assert len(order) == 4 and sorted(order) == sorted(net.transitions)
    assert replay(net, order) == md(net)
    assert replay_witness(t, 1, order)
    paper = [transition_for(t, c, x) for c, x in [(1, 1), (2, 1), (2, 2), (1, 2)]]
    assert replay_witness(t, 1, paper)
    assert [(s.constituent_name, s.variable) for s in witness(t, 1).steps] == [
        ("phi", 1), ("psi", 1), ("psi", 2), ("phi", 2)]


def criterion_4():
    phi, psi, chi = associativity_triple()
    left = vcompose(phi, collapsed(vcompose(psi, chi), "chi.psi"))
    right = vcompose(collapsed(vcompose(phi, psi), "psi.phi"), chi)
    assert left.delta == (1,) and right.delta == (0,)
    try:
        witness(right, 1)
        raise AssertionError("collapsed right association should be cyclic")
    except ComponentCyclic:
        pass
    gl = vcompose(vcompose(phi, psi), chi)
    gr = vcompose(phi, vcompose(psi, chi))
    assert gl.delta == gr.delta == (1,)
    assert iso_equal(gl.graph, gr.graph)


def arcs(g):
    return {t: (sorted(g.net.inputs[t]), sorted(g.net.outputs[t])) for t in g.net.transitions}


def criterion_5():
    d, e = delta_signature(), eval_signature()
    want = {
        1: (Signature("h", "+--+", "+", CospanType((1, 1, 1, 2), (2,), 2)),
            {"t1": (["p1"], ["p2", "p3"]), "t2": (["p4"], ["p5"])}),
        2: (Signature("h", "+-+", "++", CospanType((1, 1, 2), (2, 2), 2)),
            {"t1": (["p1"], ["p2"]), "t2": (["p3"], ["p4", "p5"])}),
    }
    for i, (sig, graph) in want.items():
        got = hcomp_signature(d, e, i)
        assert canonical_form(got).type == canonical_form(sig).type
        assert (got.dom, got.cod) == (sig.dom, sig.cod)
        assert arcs(standard_graph(got)) == graph


def criterion_6a(n=CASES):
    rng = random.Random(6001)
    for _ in range(n):
        net = random_acyclic_net(rng, max_transitions=12)
        order = topo_fire(net)
        assert sorted(order) == sorted(net.transitions)
        assert replay(net, order) == md(net)


def criterion_6b(n=CASES):
    rng = random.Random(6002)
    for _ in range(n):
        net = random_cyclic_net(rng, max_transitions=7)
        assert len(components(net)) == 1
        assert reachable_bfs(net, m0(net), md(net)) is None


def morphisms(rng, length):
    return [GCMorphism(standard_graph(s), tuple(rng.randint(0, 1) for _ in range(s.vars)))
            for s in random_chain(rng, length)]


def criterion_6c(n=CASES):
    rng = random.Random(6003)
    for _ in range(n):
        a, b, c = morphisms(rng, 3)
        assert iso_equal(compose_gc(compose_gc(a, b), c), compose_gc(a, compose_gc(b, c)))
        assert iso_equal(compose_gc(gc_identity(a.cospan.dom), a), a)
        assert iso_equal(compose_gc(a, gc_identity(a.cospan.cod)), a)


def criterion_6d(n=CASES):
    rng = random.Random(6004)
    unit = Signature("id", "+", "+", CospanType((1,), (1,), 1))
    for _ in range(n):
        phi, psi, chi = (random_signature(rng, name=k) for k in ("phi", "psi", "chi"))
        i, j = rng.randint(1, psi.vars), rng.randint(1, chi.vars)
        left = hcomp_signature(hcomp_signature(phi, psi, i), chi, j)
        right = hcomp_signature(phi, hcomp_signature(psi, chi, j), j - 1 + i)
        assert canonical_form(left) == canonical_form(right)
        assert canonical_form(hcomp_signature(phi, unit, 1)) == canonical_form(phi)
        k = rng.randint(1, phi.vars)
        assert canonical_form(hcomp_signature(unit, phi, k)) == canonical_form(phi)


def criterion_6e(n=CASES):
    rng = random.Random(6005)
    for _ in range(n):
        a, b, c = morphisms(rng, 3)
        u, v = glue(a.cospan, b.cospan), c.cospan
        got = skeleton(glue(u, v))
        want = compose_types(skeleton(u), skeleton(v))
        s1 = Signature("g", u.dom, v.cod, got)
        s2 = Signature("p", u.dom, v.cod, want)
        assert permutation_equivalent(s1, s2) is not None
        assert pushout_types(skeleton(u), skeleton(v))[0] == got.vars


def criterion_6():
    for part in (criterion_6a, criterion_6b, criterion_6c, criterion_6d, criterion_6e):
        part()


def criterion_7():
    for ct in (diagonal(), evaluation(), church(0), church(1), church(2), church(3)):
        for i in range(1, ct.signature.vars + 1):
            report = check_dinaturality(ct, i, max_size=3)
            assert report, str(report)
            assert make_atomic(ct.signature, [1] * ct.signature.vars).delta[i - 1] == 1
    t, sem = gss()
    assert t.delta == (1,)
    ct = concrete_composite(sem)
    assert check_dinaturality(ct, 1, max_size=2)
    steps = witness(t, 1).sequence
    for a, b in product(range(3), repeat=2):
        for f in all_maps(a, b):
            upper, lower = hexagon_legs(ct, 1, [0], f)
            lm = initial_labelled(t.net, tag=f)
            start = realize_marking(t, sem, lm, f)
            assert start == lower
            for tr in steps:
                lm = fire_labelled(t.net, lm, tr)
                assert realize_marking(t, sem, lm, f) == start
            assert start == upper


def quiet_main(argv):
    out, saved = io.StringIO(), sys.stdout
    sys.stdout = out
    try:
        code = main(argv)
    finally:
        sys.stdout = saved
    return code, out.getvalue()


def criterion_8():
    code, _ = quiet_main(["selftest"])
    assert code == 0
    code, out = quiet_main(["check", str(CORPUS / "sec4_right_collapsed.json")])
    assert code == 1 and "CYCLIC" in out
    for name in ("delta", "eval", "church2", "gss"):
        got = render_dot(load(CORPUS / f"{name}.json").transformation)
        want = (GOLDEN / f"{name}.dot").read_text()
        assert got.splitlines() == want.splitlines(), name


CRITERIA = {
    "1 pushout type of the composite example": criterion_1,
    "2 glued composite net (9 places as stated)": criterion_2,
    "3 witness for the composite": criterion_3,
    "4 discriminant associativity counterexample": criterion_4,
    "5 horizontal composition types and graphs": criterion_5,
    "6 property suite, 500 cases per part": criterion_6,
    "7 finite-set oracle suite": criterion_7,
    "8 command-line golden checks": criterion_8,
}

KNOWN_FAILURES = {
    criterion_2: "the stated 9 places counts the shared interface twice; "
                 "the pushout has 6",
}


def _param(fn):
    marks = ()
    if fn in KNOWN_FAILURES:
        marks = pytest.mark.xfail(reason=KNOWN_FAILURES[fn], strict=True, raises=AssertionError)
    return pytest.param(fn, marks=marks, id=fn.__name__)


@pytest.mark.parametrize("check", [_param(fn) for fn in CRITERIA.values()])
def test_criterion(check):
    check()


def test_criterion_2_without_place_total():
    criterion_2_structure()


def report():
    failed = 0
    for label, fn in CRITERIA.items():
        try:
            fn()
            line = f"PASS  criterion {label}"
        except Exception as exc:
            failed += 1
            line = f"FAIL  criterion {label}: {type(exc).__name__}: {exc}"
        print(line)
    return failed


if __name__ == "__main__":
    sys.exit(1 if report() else 0)
