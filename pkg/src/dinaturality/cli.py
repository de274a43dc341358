"""Command-line front end and the JSON document format.

A transformation document is a JSON object::

    {"name": "eval", "kind": "atomic",
     "dom": ["+", "-", "+"], "cod": ["+"],
     "vars": 2, "sigma": [1, 1, 2], "tau": [2], "delta": [1, 1],
     "semantics": {"builtin": "eval"}}

Indices are 1-based.  Composite documents list their atomic constituents
under ``"provenance"``; on load the composite is rebuilt from them, and any
``delta``/``graph`` stored alongside must agree with the rebuilt one.
Identity documents carry ``"functor"`` instead of a type.

Exit codes: 0 success, 1 negative verdict, 2 input error.
"""

import argparse
import json
import re
import sys
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path

from .dinat import (
    ATOMIC,
    COMPOSITE,
    IDENTITY,
    component_net,
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
from .errors import ComponentCyclic, DinatError, MissingDinaturality
from .finset_oracle import check_prediction, concrete_composite, from_spec
from .graphcat import GraphCospan, collapse, iso_equal
from .petri import PetriNet, find_cycle
from .signature import CospanType, Signature, permutation_equivalent, variance

OK, NEGATIVE, INPUT_ERROR = 0, 1, 2


class DocumentError(DinatError):
    """A document does not describe a valid transformation."""


@dataclass(frozen=True, eq=False)
class Loaded:
    """A transformation with the semantics of each constituent (``None``
    where a constituent has none)."""

    transformation: object
    semantics: tuple

    @property
    def concrete(self):
        if not self.semantics or any(s is None for s in self.semantics):
            return None
        return concrete_composite(self.semantics)


# documents


def _signature_from(doc):
    try:
        t = CospanType(tuple(doc["sigma"]), tuple(doc["tau"]), int(doc["vars"]))
        return Signature(doc.get("name", "anon"), variance(doc["dom"]), variance(doc["cod"]),
                         t, dom_functor=doc.get("dom_functor"),
                         cod_functor=doc.get("cod_functor"))
    except KeyError as exc:
        raise DocumentError(f"missing field {exc.args[0]!r}") from None


def graph_to_json(g):
    n = g.net
    return {"places": list(n.places), "transitions": list(n.transitions),
            "inputs": {t: sorted(n.inputs[t], key=n.places.index) for t in n.transitions},
            "outputs": {t: sorted(n.outputs[t], key=n.places.index) for t in n.transitions},
            "left": list(g.left), "right": list(g.right), "anchors": list(g.anchors)}


def graph_from_json(d, dom, cod):
    net = PetriNet(d["places"], d["transitions"], d.get("inputs", {}), d.get("outputs", {}))
    return GraphCospan(dom, cod, net, d["left"], d["right"], d.get("anchors"))


def to_document(loaded):
    """Serialise a :class:`Loaded` (or a bare transformation)."""
    if not isinstance(loaded, Loaded):
        loaded = Loaded(loaded, (None,) * len(loaded.constituents))
    t = loaded.transformation
    s = t.signature
    doc = {"name": s.name, "kind": t.kind, "dom": list(s.dom), "cod": list(s.cod)}
    if t.kind == IDENTITY:
        doc["functor"] = s.dom_functor
        return doc
    for key in ("dom_functor", "cod_functor"):
        if getattr(s, key) is not None:
            doc[key] = getattr(s, key)
    doc.update({"vars": s.vars, "sigma": list(s.sigma), "tau": list(s.tau),
                "delta": list(t.delta), "graph": graph_to_json(t.graph.cospan)})
    if t.kind == ATOMIC:
        if loaded.semantics and loaded.semantics[0] is not None:
            doc["semantics"] = loaded.semantics[0].spec
    else:
        doc["provenance"] = [to_document(Loaded(c, (sem,)))
                             for c, sem in zip(t.constituents, loaded.semantics)]
    return doc


def _semantics_for(doc, s):
    spec = doc.get("semantics")
    if spec is None:
        return None
    ct = from_spec(spec, s)
    if (ct.signature.dom, ct.signature.cod, ct.signature.type) != (s.dom, s.cod, s.type):
        raise DocumentError(f"semantics of {s.name} has a different signature")
    return replace(ct, signature=s)


def from_document(doc):
    """Rebuild a :class:`Loaded` from a document, re-checking every invariant."""
    try:
        return _from_document(doc)
    except DocumentError:
        raise
    except (DinatError, KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"{doc.get('name', '?')}: {exc}") from None


def _from_document(doc):
    kind = doc.get("kind", ATOMIC)
    if kind == IDENTITY:
        dom = variance(doc["dom"])
        if variance(doc.get("cod", dom)) != dom:
            raise DocumentError("an identity needs equal domain and codomain")
        return Loaded(identity_of(doc.get("functor", "F"), dom), ())
    if kind == ATOMIC:
        s = _signature_from(doc)
        if "delta" not in doc:
            raise DocumentError(f"{s.name}: atomic documents need a delta")
        t = make_atomic(s, doc["delta"])
        if "graph" in doc:
            g = graph_from_json(doc["graph"], s.dom, s.cod)
            if not iso_equal(g, t.graph.cospan):
                raise DocumentError(f"{s.name}: graph is not the standard graph")
        return Loaded(t, (_semantics_for(doc, s),))
    if kind == COMPOSITE:
        parts = [from_document(d) for d in doc.get("provenance", [])]
        if not parts:
            raise DocumentError("a composite needs a non-empty provenance")
        t = vcompose_all(p.transformation for p in parts)
        if "name" in doc:
            t = replace(t, signature=replace(t.signature, name=doc["name"]))
        if "sigma" in doc:
            pi = permutation_equivalent(_signature_from(doc), t.signature)
            if pi is None:
                raise DocumentError(f"{t.name}: stored type disagrees with the provenance")
            if "delta" in doc and any(doc["delta"][x] != t.delta[pi[x] - 1]
                                      for x in range(len(pi))):
                raise DocumentError(
                    f"{t.name}: stored delta {doc['delta']} disagrees with the "
                    f"re-derived {list(t.delta)}")
        if "graph" in doc:
            g = graph_from_json(doc["graph"], t.signature.dom, t.signature.cod)
            if not iso_equal(g, t.graph.cospan):
                raise DocumentError(f"{t.name}: stored graph disagrees with the provenance")
        return Loaded(t, tuple(s for p in parts for s in p.semantics))
    raise DocumentError(f"unknown kind {kind!r}")


def load(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise DocumentError(f"{path}: {exc}") from None
    return from_document(doc)


def compose_loaded(a, b):
    return Loaded(vcompose(a.transformation, b.transformation), a.semantics + b.semantics)


# reports


def check_report(t, components=None):
    """One entry per requested component: acyclicity, Δ and what it needs."""
    out = []
    for x in components or range(1, t.signature.vars + 1):
        net = component_net(t, x)
        cycle = find_cycle(net)
        needs = [t.transition_tags[tr] for tr in net.transitions]
        missing = [(c, v) for c, v in needs if not t.constituents[c - 1].delta[v - 1]]
        out.append({
            "component": x, "acyclic": cycle is None, "delta": t.delta[x - 1],
            "uses": [[t.constituents[c - 1].name, v] for c, v in needs],
            "missing": [[t.constituents[c - 1].name, v] for c, v in missing],
            "cycle": [] if cycle is None else cycle,
        })
    return out


def _check_line(r):
    if not r["acyclic"]:
        return (f"component {r['component']}: CYCLIC, no guarantee "
                f"(cycle {' -> '.join(r['cycle'])})")
    if r["delta"]:
        return f"component {r['component']}: acyclic, guaranteed dinatural"
    names = ", ".join(f"{n} in variable {v}" for n, v in r["missing"])
    return f"component {r['component']}: acyclic, no guarantee (needs {names})"


def render_dot(t):
    """DOT text: white squares for covariant boundary places, grey for
    contravariant ones, circles for internal places, black boxes for
    transitions."""
    g = t.graph.cospan
    side = {}
    for j, (p, s) in enumerate(zip(g.left, g.dom), start=1):
        side.setdefault(p, (s, f"dom {j}"))
    for j, (p, s) in enumerate(zip(g.right, g.cod), start=1):
        side.setdefault(p, (s, f"cod {j}"))
    lines = [f'digraph "{t.name}" {{', "  rankdir=TB;",
             '  node [fontname="Helvetica", fontsize=10];']
    for p in g.net.places:
        if p in side:
            s, where = side[p]
            fill = "white" if s == "+" else "grey"
            lines.append(f'  {p} [label="{p}\\n{where}", shape=square, '
                         f'style=filled, fillcolor={fill}];')
        else:
            lines.append(f'  {p} [label="{p}", shape=circle];')
    for tr in g.net.transitions:
        tag = t.transition_tags.get(tr)
        label = tr if tag is None else f"{t.constituents[tag[0] - 1].name}:{tag[1]}"
        lines.append(f'  {tr} [label="{label}", shape=box, style=filled, '
                     f'fillcolor=black, fontcolor=white];')
    order = g.net.places.index
    for tr in g.net.transitions:
        lines += [f"  {p} -> {tr};" for p in sorted(g.net.inputs[tr], key=order)]
        lines += [f"  {tr} -> {p};" for p in sorted(g.net.outputs[tr], key=order)]
    lines.append("}")
    return "\n".join(lines) + "\n"


# selftest corpus


def default_corpus():
    return resources.files("dinaturality") / "corpus"


def _expect(name, got, want):
    if got != want:
        raise AssertionError(f"{name}: expected {want!r}, got {got!r}")


def _check_expectations(t, exp, ctx):
    s = t.signature
    simple = {"dom": "".join(s.dom), "cod": "".join(s.cod), "sigma": list(s.sigma),
              "tau": list(s.tau), "vars": s.vars, "delta": list(t.delta),
              "places": len(t.net.places), "transitions": len(t.net.transitions),
              "components": t.graph.cospan.n_components}
    for key, want in exp.items():
        if key in simple:
            _expect(key, simple[key], want)
        elif key == "acyclic":
            _expect(key, find_cycle(t.net) is None, want)
        elif key == "internal_places":
            boundary = set(t.graph.cospan.left) | set(t.graph.cospan.right)
            _expect(key, len([p for p in t.net.places if p not in boundary]), want)
        elif key == "arcs":
            got = {tr: {"in": sorted(t.net.inputs[tr]), "out": sorted(t.net.outputs[tr])}
                   for tr in t.net.transitions}
            _expect(key, got, {k: {"in": sorted(v["in"]), "out": sorted(v["out"])}
                               for k, v in want.items()})
        elif key == "collapse":
            c = collapse(t.graph.cospan)
            _expect(key, {"places": len(c.net.places),
                          "transitions": len(c.net.transitions)}, want)
        elif key == "witness_steps":
            _expect(key, len(witness(t, 1).steps), want)
        elif key == "witness_order":
            _expect(key, [[s.constituent, s.variable] for s in witness(t, 1).steps], want)
        elif key == "replays":
            seq = [transition_for(t, c, v) for c, v in want]
            _expect(key, replay_witness(t, 1, seq), True)
        elif key == "cyclic_component":
            try:
                witness(t, want)
            except ComponentCyclic:
                pass
            else:
                raise AssertionError(f"component {want} unexpectedly has a witness")
        elif key == "oracle":
            ct = ctx["loaded"].concrete
            if ct is None:
                raise AssertionError("no semantics attached")
            report = check_prediction(t, ct, exp.get("max_size", 3))
            _expect(key, report.passed, want)
        elif key == "equivalent_to":
            other = load(ctx["dir"] / want).transformation
            _expect(key, equivalent(t, other), True)
        elif key != "max_size":
            raise AssertionError(f"unknown expectation {key!r}")


def run_case(case, corpus):
    """Run one corpus case; raise on failure."""
    op = case.get("op", "load")
    inputs = [load(corpus / f) for f in case.get("inputs", [])]
    ctx = {"dir": corpus}
    if op == "load":
        (loaded,) = inputs
    elif op == "compose":
        loaded = inputs[0]
        for nxt in inputs[1:]:
            loaded = compose_loaded(loaded, nxt)
    elif op == "compose_right":
        loaded = inputs[-1]
        for prev in reversed(inputs[:-1]):
            loaded = compose_loaded(prev, loaded)
    elif op == "hcomp":
        a, b = inputs
        loaded = Loaded(hcompose(a.transformation, b.transformation, case["var"]), ())
    else:
        raise AssertionError(f"unknown op {op!r}")
    ctx["loaded"] = loaded
    _check_expectations(loaded.transformation, case.get("expect", {}), ctx)


def selftest(corpus=None, out=None):
    out = out or sys.stdout
    corpus = Path(str(corpus or default_corpus()))
    with open(corpus / "cases.json") as fh:
        cases = json.load(fh)
    failures = 0
    width = max((len(c["name"]) for c in cases), default=4)
    for case in cases:
        try:
            run_case(case, corpus)
            status, detail = "pass", case.get("cite", "")
        except Exception as exc:  # a corpus failure is a verdict, not a crash
            failures += 1
            status, detail = "FAIL", f"{type(exc).__name__}: {exc}"
        print(f"{case['name']:<{width}}  {status}  {detail}", file=out)
    print(f"{len(cases) - failures}/{len(cases)} cases passed", file=out)
    return OK if failures == 0 else NEGATIVE


# commands


def dumps(doc):
    """Indented JSON with arrays of scalars kept on one line."""
    text = json.dumps(doc, indent=2, ensure_ascii=False)
    return re.sub(r"\[\s*([^\[\]{}]*?)\s*\]",
                  lambda m: "[" + re.sub(r",\s+", ", ", m.group(1)) + "]", text) + "\n"


def _write(doc, path):
    text = dumps(doc)
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_compose(args):
    _write(to_document(compose_loaded(load(args.first), load(args.second))), args.out)
    return OK


def cmd_hcomp(args):
    a, b = load(args.first), load(args.second)
    _write(to_document(hcompose(a.transformation, b.transformation, args.var)), args.out)
    return OK


def cmd_check(args):
    t = load(args.doc).transformation
    comps = [args.component] if args.component else None
    report = check_report(t, comps)
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        for r in report:
            print(_check_line(r))
    return OK if all(r["delta"] for r in report) else NEGATIVE


def cmd_witness(args):
    t = load(args.doc).transformation
    try:
        trace = witness(t, args.component)
    except ComponentCyclic as exc:
        print(f"no witness: {exc}")
        return NEGATIVE
    except MissingDinaturality as exc:
        print(f"no witness: {exc}")
        return NEGATIVE
    if args.format == "json":
        print(json.dumps({"component": trace.component,
                          "steps": [{"constituent": s.constituent_name,
                                     "index": s.constituent, "variable": s.variable,
                                     "transition": s.transition} for s in trace.steps]},
                         indent=2))
    else:
        print(trace)
    return OK


def cmd_render(args):
    dot = render_dot(load(args.doc).transformation)
    if args.output:
        Path(args.output).write_text(dot)
    else:
        sys.stdout.write(dot)
    return OK


def cmd_oracle(args):
    loaded = load(args.doc)
    ct = loaded.concrete
    if ct is None:
        print("no semantics attached", file=sys.stderr)
        return INPUT_ERROR
    report = check_prediction(loaded.transformation, ct, args.max_size)
    print(report)
    return OK if report.passed else NEGATIVE


def cmd_selftest(args):
    corpus = Path(args.corpus) if args.corpus else None
    if args.list:
        root = Path(str(corpus or default_corpus()))
        for case in json.loads((root / "cases.json").read_text()):
            print(case["name"])
        return OK
    return selftest(corpus)


def build_parser():
    p = argparse.ArgumentParser(prog="dinat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compose", help="vertical composite of two documents")
    c.add_argument("first")
    c.add_argument("second")
    c.add_argument("--out")
    c.set_defaults(func=cmd_compose)

    c = sub.add_parser("hcomp", help="substitute FIRST into variable --var of SECOND")
    c.add_argument("first")
    c.add_argument("second")
    c.add_argument("--var", type=int, required=True)
    c.add_argument("--out")
    c.set_defaults(func=cmd_hcomp)

    c = sub.add_parser("check", help="per-component acyclicity and guarantees")
    c.add_argument("doc")
    c.add_argument("--component", type=int)
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("witness", help="dinaturality proof as a firing sequence")
    c.add_argument("doc")
    c.add_argument("--component", type=int, default=1)
    c.add_argument("--format", choices=("text", "json"), default="text")
    c.set_defaults(func=cmd_witness)

    c = sub.add_parser("render", help="Graphviz DOT of the graph")
    c.add_argument("doc")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_render)

    c = sub.add_parser("oracle", help="brute-force the claimed dinaturality")
    c.add_argument("doc")
    c.add_argument("--max-size", type=int, default=3)
    c.set_defaults(func=cmd_oracle)

    c = sub.add_parser("selftest", help="run the corpus of worked examples")
    c.add_argument("--list", action="store_true")
    c.add_argument("--corpus")
    c.set_defaults(func=cmd_selftest)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DinatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
