"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

from dinaturality.signature import CospanType, Signature

signs = st.sampled_from("+-")


def variances(max_size=3):
    return st.lists(signs, max_size=max_size).map(tuple)


@st.composite
def types(draw, dom_arity=None, cod_arity=None, max_vars=4, max_arity=4):
    if dom_arity is None:
        dom_arity = draw(st.integers(0, max_arity))
    if cod_arity is None:
        cod_arity = draw(st.integers(0, max_arity))
    n = draw(st.integers(1, max_vars))
    idx = st.integers(1, n)
    return CospanType(tuple(draw(st.lists(idx, min_size=dom_arity, max_size=dom_arity))),
                      tuple(draw(st.lists(idx, min_size=cod_arity, max_size=cod_arity))), n)


@st.composite
def signatures(draw, dom=None, cod=None, max_vars=3, max_arity=3, name="s"):
    if dom is None:
        dom = draw(variances(max_arity))
    if cod is None:
        cod = draw(variances(max_arity))
    t = draw(types(len(dom), len(cod), max_vars))
    return Signature(name, dom, cod, t)


@st.composite
def chains(draw, length, max_vars=3, max_arity=3):
    """``length`` composable signatures."""
    bounds = [draw(variances(max_arity)) for _ in range(length + 1)]
    return [draw(signatures(bounds[k], bounds[k + 1], max_vars, max_arity, f"s{k + 1}"))
            for k in range(length)]
