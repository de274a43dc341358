"""Seeded random signatures and nets for property checks.

Every function takes a :class:`random.Random` so runs are reproducible.
"""

from .petri import PetriNet
from .signature import MINUS, PLUS, CospanType, Signature


def random_variance(rng, k):
    return tuple(rng.choice((PLUS, MINUS)) for _ in range(k))


def random_type(rng, dom_arity, cod_arity, max_vars=3):
    n = rng.randint(1, max_vars)
    return CospanType(tuple(rng.randint(1, n) for _ in range(dom_arity)),
                      tuple(rng.randint(1, n) for _ in range(cod_arity)), n)


def random_signature(rng, dom=None, cod=None, max_arity=3, max_vars=3, name="s"):
    if dom is None:
        dom = random_variance(rng, rng.randint(0, max_arity))
    if cod is None:
        cod = random_variance(rng, rng.randint(0, max_arity))
    return Signature(name, dom, cod, random_type(rng, len(dom), len(cod), max_vars))


def random_chain(rng, length, max_arity=3, max_vars=3):
    """``length`` composable signatures ``s1: b0 -> b1, s2: b1 -> b2, ...``."""
    bounds = [random_variance(rng, rng.randint(0, max_arity)) for _ in range(length + 1)]
    return [random_signature(rng, bounds[k], bounds[k + 1], max_arity, max_vars,
                             name=f"s{k + 1}")
            for k in range(length)]


def _net(trans, arcs, extra_places=()):
    places = [f"p{k}" for k in range(1, len(arcs) + len(extra_places) + 1)]
    ins = {t: set() for t in trans}
    outs = {t: set() for t in trans}
    for p, (pre, post) in zip(places, list(arcs) + list(extra_places)):
        if pre is not None:
            outs[pre].add(p)
        if post is not None:
            ins[post].add(p)
    return PetriNet(places, trans, ins, outs)


def random_acyclic_net(rng, max_transitions=12, max_places=None):
    """A random acyclic FBCF net.

    A hidden random rank orders the transitions, and every place runs from
    a lower to a higher rank, so the listing order is not topological.
    """
    n = rng.randint(0, max_transitions)
    trans = [f"t{k}" for k in range(1, n + 1)]
    rank = list(range(n))
    rng.shuffle(rank)
    by_rank = sorted(trans, key=lambda t: rank[trans.index(t)])
    m = rng.randint(0, max_places if max_places is not None else 2 * n + 2)
    arcs = []
    for _ in range(m):
        pre = post = None
        if n and rng.random() < 0.75:
            pre = rng.randrange(n)
        if n and rng.random() < 0.75:
            post = rng.randrange(n)
        if pre is not None and post is not None:
            if pre == post:
                post = None
            elif pre > post:
                pre, post = post, pre
        arcs.append((None if pre is None else by_rank[pre],
                     None if post is None else by_rank[post]))
    return _net(trans, arcs)


def random_cyclic_net(rng, max_transitions=10):
    """A weakly connected FBCF net with a directed cycle and at least one
    proper source or proper sink."""
    n = rng.randint(2, max(2, max_transitions))
    trans = [f"t{k}" for k in range(1, n + 1)]
    order = trans[:]
    rng.shuffle(order)
    length = rng.randint(2, n)
    cycle = order[:length]
    arcs = [(cycle[k], cycle[(k + 1) % length]) for k in range(length)]
    # attach the remaining transitions to the growing connected part
    for k in range(length, n):
        old = rng.choice(order[:k])
        arcs.append((old, order[k]) if rng.random() < 0.5 else (order[k], old))
    for _ in range(rng.randint(0, n)):
        a, b = rng.sample(trans, 2)
        arcs.append((a, b))
    ends = []
    for _ in range(rng.randint(1, 3)):
        t = rng.choice(trans)
        ends.append((None, t) if rng.random() < 0.5 else (t, None))
    arcs += ends
    # an input-free transition could fire forever and flood the BFS bound
    fed = {post for _, post in arcs}
    arcs += [(None, t) for t in trans if t not in fed]
    rng.shuffle(arcs)
    return _net(trans, arcs)
