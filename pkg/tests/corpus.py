"""Random systems and independent reference computations shared by the tests."""

import itertools
import math
import random
from fractions import Fraction

from tracehom.action import PartialActionSystem, validate
from tracehom.cenet import CENet, NetEvent, compile_net
from tracehom.oracle import find_cycle
from tracehom.trace import EventAlphabet, IndependenceRelation


def _repair(table, rel, n_states, rng, rounds=60):
    """Patch a random table toward commutation; None if it does not settle."""
    table = dict(table)
    for _ in range(rounds):
        bad = None
        for a, b in sorted(rel.pairs):
            for x in range(n_states):
                y, z = table.get((x, a)), table.get((x, b))
                ab = None if y is None else table.get((y, b))
                ba = None if z is None else table.get((z, a))
                if ab != ba:
                    bad = (x, a, b, y, z, ab, ba)
                    break
            if bad:
                break
        if bad is None:
            return table
        x, a, b, y, z, ab, ba = bad
        if y is not None and z is not None and ab is None and rng.random() < 0.7:
            table[(y, b)] = ba
        elif y is not None and z is not None and ba is None and rng.random() < 0.7:
            table[(z, a)] = ab
        else:
            # drop a second step so both sides become undefined or agree
            if ab is not None:
                del table[(y, b)]
            if ba is not None and (z, a) in table:
                del table[(z, a)]
    return None


def random_action(rng, max_states=8, max_events=5, acyclic=False, p_edge=0.5, p_indep=0.5):
    """A random validated partial action, or None when the draw is discarded."""
    n = rng.randint(1, max_states)
    k = rng.randint(1, max_events)
    rel = IndependenceRelation.from_pairs(
        (a, b) for a in range(k) for b in range(a + 1, k) if rng.random() < p_indep)
    table = {}
    for x in range(n):
        for e in range(k):
            if rng.random() < p_edge:
                if acyclic:
                    if x + 1 < n:
                        table[(x, e)] = rng.randint(x + 1, n - 1)
                else:
                    table[(x, e)] = rng.randrange(n)
    table = _repair(table, rel, n, rng)
    if table is None:
        return None
    sys = PartialActionSystem(EventAlphabet(tuple(f"e{i}" for i in range(k))), rel,
                              tuple(f"s{i}" for i in range(n)), table)
    if validate(sys):
        return None
    if acyclic and find_cycle(sys) is not None:
        return None
    return sys


def random_net_system(rng, max_places=3, max_events=5):
    places = tuple(f"p{i}" for i in range(rng.randint(1, max_places)))
    events = []
    for i in range(rng.randint(1, max_events)):
        pre = frozenset(p for p in range(len(places)) if rng.random() < 0.35)
        post = frozenset(p for p in range(len(places)) if p not in pre and rng.random() < 0.35)
        events.append(NetEvent(f"t{i}", pre, post))
    initial = frozenset(p for p in range(len(places)) if rng.random() < 0.5)
    return compile_net(CENet(places, tuple(events), initial))


def corpus(count, seed, acyclic=False, max_states=8, max_events=5, with_nets=True):
    """``count`` validated systems; every fourth one comes from a random CE net when allowed."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        if with_nets and not acyclic and len(out) % 4 == 3:
            sys = random_net_system(rng, max_events=max_events)
            if sys.n_states > max_states:
                continue
        else:
            sys = random_action(rng, max_states, max_events, acyclic)
        if sys is not None:
            out.append(sys)
    return out


def det(m):
    """Leibniz determinant with exact integers."""
    n = len(m)
    total = 0
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inv % 2 else 1
        for i, p in enumerate(perm):
            term *= m[i][p]
            if not term:
                break
        total += term
    return total


def minor_gcd_divisors(m):
    """Elementary divisors from gcds of k x k minors: d_k = g_k / g_{k-1}."""
    rows, cols = len(m), len(m[0]) if m else 0
    gs = [1]
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in itertools.combinations(range(rows), k):
            for cs in itertools.combinations(range(cols), k):
                g = math.gcd(g, det([[m[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        gs.append(g)
    return tuple(gs[k] // gs[k - 1] for k in range(1, len(gs)))


def rational_rank(m):
    """Rank over Q by Gaussian elimination with fractions."""
    a = [[Fraction(v) for v in row] for row in m]
    r = 0
    cols = len(a[0]) if a else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [u - f * v for u, v in zip(a[i], a[r])]
        r += 1
    return r
