"""Language-preserving cleanup of explicit automata."""
from __future__ import annotations

from .automata import Sgra, Transition
from .graphs import reachable_from, reaches, tarjan_sccs


def _qualifying_states(a: Sgra) -> list[bool]:
    """States inside an SCC of the color-0-free subgraph that has internal
    transitions covering every Inf color.  Accepting runs settle in exactly
    these components."""
    n = a.num_states
    adj: list[list[int]] = [[] for _ in range(n)]
    zero_free = [t for t in a.transitions if 0 not in t.colors]
    for t in zero_free:
        adj[t.src].append(t.dst)
    count, comp = tarjan_sccs(n, adj)
    need = frozenset(range(1, a.num_colors))
    covered: list[set[int]] = [set() for _ in range(count)]
    has_edge = [False] * count
    for t in zero_free:
        if comp[t.src] == comp[t.dst]:
            has_edge[comp[t.src]] = True
            covered[comp[t.src]].update(t.colors)
    good = [
        has_edge[c] and need <= covered[c] for c in range(count)
    ]
    return [good[comp[q]] for q in range(n)]


def trim(a: Sgra) -> Sgra:
    """Drop states that no accepting run visits.

    Kept states are reachable from the initial states and can reach (via
    arbitrary transitions) a component in which an accepting run can settle.
    Surviving states are renumbered densely in their original order.
    Idempotent; the language is unchanged.
    """
    n = a.num_states
    fwd: list[list[int]] = [[] for _ in range(n)]
    bwd: list[list[int]] = [[] for _ in range(n)]
    for t in a.transitions:
        fwd[t.src].append(t.dst)
        bwd[t.dst].append(t.src)
    reachable = reachable_from(n, fwd, a.initial)
    qualifying = _qualifying_states(a)
    useful = reaches(n, bwd, [q for q in range(n) if qualifying[q]])
    keep = [q for q in range(n) if reachable[q] and useful[q]]
    if len(keep) == n:
        return a
    remap = {q: i for i, q in enumerate(keep)}
    transitions = [
        Transition(remap[t.src], t.letter, remap[t.dst], t.colors)
        for t in a.transitions
        if t.src in remap and t.dst in remap
    ]
    initial = [remap[q] for q in a.initial if q in remap]
    return Sgra(len(keep), a.alphabet, initial, transitions, a.num_colors, a.fin_used)
