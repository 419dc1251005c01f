"""Plain digraph helpers (Tarjan SCCs, reachability).

These back the structural analyses on the implementation side of the
package.  The test oracles deliberately use a different engine
(scipy.sparse.csgraph) so that implementation and oracle never share
graph machinery.
"""
from __future__ import annotations

from typing import Iterable, Sequence


def tarjan_sccs(n: int, succ: Sequence[Iterable[int]]) -> tuple[int, list[int]]:
    """Strongly connected components of a digraph on nodes 0..n-1.

    Returns (count, comp) where comp[v] is the component id of v.  Ids are
    topologically ordered sources-first: every edge u -> v with
    comp[u] != comp[v] has comp[u] < comp[v].
    """
    UNSEEN = -1
    index = [UNSEEN] * n
    lowlink = [0] * n
    on_stack = [False] * n
    comp = [UNSEEN] * n
    stack: list[int] = []
    emitted = 0
    counter = 0

    for root in range(n):
        if index[root] != UNSEEN:
            continue
        # iterative DFS; each frame is (node, iterator over successors)
        work = [(root, iter(succ[root]))]
        index[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == UNSEEN:
                    index[w] = lowlink[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if on_stack[w] and index[w] < lowlink[v]:
                    lowlink[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                if lowlink[v] < lowlink[pv]:
                    lowlink[pv] = lowlink[v]
            if lowlink[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = emitted
                    if w == v:
                        break
                emitted += 1

    # Tarjan emits components in reverse topological order; flip so that
    # sources come first.
    count = emitted
    for v in range(n):
        comp[v] = count - 1 - comp[v]
    return count, comp


def reachable_from(n: int, succ: Sequence[Iterable[int]], starts: Iterable[int]) -> list[bool]:
    """Forward reachability (including the start nodes themselves)."""
    seen = [False] * n
    todo = [s for s in starts if 0 <= s < n]
    for s in todo:
        seen[s] = True
    while todo:
        v = todo.pop()
        for w in succ[v]:
            if not seen[w]:
                seen[w] = True
                todo.append(w)
    return seen


def reaches(n: int, pred: Sequence[Iterable[int]], targets: Iterable[int]) -> list[bool]:
    """Backward reachability: which nodes can reach one of the targets."""
    return reachable_from(n, pred, targets)


def has_cycle(nodes: Iterable[int], succ: Sequence[Iterable[int]]) -> bool:
    """Whether the subgraph induced by `nodes` (with succ already restricted
    to it) contains a cycle, self-loops included."""
    nodes = list(nodes)
    remap = {v: i for i, v in enumerate(nodes)}
    adj = [[remap[w] for w in succ[v] if w in remap] for v in nodes]
    count, comp = tarjan_sccs(len(nodes), adj)
    sizes = [0] * count
    for c in comp:
        sizes[c] += 1
    for i, v in enumerate(nodes):
        if sizes[comp[i]] > 1:
            return True
        if i in adj[i]:  # self-loop in the remapped graph
            return True
    return False
