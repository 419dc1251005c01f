"""Core automaton model.

Everything in this package is phrased over one transition-based acceptance
shape: a simple generalized Rabin automaton (Sgra).  Colors live on
transitions; the acceptance condition is always

    Fin(0) & Inf(1) & ... & Inf(k-1)

i.e. an infinite run is accepting iff the union of colors occurring on its
infinitely-repeated transitions is exactly {1, ..., k-1}.  Color 0 is
reserved for the Fin part even when unused.  Ordinary Buchi automata are the
special case k = 2 with fin_used false; generalized Buchi is fin_used false
with k > 2.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import AbstractSet, Iterable, Mapping

from .graphs import tarjan_sccs


@dataclass(frozen=True)
class Alphabet:
    """Finite ordered set of letters.

    Letters are identified by their index into `labels`.  When the alphabet
    comes from a HOA file, `ap_names` holds the atomic propositions and
    letter i is the valuation whose bit j is (i >> j) & 1; labels are then
    the corresponding minterm strings.
    """

    labels: tuple[str, ...]
    ap_names: tuple[str, ...] | None = None

    def __post_init__(self):
        if not self.labels:
            raise ValueError("alphabet must contain at least one letter")
        if self.ap_names is not None and len(self.labels) != 1 << len(self.ap_names):
            raise ValueError("AP-based alphabet must have 2^|AP| letters")

    def __len__(self) -> int:
        return len(self.labels)


def ap_alphabet(ap_names: Iterable[str]) -> Alphabet:
    """Alphabet of all valuations over the given atomic propositions."""
    names = tuple(ap_names)
    labels = []
    for letter in range(1 << len(names)):
        if not names:
            labels.append("t")
            continue
        parts = []
        for j, name in enumerate(names):
            parts.append(name if (letter >> j) & 1 else "!" + name)
        labels.append("&".join(parts))
    return Alphabet(tuple(labels), names)


def named_alphabet(labels: Iterable[str]) -> Alphabet:
    return Alphabet(tuple(labels), None)


@dataclass(frozen=True)
class Transition:
    src: int
    letter: int
    dst: int
    colors: frozenset[int] = frozenset()

    def __post_init__(self):
        if not isinstance(self.colors, frozenset):
            object.__setattr__(self, "colors", frozenset(self.colors))

    @property
    def sort_key(self):
        # frozensets have no total order; sort on the sorted color tuple
        return (self.src, self.letter, self.dst, tuple(sorted(self.colors)))


class Sgra:
    """Immutable transition-based automaton with the fixed Fin/Inf shape.

    num_colors (k) counts the colors 0..k-1; fin_used says whether color 0
    participates in the acceptance condition.  When fin_used is false no
    transition may carry color 0.
    """

    __slots__ = (
        "num_states",
        "alphabet",
        "initial",
        "transitions",
        "num_colors",
        "fin_used",
        "_out",
        "_dst",
        "_acc_dst",
        "__weakref__",
    )

    def __init__(
        self,
        num_states: int,
        alphabet: Alphabet,
        initial: Iterable[int],
        transitions: Iterable[Transition],
        num_colors: int = 2,
        fin_used: bool = False,
    ):
        if num_states < 0:
            raise ValueError("num_states must be >= 0")
        if num_colors < 1:
            raise ValueError("num_colors must be >= 1")
        self.num_states = num_states
        self.alphabet = alphabet
        self.initial = frozenset(initial)
        self.num_colors = num_colors
        self.fin_used = bool(fin_used)

        n_letters = len(alphabet)
        for q in self.initial:
            if not 0 <= q < num_states:
                raise ValueError(f"initial state {q} out of range")
        uniq = sorted(set(transitions), key=lambda t: t.sort_key)
        for t in uniq:
            if not (0 <= t.src < num_states and 0 <= t.dst < num_states):
                raise ValueError(f"transition endpoint out of range: {t}")
            if not 0 <= t.letter < n_letters:
                raise ValueError(f"letter {t.letter} out of range")
            for c in t.colors:
                if not 0 <= c < num_colors:
                    raise ValueError(f"color {c} out of range (k={num_colors})")
            if 0 in t.colors and not self.fin_used:
                raise ValueError("color 0 present but fin_used is false")
        self.transitions = tuple(uniq)

        out: list[list[Transition]] = [[] for _ in range(num_states)]
        for t in self.transitions:
            out[t.src].append(t)
        self._out = tuple(tuple(ts) for ts in out)
        self._dst: dict[tuple[int, int], frozenset[int]] = {}
        self._acc_dst: dict[tuple[int, int], frozenset[int]] = {}

    # -- lookups ---------------------------------------------------------

    def out(self, state: int) -> tuple[Transition, ...]:
        return self._out[state]

    def dests(self, state: int, letter: int) -> frozenset[int]:
        key = (state, letter)
        hit = self._dst.get(key)
        if hit is None:
            hit = frozenset(t.dst for t in self._out[state] if t.letter == letter)
            self._dst[key] = hit
        return hit

    def acc_dests(self, state: int, letter: int) -> frozenset[int]:
        """Targets of color-1 transitions; only meaningful for BAs."""
        key = (state, letter)
        hit = self._acc_dst.get(key)
        if hit is None:
            hit = frozenset(
                t.dst for t in self._out[state] if t.letter == letter and 1 in t.colors
            )
            self._acc_dst[key] = hit
        return hit

    def succ_set(self, states: Iterable[int], letter: int) -> frozenset[int]:
        acc: set[int] = set()
        for q in states:
            acc.update(self.dests(q, letter))
        return frozenset(acc)

    def is_ba(self) -> bool:
        return self.num_colors == 2 and not self.fin_used

    # -- identity --------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Sgra):
            return NotImplemented
        return (
            self.num_states == other.num_states
            and self.alphabet == other.alphabet
            and self.initial == other.initial
            and self.transitions == other.transitions
            and self.num_colors == other.num_colors
            and self.fin_used == other.fin_used
        )

    def __hash__(self):
        return hash((self.num_states, self.alphabet, self.initial, self.transitions))

    def __repr__(self):
        return (
            f"Sgra(states={self.num_states}, letters={len(self.alphabet)}, "
            f"transitions={len(self.transitions)}, k={self.num_colors}, "
            f"fin_used={self.fin_used})"
        )


def acceptance_formula(a: Sgra) -> str:
    """Canonical acceptance formula over internal color indices."""
    parts = []
    if a.fin_used:
        parts.append("Fin(0)")
    parts.extend(f"Inf({i})" for i in range(1, a.num_colors))
    return " & ".join(parts) if parts else "t"


def scc_ids(a: Sgra) -> tuple[int, list[int]]:
    """SCC count and per-state component ids (sources first)."""
    adj: list[list[int]] = [[] for _ in range(a.num_states)]
    for t in a.transitions:
        adj[t.src].append(t.dst)
    return tarjan_sccs(a.num_states, adj)


def normalize_colors(a: Sgra) -> Sgra:
    """Strip colors from transitions whose endpoints lie in different SCCs.

    Colors only matter on transitions taken infinitely often, and any such
    transition connects states of one SCC, so the language is unchanged.
    Idempotent.
    """
    _, comp = scc_ids(a)
    changed = False
    out = []
    for t in a.transitions:
        if t.colors and comp[t.src] != comp[t.dst]:
            out.append(Transition(t.src, t.letter, t.dst, frozenset()))
            changed = True
        else:
            out.append(t)
    if not changed:
        return a
    return Sgra(a.num_states, a.alphabet, a.initial, out, a.num_colors, a.fin_used)


def push_state_acceptance(a: Sgra, state_colors: Mapping[int, AbstractSet[int]]) -> Sgra:
    """Move state-level acceptance marks onto all outgoing transitions.

    Rejects inputs that use the same color index both on a state and on a
    transition; such mixtures have no single faithful reading here.
    """
    state_used: set[int] = set()
    for q, cs in state_colors.items():
        if not 0 <= q < a.num_states:
            raise ValueError(f"state {q} out of range")
        state_used.update(cs)
    trans_used = {c for t in a.transitions for c in t.colors}
    mixed = state_used & trans_used
    if mixed:
        raise ValueError(f"colors {sorted(mixed)} marked on both states and transitions")
    for c in state_used:
        if not 0 <= c < a.num_colors:
            raise ValueError(f"color {c} out of range (k={a.num_colors})")
    out = []
    for t in a.transitions:
        extra = state_colors.get(t.src)
        if extra:
            out.append(Transition(t.src, t.letter, t.dst, t.colors | frozenset(extra)))
        else:
            out.append(t)
    return Sgra(a.num_states, a.alphabet, a.initial, out, a.num_colors, a.fin_used)


def restrict(a: Sgra, states: AbstractSet[int]) -> Sgra:
    """Keep only transitions with both endpoints inside `states`.

    State ids are preserved; initial states outside the set are dropped.
    """
    keep = [t for t in a.transitions if t.src in states and t.dst in states]
    return Sgra(
        a.num_states,
        a.alphabet,
        a.initial & frozenset(states),
        keep,
        a.num_colors,
        a.fin_used,
    )


def bfs_canonical_form(a: Sgra) -> tuple:
    """Renumber states in BFS discovery order and return a comparable tuple.

    Discovery starts from the sorted initial states and scans letters and
    old target ids in ascending order; unreached states follow in old-id
    order.  Two automata produced by a print/parse round trip compare equal
    under this form.  This is not a general graph-isomorphism decision.
    """
    order: list[int] = []
    number: dict[int, int] = {}
    queue = sorted(a.initial)
    for q in queue:
        if q not in number:
            number[q] = len(order)
            order.append(q)
    head = 0
    while head < len(order):
        q = order[head]
        head += 1
        for t in sorted(a.out(q), key=lambda t: (t.letter, t.dst)):
            if t.dst not in number:
                number[t.dst] = len(order)
                order.append(t.dst)
    for q in range(a.num_states):
        if q not in number:
            number[q] = len(order)
            order.append(q)
    trans = sorted(
        (number[t.src], t.letter, number[t.dst], tuple(sorted(t.colors)))
        for t in a.transitions
    )
    return (
        a.num_states,
        a.alphabet.labels,
        a.alphabet.ap_names,
        a.num_colors,
        a.fin_used,
        tuple(sorted(number[q] for q in a.initial)),
        tuple(trans),
    )
