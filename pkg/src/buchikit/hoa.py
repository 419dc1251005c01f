"""Reading and writing automata as text.

Two formats.  HOA v1 carries everything this library produces: alphabets
given by atomic propositions, acceptance marks on transitions or states,
and acceptance formulas that are a conjunction of at most one Fin atom
with any number of distinct Inf atoms.  The `.ba` format carries plain
state-accepting Buchi automata for interchange with other tools; printing
to it splits states whose outgoing transitions mix marked and unmarked.

Parsing is strict about what it does not understand.  Acceptance shapes
outside the supported family raise UnsupportedAcceptanceError; aliases,
state labels, universal branching, and plain syntax problems raise
FormatError with a position; too many atomic propositions raise
CapacityError.
"""
from __future__ import annotations

import re

from .automata import (
    Alphabet,
    Sgra,
    Transition,
    ap_alphabet,
    named_alphabet,
    push_state_acceptance,
)
from .errors import CapacityError, FormatError, UnsupportedAcceptanceError

DEFAULT_MAX_APS = 12

_TOKEN_RE = re.compile(
    r"""[ \t\r\f]+
      | (?P<string>"(?:[^"\\]|\\.)*")
      | (?P<hdr>[a-zA-Z_][a-zA-Z0-9_.-]*:)
      | (?P<ident>[a-zA-Z_][a-zA-Z0-9_.-]*)
      | (?P<int>\d+)
      | (?P<dash>--[A-Z]+--)
      | (?P<alias>@[a-zA-Z0-9_.-]+)
      | (?P<punct>[\[\]{}()!&|])
    """,
    re.VERBOSE,
)


def _blank_comments(text: str) -> str:
    """Replace /* ... */ comments with spaces, keeping every position."""

    def repl(m: re.Match) -> str:
        return re.sub(r"[^\n]", " ", m.group())

    out = re.sub(r"/\*.*?\*/", repl, text, flags=re.S)
    pos = out.find("/*")
    if pos >= 0:
        line = out.count("\n", 0, pos) + 1
        col = pos - out.rfind("\n", 0, pos)
        raise FormatError("unterminated comment", line, col)
    return out


class _Tokens:
    def __init__(self, text: str):
        toks: list[tuple[str, str, int, int]] = []
        last = 1
        for ln, line in enumerate(_blank_comments(text).splitlines(), start=1):
            last = ln
            pos = 0
            while pos < len(line):
                m = _TOKEN_RE.match(line, pos)
                if m is None:
                    raise FormatError(
                        f"unexpected character {line[pos]!r}", ln, pos + 1
                    )
                if m.lastgroup is not None:
                    toks.append((m.lastgroup, m.group(), ln, m.start() + 1))
                pos = m.end()
        self._toks = toks
        self._eof = ("eof", "", last, 1)
        self._i = 0

    def peek(self) -> tuple[str, str, int, int]:
        if self._i < len(self._toks):
            return self._toks[self._i]
        return self._eof

    def take(self) -> tuple[str, str, int, int]:
        tok = self.peek()
        self._i += 1
        return tok

    def fail(self, message: str, tok=None):
        tok = tok or self.peek()
        raise FormatError(message, tok[2], tok[3])

    def take_int(self, what: str) -> int:
        tok = self.take()
        if tok[0] != "int":
            self.fail(f"expected {what}", tok)
        return int(tok[1])

    def take_punct(self, ch: str):
        tok = self.take()
        if tok[0] != "punct" or tok[1] != ch:
            self.fail(f"expected {ch!r}", tok)


def _unquote(raw: str) -> str:
    return re.sub(r"\\(.)", r"\1", raw[1:-1])


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _parse_acceptance(ts: _Tokens) -> tuple[int, bool, dict[int, tuple[int, ...]]]:
    """Parse the formula after the set count.

    Returns (num_colors, fin_used, mapping from document set index to the
    internal colors it stands for).
    """
    tok = ts.peek()
    if tok[0] == "ident" and tok[1] == "t":
        ts.take()
        return 1, False, {}
    if tok[0] == "ident" and tok[1] == "f":
        raise UnsupportedAcceptanceError(
            "acceptance 'f' (no run accepted) is not supported"
        )
    atoms: list[tuple[str, int]] = []
    while True:
        tok = ts.take()
        if tok[0] != "ident" or tok[1] not in ("Fin", "Inf"):
            ts.fail("expected Fin(...) or Inf(...)", tok)
        ts.take_punct("(")
        if ts.peek()[1] == "!":
            raise UnsupportedAcceptanceError(
                "negated acceptance sets are not supported"
            )
        idx = ts.take_int("an acceptance set index")
        ts.take_punct(")")
        atoms.append((tok[1], idx))
        nxt = ts.peek()
        if nxt[0] == "punct" and nxt[1] == "&":
            ts.take()
            continue
        if nxt[0] == "punct" and nxt[1] == "|":
            raise UnsupportedAcceptanceError(
                "disjunctive acceptance is not supported"
            )
        break
    fins = [i for kind, i in atoms if kind == "Fin"]
    infs = [i for kind, i in atoms if kind == "Inf"]
    if len(fins) > 1:
        raise UnsupportedAcceptanceError("more than one Fin set is not supported")
    if len(set(infs)) != len(infs):
        raise UnsupportedAcceptanceError("repeated Inf sets are not supported")
    mapping: dict[int, list[int]] = {}
    if fins:
        mapping.setdefault(fins[0], []).append(0)
    for color, i in enumerate(infs, start=1):
        mapping.setdefault(i, []).append(color)
    return 1 + len(infs), bool(fins), {i: tuple(cs) for i, cs in mapping.items()}


def _parse_label(ts: _Tokens, ap_masks: list[int], all_mask: int) -> int:
    """Parse `[formula]`, returning the satisfying letters as a bitmask."""
    ts.take_punct("[")
    mask = _label_or(ts, ap_masks, all_mask)
    ts.take_punct("]")
    return mask


def _label_or(ts, ap_masks, all_mask) -> int:
    mask = _label_and(ts, ap_masks, all_mask)
    while ts.peek()[1] == "|":
        ts.take()
        mask |= _label_and(ts, ap_masks, all_mask)
    return mask


def _label_and(ts, ap_masks, all_mask) -> int:
    mask = _label_not(ts, ap_masks, all_mask)
    while ts.peek()[1] == "&":
        ts.take()
        mask &= _label_not(ts, ap_masks, all_mask)
    return mask


def _label_not(ts, ap_masks, all_mask) -> int:
    if ts.peek()[1] == "!":
        ts.take()
        return all_mask & ~_label_not(ts, ap_masks, all_mask)
    tok = ts.take()
    if tok[0] == "int":
        idx = int(tok[1])
        if idx >= len(ap_masks):
            ts.fail(f"atomic proposition {idx} out of range", tok)
        return ap_masks[idx]
    if tok[0] == "ident" and tok[1] == "t":
        return all_mask
    if tok[0] == "ident" and tok[1] == "f":
        return 0
    if tok[0] == "punct" and tok[1] == "(":
        mask = _label_or(ts, ap_masks, all_mask)
        ts.take_punct(")")
        return mask
    if tok[0] == "alias":
        ts.fail("aliases are not supported", tok)
    ts.fail("expected a label atom", tok)


def _parse_marks(ts: _Tokens, acc_count: int) -> frozenset[int]:
    marks = set()
    ts.take()  # '{'
    while True:
        tok = ts.take()
        if tok[0] == "punct" and tok[1] == "}":
            return frozenset(marks)
        if tok[0] != "int":
            ts.fail("expected an acceptance set index", tok)
        idx = int(tok[1])
        if idx >= acc_count:
            ts.fail(f"acceptance set {idx} out of range", tok)
        marks.add(idx)


_SKIMMED = ("string", "ident", "int", "alias")


def parse_hoa(text: str, max_aps: int = DEFAULT_MAX_APS) -> Sgra:
    """Parse one HOA v1 document into an explicit-alphabet automaton.

    Every edge label formula is expanded into one transition per
    satisfying valuation, so the alphabet has 2^|AP| letters; max_aps
    bounds the blow-up.  State acceptance marks are pushed onto outgoing
    transitions.
    """
    ts = _Tokens(text)
    tok = ts.take()
    if tok[0] != "hdr" or tok[1] != "HOA:":
        ts.fail("expected HOA: v1", tok)
    tok = ts.take()
    if tok[0] != "ident" or tok[1] != "v1":
        ts.fail("unsupported HOA version", tok)

    num_states: int | None = None
    starts: list[int] = []
    ap_names: list[str] | None = None
    acc_count: int | None = None
    acc_plan: tuple[int, bool, dict[int, tuple[int, ...]]] | None = None

    def dup(name: str, seen):
        if seen is not None:
            ts.fail(f"duplicate {name} header", tok)

    while True:
        tok = ts.peek()
        if tok[0] == "dash":
            break
        if tok[0] == "eof":
            ts.fail("missing --BODY--", tok)
        if tok[0] != "hdr":
            ts.fail("expected a header item", tok)
        ts.take()
        name = tok[1]
        if name == "States:":
            dup(name, num_states)
            num_states = ts.take_int("a state count")
        elif name == "Start:":
            starts.append(ts.take_int("a start state"))
            if ts.peek()[1] == "&":
                ts.fail("conjunctive initial states are not supported")
        elif name == "AP:":
            dup(name, ap_names)
            n = ts.take_int("the proposition count")
            if n > max_aps:
                raise CapacityError(
                    f"{n} atomic propositions exceed the cap of {max_aps}"
                )
            ap_names = []
            for _ in range(n):
                stok = ts.take()
                if stok[0] != "string":
                    ts.fail("expected a quoted proposition name", stok)
                ap_names.append(_unquote(stok[1]))
        elif name == "Acceptance:":
            dup(name, acc_plan)
            acc_count = ts.take_int("the acceptance set count")
            acc_plan = _parse_acceptance(ts)
        elif name == "Alias:":
            ts.fail("aliases are not supported", tok)
        elif name[0].isupper():
            ts.fail(f"unknown header {name}", tok)
        else:
            # acc-name:, name:, tool:, properties:, and other extensible
            # headers carry no information we use
            while ts.peek()[0] in _SKIMMED:
                ts.take()

    if acc_plan is None:
        ts.fail("missing Acceptance: header")
    num_colors, fin_used, mapping = acc_plan
    if ap_names is None:
        ap_names = []
    n_aps = len(ap_names)
    n_letters = 1 << n_aps
    all_mask = (1 << n_letters) - 1
    ap_masks = [0] * n_aps
    for letter in range(n_letters):
        for j in range(n_aps):
            if (letter >> j) & 1:
                ap_masks[j] |= 1 << letter

    tok = ts.take()
    if tok[0] != "dash" or tok[1] != "--BODY--":
        ts.fail("expected --BODY--", tok)

    edges: list[tuple[int, int, int, frozenset[int]]] = []  # src, lmask, dst, marks
    state_marks: dict[int, frozenset[int]] = {}
    seen_states: set[int] = set()
    current: int | None = None
    max_ref = max(starts, default=-1)

    while True:
        tok = ts.peek()
        if tok[0] == "dash":
            ts.take()
            if tok[1] == "--END--":
                break
            ts.fail(f"unexpected {tok[1]}", tok)
        if tok[0] == "eof":
            ts.fail("missing --END--", tok)
        if tok[0] == "hdr" and tok[1] == "State:":
            ts.take()
            if ts.peek()[1] == "[":
                ts.fail("state labels are not supported")
            sid = ts.take_int("a state id")
            if sid in seen_states:
                ts.fail(f"duplicate State: {sid}", tok)
            seen_states.add(sid)
            max_ref = max(max_ref, sid)
            current = sid
            if ts.peek()[0] == "string":
                ts.take()  # state name, ignored
            if ts.peek()[1] == "{":
                marks = _parse_marks(ts, acc_count)
                if marks:
                    state_marks[sid] = marks
        elif tok[0] == "punct" and tok[1] == "[":
            if current is None:
                ts.fail("edge before the first State: line", tok)
            lmask = _parse_label(ts, ap_masks, all_mask)
            dst = ts.take_int("a target state")
            if ts.peek()[1] == "&":
                ts.fail("universal branching is not supported")
            max_ref = max(max_ref, dst)
            marks = frozenset()
            if ts.peek()[1] == "{":
                marks = _parse_marks(ts, acc_count)
            edges.append((current, lmask, dst, marks))
        elif tok[0] == "int":
            ts.fail("edges must carry an explicit [label]", tok)
        else:
            ts.fail("expected State:, an edge, or --END--", tok)

    if num_states is None:
        num_states = max_ref + 1
    elif max_ref >= num_states:
        raise FormatError(
            f"state {max_ref} out of range (States: {num_states})"
        )

    transitions = []
    for src, lmask, dst, marks in edges:
        colors = frozenset(c for m in marks for c in mapping.get(m, ()))
        letter = 0
        while lmask:
            if lmask & 1:
                transitions.append(Transition(src, letter, dst, colors))
            lmask >>= 1
            letter += 1

    result = Sgra(
        num_states,
        ap_alphabet(tuple(ap_names)),
        frozenset(starts),
        transitions,
        num_colors,
        fin_used,
    )
    pushed = {
        q: frozenset(c for m in marks for c in mapping.get(m, ()))
        for q, marks in state_marks.items()
    }
    pushed = {q: cs for q, cs in pushed.items() if cs}
    if pushed:
        try:
            result = push_state_acceptance(result, pushed)
        except ValueError as e:
            raise FormatError(str(e)) from None
    return result


def _output_aps(alphabet: Alphabet) -> tuple[str, ...]:
    """Propositions to print; synthesized as p0, p1, ... when unnamed."""
    if alphabet.ap_names is not None:
        return alphabet.ap_names
    n = len(alphabet.labels)
    if n == 0:
        raise ValueError("cannot print an automaton with an empty alphabet")
    return tuple(f"p{i}" for i in range((n - 1).bit_length()))


def print_hoa(a: Sgra, name: str | None = None) -> str:
    """Render as HOA v1, deterministically.

    Acceptance sets are compacted on output: when Fin is unused, internal
    color 0 is dropped and Inf colors shift down by one, so a plain Buchi
    automaton prints as `Acceptance: 1 Inf(0)`.  Alphabets without
    proposition names are encoded over fresh propositions p0, p1, ...
    """
    aps = _output_aps(a.alphabet)
    shift = 0 if a.fin_used else 1
    printed_sets = a.num_colors - shift

    lines = ["HOA: v1"]
    if name is not None:
        lines.append(f"name: {_quote(name)}")
    lines.append(f"States: {a.num_states}")
    for q in sorted(a.initial):
        lines.append(f"Start: {q}")
    lines.append(f"AP: {len(aps)}" + "".join(" " + _quote(p) for p in aps))
    n_inf = a.num_colors - 1
    if a.fin_used:
        acc_name = "co-Buchi" if n_inf == 0 else f"generalized-Rabin 1 {n_inf}"
        formula = " & ".join(["Fin(0)"] + [f"Inf({c})" for c in range(1, a.num_colors)])
    else:
        if n_inf == 0:
            acc_name, formula = "all", "t"
        elif n_inf == 1:
            acc_name, formula = "Buchi", "Inf(0)"
        else:
            acc_name = f"generalized-Buchi {n_inf}"
            formula = " & ".join(f"Inf({c - 1})" for c in range(1, a.num_colors))
    lines.append(f"acc-name: {acc_name}")
    lines.append(f"Acceptance: {printed_sets} {formula}")
    lines.append("--BODY--")
    n_aps = len(aps)
    for q in range(a.num_states):
        lines.append(f"State: {q}")
        for t in a.out(q):
            if n_aps == 0:
                label = "t"
            else:
                label = "&".join(
                    (str(j) if (t.letter >> j) & 1 else f"!{j}")
                    for j in range(n_aps)
                )
            marks = sorted(c - shift for c in t.colors)
            suffix = " {" + " ".join(str(m) for m in marks) + "}" if marks else ""
            lines.append(f"[{label}] {t.dst}{suffix}")
    lines.append("--END--")
    return "\n".join(lines) + "\n"


def _strip_brackets(raw: str, line: int) -> str:
    s = raw.strip()
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1].strip()
    if not s or "[" in s or "]" in s:
        raise FormatError(f"malformed state name {raw.strip()!r}", line)
    return s


def parse_ba(text: str) -> Sgra:
    """Parse the .ba interchange format into a Buchi automaton.

    Layout: an optional leading initial-state line, transition lines
    `letter,[src]->[dst]`, then accepting-state lines.  States are
    numbered by first appearance, letters sorted lexicographically, and
    acceptance is pushed from states onto their outgoing transitions.
    """
    initial_name: str | None = None
    trans_raw: list[tuple[str, str, str]] = []
    acc_names: list[str] = []
    first = True
    for ln, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s:
            continue
        if "," in s:
            letter, rest = s.split(",", 1)
            if "->" not in rest:
                raise FormatError("malformed transition (missing ->)", ln)
            src, dst = rest.split("->", 1)
            letter = letter.strip()
            if not letter:
                raise FormatError("empty letter", ln)
            trans_raw.append(
                (letter, _strip_brackets(src, ln), _strip_brackets(dst, ln))
            )
        else:
            name = _strip_brackets(s, ln)
            if first and not trans_raw:
                initial_name = name
            else:
                acc_names.append(name)
        first = False

    if initial_name is None and not trans_raw:
        raise FormatError("no automaton content", 1)

    ids: dict[str, int] = {}

    def intern(name: str) -> int:
        if name not in ids:
            ids[name] = len(ids)
        return ids[name]

    if initial_name is not None:
        intern(initial_name)
    for _, src, dst in trans_raw:
        intern(src)
        intern(dst)
    for name in acc_names:
        intern(name)

    letters = sorted({letter for letter, _, _ in trans_raw})
    letter_id = {s: i for i, s in enumerate(letters)}
    initial = ids[initial_name] if initial_name is not None else ids[trans_raw[0][1]]
    base = Sgra(
        len(ids),
        named_alphabet(tuple(letters)),
        frozenset([initial]),
        [
            Transition(ids[src], letter_id[letter], ids[dst])
            for letter, src, dst in trans_raw
        ],
    )
    accepting = {ids[name] for name in acc_names}
    if accepting:
        base = push_state_acceptance(base, {q: frozenset([1]) for q in accepting})
    return base


def print_ba(a: Sgra) -> str:
    """Render a Buchi automaton in the .ba format.

    Transition marks become accepting states: a state whose outgoing
    transitions are part marked, part unmarked is split into two copies
    that share all incoming transitions.  A fresh initial state is added
    unless exactly one output state is initial.
    """
    if not a.is_ba():
        raise ValueError("ba format requires a Buchi automaton (k=2, no Fin)")
    labels = a.alphabet.labels

    plain_id: dict[int, int] = {}
    acc_id: dict[int, int] = {}
    counter = 0
    for q in range(a.num_states):
        outs = a.out(q)
        any_marked = any(1 in t.colors for t in outs)
        any_plain = any(1 not in t.colors for t in outs) or not outs
        if any_plain:
            plain_id[q] = counter
            counter += 1
        if any_marked:
            acc_id[q] = counter
            counter += 1

    def copies(q: int) -> list[int]:
        out = []
        if q in plain_id:
            out.append(plain_id[q])
        if q in acc_id:
            out.append(acc_id[q])
        return out

    lines_t: set[tuple[int, int, int]] = set()
    for t in a.transitions:
        src = acc_id[t.src] if 1 in t.colors else plain_id[t.src]
        for c in copies(t.dst):
            lines_t.add((src, t.letter, c))

    candidates = sorted(c for q in a.initial for c in copies(q))
    if len(candidates) == 1:
        init = candidates[0]
    else:
        init = counter
        counter += 1
        for q in sorted(a.initial):
            for t in a.out(q):
                for c in copies(t.dst):
                    lines_t.add((init, t.letter, c))

    out = [f"[{init}]"]
    for src, letter, dst in sorted(lines_t):
        out.append(f"{labels[letter]},[{src}]->[{dst}]")
    for q in sorted(acc_id.values()):
        out.append(f"[{q}]")
    return "\n".join(out) + "\n"
