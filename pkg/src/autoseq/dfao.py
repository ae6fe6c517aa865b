"""Deterministic finite automata with output (DFAOs) over digit alphabets.

A machine here reads the canonical base-k digits of n, in a declared order
(most-significant first or least-significant first), and emits the residue
attached to the final state.  Every machine produced by this module is
insensitive to extra zero digits at the most-significant end, so the choice
between feeding canonical digits or zero-padded digits never matters.

Besides direct constructions for the two core sequence definitions, the
module provides reading-order reversal, Moore minimization with canonical
state numbering, kernel computation (the set of distinct subsequences
n -> a(k^e n + j), identified by exact machine equivalence), composition
with affine index maps, polynomial output relabeling, and compilation of a
whole :class:`~autoseq.basek.SequenceSpec` into one minimized machine.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .basek import (
    ArithSub,
    Pattern,
    PatternCount,
    SequenceSpec,
    digits_lsb,
    poly_eval_mod,
)

MSB_FIRST = "msb"
LSB_FIRST = "lsb"

DEFAULT_STATE_CAP = 10**6


class StateCapExceeded(RuntimeError):
    """A subset-style construction grew past the configured state budget."""

    def __init__(self, cap: int):
        super().__init__(f"construction exceeded the state cap of {cap}")
        self.cap = cap


@dataclass(frozen=True)
class Dfao:
    """Finite automaton with output residues in {0..modulus-1}.

    `transitions[s][d]` is the successor of state s on digit d; the table is
    total over digits 0..base-1.  `reading` declares which end of the digit
    string is consumed first.
    """

    base: int
    modulus: int
    transitions: tuple[tuple[int, ...], ...]
    outputs: tuple[int, ...]
    initial: int
    reading: str

    def __post_init__(self):
        n = len(self.transitions)
        if n == 0:
            raise ValueError("a machine needs at least one state")
        if len(self.outputs) != n:
            raise ValueError("outputs must cover every state")
        if not 0 <= self.initial < n:
            raise ValueError("initial state out of range")
        if self.reading not in (MSB_FIRST, LSB_FIRST):
            raise ValueError(f"unknown reading order {self.reading!r}")
        for row in self.transitions:
            if len(row) != self.base:
                raise ValueError("transition rows must cover every digit")
            for t in row:
                if not 0 <= t < n:
                    raise ValueError("transition target out of range")
        for v in self.outputs:
            if not 0 <= v < self.modulus:
                raise ValueError("output value out of residue range")

    @property
    def states(self) -> int:
        return len(self.transitions)

    def run_digits(self, digit_seq) -> int:
        """Feed digits exactly as given (already in this machine's order)."""
        state = self.initial
        table = self.transitions
        for d in digit_seq:
            state = table[state][d]
        return self.outputs[state]

    def run(self, n: int) -> int:
        """Sequence value at n: feed the canonical digits in reading order."""
        digs = digits_lsb(n, self.base)
        if self.reading == MSB_FIRST:
            digs.reverse()
        return self.run_digits(digs)

    def run_padded(self, n: int, extra_zeros: int) -> int:
        """Like run(), with zero digits added at the most-significant end."""
        digs = digits_lsb(n, self.base)
        if self.reading == MSB_FIRST:
            digs.reverse()
            digs = [0] * extra_zeros + digs
        else:
            digs = digs + [0] * extra_zeros
        return self.run_digits(digs)


def run(machine: Dfao, n: int) -> int:
    return machine.run(n)


def build_pattern_dfao(pattern: Pattern, modulus: int) -> Dfao:
    """Sliding-window machine for pattern occurrences mod `modulus`.

    Reads most-significant digit first.  A state is either the start state
    (only zero digits seen, matching the all-zero prefix that canonical
    strings never have) or a pair (window, count): the last min(M-1, read)
    digits since the leading nonzero digit, plus the running count mod L.
    The start state absorbs leading zeros, which gives zero-padding
    invariance and makes the machine return 0 at n = 0.
    """
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    base = pattern.base
    word = pattern.word
    m = len(word)

    start = None  # sentinel key for the not-started state

    def step(key, d):
        if key is None:
            if d == 0:
                return None
            count = 1 if (m == 1 and (d,) == word) else 0
            return ((d,)[: m - 1], count)
        window, count = key
        if len(window) == m - 1:
            if window + (d,) == word:
                count = (count + 1) % modulus
            window = (window + (d,))[1:] if m > 1 else ()
        else:
            window = window + (d,)
        return (window, count)

    ids = {start: 0}
    rows: list[list[int]] = []
    outs: list[int] = [0]
    todo = deque([start])
    while todo:
        key = todo.popleft()
        row = []
        for d in range(base):
            nxt = step(key, d)
            if nxt not in ids:
                ids[nxt] = len(ids)
                outs.append(0 if nxt is None else nxt[1])
                todo.append(nxt)
            row.append(ids[nxt])
        rows.append(row)
    return Dfao(
        base=base,
        modulus=modulus,
        transitions=tuple(tuple(r) for r in rows),
        outputs=tuple(outs),
        initial=0,
        reading=MSB_FIRST,
    )


def build_digitsum_dfao(base: int, modulus: int) -> Dfao:
    """Machine counting nonzero digits mod `modulus` (digit order irrelevant)."""
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    rows = tuple(
        tuple(s if d == 0 else (s + 1) % modulus for d in range(base))
        for s in range(modulus)
    )
    return Dfao(
        base=base,
        modulus=modulus,
        transitions=rows,
        outputs=tuple(range(modulus)),
        initial=0,
        reading=MSB_FIRST,
    )


def minimize(machine: Dfao) -> Dfao:
    """Smallest equivalent machine, with canonical breadth-first state ids.

    Moore partition refinement over the reachable states: start from the
    output partition and split blocks until every pair of states in a block
    agrees, digit by digit, on the block of its successor.  The canonical
    renumbering makes minimize idempotent and machine equality meaningful.
    """
    trans = machine.transitions
    # reachable restriction
    reach = [machine.initial]
    seen = {machine.initial}
    for s in reach:
        for t in trans[s]:
            if t not in seen:
                seen.add(t)
                reach.append(t)
    block: dict[int, int] = {}
    values = {}
    for s in reach:
        v = machine.outputs[s]
        if v not in values:
            values[v] = len(values)
        block[s] = values[v]
    nblocks = len(values)
    while True:
        sigs: dict[tuple, int] = {}
        newblock = {}
        for s in reach:
            sig = (block[s],) + tuple(block[t] for t in trans[s])
            if sig not in sigs:
                sigs[sig] = len(sigs)
            newblock[s] = sigs[sig]
        if len(sigs) == nblocks:
            break
        block = newblock
        nblocks = len(sigs)

    # canonical numbering: BFS over blocks from the initial block, digits ascending
    rep: dict[int, int] = {}
    for s in reach:
        b = block[s]
        if b not in rep:
            rep[b] = s
    order = [block[machine.initial]]
    numbered = {block[machine.initial]: 0}
    for b in order:
        s = rep[b]
        for d in range(machine.base):
            nb = block[trans[s][d]]
            if nb not in numbered:
                numbered[nb] = len(numbered)
                order.append(nb)
    rows = []
    outs = [0] * len(numbered)
    for b in order:
        s = rep[b]
        rows.append(tuple(numbered[block[trans[s][d]]] for d in range(machine.base)))
        outs[numbered[b]] = machine.outputs[s]
    return Dfao(
        base=machine.base,
        modulus=machine.modulus,
        transitions=tuple(rows),
        outputs=tuple(outs),
        initial=0,
        reading=machine.reading,
    )


def reverse_reading(machine: Dfao, state_cap: int = DEFAULT_STATE_CAP) -> Dfao:
    """Equivalent machine consuming the digit string from the other end.

    Subset-style determinization: a state of the new machine is the map
    "old state -> old state after the digits read so far, fed in the old
    order".  Reading one more digit d prepends d on the old machine's side,
    which precomposes the map with the d-transition.  The map applied to the
    old initial state tells us where the old machine would have ended, hence
    the output.  State count is bounded by `state_cap`; machines whose
    reversal explodes raise :class:`StateCapExceeded` instead of thrashing.
    """
    n = machine.states
    trans = machine.transitions
    identity = tuple(range(n))
    ids = {identity: 0}
    rows: list[list[int]] = []
    outs = [machine.outputs[machine.initial]]
    todo = deque([identity])
    while todo:
        f = todo.popleft()
        row = []
        for d in range(machine.base):
            g = tuple(f[trans[q][d]] for q in range(n))
            if g not in ids:
                if len(ids) >= state_cap:
                    raise StateCapExceeded(state_cap)
                ids[g] = len(ids)
                outs.append(machine.outputs[g[machine.initial]])
                todo.append(g)
            row.append(ids[g])
        rows.append(row)
    return Dfao(
        base=machine.base,
        modulus=machine.modulus,
        transitions=tuple(tuple(r) for r in rows),
        outputs=tuple(outs),
        initial=0,
        reading=LSB_FIRST if machine.reading == MSB_FIRST else MSB_FIRST,
    )


def to_lsb(machine: Dfao, state_cap: int = DEFAULT_STATE_CAP) -> Dfao:
    """The machine itself if it already reads LSB-first, else its minimized reversal."""
    if machine.reading == LSB_FIRST:
        return machine
    return minimize(reverse_reading(machine, state_cap))


@dataclass(frozen=True)
class KernelElement:
    """Identifies the subsequence n -> a(base**depth * n + offset)."""

    depth: int
    offset: int

    def __post_init__(self):
        if self.depth < 0:
            raise ValueError("depth must be >= 0")
        if not 0 <= self.offset:
            raise ValueError("offset must be >= 0")


@dataclass(frozen=True)
class KernelClosure:
    """Distinct kernel subsequences found up to a depth bound.

    `elements[i]` is the first (smallest depth, then smallest offset)
    kernel element whose induced machine equals state `states[i]` of
    `machine`, a minimized LSB-first version of the input.  `stabilized`
    is True when the set is closed under going one level deeper, i.e. it
    is the entire kernel.
    """

    elements: tuple[KernelElement, ...]
    states: tuple[int, ...]
    stabilized: bool
    depth_used: int
    machine: Dfao

    @property
    def size(self) -> int:
        return len(self.elements)


def kernel(machine: Dfao, depth_bound: int, state_cap: int = DEFAULT_STATE_CAP) -> KernelClosure:
    """Enumerate distinct subsequences a(k^e n + j) for e <= depth_bound.

    On an LSB-first machine the element (e, j) is the machine restarted from
    the state reached by the e padded digits of j, so distinct elements
    correspond to distinct states once the machine is minimized (exact
    equivalence, not prefix sampling).  The closure is found by a
    breadth-first walk over states, levels indexed by e; it has stabilized
    when every transition out of the collected states stays inside them.
    """
    if depth_bound < 0:
        raise ValueError("depth bound must be >= 0")
    m = minimize(to_lsb(machine, state_cap))
    found: dict[int, tuple[int, int]] = {m.initial: (0, 0)}
    frontier: dict[int, int] = {m.initial: 0}  # state -> least offset at this depth
    depth = 0
    scale = 1  # base**depth

    def closed() -> bool:
        return all(t in found for s in found for t in m.transitions[s])

    while not closed() and depth < depth_bound:
        # children in ascending-offset order: new offset is j + d*scale and
        # every frontier offset is below scale, so digit-major enumeration
        # visits offsets in increasing order
        nxt: dict[int, int] = {}
        for d in range(m.base):
            for state, j in sorted(frontier.items(), key=lambda kv: kv[1]):
                t = m.transitions[state][d]
                jj = j + d * scale
                if t not in nxt:
                    nxt[t] = jj
                if t not in found:
                    found[t] = (depth + 1, jj)
        frontier = nxt
        depth += 1
        scale *= m.base

    items = sorted(found.items(), key=lambda kv: kv[1])
    elements = tuple(KernelElement(e, j) for _, (e, j) in items)
    states = tuple(s for s, _ in items)
    return KernelClosure(elements, states, closed(), depth, m)


def arith_subsequence(
    machine: Dfao, offset: int, step: int, state_cap: int = DEFAULT_STATE_CAP
) -> Dfao:
    """Machine for n -> value(offset + n*step), built as a carry transducer.

    Reading the digits of n least-significant first, the transducer keeps the
    pending part c of offset + n*step that has not been emitted yet: on input
    digit x it emits the low digit of c + step*x into the wrapped machine and
    carries the rest.  The pending value stays within 0..offset+step, which
    keeps the product construction finite; that bound is re-checked on every
    constructed edge.  When the input ends, the remaining digits of c are
    flushed through the wrapped machine to produce the state's output.
    """
    if offset < 0:
        raise ValueError(f"offset must be >= 0, got {offset}")
    if step < 1:
        raise ValueError(f"step must be >= 1, got {step}")
    inner = to_lsb(machine, state_cap)
    base = inner.base
    bound = offset + step

    def flush(c: int, q: int) -> int:
        while c:
            c, d = divmod(c, base)
            q = inner.transitions[q][d]
        return inner.outputs[q]

    startkey = (offset, inner.initial)
    ids = {startkey: 0}
    rows: list[list[int]] = []
    outs = [flush(*startkey)]
    todo = deque([startkey])
    while todo:
        c, q = todo.popleft()
        row = []
        for x in range(base):
            total = c + step * x
            c2, y = divmod(total, base)
            if not 0 <= c2 <= bound:
                raise RuntimeError(
                    f"pending value {c2} escaped its bound 0..{bound}; "
                    "the carry invariant is broken"
                )
            key = (c2, inner.transitions[q][y])
            if key not in ids:
                if len(ids) >= state_cap:
                    raise StateCapExceeded(state_cap)
                ids[key] = len(ids)
                outs.append(flush(*key))
                todo.append(key)
            row.append(ids[key])
        rows.append(row)
    built = Dfao(
        base=base,
        modulus=inner.modulus,
        transitions=tuple(tuple(r) for r in rows),
        outputs=tuple(outs),
        initial=0,
        reading=LSB_FIRST,
    )
    return minimize(built)


def poly_output_map(machine: Dfao, coeffs, modulus: int) -> Dfao:
    """Relabel outputs through v -> sum(coeffs[m] * v**m) mod modulus."""
    coeffs = tuple(coeffs)
    if len(coeffs) < 1:
        raise ValueError("polynomial must have at least one coefficient")
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    return Dfao(
        base=machine.base,
        modulus=modulus,
        transitions=machine.transitions,
        outputs=tuple(poly_eval_mod(coeffs, v, modulus) for v in machine.outputs),
        initial=machine.initial,
        reading=machine.reading,
    )


def compile_spec(
    spec: SequenceSpec, *, minimized: bool = True, state_cap: int = DEFAULT_STATE_CAP
) -> Dfao:
    """Fold a SequenceSpec into a single machine agreeing with eval_seq."""
    if isinstance(spec.core, PatternCount):
        m = build_pattern_dfao(spec.core.pattern, spec.modulus)
    else:
        m = build_digitsum_dfao(spec.base, spec.modulus)
    for t in spec.transforms:
        if isinstance(t, ArithSub):
            m = arith_subsequence(m, t.offset, t.step, state_cap)
        else:
            m = poly_output_map(m, t.coeffs, spec.modulus)
    return minimize(m) if minimized else m


def to_dot(machine: Dfao) -> str:
    """DOT text: one node per state labeled "id/output", one edge per digit.

    States are emitted in id order and edges in digit order, so the output
    is byte-stable for canonically numbered machines.
    """
    lines = ["digraph dfao {", "  rankdir=LR;", "  node [shape=circle];"]
    lines.append("  __start [shape=point];")
    lines.append(f"  __start -> {machine.initial};")
    for s in range(machine.states):
        lines.append(f'  {s} [label="{s}/{machine.outputs[s]}"];')
    for s in range(machine.states):
        for d in range(machine.base):
            lines.append(f'  {s} -> {machine.transitions[s][d]} [label="{d}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
