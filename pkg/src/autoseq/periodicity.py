"""Constructive non-periodicity machinery.

Three kinds of witness are produced here, all re-verified by direct digit
evaluation before being returned:

* gap multiples: a multiple of l whose lowest nonzero base-k digit is 1 and
  is separated from the next nonzero digit by more than t zero positions;
* residue solutions: t with (nonzero-digit count of t*l) congruent to a
  requested value mod L, found by scanning or by stacking shifted copies of
  a gap multiple so the digit counts add up predictably;
* refutation witnesses: for a hypothesised constant arithmetic subsequence
  of a pattern-count sequence, an index where the value provably differs.

The refutation builder can follow an explicit block construction: it places
digit blocks of the pattern into carefully separated positions of large
multiples of l, asserts the resulting digit layout before trusting it, and
falls back to a plain scan whenever an assertion or a verification fails.
Searches return the least witness so results are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .basek import (
    Pattern,
    PatternCount,
    SequenceSpec,
    digits_lsb,
    eval_seq,
    nonzero_digit_count,
    render_digits,
    top_exponent,
)

DEFAULT_GAP_CAP = 10**7
DEFAULT_SCAN_CAP = 10**6
DEFAULT_DIGIT_BUDGET = 50_000


class SearchCapExceeded(RuntimeError):
    """A witness search ran out of budget without an answer."""

    def __init__(self, cap: int, what: str = "search"):
        super().__init__(f"{what} exhausted its cap of {cap} without a witness")
        self.cap = cap


class InvalidMatchExponent(ValueError):
    """The pinned lowest-digit exponent is below the requested floor."""


class InsufficientData(ValueError):
    """The provided prefix is too short for the requested period bounds."""


_CHUNK = 4000  # keeps each str() call under the interpreter's digit limit


def decimal_str(n: int) -> str:
    """Decimal rendering that sidesteps the int-to-str conversion limit."""
    if n < 0:
        return "-" + decimal_str(-n)
    cut = 10**_CHUNK
    if n < cut:
        return str(n)
    chunks = []
    while n >= cut:
        n, rest = divmod(n, cut)
        chunks.append(rest)
    return str(n) + "".join(str(c).rjust(_CHUNK, "0") for c in reversed(chunks))


def _digit_line(name: str, value: int, base: int) -> str:
    digits = render_digits(reversed(digits_lsb(value, base)))
    return f"{name} value={decimal_str(value)} digits={digits}"


# ---------------------------------------------------------------------------
# gap multiples


@dataclass(frozen=True)
class GapWitness:
    """A multiple of `step` shaped 1 * k**low_exp + (higher digits far above).

    `gap` is the distance from the lowest nonzero digit to the next one,
    or None when the multiple is exactly a power of the base.
    """

    factor: int
    multiple: int
    low_exp: int
    gap: int | None

    def gap_exceeds(self, t: int) -> bool:
        return self.gap is None or self.gap > t


def _least_congruence_solution(a: int, b: int, m: int) -> int | None:
    """Least h >= 0 with a*h = b (mod m), or None when unsolvable."""
    if m == 1:
        return 0
    a %= m
    b %= m
    g = gcd(a, m)
    if b % g:
        return None
    mm = m // g
    if mm == 1:
        return 0
    return (b // g) * pow((a // g) % mm, -1, mm) % mm


def _verify_gap_witness(w: GapWitness, base: int, min_gap: int, floor_exp: int) -> None:
    digs = digits_lsb(w.multiple, base)
    nonzero = [e for e, d in enumerate(digs) if d]
    if not nonzero or digs[nonzero[0]] != 1:
        raise RuntimeError(f"gap witness {w} has a bad lowest digit")
    if nonzero[0] != w.low_exp or w.low_exp < floor_exp:
        raise RuntimeError(f"gap witness {w} has a bad lowest exponent")
    actual_gap = nonzero[1] - nonzero[0] if len(nonzero) > 1 else None
    if actual_gap != w.gap or not w.gap_exceeds(min_gap):
        raise RuntimeError(f"gap witness {w} has a bad gap")


def find_gap_multiple(
    step: int,
    min_gap: int,
    base: int,
    floor_exp: int = 0,
    match_exp: int | None = None,
    cap: int = DEFAULT_GAP_CAP,
) -> GapWitness:
    """Least x such that x*step has lowest digit 1 with more than min_gap zeros above.

    Any qualifying multiple has the shape base**w + h * base**(w + min_gap + 1)
    with h >= 0, so for each candidate exponent w the least h comes from one
    linear congruence mod step; the scan over w stops as soon as base**w
    passes the best value found.  This keeps the search exact (the returned
    x is the least one) while staying fast even when the least witness is
    astronomically large.  `match_exp` pins w, `floor_exp` bounds it below.
    """
    if step < 1:
        raise ValueError(f"step must be >= 1, got {step}")
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    if min_gap < 0 or floor_exp < 0:
        raise ValueError("min_gap and floor_exp must be >= 0")
    if match_exp is not None and match_exp < floor_exp:
        raise InvalidMatchExponent(
            f"pinned exponent {match_exp} is below the floor {floor_exp}"
        )

    shift = min_gap + 1

    def candidate(w: int) -> int | None:
        a = pow(base, w + shift, step)
        b = (-pow(base, w, step)) % step
        h = _least_congruence_solution(a, b, step)
        if h is None:
            return None
        return base**w + h * base ** (w + shift)

    if match_exp is not None:
        best = candidate(match_exp)
        if best is None:
            raise SearchCapExceeded(cap, f"pinned-exponent search (w={match_exp})")
        low = match_exp
    else:
        best = None
        low = -1
        w = floor_exp
        power = base**floor_exp
        scanned = 0
        while best is None or power <= best:
            v = candidate(w)
            if v is not None and (best is None or v < best):
                best, low = v, w
            w += 1
            power *= base
            scanned += 1
            if scanned > cap:
                raise SearchCapExceeded(cap, "gap-multiple exponent scan")
        if best is None:
            raise SearchCapExceeded(cap, "gap-multiple search")

    if best % step:
        raise RuntimeError(f"candidate {best} is not a multiple of {step}")
    digs = digits_lsb(best, base)
    nonzero = [e for e, d in enumerate(digs) if d]
    gap = nonzero[1] - nonzero[0] if len(nonzero) > 1 else None
    witness = GapWitness(best // step, best, low, gap)
    _verify_gap_witness(witness, base, min_gap, floor_exp)
    return witness


# ---------------------------------------------------------------------------
# digit-count residues


@dataclass(frozen=True)
class ResidueWitness:
    """t with nonzero_digit_count(t*step) congruent to the target mod modulus."""

    factor: int
    strategy: str
    trace: tuple[str, ...] = ()


def solve_residue(
    step: int,
    target: int,
    modulus: int,
    base: int,
    strategy: str = "brute",
    cap: int = DEFAULT_SCAN_CAP,
) -> ResidueWitness:
    """Find t with the nonzero-digit count of t*step hitting `target` mod `modulus`.

    The brute strategy scans t upward and returns the least solution.  The
    constructive strategy builds one: take a gap multiple x*step with more
    than one zero above its lowest digit, overlay shifted copies so the
    count becomes 1 mod modulus, then concatenate `target` disjoint copies
    of that block.  Its output is checked against the digit count and the
    brute scan takes over on any mismatch.
    """
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    if not 1 <= target <= modulus:
        raise ValueError(f"target must lie in 1..{modulus}, got {target}")
    if strategy not in ("brute", "construct"):
        raise ValueError(f"unknown strategy {strategy!r}")

    if strategy == "construct":
        result = _construct_residue(step, target, modulus, base)
        if result is not None:
            return result
        # fall through to the scan, keeping a note of the failed attempt

    for t in range(1, cap + 1):
        if nonzero_digit_count(t * step, base) % modulus == target % modulus:
            fell_back = strategy == "construct"
            return ResidueWitness(
                t,
                "brute (construct fell back)" if fell_back else "brute",
                (_digit_line("t*l", t * step, base),),
            )
    raise SearchCapExceeded(cap, "residue scan")


def _construct_residue(
    step: int, target: int, modulus: int, base: int
) -> ResidueWitness | None:
    gw = find_gap_multiple(step, 1, base)
    xl = gw.multiple
    trace = [_digit_line("x", gw.factor, base), _digit_line("xl", xl, base)]
    count = nonzero_digit_count(xl, base)
    if count % modulus == 1 % modulus:
        block = xl
    else:
        # shifted copies at the block's span overlap endpoint on endpoint;
        # each overlap merges (or carries) two nonzero digits into one, so
        # the count drops by exactly modulus-1 across modulus copies, which
        # needs the zero run above the lowest digit to be at least two wide
        span = top_exponent(xl, base) - gw.low_exp
        block = sum(base ** (j * span) for j in range(modulus)) * xl
        if nonzero_digit_count(block, base) % modulus != 1 % modulus:
            return None
    trace.append(_digit_line("Xl", block, base))
    spacing = top_exponent(block, base) + 1
    stacked = sum(base ** (j * spacing) for j in range(target)) * block
    if nonzero_digit_count(stacked, base) % modulus != target % modulus:
        return None
    t = stacked // step
    trace.append(_digit_line("t*l", stacked, base))
    return ResidueWitness(t, "construct", tuple(trace))


# ---------------------------------------------------------------------------
# output-polynomial condition


@dataclass(frozen=True)
class PolyCondition:
    """Whether v -> sum(coeffs[m] v**m) mod L is nonzero somewhere on the residues.

    `table[s]` holds the polynomial value at s for s = 0..modulus-1 (the
    input modulus is L, so s = L wraps to the s = 0 entry).  When the check
    fails the table is identically zero and the derived sequence vanishes.
    """

    passes: bool
    witness: int | None
    table: tuple[int, ...]


def check_poly_condition(coeffs, modulus: int) -> PolyCondition:
    """Look for s in 1..modulus with a nonzero polynomial value mod modulus.

    Scanning 1..modulus (rather than stopping at modulus-1) covers the
    constant coefficient as well, via s = modulus, so a pass is exactly
    "the polynomial is not identically zero on the residues".
    """
    coeffs = tuple(coeffs)
    if len(coeffs) < 1:
        raise ValueError("polynomial must have at least one coefficient")
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    table = []
    for s in range(modulus):
        v = 0
        for c in reversed(coeffs):
            v = (v * s + c) % modulus
        table.append(v)
    for s in range(1, modulus + 1):
        if table[s % modulus]:
            return PolyCondition(True, s, tuple(table))
    return PolyCondition(False, None, tuple(table))


# ---------------------------------------------------------------------------
# grid scans


@dataclass(frozen=True)
class ScanEntry:
    """Outcome for one arithmetic subsequence (offset + n*step)."""

    offset: int
    step: int
    witness: int | None
    value_at_offset: int
    value_at_witness: int | None
    budget: int


def scan_everywhere_nonperiodic(
    spec: SequenceSpec,
    max_offset: int,
    max_step: int,
    budget: int,
    evaluator=None,
) -> tuple[ScanEntry, ...]:
    """For every (offset, step) in the grid, hunt for a value differing from
    the one at the offset.  A found witness disproves constancy of that
    subsequence; an exhausted budget is reported as unresolved, never as
    periodicity.
    """
    if max_offset < 0 or max_step < 1 or budget < 1:
        raise ValueError("grid bounds and budget must be positive")
    ev = evaluator if evaluator is not None else (lambda n: eval_seq(spec, n))
    entries = []
    for offset in range(max_offset + 1):
        v0 = ev(offset)
        for step in range(1, max_step + 1):
            witness = None
            value = None
            for n in range(1, budget + 1):
                v = ev(offset + n * step)
                if v != v0:
                    witness, value = n, v
                    break
            entries.append(ScanEntry(offset, step, witness, v0, value, budget))
    return tuple(entries)


def render_scan_report(entries) -> list[str]:
    """One line per grid entry, in the scan's (offset, step) order."""
    lines = []
    for e in entries:
        if e.witness is None:
            lines.append(f"N={e.offset} l={e.step} UNRESOLVED budget={e.budget}")
        else:
            lines.append(
                f"N={e.offset} l={e.step} witness={e.witness} "
                f"vN={e.value_at_offset} vW={e.value_at_witness}"
            )
    return lines


# ---------------------------------------------------------------------------
# refutation witnesses


@dataclass(frozen=True)
class RefutationWitness:
    """Index n* where the arithmetic subsequence provably changes value."""

    offset: int
    step: int
    witness: int
    value_at_offset: int
    value_at_witness: int
    path: str
    trace: tuple[str, ...] = ()
    notes: tuple[str, ...] = ()

    def report_line(self) -> str:
        return (
            f"N={self.offset} l={self.step} witness={decimal_str(self.witness)} "
            f"vN={self.value_at_offset} vW={self.value_at_witness}"
        )


class _ConstructiveFailure(Exception):
    """Internal: the block construction could not be carried through."""


def boundary_occurrence(n: int, pattern: Pattern) -> int:
    """1 when adding a far-away digit block above n creates one extra occurrence.

    Happens exactly when the pattern starts with zero digits and its nonzero
    tail matches the top digits of n: the window then straddles n's leading
    digit and the zero gap above it.  At most one window can match, because
    the pattern's highest nonzero digit must line up with n's leading digit.
    """
    m = pattern.length
    j = pattern.top_nonzero_index
    if j == m:
        return 0
    top = top_exponent(n, pattern.base)
    if top < j - 1:
        return 0
    digs = digits_lsb(n, pattern.base)
    top_digits = tuple(reversed(digs[top - j + 1 : top + 1]))
    return 1 if top_digits == pattern.word[m - j :] else 0


def _assert_block(value: int, low_block: int, clear_exp: int, base: int, name: str) -> None:
    """The digits of `value` below `clear_exp` must be exactly `low_block`."""
    cut = base**clear_exp
    if not 0 <= low_block < cut or (value - low_block) % cut:
        raise _ConstructiveFailure(f"digit layout of {name} is not the expected one")


def construct_refutation(
    pattern: Pattern,
    modulus: int,
    offset: int,
    step: int,
    *,
    strategy: str = "brute",
    cap: int = DEFAULT_SCAN_CAP,
    digit_budget: int = DEFAULT_DIGIT_BUDGET,
) -> RefutationWitness:
    """Produce n* with the pattern count mod L at offset + n*·step differing
    from the one at the offset.

    The brute strategy scans n upward (least witness).  The constructive
    strategy assembles candidate indices out of gap multiples: digit blocks
    carrying the pattern are placed far above the offset's digits, in
    positions where the count of the combined number is forced, so the
    hypothesis of a constant subsequence pins values that cannot all hold.
    Every intermediate digit layout is asserted and every candidate is
    checked by direct evaluation; any failure falls back to the scan.
    Constructions whose numbers would exceed `digit_budget` digits are not
    attempted.
    """
    if modulus < 2:
        raise ValueError(f"modulus must be >= 2, got {modulus}")
    if offset < 0 or step < 1:
        raise ValueError("offset must be >= 0 and step >= 1")
    if strategy not in ("brute", "construct"):
        raise ValueError(f"unknown strategy {strategy!r}")

    spec = SequenceSpec(pattern.base, modulus, PatternCount(pattern))
    v0 = eval_seq(spec, offset)

    notes: tuple[str, ...] = ()
    if strategy == "construct":
        try:
            return _constructive_refutation(spec, pattern, offset, step, digit_budget)
        except _ConstructiveFailure as exc:
            notes = (f"construction fell back: {exc}",)

    for n in range(1, cap + 1):
        v = eval_seq(spec, offset + n * step)
        if v != v0:
            path = "brute (construct fell back)" if notes else "brute"
            return RefutationWitness(offset, step, n, v0, v, path, (), notes)
    raise SearchCapExceeded(cap, "refutation scan")


def _constructive_refutation(
    spec: SequenceSpec,
    pattern: Pattern,
    offset: int,
    step: int,
    digit_budget: int,
) -> RefutationWitness:
    base = pattern.base
    m = pattern.length
    r = pattern.value
    v0 = eval_seq(spec, offset)
    floor = top_exponent(offset, base) + m + 1

    trace: list[str] = []
    notes: list[str] = []

    def add(name: str, value: int) -> None:
        trace.append(_digit_line(name, value, base))

    # the first gap multiple: lowest digit 1 well above the offset's digits,
    # then a zero run wide enough that pattern windows cannot straddle the
    # blocks placed around it
    xw = find_gap_multiple(step, 3 * m + 1, base, floor)
    x, xl, w1 = xw.factor, xw.multiple, xw.low_exp
    add("x", x)
    add("xl", xl)
    _assert_block(xl, base**w1, w1 + 3 * m + 2, base, "xl")

    rxl = r * xl
    second_gap = 2 * m + 1 + rxl
    # the companion multiple needs a zero run wider than the value of r*x*l;
    # its digit count is about that big, so bail out early when it would
    # blow the digit budget
    est_digits = w1 + second_gap + top_exponent(step, base) + 3
    if est_digits > digit_budget:
        raise _ConstructiveFailure(
            f"companion multiple would need about {est_digits} digits "
            f"(budget {digit_budget})"
        )
    xbw = find_gap_multiple(step, second_gap, base, floor, match_exp=w1)
    xx, xxl = xbw.factor, xbw.multiple
    add("X", xx)
    add("Xl", xxl)
    _assert_block(xxl, base**w1, w1 + second_gap + 1, base, "Xl")

    candidates: list[int] = [x, xx]
    if pattern.leading_digit != 0:
        path = "construct-case1"
        b_top = pattern.leading_digit
        u = b_top * base ** (m - 1)
        w = r - u
        t_mult = b_top * base**m

        uxl = u * xl
        add("Uxl", uxl)
        _assert_block(uxl, b_top * base ** (w1 + m - 1), w1 + 3 * m + 1, base, "Uxl")
        candidates.append(u * x)
        if w > 0:
            wxl = w * xxl
            add("WXl", wxl)
            _assert_block(wxl, w * base**w1, w1 + 2 * m + 1 + rxl, base, "WXl")
            candidates.append(w * xx)
            combined = uxl + wxl
            add("(Ux+WX)l", combined)
            _assert_block(combined, r * base**w1, w1 + 3 * m + 1, base, "(Ux+WX)l")
            candidates.append(u * x + w * xx)
        rx_l = r * xl
        add("Rxl", rx_l)
        _assert_block(rx_l, r * base**w1, w1 + 2 * m + 2, base, "Rxl")
        candidates.append(r * x)
        txl = t_mult * xxl
        add("TXl", txl)
        _assert_block(txl, b_top * base ** (w1 + m), w1 + 2 * m + 1 + rxl, base, "TXl")
        candidates.append(t_mult * xx)
        combined = rx_l + txl
        add("(Rx+TX)l", combined)
        _assert_block(
            combined, r * base**w1 + b_top * base ** (w1 + m), w1 + 2 * m + 1, base, "(Rx+TX)l"
        )
        candidates.append(r * x + t_mult * xx)
    else:
        delta = boundary_occurrence(offset, pattern)
        j = pattern.top_nonzero_index
        if delta == 0:
            path = "construct-case2-separated"
            rx_l = r * xl
            add("Rxl", rx_l)
            _assert_block(rx_l, r * base**w1, w1 + 2 * m + 2, base, "Rxl")
            top_r = top_exponent(rx_l, base)
            if top_r - w1 - j + 1 < 2 * m + 1:
                raise _ConstructiveFailure(
                    "the first multiple has no room between its pattern tail "
                    "and its top digits"
                )
            # two runs of ones: one completing the pattern tail up to a full
            # window, one parked directly above the first multiple's top
            q = sum(base**i for i in range(j, m)) + sum(
                base**i for i in range(top_r + 1 - w1, top_r + m + 1 - w1)
            )
            add("Q", q)
            qxl = q * xxl
            add("QXl", qxl)
            q_low = q * base**w1
            _assert_block(qxl, q_low, top_r + m + 1 + (2 * m + 1), base, "QXl")
            candidates.append(r * x)
            candidates.append(q * xx)
            combined = rx_l + qxl
            add("(Rx+QX)l", combined)
            _assert_block(
                combined,
                r * base**w1 + sum(base ** (w1 + i) for i in range(j, m)),
                w1 + m,
                base,
                "(Rx+QX)l",
            )
            candidates.append(r * x + q * xx)
            notes.append("second run exponent measured from the multiple's lowest digit")
        else:
            path = "construct-case2-straddling"
            v_exp = max(top_exponent(offset, base) + m + 1, w1)
            v_pow = base**v_exp
            vl = v_pow * step
            add("V", v_pow)
            add("Vl", vl)
            top_v = top_exponent(vl, base)
            if top_v + 1 < w1:
                raise _ConstructiveFailure("the pure-power multiple tops out below the gap multiple")
            s_mult = sum(base ** (top_v + 1 - w1 + i) for i in range(m))
            sxl = s_mult * xl
            add("S", s_mult)
            add("Sxl", sxl)
            run = sum(base ** (top_v + 1 + i) for i in range(m))
            _assert_block(sxl, run, top_v + m + 1 + (2 * m + 1), base, "Sxl")
            combined = vl + sxl
            add("(V+Sx)l", combined)
            _assert_block(combined, vl + run, top_v + m + 1 + (2 * m + 1), base, "(V+Sx)l")
            candidates.append(v_pow)
            candidates.append(s_mult * x)
            candidates.append(v_pow + s_mult * x)

    seen = set()
    for cand in candidates:
        if cand <= 0 or cand in seen:
            continue
        seen.add(cand)
        v = eval_seq(spec, offset + cand * step)
        if v != v0:
            notes.append("layout checks passed for every constructed multiple")
            return RefutationWitness(
                offset, step, cand, v0, v, path, tuple(trace), tuple(notes)
            )
    raise _ConstructiveFailure("no constructed candidate changed the value")


# ---------------------------------------------------------------------------
# bounded period detection


@dataclass(frozen=True)
class PeriodScan:
    """Result of a bounded ultimate-periodicity check on a finite prefix.

    A positive answer only says the prefix is consistent with the reported
    (preperiod, period); it never certifies the infinite sequence.
    """

    found: bool
    period: int | None
    preperiod: int | None
    prefix_length: int
    max_period: int
    max_preperiod: int


def scan_ultimate_period(values, max_period: int, max_preperiod: int) -> PeriodScan:
    """Least (preperiod, period) consistent with the prefix, within bounds.

    For each candidate period the scan walks the prefix backwards to find
    the last disagreement, which gives the smallest workable preperiod; the
    lexicographically least (preperiod, period) pair wins.  The prefix must
    be longer than max_preperiod + 2*max_period so every candidate period is
    observed at least twice beyond the preperiod.
    """
    vals = list(values)
    if max_period < 1 or max_preperiod < 0:
        raise ValueError("period bound must be >= 1 and preperiod bound >= 0")
    if len(vals) <= max_preperiod + 2 * max_period:
        raise InsufficientData(
            f"prefix of length {len(vals)} is too short for bounds "
            f"(period {max_period}, preperiod {max_preperiod})"
        )
    best: tuple[int, int] | None = None
    for p in range(1, max_period + 1):
        pre = 0
        for n in range(len(vals) - p - 1, -1, -1):
            if vals[n] != vals[n + p]:
                pre = n + 1
                break
        if pre <= max_preperiod and (best is None or (pre, p) < best):
            best = (pre, p)
    if best is None:
        return PeriodScan(False, None, None, len(vals), max_period, max_preperiod)
    return PeriodScan(True, best[1], best[0], len(vals), max_period, max_preperiod)
