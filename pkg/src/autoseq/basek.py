"""Base-k digit arithmetic, pattern-occurrence counting, and sequence evaluation.

Everything in this package ultimately reduces to looking at the canonical
base-k digit string of a natural number.  A sequence is described by a
:class:`SequenceSpec`: a core definition (count occurrences of a digit word
mod L, or count nonzero digits mod L) plus an ordered stack of transforms
(restrict to an arithmetic subsequence, or relabel outputs through a
polynomial mod L).  This module evaluates such specs directly, digit by
digit; the ``dfao`` module compiles the same specs to finite machines.

Digit-order conventions: expansions are stored least-significant first
(carries propagate along the list), display is most-significant first.
Canonical means no leading zeros; zero has the empty expansion, so counting
for n = 0 always yields 0.  Pattern occurrences may overlap, and patterns
whose leading digit is 0 are legal.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class SpecFormatError(ValueError):
    """Raised when a JSON sequence description does not match the schema."""


def digits_lsb(n: int, base: int) -> list[int]:
    """Canonical base-`base` digits of n, least-significant first (empty for 0)."""
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    if n < 0:
        raise ValueError(f"expected a natural number, got {n}")
    out = []
    while n:
        n, d = divmod(n, base)
        out.append(d)
    return out


def top_exponent(n: int, base: int) -> int:
    """Exponent of the leading digit of n, or -1 for n = 0."""
    if n < 0:
        raise ValueError(f"expected a natural number, got {n}")
    e = -1
    while n:
        n //= base
        e += 1
    return e


def nonzero_digit_count(n: int, base: int) -> int:
    """Number of nonzero digits in the canonical base-`base` expansion of n."""
    if base == 2:
        return bin(n).count("1")
    c = 0
    while n:
        n, d = divmod(n, base)
        if d:
            c += 1
    return c


def render_digits(digits_msb) -> str:
    """Digit string, most-significant first.

    Single-character digits concatenate; once any digit value needs more
    than one character the whole string switches to comma-separated
    integers so it stays unambiguous.
    """
    ds = list(digits_msb)
    if not ds:
        return "0"
    if all(d < 10 for d in ds):
        return "".join(str(d) for d in ds)
    return ",".join(str(d) for d in ds)


@dataclass(frozen=True)
class DigitExpansion:
    """Canonical base-k expansion: digit list, least-significant first."""

    base: int
    digits: tuple[int, ...]

    def __post_init__(self):
        if self.base < 2:
            raise ValueError(f"base must be >= 2, got {self.base}")
        for d in self.digits:
            if not 0 <= d < self.base:
                raise ValueError(f"digit {d} out of range for base {self.base}")
        if self.digits and self.digits[-1] == 0:
            raise ValueError("non-canonical expansion: leading zero digit")

    @property
    def top_exponent(self) -> int:
        return len(self.digits) - 1

    def msb_digits(self) -> tuple[int, ...]:
        return tuple(reversed(self.digits))

    def __str__(self) -> str:
        return render_digits(self.msb_digits())


def expand(n: int, base: int) -> DigitExpansion:
    """Canonical base-`base` expansion of n; rejects base < 2 and n < 0."""
    return DigitExpansion(base, tuple(digits_lsb(n, base)))


def assemble(expansion: DigitExpansion) -> int:
    """Value of a canonical expansion; inverse of :func:`expand`."""
    n = 0
    for d in reversed(expansion.digits):
        n = n * expansion.base + d
    return n


@dataclass(frozen=True)
class Pattern:
    """A digit word over {0..k-1}, most-significant digit first, not all zero.

    A pattern of length M occurs at a position of a digit string when the
    M-digit window starting there matches exactly.  The leading digit of the
    word may be zero; occurrences are still counted against the canonical
    string of the scanned number (no virtual leading zeros are added).
    """

    base: int
    word: tuple[int, ...]

    def __post_init__(self):
        if self.base < 2:
            raise ValueError(f"base must be >= 2, got {self.base}")
        if len(self.word) < 1:
            raise ValueError("pattern must have at least one digit")
        for d in self.word:
            if not 0 <= d < self.base:
                raise ValueError(f"digit {d} out of range for base {self.base}")
        if not any(self.word):
            raise ValueError("pattern must not be all zeros")

    @classmethod
    def from_string(cls, text: str, base: int) -> Pattern:
        if "," in text:
            word = tuple(int(p) for p in text.split(","))
        else:
            word = tuple(int(ch) for ch in text)
        return cls(base, word)

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def value(self) -> int:
        """The word read as a base-k numeral (leading zeros allowed)."""
        v = 0
        for d in self.word:
            v = v * self.base + d
        return v

    @property
    def leading_digit(self) -> int:
        return self.word[0]

    @property
    def top_nonzero_index(self) -> int:
        """Largest j (1-based from the least-significant end) with a nonzero digit."""
        for i, d in enumerate(self.word):
            if d:
                return len(self.word) - i
        raise AssertionError("all-zero pattern")  # unreachable, rejected above

    def __str__(self) -> str:
        return render_digits(self.word)


def count_pattern(n: int, pattern: Pattern) -> int:
    """Occurrences (overlapping allowed) of `pattern` in the canonical string of n.

    Windows are taken over the canonical representation only, so the count
    for n = 0 is 0 and a pattern longer than the digit string never occurs.
    """
    if n < 0:
        raise ValueError(f"expected a natural number, got {n}")
    digs = digits_lsb(n, pattern.base)
    m = len(pattern.word)
    if len(digs) < m:
        return 0
    if pattern.base <= 256:
        # bytes.find is overlap-safe when restarted one past each hit
        hay = bytes(reversed(digs))
        needle = bytes(pattern.word)
        count = 0
        i = hay.find(needle)
        while i != -1:
            count += 1
            i = hay.find(needle, i + 1)
        return count
    msb = digs[::-1]
    word = list(pattern.word)
    return sum(1 for i in range(len(msb) - m + 1) if msb[i : i + m] == word)


def digit_count(n: int, digit: int, base: int) -> int:
    """Occurrences of a single nonzero digit value in the expansion of n."""
    if base < 2:
        raise ValueError(f"base must be >= 2, got {base}")
    if not 1 <= digit <= base - 1:
        raise ValueError(f"digit must lie in 1..{base - 1}, got {digit}")
    if n < 0:
        raise ValueError(f"expected a natural number, got {n}")
    c = 0
    while n:
        n, d = divmod(n, base)
        if d == digit:
            c += 1
    return c


@dataclass(frozen=True)
class PatternCount:
    """Core definition: occurrences of a digit word, reduced mod L."""

    pattern: Pattern


@dataclass(frozen=True)
class DigitSum:
    """Core definition: total nonzero-digit count, reduced mod L."""


@dataclass(frozen=True)
class ArithSub:
    """Index transform n -> offset + n*step (restrict to an arithmetic subsequence)."""

    offset: int
    step: int

    def __post_init__(self):
        if self.offset < 0:
            raise ValueError(f"offset must be >= 0, got {self.offset}")
        if self.step < 1:
            raise ValueError(f"step must be >= 1, got {self.step}")


@dataclass(frozen=True)
class PolyMap:
    """Output transform v -> sum(coeffs[m] * v**m) mod L.

    Coefficients are listed constant term first.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) < 1:
            raise ValueError("polynomial must have at least one coefficient")
        for c in self.coeffs:
            if c < 0:
                raise ValueError(f"coefficients must be >= 0, got {c}")


def poly_eval_mod(coeffs: tuple[int, ...], x: int, modulus: int) -> int:
    v = 0
    for c in reversed(coeffs):
        v = (v * x + c) % modulus
    return v


@dataclass(frozen=True)
class SequenceSpec:
    """Algebraic description of a sequence with values in {0..modulus-1}."""

    base: int
    modulus: int
    core: PatternCount | DigitSum
    transforms: tuple[ArithSub | PolyMap, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.base < 2:
            raise ValueError(f"base must be >= 2, got {self.base}")
        if self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")
        if isinstance(self.core, PatternCount) and self.core.pattern.base != self.base:
            raise ValueError("pattern base does not match spec base")
        for t in self.transforms:
            if not isinstance(t, (ArithSub, PolyMap)):
                raise ValueError(f"unknown transform {t!r}")


def eval_seq(spec: SequenceSpec, n: int) -> int:
    """Value of the sequence at index n, computed straight from the digits.

    The transform stack applies left to right: each ArithSub re-indexes
    whatever has been built so far, each PolyMap relabels its outputs.
    Index maps commute past output maps, so evaluation composes all the
    ArithSub maps (innermost last) and then applies the PolyMaps in order.
    """
    if n < 0:
        raise ValueError(f"expected a natural number, got {n}")
    idx = n
    for t in reversed(spec.transforms):
        if isinstance(t, ArithSub):
            idx = t.offset + idx * t.step
    if isinstance(spec.core, PatternCount):
        value = count_pattern(idx, spec.core.pattern) % spec.modulus
    else:
        value = nonzero_digit_count(idx, spec.base) % spec.modulus
    for t in spec.transforms:
        if isinstance(t, PolyMap):
            value = poly_eval_mod(t.coeffs, value, spec.modulus)
    return value


def thue_morse_spec(base: int = 2, modulus: int = 2) -> SequenceSpec:
    """Nonzero-digit count mod L; the Thue-Morse sequence for base 2, mod 2."""
    return SequenceSpec(base, modulus, DigitSum())


def rudin_shapiro_spec() -> SequenceSpec:
    """Occurrences of "11" in binary, mod 2: the Rudin-Shapiro sequence."""
    return SequenceSpec(2, 2, PatternCount(Pattern.from_string("11", 2)))


def spec_from_json(obj) -> SequenceSpec:
    """Build a SequenceSpec from a parsed JSON object.

    Schema: {"k": int, "L": int,
             "core": {"kind": "pattern"|"digitsum", "pattern": "digits"},
             "transforms": [{"op": "arithsub", "N": int, "l": int}
                            | {"op": "polymap", "coeffs": [int, ...]}]}
    The "pattern" key is required exactly when kind is "pattern";
    "transforms" may be omitted.  Polynomial coefficients are listed
    constant term first.
    """
    if not isinstance(obj, dict):
        raise SpecFormatError("spec must be a JSON object")
    try:
        base = int(obj["k"])
        modulus = int(obj["L"])
        core_obj = obj["core"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecFormatError(f"missing or malformed required key: {exc}") from exc
    if not isinstance(core_obj, dict) or "kind" not in core_obj:
        raise SpecFormatError('"core" must be an object with a "kind"')
    kind = core_obj["kind"]
    if kind == "pattern":
        if "pattern" not in core_obj:
            raise SpecFormatError('core kind "pattern" requires a "pattern" string')
        try:
            core: PatternCount | DigitSum = PatternCount(
                Pattern.from_string(str(core_obj["pattern"]), base)
            )
        except ValueError as exc:
            raise SpecFormatError(f"bad pattern: {exc}") from exc
    elif kind == "digitsum":
        if "pattern" in core_obj:
            raise SpecFormatError('core kind "digitsum" does not take a "pattern"')
        core = DigitSum()
    else:
        raise SpecFormatError(f"unknown core kind {kind!r}")
    transforms: list[ArithSub | PolyMap] = []
    for t in obj.get("transforms", []):
        if not isinstance(t, dict) or "op" not in t:
            raise SpecFormatError('each transform needs an "op"')
        try:
            if t["op"] == "arithsub":
                transforms.append(ArithSub(int(t["N"]), int(t["l"])))
            elif t["op"] == "polymap":
                transforms.append(PolyMap(tuple(int(c) for c in t["coeffs"])))
            else:
                raise SpecFormatError(f"unknown transform op {t['op']!r}")
        except SpecFormatError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise SpecFormatError(f"malformed transform: {exc}") from exc
    try:
        return SequenceSpec(base, modulus, core, tuple(transforms))
    except ValueError as exc:
        raise SpecFormatError(str(exc)) from exc


def spec_to_json(spec: SequenceSpec) -> dict:
    """Inverse of :func:`spec_from_json`."""
    if isinstance(spec.core, PatternCount):
        core = {"kind": "pattern", "pattern": str(spec.core.pattern)}
    else:
        core = {"kind": "digitsum"}
    transforms = []
    for t in spec.transforms:
        if isinstance(t, ArithSub):
            transforms.append({"op": "arithsub", "N": t.offset, "l": t.step})
        else:
            transforms.append({"op": "polymap", "coeffs": list(t.coeffs)})
    return {"k": spec.base, "L": spec.modulus, "core": core, "transforms": transforms}
