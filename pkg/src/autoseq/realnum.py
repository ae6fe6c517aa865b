"""Exact evaluation of the real numbers attached to a sequence.

A spec with values in {0..L-1} and an integer radix beta >= L defines the
number sum(a(n) / beta**(n+1)).  Because every value is below beta, the
sequence values are literally the base-beta digits of that number, so the
stream view and the number view coincide.  All arithmetic is exact
rational; nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import floor

from .basek import SequenceSpec, eval_seq, render_digits
from .periodicity import PeriodScan, scan_ultimate_period


class DigitStream:
    """Lazily extended digits of sum(a(n) / beta**(n+1)), with exact partial sums.

    The prefix cache grows on demand and is the only mutable state; keep a
    stream on one thread at a time, or clone() it for an independent copy.
    """

    def __init__(self, spec: SequenceSpec, beta: int, evaluator=None):
        if beta < 2:
            raise ValueError(f"beta must be >= 2, got {beta}")
        if beta < spec.modulus:
            raise ValueError(
                f"beta must be at least the value modulus ({spec.modulus}), got {beta}"
            )
        self.spec = spec
        self.beta = beta
        self._eval = evaluator if evaluator is not None else (lambda n: eval_seq(spec, n))
        self._digits: list[int] = []

    def clone(self) -> DigitStream:
        other = DigitStream(self.spec, self.beta, self._eval)
        other._digits = list(self._digits)
        return other

    def _ensure(self, count: int) -> None:
        while len(self._digits) < count:
            self._digits.append(self._eval(len(self._digits)))

    def digit(self, index: int) -> int:
        """The digit d_{index+1}, i.e. the sequence value at index."""
        self._ensure(index + 1)
        return self._digits[index]

    def prefix(self, count: int) -> tuple[int, ...]:
        self._ensure(count)
        return tuple(self._digits[:count])

    def partial_sum(self, terms: int) -> Fraction:
        """Exact value of the first `terms` terms; denominator beta**terms."""
        if terms < 0:
            raise ValueError(f"terms must be >= 0, got {terms}")
        self._ensure(terms)
        num = 0
        for d in self._digits[:terms]:
            num = num * self.beta + d
        return Fraction(num, self.beta**terms)

    def tail_bound(self, terms: int) -> Fraction:
        """Upper bound on value - partial_sum(terms): all later digits maxed out."""
        return Fraction(self.spec.modulus - 1, (self.beta - 1) * self.beta**terms)

    def decimal_digits(self, count: int) -> tuple[int, str]:
        """Integer part and the first `count` truncated decimal digits.

        Uses a partial sum whose tail bound sits below 10**-(count+2) and
        brackets the value between the sum and sum + tail bound.  When both
        ends truncate identically the digits are certain.  A persistent
        disagreement only happens when the value sits exactly on the upper
        end (every remaining digit maxed out, e.g. the all-ones stream whose
        value is exactly 1); the upper end is exact there, so it is used.
        """
        if count < 1:
            raise ValueError(f"count must be >= 1, got {count}")
        scale = 10 ** (count + 2)
        terms = 1
        while self.tail_bound(terms) >= Fraction(1, scale):
            terms += 1
        shift = 10**count
        q = None
        for _ in range(6):
            low = self.partial_sum(terms)
            high = low + self.tail_bound(terms)
            low_q = floor(low * shift)
            high_q = floor(high * shift)
            if low_q == high_q:
                q = low_q
                break
            terms *= 2
        if q is None:
            q = high_q
        return q // shift, str(q % shift).rjust(count, "0")

    def decimal_string(self, count: int) -> str:
        integer, frac = self.decimal_digits(count)
        return f"{integer}.{frac}"

    def digit_line(self, count: int) -> str:
        """Plain-text rendering "0." followed by the base-beta digits."""
        return "0." + render_digits(self.prefix(count))

    def rational_string(self, terms: int) -> str:
        f = self.partial_sum(terms)
        return f"{f.numerator}/{f.denominator}"

    def diagnose_periodicity(
        self, prefix_length: int, max_period: int, max_preperiod: int
    ) -> PeriodScan:
        """Bounded period check on the digit prefix; answers are prefix-relative."""
        return scan_ultimate_period(self.prefix(prefix_length), max_period, max_preperiod)
