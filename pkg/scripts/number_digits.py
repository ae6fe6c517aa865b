#!/usr/bin/env python3
"""Print the numbers attached to the classic sequences.

For Thue-Morse and Rudin-Shapiro (and their shifted variants) show exact
partial sums, decimal digits, and the outcome of a bounded period scan of
the digit stream.
"""

from autoseq import ArithSub, DigitStream, SequenceSpec, rudin_shapiro_spec, thue_morse_spec
from autoseq.basek import DigitSum


def describe(name, spec, beta=2, digits=40):
    stream = DigitStream(spec, beta)
    print(f"{name} (beta={beta})")
    print(f"  digits     0.{''.join(map(str, stream.prefix(48)))}...")
    print(f"  partial(8) {stream.rational_string(8)}")
    print(f"  value      {stream.decimal_string(digits)}")
    scan = stream.diagnose_periodicity(4096, 64, 256)
    if scan.found:
        print(f"  period {scan.period} after {scan.preperiod} digits (prefix-relative)")
    else:
        print("  no digit period <= 64 with preperiod <= 256 in 4096 digits")
    print()


if __name__ == "__main__":
    describe("thue-morse", thue_morse_spec())
    describe("rudin-shapiro", rudin_shapiro_spec())
    describe("thue-morse on odd indices", SequenceSpec(2, 2, DigitSum(), (ArithSub(1, 2),)))
    describe("nonzero digits base 3 mod 3", SequenceSpec(3, 3, DigitSum()), beta=3)
