#!/usr/bin/env python3
"""Walk the explicit witness constructions and print their digit traces.

Shows a gap multiple, a digit-count residue solution built by stacking
blocks, and one refutation per construction branch, each with the digit
strings of every intermediate multiple.
"""

import argparse

from autoseq import Pattern, construct_refutation, find_gap_multiple, solve_residue


def show_gap(step, min_gap, base):
    w = find_gap_multiple(step, min_gap, base)
    gap = "inf" if w.gap is None else w.gap
    print(f"least multiple of {step} with a zero run > {min_gap} in base {base}:")
    print(f"  x={w.factor}  xl={w.multiple}  lowest digit at {w.low_exp}, gap {gap}\n")


def show_residue(step, target, modulus, base):
    r = solve_residue(step, target, modulus, base, strategy="construct")
    print(f"digit count of t*{step} = {target} (mod {modulus}) in base {base}, t built by stacking:")
    for line in r.trace:
        print(f"  {line}")
    print(f"  strategy: {r.strategy}\n")


def show_refutation(word, offset, step, base=2, modulus=2):
    pattern = Pattern.from_string(word, base)
    w = construct_refutation(pattern, modulus, offset, step, strategy="construct")
    print(
        f"pattern {word} mod {modulus}, subsequence N={offset} l={step}: "
        f"path {w.path}"
    )
    for line in w.trace:
        print(f"  {line if len(line) < 100 else line[:97] + '...'}")
    print(f"  {w.report_line() if w.witness < 10**60 else 'witness too large to print here'}")
    print()


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--base", type=int, default=2)
    args = parser.parse_args()

    show_gap(3, 2, args.base)
    show_gap(49, 20, 10)
    show_residue(3, 2, 3, args.base)
    show_refutation("11", 0, 3)  # leading digit nonzero
    show_refutation("01", 0, 3)  # leading zero, separated blocks
    show_refutation("01", 1, 3)  # leading zero, straddling occurrence
