#!/usr/bin/env python3
"""Survey the machines behind small pattern-counting sequences.

For every binary pattern up to length 3 (and a few base-3 ones), compile
the counting sequence mod 2 and mod 3, then print the minimized state
count, the kernel size, and the first few values.
"""

import itertools

from autoseq import (
    Pattern,
    PatternCount,
    SequenceSpec,
    compile_spec,
    eval_seq,
    kernel,
)


def survey(base, max_len, moduli):
    print(f"base {base}")
    print(f"{'pattern':>8} {'L':>2} {'states':>6} {'kernel':>6}  first values")
    for length in range(1, max_len + 1):
        for word in itertools.product(range(base), repeat=length):
            if not any(word):
                continue
            for modulus in moduli:
                spec = SequenceSpec(base, modulus, PatternCount(Pattern(base, word)))
                machine = compile_spec(spec)
                closure = kernel(machine, 4 * machine.states)
                values = " ".join(str(eval_seq(spec, n)) for n in range(16))
                name = "".join(map(str, word))
                mark = "" if closure.stabilized else " (partial)"
                print(
                    f"{name:>8} {modulus:>2} {machine.states:>6} "
                    f"{closure.size:>6}{mark}  {values}"
                )
    print()


if __name__ == "__main__":
    survey(2, 3, (2, 3))
    survey(3, 2, (2, 3))
