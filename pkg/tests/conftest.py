import pytest

from autoseq import compile_spec, rudin_shapiro_spec, thue_morse_spec


@pytest.fixture(scope="session")
def tm_spec():
    return thue_morse_spec()


@pytest.fixture(scope="session")
def rs_spec():
    return rudin_shapiro_spec()


@pytest.fixture(scope="session")
def tm_machine(tm_spec):
    return compile_spec(tm_spec)


@pytest.fixture(scope="session")
def rs_machine(rs_spec):
    return compile_spec(rs_spec)


# Independent oracles, kept free of the library's digit plumbing on purpose.


def oracle_digits_msb(n, base):
    """Digit list via repeated division, most-significant first."""
    if n == 0:
        return []
    out = []
    while n:
        out.append(n % base)
        n //= base
    return out[::-1]


def oracle_count(n, word, base):
    """Overlapping occurrences by checking every in-range window arithmetically."""
    m = len(word)
    target = 0
    for d in word:
        target = target * base + d
    digits = 0
    nn = n
    while nn:
        nn //= base
        digits += 1
    count = 0
    for i in range(digits - m + 1):
        if (n // base**i) % base**m == target:
            count += 1
    return count


def oracle_nonzero_count(n, base):
    c = 0
    while n:
        if n % base:
            c += 1
        n //= base
    return c
