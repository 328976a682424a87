"""Smoke test for the compiled `babbage` extension module.

Build and install it first, e.g.

    pip install maturin
    maturin develop --release -m crates/python/Cargo.toml
"""

from math import comb

import babbage


def main():
    assert babbage.binomial_exact(270, 10) == comb(270, 10) == 479322759878148681
    assert babbage.binomial_mod(270, 10, 260) == 1

    for m in range(2, 200):
        prime = all(m % d for d in range(2, int(m**0.5) + 1))
        assert babbage.babbage_primality_test(m) == prime, m
        assert babbage.sharp_babbage_primality_test(m) == prime, m

    assert babbage.lpf_via_congruence(260) == (2, 131)
    assert babbage.lpf_via_congruence(283686649) == (16843, 16844)

    w = babbage.wolstenholme_report(16843)
    assert w.is_wolstenholme_prime and w.bernoulli_bp3_mod_p == 0
    print(w)

    records = babbage.a290040_scan(4000)
    assert [(r.m, r.smallest_d) for r in records] == [(260, 10), (1056, 264), (1060, 10), (3460, 10), (3905, 55)]
    print(records[0])

    try:
        babbage.babbage_primality_test(1)
    except ValueError as e:
        print("ValueError:", e)
    else:
        raise AssertionError("m = 1 accepted")

    print("ok")


if __name__ == "__main__":
    main()
