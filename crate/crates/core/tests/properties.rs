use babbage_core::arith::{
    binomial_exact, binomial_mod, gcd_extended, kummer_valuation, lucas_binomial_mod_p, nat,
    padic_valuation, shifted_central_binomial_mod_prime_power, Natural,
};
use babbage_core::sequences::a290040_scan;
use babbage_core::theorems::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Rows `0..=n` of Pascal's triangle, by addition only.
fn pascal(n: usize) -> Vec<Vec<Natural>> {
    let mut rows: Vec<Vec<Natural>> = vec![vec![Natural::one()]];
    for a in 1..=n {
        let prev = &rows[a - 1];
        let mut row = Vec::with_capacity(a + 1);
        row.push(Natural::one());
        for b in 1..a {
            row.push(&prev[b - 1] + &prev[b]);
        }
        row.push(Natural::one());
        rows.push(row);
    }
    rows
}

/// Smallest prime factor of every n ≤ limit.
fn spf_sieve(limit: usize) -> Vec<u64> {
    let mut spf = vec![0u64; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            for j in (i..=limit).step_by(i) {
                if spf[j] == 0 {
                    spf[j] = i as u64;
                }
            }
        }
    }
    spf
}

fn is_prime(n: u64, spf: &[u64]) -> bool {
    n >= 2 && spf[n as usize] == n
}

fn valuation(mut x: Natural, p: u64) -> u64 {
    let mut v = 0;
    while (&x % p).is_zero() {
        x /= p;
        v += 1;
    }
    v
}

#[test]
fn exact_matches_pascal_and_convention() {
    let rows = pascal(300);
    for (a, row) in rows.iter().enumerate() {
        for (b, want) in row.iter().enumerate() {
            assert_eq!(
                binomial_exact(&nat(a as u64), &nat(b as u64)).unwrap(),
                *want
            );
        }
        assert!(binomial_exact(&nat(a as u64), &nat(a as u64 + 1))
            .unwrap()
            .is_zero());
    }
}

#[test]
fn vandermonde_and_central() {
    let c = |a: u64, b: u64| binomial_exact(&nat(a), &nat(b)).unwrap();
    for m in 0..=60 {
        for n in 0..=60 {
            let sum: Natural = (0..=n).map(|k| c(m, k) * c(n, n - k)).sum();
            assert_eq!(c(m + n, n), sum, "m={m} n={n}");
        }
    }
    for m in 1..=60 {
        let squares: Natural = (0..=m).map(|n| c(m, n).pow(2)).sum();
        assert_eq!(c(2 * m, m), squares);
        assert_eq!(nat(2) * c(2 * m - 1, m - 1), squares);
    }
}

#[test]
fn lucas_on_full_grid() {
    let rows = pascal(2000);
    for p in [2u64, 3, 5, 7, 11, 13] {
        let pn = nat(p);
        for (a, row) in rows.iter().enumerate() {
            for (b, exact) in row.iter().enumerate() {
                let got = lucas_binomial_mod_p(&nat(a as u64), &nat(b as u64), &pn).unwrap();
                assert_eq!(got, exact % p, "C({a}, {b}) mod {p}");
            }
        }
        assert!(lucas_binomial_mod_p(&nat(5), &nat(9), &pn)
            .unwrap()
            .is_zero());
    }
}

#[test]
fn kummer_on_full_grid() {
    let rows = pascal(512);
    for p in [2u64, 3, 5] {
        for a in 0..=256u64 {
            for b in 0..=256u64 {
                let exact = rows[(a + b) as usize][a as usize].clone();
                assert_eq!(
                    kummer_valuation(&nat(a), &nat(b), &nat(p)).unwrap(),
                    valuation(exact, p),
                    "a={a} b={b} p={p}"
                );
            }
        }
    }
}

#[test]
fn shifted_central_small_primes() {
    let spf = spf_sieve(101);
    for p in (2..=101u64).filter(|&p| is_prime(p, &spf)) {
        let exact = binomial_exact(&nat(2 * p - 1), &nat(p - 1)).unwrap();
        for e in 1..=4u32 {
            let pe = nat(p).pow(e);
            assert_eq!(
                shifted_central_binomial_mod_prime_power(&nat(p), e).unwrap(),
                &exact % &pe,
                "p={p} e={e}"
            );
        }
    }
}

#[test]
fn gcd_certificates_random_u128() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..10_000 {
        let (x, y): (u128, u128) = (rng.gen(), rng.gen());
        let (x, y) = (Natural::from(x), Natural::from(y));
        if x.is_zero() && y.is_zero() {
            continue;
        }
        let cert = gcd_extended(&x, &y).unwrap();
        let lhs = &cert.a * BigInt::from(x.clone()) + &cert.b * BigInt::from(y.clone());
        assert_eq!(lhs, BigInt::from(cert.g.clone()));
        assert_eq!(cert.g, num_integer::Integer::gcd(&x, &y));
    }
}

#[test]
fn least_prime_factor_range() {
    let limit = 100_000;
    let spf = spf_sieve(limit);
    for m in 2..=limit as u64 {
        let r = lpf_via_congruence(&nat(m)).unwrap();
        let ell = spf[m as usize];
        assert_eq!(r.ell, nat(ell), "m={m}");
        assert_eq!(r.residue, nat((m / ell + 1) % m), "m={m}");
    }
}

#[test]
fn primality_tests_agree() {
    let spf = spf_sieve(2000);
    for m in 2..=2000u64 {
        let want = is_prime(m, &spf);
        let n = nat(m);
        assert_eq!(sharp_babbage_primality_test(&n).unwrap(), want, "m={m}");
        assert_eq!(wilson_test(&n).unwrap(), want, "m={m}");
        if m <= 500 {
            assert_eq!(babbage_primality_test(&n).unwrap(), want, "m={m}");
        }
    }
}

#[test]
fn central_binomial_mod_4_is_never_1() {
    for m in 2..=10_000u64 {
        let r = binomial_mod(&nat(2 * m - 1), &nat(m - 1), &nat(4)).unwrap();
        assert_ne!(r, nat(1), "m={m}");
    }
}

#[test]
fn even_converse_range() {
    for m in (2..=20_000u64).step_by(2) {
        let r = even_converse_check(&nat(m)).unwrap();
        assert!(r.holds, "m={m}");
        assert_ne!(r.residue_mod_4, nat(1));
    }
}

#[test]
fn even_converse_agrees_with_exact_for_small_m() {
    for m in 2..=300u64 {
        let exact = binomial_exact(&nat(2 * m - 1), &nat(m - 1)).unwrap();
        let r = even_converse_check(&nat(m)).unwrap();
        assert_eq!(r.residue_mod_4, &exact % 4u32);
        assert_eq!(r.holds, &exact % (m * m) != nat(1 % (m * m)), "m={m}");
        if m >= 3 {
            assert_eq!(
                central_binomial_mod_square(&nat(m)).unwrap(),
                &exact % (m * m)
            );
        }
    }
}

#[test]
fn wolstenholme_mod_p3_sweep() {
    let spf = spf_sieve(3000);
    for p in (5..=3000u64).filter(|&p| is_prime(p, &spf)) {
        let r = wolstenholme_report(&nat(p)).unwrap();
        assert_eq!(r.residue_mod_p3, nat(1), "p={p}");
        assert!(!r.is_wolstenholme_prime, "p={p}");
    }
}

#[test]
fn mestrovic_grid() {
    let spf = spf_sieve(256);
    for m in 2..=256u64 {
        for p in 2..=50u64 {
            let power = is_prime(p, &spf) && {
                let mut x = m;
                while x % p == 0 {
                    x /= p;
                }
                x == 1
            };
            assert_eq!(
                mestrovic_check(&nat(m), &nat(p)).unwrap(),
                power,
                "m={m} p={p}"
            );
        }
    }
}

#[test]
fn prime_factor_incongruences() {
    let spf = spf_sieve(5000);
    for m in 2..=5000u64 {
        let mut x = m;
        while x > 1 {
            let p = spf[x as usize];
            while x % p == 0 {
                x /= p;
            }
            let r = prime_factor_incongruence(&nat(m), &nat(p)).unwrap();
            let pr = nat(p).pow(r.r as u32);
            assert_eq!(nat(m) % &pr, Natural::zero());
            assert!(!(nat(m) / &pr % p).is_zero());
            assert_ne!(r.residue_mod_m, nat(1) % nat(m), "m={m} p={p}");
            assert_eq!(r.residue_mod_pr, nat(m / p + 1) % &pr, "m={m} p={p}");
            assert_ne!(r.residue_mod_pr, nat(1) % &pr, "m={m} p={p}");
            if m <= 600 {
                let exact = binomial_exact(&nat(m + p), &nat(p)).unwrap();
                assert_eq!(r.residue_mod_m, &exact % m);
            }
        }
    }
}

#[test]
fn qualifying_divisors_are_composite() {
    let spf = spf_sieve(5000);
    for m in 2..=5000u64 {
        for d in (2..=m).filter(|d| m % d == 0) {
            if divisor_congruence_holds(&nat(m), &nat(d)).unwrap() {
                assert!(!is_prime(d, &spf), "m={m} d={d}");
            }
        }
    }
}

#[test]
fn lemma2_against_exact_parity() {
    let mut c = Natural::one(); // C(2m − 1, m − 1) at m = 1
    for m in 1..=4096u64 {
        if m > 1 {
            assert_eq!(
                c,
                binomial_exact(&nat(2 * m - 1), &nat(m - 1)).unwrap(),
                "m={m}"
            );
        }
        assert_eq!(
            lemma2_parity(&nat(m)).unwrap(),
            (&c % 2u32).is_one(),
            "m={m}"
        );
        c = c * (2 * m) * (2 * m + 1) / (m * (m + 1));
    }
}

#[test]
fn lemma1_wherever_it_applies() {
    for m in 1..=300u64 {
        let bound = 1u64 << m.trailing_zeros();
        for n in 1..=m {
            let got = lemma1_valuation(&nat(m), &nat(n));
            if n <= bound {
                let exact = binomial_exact(&nat(m), &nat(n)).unwrap();
                assert_eq!(got.unwrap(), valuation(exact, 2), "m={m} n={n}");
            } else {
                assert!(got.is_err());
            }
        }
    }
}

/// `B_0 … B_n` by the Akiyama–Tanigawa algorithm, with `B_1 = +1/2`.
fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut a: Vec<BigRational> = Vec::with_capacity(n + 1);
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(BigRational::new(BigInt::one(), BigInt::from(m as u64 + 1)));
        for j in (1..=m).rev() {
            a[j - 1] = BigRational::from_integer(BigInt::from(j as u64)) * (&a[j - 1] - &a[j]);
        }
        out.push(a[0].clone());
    }
    out
}

fn rational_mod_p(x: &BigRational, p: u64) -> u64 {
    let p_int = BigInt::from(p);
    let num = ((x.numer() % &p_int) + &p_int) % &p_int;
    let den = ((x.denom() % &p_int) + &p_int) % &p_int;
    let den = den.to_u64().unwrap();
    assert_ne!(den, 0, "denominator divisible by {p}");
    let inv = babbage_core::arith::mod_inverse_u64(den, p).unwrap();
    (num.to_u64().unwrap() as u128 * inv as u128 % p as u128) as u64
}

#[test]
fn bernoulli_against_exact_rationals() {
    let b = bernoulli_numbers(70);
    assert_eq!(b[2], BigRational::new(BigInt::one(), BigInt::from(6)));
    assert_eq!(b[4], BigRational::new(BigInt::from(-1), BigInt::from(30)));
    let spf = spf_sieve(73);
    for p in (5..=73u64).filter(|&p| is_prime(p, &spf)) {
        let want = rational_mod_p(&b[(p - 3) as usize], p);
        assert_eq!(bernoulli_bp3_mod_p(&nat(p)).unwrap(), nat(want), "p={p}");
    }
}

#[test]
fn sequence_records_recheck_exactly() {
    let spf = spf_sieve(3000);
    let records = a290040_scan(3000).unwrap();
    assert!(records.windows(2).all(|w| w[0].m < w[1].m));
    for r in &records {
        assert_eq!(Some(&r.smallest_d), r.all_d.iter().min());
        for &d in &r.all_d {
            assert_eq!(r.m % d, 0);
            assert!(d > 1 && !is_prime(d, &spf));
            let exact = binomial_exact(&nat(r.m + d), &nat(d)).unwrap();
            assert_eq!(exact % r.m, nat(1), "m={} d={d}", r.m);
        }
    }
}

proptest! {
    #[test]
    fn exact_row_identity(a in 1u64..600, b in 1u64..600) {
        prop_assume!(b <= a);
        let lhs = binomial_exact(&nat(a), &nat(b)).unwrap();
        let prev = binomial_exact(&nat(a - 1), &nat(b - 1)).unwrap();
        let scaled = prev * a;
        prop_assert!((&scaled % b).is_zero());
        prop_assert_eq!(lhs, scaled / b);
    }

    #[test]
    fn binomial_mod_matches_exact(a in 0u64..1500, b in 0u64..1500, m in 1u64..1_000_000) {
        let exact = binomial_exact(&nat(a), &nat(b)).unwrap() % m;
        prop_assert_eq!(binomial_mod(&nat(a), &nat(b), &nat(m)).unwrap(), exact);
    }

    #[test]
    fn padic_valuation_splits(k in 1u64..u64::MAX, p in prop::sample::select(vec![2u64, 3, 5, 7, 97, 65537])) {
        let v = padic_valuation(&nat(k), &nat(p)).unwrap();
        let unit = nat(k) / nat(p).pow(v.exponent as u32);
        prop_assert_eq!(&unit * nat(p).pow(v.exponent as u32), nat(k));
        prop_assert!(!(unit % p).is_zero());
    }
}
