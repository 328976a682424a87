//! Binomial coefficients, exact and modular.

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::bezout::crt;
use super::factor::{factorize, is_prime_u64, primes_up_to};
use super::ring::{batch_inverse, ratio_product, Modulus, ResidueRing};
use super::valuation::carries_u64;
use super::Natural;
use crate::error::{Error, Result};
use crate::with_ring;

/// Longest row `min(b, a − b)` that [`binomial_exact`] will attempt.
pub const EXACT_ROW_LIMIT: u64 = 100_000_000;

/// Longest row for the invertible-product method.
const PRODUCT_ROW_LIMIT: u64 = 1 << 24;

/// Largest top entry `a` for which the prime-exponent method sieves `[2, a]`.
const PRIME_EXPONENT_LIMIT: u64 = 1 << 25;

/// Exact evaluation is preferred below this estimated result size, in bits.
const CHEAP_EXACT_BITS: u64 = 1 << 14;

/// Largest modulus `binomial_mod` will trial-divide, either to look for a
/// prime (Lucas) or to split it into prime powers.
const FACTOR_PROBE_LIMIT: u64 = 1 << 40;

/// Longest row for the prime-power method.
const PRIME_POWER_ROW_LIMIT: u64 = 1 << 36;

/// How [`binomial_mod_with`] evaluates a residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinomialStrategy {
    /// Digit-wise product over base-`m` digits; needs a prime modulus.
    Lucas,
    /// `∏ (a − k + i) / i` in `Z/mZ`; needs every `i ≤ k` to be a unit.
    InvertibleProduct,
    /// `∏ qᵉ` over primes `q ≤ a`, each `e` counted by Kummer carries.
    PrimeExponents,
    /// Residues modulo each prime power of a factored modulus, then CRT.
    PrimePowerCrt,
    /// Exact big-integer value, then reduced.
    Exact,
}

fn row_length(a: &Natural, b: &Natural) -> Natural {
    let rest = a - b;
    if &rest < b {
        rest
    } else {
        b.clone()
    }
}

/// Exact `C(a, b)`, with `C(a, b) = 0` when `b > a`.
///
/// Walks the row with `r ← r·(a − k + i) / i`; every intermediate is itself a
/// binomial coefficient so each division is exact. Factors are packed into
/// machine words while they fit to cut the number of big-integer passes.
pub fn binomial_exact(a: &Natural, b: &Natural) -> Result<Natural> {
    if b > a {
        return Ok(Natural::zero());
    }
    let k_big = row_length(a, b);
    let k = match k_big.to_u64() {
        Some(k) if k <= EXACT_ROW_LIMIT => k,
        _ => {
            return Err(Error::too_large(
                "binomial row length",
                &k_big,
                EXACT_ROW_LIMIT,
            ))
        }
    };
    let base = a - &k_big;
    let mut r = Natural::one();
    match base.to_u64().and_then(|b| b.checked_add(k).map(|_| b)) {
        Some(base) => {
            let mut i = 1u64;
            while i <= k {
                let (mut num, mut den) = (base + i, i);
                i += 1;
                while i <= k {
                    match (num.checked_mul(base + i), den.checked_mul(i)) {
                        (Some(n), Some(d)) => {
                            num = n;
                            den = d;
                            i += 1;
                        }
                        _ => break,
                    }
                }
                r *= num;
                r /= den;
            }
        }
        None => {
            for i in 1..=k {
                r = r * (&base + i) / i;
            }
        }
    }
    Ok(r)
}

/// Least non-negative residue of `C(a, b)` modulo `m`.
///
/// Chooses a [`BinomialStrategy`]: Lucas for small prime moduli, the
/// invertible product when the whole denominator is a unit, an exact value
/// when that is cheap, the prime-exponent product when `a` is small enough to
/// sieve, and the exact value otherwise.
pub fn binomial_mod(a: &Natural, b: &Natural, m: &Natural) -> Result<Natural> {
    if m.is_zero() {
        return Err(Error::ZeroModulus);
    }
    if m.is_one() || b > a {
        return Ok(Natural::zero());
    }
    let strategy = choose_strategy(a, b, m);
    binomial_mod_with(a, b, m, strategy)
}

fn choose_strategy(a: &Natural, b: &Natural, m: &Natural) -> BinomialStrategy {
    let k = row_length(a, b);
    if let Some(w) = m.to_u64() {
        if w <= FACTOR_PROBE_LIMIT && is_prime_u64(w) {
            return BinomialStrategy::Lucas;
        }
    }
    if let Some(k) = k.to_u64() {
        if k <= PRODUCT_ROW_LIMIT && !has_factor_at_most(m, k) {
            return BinomialStrategy::InvertibleProduct;
        }
        let bits = k.saturating_mul(a.bits().max(1));
        if bits <= CHEAP_EXACT_BITS {
            return BinomialStrategy::Exact;
        }
    }
    let factorable = m.to_u64().is_some_and(|w| w <= FACTOR_PROBE_LIMIT);
    let short_row = k.to_u64().is_some_and(|k| k <= PRIME_POWER_ROW_LIMIT);
    match a.to_u64() {
        Some(_) if factorable && short_row => BinomialStrategy::PrimePowerCrt,
        Some(a) if a <= PRIME_EXPONENT_LIMIT => BinomialStrategy::PrimeExponents,
        _ => BinomialStrategy::Exact,
    }
}

/// True when some integer in `[2, k]` shares a factor with `m`.
fn has_factor_at_most(m: &Natural, k: u64) -> bool {
    if k < 2 {
        return false;
    }
    match m.to_u64() {
        Some(m) => {
            let mut d = 2u64;
            while d <= k && d <= m / d {
                if m % d == 0 {
                    return true;
                }
                d += 1;
            }
            // No factor up to √m: m is 1 or prime.
            m > 1 && m <= k && d > m / d
        }
        None => (2..=k).any(|d| (m % d).is_zero()),
    }
}

/// [`binomial_mod`] with an explicit strategy.
///
/// Fails with [`Error::Precondition`] when the strategy does not apply to
/// these inputs (a composite modulus for Lucas, a non-unit denominator for the
/// product method, an unsievable `a` for prime exponents).
pub fn binomial_mod_with(
    a: &Natural,
    b: &Natural,
    m: &Natural,
    strategy: BinomialStrategy,
) -> Result<Natural> {
    if m.is_zero() {
        return Err(Error::ZeroModulus);
    }
    if m.is_one() || b > a {
        return Ok(Natural::zero());
    }
    match strategy {
        BinomialStrategy::Lucas => lucas_binomial_mod_p(a, b, m),
        BinomialStrategy::InvertibleProduct => invertible_product(a, b, m),
        BinomialStrategy::PrimeExponents => prime_exponent_product(a, b, m),
        BinomialStrategy::PrimePowerCrt => {
            let factors = factorize(m)?;
            let mut parts = Vec::with_capacity(factors.factors.len());
            for &(p, e) in &factors.factors {
                let r = binomial_mod_prime_power(a, b, &Natural::from(p), e)?;
                parts.push((r, Natural::from(p).pow(e)));
            }
            let (x, _) = crt(&parts).expect("prime powers of distinct primes are coprime");
            Ok(x)
        }
        BinomialStrategy::Exact => Ok(binomial_exact(a, b)? % m),
    }
}

fn invertible_product(a: &Natural, b: &Natural, m: &Natural) -> Result<Natural> {
    let k_big = row_length(a, b);
    let k = k_big
        .to_u64()
        .filter(|&k| k <= PRODUCT_ROW_LIMIT)
        .ok_or_else(|| Error::too_large("binomial row length", &k_big, PRODUCT_ROW_LIMIT))?;
    let base = a - &k_big;
    let modulus = Modulus::new(m)?;
    let residue = with_ring!(&modulus, ring => {
        let word_base = base.to_u64().filter(|b| b.checked_add(k).is_some());
        let mut num = ring.one();
        let mut den = ring.one();
        for i in 1..=k {
            let factor = match word_base {
                Some(b) => ring.lift_u64(b + i),
                None => ring.lift(&(&base + i)),
            };
            num = ring.mul(&num, &factor);
            den = ring.mul(&den, &ring.lift_u64(i));
        }
        ring.inverse(&den).map(|inv| ring.to_natural(&ring.mul(&num, &inv)))
    });
    residue.ok_or_else(|| Error::Precondition(format!("{k}! is not a unit modulo {m}")))
}

fn prime_exponent_product(a: &Natural, b: &Natural, m: &Natural) -> Result<Natural> {
    let a_word = a
        .to_u64()
        .filter(|&a| a <= PRIME_EXPONENT_LIMIT)
        .ok_or_else(|| Error::too_large("a", a, PRIME_EXPONENT_LIMIT))?;
    let b_word = b.to_u64().expect("b ≤ a fits a word");
    let rest = a_word - b_word;
    let modulus = Modulus::new(m)?;
    Ok(with_ring!(&modulus, ring => {
        let mut acc = ring.one();
        for q in primes_up_to(a_word) {
            let e = carries_u64(b_word, rest, q);
            if e > 0 {
                acc = ring.mul(&acc, &ring.pow(&ring.lift_u64(q), e));
            }
        }
        ring.to_natural(&acc)
    }))
}

/// Removes every factor `p` from `x`, returning the cofactor and the count.
#[inline]
fn strip(mut x: u64, p: u64) -> (u64, u64) {
    let mut e = 0;
    while x.is_multiple_of(p) {
        x /= p;
        e += 1;
    }
    (x, e)
}

/// `C(a, b) mod pᵏ` for a prime `p`.
///
/// The row `∏ (a − r + i) / i` is split into its `p`-free parts, which are
/// units modulo `pᵏ`, and a power `pᵛ` whose exponent `v` is the number of
/// carries when adding `b` and `a − b` in base `p`. Costs `O(r)` ring
/// multiplications for row length `r = min(b, a − b)`.
pub fn binomial_mod_prime_power(a: &Natural, b: &Natural, p: &Natural, k: u32) -> Result<Natural> {
    let p_word = match p.to_u64() {
        Some(w) if is_prime_u64(w) => w,
        Some(_) => return Err(Error::NotPrime(p.clone())),
        None => return Err(Error::too_large("p", p, u64::MAX)),
    };
    if k == 0 {
        return Err(Error::Precondition("exponent k must be at least 1".into()));
    }
    if b > a {
        return Ok(Natural::zero());
    }
    let a_word = a
        .to_u64()
        .ok_or_else(|| Error::too_large("a", a, u64::MAX))?;
    let b_word = b.to_u64().expect("b ≤ a");
    let row = b_word.min(a_word - b_word);
    if row > PRIME_POWER_ROW_LIMIT {
        return Err(Error::too_large(
            "binomial row length",
            &Natural::from(row),
            PRIME_POWER_ROW_LIMIT,
        ));
    }
    let v = carries_u64(b_word, a_word - b_word, p_word);
    if v >= u64::from(k) {
        return Ok(Natural::zero());
    }
    let base = a_word - row;
    let modulus = Modulus::new(&p.pow(k))?;
    let residue = with_ring!(&modulus, ring => {
        let one = ring.one();
        let (mut num, mut den) = (ring.one(), ring.one());
        // Running ring images of base + i and i, and their residues mod p.
        let (mut top, mut bottom) = (ring.lift_u64(base), ring.zero());
        let (mut top_r, mut bottom_r) = (base % p_word, 0u64);
        let mut removed: i64 = 0;
        for i in 1..=row {
            top = ring.add(&top, &one);
            bottom = ring.add(&bottom, &one);
            top_r = if top_r + 1 == p_word { 0 } else { top_r + 1 };
            bottom_r = if bottom_r + 1 == p_word { 0 } else { bottom_r + 1 };
            if top_r == 0 {
                let (unit, e) = strip(base + i, p_word);
                num = ring.mul(&num, &ring.lift_u64(unit));
                removed += e as i64;
            } else {
                num = ring.mul(&num, &top);
            }
            if bottom_r == 0 {
                let (unit, e) = strip(i, p_word);
                den = ring.mul(&den, &ring.lift_u64(unit));
                removed -= e as i64;
            } else {
                den = ring.mul(&den, &bottom);
            }
        }
        if removed != v as i64 {
            return Err(Error::Internal(format!(
                "p-adic exponent {removed} of C({a}, {b}) disagrees with {v} carries"
            )));
        }
        let inv = ring
            .inverse(&den)
            .ok_or_else(|| Error::Internal("p-free denominator is not a unit".into()))?;
        let unit = ring.mul(&num, &inv);
        ring.to_natural(&ring.mul(&unit, &ring.pow(&ring.lift_u64(p_word), v)))
    });
    Ok(residue)
}

/// `C(α, β) mod p` for digits `β ≤ α < p`; every denominator factor is a unit.
fn small_binomial_mod_prime(alpha: u64, beta: u64, p: u64) -> u64 {
    let k = beta.min(alpha - beta);
    let ring = super::ring::WordRing::new(p).expect("p ≥ 2");
    let terms = (1..=k).map(|i| (alpha - k + i, i));
    ratio_product(&ring, terms).expect("factors below a prime are units")
}

/// `C(a, b) mod p` by Lucas's theorem: the product of digit-wise binomials of
/// `a` and `b` written in base `p`.
pub fn lucas_binomial_mod_p(a: &Natural, b: &Natural, p: &Natural) -> Result<Natural> {
    let p_word = match p.to_u64() {
        Some(w) if is_prime_u64(w) => w,
        Some(_) => return Err(Error::NotPrime(p.clone())),
        None => return Err(Error::too_large("p", p, u64::MAX)),
    };
    if b > a {
        return Ok(Natural::zero());
    }
    let mut acc = 1u64 % p_word;
    let mut digits = BaseDigits::new(a.clone(), b.clone(), p_word);
    while let Some((alpha, beta)) = digits.next_pair() {
        if beta > alpha {
            return Ok(Natural::zero());
        }
        acc = (acc as u128 * small_binomial_mod_prime(alpha, beta, p_word) as u128 % p_word as u128)
            as u64;
        if acc == 0 {
            break;
        }
    }
    Ok(Natural::from(acc))
}

/// Simultaneous base-`p` digit extraction from two naturals, least significant first.
enum BaseDigits {
    Word(u64, u64, u64),
    Big(Natural, Natural, Natural),
}

impl BaseDigits {
    fn new(a: Natural, b: Natural, p: u64) -> Self {
        match (a.to_u64(), b.to_u64()) {
            (Some(a), Some(b)) => BaseDigits::Word(a, b, p),
            _ => BaseDigits::Big(a, b, Natural::from(p)),
        }
    }

    fn next_pair(&mut self) -> Option<(u64, u64)> {
        match self {
            BaseDigits::Word(a, b, p) => {
                if *a == 0 && *b == 0 {
                    return None;
                }
                let pair = (*a % *p, *b % *p);
                *a /= *p;
                *b /= *p;
                Some(pair)
            }
            BaseDigits::Big(a, b, p) => {
                if a.is_zero() && b.is_zero() {
                    return None;
                }
                let (qa, ra) = a.div_rem(p);
                let (qb, rb) = b.div_rem(p);
                *a = qa;
                *b = qb;
                Some((ra.to_u64().unwrap(), rb.to_u64().unwrap()))
            }
        }
    }
}

/// Chunk size for batch inversion; bounds memory for large `p`.
const INVERSION_CHUNK: u64 = 1 << 16;

/// `C(2p − 1, p − 1) mod pᵉ` as `∏_{k=1}^{p−1} (p + k)·k⁻¹`.
///
/// The inverses of `1..p−1` come from batch inversion, one ring inversion per
/// chunk of [`INVERSION_CHUNK`] terms.
pub fn shifted_central_binomial_mod_prime_power(p: &Natural, e: u32) -> Result<Natural> {
    let p_word = match p.to_u64() {
        Some(w) if is_prime_u64(w) => w,
        Some(_) => return Err(Error::NotPrime(p.clone())),
        None => return Err(Error::too_large("p", p, u64::MAX)),
    };
    if e == 0 {
        return Err(Error::Precondition("exponent e must be at least 1".into()));
    }
    let modulus = Modulus::new(&p.pow(e))?;
    let residue = with_ring!(&modulus, ring => {
        let mut acc = ring.one();
        let mut start = 1u64;
        while start < p_word {
            let end = (start + INVERSION_CHUNK).min(p_word);
            let ks: Vec<_> = (start..end).map(|k| ring.lift_u64(k)).collect();
            let inverses = batch_inverse(ring, &ks)
                .ok_or_else(|| Error::Internal(format!("k < {p_word} not a unit mod p^{e}")))?;
            for (k, inv) in (start..end).zip(&inverses) {
                let shifted = match p_word.checked_add(k) {
                    Some(v) => ring.lift_u64(v),
                    None => ring.lift(&(Natural::from(p_word) + k)),
                };
                acc = ring.mul(&acc, &ring.mul(&shifted, inv));
            }
            start = end;
        }
        ring.to_natural(&acc)
    });
    Ok(residue)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::nat;

    /// Row-by-row Pascal triangle, independent of the multiplicative formula.
    fn pascal(rows: usize) -> Vec<Vec<Natural>> {
        let mut tri: Vec<Vec<Natural>> = vec![vec![nat(1)]];
        for n in 1..=rows {
            let prev = &tri[n - 1];
            let mut row = vec![nat(1); n + 1];
            for k in 1..n {
                row[k] = &prev[k - 1] + &prev[k];
            }
            tri.push(row);
        }
        tri
    }

    #[test]
    fn exact_values() {
        assert_eq!(
            binomial_exact(&nat(270), &nat(10)).unwrap(),
            "479322759878148681".parse::<Natural>().unwrap()
        );
        assert_eq!(binomial_exact(&nat(9), &nat(4)).unwrap(), nat(126));
        assert_eq!(binomial_exact(&nat(17), &nat(0)).unwrap(), nat(1));
        assert_eq!(binomial_exact(&nat(0), &nat(0)).unwrap(), nat(1));
        assert_eq!(binomial_exact(&nat(3), &nat(6)).unwrap(), nat(0));
        assert_eq!(binomial_exact(&nat(262), &nat(2)).unwrap(), nat(34191));
    }

    #[test]
    fn exact_matches_pascal() {
        let tri = pascal(300);
        for (n, row) in tri.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                assert_eq!(&binomial_exact(&nat(n as u64), &nat(k as u64)).unwrap(), v);
            }
        }
    }

    #[test]
    fn exact_handles_huge_top_entry() {
        let a = nat(1) << 80;
        let expected = &a * (&a - 1u32) / 2u32;
        assert_eq!(binomial_exact(&a, &nat(2)).unwrap(), expected);
        assert!(matches!(
            binomial_exact(&a, &(nat(1) << 40)),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn modular_values() {
        assert_eq!(
            binomial_mod(&nat(270), &nat(10), &nat(260)).unwrap(),
            nat(1)
        );
        assert_eq!(binomial_mod(&nat(99), &nat(40), &nat(1)).unwrap(), nat(0));
        assert_eq!(
            binomial_mod(&nat(262), &nat(2), &nat(260)).unwrap(),
            nat(131)
        );
        assert_eq!(binomial_mod(&nat(1), &nat(2), &nat(7)).unwrap(), nat(0));
        assert_eq!(
            binomial_mod(&nat(5), &nat(2), &nat(0)),
            Err(Error::ZeroModulus)
        );
    }

    #[test]
    fn every_strategy_agrees_with_pascal() {
        let tri = pascal(120);
        for m in [2u64, 3, 4, 6, 7, 12, 25, 97, 210, 1024, 1_000_003] {
            for (n, row) in tri.iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    let (a, b, mm) = (nat(n as u64), nat(k as u64), nat(m));
                    let expect = v % &mm;
                    assert_eq!(binomial_mod(&a, &b, &mm).unwrap(), expect);
                    for s in [
                        BinomialStrategy::Lucas,
                        BinomialStrategy::InvertibleProduct,
                        BinomialStrategy::PrimeExponents,
                        BinomialStrategy::PrimePowerCrt,
                        BinomialStrategy::Exact,
                    ] {
                        match binomial_mod_with(&a, &b, &mm, s) {
                            Ok(r) => assert_eq!(r, expect, "C({n},{k}) mod {m} via {s:?}"),
                            Err(e) => assert!(e.is_domain(), "{e}"),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn strategy_preconditions_surface_as_errors() {
        assert_eq!(
            binomial_mod_with(&nat(10), &nat(3), &nat(9), BinomialStrategy::Lucas),
            Err(Error::NotPrime(nat(9)))
        );
        assert!(matches!(
            binomial_mod_with(
                &nat(10),
                &nat(3),
                &nat(6),
                BinomialStrategy::InvertibleProduct
            ),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn prime_power_residues() {
        let tri = pascal(150);
        for (p, k) in [
            (2u64, 1u32),
            (2, 5),
            (3, 4),
            (5, 2),
            (7, 3),
            (13, 2),
            (149, 2),
        ] {
            let pk = nat(p).pow(k);
            for (n, row) in tri.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    assert_eq!(
                        binomial_mod_prime_power(&nat(n as u64), &nat(j as u64), &nat(p), k)
                            .unwrap(),
                        v % &pk,
                        "C({n},{j}) mod {p}^{k}"
                    );
                }
            }
        }
        assert_eq!(
            binomial_mod_prime_power(&nat(10), &nat(3), &nat(4), 2),
            Err(Error::NotPrime(nat(4)))
        );
    }

    #[test]
    fn lucas_values() {
        assert_eq!(
            lucas_binomial_mod_p(&nat(10), &nat(6), &nat(7)).unwrap(),
            nat(0)
        );
        assert_eq!(
            lucas_binomial_mod_p(&nat(5), &nat(5), &nat(3)).unwrap(),
            nat(1)
        );
        for p in [2u64, 3, 5, 7, 11, 13, 101] {
            for n in 0..p {
                assert_eq!(
                    lucas_binomial_mod_p(&nat(p + n), &nat(n), &nat(p)).unwrap(),
                    nat(1)
                );
            }
        }
        assert_eq!(
            lucas_binomial_mod_p(&nat(10), &nat(3), &nat(8)),
            Err(Error::NotPrime(nat(8)))
        );
        // Digits pulled from a top entry beyond 64 bits.
        let a = (nat(1) << 70) + nat(5);
        assert_eq!(lucas_binomial_mod_p(&a, &nat(5), &nat(2)).unwrap(), nat(1));
    }

    #[test]
    fn shifted_central_values() {
        assert_eq!(
            shifted_central_binomial_mod_prime_power(&nat(5), 3).unwrap(),
            nat(1)
        );
        assert_eq!(
            shifted_central_binomial_mod_prime_power(&nat(7), 3).unwrap(),
            nat(1)
        );
        assert_eq!(
            shifted_central_binomial_mod_prime_power(&nat(5), 4).unwrap(),
            nat(126)
        );
        assert_eq!(
            shifted_central_binomial_mod_prime_power(&nat(2), 5).unwrap(),
            nat(3)
        );
        assert_eq!(
            shifted_central_binomial_mod_prime_power(&nat(9), 3),
            Err(Error::NotPrime(nat(9)))
        );
        assert!(shifted_central_binomial_mod_prime_power(&nat(5), 0).is_err());
    }

    #[test]
    fn factor_probe() {
        assert!(!has_factor_at_most(&nat(35), 4));
        assert!(has_factor_at_most(&nat(35), 5));
        assert!(has_factor_at_most(&nat(7), 7));
        assert!(!has_factor_at_most(&nat(7), 6));
        assert!(!has_factor_at_most(&nat(1), 10));
        let big = (nat(1) << 70) + nat(1);
        assert_eq!(
            has_factor_at_most(&big, 4),
            (2..=4u64).any(|d| (&big % d).is_zero())
        );
    }
}
