//! Residue rings `Z/mZ` behind one trait.
//!
//! Three representations share the [`ResidueRing`] interface:
//!
//! - [`WordRing`]: plain residues in a `u64`, products reduced through `u128`.
//! - [`MontgomeryRing`]: odd moduli below 2⁶³ in Montgomery form, which
//!   replaces the 128-bit division in every product with two multiplications.
//! - [`BigRing`]: arbitrary-precision residues for anything wider.
//!
//! [`Modulus::new`] picks the cheapest representation for a given modulus and
//! the [`with_ring!`](crate::with_ring) macro monomorphizes a generic body over it.

use num_traits::{One, ToPrimitive, Zero};

use super::bezout::{mod_inverse, mod_inverse_u64};
use super::Natural;
use crate::error::{Error, Result};

pub trait ResidueRing {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn modulus(&self) -> Natural;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn lift_u64(&self, v: u64) -> Self::Elem;
    fn lift(&self, v: &Natural) -> Self::Elem;
    fn to_natural(&self, a: &Self::Elem) -> Natural;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn pow(&self, base: &Self::Elem, mut exp: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut sq = base.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            exp >>= 1;
            if exp > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }
}

/// Residues modulo a machine-word modulus.
#[derive(Debug, Clone, Copy)]
pub struct WordRing {
    m: u64,
}

impl WordRing {
    pub fn new(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroModulus);
        }
        Ok(Self { m })
    }

    #[inline]
    pub fn modulus_u64(&self) -> u64 {
        self.m
    }
}

impl ResidueRing for WordRing {
    type Elem = u64;

    fn modulus(&self) -> Natural {
        Natural::from(self.m)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.m
    }
    #[inline]
    fn lift_u64(&self, v: u64) -> u64 {
        v % self.m
    }
    fn lift(&self, v: &Natural) -> u64 {
        (v % self.m).to_u64().expect("residue below a u64 modulus")
    }
    fn to_natural(&self, a: &u64) -> Natural {
        Natural::from(*a)
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        if self.m <= u32::MAX as u64 {
            a * b % self.m
        } else {
            (*a as u128 * *b as u128 % self.m as u128) as u64
        }
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let (s, overflow) = a.overflowing_add(*b);
        if overflow || s >= self.m {
            s.wrapping_sub(self.m)
        } else {
            s
        }
    }
    fn inverse(&self, a: &u64) -> Option<u64> {
        mod_inverse_u64(*a, self.m)
    }
}

/// Montgomery-form residues for an odd modulus `1 < n < 2⁶³`, with `R = 2⁶⁴`.
#[derive(Debug, Clone, Copy)]
pub struct MontgomeryRing {
    n: u64,
    /// `-n⁻¹ mod 2⁶⁴`
    n_neg_inv: u64,
    /// `R² mod n`
    r2: u64,
}

impl MontgomeryRing {
    pub const MAX_MODULUS: u64 = 1 << 63;

    pub fn new(n: u64) -> Option<Self> {
        if n.is_multiple_of(2) || !(3..Self::MAX_MODULUS).contains(&n) {
            return None;
        }
        // Newton iteration doubles the number of correct low bits each round.
        let mut inv: u64 = n;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(n.wrapping_mul(inv)));
        }
        debug_assert_eq!(n.wrapping_mul(inv), 1);
        let r_mod = ((1u128 << 64) % n as u128) as u64;
        let r2 = (r_mod as u128 * r_mod as u128 % n as u128) as u64;
        Some(Self {
            n,
            n_neg_inv: inv.wrapping_neg(),
            r2,
        })
    }

    #[inline(always)]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.n_neg_inv);
        // t < n·2⁶⁴ and n < 2⁶³, so the sum stays below 2¹²⁸.
        let u = ((t + m as u128 * self.n as u128) >> 64) as u64;
        if u >= self.n {
            u - self.n
        } else {
            u
        }
    }
}

impl ResidueRing for MontgomeryRing {
    type Elem = u64;

    fn modulus(&self) -> Natural {
        Natural::from(self.n)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        self.lift_u64(1)
    }
    #[inline]
    fn lift_u64(&self, v: u64) -> u64 {
        self.redc((v % self.n) as u128 * self.r2 as u128)
    }
    fn lift(&self, v: &Natural) -> u64 {
        self.lift_u64((v % self.n).to_u64().expect("residue below a u64 modulus"))
    }
    fn to_natural(&self, a: &u64) -> Natural {
        Natural::from(self.redc(*a as u128))
    }
    #[inline(always)]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.redc(*a as u128 * *b as u128)
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        // Both below n < 2⁶³, so the sum cannot overflow.
        let s = a + b;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }
    fn inverse(&self, a: &u64) -> Option<u64> {
        let plain = self.redc(*a as u128);
        mod_inverse_u64(plain, self.n).map(|v| self.lift_u64(v))
    }
}

/// Arbitrary-precision residues.
#[derive(Debug, Clone)]
pub struct BigRing {
    m: Natural,
}

impl BigRing {
    pub fn new(m: Natural) -> Result<Self> {
        if m.is_zero() {
            return Err(Error::ZeroModulus);
        }
        Ok(Self { m })
    }
}

impl ResidueRing for BigRing {
    type Elem = Natural;

    fn modulus(&self) -> Natural {
        self.m.clone()
    }
    fn zero(&self) -> Natural {
        Natural::zero()
    }
    fn one(&self) -> Natural {
        Natural::one() % &self.m
    }
    fn lift_u64(&self, v: u64) -> Natural {
        Natural::from(v) % &self.m
    }
    fn lift(&self, v: &Natural) -> Natural {
        v % &self.m
    }
    fn to_natural(&self, a: &Natural) -> Natural {
        a.clone()
    }
    fn mul(&self, a: &Natural, b: &Natural) -> Natural {
        a * b % &self.m
    }
    fn add(&self, a: &Natural, b: &Natural) -> Natural {
        let s = a + b;
        if s >= self.m {
            s - &self.m
        } else {
            s
        }
    }
    fn inverse(&self, a: &Natural) -> Option<Natural> {
        mod_inverse(a, &self.m)
    }
}

/// The cheapest available representation for a modulus.
#[derive(Debug, Clone)]
pub enum Modulus {
    Word(WordRing),
    Montgomery(MontgomeryRing),
    Big(BigRing),
}

impl Modulus {
    pub fn new(m: &Natural) -> Result<Self> {
        match m.to_u64() {
            Some(0) => Err(Error::ZeroModulus),
            Some(w) => Ok(match MontgomeryRing::new(w) {
                Some(mont) => Modulus::Montgomery(mont),
                None => Modulus::Word(WordRing::new(w)?),
            }),
            None => Ok(Modulus::Big(BigRing::new(m.clone())?)),
        }
    }

    /// Same as [`Modulus::new`] but never selects Montgomery form.
    pub fn plain(m: &Natural) -> Result<Self> {
        match m.to_u64() {
            Some(w) => Ok(Modulus::Word(WordRing::new(w)?)),
            None => Ok(Modulus::Big(BigRing::new(m.clone())?)),
        }
    }
}

/// Expands `$body` once per ring representation, binding the ring to `$ring`.
#[macro_export]
macro_rules! with_ring {
    ($modulus:expr, $ring:ident => $body:expr) => {
        match $modulus {
            $crate::arith::ring::Modulus::Word($ring) => $body,
            $crate::arith::ring::Modulus::Montgomery($ring) => $body,
            $crate::arith::ring::Modulus::Big($ring) => $body,
        }
    };
}

/// Inverts every element with a single ring inversion.
///
/// Prefix products `c_i = x_0⋯x_i` are accumulated, `c_{n-1}` is inverted once,
/// and the individual inverses are peeled off walking backwards. Returns `None`
/// if any element is not a unit.
pub fn batch_inverse<R: ResidueRing>(ring: &R, values: &[R::Elem]) -> Option<Vec<R::Elem>> {
    if values.is_empty() {
        return Some(Vec::new());
    }
    let mut prefix = Vec::with_capacity(values.len());
    let mut acc = ring.one();
    for v in values {
        acc = ring.mul(&acc, v);
        prefix.push(acc.clone());
    }
    let mut inv_acc = ring.inverse(&acc)?;
    let mut out = vec![ring.zero(); values.len()];
    for i in (1..values.len()).rev() {
        out[i] = ring.mul(&inv_acc, &prefix[i - 1]);
        inv_acc = ring.mul(&inv_acc, &values[i]);
    }
    out[0] = inv_acc;
    Some(out)
}

/// `∏ numᵢ · (∏ denᵢ)⁻¹`, with one inversion at the end.
///
/// Returns `None` when the denominator product is not a unit.
pub fn ratio_product<R, I>(ring: &R, terms: I) -> Option<R::Elem>
where
    R: ResidueRing,
    I: IntoIterator<Item = (R::Elem, R::Elem)>,
{
    let mut num = ring.one();
    let mut den = ring.one();
    for (n, d) in terms {
        num = ring.mul(&num, &n);
        den = ring.mul(&den, &d);
    }
    Some(ring.mul(&num, &ring.inverse(&den)?))
}
