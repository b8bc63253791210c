//! Exact arithmetic in `Z[w_e]`, the ring of integer combinations of `e`-th
//! roots of unity.
//!
//! Elements are dense multiplicity vectors over the powers `w_e^0 .. w_e^{e-1}`.
//! Deciding whether such a sum is a rational integer is done by reducing it
//! modulo the cyclotomic polynomial `Phi_e`: the reduced representative has
//! degree below `phi(e)` and is unique, so the sum is an integer exactly when
//! everything above the constant term vanishes.
//!
//! The coefficient type is generic ([`Coefficient`]); all arithmetic is
//! checked and overflow surfaces as [`Error::Overflow`].

use std::collections::HashMap;
use std::fmt::Debug;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex;
use num_integer::Integer;
use num_traits::{
    CheckedAdd, CheckedMul, CheckedSub, Float, FloatConst, FromPrimitive, Signed, ToPrimitive,
};

use crate::error::{Error, Result};

/// Exact signed integer usable as a cyclotomic coefficient.
///
/// Implemented for every type with checked ring operations, e.g. `i64`,
/// `i128` and `num_bigint::BigInt`.
pub trait Coefficient:
    Clone
    + Debug
    + Eq
    + Signed
    + Integer
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
{
}

impl<T> Coefficient for T where
    T: Clone
        + Debug
        + Eq
        + Signed
        + Integer
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
{
}

/// Integer polynomial, little-endian coefficients, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// `x^e - 1`.
    pub fn x_pow_minus_one(e: usize) -> Self {
        let mut c = vec![0; e + 1];
        c[0] = -1;
        c[e] = 1;
        Self::new(c)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Ok(Self::new(Vec::new()));
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                let p = a.checked_mul(b).ok_or(Error::Overflow)?;
                out[i + j] = out[i + j].checked_add(p).ok_or(Error::Overflow)?;
            }
        }
        Ok(Self::new(out))
    }

    /// Exact quotient by a monic divisor. Returns `None` if the division
    /// leaves a remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Option<Self>> {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok(rem.iter().all(|&c| c == 0).then(|| Self::new(Vec::new())));
        }
        let mut quot = vec![0i64; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k];
            if c == 0 {
                continue;
            }
            quot[k - dd] = c;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                let p = c.checked_mul(b).ok_or(Error::Overflow)?;
                rem[k - dd + j] = rem[k - dd + j].checked_sub(p).ok_or(Error::Overflow)?;
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return Ok(None);
        }
        Ok(Some(Self::new(quot)))
    }
}

fn phi_cache() -> &'static Mutex<HashMap<u64, Arc<IntPolynomial>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<IntPolynomial>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `e`-th cyclotomic polynomial, computed as `(x^e - 1) / prod_{d | e, d < e} Phi_d`.
///
/// Results are memoised process-wide.
pub fn cyclotomic_polynomial(e: u64) -> Result<Arc<IntPolynomial>> {
    if e == 0 {
        return Err(Error::Cyclotomic("modulus must be at least 1".into()));
    }
    if let Some(p) = phi_cache().lock().expect("cache poisoned").get(&e) {
        return Ok(Arc::clone(p));
    }
    let mut poly = IntPolynomial::x_pow_minus_one(e as usize);
    for d in (1..e).filter(|d| e.is_multiple_of(*d)) {
        let phi_d = cyclotomic_polynomial(d)?;
        poly = poly
            .div_exact(&phi_d)?
            .expect("Phi_d divides x^e - 1 for every d | e");
    }
    let poly = Arc::new(poly);
    phi_cache()
        .lock()
        .expect("cache poisoned")
        .insert(e, Arc::clone(&poly));
    Ok(poly)
}

/// Euler's totient.
pub fn euler_phi(mut e: u64) -> u64 {
    let mut result = e;
    let mut p = 2;
    while p * p <= e {
        if e.is_multiple_of(p) {
            while e.is_multiple_of(p) {
                e /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if e > 1 {
        result -= result / e;
    }
    result
}

/// `sum_k counts[k] * w_e^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootOfUnitySum<C> {
    modulus: u64,
    counts: Vec<C>,
}

impl<C: Coefficient> RootOfUnitySum<C> {
    pub fn zero(modulus: u64) -> Self {
        assert!(modulus >= 1, "root-of-unity modulus must be at least 1");
        Self {
            modulus,
            counts: vec![C::zero(); modulus as usize],
        }
    }

    pub fn from_counts(modulus: u64, counts: Vec<C>) -> Result<Self> {
        if modulus == 0 || counts.len() as u64 != modulus {
            return Err(Error::Cyclotomic(format!(
                "expected {modulus} counts, got {}",
                counts.len()
            )));
        }
        Ok(Self { modulus, counts })
    }

    /// The integer `c` viewed in `Z[w_e]`.
    pub fn constant(modulus: u64, c: C) -> Self {
        let mut v = Self::zero(modulus);
        v.counts[0] = c;
        v
    }

    /// `w_e^k`.
    pub fn root(modulus: u64, k: u64) -> Self {
        let mut v = Self::zero(modulus);
        v.counts[(k % modulus) as usize] = C::one();
        v
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn counts(&self) -> &[C] {
        &self.counts
    }

    /// Adds `c * w_e^k` in place.
    pub fn add_term(&mut self, k: u64, c: &C) -> Result<()> {
        let slot = &mut self.counts[(k % self.modulus) as usize];
        *slot = slot.checked_add(c).ok_or(Error::Overflow)?;
        Ok(())
    }

    /// Adds `w_e^k` in place.
    pub fn add_root(&mut self, k: u64) -> Result<()> {
        self.add_term(k, &C::one())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::Cyclotomic(format!(
                "modulus mismatch: {} vs {}",
                self.modulus, other.modulus
            )));
        }
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(a, b)| a.checked_add(b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            modulus: self.modulus,
            counts,
        })
    }

    /// Image under the Galois automorphism `w_e -> w_e^l`.
    pub fn galois(&self, l: u64) -> Self {
        let mut out = Self::zero(self.modulus);
        for (k, c) in self.counts.iter().enumerate() {
            if !c.is_zero() {
                let idx = ((k as u128 * l as u128) % self.modulus as u128) as usize;
                out.counts[idx] = out.counts[idx].clone() + c.clone();
            }
        }
        out
    }

    /// Complex conjugate, `w_e^k -> w_e^{-k}`.
    pub fn conj(&self) -> Self {
        self.galois(self.modulus - 1)
    }

    /// Canonical representative modulo `Phi_e`: entries at indices
    /// `>= phi(e)` are zero. The represented complex number is unchanged.
    pub fn reduce(&self) -> Result<Self> {
        let phi = cyclotomic_polynomial(self.modulus)?;
        let deg = phi.degree().expect("cyclotomic polynomials are nonzero");
        let phi_coeffs: Vec<C> = phi
            .coeffs()
            .iter()
            .map(|&c| C::from_i64(c).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
        let mut counts = self.counts.clone();
        for k in (deg..counts.len()).rev() {
            if counts[k].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut counts[k], C::zero());
            // counts[k] * x^k == c * x^{k-deg} * (x^deg - (Phi - x^deg))
            for (j, b) in phi_coeffs[..deg].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = c.checked_mul(b).ok_or(Error::Overflow)?;
                let slot = &mut counts[k - deg + j];
                *slot = slot.checked_sub(&p).ok_or(Error::Overflow)?;
            }
        }
        Ok(Self {
            modulus: self.modulus,
            counts,
        })
    }

    /// The value as an integer, if it is one.
    pub fn as_integer(&self) -> Result<Option<C>> {
        let r = self.reduce()?;
        if r.counts[1..].iter().all(|c| c.is_zero()) {
            Ok(Some(r.counts[0].clone()))
        } else {
            Ok(None)
        }
    }

    pub fn is_exact_zero(&self) -> Result<bool> {
        Ok(self.reduce()?.counts.iter().all(|c| c.is_zero()))
    }

    /// Floating-point evaluation `sum_k counts[k] * exp(2 pi i k / e)`.
    pub fn approx<F: Float + FloatConst>(&self) -> Complex<F> {
        let e = F::from(self.modulus).expect("modulus representable");
        let mut acc = Complex::new(F::zero(), F::zero());
        for (k, c) in self.counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let w = F::from(c.to_f64().expect("coefficient representable as f64"))
                .expect("coefficient representable");
            let theta = F::TAU() * F::from(k).expect("index representable") / e;
            acc = acc + Complex::from_polar(w, theta);
        }
        acc
    }
}
