//! Decision procedure for fractional revival (FR) on abelian Cayley graphs.
//!
//! FR from `x` to `x + a` at time `t` requires `a` to be an involution, the
//! graph to be integral, and `exp(i t lambda_g)` to take one value on
//! `G_0 = {g : chi_a(g) = 1}` and another on `G_1 = {g : chi_a(g) = -1}`.
//! Writing `t = 2 pi T`, the second condition forces `T M_0` and `T M_1` to be
//! integers, where
//!
//! ```text
//! M_0 = gcd(d - lambda_g : g in G_0)
//! M_1 = gcd(lambda_{g_1} - lambda_g : g in G_1)
//! M   = gcd(M_0, M_1)
//! ```
//!
//! so every admissible time is `2 pi k / M`. With `delta = d - lambda_{g_1}`
//! the two phases differ by `2 pi k delta / M`, and the walk exhibits proper
//! FR (`alpha beta != 0`) exactly when `k delta mod M` avoids `0` and `M / 2`.
//! When `M = 0` both halves are constant and any time works; the engine then
//! uses `N = 4 |delta|`, which places the phase gap at `pi / 2`.
//!
//! Certificates ([`FrWitness`]) are exact: the time is the fraction `k / N`
//! of a full turn and the two phases are `N`-th roots of unity `w_N^rho0`
//! (on `G_0`) and `w_N^rho1` (on `G_1`).

use num_complex::Complex;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Float, FloatConst};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cayley::{spectrum, CayleyGraph, Spectrum};
use crate::error::{Error, Result};
use crate::group::GroupElement;

/// Partition of the character index set by the sign of `chi_a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionSplit {
    pub a: GroupElement,
    pub g0: Vec<GroupElement>,
    pub g1: Vec<GroupElement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Moduli {
    pub m0: u64,
    pub m1: u64,
    pub m: u64,
    /// Reference element of `G_1` (its lexicographic minimum).
    pub g1: GroupElement,
    /// `d - lambda_{g1}`.
    pub delta: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FrKind {
    #[serde(rename = "FR")]
    Fr,
    #[serde(rename = "PST")]
    Pst,
    #[serde(rename = "PERIODIC")]
    Periodic,
}

impl FrKind {
    /// Classifies the phase pair `(w_N^rho0, w_N^rho1)`.
    pub fn from_phases(rho0: u64, rho1: u64, modulus: u64) -> Self {
        let diff = (rho0 + modulus - rho1 % modulus) % modulus;
        if diff == 0 {
            FrKind::Periodic
        } else if 2 * diff == modulus {
            FrKind::Pst
        } else {
            FrKind::Fr
        }
    }
}

/// Exact certificate: at `t = 2 pi k / N`, `H(t) = alpha I + beta Q_a` with
/// `alpha +- beta = w_N^rho0, w_N^rho1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrWitness {
    pub a: GroupElement,
    pub k: u64,
    #[serde(rename = "modulus")]
    pub modulus: u64,
    pub rho0: u64,
    pub rho1: u64,
    pub kind: FrKind,
    /// Every `k` in `[1, N)` that gives proper FR at `2 pi k / N`.
    pub valid_k: Vec<u64>,
}

impl FrWitness {
    /// Builds a witness from raw phase data; `kind` follows from the phases.
    pub fn new(a: GroupElement, k: u64, modulus: u64, rho0: u64, rho1: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        let (rho0, rho1) = (rho0 % modulus, rho1 % modulus);
        Self {
            a,
            k,
            modulus,
            rho0,
            rho1,
            kind: FrKind::from_phases(rho0, rho1, modulus),
            valid_k: Vec::new(),
        }
    }

    /// `t / 2 pi = k / N`, reduced.
    pub fn turns(&self) -> Ratio<u64> {
        Ratio::new(self.k, self.modulus)
    }

    pub fn time<F: Float + FloatConst>(&self) -> F {
        F::TAU() * F::from(self.k).expect("k representable")
            / F::from(self.modulus).expect("N representable")
    }

    fn root<F: Float + FloatConst>(&self, rho: u64) -> Complex<F> {
        let theta = F::TAU() * F::from(rho).expect("rho representable")
            / F::from(self.modulus).expect("N representable");
        Complex::from_polar(F::one(), theta)
    }

    /// `(w_N^rho0 + w_N^rho1) / 2`.
    pub fn alpha<F: Float + FloatConst>(&self) -> Complex<F> {
        let two = F::one() + F::one();
        (self.root::<F>(self.rho0) + self.root::<F>(self.rho1)) / two
    }

    /// `(w_N^rho0 - w_N^rho1) / 2`.
    pub fn beta<F: Float + FloatConst>(&self) -> Complex<F> {
        let two = F::one() + F::one();
        (self.root::<F>(self.rho0) - self.root::<F>(self.rho1)) / two
    }

    pub fn is_fr(&self) -> bool {
        self.kind == FrKind::Fr
    }
}

/// `G_0` / `G_1` for an involution `a`.
pub fn split_by_involution(graph: &CayleyGraph, a: &GroupElement) -> Result<InvolutionSplit> {
    let grp = graph.group();
    if !grp.contains(a) {
        return Err(Error::InvalidElement {
            coords: a.coords().to_vec(),
            orders: grp.orders().to_vec(),
        });
    }
    let order = grp.element_order(a);
    if order != 2 {
        return Err(Error::NotAnInvolution {
            element: a.clone(),
            order,
        });
    }
    let (g0, g1) = grp
        .elements()
        .partition(|g| grp.character_exponent(a, g) == 0);
    Ok(InvolutionSplit {
        a: a.clone(),
        g0,
        g1,
    })
}

fn gcd_of(values: impl Iterator<Item = i64>) -> u64 {
    values.fold(0u64, |acc, v| acc.gcd(&v.unsigned_abs()))
}

/// `M_0`, `M_1`, `M` and `delta` for an integral spectrum.
pub fn compute_moduli(spec: &Spectrum, split: &InvolutionSplit) -> Result<Moduli> {
    let d = spec.degree() as i64;
    if !spec.is_integral() {
        return Err(Error::NonIntegralSpectrum);
    }
    let lam = |g: &GroupElement| spec.integer(g).expect("integral spectrum");
    let g1 = split
        .g1
        .iter()
        .min()
        .cloned()
        .expect("G_1 is a nonempty coset");
    let l1 = lam(&g1);
    let m0 = gcd_of(split.g0.iter().map(|g| d - lam(g)));
    let m1 = gcd_of(split.g1.iter().map(|g| l1 - lam(g)));
    Ok(Moduli {
        m0,
        m1,
        m: m0.gcd(&m1),
        g1,
        delta: d - l1,
    })
}

/// Phase profile of `H(2 pi k / N)` relative to the involution split:
/// `Some(kind)` when `exp(i t lambda)` is constant on each half.
pub fn classify_time(
    spec: &Spectrum,
    split: &InvolutionSplit,
    k: u64,
    modulus: u64,
) -> Option<FrKind> {
    let ints = spec.integers()?;
    if modulus == 0 {
        return None;
    }
    let grp = spec.group();
    let phase = |g: &GroupElement| -> u64 {
        let l = ints[grp.rank(g)] as i128;
        ((k as i128 * l).rem_euclid(modulus as i128)) as u64
    };
    let rho0 = phase(&split.g0[0]);
    let rho1 = phase(&split.g1[0]);
    let uniform =
        split.g0.iter().all(|g| phase(g) == rho0) && split.g1.iter().all(|g| phase(g) == rho1);
    uniform.then(|| FrKind::from_phases(rho0, rho1, modulus))
}

/// Precomputed spectrum for repeated FR queries on one graph.
#[derive(Debug, Clone)]
pub struct FrAnalyzer<'g> {
    graph: &'g CayleyGraph,
    spectrum: Spectrum,
}

/// Full result of analysing one involution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrDecision {
    pub split: InvolutionSplit,
    pub moduli: Moduli,
    pub witness: Option<FrWitness>,
}

impl<'g> FrAnalyzer<'g> {
    pub fn new(graph: &'g CayleyGraph) -> Result<Self> {
        Ok(Self {
            graph,
            spectrum: spectrum(graph)?,
        })
    }

    pub fn with_spectrum(graph: &'g CayleyGraph, spectrum: Spectrum) -> Self {
        Self { graph, spectrum }
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn graph(&self) -> &CayleyGraph {
        self.graph
    }

    /// Split, moduli and certificate for `a`; `None` when `a` is not an
    /// involution or the graph is not integral.
    pub fn analyze(&self, a: &GroupElement) -> Option<FrDecision> {
        let grp = self.graph.group();
        if grp.order() % 2 == 1 || !grp.contains(a) || grp.element_order(a) != 2 {
            return None;
        }
        if !self.spectrum.is_integral() {
            return None;
        }
        let split = split_by_involution(self.graph, a).ok()?;
        let moduli = compute_moduli(&self.spectrum, &split).ok()?;
        let witness = certificate(a, &moduli, self.spectrum.degree() as i64);
        Some(FrDecision {
            split,
            moduli,
            witness,
        })
    }

    pub fn decide(&self, a: &GroupElement) -> Option<FrWitness> {
        self.analyze(a).and_then(|d| d.witness)
    }

    /// True when `w` describes proper FR on this graph: the phases are
    /// constant on both halves at `2 pi k / N`, they differ by something other
    /// than `0` or `pi`, and (for `M > 0`) the time maps into the engine's
    /// valid set.
    pub fn confirms(&self, w: &FrWitness) -> bool {
        let Some(dec) = self.analyze(&w.a) else {
            return false;
        };
        if classify_time(&self.spectrum, &dec.split, w.k, w.modulus) != Some(FrKind::Fr) {
            return false;
        }
        let m = dec.moduli.m;
        if m == 0 {
            return true;
        }
        let scaled = w.k as u128 * m as u128;
        if !scaled.is_multiple_of(w.modulus as u128) {
            return false;
        }
        let k_engine = ((scaled / w.modulus as u128) % m as u128) as u64;
        dec.witness
            .is_some_and(|cert| cert.valid_k.contains(&k_engine))
    }

    /// [`Self::decide`] for every involution, in lexicographic order of `a`.
    pub fn search_all(&self) -> Vec<(GroupElement, FrWitness)> {
        self.graph
            .group()
            .involutions()
            .into_par_iter()
            .filter_map(|a| self.decide(&a).map(|w| (a, w)))
            .collect()
    }
}

fn certificate(a: &GroupElement, moduli: &Moduli, d: i64) -> Option<FrWitness> {
    let delta = moduli.delta;
    let modulus = if moduli.m > 0 {
        moduli.m
    } else if delta != 0 {
        4 * delta.unsigned_abs()
    } else {
        return None;
    };
    let l1 = d - delta;
    let n = modulus as i128;
    let phase = |k: u64, x: i64| ((k as i128 * x as i128).rem_euclid(n)) as u64;
    let kind_at = |k: u64| FrKind::from_phases(phase(k, d), phase(k, l1), modulus);

    let valid_k: Vec<u64> = (1..modulus).filter(|&k| kind_at(k) == FrKind::Fr).collect();
    let k = match valid_k.first() {
        Some(&k) => k,
        None => (1..modulus)
            .find(|&k| kind_at(k) == FrKind::Pst)
            .unwrap_or(1),
    };
    let mut w = FrWitness::new(a.clone(), k, modulus, phase(k, d), phase(k, l1));
    w.valid_k = valid_k;
    Some(w)
}

/// Certificate for FR between `x` and `x + a`, or `None`.
///
/// The returned witness may be of kind PST or PERIODIC when the phase analysis
/// admits no proper FR; only [`FrKind::Fr`] certifies `alpha beta != 0`.
pub fn decide_fr(graph: &CayleyGraph, a: &GroupElement) -> Result<Option<FrWitness>> {
    Ok(FrAnalyzer::new(graph)?.decide(a))
}

pub fn search_all(graph: &CayleyGraph) -> Result<Vec<(GroupElement, FrWitness)>> {
    Ok(FrAnalyzer::new(graph)?.search_all())
}
