//! Parametrised Cayley graphs that are predicted to exhibit FR.
//!
//! Every builder validates its own hypotheses and returns the graph together
//! with the *predicted* certificate. Nothing here checks the prediction; pass
//! it to [`crate::revival::FrAnalyzer::confirms`] or the numeric oracle.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, p_adic_valuation, prime_divisors};
use crate::boolean::{classify_boolean, support, BooleanClass, BooleanFunction};
use crate::cayley::{eigenvalue_at, spectrum, unit_closed, validate_connection_set, CayleyGraph};
use crate::error::{Error, Result};
use crate::group::{units_mod, FiniteAbelianGroup, GroupElement};
use crate::plateaued::{plateaued_level, GroupFunction, Plateau};
use crate::revival::{compute_moduli, split_by_involution, FrWitness};

/// A constructed graph and the certificate its family predicts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInstance {
    pub graph: CayleyGraph,
    pub prediction: FrWitness,
}

/// Wire format for the builders, tagged by `variant`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "variant", deny_unknown_fields)]
pub enum FamilySpec {
    #[serde(rename = "RAMANUJAN_A")]
    RamanujanA {
        p: u64,
        r: u32,
        #[serde(rename = "H", default)]
        h: Vec<u64>,
    },
    #[serde(rename = "MULTI_PRIME_B")]
    MultiPrimeB { prime_powers: Vec<(u64, u32)> },
    #[serde(rename = "PLATEAUED_C")]
    PlateauedC {
        #[serde(rename = "H")]
        h: Vec<u64>,
        #[serde(rename = "S1")]
        s1: Vec<Vec<u64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<u64>,
    },
    #[serde(rename = "CUBLIKE_D")]
    CublikeD {
        #[serde(rename = "S0")]
        s0: Vec<Vec<u64>>,
        #[serde(rename = "S1")]
        s1: Vec<Vec<u64>>,
    },
    #[serde(rename = "BENT_E")]
    BentE {
        f: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        vars: Option<u32>,
    },
}

impl FamilySpec {
    pub fn build(&self) -> Result<FamilyInstance> {
        match self {
            FamilySpec::RamanujanA { p, r, h } => build_ramanujan(*p, *r, h),
            FamilySpec::MultiPrimeB { prime_powers } => build_multi_prime(prime_powers),
            FamilySpec::PlateauedC { h, s1, p } => build_plateaued(h, s1, *p),
            FamilySpec::CublikeD { s0, s1 } => build_cublike(s0, s1),
            FamilySpec::BentE { f, vars } => build_bent(&BooleanFunction::from_hex(f, *vars)?),
        }
    }
}

/// `c(y, p^r) = sum_{l unit mod p^r} w^{l y}`, by its closed form.
pub fn ramanujan_sum(y: u64, p: u64, r: u32) -> i64 {
    assert!(r >= 1, "ramanujan_sum needs r >= 1");
    let q = p.pow(r);
    let y = y % q;
    let lower = p.pow(r - 1) as i64;
    if y == 0 {
        return lower * (p as i64 - 1);
    }
    let mut v = 0;
    let mut t = y;
    while t.is_multiple_of(p) {
        t /= p;
        v += 1;
    }
    if v == r - 1 {
        -lower
    } else {
        0
    }
}

/// Certificate at `2 pi k / N` for the split by `a`, using exact eigenvalues
/// of `0` and of the least element of the odd half.
fn predict(graph: &CayleyGraph, a: &GroupElement, k: u64, modulus: u64) -> Result<FrWitness> {
    let split = split_by_involution(graph, a)?;
    let g1 = split.g1.iter().min().expect("odd half is nonempty");
    let lam1 = eigenvalue_at(graph, g1)?
        .as_integer()?
        .ok_or(Error::NonIntegralSpectrum)?;
    let d = graph.degree() as i64;
    let n = modulus as i128;
    let phase = |x: i64| ((k as i128 * x as i128).rem_euclid(n)) as u64;
    let mut w = FrWitness::new(a.clone(), k, modulus, phase(d), phase(lam1));
    w.valid_k = vec![k];
    Ok(w)
}

fn excluded(n: u64) -> bool {
    matches!(n, 1 | 2 | 4)
}

/// `Z_2 + Z_{p^r} + H` with `S = {(0, l, h) : l unit, h in H} + {(1, 0, 0)}`;
/// predicted FR at `2 pi / (p^{r-1} |H|)` between `x` and `x + (1, 0, 0)`.
pub fn build_ramanujan(p: u64, r: u32, h: &[u64]) -> Result<FamilyInstance> {
    if !is_prime(p) || p == 2 {
        return Err(Error::ParameterDomain(format!(
            "p = {p} must be an odd prime"
        )));
    }
    if r == 0 {
        return Err(Error::ParameterDomain("r must be at least 1".into()));
    }
    let q = p
        .checked_pow(r)
        .ok_or_else(|| Error::ParameterDomain("p^r overflows".into()))?;
    // trivial H is the empty list
    let h_elements: Vec<Vec<u64>> = if h.is_empty() {
        vec![Vec::new()]
    } else {
        let h_group = FiniteAbelianGroup::new(h.to_vec())?;
        h_group.elements().map(GroupElement::into_coords).collect()
    };
    let m = h_elements.len() as u64;
    let modulus = p.pow(r - 1) * m;
    if excluded(modulus) {
        return Err(Error::ParameterDomain(format!(
            "p^(r-1) |H| = {modulus} lies in the excluded set {{1, 2, 4}}"
        )));
    }
    let mut orders = vec![2, q];
    orders.extend_from_slice(h);
    let group = FiniteAbelianGroup::new(orders)?;
    let mut set = Vec::new();
    for l in units_mod(q) {
        for hh in &h_elements {
            let mut c = vec![0, l];
            c.extend_from_slice(hh);
            set.push(group.element(c)?);
        }
    }
    let mut a = vec![0; group.num_factors()];
    a[0] = 1;
    let a = group.element(a)?;
    set.push(a.clone());
    let graph = CayleyGraph::new(group, set)?;
    let prediction = predict(&graph, &a, 1, modulus)?;
    Ok(FamilyInstance { graph, prediction })
}

/// `Z_{2^{r_0}} + Z_{p_1^{r_1}} + ...` with `S` the tuples of units plus
/// `(2^{r_0 - 1}, 0, ..., 0)`; predicted FR at `2 pi / prod p_i^{r_i - 1}`.
pub fn build_multi_prime(prime_powers: &[(u64, u32)]) -> Result<FamilyInstance> {
    if prime_powers.len() < 2 {
        return Err(Error::ParameterDomain(
            "need the prime 2 and at least one odd prime".into(),
        ));
    }
    if prime_powers[0].0 != 2 {
        return Err(Error::ParameterDomain("the first prime must be 2".into()));
    }
    let mut seen = BTreeSet::new();
    let mut orders = Vec::with_capacity(prime_powers.len());
    let mut modulus = 1u64;
    for &(p, r) in prime_powers {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r == 0 {
            return Err(Error::ParameterDomain(format!(
                "exponent of {p} must be at least 1"
            )));
        }
        if !seen.insert(p) {
            return Err(Error::ParameterDomain(format!("prime {p} repeated")));
        }
        let q = p
            .checked_pow(r)
            .ok_or_else(|| Error::ParameterDomain("prime power overflows".into()))?;
        orders.push(q);
        modulus *= p.pow(r - 1);
    }
    if excluded(modulus) {
        return Err(Error::ParameterDomain(format!(
            "prod p_i^(r_i-1) = {modulus} lies in the excluded set {{1, 2, 4}}"
        )));
    }
    let group = FiniteAbelianGroup::new(orders.clone())?;
    let unit_lists: Vec<Vec<u64>> = orders.iter().map(|&q| units_mod(q)).collect();
    let mut set = Vec::new();
    let mut idx = vec![0usize; unit_lists.len()];
    'outer: loop {
        set.push(group.element(idx.iter().zip(&unit_lists).map(|(&i, u)| u[i]).collect())?);
        let mut s = idx.len();
        loop {
            if s == 0 {
                break 'outer;
            }
            s -= 1;
            idx[s] += 1;
            if idx[s] < unit_lists[s].len() {
                break;
            }
            idx[s] = 0;
        }
    }
    let mut a = vec![0; orders.len()];
    a[0] = orders[0] / 2;
    let a = group.element(a)?;
    set.push(a.clone());
    let graph = CayleyGraph::new(group, set)?;
    let prediction = predict(&graph, &a, 1, modulus)?;
    Ok(FamilyInstance { graph, prediction })
}

/// `Z_2 + H` with `S = (1, S_1) + (0, S_1) + {(1, 0)}`, where the indicator
/// of `S_1` is `p^r`-plateaued and `p` divides `|S_1|`; predicted FR at
/// `pi / p^{min(r, v_p(|S_1|))}`. Without an explicit `p`, the smallest prime
/// divisor of `|S_1|` that works is used.
pub fn build_plateaued(h: &[u64], s1: &[Vec<u64>], p: Option<u64>) -> Result<FamilyInstance> {
    let h_group = FiniteAbelianGroup::new(h.to_vec())?;
    let s1 = s1
        .iter()
        .map(|c| h_group.element(c.clone()))
        .collect::<Result<BTreeSet<_>>>()?;
    if s1.iter().any(GroupElement::is_zero) {
        return Err(Error::Hypothesis("S1 contains the identity".into()));
    }
    let s1_set = validate_connection_set(s1.iter().cloned(), &h_group).map_err(|e| match e {
        Error::AsymmetricSet { .. } => Error::Hypothesis("S1 is not closed under units".into()),
        other => other,
    })?;
    if !unit_closed(&s1_set, &h_group) {
        return Err(Error::Hypothesis("S1 is not closed under units".into()));
    }
    let d = s1.len() as u64;
    if d == 0 {
        return Err(Error::Hypothesis("S1 is empty".into()));
    }
    let indicator = GroupFunction::indicator(h_group.clone(), &s1)?;
    let (p, plateau) = match p {
        Some(p) => {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if !d.is_multiple_of(p) {
                return Err(Error::Hypothesis(format!(
                    "p = {p} does not divide |S1| = {d}"
                )));
            }
            let plateau = plateaued_level(&indicator, p)?.ok_or_else(|| {
                Error::Hypothesis(format!(
                    "indicator of S1 is not {p}^r-plateaued for any r >= 1"
                ))
            })?;
            (p, plateau)
        }
        None => prime_divisors(d)
            .into_iter()
            .find_map(|p| match plateaued_level(&indicator, p) {
                Ok(Some(pl)) => Some(Ok((p, pl))),
                Ok(None) => None,
                Err(e) => Some(Err(e)),
            })
            .transpose()?
            .ok_or_else(|| {
                Error::Hypothesis(format!(
                    "no prime dividing |S1| = {d} makes the indicator of S1 plateaued"
                ))
            })?,
    };
    let Plateau { r, .. } = plateau;
    let r0 = r.min(p_adic_valuation(d as i64, p)?);
    let modulus = 2 * p.pow(r0);

    let mut orders = vec![2];
    orders.extend_from_slice(h);
    let group = FiniteAbelianGroup::new(orders)?;
    let lift = |top: u64, g: &GroupElement| {
        let mut c = vec![top];
        c.extend_from_slice(g.coords());
        group.element(c)
    };
    let mut set = Vec::new();
    for s in &s1 {
        set.push(lift(0, s)?);
        set.push(lift(1, s)?);
    }
    let a = lift(1, &h_group.zero())?;
    set.push(a.clone());
    let graph = CayleyGraph::new(group, set)?;
    let prediction = predict(&graph, &a, 1, modulus)?;
    Ok(FamilyInstance { graph, prediction })
}

fn v2_or_infinite(x: i64) -> Option<u32> {
    if x == 0 {
        None
    } else {
        Some(p_adic_valuation(x, 2).expect("2 is prime"))
    }
}

/// `F_2^n` with `S = (0, S_0) + (1, S_1) + {(1, 0)}` for `S_0, S_1` in
/// `F_2^{n-1}`. Requires `v_2(d_0 + d_1)` and `v_2(d_0 - d_1)` to be at least
/// 3 (zero has infinite valuation) and the engine modulus `M` to be at least
/// 8; predicted FR at `2 pi / 2^kappa` with
/// `kappa = min(v_2(M), v_2(d_0 + d_1), v_2(d_0 - d_1))`.
pub fn build_cublike(s0: &[Vec<u64>], s1: &[Vec<u64>]) -> Result<FamilyInstance> {
    let width = s0
        .iter()
        .chain(s1)
        .map(Vec::len)
        .next()
        .ok_or_else(|| Error::Hypothesis("S0 and S1 are both empty".into()))?;
    if width == 0 || s0.iter().chain(s1).any(|c| c.len() != width) {
        return Err(Error::ParameterDomain(
            "all vectors in S0 and S1 must share one positive length".into(),
        ));
    }
    let half = FiniteAbelianGroup::elementary_two_group(width)?;
    let parse = |raw: &[Vec<u64>]| -> Result<BTreeSet<GroupElement>> {
        raw.iter().map(|c| half.element(c.clone())).collect()
    };
    let (s0, s1) = (parse(s0)?, parse(s1)?);
    if s0.iter().any(GroupElement::is_zero) {
        return Err(Error::Hypothesis("S0 contains the zero vector".into()));
    }
    if s1.iter().any(GroupElement::is_zero) {
        return Err(Error::Hypothesis("S1 contains the zero vector".into()));
    }
    let (d0, d1) = (s0.len() as i64, s1.len() as i64);
    let vsum = v2_or_infinite(d0 + d1);
    let vdiff = v2_or_infinite(d0 - d1);
    for (label, v) in [("d0 + d1", vsum), ("d0 - d1", vdiff)] {
        if let Some(v) = v {
            if v < 3 {
                return Err(Error::Hypothesis(format!(
                    "v_2({label}) = {v} is below 3 (d0 = {d0}, d1 = {d1})"
                )));
            }
        }
    }

    let group = FiniteAbelianGroup::elementary_two_group(width + 1)?;
    let lift = |top: u64, g: &GroupElement| {
        let mut c = vec![top];
        c.extend_from_slice(g.coords());
        group.element(c)
    };
    let mut set = Vec::new();
    for s in &s0 {
        set.push(lift(0, s)?);
    }
    for s in &s1 {
        set.push(lift(1, s)?);
    }
    let a = lift(1, &half.zero())?;
    set.push(a.clone());
    let graph = CayleyGraph::new(group, set)?;

    let spec = spectrum(&graph)?;
    let moduli = compute_moduli(&spec, &split_by_involution(&graph, &a)?)?;
    let vm = if moduli.m == 0 {
        None
    } else {
        if moduli.m < 8 {
            return Err(Error::Hypothesis(format!(
                "modulus M = {} is below 8",
                moduli.m
            )));
        }
        Some(p_adic_valuation(moduli.m as i64, 2)?)
    };
    let kappa = [vm, vsum, vdiff]
        .into_iter()
        .flatten()
        .min()
        .ok_or_else(|| Error::Hypothesis("every valuation is infinite".into()))?;
    if kappa >= 63 {
        return Err(Error::ParameterDomain("2^kappa overflows".into()));
    }
    let prediction = predict(&graph, &a, 1, 1 << kappa)?;
    Ok(FamilyInstance { graph, prediction })
}

/// `F_2^{n+1}` with `S = {(1, 0)} + {(0, s)} + {(1, s)}` over `s` in the
/// support of a bent or semi-bent `f` on `F_2^{2k}`; predicted FR at
/// `pi / 2^k` (bent) or `pi / 2^{k+1}` (semi-bent).
pub fn build_bent(f: &BooleanFunction) -> Result<FamilyInstance> {
    let n = f.vars();
    if n < 4 || n % 2 == 1 {
        return Err(Error::ParameterDomain(format!(
            "arity must be even and at least 4, got {n}"
        )));
    }
    let exponent = match classify_boolean(f) {
        BooleanClass::Bent => n / 2 + 1,
        BooleanClass::SemiBent => n / 2 + 2,
        BooleanClass::Neither => {
            return Err(Error::Hypothesis(
                "function is neither bent nor semi-bent".into(),
            ))
        }
    };
    if f.value(0) {
        return Err(Error::Hypothesis("f(0) = 1 puts the identity in S".into()));
    }
    let group = FiniteAbelianGroup::elementary_two_group(n as usize + 1)?;
    let lift = |top: u64, g: &GroupElement| {
        let mut c = vec![top];
        c.extend_from_slice(g.coords());
        group.element(c)
    };
    let supp = support(f);
    let mut set = Vec::with_capacity(2 * supp.len() + 1);
    for s in &supp {
        set.push(lift(0, s)?);
        set.push(lift(1, s)?);
    }
    let a = lift(1, &GroupElement::from_coords(vec![0; n as usize]))?;
    set.push(a.clone());
    let graph = CayleyGraph::new(group, set)?;
    let prediction = predict(&graph, &a, 1, 1 << exponent)?;
    Ok(FamilyInstance { graph, prediction })
}
