//! JSON documents exchanged by the command-line tool.
//!
//! Floats are written by `serde_json`'s shortest round-trip formatting, so
//! identical inputs give byte-identical output and every float parses back
//! to the same `f64`.

use serde::{Deserialize, Serialize};

use crate::boolean::{
    classify_boolean, eigenvalues_from_walsh, support, walsh_transform, BooleanClass,
    BooleanFunction,
};
use crate::cayley::{spectrum, CayleyGraph};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::plateaued::{
    fourier_integers, is_class_function, plateaued_level, GroupFunction, Plateau,
};
use crate::revival::{FrAnalyzer, FrKind, FrWitness, Moduli};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

impl From<num_complex::Complex<f64>> for ComplexJson {
    fn from(c: num_complex::Complex<f64>) -> Self {
        Self { re: c.re, im: c.im }
    }
}

/// Certificate file. The exact fields (`a`, `k`, `modulus`, `rho0`, `rho1`)
/// are authoritative; `alpha`, `beta` and `t` are conveniences and are
/// checked for consistency on load.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub a: GroupElement,
    pub kind: FrKind,
    pub k: u64,
    pub modulus: u64,
    pub rho0: u64,
    pub rho1: u64,
    pub valid_k: Vec<u64>,
    pub alpha: ComplexJson,
    pub beta: ComplexJson,
    /// `2 pi k / modulus`.
    pub t: f64,
}

const CONSISTENCY_TOL: f64 = 1e-9;

impl Certificate {
    pub fn from_witness(w: &FrWitness) -> Self {
        Self {
            a: w.a.clone(),
            kind: w.kind,
            k: w.k,
            modulus: w.modulus,
            rho0: w.rho0,
            rho1: w.rho1,
            valid_k: w.valid_k.clone(),
            alpha: w.alpha::<f64>().into(),
            beta: w.beta::<f64>().into(),
            t: w.time::<f64>(),
        }
    }

    /// Rebuilds the exact witness, rejecting internally inconsistent files.
    pub fn to_witness(&self) -> Result<FrWitness> {
        if self.modulus == 0 {
            return Err(Error::Cyclotomic(
                "certificate modulus must be positive".into(),
            ));
        }
        let mut w = FrWitness::new(self.a.clone(), self.k, self.modulus, self.rho0, self.rho1);
        if w.rho0 != self.rho0 || w.rho1 != self.rho1 {
            return Err(Error::Cyclotomic("phases must lie in [0, modulus)".into()));
        }
        if w.kind != self.kind {
            return Err(Error::Cyclotomic(format!(
                "kind {:?} does not match the phases ({:?})",
                self.kind, w.kind
            )));
        }
        let close = |x: ComplexJson, y: ComplexJson| {
            (x.re - y.re).abs() < CONSISTENCY_TOL && (x.im - y.im).abs() < CONSISTENCY_TOL
        };
        if !close(self.alpha, w.alpha::<f64>().into())
            || !close(self.beta, w.beta::<f64>().into())
            || (self.t - w.time::<f64>()).abs() > CONSISTENCY_TOL
        {
            return Err(Error::Cyclotomic(
                "alpha, beta or t disagree with the exact phases".into(),
            ));
        }
        w.valid_k = self.valid_k.clone();
        Ok(w)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Eigenvalues {
    Integers(Vec<i64>),
    /// Real parts, when the spectrum is not integral.
    Approx(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub group: Vec<u64>,
    pub degree: usize,
    pub connected: bool,
    pub integral: bool,
    /// In element rank order.
    pub eigenvalues: Eigenvalues,
}

pub fn spectrum_report(graph: &CayleyGraph) -> Result<SpectrumReport> {
    let spec = spectrum(graph)?;
    let eigenvalues = match spec.integers() {
        Some(ints) => Eigenvalues::Integers(ints.to_vec()),
        None => Eigenvalues::Approx(spec.approx::<f64>()),
    };
    Ok(SpectrumReport {
        group: graph.group().orders().to_vec(),
        degree: graph.degree(),
        connected: graph.is_connected(),
        integral: spec.is_integral(),
        eigenvalues,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvolutionResult {
    pub a: GroupElement,
    pub moduli: Moduli,
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub group: Vec<u64>,
    pub connected: bool,
    pub integral: bool,
    /// One entry per involution, in lexicographic order.
    pub results: Vec<InvolutionResult>,
}

impl SearchReport {
    pub fn has_fr(&self) -> bool {
        self.results
            .iter()
            .any(|r| r.certificate.as_ref().is_some_and(|c| c.kind == FrKind::Fr))
    }

    pub fn fr_certificates(&self) -> impl Iterator<Item = &Certificate> {
        self.results
            .iter()
            .filter_map(|r| r.certificate.as_ref())
            .filter(|c| c.kind == FrKind::Fr)
    }
}

/// Analysis of the given involutions (all of them when `only` is `None`).
pub fn search_report(graph: &CayleyGraph, only: Option<&GroupElement>) -> Result<SearchReport> {
    let analyzer = FrAnalyzer::new(graph)?;
    let integral = analyzer.spectrum().is_integral();
    let targets = match only {
        Some(a) => vec![a.clone()],
        None => graph.group().involutions(),
    };
    let results = targets
        .iter()
        .filter_map(|a| analyzer.analyze(a))
        .map(|dec| InvolutionResult {
            a: dec.split.a,
            moduli: dec.moduli,
            certificate: dec.witness.as_ref().map(Certificate::from_witness),
        })
        .collect();
    Ok(SearchReport {
        group: graph.group().orders().to_vec(),
        connected: graph.is_connected(),
        integral,
        results,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BooleanReport {
    pub vars: u32,
    pub truth_table: String,
    pub class: BooleanClass,
    pub weight: usize,
    pub walsh: Vec<i64>,
    pub support: Vec<GroupElement>,
    /// Spectrum of the Cayley graph on the support.
    pub eigenvalues: Vec<i64>,
    /// For bent functions: whether `|supp| = 2^(n-1) +- 2^(n/2-1)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bent_support_size_ok: Option<bool>,
}

pub fn boolean_report(f: &BooleanFunction) -> BooleanReport {
    let class = classify_boolean(f);
    let weight = f.weight();
    let bent_support_size_ok = (class == BooleanClass::Bent).then(|| {
        let big = 1usize << (f.vars() - 1);
        let small = 1usize << (f.vars() / 2 - 1);
        weight == big + small || weight == big - small
    });
    BooleanReport {
        vars: f.vars(),
        truth_table: f.to_hex(),
        class,
        weight,
        walsh: walsh_transform(f).values().to_vec(),
        support: support(f),
        eigenvalues: eigenvalues_from_walsh(f),
        bent_support_size_ok,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlateauReport {
    pub p: u64,
    pub class_function: bool,
    pub fourier: Option<Vec<i64>>,
    pub plateau: Option<Plateau>,
}

pub fn plateau_report(f: &GroupFunction, p: u64) -> Result<PlateauReport> {
    let class_function = is_class_function(f);
    if !class_function {
        return Err(Error::NotClassFunction);
    }
    Ok(PlateauReport {
        p,
        class_function,
        fourier: fourier_integers(f)?,
        plateau: plateaued_level(f, p)?,
    })
}
