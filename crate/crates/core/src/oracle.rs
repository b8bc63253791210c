//! Floating-point cross-checks that do not share code paths with the exact
//! decision procedure.
//!
//! `H(t) = exp(i t A)` is assembled from the spectral decomposition
//! `H(t)_{g,h} = (1/n) sum_z exp(i t lambda_z) chi_z(g - h)`, one row at a time
//! (row `0` and then shifts, since the matrix is a group convolution).
//! [`dense_expm_check`] compares that against a truncated power series on the
//! dense adjacency matrix.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex;
use num_traits::{Float, FloatConst};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cayley::{spectrum, CayleyGraph, Spectrum};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::revival::FrWitness;

/// Default tolerance for certificate verification.
pub const VERIFY_TOL: f64 = 1e-9;
/// Default tolerance for "entry is zero" in grid scans.
pub const SCAN_TOL: f64 = 1e-6;
/// Largest dimension accepted by [`dense_expm_check`].
pub const DENSE_MAX_DIM: usize = 256;

/// Conjugate character table and spectrum, reused across times.
#[derive(Debug, Clone)]
pub struct TransferKernel<F> {
    n: usize,
    lambdas: Vec<F>,
    /// `conj(chi_z(h))` at `z * n + h`.
    table: Vec<Complex<F>>,
}

impl<F: Float + FloatConst + Send + Sync> TransferKernel<F> {
    pub fn new(spec: &Spectrum) -> Self {
        let grp = spec.group();
        let n = grp.size();
        let e = grp.exponent();
        let roots: Vec<Complex<F>> = (0..e)
            .map(|k| {
                let theta = F::TAU() * F::from(k).unwrap() / F::from(e).unwrap();
                Complex::from_polar(F::one(), -theta)
            })
            .collect();
        let elems: Vec<GroupElement> = grp.elements().collect();
        let table = (0..n * n)
            .into_par_iter()
            .map(|idx| {
                let (z, h) = (idx / n, idx % n);
                roots[grp.character_exponent(&elems[z], &elems[h]) as usize]
            })
            .collect();
        Self {
            n,
            lambdas: spec.approx::<F>(),
            table,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `H(t)_{0,h}` for every `h`, in rank order.
    pub fn row0(&self, t: F) -> Vec<Complex<F>> {
        let n = self.n;
        let inv_n = F::one() / F::from(n).unwrap();
        let phases: Vec<Complex<F>> = self
            .lambdas
            .iter()
            .map(|&l| Complex::from_polar(inv_n, t * l))
            .collect();
        let mut row = vec![Complex::new(F::zero(), F::zero()); n];
        for (z, p) in phases.iter().enumerate() {
            let chi = &self.table[z * n..(z + 1) * n];
            for (acc, c) in row.iter_mut().zip(chi) {
                *acc = *acc + *p * *c;
            }
        }
        row
    }
}

/// Dense `H(t)` in row-major order, indexed by group rank.
#[derive(Debug, Clone)]
pub struct TransferMatrix<F> {
    n: usize,
    t: F,
    entries: Vec<Complex<F>>,
}

impl<F: Float + FloatConst + Send + Sync> TransferMatrix<F> {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn time(&self) -> F {
        self.t
    }

    pub fn entry(&self, g: usize, h: usize) -> Complex<F> {
        self.entries[g * self.n + h]
    }

    pub fn row(&self, g: usize) -> &[Complex<F>] {
        &self.entries[g * self.n..(g + 1) * self.n]
    }

    /// `max |(H H^*)_{g,h} - delta_{g,h}|`.
    pub fn unitarity_defect(&self) -> F {
        let n = self.n;
        (0..n)
            .into_par_iter()
            .map(|g| {
                let rg = self.row(g);
                (0..n).fold(F::zero(), |worst, h| {
                    let rh = self.row(h);
                    let dot = rg
                        .iter()
                        .zip(rh)
                        .fold(Complex::new(F::zero(), F::zero()), |acc, (x, y)| {
                            acc + *x * y.conj()
                        });
                    let target = if g == h { F::one() } else { F::zero() };
                    worst.max((dot - Complex::new(target, F::zero())).norm())
                })
            })
            .reduce(F::zero, F::max)
    }
}

/// `H(t)` for `graph`, from its exact spectrum.
pub fn transfer_matrix<F: Float + FloatConst + Send + Sync>(
    graph: &CayleyGraph,
    t: F,
) -> Result<TransferMatrix<F>> {
    let spec = spectrum(graph)?;
    Ok(transfer_matrix_with(&TransferKernel::new(&spec), graph, t))
}

pub fn transfer_matrix_with<F: Float + FloatConst + Send + Sync>(
    kernel: &TransferKernel<F>,
    graph: &CayleyGraph,
    t: F,
) -> TransferMatrix<F> {
    let grp = graph.group();
    let n = kernel.dim();
    let row0 = kernel.row0(t);
    let elems: Vec<GroupElement> = grp.elements().collect();
    let entries = (0..n)
        .into_par_iter()
        .flat_map_iter(|g| {
            let gg = &elems[g];
            let row0 = &row0;
            let elems = &elems;
            (0..n).map(move |h| row0[grp.rank(&grp.sub(&elems[h], gg))])
        })
        .collect();
    TransferMatrix { n, t, entries }
}

/// Outcome of checking `H(t) = alpha I + beta Q_a` numerically.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub unitarity_defect: f64,
}

/// Checks a certificate against `H(2 pi k / N)` entrywise. Fails when `a` is
/// not an involution (then `Q_a` is not a fixed-point-free symmetric
/// involution) or when any entry deviates by `tol` or more.
pub fn verify_fr(graph: &CayleyGraph, w: &FrWitness, tol: f64) -> Result<VerifyReport> {
    let grp = graph.group();
    if !grp.contains(&w.a) {
        return Err(Error::InvalidElement {
            coords: w.a.coords().to_vec(),
            orders: grp.orders().to_vec(),
        });
    }
    if w.modulus == 0 {
        return Err(Error::Cyclotomic(
            "certificate modulus must be positive".into(),
        ));
    }
    let h = transfer_matrix::<f64>(graph, w.time::<f64>())?;
    let n = h.dim();
    let elems: Vec<GroupElement> = grp.elements().collect();
    let perm: Vec<usize> = elems.iter().map(|g| grp.rank(&grp.add(g, &w.a))).collect();
    // Q symmetric with Q^2 = I and no fixed points
    let q_ok = (0..n).all(|g| perm[perm[g]] == g && perm[g] != g);

    let (alpha, beta) = (w.alpha::<f64>(), w.beta::<f64>());
    let max_deviation = (0..n)
        .into_par_iter()
        .map(|g| {
            (0..n).fold(0.0f64, |worst, col| {
                let mut target = Complex::new(0.0, 0.0);
                if col == g {
                    target += alpha;
                }
                if col == perm[g] {
                    target += beta;
                }
                worst.max((h.entry(g, col) - target).norm())
            })
        })
        .reduce(|| 0.0, f64::max);
    let unitarity_defect = h.unitarity_defect();
    Ok(VerifyReport {
        pass: q_ok && max_deviation < tol,
        max_deviation,
        tolerance: tol,
        unitarity_defect,
    })
}

fn dense_guard(n: usize) -> Result<()> {
    if n > DENSE_MAX_DIM {
        return Err(Error::DimensionGuard {
            n,
            max: DENSE_MAX_DIM,
        });
    }
    Ok(())
}

/// `exp(i t A)` by scaling and squaring a truncated Taylor series.
pub fn dense_expm(graph: &CayleyGraph, t: f64) -> Result<DMatrix<Complex<f64>>> {
    let n = graph.group().size();
    dense_guard(n)?;
    let adj = graph.adjacency_matrix();
    let a = DMatrix::from_fn(n, n, |i, j| Complex::new(0.0, t * adj[i][j] as f64));
    // ||t A||_1 = |t| d for a d-regular graph
    let norm = t.abs() * graph.degree() as f64;
    let mut squarings = 0u32;
    while norm / 2f64.powi(squarings as i32) >= 0.5 {
        squarings += 1;
    }
    let scaled = a / Complex::new(2f64.powi(squarings as i32), 0.0);
    let mut result = DMatrix::<Complex<f64>>::identity(n, n);
    let mut term = DMatrix::<Complex<f64>>::identity(n, n);
    for s in 1..=30u32 {
        term = &term * &scaled / Complex::new(s as f64, 0.0);
        result += &term;
        if s >= 20 && term.iter().all(|c| c.norm() < 1e-20) {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    Ok(result)
}

/// Largest entrywise gap between the spectral `H(t)` and [`dense_expm`].
pub fn dense_expm_check(graph: &CayleyGraph, t: f64) -> Result<f64> {
    let series = dense_expm(graph, t)?;
    let spectral = transfer_matrix::<f64>(graph, t)?;
    let n = spectral.dim();
    let mut worst = 0.0f64;
    for g in 0..n {
        for h in 0..n {
            worst = worst.max((series[(g, h)] - spectral.entry(g, h)).norm());
        }
    }
    Ok(worst)
}

/// Sorted adjacency eigenvalues from a dense symmetric solver.
pub fn adjacency_eigenvalues(graph: &CayleyGraph) -> Result<Vec<f64>> {
    let n = graph.group().size();
    if n > 4 * DENSE_MAX_DIM {
        return Err(Error::DimensionGuard {
            n,
            max: 4 * DENSE_MAX_DIM,
        });
    }
    let adj = graph.adjacency_matrix();
    let m = DMatrix::from_fn(n, n, |i, j| adj[i][j] as f64);
    let mut vals: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

/// A grid time at which row `0` of `H(t)` is supported on exactly `{0, target}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanHit {
    pub target: GroupElement,
    /// Grid index: `t = 2 pi j / (4 n^2)`.
    pub j: u64,
    pub weight_at_origin: f64,
    pub weight_at_target: f64,
}

/// Scans `t = 2 pi j / (4 n^2)` for `1 <= j <= 4 n^3` and reports, for each
/// vertex `h != 0`, the first time at which row `0` concentrates on `{0, h}`
/// with both entries above `tol` and all others below it.
pub fn time_grid_scan(graph: &CayleyGraph, tol: f64) -> Result<Vec<ScanHit>> {
    let spec = spectrum(graph)?;
    let kernel = TransferKernel::<f64>::new(&spec);
    let n = kernel.dim() as u64;
    let denom = 4 * n * n;
    let last = 4 * n * n * n;
    let mut hits: Vec<ScanHit> = (1..=last)
        .into_par_iter()
        .filter_map(|j| {
            let t = std::f64::consts::TAU * j as f64 / denom as f64;
            let row = kernel.row0(t);
            let big: Vec<usize> = (0..row.len()).filter(|&h| row[h].norm() >= tol).collect();
            match big.as_slice() {
                [0, h] => Some((*h, j, row[0].norm(), row[*h].norm())),
                _ => None,
            }
        })
        .collect::<Vec<_>>()
        .into_iter()
        .map(|(h, j, w0, wh)| ScanHit {
            target: graph.group().unrank(h),
            j,
            weight_at_origin: w0,
            weight_at_target: wh,
        })
        .collect();
    hits.sort_by(|a, b| a.target.cmp(&b.target).then(a.j.cmp(&b.j)));
    hits.dedup_by(|later, first| later.target == first.target);
    Ok(hits)
}
