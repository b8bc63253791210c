//! Cayley graphs over finite abelian groups and their exact spectra.
//!
//! The eigenvalue attached to the character `chi_g` is
//! `lambda_g = sum_{s in S} chi_g(s)`, accumulated exactly in `Z[w_e]`.
//! For elementary abelian 2-groups the spectrum is read off a Walsh-Hadamard
//! transform of the indicator of `S` instead.

use std::collections::BTreeSet;

use num_complex::Complex;
use num_traits::{Float, FloatConst};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boolean::{eigenvalues_from_walsh, BooleanFunction};
use crate::cyclotomic::RootOfUnitySum;
use crate::error::{Error, Result};
use crate::group::{units_mod, FiniteAbelianGroup, GroupElement};

/// Wire format of a Cayley graph: `{"group": [2,9], "set": [[0,1], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpec {
    pub group: Vec<u64>,
    pub set: Vec<Vec<u64>>,
}

/// A symmetric connection set not containing zero, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConnectionSet {
    elements: Vec<GroupElement>,
}

impl ConnectionSet {
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    /// `d = |S|`.
    pub fn degree(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.binary_search(g).is_ok()
    }
}

/// Deduplicates `raw` and checks `0 not in S` and `S = -S`.
pub fn validate_connection_set(
    raw: impl IntoIterator<Item = GroupElement>,
    group: &FiniteAbelianGroup,
) -> Result<ConnectionSet> {
    let mut set = BTreeSet::new();
    for g in raw {
        if !group.contains(&g) {
            return Err(Error::InvalidElement {
                coords: g.into_coords(),
                orders: group.orders().to_vec(),
            });
        }
        set.insert(g);
    }
    if set.iter().any(GroupElement::is_zero) {
        return Err(Error::ZeroInSet);
    }
    for g in &set {
        let inv = group.neg(g);
        if !set.contains(&inv) {
            return Err(Error::AsymmetricSet {
                element: g.clone(),
                missing: inv,
            });
        }
    }
    Ok(ConnectionSet {
        elements: set.into_iter().collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGraph {
    group: FiniteAbelianGroup,
    set: ConnectionSet,
    connected: bool,
}

impl CayleyGraph {
    /// Validates the connection set and records connectivity. Disconnected
    /// graphs are accepted; check [`CayleyGraph::is_connected`].
    pub fn new(
        group: FiniteAbelianGroup,
        raw: impl IntoIterator<Item = GroupElement>,
    ) -> Result<Self> {
        let set = validate_connection_set(raw, &group)?;
        let connected = group.subgroup_generated(set.elements()).len() == group.size();
        Ok(Self {
            group,
            set,
            connected,
        })
    }

    pub fn from_spec(spec: &GraphSpec) -> Result<Self> {
        let group = FiniteAbelianGroup::new(spec.group.clone())?;
        let raw = spec
            .set
            .iter()
            .map(|c| group.element(c.clone()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, raw)
    }

    /// Canonical spec: connection set in lexicographic order.
    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            group: self.group.orders().to_vec(),
            set: self
                .set
                .elements()
                .iter()
                .map(|g| g.coords().to_vec())
                .collect(),
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn connection_set(&self) -> &ConnectionSet {
        &self.set
    }

    pub fn degree(&self) -> usize {
        self.set.degree()
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    /// Symmetric 0/1 matrix with `a[g][h] = 1` iff `g - h in S`, rows in rank order.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u8>> {
        let n = self.group.size();
        let mut a = vec![vec![0u8; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            let g = self.group.unrank(i);
            for s in self.set.elements() {
                // g - h = s  <=>  h = g - s
                let h = self.group.sub(&g, s);
                row[self.group.rank(&h)] = 1;
            }
        }
        a
    }
}

/// Exact spectrum, indexed by group rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    group: FiniteAbelianGroup,
    degree: usize,
    values: Vec<RootOfUnitySum<i64>>,
    integral: Option<Vec<i64>>,
}

impl Spectrum {
    fn from_values(graph: &CayleyGraph, values: Vec<RootOfUnitySum<i64>>) -> Result<Self> {
        let ints = values
            .par_iter()
            .map(|v| v.as_integer())
            .collect::<Result<Vec<_>>>()?;
        let integral = ints.into_iter().collect::<Option<Vec<i64>>>();
        Ok(Self {
            group: graph.group.clone(),
            degree: graph.degree(),
            values,
            integral,
        })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[RootOfUnitySum<i64>] {
        &self.values
    }

    pub fn value(&self, g: &GroupElement) -> &RootOfUnitySum<i64> {
        &self.values[self.group.rank(g)]
    }

    pub fn is_integral(&self) -> bool {
        self.integral.is_some()
    }

    /// Integer eigenvalues in rank order, if the graph is integral.
    pub fn integers(&self) -> Option<&[i64]> {
        self.integral.as_deref()
    }

    pub fn integer(&self, g: &GroupElement) -> Option<i64> {
        self.integral.as_ref().map(|v| v[self.group.rank(g)])
    }

    /// Exact test of `sum_g lambda_g = 0`.
    pub fn trace_is_zero(&self) -> Result<bool> {
        let mut acc = RootOfUnitySum::zero(self.group.exponent());
        for v in &self.values {
            let aligned = if v.modulus() == acc.modulus() {
                v.clone()
            } else {
                let c = v.as_integer()?.ok_or_else(|| {
                    Error::Cyclotomic("mixed-modulus spectrum must be integral".into())
                })?;
                RootOfUnitySum::constant(acc.modulus(), c)
            };
            acc = acc.checked_add(&aligned)?;
        }
        acc.is_exact_zero()
    }

    /// Floating-point eigenvalues (real parts) in rank order.
    pub fn approx<F: Float + FloatConst>(&self) -> Vec<F> {
        match &self.integral {
            Some(ints) => ints
                .iter()
                .map(|&l| F::from(l).expect("eigenvalue representable"))
                .collect(),
            None => self.values.iter().map(|v| v.approx::<F>().re).collect(),
        }
    }

    /// Floating-point eigenvalues as complex numbers, for sanity checks on
    /// the imaginary part.
    pub fn approx_complex<F: Float + FloatConst>(&self) -> Vec<Complex<F>> {
        self.values.iter().map(|v| v.approx::<F>()).collect()
    }
}

/// `lambda_g` for a single character, exactly.
pub fn eigenvalue_at(graph: &CayleyGraph, g: &GroupElement) -> Result<RootOfUnitySum<i64>> {
    let grp = &graph.group;
    let mut v = RootOfUnitySum::zero(grp.exponent());
    for s in graph.set.elements() {
        v.add_root(grp.character_exponent(g, s))?;
    }
    Ok(v)
}

/// Spectrum by direct character sums, `O(n |S|)` exact additions.
pub fn spectrum_by_characters(graph: &CayleyGraph) -> Result<Spectrum> {
    let grp = &graph.group;
    let values = (0..grp.size())
        .into_par_iter()
        .map(|i| eigenvalue_at(graph, &grp.unrank(i)))
        .collect::<Result<Vec<_>>>()?;
    Spectrum::from_values(graph, values)
}

/// Spectrum through the Walsh-Hadamard transform; only for `e = 2`.
pub fn spectrum_by_walsh(graph: &CayleyGraph) -> Result<Option<Spectrum>> {
    let grp = &graph.group;
    if !grp.is_elementary_two_group() {
        return Ok(None);
    }
    let vars = grp.num_factors() as u32;
    let mut table = vec![false; grp.size()];
    for s in graph.set.elements() {
        table[grp.rank(s)] = true;
    }
    let f = BooleanFunction::from_table(vars, table)?;
    let values = eigenvalues_from_walsh(&f)
        .into_iter()
        .map(|l| RootOfUnitySum::constant(2, l))
        .collect();
    Ok(Some(Spectrum {
        group: grp.clone(),
        degree: graph.degree(),
        values,
        integral: Some(eigenvalues_from_walsh(&f)),
    }))
}

/// Exact spectrum; uses the Walsh path for elementary abelian 2-groups.
pub fn spectrum(graph: &CayleyGraph) -> Result<Spectrum> {
    match spectrum_by_walsh(graph)? {
        Some(s) => Ok(s),
        None => spectrum_by_characters(graph),
    }
}

pub fn is_integral(graph: &CayleyGraph) -> Result<bool> {
    Ok(spectrum(graph)?.is_integral())
}

/// `l * S = S` for every unit `l` of `Z_e`.
pub fn unit_closed(set: &ConnectionSet, group: &FiniteAbelianGroup) -> bool {
    units_mod(group.exponent()).into_iter().all(|l| {
        set.elements()
            .iter()
            .all(|s| set.contains(&group.scale(l, s)))
    })
}
