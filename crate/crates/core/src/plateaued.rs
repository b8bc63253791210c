//! Integer-valued functions on finite abelian groups and their Fourier
//! spectra. A function invariant under `x -> l x` for every unit `l` has an
//! integer spectrum; when all of those integers agree modulo `p^r` the
//! function is `p^r`-plateaued.

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, p_adic_valuation};
use crate::cyclotomic::RootOfUnitySum;
use crate::error::{Error, Result};
use crate::group::{units_mod, FiniteAbelianGroup, GroupElement};

/// `f: G -> Z`, values listed in element rank order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGroupFunction", into = "RawGroupFunction")]
pub struct GroupFunction {
    group: FiniteAbelianGroup,
    values: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroupFunction {
    group: FiniteAbelianGroup,
    values: Vec<i64>,
}

impl TryFrom<RawGroupFunction> for GroupFunction {
    type Error = Error;
    fn try_from(raw: RawGroupFunction) -> Result<Self> {
        GroupFunction::new(raw.group, raw.values)
    }
}

impl From<GroupFunction> for RawGroupFunction {
    fn from(f: GroupFunction) -> Self {
        RawGroupFunction {
            group: f.group,
            values: f.values,
        }
    }
}

impl GroupFunction {
    pub fn new(group: FiniteAbelianGroup, values: Vec<i64>) -> Result<Self> {
        if values.len() != group.size() {
            return Err(Error::FunctionValues(format!(
                "expected {} values, got {}",
                group.size(),
                values.len()
            )));
        }
        Ok(Self { group, values })
    }

    /// 0/1 indicator of a subset.
    pub fn indicator<'a>(
        group: FiniteAbelianGroup,
        set: impl IntoIterator<Item = &'a GroupElement>,
    ) -> Result<Self> {
        let mut values = vec![0; group.size()];
        for g in set {
            if !group.contains(g) {
                return Err(Error::InvalidElement {
                    coords: g.coords().to_vec(),
                    orders: group.orders().to_vec(),
                });
            }
            values[group.rank(g)] = 1;
        }
        Ok(Self { group, values })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, g: &GroupElement) -> i64 {
        self.values[self.group.rank(g)]
    }
}

/// `f^(chi_z) = sum_x f(x) conj(chi_z(x))`, exactly, for every `z`.
pub fn group_fourier(f: &GroupFunction) -> Result<Vec<RootOfUnitySum<i64>>> {
    let grp = &f.group;
    let e = grp.exponent();
    let support: Vec<(GroupElement, i64)> = grp
        .elements()
        .zip(f.values.iter().copied())
        .filter(|(_, v)| *v != 0)
        .collect();
    (0..grp.size())
        .into_par_iter()
        .map(|i| {
            let z = grp.unrank(i);
            let mut acc = RootOfUnitySum::zero(e);
            for (x, v) in &support {
                let k = grp.character_exponent(&z, x);
                acc.add_term((e - k) % e, v)?;
            }
            Ok(acc)
        })
        .collect()
}

/// Fourier values as integers, or `None` if any of them is not rational.
pub fn fourier_integers(f: &GroupFunction) -> Result<Option<Vec<i64>>> {
    let mut out = Vec::with_capacity(f.group.size());
    for v in group_fourier(f)? {
        match v.as_integer()? {
            Some(n) => out.push(n),
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// `f(l x) = f(x)` for every unit `l` modulo the exponent.
pub fn is_class_function(f: &GroupFunction) -> bool {
    let grp = &f.group;
    let units = units_mod(grp.exponent());
    grp.elements()
        .zip(&f.values)
        .all(|(x, &v)| units.iter().all(|&l| f.value(&grp.scale(l, &x)) == v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Plateau {
    /// Common residue of the Fourier values, in `[0, p^r)`.
    pub k: u64,
    pub r: u32,
}

impl Plateau {
    pub fn modulus(&self, p: u64) -> u64 {
        p.pow(self.r)
    }
}

/// Largest `r >= 1` with all Fourier values congruent modulo `p^r`, together
/// with the common residue. `None` if no such `r` exists or if the spectrum
/// is constant (every `r` works).
pub fn plateaued_level(f: &GroupFunction, p: u64) -> Result<Option<Plateau>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !is_class_function(f) {
        return Err(Error::NotClassFunction);
    }
    let spec = fourier_integers(f)?.ok_or(Error::NotClassFunction)?;
    Ok(plateau_of_values(&spec, p))
}

/// Plateau of an explicit list of integers; the first entry is the reference.
pub fn plateau_of_values(values: &[i64], p: u64) -> Option<Plateau> {
    let base = *values.first()?;
    let spread = values
        .iter()
        .fold(0u64, |acc, &v| acc.gcd(&(v - base).unsigned_abs()));
    if spread == 0 {
        return None;
    }
    let r = p_adic_valuation(spread as i64, p).ok()?;
    if r == 0 {
        return None;
    }
    let m = p.checked_pow(r)? as i64;
    Some(Plateau {
        k: base.rem_euclid(m) as u64,
        r,
    })
}
