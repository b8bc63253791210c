//! Finite abelian groups presented as direct sums of cyclic groups.
//!
//! A group `Z_{n_1} + ... + Z_{n_r}` is stored as its list of cyclic orders.
//! Elements are coordinate vectors. Characters are never evaluated as complex
//! numbers here: [`FiniteAbelianGroup::character_exponent`] returns the
//! exponent `k` with `chi_g(h) = w_e^k`, where `e` is the group exponent and
//! `w_e = exp(2 pi i / e)`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of a [`FiniteAbelianGroup`], as reduced coordinates.
///
/// Ordering is lexicographic on the coordinate vector, which coincides with
/// the mixed-radix rank order of the owning group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(Vec<u64>);

impl GroupElement {
    /// Unvalidated construction; callers guarantee reduced coordinates.
    pub(crate) fn from_coords(coords: Vec<u64>) -> Self {
        Self(coords)
    }

    pub fn coords(&self) -> &[u64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<u64> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `Z_{n_1} + ... + Z_{n_r}` with every `n_s >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct FiniteAbelianGroup {
    orders: Vec<u64>,
    order: u64,
    exponent: u64,
    // strides[s] = product of orders[s+1..]
    strides: Vec<u64>,
}

impl TryFrom<Vec<u64>> for FiniteAbelianGroup {
    type Error = Error;

    fn try_from(orders: Vec<u64>) -> Result<Self> {
        FiniteAbelianGroup::new(orders)
    }
}

impl From<FiniteAbelianGroup> for Vec<u64> {
    fn from(g: FiniteAbelianGroup) -> Self {
        g.orders
    }
}

impl FiniteAbelianGroup {
    /// Builds the group from its cyclic orders.
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::InvalidGroup("no cyclic factors given".into()));
        }
        if let Some(bad) = orders.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidGroup(format!(
                "cyclic order {bad} is below 2"
            )));
        }
        let mut order: u64 = 1;
        let mut exponent: u64 = 1;
        for &n in &orders {
            order = order
                .checked_mul(n)
                .ok_or_else(|| Error::InvalidGroup("group order overflows u64".into()))?;
            exponent = exponent.lcm(&n);
        }
        if usize::try_from(order).is_err() {
            return Err(Error::InvalidGroup(
                "group order exceeds addressable size".into(),
            ));
        }
        let mut strides = vec![1u64; orders.len()];
        for s in (0..orders.len().saturating_sub(1)).rev() {
            strides[s] = strides[s + 1] * orders[s + 1];
        }
        Ok(Self {
            orders,
            order,
            exponent,
            strides,
        })
    }

    /// The elementary abelian 2-group `F_2^dim`.
    pub fn elementary_two_group(dim: usize) -> Result<Self> {
        Self::new(vec![2; dim])
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Number of cyclic factors `r`.
    pub fn num_factors(&self) -> usize {
        self.orders.len()
    }

    /// `n = |G|`.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn size(&self) -> usize {
        self.order as usize
    }

    /// `e = lcm(n_1, ..., n_r)`, the largest element order.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn is_elementary_two_group(&self) -> bool {
        self.exponent == 2
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.orders.len()])
    }

    /// Validates coordinates that are expected to be already reduced.
    pub fn element(&self, coords: Vec<u64>) -> Result<GroupElement> {
        if coords.len() != self.orders.len()
            || coords.iter().zip(&self.orders).any(|(&c, &n)| c >= n)
        {
            return Err(Error::InvalidElement {
                coords,
                orders: self.orders.clone(),
            });
        }
        Ok(GroupElement(coords))
    }

    /// Reduces arbitrary signed coordinates modulo the cyclic orders.
    pub fn element_mod(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.orders.len() {
            return Err(Error::InvalidElement {
                coords: coords.iter().map(|&c| c.unsigned_abs()).collect(),
                orders: self.orders.clone(),
            });
        }
        Ok(GroupElement(
            coords
                .iter()
                .zip(&self.orders)
                .map(|(&c, &n)| c.rem_euclid(n as i64) as u64)
                .collect(),
        ))
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.orders.len() && g.0.iter().zip(&self.orders).all(|(&c, &n)| c < n)
    }

    /// Mixed-radix rank; the first coordinate is most significant.
    pub fn rank(&self, g: &GroupElement) -> usize {
        g.0.iter()
            .zip(&self.strides)
            .map(|(&c, &w)| c * w)
            .sum::<u64>() as usize
    }

    pub fn unrank(&self, mut idx: usize) -> GroupElement {
        let mut coords = vec![0u64; self.orders.len()];
        for (s, c) in coords.iter_mut().enumerate() {
            let w = self.strides[s] as usize;
            *c = (idx / w) as u64;
            idx %= w;
        }
        GroupElement(coords)
    }

    /// All elements in lexicographic (= rank) order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.size()).map(move |i| self.unrank(i))
    }

    pub fn add(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        GroupElement(
            g.0.iter()
                .zip(&h.0)
                .zip(&self.orders)
                .map(|((&a, &b), &n)| (a + b) % n)
                .collect(),
        )
    }

    pub fn sub(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        GroupElement(
            g.0.iter()
                .zip(&h.0)
                .zip(&self.orders)
                .map(|((&a, &b), &n)| (a + n - b) % n)
                .collect(),
        )
    }

    pub fn neg(&self, g: &GroupElement) -> GroupElement {
        GroupElement(
            g.0.iter()
                .zip(&self.orders)
                .map(|(&a, &n)| (n - a) % n)
                .collect(),
        )
    }

    /// `l * g`.
    pub fn scale(&self, l: u64, g: &GroupElement) -> GroupElement {
        GroupElement(
            g.0.iter()
                .zip(&self.orders)
                .map(|(&a, &n)| ((a as u128 * l as u128) % n as u128) as u64)
                .collect(),
        )
    }

    /// Returns `k` in `[0, e)` with `chi_g(h) = w_e^k`.
    ///
    /// Computed as `sum_s (e / n_s) * (g_s * h_s mod n_s) mod e`; symmetric in
    /// `g` and `h`.
    pub fn character_exponent(&self, g: &GroupElement, h: &GroupElement) -> u64 {
        let e = self.exponent as u128;
        let mut k: u128 = 0;
        for ((&a, &b), &n) in g.0.iter().zip(&h.0).zip(&self.orders) {
            let n = n as u128;
            k += (e / n) * ((a as u128 * b as u128) % n);
        }
        (k % e) as u64
    }

    /// Least `m >= 1` with `m * g = 0`.
    pub fn element_order(&self, g: &GroupElement) -> u64 {
        g.0.iter()
            .zip(&self.orders)
            .map(|(&c, &n)| n / n.gcd(&c))
            .fold(1, |acc, m| acc.lcm(&m))
    }

    /// Elements of order exactly two, in rank order. Empty iff `n` is odd.
    pub fn involutions(&self) -> Vec<GroupElement> {
        // Only coordinates 0 or n_s/2 (for even n_s) can appear.
        let choices: Vec<Vec<u64>> = self
            .orders
            .iter()
            .map(|&n| if n % 2 == 0 { vec![0, n / 2] } else { vec![0] })
            .collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; choices.len()];
        loop {
            let g = GroupElement(idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect());
            if !g.is_zero() {
                out.push(g);
            }
            let mut s = choices.len();
            loop {
                if s == 0 {
                    return out;
                }
                s -= 1;
                idx[s] += 1;
                if idx[s] < choices[s].len() {
                    break;
                }
                idx[s] = 0;
            }
        }
    }

    /// Closure of `gens` together with `0` under addition.
    pub fn subgroup_generated<'a, I>(&self, gens: I) -> BTreeSet<GroupElement>
    where
        I: IntoIterator<Item = &'a GroupElement>,
    {
        let gens: Vec<&GroupElement> = gens.into_iter().collect();
        let mut seen = vec![false; self.size()];
        let zero = self.zero();
        seen[0] = true;
        let mut frontier = vec![zero.clone()];
        let mut out = BTreeSet::from([zero]);
        while let Some(x) = frontier.pop() {
            for s in &gens {
                let y = self.add(&x, s);
                let r = self.rank(&y);
                if !seen[r] {
                    seen[r] = true;
                    out.insert(y.clone());
                    frontier.push(y);
                }
            }
        }
        out
    }
}

/// Units of `Z_e` in increasing order; `units_mod(1)` is empty.
pub fn units_mod(e: u64) -> Vec<u64> {
    (1..e).filter(|l| l.gcd(&e) == 1).collect()
}
