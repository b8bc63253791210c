//! Boolean functions on `F_2^n` given by truth tables.
//!
//! Input `x = (x_1, ..., x_n)` is stored at table index
//! `sum_j x_j * 2^(n - j)`, so `x_1` is the most significant bit. This is the
//! same mixed-radix rank used by [`FiniteAbelianGroup`] for `F_2^n`, which lets
//! supports be used directly as connection sets.
//!
//! Hex truth tables are read as a big-endian hexadecimal number whose bit `i`
//! (counting from the least significant bit) is `f` at index `i`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupElement;

/// Largest arity accepted; the Walsh spectrum is dense.
pub const MAX_VARS: u32 = 24;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    vars: u32,
    table: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BooleanClass {
    Bent,
    SemiBent,
    Neither,
}

/// Walsh-Hadamard spectrum `W_f(a) = sum_x (-1)^(f(x) + a.x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalshSpectrum {
    values: Vec<i64>,
}

impl WalshSpectrum {
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn parseval_sum(&self) -> i128 {
        self.values.iter().map(|&w| (w as i128) * (w as i128)).sum()
    }
}

impl BooleanFunction {
    pub fn from_table(vars: u32, table: Vec<bool>) -> Result<Self> {
        if vars > MAX_VARS {
            return Err(Error::TruthTable(format!(
                "{vars} variables exceeds the limit of {MAX_VARS}"
            )));
        }
        if table.len() != 1usize << vars {
            return Err(Error::TruthTable(format!(
                "expected {} entries for {vars} variables, got {}",
                1usize << vars,
                table.len()
            )));
        }
        Ok(Self { vars, table })
    }

    /// Builds `f` from a predicate on table indices.
    pub fn from_index_fn(vars: u32, f: impl Fn(usize) -> bool) -> Result<Self> {
        if vars > MAX_VARS {
            return Err(Error::TruthTable(format!(
                "{vars} variables exceeds the limit of {MAX_VARS}"
            )));
        }
        Self::from_table(vars, (0..1usize << vars).map(f).collect())
    }

    /// Parses a hex truth table. Without `vars`, the arity is inferred from
    /// the digit count (`4 * digits = 2^n`), which requires `n >= 2`.
    pub fn from_hex(hex: &str, vars: Option<u32>) -> Result<Self> {
        let hex = hex.trim();
        let hex = hex
            .strip_prefix("0x")
            .or_else(|| hex.strip_prefix("0X"))
            .unwrap_or(hex);
        if hex.is_empty() {
            return Err(Error::TruthTable("empty hex string".into()));
        }
        let vars = match vars {
            Some(v) => v,
            None => {
                let bits = hex.len() * 4;
                if !bits.is_power_of_two() {
                    return Err(Error::TruthTable(format!(
                        "{} hex digits do not encode 2^n bits",
                        hex.len()
                    )));
                }
                bits.trailing_zeros()
            }
        };
        if vars > MAX_VARS {
            return Err(Error::TruthTable(format!(
                "{vars} variables exceeds the limit of {MAX_VARS}"
            )));
        }
        let len = 1usize << vars;
        let digits = len.div_ceil(4);
        if hex.len() != digits {
            return Err(Error::TruthTable(format!(
                "{vars} variables need {digits} hex digits, got {}",
                hex.len()
            )));
        }
        let mut table = vec![false; len];
        for (pos, ch) in hex.chars().rev().enumerate() {
            let nibble = ch
                .to_digit(16)
                .ok_or_else(|| Error::TruthTable(format!("invalid hex digit {ch:?}")))?;
            for b in 0..4 {
                let idx = pos * 4 + b;
                let bit = (nibble >> b) & 1 == 1;
                if idx < len {
                    table[idx] = bit;
                } else if bit {
                    return Err(Error::TruthTable(
                        "bits set beyond the truth-table length".into(),
                    ));
                }
            }
        }
        Ok(Self { vars, table })
    }

    pub fn to_hex(&self) -> String {
        let digits = self.table.len().div_ceil(4);
        (0..digits)
            .rev()
            .map(|d| {
                let nibble = (0..4)
                    .filter(|&b| self.table.get(d * 4 + b).copied().unwrap_or(false))
                    .fold(0u32, |acc, b| acc | (1 << b));
                char::from_digit(nibble, 16).expect("nibble < 16")
            })
            .collect()
    }

    pub fn vars(&self) -> u32 {
        self.vars
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    pub fn value(&self, idx: usize) -> bool {
        self.table[idx]
    }

    /// `1 + f`.
    pub fn complement(&self) -> Self {
        Self {
            vars: self.vars,
            table: self.table.iter().map(|&b| !b).collect(),
        }
    }

    pub fn weight(&self) -> usize {
        self.table.iter().filter(|&&b| b).count()
    }

    /// Bit vector `(x_1, ..., x_n)` of a table index.
    pub fn index_bits(&self, idx: usize) -> Vec<u64> {
        (0..self.vars)
            .map(|j| ((idx >> (self.vars - 1 - j)) & 1) as u64)
            .collect()
    }
}

/// Fast Walsh-Hadamard transform of `(-1)^f`.
pub fn walsh_transform(f: &BooleanFunction) -> WalshSpectrum {
    let mut v: Vec<i64> = f.table.iter().map(|&b| if b { -1 } else { 1 }).collect();
    let n = v.len();
    let mut h = 1;
    while h < n {
        for block in (0..n).step_by(2 * h) {
            for j in block..block + h {
                let (a, b) = (v[j], v[j + h]);
                v[j] = a + b;
                v[j + h] = a - b;
            }
        }
        h *= 2;
    }
    WalshSpectrum { values: v }
}

/// `supp(f)` as elements of `F_2^n`, in lexicographic order.
pub fn support(f: &BooleanFunction) -> Vec<GroupElement> {
    support_indices(f)
        .into_iter()
        .map(|i| GroupElement::from_coords(f.index_bits(i)))
        .collect()
}

pub fn support_indices(f: &BooleanFunction) -> Vec<usize> {
    (0..f.table.len()).filter(|&i| f.table[i]).collect()
}

/// Bent: spectrum in `{+-2^(n/2)}`. Semi-bent: spectrum in
/// `{0, +-2^(n/2+1)}` with both zero and nonzero values present. Odd arity is
/// always `Neither`.
pub fn classify_boolean(f: &BooleanFunction) -> BooleanClass {
    if f.vars % 2 == 1 || f.vars == 0 {
        return BooleanClass::Neither;
    }
    let w = walsh_transform(f);
    let half = 1i64 << (f.vars / 2);
    if w.values.iter().all(|&x| x.abs() == half) {
        return BooleanClass::Bent;
    }
    let wide = half * 2;
    let in_set = w.values.iter().all(|&x| x == 0 || x.abs() == wide);
    let has_zero = w.values.contains(&0);
    let has_nonzero = w.values.iter().any(|&x| x != 0);
    if in_set && has_zero && has_nonzero {
        BooleanClass::SemiBent
    } else {
        BooleanClass::Neither
    }
}

/// `|supp(f)|` for a bent `f`, asserting it equals `2^(n-1) +- 2^(n/2-1)`.
pub fn support_size_check(f: &BooleanFunction) -> Result<usize> {
    if classify_boolean(f) != BooleanClass::Bent {
        return Err(Error::Hypothesis("function is not bent".into()));
    }
    let size = f.weight();
    let big = 1usize << (f.vars - 1);
    let small = 1usize << (f.vars / 2 - 1);
    assert!(
        size == big + small || size == big - small,
        "bent support size {size} violates 2^(n-1) +- 2^(n/2-1)"
    );
    Ok(size)
}

/// Spectrum of `Cay(F_2^n, supp(f))` indexed like the truth table:
/// `lambda_0 = |supp(f)|`, `lambda_x = -W_f(x) / 2` otherwise.
pub fn eigenvalues_from_walsh(f: &BooleanFunction) -> Vec<i64> {
    let w = walsh_transform(f);
    let mut out: Vec<i64> = w.values.iter().map(|&x| -x / 2).collect();
    out[0] = f.weight() as i64;
    out
}

/// Inner-product (Maiorana-McFarland) bent function
/// `f(x, y) = x_1 y_1 + ... + x_k y_k` with `x` the first `n/2` variables.
pub fn mm_bent(vars: u32) -> Result<BooleanFunction> {
    if vars < 2 || vars % 2 == 1 {
        return Err(Error::ParameterDomain(format!(
            "inner-product bent function needs an even arity >= 2, got {vars}"
        )));
    }
    let k = vars / 2;
    let mask = (1usize << k) - 1;
    BooleanFunction::from_index_fn(vars, |i| {
        let x = i >> k;
        let y = i & mask;
        (x & y).count_ones() % 2 == 1
    })
}
