//! Counting colored dissections whose cells have `a*j + b` sides.
//!
//! `phat(n, k)` is the number of colored dissections of a convex polygon with
//! `a*n + (b-2)*k + 2` sides into `k` cells, where a cell with `a*j + b` sides
//! contributes `j` to `n` and may be painted in `c_j` ways.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bell::{bell_partial, choose, factorial, to_count, BellArgs};
use crate::error::{Error, Result};

/// Admissible cells have `a*j + b` sides, `j >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModularShape {
    a: u32,
    b: u32,
}

impl ModularShape {
    pub fn new(a: u32, b: u32) -> Result<Self> {
        if a == 0 || b == 0 || a + b < 3 {
            return Err(Error::InvalidShape { a, b });
        }
        Ok(Self { a, b })
    }

    /// Any number of sides, i.e. `(a, b) = (1, 2)`.
    pub const fn unrestricted() -> Self {
        Self { a: 1, b: 2 }
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    /// `j` such that a cell with `sides` sides is an `(a*j + b)`-gon.
    pub fn index_of(&self, sides: usize) -> Option<usize> {
        let (a, b) = (self.a as usize, self.b as usize);
        if sides < a + b || !(sides - b).is_multiple_of(a) {
            return None;
        }
        Some((sides - b) / a)
    }

    /// `r = a*n + (b-2)*k`; the polygon has `r + 2` sides.
    pub fn r_of(&self, n: usize, k: usize) -> i64 {
        self.a as i64 * n as i64 + (self.b as i64 - 2) * k as i64
    }

    /// Solves `r = a*n + (b-2)*k` for `n`, if it has a positive solution.
    pub fn n_of(&self, r: usize, k: usize) -> Option<usize> {
        let num = r as i64 - (self.b as i64 - 2) * k as i64;
        if num <= 0 || num % self.a as i64 != 0 {
            return None;
        }
        Some((num / self.a as i64) as usize)
    }
}

impl fmt::Display for ModularShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, b={})", self.a, self.b)
    }
}

/// Color counts `c_1, c_2, ...`: finitely many overrides over a default.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColorWeights {
    overrides: BTreeMap<usize, u64>,
    default: u64,
}

impl ColorWeights {
    pub fn uniform(default: u64) -> Self {
        Self { overrides: BTreeMap::new(), default }
    }

    /// One color for every cell type.
    pub fn ones() -> Self {
        Self::uniform(1)
    }

    /// Only the listed indices are allowed.
    pub fn only(weights: &[(usize, u64)]) -> Self {
        weights.iter().fold(Self::uniform(0), |acc, &(j, c)| acc.with(j, c))
    }

    pub fn with(mut self, j: usize, weight: u64) -> Self {
        assert!(j >= 1, "color indices start at 1");
        if weight == self.default {
            self.overrides.remove(&j);
        } else {
            self.overrides.insert(j, weight);
        }
        self
    }

    /// Zeroes every index in `range`.
    pub fn without(self, range: impl IntoIterator<Item = usize>) -> Self {
        range.into_iter().fold(self, |acc, j| acc.with(j, 0))
    }

    pub fn weight(&self, j: usize) -> u64 {
        self.overrides.get(&j).copied().unwrap_or(self.default)
    }

    pub fn default_weight(&self) -> u64 {
        self.default
    }

    pub fn overrides(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.overrides.iter().map(|(&j, &c)| (j, c))
    }

    /// `(1! c_1, 2! c_2, ..., len! c_len)`, zero afterwards.
    pub fn bell_args(&self, len: usize) -> BellArgs {
        BellArgs::from_fn(len, |j| factorial(j) * self.weight(j))
    }

    /// `(1! c_{s+1}, 2! c_{s+2}, ...)`: the argument sequence after dropping
    /// the first `s` cell types.
    pub fn shifted_bell_args(&self, shift: usize, len: usize) -> BellArgs {
        BellArgs::from_fn(len, |j| factorial(j) * self.weight(j + shift))
    }
}

impl fmt::Display for ColorWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "default={}", self.default)?;
        for (j, c) in &self.overrides {
            write!(f, ",{j}={c}")?;
        }
        Ok(())
    }
}

/// Exact counts keyed by the number of parts (or by a term index).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CountTable {
    terms: BTreeMap<usize, BigInt>,
    pub shape: Option<ModularShape>,
    pub colors: Option<ColorWeights>,
}

impl CountTable {
    pub fn new(shape: Option<ModularShape>, colors: Option<ColorWeights>) -> Self {
        Self { terms: BTreeMap::new(), shape, colors }
    }

    pub fn get(&self, key: usize) -> BigInt {
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    pub fn add(&mut self, key: usize, value: impl Into<BigInt>) {
        let value = value.into();
        if value.is_zero() {
            return;
        }
        *self.terms.entry(key).or_default() += value;
    }

    pub fn total(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Nonzero entries in ascending key order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.terms.iter().map(|(&k, v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Closed form
/// `C(an+(b-1)k+1, k) / (an+(b-1)k+1) * k!/n! * B(n,k)(1! c_1, 2! c_2, ...)`,
/// evaluated as `1/k * C(an+(b-1)k, k-1) * k!/n! * B(n,k)(...)`.
pub fn phat(shape: ModularShape, colors: &ColorWeights, n: usize, k: usize) -> Result<BigInt> {
    if k == 0 {
        return Ok(BigInt::from((n == 0) as u8));
    }
    let bell = bell_partial(n, k, &colors.bell_args(n));
    if bell.is_zero() {
        return Ok(bell);
    }
    let top = shape.a() as usize * n + (shape.b() as usize - 1) * k;
    let value = BigRational::new(choose(top, k as i64 - 1), BigInt::from(k))
        * BigRational::new(factorial(k), factorial(n))
        * BigRational::from(bell);
    to_count(value, || format!("closed form {shape} at (n={n}, k={k})"))
}

/// Full table `p[m][l]` for `m <= n_max`, `l <= k_max` from the quadratic
/// recurrence
///
/// `2(l-1)/(r+2) * p(m, l) = sum_{l'=1}^{l-1} sum_{m'=l'}^{m-1} p(m-m', l-l') p(m', l')`
///
/// with `p(m, 1) = c_m`, `r = a m + (b-2) l`, and `p(0,0) = 1`.
pub fn recurrence_table(
    shape: ModularShape,
    colors: &ColorWeights,
    n_max: usize,
    k_max: usize,
) -> Result<Vec<Vec<BigInt>>> {
    let mut p = vec![vec![BigInt::zero(); k_max + 1]; n_max + 1];
    p[0][0] = BigInt::from(1);
    for m in 1..=n_max {
        if k_max >= 1 {
            p[m][1] = BigInt::from(colors.weight(m));
        }
        for l in 2..=k_max.min(m) {
            let mut sum = BigInt::zero();
            for l1 in 1..l {
                for m1 in l1..m {
                    let right = &p[m1][l1];
                    if right.is_zero() {
                        continue;
                    }
                    sum += &p[m - m1][l - l1] * right;
                }
            }
            let r_plus_2 = shape.r_of(m, l) + 2;
            let value = BigRational::new(sum * r_plus_2, BigInt::from(2 * (l - 1)));
            p[m][l] = to_count(value, || format!("recurrence {shape} at (n={m}, k={l})"))?;
        }
    }
    Ok(p)
}

/// `phat` from the recurrence alone.
pub fn phat_by_recurrence(
    shape: ModularShape,
    colors: &ColorWeights,
    n: usize,
    k: usize,
) -> Result<BigInt> {
    Ok(recurrence_table(shape, colors, n, k)?[n][k].clone())
}

/// Number of colored dissections of an `(r+2)`-gon into `k` admissible cells.
pub fn count_partitions(
    shape: ModularShape,
    colors: &ColorWeights,
    r: usize,
    k: usize,
) -> Result<BigInt> {
    match shape.n_of(r, k) {
        Some(n) if n >= k && k >= 1 => phat(shape, colors, n, k),
        _ => Ok(BigInt::zero()),
    }
}

/// Per-k counts for an `(r+2)`-gon.
pub fn count_table(shape: ModularShape, colors: &ColorWeights, r: usize) -> Result<CountTable> {
    let mut table = CountTable::new(Some(shape), Some(colors.clone()));
    for k in 1..=r.max(1) {
        table.add(k, count_partitions(shape, colors, r, k)?);
    }
    Ok(table)
}

/// All colored admissible dissections of an `(r+2)`-gon.
pub fn total(shape: ModularShape, colors: &ColorWeights, r: usize) -> Result<BigInt> {
    Ok(count_table(shape, colors, r)?.total())
}

/// Closed form of the `d`-fold convolution
/// `sum_{l_1+..+l_d = k, m_1+..+m_d = n} phat(m_1,l_1) ... phat(m_d,l_d)`:
///
/// `d C(an+(b-1)k+d, k) / (an+(b-1)k+d) * k!/n! * B(n,k)(1! c_1, 2! c_2, ...)`.
pub fn dfold(
    shape: ModularShape,
    colors: &ColorWeights,
    d: usize,
    n: usize,
    k: usize,
) -> Result<BigInt> {
    if d == 0 {
        return Err(Error::InvalidParameter("convolution order d must be >= 1".into()));
    }
    let top = shape.a() as usize * n + (shape.b() as usize - 1) * k + d;
    let bell = bell_partial(n, k, &colors.bell_args(n));
    if bell.is_zero() {
        return Ok(bell);
    }
    let value = BigRational::new(choose(top, k as i64) * d, BigInt::from(top))
        * BigRational::new(factorial(k), factorial(n))
        * BigRational::from(bell);
    to_count(value, || format!("closed form {shape}, d={d}, (n={n}, k={k})"))
}

/// `d`-fold convolution by direct summation over a table of [`phat`] values.
pub fn dfold_direct(
    shape: ModularShape,
    colors: &ColorWeights,
    d: usize,
    n: usize,
    k: usize,
) -> Result<BigInt> {
    if d == 0 {
        return Err(Error::InvalidParameter("convolution order d must be >= 1".into()));
    }
    let mut base = vec![vec![BigInt::zero(); k + 1]; n + 1];
    for (m, row) in base.iter_mut().enumerate() {
        for (l, slot) in row.iter_mut().enumerate() {
            *slot = phat(shape, colors, m, l)?;
        }
    }
    let mut acc = vec![vec![BigInt::zero(); k + 1]; n + 1];
    acc[0][0] = BigInt::from(1);
    for _ in 0..d {
        let mut next = vec![vec![BigInt::zero(); k + 1]; n + 1];
        for m in 0..=n {
            for l in 0..=k {
                let mut s = BigInt::zero();
                for m1 in 0..=m {
                    for l1 in 0..=l {
                        if acc[m - m1][l - l1].is_zero() {
                            continue;
                        }
                        s += &base[m1][l1] * &acc[m - m1][l - l1];
                    }
                }
                next[m][l] = s;
            }
        }
        acc = next;
    }
    Ok(acc[n][k].clone())
}

fn check_base(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("base face needs d >= 2, got {d}")));
    }
    Ok(())
}

/// Colored dissections of an `(n+d+1)`-gon whose cell over a fixed side is
/// an uncolored `(d+1)`-gon, with `k` further cells.
pub fn based_count(d: usize, colors: &ColorWeights, n: usize, k: usize) -> Result<BigInt> {
    check_base(d)?;
    dfold(ModularShape::unrestricted(), colors, d, n, k)
}

/// [`based_count`] summed over `k >= 1`.
pub fn based_total(d: usize, colors: &ColorWeights, n: usize) -> Result<BigInt> {
    check_base(d)?;
    (1..=n).try_fold(BigInt::zero(), |acc, k| Ok(acc + based_count(d, colors, n, k)?))
}

/// One-color case of [`based_total`]:
/// `d/(n+d) * sum_{k=1}^{n} C(n+k+d-1, k) C(n-1, k-1)`.
pub fn based_total_uncolored(d: usize, n: usize) -> Result<BigInt> {
    check_base(d)?;
    let sum: BigInt = (1..=n)
        .map(|k| choose(n + k + d - 1, k as i64) * choose(n - 1, k as i64 - 1))
        .sum();
    to_count(BigRational::new(sum * d, BigInt::from(n + d)), || {
        format!("uncolored based total d={d}, n={n}")
    })
}
