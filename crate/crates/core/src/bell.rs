//! Exact partial Bell polynomials and the binomial identities built on them.
//!
//! Everything here works over [`BigInt`] / [`BigRational`]; there is no
//! floating point anywhere in the crate. Boundary conventions are fixed:
//! `B(0,0) = 1`, `B(n,0) = 0` for `n > 0`, `B(0,k) = 0` for `k > 0` and
//! `B(n,k) = 0` whenever `k > n`.

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Binomial coefficient with a nonnegative top; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::NegativeBinomialTop(n));
    }
    Ok(choose(n as usize, k))
}

/// Infallible binomial for tops already known to be nonnegative.
pub(crate) fn choose(n: usize, k: i64) -> BigInt {
    if k < 0 || k as usize > n {
        return BigInt::zero();
    }
    let k = (k as usize).min(n - k as usize);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Polynomial binomial `top (top-1) ... (top-k+1) / k!` for any integer top.
///
/// Agrees with [`binomial`] when `top >= 0`; for negative tops it is the
/// usual analytic continuation, which is what the Bell convolution identity
/// needs when its parameters leave the combinatorial range.
pub fn generalized_binomial(top: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(top) - i;
    }
    num / factorial(k as usize)
}

/// Argument sequence `x_1, x_2, ...` for partial Bell polynomials.
///
/// Stored as a finite list of leading entries followed by a constant default.
/// Trailing entries equal to the default are trimmed on construction, so two
/// values describing the same infinite sequence compare (and hash) equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BellArgs {
    entries: Vec<BigInt>,
    default: BigInt,
}

impl BellArgs {
    pub fn new(entries: Vec<BigInt>, default: BigInt) -> Self {
        let mut entries = entries;
        while entries.last() == Some(&default) {
            entries.pop();
        }
        Self { entries, default }
    }

    pub fn constant(value: impl Into<BigInt>) -> Self {
        Self::new(Vec::new(), value.into())
    }

    pub fn zeros() -> Self {
        Self::constant(0)
    }

    /// `x_j = f(j)` for `j <= len`, zero afterwards.
    pub fn from_fn(len: usize, f: impl Fn(usize) -> BigInt) -> Self {
        Self::new((1..=len).map(f).collect(), BigInt::zero())
    }

    pub fn from_i64s(entries: &[i64], default: i64) -> Self {
        Self::new(entries.iter().map(|&v| BigInt::from(v)).collect(), default.into())
    }

    /// `(1!, 2!, ..., len!)` followed by zeros.
    pub fn factorials(len: usize) -> Self {
        Self::from_fn(len, factorial)
    }

    /// `x_j` for `j >= 1`.
    pub fn entry(&self, j: usize) -> &BigInt {
        assert!(j >= 1, "Bell arguments are 1-indexed");
        self.entries.get(j - 1).unwrap_or(&self.default)
    }

    /// `x_1 ..= x_len`.
    pub fn prefix(&self, len: usize) -> Vec<BigInt> {
        (1..=len).map(|j| self.entry(j).clone()).collect()
    }

    pub fn overrides(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn default_value(&self) -> &BigInt {
        &self.default
    }
}

impl Add for &BellArgs {
    type Output = BellArgs;

    fn add(self, rhs: &BellArgs) -> BellArgs {
        let len = self.entries.len().max(rhs.entries.len());
        let entries = (1..=len).map(|j| self.entry(j) + rhs.entry(j)).collect();
        BellArgs::new(entries, &self.default + &rhs.default)
    }
}

impl Neg for &BellArgs {
    type Output = BellArgs;

    fn neg(self) -> BellArgs {
        BellArgs::new(self.entries.iter().map(|v| -v).collect(), -&self.default)
    }
}

/// Bell recurrence over any ring that embeds the integers.
///
/// `x` must hold at least `n - k + 1` entries when `1 <= k <= n`; only the
/// part of the table reachable from `(n, k)` is filled.
fn bell_over<T>(n: usize, k: usize, x: &[T]) -> T
where
    T: Clone + Zero + One + Mul<Output = T> + From<BigInt>,
{
    if k > n {
        return T::zero();
    }
    if k == 0 {
        return if n == 0 { T::one() } else { T::zero() };
    }
    let slack = n - k;
    // rows[j][m - j] = B(m, j) for j <= m <= j + slack
    let mut prev: Vec<T> = vec![T::zero(); slack + 1];
    prev[0] = T::one();
    for j in 1..=k {
        let mut row = vec![T::zero(); slack + 1];
        for (offset, slot) in row.iter_mut().enumerate() {
            let m = j + offset;
            let mut acc = T::zero();
            for i in 1..=offset + 1 {
                // B(m - i, j - 1) lives at prev[m - i - (j - 1)]
                let below = &prev[offset + 1 - i];
                if below.is_zero() || x[i - 1].is_zero() {
                    continue;
                }
                let coeff = T::from(choose(m - 1, i as i64 - 1));
                acc = acc + coeff * x[i - 1].clone() * below.clone();
            }
            *slot = acc;
        }
        prev = row;
    }
    prev[slack].clone()
}

type MemoKey = (usize, usize, Vec<BigInt>);

fn memo() -> &'static Mutex<HashMap<MemoKey, BigInt>> {
    static MEMO: OnceLock<Mutex<HashMap<MemoKey, BigInt>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Partial Bell polynomial `B(n, k)` evaluated at `x`.
///
/// Results are memoized on `(n, k, x_1 ..= x_{n-k+1})`, the only entries the
/// value depends on.
pub fn bell_partial(n: usize, k: usize, x: &BellArgs) -> BigInt {
    if k > n || k == 0 {
        return bell_over::<BigInt>(n, k, &[]);
    }
    let key = (n, k, x.prefix(n - k + 1));
    if let Some(v) = memo().lock().unwrap().get(&key) {
        return v.clone();
    }
    let value = bell_over(n, k, &key.2);
    memo().lock().unwrap().insert(key, value.clone());
    value
}

/// `B(n, k)` straight from the definition, summing over the block-size
/// multiplicities `m_j` with `sum j*m_j = n`, `sum m_j = k`.
///
/// Exponential in `n`; meant as an independent check of [`bell_partial`].
pub fn bell_direct(n: usize, k: usize, x: &BellArgs) -> BigInt {
    fn walk(
        remaining: usize,
        parts: usize,
        max_part: usize,
        mults: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if parts == 0 {
            if remaining == 0 {
                out.push(mults.clone());
            }
            return;
        }
        let lo = remaining.div_ceil(parts);
        for size in (lo.max(1)..=max_part.min(remaining)).rev() {
            mults[size] += 1;
            walk(remaining - size, parts - 1, size, mults, out);
            mults[size] -= 1;
        }
    }

    if k == 0 {
        return if n == 0 { BigInt::one() } else { BigInt::zero() };
    }
    let mut shapes = Vec::new();
    walk(n, k, n, &mut vec![0; n + 1], &mut shapes);
    let n_fact = factorial(n);
    shapes
        .into_iter()
        .map(|mults| {
            let mut denom = BigInt::one();
            let mut monomial = BigInt::one();
            for (j, &mj) in mults.iter().enumerate().skip(1) {
                if mj == 0 {
                    continue;
                }
                denom *= factorial(mj) * num_traits::pow(factorial(j), mj);
                monomial *= num_traits::pow(x.entry(j).clone(), mj);
            }
            &n_fact / denom * monomial
        })
        .sum()
}

/// `B(n, k)(0, x_2, x_3, ...)` through the shift identity
/// `n!/(n-k)! * B(n-k, k)(x_2/2, x_3/3, ...)`.
pub fn bell_shift(n: usize, k: usize, x: &BellArgs) -> Result<BigInt> {
    if !x.entry(1).is_zero() {
        return Err(Error::NonZeroFirstArgument(x.entry(1).to_string()));
    }
    if k > n {
        return Err(Error::ShiftOutOfRange { n, k });
    }
    let inner_n = n - k;
    let width = (inner_n + 1).saturating_sub(k);
    let shifted: Vec<BigRational> = (1..=width)
        .map(|j| BigRational::new(x.entry(j + 1).clone(), BigInt::from(j + 1)))
        .collect();
    let value = bell_over(inner_n, k, &shifted) * BigRational::from(factorial(n) / factorial(inner_n));
    to_integer(value, || format!("shifted Bell B({n},{k})"))
}

/// `sum C(n, nu) B(nu, kappa)(x) B(n - nu, k - kappa)(y)`, which equals
/// `B(n, k)(x + y)`.
pub fn bell_binomial_convolution(n: usize, k: usize, x: &BellArgs, y: &BellArgs) -> BigInt {
    let mut acc = BigInt::zero();
    for kappa in 0..=k {
        for nu in 0..=n {
            let left = bell_partial(nu, kappa, x);
            if left.is_zero() {
                continue;
            }
            acc += choose(n, nu as i64) * left * bell_partial(n - nu, k - kappa, y);
        }
    }
    acc
}

/// Affine index form `alpha(l, m) = c0 + cl*l + cm*m` together with the free
/// parameter `tau` of the Bell convolution identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AffineIndexForm {
    pub c0: i64,
    pub cl: i64,
    pub cm: i64,
    pub tau: i64,
}

impl AffineIndexForm {
    pub fn alpha(&self, l: i64, m: i64) -> i64 {
        self.c0 + self.cl * l + self.cm * m
    }

    /// The instantiation used to show the closed form obeys the quadratic
    /// recurrence: `tau = a n + (b-1) k + 2`, `alpha = a(n-m) + (b-1)(k-l) + 1`.
    pub fn for_shape(a: i64, b: i64, n: i64, k: i64) -> Self {
        Self {
            c0: a * n + (b - 1) * k + 1,
            cl: -(b - 1),
            cm: -a,
            tau: a * n + (b - 1) * k + 2,
        }
    }
}

/// Both sides of the Bell convolution identity
///
/// ```text
/// sum_{l=0..k} sum_{m=l..n}  tau C(alpha, k-l) C(tau-alpha, l) C(n, m)
///                            ------------------------------------------ B(m,l) B(n-m,k-l)
///                                alpha (tau-alpha) C(k, l)
///   = (tau - alpha(0,0) + alpha(k,n)) / (alpha(k,n) (tau - alpha(0,0))) C(tau, k) B(n,k)
/// ```
///
/// with `alpha = alpha(l, m)`. Binomials with negative tops use the
/// polynomial extension.
pub fn convolution_lemma_check(
    n: usize,
    k: usize,
    x: &BellArgs,
    form: &AffineIndexForm,
) -> Result<(BigRational, BigRational)> {
    let (ni, ki) = (n as i64, k as i64);
    let tau = form.tau;
    let degenerate = |what, l, m| Error::DegenerateDenominator { what, l, m };

    let mut lhs = BigRational::zero();
    for l in 0..=ki {
        for m in l..=ni {
            let alpha = form.alpha(l, m);
            if alpha == 0 {
                return Err(degenerate("alpha", l, m));
            }
            if tau - alpha == 0 {
                return Err(degenerate("tau - alpha", l, m));
            }
            let bells = bell_partial(m as usize, l as usize, x)
                * bell_partial((ni - m) as usize, (ki - l) as usize, x);
            if bells.is_zero() {
                continue;
            }
            let num = BigInt::from(tau)
                * generalized_binomial(alpha, ki - l)
                * generalized_binomial(tau - alpha, l)
                * choose(n, m)
                * bells;
            let den = BigInt::from(alpha) * BigInt::from(tau - alpha) * choose(k, l);
            lhs += BigRational::new(num, den);
        }
    }

    let alpha_00 = form.alpha(0, 0);
    let alpha_kn = form.alpha(ki, ni);
    if alpha_kn == 0 {
        return Err(degenerate("alpha(k, n)", ki, ni));
    }
    if tau - alpha_00 == 0 {
        return Err(degenerate("tau - alpha(0, 0)", 0, 0));
    }
    let rhs = BigRational::new(
        BigInt::from(tau - alpha_00 + alpha_kn),
        BigInt::from(alpha_kn) * BigInt::from(tau - alpha_00),
    ) * BigRational::from(generalized_binomial(tau, ki) * bell_partial(n, k, x));
    Ok((lhs, rhs))
}

/// Converts an exact rational to an integer, failing loudly otherwise.
pub(crate) fn to_integer(value: BigRational, context: impl FnOnce() -> String) -> Result<BigInt> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::IntegralityViolation { context: context(), value: value.to_string() })
    }
}

/// As [`to_integer`], additionally rejecting negative counts.
pub(crate) fn to_count(value: BigRational, context: impl Fn() -> String) -> Result<BigInt> {
    let v = to_integer(value, &context)?;
    if v.is_negative() {
        return Err(Error::IntegralityViolation { context: context(), value: v.to_string() });
    }
    Ok(v)
}
