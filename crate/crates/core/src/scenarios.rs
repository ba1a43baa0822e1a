//! Closed forms for restricted families of dissections.
//!
//! Each function here is evaluated from its own formula, not by delegating to
//! [`census::total`](crate::census::total); the two routes are compared in
//! tests and by the crosscheck runner. `n` indexes an `(n+2)`-gon unless noted.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bell::{bell_partial, choose, factorial, to_count};
use crate::census::{self, ColorWeights, ModularShape};
use crate::error::{Error, Result};

fn rat(num: BigInt, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num, den.into())
}

fn positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter(format!("{what} must be >= 1")));
    }
    Ok(())
}

/// `k!/n! * B(n,k)(1! c_1, 2! c_2, ...)` as an exact rational.
fn scaled_bell(colors: &ColorWeights, n: usize, k: usize) -> BigRational {
    rat(factorial(k) * bell_partial(n, k, &colors.bell_args(n)), factorial(n))
}

/// All colored dissections of an `(n+2)`-gon:
/// `y_1 = c_1`, `y_n = 1/(n+1) sum_{k=1}^{n} C(n+k,k) k!/n! B(n,k)(1! c_1, 2! c_2, ...)`.
pub fn colored_total(colors: &ColorWeights, n: usize) -> Result<BigInt> {
    positive(n, "n")?;
    if n == 1 {
        return Ok(colors.weight(1).into());
    }
    let sum: BigRational = (1..=n)
        .map(|k| BigRational::from(choose(n + k, k as i64)) * scaled_bell(colors, n, k))
        .sum();
    to_count(sum / BigRational::from(BigInt::from(n + 1)), || format!("colored total n={n}"))
}

/// Little Schröder numbers `1/(n+1) sum C(n+k,k) C(n-1,k-1)`.
pub fn schroeder(n: usize) -> Result<BigInt> {
    positive(n, "n")?;
    let sum: BigInt = (1..=n)
        .map(|k| choose(n + k, k as i64) * choose(n - 1, k as i64 - 1))
        .sum();
    to_count(rat(sum, n + 1), || format!("Schröder n={n}"))
}

/// Dissections of a `(qm+2)`-gon into `(q+2)`-gons:
/// `1/(qm+1) C((q+1)m, m) c_q^m`.
pub fn single_size(q: usize, m: usize, c_q: u64) -> Result<BigInt> {
    positive(q, "q")?;
    positive(m, "m")?;
    let value = rat(choose((q + 1) * m, m as i64), q * m + 1)
        * BigRational::from(num_traits::pow(BigInt::from(c_q), m));
    to_count(value, || format!("Fuss-Catalan q={q}, m={m}"))
}

/// Dissections into triangles and quadrilaterals:
/// `1/(n+1) sum_{n/2 <= k <= n} C(n+k,k) C(k,n-k) c_1^{2k-n} c_2^{n-k}`.
pub fn triangles_and_quads(n: usize, c1: u64, c2: u64) -> Result<BigInt> {
    positive(n, "n")?;
    if n == 1 {
        return Ok(c1.into());
    }
    let sum: BigInt = (n.div_ceil(2)..=n)
        .map(|k| {
            choose(n + k, k as i64)
                * choose(k, (n - k) as i64)
                * num_traits::pow(BigInt::from(c1), 2 * k - n)
                * num_traits::pow(BigInt::from(c2), n - k)
        })
        .sum();
    to_count(rat(sum, n + 1), || format!("triangles and quadrilaterals n={n}"))
}

/// Dissections into `(q+2)`- and `(q+3)`-gons. For `n > q+1`:
/// `1/(n+1) sum_{n/(q+1) <= k <= n/q} C(n+k,k) C(k,n-qk) c_q^{(q+1)k-n} c_{q+1}^{n-qk}`;
/// smaller `n` goes through the general census.
pub fn two_adjacent_sizes(q: usize, n: usize, c_q: u64, c_q1: u64) -> Result<BigInt> {
    positive(q, "q")?;
    positive(n, "n")?;
    if n <= q + 1 {
        let colors = ColorWeights::only(&[(q, c_q), (q + 1, c_q1)]);
        return census::total(ModularShape::unrestricted(), &colors, n);
    }
    let sum: BigInt = (n.div_ceil(q + 1)..=n / q)
        .map(|k| {
            choose(n + k, k as i64)
                * choose(k, (n - q * k) as i64)
                * num_traits::pow(BigInt::from(c_q), (q + 1) * k - n)
                * num_traits::pow(BigInt::from(c_q1), n - q * k)
        })
        .sum();
    to_count(rat(sum, n + 1), || format!("sizes q+2, q+3 with q={q}, n={n}"))
}

/// Dissections of a `(2n+2)`-gon into even-sided cells, `(2j+2)`-gons
/// painted in `c_j` colors:
/// `sum_{k=1}^{n} 1/k C(2n+k, k-1) k!/n! B(n,k)(1! c_1, 2! c_2, ...)`.
pub fn even_gons_total(colors: &ColorWeights, n: usize) -> Result<BigInt> {
    positive(n, "n")?;
    let sum: BigRational = (1..=n)
        .map(|k| rat(choose(2 * n + k, k as i64 - 1), k) * scaled_bell(colors, n, k))
        .sum();
    to_count(sum, || format!("even cells n={n}"))
}

/// One-color case: `1/n sum_{k=1}^{n} C(2n+k, k-1) C(n, k)`.
pub fn even_gons_uncolored(n: usize) -> Result<BigInt> {
    positive(n, "n")?;
    let sum: BigInt = (1..=n)
        .map(|k| choose(2 * n + k, k as i64 - 1) * choose(n, k as i64))
        .sum();
    to_count(rat(sum, n), || format!("uncolored even cells n={n}"))
}

/// Odd-sided dissections with `2n + 1` edges in total (sides plus
/// diagonals), `(2j+1)`-gons painted in `c_j` colors:
/// `sum_{k=1}^{n} 1/k C(2n, k-1) k!/n! B(n,k)(1! c_1, 2! c_2, ...)`.
pub fn odd_gons_by_edges(colors: &ColorWeights, n: usize) -> Result<BigInt> {
    positive(n, "n")?;
    let sum: BigRational = (1..=n)
        .map(|k| rat(choose(2 * n, k as i64 - 1), k) * scaled_bell(colors, n, k))
        .sum();
    to_count(sum, || format!("odd cells by edges n={n}"))
}

/// One-color case: `1/(2n+1) C(3n, n)`.
pub fn odd_gons_by_edges_uncolored(n: usize) -> Result<BigInt> {
    positive(n, "n")?;
    to_count(rat(choose(3 * n, n as i64), 2 * n + 1), || format!("ternary n={n}"))
}

/// Odd-sided dissections of an `(r+2)`-gon:
/// `sum_{l=0}^{(r-1)/2} 1/(r-2l) C(2(r-l), r-2l-1) (r-2l)!/(r-l)! B(r-l, r-2l)(...)`.
pub fn odd_gons_by_sides(colors: &ColorWeights, r: usize) -> Result<BigInt> {
    positive(r, "r")?;
    let sum: BigRational = (0..=(r - 1) / 2)
        .map(|l| {
            let (k, n) = (r - 2 * l, r - l);
            rat(choose(2 * n, k as i64 - 1), k) * scaled_bell(colors, n, k)
        })
        .sum();
    to_count(sum, || format!("odd cells by sides r={r}"))
}

/// One-color case: `1/(r+1) sum_l C(2(r-l), r) C(r-l-1, l)`.
pub fn odd_gons_by_sides_uncolored(r: usize) -> Result<BigInt> {
    positive(r, "r")?;
    let sum: BigInt = (0..=(r - 1) / 2)
        .map(|l| choose(2 * (r - l), r as i64) * choose(r - l - 1, l as i64))
        .sum();
    to_count(rat(sum, r + 1), || format!("uncolored odd cells by sides r={r}"))
}

/// Shared body of the triangle-free and minimum-size families:
/// `1/(n+1) sum_{1 <= k < n/q} C(n+k,k) k!/(n-qk)! B(n-qk, k)(1! c_{q+1}, 2! c_{q+2}, ...)`.
fn without_small_cells(q: usize, colors: &ColorWeights, n: usize) -> Result<BigInt> {
    if n <= q {
        return Ok(BigInt::zero());
    }
    let mut sum = BigRational::zero();
    for k in 1.. {
        if q * k >= n {
            break;
        }
        let rest = n - q * k;
        let bell = bell_partial(rest, k, &colors.shifted_bell_args(q, rest));
        sum += BigRational::from(choose(n + k, k as i64)) * rat(factorial(k) * bell, factorial(rest));
    }
    to_count(sum / BigRational::from(BigInt::from(n + 1)), || {
        format!("cells larger than {}-gons, n={n}", q + 2)
    })
}

/// Triangle-free dissections (`c_1` is ignored).
pub fn triangle_free(colors: &ColorWeights, n: usize) -> Result<BigInt> {
    positive(n, "n")?;
    without_small_cells(1, colors, n)
}

/// One-color triangle-free: `1/(n+1) sum_{k=1}^{n-1} C(n+k,k) C(n-k-1,k-1)`.
pub fn triangle_free_uncolored(n: usize) -> Result<BigInt> {
    min_part_size_uncolored(1, n)
}

/// Dissections into `(j+2)`-gons with `j > q` only (`c_1..=c_q` are ignored).
pub fn min_part_size(q: usize, colors: &ColorWeights, n: usize) -> Result<BigInt> {
    positive(q, "q")?;
    positive(n, "n")?;
    without_small_cells(q, colors, n)
}

/// One-color case: `1/(n+1) sum_{1 <= k < n/q} C(n+k,k) C(n-qk-1, k-1)`.
pub fn min_part_size_uncolored(q: usize, n: usize) -> Result<BigInt> {
    positive(q, "q")?;
    positive(n, "n")?;
    if n <= q {
        return Ok(BigInt::zero());
    }
    let sum: BigInt = (1..)
        .take_while(|&k| q * k < n)
        .map(|k| choose(n + k, k as i64) * choose(n - q * k - 1, k as i64 - 1))
        .sum();
    to_count(rat(sum, n + 1), || format!("uncolored cells larger than {}-gons, n={n}", q + 2))
}

/// Dissections with no `(q+2)`-gon (`c_q` is ignored), by inclusion-exclusion
/// over the cells of size `q + 2`:
///
/// `1/(n+1) sum_{k=1}^{n} sum_{l<=k} (-1)^l C(n+k,k) C(k,l) (k-l)!/(n-ql)! B(n-ql, k-l)(x)`
///
/// where `x` is `(j! c_j)` with the `q`-th entry replaced by `q!`.
pub fn avoiding_size(q: usize, colors: &ColorWeights, n: usize) -> Result<BigInt> {
    positive(q, "q")?;
    positive(n, "n")?;
    let x_bar = colors.clone().with(q, 1);
    let mut sum = BigRational::zero();
    for k in 1..=n {
        for l in 0..=k.min(n / q) {
            let rest = n - q * l;
            let bell = bell_partial(rest, k - l, &x_bar.bell_args(rest));
            if bell.is_zero() {
                continue;
            }
            let term = BigRational::from(choose(n + k, k as i64) * choose(k, l as i64))
                * rat(factorial(k - l) * bell, factorial(rest));
            if l % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
    }
    to_count(sum / BigRational::from(BigInt::from(n + 1)), || {
        format!("avoiding {}-gons, n={n}", q + 2)
    })
}

fn signed(l: usize) -> BigInt {
    if l.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `sum_{l in ls} sum_{k=l+1}^{n-ql+l} (-1)^l C(n+k,k) C(k,l) C(n-ql-1, k-l-1)`.
fn avoid_inner(q: usize, n: usize, ls: impl Iterator<Item = usize>) -> BigInt {
    let mut sum = BigInt::zero();
    for l in ls {
        let rest = n - q * l;
        for k in l + 1..=rest + l {
            sum += signed(l)
                * choose(n + k, k as i64)
                * choose(k, l as i64)
                * choose(rest - 1, (k - l - 1) as i64);
        }
    }
    sum
}

/// One-color case of [`avoiding_size`] (every `c_j = 1` except `c_q = 0`),
/// split on whether `q` divides `n`.
pub fn avoiding_size_uncolored(q: usize, n: usize) -> Result<BigInt> {
    positive(q, "q")?;
    positive(n, "n")?;
    let value = if n.is_multiple_of(q) {
        let m = n / q;
        let lead = signed(m) * choose((q + 1) * m, m as i64);
        rat(lead + avoid_inner(q, n, 0..m), n + 1)
    } else {
        rat(avoid_inner(q, n, 0..=n / q), n + 1)
    };
    to_count(value, || format!("uncolored avoiding {}-gons, n={n}", q + 2))
}

/// Quadrilateral-free dissections:
/// `(-1)^{floor(n/2)} t_n + 1/(n+1) sum_{l=0}^{floor(n/2)-1} ...` with
/// `t_{2m} = C(3m,m)/(2m+1)` and `t_{2m+1} = C(3m+2, m)`.
pub fn avoiding_quadrilaterals(n: usize) -> Result<BigInt> {
    positive(n, "n")?;
    let m = n / 2;
    let t = if n.is_multiple_of(2) {
        rat(choose(3 * m, m as i64), 2 * m + 1)
    } else {
        BigRational::from(choose(3 * m + 2, m as i64))
    };
    let value = BigRational::from(signed(m)) * t + rat(avoid_inner(2, n, 0..m), n + 1);
    to_count(value, || format!("quadrilateral-free n={n}"))
}

/// Dissections of an `(n+3)`-gon with a triangle over a fixed side:
/// `2/(n+2) sum_{k=1}^{n} C(n+k+1,k) C(n-1,k-1)`.
pub fn based_triangle(n: usize) -> Result<BigInt> {
    positive(n, "n")?;
    let sum: BigInt = (1..=n)
        .map(|k| choose(n + k + 1, k as i64) * choose(n - 1, k as i64 - 1))
        .sum();
    to_count(rat(sum * 2, n + 2), || format!("base triangle n={n}"))
}
