//! Runs every counting route against every other one on a bounded grid.
//!
//! Families are checked in a fixed order and, inside each family, instances
//! are visited from the smallest polygon upwards, so the first mismatch found
//! is also a minimal one.

use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bell::{bell_binomial_convolution, bell_direct, bell_partial, bell_shift, AffineIndexForm};
use crate::census::{self, ColorWeights, ModularShape};
use crate::error::Result;
use crate::oracle;
use crate::scenarios;
use crate::BellArgs;

pub type PhatFn = fn(ModularShape, &ColorWeights, usize, usize) -> Result<BigInt>;

/// The closed-form counter under test; swapped out by mutation tests.
#[derive(Clone, Copy)]
pub struct Counters {
    pub phat: PhatFn,
}

impl Default for Counters {
    fn default() -> Self {
        Self { phat: census::phat }
    }
}

#[derive(Clone, Debug)]
pub struct Config {
    pub max_sides: usize,
    pub seed: u64,
    /// Random color vectors per shape.
    pub samples: usize,
    pub cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self { max_sides: 12, seed: 42, samples: 20, cap: oracle::DEFAULT_CAP }
    }
}

pub const SHAPES: [(u32, u32); 5] = [(1, 2), (1, 3), (2, 1), (2, 2), (3, 2)];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub family: &'static str,
    pub instance: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub families: Vec<(&'static str, usize)>,
    pub mismatch: Option<Mismatch>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, count) in &self.families {
            writeln!(f, "ok   {name:<24} {count} instances")?;
        }
        match &self.mismatch {
            None => writeln!(f, "all checks passed"),
            Some(m) => {
                writeln!(f, "FAIL {}", m.family)?;
                writeln!(f, "  instance: {}", m.instance)?;
                writeln!(f, "  expected: {}", m.expected)?;
                writeln!(f, "  actual:   {}", m.actual)
            }
        }
    }
}

/// Seeded random color vectors with weights in `0..=3`.
pub fn random_colors(rng: &mut impl Rng, len: usize) -> ColorWeights {
    (1..=len).fold(ColorWeights::uniform(rng.gen_range(0..=3)), |c, j| {
        c.with(j, rng.gen_range(0..=3))
    })
}

struct Family {
    name: &'static str,
    count: usize,
}

type Check = std::result::Result<(), Mismatch>;
type FamilyCheck<'a> = &'a dyn Fn(&mut Family, &mut ChaCha8Rng) -> Check;

impl Family {
    fn new(name: &'static str) -> Self {
        Self { name, count: 0 }
    }

    fn fatal(&self, instance: String, err: impl fmt::Display) -> Mismatch {
        Mismatch {
            family: self.name,
            instance,
            expected: "a result".into(),
            actual: format!("error: {err}"),
        }
    }

    fn compare<T: PartialEq + fmt::Display, E: fmt::Display>(
        &mut self,
        instance: impl FnOnce() -> String,
        expected: std::result::Result<T, E>,
        actual: std::result::Result<T, E>,
    ) -> Check {
        self.count += 1;
        let show = |r: &std::result::Result<T, E>| match r {
            Ok(v) => v.to_string(),
            Err(e) => format!("error: {e}"),
        };
        match (&expected, &actual) {
            (Ok(e), Ok(a)) if e == a => Ok(()),
            _ => Err(Mismatch {
                family: self.name,
                instance: instance(),
                expected: show(&expected),
                actual: show(&actual),
            }),
        }
    }
}

/// Runs the full grid and stops at the first mismatch.
pub fn run(config: &Config, counters: Counters) -> Report {
    let mut report = Report::default();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let palettes: Vec<ColorWeights> = std::iter::once(ColorWeights::ones())
        .chain((0..config.samples).map(|_| random_colors(&mut rng, config.max_sides.max(3))))
        .collect();

    let families: [(&'static str, FamilyCheck); 8] = [
        ("enumeration", &|f, _| enumeration(f, config)),
        ("bell", &|f, rng| bell_identities(f, rng, config)),
        ("lemma", &|f, rng| lemma(f, rng)),
        ("closed-vs-recurrence", &|f, _| closed_vs_recurrence(f, config, &palettes, counters)),
        ("closed-vs-oracle", &|f, _| closed_vs_oracle(f, config, &palettes, counters)),
        ("scenarios", &|f, _| scenario_family(f, config, &palettes)),
        ("d-fold", &|f, _| dfold_family(f, config, &palettes)),
        ("based", &|f, _| based_family(f, config)),
    ];
    for (name, check) in families {
        let mut family = Family::new(name);
        let outcome = check(&mut family, &mut rng);
        report.families.push((name, family.count));
        if let Err(m) = outcome {
            report.families.pop();
            report.mismatch = Some(m);
            break;
        }
    }
    report
}

fn enumeration(f: &mut Family, config: &Config) -> Check {
    for m in 3..=config.max_sides.min(config.cap) {
        let listed = oracle::enumerate_dissections(m, config.cap).map(|v| BigInt::from(v.len()));
        f.compare(|| format!("{m}-gon"), scenarios::schroeder(m - 2).map_err(|e| e.to_string()), listed.map_err(|e| e.to_string()))?;
    }
    Ok(())
}

fn random_args(rng: &mut impl Rng, len: usize) -> BellArgs {
    let entries: Vec<i64> = (0..len).map(|_| rng.gen_range(-3..=3)).collect();
    BellArgs::from_i64s(&entries, rng.gen_range(-3..=3))
}

fn bell_identities(f: &mut Family, rng: &mut ChaCha8Rng, config: &Config) -> Check {
    let top = config.max_sides.clamp(1, 12);
    for n in 0..=top {
        let x = random_args(rng, n + 1);
        let y = random_args(rng, n + 1);
        let x0 = BellArgs::new(
            std::iter::once(BigInt::from(0)).chain(x.prefix(n + 1).into_iter().skip(1)).collect(),
            x.default_value().clone(),
        );
        for k in 0..=n {
            let inst = || format!("n={n} k={k} x={:?}", x.prefix(n + 1));
            f.compare(inst, Ok::<_, String>(bell_direct(n, k, &x)), Ok(bell_partial(n, k, &x)))?;
            let inst = || format!("convolution n={n} k={k}");
            f.compare(
                inst,
                Ok::<_, String>(bell_partial(n, k, &(&x + &y))),
                Ok(bell_binomial_convolution(n, k, &x, &y)),
            )?;
            let inst = || format!("shift n={n} k={k}");
            f.compare(inst, Ok(bell_partial(n, k, &x0)), bell_shift(n, k, &x0).map_err(|e| e.to_string()))?;
        }
    }
    Ok(())
}

/// Random nondegenerate instances of the Bell convolution identity.
pub fn random_lemma_instance(rng: &mut impl Rng) -> (usize, usize, BellArgs, AffineIndexForm) {
    loop {
        let n = rng.gen_range(0..=8);
        let k = rng.gen_range(0..=8);
        let form = AffineIndexForm {
            c0: rng.gen_range(-20..=20),
            cl: rng.gen_range(-3..=3),
            cm: rng.gen_range(-3..=3),
            tau: rng.gen_range(-30..=30),
        };
        let x = random_args(rng, 9);
        if crate::bell::convolution_lemma_check(n, k, &x, &form).is_ok() {
            return (n, k, x, form);
        }
    }
}

fn lemma(f: &mut Family, rng: &mut ChaCha8Rng) -> Check {
    for _ in 0..100 {
        let (n, k, x, form) = random_lemma_instance(rng);
        let (lhs, rhs) = crate::bell::convolution_lemma_check(n, k, &x, &form).expect("nondegenerate");
        f.compare(|| format!("n={n} k={k} {form:?} x={:?}", x.prefix(9)), Ok::<_, String>(lhs), Ok(rhs))?;
    }
    Ok(())
}

fn shapes() -> impl Iterator<Item = ModularShape> {
    SHAPES.iter().map(|&(a, b)| ModularShape::new(a, b).expect("valid shape"))
}

fn closed_vs_recurrence(f: &mut Family, config: &Config, palettes: &[ColorWeights], counters: Counters) -> Check {
    let n_max = config.max_sides.saturating_sub(2).clamp(1, 10);
    for shape in shapes() {
        for colors in palettes {
            let table = census::recurrence_table(shape, colors, n_max, n_max);
            for n in 1..=n_max {
                for k in 1..=n {
                    let inst = || format!("{shape} colors={colors} n={n} k={k}");
                    let expected = table.as_ref().map(|t| t[n][k].clone()).map_err(|e| e.to_string());
                    f.compare(inst, expected, (counters.phat)(shape, colors, n, k).map_err(|e| e.to_string()))?;
                }
            }
        }
    }
    Ok(())
}

fn closed_vs_oracle(f: &mut Family, config: &Config, palettes: &[ColorWeights], counters: Counters) -> Check {
    for sides in 3..=config.max_sides.min(config.cap) {
        for shape in shapes() {
            for colors in palettes {
                let brute = oracle::weighted_count(sides, shape, colors, config.cap)
                    .map_err(|e| f.fatal(format!("oracle sides={sides}"), e))?;
                let r = sides - 2;
                for k in 1..=r {
                    let closed = match shape.n_of(r, k) {
                        Some(n) if n >= k => (counters.phat)(shape, colors, n, k).map_err(|e| e.to_string()),
                        _ => Ok(BigInt::from(0)),
                    };
                    f.compare(|| format!("{shape} colors={colors} sides={sides} k={k}"), Ok(brute.get(k)), closed)?;
                }
            }
        }
    }
    Ok(())
}

fn scenario_family(f: &mut Family, config: &Config, palettes: &[ColorWeights]) -> Check {
    let n_max = config.max_sides.saturating_sub(2).clamp(1, 10);
    let plain = ModularShape::unrestricted();
    let e = |r: Result<BigInt>| r.map_err(|e| e.to_string());
    for n in 1..=n_max {
        for colors in palettes.iter().take(4) {
            let inst = |what: &str| format!("{what} colors={colors} n={n}");
            f.compare(|| inst("colored_total"), e(census::total(plain, colors, n)), e(scenarios::colored_total(colors, n)))?;
            let tq = ColorWeights::only(&[(1, colors.weight(1)), (2, colors.weight(2))]);
            f.compare(
                || inst("tri_quad"),
                e(census::total(plain, &tq, n)),
                e(scenarios::triangles_and_quads(n, colors.weight(1), colors.weight(2))),
            )?;
            for q in 1..=3 {
                let adj = ColorWeights::only(&[(q, colors.weight(q)), (q + 1, colors.weight(q + 1))]);
                f.compare(
                    || inst(&format!("adjacent q={q}")),
                    e(census::total(plain, &adj, n)),
                    e(scenarios::two_adjacent_sizes(q, n, colors.weight(q), colors.weight(q + 1))),
                )?;
                f.compare(
                    || inst(&format!("min_size q={q}")),
                    e(census::total(plain, &colors.clone().without(1..=q), n)),
                    e(scenarios::min_part_size(q, colors, n)),
                )?;
                f.compare(
                    || inst(&format!("avoid q={q}")),
                    e(census::total(plain, &colors.clone().with(q, 0), n)),
                    e(scenarios::avoiding_size(q, colors, n)),
                )?;
                if n % q == 0 {
                    let single = ColorWeights::only(&[(q, colors.weight(q))]);
                    f.compare(
                        || inst(&format!("single_size q={q}")),
                        e(census::total(plain, &single, n)),
                        e(scenarios::single_size(q, n / q, colors.weight(q))),
                    )?;
                }
            }
            f.compare(
                || inst("triangle_free"),
                e(census::total(plain, &colors.clone().with(1, 0), n)),
                e(scenarios::triangle_free(colors, n)),
            )?;
            let even = ModularShape::new(2, 2).expect("valid");
            let odd = ModularShape::new(2, 1).expect("valid");
            f.compare(|| inst("even"), e(census::total(even, colors, 2 * n)), e(scenarios::even_gons_total(colors, n)))?;
            f.compare(|| inst("odd_sides"), e(census::total(odd, colors, n)), e(scenarios::odd_gons_by_sides(colors, n)))?;
            let by_edges = (1..=n).try_fold(BigInt::from(0), |acc, k| Ok(acc + census::phat(odd, colors, n, k)?));
            f.compare(|| inst("odd_edges"), e(by_edges), e(scenarios::odd_gons_by_edges(colors, n)))?;
        }
        f.compare(|| format!("schroeder n={n}"), e(census::total(plain, &ColorWeights::ones(), n)), e(scenarios::schroeder(n)))?;
        f.compare(
            || format!("based_triangle n={n}"),
            e(census::based_total(2, &ColorWeights::ones(), n)),
            e(scenarios::based_triangle(n)),
        )?;
    }
    Ok(())
}

fn dfold_family(f: &mut Family, config: &Config, palettes: &[ColorWeights]) -> Check {
    let top = config.max_sides.saturating_sub(4).clamp(1, 8);
    for shape in shapes() {
        for colors in palettes.iter().take(3) {
            for d in 1..=5 {
                for n in 0..=top {
                    for k in 0..=n {
                        f.compare(
                            || format!("{shape} colors={colors} d={d} n={n} k={k}"),
                            census::dfold_direct(shape, colors, d, n, k).map_err(|e| e.to_string()),
                            census::dfold(shape, colors, d, n, k).map_err(|e| e.to_string()),
                        )?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn based_family(f: &mut Family, config: &Config) -> Check {
    let ones = ColorWeights::ones();
    for sides in 4..=config.max_sides.min(config.cap) {
        for d in 2..sides - 1 {
            let n = sides - d - 1;
            let brute = oracle::based_weighted_count(sides, d, &ones, config.cap)
                .map_err(|e| f.fatal(format!("based oracle sides={sides} d={d}"), e))?;
            for k in 1..=n {
                f.compare(
                    || format!("d={d} sides={sides} k={k}"),
                    Ok(brute.get(k)),
                    census::based_count(d, &ones, n, k).map_err(|e| e.to_string()),
                )?;
            }
        }
    }
    Ok(())
}
