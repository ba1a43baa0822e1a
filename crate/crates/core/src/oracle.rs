//! Brute-force ground truth: every dissection of a small convex polygon.
//!
//! Vertices are labelled `0..sides` in convex position. Enumeration fixes the
//! cell over the edge `{sides-1, 0}` (the base cell), records the diagonals it
//! cuts off, and recurses into each pocket. Every dissection is produced once.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::census::{ColorWeights, CountTable, ModularShape};
use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 14;

/// A convex polygon together with a set of pairwise noncrossing diagonals.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dissection {
    sides: usize,
    diagonals: Vec<(usize, usize)>,
}

fn crosses((i, j): (usize, usize), (p, q): (usize, usize)) -> bool {
    (i < p && p < j && j < q) || (p < i && i < q && q < j)
}

impl Dissection {
    /// Validates and canonicalizes (smaller endpoint first, sorted list).
    pub fn new(sides: usize, diagonals: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if sides < 3 {
            return Err(Error::InvalidParameter(format!("a polygon needs 3 sides, got {sides}")));
        }
        let set: BTreeSet<(usize, usize)> =
            diagonals.into_iter().map(|(i, j)| (i.min(j), i.max(j))).collect();
        let diagonals: Vec<_> = set.into_iter().collect();
        for &(i, j) in &diagonals {
            let gap = j - i;
            if j >= sides || gap <= 1 || gap == sides - 1 {
                return Err(Error::InvalidParameter(format!(
                    "{i}-{j} is not a diagonal of a {sides}-gon"
                )));
            }
        }
        for (x, &d1) in diagonals.iter().enumerate() {
            for &d2 in &diagonals[x + 1..] {
                if crosses(d1, d2) {
                    return Err(Error::InvalidParameter(format!(
                        "diagonals {}-{} and {}-{} cross",
                        d1.0, d1.1, d2.0, d2.1
                    )));
                }
            }
        }
        Ok(Self { sides, diagonals })
    }

    pub fn sides(&self) -> usize {
        self.sides
    }

    pub fn diagonals(&self) -> &[(usize, usize)] {
        &self.diagonals
    }

    /// Cells as vertex chains; the first cell is the one over `{sides-1, 0}`.
    pub fn cells(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![BTreeSet::new(); self.sides];
        for v in 0..self.sides {
            let w = (v + 1) % self.sides;
            adj[v].insert(w);
            adj[w].insert(v);
        }
        for &(i, j) in &self.diagonals {
            adj[i].insert(j);
            adj[j].insert(i);
        }
        let mut cells = Vec::new();
        let mut pockets = vec![(0, self.sides - 1)];
        while let Some((lo, hi)) = pockets.pop() {
            let mut chain = vec![lo];
            let mut u = lo;
            while u != hi {
                let limit = if u == lo { hi - 1 } else { hi };
                let next = *adj[u].range(u + 1..=limit).next_back().expect("polygon edge");
                if next - u > 1 {
                    pockets.push((u, next));
                }
                chain.push(next);
                u = next;
            }
            cells.push(chain);
        }
        cells
    }

    /// Side counts of the cells.
    pub fn faces(&self) -> FaceProfile {
        faces_of(self)
    }
}

impl fmt::Display for Dissection {
    /// `m;i1-j1,i2-j2,...`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.sides)?;
        for (x, (i, j)) in self.diagonals.iter().enumerate() {
            if x > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}-{j}")?;
        }
        Ok(())
    }
}

impl FromStr for Dissection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("malformed dissection line {s:?}"));
        let (sides, rest) = s.trim().split_once(';').ok_or_else(bad)?;
        let sides = sides.parse().map_err(|_| bad())?;
        let mut diagonals = Vec::new();
        for pair in rest.split(',').filter(|p| !p.is_empty()) {
            let (i, j) = pair.split_once('-').ok_or_else(bad)?;
            diagonals.push((i.parse().map_err(|_| bad())?, j.parse().map_err(|_| bad())?));
        }
        Dissection::new(sides, diagonals)
    }
}

/// Multiset of cell side counts, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FaceProfile {
    pub face_sizes: Vec<usize>,
}

impl FaceProfile {
    /// Edge and cell counts agree with the dissection they came from.
    pub fn is_consistent_with(&self, d: &Dissection) -> bool {
        let edges: usize = self.face_sizes.iter().sum();
        edges == d.sides + 2 * d.diagonals.len()
            && self.face_sizes.len() == d.diagonals.len() + 1
            && self.face_sizes.iter().all(|&s| s >= 3)
    }

    pub fn count_of(&self, size: usize) -> usize {
        self.face_sizes.iter().filter(|&&s| s == size).count()
    }
}

pub fn faces_of(d: &Dissection) -> FaceProfile {
    let mut face_sizes: Vec<usize> = d.cells().iter().map(Vec::len).collect();
    face_sizes.sort_unstable();
    FaceProfile { face_sizes }
}

fn check_cap(sides: usize, cap: usize) -> Result<()> {
    if sides < 3 {
        return Err(Error::InvalidParameter(format!("a polygon needs 3 sides, got {sides}")));
    }
    if sides > cap {
        return Err(Error::CapExceeded { sides, cap });
    }
    Ok(())
}

struct Walker<'f, F> {
    diagonals: Vec<(usize, usize)>,
    faces: Vec<usize>,
    pending: Vec<(usize, usize)>,
    visit: &'f mut F,
}

impl<F: FnMut(&[(usize, usize)], &[usize])> Walker<'_, F> {
    fn step(&mut self) {
        let Some((lo, hi)) = self.pending.pop() else {
            (self.visit)(&self.diagonals, &self.faces);
            return;
        };
        let inner = hi - lo - 1;
        for mask in 1u64..(1 << inner) {
            let (pending_len, diagonal_len) = (self.pending.len(), self.diagonals.len());
            let mut prev = lo;
            let mut size = 2;
            for bit in 0..inner {
                if mask & (1 << bit) == 0 {
                    continue;
                }
                let v = lo + 1 + bit;
                if v - prev > 1 {
                    self.pending.push((prev, v));
                    self.diagonals.push((prev, v));
                }
                prev = v;
                size += 1;
            }
            if hi - prev > 1 {
                self.pending.push((prev, hi));
                self.diagonals.push((prev, hi));
            }
            self.faces.push(size);
            self.step();
            self.faces.pop();
            self.pending.truncate(pending_len);
            self.diagonals.truncate(diagonal_len);
        }
        self.pending.push((lo, hi));
    }
}

/// Calls `visit(diagonals, face_sizes)` once per dissection of a
/// `sides`-gon. `face_sizes[0]` is the cell over the base edge
/// `{sides-1, 0}`; diagonals are not in canonical order.
pub fn for_each_dissection<F>(sides: usize, cap: usize, mut visit: F) -> Result<()>
where
    F: FnMut(&[(usize, usize)], &[usize]),
{
    check_cap(sides, cap)?;
    Walker {
        diagonals: Vec::with_capacity(sides),
        faces: Vec::with_capacity(sides),
        pending: vec![(0, sides - 1)],
        visit: &mut visit,
    }
    .step();
    Ok(())
}

/// Every dissection of a `sides`-gon exactly once, sorted canonically.
pub fn enumerate_dissections(sides: usize, cap: usize) -> Result<Vec<Dissection>> {
    let mut out = Vec::new();
    for_each_dissection(sides, cap, |diagonals, _| {
        let mut diagonals = diagonals.to_vec();
        diagonals.sort_unstable();
        out.push(Dissection { sides, diagonals });
    })?;
    out.sort_unstable();
    Ok(out)
}

/// `(base cell size, sorted sizes of the other cells)` -> number of dissections.
type Histogram = HashMap<(usize, Vec<usize>), u64>;

fn histogram(sides: usize, cap: usize) -> Result<Arc<Histogram>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Histogram>>>> = OnceLock::new();
    check_cap(sides, cap)?;
    let cache = CACHE.get_or_init(Default::default);
    if let Some(h) = cache.lock().unwrap().get(&sides) {
        return Ok(Arc::clone(h));
    }
    let mut hist = Histogram::new();
    for_each_dissection(sides, cap, |_, faces| {
        let mut others = faces[1..].to_vec();
        others.sort_unstable();
        *hist.entry((faces[0], others)).or_default() += 1;
    })?;
    let hist = Arc::new(hist);
    cache.lock().unwrap().insert(sides, Arc::clone(&hist));
    Ok(hist)
}

/// Product of per-cell weights; zero as soon as a cell is inadmissible.
fn cell_weight(
    sizes: impl IntoIterator<Item = usize>,
    shape: ModularShape,
    colors: &ColorWeights,
) -> BigInt {
    let mut w = BigInt::one();
    for s in sizes {
        match shape.index_of(s) {
            Some(j) => w *= colors.weight(j),
            None => return BigInt::zero(),
        }
        if w.is_zero() {
            break;
        }
    }
    w
}

/// Colored admissible dissections of a `sides`-gon, bucketed by cell count.
pub fn weighted_count(
    sides: usize,
    shape: ModularShape,
    colors: &ColorWeights,
    cap: usize,
) -> Result<CountTable> {
    let mut table = CountTable::new(Some(shape), Some(colors.clone()));
    for ((base, others), &mult) in histogram(sides, cap)?.iter() {
        let w = cell_weight(std::iter::once(*base).chain(others.iter().copied()), shape, colors);
        table.add(others.len() + 1, w * mult);
    }
    Ok(table)
}

/// Dissections whose cell over the base edge `{sides-1, 0}` has exactly
/// `d + 1` sides, bucketed by the number of other cells. Only the other
/// cells are colored, with `c_{s-2}` for an `s`-gon.
pub fn based_weighted_count(
    sides: usize,
    d: usize,
    colors: &ColorWeights,
    cap: usize,
) -> Result<CountTable> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("base face needs d >= 2, got {d}")));
    }
    if sides <= d + 1 {
        return Err(Error::InvalidBase { sides, base: d + 1 });
    }
    let shape = ModularShape::unrestricted();
    let mut table = CountTable::new(Some(shape), Some(colors.clone()));
    for ((base, others), &mult) in histogram(sides, cap)?.iter() {
        if *base != d + 1 {
            continue;
        }
        let w = cell_weight(others.iter().copied(), shape, colors);
        table.add(others.len(), w * mult);
    }
    Ok(table)
}

/// Colored dissections (any cell sizes, `c_{s-2}` per `s`-gon) with exactly
/// one cell of `part_size` sides.
pub fn count_with_exactly_one(
    sides: usize,
    part_size: usize,
    colors: &ColorWeights,
    cap: usize,
) -> Result<BigInt> {
    if part_size < 3 {
        return Err(Error::InvalidParameter(format!("cells have >= 3 sides, got {part_size}")));
    }
    let shape = ModularShape::unrestricted();
    let mut acc = BigInt::zero();
    for ((base, others), &mult) in histogram(sides, cap)?.iter() {
        let all = || std::iter::once(*base).chain(others.iter().copied());
        if all().filter(|&s| s == part_size).count() != 1 {
            continue;
        }
        acc += cell_weight(all(), shape, colors) * mult;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ones() -> ColorWeights {
        ColorWeights::ones()
    }

    fn table(entries: &[(usize, i64)]) -> Vec<(usize, BigInt)> {
        entries.iter().map(|&(k, v)| (k, BigInt::from(v))).collect()
    }

    fn flat(t: &CountTable) -> Vec<(usize, BigInt)> {
        t.iter().map(|(k, v)| (k, v.clone())).collect()
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_dissections(3, DEFAULT_CAP).unwrap().len(), 1);
        let quad = enumerate_dissections(4, DEFAULT_CAP).unwrap();
        assert_eq!(quad.len(), 3);
        assert!(quad[0].diagonals().is_empty());
        assert_eq!(enumerate_dissections(5, DEFAULT_CAP).unwrap().len(), 11);
    }

    #[test]
    fn cap_and_degenerate_sizes() {
        assert_eq!(
            enumerate_dissections(15, DEFAULT_CAP),
            Err(Error::CapExceeded { sides: 15, cap: 14 })
        );
        assert!(enumerate_dissections(2, DEFAULT_CAP).is_err());
        assert_eq!(enumerate_dissections(6, 6).unwrap().len(), 45);
    }

    #[test]
    fn dissection_validation() {
        assert!(Dissection::new(5, [(0, 1)]).is_err());
        assert!(Dissection::new(5, [(0, 4)]).is_err());
        assert!(Dissection::new(6, [(0, 3), (1, 4)]).is_err());
        let d = Dissection::new(6, [(4, 1), (1, 3)]).unwrap();
        assert_eq!(d.diagonals(), &[(1, 3), (1, 4)]);
    }

    #[test]
    fn faces_examples() {
        let d = Dissection::new(6, [(0, 3)]).unwrap();
        assert_eq!(faces_of(&d).face_sizes, vec![4, 4]);
        let d = Dissection::new(5, []).unwrap();
        assert_eq!(faces_of(&d).face_sizes, vec![5]);
        let d = Dissection::new(5, [(0, 2), (0, 3)]).unwrap();
        assert_eq!(faces_of(&d).face_sizes, vec![3, 3, 3]);
    }

    #[test]
    fn cells_start_with_base() {
        let d = Dissection::new(7, [(0, 3), (3, 6), (4, 6)]).unwrap();
        let cells = d.cells();
        assert_eq!(cells[0], vec![0, 3, 6]);
        assert_eq!(cells.len(), 4);
    }

    #[test]
    fn dump_format() {
        let d = Dissection::new(6, [(3, 1), (1, 4)]).unwrap();
        assert_eq!(d.to_string(), "6;1-3,1-4");
        assert_eq!("6;1-3,1-4".parse::<Dissection>().unwrap(), d);
        assert_eq!(Dissection::new(4, []).unwrap().to_string(), "4;");
        assert!("6;1-3,2-5".parse::<Dissection>().is_err());
        assert!("x;".parse::<Dissection>().is_err());
    }

    #[test]
    fn weighted_examples() {
        let t = weighted_count(5, ModularShape::unrestricted(), &ones(), DEFAULT_CAP).unwrap();
        assert_eq!(flat(&t), table(&[(1, 1), (2, 5), (3, 5)]));
        let even = ModularShape::new(2, 2).unwrap();
        let t = weighted_count(6, even, &ones(), DEFAULT_CAP).unwrap();
        assert_eq!(flat(&t), table(&[(1, 1), (2, 3)]));
        let no_triangles = ones().with(1, 0);
        let t = weighted_count(6, ModularShape::unrestricted(), &no_triangles, DEFAULT_CAP).unwrap();
        assert_eq!(flat(&t), table(&[(1, 1), (2, 3)]));
    }

    #[test]
    fn based_examples() {
        let t = based_weighted_count(5, 2, &ones(), DEFAULT_CAP).unwrap();
        assert_eq!(flat(&t), table(&[(1, 2), (2, 5)]));
        assert_eq!(t.total(), BigInt::from(7));
        let t = based_weighted_count(5, 3, &ones(), DEFAULT_CAP).unwrap();
        assert_eq!(flat(&t), table(&[(1, 3)]));
        // both single diagonals of a quadrilateral leave a triangle on the base
        let t = based_weighted_count(4, 2, &ones(), DEFAULT_CAP).unwrap();
        assert_eq!(flat(&t), table(&[(1, 2)]));
        assert_eq!(
            based_weighted_count(4, 3, &ones(), DEFAULT_CAP),
            Err(Error::InvalidBase { sides: 4, base: 4 })
        );
    }

    #[test]
    fn exactly_one_examples() {
        let c = ones();
        assert_eq!(count_with_exactly_one(5, 3, &c, DEFAULT_CAP).unwrap(), BigInt::from(5));
        assert_eq!(count_with_exactly_one(4, 4, &c, DEFAULT_CAP).unwrap(), BigInt::from(1));
        assert_eq!(count_with_exactly_one(3, 4, &c, DEFAULT_CAP).unwrap(), BigInt::from(0));
    }

    #[test]
    fn enumeration_is_canonical_and_consistent() {
        for m in 3..=9 {
            let all = enumerate_dissections(m, DEFAULT_CAP).unwrap();
            for w in all.windows(2) {
                assert!(w[0] < w[1]);
            }
            for d in &all {
                let again = Dissection::new(m, d.diagonals().iter().copied()).unwrap();
                assert_eq!(&again, d);
                assert!(faces_of(d).is_consistent_with(d));
            }
        }
    }

    #[test]
    fn walker_faces_match_independent_extraction() {
        for m in 3..=9 {
            for_each_dissection(m, DEFAULT_CAP, |diagonals, faces| {
                let d = Dissection::new(m, diagonals.iter().copied()).unwrap();
                let cells = d.cells();
                assert_eq!(cells[0].len(), faces[0]);
                let mut walked = faces.to_vec();
                walked.sort_unstable();
                assert_eq!(faces_of(&d).face_sizes, walked);
            })
            .unwrap();
        }
    }
}
