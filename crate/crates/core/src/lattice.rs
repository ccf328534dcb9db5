//! Picard lattices, divisor classes and effective-cone computations.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lp::{self, LinearProgram, LpOutcome, Small};
use crate::rational::{ceil_i64, floor_i64, int, Rational};

/// A class in the Picard lattice, in coordinates of the lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorClass {
    pub coords: Vec<Rational>,
}

impl DivisorClass {
    pub fn new(coords: Vec<Rational>) -> Self {
        DivisorClass { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        DivisorClass {
            coords: coords.iter().map(|&c| int(c)).collect(),
        }
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass {
            coords: vec![Rational::zero(); rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// All coordinates are integers.
    pub fn integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    /// Integer coordinates, if the class is integral and fits.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coords
            .iter()
            .map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None })
            .collect()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        DivisorClass {
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.rank(), rhs.rank(), "divisor ranks differ");
        DivisorClass {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.rank(), rhs.rank(), "divisor ranks differ");
        DivisorClass {
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

/// Counts of positive, negative and zero entries after congruence
/// diagonalization of a symmetric rational matrix.
pub fn signature(matrix: &[Vec<Rational>]) -> (usize, usize, usize) {
    let n = matrix.len();
    let mut a: Vec<Vec<Rational>> = matrix.to_vec();
    let (mut pos, mut neg, mut zero) = (0, 0, 0);
    for k in 0..n {
        // Bring a non-zero diagonal entry to position k, creating one if needed.
        if a[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                a.swap(k, i);
                for row in a.iter_mut() {
                    row.swap(k, i);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                // Row/column j added to k gives a[k][k] = 2 a[k][j].
                for c in 0..n {
                    let v = a[j][c].clone();
                    a[k][c] += v;
                }
                for r in 0..n {
                    let v = a[r][j].clone();
                    a[r][k] += v;
                }
            } else {
                zero += 1;
                continue;
            }
        }
        let p = a[k][k].clone();
        if p.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &p;
            for c in k..n {
                let v = &f * &a[k][c];
                a[i][c] -= v;
            }
            for r in k..n {
                let v = &f * &a[r][k];
                a[r][i] -= v;
            }
        }
    }
    (pos, neg, zero)
}

/// A Picard lattice: rank and integral Gram matrix of signature `(1, ρ-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionLattice {
    rank: usize,
    gram: Vec<Vec<i64>>,
}

impl IntersectionLattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let rank = gram.len();
        if rank == 0 {
            return Err(Error::InvalidLattice("empty Gram matrix".into()));
        }
        for row in &gram {
            if row.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    got: row.len(),
                });
            }
        }
        for i in 0..rank {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidLattice(format!(
                        "Gram matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        let rat: Vec<Vec<Rational>> = gram
            .iter()
            .map(|r| r.iter().map(|&x| int(x)).collect())
            .collect();
        let (pos, neg, zero) = signature(&rat);
        if pos != 1 || neg != rank - 1 || zero != 0 {
            return Err(Error::InvalidLattice(format!(
                "signature is ({pos}, {neg}) with {zero} null directions, expected (1, {})",
                rank - 1
            )));
        }
        Ok(IntersectionLattice { rank, gram })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn check(&self, a: &DivisorClass) -> Result<()> {
        if a.rank() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: a.rank(),
            });
        }
        Ok(())
    }

    /// Intersection product of classes already known to have the lattice rank.
    ///
    /// Panics on a rank mismatch; use [`pair`] for unchecked input.
    pub fn dot(&self, a: &DivisorClass, b: &DivisorClass) -> Rational {
        assert!(
            a.rank() == self.rank && b.rank() == self.rank,
            "class rank does not match lattice rank {}",
            self.rank
        );
        let mut acc = Rational::zero();
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let mut row = Rational::zero();
            for (j, bj) in b.coords.iter().enumerate() {
                let g = self.gram[i][j];
                if g != 0 && !bj.is_zero() {
                    row += bj * int(g);
                }
            }
            acc += ai * row;
        }
        acc
    }

    pub fn square(&self, a: &DivisorClass) -> Rational {
        self.dot(a, a)
    }
}

/// `aᵀ · gram · b`.
pub fn pair(lattice: &IntersectionLattice, a: &DivisorClass, b: &DivisorClass) -> Result<Rational> {
    lattice.check(a)?;
    lattice.check(b)?;
    Ok(lattice.dot(a, b))
}

/// Which built-in family a surface came from, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preset {
    Custom,
    /// Very general degree-`d` surface in `P^3`.
    P3Hypersurface { d: i64 },
    /// Very general degree-`d` cyclic cover of `P^2` branched along a degree-`e` curve.
    CyclicCover { d: i64, e: i64 },
    /// Blow-up of `P^2` in eight general points.
    DelPezzo1,
}

/// Everything the engine needs to know about a surface `X` with `q = 0`.
///
/// A class is treated as effective when it lies in the cone spanned by
/// `effective_generators` and in the subgroup they generate. On a rank-one
/// surface with generator `aH` these are the multiples of `aH`; for the del
/// Pezzo preset every integral cone point qualifies. Custom surfaces must
/// supply generators for which this describes the effective classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceData {
    pub name: String,
    pub lattice: IntersectionLattice,
    pub canonical: DivisorClass,
    pub chi_o: i64,
    pub effective_generators: Vec<DivisorClass>,
    pub ample_reference: DivisorClass,
    pub preset: Preset,
    /// Echelon basis of the subgroup spanned by the generators.
    generator_span: Vec<Vec<BigInt>>,
}

impl SurfaceData {
    pub fn new(
        name: impl Into<String>,
        lattice: IntersectionLattice,
        canonical: DivisorClass,
        chi_o: i64,
        effective_generators: Vec<DivisorClass>,
        ample_reference: DivisorClass,
        preset: Preset,
    ) -> Result<Self> {
        lattice.check(&canonical)?;
        lattice.check(&ample_reference)?;
        if !canonical.integral() {
            return Err(Error::InvalidSurface("canonical class must be integral".into()));
        }
        if !ample_reference.integral() {
            return Err(Error::InvalidSurface("ample reference must be integral".into()));
        }
        if effective_generators.is_empty() {
            return Err(Error::InvalidSurface("no effective generators".into()));
        }
        for g in &effective_generators {
            lattice.check(g)?;
            if g.is_zero() {
                return Err(Error::InvalidSurface("zero effective generator".into()));
            }
            if !g.integral() {
                return Err(Error::InvalidSurface("effective generators must be integral".into()));
            }
        }
        let generator_span = echelon(
            effective_generators
                .iter()
                .map(|g| g.coords.iter().map(|c| c.numer().clone()).collect())
                .collect(),
        );
        let surface = SurfaceData {
            generator_span,
            name: name.into(),
            lattice,
            canonical,
            chi_o,
            effective_generators,
            ample_reference,
            preset,
        };
        if !validate_polarization(&surface, &surface.ample_reference) {
            return Err(Error::InvalidSurface(
                "ample reference is not positive on the effective cone".into(),
            ));
        }
        Ok(surface)
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// Surfaces handled by the engine always have `h^1(O_X) = 0`.
    pub const fn irregularity_zero(&self) -> bool {
        true
    }

    pub fn dot(&self, a: &DivisorClass, b: &DivisorClass) -> Rational {
        self.lattice.dot(a, b)
    }

    pub fn is_effective(&self, class: &DivisorClass) -> bool {
        self.in_generator_span(class) && cone_membership(class, &self.effective_generators)
    }

    /// Whether an integral class is an integer combination of the generators.
    pub fn in_generator_span(&self, class: &DivisorClass) -> bool {
        if !class.integral() {
            return false;
        }
        if self.generator_span.len() == self.rank()
            && self.generator_span.iter().enumerate().all(|(i, row)| row[i].is_one())
        {
            return true;
        }
        let mut x: Vec<BigInt> = class.coords.iter().map(|c| c.numer().clone()).collect();
        for row in &self.generator_span {
            let p = row.iter().position(|v| !v.is_zero()).expect("echelon rows are nonzero");
            let (q, r) = x[p].div_rem(&row[p]);
            if !r.is_zero() {
                return false;
            }
            for (xi, ri) in x.iter_mut().zip(row) {
                *xi -= &q * ri;
            }
        }
        x.iter().all(Zero::is_zero)
    }
}

/// Row echelon basis over `Z` of the rows, with positive pivots.
fn echelon(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let width = rows.first().map_or(0, Vec::len);
    let mut basis = Vec::new();
    for col in 0..width {
        loop {
            rows.retain(|r| r.iter().any(|v| !v.is_zero()));
            let Some(pivot) = rows
                .iter()
                .enumerate()
                .filter(|(_, r)| !r[col].is_zero())
                .min_by(|(_, a), (_, b)| a[col].abs().cmp(&b[col].abs()))
                .map(|(i, _)| i)
            else {
                break;
            };
            let mut prow = rows.swap_remove(pivot);
            if prow[col].is_negative() {
                prow.iter_mut().for_each(|v| *v = -&*v);
            }
            let mut done = true;
            for r in rows.iter_mut() {
                if r[col].is_zero() {
                    continue;
                }
                let q = r[col].div_floor(&prow[col]);
                for (v, p) in r.iter_mut().zip(&prow) {
                    *v -= &q * p;
                }
                if !r[col].is_zero() {
                    done = false;
                }
            }
            if done {
                basis.push(prow);
                break;
            }
            rows.push(prow);
        }
    }
    basis
}

/// `p_a(C) = 1 + (C² + C·K)/2`.
pub fn arithmetic_genus(surface: &SurfaceData, c: &DivisorClass) -> Rational {
    let l = &surface.lattice;
    int(1) + (l.dot(c, c) + l.dot(c, &surface.canonical)) / int(2)
}

/// `h² > 0` and `h·G > 0` for every effective generator.
///
/// These are necessary conditions for ampleness; they are sufficient when the
/// generators span the closed cone of curves.
pub fn validate_polarization(surface: &SurfaceData, h: &DivisorClass) -> bool {
    if surface.lattice.check(h).is_err() {
        return false;
    }
    surface.lattice.square(h).is_positive()
        && surface
            .effective_generators
            .iter()
            .all(|g| surface.lattice.dot(h, g).is_positive())
}

/// Whether `point` is a non-negative rational combination of `generators`.
pub fn cone_membership(point: &DivisorClass, generators: &[DivisorClass]) -> bool {
    if point.is_zero() {
        return true;
    }
    if generators.is_empty() || generators.iter().any(|g| g.rank() != point.rank()) {
        return false;
    }
    let columns: Vec<Vec<Rational>> = generators.iter().map(|g| g.coords.clone()).collect();
    lp::feasible(&columns, &point.coords).is_some()
}

/// The polytope `{Σ λ_i G_i : λ >= 0, h·x <= bound}` used to bound effective
/// classes of small degree.
struct DegreeSlab<'a> {
    generators: &'a [DivisorClass],
    weights: Vec<Rational>,
    bound: Rational,
    small: Option<SmallSlab>,
}

/// The slab data in fixed-width rationals.
struct SmallSlab {
    generators: Vec<Vec<Small>>,
    weights: Vec<Small>,
    bound: Small,
}

impl SmallSlab {
    fn new(generators: &[DivisorClass], weights: &[Rational], bound: &Rational) -> Option<Self> {
        let conv = |v: &[Rational]| v.iter().map(lp::to_small).collect::<Option<Vec<_>>>();
        Some(SmallSlab {
            generators: generators.iter().map(|g| conv(&g.coords)).collect::<Option<_>>()?,
            weights: conv(weights)?,
            bound: lp::to_small(bound)?,
        })
    }

    /// `None` on overflow.
    fn coordinate_range(&self, prefix: &[i64]) -> Option<Option<(i64, i64)>> {
        let prefix: Vec<Small> = prefix.iter().map(|&p| Small::from_integer(p.into())).collect();
        let (min, max) = range_programs(&self.generators, &self.weights, &self.bound, &prefix);
        let Some(lo) = optimum(lp::solve_small(&min)?) else {
            return Some(None);
        };
        let Some(neg_hi) = optimum(lp::solve_small(&max)?) else {
            return Some(None);
        };
        let lo = i64::try_from(lo.ceil().to_integer()).ok()?;
        let hi = i64::try_from((-neg_hi).floor().to_integer()).ok()?;
        Some((lo <= hi).then_some((lo, hi)))
    }
}

/// `min` and `-max` programs for coordinate `prefix.len()`.
fn range_programs<T: Clone + Zero + One + core::ops::Neg<Output = T>>(
    generators: &[Vec<T>],
    weights: &[T],
    bound: &T,
    prefix: &[T],
) -> (LinearProgram<T>, LinearProgram<T>) {
    let k = prefix.len();
    let mut columns: Vec<Vec<T>> = generators
        .iter()
        .zip(weights)
        .map(|(g, w)| {
            let mut col: Vec<T> = g[..k].to_vec();
            col.push(w.clone());
            col
        })
        .collect();
    let mut slack = vec![T::zero(); k];
    slack.push(T::one());
    columns.push(slack);
    let mut rhs = prefix.to_vec();
    rhs.push(bound.clone());
    let mut cost: Vec<T> = generators.iter().map(|g| g[k].clone()).collect();
    cost.push(T::zero());
    let neg_cost = cost.iter().map(|c| -c.clone()).collect();
    let min = LinearProgram { columns: columns.clone(), rhs: rhs.clone(), cost };
    let max = LinearProgram { columns, rhs, cost: neg_cost };
    (min, max)
}

fn optimum<T>(outcome: LpOutcome<T>) -> Option<T> {
    match outcome {
        LpOutcome::Optimal { value, .. } => Some(value),
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("positive weights bound the slab"),
    }
}

impl DegreeSlab<'_> {
    /// Integer range of coordinate `prefix.len()` over the slab with the
    /// leading coordinates pinned to `prefix`, or `None` when that slice is empty.
    fn coordinate_range(&self, prefix: &[i64]) -> Option<(i64, i64)> {
        if let Some(small) = &self.small {
            if let Some(range) = small.coordinate_range(prefix) {
                return range;
            }
        }
        let coords: Vec<Vec<Rational>> = self.generators.iter().map(|g| g.coords.clone()).collect();
        let prefix_q: Vec<Rational> = prefix.iter().map(|&p| int(p)).collect();
        let (min, max) = range_programs(&coords, &self.weights, &self.bound, &prefix_q);
        let lo = optimum(lp::solve(&min))?;
        let hi = -optimum(lp::solve(&max))?;
        let lo = ceil_i64(&lo)?;
        let hi = floor_i64(&hi)?;
        (lo <= hi).then_some((lo, hi))
    }

    fn walk(
        &self,
        surface: &SurfaceData,
        polarization: &DivisorClass,
        prefix: &mut Vec<i64>,
        out: &mut Vec<DivisorClass>,
    ) {
        let rank = surface.rank();
        let Some((lo, hi)) = self.coordinate_range(prefix) else {
            return;
        };
        if prefix.len() + 1 == rank {
            // The slice over a fixed prefix is a segment, so every integer
            // point of the range lies in the slab.
            for v in lo..=hi {
                prefix.push(v);
                let class = DivisorClass::from_ints(prefix);
                prefix.pop();
                if class.is_zero() {
                    continue;
                }
                let degree = surface.lattice.dot(polarization, &class);
                if degree.is_positive() && degree < self.bound && surface.in_generator_span(&class) {
                    out.push(class);
                }
            }
            return;
        }
        for v in lo..=hi {
            prefix.push(v);
            self.walk(surface, polarization, prefix, out);
            prefix.pop();
        }
    }
}

fn degree_slab<'a>(
    surface: &'a SurfaceData,
    polarization: &DivisorClass,
    bound: &Rational,
) -> Result<Option<DegreeSlab<'a>>> {
    if !validate_polarization(surface, polarization) {
        return Err(Error::InvalidSlice(
            "polarization is not positive on the effective cone".into(),
        ));
    }
    if !bound.is_positive() {
        return Ok(None);
    }
    let weights: Vec<Rational> = surface
        .effective_generators
        .iter()
        .map(|g| surface.lattice.dot(polarization, g))
        .collect();
    let small = SmallSlab::new(&surface.effective_generators, &weights, bound);
    Ok(Some(DegreeSlab {
        generators: &surface.effective_generators,
        weights,
        bound: bound.clone(),
        small,
    }))
}

/// Range of the first coordinate over effective classes of degree at most
/// `bound`. Lets callers split [`enumerate_effective_below`] into independent
/// pieces with [`enumerate_effective_below_slab`].
pub fn effective_first_coordinate_range(
    surface: &SurfaceData,
    polarization: &DivisorClass,
    bound: &Rational,
) -> Result<Option<(i64, i64)>> {
    Ok(degree_slab(surface, polarization, bound)?.and_then(|s| s.coordinate_range(&[])))
}

/// The part of [`enumerate_effective_below`] whose first coordinate is `first`.
pub fn enumerate_effective_below_slab(
    surface: &SurfaceData,
    polarization: &DivisorClass,
    bound: &Rational,
    first: i64,
) -> Result<Vec<DivisorClass>> {
    let Some(slab) = degree_slab(surface, polarization, bound)? else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    if surface.rank() == 1 {
        let class = DivisorClass::from_ints(&[first]);
        let degree = surface.lattice.dot(polarization, &class);
        if !class.is_zero()
            && degree.is_positive()
            && degree < *bound
            && surface.is_effective(&class)
        {
            out.push(class);
        }
        return Ok(out);
    }
    let mut prefix = vec![first];
    slab.walk(surface, polarization, &mut prefix, &mut out);
    Ok(out)
}

/// Integral effective classes `L ≠ 0` with `0 < polarization·L < bound`, in
/// lexicographic order of their coordinates.
pub fn enumerate_effective_below(
    surface: &SurfaceData,
    polarization: &DivisorClass,
    bound: &Rational,
) -> Result<Vec<DivisorClass>> {
    let Some(slab) = degree_slab(surface, polarization, bound)? else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    if surface.rank() == 1 {
        if let Some((lo, hi)) = slab.coordinate_range(&[]) {
            for v in lo..=hi {
                out.extend(enumerate_effective_below_slab(surface, polarization, bound, v)?);
            }
        }
    } else {
        slab.walk(surface, polarization, &mut Vec::new(), &mut out);
    }
    out.sort();
    Ok(out)
}
