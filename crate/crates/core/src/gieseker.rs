//! Critical divisors and the Gieseker wall for `X^[n]`.
//!
//! The wall is searched among line-bundle subobjects `O_X(-L)` with `L`
//! critical. Each result carries the certificate that justifies it, or
//! [`Certificate::Inconclusive`] when none applies.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::chern::{mumford_slope, ChernCharacter, Slice, Slope};
use crate::error::{Error, Result};
use crate::lattice::{enumerate_effective_below, DivisorClass};
use crate::rational::{int, Rational};
use crate::walls::{higher_rank_bound, numerical_wall, wall_order, Wall};

/// `CrDiv(H, D) = {-D} ∪ {L effective : H·L < H·(-D)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalDivisorSet {
    /// `-D` first, then the remaining classes in lexicographic order.
    pub members: Vec<DivisorClass>,
    pub includes_minus_d: bool,
    /// `D = 0`: the set is `{0}` and no certificate may be built on it.
    pub degenerate: bool,
}

impl CriticalDivisorSet {
    /// Assembles the set from the effective classes of degree below `H·(-D)`.
    pub fn from_effective_below(slice: &Slice, mut below: Vec<DivisorClass>) -> Result<Self> {
        let minus_d = -&slice.d_twist;
        if slice.is_degenerate() {
            return Ok(CriticalDivisorSet {
                members: alloc::vec![minus_d],
                includes_minus_d: true,
                degenerate: true,
            });
        }
        below.sort();
        below.dedup();
        below.retain(|l| *l != minus_d);
        // H·L < H·(-D) is the same as μ_{H,D}(O(-L)) > 0.
        let bound = slice.dot(&slice.h, &minus_d);
        for l in &below {
            let o = ChernCharacter::line_bundle(slice.lattice(), &-l);
            let positive = matches!(mumford_slope(&o, slice), Slope::Finite(ref mu) if mu.is_positive());
            if !positive || slice.dot(&slice.h, l) >= bound {
                return Err(Error::Precondition(format!(
                    "class {:?} is not critical",
                    l.coords
                )));
            }
        }
        let mut members = alloc::vec![minus_d];
        members.extend(below);
        Ok(CriticalDivisorSet {
            members,
            includes_minus_d: true,
            degenerate: false,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn critical_divisors(slice: &Slice) -> Result<CriticalDivisorSet> {
    if slice.is_degenerate() {
        return CriticalDivisorSet::from_effective_below(slice, Vec::new());
    }
    let bound = slice.dot(&slice.h, &-&slice.d_twist);
    let below = enumerate_effective_below(&slice.surface, &slice.h, &bound)?;
    CriticalDivisorSet::from_effective_below(slice, below)
}

/// `η_{H,D} = ((H·D)² + d D²) / (2d)`.
pub fn eta(slice: &Slice) -> Rational {
    let hd = slice.h_dot_d();
    (&hd * &hd + &slice.d * slice.d_squared()) / (&slice.d * int(2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Certificate {
    /// The wall's `ρ²` is at least the higher-rank bound `ϱ_{H,D,n}`.
    RadiusDominatesHigherRank,
    /// `n >= η_{H,D}`.
    EtaBound,
    /// Picard rank one, `H` effective, slice `(H, -H)` and `2n > d`.
    PicRankOneHalfDegree,
    Inconclusive,
}

impl Certificate {
    pub fn name(&self) -> &'static str {
        match self {
            Certificate::RadiusDominatesHigherRank => "RadiusDominatesHigherRank",
            Certificate::EtaBound => "EtaBound",
            Certificate::PicRankOneHalfDegree => "PicRankOneHalfDegree",
            Certificate::Inconclusive => "Inconclusive",
        }
    }

    pub fn is_certified(&self) -> bool {
        !matches!(self, Certificate::Inconclusive)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GiesekerWallResult {
    pub n: i64,
    pub wall: Wall,
    /// Every `L` whose `O(-L)` realizes the maximal wall, lexicographically ordered.
    pub destabilizers: Vec<DivisorClass>,
    pub certificate: Certificate,
    pub jordan_holder_unique: bool,
    pub degenerate: bool,
    pub eta: Rational,
    /// `ϱ_{H,D,n}`.
    pub higher_rank_bound: Rational,
}

fn is_half_degree_case(slice: &Slice, n: i64) -> bool {
    let s = &slice.surface;
    s.rank() == 1
        && slice.h == DivisorClass::from_ints(&[1])
        && slice.d_twist == DivisorClass::from_ints(&[-1])
        && s.effective_generators.contains(&slice.h)
        && int(2 * n) > slice.d
}

/// Gieseker wall for `X^[n]` in the slice, maximizing over [`critical_divisors`].
pub fn gieseker_wall(slice: &Slice, n: i64) -> Result<GiesekerWallResult> {
    check_n(slice, n)?;
    let crdiv = critical_divisors(slice)?;
    gieseker_wall_with(slice, n, &crdiv)
}

fn check_n(slice: &Slice, n: i64) -> Result<()> {
    if n < 1 {
        return Err(Error::Precondition(format!("n = {n} must be positive")));
    }
    if int(2 * n) <= slice.d_squared() {
        return Err(Error::Precondition(format!(
            "2n > D² fails: 2n = {}, D² = {}",
            2 * n,
            slice.d_squared()
        )));
    }
    Ok(())
}

/// [`gieseker_wall`] with a precomputed critical set.
pub fn gieseker_wall_with(
    slice: &Slice,
    n: i64,
    crdiv: &CriticalDivisorSet,
) -> Result<GiesekerWallResult> {
    check_n(slice, n)?;
    let rank = slice.surface.rank();
    let v = ChernCharacter::ideal_sheaf(n, rank);
    let eta = eta(slice);
    let varrho = higher_rank_bound(n, slice);

    if crdiv.degenerate || slice.is_degenerate() {
        let o = ChernCharacter::line_bundle(slice.lattice(), &DivisorClass::zero(rank));
        return Ok(GiesekerWallResult {
            n,
            wall: numerical_wall(&v, &o, slice)?,
            destabilizers: crdiv.members.clone(),
            certificate: Certificate::Inconclusive,
            jordan_holder_unique: false,
            degenerate: true,
            eta,
            higher_rank_bound: varrho,
        });
    }

    let mu_v = match mumford_slope(&v, slice) {
        Slope::Finite(mu) => mu,
        Slope::PosInfinity => unreachable!("ideal sheaves have rank one"),
    };
    let mut best = Wall::Empty;
    let mut destabilizers: Vec<DivisorClass> = Vec::new();
    for l in &crdiv.members {
        let w = ChernCharacter::line_bundle(slice.lattice(), &-l);
        let wall = numerical_wall(&v, &w, slice)?;
        let left = matches!(&wall, Wall::Semicircle { center, .. } if *center < mu_v);
        if !left {
            continue;
        }
        match wall_order(&wall, &best)? {
            Ordering::Greater => {
                best = wall;
                destabilizers.clear();
                destabilizers.push(l.clone());
            }
            Ordering::Equal => destabilizers.push(l.clone()),
            Ordering::Less => {}
        }
    }
    destabilizers.sort();

    let certificate = match &best {
        Wall::Semicircle { radius_sq, .. } => {
            if int(n) >= eta {
                Certificate::EtaBound
            } else if *radius_sq >= varrho {
                Certificate::RadiusDominatesHigherRank
            } else if is_half_degree_case(slice, n) {
                Certificate::PicRankOneHalfDegree
            } else {
                Certificate::Inconclusive
            }
        }
        _ => Certificate::Inconclusive,
    };
    let jordan_holder_unique =
        certificate.is_certified() && destabilizers.len() == 1 && int(n) > eta;
    Ok(GiesekerWallResult {
        n,
        wall: best,
        destabilizers,
        certificate,
        jordan_holder_unique,
        degenerate: false,
        eta,
        higher_rank_bound: varrho,
    })
}

/// `0 → O_X(-L) → I_Z → I_{Z⊂C} → 0` for one destabilizer `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanHolderPair {
    pub destabilizer: DivisorClass,
    pub sub: ChernCharacter,
    pub quotient: ChernCharacter,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanHolderReport {
    pub pairs: Vec<JordanHolderPair>,
    /// The two factors are the Jordan–Hölder factors of every destabilized `I_Z`.
    pub unique: bool,
}

/// Destabilizing sequences along a certified Gieseker wall.
///
/// Refused unless higher-rank subobjects are excluded strictly, i.e.
/// `n > η` or `ρ² > ϱ`.
pub fn jordan_holder_report(
    result: &GiesekerWallResult,
    slice: &Slice,
    n: i64,
) -> Result<JordanHolderReport> {
    if !matches!(
        result.certificate,
        Certificate::EtaBound | Certificate::RadiusDominatesHigherRank
    ) {
        return Err(Error::Refused(format!(
            "certificate {} does not control higher-rank subobjects",
            result.certificate.name()
        )));
    }
    let strict_radius = result
        .wall
        .radius_sq()
        .is_some_and(|r| *r > result.higher_rank_bound);
    if int(n) <= result.eta && !strict_radius {
        return Err(Error::Refused(format!(
            "n = {n} does not exceed η = {} and the wall does not strictly beat ϱ",
            result.eta
        )));
    }
    let v = ChernCharacter::ideal_sheaf(n, slice.surface.rank());
    let pairs: Vec<JordanHolderPair> = result
        .destabilizers
        .iter()
        .map(|l| {
            let sub = ChernCharacter::line_bundle(slice.lattice(), &-l);
            let quotient = &v - &sub;
            JordanHolderPair {
                destabilizer: l.clone(),
                sub,
                quotient,
            }
        })
        .collect();
    let unique = pairs.len() == 1;
    Ok(JordanHolderReport { pairs, unique })
}

/// The critical divisors computing the Gieseker wall for all large `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticDestabilizer {
    /// Classes tied for the asymptotically largest wall, lexicographically ordered.
    pub winners: Vec<DivisorClass>,
    /// Beyond this `n` the winners' centers are `<=` every other center.
    pub crossing_threshold: Rational,
    /// `max(crossing_threshold, η)`: from here on the winners also give the
    /// Gieseker wall.
    pub threshold: Rational,
}

impl AsymptoticDestabilizer {
    pub fn class(&self) -> &DivisorClass {
        &self.winners[0]
    }
}

/// `s_L(n) = -n/(H·L) + c_L` with `c_L = -(L² + 2D·L)/(2H·L)`.
fn center_line(slice: &Slice, l: &DivisorClass) -> (Rational, Rational) {
    let hl = slice.dot(&slice.h, l);
    let c = -(slice.dot(l, l) + slice.dot(&slice.d_twist, l) * int(2)) / (&hl * int(2));
    (hl, c)
}

pub fn asymptotic_destabilizer(slice: &Slice) -> Result<AsymptoticDestabilizer> {
    let crdiv = critical_divisors(slice)?;
    asymptotic_destabilizer_with(slice, &crdiv)
}

pub fn asymptotic_destabilizer_with(
    slice: &Slice,
    crdiv: &CriticalDivisorSet,
) -> Result<AsymptoticDestabilizer> {
    if crdiv.degenerate || crdiv.is_empty() {
        return Err(Error::Precondition("critical set is degenerate".into()));
    }
    let lines: Vec<(Rational, Rational)> =
        crdiv.members.iter().map(|l| center_line(slice, l)).collect();
    // Smallest H·L has the steepest descent; then the smallest intercept.
    let key = |i: usize| (&lines[i].0, &lines[i].1);
    let best = (0..lines.len()).min_by(|&i, &j| key(i).cmp(&key(j))).expect("non-empty");
    let (h_best, c_best) = lines[best].clone();
    let mut winners: Vec<DivisorClass> = Vec::new();
    let mut crossing = Rational::zero();
    for (l, (h, c)) in crdiv.members.iter().zip(&lines) {
        if *h == h_best && *c == c_best {
            winners.push(l.clone());
            continue;
        }
        if *h == h_best {
            continue;
        }
        // s_best(n) <= s_L(n)  ⟺  n >= (c_best - c) / (1/h_best - 1/h).
        let gap = h_best.recip() - h.recip();
        let t = (&c_best - c) / gap;
        if t > crossing {
            crossing = t;
        }
    }
    winners.sort();
    let e = eta(slice);
    let threshold = if e > crossing { e } else { crossing.clone() };
    Ok(AsymptoticDestabilizer {
        winners,
        crossing_threshold: crossing,
        threshold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use crate::rational::frac;
    use alloc::sync::Arc;

    fn rank_one_slice(d: i64, k: i64, a: i64) -> Slice {
        let s = Arc::new(presets::picard_rank_one("test", d, k, a, 1).unwrap());
        Slice::new(s, DivisorClass::from_ints(&[1]), DivisorClass::from_ints(&[-a])).unwrap()
    }

    #[test]
    fn rank_one_critical_set_is_minus_d() {
        let s = rank_one_slice(3, 1, 2);
        let cr = critical_divisors(&s).unwrap();
        assert_eq!(cr.members, alloc::vec![DivisorClass::from_ints(&[2])]);
        assert!(cr.includes_minus_d && !cr.degenerate);
    }

    #[test]
    fn quintic_at_eta() {
        let s = rank_one_slice(5, 1, 1);
        let r = gieseker_wall(&s, 5).unwrap();
        assert_eq!(r.wall, Wall::semicircle(frac(-1, 2), frac(1, 4)));
        assert_eq!(r.destabilizers, alloc::vec![DivisorClass::from_ints(&[1])]);
        assert_eq!(r.certificate, Certificate::EtaBound);
        assert_eq!(r.eta, int(5));
        assert!(!r.jordan_holder_unique);
        assert!(jordan_holder_report(&r, &s, 5).is_err());

        let r6 = gieseker_wall(&s, 6).unwrap();
        assert!(r6.jordan_holder_unique);
        let rep = jordan_holder_report(&r6, &s, 6).unwrap();
        assert!(rep.unique);
        assert_eq!(
            rep.pairs[0].quotient,
            ChernCharacter::new(0, DivisorClass::from_ints(&[1]), int(-6) - frac(5, 2))
        );
    }

    #[test]
    fn rank_one_center_formula() {
        for (d, a) in [(2, 1), (3, 2), (5, 1), (1, 3)] {
            let s = rank_one_slice(d, 0, a);
            for n in a * a * d..a * a * d + 4 {
                let r = gieseker_wall(&s, n).unwrap();
                assert_eq!(r.wall.center().unwrap(), &(frac(a, 2) - frac(n, a * d)));
                assert_eq!(r.certificate, Certificate::EtaBound);
            }
        }
    }

    #[test]
    fn small_n_guard() {
        let s = rank_one_slice(5, 1, 1);
        assert!(matches!(gieseker_wall(&s, 1), Err(Error::Precondition(_))));
        assert!(matches!(gieseker_wall(&s, 2), Err(Error::Precondition(_))));
        let r = gieseker_wall(&s, 3).unwrap();
        assert_eq!(r.certificate, Certificate::PicRankOneHalfDegree);
    }

    #[test]
    fn degenerate_twist_is_flagged() {
        let surface = Arc::new(presets::p3_hypersurface(5).unwrap());
        let s = Slice::new(surface, DivisorClass::from_ints(&[1]), DivisorClass::zero(1)).unwrap();
        let cr = critical_divisors(&s).unwrap();
        assert!(cr.degenerate);
        assert_eq!(cr.members, alloc::vec![DivisorClass::zero(1)]);
        let r = gieseker_wall(&s, 4).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.certificate, Certificate::Inconclusive);
        assert!(jordan_holder_report(&r, &s, 4).is_err());
        assert!(asymptotic_destabilizer(&s).is_err());
    }

    #[test]
    fn asymptotics_rank_one() {
        let s = rank_one_slice(3, 1, 2);
        let a = asymptotic_destabilizer(&s).unwrap();
        assert_eq!(a.winners, alloc::vec![DivisorClass::from_ints(&[2])]);
        assert_eq!(a.crossing_threshold, int(0));
        assert_eq!(a.threshold, int(12));
    }
}
