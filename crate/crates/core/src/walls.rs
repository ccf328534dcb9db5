//! Numerical walls in an `(H, D)`-slice.
//!
//! Radii are irrational in general, so semicircles carry `ρ²`.

use core::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::chern::{discriminant, mumford_slope, ChernCharacter, Slice, Slope};
use crate::error::{Error, Result};
use crate::lattice::DivisorClass;
use crate::rational::{int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Wall {
    /// Same slope everywhere in the slice: no numerical wall.
    Everywhere,
    /// The vertical wall `β = μ`.
    Vertical(Rational),
    /// Semicircle with center `(center, 0)`; `radius_sq > 0`.
    Semicircle { center: Rational, radius_sq: Rational },
    Empty,
}

impl Wall {
    /// A semicircle, collapsing non-positive `ρ²` to [`Wall::Empty`].
    pub fn semicircle(center: Rational, radius_sq: Rational) -> Wall {
        if radius_sq.is_positive() {
            Wall::Semicircle { center, radius_sq }
        } else {
            Wall::Empty
        }
    }

    pub fn center(&self) -> Option<&Rational> {
        match self {
            Wall::Semicircle { center, .. } => Some(center),
            _ => None,
        }
    }

    pub fn radius_sq(&self) -> Option<&Rational> {
        match self {
            Wall::Semicircle { radius_sq, .. } => Some(radius_sq),
            _ => None,
        }
    }

    /// Whether `(β, α²)` lies on the wall.
    pub fn contains(&self, beta: &Rational, alpha_sq: &Rational) -> bool {
        match self {
            Wall::Everywhere => true,
            Wall::Empty => false,
            Wall::Vertical(b) => b == beta,
            Wall::Semicircle { center, radius_sq } => {
                let x = beta - center;
                &x * &x + alpha_sq == *radius_sq
            }
        }
    }
}

fn slope_and_discriminant(v: &ChernCharacter, slice: &Slice) -> Result<(Rational, Rational)> {
    if v.rank <= 0 {
        return Err(Error::UnsupportedComparison);
    }
    let mu = match mumford_slope(v, slice) {
        Slope::Finite(mu) => mu,
        Slope::PosInfinity => return Err(Error::UnsupportedComparison),
    };
    Ok((mu, discriminant(v, slice)?))
}

/// The locus where `v` and `w` have equal Bridgeland slope. Both ranks must be positive.
pub fn numerical_wall(v: &ChernCharacter, w: &ChernCharacter, slice: &Slice) -> Result<Wall> {
    let (mu, delta) = slope_and_discriminant(v, slice)?;
    let (mu_w, delta_w) = slope_and_discriminant(w, slice)?;
    if mu == mu_w {
        return Ok(if delta == delta_w {
            Wall::Everywhere
        } else {
            Wall::Vertical(mu)
        });
    }
    let center = (&mu + &mu_w) / int(2) - (&delta - &delta_w) / (&mu - &mu_w);
    let x = &center - &mu;
    let radius_sq = &x * &x - delta * int(2);
    Ok(Wall::semicircle(center, radius_sq))
}

/// Center of the wall for `X^[n]` given by `I_{Z'}(-L)` with `|Z'| = w_len`:
/// `-(2(n-w) + L² + 2 D·L) / (2 H·L)`.
pub fn rank_one_wall_center(
    n: i64,
    l: &DivisorClass,
    w_len: i64,
    slice: &Slice,
) -> Result<Rational> {
    let hl = slice.dot(&slice.h, l);
    if hl.is_zero() {
        return Err(Error::DegenerateWall);
    }
    let num = int(2 * (n - w_len)) + slice.dot(l, l) + slice.dot(&slice.d_twist, l) * int(2);
    Ok(-num / (hl * int(2)))
}

/// Bound `ϱ_{H,D,n} = (2nd + (H·D)² - d D²) / (8d²)` on `ρ²` for walls of
/// ideal sheaves given by subobjects of rank at least two.
pub fn higher_rank_bound(n: i64, slice: &Slice) -> Rational {
    let d = &slice.d;
    let hd = slice.h_dot_d();
    (int(2 * n) * d + &hd * &hd - d * slice.d_squared()) / (d * d * int(8))
}

/// `min{f-1, e}² / (2f) · Δ` for a subobject of rank `f` of a sheaf of rank `e`.
pub fn higher_rank_bound_general(e: i64, f: i64, delta: &Rational) -> Result<Rational> {
    if e < 1 || f < 2 || delta.is_negative() {
        return Err(Error::Precondition(
            "need e >= 1, f >= 2 and a non-negative discriminant".into(),
        ));
    }
    let m = (f - 1).min(e);
    Ok(int(m * m) * delta / int(2 * f))
}

/// Exact form `μ - √(2Δ)` of the point where walls left of the vertical wall accumulate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AccumulationPoint {
    pub mu: Rational,
    pub two_delta: Rational,
}

pub fn accumulation_point(v: &ChernCharacter, slice: &Slice) -> Result<AccumulationPoint> {
    let (mu, delta) = slope_and_discriminant(v, slice)?;
    if delta.is_negative() {
        return Err(Error::NoAccumulation);
    }
    Ok(AccumulationPoint {
        mu,
        two_delta: delta * int(2),
    })
}

/// Nesting order of walls on the same side of the vertical wall.
/// `Greater` means `w1` strictly contains `w2`; a smaller center is a larger
/// wall. Empty walls sit below every semicircle.
pub fn wall_order(w1: &Wall, w2: &Wall) -> Result<Ordering> {
    match (w1, w2) {
        (Wall::Semicircle { center: a, .. }, Wall::Semicircle { center: b, .. }) => Ok(b.cmp(a)),
        (Wall::Semicircle { .. }, Wall::Empty) => Ok(Ordering::Greater),
        (Wall::Empty, Wall::Semicircle { .. }) => Ok(Ordering::Less),
        (Wall::Empty, Wall::Empty) => Ok(Ordering::Equal),
        _ => Err(Error::Incomparable(
            "only semicircles and empty walls are ordered".into(),
        )),
    }
}
