//! Chern characters, slopes, central charges and the Euler pairing.

use alloc::sync::Arc;
use core::ops::{Add, Sub};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{validate_polarization, DivisorClass, IntersectionLattice, SurfaceData};
use crate::rational::{int, Rational};

/// Numerical Chern character `(ch₀, ch₁, ch₂)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChernCharacter {
    pub rank: i64,
    pub c1: DivisorClass,
    pub ch2: Rational,
}

impl ChernCharacter {
    pub fn new(rank: i64, c1: DivisorClass, ch2: Rational) -> Self {
        ChernCharacter { rank, c1, ch2 }
    }

    /// `ch(I_Z) = (1, 0, -n)` for `Z` of length `n`.
    pub fn ideal_sheaf(n: i64, lattice_rank: usize) -> Self {
        ChernCharacter::new(1, DivisorClass::zero(lattice_rank), int(-n))
    }

    /// `ch(O_X(L)) = (1, L, L²/2)`.
    pub fn line_bundle(lattice: &IntersectionLattice, l: &DivisorClass) -> Self {
        ChernCharacter::new(1, l.clone(), lattice.square(l) / int(2))
    }

    /// Skyscraper sheaf of a point, `(0, 0, 1)`.
    pub fn point(lattice_rank: usize) -> Self {
        ChernCharacter::new(0, DivisorClass::zero(lattice_rank), int(1))
    }

    /// Derived dual: `(r, -c₁, ch₂)`.
    pub fn dual(&self) -> Self {
        ChernCharacter::new(self.rank, -&self.c1, self.ch2.clone())
    }

    /// Product in the Chern-character ring.
    pub fn product(&self, lattice: &IntersectionLattice, other: &Self) -> Self {
        let r = self.rank * other.rank;
        let c1 = &other.c1.scale(&int(self.rank)) + &self.c1.scale(&int(other.rank));
        let ch2 = &other.ch2 * int(self.rank)
            + &self.ch2 * int(other.rank)
            + lattice.dot(&self.c1, &other.c1);
        ChernCharacter::new(r, c1, ch2)
    }

    pub fn scale(&self, k: i64) -> Self {
        ChernCharacter::new(self.rank * k, self.c1.scale(&int(k)), &self.ch2 * int(k))
    }
}

impl Add for &ChernCharacter {
    type Output = ChernCharacter;
    fn add(self, rhs: &ChernCharacter) -> ChernCharacter {
        ChernCharacter::new(self.rank + rhs.rank, &self.c1 + &rhs.c1, &self.ch2 + &rhs.ch2)
    }
}

impl Sub for &ChernCharacter {
    type Output = ChernCharacter;
    fn sub(self, rhs: &ChernCharacter) -> ChernCharacter {
        ChernCharacter::new(self.rank - rhs.rank, &self.c1 - &rhs.c1, &self.ch2 - &rhs.ch2)
    }
}

/// A slope value. Torsion classes have positive infinite slope.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slope {
    Finite(Rational),
    PosInfinity,
}

impl Slope {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Slope::Finite(q) => Some(q),
            Slope::PosInfinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Slope::PosInfinity)
    }
}

/// The `(H, D)`-slice of stability conditions `σ_{β,α}`.
#[derive(Clone, Debug)]
pub struct Slice {
    pub surface: Arc<SurfaceData>,
    pub h: DivisorClass,
    pub d_twist: DivisorClass,
    /// `H²`.
    pub d: Rational,
}

impl Slice {
    /// Requires `H` to pass [`validate_polarization`] and `-D` to be effective.
    /// `D = 0` is accepted as a degenerate slice.
    pub fn new(surface: Arc<SurfaceData>, h: DivisorClass, d_twist: DivisorClass) -> Result<Self> {
        surface.lattice.check(&h)?;
        surface.lattice.check(&d_twist)?;
        if !validate_polarization(&surface, &h) {
            return Err(Error::InvalidSlice(
                "polarization fails h² > 0 or h·G > 0 on effective generators".into(),
            ));
        }
        if !d_twist.is_zero() && !surface.is_effective(&-&d_twist) {
            return Err(Error::InvalidSlice("twisting divisor D must be antieffective".into()));
        }
        let d = surface.lattice.square(&h);
        Ok(Slice {
            surface,
            h,
            d_twist,
            d,
        })
    }

    pub fn lattice(&self) -> &IntersectionLattice {
        &self.surface.lattice
    }

    /// `D = 0`: the slice has no critical divisors to speak of.
    pub fn is_degenerate(&self) -> bool {
        self.d_twist.is_zero()
    }

    pub fn dot(&self, a: &DivisorClass, b: &DivisorClass) -> Rational {
        self.surface.lattice.dot(a, b)
    }

    /// `H·D`.
    pub fn h_dot_d(&self) -> Rational {
        self.dot(&self.h, &self.d_twist)
    }

    /// `D²`.
    pub fn d_squared(&self) -> Rational {
        self.dot(&self.d_twist, &self.d_twist)
    }
}

/// A point `(β, α)` of the upper half plane, stored as `(β, α²)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlicePoint {
    pub beta: Rational,
    pub alpha_sq: Rational,
}

impl SlicePoint {
    pub fn new(beta: Rational, alpha_sq: Rational) -> Result<Self> {
        if !alpha_sq.is_positive() {
            return Err(Error::Precondition("α² must be positive".into()));
        }
        Ok(SlicePoint { beta, alpha_sq })
    }
}

/// `ch^D = e^{-D} ch`.
pub fn twist(lattice: &IntersectionLattice, v: &ChernCharacter, d: &DivisorClass) -> ChernCharacter {
    let r = int(v.rank);
    let c1 = &v.c1 - &d.scale(&r);
    let ch2 = &v.ch2 - lattice.dot(d, &v.c1) + lattice.square(d) / int(2) * &r;
    ChernCharacter::new(v.rank, c1, ch2)
}

/// `μ_{H,D} = H·ch₁^D / (H² ch₀^D)`.
pub fn mumford_slope(v: &ChernCharacter, slice: &Slice) -> Slope {
    if v.rank == 0 {
        return Slope::PosInfinity;
    }
    let t = twist(slice.lattice(), v, &slice.d_twist);
    Slope::Finite(slice.dot(&slice.h, &t.c1) / (&slice.d * int(v.rank)))
}

fn finite_slope(v: &ChernCharacter, slice: &Slice) -> Result<Rational> {
    match mumford_slope(v, slice) {
        Slope::Finite(mu) => Ok(mu),
        Slope::PosInfinity => Err(Error::UndefinedDiscriminant),
    }
}

/// `Δ_{H,D} = μ²/2 - ch₂^D / (H² ch₀^D)`.
pub fn discriminant(v: &ChernCharacter, slice: &Slice) -> Result<Rational> {
    let mu = finite_slope(v, slice)?;
    let t = twist(slice.lattice(), v, &slice.d_twist);
    Ok(&mu * &mu / int(2) - t.ch2 / (&slice.d * int(v.rank)))
}

/// `(Re Z, Im Z)` of `Z_{β,α} = -ch₂^{D+βH} + α²H²/2 ch₀^{D+βH} + i H·ch₁^{D+βH}`.
pub fn central_charge(v: &ChernCharacter, slice: &Slice, p: &SlicePoint) -> (Rational, Rational) {
    let shift = &slice.d_twist + &slice.h.scale(&p.beta);
    let t = twist(slice.lattice(), v, &shift);
    let re = -t.ch2.clone() + &p.alpha_sq * &slice.d / int(2) * int(t.rank);
    let im = slice.dot(&slice.h, &t.c1);
    (re, im)
}

/// Bridgeland slope in the normalization
/// `((μ-β)² - α² - 2Δ) / (μ-β)`, which is `-2 Re Z / Im Z`.
/// Rank-zero classes use `-2 Re Z / Im Z` directly. Vanishing `Im Z` gives `+∞`.
pub fn bridgeland_slope(v: &ChernCharacter, slice: &Slice, p: &SlicePoint) -> Slope {
    if v.rank == 0 {
        let (re, im) = central_charge(v, slice, p);
        if im.is_zero() {
            return Slope::PosInfinity;
        }
        return Slope::Finite(-re * int(2) / im);
    }
    let mu = finite_slope(v, slice).expect("non-zero rank has finite slope");
    let delta = discriminant(v, slice).expect("non-zero rank has a discriminant");
    let x = mu - &p.beta;
    if x.is_zero() {
        return Slope::PosInfinity;
    }
    Slope::Finite((&x * &x - &p.alpha_sq - delta * int(2)) / x)
}

/// Riemann–Roch: `χ(v) = ch₂ - K·ch₁/2 + ch₀ χ(O_X)`.
pub fn euler_characteristic(surface: &SurfaceData, v: &ChernCharacter) -> Rational {
    &v.ch2 - surface.dot(&surface.canonical, &v.c1) / int(2) + int(v.rank * surface.chi_o)
}

/// `(v, w) = χ(v·w)`.
pub fn euler_pairing(surface: &SurfaceData, v: &ChernCharacter, w: &ChernCharacter) -> Rational {
    euler_characteristic(surface, &v.product(&surface.lattice, w))
}

/// Numerical stand-in for membership in `T_β`: `μ_{H,D}(v) > β`.
pub fn numerically_in_t_beta(v: &ChernCharacter, slice: &Slice, beta: &Rational) -> bool {
    match mumford_slope(v, slice) {
        Slope::PosInfinity => true,
        Slope::Finite(mu) => mu > *beta,
    }
}
