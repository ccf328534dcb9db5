//! Divisors and curves on `X^[n]`, and nef divisors from Gieseker walls.
//!
//! `Pic(X^[n]) = Pic(X) ⊕ Z·(B/2)`. Curve classes are the three families
//! needed to test the divisors produced here.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;

use num_traits::Zero;

use crate::chern::{euler_pairing, ChernCharacter, Slice};
use crate::error::{Error, Result};
use crate::gieseker::{gieseker_wall, Certificate, GiesekerWallResult};
use crate::lattice::{arithmetic_genus, DivisorClass, Preset, SurfaceData};
use crate::rational::{ceil, int, Rational};

/// `L^[n] + b_half_coeff · B/2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HilbDivisorClass {
    pub l_part: DivisorClass,
    pub b_half_coeff: Rational,
}

impl HilbDivisorClass {
    pub fn new(l_part: DivisorClass, b_half_coeff: Rational) -> Self {
        HilbDivisorClass { l_part, b_half_coeff }
    }

    /// `L^[n]` with no `B` part.
    pub fn pullback(l_part: DivisorClass) -> Self {
        HilbDivisorClass { l_part, b_half_coeff: Rational::zero() }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        HilbDivisorClass {
            l_part: self.l_part.scale(k),
            b_half_coeff: &self.b_half_coeff * k,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        HilbDivisorClass {
            l_part: &self.l_part + &other.l_part,
            b_half_coeff: &self.b_half_coeff + &other.b_half_coeff,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HilbCurveClass {
    /// `C̃_[n]`: one point moves along `C`, the other `n - 1` stay fixed.
    MovingPoint(DivisorClass),
    /// `C_[n]`: the fibers of a degree-`n` pencil on a curve of class `C`.
    Pencil { class: DivisorClass, genus: Rational },
    /// A curve contracted by the Hilbert–Chow morphism.
    HCFiber,
}

impl HilbCurveClass {
    /// Pencil on a curve in `|C|` of arithmetic genus `p_a(C)`.
    pub fn pencil(surface: &SurfaceData, class: DivisorClass) -> Self {
        let genus = arithmetic_genus(surface, &class);
        HilbCurveClass::Pencil { class, genus }
    }
}

/// Intersection number on `X^[n]`.
///
/// `B · C̃_[n] = 0`, `B · C_[n] = 2g - 2 + 2n` and `(B/2) · HCFiber = -1`.
pub fn intersect(
    div: &HilbDivisorClass,
    curve: &HilbCurveClass,
    n: i64,
    surface: &SurfaceData,
) -> Rational {
    match curve {
        HilbCurveClass::MovingPoint(c) => surface.dot(&div.l_part, c),
        HilbCurveClass::Pencil { class, genus } => {
            surface.dot(&div.l_part, class) + &div.b_half_coeff * (genus - int(1) + int(n))
        }
        HilbCurveClass::HCFiber => -div.b_half_coeff.clone(),
    }
}

/// `½K^[n] - s_W H^[n] - D^[n] - ½B` for a wall with center `s_W`.
pub fn nef_divisor_from_wall(center: &Rational, slice: &Slice) -> HilbDivisorClass {
    let half_k = slice.surface.canonical.scale(&Rational::new(1.into(), 2.into()));
    let l_part = &(&half_k - &slice.h.scale(center)) - &slice.d_twist;
    HilbDivisorClass::new(l_part, int(-1))
}

/// `w_σ = (-1, -½K + s_W H + D, m)` with `m` fixed by `χ(v, w_σ) = 0`.
pub fn w_sigma_vector(center: &Rational, slice: &Slice, v: &ChernCharacter) -> Result<ChernCharacter> {
    if v.rank == 0 {
        return Err(Error::DegeneratePairing);
    }
    let s = &slice.surface;
    let half_k = s.canonical.scale(&Rational::new(1.into(), 2.into()));
    let c1 = &(&slice.h.scale(center) - &half_k) + &slice.d_twist;
    let w0 = ChernCharacter::new(-1, c1, Rational::zero());
    // χ(v, w) is affine in ch₂(w) with slope rank(v).
    let p0 = euler_pairing(s, v, &w0);
    let m = -p0 / int(v.rank);
    Ok(ChernCharacter { ch2: m, ..w0 })
}

/// Divisor attached to a class orthogonal to `v = (1, 0, -n)`, normalized to
/// `B`-coefficient `-½`.
pub fn donaldson_image(w: &ChernCharacter) -> Result<HilbDivisorClass> {
    if w.rank == 0 {
        return Err(Error::DegeneratePairing);
    }
    Ok(HilbDivisorClass::new(
        w.c1.scale(&Rational::new(1.into(), w.rank.into())),
        int(-1),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extremality {
    /// `n >= p_a(C) + 1`: every `n` points on `C` move in a pencil.
    GenusBound { genus: Rational, threshold: Rational },
    /// A smooth curve of genus `g` carries a `g^1_n` for `n >= ⌈(g+2)/2⌉`.
    BrillNoether { genus: Rational, threshold: Rational },
    /// A pencil known for the family.
    PresetSeries { description: String, threshold: i64 },
    NotCertified,
}

impl Extremality {
    pub fn name(&self) -> &'static str {
        match self {
            Extremality::GenusBound { .. } => "ExtremalByGenusBound",
            Extremality::BrillNoether { .. } => "ExtremalByBrillNoether",
            Extremality::PresetSeries { .. } => "ExtremalByPresetSeries",
            Extremality::NotCertified => "NotCertified",
        }
    }

    pub fn is_certified(&self) -> bool {
        !matches!(self, Extremality::NotCertified)
    }

    /// `n >= threshold`, as text.
    pub fn witness(&self, n: i64) -> String {
        match self {
            Extremality::GenusBound { genus, threshold } => {
                format!("n = {n} >= p_a + 1 = {threshold} (p_a = {genus})")
            }
            Extremality::BrillNoether { genus, threshold } => {
                format!("n = {n} >= ceil((g + 2)/2) = {threshold} (g = {genus})")
            }
            Extremality::PresetSeries { threshold, .. } => format!("n = {n} >= {threshold}"),
            Extremality::NotCertified => String::from("no bound applies"),
        }
    }
}

/// Why the nef divisor orthogonal to pencils in `|L|` spans an extremal ray.
///
/// Brill–Noether is used only on preset families, whose destabilizing
/// classes have smooth members.
pub fn extremality_certificate(surface: &SurfaceData, l: &DivisorClass, n: i64) -> Extremality {
    let h = DivisorClass::from_ints(&[1]);
    match surface.preset {
        Preset::P3Hypersurface { d } if *l == h && n >= d - 1 => {
            return Extremality::PresetSeries {
                description: "projection from point of hyperplane section".into(),
                threshold: d - 1,
            }
        }
        Preset::CyclicCover { d, .. } if *l == h && n >= d => {
            return Extremality::PresetSeries {
                description: "pullback of lines through a point".into(),
                threshold: d,
            }
        }
        _ => {}
    }
    let genus = arithmetic_genus(surface, l);
    let n_q = int(n);
    let genus_threshold = &genus + int(1);
    if n_q >= genus_threshold {
        return Extremality::GenusBound { genus, threshold: genus_threshold };
    }
    if surface.preset != Preset::Custom {
        let bn = ceil(&((&genus + int(2)) / int(2)));
        if n_q >= bn {
            return Extremality::BrillNoether { genus, threshold: bn };
        }
    }
    Extremality::NotCertified
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NefStatus {
    NefAndExtremal,
    NefOnly,
    Unknown,
}

impl NefStatus {
    pub fn name(&self) -> &'static str {
        match self {
            NefStatus::NefAndExtremal => "NefAndExtremal",
            NefStatus::NefOnly => "NefOnly",
            NefStatus::Unknown => "Unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicRankOneNef {
    pub divisor: HilbDivisorClass,
    pub status: NefStatus,
    /// Absent when `2n <= a²d`.
    pub wall: Option<GiesekerWallResult>,
    pub extremality: Extremality,
}

/// `½K^[n] + (a/2 + n/(ad)) H^[n] - ½B` on a Picard-rank-one surface with
/// minimal effective class `aH`.
pub fn pic_rank1_nef(surface: &Arc<SurfaceData>, n: i64, a: i64) -> Result<PicRankOneNef> {
    if surface.rank() != 1 {
        return Err(Error::Precondition(format!(
            "Picard rank is {}, expected 1",
            surface.rank()
        )));
    }
    let ah = DivisorClass::from_ints(&[a]);
    if a < 1 || !surface.effective_generators.contains(&ah) {
        return Err(Error::Precondition(format!("{a}H is not the minimal effective class")));
    }
    if n < 1 {
        return Err(Error::Precondition(format!("n = {n} must be positive")));
    }
    let slice = Slice::new(surface.clone(), DivisorClass::from_ints(&[1]), -&ah)?;
    let d = surface.lattice.gram()[0][0];
    let formula_center = Rational::new(a.into(), 2.into()) - Rational::new(n.into(), (a * d).into());
    if int(2 * n) <= slice.d_squared() {
        return Ok(PicRankOneNef {
            divisor: nef_divisor_from_wall(&formula_center, &slice),
            status: NefStatus::Unknown,
            wall: None,
            extremality: Extremality::NotCertified,
        });
    }
    let wall = gieseker_wall(&slice, n)?;
    let center = wall.wall.center().cloned().unwrap_or(formula_center);
    let divisor = nef_divisor_from_wall(&center, &slice);
    let (status, extremality) = if wall.certificate == Certificate::Inconclusive {
        (NefStatus::Unknown, Extremality::NotCertified)
    } else {
        let ext = extremality_certificate(surface, &ah, n);
        let status = if ext.is_certified() {
            NefStatus::NefAndExtremal
        } else {
            NefStatus::NefOnly
        };
        (status, ext)
    };
    Ok(PicRankOneNef {
        divisor,
        status,
        wall: Some(wall),
        extremality,
    })
}
