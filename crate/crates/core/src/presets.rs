//! Built-in Picard-rank-one surfaces.

use alloc::format;
use alloc::vec;

use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, IntersectionLattice, Preset, SurfaceData};

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// A surface with `Pic = Z·H`, `H² = d`, `K = k·H` and minimal effective class `a·H`.
pub fn picard_rank_one(
    name: &str,
    d: i64,
    canonical_coeff: i64,
    a: i64,
    chi_o: i64,
) -> Result<SurfaceData> {
    if d < 1 {
        return Err(Error::InvalidSurface(format!("H² = {d} must be positive")));
    }
    if a < 1 {
        return Err(Error::InvalidSurface(format!(
            "minimal effective multiple a = {a} must be positive"
        )));
    }
    SurfaceData::new(
        name,
        IntersectionLattice::new(vec![vec![d]])?,
        DivisorClass::from_ints(&[canonical_coeff]),
        chi_o,
        vec![DivisorClass::from_ints(&[a])],
        DivisorClass::from_ints(&[1]),
        Preset::Custom,
    )
}

/// Very general degree-`d` surface in `P^3`: `K = (d-4)H`, `χ(O) = C(d-1,3) + 1`.
pub fn p3_hypersurface(d: i64) -> Result<SurfaceData> {
    if d < 1 {
        return Err(Error::InvalidSurface(format!("degree d = {d} must be at least 1")));
    }
    let mut s = picard_rank_one(
        &format!("degree-{d} surface in P3"),
        d,
        d - 4,
        1,
        binomial(d - 1, 3) + 1,
    )?;
    s.preset = Preset::P3Hypersurface { d };
    Ok(s)
}

/// Very general degree-`d` cyclic cover of `P^2` branched along a degree-`e`
/// curve: `K = (e(d-1)/d - 3)H`. `χ(O_X)` is supplied by the caller.
pub fn cyclic_cover(d: i64, e: i64, chi_o: i64) -> Result<SurfaceData> {
    if d < 2 {
        return Err(Error::InvalidSurface(format!("cover degree d = {d} must be at least 2")));
    }
    if e % d != 0 {
        return Err(Error::InvalidSurface(format!("d = {d} must divide e = {e}")));
    }
    if e * (d - 1) < 3 * d {
        return Err(Error::InvalidSurface(format!(
            "e = {e} must satisfy e >= 3d/(d-1) for positive geometric genus"
        )));
    }
    let mut s = picard_rank_one(
        &format!("degree-{d} cyclic cover of P2 branched in degree {e}"),
        d,
        e * (d - 1) / d - 3,
        1,
        chi_o,
    )?;
    s.preset = Preset::CyclicCover { d, e };
    Ok(s)
}
