//! The degree-one del Pezzo surface `Bl_8 P^2`.
//!
//! Coordinates are `[a, c_1, …, c_8]` for `aH + Σ c_i E_i`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::chern::Slice;
use crate::error::{Error, Result};
use crate::gieseker::{critical_divisors, eta, gieseker_wall_with, CriticalDivisorSet, GiesekerWallResult};
use crate::hilb::{intersect, nef_divisor_from_wall, HilbCurveClass, HilbDivisorClass};
use crate::lattice::{DivisorClass, IntersectionLattice, Preset, SurfaceData};
use crate::rational::{frac, int, Rational};
use crate::walls::rank_one_wall_center;

pub const RANK: usize = 9;

/// `(a; b_1, …, b_8)` up to permutation of the `b_i`, with orbit sizes.
pub const CURVE_TYPES: [((i64, [i64; 8]), usize); 7] = [
    ((0, [-1, 0, 0, 0, 0, 0, 0, 0]), 8),
    ((1, [1, 1, 0, 0, 0, 0, 0, 0]), 28),
    ((2, [1, 1, 1, 1, 1, 0, 0, 0]), 56),
    ((3, [2, 1, 1, 1, 1, 1, 1, 0]), 56),
    ((4, [2, 2, 2, 1, 1, 1, 1, 1]), 56),
    ((5, [2, 2, 2, 2, 2, 2, 1, 1]), 28),
    ((6, [3, 2, 2, 2, 2, 2, 2, 2]), 8),
];

pub fn canonical() -> DivisorClass {
    DivisorClass::from_ints(&[-3, 1, 1, 1, 1, 1, 1, 1, 1])
}

pub fn anticanonical() -> DivisorClass {
    -&canonical()
}

/// `H - E_1`.
pub fn default_nef_ray() -> DivisorClass {
    DivisorClass::from_ints(&[1, -1, 0, 0, 0, 0, 0, 0, 0])
}

pub fn lattice() -> IntersectionLattice {
    let gram = (0..RANK)
        .map(|i| (0..RANK).map(|j| if i != j { 0 } else if i == 0 { 1 } else { -1 }).collect())
        .collect();
    IntersectionLattice::new(gram).expect("diag(1, -1, ..., -1) is hyperbolic")
}

fn next_permutation(v: &mut [i64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All classes of one type, sorted.
pub fn curves_of_type(a: i64, b: &[i64; 8]) -> Vec<DivisorClass> {
    let mut m = *b;
    m.sort_unstable();
    let mut out = Vec::new();
    loop {
        let mut coords = vec![a];
        coords.extend(m.iter().map(|x| -x));
        out.push(DivisorClass::from_ints(&coords));
        if !next_permutation(&mut m) {
            break;
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The 240 `(-1)`-curves, sorted.
pub fn minus_one_curves() -> Vec<DivisorClass> {
    let mut all: Vec<DivisorClass> = CURVE_TYPES
        .iter()
        .flat_map(|((a, b), _)| curves_of_type(*a, b))
        .collect();
    all.sort();
    all.dedup();
    all
}

pub fn dp1_surface() -> SurfaceData {
    SurfaceData::new(
        "degree-1 del Pezzo surface",
        lattice(),
        canonical(),
        1,
        minus_one_curves(),
        anticanonical(),
        Preset::DelPezzo1,
    )
    .expect("dP1 data is consistent")
}

/// Slice `(P, K_X)` with `P = (n - 3/2)(-K) + ½N`.
pub fn dp1_slice(surface: Arc<SurfaceData>, n: i64, nef_ray: &DivisorClass) -> Result<Slice> {
    if n < 2 {
        return Err(Error::Precondition(format!("n = {n} must be at least 2")));
    }
    let l = &surface.lattice;
    l.check(nef_ray)?;
    let minus_k = -&surface.canonical;
    if l.dot(nef_ray, &minus_k) != int(2) || !l.square(nef_ray).is_zero() {
        return Err(Error::InvalidSlice("nef ray needs N·(-K) = 2 and N² = 0".into()));
    }
    if surface.effective_generators.iter().any(|e| l.dot(nef_ray, e).is_negative()) {
        return Err(Error::InvalidSlice("nef ray is negative on a (-1)-curve".into()));
    }
    let p = &minus_k.scale(&(int(n) - frac(3, 2))) + &nef_ray.scale(&frac(1, 2));
    Slice::new(surface.clone(), p, surface.canonical.clone())
}

/// `{-K} ∪ {E : E·N ≤ 1}`, plus for `n = 2` the class `N` and all sums of
/// two curves orthogonal to `N`.
pub fn lemma_critical_set(surface: &SurfaceData, n: i64, nef_ray: &DivisorClass) -> (Vec<DivisorClass>, Vec<DivisorClass>) {
    let l = &surface.lattice;
    let curves = &surface.effective_generators;
    let mut set: Vec<DivisorClass> = curves
        .iter()
        .filter(|e| l.dot(e, nef_ray) <= int(1))
        .cloned()
        .collect();
    let mut extras = Vec::new();
    if n == 2 {
        let orth: Vec<&DivisorClass> = curves.iter().filter(|e| l.dot(e, nef_ray).is_zero()).collect();
        extras.push(nef_ray.clone());
        for (i, a) in orth.iter().enumerate() {
            for b in &orth[i..] {
                extras.push(*a + *b);
            }
        }
        extras.sort();
        extras.dedup();
        set.extend(extras.iter().cloned());
    }
    set.push(-&surface.canonical);
    set.sort();
    set.dedup();
    (set, extras)
}

/// `(n - 1)(-K)^[n] + ½N^[n] - ½B`.
pub fn expected_nef_divisor(n: i64, nef_ray: &DivisorClass) -> HilbDivisorClass {
    HilbDivisorClass::new(
        &anticanonical().scale(&int(n - 1)) + &nef_ray.scale(&frac(1, 2)),
        int(-1),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dp1Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dp1Report {
    pub n: i64,
    pub nef_ray: DivisorClass,
    pub critical: CriticalDivisorSet,
    pub predicate_set: Vec<DivisorClass>,
    pub n2_extras: Vec<DivisorClass>,
    pub wall: GiesekerWallResult,
    pub nef_divisor: HilbDivisorClass,
    pub expected_divisor: HilbDivisorClass,
    pub eta: Rational,
    pub checks: Vec<Dp1Check>,
}

impl Dp1Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn coords(c: &DivisorClass) -> String {
    let parts: Vec<String> = c.coords.iter().map(|x| format!("{x}")).collect();
    format!("[{}]", parts.join(","))
}

fn set_diff(found: &[DivisorClass], expected: &[DivisorClass]) -> String {
    let missing: Vec<String> = expected.iter().filter(|x| !found.contains(x)).map(coords).collect();
    let extra: Vec<String> = found.iter().filter(|x| !expected.contains(x)).map(coords).collect();
    format!("missing {{{}}}; unexpected {{{}}}", missing.join(" "), extra.join(" "))
}

fn check(name: &'static str, passed: bool, detail: String) -> Dp1Check {
    Dp1Check { name, passed, detail }
}

pub fn verify_dp1_theorems(n: i64) -> Result<Dp1Report> {
    let surface = Arc::new(dp1_surface());
    let slice = dp1_slice(surface, n, &default_nef_ray())?;
    let crdiv = critical_divisors(&slice)?;
    verify_dp1_theorems_with(&slice, n, &default_nef_ray(), crdiv)
}

/// [`verify_dp1_theorems`] with the slice and critical set supplied.
pub fn verify_dp1_theorems_with(
    slice: &Slice,
    n: i64,
    nef_ray: &DivisorClass,
    crdiv: CriticalDivisorSet,
) -> Result<Dp1Report> {
    let surface = &slice.surface;
    let l = &surface.lattice;
    let curves = &surface.effective_generators;
    let minus_k = -&surface.canonical;
    let mut checks = Vec::new();

    let mut found = crdiv.members.clone();
    found.sort();
    let (predicate_set, n2_extras) = lemma_critical_set(surface, n, nef_ray);
    checks.push(check(
        "critical set matches predicate",
        found == predicate_set,
        format!("{} found, {} predicted; {}", found.len(), predicate_set.len(), set_diff(&found, &predicate_set)),
    ));

    let e = eta(slice);
    checks.push(check("eta below n", e < int(n), format!("eta = {e}")));

    let wall = gieseker_wall_with(slice, n, &crdiv)?;
    let center = wall.wall.center().cloned();
    checks.push(check(
        "gieseker wall center -1, certified",
        center == Some(int(-1)) && wall.certificate.is_certified(),
        format!("wall {:?}, certificate {}", wall.wall, wall.certificate.name()),
    ));

    let mut expected_destab: Vec<DivisorClass> = curves
        .iter()
        .filter(|c| l.dot(c, nef_ray).is_zero())
        .cloned()
        .collect();
    expected_destab.push(minus_k.clone());
    expected_destab.sort();
    checks.push(check(
        "destabilizers are -K and curves orthogonal to N",
        wall.destabilizers == expected_destab,
        set_diff(&wall.destabilizers, &expected_destab),
    ));

    let nef_divisor = nef_divisor_from_wall(center.as_ref().unwrap_or(&int(-1)), slice);
    let expected_divisor = expected_nef_divisor(n, nef_ray);
    checks.push(check(
        "nef divisor",
        nef_divisor == expected_divisor,
        format!("got l_part {} b {}", coords(&nef_divisor.l_part), nef_divisor.b_half_coeff),
    ));

    let f = HilbCurveClass::Pencil { class: minus_k.clone(), genus: int(1) };
    let a = HilbDivisorClass::new(minus_k.scale(&int(n - 1)), int(-1));
    let bad: Vec<String> = curves
        .iter()
        .filter(|c| !intersect(&a, &HilbCurveClass::Pencil { class: (*c).clone(), genus: int(0) }, n, surface).is_zero())
        .map(coords)
        .collect();
    checks.push(check(
        "((n-1)(-K) - B/2)·E_[n] = 0",
        bad.is_empty(),
        format!("nonzero on {}", bad.join(" ")),
    ));

    let af = intersect(&a, &f, n, surface);
    checks.push(check("((n-1)(-K) - B/2)·F_[n] = -1", af == int(-1), format!("got {af}")));

    let nf = intersect(&HilbDivisorClass::pullback(nef_ray.clone()), &f, n, surface);
    let ray_ok = nf.is_positive() && af.is_negative() && {
        let ray = HilbDivisorClass::pullback(nef_ray.clone())
            .scale(&-af.clone())
            .add(&a.scale(&nf))
            .scale(&nf.recip());
        ray == expected_divisor
    };
    checks.push(check(
        "F-orthogonal ray of cone(N, A)",
        ray_ok,
        format!("N·F = {nf}, A·F = {af}"),
    ));

    let mut slope_failures = Vec::new();
    for c in curves {
        let s = rank_one_wall_center(n, c, 0, slice)?;
        let cn = l.dot(c, nef_ray);
        let closed = -int(2 * n - 3) / (int(2 * n - 3) + &cn);
        let ok = s == closed && s >= int(-1) && ((s == int(-1)) == cn.is_zero());
        if !ok {
            slope_failures.push(format!("{} s = {s}", coords(c)));
        }
    }
    checks.push(check(
        "s_L >= -1, equality iff L·N = 0",
        slope_failures.is_empty(),
        slope_failures.join("; "),
    ));

    let mut negative = Vec::new();
    for c in curves {
        let p = intersect(&expected_divisor, &HilbCurveClass::Pencil { class: c.clone(), genus: int(0) }, n, surface);
        if p.is_negative() {
            negative.push(coords(c));
        }
    }
    for (name, curve) in [("HC fiber", HilbCurveClass::HCFiber), ("F_[n]", f.clone())] {
        if intersect(&expected_divisor, &curve, n, surface).is_negative() {
            negative.push(String::from(name));
        }
    }
    checks.push(check(
        "nef divisor nonnegative on curve generators",
        negative.is_empty(),
        format!("negative on {}", negative.join(" ")),
    ));

    if n == 2 {
        let mut bad = Vec::new();
        for x in n2_extras.iter().filter(|x| *x != nef_ray) {
            let s = rank_one_wall_center(n, x, 0, slice)?;
            let ok = l.dot(x, &surface.canonical) == int(-2) && !l.square(x).is_positive() && !s.is_negative();
            if !ok {
                bad.push(format!("{} s = {s}", coords(x)));
            }
        }
        checks.push(check("n = 2 sums have s_L >= 0", bad.is_empty(), bad.join("; ")));
    }

    Ok(Dp1Report {
        n,
        nef_ray: nef_ray.clone(),
        critical: crdiv,
        predicate_set,
        n2_extras,
        wall,
        nef_divisor,
        expected_divisor,
        eta: e,
        checks,
    })
}
