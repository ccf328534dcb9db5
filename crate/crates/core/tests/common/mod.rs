#![allow(dead_code)]

use std::sync::Arc;

use hilbnef_core::chern::{ChernCharacter, Slice};
use hilbnef_core::lattice::validate_polarization;
use hilbnef_core::presets;
use hilbnef_core::rational::{frac, int};
use hilbnef_core::{DivisorClass, IntersectionLattice, Preset, Rational, SurfaceData};
use proptest::prelude::*;

/// `F_1` in the basis `(H, E)`: cone spanned by `E` and `H - E`.
pub fn hirzebruch_one() -> SurfaceData {
    SurfaceData::new(
        "F1",
        IntersectionLattice::new(vec![vec![1, 0], vec![0, -1]]).unwrap(),
        DivisorClass::from_ints(&[-3, 1]),
        1,
        vec![DivisorClass::from_ints(&[0, 1]), DivisorClass::from_ints(&[1, -1])],
        DivisorClass::from_ints(&[2, -1]),
        Preset::Custom,
    )
    .unwrap()
}

/// `P^2` blown up in two points, basis `(H, E1, E2)`.
pub fn two_point_blowup() -> SurfaceData {
    SurfaceData::new(
        "Bl2",
        IntersectionLattice::new(vec![vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, -1]]).unwrap(),
        DivisorClass::from_ints(&[-3, 1, 1]),
        1,
        vec![
            DivisorClass::from_ints(&[0, 1, 0]),
            DivisorClass::from_ints(&[0, 0, 1]),
            DivisorClass::from_ints(&[1, -1, -1]),
        ],
        DivisorClass::from_ints(&[3, -1, -1]),
        Preset::Custom,
    )
    .unwrap()
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-24i64..=24, 1i64..=6).prop_map(|(p, q)| frac(p, q))
}

pub fn class(rank: usize) -> impl Strategy<Value = DivisorClass> {
    prop::collection::vec(rational(), rank).prop_map(DivisorClass::new)
}

pub fn int_class(rank: usize, r: i64) -> impl Strategy<Value = DivisorClass> {
    prop::collection::vec(-r..=r, rank).prop_map(|v| DivisorClass::from_ints(&v))
}

/// A surface of one of the test families together with a valid polarization
/// and an antieffective twist.
pub fn slice() -> impl Strategy<Value = Slice> {
    prop_oneof![rank_one_slice(), rank_two_slice(), rank_three_slice()]
}

pub fn rank_one_slice() -> impl Strategy<Value = Slice> {
    (1i64..=9, -3i64..=3, 1i64..=3, 1i64..=3, 1i64..=2).prop_map(|(d, k, a, m, h)| {
        let s = Arc::new(presets::picard_rank_one("r1", d, k, a, 1).unwrap());
        Slice::new(s, DivisorClass::from_ints(&[h]), DivisorClass::from_ints(&[-a * m])).unwrap()
    })
}

pub fn rank_two_slice() -> impl Strategy<Value = Slice> {
    (1i64..=4, 1i64..=4, 0i64..=3, 0i64..=3)
        .prop_filter("nonzero twist", |(_, _, x, y)| x + y > 0)
        .prop_map(|(p, q, x, y)| {
            let s = Arc::new(hirzebruch_one());
            let h = DivisorClass::from_ints(&[p + q, -p]);
            let d = DivisorClass::from_ints(&[-y, y - x]);
            make_slice(s, h, d)
        })
}

pub fn rank_three_slice() -> impl Strategy<Value = Slice> {
    (1i64..=3, 1i64..=3, 1i64..=3, 0i64..=2, 0i64..=2, 0i64..=2)
        .prop_filter("nonzero twist", |(_, _, _, x, y, z)| x + y + z > 0)
        .prop_map(|(a, b, c, x, y, z)| {
            let s = Arc::new(two_point_blowup());
            let h = DivisorClass::from_ints(&[a + b + c, -a, -b]);
            let d = DivisorClass::from_ints(&[-z, z - x, z - y]);
            make_slice(s, h, d)
        })
}

fn make_slice(s: Arc<SurfaceData>, h: DivisorClass, d: DivisorClass) -> Slice {
    assert!(validate_polarization(&s, &h));
    Slice::new(s, h, d).unwrap()
}

pub fn chern(rank: usize, positive_rank: bool) -> impl Strategy<Value = ChernCharacter> {
    let lo = if positive_rank { 1 } else { 0 };
    (lo..=3i64, int_class(rank, 4), -12i64..=12)
        .prop_map(|(r, c1, k)| ChernCharacter::new(r, c1, frac(k, 2)))
}

pub fn half() -> Rational {
    frac(1, 2)
}

pub fn zero() -> Rational {
    int(0)
}
