mod common;

use std::cmp::Ordering;
use std::sync::Arc;

use common::*;
use hilbnef_core::chern::{
    bridgeland_slope, central_charge, discriminant, mumford_slope, ChernCharacter, Slice, SlicePoint,
};
use hilbnef_core::rational::{frac, int};
use hilbnef_core::presets;
use hilbnef_core::walls::{numerical_wall, rank_one_wall_center, wall_order};
use hilbnef_core::{DivisorClass, Rational, Wall};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

/// Rational points `(β, α²)` on a semicircle: `β - s = u ρ²/(1 + ρ²)` lies
/// strictly inside `(-ρ, ρ)` for `|u| < 1`.
fn samples(center: &Rational, radius_sq: &Rational) -> Vec<SlicePoint> {
    let t = radius_sq / (radius_sq + int(1));
    [frac(-9, 10), frac(-1, 2), int(0), frac(1, 3), frac(9, 10)]
        .iter()
        .map(|u| {
            let x = u * &t;
            SlicePoint::new(center + &x, radius_sq - &x * &x).unwrap()
        })
        .collect()
}

fn triple() -> impl Strategy<Value = (Slice, ChernCharacter, ChernCharacter, ChernCharacter)> {
    slice().prop_flat_map(|s| {
        let r = s.surface.rank();
        (Just(s), chern(r, true), chern(r, true), chern(r, true))
    })
}

fn mu(v: &ChernCharacter, s: &Slice) -> Rational {
    mumford_slope(v, s).finite().cloned().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn nested_walls((sl, v, w1, w2) in triple()) {
        prop_assume!(!discriminant(&v, &sl).unwrap().is_negative());
        let walls = [numerical_wall(&v, &w1, &sl).unwrap(), numerical_wall(&v, &w2, &sl).unwrap()];
        for (w, wall) in [&w1, &w2].into_iter().zip(&walls) {
            if let Wall::Semicircle { center, radius_sq } = wall {
                for p in samples(center, radius_sq) {
                    prop_assert!(wall.contains(&p.beta, &p.alpha_sq));
                    let (zv, zw) = (central_charge(&v, &sl, &p), central_charge(w, &sl, &p));
                    prop_assert_eq!(&zv.0 * &zw.1, &zw.0 * &zv.1);
                    // A vanishing central charge has no slope to compare.
                    let vanishes = |z: &(Rational, Rational)| z.0.is_zero() && z.1.is_zero();
                    if !vanishes(&zv) && !vanishes(&zw) {
                        prop_assert_eq!(bridgeland_slope(&v, &sl, &p), bridgeland_slope(w, &sl, &p));
                    }
                }
                let apex = SlicePoint::new(center.clone(), radius_sq.clone()).unwrap();
                prop_assert!(central_charge(&v, &sl, &apex).0.is_zero());
            }
        }
        let [a, b] = &walls;
        let proper = |w: &Wall| !matches!(w, Wall::Everywhere);
        if a != b && proper(a) && proper(b) {
            for (x, y) in [(a, b), (b, a)] {
                if let Wall::Semicircle { center, radius_sq } = x {
                    for p in samples(center, radius_sq) {
                        prop_assert!(!y.contains(&p.beta, &p.alpha_sq));
                    }
                }
            }
        }
        let m = mu(&v, &sl);
        if let (
            Wall::Semicircle { center: c1, radius_sq: r1 },
            Wall::Semicircle { center: c2, radius_sq: r2 },
        ) = (a, b)
        {
            if *c1 < m && *c2 < m && c1 != c2 {
                let (big, small, inner) = if c1 < c2 { (a, b, (c2, r2)) } else { (b, a, (c1, r1)) };
                prop_assert_eq!(wall_order(big, small).unwrap(), Ordering::Greater);
                let (bc, br) = (big.center().unwrap(), big.radius_sq().unwrap());
                for p in samples(inner.0, inner.1) {
                    let x = &p.beta - bc;
                    prop_assert!(&x * &x + &p.alpha_sq < *br);
                }
            }
        }
    }

    #[test]
    fn moving_points_shrink_walls(
        sl in slice(),
        n in 1i64..=30,
        w_len in 1i64..=30,
        c in prop::collection::vec(-4i64..=4, 3),
    ) {
        let l = DivisorClass::from_ints(&c[..sl.surface.rank()]);
        prop_assume!(sl.dot(&sl.h, &l).is_positive());
        prop_assert!(
            rank_one_wall_center(n, &l, w_len, &sl).unwrap()
                > rank_one_wall_center(n, &l, 0, &sl).unwrap()
        );
    }

    #[test]
    fn rank_one_center_is_numerical_wall(
        sl in slice(),
        n in 1i64..=30,
        c in prop::collection::vec(-4i64..=4, 3),
    ) {
        let r = sl.surface.rank();
        let l = DivisorClass::from_ints(&c[..r]);
        prop_assume!(sl.dot(&sl.h, &l).is_positive());
        let v = ChernCharacter::ideal_sheaf(n, r);
        let w = ChernCharacter::line_bundle(sl.lattice(), &-&l);
        let center = rank_one_wall_center(n, &l, 0, &sl).unwrap();
        match numerical_wall(&v, &w, &sl).unwrap() {
            Wall::Semicircle { center: c, .. } => prop_assert_eq!(c, center),
            Wall::Empty => {
                let x = &center - &mu(&v, &sl);
                prop_assert!(!(&x * &x - discriminant(&v, &sl).unwrap() * int(2)).is_positive());
            }
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }
}

#[test]
fn proportional_class_has_no_wall() {
    let s = Arc::new(presets::picard_rank_one("r1", 1, 0, 1, 1).unwrap());
    let sl = Slice::new(s, DivisorClass::from_ints(&[1]), DivisorClass::from_ints(&[-3])).unwrap();
    let v = ChernCharacter::new(2, DivisorClass::from_ints(&[2]), int(-4));
    assert_eq!(numerical_wall(&v, &v, &sl).unwrap(), Wall::Everywhere);
}
