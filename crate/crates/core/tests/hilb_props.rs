mod common;

use common::*;
use hilbnef_core::chern::{euler_pairing, ChernCharacter};
use hilbnef_core::gieseker::{eta, gieseker_wall};
use hilbnef_core::hilb::{
    donaldson_image, intersect, nef_divisor_from_wall, w_sigma_vector, HilbCurveClass, HilbDivisorClass,
};
use hilbnef_core::rational::{ceil_i64, int};
use hilbnef_core::DivisorClass;
use num_traits::Signed;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nef_divisor_kills_destabilizing_pencils(sl in slice(), extra in 0i64..=8) {
        let floor = ceil_i64(&(sl.d_squared() / int(2))).unwrap() + 1;
        let n = ceil_i64(&eta(&sl)).unwrap().max(floor).max(1) + extra;
        let r = gieseker_wall(&sl, n).unwrap();
        let s = &sl.surface;
        let center = r.wall.center().unwrap();
        let div = nef_divisor_from_wall(center, &sl);
        prop_assert_eq!(&div.b_half_coeff, &int(-1));
        for l in &r.destabilizers {
            let pencil = HilbCurveClass::pencil(s, l.clone());
            prop_assert_eq!(intersect(&div, &pencil, n, s), int(0));
        }
        for g in &s.effective_generators {
            prop_assert!(!s.dot(&div.l_part, g).is_negative());
            let moving = HilbCurveClass::MovingPoint(g.clone());
            prop_assert!(!intersect(&div, &moving, n, s).is_negative());
        }
        prop_assert_eq!(intersect(&div, &HilbCurveClass::HCFiber, n, s), int(1));

        let v = ChernCharacter::ideal_sheaf(n, s.rank());
        let w = w_sigma_vector(center, &sl, &v).unwrap();
        prop_assert_eq!(w.rank, -1);
        prop_assert_eq!(euler_pairing(s, &v, &w), int(0));
        prop_assert_eq!(donaldson_image(&w).unwrap(), div);
    }

    #[test]
    fn w_sigma_orthogonal_for_any_center(sl in slice(), center in rational(), v in chern(3, true)) {
        let r = sl.surface.rank();
        let v = ChernCharacter::new(v.rank, DivisorClass::new(v.c1.coords[..r].to_vec()), v.ch2);
        let w = w_sigma_vector(&center, &sl, &v).unwrap();
        prop_assert_eq!(euler_pairing(&sl.surface, &v, &w), int(0));
        prop_assert_eq!(&w.c1, &nef_divisor_from_wall(&center, &sl).l_part.scale(&int(-1)));
    }

    #[test]
    fn moving_point_pairs_with_l_part(
        sl in slice(),
        d in prop::collection::vec(rational(), 3),
        c in prop::collection::vec(-4i64..=4, 3),
        b in rational(),
        n in 1i64..=20,
    ) {
        let s = &sl.surface;
        let r = s.rank();
        let d = DivisorClass::new(d[..r].to_vec());
        let c = DivisorClass::from_ints(&c[..r]);
        let moving = HilbCurveClass::MovingPoint(c.clone());
        prop_assert_eq!(intersect(&HilbDivisorClass::pullback(d.clone()), &moving, n, s), s.dot(&d, &c));
        let with_b = HilbDivisorClass::new(d.clone(), b.clone());
        prop_assert_eq!(intersect(&with_b, &moving, n, s), s.dot(&d, &c));
        prop_assert_eq!(intersect(&with_b, &HilbCurveClass::HCFiber, n, s), -b.clone());
    }

    #[test]
    fn intersection_is_linear_in_divisor(
        sl in slice(),
        a in prop::collection::vec(rational(), 3),
        b in prop::collection::vec(rational(), 3),
        (ba, bb, k) in (rational(), rational(), rational()),
        c in prop::collection::vec(-4i64..=4, 3),
        n in 1i64..=20,
    ) {
        let s = &sl.surface;
        let r = s.rank();
        let x = HilbDivisorClass::new(DivisorClass::new(a[..r].to_vec()), ba);
        let y = HilbDivisorClass::new(DivisorClass::new(b[..r].to_vec()), bb);
        let curves = [
            HilbCurveClass::pencil(s, DivisorClass::from_ints(&c[..r])),
            HilbCurveClass::MovingPoint(DivisorClass::from_ints(&c[..r])),
            HilbCurveClass::HCFiber,
        ];
        for curve in &curves {
            prop_assert_eq!(
                intersect(&x.add(&y.scale(&k)), curve, n, s),
                intersect(&x, curve, n, s) + &k * intersect(&y, curve, n, s)
            );
        }
    }
}
