use hilbnef_core::dp1::{self, minus_one_curves, verify_dp1_theorems};
use hilbnef_core::rational::int;
use hilbnef_core::DivisorClass;

/// All `aH - Σ b_i E_i` with `a ∈ [0, 6]`, `b_i ∈ [-1, 3]`, `E² = -1`, `E·K = -1`.
fn box_oracle() -> Vec<DivisorClass> {
    let mut out = Vec::new();
    let mut b = [-1i64; 8];
    for a in 0..=6i64 {
        b.iter_mut().for_each(|x| *x = -1);
        loop {
            let sq = a * a - b.iter().map(|x| x * x).sum::<i64>();
            // K = -3H + ΣE_i pairs with aH - Σ b_i E_i to -3a + Σ b_i.
            let k_dot = -3 * a + b.iter().sum::<i64>();
            if sq == -1 && k_dot == -1 {
                let mut coords = vec![a];
                coords.extend(b.iter().map(|x| -x));
                out.push(DivisorClass::from_ints(&coords));
            }
            let mut i = 0;
            while i < 8 {
                b[i] += 1;
                if b[i] <= 3 {
                    break;
                }
                b[i] = -1;
                i += 1;
            }
            if i == 8 {
                break;
            }
        }
    }
    out.sort();
    out
}

#[test]
fn curves_match_box_search() {
    let oracle = box_oracle();
    assert_eq!(oracle.len(), 240);
    assert_eq!(minus_one_curves(), oracle);
}

#[test]
fn curves_anticanonical_degree_one() {
    let l = dp1::lattice();
    let minus_k = dp1::anticanonical();
    for e in minus_one_curves() {
        assert_eq!(l.dot(&e, &minus_k), int(1));
    }
}

#[test]
fn theorems_hold_for_small_n() {
    for n in 2..=10 {
        let t = std::time::Instant::now();
        let report = verify_dp1_theorems(n).unwrap();
        for c in &report.checks {
            assert!(c.passed, "n = {n}: {} failed: {}", c.name, c.detail);
        }
        if n == 2 {
            assert!(!report.n2_extras.is_empty());
            for x in &report.n2_extras {
                assert!(report.critical.members.contains(x));
            }
        }
        eprintln!("n = {n}: {} critical classes in {:?}", report.critical.len(), t.elapsed());
    }
}

#[test]
fn orbits_are_closed_under_permutations() {
    let mut total = 0;
    for ((a, b), size) in dp1::CURVE_TYPES {
        let orbit = dp1::curves_of_type(a, &b);
        assert_eq!(orbit.len(), size);
        total += size;
        for e in &orbit {
            for (i, j) in [(1, 2), (1, 8), (3, 7)] {
                let mut c = e.coords.clone();
                c.swap(i, j);
                assert!(orbit.contains(&DivisorClass::new(c)));
            }
        }
    }
    assert_eq!(total, 240);
}

#[test]
fn rejects_invalid_nef_rays() {
    let s = std::sync::Arc::new(dp1::dp1_surface());
    assert!(dp1::dp1_slice(s.clone(), 1, &dp1::default_nef_ray()).is_err());
    assert!(dp1::dp1_slice(s.clone(), 3, &DivisorClass::from_ints(&[1, 0, 0, 0, 0, 0, 0, 0, 0])).is_err());
    assert!(dp1::dp1_slice(s, 3, &DivisorClass::from_ints(&[1, 0, -1, 0, 0, 0, 0, 0, 0])).is_ok());
}
