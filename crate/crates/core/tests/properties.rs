use num_traits::ToPrimitive;
use proptest::prelude::*;

use multiloop_core::autgroup::{are_conjugate, automorphism_group, is_transitive, rotation, DiagramAut};
use multiloop_core::classify::{classify, ClassificationRecord};
use multiloop_core::exactnum::{cyc_order, cyc_root_of_unity, rational, CycNumber, Rational};
use multiloop_core::folding::{fold, relative_type, FoldingResult};
use multiloop_core::gcm::{gcm_for, parse_diagram, recognize_affine, render_diagram, AffineGCM, AffineType};
use multiloop_core::quantumtorus::{qt_mul, GradedElement};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| rational(n, d))
}

fn cyc() -> impl Strategy<Value = CycNumber> {
    (1u32..=12).prop_flat_map(|n| {
        proptest::collection::vec(small_rational(), n as usize).prop_map(move |c| CycNumber::from_poly(n, c))
    })
}

/// Complex value of the element under `ζ_n ↦ e^{2πi/n}`.
fn eval(x: &CycNumber) -> (f64, f64) {
    let n = x.conductor() as f64;
    x.coeffs().iter().enumerate().fold((0.0, 0.0), |(re, im), (i, c)| {
        let t = 2.0 * std::f64::consts::PI * i as f64 / n;
        let c = c.to_f64().unwrap();
        (re + c * t.cos(), im + c * t.sin())
    })
}

fn close(a: (f64, f64), b: (f64, f64)) -> bool {
    (a.0 - b.0).abs() < 1e-6 && (a.1 - b.1).abs() < 1e-6
}

fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn affine(max_rank: u32) -> impl Strategy<Value = AffineGCM> {
    let all = AffineType::all_up_to(max_rank);
    (0..all.len()).prop_map(move |i| gcm_for(all[i]))
}

/// An affine matrix with two random elements of its automorphism group.
fn with_automorphisms(max_rank: u32) -> impl Strategy<Value = (AffineGCM, DiagramAut, DiagramAut)> {
    affine(max_rank).prop_flat_map(|a| {
        let group = automorphism_group(&a);
        let n = group.len();
        (Just(a), 0..n, 0..n).prop_map(move |(a, i, j)| (a, group[i].clone(), group[j].clone()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn field_axioms(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        match a.inv() {
            Some(inv) => prop_assert!((&a * &inv).is_one()),
            None => prop_assert!(a.is_zero()),
        }
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in cyc(), b in cyc()) {
        let (ea, eb) = (eval(&a), eval(&b));
        prop_assert!(close(eval(&(&a + &b)), (ea.0 + eb.0, ea.1 + eb.1)));
        prop_assert!(close(eval(&(&a * &b)), cmul(ea, eb)));
        prop_assert!(close(eval(&a.conj()), (ea.0, -ea.1)));
    }

    #[test]
    fn embedding_preserves_value(a in cyc(), k in 1u32..=4) {
        let n = a.conductor() * k;
        let e = a.embed(n);
        prop_assert_eq!(&e, &a);
        prop_assert!(close(eval(&e), eval(&a)));
    }

    #[test]
    fn roots_of_unity(m in 1u32..=30, k in 1u32..=4, e in -40i64..=40) {
        let z = cyc_root_of_unity(m, e);
        prop_assert!(z.pow(m as i64).is_one());
        // compatible family: ζ_{mk}^{ke} = ζ_m^e
        prop_assert_eq!(cyc_root_of_unity(m * k, e * k as i64), z.clone());
        let order = m / num_integer::gcd(e.rem_euclid(m as i64) as u32, m);
        prop_assert_eq!(cyc_order(&z).unwrap(), Some(order));
        prop_assert_eq!(z.inv().unwrap(), cyc_root_of_unity(m, -e));
    }

    #[test]
    fn automorphism_groups_are_groups((a, s, t) in with_automorphisms(9)) {
        let group = automorphism_group(&a);
        prop_assert!(group.contains(&s.compose(&t)));
        prop_assert!(group.contains(&s.inverse()));
        prop_assert!(s.compose(&s.inverse()).is_identity());
        prop_assert!(s.pow(s.order() as i64).is_identity());
        // every automorphism of these diagrams is conjugate to its inverse
        prop_assert!(are_conjugate(&s, &s.inverse(), &group));
        for i in a.nodes() {
            prop_assert_eq!(a.marks[s.apply(i)], a.marks[i]);
            prop_assert_eq!(a.comarks[s.apply(i)], a.comarks[i]);
        }
    }

    #[test]
    fn classification_is_conjugation_invariant((a, s, t) in with_automorphisms(9)) {
        let conj = t.compose(&s).compose(&t.inverse());
        let (r1, r2) = (classify(&a, &s).unwrap(), classify(&a, &conj).unwrap());
        prop_assert_eq!(r1.label, r2.label);
        prop_assert_eq!(relative_type(&a, &s).unwrap(), relative_type(&a, &conj).unwrap());
        prop_assert_eq!(is_transitive(&s, &a).unwrap(), is_transitive(&conj, &a).unwrap());
    }

    #[test]
    fn recognition_survives_relabelling(a in affine(10), seed in any::<u64>()) {
        let n = a.size();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = seed;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (state >> 33) as usize % (i + 1));
        }
        let shuffled: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| a.entries[perm[i]][perm[j]]).collect()).collect();
        let rec = recognize_affine(&shuffled).expect("recognized");
        prop_assert_eq!(rec.gcm.label, a.label);
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(shuffled[i][j], rec.gcm.entries[rec.permutation[i]][rec.permutation[j]]);
            }
        }
    }

    #[test]
    fn diagrams_round_trip(a in affine(12)) {
        let (label, m) = parse_diagram(&render_diagram(&a)).unwrap();
        prop_assert_eq!(label, Some(a.label));
        prop_assert_eq!(m, a.entries);
    }

    #[test]
    fn json_round_trips((a, s, _t) in with_automorphisms(8)) {
        let r = classify(&a, &s).unwrap();
        let back: ClassificationRecord = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        prop_assert_eq!(back, r);
        if let Ok(f) = fold(&a, &s) {
            let back: FoldingResult = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
            prop_assert_eq!(back, f);
        }
    }

    #[test]
    fn transitive_rotations(l in 1usize..=24) {
        let a = gcm_for(AffineType::new(multiloop_core::gcm::Family::A, l as u32, 1).unwrap());
        let rho = rotation(l + 1);
        let transitive: Vec<usize> = (0..=l).filter(|&q| is_transitive(&rho.pow(q as i64), &a).unwrap()).collect();
        let coprime: Vec<usize> = (0..=l).filter(|&q| num_integer::gcd(q, l + 1) == 1).collect();
        prop_assert_eq!(transitive, coprime);
    }

    #[test]
    fn quantum_torus_associativity(
        m in 1u32..=7,
        e in 0i64..7,
        degs in proptest::collection::vec((-5i64..=5, -5i64..=5), 3),
        c in small_rational(),
    ) {
        let theta = cyc_root_of_unity(m, e);
        let c = CycNumber::from_rational(if c == rational(0, 1) { rational(1, 1) } else { c });
        let x = GradedElement::scalar(&theta, degs[0], c).unwrap();
        let y = GradedElement::scalar(&theta, degs[1], CycNumber::one()).unwrap();
        let z = GradedElement::scalar(&theta, degs[2], cyc_root_of_unity(m, 1)).unwrap();
        let sum = x.add(&y).unwrap();
        prop_assert_eq!(qt_mul(&qt_mul(&sum, &y).unwrap(), &z).unwrap(), qt_mul(&sum, &qt_mul(&y, &z).unwrap()).unwrap());
        prop_assert_eq!(qt_mul(&x, &x.inverse().unwrap()).unwrap(), GradedElement::one(1, &theta).unwrap());
        // x^a x^b = θ^{−a₂b₁} x^{a+b}
        let (a, b) = (degs[0], degs[1]);
        let lhs = qt_mul(&GradedElement::scalar(&theta, a, CycNumber::one()).unwrap(), &y).unwrap();
        let rhs = GradedElement::scalar(&theta, (a.0 + b.0, a.1 + b.1), theta.pow(-a.1 * b.0)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
