use annulus_core::analysis::numeric_roots;
use annulus_core::laurent::{det_bareiss, det_cofactor, det_exact, root_power};
use annulus_core::{Error, LaurentPoly, UnitMonomial};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(coeffs: &[i64]) -> LaurentPoly {
    LaurentPoly::from_p_coeffs(0, coeffs)
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[test]
fn ring_operations() {
    assert_eq!(&p(&[1, 1]) * &p(&[-1, 1]), p(&[-1, 0, 1]));
    let x = &LaurentPoly::p() + &LaurentPoly::monomial(1, 0, 1);
    assert!((x.eval(c(1.0), c(1.0)).unwrap() - c(2.0)).norm() < 1e-12);
    let inv = LaurentPoly::monomial(1, -1, 0);
    assert_eq!(inv.eval(c(0.0), c(1.0)), Err(Error::EvalAtZero));
}

#[test]
fn canonical_forms() {
    let one_plus_p = p(&[1, 1]);
    let x = one_plus_p.mul_unit(UnitMonomial::new(-1, -2, 4));
    assert_eq!(x.canonicalize().unwrap(), (one_plus_p.clone(), UnitMonomial::new(-1, -2, 4)));
    assert_eq!(one_plus_p.canonicalize().unwrap(), (one_plus_p.clone(), UnitMonomial::ONE));
    let y = LaurentPoly::from_terms([(2, 1, 1), (1, 1, 1)]);
    assert_eq!(y.canonicalize().unwrap(), (one_plus_p, UnitMonomial::new(1, 1, 1)));
    assert_eq!(LaurentPoly::zero().canonicalize(), Err(Error::ZeroPolynomial));
}

#[test]
fn small_determinants() {
    let m = vec![
        vec![LaurentPoly::p(), LaurentPoly::zero()],
        vec![LaurentPoly::zero(), LaurentPoly::monomial(1, -1, 0)],
    ];
    assert_eq!(det_exact(&m), LaurentPoly::one());
    let q = LaurentPoly::q();
    let m = vec![vec![LaurentPoly::one(), q.clone()], vec![q, LaurentPoly::one()]];
    assert_eq!(det_exact(&m), LaurentPoly::from_terms([(0, 0, 1), (0, 8, -1)]));
}

fn random_poly(rng: &mut ChaCha8Rng) -> LaurentPoly {
    let n = rng.gen_range(0..4);
    LaurentPoly::from_terms((0..n).map(|_| (rng.gen_range(-2..=2), 4 * rng.gen_range(-1..=1), rng.gen_range(-3..=3))))
}

#[test]
fn bareiss_matches_cofactor() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=6 {
        for _ in 0..6 {
            let m: Vec<Vec<LaurentPoly>> =
                (0..n).map(|_| (0..n).map(|_| random_poly(&mut rng)).collect()).collect();
            assert_eq!(det_bareiss(&m), det_cofactor(&m), "size {n}");
        }
    }
}

#[test]
fn determinant_is_alternating() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let m: Vec<Vec<LaurentPoly>> = (0..5).map(|_| (0..5).map(|_| random_poly(&mut rng)).collect()).collect();
    let mut swapped = m.clone();
    swapped.swap(1, 3);
    assert_eq!(det_exact(&swapped), -det_exact(&m));
    let mut repeated = m.clone();
    repeated[4] = repeated[0].clone();
    assert!(det_exact(&repeated).is_zero());
}

#[test]
fn root_power_examples() {
    assert_eq!(root_power(&p(&[1, 1]), 3).unwrap(), p(&[1, 1]));
    assert_eq!(root_power(&p(&[6, 5, 1]), 2).unwrap(), p(&[36, 13, 1]));
    assert_eq!(root_power(&LaurentPoly::zero(), 2), Err(Error::ZeroPolynomial));
}

#[test]
fn root_power_of_cylinder_polynomial_matches_numeric_roots() {
    let phi = p(&[1, 91, 541, 91, 1]);
    let squared = root_power(&phi, 2).unwrap();
    let roots = numeric_roots(&phi).unwrap().roots;
    // coefficients of prod (X + lambda^2), from the numeric roots
    let mut expect = vec![c(1.0)];
    for z in roots {
        let r = z * z;
        let mut next = vec![c(0.0); expect.len() + 1];
        for (k, e) in expect.iter().enumerate() {
            next[k] += e * r;
            next[k + 1] += e;
        }
        expect = next;
    }
    for (k, e) in expect.iter().enumerate() {
        let exact = squared.coeff(k as i64, 0);
        assert_eq!(exact, num_bigint::BigInt::from(e.re.round() as i64), "coefficient {k}");
    }
}

#[test]
fn json_triples_round_trip() {
    let x = LaurentPoly::from_terms([(-1, 3, 7), (2, -4, -1)]);
    let text = serde_json::to_string(&x).unwrap();
    assert_eq!(text, r#"[[-1,3,"7"],[2,-4,"-1"]]"#);
    assert_eq!(serde_json::from_str::<LaurentPoly>(&text).unwrap(), x);
}

fn poly_strategy() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i64..=3, -8i64..=8, -5i64..=5), 0..5).prop_map(LaurentPoly::from_terms)
}

fn cubic_strategy() -> impl Strategy<Value = LaurentPoly> {
    (prop::collection::vec(-4i64..=4, 3), 1i64..=3).prop_map(|(mut v, lead)| {
        v.push(lead);
        p(&v)
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn canonical_is_idempotent(a in poly_strategy(), s in prop::bool::ANY, e in -3i64..3, f in -5i64..5) {
        let canon = a.canonical();
        prop_assert_eq!(canon.canonical(), canon.clone());
        let u = UnitMonomial::new(if s { 1 } else { -1 }, e, f);
        prop_assert!(a.mul_unit(u).equals_up_to_unit(&a));
    }

    #[test]
    fn root_powers_compose(x in cubic_strategy(), a in 1u32..=3, b in 1u32..=3) {
        prop_assume!(!x.coeff(0, 0).eq(&0.into()));
        let lhs = root_power(&root_power(&x, a).unwrap(), b).unwrap();
        prop_assert_eq!(lhs, root_power(&x, a * b).unwrap());
    }
}
