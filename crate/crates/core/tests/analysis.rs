use annulus_core::analysis::{
    char_poly, check_q_positive, coefficients_at_rational_q, concavity_report, cyclotomic, cyclotomic_part,
    eigenvalues, eventual_periodicity, is_log_concave, multiplicity_at_minus_one, numeric_roots, perron_dominant,
    spectra_match_up_to_zeros, Cyclo8, Periodicity,
};
use annulus_core::{Error, LaurentPoly, UnitMonomial};
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;

fn p(coeffs: &[i64]) -> LaurentPoly {
    LaurentPoly::from_p_coeffs(0, coeffs)
}

#[test]
fn numeric_roots_of_fixtures() {
    let r = numeric_roots(&p(&[6, 5, 1])).unwrap();
    assert!((r.roots[0] - Complex64::new(-3.0, 0.0)).norm() < 1e-10);
    assert!((r.roots[1] - Complex64::new(-2.0, 0.0)).norm() < 1e-10);
    assert!(r.all_real_negative && r.all_distinct);
    assert!(r.backward_error <= 1e-10);

    let r = numeric_roots(&p(&[1, 91, 541, 91, 1])).unwrap();
    assert_eq!(r.roots.len(), 4);
    assert!(r.all_real_negative && r.all_distinct);
    assert!(r.backward_error <= 1e-10);
    let expect = [-84.619, -6.2077, -0.16109, -0.011818];
    let mut got: Vec<f64> = r.roots.iter().map(|z| z.re).collect();
    got.sort_by(f64::total_cmp);
    for (g, e) in got.iter().zip(expect) {
        assert!((g - e).abs() <= 1e-3 * e.abs(), "{g} vs {e}");
    }

    let r = numeric_roots(&p(&[1, 0, 1])).unwrap();
    assert!(!r.all_real_negative && r.all_unit_modulus);

    let r = numeric_roots(&LaurentPoly::from_p_coeffs(-2, &[2, 2])).unwrap();
    assert_eq!((r.valuation, r.leading, r.roots.len()), (-2, 2.0, 1));
}

#[test]
fn q_positive_check() {
    let phi = LaurentPoly::from_terms([(0, 0, 1), (1, 4, 3), (2, 8, 1)]);
    for q in [0.5, 1.0, 2.0] {
        assert!(check_q_positive(&phi, q, true).unwrap().pass);
    }
    assert_eq!(check_q_positive(&phi, 1.0, false).unwrap_err(), Error::WallsPresent);
    assert!(!check_q_positive(&p(&[1, 2, 1]), 1.0, true).unwrap().pass);
}

#[test]
fn cyclotomic_factors() {
    assert_eq!(cyclotomic(1), vec![BigInt::from(-1), BigInt::from(1)]);
    assert_eq!(cyclotomic(4), vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)]);
    let f = cyclotomic_part(&p(&[-1, 0, 1])).unwrap();
    assert_eq!(f.factors.into_iter().collect::<Vec<_>>(), vec![(1, 1), (2, 1)]);
    let f = cyclotomic_part(&p(&[1, 1, 1, 1, 1])).unwrap();
    assert_eq!(f.factors.into_iter().collect::<Vec<_>>(), vec![(5, 1)]);
    assert!(cyclotomic_part(&p(&[-2, 0, 1])).is_none());
    assert!(cyclotomic_part(&p(&[1, 3, 1])).is_none());
    assert!(cyclotomic_part(&LaurentPoly::zero()).is_none());
    assert!(cyclotomic_part(&LaurentPoly::q()).is_none());
}

#[test]
fn cyclotomic_part_ignores_units() {
    let base = p(&[1, -1, 1]);
    let f = cyclotomic_part(&base).unwrap();
    for u in [UnitMonomial::new(-1, 0, 0), UnitMonomial::new(1, -3, 0), UnitMonomial::new(-1, 5, 0)] {
        let g = cyclotomic_part(&base.mul_unit(u)).unwrap();
        assert_eq!(g.factors, f.factors);
    }
}

#[test]
fn multiplicity_of_minus_one() {
    assert_eq!(multiplicity_at_minus_one(&p(&[1, 3, 3, 1])), 3);
    assert_eq!(multiplicity_at_minus_one(&p(&[1, 1, 1])), 0);
}

#[test]
fn concavity() {
    let cyl = p(&[1, 91, 541, 91, 1]);
    assert!(is_log_concave(&coefficients_at_rational_q(&cyl, 1, 1)));
    assert!(!is_log_concave(&coefficients_at_rational_q(&p(&[1, 0, 1]), 1, 1)));
    let phi = LaurentPoly::from_terms([(0, 0, 1), (1, 4, 2), (1, 0, 1), (2, 4, 1)]);
    let r = concavity_report(&phi, 1, 2);
    assert!(r.log_concave && r.max_exponent_concave && r.min_exponent_convex);
    let r = concavity_report(&LaurentPoly::from_terms([(0, 0, 1), (1, 8, 1), (2, 0, 1)]), 1, 1);
    assert!(!r.min_exponent_convex);
}

#[test]
fn spectra() {
    let m = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0]);
    assert!(perron_dominant(&m, 1e-8));
    let rot = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
    assert!(!perron_dominant(&rot, 1e-8));
    let padded = DMatrix::from_row_slice(3, 3, &[2.0, 1.0, 5.0, 1.0, 2.0, 7.0, 0.0, 0.0, 0.0]);
    assert!(spectra_match_up_to_zeros(&eigenvalues(&padded), &eigenvalues(&m), 1e-8));
    assert!(!spectra_match_up_to_zeros(&eigenvalues(&rot), &eigenvalues(&m), 1e-8));

    let c = vec![vec![LaurentPoly::one(), LaurentPoly::one()], vec![LaurentPoly::zero(), LaurentPoly::q()]];
    // det(xI - C) = (x - 1)(x - q)
    let expect = &(&LaurentPoly::p() - &LaurentPoly::one()) * &(&LaurentPoly::p() - &LaurentPoly::q());
    assert_eq!(char_poly(&c), expect);
}

#[test]
fn periodicity_at_minus_one() {
    let z = Cyclo8::from_poly(&LaurentPoly::zero()).unwrap();
    let one = Cyclo8::unit(0);
    let swap = vec![vec![z, one], vec![one, z]];
    assert_eq!(eventual_periodicity(&swap, 16), Periodicity::Periodic { start: 1, period: 2 });
    let nilpotent = vec![vec![z, one], vec![z, z]];
    assert!(matches!(eventual_periodicity(&nilpotent, 16), Periodicity::Periodic { .. }));
    let shear = vec![vec![one, one], vec![z, one]];
    assert_eq!(eventual_periodicity(&shear, 16), Periodicity::Inconclusive);
    let w = Cyclo8::from_poly(&LaurentPoly::monomial(1, 0, 1)).unwrap();
    assert!((w.to_complex() - Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4)).norm() < 1e-12);
    assert_eq!(eventual_periodicity(&[vec![w]], 16), Periodicity::Periodic { start: 1, period: 8 });
}
