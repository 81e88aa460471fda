use annulus_core::corpus::{annulus_corpus, block, cylinder, grid_ring};
use annulus_core::heights::extremal_flux_data;
use annulus_core::kasteleyn::{
    build_weight, default_triple, flux_polynomial, flux_polynomial_with, triple, triple_det, verify_cover_law,
    verify_weight, Engine, SquareLabeling, TreeChoice,
};
use annulus_core::oracle::generating_function;
use annulus_core::{LaurentPoly, QuadSurface};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CAP: usize = 44;

fn small_annuli() -> Vec<(String, QuadSurface)> {
    annulus_corpus(2024)
        .into_iter()
        .filter(|e| e.surface.num_squares() <= 36)
        .map(|e| (e.name, e.surface))
        .collect()
}

#[test]
fn ring_and_cylinder() {
    let phi = flux_polynomial(&grid_ring(3, 1)).unwrap();
    assert_eq!(phi.canonical(), LaurentPoly::from_p_coeffs(0, &[1, 1]));
    let phi = flux_polynomial(&cylinder(4, 6)).unwrap();
    assert_eq!(phi.at_q_one().canonical(), LaurentPoly::from_p_coeffs(0, &[1, 91, 541, 91, 1]));
}

#[test]
fn unbalanced_annulus_has_zero_polynomial() {
    let cells: Vec<_> = block(5, 5).into_iter().filter(|&c| c != (1, 2)).collect();
    let a = QuadSurface::from_grid(&cells).unwrap();
    assert!(flux_polynomial(&a).unwrap().is_zero());
    let disk = QuadSurface::from_grid(&block(2, 2)).unwrap();
    assert!(flux_polynomial(&disk).is_err());
}

#[test]
fn determinant_matches_brute_force() {
    for (name, a) in small_annuli() {
        let (_, unsigned) = generating_function(&a, CAP).unwrap();
        assert_eq!(flux_polynomial(&a).unwrap().canonical(), unsigned.canonical(), "{name}");
    }
}

#[test]
fn independent_of_tree_labeling_and_cut() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (name, a) in small_annuli() {
        let phi = flux_polynomial(&a).unwrap();
        let mut cuts = vec![a.find_cut().unwrap()];
        if let Ok(z) = a.find_zigzag_cut() {
            cuts.push(z);
        }
        let banned: Vec<bool> = (0..a.sides().len()).map(|_| rng.gen_bool(0.3)).collect();
        cuts.extend(a.shortest_cut_where(|sd| !banned[sd], usize::MAX));
        for cut in &cuts {
            for tree in [TreeChoice::Bfs, TreeChoice::Random(rng.gen())] {
                let w = build_weight(&a, cut, tree).unwrap();
                assert!(verify_weight(&a, &w).unwrap(), "{name}");
                let labels = SquareLabeling::shuffled(&a, rng.gen());
                let det = triple_det(&triple(&a, &w, &labels), Engine::Det);
                assert!(det.equals_up_to_unit(&phi), "{name}");
            }
        }
    }
}

#[test]
fn zigzag_cut_gives_a_null_side() {
    for (name, a) in small_annuli() {
        let Ok(cut) = a.find_zigzag_cut() else { continue };
        let w = build_weight(&a, &cut, TreeChoice::Bfs).unwrap();
        assert!(triple(&a, &w, &SquareLabeling::sorted(&a)).has_null_side(), "{name}");
    }
}

#[test]
fn root_count_is_flux_range() {
    for (name, a) in small_annuli() {
        let phi = flux_polynomial(&a).unwrap();
        let canon = phi.at_q_one().canonical();
        let degree = canon.to_triples().iter().map(|t| t.0).max().unwrap();
        let data = extremal_flux_data(&a, CAP).unwrap();
        assert_eq!(degree, data.f_max - data.f_min, "{name}");
    }
}

#[test]
fn engines_agree() {
    for e in annulus_corpus(2024) {
        let det = flux_polynomial_with(&e.surface, Engine::Det).unwrap();
        let interp = flux_polynomial_with(&e.surface, Engine::Interp).unwrap();
        assert_eq!(det, interp, "{}", e.name);
    }
    let t = default_triple(&grid_ring(6, 2)).unwrap();
    assert_eq!(triple_det(&t, Engine::Det), triple_det(&t, Engine::Interp));
}

#[test]
fn cover_law() {
    for a in [grid_ring(3, 1), grid_ring(4, 2), cylinder(2, 4)] {
        for n in 2..=3 {
            assert!(verify_cover_law(&a, n).unwrap());
        }
    }
}
