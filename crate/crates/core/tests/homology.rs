use annulus_core::corpus::{annulus_corpus, grid_ring};
use annulus_core::homology::{permutation_sign, Homology, Invariants, OneCycle};
use annulus_core::oracle::enumerate_tilings;
use annulus_core::QuadSurface;
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
fn hole_basis_sizes() {
    let cases = [(grid_ring(3, 1), 0, 4), (grid_ring(4, 2), 0, 6), (grid_ring(5, 1), 12, 4), (grid_ring(6, 2), 16, 6)];
    for (a, small, k) in cases {
        let b = Homology::new(&a).unwrap().hole_basis();
        assert_eq!(b.small.len(), small);
        assert_eq!(b.large.unwrap().1, k);
    }
}

#[test]
fn basis_cycle_values() {
    let a = grid_ring(6, 2);
    let h = Homology::new(&a).unwrap();
    let b = h.hole_basis();
    for (_, s) in &b.small {
        assert_eq!(h.hom_values(s).unwrap(), Invariants { flux: 0, volume: 1, sign: -1 });
    }
    let (l, k) = b.large.unwrap();
    let inv = h.hom_values(&l).unwrap();
    assert_eq!((inv.flux, inv.volume), (1, 0));
    assert_eq!(inv.sign, h.large_hole_sign());
    assert_eq!(h.large_hole_sign(), if k % 2 == 0 { -1 } else { 1 });
}

#[test]
fn coordinates_reconstruct_the_cycle() {
    for (name, a) in small_annuli() {
        let h = Homology::new(&a).unwrap();
        let b = h.hole_basis();
        let ts = enumerate_tilings(&a, CAP).unwrap();
        for t in ts.iter().take(20) {
            let c = h.tiling_cycle(t, &ts[0]);
            assert!(h.is_cycle(&c));
            let (small, large) = h.coordinates(&c).unwrap();
            let mut sum = OneCycle::zero(a.adjacency().len());
            for ((_, s), k) in b.small.iter().zip(&small) {
                sum.add_scaled(s, *k);
            }
            sum.add_scaled(&b.large.as_ref().unwrap().0, large);
            assert_eq!(sum, c, "{name}");
        }
    }
}

#[test]
fn flux_is_independent_of_the_cut() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for (name, a) in small_annuli() {
        let h = Homology::new(&a).unwrap();
        let ts = enumerate_tilings(&a, CAP).unwrap();
        let mut cuts = vec![a.find_cut().unwrap()];
        if let Ok(z) = a.find_zigzag_cut() {
            cuts.push(z);
        }
        for _ in 0..6 {
            let banned: Vec<bool> = (0..a.sides().len()).map(|_| rng.gen_bool(0.3)).collect();
            if let Some(c) = a.shortest_cut_where(|sd| !banned[sd], usize::MAX) {
                a.validate_cut(&c).unwrap();
                cuts.push(c);
            }
        }
        for t in &ts {
            let f = h.tiling_invariants(t, &ts[0]).unwrap().flux;
            for c in &cuts {
                assert_eq!(h.flux_across_cut(t, c) - h.flux_across_cut(&ts[0], c), f, "{name}");
            }
        }
    }
}

#[test]
fn invariants_agree_across_routes() {
    for (name, a) in small_annuli() {
        let h = Homology::new(&a).unwrap();
        let ts = enumerate_tilings(&a, CAP).unwrap();
        for t in &ts {
            let inv = h.tiling_invariants(t, &ts[0]).unwrap();
            assert_eq!(inv, h.tiling_invariants_geometric(t, &ts[0]).unwrap(), "{name}");
            assert_eq!(inv.sign, permutation_sign(&a, t, &ts[0]), "{name}");
        }
    }
}

#[test]
fn invariants_are_additive() {
    let a = grid_ring(6, 2);
    let h = Homology::new(&a).unwrap();
    let ts = enumerate_tilings(&a, CAP).unwrap();
    for t1 in ts.iter().step_by(7) {
        for t2 in ts.iter().step_by(5) {
            let x = h.tiling_invariants(t1, &ts[0]).unwrap();
            let y = h.tiling_invariants(t2, t1).unwrap();
            let z = h.tiling_invariants(t2, &ts[0]).unwrap();
            assert_eq!((x.flux + y.flux, x.volume + y.volume, x.sign * y.sign), (z.flux, z.volume, z.sign));
        }
    }
}
