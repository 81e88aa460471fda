//! Kasteleyn weights, triples and the flux polynomial as a determinant.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{Homology, OneCycle};
use crate::laurent::{det_bareiss, det_exact, LaurentMatrix, LaurentPoly, UnitMonomial};
use crate::surface::{Color, Cut, QuadSurface, TrackSegment};

/// How the spanning tree of the cut-open adjacency graph is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeChoice {
    /// Breadth-first from the lowest square.
    Bfs,
    /// Random spanning tree from a seeded edge order.
    Random(u64),
}

/// Determinant engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Engine {
    Det,
    Interp,
}

/// Unit monomial weight per adjacency edge.
#[derive(Clone, Debug)]
pub struct KasteleynWeight {
    pub weights: Vec<UnitMonomial>,
    pub tree: Vec<bool>,
}

/// Bijections from `0..n` to black and white squares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareLabeling {
    pub blacks: Vec<usize>,
    pub whites: Vec<usize>,
}

impl SquareLabeling {
    pub fn sorted(surface: &QuadSurface) -> Self {
        let of = |c| (0..surface.num_squares()).filter(|&i| surface.color(i) == c).collect();
        SquareLabeling { blacks: of(Color::Black), whites: of(Color::White) }
    }

    pub fn shuffled(surface: &QuadSurface, seed: u64) -> Self {
        let mut l = Self::sorted(surface);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        l.blacks.shuffle(&mut rng);
        l.whites.shuffle(&mut rng);
        l
    }
}

/// `M_A = p^-1 N^- + M + p N^+`; rows are white squares, columns black squares.
#[derive(Clone, Debug)]
pub struct KasteleynTriple {
    pub n_minus: LaurentMatrix,
    pub m: LaurentMatrix,
    pub n_plus: LaurentMatrix,
}

fn zero_matrix(n: usize) -> LaurentMatrix {
    vec![vec![LaurentPoly::zero(); n]; n]
}

fn is_zero_matrix(m: &LaurentMatrix) -> bool {
    m.iter().flatten().all(|e| e.is_zero())
}

impl KasteleynTriple {
    pub fn size(&self) -> usize {
        self.m.len()
    }

    /// The full matrix with `p` reinserted.
    pub fn matrix(&self) -> LaurentMatrix {
        let n = self.size();
        let pinv = UnitMonomial::new(1, -1, 0);
        let p = UnitMonomial::new(1, 1, 0);
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        &(&self.n_minus[i][j].mul_unit(pinv) + &self.m[i][j]) + &self.n_plus[i][j].mul_unit(p)
                    })
                    .collect()
            })
            .collect()
    }

    pub fn has_null_side(&self) -> bool {
        is_zero_matrix(&self.n_minus) || is_zero_matrix(&self.n_plus)
    }
}

/// Kasteleyn weight of an annulus relative to a cut: weight 1 on a spanning
/// tree of the edges not crossing the cut, and `sigma p^phi q^nu` of the
/// fundamental circuit on every other edge.
pub fn build_weight(annulus: &QuadSurface, cut: &Cut, tree: TreeChoice) -> Result<KasteleynWeight> {
    if !annulus.is_balanced() {
        return Err(Error::UnbalancedSegment);
    }
    annulus.validate_cut(cut)?;
    let hom = Homology::new(annulus)?;
    let adj = annulus.adjacency();
    let crossing: Vec<bool> = {
        let mut c = vec![false; adj.len()];
        for &sd in &cut.sides {
            if let Some(e) = annulus.adj_of_side(sd) {
                c[e] = true;
            }
        }
        c
    };
    let n = annulus.num_squares();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, a) in adj.iter().enumerate() {
        if !crossing[e] {
            incident[a.black].push(e);
            incident[a.white].push(e);
        }
    }
    let mut in_tree = vec![false; adj.len()];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    match tree {
        TreeChoice::Bfs => {
            depth[0] = 0;
            let mut queue = VecDeque::from([0]);
            while let Some(u) = queue.pop_front() {
                for &e in &incident[u] {
                    let w = if adj[e].black == u { adj[e].white } else { adj[e].black };
                    if depth[w] == usize::MAX {
                        depth[w] = depth[u] + 1;
                        parent[w] = Some(e);
                        in_tree[e] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        TreeChoice::Random(seed) => {
            let mut order: Vec<usize> = (0..adj.len()).filter(|&e| !crossing[e]).collect();
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            let mut uf: Vec<usize> = (0..n).collect();
            fn find(uf: &mut [usize], x: usize) -> usize {
                let mut r = x;
                while uf[r] != r {
                    r = uf[r];
                }
                let mut y = x;
                while uf[y] != r {
                    let next = uf[y];
                    uf[y] = r;
                    y = next;
                }
                r
            }
            for e in order {
                let (a, b) = (find(&mut uf, adj[e].black), find(&mut uf, adj[e].white));
                if a != b {
                    uf[a] = b;
                    in_tree[e] = true;
                }
            }
            depth[0] = 0;
            let mut queue = VecDeque::from([0]);
            while let Some(u) = queue.pop_front() {
                for &e in &incident[u] {
                    if !in_tree[e] {
                        continue;
                    }
                    let w = if adj[e].black == u { adj[e].white } else { adj[e].black };
                    if depth[w] == usize::MAX {
                        depth[w] = depth[u] + 1;
                        parent[w] = Some(e);
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    if depth.contains(&usize::MAX) {
        return Err(Error::BadTopology("cut disconnects the adjacency graph".into()));
    }
    let mut weights = vec![UnitMonomial::ONE; adj.len()];
    for e in 0..adj.len() {
        if in_tree[e] {
            continue;
        }
        let mut c = OneCycle::zero(adj.len());
        c.0[e] = 1;
        // walk both ends up to their common ancestor, orienting each tree edge
        // along the circuit white(e) -> ... -> black(e)
        let (mut x, mut y) = (adj[e].white, adj[e].black);
        while x != y {
            if depth[x] >= depth[y] {
                let f = parent[x].unwrap();
                c.0[f] += if adj[f].black == x { 1 } else { -1 };
                x = if adj[f].black == x { adj[f].white } else { adj[f].black };
            } else {
                let f = parent[y].unwrap();
                c.0[f] += if adj[f].black == y { -1 } else { 1 };
                y = if adj[f].black == y { adj[f].white } else { adj[f].black };
            }
        }
        let inv = hom.hom_values(&c)?;
        weights[e] = UnitMonomial::new(inv.sign, inv.flux, 4 * inv.volume);
    }
    Ok(KasteleynWeight { weights, tree: in_tree })
}

/// Weight of a periodic track segment, via its closure.
pub fn build_weight_for_segment(seg: &TrackSegment) -> Result<(QuadSurface, KasteleynWeight)> {
    if !seg.disk().is_balanced() {
        return Err(Error::UnbalancedSegment);
    }
    let annulus = seg.close_up()?;
    let cut = seg.induced_cut(&annulus);
    let w = build_weight(&annulus, &cut, TreeChoice::Bfs)?;
    Ok((annulus, w))
}

/// `omega(c)`, the product of edge weights raised to the cycle coefficients.
pub fn weight_of_cycle(w: &KasteleynWeight, c: &OneCycle) -> UnitMonomial {
    let mut out = UnitMonomial::ONE;
    for (e, k) in c.support() {
        let u = if k > 0 { w.weights[e] } else { w.weights[e].inverse() };
        for _ in 0..k.abs() {
            out = out * u;
        }
    }
    out
}

/// Condition `omega(c) = sigma p^phi q^nu` on every hole-basis element.
pub fn verify_weight(annulus: &QuadSurface, w: &KasteleynWeight) -> Result<bool> {
    let hom = Homology::new(annulus)?;
    let basis = hom.hole_basis();
    let cycles = basis.small.iter().map(|(_, c)| c).chain(basis.large.as_ref().map(|(c, _)| c));
    for c in cycles {
        let inv = hom.hom_values(c)?;
        if weight_of_cycle(w, c) != UnitMonomial::new(inv.sign, inv.flux, 4 * inv.volume) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Splits the Kasteleyn matrix by the `p`-exponent of each weight.
pub fn triple(annulus: &QuadSurface, w: &KasteleynWeight, labels: &SquareLabeling) -> KasteleynTriple {
    let n = labels.blacks.len();
    let mut row = vec![usize::MAX; annulus.num_squares()];
    let mut col = vec![usize::MAX; annulus.num_squares()];
    for (i, &s) in labels.whites.iter().enumerate() {
        row[s] = i;
    }
    for (j, &s) in labels.blacks.iter().enumerate() {
        col[s] = j;
    }
    let mut t = KasteleynTriple { n_minus: zero_matrix(n), m: zero_matrix(n), n_plus: zero_matrix(n) };
    for (e, a) in annulus.adjacency().iter().enumerate() {
        let u = w.weights[e];
        let entry = UnitMonomial::new(u.sign, 0, u.q4).to_poly();
        let target = match u.p {
            -1 => &mut t.n_minus,
            0 => &mut t.m,
            1 => &mut t.n_plus,
            _ => unreachable!("edge crosses the cut at most once"),
        };
        target[row[a.white]][col[a.black]] += &entry;
    }
    t
}

/// Triple for an annulus with its default cut, tree and labeling.
pub fn default_triple(annulus: &QuadSurface) -> Result<KasteleynTriple> {
    let cut = annulus.find_cut()?;
    let w = build_weight(annulus, &cut, TreeChoice::Bfs)?;
    Ok(triple(annulus, &w, &SquareLabeling::sorted(annulus)))
}

/// `Phi_A(p, q) = det M_A`, or zero for an unbalanced annulus.
pub fn flux_polynomial(annulus: &QuadSurface) -> Result<LaurentPoly> {
    flux_polynomial_with(annulus, Engine::Det)
}

pub fn flux_polynomial_with(annulus: &QuadSurface, engine: Engine) -> Result<LaurentPoly> {
    if !annulus.is_annulus() {
        return Err(Error::NotAnAnnulus);
    }
    if !annulus.is_balanced() {
        return Ok(LaurentPoly::zero());
    }
    let t = default_triple(annulus)?;
    Ok(triple_det(&t, engine))
}

pub fn triple_det(t: &KasteleynTriple, engine: Engine) -> LaurentPoly {
    match engine {
        Engine::Det => det_exact(&t.matrix()),
        Engine::Interp => det_interp(t),
    }
}

/// Determinant by evaluation and interpolation in `p`.
/// Rows with an `N^+` (`N^-`) entry raise (lower) the `p`-degree by at most one,
/// so `det M_A = p^-r- g(p)` with `deg g <= r+ + r-`, and `g` is recovered from
/// `r+ + r- + 1` evaluations at `p = 1, 2, ...`.
pub fn det_interp(t: &KasteleynTriple) -> LaurentPoly {
    let n = t.size();
    if n == 0 {
        return LaurentPoly::one();
    }
    let rows_with = |m: &LaurentMatrix| m.iter().filter(|r| r.iter().any(|e| !e.is_zero())).count() as u32;
    let (r_plus, r_minus) = (rows_with(&t.n_plus), rows_with(&t.n_minus));
    let points: Vec<i64> = (1..=(r_plus + r_minus + 1) as i64).collect();
    // det(x^2 N^+ + x M + N^-) = x^n det M_A(x) = x^(n - r-) g(x)
    let values: Vec<LaurentPoly> = points
        .iter()
        .map(|&x| {
            let (x1, x2) = (BigInt::from(x), BigInt::from(x * x));
            let m: LaurentMatrix = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| &(&t.n_plus[i][j].scale(&x2) + &t.m[i][j].scale(&x1)) + &t.n_minus[i][j])
                        .collect()
                })
                .collect();
            let shift = num_traits::pow(x1, n - r_minus as usize);
            let mut g = LaurentPoly::zero();
            for (e, c) in det_bareiss(&m).terms() {
                assert!((c % &shift).is_zero(), "evaluation must carry the p-valuation");
                g.add_term(e, c / &shift);
            }
            g
        })
        .collect();
    let mut by_q: BTreeMap<i64, Vec<BigInt>> = BTreeMap::new();
    for (k, v) in values.iter().enumerate() {
        for ((_, eq), c) in v.terms() {
            by_q.entry(eq).or_insert_with(|| vec![BigInt::zero(); points.len()])[k] = c.clone();
        }
    }
    let mut out = LaurentPoly::zero();
    for (eq, ys) in by_q {
        for (d, c) in newton_interpolate(&points, &ys).into_iter().enumerate() {
            if !c.is_zero() {
                assert!(c.is_integer(), "interpolated coefficient must be integral");
                out.add_term((d as i64 - r_minus as i64, eq), c.to_integer());
            }
        }
    }
    out
}

/// Coefficients (ascending) of the interpolating polynomial through `(x_k, y_k)`.
fn newton_interpolate(xs: &[i64], ys: &[BigInt]) -> Vec<BigRational> {
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys.iter().map(|y| BigRational::from(y.clone())).collect();
    for level in 1..n {
        for k in (level..n).rev() {
            let den = BigRational::from(BigInt::from(xs[k] - xs[k - level]));
            dd[k] = (&dd[k] - &dd[k - 1]) / den;
        }
    }
    let mut coeffs = vec![BigRational::zero(); n];
    for k in (0..n).rev() {
        // coeffs = coeffs * (x - x_k) + dd[k]
        let mut next = vec![BigRational::zero(); n];
        for d in 0..n {
            if coeffs[d].is_zero() {
                continue;
            }
            if d + 1 < n {
                next[d + 1] += &coeffs[d];
            }
            next[d] -= &coeffs[d] * BigRational::from(BigInt::from(xs[k]));
        }
        next[0] += &dd[k];
        coeffs = next;
    }
    coeffs
}

/// Block triple of the `n`-fold cover: `M` on the diagonal, `N^+` below it,
/// `N^-` above it, and corner blocks carrying `(-1)^(n+1) p^(+-1)`.
pub fn cover_triple(t: &KasteleynTriple, n: usize) -> KasteleynTriple {
    assert!(n >= 1);
    if n == 1 {
        return t.clone();
    }
    let b = t.size();
    let mut out = KasteleynTriple { n_minus: zero_matrix(b * n), m: zero_matrix(b * n), n_plus: zero_matrix(b * n) };
    let corner_sign = if n % 2 == 1 { BigInt::one() } else { -BigInt::one() };
    let put = |dst: &mut LaurentMatrix, bi: usize, bj: usize, src: &LaurentMatrix, scale: &BigInt| {
        for i in 0..b {
            for j in 0..b {
                if !src[i][j].is_zero() {
                    dst[bi * b + i][bj * b + j] += &src[i][j].scale(scale);
                }
            }
        }
    };
    let one = BigInt::one();
    for k in 0..n {
        put(&mut out.m, k, k, &t.m, &one);
        if k + 1 < n {
            put(&mut out.m, k + 1, k, &t.n_plus, &one);
            put(&mut out.m, k, k + 1, &t.n_minus, &one);
        }
    }
    put(&mut out.n_plus, 0, n - 1, &t.n_plus, &corner_sign);
    put(&mut out.n_minus, n - 1, 0, &t.n_minus, &corner_sign);
    out
}

/// `Phi_(A^n)` from the cover triple equals the `n`-th root power of `Phi_A`, up to a unit.
pub fn verify_cover_law(annulus: &QuadSurface, n: usize) -> Result<bool> {
    if !annulus.is_balanced() {
        return Ok(true);
    }
    let t = default_triple(annulus)?;
    let phi = triple_det(&t, Engine::Det);
    let cover = triple_det(&cover_triple(&t, n), Engine::Det);
    if phi.is_zero() {
        return Ok(cover.is_zero());
    }
    Ok(cover.equals_up_to_unit(&crate::laurent::root_power(&phi, n as u32)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::generating_function;

    fn grid(w: i64, h: i64, holes: &[(i64, i64)]) -> QuadSurface {
        let cells: Vec<_> = (0..h)
            .flat_map(|y| (0..w).map(move |x| (x, y)))
            .filter(|c| !holes.contains(c))
            .collect();
        QuadSurface::from_grid(&cells).unwrap()
    }

    fn ring3() -> QuadSurface {
        grid(3, 3, &[(1, 1)])
    }

    #[test]
    fn ring_weight_and_phi() {
        let a = ring3();
        let cut = a.find_cut().unwrap();
        let w = build_weight(&a, &cut, TreeChoice::Bfs).unwrap();
        assert!(verify_weight(&a, &w).unwrap());
        let hom = Homology::new(&a).unwrap();
        let (l, _) = hom.hole_basis().large.unwrap();
        assert_eq!(weight_of_cycle(&w, &l), UnitMonomial::new(-1, 1, 0));
        let phi = flux_polynomial(&a).unwrap();
        assert_eq!(phi.canonical(), LaurentPoly::from_p_coeffs(0, &[1, 1]));
    }

    #[test]
    fn small_hole_weight() {
        let a = grid(5, 5, &[(2, 2)]);
        let cut = a.find_cut().unwrap();
        for tree in [TreeChoice::Bfs, TreeChoice::Random(3)] {
            let w = build_weight(&a, &cut, tree).unwrap();
            assert!(verify_weight(&a, &w).unwrap());
            for (e, u) in w.weights.iter().enumerate() {
                if w.tree[e] {
                    assert_eq!(*u, UnitMonomial::ONE);
                }
                assert!(u.p.abs() <= 1);
            }
        }
    }

    #[test]
    fn matches_oracle() {
        for a in [ring3(), grid(4, 4, &[(1, 1), (2, 1), (1, 2), (2, 2)]), grid(4, 4, &[(1, 1), (2, 1)])] {
            let phi = flux_polynomial(&a).unwrap();
            let (_, unsigned) = generating_function(&a, 44).unwrap();
            assert_eq!(phi.canonical(), unsigned.canonical());
            assert_eq!(flux_polynomial_with(&a, Engine::Interp).unwrap(), phi);
        }
    }

    #[test]
    fn independent_of_tree_labels_and_cut() {
        let a = grid(6, 6, &[(2, 2), (3, 2), (2, 3), (3, 3)]);
        let base = flux_polynomial(&a).unwrap().canonical();
        let cuts = [a.find_cut().unwrap(), a.find_zigzag_cut().unwrap()];
        for (i, cut) in cuts.iter().enumerate() {
            let w = build_weight(&a, cut, TreeChoice::Random(i as u64 + 10)).unwrap();
            let t = triple(&a, &w, &SquareLabeling::shuffled(&a, i as u64));
            assert_eq!(triple_det(&t, Engine::Det).canonical(), base);
        }
    }

    #[test]
    fn unbalanced_is_zero() {
        let cells: Vec<_> = (0..5)
            .flat_map(|y| (0..5).map(move |x| (x, y)))
            .filter(|&c| c != (2, 2) && c != (0, 0))
            .collect();
        let a = QuadSurface::from_grid(&cells).unwrap();
        assert!(flux_polynomial(&a).unwrap().is_zero());
        let cut = a.find_cut().unwrap();
        assert_eq!(build_weight(&a, &cut, TreeChoice::Bfs).unwrap_err(), Error::UnbalancedSegment);
    }

    #[test]
    fn cover_blocks() {
        let t = default_triple(&ring3()).unwrap();
        assert_eq!(cover_triple(&t, 1).m, t.m);
        let c2 = cover_triple(&t, 2);
        let b = t.size();
        for i in 0..b {
            for j in 0..b {
                assert_eq!(c2.n_plus[i][b + j], -t.n_plus[i][j].clone());
            }
        }
        let c3 = cover_triple(&t, 3);
        for i in 0..b {
            for j in 0..b {
                assert_eq!(c3.n_plus[i][2 * b + j], t.n_plus[i][j]);
            }
        }
    }

    #[test]
    fn cover_law_against_explicit_cover() {
        let a = ring3();
        let seg = a.cut_open(&a.find_cut().unwrap()).unwrap();
        for n in [2, 3] {
            assert!(verify_cover_law(&a, n).unwrap());
            let cover = seg.n_fold(n).unwrap().close_up().unwrap();
            let direct = flux_polynomial(&cover).unwrap();
            let t = default_triple(&a).unwrap();
            let blocks = triple_det(&cover_triple(&t, n), Engine::Det);
            assert!(direct.equals_up_to_unit(&blocks), "n = {n}: {direct} vs {blocks}");
        }
    }

    #[test]
    fn zigzag_cut_nullifies_a_side() {
        let cells: Vec<(i64, i64)> = (0..4).flat_map(|i| (0..2).map(move |j| (i + j, i))).collect();
        let a = QuadSurface::from_periodic_grid(&cells, (4, 4)).unwrap();
        let cut = a.find_zigzag_cut().unwrap();
        let w = build_weight(&a, &cut, TreeChoice::Bfs).unwrap();
        assert!(triple(&a, &w, &SquareLabeling::sorted(&a)).has_null_side());
    }
}
