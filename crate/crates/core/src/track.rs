//! Track-segment tilings, attachment indices and connection matrices.
//!
//! An index is a subset of the sides of one attachment, stored as a bit mask
//! whose least significant bit is the side at the `bo` end. A segment tiling
//! covers every square either by a domino or by exactly one preferred edge on
//! an attachment; its 0-index and 1-index are the preferred edges on `a0` and `a1`.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::analysis::Cyclo8;
use crate::error::Result;
use crate::heights::{covered_sides, heights_with};
use crate::laurent::{LaurentMatrix, LaurentPoly, UnitMonomial};
use crate::oracle::{for_each_matching, Tiling};
use crate::surface::{Attachment, TrackSegment};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AttachmentIndex {
    pub mask: u64,
    pub flux: i64,
    pub label: usize,
}

/// Signed count of preferred edges in `mask`.
pub fn index_flux(seg: &TrackSegment, which: Attachment, mask: u64) -> i64 {
    (0..seg.attachment(which).len())
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| seg.flux_sign(which, i))
        .sum()
}

/// All indices of an attachment, labeled by non-decreasing flux and then by mask.
pub fn enumerate_indices(seg: &TrackSegment, which: Attachment) -> Vec<AttachmentIndex> {
    let len = seg.attachment(which).len();
    assert!(len < 63, "attachment too long to index");
    let mut out: Vec<AttachmentIndex> = (0..1u64 << len)
        .map(|mask| AttachmentIndex { mask, flux: index_flux(seg, which, mask), label: 0 })
        .collect();
    out.sort_by_key(|i| (i.flux, i.mask));
    for (k, i) in out.iter_mut().enumerate() {
        i.label = k;
    }
    out
}

/// Preferred sides of the disk selected by a pair of indices.
pub fn preferred_sides(seg: &TrackSegment, i0: u64, i1: u64) -> BTreeSet<usize> {
    let d = seg.disk();
    let mut out = BTreeSet::new();
    for (which, mask) in [(Attachment::A0, i0), (Attachment::A1, i1)] {
        for (k, &(sq, s)) in seg.attachment(which).iter().enumerate() {
            if mask >> k & 1 == 1 {
                out.insert(d.side_id(sq, s));
            }
        }
    }
    out
}

/// Squares left to tile by dominoes, or `None` when some square carries two preferred edges.
pub fn prune(seg: &TrackSegment, i0: u64, i1: u64) -> Option<Vec<bool>> {
    let d = seg.disk();
    let mut count = vec![0u8; d.num_squares()];
    for sd in preferred_sides(seg, i0, i1) {
        let sq = d.side(sd).left.0;
        count[sq] += 1;
        if count[sq] > 1 {
            return None;
        }
    }
    Some(count.iter().map(|&c| c == 0).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentTiling {
    pub dominoes: Tiling,
    pub i0: u64,
    pub i1: u64,
}

/// Volume in quarter units: `4 * sum of h` over interior vertices plus `n_v * h`
/// over the inner vertices of both attachments, where `h = floor(theta / 4)` and
/// `theta` is the height from the base vertex that never walks along preferred edges.
pub fn segment_volume(seg: &TrackSegment, t: &SegmentTiling) -> Result<i64> {
    let theta = segment_heights(seg, t)?;
    let d = seg.disk();
    let h = |v: usize| theta[v].div_euclid(4);
    let mut q4: i64 = d.interior_vertices().map(|v| 4 * h(v)).sum();
    for which in [Attachment::A0, Attachment::A1] {
        let path = seg.attachment_path(which);
        for &v in &path[1..path.len() - 1] {
            q4 += d.vertex(v).degree() as i64 * h(v);
        }
    }
    Ok(q4)
}

pub fn segment_heights(seg: &TrackSegment, t: &SegmentTiling) -> Result<Vec<i64>> {
    let d = seg.disk();
    heights_with(d, &covered_sides(d, &t.dominoes), &preferred_sides(seg, t.i0, t.i1), seg.base_vertex())
}

/// Visit every segment tiling with indices `(i0, i1)`.
pub fn for_each_segment_tiling(seg: &TrackSegment, i0: u64, i1: u64, mut visit: impl FnMut(SegmentTiling)) {
    let Some(active) = prune(seg, i0, i1) else { return };
    for_each_matching(seg.disk(), &active, |edges| {
        visit(SegmentTiling { dominoes: Tiling::new(edges.to_vec()), i0, i1 })
    });
}

/// `sum q^nu(t)` over segment tilings with indices `(i0, i1)`.
pub fn entry(seg: &TrackSegment, i0: u64, i1: u64) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::zero();
    let mut err = None;
    for_each_segment_tiling(seg, i0, i1, |t| match segment_volume(seg, &t) {
        Ok(v) => out.add_term((0, v), 1.into()),
        Err(e) => err = Some(e),
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// One diagonal block: rows are 0-indices of flux `f`, columns 1-indices of flux `f + imbalance`.
#[derive(Clone, Debug, Serialize)]
pub struct Block {
    pub flux: i64,
    pub rows: Vec<u64>,
    pub cols: Vec<u64>,
    pub entries: LaurentMatrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConnectionMatrix {
    /// `#black - #white`, the flux shift from `a0` to `a1`.
    pub imbalance: i64,
    pub blocks: BTreeMap<i64, Block>,
}

pub fn connection_matrix(seg: &TrackSegment) -> Result<ConnectionMatrix> {
    let (b, w) = seg.disk().color_counts();
    let imbalance = b as i64 - w as i64;
    let zero = enumerate_indices(seg, Attachment::A0);
    let one = enumerate_indices(seg, Attachment::A1);
    let mut blocks = BTreeMap::new();
    let fluxes: BTreeSet<i64> = zero.iter().map(|i| i.flux).collect();
    for f in fluxes {
        let rows: Vec<u64> = zero.iter().filter(|i| i.flux == f).map(|i| i.mask).collect();
        let cols: Vec<u64> = one.iter().filter(|i| i.flux == f + imbalance).map(|i| i.mask).collect();
        if cols.is_empty() {
            continue;
        }
        let mut entries = Vec::with_capacity(rows.len());
        for &i0 in &rows {
            let row: Result<Vec<LaurentPoly>> = cols.iter().map(|&i1| entry(seg, i0, i1)).collect();
            entries.push(row?);
        }
        blocks.insert(f, Block { flux: f, rows, cols, entries });
    }
    Ok(ConnectionMatrix { imbalance, blocks })
}

impl ConnectionMatrix {
    /// Blocks with at least one nonzero entry.
    pub fn nonzero_blocks(&self) -> impl Iterator<Item = &Block> {
        self.blocks.values().filter(|b| b.entries.iter().flatten().any(|e| !e.is_zero()))
    }
}

pub fn trace(m: &LaurentMatrix) -> LaurentPoly {
    let mut t = LaurentPoly::zero();
    for (i, row) in m.iter().enumerate() {
        t += &row[i];
    }
    t
}

/// `sum_f p^f tr C_f`.
pub fn trace_polynomial(c: &ConnectionMatrix) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for b in c.blocks.values() {
        out += &trace(&b.entries).mul_unit(UnitMonomial::new(1, b.flux, 0));
    }
    out
}

pub fn mat_mul(a: &LaurentMatrix, b: &LaurentMatrix) -> LaurentMatrix {
    let (n, m) = (a.len(), b.first().map_or(0, |r| r.len()));
    let mut out = vec![vec![LaurentPoly::zero(); m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                if !bk[j].is_zero() {
                    out[i][j] += &(&a[i][k] * &bk[j]);
                }
            }
        }
    }
    out
}

pub fn mat_pow(a: &LaurentMatrix, n: u32) -> LaurentMatrix {
    let mut out = a.clone();
    for _ in 1..n {
        out = mat_mul(&out, a);
    }
    out
}

/// `a = u * b` entrywise for a single unit monomial `u`.
pub fn matrices_equal_up_to_unit(a: &LaurentMatrix, b: &LaurentMatrix) -> bool {
    if a.len() != b.len() || a.iter().zip(b).any(|(x, y)| x.len() != y.len()) {
        return false;
    }
    let mut unit: Option<UnitMonomial> = None;
    for (x, y) in a.iter().flatten().zip(b.iter().flatten()) {
        match (x.is_zero(), y.is_zero()) {
            (true, true) => continue,
            (false, false) => {}
            _ => return false,
        }
        let Some(u) = x.unit_ratio(y) else { return false };
        if *unit.get_or_insert(u) != u || y.mul_unit(u) != *x {
            return false;
        }
    }
    true
}

/// Block values at a positive real `q`.
pub fn block_at_q(m: &LaurentMatrix, q: f64) -> DMatrix<f64> {
    let n = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    DMatrix::from_fn(n, cols, |i, j| {
        m[i][j].eval(Complex64::new(1.0, 0.0), Complex64::new(q, 0.0)).map(|z| z.re).unwrap_or(f64::NAN)
    })
}

/// Block values at `q = -1`, exactly.
pub fn block_at_minus_one(m: &LaurentMatrix) -> Option<Vec<Vec<Cyclo8>>> {
    m.iter().map(|row| row.iter().map(Cyclo8::from_poly).collect()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct IndexGraph {
    pub flux: i64,
    pub indices: Vec<u64>,
    pub edges: Vec<Vec<bool>>,
    pub left_active: Vec<bool>,
    pub right_active: Vec<bool>,
}

impl IndexGraph {
    pub fn bi_active(&self) -> Vec<usize> {
        (0..self.indices.len()).filter(|&i| self.left_active[i] && self.right_active[i]).collect()
    }

    /// Boolean `k`-th power of the adjacency pattern.
    pub fn paths_of_length(&self, k: usize) -> Vec<Vec<bool>> {
        let n = self.indices.len();
        let mut out: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        for _ in 0..k {
            out = (0..n)
                .map(|i| (0..n).map(|j| (0..n).any(|m| out[i][m] && self.edges[m][j])).collect())
                .collect();
        }
        out
    }

    /// For `n` in `N+1 ..= N+extra`, a path of length `n` from `i` to `j`
    /// exists exactly when `i` is right-active and `j` is left-active.
    pub fn threshold_holds(&self, extra: usize) -> bool {
        let n = self.indices.len();
        (n + 1..=n + extra).all(|k| {
            let p = self.paths_of_length(k);
            (0..n).all(|i| (0..n).all(|j| p[i][j] == (self.right_active[i] && self.left_active[j])))
        })
    }
}

/// Index graph of a square block of a periodic segment.
pub fn index_graph(block: &Block) -> IndexGraph {
    assert_eq!(block.rows, block.cols, "index graph needs a periodic segment");
    let n = block.rows.len();
    let edges: Vec<Vec<bool>> = block.entries.iter().map(|r| r.iter().map(|e| !e.is_zero()).collect()).collect();
    let mut reach = edges.clone();
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    let cyclic: Vec<bool> = (0..n).map(|i| reach[i][i]).collect();
    let right_active = (0..n).map(|i| (0..n).any(|c| cyclic[c] && (c == i || reach[i][c]))).collect();
    let left_active = (0..n).map(|i| (0..n).any(|c| cyclic[c] && (c == i || reach[c][i]))).collect();
    IndexGraph { flux: block.flux, indices: block.rows.clone(), edges, left_active, right_active }
}

pub fn bi_active_submatrix(block: &Block, graph: &IndexGraph) -> LaurentMatrix {
    let keep = graph.bi_active();
    keep.iter().map(|&i| keep.iter().map(|&j| block.entries[i][j].clone()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kasteleyn::flux_polynomial;
    use crate::surface::QuadSurface;

    fn ring_segment() -> TrackSegment {
        let cells: Vec<_> = (0..3)
            .flat_map(|y| (0..3).map(move |x| (x, y)))
            .filter(|&c| c != (1, 1))
            .collect();
        let a = QuadSurface::from_grid(&cells).unwrap();
        a.cut_open(&a.find_cut().unwrap()).unwrap()
    }

    #[test]
    fn index_labels() {
        let seg = ring_segment();
        let idx = enumerate_indices(&seg, Attachment::A0);
        assert_eq!(idx.len(), 2);
        let fluxes: BTreeSet<i64> = idx.iter().map(|i| i.flux).collect();
        assert_eq!(fluxes.len(), 2);
        assert!(fluxes.contains(&0));
        assert!(idx.windows(2).all(|w| w[0].flux <= w[1].flux));
    }

    #[test]
    fn prune_cases() {
        let seg = ring_segment();
        assert_eq!(prune(&seg, 0, 0), Some(vec![true; 8]));
        let active = prune(&seg, 1, 1).unwrap();
        assert_eq!(active.iter().filter(|&&a| a).count(), 6);
        let mut count = 0;
        for_each_segment_tiling(&seg, 1, 1, |_| count += 1);
        assert_eq!(count, 1);
    }

    #[test]
    fn ring_connection_matrix() {
        let seg = ring_segment();
        let c = connection_matrix(&seg).unwrap();
        assert_eq!(c.imbalance, 0);
        let nz: Vec<&Block> = c.nonzero_blocks().collect();
        assert_eq!(nz.len(), 2);
        for b in &nz {
            assert_eq!(b.entries.len(), 1);
            let g = index_graph(b);
            assert_eq!(g.bi_active(), vec![0]);
        }
        let tp = trace_polynomial(&c);
        assert_eq!(tp.canonical(), LaurentPoly::from_p_coeffs(0, &[1, 1]));
        let a = seg.close_up().unwrap();
        assert!(tp.equals_up_to_unit(&flux_polynomial(&a).unwrap()));
    }

    #[test]
    fn volumes_within_an_entry_are_integral() {
        let cells: Vec<_> = (0..5)
            .flat_map(|y| (0..5).map(move |x| (x, y)))
            .filter(|&c| c != (2, 2))
            .collect();
        let a = QuadSurface::from_grid(&cells).unwrap();
        let seg = a.cut_open(&a.find_cut().unwrap()).unwrap();
        let hom = crate::homology::Homology::new(seg.disk()).unwrap();
        let mut saw_flip = false;
        for i0 in 0..1u64 << seg.attachment(Attachment::A0).len() {
            for i1 in 0..1u64 << seg.attachment(Attachment::A1).len() {
                let mut ts = Vec::new();
                for_each_segment_tiling(&seg, i0, i1, |t| ts.push(t));
                let vols: Vec<i64> = ts.iter().map(|t| segment_volume(&seg, t).unwrap()).collect();
                assert!(vols.iter().all(|v| (v - vols[0]) % 4 == 0));
                for (x, t) in ts.iter().enumerate() {
                    for f in crate::heights::flips(seg.disk(), &hom, &t.dominoes) {
                        let flipped = crate::heights::apply_flip(&t.dominoes, &f);
                        if let Some(y) = ts.iter().position(|u| u.dominoes == flipped) {
                            assert_eq!((vols[y] - vols[x]).abs(), 4);
                            saw_flip = true;
                        }
                    }
                }
            }
        }
        assert!(saw_flip);
    }

    #[test]
    fn unit_equality() {
        let a = vec![vec![LaurentPoly::monomial(1, 0, 3)]];
        let b = vec![vec![LaurentPoly::one()]];
        assert!(matrices_equal_up_to_unit(&a, &b));
        let c = vec![vec![LaurentPoly::one(), LaurentPoly::one()]];
        let d = vec![vec![LaurentPoly::one(), LaurentPoly::q()]];
        assert!(!matrices_equal_up_to_unit(&c, &d));
    }
}
