//! Seeded test corpora of annuli and disks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::oracle::find_tiling;
use crate::surface::{QuadSurface, TrackSegment};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Kind {
    GridRing,
    RandomGridAnnulus,
    Band,
    Cylinder,
    Cover,
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub kind: Kind,
    pub surface: QuadSurface,
    /// Segment whose closure is `surface`, when the entry was built from one.
    pub segment: Option<TrackSegment>,
    /// Number of walls, for bands.
    pub walls: Option<usize>,
}

impl Entry {
    fn new(name: String, kind: Kind, surface: QuadSurface) -> Self {
        Entry { name, kind, surface, segment: None, walls: None }
    }

    /// The entry's segment, or the surface cut open along its default cut.
    pub fn segment(&self) -> crate::Result<TrackSegment> {
        match &self.segment {
            Some(s) => Ok(s.clone()),
            None => self.surface.cut_open(&self.surface.find_cut()?),
        }
    }
}

pub fn block(w: i64, h: i64) -> Vec<(i64, i64)> {
    (0..h).flat_map(|y| (0..w).map(move |x| (x, y))).collect()
}

/// `n x n` block minus a centered `hole x hole` block.
pub fn grid_ring(n: i64, hole: i64) -> QuadSurface {
    let lo = (n - hole) / 2;
    let cells: Vec<_> = block(n, n)
        .into_iter()
        .filter(|&(x, y)| !(x >= lo && x < lo + hole && y >= lo && y < lo + hole))
        .collect();
    QuadSurface::from_grid(&cells).expect("grid ring is an annulus")
}

/// Diagonal band of width `w`: cells `(i + j, i)` for `j < w`, modulo `(n, n)`.
pub fn band(n: i64, w: i64) -> QuadSurface {
    let cells: Vec<_> = (0..n).flat_map(|i| (0..w).map(move |j| (i + j, i))).collect();
    QuadSurface::from_periodic_grid(&cells, (n, n)).expect("band is an annulus")
}

/// Straight `w x n` cylinder, glued top to bottom.
pub fn cylinder(w: i64, n: i64) -> QuadSurface {
    QuadSurface::from_periodic_grid(&block(w, n), (0, n)).expect("cylinder is an annulus")
}

fn try_annulus(cells: &[(i64, i64)]) -> Option<QuadSurface> {
    let s = QuadSurface::from_grid(cells).ok()?;
    (s.is_annulus() && s.is_balanced()).then_some(s)
}

/// Random balanced grid annulus with at most `max_squares` squares: a box
/// with a rectangular hole, then random pairs of cells removed.
pub fn random_grid_annulus(rng: &mut ChaCha8Rng, max_squares: usize) -> QuadSurface {
    loop {
        let (w, h) = (rng.gen_range(4..=7), rng.gen_range(4..=7));
        let (hw, hh) = (rng.gen_range(1..=w - 2), rng.gen_range(1..=h - 2));
        let (hx, hy) = (rng.gen_range(1..=w - 1 - hw), rng.gen_range(1..=h - 1 - hh));
        let mut cells: Vec<(i64, i64)> = block(w, h)
            .into_iter()
            .filter(|&(x, y)| !(x >= hx && x < hx + hw && y >= hy && y < hy + hh))
            .collect();
        for _ in 0..60 {
            if cells.len() <= max_squares && try_annulus(&cells).is_some() && rng.gen_bool(0.5) {
                break;
            }
            let mut next = cells.clone();
            next.swap_remove(rng.gen_range(0..cells.len()));
            if QuadSurface::from_grid(&next).is_ok_and(|s| s.is_annulus()) {
                cells = next;
            }
        }
        if cells.len() <= max_squares {
            if let Some(s) = try_annulus(&cells).filter(|s| find_tiling(s).is_some()) {
                return s;
            }
        }
    }
}

/// Random balanced simply connected polyomino with at most `max_cells` cells.
pub fn random_disk(rng: &mut ChaCha8Rng, max_cells: usize) -> QuadSurface {
    loop {
        let target = rng.gen_range(2..=max_cells);
        let mut cells = vec![(0i64, 0i64)];
        while cells.len() < target {
            let &(x, y) = cells.choose(rng).unwrap();
            let (dx, dy) = [(1, 0), (-1, 0), (0, 1), (0, -1)][rng.gen_range(0..4)];
            let c = (x + dx, y + dy);
            if !cells.contains(&c) {
                cells.push(c);
            }
        }
        if let Ok(s) = QuadSurface::from_grid(&cells) {
            if s.is_disk() && s.is_balanced() && find_tiling(&s).is_some() {
                return s;
            }
        }
    }
}

/// The balanced annulus corpus used by the acceptance checks.
pub fn annulus_corpus(seed: u64) -> Vec<Entry> {
    let mut out = Vec::new();
    for (n, h) in [(3, 1), (4, 2), (5, 1), (5, 3), (6, 2), (6, 4)] {
        out.push(Entry::new(format!("ring-{n}x{n}-minus-{h}x{h}"), Kind::GridRing, grid_ring(n, h)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..8 {
        out.push(Entry::new(format!("random-annulus-{k}"), Kind::RandomGridAnnulus, random_grid_annulus(&mut rng, 40)));
    }
    for (n, w, walls) in [(4, 2, 2), (6, 2, 2), (4, 4, 3), (6, 4, 3), (6, 6, 4)] {
        let mut e = Entry::new(format!("band-{n}-width-{w}"), Kind::Band, band(n, w));
        e.walls = Some(walls);
        out.push(e);
    }
    for (w, n) in [(2, 4), (3, 4), (4, 6)] {
        out.push(Entry::new(format!("cylinder-{w}x{n}"), Kind::Cylinder, cylinder(w, n)));
    }
    for (name, base, n) in [("ring-3", grid_ring(3, 1), 2), ("ring-3", grid_ring(3, 1), 3), ("ring-4", grid_ring(4, 2), 2)] {
        let seg = base.cut_open(&base.find_cut().unwrap()).unwrap();
        let cover = seg.n_fold(n).unwrap();
        let surface = cover.close_up().unwrap();
        let mut e = Entry::new(format!("{name}-cover-{n}"), Kind::Cover, surface);
        e.segment = Some(cover);
        out.push(e);
    }
    out
}

/// Random balanced disks for the signed-count check.
pub fn disk_corpus(seed: u64, count: usize, max_cells: usize) -> Vec<QuadSurface> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_disk(&mut rng, max_cells)).collect()
}
