//! Height functions, flips, flux classes and extremal-flux cuts.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{permutation_sign, Homology};
use crate::oracle::{enumerate_tilings, Tiling};
use crate::surface::{Color, Cut, QuadSurface};

/// Cut length cap for the non-trespassed cut search.
pub const CUT_CAP: usize = 12;

/// Height step walking a side from tail to head.
fn forward_step(s: &QuadSurface, sd: usize, covered: bool) -> i64 {
    let white_left = s.color(s.side(sd).left.0) == Color::White;
    match (white_left, covered) {
        (true, false) => 1,
        (true, true) => -3,
        (false, false) => -1,
        (false, true) => 3,
    }
}

/// Heights from `base` (value 0), never walking along `forbidden` sides.
/// `covered` holds the sides interior to a domino.
pub fn heights_with(
    s: &QuadSurface,
    covered: &BTreeSet<usize>,
    forbidden: &BTreeSet<usize>,
    base: usize,
) -> Result<Vec<i64>> {
    let nv = s.vertices().len();
    let mut theta: Vec<Option<i64>> = vec![None; nv];
    theta[base] = Some(0);
    let mut queue = VecDeque::from([base]);
    while let Some(u) = queue.pop_front() {
        for &sd in &s.vertex(u).rays {
            if forbidden.contains(&sd) {
                continue;
            }
            let side = s.side(sd);
            let step = forward_step(s, sd, covered.contains(&sd));
            let (w, d) = if side.tail == u { (side.head, step) } else { (side.tail, -step) };
            let val = theta[u].unwrap() + d;
            match theta[w] {
                None => {
                    theta[w] = Some(val);
                    queue.push_back(w);
                }
                Some(x) if x != val => {
                    return Err(Error::InconsistentHeight(format!("vertex {w}: {x} vs {val}")));
                }
                Some(_) => {}
            }
        }
    }
    theta
        .into_iter()
        .enumerate()
        .map(|(v, t)| t.ok_or_else(|| Error::InconsistentHeight(format!("vertex {v} unreachable"))))
        .collect()
}

pub fn covered_sides(s: &QuadSurface, t: &Tiling) -> BTreeSet<usize> {
    t.edges.iter().map(|&e| s.adjacency()[e].side).collect()
}

/// Height function of a tiling of a disk, zero at `base`.
pub fn height_function(disk: &QuadSurface, t: &Tiling, base: usize) -> Result<Vec<i64>> {
    let theta = heights_with(disk, &covered_sides(disk, t), &BTreeSet::new(), base)?;
    if !satisfies_height_rules(disk, &theta, base) {
        return Err(Error::InconsistentHeight("local rules violated".into()));
    }
    Ok(theta)
}

/// Lowest-id vertex on the outer boundary (any boundary vertex for a disk).
pub fn default_base(s: &QuadSurface) -> usize {
    (0..s.vertices().len())
        .find(|&v| if s.is_annulus() { s.is_outer(v) } else { s.vertex(v).is_boundary() })
        .expect("surface has a boundary")
}

/// Local rules: zero at the base, boundary steps of `+-1` by the color on the
/// left, interior steps of `1 or -3` (white on the left) and `-1 or 3` (black).
pub fn satisfies_height_rules(s: &QuadSurface, theta: &[i64], base: usize) -> bool {
    if theta.get(base) != Some(&0) {
        return false;
    }
    s.sides().iter().all(|side| {
        let d = theta[side.head] - theta[side.tail];
        let white_left = s.color(side.left.0) == Color::White;
        match (side.is_boundary(), white_left) {
            (true, true) => d == 1,
            (true, false) => d == -1,
            (false, true) => d == 1 || d == -3,
            (false, false) => d == -1 || d == 3,
        }
    })
}

/// The tiling encoded by a height function: dominoes straddle the sides with steps of 3.
pub fn tiling_from_heights(s: &QuadSurface, theta: &[i64]) -> Option<Tiling> {
    let mut edges = Vec::new();
    let mut used = vec![false; s.num_squares()];
    for (sd, side) in s.sides().iter().enumerate() {
        if (theta[side.head] - theta[side.tail]).abs() != 3 {
            continue;
        }
        let e = s.adj_of_side(sd)?;
        let a = &s.adjacency()[e];
        if used[a.black] || used[a.white] {
            return None;
        }
        used[a.black] = true;
        used[a.white] = true;
        edges.push(e);
    }
    used.iter().all(|&u| u).then(|| Tiling::new(edges))
}

/// `nu(t; t0) = (1/4) sum over interior vertices of (theta_t - theta_t0)`.
pub fn disk_volume(disk: &QuadSurface, t: &Tiling, t0: &Tiling) -> Result<i64> {
    let base = default_base(disk);
    let a = height_function(disk, t, base)?;
    let b = height_function(disk, t0, base)?;
    let sum: i64 = disk.interior_vertices().map(|v| a[v] - b[v]).sum();
    Ok(sum / 4)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FlipDirection {
    Raise,
    Lower,
}

/// Rotation of two parallel dominoes around an interior vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlipMove {
    pub vertex: usize,
    pub remove: [usize; 2],
    pub add: [usize; 2],
    pub direction: FlipDirection,
}

/// All flips available in `t`.
pub fn flips(s: &QuadSurface, hom: &Homology, t: &Tiling) -> Vec<FlipMove> {
    let mut out = Vec::new();
    for v in s.interior_vertices() {
        let ring: Vec<usize> = s.vertex(v).rays.iter().filter_map(|&sd| s.adj_of_side(sd)).collect();
        if ring.len() != 4 {
            continue;
        }
        let inside: Vec<usize> = ring.iter().copied().filter(|&e| t.contains(e)).collect();
        if inside.len() != 2 {
            continue;
        }
        let others: Vec<usize> = ring.iter().copied().filter(|&e| !t.contains(e)).collect();
        let squares = |es: &[usize]| -> BTreeSet<usize> {
            es.iter().flat_map(|&e| [s.adjacency()[e].black, s.adjacency()[e].white]).collect()
        };
        if squares(&inside).len() != 4 || squares(&others).len() != 4 {
            continue;
        }
        let direction = if hom.star_sign(others[0], v) > 0 { FlipDirection::Raise } else { FlipDirection::Lower };
        out.push(FlipMove {
            vertex: v,
            remove: [inside[0], inside[1]],
            add: [others[0], others[1]],
            direction,
        });
    }
    out
}

pub fn apply_flip(t: &Tiling, f: &FlipMove) -> Tiling {
    let mut edges: Vec<usize> = t.edges.iter().copied().filter(|e| !f.remove.contains(e)).collect();
    edges.extend(f.add);
    Tiling::new(edges)
}

#[derive(Clone, Debug, Serialize)]
pub struct FluxData {
    pub f_min: i64,
    pub f_max: i64,
    /// Tiling count per flux, relative to the first enumerated tiling.
    pub counts: BTreeMap<i64, usize>,
}

/// Flux of every tiling relative to the first one.
pub fn tilings_by_flux(annulus: &QuadSurface, cap: usize) -> Result<BTreeMap<i64, Vec<Tiling>>> {
    let tilings = enumerate_tilings(annulus, cap)?;
    let hom = Homology::new(annulus)?;
    let mut out: BTreeMap<i64, Vec<Tiling>> = BTreeMap::new();
    let Some(t0) = tilings.first().cloned() else { return Ok(out) };
    for t in tilings {
        let f = hom.tiling_invariants(&t, &t0)?.flux;
        out.entry(f).or_default().push(t);
    }
    Ok(out)
}

pub fn extremal_flux_data(annulus: &QuadSurface, cap: usize) -> Result<FluxData> {
    let classes = tilings_by_flux(annulus, cap)?;
    let (Some(&f_min), Some(&f_max)) = (classes.keys().next(), classes.keys().next_back()) else {
        return Err(Error::NoTilings);
    };
    Ok(FluxData { f_min, f_max, counts: classes.iter().map(|(&f, v)| (f, v.len())).collect() })
}

/// Sizes of the connected components of the flip graph on `tilings`.
pub fn flip_components(s: &QuadSurface, tilings: &[Tiling]) -> Result<Vec<usize>> {
    let hom = Homology::new(s)?;
    let index: HashMap<&Tiling, usize> = tilings.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut comp = vec![usize::MAX; tilings.len()];
    let mut sizes = Vec::new();
    for start in 0..tilings.len() {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let mut size = 0;
        comp[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            size += 1;
            for f in flips(s, &hom, &tilings[i]) {
                let next = apply_flip(&tilings[i], &f);
                if let Some(&j) = index.get(&next) {
                    if comp[j] == usize::MAX {
                        comp[j] = id;
                        queue.push_back(j);
                    }
                }
            }
        }
        sizes.push(size);
    }
    Ok(sizes)
}

/// Whether the flux-`f` tilings form a single flip class.
pub fn flip_class_connected(annulus: &QuadSurface, f: i64, cap: usize) -> Result<bool> {
    let classes = tilings_by_flux(annulus, cap)?;
    let Some(ts) = classes.get(&f) else { return Ok(true) };
    Ok(flip_components(annulus, ts)?.len() <= 1)
}

/// A cut crossed by no domino of any flux-`f` tiling, of length at most `cap`.
pub fn find_nontrespassed_cut(annulus: &QuadSurface, f: i64, cap: usize, enum_cap: usize) -> Result<Option<Cut>> {
    let classes = tilings_by_flux(annulus, enum_cap)?;
    let Some(ts) = classes.get(&f) else { return Ok(None) };
    let mut trespassed = BTreeSet::new();
    for t in ts {
        trespassed.extend(covered_sides(annulus, t));
    }
    Ok(annulus.shortest_cut_where(|sd| !trespassed.contains(&sd), cap))
}

/// `sum_t sigma(t; t0)` over all tilings of a disk.
pub fn deift_tomei_sum(disk: &QuadSurface, cap: usize) -> Result<i64> {
    let tilings = enumerate_tilings(disk, cap)?;
    let Some(t0) = tilings.first() else { return Ok(0) };
    Ok(tilings.iter().map(|t| permutation_sign(disk, t, t0) as i64).sum())
}
