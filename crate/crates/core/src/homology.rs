//! Cycle space of the adjacency graph and the flux, volume and sign homomorphisms.
//!
//! A 1-cycle is stored as one integer per adjacency edge (black to white).
//! Every cycle is a sum of vertex stars: the star of a vertex of the surface
//! is the counterclockwise circuit through the squares around it. Interior
//! vertices give the small holes; the stars of the inner boundary vertices
//! add up to the large hole.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::Tiling;
use crate::surface::{Color, Cut, QuadSurface};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OneCycle(pub Vec<i64>);

impl OneCycle {
    pub fn zero(edges: usize) -> Self {
        OneCycle(vec![0; edges])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add_scaled(&mut self, other: &OneCycle, k: i64) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += k * b;
        }
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.0.iter().enumerate().filter(|(_, &c)| c != 0).map(|(e, &c)| (e, c))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Invariants {
    pub flux: i64,
    pub volume: i64,
    pub sign: i8,
}

impl Invariants {
    pub const ZERO: Invariants = Invariants { flux: 0, volume: 0, sign: 1 };

    fn combine(self, o: Invariants) -> Invariants {
        Invariants { flux: self.flux + o.flux, volume: self.volume + o.volume, sign: self.sign * o.sign }
    }
}

#[derive(Clone, Debug)]
pub struct HoleBasis {
    /// One small hole per interior vertex.
    pub small: Vec<(usize, OneCycle)>,
    /// The large hole and half its boundary length, for annuli.
    pub large: Option<(OneCycle, usize)>,
}

/// Node of the potential graph: the outer boundary, the inner boundary, or an interior vertex.
const OUTER: usize = 0;
const INNER: usize = 1;

pub struct Homology<'a> {
    surface: &'a QuadSurface,
    /// Sign of each edge in the star of its side's tail vertex.
    eps_tail: Vec<i64>,
    node: Vec<usize>,
    interior: Vec<usize>,
    half_length: Option<usize>,
}

impl<'a> Homology<'a> {
    pub fn new(surface: &'a QuadSurface) -> Result<Self> {
        let mut eps_tail = Vec::with_capacity(surface.adjacency().len());
        for e in surface.adjacency() {
            let side = surface.side(e.side);
            let wedge = surface.vertex(side.tail).fan[side.tail_ray];
            // crossing ray r turns counterclockwise from wedge r - 1 into wedge r
            eps_tail.push(if wedge == (e.white, e.white_side) { 1 } else { -1 });
        }
        let interior: Vec<usize> = surface.interior_vertices().collect();
        let mut node = vec![OUTER; surface.vertices().len()];
        for (i, &v) in interior.iter().enumerate() {
            node[v] = 2 + i;
        }
        for v in 0..node.len() {
            if surface.is_inner(v) {
                node[v] = INNER;
            }
        }
        let half_length = if surface.is_annulus() {
            let twice: usize = (0..surface.vertices().len())
                .filter(|&v| surface.is_inner(v))
                .map(|v| surface.vertex(v).degree() - 1)
                .sum();
            if !twice.is_multiple_of(2) {
                return Err(Error::BadTopology("large hole of odd length".into()));
            }
            Some(twice / 2)
        } else {
            None
        };
        let rank = surface.adjacency().len() as i64 - surface.num_squares() as i64 + 1;
        let expected = interior.len() as i64 + surface.is_annulus() as i64;
        if rank != expected {
            return Err(Error::BadTopology(format!(
                "cycle space rank {rank}, hole basis has {expected} elements"
            )));
        }
        Ok(Homology { surface, eps_tail, node, interior, half_length })
    }

    pub fn surface(&self) -> &QuadSurface {
        self.surface
    }

    /// `k`, half the boundary length of the large hole.
    pub fn large_hole_half_length(&self) -> Option<usize> {
        self.half_length
    }

    /// Sign of the large hole, `(-1)^(k+1)`.
    pub fn large_hole_sign(&self) -> i8 {
        match self.half_length {
            Some(k) if k % 2 == 0 => -1,
            _ => 1,
        }
    }

    /// Sign of edge `e` in the star of vertex `v` (zero if not incident).
    pub fn star_sign(&self, e: usize, v: usize) -> i64 {
        let side = self.surface.side(self.surface.adjacency()[e].side);
        if side.tail == v {
            self.eps_tail[e]
        } else if side.head == v {
            -self.eps_tail[e]
        } else {
            0
        }
    }

    /// Counterclockwise circuit through the squares around `v`.
    pub fn star(&self, v: usize) -> OneCycle {
        let mut c = OneCycle::zero(self.surface.adjacency().len());
        for &sd in &self.surface.vertex(v).rays {
            if let Some(e) = self.surface.adj_of_side(sd) {
                c.0[e] += self.star_sign(e, v);
            }
        }
        c
    }

    pub fn hole_basis(&self) -> HoleBasis {
        let small = self.interior.iter().map(|&v| (v, self.star(v))).collect();
        let large = self.half_length.map(|k| {
            let mut l = OneCycle::zero(self.surface.adjacency().len());
            for v in 0..self.surface.vertices().len() {
                if self.surface.is_inner(v) {
                    l.add_scaled(&self.star(v), 1);
                }
            }
            (l, k)
        });
        HoleBasis { small, large }
    }

    /// True when every square has zero net coefficient.
    pub fn is_cycle(&self, c: &OneCycle) -> bool {
        let mut div = vec![0i64; self.surface.num_squares()];
        for (e, k) in c.support() {
            let a = &self.surface.adjacency()[e];
            div[a.black] += k;
            div[a.white] += k;
        }
        div.iter().all(|&d| d == 0)
    }

    /// Coordinates in the hole basis: per interior vertex (in
    /// `surface.interior_vertices()` order) and the large-hole coefficient.
    pub fn coordinates(&self, c: &OneCycle) -> Result<(Vec<i64>, i64)> {
        if c.0.len() != self.surface.adjacency().len() || !self.is_cycle(c) {
            return Err(Error::NotACycle);
        }
        let nodes = 2 + self.interior.len();
        let mut links: Vec<Vec<(usize, i64)>> = vec![Vec::new(); nodes];
        for (e, a) in self.surface.adjacency().iter().enumerate() {
            let side = self.surface.side(a.side);
            let (u, w) = (self.node[side.tail], self.node[side.head]);
            // c_e = eps (X_tail - X_head)
            let d = self.eps_tail[e] * c.0[e];
            links[u].push((w, -d));
            links[w].push((u, d));
        }
        let mut x: Vec<Option<i64>> = vec![None; nodes];
        x[OUTER] = Some(0);
        let mut queue = VecDeque::from([OUTER]);
        while let Some(u) = queue.pop_front() {
            let xu = x[u].unwrap();
            for &(w, d) in &links[u] {
                match x[w] {
                    None => {
                        x[w] = Some(xu + d);
                        queue.push_back(w);
                    }
                    Some(xw) if xw != xu + d => return Err(Error::NotACycle),
                    Some(_) => {}
                }
            }
        }
        if !self.surface.is_annulus() {
            x[INNER] = Some(0);
        }
        let small = (0..self.interior.len()).map(|i| x[2 + i].unwrap_or(0)).collect();
        Ok((small, x[INNER].unwrap_or(0)))
    }

    /// Flux, volume and sign of a 1-cycle.
    pub fn hom_values(&self, c: &OneCycle) -> Result<Invariants> {
        let (small, large) = self.coordinates(c)?;
        let volume: i64 = small.iter().sum();
        let mut sign: i8 = if volume.rem_euclid(2) == 0 { 1 } else { -1 };
        if large.rem_euclid(2) == 1 {
            sign *= self.large_hole_sign();
        }
        Ok(Invariants { flux: large, volume, sign })
    }

    /// `t - t0` as a 1-cycle.
    pub fn tiling_cycle(&self, t: &Tiling, t0: &Tiling) -> OneCycle {
        let mut c = OneCycle::zero(self.surface.adjacency().len());
        for &e in &t.edges {
            c.0[e] += 1;
        }
        for &e in &t0.edges {
            c.0[e] -= 1;
        }
        c
    }

    pub fn tiling_invariants(&self, t: &Tiling, t0: &Tiling) -> Result<Invariants> {
        self.hom_values(&self.tiling_cycle(t, t0))
    }

    /// Signed number of domino arrows crossing `cut` counterclockwise.
    pub fn flux_across_cut(&self, t: &Tiling, cut: &Cut) -> i64 {
        let mut flux = 0;
        for (i, &sd) in cut.sides.iter().enumerate() {
            let Some(e) = self.surface.adj_of_side(sd) else { continue };
            if !t.contains(e) {
                continue;
            }
            let side = self.surface.side(sd);
            let left_sq = if side.tail == cut.vertices[i] { side.left.0 } else { side.right.unwrap().0 };
            flux += if self.surface.color(left_sq) == Color::Black { 1 } else { -1 };
        }
        flux
    }

    /// Flux, volume and sign of a simple circuit computed from the region it encloses.
    pub fn circuit_values_geometric(&self, c: &OneCycle) -> Result<Invariants> {
        let s = self.surface;
        let support: Vec<(usize, i64)> = c.support().collect();
        if support.is_empty() {
            return Ok(Invariants::ZERO);
        }
        let blocked: BTreeSet<usize> = support.iter().map(|&(e, _)| s.adjacency()[e].side).collect();
        let nv = s.vertices().len();
        let mut outside = vec![false; nv];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for v in 0..nv {
            let seed = if s.is_annulus() { s.is_outer(v) } else { s.vertex(v).is_boundary() };
            if seed {
                outside[v] = true;
                queue.push_back(v);
            }
        }
        while let Some(u) = queue.pop_front() {
            for (r, &sd) in s.vertex(u).rays.iter().enumerate() {
                if blocked.contains(&sd) {
                    continue;
                }
                let (w, _) = s.step(u, r);
                if !outside[w] {
                    outside[w] = true;
                    queue.push_back(w);
                }
            }
        }
        let (e, k) = support[0];
        let side = s.side(s.adjacency()[e].side);
        let orient = if !outside[side.tail] {
            self.eps_tail[e] * k
        } else if !outside[side.head] {
            -self.eps_tail[e] * k
        } else {
            return Err(Error::NotACycle);
        };
        let encloses_hole = (0..nv).any(|v| s.is_inner(v) && !outside[v]);
        let small = self.interior.iter().filter(|&&v| !outside[v]).count() as i64;
        let on_circuit: BTreeSet<usize> = support
            .iter()
            .flat_map(|&(e, _)| [s.adjacency()[e].black, s.adjacency()[e].white])
            .collect();
        let enclosed = (0..s.num_squares())
            .filter(|&sq| !on_circuit.contains(&sq) && !outside[s.vertex_at(sq, 0)])
            .count();
        let k_len = support.len() / 2;
        let sign = if (enclosed + k_len + 1).is_multiple_of(2) { 1 } else { -1 };
        Ok(Invariants {
            flux: if encloses_hole { orient } else { 0 },
            volume: orient * small,
            sign,
        })
    }

    /// Invariants of `t - t0` from its decomposition into disjoint circuits.
    pub fn tiling_invariants_geometric(&self, t: &Tiling, t0: &Tiling) -> Result<Invariants> {
        let s = self.surface;
        let diff = self.tiling_cycle(t, t0);
        let mut remaining: BTreeSet<usize> = diff.support().map(|(e, _)| e).collect();
        let mut total = Invariants::ZERO;
        while let Some(&start) = remaining.iter().next() {
            let mut circuit = OneCycle::zero(diff.0.len());
            let mut e = start;
            let mut sq = s.adjacency()[start].white;
            loop {
                remaining.remove(&e);
                circuit.0[e] = diff.0[e];
                let next = remaining.iter().copied().find(|&f| {
                    let a = &s.adjacency()[f];
                    a.black == sq || a.white == sq
                });
                let Some(f) = next else { break };
                let a = &s.adjacency()[f];
                sq = if a.black == sq { a.white } else { a.black };
                e = f;
            }
            total = total.combine(self.circuit_values_geometric(&circuit)?);
        }
        Ok(total)
    }
}

/// Sign of the permutation `beta_t o beta_t0^-1` on white squares.
pub fn permutation_sign(surface: &QuadSurface, t: &Tiling, t0: &Tiling) -> i8 {
    let n = surface.num_squares();
    let mut white_of_black = vec![usize::MAX; n];
    for &e in &t.edges {
        let a = &surface.adjacency()[e];
        white_of_black[a.black] = a.white;
    }
    let mut perm = vec![usize::MAX; n];
    for &e in &t0.edges {
        let a = &surface.adjacency()[e];
        perm[a.white] = white_of_black[a.black];
    }
    let mut seen = vec![false; n];
    let mut parity = 0usize;
    for start in 0..n {
        if perm[start] == usize::MAX || seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        parity += len - 1;
    }
    if parity.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
