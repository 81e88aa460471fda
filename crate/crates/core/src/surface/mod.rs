//! Quadriculated surfaces as oriented combinatorial maps.
//!
//! A surface is a list of squares, each with four sides numbered
//! counterclockwise. Side `s` of a square runs from corner `s` to corner
//! `s + 1` with the square on its left. Gluing side `s` of square `a` to side
//! `s'` of square `b` identifies corner `s` of `a` with corner `s' + 1` of `b`
//! and corner `s + 1` of `a` with corner `s'` of `b`.

mod segment;
mod zigzag;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use segment::{Attachment, TrackSegment};
pub use zigzag::{Wall, ZigZag};

/// `(square, side)` or `(square, corner)`.
pub type SideRef = (usize, u8);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn opposite(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }

    /// Grid convention: black iff `x + y` is even.
    pub fn of_cell(x: i64, y: i64) -> Color {
        if (x + y).rem_euclid(2) == 0 {
            Color::Black
        } else {
            Color::White
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Topology {
    Disk,
    /// Indices into the boundary component list.
    Annulus { outer: usize, inner: usize },
}

/// A corner orbit.
#[derive(Clone, Debug)]
pub struct Vertex {
    /// `(square, corner)` pairs in counterclockwise order. Boundary fans start
    /// at the square whose outgoing side is a boundary side.
    pub fan: Vec<SideRef>,
    /// Side ids of the rays leaving the vertex, counterclockwise. Ray `i` is
    /// side `fan[i].1` of square `fan[i].0`; boundary vertices have one extra
    /// ray closing the fan.
    pub rays: Vec<usize>,
    /// Boundary component, if on the boundary.
    pub boundary: Option<usize>,
}

impl Vertex {
    /// Number of incident squares.
    pub fn degree(&self) -> usize {
        self.fan.len()
    }

    pub fn is_boundary(&self) -> bool {
        self.boundary.is_some()
    }
}

/// An undirected side. Oriented as side `left.1` of square `left.0`.
#[derive(Clone, Debug)]
pub struct Side {
    pub tail: usize,
    pub head: usize,
    pub left: SideRef,
    pub right: Option<SideRef>,
    pub tail_ray: usize,
    pub head_ray: usize,
}

impl Side {
    pub fn is_boundary(&self) -> bool {
        self.right.is_none()
    }
}

/// Edge of the adjacency graph, oriented from black to white.
#[derive(Clone, Debug)]
pub struct AdjEdge {
    pub black: usize,
    pub white: usize,
    pub side: usize,
    pub black_side: u8,
    pub white_side: u8,
}

/// A cut: a vertex path from the outer to the inner boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    pub vertices: Vec<usize>,
    pub sides: Vec<usize>,
}

impl Cut {
    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct QuadSurface {
    glue: Vec<[Option<SideRef>; 4]>,
    colors: Vec<Color>,
    coords: Option<Vec<(i64, i64)>>,
    corner_vertex: Vec<[usize; 4]>,
    fan_pos: Vec<[usize; 4]>,
    side_of: Vec<[usize; 4]>,
    vertices: Vec<Vertex>,
    sides: Vec<Side>,
    adjacency: Vec<AdjEdge>,
    adj_of_side: Vec<Option<usize>>,
    boundary: Vec<Vec<usize>>,
    topology: Topology,
}

const GRID_STEPS: [(i64, i64); 4] = [(0, -1), (1, 0), (0, 1), (-1, 0)];
const CORNER_OFFSETS: [(i64, i64); 4] = [(0, 0), (1, 0), (1, 1), (0, 1)];

fn rot_cw(glue: &[[Option<SideRef>; 4]], (sq, c): SideRef) -> Option<SideRef> {
    glue[sq][c as usize].map(|(t, s)| (t, (s + 1) % 4))
}

fn rot_ccw(glue: &[[Option<SideRef>; 4]], (sq, c): SideRef) -> Option<SideRef> {
    glue[sq][((c + 3) % 4) as usize]
}

impl QuadSurface {
    /// Grid subregion; colors by parity of `x + y`.
    pub fn from_grid(cells: &[(i64, i64)]) -> Result<Self> {
        let mut cells: Vec<(i64, i64)> = cells.to_vec();
        cells.sort_by_key(|&(x, y)| (y, x));
        cells.dedup();
        if cells.is_empty() {
            return Err(Error::EmptyRegion);
        }
        let index: BTreeMap<(i64, i64), usize> =
            cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let glue: Vec<[Option<SideRef>; 4]> = cells
            .iter()
            .map(|&(x, y)| {
                let mut g = [None; 4];
                for (s, (dx, dy)) in GRID_STEPS.iter().enumerate() {
                    if let Some(&j) = index.get(&(x + dx, y + dy)) {
                        g[s] = Some((j, ((s + 2) % 4) as u8));
                    }
                }
                g
            })
            .collect();
        let colors = cells.iter().map(|&(x, y)| Color::of_cell(x, y)).collect();
        // the bottom side of the lowest cell always faces the unbounded region
        let mut surface = Self::from_gluing(glue, colors, Some((0, 0)))?;
        let mut points: BTreeMap<(i64, i64), BTreeSet<usize>> = BTreeMap::new();
        for (i, &(x, y)) in cells.iter().enumerate() {
            for (c, (dx, dy)) in CORNER_OFFSETS.iter().enumerate() {
                points.entry((x + dx, y + dy)).or_default().insert(surface.corner_vertex[i][c]);
            }
        }
        if let Some((p, _)) = points.iter().find(|(_, v)| v.len() > 1) {
            return Err(Error::BadTopology(format!("pinch point at {p:?}")));
        }
        surface.coords = Some(cells);
        Ok(surface)
    }

    /// Grid cells modulo a translation `period`, which must have even `x + y`.
    /// The inner boundary is the one to the left of the period direction.
    pub fn from_periodic_grid(cells: &[(i64, i64)], period: (i64, i64)) -> Result<Self> {
        let (px, py) = period;
        if (px, py) == (0, 0) {
            return Err(Error::BadTopology("zero period".into()));
        }
        if (px + py).rem_euclid(2) != 0 {
            return Err(Error::NoBicoloring(0, 0));
        }
        let canon = |(x, y): (i64, i64)| -> (i64, i64) {
            let k = if px != 0 { x.div_euclid(px) } else { y.div_euclid(py) };
            (x - k * px, y - k * py)
        };
        let mut reps: Vec<(i64, i64)> = cells.iter().map(|&c| canon(c)).collect();
        reps.sort_by_key(|&(x, y)| (y, x));
        reps.dedup();
        if reps.is_empty() {
            return Err(Error::EmptyRegion);
        }
        let index: BTreeMap<(i64, i64), usize> =
            reps.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let glue: Vec<[Option<SideRef>; 4]> = reps
            .iter()
            .map(|&(x, y)| {
                let mut g = [None; 4];
                for (s, (dx, dy)) in GRID_STEPS.iter().enumerate() {
                    if let Some(&j) = index.get(&canon((x + dx, y + dy))) {
                        g[s] = Some((j, ((s + 2) % 4) as u8));
                    }
                }
                g
            })
            .collect();
        // outer boundary: the unglued side furthest to the right of the period
        let mut hint = None;
        let mut best = i64::MAX;
        for (i, &(x, y)) in reps.iter().enumerate() {
            for s in 0..4 {
                if glue[i][s].is_some() {
                    continue;
                }
                let (mx, my) = match s {
                    0 => (2 * x + 1, 2 * y),
                    1 => (2 * x + 2, 2 * y + 1),
                    2 => (2 * x + 1, 2 * y + 2),
                    _ => (2 * x, 2 * y + 1),
                };
                let proj = -py * mx + px * my;
                if proj < best {
                    best = proj;
                    hint = Some((i, s as u8));
                }
            }
        }
        let colors = reps.iter().map(|&(x, y)| Color::of_cell(x, y)).collect();
        let mut surface = Self::from_gluing(glue, colors, hint)?;
        surface.coords = Some(reps);
        Ok(surface)
    }

    /// Validate an explicit gluing. `outer_hint` names an unglued side on the
    /// outer boundary; without it the outer boundary is the component of
    /// larger curvature, ties going to the component holding the lowest vertex.
    pub fn from_gluing(
        glue: Vec<[Option<SideRef>; 4]>,
        colors: Vec<Color>,
        outer_hint: Option<SideRef>,
    ) -> Result<Self> {
        let n = glue.len();
        if n == 0 {
            return Err(Error::EmptyRegion);
        }
        if colors.len() != n {
            return Err(Error::BadTopology(format!("{} colors for {} squares", colors.len(), n)));
        }
        for (sq, g) in glue.iter().enumerate() {
            for (s, target) in g.iter().enumerate() {
                let Some((t, ts)) = *target else { continue };
                let ok = t < n
                    && ts < 4
                    && t != sq
                    && glue[t][ts as usize] == Some((sq, s as u8));
                if !ok {
                    return Err(Error::NonInvolution { square: sq, side: s as u8 });
                }
                if colors[sq] == colors[t] {
                    return Err(Error::NoBicoloring(sq.min(t), sq.max(t)));
                }
            }
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(sq) = queue.pop_front() {
            for (t, _) in glue[sq].iter().flatten() {
                if !seen[*t] {
                    seen[*t] = true;
                    queue.push_back(*t);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::DisconnectedRegion);
        }

        let mut corner_vertex = vec![[usize::MAX; 4]; n];
        let mut fan_pos = vec![[0usize; 4]; n];
        let mut vertices: Vec<Vertex> = Vec::new();
        for sq in 0..n {
            for c in 0..4u8 {
                if corner_vertex[sq][c as usize] != usize::MAX {
                    continue;
                }
                let origin = (sq, c);
                let mut start = origin;
                let mut closed = false;
                loop {
                    match rot_cw(&glue, start) {
                        None => break,
                        Some(next) if next == origin => {
                            closed = true;
                            break;
                        }
                        Some(next) => start = next,
                    }
                }
                if closed {
                    start = origin;
                }
                let mut fan = vec![start];
                let mut cur = start;
                loop {
                    match rot_ccw(&glue, cur) {
                        None => break,
                        Some(next) if next == start => break,
                        Some(next) => {
                            fan.push(next);
                            cur = next;
                        }
                    }
                    if fan.len() > 4 * n {
                        return Err(Error::BadTopology("runaway corner orbit".into()));
                    }
                }
                if closed && fan.len() != 4 {
                    return Err(Error::InteriorVertexDegree(fan.len()));
                }
                let id = vertices.len();
                for (i, &(fsq, fc)) in fan.iter().enumerate() {
                    corner_vertex[fsq][fc as usize] = id;
                    fan_pos[fsq][fc as usize] = i;
                }
                vertices.push(Vertex {
                    fan,
                    rays: Vec::new(),
                    boundary: if closed { None } else { Some(usize::MAX) },
                });
            }
        }

        let mut side_of = vec![[usize::MAX; 4]; n];
        let mut sides: Vec<Side> = Vec::new();
        for sq in 0..n {
            for s in 0..4u8 {
                if side_of[sq][s as usize] != usize::MAX {
                    continue;
                }
                let id = sides.len();
                side_of[sq][s as usize] = id;
                let right = glue[sq][s as usize];
                if let Some((t, ts)) = right {
                    side_of[t][ts as usize] = id;
                }
                let tail = corner_vertex[sq][s as usize];
                let head_corner = ((s + 1) % 4) as usize;
                let head = corner_vertex[sq][head_corner];
                let tail_ray = fan_pos[sq][s as usize];
                let mut head_ray = fan_pos[sq][head_corner] + 1;
                if vertices[head].boundary.is_none() {
                    head_ray %= 4;
                }
                sides.push(Side { tail, head, left: (sq, s), right, tail_ray, head_ray });
            }
        }
        for v in vertices.iter_mut() {
            let mut rays: Vec<usize> =
                v.fan.iter().map(|&(sq, c)| side_of[sq][c as usize]).collect();
            if v.boundary.is_some() {
                let &(sq, c) = v.fan.last().unwrap();
                rays.push(side_of[sq][((c + 3) % 4) as usize]);
            }
            v.rays = rays;
        }

        let mut adjacency = Vec::new();
        let mut adj_of_side = vec![None; sides.len()];
        for (id, side) in sides.iter().enumerate() {
            if let Some(r) = side.right {
                let (b, w) = if colors[side.left.0] == Color::Black {
                    (side.left, r)
                } else {
                    (r, side.left)
                };
                adj_of_side[id] = Some(adjacency.len());
                adjacency.push(AdjEdge {
                    black: b.0,
                    white: w.0,
                    side: id,
                    black_side: b.1,
                    white_side: w.1,
                });
            }
        }

        // boundary components, each a cycle of boundary sides in counterclockwise order
        let mut component_of_side = vec![usize::MAX; sides.len()];
        let mut boundary: Vec<Vec<usize>> = Vec::new();
        for start in 0..sides.len() {
            if !sides[start].is_boundary() || component_of_side[start] != usize::MAX {
                continue;
            }
            let comp = boundary.len();
            let mut cycle = Vec::new();
            let mut cur = start;
            loop {
                component_of_side[cur] = comp;
                cycle.push(cur);
                let head = sides[cur].head;
                let next = vertices[head].rays[0];
                if next == start {
                    break;
                }
                if component_of_side[next] != usize::MAX {
                    return Err(Error::BadTopology("boundary walk does not close".into()));
                }
                cur = next;
            }
            for &sd in &cycle {
                vertices[sides[sd].tail].boundary = Some(comp);
            }
            boundary.push(cycle);
        }
        if vertices.iter().any(|v| v.boundary == Some(usize::MAX)) {
            return Err(Error::BadTopology("boundary vertex off every boundary walk".into()));
        }

        let chi = n as i64 - sides.len() as i64 + vertices.len() as i64;
        let topology = match (chi, boundary.len()) {
            (1, 1) => Topology::Disk,
            (0, 2) => {
                let curv: Vec<i64> = boundary
                    .iter()
                    .map(|cyc| cyc.iter().map(|&sd| 2 - vertices[sides[sd].tail].degree() as i64).sum())
                    .collect();
                let hinted = outer_hint
                    .filter(|&(sq, s)| sq < n && s < 4 && glue[sq][s as usize].is_none())
                    .map(|(sq, s)| component_of_side[side_of[sq][s as usize]]);
                let outer = match hinted {
                    Some(c) => c,
                    None if curv[0] != curv[1] => {
                        if curv[0] > curv[1] {
                            0
                        } else {
                            1
                        }
                    }
                    None => vertices
                        .iter()
                        .find_map(|v| v.boundary)
                        .expect("annulus has boundary vertices"),
                };
                Topology::Annulus { outer, inner: 1 - outer }
            }
            (chi, b) => {
                return Err(Error::BadTopology(format!(
                    "Euler characteristic {chi} with {b} boundary components"
                )))
            }
        };

        Ok(QuadSurface {
            glue,
            colors,
            coords: None,
            corner_vertex,
            fan_pos,
            side_of,
            vertices,
            sides,
            adjacency,
            adj_of_side,
            boundary,
            topology,
        })
    }

    pub fn num_squares(&self) -> usize {
        self.glue.len()
    }

    pub fn color(&self, sq: usize) -> Color {
        self.colors[sq]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn glue_table(&self) -> &[[Option<SideRef>; 4]] {
        &self.glue
    }

    pub fn glued(&self, sq: usize, side: u8) -> Option<SideRef> {
        self.glue[sq][side as usize]
    }

    /// Lattice coordinates when built from a grid.
    pub fn coords(&self) -> Option<&[(i64, i64)]> {
        self.coords.as_deref()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &Vertex {
        &self.vertices[v]
    }

    pub fn vertex_at(&self, sq: usize, corner: u8) -> usize {
        self.corner_vertex[sq][corner as usize]
    }

    /// Position of `(sq, corner)` in its vertex fan.
    pub fn fan_position(&self, sq: usize, corner: u8) -> usize {
        self.fan_pos[sq][corner as usize]
    }

    pub fn sides(&self) -> &[Side] {
        &self.sides
    }

    pub fn side(&self, id: usize) -> &Side {
        &self.sides[id]
    }

    pub fn side_id(&self, sq: usize, side: u8) -> usize {
        self.side_of[sq][side as usize]
    }

    pub fn adjacency(&self) -> &[AdjEdge] {
        &self.adjacency
    }

    pub fn adj_of_side(&self, side: usize) -> Option<usize> {
        self.adj_of_side[side]
    }

    /// Boundary components as cycles of side ids, surface on the left.
    pub fn boundary_components(&self) -> &[Vec<usize>] {
        &self.boundary
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn is_disk(&self) -> bool {
        self.topology == Topology::Disk
    }

    pub fn is_annulus(&self) -> bool {
        matches!(self.topology, Topology::Annulus { .. })
    }

    pub fn outer_component(&self) -> Option<usize> {
        match self.topology {
            Topology::Annulus { outer, .. } => Some(outer),
            Topology::Disk => None,
        }
    }

    pub fn inner_component(&self) -> Option<usize> {
        match self.topology {
            Topology::Annulus { inner, .. } => Some(inner),
            Topology::Disk => None,
        }
    }

    pub fn is_outer(&self, v: usize) -> bool {
        let b = self.vertices[v].boundary;
        b.is_some() && b == self.outer_component()
    }

    pub fn is_inner(&self, v: usize) -> bool {
        let b = self.vertices[v].boundary;
        b.is_some() && b == self.inner_component()
    }

    pub fn interior_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertices.len()).filter(|&v| !self.vertices[v].is_boundary())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_squares() as i64 - self.sides.len() as i64 + self.vertices.len() as i64
    }

    /// `(black, white)` square counts.
    pub fn color_counts(&self) -> (usize, usize) {
        let b = self.colors.iter().filter(|&&c| c == Color::Black).count();
        (b, self.colors.len() - b)
    }

    pub fn is_balanced(&self) -> bool {
        let (b, w) = self.color_counts();
        b == w
    }

    /// Sum of `2 - n_v` over the tails of the given boundary component.
    pub fn component_curvature(&self, comp: usize) -> i64 {
        self.boundary[comp]
            .iter()
            .map(|&sd| 2 - self.vertices[self.sides[sd].tail].degree() as i64)
            .sum()
    }

    /// Total boundary curvature, surface to the left.
    pub fn total_boundary_curvature(&self) -> i64 {
        (0..self.boundary.len()).map(|c| self.component_curvature(c)).sum()
    }

    /// Follow ray `ray` out of `v`; returns the far vertex and the ray index there.
    pub fn step(&self, v: usize, ray: usize) -> (usize, usize) {
        let sd = &self.sides[self.vertices[v].rays[ray]];
        if sd.tail == v && sd.tail_ray == ray {
            (sd.head, sd.head_ray)
        } else {
            (sd.tail, sd.tail_ray)
        }
    }

    /// Curvature of a path through `v` arriving along ray `in_ray` (pointing
    /// back where the path came from) and leaving along `out_ray`.
    /// Left turns are positive.
    pub fn turn_curvature(&self, v: usize, in_ray: usize, out_ray: usize) -> i64 {
        let vx = &self.vertices[v];
        if vx.is_boundary() {
            let (i, o) = (in_ray as i64, out_ray as i64);
            if i >= o {
                2 - (i - o)
            } else {
                (o - i) - 2
            }
        } else {
            2 - ((in_ray as i64 - out_ray as i64).rem_euclid(4))
        }
    }

    /// Curvatures at the interior vertices of a path given by its sides,
    /// starting at vertex `start`.
    pub fn path_curvatures(&self, start: usize, sides: &[usize]) -> Vec<i64> {
        let mut out = Vec::new();
        let mut v = start;
        let mut in_ray = None;
        for &sd in sides {
            let out_ray = self.ray_of_side(v, sd).expect("path side leaves current vertex");
            if let Some(ir) = in_ray {
                out.push(self.turn_curvature(v, ir, out_ray));
            }
            let (w, wr) = self.step(v, out_ray);
            v = w;
            in_ray = Some(wr);
        }
        out
    }

    /// Ray index of side `sd` at vertex `v`.
    pub fn ray_of_side(&self, v: usize, sd: usize) -> Option<usize> {
        let side = &self.sides[sd];
        if side.tail == v {
            Some(side.tail_ray)
        } else if side.head == v {
            Some(side.head_ray)
        } else {
            None
        }
    }

    fn require_annulus(&self) -> Result<()> {
        if self.is_annulus() {
            Ok(())
        } else {
            Err(Error::NotAnAnnulus)
        }
    }

    /// Check that a cut is a simple outer-to-inner path through interior vertices.
    pub fn validate_cut(&self, cut: &Cut) -> Result<()> {
        self.require_annulus()?;
        let bad = |m: &str| Err(Error::BadTopology(format!("invalid cut: {m}")));
        if cut.sides.is_empty() || cut.vertices.len() != cut.sides.len() + 1 {
            return bad("length");
        }
        if !self.is_outer(cut.vertices[0]) || !self.is_inner(*cut.vertices.last().unwrap()) {
            return bad("endpoints");
        }
        let k = cut.vertices.len();
        if cut.vertices[1..k - 1].iter().any(|&v| self.vertices[v].is_boundary()) {
            return bad("touches boundary");
        }
        let distinct: BTreeSet<usize> = cut.vertices.iter().copied().collect();
        if distinct.len() != k {
            return bad("not simple");
        }
        for (i, &sd) in cut.sides.iter().enumerate() {
            let s = &self.sides[sd];
            let (a, b) = (cut.vertices[i], cut.vertices[i + 1]);
            if !((s.tail == a && s.head == b) || (s.tail == b && s.head == a)) || s.is_boundary() {
                return bad("side does not join consecutive vertices");
            }
        }
        Ok(())
    }

    /// Shortest cut; ties broken by the lexicographically least vertex sequence.
    pub fn find_cut(&self) -> Result<Cut> {
        self.shortest_cut_where(|_| true, usize::MAX)
            .ok_or_else(|| Error::BadTopology("annulus without a cut".into()))
    }

    /// Shortest cut using only sides accepted by `allowed`, of length at most `cap`.
    pub fn shortest_cut_where(&self, allowed: impl Fn(usize) -> bool, cap: usize) -> Option<Cut> {
        if !self.is_annulus() {
            return None;
        }
        let nv = self.vertices.len();
        let mut dist = vec![usize::MAX; nv];
        let mut queue = VecDeque::new();
        for v in 0..nv {
            if self.is_inner(v) {
                dist[v] = 0;
                queue.push_back(v);
            }
        }
        while let Some(u) = queue.pop_front() {
            if self.is_outer(u) {
                continue;
            }
            for (r, &sd) in self.vertices[u].rays.iter().enumerate() {
                if self.sides[sd].is_boundary() || !allowed(sd) {
                    continue;
                }
                let (w, _) = self.step(u, r);
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        let v0 = (0..nv)
            .filter(|&v| self.is_outer(v) && dist[v] != usize::MAX && dist[v] <= cap)
            .min_by_key(|&v| (dist[v], v))?;
        let mut vertices = vec![v0];
        let mut sides = Vec::new();
        let mut u = v0;
        while dist[u] > 0 {
            let mut best: Option<(usize, usize)> = None;
            for (r, &sd) in self.vertices[u].rays.iter().enumerate() {
                if self.sides[sd].is_boundary() || !allowed(sd) {
                    continue;
                }
                let (w, _) = self.step(u, r);
                if dist[w] == usize::MAX || dist[w] + 1 != dist[u] || (dist[w] > 0 && self.vertices[w].is_boundary()) {
                    continue;
                }
                if best.is_none_or(|b| (w, sd) < b) {
                    best = Some((w, sd));
                }
            }
            let (w, sd) = best.expect("BFS predecessor exists");
            vertices.push(w);
            sides.push(sd);
            u = w;
        }
        Some(Cut { vertices, sides })
    }

    /// Rays at `v` continuing a zig-zag arriving along `in_ray` with a left
    /// (`left = true`) or right turn.
    pub fn zigzag_turns(&self, v: usize, in_ray: usize, left: bool) -> Vec<usize> {
        let want = if left { 1 } else { -1 };
        let vx = &self.vertices[v];
        if vx.is_boundary() {
            (0..vx.rays.len())
                .filter(|&o| o != in_ray && self.turn_curvature(v, in_ray, o) == want)
                .collect()
        } else if left {
            vec![(in_ray + 3) % 4]
        } else {
            vec![(in_ray + 1) % 4]
        }
    }

    /// A cut lying on a simple zig-zag; shortest first, then lexicographic.
    pub fn find_zigzag_cut(&self) -> Result<Cut> {
        self.require_annulus()?;
        let mut best: Option<Cut> = None;
        for v0 in 0..self.vertices.len() {
            if !self.is_outer(v0) {
                continue;
            }
            for r0 in 0..self.vertices[v0].rays.len() {
                let sd0 = self.vertices[v0].rays[r0];
                if self.sides[sd0].is_boundary() {
                    continue;
                }
                for first_left in [true, false] {
                    let Some(cut) = self.trace_zigzag_cut(v0, r0, first_left) else {
                        continue;
                    };
                    let better = match &best {
                        None => true,
                        Some(b) => (cut.len(), &cut.vertices, &cut.sides) < (b.len(), &b.vertices, &b.sides),
                    };
                    if better {
                        best = Some(cut);
                    }
                }
            }
        }
        best.ok_or(Error::NoZigZagCut)
    }

    fn trace_zigzag_cut(&self, v0: usize, r0: usize, first_left: bool) -> Option<Cut> {
        let mut vertices = vec![v0];
        let mut sides = vec![self.vertices[v0].rays[r0]];
        let (mut v, mut in_ray) = self.step(v0, r0);
        let mut left = first_left;
        let mut seen: BTreeSet<usize> = BTreeSet::from([v0]);
        loop {
            if !seen.insert(v) {
                return None;
            }
            vertices.push(v);
            if self.vertices[v].is_boundary() {
                return self.is_inner(v).then_some(Cut { vertices, sides });
            }
            let out = self.zigzag_turns(v, in_ray, left)[0];
            sides.push(self.vertices[v].rays[out]);
            let (w, wr) = self.step(v, out);
            v = w;
            in_ray = wr;
            left = !left;
        }
    }

    /// Squares reachable from `seeds` without crossing the given sides.
    pub fn flood_squares(&self, seeds: &[usize], blocked: &BTreeSet<usize>) -> Vec<bool> {
        let mut seen = vec![false; self.num_squares()];
        let mut queue = VecDeque::new();
        for &s in seeds {
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(sq) = queue.pop_front() {
            for s in 0..4u8 {
                let Some((t, _)) = self.glue[sq][s as usize] else { continue };
                if blocked.contains(&self.side_of[sq][s as usize]) || seen[t] {
                    continue;
                }
                seen[t] = true;
                queue.push_back(t);
            }
        }
        seen
    }

    /// Cut the annulus open along `cut`.
    pub fn cut_open(&self, cut: &Cut) -> Result<TrackSegment> {
        self.validate_cut(cut)?;
        TrackSegment::from_cut(self, cut)
    }

    /// ASCII picture for grid surfaces, `#` for black and `o` for white squares.
    pub fn to_ascii(&self) -> Option<String> {
        let coords = self.coords.as_ref()?;
        let (x0, x1) = (coords.iter().map(|c| c.0).min()?, coords.iter().map(|c| c.0).max()?);
        let (y0, y1) = (coords.iter().map(|c| c.1).min()?, coords.iter().map(|c| c.1).max()?);
        let cells: BTreeMap<(i64, i64), usize> =
            coords.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut out = String::new();
        for y in (y0..=y1).rev() {
            for x in x0..=x1 {
                out.push(match cells.get(&(x, y)) {
                    Some(&i) if self.colors[i] == Color::Black => '#',
                    Some(_) => 'o',
                    None => '.',
                });
            }
            out.push('\n');
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn block(w: i64, h: i64) -> Vec<(i64, i64)> {
        (0..h).flat_map(|y| (0..w).map(move |x| (x, y))).collect()
    }

    pub(crate) fn ring(n: i64, hole: i64) -> Vec<(i64, i64)> {
        let lo = (n - hole) / 2;
        block(n, n)
            .into_iter()
            .filter(|&(x, y)| !(x >= lo && x < lo + hole && y >= lo && y < lo + hole))
            .collect()
    }

    #[test]
    fn domino_is_disk() {
        let s = QuadSurface::from_grid(&[(0, 0), (1, 0)]).unwrap();
        assert!(s.is_disk());
        assert_eq!(s.num_squares(), 2);
        assert_eq!(s.interior_vertices().count(), 0);
        assert_eq!(s.total_boundary_curvature(), 4);
    }

    #[test]
    fn ring_is_balanced_annulus() {
        let s = QuadSurface::from_grid(&ring(3, 1)).unwrap();
        assert!(s.is_annulus());
        assert_eq!(s.color_counts(), (4, 4));
        let outer = s.outer_component().unwrap();
        assert_eq!(s.component_curvature(outer), 4);
        assert_eq!(s.component_curvature(1 - outer), -4);
        assert_eq!(s.total_boundary_curvature(), 0);
    }

    #[test]
    fn corner_and_center_removed() {
        let pinched: Vec<_> = ring(3, 1).into_iter().filter(|&c| c != (0, 0)).collect();
        assert!(matches!(QuadSurface::from_grid(&pinched), Err(Error::BadTopology(_))));
        let cells: Vec<_> = ring(5, 1).into_iter().filter(|&c| c != (0, 0)).collect();
        let s = QuadSurface::from_grid(&cells).unwrap();
        assert!(s.is_annulus());
        assert!(!s.is_balanced());
    }

    #[test]
    fn rejects_two_holes_and_pinches() {
        let two_holes: Vec<_> =
            block(5, 3).into_iter().filter(|&c| c != (1, 1) && c != (3, 1)).collect();
        assert!(matches!(QuadSurface::from_grid(&two_holes), Err(Error::BadTopology(_))));
        let pinch = [(0, 0), (1, 1)];
        assert_eq!(QuadSurface::from_grid(&pinch).unwrap_err(), Error::DisconnectedRegion);
        let pinched = [(0, 0), (1, 0), (0, 1), (1, 1), (0, 2), (0, 3), (1, 3), (2, 3), (2, 2)];
        assert!(matches!(QuadSurface::from_grid(&pinched), Err(Error::BadTopology(_))));
    }

    #[test]
    fn rectangle_curvature() {
        let s = QuadSurface::from_grid(&block(2, 3)).unwrap();
        assert_eq!(s.total_boundary_curvature(), 4);
        assert_eq!(s.euler_characteristic(), 1);
    }

    #[test]
    fn cuts_of_rings() {
        let s = QuadSurface::from_grid(&ring(3, 1)).unwrap();
        let c = s.find_cut().unwrap();
        assert_eq!(c.len(), 1);
        s.validate_cut(&c).unwrap();
        let s = QuadSurface::from_grid(&ring(5, 1)).unwrap();
        let c = s.find_cut().unwrap();
        assert_eq!(c.len(), 2);
        let z = s.find_zigzag_cut().unwrap();
        s.validate_cut(&z).unwrap();
        let curv = s.path_curvatures(z.vertices[0], &z.sides);
        assert!(curv.windows(2).all(|w| w[0] == -w[1]) && curv.iter().all(|c| c.abs() == 1));
    }

    #[test]
    fn bicoloring_violation() {
        let glue = vec![
            [None, Some((1, 3)), None, None],
            [None, None, None, Some((0, 1))],
        ];
        let err = QuadSurface::from_gluing(glue, vec![Color::Black, Color::Black], None);
        assert_eq!(err.unwrap_err(), Error::NoBicoloring(0, 1));
    }

    #[test]
    fn non_involution() {
        let glue = vec![[None, Some((1, 3)), None, None], [None, None, None, None]];
        let err = QuadSurface::from_gluing(glue, vec![Color::Black, Color::White], None);
        assert_eq!(err.unwrap_err(), Error::NonInvolution { square: 0, side: 1 });
    }

    #[test]
    fn periodic_cylinder() {
        let cells: Vec<_> = block(2, 4);
        let s = QuadSurface::from_periodic_grid(&cells, (0, 4)).unwrap();
        assert!(s.is_annulus());
        let outer = s.outer_component().unwrap();
        // the right-hand side x = 2 is outer
        let sd = s.boundary_components()[outer][0];
        let (sq, _) = s.side(sd).left;
        assert_eq!(s.coords().unwrap()[sq].0, 1);
        assert_eq!(s.total_boundary_curvature(), 0);
    }
}
