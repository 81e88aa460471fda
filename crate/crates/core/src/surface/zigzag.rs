use std::collections::BTreeSet;

use super::{Color, QuadSurface};

/// A vertex path turning alternately left and right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigZag {
    pub vertices: Vec<usize>,
    pub sides: Vec<usize>,
    pub closed: bool,
    pub curvatures: Vec<i64>,
}

/// A closed zig-zag whose hole-side region is balanced.
#[derive(Clone, Debug)]
pub struct Wall {
    pub zigzag: ZigZag,
    pub black: usize,
    pub white: usize,
}

struct Search<'a> {
    s: &'a QuadSurface,
    v0: usize,
    r0: usize,
    vertices: Vec<usize>,
    sides: Vec<usize>,
    on_path: Vec<bool>,
    found: Vec<(Vec<usize>, Vec<usize>)>,
}

impl Search<'_> {
    fn extend(&mut self, v: usize, in_ray: usize, left: bool) {
        if v == self.v0 {
            if self.sides.len().is_multiple_of(2) && self.s.zigzag_turns(v, in_ray, left).contains(&self.r0) {
                self.found.push((self.vertices.clone(), self.sides.clone()));
            }
            return;
        }
        if v < self.v0 || self.on_path[v] {
            return;
        }
        self.on_path[v] = true;
        self.vertices.push(v);
        for out in self.s.zigzag_turns(v, in_ray, left) {
            let sd = self.s.vertex(v).rays[out];
            let (w, wr) = self.s.step(v, out);
            self.sides.push(sd);
            self.extend(w, wr, !left);
            self.sides.pop();
        }
        self.vertices.pop();
        self.on_path[v] = false;
    }
}

impl QuadSurface {
    /// All simple closed zig-zags, each listed once.
    pub fn closed_zigzags(&self) -> Vec<ZigZag> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut out = Vec::new();
        for v0 in 0..self.vertices.len() {
            for r0 in 0..self.vertices[v0].rays.len() {
                for first_left in [true, false] {
                    let mut search = Search {
                        s: self,
                        v0,
                        r0,
                        vertices: vec![v0],
                        sides: vec![self.vertices[v0].rays[r0]],
                        on_path: vec![false; self.vertices.len()],
                        found: Vec::new(),
                    };
                    search.on_path[v0] = true;
                    let (w, wr) = self.step(v0, r0);
                    search.extend(w, wr, first_left);
                    for (vertices, sides) in search.found {
                        let mut key = sides.clone();
                        key.sort_unstable();
                        if seen.insert(key) {
                            let mut closing = sides.clone();
                            closing.push(sides[0]);
                            let curvatures = self.path_curvatures(vertices[0], &closing);
                            out.push(ZigZag { vertices, sides, closed: true, curvatures });
                        }
                    }
                }
            }
        }
        out
    }

    /// Squares between a closed zig-zag and the inner boundary, or `None`
    /// when the zig-zag does not separate the two boundary components.
    pub fn hole_side(&self, zz: &ZigZag) -> Option<Vec<bool>> {
        let inner = self.inner_component()?;
        let outer = self.outer_component()?;
        let blocked: BTreeSet<usize> = zz.sides.iter().copied().collect();
        let seeds: Vec<usize> = self.boundary[inner]
            .iter()
            .filter(|sd| !blocked.contains(sd))
            .map(|&sd| self.sides[sd].left.0)
            .collect();
        let region = self.flood_squares(&seeds, &blocked);
        let leaks = self.boundary[outer]
            .iter()
            .any(|&sd| !blocked.contains(&sd) && region[self.sides[sd].left.0]);
        (!leaks).then_some(region)
    }

    /// Closed zig-zags with a balanced hole-side region.
    pub fn find_walls(&self) -> Vec<Wall> {
        if !self.is_annulus() {
            return Vec::new();
        }
        self.closed_zigzags()
            .into_iter()
            .filter_map(|zz| {
                let region = self.hole_side(&zz)?;
                let black = (0..self.num_squares())
                    .filter(|&i| region[i] && self.colors[i] == Color::Black)
                    .count();
                let white = region.iter().filter(|&&r| r).count() - black;
                (black == white).then_some(Wall { zigzag: zz, black, white })
            })
            .collect()
    }

    pub fn is_wall_free(&self) -> bool {
        self.find_walls().is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::tests::ring;

    fn band(n: i64, w: i64) -> QuadSurface {
        let cells: Vec<(i64, i64)> =
            (0..n).flat_map(|i| (0..w).map(move |j| (i + j, i))).collect();
        QuadSurface::from_periodic_grid(&cells, (n, n)).unwrap()
    }

    #[test]
    fn grid_rings_are_wall_free() {
        for (n, h) in [(3, 1), (4, 2), (5, 1), (6, 2)] {
            let a = QuadSurface::from_grid(&ring(n, h)).unwrap();
            assert!(a.closed_zigzags().is_empty());
            assert!(a.is_wall_free());
        }
    }

    #[test]
    fn ladder_walls() {
        let a = band(4, 2);
        assert!(a.is_annulus() && a.is_balanced());
        for c in 0..2 {
            assert_eq!(a.component_curvature(c), 0);
        }
        let walls = a.find_walls();
        assert_eq!(walls.len(), 2);
        for w in &walls {
            let c = &w.zigzag.curvatures;
            assert!(c.iter().all(|x| x.abs() == 1));
            assert!(c.windows(2).all(|p| p[0] == -p[1]));
        }
    }

    #[test]
    fn double_ladder_walls() {
        let a = band(4, 4);
        assert_eq!(a.find_walls().len(), 3);
    }
}
