//! Brute-force tiling enumeration used as ground truth.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::homology::Homology;
use crate::laurent::LaurentPoly;
use crate::surface::{Attachment, Color, QuadSurface, SideRef, TrackSegment};
use crate::track::{segment_volume, SegmentTiling};

/// Default square-count cap for exhaustive enumeration.
pub const DEFAULT_CAP: usize = 44;

/// A perfect matching of the adjacency graph, as sorted edge ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tiling {
    pub edges: Vec<usize>,
}

impl Tiling {
    pub fn new(mut edges: Vec<usize>) -> Self {
        edges.sort_unstable();
        Tiling { edges }
    }

    /// Edge covering each square, `usize::MAX` for uncovered squares.
    pub fn edge_of_square(&self, surface: &QuadSurface) -> Vec<usize> {
        let mut out = vec![usize::MAX; surface.num_squares()];
        for &e in &self.edges {
            let a = &surface.adjacency()[e];
            out[a.black] = e;
            out[a.white] = e;
        }
        out
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edges.binary_search(&e).is_ok()
    }
}

/// Visit perfect matchings of the squares marked `active` until `visit` returns false.
/// Branches on the lowest uncovered square, trying its sides in order.
pub fn visit_matchings(surface: &QuadSurface, active: &[bool], mut visit: impl FnMut(&[usize]) -> bool) {
    let n = surface.num_squares();
    let mut covered: Vec<bool> = active.iter().map(|a| !a).collect();
    let mut chosen = Vec::with_capacity(n / 2);
    fn rec(
        s: &QuadSurface,
        from: usize,
        covered: &mut Vec<bool>,
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let Some(sq) = (from..covered.len()).find(|&i| !covered[i]) else {
            return visit(chosen);
        };
        covered[sq] = true;
        for side in 0..4u8 {
            let Some((t, _)) = s.glued(sq, side) else { continue };
            if covered[t] {
                continue;
            }
            let e = s.adj_of_side(s.side_id(sq, side)).expect("glued side has an edge");
            covered[t] = true;
            chosen.push(e);
            let go_on = rec(s, sq + 1, covered, chosen, visit);
            chosen.pop();
            covered[t] = false;
            if !go_on {
                covered[sq] = false;
                return false;
            }
        }
        covered[sq] = false;
        true
    }
    let black = (0..n).filter(|&i| active[i] && surface.color(i) == Color::Black).count();
    let white = (0..n).filter(|&i| active[i]).count() - black;
    if black != white {
        return;
    }
    rec(surface, 0, &mut covered, &mut chosen, &mut visit);
}

/// Visit every perfect matching of the squares marked `active`.
pub fn for_each_matching(surface: &QuadSurface, active: &[bool], mut visit: impl FnMut(&[usize])) {
    visit_matchings(surface, active, |e| {
        visit(e);
        true
    });
}

/// Some tiling of the whole surface, if any.
pub fn find_tiling(surface: &QuadSurface) -> Option<Tiling> {
    let mut out = None;
    visit_matchings(surface, &vec![true; surface.num_squares()], |e| {
        out = Some(Tiling::new(e.to_vec()));
        false
    });
    out
}

/// All tilings of the squares marked `active`.
pub fn enumerate_matchings(surface: &QuadSurface, active: &[bool]) -> Vec<Tiling> {
    let mut out = Vec::new();
    for_each_matching(surface, active, |edges| out.push(Tiling::new(edges.to_vec())));
    out
}

/// All tilings of a surface, in backtracking order.
pub fn enumerate_tilings(surface: &QuadSurface, cap: usize) -> Result<Vec<Tiling>> {
    if surface.num_squares() > cap {
        return Err(Error::CapExceeded(cap));
    }
    Ok(enumerate_matchings(surface, &vec![true; surface.num_squares()]))
}

/// Signed and unsigned generating functions `sum sigma p^phi q^nu` and
/// `sum p^phi q^nu`, relative to the first enumerated tiling.
pub fn generating_function(annulus: &QuadSurface, cap: usize) -> Result<(LaurentPoly, LaurentPoly)> {
    let tilings = enumerate_tilings(annulus, cap)?;
    let hom = Homology::new(annulus)?;
    let mut signed = LaurentPoly::zero();
    let mut unsigned = LaurentPoly::zero();
    let Some(t0) = tilings.first() else {
        return Ok((signed, unsigned));
    };
    for t in &tilings {
        let inv = hom.tiling_invariants(t, t0)?;
        signed.add_term((inv.flux, 4 * inv.volume), (inv.sign as i64).into());
        unsigned.add_term((inv.flux, 4 * inv.volume), 1.into());
    }
    Ok((signed, unsigned))
}

/// `sum q^nu` over segment tilings with indices `(i0, i1)`, found by
/// branching directly over dominoes and half-dominoes on the attachments.
pub fn count_segment_tilings(seg: &TrackSegment, i0: u64, i1: u64, cap: usize) -> Result<LaurentPoly> {
    let d = seg.disk();
    if d.num_squares() > cap {
        return Err(Error::CapExceeded(cap));
    }
    // attachment bit of each side: (which, position)
    let mut half: BTreeMap<SideRef, (Attachment, usize)> = BTreeMap::new();
    for which in [Attachment::A0, Attachment::A1] {
        for (k, &r) in seg.attachment(which).iter().enumerate() {
            half.insert(r, (which, k));
        }
    }
    struct State<'a> {
        d: &'a QuadSurface,
        half: &'a BTreeMap<SideRef, (Attachment, usize)>,
        covered: Vec<bool>,
        dominoes: Vec<usize>,
        masks: [u64; 2],
        found: Vec<(Vec<usize>, [u64; 2])>,
    }
    fn rec(st: &mut State) {
        let Some(sq) = (0..st.covered.len()).find(|&i| !st.covered[i]) else {
            st.found.push((st.dominoes.clone(), st.masks));
            return;
        };
        st.covered[sq] = true;
        for side in 0..4u8 {
            match st.d.glued(sq, side) {
                Some((t, _)) if !st.covered[t] => {
                    st.covered[t] = true;
                    st.dominoes.push(st.d.adj_of_side(st.d.side_id(sq, side)).unwrap());
                    rec(st);
                    st.dominoes.pop();
                    st.covered[t] = false;
                }
                Some(_) => {}
                None => {
                    if let Some(&(which, k)) = st.half.get(&(sq, side)) {
                        let slot = if which == Attachment::A0 { 0 } else { 1 };
                        st.masks[slot] |= 1 << k;
                        rec(st);
                        st.masks[slot] &= !(1 << k);
                    }
                }
            }
        }
        st.covered[sq] = false;
    }
    let mut st = State {
        d,
        half: &half,
        covered: vec![false; d.num_squares()],
        dominoes: Vec::new(),
        masks: [0, 0],
        found: Vec::new(),
    };
    rec(&mut st);
    let mut out = LaurentPoly::zero();
    for (dominoes, masks) in st.found {
        if masks != [i0, i1] {
            continue;
        }
        let t = SegmentTiling { dominoes: Tiling::new(dominoes), i0, i1 };
        out.add_term((0, segment_volume(seg, &t)?), 1.into());
    }
    Ok(out)
}
