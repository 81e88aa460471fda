use super::{Color, Cut, QuadSurface, SideRef};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Attachment {
    A0,
    A1,
}

/// A quadriculated disk whose boundary splits counterclockwise into the
/// arcs `bi`, `a0`, `bo`, `a1`.
///
/// Attachments are stored as boundary sides of the disk ordered from `bo`
/// to `bi`. Sides of `a1` point along that order; sides of `a0` point against it.
#[derive(Clone, Debug)]
pub struct TrackSegment {
    disk: QuadSurface,
    a0: Vec<SideRef>,
    a1: Vec<SideRef>,
    periodic: bool,
}

impl TrackSegment {
    pub(super) fn from_cut(annulus: &QuadSurface, cut: &Cut) -> Result<Self> {
        let mut glue = annulus.glue.clone();
        let mut a0 = Vec::with_capacity(cut.len());
        let mut a1 = Vec::with_capacity(cut.len());
        for (i, &sd) in cut.sides.iter().enumerate() {
            let side = annulus.side(sd);
            let right = side.right.expect("cut sides are interior");
            let (l, r) = if side.tail == cut.vertices[i] { (side.left, right) } else { (right, side.left) };
            glue[l.0][l.1 as usize] = None;
            glue[r.0][r.1 as usize] = None;
            a1.push(l);
            a0.push(r);
        }
        let mut disk = QuadSurface::from_gluing(glue, annulus.colors.clone(), None)?;
        if !disk.is_disk() {
            return Err(Error::NotADisk);
        }
        disk.coords = annulus.coords.clone();
        let seg = TrackSegment { disk, a0, a1, periodic: true };
        seg.validate()?;
        Ok(seg)
    }

    /// Build from a disk and explicit attachments (ordered from `bo` to `bi`).
    pub fn new(disk: QuadSurface, a0: Vec<SideRef>, a1: Vec<SideRef>) -> Result<Self> {
        if !disk.is_disk() {
            return Err(Error::NotADisk);
        }
        let mut seg = TrackSegment { disk, a0, a1, periodic: false };
        seg.validate()?;
        seg.periodic = seg.closable();
        Ok(seg)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::ShapeMismatch(m.to_string()));
        if self.a0.is_empty() || self.a1.is_empty() {
            return bad("empty attachment");
        }
        for &(sq, s) in self.a0.iter().chain(&self.a1) {
            if sq >= self.disk.num_squares() || s > 3 || self.disk.glued(sq, s).is_some() {
                return bad("attachment side is not a boundary side");
            }
        }
        let head = |(sq, s): SideRef| self.disk.vertex_at(sq, (s + 1) % 4);
        let tail = |(sq, s): SideRef| self.disk.vertex_at(sq, s);
        if self.a1.windows(2).any(|w| head(w[0]) != tail(w[1]))
            || self.a0.windows(2).any(|w| tail(w[0]) != head(w[1]))
        {
            return bad("attachment is not a path");
        }
        Ok(())
    }

    fn closable(&self) -> bool {
        self.a0.len() == self.a1.len()
            && self.shape(Attachment::A0) == self.shape(Attachment::A1)
            && self
                .a0
                .iter()
                .zip(&self.a1)
                .all(|(x, y)| self.disk.color(x.0) != self.disk.color(y.0))
    }

    pub fn disk(&self) -> &QuadSurface {
        &self.disk
    }

    pub fn attachment(&self, which: Attachment) -> &[SideRef] {
        match which {
            Attachment::A0 => &self.a0,
            Attachment::A1 => &self.a1,
        }
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    pub fn num_squares(&self) -> usize {
        self.disk.num_squares()
    }

    /// Vertices along an attachment from `bo` to `bi`.
    pub fn attachment_path(&self, which: Attachment) -> Vec<usize> {
        let d = &self.disk;
        match which {
            Attachment::A1 => {
                let mut out = vec![d.vertex_at(self.a1[0].0, self.a1[0].1)];
                out.extend(self.a1.iter().map(|&(sq, s)| d.vertex_at(sq, (s + 1) % 4)));
                out
            }
            Attachment::A0 => {
                let mut out = vec![d.vertex_at(self.a0[0].0, (self.a0[0].1 + 1) % 4)];
                out.extend(self.a0.iter().map(|&(sq, s)| d.vertex_at(sq, s)));
                out
            }
        }
    }

    /// Curvatures at the interior vertices of the attachment, oriented `bo` to `bi`.
    pub fn shape(&self, which: Attachment) -> Vec<i64> {
        let path = self.attachment_path(which);
        path[1..path.len() - 1]
            .iter()
            .map(|&v| {
                let n = self.disk.vertex(v).degree() as i64;
                match which {
                    Attachment::A1 => 2 - n,
                    Attachment::A0 => n - 2,
                }
            })
            .collect()
    }

    /// Base vertex for heights: the `bo` end of `a1`.
    pub fn base_vertex(&self) -> usize {
        self.disk.vertex_at(self.a1[0].0, self.a1[0].1)
    }

    /// Reference vertex: the `bi` end of `a1`.
    pub fn reference_vertex(&self) -> usize {
        let &(sq, s) = self.a1.last().unwrap();
        self.disk.vertex_at(sq, (s + 1) % 4)
    }

    /// Flux weight of a preferred edge on an attachment: white counts
    /// positively on `a0`, black positively on `a1`.
    pub fn flux_sign(&self, which: Attachment, index: usize) -> i64 {
        let sq = self.attachment(which)[index].0;
        match (which, self.disk.color(sq)) {
            (Attachment::A0, Color::White) | (Attachment::A1, Color::Black) => 1,
            _ => -1,
        }
    }

    /// Glue `a1` of `self` to `a0` of `other`.
    pub fn juxtapose(&self, other: &TrackSegment) -> Result<TrackSegment> {
        if self.a1.len() != other.a0.len() {
            return Err(Error::ShapeMismatch(format!(
                "attachment lengths {} and {}",
                self.a1.len(),
                other.a0.len()
            )));
        }
        if self.shape(Attachment::A1) != other.shape(Attachment::A0) {
            return Err(Error::ShapeMismatch("attachment curvatures differ".into()));
        }
        let m = self.num_squares();
        let mut glue = self.disk.glue.clone();
        glue.extend(other.disk.glue.iter().map(|g| g.map(|x| x.map(|(sq, s)| (sq + m, s)))));
        let mut colors = self.disk.colors.clone();
        colors.extend_from_slice(&other.disk.colors);
        for (&(sa, ea), &(sb, eb)) in self.a1.iter().zip(&other.a0) {
            if colors[sa] == colors[sb + m] {
                return Err(Error::ShapeMismatch("attachment colors do not alternate".into()));
            }
            glue[sa][ea as usize] = Some((sb + m, eb));
            glue[sb + m][eb as usize] = Some((sa, ea));
        }
        let disk = QuadSurface::from_gluing(glue, colors, None)?;
        let a1 = other.a1.iter().map(|&(sq, s)| (sq + m, s)).collect();
        TrackSegment::new(disk, self.a0.clone(), a1)
    }

    /// `n` copies juxtaposed; copy `k` holds squares `k*m .. (k+1)*m`.
    pub fn n_fold(&self, n: usize) -> Result<TrackSegment> {
        assert!(n >= 1, "n-fold needs n >= 1");
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.juxtapose(self)?;
        }
        acc.periodic = self.periodic;
        Ok(acc)
    }

    /// Attach `a1` to `a0`. Square ids are preserved.
    pub fn close_up(&self) -> Result<QuadSurface> {
        if !self.closable() {
            return Err(Error::ShapeMismatch("attachments a0 and a1 differ".into()));
        }
        let mut glue = self.disk.glue.clone();
        for (&(sa, ea), &(sb, eb)) in self.a1.iter().zip(&self.a0) {
            glue[sa][ea as usize] = Some((sb, eb));
            glue[sb][eb as usize] = Some((sa, ea));
        }
        let mut surface = QuadSurface::from_gluing(glue, self.disk.colors.clone(), self.bo_side())?;
        if !surface.is_annulus() {
            return Err(Error::NotAnAnnulus);
        }
        surface.coords = self.disk.coords.clone();
        Ok(surface)
    }

    /// First side of `bo` after `a0`, if `bo` has any sides.
    fn bo_side(&self) -> Option<SideRef> {
        let d = &self.disk;
        let cycle = &d.boundary_components()[0];
        let a0_end = d.side_id(self.a0[0].0, self.a0[0].1);
        let pos = cycle.iter().position(|&s| s == a0_end)?;
        let next = cycle[(pos + 1) % cycle.len()];
        let a1_start = d.side_id(self.a1[0].0, self.a1[0].1);
        (next != a1_start).then(|| d.side(next).left)
    }

    /// The cut of `closed` (from [`close_up`](Self::close_up)) along the glued attachments.
    pub fn induced_cut(&self, closed: &QuadSurface) -> Cut {
        let mut vertices = vec![closed.vertex_at(self.a1[0].0, self.a1[0].1)];
        let mut sides = Vec::new();
        for &(sq, s) in &self.a1 {
            vertices.push(closed.vertex_at(sq, (s + 1) % 4));
            sides.push(closed.side_id(sq, s));
        }
        Cut { vertices, sides }
    }
}
