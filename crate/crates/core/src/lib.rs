//! Exact enumeration of domino tilings of quadriculated annuli by flux and volume.

pub mod analysis;
pub mod corpus;
pub mod error;
pub mod heights;
pub mod homology;
pub mod io;
pub mod kasteleyn;
pub mod laurent;
pub mod oracle;
pub mod surface;
pub mod track;

pub use error::{Error, Result};
pub use laurent::{LaurentPoly, UnitMonomial};
pub use surface::{Color, Cut, QuadSurface, TrackSegment};
