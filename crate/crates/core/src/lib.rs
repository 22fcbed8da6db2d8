//! Exact computations with K-orbits on the exotic Grassmannian
//! `Gr_k(V) x P(V1)` and the exotic nilpotent cone, for
//! `K = GL(p) x GL(q)` inside `GL(p+q)`, over the rationals.
//!
//! Start with [`exotic::enumerate_pi2k`], [`tableaux::enumerate_theta2k`] and
//! [`correspondence::full_correspondence`]; the `examples/` directory has one
//! runnable program per capability.

pub mod cli;
pub mod correspondence;
pub mod error;
pub mod exotic;
pub mod linalg;
pub mod partitions;
pub mod sweep;
pub mod tableaux;

pub use correspondence::{full_correspondence, CorrespondenceTable, SamplingConfig};
pub use error::{Error, Result};
pub use exotic::{Ambient, ExoticOrbitLabel, ExoticPoint, OrbitType, RefinedType};
pub use linalg::{RatMatrix, Rational, Subspace};
pub use partitions::{Composition, Partition};
pub use tableaux::{FlagPair, MarkedTableau};

/// Output flavour for the diagram and tableau renderers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Latex,
}
