//! Exact computation with formal group laws over the truncated Lazard ring,
//! projective bundle formulas, and the line-bundle module over a point.

pub mod error;
pub mod fgl;
pub mod lazard;
pub mod lbmodule;
pub mod linalg;
pub mod poly;
pub mod proj;
pub mod ring;
pub mod series;
pub mod wpbf;

pub use error::{Error, Result};
pub use fgl::{FglTable, KnownRange};
pub use lbmodule::{LbAlgebra, LbElement, PsiSeries};
pub use lazard::{build_universal_fgl, mishchenko_elements, GradedElement, LazardPresentation, MishchenkoCache, Mode, RingMorphism};
pub use poly::{Poly, PolyRing};
pub use proj::ProjRing;
pub use ring::{CoeffRing, Weight};
pub use series::{SeriesSpace, TruncatedSeries};
pub use wpbf::WpbfDecomposition;
