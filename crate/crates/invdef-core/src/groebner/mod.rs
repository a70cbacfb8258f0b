//! Gröbner bases for ideals and submodules of free modules.

pub mod engine;
pub mod hilbert;
pub mod ideal;
pub mod module;
pub mod syzygy;

pub use engine::{GbError, Strategy};
pub use hilbert::{krull_dimension, HilbertSeries};
pub use ideal::{eliminate, groebner, groebner_tracked, groebner_with, ideal_equal, intersect, GroebnerBasis};
pub use module::{ModuleBasis, NotInImage};
pub use syzygy::syzygies;
