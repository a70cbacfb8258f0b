//! Exact polynomial arithmetic over the rationals.

pub mod linalg;
pub mod matrix;
pub mod monomial;
pub mod order;
pub mod poly;
pub mod rational;
pub mod ring;

pub use linalg::{Echelon, Insert, QMatrix, SparseVec};
pub use matrix::PolyMatrix;
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use poly::Polynomial;
pub use rational::Rational;
pub use ring::{ParseError, Ring};
