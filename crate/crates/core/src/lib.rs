pub mod abutment;
pub mod algebra;
pub mod ar;
pub mod catalog;
pub mod corpus;
pub mod decompose;
pub mod error;
pub mod glue;
pub mod homology;
pub mod matrix;
pub mod orbit;
pub mod rational;
pub mod rep;
pub mod verify;

pub use algebra::{Algebra, ArmDir, KupischSeries, KupischShape};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use rational::Q;
pub use rep::{Morphism, Rep};
