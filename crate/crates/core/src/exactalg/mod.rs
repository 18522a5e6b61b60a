//! Exact and multiprecision algebra substrate.

pub mod eigen;
pub mod field;
pub mod linalg;
pub mod mp;
pub mod nummatrix;
pub mod opmatrix;
pub mod polyop;
pub mod rational;
pub mod scalar;
pub mod upoly;

pub use eigen::{eigen_decompose, EigenDecomposition};
pub use field::Field;
pub use mp::{Cplx, Precision, Real};
pub use nummatrix::NumMatrix;
pub use opmatrix::{CoVec, OpMatrix};
pub use polyop::{OperatorMatrix, PolyOperator};
pub use rational::Rat;
pub use scalar::Scalar;
pub use upoly::UPoly;
