//! Tuples of coefficient matrices, addition, spectral types and the
//! normal-form constructors.

pub mod fixtures;
mod normal_form;
mod spectral;
mod tuple;

pub use normal_form::{build_l, from_okubo, NormalFormError};
pub use spectral::{
    leading_pair, spectral_type, spectral_type_of_pair, InnerEigen, PointPattern, SpectralBlock, SpectralError,
    SpectralType,
};
pub(crate) use spectral::eigenbasis;
pub use tuple::{Location, ModelError, ShiftVector, SingularPoint, Slot, Tuple};
