//! Exact middle convolution, addition and index of rigidity for tuples of
//! matrices describing linear ODE systems with irregular singularities.

pub mod exactla;
pub mod model;
pub mod convolution;
pub mod rigidity;
pub mod reduction;
pub mod cli;
