//! Gaussian covariance-matrix engine for pumped-up SU(1,1) frequency interferometry.
//!
//! The phase-space modules are generic over [`Real`] (`f32` or `f64`). The BEC detector
//! module works in SI units and is `f64` only.

pub mod bec;
pub mod error;
pub mod fisher;
pub mod gaussian;
pub mod interferometer;
pub mod scalar;
pub mod symplectic;

pub use error::{Error, Result};
pub use scalar::Real;

pub type GaussianStateF64 = gaussian::GaussianState<f64>;
pub type GaussianStateF32 = gaussian::GaussianState<f32>;
pub type SymplecticOpF64 = symplectic::SymplecticOp<f64>;
pub type SymplecticOpF32 = symplectic::SymplecticOp<f32>;
pub type ChannelSpecF64 = symplectic::ChannelSpec<f64>;
pub type ChannelSpecF32 = symplectic::ChannelSpec<f32>;
pub type InterferometerConfigF64 = interferometer::InterferometerConfig<f64>;
pub type InterferometerConfigF32 = interferometer::InterferometerConfig<f32>;

pub type BecDetectorParamsF64 = bec::BecDetectorParams;
pub type DerivedBecQuantitiesF64 = bec::DerivedBecQuantities;
