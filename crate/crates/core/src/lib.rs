//! Eigenvalues of the prolate matrix, non-asymptotic bounds on them, and
//! executable checks of the low-rank structure behind those bounds.
//!
//! The numerical code is generic over [`Real`] (`f32` or `f64`). The
//! aliases at the crate root fix the scalar to `f64`; the `F32` variants
//! are provided for quick single-precision runs.

pub mod bounds;
pub mod chebsinc;
pub mod displacement;
pub mod error;
pub mod kernel;
pub mod linalg;
pub mod scalar;
pub mod spectrum;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Real;

pub type ProlateParams = kernel::ProlateParams<f64>;
pub type SincKernel = kernel::SincKernel<f64>;
pub type SpectrumEntry = spectrum::SpectrumEntry<f64>;
pub type SpectrumSlice = spectrum::SpectrumSlice<f64>;
pub type TransitionReport = spectrum::TransitionReport<f64>;
pub type WidthBound = bounds::WidthBound<f64>;
pub type Envelope = bounds::Envelope<f64>;
pub type BoundSet = bounds::BoundSet<f64>;
pub type PSWFProxy = bounds::PSWFProxy<f64>;
pub type DisplacementSystem = displacement::DisplacementSystem<f64>;
pub type ZolotarevSetPair = displacement::ZolotarevSetPair<f64>;
pub type ChebInterpolant = chebsinc::ChebInterpolant<f64>;
pub type SweepConfig = sweep::SweepConfig<f64>;
pub type SweepRow = sweep::SweepRow<f64>;

pub type ProlateParamsF32 = kernel::ProlateParams<f32>;
pub type SpectrumSliceF32 = spectrum::SpectrumSlice<f32>;
pub type BoundSetF32 = bounds::BoundSet<f32>;
pub type SweepConfigF32 = sweep::SweepConfig<f32>;
