//! Dagger enriched categories built from unitary fusion data.
//!
//! Every structural morphism is a complex block matrix ([`semicat::Mor`]);
//! every axiom is a residual in a [`report::Report`]. The numerical core is
//! generic over the real scalar; the aliases below fix it to `f64`.

pub mod catalog;
pub mod enrich;
pub mod format;
pub mod fusion;
pub mod modulecat;
pub mod monoidal;
pub mod report;
pub mod roundtrip;
pub mod semicat;

use nalgebra::RealField;
use num_traits::{FromPrimitive, ToPrimitive};

pub use nalgebra::Complex;
pub use report::{Check, Report};
pub use semicat::{CatError, Obj, Tol};

/// Real scalar underlying every complex block.
pub trait Real: RealField + Copy + FromPrimitive + ToPrimitive + std::fmt::Display {}

impl<T> Real for T where T: RealField + Copy + FromPrimitive + ToPrimitive + std::fmt::Display {}

pub type C64 = Complex<f64>;
pub type Mor64 = semicat::Mor<f64>;
pub type Fusion64 = fusion::FusionData<f64>;
pub type Module64 = modulecat::ModuleData<f64>;
pub type Enriched64 = enrich::EnrichedCat<f64>;
pub type RoundTrip64 = roundtrip::RoundTrip<f64>;
pub type Central64 = monoidal::CentralStructure<f64>;
