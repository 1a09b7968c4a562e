pub mod clifford;
pub mod dixmier;
pub mod error;
pub mod fit;
pub mod loops;
pub mod matrix;
pub mod params;
pub mod quad;
pub mod scalar;
pub mod specfun;
pub mod triple;
pub mod zeta;

pub use error::{Error, Result};
pub use scalar::Real;

pub type DeformationParams64 = params::DeformationParams<f64>;
pub type CliffordRep64 = clifford::CliffordRep<f64>;
pub type TripleOperator64 = triple::TripleOperator<f64>;
pub type FourierSeries64 = triple::FourierSeries<f64>;
pub type ZetaEvaluation64 = zeta::ZetaEvaluation<f64>;
pub type PoleReport64 = zeta::PoleReport<f64>;
pub type LoopResult64 = loops::LoopResult<f64>;
pub type DixmierFit64 = dixmier::DixmierFit<f64>;
pub type ActionPrediction64 = dixmier::ActionPrediction<f64>;
