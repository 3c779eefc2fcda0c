//! Monte-Carlo sampling of concrete Lévy processes, used to corroborate the
//! symbolic moments and the martingale property of `Q_k(X_t, t)`.
//!
//! Every entry point takes an explicit seed. Work is split into fixed-size
//! chunks, each drawing from its own ChaCha8 stream, so reports are
//! bit-identical for a given seed regardless of the thread count.

mod mc;
mod numeric;
mod sample;
mod spec;

pub use mc::{additivity, empirical_moments, martingale_mc, simulate, MartingaleRow, MomentRow, SimReport, CHUNK};
pub use numeric::{Neumaier, NumericPoly};
pub use sample::{covariance_root, sample_increment, Increment};
pub use spec::{to_rational, Jump, ProcessSpec, Symbolic};

#[derive(Debug, thiserror::Error)]
pub enum SimError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Symbolic(#[from] umbral::UmbralError),
    #[error("internal error: {0}")]
    Internal(String),
}
