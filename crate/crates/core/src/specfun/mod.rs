//! Real-argument special functions.

mod airy;
mod gamma;
mod lambert;
mod polylog;

pub use airy::{
    airy, airy_log_deriv, airy_scaled, airy_zero, airy_zero_leading, Airy, AiryZeroKind, AIP_ZERO,
    AI_ZERO, N_EXACT_ZEROS,
};
pub(crate) use airy::{log_deriv_raw, PhaseSeries};
pub use gamma::gamma_fn;
pub use lambert::lambert_w;
pub use polylog::{polylog, POLYLOG_Z_MAX};
