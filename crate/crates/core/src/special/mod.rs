//! Special functions: complex log-Gamma, Pollaczek polynomials, the basis
//! functions `ψₙ`, the kernel `Qₙ`, and the extended-exponent arithmetic
//! they share.

pub mod gamma;
pub mod kernel;
pub mod pollaczek;
pub mod quadrature;
pub mod scaled;

pub use gamma::{complex_gamma, complex_log_gamma, gamma_scaled};
pub use kernel::{psi_n, q_all, q_n, QTable};
pub use pollaczek::{
    pollaczek_p, pollaczek_p_asymptotic, pollaczek_p_hypergeometric, pollaczek_real_sequence,
    pollaczek_sequence,
};
pub use scaled::{NeumaierSum, ScaledComplex, ScaledSum};
