//! Exact q-oscillator realizations of `U_q(gl(M|N))` on truncated Fock
//! spaces, their contractions and rational degenerations, the associated
//! L-operators, and a verification engine for the identities they satisfy.

pub mod fock;
pub mod grading;
pub mod lax;
pub mod scalar;
pub mod realizations;
pub mod verify;
