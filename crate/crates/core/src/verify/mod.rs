//! Verification engine: identity evaluation on admissible blocks and the
//! relation suites built on it.

pub mod appendix_a;
pub mod backends;
pub mod chevalley;
pub mod compare;
pub mod limits;
pub mod rational;
pub mod highest_weight;
pub mod identity;
pub mod kron;
pub mod report;
pub mod suites;
pub mod ybe;

pub use appendix_a::check_appendix_a;
pub use backends::{backend_agreement, AgreementConfig};
pub use chevalley::check_chevalley;
pub use compare::{compare_families, compare_families_on, compare_lax, compare_operators, compare_operators_on};
pub use limits::{limit_family, limit_lax, limit_q, limit_scalar, renormalized_verma, Direction, LimitError};
pub use identity::{Expr, Identity, FLOAT_TOL};
pub use report::{CheckOutcome, Failure, VerificationReport};
pub use rational::{check_factorization, check_gl_relations, g_m, limit_rational, limit_rational_lax};
pub use ybe::{check_ybe, check_ybe_u_minus_v};
pub use highest_weight::{check_highest_weight, check_highest_weight_lax, check_vacuum};
