//! Branch families, the prototype space, and certificate-producing checks
//! for zero-set constructions over them.

pub mod branch;
pub mod cert;
pub mod check;
pub mod closure;
pub mod decide;
pub mod engines;
pub mod error;
pub mod expr;
pub mod filter;
pub mod point;

pub use branch::{Branch, BranchIndex, Registry};
pub use cert::{Certificate, CertKind};
pub use check::{check_certificate, check_json};
pub use error::{Error, Result};
pub use expr::SetExpr;
pub use filter::{FilterBase, FilterVerdict};
pub use point::{Ambient, Point, Truncation};
