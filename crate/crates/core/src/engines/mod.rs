//! Certificate-producing engines. Every certificate they return is sealed
//! with the obligations the independent checker derives, and can be
//! re-verified with [`crate::check::check_certificate`].

pub mod absorption;
pub mod chain;
pub mod containment;
pub mod extendibility;
pub mod filters;

pub use absorption::{property_a_check, property_b_refute};
pub use chain::{decreasing_chain_engine, increasing_chain_engine, ChainReport};
pub use containment::{containment_decreasing, containment_full_product};
pub use extendibility::{check_extendibility_a, check_extendibility_b, separator_witness};
pub use filters::{filter_member_certificate, nonredundancy_certificate, pseudo_finite_certificate};

use crate::branch::{Branch, Registry};
use crate::decide;
use crate::error::{Error, Result};
use crate::expr::SetExpr;
use crate::point::Ambient;

pub(crate) fn require_registered(registry: &Registry, branches: &[Branch]) -> Result<()> {
    for b in branches {
        registry.rank_or_err(b)?;
    }
    Ok(())
}

pub(crate) fn require_disjoint(f: &[Branch], g: &[Branch]) -> Result<()> {
    match f.iter().find(|a| g.contains(a)) {
        Some(a) => Err(Error::NotDisjoint(format!("{a} lies in both sets"))),
        None => Ok(()),
    }
}

/// Drops members of `chosen` one at a time while `⋂ chosen ⊆ target` still
/// holds exactly. The full list must already satisfy the inclusion.
pub(crate) fn minimize(mut chosen: Vec<Branch>, target: &SetExpr, ambient: Ambient) -> Result<Vec<Branch>> {
    let mut i = 0;
    while i < chosen.len() {
        let mut fewer = chosen.clone();
        fewer.remove(i);
        if decide::is_contained(&SetExpr::inter_of(&fewer), target, ambient)? {
            chosen = fewer;
        } else {
            i += 1;
        }
    }
    Ok(chosen)
}
