//! Both halves of the extendibility condition for the filter generated by
//! pairwise unions of zero sets.

use super::{minimize, require_registered};
use crate::branch::{find_cover, find_separator, Branch, Registry};
use crate::cert::{Certificate, Params, Payload, SeparatorPoint};
use crate::decide::{self, subsets_by_size};
use crate::error::{Error, Result};
use crate::expr::SetExpr;
use crate::point::{Ambient, Point, Truncation};

/// The point `{l:l}` with `l = find_separator(alpha, others)`: it lies in
/// every `N_γ` of `others` and outside `N_alpha`.
pub fn separator_witness(alpha: &Branch, others: &[Branch]) -> Result<SeparatorPoint> {
    let position = find_separator(alpha, others)?;
    Ok(SeparatorPoint {
        alpha: alpha.clone(),
        others: others.to_vec(),
        position,
        point: Point::new([(position, position)])?,
    })
}

/// Witnesses that no `N_α` contains a finite intersection of other zero
/// sets, for every registered α and every subset of the rest.
pub fn check_extendibility_a(registry: &Registry, tr: Truncation, ambient: Ambient) -> Result<Certificate> {
    if registry.len() < 2 {
        return Err(Error::InsufficientRegistry {
            needed: 2,
            have: registry.len(),
        });
    }
    let mut witnesses = Vec::new();
    for alpha in registry.branches() {
        let others: Vec<Branch> = registry.branches().filter(|b| *b != alpha).cloned().collect();
        for idx in subsets_by_size(others.len()) {
            let g: Vec<Branch> = idx.iter().map(|&i| others[i].clone()).collect();
            witnesses.push(separator_witness(alpha, &g)?);
        }
    }
    let params = Params {
        registry: registry.clone(),
        truncation: tr,
        ambient,
    };
    Certificate::seal(params, Payload::ExtendibilityA { witnesses })
}

/// Given closed `z` with `z ∪ N_alpha0` above a finite intersection of
/// registered zero sets, finds the finite exception list `E` with
/// `z ⊇ ⋂_E N`, so that `z ∪ N_β` is in the filter for every `β ∉ E`.
/// Branches minted by the cover are added to the certificate's registry.
pub fn check_extendibility_b(
    z: &SetExpr,
    alpha0: &Branch,
    registry: &Registry,
    tr: Truncation,
    ambient: Ambient,
) -> Result<Certificate> {
    if !z.is_closed() {
        return Err(Error::NotClosed(z.to_string()));
    }
    require_registered(registry, std::slice::from_ref(alpha0))?;
    let hypothesis = z.clone().union(SetExpr::atom(alpha0));
    let candidates: Vec<Branch> = registry.branches().filter(|b| *b != alpha0).cloned().collect();
    if !decide::is_contained(&SetExpr::inter_of(&candidates), &hypothesis, ambient)? {
        return Err(Error::HypothesisNotCertified(format!(
            "{hypothesis} contains no intersection of registered zero sets"
        )));
    }
    let generators = minimize(candidates, &hypothesis, ambient)?;
    let separator = find_separator(alpha0, &generators)?;
    let mut reg = registry.clone();
    let cover: Vec<Branch> = find_cover(separator, 0, &mut reg, &generators)?
        .into_iter()
        .map(|e| e.branch)
        .collect();
    let mut pool = generators.clone();
    pool.extend(cover.iter().filter(|b| !generators.contains(b)).cloned());
    if !decide::is_contained(&SetExpr::inter_of(&pool), z, ambient)? {
        return Err(Error::Unknown(format!("cover of {separator} does not force {z}")));
    }
    let exceptions = minimize(pool, z, ambient)?;
    let params = Params {
        registry: reg,
        truncation: tr,
        ambient,
    };
    Certificate::seal(
        params,
        Payload::ExtendibilityB {
            set: z.clone(),
            alpha0: alpha0.clone(),
            generators,
            separator,
            cover,
            exceptions,
        },
    )
}
