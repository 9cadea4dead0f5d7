//! Closure containments: removing finitely many zero sets from an
//! intersection of zero sets changes its closure by at most a cover.

use super::{require_disjoint, require_registered};
use crate::branch::{find_cover, find_separator, Branch, Registry};
use crate::cert::{Certificate, Params, Payload, Separator};
use crate::error::Result;
use crate::point::{Ambient, Truncation};

/// Builds `H`, of rank at least `gamma`, with
/// `closure(⋂_G N ∖ ⋃_F N) ⊇ ⋂_{G∪H} N`. Each `α ∈ F` gets a separator
/// against `G`; `H` covers every position up to the largest one.
pub fn containment_decreasing(
    f: &[Branch],
    g: &[Branch],
    gamma: u64,
    registry: &Registry,
    tr: Truncation,
    ambient: Ambient,
) -> Result<Certificate> {
    require_disjoint(f, g)?;
    require_registered(registry, f)?;
    require_registered(registry, g)?;
    let separators = f
        .iter()
        .map(|a| {
            Ok(Separator {
                branch: a.clone(),
                position: find_separator(a, g)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut reg = registry.clone();
    let cover = match separators.iter().map(|s| s.position).max() {
        Some(l) => find_cover(l, gamma, &mut reg, g)?.into_iter().map(|e| e.branch).collect(),
        None => Vec::new(),
    };
    let params = Params {
        registry: reg,
        truncation: tr,
        ambient,
    };
    Certificate::seal(
        params,
        Payload::ContainmentDecreasing {
            f: f.to_vec(),
            g: g.to_vec(),
            gamma,
            separators,
            cover,
        },
    )
}

/// In the product space, `closure(⋂_F N ∖ ⋃_G N) = ⋂_F N`: every point of
/// `⋂_F N` is approached by giving it value 1 at one position of each
/// `E_β` (β ∈ G) outside `⋃_F E`, pushed beyond any fixed depth.
pub fn containment_full_product(f: &[Branch], g: &[Branch], registry: &Registry, tr: Truncation) -> Result<Certificate> {
    require_disjoint(f, g)?;
    require_registered(registry, f)?;
    require_registered(registry, g)?;
    let params = Params {
        registry: registry.clone(),
        truncation: tr,
        ambient: Ambient::Product,
    };
    Certificate::seal(
        params,
        Payload::ContainmentFull {
            f: f.to_vec(),
            g: g.to_vec(),
        },
    )
}
