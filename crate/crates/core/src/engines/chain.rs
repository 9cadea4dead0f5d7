//! Strictly monotone chains of filter bases indexed by rank.

use super::extendibility::separator_witness;
use crate::branch::{Branch, Registry};
use crate::cert::{Certificate, ChainWitness, Params, Payload};
use crate::error::{Error, Result};
use crate::expr::SetExpr;
use crate::filter::FilterBase;
use crate::point::{Ambient, Truncation};

#[derive(Clone, Debug)]
pub struct ChainReport {
    /// The lowest-ranked registry entries, one per step.
    pub chain: Vec<Branch>,
    pub bases: Vec<FilterBase>,
    pub certificate: Certificate,
}

impl ChainReport {
    /// Whether `N_{chain[member]}` is a generator of base `base`.
    pub fn is_generator(&self, member: usize, base: usize) -> bool {
        self.bases[base].generators.contains(&SetExpr::atom(&self.chain[member]))
    }
}

fn lowest(registry: &Registry, steps: usize) -> Result<Vec<Branch>> {
    if steps == 0 || registry.len() < steps {
        return Err(Error::InsufficientRegistry {
            needed: steps.max(1),
            have: registry.len(),
        });
    }
    Ok(registry.branches().take(steps).cloned().collect())
}

fn base_of(atoms: &[Branch], ambient: Ambient) -> Result<FilterBase> {
    if atoms.is_empty() {
        FilterBase::new(vec![SetExpr::Whole], ambient)
    } else {
        FilterBase::new(atoms.iter().map(SetExpr::atom).collect(), ambient)
    }
}

fn witness(chain: &[Branch], member: usize, base: usize, others: &[Branch]) -> Result<ChainWitness> {
    let w = separator_witness(&chain[member], others)?;
    Ok(ChainWitness {
        member,
        base,
        position: w.position,
        point: w.point,
    })
}

/// Bases `B_j` generated by the first `j` chain members (`B_0` is trivial).
/// Each `N_{chain[i]}` with `i >= j` is shown outside `B_j` by a point in
/// every generator of `B_j` but not in `N_{chain[i]}`.
pub fn increasing_chain_engine(
    registry: &Registry,
    steps: usize,
    tr: Truncation,
    ambient: Ambient,
) -> Result<ChainReport> {
    let chain = lowest(registry, steps)?;
    let bases = (0..steps)
        .map(|j| base_of(&chain[..j], ambient))
        .collect::<Result<Vec<_>>>()?;
    let mut witnesses = Vec::new();
    for j in 0..steps {
        for i in j..steps {
            witnesses.push(witness(&chain, i, j, &chain[..j])?);
        }
    }
    let params = Params {
        registry: registry.clone(),
        truncation: tr,
        ambient,
    };
    let certificate = Certificate::seal(
        params,
        Payload::ChainIncreasing {
            chain: chain.clone(),
            witnesses,
        },
    )?;
    Ok(ChainReport {
        chain,
        bases,
        certificate,
    })
}

/// Bases `F_j` generated by every registry entry ranked at least
/// `rank(chain[j])`. Each `N_{chain[i]}` with `i < j` is shown outside `F_j`
/// by a point in every generator of `F_j` but not in `N_{chain[i]}`.
pub fn decreasing_chain_engine(
    registry: &Registry,
    steps: usize,
    tr: Truncation,
    ambient: Ambient,
) -> Result<ChainReport> {
    let chain = lowest(registry, steps)?;
    let entries: Vec<Branch> = registry.branches().cloned().collect();
    let bases = (0..steps)
        .map(|j| base_of(&entries[j..], ambient))
        .collect::<Result<Vec<_>>>()?;
    let mut witnesses = Vec::new();
    for j in 1..steps {
        for i in 0..j {
            witnesses.push(witness(&chain, i, j, &entries[j..])?);
        }
    }
    let params = Params {
        registry: registry.clone(),
        truncation: tr,
        ambient,
    };
    let certificate = Certificate::seal(
        params,
        Payload::ChainDecreasing {
            chain: chain.clone(),
            witnesses,
        },
    )?;
    Ok(ChainReport {
        chain,
        bases,
        certificate,
    })
}
