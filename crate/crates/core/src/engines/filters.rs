//! Certificates for filter-base membership queries.

use std::collections::BTreeMap;

use crate::branch::Registry;
use crate::cert::{Certificate, IndexedSet, IndexedVerdict, Params, Payload};
use crate::error::Result;
use crate::expr::SetExpr;
use crate::filter::{combine_nonredundancy_witnesses, filter_member, pseudo_finite_exceptions, FilterBase};
use crate::point::{Ambient, Truncation};

fn params(registry: &Registry, tr: Truncation, ambient: Ambient) -> Params {
    Params {
        registry: registry.clone(),
        truncation: tr,
        ambient,
    }
}

pub fn filter_member_certificate(
    base: &FilterBase,
    z: &SetExpr,
    registry: &Registry,
    tr: Truncation,
    ambient: Ambient,
) -> Result<Certificate> {
    let verdict = filter_member(base, z, tr, ambient)?;
    Certificate::seal(
        params(registry, tr, ambient),
        Payload::FilterMember {
            base: base.clone(),
            set: z.clone(),
            verdict,
        },
    )
}

pub fn pseudo_finite_certificate(
    family: &[FilterBase],
    z: &SetExpr,
    registry: &Registry,
    tr: Truncation,
    ambient: Ambient,
) -> Result<Certificate> {
    let found = pseudo_finite_exceptions(family, z, tr, ambient)?;
    Certificate::seal(
        params(registry, tr, ambient),
        Payload::PseudoFinite {
            family: family.to_vec(),
            set: z.clone(),
            verdicts: found.verdicts,
            exceptions: found.exceptions,
        },
    )
}

pub fn nonredundancy_certificate(
    witnesses: &BTreeMap<usize, SetExpr>,
    target: usize,
    family: &[FilterBase],
    registry: &Registry,
    tr: Truncation,
    ambient: Ambient,
) -> Result<Certificate> {
    let found = combine_nonredundancy_witnesses(witnesses, target, family, tr, ambient)?;
    Certificate::seal(
        params(registry, tr, ambient),
        Payload::Nonredundancy {
            family: family.to_vec(),
            target,
            witnesses: witnesses
                .iter()
                .map(|(&index, set)| IndexedSet {
                    index,
                    set: set.clone(),
                })
                .collect(),
            union: found.union,
            member_verdicts: found
                .member_verdicts
                .into_iter()
                .map(|(index, verdict)| IndexedVerdict { index, verdict })
                .collect(),
            target_verdict: found.target_verdict,
        },
    )
}
