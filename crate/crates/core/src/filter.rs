//! Finitely generated filter bases over set expressions.

use std::collections::BTreeMap;

use crate::decide;
use crate::error::{Error, Result};
use crate::expr::SetExpr;
use crate::point::{enumerate_truncated_capped, support_representatives, Ambient, Point, Truncation};

/// Enumeration budget for truncated fallbacks.
pub const MAX_TRUNCATED_POINTS: u128 = 2_000_000;

/// A filter base: `Z` is a member when `Z ∪ ⋃ shifts` contains the
/// intersection of finitely many generators.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterBase {
    pub generators: Vec<SetExpr>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub shifts: Vec<SetExpr>,
}

impl FilterBase {
    /// Rejects an empty generator list and generators that are empty sets.
    pub fn new(generators: Vec<SetExpr>, ambient: Ambient) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidInput("a filter base needs a generator".into()));
        }
        for g in &generators {
            if decide::is_empty(g, ambient)? {
                return Err(Error::InvalidInput(format!("generator {g} is empty")));
            }
        }
        Ok(FilterBase {
            generators,
            shifts: Vec::new(),
        })
    }

    /// The base `{Z : Z ∪ N_α ∈ base}`.
    pub fn shifted(&self, by: SetExpr) -> Self {
        let mut out = self.clone();
        out.shifts.push(by);
        out
    }

    /// The set whose containment is tested for `z`.
    pub fn effective(&self, z: &SetExpr) -> SetExpr {
        if self.shifts.is_empty() {
            z.clone()
        } else {
            let mut parts = vec![z.clone()];
            parts.extend(self.shifts.iter().cloned());
            SetExpr::Union(parts)
        }
    }

    pub fn intersection(&self, indices: &[usize]) -> SetExpr {
        SetExpr::Inter(indices.iter().map(|&i| self.generators[i].clone()).collect())
    }

    pub fn all_indices(&self) -> Vec<usize> {
        (0..self.generators.len()).collect()
    }
}

pub fn shifted_filter(base: &FilterBase, by: SetExpr) -> FilterBase {
    base.shifted(by)
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case", deny_unknown_fields)]
pub enum FilterVerdict {
    /// The intersection of these generators lies inside the set. `exact` is
    /// false when only the truncation was searched.
    Proven { generators: Vec<usize>, exact: bool },
    /// A point of the full generator intersection outside the set.
    Refuted { point: Point },
    Unknown { reason: String },
}

impl FilterVerdict {
    pub fn is_proven(&self) -> bool {
        matches!(self, FilterVerdict::Proven { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, FilterVerdict::Refuted { .. })
    }
}

/// Truncated points relevant for a containment between `a` and `b`.
pub fn oracle_points(a: &SetExpr, b: &SetExpr, tr: Truncation, ambient: Ambient) -> Result<Vec<Point>> {
    let mut points = if ambient == Ambient::Product && !a.has_singletons() && !b.has_singletons() {
        support_representatives(tr, ambient)
    } else {
        enumerate_truncated_capped(tr, ambient, MAX_TRUNCATED_POINTS)?
    };
    for s in a.singletons().into_iter().chain(b.singletons()) {
        if s.is_valid(ambient) && !points.contains(&s) {
            points.push(s);
        }
    }
    Ok(points)
}

/// First truncated point of `a` outside `b`.
pub fn truncated_violation(a: &SetExpr, b: &SetExpr, tr: Truncation, ambient: Ambient) -> Result<Option<Point>> {
    Ok(oracle_points(a, b, tr, ambient)?
        .into_iter()
        .find(|q| a.contains(q) && !b.contains(q)))
}

fn minimal_subset(
    base: &FilterBase,
    target: &SetExpr,
    holds: &mut dyn FnMut(&SetExpr, &SetExpr) -> Result<bool>,
) -> Result<Vec<usize>> {
    for i in 0..base.generators.len() {
        if holds(&base.generators[i], target)? {
            return Ok(vec![i]);
        }
    }
    let mut chosen = base.all_indices();
    let mut i = 0;
    while i < chosen.len() {
        let mut fewer = chosen.clone();
        fewer.remove(i);
        if holds(&base.intersection(&fewer), target)? {
            chosen = fewer;
        } else {
            i += 1;
        }
    }
    Ok(chosen)
}

/// Decides `z ∈ base`. The exact procedure is used whenever the atom count
/// allows; otherwise the truncation is searched and a clean search is
/// reported as a non-exact proof.
pub fn filter_member(base: &FilterBase, z: &SetExpr, tr: Truncation, ambient: Ambient) -> Result<FilterVerdict> {
    let target = base.effective(z);
    let all = base.intersection(&base.all_indices());
    match decide::containment_counterexample(&all, &target, ambient) {
        Ok(None) => {
            let generators = minimal_subset(base, &target, &mut |a, b| decide::is_contained(a, b, ambient))?;
            Ok(FilterVerdict::Proven {
                generators,
                exact: true,
            })
        }
        Ok(Some(exact_point)) => {
            let point = truncated_violation(&all, &target, tr, ambient)
                .ok()
                .flatten()
                .unwrap_or(exact_point);
            Ok(FilterVerdict::Refuted { point })
        }
        Err(Error::ResourceCap { .. }) => match truncated_violation(&all, &target, tr, ambient) {
            Ok(Some(point)) => Ok(FilterVerdict::Refuted { point }),
            Ok(None) => {
                let generators = minimal_subset(base, &target, &mut |a, b| {
                    Ok(truncated_violation(a, b, tr, ambient)?.is_none())
                })?;
                Ok(FilterVerdict::Proven {
                    generators,
                    exact: false,
                })
            }
            Err(Error::ResourceCap { what, requested, cap }) => Ok(FilterVerdict::Unknown {
                reason: format!("{what} = {requested} exceeds {cap}"),
            }),
            Err(e) => Err(e),
        },
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoFinite {
    pub verdicts: Vec<FilterVerdict>,
    pub exceptions: Vec<usize>,
}

/// Indices of the bases that do not prove `z`.
pub fn pseudo_finite_exceptions(
    family: &[FilterBase],
    z: &SetExpr,
    tr: Truncation,
    ambient: Ambient,
) -> Result<PseudoFinite> {
    let verdicts = family
        .iter()
        .map(|b| filter_member(b, z, tr, ambient))
        .collect::<Result<Vec<_>>>()?;
    if !verdicts.iter().any(FilterVerdict::is_proven) {
        return Err(Error::InvalidInput(format!("{z} belongs to none of the bases")));
    }
    let exceptions = (0..verdicts.len()).filter(|&i| !verdicts[i].is_proven()).collect();
    Ok(PseudoFinite { verdicts, exceptions })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nonredundancy {
    pub union: SetExpr,
    pub member_verdicts: Vec<(usize, FilterVerdict)>,
    pub target_verdict: FilterVerdict,
}

/// Joins witnesses `Z_k` (each in its own base, none in the target's) into
/// one set lying in every other base but not in the target's.
pub fn combine_nonredundancy_witnesses(
    witnesses: &BTreeMap<usize, SetExpr>,
    target: usize,
    family: &[FilterBase],
    tr: Truncation,
    ambient: Ambient,
) -> Result<Nonredundancy> {
    if witnesses.is_empty() {
        return Err(Error::InvalidInput("no witnesses to combine".into()));
    }
    let target_base = family
        .get(target)
        .ok_or_else(|| Error::InvalidInput(format!("target index {target} out of range")))?;
    for (&k, z) in witnesses {
        let own = family
            .get(k)
            .ok_or_else(|| Error::InvalidInput(format!("witness index {k} out of range")))?;
        if k == target {
            return Err(Error::InvalidInput("the target cannot carry a witness".into()));
        }
        if !filter_member(own, z, tr, ambient)?.is_proven() {
            return Err(Error::InvalidInput(format!("witness {z} is not in base {k}")));
        }
        if filter_member(target_base, z, tr, ambient)?.is_proven() {
            return Err(Error::InvalidInput(format!("witness {z} lies in the target base")));
        }
    }
    let union = if witnesses.len() == 1 {
        witnesses.values().next().expect("one witness").clone()
    } else {
        SetExpr::Union(witnesses.values().cloned().collect())
    };
    let member_verdicts = (0..family.len())
        .filter(|&i| i != target)
        .map(|i| Ok((i, filter_member(&family[i], &union, tr, ambient)?)))
        .collect::<Result<Vec<_>>>()?;
    let target_verdict = filter_member(target_base, &union, tr, ambient)?;
    if !target_verdict.is_refuted() {
        return Err(Error::Unknown(format!("no point refutes {union} in the target base")));
    }
    Ok(Nonredundancy {
        union,
        member_verdicts,
        target_verdict,
    })
}
