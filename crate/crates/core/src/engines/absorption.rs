//! Non-absorption: property (A) for a single set, and the refutation of
//! finite covers by sets that fail it.

use super::require_registered;
use crate::branch::{find_cover, find_separator, Branch, Registry};
use crate::cert::{
    AFailure, Certificate, PairWitness, Params, Payload, PropertyBOutcome, Separator, Stage, TraceLink, Violation,
};
use crate::closure::ApproxSequence;
use crate::decide::{self, subsets_by_size};
use crate::error::{Error, Result};
use crate::expr::SetExpr;
use crate::filter::truncated_violation;
use crate::point::{Ambient, Truncation};

/// For every `F` and `β` of larger rank than all of `F`, looks for a point
/// of `z ∩ ⋂_F N ∖ N_β`. Stops at the first pair without one and records it
/// as a failure.
pub fn property_a_check(z: &SetExpr, registry: &Registry, tr: Truncation, ambient: Ambient) -> Result<Certificate> {
    let entries: Vec<Branch> = registry.branches().cloned().collect();
    let mut witnesses = Vec::new();
    let mut failure = None;
    'pairs: for (j, beta) in entries.iter().enumerate() {
        for idx in subsets_by_size(j) {
            let f: Vec<Branch> = idx.iter().map(|&i| entries[i].clone()).collect();
            let region = z.clone().inter(SetExpr::inter_of(&f)).minus(SetExpr::atom(beta));
            match decide::find_point(&region, ambient)? {
                Some(point) => witnesses.push(PairWitness {
                    f,
                    beta: beta.clone(),
                    point,
                }),
                None => {
                    failure = Some(AFailure {
                        set: z.clone(),
                        f,
                        g: vec![beta.clone()],
                    });
                    break 'pairs;
                }
            }
        }
    }
    let params = Params {
        registry: registry.clone(),
        truncation: tr,
        ambient,
    };
    Certificate::seal(
        params,
        Payload::PropertyA {
            set: z.clone(),
            witnesses,
            failure,
        },
    )
}

fn max_rank(registry: &Registry, bs: &[Branch]) -> Result<Option<u64>> {
    Ok(bs.iter().map(|b| registry.rank_or_err(b)).collect::<Result<Vec<_>>>()?.into_iter().max())
}

fn min_rank(registry: &Registry, bs: &[Branch]) -> Result<Option<u64>> {
    Ok(bs.iter().map(|b| registry.rank_or_err(b)).collect::<Result<Vec<_>>>()?.into_iter().min())
}

fn extend(acc: &mut Vec<Branch>, more: &[Branch]) {
    for b in more {
        if !acc.contains(b) {
            acc.push(b.clone());
        }
    }
}

/// Replays the induction against a putative cover of the space by sets that
/// fail property (A).
///
/// Both the failures and the cover claim are first checked on the
/// truncation: a broken failure is an error, a broken cover claim yields a
/// counterexample point. Otherwise stages `H_1, ..., H_n` are built, the
/// first stage whose domain escapes the remaining sets on the truncation is
/// located, and the escaping point is pulled back through approximating
/// sequences until it violates a premise outright.
pub fn property_b_refute(
    failures: &[AFailure],
    gamma: u64,
    registry: &Registry,
    tr: Truncation,
    ambient: Ambient,
) -> Result<Certificate> {
    if failures.is_empty() {
        return Err(Error::InvalidInput("a cover needs at least one set".into()));
    }
    for fail in failures {
        if !fail.set.is_closed() {
            return Err(Error::NotClosed(fail.set.to_string()));
        }
        require_registered(registry, &fail.f)?;
        require_registered(registry, &fail.g)?;
        if let (Some(hi), Some(lo)) = (max_rank(registry, &fail.f)?, min_rank(registry, &fail.g)?) {
            if hi >= lo {
                return Err(Error::InvalidInput(format!(
                    "failure for {} has max rank {hi} in F, not below {lo} in G",
                    fail.set
                )));
            }
        }
        if let Some(top) = max_rank(registry, &fail.g)? {
            if top >= gamma {
                return Err(Error::InvalidInput(format!("rank bound {gamma} does not exceed rank {top} in G")));
            }
        }
    }
    for (index, fail) in failures.iter().enumerate() {
        let lhs = fail.set.clone().inter(SetExpr::inter_of(&fail.f));
        if let Some(point) = truncated_violation(&lhs, &SetExpr::union_of(&fail.g), tr, ambient)? {
            return Err(Error::FailureInvalid { index, point });
        }
    }
    let params = |reg: Registry| Params {
        registry: reg,
        truncation: tr,
        ambient,
    };
    let all = SetExpr::Union(failures.iter().map(|f| f.set.clone()).collect());
    if let Some(point) = truncated_violation(&SetExpr::Whole, &all, tr, ambient)? {
        return Certificate::seal(
            params(registry.clone()),
            Payload::PropertyB {
                failures: failures.to_vec(),
                gamma,
                result: PropertyBOutcome::Counterexample { point },
            },
        );
    }

    let sorted = sort_failures(failures, registry)?;
    let n = sorted.len();
    let tail = |k: usize| SetExpr::Union(sorted[k.min(n + 1) - 1..].iter().map(|f| f.set.clone()).collect());

    let mut reg = registry.clone();
    let mut stages = Vec::with_capacity(n);
    let mut generated: Vec<Branch> = Vec::new();
    // domains[k] is the intersection after k stages
    let mut domains: Vec<Vec<Branch>> = vec![Vec::new()];
    for fail in &sorted {
        extend(&mut generated, &fail.f);
        let separators = fail
            .g
            .iter()
            .map(|b| {
                Ok(Separator {
                    branch: b.clone(),
                    position: find_separator(b, &generated)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let cover: Vec<Branch> = match separators.iter().map(|s| s.position).max() {
            Some(l) => find_cover(l, gamma, &mut reg, &generated)?
                .into_iter()
                .map(|e| e.branch)
                .collect(),
            None => Vec::new(),
        };
        extend(&mut generated, &cover);
        domains.push(generated.clone());
        stages.push(Stage { separators, cover });
    }

    let mut found = None;
    for k in 1..=n {
        if let Some(p) = truncated_violation(&SetExpr::inter_of(&domains[k]), &tail(k + 1), tr, ambient)? {
            found = Some((k, p));
            break;
        }
    }
    let (failing, failing_point) =
        found.ok_or_else(|| Error::Unknown("every stage stayed inside the remaining sets".into()))?;

    let mut trace = Vec::new();
    let mut base = failing_point.clone();
    let mut j = failing;
    let violation = loop {
        let positions: Vec<u64> = stages[j - 1].separators.iter().map(|s| s.position).collect();
        let rest = tail(j + 1);
        let seq = ApproxSequence::new(&base, ambient, &positions)?;
        let reach = rest.singletons().len() as u64 + 1;
        let (r, term) = (1..=reach)
            .map(|r| (r, seq.term(r)))
            .find(|(_, t)| !rest.contains(t))
            .ok_or_else(|| Error::Unknown(format!("approximations of {base} stay inside {rest}")))?;
        trace.push(TraceLink {
            failure: j,
            base: base.clone(),
            r,
            term: term.clone(),
        });
        if sorted[j - 1].set.contains(&term) {
            break Violation::Failure { index: j, point: term };
        }
        if j == 1 {
            break Violation::Cover { point: term };
        }
        base = term;
        j -= 1;
    };

    Certificate::seal(
        params(reg),
        Payload::PropertyB {
            failures: sorted,
            gamma,
            result: PropertyBOutcome::Contradiction {
                stages,
                held: failing - 1,
                failing_point,
                trace,
                violation,
            },
        },
    )
}

/// Sorts failures the way the refuter does: stably by the largest rank of
/// `F`.
pub fn sort_failures(failures: &[AFailure], registry: &Registry) -> Result<Vec<AFailure>> {
    let mut keyed = failures
        .iter()
        .map(|f| Ok((max_rank(registry, &f.f)?, f.clone())))
        .collect::<Result<Vec<(Option<u64>, AFailure)>>>()?;
    keyed.sort_by_key(|(k, _)| *k);
    Ok(keyed.into_iter().map(|(_, f)| f).collect())
}
