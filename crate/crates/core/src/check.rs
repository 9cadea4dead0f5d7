//! Independent certificate checker.
//!
//! The checker re-derives every obligation from the payload and discharges
//! it by direct point evaluation, truncated enumeration and branch
//! membership. It never calls the decision procedures or engines that
//! produced the certificate.

use crate::branch::{Branch, Registry, MAX_COVER_BOUND};
use crate::cert::{
    CertKind, Certificate, ChainWitness, Obligation, Params, Payload, PropertyBOutcome, Violation, SCHEMA_VERSION,
};
use crate::error::{Error, Result};
use crate::expr::SetExpr;
use crate::filter::{FilterBase, FilterVerdict};
use crate::point::{
    count_truncated, support_representatives, truncated_points, Ambient, Point, PointsOver, Truncation,
};

/// Largest number of points a single inclusion check may enumerate.
pub const MAX_CHECK_POINTS: u128 = 5_000_000;

/// Largest registry for which every subset is enumerated.
pub const MAX_SUBSET_REGISTRY: usize = 12;

fn reject(msg: impl Into<String>) -> Error {
    Error::Rejected(msg.into())
}

pub fn kind_of(payload: &Payload) -> CertKind {
    match payload {
        Payload::ExtendibilityA { .. } => CertKind::SeparatorWitness,
        Payload::ExtendibilityB { .. } => CertKind::ExceptionList,
        Payload::ContainmentDecreasing { .. } => CertKind::CoverSet,
        Payload::ContainmentFull { .. } => CertKind::InclusionChain,
        Payload::PropertyA { failure: None, .. } => CertKind::SeparatorWitness,
        Payload::PropertyA { failure: Some(_), .. } => CertKind::InclusionChain,
        Payload::PropertyB { result, .. } => match result {
            PropertyBOutcome::Counterexample { .. } => CertKind::CounterexamplePoint,
            PropertyBOutcome::Contradiction { .. } => CertKind::Contradiction,
        },
        Payload::ChainIncreasing { .. } | Payload::ChainDecreasing { .. } => CertKind::SeparatorWitness,
        Payload::FilterMember { verdict, .. } => match verdict {
            FilterVerdict::Refuted { .. } => CertKind::CounterexamplePoint,
            _ => CertKind::InclusionChain,
        },
        Payload::PseudoFinite { .. } => CertKind::ExceptionList,
        Payload::Nonredundancy { .. } => CertKind::SeparatorWitness,
    }
}

fn atom(b: &Branch) -> SetExpr {
    SetExpr::Atom(b.clone())
}

fn inter_of(bs: &[Branch]) -> SetExpr {
    SetExpr::Inter(bs.iter().map(atom).collect())
}

fn union_of(bs: &[Branch]) -> SetExpr {
    SetExpr::Union(bs.iter().map(atom).collect())
}

fn concat(parts: &[&[Branch]]) -> Vec<Branch> {
    let mut out: Vec<Branch> = Vec::new();
    for part in parts {
        for b in *part {
            if !out.contains(b) {
                out.push(b.clone());
            }
        }
    }
    out
}

fn require_registered(registry: &Registry, bs: &[Branch]) -> Result<()> {
    match bs.iter().find(|b| !registry.contains(b)) {
        Some(b) => Err(reject(format!("branch {b} is not in the registry"))),
        None => Ok(()),
    }
}

fn subsets<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    let n = items.len();
    let mut out = Vec::new();
    for k in 0..=n {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(idx.iter().map(|&i| items[i].clone()).collect());
            let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
                break;
            };
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    out
}

fn separator_point(position: u64) -> Result<Point> {
    Point::new([(position, position)]).map_err(|e| reject(e.to_string()))
}

fn verdict_obligations(base: &FilterBase, set: &SetExpr, verdict: &FilterVerdict, out: &mut Vec<Obligation>) -> Result<()> {
    let target = base.effective(set);
    match verdict {
        FilterVerdict::Proven { generators, .. } => {
            if generators.iter().any(|&i| i >= base.generators.len()) {
                return Err(reject("generator index out of range"));
            }
            out.push(Obligation::Subset {
                sub: base.intersection(generators),
                sup: target,
            });
        }
        FilterVerdict::Refuted { point } => {
            out.push(Obligation::Member {
                point: point.clone(),
                set: base.intersection(&base.all_indices()),
            });
            out.push(Obligation::NotMember {
                point: point.clone(),
                set: target,
            });
        }
        FilterVerdict::Unknown { .. } => {}
    }
    Ok(())
}

fn chain_of(registry: &Registry, chain: &[Branch]) -> Result<()> {
    let prefix: Vec<&Branch> = registry.branches().take(chain.len()).collect();
    if chain.len() > registry.len() || prefix.iter().zip(chain).any(|(a, b)| *a != b) {
        return Err(reject("chain is not the lowest-ranked part of the registry"));
    }
    Ok(())
}

fn check_witness_shape(w: &ChainWitness, member: usize, base: usize) -> Result<()> {
    if w.member != member || w.base != base {
        return Err(reject(format!(
            "expected witness for ({member}, {base}), found ({}, {})",
            w.member, w.base
        )));
    }
    if w.point != separator_point(w.position)? {
        return Err(reject("chain witness is not a separator point"));
    }
    Ok(())
}

/// Obligations implied by a payload, in canonical order. Structural
/// mismatches (wrong enumeration, unregistered branches, ...) are rejected
/// here.
pub fn expected_obligations(payload: &Payload, params: &Params) -> Result<Vec<Obligation>> {
    let reg = &params.registry;
    let mut out = Vec::new();
    match payload {
        Payload::ExtendibilityA { witnesses } => {
            if reg.len() < 2 {
                return Err(reject("extendibility needs at least two registered branches"));
            }
            if reg.len() > MAX_SUBSET_REGISTRY {
                return Err(Error::ResourceCap {
                    what: "registry size",
                    requested: reg.len() as u128,
                    cap: MAX_SUBSET_REGISTRY as u128,
                });
            }
            let mut expected = Vec::new();
            for alpha in reg.branches() {
                let others: Vec<Branch> = reg.branches().filter(|b| *b != alpha).cloned().collect();
                for g in subsets(&others) {
                    expected.push((alpha.clone(), g));
                }
            }
            if witnesses.len() != expected.len() {
                return Err(reject("witness list does not enumerate every (branch, subset) pair"));
            }
            for (w, (alpha, others)) in witnesses.iter().zip(&expected) {
                if &w.alpha != alpha || &w.others != others {
                    return Err(reject("witness list is out of order"));
                }
                if w.point != separator_point(w.position)? {
                    return Err(reject("witness is not a separator point"));
                }
                out.push(Obligation::Separates {
                    position: w.position,
                    branch: alpha.clone(),
                    others: others.clone(),
                });
                out.push(Obligation::Member {
                    point: w.point.clone(),
                    set: inter_of(others),
                });
                out.push(Obligation::NotMember {
                    point: w.point.clone(),
                    set: atom(alpha),
                });
            }
        }
        Payload::ExtendibilityB {
            set,
            alpha0,
            generators,
            separator,
            cover,
            exceptions,
        } => {
            require_registered(reg, &concat(&[std::slice::from_ref(alpha0), generators, cover]))?;
            if generators.contains(alpha0) {
                return Err(reject("the shifted branch may not generate its own hypothesis"));
            }
            let pool = concat(&[generators, cover]);
            if exceptions.iter().any(|b| !pool.contains(b)) {
                return Err(reject("exceptions must come from the generators and the cover"));
            }
            out.push(Obligation::Closed { set: set.clone() });
            out.push(Obligation::Subset {
                sub: inter_of(generators),
                sup: set.clone().union(atom(alpha0)),
            });
            out.push(Obligation::Separates {
                position: *separator,
                branch: alpha0.clone(),
                others: generators.clone(),
            });
            out.push(Obligation::Covers {
                upto: *separator,
                branches: pool.clone(),
            });
            out.push(Obligation::ClosureSchema {
                domain: inter_of(&pool),
                target: set.clone(),
                positions: vec![*separator],
                terms: set.singletons().len() as u64 + 1,
            });
            out.push(Obligation::Subset {
                sub: inter_of(exceptions),
                sup: set.clone(),
            });
            for beta in reg.branches().filter(|b| !exceptions.contains(b)) {
                out.push(Obligation::Subset {
                    sub: SetExpr::Inter(exceptions.iter().map(|g| atom(g).union(atom(beta))).collect()),
                    sup: set.clone().union(atom(beta)),
                });
            }
        }
        Payload::ContainmentDecreasing {
            f,
            g,
            gamma,
            separators,
            cover,
        } => {
            require_registered(reg, &concat(&[f, g, cover]))?;
            if f.iter().any(|a| g.contains(a)) {
                return Err(reject("F and G must be disjoint"));
            }
            if separators.len() != f.len() || separators.iter().zip(f).any(|(s, a)| &s.branch != a) {
                return Err(reject("separators must follow F"));
            }
            let positions: Vec<u64> = separators.iter().map(|s| s.position).collect();
            for s in separators {
                out.push(Obligation::Separates {
                    position: s.position,
                    branch: s.branch.clone(),
                    others: g.clone(),
                });
            }
            let base = concat(&[g, cover]);
            if let Some(&top) = positions.iter().max() {
                out.push(Obligation::Covers {
                    upto: top,
                    branches: base.clone(),
                });
            }
            for h in cover {
                out.push(Obligation::RankAtLeast {
                    branch: h.clone(),
                    bound: *gamma,
                });
            }
            out.push(Obligation::ClosureSchema {
                domain: inter_of(&base),
                target: inter_of(g).minus(union_of(f)),
                positions,
                terms: 1,
            });
        }
        Payload::ContainmentFull { f, g } => {
            require_registered(reg, &concat(&[f, g]))?;
            if params.ambient != Ambient::Product {
                return Err(reject("the escape construction lives in the product space"));
            }
            if f.iter().any(|a| g.contains(a)) {
                return Err(reject("F and G must be disjoint"));
            }
            out.push(Obligation::EscapeSchedule {
                domain: inter_of(f),
                target: inter_of(f).minus(union_of(g)),
                escapes: g.clone(),
                avoid: f.clone(),
                terms: 3,
            });
        }
        Payload::PropertyA { set, witnesses, failure } => {
            if reg.len() > MAX_SUBSET_REGISTRY {
                return Err(Error::ResourceCap {
                    what: "registry size",
                    requested: reg.len() as u128,
                    cap: MAX_SUBSET_REGISTRY as u128,
                });
            }
            let entries: Vec<Branch> = reg.branches().cloned().collect();
            let mut pairs = Vec::new();
            for (j, beta) in entries.iter().enumerate() {
                for fset in subsets(&entries[..j]) {
                    pairs.push((fset, beta.clone()));
                }
            }
            let done = witnesses.len();
            if done > pairs.len() || (failure.is_none() && done != pairs.len()) {
                return Err(reject("witness list does not match the (F, β) enumeration"));
            }
            for (w, (fset, beta)) in witnesses.iter().zip(&pairs) {
                if &w.f != fset || &w.beta != beta {
                    return Err(reject("witness list is out of order"));
                }
                out.push(Obligation::Member {
                    point: w.point.clone(),
                    set: set.clone().inter(inter_of(fset)),
                });
                out.push(Obligation::NotMember {
                    point: w.point.clone(),
                    set: atom(beta),
                });
            }
            if let Some(fail) = failure {
                let (fset, beta) = pairs
                    .get(done)
                    .ok_or_else(|| reject("failure lies beyond the enumeration"))?;
                if &fail.set != set || &fail.f != fset || fail.g != vec![beta.clone()] {
                    return Err(reject("failure does not name the next (F, β) pair"));
                }
                out.push(Obligation::RanksBelow {
                    lower: fail.f.clone(),
                    upper: fail.g.clone(),
                });
                out.push(Obligation::Subset {
                    sub: set.clone().inter(inter_of(&fail.f)),
                    sup: union_of(&fail.g),
                });
            }
        }
        Payload::PropertyB { failures, gamma, result } => {
            if failures.is_empty() {
                return Err(reject("a cover needs at least one set"));
            }
            for fail in failures {
                require_registered(reg, &concat(&[&fail.f, &fail.g]))?;
                out.push(Obligation::Closed { set: fail.set.clone() });
                out.push(Obligation::RanksBelow {
                    lower: fail.f.clone(),
                    upper: fail.g.clone(),
                });
                for b in &fail.g {
                    out.push(Obligation::RankBelow {
                        branch: b.clone(),
                        bound: *gamma,
                    });
                }
                out.push(Obligation::Subset {
                    sub: fail.set.clone().inter(inter_of(&fail.f)),
                    sup: union_of(&fail.g),
                });
            }
            let n = failures.len();
            let sets: Vec<SetExpr> = failures.iter().map(|f| f.set.clone()).collect();
            // tail(k) = Z_k ∪ ... ∪ Z_n, 1-based
            let tail = |k: usize| SetExpr::Union(sets[k.min(n + 1) - 1..].to_vec());
            match result {
                PropertyBOutcome::Counterexample { point } => {
                    out.push(Obligation::NotMember {
                        point: point.clone(),
                        set: tail(1),
                    });
                }
                PropertyBOutcome::Contradiction {
                    stages,
                    held,
                    failing_point,
                    trace,
                    violation,
                } => {
                    out.push(Obligation::MaxRankOrder {
                        sets: failures.iter().map(|f| f.f.clone()).collect(),
                    });
                    if stages.len() != n || *held >= n {
                        return Err(reject("stage count does not match the cover"));
                    }
                    out.push(Obligation::Subset {
                        sub: SetExpr::Whole,
                        sup: tail(1),
                    });
                    // stage k (1-based) separates G_k from
                    // F_1..F_k and H_1..H_{k-1}, then covers
                    let mut generated: Vec<Branch> = Vec::new();
                    let mut domains: Vec<Vec<Branch>> = vec![Vec::new()];
                    let mut positions: Vec<Vec<u64>> = Vec::new();
                    for (k, stage) in stages.iter().enumerate() {
                        let fail = &failures[k];
                        let with_f = concat(&[&generated, &fail.f]);
                        require_registered(reg, &stage.cover)?;
                        if stage.separators.len() != fail.g.len()
                            || stage.separators.iter().zip(&fail.g).any(|(s, b)| &s.branch != b)
                        {
                            return Err(reject("stage separators must follow G"));
                        }
                        for s in &stage.separators {
                            out.push(Obligation::Separates {
                                position: s.position,
                                branch: s.branch.clone(),
                                others: with_f.clone(),
                            });
                        }
                        let ls: Vec<u64> = stage.separators.iter().map(|s| s.position).collect();
                        generated = concat(&[&with_f, &stage.cover]);
                        if let Some(&top) = ls.iter().max() {
                            out.push(Obligation::Covers {
                                upto: top,
                                branches: generated.clone(),
                            });
                        }
                        for h in &stage.cover {
                            out.push(Obligation::RankAtLeast {
                                branch: h.clone(),
                                bound: *gamma,
                            });
                        }
                        positions.push(ls);
                        domains.push(generated.clone());
                    }
                    // domains[k] = C_{k+1}
                    for k in 1..=*held {
                        out.push(Obligation::Subset {
                            sub: inter_of(&domains[k]),
                            sup: tail(k + 1),
                        });
                    }
                    let failing = held + 1;
                    out.push(Obligation::Member {
                        point: failing_point.clone(),
                        set: inter_of(&domains[failing]),
                    });
                    out.push(Obligation::NotMember {
                        point: failing_point.clone(),
                        set: tail(failing + 1),
                    });
                    if trace.is_empty() {
                        return Err(reject("empty trace"));
                    }
                    let mut expect_base = failing_point.clone();
                    let mut expect_step = failing;
                    for (i, link) in trace.iter().enumerate() {
                        if link.failure != expect_step || link.base != expect_base || link.failure == 0 {
                            return Err(reject("trace links do not chain"));
                        }
                        let j = link.failure;
                        let fail = &failures[j - 1];
                        out.push(Obligation::TermOf {
                            base: link.base.clone(),
                            positions: positions[j - 1].clone(),
                            r: link.r,
                            point: link.term.clone(),
                        });
                        out.push(Obligation::Member {
                            point: link.term.clone(),
                            set: inter_of(&domains[j - 1])
                                .inter(inter_of(&fail.f))
                                .minus(union_of(&fail.g)),
                        });
                        out.push(Obligation::NotMember {
                            point: link.term.clone(),
                            set: tail(j + 1),
                        });
                        if i + 1 < trace.len() {
                            out.push(Obligation::NotMember {
                                point: link.term.clone(),
                                set: fail.set.clone(),
                            });
                            expect_base = link.term.clone();
                            expect_step = j - 1;
                        }
                    }
                    let last = trace.last().expect("nonempty");
                    match violation {
                        Violation::Failure { index, point } => {
                            if *index != last.failure || point != &last.term {
                                return Err(reject("violation does not match the trace"));
                            }
                            out.push(Obligation::Member {
                                point: point.clone(),
                                set: failures[index - 1].set.clone(),
                            });
                        }
                        Violation::Cover { point } => {
                            if last.failure != 1 || point != &last.term {
                                return Err(reject("violation does not match the trace"));
                            }
                            out.push(Obligation::NotMember {
                                point: point.clone(),
                                set: tail(1),
                            });
                        }
                    }
                }
            }
        }
        Payload::ChainIncreasing { chain, witnesses } => {
            chain_of(reg, chain)?;
            out.push(Obligation::RanksIncreasing { branches: chain.clone() });
            let s = chain.len();
            let pairs: Vec<(usize, usize)> = (0..s).flat_map(|j| (j..s).map(move |i| (i, j))).collect();
            if witnesses.len() != pairs.len() {
                return Err(reject("chain witnesses do not cover every non-member pair"));
            }
            for (w, &(i, j)) in witnesses.iter().zip(&pairs) {
                check_witness_shape(w, i, j)?;
                out.push(Obligation::Separates {
                    position: w.position,
                    branch: chain[i].clone(),
                    others: chain[..j].to_vec(),
                });
                out.push(Obligation::Member {
                    point: w.point.clone(),
                    set: inter_of(&chain[..j]),
                });
                out.push(Obligation::NotMember {
                    point: w.point.clone(),
                    set: atom(&chain[i]),
                });
            }
        }
        Payload::ChainDecreasing { chain, witnesses } => {
            chain_of(reg, chain)?;
            out.push(Obligation::RanksIncreasing { branches: chain.clone() });
            let s = chain.len();
            let pairs: Vec<(usize, usize)> = (1..s).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
            if witnesses.len() != pairs.len() {
                return Err(reject("chain witnesses do not cover every non-member pair"));
            }
            let entries: Vec<Branch> = reg.branches().cloned().collect();
            for (w, &(i, j)) in witnesses.iter().zip(&pairs) {
                check_witness_shape(w, i, j)?;
                let tail = entries[j..].to_vec();
                out.push(Obligation::Separates {
                    position: w.position,
                    branch: chain[i].clone(),
                    others: tail.clone(),
                });
                out.push(Obligation::Member {
                    point: w.point.clone(),
                    set: inter_of(&tail),
                });
                out.push(Obligation::NotMember {
                    point: w.point.clone(),
                    set: atom(&chain[i]),
                });
            }
        }
        Payload::FilterMember { base, set, verdict } => {
            verdict_obligations(base, set, verdict, &mut out)?;
        }
        Payload::PseudoFinite {
            family,
            set,
            verdicts,
            exceptions,
        } => {
            if family.len() != verdicts.len() {
                return Err(reject("one verdict per base is required"));
            }
            let expected: Vec<usize> = (0..verdicts.len()).filter(|&i| !verdicts[i].is_proven()).collect();
            if &expected != exceptions || expected.len() == verdicts.len() {
                return Err(reject("exception list does not match the verdicts"));
            }
            for (b, v) in family.iter().zip(verdicts) {
                verdict_obligations(b, set, v, &mut out)?;
            }
        }
        Payload::Nonredundancy {
            family,
            target,
            witnesses,
            union,
            member_verdicts,
            target_verdict,
        } => {
            if witnesses.is_empty() || *target >= family.len() {
                return Err(reject("malformed witness family"));
            }
            let expected_union = if witnesses.len() == 1 {
                witnesses[0].set.clone()
            } else {
                SetExpr::Union(witnesses.iter().map(|w| w.set.clone()).collect())
            };
            if &expected_union != union {
                return Err(reject("union does not match the witnesses"));
            }
            let others: Vec<usize> = (0..family.len()).filter(|i| i != target).collect();
            if member_verdicts.len() != others.len()
                || member_verdicts.iter().zip(&others).any(|(v, &i)| v.index != i || !v.verdict.is_proven())
            {
                return Err(reject("union must be proven in every other base"));
            }
            if !target_verdict.is_refuted() {
                return Err(reject("union must be refuted in the target base"));
            }
            for v in member_verdicts {
                verdict_obligations(&family[v.index], union, &v.verdict, &mut out)?;
            }
            verdict_obligations(&family[*target], union, target_verdict, &mut out)?;
        }
    }
    Ok(out)
}

fn rank(reg: &Registry, b: &Branch) -> Result<u64> {
    reg.rank_of(b)
        .ok_or_else(|| reject(format!("branch {b} is not in the registry")))
}

/// Points an inclusion or schema check runs over: the truncated points of
/// `domain` plus every singleton mentioned by the sets involved.
fn check_points(domain: &SetExpr, others: &[&SetExpr], tr: Truncation, ambient: Ambient) -> Result<Vec<Point>> {
    let singleton_free = !domain.has_singletons() && others.iter().all(|e| !e.has_singletons());
    let mut points: Vec<Point> = if ambient == Ambient::Product && singleton_free {
        support_representatives(tr, ambient)
    } else {
        let n = count_truncated(tr, ambient);
        if n > MAX_CHECK_POINTS {
            return Err(Error::ResourceCap {
                what: "checked point count",
                requested: n,
                cap: MAX_CHECK_POINTS,
            });
        }
        match domain.as_a_form() {
            Some(atoms) => {
                let pool = (1..=tr.t).filter(|&n| atoms.iter().all(|a| !a.contains(n))).collect();
                PointsOver::new(pool, tr.v, ambient).collect()
            }
            None => truncated_points(tr, ambient).collect(),
        }
    };
    for s in domain.singletons().into_iter().chain(others.iter().flat_map(|e| e.singletons())) {
        if s.is_valid(ambient) && !points.contains(&s) {
            points.push(s);
        }
    }
    Ok(points)
}

fn bumped(q: &Point, positions: &[u64], r: u64) -> Result<Point> {
    let mut positions = positions.to_vec();
    positions.sort_unstable();
    positions.dedup();
    if let Some(&l) = positions.iter().find(|&&l| l == 0 || q.value(l).is_some()) {
        return Err(reject(format!("position {l} cannot be bumped in {q}")));
    }
    let offset = positions
        .iter()
        .copied()
        .chain(q.support())
        .chain(q.coords().iter().map(|&(_, v)| v))
        .max()
        .unwrap_or(0);
    let mut coords: Vec<(u64, u64)> = q.coords().to_vec();
    coords.extend(positions.into_iter().map(|l| (l, offset + r)));
    Point::new(coords).map_err(|e| reject(e.to_string()))
}

fn escape_position(beta: &Branch, avoid: &[Branch], depth: u64) -> Result<u64> {
    beta.elements()
        .find(|&n| n > depth && avoid.iter().all(|a| !a.contains(n)))
        .ok_or_else(|| reject(format!("no escape position for {beta} above {depth}")))
}

/// Discharges one obligation.
pub fn discharge(ob: &Obligation, params: &Params) -> Result<()> {
    let reg = &params.registry;
    let tr = params.truncation;
    let ambient = params.ambient;
    let fail = |msg: String| Err(reject(msg));
    match ob {
        Obligation::Member { point, set } => {
            if !point.is_valid(ambient) {
                return fail(format!("{point} is not a valid {ambient} point"));
            }
            if !set.contains(point) {
                return fail(format!("{point} is not in {set}"));
            }
        }
        Obligation::NotMember { point, set } => {
            if !point.is_valid(ambient) {
                return fail(format!("{point} is not a valid {ambient} point"));
            }
            if set.contains(point) {
                return fail(format!("{point} is in {set}"));
            }
        }
        Obligation::Subset { sub, sup } => {
            for q in check_points(sub, &[sup], tr, ambient)? {
                if sub.contains(&q) && !sup.contains(&q) {
                    return fail(format!("{q} is in {sub} but not in {sup}"));
                }
            }
        }
        Obligation::Covers { upto, branches } => {
            if *upto > MAX_COVER_BOUND {
                return Err(Error::ResourceCap {
                    what: "cover bound",
                    requested: (*upto).into(),
                    cap: MAX_COVER_BOUND.into(),
                });
            }
            if let Some(n) = (1..=*upto).find(|&n| branches.iter().all(|b| !b.contains(n))) {
                return fail(format!("{n} is not covered"));
            }
        }
        Obligation::Separates {
            position,
            branch,
            others,
        } => {
            if *position == 0 || !branch.contains(*position) {
                return fail(format!("{position} is not in E of {branch}"));
            }
            if let Some(o) = others.iter().find(|o| o.contains(*position)) {
                return fail(format!("{position} is also in E of {o}"));
            }
        }
        Obligation::RankAtLeast { branch, bound } => {
            if rank(reg, branch)? < *bound {
                return fail(format!("rank of {branch} is below {bound}"));
            }
        }
        Obligation::RankBelow { branch, bound } => {
            if rank(reg, branch)? >= *bound {
                return fail(format!("rank of {branch} is not below {bound}"));
            }
        }
        Obligation::RanksIncreasing { branches } => {
            let ranks = branches.iter().map(|b| rank(reg, b)).collect::<Result<Vec<_>>>()?;
            if ranks.windows(2).any(|w| w[0] >= w[1]) {
                return fail("ranks are not increasing".into());
            }
        }
        Obligation::RanksBelow { lower, upper } => {
            let lo = lower.iter().map(|b| rank(reg, b)).collect::<Result<Vec<_>>>()?;
            let hi = upper.iter().map(|b| rank(reg, b)).collect::<Result<Vec<_>>>()?;
            if let (Some(a), Some(b)) = (lo.iter().max(), hi.iter().min()) {
                if a >= b {
                    return fail(format!("max rank {a} is not below min rank {b}"));
                }
            }
        }
        Obligation::MaxRankOrder { sets } => {
            let maxima = sets
                .iter()
                .map(|s| Ok(s.iter().map(|b| rank(reg, b)).collect::<Result<Vec<_>>>()?.into_iter().max()))
                .collect::<Result<Vec<Option<u64>>>>()?;
            if maxima.windows(2).any(|w| w[0] > w[1]) {
                return fail("largest ranks are not sorted".into());
            }
        }
        Obligation::Closed { set } => {
            if !set.is_closed() {
                return fail(format!("{set} is not syntactically closed"));
            }
        }
        Obligation::ClosureSchema {
            domain,
            target,
            positions,
            terms,
        } => {
            if domain.as_a_form().is_none() {
                return fail("schema domain must be an intersection of atoms".into());
            }
            for q in check_points(domain, &[target], tr, ambient)? {
                if !domain.contains(&q) {
                    continue;
                }
                if positions.is_empty() {
                    if !target.contains(&q) {
                        return fail(format!("{q} is not in {target}"));
                    }
                    continue;
                }
                for r in 1..=*terms {
                    let t = bumped(&q, positions, r)?;
                    if !t.is_valid(ambient) {
                        return fail(format!("term {t} for {q} is not valid"));
                    }
                    if !target.contains(&t) {
                        return fail(format!("term {t} for {q} is not in {target}"));
                    }
                }
            }
        }
        Obligation::EscapeSchedule {
            domain,
            target,
            escapes,
            avoid,
            terms,
        } => {
            if ambient != Ambient::Product || domain.as_a_form().is_none() {
                return fail("escape schedules need an atom intersection in the product space".into());
            }
            for q in check_points(domain, &[target], tr, ambient)? {
                if !domain.contains(&q) {
                    continue;
                }
                for r in 1..=*terms {
                    let mut t = q.clone();
                    for beta in escapes {
                        let l = escape_position(beta, avoid, tr.t + r)?;
                        t = t.with(l, 1);
                    }
                    if !target.contains(&t) {
                        return fail(format!("escape term {t} for {q} is not in {target}"));
                    }
                }
            }
        }
        Obligation::TermOf {
            base,
            positions,
            r,
            point,
        } => {
            if *r == 0 || &bumped(base, positions, *r)? != point {
                return fail(format!("{point} is not term {r} of the sequence at {base}"));
            }
        }
    }
    Ok(())
}

/// Checks a parsed certificate: schema, digest, derived steps, and every
/// obligation.
pub fn check_certificate(cert: &Certificate) -> Result<()> {
    if cert.schema != SCHEMA_VERSION {
        return Err(reject(format!("unsupported schema {}", cert.schema)));
    }
    if cert.digest != cert.compute_digest()? {
        return Err(reject("digest mismatch"));
    }
    if cert.kind != kind_of(&cert.payload) {
        return Err(reject("kind does not match the payload"));
    }
    let expected = expected_obligations(&cert.payload, &cert.params)?;
    if expected != cert.steps {
        return Err(reject("steps differ from the obligations implied by the payload"));
    }
    for ob in &cert.steps {
        discharge(ob, &cert.params)?;
    }
    Ok(())
}

/// Parses and checks certificate text. The text must be exactly the
/// canonical serialization, so any altered byte is rejected.
pub fn check_json(text: &str) -> Result<Certificate> {
    let mut cert: Certificate =
        serde_json::from_str(text).map_err(|e| reject(format!("malformed certificate: {e}")))?;
    let canonical = cert.to_json()?;
    if canonical != text.trim_end_matches('\n') || text.len() > canonical.len() + 1 {
        return Err(reject("certificate text is not in canonical form"));
    }
    check_certificate(&cert)?;
    cert.verified = true;
    Ok(cert)
}
