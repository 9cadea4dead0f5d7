//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use zwork_core::branch::{decode_code, encode_word, intersection_exact, Branch, Registry};
use zwork_core::cert::{AFailure, Certificate, Payload, PropertyBOutcome, Violation};
use zwork_core::check::{check_certificate, check_json};
use zwork_core::closure::{closure_member, ClosureVerdict, ClosureWitness};
use zwork_core::decide::a_form_contained;
use zwork_core::engines::*;
use zwork_core::expr::eval_setexpr;
use zwork_core::filter::{filter_member, FilterBase, FilterVerdict};
use zwork_core::point::{enumerate_truncated, Ambient, Point, PointsOver, Truncation};
use zwork_core::SetExpr;

const XI: Ambient = Ambient::Prototype;
const PI: Ambient = Ambient::Product;
const DEFAULT: Truncation = Truncation { t: 8, v: 10 };

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, detail: String) -> Outcome {
    let took = start.elapsed();
    if took > limit {
        Err(format!("{detail}; took {took:.2?}, limit {limit:?}"))
    } else {
        Ok(format!("{detail}; {took:.2?}"))
    }
}

fn random_word(rng: &mut ChaCha8Rng, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.gen_range(1..=2u8)).collect()
}

fn random_branch(rng: &mut ChaCha8Rng) -> Branch {
    let pre = rng.gen_range(0..=5);
    let per = rng.gen_range(1..=3);
    Branch::new(random_word(rng, pre), random_word(rng, per)).unwrap()
}

fn random_registry(rng: &mut ChaCha8Rng, size: usize) -> Registry {
    let mut out: Vec<Branch> = Vec::new();
    while out.len() < size {
        let b = random_branch(rng);
        if !out.contains(&b) {
            out.push(b);
        }
    }
    Registry::from_branches(out).unwrap()
}

fn pick(rng: &mut ChaCha8Rng, pool: &[Branch], max: usize) -> Vec<Branch> {
    let k = rng.gen_range(0..=max.min(pool.len()));
    pool.choose_multiple(rng, k).cloned().collect()
}

fn b(s: &str) -> Branch {
    s.parse().unwrap()
}

// Words of length 1..=16 listed shortlex are exactly the codes 1, 2, 3, ...
fn codec() -> Outcome {
    let start = Instant::now();
    let mut next = 1u64;
    for len in 1..=16usize {
        for bits in 0u64..1 << len {
            let word: Vec<u8> = (0..len).map(|i| 1 + ((bits >> (len - 1 - i)) & 1) as u8).collect();
            let code = encode_word(&word).map_err(|e| e.to_string())?;
            ensure(code == next, || format!("{word:?} coded {code}, expected {next}"))?;
            ensure(decode_code(code).map_err(|e| e.to_string())? == word, || format!("decode {code}"))?;
            next += 1;
        }
    }
    for n in 1..=100_000u64 {
        let w = decode_code(n).map_err(|e| e.to_string())?;
        ensure(encode_word(&w).map_err(|e| e.to_string())? == n, || format!("round trip of {n}"))?;
    }
    within(start, Duration::from_secs(2), format!("{} words, 100000 codes", next - 1))
}

fn almost_disjointness() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for case in 0..200 {
        let d = rng.gen_range(0..=14usize);
        let common = random_word(&mut rng, d);
        let mut sides = [common.clone(), common];
        sides[0].push(1);
        sides[1].push(2);
        let [x, y] = sides.map(|mut w| {
            let tail = rng.gen_range(0..=4);
            w.extend(random_word(&mut rng, tail));
            let per = rng.gen_range(1..=3);
            Branch::new(w, random_word(&mut rng, per)).unwrap()
        });
        let exact = intersection_exact(&x, &y).map_err(|e| e.to_string())?;
        ensure(exact.len() == d, || format!("case {case}: |{x} ∩ {y}| = {}, depth {d}", exact.len()))?;
        let bound = 1u64 << (d + 2);
        let brute: Vec<u64> = (1..=bound).filter(|&n| x.contains(n) && y.contains(n)).collect();
        ensure(brute == exact, || format!("case {case}: {x} {y}: {brute:?} vs {exact:?}"))?;
    }
    within(start, Duration::from_secs(5), "200 pairs, 0 mismatches".into())
}

fn prototype_witnesses() -> Outcome {
    let start = Instant::now();
    let pool: Vec<Branch> = [":1", ":2", "1:2", "2:1", "12:1", "21:2", "112:1", "221:12"]
        .iter()
        .map(|s| b(s))
        .collect();
    let mut registries = 0;
    let mut checked = 0;
    for mask in 0u32..1 << pool.len() {
        let size = mask.count_ones();
        if !(2..=6).contains(&size) {
            continue;
        }
        let members: Vec<Branch> = (0..pool.len()).filter(|i| mask >> i & 1 == 1).map(|i| pool[i].clone()).collect();
        let reg = Registry::from_branches(members).unwrap();
        let cert = check_extendibility_a(&reg, DEFAULT, XI).map_err(|e| e.to_string())?;
        check_certificate(&cert).map_err(|e| e.to_string())?;
        let Payload::ExtendibilityA { witnesses } = &cert.payload else {
            return Err("wrong payload".into());
        };
        let mut seen = BTreeSet::new();
        for w in witnesses.iter().filter(|w| w.others.len() <= 4) {
            let inside = eval_setexpr(&w.point, XI, &SetExpr::inter_of(&w.others)).map_err(|e| e.to_string())?;
            let outside = !eval_setexpr(&w.point, XI, &SetExpr::atom(&w.alpha)).map_err(|e| e.to_string())?;
            ensure(inside && outside, || format!("{} against {:?}: {}", w.alpha, w.others, w.point))?;
            ensure(w.point == Point::new([(w.position, w.position)]).unwrap(), || "not {l:l}".into())?;
            seen.insert((w.alpha.clone(), w.others.clone()));
            checked += 1;
        }
        // every (α, G) with |G| <= 4 appears
        let n = reg.len();
        let expected: usize = n * (0..=4.min(n - 1)).map(|k| binom(n - 1, k)).sum::<usize>();
        ensure(seen.len() == expected, || format!("{} of {expected} pairs", seen.len()))?;
        registries += 1;
    }
    within(
        start,
        Duration::from_secs(10),
        format!("{registries} registries, {checked} witnesses"),
    )
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn lemma_4_1_case(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let reg = random_registry(rng, 8);
    let entries: Vec<Branch> = reg.branches().cloned().collect();
    let f = pick(rng, &entries, 3);
    let rest: Vec<Branch> = entries.iter().filter(|x| !f.contains(x)).cloned().collect();
    let g = pick(rng, &rest, 3);
    let gamma = rng.gen_range(0..=12u64);
    let cert = containment_decreasing(&f, &g, gamma, &reg, DEFAULT, XI).map_err(|e| e.to_string())?;
    check_certificate(&cert).map_err(|e| format!("checker: {e}"))?;
    let Payload::ContainmentDecreasing { cover, separators, .. } = &cert.payload else {
        return Err("wrong payload".into());
    };
    let ranks = &cert.params.registry;
    ensure(cover.iter().all(|h| ranks.rank_of(h).is_some_and(|r| r >= gamma)), || {
        format!("cover {cover:?} below rank {gamma}")
    })?;
    let mut l = 0;
    for (alpha, s) in f.iter().zip(separators) {
        // least element of E_α outside every E_β, β ∈ G
        let least = alpha.elements().find(|&n| g.iter().all(|x| !x.contains(n))).unwrap();
        ensure(s.position == least, || format!("separator {} for {alpha}, least is {least}", s.position))?;
        l = l.max(least);
    }
    let mut domain_atoms = g.clone();
    domain_atoms.extend(cover.iter().cloned());
    for n in 1..=l {
        ensure(domain_atoms.iter().any(|x| x.contains(n)), || format!("{n} not covered"))?;
    }
    let domain = SetExpr::inter_of(&domain_atoms);
    let target = SetExpr::inter_of(&g).minus(SetExpr::union_of(&f));
    let pool: Vec<u64> = (1..=DEFAULT.t).filter(|&n| domain_atoms.iter().all(|x| !x.contains(n))).collect();
    let mut points = 0;
    for q in PointsOver::new(pool, DEFAULT.v, XI) {
        ensure(domain.contains(&q), || format!("{q} outside the domain"))?;
        match closure_member(&q, XI, &target).map_err(|e| e.to_string())? {
            ClosureVerdict::Proven(ClosureWitness::Itself) => {
                ensure(eval_setexpr(&q, XI, &target).unwrap_or(false), || format!("{q} claimed inside"))?
            }
            ClosureVerdict::Proven(ClosureWitness::Sequence(s)) => {
                ensure(s.all_terms_in(&target), || format!("sequence at {q} leaves the target"))?;
                for t in s.terms(3) {
                    ensure(eval_setexpr(&t, XI, &target).unwrap_or(false), || format!("term {t} at {q}"))?;
                }
            }
            other => return Err(format!("{q}: {other:?} for F={f:?} G={g:?}")),
        }
        points += 1;
    }
    Ok(points)
}

fn lemma_4_1() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut points = 0;
    for case in 0..100 {
        points += lemma_4_1_case(&mut rng).map_err(|e| format!("case {case}: {e}"))?;
    }
    within(start, Duration::from_secs(60), format!("100 cases, {points} closure verdicts"))
}

fn lemma_4_4() -> Outcome {
    let start = Instant::now();
    let tr = DEFAULT;
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let mut terms = 0;
    for case in 0..100 {
        let reg = random_registry(&mut rng, 8);
        let entries: Vec<Branch> = reg.branches().cloned().collect();
        let f = pick(&mut rng, &entries, 3);
        let rest: Vec<Branch> = entries.iter().filter(|x| !f.contains(x)).cloned().collect();
        let g = pick(&mut rng, &rest, 3);
        let cert = containment_full_product(&f, &g, &reg, tr).map_err(|e| e.to_string())?;
        check_certificate(&cert).map_err(|e| format!("case {case}: checker: {e}"))?;
        let kept = SetExpr::inter_of(&f);
        let target = kept.clone().minus(SetExpr::union_of(&g));
        // the sets ignore values, so one point per support with random
        // values stands for all (V+1)^T truncated points
        for mask in 0u32..1 << tr.t {
            let support: Vec<u64> = (1..=tr.t).filter(|&n| mask >> (n - 1) & 1 == 1).collect();
            let q = Point::new(support.iter().map(|&n| (n, rng.gen_range(1..=tr.v)))).unwrap();
            if !kept.contains(&q) {
                continue;
            }
            for r in 1..=3u64 {
                let depth = tr.t + r;
                let mut t = q.clone();
                for beta in &g {
                    let l = (depth + 1..)
                        .find(|&n| beta.contains(n) && f.iter().all(|a| !a.contains(n)))
                        .unwrap();
                    t = t.with(l, 1);
                }
                ensure(eval_setexpr(&t, PI, &target).unwrap_or(false), || {
                    format!("case {case}: term {t} of {q} not in {target}")
                })?;
                ensure(q.coords().iter().all(|&(p, v)| t.value(p) == Some(v)), || "term moved q".into())?;
                ensure(
                    t.coords().iter().all(|&(p, _)| p > depth || q.value(p).is_some()),
                    || "term differs below depth".into(),
                )?;
                terms += 1;
            }
        }
    }
    within(start, Duration::from_secs(60), format!("100 cases, {terms} escape terms"))
}

fn fail(set: &str, f: &[&str], g: &[&str]) -> AFailure {
    AFailure {
        set: set.parse().unwrap(),
        f: f.iter().map(|s| b(s)).collect(),
        g: g.iter().map(|s| b(s)).collect(),
    }
}

fn property_b_fixtures() -> Vec<Vec<AFailure>> {
    vec![
        // false covers
        vec![fail("N::1", &[], &[":1"])],
        vec![fail("N::1", &[], &[":1"]), fail("N::2", &[], &[":2"])],
        vec![fail("(union N::1 N::2)", &[], &[":1", ":2"])],
        vec![fail("(union {} N::1)", &[], &[":1"]), fail("N:1:2", &[], &["1:2"])],
        vec![
            fail("N::1", &[], &[":1"]),
            fail("N::2", &[], &[":2"]),
            fail("N:1:2", &[], &["1:2"]),
            fail("N:2:1", &[], &["2:1"]),
        ],
        // covers the truncation cannot see through
        vec![fail("whole", &[":1"], &["111:2"])],
        vec![fail("whole", &[":2"], &["222:1"])],
        vec![fail("N::2", &[], &[":2"]), fail("whole", &[":1"], &["111:2"])],
        vec![
            fail("N::1", &[], &[":1"]),
            fail("N::2", &[], &[":2"]),
            fail("whole", &[":1"], &["111:2"]),
        ],
        vec![
            fail("N::1", &[], &[":1"]),
            fail("N::2", &[], &[":2"]),
            fail("N:1:2", &[], &["1:2"]),
            fail("whole", &[":2"], &["222:1"]),
        ],
        vec![fail("(union N::2 {1:1})", &[], &[":2"]), fail("whole", &[":1", "2:1"], &["111:2"])],
        vec![fail("whole", &[":1"], &["111:2"]), fail("whole", &[":2"], &["222:1"])],
    ]
}

fn lemma_5_3() -> Outcome {
    let start = Instant::now();
    let reg = Registry::from_branches([":1", ":2", "1:2", "2:1", "111:2", "222:1"].iter().map(|s| b(s))).unwrap();
    let gamma = 6;
    let points = enumerate_truncated(DEFAULT, XI);
    let (mut contradictions, mut counterexamples) = (0, 0);
    let fixtures = property_b_fixtures();
    for (i, cover) in fixtures.iter().enumerate() {
        // the failures hold on the truncation
        for fl in cover {
            let lhs = fl.set.clone().inter(SetExpr::inter_of(&fl.f));
            let rhs = SetExpr::union_of(&fl.g);
            ensure(points.iter().all(|q| !lhs.contains(q) || rhs.contains(q)), || {
                format!("fixture {i}: failure for {} is not valid", fl.set)
            })?;
        }
        let cert = property_b_refute(cover, gamma, &reg, DEFAULT, XI).map_err(|e| format!("fixture {i}: {e}"))?;
        check_certificate(&cert).map_err(|e| format!("fixture {i}: checker: {e}"))?;
        let Payload::PropertyB { failures, result, .. } = &cert.payload else {
            return Err("wrong payload".into());
        };
        let union = SetExpr::Union(cover.iter().map(|f| f.set.clone()).collect());
        let truncated_cover = points.iter().all(|q| union.contains(q));
        match result {
            PropertyBOutcome::Counterexample { point } => {
                ensure(!truncated_cover, || format!("fixture {i}: counterexample for a true cover"))?;
                ensure(!union.contains(point) && point.is_valid(XI), || format!("fixture {i}: {point}"))?;
                counterexamples += 1;
            }
            PropertyBOutcome::Contradiction { violation, .. } => {
                ensure(truncated_cover, || format!("fixture {i}: contradiction for a false cover"))?;
                match violation {
                    Violation::Cover { point } => {
                        ensure(!union.contains(point) && point.is_valid(XI), || format!("fixture {i}: {point}"))?
                    }
                    Violation::Failure { index, point } => {
                        let fl = &failures[index - 1];
                        let lhs = fl.set.clone().inter(SetExpr::inter_of(&fl.f));
                        ensure(
                            point.is_valid(XI) && lhs.contains(point) && !SetExpr::union_of(&fl.g).contains(point),
                            || format!("fixture {i}: {point} does not break failure {index}"),
                        )?
                    }
                }
                contradictions += 1;
            }
        }
    }
    ensure(fixtures.len() >= 10, || "too few fixtures".into())?;
    within(
        start,
        Duration::from_secs(120),
        format!(
            "{} fixtures: {contradictions} contradictions, {counterexamples} counterexamples",
            fixtures.len()
        ),
    )
}

fn chains() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(52);
    for case in 0..10 {
        let reg = random_registry(&mut rng, 8);
        let inc = increasing_chain_engine(&reg, 8, DEFAULT, XI).map_err(|e| e.to_string())?;
        let dec = decreasing_chain_engine(&reg, 8, DEFAULT, XI).map_err(|e| e.to_string())?;
        for report in [&inc, &dec] {
            check_certificate(&report.certificate).map_err(|e| format!("case {case}: checker: {e}"))?;
            ensure(report.bases.len() == 8, || "chain length".into())?;
        }
        let witness = |c: &Certificate, member: usize, base: usize| match &c.payload {
            Payload::ChainIncreasing { witnesses, .. } | Payload::ChainDecreasing { witnesses, .. } => witnesses
                .iter()
                .find(|w| w.member == member && w.base == base)
                .map(|w| w.point.clone()),
            _ => None,
        };
        for j in 0..7 {
            // B_j ⊊ B_{j+1}: N_{chain[j]} is new
            let p = witness(&inc.certificate, j, j).ok_or("missing increasing witness")?;
            let all = inc.bases[j].intersection(&inc.bases[j].all_indices());
            ensure(all.contains(&p) && !SetExpr::atom(&inc.chain[j]).contains(&p), || format!("inc {j}: {p}"))?;
            // F_{j+1} ⊊ F_j: N_{chain[j]} drops out
            let p = witness(&dec.certificate, j, j + 1).ok_or("missing decreasing witness")?;
            let all = dec.bases[j + 1].intersection(&dec.bases[j + 1].all_indices());
            ensure(all.contains(&p) && !SetExpr::atom(&dec.chain[j]).contains(&p), || format!("dec {j}: {p}"))?;
        }
        for i in 0..8 {
            for j in 0..8 {
                let atom = SetExpr::atom(&inc.chain[i]);
                let up = filter_member(&inc.bases[j], &atom, DEFAULT, XI).map_err(|e| e.to_string())?;
                let down = filter_member(&dec.bases[j], &atom, DEFAULT, XI).map_err(|e| e.to_string())?;
                ensure(up.is_proven() == (i < j), || format!("case {case}: N_{i} in B_{j}: {up:?}"))?;
                ensure(down.is_proven() == (i >= j), || format!("case {case}: N_{i} in F_{j}: {down:?}"))?;
                ensure(up.is_proven() || up.is_refuted(), || "undecided".into())?;
                ensure(down.is_proven() || down.is_refuted(), || "undecided".into())?;
            }
        }
    }
    within(start, Duration::from_secs(60), "10 registries of 8, both chains strict".into())
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let tr = Truncation::new(6, 8);
    let points = enumerate_truncated(tr, XI);
    let reg: Vec<Branch> = [":1", ":2", "12:1", "21:2", "1:2"].iter().map(|s| b(s)).collect();
    let mut sets: Vec<Vec<Branch>> = Vec::new();
    for mask in 0u32..32 {
        if mask.count_ones() <= 3 {
            sets.push((0..5).filter(|i| mask >> i & 1 == 1).map(|i| reg[i].clone()).collect());
        }
    }
    let mut disagreements = Vec::new();
    let mut contradictions = 0;
    let mut pairs = 0;
    for u in &sets {
        for v in &sets {
            pairs += 1;
            let (a, c) = (SetExpr::inter_of(u), SetExpr::inter_of(v));
            let truncated = points.iter().all(|q| !a.contains(q) || c.contains(q));
            if a_form_contained(u, v) != truncated {
                disagreements.push(format!("{a} ⊆ {c}: exact {}, truncated {truncated}", a_form_contained(u, v)));
            }
            let base = FilterBase::new(vec![a.clone()], XI).map_err(|e| e.to_string())?;
            match filter_member(&base, &c, tr, XI).map_err(|e| e.to_string())? {
                FilterVerdict::Proven { .. } if !truncated => contradictions += 1,
                FilterVerdict::Refuted { point } if tr.contains(&point) && c.contains(&point) => contradictions += 1,
                _ => {}
            }
        }
    }
    let detail = format!(
        "{pairs} pairs: {} exact/truncated disagreements, {contradictions} verdict contradictions",
        disagreements.len()
    );
    if disagreements.is_empty() && contradictions == 0 {
        within(start, Duration::from_secs(60), detail)
    } else {
        Err(format!(
            "{detail}; first: {}; positions up to 6 only see the first two symbols, and five branches cannot all differ there",
            disagreements.first().cloned().unwrap_or_default()
        ))
    }
}

fn certificates(rng: &mut ChaCha8Rng, tr: Truncation) -> Result<Certificate, String> {
    let size = rng.gen_range(2..=5);
    let reg = random_registry(rng, size);
    let entries: Vec<Branch> = reg.branches().cloned().collect();
    let f = pick(rng, &entries, 2);
    let rest: Vec<Branch> = entries.iter().filter(|x| !f.contains(x)).cloned().collect();
    let g = pick(rng, &rest, 2);
    let res = match rng.gen_range(0..7) {
        0 => check_extendibility_a(&reg, tr, XI),
        1 => containment_decreasing(&f, &g, rng.gen_range(0..8), &reg, tr, XI),
        2 => containment_full_product(&f, &g, &reg, tr),
        3 => property_a_check(&SetExpr::union_of(&f), &reg, tr, XI),
        4 => increasing_chain_engine(&reg, reg.len(), tr, XI).map(|r| r.certificate),
        5 => decreasing_chain_engine(&reg, reg.len(), tr, XI).map(|r| r.certificate),
        _ => {
            let gens = entries
                .windows(2)
                .map(|w| SetExpr::atom(&w[0]).union(SetExpr::atom(&w[1])))
                .collect();
            let base = FilterBase::new(gens, XI).map_err(|e| e.to_string())?;
            filter_member_certificate(&base, &SetExpr::union_of(&f), &reg, tr, XI)
        }
    };
    res.map_err(|e| e.to_string())
}

fn integrity() -> Outcome {
    let start = Instant::now();
    let tr = Truncation::new(6, 8);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut texts = Vec::new();
    for i in 0..1000 {
        let cert = certificates(&mut rng, tr).map_err(|e| format!("generation {i}: {e}"))?;
        let text = cert.to_json().map_err(|e| e.to_string())?;
        let back = check_json(&text).map_err(|e| format!("round trip {i}: {e}"))?;
        ensure(back.verified && back.to_json().unwrap() == text, || format!("round trip {i} changed"))?;
        texts.push(text);
    }
    let mut rejected = 0;
    for i in 0..1000 {
        let text = &texts[i % texts.len()];
        let mut bytes = text.clone().into_bytes();
        let at = rng.gen_range(0..bytes.len());
        let old = bytes[at];
        let new = loop {
            let c = rng.gen_range(0x20u8..0x7f);
            if c != old {
                break c;
            }
        };
        bytes[at] = new;
        let mutated = String::from_utf8(bytes).unwrap();
        match check_json(&mutated) {
            Err(_) => rejected += 1,
            Ok(_) => return Err(format!("mutation {i} at byte {at} ({} -> {}) accepted", old as char, new as char)),
        }
    }
    within(
        start,
        Duration::from_secs(120),
        format!("1000 round trips, {rejected}/1000 mutations rejected"),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("codec bijectivity", codec),
        ("exact almost-disjointness", almost_disjointness),
        ("prototype witnesses", prototype_witnesses),
        ("decreasing containment engine", lemma_4_1),
        ("full-product containment engine", lemma_4_4),
        ("cover refuter", lemma_5_3),
        ("chain strictness", chains),
        ("oracle equivalence", oracle_equivalence),
        ("certificate integrity", integrity),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
