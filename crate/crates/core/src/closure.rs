//! Approximating sequences and closure membership.

use crate::branch::{find_separator, Branch};
use crate::decide::{subsets_by_size, MAX_EXACT_ATOMS};
use crate::error::{Error, Result};
use crate::expr::SetExpr;
use crate::point::{require_valid, truncated_points, Ambient, Point, Truncation};

/// The sequence `r ↦ base` with value `offset + r` written at every position
/// in `positions` (`r = 1, 2, ...`). It converges coordinatewise to `base`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApproxSequence {
    pub base: Point,
    pub ambient: Ambient,
    pub positions: Vec<u64>,
    pub offset: u64,
}

impl ApproxSequence {
    /// Uses the offset `max(positions, support, values of base)`, which keeps
    /// every term valid in the prototype space whenever any offset does.
    pub fn new(base: &Point, ambient: Ambient, positions: &[u64]) -> Result<Self> {
        require_valid(base, ambient)?;
        let mut positions = positions.to_vec();
        positions.sort_unstable();
        positions.dedup();
        if let Some(&l) = positions.iter().find(|&&l| base.value(l).is_some()) {
            return Err(Error::PositionInSupport(l));
        }
        if positions.first() == Some(&0) {
            return Err(Error::InvalidInput("positions start at 1".into()));
        }
        let top = positions
            .iter()
            .copied()
            .chain(base.support())
            .max()
            .unwrap_or(0);
        if ambient == Ambient::Prototype {
            if let (Some(&l), Some(low)) = (positions.last(), base.min_value()) {
                if low < top {
                    return Err(Error::NoValidApproximation {
                        point: base.to_string(),
                        position: l,
                    });
                }
            }
        }
        let offset = top.max(base.max_value().unwrap_or(0));
        Ok(ApproxSequence {
            base: base.clone(),
            ambient,
            positions,
            offset,
        })
    }

    /// Raises the offset to at least `floor`.
    pub fn with_min_offset(mut self, floor: u64) -> Self {
        self.offset = self.offset.max(floor);
        self
    }

    pub fn term(&self, r: u64) -> Point {
        let v = self.offset + r;
        self.positions.iter().fold(self.base.clone(), |p, &l| p.with(l, v))
    }

    pub fn terms(&self, count: u64) -> Vec<Point> {
        (1..=count).map(|r| self.term(r)).collect()
    }

    /// Whether every term (for all `r >= 1`) lies in `e`. Terms share their
    /// support, so atoms see them all alike; a singleton can coincide with
    /// at most one term. Checking `|singletons| + 1` terms plus the
    /// coinciding ones therefore settles the whole sequence.
    pub fn all_terms_in(&self, e: &SetExpr) -> bool {
        let singletons = e.singletons();
        let mut rs: Vec<u64> = (1..=singletons.len() as u64 + 1).collect();
        for s in &singletons {
            if let Some(r) = self.index_of(s) {
                rs.push(r);
            }
        }
        rs.into_iter().all(|r| e.contains(&self.term(r)))
    }

    fn index_of(&self, q: &Point) -> Option<u64> {
        let first = *self.positions.first()?;
        let v = q.value(first)?;
        let r = v.checked_sub(self.offset).filter(|&r| r >= 1)?;
        (self.term(r) == *q).then_some(r)
    }
}

/// Terms `1..=count` of the sequence that varies coordinate `l` of `p`.
pub fn approx_sequence(p: &Point, ambient: Ambient, l: u64, count: u64) -> Result<Vec<Point>> {
    Ok(ApproxSequence::new(p, ambient, &[l])?.terms(count))
}

/// Points agreeing with `center` on its support whose other coordinates at
/// positions up to `window` are `∞` or at least `floor`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Neighborhood {
    pub center: Point,
    pub window: u64,
    pub floor: u64,
}

impl Neighborhood {
    pub fn contains(&self, q: &Point) -> bool {
        self.center.coords().iter().all(|&(p, v)| q.value(p) == Some(v))
            && q
                .coords()
                .iter()
                .all(|&(p, v)| self.center.value(p).is_some() || p > self.window || v >= self.floor)
    }

    /// Truncated points of the neighborhood.
    pub fn points(&self, tr: Truncation, ambient: Ambient) -> impl Iterator<Item = Point> + '_ {
        truncated_points(tr, ambient).filter(move |q| self.contains(q))
    }

    /// One truncated point of the neighborhood per support (least admissible
    /// values), enough for sets that ignore values.
    pub fn support_representatives(&self, tr: Truncation, ambient: Ambient) -> Vec<Point> {
        let pool: Vec<u64> = (1..=tr.t).filter(|&p| self.center.value(p).is_none()).collect();
        let mut out = Vec::new();
        if !tr.contains(&self.center) {
            return out;
        }
        for chosen in subsets_by_size(pool.len()) {
            let extra: Vec<u64> = chosen.iter().map(|&i| pool[i]).collect();
            let top = extra
                .iter()
                .copied()
                .chain(self.center.support())
                .max()
                .unwrap_or(0);
            let mut q = self.center.clone();
            for &x in &extra {
                let mut lo = if x <= self.window { self.floor } else { 1 };
                if ambient == Ambient::Prototype {
                    lo = lo.max(top);
                }
                q = q.with(x, lo);
            }
            if q.is_valid(ambient) && tr.contains(&q) && self.contains(&q) {
                out.push(q);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureWitness {
    /// The point already lies in the set.
    Itself,
    Sequence(ApproxSequence),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureVerdict {
    Proven(ClosureWitness),
    Refuted(Neighborhood),
    Unknown(String),
}

impl ClosureVerdict {
    pub fn is_proven(&self) -> bool {
        matches!(self, ClosureVerdict::Proven(_))
    }
}

/// Decides whether `p` lies in the closure of `e`.
///
/// Sequences are searched over the atom sets the terms might additionally
/// hit, smallest first, bumping one separator position per newly hit atom.
/// When none works, a neighborhood of `p` that misses `e` is returned; its
/// emptiness follows from the same pattern analysis and can be rechecked on
/// any truncation with [`neighborhood_violation`].
pub fn closure_member(p: &Point, ambient: Ambient, e: &SetExpr) -> Result<ClosureVerdict> {
    require_valid(p, ambient)?;
    if e.contains(p) {
        return Ok(ClosureVerdict::Proven(ClosureWitness::Itself));
    }
    let atoms = e.atoms();
    if atoms.len() > MAX_EXACT_ATOMS {
        return Ok(ClosureVerdict::Unknown(format!(
            "{} atoms exceed the exact search limit {MAX_EXACT_ATOMS}",
            atoms.len()
        )));
    }
    let singletons = e.singletons();
    let avoid_floor = singletons
        .iter()
        .flat_map(|s| s.coords().iter().map(|&(p, v)| p.max(v)))
        .max()
        .unwrap_or(0);
    let free: Vec<&Branch> = atoms.iter().filter(|a| !p.hits(a)).collect();
    // in the prototype space, points near a nonempty p cannot carry finite
    // coordinates beyond p's smallest value
    let reach = match ambient {
        Ambient::Prototype => p.min_value(),
        Ambient::Product => None,
    };
    for extra in subsets_by_size(free.len()) {
        let missed: Vec<Branch> = (0..free.len())
            .filter(|i| !extra.contains(i))
            .map(|i| free[i].clone())
            .collect();
        let mut positions = extra
            .iter()
            .map(|&i| find_separator(free[i], &missed))
            .collect::<Result<Vec<u64>>>()?;
        if positions.is_empty() {
            // hit nothing new, but still move away from p
            match (1u64..)
                .take_while(|&n| reach.is_none_or(|m| n <= m))
                .find(|&n| p.value(n).is_none() && atoms.iter().all(|a| !a.contains(n)))
            {
                Some(n) => positions.push(n),
                None => continue,
            }
        }
        if reach.is_some_and(|m| positions.iter().any(|&l| l > m)) {
            continue;
        }
        let seq = ApproxSequence::new(p, ambient, &positions)?.with_min_offset(avoid_floor);
        if seq.all_terms_in(e) {
            return Ok(ClosureVerdict::Proven(ClosureWitness::Sequence(seq)));
        }
    }
    let window = reach
        .unwrap_or(0)
        .max(p.max_position().unwrap_or(0))
        .max(avoid_floor)
        .max(1);
    let floor = avoid_floor.max(p.max_value().unwrap_or(0)) + 1;
    Ok(ClosureVerdict::Refuted(Neighborhood {
        center: p.clone(),
        window,
        floor,
    }))
}

/// First truncated point of the neighborhood lying in `e`, if any.
pub fn neighborhood_violation(
    n: &Neighborhood,
    e: &SetExpr,
    tr: Truncation,
    ambient: Ambient,
) -> Option<Point> {
    if e.has_singletons() {
        n.points(tr, ambient).find(|q| e.contains(q))
    } else {
        n.support_representatives(tr, ambient).into_iter().find(|q| e.contains(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::enumerate_truncated;

    fn p(s: &str) -> Point {
        s.parse().unwrap()
    }

    fn e(s: &str) -> SetExpr {
        s.parse().unwrap()
    }

    #[test]
    fn approx_examples() {
        let xi = Ambient::Prototype;
        assert_eq!(
            approx_sequence(&p("{}"), xi, 1, 3).unwrap(),
            vec![p("{1:2}"), p("{1:3}"), p("{1:4}")]
        );
        assert_eq!(
            approx_sequence(&p("{2:3}"), xi, 1, 2).unwrap(),
            vec![p("{1:4,2:3}"), p("{1:5,2:3}")]
        );
        assert!(matches!(
            approx_sequence(&p("{2:3}"), xi, 2, 2),
            Err(Error::PositionInSupport(2))
        ));
        assert!(matches!(
            approx_sequence(&p("{1:1}"), xi, 2, 2),
            Err(Error::NoValidApproximation { .. })
        ));
        assert_eq!(approx_sequence(&p("{1:1}"), Ambient::Product, 2, 1).unwrap(), vec![p("{1:1,2:3}")]);
    }

    #[test]
    fn terms_differ_from_base_at_one_coordinate() {
        let base = p("{3:5,4:6}");
        let seq = ApproxSequence::new(&base, Ambient::Prototype, &[2]).unwrap();
        for (r, t) in seq.terms(20).iter().enumerate() {
            assert!(t.is_valid(Ambient::Prototype));
            assert_eq!(t.value(2), Some(seq.offset + r as u64 + 1));
            assert_eq!(t.with(2, 1).coords().len(), base.coords().len() + 1);
            assert_eq!(t.value(3), Some(5));
        }
    }

    #[test]
    fn closure_examples() {
        let xi = Ambient::Prototype;
        assert_eq!(
            closure_member(&p("{2:3}"), xi, &e("N::1")).unwrap(),
            ClosureVerdict::Proven(ClosureWitness::Itself)
        );
        let x = e("(diff (inter N::2 N:2:1) N::1)");
        match closure_member(&Point::infinity(), xi, &x).unwrap() {
            ClosureVerdict::Proven(ClosureWitness::Sequence(s)) => {
                let l = find_separator(&":1".parse().unwrap(), &[":2".parse().unwrap(), "2:1".parse().unwrap()])
                    .unwrap();
                assert_eq!(s.positions, vec![l]);
                assert!(s.terms(5).iter().all(|t| x.contains(t)));
            }
            other => panic!("{other:?}"),
        }
        match closure_member(&p("{1:1}"), xi, &e("N::1")).unwrap() {
            ClosureVerdict::Refuted(n) => {
                assert!(neighborhood_violation(&n, &e("N::1"), Truncation::new(2, 3), xi).is_none());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn singletons_in_the_target() {
        let xi = Ambient::Prototype;
        // {} is isolated from (diff whole {}) only if nothing approaches it;
        // the bumped points do approach it
        assert!(closure_member(&p("{}"), xi, &e("(diff whole {})")).unwrap().is_proven());
        // a singleton is its own closure
        assert!(!closure_member(&p("{}"), xi, &e("{1:1}")).unwrap().is_proven());
    }

    // Oracle: a refuted neighborhood has no truncated point in e, and a
    // proven sequence stays inside e.
    #[test]
    fn verdicts_sound_on_truncation() {
        let tr = Truncation::new(5, 7);
        let exprs = [
            "(diff (inter N::2) (union N::1 N:1:2))",
            "(diff whole (union N::1 N::2))",
            "(inter N::1 N::2)",
            "(diff N:2:1 (union {} {3:3}))",
        ];
        for ambient in [Ambient::Prototype, Ambient::Product] {
            for s in exprs {
                let x = e(s);
                for q in enumerate_truncated(Truncation::new(4, 5), ambient) {
                    match closure_member(&q, ambient, &x).unwrap() {
                        ClosureVerdict::Proven(ClosureWitness::Itself) => assert!(x.contains(&q)),
                        ClosureVerdict::Proven(ClosureWitness::Sequence(seq)) => {
                            for t in seq.terms(6) {
                                assert!(x.contains(&t) && t.is_valid(ambient), "{s} {q} {t}");
                            }
                        }
                        ClosureVerdict::Refuted(n) => {
                            assert!(n.contains(&q));
                            assert_eq!(neighborhood_violation(&n, &x, tr, ambient), None, "{s} {q}");
                        }
                        ClosureVerdict::Unknown(m) => panic!("{m}"),
                    }
                }
            }
        }
    }
}
