//! Finite-support points of the prototype space and of the full product, and
//! exhaustive enumeration of truncated point sets.

use std::fmt;
use std::str::FromStr;

use crate::branch::Branch;
use crate::error::{Error, Result};

/// The ambient space points live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    /// Sequences over `N ∪ {∞}` with finitely many finite coordinates, each
    /// at least the largest finite position.
    Prototype,
    /// All of `(N+)^N`; only finite-support points are represented.
    Product,
}

impl Ambient {
    pub fn name(self) -> &'static str {
        match self {
            Ambient::Prototype => "prototype",
            Ambient::Product => "product",
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Ambient {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prototype" | "xi" => Ok(Ambient::Prototype),
            "product" | "pi" => Ok(Ambient::Product),
            other => Err(Error::Parse(format!("unknown ambient space {other:?}"))),
        }
    }
}

/// A point with finitely many finite coordinates; every other coordinate is
/// `∞`. Coordinates are kept sorted by position.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    coords: Vec<(u64, u64)>,
}

impl Point {
    /// The point `(∞, ∞, ...)`.
    pub fn infinity() -> Self {
        Point::default()
    }

    pub fn new(pairs: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        let mut coords: Vec<(u64, u64)> = pairs.into_iter().collect();
        coords.sort_unstable();
        if let Some(w) = coords.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidInput(format!("position {} given twice", w[0].0)));
        }
        if let Some(&(pos, val)) = coords.iter().find(|(p, v)| *p == 0 || *v == 0) {
            return Err(Error::InvalidInput(format!(
                "coordinate {pos}:{val}: positions and values start at 1"
            )));
        }
        Ok(Point { coords })
    }

    pub(crate) fn from_sorted(coords: Vec<(u64, u64)>) -> Self {
        debug_assert!(coords.windows(2).all(|w| w[0].0 < w[1].0));
        Point { coords }
    }

    pub fn coords(&self) -> &[(u64, u64)] {
        &self.coords
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.coords.iter().map(|&(p, _)| p)
    }

    pub fn support_len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_infinity(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn value(&self, position: u64) -> Option<u64> {
        self.coords
            .binary_search_by_key(&position, |&(p, _)| p)
            .ok()
            .map(|i| self.coords[i].1)
    }

    pub fn max_position(&self) -> Option<u64> {
        self.coords.last().map(|&(p, _)| p)
    }

    pub fn min_value(&self) -> Option<u64> {
        self.coords.iter().map(|&(_, v)| v).min()
    }

    pub fn max_value(&self) -> Option<u64> {
        self.coords.iter().map(|&(_, v)| v).max()
    }

    /// Sets coordinate `position` to `value`, replacing any finite value.
    pub fn with(&self, position: u64, value: u64) -> Point {
        let mut coords = self.coords.clone();
        match coords.binary_search_by_key(&position, |&(p, _)| p) {
            Ok(i) => coords[i].1 = value,
            Err(i) => coords.insert(i, (position, value)),
        }
        Point { coords }
    }

    pub fn is_valid(&self, ambient: Ambient) -> bool {
        match ambient {
            Ambient::Product => true,
            Ambient::Prototype => match self.max_position() {
                None => true,
                Some(m) => self.coords.iter().all(|&(_, v)| v >= m),
            },
        }
    }

    /// Whether some finite coordinate sits at a position in `E_branch`,
    /// i.e. the point lies outside `N_branch`.
    pub fn hits(&self, branch: &Branch) -> bool {
        self.support().any(|n| branch.contains(n))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (p, v)) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}:{v}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Point{self}")
    }
}

/// `{2:3,5:7}`; `{}` is `(∞, ∞, ...)`.
impl FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("point literal {s:?} must be braced")))?;
        if inner.trim().is_empty() {
            return Ok(Point::infinity());
        }
        let pairs = inner
            .split(',')
            .map(|pair| {
                let (p, v) = pair
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("coordinate {pair:?} lacks ':'")))?;
                let num = |t: &str| {
                    t.trim()
                        .parse::<u64>()
                        .map_err(|e| Error::Parse(format!("coordinate {pair:?}: {e}")))
                };
                Ok((num(p)?, num(v)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Point::new(pairs)
    }
}

impl serde::Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Point {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn validate_point(p: &Point, ambient: Ambient) -> bool {
    p.is_valid(ambient)
}

pub fn require_valid(p: &Point, ambient: Ambient) -> Result<()> {
    if p.is_valid(ambient) {
        Ok(())
    } else {
        Err(Error::InvalidPoint(p.to_string(), ambient.name()))
    }
}

/// `p ∈ N_branch`: no finite coordinate of `p` sits in `E_branch`.
pub fn in_zero_set(p: &Point, ambient: Ambient, branch: &Branch) -> Result<bool> {
    require_valid(p, ambient)?;
    Ok(!p.hits(branch))
}

/// Finite sub-universe: support within `1..=t`, values within `1..=v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Truncation {
    pub t: u64,
    pub v: u64,
}

impl Truncation {
    pub const DEFAULT: Truncation = Truncation { t: 8, v: 10 };

    pub fn new(t: u64, v: u64) -> Self {
        Truncation { t, v }
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.coords.iter().all(|&(pos, val)| pos <= self.t && val <= self.v)
    }
}

impl fmt::Display for Truncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T={},V={}", self.t, self.v)
    }
}

/// Number of valid points in the truncation.
pub fn count_truncated(tr: Truncation, ambient: Ambient) -> u128 {
    let (t, v) = (u128::from(tr.t), u128::from(tr.v));
    match ambient {
        Ambient::Product => (v + 1).checked_pow(tr.t.min(u32::MAX as u64) as u32).unwrap_or(u128::MAX),
        Ambient::Prototype => {
            // supports with largest position m: the other positions are any
            // subset of 1..m, and every value ranges over m..=v
            let mut total: u128 = 1;
            for m in 1..=t.min(v) {
                let choices = v - m + 1;
                let rest = (choices)
                    .checked_add(1)
                    .and_then(|c| c.checked_pow((m - 1) as u32))
                    .and_then(|r| r.checked_mul(choices));
                total = match rest.and_then(|r| total.checked_add(r)) {
                    Some(x) => x,
                    None => return u128::MAX,
                };
            }
            total
        }
    }
}

/// Streams the valid points whose support is drawn from `pool` (sorted,
/// distinct) with values at most `vmax`, ordered by (support size,
/// positions, values).
pub struct PointsOver {
    pool: Vec<u64>,
    vmax: u64,
    ambient: Ambient,
    idx: Vec<usize>,
    vals: Vec<u64>,
    started: bool,
    done: bool,
}

impl PointsOver {
    pub fn new(mut pool: Vec<u64>, vmax: u64, ambient: Ambient) -> Self {
        pool.sort_unstable();
        pool.dedup();
        if ambient == Ambient::Prototype {
            // a position above vmax would need a value above vmax
            pool.retain(|&p| p <= vmax);
        } else if vmax == 0 {
            pool.clear();
        }
        PointsOver {
            pool,
            vmax,
            ambient,
            idx: Vec::new(),
            vals: Vec::new(),
            started: false,
            done: false,
        }
    }

    fn floor(&self) -> u64 {
        match (self.ambient, self.idx.last()) {
            (Ambient::Prototype, Some(&i)) => self.pool[i].max(1),
            _ => 1,
        }
    }

    fn next_combination(&mut self) -> bool {
        let n = self.pool.len();
        let k = self.idx.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.idx[i] < n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return true;
            }
        }
        if k < n {
            self.idx = (0..=k).collect();
            return true;
        }
        false
    }

    fn next_support(&mut self) -> bool {
        if !self.next_combination() {
            return false;
        }
        self.vals = vec![self.floor(); self.idx.len()];
        true
    }

    fn next_values(&mut self) -> bool {
        let lo = self.floor();
        for i in (0..self.vals.len()).rev() {
            if self.vals[i] < self.vmax {
                self.vals[i] += 1;
                for v in &mut self.vals[i + 1..] {
                    *v = lo;
                }
                return true;
            }
        }
        false
    }

    fn current(&self) -> Point {
        Point::from_sorted(
            self.idx
                .iter()
                .zip(&self.vals)
                .map(|(&i, &v)| (self.pool[i], v))
                .collect(),
        )
    }
}

impl Iterator for PointsOver {
    type Item = Point;

    fn next(&mut self) -> Option<Point> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(Point::infinity());
        }
        if (self.idx.is_empty() || !self.next_values())
            && !self.next_support() {
                self.done = true;
                return None;
            }
        Some(self.current())
    }
}

pub fn truncated_points(tr: Truncation, ambient: Ambient) -> PointsOver {
    PointsOver::new((1..=tr.t).collect(), tr.v, ambient)
}

/// All valid points of the truncation, in enumeration order.
pub fn enumerate_truncated(tr: Truncation, ambient: Ambient) -> Vec<Point> {
    truncated_points(tr, ambient).collect()
}

/// As [`enumerate_truncated`], refusing truncations with more than `cap`
/// points.
pub fn enumerate_truncated_capped(tr: Truncation, ambient: Ambient, cap: u128) -> Result<Vec<Point>> {
    let n = count_truncated(tr, ambient);
    if n > cap {
        return Err(Error::ResourceCap {
            what: "truncated point count",
            requested: n,
            cap,
        });
    }
    Ok(enumerate_truncated(tr, ambient))
}

/// One representative per support pattern of the truncation (every value
/// set to the least valid one). For sets whose membership depends only on
/// the support these stand in for the whole truncation.
pub fn support_representatives(tr: Truncation, ambient: Ambient) -> Vec<Point> {
    let mut out = vec![Point::infinity()];
    let positions: Vec<u64> = (1..=tr.t).collect();
    let limit = if ambient == Ambient::Prototype { tr.v.min(tr.t) } else { tr.t };
    if tr.v == 0 {
        return out;
    }
    for k in 1..=positions.len() {
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            let max = positions[combo[k - 1]];
            if max <= limit {
                let value = if ambient == Ambient::Prototype { max } else { 1 };
                out.push(Point::from_sorted(combo.iter().map(|&i| (positions[i], value)).collect()));
            }
            let n = positions.len();
            let Some(i) = (0..k).rev().find(|&i| combo[i] < n - k + i) else {
                break;
            };
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    out
}
