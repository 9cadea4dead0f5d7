//! Branches of the binary tree over `{1,2}` and the almost-disjoint family
//! they induce on the positive integers.
//!
//! Every nonempty word `s` over `{1,2}` gets the code
//! `2^|s| - 1 + sum_i (s_i - 1) * 2^(|s| - i)`, which enumerates words in
//! length-then-lexicographic order starting at 1. A branch is an infinite
//! word; its element set `E` is the set of codes of its finite prefixes. Two
//! distinct branches share exactly the codes of their common prefixes, so the
//! family is almost disjoint.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Longest word whose code still fits in a `u64`.
pub const MAX_WORD_LEN: usize = 63;

/// Largest `l` accepted by [`find_cover`].
pub const MAX_COVER_BOUND: u64 = 1 << 24;

fn check_symbols(word: &[u8]) -> Result<()> {
    match word.iter().find(|&&s| s != 1 && s != 2) {
        Some(bad) => Err(Error::InvalidInput(format!(
            "symbol {bad} is outside the alphabet {{1,2}}"
        ))),
        None => Ok(()),
    }
}

/// Parses a word such as `"1212"` into its symbols. The empty string is
/// accepted and yields the empty word.
pub fn parse_word(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .map(|c| match c {
            '1' => Ok(1),
            '2' => Ok(2),
            other => Err(Error::InvalidInput(format!(
                "character {other:?} is outside the alphabet {{1,2}}"
            ))),
        })
        .collect()
}

pub fn format_word(word: &[u8]) -> String {
    word.iter().map(|&s| char::from(b'0' + s)).collect()
}

pub fn encode_word(word: &[u8]) -> Result<u64> {
    if word.is_empty() {
        return Err(Error::InvalidInput("cannot encode the empty word".into()));
    }
    check_symbols(word)?;
    let len = word.len();
    if len > MAX_WORD_LEN {
        return Err(Error::Overflow(format!("word of length {len} has no u64 code")));
    }
    let tail = word
        .iter()
        .fold(0u64, |acc, &s| (acc << 1) | u64::from(s - 1));
    Ok(((1u64 << len) - 1) + tail)
}

/// Code of a word given in text form, e.g. `"12"` maps to 4.
pub fn encode_string(s: &str) -> Result<u64> {
    encode_word(&parse_word(s)?)
}

pub fn decode_code(n: u64) -> Result<Vec<u8>> {
    if n == 0 {
        return Err(Error::InvalidInput("codes start at 1".into()));
    }
    let m = u128::from(n) + 1;
    let len = 127 - m.leading_zeros() as usize;
    let rest = m - (1u128 << len);
    Ok((0..len)
        .map(|i| 1 + ((rest >> (len - 1 - i)) & 1) as u8)
        .collect())
}

/// Length of the word coded by `n` (`n >= 1`).
pub fn code_len(n: u64) -> usize {
    let m = u128::from(n) + 1;
    127 - m.leading_zeros() as usize
}

/// An eventually periodic infinite word over `{1,2}` in canonical form
/// (primitive period, shortest preperiod).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Branch {
    prefix: Vec<u8>,
    period: Vec<u8>,
    // first MAX_WORD_LEN symbols packed MSB-first, as (symbol - 1) bits
    head: u64,
}

impl Branch {
    pub fn new(prefix: Vec<u8>, period: Vec<u8>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidInput("period word must be nonempty".into()));
        }
        check_symbols(&prefix)?;
        check_symbols(&period)?;
        let (prefix, period) = canonicalize(prefix, period);
        let mut branch = Branch {
            prefix,
            period,
            head: 0,
        };
        branch.head = (1..=MAX_WORD_LEN).fold(0u64, |acc, i| {
            (acc << 1) | u64::from(branch.symbol(i) - 1)
        });
        Ok(branch)
    }

    /// The constant branch `s s s ...`.
    pub fn constant(symbol: u8) -> Result<Self> {
        Branch::new(Vec::new(), vec![symbol])
    }

    pub fn prefix(&self) -> &[u8] {
        &self.prefix
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    /// Symbol at 1-based position `i`.
    pub fn symbol(&self, i: usize) -> u8 {
        assert!(i >= 1, "positions are 1-based");
        if i <= self.prefix.len() {
            self.prefix[i - 1]
        } else {
            self.period[(i - 1 - self.prefix.len()) % self.period.len()]
        }
    }

    pub fn word(&self, len: usize) -> Vec<u8> {
        (1..=len).map(|i| self.symbol(i)).collect()
    }

    pub fn extends(&self, word: &[u8]) -> bool {
        word.iter().enumerate().all(|(i, &s)| self.symbol(i + 1) == s)
    }

    /// Length of the longest common prefix, or `None` when the two infinite
    /// words are equal.
    pub fn common_prefix_len(&self, other: &Branch) -> Option<usize> {
        if self == other {
            return None;
        }
        let bound = self.prefix.len().max(other.prefix.len())
            + lcm(self.period.len(), other.period.len());
        (1..=bound).find(|&i| self.symbol(i) != other.symbol(i)).map(|i| i - 1)
    }

    /// `n` belongs to the element set iff `decode_code(n)` is a prefix.
    pub fn contains(&self, n: u64) -> bool {
        if n == 0 {
            return false;
        }
        let len = code_len(n);
        let rest = (u128::from(n) + 1 - (1u128 << len)) as u64;
        if len <= MAX_WORD_LEN {
            self.head >> (MAX_WORD_LEN - len) == rest
        } else {
            (0..len).all(|i| u64::from(self.symbol(i + 1) - 1) == (rest >> (len - 1 - i)) & 1)
        }
    }

    /// Code of the prefix of length `k >= 1`.
    pub fn code_at(&self, k: usize) -> Result<u64> {
        if k == 0 {
            return Err(Error::InvalidInput("prefix length must be at least 1".into()));
        }
        if k > MAX_WORD_LEN {
            return Err(Error::Overflow(format!("prefix of length {k} has no u64 code")));
        }
        Ok(((1u64 << k) - 1) + (self.head >> (MAX_WORD_LEN - k)))
    }

    /// Element set in increasing order, as far as codes fit in a `u64`.
    pub fn elements(&self) -> impl Iterator<Item = u64> + '_ {
        (1..=MAX_WORD_LEN).map(move |k| ((1u64 << k) - 1) + (self.head >> (MAX_WORD_LEN - k)))
    }

    pub fn literal(&self) -> String {
        format!("{}:{}", format_word(&self.prefix), format_word(&self.period))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn canonicalize(mut prefix: Vec<u8>, mut period: Vec<u8>) -> (Vec<u8>, Vec<u8>) {
    let n = period.len();
    if let Some(d) = (1..=n).find(|&d| n.is_multiple_of(d) && (0..n).all(|i| period[i] == period[i % d])) {
        period.truncate(d);
    }
    while let (Some(&p), Some(&q)) = (prefix.last(), period.last()) {
        if p != q {
            break;
        }
        prefix.pop();
        period.rotate_right(1);
    }
    (prefix, period)
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

impl fmt::Debug for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Branch({})", self.literal())
    }
}

/// Parses the `pre:period` literal, e.g. `12:2` or `:1`.
impl FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (pre, per) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("branch literal {s:?} lacks ':'")))?;
        Branch::new(parse_word(pre)?, parse_word(per)?)
    }
}

impl serde::Serialize for Branch {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.literal())
    }
}

impl<'de> serde::Deserialize<'de> for Branch {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        let b: Branch = s.parse().map_err(serde::de::Error::custom)?;
        if b.literal() != s {
            return Err(serde::de::Error::custom(format!(
                "branch literal {s:?} is not canonical"
            )));
        }
        Ok(b)
    }
}

/// A branch placed in the ordered index set. Equality and hashing look only
/// at the infinite word.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchIndex {
    pub label: String,
    pub branch: Branch,
    pub rank: u64,
}

impl BranchIndex {
    pub fn new(branch: Branch, rank: u64) -> Self {
        BranchIndex {
            label: branch.literal(),
            branch,
            rank,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

impl PartialEq for BranchIndex {
    fn eq(&self, other: &Self) -> bool {
        self.branch == other.branch
    }
}

impl Eq for BranchIndex {}

impl Hash for BranchIndex {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.branch.hash(state);
    }
}

impl fmt::Display for BranchIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.label == self.branch.literal() {
            write!(f, "{}@{}", self.branch, self.rank)
        } else {
            write!(f, "{}={}@{}", self.label, self.branch, self.rank)
        }
    }
}

/// `[label=]pre:period[@rank]`, as accepted on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchSpec {
    pub label: Option<String>,
    pub branch: Branch,
    pub rank: Option<u64>,
}

impl FromStr for BranchSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (label, rest) = match s.split_once('=') {
            Some((l, r)) if !l.is_empty() => (Some(l.to_string()), r),
            Some(_) => return Err(Error::Parse(format!("empty label in {s:?}"))),
            None => (None, s),
        };
        let (lit, rank) = match rest.split_once('@') {
            Some((lit, r)) => {
                let rank = r
                    .parse::<u64>()
                    .map_err(|e| Error::Parse(format!("rank {r:?}: {e}")))?;
                (lit, Some(rank))
            }
            None => (rest, None),
        };
        Ok(BranchSpec {
            label,
            branch: lit.parse()?,
            rank,
        })
    }
}

/// Finite ordered stand-in for the index set: pairwise distinct words with
/// strictly increasing ranks.
#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct Registry {
    entries: Vec<BranchIndex>,
}

impl Registry {
    pub fn new(entries: Vec<BranchIndex>) -> Result<Self> {
        let mut registry = Registry::default();
        for entry in entries {
            registry.push(entry)?;
        }
        Ok(registry)
    }

    /// Registers the branches with ranks `0, 1, 2, ...` in list order.
    pub fn from_branches(branches: impl IntoIterator<Item = Branch>) -> Result<Self> {
        Registry::new(
            branches
                .into_iter()
                .enumerate()
                .map(|(i, b)| BranchIndex::new(b, i as u64))
                .collect(),
        )
    }

    /// Builds a registry from specs; missing ranks continue from the previous
    /// entry (starting at 0).
    pub fn from_specs(specs: &[BranchSpec]) -> Result<Self> {
        let mut registry = Registry::default();
        for spec in specs {
            let rank = match spec.rank {
                Some(r) => r,
                None => registry.max_rank().map_or(0, |r| r + 1),
            };
            let mut entry = BranchIndex::new(spec.branch.clone(), rank);
            if let Some(label) = &spec.label {
                entry.label = label.clone();
            }
            registry.push(entry)?;
        }
        Ok(registry)
    }

    pub fn parse_specs<S: AsRef<str>>(specs: &[S]) -> Result<Self> {
        let specs = specs
            .iter()
            .map(|s| s.as_ref().parse())
            .collect::<Result<Vec<BranchSpec>>>()?;
        Registry::from_specs(&specs)
    }

    pub fn push(&mut self, entry: BranchIndex) -> Result<()> {
        if let Some(last) = self.entries.last() {
            if entry.rank <= last.rank {
                return Err(Error::Registry(format!(
                    "rank {} of {} does not exceed previous rank {}",
                    entry.rank, entry.branch, last.rank
                )));
            }
        }
        if let Some(dup) = self.get(&entry.branch) {
            return Err(Error::Registry(format!(
                "branch {} registered twice (ranks {} and {})",
                entry.branch, dup.rank, entry.rank
            )));
        }
        if self.entries.iter().any(|e| e.label == entry.label) {
            return Err(Error::Registry(format!("duplicate label {:?}", entry.label)));
        }
        self.entries.push(entry);
        Ok(())
    }

    /// Registers a fresh branch with rank at least `min_rank` and above every
    /// existing rank.
    pub fn mint(&mut self, branch: Branch, min_rank: u64) -> Result<BranchIndex> {
        let rank = match self.max_rank() {
            Some(r) => min_rank.max(r + 1),
            None => min_rank,
        };
        let entry = BranchIndex::new(branch, rank);
        self.push(entry.clone())?;
        Ok(entry)
    }

    pub fn entries(&self) -> &[BranchIndex] {
        &self.entries
    }

    pub fn branches(&self) -> impl Iterator<Item = &Branch> {
        self.entries.iter().map(|e| &e.branch)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_rank(&self) -> Option<u64> {
        self.entries.last().map(|e| e.rank)
    }

    pub fn get(&self, branch: &Branch) -> Option<&BranchIndex> {
        self.entries.iter().find(|e| &e.branch == branch)
    }

    pub fn contains(&self, branch: &Branch) -> bool {
        self.get(branch).is_some()
    }

    pub fn rank_of(&self, branch: &Branch) -> Option<u64> {
        self.get(branch).map(|e| e.rank)
    }

    /// Looks a token up by label first, then as a branch literal.
    pub fn resolve(&self, token: &str) -> Option<&BranchIndex> {
        self.entries.iter().find(|e| e.label == token).or_else(|| {
            token
                .parse::<Branch>()
                .ok()
                .and_then(|b| self.entries.iter().find(|e| e.branch == b))
        })
    }

    pub fn resolve_all<S: AsRef<str>>(&self, tokens: &[S]) -> Result<Vec<Branch>> {
        tokens
            .iter()
            .map(|t| {
                self.resolve(t.as_ref())
                    .map(|e| e.branch.clone())
                    .ok_or_else(|| Error::Registry(format!("unknown branch {:?}", t.as_ref())))
            })
            .collect()
    }

    pub fn rank_or_err(&self, branch: &Branch) -> Result<u64> {
        self.rank_of(branch)
            .ok_or_else(|| Error::Registry(format!("branch {branch} is not registered")))
    }
}

pub fn branch_member(branch: &Branch, n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidInput("positions start at 1".into()));
    }
    Ok(branch.contains(n))
}

/// Codes of the first `k` prefixes.
pub fn branch_elements(branch: &Branch, k: usize) -> Result<Vec<u64>> {
    (1..=k).map(|i| branch.code_at(i)).collect()
}

/// The finite set `E_a ∩ E_b`: codes of the common prefixes.
pub fn intersection_exact(a: &Branch, b: &Branch) -> Result<Vec<u64>> {
    let d = a
        .common_prefix_len(b)
        .ok_or_else(|| Error::EqualBranches(a.literal(), b.literal()))?;
    branch_elements(a, d)
}

/// Least element of `E_alpha` outside every `E_beta`, `beta` in `others`.
pub fn find_separator(alpha: &Branch, others: &[Branch]) -> Result<u64> {
    let mut depth = 0;
    for beta in others {
        match alpha.common_prefix_len(beta) {
            None => return Err(Error::BranchInSet(alpha.literal())),
            Some(d) => depth = depth.max(d),
        }
    }
    alpha.code_at(depth + 1)
}

/// Fresh branches through `word`, in the order they are tried when minting.
fn extensions(word: &[u8]) -> impl Iterator<Item = Branch> + '_ {
    (0usize..).flat_map(move |extra| {
        (0u64..1 << extra).flat_map(move |bits| {
            let mut prefix = word.to_vec();
            prefix.extend((0..extra).map(|i| 1 + ((bits >> (extra - 1 - i)) & 1) as u8));
            [1u8, 2].into_iter().filter_map(move |c| Branch::new(prefix.clone(), vec![c]).ok())
        })
    })
}

/// Finds a finite `H`, all of rank at least `min_rank`, such that
/// `{1..l}` lies in the union of `E_b` over `base ∪ H`. Registered branches
/// of admissible rank are reused (least rank first); otherwise fresh
/// branches are minted into `registry`.
pub fn find_cover(
    l: u64,
    min_rank: u64,
    registry: &mut Registry,
    base: &[Branch],
) -> Result<Vec<BranchIndex>> {
    if l > MAX_COVER_BOUND {
        return Err(Error::ResourceCap {
            what: "cover bound",
            requested: l.into(),
            cap: MAX_COVER_BOUND.into(),
        });
    }
    let mut covering: Vec<Branch> = base.to_vec();
    let mut cover: Vec<BranchIndex> = Vec::new();
    for n in 1..=l {
        if covering.iter().any(|b| b.contains(n)) {
            continue;
        }
        let word = decode_code(n)?;
        let reused = registry
            .entries()
            .iter()
            .filter(|e| e.rank >= min_rank && e.branch.extends(&word) && !cover.contains(e))
            .min_by_key(|e| e.rank)
            .cloned();
        let entry = match reused {
            Some(e) => e,
            None => {
                let fresh = extensions(&word)
                    .find(|b| !registry.contains(b))
                    .expect("a finite registry leaves extensions free");
                registry.mint(fresh, min_rank)?
            }
        };
        covering.push(entry.branch.clone());
        cover.push(entry);
    }
    Ok(cover)
}

/// Number of depth-`depth` words extending `decode_code(n)`.
pub fn density_count(n: u64, depth: usize) -> Result<u128> {
    let len = decode_code(n)?.len();
    if depth < len {
        return Err(Error::InvalidInput(format!(
            "depth {depth} is shorter than the word of code {n} (length {len})"
        )));
    }
    let free = depth - len;
    if free > 127 {
        return Err(Error::Overflow(format!("2^{free} does not fit in u128")));
    }
    Ok(1u128 << free)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> Branch {
        s.parse().unwrap()
    }

    // Oracle: list all words in code order by explicit length-lex generation.
    fn words_in_code_order(max_len: usize) -> Vec<String> {
        let mut out = Vec::new();
        for len in 1..=max_len {
            let mut layer: Vec<String> = vec![String::new()];
            for _ in 0..len {
                layer = layer
                    .into_iter()
                    .flat_map(|w| [format!("{w}1"), format!("{w}2")])
                    .collect();
            }
            out.extend(layer);
        }
        out
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode_string("1").unwrap(), 1);
        assert_eq!(encode_string("2").unwrap(), 2);
        assert_eq!(encode_string("12").unwrap(), 4);
        assert!(encode_string("").is_err());
        assert!(encode_string("13").is_err());
    }

    #[test]
    fn decode_examples() {
        assert_eq!(format_word(&decode_code(1).unwrap()), "1");
        assert_eq!(format_word(&decode_code(6).unwrap()), "22");
        assert_eq!(format_word(&decode_code(7).unwrap()), "111");
        assert!(decode_code(0).is_err());
        assert_eq!(decode_code(u64::MAX).unwrap().len(), 64);
    }

    #[test]
    fn codec_matches_enumeration_order() {
        for (i, w) in words_in_code_order(10).iter().enumerate() {
            assert_eq!(encode_string(w).unwrap(), i as u64 + 1, "{w}");
        }
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(b("12:2"), b("1:2"));
        assert_eq!(b(":11"), b(":1"));
        assert_eq!(b("2:12"), b(":21"));
        assert_eq!(b("12:2").literal(), "1:2");
        assert_ne!(b(":12"), b(":21"));
        assert!("1:".parse::<Branch>().is_err());
        assert!("13:1".parse::<Branch>().is_err());
        assert!("12".parse::<Branch>().is_err());
    }

    #[test]
    fn membership_examples() {
        assert!(branch_member(&b(":1"), 7).unwrap());
        assert!(!branch_member(&b(":1"), 2).unwrap());
        assert!(branch_member(&b("1:2"), 4).unwrap());
        assert!(branch_member(&b(":1"), 0).is_err());
    }

    #[test]
    fn membership_agrees_with_word_prefix_oracle() {
        let words = words_in_code_order(9);
        for lit in [":1", ":2", "1:2", ":12", "2:21", "1121:2"] {
            let br = b(lit);
            let expanded = format_word(&br.word(12));
            for (i, w) in words.iter().enumerate() {
                assert_eq!(br.contains(i as u64 + 1), expanded.starts_with(w.as_str()), "{lit} {w}");
            }
        }
    }

    #[test]
    fn elements_examples() {
        assert_eq!(branch_elements(&b(":1"), 4).unwrap(), vec![1, 3, 7, 15]);
        assert_eq!(branch_elements(&b(":2"), 3).unwrap(), vec![2, 6, 14]);
        assert!(branch_elements(&b("12:1"), 0).unwrap().is_empty());
        let all: Vec<u64> = b(":1").elements().collect();
        assert_eq!(all.len(), MAX_WORD_LEN);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn intersection_examples() {
        assert!(intersection_exact(&b(":1"), &b(":2")).unwrap().is_empty());
        assert_eq!(intersection_exact(&b(":1"), &b("1:2")).unwrap(), vec![1]);
        assert_eq!(intersection_exact(&b("12:1"), &b("12:2")).unwrap(), vec![1, 4]);
        assert!(matches!(
            intersection_exact(&b(":1"), &b("1:1")),
            Err(Error::EqualBranches(..))
        ));
    }

    #[test]
    fn intersection_matches_brute_force_scan() {
        let pairs = [(":1", "1:2"), ("12:1", "12:2"), (":1", ":2"), ("2:1", "22:1")];
        for (x, y) in pairs {
            let (x, y) = (b(x), b(y));
            let scanned: Vec<u64> = (1..=1024).filter(|&n| x.contains(n) && y.contains(n)).collect();
            assert_eq!(intersection_exact(&x, &y).unwrap(), scanned);
        }
    }

    #[test]
    fn separator_examples() {
        assert_eq!(find_separator(&b(":1"), &[b(":2")]).unwrap(), 1);
        assert_eq!(find_separator(&b(":1"), &[b("1:2")]).unwrap(), 3);
        assert_eq!(find_separator(&b("2:1"), &[]).unwrap(), 2);
        assert!(matches!(
            find_separator(&b(":1"), &[b(":2"), b(":1")]),
            Err(Error::BranchInSet(_))
        ));
    }

    #[test]
    fn separator_is_least_admissible() {
        let alpha = b("1121:2");
        let others = [b("11:2"), b("112:1"), b(":2")];
        let l = find_separator(&alpha, &others).unwrap();
        let brute = alpha
            .elements()
            .find(|&n| others.iter().all(|o| !o.contains(n)))
            .unwrap();
        assert_eq!(l, brute);
    }

    #[test]
    fn cover_examples() {
        let mut reg = Registry::default();
        let h = find_cover(2, 10, &mut reg, &[]).unwrap();
        assert_eq!(h.len(), 2);
        assert!(h[0].branch.extends(&[1]) && h[0].rank == 10);
        assert!(h[1].branch.extends(&[2]) && h[1].rank == 11);

        let mut reg = Registry::from_branches([b(":1")]).unwrap();
        assert!(find_cover(1, 0, &mut reg, &[b(":1")]).unwrap().is_empty());

        let h = find_cover(3, 5, &mut reg, &[b(":1")]).unwrap();
        assert_eq!(h.len(), 1);
        assert!(h[0].branch.extends(&[2]));
        for n in 1..=3 {
            assert!(b(":1").contains(n) || h[0].branch.contains(n));
        }
    }

    #[test]
    fn cover_mints_past_taken_extensions() {
        let mut reg = Registry::from_branches([b(":1"), b("1:2")]).unwrap();
        let h = find_cover(1, 7, &mut reg, &[]).unwrap();
        assert_eq!(h.len(), 1);
        assert!(h[0].branch.extends(&[1]));
        assert_eq!(h[0].rank, 7);
        assert_eq!(reg.len(), 3);
    }

    #[test]
    fn cover_reuses_admissible_entries() {
        let mut reg = Registry::from_branches([b(":1"), b(":2"), b("2:1")]).unwrap();
        let h = find_cover(2, 1, &mut reg, &[]).unwrap();
        // ":1" has rank 0 < 1 so a fresh branch through "1" is minted
        assert_eq!(h.len(), 2);
        assert_eq!(h[0].rank, 3);
        assert_eq!(h[1].branch, b(":2"));
    }

    #[test]
    fn density_examples() {
        assert_eq!(density_count(1, 3).unwrap(), 4);
        assert_eq!(density_count(7, 3).unwrap(), 1);
        let brute = words_in_code_order(4)
            .iter()
            .filter(|w| w.len() == 4 && w.starts_with("12"))
            .count();
        assert_eq!(density_count(4, 4).unwrap(), brute as u128);
        assert!(density_count(7, 2).is_err());
    }

    #[test]
    fn registry_invariants() {
        assert!(Registry::parse_specs(&[":1@3", ":2@3"]).is_err());
        assert!(Registry::parse_specs(&[":1@3", "1:1@4"]).is_err());
        let reg = Registry::parse_specs(&["a=:1", "b=:2@5", "1:2"]).unwrap();
        assert_eq!(reg.entries()[0].rank, 0);
        assert_eq!(reg.entries()[2].rank, 6);
        assert_eq!(reg.resolve("a").unwrap().branch, b(":1"));
        assert_eq!(reg.resolve("12:2").unwrap().rank, 6);
    }
}
