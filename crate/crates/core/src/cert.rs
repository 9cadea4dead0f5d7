//! Certificate data model and its canonical JSON form.

use sha2::{Digest, Sha256};

use crate::branch::{Branch, Registry};
use crate::error::{Error, Result};
use crate::expr::SetExpr;
use crate::filter::{FilterBase, FilterVerdict};
use crate::point::{Ambient, Point, Truncation};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertKind {
    SeparatorWitness,
    CoverSet,
    ExceptionList,
    InclusionChain,
    Contradiction,
    CounterexamplePoint,
}

/// Everything a certificate is relative to.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    pub registry: Registry,
    pub truncation: Truncation,
    pub ambient: Ambient,
}

/// The claim `set ∩ ⋂_{α∈f} N_α ⊆ ⋃_{β∈g} N_β`, with every rank in `f`
/// below every rank in `g`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AFailure {
    pub set: SetExpr,
    pub f: Vec<Branch>,
    pub g: Vec<Branch>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeparatorPoint {
    pub alpha: Branch,
    pub others: Vec<Branch>,
    pub position: u64,
    pub point: Point,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Separator {
    pub branch: Branch,
    pub position: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairWitness {
    pub f: Vec<Branch>,
    pub beta: Branch,
    pub point: Point,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainWitness {
    pub member: usize,
    pub base: usize,
    pub position: u64,
    pub point: Point,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stage {
    pub separators: Vec<Separator>,
    pub cover: Vec<Branch>,
}

/// `term` is term `r` of the sequence bumping stage `failure`'s separator
/// positions in `base`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceLink {
    pub failure: usize,
    pub base: Point,
    pub r: u64,
    pub term: Point,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "premise", rename_all = "snake_case", deny_unknown_fields)]
pub enum Violation {
    /// A point covered by none of the sets.
    Cover { point: Point },
    /// A point refuting failure `index` (1-based, in sorted order).
    Failure { index: usize, point: Point },
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case", deny_unknown_fields)]
pub enum PropertyBOutcome {
    Counterexample {
        point: Point,
    },
    /// The induction ran `held` steps on the truncation; step `held + 1`
    /// fails at `failing_point`, which `trace` pulls back to a concrete
    /// violation of the premises.
    Contradiction {
        stages: Vec<Stage>,
        held: usize,
        failing_point: Point,
        trace: Vec<TraceLink>,
        violation: Violation,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndexedSet {
    pub index: usize,
    pub set: SetExpr,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndexedVerdict {
    pub index: usize,
    pub verdict: FilterVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "lemma", rename_all = "snake_case", deny_unknown_fields)]
pub enum Payload {
    ExtendibilityA {
        witnesses: Vec<SeparatorPoint>,
    },
    ExtendibilityB {
        set: SetExpr,
        alpha0: Branch,
        generators: Vec<Branch>,
        separator: u64,
        cover: Vec<Branch>,
        exceptions: Vec<Branch>,
    },
    ContainmentDecreasing {
        f: Vec<Branch>,
        g: Vec<Branch>,
        gamma: u64,
        separators: Vec<Separator>,
        cover: Vec<Branch>,
    },
    ContainmentFull {
        f: Vec<Branch>,
        g: Vec<Branch>,
    },
    PropertyA {
        set: SetExpr,
        witnesses: Vec<PairWitness>,
        failure: Option<AFailure>,
    },
    PropertyB {
        failures: Vec<AFailure>,
        gamma: u64,
        result: PropertyBOutcome,
    },
    ChainIncreasing {
        chain: Vec<Branch>,
        witnesses: Vec<ChainWitness>,
    },
    ChainDecreasing {
        chain: Vec<Branch>,
        witnesses: Vec<ChainWitness>,
    },
    FilterMember {
        base: FilterBase,
        set: SetExpr,
        verdict: FilterVerdict,
    },
    PseudoFinite {
        family: Vec<FilterBase>,
        set: SetExpr,
        verdicts: Vec<FilterVerdict>,
        exceptions: Vec<usize>,
    },
    Nonredundancy {
        family: Vec<FilterBase>,
        target: usize,
        witnesses: Vec<IndexedSet>,
        union: SetExpr,
        member_verdicts: Vec<IndexedVerdict>,
        target_verdict: FilterVerdict,
    },
}

/// A single checkable claim. Inclusions between sets are checked on the
/// truncation; everything about individual points or branches is exact.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum Obligation {
    Member {
        point: Point,
        set: SetExpr,
    },
    NotMember {
        point: Point,
        set: SetExpr,
    },
    Subset {
        sub: SetExpr,
        sup: SetExpr,
    },
    /// `{1..upto}` lies in the union of the element sets.
    Covers {
        upto: u64,
        branches: Vec<Branch>,
    },
    Separates {
        position: u64,
        branch: Branch,
        others: Vec<Branch>,
    },
    RankAtLeast {
        branch: Branch,
        bound: u64,
    },
    RankBelow {
        branch: Branch,
        bound: u64,
    },
    RanksIncreasing {
        branches: Vec<Branch>,
    },
    /// Every rank in `lower` is below every rank in `upper`.
    RanksBelow {
        lower: Vec<Branch>,
        upper: Vec<Branch>,
    },
    /// The largest ranks of the sets are nondecreasing.
    MaxRankOrder {
        sets: Vec<Vec<Branch>>,
    },
    Closed {
        set: SetExpr,
    },
    /// Every truncated point `q` of `domain` (an intersection of atoms) has
    /// terms `1..=terms` of the sequence bumping `positions` in `target`.
    ClosureSchema {
        domain: SetExpr,
        target: SetExpr,
        positions: Vec<u64>,
        terms: u64,
    },
    /// Every truncated point `q` of `domain` has, for `r = 1..=terms`, the
    /// point `q` plus value 1 at the least element of each `E_β` (β in
    /// `escapes`) above `T + r` and outside every `E_α` (α in `avoid`)
    /// inside `target`.
    EscapeSchedule {
        domain: SetExpr,
        target: SetExpr,
        escapes: Vec<Branch>,
        avoid: Vec<Branch>,
        terms: u64,
    },
    TermOf {
        base: Point,
        positions: Vec<u64>,
        r: u64,
        point: Point,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub schema: u32,
    pub kind: CertKind,
    pub params: Params,
    pub payload: Payload,
    pub steps: Vec<Obligation>,
    pub digest: String,
    /// Set only by [`crate::check::check_certificate`]; never serialized.
    #[serde(skip)]
    pub verified: bool,
}

#[derive(serde::Serialize)]
struct Digested<'a> {
    schema: u32,
    kind: CertKind,
    params: &'a Params,
    payload: &'a Payload,
    steps: &'a [Obligation],
}

impl Certificate {
    /// Builds a certificate whose steps are the obligations the checker
    /// derives from `payload`.
    pub fn seal(params: Params, payload: Payload) -> Result<Certificate> {
        let kind = crate::check::kind_of(&payload);
        let steps = crate::check::expected_obligations(&payload, &params)?;
        let mut cert = Certificate {
            schema: SCHEMA_VERSION,
            kind,
            params,
            payload,
            steps,
            digest: String::new(),
            verified: false,
        };
        cert.digest = cert.compute_digest()?;
        Ok(cert)
    }

    pub fn compute_digest(&self) -> Result<String> {
        let view = Digested {
            schema: self.schema,
            kind: self.kind,
            params: &self.params,
            payload: &self.payload,
            steps: &self.steps,
        };
        let bytes = serde_json::to_vec(&view).map_err(|e| Error::InvalidInput(e.to_string()))?;
        Ok(Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect())
    }

    /// Compact canonical JSON.
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string(self).map_err(|e| Error::InvalidInput(e.to_string()))
    }
}
