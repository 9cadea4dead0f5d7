use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use zwork_core::branch::{Branch, BranchIndex};
use zwork_core::{Ambient, Error, Registry, SetExpr, Truncation};

use crate::usage;

#[derive(Parser, Debug)]
#[command(name = "zwork", version, about = "Certificates for zero-set constructions over branch families")]
pub struct Cli {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct ConfigArgs {
    /// Registry entries `[label=]pre:period[@rank]`, comma separated.
    #[arg(long, short = 'r', global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub registry: Vec<String>,
    /// Largest support position of truncated points.
    #[arg(long, short = 't', global = true, default_value_t = 8)]
    pub t: u64,
    /// Largest value of truncated points.
    #[arg(long, short = 'v', global = true, default_value_t = 10)]
    pub v: u64,
    #[arg(long, global = true, value_enum, default_value_t = AmbientArg::Xi)]
    pub ambient: AmbientArg,
    #[arg(long, global = true, default_value_t = 12)]
    pub max_t: u64,
    #[arg(long, global = true, default_value_t = 16)]
    pub max_v: u64,
    /// Certificate file to write.
    #[arg(long, short = 'o', global = true)]
    pub out: Option<PathBuf>,
    /// Directory for certificates when `--out` is not given.
    #[arg(long, global = true, env = "ZWORK_OUT_DIR")]
    pub out_dir: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum AmbientArg {
    Xi,
    Pi,
}

/// Parsed and bounds-checked run configuration.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub registry: Registry,
    pub truncation: Truncation,
    pub ambient: Ambient,
    pub out: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
    pub seed: u64,
}

impl ConfigArgs {
    pub fn resolve(&self) -> anyhow::Result<RunConfig> {
        if self.t > self.max_t {
            return Err(Error::ResourceCap {
                what: "truncation T",
                requested: self.t.into(),
                cap: self.max_t.into(),
            }
            .into());
        }
        if self.v > self.max_v {
            return Err(Error::ResourceCap {
                what: "truncation V",
                requested: self.v.into(),
                cap: self.max_v.into(),
            }
            .into());
        }
        let specs: Vec<&str> = self.registry.iter().map(|s| s.trim()).filter(|s| !s.is_empty()).collect();
        Ok(RunConfig {
            registry: Registry::parse_specs(&specs)?,
            truncation: Truncation::new(self.t, self.v),
            ambient: match self.ambient {
                AmbientArg::Xi => Ambient::Prototype,
                AmbientArg::Pi => Ambient::Product,
            },
            out: self.out.clone(),
            out_dir: self.out_dir.clone(),
            seed: self.seed,
        })
    }
}

impl RunConfig {
    /// Resolves labels or literals; unknown literals are registered with the
    /// next free rank.
    pub fn ensure(&mut self, tokens: &[String]) -> anyhow::Result<Vec<Branch>> {
        let mut out = Vec::new();
        for token in tokens.iter().map(|s| s.trim()).filter(|s| !s.is_empty()) {
            let branch = match self.registry.resolve(token) {
                Some(e) => e.branch.clone(),
                None => {
                    let b: Branch = token
                        .parse()
                        .map_err(|e| usage(format!("{token:?} is neither a label nor a branch: {e}")))?;
                    let rank = self.registry.max_rank().map_or(0, |r| r + 1);
                    self.registry.push(BranchIndex::new(b.clone(), rank))?;
                    b
                }
            };
            out.push(branch);
        }
        Ok(out)
    }

    pub fn expr(&self, s: &str) -> anyhow::Result<SetExpr> {
        Ok(SetExpr::parse(s, Some(&self.registry)).or_else(|_| SetExpr::parse(s, None))?)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Branch codes, intersections, separators and covers.
    #[command(subcommand)]
    Family(FamilyCmd),
    /// Run a lemma engine and write its certificate, or check one.
    Verify(VerifyCmd),
    /// Evaluate claims by exhaustive truncated enumeration.
    Oracle(OracleCmd),
    /// Filter-base membership.
    #[command(subcommand)]
    Filter(FilterCmd),
    /// Random engine runs, each certificate re-checked.
    Sweep(SweepCmd),
}

#[derive(Subcommand, Debug)]
pub enum FamilyCmd {
    /// Codes of the first prefixes of a branch.
    Elements {
        branch: String,
        #[arg(long, default_value_t = 8)]
        count: usize,
    },
    /// Whether a code lies in the branch's element set.
    Member { branch: String, n: u64 },
    /// The finite intersection of two element sets.
    Intersect { a: String, b: String },
    /// Least element of one set outside the others.
    Separator {
        alpha: String,
        #[arg(value_delimiter = ',', allow_hyphen_values = true)]
        others: Vec<String>,
    },
    /// Branches of rank at least gamma covering `1..=l` together with a base.
    Cover {
        #[arg(long)]
        l: u64,
        #[arg(long, default_value_t = 0)]
        gamma: u64,
        #[arg(long, value_delimiter = ',')]
        base: Vec<String>,
    },
    /// Number of depth-`depth` words extending the word of code `n`.
    Density {
        n: u64,
        #[arg(long)]
        depth: usize,
    },
    Encode { word: String },
    Decode { n: u64 },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lemma {
    ExtendibilityA,
    ExtendibilityB,
    ContainmentDec,
    ContainmentFull,
    PropertyA,
    PropertyB,
    ChainInc,
    ChainDec,
}

impl Lemma {
    pub fn name(self) -> &'static str {
        match self {
            Lemma::ExtendibilityA => "extendibility-a",
            Lemma::ExtendibilityB => "extendibility-b",
            Lemma::ContainmentDec => "containment-dec",
            Lemma::ContainmentFull => "containment-full",
            Lemma::PropertyA => "property-a",
            Lemma::PropertyB => "property-b",
            Lemma::ChainInc => "chain-inc",
            Lemma::ChainDec => "chain-dec",
        }
    }
}

#[derive(Args, Debug)]
pub struct VerifyCmd {
    #[arg(required_unless_present = "check")]
    pub lemma: Option<Lemma>,
    /// Re-validate an existing certificate instead of producing one.
    #[arg(long, conflicts_with = "lemma")]
    pub check: Option<PathBuf>,
    #[arg(long = "F", value_delimiter = ',', allow_hyphen_values = true)]
    pub f: Vec<String>,
    #[arg(long = "G", value_delimiter = ',', allow_hyphen_values = true)]
    pub g: Vec<String>,
    #[arg(long)]
    pub gamma: Option<u64>,
    /// Set expression for extendibility-b and property-a.
    #[arg(long)]
    pub set: Option<String>,
    #[arg(long)]
    pub alpha0: Option<String>,
    /// JSON cover for property-b: a list of failures, or an object with
    /// `failures` and optional `registry` and `gamma`.
    #[arg(long)]
    pub cover: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    pub steps: usize,
}

#[derive(Args, Debug)]
pub struct OracleCmd {
    /// File of claims `(subset A B)`, `(equal A B)` or `(empty A)`.
    pub claims: PathBuf,
    /// Counterexamples printed per failing claim.
    #[arg(long, default_value_t = 1)]
    pub examples: usize,
}

#[derive(Subcommand, Debug)]
pub enum FilterCmd {
    /// Decide membership of a set in a filter base.
    Member {
        set: String,
        /// Generators; repeat the flag for each.
        #[arg(long = "gen")]
        generators: Vec<String>,
        /// Use every pairwise union of registered zero sets as generators.
        #[arg(long)]
        pairs: bool,
        /// Shift the base by these zero sets (labels or literals).
        #[arg(long, value_delimiter = ',')]
        shift: Vec<String>,
    },
}

#[derive(Args, Debug)]
pub struct SweepCmd {
    #[arg(value_enum)]
    pub lemma: Lemma,
    #[arg(long, default_value_t = 20)]
    pub cases: usize,
    /// Branches per random registry.
    #[arg(long, default_value_t = 4)]
    pub size: usize,
}
