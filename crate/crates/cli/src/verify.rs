use serde::Deserialize;
use zwork_core::cert::{AFailure, Certificate, Payload, PropertyBOutcome, Violation};
use zwork_core::check::check_json;
use zwork_core::engines::*;
use zwork_core::{Ambient, Error, Registry};

use crate::args::{Lemma, RunConfig, VerifyCmd};
use crate::{io, usage, Outcome};

#[derive(Deserialize)]
#[serde(untagged)]
enum CoverFile {
    List(Vec<AFailure>),
    Full {
        failures: Vec<AFailure>,
        #[serde(default)]
        registry: Vec<String>,
        gamma: Option<u64>,
    },
}

fn single(cfg: &mut RunConfig, token: Option<&str>, flag: &str) -> anyhow::Result<zwork_core::Branch> {
    let token = token.ok_or_else(|| usage(format!("{flag} is required")))?;
    Ok(cfg.ensure(&[token.to_string()])?.remove(0))
}

fn default_gamma(registry: &Registry) -> u64 {
    registry.max_rank().map_or(0, |r| r + 1)
}

/// Produces the certificate for `lemma`.
pub fn produce(cfg: &mut RunConfig, lemma: Lemma, cmd: &VerifyCmd) -> anyhow::Result<Certificate> {
    let tr = cfg.truncation;
    let ambient = cfg.ambient;
    Ok(match lemma {
        Lemma::ExtendibilityA => check_extendibility_a(&cfg.registry, tr, ambient)?,
        Lemma::ExtendibilityB => {
            let alpha0 = single(cfg, cmd.alpha0.as_deref(), "--alpha0")?;
            let z = cfg.expr(cmd.set.as_deref().ok_or_else(|| usage("--set is required"))?)?;
            check_extendibility_b(&z, &alpha0, &cfg.registry, tr, ambient)?
        }
        Lemma::ContainmentDec => {
            let f = cfg.ensure(&cmd.f)?;
            let g = cfg.ensure(&cmd.g)?;
            let gamma = cmd.gamma.unwrap_or_else(|| default_gamma(&cfg.registry));
            containment_decreasing(&f, &g, gamma, &cfg.registry, tr, ambient)?
        }
        Lemma::ContainmentFull => {
            if ambient != Ambient::Product {
                return Err(usage("containment-full runs in the product space; pass --ambient pi"));
            }
            let f = cfg.ensure(&cmd.f)?;
            let g = cfg.ensure(&cmd.g)?;
            containment_full_product(&f, &g, &cfg.registry, tr)?
        }
        Lemma::PropertyA => {
            let z = cfg.expr(cmd.set.as_deref().ok_or_else(|| usage("--set is required"))?)?;
            property_a_check(&z, &cfg.registry, tr, ambient)?
        }
        Lemma::PropertyB => {
            let path = cmd.cover.as_ref().ok_or_else(|| usage("--cover is required"))?;
            let parsed: CoverFile = serde_json::from_str(&io::read(path)?)
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let (failures, gamma) = match parsed {
                CoverFile::List(f) => (f, None),
                CoverFile::Full {
                    failures,
                    registry,
                    gamma,
                } => {
                    if !registry.is_empty() {
                        cfg.registry = Registry::parse_specs(&registry)?;
                    }
                    (failures, gamma)
                }
            };
            for fail in &failures {
                let tokens: Vec<String> = fail.f.iter().chain(&fail.g).map(|b| b.literal()).collect();
                cfg.ensure(&tokens)?;
            }
            let gamma = cmd.gamma.or(gamma).unwrap_or_else(|| default_gamma(&cfg.registry));
            property_b_refute(&failures, gamma, &cfg.registry, tr, ambient)?
        }
        Lemma::ChainInc => increasing_chain_engine(&cfg.registry, cmd.steps, tr, ambient)?.certificate,
        Lemma::ChainDec => decreasing_chain_engine(&cfg.registry, cmd.steps, tr, ambient)?.certificate,
    })
}

/// Whether a verified certificate asserts its claim or records a refutation.
pub fn outcome_of(cert: &Certificate) -> Outcome {
    match &cert.payload {
        Payload::PropertyA { failure: Some(_), .. } => Outcome::Refuted,
        Payload::PropertyB {
            result: PropertyBOutcome::Counterexample { .. },
            ..
        } => Outcome::Refuted,
        _ => Outcome::Verified,
    }
}

pub fn describe(cert: &Certificate) -> String {
    match &cert.payload {
        Payload::ExtendibilityA { witnesses } => format!("{} separator witnesses", witnesses.len()),
        Payload::ExtendibilityB { exceptions, .. } => format!(
            "exceptions {{{}}}",
            exceptions.iter().map(|b| b.literal()).collect::<Vec<_>>().join(",")
        ),
        Payload::ContainmentDecreasing { cover, .. } => format!(
            "cover {{{}}}",
            cover
                .iter()
                .map(|b| format!("{}@{}", b, cert.params.registry.rank_of(b).unwrap_or_default()))
                .collect::<Vec<_>>()
                .join(",")
        ),
        Payload::ContainmentFull { f, g } => format!("escape schedule for {} removed sets over {} kept", g.len(), f.len()),
        Payload::PropertyA { failure: None, witnesses, .. } => format!("property holds: {} witnesses", witnesses.len()),
        Payload::PropertyA { failure: Some(f), .. } => format!(
            "property fails at F={{{}}}, beta={}",
            f.f.iter().map(|b| b.literal()).collect::<Vec<_>>().join(","),
            f.g[0]
        ),
        Payload::PropertyB { result, .. } => match result {
            PropertyBOutcome::Counterexample { point } => format!("cover claim fails at {point}"),
            PropertyBOutcome::Contradiction { held, violation, .. } => {
                let v = match violation {
                    Violation::Cover { point } => format!("{point} lies in no set"),
                    Violation::Failure { index, point } => format!("{point} breaks failure {index}"),
                };
                format!("contradiction after {held} stage(s): {v}")
            }
        },
        Payload::ChainIncreasing { witnesses, .. } | Payload::ChainDecreasing { witnesses, .. } => {
            format!("{} strictness witnesses", witnesses.len())
        }
        Payload::FilterMember { verdict, .. } => format!("{verdict:?}"),
        Payload::PseudoFinite { exceptions, .. } => format!("exceptions {exceptions:?}"),
        Payload::Nonredundancy { union, .. } => format!("union {union}"),
    }
}

pub fn run(cfg: &RunConfig, cmd: VerifyCmd) -> anyhow::Result<Outcome> {
    if let Some(path) = &cmd.check {
        let cert = check_json(&io::read(path)?)?;
        println!("ok {:?}: {}", cert.kind, describe(&cert));
        return Ok(outcome_of(&cert));
    }
    let lemma = cmd.lemma.ok_or_else(|| usage("a lemma or --check is required"))?;
    let mut cfg = cfg.clone();
    let cert = match produce(&mut cfg, lemma, &cmd) {
        Ok(c) => c,
        Err(e) => {
            if let Some(Error::FailureInvalid { index, point }) = e.downcast_ref::<Error>() {
                println!("failure {index} does not hold on the truncation: {point}");
            }
            return Err(e);
        }
    };
    let text = cert.to_json()?;
    let checked = check_json(&text)?;
    let path = io::target_path(&cfg, lemma.name());
    io::write_atomic(&path, &text)?;
    println!("{} {:?}: {}", lemma.name(), checked.kind, describe(&checked));
    println!("certificate {}", path.display());
    Ok(outcome_of(&checked))
}
