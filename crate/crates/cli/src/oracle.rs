use zwork_core::filter::oracle_points;
use zwork_core::{Ambient, Point, SetExpr, Truncation};

use crate::args::{OracleCmd, RunConfig};
use crate::claims::{parse_claims, Claim};
use crate::{io, Outcome};

/// Truncated points of `a` outside `b`, in enumeration order.
fn violations(a: &SetExpr, b: &SetExpr, tr: Truncation, ambient: Ambient, limit: usize) -> anyhow::Result<Vec<Point>> {
    Ok(oracle_points(a, b, tr, ambient)?
        .into_iter()
        .filter(|q| a.contains(q) && !b.contains(q))
        .take(limit)
        .collect())
}

pub fn evaluate(claim: &Claim, tr: Truncation, ambient: Ambient, limit: usize) -> anyhow::Result<Vec<Point>> {
    Ok(match claim {
        Claim::Subset(a, b) => violations(a, b, tr, ambient, limit)?,
        Claim::Equal(a, b) => {
            let mut found = violations(a, b, tr, ambient, limit)?;
            found.extend(violations(b, a, tr, ambient, limit.saturating_sub(found.len()))?);
            found
        }
        Claim::Empty(a) => violations(a, &SetExpr::empty(), tr, ambient, limit)?,
    })
}

pub fn run(cfg: &RunConfig, cmd: OracleCmd) -> anyhow::Result<Outcome> {
    let claims = parse_claims(&io::read(&cmd.claims)?, &cfg.registry)?;
    let mut all_hold = true;
    for claim in &claims {
        let found = evaluate(claim, cfg.truncation, cfg.ambient, cmd.examples.max(1))?;
        if found.is_empty() {
            println!("holds {claim} [{} {}]", cfg.truncation, cfg.ambient);
        } else {
            all_hold = false;
            let shown: Vec<String> = found.iter().take(cmd.examples).map(ToString::to_string).collect();
            println!("fails {claim} [{} {}] at {}", cfg.truncation, cfg.ambient, shown.join(" "));
        }
    }
    Ok(if all_hold { Outcome::Verified } else { Outcome::Refuted })
}
