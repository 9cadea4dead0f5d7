use zwork_core::branch::{
    branch_elements, decode_code, density_count, encode_string, find_cover, find_separator, format_word,
    intersection_exact, Branch,
};

use crate::args::{FamilyCmd, RunConfig};
use crate::Outcome;

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn branch(cfg: &RunConfig, token: &str) -> anyhow::Result<Branch> {
    Ok(match cfg.registry.resolve(token) {
        Some(e) => e.branch.clone(),
        None => token.parse()?,
    })
}

pub fn run(cfg: &RunConfig, cmd: FamilyCmd) -> anyhow::Result<Outcome> {
    match cmd {
        FamilyCmd::Elements { branch: b, count } => {
            println!("{}", join(&branch_elements(&branch(cfg, &b)?, count)?));
        }
        FamilyCmd::Member { branch: b, n } => {
            let hit = branch(cfg, &b)?.contains(n);
            println!("{hit}");
            return Ok(if hit { Outcome::Verified } else { Outcome::Refuted });
        }
        FamilyCmd::Intersect { a, b } => {
            println!("{{{}}}", join(&intersection_exact(&branch(cfg, &a)?, &branch(cfg, &b)?)?));
        }
        FamilyCmd::Separator { alpha, others } => {
            let others = others.iter().map(|o| branch(cfg, o)).collect::<anyhow::Result<Vec<_>>>()?;
            println!("{}", find_separator(&branch(cfg, &alpha)?, &others)?);
        }
        FamilyCmd::Cover { l, gamma, base } => {
            let base = base.iter().map(|o| branch(cfg, o)).collect::<anyhow::Result<Vec<_>>>()?;
            let mut registry = cfg.registry.clone();
            let cover = find_cover(l, gamma, &mut registry, &base)?;
            for entry in &cover {
                let covered: Vec<u64> = (1..=l).filter(|&n| entry.branch.contains(n)).collect();
                println!("{entry} covers {{{}}}", join(&covered));
            }
            if cover.is_empty() {
                println!("base already covers 1..={l}");
            }
        }
        FamilyCmd::Density { n, depth } => println!("{}", density_count(n, depth)?),
        FamilyCmd::Encode { word } => println!("{}", encode_string(&word)?),
        FamilyCmd::Decode { n } => println!("{}", format_word(&decode_code(n)?)),
    }
    Ok(Outcome::Verified)
}
