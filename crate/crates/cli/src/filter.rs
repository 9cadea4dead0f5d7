use zwork_core::check::check_json;
use zwork_core::engines::filter_member_certificate;
use zwork_core::{FilterBase, FilterVerdict, SetExpr};

use crate::args::{FilterCmd, RunConfig};
use crate::{io, usage, Outcome};

pub fn run(cfg: &RunConfig, cmd: FilterCmd) -> anyhow::Result<Outcome> {
    let FilterCmd::Member {
        set,
        generators,
        pairs,
        shift,
    } = cmd;
    let mut cfg = cfg.clone();
    let mut gens = generators.iter().map(|g| cfg.expr(g)).collect::<anyhow::Result<Vec<_>>>()?;
    if pairs {
        let entries: Vec<_> = cfg.registry.branches().cloned().collect();
        for (i, a) in entries.iter().enumerate() {
            for b in &entries[i + 1..] {
                gens.push(SetExpr::atom(a).union(SetExpr::atom(b)));
            }
        }
    }
    if gens.is_empty() {
        return Err(usage("give generators with --gen or --pairs"));
    }
    let mut base = FilterBase::new(gens, cfg.ambient)?;
    for b in cfg.ensure(&shift)? {
        base = base.shifted(SetExpr::atom(&b));
    }
    let z = cfg.expr(&set)?;
    let cert = filter_member_certificate(&base, &z, &cfg.registry, cfg.truncation, cfg.ambient)?;
    let text = cert.to_json()?;
    check_json(&text)?;
    if cfg.out.is_some() || cfg.out_dir.is_some() {
        let path = io::target_path(&cfg, "filter-member");
        io::write_atomic(&path, &text)?;
        println!("certificate {}", path.display());
    }
    let zwork_core::cert::Payload::FilterMember { verdict, .. } = &cert.payload else {
        unreachable!("filter certificate")
    };
    Ok(match verdict {
        FilterVerdict::Proven { generators, exact } => {
            let used: Vec<String> = generators.iter().map(|&i| base.generators[i].to_string()).collect();
            println!("proven{} via {}", if *exact { "" } else { " on the truncation" }, used.join(" "));
            Outcome::Verified
        }
        FilterVerdict::Refuted { point } => {
            println!("refuted at {point}");
            Outcome::Refuted
        }
        FilterVerdict::Unknown { reason } => {
            println!("unknown: {reason}");
            Outcome::Unknown
        }
    })
}
