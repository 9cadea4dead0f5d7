use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zwork_core::check::check_json;
use zwork_core::engines::*;
use zwork_core::{Ambient, Branch, Registry, SetExpr};

use crate::args::{Lemma, RunConfig, SweepCmd};
use crate::{usage, Outcome};

pub fn random_branch(rng: &mut impl Rng) -> Branch {
    let word = |rng: &mut dyn rand::RngCore, n: usize| (0..n).map(|_| rng.gen_range(1..=2u8)).collect::<Vec<_>>();
    let pre = rng.gen_range(0..=5);
    let per = rng.gen_range(1..=3);
    let prefix = word(rng, pre);
    let period = word(rng, per);
    Branch::new(prefix, period).expect("short words are valid")
}

pub fn random_registry(rng: &mut impl Rng, size: usize) -> Registry {
    let mut branches: Vec<Branch> = Vec::new();
    while branches.len() < size {
        let b = random_branch(rng);
        if !branches.contains(&b) {
            branches.push(b);
        }
    }
    Registry::from_branches(branches).expect("distinct branches")
}

fn pick(rng: &mut impl Rng, pool: &[Branch], max: usize) -> Vec<Branch> {
    let k = rng.gen_range(0..=max.min(pool.len()));
    pool.choose_multiple(rng, k).cloned().collect()
}

pub fn run(cfg: &RunConfig, cmd: SweepCmd) -> anyhow::Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let tr = cfg.truncation;
    let size = cmd.size.max(2);
    let mut passed = 0;
    for case in 0..cmd.cases {
        let reg = random_registry(&mut rng, size);
        let entries: Vec<Branch> = reg.branches().cloned().collect();
        let cert = match cmd.lemma {
            Lemma::ExtendibilityA => check_extendibility_a(&reg, tr, cfg.ambient)?,
            Lemma::ContainmentDec | Lemma::ContainmentFull => {
                let f = pick(&mut rng, &entries, 3);
                let rest: Vec<Branch> = entries.iter().filter(|b| !f.contains(b)).cloned().collect();
                let g = pick(&mut rng, &rest, 3);
                if cmd.lemma == Lemma::ContainmentFull {
                    containment_full_product(&f, &g, &reg, tr)?
                } else {
                    let gamma = rng.gen_range(0..=size as u64 + 4);
                    containment_decreasing(&f, &g, gamma, &reg, tr, cfg.ambient)?
                }
            }
            Lemma::PropertyA => {
                let f = pick(&mut rng, &entries, 2);
                let z = if f.is_empty() { SetExpr::Whole } else { SetExpr::union_of(&f) };
                property_a_check(&z, &reg, tr, cfg.ambient)?
            }
            Lemma::ChainInc => increasing_chain_engine(&reg, size, tr, cfg.ambient)?.certificate,
            Lemma::ChainDec => decreasing_chain_engine(&reg, size, tr, cfg.ambient)?.certificate,
            other => return Err(usage(format!("no random sweep for {}", other.name()))),
        };
        match check_json(&cert.to_json()?) {
            Ok(_) => passed += 1,
            Err(e) => println!("case {case}: {e}"),
        }
    }
    let ambient = if cmd.lemma == Lemma::ContainmentFull { Ambient::Product } else { cfg.ambient };
    println!(
        "{}: {passed}/{} certificates verified [{} {} seed={}]",
        cmd.lemma.name(),
        cmd.cases,
        tr,
        ambient,
        cfg.seed
    );
    Ok(if passed == cmd.cases { Outcome::Verified } else { Outcome::Refuted })
}
