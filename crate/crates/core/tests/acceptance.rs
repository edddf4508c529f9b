//! Acceptance criteria, one line each. Run with `cargo test --test acceptance`.
//!
//! Criteria listed in `KNOWN_FAILURES` are reported as FAIL but do not fail the run;
//! any other failure does.

use std::process::ExitCode;
use std::time::Instant;

use pqb_core::blocks::{block_partition, semisimplicity_report};
use pqb_core::combin::Partition;
use pqb_core::error::{Error, Result};
use pqb_core::repmod::{gram_matrix, jm_action};
use pqb_core::verify::*;
use pqb_core::LaurentScalar;

/// The residue linkage closure is finer than the 2-core partition from l = 2 on.
const KNOWN_FAILURES: &[usize] = &[8];

fn all(parts: Vec<Result<String>>) -> Result<String> {
    let mut out = Vec::new();
    for p in parts {
        out.push(p?);
    }
    Ok(out.join("; "))
}

fn falsified(msg: String) -> Error {
    Error::Falsified(msg)
}

fn jm_examples() -> Result<String> {
    let q = LaurentScalar::q();
    let want = [("[2]", q.clone()), ("[1,1]", -&q.unit_inverse().unwrap())];
    for (lam, d) in want {
        let lambda: Partition = lam.parse()?;
        let a = jm_action(2, &lambda, 2)?;
        if a.diagonal != vec![d.clone()] {
            return Err(falsified(format!("x_2 on C({lam}) has diagonal {:?}, expected ({d})", a.diagonal)));
        }
    }
    Ok("l=2 diagonals (q) and (-q^-1)".into())
}

fn witnesses() -> Result<String> {
    let g = gram_matrix(&Partition::empty(), 2)?;
    if g.len() != 1 || g[0].len() != 1 || !g[0][0].is_zero() {
        return Err(falsified(format!("gram(empty, 2) = {g:?}")));
    }
    let b = block_partition(2);
    let members: Vec<String> = b.iter().flat_map(|x| x.members.iter().map(|p| p.to_string())).collect();
    if b.len() != 1 || members.len() != 2 {
        return Err(falsified(format!("block_partition(2) has {} blocks: {members:?}", b.len())));
    }
    for l in 0..=5 {
        let r = semisimplicity_report(l)?;
        if r.semisimple != (l <= 1) {
            return Err(falsified(format!("l={l}: semisimple = {}", r.semisimple)));
        }
    }
    Ok("gram(empty,2) = [[0]], one block at l=2, semisimple iff l <= 1 for l <= 5".into())
}

fn main() -> ExitCode {
    let criteria: Vec<(usize, &str, Box<dyn Fn() -> Result<String>>)> = vec![
        (1, "hom-space dimensions", Box::new(|| hom_dimensions(12))),
        (2, "algebra rank", Box::new(|| all(vec![m_basis_rank(6), dimension_identity(6)]))),
        (
            3,
            "relation suite",
            Box::new(|| all(vec![category_relation_suite(4), algebra_relation_suite(5)])),
        ),
        (
            4,
            "oracle equivalence",
            Box::new(|| all(vec![algebra_matches_oracle(3, 3), engine_matches_oracle(200, 4, 6, 1)])),
        ),
        (
            5,
            "JM suite",
            Box::new(|| all(vec![jm_commutativity(5), jm_triangularity(5), jm_examples()])),
        ),
        (6, "branching", Box::new(|| branching(5))),
        (7, "non-semisimplicity witnesses", Box::new(witnesses)),
        (8, "block classification", Box::new(|| block_consistency(5))),
        (9, "restriction identity", Box::new(|| restriction(6))),
        (10, "coefficient independence", Box::new(|| standard_congruence(4))),
    ];
    let mut unexpected = 0;
    for (k, name, f) in criteria {
        let t = Instant::now();
        let r = f();
        let secs = t.elapsed().as_secs_f64();
        let (tag, detail) = match &r {
            Ok(d) => ("PASS", d.clone()),
            Err(e) => ("FAIL", e.to_string()),
        };
        let known = KNOWN_FAILURES.contains(&k);
        let note = match (r.is_ok(), known) {
            (false, true) => " (known failure)",
            (true, true) => " (listed as a known failure but passed)",
            _ => "",
        };
        println!("{tag} criterion {k:>2} {name}: {detail} [{secs:.1}s]{note}");
        if r.is_err() && !known {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        println!("{unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
