//! The `verify` subcommand: builds the instance list for an identity (either
//! one explicit instance or everything arising from a rank), evaluates the
//! checks in parallel, and streams one JSON report per instance in canonical
//! input order.

use std::process::ExitCode;

use rayon::prelude::*;
use schubert::relations::{
    check_dc_triviality, check_g_ones, check_iterated, check_kronecker, check_macdonald,
    check_main, check_monk_like, check_nabla_grothendieck, check_nabla_schubert, check_residue,
    check_stabilization, iterated_candidates, kronecker_index_bound, ktheory_candidate_ws,
    main_candidate_ws, stabilization_candidate_ws, RelationError, RelationReport,
};
use schubert::{Permutation, PolyCache};

pub struct Explicit {
    pub u: Option<String>,
    pub v: Option<String>,
    pub w: Option<String>,
    pub i: Option<u32>,
    pub k: Option<u64>,
    pub alpha: Option<u32>,
}

/// One checkable instance; kept as data so evaluation can run on a worker
/// pool while output stays in generation order.
enum Job {
    NablaSchubert(Permutation),
    Main(Permutation, Permutation, Permutation),
    Monk(Permutation, u32),
    Residue(Permutation, Permutation, Permutation, u32),
    Stabilization(Permutation, Permutation, Permutation),
    Macdonald(Permutation),
    Iterated(Permutation, Permutation, Permutation, u64),
    Kronecker(Permutation, Permutation, u32),
    Dc(Permutation, Permutation),
    NablaGrothendieck(Permutation),
    Ktheory(Permutation, Permutation, Permutation),
    GOnes(Permutation),
}

impl Job {
    fn run(&self, cache: &PolyCache) -> Result<RelationReport, RelationError> {
        match self {
            Job::NablaSchubert(w) => Ok(check_nabla_schubert(cache, w)),
            Job::Main(u, v, w) => Ok(check_main(cache, u, v, w)),
            Job::Monk(v, i) => Ok(check_monk_like(cache, v, *i)),
            Job::Residue(u, v, w, alpha) => check_residue(cache, u, v, w, *alpha),
            Job::Stabilization(u, v, w) => Ok(check_stabilization(cache, u, v, w)),
            Job::Macdonald(w) => Ok(check_macdonald(cache, w)),
            Job::Iterated(u, v, w, k) => check_iterated(cache, u, v, w, *k),
            Job::Kronecker(u, v, i) => check_kronecker(cache, u, v, *i),
            Job::Dc(u, v) => Ok(check_dc_triviality(cache, u, v)),
            Job::NablaGrothendieck(w) => Ok(check_nabla_grothendieck(cache, w)),
            Job::Ktheory(u, v, w) => Ok(check_ktheory_main(cache, u, v, w)),
            Job::GOnes(w) => Ok(check_g_ones(cache, w)),
        }
    }
}

use schubert::relations::check_ktheory_main;

pub const IDENTITIES: &[&str] = &[
    "hpsw",
    "main",
    "monk",
    "residue",
    "stabilization",
    "macdonald",
    "iterated",
    "kronecker",
    "dc",
    "psw",
    "ktheory",
    "g-ones",
];

fn usage(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn parse_perm(text: &str) -> Result<Permutation, String> {
    text.parse::<Permutation>()
        .map_err(|e| format!("bad permutation {text:?}: {e}"))
}

fn need_perm(opt: &Option<String>, name: &str) -> Result<Permutation, String> {
    match opt {
        Some(t) => parse_perm(t),
        None => Err(format!("identity requires --{name}")),
    }
}

/// Builds the explicit single instance for an identity.
fn explicit_job(identity: &str, e: &Explicit) -> Result<Job, String> {
    match identity {
        "hpsw" => Ok(Job::NablaSchubert(need_perm(&e.w, "w")?)),
        "main" => Ok(Job::Main(
            need_perm(&e.u, "u")?,
            need_perm(&e.v, "v")?,
            need_perm(&e.w, "w")?,
        )),
        "monk" => Ok(Job::Monk(
            need_perm(&e.v, "v")?,
            e.i.ok_or("identity requires --i")?,
        )),
        "residue" => Ok(Job::Residue(
            need_perm(&e.u, "u")?,
            need_perm(&e.v, "v")?,
            need_perm(&e.w, "w")?,
            e.alpha.ok_or("identity requires --alpha")?,
        )),
        "stabilization" => Ok(Job::Stabilization(
            need_perm(&e.u, "u")?,
            need_perm(&e.v, "v")?,
            need_perm(&e.w, "w")?,
        )),
        "macdonald" => Ok(Job::Macdonald(need_perm(&e.w, "w")?)),
        "iterated" => Ok(Job::Iterated(
            need_perm(&e.u, "u")?,
            need_perm(&e.v, "v")?,
            need_perm(&e.w, "w")?,
            e.k.ok_or("identity requires --k")?,
        )),
        "kronecker" => Ok(Job::Kronecker(
            need_perm(&e.u, "u")?,
            need_perm(&e.v, "v")?,
            e.i.ok_or("identity requires --i")?,
        )),
        "dc" => Ok(Job::Dc(need_perm(&e.u, "u")?, need_perm(&e.v, "v")?)),
        "psw" => Ok(Job::NablaGrothendieck(need_perm(&e.w, "w")?)),
        "ktheory" => Ok(Job::Ktheory(
            need_perm(&e.u, "u")?,
            need_perm(&e.v, "v")?,
            need_perm(&e.w, "w")?,
        )),
        "g-ones" => Ok(Job::GOnes(need_perm(&e.w, "w")?)),
        _ => Err(format!(
            "unknown identity {identity:?}; expected one of {}",
            IDENTITIES.join(", ")
        )),
    }
}

/// Builds every instance of an identity arising from rank `n`; candidate
/// index sets are read off the relevant product supports, outside which all
/// terms vanish.
fn all_jobs(cache: &PolyCache, identity: &str, n: usize, e: &Explicit) -> Result<Vec<Job>, String> {
    let all = Permutation::all(n);
    let mut jobs = Vec::new();
    match identity {
        "hpsw" => jobs.extend(all.into_iter().map(Job::NablaSchubert)),
        "macdonald" => jobs.extend(all.into_iter().map(Job::Macdonald)),
        "psw" => jobs.extend(all.into_iter().map(Job::NablaGrothendieck)),
        "g-ones" => jobs.extend(all.into_iter().map(Job::GOnes)),
        "main" => {
            for u in &all {
                for v in &all {
                    for w in main_candidate_ws(cache, u, v) {
                        jobs.push(Job::Main(u.clone(), v.clone(), w));
                    }
                }
            }
        }
        "stabilization" => {
            for u in &all {
                for v in &all {
                    for w in stabilization_candidate_ws(cache, u, v) {
                        jobs.push(Job::Stabilization(u.clone(), v.clone(), w));
                    }
                }
            }
        }
        "ktheory" => {
            for u in &all {
                for v in &all {
                    for w in ktheory_candidate_ws(cache, u, v) {
                        jobs.push(Job::Ktheory(u.clone(), v.clone(), w));
                    }
                }
            }
        }
        "monk" => {
            for v in &all {
                for i in 1..=n as u32 {
                    jobs.push(Job::Monk(v.clone(), i));
                }
            }
        }
        "residue" => {
            let alpha = e.alpha.ok_or("residue sweeps require --alpha")?;
            if alpha == 0 {
                return Err("--alpha must be positive".into());
            }
            let admissible: Vec<&Permutation> = all
                .iter()
                .filter(|p| p.left_descents().iter().all(|d| d % alpha == 0))
                .collect();
            for u in &admissible {
                for v in &admissible {
                    for w in main_candidate_ws(cache, u, v) {
                        jobs.push(Job::Residue((*u).clone(), (*v).clone(), w, alpha));
                    }
                }
            }
        }
        "iterated" => {
            for u in &all {
                for v in &all {
                    if u.length() + v.length() == 0 {
                        continue;
                    }
                    for (k, ws) in iterated_candidates(cache, u, v) {
                        for w in ws {
                            jobs.push(Job::Iterated(u.clone(), v.clone(), w, k));
                        }
                    }
                }
            }
        }
        "kronecker" => {
            for u in &all {
                for v in &all {
                    if u.is_identity() || v.is_identity() {
                        continue;
                    }
                    let bound = kronecker_index_bound(cache, u, v);
                    for i in 1..bound {
                        jobs.push(Job::Kronecker(u.clone(), v.clone(), i));
                    }
                }
            }
        }
        "dc" => {
            for u in &all {
                for v in &all {
                    jobs.push(Job::Dc(u.clone(), v.clone()));
                }
            }
        }
        _ => {
            return Err(format!(
                "unknown identity {identity:?}; expected one of {}",
                IDENTITIES.join(", ")
            ))
        }
    }
    Ok(jobs)
}

pub fn cmd_verify(
    cache: &PolyCache,
    identity: &str,
    explicit: &Explicit,
    all_n: Option<usize>,
) -> ExitCode {
    let jobs = match all_n {
        Some(n) => match all_jobs(cache, identity, n, explicit) {
            Ok(jobs) => jobs,
            Err(e) => return usage(e),
        },
        None => match explicit_job(identity, explicit) {
            Ok(job) => vec![job],
            Err(e) => return usage(e),
        },
    };

    let results: Vec<Result<RelationReport, RelationError>> =
        jobs.par_iter().map(|job| job.run(cache)).collect();

    let mut failures = 0usize;
    let total = results.len();
    for result in results {
        match result {
            Ok(report) => {
                if !report.holds {
                    failures += 1;
                }
                println!("{}", report.to_json());
            }
            Err(e) => return usage(e),
        }
    }
    eprintln!(
        "verified {total} instance{} of {identity}: {failures} failed",
        if total == 1 { "" } else { "s" }
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
