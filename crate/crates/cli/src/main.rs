//! `schub`: exact Schubert/Grothendieck polynomial calculator, identity
//! verifier, and conjecture sweeper.
//!
//! Exit codes: 0 = success / all checks hold; 1 = an identity or conjecture
//! violation was found; 2 = usage or parse error.

mod cache;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use schubert::conjectures::{self, Conjecture};
use schubert::schubert::{
    k_coeff, k_coeff_beta, k_product_expansion, k_product_expansion_beta, product_expansion,
    structure_coeff, Basis,
};
use schubert::{Permutation, PolyCache};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "schub",
    about = "Exact Schubert and Grothendieck polynomial computations, \
             linear-relation verification, and conjecture sweeps",
    version
)]
struct Cli {
    /// Emit JSON instead of plain text where both are available.
    #[arg(long, global = true)]
    json: bool,

    /// Polynomial cache file (also via SCHUBERT_CACHE).
    #[arg(long, global = true, env = "SCHUBERT_CACHE")]
    cache: Option<PathBuf>,

    /// Worker threads for batch verification and sweeps.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Seed for randomized operations; accepted for reproducible scripting.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(multiple = false)]
struct BasisFlags {
    /// Schubert basis (the default).
    #[arg(long)]
    schubert: bool,
    /// Grothendieck basis over the integers.
    #[arg(long)]
    grothendieck: bool,
    /// Grothendieck basis deformed over Z[b].
    #[arg(long = "grothendieck-beta")]
    grothendieck_beta: bool,
}

impl BasisFlags {
    fn basis(&self) -> Basis {
        if self.grothendieck {
            Basis::Grothendieck
        } else if self.grothendieck_beta {
            Basis::BetaGrothendieck
        } else {
            Basis::Schubert
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the basis polynomial of a permutation.
    Poly {
        #[command(flatten)]
        basis: BasisFlags,
        /// Permutation in one-line notation ("14253" or "4,7,9,3,1,2,5,6,8,10").
        w: String,
    },
    /// Print one structure coefficient of a product expansion.
    Coeff {
        #[command(flatten)]
        basis: BasisFlags,
        u: String,
        v: String,
        w: String,
    },
    /// Expand a product of two basis polynomials in that basis.
    Expand {
        #[command(flatten)]
        basis: BasisFlags,
        u: String,
        v: String,
    },
    /// Verify a linear-relation identity; streams one JSON report per instance.
    Verify {
        /// One of: hpsw, main, monk, residue, stabilization, macdonald,
        /// iterated, kronecker, dc, psw, ktheory, g-ones.
        identity: String,
        #[arg(long)]
        u: Option<String>,
        #[arg(long)]
        v: Option<String>,
        #[arg(long)]
        w: Option<String>,
        #[arg(long)]
        i: Option<u32>,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        alpha: Option<u32>,
        /// Check every instance arising from the rank-N symmetric group.
        #[arg(long = "all-n")]
        all_n: Option<usize>,
    },
    /// Sweep a conjecture over all inverse Grassmannian pairs at one rank.
    Sweep {
        /// One of: multfree, covers.
        conjecture: String,
        n: usize,
    },
}

fn usage_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn parse_perm(text: &str) -> Result<Permutation, String> {
    text.parse::<Permutation>()
        .map_err(|e| format!("bad permutation {text:?}: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let _ = cli.seed; // reserved; nothing here samples randomness today

    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return usage_error("--jobs must be at least 1");
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("warning: could not configure {jobs} worker threads: {e}");
        }
    }

    let cache = PolyCache::new();

    // Which basis this command's cache file would hold.
    let cache_basis = match &cli.command {
        Command::Poly { basis, .. } | Command::Coeff { basis, .. } | Command::Expand { basis, .. } => {
            basis.basis()
        }
        Command::Verify { identity, .. } => match identity.as_str() {
            "psw" | "g-ones" => Basis::Grothendieck,
            "ktheory" => Basis::BetaGrothendieck,
            _ => Basis::Schubert,
        },
        Command::Sweep { .. } => Basis::Schubert,
    };

    let mut store_cache = false;
    if let Some(path) = &cli.cache {
        if path.exists() {
            match cache::load(path) {
                Ok(file) if file.basis == cache_basis => {
                    cache::seed(&cache, file);
                    store_cache = true;
                }
                Ok(file) => {
                    eprintln!(
                        "warning: cache {} holds basis {}, command needs {}; ignoring it",
                        path.display(),
                        file.basis,
                        cache_basis
                    );
                }
                Err(e) => {
                    eprintln!("warning: ignoring cache {}: {e}", path.display());
                }
            }
        } else {
            store_cache = true;
        }
    }

    let code = run(&cli, &cache);

    if store_cache {
        if let Some(path) = &cli.cache {
            if let Err(e) = cache::store(path, &cache, cache_basis) {
                eprintln!("warning: could not store cache {}: {e}", path.display());
            }
        }
    }

    code
}

fn run(cli: &Cli, cache: &PolyCache) -> ExitCode {
    match &cli.command {
        Command::Poly { basis, w } => cmd_poly(cache, basis.basis(), w, cli.json),
        Command::Coeff { basis, u, v, w } => cmd_coeff(cache, basis.basis(), u, v, w, cli.json),
        Command::Expand { basis, u, v } => cmd_expand(cache, basis.basis(), u, v, cli.json),
        Command::Verify {
            identity,
            u,
            v,
            w,
            i,
            k,
            alpha,
            all_n,
        } => {
            let explicit = verify::Explicit {
                u: u.clone(),
                v: v.clone(),
                w: w.clone(),
                i: *i,
                k: *k,
                alpha: *alpha,
            };
            verify::cmd_verify(cache, identity, &explicit, *all_n)
        }
        Command::Sweep { conjecture, n } => cmd_sweep(cache, conjecture, *n),
    }
}

fn cmd_poly(cache: &PolyCache, basis: Basis, w_text: &str, as_json: bool) -> ExitCode {
    let w = match parse_perm(w_text) {
        Ok(w) => w,
        Err(e) => return usage_error(e),
    };
    let rendered = match basis {
        Basis::Schubert => cache.schubert(&w).to_string(),
        Basis::Grothendieck => cache.grothendieck(&w).to_string(),
        Basis::BetaGrothendieck => cache.beta_grothendieck(&w).to_string(),
    };
    if as_json {
        let obj = json!({"basis": basis.token(), "w": w.to_string(), "poly": rendered});
        println!("{obj}");
    } else {
        println!("{rendered}");
    }
    ExitCode::SUCCESS
}

fn cmd_coeff(
    cache: &PolyCache,
    basis: Basis,
    u_text: &str,
    v_text: &str,
    w_text: &str,
    as_json: bool,
) -> ExitCode {
    let (u, v, w) = match (parse_perm(u_text), parse_perm(v_text), parse_perm(w_text)) {
        (Ok(u), Ok(v), Ok(w)) => (u, v, w),
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => return usage_error(e),
    };
    let rendered = match basis {
        Basis::Schubert => structure_coeff(cache, &u, &v, &w).to_string(),
        Basis::Grothendieck => k_coeff(cache, &u, &v, &w).to_string(),
        Basis::BetaGrothendieck => {
            use schubert::poly::Ring;
            k_coeff_beta(cache, &u, &v, &w).render()
        }
    };
    if as_json {
        let obj = json!({
            "basis": basis.token(),
            "u": u.to_string(),
            "v": v.to_string(),
            "w": w.to_string(),
            "coeff": rendered,
        });
        println!("{obj}");
    } else {
        println!("{rendered}");
    }
    ExitCode::SUCCESS
}

fn cmd_expand(
    cache: &PolyCache,
    basis: Basis,
    u_text: &str,
    v_text: &str,
    as_json: bool,
) -> ExitCode {
    let (u, v) = match (parse_perm(u_text), parse_perm(v_text)) {
        (Ok(u), Ok(v)) => (u, v),
        (Err(e), _) | (_, Err(e)) => return usage_error(e),
    };
    let terms: Vec<(String, String)> = match basis {
        Basis::Schubert => product_expansion(cache, &u, &v)
            .iter()
            .map(|(w, c)| (w.to_string(), c.to_string()))
            .collect(),
        Basis::Grothendieck => k_product_expansion(cache, &u, &v)
            .iter()
            .map(|(w, c)| (w.to_string(), c.to_string()))
            .collect(),
        Basis::BetaGrothendieck => {
            use schubert::poly::Ring;
            k_product_expansion_beta(cache, &u, &v)
                .iter()
                .map(|(w, c)| (w.to_string(), c.render()))
                .collect()
        }
    };
    if as_json {
        let obj = json!({
            "basis": basis.token(),
            "u": u.to_string(),
            "v": v.to_string(),
            "terms": terms.iter().map(|(w, c)| json!({"w": w, "coeff": c})).collect::<Vec<_>>(),
        });
        println!("{obj}");
    } else {
        for (w, c) in terms {
            println!("{w} {c}");
        }
    }
    ExitCode::SUCCESS
}

fn cmd_sweep(cache: &PolyCache, conjecture_text: &str, n: usize) -> ExitCode {
    let Some(conjecture) = Conjecture::from_token(conjecture_text) else {
        return usage_error(format!(
            "unknown conjecture {conjecture_text:?}; expected multfree or covers"
        ));
    };
    match conjectures::sweep(cache, conjecture, n, true) {
        Ok(report) => {
            println!("{}", report.to_json());
            eprintln!(
                "sweep {} rank {} finished in {} ms ({} ordered pairs, max coefficient {})",
                conjecture.token(),
                n,
                report.wall_time.as_millis(),
                report.pairs_examined,
                report.max_coeff,
            );
            if report.violations.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => usage_error(e),
    }
}
