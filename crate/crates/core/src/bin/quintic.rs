use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use quintic_aut::catalog::{self, Status, VerifyOptions};
use quintic_aut::diffmethod::{diff_profile, diff_rank};
use quintic_aut::invartheory::{admissible_primary_orders, invariant_subspace, semi_invariant_monomials, sweep, DiagonalAction};
use quintic_aut::polyring::{max_variable, parse_matrices, parse_poly_auto, Polynomial, SquareMatrix};
use quintic_aut::projgroup::{GeneratedGroup, ProjectiveClass, DEFAULT_CAP};
use quintic_aut::smoothcert::{self, VerdictSummary};
use quintic_aut::stabkit::{f_lift_element, f_lift_group, semiperm_stabilizer};

#[derive(Parser)]
#[command(name = "quintic", version, about = "Exact checks on automorphism groups of quintic threefolds")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Verify catalog entries end to end (all entries and sweeps by default).
    VerifyCatalog {
        #[arg(long)]
        example: Option<String>,
        #[arg(long, default_value_t = smoothcert::DEFAULT_PRIMES)]
        primes: usize,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        no_semiperm: bool,
        #[arg(long)]
        no_gorenstein: bool,
        /// Record per-entry wall-clock times (makes reports non-reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Degree-D invariant forms of a matrix group, or semi-invariant monomials of a diagonal action.
    Invariants {
        #[arg(long)]
        gens: Option<PathBuf>,
        #[arg(long)]
        degree: u32,
        /// "w1,...,wn@N" for diag(ζ_N^w1, ..., ζ_N^wn).
        #[arg(long)]
        diag_weights: Option<String>,
        #[arg(long, default_value_t = 0)]
        chi: i64,
    },
    /// Smoothness certificate for a hypersurface.
    Smooth {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, default_value_t = smoothcert::DEFAULT_PRIMES)]
        primes: usize,
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// Ranks of the spaces of partial derivatives.
    Diffrank {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        order: Option<u32>,
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// Semi-permutation stabilizer of a form.
    Stab {
        #[arg(long)]
        poly: PathBuf,
        /// Require A(F) = F instead of A(F) proportional to F.
        #[arg(long)]
        strict_invariance: bool,
        #[arg(long)]
        nvars: Option<usize>,
    },
    /// Enumerate the projective group generated by matrices.
    Group {
        #[arg(long)]
        gens: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        fingerprint: bool,
    },
    /// Decide whether generators and their group lift to matrices fixing a form.
    Lift {
        #[arg(long)]
        gens: PathBuf,
        #[arg(long)]
        poly: PathBuf,
    },
    /// Run one exclusion sweep.
    Sweep {
        #[arg(long, value_enum)]
        name: SweepName,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Admissible prime-power orders of diagonal symmetries.
    Orders {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        degree: u64,
        #[arg(long)]
        bound: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepName {
    Order25,
    C2cubed,
    C3cubed,
}

/// Input problems exit with status 2.
struct InputError(String);

impl<E: Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Run = Result<ExitCode, InputError>;

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn read_poly(path: &Path, nvars: Option<usize>) -> Result<Polynomial, InputError> {
    let text = read(path)?;
    let text = text.trim();
    let n = match nvars {
        Some(n) => n,
        None => max_variable(text)?,
    };
    Ok(parse_poly_auto(text, n)?)
}

fn read_gens(path: &Path) -> Result<Vec<SquareMatrix>, InputError> {
    let g = parse_matrices(&read(path)?)?;
    if g.is_empty() {
        return Err(InputError(format!("{}: no matrices", path.display())));
    }
    Ok(g)
}

fn verdict(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

fn verify_catalog(opts: VerifyOptions, json_path: Option<PathBuf>) -> Run {
    let report = catalog::verify_all(&opts)?;
    for e in &report.entries {
        let status = if e.status == Status::Pass { "PASS" } else { "FAIL" };
        let order = e.group_order.found.map_or("-".into(), |x| x.to_string());
        let smooth = e.smoothness.as_ref().map_or("-", |s| s.verdict.as_str());
        print!("{:<14} {status} order {order} {smooth}", e.id);
        if let Some(g) = &e.gorenstein_order {
            print!(" gorenstein {}", g.found.map_or("-".into(), |x| x.to_string()));
        }
        if let Some(s) = &e.semi_perm_stabilizer_order {
            print!(" semiperm {}", s.found.map_or("-".into(), |x| x.to_string()));
        }
        if !e.failures.is_empty() {
            print!(" [{}]", e.failures.join("; "));
        }
        println!();
    }
    for s in &report.sweeps {
        println!("sweep {:<18} {}", s.name, if s.passed { "PASS" } else { "FAIL" });
    }
    if let Some(p) = json_path {
        std::fs::write(&p, json(&report) + "\n").map_err(|e| InputError(format!("{}: {e}", p.display())))?;
    }
    println!("{}", if report.passed { "all checks passed" } else { "some checks failed" });
    Ok(verdict(report.passed))
}

fn invariants(gens: Option<PathBuf>, degree: u32, diag: Option<String>, chi: i64) -> Run {
    if let Some(spec) = diag {
        let (w, m) = spec.split_once('@').ok_or_else(|| InputError("expected \"w1,...,wn@N\"".into()))?;
        let weights: Vec<i64> = w.split(',').map(|x| x.trim().parse::<i64>()).collect::<Result<_, _>>()?;
        let span = semi_invariant_monomials(&DiagonalAction::new(m.trim().parse()?, &weights), degree, chi);
        println!("{} monomials", span.len());
        for e in &span.monomials {
            println!("{}", Polynomial::monomial(*e, quintic_aut::exactnum::Cyclotomic::one(1)));
        }
        return Ok(ExitCode::SUCCESS);
    }
    let path = gens.ok_or_else(|| InputError("either --gens or --diag-weights is required".into()))?;
    let basis = invariant_subspace(&read_gens(&path)?, degree)?;
    println!("dimension {}", basis.len());
    for b in &basis {
        println!("{b}");
    }
    Ok(ExitCode::SUCCESS)
}

fn lift(gens: PathBuf, poly: PathBuf) -> Run {
    let g = read_gens(&gens)?;
    let f = read_poly(&poly, Some(g[0].n()))?;
    for (i, a) in g.iter().enumerate() {
        match f_lift_element(&ProjectiveClass::canonicalize(a)?, &f)? {
            Some(b) => println!("generator {}: lifts\n{b}", i + 1),
            None => println!("generator {}: no lift of the same order fixes F", i + 1),
        }
    }
    let group = GeneratedGroup::projective(&g, DEFAULT_CAP)?;
    match f_lift_group(&group, &f)? {
        Some(l) => {
            println!("group of order {} lifts; branch exponents {:?}", group.order(), l.branches);
            for m in &l.generators {
                println!("{m}\n");
            }
        }
        None => println!("group of order {} does not lift to a group fixing F", group.order()),
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Run {
    match cli.cmd {
        Cmd::VerifyCatalog { example, primes, cap, json, no_semiperm, no_gorenstein, timings } => {
            let opts = VerifyOptions {
                max_primes: primes,
                cap,
                with_semi_perm: !no_semiperm,
                with_gorenstein: !no_gorenstein,
                timings,
                example,
            };
            verify_catalog(opts, json)
        }
        Cmd::Invariants { gens, degree, diag_weights, chi } => invariants(gens, degree, diag_weights, chi),
        Cmd::Smooth { poly, primes, nvars } => {
            let f = read_poly(&poly, nvars)?;
            let v = smoothcert::certify(&f, primes);
            println!("{}", json(&VerdictSummary::from(&v)));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Diffrank { poly, order, nvars } => {
            let f = read_poly(&poly, nvars)?;
            match order {
                Some(i) if i == 0 || i > f.degree() => Err(InputError(format!("order must lie in 1..={}", f.degree()))),
                Some(i) => {
                    println!("{}", diff_rank(&f, i));
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    let p = diff_profile(&f);
                    println!("{}", p.0.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" "));
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        Cmd::Stab { poly, strict_invariance, nvars } => {
            let f = read_poly(&poly, nvars)?;
            let rep = semiperm_stabilizer(&f, !strict_invariance)?;
            println!("{}", json(&rep));
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Group { gens, cap, fingerprint } => {
            let g = GeneratedGroup::projective(&read_gens(&gens)?, cap)?;
            println!("order {}", g.order());
            if fingerprint {
                println!("{}", json(&g.fingerprint()));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Lift { gens, poly } => lift(gens, poly),
        Cmd::Sweep { name, threads } => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads.unwrap_or(0)).build()?;
            let report = pool.install(|| match name {
                SweepName::Order25 => sweep::sweep_order25(),
                SweepName::C2cubed => sweep::sweep_elementary_abelian(2),
                SweepName::C3cubed => sweep::sweep_elementary_abelian(3),
            });
            println!("{}", json(&report));
            Ok(verdict(report.passed))
        }
        Cmd::Orders { dim, degree, bound } => {
            if degree < 3 {
                return Err(InputError("degree must be at least 3".into()));
            }
            let q = admissible_primary_orders(dim, degree, bound);
            println!("{}", q.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
