use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use orenorm::central::{bound, mclm};
use orenorm::cyclic_algebra::CyclicAlgebra;
use orenorm::factor::{
    all_factorizations, is_irreducible, rough_factorize, Factorization, IrreducibilityOptions, Verdict,
};
use orenorm::norm::{build_rho, reduced_norm};
use orenorm::oracle::{brute_factorizations, brute_irreducible, OracleBudget};
use orenorm::ring_spec::{Ring, RingSpec};
use orenorm::skew::{OreCoefficient, SkewPolynomial, SkewRing};
use orenorm::verify::{csa_checks, run_suite, Suite, SuiteReport};
use orenorm::{Error, Result};

#[derive(Parser)]
#[command(name = "orenorm", version, about = "Reduced norms, bounds and factorizations of skew polynomials")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Case {
    Sigma,
    Delta,
}

#[derive(Args, Clone)]
struct RingArgs {
    /// Ring family.
    #[arg(long, value_enum)]
    case: Option<Case>,
    /// Characteristic.
    #[arg(long)]
    p: Option<u64>,
    /// Tower moduli, levels separated by ';', e.g. "g^2+g+1".
    #[arg(long)]
    tower: Option<String>,
    /// σ = (a ↦ a^(p^j)).
    #[arg(long, default_value_t = 1)]
    sigma_power: usize,
    /// Derivation, "du" or "r*du" with r = δ(u).
    #[arg(long)]
    delta: Option<String>,
    /// Central unit u (σ case).
    #[arg(long)]
    u: Option<String>,
    /// Ring specification file (JSON); overrides the flags above.
    #[arg(long)]
    ring: Option<PathBuf>,
}

impl RingArgs {
    fn spec(&self) -> Result<RingSpec> {
        if let Some(path) = &self.ring {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::InvalidSpec(format!("cannot read {}: {e}", path.display())))?;
            return RingSpec::from_json(&text);
        }
        let p = self.p.ok_or_else(|| Error::InvalidSpec("--p is required".into()))?;
        match self.case {
            None => Err(Error::InvalidSpec("--case is required (sigma or delta)".into())),
            Some(Case::Sigma) => Ok(RingSpec::Sigma {
                p,
                tower: self.tower.clone().ok_or_else(|| Error::InvalidSpec("--tower is required for --case sigma".into()))?,
                sigma_power: self.sigma_power,
                u: self.u.clone(),
            }),
            Some(Case::Delta) => {
                if self.u.is_some() {
                    return Err(Error::InvalidSpec("--u applies to --case sigma only".into()));
                }
                Ok(RingSpec::Delta {
                    p,
                    tower: self.tower.clone(),
                    delta: self.delta.clone().unwrap_or_else(|| "du".into()),
                })
            }
        }
    }
}

#[derive(Args, Clone)]
struct PolyArgs {
    #[command(flatten)]
    ring: RingArgs,
    /// Polynomial literal in t, e.g. "(g+1)*t^2 + g*t + 1".
    #[arg(long)]
    poly: String,
}

#[derive(Args, Clone, Copy)]
struct SeedArg {
    /// Seed for randomized steps.
    #[arg(long, env = "ORENORM_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Clone, Copy)]
struct BudgetArg {
    /// Maximum number of candidate divisors the oracle may enumerate.
    #[arg(long, default_value_t = OracleBudget::default().max_candidates)]
    budget: u128,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced norm N(f).
    Norm {
        #[command(flatten)]
        args: PolyArgs,
        /// Also print the matrix ρ(f).
        #[arg(long)]
        show_rho: bool,
    },
    /// Minimal central left multiple of f.
    Mclm {
        #[command(flatten)]
        args: PolyArgs,
    },
    /// Bound of f (its minimal central left multiple).
    Bound {
        #[command(flatten)]
        args: PolyArgs,
    },
    /// Irreducibility verdict.
    Irreducible {
        #[command(flatten)]
        args: PolyArgs,
        /// Fall back to brute force when the norm argument is inconclusive.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        budget: BudgetArg,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Factorization into irreducibles.
    Factor {
        #[command(flatten)]
        args: PolyArgs,
        /// Permutation of the norm factors, e.g. "1,0,2".
        #[arg(long, value_delimiter = ',', conflicts_with = "all_orderings")]
        ordering: Option<Vec<usize>>,
        /// One factorization per ordering of the norm factors.
        #[arg(long)]
        all_orderings: bool,
        /// Use brute force when the norm argument does not apply.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        budget: BudgetArg,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Brute-force answers over a finite field.
    Oracle {
        #[arg(value_enum)]
        task: OracleTask,
        #[command(flatten)]
        args: PolyArgs,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// Check the cyclic-algebra norm identities on random samples.
    CsaVerify {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        a: i64,
        #[arg(long, default_value_t = 1)]
        u: i64,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[command(flatten)]
        seed: SeedArg,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long)]
        trials: Option<usize>,
        #[command(flatten)]
        seed: SeedArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleTask {
    Factor,
    Irreducible,
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    Suite::parse(s).map_err(|e| e.to_string())
}

struct Output {
    text: String,
    json: Value,
    code: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, code: 0 }
    }
}

fn factorization_list<C: OreCoefficient>(list: &[Factorization<C>]) -> Output {
    let text = list.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n");
    let json = json!({
        "count": list.len(),
        "factorizations": list.iter().map(Factorization::to_json).collect::<Vec<_>>(),
    });
    Output::ok(text, json)
}

fn poly_command<C: OreCoefficient>(ring: &SkewRing<C>, command: &Command) -> Result<Output> {
    let parse = |args: &PolyArgs| -> Result<SkewPolynomial<C>> { ring.parse(&args.poly) };
    match command {
        Command::Norm { args, show_rho } => {
            let f = parse(args)?;
            let n = reduced_norm(&f)?;
            let mut text = n.to_string();
            let mut out = json!({ "norm": n.to_string(), "central": n.to_json() });
            if *show_rho {
                let rho = build_rho(&f);
                text = format!("{text}\n{}", rho.to_string().trim_end());
                let rows: Vec<Vec<String>> = (0..rho.size())
                    .map(|i| (0..rho.size()).map(|j| rho.entry(i, j).display_in("x")).collect())
                    .collect();
                out["rho"] = json!(rows);
            }
            Ok(Output::ok(text, out))
        }
        Command::Mclm { args } | Command::Bound { args } => {
            let f = parse(args)?;
            let h = if matches!(command, Command::Mclm { .. }) { mclm(&f)? } else { bound(&f)? };
            Ok(Output::ok(h.to_string(), json!({ "result": h.to_string(), "central": h.to_json() })))
        }
        Command::Irreducible { args, oracle, budget, seed } => {
            let f = parse(args)?;
            let budget = OracleBudget { max_candidates: budget.budget };
            let fallback = |g: &SkewPolynomial<C>| brute_irreducible(g, &budget);
            let mut opts = IrreducibilityOptions::seeded(seed.seed);
            if *oracle {
                opts.fallback = Some(&fallback);
            }
            let rep = is_irreducible(&f, &opts)?;
            let mut text = rep.verdict.label().to_string();
            if let Some(r) = rep.route {
                text += &format!("\nroute: {}", r.label());
            }
            if let Some(d) = rep.mclm_degree {
                text += &format!("\ndeg mclm: {d}");
            }
            text += &format!("\nnorm: {}", rep.norm);
            let code = if rep.verdict == Verdict::Inconclusive { 2 } else { 0 };
            Ok(Output { text, json: rep.to_json(), code })
        }
        Command::Factor { args, ordering, all_orderings, oracle, budget, seed } => {
            let f = parse(args)?;
            let budget = OracleBudget { max_candidates: budget.budget };
            let result = if *all_orderings {
                match all_factorizations(&f, seed.seed) {
                    Err(Error::RepeatedCentralFactors) => {
                        eprintln!("note: the norm has repeated factors; showing the canonical ordering only");
                        rough_factorize(&f, None, seed.seed).map(|x| vec![x])
                    }
                    other => other,
                }
            } else {
                rough_factorize(&f, ordering.as_deref(), seed.seed).map(|x| vec![x])
            };
            let list = match result {
                Err(Error::CriterionNotSatisfied { .. } | Error::InfiniteConstantField) if *oracle => {
                    let mut all = brute_factorizations(&f, &budget)?;
                    if !*all_orderings {
                        all.truncate(1);
                    }
                    all
                }
                other => other?,
            };
            Ok(factorization_list(&list))
        }
        Command::Oracle { task, args, budget } => {
            let f = parse(args)?;
            let budget = OracleBudget { max_candidates: budget.budget };
            match task {
                OracleTask::Factor => Ok(factorization_list(&brute_factorizations(&f, &budget)?)),
                OracleTask::Irreducible => {
                    let verdict = if brute_irreducible(&f, &budget)? { Verdict::Irreducible } else { Verdict::Reducible };
                    let out = json!({ "verdict": verdict.label(), "route": "oracle" });
                    Ok(Output::ok(verdict.label().to_string(), out))
                }
            }
        }
        Command::CsaVerify { .. } | Command::Verify { .. } => unreachable!("handled without a ring"),
    }
}

fn report(rep: SuiteReport) -> Output {
    let code = if rep.pass() { 0 } else { 1 };
    Output { text: rep.to_string(), json: rep.to_json(), code }
}

fn run(command: &Command) -> Result<Output> {
    let args = match command {
        Command::CsaVerify { q, n, d, a, u, trials, seed } => {
            let alg = CyclicAlgebra::new(*q, *n, *d, *a, *u)?;
            let checks = csa_checks(&alg, seed.seed, *trials)?;
            return Ok(report(SuiteReport { suite: "csa-verify".into(), checks }));
        }
        Command::Verify { suite, trials, seed } => return Ok(report(run_suite(*suite, seed.seed, *trials)?)),
        Command::Norm { args, .. }
        | Command::Mclm { args }
        | Command::Bound { args }
        | Command::Irreducible { args, .. }
        | Command::Factor { args, .. }
        | Command::Oracle { args, .. } => args,
    };
    match args.ring.spec()?.build()? {
        Ring::Sigma(ring) => poly_command(&ring, command),
        Ring::Delta(ring) => poly_command(&ring, command),
        Ring::Csa(_) => Err(Error::InvalidSpec("a csa ring file is only accepted by csa-verify".into())),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // usage errors exit 1 so that 2 stays reserved for inconclusive verdicts
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli.command) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON values serialize"));
            } else {
                println!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            if cli.json {
                let message = e.to_string();
                let name = message.split([':', ' ']).next().unwrap_or_default();
                println!("{}", json!({ "error": name, "message": message }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(1)
        }
    }
}
