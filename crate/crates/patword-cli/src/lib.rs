//! Command-line front end: classification, series computation by any
//! method, weight tables, fixed-point listings, the verification matrix,
//! and randomized identity checks.
//!
//! Exit codes: 0 success, 1 usage or validation error, 2 verification
//! mismatch (verify only).

use clap::{Args, Parser, Subcommand, ValueEnum};

use patword::algebra::{TSeries, ZMode};
use patword::closed_forms::{closed_series, identity_check, MasterKind};
use patword::clusters::weight_table;
use patword::fixtures::fixture_hash;
use patword::oracle::{
    brute_series, dp_series, enumerate_fixed_points, recip_coeff_compositions,
    recip_coeff_fixed_points, Budget, SeriesRequest,
};
use patword::overlap::{classify_pattern, AlphabetSpec};
use patword::verify::verify_methods;
use patword::words::{MatchMode, Pattern};

pub const DEFAULT_SEED: u64 = 20240915;

fn version_string() -> String {
    format!(
        "patword {} (fixture set {:016x})",
        env!("CARGO_PKG_VERSION"),
        fixture_hash()
    )
}

#[derive(Parser, Debug)]
#[command(
    name = "patword",
    about = "Descent distributions of words avoiding a consecutive pattern",
    disable_version_flag = true
)]
pub struct Cli {
    /// Print version and fixture-set hash
    #[arg(long, global = true)]
    pub version: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Reduced,
    Exact,
}

impl From<ModeArg> for MatchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Reduced => MatchMode::Reduced,
            ModeArg::Exact => MatchMode::Exact,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Brute,
    Dp,
    Closed,
    Recip,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ZModeArg {
    Ones,
    Symbolic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputArg {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum WhichArg {
    Des,
    Ris,
    Lev,
    Wdes,
}

impl From<WhichArg> for MasterKind {
    fn from(w: WhichArg) -> Self {
        match w {
            WhichArg::Des => MasterKind::Des,
            WhichArg::Ris => MasterKind::Ris,
            WhichArg::Lev => MasterKind::Lev,
            WhichArg::Wdes => MasterKind::WDes,
        }
    }
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    /// Pattern word ("2341", or "10,3,11" for letters above 9)
    #[arg(long)]
    pub pattern: String,
    /// Alphabet size k (letters 1..=k)
    #[arg(long)]
    pub alphabet: u32,
    /// Match mode
    #[arg(long, value_enum, default_value_t = ModeArg::Reduced)]
    pub mode: ModeArg,
}

#[derive(Args, Debug)]
pub struct BudgetArgs {
    /// Brute-force word-step budget
    #[arg(long)]
    pub word_budget: Option<u64>,
    /// Transfer-matrix transition budget
    #[arg(long)]
    pub state_budget: Option<u64>,
    /// Fixed-point backtracking budget (bounds k^n)
    #[arg(long)]
    pub fixpoint_budget: Option<u64>,
}

impl BudgetArgs {
    fn to_budget(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(v) = self.word_budget {
            b.brute_word_steps = v;
        }
        if let Some(v) = self.state_budget {
            b.dp_transitions = v;
        }
        if let Some(v) = self.fixpoint_budget {
            b.fixpoint_steps = v;
        }
        b
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Overlap sets and the overlapping-property classification
    Classify {
        /// Pattern word
        pattern: String,
        #[arg(long)]
        alphabet: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Reduced)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = OutputArg::Json)]
        output: OutputArg,
    },
    /// Avoidance series by one method
    Series {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Dp)]
        method: MethodArg,
        #[arg(long = "z", value_enum, default_value_t = ZModeArg::Ones)]
        zmode: ZModeArg,
        /// Worker threads for brute-force sharding (results identical)
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, value_enum, default_value_t = OutputArg::Text)]
        output: OutputArg,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Collapse weight table per surviving letter pair
    Weights {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        order: usize,
        #[arg(long = "z", value_enum, default_value_t = ZModeArg::Ones)]
        zmode: ZModeArg,
        #[arg(long, value_enum, default_value_t = OutputArg::Json)]
        output: OutputArg,
    },
    /// Run every applicable method and diff the results
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        order: usize,
        #[arg(long = "z", value_enum, default_value_t = ZModeArg::Ones)]
        zmode: ZModeArg,
        #[arg(long, value_enum, default_value_t = OutputArg::Json)]
        output: OutputArg,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Test hook: perturb the weight table to force a mismatch
        #[arg(long, hide = true)]
        corrupt_weights: bool,
    },
    /// Fixed points of the brick-splitting involution at one length
    Fixpoints {
        #[command(flatten)]
        common: CommonArgs,
        /// Word length n
        #[arg(long)]
        length: usize,
        /// List every fixed point, not just the signed sum
        #[arg(long)]
        list: bool,
        #[arg(long, value_enum, default_value_t = OutputArg::Text)]
        output: OutputArg,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Randomized check of one labeled master identity
    Identity {
        #[arg(long, value_enum)]
        which: WhichArg,
        #[arg(long)]
        alphabet: u32,
        #[arg(long)]
        order: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// RNG seed (fixed default for reproducibility)
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OutputArg::Json)]
        output: OutputArg,
    },
}

pub struct RunOutput {
    pub exit_code: i32,
    pub stdout: String,
}

fn zmode_of(arg: ZModeArg, k: u32) -> ZMode {
    match arg {
        ZModeArg::Ones => ZMode::Ones,
        ZModeArg::Symbolic => ZMode::Symbolic { k },
    }
}

fn series_text(series: &TSeries) -> String {
    series.to_string()
}

fn render_series(series: &TSeries, output: OutputArg) -> String {
    match output {
        OutputArg::Text => series_text(series),
        OutputArg::Json => serde_json::to_string_pretty(series).expect("series serializes"),
    }
}

/// Parse and run; errors map to exit code 1, verification mismatches to 2.
pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders help/usage itself; --help is a success
            let code = if e.use_stderr() { 1 } else { 0 };
            return RunOutput {
                exit_code: code,
                stdout: e.to_string(),
            };
        }
    };
    if cli.version {
        return RunOutput {
            exit_code: 0,
            stdout: version_string(),
        };
    }
    let Some(command) = cli.command else {
        return RunOutput {
            exit_code: 1,
            stdout: "no subcommand given; try --help".to_string(),
        };
    };
    match dispatch(command) {
        Ok(out) => out,
        Err(e) => RunOutput {
            exit_code: 1,
            stdout: format!("error: {e}"),
        },
    }
}

fn dispatch(command: Command) -> patword::Result<RunOutput> {
    let out = match command {
        Command::Classify {
            pattern,
            alphabet,
            mode,
            output,
        } => {
            let u = Pattern::parse(&pattern, mode.into())?;
            let class = classify_pattern(&u, AlphabetSpec::Bounded(alphabet))?;
            let json = class.to_json();
            let text = match output {
                OutputArg::Json => serde_json::to_string_pretty(&json).expect("json renders"),
                OutputArg::Text => format!(
                    "pattern {u} over [{alphabet}]: case {}\n st(P) = {:?}\n st([{alphabet}]) = {:?}\n est = {:?}",
                    class.case,
                    class.st_unbounded,
                    class.st_bounded,
                    class.est,
                ),
            };
            RunOutput {
                exit_code: 0,
                stdout: text,
            }
        }
        Command::Series {
            common,
            order,
            method,
            zmode,
            threads,
            output,
            budget,
        } => {
            let u = Pattern::parse(&common.pattern, common.mode.into())?;
            validate_exact_alphabet(&u, common.alphabet)?;
            let zm = zmode_of(zmode, common.alphabet);
            let mut req = SeriesRequest::new(u.clone(), common.alphabet, order).with_zmode(zm);
            req.budget = budget.to_budget();
            req.threads = threads;
            let series = match method {
                MethodArg::Brute => brute_series(&req)?,
                MethodArg::Dp => dp_series(&req)?,
                MethodArg::Closed => closed_series(&u, common.alphabet, order, zm)?,
                MethodArg::Recip => {
                    let mut u_series = TSeries::one(order, zm);
                    for n in 1..=order {
                        *u_series.coeff_mut(n) =
                            recip_coeff_compositions(&u, common.alphabet, n, zm, &req.budget)?;
                    }
                    u_series.reciprocal()?
                }
            };
            RunOutput {
                exit_code: 0,
                stdout: render_series(&series, output),
            }
        }
        Command::Weights {
            common,
            order,
            zmode,
            output,
        } => {
            let u = Pattern::parse(&common.pattern, common.mode.into())?;
            validate_exact_alphabet(&u, common.alphabet)?;
            let zm = zmode_of(zmode, common.alphabet);
            let table = weight_table(&u, common.alphabet, order, zm)?;
            let text = match output {
                OutputArg::Json => {
                    serde_json::to_string_pretty(&table.to_json()).expect("json renders")
                }
                OutputArg::Text => {
                    let mut lines = vec![format!(
                        "weights for {u} over [{}], case {}",
                        common.alphabet, table.case
                    )];
                    for ((a, b), series) in &table.entries {
                        lines.push(format!("  ({a},{b}): {}", series_text(series)));
                    }
                    lines.join("\n")
                }
            };
            RunOutput {
                exit_code: 0,
                stdout: text,
            }
        }
        Command::Verify {
            common,
            order,
            zmode,
            output,
            budget,
            corrupt_weights,
        } => {
            let u = Pattern::parse(&common.pattern, common.mode.into())?;
            validate_exact_alphabet(&u, common.alphabet)?;
            let zm = zmode_of(zmode, common.alphabet);
            let mut req = SeriesRequest::new(u, common.alphabet, order).with_zmode(zm);
            req.budget = budget.to_budget();
            let report = verify_methods(&req, corrupt_weights)?;
            let text = match output {
                OutputArg::Json => {
                    serde_json::to_string_pretty(&report.to_json()).expect("json renders")
                }
                OutputArg::Text => {
                    let mut lines = vec![format!(
                        "agree: {} (methods: {})",
                        report.agree,
                        report.methods.join(", ")
                    )];
                    if let Some(mm) = &report.first_mismatch {
                        lines.push(format!(
                            "first mismatch at t^{} x^{}: {} vs {}",
                            mm.t, mm.x, mm.lhs, mm.rhs
                        ));
                    }
                    lines.extend(report.warnings.iter().cloned());
                    lines.join("\n")
                }
            };
            RunOutput {
                exit_code: if report.agree { 0 } else { 2 },
                stdout: text,
            }
        }
        Command::Fixpoints {
            common,
            length,
            list,
            output,
            budget,
        } => {
            let u = Pattern::parse(&common.pattern, common.mode.into())?;
            validate_exact_alphabet(&u, common.alphabet)?;
            let b = budget.to_budget();
            let sum =
                recip_coeff_fixed_points(&u, common.alphabet, length, ZMode::Ones, &b)?;
            let points = if list {
                Some(enumerate_fixed_points(&u, common.alphabet, length, &b)?)
            } else {
                None
            };
            let text = match output {
                OutputArg::Json => {
                    let items: Vec<serde_json::Value> = points
                        .iter()
                        .flatten()
                        .map(|fp| {
                            serde_json::json!({
                                "bricks": fp.composition.parts(),
                                "word": fp.word.to_string(),
                            })
                        })
                        .collect();
                    serde_json::to_string_pretty(&serde_json::json!({
                        "length": length,
                        "signed_sum": sum.to_string(),
                        "fixed_points": items,
                    }))
                    .expect("json renders")
                }
                OutputArg::Text => {
                    let mut lines =
                        vec![format!("signed fixed-point sum at length {length}: {sum}")];
                    if let Some(points) = points {
                        for fp in points {
                            lines.push(format!(
                                "  bricks {:?} word {}",
                                fp.composition.parts(),
                                fp.word
                            ));
                        }
                    }
                    lines.join("\n")
                }
            };
            RunOutput {
                exit_code: 0,
                stdout: text,
            }
        }
        Command::Identity {
            which,
            alphabet,
            order,
            trials,
            seed,
            output,
        } => {
            let report = identity_check(which.into(), alphabet, order, trials, seed)?;
            let text = match output {
                OutputArg::Json => {
                    serde_json::to_string_pretty(&report.to_json()).expect("json renders")
                }
                OutputArg::Text => format!(
                    "agree: {} ({} trials, seed {seed}){}",
                    report.agree,
                    trials,
                    report
                        .first_mismatch
                        .as_ref()
                        .map(|mm| format!(
                            "\nfirst mismatch at t^{} x^{}: {} vs {}",
                            mm.t, mm.x, mm.lhs, mm.rhs
                        ))
                        .unwrap_or_default()
                ),
            };
            RunOutput {
                exit_code: if report.agree { 0 } else { 2 },
                stdout: text,
            }
        }
    };
    Ok(out)
}

/// Exact-match patterns must fit inside the alphabet.
fn validate_exact_alphabet(u: &Pattern, k: u32) -> patword::Result<()> {
    if u.mode() == MatchMode::Exact && u.word().max_letter() > k {
        return Err(patword::Error::InvalidRequest(format!(
            "exact pattern {u} uses letters above the alphabet [{k}]"
        )));
    }
    Ok(())
}
