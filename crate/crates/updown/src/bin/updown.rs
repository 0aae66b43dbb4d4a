//! Command-line front end: parses algebra, representation, and clause
//! inputs, dispatches to the library, and prints one JSON document per
//! run. Exit codes: 0 success or all-pass, 1 semantic failure (an axiom
//! fails, a non-member, inequivalent words, an invalid clause, no sort
//! split, census disagreements), 2 usage or structural errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use updown::axioms::{self, CheckMode};
use updown::construct;
use updown::full;
use updown::generator;
use updown::homs::{self, Decision};
use updown::json;
use updown::lab;
use updown::word::parse_word;
use updown::words;
use updown::{Equation, Error, FiniteAlgebra, HornClause, Kind, Limits, Result, SetRepresentation};

#[derive(Parser)]
#[command(name = "updown")]
#[command(about = "Checkers, deciders, and constructors for finite intersect/union update algebras")]
struct Cli {
    /// Suppress the JSON report; exit codes still reflect the outcome.
    #[arg(long, global = true)]
    quiet: bool,

    /// Atom cap for the full-algebra constructors.
    #[arg(long, global = true)]
    max_universe: Option<usize>,

    /// Cap on the number of tables a census may enumerate.
    #[arg(long, global = true)]
    max_tables: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an axiom system on an algebra and report per-axiom verdicts.
    Check {
        /// Algebra file, or fixtures://<name>.
        input: String,
        /// Which system to check.
        #[arg(long, value_enum, default_value_t = Mode::Standard)]
        mode: Mode,
    },
    /// Decide membership by separation and emit the canonical
    /// representation or an unseparated pair.
    Decide {
        /// Algebra file, or fixtures://<name>.
        input: String,
    },
    /// Build a set representation by one of the explicit constructions.
    Represent {
        /// Algebra file (representation file for --via fold-prime), or
        /// fixtures://<name>.
        input: String,
        /// Which construction to run.
        #[arg(long, value_enum)]
        via: Via,
    },
    /// Rewrite a word to its normal form.
    Normalize {
        /// The word, letters separated by spaces; biaction letters carry
        /// `:down` or `:up`.
        word: String,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Explicit letter declaration order; defaults to name order.
        #[arg(long)]
        declared: Option<String>,
    },
    /// Decide whether an equation holds across the whole class.
    Eqcheck {
        /// The equation, e.g. "c s t s = c t s".
        equation: String,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Decide a Horn clause across the whole class by evaluation in the
    /// one-atom generator.
    Horn {
        /// The clause, e.g. "c s = d s & c t = d t => c = d".
        clause: String,
        #[arg(long, value_enum)]
        kind: KindArg,
    },
    /// Enumerate every labeled table of one shape, check axioms and
    /// membership, and tally the counters.
    Census(CensusArgs),
    /// Compute the transformation monoid of an action or biaction.
    Monoid {
        /// Algebra file, or fixtures://<name>.
        input: String,
    },
    /// Quotient an action by the approximation congruence.
    Quotient {
        /// Action file, or fixtures://<name>.
        input: String,
    },
    /// Restrict a biaction to the image of a word.
    Restrict {
        /// Biaction file, or fixtures://<name>.
        input: String,
        /// The restricting word, e.g. "t:up".
        #[arg(long)]
        word: String,
        /// Skip the axiom precondition and restrict the bare tables.
        #[arg(long)]
        raw: bool,
    },
    /// Search for a sort partition turning an action into a member
    /// biaction.
    Split {
        /// Action file, or fixtures://<name>.
        input: String,
    },
    /// Compute the set band of non-identity operations of an action.
    Opband {
        /// Action file, or fixtures://<name>.
        input: String,
    },
    /// List or emit the built-in examples.
    Fixtures {
        #[command(subcommand)]
        which: FixturesCommand,
    },
    /// Build the full algebra on named atoms, with its representation.
    Full {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Atom names, comma-separated.
        #[arg(long, value_delimiter = ',', num_args = 0.., default_value = "")]
        atoms: Vec<String>,
        /// Build the primed action (all pairs, up-set unconstrained).
        #[arg(long)]
        prime: bool,
    },
}

#[derive(Subcommand)]
enum FixturesCommand {
    /// Print the catalog names.
    List,
    /// Print one fixture's algebra, with its representation when it has
    /// one.
    Emit { name: String },
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    /// State count (action and biaction).
    #[arg(long)]
    c: Option<usize>,
    /// Operation count (action) or band size (setband).
    #[arg(long)]
    s: Option<usize>,
    /// Intersect-sort operation count (biaction).
    #[arg(long)]
    sdown: Option<usize>,
    /// Union-sort operation count (biaction).
    #[arg(long)]
    sup: Option<usize>,
    /// Worker threads over contiguous index ranges.
    #[arg(long, default_value_t = 1)]
    shards: usize,
    /// Also write the report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Sample this many random tables instead of enumerating all.
    #[arg(long)]
    sample: Option<u64>,
    /// Seed for --sample.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Action,
    Biaction,
    Setband,
}

impl From<KindArg> for Kind {
    fn from(arg: KindArg) -> Kind {
        match arg {
            KindArg::Action => Kind::Action,
            KindArg::Biaction => Kind::Biaction,
            KindArg::Setband => Kind::SetBand,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Mode {
    Standard,
    Intersection,
    FullyPr,
}

#[derive(Clone, Copy, ValueEnum)]
enum Via {
    Intersection,
    Quotient,
    Phi,
    FoldPrime,
}

/// One finished run: the report document and whether the verdict counts
/// as a pass.
struct Outcome {
    report: String,
    pass: bool,
}

impl Outcome {
    fn pass(report: String) -> Outcome {
        Outcome { report, pass: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut limits = Limits::default();
    if let Some(cap) = cli.max_universe {
        limits.max_universe = cap;
    }
    if let Some(cap) = cli.max_tables {
        limits.max_tables = cap;
    }
    match run(cli.command, &limits) {
        Ok(outcome) => {
            if !cli.quiet {
                println!("{}", outcome.report);
            }
            if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn load_algebra(input: &str) -> Result<FiniteAlgebra> {
    if let Some(name) = input.strip_prefix("fixtures://") {
        Ok(lab::fixture(name)?.0)
    } else {
        json::algebra_from_json(&read_input(input)?)
    }
}

fn load_representation(input: &str) -> Result<SetRepresentation> {
    if let Some(name) = input.strip_prefix("fixtures://") {
        lab::fixture(name)?.1.ok_or_else(|| {
            Error::Precondition(format!("fixture {name:?} carries no representation"))
        })
    } else {
        json::representation_from_json(&read_input(input)?)
    }
}

fn read_input(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))
}

fn run(command: Command, limits: &Limits) -> Result<Outcome> {
    match command {
        Command::Check { input, mode } => {
            let alg = load_algebra(&input)?;
            let mode = match mode {
                Mode::Standard => CheckMode::Standard,
                Mode::Intersection => CheckMode::Intersection,
                Mode::FullyPr => CheckMode::FullyPr,
            };
            let report = axioms::check_algebra(&alg, mode, limits)?;
            Ok(Outcome { report: json::report_to_json(&report), pass: report.all_pass() })
        }
        Command::Decide { input } => {
            let alg = load_algebra(&input)?;
            let decision = homs::canonical_representation(&alg, limits)?;
            Ok(Outcome {
                report: json::decision_to_json(&decision),
                pass: matches!(decision, Decision::Member(_)),
            })
        }
        Command::Represent { input, via } => {
            let rep = match via {
                Via::Intersection => {
                    construct::intersection_representation(load_algebra(&input)?.as_action()?, limits)?
                }
                Via::Quotient => {
                    construct::quotient_embedding_psi(load_algebra(&input)?.as_action()?, limits)?
                }
                Via::Phi => construct::biaction_quotient_embedding_phi(
                    load_algebra(&input)?.as_biaction()?,
                )?,
                Via::FoldPrime => {
                    let rep = load_representation(&input)?;
                    construct::prime_normalize(rep.as_action()?)?.into()
                }
            };
            Ok(Outcome::pass(json::representation_to_json(&rep)))
        }
        Command::Normalize { word, kind, declared } => {
            let kind = kind.into();
            let parsed = parse_word(kind, &word)?;
            let normal = match declared {
                Some(order) => {
                    words::normalize_word_with(kind, &parsed, &parse_word(kind, &order)?)?
                }
                None => words::normalize_word(kind, &parsed)?,
            };
            Ok(Outcome::pass(json::normal_to_json(&normal)))
        }
        Command::Eqcheck { equation, kind } => {
            let kind = kind.into();
            let equation = Equation::parse(kind, &equation)?;
            let equivalent = words::words_equivalent(kind, &equation, limits)?;
            Ok(Outcome { report: json::equivalence_to_json(equivalent), pass: equivalent })
        }
        Command::Horn { clause, kind } => {
            let clause = HornClause::parse(kind.into(), &clause)?;
            let verdict = generator::horn_valid(&clause, limits)?;
            Ok(Outcome { report: json::horn_to_json(&verdict), pass: verdict.is_valid() })
        }
        Command::Census(args) => {
            let sizes = census_sizes(&args)?;
            let report = match args.sample {
                Some(samples) => lab::census_sample(&sizes, samples, args.seed, limits)?,
                None => lab::census(&sizes, args.shards, limits)?,
            };
            let text = report.to_json();
            if let Some(path) = &args.out {
                fs::write(path, format!("{text}\n"))
                    .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?;
            }
            Ok(Outcome { report: text, pass: report.disagreements == 0 })
        }
        Command::Monoid { input } => {
            let alg = load_algebra(&input)?;
            let (monoid, carrier) = match &alg {
                FiniteAlgebra::Action(a) => {
                    (updown::monoid::action_monoid(a, limits)?, a.c_labels())
                }
                FiniteAlgebra::Biaction(b) => {
                    (updown::monoid::biaction_monoid(b, limits)?, b.c_labels())
                }
                FiniteAlgebra::SetBand(_) => {
                    return Err(Error::Precondition(
                        "the transformation monoid is defined for actions and biactions".into(),
                    ))
                }
            };
            Ok(Outcome::pass(json::maps_to_json(monoid.maps(), carrier)))
        }
        Command::Quotient { input } => {
            let alg = load_algebra(&input)?;
            let action = alg.as_action()?;
            let result = construct::quotient_by_approx(action, limits)?;
            Ok(Outcome::pass(json::quotient_to_json(action, &result)))
        }
        Command::Restrict { input, word, raw } => {
            let alg = load_algebra(&input)?;
            let biaction = alg.as_biaction()?;
            let word = parse_word(Kind::Biaction, &word)?;
            let restricted = if raw {
                construct::restrict_biaction_raw(biaction, &word)?
            } else {
                construct::restrict_biaction(biaction, &word, limits)?
            };
            Ok(Outcome::pass(json::algebra_to_json(&restricted.into())))
        }
        Command::Split { input } => {
            let alg = load_algebra(&input)?;
            let split = construct::split_into_biaction(alg.as_action()?, limits)?;
            Ok(Outcome {
                report: json::split_to_json(split.as_ref()),
                pass: split.is_some(),
            })
        }
        Command::Opband { input } => {
            let alg = load_algebra(&input)?;
            let band = construct::operation_setband(alg.as_action()?, limits)?;
            Ok(Outcome::pass(json::algebra_to_json(&band.into())))
        }
        Command::Fixtures { which } => match which {
            FixturesCommand::List => {
                Ok(Outcome::pass(json::fixtures_to_json(lab::fixture_names())))
            }
            FixturesCommand::Emit { name } => {
                let (alg, rep) = lab::fixture(&name)?;
                Ok(Outcome::pass(json::algebra_with_representation_to_json(&alg, rep.as_ref())))
            }
        },
        Command::Full { kind, atoms, prime } => {
            let atoms: Vec<String> = atoms.into_iter().filter(|a| !a.is_empty()).collect();
            let (alg, rep) = if prime {
                match Kind::from(kind) {
                    Kind::Action => {
                        let (a, r) = full::full_prime_action(&atoms, limits)?;
                        (a.into(), r.into())
                    }
                    other => {
                        return Err(Error::Precondition(format!(
                            "--prime applies to the action kind, not {other}"
                        )))
                    }
                }
            } else {
                full::full_algebra(kind.into(), &atoms, limits)?
            };
            Ok(Outcome::pass(json::algebra_with_representation_to_json(&alg, Some(&rep))))
        }
    }
}

fn census_sizes(args: &CensusArgs) -> Result<lab::Sizes> {
    let need = |value: Option<usize>, flag: &str| {
        value.ok_or_else(|| {
            Error::Parse(format!("census --kind {} needs {flag}", kind_name(args.kind)))
        })
    };
    Ok(match args.kind {
        KindArg::Action => lab::Sizes::Action { c: need(args.c, "--c")?, s: need(args.s, "--s")? },
        KindArg::Biaction => lab::Sizes::Biaction {
            c: need(args.c, "--c")?,
            sdown: need(args.sdown, "--sdown")?,
            sup: need(args.sup, "--sup")?,
        },
        KindArg::Setband => lab::Sizes::SetBand { s: need(args.s, "--s")? },
    })
}

fn kind_name(kind: KindArg) -> &'static str {
    match kind {
        KindArg::Action => "action",
        KindArg::Biaction => "biaction",
        KindArg::Setband => "setband",
    }
}
