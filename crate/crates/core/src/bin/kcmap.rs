//! Command-line front end. Exit codes: 0 success or true, 1 false, 2 usage
//! or input error, 3 capability refusal, 4 oracle cap exceeded or
//! membership undecided.

use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use kcmap::capabilities::{self, Cell, Operation, QueryTag, TransformTag};
use kcmap::compile::{self, CnfFormula};
use kcmap::families::{self, Family, SizeConfig, Target};
use kcmap::properties;
use kcmap::{queries, transforms, Clause, Error, LanguageTag, NnfStore, NodeId, Oracle, Term, Var, VarOrder, VarSet};

#[derive(Parser)]
#[command(name = "kcmap", version, about = "Knowledge compilation toolkit")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    Dimacs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CompileTarget {
    Ddnnf,
    Sddnnf,
    Obdd,
    Mods,
    Pi,
    Ip,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum QueryOp {
    Co,
    Va,
    Ce,
    Im,
    Eq,
    Se,
    Ct,
    Me,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TransformOp {
    Cd,
    Fo,
    Sfo,
    And,
    Or,
    Not,
    Smooth,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleOp {
    Models,
    Count,
    Implicants,
    Implicates,
    Equiv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compile a CNF into a target language.
    Compile {
        #[arg(long, value_enum, default_value = "dimacs")]
        from: Source,
        #[arg(long, value_enum)]
        to: CompileTarget,
        /// Variable order for OBDD targets, e.g. 3,1,2.
        #[arg(long)]
        order: Option<VarOrder>,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Report the languages a sentence belongs to.
    Classify {
        input: PathBuf,
        #[arg(long)]
        order: Option<VarOrder>,
    },
    /// Run one query.
    Query {
        #[arg(long, value_enum)]
        op: QueryOp,
        #[arg(long)]
        lang: Option<LanguageTag>,
        /// Clause for CE, as signed integers.
        #[arg(long, allow_hyphen_values = true)]
        clause: Option<String>,
        /// Term for IM, as signed integers.
        #[arg(long, allow_hyphen_values = true)]
        term: Option<String>,
        /// Answer with the truth-table oracle instead of the language routine.
        #[arg(long)]
        force_oracle: bool,
        #[arg(required = true, num_args = 1..=2)]
        inputs: Vec<PathBuf>,
    },
    /// Apply one transformation and write the result.
    Transform {
        #[arg(long, value_enum)]
        op: TransformOp,
        #[arg(long)]
        lang: Option<LanguageTag>,
        #[arg(long, allow_hyphen_values = true)]
        term: Option<String>,
        /// Variables for FO/SFO, e.g. 1,3.
        #[arg(long)]
        vars: Option<String>,
        #[arg(required = true, num_args = 1..)]
        inputs: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Size report over a separation family, as CSV.
    Bench {
        #[arg(long)]
        family: Family,
        /// Inclusive parameter range, e.g. 2..10.
        #[arg(long, default_value = "2..6")]
        range: String,
        #[arg(long, value_delimiter = ',', default_value = "obdd,dnf")]
        targets: Vec<Target>,
        /// Second parameter for the cm family.
        #[arg(short, default_value_t = 2)]
        m: u32,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Brute-force answers by truth table.
    Oracle {
        #[arg(long, value_enum)]
        op: OracleOp,
        #[arg(required = true, num_args = 1..=2)]
        inputs: Vec<PathBuf>,
    },
}

enum Outcome {
    Ok,
    Bool(bool),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) | Ok(Outcome::Bool(true)) => ExitCode::SUCCESS,
        Ok(Outcome::Bool(false)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Capability { .. } => 3,
                Error::OracleCap { .. } | Error::MembershipUnknown { .. } => 4,
                _ => 2,
            })
        }
    }
}

fn load(store: &mut NnfStore, path: &Path) -> kcmap::Result<NodeId> {
    let f = File::open(path)?;
    Ok(kcmap::nnf::read_nnf(BufReader::new(f), store)?)
}

fn sink(path: &Option<PathBuf>) -> kcmap::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn ints(s: &str) -> kcmap::Result<Vec<i64>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty() && *t != "0")
        .map(|t| t.parse().map_err(|_| Error::Precondition(format!("bad literal `{t}`"))))
        .collect()
}

fn parse_term(s: &Option<String>) -> kcmap::Result<Term> {
    let s = s.as_deref().ok_or_else(|| Error::Precondition("--term is required".into()))?;
    Term::from_dimacs(&ints(s)?).ok_or_else(|| Error::Precondition("bad term".into()))
}

fn parse_clause(s: &Option<String>) -> kcmap::Result<Clause> {
    let s = s.as_deref().ok_or_else(|| Error::Precondition("--clause is required".into()))?;
    Clause::from_dimacs(&ints(s)?).ok_or_else(|| Error::Precondition("bad clause".into()))
}

fn parse_vars(s: &Option<String>) -> kcmap::Result<VarSet> {
    let s = s.as_deref().ok_or_else(|| Error::Precondition("--vars is required".into()))?;
    ints(s)?
        .into_iter()
        .map(|i| {
            u32::try_from(i)
                .ok()
                .and_then(Var::try_new)
                .ok_or_else(|| Error::Precondition(format!("bad variable `{i}`")))
        })
        .collect()
}

/// The given language, or the first definite language of every operand in
/// which the operation is supported.
fn pick_lang(store: &NnfStore, roots: &[NodeId], lang: Option<LanguageTag>, op: Operation) -> kcmap::Result<LanguageTag> {
    if let Some(l) = lang {
        return Ok(l);
    }
    let reports: Vec<_> = roots.iter().map(|&r| properties::classify(store, r, None)).collect();
    let cell = |l: LanguageTag| match op {
        Operation::Query(q) => capabilities::query_cell(l, q),
        Operation::Transform(t) => capabilities::transform_cell(l, t),
    };
    LanguageTag::ALL
        .into_iter()
        .find(|&l| cell(l) == Cell::Supported && reports.iter().all(|r| r.definite.contains(&l)))
        .map(Ok)
        .unwrap_or_else(|| capabilities::require(LanguageTag::Nnf, op).map(|_| LanguageTag::Nnf))
}

fn run(cli: Cli) -> kcmap::Result<Outcome> {
    let _seed = cli.seed;
    match cli.cmd {
        Cmd::Compile {
            from: Source::Dimacs,
            to,
            order,
            input,
            output,
        } => {
            let f: CnfFormula = compile::parse_dimacs(BufReader::new(File::open(&input)?))?;
            let mut store = NnfStore::new(f.num_vars);
            let root = match to {
                CompileTarget::Ddnnf => compile::compile_ddnnf(&mut store, &f),
                CompileTarget::Sddnnf => compile::compile_sddnnf(&mut store, &f),
                CompileTarget::Obdd => {
                    let order = order.unwrap_or_else(|| VarOrder::identity(f.num_vars));
                    compile::compile_obdd(&mut store, &f, &order)?
                }
                CompileTarget::Mods => compile::compile_mods(&mut store, &f, &Oracle::default())?,
                CompileTarget::Pi => compile::compile_pi(&mut store, &f)?,
                CompileTarget::Ip => compile::compile_ip(&mut store, &f)?,
            };
            kcmap::nnf::write_nnf(&store, root, sink(&output)?)?;
            Ok(Outcome::Ok)
        }
        Cmd::Classify { input, order } => {
            let mut store = NnfStore::new(0);
            let root = load(&mut store, &input)?;
            let report = properties::classify(&store, root, order.as_ref());
            let mut out = io::stdout().lock();
            for line in report.lines() {
                writeln!(out, "{line}")?;
            }
            Ok(Outcome::Ok)
        }
        Cmd::Query {
            op,
            lang,
            clause,
            term,
            force_oracle,
            inputs,
        } => {
            let mut store = NnfStore::new(0);
            let roots = inputs.iter().map(|p| load(&mut store, p)).collect::<kcmap::Result<Vec<_>>>()?;
            let binary = matches!(op, QueryOp::Eq | QueryOp::Se);
            if binary != (roots.len() == 2) {
                return Err(Error::Precondition(if binary {
                    "this query takes two input files".into()
                } else {
                    "this query takes one input file".into()
                }));
            }
            let q = match op {
                QueryOp::Co => QueryTag::Co,
                QueryOp::Va => QueryTag::Va,
                QueryOp::Ce => QueryTag::Ce,
                QueryOp::Im => QueryTag::Im,
                QueryOp::Eq => QueryTag::Eq,
                QueryOp::Se => QueryTag::Se,
                QueryOp::Ct => QueryTag::Ct,
                QueryOp::Me => QueryTag::Me,
            };
            let over = store.universe();
            let r = roots[0];
            let mut out = io::stdout().lock();
            if force_oracle {
                return oracle_query(&mut store, &roots, op, &clause, &term, &over, &mut out);
            }
            let lang = pick_lang(&store, &roots, lang, Operation::Query(q))?;
            Ok(match op {
                QueryOp::Co => Outcome::Bool(queries::co(&store, r, lang)?),
                QueryOp::Va => Outcome::Bool(queries::va(&store, r, lang)?),
                QueryOp::Ce => Outcome::Bool(queries::ce(&store, r, lang, &parse_clause(&clause)?)?),
                QueryOp::Im => Outcome::Bool(queries::im(&store, r, lang, &parse_term(&term)?)?),
                QueryOp::Eq => Outcome::Bool(queries::eq(&mut store, r, roots[1], lang)?),
                QueryOp::Se => Outcome::Bool(queries::se(&mut store, r, roots[1], lang)?),
                QueryOp::Ct => {
                    writeln!(out, "{}", queries::ct(&store, r, lang, &over)?)?;
                    Outcome::Ok
                }
                QueryOp::Me => {
                    for m in queries::me_iter(&store, r, lang, &over)? {
                        writeln!(out, "{}", m.bit_string())?;
                    }
                    Outcome::Ok
                }
            })
        }
        Cmd::Transform {
            op,
            lang,
            term,
            vars,
            inputs,
            output,
        } => {
            let mut store = NnfStore::new(0);
            let roots = inputs.iter().map(|p| load(&mut store, p)).collect::<kcmap::Result<Vec<_>>>()?;
            if !matches!(op, TransformOp::And | TransformOp::Or) && roots.len() != 1 {
                return Err(Error::Precondition("this transformation takes one input file".into()));
            }
            let r = roots[0];
            let t = match op {
                TransformOp::Cd => Some(TransformTag::Cd),
                TransformOp::Fo => Some(TransformTag::Fo),
                TransformOp::Sfo => Some(TransformTag::Sfo),
                TransformOp::And if roots.len() == 2 => Some(TransformTag::AndBc),
                TransformOp::And => Some(TransformTag::AndC),
                TransformOp::Or if roots.len() == 2 => Some(TransformTag::OrBc),
                TransformOp::Or => Some(TransformTag::OrC),
                TransformOp::Not => Some(TransformTag::NotC),
                TransformOp::Smooth => None,
            };
            let lang = match t {
                Some(t) => pick_lang(&store, &roots, lang, Operation::Transform(t))?,
                None => LanguageTag::Nnf,
            };
            let result = match t {
                Some(TransformTag::Cd) => transforms::condition(&mut store, r, &parse_term(&term)?, lang)?,
                Some(TransformTag::Fo) => transforms::forget(&mut store, r, &parse_vars(&vars)?, lang)?,
                Some(TransformTag::Sfo) => {
                    let vs = parse_vars(&vars)?;
                    let [v] = vs.as_slice() else {
                        return Err(Error::Precondition("sfo takes exactly one variable".into()));
                    };
                    transforms::forget_single(&mut store, r, *v, lang)?
                }
                Some(TransformTag::AndBc) => transforms::apply_and(&mut store, r, roots[1], lang)?,
                Some(TransformTag::AndC) => transforms::conjoin_many(&mut store, &roots, lang)?,
                Some(TransformTag::OrBc) => transforms::apply_or(&mut store, r, roots[1], lang)?,
                Some(TransformTag::OrC) => transforms::disjoin_many(&mut store, &roots, lang)?,
                Some(TransformTag::NotC) => transforms::negate(&mut store, r, lang)?,
                None => transforms::smooth(&mut store, r),
            };
            kcmap::nnf::write_nnf(&store, result, sink(&output)?)?;
            Ok(Outcome::Ok)
        }
        Cmd::Bench {
            family,
            range,
            targets,
            m,
            output,
        } => {
            let (a, b) = range
                .split_once("..")
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .ok_or_else(|| Error::Precondition(format!("bad range `{range}`, expected a..b")))?;
            let mut config = SizeConfig::new(family, (a, b), targets);
            config.m = m;
            let rows = families::run_size_report(&config)?;
            families::write_csv(&rows, sink(&output)?)?;
            Ok(Outcome::Ok)
        }
        Cmd::Oracle { op, inputs } => {
            let mut store = NnfStore::new(0);
            let roots = inputs.iter().map(|p| load(&mut store, p)).collect::<kcmap::Result<Vec<_>>>()?;
            let oracle = Oracle::default();
            let over = store.universe();
            let r = roots[0];
            let mut out = io::stdout().lock();
            match op {
                OracleOp::Models => {
                    for m in oracle.models(&store, r, &over)?.bit_strings() {
                        writeln!(out, "{m}")?;
                    }
                }
                OracleOp::Count => writeln!(out, "{}", oracle.count(&store, r, &over)?)?,
                OracleOp::Implicants => {
                    for t in oracle.prime_implicants(&store, r)? {
                        writeln!(out, "{}", dimacs_line(t.lits().iter().map(|l| l.to_dimacs())))?;
                    }
                }
                OracleOp::Implicates => {
                    for c in oracle.prime_implicates(&store, r)? {
                        writeln!(out, "{}", dimacs_line(c.lits().iter().map(|l| l.to_dimacs())))?;
                    }
                }
                OracleOp::Equiv => {
                    let b = *roots.get(1).ok_or_else(|| Error::Precondition("equiv takes two input files".into()))?;
                    return Ok(Outcome::Bool(oracle.equivalent(&store, r, b)?));
                }
            }
            Ok(Outcome::Ok)
        }
    }
}

fn dimacs_line(codes: impl Iterator<Item = i64>) -> String {
    let mut s: String = codes.map(|c| format!("{c} ")).collect();
    s.push('0');
    s
}

fn oracle_query(
    store: &mut NnfStore,
    roots: &[NodeId],
    op: QueryOp,
    clause: &Option<String>,
    term: &Option<String>,
    over: &VarSet,
    out: &mut impl Write,
) -> kcmap::Result<Outcome> {
    let oracle = Oracle::default();
    let r = roots[0];
    Ok(match op {
        QueryOp::Co => Outcome::Bool(oracle.is_consistent(store, r)?),
        QueryOp::Va => Outcome::Bool(oracle.is_valid(store, r)?),
        QueryOp::Ce => {
            let c = store.clause(&parse_clause(clause)?);
            Outcome::Bool(oracle.entails(store, r, c)?)
        }
        QueryOp::Im => {
            let t = store.term(&parse_term(term)?);
            Outcome::Bool(oracle.entails(store, t, r)?)
        }
        QueryOp::Eq => Outcome::Bool(oracle.equivalent(store, r, roots[1])?),
        QueryOp::Se => Outcome::Bool(oracle.entails(store, r, roots[1])?),
        QueryOp::Ct => {
            writeln!(out, "{}", oracle.count(store, r, over)?)?;
            Outcome::Ok
        }
        QueryOp::Me => {
            for m in oracle.models(store, r, over)?.bit_strings() {
                writeln!(out, "{m}")?;
            }
            Outcome::Ok
        }
    })
}
