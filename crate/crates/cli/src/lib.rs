//! Command-line front end for twistlab. `run` is the whole program; the
//! binary only wires it to the process streams.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;
use std::ffi::OsString;
use std::io::{Read, Write};
use twistlab::congruence::{
    farey_quotient_with_limit, format_word, sl2_mod_order_with_limit, MOD_LIMIT,
};
use twistlab::{
    classify, euclid_reduce, h_membership, n_s_structure, pingpong_certificate, procedure_run,
    relation_search, Curve, Error, HConfig, ProcedureConfig, Transcript, TwistCollection,
    TwistPower, Word,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Deepest relation search allowed without `--max-depth`.
pub const DEPTH_LIMIT: usize = 10;

pub const MAX_STEPS_ENV: &str = "TWISTLAB_MAX_STEPS";

#[derive(Parser, Debug)]
#[command(
    name = "twistlab",
    version,
    about = "Subgroups of SL(2,Z) generated by Dehn twist powers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide the isomorphism type of the generated subgroup.
    Classify {
        #[command(flatten)]
        input: CurveInput,
        #[command(flatten)]
        budget: Budget,
    },
    /// Run the Euclidean reduction on at most three uniform twist powers.
    Reduce {
        #[command(flatten)]
        input: CurveInput,
    },
    /// Ping-pong freeness certificate, without expansion.
    Pingpong {
        #[command(flatten)]
        input: CurveInput,
    },
    /// Slide-expansion procedure.
    Procedure {
        #[command(flatten)]
        input: CurveInput,
        #[command(flatten)]
        budget: Budget,
    },
    /// Membership of a curve in a parity set.
    Hset {
        #[arg(long, value_enum)]
        config: HConfigArg,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
    /// Breadth-first search for a relation among the generators.
    Relations {
        #[command(flatten)]
        input: CurveInput,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long, default_value_t = DEPTH_LIMIT)]
        max_depth: usize,
    },
    /// Cell counts of the Farey complex modulo s.
    Farey {
        #[arg(long)]
        s: u64,
        #[arg(long, default_value_t = MOD_LIMIT)]
        limit: u64,
    },
    /// Structure of the subgroup generated by all s-th twist powers.
    Ns {
        #[arg(long)]
        s: u64,
    },
    /// Order of SL(2, Z/s).
    Order {
        #[arg(long)]
        s: u64,
        #[arg(long, default_value_t = MOD_LIMIT)]
        limit: u64,
    },
}

#[derive(Args, Debug)]
struct CurveInput {
    /// Curves as `a,b`, `[a,b]`, or one JSON collection.
    curves: Vec<String>,
    /// JSON collection: `[[a,b],...]`, `[{"curve":[a,b],"power":s},...]`
    /// or `{"powers":[...]}`.
    #[arg(long = "curves", value_name = "JSON")]
    json: Option<String>,
    /// Power applied to curves given without one.
    #[arg(long, default_value_t = 1)]
    s: u64,
}

#[derive(Args, Debug)]
struct Budget {
    /// Expansion steps; defaults to $TWISTLAB_MAX_STEPS, then 16.
    #[arg(long)]
    max_steps: Option<usize>,
    #[arg(long)]
    max_curves: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum HConfigArg {
    G2s1,
    G1s2,
}

impl From<HConfigArg> for HConfig {
    fn from(c: HConfigArg) -> HConfig {
        match c {
            HConfigArg::G2s1 => HConfig::G2S1,
            HConfigArg::G1s2 => HConfig::G1S2,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::BudgetExceeded(_) => Failure::Budget(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Run one invocation. `argv[0]` is the program name. Stdin is read only
/// when a collection command gets no curves on the command line.
pub fn run<I, T>(
    argv: I,
    env_max_steps: Option<String>,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv = argv.into_iter().map(|a| bracket_negative_pair(a.into()));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = dispatch(cli.command, env_max_steps, stdin);
    match result {
        Ok(text) => {
            let _ = writeln!(stdout, "{text}");
            EXIT_OK
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Budget(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_BUDGET
        }
    }
}

/// `-3,2` would otherwise be read as a short flag.
fn bracket_negative_pair(arg: OsString) -> OsString {
    match arg.to_str() {
        Some(s)
            if s.starts_with('-')
                && s.len() > 1
                && s[1..].starts_with(|c: char| c.is_ascii_digit())
                && s.contains(',') =>
        {
            format!("[{s}]").into()
        }
        _ => arg,
    }
}

fn emit<T: Serialize>(v: &T) -> Outcome<String> {
    Ok(serde_json::to_string(v).expect("library types serialize"))
}

#[derive(Serialize)]
struct Reduced<'a> {
    #[serde(rename = "final")]
    final_items: &'a [TwistPower],
    transcript: &'a Transcript,
}

#[derive(Serialize)]
struct Membership {
    config: HConfig,
    curve: Curve,
    member: bool,
}

#[derive(Serialize)]
struct RelationReport<'a> {
    generators: &'a [TwistPower],
    depth: usize,
    relation: Option<&'a Word>,
    text: Option<String>,
}

#[derive(Serialize)]
struct Order {
    s: u64,
    order: u64,
}

fn dispatch(cmd: Command, env_steps: Option<String>, stdin: &mut dyn Read) -> Outcome<String> {
    match cmd {
        Command::Classify { input, budget } => {
            let config = budget.config(env_steps)?;
            let items = input.read(stdin)?;
            emit(&classify(&items, config)?)
        }
        Command::Reduce { input } => {
            let items = input.read(stdin)?;
            let (reduced, transcript) = euclid_reduce(&items)?;
            emit(&Reduced {
                final_items: reduced.items(),
                transcript: &transcript,
            })
        }
        Command::Pingpong { input } => {
            let c = TwistCollection::new(input.read(stdin)?)?;
            emit(&pingpong_certificate(&c))
        }
        Command::Procedure { input, budget } => {
            let config = budget.config(env_steps)?;
            let c = TwistCollection::new(input.read(stdin)?)?;
            emit(&procedure_run(&c, config))
        }
        Command::Hset { config, vector } => {
            let curve = parse_curve(&vector)?;
            let config = HConfig::from(config);
            let member = h_membership(config, &curve);
            emit(&Membership {
                config,
                curve,
                member,
            })
        }
        Command::Relations {
            input,
            depth,
            max_depth,
        } => {
            if depth == 0 {
                return Err(Failure::Input("depth must be at least 1".into()));
            }
            if depth > max_depth {
                return Err(Failure::Budget(format!(
                    "depth {depth} exceeds the limit {max_depth} (raise it with --max-depth)"
                )));
            }
            let gens = input.read(stdin)?;
            let relation = relation_search(&gens, depth);
            emit(&RelationReport {
                generators: &gens,
                depth,
                relation: relation.as_ref(),
                text: relation.as_deref().map(format_word),
            })
        }
        Command::Farey { s, limit } => emit(&farey_quotient_with_limit(s, limit)?),
        Command::Ns { s } => emit(&n_s_structure(s)),
        Command::Order { s, limit } => emit(&Order {
            s,
            order: sl2_mod_order_with_limit(s, limit)?,
        }),
    }
}

impl Budget {
    fn config(&self, env_steps: Option<String>) -> Outcome<ProcedureConfig> {
        let mut config = ProcedureConfig::default();
        if let Some(raw) = env_steps {
            config.max_steps = raw.trim().parse().map_err(|_| {
                Failure::Input(format!("{MAX_STEPS_ENV}={raw:?} is not a step count"))
            })?;
        }
        if let Some(n) = self.max_steps {
            config.max_steps = n;
        }
        if let Some(n) = self.max_curves {
            config.max_curves = n;
        }
        Ok(config)
    }
}

impl CurveInput {
    fn read(&self, stdin: &mut dyn Read) -> Outcome<Vec<TwistPower>> {
        if self.s == 0 {
            return Err(Error::ZeroExponent.into());
        }
        let mut items = Vec::new();
        for arg in &self.curves {
            let t = arg.trim();
            if t.starts_with("[[") || t.starts_with("[{") || t.starts_with('{') {
                items.extend(parse_collection(t, self.s)?);
            } else {
                items.push(TwistPower::new(parse_curve(t)?, self.s)?);
            }
        }
        if let Some(json) = &self.json {
            items.extend(parse_collection(json, self.s)?);
        }
        if self.curves.is_empty() && self.json.is_none() {
            let mut text = String::new();
            stdin
                .read_to_string(&mut text)
                .map_err(|e| Failure::Input(format!("reading stdin: {e}")))?;
            items = parse_collection(&text, self.s)?;
        }
        if items.is_empty() {
            return Err(Failure::Input("no curves given".into()));
        }
        Ok(items)
    }
}

/// `a,b`, `(a,b)` or `[a,b]`.
fn parse_curve(text: &str) -> Outcome<Curve> {
    let inner = text
        .trim()
        .trim_start_matches(['[', '('])
        .trim_end_matches([']', ')']);
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    let [a, b] = parts.as_slice() else {
        return Err(Failure::Input(format!(
            "expected a curve a,b, got {text:?}"
        )));
    };
    let parse = |s: &str| {
        s.parse::<BigInt>()
            .map_err(|_| Failure::Input(format!("{s:?} is not an integer")))
    };
    Ok(Curve::new(parse(a)?, parse(b)?)?)
}

fn parse_collection(text: &str, s: u64) -> Outcome<Vec<TwistPower>> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Failure::Input(format!("bad JSON: {e}")))?;
    let list = match value {
        Value::Object(mut map) => match map.remove("powers") {
            Some(Value::Array(list)) => list,
            _ => return Err(Failure::Input("expected {\"powers\": [...]}".into())),
        },
        Value::Array(list) => list,
        _ => return Err(Failure::Input("expected a JSON array of curves".into())),
    };
    list.into_iter()
        .map(|entry| match entry {
            Value::Array(_) => {
                let curve: Curve =
                    serde_json::from_value(entry).map_err(|e| Failure::Input(e.to_string()))?;
                Ok(TwistPower::new(curve, s)?)
            }
            other => serde_json::from_value(other).map_err(|e| Failure::Input(e.to_string())),
        })
        .collect()
}
