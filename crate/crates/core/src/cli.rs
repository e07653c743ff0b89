//! The `lh` command line: every subcommand prints one JSON document (or a table
//! with `--pretty`).
//!
//! Exit codes: `0` success, `1` a verification reported `ok = false`, `2` usage or
//! computation error. Errors go to stderr as `{"error": {"kind": ..., "message": ...}}`.

use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::freealg::{validate_braiding, BracketKind, FreeAlgebra, SpaceSource, TensorElement};
use crate::nichols::{KindSpec, QuotientSpec, DEFAULT_MAX_MATRIX};
use crate::scalars::FieldSpec;
use crate::series::{lyndon_identity_check, PowerSeries};
use crate::words::{cfl_factorize, enumerate_lyndon, shirshov, Word};

#[derive(Parser, Debug)]
#[command(
    name = "lh",
    version,
    about = "Lyndon words, braided brackets and Hilbert series of graded quotients"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Braided space: a JSON file or `preset:<name>`.
    #[arg(long, global = true)]
    space: Option<String>,
    /// Compute over F_p.
    #[arg(long, global = true, conflicts_with = "rationals")]
    prime: Option<u64>,
    /// Compute over the rationals.
    #[arg(long, global = true)]
    rationals: bool,
    /// Repeat rank computations at a second prime for spaces read from files.
    #[arg(long, global = true)]
    check_prime: bool,
    /// Human-readable output.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lyndon words and factorizations.
    #[command(subcommand)]
    Lyndon(LyndonCmd),
    /// Bracket letter or bracket word of a word.
    Bracket {
        word: String,
        /// Use ⟦x, y⟧ = xy - m c(x ⊗ y).
        #[arg(long)]
        double: bool,
    },
    /// Coordinates of an element in the monotonic bracket-word basis.
    Expand {
        /// Element JSON file, `-` for stdin.
        element: String,
    },
    /// Identities in the tensor algebra.
    #[command(subcommand)]
    Tv(TvCmd),
    /// Checks invertibility and the braid equation.
    Validate,
    /// Graded quotients.
    #[command(subcommand)]
    Nichols(NicholsCmd),
}

#[derive(Subcommand, Debug)]
enum LyndonCmd {
    List {
        #[arg(long)]
        alphabet: usize,
        #[arg(long)]
        max_len: usize,
    },
    Factorize {
        word: String,
    },
    Shirshov {
        word: String,
    },
}

#[derive(Subcommand, Debug)]
enum TvCmd {
    IdentityCheck {
        #[arg(long)]
        alphabet: usize,
        #[arg(long)]
        trunc: usize,
    },
}

#[derive(Args, Debug, Clone)]
struct QuotientArgs {
    #[arg(long)]
    trunc: usize,
    #[arg(long, value_enum, default_value_t = Kind::Nichols)]
    kind: Kind,
    /// Relations JSON for `--kind presented`.
    #[arg(long)]
    relations: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Nichols,
    Free,
    Presented,
}

#[derive(Subcommand, Debug)]
enum NicholsCmd {
    Dims {
        #[command(flatten)]
        q: QuotientArgs,
    },
    Pbw {
        #[command(flatten)]
        q: QuotientArgs,
    },
    Factorize {
        #[command(flatten)]
        q: QuotientArgs,
        /// Also list factors equal to 1.
        #[arg(long)]
        full: bool,
    },
    Subquotient {
        #[command(flatten)]
        q: QuotientArgs,
        #[arg(long)]
        word: String,
    },
    Nonneg {
        #[command(flatten)]
        q: QuotientArgs,
        #[arg(long)]
        word: String,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn error_line(kind: &str, message: &str) -> String {
    json!({ "error": { "kind": kind, "message": message } }).to_string()
}

/// Runs the command line given by `args` (without the program name).
pub fn dispatch<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv =
        std::iter::once(std::ffi::OsString::from("lh")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                };
            }
            let msg = e.to_string();
            let first = msg
                .lines()
                .next()
                .unwrap_or("usage error")
                .trim_start_matches("error: ");
            return Outcome {
                code: 2,
                stdout: String::new(),
                stderr: error_line("usage", first) + "\n",
            };
        }
    };
    match run(&cli) {
        Ok((ok, out)) => Outcome {
            code: if ok { 0 } else { 1 },
            stdout: out + "\n",
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: error_line(e.kind(), &e.to_string()) + "\n",
        },
    }
}

fn max_matrix() -> Result<usize> {
    match std::env::var("LH_MAX_MATRIX") {
        Ok(v) => v.trim().parse().map_err(|_| {
            Error::Parse(format!(
                "LH_MAX_MATRIX must be a positive integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_MAX_MATRIX),
    }
}

fn read_json(path: &str) -> Result<Value> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Parse(format!("cannot read stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {path:?}: {e}")))?
    };
    serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("malformed JSON in {path:?}: {e}")))
}

impl Global {
    fn source(&self) -> Result<SpaceSource> {
        let s = self
            .space
            .as_deref()
            .ok_or_else(|| Error::InvalidArgument("--space is required".into()))?;
        SpaceSource::parse(s)
    }

    fn field(&self, src: &SpaceSource, trunc: usize) -> Result<FieldSpec> {
        if self.rationals {
            return Ok(FieldSpec::rationals());
        }
        match self.prime {
            Some(p) => FieldSpec::prime(p),
            None => Ok(src.default_field(trunc)),
        }
    }

    fn algebra(&self) -> Result<FreeAlgebra> {
        let src = self.source()?;
        let field = self.field(&src, 0)?;
        Ok(FreeAlgebra::new(src.instantiate(field)?))
    }
}

fn render(v: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(v).expect("serializable")
    } else {
        v.to_string()
    }
}

fn series_table(title: &str, s: &PowerSeries) -> String {
    let mut out = format!("{title}\n  n  coeff\n");
    for (n, c) in s.coeffs().iter().enumerate() {
        out.push_str(&format!("{n:>3}  {c}\n"));
    }
    out.push_str(&format!("  {s}"));
    out
}

fn run(cli: &Cli) -> Result<(bool, String)> {
    let g = &cli.global;
    match &cli.command {
        Command::Lyndon(cmd) => {
            let v = match cmd {
                LyndonCmd::List { alphabet, max_len } => {
                    let words: Vec<String> = enumerate_lyndon(*alphabet, *max_len)?
                        .iter()
                        .map(Word::to_string)
                        .collect();
                    json!({ "words": words })
                }
                LyndonCmd::Factorize { word } => {
                    let w = Word::parse(word)?;
                    let f: Vec<String> = cfl_factorize(&w)
                        .factors()
                        .iter()
                        .map(Word::to_string)
                        .collect();
                    json!({ "factors": f })
                }
                LyndonCmd::Shirshov { word } => {
                    let sd = shirshov(&Word::parse(word)?)?;
                    json!({ "left": sd.left.to_string(), "right": sd.right.to_string() })
                }
            };
            if g.pretty {
                return Ok((true, pretty_lyndon(&v)));
            }
            Ok((true, v.to_string()))
        }
        Command::Bracket { word, double } => {
            let alg = g.algebra()?;
            let w = Word::parse_for(word, alg.space().dim())?;
            let kind = if *double {
                BracketKind::Double
            } else {
                BracketKind::Left
            };
            let x = alg.bracket_of(&w, kind)?;
            if g.pretty {
                return Ok((true, x.to_string()));
            }
            Ok((true, x.to_json().to_string()))
        }
        Command::Expand { element } => {
            let alg = g.algebra()?;
            let x = TensorElement::from_json(alg.space(), &read_json(element)?)?;
            let coords = alg.expand_monotonic_basis(&x)?;
            if g.pretty {
                let lines: Vec<String> = coords.iter().map(|(w, c)| format!("{c}\t{w}")).collect();
                return Ok((true, lines.join("\n")));
            }
            let terms: Vec<Value> = coords
                .iter()
                .map(|(w, c)| {
                    let f: Vec<String> = w.factors().iter().map(Word::to_string).collect();
                    json!({ "superword": f, "coeff": c.to_string() })
                })
                .collect();
            Ok((true, json!({ "terms": terms }).to_string()))
        }
        Command::Tv(TvCmd::IdentityCheck { alphabet, trunc }) => {
            let r = lyndon_identity_check(*alphabet, *trunc)?;
            if g.pretty {
                let t = format!(
                    "ok: {}\n{}\n{}",
                    r.ok,
                    series_table("tensor algebra", &r.rhs),
                    series_table("product over Lyndon words", &r.lhs)
                );
                return Ok((r.ok, t));
            }
            Ok((r.ok, serde_json::to_string(&r).expect("serializable")))
        }
        Command::Validate => {
            let src = g.source()?;
            let field = g.field(&src, 0)?;
            let report = match &src {
                SpaceSource::Json(d) => validate_braiding(field, d.dim, &d.braiding(field)?)?,
                SpaceSource::Preset(p) => {
                    let s = p.instantiate(field)?;
                    validate_braiding(field, s.dim(), s.braiding())?
                }
            };
            let v = json!({
                "ok": report.ok,
                "invertible": report.invertible,
                "braid_equation": report.braid_equation,
                "failing_triple": report.failing_triple,
            });
            Ok((report.ok, render(&v, g.pretty)))
        }
        Command::Nichols(cmd) => run_nichols(g, cmd),
    }
}

fn pretty_lyndon(v: &Value) -> String {
    let list = |k: &str| {
        v[k].as_array()
            .map(|a| {
                a.iter()
                    .filter_map(Value::as_str)
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .unwrap_or_default()
    };
    if v.get("words").is_some() {
        list("words")
    } else if v.get("factors").is_some() {
        list("factors")
            .split(' ')
            .map(|f| format!("({f})"))
            .collect::<String>()
    } else {
        format!(
            "({}, {})",
            v["left"].as_str().unwrap_or(""),
            v["right"].as_str().unwrap_or("")
        )
    }
}

fn quotient_job(g: &Global, q: &QuotientArgs) -> Result<(QuotientSpec, FieldSpec, bool)> {
    let src = g.source()?;
    let kind = match (q.kind, &q.relations) {
        (Kind::Nichols, None) => KindSpec::Nichols,
        (Kind::Free, None) => KindSpec::Free,
        (Kind::Presented, Some(path)) => KindSpec::presented_from_json(&read_json(path)?)?,
        (Kind::Presented, None) => {
            return Err(Error::InvalidArgument(
                "--kind presented needs --relations".into(),
            ))
        }
        (_, Some(_)) => {
            return Err(Error::InvalidArgument(
                "--relations needs --kind presented".into(),
            ))
        }
    };
    let field = g.field(&src, q.trunc)?;
    let check = match &src {
        SpaceSource::Preset(_) => true,
        SpaceSource::Json(_) => g.check_prime,
    };
    Ok((
        QuotientSpec::new(src, kind, q.trunc).with_limit(max_matrix()?),
        field,
        check,
    ))
}

fn run_nichols(g: &Global, cmd: &NicholsCmd) -> Result<(bool, String)> {
    let pretty = g.pretty;
    match cmd {
        NicholsCmd::Dims { q } => {
            let (job, field, check) = quotient_job(g, q)?;
            let s = job.run(field, check, |r| r.hilbert_series(q.trunc))?;
            if pretty {
                return Ok((true, series_table("dim R_n", &s)));
            }
            Ok((true, serde_json::to_string(&s).expect("serializable")))
        }
        NicholsCmd::Pbw { q } => {
            let (job, field, check) = quotient_job(g, q)?;
            let p = job.run(field, check, |r| r.pbw_data(q.trunc))?;
            if pretty {
                let mut out = String::from("generator  height\n");
                for gen in &p.generators {
                    out.push_str(&format!("{:>9}  {}\n", gen.u.to_string(), gen.height));
                }
                out.push_str(&format!("(truncated at degree {})", p.trunc));
                return Ok((true, out));
            }
            Ok((true, p.to_json().to_string()))
        }
        NicholsCmd::Factorize { q, full } => {
            let (job, field, check) = quotient_job(g, q)?;
            let r = job.run(field, check, |r| r.verify_factorization(q.trunc))?;
            if pretty {
                let mut out = format!("ok: {}\n{}\n", r.ok, series_table("Hilbert series", &r.lhs));
                out.push_str(&format!("product: {}\n", r.rhs));
                for f in r
                    .factors
                    .iter()
                    .filter(|f| *full || f.series != PowerSeries::one(r.trunc))
                {
                    out.push_str(&format!("{:>9}  {}\n", f.u.to_string(), f.series));
                }
                return Ok((r.ok, out.trim_end().to_string()));
            }
            Ok((r.ok, r.to_json(*full).to_string()))
        }
        NicholsCmd::Subquotient { q, word } => {
            let (job, field, check) = quotient_job(g, q)?;
            let u = Word::parse_for(word, job.source.instantiate(field)?.dim())?;
            let s = job.run(field, check, |r| r.subquotient_series(&u, q.trunc))?;
            if pretty {
                return Ok((
                    true,
                    series_table(&format!("subquotient for {u}"), &s.series),
                ));
            }
            Ok((true, s.to_json().to_string()))
        }
        NicholsCmd::Nonneg { q, word } => {
            let (job, field, check) = quotient_job(g, q)?;
            let u = Word::parse_for(word, job.source.instantiate(field)?.dim())?;
            let rep = job.build(field)?.nonneg_quotient_check(&u, q.trunc)?;
            if let Some(p) = field.modulus().filter(|_| check) {
                // q itself is a residue, so only the series and the verdict are compared
                let again = job
                    .build(job.source.second_prime(p, q.trunc))?
                    .nonneg_quotient_check(&u, q.trunc)?;
                if (rep.ok, &rep.factor, &rep.nichols, &rep.quotient)
                    != (again.ok, &again.factor, &again.nichols, &again.quotient)
                {
                    return Err(Error::BadPrime(format!(
                        "subquotient series for {u} differ between F_{p} and a second prime"
                    )));
                }
            }
            let (ok, v) = (rep.ok, rep.to_json());
            Ok((ok, render(&v, pretty)))
        }
    }
}
