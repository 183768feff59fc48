//! Batch front end: session files, subcommand dispatch and canonical output.
//!
//! A session file holds the ring, the ordering and named generator lists:
//!
//! ```text
//! # comments run to the end of the line
//! field = QQ
//! tvars = t
//! xvars = x, y
//! rank = 1
//! denom = 1
//! order = lex
//! gens I {
//!   x - t
//!   y - t
//! }
//! ```
//!
//! Every key is optional except that the ring needs at least one variable.
//! Each generator takes one line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::coeff::FieldSpec;
use crate::division::{dwr, dwr_strong, hddwr, DivisionResult, HddwrMode};
use crate::error::Error;
use crate::idealops::{eliminate, intersect, quotient, saturate, SATURATION_CAP};
use crate::ordering::{parse_rational, CompiledOrdering, GlobalKind, OrderingSpec};
use crate::parse::{format_poly, format_vector, parse_poly};
use crate::poly::PolyVector;
use crate::ring::RingContext;
use crate::stdbasis::{is_standard_basis, membership, minimalize, std, GeneratorSet};
use crate::syzygy::syz;
use crate::tropical::{tinitial_ideal, WeightVectorW};

/// A diagnostic pinned to a 1-based line and column; line 0 marks errors
/// in command-line overrides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SessionError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl std::fmt::Display for SessionError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.line == 0 {
            return f.write_str(&self.message);
        }
        write!(f, "line {}, col {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for SessionError {}

#[derive(Debug, Clone)]
pub struct Session {
    pub ctx: Arc<RingContext>,
    pub order: OrderingSpec,
    pub ord: CompiledOrdering,
    pub ideals: Vec<(String, Vec<PolyVector>)>,
}

struct Located {
    line: usize,
    col: usize,
    text: String,
}

struct RawBlock {
    name: String,
    line: usize,
    gens: Vec<Located>,
}

const KEYS: [&str; 6] = ["field", "tvars", "xvars", "rank", "denom", "order"];

fn err(line: usize, col: usize, message: impl Into<String>) -> SessionError {
    SessionError {
        line,
        col,
        message: message.into(),
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Column (1-based) of the first non-blank character of `part` inside `line`.
fn col_of(line: &str, part: &str) -> usize {
    let offset = part.as_ptr() as usize - line.as_ptr() as usize;
    offset + (part.len() - part.trim_start().len()) + 1
}

fn names(v: &Located) -> Vec<String> {
    v.text
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

fn parse_error_at(v: &Located, e: Error) -> SessionError {
    match e {
        Error::Parse { offset, message } => err(v.line, v.col + offset, message),
        other => err(v.line, v.col, other.to_string()),
    }
}

impl Session {
    pub fn parse(text: &str) -> Result<Session, SessionError> {
        Self::parse_with(text, None, None)
    }

    /// Parses with optional overrides for the ordering text and denominator.
    pub fn parse_with(
        text: &str,
        order_override: Option<&str>,
        denom_override: Option<u32>,
    ) -> Result<Session, SessionError> {
        let mut values: Vec<Option<Located>> = (0..KEYS.len()).map(|_| None).collect();
        let mut blocks: Vec<RawBlock> = Vec::new();
        let mut open: Option<RawBlock> = None;
        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let body = strip_comment(raw);
            let trimmed = body.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(block) = open.as_mut() {
                if trimmed == "}" {
                    blocks.push(open.take().unwrap());
                } else {
                    block.gens.push(Located {
                        line: lineno,
                        col: col_of(raw, body),
                        text: trimmed.to_string(),
                    });
                }
                continue;
            }
            if let Some(rest) = trimmed.strip_prefix("gens") {
                let Some(name) = rest.trim().strip_suffix('{') else {
                    return Err(err(lineno, col_of(raw, body), "expected `gens NAME {`"));
                };
                let name = name.trim();
                if !crate::ring::is_identifier(name) {
                    return Err(err(
                        lineno,
                        col_of(raw, body),
                        format!("bad generator list name `{name}`"),
                    ));
                }
                if blocks.iter().any(|b| b.name == name) {
                    return Err(err(
                        lineno,
                        col_of(raw, body),
                        format!("duplicate generator list `{name}`"),
                    ));
                }
                open = Some(RawBlock {
                    name: name.to_string(),
                    line: lineno,
                    gens: Vec::new(),
                });
                continue;
            }
            let Some((key, value)) = body.split_once('=') else {
                return Err(err(lineno, col_of(raw, body), "expected `key = value`"));
            };
            let key_t = key.trim();
            let Some(slot) = KEYS.iter().position(|k| *k == key_t) else {
                return Err(err(
                    lineno,
                    col_of(raw, key),
                    format!("unknown key `{key_t}`"),
                ));
            };
            if values[slot].is_some() {
                return Err(err(
                    lineno,
                    col_of(raw, key),
                    format!("duplicate key `{key_t}`"),
                ));
            }
            values[slot] = Some(Located {
                line: lineno,
                col: col_of(raw, value),
                text: value.trim().to_string(),
            });
        }
        if let Some(block) = open {
            return Err(err(
                block.line,
                1,
                format!("unterminated generator list `{}`", block.name),
            ));
        }

        let [field, tvars, xvars, rank, denom, order] = KEYS.map(|k| {
            let i = KEYS.iter().position(|x| *x == k).unwrap();
            values[i].take()
        });
        let field = match &field {
            None => FieldSpec::Rationals,
            Some(v) => v
                .text
                .parse::<FieldSpec>()
                .map_err(|e| err(v.line, v.col, e.to_string()))?,
        };
        let number = |v: &Option<Located>, what: &str| -> Result<u32, SessionError> {
            match v {
                None => Ok(1),
                Some(v) => match v.text.parse::<u32>() {
                    Ok(n) if n >= 1 => Ok(n),
                    _ => Err(err(
                        v.line,
                        v.col,
                        format!("{what} must be a positive integer"),
                    )),
                },
            }
        };
        let rank_n = number(&rank, "rank")?;
        let mut denom_n = number(&denom, "denom")?;
        if let Some(d) = denom_override {
            denom_n = d;
        }
        let tv = tvars.as_ref().map(names).unwrap_or_default();
        let xv = xvars.as_ref().map(names).unwrap_or_default();
        let anchor = xvars.as_ref().or(tvars.as_ref());
        let (al, ac) = anchor.map(|v| (v.line, v.col)).unwrap_or((1, 1));
        let ctx = RingContext::new(field, &tv, &xv, rank_n as usize, denom_n)
            .map_err(|e| err(al, ac, e.to_string()))?;

        let (spec, order_loc) = match (order_override, &order) {
            (Some(text), _) => (
                OrderingSpec::parse(text).map_err(|e| err(0, 0, format!("--order: {e}")))?,
                None,
            ),
            (None, Some(v)) => (
                OrderingSpec::parse(&v.text).map_err(|e| parse_error_at(v, e))?,
                Some(v),
            ),
            (None, None) => (OrderingSpec::lex(), None),
        };
        let ord = CompiledOrdering::compile(&spec, &ctx).map_err(|e| match order_loc {
            Some(v) => err(v.line, v.col, e.to_string()),
            None => err(0, 0, e.to_string()),
        })?;

        let mut ideals = Vec::new();
        for block in blocks {
            let mut gens = Vec::new();
            for g in &block.gens {
                gens.push(parse_poly(&g.text, &ord).map_err(|e| parse_error_at(g, e))?);
            }
            ideals.push((block.name, gens));
        }
        Ok(Session {
            ctx,
            order: spec,
            ord,
            ideals,
        })
    }

    pub fn ideal(&self, name: &str) -> Option<&[PolyVector]> {
        self.ideals
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g.as_slice())
    }

    /// Canonical text: fixed key order, generators in canonical form.
    pub fn to_canonical(&self) -> String {
        let c = &self.ctx;
        let mut out = String::new();
        let _ = writeln!(out, "field = {}", c.field());
        let _ = writeln!(out, "tvars = {}", c.tvars().join(", "));
        let _ = writeln!(out, "xvars = {}", c.xvars().join(", "));
        let _ = writeln!(out, "rank = {}", c.rank());
        let _ = writeln!(out, "denom = {}", c.denom());
        let _ = writeln!(out, "order = {}", self.order);
        for (name, gens) in &self.ideals {
            let _ = writeln!(out, "gens {name} {{");
            for g in gens {
                let _ = writeln!(out, "  {}", format_poly(g));
            }
            out.push_str("}\n");
        }
        out
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "tstd",
    version,
    about = "Standard bases and divisions under t-local orderings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Session file.
    session: PathBuf,
    /// Generator list to use (default: the first one in the file).
    #[arg(long)]
    ideal: Option<String>,
    /// Ordering overriding the session's `order`.
    #[arg(long, allow_hyphen_values = true)]
    order: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Weak,
    Strong,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Standard basis of the generator list.
    Std {
        #[command(flatten)]
        common: Common,
        /// Drop generators with redundant leading monomials.
        #[arg(long)]
        reduce: bool,
    },
    /// Whether the generator list is already a standard basis.
    Check {
        #[command(flatten)]
        common: Common,
    },
    /// Weak (or strong) division with remainder.
    Nf {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, value_enum, default_value = "weak")]
        mode: Mode,
    },
    /// Homogeneous determinate division.
    Hddwr {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        /// Stop once the residual lies in <t>^prec; without it, fold t into
        /// the grading and divide exactly.
        #[arg(long)]
        prec: Option<u32>,
    },
    /// Submodule membership.
    Member {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
    },
    /// Syzygies of the standard basis.
    Syz {
        #[command(flatten)]
        common: Common,
    },
    /// Eliminate x-variables.
    Eliminate {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',')]
        vars: Vec<String>,
    },
    /// Intersection with another generator list of the session.
    Intersect {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        other: String,
    },
    /// Ideal quotient by one element.
    Quotient {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        by: String,
    },
    /// Saturation by one element.
    Saturate {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        by: String,
    },
    /// Generators of the t-initial ideal.
    Tinitial {
        #[command(flatten)]
        common: Common,
        /// Weights `w_0,w_1,..,w_n` with `w_0 < 0`.
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        /// Denominator `N` overriding the session's `denom`.
        #[arg(long)]
        denom: Option<u32>,
        /// Global tiebreak on x: lex, deglex or degrevlex.
        #[arg(long, default_value = "degrevlex")]
        global: String,
    },
}

/// Exit code and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_FALSE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_MATH: u8 = 3;

enum Failure {
    Usage(String),
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn lines(items: impl IntoIterator<Item = String>) -> Self {
        let mut text = String::new();
        for s in items {
            text.push_str(&s);
            text.push('\n');
        }
        Output {
            text,
            code: EXIT_OK,
        }
    }

    fn boolean(b: bool) -> Self {
        Output {
            text: format!("{b}\n"),
            code: if b { EXIT_OK } else { EXIT_FALSE },
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => Outcome {
            code: out.code,
            stdout: out.text,
            stderr: String::new(),
        },
        Err(Failure::Usage(msg)) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Math(e)) => Outcome {
            code: EXIT_MATH,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn load(common: &Common, denom: Option<u32>) -> Result<(Session, Vec<PolyVector>), Failure> {
    let text = std::fs::read_to_string(&common.session)
        .map_err(|e| Failure::Usage(format!("{}: {e}", common.session.display())))?;
    let session = Session::parse_with(&text, common.order.as_deref(), denom).map_err(|e| {
        if e.line == 0 {
            Failure::Usage(e.message)
        } else {
            Failure::Usage(format!("{}: {e}", common.session.display()))
        }
    })?;
    let gens = match &common.ideal {
        Some(name) => session
            .ideal(name)
            .ok_or_else(|| Failure::Usage(format!("no generator list named `{name}`")))?
            .to_vec(),
        None => session
            .ideals
            .first()
            .map(|(_, g)| g.clone())
            .ok_or_else(|| Failure::Usage("the session has no generator list".into()))?,
    };
    Ok((session, gens))
}

fn poly_arg(text: &str, ord: &CompiledOrdering, flag: &str) -> Result<PolyVector, Failure> {
    parse_poly(text, ord).map_err(|e| Failure::Usage(format!("--{flag}: {e}")))
}

fn monic_lines(gens: &[PolyVector]) -> Output {
    Output::lines(gens.iter().map(|g| format_poly(&g.monic())))
}

fn division_lines(res: &DivisionResult, with_residual: bool) -> Output {
    let q: Vec<String> = res.q.iter().map(format_poly).collect();
    let mut lines = vec![
        format!("u = {}", format_poly(&res.u)),
        format!("q = [{}]", q.join(", ")),
        format!("r = {}", format_poly(&res.r)),
    ];
    if with_residual {
        let residual = res
            .residual
            .as_ref()
            .map(format_poly)
            .unwrap_or_else(|| "0".to_string());
        lines.push(format!("residual = {residual}"));
    }
    Output::lines(lines)
}

fn max_iter() -> Result<usize, Failure> {
    match std::env::var("TSTD_MAX_ITER") {
        Err(_) => Ok(SATURATION_CAP),
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| Failure::Usage(format!("TSTD_MAX_ITER: `{v}` is not a number"))),
    }
}

fn dispatch(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Std { common, reduce } => {
            let (s, gens) = load(&common, None)?;
            let basis = std(&GeneratorSet::new(&s.ord, &gens)?)?;
            let basis = if reduce { minimalize(&basis) } else { basis };
            Ok(monic_lines(basis.gens()))
        }
        Command::Check { common } => {
            let (s, gens) = load(&common, None)?;
            Ok(Output::boolean(is_standard_basis(&GeneratorSet::new(
                &s.ord, &gens,
            )?)?))
        }
        Command::Nf { common, poly, mode } => {
            let (s, gens) = load(&common, None)?;
            let f = poly_arg(&poly, &s.ord, "poly")?;
            let res = match mode {
                Mode::Weak => dwr(&f, &gens, &s.ord)?,
                Mode::Strong => dwr_strong(&f, &gens, &s.ord)?,
            };
            Ok(division_lines(&res, false))
        }
        Command::Hddwr { common, poly, prec } => {
            let (s, gens) = load(&common, None)?;
            let f = poly_arg(&poly, &s.ord, "poly")?;
            let mode = match prec {
                Some(p) => HddwrMode::Truncated(p),
                None => HddwrMode::Folded,
            };
            Ok(division_lines(&hddwr(&f, &gens, &s.ord, mode)?, true))
        }
        Command::Member { common, poly } => {
            let (s, gens) = load(&common, None)?;
            let f = poly_arg(&poly, &s.ord, "poly")?;
            Ok(Output::boolean(membership(
                &f,
                &GeneratorSet::new(&s.ord, &gens)?,
            )?))
        }
        Command::Syz { common } => {
            let (s, gens) = load(&common, None)?;
            let basis = std(&GeneratorSet::new(&s.ord, &gens)?)?;
            let out = syz(&basis, true)?;
            Ok(Output::lines(out.vectors.iter().map(format_vector)))
        }
        Command::Eliminate { common, vars } => {
            let (s, gens) = load(&common, None)?;
            Ok(monic_lines(eliminate(&gens, &vars, &s.ord)?.gens()))
        }
        Command::Intersect { common, other } => {
            let (s, gens) = load(&common, None)?;
            let b = s
                .ideal(&other)
                .ok_or_else(|| Failure::Usage(format!("no generator list named `{other}`")))?;
            Ok(monic_lines(intersect(&gens, b, &s.ord)?.gens()))
        }
        Command::Quotient { common, by } => {
            let (s, gens) = load(&common, None)?;
            let f = poly_arg(&by, &s.ord, "by")?;
            Ok(monic_lines(quotient(&gens, &f, &s.ord)?.gens()))
        }
        Command::Saturate { common, by } => {
            let (s, gens) = load(&common, None)?;
            let f = poly_arg(&by, &s.ord, "by")?;
            Ok(monic_lines(
                saturate(&gens, &f, &s.ord, max_iter()?)?.gens(),
            ))
        }
        Command::Tinitial {
            common,
            w,
            denom,
            global,
        } => {
            let (s, gens) = load(&common, denom)?;
            let weights = w
                .split(',')
                .map(|p| {
                    parse_rational(p)
                        .ok_or_else(|| Failure::Usage(format!("--w: bad weight `{}`", p.trim())))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let weights =
                WeightVectorW::new(weights).map_err(|e| Failure::Usage(format!("--w: {e}")))?;
            let kind = GlobalKind::from_name(&global)
                .ok_or_else(|| Failure::Usage(format!("--global: unknown ordering `{global}`")))?;
            let out = tinitial_ideal(&s.ctx, &gens, &weights, kind)?;
            Ok(Output::lines(out.iter().map(format_poly)))
        }
    }
}
