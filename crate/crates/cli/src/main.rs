//! `cgk`: command-line front end for building and checking conformal
//! Galilei algebras, their Verma modules, singular vectors and invariant
//! differential equations.
//!
//! Exit codes: 0 success, 1 a verification report failed, 2 usage or input error.

use std::io::Write;
use std::process::ExitCode;

use cgk_core::acceptance::run_all;
use cgk_core::algebra::{jacobi_check, summary};
use cgk_core::expr::parse_scalar;
use cgk_core::invariants::{intertwining_check, invariant_equation_latex, invariant_operator};
use cgk_core::reps::{left_action, rep_check, right_action, right_check};
use cgk_core::singular::{condition_root, predicted_weight, search_singular, singular_closed, singular_condition, verify_singular};
use cgk_core::{AlgebraSpec, BasisConstraint, DiffOp, Error, Extension, Gen, ModuleVector, Params, PbwMonomial, Scalar, Symbol, VermaModule};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

macro_rules! to_value {
    ($e:expr) => {
        serde_json::to_value($e).expect("report types serialize")
    };
}

/// Default basis level when neither `--level` nor `CGK_CAPS_LEVEL` is given.
const DEFAULT_LEVEL: u32 = 4;

#[derive(Parser)]
#[command(name = "cgk", version, about = "Exact toolkit for l-conformal Galilei algebras with central extensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structure constants and the Jacobi audit.
    Algebra {
        #[arg(value_enum)]
        action: AlgebraAction,
        #[command(flatten)]
        opts: Opts,
    },
    /// Actions on the lowest-weight Verma module.
    Verma {
        #[arg(value_enum)]
        action: VermaAction,
        #[command(flatten)]
        opts: Opts,
    },
    /// Singular vectors: closed forms, verification, search and existence conditions.
    Singular {
        #[arg(value_enum)]
        action: SingularAction,
        #[command(flatten)]
        opts: Opts,
    },
    /// Right-action and left-action differential-operator realizations.
    Reps {
        #[arg(value_enum)]
        action: RepsAction,
        #[command(flatten)]
        opts: Opts,
    },
    /// Invariant differential equations and their symmetry check.
    Pde {
        #[arg(value_enum)]
        action: PdeAction,
        #[command(flatten)]
        opts: Opts,
    },
    /// Run every acceptance criterion.
    Selftest {
        #[arg(long, value_enum, default_value_t = Render::Text)]
        render: Render,
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraAction {
    Show,
    Jacobi,
}

#[derive(Clone, Copy, ValueEnum)]
enum VermaAction {
    Act,
    Basis,
    Weight,
}

#[derive(Clone, Copy, ValueEnum)]
enum SingularAction {
    Closed,
    Verify,
    Search,
    Condition,
}

#[derive(Clone, Copy, ValueEnum)]
enum RepsAction {
    Left,
    Right,
    Check,
}

#[derive(Clone, Copy, ValueEnum)]
enum PdeAction {
    Emit,
    Check,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Render {
    Json,
    Latex,
    Text,
}

#[derive(Args)]
struct Opts {
    /// Spatial dimension (1 or 2).
    #[arg(long, default_value_t = 1)]
    d: u32,
    /// Twice the spin ℓ.
    #[arg(long = "two-ell", default_value_t = 1)]
    two_ell: u32,
    /// Central extension: mass, exotic or none.
    #[arg(long, default_value = "mass")]
    ext: Extension,
    /// Level of the singular vector / power of the invariant operator.
    #[arg(long)]
    q: Option<u32>,
    /// δ: a rational, `symbolic`, or `auto` (the root of the level-q condition).
    #[arg(long)]
    delta: Option<String>,
    /// Mass eigenvalue μ (M|0> = -μ|0>); symbolic if omitted.
    #[arg(long)]
    mu: Option<String>,
    /// Rotation eigenvalue r (J|0> = -r|0>); symbolic if omitted.
    #[arg(long)]
    r: Option<String>,
    /// Exotic eigenvalue θ (Θ|0> = θ|0>); symbolic if omitted.
    #[arg(long)]
    theta: Option<String>,
    /// Centerless eigenvalue κ (P1|0> = -κ|0>); symbolic if omitted.
    #[arg(long)]
    kappa: Option<String>,
    /// Basis level (PBW degree).
    #[arg(long, env = "CGK_CAPS_LEVEL")]
    level: Option<u32>,
    /// Generator name, e.g. H, D, C, J, M, Theta, P0, P1+, P0-.
    #[arg(long)]
    gen: Option<String>,
    /// Basis monomial as JSON, e.g. '{"h":1,"a":[0],"b":[]}'.
    #[arg(long)]
    monomial: Option<String>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Render::Json)]
    render: Render,
    /// Write the output to a file instead of standard output.
    #[arg(long)]
    out: Option<String>,
}

/// What a command produced: text to print and whether its report passed.
struct Output {
    body: String,
    ok: bool,
}

impl Output {
    fn ok(body: String) -> Self {
        Output { body, ok: true }
    }
}

impl Opts {
    fn spec(&self) -> Result<AlgebraSpec, Error> {
        AlgebraSpec::new(self.d, self.two_ell, self.ext)
    }

    fn q(&self) -> Result<u32, Error> {
        self.q.ok_or_else(|| Error::MissingParameter("--q".into()))
    }

    /// Parameters with δ handled as `default_delta` when `--delta` is absent.
    fn params(&self, spec: &AlgebraSpec, default_delta: &str) -> Result<Params, Error> {
        let mut p = Params::symbolic();
        for (sym, value) in [(Symbol::Mu, &self.mu), (Symbol::R, &self.r), (Symbol::Theta, &self.theta), (Symbol::Kappa, &self.kappa)] {
            if let Some(v) = value {
                p.set(sym, parse_value(v, sym)?);
            }
        }
        match self.delta.as_deref().unwrap_or(default_delta) {
            "auto" => {
                let q = self.q.ok_or_else(|| Error::MissingParameter("--delta auto needs --q".into()))?;
                p.set(Symbol::Delta, Scalar::rational(condition_root(spec, q)?));
            }
            v => p.set(Symbol::Delta, parse_value(v, Symbol::Delta)?),
        }
        Ok(p)
    }

    fn generator(&self) -> Result<Gen, Error> {
        let g = self.gen.as_deref().ok_or_else(|| Error::MissingParameter("--gen".into()))?;
        g.parse()
    }

    fn monomial(&self, module: &VermaModule) -> Result<PbwMonomial, Error> {
        match &self.monomial {
            None => Ok(module.vacuum_monomial()),
            Some(s) => {
                let m = PbwMonomial::parse(s)?;
                module.check_monomial(&m)?;
                Ok(m)
            }
        }
    }

    fn level(&self) -> u32 {
        self.level.unwrap_or(DEFAULT_LEVEL)
    }
}

/// A rational value, or `symbolic` for the symbol itself.
fn parse_value(v: &str, sym: Symbol) -> Result<Scalar, Error> {
    if v == "symbolic" {
        return Ok(Scalar::symbol(sym));
    }
    let s = parse_scalar(v)?;
    if s.as_rational().is_none() {
        return Err(Error::Parse(format!("--{} expects a rational or 'symbolic', got '{v}'", sym.name())));
    }
    Ok(s)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn render_op(op: &DiffOp, render: Render) -> String {
    match render {
        Render::Json => pretty(&json!({ "operator": op.to_json(), "text": op.to_text() })),
        Render::Latex => op.to_latex(),
        Render::Text => op.to_text(),
    }
}

fn render_vector(module: &VermaModule, v: &ModuleVector, render: Render) -> String {
    match render {
        Render::Json => pretty(&v.to_json()),
        Render::Latex => module.render_latex(v),
        Render::Text => module.render_text(v),
    }
}

fn algebra(action: AlgebraAction, opts: &Opts) -> Result<Output, Error> {
    let spec = opts.spec()?;
    match action {
        AlgebraAction::Show => {
            let s = summary(&spec)?;
            Ok(Output::ok(match opts.render {
                Render::Json => pretty(&to_value!(&s)),
                _ => {
                    let table = cgk_core::algebra::StructureTable::new(&spec);
                    let mut lines = vec![format!("{spec}")];
                    for (x, y, c) in table.nonzero() {
                        let terms: Vec<String> = c.iter().map(|(g, k)| format!("({k}) {g}")).collect();
                        lines.push(format!("[{x}, {y}] = {}", terms.join(" + ")));
                    }
                    lines.join("\n")
                }
            }))
        }
        AlgebraAction::Jacobi => {
            let r = jacobi_check(&spec);
            Ok(Output { body: pretty(&to_value!(&r)), ok: r.is_ok() })
        }
    }
}

fn verma(action: VermaAction, opts: &Opts) -> Result<Output, Error> {
    let spec = opts.spec()?;
    let module = VermaModule::new(&spec, &opts.params(&spec, "symbolic")?)?;
    match action {
        VermaAction::Act => {
            let m = opts.monomial(&module)?;
            let v = module.act_generic(opts.generator()?, &ModuleVector::monomial(m))?;
            Ok(Output::ok(render_vector(&module, &v, opts.render)))
        }
        VermaAction::Basis => {
            let basis = module.level_basis(&BasisConstraint::Level(opts.level()))?;
            Ok(Output::ok(match opts.render {
                Render::Json => pretty(&to_value!(&basis)),
                _ => basis.iter().map(|m| module.render_text(&ModuleVector::monomial(m.clone()))).collect::<Vec<_>>().join("\n"),
            }))
        }
        VermaAction::Weight => {
            let m = opts.monomial(&module)?;
            Ok(Output::ok(pretty(&to_value!(&module.weight_of(&m)))))
        }
    }
}

fn singular(action: SingularAction, opts: &Opts) -> Result<Output, Error> {
    let spec = opts.spec()?;
    match action {
        SingularAction::Condition => {
            let q = opts.q()?;
            let c = singular_condition(&spec, q)?;
            let root = condition_root(&spec, q)?;
            Ok(Output::ok(match opts.render {
                Render::Json => pretty(&json!({ "condition": c.to_text(), "delta": root.to_string() })),
                Render::Latex => format!("{} = 0", c.to_latex()),
                Render::Text => format!("{} = 0  (delta = {root})", c.to_text()),
            }))
        }
        SingularAction::Closed => {
            let module = VermaModule::new(&spec, &opts.params(&spec, "auto")?)?;
            let v = singular_closed(&module, opts.q()?)?;
            Ok(Output::ok(render_vector(&module, &v, opts.render)))
        }
        SingularAction::Verify => {
            let module = VermaModule::new(&spec, &opts.params(&spec, "auto")?)?;
            let v = singular_closed(&module, opts.q()?)?;
            let report = verify_singular(&module, &v)?;
            Ok(Output { body: pretty(&to_value!(&report)), ok: report.is_singular })
        }
        SingularAction::Search => {
            let (module, constraint) = match opts.q {
                Some(q) if opts.level.is_none() => {
                    let module = VermaModule::new(&spec, &opts.params(&spec, "auto")?)?;
                    let w = predicted_weight(&module, q);
                    (module, BasisConstraint::Weight(w))
                }
                _ => (VermaModule::new(&spec, &opts.params(&spec, "symbolic")?)?, BasisConstraint::Level(opts.level())),
            };
            let found = search_singular(&module, &constraint)?;
            Ok(Output::ok(match opts.render {
                Render::Json => pretty(&to_value!(&found)),
                Render::Latex => found.kernel.iter().map(|v| module.render_latex(v)).collect::<Vec<_>>().join("\n"),
                Render::Text => found.kernel.iter().map(|v| module.render_text(v)).collect::<Vec<_>>().join("\n"),
            }))
        }
    }
}

fn reps(action: RepsAction, opts: &Opts) -> Result<Output, Error> {
    let spec = opts.spec()?;
    let params = opts.params(&spec, "symbolic")?;
    match action {
        RepsAction::Left => Ok(Output::ok(render_op(&left_action(&spec, &params, opts.generator()?)?, opts.render))),
        RepsAction::Right => Ok(Output::ok(render_op(&right_action(&spec, opts.generator()?)?, opts.render))),
        RepsAction::Check => {
            let right = right_check(&spec)?;
            let left = if spec.has_center() { Some(rep_check(&spec, &params)?) } else { None };
            let ok = right.is_ok() && left.as_ref().is_none_or(|l| l.is_ok());
            Ok(Output { body: pretty(&json!({ "right": to_value!(&right), "left": left.map(|l| to_value!(&l)) })), ok })
        }
    }
}

fn pde(action: PdeAction, opts: &Opts) -> Result<Output, Error> {
    let spec = opts.spec()?;
    let q = opts.q()?;
    match action {
        PdeAction::Emit => {
            let params = opts.params(&spec, "symbolic")?;
            Ok(Output::ok(match opts.render {
                Render::Latex => invariant_equation_latex(&spec, &params, q)?,
                r => render_op(&invariant_operator(&spec, &params, q)?, r),
            }))
        }
        PdeAction::Check => {
            let params = opts.params(&spec, "auto")?;
            let report = intertwining_check(&spec, &params, q)?;
            let entries: Vec<Value> = report
                .entries
                .iter()
                .map(|e| json!({ "generator": e.generator.to_string(), "ok": e.ok, "residual": e.residual.to_text() }))
                .collect();
            let body = json!({
                "spec": to_value!(&report.spec),
                "q": q,
                "delta": report.delta.to_text(),
                "shifted_delta": report.shifted_delta.to_text(),
                "ok": report.is_ok(),
                "generators": entries,
            });
            Ok(Output { body: pretty(&body), ok: report.is_ok() })
        }
    }
}

fn selftest(render: Render) -> Output {
    let outcomes = run_all();
    let ok = outcomes.iter().all(|o| o.passed());
    let body = match render {
        Render::Json => pretty(&json!({
            "ok": ok,
            "criteria": outcomes.iter().map(|o| json!({
                "id": o.id, "name": o.name, "passed": o.passed(), "checks": o.checks, "failures": o.failures,
            })).collect::<Vec<_>>(),
        })),
        _ => outcomes.iter().map(|o| o.line()).collect::<Vec<_>>().join("\n"),
    };
    Output { body, ok }
}

fn emit(body: &str, out: Option<&str>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, format!("{body}\n")).map_err(|e| format!("cannot write {path}: {e}")),
        None => match writeln!(std::io::stdout(), "{body}") {
            // a closed downstream pipe (e.g. `| head`) is not an error
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.to_string()),
            _ => Ok(()),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (result, out) = match &cli.command {
        Command::Algebra { action, opts } => (algebra(*action, opts), opts.out.as_deref()),
        Command::Verma { action, opts } => (verma(*action, opts), opts.out.as_deref()),
        Command::Singular { action, opts } => (singular(*action, opts), opts.out.as_deref()),
        Command::Reps { action, opts } => (reps(*action, opts), opts.out.as_deref()),
        Command::Pde { action, opts } => (pde(*action, opts), opts.out.as_deref()),
        Command::Selftest { render, out } => (Ok(selftest(*render)), out.as_deref()),
    };
    match result {
        Ok(output) => {
            if let Err(e) = emit(&output.body, out) {
                eprintln!("cgk: {e}");
                return ExitCode::from(2);
            }
            if output.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("cgk: {e}");
            ExitCode::from(2)
        }
    }
}
