use std::f64::consts::PI;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use resurgentia::alien::checks::Direction;
use resurgentia::alien::fuzz::fuzz_check;
use resurgentia::alien::{
    bridge_check, companion_f, deltaplus_table, formal_integral, stokes_action_check, te_apply,
    AlienOp, Caps, Frame, Lin, Mono, Poly, TransElement,
};
use resurgentia::borel::singular::{bhat_coeffs, g_borel_coeffs};
use resurgentia::borel::{
    connection_check, gevrey_check, median_real_check, singularity_locate, sum_family, Family,
    Interval, Lateral, LogPoint, Method, Ray, Side,
};
use resurgentia::cli::{parse_config, render, Format, Overrides, RunConfig};
use resurgentia::exact::{ExactFmt, Q};
use resurgentia::hae::{self, Ode};
use resurgentia::large_radius as lr;
use resurgentia::verify::run_all;

#[derive(Parser)]
#[command(
    name = "resurgentia",
    version,
    about = "Exact and numeric resurgence of the Airy-type family"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Config file; defaults to $RESURGENTIA_CONFIG when set.
    #[arg(long, global = true, env = "RESURGENTIA_CONFIG")]
    config: Option<PathBuf>,
    /// Truncation order N.
    #[arg(long, global = true)]
    order: Option<usize>,
    #[arg(long, global = true)]
    k_sigma: Option<u32>,
    #[arg(long, global = true)]
    k_e: Option<u32>,
    /// Laplace quadrature tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Tolerance of inner Borel-transform evaluations.
    #[arg(long, global = true)]
    inner_tol: Option<f64>,
    /// Angular margin from singular directions.
    #[arg(long, global = true)]
    delta_ray: Option<f64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact coefficient tables.
    Coeffs(CoeffsArgs),
    /// Exact residuals of the formal solutions.
    OdeCheck(OdeArgs),
    /// Symbolic alien calculus.
    #[command(subcommand)]
    Alien(AlienCmd),
    /// Borel-Laplace sums on a grid of points.
    Sum(SumArgs),
    /// Numeric connection formulas.
    Connect(ConnectArgs),
    /// Real solutions from the median sum.
    Median(MedianArgs),
    /// Nearest Borel singularity and optimal truncation.
    Singularity(SingularityArgs),
    /// The large-radius limit.
    #[command(subcommand)]
    LargeRadius(LrCmd),
    /// Runs every acceptance criterion.
    VerifyAll,
}

#[derive(Args)]
struct CoeffsArgs {
    /// Free-energy coefficients a_2..a_G.
    #[arg(long)]
    ag: bool,
    #[arg(long, default_value_t = 4)]
    max_g: usize,
    /// c_0..c_N.
    #[arg(long)]
    c: bool,
    /// G_0..G_nmax to order N.
    #[arg(long)]
    gn: bool,
    #[arg(long, default_value_t = 3)]
    nmax: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum OdeFamily {
    Psi,
    G,
    U,
    All,
}

#[derive(Args)]
struct OdeArgs {
    #[arg(long, value_enum, default_value_t = OdeFamily::All)]
    family: OdeFamily,
}

#[derive(Clone, Copy, ValueEnum)]
enum Dir {
    Right,
    Left,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    /// The series g.
    G,
    /// The series f.
    F,
    /// The formal integral at the configured caps.
    Transseries,
    /// Its companion built on f.
    Companion,
}

#[derive(Subcommand)]
enum AlienCmd {
    /// Applies one operator to a preset element.
    Apply {
        /// delta:W, deltaplus:W, dot-right, dot-left, stokes-right, stokes-left or dz.
        #[arg(long)]
        op: String,
        #[arg(long, value_enum, default_value_t = Preset::G)]
        element: Preset,
    },
    /// Bridge equation residuals.
    Bridge {
        /// Uses the large-radius transseries and expands to this z2-order.
        #[arg(long)]
        large_radius: Option<usize>,
    },
    /// Stokes automorphism residuals.
    Stokes {
        #[arg(value_enum)]
        side: Dir,
        #[arg(long)]
        large_radius: bool,
    },
    /// Delta+ table against the closed forms.
    Table,
    /// Seeded Leibniz and commutation checks.
    Fuzz {
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

#[derive(Args)]
struct SumArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    /// Comma-separated moduli.
    #[arg(long, value_delimiter = ',', required = true)]
    z: Vec<f64>,
    #[command(flatten)]
    arg: ArgInput,
    /// I0, Ipi, I+ or I-.
    #[arg(long, value_parser = parse_interval, default_value = "Ipi")]
    interval: Interval,
}

#[derive(Args)]
struct ArgInput {
    /// Argument in radians on the log surface.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "arg_pi")]
    arg: Option<f64>,
    /// Argument in units of pi.
    #[arg(long, allow_negative_numbers = true)]
    arg_pi: Option<f64>,
}

impl ArgInput {
    fn radians(&self) -> f64 {
        self.arg.or(self.arg_pi.map(|a| a * PI)).unwrap_or(0.0)
    }
}

#[derive(Args)]
struct ConnectArgs {
    #[arg(value_enum)]
    side: Dir,
    #[arg(long)]
    z: f64,
    #[command(flatten)]
    arg: ArgInput,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    sigma1: Complex64,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    sigma2: Complex64,
    /// Defaults to 1e-6 on the right and 1e-4 on the left.
    #[arg(long)]
    max_residual: Option<f64>,
}

#[derive(Args)]
struct MedianArgs {
    #[arg(long)]
    x: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    a: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    b: f64,
    #[arg(long, value_enum, default_value_t = RayArg::Arg0)]
    ray: RayArg,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    theta: f64,
    #[arg(long, default_value_t = 1e-8)]
    max_imag: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum RayArg {
    Arg0,
    ArgPi,
}

#[derive(Clone, Copy, ValueEnum)]
enum Coeffs {
    /// Borel transform of g.
    G,
    /// Maclaurin coefficients of the kernel B.
    Bhat,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Ratio,
    Pade,
}

#[derive(Args)]
struct SingularityArgs {
    #[arg(long, default_value_t = 80)]
    count: usize,
    #[arg(long, value_enum, default_value_t = Coeffs::G)]
    series: Coeffs,
    /// Exact rational coefficients, one per line, used instead of --series.
    #[arg(long)]
    coeffs_file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = MethodArg::Ratio)]
    method: MethodArg,
    /// Also prints the optimal-truncation table of g at this modulus.
    #[arg(long)]
    gevrey_z: Option<f64>,
    #[command(flatten)]
    arg: ArgInput,
    #[arg(long, value_parser = parse_interval, default_value = "I-")]
    interval: Interval,
    #[arg(long, default_value_t = 40)]
    n_max: usize,
}

#[derive(Args)]
struct LrPointArgs {
    /// |g_s|.
    #[arg(long)]
    gs: f64,
    /// arg g_s in units of pi.
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    gs_arg_pi: f64,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    u: Complex64,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    sigma1: Complex64,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    sigma2: Complex64,
}

impl LrPointArgs {
    fn gs(&self) -> LogPoint {
        LogPoint::new(self.gs, self.gs_arg_pi * PI)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LateralArg {
    Plus,
    Minus,
}

#[derive(Subcommand)]
enum LrCmd {
    /// Polynomials Pol_n(u, 2g) of H^(n).
    Pols {
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 4)]
        gmax: usize,
    },
    /// Perturbative H^(0) in powers of g_s^2.
    H0 {
        #[arg(long)]
        order: Option<usize>,
    },
    /// Residual of the u-equation on H^(0).
    Uresidual,
    /// Borel sum of the large-radius transseries.
    Lrsum {
        #[command(flatten)]
        point: LrPointArgs,
        #[arg(long, value_enum, default_value_t = LateralArg::Plus)]
        lateral: LateralArg,
    },
    /// Large-radius connection formulas.
    Connect {
        #[arg(value_enum)]
        side: Dir,
        #[command(flatten)]
        point: LrPointArgs,
        #[arg(long)]
        max_residual: Option<f64>,
    },
    /// Real solution for real u.
    Real {
        #[arg(long)]
        gs: f64,
        #[arg(long, default_value_t = 1.0)]
        u: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        a: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        b: f64,
        #[arg(long, default_value_t = 1e-8)]
        max_imag: f64,
    },
}

fn parse_family(s: &str) -> Result<Family, String> {
    Family::parse(s).ok_or_else(|| format!("family must be psi, phi, g or f, got {s:?}"))
}

fn parse_interval(s: &str) -> Result<Interval, String> {
    Interval::parse(s).ok_or_else(|| format!("interval must be I0, Ipi, I+ or I-, got {s:?}"))
}

fn parse_op(s: &str) -> Result<AlienOp, String> {
    let weight = |w: &str| w.parse::<i32>().map_err(|_| format!("bad weight {w:?}"));
    match s.split_once(':') {
        Some(("delta", w)) => Ok(AlienOp::Delta(weight(w)?)),
        Some(("deltaplus", w)) => Ok(AlienOp::DeltaPlus(weight(w)?)),
        None => match s {
            "dot-right" => Ok(AlienOp::DotRight),
            "dot-left" => Ok(AlienOp::DotLeft),
            "stokes-right" => Ok(AlienOp::StokesRight),
            "stokes-left" => Ok(AlienOp::StokesLeft),
            "dz" => Ok(AlienOp::Dz),
            _ => Err(format!("unknown operator {s:?}")),
        },
        _ => Err(format!("unknown operator {s:?}")),
    }
}

/// Failure reported as a JSON record on stderr with exit status 1.
struct Failure {
    kind: &'static str,
    message: String,
    /// Result to emit before failing, for tolerance failures.
    record: Option<Value>,
}

impl Failure {
    fn domain(e: impl std::fmt::Display) -> Failure {
        Failure {
            kind: "domain",
            message: e.to_string(),
            record: None,
        }
    }

    fn tolerance(message: String, record: Value) -> Failure {
        Failure {
            kind: "tolerance",
            message,
            record: Some(record),
        }
    }
}

type Out = Result<Value, Failure>;

fn with_bound<T: serde::Serialize>(r: &T, bound: f64) -> Value {
    let mut v = serde_json::to_value(r).expect("record serializes");
    v["bound"] = json!(bound);
    v
}

fn within(v: Value, ok: bool, what: impl FnOnce() -> String) -> Out {
    if ok {
        Ok(v)
    } else {
        Err(Failure::tolerance(what(), v))
    }
}

fn coeffs(a: &CoeffsArgs, cfg: &RunConfig) -> Out {
    if !(a.ag || a.c || a.gn) {
        return Err(Failure {
            kind: "usage",
            message: "choose at least one of --ag, --c, --gn".into(),
            record: None,
        });
    }
    let mut m = serde_json::Map::new();
    let mut merge = |v: Value| {
        if let Value::Object(o) = v {
            m.extend(o);
        }
    };
    if a.ag {
        merge(hae::ag_table(a.max_g).map_err(Failure::domain)?);
    }
    if a.c {
        merge(hae::c_table(cfg.order));
    }
    if a.gn {
        merge(hae::gn_table(cfg.order, a.nmax).map_err(Failure::domain)?);
    }
    Ok(Value::Object(m))
}

fn ode_check(a: &OdeArgs, cfg: &RunConfig) -> Out {
    let n = cfg.order;
    let mut m = serde_json::Map::new();
    let mut ok = true;
    let mut record = |name: &str, order: usize, zero: bool| {
        ok &= zero;
        m.insert(
            name.into(),
            json!({ "residual_order": order, "zero": zero }),
        );
    };
    if matches!(a.family, OdeFamily::Psi | OdeFamily::All) {
        let (psi, _) = hae::gen_psi_phi(n).map_err(Failure::domain)?;
        let r = hae::ode_residual(&psi.series, Ode::AiryLinear);
        record("psi", r.order(), r.is_zero());
    }
    if matches!(a.family, OdeFamily::G | OdeFamily::All) {
        let (g, _, _) = hae::gen_g_f(n).map_err(Failure::domain)?;
        let r = hae::ode_residual(&g.series, Ode::HaeNonlinear);
        record("g", r.order(), r.is_zero());
    }
    if matches!(a.family, OdeFamily::U | OdeFamily::All) {
        let h = lr::gen_h0(n).map_err(Failure::domain)?;
        let r = lr::u_equation_residual(&h).map_err(Failure::domain)?;
        record("u_equation", r.order(), r.is_zero());
    }
    within(Value::Object(m), ok, || {
        "a formal residual does not vanish".into()
    })
}

fn preset(p: Preset, cfg: &RunConfig) -> Result<TransElement, Failure> {
    let single = |lin| TransElement::mono(Mono::lin(lin), Poly::one(), Caps::EXACT, Frame::Direct);
    match p {
        Preset::G => Ok(single(Lin::G)),
        Preset::F => Ok(single(Lin::F)),
        Preset::Transseries => formal_integral(cfg.k_sigma, cfg.k_e).map_err(Failure::domain),
        Preset::Companion => companion_f(cfg.k_sigma, cfg.k_e).map_err(Failure::domain),
    }
}

fn direction(d: Dir) -> Direction {
    match d {
        Dir::Right => Direction::Right,
        Dir::Left => Direction::Left,
    }
}

fn alien(cmd: &AlienCmd, cfg: &RunConfig) -> Out {
    let (ks, ke) = (cfg.k_sigma, cfg.k_e);
    match cmd {
        AlienCmd::Apply { op, element } => {
            let op = parse_op(op).map_err(|message| Failure {
                kind: "usage",
                message,
                record: None,
            })?;
            let x = preset(*element, cfg)?;
            let y = te_apply(op, &x).map_err(Failure::domain)?;
            Ok(json!({ "op": op.to_string(), "input": x.to_json(), "result": y.to_json() }))
        }
        AlienCmd::Bridge { large_radius: None } => {
            let b = bridge_check(ks, ke).map_err(Failure::domain)?;
            let v = json!({ "right": b.right.to_json(), "left": b.left.to_json(), "vanish": b.vanish() });
            within(v, b.vanish(), || "bridge residuals do not vanish".into())
        }
        AlienCmd::Bridge {
            large_radius: Some(order),
        } => {
            let b = lr::lr_bridge_check(ks, ke, *order).map_err(Failure::domain)?;
            let v = json!({
                "right": b.residuals.right.to_json(),
                "left": b.residuals.left.to_json(),
                "expanded_nonzero": b.expanded_nonzero,
                "vanish": b.vanish(),
            });
            within(v, b.vanish(), || {
                "large-radius bridge residuals do not vanish".into()
            })
        }
        AlienCmd::Stokes { side, large_radius } => {
            let r = if *large_radius {
                lr::lr_stokes_check(direction(*side), ks, ke).map_err(Failure::domain)?
            } else {
                stokes_action_check(direction(*side), ks, ke).map_err(Failure::domain)?
            };
            let zero = r.is_zero();
            within(
                json!({ "residual": r.to_json(), "zero": zero }),
                zero,
                || "Stokes residual does not vanish".into(),
            )
        }
        AlienCmd::Table => {
            let t = deltaplus_table(ks, ke).map_err(Failure::domain)?;
            let ok = t.iter().all(|e| e.agrees());
            let rows: Vec<Value> = t
                .iter()
                .map(|e| json!({ "omega": e.omega, "k": e.k, "agrees": e.agrees(), "value": e.engine.to_json() }))
                .collect();
            within(json!({ "entries": rows }), ok, || {
                "Delta+ table disagrees with the closed forms".into()
            })
        }
        AlienCmd::Fuzz { cases } => {
            let r = fuzz_check(cfg.seed, *cases).map_err(Failure::domain)?;
            let ok = r.passed();
            let v = serde_json::to_value(&r).expect("report serializes");
            within(v, ok, || "fuzzed identities failed".into())
        }
    }
}

fn sum(a: &SumArgs, cfg: &RunConfig) -> Out {
    let sc = cfg.sum_config();
    let arg = a.arg.radians();
    let mut grid = Vec::new();
    for &z in &a.z {
        let v = sum_family(a.family, &LogPoint::new(z, arg), &a.interval, &sc)
            .map_err(Failure::domain)?;
        grid.push(json!({
            "z": z, "arg": arg, "value_re": v.value.re, "value_im": v.value.im, "err": v.err, "theta": v.theta,
        }));
    }
    Ok(json!({ "grid": grid }))
}

fn connect(a: &ConnectArgs, cfg: &RunConfig) -> Out {
    let side = match a.side {
        Dir::Right => Side::Right,
        Dir::Left => Side::Left,
    };
    let bound = a.max_residual.unwrap_or(if matches!(a.side, Dir::Right) {
        1e-6
    } else {
        1e-4
    });
    let z = LogPoint::new(a.z, a.arg.radians());
    let r = connection_check(side, &z, a.sigma1, a.sigma2, &cfg.sum_config())
        .map_err(Failure::domain)?;
    let v = with_bound(&r, bound);
    within(v, r.residual <= bound, || {
        format!("residual {:e} exceeds {bound:e}", r.residual)
    })
}

fn median(a: &MedianArgs, cfg: &RunConfig) -> Out {
    let ray = match a.ray {
        RayArg::Arg0 => Ray::Arg0,
        RayArg::ArgPi => Ray::ArgPi,
    };
    let m = median_real_check(a.x, a.a, a.b, ray, a.theta, &cfg.sum_config())
        .map_err(Failure::domain)?;
    let v = serde_json::to_value(m).expect("value serializes");
    within(v, m.imag_residual <= a.max_imag, || {
        format!(
            "imaginary part {:e} exceeds {:e}",
            m.imag_residual, a.max_imag
        )
    })
}

fn read_coeffs(path: &PathBuf) -> Result<Vec<Q>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::domain(format!("{}: {e}", path.display())))?;
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| Q::parse_exact(l).map_err(Failure::domain))
        .collect()
}

fn singularity(a: &SingularityArgs, cfg: &RunConfig) -> Out {
    let coeffs = match (&a.coeffs_file, a.series) {
        (Some(p), _) => read_coeffs(p)?,
        (None, Coeffs::G) => g_borel_coeffs(a.count).map_err(Failure::domain)?,
        (None, Coeffs::Bhat) => bhat_coeffs(a.count),
    };
    let method = match a.method {
        MethodArg::Ratio => Method::Ratio,
        MethodArg::Pade => Method::Pade,
    };
    let est = singularity_locate(&coeffs, method).map_err(Failure::domain)?;
    let mut v = json!({ "singularity": est });
    if let Some(z) = a.gevrey_z {
        let t = gevrey_check(
            &LogPoint::new(z, a.arg.radians()),
            &a.interval,
            a.n_max,
            &cfg.sum_config(),
        )
        .map_err(Failure::domain)?;
        v["gevrey"] = serde_json::to_value(t).expect("table serializes");
    }
    Ok(v)
}

fn large_radius(cmd: &LrCmd, cfg: &RunConfig) -> Out {
    let sc = cfg.sum_config();
    match cmd {
        LrCmd::Pols { n, gmax } => Ok(lr::gen_hn(*n, *gmax).map_err(Failure::domain)?.to_json()),
        LrCmd::H0 { order } => {
            let h = lr::gen_h0(order.unwrap_or(cfg.order)).map_err(Failure::domain)?;
            Ok(json!({ "h0": h.to_json(), "convention": lr::H1_CONVENTION }))
        }
        LrCmd::Uresidual => {
            let h = lr::gen_h0(cfg.order).map_err(Failure::domain)?;
            let r = lr::u_equation_residual(&h).map_err(Failure::domain)?;
            let zero = r.is_zero();
            let v = json!({ "residual_order": r.order(), "zero": zero, "convention": lr::H1_CONVENTION });
            within(v, zero, || "u-equation residual does not vanish".into())
        }
        LrCmd::Lrsum { point: p, lateral } => {
            let side = match lateral {
                LateralArg::Plus => Lateral::Plus,
                LateralArg::Minus => Lateral::Minus,
            };
            let v =
                lr::lr_sum(side, &p.gs(), p.u, p.sigma1, p.sigma2, &sc).map_err(Failure::domain)?;
            Ok(serde_json::to_value(v).expect("value serializes"))
        }
        LrCmd::Connect {
            side,
            point: p,
            max_residual,
        } => {
            let (s, default) = match side {
                Dir::Right => (Side::Right, 1e-6),
                Dir::Left => (Side::Left, 1e-4),
            };
            let bound = max_residual.unwrap_or(default);
            let r = lr::lr_connection_check(s, &p.gs(), p.u, p.sigma1, p.sigma2, &sc)
                .map_err(Failure::domain)?;
            let v = with_bound(&r, bound);
            within(v, r.residual <= bound, || {
                format!("residual {:e} exceeds {bound:e}", r.residual)
            })
        }
        LrCmd::Real {
            gs,
            u,
            a,
            b,
            max_imag,
        } => {
            let r = lr::lr_real_check(&LogPoint::new(*gs, 0.0), *u, *a, *b, &sc)
                .map_err(Failure::domain)?;
            let v = serde_json::to_value(r).expect("value serializes");
            within(v, r.imag_residual <= *max_imag, || {
                format!("imaginary part {:e} exceeds {max_imag:e}", r.imag_residual)
            })
        }
    }
}

fn verify_all(cfg: &RunConfig) -> Out {
    let results = run_all(&cfg.sum_config());
    let ok = results.iter().all(|r| r.passed);
    let v = json!({ "criteria": results, "passed": ok });
    within(v, ok, || "acceptance criteria failed".into())
}

fn config(g: &Global) -> Result<RunConfig, String> {
    let file = match &g.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            parse_config(&text).map_err(|e| format!("{}: {e}", p.display()))?
        }
        None => Overrides::default(),
    };
    let flags = Overrides {
        order: g.order,
        k_sigma: g.k_sigma,
        k_e: g.k_e,
        tol: g.tol,
        inner_tol: g.inner_tol,
        delta_ray: g.delta_ray,
        format: g.format,
        output: g.output.clone(),
        seed: g.seed,
    };
    RunConfig::resolve(&file, &flags)
}

fn emit(v: &Value, cfg: &RunConfig) -> Result<(), String> {
    let text = render(v, cfg.format);
    match &cfg.output {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn error_record(kind: &str, message: &str) {
    eprintln!(
        "{}",
        json!({ "error": { "kind": kind, "message": message } })
    );
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match config(&cli.global) {
        Ok(c) => c,
        Err(e) => {
            error_record("usage", &e);
            return ExitCode::from(2);
        }
    };
    let out = match &cli.cmd {
        Cmd::Coeffs(a) => coeffs(a, &cfg),
        Cmd::OdeCheck(a) => ode_check(a, &cfg),
        Cmd::Alien(c) => alien(c, &cfg),
        Cmd::Sum(a) => sum(a, &cfg),
        Cmd::Connect(a) => connect(a, &cfg),
        Cmd::Median(a) => median(a, &cfg),
        Cmd::Singularity(a) => singularity(a, &cfg),
        Cmd::LargeRadius(c) => large_radius(c, &cfg),
        Cmd::VerifyAll => verify_all(&cfg),
    };
    let (value, failure) = match out {
        Ok(v) => (Some(v), None),
        Err(f) => (f.record.clone(), Some(f)),
    };
    if let Some(v) = value {
        if let Err(e) = emit(&v, &cfg) {
            error_record("io", &e);
            return ExitCode::from(1);
        }
    }
    match failure {
        None => ExitCode::SUCCESS,
        Some(f) => {
            error_record(f.kind, &f.message);
            ExitCode::from(if f.kind == "usage" { 2 } else { 1 })
        }
    }
}
