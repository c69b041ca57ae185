mod registry;
mod report;

use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use tmf7::exactalg::{parse_expr, z_vars, MF7Elem, MultiPoly, ParseContext, Rat};
use tmf7::hopf;
use tmf7::invariants7 as inv;
use tmf7::modforms7;
use tmf7::qseries::divisor_series;
use tmf7::tate;
use tmf7::weierstrass::{self as wst, TransformParams};
use tmf7::Certificate;

#[derive(Parser)]
#[command(name = "tmf7", version, about = "Exact checks for level-7 modular forms and the cubical Hopf algebroid at 3")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Copy)]
struct Global {
    /// q-adic precision; checks raise it to their own minimum
    #[arg(long, global = true, default_value_t = 16)]
    prec: i64,
    /// Emit JSON
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for `verify`
    #[arg(long, global = true, default_value_t = 4)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run named checks, or `all`
    Verify {
        names: Vec<String>,
        /// List the registered checks and exit
        #[arg(long)]
        list: bool,
    },
    /// q-expansion of a named series: z1, z2, z3, delta, sigmaK
    Qexp {
        name: String,
        /// Substitute q -> q^n
        #[arg(long, default_value_t = 1)]
        n: u64,
    },
    #[command(subcommand)]
    Tate(TateCmd),
    #[command(subcommand)]
    Wst(WstCmd),
    #[command(subcommand)]
    Hopf(HopfCmd),
    #[command(subcommand)]
    Inv(InvCmd),
    #[command(subcommand)]
    Mf7(Mf7Cmd),
}

#[derive(Args, Clone, Copy)]
struct Point {
    #[arg(long, default_value_t = 7)]
    n: u64,
    #[arg(long, default_value_t = 1)]
    k: u64,
    #[arg(long, default_value_t = 0)]
    d: u64,
}

#[derive(Subcommand)]
enum TateCmd {
    /// X and Y at the point v q^k of Tate(q^n), with v = zeta_n^d
    Xy(Point),
    /// Tate normal form coefficients at the point
    Alpha(Point),
    /// Lowest terms of X, Y and X + 2Y against the expected table
    Table(Point),
    /// a4, a6 and Delta of Tate(q^n)
    Curve {
        #[arg(long, default_value_t = 1)]
        n: u64,
    },
}

#[derive(Subcommand)]
enum WstCmd {
    /// Apply x = u^2 x' + r, y = u^3 y' + s u^2 x' + t to a curve
    Transform {
        #[arg(long, default_value = "0")]
        r: String,
        #[arg(long, default_value = "0")]
        s: String,
        #[arg(long, default_value = "0")]
        t: String,
        #[arg(long, default_value = "1")]
        u: String,
        /// Coefficients a1,a2,a3,a4,a6; defaults to the generic curve
        #[arg(long)]
        curve: Option<String>,
    },
    /// Image of a polynomial in c4, c6, Delta in mf7
    Level1Image { expr: String },
}

#[derive(Subcommand)]
enum HopfCmd {
    Axioms,
    DualCheck,
    /// Print a comodule: mf12, dual, or invariants
    Comodule { name: String },
}

#[derive(Subcommand)]
enum InvCmd {
    Basis48,
    Sbasis,
    Splitting,
    Coaction,
    /// Sum over the order-6 action of a polynomial in z1, z2, z3, r
    Transfer { expr: String },
    /// Coordinates over A in the 48-element basis
    Expand { expr: String },
}

#[derive(Subcommand)]
enum Mf7Cmd {
    /// q-expansion of a polynomial in z1, z2, z3 (s1, s3, p allowed)
    Qexp { expr: String },
    /// Run a named modforms7 check (action)
    Verify { what: String },
    /// tau-invariant basis in degree k
    Invariants {
        #[arg(long)]
        degree: u32,
    },
}

struct Usage(anyhow::Error);

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(e)) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(2)
        }
    }
}

fn usage<T>(r: anyhow::Result<T>) -> Result<T, Usage> {
    r.map_err(Usage)
}

fn emit_json<T: Serialize>(x: &T) {
    println!("{}", serde_json::to_string_pretty(x).expect("serializable"));
}

#[derive(Serialize)]
struct TimedCertificate<'a> {
    #[serde(flatten)]
    cert: &'a Certificate,
    elapsed_ms: u64,
}

fn emit_cert(g: &Global, run: impl FnOnce() -> Certificate) -> bool {
    let start = std::time::Instant::now();
    let cert = run();
    let elapsed_ms = start.elapsed().as_millis() as u64;
    if g.json {
        emit_json(&TimedCertificate { cert: &cert, elapsed_ms });
    } else {
        println!("{} {}", if cert.passed() { "PASS" } else { "FAIL" }, cert.check);
        for w in &cert.witnesses {
            println!("  {} = {}", w.key, w.value);
        }
        for f in &cert.failures {
            println!("  failure: {}", f);
        }
        for n in &cert.notes {
            println!("  note: {}", n);
        }
    }
    cert.passed()
}

fn mf7_context() -> ParseContext {
    let zv = z_vars();
    let p = |s| parse_expr(s, &zv).expect("valid");
    ParseContext::new(&zv)
        .with_alias("s1", p("z1 + z2 + z3"))
        .with_alias("s3", p("z1*z2*z3"))
        .with_alias("p", p("z1^2*z2 + z2^2*z3 + z3^2*z1"))
        .with_sigma2_reduction()
}

fn r_context() -> ParseContext {
    let rv = inv::r_vars();
    let p = |s| parse_expr(s, &rv).expect("valid");
    ParseContext::new(&rv)
        .with_alias("s1", p("z1 + z2 + z3"))
        .with_alias("s3", p("z1*z2*z3"))
        .with_sigma2_reduction()
}

fn run(cli: Cli) -> Result<bool, Usage> {
    let g = cli.global;
    if g.prec < 1 {
        return Err(Usage(anyhow!("--prec must be positive")));
    }
    match cli.cmd {
        Cmd::Verify { names, list } => {
            if list {
                for s in registry::registry() {
                    let p = s.min_prec.map(|p| format!(" (min q^{})", p)).unwrap_or_default();
                    println!("{:24} {:12} {}{}", s.name, s.module, s.reference, p);
                }
                return Ok(true);
            }
            let rep = report::run_checks(&names, g.prec, g.jobs)
                .map_err(|u| Usage(anyhow!("unknown check `{}` (see `verify --list`)", u.0)))?;
            if g.json {
                emit_json(&rep);
            } else {
                print!("{}", rep.render_text());
            }
            Ok(rep.passed())
        }
        Cmd::Qexp { name, n } => {
            let s = usage(named_series(&name, n, g.prec))?;
            if g.json {
                emit_json(&s);
            } else {
                println!("{}", s);
            }
            Ok(true)
        }
        Cmd::Tate(c) => run_tate(c, &g),
        Cmd::Wst(c) => run_wst(c, &g),
        Cmd::Hopf(c) => run_hopf(c, &g),
        Cmd::Inv(c) => run_inv(c, &g),
        Cmd::Mf7(c) => run_mf7(c, &g),
    }
}

fn named_series(name: &str, n: u64, prec: i64) -> anyhow::Result<tmf7::qseries::QSeries<Rat>> {
    if n == 0 {
        bail!("--n must be positive");
    }
    let s = match name {
        "z1" | "z2" | "z3" => {
            let i: usize = name[1..].parse()?;
            let zb = modforms7::z_basis(prec.max(3))?;
            return Ok(zb.z(i).truncate(prec).compose_scale(n as i64)?.truncate(prec));
        }
        "delta" => tate::discriminant_product(n, prec),
        _ => {
            let k: u32 = name
                .strip_prefix("sigma")
                .and_then(|k| k.parse().ok())
                .ok_or_else(|| anyhow!("unknown series `{}`; use z1, z2, z3, delta or sigmaK", name))?;
            divisor_series(k, n, prec)
        }
    };
    Ok(s)
}

fn run_tate(c: TateCmd, g: &Global) -> Result<bool, Usage> {
    match c {
        TateCmd::Xy(p) => {
            let pt = usage(tate::torsion_xy(p.n, p.k, p.d, g.prec).map_err(Into::into))?;
            if g.json {
                emit_json(&pt);
            } else {
                println!("X = {}", pt.x);
                println!("Y = {}", pt.y);
            }
        }
        TateCmd::Alpha(p) => {
            let a = usage(tate::alpha_series(p.n, p.k, p.d, g.prec).map_err(Into::into))?;
            if g.json {
                emit_json(&a);
            } else {
                println!("s' = {}", a.s_prime);
                println!("alpha1 = {}", a.alpha1);
                println!("alpha2 = {}", a.alpha2);
                println!("alpha3 = {}", a.alpha3);
            }
        }
        TateCmd::Table(p) => {
            let row = usage(tate::lowest_term_table(p.n, p.k, p.d).map_err(Into::into))?;
            return Ok(emit_cert(g, || row.certificate()));
        }
        TateCmd::Curve { n } => {
            let t = usage(tate::tate_coeffs(n, g.prec).map_err(Into::into))?;
            if g.json {
                emit_json(&t);
            } else {
                println!("a4 = {}", t.a4);
                println!("a6 = {}", t.a6);
                println!("Delta = {}", t.delta);
            }
        }
    }
    Ok(true)
}

fn run_wst(c: WstCmd, g: &Global) -> Result<bool, Usage> {
    match c {
        WstCmd::Transform { r, s, t, u, curve } => {
            let base = wst::generic_curve();
            let v = base.a1.vars().clone();
            let parse = |x: &str| parse_expr(x, &v).with_context(|| format!("parsing `{}`", x));
            let w = match curve {
                None => base,
                Some(text) => {
                    let parts: Vec<&str> = text.split(',').collect();
                    if parts.len() != 5 {
                        return Err(Usage(anyhow!("--curve needs five comma-separated coefficients")));
                    }
                    let a: Vec<MultiPoly<Rat>> = usage(parts.iter().map(|x| parse(x)).collect())?;
                    wst::WeierstrassCoeffs::new(a[0].clone(), a[1].clone(), a[2].clone(), a[3].clone(), a[4].clone())
                }
            };
            let p = TransformParams::new(usage(parse(&r))?, usage(parse(&s))?, usage(parse(&t))?, usage(parse(&u))?);
            let out = usage(wst::transform(&w, &p).map_err(Into::into))?;
            let inv = wst::c4_c6_delta(&out);
            if g.json {
                let a: Vec<String> = out.as_array().iter().map(|x| x.to_string()).collect();
                emit_json(&serde_json::json!({
                    "a": a,
                    "c4": inv.c4.to_string(),
                    "c6": inv.c6.to_string(),
                    "delta": inv.delta.to_string(),
                }));
            } else {
                println!("{}", out);
                println!("c4 = {}", inv.c4);
                println!("c6 = {}", inv.c6);
                println!("Delta = {}", inv.delta);
            }
        }
        WstCmd::Level1Image { expr } => {
            let p = usage(parse_expr(&expr, &wst::level1_vars()).map_err(Into::into))?;
            let img = usage(wst::level1_image(&p).map_err(Into::into))?;
            if g.json {
                emit_json(&serde_json::json!({ "image": img.to_string() }));
            } else {
                println!("{}", img);
            }
        }
    }
    Ok(true)
}

fn run_hopf(c: HopfCmd, g: &Global) -> Result<bool, Usage> {
    match c {
        HopfCmd::Axioms => Ok(emit_cert(g, hopf::axioms_check)),
        HopfCmd::DualCheck => Ok(emit_cert(g, hopf::self_duality_certificate)),
        HopfCmd::Comodule { name } => {
            let m = match name.as_str() {
                "mf12" => hopf::mf12_comodule(),
                "dual" => usage(hopf::dual_comodule(&hopf::mf12_comodule()).map_err(Into::into))?,
                "invariants" => usage(inv::coaction_on_s().map_err(Into::into))?,
                _ => return Err(Usage(anyhow!("unknown comodule `{}`; use mf12, dual or invariants", name))),
            };
            if g.json {
                emit_json(&m);
            } else {
                print!("{}", m);
            }
            Ok(true)
        }
    }
}

fn run_inv(c: InvCmd, g: &Global) -> Result<bool, Usage> {
    // certificates from this family are always JSON
    let gj = Global { json: true, ..*g };
    match c {
        InvCmd::Basis48 => Ok(emit_cert(&gj, inv::basis48_certificate)),
        InvCmd::Sbasis => Ok(emit_cert(&gj, inv::s_basis_certificate)),
        InvCmd::Splitting => Ok(emit_cert(&gj, inv::splitting_iso_check)),
        InvCmd::Coaction => Ok(emit_cert(&gj, inv::coaction_certificate)),
        InvCmd::Transfer { expr } => {
            let p = usage(r_context().parse(&expr).map_err(Into::into))?;
            let x = usage(inv::RElem::from_poly(&p).map_err(Into::into))?;
            let t = inv::transfer_r(&x);
            Ok(emit_cert(&gj, || {
                let mut c = Certificate::new("inv.transfer");
                c.witness("input", &x).witness("transfer", &t);
                c.require(inv::tau_on_r(&t) == t, "transfer is not invariant");
                c
            }))
        }
        InvCmd::Expand { expr } => {
            let p = usage(r_context().parse(&expr).map_err(Into::into))?;
            let x = usage(inv::RElem::from_poly(&p).map_err(Into::into))?;
            let e = usage(inv::expand_in_basis48(&x).map_err(Into::into))?;
            if g.json {
                emit_json(&serde_json::json!({ "input": x.to_string(), "expansion": e.to_string() }));
            } else {
                println!("{}", e);
            }
            Ok(true)
        }
    }
}

fn run_mf7(c: Mf7Cmd, g: &Global) -> Result<bool, Usage> {
    match c {
        Mf7Cmd::Qexp { expr } => {
            let p = usage(mf7_context().parse(&expr).map_err(Into::into))?;
            let e = usage(MF7Elem::from_poly(&p).map_err(Into::into))?;
            let s = usage(modforms7::qexp_of_mf7(&e, g.prec).map_err(Into::into))?;
            if g.json {
                emit_json(&serde_json::json!({ "normal_form": e.to_string(), "qexp": s }));
            } else {
                println!("{}", s);
            }
            Ok(true)
        }
        Mf7Cmd::Verify { what } => match what.as_str() {
            "action" => Ok(emit_cert(g, modforms7::verify_action_via_eisenstein)),
            _ => Err(Usage(anyhow!("unknown check `{}`; use action", what))),
        },
        Mf7Cmd::Invariants { degree } => Ok(emit_cert(g, || modforms7::invariant_certificate(degree))),
    }
}
