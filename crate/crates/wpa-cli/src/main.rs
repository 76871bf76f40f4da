//! `wpa`: command-line front end for the weighted polynomial approximation
//! library. Subcommands emit JSON reports (CSV/SVG for region grids) with
//! 12-significant-digit numbers; identical configurations produce
//! byte-identical output regardless of thread count.
//!
//! Exit codes: 0 on pass, 1 on a failed criterion/certificate or numerical
//! failure, 2 on invalid input.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use wpa::construction::lemma_construct;
use wpa::geometry::{r_k_alpha, CompactFamily, DomainSpec, RationalExponent};
use wpa::poly::ComplexPolynomial;
use wpa::potential::{m_k, pv_criterion, MkMethod};
use wpa::report::{
    certificate_value, criterion_report_json, family_report_json, fit_result_json, fmt_g12, Json,
};
use wpa::weighted_approx::weighted_fit;
use wpa::{cx, verify, Error, Real};

#[derive(Parser)]
#[command(name = "wpa", version, about = "Potential-theoretic quantities and weighted polynomial approximation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form and numeric family constants as a JSON document.
    Report(Opts),
    /// Sub-level membership grid as CSV (optionally SVG).
    Region(Opts),
    /// Harmonic-measure positivity criterion for the weight z^alpha.
    Criterion(Opts),
    /// Weighted minimax fit of z^{n sigma} Q_{n tau} to a target.
    Fit(Opts),
    /// Certified construction of a partial-sum-controlled polynomial.
    Construct(Opts),
    /// Run the acceptance verification suite.
    Verify(Opts),
}

#[derive(Args, Default)]
struct Opts {
    /// JSON config file mirroring the flags; flags override file values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Compact family: disc, segment, or arc.
    #[arg(long)]
    family: Option<String>,
    /// Tangency parameter for disc and segment families (x0 > 1).
    #[arg(long)]
    x0: Option<f64>,
    /// Arc opening angle (0 < theta0 < 2*pi).
    #[arg(long)]
    theta0: Option<f64>,
    /// Disc radius rho for the inflated domain (defaults to x0 - 1).
    #[arg(long)]
    rho: Option<f64>,
    /// Inflation for segment/arc domains, or target accuracy for `construct`.
    #[arg(long)]
    eps: Option<f64>,
    /// Weight exponent for `criterion`.
    #[arg(long)]
    alpha: Option<f64>,
    /// Numerator of the rational exponent alpha = sigma/tau [default: 1].
    #[arg(long)]
    sigma: Option<u32>,
    /// Denominator of the rational exponent alpha = sigma/tau [default: 1].
    #[arg(long)]
    tau: Option<u32>,
    /// Grid resolution per axis for `region` [default: 100].
    #[arg(long)]
    grid: Option<usize>,
    /// Sample count (boundary or fit samples, command-dependent).
    #[arg(long)]
    samples: Option<usize>,
    /// Partial-sum escape bound B for `construct` [default: 1].
    #[arg(long = "B")]
    b: Option<f64>,
    /// Fit order n for `fit`; required valuation N for `construct`.
    #[arg(long = "N")]
    n: Option<usize>,
    /// Radius r in (0, r(K,alpha)) for `construct` [default: 0.9 r(K,alpha)].
    #[arg(long)]
    r: Option<f64>,
    /// Write the primary document here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also render the region grid as an SVG file.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Write machine-readable verify results to this JSON file.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Run a single verification criterion by slug.
    #[arg(long)]
    only: Option<String>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    family: Option<String>,
    x0: Option<f64>,
    theta0: Option<f64>,
    rho: Option<f64>,
    eps: Option<f64>,
    alpha: Option<f64>,
    sigma: Option<u32>,
    tau: Option<u32>,
    grid: Option<usize>,
    samples: Option<usize>,
    #[serde(rename = "B")]
    b: Option<f64>,
    #[serde(rename = "N")]
    n: Option<usize>,
    r: Option<f64>,
    out: Option<PathBuf>,
    svg: Option<PathBuf>,
    json: Option<PathBuf>,
    only: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let run = |opts: Opts, f: fn(&Opts) -> wpa::Result<u8>| -> ExitCode {
        match merge_config(opts).and_then(|o| f(&o)) {
            Ok(code) => ExitCode::from(code),
            Err(e) => {
                eprintln!("error: {e}");
                let code = match e {
                    Error::Config(_) | Error::Domain(_) | Error::Unsupported(_) => 2,
                    _ => 1,
                };
                ExitCode::from(code)
            }
        }
    };
    match cli.command {
        Command::Report(o) => run(o, cmd_report),
        Command::Region(o) => run(o, cmd_region),
        Command::Criterion(o) => run(o, cmd_criterion),
        Command::Fit(o) => run(o, cmd_fit),
        Command::Construct(o) => run(o, cmd_construct),
        Command::Verify(o) => run(o, cmd_verify),
    }
}

fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("WPA_THREADS") else { return Ok(()) };
    let n: usize = v.parse().map_err(|_| format!("WPA_THREADS must be a positive integer, got '{v}'"))?;
    if n == 0 {
        return Err("WPA_THREADS must be a positive integer".into());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn merge_config(mut opts: Opts) -> wpa::Result<Opts> {
    let Some(path) = &opts.config else { return Ok(opts) };
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    let cfg: FileConfig = serde_json::from_str(&text)
        .map_err(|e| Error::Config(format!("invalid config {}: {e}", path.display())))?;
    opts.family = opts.family.or(cfg.family);
    opts.x0 = opts.x0.or(cfg.x0);
    opts.theta0 = opts.theta0.or(cfg.theta0);
    opts.rho = opts.rho.or(cfg.rho);
    opts.eps = opts.eps.or(cfg.eps);
    opts.alpha = opts.alpha.or(cfg.alpha);
    opts.sigma = opts.sigma.or(cfg.sigma);
    opts.tau = opts.tau.or(cfg.tau);
    opts.grid = opts.grid.or(cfg.grid);
    opts.samples = opts.samples.or(cfg.samples);
    opts.b = opts.b.or(cfg.b);
    opts.n = opts.n.or(cfg.n);
    opts.r = opts.r.or(cfg.r);
    opts.out = opts.out.or(cfg.out);
    opts.svg = opts.svg.or(cfg.svg);
    opts.json = opts.json.or(cfg.json);
    opts.only = opts.only.or(cfg.only);
    Ok(opts)
}

impl Opts {
    fn family(&self) -> wpa::Result<CompactFamily<Real>> {
        let name = self
            .family
            .as_deref()
            .ok_or_else(|| Error::Config("--family is required".into()))?;
        let fam = match name {
            "disc" => CompactFamily::TangentDisc {
                x0: self.x0.ok_or_else(|| Error::Config("disc family needs --x0".into()))?,
            },
            "segment" => CompactFamily::Segment {
                x0: self.x0.ok_or_else(|| Error::Config("segment family needs --x0".into()))?,
            },
            "arc" => CompactFamily::Arc {
                theta0: self
                    .theta0
                    .ok_or_else(|| Error::Config("arc family needs --theta0".into()))?,
            },
            other => {
                return Err(Error::Config(format!(
                    "unknown family '{other}' (expected disc, segment, or arc)"
                )))
            }
        };
        fam.validate()?;
        Ok(fam)
    }

    fn domain(&self) -> wpa::Result<DomainSpec<Real>> {
        let family = self.family()?;
        let inflation = match &family {
            CompactFamily::TangentDisc { x0 } => match self.rho {
                Some(rho) => rho - (x0 - 1.0),
                None => 0.0,
            },
            _ => self.eps.unwrap_or(0.0),
        };
        let spec = DomainSpec::new(family, inflation);
        spec.validate()?;
        Ok(spec)
    }

    fn exponent(&self) -> wpa::Result<RationalExponent> {
        RationalExponent::new(self.sigma.unwrap_or(1), self.tau.unwrap_or(1))
    }
}

fn emit(opts: &Opts, doc: &str) -> wpa::Result<()> {
    match &opts.out {
        Some(path) => fs::write(path, doc)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{doc}");
            Ok(())
        }
    }
}

fn cmd_report(opts: &Opts) -> wpa::Result<u8> {
    let doc = family_report_json(&opts.family()?)?;
    emit(opts, &doc)?;
    Ok(0)
}

fn bounding_box(family: &CompactFamily<Real>) -> (Real, Real, Real, Real) {
    let (x_min, x_max, y_max) = match family {
        CompactFamily::TangentDisc { x0 } => (1.0, 2.0 * x0 - 1.0, x0 - 1.0),
        CompactFamily::Segment { x0 } => (1.0, *x0, 0.0),
        CompactFamily::Arc { theta0 } => {
            let half = theta0 / 2.0;
            ((half).cos().min(1.0), 1.0, half.min(std::f64::consts::FRAC_PI_2).sin())
        }
        CompactFamily::SampledJordan { points } => {
            let mut xs = (Real::INFINITY, Real::NEG_INFINITY);
            let mut ym = 0.0_f64;
            for p in points {
                xs.0 = xs.0.min(p.re);
                xs.1 = xs.1.max(p.re);
                ym = ym.max(p.im.abs());
            }
            (xs.0, xs.1, ym)
        }
    };
    (x_min - 1.0, x_max + 1.0, -(y_max + 1.0), y_max + 1.0)
}

fn cmd_region(opts: &Opts) -> wpa::Result<u8> {
    let family = opts.family()?;
    let exp = opts.exponent()?;
    let grid = opts.grid.unwrap_or(100);
    if grid < 2 || grid > 2000 {
        return Err(Error::Config(format!("grid must lie in 2..=2000, got {grid}")));
    }
    let m = m_k(&family, MkMethod::ClosedForm)?.value;
    let level = m.powi(-(exp.tau() as i32));
    let (x0, x1, y0, y1) = bounding_box(&family);
    let mut csv = String::from("x,y,member\n");
    let mut members = Vec::with_capacity(grid * grid);
    for j in 0..grid {
        let y = y0 + (y1 - y0) * (j as f64) / ((grid - 1) as f64);
        for i in 0..grid {
            let x = x0 + (x1 - x0) * (i as f64) / ((grid - 1) as f64);
            let z = cx::<Real>(x, y);
            let h = z.norm().powi(exp.sigma() as i32) * (cx::<Real>(1.0, 0.0) - z).norm().powi(exp.tau() as i32);
            let member = h < level;
            members.push(member);
            csv.push_str(&format!("{},{},{}\n", fmt_g12(x), fmt_g12(y), u8::from(member)));
        }
    }
    emit(opts, &csv)?;
    if let Some(path) = &opts.svg {
        let svg = render_svg(grid, &members, (x0, x1, y0, y1));
        fs::write(path, svg)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(0)
}

fn render_svg(grid: usize, members: &[bool], (x0, x1, y0, y1): (Real, Real, Real, Real)) -> String {
    let size = 600.0;
    let cell = size / grid as f64;
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n\
         <rect width=\"600\" height=\"600\" fill=\"white\"/>\n"
    );
    for j in 0..grid {
        for i in 0..grid {
            if members[j * grid + i] {
                // SVG y axis points down; row 0 is the bottom of the box.
                let px = i as f64 * cell;
                let py = size - (j + 1) as f64 * cell;
                svg.push_str(&format!(
                    "<rect x=\"{px:.2}\" y=\"{py:.2}\" width=\"{cell:.2}\" height=\"{cell:.2}\" fill=\"#3366cc\"/>\n"
                ));
            }
        }
    }
    let mark_x = (1.0 - x0) / (x1 - x0) * size;
    let mark_y = size - (0.0 - y0) / (y1 - y0) * size;
    svg.push_str(&format!(
        "<circle cx=\"{mark_x:.2}\" cy=\"{mark_y:.2}\" r=\"4\" fill=\"none\" stroke=\"red\" stroke-width=\"1.5\"/>\n</svg>\n"
    ));
    svg
}

fn cmd_criterion(opts: &Opts) -> wpa::Result<u8> {
    let domain = opts.domain()?;
    let alpha = opts.alpha.ok_or_else(|| Error::Config("criterion needs --alpha".into()))?;
    let m = opts.samples.unwrap_or(4096);
    let report = pv_criterion(&domain, alpha, m)?;
    emit(opts, &criterion_report_json(&report))?;
    Ok(u8::from(!report.pass))
}

fn cmd_fit(opts: &Opts) -> wpa::Result<u8> {
    let family = opts.family()?;
    let exp = opts.exponent()?;
    let n = opts.n.unwrap_or(4);
    if n < 1 || n > 512 {
        return Err(Error::Config(format!("fit order must lie in 1..=512, got {n}")));
    }
    let cols = n * exp.tau() as usize + 1;
    let m = opts.samples.unwrap_or(512).max(4 * cols);
    let samples = family.sample_k(m)?;
    let target = ComplexPolynomial::from_real_coeffs(&[1.0]);
    let fit = weighted_fit(&samples, &exp, n as u32, &target)?;
    emit(opts, &fit_result_json(&fit))?;
    Ok(0)
}

fn cmd_construct(opts: &Opts) -> wpa::Result<u8> {
    let family = opts.family()?;
    let exp = opts.exponent()?;
    let epsilon = opts.eps.ok_or_else(|| Error::Config("construct needs --eps".into()))?;
    let b = opts.b.unwrap_or(1.0);
    let n_val = opts.n.unwrap_or(5);
    if n_val < 1 || n_val > 10_000 {
        return Err(Error::Config(format!("valuation N must lie in 1..=10000, got {n_val}")));
    }
    let m = m_k(&family, MkMethod::ClosedForm)?.value;
    let r_star = r_k_alpha(&exp, m)?;
    let r = opts.r.unwrap_or(0.9 * r_star);
    let samples = opts.samples.unwrap_or(64);
    let level = 0.9 * m.powi(-(exp.tau() as i32));
    let l = family.sublevel_slice(&exp, level, samples)?;
    let target = ComplexPolynomial::from_real_coeffs(&[1.0]);
    let (p, cert) = lemma_construct(&family, &exp, epsilon, &target, n_val as u32, b, r, &l)?;
    let coeffs = p
        .poly()
        .coeffs()
        .iter()
        .map(|c| Json::Arr(vec![Json::Num(c.re), Json::Num(c.im)]))
        .collect();
    let doc = Json::obj(vec![
        ("certificate", certificate_value(&cert)),
        ("p_coeffs", Json::Arr(coeffs)),
    ])
    .render();
    emit(opts, &doc)?;
    Ok(u8::from(!cert.pass))
}

fn cmd_verify(opts: &Opts) -> wpa::Result<u8> {
    let results = verify::run(opts.only.as_deref())?;
    let mut all_pass = true;
    let mut table = String::new();
    for r in &results {
        all_pass &= r.pass;
        table.push_str(&format!(
            "[{:2}] {}  {:<18} ({:7.2} s)  {}\n",
            r.id,
            if r.pass { "PASS" } else { "FAIL" },
            r.slug,
            r.seconds,
            if r.pass { r.name.to_string() } else { r.detail.clone() },
        ));
    }
    table.push_str(if all_pass { "all criteria passed\n" } else { "FAILURES PRESENT\n" });
    emit(opts, &table)?;
    if let Some(path) = &opts.json {
        let doc = Json::Arr(
            results
                .iter()
                .map(|r| {
                    Json::obj(vec![
                        ("id", Json::Int(r.id as i64)),
                        ("slug", Json::Str(r.slug.to_string())),
                        ("name", Json::Str(r.name.to_string())),
                        ("pass", Json::Bool(r.pass)),
                        ("seconds", Json::Num(r.seconds)),
                        ("detail", Json::Str(r.detail.clone())),
                    ])
                })
                .collect(),
        )
        .render();
        fs::write(path, doc)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(u8::from(!all_pass))
}
