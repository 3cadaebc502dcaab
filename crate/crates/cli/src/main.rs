use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use l2alex_core::laurent::parse_poly_auto;
use l2alex_core::mahler::{fk_det_poly, FkOptions};
use l2alex_core::pipeline::{
    alexander_norm_from_poly, alexander_norm_report, basiccase_check, knot_report, tau_fibered, tau_graph_manifold,
    tau_knot_abelianization, tau_multivar, tau_torus_knot, KnotInput, TorsionReport,
};
use l2alex_core::torsionfn::{log_grid, sample_at};
use l2alex_core::{Error, Exec, Exponent, FreeGroupEndo, MahlerMethod, MaxMonomialFn, Presentation};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "l2alex", version, about = "L2-Alexander torsion for abelian coefficient systems")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Config {
    /// Quadrature points per torus dimension (power of two)
    #[arg(long, global = true, default_value_t = 1024, value_parser = parse_quad_points)]
    quad_points: usize,
    /// Largest certified root-modulus error accepted without a caveat
    #[arg(long, global = true, default_value_t = 1e-12, value_parser = parse_positive)]
    root_tol: f64,
    /// Maximal power used in growth-rate bounds
    #[arg(long, global = true, default_value_t = 32, value_parser = clap::value_parser!(u64).range(1..))]
    kmax: u64,
    #[arg(long, global = true, default_value_t = 1e-3, value_parser = parse_positive)]
    tmin: f64,
    #[arg(long, global = true, default_value_t = 1e3, value_parser = parse_positive)]
    tmax: f64,
    /// Number of sample points
    #[arg(long, global = true, default_value_t = 121, value_parser = clap::value_parser!(u64).range(2..))]
    n: u64,
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Torsion of a knot from a PD code or a deficiency-one presentation
    Knot {
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        pd: Option<PathBuf>,
        /// Presentation (or PD) JSON
        #[arg(long)]
        file: Option<PathBuf>,
        /// Write sampled values as CSV `t,value,err`
        #[arg(long)]
        samples: Option<PathBuf>,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed form for the (p,q) torus knot
    Torus { p: i64, q: i64 },
    /// Closed form max(1,t)^x for a graph-manifold class
    Graph { x: Exponent },
    /// Certificate for a fibered class from the monodromy
    Fibered {
        /// Endomorphism JSON `{"generators": [...], "images": [...]}`
        endo: PathBuf,
        /// Euler characteristic of the fiber
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
    },
    /// Mahler measure m(p), or m(p(t^psi z)) with --psi and --t
    Mahler {
        #[arg(long)]
        poly: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        psi: Option<Vec<i64>>,
        #[arg(long, default_value_t = 1.0, value_parser = parse_positive)]
        t: f64,
    },
    /// Alexander-norm degrees along the given directions
    Norm {
        /// Presentation JSON with a `phi` map
        #[arg(long, conflicts_with = "poly", required_unless_present = "poly")]
        file: Option<PathBuf>,
        /// Determinant given directly as a polynomial
        #[arg(long)]
        poly: Option<String>,
        #[arg(long = "dir", required = true, value_delimiter = ',', num_args = 1, allow_hyphen_values = true, action = clap::ArgAction::Append)]
        dirs: Vec<String>,
    },
    /// Low/high regions of m(det(P - t z Q)) for unimodular P
    Basiccase { p: PathBuf, q: PathBuf },
}

fn parse_quad_points(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|e| format!("{e}"))?;
    if n >= 2 && n.is_power_of_two() {
        Ok(n)
    } else {
        Err(format!("{n} is not a power of two >= 2"))
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(format!("{s} is not a positive number"))
    }
}

enum Failure {
    Lib(Error),
    Io(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Lib(Error::Parse { .. }) | Failure::Usage(_) => 2,
            Failure::Lib(Error::SingularSelection { .. }) => 3,
            Failure::Lib(_) | Failure::Io(_) => 1,
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

/// Prints a line; a closed pipe (`| head`) is not an error.
fn say(text: &str) {
    let _ = writeln!(io::stdout().lock(), "{text}");
}

fn emit<T: Serialize>(cfg: &Config, value: &T, text: impl FnOnce() -> String) {
    if cfg.json {
        say(&serde_json::to_string_pretty(value).expect("serializes"));
    } else {
        say(&text());
    }
}

fn emit_report(cfg: &Config, r: &TorsionReport) {
    emit(cfg, r, || {
        let mut s = format!("{}: {}", r.input, r.display.as_deref().unwrap_or("?"));
        for c in &r.caveats {
            s.push_str(&format!("\nnote: {c}"));
        }
        s
    });
}

fn grid(cfg: &Config) -> Result<Vec<f64>, Failure> {
    if cfg.tmin >= cfg.tmax {
        return Err(Failure::Usage(format!("--tmin {} must be below --tmax {}", cfg.tmin, cfg.tmax)));
    }
    Ok(log_grid(cfg.tmin, cfg.tmax, cfg.n as usize)?)
}

fn opts(cfg: &Config) -> FkOptions {
    FkOptions { quad_points: cfg.quad_points, exec: Exec::Parallel }
}

fn cmd_knot(cfg: &Config, input: &Path, samples: Option<&Path>, out: Option<&Path>) -> Outcome {
    let input = KnotInput::from_json(&read(input)?)?;
    let kt = tau_knot_abelianization(&input)?;
    let mut report = knot_report(&input)?;
    if let Some(roots) = &kt.roots {
        if roots.max_err() > cfg.root_tol {
            report.caveats.push(format!(
                "root moduli certified only to {:e}, above root_tol {:e}",
                roots.max_err(),
                cfg.root_tol
            ));
        }
    }
    if let Some(path) = samples {
        // sample the determinant route and shift back to the normalised representative
        let h = tau_multivar(&kt.setup.presentation, &[1])?.with_options(opts(cfg));
        let shift = kt.raw_shift as f64;
        let s = sample_at(
            &grid(cfg)?,
            |t| {
                let v = h.eval(t)?;
                let f = t.powf(-shift);
                Ok((v.value * f, v.err * f))
            },
            Exec::Parallel,
        )?;
        report = report.certify("samples_max_rel_deviation", s.max_rel_deviation(&kt.torsion));
        write(path, &s.to_csv())?;
    }
    let text = report.to_json();
    match out {
        Some(path) => write(path, &(text + "\n")),
        None => {
            say(&text);
            Ok(())
        }
    }
}

fn closed_form(cfg: &Config, system: &str, input: String, f: &MaxMonomialFn) {
    emit_report(cfg, &TorsionReport::for_function(system, &input, f));
}

fn cmd_fibered(cfg: &Config, endo: &Path, chi: i64) -> Outcome {
    let f = FreeGroupEndo::from_json(&read(endo)?)?;
    let c = tau_fibered(&f, chi, cfg.kmax)?;
    emit(cfg, &c, || {
        let mut s = format!(
            "x = {}\nT_upper = {} (k = {})\nlower bound = {}\nrepresentative: {}",
            c.x, c.t_upper, c.k_used, c.lower_bound, c.representative
        );
        s.push_str(&format!("\nunverified: {}", c.unverified_region));
        let ok = c.probes.iter().filter(|p| p.ok).count();
        s.push_str(&format!("\nprobes ok: {ok}/{}", c.probes.len()));
        s
    });
    Ok(())
}

fn cmd_mahler(cfg: &Config, poly: &str, psi: Option<&[i64]>, t: f64) -> Outcome {
    let (p, names) = parse_poly_auto(poly)?;
    let zeros = vec![0; p.nvars()];
    let psi = psi.unwrap_or(&zeros);
    let v = fk_det_poly(&p, psi, t, &opts(cfg))?;
    #[derive(Serialize)]
    struct Out<'a> {
        poly: String,
        variables: &'a [String],
        psi: &'a [i64],
        t: f64,
        err_model: &'static str,
        #[serde(flatten)]
        value: &'a l2alex_core::MahlerValue,
    }
    let out = Out {
        poly: p.display_with(&names),
        variables: &names,
        psi,
        t,
        err_model: match v.method {
            MahlerMethod::Jensen => "certified root radii",
            MahlerMethod::Quadrature => "heuristic: N-point grid against its N/2 subgrid",
        },
        value: &v,
    };
    emit(cfg, &out, || if v.err == 0.0 { format!("{}", v.value) } else { format!("{} +- {:e}", v.value, v.err) });
    Ok(())
}

fn parse_dirs(raw: &[String], dim: usize) -> Result<Vec<Vec<i64>>, Failure> {
    // clap splits on commas, so the flat list is regrouped by dimension
    let flat: Vec<i64> = raw
        .iter()
        .map(|s| s.trim().parse().map_err(|_| Failure::Usage(format!("bad direction component {s:?}"))))
        .collect::<Result<_, _>>()?;
    if dim == 0 || !flat.len().is_multiple_of(dim) {
        return Err(Failure::Usage(format!("directions must have {dim} components")));
    }
    Ok(flat.chunks(dim).map(<[i64]>::to_vec).collect())
}

fn cmd_norm(cfg: &Config, file: Option<&Path>, poly: Option<&str>, dirs: &[String]) -> Outcome {
    let r = match (file, poly) {
        (Some(path), _) => {
            let p = Presentation::from_json(&read(path)?)?;
            let dim = p.phi_or_meridional()?.rank();
            alexander_norm_report(&p, &parse_dirs(dirs, dim)?)?
        }
        (None, Some(text)) => {
            let (d, _) = parse_poly_auto(text)?;
            alexander_norm_from_poly(&d, &parse_dirs(dirs, d.nvars())?)?
        }
        (None, None) => return Err(Failure::Usage("one of --file or --poly is required".into())),
    };
    emit(cfg, &r, || {
        let mut s = String::new();
        for e in &r.entries {
            s.push_str(&format!("{:?}: {}\n", e.psi, e.degree));
        }
        if let Some(st) = &r.statement {
            s.push_str(st);
            s.push('\n');
        }
        s.push_str(&format!("homogeneous: {}, triangle: {}", r.homogeneous, r.triangle));
        s
    });
    Ok(())
}

fn read_int_matrix(path: &Path) -> Result<Vec<Vec<i64>>, Failure> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| Failure::Lib(Error::Parse { what: "integer matrix JSON", msg: e.to_string() }))
}

fn cmd_basiccase(cfg: &Config, p: &Path, q: &Path) -> Outcome {
    let r = basiccase_check(&read_int_matrix(p)?, &read_int_matrix(q)?, &grid(cfg)?, cfg.kmax)?;
    emit(cfg, &r, || {
        format!(
            "T_hat = {}\nlow region (f = 1) ok: {}\nhigh region (f = t^{}) ok: {}",
            r.t_hat, r.low_ok, r.n, r.high_ok
        )
    });
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let cfg = &cli.config;
    match &cli.command {
        Command::Knot { pd, file, samples, out } => {
            let input = pd.as_deref().or(file.as_deref()).expect("clap enforces one input");
            cmd_knot(cfg, input, samples.as_deref(), out.as_deref())
        }
        Command::Torus { p, q } => {
            closed_form(cfg, "abelian: phi_K to Z (closed form)", format!("torus({p},{q})"), &tau_torus_knot(*p, *q)?);
            Ok(())
        }
        Command::Graph { x } => {
            closed_form(cfg, "graph manifold (closed form)", format!("graph(x={x})"), &tau_graph_manifold(*x)?);
            Ok(())
        }
        Command::Fibered { endo, chi } => cmd_fibered(cfg, endo, *chi),
        Command::Mahler { poly, psi, t } => cmd_mahler(cfg, poly, psi.as_deref(), *t),
        Command::Norm { file, poly, dirs } => cmd_norm(cfg, file.as_deref(), poly.as_deref(), dirs),
        Command::Basiccase { p, q } => cmd_basiccase(cfg, p, q),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Lib(e) => eprintln!("error: {e}"),
                Failure::Io(m) | Failure::Usage(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
