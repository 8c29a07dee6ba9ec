//! Command-line front end.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use triplelink_core::bicycles::bicycle_census;
use triplelink_core::config::default_nmax;
use triplelink_core::milnorwords::{m_count, mu_geometric, Symbol, Word};
use triplelink_core::spectral::{phi2d_eval, phi_eval};

use crate::files::{load_diagram, write_csv};
use crate::grid::omega_grid;
use crate::pipeline::{run_mu, spectral_form, verify, Formula, RunConfig, Status};
use crate::registry::{parse_triple, resolve_link};
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "triplelink", version, about = "Triple linking numbers of three-component links in S³")]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct LinkArgs {
    /// Built-in name (borromean, great-circles, unlink, lpqr:p,q,r, clasp,
    /// generic-borromean) or a link file.
    #[arg(long)]
    pub link: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Estimate Milnor's μ from the characteristic 2-form.
    Mu {
        #[command(flatten)]
        link: LinkArgs,
        #[arg(long, default_value_t = 60)]
        grid: usize,
        /// Fourier truncation; defaults to min(grid/2 - 1, 15).
        #[arg(long)]
        nmax: Option<usize>,
        /// fourier, convolution or double.
        #[arg(long, default_value = "fourier")]
        formula: String,
    },
    /// Cross-check degrees, μ and the bicycle ν.
    Verify {
        #[command(flatten)]
        link: LinkArgs,
        #[arg(long, default_value_t = 192)]
        grid: usize,
        #[arg(long)]
        nmax: Option<usize>,
    },
    /// Truncated fundamental solution on T² (or the u = 0 slice on T³)
    /// over [-3π, 3π]², as gnuplot grid data.
    PhiPlot {
        #[arg(long, default_value_t = 2)]
        dim: u8,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
        #[arg(long, default_value_t = 121)]
        points: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// ω_L on the grid as CSV s,t,u,a,b,c.
    FieldDump {
        #[command(flatten)]
        link: LinkArgs,
        #[arg(long, default_value_t = 16)]
        grid: usize,
        /// Only the slab with this u index.
        #[arg(long)]
        slice: Option<usize>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Fourier coefficients of ω_L as CSV.
    CoeffDump {
        #[command(flatten)]
        link: LinkArgs,
        #[arg(long, default_value_t = 32)]
        grid: usize,
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Signed count of ordered letter pairs in a word.
    Mword {
        /// Tokens like "x y^-1 z^2".
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Two letters, e.g. xy.
        #[arg(long)]
        pair: String,
    },
    /// μ from longitude words.
    MuWords {
        #[arg(long, allow_hyphen_values = true)]
        wx: String,
        #[arg(long, allow_hyphen_values = true)]
        wy: String,
        #[arg(long, allow_hyphen_values = true)]
        wz: String,
        #[arg(long, allow_hyphen_values = true)]
        t: i64,
        #[arg(long, allow_hyphen_values = true)]
        pqr: String,
    },
    /// ν of a toral diagram file.
    NuDiagram {
        #[arg(long)]
        file: String,
        /// s,t; chosen automatically if absent.
        #[arg(long, allow_hyphen_values = true)]
        basepoint: Option<String>,
    },
    /// Icycle census and ν of a generic link.
    NuBicycle {
        #[command(flatten)]
        link: LinkArgs,
        /// Write traced icycles as CSV icycle,s,t.
        #[arg(long)]
        dump_icycles: Option<String>,
    },
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code: 0 on success, 2 for invalid input, 3 for numerical failure.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let Some(h) = e.hint() {
                let _ = writeln!(err, "hint: {h}");
            }
            e.exit_code()
        }
    }
}

fn config(grid: usize, nmax: Option<usize>) -> Result<RunConfig> {
    RunConfig::new(grid, nmax.unwrap_or_else(|| default_nmax(grid)))
}

fn out_path(out: &Option<String>) -> Result<Option<&Path>> {
    match out {
        None => Ok(None),
        Some(s) if s.trim().is_empty() => Err(Error::Usage("--out must not be empty".into())),
        Some(s) => Ok(Some(Path::new(s))),
    }
}

/// Runs `f` on the file at `path`, or on `out` if there is none.
fn with_sink(path: Option<&Path>, out: &mut dyn Write, f: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            f(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => f(out),
    }
}

fn print_json(out: &mut dyn Write, v: &impl Serialize) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

fn parse_pair(s: &str) -> Result<[f64; 2]> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let v: Vec<f64> = parts.iter().filter_map(|p| p.parse().ok()).filter(|x: &f64| x.is_finite()).collect();
    if parts.len() != 2 || v.len() != 2 {
        return Err(Error::Usage(format!("expected s,t, got {s:?}")));
    }
    Ok([v[0], v[1]])
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Mu { link, grid, nmax, formula } => {
            let formula: Formula = formula.parse()?;
            let cfg = config(*grid, *nmax)?;
            let l = resolve_link(&link.link)?;
            let rep = run_mu(&l, cfg, formula)?;
            if cli.json {
                print_json(out, &json!({ "link": link.link, "mu": rep }))?;
            } else {
                let d = &rep.degrees;
                writeln!(out, "link      {}", link.link)?;
                writeln!(out, "grid      {} (nmax {})", rep.grid, rep.nmax)?;
                writeln!(out, "formula   {}", formula_name(rep.formula))?;
                writeln!(
                    out,
                    "degrees   p={} q={} r={} (residuals {:.1e} {:.1e} {:.1e})",
                    d.p, d.q, d.r, d.residuals[0], d.residuals[1], d.residuals[2]
                )?;
                writeln!(out, "mu        {:.10}", rep.estimate)?;
                writeln!(out, "nearest   {}", rep.nearest)?;
                writeln!(out, "residual  {:.3e}", rep.residual)?;
            }
            Ok(0)
        }
        Command::Verify { link, grid, nmax } => {
            let cfg = config(*grid, *nmax)?;
            let l = resolve_link(&link.link)?;
            let rep = verify(&l, cfg);
            if cli.json {
                print_json(out, &json!({ "link": link.link, "report": rep, "passed": rep.passed() }))?;
            } else {
                writeln!(out, "link {} at grid {} (nmax {})", link.link, rep.grid, rep.nmax)?;
                for c in &rep.checks {
                    writeln!(out, "{:<4}  {:<16} {}", c.status, c.name, c.detail)?;
                }
                if rep.checks.iter().any(|c| c.status == Status::Skip && c.name == "bicycle-degrees") {
                    writeln!(out, "note: bicycle checks need Z on the binding circle and Morse page angles on X and Y")?;
                }
            }
            Ok(if rep.passed() { 0 } else { 3 })
        }
        Command::PhiPlot { dim, nmax, points, out: path } => {
            let path = out_path(path)?;
            if *dim != 2 && *dim != 3 {
                return Err(Error::Usage(format!("--dim must be 2 or 3, got {dim}")));
            }
            if *nmax == 0 {
                return Err(Error::Usage("--nmax must be at least 1".into()));
            }
            if *points < 2 {
                return Err(Error::Usage("--points must be at least 2".into()));
            }
            let rows = phi_plot(*dim, *nmax, *points);
            with_sink(path, out, |w| {
                writeln!(w, "# x y phi  (dim {dim}, nmax {nmax})")?;
                for (i, (x, y, v)) in rows.iter().enumerate() {
                    writeln!(w, "{x} {y} {v}")?;
                    if (i + 1) % points == 0 {
                        writeln!(w)?;
                    }
                }
                Ok(())
            })?;
            Ok(0)
        }
        Command::FieldDump { link, grid, slice, out: path } => {
            let path = out_path(path)?;
            if *grid < 2 {
                return Err(Error::Usage("--grid must be at least 2".into()));
            }
            if let Some(k) = slice {
                if k >= grid {
                    return Err(Error::Usage(format!("--slice {k} outside 0..{grid}")));
                }
            }
            let l = resolve_link(&link.link)?;
            let field = omega_grid(&l, *grid);
            let [a, b, c] = field.components();
            let n = *grid;
            let rows = (0..n * n * n).filter_map(|idx| {
                let (i, j, k) = (idx / (n * n), (idx / n) % n, idx % n);
                if slice.is_some_and(|s| s != k) {
                    return None;
                }
                Some(vec![a.coord(i), a.coord(j), a.coord(k), a.get(i, j, k), b.get(i, j, k), c.get(i, j, k)])
            });
            with_sink(path, out, |w| write_csv(w, &["s", "t", "u", "a", "b", "c"], rows))?;
            Ok(0)
        }
        Command::CoeffDump { link, grid, nmax, out: path } => {
            let path = out_path(path)?;
            let cfg = config(*grid, *nmax)?;
            let l = resolve_link(&link.link)?;
            let (form, _) = spectral_form(&l, cfg)?;
            let rows = form.coefficients().iter().enumerate().map(|(idx, c)| {
                let n = form.mode(idx);
                vec![n[0] as f64, n[1] as f64, n[2] as f64, c[0].re, c[0].im, c[1].re, c[1].im, c[2].re, c[2].im]
            });
            with_sink(path, out, |w| write_csv(w, &["n1", "n2", "n3", "re_a", "im_a", "re_b", "im_b", "re_c", "im_c"], rows))?;
            Ok(0)
        }
        Command::Mword { word, pair } => {
            let w: Word = word.parse()?;
            let letters: Vec<char> = pair.chars().collect();
            if letters.len() != 2 {
                return Err(Error::Usage(format!("--pair takes two letters, got {pair:?}")));
            }
            let (a, b) = (Symbol::from_char(letters[0])?, Symbol::from_char(letters[1])?);
            let m = m_count(&w, a, b)?;
            if cli.json {
                print_json(out, &json!({ "word": w.to_string(), "pair": pair, "count": m }))?;
            } else {
                writeln!(out, "m_{pair}({w}) = {m}")?;
            }
            Ok(0)
        }
        Command::MuWords { wx, wy, wz, t, pqr } => {
            let (p, q, r) = parse_triple(pqr)?;
            let words: [Word; 3] = [wx.parse()?, wy.parse()?, wz.parse()?];
            let mu = mu_geometric(&words[0], &words[1], &words[2], *t, p, q, r);
            if cli.json {
                print_json(out, &json!({ "value": mu.value(), "modulus": mu.modulus() }))?;
            } else {
                writeln!(out, "mu = {mu}")?;
            }
            Ok(0)
        }
        Command::NuDiagram { file, basepoint } => {
            let bp = basepoint.as_deref().map(parse_pair).transpose()?;
            let d = load_diagram(Path::new(file))?;
            let rep = d.nu(bp)?;
            if cli.json {
                print_json(
                    out,
                    &json!({
                        "p": rep.p, "q": rep.q, "r": rep.r,
                        "total_framing": rep.total_framing,
                        "basepoint": rep.basepoint,
                        "depths": rep.depths,
                        "nu": rep.value.value(),
                        "modulus": rep.value.modulus(),
                    }),
                )?;
            } else {
                writeln!(out, "(p,q,r)   ({},{},{})", rep.p, rep.q, rep.r)?;
                writeln!(out, "framing   {}", rep.total_framing)?;
                writeln!(out, "basepoint ({}, {})", rep.basepoint[0], rep.basepoint[1])?;
                writeln!(out, "depths    {:?}", rep.depths)?;
                writeln!(out, "nu        {}", rep.value)?;
            }
            Ok(0)
        }
        Command::NuBicycle { link, dump_icycles } => {
            let dump = out_path(dump_icycles)?;
            let l = resolve_link(&link.link)?;
            let census = bicycle_census(&l)?;
            let rep = census.diagram.nu(None)?;
            if let Some(p) = dump {
                let rows = census
                    .curves
                    .iter()
                    .enumerate()
                    .flat_map(|(i, c)| c.vertices.iter().map(move |v| vec![i as f64, v[0], v[1]]));
                with_sink(Some(p), out, |w| write_csv(w, &["icycle", "s", "t"], rows))?;
            }
            let rows: Vec<_> = census
                .degrees
                .iter()
                .zip(&rep.depths)
                .map(|(b, d)| json!({ "l": b.longitudinal, "m": b.meridional, "n": b.framing(), "r": b.vertical_winding(), "d": d }))
                .collect();
            if cli.json {
                print_json(
                    out,
                    &json!({
                        "icycles": rows,
                        "p": rep.p, "q": rep.q, "r": rep.r,
                        "nu": rep.value.value(),
                        "modulus": rep.value.modulus(),
                    }),
                )?;
            } else {
                writeln!(out, "icycle      l      m      n      r      d")?;
                for (i, (b, d)) in census.degrees.iter().zip(&rep.depths).enumerate() {
                    writeln!(
                        out,
                        "{i:>6} {:>6} {:>6} {:>6} {:>6} {:>6}",
                        b.longitudinal,
                        b.meridional,
                        b.framing(),
                        b.vertical_winding(),
                        d
                    )?;
                }
                writeln!(out, "(p,q,r)  ({},{},{})", rep.p, rep.q, rep.r)?;
                writeln!(out, "nu       {}", rep.value)?;
            }
            Ok(0)
        }
    }
}

fn formula_name(f: Formula) -> &'static str {
    match f {
        Formula::Fourier => "fourier",
        Formula::Convolution => "convolution",
        Formula::Double => "double",
    }
}

/// `(x, y, φ)` rows, x-major, on `points²` samples of `[−3π, 3π]²`.
pub fn phi_plot(dim: u8, nmax: usize, points: usize) -> Vec<(f64, f64, f64)> {
    let step = 6.0 * std::f64::consts::PI / (points - 1) as f64;
    let axis: Vec<f64> = (0..points)
        .map(|i| {
            // mirror the upper half so the grid is exactly symmetric
            let j = i.min(points - 1 - i);
            let v = -3.0 * std::f64::consts::PI + step * j as f64;
            if 2 * i + 1 == points {
                0.0
            } else if i == j {
                v
            } else {
                -v
            }
        })
        .collect();
    let mut rows = Vec::with_capacity(points * points);
    for &x in &axis {
        for &y in &axis {
            let v = if dim == 2 { phi2d_eval(x, y, nmax) } else { phi_eval([x, y, 0.0], nmax) };
            rows.push((x, y, v));
        }
    }
    rows
}

