//! μ estimation and the cross-pipeline consistency report.

use serde::Serialize;
use triplelink_core::bicycles::bicycle_census;
use triplelink_core::linkmodel::{auto_pole, gauss_linking, Link3};
use triplelink_core::spectral::{analyze, degrees, mu_formula2_direct, mu_sum1, mu_sum3, Degrees, FourierForm};
use triplelink_core::Error as CoreError;

use crate::grid::omega_grid;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Formula {
    /// Fourier sum over `(aₙ × bₙ)·n/|n|²`.
    Fourier,
    /// `½∫ δ(φ∗ω) ∧ ω` through the Green operator.
    Convolution,
    /// Double sum over grid pairs. Small grids only.
    Double,
}

impl std::str::FromStr for Formula {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fourier" => Ok(Formula::Fourier),
            "convolution" => Ok(Formula::Convolution),
            "double" => Ok(Formula::Double),
            _ => Err(Error::Usage(format!("unknown formula {s:?}; use fourier, convolution or double"))),
        }
    }
}

/// Grid size and truncation, checked against each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub grid: usize,
    pub nmax: usize,
}

impl RunConfig {
    pub fn new(grid: usize, nmax: usize) -> Result<Self> {
        if grid < 8 {
            return Err(Error::Usage(format!("grid must be at least 8, got {grid}")));
        }
        if nmax == 0 || 2 * nmax + 2 > grid {
            return Err(CoreError::AliasBound { nmax, grid }.into());
        }
        Ok(RunConfig { grid, nmax })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeReport {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub raw: [f64; 3],
    pub residuals: [f64; 3],
}

impl From<Degrees> for DegreeReport {
    fn from(d: Degrees) -> Self {
        DegreeReport { p: d.p, q: d.q, r: d.r, raw: d.raw, residuals: d.residuals }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MuReport {
    pub formula: Formula,
    pub grid: usize,
    pub nmax: usize,
    pub degrees: DegreeReport,
    pub estimate: f64,
    pub nearest: i64,
    pub residual: f64,
}

/// Samples `ω_L`, returns its truncated transform and the degrees.
pub fn spectral_form(link: &Link3, cfg: RunConfig) -> Result<(FourierForm, Degrees)> {
    let field = omega_grid(link, cfg.grid);
    let form = analyze(&field, cfg.nmax)?;
    let d = degrees(&form)?;
    Ok((form, d))
}

/// μ of `link`; fails with `NonzeroLinking` unless `p = q = r = 0`.
pub fn run_mu(link: &Link3, cfg: RunConfig, formula: Formula) -> Result<MuReport> {
    let field = omega_grid(link, cfg.grid);
    let form = analyze(&field, cfg.nmax)?;
    let d = degrees(&form)?;
    if !d.all_zero() {
        return Err(CoreError::NonzeroLinking { p: d.p, q: d.q, r: d.r }.into());
    }
    let estimate = match formula {
        Formula::Fourier => mu_sum3(&form)?,
        Formula::Convolution => mu_sum1(&form)?,
        Formula::Double => mu_formula2_direct(field.components())?,
    };
    if !estimate.is_finite() {
        return Err(CoreError::NonIntegerResult { value: estimate }.into());
    }
    let nearest = estimate.round() as i64;
    Ok(MuReport {
        formula,
        grid: cfg.grid,
        nmax: cfg.nmax,
        degrees: d.into(),
        estimate,
        nearest,
        residual: (estimate - nearest as f64).abs(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub grid: usize,
    pub nmax: usize,
    pub checks: Vec<Check>,
    /// ν from the bicycle diagram as `(value, modulus)`.
    pub nu: Option<(i64, u64)>,
    pub mu: Option<f64>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }
}

/// Gauss integral sample count used by [`verify`].
pub const GAUSS_SAMPLES: usize = 512;
/// Largest `|μ − round μ|` the μ check accepts.
pub const MU_TOLERANCE: f64 = 0.1;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Runs every check that applies to `link`. Individual failures become
/// FAIL rows; the report always completes.
pub fn verify(link: &Link3, cfg: RunConfig) -> VerifyReport {
    let mut checks = Vec::new();
    let mut push = |name, status, detail: String| checks.push(Check { name, status, detail });

    let spectral = spectral_form(link, cfg);
    let comps = link.components();
    let pole = auto_pole(&[&comps[0], &comps[1], &comps[2]]);
    let gauss: Result<[i64; 3]> = (|| {
        Ok([
            gauss_linking(&comps[1], &comps[2], pole, GAUSS_SAMPLES)?.value,
            gauss_linking(&comps[2], &comps[0], pole, GAUSS_SAMPLES)?.value,
            gauss_linking(&comps[0], &comps[1], pole, GAUSS_SAMPLES)?.value,
        ])
    })();

    let degs = match &spectral {
        Ok((_, d)) => Some(d.as_array()),
        Err(_) => None,
    };
    match (&spectral, &gauss) {
        (Ok((_, d)), Ok(g)) => {
            let ok = d.as_array() == *g;
            push(
                "degrees",
                if ok { Status::Pass } else { Status::Fail },
                format!("spectral (p,q,r) = ({},{},{}), Gauss ({},{},{})", d.p, d.q, d.r, g[0], g[1], g[2]),
            );
        }
        (Err(e), _) | (_, Err(e)) => push("degrees", Status::Fail, e.to_string()),
    }

    let mut mu = None;
    match &spectral {
        Ok((form, d)) if d.all_zero() => match mu_sum3(form) {
            Ok(v) => {
                mu = Some(v);
                let res = (v - v.round()).abs();
                push(
                    "mu",
                    if res <= MU_TOLERANCE { Status::Pass } else { Status::Fail },
                    format!("mu = {v:.6}, nearest {}, residual {res:.2e}", v.round() as i64),
                );
            }
            Err(e) => push("mu", Status::Fail, e.to_string()),
        },
        // μ is only an integer for pairwise unlinked components; no row otherwise.
        _ => {}
    }

    let mut nu = None;
    match bicycle_census(link) {
        Err(CoreError::NotGeneric(msg)) => {
            let detail = format!("link is not generic for the open book ({msg})");
            push("bicycle-degrees", Status::Skip, detail.clone());
            push("nu-parity", Status::Skip, detail.clone());
            push("nu-vs-mu", Status::Skip, detail);
        }
        Err(e) => {
            push("bicycle-degrees", Status::Fail, e.to_string());
            push("nu-parity", Status::Skip, "no diagram".into());
            push("nu-vs-mu", Status::Skip, "no diagram".into());
        }
        Ok(census) => {
            let (p, q, r) = census.diagram.winding_numbers();
            match degs {
                Some(d) => push(
                    "bicycle-degrees",
                    if d == [p, q, r] { Status::Pass } else { Status::Fail },
                    format!("{} icycles, winding numbers ({p},{q},{r})", census.curves.len()),
                ),
                None => push("bicycle-degrees", Status::Skip, format!("winding numbers ({p},{q},{r}), no spectral degrees")),
            }
            match census.diagram.nu(None) {
                Err(e) => {
                    push("nu-parity", Status::Fail, e.to_string());
                    push("nu-vs-mu", Status::Skip, "no nu".into());
                }
                Ok(rep) => {
                    let v = rep.value;
                    nu = Some((v.value(), v.modulus()));
                    let even = v.value() % 2 == 0;
                    push("nu-parity", if even { Status::Pass } else { Status::Fail }, format!("nu = {v}"));
                    let g = gcd(gcd(p, q), r);
                    if g == 0 {
                        match mu {
                            Some(m) => {
                                let want = 2 * m.round() as i64;
                                push(
                                    "nu-vs-mu",
                                    if v.contains(want) { Status::Pass } else { Status::Fail },
                                    format!("nu = {v}, 2 round(mu) = {want}"),
                                );
                            }
                            None => push("nu-vs-mu", Status::Skip, "no spectral mu".into()),
                        }
                    } else if g == 1 {
                        push("nu-vs-mu", if v.is_zero() { Status::Pass } else { Status::Fail }, format!("gcd 1, nu = {v}"));
                    } else {
                        push("nu-vs-mu", Status::Skip, format!("gcd {g}: mu is not computed for linked components"));
                    }
                }
            }
        }
    }

    VerifyReport { grid: cfg.grid, nmax: cfg.nmax, checks, nu, mu }
}

#[cfg(test)]
mod tests {
    use super::*;
    use triplelink_core::linkmodel::{builtin_borromean, builtin_unlink};

    #[test]
    fn config_bounds() {
        assert!(RunConfig::new(60, 15).is_ok());
        assert!(RunConfig::new(32, 15).is_ok());
        assert!(matches!(RunConfig::new(32, 16), Err(Error::Core(CoreError::AliasBound { .. }))));
        assert!(matches!(RunConfig::new(6, 2), Err(Error::Usage(_))));
        assert!(RunConfig::new(16, 0).is_err());
    }

    #[test]
    fn formulas_parse() {
        assert_eq!("double".parse::<Formula>().unwrap(), Formula::Double);
        assert!("triple".parse::<Formula>().is_err());
    }

    #[test]
    fn three_routes_on_borromean() {
        let l = builtin_borromean();
        let f = run_mu(&l, RunConfig::new(16, 7).unwrap(), Formula::Fourier).unwrap();
        let c = run_mu(&l, RunConfig::new(16, 7).unwrap(), Formula::Convolution).unwrap();
        let d = run_mu(&l, RunConfig::new(16, 7).unwrap(), Formula::Double).unwrap();
        assert!((f.estimate - c.estimate).abs() < 1e-10);
        assert_eq!((f.nearest, d.nearest), (-1, -1));
        assert!((d.estimate - f.estimate).abs() < 0.2, "{} {}", d.estimate, f.estimate);
    }

    #[test]
    fn unlink_report() {
        let rep = verify(&builtin_unlink(), RunConfig::new(16, 7).unwrap());
        assert!(rep.passed());
        let names: Vec<_> = rep.checks.iter().map(|c| (c.name, c.status)).collect();
        assert_eq!(names[0], ("degrees", Status::Pass));
        assert_eq!(names[1], ("mu", Status::Pass));
        assert!(names[2..].iter().all(|(_, s)| *s == Status::Skip));
        assert_eq!(rep.mu.map(f64::round), Some(0.0));
    }
}
