//! Structural relations between the curvatures of canal hypersurfaces.
//!
//! The checks here evaluate the curvature identity `3Hr - Kr^3 = 2 e3 e4 lambda^j`,
//! decide flatness and minimality, integrate the radius equation of minimal
//! canal hypersurfaces and test the pairwise Weingarten conditions.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canal::{CanalConfig, CanalError, CanalSurface, SurfacePatch};
use crate::curvature::{self, is_regular_node, CurvatureError, Route};
use crate::curve::{CurveError, CurveSpec, TAU_K};
use crate::minkowski::inner;
use crate::radius::{MinimalProfile, RadiusProfile};

/// Tolerance of the curvature identity on the closed-form route.
pub const KH_TOL_CLOSED: f64 = 1e-9;
/// Tolerance of the curvature identity on the numeric route.
pub const KH_TOL_NUMERIC: f64 = 1e-4;
/// Relative tolerance between the closed-form and numeric routes.
pub const ROUTE_TOL: f64 = 1e-4;
/// Tolerance of a Weingarten residual.
pub const WEINGARTEN_TOL: f64 = 1e-8;
/// Step for differencing the closed-form curvatures.
pub const WEINGARTEN_STEP: f64 = 1e-3;
/// Tolerance of the minimal-radius equation `-2(r'^2 - e1 lambda) - 3 r r''`.
pub const MINIMAL_TOL: f64 = 1e-6;
/// Samples used to decide that a function vanishes identically.
pub const IDENTITY_SAMPLES: usize = 200;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("radius equation leaves its domain at s = {s} (r = {r})")]
    DomainExit { s: f64, r: f64 },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Canal(#[from] CanalError),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// A pair of parameters of a Weingarten condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Pair {
    St,
    Sw,
    Tw,
}

impl Pair {
    fn indices(self) -> (usize, usize) {
        match self {
            Pair::St => (0, 1),
            Pair::Sw => (0, 2),
            Pair::Tw => (1, 2),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Pair::St => "st",
            Pair::Sw => "sw",
            Pair::Tw => "tw",
        }
    }
}

/// Which relation a report covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    KhRelation,
    Flat,
    Minimal,
    Weingarten(Pair),
    /// Agreement of the closed-form and numeric routes, with `sign(det g) = -lambda`.
    RouteAgreement,
}

/// Outcome of checking a relation over the nodes of a patch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: Theorem,
    pub max_residual: f64,
    pub tolerance: f64,
    /// Nodes where the residual was evaluated.
    pub nodes: usize,
    /// Degenerate or near-focal nodes left out.
    pub skipped: usize,
    pub pass: bool,
}

impl TheoremReport {
    fn new(theorem: Theorem, residuals: &[Option<f64>], tolerance: f64) -> Self {
        let evaluated: Vec<f64> = residuals.iter().flatten().copied().collect();
        let max_residual = evaluated.iter().fold(0.0_f64, |a, r| if r.is_nan() { f64::NAN } else { a.max(*r) });
        TheoremReport {
            theorem,
            max_residual,
            tolerance,
            nodes: evaluated.len(),
            skipped: residuals.len() - evaluated.len(),
            pass: max_residual <= tolerance,
        }
    }
}

/// `|3Hr - Kr^3 - 2c|` for a curvature report at radius `r`.
pub fn kh_residual(k: f64, h: f64, r: f64, normal_sign: f64) -> f64 {
    (3.0 * h * r - k * r.powi(3) - 2.0 * normal_sign).abs()
}

/// Checks the curvature identity at every regular node of the patch.
pub fn check_kh_relation(patch: &SurfacePatch, route: Route) -> Result<TheoremReport, AnalysisError> {
    let surface = patch.surface()?;
    let c = surface.config().normal_sign();
    let nodes: Vec<_> = patch.nodes().collect();
    let residuals = nodes
        .par_iter()
        .map(|(idx, (s, t, w))| {
            if patch.degenerate[*idx] || !is_regular_node(&surface, *s, *t, *w)? {
                return Ok(None);
            }
            let rep = curvature::curvatures(&surface, *s, *t, *w, route)?;
            let r = surface.local(*s)?.radius.r;
            Ok(Some(kh_residual(rep.gauss, rep.mean, r, c)))
        })
        .collect::<Result<Vec<_>, AnalysisError>>()?;
    let tol = match route {
        Route::ClosedForm => KH_TOL_CLOSED,
        Route::Numeric => KH_TOL_NUMERIC,
    };
    Ok(TheoremReport::new(Theorem::KhRelation, &residuals, tol))
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + b.abs())
}

/// Largest relative deviation between the two routes at one node.
///
/// Compares `K`, `H` and the principal curvatures, and the `g`, `h` and `S`
/// tables where the closed form provides them. A wrong sign of `det g`
/// yields an infinite deviation.
pub fn route_deviation(surface: &CanalSurface, s: f64, t: f64, w: f64) -> Result<f64, AnalysisError> {
    let cf = curvature::closed_form(surface, s, t, w)?;
    let nm = curvature::numeric(surface, s, t, w)?;
    let mut worst = rel(nm.gauss, cf.gauss).max(rel(nm.mean, cf.mean));
    for k in 0..3 {
        worst = worst.max(rel(nm.principal[k], cf.principal[k]));
    }
    let lambda = surface.config().lambda as f64;
    let g_num = nm.g.expect("numeric route fills g");
    if curvature::det3(&g_num).signum() != -lambda {
        return Ok(f64::INFINITY);
    }
    let pairs = [(cf.g, nm.g), (cf.h, nm.h), (cf.shape, nm.shape)];
    for (a, b) in pairs {
        if let (Some(a), Some(b)) = (a, b) {
            let scale = a.iter().flatten().fold(0.0_f64, |m, x| m.max(x.abs()));
            for i in 0..3 {
                for j in 0..3 {
                    worst = worst.max((b[i][j] - a[i][j]).abs() / (1.0 + scale));
                }
            }
        }
    }
    Ok(worst)
}

/// Checks route agreement at every regular node of the patch.
pub fn check_route_agreement(patch: &SurfacePatch) -> Result<TheoremReport, AnalysisError> {
    let surface = patch.surface()?;
    let nodes: Vec<_> = patch.nodes().collect();
    let residuals = nodes
        .par_iter()
        .map(|(idx, (s, t, w))| {
            if patch.degenerate[*idx] || !is_regular_node(&surface, *s, *t, *w)? {
                return Ok(None);
            }
            route_deviation(&surface, *s, *t, *w).map(Some)
        })
        .collect::<Result<Vec<_>, AnalysisError>>()?;
    Ok(TheoremReport::new(Theorem::RouteAgreement, &residuals, ROUTE_TOL))
}

/// Gradients of the closed-form `K` and `H` in `(s, t, w)`.
pub fn curvature_gradients(surface: &CanalSurface, s: f64, t: f64, w: f64) -> Result<([f64; 3], [f64; 3]), AnalysisError> {
    let h = WEINGARTEN_STEP;
    let mut dk = [0.0; 3];
    let mut dh = [0.0; 3];
    for i in 0..3 {
        let mut acc_k = 0.0;
        let mut acc_h = 0.0;
        for (m, c) in [(-2.0, 1.0), (-1.0, -8.0), (1.0, 8.0), (2.0, -1.0)] {
            let mut x = [s, t, w];
            x[i] += m * h;
            let rep = curvature::closed_form_unchecked(surface, x[0], x[1], x[2])?;
            acc_k += c * rep.gauss;
            acc_h += c * rep.mean;
        }
        dk[i] = acc_k / (12.0 * h);
        dh[i] = acc_h / (12.0 * h);
    }
    Ok((dk, dh))
}

/// Normalized Weingarten residual `|H_u K_v - H_v K_u| / (|grad H| |grad K|)` in the `(u, v)` plane.
pub fn weingarten_residual(dk: [f64; 3], dh: [f64; 3], pair: Pair) -> f64 {
    let (u, v) = pair.indices();
    let jac = dh[u] * dk[v] - dh[v] * dk[u];
    let norm = dh[u].hypot(dh[v]) * dk[u].hypot(dk[v]);
    jac.abs() / norm.max(1e-12)
}

/// Checks the Weingarten condition for `pair` at every regular node of the patch.
pub fn weingarten_check(patch: &SurfacePatch, pair: Pair) -> Result<TheoremReport, AnalysisError> {
    let surface = patch.surface()?;
    let nodes: Vec<_> = patch.nodes().collect();
    let residuals = nodes
        .par_iter()
        .map(|(idx, (s, t, w))| {
            if patch.degenerate[*idx] || !is_regular_node(&surface, *s, *t, *w)? {
                return Ok(None);
            }
            match curvature_gradients(&surface, *s, *t, *w) {
                Ok((dk, dh)) => Ok(Some(weingarten_residual(dk, dh, pair))),
                Err(AnalysisError::Curvature(CurvatureError::Degenerate { .. } | CurvatureError::PoleAtNode { .. })) => {
                    Ok(None)
                }
                Err(e) => Err(e),
            }
        })
        .collect::<Result<Vec<_>, AnalysisError>>()?;
    Ok(TheoremReport::new(Theorem::Weingarten(pair), &residuals, WEINGARTEN_TOL))
}

/// Verdict of a flatness or minimality classification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub theorem: Theorem,
    /// Verdict from the curve and radius conditions.
    pub holds: bool,
    /// Largest `|b''|` over the samples.
    pub max_bending: f64,
    /// Largest residual of the radius condition.
    pub radius_residual: f64,
    /// Largest `|K|` or `|H|` sampled on the hypersurface.
    pub sampled: f64,
    /// Sampling threshold matching the verdict.
    pub sampled_tolerance: f64,
    /// Whether the sampled curvature agrees with the verdict.
    pub consistent: bool,
}

fn samples(domain: (f64, f64), n: usize) -> impl Iterator<Item = f64> {
    let (a, b) = domain;
    (0..n).map(move |i| a + (b - a) * i as f64 / (n - 1) as f64)
}

fn tangent_sign(curve: &CurveSpec, s: f64) -> Result<f64, AnalysisError> {
    let d = curve.derivatives(s, 1)?[0];
    Ok(if inner(d, d) < 0.0 { -1.0 } else { 1.0 })
}

/// Largest `|K|` or `|H|` of the closed form over an interior grid.
fn sample_curvature(surface: &CanalSurface, mean: bool) -> Result<f64, AnalysisError> {
    let (a, b) = surface.curve().domain();
    let pad = 0.05 * (b - a);
    let mut worst: f64 = 0.0;
    for s in samples((a + pad, b - pad), 5) {
        for t in samples((-1.0, 1.0), 5) {
            for w in samples((-1.0, 1.0), 5) {
                match curvature::closed_form(surface, s, t, w) {
                    Ok(rep) => worst = worst.max(if mean { rep.mean.abs() } else { rep.gauss.abs() }),
                    Err(CurvatureError::Degenerate { .. } | CurvatureError::PoleAtNode { .. }) => {}
                    Err(e) => return Err(e.into()),
                }
            }
        }
    }
    Ok(worst)
}

/// Rejects radii touching the boundary `r'^2 = lambda e1` of admissibility.
fn check_boundary(curve: &CurveSpec, config: &CanalConfig) -> Result<(), AnalysisError> {
    let lambda = config.lambda as f64;
    for s in samples(curve.domain(), IDENTITY_SAMPLES) {
        let rp = config.radius.eval(s).map_err(CanalError::from)?.rp;
        let q = rp * rp - lambda * tangent_sign(curve, s)?;
        if q.abs() <= TAU_K {
            return Err(CanalError::Inadmissible(format!("r'^2 = lambda e1 at s = {s}; the radius sits on the admissibility boundary"))
                .into());
        }
    }
    Ok(())
}

/// Flat iff the center curve is a line and the radius is linear.
pub fn classify_flat(curve: &CurveSpec, config: &CanalConfig) -> Result<Classification, AnalysisError> {
    check_boundary(curve, config)?;
    let max_bending = curve.max_bending(IDENTITY_SAMPLES)?;
    let mut rpp: f64 = 0.0;
    for s in samples(curve.domain(), IDENTITY_SAMPLES) {
        rpp = rpp.max(config.radius.eval(s).map_err(CanalError::from)?.rpp.abs());
    }
    let holds = max_bending <= TAU_K && rpp <= TAU_K;
    let surface = CanalSurface::new(curve.clone(), config.clone())?;
    let sampled = sample_curvature(&surface, false)?;
    let tol = 1e-9;
    Ok(Classification {
        theorem: Theorem::Flat,
        holds,
        max_bending,
        radius_residual: rpp,
        sampled,
        sampled_tolerance: tol,
        consistent: holds == (sampled <= tol),
    })
}

/// Minimal iff the center curve is a line and `-2(r'^2 - e1 lambda) - 3 r r'' = 0`.
pub fn classify_minimal(curve: &CurveSpec, config: &CanalConfig) -> Result<Classification, AnalysisError> {
    check_boundary(curve, config)?;
    let max_bending = curve.max_bending(IDENTITY_SAMPLES)?;
    let lambda = config.lambda as f64;
    let mut residual: f64 = 0.0;
    for s in samples(curve.domain(), IDENTITY_SAMPLES) {
        let v = config.radius.eval(s).map_err(CanalError::from)?;
        let e1 = tangent_sign(curve, s)?;
        residual = residual.max((-2.0 * (v.rp * v.rp - e1 * lambda) - 3.0 * v.r * v.rpp).abs());
    }
    let holds = max_bending <= TAU_K && residual <= MINIMAL_TOL;
    let surface = CanalSurface::new(curve.clone(), config.clone())?;
    let sampled = sample_curvature(&surface, true)?;
    let tol = 1e-5;
    Ok(Classification {
        theorem: Theorem::Minimal,
        holds,
        max_bending,
        radius_residual: residual,
        sampled,
        sampled_tolerance: tol,
        consistent: holds == (sampled <= tol),
    })
}

/// Report form of a classification, passing when the verdict holds.
pub fn classification_report(c: &Classification) -> TheoremReport {
    TheoremReport {
        theorem: c.theorem,
        max_residual: c.sampled,
        tolerance: c.sampled_tolerance,
        nodes: 1,
        skipped: 0,
        pass: c.holds && c.consistent,
    }
}

const ODE_TOL: f64 = 1e-10;
/// Radicand below which the solution is taken to have reached a turning point.
const TURNING_TOL: f64 = 1e-10;

/// Integrates `r' = sign sqrt(e1 lambda + |c1/r|^(4/3))` from `r(s0) = r0` over `range`.
///
/// The result is tabulated at the accepted steps of an adaptive Dormand-Prince
/// pair and interpolated by cubic Hermite splines.
pub fn solve_minimal_radius(
    eps1_lambda: f64,
    c1: f64,
    r0: f64,
    range: (f64, f64),
    sign: f64,
) -> Result<RadiusProfile, AnalysisError> {
    if eps1_lambda.abs() != 1.0 || sign.abs() != 1.0 {
        return Err(AnalysisError::Invalid("e1*lambda and sign must be +1 or -1".into()));
    }
    if c1 == 0.0 || !c1.is_finite() {
        return Err(AnalysisError::Invalid("c1 must be finite and non-zero".into()));
    }
    if !(r0 > 0.0 && r0.is_finite()) {
        return Err(AnalysisError::Invalid(format!("initial radius must be positive, got {r0}")));
    }
    let (s0, s1) = range;
    if !(s1 > s0) {
        return Err(AnalysisError::Invalid(format!("empty range [{s0}, {s1}]")));
    }
    let mut profile = MinimalProfile { eps1_lambda, c1, sign, s: vec![s0], r: vec![r0], rp: vec![] };
    let f = |r: f64| -> Option<f64> {
        let rad = eps1_lambda + (c1 / r).abs().powf(4.0 / 3.0);
        (r > 0.0 && rad >= 0.0).then(|| sign * rad.sqrt())
    };
    let Some(k0) = f(r0) else {
        return Err(AnalysisError::DomainExit { s: s0, r: r0 });
    };
    profile.rp.push(k0);
    let hmax = ((s1 - s0) / 512.0).min(5e-3);
    let mut h = hmax;
    let (mut s, mut r, mut k1) = (s0, r0, k0);
    while s < s1 {
        if s + h > s1 {
            h = s1 - s;
        }
        match dopri_step(&f, r, k1, h) {
            Some((y5, k7, err)) => {
                let err_norm = err.abs() / (ODE_TOL + ODE_TOL * y5.abs());
                if err_norm <= 1.0 {
                    s = if s1 - (s + h) < 1e-14 * (1.0 + s1.abs()) { s1 } else { s + h };
                    r = y5;
                    k1 = k7;
                    profile.s.push(s);
                    profile.r.push(r);
                    profile.rp.push(k7);
                    if eps1_lambda + (c1 / r).abs().powf(4.0 / 3.0) < TURNING_TOL {
                        return Err(AnalysisError::DomainExit { s, r });
                    }
                }
                let factor = if err_norm == 0.0 { 5.0 } else { (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0) };
                h = (h * factor).min(hmax);
            }
            None => h *= 0.25,
        }
        if h < 1e-12 * (1.0 + s.abs()) {
            return Err(AnalysisError::DomainExit { s, r });
        }
    }
    Ok(RadiusProfile::Tabulated(profile))
}

/// One Dormand-Prince step returning the fifth-order value, its slope and the error estimate.
fn dopri_step(f: &impl Fn(f64) -> Option<f64>, y: f64, k1: f64, h: f64) -> Option<(f64, f64, f64)> {
    let k2 = f(y + h * (k1 / 5.0))?;
    let k3 = f(y + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2))?;
    let k4 = f(y + h * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3))?;
    let k5 = f(y + h * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2 + 64448.0 / 6561.0 * k3 - 212.0 / 729.0 * k4))?;
    let k6 = f(y + h
        * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 + 46732.0 / 5247.0 * k3 + 49.0 / 176.0 * k4
            - 5103.0 / 18656.0 * k5))?;
    let y5 = y + h
        * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 + 125.0 / 192.0 * k4 - 2187.0 / 6784.0 * k5 + 11.0 / 84.0 * k6);
    let k7 = f(y5)?;
    let err = h
        * ((35.0 / 384.0 - 5179.0 / 57600.0) * k1
            + (500.0 / 1113.0 - 7571.0 / 16695.0) * k3
            + (125.0 / 192.0 - 393.0 / 640.0) * k4
            + (-2187.0 / 6784.0 + 92097.0 / 339200.0) * k5
            + (11.0 / 84.0 - 187.0 / 2100.0) * k6
            - 1.0 / 40.0 * k7);
    Some((y5, k7, err))
}

/// Residuals of a tabulated minimal profile over `n` samples.
///
/// Returns the first-order equation residual `|r'_table - sign sqrt(...)|`, with
/// `r'_table` the derivative of the interpolant, and the residual of
/// `-2(r'^2 - e1 lambda) - 3 r r''`.
pub fn minimal_profile_residuals(profile: &MinimalProfile, n: usize) -> Result<(f64, f64), AnalysisError> {
    let mut ode: f64 = 0.0;
    let mut second: f64 = 0.0;
    for s in samples(profile.range(), n.max(2)) {
        let v = profile.eval(s).map_err(CanalError::from)?;
        let d = profile.interpolate_derivative(s).map_err(CanalError::from)?;
        ode = ode.max((d - profile.slope(v.r)).abs());
        second = second.max((-2.0 * (v.rp * v.rp - profile.eps1_lambda) - 3.0 * v.r * v.rpp).abs());
    }
    Ok((ode, second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canal::{Axis, GridSpec, Variant};
    use crate::curve::DerivativeMode;

    fn beta1() -> CurveSpec {
        CurveSpec::parse(["2*sinh(s)", "2*cosh(s)", "sqrt(3)*cos(s)", "sqrt(3)*sin(s)"], (0.25, 3.0), DerivativeMode::Symbolic)
            .unwrap()
    }

    fn spacelike_line() -> CurveSpec {
        CurveSpec::parse(["0", "s", "0", "0"], (0.5, 2.5), DerivativeMode::Symbolic).unwrap()
    }

    fn grid() -> GridSpec {
        GridSpec { s: Axis::closed(0.5, 2.5, 5), t: Axis::closed(-1.0, 1.0, 5), w: Axis::closed(-1.2, 1.2, 5) }
    }

    fn patch(curve: CurveSpec, j: usize, lambda: i32, radius: &str) -> SurfacePatch {
        let cfg = CanalConfig::new(j, lambda, RadiusProfile::parse(radius).unwrap());
        crate::canal::sample_grid(&curve, &cfg, &grid()).unwrap()
    }

    #[test]
    fn kh_identity_at_the_example_node() {
        assert!(kh_residual(0.0878687, 0.4504916, 2.0, 1.0) < 1e-5);
    }

    #[test]
    fn kh_identity_on_beta1_patch() {
        let p = patch(beta1(), 1, 1, "2*s");
        let rep = check_kh_relation(&p, Route::ClosedForm).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(rep.nodes > 50);
        let rep = check_kh_relation(&p, Route::Numeric).unwrap();
        assert!(rep.pass, "{rep:?}");
        let rep = check_route_agreement(&p).unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn weingarten_pairs_on_beta1() {
        let p = patch(beta1(), 1, 1, "2*s");
        assert!(weingarten_check(&p, Pair::Tw).unwrap().pass);
        let sw = weingarten_check(&p, Pair::Sw).unwrap();
        assert!(sw.max_residual > 1e-3, "{sw:?}");
        let tube = patch(beta1(), 1, 1, "0.3");
        assert!(weingarten_check(&tube, Pair::Sw).unwrap().pass);
    }

    #[test]
    fn flat_classification() {
        let cfg = CanalConfig::new(1, -1, RadiusProfile::parse("0.5*s + 1").unwrap());
        let line = spacelike_line();
        let c = classify_flat(&line, &CanalConfig { j: frame_type(&line), ..cfg.clone() }).unwrap();
        assert!(c.holds && c.consistent && c.sampled <= 1e-9, "{c:?}");
        let c = classify_flat(&beta1(), &CanalConfig::new(1, 1, RadiusProfile::parse("2*s").unwrap())).unwrap();
        assert!(!c.holds && c.consistent);
        let boundary = CanalConfig::new(frame_type(&line), 1, RadiusProfile::parse("s").unwrap());
        assert!(matches!(classify_flat(&line, &boundary), Err(AnalysisError::Canal(CanalError::Inadmissible(_)))));
    }

    fn frame_type(line: &CurveSpec) -> usize {
        line.frame_for_line().unwrap().j
    }

    #[test]
    fn minimal_profile_is_minimal() {
        let profile = solve_minimal_radius(1.0, 1.0, 1.0, (0.5, 2.5), 1.0).unwrap();
        let RadiusProfile::Tabulated(t) = &profile else { panic!() };
        assert!((t.rp[0] - 2f64.sqrt()).abs() < 1e-15);
        assert!(t.r.windows(2).all(|w| w[1] > w[0]));
        let (ode, second) = minimal_profile_residuals(t, 400).unwrap();
        assert!(ode <= 1e-8 && second <= 1e-6, "{ode} {second}");
        let line = spacelike_line();
        let cfg = CanalConfig::new(frame_type(&line), 1, profile);
        let c = classify_minimal(&line, &cfg).unwrap();
        assert!(c.holds && c.consistent && c.sampled <= 1e-5, "{c:?}");
    }

    #[test]
    fn minimal_radius_turning_point() {
        let err = solve_minimal_radius(-1.0, 1.0, 0.5, (0.0, 5.0), 1.0).unwrap_err();
        let AnalysisError::DomainExit { r, .. } = err else { panic!("{err:?}") };
        assert!((r - 1.0).abs() < 1e-3);
    }

    #[test]
    fn non_minimal_cases() {
        let c = classify_minimal(&beta1(), &CanalConfig::new(1, 1, RadiusProfile::parse("2*s").unwrap())).unwrap();
        assert!(!c.holds && c.consistent);
        let line = spacelike_line();
        let cfg = CanalConfig::new(frame_type(&line), -1, RadiusProfile::constant(0.7).unwrap());
        let c = classify_minimal(&line, &cfg).unwrap();
        assert!(!c.holds && c.consistent);
        let _ = Variant::Standard;
    }
}
