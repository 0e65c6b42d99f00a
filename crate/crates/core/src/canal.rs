//! Canal hypersurfaces `C^{j;lambda}` around non-null curves.
//!
//! For `lambda = +1` (pseudo hyperspheres) and `lambda = -1` (pseudo
//! hyperbolic hyperspheres) the envelope is
//!
//! ```text
//! C = b - lambda e1 r r' F1 + sigma r sqrt(|Q|) (a2 F2 + a3 F3 + a4 F4),   Q = r'^2 - lambda e1
//! ```
//!
//! where the weights `a_i(t, w)` depend on the frame type `j` and on the
//! variant: the standard forms need `Q > 0`, the alternate forms cover
//! `Q < 0`, which only occurs for spacelike curves with `lambda = +1`.
//! For `lambda = 0` the envelope of null hypercones is
//! `b + a2 F2 + a3 F3 + a4 F4` with `sum e_i a_i^2 = 0`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{CurveError, CurveSpec, FrenetFrame};
use crate::expr::{Expr, ExprError};
use crate::minkowski::{inner, Vec4};
use crate::radius::{RadiusError, RadiusProfile, RadiusValues};

/// Nodes with `|A| < DEGENERATE_A` are excluded from curvature evaluation.
pub const DEGENERATE_A: f64 = 1e-6;
/// Margin by which `Q` must clear zero for a variant to apply.
pub const VARIANT_MARGIN: f64 = 1e-12;

/// Which parametrization of the sphere directions is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// `r'^2 - lambda e1 > 0`.
    Standard,
    /// `r'^2 - lambda e1 < 0`, spacelike curves with `lambda = +1`.
    Alt,
}

/// The two free direction functions of a null-cone envelope.
///
/// They are `(a3, a4)` for `j = 2`, `(a2, a4)` for `j = 3` and `(a2, a3)`
/// for `j = 4`. The remaining component is solved from the null condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NullConeDirections {
    pub first: Expr,
    pub second: Expr,
}

/// Family selector of a canal hypersurface.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CanalConfig {
    pub j: usize,
    pub lambda: i32,
    pub sigma: f64,
    pub variant: Variant,
    pub radius: RadiusProfile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub null_cone: Option<NullConeDirections>,
}

impl CanalConfig {
    /// Standard variant with `sigma = +1`.
    pub fn new(j: usize, lambda: i32, radius: RadiusProfile) -> Self {
        CanalConfig { j, lambda, sigma: 1.0, variant: Variant::Standard, radius, null_cone: None }
    }

    /// Null-cone envelope with the given free directions.
    pub fn null_cone(j: usize, first: Expr, second: Expr) -> Self {
        CanalConfig {
            j,
            lambda: 0,
            sigma: 1.0,
            variant: Variant::Standard,
            radius: RadiusProfile::Constant(1.0),
            null_cone: Some(NullConeDirections { first, second }),
        }
    }

    pub fn with_sigma(mut self, sigma: f64) -> Self {
        self.sigma = sigma;
        self
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    /// `e3 e4 lambda^j`, the sign relating the normal to the sphere offset.
    pub fn normal_sign(&self) -> f64 {
        let (e3, e4) = match self.j {
            3 => (-1.0, 1.0),
            4 => (1.0, -1.0),
            _ => (1.0, 1.0),
        };
        e3 * e4 * (self.lambda as f64).powi(self.j as i32)
    }

    /// Short label such as `j1,l-1`.
    pub fn family_label(&self) -> String {
        format!("j{},l{}", self.j, self.lambda)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CanalError {
    #[error("inadmissible configuration: {0}")]
    Inadmissible(String),
    #[error("variant {variant:?} requires r'^2 - lambda e1 {need} 0, found {q:e} at s = {s}")]
    VariantViolated { s: f64, q: f64, variant: Variant, need: &'static str },
    #[error("radius must be positive, found r({s}) = {r}")]
    NonPositiveRadius { s: f64, r: f64 },
    #[error("null condition violated: sum e_i a_i^2 = {0:e}")]
    NullConditionViolated(f64),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Radius(#[from] RadiusError),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

fn inadmissible(msg: impl Into<String>) -> CanalError {
    CanalError::Inadmissible(msg.into())
}

/// Parameter-independent admissibility rules of a family.
pub fn check_family(config: &CanalConfig) -> Result<(), CanalError> {
    let CanalConfig { j, lambda, sigma, variant, .. } = config;
    if !(1..=4).contains(j) {
        return Err(inadmissible(format!("frame type j must be 1..4, got {j}")));
    }
    if ![-1, 0, 1].contains(lambda) {
        return Err(inadmissible(format!("lambda must be -1, 0 or 1, got {lambda}")));
    }
    if *sigma != 1.0 && *sigma != -1.0 {
        return Err(inadmissible(format!("branch sign must be +1 or -1, got {sigma}")));
    }
    if *lambda == 0 {
        if *j == 1 {
            return Err(inadmissible("null hypercone envelopes cannot be defined around a timelike curve (j = 1, lambda = 0)"));
        }
        if config.null_cone.is_none() {
            return Err(inadmissible("lambda = 0 needs the two free null-cone direction functions"));
        }
        return Ok(());
    }
    if *j == 1 && *lambda == -1 && config.radius.is_constant() {
        return Err(inadmissible("there is no tubular hypersurface T^{1;-1}: constant radius with j = 1, lambda = -1"));
    }
    if *variant == Variant::Alt && !(*j >= 2 && *lambda == 1) {
        return Err(inadmissible(format!(
            "the alternate variant exists only for spacelike curves with lambda = 1 (got j = {j}, lambda = {lambda})"
        )));
    }
    Ok(())
}

/// Direction weights `(a2, a3, a4)` of the sphere offset.
pub fn weights(j: usize, variant: Variant, t: f64, w: f64) -> [f64; 3] {
    if j == 1 {
        return [t.cos() * w.cos(), t.sin() * w.cos(), w.sin()];
    }
    let (c, sh) = match variant {
        Variant::Standard => (w.cosh(), w.sinh()),
        Variant::Alt => (w.sinh(), w.cosh()),
    };
    let mut a = [0.0; 3];
    a[(j - 2) % 3] = t.cosh() * c;
    a[(j - 1) % 3] = sh;
    a[j % 3] = t.sinh() * c;
    a
}

/// The factor `A` whose square divides out of `det g`.
pub fn a_factor(j: usize, variant: Variant, w: f64) -> f64 {
    match (j, variant) {
        (1, _) => w.cos(),
        (_, Variant::Standard) => w.cosh(),
        (_, Variant::Alt) => w.sinh(),
    }
}

/// Local data along the center curve at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Local {
    pub s: f64,
    pub beta: Vec4,
    pub frame: FrenetFrame,
    pub radius: RadiusValues,
    /// `r'^2 - lambda e1`.
    pub q: f64,
    /// `sigma sqrt(|Q|)`, the signed coefficient of the sphere directions.
    pub sq: f64,
}

/// A canal hypersurface ready for evaluation.
#[derive(Debug, Clone)]
pub struct CanalSurface {
    curve: CurveSpec,
    config: CanalConfig,
    line_frame: Option<FrenetFrame>,
}

impl CanalSurface {
    /// Checks the family rules and decides whether the curve is a line.
    pub fn new(curve: CurveSpec, config: CanalConfig) -> Result<Self, CanalError> {
        check_family(&config)?;
        let (a, b) = curve.domain();
        let line_frame = match curve.frenet(0.5 * (a + b)) {
            Err(CurveError::FrameDegenerate { what: "k1", .. }) => Some(curve.frame_for_line()?),
            _ => None,
        };
        Ok(CanalSurface { curve, config, line_frame })
    }

    pub fn curve(&self) -> &CurveSpec {
        &self.curve
    }

    pub fn config(&self) -> &CanalConfig {
        &self.config
    }

    pub fn is_line(&self) -> bool {
        self.line_frame.is_some()
    }

    fn frame(&self, s: f64) -> Result<FrenetFrame, CurveError> {
        match self.line_frame {
            Some(f) => Ok(f),
            None => self.curve.frenet_unchecked(s),
        }
    }

    /// Local data at `s`, which must lie in the curve domain.
    pub fn local(&self, s: f64) -> Result<Local, CanalError> {
        self.curve.position(s)?;
        self.local_unchecked(s)
    }

    pub(crate) fn local_unchecked(&self, s: f64) -> Result<Local, CanalError> {
        let beta = self.curve.position_unchecked(s)?;
        let frame = self.frame(s)?;
        if frame.j != self.config.j {
            return Err(inadmissible(format!(
                "center curve has frame type j = {} at s = {s} but the family asks for j = {}",
                frame.j, self.config.j
            )));
        }
        if self.config.lambda == 0 {
            let radius = RadiusValues { r: 0.0, rp: 0.0, rpp: 0.0 };
            return Ok(Local { s, beta, frame, radius, q: 0.0, sq: 0.0 });
        }
        let radius = self.config.radius.eval(s)?;
        if !(radius.r > 0.0) {
            return Err(CanalError::NonPositiveRadius { s, r: radius.r });
        }
        let lambda = self.config.lambda as f64;
        let q = radius.rp * radius.rp - lambda * frame.eps[0];
        match self.config.variant {
            Variant::Standard if q <= VARIANT_MARGIN => {
                return Err(CanalError::VariantViolated { s, q, variant: Variant::Standard, need: ">" })
            }
            Variant::Alt if q >= -VARIANT_MARGIN => {
                return Err(CanalError::VariantViolated { s, q, variant: Variant::Alt, need: "<" })
            }
            _ => {}
        }
        Ok(Local { s, beta, frame, radius, q, sq: self.config.sigma * q.abs().sqrt() })
    }

    /// Direction weights `(a2, a3, a4)` at `(t, w)`.
    pub fn weights(&self, t: f64, w: f64) -> [f64; 3] {
        weights(self.config.j, self.config.variant, t, w)
    }

    pub fn a_factor(&self, w: f64) -> f64 {
        a_factor(self.config.j, self.config.variant, w)
    }

    /// Sphere offset `(C - b) / r` for `lambda = +-1`.
    pub fn offset_direction(&self, local: &Local, t: f64, w: f64) -> Vec4 {
        let lambda = self.config.lambda as f64;
        let [f1, f2, f3, f4] = local.frame.f;
        let a = self.weights(t, w);
        (-lambda * local.frame.eps[0] * local.radius.rp) * f1 + local.sq * (a[0] * f2 + a[1] * f3 + a[2] * f4)
    }

    /// Point of the hypersurface from precomputed local data.
    pub fn point_at(&self, local: &Local, t: f64, w: f64) -> Result<Vec4, CanalError> {
        if self.config.lambda == 0 {
            let dirs = self.config.null_cone.as_ref().expect("checked by check_family");
            let first = dirs.first.eval_at(local.s, t, w)?;
            let second = dirs.second.eval_at(local.s, t, w)?;
            let a = nullcone_coefficients(self.config.j, first, second, self.config.sigma)?;
            let [_, f2, f3, f4] = local.frame.f;
            return Ok(local.beta + a[0] * f2 + a[1] * f3 + a[2] * f4);
        }
        Ok(local.beta + local.radius.r * self.offset_direction(local, t, w))
    }

    /// `C(s, t, w)`.
    pub fn point(&self, s: f64, t: f64, w: f64) -> Result<Vec4, CanalError> {
        let local = self.local(s)?;
        self.point_at(&local, t, w)
    }

    pub(crate) fn point_unchecked(&self, s: f64, t: f64, w: f64) -> Result<Vec4, CanalError> {
        let local = self.local_unchecked(s)?;
        self.point_at(&local, t, w)
    }

    /// Closed-form unit normal `-e3 e4 lambda^j (C - b) / r`.
    pub fn normal_closed_form(&self, local: &Local, t: f64, w: f64) -> Vec4 {
        -self.config.normal_sign() * self.offset_direction(local, t, w)
    }
}

/// `(a2, a3, a4)` of a null-cone envelope with the solved component carrying `sigma`.
pub fn nullcone_coefficients(j: usize, first: f64, second: f64, sigma: f64) -> Result<[f64; 3], CanalError> {
    if !(first.is_finite() && second.is_finite()) {
        return Err(CanalError::NullConditionViolated(f64::NAN));
    }
    let solved = sigma * first.hypot(second);
    let a = match j {
        2 => [solved, first, second],
        3 => [first, solved, second],
        4 => [first, second, solved],
        _ => return Err(inadmissible(format!("null-cone envelopes need j in 2..4, got {j}"))),
    };
    let residual = null_condition_residual(j, a);
    let scale = 1.0 + first * first + second * second;
    if residual.abs() > 1e-9 * scale {
        return Err(CanalError::NullConditionViolated(residual));
    }
    Ok(a)
}

/// `e2 a2^2 + e3 a3^2 + e4 a4^2` for frame type `j`.
pub fn null_condition_residual(j: usize, a: [f64; 3]) -> f64 {
    (0..3).map(|i| if i + 2 == j { -a[i] * a[i] } else { a[i] * a[i] }).sum()
}

/// `C(s, t, w)` for any admissible configuration.
pub fn canal_point(curve: &CurveSpec, config: &CanalConfig, s: f64, t: f64, w: f64) -> Result<Vec4, CanalError> {
    CanalSurface::new(curve.clone(), config.clone())?.point(s, t, w)
}

/// Null-cone envelope point, `j` in `2..=4`.
pub fn nullcone_point(
    curve: &CurveSpec,
    j: usize,
    first: &Expr,
    second: &Expr,
    sigma: f64,
    s: f64,
    t: f64,
    w: f64,
) -> Result<Vec4, CanalError> {
    let config = CanalConfig::null_cone(j, first.clone(), second.clone()).with_sigma(sigma);
    canal_point(curve, &config, s, t, w)
}

/// Tubular hypersurface `b + sigma r (a2 F2 + a3 F3 + a4 F4)`.
pub fn tubular_point(
    curve: &CurveSpec,
    j: usize,
    lambda: i32,
    sigma: f64,
    r: f64,
    s: f64,
    t: f64,
    w: f64,
) -> Result<Vec4, CanalError> {
    let variant = match (j, lambda) {
        (1, 1) => Variant::Standard,
        (1, _) => return Err(inadmissible(format!("no tubular hypersurface with j = 1, lambda = {lambda}"))),
        (_, 1) => Variant::Alt,
        (_, -1) => Variant::Standard,
        _ => return Err(inadmissible(format!("no tubular hypersurface with lambda = {lambda}"))),
    };
    let frame = curve.frenet(s)?;
    let beta = curve.position(s)?;
    let a = weights(j, variant, t, w);
    let [_, f2, f3, f4] = frame.f;
    Ok(beta + (sigma * r) * (a[0] * f2 + a[1] * f3 + a[2] * f4))
}

/// Variant implied by the sign of `r'^2 - lambda e1` at the domain midpoint.
pub fn detect_variant(curve: &CurveSpec, lambda: i32, radius: &RadiusProfile) -> Result<Variant, CanalError> {
    if lambda == 0 {
        return Ok(Variant::Standard);
    }
    let (a, b) = curve.domain();
    let mid = 0.5 * (a + b);
    let d = curve.derivatives(mid, 1)?[0];
    let e1 = if inner(d, d) < 0.0 { -1.0 } else { 1.0 };
    let rp = radius.eval(mid)?.rp;
    Ok(if rp * rp - lambda as f64 * e1 < 0.0 { Variant::Alt } else { Variant::Standard })
}

/// Outcome of `validate_config`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub reasons: Vec<String>,
    pub frame_type: Option<usize>,
    pub samples: usize,
}

/// Checks family rules, frame type and the variant sign condition on `n_samples` parameters.
pub fn validate_config(curve: &CurveSpec, config: &CanalConfig, n_samples: usize) -> AdmissibilityReport {
    let mut reasons = Vec::new();
    let n = n_samples.max(2);
    let surface = match CanalSurface::new(curve.clone(), config.clone()) {
        Ok(s) => s,
        Err(e) => {
            return AdmissibilityReport { admissible: false, reasons: vec![e.to_string()], frame_type: None, samples: 0 };
        }
    };
    let (a, b) = curve.domain();
    let mut frame_type = None;
    for i in 0..n {
        let s = a + (b - a) * i as f64 / (n - 1) as f64;
        match surface.local(s) {
            Ok(local) => {
                frame_type.get_or_insert(local.frame.j);
            }
            Err(e) => {
                if let Ok(f) = surface.frame(s) {
                    frame_type.get_or_insert(f.j);
                }
                reasons.push(e.to_string());
                break;
            }
        }
    }
    AdmissibilityReport { admissible: reasons.is_empty(), reasons, frame_type, samples: n }
}

/// Evenly spaced parameter values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    /// Whether `max` itself is sampled.
    pub endpoint: bool,
}

impl Axis {
    pub fn closed(min: f64, max: f64, count: usize) -> Self {
        Axis { min, max, count, endpoint: true }
    }

    pub fn half_open(min: f64, max: f64, count: usize) -> Self {
        Axis { min, max, count, endpoint: false }
    }

    pub fn single(value: f64) -> Self {
        Axis { min: value, max: value, count: 1, endpoint: true }
    }

    pub fn values(&self) -> Vec<f64> {
        match self.count {
            0 => Vec::new(),
            1 => vec![self.min],
            n => {
                let div = if self.endpoint { (n - 1) as f64 } else { n as f64 };
                (0..n).map(|i| self.min + (self.max - self.min) * i as f64 / div).collect()
            }
        }
    }
}

/// Lattice of parameters `(s, t, w)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub s: Axis,
    pub t: Axis,
    pub w: Axis,
}

/// Sampled hypersurface.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfacePatch {
    pub curve: CurveSpec,
    pub config: CanalConfig,
    pub s: Vec<f64>,
    pub t: Vec<f64>,
    pub w: Vec<f64>,
    /// Row-major over `(s, t, w)`.
    pub points: Vec<Vec4>,
    /// One frame per `s` value.
    pub frames: Vec<FrenetFrame>,
    /// Nodes excluded from curvature evaluation.
    pub degenerate: Vec<bool>,
}

impl SurfacePatch {
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.t.len() + j) * self.w.len() + k
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Parameters of node `(i, j, k)`.
    pub fn params(&self, i: usize, j: usize, k: usize) -> (f64, f64, f64) {
        (self.s[i], self.t[j], self.w[k])
    }

    /// All node indices with their parameters, in storage order.
    pub fn nodes(&self) -> impl Iterator<Item = (usize, (f64, f64, f64))> + '_ {
        let (nt, nw) = (self.t.len(), self.w.len());
        (0..self.points.len()).map(move |n| {
            let (i, j, k) = (n / (nt * nw), (n / nw) % nt, n % nw);
            (n, (self.s[i], self.t[j], self.w[k]))
        })
    }

    /// Rebuilds the evaluable surface.
    pub fn surface(&self) -> Result<CanalSurface, CanalError> {
        CanalSurface::new(self.curve.clone(), self.config.clone())
    }
}

/// Evaluates the hypersurface on a lattice, one parallel task per `s` value.
pub fn sample_grid(curve: &CurveSpec, config: &CanalConfig, grid: &GridSpec) -> Result<SurfacePatch, CanalError> {
    let surface = CanalSurface::new(curve.clone(), config.clone())?;
    let (s, t, w) = (grid.s.values(), grid.t.values(), grid.w.values());
    let rows: Vec<(FrenetFrame, Vec<Vec4>, Vec<bool>)> = s
        .par_iter()
        .map(|&si| {
            let local = surface.local(si)?;
            let mut pts = Vec::with_capacity(t.len() * w.len());
            let mut deg = Vec::with_capacity(t.len() * w.len());
            for &tj in &t {
                for &wk in &w {
                    pts.push(surface.point_at(&local, tj, wk)?);
                    deg.push(config.lambda != 0 && surface.a_factor(wk).abs() < DEGENERATE_A);
                }
            }
            Ok((local.frame, pts, deg))
        })
        .collect::<Result<_, CanalError>>()?;
    let mut points = Vec::with_capacity(s.len() * t.len() * w.len());
    let mut frames = Vec::with_capacity(s.len());
    let mut degenerate = Vec::with_capacity(points.capacity());
    for (f, p, d) in rows {
        frames.push(f);
        points.extend(p);
        degenerate.extend(d);
    }
    Ok(SurfacePatch { curve: curve.clone(), config: config.clone(), s, t, w, points, frames, degenerate })
}

/// `<P - b, P - b> - lambda r^2`.
pub fn sphere_residual(local: &Local, lambda: i32, p: Vec4) -> f64 {
    let d = p - local.beta;
    inner(d, d) - lambda as f64 * local.radius.r * local.radius.r
}
