//! Job configuration, builtin examples and export formats.
//!
//! A job is described by flat `key = value` text. The same keys are used for
//! command-line flags, so a flag simply overrides the corresponding line of a
//! configuration file.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::analysis::AnalysisError;
use crate::canal::{detect_variant, sample_grid, Axis, CanalConfig, CanalError, GridSpec, SurfacePatch, Variant};
use crate::curvature::{self, CurvatureError};
use crate::curve::{CurveError, CurveSpec, DerivativeMode, DEFAULT_FD_STEP};
use crate::expr::{parse, ExprError};
use crate::radius::{RadiusError, RadiusProfile};

/// Column contract of the curvature CSV.
pub const CSV_HEADER: &str = "s,t,w,K_cf,H_cf,mu1,mu2,mu3,K_num,H_num";

/// Process exit code: verification failed.
pub const EXIT_VERIFY: i32 = 1;
/// Process exit code: invalid configuration.
pub const EXIT_CONFIG: i32 = 2;
/// Process exit code: numeric breakdown.
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Error)]
pub enum JobError {
    #[error("unknown example {0:?}; available: beta1, beta2")]
    UnknownExample(String),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unknown key {0:?}")]
    UnknownKey(String),
    #[error("invalid value {value:?} for {key}: {message}")]
    BadValue { key: String, value: String, message: String },
    #[error("no center curve: set `example` or all of x1..x4")]
    MissingCurve,
    #[error("both a builtin example and explicit curve components were given")]
    ConflictingCurve,
    #[error("cannot export: {0}")]
    EmptySlice(String),
    #[error("cannot read patch: {0}")]
    Json(String),
    #[error("{context}: {source}")]
    Io { context: String, source: std::io::Error },
    #[error(transparent)]
    Canal(#[from] CanalError),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

impl From<CurveError> for JobError {
    fn from(e: CurveError) -> Self {
        JobError::Canal(e.into())
    }
}

impl From<ExprError> for JobError {
    fn from(e: ExprError) -> Self {
        JobError::Canal(e.into())
    }
}

impl From<RadiusError> for JobError {
    fn from(e: RadiusError) -> Self {
        JobError::Canal(e.into())
    }
}

fn curvature_code(e: &CurvatureError) -> i32 {
    match e {
        CurvatureError::Canal(c) => canal_code(c),
        CurvatureError::NullHypersurface => EXIT_CONFIG,
        _ => EXIT_NUMERIC,
    }
}

fn canal_code(e: &CanalError) -> i32 {
    match e {
        CanalError::Curve(CurveError::FrameDegenerate { .. } | CurveError::NullResidual { .. }) => EXIT_NUMERIC,
        CanalError::NullConditionViolated(_) => EXIT_NUMERIC,
        _ => EXIT_CONFIG,
    }
}

impl JobError {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            JobError::Canal(c) => canal_code(c),
            JobError::Curvature(c) => curvature_code(c),
            JobError::Analysis(a) => match a {
                AnalysisError::DomainExit { .. } => EXIT_NUMERIC,
                AnalysisError::Invalid(_) => EXIT_CONFIG,
                AnalysisError::Curvature(c) => curvature_code(c),
                AnalysisError::Canal(c) => canal_code(c),
                AnalysisError::Curve(c) => canal_code(&CanalError::Curve(c.clone())),
            },
            _ => EXIT_CONFIG,
        }
    }
}

/// Builtin center curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Example {
    Beta1,
    Beta2,
}

impl Example {
    pub fn from_name(name: &str) -> Result<Self, JobError> {
        match name {
            "beta1" => Ok(Example::Beta1),
            "beta2" => Ok(Example::Beta2),
            _ => Err(JobError::UnknownExample(name.to_string())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Example::Beta1 => "beta1",
            Example::Beta2 => "beta2",
        }
    }

    /// Component expressions of the curve.
    pub fn components(self) -> [&'static str; 4] {
        match self {
            Example::Beta1 => ["2*sinh(s)", "2*cosh(s)", "sqrt(3)*cos(s)", "sqrt(3)*sin(s)"],
            Example::Beta2 => ["sqrt(3)*sinh(s)", "sqrt(3)*cosh(s)", "2*cos(s)", "2*sin(s)"],
        }
    }

    /// Frame type of the curve.
    pub fn frame_type(self) -> usize {
        match self {
            Example::Beta1 => 1,
            Example::Beta2 => 3,
        }
    }
}

/// Everything needed to build, evaluate and export one hypersurface.
#[derive(Debug, Clone, PartialEq)]
pub struct JobConfig {
    pub example: Option<Example>,
    pub components: [Option<String>; 4],
    pub range_s: Option<(f64, f64)>,
    pub radius: String,
    pub j: usize,
    pub lambda: i32,
    pub sigma: f64,
    /// `None` selects the variant from the sign of `r'^2 - lambda e1`.
    pub variant: Option<Variant>,
    pub null_first: Option<String>,
    pub null_second: Option<String>,
    pub grid: (usize, usize, usize),
    pub range_t: Option<(f64, f64)>,
    pub range_w: Option<(f64, f64)>,
    pub slice_w: Option<f64>,
    pub slice_t: Option<f64>,
    /// Coordinate dropped by the OBJ projection, 1 to 4.
    pub projection: usize,
    pub out: Option<String>,
    pub checks: Vec<String>,
    pub derivatives: DerivativeMode,
}

impl Default for JobConfig {
    fn default() -> Self {
        JobConfig {
            example: None,
            components: [None, None, None, None],
            range_s: None,
            radius: "2*s".into(),
            j: 1,
            lambda: 1,
            sigma: 1.0,
            variant: None,
            null_first: None,
            null_second: None,
            grid: (24, 24, 12),
            range_t: None,
            range_w: None,
            slice_w: None,
            slice_t: None,
            projection: 1,
            out: None,
            checks: Vec::new(),
            derivatives: DerivativeMode::Symbolic,
        }
    }
}

fn bad(key: &str, value: &str, message: impl Into<String>) -> JobError {
    JobError::BadValue { key: key.into(), value: value.into(), message: message.into() }
}

fn parse_f64(key: &str, value: &str) -> Result<f64, JobError> {
    let e = parse(value).map_err(|e| bad(key, value, e.to_string()))?;
    e.constant_value().ok_or_else(|| bad(key, value, "expected a constant"))
}

fn parse_range(key: &str, value: &str) -> Result<(f64, f64), JobError> {
    let (a, b) = value.split_once(':').ok_or_else(|| bad(key, value, "expected a:b"))?;
    let (a, b) = (parse_f64(key, a.trim())?, parse_f64(key, b.trim())?);
    if !(b > a) {
        return Err(bad(key, value, "range must be increasing"));
    }
    Ok((a, b))
}

/// Parses `jN,lM`.
pub fn parse_family(value: &str) -> Result<(usize, i32), JobError> {
    let err = || bad("family", value, "expected jN,lM such as j1,l-1");
    let (j, l) = value.split_once(',').ok_or_else(err)?;
    let j: usize = j.trim().strip_prefix('j').ok_or_else(err)?.parse().map_err(|_| err())?;
    let l: i32 = l.trim().strip_prefix('l').ok_or_else(err)?.parse().map_err(|_| err())?;
    if !(1..=4).contains(&j) || !(-1..=1).contains(&l) {
        return Err(err());
    }
    Ok((j, l))
}

fn fmt_range(r: (f64, f64)) -> String {
    format!("{}:{}", r.0, r.1)
}

impl JobConfig {
    /// Configuration of a builtin example: radius `2s`, `s` in `[0.25, 3]` and the slice `w = 2`.
    pub fn example(name: &str) -> Result<Self, JobError> {
        let mut cfg = JobConfig::default();
        cfg.use_example(Example::from_name(name)?);
        Ok(cfg)
    }

    /// Selects a builtin curve and its frame type; fills the `s` range and the
    /// slice unless they are already set.
    pub fn use_example(&mut self, ex: Example) {
        self.example = Some(ex);
        self.j = ex.frame_type();
        self.range_s.get_or_insert((0.25, 3.0));
        if self.slice_w.is_none() && self.slice_t.is_none() {
            self.slice_w = Some(2.0);
        }
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), JobError> {
        let value = value.trim();
        match key {
            "example" => self.use_example(Example::from_name(value)?),
            "x1" | "x2" | "x3" | "x4" => {
                let i = key[1..].parse::<usize>().expect("matched digit") - 1;
                parse(value).map_err(|e| bad(key, value, e.to_string()))?;
                self.components[i] = Some(value.to_string());
            }
            "range_s" => self.range_s = Some(parse_range(key, value)?),
            "range_t" => self.range_t = Some(parse_range(key, value)?),
            "range_w" => self.range_w = Some(parse_range(key, value)?),
            "radius" => self.radius = value.to_string(),
            "family" => (self.j, self.lambda) = parse_family(value)?,
            "branch" => {
                self.sigma = match value {
                    "+" | "+1" | "1" => 1.0,
                    "-" | "-1" => -1.0,
                    _ => return Err(bad(key, value, "expected + or -")),
                }
            }
            "variant" => {
                self.variant = match value {
                    "auto" => None,
                    "standard" => Some(Variant::Standard),
                    "alt" => Some(Variant::Alt),
                    _ => return Err(bad(key, value, "expected auto, standard or alt")),
                }
            }
            "null_first" => self.null_first = Some(value.to_string()),
            "null_second" => self.null_second = Some(value.to_string()),
            "grid" => {
                let parts: Vec<&str> = value.split(['x', 'X', '×']).collect();
                let counts: Vec<usize> = parts.iter().map(|p| p.trim().parse().unwrap_or(0)).collect();
                if counts.len() != 3 || counts.contains(&0) {
                    return Err(bad(key, value, "expected SxTxW with positive counts"));
                }
                self.grid = (counts[0], counts[1], counts[2]);
            }
            "slice_w" => {
                self.slice_w = Some(parse_f64(key, value)?);
                self.slice_t = None;
            }
            "slice_t" => {
                self.slice_t = Some(parse_f64(key, value)?);
                self.slice_w = None;
            }
            "projection" => {
                let p = value.trim_start_matches('x');
                self.projection = match p.parse() {
                    Ok(p @ 1..=4) => p,
                    _ => return Err(bad(key, value, "expected a coordinate 1..4")),
                };
            }
            "out" => self.out = Some(value.to_string()),
            "check" => {
                self.checks = value.split(',').map(|c| c.trim().to_string()).filter(|c| !c.is_empty()).collect()
            }
            "derivatives" => {
                self.derivatives = match value {
                    "symbolic" => DerivativeMode::Symbolic,
                    "fd" => DerivativeMode::FiniteDifference(DEFAULT_FD_STEP),
                    _ => match value.strip_prefix("fd:") {
                        Some(h) => DerivativeMode::FiniteDifference(parse_f64(key, h)?),
                        None => return Err(bad(key, value, "expected symbolic, fd or fd:<step>")),
                    },
                }
            }
            _ => return Err(JobError::UnknownKey(key.to_string())),
        }
        Ok(())
    }

    /// Parses `key = value` lines on top of the defaults. `#` starts a comment.
    pub fn parse_text(text: &str) -> Result<Self, JobError> {
        let mut cfg = JobConfig::default();
        cfg.apply_text(text)?;
        Ok(cfg)
    }

    /// Applies `key = value` lines to this configuration.
    pub fn apply_text(&mut self, text: &str) -> Result<(), JobError> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| JobError::Syntax { line: n + 1, message: format!("expected key = value, got {line:?}") })?;
            self.set(key.trim(), value)?;
        }
        Ok(())
    }

    /// Canonical `key = value` text.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            let _ = writeln!(out, "{k} = {v}");
        };
        if let Some(ex) = self.example {
            line("example", ex.name().to_string());
        }
        for (i, c) in self.components.iter().enumerate() {
            if let Some(c) = c {
                line(&format!("x{}", i + 1), c.clone());
            }
        }
        if let Some(r) = self.range_s {
            line("range_s", fmt_range(r));
        }
        line("radius", self.radius.clone());
        line("family", format!("j{},l{}", self.j, self.lambda));
        line("branch", if self.sigma < 0.0 { "-" } else { "+" }.into());
        line(
            "variant",
            match self.variant {
                None => "auto",
                Some(Variant::Standard) => "standard",
                Some(Variant::Alt) => "alt",
            }
            .into(),
        );
        if let Some(v) = &self.null_first {
            line("null_first", v.clone());
        }
        if let Some(v) = &self.null_second {
            line("null_second", v.clone());
        }
        line("grid", format!("{}x{}x{}", self.grid.0, self.grid.1, self.grid.2));
        if let Some(r) = self.range_t {
            line("range_t", fmt_range(r));
        }
        if let Some(r) = self.range_w {
            line("range_w", fmt_range(r));
        }
        if let Some(v) = self.slice_w {
            line("slice_w", format!("{v}"));
        }
        if let Some(v) = self.slice_t {
            line("slice_t", format!("{v}"));
        }
        line("projection", format!("x{}", self.projection));
        line(
            "derivatives",
            match self.derivatives {
                DerivativeMode::Symbolic => "symbolic".into(),
                DerivativeMode::FiniteDifference(h) => format!("fd:{h}"),
            },
        );
        if !self.checks.is_empty() {
            line("check", self.checks.join(","));
        }
        if let Some(o) = &self.out {
            line("out", o.clone());
        }
        out
    }

    /// The center curve.
    pub fn curve(&self) -> Result<CurveSpec, JobError> {
        let explicit = self.components.iter().any(Option::is_some);
        let domain = self.range_s.unwrap_or((0.25, 3.0));
        let comps: [String; 4] = match (self.example, explicit) {
            (Some(_), true) => return Err(JobError::ConflictingCurve),
            (Some(ex), false) => ex.components().map(String::from),
            (None, true) => {
                let mut c: [String; 4] = Default::default();
                for (i, slot) in c.iter_mut().enumerate() {
                    *slot = self.components[i].clone().ok_or(JobError::MissingCurve)?;
                }
                c
            }
            (None, false) => return Err(JobError::MissingCurve),
        };
        let refs: [&str; 4] = std::array::from_fn(|i| comps[i].as_str());
        Ok(CurveSpec::parse(refs, domain, self.derivatives)?)
    }

    /// The family configuration, detecting the variant when not given.
    pub fn canal_config(&self, curve: &CurveSpec) -> Result<CanalConfig, JobError> {
        if self.lambda == 0 {
            let first = self.null_first.as_deref().unwrap_or("cosh(t)");
            let second = self.null_second.as_deref().unwrap_or("sinh(t)");
            return Ok(CanalConfig::null_cone(self.j, parse(first)?, parse(second)?).with_sigma(self.sigma));
        }
        let radius = RadiusProfile::parse(&self.radius)?;
        let variant = match self.variant {
            Some(v) => v,
            None => detect_variant(curve, self.lambda, &radius)?,
        };
        Ok(CanalConfig::new(self.j, self.lambda, radius).with_sigma(self.sigma).with_variant(variant))
    }

    /// Default `t` and `w` ranges of the family.
    fn default_ranges(&self) -> (Axis, Axis) {
        let (nt, nw) = (self.grid.1, self.grid.2);
        let t = match self.range_t {
            Some((a, b)) => Axis::closed(a, b, nt),
            None if self.j == 1 => Axis::half_open(0.0, 2.0 * PI, nt),
            None => Axis::closed(-2.0, 2.0, nt),
        };
        let w = match self.range_w {
            Some((a, b)) => Axis::closed(a, b, nw),
            None if self.j == 1 => Axis::closed(-FRAC_PI_2, FRAC_PI_2, nw),
            None => Axis::closed(-2.0, 2.0, nw),
        };
        (t, w)
    }

    /// Full parameter lattice over `s`, `t` and `w`.
    pub fn grid_spec(&self, curve: &CurveSpec) -> GridSpec {
        let (a, b) = curve.domain();
        let (t, w) = self.default_ranges();
        GridSpec { s: Axis::closed(a, b, self.grid.0), t, w }
    }

    /// The lattice collapsed to the slice `w = slice_w` or `t = slice_t`.
    pub fn slice_spec(&self, curve: &CurveSpec) -> Result<GridSpec, JobError> {
        let mut grid = self.grid_spec(curve);
        match (self.slice_w, self.slice_t) {
            (Some(v), _) => grid.w = Axis::single(v),
            (None, Some(v)) => grid.t = Axis::single(v),
            (None, None) => return Err(JobError::EmptySlice("set slice_w or slice_t".into())),
        }
        Ok(grid)
    }

    /// Samples the patch described by this configuration.
    pub fn build(&self, grid: impl FnOnce(&Self, &CurveSpec) -> Result<GridSpec, JobError>) -> Result<SurfacePatch, JobError> {
        let curve = self.curve()?;
        let config = self.canal_config(&curve)?;
        let spec = grid(self, &curve)?;
        Ok(sample_grid(&curve, &config, &spec)?)
    }
}

/// `%.9g`-style formatting with `-0` printed as `0`.
pub fn format_sig9(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        let fixed = format!("{:.*}", (8 - exp) as usize, x);
        trim_zeros(&fixed)
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Maps a (row, column) position of a slice to its node index.
type NodeIndex<'a> = Box<dyn Fn(usize, usize) -> usize + 'a>;

/// Row and column axes of a slice patch and the index of a node.
fn slice_layout(patch: &SurfacePatch) -> Result<(usize, usize, NodeIndex<'_>), JobError> {
    let (ns, nt, nw) = (patch.s.len(), patch.t.len(), patch.w.len());
    if ns == 0 || nt == 0 || nw == 0 {
        return Err(JobError::EmptySlice("the patch has no nodes".into()));
    }
    if nw == 1 {
        Ok((ns, nt, Box::new(move |i, j| patch.index(i, j, 0))))
    } else if nt == 1 {
        Ok((ns, nw, Box::new(move |i, k| patch.index(i, 0, k))))
    } else {
        Err(JobError::EmptySlice("the patch is not a fixed-w or fixed-t slice".into()))
    }
}

/// Wavefront OBJ of a slice patch, dropping coordinate `projection` (1 to 4).
///
/// Vertices are row-major over the two free parameters. Each grid quad is
/// split into two triangles; faces touching a degenerate node are left out.
pub fn export_obj(patch: &SurfacePatch, projection: usize) -> Result<String, JobError> {
    if !(1..=4).contains(&projection) {
        return Err(bad("projection", &projection.to_string(), "expected a coordinate 1..4"));
    }
    let (rows, cols, index) = slice_layout(patch)?;
    let keep: Vec<usize> = (0..4).filter(|c| *c != projection - 1).collect();
    let mut out = String::new();
    for i in 0..rows {
        for j in 0..cols {
            let p = patch.points[index(i, j)].to_array();
            let _ = writeln!(out, "v {} {} {}", format_sig9(p[keep[0]]), format_sig9(p[keep[1]]), format_sig9(p[keep[2]]));
        }
    }
    let vid = |i: usize, j: usize| i * cols + j + 1;
    for i in 0..rows.saturating_sub(1) {
        for j in 0..cols.saturating_sub(1) {
            let corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
            if corners.iter().any(|(a, b)| patch.degenerate[index(*a, *b)]) {
                continue;
            }
            let [a, b, c, d] = corners.map(|(x, y)| vid(x, y));
            let _ = writeln!(out, "f {a} {b} {c}");
            let _ = writeln!(out, "f {a} {c} {d}");
        }
    }
    Ok(out)
}

fn csv_value(x: Option<f64>) -> String {
    match x {
        Some(v) if v.is_finite() => format!("{v}"),
        _ => "nan".into(),
    }
}

/// Curvature CSV over all nodes of the patch.
///
/// Columns follow `CSV_HEADER`. Values that cannot be evaluated at a node,
/// such as at degenerate or focal nodes, are written as `nan`.
pub fn curvature_csv(patch: &SurfacePatch) -> Result<String, JobError> {
    let surface = patch.surface()?;
    let nodes: Vec<_> = patch.nodes().collect();
    let rows = nodes
        .par_iter()
        .map(|(idx, (s, t, w))| {
            let (cf, nm) = if patch.degenerate[*idx] {
                (None, None)
            } else {
                (keep_numeric(curvature::closed_form(&surface, *s, *t, *w))?, keep_numeric(curvature::numeric(&surface, *s, *t, *w))?)
            };
            let fields = [
                Some(*s),
                Some(*t),
                Some(*w),
                cf.as_ref().map(|r| r.gauss),
                cf.as_ref().map(|r| r.mean),
                cf.as_ref().map(|r| r.principal[0]),
                cf.as_ref().map(|r| r.principal[1]),
                cf.as_ref().map(|r| r.principal[2]),
                nm.as_ref().map(|r| r.gauss),
                nm.as_ref().map(|r| r.mean),
            ];
            Ok(fields.map(csv_value).join(","))
        })
        .collect::<Result<Vec<String>, JobError>>()?;
    let mut out = String::with_capacity(rows.len() * 120);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    Ok(out)
}

/// Turns node-local numeric failures into missing values and keeps configuration errors.
fn keep_numeric<T>(r: Result<T, CurvatureError>) -> Result<Option<T>, JobError> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(CurvatureError::Canal(e)) => Err(e.into()),
        Err(CurvatureError::NullHypersurface) => Err(CurvatureError::NullHypersurface.into()),
        Err(_) => Ok(None),
    }
}

/// Patch as JSON with round-trip exact floats.
pub fn patch_to_json(patch: &SurfacePatch) -> String {
    serde_json::to_string_pretty(patch).expect("patch serializes")
}

pub fn patch_from_json(text: &str) -> Result<SurfacePatch, JobError> {
    serde_json::from_str(text).map_err(|e| JobError::Json(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig9_formatting() {
        assert_eq!(format_sig9(0.0), "0");
        assert_eq!(format_sig9(-0.0), "0");
        assert_eq!(format_sig9(1.0), "1");
        assert_eq!(format_sig9(-2.5), "-2.5");
        assert_eq!(format_sig9(1.0 / 3.0), "0.333333333");
        assert_eq!(format_sig9(123456789.4), "123456789");
        assert_eq!(format_sig9(1234567894.0), "1.23456789e+09");
        assert_eq!(format_sig9(0.0001234), "0.0001234");
        assert_eq!(format_sig9(1.5e-7), "1.5e-07");
        assert_eq!(format_sig9(9.9999999999), "10");
    }

    #[test]
    fn examples() {
        let c = JobConfig::example("beta1").unwrap();
        let curve = c.curve().unwrap();
        assert!((curve.frenet(1.0).unwrap().k1 - 7f64.sqrt()).abs() < 1e-9);
        let c = JobConfig::example("beta2").unwrap();
        assert_eq!(c.curve().unwrap().frenet(1.0).unwrap().j, 3);
        assert!(matches!(JobConfig::example("beta3"), Err(JobError::UnknownExample(_))));
    }

    #[test]
    fn config_text_round_trip() {
        let mut c = JobConfig::example("beta2").unwrap();
        c.set("family", "j3,l-1").unwrap();
        c.set("branch", "-").unwrap();
        c.set("grid", "4x5x6").unwrap();
        c.set("check", "kh, weingarten-tw").unwrap();
        let back = JobConfig::parse_text(&c.to_text()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn config_errors() {
        assert!(matches!(JobConfig::parse_text("radius 2*s"), Err(JobError::Syntax { line: 1, .. })));
        assert!(matches!(JobConfig::parse_text("colour = red"), Err(JobError::UnknownKey(_))));
        assert!(matches!(parse_family("j5,l1"), Err(JobError::BadValue { .. })));
        assert_eq!(parse_family("j1,l-1").unwrap(), (1, -1));
        let c = JobConfig::parse_text("x1 = s\nx2 = 0\nx3 = 0").unwrap();
        assert!(matches!(c.curve(), Err(JobError::MissingCurve)));
    }

    #[test]
    fn obj_of_one_quad() {
        let mut c = JobConfig::example("beta1").unwrap();
        c.set("grid", "2x2x1").unwrap();
        let patch = c.build(JobConfig::slice_spec).unwrap();
        let obj = export_obj(&patch, 1).unwrap();
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 4);
        assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 2);
        assert!(obj.contains("f 1 3 4\n"));
    }

    #[test]
    fn degenerate_faces_are_skipped() {
        let mut c = JobConfig::example("beta1").unwrap();
        c.set("slice_t", "0.3").unwrap();
        c.set("grid", "3x1x3").unwrap();
        let patch = c.build(JobConfig::slice_spec).unwrap();
        assert!(patch.degenerate.iter().any(|d| *d));
        let obj = export_obj(&patch, 1).unwrap();
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 9);
        assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 0);
    }

    #[test]
    fn csv_contract() {
        let mut c = JobConfig::example("beta1").unwrap();
        c.set("grid", "3x4x1").unwrap();
        let patch = c.build(JobConfig::slice_spec).unwrap();
        let csv = curvature_csv(&patch).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert_eq!(lines.count(), 12);
    }

    #[test]
    fn patch_json_round_trip() {
        let mut c = JobConfig::example("beta2").unwrap();
        c.set("grid", "3x3x2").unwrap();
        let patch = c.build(|c, curve| Ok(c.grid_spec(curve))).unwrap();
        let back = patch_from_json(&patch_to_json(&patch)).unwrap();
        assert_eq!(back.points, patch.points);
        assert_eq!(back, patch);
    }
}
