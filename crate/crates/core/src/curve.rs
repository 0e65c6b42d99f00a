//! Unit-speed non-null curves and their Frenet tetrads.
//!
//! The tetrad is built by Minkowski Gram-Schmidt on the derivatives of the
//! curve: `F1 = b'`, `F2` is the unit direction of `F1'`, `F3` the unit
//! direction of `F2'` after removing its `F1` and `F2` components, and `F4`
//! completes a positively oriented tetrad, `det[F1; F2; F3; F4] = +1`.
//! The curvatures then satisfy
//!
//! ```text
//! F1' = k1 F2
//! F2' = e3 e4 k1 F1 + k2 F3
//! F3' = e1 e4 k2 F2 + k3 F4
//! F4' = e1 e2 k3 F3
//! ```
//!
//! with `k1, k2 > 0` and `k3` signed.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{Expr, ExprError};
use crate::minkowski::{inner, normalize, sign_of, triple_cross, Vec4, TAU_NULL};

/// Curvature threshold below which the Frenet construction is degenerate.
pub const TAU_K: f64 = 1e-8;
/// Unit-speed tolerance for symbolic derivatives.
pub const TOL_UNIT_SYMBOLIC: f64 = 1e-10;
/// Unit-speed tolerance for finite-difference derivatives.
pub const TOL_UNIT_FD: f64 = 1e-6;
/// Orthonormality tolerance of a computed tetrad.
pub const TOL_FRAME: f64 = 1e-8;
/// Default finite-difference step for curve derivatives.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// How derivatives of the curve components are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DerivativeMode {
    Symbolic,
    FiniteDifference(f64),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("parameter s = {s} lies outside the curve domain [{min}, {max}]")]
    OutOfDomain { s: f64, min: f64, max: f64 },
    #[error("Frenet frame degenerates at s = {s}: {what} = {value:e} is below the threshold")]
    FrameDegenerate { s: f64, what: &'static str, value: f64 },
    #[error("Frenet frame at s = {s} needs a null {what} vector; only non-null frames are supported")]
    NullResidual { s: f64, what: &'static str },
    #[error("curve is not a straight line: |b''| = {0:e}")]
    NotALine(f64),
    #[error("invalid curve: {0}")]
    Invalid(String),
    #[error(transparent)]
    Expr(#[from] ExprError),
}

/// An analytic curve `b(s)` in Minkowski 4-space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CurveSpecData", into = "CurveSpecData")]
pub struct CurveSpec {
    components: [Expr; 4],
    domain: (f64, f64),
    mode: DerivativeMode,
    /// `derivs[n][i]` is the `(n+1)`-th derivative of component `i`.
    derivs: Vec<[Expr; 4]>,
}

#[derive(Serialize, Deserialize)]
struct CurveSpecData {
    components: [Expr; 4],
    domain: (f64, f64),
    mode: DerivativeMode,
}

impl TryFrom<CurveSpecData> for CurveSpec {
    type Error = CurveError;
    fn try_from(d: CurveSpecData) -> Result<Self, CurveError> {
        CurveSpec::new(d.components, d.domain, d.mode)
    }
}

impl From<CurveSpec> for CurveSpecData {
    fn from(c: CurveSpec) -> Self {
        CurveSpecData { components: c.components, domain: c.domain, mode: c.mode }
    }
}

/// Orthonormal Frenet tetrad at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrenetFrame {
    pub f: [Vec4; 4],
    pub eps: [f64; 4],
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    /// One-based index of the timelike leg.
    pub j: usize,
}

/// Result of a unit-speed check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitSpeedReport {
    pub max_deviation: f64,
    pub tolerance: f64,
    pub samples: usize,
    pub pass: bool,
}

impl CurveSpec {
    /// Builds a curve from four component expressions in `s`.
    pub fn new(components: [Expr; 4], domain: (f64, f64), mode: DerivativeMode) -> Result<Self, CurveError> {
        if !(domain.0.is_finite() && domain.1.is_finite() && domain.0 <= domain.1) {
            return Err(CurveError::Invalid(format!("bad domain [{}, {}]", domain.0, domain.1)));
        }
        if let DerivativeMode::FiniteDifference(h) = mode {
            if !(h > 0.0 && h.is_finite()) {
                return Err(CurveError::Invalid(format!("finite-difference step must be positive, got {h}")));
            }
        }
        if components.iter().any(|c| c.uses_var(crate::expr::Var::T) || c.uses_var(crate::expr::Var::W)) {
            return Err(CurveError::Invalid("curve components may only depend on s".into()));
        }
        let mut derivs: Vec<[Expr; 4]> = Vec::with_capacity(4);
        if mode == DerivativeMode::Symbolic {
            let mut cur = components.clone();
            for _ in 0..4 {
                cur = cur.map(|e| e.differentiate());
                derivs.push(cur.clone());
            }
        }
        Ok(CurveSpec { components, domain, mode, derivs })
    }

    /// Parses four component strings.
    pub fn parse(components: [&str; 4], domain: (f64, f64), mode: DerivativeMode) -> Result<Self, CurveError> {
        let mut parsed = Vec::with_capacity(4);
        for c in components {
            parsed.push(crate::expr::parse(c)?);
        }
        let arr: [Expr; 4] = parsed.try_into().expect("four components");
        CurveSpec::new(arr, domain, mode)
    }

    pub fn components(&self) -> &[Expr; 4] {
        &self.components
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn mode(&self) -> DerivativeMode {
        self.mode
    }

    /// Same curve over a different parameter interval.
    pub fn with_domain(&self, domain: (f64, f64)) -> Result<Self, CurveError> {
        CurveSpec::new(self.components.clone(), domain, self.mode)
    }

    fn check_domain(&self, s: f64) -> Result<(), CurveError> {
        let (min, max) = self.domain;
        let slack = 1e-12 * (1.0 + s.abs());
        if s.is_finite() && s >= min - slack && s <= max + slack {
            Ok(())
        } else {
            Err(CurveError::OutOfDomain { s, min, max })
        }
    }

    /// `b(s)`.
    pub fn position(&self, s: f64) -> Result<Vec4, CurveError> {
        self.check_domain(s)?;
        self.position_unchecked(s)
    }

    pub(crate) fn position_unchecked(&self, s: f64) -> Result<Vec4, CurveError> {
        eval4(&self.components, s)
    }

    /// `b'(s), ..., b^(order)(s)` for `order` in `1..=4`.
    pub fn derivatives(&self, s: f64, order: usize) -> Result<Vec<Vec4>, CurveError> {
        self.check_domain(s)?;
        self.derivatives_unchecked(s, order)
    }

    pub(crate) fn derivatives_unchecked(&self, s: f64, order: usize) -> Result<Vec<Vec4>, CurveError> {
        if !(1..=4).contains(&order) {
            return Err(CurveError::Invalid(format!("derivative order must be in 1..=4, got {order}")));
        }
        match self.mode {
            DerivativeMode::Symbolic => self.derivs[..order].iter().map(|d| eval4(d, s)).collect(),
            DerivativeMode::FiniteDifference(h) => (1..=order).map(|n| self.fd_derivative(s, n, h)).collect(),
        }
    }

    /// Central 5-point difference of order `n`.
    ///
    /// Orders three and four use the larger of `h` and the step that balances
    /// truncation against rounding, `eps^(1/(n+2))`.
    fn fd_derivative(&self, s: f64, n: usize, h: f64) -> Result<Vec4, CurveError> {
        let step = if n <= 2 { h } else { h.max(f64::EPSILON.powf(1.0 / (n as f64 + 2.0))) };
        let p = |k: f64| self.position_unchecked(s + k * step);
        let v = match n {
            1 => (p(-2.0)? - p(2.0)? + 8.0 * (p(1.0)? - p(-1.0)?)) * (1.0 / (12.0 * step)),
            2 => {
                (-1.0 * (p(2.0)? + p(-2.0)?) + 16.0 * (p(1.0)? + p(-1.0)?) - 30.0 * p(0.0)?)
                    * (1.0 / (12.0 * step * step))
            }
            3 => (p(2.0)? - p(-2.0)? - 2.0 * (p(1.0)? - p(-1.0)?)) * (1.0 / (2.0 * step.powi(3))),
            _ => (p(2.0)? + p(-2.0)? - 4.0 * (p(1.0)? + p(-1.0)?) + 6.0 * p(0.0)?) * (1.0 / step.powi(4)),
        };
        Ok(v)
    }

    /// Frenet tetrad, signs and curvatures at `s`.
    pub fn frenet(&self, s: f64) -> Result<FrenetFrame, CurveError> {
        self.check_domain(s)?;
        self.frenet_unchecked(s)
    }

    pub(crate) fn frenet_unchecked(&self, s: f64) -> Result<FrenetFrame, CurveError> {
        let d = self.derivatives_unchecked(s, 4)?;
        frenet_from_derivatives(s, d[0], d[1], d[2], d[3])
    }

    /// Constant tetrad of a straight line.
    ///
    /// `F1 = b'` and the remaining legs are completed from `e1, e2, e3, e4`
    /// in that order, skipping candidates whose residual is null or nearly
    /// parallel to the legs already chosen.
    pub fn frame_for_line(&self) -> Result<FrenetFrame, CurveError> {
        let (a, b) = self.domain;
        let mid = 0.5 * (a + b);
        let d = self.derivatives(mid, 2)?;
        let bend = d[1].max_abs();
        if bend > TAU_K {
            return Err(CurveError::NotALine(bend));
        }
        line_frame(d[0], mid)
    }

    /// Checks `|<b', b'>| = 1` at `n_samples` evenly spaced parameters.
    pub fn verify_unit_speed(&self, n_samples: usize) -> Result<UnitSpeedReport, CurveError> {
        let n = n_samples.max(2);
        let (a, b) = self.domain;
        let mut max_dev: f64 = 0.0;
        for i in 0..n {
            let s = a + (b - a) * i as f64 / (n - 1) as f64;
            let v = self.derivatives(s, 1)?[0];
            max_dev = max_dev.max((inner(v, v).abs() - 1.0).abs());
        }
        let tolerance = match self.mode {
            DerivativeMode::Symbolic => TOL_UNIT_SYMBOLIC,
            DerivativeMode::FiniteDifference(_) => TOL_UNIT_FD,
        };
        Ok(UnitSpeedReport { max_deviation: max_dev, tolerance, samples: n, pass: max_dev <= tolerance })
    }

    /// Largest Euclidean size of `b''` over `n` evenly spaced samples.
    pub fn max_bending(&self, n: usize) -> Result<f64, CurveError> {
        let n = n.max(2);
        let (a, b) = self.domain;
        let mut m: f64 = 0.0;
        for i in 0..n {
            let s = a + (b - a) * i as f64 / (n - 1) as f64;
            m = m.max(self.derivatives(s, 2)?[1].max_abs());
        }
        Ok(m)
    }
}

fn eval4(c: &[Expr; 4], s: f64) -> Result<Vec4, CurveError> {
    Ok(Vec4::new(c[0].eval(s)?, c[1].eval(s)?, c[2].eval(s)?, c[3].eval(s)?))
}

fn project_out(v: Vec4, legs: &[(Vec4, f64)]) -> Vec4 {
    legs.iter().fold(v, |acc, (f, e)| acc - (*e * inner(v, *f)) * *f)
}

/// Fourth leg completing `F1, F2, F3` to a positively oriented tetrad.
fn fourth_leg(f1: Vec4, f2: Vec4, f3: Vec4, eps4: f64) -> Option<Vec4> {
    normalize(triple_cross(f1, f2, f3)).ok().map(|n| -eps4 * n)
}

fn timelike_index(eps: &[f64; 4]) -> usize {
    eps.iter().position(|e| *e < 0.0).map_or(0, |i| i + 1)
}

/// Frenet tetrad from the first four derivatives of a curve at `s`.
pub fn frenet_from_derivatives(s: f64, d1: Vec4, d2: Vec4, d3: Vec4, d4: Vec4) -> Result<FrenetFrame, CurveError> {
    let q1 = inner(d1, d1);
    if q1.abs() <= TAU_NULL {
        return Err(CurveError::NullResidual { s, what: "tangent" });
    }
    let f1 = d1;
    let e1 = sign_of(f1);

    let q2 = inner(d2, d2);
    if d2.max_abs() <= TAU_K {
        return Err(CurveError::FrameDegenerate { s, what: "k1", value: d2.max_abs() });
    }
    if q2.abs() <= TAU_NULL {
        return Err(CurveError::NullResidual { s, what: "principal normal" });
    }
    let k1 = q2.abs().sqrt();
    if k1 <= TAU_K {
        return Err(CurveError::FrameDegenerate { s, what: "k1", value: k1 });
    }
    let f2 = d2 * (1.0 / k1);
    let e2 = sign_of(f2);

    let u = project_out(d3, &[(f1, e1), (f2, e2)]) * (1.0 / k1);
    if u.max_abs() <= TAU_K {
        return Err(CurveError::FrameDegenerate { s, what: "k2", value: u.max_abs() });
    }
    let qu = inner(u, u);
    if qu.abs() <= TAU_NULL {
        return Err(CurveError::NullResidual { s, what: "binormal" });
    }
    let k2 = qu.abs().sqrt();
    if k2 <= TAU_K {
        return Err(CurveError::FrameDegenerate { s, what: "k2", value: k2 });
    }
    let f3 = u * (1.0 / k2);
    let e3 = sign_of(f3);

    let timelike_count = [e1, e2, e3].iter().filter(|e| **e < 0.0).count();
    if timelike_count > 1 {
        return Err(CurveError::NullResidual { s, what: "trinormal" });
    }
    let e4 = -e1 * e2 * e3;
    let f4 = fourth_leg(f1, f2, f3, e4).ok_or(CurveError::NullResidual { s, what: "trinormal" })?;
    let k3 = e4 * inner(d4, f4) / (k1 * k2);

    let eps = [e1, e2, e3, e4];
    Ok(FrenetFrame { f: [f1, f2, f3, f4], eps, k1, k2, k3, j: timelike_index(&eps) })
}

fn line_frame(direction: Vec4, s: f64) -> Result<FrenetFrame, CurveError> {
    let q = inner(direction, direction);
    if q.abs() <= TAU_NULL {
        return Err(CurveError::NullResidual { s, what: "tangent" });
    }
    let f1 = direction;
    let mut legs: Vec<(Vec4, f64)> = vec![(f1, sign_of(f1))];
    for i in 1..=4 {
        if legs.len() == 3 {
            break;
        }
        let r = project_out(Vec4::basis(i), &legs);
        let qr = inner(r, r);
        if qr.abs() <= 1e-6 || r.max_abs() <= 1e-6 {
            continue;
        }
        let leg = r * (1.0 / qr.abs().sqrt());
        legs.push((leg, sign_of(leg)));
    }
    if legs.len() < 3 {
        return Err(CurveError::NullResidual { s, what: "completion" });
    }
    let (e1, e2, e3) = (legs[0].1, legs[1].1, legs[2].1);
    let e4 = -e1 * e2 * e3;
    let f4 = fourth_leg(legs[0].0, legs[1].0, legs[2].0, e4)
        .ok_or(CurveError::NullResidual { s, what: "completion" })?;
    let eps = [e1, e2, e3, e4];
    Ok(FrenetFrame {
        f: [legs[0].0, legs[1].0, legs[2].0, f4],
        eps,
        k1: 0.0,
        k2: 0.0,
        k3: 0.0,
        j: timelike_index(&eps),
    })
}

impl FrenetFrame {
    /// Largest deviation of `<Fi, Fj>` from `eps_i delta_ij`.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { self.eps[i] } else { 0.0 };
                m = m.max((inner(self.f[i], self.f[j]) - want).abs());
            }
        }
        m
    }

    /// Sign `<Fi, Fi>` for a one-based leg index.
    pub fn sign(&self, i: usize) -> f64 {
        self.eps[i - 1]
    }

    /// Right-hand sides of the Frenet equations.
    pub fn derivative_rhs(&self) -> [Vec4; 4] {
        let [f1, f2, f3, f4] = self.f;
        let e = |i: usize| self.eps[i - 1];
        [
            self.k1 * f2,
            (e(3) * e(4) * self.k1) * f1 + self.k2 * f3,
            (e(1) * e(4) * self.k2) * f2 + self.k3 * f4,
            (e(1) * e(2) * self.k3) * f3,
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minkowski::det4;

    const S7: f64 = 2.6457513110645906;

    fn beta1() -> CurveSpec {
        CurveSpec::parse(["2*sinh(s)", "2*cosh(s)", "sqrt(3)*cos(s)", "sqrt(3)*sin(s)"], (-3.0, 3.0), DerivativeMode::Symbolic)
            .unwrap()
    }

    fn beta2() -> CurveSpec {
        CurveSpec::parse(["sqrt(3)*sinh(s)", "sqrt(3)*cosh(s)", "2*cos(s)", "2*sin(s)"], (-3.0, 3.0), DerivativeMode::Symbolic)
            .unwrap()
    }

    fn close(a: Vec4, b: Vec4, tol: f64) -> bool {
        (a - b).max_abs() <= tol
    }

    #[test]
    fn first_derivatives_at_zero() {
        let d = beta1().derivatives(0.0, 1).unwrap();
        assert!(close(d[0], Vec4::new(2.0, 0.0, 0.0, 3f64.sqrt()), 1e-15));
        let d = beta2().derivatives(0.0, 1).unwrap();
        assert!(close(d[0], Vec4::new(3f64.sqrt(), 0.0, 0.0, 2.0), 1e-15));
    }

    #[test]
    fn line_has_zero_acceleration() {
        let c = CurveSpec::parse(["0", "s", "0", "0"], (0.0, 1.0), DerivativeMode::Symbolic).unwrap();
        assert_eq!(c.derivatives(0.5, 2).unwrap()[1], Vec4::ZERO);
    }

    #[test]
    fn beta1_frame_matches_closed_form() {
        let s: f64 = 0.7;
        let fr = beta1().frenet(s).unwrap();
        let (ch, sh, c, sn) = (s.cosh(), s.sinh(), s.cos(), s.sin());
        let r3 = 3f64.sqrt();
        let want = [
            Vec4::new(2.0 * ch, 2.0 * sh, -r3 * sn, r3 * c),
            Vec4::new(2.0 / S7 * sh, 2.0 / S7 * ch, -(3.0f64 / 7.0).sqrt() * c, -(3.0f64 / 7.0).sqrt() * sn),
            Vec4::new(-r3 * ch, -r3 * sh, 2.0 * sn, -2.0 * c),
            Vec4::new((3.0f64 / 7.0).sqrt() * sh, (3.0f64 / 7.0).sqrt() * ch, 2.0 / S7 * c, 2.0 / S7 * sn),
        ];
        for i in 0..4 {
            assert!(close(fr.f[i], want[i], 1e-12), "F{} = {:?}", i + 1, fr.f[i]);
        }
        assert_eq!(fr.eps, [-1.0, 1.0, 1.0, 1.0]);
        assert_eq!(fr.j, 1);
    }

    #[test]
    fn curvatures_of_examples() {
        for (c, j) in [(beta1(), 1), (beta2(), 3)] {
            let fr = c.frenet(1.1).unwrap();
            assert!((fr.k1 - S7).abs() < 1e-12);
            assert!((fr.k2 - 4.0 * (3.0f64 / 7.0).sqrt()).abs() < 1e-12);
            assert!((fr.k3 - 1.0 / S7).abs() < 1e-12);
            assert_eq!(fr.j, j);
        }
    }

    #[test]
    fn tetrad_is_positively_oriented() {
        for c in [beta1(), beta2()] {
            let fr = c.frenet(-0.4).unwrap();
            assert!((det4(fr.f[0], fr.f[1], fr.f[2], fr.f[3]) - 1.0).abs() < 1e-12);
            assert!(fr.orthonormality_defect() < TOL_FRAME);
        }
    }

    #[test]
    fn line_is_degenerate_for_frenet() {
        let c = CurveSpec::parse(["0", "s", "0", "0"], (0.0, 1.0), DerivativeMode::Symbolic).unwrap();
        assert!(matches!(c.frenet(0.5), Err(CurveError::FrameDegenerate { what: "k1", .. })));
    }

    #[test]
    fn line_frames() {
        let c = CurveSpec::parse(["0", "s", "0", "0"], (0.0, 1.0), DerivativeMode::Symbolic).unwrap();
        let fr = c.frame_for_line().unwrap();
        assert_eq!(fr.j, 2);
        assert_eq!(fr.f[1], Vec4::basis(1));
        assert_eq!(fr.eps.iter().filter(|e| **e < 0.0).count(), 1);
        assert_eq!((fr.k1, fr.k2, fr.k3), (0.0, 0.0, 0.0));
        assert!((det4(fr.f[0], fr.f[1], fr.f[2], fr.f[3]) - 1.0).abs() < 1e-15);

        let c = CurveSpec::parse(["s", "0", "0", "0"], (0.0, 1.0), DerivativeMode::Symbolic).unwrap();
        let fr = c.frame_for_line().unwrap();
        assert_eq!(fr.j, 1);
        assert_eq!(fr.k1, 0.0);

        let c = CurveSpec::parse(["s", "s", "0", "0"], (0.0, 1.0), DerivativeMode::Symbolic).unwrap();
        assert!(matches!(c.frame_for_line(), Err(CurveError::NullResidual { .. })));
        assert!(matches!(beta1().frame_for_line(), Err(CurveError::NotALine(_))));
    }

    #[test]
    fn unit_speed_reports() {
        assert!(beta1().verify_unit_speed(100).unwrap().max_deviation <= 1e-9);
        assert!(beta2().verify_unit_speed(100).unwrap().pass);
        let c = CurveSpec::parse(["0", "2*s", "0", "0"], (0.0, 1.0), DerivativeMode::Symbolic).unwrap();
        let rep = c.verify_unit_speed(10).unwrap();
        assert!(!rep.pass);
        assert!((rep.max_deviation - 3.0).abs() < 1e-12);
    }

    #[test]
    fn out_of_domain() {
        let c = CurveSpec::parse(["0", "s", "0", "0"], (0.0, 1.0), DerivativeMode::Symbolic).unwrap();
        assert!(matches!(c.derivatives(1.5, 1), Err(CurveError::OutOfDomain { .. })));
    }

    #[test]
    fn finite_difference_mode_matches_symbolic() {
        let sym = beta1();
        let fd = CurveSpec::new(sym.components().clone(), sym.domain(), DerivativeMode::FiniteDifference(1e-4)).unwrap();
        let a = sym.frenet(0.3).unwrap();
        let b = fd.frenet(0.3).unwrap();
        assert!((a.k1 - b.k1).abs() < 1e-6);
        assert!((a.k2 - b.k2).abs() < 1e-5);
        assert!((a.k3 - b.k3).abs() < 1e-3);
        assert_eq!(a.j, b.j);
        assert!(fd.verify_unit_speed(50).unwrap().pass);
    }
}
