//! Radius functions `r(s)` with their first two derivatives.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{parse, Expr, ExprError, Var};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RadiusError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("radius must depend on s only")]
    ExtraVariables,
    #[error("constant radius must be positive and finite, got {0}")]
    BadConstant(f64),
    #[error("s = {s} lies outside the tabulated range [{min}, {max}]")]
    OutOfTable { s: f64, min: f64, max: f64 },
}

/// `r`, `r'` and `r''` at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusValues {
    pub r: f64,
    pub rp: f64,
    pub rpp: f64,
}

/// Radius of a canal hypersurface.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RadiusData", into = "RadiusData")]
pub enum RadiusProfile {
    /// Analytic radius with symbolic derivatives.
    Expr { r: Expr, rp: Expr, rpp: Expr },
    /// Constant radius of a tubular hypersurface.
    Constant(f64),
    /// Numerical solution of the minimal-radius equation.
    Tabulated(MinimalProfile),
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum RadiusData {
    Expr(Expr),
    Constant(f64),
    Tabulated(MinimalProfile),
}

impl TryFrom<RadiusData> for RadiusProfile {
    type Error = RadiusError;
    fn try_from(d: RadiusData) -> Result<Self, RadiusError> {
        match d {
            RadiusData::Expr(e) => RadiusProfile::from_expr(e),
            RadiusData::Constant(c) => RadiusProfile::constant(c),
            RadiusData::Tabulated(p) => Ok(RadiusProfile::Tabulated(p)),
        }
    }
}

impl From<RadiusProfile> for RadiusData {
    fn from(p: RadiusProfile) -> Self {
        match p {
            RadiusProfile::Expr { r, .. } => RadiusData::Expr(r),
            RadiusProfile::Constant(c) => RadiusData::Constant(c),
            RadiusProfile::Tabulated(t) => RadiusData::Tabulated(t),
        }
    }
}

impl RadiusProfile {
    /// Analytic radius; derivatives are taken symbolically.
    pub fn from_expr(r: Expr) -> Result<Self, RadiusError> {
        if r.uses_var(Var::T) || r.uses_var(Var::W) {
            return Err(RadiusError::ExtraVariables);
        }
        let rp = r.differentiate();
        let rpp = rp.differentiate();
        Ok(RadiusProfile::Expr { r, rp, rpp })
    }

    /// Parses an analytic radius; a constant expression yields `Constant`.
    pub fn parse(text: &str) -> Result<Self, RadiusError> {
        let e = parse(text)?;
        match e.constant_value() {
            Some(c) => RadiusProfile::constant(c),
            None => RadiusProfile::from_expr(e),
        }
    }

    pub fn constant(c: f64) -> Result<Self, RadiusError> {
        if c > 0.0 && c.is_finite() {
            Ok(RadiusProfile::Constant(c))
        } else {
            Err(RadiusError::BadConstant(c))
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, RadiusProfile::Constant(_))
    }

    pub fn eval(&self, s: f64) -> Result<RadiusValues, RadiusError> {
        match self {
            RadiusProfile::Expr { r, rp, rpp } => Ok(RadiusValues { r: r.eval(s)?, rp: rp.eval(s)?, rpp: rpp.eval(s)? }),
            RadiusProfile::Constant(c) => Ok(RadiusValues { r: *c, rp: 0.0, rpp: 0.0 }),
            RadiusProfile::Tabulated(p) => p.eval(s),
        }
    }

    /// Short human-readable description.
    pub fn describe(&self) -> String {
        match self {
            RadiusProfile::Expr { r, .. } => r.to_string(),
            RadiusProfile::Constant(c) => format!("{c}"),
            RadiusProfile::Tabulated(p) => format!(
                "minimal profile (e1*lambda = {}, c1 = {}, {} nodes)",
                p.eps1_lambda,
                p.c1,
                p.s.len()
            ),
        }
    }
}

/// Tabulated solution of `r' = sign * sqrt(e1*lambda + |c1/r|^(4/3))`.
///
/// `r` is interpolated by cubic Hermite splines through the stored slopes.
/// `r'` and `r''` are evaluated from the equation at the interpolated `r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimalProfile {
    pub eps1_lambda: f64,
    pub c1: f64,
    pub sign: f64,
    pub s: Vec<f64>,
    pub r: Vec<f64>,
    pub rp: Vec<f64>,
}

impl MinimalProfile {
    /// `|c1/r|^(4/3)`.
    pub fn forcing(&self, r: f64) -> f64 {
        (self.c1 / r).abs().powf(4.0 / 3.0)
    }

    /// Right-hand side of the first-order equation.
    pub fn slope(&self, r: f64) -> f64 {
        self.sign * (self.eps1_lambda + self.forcing(r)).max(0.0).sqrt()
    }

    pub fn range(&self) -> (f64, f64) {
        (self.s[0], *self.s.last().unwrap_or(&self.s[0]))
    }

    /// Segment index and local coordinate of `s`.
    fn locate(&self, s: f64) -> Result<(usize, f64, f64), RadiusError> {
        let (min, max) = self.range();
        let slack = 1e-12 * (1.0 + s.abs());
        if !(s >= min - slack && s <= max + slack) || self.s.len() < 2 {
            return Err(RadiusError::OutOfTable { s, min, max });
        }
        let s = s.clamp(min, max);
        let i = self.s.partition_point(|x| *x <= s).clamp(1, self.s.len() - 1) - 1;
        let h = self.s[i + 1] - self.s[i];
        Ok((i, (s - self.s[i]) / h, h))
    }

    /// Hermite-interpolated radius.
    pub fn interpolate(&self, s: f64) -> Result<f64, RadiusError> {
        let (i, x, h) = self.locate(s)?;
        let (x2, x3) = (x * x, x * x * x);
        let h00 = 2.0 * x3 - 3.0 * x2 + 1.0;
        let h10 = x3 - 2.0 * x2 + x;
        let h01 = -2.0 * x3 + 3.0 * x2;
        let h11 = x3 - x2;
        Ok(h00 * self.r[i] + h10 * h * self.rp[i] + h01 * self.r[i + 1] + h11 * h * self.rp[i + 1])
    }

    /// Derivative of the Hermite interpolant.
    pub fn interpolate_derivative(&self, s: f64) -> Result<f64, RadiusError> {
        let (i, x, h) = self.locate(s)?;
        let x2 = x * x;
        let d00 = 6.0 * x2 - 6.0 * x;
        let d10 = 3.0 * x2 - 4.0 * x + 1.0;
        let d11 = 3.0 * x2 - 2.0 * x;
        Ok((d00 * (self.r[i] - self.r[i + 1])) / h + d10 * self.rp[i] + d11 * self.rp[i + 1])
    }

    pub fn eval(&self, s: f64) -> Result<RadiusValues, RadiusError> {
        let r = self.interpolate(s)?;
        Ok(RadiusValues { r, rp: self.slope(r), rpp: -2.0 / 3.0 * self.forcing(r) / r })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analytic_radius_and_derivatives() {
        let p = RadiusProfile::parse("2*s").unwrap();
        assert_eq!(p.eval(1.5).unwrap(), RadiusValues { r: 3.0, rp: 2.0, rpp: 0.0 });
        let p = RadiusProfile::parse("1 + s^2").unwrap();
        assert_eq!(p.eval(2.0).unwrap(), RadiusValues { r: 5.0, rp: 4.0, rpp: 2.0 });
    }

    #[test]
    fn constant_radius() {
        assert_eq!(RadiusProfile::parse("1.5").unwrap(), RadiusProfile::Constant(1.5));
        assert!(RadiusProfile::parse("-1").is_err());
        assert!(RadiusProfile::parse("t").is_err());
    }

    #[test]
    fn serde_round_trip() {
        let p = RadiusProfile::parse("2*s + 1").unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"expr":"2*s + 1"}"#);
        let back: RadiusProfile = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn hermite_reproduces_cubics() {
        let f = |s: f64| 1.0 + s - 0.5 * s * s + 0.25 * s * s * s;
        let df = |s: f64| 1.0 - s + 0.75 * s * s;
        let s: Vec<f64> = vec![0.0, 0.5, 1.25, 2.0];
        let p = MinimalProfile {
            eps1_lambda: 1.0,
            c1: 1.0,
            sign: 1.0,
            r: s.iter().map(|x| f(*x)).collect(),
            rp: s.iter().map(|x| df(*x)).collect(),
            s,
        };
        for x in [0.0, 0.1, 0.77, 1.3, 2.0] {
            assert!((p.interpolate(x).unwrap() - f(x)).abs() < 1e-14);
        }
        assert!(p.interpolate(2.5).is_err());
    }
}
