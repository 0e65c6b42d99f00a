//! Fundamental forms, shape operator and curvatures of canal hypersurfaces.
//!
//! Two independent routes are provided. The closed-form route evaluates the
//! known expressions for the principal curvatures and, for the standard
//! variant, the full coefficient tables. The numeric route differentiates the
//! parametrization by central finite differences and diagonalizes `g^{-1} h`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canal::{CanalError, CanalSurface, Local, Variant, DEGENERATE_A};
use crate::minkowski::{inner, normalize, triple_cross, Vec4};
use crate::tables::canal_tables;

pub use crate::tables::Mat3;

/// Step of the finite-difference oracle for first partials.
pub const FD_STEP: f64 = 1e-3;
/// Step of the nested stencil for second partials.
pub const FD_STEP_SECOND: f64 = 8e-3;
/// Relative size below which the focal denominator counts as a pole.
pub const POLE_TOL: f64 = 1e-12;
/// Nodes whose focal conditioning falls below this are treated as near-focal.
pub const FOCAL_MARGIN: f64 = 0.05;
/// Relative imaginary part below which an eigenvalue pair is taken as real.
pub const IMAG_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurvatureError {
    #[error("degenerate node: A = {a:e} vanishes at w = {w}")]
    Degenerate { a: f64, w: f64 },
    #[error("curvature has a pole at this node (focal denominator {denominator:e})")]
    PoleAtNode { denominator: f64 },
    #[error("parametrization is rank deficient at this node")]
    RankDeficient,
    #[error("first fundamental form is singular (det g = {det:e})")]
    SingularMetric { det: f64 },
    #[error("shape operator has complex eigenvalues (imaginary part {imag:e})")]
    ComplexEigenvalues { imag: f64 },
    #[error("curvatures are not defined for null-cone envelopes")]
    NullHypersurface,
    #[error(transparent)]
    Canal(#[from] CanalError),
}

/// How a curvature report was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    ClosedForm,
    Numeric,
}

/// Curvature data at one node.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureReport {
    pub route: Route,
    pub s: f64,
    pub t: f64,
    pub w: f64,
    /// Unit normal.
    pub normal: Vec4,
    /// Causal sign `<N, N>` of the normal.
    pub eps_n: f64,
    /// Principal curvatures ordered as the double root twice, then the simple root.
    pub principal: [f64; 3],
    /// Gauss-Kronecker curvature `det S`.
    pub gauss: f64,
    /// Mean curvature `tr S / 3`.
    pub mean: f64,
    /// Family function, the weight of `F2` in the sphere direction.
    pub f_j: f64,
    /// Factor `A` whose square divides out of `det g`.
    pub a: f64,
    pub g: Option<Mat3>,
    pub h: Option<Mat3>,
    pub shape: Option<Mat3>,
}

/// First and second partial derivatives of the parametrization in `(s, t, w)` order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Partials {
    pub first: [Vec4; 3],
    pub second: [[Vec4; 3]; 3],
}

fn check_node(surface: &CanalSurface, w: f64) -> Result<(), CurvatureError> {
    if surface.config().lambda == 0 {
        return Err(CurvatureError::NullHypersurface);
    }
    let a = surface.a_factor(w);
    if a.abs() < DEGENERATE_A {
        return Err(CurvatureError::Degenerate { a, w });
    }
    Ok(())
}

/// Focal denominator `Q + lambda e2 r k1 f sq + r r''` and its natural scale.
fn focal_denominator(surface: &CanalSurface, local: &Local, t: f64, w: f64) -> (f64, f64) {
    let lambda = surface.config().lambda as f64;
    let f = surface.weights(t, w)[0];
    let e2 = local.frame.eps[1];
    let (r, rpp) = (local.radius.r, local.radius.rpp);
    let bend = lambda * e2 * r * local.frame.k1 * f * local.sq;
    let d = local.q + bend + r * rpp;
    (d, local.q.abs() + bend.abs() + (r * rpp).abs())
}

/// `|D| / scale` of the focal denominator; small values mark nodes close to a focal point.
pub fn focal_conditioning(surface: &CanalSurface, s: f64, t: f64, w: f64) -> Result<f64, CurvatureError> {
    let local = surface.local(s)?;
    let (d, scale) = focal_denominator(surface, &local, t, w);
    Ok(if scale > 0.0 { d.abs() / scale } else { f64::INFINITY })
}

/// Whether curvature at the node is well conditioned: `|A|` clears `DEGENERATE_A`
/// and the focal conditioning clears `FOCAL_MARGIN`.
pub fn is_regular_node(surface: &CanalSurface, s: f64, t: f64, w: f64) -> Result<bool, CurvatureError> {
    if surface.a_factor(w).abs() < DEGENERATE_A {
        return Ok(false);
    }
    Ok(focal_conditioning(surface, s, t, w)? >= FOCAL_MARGIN)
}

/// Curvatures from the closed-form expressions.
pub fn closed_form(surface: &CanalSurface, s: f64, t: f64, w: f64) -> Result<CurvatureReport, CurvatureError> {
    surface.local(s)?;
    closed_form_unchecked(surface, s, t, w)
}

/// Closed form without the domain check on `s`, for differencing near the ends of the domain.
pub(crate) fn closed_form_unchecked(
    surface: &CanalSurface,
    s: f64,
    t: f64,
    w: f64,
) -> Result<CurvatureReport, CurvatureError> {
    check_node(surface, w)?;
    let config = surface.config();
    let local = surface.local_unchecked(s)?;
    let lambda = config.lambda as f64;
    let c = config.normal_sign();
    let r = local.radius.r;
    let f = surface.weights(t, w)[0];
    let (d, scale) = focal_denominator(surface, &local, t, w);
    if d.abs() <= POLE_TOL * scale.max(1.0) {
        return Err(CurvatureError::PoleAtNode { denominator: d });
    }
    let mu3 = c * (local.radius.rpp + lambda * local.frame.eps[1] * local.frame.k1 * f * local.sq) / d;
    let mu1 = c / r;
    let (g, h, shape) = match config.variant {
        Variant::Standard => {
            let fr = &local.frame;
            let (g, h, sh) = canal_tables(
                config.j,
                lambda,
                t,
                w,
                r,
                local.radius.rp,
                local.radius.rpp,
                fr.k1,
                fr.k2,
                fr.k3,
                local.sq,
            );
            (Some(g), Some(h), Some(sh))
        }
        Variant::Alt => (None, None, None),
    };
    Ok(CurvatureReport {
        route: Route::ClosedForm,
        s,
        t,
        w,
        normal: surface.normal_closed_form(&local, t, w),
        eps_n: lambda,
        principal: [mu1, mu1, mu3],
        gauss: mu3 / (r * r),
        mean: (2.0 * mu1 + mu3) / 3.0,
        f_j: f,
        a: surface.a_factor(w),
        g,
        h,
        shape,
    })
}

/// Closed-form `det g = -lambda A^2 r^4 |Q| D^2`.
pub fn closed_form_det_g(surface: &CanalSurface, s: f64, t: f64, w: f64) -> Result<f64, CurvatureError> {
    let local = surface.local(s)?;
    let lambda = surface.config().lambda as f64;
    let a = surface.a_factor(w);
    let (d, _) = focal_denominator(surface, &local, t, w);
    let r = local.radius.r;
    Ok(-lambda * a * a * r.powi(4) * local.q.abs() * d * d)
}

const STENCIL: [(i32, f64); 4] = [(-2, 1.0), (-1, -8.0), (1, 8.0), (2, -1.0)];

/// First and second partial derivatives by five-point central differences.
///
/// First partials use `FD_STEP`. Second partials nest the same stencil with
/// `FD_STEP_SECOND`, which balances truncation against roundoff.
pub fn partials(surface: &CanalSurface, s: f64, t: f64, w: f64) -> Result<Partials, CurvatureError> {
    let mut first = [Vec4::default(); 3];
    let h = FD_STEP;
    let near = STENCIL.iter().map(|(m, _)| surface.local_unchecked(s + *m as f64 * h)).collect::<Result<Vec<_>, _>>()?;
    for (i, slot) in first.iter_mut().enumerate() {
        let mut acc = Vec4::default();
        for (idx, (m, cm)) in STENCIL.into_iter().enumerate() {
            let p = match i {
                0 => surface.point_at(&near[idx], t, w)?,
                1 => surface.point_unchecked(s, t + m as f64 * h, w)?,
                _ => surface.point_unchecked(s, t, w + m as f64 * h)?,
            };
            acc += cm * p;
        }
        *slot = (1.0 / (12.0 * h)) * acc;
    }
    let h = FD_STEP_SECOND;
    let locals = (-4..=4).map(|k| surface.local_unchecked(s + k as f64 * h)).collect::<Result<Vec<_>, _>>()?;
    let eval = |off: [i32; 3]| -> Result<Vec4, CanalError> {
        surface.point_at(&locals[(off[0] + 4) as usize], t + off[1] as f64 * h, w + off[2] as f64 * h)
    };
    let mut second = [[Vec4::default(); 3]; 3];
    for i in 0..3 {
        for j in i..3 {
            let mut acc = Vec4::default();
            for (m, cm) in STENCIL {
                for (n, cn) in STENCIL {
                    let mut off = [0; 3];
                    off[i] += m;
                    off[j] += n;
                    acc += (cm * cn) * eval(off)?;
                }
            }
            second[i][j] = (1.0 / (144.0 * h * h)) * acc;
            second[j][i] = second[i][j];
        }
    }
    Ok(Partials { first, second })
}

/// Unit normal and its causal sign, oriented along the closed-form normal.
pub fn unit_normal(surface: &CanalSurface, s: f64, t: f64, w: f64, route: Route) -> Result<(Vec4, f64), CurvatureError> {
    check_node(surface, w)?;
    match route {
        Route::ClosedForm => {
            let local = surface.local(s)?;
            Ok((surface.normal_closed_form(&local, t, w), surface.config().lambda as f64))
        }
        Route::Numeric => {
            surface.local(s)?;
            let p = partials(surface, s, t, w)?;
            numeric_normal(surface, s, t, w, &p)
        }
    }
}

fn numeric_normal(surface: &CanalSurface, s: f64, t: f64, w: f64, p: &Partials) -> Result<(Vec4, f64), CurvatureError> {
    let [cs, ct, cw] = p.first;
    let n = triple_cross(cs, ct, cw);
    let scale = cs.max_abs() * ct.max_abs() * cw.max_abs();
    if n.max_abs() <= 1e-12 * scale.max(1e-300) {
        return Err(CurvatureError::RankDeficient);
    }
    let n = normalize(n).map_err(|_| CurvatureError::RankDeficient)?;
    let eps_n = inner(n, n).signum();
    let local = surface.local_unchecked(s)?;
    let reference = surface.normal_closed_form(&local, t, w);
    let n = if eps_n * inner(n, reference) < 0.0 { -n } else { n };
    Ok((n, eps_n))
}

/// Determinant of a 3x3 matrix.
pub fn det3(m: &Mat3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn max_abs3(m: &Mat3) -> f64 {
    m.iter().flatten().fold(0.0, |a, x| a.max(x.abs()))
}

/// `S = g^{-1} h`.
pub fn shape_operator(g: &Mat3, h: &Mat3) -> Result<Mat3, CurvatureError> {
    let det = det3(g);
    let scale = max_abs3(g);
    if !(det.abs() > 1e-12 * scale.powi(3)) {
        return Err(CurvatureError::SingularMetric { det });
    }
    let gm = nalgebra::Matrix3::from_fn(|i, j| g[i][j]);
    let hm = nalgebra::Matrix3::from_fn(|i, j| h[i][j]);
    let inv = gm.try_inverse().ok_or(CurvatureError::SingularMetric { det })?;
    let s = inv * hm;
    Ok(std::array::from_fn(|i| std::array::from_fn(|j| s[(i, j)])))
}

/// Real roots of `x^3 + a x^2 + b x + c`, rejecting genuinely complex pairs.
pub fn solve_cubic(a: f64, b: f64, c: f64) -> Result<[f64; 3], CurvatureError> {
    solve_cubic_scaled(a, b, c, 1.0)
}

/// As `solve_cubic`, with imaginary parts up to `IMAG_TOL` times the larger of
/// `scale` and the root magnitudes truncated to real.
fn solve_cubic_scaled(a: f64, b: f64, c: f64, scale: f64) -> Result<[f64; 3], CurvatureError> {
    let shift = -a / 3.0;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let disc = (q / 2.0).powi(2) + (p / 3.0).powi(3);
    let mut roots = if disc > 0.0 {
        let sd = disc.sqrt();
        let u = (-q / 2.0 + sd).cbrt();
        let v = (-q / 2.0 - sd).cbrt();
        let re = -(u + v) / 2.0 + shift;
        let imag = 3f64.sqrt() / 2.0 * (u - v).abs();
        let real = u + v + shift;
        if imag > IMAG_TOL * real.abs().max(re.abs()).max(scale).max(1.0) {
            return Err(CurvatureError::ComplexEigenvalues { imag });
        }
        [real, re, re]
    } else if p == 0.0 {
        [shift; 3]
    } else {
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        std::array::from_fn(|k| m * (phi - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() + shift)
    };
    for x in roots.iter_mut() {
        let f = ((*x + a) * *x + b) * *x + c;
        let df = (3.0 * *x + 2.0 * a) * *x + b;
        if df.abs() > 1e-8 * (1.0 + x.abs()).powi(2) {
            let y = *x - f / df;
            if y.is_finite() && (((y + a) * y + b) * y + c).abs() < f.abs() {
                *x = y;
            }
        }
    }
    Ok(roots)
}

/// Eigenvalues of `S`, ordered as the closest pair followed by the remaining root.
///
/// Complex pairs whose imaginary part is below `IMAG_TOL` relative to the
/// Frobenius norm of `S` are truncated to real.
pub fn principal_curvatures(shape: &Mat3) -> Result<[f64; 3], CurvatureError> {
    let m = shape;
    let tr = m[0][0] + m[1][1] + m[2][2];
    let minors = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0] + m[1][1] * m[2][2]
        - m[1][2] * m[2][1];
    let norm = m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let [x, y, z] = solve_cubic_scaled(-tr, minors, -det3(m), norm)?;
    let pairs = [(x, y, z), (x, z, y), (y, z, x)];
    let (p, q, r) = pairs
        .into_iter()
        .min_by(|a, b| (a.0 - a.1).abs().total_cmp(&(b.0 - b.1).abs()))
        .expect("three candidates");
    Ok([p.min(q), p.max(q), r])
}

/// Curvatures from finite-difference fundamental forms.
pub fn numeric(surface: &CanalSurface, s: f64, t: f64, w: f64) -> Result<CurvatureReport, CurvatureError> {
    check_node(surface, w)?;
    surface.local(s)?;
    let p = partials(surface, s, t, w)?;
    let (normal, eps_n) = numeric_normal(surface, s, t, w, &p)?;
    let g: Mat3 = std::array::from_fn(|i| std::array::from_fn(|j| inner(p.first[i], p.first[j])));
    let h: Mat3 = std::array::from_fn(|i| std::array::from_fn(|j| inner(p.second[i][j], normal)));
    let shape = shape_operator(&g, &h)?;
    let principal = principal_curvatures(&shape)?;
    Ok(CurvatureReport {
        route: Route::Numeric,
        s,
        t,
        w,
        normal,
        eps_n,
        principal,
        gauss: det3(&shape),
        mean: (shape[0][0] + shape[1][1] + shape[2][2]) / 3.0,
        f_j: surface.weights(t, w)[0],
        a: surface.a_factor(w),
        g: Some(g),
        h: Some(h),
        shape: Some(shape),
    })
}

/// Curvatures by the requested route.
pub fn curvatures(surface: &CanalSurface, s: f64, t: f64, w: f64, route: Route) -> Result<CurvatureReport, CurvatureError> {
    match route {
        Route::ClosedForm => closed_form(surface, s, t, w),
        Route::Numeric => numeric(surface, s, t, w),
    }
}

/// `(K, H)` of a tubular hypersurface of radius `r` around a curve with first curvature `k1`.
///
/// `f` is the weight of `F2` in the tube direction, signed by `sigma`.
pub fn tubular_curvatures(
    j: usize,
    lambda: i32,
    sigma: f64,
    r: f64,
    k1: f64,
    t: f64,
    w: f64,
) -> Result<(f64, f64), CurvatureError> {
    let variant = match (j, lambda) {
        (1, 1) => Variant::Standard,
        (_, 1) if j > 1 => Variant::Alt,
        (2..=4, -1) => Variant::Standard,
        _ => {
            return Err(CanalError::Inadmissible(format!("no tubular hypersurface with j = {j}, lambda = {lambda}")).into())
        }
    };
    let a = crate::canal::a_factor(j, variant, w);
    if a.abs() < DEGENERATE_A {
        return Err(CurvatureError::Degenerate { a, w });
    }
    let x = r * k1 * sigma * crate::canal::weights(j, variant, t, w)[0];
    let kf = x / r;
    let (kd, hn, hd) = match (j, lambda) {
        (1, 1) | (2, _) => (1.0 + x, 2.0 + 3.0 * x, 1.0 + x),
        (3, -1) => (-1.0 + x, 2.0 - 3.0 * x, 1.0 - x),
        _ => (1.0 - x, 2.0 - 3.0 * x, -1.0 + x),
    };
    if kd.abs() <= POLE_TOL || hd.abs() <= POLE_TOL {
        return Err(CurvatureError::PoleAtNode { denominator: kd });
    }
    Ok((kf / (r * r * kd), hn / (3.0 * r * hd)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canal::CanalConfig;
    use crate::curve::{CurveSpec, DerivativeMode};
    use crate::radius::RadiusProfile;

    fn beta1() -> CurveSpec {
        CurveSpec::parse(["2*sinh(s)", "2*cosh(s)", "sqrt(3)*cos(s)", "sqrt(3)*sin(s)"], (0.25, 3.0), DerivativeMode::Symbolic)
            .unwrap()
    }

    fn beta2() -> CurveSpec {
        CurveSpec::parse(["sqrt(3)*sinh(s)", "sqrt(3)*cosh(s)", "2*cos(s)", "2*sin(s)"], (0.25, 3.0), DerivativeMode::Symbolic)
            .unwrap()
    }

    fn surface(curve: CurveSpec, j: usize, lambda: i32, sigma: f64, radius: &str) -> CanalSurface {
        let cfg = CanalConfig::new(j, lambda, RadiusProfile::parse(radius).unwrap()).with_sigma(sigma);
        CanalSurface::new(curve, cfg).unwrap()
    }

    #[test]
    fn beta1_closed_form_golden() {
        let c = surface(beta1(), 1, 1, 1.0, "2*s");
        let rep = closed_form(&c, 1.0, 0.0, 0.0).unwrap();
        let mu3 = 5.0 * (35f64.sqrt() + 14.0) / (5.0 + 2.0 * 35f64.sqrt()).powi(2);
        assert!((rep.principal[2] - mu3).abs() < 1e-12);
        assert!((rep.gauss - 0.0878687).abs() < 1e-6);
        assert!((rep.mean - 0.4504916).abs() < 1e-6);
    }

    fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
        assert!((a - b).abs() <= tol * (1.0 + b.abs()), "{what}: {a} vs {b}");
    }

    fn compare_routes(c: &CanalSurface, s: f64, t: f64, w: f64) {
        let cf = closed_form(c, s, t, w).unwrap();
        let nm = numeric(c, s, t, w).unwrap();
        assert_close(nm.gauss, cf.gauss, 1e-4, "K");
        assert_close(nm.mean, cf.mean, 1e-4, "H");
        for k in 0..3 {
            assert_close(nm.principal[k], cf.principal[k], 1e-4, "mu");
        }
        assert_eq!(nm.eps_n, cf.eps_n);
        assert!((nm.normal - cf.normal).max_abs() < 1e-6);
        if let (Some(g), Some(h), Some(sh)) = (cf.g, cf.h, cf.shape) {
            let (gn, hn, sn) = (nm.g.unwrap(), nm.h.unwrap(), nm.shape.unwrap());
            for i in 0..3 {
                for j in 0..3 {
                    assert_close(gn[i][j], g[i][j], 1e-6, "g");
                    assert_close(hn[i][j], h[i][j], 1e-4, "h");
                    assert_close(sn[i][j], sh[i][j], 1e-4, "S");
                }
            }
            let det = closed_form_det_g(c, s, t, w).unwrap();
            assert_close(det3(&g), det, 1e-9, "det g");
        }
    }

    #[test]
    fn routes_agree_on_beta1_both_branches() {
        for sigma in [1.0, -1.0] {
            for lambda in [1, -1] {
                let c = surface(beta1(), 1, lambda, sigma, "2*s");
                compare_routes(&c, 1.0, 0.3, 0.4);
                compare_routes(&c, 1.7, -1.1, -0.6);
            }
        }
    }

    #[test]
    fn routes_agree_on_beta2_both_branches() {
        for sigma in [1.0, -1.0] {
            for lambda in [1, -1] {
                let c = surface(beta2(), 3, lambda, sigma, "2*s");
                compare_routes(&c, 1.0, 0.5, 0.3);
                compare_routes(&c, 0.8, -0.2, -0.7);
            }
        }
    }

    #[test]
    fn alternate_variant_routes_agree() {
        let cfg = CanalConfig::new(3, 1, RadiusProfile::parse("s/4 + 1").unwrap()).with_variant(Variant::Alt);
        let c = CanalSurface::new(beta2(), cfg).unwrap();
        compare_routes(&c, 1.0, 0.4, 0.7);
        let cfg = CanalConfig::new(3, 1, RadiusProfile::parse("s/4 + 1").unwrap())
            .with_variant(Variant::Alt)
            .with_sigma(-1.0);
        let c = CanalSurface::new(beta2(), cfg).unwrap();
        compare_routes(&c, 1.2, -0.3, -0.5);
    }

    #[test]
    fn det_g_sign_on_both_variants() {
        for (variant, radius) in [(Variant::Alt, "s/4 + 1"), (Variant::Standard, "2*s")] {
            for lambda in [1, -1] {
                if variant == Variant::Alt && lambda == -1 {
                    continue;
                }
                let cfg = CanalConfig::new(3, lambda, RadiusProfile::parse(radius).unwrap()).with_variant(variant);
                let c = CanalSurface::new(beta2(), cfg).unwrap();
                let det = closed_form_det_g(&c, 1.0, 0.4, 0.7).unwrap();
                let g = numeric(&c, 1.0, 0.4, 0.7).unwrap().g.unwrap();
                assert_close(det3(&g), det, 1e-6, "det g");
                assert_eq!(det.signum(), -(lambda as f64));
            }
        }
    }

    #[test]
    fn tubular_matches_closed_form() {
        for (j, lambda, curve) in [(1, 1, beta1()), (3, 1, beta2()), (3, -1, beta2())] {
            for sigma in [1.0, -1.0] {
                let mut cfg = CanalConfig::new(j, lambda, RadiusProfile::constant(0.7).unwrap()).with_sigma(sigma);
                if j > 1 && lambda == 1 {
                    cfg = cfg.with_variant(Variant::Alt);
                }
                let c = CanalSurface::new(curve.clone(), cfg).unwrap();
                let (t, w) = (0.4, 0.6);
                let rep = closed_form(&c, 1.0, t, w).unwrap();
                let k1 = curve.frenet(1.0).unwrap().k1;
                let (k, h) = tubular_curvatures(j, lambda, sigma, 0.7, k1, t, w).unwrap();
                assert_close(k, rep.gauss, 1e-12, "tube K");
                assert_close(h, rep.mean, 1e-12, "tube H");
            }
        }
    }

    #[test]
    fn degenerate_nodes_are_rejected() {
        let c = surface(beta1(), 1, 1, 1.0, "2*s");
        let w = std::f64::consts::FRAC_PI_2;
        assert!(matches!(closed_form(&c, 1.0, 0.0, w), Err(CurvatureError::Degenerate { .. })));
        assert!(matches!(numeric(&c, 1.0, 0.0, w), Err(CurvatureError::Degenerate { .. })));
    }

    #[test]
    fn cubic_roots() {
        let r = solve_cubic(-6.0, 11.0, -6.0).unwrap();
        let mut v = r.to_vec();
        v.sort_by(f64::total_cmp);
        for (x, want) in v.iter().zip([1.0, 2.0, 3.0]) {
            assert!((x - want).abs() < 1e-12);
        }
        // (x-2)^2 (x+1)
        let r = principal_curvatures(&[[2.0, 0.0, 0.0], [1.0, 2.0, 0.0], [0.5, 0.0, -1.0]]).unwrap();
        assert!((r[0] - 2.0).abs() < 1e-7 && (r[1] - 2.0).abs() < 1e-7 && (r[2] + 1.0).abs() < 1e-12);
        assert!(matches!(solve_cubic(0.0, 1.0, 0.0), Err(CurvatureError::ComplexEigenvalues { .. })));
    }

    #[test]
    fn singular_metric() {
        let g = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 0.0]];
        assert!(matches!(shape_operator(&g, &g), Err(CurvatureError::SingularMetric { .. })));
    }
}
