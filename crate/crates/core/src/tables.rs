//! Closed-form fundamental forms and shape operator of the standard canal families.
//!
//! Entries are indexed by `(s, t, w)`. The shape operator has the pattern
//!
//! ```text
//! S = [ S11   0    0  ]
//!     [ S21  S22   0  ]
//!     [ S31   0   S22 ]
//! ```
//!
//! `sq` is the signed square root `sigma sqrt(r'^2 - lambda e1)`, so both
//! branches are covered by the same expressions.

pub type Mat3 = [[f64; 3]; 3];

/// Coefficients `(g, h, S)` for frame type `j` and `lambda = +-1`.
///
/// `r, p, q2` are `r, r', r''` and `k1, k2, k3` the curvatures of the center curve.
#[allow(clippy::too_many_arguments)]
pub fn canal_tables(
    j: usize,
    lambda: f64,
    t: f64,
    w: f64,
    r: f64,
    p: f64,
    q2: f64,
    k1: f64,
    k2: f64,
    k3: f64,
    sq: f64,
) -> (Mat3, Mat3, Mat3) {
    let l = lambda;
    let (g11, g12, g13, g22, g33, h11, h12, h13, h22, h33, s11, s21, s31, s22);
    if j == 1 {
        let (ct, st, cw, sw) = (t.cos(), t.sin(), w.cos(), w.sin());
        let q = p * p + l;
        let f = ct * cw;
        g11 = (q / 4.0)
            * (r * r
                * (4.0 * k2 * k2 * cw * cw - 4.0 * k2 * k3 * ct * (2.0 * w).sin()
                    - (2.0 * (2.0 * t).cos() * cw * cw + (2.0 * w).cos() - 3.0) * k3 * k3)
                - 4.0 * l)
            - l * r * r * k1 * k1 * (ct * ct * cw * cw + (l * ct * ct * cw * cw - l) * p * p)
            - 2.0 * l * r * q2
            - l * r * r * q2 * q2 / q
            - (2.0 * k1 * r * cw / sq) * ((ct + l * k2 * r * p * st) * q + r * q2 * ct);
        g12 = r * r * (k2 * q * cw - l * k1 * p * sq * st - k3 * q * ct * sw) * cw;
        g13 = r * r * (k3 * q * st - l * k1 * p * sq * ct * sw);
        g22 = q * r * r * cw * cw;
        g33 = q * r * r;
        h11 = (l * r * q / 4.0)
            * (4.0 * k2 * k2 * cw * cw - ((2.0 * t).cos() + 2.0 * ct * ct * (2.0 * w).cos() - 3.0) * k3 * k3
                - 4.0 * k2 * k3 * ct * (2.0 * w).sin())
            - l * k1 * k1 * r * (l * ct * ct * cw * cw + (ct * ct * cw * cw - 1.0) * p * p)
            - q2
            - r * q2 * q2 / q
            - (l * k1 * cw / sq) * ((ct + 2.0 * l * k2 * r * p * st) * q + 2.0 * r * q2 * ct);
        h12 = l * r * (cw * k2 * q - l * k1 * st * p * sq - ct * k3 * sw * q) * cw;
        h13 = l * r * (k3 * q * st - l * k1 * p * sq * ct * sw);
        h22 = l * r * q * cw * cw;
        h33 = l * r * q;
        s11 = (l * k1 * k1 * r * q * f * f + l * q2 * (q + r * q2) + k1 * sq * (q + 2.0 * r * q2) * f)
            / (q + r * (l * k1 * sq * f + q2)).powi(2);
        s21 = (-l * sq * (k1 * p * st / cw - l * k2 * sq + l * k3 * sq * ct * w.tan()) / cw)
            / (r * (k1 * r * sq * ct + l * (q + r * q2) / cw));
        s31 = l * (l * k3 * q * st - k1 * p * sq * ct * sw) / (r * (1.0 + l * p * p + r * (k1 * sq * f + l * q2)));
        s22 = l / r;
    } else {
        let (ch, sh) = (f64::cosh, f64::sinh);
        let sech = |x: f64| 1.0 / x.cosh();
        let q = p * p - l;
        let (cht, sht, chw, shw) = (ch(t), sh(t), ch(w), sh(w));
        match j {
            2 => {
                let f = cht * chw;
                g11 = 0.25
                    * (4.0 - 4.0 * l * p * p
                        + r * r
                            * q
                            * ((ch(2.0 * t) + 2.0 * cht * cht * ch(2.0 * w) - 3.0) * k3 * k3
                                + (ch(2.0 * t) + 2.0 * ch(2.0 * w) * sht * sht + 3.0) * k2 * k2
                                - 4.0 * k2 * k3 * chw * chw * sh(2.0 * t)))
                    + r * r * k1 * k1 * ((cht * cht * chw * chw - 1.0) * p * p - l * cht * cht * chw * chw)
                    - 2.0 * l * r * q2
                    - l * r * r * q2 * q2 / q
                    + (2.0 * k1 * r / sq) * ((cht * chw + l * k2 * r * p * shw) * q + r * q2 * cht * chw);
                g12 = r * r * (l * (k1 * p * sq - k2 * l * q * shw) * sht + k3 * q * cht * shw) * chw;
                g13 = r * r * (l * k1 * p * sq * cht * shw + k2 * q * cht - k3 * q * sht);
                g22 = q * r * r * chw * chw;
                g33 = r * r * q;
                h11 = 0.25
                    * (r * q
                        * ((ch(2.0 * t) + 2.0 * cht * cht * ch(2.0 * w) - 3.0) * k3 * k3
                            - 4.0 * k2 * k3 * chw * chw * sh(2.0 * t)
                            + k2 * k2 * (3.0 + ch(2.0 * t) + 2.0 * sht * sht * ch(2.0 * w)))
                        - 4.0 * l * q2
                        + k1 * k1 * r * (p * p * (ch(2.0 * t) + 2.0 * cht * cht * ch(2.0 * w) - 3.0) - 4.0 * l * cht * cht * chw * chw)
                        + (4.0 * k1 / sq) * ((cht * chw + 2.0 * l * k2 * r * p * shw) * q + 2.0 * r * q2 * cht * chw)
                        - 4.0 * l * r * q2 * q2 / q);
                h12 = r * (l * k1 * p * sq * sht + q * (k3 * cht - k2 * sht) * shw) * chw;
                h13 = r * (l * k1 * p * sq * cht * shw + q * (k2 * cht - k3 * sht));
                h22 = r * q * chw * chw;
                h33 = r * q;
                s11 = (k1 * k1 * r * q * f * f + q2 * (q + r * q2) - l * k1 * sq * (q + 2.0 * r * q2) * f)
                    / (q + r * (-l * k1 * sq * f + q2)).powi(2);
                s21 = (l * k1 * p * sq * sht * sech(w) + (k3 * cht - k2 * sht) * q * w.tanh()) * sech(w)
                    / (r * ((q + r * q2) * sech(w) - l * k1 * r * sq * cht));
                s31 = (-k1 * p * sq * cht * shw - l * k2 * q * cht + l * k3 * q * sht)
                    / (r * (1.0 - l * p * p + r * (k1 * sq * f - l * q2)));
                s22 = 1.0 / r;
            }
            3 => {
                let f = sht * chw;
                g11 = (q / 4.0)
                    * (r * r
                        * (k3 * k3 * (3.0 + ch(2.0 * t) + 2.0 * ch(2.0 * w) * sht * sht) + 4.0 * k2 * k2 * chw * chw
                            - 4.0 * k2 * k3 * sht * sh(2.0 * w))
                        - 4.0 * l)
                    + r * r * k1 * k1 * (p * p * (1.0 + sht * sht * chw * chw) - l * sht * sht * chw * chw)
                    - 2.0 * l * r * q2
                    - l * r * r * q2 * q2 / q
                    - (2.0 * k1 * r * chw / sq) * (q * (sht + l * k2 * r * p * cht) + r * q2 * sht);
                g12 = r * r * (k2 * q * chw - l * k1 * p * sq * cht - k3 * q * sht * shw) * chw;
                g13 = r * r * (k3 * q * cht - l * k1 * p * sq * sht * shw);
                g22 = q * r * r * chw * chw;
                g33 = q * r * r;
                h11 = 2.0 * k1 * k2 * r * p * sq * cht * chw - l * k2 * k2 * r * q * chw * chw
                    - (l * k3 * k3 * r * q / 4.0) * (3.0 + ch(2.0 * t) + 2.0 * sht * sht * ch(2.0 * w))
                    + l * k2 * k3 * r * q * sht * sh(2.0 * w)
                    + (k1 * k1 * r / 4.0)
                        * (4.0 * chw * chw * sht * sht - l * p * p * (3.0 + ch(2.0 * t) + 2.0 * sht * sht * ch(2.0 * w)))
                    + q2
                    + r * q2 * q2 / q
                    + (l / sq) * (k1 * (q + 2.0 * r * q2) * chw * sht);
                h12 = r * (k1 * p * sq * cht - l * q * (k2 * chw - k3 * sht * shw)) * chw;
                h13 = r * (k1 * p * sq * sht * shw - l * k3 * q * cht);
                h22 = -l * r * q * chw * chw;
                h33 = -l * r * q;
                s11 = -l * (k1 * k1 * r * q * f * f + q2 * (q + r * q2) + l * k1 * sq * (q + 2.0 * r * q2) * f)
                    / (q + r * (l * k1 * sq * f + q2)).powi(2);
                s21 = sech(w) * (k1 * p * sq * cht * sech(w) - l * (k2 - k3 * sht * w.tanh()) * q)
                    / (r * (l * k1 * r * sq * sht + (q + r * q2) * sech(w)));
                s31 = (k1 * p * sq * sht * shw - l * k3 * q * cht) / (r * (q + r * (l * k1 * sq * f + q2)));
                s22 = -l / r;
            }
            _ => {
                let f = shw;
                g11 = (q / 4.0)
                    * (r * r
                        * (k2 * k2 * (2.0 * ch(2.0 * t) * chw * chw + ch(2.0 * w) - 3.0) + 4.0 * k3 * k3 * chw * chw
                            + 4.0 * k2 * k3 * cht * sh(2.0 * w))
                        - 4.0 * l)
                    + r * r * k1 * k1 * (p * p * chw * chw - l * shw * shw)
                    - 2.0 * l * r * q2
                    - l * r * r * q2 * q2 / q
                    + (2.0 * l * k1 * r / sq) * (k2 * r * p * q * chw * sht - l * (q + r * q2) * shw);
                g12 = r * r * q * (k2 * cht * shw + k3 * chw) * chw;
                g13 = -r * r * (l * k1 * p * sq * chw + k2 * q * sht);
                g22 = r * r * q * chw * chw;
                g33 = r * r * q;
                h11 = (-r * q / 4.0)
                    * (k2 * k2 * (ch(2.0 * t) + 2.0 * cht * cht * ch(2.0 * w) - 3.0)
                        + 4.0 * k3 * (k3 * chw * chw + k2 * cht * sh(2.0 * w)))
                    + l * k1 * k1 * r * (shw * shw - l * p * p * chw * chw)
                    + l * q2
                    + l * r * q2 * q2 / q
                    + (k1 / sq) * ((shw - 2.0 * l * k2 * r * p * sht * chw) * q + 2.0 * r * q2 * shw);
                h12 = -r * (k3 * chw + k2 * cht * shw) * q * chw;
                h13 = r * (l * k1 * p * sq * chw + k2 * q * sht);
                h22 = -r * q * chw * chw;
                h33 = -r * q;
                s11 = (-k1 * k1 * r * q * f * f - q2 * (q + r * q2) - l * k1 * sq * (q + 2.0 * r * q2) * f)
                    / (q + r * (l * k1 * sq * f + q2)).powi(2);
                s21 = -l * (k3 + k2 * w.tanh() * cht) * q / (r * (l * p * p - 1.0 + r * (k1 * sq * f + l * q2)));
                s31 = (k1 * p * sq * chw + l * k2 * q * sht) / (r * (l * p * p - 1.0 + r * (k1 * sq * f + l * q2)));
                s22 = -1.0 / r;
            }
        }
    }
    let g = [[g11, g12, g13], [g12, g22, 0.0], [g13, 0.0, g33]];
    let h = [[h11, h12, h13], [h12, h22, 0.0], [h13, 0.0, h33]];
    let s = [[s11, 0.0, 0.0], [s21, s22, 0.0], [s31, 0.0, s22]];
    (g, h, s)
}
