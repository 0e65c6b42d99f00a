//! Linear algebra of Lorentz-Minkowski 4-space with signature (-,+,+,+).
//!
//! Every operation here is a pure function on `Copy` values.

use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Absolute tolerance on `<x,x>` below which a vector is classified as null.
pub const TAU_NULL: f64 = 1e-10;

/// The metric diagonal `diag(-1, 1, 1, 1)`.
pub const SIGNATURE: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];

/// A point or vector of Minkowski 4-space.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Vec4 {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub x4: f64,
}

/// Causal character of a vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Null,
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum MinkowskiError {
    #[error("cannot normalize a null vector (<x,x> = {0:e})")]
    NullVector(f64),
}

impl Vec4 {
    pub const ZERO: Vec4 = Vec4::new(0.0, 0.0, 0.0, 0.0);

    pub const fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Self {
        Vec4 { x1, x2, x3, x4 }
    }

    /// The `i`-th canonical basis vector, `i` in `1..=4`.
    pub fn basis(i: usize) -> Self {
        let mut a = [0.0; 4];
        a[i - 1] = 1.0;
        a.into()
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.x1, self.x2, self.x3, self.x4]
    }

    pub fn is_finite(self) -> bool {
        self.to_array().iter().all(|c| c.is_finite())
    }

    /// Largest absolute component.
    pub fn max_abs(self) -> f64 {
        self.to_array().iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    /// Minkowski inner product with `other`.
    pub fn dot(self, other: Vec4) -> f64 {
        inner(self, other)
    }
}

impl From<[f64; 4]> for Vec4 {
    fn from(a: [f64; 4]) -> Self {
        Vec4::new(a[0], a[1], a[2], a[3])
    }
}

impl From<Vec4> for [f64; 4] {
    fn from(v: Vec4) -> Self {
        v.to_array()
    }
}

impl Index<usize> for Vec4 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        match i {
            0 => &self.x1,
            1 => &self.x2,
            2 => &self.x3,
            3 => &self.x4,
            _ => panic!("Vec4 index {i} out of range"),
        }
    }
}

impl Add for Vec4 {
    type Output = Vec4;
    fn add(self, o: Vec4) -> Vec4 {
        Vec4::new(self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3, self.x4 + o.x4)
    }
}

impl AddAssign for Vec4 {
    fn add_assign(&mut self, o: Vec4) {
        *self = *self + o;
    }
}

impl Sub for Vec4 {
    type Output = Vec4;
    fn sub(self, o: Vec4) -> Vec4 {
        Vec4::new(self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3, self.x4 - o.x4)
    }
}

impl Neg for Vec4 {
    type Output = Vec4;
    fn neg(self) -> Vec4 {
        Vec4::new(-self.x1, -self.x2, -self.x3, -self.x4)
    }
}

impl Mul<f64> for Vec4 {
    type Output = Vec4;
    fn mul(self, k: f64) -> Vec4 {
        Vec4::new(self.x1 * k, self.x2 * k, self.x3 * k, self.x4 * k)
    }
}

impl Mul<Vec4> for f64 {
    type Output = Vec4;
    fn mul(self, v: Vec4) -> Vec4 {
        v * self
    }
}

/// `<x,y> = -x1 y1 + x2 y2 + x3 y3 + x4 y4`.
pub fn inner(x: Vec4, y: Vec4) -> f64 {
    -x.x1 * y.x1 + x.x2 * y.x2 + x.x3 * y.x3 + x.x4 * y.x4
}

fn det3(m: [[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Minor of the 3x4 matrix with rows `x, y, z` obtained by deleting column `k`.
fn minor(rows: [[f64; 4]; 3], k: usize) -> f64 {
    let mut m = [[0.0; 3]; 3];
    for (r, row) in rows.iter().enumerate() {
        let mut c = 0;
        for (col, v) in row.iter().enumerate() {
            if col != k {
                m[r][c] = *v;
                c += 1;
            }
        }
    }
    det3(m)
}

/// Ternary vector product: the formal determinant with first row
/// `(-e1, e2, e3, e4)` followed by the rows `x, y, z`.
///
/// It is orthogonal to each argument and satisfies
/// `<triple_cross(x, y, z), w> = det[w; x; y; z]`.
pub fn triple_cross(x: Vec4, y: Vec4, z: Vec4) -> Vec4 {
    let rows = [x.to_array(), y.to_array(), z.to_array()];
    let mut out = [0.0; 4];
    for (k, o) in out.iter_mut().enumerate() {
        let cofactor = if k % 2 == 0 { 1.0 } else { -1.0 } * minor(rows, k);
        *o = SIGNATURE[k] * cofactor;
    }
    out.into()
}

/// Euclidean determinant of the 4x4 matrix with rows `a, b, c, d`.
pub fn det4(a: Vec4, b: Vec4, c: Vec4, d: Vec4) -> f64 {
    let rows = [b.to_array(), c.to_array(), d.to_array()];
    let a = a.to_array();
    (0..4)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * a[k] * minor(rows, k)
        })
        .sum()
}

/// Classifies `x` by the sign of `<x,x>` with the null band `TAU_NULL`.
///
/// The zero vector is spacelike.
pub fn causal_character(x: Vec4) -> CausalCharacter {
    if x == Vec4::ZERO {
        return CausalCharacter::Spacelike;
    }
    let q = inner(x, x);
    if q < -TAU_NULL {
        CausalCharacter::Timelike
    } else if q.abs() <= TAU_NULL {
        CausalCharacter::Null
    } else {
        CausalCharacter::Spacelike
    }
}

/// `sqrt(|<x,x>|)`.
pub fn norm(x: Vec4) -> f64 {
    inner(x, x).abs().sqrt()
}

/// `x / norm(x)`, rejecting vectors inside the null band.
pub fn normalize(x: Vec4) -> Result<Vec4, MinkowskiError> {
    let q = inner(x, x);
    if q.abs() <= TAU_NULL {
        return Err(MinkowskiError::NullVector(q));
    }
    Ok(x * (1.0 / q.abs().sqrt()))
}

/// `+1` for spacelike or zero vectors and `-1` for timelike ones.
pub fn sign_of(x: Vec4) -> f64 {
    if inner(x, x) < 0.0 {
        -1.0
    } else {
        1.0
    }
}
