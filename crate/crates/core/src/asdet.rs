//! Atiyah–Sutcliffe polynomials and normalized determinants.
//!
//! Directions on the sphere at infinity are carried as homogeneous pairs
//! `[z : w]` on the complex projective line, so that a direction at infinity
//! (`w = 0`) needs no special casing: the linear factor with root `[z : w]`
//! is `w·t − z`, whose ascending coefficient vector is `(−z, w)`. A factor
//! whose root is at infinity degenerates to the constant `−z`.
//!
//! Two families of polynomials are built from a direction array `t`:
//!
//! * observer-based, `p_a(t) = ∏_{b≠a} (t − t_ab)` (row `a` of the array);
//! * star-based, `q_a(t) = ∏_{b≠a} (t − t_ba)` (column `a` of the array).
//!
//! The normalized determinant divides the determinant of the `n` coefficient
//! vectors by `∏_{a<b} det(p_ab, p_ba)`, with `p_ab` in the first column.

use std::fmt;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    det_exact, det_partial_pivot, exact_complex_from, expand_linear_factors, Field, Ring,
    ExactComplex, C64,
};
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Which family of polynomials enters the determinant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `p_a(t) = ∏_{b≠a}(t − t_ab)`
    Observer,
    /// `q_a(t) = ∏_{b≠a}(t − t_ba)`
    Star,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Observer => f.write_str("observer"),
            Variant::Star => f.write_str("star"),
        }
    }
}

/// A point `[z : w]` of the complex projective line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtendedComplex {
    z: C64,
    w: C64,
}

impl ExtendedComplex {
    pub fn new(z: C64, w: C64) -> Option<Self> {
        if z == C64::zero() && w == C64::zero() {
            None
        } else {
            Some(Self { z, w })
        }
    }

    pub fn finite(t: C64) -> Self {
        Self {
            z: t,
            w: C64::new(1.0, 0.0),
        }
    }

    pub fn real(t: f64) -> Self {
        Self::finite(C64::new(t, 0.0))
    }

    /// `[1 : 0]`.
    pub fn infinity() -> Self {
        Self {
            z: C64::new(1.0, 0.0),
            w: C64::zero(),
        }
    }

    pub fn z(&self) -> C64 {
        self.z
    }

    pub fn w(&self) -> C64 {
        self.w
    }

    pub fn is_infinite(&self) -> bool {
        self.w == C64::zero()
    }

    /// Affine value `z / w`, or `None` at infinity.
    pub fn value(&self) -> Option<C64> {
        if self.is_infinite() {
            None
        } else {
            Some(self.z / self.w)
        }
    }

    /// Same projective point scaled by `lambda` (must be non-zero).
    pub fn scaled(&self, lambda: C64) -> Self {
        assert!(lambda != C64::zero(), "projective scale must be non-zero");
        Self {
            z: self.z * lambda,
            w: self.w * lambda,
        }
    }

    /// Representative with `max(|z|, |w|) = 1`.
    pub fn normalized(&self) -> Self {
        let m = self.z.norm().max(self.w.norm());
        Self {
            z: self.z / m,
            w: self.w / m,
        }
    }

    /// Ascending coefficients `(−z, w)` of the linear factor `w·t − z`.
    pub fn coefficients(&self) -> [C64; 2] {
        [-self.z, self.w]
    }

    /// True when the point lies on the extended real line (within `tol`,
    /// relative to the size of the representative).
    pub fn is_real(&self, tol: f64) -> bool {
        // [z : w] is real iff z·conj(w) is real
        let cross = self.z * self.w.conj();
        let scale = self.z.norm().max(self.w.norm()).powi(2);
        cross.im.abs() <= tol * scale
    }

    /// Exact complex-rational representative of the same pair.
    pub fn to_exact(&self) -> [ExactComplex; 2] {
        [exact_complex_from(self.z), exact_complex_from(self.w)]
    }
}

impl fmt::Display for ExtendedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value() {
            None => f.write_str("∞"),
            Some(v) => write!(f, "{v}"),
        }
    }
}

/// An `n × n` array with the diagonal left empty.
#[derive(Debug, Clone, PartialEq)]
pub struct OffDiagonal<T> {
    n: usize,
    entries: Vec<Option<T>>,
}

impl<T> OffDiagonal<T> {
    /// Fill every off-diagonal slot `(a, b)` (0-based) with `f(a, b)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                entries.push(if a == b { None } else { Some(f(a, b)) });
            }
        }
        Self { n, entries }
    }

    pub fn try_from_fn<E>(
        n: usize,
        mut f: impl FnMut(usize, usize) -> std::result::Result<T, E>,
    ) -> std::result::Result<Self, E> {
        let mut entries = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                entries.push(if a == b { None } else { Some(f(a, b)?) });
            }
        }
        Ok(Self { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `(a, b)`; panics on the diagonal.
    pub fn get(&self, a: usize, b: usize) -> &T {
        self.entries[a * self.n + b]
            .as_ref()
            .expect("diagonal of a direction array is empty")
    }

    pub fn set(&mut self, a: usize, b: usize, value: T) {
        assert!(a != b, "diagonal of a direction array is empty");
        self.entries[a * self.n + b] = Some(value);
    }

    pub fn map<U>(&self, mut f: impl FnMut(usize, usize, &T) -> U) -> OffDiagonal<U> {
        OffDiagonal::from_fn(self.n, |a, b| f(a, b, self.get(a, b)))
    }

    /// Entries `(a, b)` for `b ≠ a`, in increasing `b`.
    pub fn row(&self, a: usize) -> impl Iterator<Item = &T> + '_ {
        (0..self.n).filter(move |&b| b != a).map(move |b| self.get(a, b))
    }

    /// Entries `(a, b)` for `a ≠ b`, in increasing `a`.
    pub fn column(&self, b: usize) -> impl Iterator<Item = &T> + '_ {
        (0..self.n).filter(move |&a| a != b).map(move |a| self.get(a, b))
    }

    /// Off-diagonal entries in row-major order with their indices.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter_map(move |(i, e)| e.as_ref().map(|v| (i / self.n, i % self.n, v)))
    }
}

/// The array of directions `t_ab` of a configuration.
pub type DirectionMatrix = OffDiagonal<ExtendedComplex>;

impl DirectionMatrix {
    /// Direction array from affine values (row-major, diagonal ignored).
    pub fn from_values(n: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        Self::from_fn(n, |a, b| ExtendedComplex::finite(f(a, b)))
    }

    fn normalized(&self) -> Self {
        self.map(|_, _, e| e.normalized())
    }
}

/// `det` of the 2×2 matrix with columns `(−z_u, w_u)` and `(−z_v, w_v)`,
/// i.e. `z_v·w_u − z_u·w_v`. For affine points this is `v − u`.
pub fn bracket(u: &ExtendedComplex, v: &ExtendedComplex) -> C64 {
    bracket_generic(&[u.z, u.w], &[v.z, v.w])
}

fn bracket_generic<T: Ring>(u: &[T; 2], v: &[T; 2]) -> T {
    v[0].clone() * u[1].clone() - u[0].clone() * v[1].clone()
}

/// Coefficient vector (length `len`, ascending powers) of `∏ (w·t − z)`.
pub fn poly_from_roots(roots: &[ExtendedComplex], len: usize) -> Vec<C64> {
    let factors: Vec<[C64; 2]> = roots.iter().map(|r| r.coefficients()).collect();
    expand_linear_factors(&factors, len)
}

/// The pairs `(first, second)` whose bracket forms the `(a, b)` denominator
/// factor, `a < b`.
fn denominator_roots<T>(dm: &OffDiagonal<T>, variant: Variant, a: usize, b: usize) -> (&T, &T) {
    match variant {
        // det(p_ab, p_ba): roots t_ab then t_ba
        Variant::Observer => (dm.get(a, b), dm.get(b, a)),
        // det(q_ab, q_ba): roots t_ba then t_ab
        Variant::Star => (dm.get(b, a), dm.get(a, b)),
    }
}

/// Roots of the `a`-th polynomial of the given family.
fn polynomial_roots<T: Clone>(dm: &OffDiagonal<T>, variant: Variant, a: usize) -> Vec<T> {
    match variant {
        Variant::Observer => dm.row(a).cloned().collect(),
        Variant::Star => dm.column(a).cloned().collect(),
    }
}

/// Matrix whose `a`-th row is the coefficient vector of the `a`-th polynomial
/// (the transpose of the column convention; the determinant is the same).
pub fn coefficient_rows<T: Ring>(pairs: &OffDiagonal<[T; 2]>, variant: Variant) -> Vec<Vec<T>> {
    let n = pairs.n();
    (0..n)
        .map(|a| {
            let factors: Vec<[T; 2]> = polynomial_roots(pairs, variant, a)
                .into_iter()
                .map(|[z, w]| [-z, w])
                .collect();
            expand_linear_factors(&factors, n)
        })
        .collect()
}

fn as_pairs(dm: &DirectionMatrix) -> OffDiagonal<[C64; 2]> {
    dm.map(|_, _, e| [e.z, e.w])
}

/// Numerator `det(p_1, …, p_n)` (or `det(q_1, …, q_n)` for the star family).
pub fn as_numerator(dm: &DirectionMatrix, variant: Variant) -> C64 {
    det_partial_pivot(&coefficient_rows(&as_pairs(dm), variant))
}

/// Denominator `∏_{a<b} det(p_ab, p_ba)` with the same pair representatives.
pub fn as_denominator(dm: &DirectionMatrix, variant: Variant) -> C64 {
    let n = dm.n();
    let mut acc = C64::new(1.0, 0.0);
    for a in 0..n {
        for b in a + 1..n {
            let (u, v) = denominator_roots(dm, variant, a, b);
            acc *= bracket(u, v);
        }
    }
    acc
}

/// Normalized determinant `D` (observer) or `D^s` (star).
pub fn normalized_det(dm: &DirectionMatrix, variant: Variant, tol: &Tolerances) -> Result<C64> {
    let dm = dm.normalized();
    let n = dm.n();
    let mut den = C64::new(1.0, 0.0);
    for a in 0..n {
        for b in a + 1..n {
            let (u, v) = denominator_roots(&dm, variant, a, b);
            let br = bracket(u, v);
            if br.norm() < tol.eps_den {
                return Err(Error::DegenerateDenominator {
                    a: a + 1,
                    b: b + 1,
                    modulus: br.norm(),
                });
            }
            den *= br;
        }
    }
    Ok(as_numerator(&dm, variant) / den)
}

/// Exact homogeneous direction array: every entry is a pair of complex
/// rationals.
pub type ExactDirectionMatrix = OffDiagonal<[ExactComplex; 2]>;

/// Exact copy of a floating direction array (each double converted without
/// rounding).
pub fn exactify(dm: &DirectionMatrix) -> ExactDirectionMatrix {
    dm.map(|_, _, e| e.to_exact())
}

pub fn exact_numerator<T: Field>(pairs: &OffDiagonal<[T; 2]>, variant: Variant) -> T {
    det_exact(&coefficient_rows(pairs, variant))
}

pub fn exact_denominator<T: Ring>(pairs: &OffDiagonal<[T; 2]>, variant: Variant) -> T {
    let n = pairs.n();
    let mut acc = T::one();
    for a in 0..n {
        for b in a + 1..n {
            let (u, v) = denominator_roots(pairs, variant, a, b);
            acc = acc * bracket_generic(u, v);
        }
    }
    acc
}

/// Exact normalized determinant; `None` when the denominator vanishes.
pub fn exact_normalized_det<T: Field>(pairs: &OffDiagonal<[T; 2]>, variant: Variant) -> Option<T> {
    let den = exact_denominator(pairs, variant);
    if den.is_zero() {
        None
    } else {
        Some(exact_numerator(pairs, variant) / den)
    }
}

/// `|q|²` of an exact complex number.
pub fn exact_norm_sqr(q: &ExactComplex) -> BigRational {
    q.re.clone() * q.re.clone() + q.im.clone() * q.im.clone()
}

/// Affine exact direction array (`w = 1` everywhere).
pub fn exact_affine(n: usize, f: impl Fn(usize, usize) -> BigRational) -> OffDiagonal<[BigRational; 2]> {
    OffDiagonal::from_fn(n, |a, b| [f(a, b), BigRational::from_integer(1.into())])
}

pub fn exact_complex(re: BigRational) -> ExactComplex {
    Complex::new(re, BigRational::zero())
}
