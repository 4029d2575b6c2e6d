//! Small generic algebra kernel shared by the numeric and exact layers.
//!
//! Everything here is written against [`Ring`] so that the same code path
//! builds a coefficient matrix out of complex doubles, exact rationals,
//! exact complex rationals or symbolic polynomials.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type C64 = Complex<f64>;
pub type ExactComplex = Complex<BigRational>;

/// Commutative ring with identity.
pub trait Ring:
    Clone
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
}

/// A [`Ring`] in which every non-zero element is invertible.
pub trait Field: Ring + Div<Output = Self> {}

macro_rules! impl_ring_via_num {
    ($t:ty) => {
        impl Ring for $t {}
        impl Field for $t {}
    };
}

impl_ring_via_num!(f64);
impl_ring_via_num!(C64);
impl_ring_via_num!(BigRational);
impl_ring_via_num!(ExactComplex);

/// Coefficients (ascending powers of `t`, padded to `len`) of the product of
/// linear forms `c0 + c1 t`.
pub fn expand_linear_factors<T: Ring>(factors: &[[T; 2]], len: usize) -> Vec<T> {
    assert!(factors.len() < len, "degree exceeds coefficient vector length");
    let mut coeffs = vec![T::zero(); len];
    coeffs[0] = T::one();
    for (used, [c0, c1]) in factors.iter().enumerate() {
        // degree is at most `used + 1` after this factor
        for k in (0..=used + 1).rev() {
            let shifted = if k > 0 {
                coeffs[k - 1].clone() * c1.clone()
            } else {
                T::zero()
            };
            coeffs[k] = shifted + coeffs[k].clone() * c0.clone();
        }
    }
    coeffs
}

/// Parity of a permutation given in one-line notation.
pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        if !next_permutation(&mut current) {
            return out;
        }
    }
}

/// Advance to the lexicographically next permutation; false after the last.
pub fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Leibniz expansion of the determinant of `m` (row-major, square).
///
/// Division free, so it works over any ring, including polynomial rings.
/// Cost is n!·n, fine for the n ≤ 5 matrices used symbolically.
pub fn det_leibniz<T: Ring>(m: &[Vec<T>]) -> T {
    let n = m.len();
    let mut acc = T::zero();
    for perm in permutations(n) {
        let mut term = T::one();
        for (row, &col) in perm.iter().enumerate() {
            term = term * m[row][col].clone();
        }
        acc = if permutation_sign(&perm) > 0 {
            acc + term
        } else {
            acc - term
        };
    }
    acc
}

/// Exact determinant by fraction-based Gaussian elimination.
pub fn det_exact<T: Field>(m: &[Vec<T>]) -> T {
    let n = m.len();
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut det = T::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return T::zero();
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det = det * p.clone();
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone() / p.clone();
            for c in col..n {
                let v = a[col][c].clone() * factor.clone();
                a[r][c] = a[r][c].clone() - v;
            }
        }
    }
    det
}

/// Floating-point determinant by LU with partial pivoting.
pub fn det_partial_pivot(m: &[Vec<C64>]) -> C64 {
    let n = m.len();
    match n {
        0 => return C64::new(1.0, 0.0),
        1 => return m[0][0],
        // closed form, so that 2×2 brackets and determinants round identically
        2 => return m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => {}
    }
    let mut a: Vec<Vec<C64>> = m.to_vec();
    let mut det = C64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))
            .expect("non-empty range");
        if a[pivot][col].norm() == 0.0 {
            return C64::new(0.0, 0.0);
        }
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        for r in col + 1..n {
            let factor = a[r][col] / p;
            if factor == C64::new(0.0, 0.0) {
                continue;
            }
            for c in col..n {
                let v = a[col][c] * factor;
                a[r][c] -= v;
            }
        }
    }
    det
}

/// Exact rational value of a finite double.
pub fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite double")
}

pub fn exact_complex_from(c: C64) -> ExactComplex {
    Complex::new(rational_from_f64(c.re), rational_from_f64(c.im))
}

/// Nearest double to an exact rational (good to within a couple of ulps).
pub fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    if let Some(v) = q.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // very large numerator/denominator: scale by powers of two
    let num_bits = q.numer().bits() as i64;
    let den_bits = q.denom().bits() as i64;
    let shift = num_bits - den_bits;
    let scaled = if shift > 0 {
        q / BigRational::from_integer(BigInt::one() << shift as usize)
    } else {
        q * BigRational::from_integer(BigInt::one() << (-shift) as usize)
    };
    scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
}

/// Sign of an exact rational as -1, 0 or +1.
pub fn rational_sign(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

/// Exact `a/b` helper for tests and constants.
pub fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}
