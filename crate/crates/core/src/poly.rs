//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms live in a `BTreeMap` keyed by dense exponent vectors, ordered
//! graded-lexicographically over the declared variable list, so iteration
//! (and therefore every printed or serialized form) is deterministic.
//!
//! A polynomial created without a variable list (`zero`, `one`, constants)
//! is context free and is lifted into the other operand's variables on
//! arithmetic.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::Ring;

/// Shared, ordered variable list.
pub type Variables = Arc<[String]>;

pub fn variables<S: AsRef<str>>(names: &[S]) -> Variables {
    names.iter().map(|s| s.as_ref().to_string()).collect()
}

/// Exponent vector of a monomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u8>);

impl Monomial {
    pub fn new(exponents: Vec<u8>) -> Self {
        Self(exponents)
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent of the
    /// earliest variable.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone)]
pub struct MultiPoly {
    vars: Variables,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiPoly {
    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(Vec::new()), c);
        }
        Self {
            vars: Arc::from(Vec::new()),
            terms,
        }
    }

    pub fn from_integer(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// The polynomial `vars[index]`.
    pub fn variable(vars: &Variables, index: usize) -> Self {
        assert!(index < vars.len(), "variable index out of range");
        let mut e = vec![0u8; vars.len()];
        e[index] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(e), BigRational::one());
        Self {
            vars: vars.clone(),
            terms,
        }
    }

    /// The polynomial named `name`; panics if it is not declared.
    pub fn var(vars: &Variables, name: &str) -> Self {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .unwrap_or_else(|| panic!("unknown variable {name}"));
        Self::variable(vars, idx)
    }

    /// Build from explicit terms; zero coefficients are dropped and repeated
    /// monomials are collected.
    pub fn from_terms(
        vars: &Variables,
        terms: impl IntoIterator<Item = (Vec<u8>, BigRational)>,
    ) -> Self {
        let mut map: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent vector length mismatch");
            *map.entry(Monomial(e)).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        Self {
            vars: vars.clone(),
            terms: map,
        }
    }

    pub fn variables(&self) -> &Variables {
        &self.vars
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in decreasing graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, exponents: &[u8]) -> BigRational {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    /// Highest power of variable `index` present.
    pub fn degree_in(&self, index: usize) -> u8 {
        self.terms
            .keys()
            .map(|m| m.0.get(index).copied().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    pub fn depends_on(&self, name: &str) -> bool {
        match self.vars.iter().position(|v| v == name) {
            Some(i) => self.degree_in(i) > 0,
            None => false,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total_degree() == 0)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::constant(BigRational::zero()).lifted(&self.vars);
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    /// Exact value at `point` (one rational per declared variable).
    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert!(
            self.vars.is_empty() || point.len() == self.vars.len(),
            "point has {} coordinates, polynomial has {} variables",
            point.len(),
            self.vars.len()
        );
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    term *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += term;
        }
        acc
    }

    /// Re-express over `vars`, which must contain every variable that
    /// actually occurs.
    pub fn with_variables(&self, vars: &Variables) -> Self {
        if Arc::ptr_eq(&self.vars, vars) || self.vars[..] == vars[..] {
            return Self {
                vars: vars.clone(),
                terms: self.terms.clone(),
            };
        }
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|name| vars.iter().position(|v| v == name))
            .collect();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0u8; vars.len()];
            for (i, &p) in m.0.iter().enumerate() {
                if p > 0 {
                    let j = map[i].unwrap_or_else(|| {
                        panic!("variable {} missing from target list", self.vars[i])
                    });
                    e[j] = p;
                }
            }
            (e, c.clone())
        });
        Self::from_terms(vars, terms)
    }

    fn lifted(mut self, vars: &Variables) -> Self {
        if self.vars.is_empty() && !vars.is_empty() {
            self.terms = self
                .terms
                .into_iter()
                .map(|(_, c)| (Monomial(vec![0; vars.len()]), c))
                .collect();
            self.vars = vars.clone();
        }
        self
    }

    fn aligned(self, other: Self) -> (Self, Self) {
        if self.vars.is_empty() {
            let vars = other.vars.clone();
            (self.lifted(&vars), other)
        } else if other.vars.is_empty() {
            let vars = self.vars.clone();
            (self, other.lifted(&vars))
        } else {
            assert!(
                Arc::ptr_eq(&self.vars, &other.vars) || self.vars[..] == other.vars[..],
                "polynomials over different variable lists"
            );
            (self, other)
        }
    }

    /// Substitute `x_i → x_i + c·x_j` (slot indices; `i ≠ j`).
    pub fn shear(&self, i: usize, j: usize, c: &BigRational) -> Self {
        assert!(i != j);
        let mut out: HashMap<Vec<u8>, BigRational> = HashMap::new();
        for (m, coeff) in &self.terms {
            let ei = m.0[i];
            if ei == 0 {
                *out.entry(m.0.clone()).or_insert_with(BigRational::zero) += coeff;
                continue;
            }
            // (x_i + c x_j)^ei = Σ_k C(ei, k) x_i^k (c x_j)^(ei−k)
            let mut binom = BigInt::one();
            for k in 0..=ei {
                let moved = ei - k;
                let mut e = m.0.clone();
                e[i] = k;
                e[j] += moved;
                let term = coeff
                    * BigRational::from_integer(binom.clone())
                    * num_traits::pow(c.clone(), moved as usize);
                *out.entry(e).or_insert_with(BigRational::zero) += term;
                // C(ei, k+1) = C(ei, k)·(ei − k)/(k + 1)
                binom = binom * BigInt::from(ei - k) / BigInt::from(k + 1);
            }
        }
        Self::from_terms(&self.vars, out)
    }

    /// Substitute `x_i → c·x_i`.
    pub fn scale_variable(&self, i: usize, c: &BigRational) -> Self {
        Self::from_terms(
            &self.vars,
            self.terms.iter().map(|(m, coeff)| {
                (m.0.clone(), coeff * num_traits::pow(c.clone(), m.0[i] as usize))
            }),
        )
    }

    /// Exchange the roles of slots `i` and `j`.
    pub fn swap_variables(&self, i: usize, j: usize) -> Self {
        Self::from_terms(
            &self.vars,
            self.terms.iter().map(|(m, coeff)| {
                let mut e = m.0.clone();
                e.swap(i, j);
                (e, coeff.clone())
            }),
        )
    }

    /// Same terms, slot-for-slot, over a new variable list of equal length.
    pub fn renamed(&self, vars: &Variables) -> Self {
        assert_eq!(vars.len(), self.vars.len());
        Self {
            vars: vars.clone(),
            terms: self.terms.clone(),
        }
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars.is_empty() || other.vars.is_empty() || self.vars[..] == other.vars[..] {
            let (a, b) = self.clone().aligned(other.clone());
            a.terms == b.terms
        } else {
            false
        }
    }
}

impl Eq for MultiPoly {}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: Self) -> Self {
        let (mut a, b) = self.aligned(rhs);
        for (m, c) in b.terms {
            match a.terms.entry(m) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
        a
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> Self {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = self.aligned(rhs);
        let mut out: HashMap<Monomial, BigRational> = HashMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                *out.entry(ma.times(mb)).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        let mut terms: BTreeMap<Monomial, BigRational> = out.into_iter().collect();
        terms.retain(|_, c| !c.is_zero());
        MultiPoly { vars: a.vars, terms }
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.clone() + rhs.clone()
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.clone() - rhs.clone()
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.clone() * rhs.clone()
    }
}

impl Zero for MultiPoly {
    fn zero() -> Self {
        Self::constant(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MultiPoly {
    fn one() -> Self {
        Self::constant(BigRational::one())
    }
}

impl Ring for MultiPoly {}

/// `num/den` (or just `num` for integers).
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl MultiPoly {
    /// Printable form of one monomial, e.g. `y1^2*y3`; `1` for the constant.
    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.vars[i].clone()
                } else {
                    format!("{}^{}", self.vars[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let mono = self.format_monomial(m);
            let mag = format_rational(&c.abs());
            let body = match (mono.as_str(), mag.as_str()) {
                ("1", _) => mag.clone(),
                (_, "1") => mono.clone(),
                _ => format!("{mag}*{mono}"),
            };
            match (k, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}
