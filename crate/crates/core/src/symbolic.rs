//! Exact four-point certificates.
//!
//! The numerator `AS₄` and denominator `B₄` of `D` are expanded as exact
//! polynomials in the twelve directions `t_ab`, rewritten in gap variables
//!
//! ```text
//! y₀ = Σ t_ab,    y_k = order[k] − order[k−1]   (k = 1..11)
//! ```
//!
//! for a prescribed circular order of the directions, and their coefficient
//! signs are tallied. When the directions occur in that order every `y_k`
//! (k ≥ 1) is positive, so a uniform coefficient sign is a positivity proof.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::det_leibniz;
use crate::asdet::{coefficient_rows, exact_denominator, OffDiagonal, Variant};
use crate::error::{Error, Result};
use crate::poly::{format_rational, variables, MultiPoly, Variables};

/// Name of the direction `t_ab` for 1-based indices.
pub fn direction_name(a: usize, b: usize) -> String {
    if a < 10 && b < 10 {
        format!("t{a}{b}")
    } else {
        format!("t{a}_{b}")
    }
}

/// Direction names in row-major order, `t12, t13, …, t21, …`.
pub fn direction_variables(n: usize) -> Variables {
    let names: Vec<String> = (1..=n)
        .flat_map(|a| (1..=n).filter(move |&b| b != a).map(move |b| direction_name(a, b)))
        .collect();
    variables(&names)
}

/// The array of symbols `t_ab` as homogeneous pairs `[t_ab : 1]`.
pub fn symbolic_pairs(n: usize) -> (Variables, OffDiagonal<[MultiPoly; 2]>) {
    let vars = direction_variables(n);
    let pairs = OffDiagonal::from_fn(n, |a, b| {
        [
            MultiPoly::var(&vars, &direction_name(a + 1, b + 1)),
            MultiPoly::one(),
        ]
    });
    (vars, pairs)
}

/// Exact numerator `det(p_1..p_n)` (or `det(q_1..q_n)`) in the symbols `t_ab`.
pub fn sym_numerator(n: usize, variant: Variant) -> MultiPoly {
    let (vars, pairs) = symbolic_pairs(n);
    det_leibniz(&coefficient_rows(&pairs, variant)).with_variables(&vars)
}

/// Exact denominator `∏_{a<b} det(p_ab, p_ba)` in the symbols `t_ab`.
pub fn sym_denominator(n: usize, variant: Variant) -> MultiPoly {
    let (vars, pairs) = symbolic_pairs(n);
    exact_denominator(&pairs, variant).with_variables(&vars)
}

/// `AS₄`, the observer numerator for four points.
pub fn sym_as4() -> MultiPoly {
    sym_numerator(4, Variant::Observer)
}

/// `B₄ = ∏_{a<b} (t_ba − t_ab)`.
pub fn sym_b4() -> MultiPoly {
    sym_denominator(4, Variant::Observer)
}

/// Invertible linear change of variables `y = F·t`, `t = F⁻¹·y`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSubstitution {
    source: Variables,
    target: Variables,
    forward: Vec<Vec<BigRational>>,
    inverse: Vec<Vec<BigRational>>,
}

/// Elementary row operation recorded while reducing a matrix to identity.
#[derive(Debug, Clone)]
enum RowOp {
    Swap(usize, usize),
    Scale(usize, BigRational),
    /// row[target] += c · row[source]
    AddMultiple { target: usize, source: usize, c: BigRational },
}

/// Gauss–Jordan reduction of `m` to the identity, returning the recorded
/// operations and the inverse.
fn reduce_to_identity(m: &[Vec<BigRational>]) -> Result<(Vec<RowOp>, Vec<Vec<BigRational>>)> {
    let n = m.len();
    let mut a = m.to_vec();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    let mut ops = Vec::new();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::SingularSubstitution)?;
        if pivot != col {
            a.swap(pivot, col);
            inv.swap(pivot, col);
            ops.push(RowOp::Swap(pivot, col));
        }
        let p = a[col][col].clone();
        if !p.is_one() {
            let c = p.recip();
            for row in [&mut a[col], &mut inv[col]] {
                for v in row.iter_mut() {
                    *v = &*v * &c;
                }
            }
            ops.push(RowOp::Scale(col, c));
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let c = -a[r][col].clone();
            for j in 0..n {
                let da = &a[col][j] * &c;
                a[r][j] += da;
                let di = &inv[col][j] * &c;
                inv[r][j] += di;
            }
            ops.push(RowOp::AddMultiple {
                target: r,
                source: col,
                c,
            });
        }
    }
    Ok((ops, inv))
}

impl LinearSubstitution {
    /// Substitution with `y = forward · t`, where rows index `target` and
    /// columns index `source`.
    pub fn new(source: Variables, target: Variables, forward: Vec<Vec<BigRational>>) -> Result<Self> {
        assert_eq!(forward.len(), target.len());
        assert!(forward.iter().all(|r| r.len() == source.len()));
        let (_, inverse) = reduce_to_identity(&forward)?;
        Ok(Self {
            source,
            target,
            forward,
            inverse,
        })
    }

    pub fn source(&self) -> &Variables {
        &self.source
    }

    pub fn target(&self) -> &Variables {
        &self.target
    }

    /// Rows: target variables; columns: source variables.
    pub fn forward(&self) -> &[Vec<BigRational>] {
        &self.forward
    }

    /// Rows: source variables; columns: target variables.
    pub fn inverse(&self) -> &[Vec<BigRational>] {
        &self.inverse
    }

    /// `y = F·t`.
    pub fn apply(&self, t: &[BigRational]) -> Vec<BigRational> {
        mat_vec(&self.forward, t)
    }

    /// `t = F⁻¹·y`.
    pub fn invert(&self, y: &[BigRational]) -> Vec<BigRational> {
        mat_vec(&self.inverse, y)
    }
}

fn mat_vec(m: &[Vec<BigRational>], v: &[BigRational]) -> Vec<BigRational> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(BigRational::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

/// Gap-variable substitution for a circular order of all `t_ab` names.
pub fn build_substitution(order: &[String]) -> Result<LinearSubstitution> {
    let n_dirs = order.len();
    // n(n−1) = n_dirs
    let n = (1..=n_dirs + 1)
        .find(|k| k * (k - 1) == n_dirs)
        .filter(|&k| k >= 2)
        .ok_or_else(|| Error::InvalidOrdering(format!("{n_dirs} is not n(n-1)")))?;
    let source = direction_variables(n);
    let mut position = Vec::with_capacity(n_dirs);
    for name in order {
        let idx = source
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::InvalidOrdering(format!("unknown direction {name}")))?;
        if position.contains(&idx) {
            return Err(Error::InvalidOrdering(format!("{name} listed twice")));
        }
        position.push(idx);
    }
    let target = variables(&(0..n_dirs).map(|k| format!("y{k}")).collect::<Vec<_>>());
    let mut forward = vec![vec![BigRational::zero(); n_dirs]; n_dirs];
    forward[0] = vec![BigRational::one(); n_dirs];
    for k in 1..n_dirs {
        forward[k][position[k]] = BigRational::one();
        forward[k][position[k - 1]] = -BigRational::one();
    }
    LinearSubstitution::new(source, target, forward)
}

/// Rewrite `p(t)` as a polynomial in the target variables of `s`.
///
/// `t = M·y` with `M = F⁻¹`. Reducing `M` to the identity by row operations
/// `R_k⋯R_1·M = I` factors `M = R_1⁻¹⋯R_k⁻¹`, so the substitution is carried
/// out as a chain of elementary ones (shear, scale, swap) applied in order,
/// which keeps every intermediate fully collected.
pub fn change_vars(p: &MultiPoly, s: &LinearSubstitution) -> MultiPoly {
    let (ops, _) = reduce_to_identity(&s.inverse).expect("inverse of an invertible matrix");
    let mut q = p.with_variables(&s.source);
    for op in &ops {
        q = match op {
            RowOp::Swap(i, j) => q.swap_variables(*i, *j),
            RowOp::Scale(i, c) => q.scale_variable(*i, &c.recip()),
            RowOp::AddMultiple { target, source, c } => q.shear(*target, *source, &-c.clone()),
        };
    }
    q.renamed(&s.target)
}

/// Which circular order of the twelve directions is certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OrderingId {
    /// Convex quadrilateral.
    Thm1,
    /// One point inside the triangle of the other three.
    Zhangma,
}

impl OrderingId {
    pub fn direction_order(&self) -> Vec<String> {
        let pairs: [(usize, usize); 12] = match self {
            OrderingId::Thm1 => [
                (2, 1), (3, 1), (4, 1), (3, 2), (4, 2), (1, 2),
                (4, 3), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4),
            ],
            OrderingId::Zhangma => [
                (1, 3), (2, 3), (2, 1), (2, 4), (1, 4), (3, 4),
                (3, 1), (3, 2), (1, 2), (4, 2), (4, 1), (4, 3),
            ],
        };
        pairs.iter().map(|&(a, b)| direction_name(a, b)).collect()
    }

    pub fn substitution(&self) -> LinearSubstitution {
        build_substitution(&self.direction_order()).expect("built-in orderings are permutations")
    }
}

impl fmt::Display for OrderingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderingId::Thm1 => "thm1",
            OrderingId::Zhangma => "zhangma",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolyId {
    #[serde(rename = "AS4")]
    As4,
    #[serde(rename = "B4")]
    B4,
    #[serde(rename = "delta4")]
    Delta4,
}

impl fmt::Display for PolyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolyId::As4 => "AS4",
            PolyId::B4 => "B4",
            PolyId::Delta4 => "delta4",
        })
    }
}

/// Common sign of all non-zero coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UniformSign {
    #[serde(rename = "+1")]
    Positive,
    #[serde(rename = "-1")]
    Negative,
    #[serde(rename = "mixed")]
    Mixed,
    /// The zero polynomial.
    #[serde(rename = "zero")]
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Coefficient sign tally of one polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignCensus {
    pub n_pos: usize,
    pub n_neg: usize,
}

impl SignCensus {
    pub fn of(p: &MultiPoly) -> Self {
        let n_pos = p.terms().filter(|(_, c)| c.is_positive()).count();
        Self {
            n_pos,
            n_neg: p.num_terms() - n_pos,
        }
    }

    pub fn uniform_sign(&self) -> UniformSign {
        match (self.n_pos, self.n_neg) {
            (0, 0) => UniformSign::Zero,
            (_, 0) => UniformSign::Positive,
            (0, _) => UniformSign::Negative,
            _ => UniformSign::Mixed,
        }
    }
}

/// Sign convention used for the denominator brackets.
pub const BRACKET_CONVENTION: &str = "det(p_ab, p_ba) = t_ba - t_ab, p_ab in the first column";

/// Machine-checkable record of one polynomial's expansion in gap variables.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub ordering: OrderingId,
    pub direction_order: Vec<String>,
    pub polynomial: PolyId,
    pub y0_free: bool,
    pub n_pos: usize,
    pub n_neg: usize,
    /// Monomials of the operands that cancelled when forming this polynomial
    /// (only `delta4` is formed from other expansions).
    pub n_zero: usize,
    pub uniform_sign: UniformSign,
    pub n_monomials: usize,
    pub verdict: Verdict,
    /// What the verdict checked.
    pub expectation: String,
    /// Minority-sign monomials when the expectation was uniform but failed.
    pub offending: Vec<String>,
    /// Forward substitution matrix `y = F·t` as `num/den` strings.
    pub substitution: Vec<Vec<String>>,
    /// Full expansion, when requested.
    pub expansion: Option<MultiPoly>,
}

impl Certificate {
    /// Canonical JSON value (keys sorted, rationals as strings).
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "ordering": self.ordering,
            "direction_order": self.direction_order,
            "polynomial": self.polynomial,
            "y0_free": self.y0_free,
            "n_pos": self.n_pos,
            "n_neg": self.n_neg,
            "n_zero": self.n_zero,
            "uniform_sign": self.uniform_sign,
            "n_monomials": self.n_monomials,
            "verdict": self.verdict,
            "expectation": self.expectation,
            "offending": self.offending,
            "bracket_convention": BRACKET_CONVENTION,
            "substitution": self.substitution,
        });
        if let Some(p) = &self.expansion {
            let terms: Vec<Value> = p
                .terms()
                .map(|(m, c)| json!([p.format_monomial(m), format_rational(c)]))
                .collect();
            v["terms"] = Value::Array(terms);
        }
        v
    }

    pub fn to_canonical_string(&self) -> String {
        // serde_json's default map is ordered, so keys come out sorted
        serde_json::to_string_pretty(&self.to_json()).expect("serializable") + "\n"
    }
}

/// The three gap-variable expansions for one ordering.
#[derive(Debug, Clone)]
pub struct Expansions {
    pub substitution: LinearSubstitution,
    pub as4: MultiPoly,
    pub b4: MultiPoly,
    pub delta4: MultiPoly,
}

pub fn expand_in_gaps(ordering: OrderingId) -> Expansions {
    let substitution = ordering.substitution();
    let as4 = change_vars(&sym_as4(), &substitution);
    let b4 = change_vars(&sym_b4(), &substitution);
    let delta4 = as4.clone() - b4.clone();
    Expansions {
        substitution,
        as4,
        b4,
        delta4,
    }
}

fn minority_monomials(p: &MultiPoly, keep_positive: bool, limit: usize) -> Vec<String> {
    p.terms()
        .filter(|(_, c)| c.is_positive() != keep_positive)
        .take(limit)
        .map(|(m, c)| format!("{}*{}", format_rational(c), p.format_monomial(m)))
        .collect()
}

fn cancelled_monomials(a: &MultiPoly, b: &MultiPoly, result: &MultiPoly) -> usize {
    let mut seen = std::collections::BTreeSet::new();
    for (m, _) in a.terms().chain(b.terms()) {
        seen.insert(m.exponents().to_vec());
    }
    seen.iter()
        .filter(|e| result.coefficient(e).is_zero())
        .count()
}

/// Build the `AS4`, `B4` and `delta4` certificates for `ordering`.
///
/// Expected outcomes: for `thm1` all three expansions are free of `y0` and
/// share one coefficient sign (so `D ≥ 1` on the ordered region); for
/// `zhangma` `AS4` and `B4` share one sign (so `D > 0`) while `delta4` is of
/// mixed sign.
pub fn build_certificates(ordering: OrderingId, with_expansion: bool) -> Vec<Certificate> {
    let ex = expand_in_gaps(ordering);
    let substitution: Vec<Vec<String>> = ex
        .substitution
        .forward()
        .iter()
        .map(|row| row.iter().map(format_rational).collect())
        .collect();
    let census_as4 = SignCensus::of(&ex.as4);
    let census_b4 = SignCensus::of(&ex.b4);
    let common = match (census_as4.uniform_sign(), census_b4.uniform_sign()) {
        (a, b) if a == b && matches!(a, UniformSign::Positive | UniformSign::Negative) => Some(a),
        _ => None,
    };

    let mut out = Vec::new();
    for (id, poly) in [
        (PolyId::As4, &ex.as4),
        (PolyId::B4, &ex.b4),
        (PolyId::Delta4, &ex.delta4),
    ] {
        let census = SignCensus::of(poly);
        let sign = census.uniform_sign();
        let y0_free = !poly.depends_on("y0");
        let expect_mixed = id == PolyId::Delta4 && ordering == OrderingId::Zhangma;
        let (pass, expectation) = if expect_mixed {
            (y0_free && sign == UniformSign::Mixed, "y0-free, mixed sign")
        } else {
            (
                y0_free && common.is_some() && Some(sign) == common,
                "y0-free, uniform sign common with AS4 and B4",
            )
        };
        let offending = if pass || expect_mixed {
            Vec::new()
        } else {
            // report coefficients disagreeing with the majority sign
            let majority_positive = match common {
                Some(UniformSign::Negative) => false,
                Some(_) => true,
                None => census.n_pos >= census.n_neg,
            };
            minority_monomials(poly, majority_positive, 50)
        };
        let n_zero = if id == PolyId::Delta4 {
            cancelled_monomials(&ex.as4, &ex.b4, &ex.delta4)
        } else {
            0
        };
        out.push(Certificate {
            ordering,
            direction_order: ordering.direction_order(),
            polynomial: id,
            y0_free,
            n_pos: census.n_pos,
            n_neg: census.n_neg,
            n_zero,
            uniform_sign: sign,
            n_monomials: poly.num_terms(),
            verdict: if pass { Verdict::Pass } else { Verdict::Fail },
            expectation: expectation.to_string(),
            offending,
            substitution: substitution.clone(),
            expansion: with_expansion.then(|| poly.clone()),
        });
    }
    out
}

/// Certificates for `ordering`; fails if any expected verdict does not hold.
pub fn certify(ordering: OrderingId) -> Result<Vec<Certificate>> {
    let certs = build_certificates(ordering, false);
    check_certificates(&certs)?;
    Ok(certs)
}

pub fn check_certificates(certs: &[Certificate]) -> Result<()> {
    match certs.iter().find(|c| c.verdict == Verdict::Fail) {
        None => Ok(()),
        Some(c) => Err(Error::CertificateFailed {
            ordering: c.ordering.to_string(),
            polynomial: c.polynomial.to_string(),
            reason: format!(
                "expected {}; got y0_free={}, sign {:?} ({} +, {} -)",
                c.expectation, c.y0_free, c.uniform_sign, c.n_pos, c.n_neg
            ),
            offending: c.offending.clone(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;
    use num_bigint::BigInt;

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn as4_is_multilinear_of_degree_six() {
        let p = sym_as4();
        assert_eq!(p.total_degree(), 6);
        for i in 0..12 {
            assert!(p.degree_in(i) <= 1);
        }
        // every monomial has total degree exactly 6 (homogeneous)
        assert!(p.terms().all(|(m, _)| m.total_degree() == 6));
    }

    #[test]
    fn b4_has_64_expansion_terms_before_collection() {
        // six distinct binomials in disjoint variables: nothing collects
        let b = sym_b4();
        assert_eq!(b.num_terms(), 64);
    }

    #[test]
    fn substitution_examples() {
        let s = OrderingId::Thm1.substitution();
        let t: Vec<BigRational> = (0..12).map(|i| ratio(3 * i - 7, 5)).collect();
        assert_eq!(s.invert(&s.apply(&t)), t);
        let c: Vec<BigRational> = vec![ratio(7, 3); 12];
        let y = s.apply(&c);
        assert_eq!(y[0], ratio(28, 1));
        assert!(y[1..].iter().all(|v| v.is_zero()));
        let vars = direction_variables(4);
        let diff = MultiPoly::var(&vars, "t31") - MultiPoly::var(&vars, "t21");
        let y1 = change_vars(&diff, &s);
        assert_eq!(y1, MultiPoly::var(s.target(), "y1"));
        assert_eq!(change_vars(&MultiPoly::from_integer(5), &s), MultiPoly::from_integer(5));
    }

    #[test]
    fn forward_times_inverse_is_identity() {
        for ordering in [OrderingId::Thm1, OrderingId::Zhangma] {
            let s = ordering.substitution();
            for i in 0..12 {
                for j in 0..12 {
                    let v: BigRational = (0..12)
                        .map(|k| &s.forward()[i][k] * &s.inverse()[k][j])
                        .fold(BigRational::zero(), |a, b| a + b);
                    assert_eq!(v, if i == j { int(1) } else { int(0) });
                }
            }
        }
    }

    #[test]
    fn invalid_orderings_rejected() {
        let mut order = OrderingId::Thm1.direction_order();
        order[3] = order[2].clone();
        assert!(matches!(build_substitution(&order), Err(Error::InvalidOrdering(_))));
        assert!(matches!(
            build_substitution(&order[..5]),
            Err(Error::InvalidOrdering(_))
        ));
    }

    #[test]
    fn b4_is_y0_free_under_thm1() {
        let b = change_vars(&sym_b4(), &OrderingId::Thm1.substitution());
        assert!(!b.depends_on("y0"));
    }

    #[test]
    fn change_vars_is_evaluation_compatible() {
        let s = OrderingId::Zhangma.substitution();
        let vars = direction_variables(4);
        let p = MultiPoly::var(&vars, "t12") * MultiPoly::var(&vars, "t43")
            - MultiPoly::var(&vars, "t21").scale(&ratio(2, 7));
        let q = change_vars(&p, &s);
        let y: Vec<BigRational> = (0..12).map(|i| ratio(i * i - 5, 3)).collect();
        assert_eq!(q.eval(&y), p.eval(&s.invert(&y)));
    }

    #[test]
    fn certificate_json_is_canonical() {
        let certs = build_certificates(OrderingId::Thm1, false);
        let text = certs[1].to_canonical_string();
        let keys: Vec<&str> = text
            .lines()
            .filter_map(|l| l.strip_prefix("  \"").and_then(|r| r.split('"').next()))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(text.contains("\"polynomial\": \"B4\""));
    }
}
