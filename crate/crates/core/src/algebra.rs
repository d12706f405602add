//! Finite-dimensional commutative associative unital real algebras given by
//! structure constants, their elements, and their complexification.
//!
//! Basis index 0 is always the unit. Specs are validated on construction and
//! shared behind an [`Arc`]; elements carry the `Arc` and every binary
//! operation checks that both operands live in the same algebra.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{self, SparseRow};
use crate::scalar::{abs_rat, fmt_rational, int, Gaussian, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Commutativity,
    Associativity,
    Unit,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Commutativity => "commutativity",
            Axiom::Associativity => "associativity",
            Axiom::Unit => "unit",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("{kind} axiom fails at basis indices {indices:?}")]
    AxiomViolation { kind: Axiom, indices: Vec<usize> },
    #[error("malformed algebra: {0}")]
    Shape(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("invalid preset parameter: {0}")]
    InvalidParam(String),
    #[error("operands belong to different algebras (`{0}` vs `{1}`)")]
    AlgebraMismatch(String, String),
    #[error("element is not invertible")]
    NotInvertible,
}

pub type Result<T> = std::result::Result<T, AlgebraError>;

/// Structure constants `c[i][j][k]`: `e_i * e_j = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    name: String,
    labels: Vec<String>,
    c: Vec<Vec<Vec<Rational>>>,
}

pub type Algebra = Arc<AlgebraSpec>;

/// Builds and validates an algebra.
pub fn make_algebra(
    name: impl Into<String>,
    labels: Vec<String>,
    structure_constants: Vec<Vec<Vec<Rational>>>,
) -> Result<Algebra> {
    let dim = labels.len();
    if dim == 0 {
        return Err(AlgebraError::Shape("dimension must be at least 1".into()));
    }
    if labels[0] != "1" {
        return Err(AlgebraError::Shape(format!(
            "first basis label must be `1`, found `{}`",
            labels[0]
        )));
    }
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(AlgebraError::Shape(format!("duplicate basis label `{l}`")));
        }
    }
    let consistent = structure_constants.len() == dim
        && structure_constants
            .iter()
            .all(|row| row.len() == dim && row.iter().all(|v| v.len() == dim));
    if !consistent {
        return Err(AlgebraError::Shape(format!(
            "structure constants must be a {dim}x{dim}x{dim} array"
        )));
    }
    let spec = AlgebraSpec {
        name: name.into(),
        labels,
        c: structure_constants,
    };
    spec.validate()?;
    Ok(Arc::new(spec))
}

impl AlgebraSpec {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[i][j][k]
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<Rational>>] {
        &self.c
    }

    /// Runs the three axiom loops exhaustively.
    pub fn validate(&self) -> Result<()> {
        let l = self.dim();
        for j in 0..l {
            for k in 0..l {
                let expect = if j == k {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                if self.c[0][j][k] != expect {
                    return Err(AlgebraError::AxiomViolation {
                        kind: Axiom::Unit,
                        indices: vec![0, j, k],
                    });
                }
            }
        }
        for i in 0..l {
            for j in 0..l {
                for k in 0..l {
                    if self.c[i][j][k] != self.c[j][i][k] {
                        return Err(AlgebraError::AxiomViolation {
                            kind: Axiom::Commutativity,
                            indices: vec![i, j, k],
                        });
                    }
                }
            }
        }
        // (e_i e_j) e_p = e_i (e_j e_p)
        for i in 0..l {
            for j in 0..l {
                for p in 0..l {
                    for k in 0..l {
                        let mut lhs = Rational::zero();
                        let mut rhs = Rational::zero();
                        for m in 0..l {
                            lhs += &self.c[i][j][m] * &self.c[m][p][k];
                            rhs += &self.c[j][p][m] * &self.c[i][m][k];
                        }
                        if lhs != rhs {
                            return Err(AlgebraError::AxiomViolation {
                                kind: Axiom::Associativity,
                                indices: vec![i, j, p, k],
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `x * y` on raw coefficient vectors over any scalar that rationals act on.
    pub fn mul_coeffs<T: Scalar>(&self, x: &[T], y: &[T]) -> Vec<T> {
        let l = self.dim();
        let mut out = vec![T::zero(); l];
        for i in 0..l {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..l {
                if y[j].is_zero() {
                    continue;
                }
                let xy = x[i].clone() * y[j].clone();
                for (k, slot) in out.iter_mut().enumerate() {
                    let c = &self.c[i][j][k];
                    if !c.is_zero() {
                        *slot = slot.clone() + xy.scale(c);
                    }
                }
            }
        }
        out
    }

    /// True when all non-unit basis elements are nilpotent and their span is
    /// closed under multiplication, i.e. the span is the maximal ideal of a
    /// local algebra.
    pub fn is_local(self: &Arc<Self>) -> bool {
        let l = self.dim();
        for i in 1..l {
            let e = ComplexAlgebraElement::basis(self, i);
            if e.nilpotency_index().is_none() {
                return false;
            }
            for j in 1..l {
                if !self.c[i][j][0].is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Renders the algebra in the text format read by [`crate::cli::formats`].
    pub fn to_text(&self) -> String {
        let l = self.dim();
        let mut out = format!("algebra {} dim={}\n", self.name, l);
        out.push_str("basis");
        for label in &self.labels {
            out.push(' ');
            out.push_str(label);
        }
        out.push('\n');
        for i in 1..l {
            for j in i..l {
                let terms: Vec<String> = (0..l)
                    .filter(|&k| !self.c[i][j][k].is_zero())
                    .map(|k| {
                        let c = &self.c[i][j][k];
                        if c.is_one() {
                            self.labels[k].clone()
                        } else {
                            format!("{}*{}", fmt_rational(c), self.labels[k])
                        }
                    })
                    .collect();
                if terms.is_empty() {
                    continue;
                }
                out.push_str(&format!(
                    "{} * {} = {}\n",
                    self.labels[i],
                    self.labels[j],
                    terms.join(" + ")
                ));
            }
        }
        out
    }
}

/// Scalars that the rational structure constants can act on.
pub trait Scalar: linalg::Field {
    fn scale(&self, r: &Rational) -> Self;
}

impl Scalar for Rational {
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
}

impl Scalar for Gaussian {
    fn scale(&self, r: &Rational) -> Self {
        Gaussian::new(&self.re * r, &self.im * r)
    }
}

fn zero_constants(l: usize) -> Vec<Vec<Vec<Rational>>> {
    vec![vec![vec![Rational::zero(); l]; l]; l]
}

fn with_unit(mut c: Vec<Vec<Vec<Rational>>>) -> Vec<Vec<Vec<Rational>>> {
    let l = c.len();
    for j in 0..l {
        c[0][j][j] = Rational::one();
        c[j][0][j] = Rational::one();
    }
    c
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    Reals,
    ComplexAsReal,
    Dual,
    Split,
    TruncatedPoly(usize),
    RealsPower(usize),
}

impl Preset {
    /// Accepts `reals`, `complex_as_real` (or `complex`), `dual`, `split`,
    /// `truncated_poly(m)` and `reals^m` (or `product_of(reals^m)`).
    pub fn parse(name: &str) -> Result<Preset> {
        let name = name.trim();
        let param = |inner: &str| -> Result<usize> {
            let m: usize = inner
                .trim()
                .parse()
                .map_err(|_| AlgebraError::InvalidParam(format!("`{inner}` is not a count")))?;
            if m < 1 {
                return Err(AlgebraError::InvalidParam(format!(
                    "m = {m} must be at least 1"
                )));
            }
            Ok(m)
        };
        match name {
            "reals" | "R" => Ok(Preset::Reals),
            "complex_as_real" | "complex" | "C" => Ok(Preset::ComplexAsReal),
            "dual" => Ok(Preset::Dual),
            "split" => Ok(Preset::Split),
            _ => {
                if let Some(inner) = name
                    .strip_prefix("truncated_poly(")
                    .and_then(|s| s.strip_suffix(')'))
                {
                    return Ok(Preset::TruncatedPoly(param(inner)?));
                }
                let power = name
                    .strip_prefix("product_of(")
                    .and_then(|s| s.strip_suffix(')'))
                    .unwrap_or(name);
                if let Some(inner) = power.strip_prefix("reals^") {
                    return Ok(Preset::RealsPower(param(inner)?));
                }
                Err(AlgebraError::UnknownPreset(name.to_string()))
            }
        }
    }

    pub fn build(self) -> Result<Algebra> {
        match self {
            Preset::Reals => make_algebra("reals", vec!["1".into()], with_unit(zero_constants(1))),
            Preset::ComplexAsReal => {
                let mut c = with_unit(zero_constants(2));
                c[1][1][0] = int(-1);
                make_algebra("complex_as_real", vec!["1".into(), "j".into()], c)
            }
            Preset::Dual => {
                let c = with_unit(zero_constants(2));
                make_algebra("dual", vec!["1".into(), "n".into()], c)
            }
            Preset::Split => {
                let r = Preset::Reals.build()?;
                let s = direct_sum(&r, &r)?;
                rename(&s, "split")
            }
            Preset::TruncatedPoly(m) => {
                if m < 1 {
                    return Err(AlgebraError::InvalidParam(format!(
                        "m = {m} must be at least 1"
                    )));
                }
                let mut c = zero_constants(m);
                for i in 0..m {
                    for j in 0..m {
                        if i + j < m {
                            c[i][j][i + j] = Rational::one();
                        }
                    }
                }
                let labels = (0..m)
                    .map(|i| match i {
                        0 => "1".to_string(),
                        1 => "t".to_string(),
                        _ => format!("t{i}"),
                    })
                    .collect();
                make_algebra(format!("truncated_poly({m})"), labels, c)
            }
            Preset::RealsPower(m) => {
                if m < 1 {
                    return Err(AlgebraError::InvalidParam(format!(
                        "m = {m} must be at least 1"
                    )));
                }
                let r = Preset::Reals.build()?;
                let mut acc = r.clone();
                for _ in 1..m {
                    acc = direct_sum(&acc, &r)?;
                }
                rename(&acc, &format!("reals^{m}"))
            }
        }
    }
}

pub fn preset_algebra(name: &str) -> Result<Algebra> {
    Preset::parse(name)?.build()
}

fn rename(a: &Algebra, name: &str) -> Result<Algebra> {
    make_algebra(name, a.labels.clone(), a.c.clone())
}

/// Re-expresses raw structure constants in a new basis whose first vector
/// is the unit. `basis[m]` holds raw coordinates of the m-th new basis vector.
fn rebase(raw: &[Vec<Vec<Rational>>], basis: &[Vec<Rational>]) -> Vec<Vec<Vec<Rational>>> {
    let l = basis.len();
    // columns of B are the new basis vectors; solve B y = v for coordinates
    let rows: Vec<SparseRow<Rational>> = (0..l)
        .map(|r| linalg::sparse(&basis.iter().map(|b| b[r].clone()).collect::<Vec<_>>()))
        .collect();
    let raw_mul = |x: &[Rational], y: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); l];
        for i in 0..l {
            for j in 0..l {
                let xy = &x[i] * &y[j];
                if xy.is_zero() {
                    continue;
                }
                for k in 0..l {
                    out[k] += &xy * &raw[i][j][k];
                }
            }
        }
        out
    };
    let mut c = zero_constants(l);
    for i in 0..l {
        for j in 0..l {
            let prod = raw_mul(&basis[i], &basis[j]);
            let coords = linalg::solve(l, rows.clone(), prod)
                .expect("basis change matrix must be invertible");
            c[i][j] = coords;
        }
    }
    c
}

/// `a ⊕ b` with componentwise multiplication. The basis is
/// `[(1,1), (1,0), (e_i,0) for i>=1, (0,f_j) for j>=1]`, labeled
/// `1, a_1, a_<label>, b_<label>`.
pub fn direct_sum(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    let (la, lb) = (a.dim(), b.dim());
    let l = la + lb;
    let mut raw = zero_constants(l);
    for i in 0..la {
        for j in 0..la {
            for k in 0..la {
                raw[i][j][k] = a.c[i][j][k].clone();
            }
        }
    }
    for i in 0..lb {
        for j in 0..lb {
            for k in 0..lb {
                raw[la + i][la + j][la + k] = b.c[i][j][k].clone();
            }
        }
    }
    let unit_vec = |positions: &[usize]| {
        let mut v = vec![Rational::zero(); l];
        for &p in positions {
            v[p] = Rational::one();
        }
        v
    };
    let mut basis = vec![unit_vec(&[0, la]), unit_vec(&[0])];
    let mut labels = vec!["1".to_string(), "a_1".to_string()];
    for i in 1..la {
        basis.push(unit_vec(&[i]));
        labels.push(format!("a_{}", a.labels[i]));
    }
    for j in 1..lb {
        basis.push(unit_vec(&[la + j]));
        labels.push(format!("b_{}", b.labels[j]));
    }
    let c = rebase(&raw, &basis);
    make_algebra(format!("({}+{})", a.name, b.name), labels, c)
}

/// Coordinates change for [`direct_sum`]: row `m` gives the `(a, b)`
/// coordinates of the m-th basis vector of `a ⊕ b`.
pub fn direct_sum_embedding(
    a: &AlgebraSpec,
    b: &AlgebraSpec,
) -> Vec<(Vec<Rational>, Vec<Rational>)> {
    let (la, lb) = (a.dim(), b.dim());
    let e = |n: usize, at: Option<usize>| {
        let mut v = vec![Rational::zero(); n];
        if let Some(p) = at {
            v[p] = Rational::one();
        }
        v
    };
    let mut rows = vec![
        (e(la, Some(0)), e(lb, Some(0))),
        (e(la, Some(0)), e(lb, None)),
    ];
    for i in 1..la {
        rows.push((e(la, Some(i)), e(lb, None)));
    }
    for j in 1..lb {
        rows.push((e(la, None), e(lb, Some(j))));
    }
    rows
}

/// `a ⊗ b` with basis `e_i ⊗ f_j` at index `i * dim(b) + j`.
pub fn tensor_product(a: &Algebra, b: &Algebra) -> Result<Algebra> {
    let (la, lb) = (a.dim(), b.dim());
    let l = la * lb;
    let mut c = zero_constants(l);
    for i1 in 0..la {
        for j1 in 0..lb {
            for i2 in 0..la {
                for j2 in 0..lb {
                    for k1 in 0..la {
                        let ca = &a.c[i1][i2][k1];
                        if ca.is_zero() {
                            continue;
                        }
                        for k2 in 0..lb {
                            let cb = &b.c[j1][j2][k2];
                            if !cb.is_zero() {
                                c[i1 * lb + j1][i2 * lb + j2][k1 * lb + k2] = ca * cb;
                            }
                        }
                    }
                }
            }
        }
    }
    let mut labels = Vec::with_capacity(l);
    for i in 0..la {
        for j in 0..lb {
            labels.push(if i == 0 && j == 0 {
                "1".to_string()
            } else {
                format!("{}_{}", a.labels[i], b.labels[j])
            });
        }
    }
    make_algebra(format!("({}x{})", a.name, b.name), labels, c)
}

fn check_same(a: &Algebra, b: &Algebra) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(AlgebraError::AlgebraMismatch(
            a.name.clone(),
            b.name.clone(),
        ))
    }
}

/// An element of the real algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    algebra: Algebra,
    coeffs: Vec<Rational>,
}

impl AlgebraElement {
    pub fn new(algebra: &Algebra, coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() != algebra.dim() {
            return Err(AlgebraError::Shape(format!(
                "expected {} coefficients, got {}",
                algebra.dim(),
                coeffs.len()
            )));
        }
        Ok(AlgebraElement {
            algebra: algebra.clone(),
            coeffs,
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_same(&self.algebra, &other.algebra)?;
        Ok(AlgebraElement {
            algebra: self.algebra.clone(),
            coeffs: self.algebra.mul_coeffs(&self.coeffs, &other.coeffs),
        })
    }

    pub fn complexify(&self) -> ComplexAlgebraElement {
        ComplexAlgebraElement {
            algebra: self.algebra.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|r| Gaussian::new(r.clone(), Rational::zero()))
                .collect(),
        }
    }

    /// Max-row-sum norm of the regular representation. Submultiplicative,
    /// since the regular representation is multiplicative.
    pub fn operator_norm_bound(&self) -> Rational {
        let m = regular_representation(&self.algebra, &self.coeffs);
        m.iter()
            .map(|row| row.iter().fold(Rational::zero(), |acc, v| acc + abs_rat(v)))
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

/// Matrix of `y -> x*y`: entry `[k][j]` is the `e_k` coefficient of `x e_j`.
pub fn regular_representation<T: Scalar>(a: &AlgebraSpec, x: &[T]) -> Vec<Vec<T>> {
    let l = a.dim();
    let mut m = vec![vec![T::zero(); l]; l];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for j in 0..l {
            for (k, row) in m.iter_mut().enumerate() {
                let c = &a.c[i][j][k];
                if !c.is_zero() {
                    row[j] = row[j].clone() + xi.scale(c);
                }
            }
        }
    }
    m
}

/// An element of the complexification `S_c = S ⊗ C`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexAlgebraElement {
    algebra: Algebra,
    coeffs: Vec<Gaussian>,
}

impl ComplexAlgebraElement {
    pub fn new(algebra: &Algebra, coeffs: Vec<Gaussian>) -> Result<Self> {
        if coeffs.len() != algebra.dim() {
            return Err(AlgebraError::Shape(format!(
                "expected {} coefficients, got {}",
                algebra.dim(),
                coeffs.len()
            )));
        }
        Ok(ComplexAlgebraElement {
            algebra: algebra.clone(),
            coeffs,
        })
    }

    pub fn zero(algebra: &Algebra) -> Self {
        ComplexAlgebraElement {
            algebra: algebra.clone(),
            coeffs: vec![Gaussian::zero(); algebra.dim()],
        }
    }

    pub fn one(algebra: &Algebra) -> Self {
        Self::basis(algebra, 0)
    }

    pub fn basis(algebra: &Algebra, index: usize) -> Self {
        let mut e = Self::zero(algebra);
        e.coeffs[index] = Gaussian::one();
        e
    }

    /// `z * 1`, the scalar embedding `C ⊂ S_c`.
    pub fn scalar(algebra: &Algebra, z: Gaussian) -> Self {
        let mut e = Self::zero(algebra);
        e.coeffs[0] = z;
        e
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[Gaussian] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same(&self.algebra, &other.algebra)?;
        Ok(ComplexAlgebraElement {
            algebra: self.algebra.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, z: &Gaussian) -> Self {
        ComplexAlgebraElement {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().map(|a| a * z).collect(),
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        check_same(&self.algebra, &other.algebra)?;
        Ok(ComplexAlgebraElement {
            algebra: self.algebra.clone(),
            coeffs: self.algebra.mul_coeffs(&self.coeffs, &other.coeffs),
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.algebra);
        for _ in 0..e {
            acc = acc.multiply(self).expect("same algebra");
        }
        acc
    }

    pub fn conjugate(&self) -> Self {
        ComplexAlgebraElement {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn re_part(&self) -> AlgebraElement {
        AlgebraElement {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().map(|z| z.re.clone()).collect(),
        }
    }

    pub fn im_part(&self) -> AlgebraElement {
        AlgebraElement {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().map(|z| z.im.clone()).collect(),
        }
    }

    /// `re + i*im`.
    pub fn from_parts(re: &AlgebraElement, im: &AlgebraElement) -> Result<Self> {
        check_same(&re.algebra, &im.algebra)?;
        Ok(ComplexAlgebraElement {
            algebra: re.algebra.clone(),
            coeffs: re
                .coeffs
                .iter()
                .zip(&im.coeffs)
                .map(|(a, b)| Gaussian::new(a.clone(), b.clone()))
                .collect(),
        })
    }

    pub fn regular_representation(&self) -> Vec<Vec<Gaussian>> {
        regular_representation(&self.algebra, &self.coeffs)
    }

    pub fn is_invertible(&self) -> bool {
        let m = self.regular_representation();
        let rows = m.iter().map(|r| linalg::sparse(r)).collect();
        linalg::rank(self.algebra.dim(), rows) == self.algebra.dim()
    }

    pub fn invert(&self) -> Result<Self> {
        let l = self.algebra.dim();
        let m = self.regular_representation();
        let rows = m.iter().map(|r| linalg::sparse(r)).collect();
        if linalg::rank(l, rows) < l {
            return Err(AlgebraError::NotInvertible);
        }
        let rows = m.iter().map(|r| linalg::sparse(r)).collect();
        let mut unit = vec![Gaussian::zero(); l];
        unit[0] = Gaussian::one();
        let y = linalg::solve(l, rows, unit).ok_or(AlgebraError::NotInvertible)?;
        Ok(ComplexAlgebraElement {
            algebra: self.algebra.clone(),
            coeffs: y,
        })
    }

    /// Smallest `m <= dim` with `x^m = 0`, by repeated multiplication.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let mut power = self.clone();
        for m in 1..=self.algebra.dim() {
            if power.is_zero() {
                return Some(m);
            }
            power = power.multiply(self).expect("same algebra");
        }
        None
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_index().is_some()
    }
}

impl fmt::Display for ComplexAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .zip(self.algebra.labels())
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, label)| format!("({})*{}", crate::scalar::fmt_gaussian(c), label))
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gi, rat};

    fn el(a: &Algebra, c: &[(i64, i64)]) -> ComplexAlgebraElement {
        ComplexAlgebraElement::new(a, c.iter().map(|&(r, i)| gi(r, i)).collect()).unwrap()
    }

    #[test]
    fn reals_is_the_unit_only() {
        let r = preset_algebra("reals").unwrap();
        assert_eq!(r.dim(), 1);
        assert_eq!(r.constant(0, 0, 0), &Rational::one());
    }

    #[test]
    fn dual_numbers_square_to_zero() {
        let d = preset_algebra("dual").unwrap();
        let n = ComplexAlgebraElement::basis(&d, 1);
        assert!(n.multiply(&n).unwrap().is_zero());
        assert_eq!(n.nilpotency_index(), Some(2));
    }

    #[test]
    fn broken_associativity_is_rejected() {
        // e*e = e + 1 would be fine; e*e = e with c[1][1][1] and a broken
        // unit row is not. Break associativity with e*e = f, e*f = e, f*f = 0.
        let mut c = with_unit(zero_constants(3));
        c[1][1][2] = Rational::one();
        c[1][2][1] = Rational::one();
        c[2][1][1] = Rational::one();
        let err = make_algebra("bad", vec!["1".into(), "e".into(), "f".into()], c).unwrap_err();
        assert!(matches!(
            err,
            AlgebraError::AxiomViolation {
                kind: Axiom::Associativity,
                ..
            }
        ));
    }

    #[test]
    fn non_commutative_and_unitless_are_rejected() {
        let mut c = with_unit(zero_constants(2));
        c[1][1][1] = Rational::one();
        c[0][1][1] = Rational::zero();
        let err = make_algebra("u", vec!["1".into(), "e".into()], c).unwrap_err();
        assert!(matches!(
            err,
            AlgebraError::AxiomViolation {
                kind: Axiom::Unit,
                ..
            }
        ));
    }

    #[test]
    fn truncated_poly_two_is_dual() {
        let t = preset_algebra("truncated_poly(2)").unwrap();
        let d = preset_algebra("dual").unwrap();
        assert_eq!(t.structure_constants(), d.structure_constants());
    }

    #[test]
    fn preset_errors() {
        assert!(matches!(
            preset_algebra("quaternions"),
            Err(AlgebraError::UnknownPreset(_))
        ));
        assert!(matches!(
            preset_algebra("truncated_poly(0)"),
            Err(AlgebraError::InvalidParam(_))
        ));
        assert!(matches!(
            preset_algebra("reals^0"),
            Err(AlgebraError::InvalidParam(_))
        ));
    }

    #[test]
    fn complex_as_real_has_j_squared_minus_one() {
        let c = preset_algebra("complex_as_real").unwrap();
        assert_eq!(c.constant(1, 1, 0), &int(-1));
    }

    #[test]
    fn split_equals_reals_direct_sum() {
        let r = preset_algebra("reals").unwrap();
        let s = direct_sum(&r, &r).unwrap();
        let split = preset_algebra("split").unwrap();
        assert_eq!(s.structure_constants(), split.structure_constants());
        // the non-unit basis element is the idempotent (1, 0)
        let p = ComplexAlgebraElement::basis(&split, 1);
        assert_eq!(p.multiply(&p).unwrap(), p);
    }

    #[test]
    fn dual_plus_reals_has_one_nilpotent_basis_element() {
        let d = preset_algebra("dual").unwrap();
        let r = preset_algebra("reals").unwrap();
        let s = direct_sum(&d, &r).unwrap();
        assert_eq!(s.dim(), 3);
        let nilpotent: Vec<usize> = (1..3)
            .filter(|&i| ComplexAlgebraElement::basis(&s, i).is_nilpotent())
            .collect();
        assert_eq!(nilpotent, vec![2]);
        assert_eq!(s.labels()[2], "a_n");
    }

    #[test]
    fn tensor_with_reals_is_identity() {
        let r = preset_algebra("reals").unwrap();
        for name in ["dual", "split", "complex_as_real", "truncated_poly(3)"] {
            let a = preset_algebra(name).unwrap();
            let t = tensor_product(&r, &a).unwrap();
            assert_eq!(t.structure_constants(), a.structure_constants(), "{name}");
        }
    }

    #[test]
    fn dual_tensor_dual() {
        let d = preset_algebra("dual").unwrap();
        let t = tensor_product(&d, &d).unwrap();
        assert_eq!(t.dim(), 4);
        let n1 = ComplexAlgebraElement::basis(&t, 2); // n ⊗ 1
        let n2 = ComplexAlgebraElement::basis(&t, 1); // 1 ⊗ n
        assert!(n1.multiply(&n1).unwrap().is_zero());
        assert!(n2.multiply(&n2).unwrap().is_zero());
        assert!(!n1.multiply(&n2).unwrap().is_zero());
        assert!(t.is_local());
    }

    #[test]
    fn multiply_examples() {
        let d = preset_algebra("dual").unwrap();
        let a = el(&d, &[(1, 0), (1, 0)]);
        let b = el(&d, &[(1, 0), (-1, 0)]);
        assert_eq!(a.multiply(&b).unwrap(), ComplexAlgebraElement::one(&d));
        // Z Zbar for Z = z1 + z2 n has n-coordinate z1 zb2 + z2 zb1
        let z = el(&d, &[(2, 1), (3, -1)]);
        let p = z.multiply(&z.conjugate()).unwrap();
        let (z1, z2) = (gi(2, 1), gi(3, -1));
        assert_eq!(p.coeffs()[0], &z1 * z1.conj());
        assert_eq!(p.coeffs()[1], &z1 * z2.conj() + &z2 * z1.conj());
    }

    #[test]
    fn invertibility_examples() {
        let d = preset_algebra("dual").unwrap();
        let x = el(&d, &[(1, 0), (1, 0)]);
        assert!(x.is_invertible());
        assert_eq!(x.invert().unwrap(), el(&d, &[(1, 0), (-1, 0)]));
        let n = el(&d, &[(0, 0), (1, 0)]);
        assert!(!n.is_invertible());
        assert_eq!(n.invert(), Err(AlgebraError::NotInvertible));
        // (1,0) in R ⊕ R is the idempotent basis element a_1
        let s = preset_algebra("split").unwrap();
        let p = ComplexAlgebraElement::basis(&s, 1);
        assert!(!p.is_invertible());
        let m = p.regular_representation();
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        assert!(det.is_zero());
    }

    #[test]
    fn nilpotency_examples() {
        let d = preset_algebra("dual").unwrap();
        assert!(!ComplexAlgebraElement::one(&d).is_nilpotent());
        let t3 = preset_algebra("truncated_poly(3)").unwrap();
        let x = el(&t3, &[(0, 0), (1, 0), (1, 0)]);
        assert_eq!(x.nilpotency_index(), Some(3));
        assert!(!x.is_invertible());
    }

    #[test]
    fn norm_of_dual_element() {
        let d = preset_algebra("dual").unwrap();
        let x = AlgebraElement::new(&d, vec![rat(-3, 2), rat(5, 7)]).unwrap();
        assert_eq!(x.operator_norm_bound(), rat(3, 2) + rat(5, 7));
        for name in [
            "reals",
            "dual",
            "split",
            "complex_as_real",
            "truncated_poly(4)",
            "reals^3",
        ] {
            let a = preset_algebra(name).unwrap();
            let mut one = vec![Rational::zero(); a.dim()];
            one[0] = Rational::one();
            let one = AlgebraElement::new(&a, one).unwrap();
            assert_eq!(one.operator_norm_bound(), Rational::one(), "{name}");
        }
    }

    #[test]
    fn cross_algebra_ops_fail() {
        let d = preset_algebra("dual").unwrap();
        let s = preset_algebra("split").unwrap();
        let x = ComplexAlgebraElement::one(&d);
        let y = ComplexAlgebraElement::one(&s);
        assert!(matches!(
            x.multiply(&y),
            Err(AlgebraError::AlgebraMismatch(..))
        ));
    }

    #[test]
    fn parts_reassemble() {
        let c = preset_algebra("complex_as_real").unwrap();
        let x = el(&c, &[(1, -2), (3, 4)]);
        let back = ComplexAlgebraElement::from_parts(&x.re_part(), &x.im_part()).unwrap();
        assert_eq!(back, x);
        assert_eq!(x.conjugate().conjugate(), x);
    }

    #[test]
    fn local_detection() {
        assert!(preset_algebra("dual").unwrap().is_local());
        assert!(preset_algebra("truncated_poly(4)").unwrap().is_local());
        assert!(preset_algebra("reals").unwrap().is_local());
        assert!(!preset_algebra("split").unwrap().is_local());
        assert!(!preset_algebra("complex_as_real").unwrap().is_local());
    }

    #[test]
    fn text_rendering_lists_nonzero_products() {
        let t = preset_algebra("truncated_poly(3)").unwrap();
        let text = t.to_text();
        assert!(text.starts_with("algebra truncated_poly(3) dim=3\n"));
        assert!(text.contains("t * t = t2\n"));
    }
}
