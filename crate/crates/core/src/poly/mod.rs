//! Sparse multivariate polynomials over Gaussian rationals in holomorphic
//! variables, their formal conjugates, and real variables.
//!
//! Conjugate variables are independent formal symbols paired with their
//! holomorphic partner by the [`VarTable`]. A polynomial is *real* when
//! [`Poly::conjugate`] fixes it.

mod algebra_poly;
mod subst;
mod table;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use smallvec::SmallVec;
use thiserror::Error;

use crate::scalar::{fmt_gaussian, Gaussian, Rational};

pub use algebra_poly::AlgebraPoly;
pub use subst::Substitution;
pub use table::{conj_name, Table, VarKind, VarTable};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("polynomials live over different variable tables")]
    TableMismatch,
    #[error("variable `{0}` is not bound")]
    UnboundVariable(String),
    #[error("duplicate variable name `{0}`")]
    DuplicateName(String),
    #[error("invalid variable name `{0}`")]
    BadName(String),
    #[error("variable `{0}` must have a positive weight")]
    BadWeight(String),
}

pub type Exps = SmallVec<[u16; 16]>;

/// Exponent vector with its total degree cached.
///
/// Ordered by total degree, then so that earlier variables with larger
/// exponents come first (`z1^2 < z1*z2 < z2^2` at equal degree).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    deg: u32,
    exps: Exps,
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg
            .cmp(&other.deg)
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn new(exps: Exps) -> Self {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { deg, exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            deg: 0,
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    pub fn var(nvars: usize, pos: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[pos] = 1;
        m.deg = 1;
        m
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exp(&self, pos: usize) -> u16 {
        self.exps[pos]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            deg: self.deg + other.deg,
            exps,
        }
    }

    pub fn weight(&self, table: &VarTable) -> u32 {
        self.exps
            .iter()
            .enumerate()
            .map(|(p, &e)| e as u32 * table.weight(p))
            .sum()
    }

    /// Exchanges each holomorphic exponent with its conjugate partner's.
    pub fn conjugate(&self, table: &VarTable) -> Monomial {
        let h = table.hol_count();
        let mut exps = self.exps.clone();
        for i in 0..h {
            exps.swap(i, h + i);
        }
        Monomial {
            deg: self.deg,
            exps,
        }
    }

    pub fn render(&self, table: &VarTable) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(p, &e)| {
                if e == 1 {
                    table.name(p).to_string()
                } else {
                    format!("{}^{}", table.name(p), e)
                }
            })
            .collect();
        parts.join("*")
    }
}

#[derive(Clone, Debug)]
pub struct Poly {
    table: Table,
    terms: BTreeMap<Monomial, Gaussian>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table) && self.terms == other.terms
    }
}

/// Whether two tables describe the same variables.
pub fn same_table(a: &Table, b: &Table) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn accumulate(terms: &mut BTreeMap<Monomial, Gaussian>, m: Monomial, c: Gaussian) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let sum = o.get() + c;
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

impl Poly {
    pub fn zero(table: &Table) -> Poly {
        Poly {
            table: table.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(table: &Table, c: Gaussian) -> Poly {
        Poly::term(table, Monomial::one(table.nvars()), c)
    }

    pub fn one(table: &Table) -> Poly {
        Poly::constant(table, Gaussian::one())
    }

    pub fn term(table: &Table, m: Monomial, c: Gaussian) -> Poly {
        debug_assert_eq!(m.exps.len(), table.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly {
            table: table.clone(),
            terms,
        }
    }

    pub fn var_at(table: &Table, pos: usize) -> Poly {
        Poly::term(table, Monomial::var(table.nvars(), pos), Gaussian::one())
    }

    pub fn var(table: &Table, name: &str) -> Result<Poly, PolyError> {
        let pos = table
            .position(name)
            .ok_or_else(|| PolyError::UnboundVariable(name.to_string()))?;
        Ok(Poly::var_at(table, pos))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Gaussian)>>(table: &Table, it: I) -> Poly {
        let mut terms = BTreeMap::new();
        for (m, c) in it {
            debug_assert_eq!(m.exps.len(), table.nvars());
            accumulate(&mut terms, m, c);
        }
        Poly {
            table: table.clone(),
            terms,
        }
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Gaussian)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Gaussian {
        self.terms.get(m).cloned().unwrap_or_else(Gaussian::zero)
    }

    /// Polynomial analogue of "a power series vanishes iff all of its
    /// coefficients vanish": zero iff the normalized term map is empty.
    pub fn is_identically_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.deg == 0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.deg).max()
    }

    /// Largest total exponent over the given positions.
    pub fn degree_in(&self, positions: &[usize]) -> u32 {
        self.terms
            .keys()
            .map(|m| positions.iter().map(|&p| m.exps[p] as u32).sum())
            .max()
            .unwrap_or(0)
    }

    fn check(&self, other: &Poly) -> Result<(), PolyError> {
        if same_table(&self.table, &other.table) {
            Ok(())
        } else {
            Err(PolyError::TableMismatch)
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(Poly {
            table: self.table.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), -c.clone());
        }
        Ok(Poly {
            table: self.table.clone(),
            terms,
        })
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check(other)?;
        Ok(self.mul_filtered(other, |_| true))
    }

    fn mul_filtered(&self, other: &Poly, keep: impl Fn(&Monomial) -> bool) -> Poly {
        let mut acc: HashMap<Monomial, Gaussian> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if !keep(&m) {
                    continue;
                }
                let c = crate::scalar::gmul(ca, cb);
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Vacant(v) => {
                        v.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut o) => {
                        *o.get_mut() += c;
                    }
                }
            }
        }
        Poly {
            table: self.table.clone(),
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Product with every term of exponent `> max` in `pos` dropped.
    pub fn mul_truncated(&self, other: &Poly, pos: usize, max: u16) -> Poly {
        assert!(same_table(&self.table, &other.table), "table mismatch");
        self.mul_filtered(other, |m| m.exps[pos] <= max)
    }

    pub fn truncate(&self, pos: usize, max: u16) -> Poly {
        Poly {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exps[pos] <= max)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Gaussian) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.table);
        }
        Poly {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), crate::scalar::gmul(v, c)))
                .collect(),
        }
    }

    pub fn scale_rat(&self, r: &Rational) -> Poly {
        self.scale(&Gaussian::new(r.clone(), Rational::zero()))
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.table);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn conjugate(&self) -> Poly {
        Poly {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.conjugate(&self.table), c.conj()))
                .collect(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.conjugate() == *self
    }

    /// `(p + conj p) / 2`.
    pub fn re(&self) -> Poly {
        let half = crate::scalar::rat(1, 2);
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let h = Gaussian::new(
                crate::scalar::rmul(&c.re, &half),
                crate::scalar::rmul(&c.im, &half),
            );
            accumulate(&mut terms, m.conjugate(&self.table), h.conj());
            accumulate(&mut terms, m.clone(), h);
        }
        Poly {
            table: self.table.clone(),
            terms,
        }
    }

    /// `(p - conj p) / (2i)`.
    pub fn im(&self) -> Poly {
        let half = crate::scalar::rat(1, 2);
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            // c / (2i) = (c.im - i c.re) / 2
            let h = Gaussian::new(
                crate::scalar::rmul(&c.im, &half),
                -crate::scalar::rmul(&c.re, &half),
            );
            accumulate(&mut terms, m.conjugate(&self.table), h.conj());
            accumulate(&mut terms, m.clone(), h);
        }
        Poly {
            table: self.table.clone(),
            terms,
        }
    }

    pub fn derivative(&self, pos: usize) -> Poly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exps[pos];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[pos] -= 1;
            let mono = Monomial {
                deg: m.deg - 1,
                exps,
            };
            accumulate(
                &mut terms,
                mono,
                c * Gaussian::from(Rational::from_integer(e.into())),
            );
        }
        Poly {
            table: self.table.clone(),
            terms,
        }
    }

    pub fn partial_derivative(&self, name: &str) -> Result<Poly, PolyError> {
        let pos = self
            .table
            .position(name)
            .ok_or_else(|| PolyError::UnboundVariable(name.to_string()))?;
        Ok(self.derivative(pos))
    }

    /// Weighted degree when every term has the same weight.
    pub fn homogeneous_weight(&self) -> Option<u32> {
        let mut weights = self.terms.keys().map(|m| m.weight(&self.table));
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }

    pub fn weights(&self) -> Vec<u32> {
        let mut ws: Vec<u32> = self.terms.keys().map(|m| m.weight(&self.table)).collect();
        ws.sort_unstable();
        ws.dedup();
        ws
    }

    pub fn grade_decompose(&self) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weight(&self.table))
                .or_insert_with(|| Poly::zero(&self.table))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// Keeps the terms for which `keep` holds.
    pub fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Poly {
        Poly {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient of `var^e` as a polynomial in the remaining variables.
    pub fn coefficient_of_power(&self, pos: usize, e: u16) -> Poly {
        Poly {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exps[pos] == e)
                .map(|(m, c)| {
                    let mut exps = m.exps.clone();
                    exps[pos] = 0;
                    (
                        Monomial {
                            deg: m.deg - e as u32,
                            exps,
                        },
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    pub fn eval(&self, values: &[Gaussian]) -> Gaussian {
        assert_eq!(values.len(), self.table.nvars());
        let mut acc = Gaussian::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (p, &e) in m.exps.iter().enumerate() {
                for _ in 0..e {
                    v *= &values[p];
                }
            }
            acc += v;
        }
        acc
    }

    /// Moves the polynomial to another table, matching variables by name
    /// after applying `rename`.
    pub fn rename_into(
        &self,
        target: &Table,
        rename: impl Fn(&str) -> String,
    ) -> Result<Poly, PolyError> {
        let n = self.table.nvars();
        let mut map = Vec::with_capacity(n);
        for p in 0..n {
            let name = rename(self.table.name(p));
            map.push(target.position(&name));
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut exps: Exps = SmallVec::from_elem(0, target.nvars());
            for (p, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let q =
                    map[p].ok_or_else(|| PolyError::UnboundVariable(rename(self.table.name(p))))?;
                exps[q] += e;
            }
            accumulate(&mut terms, Monomial::new(exps), c.clone());
        }
        Ok(Poly {
            table: target.clone(),
            terms,
        })
    }

    /// Same-name embedding into a table that contains all used variables.
    pub fn embed(&self, target: &Table) -> Result<Poly, PolyError> {
        self.rename_into(target, |s| s.to_string())
    }
}

/// Monomials in the holomorphic variables of `table` of weighted degree
/// `weight`, in monomial order.
pub fn hol_monomials_of_weight(table: &VarTable, weight: u32) -> Vec<Monomial> {
    let h = table.hol_count();
    let mut out = Vec::new();
    let mut exps: Exps = SmallVec::from_elem(0, table.nvars());
    fn rec(
        table: &VarTable,
        v: usize,
        h: usize,
        left: u32,
        exps: &mut Exps,
        out: &mut Vec<Monomial>,
    ) {
        if v == h {
            if left == 0 {
                out.push(Monomial::new(exps.clone()));
            }
            return;
        }
        let w = table.weight(v);
        let mut e = 0u32;
        while e * w <= left {
            exps[v] = e as u16;
            rec(table, v + 1, h, left - e * w, exps, out);
            e += 1;
        }
        exps[v] = 0;
    }
    rec(table, 0, h, weight, &mut exps, &mut out);
    out.sort();
    out
}

/// Monomials in the holomorphic variables of total degree at most `d`.
pub fn hol_monomials_up_to_degree(table: &VarTable, d: u32) -> Vec<Monomial> {
    let h = table.hol_count();
    let mut out = Vec::new();
    let mut exps: Exps = SmallVec::from_elem(0, table.nvars());
    fn rec(v: usize, h: usize, left: u32, exps: &mut Exps, out: &mut Vec<Monomial>) {
        if v == h {
            out.push(Monomial::new(exps.clone()));
            return;
        }
        for e in 0..=left {
            exps[v] = e as u16;
            rec(v + 1, h, left - e, exps, out);
        }
        exps[v] = 0;
    }
    rec(0, h, d, &mut exps, &mut out);
    out.sort();
    out
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.try_add(rhs).expect("table mismatch")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.try_sub(rhs).expect("table mismatch")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.try_mul(rhs).expect("table mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

fn render_term(coeff: &Gaussian, mono: &str) -> String {
    let c = fmt_gaussian(coeff);
    let needs_parens = !coeff.re.is_zero() && !coeff.im.is_zero();
    if mono.is_empty() {
        return if needs_parens { format!("({c})") } else { c };
    }
    if coeff.is_one() {
        return mono.to_string();
    }
    if *coeff == -Gaussian::one() {
        return format!("-{mono}");
    }
    if needs_parens {
        format!("({c})*{mono}")
    } else {
        format!("{c}*{mono}")
    }
}

/// Canonical rendering in monomial order; parseable by the CLI grammar.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let term = render_term(c, &m.render(&self.table));
            if k == 0 {
                out.push_str(&term);
            } else if let Some(rest) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{gi, int};

    fn table() -> Table {
        VarTable::new(
            vec![("z1".into(), 1), ("w1".into(), 2)],
            vec![("u1".into(), 2)],
        )
        .unwrap()
    }

    fn v(t: &Table, n: &str) -> Poly {
        Poly::var(t, n).unwrap()
    }

    #[test]
    fn square_of_modulus() {
        let t = table();
        let zz = &v(&t, "z1") * &v(&t, "zb1");
        let sq = zz.pow(2);
        let expect = &v(&t, "z1").pow(2) * &v(&t, "zb1").pow(2);
        assert_eq!(sq, expect);
        assert_eq!(sq.homogeneous_weight(), Some(4));
    }

    #[test]
    fn conjugation_swaps_partners() {
        let t = table();
        let p = &v(&t, "z1").pow(2) * &v(&t, "zb1");
        assert_eq!(p.conjugate(), &v(&t, "z1") * &v(&t, "zb1").pow(2));
        let zz = &v(&t, "z1") * &v(&t, "zb1");
        assert!(zz.is_real());
        assert!((&zz - &zz.conjugate()).is_identically_zero());
        let iz = v(&t, "z1").scale(&gi(0, 1));
        assert_eq!(iz.conjugate(), v(&t, "zb1").scale(&gi(0, -1)));
    }

    #[test]
    fn derivatives() {
        let t = table();
        let p = &v(&t, "z1").pow(2) * &v(&t, "zb1").pow(2);
        let d = p.partial_derivative("z1").unwrap();
        assert_eq!(d, (&v(&t, "z1") * &v(&t, "zb1").pow(2)).scale(&gi(2, 0)));
        let zz = &v(&t, "z1") * &v(&t, "zb1");
        assert_eq!(zz.partial_derivative("zb1").unwrap(), v(&t, "z1"));
        assert!(matches!(
            p.partial_derivative("q"),
            Err(PolyError::UnboundVariable(_))
        ));
    }

    #[test]
    fn grading() {
        let t = table();
        let p = &(&v(&t, "z1") * &v(&t, "zb1")) + &v(&t, "u1").pow(2);
        let g = p.grade_decompose();
        assert_eq!(g.len(), 2);
        assert_eq!(g[&2], &v(&t, "z1") * &v(&t, "zb1"));
        assert_eq!(g[&4], v(&t, "u1").pow(2));
    }

    #[test]
    fn table_mismatch_is_reported() {
        let a = table();
        let b = VarTable::new(vec![("z1".into(), 1)], vec![]).unwrap();
        let p = v(&a, "z1");
        let q = v(&b, "z1");
        assert_eq!(p.try_add(&q), Err(PolyError::TableMismatch));
        assert_eq!(p.try_mul(&q), Err(PolyError::TableMismatch));
    }

    #[test]
    fn rendering() {
        let t = table();
        let p =
            &(&v(&t, "z1").pow(2) * &v(&t, "zb1")).scale(&gi(3, 0)) - &v(&t, "u1").scale(&gi(0, 2));
        assert_eq!(p.to_string(), "-2*i*u1 + 3*z1^2*zb1");
        let c = Poly::constant(&t, gi(1, -1));
        assert_eq!(c.to_string(), "(1-i)");
        assert_eq!(Poly::zero(&t).to_string(), "0");
        let r = v(&t, "z1").scale_rat(&crate::scalar::rat(-1, 2));
        assert_eq!(r.to_string(), "-1/2*z1");
    }

    #[test]
    fn re_and_im_parts() {
        let t = table();
        let w = v(&t, "w1");
        assert_eq!(
            w.re(),
            (&w + &v(&t, "wb1")).scale_rat(&crate::scalar::rat(1, 2))
        );
        let iw = w.scale(&gi(0, 1));
        assert_eq!(iw.im(), w.re());
        assert!(w.im().is_real());
        let _ = int(0);
    }

    #[test]
    fn truncated_product() {
        let t = table();
        let p = &Poly::one(&t) + &v(&t, "u1");
        let q = p.mul_truncated(&p, t.position("u1").unwrap(), 1);
        assert_eq!(q, &Poly::one(&t) + &v(&t, "u1").scale(&gi(2, 0)));
    }
}
