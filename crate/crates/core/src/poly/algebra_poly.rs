use std::collections::BTreeMap;

use num_traits::Zero;

use super::{same_table, Monomial, Poly, PolyError, Table};
use crate::algebra::{Algebra, ComplexAlgebraElement};
use crate::scalar::{Gaussian, Rational};

/// Polynomial in algebra-valued variables with coefficients in the
/// complexified algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraPoly {
    table: Table,
    algebra: Algebra,
    terms: BTreeMap<Monomial, Vec<Gaussian>>,
}

fn add_into(terms: &mut BTreeMap<Monomial, Vec<Gaussian>>, m: Monomial, c: Vec<Gaussian>) {
    let entry = terms
        .entry(m.clone())
        .or_insert_with(|| vec![Gaussian::zero(); c.len()]);
    for (a, b) in entry.iter_mut().zip(c) {
        *a += b;
    }
    if entry.iter().all(Zero::is_zero) {
        terms.remove(&m);
    }
}

/// Nonzero structure constants as `(i, j, k, c)`.
fn products(a: &Algebra) -> Vec<(usize, usize, usize, Rational)> {
    let l = a.dim();
    let mut out = Vec::new();
    for i in 0..l {
        for j in 0..l {
            for k in 0..l {
                let c = a.constant(i, j, k);
                if !c.is_zero() {
                    out.push((i, j, k, c.clone()));
                }
            }
        }
    }
    out
}

fn mul_vec(prods: &[(usize, usize, usize, Rational)], x: &[Poly], y: &[Poly]) -> Vec<Poly> {
    let table = x[0].table().clone();
    let mut out = vec![Poly::zero(&table); x.len()];
    for (i, j, k, c) in prods {
        if x[*i].is_empty() || y[*j].is_empty() {
            continue;
        }
        let p = (&x[*i] * &y[*j]).scale_rat(c);
        out[*k] = &out[*k] + &p;
    }
    out
}

impl AlgebraPoly {
    pub fn zero(table: &Table, algebra: &Algebra) -> Self {
        AlgebraPoly {
            table: table.clone(),
            algebra: algebra.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// Embeds a scalar polynomial via `c -> c * 1`.
    pub fn from_poly(p: &Poly, algebra: &Algebra) -> Self {
        let l = algebra.dim();
        let mut out = AlgebraPoly::zero(p.table(), algebra);
        for (m, c) in p.terms() {
            let mut v = vec![Gaussian::zero(); l];
            v[0] = c.clone();
            out.terms.insert(m.clone(), v);
        }
        out
    }

    pub fn term(table: &Table, m: Monomial, c: &ComplexAlgebraElement) -> Self {
        let mut out = AlgebraPoly::zero(table, c.algebra());
        if !c.is_zero() {
            out.terms.insert(m, c.coeffs().to_vec());
        }
        out
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &[Gaussian])> {
        self.terms.iter().map(|(m, c)| (m, c.as_slice()))
    }

    fn check(&self, other: &Self) -> Result<(), PolyError> {
        if same_table(&self.table, &other.table) && self.algebra == other.algebra {
            Ok(())
        } else {
            Err(PolyError::TableMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_into(&mut terms, m.clone(), c.clone());
        }
        Ok(AlgebraPoly {
            terms,
            ..self.clone()
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                add_into(&mut terms, ma.mul(mb), self.algebra.mul_coeffs(ca, cb));
            }
        }
        Ok(AlgebraPoly {
            terms,
            ..self.clone()
        })
    }

    pub fn conjugate(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                (
                    m.conjugate(&self.table),
                    c.iter().map(|z| z.conj()).collect(),
                )
            })
            .collect();
        AlgebraPoly {
            terms,
            ..self.clone()
        }
    }

    /// Writes every variable `V` as `v_1 e_1 + ... + v_l e_l` over `target`
    /// (built by [`super::VarTable::expanded`]) and returns the `l`
    /// coordinate polynomials.
    pub fn scalar_expand(&self, target: &Table) -> Vec<Poly> {
        let l = self.algebra.dim();
        assert_eq!(
            target.nvars(),
            self.table.nvars() * l,
            "target is not the expansion"
        );
        let prods = products(&self.algebra);
        let mut powers: BTreeMap<(usize, u16), Vec<Poly>> = BTreeMap::new();
        let mut out = vec![Poly::zero(target); l];
        for (m, c) in &self.terms {
            let mut acc: Vec<Poly> = c
                .iter()
                .map(|z| Poly::constant(target, z.clone()))
                .collect();
            for (v, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !powers.contains_key(&(v, e)) {
                    let base: Vec<Poly> = (0..l).map(|k| Poly::var_at(target, v * l + k)).collect();
                    let mut k = (1..e)
                        .rev()
                        .find(|k| powers.contains_key(&(v, *k)))
                        .unwrap_or(0);
                    let mut cur = if k == 0 {
                        let mut one = vec![Poly::zero(target); l];
                        one[0] = Poly::one(target);
                        one
                    } else {
                        powers[&(v, k)].clone()
                    };
                    while k < e {
                        cur = mul_vec(&prods, &cur, &base);
                        k += 1;
                        powers.insert((v, k), cur.clone());
                    }
                }
                acc = mul_vec(&prods, &acc, &powers[&(v, e)]);
            }
            for (o, a) in out.iter_mut().zip(acc) {
                *o = &*o + &a;
            }
        }
        out
    }
}
