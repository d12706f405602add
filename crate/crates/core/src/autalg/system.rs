use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::{AutError, VectorFieldPoly};
use crate::linalg::{self, SparseRow};
use crate::poly::{hol_monomials_of_weight, same_table, Monomial, Poly};
use crate::scalar::{gauss, rat, Gaussian, Rational};
use crate::surface::{Chart, ModelSurface};

/// Real unknown: the real or imaginary part of the coefficient of `mono`
/// in the component at hol position `pos`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Unknown {
    pub pos: usize,
    pub mono: Monomial,
    pub imag: bool,
}

/// General weight-`weight` field with undetermined real coefficients.
#[derive(Clone, Debug)]
pub struct TangencyAnsatz {
    weight: i64,
    unknowns: Vec<Unknown>,
    index: HashMap<(usize, Monomial), usize>,
}

impl TangencyAnsatz {
    pub fn new(q: &ModelSurface, weight: i64) -> Self {
        let t = q.table();
        let mut unknowns = Vec::new();
        let mut index = HashMap::new();
        for pos in 0..q.n() + q.k() {
            let w = weight + t.hol_weight(pos) as i64;
            if w < 0 {
                continue;
            }
            for mono in hol_monomials_of_weight(t, w as u32) {
                index.insert((pos, mono.clone()), unknowns.len());
                unknowns.push(Unknown {
                    pos,
                    mono: mono.clone(),
                    imag: false,
                });
                unknowns.push(Unknown {
                    pos,
                    mono,
                    imag: true,
                });
            }
        }
        TangencyAnsatz {
            weight,
            unknowns,
            index,
        }
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn ncols(&self) -> usize {
        self.unknowns.len()
    }

    pub fn unknowns(&self) -> &[Unknown] {
        &self.unknowns
    }

    /// Column of the real part of `(pos, mono)`; the imaginary part follows.
    pub fn column(&self, pos: usize, mono: &Monomial) -> Option<usize> {
        self.index.get(&(pos, mono.clone())).copied()
    }

    pub fn field(&self, q: &ModelSurface, x: &[Rational]) -> VectorFieldPoly {
        let t = q.table();
        let mut x_field = VectorFieldPoly::zero(t, q.n());
        let mut per_pos: BTreeMap<usize, Vec<(Monomial, Gaussian)>> = BTreeMap::new();
        for pair in self.unknowns.chunks(2).zip(x.chunks(2)) {
            let (u, v) = pair;
            let c = gauss(v[0].clone(), v[1].clone());
            if !c.is_zero() {
                per_pos
                    .entry(u[0].pos)
                    .or_default()
                    .push((u[0].mono.clone(), c));
            }
        }
        for (pos, terms) in per_pos {
            *x_field.component_mut(pos) = Poly::from_terms(t, terms);
        }
        x_field
    }

    /// Coordinates of a field, or `None` if it has terms outside the ansatz.
    pub fn vector(&self, x: &VectorFieldPoly) -> Option<Vec<Rational>> {
        let mut v = vec![Rational::zero(); self.ncols()];
        for (pos, c) in x.components().enumerate() {
            for (m, coeff) in c.terms() {
                let col = self.column(pos, m)?;
                v[col] = coeff.re.clone();
                v[col + 1] = coeff.im.clone();
            }
        }
        Some(v)
    }

    pub fn sparse_vector(&self, x: &VectorFieldPoly) -> Option<SparseRow<Rational>> {
        self.vector(x).map(|v| linalg::sparse(&v))
    }
}

/// Homogeneous rational system whose nullspace is the weight component.
#[derive(Clone, Debug)]
pub struct TangencySystem {
    pub ansatz: TangencyAnsatz,
    pub rows: Vec<SparseRow<Rational>>,
}

impl TangencySystem {
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// `A v` as a map from row index to value.
    pub fn apply(&self, v: &[(usize, Rational)]) -> Vec<Rational> {
        let dense: HashMap<usize, &Rational> = v.iter().map(|(c, x)| (*c, x)).collect();
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .filter_map(|(c, a)| dense.get(c).map(|x| a * *x))
                    .fold(Rational::zero(), |acc, x| acc + x)
            })
            .collect()
    }
}

/// Residuals of the unknowns for `(pos, mono)`: the real-coefficient
/// column first, the imaginary one second, one polynomial per equation.
fn pair_residuals(
    q: &ModelSurface,
    chart: &mut Chart<'_>,
    dphi_z: &[Vec<Poly>],
    dphi_u: &[Vec<Poly>],
    pos: usize,
    mono: &Monomial,
) -> (Vec<Poly>, Vec<Poly>) {
    let p = chart.image(mono);
    let two = Rational::from_integer(2.into());
    let n = q.n();
    let (pr, pi) = (p.re(), p.im());
    (0..q.k())
        .map(|j| {
            if pos < n {
                let b = &p * &dphi_z[j][pos];
                (b.re().scale_rat(&-two.clone()), b.im().scale_rat(&two))
            } else {
                let bidx = pos - n;
                let (mut re, mut im) = if bidx == j {
                    (pi.clone(), pr.clone())
                } else {
                    (Poly::zero(q.table()), Poly::zero(q.table()))
                };
                let du = &dphi_u[j][bidx];
                if !du.is_empty() {
                    re = &re - &(du * &pr);
                    im = &im + &(du * &pi);
                }
                (re, im)
            }
        })
        .unzip()
}

pub(crate) fn derivative_tables(q: &ModelSurface) -> (Vec<Vec<Poly>>, Vec<Vec<Poly>>) {
    let dz = q
        .phi()
        .iter()
        .map(|p| (0..q.n()).map(|a| p.derivative(q.z_pos(a))).collect())
        .collect();
    let du = q
        .phi()
        .iter()
        .map(|p| (0..q.k()).map(|b| p.derivative(q.u_pos(b))).collect())
        .collect();
    (dz, du)
}

/// One row per `(equation, monomial class, Re/Im)`; a monomial class is
/// `{mu, conj(mu)}` represented by its smaller member.
pub fn build_tangency_system(q: &ModelSurface, weight: i64) -> TangencySystem {
    let ansatz = TangencyAnsatz::new(q, weight);
    let (dz, du) = derivative_tables(q);
    let mut chart = Chart::new(q);
    let table = q.table().clone();
    let mut rows: BTreeMap<(usize, Monomial, bool), SparseRow<Rational>> = BTreeMap::new();
    let mut push = |col: usize, residuals: Vec<Poly>| {
        for (j, e) in residuals.into_iter().enumerate() {
            for (m, c) in e.terms() {
                if *m > m.conjugate(&table) {
                    continue;
                }
                if !c.re.is_zero() {
                    rows.entry((j, m.clone(), false))
                        .or_default()
                        .push((col, c.re.clone()));
                }
                if !c.im.is_zero() {
                    rows.entry((j, m.clone(), true))
                        .or_default()
                        .push((col, c.im.clone()));
                }
            }
        }
    };
    for col in (0..ansatz.unknowns.len()).step_by(2) {
        let u = &ansatz.unknowns[col];
        let (re, im) = pair_residuals(q, &mut chart, &dz, &du, u.pos, &u.mono);
        push(col, re);
        push(col + 1, im);
    }
    TangencySystem {
        ansatz,
        rows: rows.into_values().collect(),
    }
}

/// Canonical reduced-echelon nullspace basis.
pub fn solve_nullspace(system: &TangencySystem) -> Vec<Vec<Rational>> {
    linalg::nullspace(system.ansatz.ncols(), system.rows.clone())
}

/// `E_j = Im g_j - 2 Re(sum_a dphi_j/dz_a f_a) - sum_b dphi_j/du_b Re g_b`
/// on `w = u + i phi`.
pub fn tangency_residual(q: &ModelSurface, x: &VectorFieldPoly) -> Result<Vec<Poly>, AutError> {
    if !same_table(x.table(), q.table()) || x.n() != q.n() {
        return Err(AutError::VariableMismatch);
    }
    let chart = q.chart();
    let (dz, du) = derivative_tables(q);
    let g: Vec<Poly> = x
        .g()
        .iter()
        .map(|p| chart.apply(p))
        .collect::<Result<_, _>>()?;
    let f: Vec<Poly> = x
        .f()
        .iter()
        .map(|p| chart.apply(p))
        .collect::<Result<_, _>>()?;
    let two = gauss(rat(2, 1), Rational::zero());
    Ok((0..q.k())
        .map(|j| {
            let mut h = Poly::zero(q.table());
            for (a, fa) in f.iter().enumerate() {
                h = &h + &(&dz[j][a] * fa);
            }
            let mut e = &g[j].im() - &h.re().scale(&two);
            for (b, gb) in g.iter().enumerate() {
                if !du[j][b].is_empty() {
                    e = &e - &(&du[j][b] * &gb.re());
                }
            }
            e
        })
        .collect())
}

pub fn is_tangent(q: &ModelSurface, x: &VectorFieldPoly) -> bool {
    tangency_residual(q, x)
        .map(|r| r.iter().all(Poly::is_identically_zero))
        .unwrap_or(false)
}
