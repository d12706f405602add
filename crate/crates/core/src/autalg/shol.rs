//! Algebra-holomorphic parts of the weight components of an algebraized
//! surface.
//!
//! An algebra-holomorphic field has components `F_a(Z, W)` that are
//! polynomials in the algebra variables with complexified-algebra
//! coefficients. Expanded into scalar coordinates these span a subspace of
//! the general ansatz; intersecting it with the tangency nullspace gives
//! the algebra-holomorphic part.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::graded::{compute_aut, AutOptions, GradedAutBasis};
use super::system::{build_tangency_system, TangencyAnsatz, TangencySystem};
use super::{AutError, VectorFieldPoly};
use crate::algebra::{Algebra, ComplexAlgebraElement};
use crate::linalg::{self, Echelon, SparseRow};
use crate::poly::{hol_monomials_of_weight, AlgebraPoly};
use crate::scalar::{gi, Rational};
use crate::surface::{algebraize, ModelSurface};

/// Expanded algebra-holomorphic ansatz vectors for the weight of `ansatz`:
/// one per base component, base monomial, algebra basis element, and
/// real/imaginary coefficient.
pub fn s_ansatz_vectors(
    q_alg: &ModelSurface,
    ansatz: &TangencyAnsatz,
) -> Result<Vec<SparseRow<Rational>>, AutError> {
    let alg = q_alg
        .algebraization()
        .ok_or(AutError::NotAnAlgebraization)?;
    let base = &alg.base;
    let s: &Algebra = &alg.algebra;
    let l = s.dim();
    let bt = base.table();
    let target = q_alg.table();
    let mut out = Vec::new();
    for pos in 0..base.n() + base.k() {
        let w = ansatz.weight() + bt.hol_weight(pos) as i64;
        if w < 0 {
            continue;
        }
        for mono in hol_monomials_of_weight(bt, w as u32) {
            for t in 0..l {
                for kappa in [gi(1, 0), gi(0, 1)] {
                    let c = ComplexAlgebraElement::basis(s, t).scale(&kappa);
                    let comps = AlgebraPoly::term(bt, mono.clone(), &c).scalar_expand(target);
                    let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
                    for (r, p) in comps.iter().enumerate() {
                        for (m, coeff) in p.terms() {
                            let col = ansatz
                                .column(pos * l + r, m)
                                .expect("expanded monomial has the component weight");
                            if !coeff.re.is_zero() {
                                row.insert(col, coeff.re.clone());
                            }
                            if !coeff.im.is_zero() {
                                row.insert(col + 1, coeff.im.clone());
                            }
                        }
                    }
                    out.push(row.into_iter().collect());
                }
            }
        }
    }
    Ok(out)
}

/// Canonical basis of the algebra-holomorphic part of the nullspace of
/// `system`, in the system's ansatz coordinates.
pub fn s_holomorphic_vectors(
    q_alg: &ModelSurface,
    system: &TangencySystem,
) -> Result<Vec<Vec<Rational>>, AutError> {
    let ncols = system.ansatz.ncols();
    let v = s_ansatz_vectors(q_alg, &system.ansatz)?;
    // columns of A V
    let mut by_col: HashMap<usize, Vec<(usize, &Rational)>> = HashMap::new();
    for (r, row) in system.rows.iter().enumerate() {
        for (c, a) in row {
            by_col.entry(*c).or_default().push((r, a));
        }
    }
    let mut av_rows: BTreeMap<usize, SparseRow<Rational>> = BTreeMap::new();
    for (y, vec) in v.iter().enumerate() {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (c, x) in vec {
            if let Some(entries) = by_col.get(c) {
                for (r, a) in entries {
                    let e = acc.entry(*r).or_insert_with(Rational::zero);
                    *e += *a * x;
                }
            }
        }
        for (r, val) in acc {
            if !val.is_zero() {
                av_rows.entry(r).or_default().push((y, val));
            }
        }
    }
    let ys = linalg::nullspace(v.len(), av_rows.into_values().collect());
    let mut ech = Echelon::new(ncols);
    for y in &ys {
        let mut dense = vec![Rational::zero(); ncols];
        for (coef, vec) in y.iter().zip(&v) {
            if coef.is_zero() {
                continue;
            }
            for (c, x) in vec {
                dense[*c] += coef * x;
            }
        }
        ech.insert(linalg::sparse(&dense));
    }
    let rref = ech.finish();
    Ok(rref
        .rows()
        .map(|(_, row)| {
            let mut dense = vec![Rational::zero(); ncols];
            for (c, x) in row {
                dense[*c] = x.clone();
            }
            dense
        })
        .collect())
}

#[derive(Clone, Debug)]
pub struct SComponent {
    pub weight: i64,
    pub fields: Vec<VectorFieldPoly>,
    /// Every field was found in the span of the full weight component.
    pub embeds: bool,
}

/// Algebra-holomorphic part of the weight-`weight` component, checked
/// against the full component.
pub fn s_holomorphic_component(q_alg: &ModelSurface, weight: i64) -> Result<SComponent, AutError> {
    let system = build_tangency_system(q_alg, weight);
    let s = s_holomorphic_vectors(q_alg, &system)?;
    let full = linalg::nullspace(system.ansatz.ncols(), system.rows.clone());
    let ech = Echelon::from_rows(
        system.ansatz.ncols(),
        full.iter().map(|v| linalg::sparse(v)),
    );
    let embeds = s.iter().all(|v| ech.contains(&linalg::sparse(v)));
    Ok(SComponent {
        weight,
        fields: s.iter().map(|v| system.ansatz.field(q_alg, v)).collect(),
        embeds,
    })
}

/// Whether a field on an algebraized surface is algebra-holomorphic.
pub fn is_s_holomorphic(q_alg: &ModelSurface, x: &VectorFieldPoly) -> Result<bool, AutError> {
    let weight = x.weight().unwrap_or(0);
    let ansatz = TangencyAnsatz::new(q_alg, weight);
    let Some(v) = ansatz.sparse_vector(x) else {
        return Ok(x.is_zero());
    };
    let span = s_ansatz_vectors(q_alg, &ansatz)?;
    Ok(Echelon::from_rows(ansatz.ncols(), span).contains(&v))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExhaustionRow {
    pub weight: i64,
    pub dim_base: usize,
    pub scaled_base: usize,
    pub s_dim: usize,
    pub dim_alg: usize,
    /// The algebra-holomorphic dimension equals `l` times the base one.
    pub scaling_holds: bool,
    pub exhausted: bool,
}

#[derive(Clone, Debug)]
pub struct ExhaustionReport {
    pub algebra: String,
    pub l: usize,
    pub rows: Vec<ExhaustionRow>,
    pub base: GradedAutBasis,
    pub algebraized: GradedAutBasis,
}

impl ExhaustionReport {
    pub fn exhausted(&self) -> bool {
        self.rows.iter().all(|r| r.exhausted)
    }

    pub fn scaling_holds(&self) -> bool {
        self.rows.iter().all(|r| r.scaling_holds)
    }

    pub fn row(&self, weight: i64) -> Option<&ExhaustionRow> {
        self.rows.iter().find(|r| r.weight == weight)
    }
}

/// Compares the base surface with its algebraization weight by weight.
/// Both are solved over the same range; by default the larger of the two
/// default caps.
pub fn s_exhaustion_report(
    q: &ModelSurface,
    s: &Algebra,
    max_weight: Option<i64>,
) -> Result<ExhaustionReport, AutError> {
    let qa = algebraize(q, s)?;
    let cap = max_weight.unwrap_or_else(|| {
        super::graded::default_cap(q)
            .0
            .max(super::graded::default_cap(&qa).0)
    });
    let base = compute_aut(
        q,
        &AutOptions {
            max_weight: Some(cap),
            with_s_part: false,
        },
    )?;
    let algebraized = compute_aut(
        &qa,
        &AutOptions {
            max_weight: Some(cap),
            with_s_part: true,
        },
    )?;
    let l = s.dim();
    let rows = algebraized
        .components
        .iter()
        .map(|c| {
            let dim_base = base.component(c.weight).map_or(0, |b| b.dim());
            ExhaustionRow {
                weight: c.weight,
                dim_base,
                scaled_base: l * dim_base,
                s_dim: c.s_dim(),
                dim_alg: c.dim(),
                scaling_holds: c.s_dim() == l * dim_base,
                exhausted: c.s_dim() == c.dim(),
            }
        })
        .collect();
    Ok(ExhaustionReport {
        algebra: s.name().to_string(),
        l,
        rows,
        base,
        algebraized,
    })
}
