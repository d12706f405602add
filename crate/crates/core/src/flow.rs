//! Truncated one-parameter flows of polynomial fields.
//!
//! The flow of `X` is the Lie series `h(t) = sum_m t^m X^m(h) / m!` applied
//! to each coordinate, computed with `c_{m+1} = X(c_m) / (m + 1)`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::ComplexAlgebraElement;
use crate::autalg::{AutError, VectorFieldPoly};
use crate::linalg;
use crate::poly::{hol_monomials_of_weight, AlgebraPoly, Monomial, Poly, Substitution, Table};
use crate::scalar::{imag_unit, rat, Gaussian, Rational};
use crate::surface::ModelSurface;

pub const DEFAULT_ORDER: u16 = 6;

#[derive(Clone, Debug)]
pub struct FormalFlow {
    order: u16,
    table: Table,
    t_pos: usize,
    field: VectorFieldPoly,
    components: Vec<Poly>,
    terminates: bool,
}

fn fresh_name(table: &Table, base: &str) -> String {
    let mut name = base.to_string();
    while table.position(&name).is_some() {
        name.push('_');
    }
    name
}

impl FormalFlow {
    pub fn order(&self) -> u16 {
        self.order
    }

    /// Field variables plus the real flow parameter.
    pub fn table(&self) -> &Table {
        &self.table
    }

    pub fn t_pos(&self) -> usize {
        self.t_pos
    }

    pub fn t_name(&self) -> &str {
        self.table.name(self.t_pos)
    }

    pub fn field(&self) -> &VectorFieldPoly {
        &self.field
    }

    /// Image of each holomorphic variable, `z` first then `w`.
    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, pos: usize) -> &Poly {
        &self.components[pos]
    }

    /// The series stops before `t^(N+1)`, so the flow is exact.
    pub fn terminates(&self) -> bool {
        self.terminates
    }

    /// Coefficient of `t^m` in the image of hol variable `pos`.
    pub fn coefficient(&self, pos: usize, m: u16) -> Poly {
        self.components[pos].coefficient_of_power(self.t_pos, m)
    }

    pub fn is_identity_at_zero(&self) -> bool {
        self.components
            .iter()
            .enumerate()
            .all(|(p, c)| c.coefficient_of_power(self.t_pos, 0) == Poly::var_at(&self.table, p))
    }

    pub fn t_degree(&self) -> u16 {
        self.components
            .iter()
            .flat_map(|c| c.terms().map(|(m, _)| m.exp(self.t_pos)))
            .max()
            .unwrap_or(0)
    }

    pub fn render(&self) -> Vec<String> {
        self.components
            .iter()
            .enumerate()
            .map(|(p, c)| format!("{} -> {}", self.table.name(p), c))
            .collect()
    }

    pub fn to_json(&self) -> FlowJson {
        FlowJson {
            order: self.order,
            parameter: self.t_name().to_string(),
            field: self.field.to_string(),
            terminates: self.terminates,
            components: self
                .components
                .iter()
                .enumerate()
                .map(|(p, c)| (self.table.name(p).to_string(), c.to_string()))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FlowJson {
    pub order: u16,
    pub parameter: String,
    pub field: String,
    pub terminates: bool,
    pub components: BTreeMap<String, String>,
}

/// Taylor expansion of the flow through `t^order`.
pub fn exponentiate(x: &VectorFieldPoly, order: u16) -> FormalFlow {
    let order = order.max(1);
    let base = x.table();
    let t_name = fresh_name(base, "t");
    let table = base.with_real_vars(&[(&t_name, 1)]).expect("fresh name");
    let t_pos = table.position(&t_name).expect("just added");
    let xe = x.embed(&table).expect("extension table");
    let t = Poly::var_at(&table, t_pos);
    let mut components = Vec::new();
    let mut terminates = true;
    for pos in 0..table.hol_count() {
        let mut c = Poly::var_at(&table, pos);
        let mut acc = c.clone();
        let mut tpow = Poly::one(&table);
        for m in 0..order {
            c = xe.apply(&c).scale_rat(&rat(1, m as i64 + 1));
            if c.is_empty() {
                break;
            }
            tpow = &tpow * &t;
            acc = &acc + &(&c * &tpow);
        }
        if !c.is_empty() && !xe.apply(&c).is_empty() {
            terminates = false;
        }
        components.push(acc);
    }
    FormalFlow {
        order,
        table,
        t_pos,
        field: x.clone(),
        components,
        terminates,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlowTangency {
    pub ok: bool,
    /// Lowest power of `t` with a nonzero defect.
    pub first_bad_order: Option<u16>,
}

/// Substitutes the flow into each `Im w_j - phi_j` on `w = u + i phi` and
/// checks the result vanishes modulo `t^(N+1)`.
pub fn verify_flow_tangency(q: &ModelSurface, flow: &FormalFlow) -> Result<FlowTangency, AutError> {
    let ft = flow.table();
    if ft.hol_count() != q.table().hol_count() || ft.nvars() != q.table().nvars() + 1 {
        return Err(AutError::VariableMismatch);
    }
    let mut chart = Substitution::identity_on_shared(ft, ft);
    for b in 0..q.k() {
        let u = Poly::var_at(ft, q.u_pos(b));
        let phi = q.phi()[b].embed(ft)?;
        chart.bind_pos(q.w_pos(b), &u + &phi.scale(&imag_unit()))?;
    }
    let mut sub = Substitution::new(q.table(), ft);
    for pos in 0..q.n() + q.k() {
        sub.bind_pos(pos, chart.apply(flow.component(pos))?)?;
    }
    for b in 0..q.k() {
        let image = chart.apply(flow.component(q.w_pos(b)))?.re();
        sub.bind_pos(q.u_pos(b), image)?;
    }
    let mut first: Option<u16> = None;
    for rho in q.defining_functions() {
        let r = sub.apply_truncated(&rho, flow.t_pos(), flow.order())?;
        for (m, _) in r.terms() {
            let e = m.exp(flow.t_pos());
            first = Some(first.map_or(e, |f| f.min(e)));
        }
    }
    Ok(FlowTangency {
        ok: first.is_none(),
        first_bad_order: first,
    })
}

/// Whether every `t^m` coefficient of the flow, regrouped into algebra
/// variables, is a polynomial in those variables with complexified-algebra
/// coefficients.
pub fn s_flow_check(q_alg: &ModelSurface, flow: &FormalFlow) -> Result<bool, AutError> {
    let alg = q_alg
        .algebraization()
        .ok_or(AutError::NotAnAlgebraization)?;
    let base = &alg.base;
    let s = &alg.algebra;
    let l = s.dim();
    let bt = base.table();
    let ft = flow.table();
    if ft.hol_count() != q_alg.table().hol_count() {
        return Err(AutError::VariableMismatch);
    }
    for p in 0..base.n() + base.k() {
        for m in 0..=flow.order() {
            let target: Vec<Poly> = (0..l).map(|r| flow.coefficient(p * l + r, m)).collect();
            if target.iter().all(Poly::is_empty) {
                continue;
            }
            let mut weights: Vec<u32> = target.iter().flat_map(Poly::weights).collect();
            weights.sort_unstable();
            weights.dedup();
            let mut columns: Vec<Vec<Poly>> = Vec::new();
            for w in weights {
                for mono in hol_monomials_of_weight(bt, w) {
                    for e in 0..l {
                        let c = ComplexAlgebraElement::basis(s, e);
                        let comps =
                            AlgebraPoly::term(bt, mono.clone(), &c).scalar_expand(q_alg.table());
                        columns.push(
                            comps
                                .iter()
                                .map(|p| p.embed(ft))
                                .collect::<Result<_, _>>()?,
                        );
                    }
                }
            }
            if !in_complex_span(&columns, &target) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn in_complex_span(columns: &[Vec<Poly>], target: &[Poly]) -> bool {
    let mut keys: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let mut key = |r: usize, m: &Monomial| {
        let next = keys.len();
        *keys.entry((r, m.clone())).or_insert(next)
    };
    let mut entries: Vec<(usize, usize, Gaussian)> = Vec::new();
    for (col, comps) in columns.iter().enumerate() {
        for (r, p) in comps.iter().enumerate() {
            for (m, c) in p.terms() {
                entries.push((key(r, m), col, c.clone()));
            }
        }
    }
    let mut rhs_entries = Vec::new();
    for (r, p) in target.iter().enumerate() {
        for (m, c) in p.terms() {
            rhs_entries.push((key(r, m), c.clone()));
        }
    }
    let nrows = keys.len();
    let mut rows: Vec<Vec<(usize, Gaussian)>> = vec![Vec::new(); nrows];
    for (r, col, c) in entries {
        rows[r].push((col, c));
    }
    let mut rhs = vec![Gaussian::zero(); nrows];
    for (r, c) in rhs_entries {
        rhs[r] = c;
    }
    linalg::solve(columns.len(), rows, rhs).is_some()
}

/// `phi_s(phi_t(p)) = phi_(s+t)(p)` modulo total degree `N+1` in `(s, t)`.
pub fn one_parameter_check(flow: &FormalFlow) -> bool {
    let ft = flow.table();
    let s_name = fresh_name(ft, "s");
    let table = ft.with_real_vars(&[(&s_name, 1)]).expect("fresh name");
    let t_pos = flow.t_pos();
    let s_pos = table.position(&s_name).expect("just added");
    let n = flow.order();
    let keep = |p: &Poly| p.filter_terms(|m| m.exp(s_pos) + m.exp(t_pos) <= n);

    let in_t: Vec<Poly> = flow
        .components()
        .iter()
        .map(|c| c.embed(&table).expect("extension"))
        .collect();
    let mut to_s = Substitution::identity_on_shared(ft, &table);
    to_s.bind_pos(t_pos, Poly::var_at(&table, s_pos))
        .expect("same table");
    let mut to_sum = Substitution::identity_on_shared(ft, &table);
    to_sum
        .bind_pos(
            t_pos,
            &Poly::var_at(&table, s_pos) + &Poly::var_at(&table, t_pos),
        )
        .expect("same table");

    let mut compose = Substitution::identity_on_shared(&table, &table);
    for (p, c) in in_t.iter().enumerate() {
        compose.bind_pos(p, c.clone()).expect("same table");
    }
    flow.components().iter().all(|c| {
        let phi_s = to_s.apply(c).expect("bound");
        let lhs = keep(&compose.apply(&phi_s).expect("bound"));
        let rhs = keep(&to_sum.apply(c).expect("bound"));
        lhs == rhs
    })
}

/// Taylor coefficients of `(1 - c t)^(-1/2)` through `t^order`, computed
/// from the binomial series.
pub fn inverse_sqrt_series(c: &Rational, order: u16) -> Vec<Rational> {
    let mut out = vec![Rational::from_integer(1.into())];
    let mut coeff = Rational::from_integer(1.into());
    for m in 1..=order as i64 {
        coeff = coeff * rat(2 * m - 1, 2 * m) * c;
        out.push(coeff.clone());
    }
    out
}
