use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::shol::s_holomorphic_vectors;
use super::system::{build_tangency_system, TangencyAnsatz, TangencySystem};
use super::{AutError, VectorFieldPoly};
use crate::algebra::Algebra;
use crate::linalg::{self, Echelon, SparseRow};
use crate::scalar::Rational;
use crate::surface::{check_finite_type_linear, ModelSurface};

/// How the positive-weight cap was chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CapRule {
    /// `2 * max [w]`
    Default,
    /// `[w] * 2(k+1) - min [w]` for bidegree-(2,2) surfaces.
    DegreeBound,
    Override,
}

impl CapRule {
    pub fn describe(&self) -> &'static str {
        match self {
            CapRule::Default => "twice the largest w-weight",
            CapRule::DegreeBound => "degree bound 2(k+1) for bidegree-(2,2) forms",
            CapRule::Override => "user override",
        }
    }
}

/// Lowest possible field weight.
pub fn weight_floor(q: &ModelSurface) -> i64 {
    -(q.max_w_weight() as i64)
}

pub fn default_cap(q: &ModelSurface) -> (i64, CapRule) {
    let max_w = q.max_w_weight() as i64;
    let uniform = (0..q.k()).all(|b| q.w_weight(b) as i64 == max_w);
    if q.is_bidegree_22() && q.is_u_independent() && uniform {
        let cap = max_w * 2 * (q.k() as i64 + 1) - q.min_w_weight() as i64;
        (cap, CapRule::DegreeBound)
    } else {
        (2 * max_w, CapRule::Default)
    }
}

#[derive(Clone, Debug, Default)]
pub struct AutOptions {
    pub max_weight: Option<i64>,
    /// Also split each component into its algebra-holomorphic part.
    pub with_s_part: bool,
}

#[derive(Clone, Debug)]
pub struct WeightComponent {
    pub weight: i64,
    pub ansatz: TangencyAnsatz,
    /// Basis vectors over the ansatz columns.
    pub vectors: Vec<Vec<Rational>>,
    pub fields: Vec<VectorFieldPoly>,
    /// `s_flags[i]` marks algebra-holomorphic basis members; they come first.
    pub s_flags: Vec<bool>,
}

impl WeightComponent {
    pub fn dim(&self) -> usize {
        self.fields.len()
    }

    pub fn s_dim(&self) -> usize {
        self.s_flags.iter().filter(|f| **f).count()
    }

    pub fn s_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.s_flags[i]).collect()
    }

    pub fn sparse_vectors(&self) -> Vec<SparseRow<Rational>> {
        self.vectors.iter().map(|v| linalg::sparse(v)).collect()
    }

    /// Whether the field is a rational combination of this component.
    pub fn contains(&self, x: &VectorFieldPoly) -> bool {
        match self.ansatz.sparse_vector(x) {
            Some(v) => Echelon::from_rows(self.ansatz.ncols(), self.sparse_vectors()).contains(&v),
            None => x.is_zero(),
        }
    }

    /// Whether the field lies in the algebra-holomorphic part.
    pub fn s_contains(&self, x: &VectorFieldPoly) -> bool {
        let s: Vec<SparseRow<Rational>> = self
            .vectors
            .iter()
            .zip(&self.s_flags)
            .filter(|(_, f)| **f)
            .map(|(v, _)| linalg::sparse(v))
            .collect();
        match self.ansatz.sparse_vector(x) {
            Some(v) => Echelon::from_rows(self.ansatz.ncols(), s).contains(&v),
            None => x.is_zero(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GradedAutBasis {
    pub surface: Arc<ModelSurface>,
    pub algebra: Option<Algebra>,
    pub floor: i64,
    pub cap: i64,
    pub cap_rule: CapRule,
    pub components: Vec<WeightComponent>,
}

impl GradedAutBasis {
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.components
            .iter()
            .map(|c| (c.weight, c.dim()))
            .collect()
    }

    /// Weights with a nonzero component.
    pub fn nonzero_dims(&self) -> BTreeMap<i64, usize> {
        self.dims().into_iter().filter(|(_, d)| *d > 0).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.components.iter().map(WeightComponent::dim).sum()
    }

    pub fn component(&self, weight: i64) -> Option<&WeightComponent> {
        self.components.iter().find(|c| c.weight == weight)
    }

    pub fn fields(&self) -> impl Iterator<Item = (i64, &VectorFieldPoly)> {
        self.components
            .iter()
            .flat_map(|c| c.fields.iter().map(move |f| (c.weight, f)))
    }

    pub fn cap_disclosure(&self) -> String {
        format!(
            "weights searched: {}..={} (cap from {}); components above the cap are not claimed to vanish",
            self.floor,
            self.cap,
            self.cap_rule.describe()
        )
    }

    /// The general field `X = sum p[mu,i] X[mu,i]` written per component,
    /// with one real parameter group per weight.
    pub fn explicit_description(&self) -> Vec<String> {
        let t = self.surface.table();
        let h = self.surface.n() + self.surface.k();
        let mut lines = Vec::new();
        for pos in 0..h {
            let mut terms = Vec::new();
            for c in &self.components {
                for (i, x) in c.fields.iter().enumerate() {
                    let comp = x.component(pos);
                    if !comp.is_empty() {
                        terms.push(format!("p[{},{}]*({})", c.weight, i + 1, comp));
                    }
                }
            }
            let rhs = if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ")
            };
            let lhs = if pos < self.surface.n() { "F" } else { "G" };
            lines.push(format!("{lhs}[{}] = {rhs}", t.name(pos)));
        }
        lines
    }
}

fn component_for(q: &ModelSurface, weight: i64, with_s: bool) -> Result<WeightComponent, AutError> {
    let system: TangencySystem = build_tangency_system(q, weight);
    let full = linalg::nullspace(system.ansatz.ncols(), system.rows.clone());
    let (vectors, s_flags) = if with_s {
        let s = s_holomorphic_vectors(q, &system)?;
        adapted_basis(system.ansatz.ncols(), s, full)
    } else {
        let flags = vec![false; full.len()];
        (full, flags)
    };
    let fields = vectors.iter().map(|v| system.ansatz.field(q, v)).collect();
    Ok(WeightComponent {
        weight,
        ansatz: system.ansatz,
        vectors,
        fields,
        s_flags,
    })
}

/// Algebra-holomorphic vectors first, then the full-basis vectors that
/// extend them.
fn adapted_basis(
    ncols: usize,
    s: Vec<Vec<Rational>>,
    full: Vec<Vec<Rational>>,
) -> (Vec<Vec<Rational>>, Vec<bool>) {
    let mut ech = Echelon::new(ncols);
    let mut out = Vec::new();
    let mut flags = Vec::new();
    for v in s {
        if ech.insert(linalg::sparse(&v)) {
            out.push(v);
            flags.push(true);
        }
    }
    for v in full {
        if ech.insert(linalg::sparse(&v)) {
            out.push(v);
            flags.push(false);
        }
    }
    (out, flags)
}

/// Solves every weight component from the floor up to the cap.
pub fn compute_aut(q: &ModelSurface, opts: &AutOptions) -> Result<GradedAutBasis, AutError> {
    if !check_finite_type_linear(q) {
        return Err(AutError::DegenerateSurface);
    }
    if opts.with_s_part && q.algebraization().is_none() {
        return Err(AutError::NotAnAlgebraization);
    }
    let floor = weight_floor(q);
    let (cap, cap_rule) = match opts.max_weight {
        Some(m) => (m, CapRule::Override),
        None => default_cap(q),
    };
    let mut components: Vec<WeightComponent> = (floor..=cap.max(floor - 1))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|w| component_for(q, w, opts.with_s_part))
        .collect::<Result<_, _>>()?;
    components.sort_by_key(|c| c.weight);
    Ok(GradedAutBasis {
        surface: Arc::new(q.clone()),
        algebra: q.algebraization().map(|a| a.algebra.clone()),
        floor,
        cap,
        cap_rule,
        components,
    })
}
