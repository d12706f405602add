//! Graded Lie algebras of polynomial automorphism fields.
//!
//! A field `2 Re(f d/dz + g d/dw)` of weight `mu` has `f_a` of weight
//! `mu + [z_a]` and `g_b` of weight `mu + [w_b]`. Tangency to the surface
//! is a linear condition on the real and imaginary parts of the
//! coefficients, so each weight component is the nullspace of an exact
//! rational system.

mod field;
mod graded;
mod shape;
mod shol;
mod system;

use thiserror::Error;

use crate::linalg::Echelon;
use crate::poly::PolyError;
use crate::surface::{ModelSurface, SurfaceError};

pub use field::{lie_bracket, VectorFieldPoly};
pub use graded::{
    compute_aut, default_cap, weight_floor, AutOptions, CapRule, GradedAutBasis, WeightComponent,
};
pub use shape::{verify_basis_shape, verify_shape_of_fields, ShapeReport, ShapeViolation};
pub use shol::{
    is_s_holomorphic, s_ansatz_vectors, s_exhaustion_report, s_holomorphic_component,
    s_holomorphic_vectors, ExhaustionReport, ExhaustionRow, SComponent,
};
pub use system::{
    build_tangency_system, is_tangent, solve_nullspace, tangency_residual, TangencyAnsatz,
    TangencySystem, Unknown,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AutError {
    #[error("the defining forms are linearly dependent; the automorphism algebra is infinite-dimensional")]
    DegenerateSurface,
    #[error("the surface carries no algebraization data")]
    NotAnAlgebraization,
    #[error("field and surface use different variables")]
    VariableMismatch,
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl AutError {
    pub fn code(&self) -> &'static str {
        match self {
            AutError::DegenerateSurface => "DegenerateSurface",
            AutError::NotAnAlgebraization => "NotAnAlgebraization",
            AutError::VariableMismatch => "VariableMismatch",
            AutError::Surface(e) => e.code(),
            AutError::Poly(_) => "PolyError",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ClosureReport {
    pub pairs: usize,
    pub skipped_above_cap: usize,
    pub failures: Vec<String>,
}

impl ClosureReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Brackets every pair of basis fields and checks that the result is
/// tangent and lies in the component of the summed weight.
pub fn check_bracket_closure(q: &ModelSurface, basis: &GradedAutBasis) -> ClosureReport {
    let mut report = ClosureReport::default();
    let fields: Vec<(i64, usize, &VectorFieldPoly)> = basis
        .components
        .iter()
        .flat_map(|c| {
            c.fields
                .iter()
                .enumerate()
                .map(move |(i, f)| (c.weight, i, f))
        })
        .collect();
    for (x_idx, (wa, ia, x)) in fields.iter().enumerate() {
        for (wb, ib, y) in &fields[x_idx + 1..] {
            let target = wa + wb;
            if target > basis.cap {
                report.skipped_above_cap += 1;
                continue;
            }
            report.pairs += 1;
            let label = format!("[X({wa},{ia}), X({wb},{ib})]");
            let Ok(z) = lie_bracket(x, y) else {
                report.failures.push(format!("{label}: variable mismatch"));
                continue;
            };
            if z.is_zero() {
                continue;
            }
            if target < basis.floor {
                report
                    .failures
                    .push(format!("{label}: nonzero below the weight floor"));
                continue;
            }
            if !is_tangent(q, &z) {
                report.failures.push(format!("{label}: not tangent"));
                continue;
            }
            let comp = basis.component(target).expect("weight in range");
            let member = comp.ansatz.sparse_vector(&z).is_some_and(|v| {
                Echelon::from_rows(comp.ansatz.ncols(), comp.sparse_vectors()).contains(&v)
            });
            if !member {
                report
                    .failures
                    .push(format!("{label}: not in the weight-{target} component"));
            }
        }
    }
    report
}
