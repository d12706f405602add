//! Shape of automorphism fields of bidegree-(2,2) surfaces.
//!
//! For such surfaces every field is expected to be
//! `2 Re((lambda(z) + B(w, z)) d/dz + (q + rho(w) + r(w, w)) d/dw)`: `f`
//! linear in `z` and of degree at most one in `w`, `g` a real polynomial
//! in `w` alone of degree at most two. With `b(u) = g(0, u)`,
//! `c(z, u) = f(z, u)`, `D = sum_b phi_b d/du_b` and
//! `Psi(c) = sum_a dphi/dz_a c_a`, tangency splits by bidegree into
//!
//! ```text
//! Im b = 0,  D b = 2 Re Psi(c),  Im Psi(D c) = 0,  D^3 b = 0.
//! ```

use super::graded::GradedAutBasis;
use super::{AutError, VectorFieldPoly};
use crate::poly::{Poly, Substitution};
use crate::scalar::{gauss, rat, Rational};
use crate::surface::{check_fd_condition, ModelSurface, SurfaceError, DEFAULT_SEED};

#[derive(Clone, Debug, PartialEq)]
pub struct ShapeViolation {
    pub weight: i64,
    pub index: usize,
    pub field: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShapeReport {
    pub fd_holds: bool,
    pub checked: usize,
    pub counterexample: Option<ShapeViolation>,
}

impl ShapeReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

struct Relations<'a> {
    q: &'a ModelSurface,
    to_u: Substitution,
}

impl<'a> Relations<'a> {
    fn new(q: &'a ModelSurface) -> Self {
        let t = q.table();
        let mut to_u = Substitution::identity_on_shared(t, t);
        for b in 0..q.k() {
            to_u.bind_pos(q.w_pos(b), Poly::var_at(t, q.u_pos(b)))
                .expect("same table");
        }
        Relations { q, to_u }
    }

    fn delta(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero(p.table());
        for b in 0..self.q.k() {
            let d = p.derivative(self.q.u_pos(b));
            if !d.is_empty() {
                out = &out + &(&self.q.phi()[b] * &d);
            }
        }
        out
    }

    fn psi(&self, j: usize, c: &[Poly]) -> Poly {
        let q = self.q;
        let mut out = Poly::zero(q.table());
        for (a, ca) in c.iter().enumerate() {
            out = &out + &(&q.phi()[j].derivative(q.z_pos(a)) * ca);
        }
        out
    }

    fn check(&self, x: &VectorFieldPoly) -> Result<(), String> {
        let q = self.q;
        let zs: Vec<usize> = (0..q.n()).map(|a| q.z_pos(a)).collect();
        let ws: Vec<usize> = (0..q.k()).map(|b| q.w_pos(b)).collect();
        for (a, fa) in x.f().iter().enumerate() {
            for (m, _) in fa.terms() {
                let zd: u32 = zs.iter().map(|&p| m.exp(p) as u32).sum();
                let wd: u32 = ws.iter().map(|&p| m.exp(p) as u32).sum();
                if zd != 1 || wd > 1 {
                    return Err(format!(
                        "f[{}] has a term of z-degree {zd} and w-degree {wd}",
                        a + 1
                    ));
                }
            }
        }
        for (b, gb) in x.g().iter().enumerate() {
            for (m, c) in gb.terms() {
                let zd: u32 = zs.iter().map(|&p| m.exp(p) as u32).sum();
                let wd: u32 = ws.iter().map(|&p| m.exp(p) as u32).sum();
                if zd != 0 || wd > 2 {
                    return Err(format!(
                        "g[{}] has a term of z-degree {zd} and w-degree {wd}",
                        b + 1
                    ));
                }
                if !crate::scalar::is_real(c) {
                    return Err(format!("g[{}] has a non-real coefficient", b + 1));
                }
            }
        }
        let apply = |p: &Poly| self.to_u.apply(p).expect("bound");
        let bvec: Vec<Poly> = x.g().iter().map(apply).collect();
        let cvec: Vec<Poly> = x.f().iter().map(apply).collect();
        let dc: Vec<Poly> = cvec.iter().map(|c| self.delta(c)).collect();
        let two = gauss(rat(2, 1), Rational::from_integer(0.into()));
        for j in 0..q.k() {
            let b = &bvec[j];
            if !b.im().is_identically_zero() {
                return Err(format!("Im b[{}] != 0", j + 1));
            }
            let lhs = self.delta(b);
            let rhs = self.psi(j, &cvec).re().scale(&two);
            if lhs != rhs {
                return Err(format!("D b[{0}] != 2 Re Psi[{0}](c)", j + 1));
            }
            if !self.psi(j, &dc).im().is_identically_zero() {
                return Err(format!("Im Psi[{}](D c) != 0", j + 1));
            }
            if !self
                .delta(&self.delta(&self.delta(b)))
                .is_identically_zero()
            {
                return Err(format!("D^3 b[{}] != 0", j + 1));
            }
        }
        Ok(())
    }
}

/// Checks every basis field for the expected shape and relations.
pub fn verify_basis_shape(
    q: &ModelSurface,
    basis: &GradedAutBasis,
) -> Result<ShapeReport, AutError> {
    verify_shape_of_fields(q, basis.fields())
}

pub fn verify_shape_of_fields<'f>(
    q: &ModelSurface,
    fields: impl Iterator<Item = (i64, &'f VectorFieldPoly)>,
) -> Result<ShapeReport, AutError> {
    if !q.is_bidegree_22() || !q.is_u_independent() {
        let j = (0..q.k()).next().unwrap_or(0);
        return Err(SurfaceError::WrongBidegree(j).into());
    }
    let fd_holds = check_fd_condition(q, DEFAULT_SEED)?.holds();
    let rel = Relations::new(q);
    let mut checked = 0;
    let mut last_weight = None;
    let mut index = 0;
    for (weight, x) in fields {
        if last_weight != Some(weight) {
            last_weight = Some(weight);
            index = 0;
        }
        checked += 1;
        if let Err(reason) = rel.check(x) {
            return Ok(ShapeReport {
                fd_holds,
                checked,
                counterexample: Some(ShapeViolation {
                    weight,
                    index,
                    field: x.to_string(),
                    reason,
                }),
            });
        }
        index += 1;
    }
    Ok(ShapeReport {
        fd_holds,
        checked,
        counterexample: None,
    })
}
