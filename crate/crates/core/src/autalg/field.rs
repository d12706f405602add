use std::fmt;

use num_traits::One;

use crate::poly::{same_table, Poly, PolyError, Table, VarKind};
use crate::scalar::Gaussian;

/// The real field `2 Re(f . d/dz + g . d/dw)`, stored through its
/// holomorphic part. `f[a]` belongs to hol variable `a`, `g[b]` to hol
/// variable `f.len() + b`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorFieldPoly {
    table: Table,
    f: Vec<Poly>,
    g: Vec<Poly>,
}

impl VectorFieldPoly {
    pub fn new(table: &Table, f: Vec<Poly>, g: Vec<Poly>) -> Result<Self, PolyError> {
        if f.len() + g.len() != table.hol_count() {
            return Err(PolyError::TableMismatch);
        }
        for p in f.iter().chain(&g) {
            if !same_table(p.table(), table) {
                return Err(PolyError::TableMismatch);
            }
            for (m, _) in p.terms() {
                if let Some(pos) =
                    (0..table.nvars()).find(|&v| m.exp(v) > 0 && table.kind(v) != VarKind::Hol)
                {
                    return Err(PolyError::UnboundVariable(table.name(pos).to_string()));
                }
            }
        }
        Ok(VectorFieldPoly {
            table: table.clone(),
            f,
            g,
        })
    }

    pub fn zero(table: &Table, n: usize) -> Self {
        let k = table.hol_count() - n;
        VectorFieldPoly {
            table: table.clone(),
            f: vec![Poly::zero(table); n],
            g: vec![Poly::zero(table); k],
        }
    }

    /// Field with a single nonzero coefficient at hol position `pos`.
    pub fn unit(table: &Table, n: usize, pos: usize, coeff: Poly) -> Self {
        let mut x = VectorFieldPoly::zero(table, n);
        *x.component_mut(pos) = coeff;
        x
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    pub fn f(&self) -> &[Poly] {
        &self.f
    }

    pub fn g(&self) -> &[Poly] {
        &self.g
    }

    pub fn n(&self) -> usize {
        self.f.len()
    }

    /// Coefficient of the hol variable at `pos`.
    pub fn component(&self, pos: usize) -> &Poly {
        if pos < self.f.len() {
            &self.f[pos]
        } else {
            &self.g[pos - self.f.len()]
        }
    }

    pub fn component_mut(&mut self, pos: usize) -> &mut Poly {
        let n = self.f.len();
        if pos < n {
            &mut self.f[pos]
        } else {
            &mut self.g[pos - n]
        }
    }

    pub fn components(&self) -> impl Iterator<Item = &Poly> {
        self.f.iter().chain(&self.g)
    }

    pub fn is_zero(&self) -> bool {
        self.components().all(Poly::is_identically_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Self, op: impl Fn(&Poly, &Poly) -> Poly) -> Self {
        assert_eq!(self.n(), other.n(), "field shape mismatch");
        VectorFieldPoly {
            table: self.table.clone(),
            f: self.f.iter().zip(&other.f).map(|(a, b)| op(a, b)).collect(),
            g: self.g.iter().zip(&other.g).map(|(a, b)| op(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &Gaussian) -> Self {
        VectorFieldPoly {
            table: self.table.clone(),
            f: self.f.iter().map(|p| p.scale(c)).collect(),
            g: self.g.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Holomorphic derivation `h -> sum_v c_v dh/dv` over hol variables.
    pub fn apply(&self, h: &Poly) -> Poly {
        let mut out = Poly::zero(h.table());
        for (pos, c) in self.components().enumerate() {
            if c.is_empty() {
                continue;
            }
            let d = h.derivative(pos);
            if !d.is_empty() {
                out = &out + &(c * &d);
            }
        }
        out
    }

    /// Moves the field into a table that extends this one by name.
    pub fn embed(&self, target: &Table) -> Result<Self, PolyError> {
        let f = self
            .f
            .iter()
            .map(|p| p.embed(target))
            .collect::<Result<_, _>>()?;
        let g = self
            .g
            .iter()
            .map(|p| p.embed(target))
            .collect::<Result<_, _>>()?;
        Ok(VectorFieldPoly {
            table: target.clone(),
            f,
            g,
        })
    }

    /// Weight of the field when homogeneous: coefficient weight minus the
    /// weight of the variable it multiplies.
    pub fn weight(&self) -> Option<i64> {
        let mut found = None;
        for (pos, c) in self.components().enumerate() {
            let vw = self.table.hol_weight(pos) as i64;
            for w in c.weights() {
                let fw = w as i64 - vw;
                match found {
                    None => found = Some(fw),
                    Some(x) if x != fw => return None,
                    _ => {}
                }
            }
        }
        found
    }

    pub fn is_real_scaled(&self) -> bool {
        self.components()
            .all(|p| p.terms().all(|(_, c)| crate::scalar::is_real(c)))
    }
}

/// Bracket of the holomorphic parts; `[2Re X, 2Re Y] = 2Re [X, Y]`.
pub fn lie_bracket(x: &VectorFieldPoly, y: &VectorFieldPoly) -> Result<VectorFieldPoly, PolyError> {
    if !same_table(&x.table, &y.table) || x.n() != y.n() {
        return Err(PolyError::TableMismatch);
    }
    let comps = |p: usize| &x.apply(y.component(p)) - &y.apply(x.component(p));
    let n = x.n();
    let total = x.table.hol_count();
    Ok(VectorFieldPoly {
        table: x.table.clone(),
        f: (0..n).map(comps).collect(),
        g: (n..total).map(comps).collect(),
    })
}

impl fmt::Display for VectorFieldPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components()
            .enumerate()
            .filter(|(_, c)| !c.is_empty())
            .map(|(pos, c)| {
                let name = self.table.name(pos);
                if c.len() == 1 && c.terms().next().is_some_and(|(_, v)| v.is_one()) {
                    format!("{c}*d/d{name}")
                } else {
                    format!("({c})*d/d{name}")
                }
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            write!(f, "2Re({})", parts.join(" + "))
        }
    }
}
