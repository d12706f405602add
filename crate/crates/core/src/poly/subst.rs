use std::collections::HashMap;

use super::{same_table, Poly, PolyError, Table, VarKind};

/// Ring homomorphism from polynomials over one table into another.
///
/// Binding a holomorphic variable also binds its conjugate to the
/// conjugated image unless the conjugate is bound explicitly.
#[derive(Clone, Debug)]
pub struct Substitution {
    source: Table,
    target: Table,
    images: Vec<Option<Poly>>,
    explicit: Vec<bool>,
}

impl Substitution {
    pub fn new(source: &Table, target: &Table) -> Self {
        let n = source.nvars();
        Substitution {
            source: source.clone(),
            target: target.clone(),
            images: vec![None; n],
            explicit: vec![false; n],
        }
    }

    /// Binds every source variable whose name also exists in the target.
    pub fn identity_on_shared(source: &Table, target: &Table) -> Self {
        let mut s = Substitution::new(source, target);
        for p in 0..source.nvars() {
            if let Some(q) = target.position(source.name(p)) {
                s.images[p] = Some(Poly::var_at(target, q));
                s.explicit[p] = true;
            }
        }
        s
    }

    pub fn target(&self) -> &Table {
        &self.target
    }

    pub fn bind(&mut self, name: &str, image: Poly) -> Result<(), PolyError> {
        let pos = self
            .source
            .position(name)
            .ok_or_else(|| PolyError::UnboundVariable(name.to_string()))?;
        self.bind_pos(pos, image)
    }

    pub fn bind_pos(&mut self, pos: usize, image: Poly) -> Result<(), PolyError> {
        if !same_table(image.table(), &self.target) {
            return Err(PolyError::TableMismatch);
        }
        let partner = self.source.partner(pos);
        if self.source.kind(pos) != VarKind::Real && !self.explicit[partner] {
            self.images[partner] = Some(image.conjugate());
        }
        self.images[pos] = Some(image);
        self.explicit[pos] = true;
        Ok(())
    }

    pub fn apply(&self, p: &Poly) -> Result<Poly, PolyError> {
        self.run(p, None)
    }

    /// Like [`Substitution::apply`] but drops every intermediate term whose
    /// exponent in target position `pos` exceeds `max`.
    pub fn apply_truncated(&self, p: &Poly, pos: usize, max: u16) -> Result<Poly, PolyError> {
        self.run(p, Some((pos, max)))
    }

    fn run(&self, p: &Poly, trunc: Option<(usize, u16)>) -> Result<Poly, PolyError> {
        if !same_table(p.table(), &self.source) {
            return Err(PolyError::TableMismatch);
        }
        let mul = |a: &Poly, b: &Poly| match trunc {
            Some((pos, max)) => a.mul_truncated(b, pos, max),
            None => a * b,
        };
        let mut powers: HashMap<(usize, u16), Poly> = HashMap::new();
        let mut out = Poly::zero(&self.target);
        for (m, c) in p.terms() {
            let mut term = Poly::constant(&self.target, c.clone());
            for (v, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let base = self.images[v]
                    .as_ref()
                    .ok_or_else(|| PolyError::UnboundVariable(self.source.name(v).to_string()))?;
                if !powers.contains_key(&(v, e)) {
                    let mut k = (1..e)
                        .rev()
                        .find(|k| powers.contains_key(&(v, *k)))
                        .unwrap_or(0);
                    let mut acc = if k == 0 {
                        Poly::one(&self.target)
                    } else {
                        powers[&(v, k)].clone()
                    };
                    while k < e {
                        acc = mul(&acc, base);
                        k += 1;
                        powers.insert((v, k), acc.clone());
                    }
                }
                term = mul(&term, &powers[&(v, e)]);
            }
            out = &out + &term;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarTable;
    use crate::scalar::gi;

    #[test]
    fn surface_chart_kills_defining_function() {
        let src = VarTable::new(vec![("z".into(), 1), ("w".into(), 2)], vec![]).unwrap();
        let dst = VarTable::new(vec![("z".into(), 1)], vec![("u".into(), 2)]).unwrap();
        let phi = &Poly::var(&dst, "z").unwrap() * &Poly::var(&dst, "zb").unwrap();
        let mut s = Substitution::identity_on_shared(&src, &dst);
        let chart = &Poly::var(&dst, "u").unwrap() + &phi.scale(&gi(0, 1));
        s.bind("w", chart).unwrap();
        let zz = &Poly::var(&src, "z").unwrap() * &Poly::var(&src, "zb").unwrap();
        let rho = &Poly::var(&src, "w").unwrap().im() - &zz;
        assert!(s.apply(&rho).unwrap().is_identically_zero());
    }

    #[test]
    fn unbound_variable() {
        let src = VarTable::new(vec![("z".into(), 1), ("w".into(), 2)], vec![]).unwrap();
        let dst = VarTable::new(vec![("z".into(), 1)], vec![]).unwrap();
        let s = Substitution::identity_on_shared(&src, &dst);
        let w = Poly::var(&src, "w").unwrap();
        assert_eq!(s.apply(&w), Err(PolyError::UnboundVariable("w".into())));
    }
}
