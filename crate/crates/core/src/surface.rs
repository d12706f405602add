//! Model surfaces `Im w = Phi(z, zb, u)` with `u = Re w`, their
//! nondegeneracy diagnostics, and algebraization over a real algebra.
//!
//! Every surface lives over a single variable table whose holomorphic block
//! is `[z_1..z_n, w_1..w_k]` and whose real block is `[u_1..u_k]`, with
//! `u_b` carrying the weight of `w_b`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{direct_sum, direct_sum_embedding, tensor_product, Algebra, AlgebraError};
use crate::autalg::VectorFieldPoly;
use crate::cli::expr::{parse_expression, ParseError};
use crate::linalg::{self, SparseRow};
use crate::poly::{
    conj_name, hol_monomials_up_to_degree, AlgebraPoly, Monomial, Poly, PolyError, Substitution,
    Table, VarKind, VarTable,
};
use crate::scalar::{gauss, imag_unit, rat, Gaussian, Rational};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SurfaceError {
    #[error("defining polynomial {0} is not real")]
    NotReal(usize),
    #[error("defining polynomial {j} is not weighted-homogeneous of weight {expected} (found weights {found:?})")]
    NotHomogeneous {
        j: usize,
        expected: u32,
        found: Vec<u32>,
    },
    #[error("bad arity: {0}")]
    BadArity(String),
    #[error("defining polynomial {j} uses `{name}`, which is not a z, zb or u variable")]
    ForeignVariable { j: usize, name: String },
    #[error("defining polynomial {0} is not of bidegree (2,2)")]
    WrongBidegree(usize),
    #[error("defining polynomial {0} is not a Hermitian form")]
    NotHermitian(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl SurfaceError {
    pub fn code(&self) -> &'static str {
        match self {
            SurfaceError::NotReal(_) => "NotReal",
            SurfaceError::NotHomogeneous { .. } => "NotHomogeneous",
            SurfaceError::BadArity(_) => "BadArity",
            SurfaceError::ForeignVariable { .. } => "ForeignVariable",
            SurfaceError::WrongBidegree(_) => "WrongBidegree",
            SurfaceError::NotHermitian(_) => "NotHermitian",
            SurfaceError::Poly(_) => "PolyError",
            SurfaceError::Parse(e) => e.code(),
            SurfaceError::Algebra(_) => "AlgebraError",
        }
    }
}

pub type Result<T> = std::result::Result<T, SurfaceError>;

/// Provenance of an algebraized surface.
#[derive(Clone, Debug, PartialEq)]
pub struct Algebraization {
    pub base: Arc<ModelSurface>,
    pub algebra: Algebra,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelSurface {
    n: usize,
    k: usize,
    table: Table,
    phi: Vec<Poly>,
    algebraization: Option<Algebraization>,
}

/// Table with hol `z1..zn, w1..wk` and real `u1..uk`.
pub fn canonical_table(z_weights: &[u32], w_weights: &[u32]) -> Result<Table> {
    let hol = z_weights
        .iter()
        .enumerate()
        .map(|(a, &w)| (format!("z{}", a + 1), w))
        .chain(
            w_weights
                .iter()
                .enumerate()
                .map(|(b, &w)| (format!("w{}", b + 1), w)),
        )
        .collect();
    let real = w_weights
        .iter()
        .enumerate()
        .map(|(b, &w)| (format!("u{}", b + 1), w))
        .collect();
    Ok(VarTable::new(hol, real)?)
}

/// Parses each `phi_exprs[j]` over the canonical table and validates.
pub fn make_surface(
    n: usize,
    k: usize,
    phi_exprs: &[&str],
    z_weights: &[u32],
    w_weights: &[u32],
) -> Result<ModelSurface> {
    if phi_exprs.len() != k || z_weights.len() != n || w_weights.len() != k {
        return Err(SurfaceError::BadArity(format!(
            "n={n}, k={k} but got {} equations, {} z weights, {} w weights",
            phi_exprs.len(),
            z_weights.len(),
            w_weights.len()
        )));
    }
    let table = canonical_table(z_weights, w_weights)?;
    let phi = phi_exprs
        .iter()
        .map(|e| parse_expression(e, &table))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    ModelSurface::new(&table, n, k, phi)
}

impl ModelSurface {
    pub fn new(table: &Table, n: usize, k: usize, phi: Vec<Poly>) -> Result<Self> {
        if table.hol_count() != n + k || table.real_count() != k || phi.len() != k {
            return Err(SurfaceError::BadArity(format!(
                "table has {} hol and {} real variables, expected {} and {k}",
                table.hol_count(),
                table.real_count(),
                n + k
            )));
        }
        for b in 0..k {
            if table.hol_weight(n + b) != table.weight(table.real_pos(b)) {
                return Err(SurfaceError::BadArity(format!(
                    "{} and {} carry different weights",
                    table.name(n + b),
                    table.name(table.real_pos(b))
                )));
            }
        }
        let h = n + k;
        for (j, p) in phi.iter().enumerate() {
            if !crate::poly::same_table(p.table(), table) {
                return Err(PolyError::TableMismatch.into());
            }
            for (m, _) in p.terms() {
                let bad = (0..table.nvars()).find(|&v| {
                    m.exp(v) > 0 && matches!(table.kind(v), VarKind::Hol | VarKind::Conj) && {
                        let i = if v < h { v } else { v - h };
                        i >= n
                    }
                });
                if let Some(v) = bad {
                    return Err(SurfaceError::ForeignVariable {
                        j,
                        name: table.name(v).to_string(),
                    });
                }
            }
            if !p.is_real() {
                return Err(SurfaceError::NotReal(j));
            }
            let expected = table.hol_weight(n + j);
            let found = p.weights();
            if found.iter().any(|&w| w != expected) {
                return Err(SurfaceError::NotHomogeneous { j, expected, found });
            }
        }
        Ok(ModelSurface {
            n,
            k,
            table: table.clone(),
            phi,
            algebraization: None,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    pub fn phi(&self) -> &[Poly] {
        &self.phi
    }

    pub fn algebraization(&self) -> Option<&Algebraization> {
        self.algebraization.as_ref()
    }

    pub fn z_pos(&self, a: usize) -> usize {
        a
    }

    pub fn zb_pos(&self, a: usize) -> usize {
        self.table.conj_pos(a)
    }

    pub fn w_pos(&self, b: usize) -> usize {
        self.n + b
    }

    pub fn u_pos(&self, b: usize) -> usize {
        self.table.real_pos(b)
    }

    pub fn w_weight(&self, b: usize) -> u32 {
        self.table.hol_weight(self.n + b)
    }

    pub fn max_w_weight(&self) -> u32 {
        (0..self.k).map(|b| self.w_weight(b)).max().unwrap_or(0)
    }

    pub fn min_w_weight(&self) -> u32 {
        (0..self.k).map(|b| self.w_weight(b)).min().unwrap_or(0)
    }

    pub fn is_u_independent(&self) -> bool {
        let us: Vec<usize> = (0..self.k).map(|b| self.u_pos(b)).collect();
        self.phi.iter().all(|p| p.degree_in(&us) == 0)
    }

    /// Every term of every `phi_j` has degree 2 in `z`, 2 in `zb`, 0 in `u`.
    pub fn is_bidegree_22(&self) -> bool {
        self.bidegree_22_violation().is_none() && self.k > 0
    }

    fn bidegree_22_violation(&self) -> Option<usize> {
        let zs: Vec<usize> = (0..self.n).collect();
        let zbs: Vec<usize> = (0..self.n).map(|a| self.zb_pos(a)).collect();
        let us: Vec<usize> = (0..self.k).map(|b| self.u_pos(b)).collect();
        let deg = |m: &Monomial, ps: &[usize]| ps.iter().map(|&p| m.exp(p) as u32).sum::<u32>();
        self.phi.iter().position(|p| {
            p.is_empty()
                || p.terms()
                    .any(|(m, _)| deg(m, &zs) != 2 || deg(m, &zbs) != 2 || deg(m, &us) != 0)
        })
    }

    pub fn max_phi_degree(&self) -> u32 {
        self.phi
            .iter()
            .filter_map(Poly::total_degree)
            .max()
            .unwrap_or(0)
    }

    /// `w_b -> u_b + i phi_b`, conjugates accordingly, everything else fixed.
    pub fn chart(&self) -> Substitution {
        let mut s = Substitution::identity_on_shared(&self.table, &self.table);
        for b in 0..self.k {
            let image =
                &Poly::var_at(&self.table, self.u_pos(b)) + &self.phi[b].scale(&imag_unit());
            s.bind_pos(self.w_pos(b), image).expect("same table");
        }
        s
    }

    /// `rho_j = Im w_j - phi_j`.
    pub fn defining_functions(&self) -> Vec<Poly> {
        (0..self.k)
            .map(|j| &Poly::var_at(&self.table, self.w_pos(j)).im() - &self.phi[j])
            .collect()
    }

    /// Text form readable by the CLI surface parser (canonical tables only).
    pub fn to_text(&self) -> String {
        let mut out = format!("surface n={} k={}\n", self.n, self.k);
        let weights: Vec<String> = (0..self.n + self.k)
            .map(|p| format!("{}={}", self.table.name(p), self.table.hol_weight(p)))
            .collect();
        if !weights.is_empty() {
            out.push_str(&format!("weight {}\n", weights.join(" ")));
        }
        for j in 0..self.k {
            out.push_str(&format!(
                "Im{} = {}\n",
                self.table.name(self.w_pos(j)),
                self.phi[j]
            ));
        }
        out
    }
}

/// Evaluates holomorphic monomials on the surface chart `w = u + i phi`,
/// caching powers of each `w_b` image.
pub struct Chart<'a> {
    q: &'a ModelSurface,
    powers: HashMap<(usize, u16), Poly>,
    w_parts: HashMap<Monomial, Poly>,
}

impl<'a> Chart<'a> {
    pub fn new(q: &'a ModelSurface) -> Self {
        Chart {
            q,
            powers: HashMap::new(),
            w_parts: HashMap::new(),
        }
    }

    fn power(&mut self, pos: usize, e: u16) -> Poly {
        if let Some(p) = self.powers.get(&(pos, e)) {
            return p.clone();
        }
        let q = self.q;
        let base = if pos < q.n {
            Poly::var_at(&q.table, pos)
        } else {
            let b = pos - q.n;
            &Poly::var_at(&q.table, q.u_pos(b)) + &q.phi[b].scale(&imag_unit())
        };
        let p = if e == 1 {
            base
        } else {
            &self.power(pos, e - 1) * &base
        };
        self.powers.insert((pos, e), p.clone());
        p
    }

    /// Image of a monomial in the hol variables.
    pub fn image(&mut self, m: &Monomial) -> Poly {
        let q = self.q;
        let mut zexps: Vec<u16> = vec![0; q.table.nvars()];
        let mut wexps = zexps.clone();
        for pos in 0..q.n + q.k {
            if pos < q.n {
                zexps[pos] = m.exp(pos);
            } else {
                wexps[pos] = m.exp(pos);
            }
        }
        let wpart = Monomial::new(wexps.iter().copied().collect());
        let wimage = match self.w_parts.get(&wpart) {
            Some(p) => p.clone(),
            None => {
                let mut out = Poly::one(&q.table);
                for pos in q.n..q.n + q.k {
                    if wexps[pos] > 0 {
                        out = &out * &self.power(pos, wexps[pos]);
                    }
                }
                self.w_parts.insert(wpart, out.clone());
                out
            }
        };
        let zpart = Monomial::new(zexps.into_iter().collect());
        if zpart.degree() == 0 {
            return wimage;
        }
        Poly::from_terms(
            &q.table,
            wimage.terms().map(|(m, c)| (m.mul(&zpart), c.clone())),
        )
    }
}

/// Scalar coordinates of the surface over `s`: `z_a` becomes
/// `z_a_1 .. z_a_l`, and equation `j` becomes equations `j*l .. j*l+l-1`.
pub fn algebraize(q: &ModelSurface, s: &Algebra) -> Result<ModelSurface> {
    let l = s.dim();
    let table = q.table.expanded(l)?;
    let mut phi = Vec::with_capacity(q.k * l);
    for p in &q.phi {
        phi.extend(AlgebraPoly::from_poly(p, s).scalar_expand(&table));
    }
    let mut out = ModelSurface::new(&table, q.n * l, q.k * l, phi)?;
    out.algebraization = Some(Algebraization {
        base: Arc::new(q.clone()),
        algebra: s.clone(),
    });
    Ok(out)
}

/// Whether algebraizing over `s1` and then `s2` agrees with a single
/// algebraization over `s2 (x) s1` under `(m1, m2) -> (m2 - 1) * l1 + m1`.
pub fn algebraize_twice_equals_tensor(
    q: &ModelSurface,
    s1: &Algebra,
    s2: &Algebra,
) -> Result<bool> {
    let (l1, l2) = (s1.dim(), s2.dim());
    let twice = algebraize(&algebraize(q, s1)?, s2)?;
    let once = algebraize(q, &tensor_product(s2, s1)?)?;
    let old = &q.table;
    let index = |p: usize| -> (usize, usize, usize) {
        let (p1, m2) = (p / l2, p % l2);
        (p1 / l1, p1 % l1, m2)
    };
    let mut names = HashMap::new();
    for p in 0..twice.table.nvars() {
        let (p0, m1, m2) = index(p);
        debug_assert!(p0 < old.nvars());
        names.insert(
            twice.table.name(p).to_string(),
            once.table.name(p0 * l1 * l2 + m2 * l1 + m1).to_string(),
        );
    }
    for (j, p) in twice.phi.iter().enumerate() {
        let (j0, m1, m2) = index(j);
        let renamed = p.rename_into(&once.table, |s| names.get(s).cloned().unwrap_or_default())?;
        if renamed != once.phi[j0 * l1 * l2 + m2 * l1 + m1] {
            return Ok(false);
        }
    }
    Ok(twice.phi.len() == once.phi.len())
}

/// Canonically named product: the factors' variables become consecutive
/// blocks of `z`, `w`, `u`.
pub fn cartesian_product(q1: &ModelSurface, q2: &ModelSurface) -> Result<ModelSurface> {
    let (n, k) = (q1.n + q2.n, q1.k + q2.k);
    let zw: Vec<u32> = (0..q1.n)
        .map(|a| q1.table.hol_weight(a))
        .chain((0..q2.n).map(|a| q2.table.hol_weight(a)))
        .collect();
    let ww: Vec<u32> = (0..q1.k)
        .map(|b| q1.w_weight(b))
        .chain((0..q2.k).map(|b| q2.w_weight(b)))
        .collect();
    let table = canonical_table(&zw, &ww)?;
    let renaming = |q: &ModelSurface, zoff: usize, woff: usize| {
        let mut names = HashMap::new();
        for a in 0..q.n {
            let new = format!("z{}", zoff + a + 1);
            names.insert(conj_name(q.table.name(a)), conj_name(&new));
            names.insert(q.table.name(a).to_string(), new);
        }
        for b in 0..q.k {
            names.insert(
                q.table.name(q.u_pos(b)).to_string(),
                format!("u{}", woff + b + 1),
            );
        }
        names
    };
    let r1 = renaming(q1, 0, 0);
    let r2 = renaming(q2, q1.n, q1.k);
    let mut phi = Vec::with_capacity(k);
    for p in &q1.phi {
        phi.push(p.rename_into(&table, |s| r1.get(s).cloned().unwrap_or_default())?);
    }
    for p in &q2.phi {
        phi.push(p.rename_into(&table, |s| r2.get(s).cloned().unwrap_or_default())?);
    }
    ModelSurface::new(&table, n, k, phi)
}

/// Rows of `(Re, Im)` coefficients of the given polynomials over a shared
/// monomial index; one column per polynomial.
fn real_coefficient_rows(polys: &[Poly]) -> Vec<SparseRow<Rational>> {
    let mut rows: BTreeMap<(Monomial, bool), SparseRow<Rational>> = BTreeMap::new();
    for (j, p) in polys.iter().enumerate() {
        for (m, c) in p.terms() {
            if !c.re.is_zero() {
                rows.entry((m.clone(), false))
                    .or_default()
                    .push((j, c.re.clone()));
            }
            if !c.im.is_zero() {
                rows.entry((m.clone(), true))
                    .or_default()
                    .push((j, c.im.clone()));
            }
        }
    }
    rows.into_values().collect()
}

/// Vectors of polynomials as rational row vectors over a shared monomial index.
fn as_real_vectors(polys: &[Poly]) -> Vec<SparseRow<Rational>> {
    let mut index: BTreeMap<(Monomial, bool), usize> = BTreeMap::new();
    for p in polys {
        for (m, _) in p.terms() {
            index.insert((m.clone(), false), 0);
            index.insert((m.clone(), true), 0);
        }
    }
    for (i, v) in index.values_mut().enumerate() {
        *v = i;
    }
    polys
        .iter()
        .map(|p| {
            let mut row: SparseRow<Rational> = Vec::new();
            for (m, c) in p.terms() {
                if !c.re.is_zero() {
                    row.push((index[&(m.clone(), false)], c.re.clone()));
                }
                if !c.im.is_zero() {
                    row.push((index[&(m.clone(), true)], c.im.clone()));
                }
            }
            row.sort_by_key(|(c, _)| *c);
            row
        })
        .collect()
}

/// Whether two families of polynomials span the same real vector space.
pub fn same_real_span(a: &[Poly], b: &[Poly]) -> bool {
    let all: Vec<Poly> = a.iter().chain(b).cloned().collect();
    let vecs = as_real_vectors(&all);
    let ncols = vecs
        .iter()
        .flat_map(|r| r.iter().map(|(c, _)| c + 1))
        .max()
        .unwrap_or(0);
    let ra = linalg::rank(ncols, vecs[..a.len()].to_vec());
    let rb = linalg::rank(ncols, vecs[a.len()..].to_vec());
    let rab = linalg::rank(ncols, vecs);
    ra == rab && rb == rab
}

/// Compares the algebraization over `a (+) b` with the product of the
/// separate algebraizations. The product's coordinates are expressed
/// through the direct-sum basis, after which both defining systems must
/// span the same space.
pub fn direct_sum_matches_product(q: &ModelSurface, a: &Algebra, b: &Algebra) -> Result<bool> {
    let sum = direct_sum(a, b)?;
    let big = algebraize(q, &sum)?;
    let prod = cartesian_product(&algebraize(q, a)?, &algebraize(q, b)?)?;
    let (la, lb) = (a.dim(), b.dim());
    let l = la + lb;
    let emb = direct_sum_embedding(a, b);
    let mut s = Substitution::new(&prod.table, &big.table);
    // product variable for (original variable v, part, coordinate m)
    let mut bind = |prod_pos: usize, v: usize, in_a: bool, m: usize, real: bool| -> Result<()> {
        let mut image = Poly::zero(&big.table);
        for (t, (ca, cb)) in emb.iter().enumerate() {
            let c = if in_a { &ca[m] } else { &cb[m] };
            if c.is_zero() {
                continue;
            }
            let pos = if real {
                big.table.real_pos(v * l + t)
            } else {
                v * l + t
            };
            image = &image + &Poly::var_at(&big.table, pos).scale_rat(c);
        }
        s.bind_pos(prod_pos, image)?;
        Ok(())
    };
    let (n, k) = (q.n, q.k);
    for a0 in 0..n {
        for m in 0..la {
            bind(a0 * la + m, a0, true, m, false)?;
        }
        for m in 0..lb {
            bind(n * la + a0 * lb + m, a0, false, m, false)?;
        }
    }
    let pn = prod.n;
    for b0 in 0..k {
        for m in 0..la {
            bind(pn + b0 * la + m, n + b0, true, m, false)?;
            bind(prod.table.real_pos(b0 * la + m), b0, true, m, true)?;
        }
        for m in 0..lb {
            bind(pn + k * la + b0 * lb + m, n + b0, false, m, false)?;
            bind(
                prod.table.real_pos(k * la + b0 * lb + m),
                b0,
                false,
                m,
                true,
            )?;
        }
    }
    let mapped = prod
        .defining_functions()
        .iter()
        .map(|p| s.apply(p))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(same_real_span(&mapped, &big.defining_functions()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct HermitianFormSpec {
    pub n: usize,
    pub k: usize,
    /// `phi_j = sum h[j][a][b] z_a zb_b`
    pub h: Vec<Vec<Vec<Gaussian>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadricReport {
    pub independent: bool,
    pub trivial_kernel: bool,
}

impl QuadricReport {
    pub fn nondegenerate(&self) -> bool {
        self.independent && self.trivial_kernel
    }
}

impl HermitianFormSpec {
    pub fn new(n: usize, k: usize, h: Vec<Vec<Vec<Gaussian>>>) -> Result<Self> {
        if h.len() != k
            || h.iter()
                .any(|m| m.len() != n || m.iter().any(|r| r.len() != n))
        {
            return Err(SurfaceError::BadArity("Hermitian tensor shape".into()));
        }
        for (j, m) in h.iter().enumerate() {
            for a in 0..n {
                for b in 0..n {
                    if m[a][b] != m[b][a].conj() {
                        return Err(SurfaceError::NotHermitian(j));
                    }
                }
            }
        }
        Ok(HermitianFormSpec { n, k, h })
    }

    pub fn from_surface(q: &ModelSurface) -> Result<Self> {
        let mut h = vec![vec![vec![Gaussian::zero(); q.n]; q.n]; q.k];
        for (j, p) in q.phi.iter().enumerate() {
            for (m, c) in p.terms() {
                let a = (0..q.n).find(|&a| m.exp(q.z_pos(a)) == 1);
                let b = (0..q.n).find(|&b| m.exp(q.zb_pos(b)) == 1);
                match (a, b) {
                    (Some(a), Some(b)) if m.degree() == 2 => h[j][a][b] = c.clone(),
                    _ => return Err(SurfaceError::NotHermitian(j)),
                }
            }
        }
        HermitianFormSpec::new(q.n, q.k, h)
    }

    pub fn check_quadric_nondegeneracy(&self) -> QuadricReport {
        let (n, k) = (self.n, self.k);
        // each h[j] as a real vector of length 2 n^2, columns indexed by j
        let mut rows = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let re = sparse_col(k, |j| self.h[j][a][b].re.clone());
                let im = sparse_col(k, |j| self.h[j][a][b].im.clone());
                rows.push(re);
                rows.push(im);
            }
        }
        let independent = linalg::rank(k, rows) == k;
        // stacked k n x n system h[j] x = 0
        let mut stacked: Vec<SparseRow<Gaussian>> = Vec::new();
        for m in &self.h {
            for row in m {
                stacked.push(linalg::sparse(row));
            }
        }
        let trivial_kernel = linalg::rank(n, stacked) == n;
        QuadricReport {
            independent,
            trivial_kernel,
        }
    }
}

fn sparse_col(k: usize, f: impl Fn(usize) -> Rational) -> SparseRow<Rational> {
    (0..k)
        .map(|j| (j, f(j)))
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

/// True iff no nontrivial real combination of the `phi_j` vanishes.
pub fn check_finite_type_linear(q: &ModelSurface) -> bool {
    linalg::rank(q.k, real_coefficient_rows(&q.phi)) == q.k
}

#[derive(Clone, Debug, PartialEq)]
pub enum FdOutcome {
    /// Full-rank Jacobian at the given `(z, zeta)` point.
    Holds {
        point: Vec<Gaussian>,
        samples: usize,
    },
    Inconclusive {
        samples: usize,
    },
}

impl FdOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, FdOutcome::Holds { .. })
    }
}

pub const FD_HALTON_POINTS: usize = 64;
pub const FD_BUDGET: usize = 512;
pub const DEFAULT_SEED: u64 = 0x5eed;

fn radical_inverse(mut i: u64, base: u64) -> Rational {
    let mut num = 0u64;
    let mut den = 1u64;
    while i > 0 {
        num = num * base + i % base;
        den *= base;
        i /= base;
    }
    // digits were accumulated reversed, which is exactly the radical inverse
    rat(num as i64, den as i64)
}

const PRIMES: [u64; 24] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
];

fn sample_points(dim: usize, seed: u64) -> impl Iterator<Item = Vec<Gaussian>> {
    let ones = std::iter::once(vec![Gaussian::one(); dim]);
    let halton = (1..=FD_HALTON_POINTS as u64).map(move |i| {
        (0..dim)
            .map(|d| {
                let base = PRIMES[d % PRIMES.len()] + 100 * (d / PRIMES.len()) as u64;
                gauss(radical_inverse(i, base) + Rational::one(), Rational::zero())
            })
            .collect()
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random = (0..FD_BUDGET - 1 - FD_HALTON_POINTS).map(move |_| {
        (0..dim)
            .map(|_| {
                let re = rat(rng.gen_range(-9..=9), rng.gen_range(1..=9));
                let im = rat(rng.gen_range(-9..=9), rng.gen_range(1..=9));
                gauss(re, im)
            })
            .collect()
    });
    ones.chain(halton).chain(random)
}

/// Samples the Jacobian of the polarized map `(z, zeta) -> Phi(z, zeta)`
/// for rank `k`.
pub fn check_fd_condition(q: &ModelSurface, seed: u64) -> Result<FdOutcome> {
    if let Some(j) = q.bidegree_22_violation() {
        return Err(SurfaceError::WrongBidegree(j));
    }
    let (n, k) = (q.n, q.k);
    if k > 2 * n {
        return Ok(FdOutcome::Inconclusive { samples: 0 });
    }
    let cols: Vec<usize> = (0..n)
        .map(|a| q.z_pos(a))
        .chain((0..n).map(|a| q.zb_pos(a)))
        .collect();
    let jac: Vec<Vec<Poly>> = q
        .phi
        .iter()
        .map(|p| cols.iter().map(|&c| p.derivative(c)).collect())
        .collect();
    let nv = q.table.nvars();
    let mut samples = 0;
    for point in sample_points(2 * n, seed) {
        samples += 1;
        let mut values = vec![Gaussian::zero(); nv];
        for (v, c) in point.iter().zip(&cols) {
            values[*c] = v.clone();
        }
        let rows: Vec<SparseRow<Gaussian>> = jac
            .iter()
            .map(|r| linalg::sparse(&r.iter().map(|p| p.eval(&values)).collect::<Vec<_>>()))
            .collect();
        if linalg::rank(2 * n, rows) == k {
            return Ok(FdOutcome::Holds { point, samples });
        }
    }
    Ok(FdOutcome::Inconclusive { samples })
}

#[derive(Clone, Debug, PartialEq)]
pub enum HolNondegeneracy {
    NondegenerateUpTo(u32),
    Degenerate(VectorFieldPoly),
}

/// Default degree cap: total degree of `Phi` plus two.
pub fn default_nondegeneracy_degree(q: &ModelSurface) -> u32 {
    q.max_phi_degree() + 2
}

/// Searches for a nonzero holomorphic `(1,0)` field of degree at most `d`
/// tangent to the surface. The search splits by field weight.
pub fn check_holomorphic_nondegeneracy_bounded(q: &ModelSurface, d: u32) -> HolNondegeneracy {
    let t = &q.table;
    let h = q.n + q.k;
    let mut by_weight: BTreeMap<i64, Vec<(usize, Monomial)>> = BTreeMap::new();
    for m in hol_monomials_up_to_degree(t, d) {
        let mw = m.weight(t) as i64;
        for pos in 0..h {
            by_weight
                .entry(mw - t.hol_weight(pos) as i64)
                .or_default()
                .push((pos, m.clone()));
        }
    }
    let half = gauss(rat(1, 2), Rational::zero());
    let minus_half_i = gauss(Rational::zero(), rat(-1, 2));
    let dphi_z: Vec<Vec<Poly>> = q
        .phi
        .iter()
        .map(|p| (0..q.n).map(|a| p.derivative(q.z_pos(a))).collect())
        .collect();
    let dphi_u: Vec<Vec<Poly>> = q
        .phi
        .iter()
        .map(|p| (0..q.k).map(|b| p.derivative(q.u_pos(b))).collect())
        .collect();
    let mut chart = Chart::new(q);
    for unknowns in by_weight.values() {
        let mut rows: BTreeMap<(usize, Monomial), SparseRow<Gaussian>> = BTreeMap::new();
        for (col, (pos, m)) in unknowns.iter().enumerate() {
            let img = chart.image(m);
            for j in 0..q.k {
                let contrib = if *pos < q.n {
                    -&(&img * &dphi_z[j][*pos])
                } else {
                    let b = *pos - q.n;
                    let mut c = &img * &dphi_u[j][b].scale(&half);
                    c = -&c;
                    if b == j {
                        c = &c + &img.scale(&minus_half_i);
                    }
                    c
                };
                for (mono, v) in contrib.terms() {
                    rows.entry((j, mono.clone()))
                        .or_default()
                        .push((col, v.clone()));
                }
            }
        }
        let ns = linalg::nullspace(unknowns.len(), rows.into_values().collect());
        if let Some(v) = ns.first() {
            let mut x = VectorFieldPoly::zero(t, q.n);
            for ((pos, m), c) in unknowns.iter().zip(v) {
                let term = Poly::term(t, m.clone(), c.clone());
                *x.component_mut(*pos) = x.component(*pos) + &term;
            }
            return HolNondegeneracy::Degenerate(x);
        }
    }
    HolNondegeneracy::NondegenerateUpTo(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::preset_algebra;

    fn sphere() -> ModelSurface {
        make_surface(1, 1, &["z1*zb1"], &[1], &[2]).unwrap()
    }

    fn quartic() -> ModelSurface {
        make_surface(1, 1, &["z1^2*zb1^2"], &[1], &[4]).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            make_surface(1, 1, &["z1^2"], &[1], &[2]).unwrap_err(),
            SurfaceError::NotReal(0)
        );
        assert!(matches!(
            make_surface(1, 1, &["z1*zb1"], &[1], &[4]),
            Err(SurfaceError::NotHomogeneous { j: 0, .. })
        ));
        assert!(matches!(
            make_surface(1, 2, &["z1*zb1"], &[1], &[2]),
            Err(SurfaceError::BadArity(_))
        ));
        assert!(matches!(
            make_surface(1, 1, &["w1*wb1"], &[1], &[2]),
            Err(SurfaceError::ForeignVariable { .. })
        ));
    }

    #[test]
    fn dual_sphere_components() {
        let dual = preset_algebra("dual").unwrap();
        let q = algebraize(&sphere(), &dual).unwrap();
        assert_eq!((q.n(), q.k()), (2, 2));
        let t = q.table();
        let e = |s: &str| parse_expression(s, t).unwrap();
        assert_eq!(q.phi()[0], e("z1_1*zb1_1"));
        assert_eq!(q.phi()[1], e("2*Re(z1_2*zb1_1)"));
    }

    #[test]
    fn dual_quartic_components() {
        let dual = preset_algebra("dual").unwrap();
        let q = algebraize(&quartic(), &dual).unwrap();
        let t = q.table();
        let e = |s: &str| parse_expression(s, t).unwrap();
        assert_eq!(q.phi()[0], e("z1_1^2*zb1_1^2"));
        assert_eq!(q.phi()[1], e("4*Re(z1_1^2*zb1_1*zb1_2)"));
        assert!(q.phi().iter().all(Poly::is_real));
    }

    #[test]
    fn reals_algebraization_is_identity() {
        let reals = preset_algebra("reals").unwrap();
        let q = quartic();
        let a = algebraize(&q, &reals).unwrap();
        let back = a.phi()[0].rename_into(q.table(), |s| s.trim_end_matches("_1").to_string());
        assert_eq!(back.unwrap(), q.phi()[0]);
    }

    #[test]
    fn quadric_nondegeneracy() {
        let h = HermitianFormSpec::from_surface(&sphere()).unwrap();
        assert!(h.check_quadric_nondegeneracy().nondegenerate());
        let dup = make_surface(1, 2, &["z1*zb1", "z1*zb1"], &[1], &[2, 2]).unwrap();
        let r = HermitianFormSpec::from_surface(&dup)
            .unwrap()
            .check_quadric_nondegeneracy();
        assert!(!r.independent);
        assert!(r.trivial_kernel);
    }

    #[test]
    fn fd_on_quartic_uses_first_point() {
        match check_fd_condition(&quartic(), DEFAULT_SEED).unwrap() {
            FdOutcome::Holds { samples, point } => {
                assert_eq!(samples, 1);
                assert!(point.iter().all(|c| c.is_one()));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            check_fd_condition(&sphere(), DEFAULT_SEED),
            Err(SurfaceError::WrongBidegree(0))
        ));
    }

    #[test]
    fn holomorphic_nondegeneracy() {
        assert_eq!(
            check_holomorphic_nondegeneracy_bounded(&sphere(), 3),
            HolNondegeneracy::NondegenerateUpTo(3)
        );
        let spurious = make_surface(2, 1, &["z1*zb1 + zb1*z1"], &[1, 1], &[2]).unwrap();
        match check_holomorphic_nondegeneracy_bounded(&spurious, 2) {
            HolNondegeneracy::Degenerate(x) => {
                assert!(x.f()[0].is_empty() && x.g()[0].is_empty());
                assert!(x.f()[1].is_constant());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn product_and_split() {
        let s = sphere();
        let p = cartesian_product(&s, &s).unwrap();
        let t = p.table();
        assert_eq!(p.phi()[1], parse_expression("z2*zb2", t).unwrap());
        let empty = ModelSurface::new(&canonical_table(&[], &[]).unwrap(), 0, 0, vec![]).unwrap();
        assert_eq!(cartesian_product(&s, &empty).unwrap(), s);
        let split = preset_algebra("split").unwrap();
        let reals = preset_algebra("reals").unwrap();
        assert!(direct_sum_matches_product(&s, &reals, &reals).unwrap());
        assert!(direct_sum_matches_product(&s, &split, &reals).unwrap());
    }
}
