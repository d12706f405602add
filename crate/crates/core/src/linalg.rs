//! Exact sparse Gaussian elimination over a field.
//!
//! Rows are stored sparse and sorted by column. Elimination is incremental:
//! every inserted row is reduced against the current pivots, so the pivot
//! rows stay in echelon form with unit leading entries. [`Echelon::finish`]
//! back-substitutes to the reduced form used for canonical nullspace bases.

use std::collections::BTreeMap;
use std::ops::Neg;

use num_traits::Num;

pub trait Field: Clone + Num + Neg<Output = Self> + Send + Sync {}

impl<T: Clone + Num + Neg<Output = T> + Send + Sync> Field for T {}

pub type SparseRow<T> = Vec<(usize, T)>;

/// Dense row to sparse row, dropping zeros.
pub fn sparse<T: Field>(dense: &[T]) -> SparseRow<T> {
    dense
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| (c, v.clone()))
        .collect()
}

#[derive(Clone, Debug)]
pub struct Echelon<T> {
    ncols: usize,
    // pivot column -> row whose leading entry (at that column) is 1
    pivots: BTreeMap<usize, SparseRow<T>>,
}

impl<T: Field> Echelon<T> {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn from_rows<I: IntoIterator<Item = SparseRow<T>>>(ncols: usize, rows: I) -> Self {
        let mut ech = Echelon::new(ncols);
        for row in rows {
            ech.insert(row);
        }
        ech
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Reduces `row` against the current pivots and returns what is left.
    pub fn reduce(&self, row: &[(usize, T)]) -> SparseRow<T> {
        let mut work: BTreeMap<usize, T> = BTreeMap::new();
        for (c, v) in row {
            debug_assert!(*c < self.ncols);
            if !v.is_zero() {
                let entry = work.entry(*c).or_insert_with(T::zero);
                *entry = entry.clone() + v.clone();
            }
        }
        work.retain(|_, v| !v.is_zero());
        let mut cursor = 0usize;
        loop {
            let next = work
                .range(cursor..)
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, v)| (*c, v.clone()));
            let Some((col, factor)) = next else { break };
            let prow = &self.pivots[&col];
            for (c, v) in prow {
                let entry = work.entry(*c).or_insert_with(T::zero);
                *entry = entry.clone() - factor.clone() * v.clone();
                if entry.is_zero() {
                    work.remove(c);
                }
            }
            cursor = col + 1;
        }
        work.into_iter().collect()
    }

    /// Inserts a row; returns `true` when it increased the rank.
    pub fn insert(&mut self, row: SparseRow<T>) -> bool {
        let rest = self.reduce(&row);
        let Some((lead, lead_val)) = rest.first().cloned() else {
            return false;
        };
        let inv = T::one() / lead_val;
        let normalized: SparseRow<T> = rest
            .into_iter()
            .map(|(c, v)| (c, v * inv.clone()))
            .collect();
        self.pivots.insert(lead, normalized);
        true
    }

    pub fn contains(&self, row: &[(usize, T)]) -> bool {
        self.reduce(row).is_empty()
    }

    /// Back-substitutes so each pivot column is zero outside its own row.
    pub fn finish(mut self) -> Rref<T> {
        let cols: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for &p in &cols {
            let prow = self.pivots[&p].clone();
            for (&q, row) in self.pivots.range_mut(..p) {
                debug_assert!(q < p);
                let Some(pos) = row.iter().position(|(c, _)| *c == p) else {
                    continue;
                };
                let factor = row[pos].1.clone();
                let mut merged: BTreeMap<usize, T> = row.drain(..).collect();
                for (c, v) in &prow {
                    let entry = merged.entry(*c).or_insert_with(T::zero);
                    *entry = entry.clone() - factor.clone() * v.clone();
                    if entry.is_zero() {
                        merged.remove(c);
                    }
                }
                *row = merged.into_iter().collect();
            }
        }
        Rref {
            ncols: self.ncols,
            pivots: self.pivots,
        }
    }
}

/// Reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Rref<T> {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow<T>>,
}

impl<T: Field> Rref<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = (usize, &SparseRow<T>)> {
        self.pivots.iter().map(|(c, r)| (*c, r))
    }

    /// Canonical nullspace basis: one vector per free column (ascending),
    /// carrying a 1 at that column.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let free: Vec<usize> = (0..self.ncols)
            .filter(|c| !self.pivots.contains_key(c))
            .collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![T::zero(); self.ncols];
            v[f] = T::one();
            for (&p, row) in &self.pivots {
                if let Some((_, val)) = row.iter().find(|(c, _)| *c == f) {
                    v[p] = -val.clone();
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Nullspace of the matrix whose rows are given (columns `0..ncols`).
pub fn nullspace<T: Field>(ncols: usize, rows: Vec<SparseRow<T>>) -> Vec<Vec<T>> {
    Echelon::from_rows(ncols, rows).finish().nullspace()
}

pub fn rank<T: Field>(ncols: usize, rows: Vec<SparseRow<T>>) -> usize {
    Echelon::from_rows(ncols, rows).rank()
}

/// Solves `A x = b`; returns the particular solution with free variables
/// set to zero, or `None` when inconsistent.
pub fn solve<T: Field>(ncols: usize, rows: Vec<SparseRow<T>>, rhs: Vec<T>) -> Option<Vec<T>> {
    assert_eq!(rows.len(), rhs.len(), "row count mismatch");
    let aug: Vec<SparseRow<T>> = rows
        .into_iter()
        .zip(rhs)
        .map(|(mut r, b)| {
            if !b.is_zero() {
                r.push((ncols, b));
            }
            r
        })
        .collect();
    let rref = Echelon::from_rows(ncols + 1, aug).finish();
    if rref.pivots.contains_key(&ncols) {
        return None;
    }
    let mut x = vec![T::zero(); ncols];
    for (&p, row) in &rref.pivots {
        if let Some((_, v)) = row.iter().find(|(c, _)| *c == ncols) {
            x[p] = v.clone();
        }
    }
    Some(x)
}
