use std::collections::HashMap;
use std::sync::Arc;

use super::PolyError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarKind {
    Hol,
    Conj,
    Real,
}

/// Variable layout shared by a family of polynomials.
///
/// Exponent vectors are laid out as `[hol..., conj..., real...]`; the i-th
/// conjugate is the formal partner of the i-th holomorphic variable and
/// inherits its weight.
#[derive(Clone, Debug)]
pub struct VarTable {
    hol: Vec<String>,
    conj: Vec<String>,
    real: Vec<String>,
    hol_weights: Vec<u32>,
    real_weights: Vec<u32>,
    index: HashMap<String, usize>,
}

pub type Table = Arc<VarTable>;

impl PartialEq for VarTable {
    fn eq(&self, other: &Self) -> bool {
        self.hol == other.hol
            && self.real == other.real
            && self.hol_weights == other.hol_weights
            && self.real_weights == other.real_weights
    }
}

impl Eq for VarTable {}

/// `z1 -> zb1`, `w2_1 -> wb2_1`, `z -> zb`.
pub fn conj_name(name: &str) -> String {
    let split = name
        .char_indices()
        .find(|(_, c)| !c.is_ascii_alphabetic())
        .map(|(i, _)| i)
        .unwrap_or(name.len());
    format!("{}b{}", &name[..split], &name[split..])
}

fn valid_ident(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

const RESERVED: [&str; 4] = ["i", "Re", "Im", "conj"];

impl VarTable {
    pub fn new(hol: Vec<(String, u32)>, real: Vec<(String, u32)>) -> Result<Table, PolyError> {
        let mut index = HashMap::new();
        let conj: Vec<String> = hol.iter().map(|(n, _)| conj_name(n)).collect();
        let hol_count = hol.len();
        let names = hol
            .iter()
            .map(|(n, _)| n.clone())
            .chain(conj.iter().cloned())
            .chain(real.iter().map(|(n, _)| n.clone()));
        for (pos, name) in names.enumerate() {
            if !valid_ident(&name) || RESERVED.contains(&name.as_str()) {
                return Err(PolyError::BadName(name));
            }
            if index.insert(name.clone(), pos).is_some() {
                return Err(PolyError::DuplicateName(name));
            }
        }
        for (name, w) in hol.iter().chain(real.iter()) {
            if *w == 0 {
                return Err(PolyError::BadWeight(name.clone()));
            }
        }
        debug_assert_eq!(conj.len(), hol_count);
        Ok(Arc::new(VarTable {
            hol_weights: hol.iter().map(|(_, w)| *w).collect(),
            real_weights: real.iter().map(|(_, w)| *w).collect(),
            hol: hol.into_iter().map(|(n, _)| n).collect(),
            conj,
            real: real.into_iter().map(|(n, _)| n).collect(),
            index,
        }))
    }

    pub fn nvars(&self) -> usize {
        2 * self.hol.len() + self.real.len()
    }

    pub fn hol_count(&self) -> usize {
        self.hol.len()
    }

    pub fn real_count(&self) -> usize {
        self.real.len()
    }

    pub fn hol_names(&self) -> &[String] {
        &self.hol
    }

    pub fn real_names(&self) -> &[String] {
        &self.real
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn hol_pos(&self, i: usize) -> usize {
        i
    }

    pub fn conj_pos(&self, i: usize) -> usize {
        self.hol.len() + i
    }

    pub fn real_pos(&self, r: usize) -> usize {
        2 * self.hol.len() + r
    }

    pub fn kind(&self, pos: usize) -> VarKind {
        let h = self.hol.len();
        if pos < h {
            VarKind::Hol
        } else if pos < 2 * h {
            VarKind::Conj
        } else {
            VarKind::Real
        }
    }

    pub fn name(&self, pos: usize) -> &str {
        let h = self.hol.len();
        match self.kind(pos) {
            VarKind::Hol => &self.hol[pos],
            VarKind::Conj => &self.conj[pos - h],
            VarKind::Real => &self.real[pos - 2 * h],
        }
    }

    /// Position of the formal conjugate (real variables are self-conjugate).
    pub fn partner(&self, pos: usize) -> usize {
        let h = self.hol.len();
        match self.kind(pos) {
            VarKind::Hol => pos + h,
            VarKind::Conj => pos - h,
            VarKind::Real => pos,
        }
    }

    pub fn weight(&self, pos: usize) -> u32 {
        let h = self.hol.len();
        match self.kind(pos) {
            VarKind::Hol => self.hol_weights[pos],
            VarKind::Conj => self.hol_weights[pos - h],
            VarKind::Real => self.real_weights[pos - 2 * h],
        }
    }

    pub fn hol_weight(&self, i: usize) -> u32 {
        self.hol_weights[i]
    }

    /// Same variables plus extra real variables appended at the end.
    pub fn with_real_vars(&self, extra: &[(&str, u32)]) -> Result<Table, PolyError> {
        let hol = self
            .hol
            .iter()
            .cloned()
            .zip(self.hol_weights.iter().copied())
            .collect();
        let mut real: Vec<(String, u32)> = self
            .real
            .iter()
            .cloned()
            .zip(self.real_weights.iter().copied())
            .collect();
        real.extend(extra.iter().map(|(n, w)| (n.to_string(), *w)));
        VarTable::new(hol, real)
    }

    /// Scalar coordinates of algebra-valued variables: each variable `v`
    /// becomes `v_1 .. v_l`, at index `i * l + m`.
    pub fn expanded(&self, l: usize) -> Result<Table, PolyError> {
        let expand = |names: &[String], weights: &[u32]| -> Vec<(String, u32)> {
            names
                .iter()
                .zip(weights)
                .flat_map(|(n, w)| (1..=l).map(move |m| (format!("{n}_{m}"), *w)))
                .collect()
        };
        VarTable::new(
            expand(&self.hol, &self.hol_weights),
            expand(&self.real, &self.real_weights),
        )
    }
}
