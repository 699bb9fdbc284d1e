//! Keyed accumulation of expanded terms, shared by the exhaustive checkers.

use std::collections::HashMap;

use crate::scalar::{CycloField, Expanded, Scalar, Term, TermSum};

/// A linear combination with expanded coefficients.
pub(crate) type XLin = Vec<(usize, Expanded)>;

pub(crate) fn expand_lin(terms: &[(usize, Scalar)]) -> XLin {
    terms.iter().map(|(i, s)| (*i, s.expand())).collect()
}

const DENSE_LIMIT: usize = 1 << 20;

enum Index {
    Dense(Vec<u32>),
    Sparse(HashMap<usize, u32>),
}

/// Sums of terms indexed by an integer key, cheap to reset between tuples.
pub(crate) struct Acc {
    index: Index,
    entries: Vec<(usize, TermSum)>,
}

impl Acc {
    pub fn new(key_space: usize) -> Self {
        let index = if key_space <= DENSE_LIMIT {
            Index::Dense(vec![u32::MAX; key_space])
        } else {
            Index::Sparse(HashMap::new())
        };
        Acc {
            index,
            entries: Vec::new(),
        }
    }

    fn slot(&mut self, key: usize) -> &mut TermSum {
        let pos = match &mut self.index {
            Index::Dense(v) => {
                if v[key] == u32::MAX {
                    v[key] = self.entries.len() as u32;
                    self.entries.push((key, TermSum::new()));
                }
                v[key] as usize
            }
            Index::Sparse(map) => {
                let next = self.entries.len() as u32;
                let pos = *map.entry(key).or_insert(next);
                if pos == next {
                    self.entries.push((key, TermSum::new()));
                }
                pos as usize
            }
        };
        &mut self.entries[pos].1
    }

    pub fn add(&mut self, key: usize, terms: Expanded) {
        let slot = self.slot(key);
        for t in terms {
            slot.add(t);
        }
    }

    pub fn sub(&mut self, key: usize, terms: Expanded) {
        let slot = self.slot(key);
        for t in terms {
            slot.sub(t);
        }
    }

    pub fn add_term(&mut self, key: usize, term: Term) {
        self.slot(key).add(term);
    }

    /// Smallest key whose sum does not vanish.
    pub fn first_nonzero(&self, field: &CycloField) -> Option<usize> {
        self.entries
            .iter()
            .filter(|(_, s)| !s.is_zero(field))
            .map(|(k, _)| *k)
            .min()
    }

    pub fn is_zero(&self, field: &CycloField) -> bool {
        self.entries.iter().all(|(_, s)| s.is_zero(field))
    }

    pub fn clear(&mut self) {
        match &mut self.index {
            Index::Dense(v) => {
                for (k, _) in &self.entries {
                    v[*k] = u32::MAX;
                }
            }
            Index::Sparse(map) => map.clear(),
        }
        self.entries.clear();
    }
}
