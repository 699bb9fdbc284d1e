//! Finite abelian groups Z_{n_1} × ... × Z_{n_k}, written additively.
//!
//! Elements are enumerated in lexicographic order of their residue vectors
//! (last coordinate fastest). That order fixes the dense indices used by every
//! cochain and structure-constant table in the crate.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// `x'`: the residue of `x` modulo `n`, always in `[0, n-1]`.
pub fn residue(x: i64, n: u32) -> u32 {
    x.rem_euclid(n as i64) as u32
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    orders: Arc<[u32]>,
}

impl GroupSpec {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::Parameter("group needs at least one cyclic factor".into()));
        }
        if let Some(&bad) = orders.iter().find(|&&n| n < 2) {
            return Err(Error::Parameter(format!("cyclic factor order {bad} < 2")));
        }
        orders
            .iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n as usize))
            .ok_or_else(|| Error::Parameter("group order overflows".into()))?;
        Ok(GroupSpec { orders: orders.into() })
    }

    /// Z_n^m
    pub fn cyclic_power(n: u32, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Parameter("m must be ≥ 1".into()));
        }
        Self::new(vec![n; m])
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// |G|
    pub fn order(&self) -> usize {
        self.orders.iter().map(|&n| n as usize).product()
    }

    pub fn check_cap(&self, cap: usize) -> Result<()> {
        let order = self.order();
        if order > cap {
            return Err(Error::ResourceLimit { order, cap });
        }
        Ok(())
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            spec: self.clone(),
            residues: SmallVec::from_elem(0, self.rank()),
        }
    }

    pub fn element(&self, residues: &[u32]) -> Result<GroupElement> {
        if residues.len() != self.rank() {
            return Err(Error::Context(format!(
                "residue vector of length {} for a rank-{} group",
                residues.len(),
                self.rank()
            )));
        }
        for (&r, &n) in residues.iter().zip(self.orders.iter()) {
            if r >= n {
                return Err(Error::Parameter(format!("residue {r} not below {n}")));
            }
        }
        Ok(GroupElement {
            spec: self.clone(),
            residues: SmallVec::from_slice(residues),
        })
    }

    /// All elements in lexicographic order of residue vectors.
    pub fn enumerate(&self) -> Vec<GroupElement> {
        (0..self.order()).map(|i| self.element_at(i)).collect()
    }

    pub fn element_at(&self, index: usize) -> GroupElement {
        GroupElement {
            spec: self.clone(),
            residues: self.residues_at(index),
        }
    }

    pub fn residues_at(&self, mut index: usize) -> SmallVec<[u32; 4]> {
        let mut out: SmallVec<[u32; 4]> = SmallVec::from_elem(0, self.rank());
        for (slot, &n) in out.iter_mut().zip(self.orders.iter()).rev() {
            *slot = (index % n as usize) as u32;
            index /= n as usize;
        }
        out
    }

    pub fn index_of_residues(&self, residues: &[u32]) -> usize {
        residues
            .iter()
            .zip(self.orders.iter())
            .fold(0, |acc, (&r, &n)| acc * n as usize + r as usize)
    }

    pub fn index_of(&self, g: &GroupElement) -> Result<usize> {
        self.check(&g.spec)?;
        Ok(self.index_of_residues(&g.residues))
    }

    pub fn add_index(&self, a: usize, b: usize) -> usize {
        let ra = self.residues_at(a);
        let rb = self.residues_at(b);
        let sum: SmallVec<[u32; 4]> = ra
            .iter()
            .zip(&rb)
            .zip(self.orders.iter())
            .map(|((&x, &y), &n)| (x + y) % n)
            .collect();
        self.index_of_residues(&sum)
    }

    pub fn neg_index(&self, a: usize) -> usize {
        let r: SmallVec<[u32; 4]> = self
            .residues_at(a)
            .iter()
            .zip(self.orders.iter())
            .map(|(&x, &n)| (n - x) % n)
            .collect();
        self.index_of_residues(&r)
    }

    /// Dense addition and negation tables, for the exhaustive checkers.
    pub fn cayley(&self) -> Cayley {
        let size = self.order();
        let mut add = Vec::with_capacity(size * size);
        for a in 0..size {
            for b in 0..size {
                add.push(self.add_index(a, b) as u32);
            }
        }
        let neg = (0..size).map(|a| self.neg_index(a) as u32).collect();
        Cayley { size, add, neg }
    }

    pub fn check(&self, other: &GroupSpec) -> Result<()> {
        if self != other {
            return Err(Error::Context(format!("groups {self} and {other}")));
        }
        Ok(())
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", parts.join("×"))
    }
}

impl fmt::Debug for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Index-level group arithmetic.
#[derive(Clone, Debug)]
pub struct Cayley {
    size: usize,
    add: Vec<u32>,
    neg: Vec<u32>,
}

impl Cayley {
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    spec: GroupSpec,
    residues: SmallVec<[u32; 4]>,
}

impl GroupElement {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn residues(&self) -> &[u32] {
        &self.residues
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }

    pub fn index(&self) -> usize {
        self.spec.index_of_residues(&self.residues)
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        self.spec.check(&other.spec)?;
        let residues = self
            .residues
            .iter()
            .zip(&other.residues)
            .zip(self.spec.orders.iter())
            .map(|((&a, &b), &n)| (a + b) % n)
            .collect();
        Ok(GroupElement {
            spec: self.spec.clone(),
            residues,
        })
    }

    pub fn neg(&self) -> GroupElement {
        let residues = self
            .residues
            .iter()
            .zip(self.spec.orders.iter())
            .map(|(&a, &n)| (n - a) % n)
            .collect();
        GroupElement {
            spec: self.spec.clone(),
            residues,
        }
    }

    pub fn sub(&self, other: &GroupElement) -> Result<GroupElement> {
        self.add(&other.neg())
    }

    /// `[(g_i + h_i) / n_i]` for the zero-based coordinate `i`: 1 when the
    /// residues overflow, else 0.
    pub fn carry(&self, other: &GroupElement, i: usize) -> Result<u32> {
        self.spec.check(&other.spec)?;
        let n = *self.spec.orders.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: self.spec.rank(),
        })?;
        Ok((self.residues[i] + other.residues[i]) / n)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.residues.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `{"orders":[...], "residues":[...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupElementJson {
    pub orders: Vec<u32>,
    pub residues: Vec<u32>,
}

impl From<&GroupElement> for GroupElementJson {
    fn from(g: &GroupElement) -> Self {
        GroupElementJson {
            orders: g.spec.orders.to_vec(),
            residues: g.residues.to_vec(),
        }
    }
}

impl TryFrom<&GroupElementJson> for GroupElement {
    type Error = Error;
    fn try_from(j: &GroupElementJson) -> Result<Self> {
        GroupSpec::new(j.orders.clone())?.element(&j.residues)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(orders: &[u32]) -> GroupSpec {
        GroupSpec::new(orders.to_vec()).unwrap()
    }

    #[test]
    fn modular_addition() {
        let g = z(&[3]);
        let two = g.element(&[2]).unwrap();
        assert_eq!(two.add(&two).unwrap().residues(), &[1]);
        let k = z(&[2, 2]);
        let a = k.element(&[1, 0]).unwrap();
        let b = k.element(&[0, 1]).unwrap();
        assert_eq!(a.add(&b).unwrap().residues(), &[1, 1]);
        assert_eq!(a.add(&k.zero()).unwrap(), a);
    }

    #[test]
    fn negation_and_enumeration() {
        let g = z(&[4]);
        assert_eq!(g.element(&[3]).unwrap().neg().residues(), &[1]);
        let k = z(&[2, 2]);
        let all: Vec<Vec<u32>> = k.enumerate().iter().map(|e| e.residues().to_vec()).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(z(&[7]).enumerate().len(), 7);
    }

    #[test]
    fn carries() {
        let g = z(&[3]);
        assert_eq!(g.element(&[2]).unwrap().carry(&g.element(&[2]).unwrap(), 0).unwrap(), 1);
        let h = z(&[5]);
        assert_eq!(h.element(&[1]).unwrap().carry(&h.element(&[2]).unwrap(), 0).unwrap(), 0);
        let k = z(&[3, 3]);
        let a = k.element(&[2, 1]).unwrap();
        for i in 0..2 {
            assert_eq!(a.carry(&k.zero(), i).unwrap(), 0);
        }
        assert!(matches!(a.carry(&a, 2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn spec_validation() {
        assert!(GroupSpec::new(vec![]).is_err());
        assert!(GroupSpec::new(vec![3, 1]).is_err());
        assert!(z(&[3]).element(&[3]).is_err());
        let a = z(&[3]).zero();
        let b = z(&[4]).zero();
        assert!(matches!(a.add(&b), Err(Error::Context(_))));
    }

    #[test]
    fn residue_convention() {
        assert_eq!(residue(-1, 5), 4);
        assert_eq!(residue(7, 5), 2);
    }

    #[test]
    fn json_form() {
        let g = z(&[2, 3]).element(&[1, 2]).unwrap();
        let text = serde_json::to_string(&GroupElementJson::from(&g)).unwrap();
        assert_eq!(text, r#"{"orders":[2,3],"residues":[1,2]}"#);
    }
}
