//! Finite-dimensional algebras in Vec_G^Φ given by structure constants.
//!
//! An algebra here is a G-graded basis, a product table mapping each ordered
//! pair of basis elements to a linear combination, a unit, and the ambient
//! associator Φ (plus an optional braiding). Associativity is only ever
//! required up to Φ: `(ab)c = Φ(|a|,|b|,|c|) a(bc)`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::accum::{expand_lin, Acc, XLin};
use crate::cochain::{build_f_gca, gca_braiding_direct, Braiding, Cochain2, Cochain3, GcaParams};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::scalar::{product_of, Expanded, Scalar, ScalarContext, ScalarJson};

/// Basis labels with their degrees (dense group indices).
#[derive(Clone, Debug, PartialEq)]
pub struct GradedBasis {
    spec: GroupSpec,
    labels: Vec<String>,
    degrees: Vec<usize>,
    lookup: HashMap<String, usize>,
}

impl GradedBasis {
    pub fn new(spec: &GroupSpec, entries: Vec<(String, usize)>) -> Result<Self> {
        let order = spec.order();
        let mut lookup = HashMap::with_capacity(entries.len());
        let mut labels = Vec::with_capacity(entries.len());
        let mut degrees = Vec::with_capacity(entries.len());
        for (i, (label, deg)) in entries.into_iter().enumerate() {
            if deg >= order {
                return Err(Error::IndexOutOfRange { index: deg, len: order });
            }
            if lookup.insert(label.clone(), i).is_some() {
                return Err(Error::Structural(format!("duplicate basis label `{label}`")));
            }
            labels.push(label);
            degrees.push(deg);
        }
        if labels.is_empty() {
            return Err(Error::Structural("empty basis".into()));
        }
        Ok(GradedBasis {
            spec: spec.clone(),
            labels,
            degrees,
            lookup,
        })
    }

    pub fn from_elements(spec: &GroupSpec, entries: Vec<(String, GroupElement)>) -> Result<Self> {
        let entries = entries
            .into_iter()
            .map(|(l, g)| Ok((l, spec.index_of(&g)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(spec, entries)
    }

    /// `u_g` for every g, in element order.
    pub fn group_basis(spec: &GroupSpec) -> Self {
        let entries = spec
            .enumerate()
            .into_iter()
            .enumerate()
            .map(|(i, g)| (format!("u_{g}"), i))
            .collect();
        Self::new(spec, entries).expect("group labels are distinct")
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Degree of basis element `i` as a group index.
    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn degree_element(&self, i: usize) -> GroupElement {
        self.spec.element_at(self.degrees[i])
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.lookup
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.dim() {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.dim(),
            });
        }
        Ok(())
    }

    /// Same labels, degrees re-expressed in another group.
    fn regraded(&self, spec: &GroupSpec, degrees: Vec<usize>) -> Result<Self> {
        Self::new(spec, self.labels.iter().cloned().zip(degrees).collect())
    }
}

/// Finite linear combination of basis elements, sorted by basis index with
/// no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinComb {
    terms: Vec<(usize, Scalar)>,
}

impl LinComb {
    pub fn zero() -> Self {
        LinComb::default()
    }

    pub fn basis(ctx: &ScalarContext, i: usize) -> Self {
        Self::term(i, Scalar::one(ctx))
    }

    pub fn term(i: usize, s: Scalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        LinComb { terms: vec![(i, s)] }
    }

    /// Collects possibly repeated terms into canonical form.
    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Scalar)>) -> Result<Self> {
        let mut map: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, s) in terms {
            match map.get_mut(&i) {
                Some(acc) => *acc = acc.try_add(&s)?,
                None => {
                    map.insert(i, s);
                }
            }
        }
        Ok(LinComb {
            terms: map.into_iter().filter(|(_, s)| !s.is_zero()).collect(),
        })
    }

    pub fn terms(&self) -> &[(usize, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn single(&self) -> Option<(usize, &Scalar)> {
        match self.terms.as_slice() {
            [(i, s)] => Some((*i, s)),
            _ => None,
        }
    }

    pub fn scale(&self, s: &Scalar) -> Result<Self> {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(i, c)| Ok((*i, c.try_mul(s)?)))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn add(&self, other: &LinComb) -> Result<Self> {
        Self::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    /// Re-indexes every term through `map`.
    pub fn relabel(&self, map: &[usize]) -> Result<Self> {
        Self::from_terms(self.terms.iter().map(|(i, s)| (map[*i], s.clone())))
    }

    pub(crate) fn expand(&self) -> XLin {
        expand_lin(&self.terms)
    }
}

/// Where the algebra axioms first fail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraViolation {
    /// Φ-associativity fails on this basis triple.
    Associativity(usize, usize, usize),
    LeftUnit(usize),
    RightUnit(usize),
}

/// A G-graded quasialgebra.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiAlgebra {
    basis: GradedBasis,
    ctx: ScalarContext,
    product: Vec<LinComb>,
    unit: usize,
    phi: Cochain3,
    braiding: Option<Braiding>,
}

impl QuasiAlgebra {
    /// Validates totality, grading multiplicativity and the unit laws.
    pub fn new(
        basis: GradedBasis,
        ctx: &ScalarContext,
        product: Vec<LinComb>,
        unit: usize,
        phi: Cochain3,
        braiding: Option<Braiding>,
    ) -> Result<Self> {
        let dim = basis.dim();
        if product.len() != dim * dim {
            return Err(Error::Structural(format!(
                "product table has {} entries, expected {}",
                product.len(),
                dim * dim
            )));
        }
        basis.check_index(unit)?;
        basis.spec.check(phi.spec())?;
        ctx.check(phi.ctx())?;
        if let Some(r) = &braiding {
            basis.spec.check(r.spec())?;
            ctx.check(r.ctx())?;
        }
        if basis.degree(unit) != 0 {
            return Err(Error::Structural(format!(
                "unit `{}` is not of degree 0",
                basis.label(unit)
            )));
        }
        let add = |a: usize, b: usize| basis.spec.add_index(a, b);
        for a in 0..dim {
            for b in 0..dim {
                let want = add(basis.degree(a), basis.degree(b));
                for (t, s) in product[a * dim + b].terms() {
                    basis.check_index(*t)?;
                    ctx.check(s.ctx())?;
                    if basis.degree(*t) != want {
                        return Err(Error::Structural(format!(
                            "{}·{} has a term {} outside degree {}",
                            basis.label(a),
                            basis.label(b),
                            basis.label(*t),
                            basis.spec.element_at(want)
                        )));
                    }
                }
            }
        }
        let alg = QuasiAlgebra {
            basis,
            ctx: ctx.clone(),
            product,
            unit,
            phi,
            braiding,
        };
        if let Some(v) = alg.unit_witness() {
            return Err(Error::Structural(format!("unit law fails: {}", alg.describe(&v))));
        }
        Ok(alg)
    }

    /// k_F[G]: u_g ⋆ u_h = F(g,h) u_{g+h}, living in (Vec_G^{∂F}, R_F).
    pub fn twisted_group_algebra(f: &Cochain2) -> Self {
        let spec = f.spec();
        let cay = spec.cayley();
        let size = cay.size();
        let mut product = Vec::with_capacity(size * size);
        for g in 0..size {
            for h in 0..size {
                product.push(LinComb::term(cay.add(g, h), f.value(g, h).clone()));
            }
        }
        QuasiAlgebra {
            basis: GradedBasis::group_basis(spec),
            ctx: f.ctx().clone(),
            product,
            unit: 0,
            phi: f.coboundary(),
            braiding: Some(f.braiding()),
        }
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.basis.spec
    }

    pub fn ctx(&self) -> &ScalarContext {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn phi(&self) -> &Cochain3 {
        &self.phi
    }

    pub fn braiding(&self) -> Option<&Braiding> {
        self.braiding.as_ref()
    }

    pub fn products(&self) -> &[LinComb] {
        &self.product
    }

    /// Basis product `a · b`.
    pub fn product(&self, a: usize, b: usize) -> &LinComb {
        &self.product[a * self.dim() + b]
    }

    /// The same table in a different ambient category.
    pub fn with_phi(&self, phi: Cochain3) -> Result<Self> {
        self.spec().check(phi.spec())?;
        self.ctx.check(phi.ctx())?;
        Ok(QuasiAlgebra { phi, ..self.clone() })
    }

    pub fn with_braiding(&self, braiding: Option<Braiding>) -> Result<Self> {
        if let Some(r) = &braiding {
            self.spec().check(r.spec())?;
            self.ctx.check(r.ctx())?;
        }
        Ok(QuasiAlgebra {
            braiding,
            ..self.clone()
        })
    }

    /// Bilinear extension of the basis product.
    pub fn multiply(&self, x: &LinComb, y: &LinComb) -> Result<LinComb> {
        let mut out = Vec::new();
        for (a, s) in x.terms() {
            self.basis.check_index(*a)?;
            for (b, t) in y.terms() {
                self.basis.check_index(*b)?;
                let st = s.try_mul(t)?;
                for (c, u) in self.product(*a, *b).terms() {
                    out.push((*c, st.try_mul(u)?));
                }
            }
        }
        LinComb::from_terms(out)
    }

    /// Product of two basis elements given by label.
    pub fn multiply_labels(&self, a: &str, b: &str) -> Result<LinComb> {
        let a = self.basis.index_of(a)?;
        let b = self.basis.index_of(b)?;
        Ok(self.product(a, b).clone())
    }

    /// `Σ s_i · label_i`
    pub fn lincomb(&self, terms: &[(Scalar, &str)]) -> Result<LinComb> {
        LinComb::from_terms(
            terms
                .iter()
                .map(|(s, l)| Ok((self.basis.index_of(l)?, s.clone())))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub(crate) fn expanded_products(&self) -> Vec<XLin> {
        self.product.iter().map(LinComb::expand).collect()
    }

    fn unit_witness(&self) -> Option<AlgebraViolation> {
        for a in 0..self.dim() {
            let want = LinComb::basis(&self.ctx, a);
            if self.product(self.unit, a) != &want {
                return Some(AlgebraViolation::LeftUnit(a));
            }
            if self.product(a, self.unit) != &want {
                return Some(AlgebraViolation::RightUnit(a));
            }
        }
        None
    }

    /// First basis triple with `(ab)c ≠ Φ(|a|,|b|,|c|) a(bc)` for the
    /// algebra's own Φ.
    pub fn associativity_witness(&self) -> Option<AlgebraViolation> {
        self.associativity_witness_with(&self.phi).expect("own Φ matches")
    }

    pub fn associativity_witness_with(&self, phi: &Cochain3) -> Result<Option<AlgebraViolation>> {
        self.spec().check(phi.spec())?;
        self.ctx.check(phi.ctx())?;
        let dim = self.dim();
        let n = self.spec().order();
        let arith = self.ctx.root_arith();
        let field = self.ctx.field();
        let p = self.expanded_products();
        let ph: Vec<Expanded> = phi.table().iter().map(Scalar::expand).collect();
        let trivial = phi.is_trivial();
        let deg = &self.basis.degrees;
        let mut acc = Acc::new(dim);
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    acc.clear();
                    for (t, s) in &p[a * dim + b] {
                        for (u, s2) in &p[t * dim + c] {
                            acc.add(*u, product_of(&arith, &[s, s2]));
                        }
                    }
                    let phv = &ph[(deg[a] * n + deg[b]) * n + deg[c]];
                    for (t, s) in &p[b * dim + c] {
                        for (u, s2) in &p[a * dim + t] {
                            let v = if trivial {
                                product_of(&arith, &[s, s2])
                            } else {
                                product_of(&arith, &[phv, s, s2])
                            };
                            acc.sub(*u, v);
                        }
                    }
                    if !acc.is_zero(field) {
                        return Ok(Some(AlgebraViolation::Associativity(a, b, c)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// `(ab)c = Φ(|a|,|b|,|c|) a(bc)` on every basis triple.
    pub fn check_phi_associativity(&self) -> bool {
        self.associativity_witness().is_none()
    }

    /// Algebra axioms against an externally supplied Φ: unit laws and
    /// Φ-associativity.
    pub fn algebra_witness(&self, phi: &Cochain3) -> Result<Option<AlgebraViolation>> {
        if let Some(v) = self.unit_witness() {
            return Ok(Some(v));
        }
        self.associativity_witness_with(phi)
    }

    /// First basis pair with `a·b ≠ R(|a|,|b|) b·a`.
    pub fn commutativity_witness(&self, r: &Braiding) -> Result<Option<(usize, usize)>> {
        self.spec().check(r.spec())?;
        self.ctx.check(r.ctx())?;
        let dim = self.dim();
        let arith = self.ctx.root_arith();
        let field = self.ctx.field();
        let p = self.expanded_products();
        let deg = &self.basis.degrees;
        let mut acc = Acc::new(dim);
        for a in 0..dim {
            for b in 0..dim {
                acc.clear();
                for (t, s) in &p[a * dim + b] {
                    acc.add(*t, s.clone());
                }
                let rv = r.value(deg[a], deg[b]).expand();
                for (t, s) in &p[b * dim + a] {
                    acc.sub(*t, product_of(&arith, &[&rv, s]));
                }
                if !acc.is_zero(field) {
                    return Ok(Some((a, b)));
                }
            }
        }
        Ok(None)
    }

    pub fn check_commutativity(&self, r: &Braiding) -> Result<bool> {
        Ok(self.commutativity_witness(r)?.is_none())
    }

    /// Labels of the elements involved in a violation.
    pub fn describe(&self, v: &AlgebraViolation) -> String {
        let l = |i: &usize| self.basis.label(*i).to_string();
        match v {
            AlgebraViolation::Associativity(a, b, c) => {
                format!("associativity at ({}, {}, {})", l(a), l(b), l(c))
            }
            AlgebraViolation::LeftUnit(a) => format!("1·{} ≠ {}", l(a), l(a)),
            AlgebraViolation::RightUnit(a) => format!("{}·1 ≠ {}", l(a), l(a)),
        }
    }

    /// Regrades by a degree map into another group. Only algebras with
    /// trivial Φ can be carried along; the braiding is dropped.
    pub fn regrade(
        &self,
        spec: &GroupSpec,
        degree_map: impl Fn(&GroupElement) -> Result<GroupElement>,
    ) -> Result<Self> {
        if !self.phi.is_trivial() {
            return Err(Error::Parameter("regrading needs a trivial associator".into()));
        }
        let degrees = (0..self.dim())
            .map(|i| spec.index_of(&degree_map(&self.basis.degree_element(i))?))
            .collect::<Result<Vec<_>>>()?;
        let basis = self.basis.regraded(spec, degrees)?;
        QuasiAlgebra::new(
            basis,
            &self.ctx,
            self.product.clone(),
            self.unit,
            Cochain3::trivial(spec, &self.ctx),
            None,
        )
    }

    /// Pads degrees with zeros: `(g_1..g_k) ↦ (0^offset, g_1..g_k, 0..0)`.
    pub fn embed_grading(&self, spec: &GroupSpec, offset: usize) -> Result<Self> {
        let own = self.spec().orders();
        let target = spec.orders();
        if offset + own.len() > target.len() || target[offset..offset + own.len()] != *own {
            return Err(Error::Parameter(format!(
                "{} does not embed into {spec} at offset {offset}",
                self.spec()
            )));
        }
        self.regrade(spec, |g| {
            let mut r = vec![0u32; target.len()];
            r[offset..offset + own.len()].copy_from_slice(g.residues());
            spec.element(&r)
        })
    }

    /// For algebras with exactly one basis element per degree, the basis
    /// index sitting in each degree.
    pub fn index_by_degree(&self) -> Result<Vec<usize>> {
        let n = self.spec().order();
        if self.dim() != n {
            return Err(Error::Structural(format!(
                "{} basis elements over a group of order {n}",
                self.dim()
            )));
        }
        let mut out = vec![usize::MAX; n];
        for i in 0..self.dim() {
            let d = self.basis.degree(i);
            if out[d] != usize::MAX {
                return Err(Error::Structural(format!(
                    "two basis elements in degree {}",
                    self.spec().element_at(d)
                )));
            }
            out[d] = i;
        }
        Ok(out)
    }

    /// The degree-matching bijection from this basis onto `other`'s.
    pub fn bijection_by_degree(&self, other: &QuasiAlgebra) -> Result<Vec<usize>> {
        self.spec().check(other.spec())?;
        let theirs = other.index_by_degree()?;
        self.index_by_degree()?;
        Ok((0..self.dim()).map(|i| theirs[self.basis.degree(i)]).collect())
    }

    /// First basis pair whose product differs from `other`'s under the basis
    /// map `map` (strict equality of structure constants).
    pub fn table_mismatch(&self, other: &QuasiAlgebra, map: &[usize]) -> Result<Option<(usize, usize)>> {
        self.ctx.check(&other.ctx)?;
        let dim = self.dim();
        if other.dim() != dim || map.len() != dim {
            return Err(Error::Structural(format!(
                "dimensions {dim} and {} with a map of length {}",
                other.dim(),
                map.len()
            )));
        }
        let mut seen = vec![false; dim];
        for &j in map {
            if j >= dim || std::mem::replace(&mut seen[j], true) {
                return Err(Error::Structural("basis map is not a bijection".into()));
            }
        }
        for a in 0..dim {
            for b in 0..dim {
                if self.product(a, b).relabel(map)? != *other.product(map[a], map[b]) {
                    return Ok(Some((a, b)));
                }
            }
        }
        Ok(None)
    }
}

/// A ⊗̂ B in (Vec_G^Φ, R). The basis pairs `(a, a')` are indexed
/// `a · dim(B) + a'` and labelled `a⊗a'`.
pub fn braided_tensor_algebra(
    a1: &QuasiAlgebra,
    a2: &QuasiAlgebra,
    phi: &Cochain3,
    r: &Braiding,
) -> Result<QuasiAlgebra> {
    let spec = a1.spec();
    spec.check(a2.spec())?;
    spec.check(phi.spec())?;
    spec.check(r.spec())?;
    let ctx = a1.ctx();
    ctx.check(a2.ctx())?;
    ctx.check(phi.ctx())?;
    ctx.check(r.ctx())?;
    let (d1, d2) = (a1.dim(), a2.dim());
    let cay = spec.cayley();
    let entries = (0..d1)
        .flat_map(|i| (0..d2).map(move |j| (i, j)))
        .map(|(i, j)| {
            (
                format!("{}⊗{}", a1.basis.label(i), a2.basis.label(j)),
                cay.add(a1.basis.degree(i), a2.basis.degree(j)),
            )
        })
        .collect();
    let basis = GradedBasis::new(spec, entries)?;
    let phi_inv = phi.invert();
    let mut coef_cache: HashMap<[usize; 4], Scalar> = HashMap::new();
    let mut product = Vec::with_capacity(d1 * d1 * d2 * d2);
    for a in 0..d1 {
        for a_ in 0..d2 {
            for b in 0..d1 {
                for b_ in 0..d2 {
                    let (x, x_, y, y_) = (
                        a1.basis.degree(a),
                        a2.basis.degree(a_),
                        a1.basis.degree(b),
                        a2.basis.degree(b_),
                    );
                    let coef = match coef_cache.get(&[x, x_, y, y_]) {
                        Some(c) => c.clone(),
                        None => {
                            let c = phi
                                .value(x, x_, y)
                                .try_mul(phi.value(cay.add(x, y), x_, y_))?
                                .try_mul(phi_inv.value(cay.add(x, x_), y, y_))?
                                .try_mul(phi_inv.value(x, y, x_))?
                                .try_mul(r.value(x_, y))?;
                            coef_cache.insert([x, x_, y, y_], c.clone());
                            c
                        }
                    };
                    let mut terms = Vec::new();
                    for (t, s) in a1.product(a, b).terms() {
                        for (t_, s_) in a2.product(a_, b_).terms() {
                            terms.push((t * d2 + t_, coef.try_mul(s)?.try_mul(s_)?));
                        }
                    }
                    product.push(LinComb::from_terms(terms)?);
                }
            }
        }
    }
    QuasiAlgebra::new(
        basis,
        ctx,
        product,
        a1.unit * d2 + a2.unit,
        phi.clone(),
        Some(r.clone()),
    )
}

/// `e1^2*e3`-style label of the ordered monomial e_1^{g_1}⋯e_m^{g_m}; `1`
/// for the empty monomial.
pub fn gca_label(residues: &[u32]) -> String {
    let parts: Vec<String> = residues
        .iter()
        .enumerate()
        .filter(|(_, &g)| g > 0)
        .map(|(i, &g)| {
            if g == 1 {
                format!("e{}", i + 1)
            } else {
                format!("e{}^{g}", i + 1)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Normal form of a generator word in C^{(n)}: `ω^omega · Π q_i^{q_i} ·
/// e_1^{r_1}⋯e_m^{r_m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub omega: i64,
    pub q: Vec<u32>,
    pub residues: Vec<u32>,
}

/// Rewrites a word of zero-based generator indices: adjacent `e_i e_j` with
/// i > j become `ω e_j e_i` until sorted, then each e_i^n becomes q_i.
pub fn gca_normal_form(n: u32, m: usize, word: &[usize]) -> Result<NormalForm> {
    if let Some(&bad) = word.iter().find(|&&i| i >= m) {
        return Err(Error::IndexOutOfRange { index: bad, len: m });
    }
    let mut w = word.to_vec();
    let mut omega = 0i64;
    loop {
        let mut swapped = false;
        for p in 1..w.len() {
            if w[p - 1] > w[p] {
                w.swap(p - 1, p);
                omega += 1;
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    let mut counts = vec![0u32; m];
    for &i in &w {
        counts[i] += 1;
    }
    Ok(NormalForm {
        omega,
        q: counts.iter().map(|c| c / n).collect(),
        residues: counts.iter().map(|c| c % n).collect(),
    })
}

fn gca_word(residues: &[u32]) -> Vec<usize> {
    residues
        .iter()
        .enumerate()
        .flat_map(|(i, &g)| std::iter::repeat_n(i, g as usize))
        .collect()
}

/// C^{(n)}(q_1..q_m) on the ordered monomial basis, products by rewriting.
/// It lives in (Vec_{Z_n^m}, R_GCA) with trivial associator.
pub fn gca_presentation(params: &GcaParams) -> Result<QuasiAlgebra> {
    let spec = params.group()?;
    let ctx = params.ctx();
    let (n, m) = (params.n(), params.m());
    let elems = spec.enumerate();
    let basis = GradedBasis::new(
        &spec,
        elems
            .iter()
            .enumerate()
            .map(|(i, g)| (gca_label(g.residues()), i))
            .collect(),
    )?;
    let words: Vec<Vec<usize>> = elems.iter().map(|g| gca_word(g.residues())).collect();
    let mut cache: HashMap<(i64, Vec<u32>), Scalar> = HashMap::new();
    let mut product = Vec::with_capacity(elems.len() * elems.len());
    for wa in &words {
        for wb in &words {
            let word: Vec<usize> = wa.iter().chain(wb).copied().collect();
            let nf = gca_normal_form(n, m, &word)?;
            let key = (nf.omega.rem_euclid(n as i64), nf.q.clone());
            let s = match cache.get(&key) {
                Some(s) => s.clone(),
                None => {
                    let mut s = Scalar::omega_pow(ctx, key.0);
                    for (qi, &e) in params.q().iter().zip(&nf.q) {
                        s = s.try_mul(&qi.pow(e as i64)?)?;
                    }
                    cache.insert(key, s.clone());
                    s
                }
            };
            product.push(LinComb::term(spec.index_of_residues(&nf.residues), s));
        }
    }
    QuasiAlgebra::new(
        basis,
        ctx,
        product,
        0,
        Cochain3::trivial(&spec, ctx),
        Some(gca_braiding_direct(params)?),
    )
}

/// Which morphism law fails first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismViolation {
    Unit,
    Degree(usize),
    Product(usize, usize),
}

/// A linear map between algebras given on basis elements.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    source: QuasiAlgebra,
    target: QuasiAlgebra,
    image: Vec<LinComb>,
}

impl AlgebraMorphism {
    pub fn new(source: QuasiAlgebra, target: QuasiAlgebra, image: Vec<LinComb>) -> Result<Self> {
        source.ctx.check(&target.ctx)?;
        source.spec().check(target.spec())?;
        if image.len() != source.dim() {
            return Err(Error::Structural(format!(
                "{} images for {} basis elements",
                image.len(),
                source.dim()
            )));
        }
        for (t, s) in image.iter().flat_map(LinComb::terms) {
            target.basis.check_index(*t)?;
            source.ctx.check(s.ctx())?;
        }
        Ok(AlgebraMorphism { source, target, image })
    }

    /// Extends generator images multiplicatively. The source must have one
    /// basis element per degree of Z_{n_1}×…; for the element of degree g,
    /// `φ(u_g) = σ_g^{-1} · φ(u_{e_1})^{g_1} ⋯ φ(u_{e_k})^{g_k}`, where
    /// σ_g u_g is the same left-bracketed product taken in the source.
    pub fn from_generator_images(source: QuasiAlgebra, target: QuasiAlgebra, images: Vec<LinComb>) -> Result<Self> {
        let spec = source.spec().clone();
        if images.len() != spec.rank() {
            return Err(Error::Parameter(format!(
                "{} generator images for rank {}",
                images.len(),
                spec.rank()
            )));
        }
        let by_degree = source.index_by_degree()?;
        let ctx = source.ctx.clone();
        let gens: Vec<usize> = (0..spec.rank())
            .map(|i| {
                let mut r = vec![0u32; spec.rank()];
                r[i] = 1;
                by_degree[spec.index_of_residues(&r)]
            })
            .collect();
        let mut image = vec![LinComb::zero(); source.dim()];
        for (d, &b) in by_degree.iter().enumerate() {
            let residues = spec.residues_at(d);
            let mut src = LinComb::basis(&ctx, source.unit);
            let mut tgt = LinComb::basis(&ctx, target.unit);
            for (i, &g) in residues.iter().enumerate() {
                for _ in 0..g {
                    src = source.multiply(&src, &LinComb::basis(&ctx, gens[i]))?;
                    tgt = target.multiply(&tgt, &images[i])?;
                }
            }
            let sigma = match src.single() {
                Some((idx, s)) if idx == b => s.try_invert()?,
                _ => {
                    return Err(Error::Structural(format!(
                        "generator product for {} is not a multiple of a basis element",
                        source.basis.label(b)
                    )))
                }
            };
            image[b] = tgt.scale(&sigma)?;
        }
        Self::new(source, target, image)
    }

    pub fn source(&self) -> &QuasiAlgebra {
        &self.source
    }

    pub fn target(&self) -> &QuasiAlgebra {
        &self.target
    }

    pub fn image(&self) -> &[LinComb] {
        &self.image
    }

    /// Unit preservation, degree preservation, then φ(x⋆y) = φ(x)φ(y) on all
    /// basis pairs.
    pub fn witness(&self) -> Option<MorphismViolation> {
        let (src, tgt) = (&self.source, &self.target);
        if self.image[src.unit] != LinComb::basis(&src.ctx, tgt.unit) {
            return Some(MorphismViolation::Unit);
        }
        for (i, img) in self.image.iter().enumerate() {
            if img
                .terms()
                .iter()
                .any(|(t, _)| tgt.basis.degree(*t) != src.basis.degree(i))
            {
                return Some(MorphismViolation::Degree(i));
            }
        }
        let dim = src.dim();
        let td = tgt.dim();
        let arith = src.ctx.root_arith();
        let field = src.ctx.field();
        let sp = src.expanded_products();
        let tp = tgt.expanded_products();
        let img: Vec<XLin> = self.image.iter().map(LinComb::expand).collect();
        let mut acc = Acc::new(td);
        for x in 0..dim {
            for y in 0..dim {
                acc.clear();
                for (t, s) in &sp[x * dim + y] {
                    for (u, c) in &img[*t] {
                        acc.add(*u, product_of(&arith, &[s, c]));
                    }
                }
                for (a, c1) in &img[x] {
                    for (b, c2) in &img[y] {
                        for (u, s) in &tp[a * td + b] {
                            acc.sub(*u, product_of(&arith, &[c1, c2, s]));
                        }
                    }
                }
                if !acc.is_zero(field) {
                    return Some(MorphismViolation::Product(x, y));
                }
            }
        }
        None
    }

    pub fn check_morphism(&self) -> bool {
        self.witness().is_none()
    }

    /// Bijective on basis labels with single-term images: `u ↦ c_u · v`.
    pub(crate) fn monomial_bijection(&self) -> Result<Vec<(usize, Scalar)>> {
        let mut seen = vec![false; self.target.dim()];
        if self.target.dim() != self.source.dim() {
            return Err(Error::Structural("morphism is not a basis bijection".into()));
        }
        self.image
            .iter()
            .map(|img| match img.single() {
                Some((t, c)) if !std::mem::replace(&mut seen[t], true) => Ok((t, c.clone())),
                _ => Err(Error::Structural("morphism is not a monomial basis bijection".into())),
            })
            .collect()
    }
}

/// ψ: k_{F_GCA}[Z_n^m] → C^{(n)}(q), u_g ↦ e_1^{g_1}⋯e_m^{g_m}.
pub fn psi_isomorphism(params: &GcaParams) -> Result<AlgebraMorphism> {
    let source = QuasiAlgebra::twisted_group_algebra(&build_f_gca(params)?);
    let target = gca_presentation(params)?;
    let ctx = params.ctx().clone();
    let image = (0..source.dim()).map(|i| LinComb::basis(&ctx, i)).collect();
    AlgebraMorphism::new(source, target, image)
}

/// Cl_{0,m} as k_{F_Cl}[Z_2^m] mapped onto C^{(2)}(−1,…,−1) by the
/// generator reversal u_{e_i} ↦ e_{m+1−i}. The target is regraded through
/// the matching coordinate reversal of Z_2^m so the map preserves degrees.
pub fn clifford_reversal(m: usize) -> Result<AlgebraMorphism> {
    let source = QuasiAlgebra::twisted_group_algebra(&crate::cochain::build_f_clifford(m)?);
    let ctx = source.ctx().clone();
    let spec = source.spec().clone();
    let params = GcaParams::explicit(2, vec![Scalar::from_integer(&ctx, -1); m])?;
    let target = gca_presentation(&params)?.regrade(&spec, |g| {
        let r: Vec<u32> = g.residues().iter().rev().copied().collect();
        spec.element(&r)
    })?;
    let images = (0..m)
        .map(|i| Ok(LinComb::basis(&ctx, target.basis().index_of(&format!("e{}", m - i))?)))
        .collect::<Result<Vec<_>>>()?;
    AlgebraMorphism::from_generator_images(source, target, images)
}

/// `{"basis":[{"label","degree"}], "unit", "products":[{"left","right","terms":[{"scalar","label"}]}]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplicationTableJson {
    pub basis: Vec<BasisEntryJson>,
    pub unit: String,
    pub products: Vec<ProductEntryJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisEntryJson {
    pub label: String,
    pub degree: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductEntryJson {
    pub left: String,
    pub right: String,
    pub terms: Vec<LabelTermJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelTermJson {
    pub scalar: ScalarJson,
    pub label: String,
}

pub(crate) fn basis_json(basis: &GradedBasis) -> Vec<BasisEntryJson> {
    (0..basis.dim())
        .map(|i| BasisEntryJson {
            label: basis.label(i).to_string(),
            degree: basis.degree_element(i).residues().to_vec(),
        })
        .collect()
}

pub(crate) fn lincomb_json(basis: &GradedBasis, lc: &LinComb) -> Vec<LabelTermJson> {
    lc.terms()
        .iter()
        .map(|(i, s)| LabelTermJson {
            scalar: ScalarJson::from(s),
            label: basis.label(*i).to_string(),
        })
        .collect()
}

pub(crate) fn lincomb_from_json(basis: &GradedBasis, ctx: &ScalarContext, terms: &[LabelTermJson]) -> Result<LinComb> {
    LinComb::from_terms(
        terms
            .iter()
            .map(|t| {
                let s = Scalar::try_from(&t.scalar)?;
                ctx.check(s.ctx())?;
                Ok((basis.index_of(&t.label)?, s))
            })
            .collect::<Result<Vec<_>>>()?,
    )
}

pub(crate) fn basis_from_json(spec: &GroupSpec, entries: &[BasisEntryJson]) -> Result<GradedBasis> {
    GradedBasis::new(
        spec,
        entries
            .iter()
            .map(|b| Ok((b.label.clone(), spec.element(&b.degree)?.index())))
            .collect::<Result<Vec<_>>>()?,
    )
}

impl QuasiAlgebra {
    pub fn to_json(&self) -> MultiplicationTableJson {
        let dim = self.dim();
        MultiplicationTableJson {
            basis: basis_json(&self.basis),
            unit: self.basis.label(self.unit).to_string(),
            products: (0..dim * dim)
                .map(|k| ProductEntryJson {
                    left: self.basis.label(k / dim).to_string(),
                    right: self.basis.label(k % dim).to_string(),
                    terms: lincomb_json(&self.basis, &self.product[k]),
                })
                .collect(),
        }
    }

    /// Reads a table graded over `spec` with scalars in `ctx`; the ambient
    /// associator is taken trivial and no braiding is attached.
    pub fn from_json(j: &MultiplicationTableJson, spec: &GroupSpec, ctx: &ScalarContext) -> Result<Self> {
        let basis = basis_from_json(spec, &j.basis)?;
        let dim = basis.dim();
        let mut slots: Vec<Option<LinComb>> = vec![None; dim * dim];
        for p in &j.products {
            let k = basis.index_of(&p.left)? * dim + basis.index_of(&p.right)?;
            if slots[k].replace(lincomb_from_json(&basis, ctx, &p.terms)?).is_some() {
                return Err(Error::Json(format!("duplicate product {}·{}", p.left, p.right)));
            }
        }
        let product = slots
            .into_iter()
            .enumerate()
            .map(|(k, s)| {
                s.ok_or_else(|| {
                    Error::Structural(format!(
                        "missing product {}·{}",
                        basis.label(k / dim),
                        basis.label(k % dim)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let unit = basis.index_of(&j.unit)?;
        QuasiAlgebra::new(basis, ctx, product, unit, Cochain3::trivial(spec, ctx), None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::{build_f_clifford, build_f_octonion};

    fn sym(n: u32, m: usize) -> GcaParams {
        GcaParams::symbolic(n, m).unwrap()
    }

    #[test]
    fn group_algebra_products() {
        let spec = GroupSpec::new(vec![4]).unwrap();
        let ctx = ScalarContext::rational();
        let a = QuasiAlgebra::twisted_group_algebra(&Cochain2::trivial(&spec, &ctx));
        let p = a.multiply_labels("u_(3)", "u_(2)").unwrap();
        assert_eq!(p, a.lincomb(&[(Scalar::one(&ctx), "u_(1)")]).unwrap());
        assert!(a.check_phi_associativity());
    }

    #[test]
    fn f_gca_square_of_generator() {
        let p = sym(2, 1);
        let a = QuasiAlgebra::twisted_group_algebra(&build_f_gca(&p).unwrap());
        let q1 = Scalar::q(p.ctx(), 0).unwrap();
        assert_eq!(
            a.multiply_labels("u_(1)", "u_(1)").unwrap(),
            a.lincomb(&[(q1, "u_(0)")]).unwrap()
        );
    }

    #[test]
    fn clifford_anticommutation() {
        let a = QuasiAlgebra::twisted_group_algebra(&build_f_clifford(2).unwrap());
        let ctx = a.ctx().clone();
        let one = Scalar::one(&ctx);
        assert_eq!(
            a.multiply_labels("u_(1,0)", "u_(0,1)").unwrap(),
            a.lincomb(&[(one.neg(), "u_(1,1)")]).unwrap()
        );
        assert_eq!(
            a.multiply_labels("u_(0,1)", "u_(1,0)").unwrap(),
            a.lincomb(&[(one, "u_(1,1)")]).unwrap()
        );
    }

    #[test]
    fn multiply_zero_and_unit() {
        let p = sym(3, 2);
        let a = gca_presentation(&p).unwrap();
        let x = a
            .lincomb(&[
                (Scalar::q(p.ctx(), 1).unwrap(), "e1*e2"),
                (Scalar::omega_pow(p.ctx(), 2), "e2^2"),
            ])
            .unwrap();
        let unit = LinComb::basis(p.ctx(), a.unit());
        assert_eq!(a.multiply(&unit, &x).unwrap(), x);
        assert!(a.multiply(&LinComb::zero(), &x).unwrap().is_zero());
        assert!(matches!(a.multiply_labels("e3", "1"), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn gca_relations() {
        let p = sym(3, 1);
        let a = gca_presentation(&p).unwrap();
        let q1 = Scalar::q(p.ctx(), 0).unwrap();
        assert_eq!(
            a.multiply_labels("e1", "e1^2").unwrap(),
            a.lincomb(&[(q1, "1")]).unwrap()
        );

        let p = sym(2, 2);
        let a = gca_presentation(&p).unwrap();
        let w = Scalar::omega_pow(p.ctx(), 1);
        assert_eq!(w, Scalar::from_integer(p.ctx(), -1));
        assert_eq!(
            a.multiply_labels("e2", "e1").unwrap(),
            a.lincomb(&[(w, "e1*e2")]).unwrap()
        );
        assert!(!a.check_commutativity(&Braiding::trivial(a.spec(), p.ctx())).unwrap());
        assert!(a.check_commutativity(a.braiding().unwrap()).unwrap());
    }

    #[test]
    fn quaternions() {
        let ctx = ScalarContext::new(2, 0).unwrap();
        let m1 = Scalar::from_integer(&ctx, -1);
        let p = GcaParams::explicit(2, vec![m1.clone(), m1.clone()]).unwrap();
        let a = gca_presentation(&p).unwrap();
        let e12 = a.lincomb(&[(Scalar::one(&ctx), "e1*e2")]).unwrap();
        let minus_one = a.lincomb(&[(m1, "1")]).unwrap();
        assert_eq!(a.multiply(&e12, &e12).unwrap(), minus_one);
        assert_eq!(a.multiply_labels("e1", "e1").unwrap(), minus_one);
    }

    #[test]
    fn normal_form_counts_swaps() {
        let nf = gca_normal_form(3, 3, &[2, 1, 0, 0]).unwrap();
        assert_eq!(nf.omega, 5);
        assert_eq!(nf.residues, vec![2, 1, 1]);
        assert_eq!(nf.q, vec![0, 0, 0]);
        let nf = gca_normal_form(2, 1, &[0, 0, 0]).unwrap();
        assert_eq!((nf.q[0], nf.residues[0]), (1, 1));
    }

    #[test]
    fn psi_is_a_morphism() {
        for (n, m) in [(2, 1), (3, 2), (2, 3)] {
            assert!(psi_isomorphism(&sym(n, m)).unwrap().check_morphism());
        }
    }

    #[test]
    fn octonions_associative_up_to_coboundary() {
        let f = build_f_octonion(3).unwrap();
        let a = QuasiAlgebra::twisted_group_algebra(&f);
        assert!(a.check_phi_associativity());
        let flat = a.with_phi(Cochain3::trivial(a.spec(), a.ctx())).unwrap();
        assert!(!flat.check_phi_associativity());
    }

    #[test]
    fn clifford_against_gca_through_reversal() {
        for m in 1..=4 {
            let phi = clifford_reversal(m).unwrap();
            assert!(phi.check_morphism(), "m = {m}");
        }
        let phi = clifford_reversal(3).unwrap();
        let plain =
            gca_presentation(&GcaParams::explicit(2, vec![Scalar::from_integer(phi.source().ctx(), -1); 3]).unwrap())
                .unwrap();
        let ident = (0..8).collect::<Vec<_>>();
        assert!(phi.source().table_mismatch(&plain, &ident).unwrap().is_some());
    }

    #[test]
    fn tensor_with_trivial_structure_is_plain() {
        let spec = GroupSpec::new(vec![2]).unwrap();
        let ctx = ScalarContext::rational();
        let a = QuasiAlgebra::twisted_group_algebra(&Cochain2::trivial(&spec, &ctx));
        let t =
            braided_tensor_algebra(&a, &a, &Cochain3::trivial(&spec, &ctx), &Braiding::trivial(&spec, &ctx)).unwrap();
        assert_eq!(t.dim(), 4);
        assert_eq!(
            t.multiply_labels("u_(1)⊗u_(0)", "u_(1)⊗u_(1)").unwrap(),
            t.lincomb(&[(Scalar::one(&ctx), "u_(0)⊗u_(1)")]).unwrap()
        );
    }

    #[test]
    fn tensor_factors_pick_up_braiding() {
        let p = sym(2, 2);
        let spec = p.group().unwrap();
        let f1 = gca_presentation(&p.slice(0, 1).unwrap())
            .unwrap()
            .embed_grading(&spec, 0)
            .unwrap();
        let f2 = gca_presentation(&p.slice(1, 2).unwrap())
            .unwrap()
            .embed_grading(&spec, 1)
            .unwrap();
        let r = gca_braiding_direct(&p).unwrap();
        let t = braided_tensor_algebra(&f1, &f2, &Cochain3::trivial(&spec, p.ctx()), &r).unwrap();
        let one = Scalar::one(p.ctx());
        assert_eq!(
            t.multiply_labels("e1⊗1", "1⊗e1").unwrap(),
            t.lincomb(&[(one.clone(), "e1⊗e1")]).unwrap()
        );
        assert_eq!(
            t.multiply_labels("1⊗e1", "e1⊗1").unwrap(),
            t.lincomb(&[(one.neg(), "e1⊗e1")]).unwrap()
        );
    }

    #[test]
    fn json_round_trip() {
        let p = sym(3, 1);
        let a = gca_presentation(&p).unwrap();
        let text = serde_json::to_string(&a.to_json()).unwrap();
        let back = QuasiAlgebra::from_json(&serde_json::from_str(&text).unwrap(), a.spec(), p.ctx()).unwrap();
        assert_eq!(back.products(), a.products());
        assert_eq!(serde_json::to_string(&back.to_json()).unwrap(), text);
    }

    #[test]
    fn grading_violation_rejected() {
        let spec = GroupSpec::new(vec![2]).unwrap();
        let ctx = ScalarContext::rational();
        let a = QuasiAlgebra::twisted_group_algebra(&Cochain2::trivial(&spec, &ctx));
        let mut product = a.products().to_vec();
        product[3] = LinComb::basis(&ctx, 1);
        let r = QuasiAlgebra::new(a.basis().clone(), &ctx, product, 0, a.phi().clone(), None);
        assert!(matches!(r, Err(Error::Structural(_))));
    }
}
