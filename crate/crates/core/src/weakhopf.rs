//! Coalgebras and weak Hopf algebras in symmetric Gr-categories
//! (Vec_G^Φ, R), their canonical constructions on (twisted) group algebras,
//! and an exhaustive verifier for the weak Hopf axioms.
//!
//! All identities are checked on basis elements only. Every axiom is
//! multilinear in its homogeneous arguments, so this is sufficient.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::accum::{Acc, XLin};
use crate::cochain::{build_f_gca, Braiding, Cochain2, Cochain3, GcaParams};
use crate::error::{Error, Result};
use crate::group::{Cayley, GroupElement, GroupSpec};
use crate::quasialg::{
    basis_json, lincomb_json, psi_isomorphism, AlgebraMorphism, BasisEntryJson, GradedBasis, LabelTermJson, LinComb,
    MultiplicationTableJson, QuasiAlgebra,
};
use crate::scalar::Rational;
use crate::scalar::{product_of, CycloField, Expanded, RootArith, Scalar, ScalarContext, ScalarJson, Term, TermSum};

/// One term `coeff · left ⊗ right` of a comultiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoTerm {
    pub left: usize,
    pub right: usize,
    pub coeff: Scalar,
}

/// Comultiplication and counit tables on a graded basis.
#[derive(Clone, Debug, PartialEq)]
pub struct CoalgebraData {
    basis: GradedBasis,
    ctx: ScalarContext,
    comul: Vec<Vec<CoTerm>>,
    counit: Vec<Scalar>,
}

fn canonical_coterms(terms: Vec<(usize, usize, Scalar)>) -> Result<Vec<CoTerm>> {
    let mut map: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
    for (a, b, s) in terms {
        match map.get_mut(&(a, b)) {
            Some(acc) => *acc = acc.try_add(&s)?,
            None => {
                map.insert((a, b), s);
            }
        }
    }
    Ok(map
        .into_iter()
        .filter(|(_, s)| !s.is_zero())
        .map(|((left, right), coeff)| CoTerm { left, right, coeff })
        .collect())
}

impl CoalgebraData {
    /// Validates totality, degree additivity of Δ and that ε vanishes off
    /// degree 0.
    pub fn new(
        basis: GradedBasis,
        ctx: &ScalarContext,
        comul: Vec<Vec<(usize, usize, Scalar)>>,
        counit: Vec<Scalar>,
    ) -> Result<Self> {
        let dim = basis.dim();
        if comul.len() != dim || counit.len() != dim {
            return Err(Error::Structural(format!(
                "coalgebra tables of sizes {} and {} for dimension {dim}",
                comul.len(),
                counit.len()
            )));
        }
        let spec = basis.spec().clone();
        let mut canon = Vec::with_capacity(dim);
        for (x, terms) in comul.into_iter().enumerate() {
            let terms = canonical_coterms(terms)?;
            for t in &terms {
                if t.left >= dim || t.right >= dim {
                    return Err(Error::IndexOutOfRange {
                        index: t.left.max(t.right),
                        len: dim,
                    });
                }
                ctx.check(t.coeff.ctx())?;
                if spec.add_index(basis.degree(t.left), basis.degree(t.right)) != basis.degree(x) {
                    return Err(Error::Structural(format!(
                        "Δ({}) has a term {}⊗{} of the wrong degree",
                        basis.label(x),
                        basis.label(t.left),
                        basis.label(t.right)
                    )));
                }
            }
            canon.push(terms);
        }
        for (x, e) in counit.iter().enumerate() {
            ctx.check(e.ctx())?;
            if !e.is_zero() && basis.degree(x) != 0 {
                return Err(Error::Structural(format!("ε({}) ≠ 0 outside degree 0", basis.label(x))));
            }
        }
        Ok(CoalgebraData {
            basis,
            ctx: ctx.clone(),
            comul: canon,
            counit,
        })
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn ctx(&self) -> &ScalarContext {
        &self.ctx
    }

    pub fn spec(&self) -> &GroupSpec {
        self.basis.spec()
    }

    pub fn comul(&self, x: usize) -> &[CoTerm] {
        &self.comul[x]
    }

    pub fn counit(&self, x: usize) -> &Scalar {
        &self.counit[x]
    }

    pub fn counits(&self) -> &[Scalar] {
        &self.counit
    }

    /// Replaces the counit, e.g. for mutation tests.
    pub fn with_counit(&self, counit: Vec<Scalar>) -> Result<Self> {
        Self::new(self.basis.clone(), &self.ctx, self.raw_comul(), counit)
    }

    pub(crate) fn raw_comul(&self) -> Vec<Vec<(usize, usize, Scalar)>> {
        self.comul
            .iter()
            .map(|ts| ts.iter().map(|t| (t.left, t.right, t.coeff.clone())).collect())
            .collect()
    }

    fn expanded(&self) -> Vec<Vec<(usize, usize, Expanded)>> {
        self.comul
            .iter()
            .map(|ts| ts.iter().map(|t| (t.left, t.right, t.coeff.expand())).collect())
            .collect()
    }

    /// First x with Σ Φ(|x11|,|x12|,|x2|) x11⊗x12⊗x2 ≠ Σ x1⊗x21⊗x22.
    pub fn coassociativity_witness(&self, phi: &Cochain3) -> Result<Option<usize>> {
        let t = Tables::new_coalgebra(self, phi)?;
        Ok(t.coassoc())
    }

    /// First x with (ε⊗id)Δ(x) ≠ x or (id⊗ε)Δ(x) ≠ x.
    pub fn counit_witness(&self) -> Option<usize> {
        let phi = Cochain3::trivial(self.spec(), &self.ctx);
        Tables::new_coalgebra(self, &phi).expect("own group").counit()
    }

    /// Coassociativity up to Φ and both counit laws.
    pub fn check_coalgebra(&self, phi: &Cochain3) -> Result<bool> {
        Ok(self.coassociativity_witness(phi)?.is_none() && self.counit_witness().is_none())
    }

    /// Pads degrees with zeros as for algebras.
    pub fn embed_grading(&self, spec: &GroupSpec, offset: usize) -> Result<Self> {
        let own = self.spec().orders();
        let target = spec.orders();
        if offset + own.len() > target.len() || target[offset..offset + own.len()] != *own {
            return Err(Error::Parameter(format!(
                "{} does not embed into {spec} at offset {offset}",
                self.spec()
            )));
        }
        let entries = (0..self.basis.dim())
            .map(|i| {
                let mut r = vec![0u32; target.len()];
                r[offset..offset + own.len()].copy_from_slice(self.basis.degree_element(i).residues());
                Ok((self.basis.label(i).to_string(), spec.element(&r)?.index()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            GradedBasis::new(spec, entries)?,
            &self.ctx,
            self.raw_comul(),
            self.counit.clone(),
        )
    }

    /// First basis element of `self` whose tables differ from `other`'s
    /// under the basis map.
    pub fn table_mismatch(&self, other: &CoalgebraData, map: &[usize]) -> Result<Option<usize>> {
        self.ctx.check(&other.ctx)?;
        if other.basis.dim() != self.basis.dim() || map.len() != self.basis.dim() {
            return Err(Error::Structural("coalgebra dimensions differ".into()));
        }
        for x in 0..self.basis.dim() {
            let mapped = canonical_coterms(
                self.comul[x]
                    .iter()
                    .map(|t| (map[t.left], map[t.right], t.coeff.clone()))
                    .collect(),
            )?;
            if mapped != other.comul[map[x]] || self.counit[x] != other.counit[map[x]] {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }
}

/// Algebra, coalgebra and antipode on one basis.
#[derive(Clone, Debug, PartialEq)]
pub struct WeakHopfData {
    algebra: QuasiAlgebra,
    coalgebra: CoalgebraData,
    antipode: Vec<LinComb>,
}

impl WeakHopfData {
    pub fn new(algebra: QuasiAlgebra, coalgebra: CoalgebraData, antipode: Vec<LinComb>) -> Result<Self> {
        let (ab, cb) = (algebra.basis(), coalgebra.basis());
        if ab.labels() != cb.labels() || ab.degrees() != cb.degrees() || ab.spec() != cb.spec() {
            return Err(Error::Structural("algebra and coalgebra bases differ".into()));
        }
        algebra.ctx().check(coalgebra.ctx())?;
        if antipode.len() != ab.dim() {
            return Err(Error::Structural(format!(
                "{} antipode images for dimension {}",
                antipode.len(),
                ab.dim()
            )));
        }
        for (x, img) in antipode.iter().enumerate() {
            for (t, s) in img.terms() {
                if *t >= ab.dim() {
                    return Err(Error::IndexOutOfRange {
                        index: *t,
                        len: ab.dim(),
                    });
                }
                algebra.ctx().check(s.ctx())?;
                if ab.degree(*t) != ab.degree(x) {
                    return Err(Error::Structural(format!("S({}) leaves its degree", ab.label(x))));
                }
            }
        }
        Ok(WeakHopfData {
            algebra,
            coalgebra,
            antipode,
        })
    }

    pub fn algebra(&self) -> &QuasiAlgebra {
        &self.algebra
    }

    pub fn coalgebra(&self) -> &CoalgebraData {
        &self.coalgebra
    }

    pub fn antipode(&self) -> &[LinComb] {
        &self.antipode
    }

    pub fn with_coalgebra(&self, coalgebra: CoalgebraData) -> Result<Self> {
        Self::new(self.algebra.clone(), coalgebra, self.antipode.clone())
    }

    pub fn with_antipode(&self, antipode: Vec<LinComb>) -> Result<Self> {
        Self::new(self.algebra.clone(), self.coalgebra.clone(), antipode)
    }

    /// Δ(1) = 1 ⊗ 1, which singles out ordinary Hopf algebras.
    pub fn is_ordinary_hopf(&self) -> bool {
        let u = self.algebra.unit();
        matches!(self.coalgebra.comul(u), [t] if t.left == u && t.right == u && t.coeff.is_one())
    }
}

/// (1/|G|) F(h, g−h)^{-1} u_h ⊗ u_{g−h}, ε(u_g) = |G| δ_{g,0}, S = id on k_F[G].
pub fn twisted_weak_hopf(f: &Cochain2) -> Result<WeakHopfData> {
    let algebra = QuasiAlgebra::twisted_group_algebra(f);
    let spec = f.spec();
    let ctx = f.ctx();
    let cay = spec.cayley();
    let size = cay.size();
    let inv_order = Rational::new(1, size as i64)?;
    let mut comul = Vec::with_capacity(size);
    for g in 0..size {
        let mut terms = Vec::with_capacity(size);
        for h in 0..size {
            let rest = cay.sub(g, h);
            terms.push((h, rest, f.value(h, rest).try_invert()?.scale(&inv_order)));
        }
        comul.push(terms);
    }
    let counit = (0..size)
        .map(|g| {
            if g == 0 {
                Scalar::from_integer(ctx, size as i64)
            } else {
                Scalar::zero(ctx)
            }
        })
        .collect();
    let coalgebra = CoalgebraData::new(algebra.basis().clone(), ctx, comul, counit)?;
    let antipode = (0..size).map(|g| LinComb::basis(ctx, g)).collect();
    WeakHopfData::new(algebra, coalgebra, antipode)
}

/// The untwisted structure on k[G] in (Vec_G, o).
pub fn canonical_weak_hopf(spec: &GroupSpec, ctx: &ScalarContext) -> Result<WeakHopfData> {
    twisted_weak_hopf(&Cochain2::trivial(spec, ctx))
}

/// Carries coalgebra and antipode along a monomial basis bijection
/// `x ↦ c_x · φ(x)`, onto the morphism's target algebra.
pub fn transport_weak_hopf(h: &WeakHopfData, phi: &AlgebraMorphism) -> Result<WeakHopfData> {
    if phi.source().dim() != h.algebra.dim() || phi.source().spec() != h.algebra.spec() {
        return Err(Error::Structural("morphism source is not the weak Hopf algebra".into()));
    }
    let bij = phi.monomial_bijection()?;
    let target = phi.target().clone();
    let ctx = target.ctx().clone();
    let dim = target.dim();
    let inv: Vec<Scalar> = bij.iter().map(|(_, c)| c.try_invert()).collect::<Result<_>>()?;
    let mut comul = vec![Vec::new(); dim];
    let mut counit = vec![Scalar::zero(&ctx); dim];
    let mut antipode = vec![LinComb::zero(); dim];
    for x in 0..dim {
        let (tx, _) = bij[x];
        comul[tx] = h
            .coalgebra
            .comul(x)
            .iter()
            .map(|t| {
                let (ta, ca) = &bij[t.left];
                let (tb, cb) = &bij[t.right];
                Ok((*ta, *tb, t.coeff.try_mul(ca)?.try_mul(cb)?.try_mul(&inv[x])?))
            })
            .collect::<Result<Vec<_>>>()?;
        counit[tx] = h.coalgebra.counit(x).try_mul(&inv[x])?;
        antipode[tx] = LinComb::from_terms(
            h.antipode[x]
                .terms()
                .iter()
                .map(|(a, s)| Ok((bij[*a].0, s.try_mul(&bij[*a].1)?.try_mul(&inv[x])?)))
                .collect::<Result<Vec<_>>>()?,
        )?;
    }
    let coalgebra = CoalgebraData::new(target.basis().clone(), &ctx, comul, counit)?;
    WeakHopfData::new(target, coalgebra, antipode)
}

/// The weak Hopf structure on C^{(n)}(q), transported from k_{F_GCA}[Z_n^m]
/// through ψ.
pub fn gca_weak_hopf(params: &GcaParams) -> Result<WeakHopfData> {
    let twisted = twisted_weak_hopf(&build_f_gca(params)?)?;
    transport_weak_hopf(&twisted, &psi_isomorphism(params)?)
}

/// How to read the per-coordinate q-factor attached to `h_i > g_i` in the
/// closed-form comultiplication of C^{(n)}(q).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QFactor {
    /// q_i, as the closed form is printed.
    AsPrinted,
    /// q_i^{-1}, the value F_GCA(h, (g−h)')^{-1} actually carries.
    Inverted,
}

/// Direct evaluation of the closed-form Δ on C^{(n)}(q):
/// Δ(e^g) = (1/n^m) Σ_h ω^{-Σ_{j<i} h_i (g_j−h_j)'} Π_i q̂_i e^h ⊗ e^{(g−h)'},
/// with ε(e^g) = n^m δ_{g,0}.
pub fn gca_comul_direct(params: &GcaParams, rule: QFactor) -> Result<CoalgebraData> {
    let alg = crate::quasialg::gca_presentation(params)?;
    let spec = alg.spec().clone();
    let ctx = params.ctx();
    let (n, m) = (params.n(), params.m());
    let size = spec.order();
    let inv_order = Rational::new(1, size as i64)?;
    let mut comul = Vec::with_capacity(size);
    for g in 0..size {
        let gr = spec.residues_at(g);
        let mut terms = Vec::with_capacity(size);
        for h in 0..size {
            let hr = spec.residues_at(h);
            let rest: Vec<u32> = gr.iter().zip(&hr).map(|(&a, &b)| (a + n - b) % n).collect();
            let mut e: i64 = 0;
            for i in 0..m {
                for j in 0..i {
                    e -= hr[i] as i64 * rest[j] as i64;
                }
            }
            let mut s = Scalar::omega_pow(ctx, e).scale(&inv_order);
            for i in 0..m {
                if hr[i] > gr[i] {
                    let q = match rule {
                        QFactor::AsPrinted => params.q()[i].clone(),
                        QFactor::Inverted => params.q()[i].try_invert()?,
                    };
                    s = s.try_mul(&q)?;
                }
            }
            terms.push((h, spec.index_of_residues(&rest), s));
        }
        comul.push(terms);
    }
    let counit = (0..size)
        .map(|g| {
            if g == 0 {
                Scalar::from_integer(ctx, size as i64)
            } else {
                Scalar::zero(ctx)
            }
        })
        .collect();
    CoalgebraData::new(alg.basis().clone(), ctx, comul, counit)
}

/// The ten axiom families checked by [`verify_weak_hopf`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Coassoc,
    Counit,
    DeltaMult,
    EpsWeakMult1,
    EpsWeakMult2,
    UnitComul1,
    UnitComul2,
    Antipode1,
    Antipode2,
    Antipode3,
}

impl Axiom {
    pub const ALL: [Axiom; 10] = [
        Axiom::Coassoc,
        Axiom::Counit,
        Axiom::DeltaMult,
        Axiom::EpsWeakMult1,
        Axiom::EpsWeakMult2,
        Axiom::UnitComul1,
        Axiom::UnitComul2,
        Axiom::Antipode1,
        Axiom::Antipode2,
        Axiom::Antipode3,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Axiom::Coassoc => "coassoc",
            Axiom::Counit => "counit",
            Axiom::DeltaMult => "delta_mult",
            Axiom::EpsWeakMult1 => "eps_weak_mult_1",
            Axiom::EpsWeakMult2 => "eps_weak_mult_2",
            Axiom::UnitComul1 => "unit_comul_1",
            Axiom::UnitComul2 => "unit_comul_2",
            Axiom::Antipode1 => "antipode_1",
            Axiom::Antipode2 => "antipode_2",
            Axiom::Antipode3 => "antipode_3",
        }
    }
}

/// Pass/fail per axiom, with the first failing basis tuple (as labels).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    outcomes: Vec<(Axiom, Option<Vec<String>>)>,
}

/// `{"axioms":{...}, "counterexamples":{...}}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReportJson {
    pub axioms: AxiomFlags,
    pub counterexamples: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomFlags {
    pub coassoc: bool,
    pub counit: bool,
    pub delta_mult: bool,
    pub eps_weak_mult_1: bool,
    pub eps_weak_mult_2: bool,
    pub unit_comul_1: bool,
    pub unit_comul_2: bool,
    pub antipode_1: bool,
    pub antipode_2: bool,
    pub antipode_3: bool,
}

impl AxiomReport {
    pub fn outcomes(&self) -> &[(Axiom, Option<Vec<String>>)] {
        &self.outcomes
    }

    pub fn passes(&self, axiom: Axiom) -> bool {
        self.counterexample(axiom).is_none()
    }

    pub fn counterexample(&self, axiom: Axiom) -> Option<&[String]> {
        self.outcomes
            .iter()
            .find(|(a, _)| *a == axiom)
            .and_then(|(_, c)| c.as_deref())
    }

    pub fn all_pass(&self) -> bool {
        self.outcomes.iter().all(|(_, c)| c.is_none())
    }

    pub fn to_json(&self) -> AxiomReportJson {
        let p = |a| self.passes(a);
        AxiomReportJson {
            axioms: AxiomFlags {
                coassoc: p(Axiom::Coassoc),
                counit: p(Axiom::Counit),
                delta_mult: p(Axiom::DeltaMult),
                eps_weak_mult_1: p(Axiom::EpsWeakMult1),
                eps_weak_mult_2: p(Axiom::EpsWeakMult2),
                unit_comul_1: p(Axiom::UnitComul1),
                unit_comul_2: p(Axiom::UnitComul2),
                antipode_1: p(Axiom::Antipode1),
                antipode_2: p(Axiom::Antipode2),
                antipode_3: p(Axiom::Antipode3),
            },
            counterexamples: self
                .outcomes
                .iter()
                .filter_map(|(a, c)| c.clone().map(|c| (a.key().to_string(), c)))
                .collect(),
        }
    }
}

/// Expanded copies of every table the verifier touches.
struct Tables {
    arith: RootArith,
    field: std::sync::Arc<CycloField>,
    n: usize,
    d: usize,
    unit: usize,
    cay: Cayley,
    deg: Vec<usize>,
    prod: Vec<XLin>,
    comul: Vec<Vec<(usize, usize, Expanded)>>,
    counit: Vec<Option<Expanded>>,
    anti: Vec<XLin>,
    /// ε(x·y)
    eps_prod: Vec<Option<Expanded>>,
    phi: Option<(Vec<Expanded>, Vec<Expanded>)>,
    r: Option<Vec<Expanded>>,
    one: Expanded,
}

type Factors<'a> = SmallVec<[&'a [Term]; 8]>;

impl Tables {
    fn build(
        coalg: &CoalgebraData,
        alg: Option<&QuasiAlgebra>,
        antipode: &[LinComb],
        phi: &Cochain3,
        r: Option<&Braiding>,
    ) -> Result<Self> {
        let spec = coalg.spec();
        spec.check(phi.spec())?;
        coalg.ctx.check(phi.ctx())?;
        if let Some(r) = r {
            spec.check(r.spec())?;
            coalg.ctx.check(r.ctx())?;
        }
        let d = coalg.basis.dim();
        let counit: Vec<Option<Expanded>> = coalg
            .counit
            .iter()
            .map(|e| if e.is_zero() { None } else { Some(e.expand()) })
            .collect();
        let arith = coalg.ctx.root_arith();
        let prod = alg.map(QuasiAlgebra::expanded_products).unwrap_or_default();
        let mut eps_prod = Vec::with_capacity(prod.len());
        for p in &prod {
            let mut terms = Expanded::new();
            for (t, s) in p {
                if let Some(e) = &counit[*t] {
                    terms.extend(product_of(&arith, &[s, e]));
                }
            }
            eps_prod.push(if terms.is_empty() { None } else { Some(terms) });
        }
        let phi = if phi.is_trivial() {
            None
        } else {
            Some((
                phi.table().iter().map(Scalar::expand).collect(),
                phi.invert().table().iter().map(Scalar::expand).collect(),
            ))
        };
        let r = r
            .filter(|r| !r.is_trivial())
            .map(|r| r.table().iter().map(Scalar::expand).collect());
        Ok(Tables {
            arith,
            field: coalg.ctx.field().clone(),
            n: spec.order(),
            d,
            unit: alg.map(QuasiAlgebra::unit).unwrap_or(0),
            cay: spec.cayley(),
            deg: coalg.basis.degrees().to_vec(),
            prod,
            comul: coalg.expanded(),
            counit,
            anti: antipode.iter().map(LinComb::expand).collect(),
            eps_prod,
            phi,
            r,
            one: Scalar::one(&coalg.ctx).expand(),
        })
    }

    fn new_coalgebra(coalg: &CoalgebraData, phi: &Cochain3) -> Result<Self> {
        Self::build(coalg, None, &[], phi, None)
    }

    #[inline]
    fn phi(&self, a: usize, b: usize, c: usize) -> Option<&[Term]> {
        self.phi
            .as_ref()
            .map(|(p, _)| p[(a * self.n + b) * self.n + c].as_slice())
    }

    #[inline]
    fn phi_inv(&self, a: usize, b: usize, c: usize) -> Option<&[Term]> {
        self.phi
            .as_ref()
            .map(|(_, p)| p[(a * self.n + b) * self.n + c].as_slice())
    }

    #[inline]
    fn r(&self, a: usize, b: usize) -> Option<&[Term]> {
        self.r.as_ref().map(|r| r[a * self.n + b].as_slice())
    }

    #[inline]
    fn mul<'a>(&self, factors: impl IntoIterator<Item = Option<&'a [Term]>>) -> Expanded {
        let fs: Factors<'a> = factors.into_iter().flatten().collect();
        if fs.is_empty() {
            return self.one.clone();
        }
        product_of(&self.arith, &fs)
    }

    #[inline]
    fn add(&self, a: usize, b: usize) -> usize {
        self.cay.add(a, b)
    }

    fn key3(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.d + b) * self.d + c
    }

    fn unkey3(&self, k: usize) -> Vec<usize> {
        vec![k / (self.d * self.d), (k / self.d) % self.d, k % self.d]
    }

    fn coassoc(&self) -> Option<usize> {
        let mut acc = Acc::new(self.d * self.d * self.d);
        for x in 0..self.d {
            acc.clear();
            for (x1, x2, s) in &self.comul[x] {
                for (a, b, s1) in &self.comul[*x1] {
                    let ph = self.phi(self.deg[*a], self.deg[*b], self.deg[*x2]);
                    acc.add(self.key3(*a, *b, *x2), self.mul([ph, Some(s), Some(s1)]));
                }
            }
            for (a, bc, s) in &self.comul[x] {
                for (b, c, s1) in &self.comul[*bc] {
                    acc.sub(self.key3(*a, *b, *c), self.mul([Some(s.as_slice()), Some(s1)]));
                }
            }
            if !acc.is_zero(&self.field) {
                return Some(x);
            }
        }
        None
    }

    fn counit(&self) -> Option<usize> {
        let mut acc = Acc::new(self.d);
        for left in [true, false] {
            for x in 0..self.d {
                acc.clear();
                for (a, b, s) in &self.comul[x] {
                    let (e, keep) = if left { (a, b) } else { (b, a) };
                    if let Some(ev) = &self.counit[*e] {
                        acc.add(*keep, self.mul([Some(s.as_slice()), Some(ev)]));
                    }
                }
                let mut minus_one = self.one[0].clone();
                minus_one.coeff = -minus_one.coeff;
                acc.add_term(x, minus_one);
                if !acc.is_zero(&self.field) {
                    return Some(x);
                }
            }
        }
        None
    }

    fn delta_mult(&self) -> Option<(usize, usize)> {
        let d = self.d;
        let mut acc = Acc::new(d * d);
        for x in 0..d {
            for y in 0..d {
                acc.clear();
                for (t, s) in &self.prod[x * d + y] {
                    for (a, b, c) in &self.comul[*t] {
                        acc.add(a * d + b, self.mul([Some(s.as_slice()), Some(c)]));
                    }
                }
                for (a, a_, c1) in &self.comul[x] {
                    let (da, da_) = (self.deg[*a], self.deg[*a_]);
                    for (b, b_, c2) in &self.comul[y] {
                        let (db, db_) = (self.deg[*b], self.deg[*b_]);
                        let coef = [
                            self.phi(da, da_, db),
                            self.phi(self.add(da, db), da_, db_),
                            self.phi_inv(self.add(da, da_), db, db_),
                            self.phi_inv(da, db, da_),
                            self.r(da_, db),
                            Some(c1.as_slice()),
                            Some(c2.as_slice()),
                        ];
                        for (t, s) in &self.prod[a * d + b] {
                            for (t_, s_) in &self.prod[a_ * d + b_] {
                                let all = coef.iter().copied().chain([Some(s.as_slice()), Some(s_.as_slice())]);
                                acc.sub(t * d + t_, self.mul(all));
                            }
                        }
                    }
                }
                if !acc.is_zero(&self.field) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// ε(fg · h) for basis f, g, h.
    fn eps_triple(&self, f: usize, g: usize, h: usize, into: &mut TermSum) {
        for (t, s) in &self.prod[f * self.d + g] {
            if let Some(e) = &self.eps_prod[t * self.d + h] {
                for term in self.mul([Some(s.as_slice()), Some(e)]) {
                    into.add(term);
                }
            }
        }
    }

    /// Both ε-identities; `braided` selects the variant with g1, g2 swapped.
    fn eps_weak_mult(&self, braided: bool) -> Option<(usize, usize, usize)> {
        let d = self.d;
        let mut sum = TermSum::new();
        for f in 0..d {
            let df = self.deg[f];
            for g in 0..d {
                // (outer element, Φ's left argument, prefactor)
                let mut pre: Vec<(usize, usize, Expanded)> = Vec::new();
                for (g1, g2, c) in &self.comul[g] {
                    let (inner, outer) = if braided { (g2, g1) } else { (g1, g2) };
                    if let Some(e) = &self.eps_prod[f * d + inner] {
                        let (di, dout) = (self.deg[*inner], self.deg[*outer]);
                        let r = if braided {
                            self.r(self.deg[*g1], self.deg[*g2])
                        } else {
                            None
                        };
                        let v = self.mul([self.phi_inv(df, di, dout), r, Some(c), Some(e)]);
                        pre.push((*outer, self.add(df, di), v));
                    }
                }
                for h in 0..d {
                    sum.clear();
                    self.eps_triple(f, g, h, &mut sum);
                    for (outer, left, v) in &pre {
                        if let Some(e) = &self.eps_prod[outer * d + h] {
                            let ph = self.phi(*left, self.deg[*outer], self.deg[h]);
                            for term in self.mul([ph, Some(v.as_slice()), Some(e)]) {
                                sum.sub(term);
                            }
                        }
                    }
                    if !sum.is_zero(&self.field) {
                        return Some((f, g, h));
                    }
                }
            }
        }
        None
    }

    /// (Δ⊗id)Δ(1) against Σ Φ(|1_1|,|1_2|,|1_(1)|) 1_1 ⊗ m(1_2, 1_(1)) ⊗ 1_(2),
    /// or with R(|1_2|,|1_(1)|) and the product reversed.
    fn unit_comul(&self, braided: bool) -> Option<Vec<usize>> {
        let d = self.d;
        let one = &self.comul[self.unit];
        let mut acc = Acc::new(d * d * d);
        for (a12, c, s) in one {
            for (a, b, s1) in &self.comul[*a12] {
                acc.add(self.key3(*a, *b, *c), self.mul([Some(s.as_slice()), Some(s1)]));
            }
        }
        for (a, b, s) in one {
            for (c, e, s2) in one {
                let (db, dc) = (self.deg[*b], self.deg[*c]);
                let coef = self.mul([
                    self.phi(self.deg[*a], db, dc),
                    if braided { self.r(db, dc) } else { None },
                    Some(s),
                    Some(s2),
                ]);
                let p = if braided {
                    &self.prod[c * d + b]
                } else {
                    &self.prod[b * d + c]
                };
                for (t, s3) in p {
                    acc.sub(self.key3(*a, *t, *e), self.mul([Some(coef.as_slice()), Some(s3)]));
                }
            }
        }
        acc.first_nonzero(&self.field).map(|k| self.unkey3(k))
    }

    /// h1 S(h2) and S(h1) h2 against their unit-and-counit forms.
    fn antipode_side(&self, left: bool) -> Option<usize> {
        let d = self.d;
        let one = &self.comul[self.unit];
        let mut acc = Acc::new(d);
        for h in 0..d {
            let dh = self.deg[h];
            acc.clear();
            for (a, b, c) in &self.comul[h] {
                let (plain, anti) = if left { (a, b) } else { (b, a) };
                for (t, s) in &self.anti[*anti] {
                    let p = if left {
                        &self.prod[plain * d + t]
                    } else {
                        &self.prod[t * d + plain]
                    };
                    for (u, s2) in p {
                        acc.add(*u, self.mul([Some(c.as_slice()), Some(s), Some(s2)]));
                    }
                }
            }
            for (a, b, c) in one {
                let (da, db) = (self.deg[*a], self.deg[*b]);
                if left {
                    if let Some(e) = &self.eps_prod[a * d + h] {
                        let v = self.mul([
                            self.phi(da, db, dh),
                            self.phi_inv(da, dh, db),
                            self.r(db, dh),
                            Some(c),
                            Some(e),
                        ]);
                        acc.sub(*b, v);
                    }
                } else if let Some(e) = &self.eps_prod[h * d + b] {
                    let v = self.mul([
                        self.phi_inv(dh, da, db),
                        self.phi(da, dh, db),
                        self.r(dh, da),
                        Some(c),
                        Some(e),
                    ]);
                    acc.sub(*a, v);
                }
            }
            if !acc.is_zero(&self.field) {
                return Some(h);
            }
        }
        None
    }

    /// S(h) = Σ (S(h11) h12) S(h2).
    fn antipode_3(&self) -> Option<usize> {
        let d = self.d;
        let mut acc = Acc::new(d);
        for h in 0..d {
            acc.clear();
            for (h1, h2, c) in &self.comul[h] {
                for (a, b, c1) in &self.comul[*h1] {
                    for (t, s) in &self.anti[*a] {
                        for (u, s2) in &self.prod[t * d + b] {
                            let left = self.mul([Some(c.as_slice()), Some(c1), Some(s), Some(s2)]);
                            for (v, s3) in &self.anti[*h2] {
                                for (w, s4) in &self.prod[u * d + v] {
                                    acc.add(*w, self.mul([Some(left.as_slice()), Some(s3), Some(s4)]));
                                }
                            }
                        }
                    }
                }
            }
            for (t, s) in &self.anti[h] {
                acc.sub(*t, s.clone());
            }
            if !acc.is_zero(&self.field) {
                return Some(h);
            }
        }
        None
    }
}

/// Checks the ten weak Hopf axiom families of `h` in (Vec_G^Φ, R).
pub fn verify_weak_hopf(h: &WeakHopfData, phi: &Cochain3, r: &Braiding) -> Result<AxiomReport> {
    let t = Tables::build(&h.coalgebra, Some(&h.algebra), &h.antipode, phi, Some(r))?;
    let labels = |idx: &[usize]| {
        idx.iter()
            .map(|&i| h.algebra.basis().label(i).to_string())
            .collect::<Vec<_>>()
    };
    let outcomes = vec![
        (Axiom::Coassoc, t.coassoc().map(|x| labels(&[x]))),
        (Axiom::Counit, t.counit().map(|x| labels(&[x]))),
        (Axiom::DeltaMult, t.delta_mult().map(|(x, y)| labels(&[x, y]))),
        (
            Axiom::EpsWeakMult1,
            t.eps_weak_mult(false).map(|(f, g, k)| labels(&[f, g, k])),
        ),
        (
            Axiom::EpsWeakMult2,
            t.eps_weak_mult(true).map(|(f, g, k)| labels(&[f, g, k])),
        ),
        (Axiom::UnitComul1, t.unit_comul(false).map(|v| labels(&v))),
        (Axiom::UnitComul2, t.unit_comul(true).map(|v| labels(&v))),
        (Axiom::Antipode1, t.antipode_side(true).map(|x| labels(&[x]))),
        (Axiom::Antipode2, t.antipode_side(false).map(|x| labels(&[x]))),
        (Axiom::Antipode3, t.antipode_3().map(|x| labels(&[x]))),
    ];
    Ok(AxiomReport { outcomes })
}

/// Axiom (1): unit laws and Φ-associativity of the underlying algebra.
/// Returns a description of the first failure.
pub fn verify_algebra(h: &WeakHopfData, phi: &Cochain3) -> Result<Option<String>> {
    Ok(h.algebra.algebra_witness(phi)?.map(|v| h.algebra.describe(&v)))
}

/// C1 ⊗̂ C2 in (Vec_G^Φ, R), on the pair basis `a⊗b` indexed
/// `a · dim(C2) + b`; ε(a⊗b) = ε(a)ε(b).
pub fn braided_tensor_coalgebra(
    c1: &CoalgebraData,
    c2: &CoalgebraData,
    phi: &Cochain3,
    r: &Braiding,
) -> Result<CoalgebraData> {
    let spec = c1.spec();
    spec.check(c2.spec())?;
    spec.check(phi.spec())?;
    spec.check(r.spec())?;
    let ctx = &c1.ctx;
    ctx.check(&c2.ctx)?;
    ctx.check(phi.ctx())?;
    ctx.check(r.ctx())?;
    let cay = spec.cayley();
    let (d1, d2) = (c1.basis.dim(), c2.basis.dim());
    let entries = (0..d1)
        .flat_map(|i| (0..d2).map(move |j| (i, j)))
        .map(|(i, j)| {
            (
                format!("{}⊗{}", c1.basis.label(i), c2.basis.label(j)),
                cay.add(c1.basis.degree(i), c2.basis.degree(j)),
            )
        })
        .collect();
    let basis = GradedBasis::new(spec, entries)?;
    let phi_inv = phi.invert();
    let deg1 = |i: usize| c1.basis.degree(i);
    let deg2 = |i: usize| c2.basis.degree(i);
    let mut comul = Vec::with_capacity(d1 * d2);
    let mut counit = Vec::with_capacity(d1 * d2);
    for a in 0..d1 {
        for b in 0..d2 {
            let mut terms = Vec::new();
            for ta in c1.comul(a) {
                for tb in c2.comul(b) {
                    let (x1, x2, y1, y2) = (deg1(ta.left), deg1(ta.right), deg2(tb.left), deg2(tb.right));
                    let coef = phi
                        .value(x1, x2, y1)
                        .try_mul(phi.value(cay.add(x1, y1), x2, y2))?
                        .try_mul(phi_inv.value(cay.add(x1, x2), y1, y2))?
                        .try_mul(phi_inv.value(x1, y1, x2))?
                        .try_mul(r.value(x2, y1))?
                        .try_mul(&ta.coeff)?
                        .try_mul(&tb.coeff)?;
                    terms.push((ta.left * d2 + tb.left, ta.right * d2 + tb.right, coef));
                }
            }
            comul.push(terms);
            counit.push(c1.counit(a).try_mul(c2.counit(b))?);
        }
    }
    CoalgebraData::new(basis, ctx, comul, counit)
}

/// Outcome of the forcing chain that pins down the coalgebra on k[G].
#[derive(Clone, Debug)]
pub struct UniquenessDerivation {
    /// Unknowns are δ(g,h) for all g, h and 1/ε(0).
    pub unknowns: usize,
    /// Equivalence classes after the counit conditions.
    pub classes_after_counit: usize,
    /// Equivalence classes after δ(g, h−g) = δ(g, −g).
    pub classes_after_unit_compat: usize,
    /// Number of summands c² in the multiplicativity condition at the zero
    /// triple, so that c = |G| c².
    pub convolution_terms: usize,
    /// The forced constant value of δ.
    pub constant: Rational,
    pub coalgebra: CoalgebraData,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = x;
        while self.0[cur] != root {
            let next = self.0[cur];
            self.0[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }

    fn classes(&mut self) -> usize {
        (0..self.0.len()).filter(|&i| self.find(i) == i).count()
    }
}

/// Runs the derivation: the counit conditions tie δ(g,0) and δ(0,g) to
/// 1/ε(0); δ(g,h−g) = δ(g,−g) makes each row constant; together δ ≡ c.
/// Multiplicativity at f = g = h = 0 gives c = |G| c², so c = 1/|G|.
pub fn derive_unique_coalgebra(spec: &GroupSpec) -> Result<UniquenessDerivation> {
    let cay = spec.cayley();
    let n = cay.size();
    let delta = |g: usize, h: usize| g * n + h;
    let inv_eps0 = n * n;
    let mut uf = UnionFind((0..=n * n).collect());
    for g in 0..n {
        uf.union(delta(g, 0), inv_eps0);
        uf.union(delta(0, g), inv_eps0);
    }
    let classes_after_counit = uf.classes();
    for g in 0..n {
        for h in 0..n {
            uf.union(delta(g, cay.sub(h, g)), delta(g, cay.neg(g)));
        }
    }
    let classes_after_unit_compat = uf.classes();
    if classes_after_unit_compat != 1 {
        return Err(Error::Structural(format!(
            "{classes_after_unit_compat} independent classes of unknowns remain"
        )));
    }
    // δ(0,0) = Σ_l δ(l,−l) δ(−l,l): every summand is c·c.
    let convolution_terms = (0..n)
        .filter(|&l| uf.find(delta(l, cay.neg(l))) == uf.find(delta(cay.neg(l), l)))
        .count();
    let constant = Rational::new(1, convolution_terms as i64)?;
    let ctx = ScalarContext::rational();
    let c = Scalar::from_rational(&ctx, constant.clone());
    let comul = (0..n)
        .map(|g| (0..n).map(|h| (h, cay.sub(g, h), c.clone())).collect())
        .collect();
    let eps0 = Scalar::from_rational(&ctx, constant.recip()?);
    let counit = (0..n)
        .map(|g| if g == 0 { eps0.clone() } else { Scalar::zero(&ctx) })
        .collect();
    let coalgebra = CoalgebraData::new(GradedBasis::group_basis(spec), &ctx, comul, counit)?;
    Ok(UniquenessDerivation {
        unknowns: n * n + 1,
        classes_after_counit,
        classes_after_unit_compat,
        convolution_terms,
        constant,
        coalgebra,
    })
}

/// Which constraint family a candidate (δ, ε) violates first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstraintViolation {
    /// δ(f,g+h)δ(g,h) ≠ δ(f,g)δ(f+g,h)
    Cocycle(GroupElement, GroupElement, GroupElement),
    /// ε(0)δ(g,0) ≠ 1, ε(0)δ(0,g) ≠ 1, or ε(g) ≠ 0 for g ≠ 0
    Counit(GroupElement),
    /// δ(h, f+g−h) ≠ Σ_l δ(l, f−l) δ(h−l, g+l−h)
    Multiplicativity(GroupElement, GroupElement, GroupElement),
    /// δ(g, h−g) ≠ δ(g, −g)
    UnitCompatibility(GroupElement, GroupElement),
}

/// Tests a candidate δ (dense |G|×|G| table) and ε against all four
/// constraint families, in that order.
pub fn coalgebra_constraint_witness(
    spec: &GroupSpec,
    delta: &[Scalar],
    eps: &[Scalar],
) -> Result<Option<ConstraintViolation>> {
    let cay = spec.cayley();
    let n = cay.size();
    if delta.len() != n * n || eps.len() != n {
        return Err(Error::Structural(format!(
            "candidate tables of sizes {} and {} for |G| = {n}",
            delta.len(),
            eps.len()
        )));
    }
    let ctx = delta[0].ctx().clone();
    for s in delta.iter().chain(eps) {
        ctx.check(s.ctx())?;
    }
    let d = |g: usize, h: usize| &delta[g * n + h];
    let el = |i: usize| spec.element_at(i);
    for f in 0..n {
        for g in 0..n {
            for h in 0..n {
                let lhs = d(f, cay.add(g, h)).try_mul(d(g, h))?;
                let rhs = d(f, g).try_mul(d(cay.add(f, g), h))?;
                if lhs != rhs {
                    return Ok(Some(ConstraintViolation::Cocycle(el(f), el(g), el(h))));
                }
            }
        }
    }
    for g in 0..n {
        if !eps[0].try_mul(d(g, 0))?.is_one() || !eps[0].try_mul(d(0, g))?.is_one() || (g != 0 && !eps[g].is_zero()) {
            return Ok(Some(ConstraintViolation::Counit(el(g))));
        }
    }
    for f in 0..n {
        for g in 0..n {
            for h in 0..n {
                let lhs = d(h, cay.sub(cay.add(f, g), h));
                let mut rhs = Scalar::zero(&ctx);
                for l in 0..n {
                    let t = d(l, cay.sub(f, l)).try_mul(d(cay.sub(h, l), cay.sub(cay.add(g, l), h)))?;
                    rhs = rhs.try_add(&t)?;
                }
                if *lhs != rhs {
                    return Ok(Some(ConstraintViolation::Multiplicativity(el(f), el(g), el(h))));
                }
            }
        }
    }
    for g in 0..n {
        for h in 0..n {
            if d(g, cay.sub(h, g)) != d(g, cay.neg(g)) {
                return Ok(Some(ConstraintViolation::UnitCompatibility(el(g), el(h))));
            }
        }
    }
    Ok(None)
}

pub fn check_coalgebra_constraints(spec: &GroupSpec, delta: &[Scalar], eps: &[Scalar]) -> Result<bool> {
    Ok(coalgebra_constraint_witness(spec, delta, eps)?.is_none())
}

/// `{"basis":[...], "comul":[{"label","terms":[{"scalar","left","right"}]}], "counit":[{"label","scalar"}]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComultiplicationJson {
    pub basis: Vec<BasisEntryJson>,
    pub comul: Vec<ComulEntryJson>,
    pub counit: Vec<CounitEntryJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComulEntryJson {
    pub label: String,
    pub terms: Vec<CoTermJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoTermJson {
    pub scalar: ScalarJson,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounitEntryJson {
    pub label: String,
    pub scalar: ScalarJson,
}

/// Full weak Hopf data: algebra table, coalgebra tables, antipode images.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeakHopfJson {
    pub algebra: MultiplicationTableJson,
    pub coalgebra: ComultiplicationJson,
    pub antipode: Vec<AntipodeEntryJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AntipodeEntryJson {
    pub label: String,
    pub terms: Vec<LabelTermJson>,
}

impl CoalgebraData {
    pub fn to_json(&self) -> ComultiplicationJson {
        let l = |i: usize| self.basis.label(i).to_string();
        ComultiplicationJson {
            basis: basis_json(&self.basis),
            comul: (0..self.basis.dim())
                .map(|x| ComulEntryJson {
                    label: l(x),
                    terms: self.comul[x]
                        .iter()
                        .map(|t| CoTermJson {
                            scalar: ScalarJson::from(&t.coeff),
                            left: l(t.left),
                            right: l(t.right),
                        })
                        .collect(),
                })
                .collect(),
            counit: (0..self.basis.dim())
                .map(|x| CounitEntryJson {
                    label: l(x),
                    scalar: ScalarJson::from(&self.counit[x]),
                })
                .collect(),
        }
    }
}

impl WeakHopfData {
    pub fn to_json(&self) -> WeakHopfJson {
        let basis = self.algebra.basis();
        WeakHopfJson {
            algebra: self.algebra.to_json(),
            coalgebra: self.coalgebra.to_json(),
            antipode: (0..basis.dim())
                .map(|x| AntipodeEntryJson {
                    label: basis.label(x).to_string(),
                    terms: lincomb_json(basis, &self.antipode[x]),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::{build_f_clifford, build_f_octonion};

    fn z(orders: &[u32]) -> GroupSpec {
        GroupSpec::new(orders.to_vec()).unwrap()
    }

    fn passes(h: &WeakHopfData, phi: &Cochain3, r: &Braiding) -> AxiomReport {
        let rep = verify_weak_hopf(h, phi, r).unwrap();
        assert!(verify_algebra(h, phi).unwrap().is_none());
        rep
    }

    #[test]
    fn canonical_z2_tables() {
        let ctx = ScalarContext::rational();
        let h = canonical_weak_hopf(&z(&[2]), &ctx).unwrap();
        let half = Scalar::from_rational(&ctx, Rational::new(1, 2).unwrap());
        let c = h.coalgebra();
        assert_eq!(
            c.comul(1),
            &[
                CoTerm {
                    left: 0,
                    right: 1,
                    coeff: half.clone()
                },
                CoTerm {
                    left: 1,
                    right: 0,
                    coeff: half
                }
            ]
        );
        assert_eq!(c.counit(0), &Scalar::from_integer(&ctx, 2));
        assert!(c.counit(1).is_zero());
        assert_eq!(h.antipode()[1], LinComb::basis(&ctx, 1));
        assert!(!h.is_ordinary_hopf());
    }

    #[test]
    fn canonical_cyclic_all_axioms() {
        let ctx = ScalarContext::rational();
        for n in 2..=6 {
            let spec = z(&[n]);
            let h = canonical_weak_hopf(&spec, &ctx).unwrap();
            let rep = passes(&h, &Cochain3::trivial(&spec, &ctx), &Braiding::trivial(&spec, &ctx));
            assert!(rep.all_pass(), "Z_{n}: {rep:?}");
        }
    }

    #[test]
    fn twisted_gca_all_axioms() {
        for (n, m) in [(2, 1), (3, 1), (2, 2), (3, 2)] {
            let p = GcaParams::symbolic(n, m).unwrap();
            let f = build_f_gca(&p).unwrap();
            let h = twisted_weak_hopf(&f).unwrap();
            let rep = passes(&h, &f.coboundary(), &f.braiding());
            assert!(rep.all_pass(), "({n},{m}): {rep:?}");
        }
    }

    #[test]
    fn octonion_and_clifford_all_axioms() {
        for f in [build_f_octonion(3).unwrap(), build_f_clifford(2).unwrap()] {
            let h = twisted_weak_hopf(&f).unwrap();
            let rep = passes(&h, &f.coboundary(), &f.braiding());
            assert!(rep.all_pass(), "{rep:?}");
        }
    }

    #[test]
    fn octonion_fails_in_the_flat_category() {
        let f = build_f_octonion(3).unwrap();
        let h = twisted_weak_hopf(&f).unwrap();
        let flat = Cochain3::trivial(f.spec(), f.ctx());
        let rep = verify_weak_hopf(&h, &flat, &f.braiding()).unwrap();
        assert!(!rep.all_pass());
        assert!(verify_algebra(&h, &flat).unwrap().is_some());
    }

    #[test]
    fn perturbed_counit_is_caught() {
        let ctx = ScalarContext::rational();
        let spec = z(&[2]);
        let h = canonical_weak_hopf(&spec, &ctx).unwrap();
        let bad = h
            .coalgebra()
            .with_counit(vec![Scalar::one(&ctx), Scalar::zero(&ctx)])
            .unwrap();
        let h = h.with_coalgebra(bad).unwrap();
        let rep = verify_weak_hopf(&h, &Cochain3::trivial(&spec, &ctx), &Braiding::trivial(&spec, &ctx)).unwrap();
        assert!(!rep.passes(Axiom::Counit));
        assert_eq!(rep.counterexample(Axiom::Counit).unwrap(), &["u_(0)".to_string()]);
        assert!(!rep.passes(Axiom::Antipode1));
        let json = serde_json::to_value(rep.to_json()).unwrap();
        assert_eq!(json["axioms"]["counit"], false);
        assert_eq!(json["counterexamples"]["counit"][0], "u_(0)");
    }

    #[test]
    fn gca_transport_matches_closed_form() {
        for (n, m) in [(2, 1), (3, 1), (2, 2), (3, 2), (2, 3)] {
            let p = GcaParams::symbolic(n, m).unwrap();
            let h = gca_weak_hopf(&p).unwrap();
            let direct = gca_comul_direct(&p, QFactor::Inverted).unwrap();
            let ident: Vec<usize> = (0..direct.basis().dim()).collect();
            assert_eq!(h.coalgebra().table_mismatch(&direct, &ident).unwrap(), None);
            let printed = gca_comul_direct(&p, QFactor::AsPrinted).unwrap();
            assert!(h.coalgebra().table_mismatch(&printed, &ident).unwrap().is_some());
        }
    }

    #[test]
    fn gca_n2_m1_values() {
        let p = GcaParams::symbolic(2, 1).unwrap();
        let h = gca_weak_hopf(&p).unwrap();
        let ctx = p.ctx();
        let b = h.algebra().basis();
        let (one, e1) = (b.index_of("1").unwrap(), b.index_of("e1").unwrap());
        assert_eq!(h.coalgebra().counit(one), &Scalar::from_integer(ctx, 2));
        assert!(h.coalgebra().counit(e1).is_zero());
        let half = Rational::new(1, 2).unwrap();
        let q_inv = Scalar::q(ctx, 0).unwrap().try_invert().unwrap().scale(&half);
        let t = h.coalgebra().comul(one).iter().find(|t| t.left == e1).unwrap();
        assert_eq!(t.coeff, q_inv);
        let rep = verify_weak_hopf(&h, h.algebra().phi(), h.algebra().braiding().unwrap()).unwrap();
        assert!(rep.all_pass());
    }

    #[test]
    fn as_printed_closed_form_fails_multiplicativity() {
        let p = GcaParams::symbolic(2, 1).unwrap();
        let h = gca_weak_hopf(&p).unwrap();
        let printed = h
            .with_coalgebra(gca_comul_direct(&p, QFactor::AsPrinted).unwrap())
            .unwrap();
        let rep = verify_weak_hopf(&printed, h.algebra().phi(), h.algebra().braiding().unwrap()).unwrap();
        assert!(!rep.passes(Axiom::DeltaMult));
    }

    #[test]
    fn uniqueness_derivation() {
        for orders in [vec![2], vec![5], vec![2, 2], vec![3, 3]] {
            let spec = z(&orders);
            let n = spec.order() as i64;
            let d = derive_unique_coalgebra(&spec).unwrap();
            assert_eq!(d.constant, Rational::new(1, n).unwrap());
            assert_eq!(d.classes_after_unit_compat, 1);
            let delta: Vec<Scalar> = (0..n * n)
                .map(|_| Scalar::from_rational(&ScalarContext::rational(), d.constant.clone()))
                .collect();
            assert!(check_coalgebra_constraints(&spec, &delta, d.coalgebra.counits()).unwrap());
            let canon = canonical_weak_hopf(&spec, &ScalarContext::rational()).unwrap();
            let ident: Vec<usize> = (0..n as usize).collect();
            assert_eq!(d.coalgebra.table_mismatch(canon.coalgebra(), &ident).unwrap(), None);
        }
    }

    #[test]
    fn half_constant_rejected() {
        let spec = z(&[3]);
        let ctx = ScalarContext::rational();
        let c = Scalar::from_rational(&ctx, Rational::new(1, 6).unwrap());
        let delta = vec![c; 9];
        let eps = vec![Scalar::from_integer(&ctx, 6), Scalar::zero(&ctx), Scalar::zero(&ctx)];
        assert!(matches!(
            coalgebra_constraint_witness(&spec, &delta, &eps).unwrap(),
            Some(ConstraintViolation::Multiplicativity(..))
        ));
    }

    #[test]
    fn tensor_of_canonical_coalgebras() {
        let ctx = ScalarContext::rational();
        let small = z(&[3]);
        let big = z(&[3, 3]);
        let c = canonical_weak_hopf(&small, &ctx).unwrap().coalgebra().clone();
        let left = c.embed_grading(&big, 0).unwrap();
        let right = c.embed_grading(&big, 1).unwrap();
        let t = braided_tensor_coalgebra(
            &left,
            &right,
            &Cochain3::trivial(&big, &ctx),
            &Braiding::trivial(&big, &ctx),
        )
        .unwrap();
        assert_eq!(t.counit(0), &Scalar::from_integer(&ctx, 9));
        let canon = canonical_weak_hopf(&big, &ctx).unwrap();
        let ident: Vec<usize> = (0..9).collect();
        assert_eq!(t.table_mismatch(canon.coalgebra(), &ident).unwrap(), None);
        assert!(t.check_coalgebra(&Cochain3::trivial(&big, &ctx)).unwrap());
    }
}
