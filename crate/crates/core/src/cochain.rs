//! Normalized 2- and 3-cochains on a finite abelian group, the coboundary
//! operator, cocycle and braiding predicates, and the named cochains.
//!
//! Tables are dense, indexed by the lexicographic element order of
//! [`GroupSpec`]. Every predicate here is an exhaustive quantification over
//! group tuples and reports the first failing tuple in that order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Cayley, GroupElement, GroupSpec};
use crate::scalar::{expanded_eq, product_of, Expanded, Scalar, ScalarContext, ScalarJson};

/// Parameters of a generalized Clifford algebra C^{(n)}(q_1, ..., q_m).
#[derive(Clone, Debug)]
pub struct GcaParams {
    n: u32,
    ctx: ScalarContext,
    q: Vec<Scalar>,
}

impl GcaParams {
    /// q_1..q_m kept symbolic: scalars live in (n, m).
    pub fn symbolic(n: u32, m: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Parameter(format!("n = {n} must be ≥ 2")));
        }
        if m == 0 {
            return Err(Error::Parameter("m must be ≥ 1".into()));
        }
        let ctx = ScalarContext::new(n, m)?;
        let q = (0..m).map(|i| Scalar::q(&ctx, i)).collect::<Result<_>>()?;
        Ok(GcaParams { n, ctx, q })
    }

    /// Explicit invertible values for q_1..q_m, all in a context of order n.
    pub fn explicit(n: u32, values: Vec<Scalar>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Parameter(format!("n = {n} must be ≥ 2")));
        }
        let first = values
            .first()
            .ok_or_else(|| Error::Parameter("at least one q value is required".into()))?;
        let ctx = first.ctx().clone();
        if ctx.order() != n {
            return Err(Error::Context(format!(
                "q values live in Q(ω_{}) but n = {n}",
                ctx.order()
            )));
        }
        for v in &values {
            ctx.check(v.ctx())?;
            if !v.is_invertible() {
                return Err(Error::NotInvertible(format!("q value {v}")));
            }
        }
        Ok(GcaParams { n, ctx, q: values })
    }

    /// Keeps q_lo..q_hi (zero-based, half open), for tensor factors.
    pub fn slice(&self, lo: usize, hi: usize) -> Result<Self> {
        if lo >= hi || hi > self.q.len() {
            return Err(Error::Parameter(format!("q range {lo}..{hi} of {}", self.q.len())));
        }
        Ok(GcaParams {
            n: self.n,
            ctx: self.ctx.clone(),
            q: self.q[lo..hi].to_vec(),
        })
    }

    /// Specializes symbolic parameters through [`Scalar::evaluate`].
    pub fn evaluate(&self, values: &[Scalar]) -> Result<Self> {
        let q = self.q.iter().map(|s| s.evaluate(values)).collect::<Result<Vec<_>>>()?;
        Self::explicit(self.n, q)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> usize {
        self.q.len()
    }

    pub fn ctx(&self) -> &ScalarContext {
        &self.ctx
    }

    pub fn q(&self) -> &[Scalar] {
        &self.q
    }

    pub fn group(&self) -> Result<GroupSpec> {
        GroupSpec::cyclic_power(self.n, self.m())
    }
}

fn check_spec_ctx(spec: &GroupSpec, ctx: &ScalarContext, a: (&GroupSpec, &ScalarContext)) -> Result<()> {
    spec.check(a.0)?;
    ctx.check(a.1)
}

fn expand_all(table: &[Scalar]) -> Vec<Expanded> {
    table.iter().map(Scalar::expand).collect()
}

/// A normalized 2-cochain F: G × G → k*.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain2 {
    spec: GroupSpec,
    ctx: ScalarContext,
    table: Vec<Scalar>,
}

impl Cochain2 {
    /// Validates totality, normalization F(g,0) = F(0,g) = 1, and invertibility.
    pub fn from_table(spec: &GroupSpec, ctx: &ScalarContext, table: Vec<Scalar>) -> Result<Self> {
        let size = spec.order();
        if table.len() != size * size {
            return Err(Error::Structural(format!(
                "2-cochain table has {} entries, expected {}",
                table.len(),
                size * size
            )));
        }
        for (i, v) in table.iter().enumerate() {
            ctx.check(v.ctx())?;
            if !v.is_invertible() {
                return Err(Error::NotInvertible(format!(
                    "F{} = {v}",
                    pair_str(spec, i / size, i % size)
                )));
            }
        }
        for g in 0..size {
            if !table[g * size].is_one() || !table[g].is_one() {
                return Err(Error::Structural(format!(
                    "2-cochain not normalized at {}",
                    spec.element_at(g)
                )));
            }
        }
        Ok(Cochain2 {
            spec: spec.clone(),
            ctx: ctx.clone(),
            table,
        })
    }

    pub fn from_fn(
        spec: &GroupSpec,
        ctx: &ScalarContext,
        mut f: impl FnMut(&GroupElement, &GroupElement) -> Result<Scalar>,
    ) -> Result<Self> {
        let elems = spec.enumerate();
        let mut table = Vec::with_capacity(elems.len() * elems.len());
        for g in &elems {
            for h in &elems {
                table.push(f(g, h)?);
            }
        }
        Self::from_table(spec, ctx, table)
    }

    pub fn trivial(spec: &GroupSpec, ctx: &ScalarContext) -> Self {
        let size = spec.order();
        Cochain2 {
            spec: spec.clone(),
            ctx: ctx.clone(),
            table: vec![Scalar::one(ctx); size * size],
        }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn ctx(&self) -> &ScalarContext {
        &self.ctx
    }

    pub fn table(&self) -> &[Scalar] {
        &self.table
    }

    /// F(g, h) by element index.
    #[inline]
    pub fn value(&self, g: usize, h: usize) -> &Scalar {
        &self.table[g * self.spec.order() + h]
    }

    pub fn at(&self, g: &GroupElement, h: &GroupElement) -> Result<&Scalar> {
        Ok(self.value(self.spec.index_of(g)?, self.spec.index_of(h)?))
    }

    pub fn is_trivial(&self) -> bool {
        self.table.iter().all(Scalar::is_one)
    }

    /// ∂F(x,y,z) = F(x,y) F(x+y,z) F(x,y+z)^{-1} F(y,z)^{-1}.
    pub fn coboundary(&self) -> Cochain3 {
        let cay = self.spec.cayley();
        let size = cay.size();
        let arith = self.ctx.root_arith();
        let fwd = expand_all(&self.table);
        let inv: Vec<Expanded> = self
            .table
            .iter()
            .map(|s| s.try_invert().expect("cochain values are invertible").expand())
            .collect();
        let mut table = Vec::with_capacity(size * size * size);
        let mut cache: std::collections::HashMap<Vec<(String, u32, Vec<i32>)>, Scalar> = Default::default();
        for x in 0..size {
            for y in 0..size {
                let xy = cay.add(x, y);
                for z in 0..size {
                    let yz = cay.add(y, z);
                    let prod = product_of(
                        &arith,
                        &[
                            &fwd[x * size + y],
                            &fwd[xy * size + z],
                            &inv[x * size + yz],
                            &inv[y * size + z],
                        ],
                    );
                    table.push(to_scalar_cached(&mut cache, &prod, &self.ctx));
                }
            }
        }
        Cochain3 {
            spec: self.spec.clone(),
            ctx: self.ctx.clone(),
            table,
        }
    }

    /// First triple with F(x,y) F(x+y,z) ≠ F(x,y+z) F(y,z), i.e. ∂F ≠ 1.
    pub fn cocycle_witness(&self) -> Option<(GroupElement, GroupElement, GroupElement)> {
        let cay = self.spec.cayley();
        let size = cay.size();
        let arith = self.ctx.root_arith();
        let field = self.ctx.field();
        let e = expand_all(&self.table);
        for x in 0..size {
            for y in 0..size {
                let xy = cay.add(x, y);
                for z in 0..size {
                    let yz = cay.add(y, z);
                    let lhs = product_of(&arith, &[&e[x * size + y], &e[xy * size + z]]);
                    let rhs = product_of(&arith, &[&e[x * size + yz], &e[y * size + z]]);
                    if !expanded_eq(field, &lhs, &rhs) {
                        return Some((
                            self.spec.element_at(x),
                            self.spec.element_at(y),
                            self.spec.element_at(z),
                        ));
                    }
                }
            }
        }
        None
    }

    /// ∂F ≡ 1.
    pub fn is_2cocycle(&self) -> bool {
        self.cocycle_witness().is_none()
    }

    /// R_F(g,h) = F(g,h) F(h,g)^{-1}.
    pub fn braiding(&self) -> Braiding {
        let size = self.spec.order();
        let mut table = Vec::with_capacity(size * size);
        for g in 0..size {
            for h in 0..size {
                let back = self.value(h, g).try_invert().expect("cochain values are invertible");
                table.push(self.value(g, h) * &back);
            }
        }
        Braiding {
            spec: self.spec.clone(),
            ctx: self.ctx.clone(),
            table,
        }
    }

    /// Pointwise inverse F^{-1}(g,h) = 1 / F(g,h).
    pub fn invert(&self) -> Cochain2 {
        Cochain2 {
            spec: self.spec.clone(),
            ctx: self.ctx.clone(),
            table: self
                .table
                .iter()
                .map(|s| s.try_invert().expect("cochain values are invertible"))
                .collect(),
        }
    }

    pub fn pointwise_product(&self, other: &Cochain2) -> Result<Cochain2> {
        check_spec_ctx(&self.spec, &self.ctx, (&other.spec, &other.ctx))?;
        Ok(Cochain2 {
            spec: self.spec.clone(),
            ctx: self.ctx.clone(),
            table: self
                .table
                .iter()
                .zip(&other.table)
                .map(|(a, b)| a.try_mul(b))
                .collect::<Result<_>>()?,
        })
    }
}

/// Memoized projection of expanded products back to canonical scalars; most
/// tables take only a handful of distinct values.
fn to_scalar_cached(
    cache: &mut std::collections::HashMap<Vec<(String, u32, Vec<i32>)>, Scalar>,
    prod: &[crate::scalar::Term],
    ctx: &ScalarContext,
) -> Scalar {
    let key: Vec<(String, u32, Vec<i32>)> = prod
        .iter()
        .map(|t| (t.coeff.to_string(), t.root, t.q.as_slice().to_vec()))
        .collect();
    if let Some(s) = cache.get(&key) {
        return s.clone();
    }
    let mut sum = crate::scalar::TermSum::new();
    sum.add_all(prod.iter());
    let s = sum.to_scalar(ctx).expect("terms share the context");
    cache.insert(key, s.clone());
    s
}

fn pair_str(spec: &GroupSpec, g: usize, h: usize) -> String {
    format!("({}, {})", spec.element_at(g), spec.element_at(h))
}

/// A normalized 3-cochain Φ: G × G × G → k*.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain3 {
    spec: GroupSpec,
    ctx: ScalarContext,
    table: Vec<Scalar>,
}

impl Cochain3 {
    /// Validates totality, Φ(x,0,y) = 1 and invertibility.
    pub fn from_table(spec: &GroupSpec, ctx: &ScalarContext, table: Vec<Scalar>) -> Result<Self> {
        let size = spec.order();
        if table.len() != size * size * size {
            return Err(Error::Structural(format!(
                "3-cochain table has {} entries, expected {}",
                table.len(),
                size * size * size
            )));
        }
        for v in &table {
            ctx.check(v.ctx())?;
            if !v.is_invertible() {
                return Err(Error::NotInvertible(format!("3-cochain value {v}")));
            }
        }
        for x in 0..size {
            for y in 0..size {
                if !table[x * size * size + y].is_one() {
                    return Err(Error::Structural(format!(
                        "3-cochain not normalized: Φ({}, 0, {}) ≠ 1",
                        spec.element_at(x),
                        spec.element_at(y)
                    )));
                }
            }
        }
        Ok(Cochain3 {
            spec: spec.clone(),
            ctx: ctx.clone(),
            table,
        })
    }

    pub fn from_fn(
        spec: &GroupSpec,
        ctx: &ScalarContext,
        mut f: impl FnMut(&GroupElement, &GroupElement, &GroupElement) -> Result<Scalar>,
    ) -> Result<Self> {
        let elems = spec.enumerate();
        let mut table = Vec::with_capacity(elems.len().pow(3));
        for x in &elems {
            for y in &elems {
                for z in &elems {
                    table.push(f(x, y, z)?);
                }
            }
        }
        Self::from_table(spec, ctx, table)
    }

    pub fn trivial(spec: &GroupSpec, ctx: &ScalarContext) -> Self {
        let size = spec.order();
        Cochain3 {
            spec: spec.clone(),
            ctx: ctx.clone(),
            table: vec![Scalar::one(ctx); size * size * size],
        }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn ctx(&self) -> &ScalarContext {
        &self.ctx
    }

    pub fn table(&self) -> &[Scalar] {
        &self.table
    }

    #[inline]
    pub fn value(&self, x: usize, y: usize, z: usize) -> &Scalar {
        let n = self.spec.order();
        &self.table[(x * n + y) * n + z]
    }

    pub fn is_trivial(&self) -> bool {
        self.table.iter().all(Scalar::is_one)
    }

    /// First (x,y,z,t) violating
    /// Φ(y,z,t) Φ(x,y+z,t) Φ(x,y,z) = Φ(x,y,z+t) Φ(x+y,z,t).
    pub fn pentagon_witness(&self) -> Option<[GroupElement; 4]> {
        let cay = self.spec.cayley();
        let n = cay.size();
        let arith = self.ctx.root_arith();
        let field = self.ctx.field();
        let e = expand_all(&self.table);
        let at = |x: usize, y: usize, z: usize| &e[(x * n + y) * n + z];
        for x in 0..n {
            for y in 0..n {
                let xy = cay.add(x, y);
                for z in 0..n {
                    let yz = cay.add(y, z);
                    for t in 0..n {
                        let zt = cay.add(z, t);
                        let lhs = product_of(&arith, &[at(y, z, t), at(x, yz, t), at(x, y, z)]);
                        let rhs = product_of(&arith, &[at(x, y, zt), at(xy, z, t)]);
                        if !expanded_eq(field, &lhs, &rhs) {
                            let el = |i| self.spec.element_at(i);
                            return Some([el(x), el(y), el(z), el(t)]);
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_3cocycle(&self) -> bool {
        self.pentagon_witness().is_none()
    }

    pub fn pointwise_product(&self, other: &Cochain3) -> Result<Cochain3> {
        check_spec_ctx(&self.spec, &self.ctx, (&other.spec, &other.ctx))?;
        Ok(Cochain3 {
            spec: self.spec.clone(),
            ctx: self.ctx.clone(),
            table: self
                .table
                .iter()
                .zip(&other.table)
                .map(|(a, b)| a.try_mul(b))
                .collect::<Result<_>>()?,
        })
    }

    pub fn invert(&self) -> Cochain3 {
        Cochain3 {
            spec: self.spec.clone(),
            ctx: self.ctx.clone(),
            table: self
                .table
                .iter()
                .map(|s| s.try_invert().expect("cochain values are invertible"))
                .collect(),
        }
    }

    pub(crate) fn expanded(&self) -> Vec<Expanded> {
        expand_all(&self.table)
    }
}

/// A braiding candidate R: G × G → k*.
#[derive(Clone, Debug, PartialEq)]
pub struct Braiding {
    spec: GroupSpec,
    ctx: ScalarContext,
    table: Vec<Scalar>,
}

/// Which braiding law failed, with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BraidingViolation {
    Symmetry(GroupElement, GroupElement),
    /// R(x+y, z) hexagon.
    LeftHexagon(GroupElement, GroupElement, GroupElement),
    /// R(x, y+z) hexagon.
    RightHexagon(GroupElement, GroupElement, GroupElement),
}

impl Braiding {
    pub fn from_table(spec: &GroupSpec, ctx: &ScalarContext, table: Vec<Scalar>) -> Result<Self> {
        let size = spec.order();
        if table.len() != size * size {
            return Err(Error::Structural(format!(
                "braiding table has {} entries, expected {}",
                table.len(),
                size * size
            )));
        }
        for v in &table {
            ctx.check(v.ctx())?;
            if !v.is_invertible() {
                return Err(Error::NotInvertible(format!("braiding value {v}")));
            }
        }
        Ok(Braiding {
            spec: spec.clone(),
            ctx: ctx.clone(),
            table,
        })
    }

    pub fn from_fn(
        spec: &GroupSpec,
        ctx: &ScalarContext,
        mut f: impl FnMut(&GroupElement, &GroupElement) -> Result<Scalar>,
    ) -> Result<Self> {
        let elems = spec.enumerate();
        let mut table = Vec::with_capacity(elems.len() * elems.len());
        for g in &elems {
            for h in &elems {
                table.push(f(g, h)?);
            }
        }
        Self::from_table(spec, ctx, table)
    }

    pub fn trivial(spec: &GroupSpec, ctx: &ScalarContext) -> Self {
        let size = spec.order();
        Braiding {
            spec: spec.clone(),
            ctx: ctx.clone(),
            table: vec![Scalar::one(ctx); size * size],
        }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn ctx(&self) -> &ScalarContext {
        &self.ctx
    }

    pub fn table(&self) -> &[Scalar] {
        &self.table
    }

    #[inline]
    pub fn value(&self, g: usize, h: usize) -> &Scalar {
        &self.table[g * self.spec.order() + h]
    }

    pub fn is_trivial(&self) -> bool {
        self.table.iter().all(Scalar::is_one)
    }

    pub fn symmetry_witness(&self) -> Option<BraidingViolation> {
        let n = self.spec.order();
        for g in 0..n {
            for h in 0..n {
                if !(self.value(g, h) * self.value(h, g)).is_one() {
                    return Some(BraidingViolation::Symmetry(
                        self.spec.element_at(g),
                        self.spec.element_at(h),
                    ));
                }
            }
        }
        None
    }

    /// R(x,y) R(y,x) = 1 for all x, y.
    pub fn is_symmetric(&self) -> bool {
        self.symmetry_witness().is_none()
    }

    /// Both hexagon identities, cleared of denominators:
    /// R(x+y,z) Φ(x,z,y) = R(x,z) R(y,z) Φ(z,x,y) Φ(x,y,z) and
    /// R(x,y+z) Φ(y,z,x) Φ(x,y,z) = R(x,y) R(x,z) Φ(y,x,z).
    pub fn hexagon_witness(&self, phi: &Cochain3) -> Result<Option<BraidingViolation>> {
        check_spec_ctx(&self.spec, &self.ctx, (&phi.spec, &phi.ctx))?;
        let cay: Cayley = self.spec.cayley();
        let n = cay.size();
        let arith = self.ctx.root_arith();
        let field = self.ctx.field();
        let r = expand_all(&self.table);
        let p = phi.expanded();
        let rv = |a: usize, b: usize| &r[a * n + b];
        let pv = |a: usize, b: usize, c: usize| &p[(a * n + b) * n + c];
        let el = |i| self.spec.element_at(i);
        for x in 0..n {
            for y in 0..n {
                let xy = cay.add(x, y);
                for z in 0..n {
                    let lhs = product_of(&arith, &[rv(xy, z), pv(x, z, y)]);
                    let rhs = product_of(&arith, &[rv(x, z), rv(y, z), pv(z, x, y), pv(x, y, z)]);
                    if !expanded_eq(field, &lhs, &rhs) {
                        return Ok(Some(BraidingViolation::LeftHexagon(el(x), el(y), el(z))));
                    }
                    let yz = cay.add(y, z);
                    let lhs = product_of(&arith, &[rv(x, yz), pv(y, z, x), pv(x, y, z)]);
                    let rhs = product_of(&arith, &[rv(x, y), rv(x, z), pv(y, x, z)]);
                    if !expanded_eq(field, &lhs, &rhs) {
                        return Ok(Some(BraidingViolation::RightHexagon(el(x), el(y), el(z))));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_quasi_bicharacter(&self, phi: &Cochain3) -> Result<bool> {
        Ok(self.hexagon_witness(phi)?.is_none())
    }

    pub fn pointwise_product(&self, other: &Braiding) -> Result<Braiding> {
        check_spec_ctx(&self.spec, &self.ctx, (&other.spec, &other.ctx))?;
        Ok(Braiding {
            spec: self.spec.clone(),
            ctx: self.ctx.clone(),
            table: self
                .table
                .iter()
                .zip(&other.table)
                .map(|(a, b)| a.try_mul(b))
                .collect::<Result<_>>()?,
        })
    }
}

/// F_GCA(g,h) = ω^{Σ_{j<i} g_i h_j} · Π_i q_i^{[(g_i + h_i)/n]}.
pub fn build_f_gca(params: &GcaParams) -> Result<Cochain2> {
    let spec = params.group()?;
    let ctx = params.ctx();
    let m = params.m();
    Cochain2::from_fn(&spec, ctx, |g, h| {
        let (gr, hr) = (g.residues(), h.residues());
        let mut e: i64 = 0;
        for i in 0..m {
            for j in 0..i {
                e += gr[i] as i64 * hr[j] as i64;
            }
        }
        let mut v = Scalar::omega_pow(ctx, e);
        for (i, q) in params.q().iter().enumerate() {
            if g.carry(h, i)? == 1 {
                v = v.try_mul(q)?;
            }
        }
        Ok(v)
    })
}

/// R_GCA(g,h) = ω^{Σ_{j<i} (g_i h_j − g_j h_i)}, evaluated directly.
pub fn gca_braiding_direct(params: &GcaParams) -> Result<Braiding> {
    let spec = params.group()?;
    let ctx = params.ctx();
    let m = params.m();
    Braiding::from_fn(&spec, ctx, |g, h| {
        let (gr, hr) = (g.residues(), h.residues());
        let mut e: i64 = 0;
        for i in 0..m {
            for j in 0..i {
                e += gr[i] as i64 * hr[j] as i64 - gr[j] as i64 * hr[i] as i64;
            }
        }
        Ok(Scalar::omega_pow(ctx, e))
    })
}

/// f_1(x,y) = Σ_i x_i y_i
fn f1(x: &[u32], y: &[u32]) -> u32 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// f_2(x,y) = Σ_{i<j} x_i y_j
fn f2(x: &[u32], y: &[u32]) -> u32 {
    let mut s = 0;
    for i in 0..x.len() {
        for j in i + 1..y.len() {
            s += x[i] * y[j];
        }
    }
    s
}

/// f_3(x,y) = Σ x_i x_j y_k over pairwise distinct i, j, k with i < j.
fn f3(x: &[u32], y: &[u32]) -> u32 {
    let m = x.len();
    let mut s = 0;
    for i in 0..m {
        for j in i + 1..m {
            for k in 0..m {
                if k != i && k != j {
                    s += x[i] * x[j] * y[k];
                }
            }
        }
    }
    s
}

fn sign_cochain(m: usize, exponent: impl Fn(&[u32], &[u32]) -> u32) -> Result<Cochain2> {
    let spec = GroupSpec::cyclic_power(2, m)?;
    let ctx = ScalarContext::new(2, 0)?;
    Cochain2::from_fn(&spec, &ctx, |g, h| {
        let e = exponent(g.residues(), h.residues());
        Ok(Scalar::from_integer(&ctx, if e.is_multiple_of(2) { 1 } else { -1 }))
    })
}

/// F_Cl(x,y) = (−1)^{f_1 + f_2} on Z_2^m.
pub fn build_f_clifford(m: usize) -> Result<Cochain2> {
    sign_cochain(m, |x, y| f1(x, y) + f2(x, y))
}

/// F_O(x,y) = (−1)^{f_1 + f_2 + f_3} on Z_2^m, m ≥ 3.
pub fn build_f_octonion(m: usize) -> Result<Cochain2> {
    if m < 3 {
        return Err(Error::Parameter(format!("octonion cochain needs m ≥ 3, got {m}")));
    }
    sign_cochain(m, |x, y| f1(x, y) + f2(x, y) + f3(x, y))
}

/// `{"orders":[...], "entries":[{"g":[...],"h":[...],"value":<Scalar>}]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CochainJson {
    pub orders: Vec<u32>,
    pub entries: Vec<CochainEntryJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CochainEntryJson {
    pub g: Vec<u32>,
    pub h: Vec<u32>,
    pub value: ScalarJson,
}

/// 3-cochain tables add the third argument `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cochain3Json {
    pub orders: Vec<u32>,
    pub entries: Vec<Cochain3EntryJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cochain3EntryJson {
    pub g: Vec<u32>,
    pub h: Vec<u32>,
    pub k: Vec<u32>,
    pub value: ScalarJson,
}

fn pair_table_json(spec: &GroupSpec, table: &[Scalar]) -> CochainJson {
    let n = spec.order();
    CochainJson {
        orders: spec.orders().to_vec(),
        entries: table
            .iter()
            .enumerate()
            .map(|(i, v)| CochainEntryJson {
                g: spec.residues_at(i / n).to_vec(),
                h: spec.residues_at(i % n).to_vec(),
                value: ScalarJson::from(v),
            })
            .collect(),
    }
}

fn pair_table_from_json(j: &CochainJson) -> Result<(GroupSpec, ScalarContext, Vec<Scalar>)> {
    let spec = GroupSpec::new(j.orders.clone())?;
    let n = spec.order();
    let mut slots: Vec<Option<Scalar>> = vec![None; n * n];
    let mut ctx: Option<ScalarContext> = None;
    for e in &j.entries {
        let g = spec.element(&e.g)?.index();
        let h = spec.element(&e.h)?.index();
        let v = Scalar::try_from(&e.value)?;
        match &ctx {
            Some(c) => c.check(v.ctx())?,
            None => ctx = Some(v.ctx().clone()),
        }
        if slots[g * n + h].replace(v).is_some() {
            return Err(Error::Json(format!("duplicate entry {}", pair_str(&spec, g, h))));
        }
    }
    let table = slots
        .into_iter()
        .enumerate()
        .map(|(i, s)| s.ok_or_else(|| Error::Structural(format!("missing entry {}", pair_str(&spec, i / n, i % n)))))
        .collect::<Result<Vec<_>>>()?;
    let ctx = ctx.ok_or_else(|| Error::Json("empty cochain table".into()))?;
    Ok((spec, ctx, table))
}

impl Cochain2 {
    pub fn to_json(&self) -> CochainJson {
        pair_table_json(&self.spec, &self.table)
    }

    pub fn from_json(j: &CochainJson) -> Result<Self> {
        let (spec, ctx, table) = pair_table_from_json(j)?;
        Self::from_table(&spec, &ctx, table)
    }
}

impl Braiding {
    pub fn to_json(&self) -> CochainJson {
        pair_table_json(&self.spec, &self.table)
    }

    pub fn from_json(j: &CochainJson) -> Result<Self> {
        let (spec, ctx, table) = pair_table_from_json(j)?;
        Self::from_table(&spec, &ctx, table)
    }
}

impl Cochain3 {
    pub fn to_json(&self) -> Cochain3Json {
        let n = self.spec.order();
        Cochain3Json {
            orders: self.spec.orders().to_vec(),
            entries: self
                .table
                .iter()
                .enumerate()
                .map(|(i, v)| Cochain3EntryJson {
                    g: self.spec.residues_at(i / (n * n)).to_vec(),
                    h: self.spec.residues_at((i / n) % n).to_vec(),
                    k: self.spec.residues_at(i % n).to_vec(),
                    value: ScalarJson::from(v),
                })
                .collect(),
        }
    }
}
