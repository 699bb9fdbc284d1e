//! Exact scalars: Laurent polynomials in symbolic parameters q_1..q_m with
//! coefficients in the cyclotomic field Q(ω_n).

mod cyclo;
mod expand;
mod json;
mod poly;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;

pub use cyclo::{cyclotomic_modulus, CycloField, CycloNumber};
pub use expand::{expanded_eq, mul_expanded, product_of, Expanded, RootArith, Term, TermSum};
pub use json::ScalarJson;
pub use poly::Polynomial;
pub use rational::Rational;

use crate::error::{Error, Result};

/// Laurent exponent vector of a q-monomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QExponent(pub SmallVec<[i32; 4]>);

impl QExponent {
    pub fn zero(arity: usize) -> Self {
        QExponent(SmallVec::from_elem(0, arity))
    }

    pub fn unit(arity: usize, i: usize) -> Self {
        let mut q = Self::zero(arity);
        q.0[i] = 1;
        q
    }

    pub fn from_slice(exps: &[i32]) -> Self {
        QExponent(SmallVec::from_slice(exps))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, other: &QExponent) -> QExponent {
        QExponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> QExponent {
        QExponent(self.0.iter().map(|a| -a).collect())
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }
}

impl fmt::Debug for QExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// The pair (n, m): cyclotomic order and number of symbolic parameters.
#[derive(Clone)]
pub struct ScalarContext {
    field: Arc<CycloField>,
    arity: usize,
}

impl ScalarContext {
    pub fn new(order: u32, arity: usize) -> Result<Self> {
        Ok(ScalarContext {
            field: CycloField::get(order)?,
            arity,
        })
    }

    /// Plain rationals: Q(ω_1) with no parameters.
    pub fn rational() -> Self {
        Self::new(1, 0).expect("order 1 is valid")
    }

    pub fn order(&self) -> u32 {
        self.field.order()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn root_arith(&self) -> RootArith {
        RootArith::new(&self.field)
    }

    pub fn check(&self, other: &ScalarContext) -> Result<()> {
        if self != other {
            return Err(Error::Context(format!(
                "scalar contexts (n={}, m={}) and (n={}, m={})",
                self.order(),
                self.arity,
                other.order(),
                other.arity
            )));
        }
        Ok(())
    }
}

impl PartialEq for ScalarContext {
    fn eq(&self, other: &Self) -> bool {
        self.field.order() == other.field.order() && self.arity == other.arity
    }
}

impl Eq for ScalarContext {}

impl fmt::Debug for ScalarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, m={})", self.order(), self.arity)
    }
}

/// Finite sum Σ c_v · q^v, stored sorted by exponent with no zero
/// coefficients.
#[derive(Clone)]
pub struct Scalar {
    ctx: ScalarContext,
    terms: Vec<(QExponent, CycloNumber)>,
}

impl Scalar {
    pub fn zero(ctx: &ScalarContext) -> Self {
        Scalar {
            ctx: ctx.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ctx: &ScalarContext) -> Self {
        Self::from_rational(ctx, Rational::one())
    }

    pub fn from_integer(ctx: &ScalarContext, v: i64) -> Self {
        Self::from_rational(ctx, Rational::from_integer(v))
    }

    pub fn from_rational(ctx: &ScalarContext, r: Rational) -> Self {
        Self::monomial(
            ctx,
            CycloNumber::from_rational(&ctx.field, r),
            QExponent::zero(ctx.arity),
        )
    }

    /// `c · ω^k · q^v`
    pub fn root_monomial(ctx: &ScalarContext, c: &Rational, k: i64, q: &[i32]) -> Result<Self> {
        if q.len() != ctx.arity {
            return Err(Error::Context(format!(
                "exponent vector of length {} in arity {}",
                q.len(),
                ctx.arity
            )));
        }
        Ok(Self::monomial(
            ctx,
            CycloNumber::root(&ctx.field, c, k),
            QExponent::from_slice(q),
        ))
    }

    /// ω^k
    pub fn omega_pow(ctx: &ScalarContext, k: i64) -> Self {
        Self::monomial(
            ctx,
            CycloNumber::root(&ctx.field, &Rational::one(), k),
            QExponent::zero(ctx.arity),
        )
    }

    /// The symbolic parameter q_{i+1} (zero-based index `i`).
    pub fn q(ctx: &ScalarContext, i: usize) -> Result<Self> {
        if i >= ctx.arity {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: ctx.arity,
            });
        }
        Ok(Self::monomial(
            ctx,
            CycloNumber::one(&ctx.field),
            QExponent::unit(ctx.arity, i),
        ))
    }

    pub fn monomial(ctx: &ScalarContext, c: CycloNumber, q: QExponent) -> Self {
        debug_assert_eq!(c.order(), ctx.order());
        debug_assert_eq!(q.arity(), ctx.arity);
        let terms = if c.is_zero() { Vec::new() } else { vec![(q, c)] };
        Scalar {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// Builds a canonical scalar from arbitrary (possibly repeated) terms.
    pub fn from_terms(ctx: &ScalarContext, terms: impl IntoIterator<Item = (QExponent, CycloNumber)>) -> Result<Self> {
        let mut map: std::collections::BTreeMap<QExponent, CycloNumber> = Default::default();
        for (q, c) in terms {
            if q.arity() != ctx.arity {
                return Err(Error::Context(format!("exponent arity {} vs {}", q.arity(), ctx.arity)));
            }
            if c.order() != ctx.order() {
                return Err(Error::Context(format!(
                    "cyclotomic order {} vs {}",
                    c.order(),
                    ctx.order()
                )));
            }
            match map.get_mut(&q) {
                Some(acc) => *acc = acc.try_add(&c)?,
                None => {
                    map.insert(q, c);
                }
            }
        }
        Ok(Scalar {
            ctx: ctx.clone(),
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn ctx(&self) -> &ScalarContext {
        &self.ctx
    }

    pub fn terms(&self) -> &[(QExponent, CycloNumber)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(q, c)] if q.is_zero() && c.is_one())
    }

    /// The only term, if there is exactly one.
    pub fn single_term(&self) -> Option<(&QExponent, &CycloNumber)> {
        match self.terms.as_slice() {
            [(q, c)] => Some((q, c)),
            _ => None,
        }
    }

    /// The constant rational value, if the scalar is one.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(q, c)] if q.is_zero() => match c.as_root() {
                Some((r, 0)) => Some(r),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.ctx.check(&other.ctx)?;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => std::cmp::Ordering::Less,
                _ => std::cmp::Ordering::Greater,
            };
            match ord {
                std::cmp::Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = self.terms[i].1.try_add(&other.terms[j].1)?;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(Scalar {
            ctx: self.ctx.clone(),
            terms: out,
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(q, c)| (q.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Scalar {
        if r.is_zero() {
            return Scalar::zero(&self.ctx);
        }
        Scalar {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(q, c)| (q.clone(), c.scale(r))).collect(),
        }
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.ctx.check(&other.ctx)?;
        if let (Some((qa, ca)), Some((qb, cb))) = (self.single_term(), other.single_term()) {
            return Ok(Scalar::monomial(&self.ctx, ca.try_mul(cb)?, qa.add(qb)));
        }
        let mut products = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (qa, ca) in &self.terms {
            for (qb, cb) in &other.terms {
                products.push((qa.add(qb), ca.try_mul(cb)?));
            }
        }
        Scalar::from_terms(&self.ctx, products)
    }

    /// Inverse of a nonzero single-term scalar `c · q^v`, namely
    /// `c^{-1} · q^{-v}`.
    pub fn try_invert(&self) -> Result<Scalar> {
        match self.terms.as_slice() {
            [] => Err(Error::DivisionByZero),
            [(q, c)] => Ok(Scalar::monomial(&self.ctx, c.inverse()?, q.neg())),
            _ => Err(Error::NotInvertible(format!(
                "{self} has {} distinct q-monomials",
                self.terms.len()
            ))),
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.terms.len() == 1
    }

    /// Integer power; negative exponents require an invertible scalar.
    pub fn pow(&self, exp: i64) -> Result<Scalar> {
        let base = if exp < 0 { self.try_invert()? } else { self.clone() };
        let mut acc = Scalar::one(&self.ctx);
        for _ in 0..exp.unsigned_abs() {
            acc = acc.try_mul(&base)?;
        }
        Ok(acc)
    }

    /// Substitutes `q_i ↦ values[i]` (arity-0 scalars of the same order).
    pub fn evaluate(&self, values: &[Scalar]) -> Result<Scalar> {
        if values.len() != self.ctx.arity {
            return Err(Error::Parameter(format!(
                "{} substitution values for arity {}",
                values.len(),
                self.ctx.arity
            )));
        }
        let target = ScalarContext {
            field: self.ctx.field.clone(),
            arity: 0,
        };
        for v in values {
            target.check(&v.ctx)?;
            if !v.is_invertible() {
                return Err(Error::NotInvertible(format!("substitution value {v}")));
            }
        }
        let mut acc = Scalar::zero(&target);
        for (q, c) in &self.terms {
            let mut t = Scalar::monomial(&target, c.clone(), QExponent::zero(0));
            for (v, &e) in values.iter().zip(q.as_slice()) {
                t = t.try_mul(&v.pow(e as i64)?)?;
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    /// Expansion into root-of-unity monomials `r · ω^k · q^v`.
    pub fn expand(&self) -> Expanded {
        let arith = self.ctx.root_arith();
        let mut out = Expanded::new();
        for (q, c) in &self.terms {
            if let Some((r, k)) = c.as_root() {
                out.push(Term {
                    coeff: r,
                    root: k,
                    q: q.clone(),
                });
                continue;
            }
            for (i, r) in c.coeffs().iter().enumerate() {
                if r.is_zero() {
                    continue;
                }
                let (flip, k) = arith.canonical(i as i64);
                out.push(Term {
                    coeff: if flip { -r } else { r.clone() },
                    root: k,
                    q: q.clone(),
                });
            }
        }
        out
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.terms == other.terms
    }
}

impl Eq for Scalar {}

impl std::hash::Hash for Scalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctx.order().hash(state);
        self.ctx.arity.hash(state);
        self.terms.hash(state);
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (q, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = q
                .as_slice()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("q{}", i + 1)
                    } else {
                        format!("q{}^{}", i + 1, e)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("·"))?;
            } else if c.neg().is_one() {
                write!(f, "-{}", mono.join("·"))?;
            } else {
                write!(f, "{c}·{}", mono.join("·"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// Operator forms panic on context mismatch; the `try_*` methods report it.
impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.try_add(rhs).expect("scalar addition")
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.try_sub(rhs).expect("scalar subtraction")
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar multiplication")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}
