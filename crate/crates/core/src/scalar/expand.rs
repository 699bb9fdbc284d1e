//! Root-of-unity monomial expansion used by the exhaustive verifiers.
//!
//! Every scalar is a finite sum of terms `r · ω^k · q^v`. Multiplying such
//! terms needs one rational product and two small integer additions, which
//! is far cheaper than reducing power-basis products modulo Φ_n. Sums are
//! accumulated in this redundant form and only projected back into the
//! canonical cyclotomic basis when deciding whether they vanish.

use smallvec::SmallVec;

use super::cyclo::{CycloField, CycloNumber};
use super::rational::Rational;
use super::{QExponent, Scalar, ScalarContext};
use crate::error::Result;

/// `coeff · ω^root · q^q`, with `root < RootArith::classes`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    pub root: u32,
    pub q: QExponent,
}

/// Canonical root bookkeeping: for even n, ω^{n/2} = -1 folds the exponent
/// range to `[0, n/2)` with a sign flip.
#[derive(Clone, Copy, Debug)]
pub struct RootArith {
    classes: u32,
    flip: bool,
}

impl RootArith {
    pub fn new(field: &CycloField) -> Self {
        RootArith {
            classes: field.root_classes(),
            flip: field.order().is_multiple_of(2),
        }
    }

    pub fn canonical(&self, e: i64) -> (bool, u32) {
        let period = if self.flip { 2 * self.classes } else { self.classes };
        let k = e.rem_euclid(period as i64) as u32;
        if k >= self.classes {
            (self.flip, k - self.classes)
        } else {
            (false, k)
        }
    }

    #[inline]
    pub fn mul(&self, a: &Term, b: &Term) -> Term {
        let mut root = a.root + b.root;
        let mut coeff = &a.coeff * &b.coeff;
        if root >= self.classes {
            root -= self.classes;
            if self.flip {
                coeff = -coeff;
            }
        }
        Term {
            coeff,
            root,
            q: a.q.add(&b.q),
        }
    }
}

/// Expanded form of one scalar; almost always a single term.
pub type Expanded = SmallVec<[Term; 1]>;

/// Product of two expanded scalars.
pub fn mul_expanded(arith: &RootArith, a: &[Term], b: &[Term]) -> Expanded {
    let mut out = Expanded::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(arith.mul(x, y));
        }
    }
    out
}

/// Product of several expanded scalars.
pub fn product_of(arith: &RootArith, factors: &[&[Term]]) -> Expanded {
    let mut acc: Expanded = match factors.first() {
        Some(f) => f.iter().cloned().collect(),
        None => return Expanded::new(),
    };
    for f in &factors[1..] {
        acc = mul_expanded(arith, &acc, f);
    }
    acc
}

/// Exact equality of two expanded sums. Two single canonical terms are equal
/// exactly when they are identical.
pub fn expanded_eq(field: &CycloField, a: &[Term], b: &[Term]) -> bool {
    if a.len() == 1 && b.len() == 1 {
        return a[0] == b[0];
    }
    let mut sum = TermSum::new();
    sum.add_all(a.iter());
    for t in b {
        sum.sub(t.clone());
    }
    sum.is_zero(field)
}

/// A running sum of terms, merged on equal `(root, q)`.
#[derive(Clone, Debug, Default)]
pub struct TermSum {
    terms: SmallVec<[Term; 2]>,
}

impl TermSum {
    pub fn new() -> Self {
        TermSum::default()
    }

    pub fn clear(&mut self) {
        self.terms.clear();
    }

    pub fn is_empty_raw(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&mut self, term: Term) {
        if term.coeff.is_zero() {
            return;
        }
        if let Some(pos) = self.terms.iter().position(|t| t.root == term.root && t.q == term.q) {
            let c = &self.terms[pos].coeff + &term.coeff;
            if c.is_zero() {
                self.terms.swap_remove(pos);
            } else {
                self.terms[pos].coeff = c;
            }
        } else {
            self.terms.push(term);
        }
    }

    pub fn sub(&mut self, term: Term) {
        let Term { coeff, root, q } = term;
        self.add(Term { coeff: -coeff, root, q });
    }

    pub fn add_all<'a>(&mut self, terms: impl IntoIterator<Item = &'a Term>) {
        for t in terms {
            self.add(t.clone());
        }
    }

    /// Exact zero test. Distinct roots sharing a q-monomial can cancel
    /// (1 + ω + ω² = 0), so those groups are projected to Q(ω).
    pub fn is_zero(&self, field: &CycloField) -> bool {
        match self.terms.len() {
            0 => true,
            1 => false,
            _ => {
                let mut groups: Vec<&QExponent> = self.terms.iter().map(|t| &t.q).collect();
                groups.sort();
                groups.dedup();
                groups.iter().all(|q| {
                    let members: SmallVec<[&Term; 4]> = self.terms.iter().filter(|t| &t.q == *q).collect();
                    if members.len() == 1 {
                        return false;
                    }
                    let mut acc = vec![Rational::zero(); field.degree()];
                    for t in members {
                        for (a, p) in acc.iter_mut().zip(field.power_coeffs(t.root as i64)) {
                            if !p.is_zero() {
                                *a = &*a + &(&t.coeff * p);
                            }
                        }
                    }
                    acc.iter().all(Rational::is_zero)
                })
            }
        }
    }

    pub fn to_scalar(&self, ctx: &ScalarContext) -> Result<Scalar> {
        Scalar::from_terms(
            ctx,
            self.terms
                .iter()
                .map(|t| (t.q.clone(), CycloNumber::root(ctx.field(), &t.coeff, t.root as i64))),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_round_trip() {
        let ctx = ScalarContext::new(5, 1).unwrap();
        let s = &(&Scalar::omega_pow(&ctx, 4) + &Scalar::q(&ctx, 0).unwrap()) + &Scalar::from_integer(&ctx, 3);
        let mut sum = TermSum::new();
        sum.add_all(s.expand().iter());
        assert_eq!(sum.to_scalar(&ctx).unwrap(), s);
    }

    #[test]
    fn cancellation_detected_through_projection() {
        let ctx = ScalarContext::new(3, 0).unwrap();
        let arith = ctx.root_arith();
        let mut sum = TermSum::new();
        for k in 0..3 {
            sum.add_all(Scalar::omega_pow(&ctx, k).expand().iter());
        }
        assert!(sum.is_zero(ctx.field()));
        let w = Scalar::omega_pow(&ctx, 1).expand();
        let w2 = mul_expanded(&arith, &w, &w);
        assert_eq!(w2[0].root, 2);
        let w3 = mul_expanded(&arith, &w2, &w);
        assert_eq!(w3[0].root, 0);
        assert!(w3[0].coeff.is_one());
    }

    #[test]
    fn even_order_sign_fold() {
        let ctx = ScalarContext::new(4, 0).unwrap();
        let arith = ctx.root_arith();
        let w = Scalar::omega_pow(&ctx, 1).expand();
        let w2 = mul_expanded(&arith, &w, &w);
        assert_eq!(w2[0].root, 0);
        assert_eq!(w2[0].coeff, Rational::from_integer(-1));
    }
}
