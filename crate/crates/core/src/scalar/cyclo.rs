//! The cyclotomic field Q(ω) for a primitive n-th root of unity ω, as
//! Q[x]/(Φ_n). Elements are stored as their unique reduced remainder.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::poly::Polynomial;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Precomputed data for one cyclotomic field.
pub struct CycloField {
    order: u32,
    degree: usize,
    modulus: Polynomial,
    /// `x^k mod Φ_n` for `k < 2 * degree - 1`, used to fold raw products.
    fold: Vec<Vec<Rational>>,
    /// `ω^k` reduced, for `k < order`.
    powers: Vec<Vec<Rational>>,
}

fn field_cache() -> &'static Mutex<HashMap<u32, Arc<CycloField>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The n-th cyclotomic polynomial Φ_n, obtained by exact division of
/// `x^n - 1` by every Φ_d with `d | n`, `d < n`.
pub fn cyclotomic_modulus(n: u32) -> Result<Polynomial> {
    Ok(CycloField::get(n)?.modulus.clone())
}

fn compute_modulus(n: u32) -> Result<Polynomial> {
    let mut divisor = Polynomial::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            divisor = divisor.mul(&CycloField::get(d)?.modulus);
        }
    }
    let (quot, rem) = Polynomial::x_pow_minus_one(n as usize).div_rem(&divisor)?;
    debug_assert!(rem.is_zero(), "x^{n} - 1 not divisible by lower cyclotomics");
    Ok(quot)
}

fn reduce_vec(poly: &Polynomial, modulus: &Polynomial, degree: usize) -> Result<Vec<Rational>> {
    let (_, rem) = poly.div_rem(modulus)?;
    let mut v = rem.coeffs().to_vec();
    v.resize(degree, Rational::zero());
    Ok(v)
}

fn monomial(k: usize) -> Polynomial {
    let mut c = vec![Rational::zero(); k + 1];
    c[k] = Rational::one();
    Polynomial::new(c)
}

impl CycloField {
    pub fn get(order: u32) -> Result<Arc<CycloField>> {
        if order == 0 {
            return Err(Error::Parameter("cyclotomic order must be ≥ 1".into()));
        }
        if let Some(f) = field_cache().lock().unwrap().get(&order) {
            return Ok(f.clone());
        }
        // Built outside the lock: construction recurses into smaller orders.
        let field = Arc::new(Self::build(order)?);
        let mut cache = field_cache().lock().unwrap();
        Ok(cache.entry(order).or_insert(field).clone())
    }

    fn build(order: u32) -> Result<CycloField> {
        let modulus = compute_modulus(order)?;
        let degree = modulus.degree().expect("cyclotomic polynomial is nonzero");
        let fold = (0..(2 * degree).saturating_sub(1).max(1))
            .map(|k| reduce_vec(&monomial(k), &modulus, degree))
            .collect::<Result<Vec<_>>>()?;
        let powers = (0..order as usize)
            .map(|k| reduce_vec(&monomial(k), &modulus, degree))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycloField {
            order,
            degree,
            modulus,
            fold,
            powers,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// φ(n), the dimension over Q.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &Polynomial {
        &self.modulus
    }

    /// Reduced coefficients of ω^k for any integer k.
    pub fn power_coeffs(&self, k: i64) -> &[Rational] {
        &self.powers[k.rem_euclid(self.order as i64) as usize]
    }

    /// Number of distinct roots ω^k that are not rational multiples of each
    /// other: for even n, ω^{n/2} = -1 identifies k with k + n/2.
    pub fn root_classes(&self) -> u32 {
        if self.order.is_multiple_of(2) {
            self.order / 2
        } else {
            self.order
        }
    }

    /// Canonical `(sign, k)` with `ω^e = sign · ω^k`, `k < root_classes()`.
    pub fn canonical_root(&self, e: i64) -> (bool, u32) {
        let k = e.rem_euclid(self.order as i64) as u32;
        let classes = self.root_classes();
        if k >= classes {
            (true, k - classes)
        } else {
            (false, k)
        }
    }
}

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(ω_{})", self.order)
    }
}

#[derive(Clone)]
pub struct CycloNumber {
    field: Arc<CycloField>,
    coeffs: Vec<Rational>,
}

impl CycloNumber {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        CycloNumber {
            field: field.clone(),
            coeffs: vec![Rational::zero(); field.degree],
        }
    }

    pub fn from_rational(field: &Arc<CycloField>, r: Rational) -> Self {
        let mut z = Self::zero(field);
        z.coeffs[0] = r;
        z
    }

    pub fn one(field: &Arc<CycloField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    /// `c · ω^k`
    pub fn root(field: &Arc<CycloField>, c: &Rational, k: i64) -> Self {
        CycloNumber {
            field: field.clone(),
            coeffs: field.power_coeffs(k).iter().map(|a| a * c).collect(),
        }
    }

    /// Builds from power-basis coefficients, reducing modulo Φ_n.
    pub fn from_coeffs(field: &Arc<CycloField>, coeffs: Vec<Rational>) -> Result<Self> {
        let v = reduce_vec(&Polynomial::new(coeffs), &field.modulus, field.degree)?;
        Ok(CycloNumber {
            field: field.clone(),
            coeffs: v,
        })
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    fn check(&self, other: &CycloNumber) -> Result<()> {
        if self.field.order != other.field.order {
            return Err(Error::Context(format!(
                "cyclotomic orders {} and {}",
                self.field.order, other.field.order
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &CycloNumber) -> Result<CycloNumber> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &CycloNumber) -> Result<CycloNumber> {
        self.check(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    fn zip(&self, other: &CycloNumber, op: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        CycloNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| op(a, b)).collect(),
        }
    }

    pub fn neg(&self) -> CycloNumber {
        CycloNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> CycloNumber {
        CycloNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn try_mul(&self, other: &CycloNumber) -> Result<CycloNumber> {
        self.check(other)?;
        let d = self.field.degree;
        if d == 1 {
            return Ok(CycloNumber {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            });
        }
        let mut raw = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] = &raw[i + j] + &(a * b);
                }
            }
        }
        let mut out: Vec<Rational> = raw[..d].to_vec();
        for (k, c) in raw.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (o, f) in out.iter_mut().zip(&self.field.fold[k]) {
                if !f.is_zero() {
                    *o = &*o + &(c * f);
                }
            }
        }
        Ok(CycloNumber {
            field: self.field.clone(),
            coeffs: out,
        })
    }

    /// Multiplicative inverse via the extended Euclidean algorithm mod Φ_n.
    pub fn inverse(&self) -> Result<CycloNumber> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.field.degree == 1 {
            return Ok(CycloNumber::from_rational(&self.field, self.coeffs[0].recip()?));
        }
        if let Some((c, k)) = self.as_root() {
            return Ok(CycloNumber::root(&self.field, &c.recip()?, -(k as i64)));
        }
        let inv = Polynomial::new(self.coeffs.clone()).inverse_mod(&self.field.modulus)?;
        let mut coeffs = inv.coeffs().to_vec();
        coeffs.resize(self.field.degree, Rational::zero());
        Ok(CycloNumber {
            field: self.field.clone(),
            coeffs,
        })
    }

    /// If this number is `c · ω^k` for a rational `c`, returns the canonical
    /// pair with `k < root_classes()`.
    pub fn as_root(&self) -> Option<(Rational, u32)> {
        let lead = self.coeffs.iter().position(|c| !c.is_zero())?;
        for k in 0..self.field.root_classes() {
            let p = &self.field.powers[k as usize];
            if p[lead].is_zero() {
                continue;
            }
            let ratio = &self.coeffs[lead] / &p[lead];
            if self.coeffs.iter().zip(p).all(|(a, b)| *a == &ratio * b) {
                return Some((ratio, k));
            }
        }
        None
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNumber {}

impl std::hash::Hash for CycloNumber {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((c, k)) = self.as_root() {
            return match (k, c.is_one(), (-&c).is_one()) {
                (0, _, _) => write!(f, "{c}"),
                (_, true, _) => write!(f, "{}", omega_str(k)),
                (_, _, true) => write!(f, "-{}", omega_str(k)),
                _ => write!(f, "{c}·{}", omega_str(k)),
            };
        }
        let mut first = true;
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}·{}", omega_str(i as u32))?;
            }
        }
        write!(f, ")")
    }
}

fn omega_str(k: u32) -> String {
    if k == 1 {
        "ω".to_string()
    } else {
        format!("ω^{k}")
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(n: u32) -> Arc<CycloField> {
        CycloField::get(n).unwrap()
    }

    #[test]
    fn small_moduli() {
        assert_eq!(cyclotomic_modulus(1).unwrap(), Polynomial::from_integers(&[-1, 1]));
        assert_eq!(cyclotomic_modulus(2).unwrap(), Polynomial::from_integers(&[1, 1]));
        assert_eq!(cyclotomic_modulus(4).unwrap(), Polynomial::from_integers(&[1, 0, 1]));
        assert_eq!(
            cyclotomic_modulus(12).unwrap(),
            Polynomial::from_integers(&[1, 0, -1, 0, 1])
        );
        assert!(cyclotomic_modulus(0).is_err());
    }

    #[test]
    fn omega_cubed_is_one() {
        let f = field(3);
        let w = CycloNumber::root(&f, &Rational::one(), 1);
        let w2 = CycloNumber::root(&f, &Rational::one(), 2);
        assert!(w.try_mul(&w2).unwrap().is_one());
        let sum = CycloNumber::one(&f).try_add(&w).unwrap().try_add(&w2).unwrap();
        assert!(sum.is_zero());
    }

    #[test]
    fn root_detection_canonical() {
        let f = field(6);
        // ω^4 = -ω for n = 6.
        let w4 = CycloNumber::root(&f, &Rational::one(), 4);
        assert_eq!(w4.as_root(), Some((Rational::from_integer(-1), 1)));
        let f5 = field(5);
        let w4 = CycloNumber::root(&f5, &Rational::new(2, 3).unwrap(), 4);
        assert_eq!(w4.as_root(), Some((Rational::new(2, 3).unwrap(), 4)));
        let one_plus_w = CycloNumber::one(&f5)
            .try_add(&CycloNumber::root(&f5, &Rational::one(), 1))
            .unwrap();
        assert_eq!(one_plus_w.as_root(), None);
    }

    #[test]
    fn general_inverse() {
        let f = field(5);
        let x = CycloNumber::from_coeffs(
            &f,
            vec![
                Rational::from_integer(2),
                Rational::from_integer(-1),
                Rational::new(1, 3).unwrap(),
            ],
        )
        .unwrap();
        assert!(x.try_mul(&x.inverse().unwrap()).unwrap().is_one());
    }

    #[test]
    fn mismatched_orders() {
        let a = CycloNumber::one(&field(3));
        let b = CycloNumber::one(&field(4));
        assert!(matches!(a.try_add(&b), Err(Error::Context(_))));
    }
}
