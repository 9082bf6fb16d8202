use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Num, Signed, Zero};
use serde_json::{json, Value};

use super::rational::{int_to_json, ExactRational};
use super::AlgebraError;

/// Integer-like coefficient ring for [`QZPoly`].
pub trait Coefficient:
    Clone + Eq + fmt::Debug + fmt::Display + Num + Signed + Into<BigInt> + Send + Sync
{
}

impl<T> Coefficient for T where
    T: Clone + Eq + fmt::Debug + fmt::Display + Num + Signed + Into<BigInt> + Send + Sync
{
}

/// Laurent polynomial in `q^{1/2}` and `z`.
///
/// A term is keyed by `(h, k)` and stands for `c * q^{h/2} * z^k`. Zero
/// coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QZPoly<C> {
    terms: BTreeMap<(i64, i64), C>,
}

impl<C: Coefficient> QZPoly<C> {
    pub fn zero() -> Self {
        QZPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), 0, 0)
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c * q^{h/2} * z^k`.
    pub fn monomial(c: C, h: i64, k: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(h, k, c);
        p
    }

    /// The variable `q^{1/2}`.
    pub fn q_half() -> Self {
        Self::monomial(C::one(), 1, 0)
    }

    pub fn z() -> Self {
        Self::monomial(C::one(), 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical `(h, k)` order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64, &C)> {
        self.terms.iter().map(|(&(h, k), c)| (h, k, c))
    }

    pub fn coefficient(&self, h: i64, k: i64) -> C {
        self.terms.get(&(h, k)).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, h: i64, k: i64, c: C) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((h, k)).or_insert_with(C::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&(h, k));
        }
    }

    /// Multiplies by `q^{h/2} z^k`.
    pub fn shift(&self, h: i64, k: i64) -> Self {
        QZPoly {
            terms: self.terms.iter().map(|(&(a, b), c)| ((a + h, b + k), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Value at `q = 1`, `z = 1`: the sum of all coefficients.
    pub fn coefficient_sum(&self) -> C {
        self.terms.values().fold(C::zero(), |a, c| a + c.clone())
    }

    /// `[{"qh": h, "z": k, "c": coeff}, ...]` sorted by `(h, k)`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(&(h, k), c)| json!({"qh": h, "z": k, "c": int_to_json(&c.clone().into())}))
                .collect(),
        )
    }
}

impl<C: Coefficient> fmt::Debug for QZPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<C: Coefficient> fmt::Display for QZPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (&(h, k), c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut parts = Vec::new();
            if !mag.is_one() || (h == 0 && k == 0) {
                parts.push(mag.to_string());
            }
            if h != 0 {
                if h % 2 == 0 {
                    parts.push(if h == 2 { "q".to_string() } else { format!("q^{}", h / 2) });
                } else {
                    parts.push(format!("q^({}/2)", h));
                }
            }
            if k != 0 {
                parts.push(if k == 1 { "z".to_string() } else { format!("z^{}", k) });
            }
            write!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

impl<C: Coefficient> Add for &QZPoly<C> {
    type Output = QZPoly<C>;
    fn add(self, rhs: &QZPoly<C>) -> QZPoly<C> {
        let mut out = self.clone();
        for (&(h, k), c) in &rhs.terms {
            out.add_term(h, k, c.clone());
        }
        out
    }
}

impl<C: Coefficient> Add for QZPoly<C> {
    type Output = QZPoly<C>;
    fn add(self, rhs: QZPoly<C>) -> QZPoly<C> {
        &self + &rhs
    }
}

impl<C: Coefficient> AddAssign<&QZPoly<C>> for QZPoly<C> {
    fn add_assign(&mut self, rhs: &QZPoly<C>) {
        for (&(h, k), c) in &rhs.terms {
            self.add_term(h, k, c.clone());
        }
    }
}

impl<C: Coefficient> Neg for &QZPoly<C> {
    type Output = QZPoly<C>;
    fn neg(self) -> QZPoly<C> {
        QZPoly { terms: self.terms.iter().map(|(&key, c)| (key, -c.clone())).collect() }
    }
}

impl<C: Coefficient> Neg for QZPoly<C> {
    type Output = QZPoly<C>;
    fn neg(self) -> QZPoly<C> {
        -&self
    }
}

impl<C: Coefficient> Sub for &QZPoly<C> {
    type Output = QZPoly<C>;
    fn sub(self, rhs: &QZPoly<C>) -> QZPoly<C> {
        self + &(-rhs)
    }
}

impl<C: Coefficient> Sub for QZPoly<C> {
    type Output = QZPoly<C>;
    fn sub(self, rhs: QZPoly<C>) -> QZPoly<C> {
        &self - &rhs
    }
}

impl<C: Coefficient> Mul for &QZPoly<C> {
    type Output = QZPoly<C>;
    fn mul(self, rhs: &QZPoly<C>) -> QZPoly<C> {
        let mut out = QZPoly::zero();
        for (&(h1, k1), c1) in &self.terms {
            for (&(h2, k2), c2) in &rhs.terms {
                out.add_term(h1 + h2, k1 + k2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Coefficient> Mul for QZPoly<C> {
    type Output = QZPoly<C>;
    fn mul(self, rhs: QZPoly<C>) -> QZPoly<C> {
        &self * &rhs
    }
}

impl<C: Coefficient> std::iter::Sum for QZPoly<C> {
    fn sum<I: Iterator<Item = QZPoly<C>>>(iter: I) -> Self {
        let mut acc = QZPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

/// Result of `z -> q^{1/2} - q^{-1/2}`: `numerator / (q^{1/2} - q^{-1/2})^z_denominator`.
///
/// The numerator only involves `q^{1/2}`. Negative powers of `z` cannot be
/// expanded into a Laurent polynomial, so they are kept as a denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZSubstituted<C: Coefficient> {
    pub numerator: QZPoly<C>,
    pub z_denominator: u32,
}

fn q_half_difference<C: Coefficient>() -> QZPoly<C> {
    let mut d = QZPoly::zero();
    d.add_term(1, 0, C::one());
    d.add_term(-1, 0, -C::one());
    d
}

impl<C: Coefficient> ZSubstituted<C> {
    /// The plain polynomial, when no negative power of `z` occurred.
    pub fn into_polynomial(self) -> Option<QZPoly<C>> {
        (self.z_denominator == 0).then_some(self.numerator)
    }

    /// Equality as fractions, by cross-multiplication.
    pub fn equivalent(&self, other: &Self) -> bool {
        let d = q_half_difference::<C>();
        &self.numerator * &d.pow(other.z_denominator) == &other.numerator * &d.pow(self.z_denominator)
    }

    pub fn mul(&self, other: &Self) -> Self {
        ZSubstituted {
            numerator: &self.numerator * &other.numerator,
            z_denominator: self.z_denominator + other.z_denominator,
        }
    }
}

/// Substitutes `z = q^{1/2} - q^{-1/2}` exactly.
pub fn substitute_z<C: Coefficient>(p: &QZPoly<C>) -> ZSubstituted<C> {
    let kmin = p.terms().map(|(_, k, _)| k).min().unwrap_or(0).min(0);
    let shift = (-kmin) as u32;
    let d = q_half_difference::<C>();
    let mut powers: BTreeMap<i64, QZPoly<C>> = BTreeMap::new();
    let mut numerator = QZPoly::zero();
    for (h, k, c) in p.terms() {
        let e = k - kmin;
        let dp = powers.entry(e).or_insert_with(|| d.pow(e as u32));
        for (h2, _, c2) in dp.terms() {
            numerator.add_term(h + h2, 0, c.clone() * c2.clone());
        }
    }
    ZSubstituted { numerator, z_denominator: shift }
}

/// Evaluates at `z = q^{1/2} - q^{-1/2}` and the given integer `q >= 2`.
///
/// A term `c q^{h/2} z^k` becomes `c (q-1)^k q^{(h-k)/2}`. Terms with odd
/// `h - k` carry a factor `sqrt(q)`; they must cancel unless `q` is a
/// perfect square.
pub fn eval_at_q<C: Coefficient>(p: &QZPoly<C>, q: u64) -> Result<ExactRational, AlgebraError> {
    if q < 2 {
        return Err(AlgebraError::InvalidQ(q));
    }
    let qr = ExactRational::from_integer(BigInt::from(q));
    let qm1 = ExactRational::from_integer(BigInt::from(q - 1));
    let mut rational = ExactRational::zero();
    let mut with_root = ExactRational::zero();
    for (h, k, c) in p.terms() {
        let e = h - k;
        let base = ExactRational::from_integer(c.clone().into())
            * super::rational::pow_rational(&qm1, k)
            * super::rational::pow_rational(&qr, e.div_euclid(2));
        if e.rem_euclid(2) == 0 {
            rational += base;
        } else {
            with_root += base;
        }
    }
    if with_root.is_zero() {
        return Ok(rational);
    }
    let root = q.sqrt();
    if root * root == q {
        Ok(rational + with_root * ExactRational::from_integer(BigInt::from(root)))
    } else {
        Err(AlgebraError::IrrationalEvaluation { q })
    }
}

/// Top `z`-degree after `q -> z^2`, i.e. `max(h + k)` over surviving terms.
pub fn max_deg_z_after_q_eq_z2<C: Coefficient>(p: &QZPoly<C>) -> Result<i64, AlgebraError> {
    let mut collected: BTreeMap<i64, C> = BTreeMap::new();
    for (h, k, c) in p.terms() {
        let slot = collected.entry(h + k).or_insert_with(C::zero);
        *slot = slot.clone() + c.clone();
    }
    collected
        .into_iter()
        .rev()
        .find(|(_, c)| !c.is_zero())
        .map(|(d, _)| d)
        .ok_or(AlgebraError::ZeroPolynomial)
}
