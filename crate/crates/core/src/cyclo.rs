//! Exact arithmetic in cyclotomic fields `Q(ζ_m)`.
//!
//! An element of conductor `m` is stored by its rational coordinates in the
//! basis `1, ζ_m, …, ζ_m^(φ(m)-1)`, always reduced modulo the cyclotomic
//! polynomial `Φ_m`. Operands of different conductors are lifted to the lcm.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `base^exp` for a possibly negative exponent; `base` must be non-zero when `exp < 0`.
pub fn rational_pow(base: &Rational, exp: i64) -> Rational {
    let p = num_traits::pow(base.clone(), exp.unsigned_abs() as usize);
    if exp < 0 {
        p.recip()
    } else {
        p
    }
}

/// Integer coefficients of `Φ_m`, lowest degree first.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().unwrap().get(&m) {
        return p.clone();
    }
    assert!(m >= 1, "conductor must be positive");
    // x^m - 1 divided by every Φ_d with d | m, d < m
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        num = exact_div(&num, &cyclotomic_polynomial(d));
    }
    cache.write().unwrap().insert(m, num.clone());
    num
}

/// Quotient of polynomial long division by a monic divisor; the remainder must vanish.
fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    let qlen = rem.len() - dd;
    let mut quot = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Reduction data for one conductor.
#[derive(Debug)]
pub struct CyclotomicField {
    conductor: u32,
    degree: usize,
    /// `powers[k]` is `ζ^k mod Φ_m` in the canonical basis, `0 ≤ k < m`.
    powers: Vec<Vec<i64>>,
}

impl CyclotomicField {
    pub fn get(conductor: u32) -> Arc<CyclotomicField> {
        static FIELDS: OnceLock<RwLock<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
        let fields = FIELDS.get_or_init(Default::default);
        if let Some(f) = fields.read().unwrap().get(&conductor) {
            return Arc::clone(f);
        }
        let f = Arc::new(Self::build(conductor));
        fields
            .write()
            .unwrap()
            .entry(conductor)
            .or_insert(f)
            .clone()
    }

    fn build(m: u32) -> Self {
        let phi = cyclotomic_polynomial(m);
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..m {
            powers.push(cur.clone());
            // multiply by x, then subtract the leading term times Φ_m
            let lead = cur[degree - 1];
            let mut next = vec![0i64; degree];
            next[1..degree].copy_from_slice(&cur[..degree - 1]);
            if lead != 0 {
                for (j, n) in next.iter_mut().enumerate() {
                    *n -= lead * phi[j];
                }
            }
            cur = next;
        }
        debug_assert!(
            cur[0] == 1 && cur[1..].iter().all(|&c| c == 0),
            "ζ^m must reduce to 1"
        );
        CyclotomicField {
            conductor: m,
            degree,
            powers,
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// `φ(m)`, the dimension over Q.
    pub fn degree(&self) -> usize {
        self.degree
    }
}

#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero(conductor: u32) -> Self {
        let field = CyclotomicField::get(conductor);
        let coeffs = vec![Rational::zero(); field.degree];
        Cyclotomic { field, coeffs }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic {
            field: CyclotomicField::get(1),
            coeffs: vec![q],
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rational_int(n))
    }

    /// `ζ_m^k` for any integer `k`.
    pub fn root_of_unity(conductor: u32, k: i64) -> Self {
        let field = CyclotomicField::get(conductor);
        let idx = k.rem_euclid(conductor as i64) as usize;
        let coeffs = field.powers[idx].iter().map(|&c| rational_int(c)).collect();
        Cyclotomic { field, coeffs }
    }

    /// `Σ c·ζ_m^k` over the given `(k, c)` terms.
    pub fn from_terms(conductor: u32, terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let field = CyclotomicField::get(conductor);
        let mut coeffs = vec![Rational::zero(); field.degree];
        for (k, c) in terms {
            if c.is_zero() {
                continue;
            }
            let idx = k.rem_euclid(conductor as i64) as usize;
            for (slot, &p) in coeffs.iter_mut().zip(&field.powers[idx]) {
                if p != 0 {
                    *slot += &c * BigInt::from(p);
                }
            }
        }
        Cyclotomic { field, coeffs }
    }

    /// Coordinates in the canonical basis, given directly (length `φ(m)`).
    pub fn from_coeffs(conductor: u32, coeffs: Vec<Rational>) -> Self {
        let field = CyclotomicField::get(conductor);
        assert_eq!(
            coeffs.len(),
            field.degree,
            "coefficient vector has wrong length"
        );
        Cyclotomic { field, coeffs }
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Re-expresses the value in `Q(ζ_target)`; `target` must be a multiple of the conductor.
    pub fn lift(&self, target: u32) -> Self {
        let m = self.conductor();
        if target == m {
            return self.clone();
        }
        assert!(
            target.is_multiple_of(m),
            "cannot lift conductor {m} to {target}"
        );
        let step = (target / m) as i64;
        Self::from_terms(
            target,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k as i64 * step, c.clone())),
        )
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let m = (a.conductor() as u64).lcm(&(b.conductor() as u64)) as u32;
        (a.lift(m), b.lift(m))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The value as a rational number, if it is one.
    pub fn to_rational(&self) -> Option<Rational> {
        // in the power basis, rationals are exactly the vectors supported on ζ^0
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.to_rational().is_some()
    }

    /// Complex conjugation, `ζ^k ↦ ζ^(m-k)`.
    pub fn conj(&self) -> Self {
        let m = self.conductor() as i64;
        Self::from_terms(
            m as u32,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (m - k as i64, c.clone())),
        )
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Cyclotomic {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn to_complex(&self) -> Complex64 {
        let m = self.conductor() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let theta = 2.0 * std::f64::consts::PI * k as f64 / m;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), theta)
            })
            .sum()
    }

    fn mul_same(&self, rhs: &Self) -> Self {
        let f = &self.field;
        let d = f.degree;
        let m = f.conductor as usize;
        let mut raw = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        let mut coeffs: Vec<Rational> = raw.drain(..d).collect();
        for (k, c) in raw.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, &p) in coeffs.iter_mut().zip(&f.powers[(k + d) % m]) {
                if p != 0 {
                    *slot += &c * BigInt::from(p);
                }
            }
        }
        Cyclotomic {
            field: Arc::clone(f),
            coeffs,
        }
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor() == other.conductor() {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = Self::aligned(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for Cyclotomic {}

impl From<Rational> for Cyclotomic {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor() != rhs.conductor() {
            let (a, b) = Cyclotomic::aligned(self, rhs);
            return &a + &b;
        }
        Cyclotomic {
            field: Arc::clone(&self.field),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if self.conductor() == rhs.conductor() {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                if !b.is_zero() {
                    *a += b;
                }
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            field: Arc::clone(&self.field),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.conductor() != rhs.conductor() {
            // a rational factor needs no lifting
            if let Some(q) = rhs.to_rational() {
                return self.scale(&q);
            }
            if let Some(q) = self.to_rational() {
                return rhs.scale(&q);
            }
            let (a, b) = Cyclotomic::aligned(self, rhs);
            return a.mul_same(&b);
        }
        self.mul_same(rhs)
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        let mut acc = Cyclotomic::zero(1);
        for x in iter {
            acc += &x;
        }
        acc
    }
}

impl fmt::Display for Cyclotomic {
    /// Terms `c*zm^k` in increasing `k`, e.g. `-1 - z5^2 + 1/2*z5^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.conductor();
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let root = match k {
                0 => String::new(),
                1 => format!("z{m}"),
                _ => format!("z{m}^{k}"),
            };
            if k == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{root}")?;
            } else {
                write!(f, "{abs}*{root}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-9
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // Φ_105 is the first with a coefficient of absolute value 2
        assert!(cyclotomic_polynomial(105).contains(&-2));
        assert_eq!(cyclotomic_polynomial(105).len() - 1, 48);
    }

    #[test]
    fn golden_ratio_conjugate() {
        let x = Cyclotomic::root_of_unity(5, 1) + Cyclotomic::root_of_unity(5, 4);
        assert!(close(
            x.to_complex(),
            Complex64::new((5f64.sqrt() - 1.0) / 2.0, 0.0)
        ));
        assert!((x.to_complex().re - 0.6180339887).abs() < 1e-9);
    }

    #[test]
    fn canonical_reduction() {
        for m in [1, 2, 3, 4, 5, 6, 12, 30] {
            assert_eq!(Cyclotomic::root_of_unity(m, m as i64), Cyclotomic::one());
        }
        let z4 = Cyclotomic::root_of_unity(5, 4);
        let expected = vec![rational_int(-1); 4];
        assert_eq!(z4.coeffs(), expected.as_slice());
    }

    #[test]
    fn conjugation_and_lifting() {
        let z = Cyclotomic::root_of_unity(12, 1);
        assert_eq!(&z * &z.conj(), Cyclotomic::one());
        let w = Cyclotomic::root_of_unity(3, 1);
        assert_eq!(w.lift(12), Cyclotomic::root_of_unity(12, 4));
        assert_eq!(w, Cyclotomic::root_of_unity(6, 2));
        // sum of all primitive 3rd roots of unity
        assert_eq!(&w + &w.conj(), Cyclotomic::from_int(-1));
        assert_eq!((&w + &w.conj()).to_rational(), Some(rational_int(-1)));
    }

    #[test]
    fn display() {
        assert_eq!(Cyclotomic::zero(5).to_string(), "0");
        assert_eq!(
            Cyclotomic::root_of_unity(5, 4).to_string(),
            "-1 - z5 - z5^2 - z5^3"
        );
        assert_eq!(
            Cyclotomic::from_rational(rational(-3, 2)).to_string(),
            "-3/2"
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn element(m: u32) -> impl Strategy<Value = Cyclotomic> {
            proptest::collection::vec((0i64..m as i64, -5i64..=5, 1i64..=4), 0..6).prop_map(
                move |terms| {
                    Cyclotomic::from_terms(
                        m,
                        terms.into_iter().map(|(k, n, d)| (k, rational(n, d))),
                    )
                },
            )
        }

        fn conductor() -> impl Strategy<Value = u32> {
            prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 8, 9, 10, 12, 15, 20, 30])
        }

        proptest! {
            #[test]
            fn ring_ops_match_complex_shadow(
                (a, b) in conductor().prop_flat_map(|m| (element(m), element(m))),
                c in conductor().prop_flat_map(element),
            ) {
                let (za, zb, zc) = (a.to_complex(), b.to_complex(), c.to_complex());
                prop_assert!(close((&a + &b).to_complex(), za + zb));
                prop_assert!(close((&a - &c).to_complex(), za - zc));
                prop_assert!(close((&a * &b).to_complex(), za * zb));
                prop_assert!(close((&b * &c).to_complex(), zb * zc));
                prop_assert!(close(a.conj().to_complex(), za.conj()));
                prop_assert!(close(a.pow(3).to_complex(), za * za * za));
            }

            #[test]
            fn ring_axioms_hold_exactly(
                (a, b, c) in conductor().prop_flat_map(|m| (element(m), element(m), element(m))),
            ) {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
                prop_assert!((&a - &a).is_zero());
            }
        }
    }
}
