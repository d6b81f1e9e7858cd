//! Exact arithmetic in cyclotomic fields Q(zeta_m).
//!
//! A value is a polynomial in `zeta_m` reduced modulo the m-th cyclotomic
//! polynomial, with arbitrary-precision rational coefficients.  The reduced
//! remainder is the canonical form, so equality of values is equality of
//! coefficient vectors once the two operands are promoted to a common order.
//! No floating point enters any computation; the complex rendering below is
//! for display only.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

pub fn euler_phi(m: u32) -> u32 {
    let mut n = m;
    let mut result = m;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            while n % d == 0 {
                n /= d;
            }
            result -= result / d;
        }
        d += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(m: u32) -> Vec<u32> {
    let mut out: Vec<u32> = (1..=m).filter(|d| m % d == 0).collect();
    out.sort_unstable();
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u32, b: u32) -> u32 {
    (a as u64 / gcd(a as u64, b as u64) * b as u64) as u32
}

/// Exact quotient of integer polynomials (low-degree-first), `b` monic.
fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = a.to_vec();
    let db = b.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    for qi in (0..quot.len()).rev() {
        let c = rem[qi + db].clone();
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[qi + j] -= &c * bj;
            }
        }
        quot[qi] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()), "division was not exact");
    quot
}

/// The m-th cyclotomic polynomial, low-degree-first, computed by dividing
/// x^m - 1 by the product of the cyclotomic polynomials of proper divisors.
pub fn cyclotomic_polynomial(m: u32) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&m) {
        return hit.clone();
    }
    let result = if m == 1 {
        vec![BigInt::from(-1), BigInt::from(1)]
    } else {
        let mut num = vec![BigInt::zero(); m as usize + 1];
        num[0] = BigInt::from(-1);
        num[m as usize] = BigInt::from(1);
        let mut den = vec![BigInt::one()];
        for d in divisors(m) {
            if d == m {
                continue;
            }
            let phi_d = cyclotomic_polynomial(d);
            let mut prod = vec![BigInt::zero(); den.len() + phi_d.len() - 1];
            for (i, a) in den.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in phi_d.iter().enumerate() {
                    prod[i + j] += a * b;
                }
            }
            den = prod;
        }
        poly_div_exact(&num, &den)
    };
    let arc = Arc::new(result);
    cache.lock().unwrap().insert(m, arc.clone());
    arc
}

/// An element of Q(zeta_m) in canonical reduced form.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u32,
    /// length = phi(order)
    coeffs: Vec<BigRational>,
}

fn reduce_mod_phi(poly: &mut Vec<BigRational>, m: u32) {
    let phi = cyclotomic_polynomial(m);
    let deg = phi.len() - 1;
    while poly.len() > deg {
        let c = poly.pop().unwrap();
        if c.is_zero() {
            continue;
        }
        let shift = poly.len() - deg;
        for (j, pj) in phi.iter().take(deg).enumerate() {
            if !pj.is_zero() {
                let t = &c * BigRational::from(pj.clone());
                poly[shift + j] -= t;
            }
        }
    }
    poly.resize(deg, BigRational::zero());
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Cyclotomic::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        Cyclotomic { order: 1, coeffs: vec![q] }
    }

    pub fn from_integer(v: i64) -> Self {
        Cyclotomic::from_rational(BigRational::from(BigInt::from(v)))
    }

    /// zeta_m^j in canonical form.
    pub fn root_of_unity(m: u32, j: u32) -> Self {
        assert!(m >= 1);
        let j = (j % m) as usize;
        let mut poly = vec![BigRational::zero(); j + 1];
        poly[j] = BigRational::one();
        reduce_mod_phi(&mut poly, m);
        Cyclotomic { order: m, coeffs: poly }
    }

    /// Value of an arbitrary polynomial at zeta_m, reduced to canonical form.
    pub fn from_polynomial(m: u32, mut poly: Vec<BigRational>) -> Self {
        assert!(m >= 1);
        if poly.is_empty() {
            poly.push(BigRational::zero());
        }
        // fold exponents with zeta^m = 1 before the division step
        if poly.len() > m as usize {
            let folded = poly.split_off(m as usize);
            for (i, c) in folded.into_iter().enumerate() {
                if !c.is_zero() {
                    poly[i % m as usize] += c;
                }
            }
        }
        reduce_mod_phi(&mut poly, m);
        Cyclotomic { order: m, coeffs: poly }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Rewrite in Q(zeta_target); `order` must divide `target`.
    pub fn promote(&self, target: u32) -> Self {
        assert!(target % self.order == 0, "promotion requires order | target");
        if target == self.order {
            return self.clone();
        }
        let stride = (target / self.order) as usize;
        let mut poly = vec![BigRational::zero(); (self.coeffs.len() - 1) * stride + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[i * stride] = c.clone();
            }
        }
        reduce_mod_phi(&mut poly, target);
        Cyclotomic { order: target, coeffs: poly }
    }

    fn promoted_pair(&self, other: &Self) -> (Self, Self, u32) {
        let m = lcm(self.order, other.order);
        (self.promote(m), other.promote(m), m)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut a, b, _) = self.promoted_pair(other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (mut a, b, _) = self.promoted_pair(other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b, m) = self.promoted_pair(other);
        let mut poly = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    poly[i + j] += x * y;
                }
            }
        }
        reduce_mod_phi(&mut poly, m);
        Cyclotomic { order: m, coeffs: poly }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = &*c * q;
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclotomic::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// When the value lies in Q, its rational value.
    pub fn rational_value(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.rational_value().is_some()
    }

    /// Rational, integral and >= 0 -- the shape a permutation character must have.
    pub fn nonnegative_integer_value(&self) -> Option<BigInt> {
        let q = self.rational_value()?;
        if q.is_integer() && !q.is_negative() {
            Some(q.to_integer())
        } else {
            None
        }
    }

    /// Numerical value under zeta_m = exp(2 pi i / m); display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * (i as f64) / m;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    /// Canonical text form: a polynomial in `z` standing for zeta_order.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            let body = match i {
                0 => format!("{mag}"),
                1 if mag.is_one() => "z".to_string(),
                1 => format!("{mag}*z"),
                _ if mag.is_one() => format!("z^{i}"),
                _ => format!("{mag}*z^{i}"),
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() { format!("-{body}") } else { body });
            } else {
                parts.push(format!("{sign}{body}"));
            }
        }
        parts.concat()
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b, _) = self.promoted_pair(other);
        a.coeffs == b.coeffs
    }
}
impl Eq for Cyclotomic {}

impl std::fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Cyc[m={}]({})", self.order, self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Cyclotomic {
        Cyclotomic::from_integer(v)
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        let as_i64 = |v: &Arc<Vec<BigInt>>| v.iter().map(|c| c.to_i64().unwrap()).collect::<Vec<_>>();
        assert_eq!(as_i64(&cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(as_i64(&cyclotomic_polynomial(3)), vec![1, 1, 1]);
        assert_eq!(as_i64(&cyclotomic_polynomial(8)), vec![1, 0, 0, 0, 1]);
        assert_eq!(as_i64(&cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn product_of_divisor_polynomials() {
        for m in 1..=130u32 {
            let mut prod = vec![BigInt::one()];
            for d in divisors(m) {
                let phi = cyclotomic_polynomial(d);
                let mut next = vec![BigInt::zero(); prod.len() + phi.len() - 1];
                for (i, a) in prod.iter().enumerate() {
                    for (j, b) in phi.iter().enumerate() {
                        next[i + j] += a * b;
                    }
                }
                prod = next;
            }
            assert_eq!(prod.len(), m as usize + 1);
            assert_eq!(prod[m as usize], BigInt::one());
            assert_eq!(prod[0], BigInt::from(-1i32));
            for c in &prod[1..m as usize] {
                assert!(c.is_zero(), "x^{m}-1 mismatch");
            }
        }
    }

    #[test]
    fn root_of_unity_orthogonality() {
        for m in 1..=130u32 {
            for k in 0..2 * m {
                let mut poly = vec![BigRational::zero(); m as usize];
                for j in 0..m {
                    poly[((j as u64 * k as u64) % m as u64) as usize] += BigRational::one();
                }
                let sum = Cyclotomic::from_polynomial(m, poly);
                let expect = if k % m == 0 { int(m as i64) } else { int(0) };
                assert_eq!(sum, expect, "m={m}, k={k}");
            }
        }
    }

    #[test]
    fn spot_values() {
        assert_eq!(Cyclotomic::root_of_unity(3, 0), int(1));
        let z3 = Cyclotomic::root_of_unity(3, 1);
        let z32 = Cyclotomic::root_of_unity(3, 2);
        assert_eq!(z3.add(&z32), int(-1));
        let i = Cyclotomic::root_of_unity(4, 1);
        assert_eq!(i.mul(&i), int(-1));
        let z7 = Cyclotomic::root_of_unity(7, 1);
        assert_eq!(z7.mul(&Cyclotomic::root_of_unity(7, 6)), int(1));
        let third = BigRational::new(BigInt::one(), BigInt::from(3));
        assert_eq!(z3.add(&z32).add(&int(1)).scale(&third), int(0));
    }

    #[test]
    fn rationality_checks() {
        assert_eq!(int(-1).rational_value(), Some(BigRational::from(BigInt::from(-1))));
        assert!(int(-1).nonnegative_integer_value().is_none());
        assert_eq!(int(4).nonnegative_integer_value(), Some(BigInt::from(4)));
        let z7 = Cyclotomic::root_of_unity(7, 1);
        let s = z7.add(&z7.pow(2)).add(&z7.pow(4));
        assert!(!s.is_rational());
        // but s + s-conjugate = -1
        let sbar = z7.pow(3).add(&z7.pow(5)).add(&z7.pow(6));
        assert_eq!(s.add(&sbar), int(-1));
    }

    #[test]
    fn embedding_round_trip() {
        for m in [3u32, 5, 7, 12] {
            let a = Cyclotomic::root_of_unity(m, 1);
            let b = Cyclotomic::root_of_unity(m, m - 1);
            let (lhs, rhs) = (a.mul(&b), a.promote(2 * m).mul(&b.promote(2 * m)));
            assert_eq!(lhs, rhs);
            assert_eq!(a.add(&b), a.promote(2 * m).add(&b.promote(2 * m)));
        }
    }

    #[test]
    fn mixed_order_arithmetic() {
        // zeta_6 = -zeta_3^2
        let z6 = Cyclotomic::root_of_unity(6, 1);
        let z3 = Cyclotomic::root_of_unity(3, 2).neg();
        assert_eq!(z6, z3);
        assert_eq!(z6.pow(6), int(1));
    }

    #[test]
    fn render_forms() {
        assert_eq!(int(0).render(), "0");
        assert_eq!(int(-3).render(), "-3");
        let z = Cyclotomic::root_of_unity(5, 1);
        assert_eq!(z.render(), "z");
        assert_eq!(z.pow(4).render(), "-1-z-z^2-z^3");
    }
}
