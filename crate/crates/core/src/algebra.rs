//! The truncated polynomial algebra F_p[x_1..x_d]/(x_i^{p^n}) with its
//! cyclic grading and the height-n formal sum.
//!
//! Monomials are addressed by a mixed-radix index: the exponent of `x_{j+1}`
//! is the j-th base-q digit of the index, `q = p^n`.  The grading takes the
//! total degree modulo `q - 1`; the correction term of the formal sum has
//! degree `p^n`, which is 1 modulo `q - 1`, so both actions below preserve
//! the grading.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::FpMatrix;

/// Fixed data for one `(p, n, d)` triple.
pub struct AlgebraContext {
    field: Arc<Field>,
    p: u32,
    n: u32,
    d: u32,
    q: u32,
    grade_modulus: u32,
    /// `c_i = binom(p, i) / p  mod p` for `i = 1..p-1`, indexed from 0.
    fgl_coeffs: Vec<u8>,
    dim: usize,
    /// base-q digits of every monomial index, flattened `dim * d`
    digits: Vec<u16>,
    /// total degree of every monomial
    lengths: Vec<u16>,
}

/// An element as a sorted sparse vector of `(monomial index, coefficient)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    terms: Vec<(u32, u8)>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement { terms: Vec::new() }
    }

    pub fn terms(&self) -> &[(u32, u8)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn has_constant_term(&self) -> bool {
        self.terms.first().is_some_and(|&(idx, _)| idx == 0)
    }

    fn from_accumulator(mut terms: Vec<(u32, u8)>) -> Self {
        terms.sort_unstable_by_key(|&(idx, _)| idx);
        terms.retain(|&(_, c)| c != 0);
        AlgebraElement { terms }
    }
}

impl AlgebraContext {
    pub fn new(p: u32, n: u32, d: u32) -> Result<Arc<Self>> {
        if n == 0 || d == 0 {
            return Err(Error::InvalidParameter("need n >= 1 and d >= 1".into()));
        }
        let field = Field::prime(p)?;
        let q64 = (p as u64).pow(n);
        if q64 > u16::MAX as u64 {
            return Err(Error::InvalidParameter(format!("q = p^n = {q64} too large")));
        }
        let q = q64 as u32;
        let dim64 = (q as u64).checked_pow(d).filter(|&v| v <= 1 << 24);
        let Some(dim64) = dim64 else {
            return Err(Error::InvalidParameter(format!(
                "algebra dimension p^(nd) = {}^{} exceeds the supported range",
                q, d
            )));
        };
        let dim = dim64 as usize;

        // binom(p, i)/p = (-1)^(i-1) / i  mod p
        let mut fgl_coeffs = Vec::with_capacity(p as usize - 1);
        for i in 1..p {
            let inv_i = field.inv(field.from_integer(i as i64));
            let c = if i % 2 == 1 { inv_i } else { field.neg(inv_i) };
            fgl_coeffs.push(c);
        }

        let mut digits = vec![0u16; dim * d as usize];
        let mut lengths = vec![0u16; dim];
        for idx in 0..dim {
            let mut rest = idx as u64;
            let mut len = 0u16;
            for j in 0..d as usize {
                let e = (rest % q as u64) as u16;
                rest /= q as u64;
                digits[idx * d as usize + j] = e;
                len += e;
            }
            lengths[idx] = len;
        }

        Ok(Arc::new(AlgebraContext {
            field,
            p,
            n,
            d,
            q,
            grade_modulus: q - 1,
            fgl_coeffs,
            dim,
            digits,
            lengths,
        }))
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn d(&self) -> u32 {
        self.d
    }
    /// Per-variable truncation exponent `q = p^n`.
    pub fn q(&self) -> u32 {
        self.q
    }
    pub fn grade_modulus(&self) -> u32 {
        self.grade_modulus
    }
    /// Total number of monomials, `q^d`.
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn fgl_coefficients(&self) -> &[u8] {
        &self.fgl_coeffs
    }

    pub fn exponents(&self, idx: u32) -> &[u16] {
        let d = self.d as usize;
        &self.digits[idx as usize * d..(idx as usize + 1) * d]
    }

    pub fn length(&self, idx: u32) -> u16 {
        self.lengths[idx as usize]
    }

    pub fn grade(&self, idx: u32) -> u32 {
        self.lengths[idx as usize] as u32 % self.grade_modulus
    }

    pub fn monomial_index(&self, exps: &[u16]) -> u32 {
        debug_assert_eq!(exps.len(), self.d as usize);
        let mut idx = 0u64;
        for &e in exps.iter().rev() {
            debug_assert!((e as u32) < self.q);
            idx = idx * self.q as u64 + e as u64;
        }
        idx as u32
    }

    pub fn one(&self) -> AlgebraElement {
        AlgebraElement { terms: vec![(0, 1)] }
    }

    /// The generator `x_{j+1}` (0-based `j`).
    pub fn variable(&self, j: u32) -> AlgebraElement {
        debug_assert!(j < self.d);
        let idx = (self.q as u64).pow(j) as u32;
        AlgebraElement { terms: vec![(idx, 1)] }
    }

    pub fn monomial(&self, idx: u32) -> AlgebraElement {
        AlgebraElement { terms: vec![(idx, 1)] }
    }

    pub fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut terms = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() && j < b.terms.len() {
            let (ia, ca) = a.terms[i];
            let (ib, cb) = b.terms[j];
            match ia.cmp(&ib) {
                std::cmp::Ordering::Less => {
                    terms.push((ia, ca));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    terms.push((ib, cb));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = self.field.add(ca, cb);
                    if c != 0 {
                        terms.push((ia, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&a.terms[i..]);
        terms.extend_from_slice(&b.terms[j..]);
        AlgebraElement { terms }
    }

    pub fn scale(&self, a: &AlgebraElement, c: u8) -> AlgebraElement {
        if c == 0 {
            return AlgebraElement::zero();
        }
        AlgebraElement {
            terms: a.terms.iter().map(|&(i, x)| (i, self.field.mul(x, c))).collect(),
        }
    }

    pub fn sub(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let p = self.p;
        self.add(a, &self.scale(b, ((p - 1) % p) as u8))
    }

    /// Product of two monomials: `None` when any exponent reaches `q`.
    #[inline]
    fn monomial_product(&self, a: u32, b: u32) -> Option<u32> {
        let d = self.d as usize;
        let da = &self.digits[a as usize * d..a as usize * d + d];
        let db = &self.digits[b as usize * d..b as usize * d + d];
        for j in 0..d {
            if da[j] as u32 + db[j] as u32 >= self.q {
                return None;
            }
        }
        // no digit carries, so indices simply add
        Some(a + b)
    }

    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let mut acc: std::collections::HashMap<u32, u8> = std::collections::HashMap::new();
        for &(ia, ca) in &a.terms {
            for &(ib, cb) in &b.terms {
                if let Some(idx) = self.monomial_product(ia, ib) {
                    let c = self.field.mul(ca, cb);
                    let slot = acc.entry(idx).or_insert(0);
                    *slot = self.field.add(*slot, c);
                }
            }
        }
        AlgebraElement::from_accumulator(acc.into_iter().collect())
    }

    /// `a^(p^k)`: the Frobenius is additive, so this is term-by-term.
    pub fn frobenius_power(&self, a: &AlgebraElement, k: u32) -> AlgebraElement {
        let e = (self.p as u64).pow(k);
        let mut terms = Vec::with_capacity(a.terms.len());
        'term: for &(idx, c) in &a.terms {
            let exps = self.exponents(idx);
            let mut new_exps = vec![0u16; exps.len()];
            for (ne, &ex) in new_exps.iter_mut().zip(exps) {
                let v = ex as u64 * e;
                if v >= self.q as u64 {
                    continue 'term;
                }
                *ne = v as u16;
            }
            // coefficients lie in F_p, so c^(p^k) = c
            terms.push((self.monomial_index(&new_exps), c));
        }
        AlgebraElement::from_accumulator(terms)
    }

    pub fn power(&self, a: &AlgebraElement, mut e: u64) -> AlgebraElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.multiply(&base, &base);
            }
        }
        acc
    }

    /// The formal sum
    /// `u +_F v = u + v - sum_{i=1}^{p-1} c_i u^{i p^(n-1)} v^((p-i) p^(n-1))`
    /// with `c_i = binom(p,i)/p mod p`.  Both inputs must have no constant
    /// term; they are then nilpotent with vanishing q-th power, which is what
    /// makes the truncation of the true formal group law exact here.
    pub fn formal_sum(&self, u: &AlgebraElement, v: &AlgebraElement) -> Result<AlgebraElement> {
        if u.has_constant_term() || v.has_constant_term() {
            return Err(Error::ConstantTerm);
        }
        let mut out = self.add(u, v);
        if u.is_zero() || v.is_zero() {
            return Ok(out);
        }
        let uf = self.frobenius_power(u, self.n - 1);
        let vf = self.frobenius_power(v, self.n - 1);
        // powers vf^1 .. vf^(p-1); term i pairs uf^i with vf^(p-i)
        let mut vf_powers = vec![vf.clone()];
        for _ in 2..self.p {
            let next = self.multiply(vf_powers.last().unwrap(), &vf);
            vf_powers.push(next);
        }
        let mut upow = uf.clone();
        for i in 1..self.p {
            let c = self.fgl_coeffs[i as usize - 1];
            let term = self.multiply(&upow, &vf_powers[(self.p - i) as usize - 1]);
            out = self.sub(&out, &self.scale(&term, c));
            if i + 1 < self.p {
                upow = self.multiply(&upow, &uf);
            }
        }
        Ok(out)
    }

    /// `[a] u`: the a-fold formal sum of `u` with itself, `[0] u = 0`.
    pub fn a_series(&self, a: u32, u: &AlgebraElement) -> Result<AlgebraElement> {
        if a >= self.p {
            return Err(Error::ScalarRange(a, self.p));
        }
        if u.has_constant_term() {
            return Err(Error::ConstantTerm);
        }
        let mut acc = AlgebraElement::zero();
        for _ in 0..a {
            acc = self.formal_sum(&acc, u)?;
        }
        Ok(acc)
    }

    /// Images of the generators under `g`, formal-group variant:
    /// `x_j -> [a_1j] x_1 +_F ... +_F [a_dj] x_d` (column `j` of `g`).
    pub fn act_on_generators(&self, g: &FpMatrix) -> Result<Vec<AlgebraElement>> {
        self.check_group_matrix(g)?;
        let d = self.d as usize;
        let mut images = Vec::with_capacity(d);
        for j in 0..d {
            let mut acc = AlgebraElement::zero();
            for i in 0..d {
                let a = g.get(i, j) as u32;
                let term = self.a_series(a, &self.variable(i as u32))?;
                acc = self.formal_sum(&acc, &term)?;
            }
            images.push(acc);
        }
        Ok(images)
    }

    /// Images of the generators under `g`, linear-substitution variant:
    /// `x_j -> sum_i a_ij x_i`.
    pub fn substitute_on_generators(&self, g: &FpMatrix) -> Result<Vec<AlgebraElement>> {
        self.check_group_matrix(g)?;
        let d = self.d as usize;
        let mut images = Vec::with_capacity(d);
        for j in 0..d {
            let mut acc = AlgebraElement::zero();
            for i in 0..d {
                let a = g.get(i, j);
                acc = self.add(&acc, &self.scale(&self.variable(i as u32), a));
            }
            images.push(acc);
        }
        Ok(images)
    }

    fn check_group_matrix(&self, g: &FpMatrix) -> Result<()> {
        let d = self.d as usize;
        if g.rows() != d || g.cols() != d {
            return Err(Error::ShapeMismatch(g.rows(), g.cols(), d, d));
        }
        if g.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if !g.is_invertible() {
            return Err(Error::Singular);
        }
        Ok(())
    }

    pub fn render_monomial(&self, idx: u32) -> String {
        if idx == 0 {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (j, &e) in self.exponents(idx).iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(format!("x{}", j + 1)),
                _ => parts.push(format!("x{}^{}", j + 1, e)),
            }
        }
        parts.join("*")
    }

    pub fn render_element(&self, a: &AlgebraElement) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        a.terms
            .iter()
            .map(|&(idx, c)| {
                if idx == 0 {
                    format!("{c}")
                } else if c == 1 {
                    self.render_monomial(idx)
                } else {
                    format!("{c}*{}", self.render_monomial(idx))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::{BigInt, BigUint, ToPrimitive};

    fn ctx(p: u32, n: u32, d: u32) -> Arc<AlgebraContext> {
        AlgebraContext::new(p, n, d).unwrap()
    }

    fn parse(ctx: &AlgebraContext, terms: &[(&[u16], i64)]) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for &(exps, c) in terms {
            let idx = ctx.monomial_index(exps);
            out = ctx.add(&out, &ctx.scale(&ctx.monomial(idx), ctx.field().from_integer(c)));
        }
        out
    }

    #[test]
    fn fgl_coefficients_match_binomials() {
        for p in [2u32, 3, 5, 7] {
            let c = ctx(p, 1, 1);
            for i in 1..p {
                // exact binom(p, i) / p, reduced mod p
                let num: BigUint = (1..=p as u64).product::<u64>().into();
                let den: BigUint = ((1..=i as u64).product::<u64>()
                    * (1..=(p - i) as u64).product::<u64>())
                .into();
                let binom = num / den;
                let coeff = (BigInt::from(binom) / BigInt::from(p)) % BigInt::from(p);
                assert_eq!(
                    coeff.to_u8().unwrap(),
                    c.fgl_coefficients()[i as usize - 1],
                    "p={p}, i={i}"
                );
            }
        }
    }

    #[test]
    fn monomial_indexing_round_trip() {
        let c = ctx(3, 2, 3);
        assert_eq!(c.dim(), 729);
        for idx in 0..c.dim() as u32 {
            let exps = c.exponents(idx).to_vec();
            assert_eq!(c.monomial_index(&exps), idx);
            assert_eq!(c.length(idx) as u32, exps.iter().map(|&e| e as u32).sum::<u32>());
        }
    }

    #[test]
    fn truncated_products() {
        let c = ctx(2, 1, 2);
        let x = c.variable(0);
        assert!(c.multiply(&x, &x).is_zero());

        let c = ctx(2, 2, 2);
        let (x, y) = (c.variable(0), c.variable(1));
        let s = c.add(&x, &y);
        let sq = c.multiply(&s, &s);
        assert_eq!(sq, parse(&c, &[(&[2, 0], 1), (&[0, 2], 1)]));

        let c = ctx(5, 1, 1);
        let x = c.variable(0);
        let x4 = c.power(&x, 4);
        assert!(c.multiply(&x4, &x).is_zero());
    }

    #[test]
    fn formal_sum_small_heights() {
        let c = ctx(2, 1, 2);
        let (x, y) = (c.variable(0), c.variable(1));
        let s = c.formal_sum(&x, &y).unwrap();
        assert_eq!(s, parse(&c, &[(&[1, 0], 1), (&[0, 1], 1), (&[1, 1], 1)]));

        let c = ctx(3, 1, 2);
        let (x, y) = (c.variable(0), c.variable(1));
        let s = c.formal_sum(&x, &y).unwrap();
        assert_eq!(
            s,
            parse(&c, &[(&[1, 0], 1), (&[0, 1], 1), (&[1, 2], 2), (&[2, 1], 2)])
        );

        // unit law on an assortment of elements
        let c = ctx(3, 2, 2);
        for u in [
            c.variable(0),
            parse(&c, &[(&[1, 1], 2), (&[0, 3], 1)]),
            parse(&c, &[(&[2, 0], 1), (&[1, 2], 2), (&[4, 4], 1)]),
        ] {
            assert_eq!(c.formal_sum(&u, &AlgebraElement::zero()).unwrap(), u);
        }
    }

    #[test]
    fn constant_terms_rejected() {
        let c = ctx(3, 1, 1);
        let bad = c.one();
        assert!(matches!(c.formal_sum(&bad, &c.variable(0)), Err(Error::ConstantTerm)));
        assert!(matches!(c.a_series(2, &bad), Err(Error::ConstantTerm)));
        assert!(matches!(c.a_series(3, &c.variable(0)), Err(Error::ScalarRange(3, 3))));
    }

    #[test]
    fn p_series_vanishes() {
        // doubling x at p=2, n=2: x +_F x = x^4 = 0
        let c = ctx(2, 2, 1);
        let x = c.variable(0);
        assert!(c.formal_sum(&x, &x).unwrap().is_zero());

        for (p, n) in [(2u32, 1u32), (2, 3), (3, 1), (3, 2), (5, 1)] {
            let c = ctx(p, n, 2);
            let u = c.add(&c.variable(0), &c.scale(&c.variable(1), 1));
            let mut acc = AlgebraElement::zero();
            for _ in 0..p {
                acc = c.formal_sum(&acc, &u).unwrap();
            }
            assert!(acc.is_zero(), "p-series of x+y should vanish at p={p}, n={n}");
        }
    }

    #[test]
    fn a_series_examples() {
        let c = ctx(3, 1, 1);
        let x = c.variable(0);
        assert_eq!(c.a_series(1, &x).unwrap(), x);
        assert!(c.a_series(0, &x).unwrap().is_zero());
        // on a single variable all correction terms die, so [a]x = a*x
        assert_eq!(c.a_series(2, &x).unwrap(), c.scale(&x, 2));
    }

    #[test]
    fn fgl_axioms_on_random_elements() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (p, n, d) in [(2u32, 2u32, 2u32), (3, 1, 2), (5, 1, 2), (3, 2, 1)] {
            let c = ctx(p, n, d);
            let random_positive = |rng: &mut rand_chacha::ChaCha8Rng| {
                let mut terms = Vec::new();
                for idx in 1..c.dim() as u32 {
                    if rng.gen_ratio(1, 3) {
                        terms.push((idx, rng.gen_range(1..p) as u8));
                    }
                }
                AlgebraElement::from_accumulator(terms)
            };
            for _ in 0..8 {
                let u = random_positive(&mut rng);
                let v = random_positive(&mut rng);
                let w = random_positive(&mut rng);
                let uv = c.formal_sum(&u, &v).unwrap();
                let vu = c.formal_sum(&v, &u).unwrap();
                assert_eq!(uv, vu, "commutativity");
                let uv_w = c.formal_sum(&uv, &w).unwrap();
                let v_w = c.formal_sum(&v, &w).unwrap();
                let u_vw = c.formal_sum(&u, &v_w).unwrap();
                assert_eq!(uv_w, u_vw, "associativity");
            }
        }
    }

    #[test]
    fn generator_images_under_transvection() {
        // rows index i, columns j; right-action convention
        let c = ctx(2, 1, 2);
        let g = FpMatrix::from_rows(c.field().clone(), &[vec![1, 1], vec![0, 1]]).unwrap();
        let ys = c.act_on_generators(&g).unwrap();
        assert_eq!(ys[0], c.variable(0));
        assert_eq!(ys[1], parse(&c, &[(&[1, 0], 1), (&[0, 1], 1), (&[1, 1], 1)]));

        let c = ctx(2, 2, 2);
        let g = FpMatrix::from_rows(c.field().clone(), &[vec![1, 1], vec![0, 1]]).unwrap();
        let ys = c.act_on_generators(&g).unwrap();
        assert_eq!(ys[1], parse(&c, &[(&[1, 0], 1), (&[0, 1], 1), (&[2, 2], 1)]));
    }

    #[test]
    fn identity_acts_trivially() {
        let c = ctx(3, 2, 2);
        let id = FpMatrix::identity(c.field().clone(), 2);
        let ys = c.act_on_generators(&id).unwrap();
        assert_eq!(ys[0], c.variable(0));
        assert_eq!(ys[1], c.variable(1));
        let singular = FpMatrix::zeros(c.field().clone(), 2, 2);
        assert!(c.act_on_generators(&singular).is_err());
    }

    #[test]
    fn grade_additivity_of_formal_sum() {
        // both inputs of grade class 1 -> output supported in grade class 1
        for (p, n) in [(2u32, 2u32), (3, 2), (5, 1)] {
            let c = ctx(p, n, 2);
            let u = c.variable(0);
            let v = c.variable(1);
            let s = c.formal_sum(&u, &v).unwrap();
            for &(idx, _) in s.terms() {
                assert_eq!(c.grade(idx), 1 % c.grade_modulus());
            }
        }
    }

    #[test]
    fn render_round_trip_examples() {
        let c = ctx(3, 1, 2);
        let e = parse(&c, &[(&[1, 2], 2), (&[0, 0], 1)]);
        assert_eq!(c.render_element(&e), "1 + 2*x1*x2^2");
    }
}
