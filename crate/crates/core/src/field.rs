//! Finite fields F_{p^r} with table-driven arithmetic.
//!
//! Every field in scope is tiny (the largest instance is F_5 for the big rank
//! computations and extensions like F_27 or F_32 for eigenvalue work), so
//! elements are stored as `u8` indices and all arithmetic goes through
//! precomputed tables.  An element of index `e` stands for the polynomial
//! `c_0 + c_1 u + ... + c_{r-1} u^{r-1}` with `e = sum c_i p^i`, reduced
//! modulo a fixed irreducible polynomial.  For a given `(p, r)` the modulus is
//! the lexicographically smallest monic irreducible of degree `r`, comparing
//! coefficient sequences low-degree-first, which pins the representation
//! across runs.

use std::sync::Arc;

use crate::error::{Error, Result};

/// A finite field of size `p^r <= 256`.
#[derive(Debug)]
pub struct Field {
    p: u32,
    r: u32,
    size: u32,
    /// Monic modulus, low-degree-first, length `r + 1`; `[p]` placeholder for r = 1.
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    generator: u8,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomial remainder of `a` by monic `m` over F_p, both low-degree-first.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        if lead != 0 {
            for i in 0..=dm {
                let v = (a[shift + i] + lead * (p - m[i] % p)) % p;
                a[shift + i] = v;
            }
        }
        a.pop();
    }
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + ai * bj) % p;
        }
    }
    out
}

fn index_to_poly(mut e: u32, p: u32, r: u32) -> Vec<u32> {
    let mut c = vec![0u32; r as usize];
    for ci in c.iter_mut() {
        *ci = e % p;
        e /= p;
    }
    c
}

fn poly_to_index(c: &[u32], p: u32) -> u32 {
    let mut e = 0u32;
    for &ci in c.iter().rev() {
        e = e * p + ci;
    }
    e
}

/// Smallest monic irreducible of degree `r` over F_p under the low-first
/// coefficient order.  Found by trial division against every monic polynomial
/// of degree at most r/2; the search space is tiny for the sizes in scope.
fn canonical_irreducible(p: u32, r: u32) -> Vec<u32> {
    let divides = |f: &[u32], g: &[u32]| poly_rem(f, g, p).iter().all(|&c| c == 0);
    let mut counter = vec![0u32; r as usize];
    loop {
        let mut f = counter.clone();
        f.push(1);
        let mut reducible = f[0] == 0;
        if !reducible {
            'outer: for dg in 1..=(r / 2) {
                for e in 0..p.pow(dg) {
                    let mut g = index_to_poly(e, p, dg);
                    g.push(1);
                    if divides(&f, &g) {
                        reducible = true;
                        break 'outer;
                    }
                }
            }
        }
        if !reducible {
            return f;
        }
        // odometer step, highest-degree coefficient fastest so that the
        // low-degree-first sequence is enumerated in lexicographic order
        let mut pos = r as usize;
        loop {
            pos -= 1;
            counter[pos] += 1;
            if counter[pos] < p {
                break;
            }
            counter[pos] = 0;
            assert!(pos > 0, "no irreducible of degree {r} over F_{p}?");
        }
    }
}

impl Field {
    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Arc<Field>> {
        Field::extension(p, 1)
    }

    /// The extension F_{p^r} with the canonical modulus.
    pub fn extension(p: u32, r: u32) -> Result<Arc<Field>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r == 0 {
            return Err(Error::InvalidParameter("extension degree 0".into()));
        }
        let size64 = (p as u64).pow(r);
        if size64 > 256 {
            return Err(Error::FieldTooLarge(size64));
        }
        let size = size64 as u32;
        let modulus = if r == 1 {
            vec![0, 1]
        } else {
            canonical_irreducible(p, r)
        };

        let n = size as usize;
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        let mut neg = vec![0u8; n];
        for a in 0..size {
            let pa = index_to_poly(a, p, r);
            let nc: Vec<u32> = pa.iter().map(|&c| (p - c) % p).collect();
            neg[a as usize] = poly_to_index(&nc, p) as u8;
            for b in a..size {
                let pb = index_to_poly(b, p, r);
                let sum: Vec<u32> = pa.iter().zip(&pb).map(|(&x, &y)| (x + y) % p).collect();
                let s = poly_to_index(&sum, p) as u8;
                add[(a * size + b) as usize] = s;
                add[(b * size + a) as usize] = s;
                let prod = poly_rem(&poly_mul(&pa, &pb, p), &modulus, p);
                let mut prod = prod;
                prod.resize(r as usize, 0);
                let m = poly_to_index(&prod, p) as u8;
                mul[(a * size + b) as usize] = m;
                mul[(b * size + a) as usize] = m;
            }
        }
        let mut inv = vec![0u8; n];
        for a in 1..size {
            for b in 1..size {
                if mul[(a * size + b) as usize] == 1 {
                    inv[a as usize] = b as u8;
                    break;
                }
            }
            debug_assert!(inv[a as usize] != 0);
        }
        // smallest element generating the multiplicative group
        let mut generator = 0u8;
        'search: for a in 1..size {
            let mut x = a as u8;
            let mut ord = 1u32;
            while x != 1 {
                x = mul[(x as u32 * size + a) as usize];
                ord += 1;
            }
            if ord == size - 1 {
                generator = a as u8;
                break 'search;
            }
        }
        Ok(Arc::new(Field {
            p,
            r,
            size,
            modulus,
            add,
            mul,
            neg,
            inv,
            generator,
        }))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.r
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn is_prime_field(&self) -> bool {
        self.r == 1
    }

    /// The chosen irreducible modulus, low-degree-first, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Coefficients of an element with respect to the power basis.
    pub fn coefficients(&self, a: u8) -> Vec<u32> {
        index_to_poly(a as u32, self.p, self.r)
    }

    /// Fixed generator of the multiplicative group (smallest by index).
    pub fn multiplicative_generator(&self) -> u8 {
        self.generator
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.size as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.size as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u8, mut e: u64) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u8) -> u32 {
        debug_assert!(a != 0);
        let mut x = a;
        let mut ord = 1;
        while x != 1 {
            x = self.mul(x, a);
            ord += 1;
        }
        ord
    }

    /// Reduce an arbitrary integer into the prime subfield.
    pub fn from_integer(&self, v: i64) -> u8 {
        let p = self.p as i64;
        (v.rem_euclid(p)) as u8
    }

    /// The `t`-th roots of unity, as powers of the fixed generator.
    /// Requires `t | size - 1`.
    pub fn roots_of_unity(&self, t: u32) -> Result<Vec<(u32, u8)>> {
        let m = self.size - 1;
        if t == 0 || m % t != 0 {
            return Err(Error::InvalidParameter(format!(
                "no {t}-th roots of unity in a field of size {}",
                self.size
            )));
        }
        let step = m / t;
        let mut out = Vec::with_capacity(t as usize);
        for j in 0..t {
            let s = j * step;
            out.push((s, self.pow(self.generator, s as u64)));
        }
        Ok(out)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.r == other.r
    }
}
impl Eq for Field {}
