//! Dense univariate polynomials over `Z/p` for a large prime `p`, with
//! distinct-degree and Cantor–Zassenhaus equal-degree factorization.

use num_bigint::{BigInt, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

/// Coefficients from low to high degree, reduced into `[0, p)`, no trailing
/// zeros. The zero polynomial is empty.
pub type Dense = Vec<BigInt>;

pub struct Fp {
    pub p: BigInt,
}

impl Fp {
    pub fn new(p: BigInt) -> Self {
        Fp { p }
    }

    pub fn red(&self, a: &BigInt) -> BigInt {
        a.mod_floor(&self.p)
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn sym(&self, a: &BigInt) -> BigInt {
        let r = self.red(a);
        if &r + &r > self.p {
            r - &self.p
        } else {
            r
        }
    }

    pub fn inv(&self, a: &BigInt) -> BigInt {
        let e = &self.p - BigInt::from(2);
        self.red(a).modpow(&e, &self.p)
    }

    pub fn trim(&self, mut a: Dense) -> Dense {
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        a
    }

    pub fn from_ints(&self, a: &[BigInt]) -> Dense {
        self.trim(a.iter().map(|c| self.red(c)).collect())
    }

    pub fn deg(a: &Dense) -> isize {
        a.len() as isize - 1
    }

    pub fn add(&self, a: &Dense, b: &Dense) -> Dense {
        let n = a.len().max(b.len());
        let z = BigInt::zero();
        let v = (0..n)
            .map(|i| self.red(&(a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))))
            .collect();
        self.trim(v)
    }

    pub fn sub(&self, a: &Dense, b: &Dense) -> Dense {
        let n = a.len().max(b.len());
        let z = BigInt::zero();
        let v = (0..n)
            .map(|i| self.red(&(a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))))
            .collect();
        self.trim(v)
    }

    pub fn mul(&self, a: &Dense, b: &Dense) -> Dense {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        self.from_ints(&out)
    }

    pub fn scale(&self, a: &Dense, c: &BigInt) -> Dense {
        self.from_ints(&a.iter().map(|x| x * c).collect::<Vec<_>>())
    }

    pub fn div_rem(&self, a: &Dense, b: &Dense) -> (Dense, Dense) {
        assert!(!b.is_empty(), "division by zero polynomial mod p");
        let mut r = a.clone();
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let inv = self.inv(b.last().unwrap());
        let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = self.red(&(r.last().unwrap() * &inv));
            for (i, y) in b.iter().enumerate() {
                r[shift + i] = self.red(&(&r[shift + i] - &c * y));
            }
            q[shift] = c;
            r = self.trim(r);
        }
        (self.trim(q), r)
    }

    pub fn rem(&self, a: &Dense, b: &Dense) -> Dense {
        self.div_rem(a, b).1
    }

    pub fn monic(&self, a: &Dense) -> Dense {
        match a.last() {
            None => Vec::new(),
            Some(l) => self.scale(a, &self.inv(l)),
        }
    }

    pub fn gcd(&self, a: &Dense, b: &Dense) -> Dense {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    pub fn deriv(&self, a: &Dense) -> Dense {
        let v: Vec<BigInt> = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        self.from_ints(&v)
    }

    /// `base^e mod m`.
    pub fn powmod(&self, base: &Dense, e: &BigInt, m: &Dense) -> Dense {
        let mut result: Dense = vec![BigInt::one()];
        let mut b = self.rem(base, m);
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                result = self.rem(&self.mul(&result, &b), m);
            }
            if i + 1 < bits {
                b = self.rem(&self.mul(&b, &b), m);
            }
        }
        self.rem(&result, m)
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    pub fn ddf(&self, f: &Dense) -> Vec<(Dense, usize)> {
        let x: Dense = vec![BigInt::zero(), BigInt::one()];
        let mut out = Vec::new();
        let mut f = f.clone();
        let mut h = x.clone();
        let mut d = 1;
        while Fp::deg(&f) >= 2 * d as isize {
            h = self.powmod(&h, &self.p, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if Fp::deg(&g) > 0 {
                f = self.div_rem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
            d += 1;
        }
        if Fp::deg(&f) > 0 {
            let d = Fp::deg(&f) as usize;
            out.push((f, d));
        }
        out
    }

    /// Splits a monic squarefree product of irreducibles of degree `d`.
    pub fn edf(&self, g: &Dense, d: usize, rng: &mut impl Rng) -> Vec<Dense> {
        let n = Fp::deg(g) as usize;
        if n == d {
            return vec![g.clone()];
        }
        let e = (self.p.pow(d as u32) - BigInt::one()) / BigInt::from(2);
        loop {
            let a: Dense = self.trim(
                (0..n)
                    .map(|_| rng.gen_bigint_range(&BigInt::zero(), &self.p))
                    .collect(),
            );
            if Fp::deg(&a) < 1 {
                continue;
            }
            let b = self.sub(&self.powmod(&a, &e, g), &vec![BigInt::one()]);
            let c = self.gcd(&b, g);
            let dc = Fp::deg(&c);
            if dc > 0 && (dc as usize) < n {
                let rest = self.div_rem(g, &c).0;
                let mut out = self.edf(&c, d, rng);
                out.extend(self.edf(&self.monic(&rest), d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a monic squarefree polynomial.
    pub fn factor(&self, f: &Dense, rng: &mut impl Rng) -> Vec<Dense> {
        let mut out = Vec::new();
        for (g, d) in self.ddf(f) {
            out.extend(self.edf(&g, d, rng));
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

/// Euclidean norm rounded up, of an integer coefficient vector.
pub fn norm2_ceil(a: &[BigInt]) -> BigInt {
    let s: BigInt = a.iter().map(|c| c * c).sum();
    let r = s.sqrt();
    if &r * &r == s {
        r
    } else {
        r + 1
    }
}
