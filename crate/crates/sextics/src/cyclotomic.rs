//! Exact arithmetic in ℤ[ζ_N], represented as integer polynomials modulo
//! x^N − 1. Equality of ring elements is decided by divisibility of the
//! difference by the N-th cyclotomic polynomial Φ_N, so nothing is ever
//! rounded.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub struct CycloRing {
    n: usize,
    /// Φ_N, monic, ascending coefficients.
    phi: Vec<BigInt>,
}

/// x^n − 1 as a coefficient vector.
fn x_pow_minus_one(n: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = BigInt::from(-1);
    p[n] = BigInt::one();
    p
}

fn poly_deg(p: &[BigInt]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Exact division of polynomials over ℤ; the divisor must be monic
/// (cyclotomic polynomials are) and must divide exactly.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let (q, r) = poly_divmod(num, den);
    assert!(poly_deg(&r).is_none(), "non-exact cyclotomic division");
    q
}

fn poly_divmod(num: &[BigInt], den: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let dd = poly_deg(den).expect("division by zero polynomial");
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut rem = num.to_vec();
    let nd = match poly_deg(&rem) {
        Some(d) if d >= dd => d,
        _ => return (vec![BigInt::zero()], rem),
    };
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let coef = rem[k + dd].clone();
        if coef.is_zero() {
            continue;
        }
        quot[k] = coef.clone();
        for i in 0..=dd {
            let sub = &coef * &den[i];
            rem[k + i] -= sub;
        }
    }
    rem.truncate(dd);
    (quot, rem)
}

/// Φ_n by the recursion Φ_n = (x^n − 1) / Π_{d|n, d<n} Φ_d.
fn cyclotomic_poly(n: usize) -> Vec<BigInt> {
    assert!(n >= 1);
    let mut num = x_pow_minus_one(n);
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = poly_div_exact(&num, &cyclotomic_poly(d));
        }
    }
    num
}

impl CycloRing {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        CycloRing {
            n,
            phi: cyclotomic_poly(n),
        }
    }

    pub fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.n]
    }

    /// ζ_N^k as a ring element.
    pub fn root_power(&self, k: i64) -> Vec<BigInt> {
        let mut v = self.zero();
        let idx = k.rem_euclid(self.n as i64) as usize;
        v[idx] = BigInt::one();
        v
    }

    pub fn add_assign(&self, a: &mut [BigInt], b: &[BigInt]) {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
    }

    pub fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(&self, a: &[BigInt], c: &BigInt) -> Vec<BigInt> {
        a.iter().map(|x| x * c).collect()
    }

    /// Product modulo x^N − 1.
    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = self.zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let k = (i + j) % self.n;
                out[k] += ai * bj;
            }
        }
        out
    }

    /// True iff the element is zero in ℤ[ζ_N], i.e. Φ_N divides it.
    pub fn is_zero(&self, a: &[BigInt]) -> bool {
        if poly_deg(a).is_none() {
            return true;
        }
        let (_, r) = poly_divmod(a, &self.phi);
        poly_deg(&r).is_none()
    }

    pub fn eq(&self, a: &[BigInt], b: &[BigInt]) -> bool {
        self.is_zero(&self.sub(a, b))
    }

    /// √2 = ζ₈ + ζ₈⁻¹; requires 8 | N.
    pub fn sqrt_two(&self) -> Vec<BigInt> {
        assert!(self.n.is_multiple_of(8));
        let mut v = self.zero();
        v[self.n / 8] += BigInt::one();
        v[self.n - self.n / 8] += BigInt::one();
        v
    }

    /// √p for an odd prime p via the quadratic Gauss sum
    /// Σ_k ζ_p^{k²} = √p (p ≡ 1 mod 4) or i√p (p ≡ 3 mod 4).
    /// Requires p | N and 4 | N.
    pub fn sqrt_odd_prime(&self, p: usize) -> Vec<BigInt> {
        assert!(p % 2 == 1 && self.n.is_multiple_of(p) && self.n.is_multiple_of(4));
        let step = self.n / p;
        let mut g = self.zero();
        for k in 0..p {
            g[(k * k % p) * step] += BigInt::one();
        }
        if p % 4 == 1 {
            g
        } else {
            // multiply by −i = ζ₄³
            self.mul(&g, &self.root_power(3 * (self.n as i64) / 4))
        }
    }

    /// √m for a positive integer m, as a ring element.
    /// Requires: 8 | N when 2 | m to odd multiplicity, p | N for every odd
    /// prime p dividing m to odd multiplicity.
    pub fn sqrt_positive_int(&self, m: u64) -> Vec<BigInt> {
        assert!(m > 0);
        let mut rest = m;
        let mut rational = BigInt::one();
        let mut acc = self.root_power(0);
        let mut two_exp = 0u32;
        while rest.is_multiple_of(2) {
            rest /= 2;
            two_exp += 1;
        }
        rational <<= two_exp / 2;
        if two_exp % 2 == 1 {
            acc = self.mul(&acc, &self.sqrt_two());
        }
        let mut p = 3u64;
        while p * p <= rest {
            let mut e = 0u32;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            if e > 0 {
                rational *= BigInt::from(p).pow(e / 2);
                if e % 2 == 1 {
                    acc = self.mul(&acc, &self.sqrt_odd_prime(p as usize));
                }
            }
            p += 2;
        }
        if rest > 1 {
            acc = self.mul(&acc, &self.sqrt_odd_prime(rest as usize));
        }
        self.scale(&acc, &rational)
    }
}
