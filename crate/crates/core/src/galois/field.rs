use super::GaloisError;
use crate::arith::is_prime;

/// Largest field order accepted.
pub const MAX_FIELD_ORDER: u64 = 1 << 24;

/// `GF(p^k) = F_p[X]/(f)` for a monic irreducible `f` of degree `k`.
///
/// An element is the integer `Σ cᵢ·pⁱ` for the residue `Σ cᵢ·Xⁱ`, so `0` and
/// `1` are the field's zero and one and `p` is the class of `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    k: usize,
    /// `f` without its leading coefficient, lowest degree first.
    modulus: Vec<u32>,
    order: u32,
}

impl FiniteField {
    /// `poly` lists the coefficients of `f`, lowest degree first, including the
    /// leading 1.
    pub fn new(p: u32, poly: &[u32]) -> Result<Self, GaloisError> {
        if !is_prime(p as u64) {
            return Err(GaloisError::NotPrime(p));
        }
        let Some((&lead, low)) = poly.split_last() else {
            return Err(GaloisError::BadPolynomial("empty coefficient list".into()));
        };
        if lead != 1 {
            return Err(GaloisError::BadPolynomial("polynomial is not monic".into()));
        }
        if let Some(&c) = poly.iter().find(|&&c| c >= p) {
            return Err(GaloisError::BadPolynomial(format!(
                "coefficient {c} is not reduced mod {p}"
            )));
        }
        let k = low.len();
        if k == 0 {
            return Err(GaloisError::BadPolynomial("degree must be at least 1".into()));
        }
        let order = (p as u64).checked_pow(k as u32).filter(|&o| o <= MAX_FIELD_ORDER);
        let Some(order) = order else {
            return Err(GaloisError::FieldTooLarge);
        };
        if let Some(factor) = find_factor(p, poly) {
            return Err(GaloisError::Reducible { factor });
        }
        Ok(FiniteField {
            p,
            k,
            modulus: low.to_vec(),
            order: order as u32,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// The defining polynomial, lowest degree first, with its leading 1.
    pub fn polynomial(&self) -> Vec<u32> {
        let mut f = self.modulus.clone();
        f.push(1);
        f
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    /// The class of `X`.
    pub fn generator(&self) -> u32 {
        if self.k == 1 {
            // X ≡ -f(0) when f has degree one
            (self.p - self.modulus[0]) % self.p
        } else {
            self.p
        }
    }

    pub fn contains(&self, a: u32) -> bool {
        a < self.order
    }

    pub fn from_coeffs(&self, c: &[u32]) -> u32 {
        c.iter().rev().fold(0, |acc, &x| acc * self.p + x % self.p)
    }

    pub fn coeffs(&self, mut a: u32) -> Vec<u32> {
        let mut out = vec![0; self.k];
        for c in out.iter_mut() {
            *c = a % self.p;
            a /= self.p;
        }
        out
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let s: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % self.p).collect();
        self.from_coeffs(&s)
    }

    pub fn neg(&self, a: u32) -> u32 {
        let c: Vec<u32> = self.coeffs(a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.from_coeffs(&c)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u64; 2 * self.k - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // X^k = -(modulus)
        for d in (self.k..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &m) in self.modulus.iter().enumerate() {
                let t = prod[d - self.k + i] + (p - m as u64) * c;
                prod[d - self.k + i] = t % p;
            }
        }
        let out: Vec<u32> = prod[..self.k].iter().map(|&x| x as u32).collect();
        self.from_coeffs(&out)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a⁻¹ = a^(|F|-2)`; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.pow(a, self.order as u64 - 2))
    }

    /// `a^(p^s)`, the `s`-th power of the absolute Frobenius.
    pub fn frobenius(&self, a: u32, s: usize) -> u32 {
        (0..s % self.k).fold(a, |x, _| self.pow(x, self.p as u64))
    }

    /// Checks the field axioms on every triple from a spread-out sample of at
    /// most `size` elements, always including 0 and 1. Returns a failing
    /// triple if any.
    pub fn check_axioms(&self, size: usize) -> Result<(), (u32, u32, u32)> {
        let n = self.order as usize;
        let step = n.div_ceil(size.max(2)).max(1);
        let mut sample: Vec<u32> = (0..n).step_by(step).map(|x| x as u32).collect();
        if !sample.contains(&1) {
            sample.push(1);
        }
        sample.push((n - 1) as u32);
        for &a in &sample {
            if self.add(a, 0) != a || self.mul(a, 1) != a || self.add(a, self.neg(a)) != 0 {
                return Err((a, 0, 1));
            }
            if a != 0 && self.mul(a, self.inv(a).unwrap()) != 1 {
                return Err((a, a, a));
            }
            for &b in &sample {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err((a, b, b));
                }
                for &c in &sample {
                    let assoc = self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
                        && self.add(self.add(a, b), c) == self.add(a, self.add(b, c));
                    let dist = self.mul(a, self.add(b, c)) == self.add(self.mul(a, b), self.mul(a, c));
                    if !assoc || !dist {
                        return Err((a, b, c));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A monic factor of degree between 1 and `deg f / 2`, by trial division.
fn find_factor(p: u32, f: &[u32]) -> Option<Vec<u32>> {
    let k = f.len() - 1;
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push((c % p as u64) as u32);
                c /= p as u64;
            }
            g.push(1);
            if poly_rem(p, f, &g).iter().all(|&x| x == 0) {
                return Some(g);
            }
        }
    }
    None
}

/// Remainder of `f` by the monic `g`, both lowest degree first.
fn poly_rem(p: u32, f: &[u32], g: &[u32]) -> Vec<u32> {
    let p = p as u64;
    let mut r: Vec<u64> = f.iter().map(|&x| x as u64).collect();
    let dg = g.len() - 1;
    for d in (dg..r.len()).rev() {
        let c = r[d];
        if c == 0 {
            continue;
        }
        for (i, &gi) in g.iter().enumerate() {
            r[d - dg + i] = (r[d - dg + i] + (p - gi as u64) * c) % p;
        }
    }
    r.truncate(dg);
    r.into_iter().map(|x| x as u32).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4() {
        let f = FiniteField::new(2, &[1, 1, 1]).unwrap();
        assert_eq!(f.order(), 4);
        let w = f.generator();
        // ω² = ω + 1
        assert_eq!(f.mul(w, w), f.add(w, 1));
        assert_eq!(f.frobenius(w, 1), f.add(w, 1));
        assert_eq!(f.frobenius(w, 2), w);
        assert!(f.check_axioms(4).is_ok());
    }

    #[test]
    fn reducible_rejected() {
        // x² + 1 = (x + 1)² over F₂
        assert!(
            matches!(FiniteField::new(2, &[1, 0, 1]), Err(GaloisError::Reducible { factor }) if factor == vec![1, 1])
        );
        // x⁴ + x² + 1 = (x² + x + 1)² has no linear factor
        assert!(
            matches!(FiniteField::new(2, &[1, 0, 1, 0, 1]), Err(GaloisError::Reducible { factor }) if factor == vec![1, 1, 1])
        );
        assert!(FiniteField::new(4, &[1, 1]).is_err());
        assert!(FiniteField::new(2, &[1, 1, 0]).is_err());
    }

    #[test]
    fn gf64_multiplicative_group_is_cyclic_of_order_63() {
        let f = FiniteField::new(2, &[1, 1, 0, 0, 0, 0, 1]).unwrap();
        let w = f.generator();
        assert_eq!(f.pow(w, 63), 1);
        assert!([1u64, 3, 7, 9, 21].iter().all(|&d| f.pow(w, d) != 1));
        assert!(f.check_axioms(16).is_ok());
    }

    #[test]
    fn prime_field_and_odd_characteristic() {
        let f5 = FiniteField::new(5, &[0, 1]).unwrap();
        assert_eq!(f5.mul(3, 4), 2);
        assert_eq!(f5.inv(2), Some(3));
        // x² + 1 is irreducible mod 3
        let f9 = FiniteField::new(3, &[1, 0, 1]).unwrap();
        let i = f9.generator();
        assert_eq!(f9.mul(i, i), f9.neg(1));
        assert!(f9.check_axioms(9).is_ok());
    }
}
