//! Exact arithmetic in the cyclotomic integers `Z[zeta_M]`.
//!
//! An element is a coefficient vector of length `phi(M)` in the power basis,
//! reduced modulo the cyclotomic polynomial `Phi_M`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

thread_local! {
    static PHI_CACHE: RefCell<HashMap<u32, std::rc::Rc<Vec<i64>>>> = RefCell::new(HashMap::new());
}

/// Coefficients of `Phi_m`, lowest degree first.
pub fn cyclotomic_poly(m: u32) -> std::rc::Rc<Vec<i64>> {
    assert!(m >= 1);
    if let Some(p) = PHI_CACHE.with(|c| c.borrow().get(&m).cloned()) {
        return p;
    }
    // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let den = cyclotomic_poly(d);
            num = poly_div_exact(&num, &den);
        }
    }
    let rc = std::rc::Rc::new(num);
    PHI_CACHE.with(|c| c.borrow_mut().insert(m, rc.clone()));
    rc
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    assert_eq!(den[dd], 1);
    let nd = r.len() - 1;
    let mut q = vec![0i64; nd - dd + 1];
    for i in (0..=nd - dd).rev() {
        let c = r[i + dd];
        q[i] = c;
        for j in 0..=dd {
            r[i + j] -= c * den[j];
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

pub fn euler_phi(m: u32) -> u32 {
    (cyclotomic_poly(m).len() - 1) as u32
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclo {
    m: u32,
    c: Vec<i64>,
}

impl Cyclo {
    pub fn zero(m: u32) -> Self {
        Cyclo {
            m,
            c: vec![0; euler_phi(m) as usize],
        }
    }

    pub fn from_int(m: u32, v: i64) -> Self {
        let mut z = Self::zero(m);
        z.c[0] = v;
        z
    }

    pub fn one(m: u32) -> Self {
        Self::from_int(m, 1)
    }

    /// `zeta_M^k`.
    pub fn zeta(m: u32, k: i64) -> Self {
        let k = k.rem_euclid(m as i64) as usize;
        let mut raw = vec![0i64; k + 1];
        raw[k] = 1;
        Self::reduce(m, raw)
    }

    fn reduce(m: u32, mut raw: Vec<i64>) -> Self {
        let phi = cyclotomic_poly(m);
        let d = phi.len() - 1;
        if raw.len() > d {
            for i in (d..raw.len()).rev() {
                let c = raw[i];
                if c != 0 {
                    for j in 0..=d {
                        raw[i - d + j] -= c * phi[j];
                    }
                }
            }
        }
        raw.resize(d, 0);
        Cyclo { m, c: raw }
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.m, o.m);
        Cyclo {
            m: self.m,
            c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.m, o.m);
        Cyclo {
            m: self.m,
            c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Cyclo {
            m: self.m,
            c: self.c.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        Cyclo {
            m: self.m,
            c: self.c.iter().map(|a| a * k).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.m, o.m);
        let n = self.c.len();
        let mut raw = vec![0i64; 2 * n.max(1)];
        for (i, a) in self.c.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                raw[i + j] += a * b;
            }
        }
        Self::reduce(self.m, raw)
    }

    /// Multiply by `zeta_M^k`.
    pub fn mul_zeta(&self, k: i64) -> Self {
        if k.rem_euclid(self.m as i64) == 0 {
            return self.clone();
        }
        self.mul(&Self::zeta(self.m, k))
    }

    /// Complex conjugation, `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        let mut acc = Self::zero(self.m);
        for (i, a) in self.c.iter().enumerate() {
            if *a != 0 {
                acc = acc.add(&Self::zeta(self.m, -(i as i64)).scale(*a));
            }
        }
        acc
    }

    /// Reinterpret in `Z[zeta_{M'}]` for a multiple `M'` of `M`.
    pub fn lift(&self, m2: u32) -> Self {
        assert_eq!(m2 % self.m, 0);
        let f = (m2 / self.m) as i64;
        let mut acc = Self::zero(m2);
        for (i, a) in self.c.iter().enumerate() {
            if *a != 0 {
                acc = acc.add(&Self::zeta(m2, i as i64 * f).scale(*a));
            }
        }
        acc
    }

    /// Image under `zeta -> r` in `F_p`; `r` must have exact order `M` mod `p`.
    pub fn to_fp(&self, p: u64, r: u64) -> u64 {
        let mut acc = 0u64;
        let mut pw = 1u64;
        for a in &self.c {
            let a = a.rem_euclid(p as i64) as u64;
            acc = (acc + a * pw % p) % p;
            pw = pw * r % p;
        }
        acc
    }

    /// Numerical value under `zeta -> exp(2 pi i / M)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, a) in self.c.iter().enumerate() {
            let ang = 2.0 * std::f64::consts::PI * i as f64 / self.m as f64;
            re += *a as f64 * ang.cos();
            im += *a as f64 * ang.sin();
        }
        (re, im)
    }

    /// Sign of a real element, `None` when zero or not real.
    pub fn real_sign(&self) -> Option<i8> {
        if self.is_zero() || *self != self.conj() {
            return None;
        }
        let (re, _) = self.to_complex();
        assert!(
            re.abs() > 1e-9,
            "real cyclotomic integer too close to zero to sign"
        );
        Some(if re > 0.0 { 1 } else { -1 })
    }

    /// `Some(k)` when the element equals `zeta^k`.
    pub fn as_root_of_unity(&self) -> Option<u32> {
        (0..self.m).find(|&k| *self == Self::zeta(self.m, k as i64))
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo[{}]{:?}", self.m, self.c)
    }
}

/// A prime `p = 1 mod m` together with an element of exact order `m` in `F_p`.
pub fn prime_with_root(m: u32) -> (u64, u64) {
    let m64 = m as u64;
    let mut p = (1u64 << 20) / m64 * m64 + 1;
    loop {
        if is_prime(p) {
            if let Some(r) = root_of_order(p, m64) {
                return (p, r);
            }
        }
        p += m64;
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn root_of_order(p: u64, m: u64) -> Option<u64> {
    let primes: Vec<u64> = (2..=m).filter(|&q| m.is_multiple_of(q) && is_prime(q)).collect();
    for a in 2..p {
        let r = pow_mod(a, (p - 1) / m, p);
        if primes.iter().all(|&q| pow_mod(r, m / q, p) != 1) && (m == 1 || r != 1) {
            return Some(r);
        }
    }
    None
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Rank of a matrix over `F_p` (rows are consumed).
pub fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][col], p);
        for j in 0..ncols {
            rows[rank][j] = rows[rank][j] * inv % p;
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][col] != 0 {
                let f = rows[i][col];
                for j in 0..ncols {
                    let sub = f * rows[rank][j] % p;
                    rows[i][j] = (rows[i][j] + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polys() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(2), vec![1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(36), 12);
    }

    #[test]
    fn zeta_powers_cycle() {
        for m in [2u32, 3, 4, 6, 8, 12, 18] {
            let z = Cyclo::zeta(m, 1);
            let mut acc = Cyclo::one(m);
            for _ in 0..m {
                acc = acc.mul(&z);
            }
            assert_eq!(acc, Cyclo::one(m));
            assert_eq!(z.mul(&z.conj()), Cyclo::one(m));
            assert_eq!(Cyclo::zeta(m, 3).as_root_of_unity(), Some(3 % m));
        }
    }

    #[test]
    fn lift_is_ring_map() {
        let a = Cyclo::zeta(6, 1).add(&Cyclo::from_int(6, 2));
        let b = Cyclo::zeta(6, 5).scale(3);
        assert_eq!(a.mul(&b).lift(12), a.lift(12).mul(&b.lift(12)));
        assert_eq!(Cyclo::zeta(4, 1).lift(12), Cyclo::zeta(12, 3));
    }

    #[test]
    fn fp_image_is_ring_map() {
        let (p, r) = prime_with_root(12);
        assert_eq!(p % 12, 1);
        let a = Cyclo::zeta(12, 7).add(&Cyclo::from_int(12, -4));
        let b = Cyclo::zeta(12, 2).scale(5);
        assert_eq!(a.mul(&b).to_fp(p, r), a.to_fp(p, r) * b.to_fp(p, r) % p);
    }

    #[test]
    fn real_sign() {
        let z = Cyclo::zeta(8, 1);
        let sqrt2 = z.add(&z.conj());
        assert_eq!(sqrt2.real_sign(), Some(1));
        assert_eq!(sqrt2.neg().real_sign(), Some(-1));
        assert_eq!(z.real_sign(), None);
    }
}
