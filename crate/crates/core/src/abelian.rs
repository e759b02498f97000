//! Finitely generated abelian groups, Smith normal form, and the universal
//! groups of the model gradings.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// `Z^free_rank x Z_{o_1} x ... x Z_{o_r}` with a fixed cyclic decomposition.
///
/// `torsion` lists the orders of the cyclic factors in generator order; it is
/// not required to be a divisibility chain. Elements are integer vectors of
/// length `torsion.len() + free_rank`, torsion coordinates first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAbGroup {
    pub torsion: Vec<u64>,
    pub free_rank: usize,
}

pub type Elem = Vec<i64>;

pub const GEN_LETTERS: &str = "abcdfghijklmnopqrstuvwxyz";

impl FinAbGroup {
    pub fn finite(torsion: Vec<u64>) -> Self {
        FinAbGroup {
            torsion,
            free_rank: 0,
        }
    }

    pub fn trivial() -> Self {
        Self::finite(vec![])
    }

    pub fn elementary2(n: usize) -> Self {
        Self::finite(vec![2; n])
    }

    pub fn rank(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of a finite group.
    pub fn order(&self) -> u64 {
        assert!(self.is_finite());
        self.torsion.iter().product()
    }

    pub fn zero(&self) -> Elem {
        vec![0; self.rank()]
    }

    pub fn gen(&self, j: usize) -> Elem {
        let mut v = self.zero();
        v[j] = 1;
        v
    }

    pub fn normalize(&self, x: &mut Elem) {
        for (xi, o) in x.iter_mut().zip(&self.torsion) {
            *xi = xi.rem_euclid(*o as i64);
        }
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Elem {
        let mut z: Elem = x.iter().zip(y).map(|(a, b)| a + b).collect();
        self.normalize(&mut z);
        z
    }

    pub fn sub(&self, x: &[i64], y: &[i64]) -> Elem {
        let mut z: Elem = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.normalize(&mut z);
        z
    }

    pub fn scale(&self, k: i64, x: &[i64]) -> Elem {
        let mut z: Elem = x.iter().map(|a| a * k).collect();
        self.normalize(&mut z);
        z
    }

    pub fn neg(&self, x: &[i64]) -> Elem {
        self.scale(-1, x)
    }

    pub fn is_zero(&self, x: &[i64]) -> bool {
        x.iter().all(|&a| a == 0)
    }

    /// Mixed-radix index of an element of a finite group, first coordinate least significant.
    pub fn index(&self, x: &[i64]) -> usize {
        let mut idx = 0usize;
        let mut stride = 1usize;
        for (xi, o) in x.iter().zip(&self.torsion) {
            idx += xi.rem_euclid(*o as i64) as usize * stride;
            stride *= *o as usize;
        }
        idx
    }

    pub fn element(&self, mut idx: usize) -> Elem {
        let mut v = Vec::with_capacity(self.torsion.len());
        for o in &self.torsion {
            v.push((idx % *o as usize) as i64);
            idx /= *o as usize;
        }
        v
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order() as usize).map(move |i| self.element(i))
    }

    /// Order of an element of the torsion part.
    pub fn elem_order(&self, x: &[i64]) -> u64 {
        x.iter()
            .zip(&self.torsion)
            .map(|(xi, o)| o / (xi.rem_euclid(*o as i64) as u64).gcd(o))
            .fold(1, |a, b| a.lcm(&b))
    }

    /// Invariant factors `d_1 | d_2 | ...`, all `> 1`.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let iso = self.iso_type();
        iso.invariant_factors()
    }

    pub fn iso_type(&self) -> IsoType {
        let mut divs = Vec::new();
        for &o in &self.torsion {
            divs.extend(prime_power_factors(o));
        }
        IsoType::new(divs, self.free_rank)
    }

    /// Subgroup `T^[n] = { n x }`, as a sorted list of element indices.
    pub fn multiples(&self, n: i64) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .elements()
            .map(|x| self.index(&self.scale(n, &x)))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Subgroup `T_[n] = { x : n x = 0 }`.
    pub fn torsion_of(&self, n: i64) -> Vec<usize> {
        self.elements()
            .filter(|x| self.is_zero(&self.scale(n, x)))
            .map(|x| self.index(&x))
            .collect()
    }

    /// Word in the generator letters, `e` for the identity.
    pub fn format_elem(&self, x: &[i64]) -> String {
        let mut s = String::new();
        for (j, &xj) in x.iter().enumerate().take(self.torsion.len()) {
            if xj == 0 {
                continue;
            }
            s.push(GEN_LETTERS.as_bytes()[j] as char);
            if xj != 1 {
                s.push_str(&xj.to_string());
            }
        }
        if s.is_empty() {
            s.push('e');
        }
        s
    }

    pub fn parse_elem(&self, word: &str) -> Result<Elem> {
        let mut x = self.zero();
        let w = word.trim();
        if w == "e" || w == "1" {
            return Ok(x);
        }
        let bytes = w.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let ch = bytes[i] as char;
            let j = GEN_LETTERS
                .find(ch)
                .filter(|&j| j < self.torsion.len())
                .ok_or_else(|| Error::Parse(format!("unknown generator '{ch}' in '{word}'")))?;
            i += 1;
            let start = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            let e: i64 = if start == i {
                1
            } else {
                w[start..i].parse().map_err(|_| Error::Parse(word.into()))?
            };
            x[j] += e;
        }
        self.normalize(&mut x);
        Ok(x)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.iso_type())
    }
}

fn prime_power_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut k = 0;
        while n.is_multiple_of(p) {
            n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Isomorphism type: elementary divisors `p^k` (sorted by prime, then power)
/// and free rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IsoType {
    pub elementary_divisors: Vec<(u64, u32)>,
    pub free_rank: usize,
}

impl IsoType {
    pub fn new(mut divs: Vec<(u64, u32)>, free_rank: usize) -> Self {
        divs.retain(|&(_, k)| k > 0);
        divs.sort_unstable();
        IsoType {
            elementary_divisors: divs,
            free_rank,
        }
    }

    pub fn torsion_order(&self) -> u64 {
        self.elementary_divisors
            .iter()
            .map(|&(p, k)| p.pow(k))
            .product()
    }

    pub fn invariant_factors(&self) -> Vec<u64> {
        let mut by_prime: std::collections::BTreeMap<u64, Vec<u32>> = Default::default();
        for &(p, k) in &self.elementary_divisors {
            by_prime.entry(p).or_default().push(k);
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut out = vec![1u64; len];
        for (p, mut ks) in by_prime {
            ks.sort_unstable_by(|a, b| b.cmp(a));
            for (i, k) in ks.into_iter().enumerate() {
                out[len - 1 - i] *= p.pow(k);
            }
        }
        out
    }

    /// Number of cyclic factors of order `p^i`.
    pub fn count(&self, p: u64, i: u32) -> usize {
        self.elementary_divisors
            .iter()
            .filter(|&&d| d == (p, i))
            .count()
    }
}

impl fmt::Display for IsoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        let d = &self.elementary_divisors;
        while i < d.len() {
            let mut j = i;
            while j < d.len() && d[j] == d[i] {
                j += 1;
            }
            let base = format!("Z{}", d[i].0.pow(d[i].1));
            parts.push(if j - i > 1 {
                format!("{base}^{}", j - i)
            } else {
                base
            });
            i = j;
        }
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// Result of a Smith normal form computation: `u * m * v = d` with `u`, `v`
/// unimodular and `d` diagonal, `d_1 | d_2 | ...`, nonnegative.
#[derive(Clone, Debug)]
pub struct Snf {
    pub diag: Vec<i64>,
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
}

fn ck(x: Option<i64>) -> Result<i64> {
    x.ok_or(Error::Overflow("smith normal form"))
}

fn row_axpy(m: &mut [Vec<i64>], dst: usize, src: usize, q: i64) -> Result<()> {
    for j in 0..m[dst].len() {
        let t = ck(m[src][j].checked_mul(q))?;
        m[dst][j] = ck(m[dst][j].checked_sub(t))?;
    }
    Ok(())
}

fn col_axpy(m: &mut [Vec<i64>], dst: usize, src: usize, q: i64) -> Result<()> {
    for row in m.iter_mut() {
        let t = ck(row[src].checked_mul(q))?;
        row[dst] = ck(row[dst].checked_sub(t))?;
    }
    Ok(())
}

fn identity(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn smith_normal_form(m: &[Vec<i64>], ncols: usize) -> Result<Snf> {
    let r = m.len();
    if m.iter().any(|row| row.len() != ncols) {
        return invalid("ragged relation matrix");
    }
    let mut a = m.to_vec();
    let mut u = identity(r);
    let mut v = identity(ncols);
    let n = r.min(ncols);
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..ncols {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(a, u, v, t);
            };
            a.swap(t, pi);
            u.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..r {
                let q = a[i][t].div_euclid(a[t][t]);
                if q != 0 {
                    row_axpy(&mut a, i, t, q)?;
                    row_axpy(&mut u, i, t, q)?;
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..ncols {
                let q = a[t][j].div_euclid(a[t][t]);
                if q != 0 {
                    col_axpy(&mut a, j, t, q)?;
                    col_axpy(&mut v, j, t, q)?;
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let p = a[t][t];
            let bad = (t + 1..r).find(|&i| (t + 1..ncols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    row_axpy(&mut a, t, i, -1)?;
                    row_axpy(&mut u, t, i, -1)?;
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
    }
    finish(a, u, v, n)
}

fn finish(a: Vec<Vec<i64>>, u: Vec<Vec<i64>>, v: Vec<Vec<i64>>, rank: usize) -> Result<Snf> {
    let diag = (0..rank).map(|i| a[i][i]).collect();
    Ok(Snf { diag, u, v })
}

/// `Z^ngens / <relations>`, with the image of each generator.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub group: FinAbGroup,
    pub gen_images: Vec<Elem>,
}

pub fn cokernel(ngens: usize, relations: &[Vec<i64>]) -> Result<Cokernel> {
    let snf = smith_normal_form(relations, ngens)?;
    let mut d = snf.diag.clone();
    d.resize(ngens, 0);
    let keep: Vec<usize> = (0..ngens).filter(|&i| d[i] != 1).collect();
    let torsion: Vec<u64> = keep
        .iter()
        .filter(|&&i| d[i] > 1)
        .map(|&i| d[i] as u64)
        .collect();
    let free_rank = keep.iter().filter(|&&i| d[i] == 0).count();
    let group = FinAbGroup { torsion, free_rank };
    let gen_images = (0..ngens)
        .map(|j| {
            let mut x: Elem = keep.iter().map(|&i| snf.v[j][i]).collect();
            group.normalize(&mut x);
            x
        })
        .collect();
    Ok(Cokernel { group, gen_images })
}

/// Universal group of a model grading, with the images of the generators of
/// `T` and of the symbols `u_1, ..., u_k` (where `u_1 = 0`).
#[derive(Clone, Debug)]
pub struct UniversalGroup {
    pub group: FinAbGroup,
    pub t_gens: Vec<Elem>,
    pub u: Vec<Elem>,
}

impl UniversalGroup {
    /// Image of an element of `T` (given in `T`'s coordinates).
    pub fn embed(&self, t: &[i64]) -> Elem {
        let mut acc = self.group.zero();
        for (j, &c) in t.iter().enumerate() {
            if c != 0 {
                acc = self.group.add(&acc, &self.group.scale(c, &self.t_gens[j]));
            }
        }
        acc
    }

    pub fn iso_type(&self) -> IsoType {
        self.group.iso_type()
    }
}

/// Universal group of `Gamma_M(D, q, s, d, delta)` from its presentation.
pub fn universal_group_m(
    t: &FinAbGroup,
    q: usize,
    s: usize,
    degs: &[Elem],
) -> Result<UniversalGroup> {
    if !t.is_finite() {
        return invalid("T must be finite");
    }
    if degs.len() != q {
        return invalid(format!("expected {q} degrees, got {}", degs.len()));
    }
    let k = q + 2 * s;
    if k == 0 {
        return invalid("k = q + 2s must be positive");
    }
    let r = t.torsion.len();
    let n = r + k;
    let mut rels: Vec<Vec<i64>> = Vec::new();
    for (j, &o) in t.torsion.iter().enumerate() {
        let mut row = vec![0; n];
        row[j] = o as i64;
        rels.push(row);
    }
    let mut ws: Vec<Vec<i64>> = Vec::new();
    for (i, ti) in degs.iter().enumerate() {
        let mut w = vec![0; n];
        w[r + i] = 2;
        for j in 0..r {
            w[j] -= ti[j];
        }
        ws.push(w);
    }
    for p in 0..s {
        let mut w = vec![0; n];
        w[r + q + 2 * p] = 1;
        w[r + q + 2 * p + 1] = 1;
        ws.push(w);
    }
    for pair in ws.windows(2) {
        rels.push(pair[0].iter().zip(&pair[1]).map(|(a, b)| a - b).collect());
    }
    let mut u1 = vec![0; n];
    u1[r] = 1;
    rels.push(u1);
    let ck = cokernel(n, &rels)?;
    Ok(UniversalGroup {
        group: ck.group,
        t_gens: ck.gen_images[..r].to_vec(),
        u: ck.gen_images[r..].to_vec(),
    })
}

/// Universal group of `Gamma_Mex(D, k)`: `T x Z^{k-1}`.
pub fn universal_group_mex(t: &FinAbGroup, k: usize) -> Result<UniversalGroup> {
    if k == 0 {
        return invalid("k must be positive");
    }
    let r = t.torsion.len();
    let group = FinAbGroup {
        torsion: t.torsion.clone(),
        free_rank: k - 1,
    };
    let t_gens = (0..r).map(|j| group.gen(j)).collect();
    let mut u = vec![group.zero()];
    for i in 1..k {
        u.push(group.gen(r + i - 1));
    }
    Ok(UniversalGroup { group, t_gens, u })
}

/// Alternating bicharacter `beta(x, y) = zeta_N^{x^T G y}` on a finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bichar {
    pub group: FinAbGroup,
    pub modulus: u64,
    pub gram: Vec<Vec<i64>>,
}

impl Bichar {
    /// Standard form on `prod_r Z_{l_r}^2` with generators `a_1, b_1, a_2, ...`
    /// and `beta(a_r, b_r) = zeta_{l_r}`.
    pub fn standard(ls: &[u64]) -> Self {
        let n = ls.iter().fold(1u64, |a, b| a.lcm(b));
        let r = ls.len();
        let mut gram = vec![vec![0i64; 2 * r]; 2 * r];
        let mut torsion = Vec::new();
        for (i, &l) in ls.iter().enumerate() {
            torsion.push(l);
            torsion.push(l);
            let e = (n / l) as i64;
            gram[2 * i][2 * i + 1] = e;
            gram[2 * i + 1][2 * i] = -e;
        }
        Bichar {
            group: FinAbGroup::finite(torsion),
            modulus: n,
            gram,
        }
    }

    /// Exponent `k` with `beta(x, y) = zeta_N^k`, in `0..N`.
    pub fn eval(&self, x: &[i64], y: &[i64]) -> u64 {
        let mut acc: i64 = 0;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                acc = (acc + xi * yj % self.modulus as i64 * self.gram[i][j])
                    .rem_euclid(self.modulus as i64);
            }
        }
        acc as u64
    }

    pub fn is_nondegenerate(&self) -> bool {
        let els: Vec<Elem> = self.group.elements().collect();
        els.iter()
            .skip(1)
            .all(|x| els.iter().any(|y| self.eval(x, y) != 0))
    }

    /// `S^perp` as element indices.
    pub fn perp(&self, subset: &[Elem]) -> Vec<usize> {
        self.group
            .elements()
            .filter(|x| subset.iter().all(|s| self.eval(s, x) == 0))
            .map(|x| self.group.index(&x))
            .collect()
    }
}

/// 2-adic valuation.
pub fn v2(mut n: u64) -> u32 {
    let mut k = 0;
    while n.is_multiple_of(2) && n > 0 {
        n /= 2;
        k += 1;
    }
    k
}

/// Closed-form isomorphism type of the universal group of
/// `Gamma_M(D, q, s, d, delta)` via the pulled-back flag.
pub fn universal_group_formula(
    t: &FinAbGroup,
    q: usize,
    s: usize,
    degs: &[Elem],
) -> Result<IsoType> {
    if degs.len() != q {
        return invalid("degree count mismatch");
    }
    let base = t.iso_type();
    if q <= 1 {
        return Ok(IsoType::new(base.elementary_divisors, s));
    }
    // coordinates of V = T/2T: the even-order cyclic factors
    let even: Vec<usize> = (0..t.torsion.len())
        .filter(|&j| t.torsion[j].is_multiple_of(2))
        .collect();
    let to_v = |x: &[i64]| -> u32 {
        even.iter().enumerate().fold(0u32, |acc, (b, &j)| {
            acc | (((x[j].rem_euclid(2)) as u32) << b)
        })
    };
    let depth: Vec<u32> = even.iter().map(|&j| v2(t.torsion[j])).collect();
    let max_depth = depth.iter().copied().max().unwrap_or(0);
    let v_mask = |i: u32| -> u32 {
        depth
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d <= i)
            .fold(0u32, |acc, (b, _)| acc | (1 << b))
    };
    let taus: Vec<u32> = (1..q).map(|j| to_v(&t.sub(&degs[j], &degs[0]))).collect();
    // dim of tau^{-1}(V_i) = (q-1) - rank(tau) + dim(im tau ∩ V_i)
    let span_dim_in = |mask: u32| -> usize {
        let total = crate::gf2::rank(&taus);
        let projected: Vec<u32> = taus.iter().map(|v| v & !mask).collect();
        total - crate::gf2::rank(&projected)
    };
    let n = q - 1;
    let rank_tau = crate::gf2::rank(&taus);
    let dim_u = |i: u32| -> usize {
        if i == 0 {
            0
        } else {
            n - rank_tau + span_dim_in(v_mask(i - 1))
        }
    };
    let top = max_depth + 2;
    let mut divs: Vec<(u64, u32)> = base
        .elementary_divisors
        .iter()
        .copied()
        .filter(|&(p, _)| p != 2)
        .collect();
    for i in 1..=top {
        let ni = base.count(2, i) as i64;
        let a = dim_u(i) as i64 - dim_u(i - 1) as i64;
        let b = dim_u(i + 1) as i64 - dim_u(i) as i64;
        let c = ni + a - b;
        if c < 0 {
            return Err(Error::Invalid(
                "negative multiplicity in flag formula".into(),
            ));
        }
        for _ in 0..c {
            divs.push((2, i));
        }
    }
    Ok(IsoType::new(divs, s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = b.first().map_or(0, |r| r.len());
        a.iter()
            .map(|row| {
                (0..n)
                    .map(|j| row.iter().zip(b).map(|(x, br)| x * br[j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn snf_small_example() {
        let m = vec![vec![2, 0], vec![0, 2], vec![1, 1]];
        let s = smith_normal_form(&m, 2).unwrap();
        assert_eq!(s.diag, vec![1, 2]);
        let d = mat_mul(&mat_mul(&s.u, &m), &s.v);
        for (i, row) in d.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, if i == j { s.diag[i] } else { 0 });
            }
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(FinAbGroup::trivial().to_string(), "1");
        assert_eq!(
            FinAbGroup {
                torsion: vec![4, 2],
                free_rank: 1
            }
            .to_string(),
            "Z2 x Z4 x Z"
        );
        assert_eq!(
            FinAbGroup {
                torsion: vec![2, 2, 2],
                free_rank: 2
            }
            .to_string(),
            "Z2^3 x Z^2"
        );
        assert_eq!(FinAbGroup::finite(vec![6, 3]).to_string(), "Z2 x Z3^2");
        assert_eq!(
            FinAbGroup::finite(vec![6, 3]).invariant_factors(),
            vec![3, 6]
        );
    }

    #[test]
    fn words_round_trip() {
        let t = FinAbGroup::finite(vec![2, 2, 4]);
        for x in t.elements() {
            assert_eq!(t.parse_elem(&t.format_elem(&x)).unwrap(), x);
        }
        assert_eq!(t.format_elem(&[1, 1, 0]), "ab");
        assert_eq!(t.format_elem(&[0, 0, 3]), "c3");
        assert!(t.parse_elem("z").is_err());
    }

    #[test]
    fn universal_group_example() {
        let t = FinAbGroup::elementary2(2);
        let u = universal_group_m(&t, 2, 1, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(u.iso_type().to_string(), "Z2 x Z4 x Z");
        let f = universal_group_formula(&t, 2, 1, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(f, u.iso_type());
    }

    #[test]
    fn degenerate_q() {
        let t = FinAbGroup::finite(vec![3, 4]);
        let u = universal_group_m(&t, 1, 2, &[vec![1, 1]]).unwrap();
        assert_eq!(u.iso_type(), IsoType::new(vec![(2, 2), (3, 1)], 2));
        let u0 = universal_group_m(&t, 0, 1, &[]).unwrap();
        assert_eq!(u0.iso_type().to_string(), "Z4 x Z3 x Z");
    }
}
