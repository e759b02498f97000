//! Quadratic and alternating forms over GF(2), their isometry groups acting
//! on multisets, flags of `T/T^[2]`, and lifting of symplectic matrices.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::abelian::{v2, Bichar, Elem, FinAbGroup};
use crate::error::{invalid, Error, Result};
use crate::gf2::{self, general_linear, Mat2, Vec2};

/// Alternating bilinear form on `GF(2)^dim`, stored as its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alt2 {
    pub dim: usize,
    pub gram: Mat2,
}

impl Alt2 {
    pub fn b(&self, x: Vec2, y: Vec2) -> u32 {
        gf2::dot(x, self.gram.apply(y))
    }

    /// Standard symplectic form pairing coordinates `2i` and `2i+1`.
    pub fn standard(dim: usize) -> Self {
        assert!(dim.is_multiple_of(2));
        let cols = (0..dim).map(|i| 1 << (i ^ 1)).collect();
        Alt2 {
            dim,
            gram: Mat2 { cols },
        }
    }

    pub fn is_nondegenerate(&self) -> bool {
        gf2::rank(&self.gram.cols) == self.dim
    }

    pub fn preserved_by(&self, a: &Mat2) -> bool {
        (0..self.dim)
            .all(|i| (0..self.dim).all(|j| self.b(a.cols[i], a.cols[j]) == self.b(1 << i, 1 << j)))
    }
}

/// Quadratic form on `GF(2)^dim` given by its value table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSpace2 {
    pub dim: usize,
    pub values: Vec<u8>,
}

impl QuadSpace2 {
    pub fn from_values(dim: usize, values: Vec<u8>) -> Result<Self> {
        if values.len() != 1 << dim {
            return invalid("quadratic form table has the wrong length");
        }
        let qs = QuadSpace2 { dim, values };
        if qs.values[0] != 0 {
            return invalid("Q(0) must be 0");
        }
        // a quadratic form is determined by its values on the basis and its polar form
        let alt = qs.polarize();
        for x in 0..(1u32 << dim) {
            let mut expect = 0u32;
            let bits: Vec<usize> = (0..dim).filter(|&i| x >> i & 1 == 1).collect();
            for (a, &i) in bits.iter().enumerate() {
                expect ^= u32::from(qs.values[1 << i]);
                for &j in &bits[a + 1..] {
                    expect ^= alt.b(1 << i, 1 << j);
                }
            }
            if expect != u32::from(qs.values[x as usize]) {
                return invalid("table is not a quadratic form");
            }
        }
        Ok(qs)
    }

    /// Sum of `m` hyperbolic planes, with the last plane anisotropic when `arf == 1`.
    pub fn standard(m: usize, arf: u8) -> Self {
        let dim = 2 * m;
        let values = (0..(1u32 << dim))
            .map(|x| {
                let mut v = 0u32;
                for i in 0..m {
                    let (a, b) = (x >> (2 * i) & 1, x >> (2 * i + 1) & 1);
                    v ^= a & b;
                    if arf == 1 && i + 1 == m {
                        v ^= a ^ b;
                    }
                }
                v as u8
            })
            .collect();
        QuadSpace2 { dim, values }
    }

    pub fn q(&self, x: Vec2) -> u32 {
        u32::from(self.values[x as usize])
    }

    pub fn polarize(&self) -> Alt2 {
        let cols = (0..self.dim)
            .map(|j| {
                (0..self.dim).fold(0u32, |acc, i| {
                    let (x, y) = (1u32 << i, 1u32 << j);
                    acc | ((self.q(x ^ y) ^ self.q(x) ^ self.q(y)) << i)
                })
            })
            .collect();
        Alt2 {
            dim: self.dim,
            gram: Mat2 { cols },
        }
    }

    /// Arf invariant: the value taken by the majority of vectors (0 for dim 0).
    pub fn arf(&self) -> u8 {
        let ones = self.values.iter().filter(|&&v| v == 1).count();
        u8::from(2 * ones > self.values.len())
    }

    pub fn preserved_by(&self, a: &Mat2) -> bool {
        (0..(1u32 << self.dim)).all(|x| self.q(a.apply(x)) == self.q(x))
    }

    /// Points with `Q(x) = value`.
    pub fn level_set(&self, value: u32) -> Vec<Vec2> {
        (0..(1u32 << self.dim))
            .filter(|&x| self.q(x) == value)
            .collect()
    }
}

/// Permutation group on `0..n` given by generators.
#[derive(Clone, Debug)]
pub struct GroupAction {
    pub n: usize,
    pub gens: Vec<Vec<u32>>,
}

impl GroupAction {
    pub fn trivial(n: usize) -> Self {
        GroupAction { n, gens: vec![] }
    }

    /// Affine maps `x -> A x + v` on `GF(2)^dim`.
    pub fn from_affine(dim: usize, maps: &[(Mat2, Vec2)]) -> Self {
        let n = 1usize << dim;
        let gens = maps
            .iter()
            .map(|(a, v)| (0..n as u32).map(|x| a.apply(x) ^ v).collect())
            .filter(|p: &Vec<u32>| p.iter().enumerate().any(|(i, &y)| i as u32 != y))
            .collect();
        GroupAction { n, gens }
    }

    pub fn from_linear(dim: usize, mats: &[Mat2]) -> Self {
        let maps: Vec<(Mat2, Vec2)> = mats.iter().map(|m| (m.clone(), 0)).collect();
        Self::from_affine(dim, &maps)
    }

    /// Group order by closure; refuses groups larger than `cap`.
    pub fn order_capped(&self, cap: usize) -> Result<usize> {
        let id: Vec<u32> = (0..self.n as u32).collect();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone());
        queue.push_back(id);
        while let Some(p) = queue.pop_front() {
            for g in &self.gens {
                let q: Vec<u32> = p.iter().map(|&x| g[x as usize]).collect();
                if seen.insert(q.clone()) {
                    if seen.len() > cap {
                        return Err(Error::Capacity(format!("group order exceeds {cap}")));
                    }
                    queue.push_back(q);
                }
            }
        }
        Ok(seen.len())
    }

    pub fn order(&self) -> usize {
        self.order_capped(2_000_000).expect("group too large")
    }

    pub fn point_orbit(&self, x: u32) -> Vec<u32> {
        let mut seen = vec![false; self.n];
        let mut out = vec![x];
        seen[x as usize] = true;
        let mut i = 0;
        while i < out.len() {
            let y = out[i];
            for g in &self.gens {
                let z = g[y as usize];
                if !seen[z as usize] {
                    seen[z as usize] = true;
                    out.push(z);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }
}

/// Canonical representatives of multiset orbits, memoized per action.
#[derive(Debug)]
pub struct OrbitCanon {
    pub action: GroupAction,
    memo: HashMap<Vec<u32>, Vec<u32>>,
}

impl OrbitCanon {
    pub fn new(action: GroupAction) -> Self {
        OrbitCanon {
            action,
            memo: HashMap::new(),
        }
    }

    /// Lexicographically least sorted multiset in the orbit.
    pub fn canonical(&mut self, multiset: &[u32]) -> Vec<u32> {
        let mut start = multiset.to_vec();
        start.sort_unstable();
        if let Some(c) = self.memo.get(&start) {
            return c.clone();
        }
        let mut orbit = vec![start.clone()];
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        seen.insert(start);
        let mut i = 0;
        while i < orbit.len() {
            for g in &self.action.gens {
                let mut img: Vec<u32> = orbit[i].iter().map(|&x| g[x as usize]).collect();
                img.sort_unstable();
                if seen.insert(img.clone()) {
                    orbit.push(img);
                }
            }
            i += 1;
        }
        let min = orbit.iter().min().cloned().unwrap_or_default();
        for o in orbit {
            self.memo.insert(o, min.clone());
        }
        min
    }

    /// Canonical representatives of all orbits of `size`-multisets drawn from `carrier`.
    pub fn orbit_reps(&mut self, carrier: &[u32], size: usize) -> Vec<Vec<u32>> {
        let mut carrier = carrier.to_vec();
        carrier.sort_unstable();
        let mut reps: Vec<Vec<u32>> = Vec::new();
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        for ms in itertools::Itertools::combinations_with_replacement(carrier.iter().copied(), size)
        {
            let c = self.canonical(&ms);
            if seen.insert(c.clone()) {
                reps.push(c);
            }
        }
        reps.sort();
        reps
    }
}

/// Greedy small generating set from a list of group elements.
pub fn reduce_generators(n: usize, elements: &[Mat2]) -> Vec<Mat2> {
    let mut gens: Vec<Mat2> = Vec::new();
    let mut closure: HashSet<u64> = HashSet::new();
    closure.insert(Mat2::identity(n).pack());
    for g in elements {
        if closure.contains(&g.pack()) {
            continue;
        }
        gens.push(g.clone());
        closure = matrix_closure(n, &gens, usize::MAX).expect("uncapped");
    }
    gens
}

/// All products of the generators, as packed matrices.
pub fn matrix_closure(n: usize, gens: &[Mat2], cap: usize) -> Result<HashSet<u64>> {
    let id = Mat2::identity(n);
    let mut seen = HashSet::new();
    seen.insert(id.pack());
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for g in gens {
            let p = g.mul(&m);
            if seen.insert(p.pack()) {
                if seen.len() > cap {
                    return Err(Error::Capacity(format!(
                        "matrix group exceeds {cap} elements"
                    )));
                }
                queue.push_back(p);
            }
        }
    }
    Ok(seen)
}

/// Symplectic transvection `x -> x + B(x, v) v`.
pub fn transvection(alt: &Alt2, v: Vec2) -> Mat2 {
    Mat2 {
        cols: (0..alt.dim)
            .map(|i| (1u32 << i) ^ if alt.b(1 << i, v) == 1 { v } else { 0 })
            .collect(),
    }
}

/// Elements of the isometry group of `alt` (exhaustive, `dim <= 4`).
pub fn symplectic_elements(alt: &Alt2) -> Vec<Mat2> {
    general_linear(alt.dim)
        .into_iter()
        .filter(|a| alt.preserved_by(a))
        .collect()
}

/// Elements of `O(Q)` (exhaustive, `dim <= 4`).
pub fn orthogonal_elements(qs: &QuadSpace2) -> Vec<Mat2> {
    general_linear(qs.dim)
        .into_iter()
        .filter(|a| qs.preserved_by(a))
        .collect()
}

/// Generators of `Sp(alt)`.
pub fn symplectic_generators(alt: &Alt2) -> Vec<Mat2> {
    if alt.dim <= 4 {
        reduce_generators(alt.dim, &symplectic_elements(alt))
    } else {
        (1..(1u32 << alt.dim))
            .map(|v| transvection(alt, v))
            .collect()
    }
}

/// Generators of `O(Q)`. Orthogonal transvections generate except for
/// `O+(4,2)`, so small dimensions use the exhaustive list.
pub fn orthogonal_generators(qs: &QuadSpace2) -> Vec<Mat2> {
    if qs.dim <= 4 {
        reduce_generators(qs.dim, &orthogonal_elements(qs))
    } else {
        let alt = qs.polarize();
        qs.level_set(1)
            .into_iter()
            .map(|v| transvection(&alt, v))
            .collect()
    }
}

pub fn isometry_group(qs: &QuadSpace2) -> GroupAction {
    GroupAction::from_linear(qs.dim, &orthogonal_generators(qs))
}

pub fn symplectic_group(alt: &Alt2) -> GroupAction {
    GroupAction::from_linear(alt.dim, &symplectic_generators(alt))
}

/// `x -> A x + v` for `A in O(Q)` and all translations `v`.
pub fn affine_isometry_group(qs: &QuadSpace2) -> GroupAction {
    let mut maps: Vec<(Mat2, Vec2)> = orthogonal_generators(qs)
        .into_iter()
        .map(|a| (a, 0))
        .collect();
    for i in 0..qs.dim {
        maps.push((Mat2::identity(qs.dim), 1 << i));
    }
    GroupAction::from_affine(qs.dim, &maps)
}

fn prod_4i_minus_1(n: u32) -> u64 {
    (1..n).map(|i| 4u64.pow(i) - 1).product()
}

/// `|O^{+-}(2n, 2)|` from the classical formula.
pub fn orthogonal_order_formula(n: u32, arf: u8) -> u64 {
    let base = 2 * 2u64.pow(n * (n.saturating_sub(1))) * prod_4i_minus_1(n);
    if arf == 0 {
        base * (2u64.pow(n) - 1)
    } else {
        base * (2u64.pow(n) + 1)
    }
}

pub fn symplectic_order_formula(n: u32) -> u64 {
    2u64.pow(n * n) * (1..=n).map(|i| 4u64.pow(i) - 1).product::<u64>()
}

/// Flag `0 = V_0 <= V_1 <= ... <= V_L = T/T^[2]` with the forms induced by
/// `beta^{2^{i-1}}` on the quotients `W_i = V_i / V_{i-1}`.
///
/// Coordinates of `V` are the even-order cyclic factors of `T`, in order.
#[derive(Clone, Debug)]
pub struct Flag2 {
    pub dim: usize,
    /// 2-adic valuation of the order of each coordinate's cyclic factor.
    pub depth: Vec<u32>,
    /// Nonzero quotients: depth `i`, the coordinates spanning `W_i`, its form.
    pub quotients: Vec<(u32, Vec<usize>, Alt2)>,
}

impl Flag2 {
    pub fn subspace_mask(&self, i: u32) -> Vec2 {
        self.depth
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d <= i)
            .fold(0, |acc, (b, _)| acc | (1 << b))
    }

    pub fn length(&self) -> usize {
        self.quotients.len()
    }

    pub fn depths(&self) -> Vec<u32> {
        let mut d = self.depth.clone();
        d.sort_unstable();
        d.dedup();
        d
    }

    fn restrict(&self, x: Vec2, coords: &[usize]) -> Vec2 {
        coords
            .iter()
            .enumerate()
            .fold(0, |acc, (k, &c)| acc | ((x >> c & 1) << k))
    }

    pub fn is_stabilized_by(&self, a: &Mat2) -> bool {
        for &i in &self.depths() {
            let mask = self.subspace_mask(i);
            if (0..self.dim).any(|c| mask >> c & 1 == 1 && a.cols[c] & !mask != 0) {
                return false;
            }
        }
        for (_, coords, form) in &self.quotients {
            for (x, &cx) in coords.iter().enumerate() {
                for (y, &cy) in coords.iter().enumerate() {
                    let ix = self.restrict(a.cols[cx], coords);
                    let iy = self.restrict(a.cols[cy], coords);
                    if form.b(ix, iy) != form.b(1 << x, 1 << y) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

pub fn build_flag(beta: &Bichar) -> Result<Flag2> {
    let t = &beta.group;
    let even: Vec<usize> = (0..t.torsion.len())
        .filter(|&j| t.torsion[j].is_multiple_of(2))
        .collect();
    let depth: Vec<u32> = even.iter().map(|&j| v2(t.torsion[j])).collect();
    let lift = |k: usize| -> Elem {
        let j = even[k];
        let o = t.torsion[j];
        let mut x = t.zero();
        x[j] = (o >> v2(o)) as i64;
        x
    };
    let mut ds = depth.clone();
    ds.sort_unstable();
    ds.dedup();
    let mut quotients = Vec::new();
    for &i in &ds {
        let coords: Vec<usize> = (0..even.len()).filter(|&k| depth[k] == i).collect();
        let cols = (0..coords.len())
            .map(|y| {
                (0..coords.len()).fold(0u32, |acc, x| {
                    let e = beta.eval(&lift(coords[x]), &lift(coords[y]));
                    let v = e * (1u64 << (i - 1)) % beta.modulus;
                    let bit = if v == 0 {
                        0
                    } else if 2 * v == beta.modulus {
                        1
                    } else {
                        return u32::MAX;
                    };
                    if acc == u32::MAX {
                        acc
                    } else {
                        acc | (bit << x)
                    }
                })
            })
            .collect::<Vec<u32>>();
        if cols.contains(&u32::MAX) {
            return invalid("quotient form is not 2-valued");
        }
        let form = Alt2 {
            dim: coords.len(),
            gram: Mat2 { cols },
        };
        if !form.is_nondegenerate() {
            return invalid("bicharacter is degenerate on a flag quotient");
        }
        quotients.push((i, coords, form));
    }
    Ok(Flag2 {
        dim: even.len(),
        depth,
        quotients,
    })
}

/// Stabilizer of the flag and its quotient forms, as a list of elements (`dim <= 4`).
pub fn flag_stabilizer_elements(flag: &Flag2) -> Vec<Mat2> {
    general_linear(flag.dim)
        .into_iter()
        .filter(|a| flag.is_stabilized_by(a))
        .collect()
}

/// Generators of the flag stabilizer: symplectic transvections inside each
/// quotient and elementary maps `e_a -> e_a + e_b` with `e_b` strictly lower.
pub fn flag_stabilizer_generators(flag: &Flag2) -> Vec<Mat2> {
    let mut gens = Vec::new();
    for (_, coords, form) in &flag.quotients {
        let local = if form.dim <= 4 {
            reduce_generators(form.dim, &symplectic_elements(form))
        } else {
            symplectic_generators(form)
        };
        for g in local {
            let mut m = Mat2::identity(flag.dim);
            for (x, &c) in coords.iter().enumerate() {
                m.cols[c] = coords
                    .iter()
                    .enumerate()
                    .fold(0, |acc, (y, &cy)| acc | ((g.cols[x] >> y & 1) << cy));
            }
            gens.push(m);
        }
    }
    for a in 0..flag.dim {
        for b in 0..flag.dim {
            if flag.depth[b] < flag.depth[a] {
                let mut m = Mat2::identity(flag.dim);
                m.cols[a] ^= 1 << b;
                gens.push(m);
            }
        }
    }
    gens
}

pub fn flag_stabilizer(flag: &Flag2) -> GroupAction {
    GroupAction::from_linear(flag.dim, &flag_stabilizer_generators(flag))
}

/// Image of `Aut(T, beta)` in `GL(T/T^[2])`, computed on the 2-primary part.
pub fn aut_t_beta_image(beta: &Bichar) -> Result<Vec<Mat2>> {
    let t = &beta.group;
    let even: Vec<usize> = (0..t.torsion.len())
        .filter(|&j| t.torsion[j].is_multiple_of(2))
        .collect();
    let ords: Vec<i64> = even.iter().map(|&j| 1i64 << v2(t.torsion[j])).collect();
    let msize: i64 = ords.iter().product();
    if msize > 4096 {
        return Err(Error::Capacity("2-primary part too large".into()));
    }
    let n = beta.modulus as i64;
    // beta on h_j = odd(o_j) g_j
    let r = even.len();
    let mut bh = vec![vec![0i64; r]; r];
    for i in 0..r {
        for j in 0..r {
            let (oi, oj) = (t.torsion[even[i]], t.torsion[even[j]]);
            let (ui, uj) = ((oi >> v2(oi)) as i64, (oj >> v2(oj)) as i64);
            bh[i][j] = (ui * uj % n * beta.gram[even[i]][even[j]]).rem_euclid(n);
        }
    }
    let mgroup = FinAbGroup::finite(ords.iter().map(|&o| o as u64).collect());
    let elems: Vec<Elem> = mgroup.elements().collect();
    let ev = |x: &[i64], y: &[i64]| -> i64 {
        let mut acc = 0i64;
        for i in 0..r {
            for j in 0..r {
                acc = (acc + x[i] * y[j] % n * bh[i][j]).rem_euclid(n);
            }
        }
        acc
    };
    let candidates: Vec<Vec<usize>> = (0..r)
        .map(|j| {
            (0..elems.len())
                .filter(|&k| mgroup.is_zero(&mgroup.scale(ords[j], &elems[k])))
                .collect()
        })
        .collect();
    let mut out: HashSet<u64> = HashSet::new();
    let mut chosen: Vec<usize> = Vec::new();
    aut_rec(&candidates, &elems, &bh, &ev, &mut chosen, &mut out);
    let mut v: Vec<u64> = out.into_iter().collect();
    v.sort_unstable();
    Ok(v.into_iter().map(|k| Mat2::unpack(k, r)).collect())
}

fn aut_rec(
    candidates: &[Vec<usize>],
    elems: &[Elem],
    bh: &[Vec<i64>],
    ev: &dyn Fn(&[i64], &[i64]) -> i64,
    chosen: &mut Vec<usize>,
    out: &mut HashSet<u64>,
) {
    let j = chosen.len();
    if j == candidates.len() {
        let m = Mat2 {
            cols: chosen
                .iter()
                .map(|&k| {
                    elems[k]
                        .iter()
                        .enumerate()
                        .fold(0u32, |acc, (b, &c)| acc | (((c & 1) as u32) << b))
                })
                .collect(),
        };
        out.insert(m.pack());
        return;
    }
    for &k in &candidates[j] {
        let y = &elems[k];
        if (0..j).all(|i| ev(&elems[chosen[i]], y) == bh[i][j]) {
            chosen.push(k);
            aut_rec(candidates, elems, bh, ev, chosen, out);
            chosen.pop();
        }
    }
}

/// Standard `J = [[0, I], [-I, 0]]` of size `2r`.
pub fn standard_j(n: usize) -> Vec<Vec<i64>> {
    let r = n / 2;
    let mut j = vec![vec![0i64; n]; n];
    for i in 0..r {
        j[i][r + i] = 1;
        j[r + i][i] = -1;
    }
    j
}

pub fn int_mat_mul(a: &[Vec<i64>], b: &[Vec<i64>], modulus: i64) -> Vec<Vec<i64>> {
    let n = b[0].len();
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(0i64, |acc, (x, br)| (acc + x * br[j]).rem_euclid(modulus))
                })
                .collect()
        })
        .collect()
}

pub fn int_transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    (0..a[0].len())
        .map(|j| a.iter().map(|row| row[j]).collect())
        .collect()
}

/// Lift a symplectic matrix over GF(2) (with respect to `J mod 2`) to
/// `A` over `Z/2^m` with `A^T J A = J`, `A = abar mod 2`.
pub fn lift_symplectic(abar: &Mat2, m: u32) -> Result<Vec<Vec<i64>>> {
    let n = abar.dim();
    if !n.is_multiple_of(2) || m == 0 || m > 30 {
        return invalid("need even dimension and 1 <= m <= 30");
    }
    let alt = Alt2 {
        dim: n,
        gram: Mat2 {
            cols: (0..n).map(|i| 1u32 << ((i + n / 2) % n)).collect(),
        },
    };
    if !alt.preserved_by(abar) {
        return invalid("matrix is not symplectic mod 2");
    }
    let modulus = 1i64 << m;
    let j = standard_j(n);
    let jinv: Vec<Vec<i64>> = j.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
    let mut a: Vec<Vec<i64>> = (0..n)
        .map(|r| (0..n).map(|c| i64::from(abar.cols[c] >> r & 1)).collect())
        .collect();
    let mut prec = 1u32;
    while prec < m {
        let s = {
            let ata = int_mat_mul(&int_mat_mul(&int_transpose(&a), &j, modulus), &a, modulus);
            let mut s = ata;
            for r in 0..n {
                for c in 0..n {
                    s[r][c] = (s[r][c] - j[r][c]).rem_euclid(modulus);
                }
            }
            s
        };
        let w: Vec<Vec<i64>> = (0..n)
            .map(|r| (0..n).map(|c| if r > c { s[r][c] } else { 0 }).collect())
            .collect();
        let x = int_mat_mul(&jinv, &w, modulus);
        let u: Vec<Vec<i64>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| (i64::from(r == c) - x[r][c]).rem_euclid(modulus))
                    .collect()
            })
            .collect();
        a = int_mat_mul(&a, &u, modulus);
        prec *= 2;
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arf_of_standard_forms() {
        for m in 0..4 {
            assert_eq!(QuadSpace2::standard(m, 0).arf(), 0);
            if m > 0 {
                assert_eq!(QuadSpace2::standard(m, 1).arf(), 1);
            }
        }
        assert!(QuadSpace2::standard(2, 1).polarize().is_nondegenerate());
    }

    #[test]
    fn rejects_non_quadratic_table() {
        assert!(QuadSpace2::from_values(2, vec![0, 1, 1, 0]).is_ok());
        assert!(QuadSpace2::from_values(1, vec![1, 0]).is_err());
    }

    #[test]
    fn multiset_orbits_under_o_minus_2() {
        let qs = QuadSpace2::standard(1, 1);
        let mut canon = OrbitCanon::new(isometry_group(&qs));
        // O-(2,2) is S_3 on the three nonzero vectors
        assert_eq!(canon.orbit_reps(&qs.level_set(1), 3).len(), 3);
        assert_eq!(canon.orbit_reps(&[0, 1, 2, 3], 1).len(), 2);
    }
}
