//! Graded-division algebras with degree-preserving involution, realized as
//! twisted group algebras `D = span{X_t : t in T}` with
//! `X_s X_t = zeta^{sigma(s,t)} X_{s+t}` and `phi_0(X_t) = zeta^{eta(t)} X_t`.
//!
//! The structure constants are read off explicit monomial matrix models.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::abelian::{Bichar, Elem, FinAbGroup};
use crate::cyclo::Cyclo;
use crate::error::{invalid, Error, Result};
use crate::gf2::{general_linear, Mat2};
use crate::gf2forms::{GroupAction, QuadSpace2};

/// Family label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GdaLabel {
    /// `D(2m; +1)` (`sign = 1`, `M_{2^m}(R)`) or `D(2m; -1)` (`sign = -1`, `M_{2^{m-1}}(H)`).
    Central { m: u32, sign: i8 },
    /// `D(2m+1; R)`: `M_{2^m}(C)` with conjugate transpose.
    ComplexConj { m: u32 },
    /// `D(2m+1; +1)` / `D(2m+1; -1)`: two copies with the exchange involution.
    Exchange { m: u32, sign: i8 },
    /// `D(l_1, ..., l_r; C)`: complex Pauli gradings with conjugate-linear involution.
    Pauli { ls: Vec<u64> },
}

impl fmt::Display for GdaLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sgn = |s: i8| if s > 0 { "+1" } else { "-1" };
        match self {
            GdaLabel::Central { m, sign } => write!(f, "D({};{})", 2 * m, sgn(*sign)),
            GdaLabel::ComplexConj { m } => write!(f, "D({};R)", 2 * m + 1),
            GdaLabel::Exchange { m, sign } => write!(f, "D({};{})", 2 * m + 1, sgn(*sign)),
            GdaLabel::Pauli { ls } => {
                let s: Vec<String> = ls.iter().map(u64::to_string).collect();
                write!(f, "D({};C)", s.join(","))
            }
        }
    }
}

impl FromStr for GdaLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad graded-division algebra label '{s}'"));
        let inner = s
            .trim()
            .strip_prefix("D(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (nums, kind) = inner.split_once(';').ok_or_else(bad)?;
        let kind = kind.trim();
        let nums: Vec<u64> = nums
            .split(',')
            .map(|x| x.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        let label = match kind {
            "C" => GdaLabel::Pauli { ls: nums },
            "R" if nums.len() == 1 && nums[0] % 2 == 1 => GdaLabel::ComplexConj {
                m: (nums[0] / 2) as u32,
            },
            "+1" | "-1" | "1" if nums.len() == 1 => {
                let sign = if kind == "-1" { -1 } else { 1 };
                let n = nums[0];
                if n.is_multiple_of(2) {
                    GdaLabel::Central {
                        m: (n / 2) as u32,
                        sign,
                    }
                } else {
                    GdaLabel::Exchange {
                        m: (n / 2) as u32,
                        sign,
                    }
                }
            }
            _ => return Err(bad()),
        };
        label.validate()?;
        Ok(label)
    }
}

impl GdaLabel {
    pub fn validate(&self) -> Result<()> {
        match self {
            GdaLabel::Central { m, sign } | GdaLabel::Exchange { m, sign }
                if *sign < 0 && *m == 0 =>
            {
                invalid("the quaternion families need m >= 1")
            }
            GdaLabel::Pauli { ls } => {
                if ls.is_empty() {
                    return invalid("empty list of l_j");
                }
                for &l in ls {
                    if l < 2 || !is_prime_power(l) {
                        return invalid(format!("l = {l} is not a prime power >= 2"));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Which of the four classification cases the family belongs to.
    pub fn case(&self) -> Case {
        match self {
            GdaLabel::Central { .. } => Case::One,
            GdaLabel::ComplexConj { .. } => Case::TwoA,
            GdaLabel::Pauli { .. } => Case::TwoB,
            GdaLabel::Exchange { .. } => Case::Three,
        }
    }

    pub fn m(&self) -> u32 {
        match self {
            GdaLabel::Central { m, .. }
            | GdaLabel::ComplexConj { m }
            | GdaLabel::Exchange { m, .. } => *m,
            GdaLabel::Pauli { ls } => ls.iter().filter(|&&l| l % 2 == 0).count() as u32,
        }
    }

    /// Size of `D` as a matrix algebra over its division algebra `Delta`
    /// (entering the signature formula).
    pub fn delta_size(&self) -> u64 {
        match self {
            GdaLabel::Central { m, sign } => {
                if *sign > 0 {
                    1 << m
                } else {
                    1 << (m - 1)
                }
            }
            GdaLabel::ComplexConj { m } => 1 << m,
            GdaLabel::Exchange { m, sign } => {
                if *sign > 0 {
                    1 << m
                } else {
                    1 << (m - 1)
                }
            }
            GdaLabel::Pauli { ls } => ls.iter().product(),
        }
    }

    /// Size of the complexification of one simple factor of `D`.
    pub fn complex_size(&self) -> u64 {
        match self {
            GdaLabel::Central { m, .. }
            | GdaLabel::ComplexConj { m }
            | GdaLabel::Exchange { m, .. } => 1 << m,
            GdaLabel::Pauli { ls } => ls.iter().product(),
        }
    }
}

fn is_prime_power(n: u64) -> bool {
    let p = (2..=n).find(|p| n.is_multiple_of(*p)).unwrap_or(n);
    let mut x = n;
    while x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Case {
    /// Central simple, first kind.
    One,
    /// Central simple over `C`, second kind, `D_e = R`.
    TwoA,
    /// Central simple over `C`, second kind, `D_e = C`.
    TwoB,
    /// Not simple: exchange involution.
    Three,
}

/// Monomial matrix: column `j` has its only nonzero entry `zeta_M^{ph[j]}` in row `perm[j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mono {
    pub perm: Vec<usize>,
    pub ph: Vec<u32>,
}

impl Mono {
    pub fn identity(n: usize) -> Self {
        Mono {
            perm: (0..n).collect(),
            ph: vec![0; n],
        }
    }

    fn diag(ph: Vec<u32>) -> Self {
        Mono {
            perm: (0..ph.len()).collect(),
            ph,
        }
    }

    fn perm_with(perm: Vec<usize>, ph: Vec<u32>) -> Self {
        Mono { perm, ph }
    }

    pub fn mul(&self, o: &Mono, m: u32) -> Mono {
        let perm = o.perm.iter().map(|&p| self.perm[p]).collect();
        let ph = o
            .perm
            .iter()
            .zip(&o.ph)
            .map(|(&p, &f)| (self.ph[p] + f) % m)
            .collect();
        Mono { perm, ph }
    }

    pub fn kron(&self, o: &Mono, m: u32) -> Mono {
        let n2 = o.perm.len();
        let mut perm = Vec::new();
        let mut ph = Vec::new();
        for (i, &pi) in self.perm.iter().enumerate() {
            for (j, &pj) in o.perm.iter().enumerate() {
                perm.push(pi * n2 + pj);
                ph.push((self.ph[i] + o.ph[j]) % m);
            }
        }
        Mono { perm, ph }
    }

    pub fn transpose(&self) -> Mono {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        let mut ph = vec![0; n];
        for j in 0..n {
            perm[self.perm[j]] = j;
            ph[self.perm[j]] = self.ph[j];
        }
        Mono { perm, ph }
    }

    pub fn conj(&self, m: u32) -> Mono {
        Mono {
            perm: self.perm.clone(),
            ph: self.ph.iter().map(|&f| (m - f) % m).collect(),
        }
    }

    pub fn inverse(&self, m: u32) -> Mono {
        self.conj(m).transpose()
    }

    pub fn scale(&self, k: u32, m: u32) -> Mono {
        Mono {
            perm: self.perm.clone(),
            ph: self.ph.iter().map(|&f| (f + k) % m).collect(),
        }
    }

    /// `Some(k)` with `self = zeta^k other`.
    pub fn ratio(&self, o: &Mono, m: u32) -> Option<u32> {
        if self.perm != o.perm {
            return None;
        }
        let k = (self.ph[0] + m - o.ph[0]) % m;
        self.ph
            .iter()
            .zip(&o.ph)
            .all(|(&a, &b)| (a + m - b) % m == k)
            .then_some(k)
    }
}

/// A twisted group algebra with involution.
#[derive(Clone, Debug)]
pub struct GDAlgebra {
    pub label: GdaLabel,
    pub t: FinAbGroup,
    /// Order of the root of unity in which the structure constants live.
    pub m: u32,
    /// Whether `phi_0` is conjugate-linear on scalars.
    pub conjugating: bool,
    n: usize,
    sigma: Vec<u32>,
    eta: Vec<u32>,
    add: Vec<usize>,
    neg: Vec<usize>,
    model: Vec<Mono>,
    model_m: u32,
}

const MAX_T: usize = 256;

impl GDAlgebra {
    pub fn build(label: &GdaLabel) -> Result<Self> {
        label.validate()?;
        let (torsion, gens, model_m, p, conj_t, extra_phase): (
            Vec<u64>,
            Vec<Mono>,
            u32,
            Mono,
            bool,
            Option<Vec<u64>>,
        ) = match label {
            GdaLabel::Central { m, sign } => {
                let (gens, mm) = central_gens(*m, *sign);
                let n = 1usize << m;
                (
                    vec![2; 2 * *m as usize],
                    gens,
                    mm,
                    Mono::identity(n),
                    *sign < 0,
                    None,
                )
            }
            GdaLabel::ComplexConj { m } => {
                let (mut gens, mm) = central_gens(*m, 1);
                let n = 1usize << m;
                gens.push(Mono::diag(vec![1; n]));
                (
                    vec![2; 2 * *m as usize + 1],
                    gens,
                    mm,
                    Mono::identity(n),
                    true,
                    None,
                )
            }
            GdaLabel::Exchange { m, sign } => {
                let (gens, mm) = central_gens(*m, *sign);
                let swap = Mono::perm_with(vec![1, 0], vec![0, 0]);
                let mut out: Vec<Mono> = gens
                    .iter()
                    .map(|g| g.kron(&Mono::identity(2), mm))
                    .collect();
                let n = 1usize << m;
                out.push(Mono::identity(n).kron(&Mono::diag(vec![0, 2]), mm));
                (
                    vec![2; 2 * *m as usize + 1],
                    out,
                    mm,
                    Mono::identity(n).kron(&swap, mm),
                    *sign < 0,
                    None,
                )
            }
            GdaLabel::Pauli { ls } => {
                let mm = 2 * ls.iter().fold(1u64, |a, b| a.lcm(b)) as u32;
                let sizes: Vec<usize> = ls.iter().map(|&l| l as usize).collect();
                let mut gens = Vec::new();
                let mut torsion = Vec::new();
                for (r, &l) in ls.iter().enumerate() {
                    let step = mm / l as u32;
                    let l = l as usize;
                    let x =
                        Mono::diag((0..l).map(|i| ((i as u32 + 1) % l as u32) * step).collect());
                    let y = Mono::perm_with((0..l).map(|i| (i + 1) % l).collect(), vec![0; l]);
                    gens.push(embed_factor(&sizes, r, &x, mm));
                    gens.push(embed_factor(&sizes, r, &y, mm));
                    torsion.push(l as u64);
                    torsion.push(l as u64);
                }
                let mut p = Mono::identity(1);
                for &l in &sizes {
                    let perm = (0..l)
                        .map(|i| if i + 1 == l { i } else { l - 2 - i })
                        .collect();
                    p = p.kron(&Mono::perm_with(perm, vec![0; l]), mm);
                }
                (torsion, gens, mm, p, true, Some(ls.clone()))
            }
        };
        let t = FinAbGroup::finite(torsion);
        let n = t.order() as usize;
        if n > MAX_T {
            return Err(Error::Capacity(format!("|T| = {n} exceeds {MAX_T}")));
        }
        let size = p.perm.len();
        let mm = model_m;
        let mut model = Vec::with_capacity(n);
        for idx in 0..n {
            let x = t.element(idx);
            let mut acc = Mono::identity(size);
            for (j, &c) in x.iter().enumerate() {
                for _ in 0..c {
                    acc = acc.mul(&gens[j], mm);
                }
            }
            if let Some(ls) = &extra_phase {
                let mut k: i64 = 0;
                for (r, &l) in ls.iter().enumerate() {
                    let step = (mm as u64 / (2 * l)) as i64;
                    k -= x[2 * r] * x[2 * r + 1] * step;
                }
                acc = acc.scale(k.rem_euclid(mm as i64) as u32, mm);
            }
            model.push(acc);
        }
        let mut add = vec![0usize; n * n];
        let mut neg = vec![0usize; n];
        for s in 0..n {
            let xs = t.element(s);
            neg[s] = t.index(&t.neg(&xs));
            for u in 0..n {
                add[s * n + u] = t.index(&t.add(&xs, &t.element(u)));
            }
        }
        let mut sigma = vec![0u32; n * n];
        for s in 0..n {
            for u in 0..n {
                let prod = model[s].mul(&model[u], mm);
                sigma[s * n + u] = prod.ratio(&model[add[s * n + u]], mm).ok_or_else(|| {
                    Error::Invalid("model matrices are not a twisted group algebra".into())
                })?;
            }
        }
        let pinv = p.inverse(mm);
        let mut eta = vec![0u32; n];
        for s in 0..n {
            let star = if conj_t {
                model[s].conj(mm).transpose()
            } else {
                model[s].transpose()
            };
            let img = pinv.mul(&star, mm).mul(&p, mm);
            eta[s] = img
                .ratio(&model[s], mm)
                .ok_or_else(|| Error::Invalid("involution is not degree-preserving".into()))?;
        }
        let conjugating = matches!(label, GdaLabel::Pauli { .. });
        let mut alg = GDAlgebra {
            label: label.clone(),
            t,
            m: mm,
            conjugating,
            n,
            sigma,
            eta,
            add,
            neg,
            model,
            model_m: mm,
        };
        if !conjugating {
            // real structure constants: pass to M = 2
            let half = mm / 2;
            if alg.sigma.iter().chain(&alg.eta).any(|&x| x % half != 0) {
                return invalid("real family produced non-real structure constants");
            }
            alg.sigma.iter_mut().for_each(|x| *x /= half);
            alg.eta.iter_mut().for_each(|x| *x /= half);
            alg.m = 2;
        } else if alg.eta.iter().any(|&x| x != 0) {
            return invalid("Pauli model is not symmetric");
        }
        Ok(alg)
    }

    pub fn from_label(s: &str) -> Result<Self> {
        Self::build(&s.parse()?)
    }

    /// Same algebra with structure constants in `Z[zeta_{m2}]`.
    pub fn with_scalar_order(&self, m2: u32) -> Result<Self> {
        if !m2.is_multiple_of(self.m) {
            return invalid("new scalar order must be a multiple");
        }
        let f = m2 / self.m;
        let mut a = self.clone();
        a.m = m2;
        a.sigma.iter_mut().for_each(|x| *x *= f);
        a.eta.iter_mut().for_each(|x| *x *= f);
        Ok(a)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn case(&self) -> Case {
        self.label.case()
    }

    pub fn sigma(&self, s: usize, t: usize) -> u32 {
        self.sigma[s * self.n + t]
    }

    pub fn eta(&self, t: usize) -> u32 {
        self.eta[t]
    }

    pub fn add(&self, s: usize, t: usize) -> usize {
        self.add[s * self.n + t]
    }

    pub fn sub(&self, s: usize, t: usize) -> usize {
        self.add(s, self.neg[t])
    }

    pub fn neg(&self, t: usize) -> usize {
        self.neg[t]
    }

    /// `beta(s, t)` as an exponent of `zeta_M`.
    pub fn beta(&self, s: usize, t: usize) -> u32 {
        (self.sigma(s, t) + self.m - self.sigma(t, s)) % self.m
    }

    /// `X_t^{-1} = zeta^k X_{-t}`; returns `k`.
    pub fn inverse_phase(&self, t: usize) -> u32 {
        (self.m - self.sigma(t, self.neg[t])) % self.m
    }

    /// `X_t^2 = mu(t) 1` for real `D_e` and `2t = 0`.
    pub fn mu(&self, t: usize) -> Option<i8> {
        if self.case() == Case::TwoB || self.add(t, t) != 0 {
            return None;
        }
        match self.sigma(t, t) {
            0 => Some(1),
            x if 2 * x == self.m => Some(-1),
            _ => None,
        }
    }

    /// Real dimension of each homogeneous component.
    pub fn de_dim(&self) -> usize {
        if self.case() == Case::TwoB {
            2
        } else {
            1
        }
    }

    /// Real dimension of `D`.
    pub fn real_dim(&self) -> usize {
        self.n * self.de_dim()
    }

    /// `(t, zeta^k) * (u, zeta^l)` for monomials.
    pub fn mul_mono(&self, a: (usize, u32), b: (usize, u32)) -> (usize, u32) {
        (
            self.add(a.0, b.0),
            (a.1 + b.1 + self.sigma(a.0, b.0)) % self.m,
        )
    }

    /// `phi_0(zeta^k X_t)`.
    pub fn phi0_mono(&self, a: (usize, u32)) -> (usize, u32) {
        let k = if self.conjugating {
            (self.m - a.1) % self.m
        } else {
            a.1
        };
        (a.0, (k + self.eta(a.0)) % self.m)
    }

    pub fn inv_mono(&self, a: (usize, u32)) -> (usize, u32) {
        (
            self.neg[a.0],
            (self.inverse_phase(a.0) + self.m - a.1) % self.m,
        )
    }

    /// Homogeneous elements `c X_t` with cyclotomic coefficient.
    pub fn mul_hom(&self, a: &HomElem, b: &HomElem) -> HomElem {
        let c = a.coeff.mul(&b.coeff).mul_zeta(self.sigma(a.t, b.t) as i64);
        HomElem {
            t: self.add(a.t, b.t),
            coeff: c,
        }
    }

    pub fn phi0_hom(&self, a: &HomElem) -> HomElem {
        let c = if self.conjugating {
            a.coeff.conj()
        } else {
            a.coeff.clone()
        };
        HomElem {
            t: a.t,
            coeff: c.mul_zeta(self.eta(a.t) as i64),
        }
    }

    pub fn bichar(&self) -> Bichar {
        let r = self.t.torsion.len();
        let gens: Vec<usize> = (0..r).map(|j| self.t.index(&self.t.gen(j))).collect();
        let gram = gens
            .iter()
            .map(|&a| gens.iter().map(|&b| self.beta(a, b) as i64).collect())
            .collect();
        Bichar {
            group: self.t.clone(),
            modulus: self.m as u64,
            gram,
        }
    }

    /// Radical of `beta`.
    pub fn center(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&s| (0..self.n).all(|t| self.beta(s, t) == 0))
            .collect()
    }

    /// `mu` as a quadratic form on `T = Z_2^dim`, `Q(t) = 1` iff `mu(t) = -1`.
    pub fn quadratic_form(&self) -> Option<QuadSpace2> {
        if self.t.torsion.iter().any(|&o| o != 2) {
            return None;
        }
        let vals: Option<Vec<u8>> = (0..self.n)
            .map(|t| self.mu(t).map(|s| u8::from(s < 0)))
            .collect();
        QuadSpace2::from_values(self.t.torsion.len(), vals?).ok()
    }

    pub fn parse_elem(&self, word: &str) -> Result<usize> {
        Ok(self.t.index(&self.t.parse_elem(word)?))
    }

    pub fn format_elem(&self, t: usize) -> String {
        self.t.format_elem(&self.t.element(t))
    }

    /// Index of the central generator `f` of the odd families.
    pub fn f_index(&self) -> Option<usize> {
        match self.label {
            GdaLabel::ComplexConj { m } | GdaLabel::Exchange { m, .. } => Some(1 << (2 * m)),
            _ => None,
        }
    }

    /// The lift of `v in T/<f>` with `phi_0(X_t) = X_t` (odd families).
    pub fn symmetric_lift(&self, v: usize) -> Option<usize> {
        let f = self.f_index()?;
        let cands = [v, v | f];
        let sym: Vec<usize> = cands.into_iter().filter(|&t| self.eta(t) == 0).collect();
        (sym.len() == 1).then(|| sym[0])
    }

    /// Model matrix of `X_t` (for tests and debugging).
    pub fn model(&self, t: usize) -> (&Mono, u32) {
        (&self.model[t], self.model_m)
    }

    /// Weyl group of the grading on `D`, acting on `T` by permutations.
    pub fn weyl_group(&self) -> Result<GroupAction> {
        let els = self.weyl_elements()?;
        Ok(GroupAction {
            n: self.n,
            gens: els.into_iter().map(|(p, _)| p).collect(),
        })
    }

    /// Elements of the Weyl group as permutations of `T`, with a flag for
    /// the conjugate-linear ones.
    pub fn weyl_elements(&self) -> Result<Vec<(Vec<u32>, bool)>> {
        if self.n > 64 {
            return Err(Error::Capacity(
                "Weyl group enumeration needs |T| <= 64".into(),
            ));
        }
        match self.case() {
            Case::TwoB => {
                let mut out = Vec::new();
                for img in automorphisms(&self.t) {
                    let perm = self.perm_of(&img);
                    let gens: Vec<usize> = (0..self.t.torsion.len())
                        .map(|j| self.t.index(&self.t.gen(j)))
                        .collect();
                    let fwd = gens.iter().all(|&a| {
                        gens.iter().all(|&b| {
                            self.beta(perm[a] as usize, perm[b] as usize) == self.beta(a, b)
                        })
                    });
                    let back = gens.iter().all(|&a| {
                        gens.iter().all(|&b| {
                            self.beta(perm[a] as usize, perm[b] as usize)
                                == (self.m - self.beta(a, b)) % self.m
                        })
                    });
                    if fwd {
                        out.push((perm, false));
                    } else if back {
                        out.push((perm, true));
                    }
                }
                Ok(out)
            }
            _ => {
                let dim = self.t.torsion.len();
                if dim > 4 {
                    return Err(Error::Unsupported(
                        "Aut(T, mu) enumeration needs rank(T) <= 4".into(),
                    ));
                }
                let mut out = Vec::new();
                for a in general_linear(dim) {
                    let perm: Vec<u32> = (0..self.n as u32).map(|x| a.apply(x)).collect();
                    if (0..self.n).all(|t| self.mu(t) == self.mu(perm[t] as usize)) {
                        out.push((perm, false));
                    }
                }
                Ok(out)
            }
        }
    }

    fn perm_of(&self, images: &[Elem]) -> Vec<u32> {
        (0..self.n)
            .map(|idx| {
                let x = self.t.element(idx);
                let mut acc = self.t.zero();
                for (j, &c) in x.iter().enumerate() {
                    acc = self.t.add(&acc, &self.t.scale(c, &images[j]));
                }
                self.t.index(&acc) as u32
            })
            .collect()
    }

    /// Check that the permutation `alpha` of `T` is induced by an
    /// automorphism (or, with `anti`, a conjugate-linear automorphism) of `D`
    /// of the form `X_t -> c(t) X_{alpha(t)}`.
    ///
    /// Generators go to `X_{g_j} -> zeta^{c_j} X_{alpha(g_j)}` with `c_j`
    /// fixed by the power relation; the map is extended through ordered
    /// products and then checked on all pairs. Returns the exponents `c(t)`.
    pub fn realize_weyl(&self, alpha: &[u32], anti: bool) -> Result<Vec<u32>> {
        let r = self.t.torsion.len();
        let m = self.m;
        let gens: Vec<usize> = (0..r).map(|j| self.t.index(&self.t.gen(j))).collect();
        let flip = |k: u32| if anti { (m - k) % m } else { k };
        let mut cg = vec![0u32; r];
        for (j, &g) in gens.iter().enumerate() {
            let o = self.t.torsion[j] as u32;
            let pw = |base: (usize, u32)| -> (usize, u32) {
                let mut acc = (0usize, 0u32);
                for _ in 0..o {
                    acc = self.mul_mono(acc, base);
                }
                acc
            };
            let (t0, k0) = pw((g, 0));
            cg[j] = (0..m)
                .find(|&c| pw((alpha[g] as usize, c)) == (0, flip(k0)))
                .ok_or_else(|| Error::Invalid(format!("power relation fails for generator {j}")))?;
            debug_assert_eq!(t0, 0);
            for &h in &gens {
                if self.beta(alpha[g] as usize, alpha[h] as usize) != flip(self.beta(g, h)) {
                    return Err(Error::Invalid("commutation relation fails".into()));
                }
            }
        }
        let ordered = |image: &dyn Fn(usize) -> (usize, u32), x: &Elem| -> (usize, u32) {
            let mut acc = (0usize, 0u32);
            for (j, &c) in x.iter().enumerate() {
                for _ in 0..c {
                    acc = self.mul_mono(acc, image(j));
                }
            }
            acc
        };
        let mut c = vec![0u32; self.n];
        for idx in 0..self.n {
            let x = self.t.element(idx);
            let (_, pi) = ordered(&|j| (gens[j], 0), &x);
            let (img_t, kappa) = ordered(&|j| (alpha[gens[j]] as usize, cg[j]), &x);
            if img_t != alpha[idx] as usize {
                return Err(Error::Invalid("alpha is not a homomorphism".into()));
            }
            // X_t = zeta^{-pi} (ordered product), so psi(X_t) = zeta^{kappa - flip(pi)} X_{alpha t}
            c[idx] = (kappa + m - flip(pi)) % m;
        }
        for s in 0..self.n {
            for u in 0..self.n {
                let lhs = (c[s] + c[u] + self.sigma(alpha[s] as usize, alpha[u] as usize)) % m;
                let rhs = (flip(self.sigma(s, u)) + c[self.add(s, u)]) % m;
                if lhs != rhs {
                    return Err(Error::Invalid(format!(
                        "multiplicativity fails at ({s}, {u})"
                    )));
                }
            }
        }
        Ok(c)
    }
}

fn central_gens(m: u32, sign: i8) -> (Vec<Mono>, u32) {
    let mm = 4u32;
    let sizes = vec![2usize; m as usize];
    let x = Mono::diag(vec![2, 0]);
    let y = Mono::perm_with(vec![1, 0], vec![0, 0]);
    let qi = Mono::diag(vec![1, 3]);
    let qj = Mono::perm_with(vec![1, 0], vec![2, 0]);
    let mut gens = Vec::new();
    for r in 0..m as usize {
        let (a, b) = if sign < 0 && r + 1 == m as usize {
            (&qi, &qj)
        } else {
            (&x, &y)
        };
        gens.push(embed_factor(&sizes, r, a, mm));
        gens.push(embed_factor(&sizes, r, b, mm));
    }
    (gens, mm)
}

fn embed_factor(sizes: &[usize], r: usize, x: &Mono, m: u32) -> Mono {
    let mut acc = Mono::identity(1);
    for (i, &s) in sizes.iter().enumerate() {
        let id = Mono::identity(s);
        acc = acc.kron(if i == r { x } else { &id }, m);
    }
    acc
}

/// All automorphisms of a finite abelian group, as images of the generators.
pub fn automorphisms(t: &FinAbGroup) -> Vec<Vec<Elem>> {
    let els: Vec<Elem> = t.elements().collect();
    let r = t.torsion.len();
    let cands: Vec<Vec<usize>> = (0..r)
        .map(|j| {
            (0..els.len())
                .filter(|&k| t.is_zero(&t.scale(t.torsion[j] as i64, &els[k])))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    auto_rec(t, &els, &cands, &mut chosen, &mut out);
    out
}

fn auto_rec(
    t: &FinAbGroup,
    els: &[Elem],
    cands: &[Vec<usize>],
    chosen: &mut Vec<usize>,
    out: &mut Vec<Vec<Elem>>,
) {
    if chosen.len() == cands.len() {
        let images: Vec<Elem> = chosen.iter().map(|&k| els[k].clone()).collect();
        let mut seen = HashSet::new();
        for x in els {
            let mut acc = t.zero();
            for (j, &c) in x.iter().enumerate() {
                acc = t.add(&acc, &t.scale(c, &images[j]));
            }
            seen.insert(acc);
        }
        if seen.len() == els.len() {
            out.push(images);
        }
        return;
    }
    for &k in &cands[chosen.len()] {
        chosen.push(k);
        auto_rec(t, els, cands, chosen, out);
        chosen.pop();
    }
}

/// Homogeneous element `coeff * X_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomElem {
    pub t: usize,
    pub coeff: Cyclo,
}

impl HomElem {
    pub fn basis(alg: &GDAlgebra, t: usize) -> Self {
        HomElem {
            t,
            coeff: Cyclo::one(alg.m),
        }
    }
}

/// Matrix of an element of `GL(T/2T)` restricted to the elementary case, for tests.
pub fn perm_to_mat2(perm: &[u32], dim: usize) -> Mat2 {
    Mat2 {
        cols: (0..dim).map(|i| perm[1 << i]).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(s: &str) -> GDAlgebra {
        GDAlgebra::from_label(s).unwrap()
    }

    #[test]
    fn labels_round_trip() {
        for s in [
            "D(0;+1)", "D(2;+1)", "D(2;-1)", "D(4;+1)", "D(3;R)", "D(1;+1)", "D(3;-1)", "D(3,4;C)",
        ] {
            assert_eq!(s.parse::<GdaLabel>().unwrap().to_string(), s);
        }
        assert!("D(0;-1)".parse::<GdaLabel>().is_err());
        assert!("D(6;C)".parse::<GdaLabel>().is_err());
        assert!("E(2;+1)".parse::<GdaLabel>().is_err());
    }

    #[test]
    fn mu_tables() {
        let d = alg("D(2;+1)");
        let mu: Vec<i8> = (0..4).map(|t| d.mu(t).unwrap()).collect();
        assert_eq!(mu, vec![1, 1, 1, -1]);
        let h = alg("D(2;-1)");
        let mu: Vec<i8> = (0..4).map(|t| h.mu(t).unwrap()).collect();
        assert_eq!(mu, vec![1, -1, -1, -1]);
        let c = alg("D(1;R)");
        assert_eq!(c.mu(1), Some(-1));
        let ct = alg("D(1;+1)");
        assert_eq!(ct.mu(1), Some(1));
        assert_eq!(ct.eta(1), 1);
    }

    #[test]
    fn eta_equals_mu_in_distinguished_cases() {
        for s in [
            "D(2;+1)", "D(2;-1)", "D(4;+1)", "D(4;-1)", "D(3;R)", "D(5;R)",
        ] {
            let d = alg(s);
            for t in 0..d.order() {
                let eta = if d.eta(t) == 0 { 1 } else { -1 };
                assert_eq!(Some(eta), d.mu(t), "{s} at {t}");
            }
        }
    }

    #[test]
    fn exchange_eta_is_chi0_mu() {
        for s in ["D(1;+1)", "D(3;+1)", "D(3;-1)", "D(5;+1)"] {
            let d = alg(s);
            let f = d.f_index().unwrap();
            for t in 0..d.order() {
                let chi0 = if t & f != 0 { -1 } else { 1 };
                let eta = if d.eta(t) == 0 { 1 } else { -1 };
                assert_eq!(eta, chi0 * d.mu(t).unwrap(), "{s} at {t}");
            }
        }
    }

    #[test]
    fn arf_invariants() {
        assert_eq!(alg("D(2;+1)").quadratic_form().unwrap().arf(), 0);
        assert_eq!(alg("D(2;-1)").quadratic_form().unwrap().arf(), 1);
        assert_eq!(alg("D(6;+1)").quadratic_form().unwrap().arf(), 0);
        assert_eq!(alg("D(6;-1)").quadratic_form().unwrap().arf(), 1);
    }

    #[test]
    fn pauli_beta_is_standard() {
        let d = alg("D(3,4;C)");
        assert_eq!(d.order(), 144);
        let b = d.bichar();
        let std = Bichar::standard(&[3, 4]);
        let scale = b.modulus / std.modulus;
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(
                    b.gram[i][j].rem_euclid(b.modulus as i64),
                    (std.gram[i][j] * scale as i64).rem_euclid(b.modulus as i64)
                );
            }
        }
        assert!(d.center() == vec![0]);
    }

    #[test]
    fn weyl_group_of_d3c() {
        let d = alg("D(3;C)");
        assert_eq!(d.weyl_group().unwrap().order(), 48);
        for (p, anti) in d.weyl_elements().unwrap() {
            d.realize_weyl(&p, anti).unwrap();
        }
    }
}
