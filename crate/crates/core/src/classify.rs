//! Equivalence invariants of the fine gradings, enumeration of the classes
//! for a given algebra with involution, and the inner/outer rule for
//! orthogonal involutions in even degree.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::abelian::{universal_group_m, universal_group_mex, Elem};
use crate::error::{invalid, Error, Result};
use crate::gdivalg::{Case, GDAlgebra, GdaLabel};
use crate::gf2::Mat2;
use crate::gf2forms::{
    affine_isometry_group, build_flag, flag_stabilizer, isometry_group, symplectic_generators,
    symplectic_group, Alt2, GroupAction, OrbitCanon, QuadSpace2,
};
use crate::gradedmat::{resolve_diag, AlgParams, DiagEntry, GradingParams, MexParams};

/// The eight families of fine gradings with involution over the reals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// `M(2m; R; q, s, d, delta)`
    RealMatrix,
    /// `M(2m; H; q, s, d, delta)`
    QuaternionMatrix,
    /// `M^(I)(l_1, ..., l_r; C; q, s, d)`
    ComplexPauli,
    /// `M^(II)(2m+1; C; q, s, d)`
    ComplexConj,
    /// `M^(I)(2m; R; k)`
    ExchangeReal,
    /// `M^(I)(2m; H; k)`
    ExchangeQuaternion,
    /// `M^(II)(2m+1; R; q, s, d)`
    ExchangeOddReal,
    /// `M^(II)(2m+1; H; q, s, d)`
    ExchangeOddQuaternion,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::RealMatrix,
        Family::QuaternionMatrix,
        Family::ComplexPauli,
        Family::ComplexConj,
        Family::ExchangeReal,
        Family::ExchangeQuaternion,
        Family::ExchangeOddReal,
        Family::ExchangeOddQuaternion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::RealMatrix => "real",
            Family::QuaternionMatrix => "quaternion",
            Family::ComplexPauli => "complex-pauli",
            Family::ComplexConj => "complex-conj",
            Family::ExchangeReal => "exchange-real",
            Family::ExchangeQuaternion => "exchange-quaternion",
            Family::ExchangeOddReal => "exchange-odd-real",
            Family::ExchangeOddQuaternion => "exchange-odd-quaternion",
        }
    }

    pub fn parse(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family '{s}'")))
    }

    pub fn kind(self) -> InvolutionKindClass {
        match self {
            Family::RealMatrix | Family::QuaternionMatrix => InvolutionKindClass::FirstKind,
            Family::ComplexPauli | Family::ComplexConj => InvolutionKindClass::SecondKind,
            _ => InvolutionKindClass::Exchange,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvolutionKindClass {
    FirstKind,
    SecondKind,
    Exchange,
}

/// Type of the involution on the complexification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InvolutionKind {
    Orthogonal,
    Symplectic,
    SecondKind,
    Exchange,
}

impl InvolutionKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "orthogonal" => Ok(InvolutionKind::Orthogonal),
            "symplectic" => Ok(InvolutionKind::Symplectic),
            "second-kind" => Ok(InvolutionKind::SecondKind),
            "exchange" => Ok(InvolutionKind::Exchange),
            _ => Err(Error::Parse(format!("unknown involution kind '{s}'"))),
        }
    }
}

/// Complete invariant of a fine grading up to equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassInvariant {
    pub family: Family,
    pub gda: String,
    pub k: usize,
    pub q: usize,
    pub s: usize,
    /// `delta` of the family label (for the quaternion family, minus that of `D`).
    pub delta: i8,
    /// `|n0+ - n0-|` of `d`, when the family has one.
    pub signature: Option<u32>,
    /// Canonical orbit representative, as coordinate vectors of points of `T/H`.
    pub multiset: Vec<Vec<i64>>,
    pub universal: String,
}

pub fn family_of(params: &AlgParams) -> Result<Family> {
    match params {
        AlgParams::M(p) => {
            let label: GdaLabel = p.gda.parse()?;
            Ok(match label {
                GdaLabel::Central { sign, .. } if sign > 0 => Family::RealMatrix,
                GdaLabel::Central { .. } => Family::QuaternionMatrix,
                GdaLabel::Pauli { .. } => Family::ComplexPauli,
                GdaLabel::ComplexConj { .. } => Family::ComplexConj,
                GdaLabel::Exchange { sign, .. } if sign > 0 => Family::ExchangeOddReal,
                GdaLabel::Exchange { .. } => Family::ExchangeOddQuaternion,
            })
        }
        AlgParams::Mex(p) => match p.gda.parse()? {
            GdaLabel::Central { sign, .. } if sign > 0 => Ok(Family::ExchangeReal),
            GdaLabel::Central { .. } => Ok(Family::ExchangeQuaternion),
            _ => invalid("M^ex needs D(2m; +1) or D(2m; -1)"),
        },
    }
}

/// The space `V = T/H` carrying the multisets, with the group acting on it.
pub struct PointSpace {
    pub case: Case,
    pub dim: usize,
    /// Points allowed as degrees of the `d_i`.
    pub carrier: Vec<u32>,
    /// The point whose entries carry signs, when the family has a signature.
    pub trivial: Option<u32>,
    canon: OrbitCanon,
    even: Vec<usize>,
}

impl PointSpace {
    pub fn new(gda: &GDAlgebra, d_delta: i8) -> Result<Self> {
        let case = gda.case();
        let r = gda.t.torsion.len();
        let (dim, action, carrier, trivial, even) = match case {
            Case::One => {
                let qs = gda
                    .quadratic_form()
                    .ok_or_else(|| Error::Invalid("no quadratic form".into()))?;
                let want = u32::from(d_delta < 0);
                let carrier = qs.level_set(want);
                (
                    r,
                    isometry_group(&qs),
                    carrier,
                    (d_delta > 0).then_some(0),
                    vec![],
                )
            }
            Case::TwoA | Case::Three => {
                let dim = r - 1;
                let action = if case == Case::TwoA {
                    symplectic_group(&lower_beta(gda))
                } else {
                    affine_isometry_group(&lower_form(gda)?)
                };
                let carrier = (0..1u32 << dim).collect();
                (
                    dim,
                    action,
                    carrier,
                    (case == Case::TwoA).then_some(0),
                    vec![],
                )
            }
            Case::TwoB => {
                let flag = build_flag(&gda.bichar())?;
                let even: Vec<usize> = (0..r).filter(|&j| gda.t.torsion[j].is_multiple_of(2)).collect();
                let dim = even.len();
                let carrier = (0..1u32 << dim).collect();
                (dim, flag_stabilizer(&flag), carrier, Some(0), even)
            }
        };
        Ok(PointSpace {
            case,
            dim,
            carrier,
            trivial,
            canon: OrbitCanon::new(action),
            even,
        })
    }

    pub fn action(&self) -> &GroupAction {
        &self.canon.action
    }

    /// Image of `t in T` in `V`.
    pub fn point(&self, gda: &GDAlgebra, t: usize) -> u32 {
        match self.case {
            Case::One => t as u32,
            Case::TwoA | Case::Three => (t as u32) & ((1 << self.dim) - 1),
            Case::TwoB => {
                let x = gda.t.element(t);
                self.even
                    .iter()
                    .enumerate()
                    .fold(0, |acc, (b, &j)| acc | ((x[j].rem_euclid(2) as u32) << b))
            }
        }
    }

    /// A degree in `T` lying over the point `v`, admissible for `d_i`.
    pub fn representative(&self, gda: &GDAlgebra, v: u32) -> usize {
        match self.case {
            Case::One => v as usize,
            Case::TwoA | Case::Three => gda
                .symmetric_lift(v as usize)
                .expect("every coset has a symmetric lift"),
            Case::TwoB => {
                let mut x = gda.t.zero();
                for (b, &j) in self.even.iter().enumerate() {
                    x[j] = i64::from(v >> b & 1);
                }
                gda.t.index(&x)
            }
        }
    }

    pub fn coords(&self, v: u32) -> Vec<i64> {
        (0..self.dim).map(|b| i64::from(v >> b & 1)).collect()
    }

    pub fn canonical(&mut self, points: &[u32]) -> Vec<u32> {
        self.canon.canonical(points)
    }

    pub fn orbit_reps(&mut self, size: usize) -> Vec<Vec<u32>> {
        let carrier = self.carrier.clone();
        self.canon.orbit_reps(&carrier, size)
    }
}

/// `beta` on `T/<f>` (the complex family).
fn lower_beta(gda: &GDAlgebra) -> Alt2 {
    let dim = gda.t.torsion.len() - 1;
    let cols = (0..dim)
        .map(|j| {
            (0..dim).fold(0u32, |acc, i| {
                acc | (u32::from(gda.beta(1 << i, 1 << j) != 0) << i)
            })
        })
        .collect();
    Alt2 {
        dim,
        gram: Mat2 { cols },
    }
}

/// `mu` restricted to the span of all generators but the last (the odd families).
fn lower_form(gda: &GDAlgebra) -> Result<QuadSpace2> {
    let dim = gda.t.torsion.len() - 1;
    let values = (0..1usize << dim)
        .map(|v| {
            let t = gda.symmetric_lift(v).expect("symmetric lift");
            // X_t^2 for the symmetric lift: +1 or -1 times X_{2t} = X_e
            let (u, ph) = gda.mul_mono((t, 0), (t, 0));
            debug_assert_eq!(u, 0);
            u8::from(ph != 0)
        })
        .collect();
    QuadSpace2::from_values(dim, values)
}

/// Memoized point spaces, keyed by label and the `delta` of `D`.
#[derive(Default)]
pub struct Classifier {
    spaces: HashMap<(String, i8), (GDAlgebra, PointSpace)>,
}

impl Classifier {
    pub fn new() -> Self {
        Self::default()
    }

    fn space(&mut self, label: &str, d_delta: i8) -> Result<&mut (GDAlgebra, PointSpace)> {
        let key = (label.to_string(), d_delta);
        if !self.spaces.contains_key(&key) {
            let gda = GDAlgebra::from_label(label)?;
            let space = PointSpace::new(&gda, d_delta)?;
            self.spaces.insert(key.clone(), (gda, space));
        }
        Ok(self.spaces.get_mut(&key).expect("just inserted"))
    }

    pub fn class_invariant(&mut self, params: &AlgParams) -> Result<ClassInvariant> {
        let family = family_of(params)?;
        let p = match params {
            AlgParams::Mex(MexParams { gda, k }) => {
                if *k == 0 {
                    return invalid("k must be positive");
                }
                let alg = GDAlgebra::from_label(gda)?;
                let universal = universal_group_mex(&alg.t, *k)?.iso_type().to_string();
                return Ok(ClassInvariant {
                    family,
                    gda: alg.label.to_string(),
                    k: *k,
                    q: 0,
                    s: 0,
                    delta: 1,
                    signature: None,
                    multiset: vec![],
                    universal,
                });
            }
            AlgParams::M(p) => p,
        };
        if p.k() == 0 {
            return invalid("k = q + 2s must be positive");
        }
        let (gda, space) = self.space(&p.gda, p.delta)?;
        let d = resolve_diag(gda, p)?;
        let signature = signature_of(gda, space, &d)?;
        let points: Vec<u32> = d.iter().map(|&(t, _)| space.point(gda, t)).collect();
        let canon = space.canonical(&points);
        let degs: Vec<Elem> = d.iter().map(|&(t, _)| gda.t.element(t)).collect();
        let universal = universal_group_m(&gda.t, p.q, p.s, &degs)?
            .iso_type()
            .to_string();
        let delta = if family == Family::QuaternionMatrix {
            -p.delta
        } else {
            p.delta
        };
        Ok(ClassInvariant {
            family,
            gda: gda.label.to_string(),
            k: p.k(),
            q: p.q,
            s: p.s,
            delta,
            signature,
            multiset: canon.iter().map(|&v| space.coords(v)).collect(),
            universal,
        })
    }
}

pub fn class_invariant(params: &AlgParams) -> Result<ClassInvariant> {
    Classifier::new().class_invariant(params)
}

pub fn equivalent(a: &AlgParams, b: &AlgParams) -> Result<bool> {
    let mut c = Classifier::new();
    Ok(c.class_invariant(a)? == c.class_invariant(b)?)
}

/// Sign of the real number `c d phi_0(c)` for `d = eps X_t`, `t in T^[2]`, `2s = -t`, `c = X_s`;
/// checked to be the same for every choice of `s`.
fn pauli_sign(gda: &GDAlgebra, t: usize, eps: i8) -> Result<i8> {
    let half = gda.m / 2;
    let d = (t, if eps > 0 { 0 } else { half });
    let target = gda.neg(t);
    let mut result = None;
    for s in (0..gda.order()).filter(|&s| gda.add(s, s) == target) {
        let c = (s, 0);
        let (u, ph) = gda.mul_mono(gda.mul_mono(c, d), gda.phi0_mono(c));
        let sign = match (u, ph) {
            (0, 0) => 1,
            (0, x) if x == half => -1,
            _ => {
                return Err(Error::Invalid(format!(
                    "c d phi0(c) is not real for t = {}",
                    gda.format_elem(t)
                )))
            }
        };
        match result {
            None => result = Some(sign),
            Some(r) if r != sign => {
                return Err(Error::Invalid(format!(
                    "sign test depends on the choice of c at {}",
                    gda.format_elem(t)
                )))
            }
            _ => {}
        }
    }
    result.ok_or_else(|| Error::Invalid(format!("{} is not in T^[2]", gda.format_elem(t))))
}

/// Signs of the entries lying over the trivial point, or `None` without a signature.
fn trivial_signs(
    gda: &GDAlgebra,
    space: &PointSpace,
    d: &[(usize, i8)],
) -> Result<Option<Vec<i8>>> {
    let Some(z) = space.trivial else {
        return Ok(None);
    };
    let mut out = Vec::new();
    for &(t, eps) in d {
        if space.point(gda, t) != z {
            continue;
        }
        out.push(if space.case == Case::TwoB {
            pauli_sign(gda, t, eps)?
        } else {
            eps
        });
    }
    Ok(Some(out))
}

fn signature_of(gda: &GDAlgebra, space: &PointSpace, d: &[(usize, i8)]) -> Result<Option<u32>> {
    Ok(trivial_signs(gda, space, d)?.map(|signs| {
        let sum: i64 = signs.iter().map(|&e| i64::from(e)).sum();
        sum.unsigned_abs() as u32
    }))
}

/// `signature(d)`; `None` when the family defines no signature.
pub fn signature_d(p: &GradingParams) -> Result<Option<u32>> {
    let gda = GDAlgebra::from_label(&p.gda)?;
    let space = PointSpace::new(&gda, p.delta)?;
    let d = resolve_diag(&gda, p)?;
    signature_of(&gda, &space, &d)
}

/// `l / sqrt|T^[2]|`, the factor between `signature(d)` and the signature of the involution.
pub fn signature_factor(gda: &GDAlgebra) -> Result<u32> {
    let sq = gda.t.multiples(2).len() as u64;
    let root = (sq as f64).sqrt().round() as u64;
    let l = gda.label.delta_size();
    if root * root != sq || !l.is_multiple_of(root) {
        return invalid("signature factor is not an integer");
    }
    Ok((l / root) as u32)
}

/// Signature of the involution itself.
pub fn signature_phi(p: &GradingParams) -> Result<Option<u32>> {
    let gda = GDAlgebra::from_label(&p.gda)?;
    let f = signature_factor(&gda)?;
    Ok(signature_d(p)?.map(|s| s * f))
}

/// Whether the characters of the universal group act by inner automorphisms
/// on the Lie algebra of skew elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Inner,
    Outer,
}

pub fn clifford_inner_outer(p: &GradingParams) -> Result<Parity> {
    let gda = GDAlgebra::from_label(&p.gda)?;
    let GdaLabel::Central { m, sign } = gda.label else {
        return invalid("the Clifford rule needs D(2m; +1) or D(2m; -1)");
    };
    if p.delta != sign {
        return invalid("the Clifford rule needs an orthogonal involution");
    }
    if !(p.k() << m).is_multiple_of(2) {
        return invalid("the Clifford rule needs even degree");
    }
    let d = resolve_diag(&gda, p)?;
    let n = gda.order();
    let inner = match n {
        1 => p.q == 0,
        4 => {
            let want = if p.delta > 0 { Some(1) } else { Some(-1) };
            let counts: Vec<usize> = (0..n)
                .filter(|&t| gda.mu(t) == want)
                .map(|t| d.iter().filter(|&&(x, _)| x == t).count())
                .collect();
            counts.iter().all(|c| c % 2 == counts[0] % 2)
        }
        _ => true,
    };
    Ok(if inner { Parity::Inner } else { Parity::Outer })
}

/// One class of fine gradings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub params: AlgParams,
    pub invariant: ClassInvariant,
}

/// Constraint on `signature(d)` while enumerating.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigRule {
    Any,
    Exactly(u32),
}

/// All classes of `M(D, q, s, d, delta)` with `q + 2s = k`, in enumeration order.
pub fn enumerate_m(
    c: &mut Classifier,
    label: &str,
    d_delta: i8,
    k: usize,
    sig: SigRule,
) -> Result<Vec<ClassEntry>> {
    let mut out = Vec::new();
    let (gda, space) = c.space(label, d_delta)?;
    let (gda, case) = (gda.clone(), space.case);
    let mut raw = Vec::new();
    for s in 0..=k / 2 {
        let q = k - 2 * s;
        let (_, space) = c.space(label, d_delta)?;
        for rep in space.orbit_reps(q) {
            if q == 2 && s == 0 && (case == Case::TwoB || rep[0] == rep[1]) {
                continue;
            }
            let z = space
                .trivial
                .map(|z| rep.iter().filter(|&&v| v == z).count() as u32);
            let sigs: Vec<Option<u32>> = match (z, sig) {
                (None, SigRule::Any) => vec![None],
                (None, SigRule::Exactly(_)) => vec![],
                (Some(z), SigRule::Any) => (0..=z).filter(|x| (z - x) % 2 == 0).map(Some).collect(),
                (Some(z), SigRule::Exactly(x)) => {
                    if x <= z && (z - x) % 2 == 0 {
                        vec![Some(x)]
                    } else {
                        vec![]
                    }
                }
            };
            for sg in sigs {
                let mut plus = sg.map_or(0, |x| (z.unwrap_or(0) + x) / 2);
                let d = rep
                    .iter()
                    .map(|&v| {
                        let t = space.representative(&gda, v);
                        let sign = if Some(v) == space.trivial {
                            if plus > 0 {
                                plus -= 1;
                                1
                            } else {
                                -1
                            }
                        } else {
                            1
                        };
                        DiagEntry {
                            t: gda.t.element(t),
                            sign,
                        }
                    })
                    .collect();
                raw.push(GradingParams {
                    gda: label.to_string(),
                    q,
                    s,
                    d,
                    delta: d_delta,
                });
            }
        }
    }
    for p in raw {
        let params = AlgParams::M(p);
        let invariant = c.class_invariant(&params)?;
        out.push(ClassEntry { params, invariant });
    }
    Ok(out)
}

const MAX_T: u64 = 256;

fn mex_entry(c: &mut Classifier, label: String, k: usize) -> Result<ClassEntry> {
    let params = AlgParams::Mex(MexParams { gda: label, k });
    let invariant = c.class_invariant(&params)?;
    Ok(ClassEntry { params, invariant })
}

/// Multisets of prime powers `l_j >= 2`, not all 2, with product dividing `n`.
pub fn pauli_lists(n: u64) -> Result<Vec<Vec<u64>>> {
    let pps: Vec<u64> = (2..=n)
        .filter(|&x| n.is_multiple_of(x) && is_prime_power(x))
        .collect();
    let mut out = Vec::new();
    fn rec(
        pps: &[u64],
        start: usize,
        prod: u64,
        n: u64,
        cur: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if !cur.is_empty() && cur.iter().any(|&l| l != 2) {
            out.push(cur.clone());
        }
        for i in start..pps.len() {
            let l = pps[i];
            if n.is_multiple_of(prod * l) {
                cur.push(l);
                rec(pps, i, prod * l, n, cur, out);
                cur.pop();
            }
        }
    }
    rec(&pps, 0, 1, n, &mut vec![], &mut out);
    out.sort_by(|a, b| {
        a.iter()
            .product::<u64>()
            .cmp(&b.iter().product())
            .then(a.cmp(b))
    });
    if let Some(big) = out
        .iter()
        .find(|ls| ls.iter().product::<u64>().pow(2) > MAX_T)
    {
        return Err(Error::Capacity(format!(
            "Pauli family with l = {big:?} exceeds |T| <= {MAX_T}"
        )));
    }
    Ok(out)
}

fn is_prime_power(n: u64) -> bool {
    let p = (2..=n).find(|p| n.is_multiple_of(*p)).unwrap_or(n);
    let mut x = n;
    while x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

/// Powers `2^m` dividing `n` with `m >= min_m` and `|T| = 4^m <= MAX_T` (or `2 * 4^m` when `odd`).
fn two_powers(n: usize, min_m: u32, odd: bool) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    let mut m = min_m;
    while n.is_multiple_of(1 << m) {
        let t = (1u64 << (2 * m)) * if odd { 2 } else { 1 };
        if t > MAX_T {
            return Err(Error::Capacity(format!("|T| = {t} exceeds {MAX_T}")));
        }
        out.push(m);
        m += 1;
    }
    Ok(out)
}

/// One representative per equivalence class of fine gradings on the algebras
/// with involution of complex matrix size `n` and the given kind.
pub fn enumerate_fine(
    family: Option<Family>,
    n: usize,
    kind: InvolutionKind,
    signature: Option<u32>,
) -> Result<Vec<ClassEntry>> {
    if n == 0 {
        return invalid("size must be positive");
    }
    if n > 32 {
        return Err(Error::Capacity(format!("size {n} exceeds 32")));
    }
    let mut c = Classifier::new();
    let mut out = Vec::new();
    let wanted = |f: Family| family.is_none_or(|x| x == f);
    for f in Family::ALL {
        if !wanted(f) {
            continue;
        }
        let lists: Vec<(String, usize, i8)> = match (f, kind) {
            (Family::RealMatrix, InvolutionKind::Orthogonal | InvolutionKind::Symplectic) => {
                let dd = if kind == InvolutionKind::Orthogonal {
                    1
                } else {
                    -1
                };
                two_powers(n, 0, false)?
                    .into_iter()
                    .map(|m| (format!("D({};+1)", 2 * m), n >> m, dd))
                    .collect()
            }
            (Family::QuaternionMatrix, InvolutionKind::Orthogonal | InvolutionKind::Symplectic) => {
                let dd = if kind == InvolutionKind::Orthogonal {
                    -1
                } else {
                    1
                };
                two_powers(n, 1, false)?
                    .into_iter()
                    .map(|m| (format!("D({};-1)", 2 * m), n >> m, dd))
                    .collect()
            }
            (Family::ComplexPauli, InvolutionKind::SecondKind) => pauli_lists(n as u64)?
                .into_iter()
                .map(|ls| {
                    let l: u64 = ls.iter().product();
                    let s: Vec<String> = ls.iter().map(u64::to_string).collect();
                    (format!("D({};C)", s.join(",")), n / l as usize, 1)
                })
                .collect(),
            (Family::ComplexConj, InvolutionKind::SecondKind) => two_powers(n, 0, true)?
                .into_iter()
                .map(|m| (format!("D({};R)", 2 * m + 1), n >> m, 1))
                .collect(),
            (Family::ExchangeReal | Family::ExchangeQuaternion, InvolutionKind::Exchange) => {
                let (min, sg) = if f == Family::ExchangeReal {
                    (0, "+1")
                } else {
                    (1, "-1")
                };
                for m in two_powers(n, min, false)? {
                    if signature.is_none() && (n >> m) >= 3 {
                        out.push(mex_entry(&mut c, format!("D({};{sg})", 2 * m), n >> m)?);
                    }
                }
                vec![]
            }
            (Family::ExchangeOddReal | Family::ExchangeOddQuaternion, InvolutionKind::Exchange) => {
                let (min, sg) = if f == Family::ExchangeOddReal {
                    (0, "+1")
                } else {
                    (1, "-1")
                };
                two_powers(n, min, true)?
                    .into_iter()
                    .map(|m| (format!("D({};{sg})", 2 * m + 1), n >> m, 1))
                    .collect()
            }
            _ => vec![],
        };
        for (label, k, dd) in lists {
            let gda = GDAlgebra::from_label(&label)?;
            let factor = signature_factor(&gda)?;
            let rule = match signature {
                None => SigRule::Any,
                Some(x) if x % factor == 0 => SigRule::Exactly(x / factor),
                Some(_) => continue,
            };
            out.extend(enumerate_m(&mut c, &label, dd, k, rule)?);
        }
    }
    Ok(out)
}

/// Row key for gradings with equivalent complexifications (`D(2m; +-1)` only):
/// the degree multiset up to translations and `Sp(T, beta)`.
pub struct ComplexKey {
    canon: HashMap<u32, OrbitCanon>,
}

impl Default for ComplexKey {
    fn default() -> Self {
        Self::new()
    }
}

impl ComplexKey {
    pub fn new() -> Self {
        ComplexKey {
            canon: HashMap::new(),
        }
    }

    pub fn key(&mut self, p: &GradingParams) -> Result<(u32, usize, usize, Vec<u32>)> {
        let gda = GDAlgebra::from_label(&p.gda)?;
        let GdaLabel::Central { m, .. } = gda.label else {
            return invalid("complexification key needs D(2m; +-1)");
        };
        let d = resolve_diag(&gda, p)?;
        let canon = self.canon.entry(m).or_insert_with(|| {
            let qs = QuadSpace2::standard(m as usize, 0);
            let alt = qs.polarize();
            let mut maps: Vec<_> = symplectic_generators(&alt)
                .into_iter()
                .map(|a| (a, 0))
                .collect();
            for i in 0..2 * m as usize {
                maps.push((Mat2::identity(2 * m as usize), 1 << i));
            }
            OrbitCanon::new(GroupAction::from_affine(2 * m as usize, &maps))
        });
        let pts: Vec<u32> = d.iter().map(|&(t, _)| t as u32).collect();
        Ok((m, p.q, p.s, canon.canonical(&pts)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedmat::tests::params;

    fn m(p: GradingParams) -> AlgParams {
        AlgParams::M(p)
    }

    #[test]
    fn signature_examples() {
        let p = params("D(0;+1)", 4, 0, &[("e", 1); 4], 1);
        assert_eq!(signature_d(&p).unwrap(), Some(4));
        let p = params("D(0;+1)", 3, 0, &[("e", 1), ("e", 1), ("e", -1)], 1);
        assert_eq!(signature_d(&p).unwrap(), Some(1));
        let p = params("D(9;C)", 1, 0, &[("e", 1)], 1);
        assert_eq!(signature_d(&p).unwrap(), Some(1));
        let p = params("D(2;+1)", 2, 0, &[("e", 1), ("a", 1)], 1);
        assert_eq!(signature_phi(&p).unwrap(), Some(2));
        let p = params("D(2;+1)", 4, 0, &[("e", 1); 4], 1);
        assert_eq!(signature_phi(&p).unwrap(), Some(8));
        let gda = GDAlgebra::from_label("D(3;C)").unwrap();
        assert_eq!(signature_factor(&gda).unwrap(), 1);
    }

    #[test]
    fn no_signature_families() {
        let p = params("D(2;+1)", 1, 0, &[("ab", 1)], -1);
        assert_eq!(signature_d(&p).unwrap(), None);
        let p = params("D(3;+1)", 1, 0, &[("e", 1)], 1);
        assert_eq!(signature_d(&p).unwrap(), None);
        let p = params("D(3;+1)", 1, 0, &[("e", -1)], 1);
        assert!(signature_d(&p).is_err());
    }

    #[test]
    fn pauli_sign_test_on_squares() {
        for label in ["D(3;C)", "D(4;C)", "D(2,4;C)"] {
            let gda = GDAlgebra::from_label(label).unwrap();
            assert_eq!(pauli_sign(&gda, 0, 1).unwrap(), 1);
            for t in gda.t.multiples(2) {
                let s = pauli_sign(&gda, t, 1).unwrap();
                assert_eq!(pauli_sign(&gda, t, -1).unwrap(), -s);
            }
        }
        // some squares come out negative, so the sign is not just eps
        let gda = GDAlgebra::from_label("D(3;C)").unwrap();
        assert!((0..9).any(|t| pauli_sign(&gda, t, 1).unwrap() < 0));
    }

    #[test]
    fn permuting_d_keeps_the_class() {
        let a = params("D(2;+1)", 3, 0, &[("e", 1), ("a", 1), ("b", 1)], 1);
        let b = params("D(2;+1)", 3, 0, &[("b", 1), ("e", 1), ("a", 1)], 1);
        assert!(equivalent(&m(a), &m(b)).unwrap());
    }

    #[test]
    fn ex_m8_distinctions() {
        let a = params(
            "D(2;+1)",
            4,
            0,
            &[("a", 1), ("a", 1), ("b", 1), ("b", 1)],
            1,
        );
        let b = params(
            "D(2;+1)",
            4,
            0,
            &[("e", 1), ("e", 1), ("a", 1), ("a", 1)],
            1,
        );
        assert!(!equivalent(&m(a), &m(b)).unwrap());
        let a = params("D(2;+1)", 2, 0, &[("a", 1), ("b", 1)], 1);
        let b = params("D(2;+1)", 2, 0, &[("b", 1), ("a", 1)], 1);
        assert!(equivalent(&m(a), &m(b)).unwrap());
        let a = params("D(2;+1)", 2, 1, &[("a", 1), ("a", 1)], 1);
        let b = params("D(2;+1)", 2, 1, &[("b", 1), ("b", 1)], 1);
        assert!(equivalent(&m(a), &m(b)).unwrap());
    }

    #[test]
    fn beta_separates_pairs_in_z2_4() {
        let gda = GDAlgebra::from_label("D(4;+1)").unwrap();
        let plus: Vec<usize> = (1..16).filter(|&t| gda.mu(t) == Some(1)).collect();
        let mut by_beta: HashMap<u32, Vec<ClassInvariant>> = HashMap::new();
        for &x in &plus {
            for &y in &plus {
                if x < y {
                    let p = GradingParams {
                        gda: "D(4;+1)".into(),
                        q: 2,
                        s: 0,
                        d: vec![
                            DiagEntry {
                                t: gda.t.element(x),
                                sign: 1,
                            },
                            DiagEntry {
                                t: gda.t.element(y),
                                sign: 1,
                            },
                        ],
                        delta: 1,
                    };
                    by_beta
                        .entry(gda.beta(x, y))
                        .or_default()
                        .push(class_invariant(&m(p)).unwrap());
                }
            }
        }
        assert_eq!(by_beta.len(), 2);
        let reps: Vec<&ClassInvariant> = by_beta.values().map(|v| &v[0]).collect();
        assert_ne!(reps[0], reps[1]);
        for v in by_beta.values() {
            assert!(v.iter().all(|x| x == &v[0]));
        }
    }

    #[test]
    fn clifford_rule_examples() {
        let p = params("D(2;+1)", 2, 1, &[("a", 1), ("b", 1)], 1);
        assert_eq!(clifford_inner_outer(&p).unwrap(), Parity::Outer);
        let p = params("D(2;+1)", 2, 1, &[("a", 1), ("a", 1)], 1);
        assert_eq!(clifford_inner_outer(&p).unwrap(), Parity::Inner);
        let gda = GDAlgebra::from_label("D(4;+1)").unwrap();
        let t: Vec<usize> = (1..16).filter(|&t| gda.mu(t) == Some(1)).take(2).collect();
        let p = GradingParams {
            gda: "D(4;+1)".into(),
            q: 2,
            s: 0,
            d: t.iter()
                .map(|&x| DiagEntry {
                    t: gda.t.element(x),
                    sign: 1,
                })
                .collect(),
            delta: 1,
        };
        assert_eq!(clifford_inner_outer(&p).unwrap(), Parity::Inner);
        assert!(clifford_inner_outer(&params("D(3;R)", 1, 0, &[("e", 1)], 1)).is_err());
    }

    #[test]
    fn size_one_has_one_class() {
        let all = enumerate_fine(None, 1, InvolutionKind::Orthogonal, None).unwrap();
        assert_eq!(all.len(), 1);
        let inv = &all[0].invariant;
        assert_eq!((inv.q, inv.s, inv.gda.as_str()), (1, 0, "D(0;+1)"));
    }

    #[test]
    fn mex_classes() {
        let all = enumerate_fine(None, 8, InvolutionKind::Exchange, None).unwrap();
        let mex: Vec<_> = all
            .iter()
            .filter(|e| matches!(e.params, AlgParams::Mex(_)))
            .collect();
        // k = 8 and 4 over R, k = 4 over H (k = 2 and 1 are not fine)
        assert_eq!(mex.len(), 3);
    }
}
