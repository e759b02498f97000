//! Graded matrix algebras `M_k(D)` with involution
//! `phi(X) = Phi^{-1} phi_0(X)^T Phi`, and the exchange algebras `M_k(D) x M_k(D)^op`.
//!
//! The basis element `E_ij (x) X_t` has index `(i k + j) |T| + t`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::abelian::{universal_group_m, universal_group_mex, Elem, UniversalGroup};
use crate::cyclo::{prime_with_root, rank_mod_p, Cyclo};
use crate::error::{invalid, Error, Result};
use crate::gdivalg::{Case, GDAlgebra, GdaLabel};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagEntry {
    /// Exponents of the generators of `T`.
    pub t: Vec<i64>,
    pub sign: i8,
}

/// Parameters `(D, q, s, d, delta)` of `M(D, q, s, d, delta)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradingParams {
    pub gda: String,
    pub q: usize,
    pub s: usize,
    pub d: Vec<DiagEntry>,
    #[serde(default = "one")]
    pub delta: i8,
}

fn one() -> i8 {
    1
}

/// Parameters `(D, k)` of `M^ex(D, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MexParams {
    pub gda: String,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgParams {
    M(GradingParams),
    Mex(MexParams),
}

impl GradingParams {
    pub fn k(&self) -> usize {
        self.q + 2 * self.s
    }
}

pub type AlgElem = BTreeMap<usize, Cyclo>;

#[derive(Clone, Debug)]
pub enum Kind {
    M {
        q: usize,
        s: usize,
        d: Vec<(usize, i8)>,
        delta: i8,
    },
    Mex,
}

#[derive(Clone, Debug)]
pub struct GradedMatAlg {
    pub gda: GDAlgebra,
    pub k: usize,
    pub kind: Kind,
    pub universal: UniversalGroup,
    /// Degree of each basis element, as an element of the universal group.
    pub degrees: Vec<Elem>,
    /// `phi(b) = zeta^e b'`, as `(b', e)`; empty for the exchange algebras.
    pub phi: Vec<(usize, u32)>,
    /// Diagonal `Phi`: `(pi(i), (t, zeta exponent))` per row.
    pub phi_matrix: Vec<(usize, (usize, u32))>,
}

/// A failed grading axiom with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub witness: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} violated: {}", self.axiom, self.witness)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingReport {
    pub components: usize,
    pub real_dim: usize,
    pub pairs_checked: usize,
}

pub fn build(params: &AlgParams) -> Result<GradedMatAlg> {
    match params {
        AlgParams::M(p) => build_m(p),
        AlgParams::Mex(p) => build_mex(p),
    }
}

pub fn build_m(p: &GradingParams) -> Result<GradedMatAlg> {
    build_m_with(&GDAlgebra::from_label(&p.gda)?, p)
}

/// Build `M(D, q, s, d, delta)` over an already constructed `D`.
pub fn build_m_with(gda: &GDAlgebra, p: &GradingParams) -> Result<GradedMatAlg> {
    let k = p.k();
    if k == 0 {
        return invalid("k = q + 2s must be positive");
    }
    let half = gda.m / 2;
    let delta_exp = if p.delta > 0 { 0 } else { half };
    let d = resolve_diag(gda, p)?;
    let t = &gda.t;
    let degs: Vec<Elem> = d.iter().map(|&(ti, _)| t.element(ti)).collect();
    let universal = universal_group_m(t, p.q, p.s, &degs)?;
    let mut phi_matrix = Vec::with_capacity(k);
    for &(ti, sign) in &d {
        phi_matrix.push((phi_matrix.len(), (ti, if sign > 0 { 0 } else { half })));
    }
    for r in 0..p.s {
        let a = p.q + 2 * r;
        phi_matrix.push((a + 1, (0, 0)));
        phi_matrix.push((a, (0, delta_exp)));
    }
    let mut alg = GradedMatAlg {
        gda: gda.clone(),
        k,
        kind: Kind::M {
            q: p.q,
            s: p.s,
            d,
            delta: p.delta,
        },
        universal,
        degrees: vec![],
        phi: vec![],
        phi_matrix,
    };
    alg.degrees = alg.compute_degrees();
    alg.phi = alg.compute_phi();
    Ok(alg)
}

/// Validate the diagonal entries of `p` and return them as `(t index, sign)`.
pub fn resolve_diag(gda: &GDAlgebra, p: &GradingParams) -> Result<Vec<(usize, i8)>> {
    if p.d.len() != p.q {
        return invalid(format!(
            "expected {} diagonal entries, got {}",
            p.q,
            p.d.len()
        ));
    }
    if p.delta != 1 && p.delta != -1 {
        return invalid("delta must be +1 or -1");
    }
    if gda.case() != Case::One && p.delta != 1 {
        return invalid("second-kind and exchange involutions are normalized to delta = +1");
    }
    let delta_exp = if p.delta > 0 { 0 } else { gda.m / 2 };
    // signs carry information only when the family has a signature
    let signed = match gda.case() {
        Case::One => p.delta > 0,
        Case::TwoA | Case::TwoB => true,
        Case::Three => false,
    };
    let t = &gda.t;
    let mut d = Vec::with_capacity(p.q);
    for (i, e) in p.d.iter().enumerate() {
        if e.t.len() != t.torsion.len() {
            return invalid(format!("d[{i}] has the wrong number of exponents"));
        }
        if e.sign != 1 && e.sign != -1 {
            return invalid(format!("d[{i}] sign must be +1 or -1"));
        }
        if e.sign < 0 && !signed {
            return invalid(format!(
                "d[{i}]: this family has no signature, signs must be +1"
            ));
        }
        let mut x = e.t.clone();
        t.normalize(&mut x);
        let ti = t.index(&x);
        if gda.eta(ti) != delta_exp {
            return invalid(format!(
                "d[{i}] = X_{} is not {}-hermitian",
                gda.format_elem(ti),
                p.delta
            ));
        }
        d.push((ti, e.sign));
    }
    Ok(d)
}

pub fn build_mex(p: &MexParams) -> Result<GradedMatAlg> {
    let gda = GDAlgebra::from_label(&p.gda)?;
    let universal = universal_group_mex(&gda.t, p.k)?;
    let mut alg = GradedMatAlg {
        gda,
        k: p.k,
        kind: Kind::Mex,
        universal,
        degrees: vec![],
        phi: vec![],
        phi_matrix: vec![],
    };
    alg.degrees = alg.compute_degrees();
    Ok(alg)
}

impl GradedMatAlg {
    pub fn n_t(&self) -> usize {
        self.gda.order()
    }

    pub fn dim_basis(&self) -> usize {
        self.k * self.k * self.n_t()
    }

    pub fn basis_index(&self, i: usize, j: usize, t: usize) -> usize {
        (i * self.k + j) * self.n_t() + t
    }

    pub fn unpack(&self, b: usize) -> (usize, usize, usize) {
        let n = self.n_t();
        let t = b % n;
        let ij = b / n;
        (ij / self.k, ij % self.k, t)
    }

    pub fn is_exchange(&self) -> bool {
        matches!(self.kind, Kind::Mex)
    }

    fn compute_degrees(&self) -> Vec<Elem> {
        let g = &self.universal.group;
        let t_emb: Vec<Elem> = (0..self.n_t())
            .map(|t| self.universal.embed(&self.gda.t.element(t)))
            .collect();
        (0..self.dim_basis())
            .map(|b| {
                let (i, j, t) = self.unpack(b);
                g.add(
                    &g.sub(&self.universal.u[i], &self.universal.u[j]),
                    &t_emb[t],
                )
            })
            .collect()
    }

    fn compute_phi(&self) -> Vec<(usize, u32)> {
        let gda = &self.gda;
        (0..self.dim_basis())
            .map(|b| {
                let (i, j, t) = self.unpack(b);
                let (pi, fi) = self.phi_matrix[i];
                let (pj, fj) = self.phi_matrix[j];
                let x = gda.mul_mono(gda.mul_mono(gda.inv_mono(fj), gda.phi0_mono((t, 0))), fi);
                (self.basis_index(pj, pi, x.0), x.1)
            })
            .collect()
    }

    pub fn one(&self) -> AlgElem {
        (0..self.k)
            .map(|i| (self.basis_index(i, i, 0), Cyclo::one(self.gda.m)))
            .collect()
    }

    pub fn basis_elem(&self, b: usize) -> AlgElem {
        AlgElem::from([(b, Cyclo::one(self.gda.m))])
    }

    /// Product of basis elements: `Some((b, zeta exponent))` or `None` when zero.
    pub fn mul_basis(&self, a: usize, b: usize) -> Option<(usize, u32)> {
        let (i, j, s) = self.unpack(a);
        let (j2, l, t) = self.unpack(b);
        (j == j2).then(|| {
            (
                self.basis_index(i, l, self.gda.add(s, t)),
                self.gda.sigma(s, t),
            )
        })
    }

    pub fn mul(&self, x: &AlgElem, y: &AlgElem) -> AlgElem {
        let mut out = AlgElem::new();
        for (&a, ca) in x {
            for (&b, cb) in y {
                if let Some((c, e)) = self.mul_basis(a, b) {
                    add_term(&mut out, c, ca.mul(cb).mul_zeta(e as i64));
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn apply_phi(&self, x: &AlgElem) -> AlgElem {
        let mut out = AlgElem::new();
        for (&b, c) in x {
            let (b2, e) = self.phi[b];
            let c2 = if self.gda.conjugating {
                c.conj()
            } else {
                c.clone()
            };
            add_term(&mut out, b2, c2.mul_zeta(e as i64));
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    /// Homogeneous components: degree -> basis indices.
    pub fn components(&self) -> BTreeMap<Elem, Vec<usize>> {
        let mut out: BTreeMap<Elem, Vec<usize>> = BTreeMap::new();
        for (b, d) in self.degrees.iter().enumerate() {
            out.entry(d.clone()).or_default().push(b);
        }
        out
    }

    /// Multiset of real dimensions of the homogeneous components, as `dim -> count`.
    pub fn census(&self) -> BTreeMap<usize, usize> {
        let de = self.gda.de_dim();
        let mut out = BTreeMap::new();
        for v in self.components().values() {
            *out.entry(v.len() * de).or_insert(0) += 1;
        }
        out
    }

    pub fn real_dim(&self) -> usize {
        self.dim_basis() * self.gda.de_dim()
    }

    pub fn params(&self) -> Option<GradingParams> {
        match &self.kind {
            Kind::M { q, s, d, delta } => Some(GradingParams {
                gda: self.gda.label.to_string(),
                q: *q,
                s: *s,
                d: d.iter()
                    .map(|&(t, sign)| DiagEntry {
                        t: self.gda.t.element(t),
                        sign,
                    })
                    .collect(),
                delta: *delta,
            }),
            Kind::Mex => None,
        }
    }

    /// Lie-algebra census: degree -> real dimension of the homogeneous
    /// component of the Lie algebra of skew elements (for the exchange
    /// algebras, of the first copy), with the skew central element removed.
    pub fn lie_census(&self) -> BTreeMap<Elem, usize> {
        let de = self.gda.de_dim();
        let mut out: BTreeMap<Elem, usize> = BTreeMap::new();
        let comps = self.components();
        for (g, basis) in &comps {
            let dim = basis.len() * de;
            let skew = if self.is_exchange() {
                dim
            } else {
                let tr: i64 = if self.gda.conjugating {
                    0
                } else {
                    basis
                        .iter()
                        .filter(|&&b| self.phi[b].0 == b)
                        .map(|&b| if self.phi[b].1 == 0 { 1 } else { -1 })
                        .sum()
                };
                ((dim as i64 - tr) / 2) as usize
            };
            out.insert(g.clone(), skew);
        }
        if let Some(z) = self.skew_center_degree() {
            if let Some(v) = out.get_mut(&z) {
                *v -= 1;
            }
        }
        out.retain(|_, v| *v > 0);
        out
    }

    /// Degree of the skew-symmetric central element when the Lie algebra of
    /// skew elements is reductive but not simple.
    pub fn skew_center_degree(&self) -> Option<Elem> {
        let g = &self.universal.group;
        match (&self.kind, self.gda.case()) {
            (Kind::Mex, _) | (_, Case::TwoB) => Some(g.zero()),
            (_, Case::TwoA) | (_, Case::Three) => {
                let f = self.gda.f_index()?;
                Some(self.universal.embed(&self.gda.t.element(f)))
            }
            _ => None,
        }
    }

    pub fn lie_dim(&self) -> usize {
        self.lie_census().values().sum()
    }
}

fn add_term(out: &mut AlgElem, b: usize, c: Cyclo) {
    match out.get_mut(&b) {
        Some(v) => *v = v.add(&c),
        None => {
            out.insert(b, c);
        }
    }
}

/// Closed-form census `dim -> count` for `M(D, q, s, d, delta)` or `M^ex(D, k)`.
pub fn closed_form_census(alg: &GradedMatAlg) -> BTreeMap<usize, usize> {
    let n = alg.n_t();
    let k = alg.k;
    let de = alg.gda.de_dim();
    let mut out = BTreeMap::new();
    let mut put = |dim: usize, c: usize| {
        if c > 0 {
            *out.entry(dim).or_insert(0) += c;
        }
    };
    match alg.kind {
        Kind::M { s, .. } => {
            put(k * de, n);
            put(de, 2 * s * n);
            put(2 * de, (k * (k - 1) / 2 - s) * n);
        }
        Kind::Mex => {
            put(k * de, n);
            put(de, k * (k - 1) * n);
        }
    }
    out
}

/// Check the grading axioms; returns the first violation found.
pub fn verify_grading(alg: &GradedMatAlg) -> std::result::Result<GradingReport, Violation> {
    let n = alg.dim_basis();
    let g = &alg.universal.group;
    if alg.degrees.len() != n {
        return Err(Violation {
            axiom: "partition",
            witness: format!("{} degrees for {} basis elements", alg.degrees.len(), n),
        });
    }
    let comps = alg.components();
    let total: usize = comps.values().map(Vec::len).sum();
    if total != n {
        return Err(Violation {
            axiom: "partition",
            witness: format!("components cover {total} of {n}"),
        });
    }
    if comps
        .values()
        .map(|v| v.len() * alg.gda.de_dim())
        .sum::<usize>()
        != alg.real_dim()
    {
        return Err(Violation {
            axiom: "dimension",
            witness: "component dimensions do not sum to dim R".into(),
        });
    }
    let mut pairs = 0;
    for a in 0..n {
        let (_, j, _) = alg.unpack(a);
        for l in 0..alg.k {
            for t in 0..alg.n_t() {
                let b = alg.basis_index(j, l, t);
                let (c, _) = alg.mul_basis(a, b).expect("matching indices");
                pairs += 1;
                if alg.degrees[c] != g.add(&alg.degrees[a], &alg.degrees[b]) {
                    return Err(Violation {
                        axiom: "multiplicativity",
                        witness: format!(
                            "deg(b{a} b{b}) = {:?} != {:?} + {:?}",
                            alg.degrees[c], alg.degrees[a], alg.degrees[b]
                        ),
                    });
                }
            }
        }
    }
    if !alg.is_exchange() {
        let m = alg.gda.m;
        for b in 0..n {
            let (b2, e) = alg.phi[b];
            if alg.degrees[b2] != alg.degrees[b] {
                return Err(Violation {
                    axiom: "involution preserves degrees",
                    witness: format!("phi(b{b}) = b{b2}"),
                });
            }
            let (b3, e2) = alg.phi[b2];
            let e_total = if alg.gda.conjugating {
                (m - e % m) % m + e2
            } else {
                e + e2
            } % m;
            if b3 != b || !e_total.is_multiple_of(m) {
                return Err(Violation {
                    axiom: "involution squares to identity",
                    witness: format!("phi^2(b{b}) = zeta^{e_total} b{b3}"),
                });
            }
        }
        if n <= 1024 {
            for a in 0..n {
                let (_, j, _) = alg.unpack(a);
                for l in 0..alg.k {
                    for t in 0..alg.n_t() {
                        let b = alg.basis_index(j, l, t);
                        let (x, y) = (alg.basis_elem(a), alg.basis_elem(b));
                        let lhs = alg.apply_phi(&alg.mul(&x, &y));
                        let rhs = alg.mul(&alg.apply_phi(&y), &alg.apply_phi(&x));
                        if lhs != rhs {
                            return Err(Violation {
                                axiom: "involution reverses products",
                                witness: format!("pair (b{a}, b{b})"),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(GradingReport {
        components: comps.len(),
        real_dim: alg.real_dim(),
        pairs_checked: pairs,
    })
}

/// Why a grading is or is not fine, with a refinement when available.
#[derive(Clone, Debug)]
pub struct FineVerdict {
    pub fine: bool,
    pub reason: String,
    pub certificate: Option<Certificate>,
}

#[derive(Clone, Debug)]
pub enum Certificate {
    Refinement(Box<Refinement>),
    /// Refinement exists by the structure theory but is not constructed.
    NotConstructed(String),
}

pub fn is_fine(params: &AlgParams) -> Result<FineVerdict> {
    match params {
        AlgParams::Mex(p) => {
            let gda = GDAlgebra::from_label(&p.gda)?;
            if !gda_is_fine(&gda) {
                return Ok(FineVerdict {
                    fine: false,
                    reason: "graded-division algebra is not fine".into(),
                    certificate: None,
                });
            }
            let elementary = gda.t.torsion.iter().all(|&o| o == 2);
            let fine = p.k >= 3 || !elementary;
            let reason = if fine {
                "k >= 3 or T is not an elementary 2-group".into()
            } else {
                format!("k = {} < 3 with T an elementary 2-group", p.k)
            };
            Ok(FineVerdict {
                fine,
                reason,
                certificate: None,
            })
        }
        AlgParams::M(p) => {
            let alg = build_m(p)?;
            if !gda_is_fine(&alg.gda) {
                return Ok(FineVerdict {
                    fine: false,
                    reason: "graded-division algebra is not fine".into(),
                    certificate: None,
                });
            }
            let Kind::M { q, s, ref d, .. } = alg.kind else {
                unreachable!()
            };
            if (q, s) != (2, 0) {
                return Ok(FineVerdict {
                    fine: true,
                    reason: "(q, s) != (2, 0)".into(),
                    certificate: None,
                });
            }
            if alg.gda.case() == Case::TwoB {
                let certificate = if alg.n_t() <= 9 {
                    Certificate::Refinement(Box::new(refine_by_exchange(&alg)?))
                } else {
                    Certificate::NotConstructed("(q, s) = (2, 0) with D_e = C".into())
                };
                return Ok(FineVerdict {
                    fine: false,
                    reason: "(q, s) = (2, 0) with D_e = C".into(),
                    certificate: Some(certificate),
                });
            }
            if d[0].0 != d[1].0 {
                return Ok(FineVerdict {
                    fine: true,
                    reason: "(q, s) = (2, 0) with t_1 != t_2".into(),
                    certificate: None,
                });
            }
            let cert = refine_equal_degrees(&alg)?;
            Ok(FineVerdict {
                fine: false,
                reason: "(q, s) = (2, 0) with t_1 = t_2".into(),
                certificate: Some(Certificate::Refinement(Box::new(cert))),
            })
        }
    }
}

/// Whether the grading on `D` itself is fine.
pub fn gda_is_fine(gda: &GDAlgebra) -> bool {
    match &gda.label {
        GdaLabel::Pauli { ls } => ls.iter().any(|&l| l != 2),
        _ => true,
    }
}

/// Refined grading given by the eigenspaces of an inner automorphism
/// `psi = Int(A)` on the homogeneous components.
#[derive(Clone, Debug)]
pub struct Refinement {
    /// `A` as an element of `R` (over the lifted scalar ring).
    pub a: AlgElem,
    /// Order of `psi`.
    pub order: u32,
    /// Scalar ring `Z[zeta_m]` of the certificate.
    pub m: u32,
    pub components: Vec<RefinedComponent>,
}

#[derive(Clone, Debug)]
pub struct RefinedComponent {
    pub degree: Elem,
    /// `psi` acts by `zeta_order^eigen`.
    pub eigen: u32,
    pub basis: Vec<AlgElem>,
}

fn antidiag(alg: &GradedMatAlg, a12: (usize, u32), a21: (usize, u32)) -> AlgElem {
    let m = alg.gda.m;
    AlgElem::from([
        (alg.basis_index(0, 1, a12.0), Cyclo::zeta(m, a12.1 as i64)),
        (alg.basis_index(1, 0, a21.0), Cyclo::zeta(m, a21.1 as i64)),
    ])
}

fn antidiag_inverse(alg: &GradedMatAlg, a12: (usize, u32), a21: (usize, u32)) -> AlgElem {
    antidiag(alg, alg.gda.inv_mono(a21), alg.gda.inv_mono(a12))
}

/// `(q, s) = (2, 0)`, `t_1 = t_2`, real `D_e`: `psi = Int([[0, mu], [1, 0]])`
/// with `d_2 = mu d_1`.
pub fn refine_equal_degrees(alg: &GradedMatAlg) -> Result<Refinement> {
    let Kind::M {
        q: 2, s: 0, ref d, ..
    } = alg.kind
    else {
        return invalid("refinement needs (q, s) = (2, 0)");
    };
    if d[0].0 != d[1].0 {
        return invalid("refinement needs t_1 = t_2");
    }
    if alg.gda.case() == Case::TwoB {
        return invalid("refinement by equal degrees needs real D_e");
    }
    let m = alg.gda.m;
    let mu = d[0].1 * d[1].1;
    let mu_exp = if mu > 0 { 0 } else { m / 2 };
    let a = antidiag(alg, (0, mu_exp), (0, 0));
    let mut components = Vec::new();
    let c = |x: i64| Cyclo::from_int(m, x);
    for t in 0..alg.n_t() {
        let (e11, e22) = (alg.basis_index(0, 0, t), alg.basis_index(1, 1, t));
        let (e12, e21) = (alg.basis_index(0, 1, t), alg.basis_index(1, 0, t));
        components.push(RefinedComponent {
            degree: alg.degrees[e11].clone(),
            eigen: 0,
            basis: vec![AlgElem::from([(e11, c(1)), (e22, c(1))])],
        });
        components.push(RefinedComponent {
            degree: alg.degrees[e11].clone(),
            eigen: 1,
            basis: vec![AlgElem::from([(e11, c(1)), (e22, c(-1))])],
        });
        let off = alg.degrees[e12].clone();
        debug_assert_eq!(off, alg.degrees[e21]);
        components.push(RefinedComponent {
            degree: off.clone(),
            eigen: 0,
            basis: vec![AlgElem::from([(e12, c(mu as i64)), (e21, c(1))])],
        });
        components.push(RefinedComponent {
            degree: off,
            eigen: 1,
            basis: vec![AlgElem::from([(e12, c(-mu as i64)), (e21, c(1))])],
        });
    }
    Ok(Refinement {
        a,
        order: 2,
        m,
        components,
    })
}

/// `(q, s) = (2, 0)` with `D_e = C`: eigenspaces of `psi = Int([[0, d_2], [d_1, 0]])`.
/// The certificate lives over `Z[zeta_{lcm(M, n)}]` where `n` is the order of `psi`.
pub fn refine_by_exchange(alg: &GradedMatAlg) -> Result<Refinement> {
    let Kind::M {
        q: 2, s: 0, ref d, ..
    } = alg.kind
    else {
        return invalid("refinement needs (q, s) = (2, 0)");
    };
    let half = alg.gda.m / 2;
    let d1 = (d[0].0, if d[0].1 > 0 { 0 } else { half });
    let d2 = (d[1].0, if d[1].1 > 0 { 0 } else { half });
    // order of psi: least n with A^n scalar
    let gda = &alg.gda;
    let mut order = 0u32;
    for n in 1..=(4 * gda.m) {
        // A^n: even n -> diag((d2 d1)^{n/2}, (d1 d2)^{n/2}); only even powers can be scalar
        if n % 2 == 1 {
            continue;
        }
        let x = gda.mul_mono(d2, d1);
        let y = gda.mul_mono(d1, d2);
        let (mut px, mut py) = ((0usize, 0u32), (0usize, 0u32));
        for _ in 0..n / 2 {
            px = gda.mul_mono(px, x);
            py = gda.mul_mono(py, y);
        }
        if px.0 == 0 && px == py {
            order = n;
            break;
        }
    }
    if order == 0 {
        return Err(Error::Invalid("psi has no finite order".into()));
    }
    let m2 = num_integer::lcm(gda.m, order);
    let lifted = build_m_with(
        &gda.with_scalar_order(m2)?,
        &alg.params().expect("M algebra"),
    )?;
    let f = m2 / gda.m;
    let lift = |x: (usize, u32)| (x.0, x.1 * f);
    let a = antidiag(&lifted, lift(d2), lift(d1));
    let ainv = antidiag_inverse(&lifted, lift(d2), lift(d1));
    let omega_step = (m2 / order) as i64;
    let (pr, root) = prime_with_root(m2);
    let mut components = Vec::new();
    for (g, basis) in lifted.components() {
        for kk in 0..order {
            let mut chosen: Vec<AlgElem> = Vec::new();
            let mut rows: Vec<Vec<u64>> = Vec::new();
            for &b in &basis {
                let mut acc = AlgElem::new();
                let mut cur = lifted.basis_elem(b);
                for j in 0..order {
                    for (bb, c) in &cur {
                        add_term(
                            &mut acc,
                            *bb,
                            c.mul_zeta(-(j as i64) * kk as i64 * omega_step),
                        );
                    }
                    cur = lifted.mul(&lifted.mul(&a, &cur), &ainv);
                }
                acc.retain(|_, v| !v.is_zero());
                if acc.is_empty() {
                    continue;
                }
                let row = fp_row(&lifted, &acc, pr, root);
                let mut probe = rows.clone();
                probe.push(row.clone());
                if rank_mod_p(probe, pr) > rows.len() {
                    rows.push(row);
                    chosen.push(acc);
                }
            }
            if !chosen.is_empty() {
                components.push(RefinedComponent {
                    degree: g.clone(),
                    eigen: kk,
                    basis: chosen,
                });
            }
        }
    }
    Ok(Refinement {
        a,
        order,
        m: m2,
        components,
    })
}

fn fp_row(alg: &GradedMatAlg, x: &AlgElem, p: u64, r: u64) -> Vec<u64> {
    let mut row = vec![0u64; alg.dim_basis()];
    for (&b, c) in x {
        row[b] = c.to_fp(p, r);
    }
    row
}

/// Two vectors are proportional over the scalar field (exact).
fn proportional(x: &AlgElem, y: &AlgElem) -> bool {
    if x.keys().ne(y.keys()) {
        return false;
    }
    let keys: Vec<&usize> = x.keys().collect();
    if keys.is_empty() {
        return true;
    }
    let (x0, y0) = (&x[keys[0]], &y[keys[0]]);
    keys.iter().all(|k| x[*k].mul(y0) == y[*k].mul(x0))
}

/// Independent check of a refinement certificate against an algebra.
pub fn verify_refinement(
    alg: &GradedMatAlg,
    cert: &Refinement,
) -> std::result::Result<(), Violation> {
    let fail = |axiom: &'static str, witness: String| Err(Violation { axiom, witness });
    let lifted = if cert.m == alg.gda.m {
        alg.clone()
    } else {
        let Some(p) = alg.params() else {
            return fail(
                "certificate",
                "exchange algebras have no certificate".into(),
            );
        };
        let gda = alg.gda.with_scalar_order(cert.m).map_err(|e| Violation {
            axiom: "certificate",
            witness: e.to_string(),
        })?;
        build_m_with(&gda, &p).map_err(|e| Violation {
            axiom: "certificate",
            witness: e.to_string(),
        })?
    };
    let m = cert.m;
    let Kind::M { q: 2, s: 0, .. } = lifted.kind else {
        return fail("certificate", "needs (q, s) = (2, 0)".into());
    };
    // A must be an invertible antidiagonal matrix of homogeneous elements
    let entry = |i: usize, j: usize| -> Option<(usize, u32)> {
        let hits: Vec<(usize, u32)> = cert
            .a
            .iter()
            .filter(|(&b, _)| {
                let (bi, bj, _) = lifted.unpack(b);
                (bi, bj) == (i, j)
            })
            .filter_map(|(&b, c)| c.as_root_of_unity().map(|e| (lifted.unpack(b).2, e)))
            .collect();
        (hits.len() == 1).then(|| hits[0])
    };
    let (Some(a12), Some(a21)) = (entry(0, 1), entry(1, 0)) else {
        return fail(
            "certificate",
            "A is not antidiagonal with root-of-unity coefficients".into(),
        );
    };
    if cert.a.len() != 2 {
        return fail("certificate", "A has extra entries".into());
    }
    let ainv = antidiag_inverse(&lifted, a12, a21);
    if lifted.mul(&cert.a, &ainv) != lifted.one() {
        return fail("certificate", "A^{-1} is wrong".into());
    }
    let psi = |x: &AlgElem| lifted.mul(&lifted.mul(&cert.a, x), &ainv);
    let omega = |k: u32| Cyclo::zeta(m, (k as i64) * (m / cert.order) as i64);
    let scale =
        |x: &AlgElem, c: &Cyclo| -> AlgElem { x.iter().map(|(&b, v)| (b, v.mul(c))).collect() };
    let mut index: HashMap<(Elem, u32), usize> = HashMap::new();
    for (ci, comp) in cert.components.iter().enumerate() {
        if index
            .insert((comp.degree.clone(), comp.eigen), ci)
            .is_some()
        {
            return fail(
                "certificate",
                format!("duplicate component {:?}/{}", comp.degree, comp.eigen),
            );
        }
        if comp.basis.len() != 1 {
            return fail(
                "graded-division",
                format!(
                    "component {:?}/{} has dimension {} over D_e",
                    comp.degree,
                    comp.eigen,
                    comp.basis.len()
                ),
            );
        }
        for x in &comp.basis {
            if x.is_empty() || x.keys().any(|&b| lifted.degrees[b] != comp.degree) {
                return fail(
                    "homogeneity",
                    format!("element not of degree {:?}", comp.degree),
                );
            }
            if psi(x) != scale(x, &omega(comp.eigen)) {
                return fail(
                    "eigenvector",
                    format!(
                        "psi does not act by omega^{} on {:?}",
                        comp.eigen, comp.degree
                    ),
                );
            }
            if !proportional(&lifted.apply_phi(x), x) {
                return fail(
                    "involution",
                    format!(
                        "phi does not preserve component {:?}/{}",
                        comp.degree, comp.eigen
                    ),
                );
            }
        }
    }
    let g = &lifted.universal.group;
    for c1 in &cert.components {
        for c2 in &cert.components {
            let prod = lifted.mul(&c1.basis[0], &c2.basis[0]);
            if prod.is_empty() {
                continue;
            }
            let key = (
                g.add(&c1.degree, &c2.degree),
                (c1.eigen + c2.eigen) % cert.order,
            );
            match index.get(&key) {
                Some(&ci) if proportional(&prod, &cert.components[ci].basis[0]) => {}
                _ => {
                    return fail(
                        "grading",
                        format!(
                            "product of {:?}/{} and {:?}/{} leaves the components",
                            c1.degree, c1.eigen, c2.degree, c2.eigen
                        ),
                    )
                }
            }
        }
    }
    let (pr, root) = prime_with_root(m);
    let rows: Vec<Vec<u64>> = cert
        .components
        .iter()
        .map(|c| fp_row(&lifted, &c.basis[0], pr, root))
        .collect();
    let rank = rank_mod_p(rows, pr);
    if rank != lifted.dim_basis() {
        return fail(
            "spanning",
            format!("components span {rank} of {}", lifted.dim_basis()),
        );
    }
    if cert.components.len() <= lifted.components().len() {
        return fail("strict refinement", "no component splits".into());
    }
    Ok(())
}

/// Result of the exhaustive search for refining automorphisms of `M(D, 2, 0, d, delta)`.
#[derive(Clone, Debug, Default)]
pub struct SplitSearch {
    pub candidates: usize,
    pub refining: usize,
}

/// Exhaustively search `psi = Int(B)` for `B` a 2x2 matrix with entries in
/// `{0, +-X_t}` that is an involutive automorphism preserving every
/// component, compatible with `phi`, and not scalar on some component.
/// Real families only.
pub fn split_search(alg: &GradedMatAlg) -> Result<SplitSearch> {
    let Kind::M { q: 2, s: 0, .. } = alg.kind else {
        return invalid("split search needs (q, s) = (2, 0)");
    };
    if alg.gda.conjugating || alg.gda.m != 2 {
        return invalid("split search needs a real family");
    }
    let n = alg.n_t();
    let opts: Vec<Option<(usize, i64)>> = std::iter::once(None)
        .chain((0..n).flat_map(|t| [Some((t, 1)), Some((t, -1))]))
        .collect();
    let to_int = |x: &AlgElem| -> Vec<i128> {
        let mut v = vec![0i128; alg.dim_basis()];
        for (&b, c) in x {
            v[b] = c.coeffs()[0] as i128;
        }
        v
    };
    let center: Vec<AlgElem> = alg
        .gda
        .center()
        .into_iter()
        .map(|z| {
            (0..2)
                .map(|i| (alg.basis_index(i, i, z), Cyclo::one(2)))
                .collect()
        })
        .collect();
    let comps = alg.components();
    let all: Vec<AlgElem> = (0..alg.dim_basis()).map(|b| alg.basis_elem(b)).collect();
    let mut out = SplitSearch::default();
    for e11 in &opts {
        for e12 in &opts {
            for e21 in &opts {
                for e22 in &opts {
                    let mut bm = AlgElem::new();
                    for (entry, (i, j)) in
                        [(e11, (0, 0)), (e12, (0, 1)), (e21, (1, 0)), (e22, (1, 1))]
                    {
                        if let Some((t, c)) = entry {
                            bm.insert(alg.basis_index(i, j, *t), Cyclo::from_int(2, *c));
                        }
                    }
                    out.candidates += 1;
                    // invertible: left multiplication is injective
                    let left: Vec<Vec<i128>> =
                        all.iter().map(|y| to_int(&alg.mul(&bm, y))).collect();
                    if int_rank(left) != alg.dim_basis() {
                        continue;
                    }
                    // psi^2 = id: B^2 central
                    let b2 = alg.mul(&bm, &bm);
                    if !in_span(
                        &center.iter().map(&to_int).collect::<Vec<_>>(),
                        &to_int(&b2),
                    ) {
                        continue;
                    }
                    // phi-compatible: phi(B) in B * center
                    let bz: Vec<Vec<i128>> =
                        center.iter().map(|z| to_int(&alg.mul(&bm, z))).collect();
                    if !in_span(&bz, &to_int(&alg.apply_phi(&bm))) {
                        continue;
                    }
                    let mut preserves = true;
                    let mut splits = false;
                    for basis in comps.values() {
                        let rb: Vec<Vec<i128>> = basis
                            .iter()
                            .map(|&x| to_int(&alg.mul(&alg.basis_elem(x), &bm)))
                            .collect();
                        let br: Vec<Vec<i128>> = basis
                            .iter()
                            .map(|&x| to_int(&alg.mul(&bm, &alg.basis_elem(x))))
                            .collect();
                        if br.iter().any(|v| !in_span(&rb, v)) {
                            preserves = false;
                            break;
                        }
                        let plus = rb.iter().zip(&br).all(|(a, b)| a == b);
                        let minus = rb
                            .iter()
                            .zip(&br)
                            .all(|(a, b)| a.iter().zip(b).all(|(x, y)| *x == -*y));
                        if !plus && !minus {
                            splits = true;
                        }
                    }
                    if preserves && splits {
                        out.refining += 1;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Exact rank over `Q` by fraction-free elimination.
pub fn int_rank(mut rows: Vec<Vec<i128>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        for i in 0..rows.len() {
            if i != rank && rows[i][col] != 0 {
                let (a, b) = (rows[rank][col], rows[i][col]);
                for j in 0..ncols {
                    rows[i][j] = rows[i][j] * a - rows[rank][j] * b;
                }
                let g = rows[i].iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
                if g > 1 {
                    rows[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn in_span(span: &[Vec<i128>], v: &[i128]) -> bool {
    let r = int_rank(span.to_vec());
    let mut probe = span.to_vec();
    probe.push(v.to_vec());
    int_rank(probe) == r
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn params(
        gda: &str,
        q: usize,
        s: usize,
        d: &[(&str, i8)],
        delta: i8,
    ) -> GradingParams {
        let alg = GDAlgebra::from_label(gda).unwrap();
        GradingParams {
            gda: gda.into(),
            q,
            s,
            d: d.iter()
                .map(|(w, sign)| DiagEntry {
                    t: alg.t.parse_elem(w).unwrap(),
                    sign: *sign,
                })
                .collect(),
            delta,
        }
    }

    #[test]
    fn census_of_spec_example() {
        let alg = build_m(&params("D(2;+1)", 2, 1, &[("a", 1), ("b", 1)], 1)).unwrap();
        verify_grading(&alg).unwrap();
        let census = alg.census();
        assert_eq!(census, BTreeMap::from([(1, 8), (2, 20), (4, 4)]));
        assert_eq!(census, closed_form_census(&alg));
        assert_eq!(alg.universal.iso_type().to_string(), "Z2 x Z4 x Z");
    }

    #[test]
    fn mex_census() {
        let alg = build_mex(&MexParams {
            gda: "D(2;+1)".into(),
            k: 3,
        })
        .unwrap();
        verify_grading(&alg).unwrap();
        assert_eq!(alg.census(), BTreeMap::from([(1, 24), (3, 4)]));
        assert_eq!(alg.census().iter().map(|(d, c)| d * c).sum::<usize>(), 36);
    }

    #[test]
    fn corrupted_degree_is_caught() {
        let mut alg = build_m(&params("D(2;+1)", 2, 1, &[("a", 1), ("b", 1)], 1)).unwrap();
        let g = alg.universal.group.clone();
        alg.degrees[5] = g.add(&alg.degrees[5], &alg.universal.u[3]);
        let v = verify_grading(&alg).unwrap_err();
        assert_eq!(v.axiom, "multiplicativity");
    }

    #[test]
    fn non_hermitian_entry_rejected() {
        // mu(c) = -1 in D(2;+1): X_c is skew under transposition
        assert!(build_m(&params("D(2;+1)", 1, 0, &[("ab", 1)], 1)).is_err());
        assert!(build_m(&params("D(2;+1)", 1, 0, &[("ab", 1)], -1)).is_ok());
    }

    #[test]
    fn equal_degree_refinement_verifies() {
        let alg = build_m(&params("D(2;+1)", 2, 0, &[("a", 1), ("a", -1)], 1)).unwrap();
        let v = is_fine(&AlgParams::M(alg.params().unwrap())).unwrap();
        assert!(!v.fine);
        let Some(Certificate::Refinement(cert)) = v.certificate else {
            panic!()
        };
        verify_refinement(&alg, &cert).unwrap();
        let e = alg.universal.group.zero();
        let e_dims: usize = cert
            .components
            .iter()
            .filter(|c| c.degree == e)
            .map(|c| c.basis.len())
            .filter(|_| true)
            .count();
        assert_eq!(e_dims, 2);
    }

    #[test]
    fn complex_refinement_verifies() {
        let alg = build_m(&params("D(3;C)", 2, 0, &[("a", 1), ("b", 1)], 1)).unwrap();
        let cert = refine_by_exchange(&alg).unwrap();
        verify_refinement(&alg, &cert).unwrap();
    }
}
