//! Fine gradings on the real forms of the classical simple Lie algebras,
//! obtained by restricting the associative classification to skew elements,
//! and the two tables for `M_8` and `D_4`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::abelian::{Elem, IsoType};
use crate::classify::{
    clifford_inner_outer, enumerate_fine, enumerate_m, pauli_lists, signature_factor,
    signature_phi, ClassEntry, Classifier, ComplexKey, Family, InvolutionKind, Parity, SigRule,
};
use crate::error::{invalid, Error, Result};
use crate::gdivalg::{GDAlgebra, GdaLabel};
use crate::gf2forms::QuadSpace2;
use crate::gradedmat::{build, AlgParams, GradedMatAlg, GradingParams, Kind, MexParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Series {
    AInnerSl,
    AInnerSu,
    AOuterSl,
    AOuterSu,
    B,
    C,
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Delta {
    R,
    H,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RealForm {
    /// `sl_n(Delta)`, `sp(2r)` (`R`) or `u*(r)` (`H`).
    Division(Delta),
    /// `su(p, q)`, `so(p, q)` or `sp(p, q)`.
    Signature(usize, usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LieFormSpec {
    pub series: Series,
    pub r: usize,
    pub form: RealForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieGrading {
    pub label: String,
    pub params: AlgParams,
    pub universal: String,
    /// `(degree in the universal group, dimension)`, nonzero components only.
    pub census: Vec<(Elem, usize)>,
}

impl LieFormSpec {
    pub fn name(&self) -> String {
        let n = self.r + 1;
        match (self.series, self.form) {
            (Series::AInnerSl | Series::AOuterSl, RealForm::Division(Delta::R)) => {
                format!("sl_{n}(R)")
            }
            (Series::AInnerSl | Series::AOuterSl, RealForm::Division(Delta::H)) => {
                format!("sl_{}(H)", n / 2)
            }
            (Series::C, RealForm::Division(_)) => format!("sp({})", 2 * self.r),
            (Series::D, RealForm::Division(_)) => format!("u*({})", self.r),
            (Series::C, RealForm::Signature(p, q)) => format!("sp({p},{q})"),
            (Series::AInnerSu | Series::AOuterSu, RealForm::Signature(p, q)) => {
                format!("su({p},{q})")
            }
            (_, RealForm::Signature(p, q)) => format!("so({p},{q})"),
            _ => "?".into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let r = self.r;
        let bad = |msg: &str| invalid(format!("{}: {msg}", self.name()));
        let sig = |total: usize| match self.form {
            RealForm::Signature(p, q) if p + q == total && p >= q => Ok((p, q)),
            RealForm::Signature(..) => Err(Error::Invalid(format!(
                "signature must be (p, q), p >= q, p + q = {total}"
            ))),
            RealForm::Division(_) => Err(Error::Invalid("this series needs a signature".into())),
        };
        match self.series {
            Series::AInnerSl | Series::AOuterSl => {
                if r < 2 && self.series == Series::AOuterSl || r < 1 {
                    return bad("rank too small");
                }
                match self.form {
                    RealForm::Division(Delta::H) if !(r + 1).is_multiple_of(2) => {
                        bad("sl_n(H) needs r + 1 even")
                    }
                    RealForm::Division(_) => Ok(()),
                    _ => bad("sl needs R or H"),
                }
            }
            Series::AInnerSu | Series::AOuterSu => {
                if r < 2 {
                    return bad("rank too small");
                }
                sig(r + 1).map(|_| ())
            }
            Series::B => {
                if r < 1 {
                    return bad("rank too small");
                }
                sig(2 * r + 1).map(|_| ())
            }
            Series::C => match self.form {
                _ if r < 1 => bad("rank too small"),
                RealForm::Division(Delta::R) => Ok(()),
                RealForm::Division(Delta::H) => bad("use a signature (p, q) for sp(p, q)"),
                RealForm::Signature(..) => sig(r).map(|_| ()),
            },
            Series::D => {
                if !(r == 3 || r >= 5) {
                    return bad("series D is handled for r = 3 and r >= 5");
                }
                match self.form {
                    RealForm::Division(Delta::H) => Ok(()),
                    RealForm::Division(Delta::R) => bad("use a signature (p, q) for so(p, q)"),
                    RealForm::Signature(..) => sig(2 * r).map(|_| ()),
                }
            }
        }
    }

    pub fn lie_dim(&self) -> usize {
        let r = self.r;
        match self.series {
            Series::AInnerSl | Series::AOuterSl | Series::AInnerSu | Series::AOuterSu => (r + 1) * (r + 1) - 1,
            Series::B | Series::C => r * (2 * r + 1),
            Series::D => r * (2 * r - 1),
        }
    }
}

const MAX_TWO_POWER: u32 = 4;

/// `m` with `2^m | n`, `m >= min`, within the size budget.
fn ms_dividing(n: usize, min: u32) -> Vec<u32> {
    (min..=MAX_TWO_POWER)
        .filter(|&m| n.is_multiple_of(1 << m))
        .collect()
}

pub fn enumerate_lie(spec: &LieFormSpec) -> Result<Vec<LieGrading>> {
    spec.validate()?;
    let r = spec.r;
    let n_a = r + 1;
    if matches!(
        spec.series,
        Series::AInnerSl | Series::AOuterSl | Series::AInnerSu | Series::AOuterSu
    ) && n_a > 32
        || matches!(spec.series, Series::B | Series::C | Series::D) && 2 * r + 1 > 33
    {
        return Err(Error::Capacity(format!(
            "{} exceeds the size budget",
            spec.name()
        )));
    }
    let mut c = Classifier::new();
    let mut entries: Vec<ClassEntry> = Vec::new();
    let name = spec.name();
    match (spec.series, spec.form) {
        (Series::AInnerSl, RealForm::Division(delta)) => {
            let (min, sg) = if delta == Delta::R {
                (0, "+1")
            } else {
                (1, "-1")
            };
            for m in ms_dividing(n_a, min) {
                let k = n_a >> m;
                if k >= 3 {
                    let params = AlgParams::Mex(MexParams {
                        gda: format!("D({};{sg})", 2 * m),
                        k,
                    });
                    let invariant = c.class_invariant(&params)?;
                    entries.push(ClassEntry { params, invariant });
                }
            }
        }
        (Series::AOuterSl, RealForm::Division(delta)) => {
            let (min, sg) = if delta == Delta::R {
                (0, "+1")
            } else {
                (1, "-1")
            };
            for m in ms_dividing(n_a, min) {
                entries.extend(enumerate_m(
                    &mut c,
                    &format!("D({};{sg})", 2 * m + 1),
                    1,
                    n_a >> m,
                    SigRule::Any,
                )?);
            }
        }
        (Series::AInnerSu, RealForm::Signature(p, q)) => {
            for ls in pauli_lists(n_a as u64)? {
                let l: u64 = ls.iter().product();
                let words: Vec<String> = ls.iter().map(u64::to_string).collect();
                let label = format!("D({};C)", words.join(","));
                let f = signature_factor(&GDAlgebra::from_label(&label)?)? as usize;
                if (p - q) % f == 0 {
                    let rule = SigRule::Exactly(((p - q) / f) as u32);
                    entries.extend(enumerate_m(&mut c, &label, 1, n_a / l as usize, rule)?);
                }
            }
        }
        (Series::AOuterSu, RealForm::Signature(p, q)) => {
            for m in ms_dividing(n_a, 0) {
                if (p - q) % (1 << m) == 0 {
                    let rule = SigRule::Exactly(((p - q) >> m) as u32);
                    entries.extend(enumerate_m(
                        &mut c,
                        &format!("D({};R)", 2 * m + 1),
                        1,
                        n_a >> m,
                        rule,
                    )?);
                }
            }
        }
        (Series::B, RealForm::Signature(p, q)) => {
            entries.extend(enumerate_m(
                &mut c,
                "D(0;+1)",
                1,
                2 * r + 1,
                SigRule::Exactly((p - q) as u32),
            )?);
        }
        (Series::C, RealForm::Division(_)) => {
            for m in ms_dividing(2 * r, 0) {
                entries.extend(enumerate_m(
                    &mut c,
                    &format!("D({};+1)", 2 * m),
                    -1,
                    (2 * r) >> m,
                    SigRule::Any,
                )?);
            }
        }
        (Series::C, RealForm::Signature(p, q)) => {
            for m in ms_dividing(2 * r, 1) {
                let l = 1 << (m - 1);
                if (p - q) % l == 0 {
                    let rule = SigRule::Exactly(((p - q) / l) as u32);
                    entries.extend(enumerate_m(
                        &mut c,
                        &format!("D({};-1)", 2 * m),
                        1,
                        (2 * r) >> m,
                        rule,
                    )?);
                }
            }
        }
        (Series::D, RealForm::Division(_)) => {
            for m in ms_dividing(2 * r, 1) {
                entries.extend(enumerate_m(
                    &mut c,
                    &format!("D({};-1)", 2 * m),
                    -1,
                    (2 * r) >> m,
                    SigRule::Any,
                )?);
            }
        }
        (Series::D, RealForm::Signature(p, q)) => {
            for m in ms_dividing(2 * r, 0) {
                if (p - q) % (1 << m) == 0 {
                    let rule = SigRule::Exactly(((p - q) >> m) as u32);
                    entries.extend(enumerate_m(
                        &mut c,
                        &format!("D({};+1)", 2 * m),
                        1,
                        (2 * r) >> m,
                        rule,
                    )?);
                }
            }
        }
        _ => return invalid("inconsistent spec"),
    }
    let mut out = Vec::with_capacity(entries.len());
    for e in entries {
        let alg = build(&e.params)?;
        let census: Vec<(Elem, usize)> = alg.lie_census().into_iter().collect();
        out.push(LieGrading {
            label: grading_label(&name, spec, &alg),
            params: e.params,
            universal: e.invariant.universal,
            census,
        });
    }
    Ok(out)
}

fn grading_label(name: &str, spec: &LieFormSpec, alg: &GradedMatAlg) -> String {
    let words = |d: &[(usize, i8)]| -> String {
        let w: Vec<String> = d.iter().map(|&(t, _)| alg.gda.format_elem(t)).collect();
        format!("({})", w.join(","))
    };
    match (&alg.kind, &alg.gda.label) {
        (Kind::Mex, l) => format!("Γ^(I)_{{{name}}}({})", l.m()),
        (Kind::M { s, d, .. }, GdaLabel::Pauli { ls }) => {
            let l: Vec<String> = ls.iter().map(u64::to_string).collect();
            format!("Γ^(I)_{{{name}}}({};{s},{})", l.join(","), words(d))
        }
        (Kind::M { s, d, .. }, l) => {
            let tw = match l {
                GdaLabel::ComplexConj { .. } | GdaLabel::Exchange { .. } => {
                    let mask = (1usize << (alg.gda.t.torsion.len() - 1)) - 1;
                    let dl: Vec<(usize, i8)> = d.iter().map(|&(t, e)| (t & mask, e)).collect();
                    words(&dl)
                }
                _ => words(d),
            };
            match spec.series {
                Series::AOuterSl | Series::AOuterSu => {
                    format!("Γ^(II)_{{{name}}}({};{s},{tw})", l.m())
                }
                Series::B => format!("Γ_{{{name}}}({s})"),
                _ => format!("Γ_{{{name}}}({};{s},{tw})", l.m()),
            }
        }
    }
}

/// Expected Lie census from the closed forms: dimensions at the degrees in
/// `T`, and `dim -> count` for the remaining components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusForm {
    pub at_t: BTreeMap<usize, usize>,
    pub rest: BTreeMap<usize, usize>,
}

/// `Q` on `T` (case one) or on `T/<f>` (the odd families), `Q(v) = 1` iff `phi_0(X_v) = -X_v`.
fn eta_form(gda: &GDAlgebra, dim: usize) -> Result<QuadSpace2> {
    QuadSpace2::from_values(
        dim,
        (0..1usize << dim)
            .map(|v| u8::from(gda.eta(v) != 0))
            .collect(),
    )
}

pub fn closed_form_lie_census(series: Series, alg: &GradedMatAlg) -> Result<CensusForm> {
    let nt = alg.n_t();
    let k = alg.k;
    let mut at_t = BTreeMap::new();
    let mut rest = BTreeMap::new();
    let put = |m: &mut BTreeMap<usize, usize>, dim: usize, c: usize| {
        if dim > 0 && c > 0 {
            *m.entry(dim).or_insert(0) += c;
        }
    };
    let (q, s, d) = match &alg.kind {
        Kind::Mex => {
            if series != Series::AInnerSl {
                return invalid("exchange algebras only give inner sl gradings");
            }
            at_t.insert(0, k - 1);
            for t in 1..nt {
                at_t.insert(t, k);
            }
            put(&mut rest, 1, nt * k * (k - 1));
            return Ok(clean(at_t, rest));
        }
        Kind::M { q, s, d, .. } => (*q, *s, d.clone()),
    };
    match series {
        Series::AInnerSu => {
            let l2 = nt;
            at_t.insert(0, k - 1);
            for t in 1..nt {
                at_t.insert(t, k);
            }
            put(&mut rest, 1, 2 * s * l2);
            put(&mut rest, 2, (k * (k - 1) / 2 - s) * l2);
        }
        Series::AOuterSl | Series::AOuterSu => {
            let dim = alg.gda.t.torsion.len() - 1;
            let qf = eta_form(&alg.gda, dim)?;
            let f = alg.gda.f_index().expect("odd family");
            let mask = f - 1;
            for t in 0..nt {
                let (v, z) = ((t & mask) as u32, u32::from(t & f != 0));
                let dim_t = if t == f {
                    q + s - 1
                } else {
                    s + d
                        .iter()
                        .filter(|&&(ti, _)| {
                            let ti = (ti & mask) as u32;
                            qf.q(ti ^ v) == (qf.q(ti) + z + 1) % 2
                        })
                        .count()
                };
                at_t.insert(t, dim_t);
            }
            put(&mut rest, 1, (nt / 2) * k * (k - 1));
        }
        Series::B | Series::C | Series::D => {
            let dim = alg.gda.t.torsion.len();
            let qf = alg
                .gda
                .quadratic_form()
                .ok_or_else(|| Error::Invalid("no quadratic form".into()))?;
            let target = if series == Series::C {
                u32::from(qf.arf())
            } else {
                (u32::from(qf.arf()) + 1) % 2
            };
            for t in 0..nt {
                let c = d
                    .iter()
                    .filter(|&&(ti, _)| qf.q((ti ^ t) as u32) == target)
                    .count();
                at_t.insert(t, s + c);
            }
            let m = dim / 2;
            let base = (1usize << m) * ((1usize << m) / 2 * k * (k - 1));
            let base = if m == 0 { k * (k - 1) / 2 } else { base };
            let ones = if series == Series::C {
                base + (1 << m) * s
            } else {
                base - (1 << m) * s
            };
            put(&mut rest, 1, ones);
        }
        Series::AInnerSl => return invalid("inner sl gradings come from exchange algebras"),
    }
    Ok(clean(at_t, rest))
}

fn clean(mut at_t: BTreeMap<usize, usize>, rest: BTreeMap<usize, usize>) -> CensusForm {
    at_t.retain(|_, v| *v > 0);
    CensusForm { at_t, rest }
}

/// Split a computed Lie census into the same shape as [`closed_form_lie_census`].
pub fn census_form(alg: &GradedMatAlg) -> CensusForm {
    let census = alg.lie_census();
    let mut at_t = BTreeMap::new();
    let mut t_degrees = BTreeMap::new();
    for t in 0..alg.n_t() {
        t_degrees.insert(alg.universal.embed(&alg.gda.t.element(t)), t);
    }
    let mut rest = BTreeMap::new();
    for (g, dim) in census {
        match t_degrees.get(&g) {
            Some(&t) => {
                at_t.insert(t, dim);
            }
            None => *rest.entry(dim).or_insert(0) += 1,
        }
    }
    clean(at_t, rest)
}

/// Universal group from the closed formulas for the outer series A (`odd = true`)
/// and series C, D (`odd = false`).
pub fn universal_formula_lie(alg: &GradedMatAlg, odd: bool) -> Result<IsoType> {
    let Kind::M { q, s, d, .. } = &alg.kind else {
        return invalid("needs M(D, q, s, d, delta)");
    };
    let dim = alg.gda.t.torsion.len();
    if alg.gda.t.torsion.iter().any(|&o| o != 2) || odd != alg.gda.f_index().is_some() {
        return invalid("formula does not apply to this family");
    }
    let diffs: Vec<u32> = d
        .iter()
        .skip(1)
        .map(|&(t, _)| (t ^ d[0].0) as u32)
        .collect();
    let t0 = crate::gf2::rank(&diffs);
    let twos = dim + q.saturating_sub(1) - 2 * t0;
    let mut divs = vec![(2, 1); twos];
    divs.extend(std::iter::repeat_n((2, 2), t0));
    Ok(IsoType::new(divs, *s))
}

// ---------------------------------------------------------------- tables

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Shade {
    None,
    Gray,
    Dark,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub group: String,
    pub shade: Shade,
    pub counts: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<TableRow>,
    /// Shade meaning, e.g. "gray = inner".
    pub legend: String,
}

impl Table {
    pub fn to_text(&self) -> String {
        let gw = self
            .rows
            .iter()
            .map(|r| r.group.chars().count())
            .max()
            .unwrap_or(0)
            .max(5);
        let shade_w = 5;
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.title);
        let _ = writeln!(out, "{}", self.legend);
        let mut header = format!("{:<gw$} | {:<shade_w$}", "group", "shade");
        for c in &self.columns {
            let _ = write!(header, " | {c}");
        }
        let _ = writeln!(out, "{header}");
        let _ = writeln!(out, "{}", "-".repeat(header.chars().count()));
        for r in &self.rows {
            let shade = match r.shade {
                Shade::None => "",
                Shade::Gray => "gray",
                Shade::Dark => "dark",
            };
            let mut line = format!("{:<gw$} | {:<shade_w$}", r.group, shade);
            for (c, n) in self.columns.iter().zip(&r.counts) {
                let cell = if *n == 0 {
                    "-".to_string()
                } else {
                    n.to_string()
                };
                let w = c.chars().count();
                let _ = write!(line, " | {cell:^w$}");
            }
            let _ = writeln!(out, "{}", line.trim_end());
        }
        out
    }
}

/// A row of the `M_8` table together with the classes in each column.
#[derive(Clone, Debug)]
pub struct M8Row {
    pub row: TableRow,
    pub m: u32,
    pub q: usize,
    pub classes: Vec<Vec<ClassEntry>>,
}

pub const M8_COLUMNS: [&str; 6] = [
    "M4+4(R)", "M5+3(R)", "M6+2(R)", "M7+1(R)", "M8+0(R)", "M4(H)",
];

/// The `M_8` table with the classes behind each cell.
pub fn table_m8_rows() -> Result<Vec<M8Row>> {
    let classes = enumerate_fine(None, 8, InvolutionKind::Orthogonal, None)?;
    let mut keys = ComplexKey::new();
    let mut rows: BTreeMap<(u32, usize, usize, Vec<u32>), (String, Parity, Vec<Vec<ClassEntry>>)> =
        BTreeMap::new();
    for e in classes {
        let AlgParams::M(p) = &e.params else { continue };
        let col = match e.invariant.family {
            Family::RealMatrix => {
                let sig = signature_phi(p)?.ok_or_else(|| {
                    Error::Invalid("orthogonal real form without signature".into())
                })?;
                (sig / 2) as usize
            }
            Family::QuaternionMatrix => 5,
            _ => return invalid("unexpected family in M8"),
        };
        let parity = clifford_inner_outer(p)?;
        let key = keys.key(p)?;
        let entry = rows.entry(key).or_insert_with(|| {
            (
                e.invariant.universal.clone(),
                parity,
                vec![Vec::new(); M8_COLUMNS.len()],
            )
        });
        if entry.0 != e.invariant.universal || entry.1 != parity {
            return Err(Error::Invalid(format!(
                "complexification class mixes {} and {}",
                entry.0, e.invariant.universal
            )));
        }
        entry.2[col].push(e);
    }
    let mut out: Vec<M8Row> = rows
        .into_iter()
        .map(|((m, q, _, _), (group, parity, classes))| M8Row {
            row: TableRow {
                group,
                shade: if parity == Parity::Inner {
                    Shade::Gray
                } else {
                    Shade::None
                },
                counts: classes.iter().map(|c| c.len() as u32).collect(),
            },
            m,
            q,
            classes,
        })
        .collect();
    out.sort_by_key(|r| (r.m, r.q, z4_count(&r.row.group), r.row.shade != Shade::Gray));
    Ok(out)
}

fn z4_count(group: &str) -> usize {
    group
        .split(" x ")
        .find_map(|p| p.strip_prefix("Z4"))
        .map(|rest| rest.strip_prefix('^').map_or(1, |e| e.parse().unwrap_or(1)))
        .unwrap_or(0)
}

pub fn table_m8() -> Result<Table> {
    Ok(Table {
        title: "Fine gradings on the real forms of M8(C) with orthogonal involution".into(),
        columns: M8_COLUMNS.iter().map(|s| s.to_string()).collect(),
        rows: table_m8_rows()?.into_iter().map(|r| r.row).collect(),
        legend: "gray = inner".into(),
    })
}

/// A class of `M4+4(R)` named by its degree multiset, as a word list in `T`.
#[derive(Clone, Copy, Debug)]
pub struct NamedClass {
    pub gda: &'static str,
    pub sigma: &'static [&'static str],
    pub signs: &'static [i8],
}

/// Type I `so(4,4)` gradings with universal group `Z2^3 x Z4`: four classes
/// on `M4+4(R)` that become two under triality, as given pairs.
pub const D4_TRIALITY_PAIRS: [(NamedClass, NamedClass); 2] = [
    (
        NamedClass {
            gda: "D(2;+1)",
            sigma: &["e", "e", "a", "a"],
            signs: &[1, -1, 1, 1],
        },
        NamedClass {
            gda: "D(4;+1)",
            sigma: &["c", "d"],
            signs: &[1, 1],
        },
    ),
    (
        NamedClass {
            gda: "D(2;+1)",
            sigma: &["a", "a", "b", "b"],
            signs: &[1, 1, 1, 1],
        },
        NamedClass {
            gda: "D(4;+1)",
            sigma: &["a", "c"],
            signs: &[1, 1],
        },
    ),
];

/// Type III rows: gradings on `so_8` not coming from `M_8`.
pub const D4_TYPE_III: [(&str, [u32; 5]); 2] = [
    ("Z^2 x Z3", [0, 1, 0, 0, 0]),
    ("Z2^3 x Z3", [0, 1, 0, 1, 0]),
];

pub const D4_COLUMNS: [&str; 5] = ["so(4,4)", "so(5,3)", "so(6,2)", "so(7,1)", "so(8,0)"];

pub fn named_params(c: &NamedClass) -> Result<GradingParams> {
    let gda = GDAlgebra::from_label(c.gda)?;
    let d = c
        .sigma
        .iter()
        .zip(c.signs)
        .map(|(w, &sign)| {
            Ok(crate::gradedmat::DiagEntry {
                t: gda.t.parse_elem(w)?,
                sign,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let q = d.len();
    let k = (8usize >> gda.label.m()) - q;
    Ok(GradingParams {
        gda: c.gda.into(),
        q,
        s: k / 2,
        d,
        delta: 1,
    })
}

pub fn table_d4() -> Result<Table> {
    let rows = table_m8_rows()?;
    let mut c = Classifier::new();
    let mut type1: Vec<TableRow> = Vec::new();
    let mut type2: Vec<TableRow> = Vec::new();
    // rows holding one side of a triality pair merge into the row holding the other
    let mut merged_into: BTreeMap<usize, usize> = BTreeMap::new();
    let mut pair_ids = Vec::new();
    for (a, b) in &D4_TRIALITY_PAIRS {
        let ia = c.class_invariant(&AlgParams::M(named_params(a)?))?;
        let ib = c.class_invariant(&AlgParams::M(named_params(b)?))?;
        pair_ids.push((ia, ib));
    }
    let find = |inv: &crate::classify::ClassInvariant| {
        rows.iter()
            .position(|r| r.classes[0].iter().any(|e| &e.invariant == inv))
    };
    for (ia, ib) in &pair_ids {
        let (ra, rb) = (find(ia), find(ib));
        let (Some(ra), Some(rb)) = (ra, rb) else {
            return invalid("triality pair not found in the M4+4 column");
        };
        if ra != rb {
            merged_into.insert(rb.max(ra), rb.min(ra));
        }
    }
    let mut built: BTreeMap<usize, TableRow> = BTreeMap::new();
    for (i, r) in rows.iter().enumerate() {
        let c = &r.row.counts;
        let inner = r.row.shade == Shade::Gray;
        let counts = if inner {
            vec![c[0], c[1], c[2], c[3], c[4]]
        } else {
            vec![c[0], c[1], c[2] + c[5], c[3], c[4]]
        };
        let target = *merged_into.get(&i).unwrap_or(&i);
        match built.get_mut(&target) {
            Some(existing) => {
                if existing.group != r.row.group || !inner {
                    return invalid("merged rows disagree");
                }
                for (x, y) in existing.counts.iter_mut().zip(&counts) {
                    *x += y;
                }
            }
            None => {
                built.insert(
                    target,
                    TableRow {
                        group: r.row.group.clone(),
                        shade: if inner { Shade::Gray } else { Shade::None },
                        counts,
                    },
                );
            }
        }
    }
    // each triality pair identifies two so(4,4) classes
    let pairs_per_row =
        merged_into
            .values()
            .fold(BTreeMap::new(), |mut acc: BTreeMap<usize, u32>, &t| {
                *acc.entry(t).or_insert(0) += 1;
                acc
            });
    for (t, _) in pairs_per_row {
        if let Some(row) = built.get_mut(&t) {
            row.counts[0] -= D4_TRIALITY_PAIRS.len() as u32;
        }
    }
    for (_, row) in built {
        if row.shade == Shade::Gray {
            type1.push(row);
        } else {
            type2.push(row);
        }
    }
    let mut all = type1;
    all.extend(type2);
    for (g, counts) in D4_TYPE_III {
        all.push(TableRow {
            group: g.into(),
            shade: Shade::Dark,
            counts: counts.to_vec(),
        });
    }
    Ok(Table {
        title: "Fine gradings on the real forms of so8(C)".into(),
        columns: D4_COLUMNS.iter().map(|s| s.to_string()).collect(),
        rows: all,
        legend: "gray = Type I, unshaded = Type II, dark = Type III (fixed catalog)".into(),
    })
}

/// Number of 2-dimensional Lie components at degrees `t in T` with `X_t^2 = -1`.
/// Gradings identified under triality agree on it.
pub fn compact_cartan_count(p: &GradingParams) -> Result<usize> {
    let alg = build(&AlgParams::M(p.clone()))?;
    let census = census_form(&alg);
    Ok(census
        .at_t
        .iter()
        .filter(|&(&t, &dim)| dim == 2 && alg.gda.mu(t) == Some(-1))
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(series: Series, r: usize, form: RealForm) -> LieFormSpec {
        LieFormSpec { series, r, form }
    }

    #[test]
    fn so32_has_three_classes() {
        let g = enumerate_lie(&spec(Series::B, 2, RealForm::Signature(3, 2))).unwrap();
        assert_eq!(g.len(), 3);
        for x in &g {
            assert_eq!(x.census.iter().map(|c| c.1).sum::<usize>(), 10);
        }
    }

    #[test]
    fn u_star_5() {
        let g = enumerate_lie(&spec(Series::D, 5, RealForm::Division(Delta::H))).unwrap();
        let m1s1: Vec<_> = g
            .iter()
            .filter(|x| matches!(&x.params, AlgParams::M(p) if p.gda == "D(2;-1)" && p.s == 1))
            .collect();
        assert_eq!(m1s1.len(), 3);
    }

    #[test]
    fn su_with_z9() {
        for (p, q, expect) in [(5, 4, 1), (6, 3, 0)] {
            let g = enumerate_lie(&spec(Series::AInnerSu, 8, RealForm::Signature(p, q))).unwrap();
            let n = g
                .iter()
                .filter(|x| matches!(&x.params, AlgParams::M(p) if p.gda == "D(9;C)"))
                .count();
            assert_eq!(n, expect);
        }
    }

    #[test]
    fn series_c_census_example() {
        let p = crate::gradedmat::tests::params("D(2;+1)", 2, 1, &[("ab", 1), ("ab", 1)], -1);
        let alg = build(&AlgParams::M(p)).unwrap();
        assert_eq!(alg.lie_dim(), 36);
        assert_eq!(
            census_form(&alg),
            closed_form_lie_census(Series::C, &alg).unwrap()
        );
    }

    #[test]
    fn triality_pairs_agree_on_compact_cartan() {
        for (a, b) in &D4_TRIALITY_PAIRS {
            let (pa, pb) = (named_params(a).unwrap(), named_params(b).unwrap());
            assert_eq!(
                compact_cartan_count(&pa).unwrap(),
                compact_cartan_count(&pb).unwrap()
            );
        }
        let x = compact_cartan_count(&named_params(&D4_TRIALITY_PAIRS[0].0).unwrap()).unwrap();
        let y = compact_cartan_count(&named_params(&D4_TRIALITY_PAIRS[1].0).unwrap()).unwrap();
        assert_ne!(x, y);
    }
}
