//! Reproducible checks of the classification against independent routes
//! and hand-entered reference data, shared by `grady selftest` and the acceptance tests.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::abelian::{universal_group_formula, universal_group_m, Bichar, FinAbGroup};
use crate::classify::{
    class_invariant, enumerate_fine, signature_phi, ClassInvariant, Family, InvolutionKind,
};
use crate::gdivalg::{perm_to_mat2, Case, GDAlgebra};
use crate::gf2::Mat2;
use crate::gf2forms::{
    aut_t_beta_image, build_flag, flag_stabilizer_elements, isometry_group, lift_symplectic,
    orthogonal_elements, orthogonal_order_formula, symplectic_elements, symplectic_group,
    symplectic_order_formula, transvection, Alt2, QuadSpace2,
};
use crate::gradedmat::{
    build, closed_form_census, refine_equal_degrees, split_search, verify_grading,
    verify_refinement, AlgParams, DiagEntry, GradingParams, Kind, MexParams,
};
use crate::lietransfer::{
    census_form, closed_form_lie_census, enumerate_lie, table_d4, table_m8,
    universal_formula_lie, Delta, LieFormSpec, RealForm, Series, Shade, Table, TableRow,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<String, String>;

pub struct Criterion {
    pub name: &'static str,
    pub run: fn() -> Check,
}

pub const CRITERIA: [Criterion; 12] = [
    Criterion { name: "table m8", run: check_table_m8 },
    Criterion { name: "table d4", run: check_table_d4 },
    Criterion { name: "M8 classification list", run: check_ex_m8 },
    Criterion { name: "M9 second kind, signatures 1 and 3", run: check_ex_m9 },
    Criterion { name: "universal group formula vs SNF", run: || check_universal_oracle(600, 1) },
    Criterion { name: "flag stabilizer equals Aut(T, beta) image", run: check_flag },
    Criterion { name: "classical group orders", run: check_group_orders },
    Criterion { name: "grading axioms, 100 per family", run: || check_grading_suite(100, 2) },
    Criterion { name: "fineness certificates", run: check_fineness },
    Criterion { name: "symplectic lifting", run: || check_lifting(200, 3) },
    Criterion { name: "Weyl group realizability", run: check_weyl },
    Criterion { name: "Lie census conservation", run: check_lie_census },
];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ------------------------------------------------------------ tables

fn row(group: &str, shade: Shade, counts: &[u32]) -> TableRow {
    TableRow { group: group.into(), shade, counts: counts.to_vec() }
}

/// Expected `M_8` table, entered by hand.
pub fn expected_table_m8() -> Vec<TableRow> {
    use Shade::{Gray as G, None as N};
    vec![
        row("Z^4", G, &[1, 0, 0, 0, 0, 0]),
        row("Z2 x Z^3", N, &[1, 1, 0, 0, 0, 0]),
        row("Z2^3 x Z^2", N, &[1, 1, 1, 0, 0, 0]),
        row("Z2^5 x Z", N, &[1, 1, 1, 1, 0, 0]),
        row("Z2^7", N, &[1, 1, 1, 1, 1, 0]),
        row("Z2^2 x Z^2", G, &[1, 0, 0, 0, 0, 1]),
        row("Z2^3 x Z", G, &[2, 0, 1, 0, 0, 1]),
        row("Z2 x Z4 x Z", N, &[1, 1, 0, 0, 0, 1]),
        row("Z2^5", G, &[2, 0, 1, 0, 1, 1]),
        row("Z2^3 x Z4", G, &[2, 0, 1, 0, 0, 1]),
        row("Z2^3 x Z4", N, &[1, 2, 0, 1, 0, 1]),
        row("Z2 x Z4^2", N, &[1, 1, 1, 0, 0, 1]),
        row("Z2^4 x Z", G, &[1, 0, 0, 0, 0, 1]),
        row("Z2^3 x Z4", G, &[2, 0, 1, 0, 0, 2]),
        row("Z2^6", G, &[1, 0, 0, 0, 1, 1]),
    ]
}

/// Expected `so_8` table, entered by hand.
pub fn expected_table_d4() -> Vec<TableRow> {
    use Shade::{Dark as D, Gray as G, None as N};
    vec![
        row("Z^4", G, &[1, 0, 0, 0, 0]),
        row("Z2^2 x Z^2", G, &[1, 0, 0, 0, 0]),
        row("Z2^3 x Z", G, &[2, 0, 1, 0, 0]),
        row("Z2^5", G, &[2, 0, 1, 0, 1]),
        row("Z2^3 x Z4", G, &[2, 0, 2, 0, 0]),
        row("Z2^4 x Z", G, &[1, 0, 0, 0, 0]),
        row("Z2^6", G, &[1, 0, 0, 0, 1]),
        row("Z2 x Z^3", N, &[1, 1, 0, 0, 0]),
        row("Z2^3 x Z^2", N, &[1, 1, 1, 0, 0]),
        row("Z2^5 x Z", N, &[1, 1, 1, 1, 0]),
        row("Z2^7", N, &[1, 1, 1, 1, 1]),
        row("Z2 x Z4 x Z", N, &[1, 1, 1, 0, 0]),
        row("Z2^3 x Z4", N, &[1, 2, 1, 1, 0]),
        row("Z2 x Z4^2", N, &[1, 1, 2, 0, 0]),
        row("Z^2 x Z3", D, &[0, 1, 0, 0, 0]),
        row("Z2^3 x Z3", D, &[0, 1, 0, 1, 0]),
    ]
}

fn compare_rows(got: &Table, want: &[TableRow]) -> Check {
    if got.rows.len() != want.len() {
        return Err(format!("{} rows, expected {}", got.rows.len(), want.len()));
    }
    for (i, (g, w)) in got.rows.iter().zip(want).enumerate() {
        if g != w {
            return Err(format!("row {}: got {:?}, expected {:?}", i + 1, g, w));
        }
    }
    Ok(format!("{} rows x {} columns identical", want.len(), got.columns.len()))
}

pub fn check_table_m8() -> Check {
    compare_rows(&table_m8().map_err(|e| e.to_string())?, &expected_table_m8())
}

pub fn check_table_d4() -> Check {
    compare_rows(&table_d4().map_err(|e| e.to_string())?, &expected_table_d4())
}

// ------------------------------------------------------------ ex:M8 list

/// A class from the reference list of gradings on `M_8`: algebra label,
/// degree words, signature (`None` for the quaternion family) and universal group.
struct Listed {
    gda: &'static str,
    words: Vec<String>,
    signature: Option<u32>,
    universal: &'static str,
}

fn words(ws: &[&str]) -> Vec<String> {
    ws.iter().map(|w| w.to_string()).collect()
}

/// Params with the given words and enough minus signs at `e` to reach `signature`.
fn listed_params(l: &Listed) -> Result<GradingParams, String> {
    let gda = GDAlgebra::from_label(l.gda).map_err(|e| e.to_string())?;
    let q = l.words.len();
    let k = (8usize >> gda.label.m()) - q;
    let quaternion = gda.label.to_string().ends_with("-1)");
    let n0 = l.words.iter().filter(|w| w.as_str() == "e").count();
    let scale = 1u32 << gda.label.m();
    let minus = match l.signature {
        Some(sig) => {
            let diff = sig / scale;
            if (n0 as u32) < diff || !(n0 as u32 - diff).is_multiple_of(2) {
                return Err(format!("signature {sig} impossible for {:?}", l.words));
            }
            (n0 as u32 - diff) / 2
        }
        None => 0,
    };
    let mut seen_e = 0;
    let mut d = Vec::new();
    for w in &l.words {
        let t = gda.t.parse_elem(w).map_err(|e| e.to_string())?;
        let sign = if w == "e" {
            seen_e += 1;
            if seen_e <= minus {
                -1
            } else {
                1
            }
        } else {
            1
        };
        d.push(DiagEntry { t, sign });
    }
    Ok(GradingParams {
        gda: l.gda.into(),
        q,
        s: k / 2,
        d,
        delta: if quaternion { -1 } else { 1 },
    })
}

/// First pair of distinct non-identity degrees in `T_+` (or `T_-`) with the given commutation.
fn witness_pair(label: &str, plus: bool, beta: u32) -> Vec<String> {
    let gda = GDAlgebra::from_label(label).unwrap();
    let want = if plus { Some(1) } else { Some(-1) };
    let ts: Vec<usize> = (1..gda.order()).filter(|&t| gda.mu(t) == want).collect();
    for &a in &ts {
        for &b in &ts {
            if a < b && gda.beta(a, b) == beta {
                return vec![gda.format_elem(a), gda.format_elem(b)];
            }
        }
    }
    panic!("no witness pair in {label}");
}

fn witness_one(label: &str, plus: bool) -> String {
    let gda = GDAlgebra::from_label(label).unwrap();
    let want = if plus { Some(1) } else { Some(-1) };
    let t = (1..gda.order()).find(|&t| gda.mu(t) == want).unwrap();
    gda.format_elem(t)
}

fn expected_m8_list() -> Vec<Listed> {
    let mut out = Vec::new();
    let mut push = |gda, ws: Vec<String>, sigs: &[u32], universal| {
        if sigs.is_empty() {
            out.push(Listed { gda, words: ws.clone(), signature: None, universal });
        }
        for &s in sigs {
            out.push(Listed { gda, words: ws.clone(), signature: Some(s), universal });
        }
    };
    // T trivial
    push("D(0;+1)", vec![], &[0], "Z^4");
    push("D(0;+1)", words(&["e"; 2]), &[0, 2], "Z2 x Z^3");
    push("D(0;+1)", words(&["e"; 4]), &[0, 2, 4], "Z2^3 x Z^2");
    push("D(0;+1)", words(&["e"; 6]), &[0, 2, 4, 6], "Z2^5 x Z");
    push("D(0;+1)", words(&["e"; 8]), &[0, 2, 4, 6, 8], "Z2^7");
    // T = Z2^2, real
    let r = "D(2;+1)";
    push(r, vec![], &[0], "Z2^2 x Z^2");
    push(r, words(&["a", "a"]), &[0], "Z2^3 x Z");
    push(r, words(&["a", "b"]), &[0], "Z2 x Z4 x Z");
    push(r, words(&["e", "a"]), &[2], "Z2 x Z4 x Z");
    push(r, words(&["e", "e"]), &[0, 4], "Z2^3 x Z");
    push(r, words(&["a", "a", "a", "a"]), &[0], "Z2^5");
    push(r, words(&["a", "a", "a", "b"]), &[0], "Z2^3 x Z4");
    push(r, words(&["a", "a", "b", "b"]), &[0], "Z2^3 x Z4");
    push(r, words(&["e", "a", "a", "a"]), &[2], "Z2^3 x Z4");
    push(r, words(&["e", "a", "a", "b"]), &[2], "Z2 x Z4^2");
    push(r, words(&["e", "e", "a", "a"]), &[0, 4], "Z2^3 x Z4");
    push(r, words(&["e", "e", "a", "b"]), &[0, 4], "Z2 x Z4^2");
    push(r, words(&["e", "e", "e", "a"]), &[2, 6], "Z2^3 x Z4");
    push(r, words(&["e", "e", "e", "e"]), &[0, 4, 8], "Z2^5");
    // T = Z2^2, quaternion: T_- = {a, b, c}, c = ab
    let h = "D(2;-1)";
    push(h, vec![], &[], "Z2^2 x Z^2");
    push(h, words(&["a", "a"]), &[], "Z2^3 x Z");
    push(h, words(&["a", "b"]), &[], "Z2 x Z4 x Z");
    push(h, words(&["a", "a", "a", "a"]), &[], "Z2^5");
    push(h, words(&["a", "a", "a", "b"]), &[], "Z2^3 x Z4");
    push(h, words(&["a", "a", "b", "b"]), &[], "Z2^3 x Z4");
    push(h, words(&["a", "a", "b", "ab"]), &[], "Z2 x Z4^2");
    // T = Z2^4
    let r4 = "D(4;+1)";
    push(r4, vec![], &[0], "Z2^4 x Z");
    push(r4, witness_pair(r4, true, 0), &[0], "Z2^3 x Z4");
    push(r4, witness_pair(r4, true, 1), &[0], "Z2^3 x Z4");
    push(r4, vec!["e".into(), witness_one(r4, true)], &[4], "Z2^3 x Z4");
    let h4 = "D(4;-1)";
    push(h4, vec![], &[], "Z2^4 x Z");
    push(h4, witness_pair(h4, false, 0), &[], "Z2^3 x Z4");
    push(h4, witness_pair(h4, false, 1), &[], "Z2^3 x Z4");
    // T = Z2^6
    let r6 = "D(6;+1)";
    push(r6, vec![witness_one(r6, true)], &[0], "Z2^6");
    push(r6, words(&["e"]), &[8], "Z2^6");
    push("D(6;-1)", vec![witness_one("D(6;-1)", false)], &[], "Z2^6");
    out
}

fn invariant_set(entries: &[ClassInvariant]) -> BTreeSet<String> {
    entries.iter().map(|i| serde_json::to_string(i).unwrap()).collect()
}

pub fn check_ex_m8() -> Check {
    let listed = expected_m8_list();
    let mut expected = Vec::new();
    for l in &listed {
        let p = listed_params(l)?;
        let sig = signature_phi(&p).map_err(|e| e.to_string())?;
        if sig != l.signature {
            return Err(format!("{} {:?}: signature {:?}, listed {:?}", l.gda, l.words, sig, l.signature));
        }
        let inv = class_invariant(&AlgParams::M(p)).map_err(|e| e.to_string())?;
        if inv.universal != l.universal {
            return Err(format!("{} {:?}: universal {}, listed {}", l.gda, l.words, inv.universal, l.universal));
        }
        expected.push(inv);
    }
    let want = invariant_set(&expected);
    if want.len() != expected.len() {
        return Err("listed classes are not pairwise inequivalent".into());
    }
    let got: Vec<ClassInvariant> = enumerate_fine(None, 8, InvolutionKind::Orthogonal, None)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|e| e.invariant)
        .collect();
    let got_set = invariant_set(&got);
    if got_set.len() != got.len() {
        return Err("enumeration repeats a class".into());
    }
    if got_set != want {
        let extra: Vec<_> = got_set.difference(&want).collect();
        let missing: Vec<_> = want.difference(&got_set).collect();
        return Err(format!("extra {extra:?}; missing {missing:?}"));
    }
    Ok(format!("{} classes, all listed tuples reproduced", got.len()))
}

// ------------------------------------------------------------ ex:complexification_not_fine

fn m9_expected(signature: u32) -> Vec<(GradingParams, &'static str)> {
    let mut out = Vec::new();
    let mk = |gda: &str, q: usize, s: usize, word: &str, plus: usize| {
        let g = GDAlgebra::from_label(gda).unwrap();
        let t = g.t.parse_elem(word).unwrap();
        let d = (0..q).map(|i| DiagEntry { t: t.clone(), sign: if i < plus { 1 } else { -1 } }).collect();
        GradingParams { gda: gda.into(), q, s, d, delta: 1 }
    };
    let z2: [&str; 5] = ["Z2 x Z^4", "Z2^3 x Z^3", "Z2^5 x Z^2", "Z2^7 x Z", "Z2^9"];
    for (i, q) in [1usize, 3, 5, 7, 9].into_iter().enumerate() {
        let plus = (q + signature as usize) / 2;
        if plus <= q {
            out.push((mk("D(1;R)", q, (9 - q) / 2, "e", plus), z2[i]));
        }
    }
    let z3: [(usize, &str); 2] = [(1, "Z3^2 x Z"), (3, "Z2^2 x Z3^2")];
    for (q, u) in z3 {
        let plus = if signature == 1 { q.div_ceil(2) } else { 3 };
        if plus <= q {
            out.push((mk("D(3;C)", q, (3 - q) / 2, "e", plus), u));
        }
    }
    if signature == 1 {
        out.push((mk("D(3,3;C)", 1, 0, "e", 1), "Z3^4"));
        out.push((mk("D(9;C)", 1, 0, "e", 1), "Z9^2"));
    }
    out
}

pub fn check_ex_m9() -> Check {
    let mut total = 0;
    for sig in [1u32, 3] {
        let mut expected = Vec::new();
        for (p, u) in m9_expected(sig) {
            let inv = class_invariant(&AlgParams::M(p.clone())).map_err(|e| e.to_string())?;
            if inv.universal != u {
                return Err(format!("{} q={}: universal {}, listed {u}", p.gda, p.q, inv.universal));
            }
            if signature_phi(&p).map_err(|e| e.to_string())? != Some(sig) {
                return Err(format!("{} q={}: signature differs from {sig}", p.gda, p.q));
            }
            expected.push(inv);
        }
        let got: Vec<ClassInvariant> = enumerate_fine(None, 9, InvolutionKind::SecondKind, Some(sig))
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|e| e.invariant)
            .collect();
        if invariant_set(&got) != invariant_set(&expected) || got.len() != expected.len() {
            return Err(format!("signature {sig}: {} classes, {} listed", got.len(), expected.len()));
        }
        total += got.len();
    }
    Ok(format!("{total} classes over signatures 1 and 3"))
}

// ------------------------------------------------------------ universal group oracle

/// Random finite abelian group of order at most `max_order`, as cyclic factors.
pub fn random_group(rng: &mut impl Rng, max_order: u64) -> FinAbGroup {
    loop {
        let r = rng.gen_range(1..=4);
        let torsion: Vec<u64> = (0..r).map(|_| rng.gen_range(2..=16)).collect();
        if torsion.iter().product::<u64>() <= max_order {
            return FinAbGroup::finite(torsion);
        }
    }
}

pub fn check_universal_oracle(instances: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    for i in 0..instances {
        let t = random_group(&mut rng, 64);
        let q = rng.gen_range(0..=6);
        let s = if q == 0 { rng.gen_range(1..=3) } else { rng.gen_range(0..=3) };
        let degs: Vec<_> = (0..q).map(|_| t.element(rng.gen_range(0..t.order() as usize))).collect();
        let snf = universal_group_m(&t, q, s, &degs).map_err(|e| e.to_string())?.iso_type();
        let formula = universal_group_formula(&t, q, s, &degs).map_err(|e| e.to_string())?;
        if snf != formula {
            return Err(format!(
                "instance {i}: T = {:?}, q = {q}, s = {s}, degs = {degs:?}: SNF {snf}, formula {formula}",
                t.torsion
            ));
        }
    }
    Ok(format!("{instances} instances agree"))
}

// ------------------------------------------------------------ flag

pub fn check_flag() -> Check {
    let mut out = Vec::new();
    for ls in [vec![4u64], vec![8], vec![2, 4], vec![2, 2], vec![3, 4]] {
        let beta = Bichar::standard(&ls);
        let image: HashSet<u64> =
            aut_t_beta_image(&beta).map_err(|e| e.to_string())?.iter().map(Mat2::pack).collect();
        let flag = build_flag(&beta).map_err(|e| e.to_string())?;
        let stab: HashSet<u64> = flag_stabilizer_elements(&flag).iter().map(Mat2::pack).collect();
        if image != stab {
            return Err(format!("T for {ls:?}: image {} elements, stabilizer {}", image.len(), stab.len()));
        }
        out.push(format!("{ls:?}:{}", image.len()));
    }
    Ok(format!("equal subgroups {}", out.join(" ")))
}

// ------------------------------------------------------------ group orders

pub fn check_group_orders() -> Check {
    let mut report = Vec::new();
    for (n, sp) in [(1u32, 6u64), (2, 720)] {
        let alt = Alt2::standard(2 * n as usize);
        let by_enum = symplectic_elements(&alt).len() as u64;
        let by_gens = symplectic_group(&alt).order() as u64;
        let by_formula = symplectic_order_formula(n);
        if [by_enum, by_gens, by_formula] != [sp; 3] {
            return Err(format!("Sp({},2): {by_enum} / {by_gens} / {by_formula}, expected {sp}", 2 * n));
        }
        report.push(format!("Sp({},2)={sp}", 2 * n));
    }
    for (m, arf, expect) in [(1usize, 0u8, 2u64), (1, 1, 6), (2, 0, 72), (2, 1, 120)] {
        let qs = QuadSpace2::standard(m, arf);
        let by_enum = orthogonal_elements(&qs).len() as u64;
        let by_gens = isometry_group(&qs).order() as u64;
        let by_formula = orthogonal_order_formula(m as u32, arf);
        if [by_enum, by_gens, by_formula] != [expect; 3] {
            return Err(format!("O(arf {arf}, {}, 2): {by_enum} / {by_gens} / {by_formula}, expected {expect}", 2 * m));
        }
        report.push(format!("O{}({},2)={expect}", if arf == 0 { "+" } else { "-" }, 2 * m));
    }
    Ok(report.join(" "))
}

// ------------------------------------------------------------ grading suite

pub fn labels(f: Family) -> &'static [&'static str] {
    match f {
        Family::RealMatrix => &["D(0;+1)", "D(2;+1)", "D(4;+1)"],
        Family::QuaternionMatrix => &["D(2;-1)", "D(4;-1)"],
        Family::ComplexPauli => &["D(3;C)", "D(4;C)"],
        Family::ComplexConj => &["D(1;R)", "D(3;R)"],
        Family::ExchangeReal => &["D(0;+1)", "D(2;+1)", "D(4;+1)"],
        Family::ExchangeQuaternion => &["D(2;-1)", "D(4;-1)"],
        Family::ExchangeOddReal => &["D(1;+1)", "D(3;+1)"],
        Family::ExchangeOddQuaternion => &["D(3;-1)"],
    }
}

/// Random valid params for `family` with `k <= kmax`.
pub fn random_params(rng: &mut impl Rng, family: Family, kmax: usize) -> AlgParams {
    let label = *labels(family).choose(rng).unwrap();
    let k = rng.gen_range(1..=kmax);
    if matches!(family, Family::ExchangeReal | Family::ExchangeQuaternion) {
        return AlgParams::Mex(MexParams { gda: label.into(), k });
    }
    let gda = GDAlgebra::from_label(label).unwrap();
    let case1 = gda.case() == Case::One;
    loop {
        let s = rng.gen_range(0..=k / 2);
        let q = k - 2 * s;
        let delta: i8 = if case1 && rng.gen_bool(0.5) { -1 } else { 1 };
        let delta_exp = if delta > 0 { 0 } else { gda.m / 2 };
        let ts: Vec<usize> = (0..gda.order()).filter(|&t| gda.eta(t) == delta_exp).collect();
        if q > 0 && ts.is_empty() {
            continue;
        }
        let signed = match gda.case() {
            Case::One => delta > 0,
            Case::TwoA | Case::TwoB => true,
            Case::Three => false,
        };
        let d = (0..q)
            .map(|_| DiagEntry {
                t: gda.t.element(*ts.choose(rng).unwrap()),
                sign: if signed && rng.gen_bool(0.5) { -1 } else { 1 },
            })
            .collect();
        return AlgParams::M(GradingParams { gda: label.into(), q, s, d, delta });
    }
}

pub fn check_grading_suite(per_family: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    let mut n = 0;
    for f in Family::ALL {
        for i in 0..per_family {
            let p = random_params(&mut rng, f, 6);
            let fail = |why: String| Err(format!("{} #{i} {p:?}: {why}", f.name()));
            let alg = match build(&p) {
                Ok(a) => a,
                Err(e) => return fail(e.to_string()),
            };
            if let Err(v) = verify_grading(&alg) {
                return fail(format!("{v:?}"));
            }
            if alg.census() != closed_form_census(&alg) {
                return fail(format!("census {:?} vs closed form {:?}", alg.census(), closed_form_census(&alg)));
            }
            let total: usize = alg.census().iter().map(|(d, c)| d * c).sum();
            if total != alg.real_dim() {
                return fail(format!("census total {total} vs dimension {}", alg.real_dim()));
            }
            n += 1;
        }
    }
    Ok(format!("{n} gradings verified"))
}

// ------------------------------------------------------------ fineness

/// All `(q, s) = (2, 0)` params over the real families with `|T| <= 4`.
fn q2s0_instances() -> Vec<GradingParams> {
    let mut out = Vec::new();
    for label in ["D(0;+1)", "D(2;+1)", "D(2;-1)"] {
        let gda = GDAlgebra::from_label(label).unwrap();
        for delta in [1i8, -1] {
            let delta_exp = if delta > 0 { 0 } else { gda.m / 2 };
            let ts: Vec<usize> = (0..gda.order()).filter(|&t| gda.eta(t) == delta_exp).collect();
            let signs: &[i8] = if delta > 0 && gda.case() == Case::One { &[1, -1] } else { &[1] };
            for &a in &ts {
                for &b in &ts {
                    if a > b {
                        continue;
                    }
                    for &sa in signs {
                        for &sb in signs {
                            out.push(GradingParams {
                                gda: label.into(),
                                q: 2,
                                s: 0,
                                d: vec![
                                    DiagEntry { t: gda.t.element(a), sign: sa },
                                    DiagEntry { t: gda.t.element(b), sign: sb },
                                ],
                                delta,
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn check_fineness() -> Check {
    let (mut refined, mut searched) = (0, 0);
    for p in q2s0_instances() {
        let alg = build(&AlgParams::M(p.clone())).map_err(|e| e.to_string())?;
        let Kind::M { ref d, .. } = alg.kind else { unreachable!() };
        if d[0].0 == d[1].0 {
            let cert = refine_equal_degrees(&alg).map_err(|e| format!("{p:?}: {e}"))?;
            verify_refinement(&alg, &cert).map_err(|v| format!("{p:?}: {v:?}"))?;
            refined += 1;
        } else {
            let found = split_search(&alg).map_err(|e| format!("{p:?}: {e}"))?;
            if found.refining != 0 {
                return Err(format!("{p:?}: {} refining automorphisms", found.refining));
            }
            searched += 1;
        }
    }
    Ok(format!("{refined} refinements verified, {searched} searches empty"))
}

// ------------------------------------------------------------ symplectic lifting

pub fn check_lifting(instances: usize, seed: u64) -> Check {
    let mut rng = rng(seed);
    for i in 0..instances {
        let n = rng.gen_range(1..=4usize);
        let m = rng.gen_range(1..=4u32);
        let dim = 2 * n;
        let alt = Alt2 { dim, gram: Mat2 { cols: (0..dim).map(|c| 1u32 << ((c + n) % dim)).collect() } };
        let mut abar = Mat2::identity(dim);
        for _ in 0..rng.gen_range(0..12) {
            let v = rng.gen_range(1..1u32 << dim);
            abar = transvection(&alt, v).mul(&abar);
        }
        let lift = lift_symplectic(&abar, m).map_err(|e| format!("instance {i}: {e}"))?;
        let modulus = 1i64 << m;
        for r in 0..dim {
            for c in 0..dim {
                if lift[r][c].rem_euclid(2) != i64::from(abar.cols[c] >> r & 1) {
                    return Err(format!("instance {i}: entry ({r},{c}) does not reduce to abar"));
                }
            }
        }
        let j = crate::gf2forms::standard_j(dim);
        let at = crate::gf2forms::int_transpose(&lift);
        let ata = crate::gf2forms::int_mat_mul(&crate::gf2forms::int_mat_mul(&at, &j, modulus), &lift, modulus);
        for r in 0..dim {
            for c in 0..dim {
                if (ata[r][c] - j[r][c]).rem_euclid(modulus) != 0 {
                    return Err(format!("instance {i}: A^T J A != J mod 2^{m}"));
                }
            }
        }
    }
    Ok(format!("{instances} lifts verified"))
}

// ------------------------------------------------------------ Weyl realizability

/// Generators of `Aut(T, mu)` found by brute force over images of the generators of `T`.
fn aut_t_mu(gda: &GDAlgebra) -> Vec<Vec<u32>> {
    let t = &gda.t;
    let r = t.torsion.len();
    let mut out = Vec::new();
    let mut imgs = vec![0usize; r];
    fn rec(gda: &GDAlgebra, j: usize, imgs: &mut Vec<usize>, out: &mut Vec<Vec<u32>>) {
        let t = &gda.t;
        let r = t.torsion.len();
        if j == r {
            let n = gda.order();
            let perm: Vec<u32> = (0..n)
                .map(|x| {
                    let e = t.element(x);
                    let mut acc = t.zero();
                    for (g, &k) in e.iter().enumerate() {
                        acc = t.add(&acc, &t.scale(k, &t.element(imgs[g])));
                    }
                    t.index(&acc) as u32
                })
                .collect();
            let distinct: HashSet<u32> = perm.iter().copied().collect();
            if distinct.len() == n && (0..n).all(|x| gda.mu(x) == gda.mu(perm[x] as usize)) {
                out.push(perm);
            }
            return;
        }
        for x in 0..gda.order() {
            if t.elem_order(&t.element(x)) == t.torsion[j] {
                imgs[j] = x;
                rec(gda, j + 1, imgs, out);
            }
        }
    }
    rec(gda, 0, &mut imgs, &mut out);
    out
}

pub fn check_weyl() -> Check {
    let mut report = Vec::new();
    for label in ["D(2;+1)", "D(2;-1)", "D(4;+1)"] {
        let gda = GDAlgebra::from_label(label).map_err(|e| e.to_string())?;
        let auts = aut_t_mu(&gda);
        for perm in &auts {
            gda.realize_weyl(perm, false).map_err(|e| format!("{label}: {perm:?}: {e}"))?;
        }
        let weyl: HashSet<u64> = gda
            .weyl_elements()
            .map_err(|e| e.to_string())?
            .iter()
            .map(|(p, _)| perm_to_mat2(p, gda.t.torsion.len()).pack())
            .collect();
        let aut: HashSet<u64> = auts.iter().map(|p| perm_to_mat2(p, gda.t.torsion.len()).pack()).collect();
        if weyl != aut {
            return Err(format!("{label}: Weyl group {} elements, Aut(T, mu) {}", weyl.len(), aut.len()));
        }
        report.push(format!("{label}:{}", auts.len()));
    }
    Ok(format!("all automorphisms realized {}", report.join(" ")))
}

// ------------------------------------------------------------ Lie census

/// Every real form in scope with `n <= 9` (A), `2r + 1 <= 9` (B), `2r <= 12` (C, D).
pub fn lie_specs() -> Vec<LieFormSpec> {
    let mut out = Vec::new();
    let sigs = |total: usize| (0..=total / 2).map(move |q| RealForm::Signature(total - q, q));
    for r in 1..=8 {
        for series in [Series::AInnerSl, Series::AOuterSl] {
            out.push(LieFormSpec { series, r, form: RealForm::Division(Delta::R) });
            out.push(LieFormSpec { series, r, form: RealForm::Division(Delta::H) });
        }
        for series in [Series::AInnerSu, Series::AOuterSu] {
            for form in sigs(r + 1) {
                out.push(LieFormSpec { series, r, form });
            }
        }
    }
    for r in 1..=4 {
        for form in sigs(2 * r + 1) {
            out.push(LieFormSpec { series: Series::B, r, form });
        }
    }
    for r in 1..=6 {
        out.push(LieFormSpec { series: Series::C, r, form: RealForm::Division(Delta::R) });
        for form in sigs(r) {
            out.push(LieFormSpec { series: Series::C, r, form });
        }
        out.push(LieFormSpec { series: Series::D, r, form: RealForm::Division(Delta::H) });
        for form in sigs(2 * r) {
            out.push(LieFormSpec { series: Series::D, r, form });
        }
    }
    out.retain(|s| s.validate().is_ok());
    out
}

pub fn check_lie_census() -> Check {
    let (mut forms, mut gradings, mut univ) = (0, 0, 0);
    let mut by_series: BTreeMap<String, usize> = BTreeMap::new();
    for spec in lie_specs() {
        let gs = enumerate_lie(&spec).map_err(|e| format!("{}: {e}", spec.name()))?;
        forms += 1;
        for g in &gs {
            let total: usize = g.census.iter().map(|c| c.1).sum();
            if total != spec.lie_dim() {
                return Err(format!("{}: census total {total}, dimension {}", g.label, spec.lie_dim()));
            }
            let alg = build(&g.params).map_err(|e| e.to_string())?;
            let closed = closed_form_lie_census(spec.series, &alg).map_err(|e| e.to_string())?;
            if census_form(&alg) != closed {
                return Err(format!("{}: census differs from the closed form", g.label));
            }
            let odd = matches!(spec.series, Series::AOuterSl | Series::AOuterSu);
            if odd || matches!(spec.series, Series::C | Series::D) {
                let f = universal_formula_lie(&alg, odd).map_err(|e| format!("{}: {e}", g.label))?;
                if f.to_string() != g.universal {
                    return Err(format!("{}: universal {} vs formula {f}", g.label, g.universal));
                }
                univ += 1;
            }
            gradings += 1;
            *by_series.entry(format!("{:?}", spec.series)).or_insert(0) += 1;
        }
    }
    Ok(format!("{forms} real forms, {gradings} gradings, {univ} universal groups by formula"))
}
