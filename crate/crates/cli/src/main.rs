#![forbid(unsafe_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use grady_core::classify::{
    class_invariant, enumerate_fine, equivalent, family_of, signature_phi, ClassEntry, Family, InvolutionKind,
    InvolutionKindClass,
};
use grady_core::error::Error;
use grady_core::gdivalg::{Case, GDAlgebra};
use grady_core::gradedmat::{build, is_fine, verify_grading, AlgParams, DiagEntry, GradingParams};
use grady_core::lietransfer::{table_d4, table_m8};
use grady_core::selftest::CRITERIA;
use serde_json::json;

#[derive(Parser)]
#[command(name = "grady", version, about = "Fine gradings on real simple algebras with involution")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableName {
    M8,
    D4,
}

#[derive(Subcommand)]
enum Command {
    /// Describe a graded-division algebra, e.g. "D(2;+1)".
    Gda {
        label: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build a graded algebra from a params file and verify the grading.
    Build {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decide whether the grading in a params file is fine.
    Fine {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
    },
    /// Universal group of M(D, q, s, d, delta).
    UniversalGroup {
        #[arg(long)]
        gda: String,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        s: usize,
        /// Comma-separated degree words, e.g. `a,b`.
        #[arg(long, default_value = "")]
        d: String,
        /// Comma-separated signs, e.g. `+,-` (default all +).
        #[arg(long, allow_hyphen_values = true)]
        signs: Option<String>,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        delta: i8,
    },
    /// Decide equivalence of the gradings in two params files.
    Equiv { a: PathBuf, b: PathBuf },
    /// List the fine gradings up to equivalence.
    Enumerate {
        /// A family name or `all`.
        #[arg(long)]
        family: String,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        signature: Option<u32>,
        /// orthogonal, symplectic, second-kind or exchange; defaults from the family.
        #[arg(long)]
        kind: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print a table of class counts.
    Table {
        #[arg(value_enum)]
        name: TableName,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the built-in consistency checks.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn read_params(path: &Path) -> Result<AlgParams, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn to_json<T: serde::Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn run(cmd: Command) -> Result<String, Error> {
    match cmd {
        Command::Gda { label, format } => gda(&label, format),
        Command::Build { file, format } => build_cmd(&file, format),
        Command::Fine { file } => {
            let v = is_fine(&read_params(&file)?)?;
            Ok(format!("{}: {}\n", if v.fine { "fine" } else { "not fine" }, v.reason))
        }
        Command::UniversalGroup { gda, q, s, d, signs, delta } => universal(&gda, q, s, &d, signs.as_deref(), delta),
        Command::Equiv { a, b } => {
            let eq = equivalent(&read_params(&a)?, &read_params(&b)?)?;
            Ok(if eq { "equivalent\n" } else { "not equivalent\n" }.into())
        }
        Command::Enumerate { family, size, signature, kind, format } => {
            enumerate(&family, size, signature, kind.as_deref(), format)
        }
        Command::Table { name, format } => {
            let t = match name {
                TableName::M8 => table_m8()?,
                TableName::D4 => table_d4()?,
            };
            Ok(if format == Format::Json { to_json(&t) } else { t.to_text() })
        }
        Command::Selftest => {
            let mut out = String::new();
            let mut failed = 0;
            for (i, c) in CRITERIA.iter().enumerate() {
                match (c.run)() {
                    Ok(msg) => out += &format!("PASS {:>2} {}: {msg}\n", i + 1, c.name),
                    Err(msg) => {
                        failed += 1;
                        out += &format!("FAIL {:>2} {}: {msg}\n", i + 1, c.name);
                    }
                }
            }
            if failed > 0 {
                print!("{out}");
                return Err(Error::Invalid(format!("{failed} check(s) failed")));
            }
            Ok(out)
        }
    }
}

fn case_name(c: Case) -> &'static str {
    match c {
        Case::One => "central simple, first kind",
        Case::TwoA => "complex, second kind, real identity component",
        Case::TwoB => "complex, second kind, complex identity component",
        Case::Three => "exchange",
    }
}

fn gda(label: &str, format: Format) -> Result<String, Error> {
    let g = GDAlgebra::from_label(label)?;
    let elems: Vec<String> = (0..g.order()).map(|t| g.format_elem(t)).collect();
    let mu: Vec<Option<i8>> = (0..g.order()).map(|t| g.mu(t)).collect();
    let eta: Vec<u32> = (0..g.order()).map(|t| g.eta(t)).collect();
    let arf = g.quadratic_form().map(|q| q.arf());
    if format == Format::Json {
        return Ok(to_json(&json!({
            "label": g.label.to_string(),
            "support": g.t.to_string(),
            "order": g.order(),
            "case": case_name(g.case()),
            "real_dim": g.real_dim(),
            "elements": elems,
            "mu": mu,
            "eta": eta,
            "arf": arf,
        })));
    }
    let mut out = format!(
        "label: {}\nsupport: {} (order {})\ncase: {}\nreal dimension: {}\n",
        g.label,
        g.t,
        g.order(),
        case_name(g.case()),
        g.real_dim()
    );
    if mu.iter().all(Option::is_some) {
        let row: Vec<String> =
            elems.iter().zip(&mu).map(|(e, m)| format!("{e}:{}", if *m == Some(1) { "+" } else { "-" })).collect();
        out += &format!("squares: {}\n", row.join(" "));
    }
    if let Some(a) = arf {
        out += &format!("arf: {a}\n");
    }
    Ok(out)
}

fn build_cmd(file: &Path, format: Format) -> Result<String, Error> {
    let p = read_params(file)?;
    let alg = build(&p)?;
    let report = verify_grading(&alg).map_err(|v| Error::Invalid(format!("grading axiom fails: {v:?}")))?;
    let universal = alg.universal.iso_type().to_string();
    let census: Vec<(usize, usize)> = alg.census().into_iter().collect();
    if format == Format::Json {
        return Ok(to_json(&json!({
            "universal": universal,
            "real_dim": alg.real_dim(),
            "components": report.components,
            "census": census,
        })));
    }
    let census: Vec<String> = census.iter().map(|(d, c)| format!("{c} of dim {d}")).collect();
    Ok(format!(
        "verified: {} components, real dimension {}\nuniversal group: {universal}\ncensus: {}\n",
        report.components,
        alg.real_dim(),
        census.join(", ")
    ))
}

fn split_list(s: &str) -> Vec<&str> {
    s.split(',').map(str::trim).filter(|w| !w.is_empty()).collect()
}

fn universal(label: &str, q: usize, s: usize, d: &str, signs: Option<&str>, delta: i8) -> Result<String, Error> {
    let g = GDAlgebra::from_label(label)?;
    let words = split_list(d);
    if words.len() != q {
        return Err(Error::Invalid(format!("--d has {} entries, --q is {q}", words.len())));
    }
    let signs: Vec<i8> = match signs {
        None => vec![1; q],
        Some(list) => split_list(list)
            .iter()
            .map(|x| match *x {
                "+" | "+1" | "1" => Ok(1),
                "-" | "-1" => Ok(-1),
                other => Err(Error::Parse(format!("bad sign '{other}'"))),
            })
            .collect::<Result<_, _>>()?,
    };
    if signs.len() != q {
        return Err(Error::Invalid(format!("--signs has {} entries, --q is {q}", signs.len())));
    }
    let d = words
        .iter()
        .zip(&signs)
        .map(|(w, &sign)| Ok(DiagEntry { t: g.t.parse_elem(w)?, sign }))
        .collect::<Result<Vec<_>, Error>>()?;
    let alg = build(&AlgParams::M(GradingParams { gda: label.into(), q, s, d, delta }))?;
    Ok(format!("{}\n", alg.universal.iso_type()))
}

fn default_kind(f: Family) -> InvolutionKind {
    match f.kind() {
        InvolutionKindClass::FirstKind => InvolutionKind::Orthogonal,
        InvolutionKindClass::SecondKind => InvolutionKind::SecondKind,
        InvolutionKindClass::Exchange => InvolutionKind::Exchange,
    }
}

fn describe(e: &ClassEntry) -> Result<String, Error> {
    let fam = family_of(&e.params)?;
    Ok(match &e.params {
        AlgParams::Mex(p) => format!("{:<24} {} k={} universal={}", fam.name(), p.gda, p.k, e.invariant.universal),
        AlgParams::M(p) => {
            let g = GDAlgebra::from_label(&p.gda)?;
            let d: Vec<String> = p
                .d
                .iter()
                .map(|x| {
                    let w = g.format_elem(g.t.index(&x.t));
                    if x.sign < 0 {
                        format!("-{w}")
                    } else {
                        w
                    }
                })
                .collect();
            let sig = match signature_phi(p)? {
                Some(s) => format!(" signature={s}"),
                None => String::new(),
            };
            format!(
                "{:<24} {} q={} s={} d=({}) delta={:+}{sig} universal={}",
                fam.name(),
                p.gda,
                p.q,
                p.s,
                d.join(","),
                p.delta,
                e.invariant.universal
            )
        }
    })
}

fn enumerate(family: &str, size: usize, signature: Option<u32>, kind: Option<&str>, format: Format) -> Result<String, Error> {
    let fam = if family == "all" { None } else { Some(Family::parse(family)?) };
    let kind = match (kind, fam) {
        (Some(k), _) => InvolutionKind::parse(k)?,
        (None, Some(f)) => default_kind(f),
        (None, None) => return Err(Error::Invalid("--family all needs --kind".into())),
    };
    let entries = enumerate_fine(fam, size, kind, signature)?;
    if format == Format::Json {
        return Ok(to_json(&entries));
    }
    let mut out = String::new();
    for e in &entries {
        debug_assert_eq!(class_invariant(&e.params).as_ref(), Ok(&e.invariant));
        out += &describe(e)?;
        out.push('\n');
    }
    out += &format!("{} classes\n", entries.len());
    Ok(out)
}
