//! `bvcoho`: group info, cohomology dimensions, cochain operations and the
//! F3 S3 report from the command line.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 bad usage or input.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use bvcoho::bv::{self, bracket_via_bv, BvModel, DecomposedClassFamily, DecomposedModel, HochschildModel};
use bvcoho::complexes::{Cochain, Complex, DegreeCaps};
use bvcoho::decomposition::Decomposition;
use bvcoho::field::Fp;
use bvcoho::group::{ConjugacyData, FiniteGroup};
use bvcoho::io::{load_group, CochainFile};
use bvcoho::verify::{verify_s3, VerifyOptions};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "bvcoho", version, about = "Hochschild cohomology and BV structure of group algebras over GF(p)")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Indent the JSON and append a plain-text table.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Order, conjugacy classes, centralizers and coset representatives.
    Info {
        /// Built-in name (C2, C3, C4, S3) or a group JSON file.
        #[arg(long)]
        group: String,
    },
    /// Cohomology dimensions by elimination.
    Cohomology {
        #[arg(long)]
        group: String,
        #[arg(long)]
        prime: u32,
        #[arg(long, value_enum, default_value = "hochschild")]
        kind: Kind,
        /// Class representative for `--kind centralizer`.
        #[arg(long)]
        rep: Option<String>,
        #[arg(long, visible_alias = "degree")]
        max_degree: usize,
        /// Directory for cocycle representatives of each basis class.
        #[arg(long)]
        representatives: Option<PathBuf>,
    },
    /// Apply an operation to cochain files.
    Op {
        #[arg(value_enum)]
        op: OpName,
        inputs: Vec<PathBuf>,
        #[arg(long)]
        group: String,
        /// Defaults to the prime of the first input.
        #[arg(long)]
        prime: Option<u32>,
    },
    /// Reproduce the F3 S3 computation; exit 1 if any check fails.
    VerifyS3 {
        #[arg(long, default_value_t = 3)]
        prime: u32,
        /// Debug control: negate every computed bracket.
        #[arg(long)]
        flip_bracket_sign: bool,
        /// Skip the degree-8 transfer for v².
        #[arg(long)]
        skip_v_squared: bool,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Hochschild,
    Conjugation,
    Trivial,
    Centralizer,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpName {
    Cup,
    CupDecomposed,
    Delta,
    DeltaHat,
    Bracket,
    BracketBv,
}

struct Output {
    json: Value,
    table: Option<String>,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => match emit(&cli, &out) {
            Ok(()) if out.ok => ExitCode::SUCCESS,
            Ok(()) => ExitCode::from(1),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, out: &Output) -> Result<()> {
    let mut text = if cli.pretty { serde_json::to_string_pretty(&out.json)? } else { serde_json::to_string(&out.json)? };
    text.push('\n');
    if cli.pretty {
        if let Some(t) = &out.table {
            text.push('\n');
            text.push_str(t);
        }
    }
    match &cli.out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.cmd {
        Cmd::Info { group } => info(&load_group(group)?),
        Cmd::Cohomology { group, prime, kind, rep, max_degree, representatives } => {
            cohomology(Arc::new(load_group(group)?), *prime, *kind, rep.as_deref(), *max_degree, representatives.as_deref())
        }
        Cmd::Op { op, inputs, group, prime } => operation(*op, inputs, Arc::new(load_group(group)?), *prime),
        Cmd::VerifyS3 { prime, flip_bracket_sign, skip_v_squared, max_degree } => {
            let opts = VerifyOptions { flip_bracket_sign: *flip_bracket_sign, with_v_squared: !skip_v_squared, max_dim_degree: *max_degree };
            let report = verify_s3(*prime, opts)?;
            let ok = report.passed();
            let failed: Vec<&str> = report.checks.iter().filter(|c| !c.pass).map(|c| c.label.as_str()).collect();
            Ok(Output {
                json: json!({ "passed": ok, "failed": failed, "report": report }),
                table: Some(report.table()),
                ok,
            })
        }
    }
}

fn info(g: &FiniteGroup) -> Result<Output> {
    let data = ConjugacyData::new(g);
    let label = |x: usize| g.label(x);
    let classes: Vec<Value> = data
        .reps
        .iter()
        .enumerate()
        .map(|(r, &x)| {
            json!({
                "rep": x,
                "label": label(x),
                "size": data.classes[r].len(),
                "elements": data.classes[r],
                "centralizer_order": data.centralizers[r].len(),
                "centralizer": data.centralizers[r],
                "gammas": data.gammas[r],
            })
        })
        .collect();
    let mut table = format!("{} of order {}, {} classes\n", g.name(), g.order(), data.reps.len());
    for (r, &x) in data.reps.iter().enumerate() {
        let names: Vec<String> = data.classes[r].iter().map(|&y| label(y)).collect();
        table += &format!("  {:<6} class {{{}}}  |C| = {}\n", label(x), names.join(", "), data.centralizers[r].len());
    }
    Ok(Output {
        json: json!({
            "name": g.name(),
            "order": g.order(),
            "abelian": g.is_abelian(),
            "elements": (0..g.order()).map(label).collect::<Vec<_>>(),
            "inverses": (0..g.order()).map(|x| g.inv(x)).collect::<Vec<_>>(),
            "classes": classes,
        }),
        table: Some(table),
        ok: true,
    })
}

fn rep_index(dec: &Decomposition, s: &str) -> Result<usize> {
    let g = dec.group();
    let x = g.parse_element(s).with_context(|| format!("unknown element {s}"))?;
    Ok(dec.reps()[dec.class_position(x)])
}

fn cohomology(g: Arc<FiniteGroup>, prime: u32, kind: Kind, rep: Option<&str>, max_degree: usize, reps_dir: Option<&Path>) -> Result<Output> {
    let field = Fp::new(prime)?;
    let dec;
    let complex = match kind {
        Kind::Hochschild => Complex::hochschild(g, field),
        Kind::Conjugation => Complex::conjugation(g, field),
        Kind::Trivial => Complex::trivial(g, field),
        Kind::Centralizer => {
            let r = rep.context("--kind centralizer needs --rep")?;
            dec = Decomposition::new(g, field);
            dec.component_complex(rep_index(&dec, r)?)?.clone()
        }
    };
    let caps = DegreeCaps::from_env()?;
    let mut dims = Vec::new();
    for n in 0..=max_degree {
        match reps_dir {
            Some(dir) => {
                let q = complex.cohomology(n, &caps)?;
                std::fs::create_dir_all(dir)?;
                for (i, v) in q.representatives().iter().enumerate() {
                    let c = complex.cochain(n, v.clone())?;
                    let path = dir.join(format!("h{n}_{i}.json"));
                    std::fs::write(&path, CochainFile::from_cochain(&c).to_json())?;
                }
                dims.push(q.dim());
            }
            None => dims.push(complex.cohomology_dim(n, &caps)?),
        }
    }
    let table = dims.iter().enumerate().map(|(n, d)| format!("  H^{n} = {d}\n")).collect();
    Ok(Output { json: json!({ "kind": complex.kind().name(), "prime": prime, "dims": dims }), table: Some(table), ok: true })
}

fn read_file(p: &Path) -> Result<CochainFile> {
    let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
    Ok(CochainFile::from_json(&text).with_context(|| p.display().to_string())?)
}

fn cochain_json(c: &Cochain) -> Value {
    serde_json::to_value(CochainFile::from_cochain(c)).expect("serializable")
}

fn family_json(f: &DecomposedClassFamily) -> Value {
    let comps: Vec<Value> = f.components.values().map(|c| serde_json::to_value(CochainFile::from_component(c)).expect("serializable")).collect();
    json!({ "degree": f.degree, "components": comps })
}

fn operation(op: OpName, inputs: &[PathBuf], g: Arc<FiniteGroup>, prime: Option<u32>) -> Result<Output> {
    let files = inputs.iter().map(|p| read_file(p)).collect::<Result<Vec<_>>>()?;
    let arity = match op {
        OpName::Delta | OpName::DeltaHat => 1,
        _ => 2,
    };
    if files.len() != arity {
        bail!("this operation takes {arity} input file(s), got {}", files.len());
    }
    let prime = prime.unwrap_or(files[0].prime);
    let field = Fp::new(prime)?;
    let dec = Decomposition::new(g.clone(), field);
    let plain = |f: &CochainFile| -> Result<Cochain> {
        let cx = match f.kind.as_str() {
            "hochschild" => dec.hochschild().clone(),
            "conjugation" => dec.conjugation().clone(),
            "trivial" => Complex::trivial(g.clone(), field),
            "component" => return Ok(f.to_component(&dec)?.inner),
            k => bail!("unknown cochain kind {k}"),
        };
        Ok(f.to_cochain(&cx)?)
    };
    let json = match op {
        OpName::Cup => cochain_json(&bv::cup(&plain(&files[0])?, &plain(&files[1])?)?),
        OpName::Delta => match bv::delta(&plain(&files[0])?)? {
            Some(c) => cochain_json(&c),
            None => Value::Null,
        },
        OpName::Bracket => match bv::bracket(&plain(&files[0])?, &plain(&files[1])?)? {
            Some(c) => cochain_json(&c),
            None => Value::Null,
        },
        OpName::BracketBv => {
            let model = HochschildModel::new(dec.hochschild().clone())?;
            match bracket_via_bv(&model, &plain(&files[0])?, &plain(&files[1])?)? {
                Some(c) => cochain_json(&c),
                None => Value::Null,
            }
        }
        OpName::CupDecomposed => {
            let (x, y) = (files[0].to_component(&dec)?, files[1].to_component(&dec)?);
            let model = DecomposedModel::new(&dec);
            family_json(&model.cup(&DecomposedClassFamily::single(x), &DecomposedClassFamily::single(y))?)
        }
        OpName::DeltaHat => match bv::delta_hat(&dec, &files[0].to_component(&dec)?)? {
            Some(c) => serde_json::to_value(CochainFile::from_component(&c))?,
            None => Value::Null,
        },
    };
    Ok(Output { json, table: None, ok: true })
}
