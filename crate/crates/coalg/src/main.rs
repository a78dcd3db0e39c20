use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use coalg::coalgebra::{Coalgebra, Side};
use coalg::comodule::{hom_space, left_integrals, right_integrals, Comodule};
use coalg::exactlin::Scalar;
use coalg::frobenius::{verify_integral_bounds, FrobeniusReport};
use coalg::incidence::{
    build_incidence, e_l_injective, e_r_injective, parse_poset, FinitePoset,
};
use coalg::{io, Error};

/// Exact computations with finite-dimensional coalgebras and comodules.
#[derive(Parser)]
#[command(name = "coalg", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct SourceArgs {
    /// Input file; `.poset` files are parsed as posets, everything else
    /// as a JSON coalgebra document.
    input: Option<PathBuf>,
    /// Poset file (incidence coalgebra is built over --field)
    #[arg(long)]
    poset: Option<PathBuf>,
    /// Coalgebra JSON file
    #[arg(long)]
    coalgebra: Option<PathBuf>,
    /// Field for poset-built coalgebras: Q or Fp:<prime>
    #[arg(long, default_value = "Q")]
    field: String,
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate coalgebra (or comodule) axioms
    Check(SourceArgs),
    /// Coradical and dual radical dimensions and bases
    Coradical(SourceArgs),
    /// Dimension and basis of Hom(source, target) for two comodule files
    Hom {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Space of integrals for a comodule file (side read from the file)
    Integrals {
        #[arg(long)]
        comodule: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Incidence-coalgebra tables for a poset
    Incidence {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long, default_value = "Q")]
        field: String,
        /// Which integral table to print: left or right
        #[arg(long, value_parser = parse_side)]
        integrals: Option<Side>,
        /// Tabulate every u in the poset
        #[arg(long)]
        all_u: bool,
        /// Tabulate a single u (element label)
        #[arg(long)]
        u: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Left/right co-Frobenius diagnosis
    Cofrobenius(SourceArgs),
    /// Integral-bound table over the injective blocks (both sides)
    VerifyTheorem {
        #[command(flatten)]
        source: SourceArgs,
        /// Resolving idempotents file for non-pointed coalgebras
        #[arg(long)]
        idempotents: Option<PathBuf>,
    },
    /// Lift almost-idempotents from a dual-element file
    LiftIdempotent {
        #[command(flatten)]
        source: SourceArgs,
        /// Dual-element file with the elements to lift
        #[arg(long)]
        idempotents: PathBuf,
    },
}

fn parse_side(s: &str) -> Result<Side, String> {
    match s {
        "left" => Ok(Side::Left),
        "right" => Ok(Side::Right),
        _ => Err("side must be `left` or `right`".into()),
    }
}

fn max_dim() -> usize {
    std::env::var("COALG_MAX_DIM")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(512)
}

fn check_dim(dim: usize) -> Result<(), Error> {
    let cap = max_dim();
    if dim > cap {
        return Err(Error::Precondition(format!(
            "problem dimension {} exceeds COALG_MAX_DIM = {}",
            dim, cap
        )));
    }
    Ok(())
}

enum Source {
    Coalgebra(Arc<Coalgebra>),
    Poset(FinitePoset, Arc<Coalgebra>),
    Comodule(Comodule, Arc<Coalgebra>),
}

impl Source {
    fn coalgebra(&self) -> &Arc<Coalgebra> {
        match self {
            Source::Coalgebra(c) => c,
            Source::Poset(_, c) => c,
            Source::Comodule(_, c) => c,
        }
    }
}

fn load_source(args: &SourceArgs) -> Result<Source, Error> {
    let field = io::parse_field(&args.field)?;
    let source = if let Some(p) = &args.poset {
        let poset = parse_poset(&std::fs::read_to_string(p)?)?;
        let c = Arc::new(build_incidence(&poset, field));
        Source::Poset(poset, c)
    } else if let Some(p) = &args.coalgebra {
        Source::Coalgebra(Arc::new(io::load_coalgebra(p)?))
    } else if let Some(p) = &args.input {
        match p.extension().and_then(|e| e.to_str()) {
            Some("poset") => {
                let poset = parse_poset(&std::fs::read_to_string(p)?)?;
                let c = Arc::new(build_incidence(&poset, field));
                Source::Poset(poset, c)
            }
            Some("comod") => {
                let (m, c) = io::load_comodule(p)?;
                Source::Comodule(m, c)
            }
            _ => Source::Coalgebra(Arc::new(io::load_coalgebra(p)?)),
        }
    } else {
        return Err(Error::Precondition(
            "no input given: pass a file, --poset, or --coalgebra".into(),
        ));
    };
    check_dim(source.coalgebra().dim())?;
    Ok(source)
}

fn format_vector(labels: &[String], v: &[Scalar]) -> String {
    let mut parts = Vec::new();
    for (i, s) in v.iter().enumerate() {
        if s.is_zero() {
            continue;
        }
        if s.is_one() {
            parts.push(labels[i].clone());
        } else {
            parts.push(format!("{}*{}", s, labels[i]));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn run_check(args: &SourceArgs) -> Result<i32, Error> {
    let source = load_source(args)?;
    let report = match &source {
        Source::Comodule(m, _) => m.validate(),
        _ => source.coalgebra().validate(),
    };
    if args.json {
        let checks: Vec<_> = report
            .checks
            .iter()
            .map(|c| {
                json!({
                    "axiom": c.axiom,
                    "ok": c.ok,
                    "first_violation": c.first_violation,
                })
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "passed": report.passed(),
                "checks": checks,
            }))?
        );
    } else {
        for c in &report.checks {
            match &c.first_violation {
                Some(v) if !c.ok => println!("{}: FAIL (first violation at {})", c.axiom, v),
                _ => println!("{}: {}", c.axiom, if c.ok { "pass" } else { "FAIL" }),
            }
        }
        println!("axioms: {}", if report.passed() { "PASS" } else { "FAIL" });
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn run_coradical(args: &SourceArgs) -> Result<i32, Error> {
    let source = load_source(args)?;
    let c = source.coalgebra();
    let rad = c.dual_radical()?;
    let cor = c.coradical()?;
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "dim": c.dim(),
                "dim_coradical": cor.basis.dim(),
                "dim_radical": rad.basis.dim(),
                "coradical_basis": cor.basis.vectors().iter()
                    .map(|v| format_vector(c.basis_labels(), v)).collect::<Vec<_>>(),
                "radical_basis": rad.basis.vectors().iter()
                    .map(|v| format_vector(c.basis_labels(), v)).collect::<Vec<_>>(),
            }))?
        );
    } else {
        println!("dim C = {}", c.dim());
        println!("dim coradical = {}", cor.basis.dim());
        println!("dim Rad(C*) = {}", rad.basis.dim());
        for v in cor.basis.vectors() {
            println!("coradical: {}", format_vector(c.basis_labels(), v));
        }
        for v in rad.basis.vectors() {
            println!("radical: {}*", format_vector(c.basis_labels(), v));
        }
    }
    Ok(0)
}

fn run_hom(source: &Path, target: &Path, json_out: bool) -> Result<i32, Error> {
    let (m, cm) = io::load_comodule(source)?;
    let (n, cn) = io::load_comodule(target)?;
    check_dim(cm.dim().max(m.dim()).max(n.dim()))?;
    if cm != cn {
        return Err(Error::ParentMismatch);
    }
    // reload the target over the source's coalgebra instance so parent
    // checks compare structurally identical values
    let h = hom_space(&m, &n)?;
    if json_out {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "dim": h.dim(),
                "basis": h.basis.iter().map(|f| {
                    (0..f.matrix.rows()).map(|r| {
                        (0..f.matrix.cols()).map(|c| f.matrix.get(r, c).to_string())
                            .collect::<Vec<_>>()
                    }).collect::<Vec<_>>()
                }).collect::<Vec<_>>(),
            }))?
        );
    } else {
        println!("dim Hom = {}", h.dim());
        for (i, f) in h.basis.iter().enumerate() {
            for r in 0..f.matrix.rows() {
                let row: Vec<String> = (0..f.matrix.cols())
                    .map(|c| f.matrix.get(r, c).to_string())
                    .collect();
                println!("basis[{}] row {}: [{}]", i, r, row.join(", "));
            }
        }
    }
    Ok(0)
}

fn run_integrals(path: &Path, json_out: bool) -> Result<i32, Error> {
    let (m, c) = io::load_comodule(path)?;
    check_dim(c.dim().max(m.dim()))?;
    let h = match m.side() {
        Side::Left => left_integrals(&c, &m)?,
        Side::Right => right_integrals(&c, &m)?,
    };
    if json_out {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "side": m.side().to_string(),
                "dim_comodule": m.dim(),
                "dim_integrals": h.dim(),
            }))?
        );
    } else {
        println!("side = {}", m.side());
        println!("dim M = {}", m.dim());
        println!("dim integrals = {}", h.dim());
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn run_incidence(
    poset_path: &Path,
    field: &str,
    integrals: Option<Side>,
    all_u: bool,
    u: Option<&str>,
    json_out: bool,
) -> Result<i32, Error> {
    let field = io::parse_field(field)?;
    let poset = parse_poset(&std::fs::read_to_string(poset_path)?)?;
    let c = Arc::new(build_incidence(&poset, field));
    check_dim(c.dim())?;
    let side = integrals.unwrap_or(Side::Right);
    let targets: Vec<usize> = if all_u {
        (0..poset.len()).collect()
    } else if let Some(label) = u {
        vec![poset
            .index(label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))?]
    } else {
        return Err(Error::Precondition("pass --all-u or --u <element>".into()));
    };
    let mut rows = Vec::new();
    for x in targets {
        let (m, h, closed_dim, closed_int) = match side {
            Side::Right => {
                let m = e_r_injective(&poset, &c, x)?;
                let h = right_integrals(&c, &m)?;
                (m, h, poset.up_set(x).len(), poset.down_set(x).len())
            }
            Side::Left => {
                let m = e_l_injective(&poset, &c, x)?;
                let h = left_integrals(&c, &m)?;
                (m, h, poset.down_set(x).len(), poset.up_set(x).len())
            }
        };
        rows.push((poset.elements()[x].clone(), m.dim(), h.dim(), closed_dim, closed_int));
    }
    if json_out {
        let jrows: Vec<_> = rows
            .iter()
            .map(|(u, d, i, cd, ci)| {
                json!({
                    "u": u, "dim_E": d, "dim_integrals": i,
                    "closed_form_dim_E": cd, "closed_form_integrals": ci,
                })
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "poset_elements": poset.len(),
                "side": side.to_string(),
                "rows": jrows,
            }))?
        );
    } else {
        println!(
            "poset: {} elements, {} cover relations",
            poset.len(),
            poset.covers().len()
        );
        println!("side: {}", side);
        println!("u\tdim_E\tintegrals\tclosed_dim\tclosed_integrals");
        for (u, d, i, cd, ci) in &rows {
            println!("{}\t{}\t{}\t{}\t{}", u, d, i, cd, ci);
        }
    }
    Ok(0)
}

fn run_cofrobenius(args: &SourceArgs) -> Result<i32, Error> {
    let source = load_source(args)?;
    let c = source.coalgebra();
    let rep = FrobeniusReport::compute(c)?;
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "right": rep.right.is_co_frobenius,
                "left": rep.left.is_co_frobenius,
                "right_max_rank": rep.right.max_rank,
                "left_max_rank": rep.left.max_rank,
                "dim": c.dim(),
                "dim_coradical": rep.coradical_dim,
            }))?
        );
    } else {
        println!("right: {}", rep.right.is_co_frobenius);
        println!("left: {}", rep.left.is_co_frobenius);
        if !rep.right.is_co_frobenius {
            println!("right max embedding rank: {} < {}", rep.right.max_rank, c.dim());
        }
        if !rep.left.is_co_frobenius {
            println!("left max embedding rank: {} < {}", rep.left.max_rank, c.dim());
        }
        println!("dim coradical = {}", rep.coradical_dim);
    }
    Ok(0)
}

fn run_verify_theorem(args: &SourceArgs, idem_path: Option<&Path>) -> Result<i32, Error> {
    let source = load_source(args)?;
    let c = source.coalgebra();
    let idems = match idem_path {
        Some(p) => Some(io::load_dual_elements(p, c)?),
        None => None,
    };
    let (lefts, rights) = match &source {
        Source::Poset(p, c) => {
            let mut lefts = Vec::new();
            let mut rights = Vec::new();
            for x in 0..p.len() {
                lefts.push((format!("E_l(S_{})", p.elements()[x]), e_l_injective(p, c, x)?));
                rights.push((format!("E_r(S_{})", p.elements()[x]), e_r_injective(p, c, x)?));
            }
            (lefts, rights)
        }
        _ => {
            let lb = c.injective_block_decomposition_sided(Side::Left, idems.as_deref())?;
            let rb = c.injective_block_decomposition_sided(Side::Right, idems.as_deref())?;
            let cl = Comodule::regular(c, Side::Left);
            let cr = Comodule::regular(c, Side::Right);
            let mut lefts = Vec::new();
            for (i, b) in lb.iter().enumerate() {
                lefts.push((format!("E_l[{}]", i), cl.restrict_to(&b.basis)?));
            }
            let mut rights = Vec::new();
            for (i, b) in rb.iter().enumerate() {
                rights.push((format!("E_r[{}]", i), cr.restrict_to(&b.basis)?));
            }
            (lefts, rights)
        }
    };
    let table = verify_integral_bounds(c, &lefts, &rights)?;
    if args.json {
        let rows: Vec<_> = table
            .rows
            .iter()
            .map(|r| {
                json!({
                    "side": r.side.to_string(),
                    "comodule": r.label,
                    "dim": r.dim_comodule,
                    "dim_integrals": r.dim_integrals,
                    "verdict": r.verdict.to_string(),
                })
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "right_co_frobenius": table.right_co_frobenius,
                "left_co_frobenius": table.left_co_frobenius,
                "banner": table.banner,
                "rows": rows,
                "all_pass": table.all_pass,
            }))?
        );
    } else {
        if let Some(b) = &table.banner {
            println!("! {}", b);
        }
        println!(
            "right co-Frobenius: {}, left co-Frobenius: {}",
            table.right_co_frobenius, table.left_co_frobenius
        );
        println!("side\tcomodule\tdim\tintegrals\tverdict");
        for r in &table.rows {
            println!(
                "{}\t{}\t{}\t{}\t{}",
                r.side, r.label, r.dim_comodule, r.dim_integrals, r.verdict
            );
        }
        println!("all_pass: {}", table.all_pass);
    }
    Ok(if table.all_pass { 0 } else { 1 })
}

fn run_lift(args: &SourceArgs, idem_path: &Path) -> Result<i32, Error> {
    let source = load_source(args)?;
    let c = source.coalgebra();
    let elems = io::load_dual_elements(idem_path, c)?;
    let mut out_rows = Vec::new();
    for (i, x) in elems.iter().enumerate() {
        let (e, iters) = c.lift_idempotent(x)?;
        out_rows.push((i, e, iters));
    }
    if args.json {
        let rows: Vec<_> = out_rows
            .iter()
            .map(|(i, e, iters)| {
                json!({
                    "index": i,
                    "iterations": iters,
                    "idempotent": format_vector(c.basis_labels(), &e.coeffs),
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&json!({ "lifted": rows }))?);
    } else {
        for (i, e, iters) in &out_rows {
            println!(
                "element {}: lifted in {} iterations -> {}*",
                i,
                iters,
                format_vector(c.basis_labels(), &e.coeffs)
            );
        }
    }
    Ok(0)
}

fn dispatch(cli: Cli) -> Result<i32, Error> {
    match &cli.cmd {
        Cmd::Check(a) => run_check(a),
        Cmd::Coradical(a) => run_coradical(a),
        Cmd::Hom { source, target, json } => run_hom(source, target, *json),
        Cmd::Integrals { comodule, json } => run_integrals(comodule, *json),
        Cmd::Incidence {
            poset,
            field,
            integrals,
            all_u,
            u,
            json,
        } => run_incidence(poset, field, *integrals, *all_u, u.as_deref(), *json),
        Cmd::Cofrobenius(a) => run_cofrobenius(a),
        Cmd::VerifyTheorem { source, idempotents } => {
            run_verify_theorem(source, idempotents.as_deref())
        }
        Cmd::LiftIdempotent { source, idempotents } => run_lift(source, idempotents),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(1)
        }
    }
}
