//! `tycat` command-line front end. Every subcommand prints one JSON document
//! on stdout (DOT for `graph --dot`). Domain errors print
//! `{"error": {"kind", "message"}}` and exit with status 1; malformed
//! command lines exit with status 2.

use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tycat::abgroup::{Elem, FinAbGroup};
use tycat::exactnum::RootOfUnity;
use tycat::fusion::{
    check_fusion_ring, gen_mp_fusion_ring, gen_ty_fusion_ring, ty_dual_hypergroup_and_table, ty_fusion_ring,
    ty_hypergroup, FusionRing,
};
use tycat::graphs::{emit_dot, lr_dual_principal_graph, lr_principal_graph};
use tycat::lattice::{count_roots, discriminant_form, glue, EvenLattice};
use tycat::moddata::{
    bantay_fs, classify_mp, md_equivalent, mp_md, pointed_md, ty_center_md, verify_condensation, verlinde_fusion,
    Label, ModularData,
};
use tycat::quadform::{bichar_from_qform, classify_metric_groups, Bichar, MetricGroup, QuadForm};
use tycat::{Error, Limits};

#[derive(Parser)]
#[command(name = "tycat", version, about = "Exact modular data and fusion rules for Tambara-Yamagami categories")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Discriminant form of an even lattice.
    Disc {
        /// Built-in name (A1..A24, E6, E7, E8, sums like A2+E6) or a Gram
        /// matrix as JSON (inline or a file).
        #[arg(long)]
        lattice: String,
    },
    /// Overlattice glued along an isotropic subgroup.
    Glue {
        #[arg(long)]
        lattice: String,
        /// Generators of the isotropic subgroup, separated by ';' (e.g. "1" or "[1,1];[0,2]").
        #[arg(long, value_delimiter = ';')]
        isotropic: Vec<String>,
    },
    /// Metric classes on an odd group and the number of metaplectic data.
    Classify {
        #[arg(long)]
        group: FinAbGroup,
    },
    /// Build modular data.
    Md {
        kind: MdKind,
        #[arg(long)]
        group: FinAbGroup,
        /// "default", exponents per element ("0,1/3,1/3"), or JSON (inline or file).
        #[arg(long, conflicts_with = "bichar")]
        qform: Option<String>,
        /// "default", a generator exponent matrix ("1/3" or "1/3,0;0,2/3"), or JSON.
        #[arg(long)]
        bichar: Option<String>,
        #[arg(long, default_value = "+", allow_hyphen_values = true, value_parser = parse_sign)]
        sign: i8,
    },
    /// Fusion ring from modular data or from a rule table, with its check report.
    Fusion {
        #[arg(long, conflicts_with_all = ["rules", "group"])]
        from_md: Option<String>,
        #[arg(long, requires = "group")]
        rules: Option<Rules>,
        #[arg(long)]
        group: Option<FinAbGroup>,
    },
    /// Frobenius-Schur indicator of one label.
    Fs {
        #[arg(long)]
        md: String,
        #[arg(long)]
        label: Label,
    },
    /// Search for an equivalence of two modular data.
    Equiv {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Certify a condensation by a branching matrix.
    Condense {
        #[arg(long)]
        parent: String,
        #[arg(long)]
        child: String,
        /// Boson labels separated by ';' (e.g. "1;alpha").
        #[arg(long, value_delimiter = ';', required = true)]
        bosons: Vec<Label>,
    },
    /// Principal graphs of the Longo-Rehren inclusion.
    Graph {
        kind: GraphKind,
        #[arg(long)]
        group: FinAbGroup,
        #[arg(long)]
        dot: bool,
    },
    /// The TY hypergroup, optionally with its dual and character table.
    Hypergroup {
        #[arg(long)]
        group: FinAbGroup,
        #[arg(long)]
        table: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MdKind {
    Pointed,
    TyCenter,
    Mp,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rules {
    Ty,
    Genty,
    Genmp,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    LrPrincipal,
    LrDual,
}

fn parse_sign(s: &str) -> Result<i8, String> {
    match s {
        "+" | "+1" | "1" | "plus" => Ok(1),
        "-" | "-1" | "minus" => Ok(-1),
        _ => Err(format!("sign must be + or -, got {s:?}")),
    }
}

enum Output {
    Json(Value),
    Text(String),
}

type Res<T> = Result<T, Error>;

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable output")
}

/// Inline JSON if the argument looks like JSON, otherwise a file path.
fn read_json<T: serde::de::DeserializeOwned>(arg: &str) -> Res<T> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(Path::new(arg)).map_err(|e| Error::InvalidArgument(format!("cannot read {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{arg}: {e}")))
}

fn looks_like_json(arg: &str) -> bool {
    arg.trim_start().starts_with(['{', '[']) || arg.ends_with(".json")
}

fn limits() -> Res<Limits> {
    let mut l = Limits::default();
    if let Ok(v) = std::env::var("TYCAT_MAX_RANK") {
        l.max_rank = v.trim().parse().map_err(|_| Error::InvalidArgument(format!("TYCAT_MAX_RANK={v:?} is not a rank")))?;
    }
    Ok(l)
}

fn lattice(arg: &str) -> Res<EvenLattice> {
    if !looks_like_json(arg) {
        return EvenLattice::named(arg);
    }
    let v: Value = read_json(arg)?;
    let gram = v.get("gram").cloned().unwrap_or(v);
    serde_json::from_value(json!({ "gram": gram })).map_err(|e| Error::Parse(format!("{arg}: {e}")))
}

fn approx(r: &RootOfUnity) -> [f64; 2] {
    let z = r.to_cyc().to_complex();
    [z.re, z.im]
}

fn qform_json(q: &QuadForm) -> Value {
    json!({
        "group": q.group().factors(),
        "qform": to_value(&q.values()),
        "approx": { "qform": q.values().iter().map(approx).collect::<Vec<_>>() },
    })
}

fn disc(arg: &str) -> Res<Value> {
    let l = lattice(arg)?;
    let d = discriminant_form(&l)?;
    let mut out = qform_json(d.qform());
    out["lattice"] = json!(arg);
    out["rank"] = json!(l.rank());
    out["det"] = json!(l.det().to_string());
    Ok(out)
}

fn glue_cmd(arg: &str, gens: &[String]) -> Res<Value> {
    let l = lattice(arg)?;
    let h: Vec<Elem> = gens.iter().filter(|s| !s.trim().is_empty()).map(|s| s.parse()).collect::<Res<_>>()?;
    let g = glue(&l, &h)?;
    let roots = count_roots(&g)?;
    Ok(json!({
        "gram": to_value(&g)["gram"],
        "rank": g.rank(),
        "det": g.det().to_string(),
        "even": true,
        "roots": roots,
    }))
}

fn classify(g: &FinAbGroup) -> Res<Value> {
    let l = limits()?;
    let classes = classify_metric_groups(g, &l)?;
    let mp = classify_mp(g, &l)?;
    let reps: Vec<Value> = classes
        .iter()
        .map(|m| Ok(json!({ "qform": to_value(&m.quad.values()), "c_top": m.central_charge()?.to_string() })))
        .collect::<Res<_>>()?;
    Ok(json!({
        "group": g.factors(),
        "metric_classes": classes.len(),
        "mp_classes": mp.len(),
        "classes": reps,
    }))
}

fn parse_qform(g: &FinAbGroup, arg: &str) -> Res<QuadForm> {
    if arg == "default" {
        return first_class(g).map(|m| m.quad);
    }
    if looks_like_json(arg) {
        let v: Value = read_json(arg)?;
        // either a quadratic form {group, values} or `disc` output {group: [..], qform: [..]}
        let q: QuadForm = match (v.get("values"), v.get("qform")) {
            (Some(_), _) => serde_json::from_value(v.clone()),
            (None, Some(vals)) => serde_json::from_value(json!({ "group": { "invariant_factors": v["group"] }, "values": vals })),
            _ => return Err(Error::Parse(format!("{arg}: expected a quadratic form"))),
        }
        .map_err(|e| Error::Parse(format!("{arg}: {e}")))?;
        if q.group() != g {
            return Err(Error::InvalidArgument(format!("quadratic form lives on {}, not {g}", q.group())));
        }
        return Ok(q);
    }
    let values: Vec<RootOfUnity> = arg.split(',').map(str::parse).collect::<Res<_>>()?;
    QuadForm::new(g.clone(), values)
}

fn parse_bichar(g: &FinAbGroup, arg: &str) -> Res<Bichar> {
    if arg == "default" {
        return first_class(g)?.bichar.ok_or_else(|| Error::Unsupported("no bicharacter".into()));
    }
    if looks_like_json(arg) {
        let b: Bichar = read_json(arg)?;
        if b.group() != g {
            return Err(Error::InvalidArgument(format!("bicharacter lives on {}, not {g}", b.group())));
        }
        return Ok(b);
    }
    let rows: Vec<Vec<RootOfUnity>> =
        arg.split(';').map(|row| row.split(',').map(str::parse).collect::<Res<Vec<_>>>()).collect::<Res<_>>()?;
    Bichar::new(g.clone(), rows.into_iter().flatten().collect())
}

/// The all-plus metric class, listed first by the classification.
fn first_class(g: &FinAbGroup) -> Res<MetricGroup> {
    classify_metric_groups(g, &limits()?)?.into_iter().next().ok_or_else(|| Error::Assertion("empty classification".into()))
}

fn md_cmd(kind: MdKind, g: &FinAbGroup, qform: Option<&str>, bichar: Option<&str>, sign: i8) -> Res<ModularData> {
    let metric = || -> Res<MetricGroup> {
        match (qform, bichar) {
            (Some(q), _) => MetricGroup::from_quad(parse_qform(g, q)?),
            (None, Some(b)) => MetricGroup::from_bichar(parse_bichar(g, b)?),
            (None, None) => first_class(g),
        }
    };
    let bichar = || -> Res<Bichar> {
        match (qform, bichar) {
            (Some(q), _) => bichar_from_qform(&parse_qform(g, q)?),
            (None, Some(b)) => parse_bichar(g, b),
            (None, None) => parse_bichar(g, "default"),
        }
    };
    match kind {
        MdKind::Pointed => pointed_md(&metric()?),
        MdKind::TyCenter => ty_center_md(&bichar()?, sign),
        MdKind::Mp => mp_md(&bichar()?, sign),
    }
}

fn fusion_cmd(from_md: Option<&str>, rules: Option<Rules>, group: Option<&FinAbGroup>) -> Res<Value> {
    let ring: FusionRing = match (from_md, rules, group) {
        (Some(p), _, _) => verlinde_fusion(&read_json::<ModularData>(p)?)?,
        (None, Some(r), Some(g)) => match r {
            Rules::Ty => ty_fusion_ring(g)?,
            Rules::Genty => gen_ty_fusion_ring(g)?,
            Rules::Genmp => gen_mp_fusion_ring(g)?,
        },
        _ => return Err(Error::InvalidArgument("give --from-md or --rules with --group".into())),
    };
    let report = check_fusion_ring(&ring);
    Ok(json!({ "ring": to_value(&ring), "report": to_value(&report) }))
}

fn equiv_cmd(a: &str, b: &str) -> Res<Value> {
    let (ma, mb): (ModularData, ModularData) = (read_json(a)?, read_json(b)?);
    Ok(match md_equivalent(&ma, &mb, &limits()?)? {
        None => json!({ "equivalent": false, "witness": Value::Null }),
        Some(w) => {
            let map: Vec<[String; 2]> =
                w.perm.iter().enumerate().map(|(i, &j)| [ma.labels()[i].to_string(), mb.labels()[j].to_string()]).collect();
            json!({ "equivalent": true, "witness": { "perm": w.perm, "zeta": to_value(&w.zeta), "map": map } })
        }
    })
}

fn condense_cmd(parent: &str, child: &str, bosons: &[Label]) -> Res<Value> {
    let (p, c): (ModularData, ModularData) = (read_json(parent)?, read_json(child)?);
    let cert = verify_condensation(&p, &c, bosons, &limits()?)?;
    Ok(json!({ "certificate": to_value(&cert) }))
}

fn hypergroup_cmd(g: &FinAbGroup, table: bool) -> Res<Value> {
    let mut out = json!({ "hypergroup": to_value(&ty_hypergroup(g)?) });
    if table {
        let (dual, t) = ty_dual_hypergroup_and_table(g)?;
        let approx: Vec<Vec<[f64; 2]>> =
            t.entries.iter().map(|row| row.iter().map(|x| x.to_complex()).map(|z| [z.re, z.im]).collect()).collect();
        out["dual"] = to_value(&dual);
        out["table"] = to_value(&t);
        out["table"]["approx"] = json!(approx);
        out["table"]["orthogonal"] = json!(t.is_orthogonal());
    }
    Ok(out)
}

fn run(cmd: Cmd) -> Res<Output> {
    Ok(match cmd {
        Cmd::Disc { lattice } => Output::Json(disc(&lattice)?),
        Cmd::Glue { lattice, isotropic } => Output::Json(glue_cmd(&lattice, &isotropic)?),
        Cmd::Classify { group } => Output::Json(classify(&group)?),
        Cmd::Md { kind, group, qform, bichar, sign } => {
            Output::Json(to_value(&md_cmd(kind, &group, qform.as_deref(), bichar.as_deref(), sign)?))
        }
        Cmd::Fusion { from_md, rules, group } => Output::Json(fusion_cmd(from_md.as_deref(), rules, group.as_ref())?),
        Cmd::Fs { md, label } => {
            let nu = bantay_fs(&read_json(&md)?, &label)?;
            Output::Json(json!({ "label": label.to_string(), "nu": nu }))
        }
        Cmd::Equiv { a, b } => Output::Json(equiv_cmd(&a, &b)?),
        Cmd::Condense { parent, child, bosons } => Output::Json(condense_cmd(&parent, &child, &bosons)?),
        Cmd::Graph { kind, group, dot } => {
            let (g, name) = match kind {
                GraphKind::LrPrincipal => (lr_principal_graph(&group)?, "lr_principal"),
                GraphKind::LrDual => (lr_dual_principal_graph(&group)?, "lr_dual"),
            };
            if dot {
                Output::Text(emit_dot(&g, name))
            } else {
                let mut v = to_value(&g);
                v["adjacency"] = json!(g.adjacency());
                Output::Json(v)
            }
        }
        Cmd::Hypergroup { group, table } => Output::Json(hypergroup_cmd(&group, table)?),
    })
}

/// Writes to stdout, treating a closed pipe as success.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(Output::Json(v)) => {
            emit(&format!("{}\n", serde_json::to_string_pretty(&v).expect("json")));
            ExitCode::SUCCESS
        }
        Ok(Output::Text(t)) => {
            emit(&t);
            ExitCode::SUCCESS
        }
        Err(e) => {
            let v = json!({ "error": { "kind": e.kind(), "message": e.message() } });
            emit(&format!("{}\n", serde_json::to_string_pretty(&v).expect("json")));
            eprintln!("tycat: {e}");
            ExitCode::from(1)
        }
    }
}
