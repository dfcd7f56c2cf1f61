//! `alcove` — command-line front end for `alcove-core`.
//!
//! Every subcommand builds one [`Report`]: a JSON `result` and a text rendering
//! produced from the same values. Exit status is 0 on success, 2 for bad input
//! and 3 when a resource cap is hit.

use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use alcove_core::centralizer::{centralizer_tuple, format_factors};
use alcove_core::diagram::{self, CenterElement};
use alcove_core::enumerate::{self, FaceRule, COMPONENT_CHAIN_BUDGET};
use alcove_core::intlat;
use alcove_core::moduli::{self, TorsionLevel};
use alcove_core::weyl::WeylElement;
use alcove_core::{Caps, Error, Exec, RationalVector, RootSystem, SimpleType};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "alcove",
    version,
    about = "Exact root-system, alcove and centralizer computations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest Weyl group the command may enumerate.
    #[arg(long, global = true, default_value_t = Caps::default().weyl)]
    weyl_cap: u128,
    /// Largest number of torsion pairs a direct count may visit.
    #[arg(long, global = true, default_value_t = Caps::default().pairs)]
    pair_cap: u128,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Cartan data, marks, comarks, center and extended diagram.
    Info {
        #[arg(value_parser = parse_type)]
        r#type: SimpleType,
    },
    /// Centralizer of a commuting tuple of torus points.
    Centralizer {
        #[arg(value_parser = parse_type)]
        r#type: SimpleType,
        /// Points in coweight coordinates, e.g. "1/2,0;0,1/3".
        #[arg(long)]
        points: String,
    },
    /// Maximal-rank subsystems from prime-mark deletions.
    Bds {
        #[arg(value_parser = parse_type)]
        r#type: SimpleType,
        /// Iterate deletions and list the whole tree.
        #[arg(long)]
        all: bool,
    },
    /// Centralizer types of single elements, one per alcove face class.
    Types {
        #[arg(value_parser = parse_type)]
        r#type: SimpleType,
    },
    /// Longest irredundant centralizer chain and a witness.
    Chains {
        #[arg(value_parser = parse_type)]
        r#type: SimpleType,
        /// Also count steps inside non-identity components.
        #[arg(long)]
        component_steps: bool,
        /// Restrict steps to vertices and central edges.
        #[arg(long, conflicts_with = "component_steps")]
        vertex_only: bool,
        /// Face-evaluation budget for --component-steps.
        #[arg(long, default_value_t = COMPONENT_CHAIN_BUDGET)]
        budget: u128,
    },
    /// Number of conjugacy classes of commuting pairs of order dividing m.
    Moduli {
        #[arg(value_parser = parse_type)]
        r#type: SimpleType,
        #[arg(long)]
        level: u32,
        /// Cross-check Burnside with a direct orbit count.
        #[arg(long)]
        direct: bool,
    },
    /// Fixed face of the alcove under a central element.
    Cpair {
        #[arg(value_parser = parse_type)]
        r#type: SimpleType,
        /// Special node naming the central element (0 is the identity).
        #[arg(long)]
        center: usize,
    },
    /// Quotient of the extended A_n diagram by its order-k rotations.
    Fold {
        #[arg(value_parser = parse_type)]
        r#type: SimpleType,
        #[arg(long)]
        k: usize,
    },
}

fn parse_type(s: &str) -> Result<SimpleType, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

struct Report {
    command: &'static str,
    simple_type: SimpleType,
    result: Value,
    text: String,
}

impl Report {
    fn json(&self) -> String {
        let doc = json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "type": self.simple_type,
            "result": self.result,
        });
        serde_json::to_string_pretty(&doc).expect("reports serialize")
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

fn group_text(g: &intlat::FiniteAbelianGroup) -> String {
    g.to_string()
}

fn parse_points(s: &str) -> alcove_core::Result<Vec<RationalVector>> {
    let pts: Vec<RationalVector> = s.split(';').map(str::parse).collect::<alcove_core::Result<_>>()?;
    if pts.is_empty() {
        return Err(Error::InvalidInput("no points given".into()));
    }
    Ok(pts)
}

fn info(t: SimpleType) -> Report {
    let rs = RootSystem::build(t);
    let center = intlat::center(&rs);
    let ed = diagram::extended_diagram(&rs);
    let automorphisms = diagram::automorphism_group(&ed).len();
    let special = diagram::special_nodes(&rs);
    let mut text = String::new();
    writeln!(text, "type: {t}").unwrap();
    writeln!(text, "rank: {}", rs.rank()).unwrap();
    writeln!(text, "roots: {}", rs.roots().len()).unwrap();
    writeln!(text, "weyl order: {}", t.weyl_order()).unwrap();
    writeln!(text, "coxeter number: {}", t.coxeter_number()).unwrap();
    writeln!(text, "dual coxeter number: {}", t.dual_coxeter_number()).unwrap();
    writeln!(text, "cartan:").unwrap();
    for row in rs.cartan() {
        writeln!(text, "  {}", join(row)).unwrap();
    }
    writeln!(text, "highest root: {}", join(rs.highest_root())).unwrap();
    writeln!(text, "marks: {}", join(rs.marks())).unwrap();
    writeln!(text, "comarks: {}", join(rs.comarks())).unwrap();
    writeln!(text, "center: {} {:?}", group_text(&center), center.invariant_factors()).unwrap();
    writeln!(text, "special nodes: {}", join(&special)).unwrap();
    writeln!(text, "diagram automorphisms: {automorphisms}").unwrap();
    Report {
        command: "info",
        simple_type: t,
        result: json!({
            "root_system": to_value(&rs),
            "root_count": rs.roots().len(),
            "weyl_order": t.weyl_order().to_string(),
            "coxeter_number": t.coxeter_number(),
            "dual_coxeter_number": t.dual_coxeter_number(),
            "center": center,
            "special_nodes": special,
            "diagram": ed,
            "automorphism_count": automorphisms,
        }),
        text,
    }
}

fn factors_text(f: &[SimpleType]) -> String {
    if f.is_empty() {
        "-".into()
    } else {
        format_factors(f)
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn centralizer(t: SimpleType, points: &str, caps: &Caps) -> alcove_core::Result<Report> {
    let rs = RootSystem::build(t);
    let pts = parse_points(points)?;
    let d = centralizer_tuple(&rs, &pts, caps)?;
    let label = d.subsystem.label();
    let mut text = String::new();
    writeln!(text, "centralizer: {label}").unwrap();
    writeln!(text, "factors: {}", factors_text(&d.subsystem.factors)).unwrap();
    writeln!(text, "torus rank: {}", d.torus_rank).unwrap();
    writeln!(text, "roots: {}", d.subsystem.root_count).unwrap();
    writeln!(text, "component group: {}", group_text(&d.component_group)).unwrap();
    writeln!(text, "pi1 of derived group: {}", group_text(&d.lattice_quotient)).unwrap();
    for s in &d.stages {
        let reading = s.quotient_reading.map_or("-".to_string(), |r| r.to_string());
        writeln!(
            text,
            "stage {}: point ({}) -> {} torus {} pi0 {} reading {}{}",
            s.stage,
            s.point,
            format_factors(&s.factors),
            s.torus_rank,
            group_text(&s.component_group),
            reading,
            if s.discrepancy { " DISCREPANCY" } else { "" }
        )
        .unwrap();
    }
    let mut result = to_value(&d);
    result["label"] = json!(label);
    Ok(Report {
        command: "centralizer",
        simple_type: t,
        result,
        text,
    })
}

fn bds(t: SimpleType, all: bool) -> alcove_core::Result<Report> {
    let rs = RootSystem::build(t);
    let mut text = String::new();
    let mut rows = Vec::new();
    if all {
        for (i, n) in enumerate::bds_all(&rs)?.iter().enumerate() {
            let parent = n.parent.map_or("-".into(), |p| p.to_string());
            writeln!(
                text,
                "{i}: {} (depth {}, parent {parent}, pi1 {})",
                n.subsystem.label(),
                n.depth,
                group_text(&n.lattice_quotient)
            )
            .unwrap();
            rows.push(json!({
                "label": n.subsystem.label(),
                "factors": n.subsystem.factors,
                "root_count": n.subsystem.root_count,
                "lattice_quotient": n.lattice_quotient,
                "depth": n.depth,
                "parent": n.parent,
                "deleted": n.deleted,
            }));
        }
    } else {
        for s in enumerate::bds_maximal(&rs)? {
            let (_, pi1) = enumerate::subsystem_key(&rs, &s)?;
            writeln!(text, "{} (roots {}, pi1 {})", s.label(), s.root_count, group_text(&pi1)).unwrap();
            rows.push(json!({
                "label": s.label(),
                "factors": s.factors,
                "root_count": s.root_count,
                "lattice_quotient": pi1,
            }));
        }
    }
    Ok(Report {
        command: "bds",
        simple_type: t,
        result: json!({ "all": all, "subsystems": rows }),
        text,
    })
}

fn types(t: SimpleType, caps: &Caps) -> alcove_core::Result<Report> {
    let rs = RootSystem::build(t);
    let list = enumerate::centralizer_types(&rs, caps)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for c in &list {
        writeln!(text, "{} at ({}) vertices {}", c.label, c.point, join(&c.vertices)).unwrap();
        rows.push(json!({
            "label": c.label,
            "vertices": c.vertices,
            "point": c.point,
            "factors": c.descriptor.subsystem.factors,
            "torus_rank": c.descriptor.torus_rank,
            "root_count": c.descriptor.subsystem.root_count,
        }));
    }
    writeln!(text, "count: {}", list.len()).unwrap();
    Ok(Report {
        command: "types",
        simple_type: t,
        result: json!({ "count": list.len(), "types": rows }),
        text,
    })
}

fn chains(
    t: SimpleType,
    component_steps: bool,
    vertex_only: bool,
    budget: u128,
    caps: &Caps,
) -> alcove_core::Result<Report> {
    let rs = RootSystem::build(t);
    let bound = if component_steps {
        enumerate::max_chain_with_components(&rs, caps, budget)?
    } else if vertex_only {
        enumerate::max_chain(&rs, FaceRule::VerticesAndCentralEdges, caps)?
    } else {
        enumerate::max_chain(&rs, FaceRule::AllFaces, caps)?
    };
    let mut text = String::new();
    writeln!(text, "m: {}", bound.m).unwrap();
    for node in &bound.witness {
        let point = node
            .point
            .as_ref()
            .map_or("(component step)".to_string(), |p| format!("({p})"));
        writeln!(
            text,
            "  {}: {} {point} pi0 {}",
            node.depth,
            node.label,
            group_text(&node.component_group)
        )
        .unwrap();
    }
    Ok(Report {
        command: "chains",
        simple_type: t,
        result: to_value(&bound),
        text,
    })
}

fn moduli_cmd(t: SimpleType, level: u32, direct: bool, caps: &Caps) -> alcove_core::Result<Report> {
    let rs = RootSystem::build(t);
    let m = TorsionLevel::new(level)?;
    let burnside = moduli::count_pairs_burnside(&rs, m, caps, Exec::Parallel)?;
    let mut text = format!("burnside count: {burnside}\n");
    let mut result = json!({ "level": level, "burnside_count": burnside.to_string() });
    if direct {
        let d = moduli::count_pairs_direct(&rs, m, caps, Exec::Parallel)?;
        writeln!(text, "direct count: {d}").unwrap();
        result["direct_count"] = json!(d.to_string());
    }
    Ok(Report {
        command: "moduli",
        simple_type: t,
        result,
        text,
    })
}

fn matrix_text(w: &WeylElement) -> String {
    w.matrix.iter().map(|r| join(r)).collect::<Vec<_>>().join("; ")
}

fn cpair(t: SimpleType, center: usize) -> alcove_core::Result<Report> {
    let rs = RootSystem::build(t);
    let c = CenterElement::new(&rs, center)?;
    let d = moduli::cpair_fixed_space(&rs, c)?;
    let mut text = String::new();
    writeln!(text, "center node: {}", d.c).unwrap();
    writeln!(text, "order: {}", d.order).unwrap();
    writeln!(text, "w_c: {}", matrix_text(&d.w_c)).unwrap();
    writeln!(text, "delta_c: {}", join(&d.delta_c)).unwrap();
    writeln!(text, "permutation: {}", join(&d.permutation)).unwrap();
    writeln!(text, "dim: {}", d.dim).unwrap();
    writeln!(text, "basepoint: ({})", d.basepoint).unwrap();
    for v in &d.vertices {
        writeln!(text, "vertex: ({v})").unwrap();
    }
    Ok(Report {
        command: "cpair",
        simple_type: t,
        result: to_value(&d),
        text,
    })
}

fn fold(t: SimpleType, k: usize) -> alcove_core::Result<Report> {
    let rs = RootSystem::build(t);
    let f = diagram::fold_cyclic(&rs, k)?;
    let mut text = String::new();
    writeln!(text, "k = {}, l = {}", f.k, f.l).unwrap();
    writeln!(text, "factors: {}", factors_text(&f.factors)).unwrap();
    writeln!(text, "torus rank: {}", f.torus_rank).unwrap();
    writeln!(text, "rotation order: {}", f.rotation_order).unwrap();
    writeln!(text, "rotation: {}", join(&f.rotation.0)).unwrap();
    writeln!(text, "fixed face dim: {}", f.fixed_space_dim).unwrap();
    Ok(Report {
        command: "fold",
        simple_type: t,
        result: to_value(&f),
        text,
    })
}

fn run(cli: &Cli) -> alcove_core::Result<Report> {
    let caps = Caps {
        weyl: cli.weyl_cap,
        pairs: cli.pair_cap,
    };
    match &cli.command {
        Command::Info { r#type } => Ok(info(*r#type)),
        Command::Centralizer { r#type, points } => centralizer(*r#type, points, &caps),
        Command::Bds { r#type, all } => bds(*r#type, *all),
        Command::Types { r#type } => types(*r#type, &caps),
        Command::Chains {
            r#type,
            component_steps,
            vertex_only,
            budget,
        } => chains(*r#type, *component_steps, *vertex_only, *budget, &caps),
        Command::Moduli { r#type, level, direct } => moduli_cmd(*r#type, *level, *direct, &caps),
        Command::Cpair { r#type, center } => cpair(*r#type, *center),
        Command::Fold { r#type, k } => fold(*r#type, *k),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let out = match cli.format {
                Format::Json => report.json() + "\n",
                Format::Text => report.text,
            };
            // a closed pipe (e.g. `| head`) is not an error worth reporting
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource() { 3 } else { 2 })
        }
    }
}
