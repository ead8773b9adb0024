mod svg;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ncpart::autos::{self, Orientation};
use ncpart::checks::{self, CheckReport, Status};
use ncpart::complex::{self, Chamber, ChamberComplex, Tag};
use ncpart::guard;
use ncpart::linalg::{gaussian_binomial, F2Subspace};
use ncpart::metric;
use ncpart::ncp::{self, NcLattice, Partition};
use ncpart::perm::{CoxType, Group};
use ncpart::trees;

#[derive(Parser)]
#[command(name = "ncpart", version, about = "Non-crossing partitions, their subspace embeddings and chamber complexes")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Raise the size guard for exhaustive computations.
    #[arg(long, global = true, value_name = "N")]
    max_n: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Element, apartment and chamber counts, closed form next to enumeration.
    Count {
        kind: CountKind,
        #[arg(long)]
        n: usize,
        #[arg(long = "type", value_parser = parse_type)]
        ty: Option<CoxType>,
    },
    /// Gallery distances of two chambers in the building, PN and NCP.
    Dist {
        #[arg(long)]
        n: usize,
        c: String,
        d: String,
        /// Also report convex hull sizes.
        #[arg(long)]
        hull: bool,
    },
    /// Chambers of the convex hull of two chambers.
    Hull {
        #[arg(long, value_parser = parse_tag, default_value = "ncp")]
        tag: Tag,
        #[arg(long)]
        n: usize,
        c: String,
        d: String,
    },
    /// Run a registered property check.
    Check {
        name: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long = "type", value_parser = parse_type)]
        ty: Option<CoxType>,
        #[arg(long)]
        p: Option<u32>,
        /// With `all`: the acceptance suite at its default sizes.
        #[arg(long)]
        small: bool,
    },
    /// Render a partition (`{1,3,4|2|5,6}`) or `hasse` as SVG.
    Draw {
        object: String,
        #[arg(long = "type", value_parser = parse_type, default_value = "A")]
        ty: CoxType,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value = "svg")]
        format: String,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Bipartition and automorphism groups of NC(W).
    Aut {
        #[arg(long = "type", value_parser = parse_type)]
        ty: CoxType,
        #[arg(long)]
        n: usize,
        /// Also search the full automorphism group.
        #[arg(long)]
        full: bool,
    },
    /// List objects.
    Enumerate {
        what: EnumKind,
        #[arg(long)]
        n: usize,
        #[arg(long = "type", value_parser = parse_type, default_value = "A")]
        ty: CoxType,
        #[arg(long, value_parser = parse_tag, default_value = "ncp")]
        tag: Tag,
    },
    /// Hurwitz graph statistics.
    Hurwitz {
        #[arg(long = "type", value_parser = parse_type)]
        ty: CoxType,
        #[arg(long)]
        n: usize,
    },
    /// Spherical edge lengths in the type A Coxeter complex.
    Metric {
        #[command(subcommand)]
        what: MetricCmd,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CountKind {
    Elements,
    Apartments,
    Chambers,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumKind {
    Nc,
    Ncp,
    Pn,
    Trees,
    NcTrees,
    Reflections,
    Chambers,
}

#[derive(Subcommand)]
enum MetricCmd {
    /// Length of the edge between rank i and rank j vertices.
    Edge { i: usize, j: usize, r: usize },
    /// The three-segment path through ranks x < y.
    Link { x: usize, y: usize, r: usize },
    /// Check all link paths up to rank r.
    Scan {
        #[arg(default_value_t = 12)]
        r: usize,
    },
    /// The two strands of the NCP5 witness.
    Strands,
}

fn parse_type(s: &str) -> Result<CoxType, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_tag(s: &str) -> Result<Tag, String> {
    s.parse().map_err(|e| format!("{e}"))
}

/// Command result: the text rendering, the JSON tree, and whether the
/// command counts as a success for the exit code.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn ok(text: String, json: Value) -> Output {
        Output { text, json, ok: true }
    }
}

fn enumerable(what: &str, n: usize, default: usize) -> bool {
    match guard::check(what, n, default) {
        Ok(()) => true,
        Err(e) => {
            eprintln!("warning: {e}; showing the closed form only");
            false
        }
    }
}

fn row(name: String, closed: u128, enumerated: Option<u128>) -> (String, Value) {
    let e = enumerated.map_or("skipped".to_string(), |v| v.to_string());
    let flag = match enumerated {
        Some(v) if v != closed => "  MISMATCH",
        _ => "",
    };
    (
        format!("{name:<12} closed={closed:<8} enumerated={e}{flag}"),
        json!({"name": name, "closed": closed.to_string(), "enumerated": enumerated.map(|v| v.to_string())}),
    )
}

fn finish(rows: Vec<(String, Value)>) -> Output {
    let ok = rows.iter().all(|(_, j)| j["enumerated"].is_null() || j["enumerated"] == j["closed"]);
    let (text, json): (Vec<String>, Vec<Value>) = rows.into_iter().unzip();
    Output { text: text.join("\n"), json: json!({ "rows": json }), ok }
}

fn cmd_count(kind: CountKind, n: usize, ty: Option<CoxType>) -> Result<Output> {
    if n == 0 {
        bail!("n must be positive");
    }
    let n32 = n as u32;
    let m = n - 1;
    let rows = match (kind, ty) {
        (CountKind::Elements, Some(ty)) => {
            let g = Group::new(ty, n)?;
            let enumerated =
                enumerable(&format!("NC({g})"), n, ncp::default_limit(ty)).then(|| NcLattice::build(g).len() as u128);
            vec![row(format!("NC({g})"), ncp::nc_cardinality(ty, n) as u128, enumerated)]
        }
        (CountKind::Elements, None) => {
            let lam_closed: u128 = (0..=m as u32).map(|k| gaussian_binomial(m as u32, k, 2)).sum();
            vec![
                row(
                    format!("NCP_{n}"),
                    ncp::catalan(n as u64) as u128,
                    enumerable("NCP", n, 10).then(|| ncp::noncrossing_set_partitions(n).len() as u128),
                ),
                row(format!("P_{n}"), ncp::bell(n) as u128, enumerable("P", n, 10).then(|| ncp::set_partitions(n).len() as u128)),
                row(
                    format!("Λ(F_2^{m})"),
                    lam_closed,
                    enumerable("Λ", n, 7).then(|| (0..=m).map(|k| F2Subspace::all_of_dim(m, k).len() as u128).sum()),
                ),
            ]
        }
        (CountKind::Apartments, _) => vec![
            row(
                format!("NCP_{n}"),
                trees::count_nc_spanning_trees(n as u64) as u128,
                enumerable("NCP apartments", n, 8).then(|| trees::nc_spanning_trees(n).len() as u128),
            ),
            row(
                format!("P_{n}"),
                trees::count_spanning_trees(n32) as u128,
                enumerable("P apartments", n, 8).then(|| trees::spanning_trees(n).len() as u128),
            ),
            row(
                format!("Λ(F_2^{m})"),
                complex::frame_count(m as u32),
                enumerable("frames", n, 6).then(|| complex::frames(m).len() as u128),
            ),
        ],
        (CountKind::Chambers, _) => Tag::ALL
            .iter()
            .rev()
            .map(|&tag| {
                let e = enumerable(&format!("{tag} chambers"), n, tag.default_limit())
                    .then(|| ChamberComplex::build(tag, n).len() as u128);
                row(format!("{tag}_{n}"), complex::chamber_count(tag, n32), e)
            })
            .collect(),
    };
    Ok(finish(rows))
}

fn chamber_arg(n: usize, s: &str) -> Result<Chamber> {
    Chamber::parse(n, s).with_context(|| format!("cannot parse chamber {s:?}"))
}

fn cmd_dist(n: usize, c: &str, d: &str, hull: bool) -> Result<Output> {
    let (c, d) = (chamber_arg(n, c)?, chamber_arg(n, d)?);
    let mut parts = vec![format!("d_building={}", c.building_distance(&d))];
    let mut obj = json!({ "d_building": c.building_distance(&d) });
    for tag in [Tag::Pn, Tag::Ncp] {
        let key = format!("d_{}", tag.to_string().to_lowercase());
        if !(c.in_tag(tag) && d.in_tag(tag)) {
            let why = c.check_tag(tag).and(d.check_tag(tag)).err().map(|e| e.to_string()).unwrap_or_default();
            parts.push(format!("{key}=-"));
            obj[&key] = Value::Null;
            obj[format!("{key}_reason")] = json!(why);
            continue;
        }
        let cx = ChamberComplex::new(tag, n)?;
        let (a, b) = (cx.locate(&c)?, cx.locate(&d)?);
        parts.push(format!("{key}={}", cx.distance(a, b)));
        obj[&key] = json!(cx.distance(a, b));
        if hull {
            let h = cx.convex_hull(a, b).len();
            parts.push(format!("hull_{}={h}", tag.to_string().to_lowercase()));
            obj[format!("hull_{}", tag.to_string().to_lowercase())] = json!(h);
        }
    }
    Ok(Output::ok(parts.join(" "), obj))
}

fn cmd_hull(tag: Tag, n: usize, c: &str, d: &str) -> Result<Output> {
    let (c, d) = (chamber_arg(n, c)?, chamber_arg(n, d)?);
    c.check_tag(tag)?;
    d.check_tag(tag)?;
    let cx = ChamberComplex::new(tag, n)?;
    let (a, b) = (cx.locate(&c)?, cx.locate(&d)?);
    let hull: Vec<String> = cx.convex_hull(a, b).into_iter().map(|i| cx.chamber(i).to_string()).collect();
    Ok(Output::ok(
        format!("{} chambers\n{}", hull.len(), hull.join("\n")),
        json!({"tag": tag.to_string(), "size": hull.len(), "chambers": hull}),
    ))
}

fn group_arg(ty: Option<CoxType>, n: Option<usize>, default: (CoxType, usize)) -> Result<Group> {
    Ok(Group::new(ty.unwrap_or(default.0), n.unwrap_or(default.1))?)
}

const REGISTRY: [&str; 9] = [
    "all",
    "criterion",
    "link-property",
    "antiauto-extension",
    "extension",
    "tables",
    "form-vanishing",
    "pn-distance",
    "embedding",
];

fn report(name: &'static str, params: String, failures: Vec<String>, notes: Vec<String>) -> CheckReport {
    let status = if failures.is_empty() { Status::Pass } else { Status::Fail };
    CheckReport { id: 0, name, params, status, details: failures.into_iter().chain(notes).collect() }
}

fn cmd_check(name: &str, n: Option<usize>, ty: Option<CoxType>, p: Option<u32>, _small: bool) -> Result<Vec<CheckReport>> {
    Ok(match name {
        "all" => checks::run_all(),
        "criterion" => {
            let id = n.context("criterion needs --n <id>")?;
            vec![checks::run(id).with_context(|| format!("no criterion {id}; ids are 1..={}", checks::NAMES.len()))?]
        }
        "link-property" => {
            let n = n.unwrap_or(5);
            let mut failures = Vec::new();
            let mut notes = Vec::new();
            for tag in [Tag::Ncp, Tag::Pn] {
                let v = complex::link_property_scan(n, tag)?;
                notes.push(format!("{tag}: {} violating vertices", v.len()));
                failures.extend(v.iter().map(|u| format!("{tag}: {u}")));
            }
            let mut r = report("link-property", format!("n={n}"), failures, notes);
            if n < 5 && r.status == Status::Fail {
                // the property is only claimed from n = 5 on
                r.status = Status::ReportOnly;
            }
            vec![r]
        }
        "antiauto-extension" => {
            let g = group_arg(ty, n, (CoxType::D, 4))?;
            let p = p.unwrap_or(if g.ty == CoxType::A { 2 } else { 3 });
            let l = NcLattice::new(g)?;
            let bad = autos::antiauto_extension_violations(&l, p)?;
            vec![report("antiauto-extension", format!("{g} p={p}"), bad.iter().map(|&i| l.fmt_elem(i)).collect(), vec![])]
        }
        "extension" => {
            let g = group_arg(ty, n, (CoxType::A, 4))?;
            let p = p.unwrap_or(if g.ty == CoxType::A { 2 } else { 3 });
            let l = NcLattice::new(g)?;
            let mut maps = autos::dihedral_group(&l)?;
            if g.ty == CoxType::D {
                maps.extend(autos::dihedral_star_group(&l)?);
            }
            let failures =
                maps.iter().filter_map(|phi| autos::extend_to_lambda(&l, phi, p).err()).map(|e| e.to_string()).collect();
            vec![report("extension", format!("{g} p={p}"), failures, vec![format!("{} automorphisms", maps.len())])]
        }
        "tables" => {
            let g = group_arg(ty, n, (CoxType::B, 4))?;
            let table: &[autos::TableBlock] = match g.ty {
                CoxType::B => &autos::TABLE_B,
                CoxType::D => &autos::TABLE_D,
                CoxType::A => bail!("the rank-2 tables cover types B and D"),
            };
            vec![report("tables", g.to_string(), autos::table_mismatches(&NcLattice::new(g)?, table), vec![])]
        }
        "form-vanishing" => {
            let g = group_arg(ty, n, (CoxType::B, 4))?;
            let bad = autos::form_violations(&NcLattice::new(g)?);
            vec![report(
                "form-vanishing",
                g.to_string(),
                bad.iter().map(|(s, t)| format!("{} ∈ sub({})", g.fmt_elem(s), g.fmt_elem(t))).collect(),
                vec![],
            )]
        }
        "pn-distance" => {
            let n = n.unwrap_or(5);
            let pn = ChamberComplex::new(Tag::Pn, n)?;
            let ch: Vec<Chamber> = pn.chambers().collect();
            let mut failures = Vec::new();
            for a in 0..pn.len() {
                let d = pn.bfs(a);
                for b in 0..pn.len() {
                    if d[b] as usize != ch[a].building_distance(&ch[b]) && failures.len() < 10 {
                        failures.push(format!("{} / {}", ch[a], ch[b]));
                    }
                }
            }
            vec![report("pn-distance", format!("n={n}"), failures, vec![format!("{} chambers", pn.len())])]
        }
        "embedding" => {
            let g = group_arg(ty, n, (CoxType::A, 5))?;
            let p = p.unwrap_or(if g.ty == CoxType::A { 2 } else { 3 });
            let l = NcLattice::new(g)?;
            let emb = ncpart::linalg::Embedding::new(g, p)?;
            let images: Vec<_> = l.elements().iter().map(|w| emb.embed(w)).collect();
            let mut failures = Vec::new();
            for i in 0..l.len() {
                if images[i].dim() != l.rank(i) {
                    failures.push(format!("rank mismatch at {}", l.fmt_elem(i)));
                }
                for j in 0..i {
                    if images[i] == images[j] {
                        failures.push(format!("collision {} / {}", l.fmt_elem(i), l.fmt_elem(j)));
                    }
                }
            }
            vec![report("embedding", format!("{g} p={p}"), failures, vec![])]
        }
        other => bail!("unknown check {other:?}; registered checks: {}", REGISTRY.join(", ")),
    })
}

fn cmd_draw(object: &str, ty: CoxType, n: Option<usize>, format: &str) -> Result<String> {
    if format != "svg" {
        bail!("only the svg format is supported");
    }
    if object == "hasse" {
        let g = Group::new(ty, n.context("hasse needs --n")?)?;
        return Ok(svg::hasse(&NcLattice::new(g)?));
    }
    let largest = object.split(|c: char| !c.is_ascii_digit()).filter_map(|t| t.parse::<usize>().ok()).max().unwrap_or(1);
    let pi = Partition::parse(ty, n.unwrap_or(largest), object)?;
    Ok(svg::partition(&pi))
}

fn group_counts(maps: &[autos::LatticeMap]) -> (usize, usize) {
    let auts = maps.iter().filter(|m| m.orientation == Orientation::Preserving).count();
    (auts, maps.len() - auts)
}

fn cmd_aut(ty: CoxType, n: usize, full: bool) -> Result<Output> {
    let g = Group::new(ty, n)?;
    let l = NcLattice::new(g)?;
    let b = autos::standard_bipartition(&g)?;
    let dih = autos::dihedral_group(&l)?;
    let skew = autos::skew_group(&l)?;
    let mut lines = vec![
        format!("c = {}", g.fmt_elem(&g.coxeter_element())),
        format!("l = {}", g.fmt_elem(&b.l)),
        format!("r = {}", g.fmt_elem(&b.r)),
        format!("|𝒟| = {}", dih.len()),
        format!("|𝒟̂| = {} ({} anti-automorphisms)", skew.len(), group_counts(&skew).1),
    ];
    let mut obj = json!({
        "group": g.to_string(),
        "coxeter_element": g.fmt_elem(&g.coxeter_element()),
        "l": g.fmt_elem(&b.l),
        "r": g.fmt_elem(&b.r),
        "dihedral": dih.len(),
        "skew": skew.len(),
    });
    if ty == CoxType::D {
        let star = autos::dihedral_star_group(&l)?;
        lines.push(format!("|𝒟*| = {}", star.len()));
        obj["dihedral_star"] = json!(star.len());
    }
    if full {
        let aut = autos::full_aut_group(&l)?;
        lines.push(format!("|Aut| = {}", aut.len()));
        obj["full"] = json!(aut.len());
    }
    Ok(Output::ok(lines.join("\n"), obj))
}

fn cmd_enumerate(what: EnumKind, n: usize, ty: CoxType, tag: Tag) -> Result<Output> {
    let items: Vec<String> = match what {
        EnumKind::Nc => {
            let l = NcLattice::new(Group::new(ty, n)?)?;
            (0..l.len()).map(|i| format!("{}\t{}\trank {}", l.fmt_elem(i), l.partition(i), l.rank(i))).collect()
        }
        EnumKind::Ncp => {
            guard::check("NCP enumeration", n, 10)?;
            ncp::noncrossing_set_partitions(n).iter().map(Partition::to_string).collect()
        }
        EnumKind::Pn => {
            guard::check("P enumeration", n, 9)?;
            ncp::set_partitions(n).iter().map(Partition::to_string).collect()
        }
        EnumKind::Trees => {
            guard::check("tree enumeration", n, 8)?;
            trees::spanning_trees(n).iter().map(ToString::to_string).collect()
        }
        EnumKind::NcTrees => {
            guard::check("tree enumeration", n, 9)?;
            trees::nc_spanning_trees(n).iter().map(ToString::to_string).collect()
        }
        EnumKind::Reflections => {
            let g = Group::new(ty, n)?;
            g.reflections().iter().map(|t| g.fmt_elem(t)).collect()
        }
        EnumKind::Chambers => ChamberComplex::new(tag, n)?.chambers().map(|c| c.to_string()).collect(),
    };
    Ok(Output::ok(items.join("\n"), json!({ "count": items.len(), "items": items })))
}

fn cmd_hurwitz(ty: CoxType, n: usize) -> Result<Output> {
    let g = Group::new(ty, n)?;
    let s = complex::hurwitz_stats(g)?;
    let bound = ncp::binomial(g.rank() as u64, 2);
    let ecc: Vec<String> = s.eccentricities.iter().map(|(e, k)| format!("{e}:{k}")).collect();
    Ok(Output {
        text: format!(
            "{g}: {} maximal chains, radius {}, diameter {}, bound binom(rank,2) = {bound}\neccentricities {}",
            s.chambers,
            s.radius,
            s.diameter,
            ecc.join(" ")
        ),
        json: json!({"group": g.to_string(), "chains": s.chambers, "radius": s.radius, "diameter": s.diameter, "bound": bound,
                     "eccentricities": s.eccentricities}),
        ok: s.radius as u64 >= bound,
    })
}

fn cmd_metric(what: MetricCmd) -> Result<Output> {
    let pi = std::f64::consts::PI;
    Ok(match what {
        MetricCmd::Edge { i, j, r } => {
            let len = metric::edge_length::<f64>(i, j, r)?;
            let cos2 = metric::edge_cos_squared::<i64>(i, j, r)?;
            Output::ok(
                format!("l({i},{j}) = {len:.15} = {:.6}π, cos² = {cos2}", len / pi),
                json!({"length": len, "cos_squared": cos2.to_string()}),
            )
        }
        MetricCmd::Link { x, y, r } => {
            let p = metric::opposite_link_path_length::<f64>(x, y, r)?;
            let exact = metric::exact_cos_sum::<i64>(x, y, r)?;
            Output::ok(
                format!(
                    "A = {:.12}, B = {:.12}, C = {:.12}, total − π = {:.3e}, exact cos(total) = {exact}",
                    p.a,
                    p.b,
                    p.c,
                    p.total - pi
                ),
                json!({"a": p.a, "b": p.b, "c": p.c, "total": p.total, "exact_cos": exact.to_string()}),
            )
        }
        MetricCmd::Scan { r } => {
            let bad = metric::scan_link_paths::<f64>(r, 1e-12);
            Output {
                text: if bad.is_empty() {
                    format!("all link paths up to r={r} have length π")
                } else {
                    format!("violations: {bad:?}")
                },
                json: json!({"r": r, "violations": bad}),
                ok: bad.is_empty(),
            }
        }
        MetricCmd::Strands => {
            let (g2, g3) = metric::example_strands::<f64>();
            Output::ok(
                format!("ℓ(γ2) = {:.6}π, ℓ(γ3) = {:.6}π, sum = {:.12}π", g2 / pi, g3 / pi, (g2 + g3) / pi),
                json!({"gamma2": g2, "gamma3": g3}),
            )
        }
    })
}

fn run(cli: Cli) -> Result<Output> {
    match cli.cmd {
        Cmd::Count { kind, n, ty } => cmd_count(kind, n, ty),
        Cmd::Dist { n, c, d, hull } => cmd_dist(n, &c, &d, hull),
        Cmd::Hull { tag, n, c, d } => cmd_hull(tag, n, &c, &d),
        Cmd::Check { name, n, ty, p, small } => {
            let reports = cmd_check(&name, n, ty, p, small)?;
            let ok = reports.iter().all(|r| r.status != Status::Fail);
            let text = reports.iter().map(ToString::to_string).collect::<Vec<_>>().join("\n");
            Ok(Output { text, json: serde_json::to_value(&reports)?, ok })
        }
        Cmd::Draw { object, ty, n, format, out } => {
            let svg = cmd_draw(&object, ty, n, &format)?;
            match out {
                Some(path) => {
                    fs::write(&path, &svg).with_context(|| format!("cannot write {}", path.display()))?;
                    Ok(Output::ok(format!("wrote {}", path.display()), json!({"path": path})))
                }
                None => Ok(Output::ok(svg.trim_end().to_string(), json!({ "svg": svg }))),
            }
        }
        Cmd::Aut { ty, n, full } => cmd_aut(ty, n, full),
        Cmd::Enumerate { what, n, ty, tag } => cmd_enumerate(what, n, ty, tag),
        Cmd::Hurwitz { ty, n } => cmd_hurwitz(ty, n),
        Cmd::Metric { what } => cmd_metric(what),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.max_n {
        eprintln!("warning: size guards raised to n = {n}; exhaustive computations may take very long");
        std::env::set_var(guard::ENV_VAR, n.to_string());
    }
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("values serialize"));
            } else {
                println!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
