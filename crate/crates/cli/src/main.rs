//! `rootfacet` command line: roots, facets, triangulations, verification suites and
//! the boundary inventory of a root polytope.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use rootfacet::crossing::laws::{accumulate, ideal_laws, root_laws, LawReport};
use rootfacet::ideals::{enumerate_abelian_ideals, facet_ideal, facet_ideals, facet_json, order_involution};
use rootfacet::triangulate::{
    maximal_reduced_subsets, simplex_det, triangulation_order, verify_order, verify_triangulation, VerifyOptions,
};
use rootfacet::weyl::boundary_inventory;
use rootfacet::{rational_string, Error, FacetIdeal, RootSystem, RootSystemSpec};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "rootfacet", version, about = "Root polytope facets and their unimodular triangulations")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// List the positive roots.
    Roots(Common),
    /// List the facet ideals of the standard parabolic facets.
    Facets(Common),
    /// Enumerate the maximal reduced subsets of facet ideals.
    Triangulate(FacetArgs),
    /// Run verification suites; exits 1 if any check fails.
    Verify(VerifyArgs),
    /// Boundary inventory: facet orbits and simplex counts.
    Volume(Common),
}

#[derive(Args)]
struct Common {
    /// Family letter and rank, e.g. `E7`.
    #[arg(long)]
    system: RootSystemSpec,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct FacetArgs {
    #[command(flatten)]
    common: Common,
    /// Simple root index (1-based, Bourbaki) or `all`.
    #[arg(long, default_value = "all")]
    facet: FacetSel,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    facets: FacetArgs,
    /// Cap on pairwise common-face checks above rank 6.
    #[arg(long, default_value_t = 10_000)]
    max_pairs: usize,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Crossing,
    Triangulation,
    Order,
    Lemmas,
}

#[derive(Clone, Copy)]
enum FacetSel {
    All,
    One(usize),
}

impl std::str::FromStr for FacetSel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(FacetSel::All);
        }
        match s.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(FacetSel::One(k)),
            _ => Err(format!("expected a 1-based index or `all`, got `{s}`")),
        }
    }
}

/// A report in all three renderings.
struct Output {
    json: Value,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    summary: String,
    ok: bool,
}

fn usage_error(msg: impl std::fmt::Display) -> ! {
    Cli::command().error(clap::error::ErrorKind::ValueValidation, msg).exit()
}

fn selected_facets(rs: &RootSystem, sel: FacetSel) -> Vec<FacetIdeal> {
    let out = match sel {
        FacetSel::All => facet_ideals(rs),
        FacetSel::One(k) if k <= rs.rank() => facet_ideal(rs, k - 1).map(|f| vec![f]),
        FacetSel::One(k) => usage_error(format!("--facet {k} exceeds the rank of {}", rs.name())),
    };
    match out {
        Ok(v) => v,
        Err(Error::UnknownFacet(a)) => usage_error(format!("α{a} does not give a facet of {}", rs.name())),
        Err(e) => usage_error(e),
    }
}

fn vec_str(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

fn verdict(ok: bool) -> String {
    if ok { "pass" } else { "fail" }.to_string()
}

fn roots(rs: &RootSystem) -> Output {
    let list: Vec<Value> = rs
        .positive_roots()
        .iter()
        .enumerate()
        .map(|(i, r)| json!({"index": i, "coeffs": r.coeffs(), "height": r.height(), "len2": r.len2()}))
        .collect();
    let rows = rs
        .positive_roots()
        .iter()
        .enumerate()
        .map(|(i, r)| vec![i.to_string(), vec_str(r.coeffs()), r.height().to_string(), r.len2().to_string()])
        .collect();
    Output {
        json: json!({"system": rs.name(), "count": rs.num_positive(), "theta": rs.theta().coeffs(), "roots": list}),
        header: vec!["index", "coeffs", "height", "len2"],
        rows,
        summary: format!("{}: {} positive roots", rs.name(), rs.num_positive()),
        ok: true,
    }
}

fn facets(rs: &RootSystem) -> Output {
    let fs = selected_facets(rs, FacetSel::All);
    let rows = fs
        .iter()
        .map(|f| {
            vec![
                (f.alpha() + 1).to_string(),
                f.mark().to_string(),
                f.nil_type().to_string(),
                f.members().len().to_string(),
                vec_str(rs.coeffs(f.mu())),
            ]
        })
        .collect();
    Output {
        json: json!({"system": rs.name(), "facets": fs.iter().map(|f| facet_json(rs, f)).collect::<Vec<_>>()}),
        header: vec!["alpha", "mark", "type", "size", "mu"],
        rows,
        summary: format!("{}: {} facet ideals", rs.name(), fs.len()),
        ok: true,
    }
}

fn triangulate(rs: &RootSystem, sel: FacetSel) -> Result<Output, Error> {
    let fs = selected_facets(rs, sel);
    let per: Vec<(Value, Vec<Vec<String>>)> = fs
        .par_iter()
        .map(|f| {
            let sets = maximal_reduced_subsets(rs, f)?;
            let dets = sets.iter().map(|r| simplex_det(rs, f, &r.members)).collect::<Result<Vec<_>, _>>()?;
            let simplices: Vec<Vec<Vec<i64>>> =
                sets.iter().map(|r| r.members.iter().map(|&i| rs.coeffs(i).to_vec()).collect()).collect();
            let rows = simplices
                .iter()
                .zip(&dets)
                .enumerate()
                .map(|(k, (s, d))| {
                    let roots: Vec<String> = s.iter().map(|c| vec_str(c)).collect();
                    vec![(f.alpha() + 1).to_string(), k.to_string(), d.to_string(), roots.join("; ")]
                })
                .collect();
            let j = json!({
                "alpha": f.alpha() + 1,
                "type": f.nil_type().to_string(),
                "simplex_count": sets.len(),
                "simplices": simplices,
                "dets": dets,
            });
            Ok((j, rows))
        })
        .collect::<Result<_, Error>>()?;
    let total: usize = per.iter().map(|(_, r)| r.len()).sum();
    Ok(Output {
        json: json!({"system": rs.name(), "facets": per.iter().map(|(j, _)| j.clone()).collect::<Vec<_>>()}),
        header: vec!["alpha", "simplex", "det", "roots"],
        rows: per.into_iter().flat_map(|(_, r)| r).collect(),
        summary: format!("{}: {} simplices over {} facet(s)", rs.name(), total, fs.len()),
        ok: true,
    })
}

fn law_rows(suite: &str, laws: &[LawReport]) -> Vec<Vec<String>> {
    laws.iter()
        .map(|l| {
            let detail = format!("checked={} counterexamples={}", l.checked, l.counterexamples.len());
            vec![suite.to_string(), l.law.to_string(), detail, verdict(l.passed())]
        })
        .collect()
}

/// Laws over every abelian ideal, or over the facet ideals alone above the enumeration
/// guard. Returns the scope used.
fn crossing_laws(rs: &RootSystem) -> Result<(Vec<LawReport>, &'static str), Error> {
    let (ideals, scope) = match enumerate_abelian_ideals(rs) {
        Ok(v) => (v, "abelian ideals"),
        Err(Error::RankGuardExceeded { .. }) => {
            (facet_ideals(rs)?.into_iter().map(|f| f.ideal().clone()).collect(), "facet ideals")
        }
        Err(e) => return Err(e),
    };
    let per = ideals.par_iter().map(|i| ideal_laws(rs, i)).collect::<Result<Vec<_>, _>>()?;
    let mut acc = Vec::new();
    for p in per {
        accumulate(&mut acc, p);
    }
    Ok((acc, scope))
}

fn verify(rs: &RootSystem, args: &VerifyArgs) -> Result<Output, Error> {
    let suite = args.suite;
    let fs = selected_facets(rs, args.facets.facet);
    let mut rows = Vec::new();
    let mut ok = true;
    let mut out = serde_json::Map::new();
    out.insert("system".into(), json!(rs.name()));
    out.insert("suite".into(), json!(suite.to_possible_value().unwrap().get_name()));

    if matches!(suite, Suite::All | Suite::Triangulation) {
        let opts = VerifyOptions { max_pairs: args.max_pairs, check_order: suite == Suite::All, ..Default::default() };
        let reps = fs.par_iter().map(|f| verify_triangulation(rs, f, &opts)).collect::<Result<Vec<_>, _>>()?;
        for r in &reps {
            ok &= r.passed();
            let order = match r.order_passed() {
                Some(true) => "pass",
                Some(false) => "fail",
                None => "skipped",
            };
            let detail = format!(
                "simplices={} volume={} unimodular={} pairs={}/{} failed={} order={}",
                r.simplex_count,
                r.oracle_volume,
                r.unimodular(),
                r.pairs_checked,
                r.pairs_total,
                r.pairs_failed,
                order
            );
            rows.push(vec!["triangulation".into(), format!("α{} {}", r.alpha, r.nil_type), detail, verdict(r.passed())]);
        }
        out.insert("facets".into(), Value::Array(reps.iter().map(|r| r.json()).collect()));
    }
    if suite == Suite::Order {
        let verdicts = fs
            .par_iter()
            .map(|f| Ok((f, triangulation_order(rs, f)?)))
            .collect::<Result<Vec<_>, Error>>()?
            .into_par_iter()
            .map(|(f, cert)| {
                let v = verify_order(rs, f, &cert);
                (f, cert, v)
            })
            .collect::<Vec<_>>();
        let mut list = Vec::new();
        for (f, cert, v) in &verdicts {
            ok &= v.passed();
            let failures = v.failures();
            let detail = format!("steps={} failed_checks={}", cert.steps.len(), failures.join(" | "));
            rows.push(vec!["order".into(), format!("α{} {}", f.alpha() + 1, f.nil_type()), detail, verdict(v.passed())]);
            list.push(json!({
                "alpha": f.alpha() + 1,
                "type": f.nil_type().to_string(),
                "certificate": cert.json(rs),
                "failed_checks": failures,
                "verdict": verdict(v.passed()),
            }));
        }
        out.insert("orders".into(), Value::Array(list));
    }
    let mut laws = Vec::new();
    if matches!(suite, Suite::All | Suite::Lemmas) {
        let mut r = root_laws(rs);
        let mut inv = LawReport { law: "order_involution", checked: 0, counterexamples: Vec::new() };
        for f in &fs {
            inv.checked += 1;
            if let Err(e) = order_involution(rs, &[f.alpha()]) {
                inv.counterexamples.push(format!("α{}: {e}", f.alpha() + 1));
            }
        }
        r.push(inv);
        rows.extend(law_rows("lemmas", &r));
        laws.extend(r);
    }
    if matches!(suite, Suite::All | Suite::Crossing) {
        let (r, scope) = crossing_laws(rs)?;
        out.insert("crossing_scope".into(), json!(scope));
        rows.extend(law_rows("crossing", &r));
        laws.extend(r);
    }
    if !laws.is_empty() {
        ok &= laws.iter().all(LawReport::passed);
        out.insert("laws".into(), serde_json::to_value(&laws).expect("law reports serialize"));
    }
    out.insert("verdict".into(), json!(verdict(ok)));
    let failed = rows.iter().filter(|r| r[3] == "fail").count();
    Ok(Output {
        json: Value::Object(out),
        header: vec!["suite", "subject", "detail", "verdict"],
        summary: format!("{}: {} checks, {} failed", rs.name(), rows.len(), failed),
        rows,
        ok,
    })
}

fn volume(rs: &RootSystem) -> Result<Output, Error> {
    let inv = boundary_inventory(rs)?;
    let rows = inv
        .orbits
        .iter()
        .map(|o| {
            vec![
                o.alpha.to_string(),
                o.nil_type.clone(),
                o.orbit_size.to_string(),
                o.simplices_per_facet.to_string(),
                o.simplex_count().to_string(),
                rational_string(&o.gram_det),
                o.transport_ok.to_string(),
            ]
        })
        .collect();
    let ok = inv.orbits.iter().all(|o| o.transport_ok);
    Ok(Output {
        json: serde_json::to_value(&inv).expect("inventory serializes"),
        header: vec!["alpha", "type", "orbit_size", "simplices_per_facet", "simplices", "gram_det", "transport_ok"],
        rows,
        summary: format!(
            "{}: {} boundary simplices, volume ≈ {:.6} (approximate)",
            inv.system, inv.total_simplices, inv.approximate_volume
        ),
        ok,
    })
}

fn render(out: &Output, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&out.json).expect("json") + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&out.header).expect("csv");
            for r in &out.rows {
                w.write_record(r).expect("csv");
            }
            String::from_utf8(w.into_inner().expect("csv")).expect("utf-8")
        }
        Format::Text => {
            let widths: Vec<usize> = (0..out.header.len())
                .map(|c| {
                    out.rows.iter().map(|r| r[c].chars().count()).chain([out.header[c].len()]).max().unwrap_or(0)
                })
                .collect();
            let mut s = String::new();
            let line = |s: &mut String, cells: &[&str]| {
                let padded: Vec<String> =
                    cells.iter().zip(&widths).map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
                let _ = writeln!(s, "{}", padded.join("  ").trim_end());
            };
            line(&mut s, &out.header);
            for r in &out.rows {
                line(&mut s, &r.iter().map(String::as_str).collect::<Vec<_>>());
            }
            let _ = writeln!(s, "{}", out.summary);
            s
        }
    }
}

fn init_threads() {
    let Ok(v) = std::env::var("RPT_THREADS") else { return };
    match v.trim().parse::<usize>() {
        Ok(n) if n >= 1 => {
            rayon::ThreadPoolBuilder::new().num_threads(n).build_global().expect("thread pool is set once");
        }
        _ => usage_error(format!("RPT_THREADS must be an integer ≥ 1, got `{v}`")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    let (result, format) = match &cli.verb {
        Verb::Roots(c) => (Ok(roots(&RootSystem::new(c.system))), c.format),
        Verb::Facets(c) => (Ok(facets(&RootSystem::new(c.system))), c.format),
        Verb::Triangulate(a) => (triangulate(&RootSystem::new(a.common.system), a.facet), a.common.format),
        Verb::Verify(a) => (verify(&RootSystem::new(a.facets.common.system), a), a.facets.common.format),
        Verb::Volume(c) => (volume(&RootSystem::new(c.system)), c.format),
    };
    match result {
        Ok(out) => {
            print!("{}", render(&out, format));
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
