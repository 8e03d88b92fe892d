//! The `nd` command line.
//!
//! Exit codes: 0 when the command succeeds or the property holds, 1 when a
//! property is checked and found false (axiom failure, rejected proof,
//! non-isomorphic tables), 2 on usage, parse or IO errors.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::construct::{dickson_near_field, galois_field, DicksonSpec, FieldSpec};
use crate::enumerate::{enumerate_near_domains, verify_all_near_fields, SearchConfig};
use crate::permaction::{
    affine_group, coordinatize, find_isomorphism, involution_translation_analysis,
    is_sharply_2_transitive, permutation_characteristic, point_stabilizer, split_check, PermError,
    PermGroup,
};
use crate::tables::{check_near_domain, Element, NearDomain, NearDomainTable, TableError};
use crate::verify::{check_derivation, parse_derivation};

#[derive(Debug, Parser)]
#[command(
    name = "nd",
    version,
    about = "Near-domains, near-fields and sharply 2-transitive groups"
)]
struct Cli {
    /// Print one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct OutArg {
    /// Write the result to a file instead of standard output.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Construct {
    /// Galois field GF(p^n).
    Gf {
        p: u64,
        n: u32,
        /// Monic modulus coefficients c0,c1,...,cn.
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u64>>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Dickson near-field of order q^2.
    Dickson {
        q: u64,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a table.
    #[command(subcommand)]
    Construct(Construct),
    /// Check the near-domain axioms.
    Check { table: PathBuf },
    /// The coefficient d(a, b).
    D {
        table: PathBuf,
        a: Element,
        b: Element,
    },
    /// The set E = { d : 1 + d = d + 1 }.
    E { table: PathBuf },
    /// Additive order of 1.
    Char { table: PathBuf },
    /// Check the d-coefficient identities exhaustively.
    Kerby { table: PathBuf },
    /// The affine group { x -> a + b x }.
    Aff {
        table: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Check sharp 2-transitivity.
    Check2t { group: PathBuf },
    /// Look for a regular normal subgroup.
    Split { group: PathBuf },
    /// Stabilizer of a point.
    Stab { group: PathBuf, point: usize },
    /// Recover a near-domain from a sharply 2-transitive group.
    Coordinatize {
        group: PathBuf,
        #[arg(long)]
        zero: usize,
        #[arg(long)]
        one: usize,
        #[command(flatten)]
        out: OutArg,
    },
    /// Decide isomorphism of two tables.
    Iso { first: PathBuf, second: PathBuf },
    /// Enumerate near-domains of order n.
    Search {
        n: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Only this multiplicative group (C4, C2xC2, S3, Q8, ...).
        #[arg(long)]
        group: Option<String>,
        /// Write each table found to this directory.
        #[arg(long, value_name = "DIR")]
        emit: Option<PathBuf>,
    },
    /// Check a derivation script.
    Prove {
        script: PathBuf,
        #[arg(long)]
        trace: bool,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    holds: bool,
    text: String,
    json: Value,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report {
            holds: true,
            text,
            json,
        }
    }

    fn verdict(holds: bool, text: String, json: Value) -> Self {
        Report { holds, text, json }
    }
}

type Fallible<T> = Result<T, String>;

fn read(path: &Path) -> Fallible<String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn write(path: &Path, text: &str) -> Fallible<()> {
    fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn load_table(path: &Path) -> Fallible<NearDomainTable> {
    read(path)?
        .parse()
        .map_err(|e: TableError| format!("{}: {e}", path.display()))
}

fn load_group(path: &Path) -> Fallible<PermGroup> {
    read(path)?
        .parse()
        .map_err(|e: PermError| format!("{}: {e}", path.display()))
}

/// A near-domain, or a failing report listing the violated axioms.
fn load_near_domain(path: &Path) -> Fallible<Result<NearDomain, Report>> {
    let table = load_table(path)?;
    let report = check_near_domain(&table);
    if !report.passed() {
        return Ok(Err(axiom_failure(&report)));
    }
    Ok(Ok(NearDomain::new(table).map_err(|e| e.to_string())?))
}

fn axiom_failure(report: &crate::AxiomReport) -> Report {
    let mut text = String::from("near-domain: no\n");
    for f in &report.failures {
        text.push_str(&format!("  {f}\n"));
    }
    Report::verdict(
        false,
        text,
        json!({ "near_domain": false, "report": report }),
    )
}

fn table_json(t: &NearDomainTable) -> Value {
    json!({ "label": t.label(), "order": t.order(), "add": t.add_rows(), "mul": t.mul_rows() })
}

/// Prints a table or writes it to `--out`.
fn emit_table(t: &NearDomainTable, out: &OutArg) -> Fallible<Report> {
    match &out.out {
        Some(path) => {
            write(path, &t.to_string())?;
            Ok(Report::ok(
                format!(
                    "wrote {} (order {}) to {}\n",
                    t.label(),
                    t.order(),
                    path.display()
                ),
                json!({ "label": t.label(), "order": t.order(), "path": path }),
            ))
        }
        None => Ok(Report::ok(t.to_string(), table_json(t))),
    }
}

/// Mathematical rejections are verdicts; malformed input is a usage error.
fn perm_verdict(e: PermError) -> Fallible<Report> {
    match e {
        PermError::NotSharply2Transitive
        | PermError::UnsupportedCharacteristic
        | PermError::NonUniformTranslations(_)
        | PermError::Internal(_) => Ok(Report::verdict(
            false,
            format!("{e}\n"),
            json!({ "ok": false, "error": e.to_string() }),
        )),
        e => Err(e.to_string()),
    }
}

fn unwrap_nd(
    r: Fallible<Result<NearDomain, Report>>,
    f: impl FnOnce(NearDomain) -> Fallible<Report>,
) -> Fallible<Report> {
    match r? {
        Ok(nd) => f(nd),
        Err(report) => Ok(report),
    }
}

fn execute(cmd: Command) -> Fallible<Report> {
    match cmd {
        Command::Construct(Construct::Gf { p, n, modulus, out }) => {
            let spec = match modulus {
                Some(m) => FieldSpec::with_modulus(p, n, m),
                None => FieldSpec::new(p, n),
            };
            emit_table(&galois_field(&spec).map_err(|e| e.to_string())?, &out)
        }
        Command::Construct(Construct::Dickson { q, out }) => emit_table(
            &dickson_near_field(DicksonSpec { q }).map_err(|e| e.to_string())?,
            &out,
        ),
        Command::Check { table } => unwrap_nd(load_near_domain(&table), |nd| {
            let field = nd.is_near_field();
            let yn = if field { "yes" } else { "no" };
            Ok(Report::ok(
                format!("near-domain: yes, near-field: {yn}\n"),
                json!({ "label": nd.label(), "order": nd.order(), "near_domain": true, "near_field": field }),
            ))
        }),
        Command::D { table, a, b } => unwrap_nd(load_near_domain(&table), |nd| {
            for x in [a, b] {
                nd.table().check_element(x).map_err(|e| e.to_string())?;
            }
            let d = nd.d(a, b);
            Ok(Report::ok(
                format!("d({a}, {b}) = {d}\n"),
                json!({ "a": a, "b": b, "d": d }),
            ))
        }),
        Command::E { table } => unwrap_nd(load_near_domain(&table), |nd| {
            let e: Vec<Element> = nd.e_set().into_iter().collect();
            let parts: Vec<String> = e.iter().map(ToString::to_string).collect();
            Ok(Report::ok(
                format!("E = {{{}}} ({} elements)\n", parts.join(", "), e.len()),
                json!({ "e": e }),
            ))
        }),
        Command::Char { table } => unwrap_nd(load_near_domain(&table), |nd| {
            let p = nd.characteristic();
            Ok(Report::ok(
                format!("characteristic: {p}\n"),
                json!({ "characteristic": p }),
            ))
        }),
        Command::Kerby { table } => unwrap_nd(load_near_domain(&table), |nd| {
            let report = nd.kerby_suite();
            let mut text = String::new();
            for c in &report.checks {
                match &c.violation {
                    None => text.push_str(&format!(
                        "{}: ok ({} tuples)\n",
                        c.identity, c.tuples_checked
                    )),
                    Some(w) => text.push_str(&format!("{}: violated at {w:?}\n", c.identity)),
                }
            }
            Ok(Report::verdict(report.passed(), text, json!(report)))
        }),
        Command::Aff { table, out } => unwrap_nd(load_near_domain(&table), |nd| {
            let g = affine_group(&nd).map_err(|e| e.to_string())?;
            let summary = format!(
                "affine group of {}: degree {}, order {}",
                nd.label(),
                g.degree(),
                g.order()
            );
            let info = json!({ "degree": g.degree(), "order": g.order() });
            match &out.out {
                Some(path) => {
                    write(path, &g.to_string())?;
                    Ok(Report::ok(
                        format!("{summary}, wrote {}\n", path.display()),
                        info,
                    ))
                }
                None => Ok(Report::ok(g.to_string(), info)),
            }
        }),
        Command::Check2t { group } => {
            let g = load_group(&group)?;
            let sharp = is_sharply_2_transitive(&g);
            let yn = if sharp { "yes" } else { "no" };
            Ok(Report::verdict(
                sharp,
                format!(
                    "degree {}, order {}, sharply 2-transitive: {yn}\n",
                    g.degree(),
                    g.order()
                ),
                json!({ "degree": g.degree(), "order": g.order(), "sharply_2_transitive": sharp }),
            ))
        }
        Command::Split { group } => {
            let g = load_group(&group)?;
            let (normal, report) = match (split_check(&g), involution_translation_analysis(&g)) {
                (Ok(n), Ok(r)) => (n, r),
                (Err(e), _) | (_, Err(e)) => return perm_verdict(e),
            };
            let chr = permutation_characteristic(&g).ok();
            let mut text = format!(
                "involutions: {} (fixed points per involution: {:?})\ntranslations: {} (orders {:?})\n",
                report.involutions, report.fixed_point_counts, report.translations, report.translation_orders
            );
            if let Some(p) = chr {
                text.push_str(&format!("permutation characteristic: {p}\n"));
            }
            match &normal {
                Some(n) => text.push_str(&format!(
                    "split: yes, regular normal subgroup of order {}\n",
                    n.order()
                )),
                None => text.push_str("split: no\n"),
            }
            Ok(Report::verdict(
                normal.is_some(),
                text,
                json!({
                    "split": normal.is_some(),
                    "normal_subgroup_order": normal.as_ref().map(PermGroup::order),
                    "characteristic": chr,
                    "involutions": report,
                }),
            ))
        }
        Command::Stab { group, point } => {
            let g = load_group(&group)?;
            let s = point_stabilizer(&g, point).map_err(|e| e.to_string())?;
            let stats = s.order_statistics();
            let parts: Vec<String> = stats
                .iter()
                .map(|(o, c)| format!("{c} of order {o}"))
                .collect();
            Ok(Report::ok(
                format!(
                    "stabilizer of {point}: order {}, {}, elements: {}\n",
                    s.order(),
                    if s.is_abelian() {
                        "abelian"
                    } else {
                        "nonabelian"
                    },
                    parts.join(", ")
                ),
                json!({ "point": point, "order": s.order(), "abelian": s.is_abelian(), "element_orders": stats }),
            ))
        }
        Command::Coordinatize {
            group,
            zero,
            one,
            out,
        } => {
            let g = load_group(&group)?;
            match coordinatize(&g, zero, one) {
                Ok(t) => emit_table(&t, &out),
                Err(e) => perm_verdict(e),
            }
        }
        Command::Iso { first, second } => {
            let (a, b) = (load_near_domain(&first)?, load_near_domain(&second)?);
            let (a, b) = match (a, b) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(r), _) | (_, Err(r)) => return Ok(r),
            };
            let map = find_isomorphism(&a, &b);
            let text = match &map {
                Some(f) => format!("isomorphic: yes\nmap: {f:?}\n"),
                None => "isomorphic: no\n".to_string(),
            };
            Ok(Report::verdict(
                map.is_some(),
                text,
                json!({ "isomorphic": map.is_some(), "map": map }),
            ))
        }
        Command::Search {
            n,
            jobs,
            group,
            emit,
        } => {
            let mut cfg = SearchConfig::new(n).with_jobs(jobs);
            if let Some(name) = &group {
                cfg = cfg.with_group(name).map_err(|e| e.to_string())?;
            }
            let result = enumerate_near_domains(&cfg).map_err(|e| e.to_string())?;
            let all_fields = verify_all_near_fields(&result);
            let mut text = format!("{}\n", result.summary());
            let mut found = Vec::new();
            for (i, (t, g)) in result.tables.iter().zip(&result.groups).enumerate() {
                text.push_str(&format!("{}\n", t.label()));
                let mut entry = json!({ "label": t.label(), "group": g.to_string() });
                if let Some(dir) = &emit {
                    fs::create_dir_all(dir)
                        .map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
                    let path = dir.join(format!("N{n}_{}.nd", i + 1));
                    write(&path, &t.to_string())?;
                    entry["path"] = json!(path);
                }
                found.push(entry);
            }
            text.push_str(&format!(
                "all near-fields: {}\n",
                if all_fields { "yes" } else { "no" }
            ));
            Ok(Report::ok(
                text,
                json!({
                    "order": n,
                    "found": result.tables.len(),
                    "nodes": result.stats.nodes,
                    "candidates": result.stats.candidates,
                    "all_near_fields": all_fields,
                    "tables": found,
                }),
            ))
        }
        Command::Prove { script, trace } => {
            let text = read(&script)?;
            let d = parse_derivation(&text).map_err(|e| format!("{}: {e}", script.display()))?;
            let v = check_derivation(&d);
            let mut out = String::new();
            if trace {
                for line in &v.trace {
                    out.push_str(line);
                    out.push('\n');
                }
            }
            out.push_str(&format!("{v}\n"));
            let rejection = v.rejection.as_ref().map(|r| {
                json!({
                    "item": r.item,
                    "line": r.line,
                    "rule": r.rule.map(|x| x.name()),
                    "reason": r.reason,
                    "expected": r.expected.as_ref().map(ToString::to_string),
                    "claimed": r.claimed.to_string(),
                })
            });
            let mut j = json!({ "accepted": v.accepted(), "steps": v.steps_checked, "rejection": rejection });
            if trace {
                j["trace"] = json!(v.trace);
            }
            Ok(Report::verdict(v.accepted(), out, j))
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.to_string();
            return if e.use_stderr() {
                let line = rendered
                    .lines()
                    .next()
                    .unwrap_or("invalid arguments")
                    .to_string();
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: format!("{line}\n"),
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(cli.command) {
        Ok(report) => Outcome {
            code: if report.holds { 0 } else { 1 },
            stdout: if cli.json {
                format!("{}\n", report.json)
            } else {
                report.text
            },
            stderr: String::new(),
        },
        Err(message) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        },
    }
}
