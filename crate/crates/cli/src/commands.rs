//! Command-line surface. Every command produces an [`Outcome`]: a text
//! rendering, a JSON value and an exit code (0 success or true, 1 false or
//! violation, 2 error).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use ep_core::algebra::EpAlgebra;
use ep_core::groupoid::{self, Aperiodicity};
use ep_core::ideals::{self, VertexSet};
use ep_core::relations;
use ep_core::zappa_szep::{self, ConstructibleIdeal, ZsElement};
use ep_core::{Degree, PseudoFreeness, SelfSimilarSystem, ValidationReport};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::expr::{format_element, parse_element};
use crate::spec::SystemSpec;

#[derive(Debug, Parser)]
#[command(name = "epalg", version, about = "Exel-Pardo algebras of self-similar k-graphs")]
pub struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct FileArg {
    /// System description (JSON).
    pub file: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the k-graph, group and action axioms.
    Validate(FileArg),
    /// Print the normal form of an expression.
    Normalize {
        #[command(flatten)]
        file: FileArg,
        #[arg(short = 'e', long = "expr")]
        expr: String,
    },
    /// Decide whether two expressions are equal.
    Eq {
        #[command(flatten)]
        file: FileArg,
        #[arg(short = 'e', long = "expr", num_args = 1, required = true)]
        exprs: Vec<String>,
    },
    /// Decide pseudo-freeness.
    Pseudofree {
        #[command(flatten)]
        file: FileArg,
        #[arg(long, default_value_t = ep_core::action::DEFAULT_PSEUDO_FREE_BUDGET)]
        budget: usize,
    },
    /// Search for periodicity witnesses up to a depth.
    Aperiodic {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        depth: String,
        #[arg(long, default_value_t = relations::DEFAULT_GROUP_RADIUS)]
        radius: i64,
        #[arg(long, default_value_t = 10_000_000)]
        budget: usize,
    },
    /// Check the defining relations on all paths up to a depth.
    Relations {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        depth: String,
        #[arg(long, default_value_t = relations::DEFAULT_GROUP_RADIUS)]
        radius: i64,
    },
    /// Invariant vertex sets and their ideals.
    Ideals {
        #[command(subcommand)]
        command: IdealsCommand,
    },
    /// The Zappa-Szép semigroup of a single-vertex system.
    Zs {
        #[command(subcommand)]
        command: ZsCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum IdealsCommand {
    /// All hereditary saturated vertex sets.
    List(FileArg),
    /// The smallest hereditary saturated superset.
    Closure {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        set: String,
    },
    /// Whether an expression lies in I_H.
    Member {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        set: String,
        #[arg(short = 'e', long = "expr")]
        expr: String,
    },
    /// The quotient system, or the image of an expression in it.
    Quotient {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        set: String,
        #[arg(short = 'e', long = "expr")]
        expr: Option<String>,
    },
    /// Check the vertex set / ideal correspondence.
    Verify(FileArg),
}

#[derive(Debug, Subcommand)]
pub enum ZsCommand {
    /// Product of two elements `(path,g)`.
    Mul {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Intersection of two ideals `{p,q,...}`, `full` or `empty`.
    Intersect {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Whether a family of ideals separated by `;` is a foundation set.
    Foundation {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        family: String,
    },
    /// Check the boundary quotient relations under translation.
    Verify {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        max_degree: String,
        #[arg(long, default_value_t = zappa_szep::DEFAULT_ZS_RADIUS)]
        radius: i64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    fn new(ok: bool, text: impl Into<String>, json: Value) -> Outcome {
        Outcome { code: if ok { 0 } else { 1 }, text: text.into(), json }
    }
}

pub fn load_spec(path: &std::path::Path) -> Result<SystemSpec, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    SystemSpec::from_json(&text)
}

pub fn load(path: &std::path::Path) -> Result<SelfSimilarSystem, CliError> {
    Ok(SelfSimilarSystem::new(&load_spec(path)?.to_raw()?)?)
}

/// `(2)`, `2`, `(1,1)` or `1,1`.
pub fn parse_degree(text: &str, k: usize) -> Result<Degree, CliError> {
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    let entries: Vec<u32> = inner
        .split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| CliError::Usage(format!("bad degree `{text}`"))))
        .collect::<Result<_, _>>()?;
    if entries.len() != k {
        return Err(CliError::Usage(format!("degree `{text}` must have {k} entries")));
    }
    Ok(Degree::new(entries))
}

fn strip_braces(text: &str) -> &str {
    let t = text.trim();
    t.strip_prefix('{').and_then(|t| t.strip_suffix('}')).unwrap_or(t).trim()
}

/// `v,w`, `{v,w}`, `{}` or the empty string.
pub fn parse_set(sys: &SelfSimilarSystem, text: &str) -> Result<VertexSet, CliError> {
    let inner = strip_braces(text);
    if inner.is_empty() || inner == "empty" {
        return Ok(VertexSet::new());
    }
    inner.split(',').map(|v| Ok(sys.graph().vertex_by_name(v.trim())?)).collect()
}

/// `(path,g)`.
pub fn parse_zs_element(sys: &SelfSimilarSystem, text: &str) -> Result<ZsElement, CliError> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| CliError::Usage(format!("expected `(path,g)`, got `{text}`")))?;
    let (p, g) = inner.split_once(',').ok_or_else(|| CliError::Usage(format!("expected `(path,g)`, got `{text}`")))?;
    Ok(ZsElement { path: sys.graph().parse_path(p.trim())?, g: sys.group().parse(g.trim())? })
}

/// `{a.b,b.a}`, `full` or `empty`.
pub fn parse_ideal(sys: &SelfSimilarSystem, text: &str) -> Result<ConstructibleIdeal, CliError> {
    let graph = sys.graph();
    match text.trim() {
        "full" => return Ok(ConstructibleIdeal::full(graph)),
        "empty" | "{}" => return Ok(ConstructibleIdeal::Empty),
        _ => {}
    }
    let paths = strip_braces(text)
        .split(',')
        .map(|p| Ok(graph.parse_path(p.trim())?))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(ConstructibleIdeal::union(graph, paths)?)
}

fn report_json(report: &ValidationReport) -> Value {
    let violations: Vec<Value> =
        report.violations.iter().map(|v| json!({"check": v.check.name(), "detail": v.detail})).collect();
    json!({"ok": report.is_empty(), "checked": report.checked, "violations": violations})
}

fn report_outcome(report: ValidationReport) -> Outcome {
    Outcome::new(report.is_empty(), report.to_string(), report_json(&report))
}

fn set_names(sys: &SelfSimilarSystem, h: &VertexSet) -> Vec<String> {
    h.iter().map(|&v| sys.graph().vertex_name(v).to_string()).collect()
}

fn zs_text(sys: &SelfSimilarSystem, x: &ZsElement) -> String {
    format!("({},{})", sys.graph().path_name(&x.path), sys.group().format(&x.g))
}

fn pseudo_text(sys: &SelfSimilarSystem, p: &PseudoFreeness) -> (String, Value) {
    match p {
        PseudoFreeness::PseudoFree => ("pseudo-free".into(), json!({"status": "pseudo-free"})),
        PseudoFreeness::NotPseudoFree { g, path } => {
            let (g, path) = (sys.group().format(g), sys.graph().path_name(path));
            (format!("not pseudo-free: g = {g} fixes {path} with trivial restriction"), json!({"status": "not-pseudo-free", "g": g, "path": path}))
        }
        PseudoFreeness::Unknown { explored } => {
            (format!("unknown: budget exhausted after {explored} states"), json!({"status": "unknown", "explored": explored}))
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Validate(f) => {
            let raw = load_spec(&f.file)?.to_raw()?;
            let (sys, report) = SelfSimilarSystem::assemble(&raw);
            match sys {
                Some(sys) if report.is_empty() => {
                    let (pf, pf_json) = pseudo_text(&sys, sys.pseudo_freeness());
                    let g = sys.graph();
                    let text = format!(
                        "valid: k = {}, {} vertices, {} edges, generators [{}], {pf}",
                        g.k(),
                        g.vertex_count(),
                        g.edge_count(),
                        sys.generators().iter().map(|x| sys.group().format(x)).collect::<Vec<_>>().join(", ")
                    );
                    let json = json!({"valid": true, "k": g.k(), "vertices": g.vertex_count(), "edges": g.edge_count(), "pseudo_free": pf_json});
                    Ok(Outcome::new(true, text, json))
                }
                _ => {
                    let mut json = report_json(&report);
                    json["valid"] = json!(false);
                    Ok(Outcome::new(false, report.to_string(), json))
                }
            }
        }
        Command::Normalize { file, expr } => {
            let sys = load(&file.file)?;
            let alg = EpAlgebra::new(&sys);
            let n = alg.normalize(&parse_element(&alg, expr)?);
            let text = format_element(&alg, &n);
            let terms: Vec<Value> = n
                .iter()
                .map(|(t, c)| {
                    json!({
                        "coeff": c.to_string(),
                        "mu": sys.graph().path_name(&t.mu),
                        "g": sys.group().format(&t.g),
                        "nu": sys.graph().path_name(&t.nu),
                    })
                })
                .collect();
            Ok(Outcome::new(true, text.clone(), json!({"normal_form": text, "terms": terms})))
        }
        Command::Eq { file, exprs } => {
            if exprs.len() != 2 {
                return Err(CliError::Usage("eq takes exactly two -e expressions".into()));
            }
            let sys = load(&file.file)?;
            let alg = EpAlgebra::new(&sys);
            let a = parse_element(&alg, &exprs[0])?;
            let b = parse_element(&alg, &exprs[1])?;
            let equal = alg.equals(&a, &b)?;
            Ok(Outcome::new(equal, if equal { "equal" } else { "not equal" }, json!({"equal": equal})))
        }
        Command::Pseudofree { file, budget } => {
            let sys = load(&file.file)?;
            let p = sys.check_pseudo_free(*budget);
            let (text, json) = pseudo_text(&sys, &p);
            Ok(Outcome::new(p == PseudoFreeness::PseudoFree, text, json))
        }
        Command::Aperiodic { file, depth, radius, budget } => {
            let sys = load(&file.file)?;
            let d = parse_degree(depth, sys.graph().k())?;
            match groupoid::check_aperiodicity(&sys, &d, *radius, *budget)? {
                Aperiodicity::ViolationWitness { v, g, p, q, path } => {
                    let (vn, gn, pn) =
                        (sys.graph().vertex_name(v).to_string(), sys.group().format(&g), sys.graph().path_name(&path));
                    let text = format!("witness: every x in {vn}Λ^∞ has x(p,p+D) = g.x(q,q+D) with g = {gn}, p = {p}, q = {q} (checked on {pn}, ...)");
                    let json = json!({"aperiodic": false, "witness": {"v": vn, "g": gn, "p": p.to_string(), "q": q.to_string(), "path": pn}});
                    Ok(Outcome::new(false, text, json))
                }
                Aperiodicity::NoWitnessUpToDepth { depth, group_truncated } => {
                    let mut text = format!("no witness up to depth {depth}");
                    if group_truncated {
                        text.push_str(&format!(" (group elements with |g_i| <= {radius} searched)"));
                    }
                    let json = json!({"aperiodic": true, "depth": depth.to_string(), "group_truncated": group_truncated});
                    Ok(Outcome::new(true, text, json))
                }
            }
        }
        Command::Relations { file, depth, radius } => {
            let sys = load(&file.file)?;
            let d = parse_degree(depth, sys.graph().k())?;
            Ok(report_outcome(relations::check_relations_with(&sys, &d, *radius)))
        }
        Command::Ideals { command } => run_ideals(command),
        Command::Zs { command } => run_zs(command),
    }
}

fn run_ideals(command: &IdealsCommand) -> Result<Outcome, CliError> {
    match command {
        IdealsCommand::List(f) => {
            let sys = load(&f.file)?;
            let sets = ideals::enumerate_invariant_subsets(&sys)?;
            let text: Vec<String> = sets.iter().map(|h| ideals::format_set(&sys, h)).collect();
            let json: Vec<Vec<String>> = sets.iter().map(|h| set_names(&sys, h)).collect();
            Ok(Outcome::new(true, text.join("\n"), json!({"sets": json})))
        }
        IdealsCommand::Closure { file, set } => {
            let sys = load(&file.file)?;
            let h = ideals::closure(&sys, &parse_set(&sys, set)?);
            Ok(Outcome::new(true, ideals::format_set(&sys, &h), json!({"closure": set_names(&sys, &h)})))
        }
        IdealsCommand::Member { file, set, expr } => {
            let sys = load(&file.file)?;
            let alg = EpAlgebra::new(&sys);
            let h = parse_set(&sys, set)?;
            let member = ideals::ideal_membership(&alg, &parse_element(&alg, expr)?, &h)?;
            Ok(Outcome::new(member, if member { "member" } else { "not a member" }, json!({"member": member})))
        }
        IdealsCommand::Quotient { file, set, expr } => {
            let sys = load(&file.file)?;
            let h = parse_set(&sys, set)?;
            let q = ideals::quotient_system(&sys, &h)?;
            match expr {
                None => {
                    let spec = SystemSpec::from_raw(q.raw());
                    let json = serde_json::to_value(&spec).expect("serialisable");
                    Ok(Outcome::new(true, spec.to_json(), json))
                }
                Some(e) => {
                    let alg = EpAlgebra::new(&sys);
                    let qa = EpAlgebra::new(&q);
                    let image = ideals::quotient_map(&alg, &qa, &parse_element(&alg, e)?, &h)?;
                    let text = format_element(&qa, &image);
                    Ok(Outcome::new(true, text.clone(), json!({"image": text})))
                }
            }
        }
        IdealsCommand::Verify(f) => {
            let sys = load(&f.file)?;
            Ok(report_outcome(ideals::verify_ideal_correspondence(&sys)?))
        }
    }
}

fn run_zs(command: &ZsCommand) -> Result<Outcome, CliError> {
    match command {
        ZsCommand::Mul { file, x, y } => {
            let sys = load(&file.file)?;
            let xy = zappa_szep::zs_mul(&sys, &parse_zs_element(&sys, x)?, &parse_zs_element(&sys, y)?)?;
            let text = zs_text(&sys, &xy);
            let json = json!({"path": sys.graph().path_name(&xy.path), "g": sys.group().format(&xy.g)});
            Ok(Outcome::new(true, text, json))
        }
        ZsCommand::Intersect { file, x, y } => {
            let sys = load(&file.file)?;
            let meet = zappa_szep::ideal_intersect(sys.graph(), &parse_ideal(&sys, x)?, &parse_ideal(&sys, y)?);
            let gens: Vec<String> = meet.generators().iter().map(|p| sys.graph().path_name(p)).collect();
            Ok(Outcome::new(true, meet.format(sys.graph()), json!({"empty": meet.is_empty(), "generators": gens})))
        }
        ZsCommand::Foundation { file, family } => {
            let sys = load(&file.file)?;
            let members = family
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(|s| parse_ideal(&sys, s))
                .collect::<Result<Vec<_>, _>>()?;
            let f = zappa_szep::is_foundation(sys.graph(), &members);
            Ok(Outcome::new(f, if f { "foundation set" } else { "not a foundation set" }, json!({"foundation": f})))
        }
        ZsCommand::Verify { file, max_degree, radius } => {
            let sys = load(&file.file)?;
            let d = parse_degree(max_degree, sys.graph().k())?;
            Ok(report_outcome(zappa_szep::verify_boundary_relations(&sys, &d, *radius)?))
        }
    }
}

