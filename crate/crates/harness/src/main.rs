use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fsq_core::lattice::cache;
use fsq_core::structure::SeriesKind;
use fsq_core::{builtin_group, FormationId, Group, Lattice, Permutation, SubId, SupplementClass};
use fsq_harness::catalog::{self, CatalogError};
use fsq_harness::runner::{self, RunConfig};
use fsq_harness::theorems;
use fsq_harness::witness::subgroup_ref;
use thiserror::Error;

const DEFAULT_CACHE: &str = ".fsq-cache";

#[derive(Parser)]
#[command(
    name = "fsq",
    version,
    about = "Check s-permutability and quasinormality statements on finite permutation groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Order, series, named subgroups and predicates of a group.
    Info {
        /// Builtin expression such as `symmetric(4)` or a core catalog name.
        group: String,
    },
    /// Evaluate one embedding property of a subgroup.
    Check {
        #[arg(value_enum)]
        property: CheckKind,
        #[arg(long)]
        group: String,
        /// Subgroup generators in cycle notation, separated by `;`.
        #[arg(long)]
        subgroup: String,
        #[arg(long, default_value = "U")]
        formation: String,
        /// Prime for p-nilpotent supplements; supersoluble when absent.
        #[arg(long)]
        prime: Option<usize>,
    },
    /// Conjugacy classes of subgroups.
    Lattice { group: String },
    /// Evaluate statements over a catalog and write a JSON report.
    Verify {
        /// `core` or a path to a group-spec file.
        #[arg(long, default_value = "core")]
        catalog: String,
        /// `all` or comma-separated ids such as `L3.1,T4.4`.
        #[arg(long, default_value = "all")]
        theorems: String,
        /// Worker threads; 0 picks one per core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Directory for cached lattices.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Manage the lattice cache.
    Cache {
        #[arg(value_enum)]
        action: CacheAction,
        #[arg(long, default_value = DEFAULT_CACHE)]
        dir: PathBuf,
    },
    /// Print a group in the group-spec format.
    Export {
        group: String,
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    SPerm,
    Fsq,
    Supplement,
}

#[derive(Clone, Copy, ValueEnum)]
enum CacheAction {
    Clear,
    Stats,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Bound(String),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Bound(_) => 3,
        }
    }
}

impl From<fsq_core::Error> for CliError {
    fn from(e: fsq_core::Error) -> Self {
        use fsq_core::Error as E;
        match e {
            E::BoundExceeded(_) => CliError::Bound(e.to_string()),
            E::Cache(_) => CliError::Failed(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            e if e.is_bound() => CliError::Bound(e.to_string()),
            e @ CatalogError::Io { .. } => CliError::Failed(e.to_string()),
            e => CliError::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn dispatch(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Info { group } => info(&group),
        Command::Check {
            property,
            group,
            subgroup,
            formation,
            prime,
        } => check(property, &group, &subgroup, &formation, prime),
        Command::Lattice { group } => lattice(&group),
        Command::Verify {
            catalog,
            theorems,
            jobs,
            report,
            cache,
        } => verify(&catalog, &theorems, jobs, report, cache),
        Command::Cache { action, dir } => cache_cmd(action, &dir),
        Command::Export { group, name } => {
            let g = resolve_group(&group)?;
            let spec = catalog::GroupSpec::from_group(name.as_deref().unwrap_or("G"), &g);
            print!("# {group}\n{}", spec.to_text());
            Ok(0)
        }
    }
}

/// A core catalog name, else a builtin expression.
fn resolve_group(name: &str) -> Result<Group, CliError> {
    if let Some(spec) = catalog::parse_specs(catalog::CORE)
        .expect("core catalog parses")
        .into_iter()
        .find(|s| s.name == name)
    {
        return Ok(spec.build()?);
    }
    Ok(builtin_group(name)?)
}

fn describe(lat: &Lattice, id: SubId) -> String {
    let r = subgroup_ref(lat, id);
    if r.generators.is_empty() {
        format!("order {} = 1", r.order)
    } else {
        format!("order {} = <{}>", r.order, r.generators.join(", "))
    }
}

fn orders(lat: &Lattice, chain: &[SubId]) -> String {
    chain
        .iter()
        .map(|&i| lat.order(i).to_string())
        .collect::<Vec<_>>()
        .join(" > ")
}

fn info(name: &str) -> Result<u8, CliError> {
    let g = resolve_group(name)?;
    println!("group: {name}");
    println!("degree: {}", g.degree());
    println!("order: {}", g.order());
    let lat = Lattice::from_group(&g)?;
    let v = lat.full();
    println!(
        "subgroups: {} in {} classes",
        lat.len(),
        lat.classes().len()
    );
    println!("derived series: {}", orders(&lat, &v.derived_series()));
    println!(
        "lower central series: {}",
        orders(&lat, &v.lower_central_series())
    );
    let mut upper = v.upper_central_series();
    upper.reverse();
    println!("upper central series: {}", orders(&lat, &upper));
    let mut chief = v.series(SeriesKind::Chief).chain;
    chief.reverse();
    println!("chief series: {}", orders(&lat, &chief));
    let named: Vec<(String, SubId)> = vec![
        ("center".into(), v.center()),
        ("derived subgroup".into(), v.derived()),
        ("frattini".into(), v.frattini()),
        ("fitting".into(), v.fitting()),
        ("generalized fitting".into(), v.generalized_fitting()),
        ("layer".into(), v.layer()),
        ("socle".into(), v.socle()),
    ];
    for (label, id) in named {
        println!("{label}: {}", describe(&lat, id));
    }
    for p in v.primes() {
        println!(
            "sylow {p}: {} ({} conjugates)",
            describe(&lat, v.sylow(p)),
            v.sylow_all(p).len()
        );
        println!("O_{p}: {}", describe(&lat, v.o_p(p)));
    }
    for f in FormationId::ALL {
        println!("hypercenter {f}: {}", describe(&lat, v.f_hypercenter(f)));
    }
    let flags = [
        ("abelian", v.is_abelian()),
        ("cyclic", v.is_cyclic()),
        ("nilpotent", v.is_nilpotent()),
        ("supersoluble", v.is_supersoluble()),
        ("soluble", v.is_soluble()),
        ("perfect", v.is_perfect()),
        ("simple", v.is_simple()),
        ("quasisimple", v.is_quasisimple()),
    ];
    let on: Vec<&str> = flags.iter().filter(|f| f.1).map(|f| f.0).collect();
    println!(
        "properties: {}",
        if on.is_empty() {
            "-".into()
        } else {
            on.join(", ")
        }
    );
    let pn: Vec<String> = v
        .primes()
        .into_iter()
        .filter(|&p| v.is_p_nilpotent(p))
        .map(|p| p.to_string())
        .collect();
    println!("p-nilpotent for p in: {{{}}}", pn.join(", "));
    Ok(0)
}

fn parse_subgroup(g: &Group, text: &str) -> Result<Group, CliError> {
    let gens = text
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Permutation::parse(s, g.degree()))
        .collect::<Result<Vec<_>, _>>()?;
    for x in &gens {
        if !g.contains(x) {
            return Err(CliError::Usage(format!(
                "{x} is not an element of the group"
            )));
        }
    }
    Ok(Group::generate(g.degree(), gens)?)
}

fn check(
    kind: CheckKind,
    group: &str,
    subgroup: &str,
    formation: &str,
    prime: Option<usize>,
) -> Result<u8, CliError> {
    let g = resolve_group(group)?;
    let h = parse_subgroup(&g, subgroup)?;
    let lat = Lattice::from_group(&g)?;
    let v = lat.full();
    let id = lat.find(&h)?;
    println!("subgroup: {}", describe(&lat, id));
    let (label, verdict) = match kind {
        CheckKind::SPerm => ("s-permutable", v.s_permutable(id)?),
        CheckKind::Fsq => {
            let f: FormationId = formation.parse()?;
            ("quasinormal", v.fs_quasinormal(id, f)?)
        }
        CheckKind::Supplement => {
            let class = match prime {
                Some(p) => SupplementClass::PNilpotent(p),
                None => SupplementClass::Supersoluble,
            };
            ("has supplement", v.f_supplement(id, class)?)
        }
    };
    println!("{label}: {}", verdict.holds);
    if let Some(w) = verdict.witness {
        let role = match kind {
            CheckKind::SPerm => "non-permuting sylow",
            CheckKind::Fsq => "normal witness",
            CheckKind::Supplement => "supplement",
        };
        println!("{role}: {}", describe(&lat, w));
    }
    Ok(0)
}

fn lattice(name: &str) -> Result<u8, CliError> {
    let g = resolve_group(name)?;
    let lat = Lattice::from_group(&g)?;
    println!("{} subgroups in {} classes", lat.len(), lat.classes().len());
    for (i, class) in lat.classes().iter().enumerate() {
        println!(
            "class {i}: size {}{}, representative {}",
            class.members.len(),
            if class.is_normal() { ", normal" } else { "" },
            describe(&lat, class.representative())
        );
    }
    Ok(0)
}

fn verify(
    source: &str,
    selection: &str,
    jobs: usize,
    report: Option<PathBuf>,
    cache_dir: Option<PathBuf>,
) -> Result<u8, CliError> {
    let statements = theorems::parse_selection(selection).map_err(CliError::Usage)?;
    let cat = catalog::load_catalog(source)?;
    for w in &cat.warnings {
        eprintln!("warning: {w}");
    }
    let config = RunConfig {
        statements,
        jobs,
        cache_dir,
    };
    let rep = runner::run(&cat, &config);
    for a in &rep.body.aggregates {
        println!(
            "{:<9} cases {:>4}  pass {:>4}  fail {:>3}  vacuous {:>4}  skipped {:>3}  hypothesis true {:>4}{}",
            a.theorem,
            a.cases,
            a.pass,
            a.fail,
            a.vacuous,
            a.skipped,
            a.hypothesis_true,
            if a.imported { "  (imported)" } else { "" }
        );
    }
    for f in &rep.body.failures {
        println!("FAIL {} {} {:?}", f.group, f.theorem, f.params);
    }
    println!(
        "{} groups, {} cases, {} failures, {} skipped, {} ms",
        rep.body.catalog.groups.len(),
        rep.body.cases.len(),
        rep.body.failures.len(),
        rep.body.count(fsq_harness::report::CaseVerdict::Skipped),
        rep.timing.total_ms
    );
    if let Some(path) = report {
        std::fs::write(&path, rep.to_json())
            .map_err(|e| CliError::Failed(format!("writing {}: {e}", path.display())))?;
    }
    Ok(rep.exit_code() as u8)
}

fn cache_cmd(action: CacheAction, dir: &std::path::Path) -> Result<u8, CliError> {
    match action {
        CacheAction::Clear => println!("removed {} entries", cache::clear(dir)?),
        CacheAction::Stats => {
            let s = cache::stats(dir)?;
            println!("{} entries, {} bytes", s.entries, s.bytes);
        }
    }
    Ok(0)
}
