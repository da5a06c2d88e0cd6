//! `jsuper`: batch verification of the Jordan superalgebra catalog,
//! degeneration witnesses and non-degeneration certificates.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};

use jsuper::atlas::{component_report, export_dot, replay_all, verified_graph};
use jsuper::catalog::{parse_type, Catalog, DATA_ROOT_ENV};
use jsuper::degeneration::{
    check_certificate, files_with_extension, verify_degeneration, ClosedSet, SeparationConfig,
    Witness,
};
use jsuper::exactmath::Rational;
use jsuper::invariants::{
    derivation_dims, nondegeneration_screen, orbit_dimension, ScreenConfig, ScreenSubject,
};
use jsuper::superalg::{envelope_jordan_check, parse_alg_file, EnvelopeConfig, SuperAlgebra};

use report::{Format, Report};

/// Minimum fraction of random bases in which a certificate must reject a target.
const MIN_SEPARATION: f64 = 0.99;

#[derive(Parser, Debug)]
#[command(
    name = "jsuper",
    version,
    about = "Exact checks for four-dimensional Jordan superalgebras"
)]
struct Cli {
    /// Data root holding catalog/, witnesses/, closedsets/ and errata.txt.
    #[arg(long, global = true, env = DATA_ROOT_ENV)]
    data: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Identity and orbit checks for every catalog entry.
    VerifyCatalog {
        /// Family parameters to sample.
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        params: Vec<String>,
    },
    /// Super-Jordan identity for every algebra in a file.
    Check {
        file: PathBuf,
        /// Parameter value for families.
        #[arg(long)]
        param: Option<String>,
    },
    /// Superderivation dimensions.
    Derive { name: String },
    /// Orbit dimension against the published value.
    Orbit { name: String },
    /// Replays a witness file, or every witness in a directory with --all.
    Degenerate {
        path: Option<PathBuf>,
        #[arg(long)]
        all: bool,
    },
    /// Necessary conditions for A to degenerate to B.
    Screen { source: String, target: String },
    /// Checks a closed-set certificate, or every one in a directory with --all.
    Closedset {
        path: Option<PathBuf>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Jordan identity on the truncated Grassmann envelope.
    Envelope {
        name: String,
        #[arg(short, default_value_t = 4)]
        k: usize,
    },
    /// Verified degeneration graph of a type such as 1,3.
    Graph {
        kind: String,
        /// Write Graphviz text here; `-` for standard output.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Irreducible-component accounting of a type.
    Components { kind: String },
}

fn rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| anyhow!("`{s}` is not a rational number"))
}

fn kind(s: &str) -> Result<(usize, usize)> {
    parse_type(s).ok_or_else(|| anyhow!("`{s}` is not a type such as 1,3"))
}

fn split_spec(spec: &str) -> Result<(&str, Option<Rational>)> {
    Ok(match spec.split_once('^') {
        Some((n, v)) => (
            n.trim(),
            Some(rational(v.trim_matches(|c| c == '(' || c == ')'))?),
        ),
        None => (spec.trim(), None),
    })
}

/// Loads `name` or `name^value` without the identity check.
fn instantiate(cat: &Catalog, spec: &str) -> Result<SuperAlgebra> {
    let (name, param) = split_spec(spec)?;
    Ok(cat.entry(name)?.instantiate(param.as_ref())?)
}

fn base(spec: &str) -> &str {
    spec.split('^').next().unwrap_or(spec).trim()
}

fn listing(path: Option<PathBuf>, all: bool, default: PathBuf, ext: &str) -> Result<Vec<PathBuf>> {
    match (path, all) {
        (Some(p), false) => Ok(vec![p]),
        (None, false) => bail!("a file is required unless --all is given"),
        (p, true) => {
            let dir = p.unwrap_or(default);
            let files = files_with_extension(&dir, ext)?;
            if files.is_empty() {
                bail!("no .{ext} files in {}", dir.display());
            }
            Ok(files)
        }
    }
}

fn verify_catalog(cat: &Catalog, params: &[String], r: &mut Report) -> Result<()> {
    let params = params
        .iter()
        .map(|p| rational(p))
        .collect::<Result<Vec<_>>>()?;
    let report = cat.verify(&params);
    let errata = cat.errata();
    for c in &report.checks {
        let id = c.id();
        match &c.identity_failure {
            None => r.check(
                true,
                format!("identity:{id}"),
                "super-Jordan identity holds",
            ),
            Some(f) => r.check(false, format!("identity:{id}"), f),
        }
        let computed = c
            .computed_orbit
            .map_or_else(|| "unavailable".to_string(), |o| o.to_string());
        let detail = format!("computed {computed}, published {}", c.declared_orbit);
        match errata.note("orbit", &id) {
            Some(note) if !c.orbit_ok() => r.known(format!("orbit:{id}"), detail, note),
            _ => r.check(c.orbit_ok(), format!("orbit:{id}"), detail),
        }
    }
    let verified = cat
        .entries()
        .iter()
        .filter(|e| {
            report
                .checks
                .iter()
                .all(|c| c.name != e.name() || c.identity_ok())
        })
        .count();
    r.check(
        verified == cat.entries().len(),
        "verify-catalog",
        format!("{verified} algebras verified"),
    );
    Ok(())
}

fn check_file(file: &Path, param: Option<&str>, r: &mut Report) -> Result<()> {
    let src = std::fs::read_to_string(file).with_context(|| file.display().to_string())?;
    let records = parse_alg_file(&src)?;
    if records.is_empty() {
        bail!("{} holds no [algebra] block", file.display());
    }
    let param = param.map(rational).transpose()?;
    for rec in records {
        let id = format!("identity:{}", rec.name);
        let value = if rec.is_family() {
            param.as_ref()
        } else {
            None
        };
        match rec.instantiate(value) {
            Ok(alg) => {
                let rep = alg.check_super_jordan();
                match rep.failure {
                    None => r.check(
                        true,
                        id,
                        format!("{} quadruples checked", rep.quadruples_checked),
                    ),
                    Some(f) => r.check(false, id, f),
                }
            }
            Err(e) => r.check(false, id, e),
        }
    }
    Ok(())
}

fn degenerate(cat: &Catalog, files: &[PathBuf], r: &mut Report) -> Result<()> {
    let mut verified = 0;
    for f in files {
        let w = Witness::load(f)?;
        let id = format!("degenerate:{}", w.id);
        let (ok, detail) = match verify_degeneration(&w, cat) {
            Ok(v) => (v.is_verified(), v.to_string()),
            Err(e) => (false, e.to_string()),
        };
        verified += usize::from(ok);
        let detail = format!("{} -> {}: {detail}", w.source_spec(), w.target);
        match cat.errata().note("witness", &w.id) {
            Some(note) if !ok => r.known(id, detail, note),
            _ => r.check(ok, id, detail),
        }
    }
    if files.len() > 1 {
        r.note(format!("{verified}/{} witnesses verified", files.len()));
    }
    Ok(())
}

fn screen(cat: &Catalog, a: &str, b: &str, r: &mut Report) -> Result<()> {
    let (ja, jb) = (cat.lookup_spec(a)?, cat.lookup_spec(b)?);
    let lowdim = cat.lowdim();
    let rep = nondegeneration_screen(
        ScreenSubject {
            alg: &ja,
            even_label: cat.even_label(base(a)),
        },
        ScreenSubject {
            alg: &jb,
            even_label: cat.even_label(base(b)),
        },
        &|x, y| lowdim.even_reachable(x, y),
        &ScreenConfig::default(),
    )?;
    for v in &rep.violations {
        r.note(v);
    }
    let summary = if rep.obstructed() {
        format!(
            "{} violation(s): {a} does not degenerate to {b}",
            rep.violations.len()
        )
    } else {
        "no obstruction found".to_string()
    };
    r.check(true, format!("screen:{a}->{b}"), summary);
    Ok(())
}

fn closedsets(
    cat: &Catalog,
    files: &[PathBuf],
    cfg: &SeparationConfig,
    r: &mut Report,
) -> Result<()> {
    for f in files {
        let cs = ClosedSet::load(f)?;
        let rep = check_certificate(&cs, cat, cfg)?;
        let known = cat.errata().note("closedset", &cs.id);
        let mut line = |ok: bool, id: String, detail: String| match known {
            Some(note) if !ok => r.known(id, detail, note),
            _ => r.check(ok, id, detail),
        };
        let id = format!("closedset:{}", cs.id);
        match &rep.source_failure {
            None => line(
                true,
                format!("{id}:source"),
                format!("{} satisfies the conditions", cs.source),
            ),
            Some(c) => line(
                false,
                format!("{id}:source"),
                format!("{} violates {c}", cs.source),
            ),
        }
        let mut detail = format!(
            "{}/{} upper-triangular trials (seed {})",
            rep.stable, rep.trials, rep.seed
        );
        if let Some(c) = &rep.stability_failure {
            detail.push_str(&format!("; first failure: {c}"));
        }
        line(rep.stable == rep.trials, format!("{id}:stability"), detail);
        for (target, sep) in &rep.separations {
            line(
                *sep as f64 >= MIN_SEPARATION * rep.trials as f64,
                format!("{id}:separation:{target}"),
                format!("{sep}/{} random bases reject {target}", rep.trials),
            );
        }
    }
    Ok(())
}

fn envelope(cat: &Catalog, name: &str, k: usize, r: &mut Report) -> Result<()> {
    let alg = instantiate(cat, name)?;
    let rep = envelope_jordan_check(&alg.flatten(), EnvelopeConfig { k });
    let detail = match &rep.failure {
        None => format!("k={k}, {} evaluations", rep.evaluations),
        Some(f) => format!("k={k}: {f:?}"),
    };
    r.check(rep.passed(), format!("envelope:{name}"), detail);
    Ok(())
}

fn graph(
    cat: &Catalog,
    kind_arg: &str,
    dot: Option<&Path>,
    r: &mut Report,
) -> Result<Option<String>> {
    let k = kind(kind_arg)?;
    let replays = replay_all(cat)?;
    let g = verified_graph(k, cat, &replays)?;
    let id = format!("graph:{},{}", k.0, k.1);
    r.check(
        true,
        &id,
        format!(
            "{} nodes, {} verified edges",
            g.nodes().count(),
            g.edge_count()
        ),
    );
    r.check(
        g.is_acyclic(),
        format!("{id}:acyclic"),
        "no cycles among distinct nodes",
    );
    let bad = g.orbit_violations();
    r.check(
        bad.is_empty(),
        format!("{id}:orbit-monotone"),
        if bad.is_empty() {
            "closure dimension drops along every edge".to_string()
        } else {
            format!("violated by {bad:?}")
        },
    );
    let text = export_dot(&g);
    match dot {
        Some(p) if p == Path::new("-") => return Ok(Some(text)),
        Some(p) => {
            std::fs::write(p, &text).with_context(|| p.display().to_string())?;
            r.note(format!("wrote {}", p.display()));
        }
        None => {}
    }
    Ok(None)
}

fn components(cat: &Catalog, kind_arg: &str, r: &mut Report) -> Result<()> {
    let k = kind(kind_arg)?;
    let replays = replay_all(cat)?;
    let g = verified_graph(k, cat, &replays)?;
    let rep = component_report(cat, &g)?;
    let id = format!("components:{},{}", k.0, k.1);
    r.check(
        rep.count_ok(),
        format!("{id}:count"),
        format!(
            "{} = {} rigid + {} family, published {}",
            rep.count(),
            rep.rigid,
            rep.families,
            rep.published.count
        ),
    );
    r.check(
        rep.dimension_ok(),
        format!("{id}:dimension"),
        format!(
            "{} via {}, published {}",
            rep.dimension, rep.dimension_witness, rep.published.dimension
        ),
    );
    for (a, b) in &rep.rigidity_conflicts {
        r.check(false, format!("{id}:rigidity"), format!("{a} reaches {b}"));
    }
    if rep.rigidity_ok() {
        r.check(
            true,
            format!("{id}:rigidity"),
            "no representative reaches another",
        );
    }
    for name in &rep.reachability_gaps {
        let detail = format!("{name} is not reached from any representative");
        match cat.errata().note("reachability", name) {
            Some(note) => r.known(format!("{id}:reach:{name}"), detail, note),
            None => r.check(false, format!("{id}:reach:{name}"), detail),
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(Report, Option<String>)> {
    let cat = match &cli.data {
        Some(root) => Catalog::load(root),
        None => Catalog::load_default(),
    }
    .context("loading the catalog")?;
    let mut r = Report::new(cli.format);
    let mut raw = None;
    match cli.command {
        Command::VerifyCatalog { params } => verify_catalog(&cat, &params, &mut r)?,
        Command::Check { file, param } => check_file(&file, param.as_deref(), &mut r)?,
        Command::Derive { name } => {
            let d = derivation_dims(&instantiate(&cat, &name)?);
            r.check(
                true,
                format!("derive:{name}"),
                format!("even {} odd {}", d.even_dim, d.odd_dim),
            );
        }
        Command::Orbit { name } => {
            let computed = orbit_dimension(&instantiate(&cat, &name)?);
            let published = cat.entry(base(&name))?.declared_orbit;
            let ok = computed == published;
            let detail = format!("computed {computed}, published {published}");
            let (base_name, param) = split_spec(&name)?;
            let key = match &param {
                Some(p) => format!("{base_name}@{p}"),
                None => base_name.to_string(),
            };
            let note = cat
                .errata()
                .note("orbit", &key)
                .or_else(|| cat.errata().note("orbit", base_name));
            match note {
                Some(note) if !ok => r.known(format!("orbit:{name}"), detail, note),
                _ => r.check(ok, format!("orbit:{name}"), detail),
            }
        }
        Command::Degenerate { path, all } => {
            let files = listing(path, all, cat.root().join("witnesses"), "wit")?;
            degenerate(&cat, &files, &mut r)?;
        }
        Command::Screen { source, target } => screen(&cat, &source, &target, &mut r)?,
        Command::Closedset {
            path,
            all,
            trials,
            seed,
        } => {
            let files = listing(path, all, cat.root().join("closedsets"), "cs")?;
            let cfg = SeparationConfig {
                trials: trials as usize,
                seed,
                ..SeparationConfig::default()
            };
            closedsets(&cat, &files, &cfg, &mut r)?;
        }
        Command::Envelope { name, k } => envelope(&cat, &name, k, &mut r)?,
        Command::Graph { kind, dot } => raw = graph(&cat, &kind, dot.as_deref(), &mut r)?,
        Command::Components { kind } => components(&cat, &kind, &mut r)?,
    }
    Ok((r, raw))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.output.clone();
    let (report, raw) = match run(cli) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let text = raw.unwrap_or_else(|| report.to_string());
    let written = match &output {
        Some(p) => std::fs::write(p, &text).with_context(|| p.display().to_string()),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if report.failures() == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
