//! End-to-end acceptance checks, one `PASS|FAIL <n> <details>` line per
//! criterion. A failing criterion whose every failing row is recorded in
//! the errata ledger is printed as FAIL but does not fail the run.

use std::process::ExitCode;
use std::time::Instant;

use jsuper::atlas::{component_report, replay_all, verified_graph, Replay};
use jsuper::catalog::Catalog;
use jsuper::degeneration::{
    check_certificate, closed_set_eval, files_with_extension, graded_basis_change, specialize,
    ActionMode, ClosedSet, SeparationConfig,
};
use jsuper::exactmath::{Field, Matrix, Rational};
use jsuper::invariants::{
    derivation_dims, is_associative, nondegeneration_screen, ungraded_power_dims, ScreenConfig,
    ScreenSubject,
};
use jsuper::superalg::{
    ambient_dimension, check_super_jordan, envelope_jordan_check, EnvelopeConfig, SuperAlgebra,
    Table,
};
use num_traits::Zero;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const MIN_SEPARATION: f64 = 0.99;
const IDENTITY_BUDGET_SECS: f64 = 10.0;

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

enum Outcome {
    Pass,
    Fail { logged: bool },
}

struct Line {
    n: usize,
    outcome: Outcome,
    detail: String,
}

impl Line {
    fn new(n: usize, ok: bool, detail: String) -> Self {
        let outcome = if ok {
            Outcome::Pass
        } else {
            Outcome::Fail { logged: false }
        };
        Line { n, outcome, detail }
    }

    fn logged_failure(n: usize, detail: String) -> Self {
        Line {
            n,
            outcome: Outcome::Fail { logged: true },
            detail,
        }
    }
}

fn identity_suite(cat: &Catalog) -> Line {
    let start = Instant::now();
    let report = cat.verify(&[q(2), q(3), q(5)]);
    let secs = start.elapsed().as_secs_f64();
    let names: std::collections::BTreeSet<&str> = report
        .checks
        .iter()
        .filter(|c| c.identity_ok())
        .map(|c| c.name.as_str())
        .collect();
    let all_ok = report.checks.iter().all(|c| c.identity_ok());
    let ok = all_ok && names.len() == 149 && secs < IDENTITY_BUDGET_SECS;
    Line::new(
        1,
        ok,
        format!(
            "{}/149 entries ({} checks) supercommutative and super-Jordan in {secs:.2}s",
            names.len(),
            report.checks.len()
        ),
    )
}

fn orbit_columns(cat: &Catalog) -> Line {
    let report = cat.verify(&[q(2), q(3), q(5)]);
    let mut equal = 0;
    let mut logged = Vec::new();
    let mut unlogged = Vec::new();
    for c in &report.checks {
        if c.orbit_ok() {
            equal += 1;
        } else if cat.errata().contains("orbit", &c.id()) || cat.errata().contains("orbit", &c.name)
        {
            logged.push(c.id());
        } else {
            unlogged.push(format!(
                "{} computed {:?} published {}",
                c.id(),
                c.computed_orbit,
                c.declared_orbit
            ));
        }
    }
    let mut detail = format!(
        "{equal}/{} orbit values equal the published column",
        report.checks.len()
    );
    if !logged.is_empty() {
        detail += &format!("; logged in errata: {}", logged.join(" "));
    }
    if !unlogged.is_empty() {
        detail += &format!("; unlogged: {}", unlogged.join(", "));
    }
    Line::new(2, unlogged.is_empty(), detail)
}

fn witness_replay(cat: &Catalog, replays: &[Replay]) -> Line {
    let total = replays.len();
    let verified = replays.iter().filter(|r| r.is_verified()).count();
    let unlogged: Vec<&str> = replays
        .iter()
        .filter(|r| !r.is_verified() && !cat.errata().contains("witness", &r.witness.id))
        .map(|r| r.witness.id.as_str())
        .collect();
    let mixing: Vec<&Replay> = replays
        .iter()
        .filter(|r| matches!(&r.verdict, Ok(v) if v.mode == ActionMode::Ungraded))
        .collect();
    let mixing_ok = mixing.iter().all(|r| r.is_verified());
    let named = ["geo2_Jc42_Jc19", "geo2_Jc16_Jc47"].iter().all(|id| {
        replays
            .iter()
            .any(|r| r.witness.id == *id && r.is_verified())
    });
    let ok = verified * 100 >= 95 * total && unlogged.is_empty() && mixing_ok && named;
    let mut detail = format!(
        "{verified}/{total} rows verified ({:.1}%), {} parity-mixing rows verified ungraded, {} non-verified rows logged",
        100.0 * verified as f64 / total as f64,
        mixing.iter().filter(|r| r.is_verified()).count(),
        total - verified - unlogged.len()
    );
    if !unlogged.is_empty() {
        detail += &format!("; unlogged: {}", unlogged.join(" "));
    }
    Line::new(3, ok, detail)
}

fn certificates(cat: &Catalog) -> Line {
    let files = files_with_extension(&cat.root().join("closedsets"), "cs").unwrap();
    let cfg = SeparationConfig::default();
    let reports: Vec<_> = files
        .par_iter()
        .map(|f| {
            let r = ClosedSet::load(f).unwrap();
            check_certificate(&r, cat, &cfg).unwrap()
        })
        .collect();
    let failing: Vec<_> = reports
        .iter()
        .filter(|r| !r.passed(MIN_SEPARATION))
        .collect();
    let worst = reports
        .iter()
        .filter(|r| r.source_failure.is_none())
        .flat_map(|r| r.separations.iter().map(|(_, s)| *s))
        .min()
        .unwrap_or(0);
    let mut detail = format!(
        "{}/{} certificates hold at {} trials, seed {} (lowest separation {worst}/{})",
        reports.len() - failing.len(),
        reports.len(),
        cfg.trials,
        cfg.seed,
        cfg.trials
    );
    for r in &failing {
        let why = r
            .source_failure
            .as_deref()
            .unwrap_or("stability or separation below threshold");
        detail += &format!("; {}: source fails {why}", r.id);
    }
    if failing.is_empty() {
        Line::new(4, true, detail)
    } else if failing
        .iter()
        .all(|r| cat.errata().contains("closedset", &r.id))
    {
        Line::logged_failure(4, detail + " [errata]")
    } else {
        Line::new(4, false, detail)
    }
}

fn lemma_screens(cat: &Catalog) -> Line {
    let mut pairs = 0;
    let mut missed = Vec::new();
    let j5 = cat.lookup("J5", None).unwrap();
    for target in ["J7", "J8", "J9", "J11", "J15", "J16", "J17", "J19"] {
        let jt = cat.lookup(target, None).unwrap();
        let rep = nondegeneration_screen(
            ScreenSubject {
                alg: &j5,
                even_label: cat.even_label("J5"),
            },
            ScreenSubject {
                alg: &jt,
                even_label: cat.even_label(target),
            },
            &|x, y| cat.lowdim().even_reachable(x, y),
            &ScreenConfig::default(),
        )
        .unwrap();
        pairs += 1;
        if !rep.obstructed() {
            missed.push(format!("J5->{target}"));
        }
    }
    let files = files_with_extension(&cat.root().join("closedsets"), "cs").unwrap();
    for f in files {
        let r = ClosedSet::load(&f).unwrap();
        if r.conditions.len() != 1 || r.conditions[0].text() != "A1*A4 = 0" {
            continue;
        }
        for target in &r.targets {
            let t = cat
                .lookup(target, None)
                .unwrap()
                .flatten()
                .reorder(&r.basis)
                .unwrap();
            pairs += 1;
            if closed_set_eval(&t, &r).unwrap() {
                missed.push(format!("{}->{target}", r.source));
            }
        }
    }
    let mut detail = format!("{}/{pairs} lemma pairs obstructed", pairs - missed.len());
    if !missed.is_empty() {
        detail += &format!("; not obstructed: {}", missed.join(" "));
    }
    Line::new(5, missed.is_empty() && pairs > 8, detail)
}

fn components(cat: &Catalog, replays: &[Replay]) -> Line {
    let expected = [
        ((1, 3), 11, 0, 12),
        ((2, 2), 24, 1, 13),
        ((3, 1), 21, 0, 15),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (kind, rigid, families, dim) in expected {
        let g = verified_graph(kind, cat, replays).unwrap();
        let r = component_report(cat, &g).unwrap();
        ok &= r.rigid == rigid && r.families == families && r.dimension == dim && r.rigidity_ok();
        parts.push(format!(
            "({},{}) {} = {}+{} dim {}",
            kind.0,
            kind.1,
            r.count(),
            r.rigid,
            r.families,
            r.dimension
        ));
    }
    Line::new(6, ok, parts.join(", "))
}

fn ambient(_: &Catalog) -> Line {
    let kinds = [(4, 0), (3, 1), (2, 2), (1, 3)];
    let oracle: Vec<usize> = kinds
        .iter()
        .map(|&(m, n)| m * m * m + 3 * m * n * n)
        .collect();
    let dims: Vec<usize> = kinds
        .iter()
        .map(|&(m, n)| ambient_dimension(m, n))
        .collect();
    let mut sorted = dims.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let ok = dims == oracle && dims == [64, 36, 32, 28] && sorted.len() == 4;
    Line::new(
        7,
        ok,
        format!("ambient dimensions {dims:?} for (4,0) (3,1) (2,2) (1,3), pairwise distinct"),
    )
}

fn perturb(alg: &SuperAlgebra, rng: &mut ChaCha8Rng) -> Table<Rational> {
    let mut t = alg.flatten();
    let d = t.dim();
    let par = t.parity().to_vec();
    loop {
        let (i, j, k) = (
            rng.random_range(0..d),
            rng.random_range(0..d),
            rng.random_range(0..d),
        );
        if par[k] != (par[i] ^ par[j]) || (i == j && par[i] == 1) {
            continue;
        }
        let delta = q(rng.random_range(1..=2));
        let v = t.get(i, j, k).clone() + delta.clone();
        t.set(i, j, k, v);
        if i != j {
            let sign = if par[i] == 1 && par[j] == 1 { -1 } else { 1 };
            let w = t.get(j, i, k).clone() + delta * q(sign);
            t.set(j, i, k, w);
        }
        return t;
    }
}

fn sample_entries(
    cat: &Catalog,
    count: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<(String, SuperAlgebra)> {
    cat.entries()
        .choose_multiple(rng, count)
        .map(|e| {
            let p = e.is_family().then(|| q(2));
            (e.name().to_string(), e.instantiate(p.as_ref()).unwrap())
        })
        .collect()
}

fn envelope(cat: &Catalog) -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let cfg = EnvelopeConfig { k: 4 };
    let mut agree = 0;
    let mut broken = 0;
    let mut disagreements = Vec::new();
    for (name, a) in sample_entries(cat, 5, &mut rng) {
        let t = a.flatten();
        let pt = perturb(&a, &mut rng);
        for (label, tab) in [(name.clone(), t), (format!("{name}+delta"), pt)] {
            let direct = check_super_jordan(&tab).passed();
            broken += usize::from(!direct);
            if envelope_jordan_check(&tab, cfg).passed() == direct {
                agree += 1;
            } else {
                disagreements.push(label);
            }
        }
    }
    let mut detail = format!("{agree}/10 agree at k=4 ({broken} tables fail the identity)");
    if !disagreements.is_empty() {
        detail += &format!("; disagree: {}", disagreements.join(" "));
    }
    Line::new(8, agree == 10, detail)
}

fn graded_change(a: &SuperAlgebra, rng: &mut ChaCha8Rng) -> SuperAlgebra {
    let par = a.flatten().parity().to_vec();
    let d = par.len();
    loop {
        let p = Matrix::from_fn(d, d, |i, j| {
            if par[i] == par[j] {
                q(rng.random_range(-3..=3))
            } else {
                Rational::zero()
            }
        });
        if !p.det().is_zero() {
            return graded_basis_change(a, &p).unwrap();
        }
    }
}

fn invariance(cat: &Catalog) -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut equalities = 0;
    let mut broken = Vec::new();
    for (name, a) in sample_entries(cat, 10, &mut rng) {
        let (dd, pf, assoc) = (
            derivation_dims(&a),
            a.power_filtration(5),
            is_associative(&a),
        );
        for _ in 0..20 {
            let b = graded_change(&a, &mut rng);
            for (same, what) in [
                (derivation_dims(&b) == dd, "derivations"),
                (b.power_filtration(5) == pf, "filtration"),
                (is_associative(&b) == assoc, "associativity"),
            ] {
                if same {
                    equalities += 1;
                } else {
                    broken.push(format!("{name} {what}"));
                }
            }
        }
    }
    let mut detail =
        format!("{equalities}/600 equalities hold over 10 entries x 20 graded basis changes");
    if !broken.is_empty() {
        detail += &format!("; broken: {}", broken.join(", "));
    }
    Line::new(9, equalities == 600, detail)
}

fn table_invariants(t: &Table<Rational>) -> (usize, Vec<usize>, bool) {
    (
        t.derivation_dim(),
        ungraded_power_dims(t, 5),
        t.is_associative(),
    )
}

fn generic_fiber(cat: &Catalog, replays: &[Replay]) -> Line {
    let verified: Vec<&Replay> = replays.iter().filter(|r| r.is_verified()).collect();
    let picks: Vec<&Replay> = (0..20).map(|i| verified[i * verified.len() / 20]).collect();
    let mut equal = 0;
    let mut broken = Vec::new();
    for r in &picks {
        let fibre = [7, 11, 13]
            .iter()
            .find_map(|&s0| specialize(&r.witness, cat, &q(s0)).ok());
        match fibre {
            Some((src, at)) if table_invariants(&src) == table_invariants(&at) => equal += 1,
            _ => broken.push(r.witness.id.clone()),
        }
    }
    let mut detail =
        format!("{equal}/20 specialized witnesses match their source invariants at s0 = 7");
    if !broken.is_empty() {
        detail += &format!("; mismatched: {}", broken.join(" "));
    }
    Line::new(10, equal == 20, detail)
}

fn main() -> ExitCode {
    let cat = Catalog::load_default().expect("catalog loads");
    let replays = replay_all(&cat).expect("witness files load");
    let lines = vec![
        identity_suite(&cat),
        orbit_columns(&cat),
        witness_replay(&cat, &replays),
        certificates(&cat),
        lemma_screens(&cat),
        components(&cat, &replays),
        ambient(&cat),
        envelope(&cat),
        invariance(&cat),
        generic_fiber(&cat, &replays),
    ];
    let mut passed = 0;
    let mut logged = Vec::new();
    let mut unlogged = Vec::new();
    for l in &lines {
        let tag = match l.outcome {
            Outcome::Pass => {
                passed += 1;
                "PASS"
            }
            Outcome::Fail { logged: true } => {
                logged.push(l.n.to_string());
                "FAIL"
            }
            Outcome::Fail { logged: false } => {
                unlogged.push(l.n.to_string());
                "FAIL"
            }
        };
        println!("{tag} {} {}", l.n, l.detail);
    }
    println!(
        "acceptance: {passed}/{} PASS; failures traced to errata: [{}]; unlogged failures: [{}]",
        lines.len(),
        logged.join(" "),
        unlogged.join(" ")
    );
    if unlogged.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
