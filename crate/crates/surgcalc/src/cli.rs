//! The `surgcalc` command line.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use surgcalc_core::constructions::{
    build_XG, build_XG_moregen, build_XplusG, build_XplusG_free, build_Xg, build_Xpq_c1, build_Xpq_c23,
    build_rbd_example, gluing_relators, solve_gluing, ClaimStatus, ConstructionDossier, TorusMode,
};
use surgcalc_core::coset::{enumerate, EnumBudget};
use surgcalc_core::group::{orbifold_group, parse_presentation, Letter};
use surgcalc_core::linalg::{abelian_invariants, is_dual_finite_torsion, rank, smith_normal_form};
use surgcalc_core::mcg::{is_identity_factorization, parse_factorization, parse_monodromy, to_matrix};
use surgcalc_core::surgery::{
    group_size_bounds, rational_blowdown, Catalog, Invariants, ManifoldBlock, MeridianCertificate,
    SurgeryError,
};
use surgcalc_core::{GroupPresentation, IntMatrix, Word};

use crate::catalog_file::{dump_catalog, load_catalog};
use crate::report::{Body, ClaimJson, DossierJson, OutcomeJson, Report, StatusJson, EXIT_OK, EXIT_USAGE};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;
pub const CATALOG_ENV: &str = "SURGCALC_CATALOG";

#[derive(Parser, Debug)]
#[command(name = "surgcalc", version, about = "Invariants and fundamental groups of symplectic 4-manifold constructions")]
pub struct Cli {
    /// Print the JSON report instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Catalog file to load instead of the built-in one.
    #[arg(long, global = true, env = CATALOG_ENV)]
    pub catalog: Option<PathBuf>,
    /// Worker threads for independent checks.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Abelian invariants of a presentation.
    Abelianize { presentation: String },
    /// Whether the relator exponent matrix has full column rank.
    Dft { presentation: String },
    /// Order of a finite group by coset enumeration.
    Enumerate {
        presentation: String,
        #[arg(long, default_value_t = 100_000)]
        max_cosets: usize,
    },
    /// Dehn twist factorizations in SL(2, Z).
    #[command(subcommand)]
    Monodromy(MonodromyCommand),
    /// Build a manifold and check its claimed invariants.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Bounds on the smallest b+ realizing a group.
    Bounds { presentation: String },
    /// Inspect, check or export the building-block catalog.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Randomized property checks.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum MonodromyCommand {
    /// Whether a word in t_a, t_b is the identity of SL(2, Z).
    Verify { word: String },
    /// Recognizes the singular fiber of each top-level segment.
    Fiber { word: String },
}

#[derive(Subcommand, Debug)]
pub enum ConstructCommand {
    /// Surgered Σ_g × T² summed with E(1).
    #[command(name = "xg")]
    Xg {
        #[arg(long)]
        genus: usize,
        #[arg(long, value_delimiter = ',')]
        p: Option<Vec<u32>>,
        #[arg(long, value_delimiter = ',')]
        q: Option<Vec<u32>>,
    },
    /// b+ = b1(G) + 1 realization of a presentation.
    #[command(name = "xG")]
    XBigG {
        presentation: String,
        /// Treat generators beyond the relators' support as free extras.
        #[arg(long)]
        moregen: bool,
    },
    /// Signature -1 variant; `--free n` builds the free group of rank n-2.
    #[command(name = "xG-plus")]
    XPlus {
        presentation: Option<String>,
        #[arg(long, conflicts_with = "presentation")]
        free: Option<usize>,
    },
    /// Z_p × Z_q with c1^2 = 1.
    #[command(name = "xpq1")]
    Xpq1 { p: u32, q: u32 },
    /// Z_p × Z_q with c1^2 = h for h in {2, 3}.
    #[command(name = "xpq23")]
    Xpq23 {
        #[arg(long, default_value_t = 2)]
        h: u32,
        p: u32,
        q: u32,
        /// Perform only the first surgery.
        #[arg(long)]
        torus_z: bool,
    },
    /// A named rational blowdown recipe.
    #[command(name = "rbd")]
    Rbd { name: String },
}

#[derive(Subcommand, Debug)]
pub enum CatalogCommand {
    /// Names, invariants and embedded pieces of each entry.
    List,
    /// Recomputes entry invariants and sphere class data.
    Check,
    /// Prints the catalog as JSON.
    Dump,
}

/// What a run prints and its exit status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind::{DisplayHelp, DisplayHelpOnMissingArgumentOrSubcommand, DisplayVersion};
            let text = e.render().to_string();
            return match e.kind() {
                DisplayHelp | DisplayVersion => Output {
                    stdout: text,
                    stderr: String::new(),
                    code: EXIT_OK,
                },
                DisplayHelpOnMissingArgumentOrSubcommand | _ => Output {
                    stdout: String::new(),
                    stderr: text,
                    code: EXIT_USAGE,
                },
            };
        }
    };
    let command: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .filter(|a| a != "--json")
        .collect();
    if let Command::Catalog(CatalogCommand::Dump) = cli.command {
        return match catalog(&cli) {
            Ok(c) => Output {
                stdout: dump_catalog(&c),
                stderr: String::new(),
                code: EXIT_OK,
            },
            Err(message) => finish(&cli, Report::new(command, Body::Error { message })),
        };
    }
    let body = dispatch(&cli).unwrap_or_else(|message| Body::Error { message });
    finish(&cli, Report::new(command, body))
}

fn finish(cli: &Cli, report: Report) -> Output {
    let is_error = matches!(report.body, Body::Error { .. });
    let text = if cli.json { report.to_json() } else { report.render() };
    let (stdout, stderr) = if is_error && !cli.json {
        (String::new(), text)
    } else {
        (text, String::new())
    };
    Output {
        stdout,
        stderr,
        code: report.exit_code,
    }
}

fn catalog(cli: &Cli) -> Result<Catalog, String> {
    match &cli.catalog {
        Some(path) => load_catalog(path).map_err(|e| e.to_string()),
        None => Ok(Catalog::builtin()),
    }
}

fn presentation(text: &str) -> Result<GroupPresentation, String> {
    parse_presentation(text).map_err(|e| format!("cannot parse presentation: {e}"))
}

fn surgery(e: SurgeryError) -> String {
    e.to_string()
}

fn dispatch(cli: &Cli) -> Result<Body, String> {
    match &cli.command {
        Command::Abelianize { presentation: p } => {
            let g = presentation(p)?;
            let h = abelian_invariants(&g);
            let data = json!({
                "presentation": g.to_string(),
                "h1": h.to_string(),
                "free_rank": h.free_rank,
                "torsion": h.torsion_i64(),
            });
            Ok(Body::Outcome(OutcomeJson::new(format!("H1 = {h}"), data)))
        }
        Command::Dft { presentation: p } => {
            let g = presentation(p)?;
            let dft = is_dual_finite_torsion(&g);
            let data = json!({
                "presentation": g.to_string(),
                "dual_finite_torsion": dft,
                "rank": rank(&g.exponent_matrix()),
                "relators": g.relator_count(),
            });
            let summary = if dft { "dual finite torsion" } else { "not dual finite torsion" };
            Ok(Body::Outcome(OutcomeJson::new(summary, data)))
        }
        Command::Enumerate {
            presentation: p,
            max_cosets,
        } => {
            let g = presentation(p)?;
            Ok(Body::Outcome(enumerate_outcome(&g, *max_cosets)))
        }
        Command::Monodromy(MonodromyCommand::Verify { word }) => monodromy_verify(word),
        Command::Monodromy(MonodromyCommand::Fiber { word }) => monodromy_fiber(word),
        Command::Construct(c) => {
            let loaded = catalog(cli)?;
            let mut d = construct(c)?;
            if cli.catalog.is_some() && dump_catalog(&loaded) != dump_catalog(&Catalog::builtin()) {
                d.note("pipelines read the built-in catalog; the loaded catalog differs from it");
            }
            Ok(Body::Dossier(DossierJson::of(&d)))
        }
        Command::Bounds { presentation: p } => {
            let g = presentation(p)?;
            let b = group_size_bounds(&g);
            let data = json!({
                "generators": b.generators,
                "relators": b.relators,
                "b1": b.b1,
                "lower": b.lower,
                "construction": b.construction,
                "gompf_upper": b.gompf_upper,
                "free_table": b.free_table.map(|(bp, b2)| json!({"b_plus": bp, "b2": b2})),
            });
            let summary = format!("{} <= min b+ <= {}", b.lower, b.construction.min(b.gompf_upper));
            Ok(Body::Outcome(OutcomeJson::new(summary, data)))
        }
        Command::Catalog(CatalogCommand::List) => {
            let c = catalog(cli)?;
            let entries: Vec<_> = c
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "label": e.block.label,
                        "e": e.block.e,
                        "sigma": e.block.sigma,
                        "pi1": e.block.pi1.to_string(),
                        "surfaces": e.surfaces.iter().map(|s| &s.0).collect::<Vec<_>>(),
                        "tori": e.tori.iter().map(|s| &s.0).collect::<Vec<_>>(),
                        "fibrations": e.fibrations.iter().map(|f| &f.name).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let summary = format!("{} entries", entries.len());
            Ok(Body::Outcome(OutcomeJson::new(summary, json!({ "entries": entries }))))
        }
        Command::Catalog(CatalogCommand::Check) => {
            let c = catalog(cli)?;
            let mut o = OutcomeJson::new(format!("{} entries", c.entries.len()), json!({}));
            for e in &c.entries {
                let (status, evidence) = match e.self_check() {
                    Ok(()) => (StatusJson::Pass, "consistent".to_string()),
                    Err(d) => (StatusJson::Fail, d.message),
                };
                o.checks.push(ClaimJson::new(e.block.label.clone(), status, evidence));
            }
            let (status, evidence) = match c.self_check() {
                Ok(()) => (StatusJson::Pass, "labels are unique".to_string()),
                Err(d) => (StatusJson::Fail, format!("{}: {}", d.entry, d.message)),
            };
            o.checks.push(ClaimJson::new("catalog", status, evidence));
            Ok(Body::Outcome(o))
        }
        Command::Catalog(CatalogCommand::Dump) => unreachable!("handled before dispatch"),
        Command::Selftest { seed, cases } => Ok(Body::Outcome(selftest(*seed, *cases, cli.jobs.max(1)))),
    }
}

/// Enumerates `g`; flags the (2,3,5) triangle group, whose order is often
/// misquoted.
pub fn enumerate_outcome(g: &GroupPresentation, max_cosets: usize) -> OutcomeJson {
    let order = enumerate(g, EnumBudget::cosets(max_cosets)).order();
    let summary = match order {
        Some(n) => format!("order {n}"),
        None => format!("no result within {max_cosets} cosets"),
    };
    let mut o = OutcomeJson::new(
        summary,
        json!({"presentation": g.to_string(), "order": order, "max_cosets": max_cosets}),
    );
    o.budget_exceeded = order.is_none();
    let e235 = orbifold_group(&[2, 3, 5]);
    let is_e235 = g.generator_count() == 3
        && g.with_names(e235.generators().to_vec())
            .is_ok_and(|h| h.same_up_to_relator_form(&e235));
    if is_e235 {
        o.notes.push(format!(
            "discrepancy: E(2,3,5) is sometimes listed as S5 (order 120); enumeration gives {}",
            order.map_or_else(|| "no order".into(), |n| n.to_string())
        ));
    }
    o
}

fn monodromy_verify(text: &str) -> Result<Body, String> {
    let w = parse_monodromy(text).map_err(|e| format!("cannot parse monodromy word: {e}"))?;
    let mut o = OutcomeJson::new(format!("{} twists", w.twist_count()), json!({}));
    match (is_identity_factorization(&w), to_matrix(&w)) {
        (Ok(id), Ok(m)) => {
            o.summary = format!("identity: {id}");
            o.data = json!({
                "word": w.to_string(),
                "identity": id,
                "twist_count": w.twist_count(),
                "matrix": [[m.a.to_string(), m.b.to_string()], [m.c.to_string(), m.d.to_string()]],
            });
            o.checks.push(ClaimJson::new(
                "identity",
                StatusJson::of(id),
                format!("product in SL(2, Z) is [[{}, {}], [{}, {}]]", m.a, m.b, m.c, m.d),
            ));
        }
        _ => {
            o.summary = "matrix entries overflowed".into();
            o.budget_exceeded = true;
        }
    }
    Ok(Body::Outcome(o))
}

fn monodromy_fiber(text: &str) -> Result<Body, String> {
    let f = parse_factorization(text).map_err(|e| format!("cannot parse monodromy word: {e}"))?;
    let segments: Vec<_> = f
        .segments
        .iter()
        .zip(f.fibers())
        .map(|(s, t)| json!({"segment": s.to_string(), "fiber": t.to_string(), "euler": t.euler()}))
        .collect();
    let census: serde_json::Map<String, serde_json::Value> = f
        .fiber_census()
        .into_iter()
        .map(|(k, v)| (format!("euler {k}"), json!(v)))
        .collect();
    let euler = f.euler_number();
    let mut o = OutcomeJson::new(
        format!("{} segments", f.segments.len()),
        json!({
            "segments": segments,
            "census": census,
            "twist_count": f.word().twist_count(),
            "euler_number": euler.as_ref().ok(),
        }),
    );
    if let Err(e) = euler {
        o.notes.push(format!("no Euler number: {e}"));
    }
    Ok(Body::Outcome(o))
}

fn construct(c: &ConstructCommand) -> Result<ConstructionDossier, String> {
    match c {
        ConstructCommand::Xg { genus, p, q } => {
            let ones = vec![1; *genus];
            let p = p.clone().unwrap_or_else(|| ones.clone());
            let q = q.clone().unwrap_or(ones);
            build_Xg(*genus, &p, &q).map_err(surgery)
        }
        ConstructCommand::XBigG { presentation: p, moregen } => {
            let g = presentation(p)?;
            if *moregen {
                build_XG_moregen(&g)
            } else {
                build_XG(&g)
            }
            .map_err(surgery)
        }
        ConstructCommand::XPlus { presentation: p, free } => match (p, free) {
            (Some(p), None) => build_XplusG(&presentation(p)?).map_err(surgery),
            (None, Some(n)) => build_XplusG_free(*n).map_err(surgery),
            _ => Err("give a presentation or --free n".into()),
        },
        ConstructCommand::Xpq1 { p, q } => build_Xpq_c1(*p, *q).map_err(surgery),
        ConstructCommand::Xpq23 { h, p, q, torus_z } => {
            let mode = if *torus_z { TorusMode::TorusZ } else { TorusMode::TorusTorus };
            build_Xpq_c23(*h, *p, *q, mode).map_err(surgery)
        }
        ConstructCommand::Rbd { name } => build_rbd_example(name).map_err(surgery),
    }
}

type Suite = fn(&mut ChaCha8Rng, usize) -> Result<String, String>;

const SUITES: [(&str, Suite); 4] = [
    ("blowdown-lemma", suite_blowdown),
    ("smith-transforms", suite_smith),
    ("xpq-gluing", suite_gluing),
    ("xG-betti", suite_xg_betti),
];

/// Runs every suite with its own generator seeded from `seed`; results come
/// back in suite order whatever `jobs` is.
pub fn selftest(seed: u64, cases: usize, jobs: usize) -> OutcomeJson {
    let run_one = |i: usize| {
        let (name, f) = SUITES[i];
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        let (status, evidence) = match f(&mut rng, cases) {
            Ok(ev) => (StatusJson::Pass, ev),
            Err(ev) => (StatusJson::Fail, ev),
        };
        ClaimJson::new(name, status, evidence)
    };
    let mut results: Vec<Option<ClaimJson>> = vec![None; SUITES.len()];
    std::thread::scope(|s| {
        let mut pending: Vec<usize> = (0..SUITES.len()).collect();
        while !pending.is_empty() {
            let batch: Vec<usize> = pending.drain(..jobs.min(pending.len())).collect();
            let handles: Vec<_> = batch.iter().map(|&i| (i, s.spawn(move || run_one(i)))).collect();
            for (i, h) in handles {
                results[i] = Some(h.join().expect("suite thread"));
            }
        }
    });
    let mut o = OutcomeJson::new(
        format!("seed {seed}, {cases} cases per suite"),
        json!({"seed": seed, "cases": cases}),
    );
    o.checks = results.into_iter().map(|r| r.expect("every suite ran")).collect();
    o
}

fn suite_blowdown(rng: &mut ChaCha8Rng, cases: usize) -> Result<String, String> {
    for _ in 0..cases {
        let chi: i64 = rng.gen_range(1..30);
        let p: u32 = rng.gen_range(2..=9);
        let b_plus = 2 * chi - 1;
        let b_minus = i64::from(p) - 1 + rng.gen_range(0..40);
        let (e, sigma) = (2 + b_plus + b_minus, b_plus - b_minus);
        let before = ManifoldBlock::new("X", e, sigma, GroupPresentation::trivial());
        let cert = MeridianCertificate::TrivialInComplement("assumed".into());
        let after = rational_blowdown(&before, p, Some(&cert)).map_err(|e| e.to_string())?;
        let d = i64::from(p) - 1;
        let b = |x: &ManifoldBlock| Invariants::from_numbers(x.e, x.sigma, 0).map(|i| i.b_plus).ok();
        let ok = after.sigma - before.sigma == d
            && after.c1_squared() - before.c1_squared() == d
            && after.chi_h() == before.chi_h()
            && b(&after) == b(&before);
        if !ok {
            return Err(format!("(e, sigma, p) = ({e}, {sigma}, {p})"));
        }
    }
    Ok(format!("{cases} random (e, sigma, p)"))
}

fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = vec![BigInt::from(0); a.rows() * b.cols()];
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            for k in 0..a.cols() {
                out[i * b.cols() + j] += &a.row(i)[k] * &b.row(k)[j];
            }
        }
    }
    IntMatrix::from_entries(a.rows(), b.cols(), out)
}

fn suite_smith(rng: &mut ChaCha8Rng, cases: usize) -> Result<String, String> {
    for _ in 0..cases {
        let (r, c) = (rng.gen_range(1..=5usize), rng.gen_range(1..=5usize));
        let entries: Vec<i64> = (0..r * c).map(|_| rng.gen_range(-20..=20)).collect();
        let a = IntMatrix::from_i64(r, c, &entries);
        let s = smith_normal_form(&a);
        if mul(&mul(&s.u, &a), &s.v) != s.d {
            return Err(format!("U A V != D for {entries:?}"));
        }
    }
    Ok(format!("U A V = D on {cases} random matrices"))
}

fn suite_gluing(rng: &mut ChaCha8Rng, cases: usize) -> Result<String, String> {
    let mut done = 0;
    while done < cases {
        let p = 2 * rng.gen_range(0..100i64) + 1;
        let q = rng.gen_range(1..200i64);
        let Some((a, d)) = solve_gluing(p, q) else {
            continue;
        };
        done += 1;
        let [r1, r2] = gluing_relators(p, q, a, d);
        let sums = |w: &Word| (w.exponent_sum(0), w.exponent_sum(1));
        if d * p - 2 * a * q != p * q - 1 || sums(&r1) != (p, 0) || sums(&r2) != (0, -q) {
            return Err(format!("(p, q, a, d) = ({p}, {q}, {a}, {d})"));
        }
    }
    Ok(format!("{cases} random (p, q) with gcd(p, 2q) = 1"))
}

fn suite_xg_betti(rng: &mut ChaCha8Rng, cases: usize) -> Result<String, String> {
    let target = (cases / 20).max(3);
    let mut done = 0;
    while done < target {
        let k = rng.gen_range(1..=3usize);
        let m = rng.gen_range(1..=2usize);
        let rels: Vec<Word> = (0..m)
            .map(|_| {
                let len = rng.gen_range(1..=6);
                Word::from_letters((0..len).map(|_| Letter::new(rng.gen_range(0..k), rng.gen_bool(0.5))))
            })
            .collect();
        if rels.iter().any(Word::is_identity) {
            continue;
        }
        let names: Vec<String> = (1..=k).map(|i| format!("x{i}")).collect();
        let g = GroupPresentation::new(names, rels).map_err(|e| e.to_string())?;
        if !is_dual_finite_torsion(&g) {
            continue;
        }
        done += 1;
        let d = build_XG(&g).map_err(|e| e.to_string())?;
        let b1 = abelian_invariants(&g).free_rank;
        if d.h1().free_rank != b1 || d.claims.iter().any(|c| c.status == ClaimStatus::Fail) {
            return Err(format!("{g}"));
        }
    }
    Ok(format!("b1 preserved on {target} random dual-finite-torsion groups"))
}
