use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, ValueEnum};
use serde::Serialize;

use seifert_cover::a5::count_a5_specialized;
use seifert_cover::builtin::{builtin, parse_group_file};
use seifert_cover::character::DixonConfig;
use seifert_cover::dw::LambdaBasis;
use seifert_cover::group::{FiniteGroup, DEFAULT_MAX_ORDER};
use seifert_cover::oracle::{
    count_homs_with, presentation_nonorientable_split, presentation_nonorientable_standard,
    presentation_orientable, OracleConfig, Presentation, DEFAULT_MAX_SPACE,
};
use seifert_cover::seifert::{count, parse_seifert, SeifertData};
use seifert_cover::tqft::Tqft;
use seifert_cover::{Error, ErrorKind};

/// Count regular Γ-coverings of Seifert 3-manifolds.
#[derive(Parser, Debug)]
#[command(name = "seifert-cover", version)]
struct Cli {
    /// Builtin group: Cn, Dn, Sn, An or Q8, optionally prefixed with `builtin:`
    #[arg(
        long,
        conflicts_with = "group_file",
        required_unless_present = "group_file"
    )]
    group: Option<String>,

    /// Group file in `perm <degree>` or `cayley <n>` format
    #[arg(long)]
    group_file: Option<PathBuf>,

    /// Manifold descriptor such as `O;g=1;(2,1)(3,-1)`
    #[arg(long)]
    seifert: String,

    #[arg(long, value_enum, default_value_t = Mode::Formula)]
    mode: Mode,

    /// Seed for the character-table computation
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Print a JSON report instead of text
    #[arg(long)]
    json: bool,

    /// Worker threads for parallel loops (default: all cores)
    #[arg(long)]
    threads: Option<usize>,

    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,

    /// Bound on #Γ^(number of generators) for the brute-force count
    #[arg(long, default_value_t = DEFAULT_MAX_SPACE)]
    max_oracle_space: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Mode {
    Formula,
    Structural,
    Oracle,
    Verify,
    A5check,
}

#[derive(Serialize)]
struct TermRow {
    index: usize,
    class: usize,
    representative: String,
    char_row: usize,
    degree: u64,
    dim: u64,
    eta_product: String,
    contribution: String,
}

#[derive(Serialize)]
struct Report {
    group: String,
    group_order: usize,
    seifert: String,
    mode: Mode,
    seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    terms: Option<Vec<TermRow>>,
    /// Count per computation route.
    counts: BTreeMap<String, String>,
    count: String,
    z: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    agree: Option<bool>,
    /// Brute-force count for the presentation with `y h y⁻¹ = h⁻¹` and no `h² = e`, for comparison only.
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_standard_presentation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    piece_cross_checked: Option<bool>,
    timings_ms: BTreeMap<String, f64>,
}

struct Job {
    cli: Cli,
    group_name: String,
    group: Arc<FiniteGroup>,
    data: SeifertData,
}

fn load_group(cli: &Cli) -> anyhow::Result<(String, FiniteGroup)> {
    if let Some(path) = &cli.group_file {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok((
            path.display().to_string(),
            parse_group_file(&text, cli.max_order)?,
        ));
    }
    let spec = cli.group.as_deref().unwrap_or_default();
    let name = spec.strip_prefix("builtin:").unwrap_or(spec);
    let group = builtin(name)?;
    if group.order() > cli.max_order {
        return Err(Error::SizeLimit {
            limit: cli.max_order,
        }
        .into());
    }
    Ok((format!("builtin:{name}"), group))
}

fn representative(g: &FiniteGroup, x: u32) -> String {
    match g.cycle_type(x) {
        Some(ct) => format!("cycle type {ct:?}"),
        None => format!("element {x}"),
    }
}

fn timed<T>(timings: &mut BTreeMap<String, f64>, key: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    timings.insert(key.to_string(), start.elapsed().as_secs_f64() * 1e3);
    out
}

fn presentations(
    data: &SeifertData,
) -> seifert_cover::Result<(Presentation, Option<Presentation>)> {
    if data.orientable_base {
        Ok((presentation_orientable(data.genus, &data.pairs)?, None))
    } else {
        Ok((
            presentation_nonorientable_split(data.genus, &data.pairs)?,
            Some(presentation_nonorientable_standard(
                data.genus,
                &data.pairs,
            )?),
        ))
    }
}

fn is_a5(job: &Job) -> bool {
    job.group_name == "builtin:A5"
}

fn run(job: &Job) -> anyhow::Result<Report> {
    let cli = &job.cli;
    let g = &job.group;
    let data = &job.data;
    let mut timings = BTreeMap::new();
    let mut counts = BTreeMap::new();
    let mut report = Report {
        group: job.group_name.clone(),
        group_order: g.order(),
        seifert: data.to_string(),
        mode: cli.mode,
        seed: cli.seed,
        lambda_size: None,
        terms: None,
        counts: BTreeMap::new(),
        count: String::new(),
        z: String::new(),
        agree: None,
        oracle_standard_presentation: None,
        piece_cross_checked: None,
        timings_ms: BTreeMap::new(),
    };

    let wants = |m: Mode| cli.mode == m || cli.mode == Mode::Verify;
    let oracle_cfg = OracleConfig {
        max_space: cli.max_oracle_space,
        parallel: true,
    };

    if cli.mode == Mode::A5check {
        if !is_a5(job) {
            bail!(Error::InvalidArgument(
                "a5check needs --group builtin:A5".into()
            ));
        }
        if !data.orientable_base {
            bail!(Error::InvalidArgument(
                "a5check covers orientable bases only".into()
            ));
        }
    }

    let needs_basis = cli.mode != Mode::Oracle;
    let basis: Option<LambdaBasis> = if needs_basis {
        let b = timed(&mut timings, "basis", || {
            LambdaBasis::build(g, cli.seed, &DixonConfig::default())
        })?;
        report.lambda_size = Some(b.len());
        Some(b)
    } else {
        None
    };

    if let Some(basis) = &basis {
        if wants(Mode::Formula) || cli.mode == Mode::A5check {
            let result = timed(&mut timings, "formula", || count(basis, data))?;
            let classes = basis.class_data();
            report.terms = Some(
                result
                    .terms
                    .iter()
                    .enumerate()
                    .map(|(i, t)| TermRow {
                        index: i,
                        class: t.index.class,
                        representative: representative(g, classes.representative(t.index.class)),
                        char_row: t.index.char_row,
                        degree: basis.sector(t.index.class).table.degree(t.index.char_row),
                        dim: t.dim,
                        eta_product: t.eta_product.to_string(),
                        contribution: t.contribution.to_string(),
                    })
                    .collect(),
            );
            counts.insert("formula".to_string(), result.count.to_string());
        }
        if wants(Mode::Structural) {
            let result = timed(&mut timings, "structural", || {
                Tqft::new(basis).z_seifert_structural(data)
            })?;
            report.piece_cross_checked = result.piece_cross_checked;
            counts.insert("structural".to_string(), result.count.to_string());
        }
        if cli.mode == Mode::A5check
            || (cli.mode == Mode::Verify && is_a5(job) && data.orientable_base)
        {
            let special = timed(&mut timings, "a5_specialized", || {
                count_a5_specialized(data)
            })?;
            counts.insert("a5_specialized".to_string(), special.to_string());
        }
    }

    if wants(Mode::Oracle) {
        let (split, standard) = presentations(data)?;
        let n = timed(&mut timings, "oracle", || {
            count_homs_with(g, &split, &oracle_cfg)
        })?;
        counts.insert("oracle".to_string(), n.to_string());
        if let Some(standard) = standard {
            let s = timed(&mut timings, "oracle_standard", || {
                count_homs_with(g, &standard, &oracle_cfg)
            })?;
            report.oracle_standard_presentation = Some(s.to_string());
        }
    }

    let first = counts
        .values()
        .next()
        .cloned()
        .context("no computation ran")?;
    let agree = counts.values().all(|c| *c == first);
    if counts.len() > 1 {
        report.agree = Some(agree);
    }
    report.count = first;
    let order = g.order() as u128;
    report.z = match report.count.parse::<u128>() {
        Ok(c) => reduced_fraction(c, order),
        Err(_) => format!("{}/{}", report.count, order),
    };
    report.counts = counts;
    report.timings_ms = timings;
    Ok(report)
}

fn reduced_fraction(n: u128, d: u128) -> String {
    fn gcd(a: u128, b: u128) -> u128 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let k = gcd(n, d).max(1);
    if d / k == 1 {
        (n / k).to_string()
    } else {
        format!("{}/{}", n / k, d / k)
    }
}

fn print_text(r: &Report) {
    println!("group           {} (order {})", r.group, r.group_order);
    println!("manifold        {}", r.seifert);
    if let Some(n) = r.lambda_size {
        println!("#Λ              {n}");
    }
    for (route, c) in &r.counts {
        println!("{route:<16}{c}");
    }
    if let Some(s) = &r.oracle_standard_presentation {
        println!("oracle, y h y⁻¹ = h⁻¹ variant  {s}");
    }
    if let Some(a) = r.agree {
        println!("agree           {a}");
    }
    println!("count           {}", r.count);
    println!("Z(M)            {}", r.z);
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>().map(Error::kind) {
        Some(ErrorKind::CostLimit) => 2,
        Some(ErrorKind::Internal) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let result = (|| {
        let (group_name, group) = load_group(&cli)?;
        let data = parse_seifert(&cli.seifert)?;
        let job = Job {
            group_name,
            group: Arc::new(group),
            data,
            cli,
        };
        let report = run(&job)?;
        Ok::<_, anyhow::Error>((job.cli.json, report))
    })();
    match result {
        Ok((json, report)) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                );
            } else {
                print_text(&report);
            }
            if report.agree == Some(false) {
                eprintln!("error: computation routes disagree");
                return ExitCode::from(3);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
