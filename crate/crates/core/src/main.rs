use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use sortable_lab::config::{self, LoadedConfig};
use sortable_lab::report::{CheckResult, Format, Params, RunReport};
use sortable_lab::scenario;
use sortable_lab::suites::{self, SuiteParams};
use sortable_lab::{Error, GenSet, DEFAULT_CAP};

#[derive(Parser)]
#[command(
    name = "sortable-lab",
    version,
    about = "Exact sortable-element combinatorics over arbitrarily oriented Coxeter diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Group configuration: a JSON file path or a bundled name
    /// (a2, a3, b3, affine-a2-cyclic, hyperbolic-b3-mutation, dihedral-infinite).
    #[arg(long)]
    config: String,
    /// Ball radius for bounded enumeration.
    #[arg(long, default_value_t = 6)]
    length_bound: u32,
    /// Guardrail on enumerated elements (and factorization terms).
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Seed for the randomized trials; recorded in the report.
    #[arg(long, default_value_t = 12345)]
    seed: u64,
    /// Randomized trials per seeded check.
    #[arg(long, default_value_t = 20)]
    trials: u32,
    /// Report format: json, csv, or text.
    #[arg(long, default_value = "json")]
    format: String,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record real per-check timings (reports are no longer byte-identical).
    #[arg(long, default_value_t = false)]
    timings: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a configuration and print the derived data.
    Validate(Common),
    /// Enumerate the ball of bounded length.
    Ball(Common),
    /// Sorting word, layers, and sortability of one element.
    SortingWord {
        #[command(flatten)]
        common: Common,
        /// Element as comma-separated generator names, e.g. p,q,r.
        #[arg(long)]
        word: String,
    },
    /// Count and list the sortable elements in a ball.
    Sortables(Common),
    /// Downward projection of one element.
    PiDown {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
    },
    /// Feasible-set family axioms over a ball, all orientations.
    Antimatroid(Common),
    /// Cone fiber partition over a ball.
    Fibers(Common),
    /// Alignment conditions for one reduced word.
    Alignment {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
    },
    /// Run a bundled scenario report.
    Scenario {
        /// Scenario name: s5-family or s5-remark.
        #[arg(long)]
        name: String,
        /// Family parameter d (s5-family).
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// Cartan entries X,Y,Z for s5-remark, e.g. 2,2,3.
        #[arg(long)]
        xyz: Option<String>,
        #[arg(long, default_value_t = 12345)]
        seed: u64,
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run named verification suites.
    Theorems {
        #[command(flatten)]
        common: Common,
        /// Suite name or "all".
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Layer factorizations of one element.
    Factorizations {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        word: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn parse_format(s: &str) -> Result<Format, Error> {
    Format::from_str(s).map_err(Error::Config)
}

fn parse_word(cfg: &LoadedConfig, word: &str) -> Result<Vec<usize>, Error> {
    word.split(',')
        .map(|name| cfg.data.index_of(name.trim()))
        .collect()
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn render(report: &RunReport, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    }
}

fn finish(report: RunReport, format: Format, out: &Option<PathBuf>) -> Result<ExitCode, Error> {
    let code = if report.overall { 0 } else { 1 };
    emit(&render(&report, format), out)?;
    Ok(ExitCode::from(code))
}

fn base_params(common: &Common) -> Params {
    Params {
        length_bound: Some(common.length_bound),
        cap: Some(common.cap),
        seed: Some(common.seed),
        trials: Some(common.trials),
        ..Params::default()
    }
}

fn run(command: Command) -> Result<ExitCode, Error> {
    match command {
        Command::Validate(common) => {
            let format = parse_format(&common.format)?;
            // Semantic violations become a failed check; unreadable input is
            // still a usage error.
            let (digest, check, values) = match config::load_config(&common.config) {
                Ok(cfg) => {
                    let mut values = BTreeMap::new();
                    values.insert(
                        "generators".to_string(),
                        serde_json::json!(cfg.data.names()),
                    );
                    values.insert(
                        "delta".to_string(),
                        serde_json::json!(cfg
                            .data
                            .deltas()
                            .iter()
                            .map(|d| d.to_string())
                            .collect::<Vec<_>>()),
                    );
                    let bonds: Vec<String> = cfg
                        .data
                        .edges()
                        .iter()
                        .map(|&(s, t)| {
                            format!(
                                "{{{},{}}}: m={}",
                                cfg.data.name(s),
                                cfg.data.name(t),
                                cfg.data.bond(s, t)
                            )
                        })
                        .collect();
                    values.insert("bonds".to_string(), serde_json::json!(bonds));
                    values.insert(
                        "orientation".to_string(),
                        serde_json::json!(cfg.ori.fmt_arrows(&cfg.data)),
                    );
                    (cfg.digest, CheckResult::new("config-valid", true, None), values)
                }
                Err(Error::Config(msg)) => return Err(Error::Config(msg)),
                Err(semantic) => (
                    String::new(),
                    CheckResult::new("config-valid", false, Some(semantic.to_string())),
                    BTreeMap::new(),
                ),
            };
            let mut report = RunReport::new("validate", &digest, base_params(&common));
            report.push(check);
            for (k, v) in values {
                report.set_value(&k, v);
            }
            finish(report, format, &common.out)
        }
        Command::Ball(common) => {
            let format = parse_format(&common.format)?;
            let cfg = config::load_config(&common.config)?;
            let mut report = RunReport::new("ball", &cfg.digest, base_params(&common));
            let start = Instant::now();
            match cfg.data.ball(common.length_bound, common.cap) {
                Ok(ball) => {
                    let mut sizes: BTreeMap<u32, usize> = BTreeMap::new();
                    for w in &ball {
                        *sizes.entry(w.length()).or_insert(0) += 1;
                    }
                    report.set_value("total", serde_json::json!(ball.len()));
                    report.set_value(
                        "by_length",
                        serde_json::json!(sizes
                            .iter()
                            .map(|(l, c)| (l.to_string(), *c))
                            .collect::<BTreeMap<_, _>>()),
                    );
                    report.set_value(
                        "whole_group",
                        serde_json::json!(cfg.data.ball_is_whole_group(&ball, common.length_bound)),
                    );
                    report.push(timed(
                        CheckResult::new("ball-within-cap", true, None),
                        start,
                        common.timings,
                    ));
                }
                Err(e) => report.push(timed(
                    CheckResult::new("ball-within-cap", false, Some(e.to_string())),
                    start,
                    common.timings,
                )),
            }
            finish(report, format, &common.out)
        }
        Command::SortingWord { common, word } => {
            let format = parse_format(&common.format)?;
            let cfg = config::load_config(&common.config)?;
            let letters = parse_word(&cfg, &word)?;
            let w = cfg.data.element_of_word(&letters);
            let mut report = RunReport::new("sorting-word", &cfg.digest, {
                let mut p = base_params(&common);
                p.word = Some(word.clone());
                p
            });
            let start = Instant::now();
            let (sorting, layers) = cfg.data.omega_sorting_word(&cfg.ori, &w);
            report.set_value("element", serde_json::json!(element_names(&cfg, &w)));
            report.set_value(
                "sorting_word",
                serde_json::json!(sorting
                    .iter()
                    .map(|&s| cfg.data.name(s))
                    .collect::<Vec<_>>()),
            );
            report.set_value(
                "layers",
                serde_json::json!(layers
                    .layers
                    .iter()
                    .map(|j| cfg.data.fmt_set(*j))
                    .collect::<Vec<_>>()),
            );
            report.set_value("sortable", serde_json::json!(layers.is_nested()));
            let reduced = sorting.len() == w.length() as usize
                && cfg.data.element_of_word(&sorting) == w;
            report.push(timed(
                CheckResult::new(
                    "sorting-word-reduced",
                    reduced,
                    (!reduced).then(|| "sorting word does not multiply back".to_string()),
                ),
                start,
                common.timings,
            ));
            finish(report, format, &common.out)
        }
        Command::Sortables(common) => {
            let format = parse_format(&common.format)?;
            let cfg = config::load_config(&common.config)?;
            let mut report = RunReport::new("sortables", &cfg.digest, base_params(&common));
            let start = Instant::now();
            let ball = cfg.data.ball(common.length_bound, common.cap)?;
            let sortables: Vec<_> = ball
                .iter()
                .filter(|w| cfg.data.is_omega_sortable(&cfg.ori, w))
                .collect();
            let by_projection = ball
                .iter()
                .filter(|w| cfg.data.pi_down_omega(&cfg.ori, w) == **w)
                .count();
            report.set_value("ball_size", serde_json::json!(ball.len()));
            report.set_value("count", serde_json::json!(sortables.len()));
            report.set_value("count_by_projection", serde_json::json!(by_projection));
            report.set_value(
                "whole_group",
                serde_json::json!(cfg.data.ball_is_whole_group(&ball, common.length_bound)),
            );
            if sortables.len() <= 500 {
                report.set_value(
                    "elements",
                    serde_json::json!(sortables
                        .iter()
                        .map(|w| element_names(&cfg, w))
                        .collect::<Vec<_>>()),
                );
            }
            report.push(timed(
                CheckResult::new(
                    "counts-agree",
                    sortables.len() == by_projection,
                    (sortables.len() != by_projection).then(|| {
                        format!("{} by definition, {by_projection} by projection", sortables.len())
                    }),
                ),
                start,
                common.timings,
            ));
            finish(report, format, &common.out)
        }
        Command::PiDown { common, word } => {
            let format = parse_format(&common.format)?;
            let cfg = config::load_config(&common.config)?;
            let letters = parse_word(&cfg, &word)?;
            let w = cfg.data.element_of_word(&letters);
            let mut report = RunReport::new("pi-down", &cfg.digest, {
                let mut p = base_params(&common);
                p.word = Some(word.clone());
                p
            });
            let start = Instant::now();
            let pi = cfg.data.pi_down_omega(&cfg.ori, &w);
            report.set_value("element", serde_json::json!(element_names(&cfg, &w)));
            report.set_value("projection", serde_json::json!(element_names(&cfg, &pi)));
            report.set_value(
                "fixed_point",
                serde_json::json!(pi == w),
            );
            let below = cfg.data.weak_leq(&pi, &w);
            let sortable = cfg.data.is_omega_sortable(&cfg.ori, &pi);
            report.push(timed(
                CheckResult::new(
                    "projection-weakly-below",
                    below,
                    (!below).then(|| "projection not below the input".to_string()),
                ),
                start,
                common.timings,
            ));
            report.push(CheckResult::new(
                "projection-sortable",
                sortable,
                (!sortable).then(|| "projection not sortable".to_string()),
            ));
            finish(report, format, &common.out)
        }
        Command::Antimatroid(common) => run_suite_command(common, "antimatroid-axioms"),
        Command::Fibers(common) => {
            let format = parse_format(&common.format)?;
            let cfg = config::load_config(&common.config)?;
            let mut report = RunReport::new("fibers", &cfg.digest, base_params(&common));
            let start = Instant::now();
            let fibers = cfg.data.fiber_verify(&cfg.ori, common.length_bound, common.cap)?;
            report.set_value("ball_size", serde_json::json!(fibers.ball_size));
            report.set_value("sortable_count", serde_json::json!(fibers.sortable_count));
            report.set_value("violations", serde_json::json!(fibers.violations.len()));
            let pass = fibers.pass();
            report.push(timed(
                CheckResult::new(
                    "fibers-partition",
                    pass,
                    (!pass).then(|| fibers.violations[0].clone()),
                ),
                start,
                common.timings,
            ));
            finish(report, format, &common.out)
        }
        Command::Alignment { common, word } => {
            let format = parse_format(&common.format)?;
            let cfg = config::load_config(&common.config)?;
            let letters = parse_word(&cfg, &word)?;
            let w = cfg.data.element_of_word(&letters);
            let mut report = RunReport::new("alignment", &cfg.digest, {
                let mut p = base_params(&common);
                p.word = Some(word.clone());
                p
            });
            let start = Instant::now();
            let reduced = w.length() as usize == letters.len();
            report.push(CheckResult::new(
                "word-reduced",
                reduced,
                (!reduced).then(|| "the given word is not reduced".to_string()),
            ));
            if reduced {
                let word_verdict = cfg.data.alignment_word_condition(&cfg.ori, &letters)?;
                report.set_value("word_condition", serde_json::json!(word_verdict.pass));
                if let Some(wit) = word_verdict.witness {
                    report.set_value("word_condition_witness", serde_json::json!(wit));
                }
                let universe = alignment_universe(&cfg, common.length_bound.min(6), common.cap)?;
                let inv_verdict =
                    cfg.data
                        .alignment_inversion_condition(&cfg.ori, &w, &universe);
                report.set_value("inversion_condition", serde_json::json!(inv_verdict.pass));
                report.set_value(
                    "universe_size",
                    serde_json::json!(inv_verdict.universe_size),
                );
                if let Some(wit) = inv_verdict.witness {
                    report.set_value("inversion_condition_witness", serde_json::json!(wit));
                }
            }
            if common.timings {
                if let Some(first) = report.checks.first_mut() {
                    first.timing_ms = start.elapsed().as_millis() as u64;
                }
            }
            finish(report, format, &common.out)
        }
        Command::Scenario { name, d, xyz, seed, format, out } => {
            let format = parse_format(&format)?;
            let xyz = match xyz {
                None => None,
                Some(text) => {
                    let parts: Vec<i64> = text
                        .split(',')
                        .map(|p| {
                            p.trim()
                                .parse::<i64>()
                                .map_err(|e| Error::Config(format!("bad --xyz entry {p:?}: {e}")))
                        })
                        .collect::<Result<_, _>>()?;
                    if parts.len() != 3 {
                        return Err(Error::Config("--xyz expects three integers".into()));
                    }
                    Some((parts[0], parts[1], parts[2]))
                }
            };
            let report = scenario::run_scenario(&name, d, xyz, seed)?;
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&report).expect("serializes"),
                Format::Csv => {
                    let mut out = String::from("name,pass,witness,timing_ms\n");
                    for v in &report.verdicts {
                        out.push_str(&format!(
                            "{},{},{},0\n",
                            v.name,
                            v.pass,
                            v.witness.as_deref().unwrap_or("")
                        ));
                    }
                    out
                }
                Format::Text => {
                    let mut text = format!("scenario {}\n", report.scenario);
                    for v in &report.verdicts {
                        text.push_str(&format!(
                            "  [{}] {}\n",
                            if v.pass { "PASS" } else { "FAIL" },
                            v.name
                        ));
                    }
                    for (k, v) in &report.values {
                        text.push_str(&format!("  {k} = {v}\n"));
                    }
                    text
                }
            };
            emit(&text, &out)?;
            Ok(ExitCode::from(if report.overall() { 0 } else { 1 }))
        }
        Command::Theorems { common, suite } => run_suite_command(common, &suite),
        Command::Factorizations { common, word } => {
            let format = parse_format(&common.format)?;
            let cfg = config::load_config(&common.config)?;
            let letters = parse_word(&cfg, &word)?;
            let w = cfg.data.element_of_word(&letters);
            let mut report = RunReport::new("factorizations", &cfg.digest, {
                let mut p = base_params(&common);
                p.word = Some(word.clone());
                p
            });
            let start = Instant::now();
            match cfg.data.factorization_polynomial(&cfg.ori, &w, common.cap) {
                Ok(poly) => {
                    let terms: BTreeMap<String, u64> = poly
                        .compositions
                        .iter()
                        .map(|(comp, count)| {
                            let key = comp
                                .iter()
                                .map(|c| c.to_string())
                                .collect::<Vec<_>>()
                                .join(",");
                            (format!("({key})"), *count)
                        })
                        .collect();
                    report.set_value("compositions", serde_json::json!(terms));
                    report.set_value("total", serde_json::json!(poly.total()));
                    let (_, layers) = cfg.data.omega_sorting_word(&cfg.ori, &w);
                    let comp: Vec<u32> =
                        layers.layers.iter().map(|j| j.len() as u32).collect();
                    let unique = poly.multiplicity(&comp) == 1;
                    let dominant = poly.dominant() == Some(&comp);
                    report.push(timed(
                        CheckResult::new(
                            "sorting-composition-unique",
                            unique,
                            (!unique).then(|| format!("multiplicity {}", poly.multiplicity(&comp))),
                        ),
                        start,
                        common.timings,
                    ));
                    report.push(CheckResult::new(
                        "sorting-composition-dominant",
                        dominant,
                        (!dominant).then(|| "a later composition dominates".to_string()),
                    ));
                }
                Err(e) => report.push(CheckResult::new(
                    "factorizations-within-cap",
                    false,
                    Some(e.to_string()),
                )),
            }
            finish(report, format, &common.out)
        }
    }
}

fn run_suite_command(common: Common, suite: &str) -> Result<ExitCode, Error> {
    let format = parse_format(&common.format)?;
    let cfg = config::load_config(&common.config)?;
    let params = SuiteParams {
        length_bound: common.length_bound,
        cap: common.cap,
        seed: common.seed,
        trials: common.trials,
    };
    let mut report = RunReport::new("theorems", &cfg.digest, {
        let mut p = base_params(&common);
        p.suite = Some(suite.to_string());
        p
    });
    let names: Vec<&str> = if suite == "all" {
        suites::suite_names()
    } else {
        vec![suite]
    };
    for name in names {
        let start = Instant::now();
        let results = suites::run_suites(&cfg.data, &cfg.ori, name, &params)?;
        for check in results {
            report.push(timed(check, start, common.timings));
        }
    }
    finish(report, format, &common.out)
}

fn timed(mut check: CheckResult, start: Instant, enabled: bool) -> CheckResult {
    if enabled {
        check.timing_ms = start.elapsed().as_millis() as u64;
    }
    check
}

fn element_names(cfg: &LoadedConfig, w: &sortable_lab::Element) -> Vec<String> {
    cfg.data
        .canonical_word(w)
        .iter()
        .map(|&s| cfg.data.name(s).to_string())
        .collect()
}

fn alignment_universe(
    cfg: &LoadedConfig,
    bound: u32,
    cap: usize,
) -> Result<Vec<sortable_lab::Root>, Error> {
    let mut roots = std::collections::BTreeSet::new();
    for w in cfg.data.ball(bound, cap)? {
        roots.extend(cfg.data.inversions(&w));
    }
    Ok(roots.into_iter().collect())
}

// GenSet re-exported to keep the CLI surface aligned with the library.
#[allow(unused)]
fn _unused(_: GenSet) {}
