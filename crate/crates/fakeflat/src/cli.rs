//! Batch front end: resolve a crossed module and a surface (built-in name
//! or JSON file), run a computation or the verification suite, and write a
//! deterministic report.
//!
//! The same configuration always produces byte-identical output: fixture
//! lists, basis orders and check orders are fixed, randomized move sequences
//! are seeded, and no map with nondeterministic iteration order feeds any
//! output path.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::crossed::CrossedModule;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::invariant::{count_colourings, invariant, CountMode, Limits};
use crate::io;
use crate::scalar::ExactScalar;
use crate::surface::SurfaceComplex;
use crate::tqft::{MatrixJson, TqftMatrix};
use crate::two_conjugacy::{class_report, ClassReport};
use crate::verify::{verify_fixtures, verify_module, Check, VerifyOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Verify,
    Invariant,
    Matrix,
    Classes,
    Report,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Fast,
    Oracle,
    Both,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fast" => Ok(Mode::Fast),
            "oracle" => Ok(Mode::Oracle),
            "both" => Ok(Mode::Both),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::Parse(format!("unknown output format {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    /// Built-in fixture name (X1..X5) or a JSON file path.
    pub module: Option<String>,
    /// Built-in surface name or a JSON file path.
    pub surface: Option<String>,
    pub g_in: Vec<usize>,
    pub g_out: Vec<usize>,
    pub mode: Mode,
    pub output: OutputFormat,
    /// Append decimal approximations for human scanning.
    pub float: bool,
    pub limits: Limits,
    pub move_sequences: usize,
    pub move_depth: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let opts = VerifyOptions::default();
        RunConfig {
            command: Command::Report,
            module: None,
            surface: None,
            g_in: Vec::new(),
            g_out: Vec::new(),
            mode: Mode::Fast,
            output: OutputFormat::Text,
            float: false,
            limits: Limits::default(),
            move_sequences: opts.move_sequences,
            move_depth: opts.move_depth,
            seed: opts.seed,
        }
    }
}

fn looks_like_path(s: &str) -> bool {
    s.contains('/') || s.ends_with(".json") || Path::new(s).exists()
}

fn resolve_module(source: &str) -> Result<CrossedModule> {
    if looks_like_path(source) {
        let text = std::fs::read_to_string(source)
            .map_err(|e| Error::Parse(format!("cannot read {source}: {e}")))?;
        io::crossed_module_from_json(&text)
    } else {
        fixtures::crossed_module_by_name(source)
    }
}

fn resolve_surface(source: &str) -> Result<SurfaceComplex> {
    if looks_like_path(source) {
        let text = std::fs::read_to_string(source)
            .map_err(|e| Error::Parse(format!("cannot read {source}: {e}")))?;
        io::surface_from_json(&text)
    } else {
        fixtures::surface_by_name(source)
    }
}

fn require<'a>(source: &'a Option<String>, what: &str) -> Result<&'a str> {
    source
        .as_deref()
        .ok_or_else(|| Error::Parse(format!("--{what} is required for this command")))
}

fn scalar_line(v: &ExactScalar, float: bool) -> String {
    if float {
        format!("{v} ≈ {:.6}", v.approx())
    } else {
        v.to_string()
    }
}

fn verify_options(config: &RunConfig) -> VerifyOptions {
    VerifyOptions {
        limits: config.limits,
        move_sequences: config.move_sequences,
        move_depth: config.move_depth,
        seed: config.seed,
    }
}

/// Runs one command, writing the report to `out`. Returns the process exit
/// code: 0 for success, 1 when a verification check failed.
pub fn run(config: &RunConfig, out: &mut dyn std::io::Write) -> Result<i32> {
    let mut text = String::new();
    let code = render(config, &mut text)?;
    out.write_all(text.as_bytes())
        .map_err(|e| Error::Parse(format!("write failed: {e}")))?;
    Ok(code)
}

fn render(config: &RunConfig, out: &mut String) -> Result<i32> {
    match config.command {
        Command::Invariant => cmd_invariant(config, out),
        Command::Matrix => cmd_matrix(config, out),
        Command::Classes => cmd_classes(config, out),
        Command::Verify => cmd_verify(config, out),
        Command::Report => cmd_report(config, out),
    }
}

fn cmd_invariant(config: &RunConfig, out: &mut String) -> Result<i32> {
    let cm = resolve_module(require(&config.module, "module")?)?;
    let s = resolve_surface(require(&config.surface, "surface")?)?;
    let value = match config.mode {
        Mode::Fast | Mode::Both => {
            let fast = count_colourings(
                &s,
                &cm,
                &config.g_in,
                &config.g_out,
                CountMode::Fast,
                &config.limits,
            )?;
            if config.mode == Mode::Both {
                let oracle = count_colourings(
                    &s,
                    &cm,
                    &config.g_in,
                    &config.g_out,
                    CountMode::Oracle,
                    &config.limits,
                )?;
                if fast != oracle {
                    return Err(Error::CountDivergence { oracle, fast });
                }
            }
            invariant(&s, &cm, &config.g_in, &config.g_out, &config.limits)?
        }
        Mode::Oracle => crate::invariant::invariant_with_mode(
            &s,
            &cm,
            &config.g_in,
            &config.g_out,
            CountMode::Oracle,
            &config.limits,
        )?,
    };
    match config.output {
        OutputFormat::Json => {
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string(&value).expect("scalar json")
            );
        }
        OutputFormat::Text | OutputFormat::Csv => {
            let _ = writeln!(out, "{}", scalar_line(&value, config.float));
        }
    }
    Ok(0)
}

fn cmd_matrix(config: &RunConfig, out: &mut String) -> Result<i32> {
    let cm = resolve_module(require(&config.module, "module")?)?;
    let s = resolve_surface(require(&config.surface, "surface")?)?;
    let z = TqftMatrix::from_surface(&s, &cm, &config.limits)?;
    if config.mode == Mode::Both {
        // re-derive every entry through the oracle and compare
        for r in 0..z.rows() {
            let g_out = crate::tqft::index_tuple(r, cm.g().order(), s.n_out());
            for c in 0..z.cols() {
                let g_in = crate::tqft::index_tuple(c, cm.g().order(), s.n_in());
                let oracle = crate::invariant::invariant_with_mode(
                    &s,
                    &cm,
                    &g_in,
                    &g_out,
                    CountMode::Oracle,
                    &config.limits,
                )?;
                if &oracle != z.entry(r, c) {
                    return Err(Error::Parse(format!(
                        "oracle disagrees with fast entry at row {r}, column {c}"
                    )));
                }
            }
        }
    }
    match config.output {
        OutputFormat::Json => {
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&z.to_json_value()).expect("matrix json")
            );
        }
        OutputFormat::Csv => out.push_str(&z.to_csv()),
        OutputFormat::Text => {
            let _ = writeln!(
                out,
                "Z[{}] over {}: {} x {}",
                s.name(),
                cm.name(),
                z.rows(),
                z.cols()
            );
            for r in 0..z.rows() {
                let row: Vec<String> = (0..z.cols())
                    .map(|c| scalar_line(z.entry(r, c), config.float))
                    .collect();
                let _ = writeln!(out, "  [ {} ]", row.join("  "));
            }
        }
    }
    Ok(0)
}

fn cmd_classes(config: &RunConfig, out: &mut String) -> Result<i32> {
    let cm = resolve_module(require(&config.module, "module")?)?;
    let report = class_report(&cm);
    match config.output {
        OutputFormat::Json => {
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&report).expect("class report json")
            );
        }
        OutputFormat::Text | OutputFormat::Csv => render_classes_text(&report, out),
    }
    Ok(if report.gcf_times_order_equals_class_count {
        0
    } else {
        1
    })
}

fn render_classes_text(report: &ClassReport, out: &mut String) {
    let _ = writeln!(
        out,
        "module {} (|G| = {}, |H| = {})",
        report.module, report.group_order, report.h_order
    );
    for (i, class) in report.classes.iter().enumerate() {
        let _ = writeln!(
            out,
            "  class {i}: {:?} (size {}, C(g,g) = {})",
            class, report.class_sizes[i], report.c_diagonal[class[0]]
        );
    }
    let _ = writeln!(out, "  generalized commuting fraction: {}", report.gcf);
    let _ = writeln!(
        out,
        "  gcf · |G| = #classes: {}",
        if report.gcf_times_order_equals_class_count {
            "ok"
        } else {
            "VIOLATED"
        }
    );
}

fn run_checks(config: &RunConfig) -> Result<Vec<Check>> {
    let opts = verify_options(config);
    Ok(match &config.module {
        Some(source) => verify_module(&resolve_module(source)?, &opts),
        None => verify_fixtures(&opts),
    })
}

fn cmd_verify(config: &RunConfig, out: &mut String) -> Result<i32> {
    let checks = run_checks(config)?;
    let all_passed = checks.iter().all(|c| c.passed);
    match config.output {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct VerifyDoc<'a> {
                checks: &'a [Check],
                all_passed: bool,
            }
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&VerifyDoc {
                    checks: &checks,
                    all_passed
                })
                .expect("verify json")
            );
        }
        OutputFormat::Text | OutputFormat::Csv => {
            for c in &checks {
                let _ = writeln!(
                    out,
                    "{} {} — {}",
                    if c.passed { "ok  " } else { "FAIL" },
                    c.name,
                    c.detail
                );
            }
            let _ = writeln!(
                out,
                "{} of {} checks passed",
                checks.iter().filter(|c| c.passed).count(),
                checks.len()
            );
        }
    }
    Ok(if all_passed { 0 } else { 1 })
}

#[derive(Serialize)]
struct ModuleReport {
    module: String,
    g_order: usize,
    h_order: usize,
    kernel: Vec<usize>,
    image: Vec<usize>,
    sphere: ExactScalar,
    torus: ExactScalar,
    cylinder_matrix: MatrixJson,
    disk_in_matrix: MatrixJson,
    classes: ClassReport,
    checks: Vec<Check>,
}

#[derive(Serialize)]
struct ReportDoc {
    modules: Vec<ModuleReport>,
    all_passed: bool,
}

fn cmd_report(config: &RunConfig, out: &mut String) -> Result<i32> {
    let modules = match &config.module {
        Some(source) => vec![resolve_module(source)?],
        None => fixtures::all(),
    };
    let opts = verify_options(config);
    let mut doc = ReportDoc {
        modules: Vec::new(),
        all_passed: true,
    };
    for cm in &modules {
        let checks = verify_module(cm, &opts);
        doc.all_passed &= checks.iter().all(|c| c.passed);
        doc.modules.push(ModuleReport {
            module: cm.name().to_string(),
            g_order: cm.g().order(),
            h_order: cm.h().order(),
            kernel: cm.kernel().members().to_vec(),
            image: cm.image().members().to_vec(),
            sphere: invariant(&SurfaceComplex::sphere(), cm, &[], &[], &config.limits)?,
            torus: invariant(&SurfaceComplex::torus(), cm, &[], &[], &config.limits)?,
            cylinder_matrix: TqftMatrix::from_surface(
                &SurfaceComplex::cylinder(),
                cm,
                &config.limits,
            )?
            .to_json_value(),
            disk_in_matrix: TqftMatrix::from_surface(
                &SurfaceComplex::disk_in(),
                cm,
                &config.limits,
            )?
            .to_json_value(),
            classes: class_report(cm),
            checks,
        });
    }
    match config.output {
        OutputFormat::Json => {
            let _ = writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&doc).expect("report json")
            );
        }
        OutputFormat::Text | OutputFormat::Csv => {
            for m in &doc.modules {
                let _ = writeln!(
                    out,
                    "== {} (|G| = {}, |H| = {}, K = {:?}, A = {:?})",
                    m.module, m.g_order, m.h_order, m.kernel, m.image
                );
                let _ = writeln!(out, "  sphere: {}", scalar_line(&m.sphere, config.float));
                let _ = writeln!(out, "  torus:  {}", scalar_line(&m.torus, config.float));
                render_classes_text(&m.classes, out);
                for c in &m.checks {
                    let _ = writeln!(
                        out,
                        "  {} {} — {}",
                        if c.passed { "ok  " } else { "FAIL" },
                        c.name,
                        c.detail
                    );
                }
            }
            let _ = writeln!(
                out,
                "overall: {}",
                if doc.all_passed { "ok" } else { "FAILED" }
            );
        }
    }
    Ok(if doc.all_passed { 0 } else { 1 })
}
