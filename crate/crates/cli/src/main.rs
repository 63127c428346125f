mod config;
mod report;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use config::{plan, ConfigError, Plan, RunArgs};
use qosc::fock::{upper_modes, FockSpace, Semantics};
use qosc::grading::{cartan_matrix, GradingProfile, SubsetI};
use qosc::realizations::{contracted_space, rectangular_space};
use qosc::scalar::ScalarCtx;
use qosc::verify::suites::Suite;
use qosc::verify::VerificationReport;
use rayon::prelude::*;
use report::{InstanceReport, Report, Status, SuiteReport};
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qosc", version, about = "Verify q-oscillator realizations of U_q(gl(M|N)) on truncated Fock spaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run verification suites and write a JSON report.
    Run(RunArgs),
    /// List the suites and what each one checks.
    ListSuites,
    /// Describe the Fock spaces behind one configuration.
    Describe(DescribeArgs),
}

#[derive(clap::Args)]
struct DescribeArgs {
    /// Algebra size as `M,N`.
    #[arg(long)]
    mn: Option<String>,
    /// Grading bits; the distinguished grading when omitted.
    #[arg(long)]
    grading: Option<String>,
    /// Bosonic cutoff used for the dimension counts.
    #[arg(long, default_value_t = 3)]
    cutoff: u32,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let out = match cli.cmd {
        Cmd::Run(args) => run(&args),
        Cmd::ListSuites => {
            print!("{}", list_suites());
            Ok(0)
        }
        Cmd::Describe(d) => describe(&d).map(|s| {
            print!("{s}");
            0
        }),
    };
    match out {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if e.downcast_ref::<ConfigError>().is_some() { 2 } else { 1 })
        }
    }
}

fn list_suites() -> String {
    let mut s = String::new();
    for suite in Suite::ALL {
        s.push_str(&format!("{}:\n", suite.name()));
        for line in suite.covers() {
            s.push_str(&format!("  - {line}\n"));
        }
    }
    s
}

fn describe(d: &DescribeArgs) -> Result<String> {
    let g = match (&d.mn, &d.grading) {
        (_, Some(bits)) => GradingProfile::parse(bits).map_err(|e| ConfigError(e.to_string()))?,
        (Some(mn), None) => {
            let (m, n) = mn.split_once(',').ok_or_else(|| ConfigError(format!("--mn expects M,N, got {mn:?}")))?;
            let m = m.trim().parse().map_err(|_| ConfigError(format!("bad M in {mn:?}")))?;
            let n = n.trim().parse().map_err(|_| ConfigError(format!("bad N in {mn:?}")))?;
            GradingProfile::distinguished(m, n)
        }
        (None, None) => return Err(ConfigError("give --mn or --grading".into()).into()),
    };
    let k = g.k();
    let ctx = ScalarCtx::exact();
    let mut s = format!("grading {} (M={}, N={}, K={k})\n", g.bit_string(), g.m(), g.n());
    s.push_str(&format!("cartan matrix (cyclic): {:?}\n", cartan_matrix(&g)));
    let modes = upper_modes(k, |_, _| true);
    let verma = FockSpace::verma(&g, d.cutoff, Semantics::Trig, ctx.clone()).context("building the Fock space")?;
    let bos = verma.modes().iter().filter(|m| !m.fermionic()).count();
    s.push_str(&format!(
        "verma: {} modes {modes:?} ({bos} bosonic, {} fermionic), dimension {} at D={}\n",
        modes.len(),
        modes.len() - bos,
        verma.dim(),
        d.cutoff
    ));
    for a in 1..k {
        let sub = SubsetI::tail(a, k).map_err(|e| ConfigError(e.to_string()))?;
        let con = contracted_space(&g, &sub, d.cutoff, Semantics::Trig, ctx.clone())?;
        let rect = rectangular_space(&g, &sub, d.cutoff, Semantics::Trig, ctx.clone())?;
        s.push_str(&format!(
            "split a={a}: I={:?}, contracted family {} modes (dimension {}), μ family {} modes (dimension {})\n",
            sub.i_set(),
            con.modes().len(),
            con.dim(),
            rect.modes().len(),
            rect.dim()
        ));
    }
    if k >= 2 {
        let hp = qosc::realizations::hp_space(&g, 1, d.cutoff, Semantics::Trig, ctx)?;
        s.push_str(&format!("holstein-primakoff: {} modes per row, dimension {} at D={}\n", hp.modes().len(), hp.dim(), d.cutoff));
    }
    Ok(s)
}

fn run(args: &RunArgs) -> Result<u8> {
    let Plan { config, suites, lenient_cutoff, timings } = plan(args)?;
    let jobs: Vec<(usize, usize)> = suites.iter().enumerate().flat_map(|(s, (_, insts))| (0..insts.len()).map(move |i| (s, i))).collect();
    // one worker per instance; results come back in job order
    let results: Vec<InstanceReport> = jobs
        .par_iter()
        .map(|&(s, i)| {
            let (suite, insts) = &suites[s];
            let inst = &insts[i];
            let rep = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| suite.run(inst))).unwrap_or_else(|p| {
                let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default();
                let mut r = VerificationReport::new(suite.name(), &inst.descriptor());
                r.error(format!("internal error: {msg}"));
                r
            });
            InstanceReport::from_report(&rep, inst.cutoff, timings)
        })
        .collect();

    let mut it = results.into_iter();
    let mut out = Vec::new();
    let (mut failed, mut short, mut total) = (0, 0, 0);
    for (suite, insts) in &suites {
        let instances: Vec<InstanceReport> = it.by_ref().take(insts.len()).collect();
        for r in &instances {
            total += 1;
            match r.status {
                Status::Pass => {}
                Status::Fail => failed += 1,
                Status::CutoffTooSmall => short += 1,
            }
            let tag = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::CutoffTooSmall => "SKIP",
            };
            eprintln!("{tag} {} [{}] {}/{}", suite.name(), r.descriptor, r.passed, r.checks);
        }
        out.push(SuiteReport { name: suite.name().to_string(), instances });
    }
    let report = Report { config, suites: out, version: env!("CARGO_PKG_VERSION") };
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    match &args.out {
        Some(p) => std::fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    eprintln!("{total} instances: {} passed, {failed} failed, {short} need a larger cutoff", total - failed - short);
    if short > 0 && !lenient_cutoff {
        let needed = report.suites.iter().flat_map(|s| &s.instances).filter_map(|i| i.needed_cutoff).max().unwrap_or(0);
        eprintln!("error: the cutoff is too small for the selected suites; rerun with --cutoff {needed} or larger");
        return Ok(2);
    }
    Ok(if failed > 0 { 1 } else { 0 })
}
