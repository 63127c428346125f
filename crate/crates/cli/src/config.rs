//! Command-line options turned into a list of suite instances.

use clap::Args;
use num_complex::Complex64;
use qosc::grading::{enumerate_gradings, GradingProfile};
use qosc::verify::suites::{Backend, Instance, Suite};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt;

/// Problems with the configuration; these exit with status 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn bad<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

#[derive(Args, Clone, Debug, Default)]
pub struct RunArgs {
    /// Algebra size as `M,N`.
    #[arg(long)]
    pub mn: Option<String>,
    /// Grading bits (`0` even, `1` odd), `all`, or `distinguished`.
    #[arg(long)]
    pub grading: Option<String>,
    /// Split point `a` of the subset I = {a+1..M+N}, or `all`.
    #[arg(long = "split-a")]
    pub split_a: Option<String>,
    /// Integer weights `l1,l2,...`, or `random:k` for k seeded draws in [-3,3].
    #[arg(long)]
    pub weights: Option<String>,
    /// Bosonic cutoff D. Defaults to what each suite needs at small rank.
    #[arg(long)]
    pub cutoff: Option<u32>,
    /// `exact` or `float`.
    #[arg(long, default_value = "exact")]
    pub backend: String,
    /// Evaluation point for the float backend, e.g. `0.6+0.3i`.
    #[arg(long, default_value = "0.6+0.3i")]
    pub q: String,
    /// Comma-separated suite names, or `all`.
    #[arg(long, default_value = "all")]
    pub suites: String,
    /// Seed for random weight draws.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Report file; the report goes to stdout when omitted.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
    /// Named sweep; `desk` runs every grading with M+N <= 3 and the
    /// distinguished gradings with M+N = 4.
    #[arg(long)]
    pub preset: Option<String>,
    /// Record wall-clock times in the report (otherwise they are zero so the
    /// report is byte-stable).
    #[arg(long)]
    pub timings: bool,
}

/// The resolved configuration, echoed into the report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub preset: Option<String>,
    pub mn: Option<[usize; 2]>,
    pub gradings: Vec<String>,
    pub split_a: String,
    pub weights: String,
    pub seed: u64,
    pub cutoff: Option<u32>,
    pub backend: String,
    pub suites: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct Plan {
    pub config: RunConfig,
    pub suites: Vec<(Suite, Vec<Instance>)>,
    /// Instances whose words climb above the cutoff are skipped rather than
    /// rejected.
    pub lenient_cutoff: bool,
    pub timings: bool,
}

fn parse_mn(s: &str) -> Result<(usize, usize), ConfigError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [m, n] => match (m.parse(), n.parse()) {
            (Ok(m), Ok(n)) if m + n > 0 => Ok((m, n)),
            _ => bad(format!("--mn expects M,N with M+N > 0, got {s:?}")),
        },
        _ => bad(format!("--mn expects M,N, got {s:?}")),
    }
}

pub fn parse_suites(s: &str) -> Result<Vec<Suite>, ConfigError> {
    if s == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    let mut out = Vec::new();
    for name in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        match Suite::parse(name) {
            Some(x) if !out.contains(&x) => out.push(x),
            Some(_) => {}
            None => {
                let known: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                return bad(format!("unknown suite {name:?}; known suites: {}", known.join(", ")));
            }
        }
    }
    if out.is_empty() {
        return bad("no suites selected");
    }
    Ok(out)
}

fn parse_backend(b: &str, q: &str) -> Result<Backend, ConfigError> {
    match b {
        "exact" => Ok(Backend::Exact),
        "float" => match q.parse::<Complex64>() {
            Ok(q) if q.norm() > 0.0 && q.norm() != 1.0 => Ok(Backend::Float(q)),
            Ok(_) => bad("--q must be nonzero and off the unit circle"),
            Err(_) => bad(format!("cannot read --q {q:?}; write it like 0.6+0.3i")),
        },
        other => bad(format!("unknown backend {other:?}; use exact or float")),
    }
}

fn gradings(choice: Option<&str>, mn: Option<(usize, usize)>) -> Result<Vec<GradingProfile>, ConfigError> {
    let (m, n) = match mn {
        Some(x) => x,
        None => match choice {
            Some(s) if s != "all" && s != "distinguished" => {
                let g = GradingProfile::parse(s).map_err(|e| ConfigError(e.to_string()))?;
                return Ok(vec![g]);
            }
            _ => return bad("--mn is required unless a grading string is given"),
        },
    };
    match choice.unwrap_or("distinguished") {
        "distinguished" => Ok(vec![GradingProfile::distinguished(m, n)]),
        "all" => Ok(enumerate_gradings(m + n).into_iter().filter(|g| g.m() == m).collect()),
        s => GradingProfile::parse_for(s, m, n).map(|g| vec![g]).map_err(|e| ConfigError(e.to_string())),
    }
}

enum Weights {
    Fixed(Vec<i64>),
    Random(usize),
}

fn parse_weights(s: &str) -> Result<Weights, ConfigError> {
    if let Some(k) = s.strip_prefix("random:") {
        return match k.parse() {
            Ok(k) if k > 0 => Ok(Weights::Random(k)),
            _ => bad(format!("random:k needs a positive count, got {s:?}")),
        };
    }
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| ConfigError(format!("cannot read weights {s:?}"))))
        .collect::<Result<Vec<_>, _>>()
        .map(Weights::Fixed)
}

fn draws(w: &Weights, g: &GradingProfile, rng: &mut ChaCha8Rng) -> Result<Vec<Vec<i64>>, ConfigError> {
    match w {
        Weights::Fixed(v) if v.len() == g.k() => Ok(vec![v.clone()]),
        Weights::Fixed(v) => bad(format!("grading {} needs {} weights, got {}", g.bit_string(), g.k(), v.len())),
        Weights::Random(n) => Ok((0..*n).map(|_| (0..g.k()).map(|_| rng.gen_range(-3..=3)).collect()).collect()),
    }
}

fn splits(s: Suite, k: usize, requested: Option<usize>) -> Vec<Option<usize>> {
    let mut out = Vec::new();
    if s.runs_unsplit() && requested.is_none() {
        out.push(None);
    }
    if s.uses_split() {
        match requested {
            Some(a) => out.push(Some(a)),
            None => out.extend((1..k).map(Some)),
        }
    }
    out
}

fn applies(s: Suite, k: usize) -> bool {
    !(s == Suite::AppendixD && k < 2)
}

pub fn plan(args: &RunArgs) -> Result<Plan, ConfigError> {
    let suites = parse_suites(&args.suites)?;
    let backend = parse_backend(&args.backend, &args.q)?;
    if let Some(s) = suites.iter().find(|s| s.needs_exact() && backend != Backend::Exact) {
        return bad(format!("suite {} takes formal limits or symbolic parameters and needs --backend exact", s.name()));
    }
    let weights = parse_weights(args.weights.as_deref().unwrap_or("random:1"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);

    // (grading, base cutoff)
    let (targets, mn, lenient): (Vec<(GradingProfile, Option<u32>)>, Option<[usize; 2]>, bool) = match args.preset.as_deref() {
        Some("desk") => {
            if args.mn.is_some() || args.grading.is_some() {
                return bad("--preset desk chooses the gradings itself; drop --mn and --grading");
            }
            let mut t: Vec<_> = (1..=3).flat_map(enumerate_gradings).map(|g| (g, Some(args.cutoff.unwrap_or(3)))).collect();
            t.extend((0..=4).map(|m| (GradingProfile::distinguished(m, 4 - m), Some(args.cutoff.unwrap_or(2)))));
            (t, None, true)
        }
        Some(other) => return bad(format!("unknown preset {other:?}; the only preset is desk")),
        None => {
            let mn = args.mn.as_deref().map(parse_mn).transpose()?;
            let gs = gradings(args.grading.as_deref(), mn)?;
            (gs.into_iter().map(|g| (g, args.cutoff)).collect(), mn.map(|(m, n)| [m, n]), false)
        }
    };

    let requested = match args.split_a.as_deref() {
        None | Some("all") => None,
        Some(s) => Some(s.parse::<usize>().map_err(|_| ConfigError(format!("cannot read --split-a {s:?}")))?),
    };
    for (g, _) in &targets {
        if let Some(a) = requested {
            if a == 0 || a >= g.k() {
                return bad(format!("--split-a must lie in 1..{} for grading {}", g.k().saturating_sub(1), g.bit_string()));
            }
        }
    }

    let drawn: Vec<Vec<Vec<i64>>> = targets.iter().map(|(g, _)| draws(&weights, g, &mut rng)).collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for s in &suites {
        let mut insts = Vec::new();
        for ((g, d), ws) in targets.iter().zip(&drawn) {
            if !applies(*s, g.k()) {
                continue;
            }
            // a preset cutoff below the suite's own default is raised to it
            let cutoff = match (d, lenient) {
                (Some(d), true) => (*d).max(if g.k() <= 3 { s.default_cutoff() } else { *d }),
                (Some(d), false) => *d,
                (None, _) => s.default_cutoff(),
            };
            for w in ws {
                for a in splits(*s, g.k(), requested) {
                    let mut i = Instance::new(g.clone(), w.clone(), cutoff).with_split(a);
                    i.backend = backend;
                    insts.push(i);
                }
            }
        }
        out.push((*s, insts));
    }

    let config = RunConfig {
        preset: args.preset.clone(),
        mn,
        gradings: targets.iter().map(|(g, _)| g.bit_string()).collect(),
        split_a: args.split_a.clone().unwrap_or_else(|| "all".into()),
        weights: args.weights.clone().unwrap_or_else(|| "random:1".into()),
        seed: args.seed,
        cutoff: args.cutoff,
        backend: backend.to_string(),
        suites: suites.iter().map(|s| s.name().to_string()).collect(),
    };
    Ok(Plan { config, suites: out, lenient_cutoff: lenient, timings: args.timings })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(mn: &str) -> RunArgs {
        RunArgs { mn: Some(mn.into()), backend: "exact".into(), q: "0.6+0.3i".into(), suites: "all".into(), ..Default::default() }
    }

    #[test]
    fn distinguished_grading_by_default() {
        let p = plan(&args("2,1")).unwrap();
        assert_eq!(p.config.gradings, vec!["001"]);
    }

    #[test]
    fn all_gradings_keep_m() {
        let mut a = args("1,2");
        a.grading = Some("all".into());
        assert_eq!(plan(&a).unwrap().config.gradings, vec!["011", "101", "110"]);
    }

    #[test]
    fn random_weights_follow_the_seed() {
        let mut a = args("2,1");
        a.weights = Some("random:3".into());
        a.seed = 5;
        let w = |p: &Plan| p.suites[0].1.iter().map(|i| i.weights.clone()).collect::<Vec<_>>();
        let (x, y) = (plan(&a).unwrap(), plan(&a).unwrap());
        assert_eq!(w(&x), w(&y));
        assert!(w(&x).iter().flatten().all(|v| (-3..=3).contains(v)));
        a.seed = 6;
        assert_ne!(w(&x), w(&plan(&a).unwrap()));
    }

    #[test]
    fn split_expansion() {
        let mut a = args("2,1");
        a.suites = "limits,appendix-a".into();
        let p = plan(&a).unwrap();
        assert_eq!(p.suites[0].1.iter().map(|i| i.split).collect::<Vec<_>>(), vec![Some(1), Some(2)]);
        assert_eq!(p.suites[1].1.iter().map(|i| i.split).collect::<Vec<_>>(), vec![None, Some(1), Some(2)]);
    }

    #[test]
    fn rejected_configs() {
        let mut a = args("2,1");
        a.suites = "nope".into();
        assert!(plan(&a).is_err());
        let mut a = args("2,1");
        a.backend = "float".into();
        a.suites = "limits".into();
        assert!(plan(&a).is_err());
        let mut a = args("2,1");
        a.weights = Some("1,2".into());
        assert!(plan(&a).is_err());
        let mut a = args("2,1");
        a.split_a = Some("3".into());
        assert!(plan(&a).is_err());
        assert!(plan(&args("2")).is_err());
    }
}
