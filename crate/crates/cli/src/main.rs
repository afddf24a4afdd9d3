//! Batch front end for the level0 library.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use level0::fourier::{self, FourierConfig, InvolutionReport, Sharp, SigmaEps, UComponent};
use level0::params::{enumerate_parameters, enumerate_sign_characters, epsilon_center};
use level0::stability::{classify_both, parameter_clauses, ParameterClauses};
use level0::sweeps;
use level0::tame::{enumerate_tame_characters, TameSpec};
use level0::{DiscreteParameter, Mode, SignCharacter, TameCharacter};

const SCHEMA: &str = "level0/1";

#[derive(Parser)]
#[command(name = "level0", version, about = "Level-zero parameter combinatorics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Discrete,
    Elliptic,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Discrete => Mode::Discrete,
            ModeArg::Elliptic => Mode::Elliptic,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SigmaArg {
    Odd,
    Trivial,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Mackey,
    Cle,
    KIdentities,
    SgnCd,
    Classification,
}

/// Which parameters a command works on.
#[derive(clap::Args)]
struct Selection {
    #[arg(long)]
    q: u64,
    /// Order N of the roots of unity.
    #[arg(long = "N")]
    order: Option<u32>,
    /// Dimension 2n of the dual group.
    #[arg(long)]
    two_n: Option<u32>,
    #[arg(long, value_enum, default_value_t = ModeArg::Discrete)]
    mode: ModeArg,
    /// A single tame character as JSON, or @path to a JSON file; replaces
    /// --N and --two-n.
    #[arg(long)]
    chi: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// All parameters (ψ, ε) for the selection.
    Enumerate(Selection),
    /// Stability class of every (ψ, ε).
    Classify(Selection),
    /// Fourier transforms and involution reports.
    Fourier {
        #[command(flatten)]
        sel: Selection,
        #[arg(long, value_enum, default_value_t = SigmaArg::Odd)]
        sigma: SigmaArg,
    },
    /// Stable packets per form ♯.
    Packets(Selection),
    /// Verification sweeps.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Rank bound; each suite has its own default.
        #[arg(long)]
        max_rank: Option<u32>,
    },
}

/// An error in the user's input, reported with exit status 2.
#[derive(Debug)]
struct InputError(String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn input_err(e: impl std::fmt::Display) -> anyhow::Error {
    InputError(e.to_string()).into()
}

fn characters(sel: &Selection) -> anyhow::Result<Vec<TameCharacter>> {
    if let Some(raw) = &sel.chi {
        let text = match raw.strip_prefix('@') {
            Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading {path}")).map_err(input_err)?,
            None => raw.clone(),
        };
        let spec: TameSpec = serde_json::from_str(&text).map_err(|e| input_err(format!("--chi: {e}")))?;
        if spec.q != sel.q {
            return Err(input_err(format!("--chi has q = {} but --q is {}", spec.q, sel.q)));
        }
        return Ok(vec![spec.build().map_err(input_err)?]);
    }
    let (Some(order), Some(two_n)) = (sel.order, sel.two_n) else {
        return Err(input_err("give --N and --two-n, or --chi"));
    };
    enumerate_tame_characters(sel.q, two_n, order).map_err(input_err)
}

fn parameters(sel: &Selection) -> anyhow::Result<Vec<DiscreteParameter>> {
    Ok(characters(sel)?
        .iter()
        .flat_map(|chi| enumerate_parameters(chi, sel.mode.into()))
        .collect())
}

fn chi_json(chi: &TameCharacter) -> Value {
    json!({
        "N": chi.order,
        "two_n": chi.two_n,
        "classes": chi.classes.iter().map(|c| json!({"rep": c.rep, "ell": c.ell, "mult": c.mult})).collect::<Vec<_>>(),
    })
}

fn psi_json(psi: &DiscreteParameter) -> Value {
    json!({
        "chi": chi_json(&psi.chi),
        "comps": psi.comps,
    })
}

fn eps_string(eps: &SignCharacter) -> String {
    eps.0.iter().map(|s| s.to_string()).collect()
}

fn chi_string(chi: &TameCharacter) -> String {
    chi.classes.iter().map(|c| format!("{}^{}", c.rep, c.mult)).collect::<Vec<_>>().join(" ")
}

fn comps_string(psi: &DiscreteParameter) -> String {
    psi.comps
        .iter()
        .map(|c| {
            let b = |o: &level0::Orbit| o.blocks().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            format!("{}:({})/({})", c.rep, b(&c.plus), b(&c.minus))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// A result ready to be written: a JSON document and a CSV table.
struct Output {
    json: Value,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    ok: bool,
}

fn enumerate(sel: &Selection) -> anyhow::Result<Output> {
    let mut items = Vec::new();
    let mut rows = Vec::new();
    let mut pairs = 0;
    for (i, psi) in parameters(sel)?.iter().enumerate() {
        let eps: Vec<SignCharacter> = enumerate_sign_characters(psi);
        pairs += eps.len();
        for e in &eps {
            rows.push(vec![i.to_string(), chi_string(&psi.chi), comps_string(psi), eps_string(e)]);
        }
        let mut v = psi_json(psi);
        v["eps"] = json!(eps);
        items.push(v);
    }
    Ok(Output {
        json: json!({
            "schema": SCHEMA,
            "command": "enumerate",
            "q": sel.q,
            "mode": Mode::from(sel.mode),
            "psi_count": items.len(),
            "pair_count": pairs,
            "parameters": items,
        }),
        header: vec!["psi", "chi", "comps", "eps"],
        rows,
        ok: true,
    })
}

/// Names of the clauses that hold; the class is decided by which pair of
/// them is complete.
fn firing(c: &ParameterClauses) -> Vec<&'static str> {
    [
        (c.eps_plus_off_pm, "eps_plus_off_pm"),
        (c.pm_minus_empty, "pm_minus_empty"),
        (c.eps_minus_off_pm, "eps_minus_off_pm"),
        (c.pm_plus_empty, "pm_plus_empty"),
    ]
    .into_iter()
    .filter_map(|(on, name)| on.then_some(name))
    .collect()
}

fn classify(sel: &Selection) -> anyhow::Result<Output> {
    let mut items = Vec::new();
    let mut rows = Vec::new();
    for psi in parameters(sel)? {
        for eps in enumerate_sign_characters(&psi) {
            let c = classify_both(&psi, &eps)?;
            let f = firing(&parameter_clauses(&psi, &eps));
            rows.push(vec![
                chi_string(&psi.chi),
                comps_string(&psi),
                eps_string(&eps),
                c.parameter.to_string(),
                c.pair.to_string(),
                f.join(";"),
            ]);
            let mut v = psi_json(&psi);
            v["eps"] = json!(eps);
            items.push(json!({
                "parameter": v,
                "class": c.parameter,
                "pair_class": c.pair,
                "firing_conditions": f,
            }));
        }
    }
    Ok(Output {
        json: json!({"schema": SCHEMA, "command": "classify", "q": sel.q, "records": items}),
        header: vec!["chi", "comps", "eps", "class", "pair_class", "firing_conditions"],
        rows,
        ok: true,
    })
}

fn fourier_cmd(sel: &Selection, sigma: SigmaArg) -> anyhow::Result<Output> {
    let cfg = FourierConfig {
        sigma_eps: match sigma {
            SigmaArg::Odd => SigmaEps::OddBlocks,
            SigmaArg::Trivial => SigmaEps::Trivial,
        },
        ..FourierConfig::default()
    };
    let mut items = Vec::new();
    let mut rows = Vec::new();
    for psi in parameters(sel)? {
        let placeholder = psi.chi.classes.iter().any(|c| c.is_pm());
        let reports: Vec<InvolutionReport> = (0..psi.comps.len())
            .map(|ci| UComponent::of(&psi, ci))
            .filter(|u| !u.pm)
            .map(|u| fourier::involution_check(&u, &cfg))
            .collect::<level0::Result<_>>()?;
        let mut transforms = Vec::new();
        for eps in enumerate_sign_characters(&psi) {
            let img = fourier::fourier(&psi, &eps, &cfg)?;
            let terms: Vec<String> = img.terms.iter().map(|(k, c)| format!("{c}*{}", k.iter().map(|s| s.to_string()).collect::<String>())).collect();
            rows.push(vec![chi_string(&psi.chi), comps_string(&psi), eps_string(&eps), terms.join(" ")]);
            transforms.push(json!({"eps": eps, "image": img}));
        }
        items.push(json!({
            "parameter": psi_json(&psi),
            "pm_placeholder": placeholder,
            "involution": reports,
            "transforms": transforms,
        }));
    }
    Ok(Output {
        json: json!({"schema": SCHEMA, "command": "fourier", "q": sel.q, "config": cfg, "records": items}),
        header: vec!["chi", "comps", "eps", "image"],
        rows,
        ok: true,
    })
}

fn packets(sel: &Selection) -> anyhow::Result<Output> {
    let mut items = Vec::new();
    let mut rows = Vec::new();
    for psi in parameters(sel)? {
        let mut per = serde_json::Map::new();
        for sharp in [Sharp::Iso, Sharp::An] {
            let packet = fourier::stable_packet(&psi, sharp, false)?;
            let mut members = Vec::new();
            for (eps, coeff) in packet {
                let d = fourier::d_sign(&psi, &eps)?;
                let z = epsilon_center(&psi, &eps)?;
                rows.push(vec![
                    chi_string(&psi.chi),
                    comps_string(&psi),
                    format!("{sharp:?}").to_lowercase(),
                    eps_string(&eps),
                    coeff.to_string(),
                    d.to_string(),
                ]);
                members.push(json!({"eps": eps, "coeff": coeff.to_string(), "eps_z": z, "d_sign": d}));
            }
            per.insert(format!("{sharp:?}").to_lowercase(), Value::Array(members));
        }
        items.push(json!({"parameter": psi_json(&psi), "packets": per}));
    }
    Ok(Output {
        json: json!({"schema": SCHEMA, "command": "packets", "q": sel.q, "records": items}),
        header: vec!["chi", "comps", "sharp", "eps", "coeff", "d_sign"],
        rows,
        ok: true,
    })
}

#[derive(Serialize)]
struct SuiteLine {
    suite: String,
    checked: usize,
    failed: usize,
    passed: bool,
    examples: Vec<String>,
}

fn verify(suite: Suite, max_rank: Option<u32>) -> anyhow::Result<Output> {
    let run = |s: Suite| suite == Suite::All || suite == s;
    let mut reports: Vec<sweeps::SuiteReport> = Vec::new();
    if run(Suite::Mackey) {
        reports.push(sweeps::mackey_sweep(max_rank.unwrap_or(5), true)?);
    }
    if run(Suite::SgnCd) {
        reports.push(sweeps::sgn_cd_sweep(max_rank.unwrap_or(6))?);
    }
    if run(Suite::Cle) {
        let n = max_rank.unwrap_or(2);
        for q in [3, 5] {
            let inst = sweeps::cle_instances(q, n)?;
            let r = sweeps::cle_sweep(&inst)?;
            reports.push(sweeps::SuiteReport {
                suite: format!("cle_q{q}"),
                checked: r.elements,
                failed: r.elements - r.equal,
                examples: r.failures.iter().map(|f| format!("instance {} key {:?} {}", f.instance, f.key, f.label)).collect(),
            });
        }
    }
    if run(Suite::KIdentities) {
        reports.extend(sweeps::k_identity_sweep(max_rank.unwrap_or(6)));
    }
    if run(Suite::Classification) {
        reports.push(sweeps::classification_sweep(3, &[1, 2, 5], max_rank.unwrap_or(8))?);
    }
    let ok = reports.iter().all(|r| r.passed());
    let lines: Vec<SuiteLine> = reports
        .into_iter()
        .map(|r| SuiteLine { passed: r.passed(), suite: r.suite, checked: r.checked, failed: r.failed, examples: r.examples })
        .collect();
    let rows = lines
        .iter()
        .map(|l| vec![l.suite.clone(), l.checked.to_string(), l.failed.to_string(), l.passed.to_string()])
        .collect();
    Ok(Output {
        json: json!({"schema": SCHEMA, "command": "verify", "passed": ok, "suites": lines}),
        header: vec!["suite", "checked", "failed", "passed"],
        rows,
        ok,
    })
}

fn write_output(cli: &Cli, out: &Output) -> anyhow::Result<()> {
    let mut buf: Vec<u8> = Vec::new();
    match cli.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut buf, &out.json)?;
            buf.push(b'\n');
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut buf);
            w.write_record(&out.header)?;
            for r in &out.rows {
                w.write_record(r)?;
            }
            w.flush()?;
        }
    }
    match &cli.out {
        Some(path) => std::fs::write(path, &buf).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(&buf)?,
    }
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    let out = match &cli.command {
        Command::Enumerate(sel) => enumerate(sel)?,
        Command::Classify(sel) => classify(sel)?,
        Command::Fourier { sel, sigma } => fourier_cmd(sel, *sigma)?,
        Command::Packets(sel) => packets(sel)?,
        Command::Verify { suite, max_rank } => verify(*suite, *max_rank)?,
    };
    write_output(cli, &out)?;
    Ok(out.ok)
}

fn configure_threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("LEVEL0_THREADS") {
        let n: usize = v.parse().map_err(|_| input_err(format!("LEVEL0_THREADS must be a number, got {v:?}")))?;
        if n == 0 {
            bail!(InputError("LEVEL0_THREADS must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|_| run(&cli));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InputError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
