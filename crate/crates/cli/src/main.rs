//! `mmwave`: plane-wave dispersion analysis of isotropic relaxed
//! micromorphic, Cosserat and Cauchy media.
//!
//! Exit codes: 0 success (all requested checks pass), 1 condition failure,
//! 2 usage or input error. `MMWAVE_THREADS` caps internal parallelism
//! (0 = auto); outputs are byte-identical for any thread count.

use clap::{Parser, Subcommand};
use mmwave_cli::{csvio, paramfile, paramfile::ParamFile, svg};
use mmwave_core::acoustic12;
use mmwave_core::criteria::{self, ConditionSetName, ALL_SETS};
use mmwave_core::dispersion;
use mmwave_core::eig::sorted_distance;
use mmwave_core::params::{self, ModelParams};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "mmwave",
    version,
    about = "Dispersion analysis and real-wave-velocity checks for relaxed micromorphic, Cosserat and Cauchy continua"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate named inequality sets on a parameter file.
    Check {
        /// Parameter file (JSON).
        file: PathBuf,
        /// Condition set id (repeatable); see `--list-sets`.
        #[arg(long = "set", value_name = "NAME")]
        sets: Vec<String>,
        /// Evaluate every set applicable to the model (default when no --set given).
        #[arg(long)]
        all: bool,
        /// Print the known condition set ids and exit.
        #[arg(long)]
        list_sets: bool,
    },
    /// Sweep dispersion branches omega(k) and write them as CSV (optionally SVG).
    Sweep {
        file: PathBuf,
        /// Largest wavenumber; overrides the file's sweep section.
        #[arg(long)]
        kmax: Option<f64>,
        /// Number of grid samples; overrides the file's sweep section.
        #[arg(long)]
        samples: Option<usize>,
        /// Output CSV path.
        #[arg(long, value_name = "CSV")]
        out: PathBuf,
        /// Optional SVG plot path.
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
    },
    /// Assemble the 12x12 acoustic tensor and print its spectrum.
    Acoustic12 {
        /// Relaxed-model parameter file (JSON).
        file: PathBuf,
        /// Propagation direction as `x,y,z` (normalized with a notice).
        #[arg(long, value_name = "X,Y,Z")]
        direction: String,
        /// Wavenumber.
        #[arg(long)]
        k: f64,
    },
    /// Randomized implication scan and criteria/spectra agreement.
    Verify {
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Print the derived moduli and characteristic quantities.
    Derive { file: PathBuf },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

/// Thread budget from `MMWAVE_THREADS` (0 or unset = auto).
fn thread_budget() -> Result<usize, String> {
    match std::env::var("MMWAVE_THREADS") {
        Err(std::env::VarError::NotPresent) => Ok(auto_threads()),
        Err(e) => Err(format!("MMWAVE_THREADS: {e}")),
        Ok(s) => {
            let n: usize = s
                .trim()
                .parse()
                .map_err(|e| format!("MMWAVE_THREADS={s:?} is not a thread count: {e}"))?;
            Ok(if n == 0 { auto_threads() } else { n })
        }
    }
}

fn auto_threads() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Writes a file atomically: temp file in the same directory, then rename.
fn write_atomic(path: &Path, contents: &str) -> Result<(), String> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, contents).map_err(|e| format!("cannot write {}: {e}", tmp.display()))?;
    std::fs::rename(&tmp, path)
        .map_err(|e| format!("cannot move {} into place: {e}", tmp.display()))?;
    Ok(())
}

fn run() -> Result<u8, String> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Check {
            file,
            sets,
            all,
            list_sets,
        } => cmd_check(&file, &sets, all, list_sets),
        Cmd::Sweep {
            file,
            kmax,
            samples,
            out,
            svg,
        } => cmd_sweep(&file, kmax, samples, &out, svg.as_deref()),
        Cmd::Acoustic12 { file, direction, k } => cmd_acoustic12(&file, &direction, k),
        Cmd::Verify { trials, seed } => cmd_verify(trials, seed),
        Cmd::Derive { file } => cmd_derive(&file),
    }
}

fn load(file: &Path) -> Result<ParamFile, String> {
    paramfile::load(file).map_err(|e| e.to_string())
}

fn cmd_check(file: &Path, sets: &[String], all: bool, list_sets: bool) -> Result<u8, String> {
    if list_sets {
        for s in ALL_SETS {
            println!("{}", s.id());
        }
        return Ok(0);
    }
    let pf = load(file)?;
    let requested: Vec<ConditionSetName> = if all || sets.is_empty() {
        criteria::applicable_sets(&pf.params)
    } else {
        sets.iter()
            .map(|s| {
                ConditionSetName::from_id(s)
                    .ok_or_else(|| format!("unknown condition set {s:?} (see --list-sets)"))
            })
            .collect::<Result<_, _>>()?
    };

    let model = match &pf.params {
        ModelParams::Relaxed(_) => "relaxed",
        ModelParams::Cosserat(_) => "cosserat",
        ModelParams::Cauchy(_) => "cauchy",
    };
    println!("model: {model}");
    let mut all_passed = true;
    for set in requested {
        let report = criteria::check(&pf.params, set).map_err(|e| e.to_string())?;
        println!(
            "set {}: {}",
            set.id(),
            if report.passed { "PASS" } else { "FAIL" }
        );
        for q in &report.inequalities {
            let verdict = if q.satisfied { "ok " } else { "VIOLATED" };
            println!("  {:<8} {:<42} value = {}", verdict, q.label, q.value);
        }
        all_passed &= report.passed;
    }
    Ok(if all_passed { 0 } else { 1 })
}

fn cmd_sweep(
    file: &Path,
    kmax: Option<f64>,
    samples: Option<usize>,
    out: &Path,
    svg_path: Option<&Path>,
) -> Result<u8, String> {
    let pf = load(file)?;
    let k_max = kmax
        .or(pf.sweep.map(|s| s.k_max))
        .unwrap_or(10.0);
    let n = samples
        .or(pf.sweep.map(|s| s.samples))
        .unwrap_or(200);
    let branches = dispersion::sweep(&pf.params, k_max, n).map_err(|e| e.to_string())?;
    write_atomic(out, &csvio::emit(&branches))?;
    println!(
        "wrote {} ({} branches, {} samples each, k up to {k_max})",
        out.display(),
        branches.len(),
        n
    );
    if let Some(svg_path) = svg_path {
        let title = format!("dispersion branches ({})", branches[0].model.name());
        write_atomic(svg_path, &svg::render(&branches, &title))?;
        println!("wrote {}", svg_path.display());
    }
    Ok(0)
}

fn parse_direction(text: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("direction {text:?} must be x,y,z"));
    }
    let mut v = [0.0; 3];
    for (slot, part) in v.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|e| format!("direction component {part:?}: {e}"))?;
    }
    Ok(v)
}

fn cmd_acoustic12(file: &Path, direction: &str, k: f64) -> Result<u8, String> {
    let pf = load(file)?;
    let p = match pf.params {
        ModelParams::Relaxed(p) => p,
        _ => return Err("acoustic12 requires a relaxed-model parameter file".into()),
    };
    let d = parse_direction(direction)?;
    let norm = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err("direction must be a nonzero vector".into());
    }
    let xi = [d[0] / norm, d[1] / norm, d[2] / norm];
    if (norm - 1.0).abs() > 1e-12 {
        println!(
            "note: direction normalized to ({}, {}, {})",
            xi[0], xi[1], xi[2]
        );
    }
    let tensor = acoustic12::assemble_12(&p, xi, k).map_err(|e| e.to_string())?;
    let spectrum = tensor.omega_squared().map_err(|e| e.to_string())?;
    println!("omega^2 spectrum of the 12x12 acoustic tensor at k = {k}:");
    for (i, v) in spectrum.iter().enumerate() {
        println!("  [{i:>2}] {v}");
    }
    let is_e1 = (xi[0] - 1.0).abs() <= 1e-12 && xi[1].abs() <= 1e-12 && xi[2].abs() <= 1e-12;
    if is_e1 {
        let union = acoustic12::block_union_spectrum(&p, k).map_err(|e| e.to_string())?;
        let dev = sorted_distance(&spectrum, &union);
        let pass = dev <= 1e-8;
        println!(
            "block-equivalence: {} (max dev {dev:.3e}, budget 1e-8)",
            if pass { "PASS" } else { "FAIL" }
        );
        if !pass {
            return Ok(1);
        }
    }
    Ok(0)
}

/// The implications that must have zero counterexamples.
const PROVEN: [(ConditionSetName, ConditionSetName); 5] = [
    (
        ConditionSetName::PositiveDefiniteRelaxed,
        ConditionSetName::PropositionRealWaves,
    ),
    (
        ConditionSetName::ReducedRealWaves,
        ConditionSetName::PropositionRealWaves,
    ),
    (
        ConditionSetName::PropositionRealWaves,
        ConditionSetName::ReducedRealWaves,
    ),
    (
        ConditionSetName::CosseratPositiveDefinite,
        ConditionSetName::CosseratRealWaves,
    ),
    (
        ConditionSetName::CosseratRealWaves,
        ConditionSetName::MicropolarStrongEllipticity,
    ),
];

fn cmd_verify(trials: u64, seed: u64) -> Result<u8, String> {
    if trials == 0 {
        return Err("at least one trial required".into());
    }
    let threads = thread_budget()?;
    let matrix = criteria::implication_matrix(trials, seed, threads).map_err(|e| e.to_string())?;
    let agreement =
        dispersion::proposition_spectra_agreement(trials, seed, threads).map_err(|e| e.to_string())?;

    let mut out = String::new();
    let _ = writeln!(out, "verify: trials = {trials}, seed = {seed}");
    let _ = writeln!(out, "condition sets:");
    for (i, s) in ALL_SETS.iter().enumerate() {
        let _ = writeln!(out, "  [{}] {}", i + 1, s.id());
    }
    let _ = writeln!(out, "counterexamples to \"row implies column\":");
    let _ = write!(out, "      ");
    for i in 1..=ALL_SETS.len() {
        let _ = write!(out, "{i:>8}");
    }
    let _ = writeln!(out);
    for (a, _) in ALL_SETS.iter().enumerate() {
        let _ = write!(out, "  [{}]", a + 1);
        let pad = if a + 1 < 10 { " " } else { "" };
        let _ = write!(out, "{pad}");
        for b in 0..ALL_SETS.len() {
            let _ = write!(out, "{:>8}", matrix.counterexamples[a][b]);
        }
        let _ = writeln!(out);
    }

    let mut pass = true;
    let _ = writeln!(out, "proven implications:");
    for (premise, conclusion) in PROVEN {
        let n = matrix.count(premise, conclusion);
        pass &= n == 0;
        let _ = writeln!(
            out,
            "  {} => {}: {} counterexamples",
            premise.id(),
            conclusion.id(),
            n
        );
    }
    let observed = matrix.count(
        ConditionSetName::MicropolarStrongEllipticity,
        ConditionSetName::CosseratRealWaves,
    );
    let _ = writeln!(
        out,
        "strict weakness of ellipticity (counterexamples expected): micropolar-ellipticity => cosserat-real-waves: {observed}"
    );

    let rate = 100.0 * agreement.agreeing as f64 / agreement.trials as f64;
    let _ = writeln!(
        out,
        "criteria vs spectra agreement: {}/{} ({rate:.3}%)",
        agreement.agreeing, agreement.trials
    );
    pass &= agreement.agreeing == agreement.trials;
    let _ = writeln!(out, "result: {}", if pass { "PASS" } else { "FAIL" });
    print!("{out}");
    Ok(if pass { 0 } else { 1 })
}

fn cmd_derive(file: &Path) -> Result<u8, String> {
    let pf = load(file)?;
    let p = match pf.params {
        ModelParams::Relaxed(p) => p,
        _ => return Err("derive requires a relaxed-model parameter file".into()),
    };
    let d = params::derive(&p).map_err(|e| e.to_string())?;
    println!("derived moduli:");
    println!("  kappa_e      = {}", d.kappa_e);
    println!("  kappa_micro  = {}", d.kappa_micro);
    println!("  kappa_macro  = {}", d.kappa_macro);
    println!("  mu_macro     = {}", d.mu_macro);
    println!("  lambda_macro = {}", d.lambda_macro);
    println!("characteristic speeds and frequencies:");
    for (name, c) in [
        ("c_m", d.c_m),
        ("c_s", d.c_s),
        ("c_p", d.c_p),
        ("omega_s", d.omega_s),
        ("omega_p", d.omega_p),
        ("omega_r", d.omega_r),
        ("omega_l", d.omega_l),
        ("omega_t", d.omega_t),
    ] {
        match c.value() {
            Some(v) => println!("  {name:<8} = {v}"),
            None => println!("  {name:<8} = undefined (squared = {})", c.squared),
        }
    }
    Ok(0)
}
