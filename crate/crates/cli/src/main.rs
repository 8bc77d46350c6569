use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::json;

use filtforge::comparison::{
    bottleneck, essential_h1_cycle, linf_distance, pseudo_distance_cycle, sublevel_pd0,
};
use filtforge::corpus;
use filtforge::error::Error;
use filtforge::filtration::{ValidationReport, Violation};
use filtforge::io::{
    load_filtration, save_filtration_1d, save_filtration_nd, save_function, save_space,
    LoadedFiltration,
};
use filtforge::synthesis::{induce_1d, induce_nd, verify_induction_1d, verify_induction_nd};

#[derive(Parser)]
#[command(name = "filtforge", version, about = "Validate, synthesize and compare set filtrations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check nesting, stability and (for grids) completeness of a filtration
    Validate {
        filtration: PathBuf,
        /// machine-readable report on stdout
        #[arg(long)]
        json: bool,
        /// check every index pair instead of only consecutive ones
        #[arg(long)]
        strict_pairs: bool,
    },
    /// Synthesize the filtering function inducing a filtration
    Synthesize {
        filtration: PathBuf,
        /// output file; stdout when omitted
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        /// overwrite an existing output file
        #[arg(long)]
        force: bool,
    },
    /// Compare two 1-D filtrations on the same space
    Compare {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        json: bool,
        /// fail unless the pseudo-distance strictly exceeds both bottleneck
        /// distances
        #[arg(long)]
        assert_separation: bool,
    },
    /// Write a named fixture to a directory
    Corpus {
        /// interval-jump | tangent-disk | incomplete-grid | circle-pair |
        /// smooth-chain | random
        name: String,
        /// output directory, created if missing
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// grid spacing for the resolution-parameterized fixtures
        #[arg(long)]
        resolution: Option<f64>,
        /// seed for the random fixtures
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// overwrite existing files
        #[arg(long)]
        force: bool,
    },
}

fn main() -> ExitCode {
    if let Ok(raw) = std::env::var("FORGE_THREADS") {
        match raw.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("FORGE_THREADS must be a positive integer, got {raw:?}");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Validate { filtration, json, strict_pairs } => validate(&filtration, json, strict_pairs),
        Command::Synthesize { filtration, output, json, force } => {
            synthesize(&filtration, output.as_deref(), json, force)
        }
        Command::Compare { first, second, json, assert_separation } => {
            compare(&first, &second, json, assert_separation)
        }
        Command::Corpus { name, out, resolution, seed, force } => {
            write_corpus(&name, &out, resolution, seed, force)
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Io(_) | Error::Parse(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn violation_json(v: &Violation<f64>) -> serde_json::Value {
    json!({
        "kind": format!("{:?}", v.kind),
        "indices": v.indices,
        "positions": v.positions,
        "points": v.points,
    })
}

fn report_json(name: &str, report: &ValidationReport<f64>) -> serde_json::Value {
    json!({
        "check": name,
        "passed": report.passed(),
        "violations": report.violations.iter().map(violation_json).collect::<Vec<_>>(),
    })
}

fn print_report(name: &str, report: &ValidationReport<f64>) {
    if report.passed() {
        println!("{name}: ok");
    } else {
        println!("{name}: {} violation(s)", report.violations.len());
        for v in &report.violations {
            println!(
                "  at positions {:?} (index {:?}), witness points {:?}",
                v.positions, v.indices, v.points
            );
        }
    }
}

fn validate(path: &Path, as_json: bool, strict_pairs: bool) -> Result<ExitCode, Error> {
    let loaded = load_filtration(path)?;
    let mut checks: Vec<(&str, ValidationReport<f64>)> = Vec::new();
    match &loaded {
        LoadedFiltration::One(f) => {
            let nesting = f.check_nesting(strict_pairs);
            let nested = nesting.passed();
            checks.push(("nesting", nesting));
            if nested {
                checks.push(("stability", f.check_stability_finite()?));
            }
        }
        LoadedFiltration::Multi(f) => {
            let nesting = f.check_nesting(strict_pairs);
            let nested = nesting.passed();
            checks.push(("nesting", nesting));
            if nested {
                checks.push(("stability", f.check_stability_nd()?));
                checks.push(("completeness", f.check_completeness()?));
            }
        }
    }
    let passed = checks.iter().all(|(_, r)| r.passed());
    if as_json {
        let body = json!({
            "passed": passed,
            "checks": checks.iter().map(|(n, r)| report_json(n, r)).collect::<Vec<_>>(),
        });
        println!("{body}");
    } else {
        for (name, report) in &checks {
            print_report(name, report);
        }
    }
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn synthesize(
    path: &Path,
    output: Option<&Path>,
    as_json: bool,
    force: bool,
) -> Result<ExitCode, Error> {
    let loaded = load_filtration(path)?;
    let (function, verification) = match &loaded {
        LoadedFiltration::One(f) => {
            let phi = induce_1d(f)?;
            let report = verify_induction_1d(f, &phi)?;
            (phi, report)
        }
        LoadedFiltration::Multi(f) => {
            let phi = induce_nd(f)?;
            let report = verify_induction_nd(f, &phi)?;
            (phi, report)
        }
    };
    if !verification.passed() {
        if as_json {
            println!("{}", report_json("induction", &verification));
        } else {
            print_report("induction", &verification);
        }
        return Ok(ExitCode::from(1));
    }
    match output {
        Some(out) => {
            if out.exists() && !force {
                return Err(Error::Parse(format!(
                    "{} exists, pass --force to overwrite",
                    out.display()
                )));
            }
            save_function(&function, out)?;
            if as_json {
                println!(
                    "{}",
                    json!({"written": out.display().to_string(), "dim": function.dim(), "points": function.point_count()})
                );
            } else {
                println!(
                    "wrote {} ({} points, dim {})",
                    out.display(),
                    function.point_count(),
                    function.dim()
                );
            }
        }
        None => {
            let rows: Vec<Vec<f64>> =
                (0..function.point_count()).map(|p| function.point(p).to_vec()).collect();
            println!("{}", json!({"dim": function.dim(), "values": rows}));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn compare(
    first: &Path,
    second: &Path,
    as_json: bool,
    assert_separation: bool,
) -> Result<ExitCode, Error> {
    let a = match load_filtration(first)? {
        LoadedFiltration::One(f) => f,
        LoadedFiltration::Multi(_) => {
            return Err(Error::UnsupportedTopology("compare expects 1-D filtrations".into()))
        }
    };
    let b = match load_filtration(second)? {
        LoadedFiltration::One(f) => f,
        LoadedFiltration::Multi(_) => {
            return Err(Error::UnsupportedTopology("compare expects 1-D filtrations".into()))
        }
    };
    let phi_a = induce_1d(&a)?;
    let phi_b = induce_1d(&b)?;
    let linf = linf_distance(&phi_a, &phi_b)?;
    let pseudo = match pseudo_distance_cycle(a.space(), &phi_a, &phi_b) {
        Ok(d) => Some(d),
        Err(Error::UnsupportedTopology(_)) => None,
        Err(e) => return Err(e),
    };
    let pd0_a = sublevel_pd0(a.space(), &phi_a)?;
    let pd0_b = sublevel_pd0(b.space(), &phi_b)?;
    let bottleneck_deg0 = bottleneck(&pd0_a, &pd0_b)?;
    let bottleneck_deg1 = match (
        essential_h1_cycle(a.space(), &phi_a),
        essential_h1_cycle(b.space(), &phi_b),
    ) {
        (Ok(h1_a), Ok(h1_b)) => Some(bottleneck(&h1_a, &h1_b)?),
        _ => None,
    };

    let body = json!({
        "linf": linf,
        "pseudo": pseudo,
        "bottleneck_deg0": bottleneck_deg0,
        "bottleneck_deg1": bottleneck_deg1,
    });
    if as_json {
        println!("{body}");
    } else {
        println!("linf            {linf}");
        match pseudo {
            Some(d) => println!("pseudo          {d}"),
            None => println!("pseudo          n/a (space is not a cycle)"),
        }
        println!("bottleneck deg0 {bottleneck_deg0}");
        match bottleneck_deg1 {
            Some(d) => println!("bottleneck deg1 {d}"),
            None => println!("bottleneck deg1 n/a (space is not a cycle)"),
        }
    }
    if assert_separation {
        let separated = match (pseudo, bottleneck_deg1) {
            (Some(p), Some(h1)) => p > bottleneck_deg0 && p > h1,
            (Some(p), None) => p > bottleneck_deg0,
            (None, _) => false,
        };
        if !separated {
            eprintln!("separation assertion failed");
            return Ok(ExitCode::from(1));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn check_fresh(path: &Path, force: bool) -> Result<(), Error> {
    if path.exists() && !force {
        return Err(Error::Parse(format!(
            "{} exists, pass --force to overwrite",
            path.display()
        )));
    }
    Ok(())
}

fn write_corpus(
    name: &str,
    out: &Path,
    resolution: Option<f64>,
    seed: u64,
    force: bool,
) -> Result<ExitCode, Error> {
    std::fs::create_dir_all(out)?;
    let mut written = Vec::new();
    match name {
        "interval-jump" => {
            let f = corpus::interval_jump_fixture(resolution.unwrap_or(0.1), 10)?;
            let path = out.join("interval-jump.json");
            check_fresh(&path, force)?;
            save_filtration_1d(&f, &path)?;
            written.push(path);
        }
        "tangent-disk" => {
            let fixture = corpus::tangent_disk_fixture(resolution.unwrap_or(0.5))?;
            let path = out.join("tangent-disk.json");
            check_fresh(&path, force)?;
            save_filtration_1d(&fixture.filtration, &path)?;
            written.push(path);
        }
        "incomplete-grid" => {
            let f = corpus::incomplete_grid_fixture()?;
            let path = out.join("incomplete-grid.json");
            check_fresh(&path, force)?;
            save_filtration_nd(&f, &path)?;
            written.push(path);
        }
        "circle-pair" => {
            let pair = corpus::circle_pair_fixture(256)?;
            for (f, file) in [(&pair.first, "circle-a.json"), (&pair.second, "circle-b.json")] {
                let path = out.join(file);
                check_fresh(&path, force)?;
                save_filtration_1d(f, &path)?;
                written.push(path);
            }
        }
        "smooth-chain" => {
            let (space, phi) = corpus::smooth_chain_fixture(resolution.unwrap_or(0.1))?;
            let space_path = out.join("smooth-chain-space.json");
            let function_path = out.join("smooth-chain-function.json");
            check_fresh(&space_path, force)?;
            check_fresh(&function_path, force)?;
            save_space(&space, &space_path)?;
            save_function(&phi, &function_path)?;
            written.push(space_path);
            written.push(function_path);
        }
        "random" => {
            let space = Arc::new(corpus::random_space(seed, 64)?);
            let f = corpus::random_stable_filtration(space, seed, 8)?;
            let path = out.join(format!("random-{seed}.json"));
            check_fresh(&path, force)?;
            save_filtration_1d(&f, &path)?;
            written.push(path);
        }
        other => {
            return Err(Error::Parse(format!("unknown fixture {other:?}")));
        }
    }
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}
