mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use topfan_core::charts::{all_transitions, check_cocycle_with, check_conjugation_equivariant, kernel_presentation, orbit_face_poset};
use topfan_core::equivalence::{equivalent, EquivMode};
use topfan_core::fixtures::{self, Fixture};
use topfan_core::invariants::{betti_numbers, cohomology_presentation, graded_ranks, omni_weights, todd_genus, todd_genus_seeded, GradedRing};
use topfan_core::io::{complex_to_json, fan_to_json, parse_complex, parse_fan, FanDoc};
use topfan_core::rational::{format_rat, parse_rat};
use topfan_core::realize::barnette;
use topfan_core::realize::labeling::{search_labeling, LabelingProblem, Mode, Outcome};
use topfan_core::realize::sphere2::realize_2sphere;
use topfan_core::realize::surgery::{product_fan, stellar_subdivide_fan, suspend_fan};
use topfan_core::TopologicalFan;

use report::Run;

#[derive(Parser)]
#[command(name = "topfan", version, about = "Exact computations on topological fans")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Include wall-clock timings in the report.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the fan condition, completeness and non-singularity.
    Validate { fan: PathBuf },
    /// Kernel presentations, chart transitions, cocycle check, orbit face poset.
    Charts {
        fan: PathBuf,
        /// Facet whose Ker λ presentation to print, e.g. 1,2.
        #[arg(long)]
        kernel: Option<String>,
        #[arg(long)]
        transitions: bool,
        #[arg(long)]
        cocycle: bool,
        #[arg(long)]
        faceposet: bool,
    },
    /// Betti numbers, Pontrjagin class, weights and Todd genus; all when no flag is given.
    Invariants {
        fan: PathBuf,
        #[arg(long)]
        betti: bool,
        #[arg(long)]
        pontrjagin: bool,
        #[arg(long)]
        weights: bool,
        #[arg(long)]
        todd: bool,
        /// Direction for the Todd genus, e.g. 1,2/3.
        #[arg(long)]
        dir: Option<String>,
    },
    /// Decide strict, D- or H-equivalence of two fans.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = EquivArg::Strict)]
        mode: EquivArg,
    },
    /// Stellar subdivision, suspension or product of fans.
    Surgery {
        fan: PathBuf,
        #[arg(long, conflicts_with_all = ["suspend", "product"])]
        stellar: Option<String>,
        #[arg(long, conflicts_with = "product")]
        suspend: bool,
        #[arg(long)]
        product: Option<PathBuf>,
        /// Also write the resulting fan JSON to this file.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Search for integer labelings of a complex.
    Realize {
        complex: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, default_value_t = 3)]
        bound: i64,
        /// Facet pinned to the standard basis, e.g. 1,2,3,4.
        #[arg(long)]
        normalize: Option<String>,
        /// Single-threaded search with reproducible solutions.
        #[arg(long)]
        deterministic: bool,
        /// Write the realized fan (four-color mode) to this file.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Write a bundled fixture: cp2cp2, barnette, barnette-fan, cyclic:<n>:<m>,
    /// octahedron, icosahedron, tetrahedron.
    Fixtures {
        name: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EquivArg {
    Strict,
    D,
    H,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Unimodular,
    ToricSign,
    Mod2,
    FourColor,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(t) = std::env::var("TOPFAN_THREADS") {
        match t.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: TOPFAN_THREADS must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',').map(|x| x.trim().parse::<usize>().with_context(|| format!("bad vertex {x:?}"))).collect()
}

fn load_fan(run: &mut Run, path: &Path) -> Result<TopologicalFan> {
    let text = run.read(path)?;
    parse_fan(&text).with_context(|| format!("parsing fan {}", path.display()))
}

fn write_output(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: Cli) -> Result<u8> {
    let seed = cli.seed;
    match cli.command {
        Command::Validate { fan } => {
            let mut run = Run::new("validate", seed, cli.timings);
            let f = load_fan(&mut run, &fan)?;
            let t = Instant::now();
            let report = f.validate_seeded(seed);
            run.lap("validate", t);
            let valid = report.is_valid();
            let mut result = serde_json::to_value(&report)?;
            result["valid"] = json!(valid);
            run.finish(result)?;
            Ok(u8::from(!valid))
        }
        Command::Charts { fan, kernel, transitions, cocycle, faceposet } => {
            let mut run = Run::new("charts", seed, cli.timings);
            let f = load_fan(&mut run, &fan)?;
            let cocycle = cocycle || (kernel.is_none() && !transitions && !faceposet);
            let mut result = json!({});
            let mut code = 0;
            if let Some(k) = kernel {
                result["kernel"] = serde_json::to_value(kernel_presentation(&f, &parse_list(&k)?)?)?;
            }
            if transitions || cocycle {
                let t = Instant::now();
                let all = all_transitions(&f)?;
                run.lap("transitions", t);
                if transitions {
                    result["transitions"] = serde_json::to_value(all.iter().flatten().collect::<Vec<_>>())?;
                }
                if cocycle {
                    let t = Instant::now();
                    let failure = check_cocycle_with(&f, &all)?;
                    run.lap("cocycle", t);
                    code = u8::from(failure.is_some());
                    result["cocycle"] = json!({
                        "holds": failure.is_none(),
                        "failure": failure,
                        "involutive": f.check_involutive(),
                        "conjugation_equivariant": check_conjugation_equivariant(&f)?,
                    });
                }
            }
            if faceposet {
                let p = orbit_face_poset(&f);
                result["faceposet"] = json!({ "rank_counts": p.rank_counts(), "poset": p });
            }
            run.finish(result)?;
            Ok(code)
        }
        Command::Invariants { fan, betti, pontrjagin, weights, todd, dir } => {
            let mut run = Run::new("invariants", seed, cli.timings);
            let f = load_fan(&mut run, &fan)?;
            let all = !(betti || pontrjagin || weights || todd || dir.is_some());
            let mut result = json!({});
            if all || betti {
                result["presentation"] = serde_json::to_value(cohomology_presentation(&f))?;
                result["betti"] = json!(betti_numbers(&f));
                result["graded_ranks"] = json!(graded_ranks(&f));
            }
            if all || pontrjagin {
                let t = Instant::now();
                let mut ring = GradedRing::new(&f);
                result["pontrjagin"] = serde_json::to_value(ring.pontrjagin_class())?;
                run.lap("pontrjagin", t);
            }
            if all || weights {
                result["weights"] = serde_json::to_value(omni_weights(&f)?)?;
            }
            if all || todd || dir.is_some() {
                let (value, direction) = match &dir {
                    Some(d) => {
                        let x = d
                            .split(',')
                            .map(|s| parse_rat(s.trim()).map_err(|e| anyhow!("bad direction entry {s:?}: {e}")))
                            .collect::<Result<Vec<_>>>()?;
                        (todd_genus(&f, &x)?, x)
                    }
                    None => todd_genus_seeded(&f, seed)?,
                };
                result["todd"] = json!({ "value": value, "direction": direction.iter().map(format_rat).collect::<Vec<_>>() });
            }
            run.finish(result)?;
            Ok(0)
        }
        Command::Equiv { a, b, mode } => {
            let mut run = Run::new("equiv", seed, cli.timings);
            let fa = load_fan(&mut run, &a)?;
            let fb = load_fan(&mut run, &b)?;
            let mode = match mode {
                EquivArg::Strict => EquivMode::Strict,
                EquivArg::D => EquivMode::D,
                EquivArg::H => EquivMode::H,
            };
            let t = Instant::now();
            let e = equivalent(&fa, &fb, mode);
            run.lap("search", t);
            let found = e.is_some();
            let mut result = json!({ "mode": mode, "equivalent": found });
            if let Some(e) = e {
                result["sigma"] = json!(e.sigma);
                result["mus"] = serde_json::to_value(&e.mus)?;
            }
            run.finish(result)?;
            Ok(u8::from(!found))
        }
        Command::Surgery { fan, stellar, suspend, product, output } => {
            let mut run = Run::new("surgery", seed, cli.timings);
            let f = load_fan(&mut run, &fan)?;
            let out = match (stellar, suspend, product) {
                (Some(s), _, _) => stellar_subdivide_fan(&f, &parse_list(&s)?)?,
                (None, true, _) => suspend_fan(&f)?,
                (None, false, Some(p)) => {
                    let g = load_fan(&mut run, &p)?;
                    product_fan(&f, &g)?
                }
                _ => bail!("one of --stellar, --suspend or --product is required"),
            };
            let report = out.validate_seeded(seed);
            let valid = report.is_valid();
            if let Some(path) = output {
                write_output(&path, &fan_to_json(&out))?;
            }
            run.finish(json!({ "fan": FanDoc::from_fan(&out), "validation": report, "valid": valid }))?;
            Ok(u8::from(!valid))
        }
        Command::Realize { complex, mode, bound, normalize, deterministic, output } => {
            let mut run = Run::new("realize", seed, cli.timings);
            let text = run.read(&complex)?;
            let e = parse_complex(&text).with_context(|| format!("parsing complex {}", complex.display()))?;
            if mode == ModeArg::FourColor {
                let positions = e.positions.as_ref().ok_or_else(|| anyhow!("four-color mode needs vertex positions"))?;
                let t = Instant::now();
                let r = realize_2sphere(&e.complex, positions)?;
                run.lap("realize", t);
                if let Some(path) = output {
                    write_output(&path, &fan_to_json(&r.fan))?;
                }
                run.finish(json!({
                    "verdict": "sat",
                    "coloring": r.coloring,
                    "fan": FanDoc::from_fan(&r.fan),
                }))?;
                return Ok(0);
            }
            let mode = match mode {
                ModeArg::Unimodular => Mode::Unimodular,
                ModeArg::ToricSign => Mode::ToricSign,
                _ => Mode::Mod2,
            };
            let mut p = LabelingProblem::new(e.complex.clone(), mode, bound);
            p.deterministic = deterministic;
            p.normalize = normalize.as_deref().map(parse_list).transpose()?;
            let t = Instant::now();
            let outcome = search_labeling(&p)?;
            run.lap("search", t);
            let mut result = serde_json::to_value(&outcome)?;
            result["mode"] = serde_json::to_value(mode)?;
            if mode == Mode::ToricSign {
                if outcome.is_sat() {
                    result["note"] = json!("necessary conditions satisfied");
                }
                if barnette::is_barnette(&e.complex) {
                    let t = Instant::now();
                    result["case_analysis"] = serde_json::to_value(barnette::case_analysis_certificate())?;
                    run.lap("case_analysis", t);
                }
            }
            run.finish(result)?;
            Ok(u8::from(!matches!(outcome, Outcome::Sat { .. })))
        }
        Command::Fixtures { name, output } => {
            let text = match fixtures::fixture(&name)? {
                Fixture::Fan(f) => fan_to_json(&f),
                Fixture::Complex(e) => complex_to_json(&e.complex, e.positions.as_deref()),
            };
            match output {
                Some(path) => write_output(&path, &text)?,
                None => println!("{text}"),
            }
            Ok(0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_lists() {
        assert_eq!(parse_list("1, 2,3").unwrap(), vec![1, 2, 3]);
        assert!(parse_list("1,x").is_err());
    }

    #[test]
    fn cli_shape() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
