use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use ciprng::graphgen::{dedup_functions, generate_scc_function, GenerationParams, IterationGraph};
use ciprng::markov::{sufficient_iterations, worst_case_profile, Convergence, DeviationProfile};
use ciprng::prng::{
    bitstream, outputs, split_streams, CiGenerator, FlipCountModulus, Generator, LegacyGenerator,
};
use ciprng::stattests::{run_battery, BatteryConfig, RepartitionMatrix, TestId, TestReport};
use ciprng::xorshift::mix_seed;
use ciprng::{BooleanFunction, Configuration, Strategy, Xorshift32};
use serde::Serialize;

use crate::args::*;
use crate::manifest::{write_bytes, write_text, RunManifest, MANIFEST_FILE};

fn resolve_seed(seed: Option<u32>) -> u32 {
    seed.unwrap_or_else(|| Xorshift32::from_time().state())
}

fn load_function(path: &Path) -> Result<BooleanFunction> {
    BooleanFunction::load(path).with_context(|| format!("loading function {}", path.display()))
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

/// Records an artifact both on disk and in the manifest.
struct Artifacts<'a> {
    dir: &'a Path,
    manifest: &'a mut RunManifest,
}

impl Artifacts<'_> {
    fn text(&mut self, name: &str, contents: &str) -> Result<PathBuf> {
        let path = self.dir.join(name);
        write_text(&path, contents)?;
        self.manifest.outputs.push(path.clone());
        Ok(path)
    }

    fn finish(self) -> Result<()> {
        self.manifest.write(&self.dir.join(MANIFEST_FILE))
    }
}

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::GenFn(args) => gen_fn(args),
        Command::Analyze(args) => analyze(args),
        Command::Generate(args) => generate(args),
        Command::Test(args) => test(args),
        Command::Trace(args) => trace(args),
        Command::Pipeline(args) => pipeline(args),
        Command::Rerun(args) => rerun(args),
    }
}

#[derive(Serialize)]
struct GeneratedEntry {
    file: PathBuf,
    seed: u32,
    removed: usize,
    achieved_rate: f64,
    saturated: bool,
    arc_count: usize,
}

fn generate_functions(
    args: &GenFnArgs,
    seed: u32,
) -> Result<Vec<(BooleanFunction, GeneratedEntry)>> {
    let mut produced = Vec::with_capacity(args.count);
    for j in 0..args.count {
        let fn_seed = mix_seed(seed, j as u64);
        let params = GenerationParams::new(args.n, args.rate, args.max_attempts, fn_seed)?;
        let generated = generate_scc_function(&params)?;
        let name = format!("fn-{j:03}");
        let function = generated.function.with_name(&name);
        let entry = GeneratedEntry {
            file: PathBuf::from(format!("{name}.json")),
            seed: fn_seed,
            removed: generated.removed,
            achieved_rate: generated.achieved_rate,
            saturated: generated.saturated,
            arc_count: IterationGraph::from_function(&function).arc_count(),
        };
        produced.push((function, entry));
    }
    Ok(produced)
}

fn gen_fn(mut args: GenFnArgs) -> Result<()> {
    if args.count == 0 {
        bail!("--count must be at least 1");
    }
    let seed = resolve_seed(args.seed);
    args.seed = Some(seed);
    let mut produced = generate_functions(&args, seed)?;
    if args.dedup {
        let functions: Vec<BooleanFunction> = produced.iter().map(|(f, _)| f.clone()).collect();
        let kept: Vec<Option<String>> = dedup_functions(&functions)?
            .iter()
            .map(|f| f.name().map(str::to_owned))
            .collect();
        produced.retain(|(f, _)| kept.contains(&f.name().map(str::to_owned)));
    }

    let mut manifest = RunManifest::new(Command::GenFn(args.clone()));
    let mut out = Artifacts {
        dir: &args.out,
        manifest: &mut manifest,
    };
    let mut entries = Vec::with_capacity(produced.len());
    for (function, entry) in produced {
        let path = out.text(&entry.file.to_string_lossy(), &(function.to_json() + "\n"))?;
        if args.verify {
            let reloaded = load_function(&path)?;
            if reloaded.images() != function.images()
                || !IterationGraph::from_function(&reloaded).is_strongly_connected()
            {
                bail!("verification failed for {}", path.display());
            }
        }
        println!(
            "{}: removed {} arcs ({:.2}%){}",
            path.display(),
            entry.removed,
            100.0 * entry.achieved_rate,
            if entry.saturated {
                ", saturated below target"
            } else {
                ""
            }
        );
        entries.push(entry);
    }
    out.text("generated.json", &json(&entries)?)?;
    out.finish()
}

fn profile_for(f: &BooleanFunction, args: &AnalyzeArgs) -> Result<DeviationProfile> {
    Ok(if args.worst_case {
        worst_case_profile(f, args.epsilon, args.tmax)?
    } else {
        let start = Configuration::new(f.n(), args.start.unwrap_or(0))?;
        sufficient_iterations(f, start, args.epsilon, args.tmax)?
    })
}

fn describe(profile: &DeviationProfile) -> String {
    let behaviour = match &profile.convergence {
        Convergence::Converged => "converged".to_string(),
        Convergence::Periodic { period, .. } => format!("periodic with period {period}"),
        Convergence::Unsettled => "not settled at the horizon".to_string(),
    };
    format!(
        "sufficient iterations {} (floor {:.4}, {behaviour})",
        profile.sufficient_iterations, profile.floor_deviation
    )
}

fn analyze(args: AnalyzeArgs) -> Result<()> {
    let f = load_function(&args.function)?;
    let profile = profile_for(&f, &args)?;
    let mut manifest = RunManifest::new(Command::Analyze(args.clone()));
    manifest.inputs.push(args.function.clone());
    let mut out = Artifacts {
        dir: &args.out,
        manifest: &mut manifest,
    };
    out.text("profile.json", &json(&profile)?)?;
    out.text("deviation.csv", &profile.to_csv())?;
    out.finish()?;
    println!("{}", describe(&profile));
    Ok(())
}

fn initial_state(n: usize, x0: Option<u32>, seed: u32) -> Result<Configuration> {
    let value = x0.unwrap_or(seed % (1u32 << n));
    Ok(Configuration::new(n, value)?)
}

fn generate(mut args: GenerateArgs) -> Result<()> {
    let f = load_function(&args.function)?;
    let seed = resolve_seed(args.seed);
    args.seed = Some(seed);
    let x0 = initial_state(f.n(), args.x0, seed)?;
    args.x0 = Some(x0.value());
    let rng = Xorshift32::new(seed)?;
    let mut generator: Box<dyn Generator> = match args.generator {
        GeneratorKind::Ci => {
            if args.strict_paper {
                bail!("--strict-paper only applies to the legacy generator");
            }
            let b = args.b.context("--b is required for the ci generator")?;
            Box::new(CiGenerator::new(f.clone(), b, rng, x0)?)
        }
        GeneratorKind::Legacy => {
            let modulus = if args.strict_paper {
                FlipCountModulus::Strict
            } else {
                FlipCountModulus::Full
            };
            Box::new(LegacyGenerator::new(f.clone(), rng, x0, modulus)?)
        }
    };
    let bytes = match args.format {
        OutputFormat::Bits => {
            (bitstream(&mut generator, args.rounds)?.to_string() + "\n").into_bytes()
        }
        OutputFormat::Bytes => bitstream(&mut generator, args.rounds)?.to_bytes(),
        OutputFormat::Ints => outputs(&mut generator, args.rounds)
            .iter()
            .map(|v| format!("{v}\n"))
            .collect::<String>()
            .into_bytes(),
    };
    match args.out.clone() {
        Some(path) => {
            write_bytes(&path, &bytes)?;
            let mut manifest = RunManifest::new(Command::Generate(args.clone()));
            manifest.inputs.push(args.function.clone());
            manifest.outputs.push(path.clone());
            let mut manifest_path = path.into_os_string();
            manifest_path.push(".manifest.json");
            manifest.write(Path::new(&manifest_path))?;
        }
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&bytes)?;
        }
    }
    Ok(())
}

/// Report, repartition matrix and timings of one battery run.
struct BatteryOutcome {
    report: TestReport,
    repartition: RepartitionMatrix,
    generation_seconds: f64,
}

fn battery_config(args: &BatteryArgs) -> BatteryConfig {
    BatteryConfig {
        alpha: args.alpha,
        block_length: args.block_length,
        serial_m: args.serial_m,
        apen_m: args.apen_m,
        ..BatteryConfig::default()
    }
}

fn run_tests(
    f: &BooleanFunction,
    b: usize,
    seed: u32,
    x0: Configuration,
    args: &BatteryArgs,
) -> Result<BatteryOutcome> {
    let started = Instant::now();
    let mut generator = CiGenerator::new(f.clone(), b, Xorshift32::new(seed)?, x0)?;
    let streams = split_streams(&mut generator, args.streams, args.bits)?;
    let generation_seconds = started.elapsed().as_secs_f64();

    let mut report = run_battery(&streams, &battery_config(args))?;
    if let Some(path) = &args.external {
        let text =
            fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let values: BTreeMap<TestId, Option<f64>> =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        report.import_external(&values)?;
    }

    // the first outputs of the same sequence
    let mut generator = CiGenerator::new(f.clone(), b, Xorshift32::new(seed)?, x0)?;
    let values = outputs(&mut generator, args.repartition_rounds);
    let repartition = RepartitionMatrix::from_outputs(f.n(), &values)?;
    Ok(BatteryOutcome {
        report,
        repartition,
        generation_seconds,
    })
}

#[derive(Serialize)]
struct Timing {
    generation_seconds: f64,
    battery_seconds: f64,
}

/// Writes report.json, report.txt, repartition.csv and timing.json.
fn write_battery(out: &mut Artifacts, outcome: &BatteryOutcome) -> Result<()> {
    let mut untimed = outcome.report.clone();
    untimed.elapsed = None;
    out.text("report.json", &json(&untimed)?)?;
    out.text("report.txt", &untimed.to_table())?;
    out.text("repartition.csv", &outcome.repartition.to_csv())?;
    let timing = Timing {
        generation_seconds: outcome.generation_seconds,
        battery_seconds: outcome.report.elapsed.map_or(0.0, |d| d.as_secs_f64()),
    };
    out.text("timing.json", &json(&timing)?)?;
    print!("{}", outcome.report.to_table());
    Ok(())
}

fn test(mut args: TestArgs) -> Result<()> {
    let f = load_function(&args.function)?;
    let seed = resolve_seed(args.seed);
    args.seed = Some(seed);
    let x0 = initial_state(f.n(), args.x0, seed)?;
    args.x0 = Some(x0.value());
    let outcome = run_tests(&f, args.b, seed, x0, &args.battery)?;

    let mut manifest = RunManifest::new(Command::Test(args.clone()));
    manifest.inputs.push(args.function.clone());
    manifest.inputs.extend(args.battery.external.clone());
    let mut out = Artifacts {
        dir: &args.out,
        manifest: &mut manifest,
    };
    write_battery(&mut out, &outcome)?;
    out.finish()
}

fn trace(args: TraceArgs) -> Result<()> {
    let f = load_function(&args.function)?;
    let x0 = Configuration::new(f.n(), args.x0)?;
    let strategy = Strategy::new(f.n(), args.strategy.clone())?;
    let states = f.trajectory(&strategy, x0, strategy.len())?;
    let line: Vec<String> = std::iter::once(x0)
        .chain(states)
        .map(|c| c.value().to_string())
        .collect();
    println!("{}", line.join(","));
    Ok(())
}

#[derive(Serialize)]
struct PipelineSummary<'a> {
    function: &'a BooleanFunction,
    removed: usize,
    achieved_rate: f64,
    saturated: bool,
    b: usize,
    floor_deviation: f64,
    convergence: &'a Convergence,
    stream_seed: u32,
    x0: u32,
    report: &'a TestReport,
}

fn pipeline(mut args: PipelineArgs) -> Result<()> {
    let seed = resolve_seed(args.seed);
    args.seed = Some(seed);

    let gen_args = GenFnArgs {
        n: args.n,
        rate: args.rate,
        count: 1,
        seed: Some(seed),
        max_attempts: args.max_attempts,
        dedup: false,
        verify: false,
        out: args.out.clone(),
    };
    let (function, entry) = generate_functions(&gen_args, seed)?.remove(0);
    let function = function.with_name("function");

    let start = Configuration::zero(args.n)?;
    let profile = sufficient_iterations(&function, start, args.epsilon, args.tmax)?;
    if !profile.is_convergent() {
        eprintln!("warning: {}", describe(&profile));
    }
    let b = profile.sufficient_iterations;

    let stream_seed = mix_seed(seed, 1);
    let x0 = initial_state(args.n, None, stream_seed)?;
    let outcome = run_tests(&function, b, stream_seed, x0, &args.battery)?;

    let mut manifest = RunManifest::new(Command::Pipeline(args.clone()));
    manifest.inputs.extend(args.battery.external.clone());
    manifest.derive("b", b);
    manifest.derive("stream_seed", stream_seed);
    manifest.derive("x0", x0.value());
    let mut out = Artifacts {
        dir: &args.out,
        manifest: &mut manifest,
    };
    out.text("function.json", &(function.to_json() + "\n"))?;
    out.text("profile.json", &json(&profile)?)?;
    out.text("deviation.csv", &profile.to_csv())?;
    println!(
        "function: removed {} arcs, {}",
        entry.removed,
        describe(&profile)
    );
    write_battery(&mut out, &outcome)?;
    let mut untimed = outcome.report.clone();
    untimed.elapsed = None;
    let summary = PipelineSummary {
        function: &function,
        removed: entry.removed,
        achieved_rate: entry.achieved_rate,
        saturated: entry.saturated,
        b,
        floor_deviation: profile.floor_deviation,
        convergence: &profile.convergence,
        stream_seed,
        x0: x0.value(),
        report: &untimed,
    };
    out.text("pipeline.json", &json(&summary)?)?;
    out.finish()
}

fn rerun(args: RerunArgs) -> Result<()> {
    let manifest = RunManifest::load(&args.manifest)?;
    let mut command = manifest.command;
    if let Some(dir) = args.out {
        match &mut command {
            Command::GenFn(a) => a.out = dir,
            Command::Analyze(a) => a.out = dir,
            Command::Test(a) => a.out = dir,
            Command::Pipeline(a) => a.out = dir,
            Command::Generate(a) => {
                let name = a
                    .out
                    .as_ref()
                    .and_then(|p| p.file_name())
                    .context("manifest has no output file")?;
                a.out = Some(dir.join(name));
            }
            Command::Trace(_) | Command::Rerun(_) => {}
        }
    }
    run(command)
}
