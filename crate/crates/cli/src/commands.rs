use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use amvs_core::eval::{learning_curve, score, write_curve_csv, CurveConfig, Score};
use amvs_core::pddl::{
    bind_problem, ground as ground_pddl, parse_domain, parse_problem, read_trace, write_ground_domain,
    write_trace, GeneratorInfo, TraceFile, TraceHeader,
};
use amvs_core::sim::{simulate as run_simulation, split, SimConfig, PRNG_NAME};
use amvs_core::snapshot::{ModelFile, NondetFile, Snapshot};
use amvs_core::{
    extract_complete, extract_sound, validate_plan, Classifier, EnumerationLimit, Error, FluentUniverse,
    GroundModel, LearnConfig, Learner, PlanningQuery, Transition, Verdict,
};

use crate::error::{code_of, CliError, CliResult, COLLAPSE, IO, SEMANTIC, SYNTAX};
use crate::{Format, Kind};

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::new(IO, format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CliResult {
    fs::write(path, text).map_err(|e| CliError::new(IO, format!("{}: {e}", path.display())))
}

fn create(path: &Path) -> CliResult<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::new(IO, format!("{}: {e}", path.display())))
}

fn with_path<E: Into<CliError>>(path: &Path) -> impl FnOnce(E) -> CliError + '_ {
    move |e| {
        let e = e.into();
        CliError::new(e.code, format!("{}: {}", path.display(), e.message))
    }
}

fn load_model_file(path: &Path) -> CliResult<(ModelFile, GroundModel)> {
    let file = ModelFile::from_json(&read(path)?).map_err(with_path(path))?;
    let model = file.model().map_err(with_path(path))?;
    Ok((file, model))
}

fn load_trace(path: &Path) -> CliResult<TraceFile> {
    let file = File::open(path).map_err(|e| CliError::new(IO, format!("{}: {e}", path.display())))?;
    read_trace(BufReader::new(file)).map_err(with_path(path))
}

fn load_learner(path: &Path) -> CliResult<Learner> {
    let snapshot = Snapshot::from_json(&read(path)?).map_err(with_path(path))?;
    snapshot.restore().map_err(with_path(path))
}

pub fn ground(domain: &Path, problem: &Path, out: &Path, list_actions: bool) -> CliResult<ExitCode> {
    let dom = parse_domain(&read(domain)?).map_err(with_path(domain))?;
    let prob = parse_problem(&read(problem)?).map_err(with_path(problem))?;
    let grounded = ground_pddl(&dom, &prob)?;
    for w in &grounded.warnings {
        eprintln!("warning: {w}");
    }
    let file = ModelFile::from_model(&grounded.model).with_problem(
        &grounded.model,
        &grounded.initial,
        &grounded.goal,
    );
    write(out, &file.to_json())?;
    let mut stdout = io::stdout().lock();
    let listing = if list_actions {
        grounded.model.action_names()
    } else {
        grounded.model.universe().names().to_vec()
    };
    for name in listing {
        let _ = writeln!(stdout, "{name}");
    }
    eprintln!(
        "{} fluents, {} actions",
        grounded.model.universe().len(),
        grounded.model.actions().len()
    );
    Ok(ExitCode::SUCCESS)
}

pub struct SimulateArgs<'a> {
    pub model: &'a Path,
    pub seed: u64,
    pub length: Option<usize>,
    pub restarts: Option<usize>,
    pub ratio: Option<f64>,
    pub dedupe: bool,
    pub config: Option<&'a Path>,
    pub out: &'a Path,
}

pub fn simulate(args: SimulateArgs) -> CliResult<ExitCode> {
    let mut cfg = match args.config {
        Some(path) => serde_json::from_str::<SimConfig>(&read(path)?)
            .map_err(|e| CliError::new(SYNTAX, format!("{}: {e}", path.display())))?,
        None => SimConfig::default(),
    };
    cfg.seed = args.seed;
    cfg.length = args.length.unwrap_or(cfg.length);
    cfg.restarts = args.restarts.unwrap_or(cfg.restarts);
    cfg.ratio = args.ratio.unwrap_or(cfg.ratio);
    cfg.dedupe |= args.dedupe;
    cfg.validate()?;

    let (file, model) = load_model_file(args.model)?;
    let initial = file.initial_state(model.universe())?.ok_or_else(|| {
        CliError::new(
            SEMANTIC,
            format!("{}: model has no initial state", args.model.display()),
        )
    })?;
    let sim = run_simulation(&model, &initial, &cfg)?;
    for w in &sim.warnings {
        eprintln!("warning: {w}");
    }
    let mut header = TraceHeader::for_model(&model);
    header.generator = Some(GeneratorInfo {
        prng: PRNG_NAME.to_string(),
        seed: cfg.seed,
        length: cfg.length,
        restarts: cfg.restarts,
        ratio: cfg.ratio,
        dedupe: cfg.dedupe,
        positives: sim.positives.len(),
        negatives: sim.negatives.len(),
    });
    write_trace(create(args.out)?, &header, &sim.demos())?;
    println!(
        "{} positive, {} negative demonstrations",
        sim.positives.len(),
        sim.negatives.len()
    );
    Ok(ExitCode::SUCCESS)
}

fn print_status(learner: &Learner) {
    let width = learner
        .spaces()
        .iter()
        .map(|s| s.action().len())
        .chain([6])
        .max()
        .unwrap_or(6);
    let mut stdout = io::stdout().lock();
    let _ = writeln!(
        stdout,
        "{:<width$}  {:<9}  {:<9}  {:>7}  {:>9}  {:>9}",
        "action", "pre", "eff", "upper", "positives", "negatives"
    );
    for space in learner.spaces() {
        let status = space.status();
        let _ = writeln!(
            stdout,
            "{:<width$}  {:<9}  {:<9}  {:>7}  {:>9}  {:>9}",
            space.action(),
            status.pre.to_string(),
            status.eff.to_string(),
            space.pre().upper().len(),
            space.positives(),
            space.negatives()
        );
    }
}

pub fn learn(trace: &Path, out: &Path, max_upper: Option<usize>) -> CliResult<ExitCode> {
    let trace_file = load_trace(trace)?;
    let mut learner = Learner::new(
        trace_file.universe.clone(),
        trace_file.header.actions.iter().cloned(),
    )
    .with_config(LearnConfig { max_upper });
    let mut rejected = 0;
    for (index, demo) in trace_file.demos.iter().enumerate() {
        if let Err(e) = learner.observe(demo) {
            if code_of(&e) != COLLAPSE {
                return Err(CliError::new(
                    code_of(&e),
                    format!("record {index}: {}", e.root()),
                ));
            }
            eprintln!("record {index}: {}", e.root());
            rejected += 1;
        }
    }
    write(out, &Snapshot::capture(&learner).to_json())?;
    print_status(&learner);
    if learner.any_collapsed() || rejected > 0 {
        eprintln!("version space collapsed: the trace is inconsistent with any STRIPS model");
        return Ok(ExitCode::from(COLLAPSE));
    }
    Ok(ExitCode::SUCCESS)
}

fn describe(universe: &FluentUniverse, names: &[String], t: &Transition) -> String {
    let set = |s| format!("{{{}}}", universe.true_fluent_names(s).join(", "));
    format!("{} --[{}]--> {}", set(&t.pre), names[t.action], set(&t.post))
}

pub fn extract(
    snapshot: &Path,
    kind: Kind,
    format: Option<Format>,
    out: &Path,
    list: bool,
) -> CliResult<ExitCode> {
    let learner = load_learner(snapshot)?;
    let universe = learner.universe();
    let names: Vec<String> = learner.spaces().iter().map(|s| s.action().to_string()).collect();
    let limit = EnumerationLimit::from_env();
    let transitions = match kind {
        Kind::Sound => {
            let sound = extract_sound(universe, learner.spaces())?;
            let text = match format.unwrap_or(Format::Pddl) {
                Format::Pddl => write_ground_domain(sound.model(), "learned"),
                Format::Json => ModelFile::from_model(sound.model()).to_json(),
            };
            write(out, &text)?;
            if list {
                Some(sound.enumerate_transitions(limit)?)
            } else {
                None
            }
        }
        Kind::Complete => {
            if format == Some(Format::Pddl) {
                return Err(CliError::new(
                    SEMANTIC,
                    "complete models are non-deterministic and are written as JSON only",
                ));
            }
            let complete = extract_complete(universe, learner.spaces())?;
            write(out, &NondetFile::from_model(&complete).to_json())?;
            if list {
                Some(complete.enumerate_transitions(limit)?)
            } else {
                None
            }
        }
    };
    if let Some(ts) = transitions {
        let mut stdout = io::stdout().lock();
        for t in &ts {
            let _ = writeln!(stdout, "{}", describe(universe, &names, t));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn check_catalog(trace: &TraceFile, fluents: &[String], actions: &[String], path: &Path) -> CliResult {
    if trace.header.fluents != fluents || trace.header.actions != actions {
        return Err(CliError::new(
            SEMANTIC,
            format!(
                "{}: trace header does not match the model's fluents and actions",
                path.display()
            ),
        ));
    }
    Ok(())
}

pub fn eval(snapshot: Option<(&Path, Kind)>, model: Option<&Path>, trace: &Path) -> CliResult<ExitCode> {
    let trace_file = load_trace(trace)?;
    let result: Score = match (snapshot, model) {
        (Some((path, kind)), _) => {
            let learner = load_learner(path)?;
            let actions: Vec<String> = learner.spaces().iter().map(|s| s.action().to_string()).collect();
            check_catalog(&trace_file, learner.universe().names(), &actions, trace)?;
            let classifier: Box<dyn Classifier> = match kind {
                Kind::Sound => Box::new(extract_sound(learner.universe(), learner.spaces())?),
                Kind::Complete => Box::new(extract_complete(learner.universe(), learner.spaces())?),
            };
            score(classifier.as_ref(), &trace_file.demos)?
        }
        (None, Some(path)) => {
            let (_, model) = load_model_file(path)?;
            check_catalog(
                &trace_file,
                model.universe().names(),
                &model.action_names(),
                trace,
            )?;
            score(&model, &trace_file.demos)?
        }
        (None, None) => {
            return Err(CliError::new(
                SEMANTIC,
                "either --snapshot with --kind or --model is required",
            ))
        }
    };
    println!("tp,fp,fn,tn,precision,recall,f1");
    println!(
        "{},{},{},{},{},{},{}",
        result.tp, result.fp, result.fn_, result.tn, result.precision, result.recall, result.f1
    );
    Ok(ExitCode::SUCCESS)
}

pub fn curve(
    model: &Path,
    trace: &Path,
    ratios: Vec<f64>,
    seed: u64,
    fraction: f64,
    dedupe: bool,
    out: Option<&Path>,
) -> CliResult<ExitCode> {
    if let Some(r) = ratios.iter().find(|r| !r.is_finite() || **r < 0.0) {
        return Err(CliError::new(
            SEMANTIC,
            format!("ratio must be non-negative, got {r}"),
        ));
    }
    let (_, truth) = load_model_file(model)?;
    let trace_file = load_trace(trace)?;
    trace_file.check_against(&truth).map_err(with_path(trace))?;
    let (train, test) = split(&trace_file.demos, fraction, seed)?;
    let cfg = CurveConfig { ratios, seed, dedupe };
    let points = learning_curve(&truth, &train, &test, &cfg)?;
    let written = match out {
        Some(path) => {
            let mut w = create(path)?;
            write_curve_csv(&mut w, &points).and_then(|()| w.flush())
        }
        None => write_curve_csv(io::stdout().lock(), &points),
    };
    written.map_err(|e| CliError::new(IO, e.to_string()))?;
    Ok(ExitCode::SUCCESS)
}

/// One action per line, `(stack a b)` or `stack a b`; `;` starts a comment.
fn parse_plan(text: &str, model: &GroundModel) -> CliResult<Vec<usize>> {
    let mut plan = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.split(';').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let inner = line
            .strip_prefix('(')
            .and_then(|l| l.strip_suffix(')'))
            .unwrap_or(line);
        let name = inner
            .split_whitespace()
            .collect::<Vec<_>>()
            .join(" ")
            .to_lowercase();
        let id = model.action_id(&name).map_err(|_| {
            CliError::new(
                SEMANTIC,
                format!("plan line {}: unknown action `{name}`", line_no + 1),
            )
        })?;
        plan.push(id);
    }
    Ok(plan)
}

pub fn validate(model: &Path, problem: Option<&Path>, plan: &Path) -> CliResult<ExitCode> {
    let (file, ground_model) = load_model_file(model)?;
    let universe = ground_model.universe();
    let (initial, goal) = match problem {
        Some(path) => {
            let prob = parse_problem(&read(path)?).map_err(with_path(path))?;
            bind_problem(universe, &prob).map_err(with_path(path))?
        }
        None => {
            let missing = || {
                CliError::new(
                    SEMANTIC,
                    format!("{}: model has no initial state or goal", model.display()),
                )
            };
            let initial = file.initial_state(universe)?.ok_or_else(missing)?;
            let goal = file.goal(universe)?.ok_or_else(missing)?;
            (initial, goal)
        }
    };
    let plan = parse_plan(&read(plan)?, &ground_model)?;
    let verdict = validate_plan(&ground_model, &PlanningQuery { initial, goal, plan })
        .map_err(|e: Error| CliError::from(e))?;
    println!("{verdict}");
    Ok(if verdict == Verdict::Valid {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
