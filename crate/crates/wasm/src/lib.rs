//! Browser bindings over the bundled blocksworld instances. Every export
//! returns a JSON string.

use amvs_core::bench::blocksworld;
use amvs_core::eval::{learning_curve, CurveConfig, CurvePoint};
use amvs_core::pddl::Grounded;
use amvs_core::sim::{simulate, split, SimConfig};
use amvs_core::{extract_sound, validate_plan, ComponentStatus, Learner, PlanningQuery};
use serde::Serialize;
use wasm_bindgen::prelude::*;

const MAX_LENGTH: u32 = 2000;

fn instance(blocks: u32) -> Result<Grounded, String> {
    blocksworld(blocks as usize).map_err(|e| e.to_string())
}

fn walk(g: &Grounded, seed: u32, length: u32, ratio: f64) -> Result<Vec<amvs_core::Demonstration>, String> {
    if length > MAX_LENGTH {
        return Err(format!("walk length is capped at {MAX_LENGTH}"));
    }
    let cfg = SimConfig {
        seed: seed.into(),
        length: length as usize,
        ratio,
        ..SimConfig::default()
    };
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(simulate(&g.model, &g.initial, &cfg)
        .map_err(|e| e.to_string())?
        .demos())
}

fn learned(g: &Grounded, seed: u32, length: u32, ratio: f64) -> Result<Learner, String> {
    let demos = walk(g, seed, length, ratio)?;
    let mut learner = Learner::new(g.model.universe().clone(), g.model.action_names());
    learner.observe_all(&demos).map_err(|e| e.to_string())?;
    Ok(learner)
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializes")
}

/// Held-out scores on half of a walk with one failure per success. Failures
/// for training are drawn separately for each ratio.
pub fn curve(blocks: u32, seed: u32, length: u32, ratios: &[f64]) -> Result<String, String> {
    let g = instance(blocks)?;
    let demos = walk(&g, seed, length, 1.0)?;
    let (train, test) = split(&demos, 0.5, seed.into()).map_err(|e| e.to_string())?;
    let cfg = CurveConfig {
        ratios: ratios.to_vec(),
        seed: seed.into(),
        dedupe: false,
    };
    let points: Vec<CurvePoint> = learning_curve(&g.model, &train, &test, &cfg).map_err(|e| e.to_string())?;
    Ok(json(&points))
}

#[derive(Serialize)]
struct Row {
    action: String,
    pre_lower: Vec<String>,
    upper: usize,
    eff_lower: Vec<String>,
    eff_upper: Vec<String>,
    pre: ComponentStatus,
    eff: ComponentStatus,
    positives: u64,
    negatives: u64,
}

pub fn status(blocks: u32, seed: u32, length: u32, ratio: f64) -> Result<String, String> {
    let g = instance(blocks)?;
    let learner = learned(&g, seed, length, ratio)?;
    let u = learner.universe();
    let names = |s: Option<&amvs_core::LiteralSet>| s.map(|s| u.literal_names(s)).unwrap_or_default();
    let rows: Vec<Row> = learner
        .spaces()
        .iter()
        .map(|vs| {
            let st = vs.status();
            Row {
                action: vs.action().to_string(),
                pre_lower: names(vs.pre().lower()),
                upper: vs.pre().upper().len(),
                eff_lower: names(vs.eff().lower()),
                eff_upper: names(vs.eff().upper()),
                pre: st.pre,
                eff: st.eff,
                positives: vs.positives(),
                negatives: vs.negatives(),
            }
        })
        .collect();
    Ok(json(&rows))
}

#[derive(Serialize)]
struct PlanCheck {
    learned: String,
    truth: String,
}

/// Runs a plan from the bundled problem's initial state under the learned
/// sound model and under the true model. One action per line, `(stack a b)`
/// or `stack a b`.
pub fn check_plan(blocks: u32, seed: u32, length: u32, ratio: f64, plan: &str) -> Result<String, String> {
    let g = instance(blocks)?;
    let learner = learned(&g, seed, length, ratio)?;
    let sound = extract_sound(learner.universe(), learner.spaces()).map_err(|e| e.to_string())?;
    let mut steps = Vec::new();
    for line in plan.lines() {
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
        steps.push(
            g.model
                .action_id(&name)
                .map_err(|_| format!("unknown action `{name}`"))?,
        );
    }
    let query = PlanningQuery {
        initial: g.initial.clone(),
        goal: g.goal.clone(),
        plan: steps,
    };
    let verdict = |m| {
        validate_plan(m, &query)
            .map(|v| v.to_string())
            .map_err(|e| e.to_string())
    };
    Ok(json(&PlanCheck {
        learned: verdict(sound.model())?,
        truth: verdict(&g.model)?,
    }))
}

#[wasm_bindgen(js_name = learningCurve)]
pub fn learning_curve_js(blocks: u32, seed: u32, length: u32, ratios: Vec<f64>) -> Result<String, JsError> {
    curve(blocks, seed, length, &ratios).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = versionSpaces)]
pub fn version_spaces_js(blocks: u32, seed: u32, length: u32, ratio: f64) -> Result<String, JsError> {
    status(blocks, seed, length, ratio).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = checkPlan)]
pub fn check_plan_js(blocks: u32, seed: u32, length: u32, ratio: f64, plan: &str) -> Result<String, JsError> {
    check_plan(blocks, seed, length, ratio, plan).map_err(|e| JsError::new(&e))
}
