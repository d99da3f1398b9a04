//! Precision/recall scoring and learning curves.

mod oracle;

use std::fmt;
use std::io::Write;

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extract::{extract_complete, extract_sound, Classifier, Label};
use crate::model::{Demonstration, GroundModel};
use crate::sim::{negative_count, sample_negatives, stream_rng, visited_states, SimConfig};
use crate::vspace::Learner;

pub use oracle::{oracle_consistent_models, Hypothesis, ORACLE_MAX_FLUENTS};

/// Confusion counts with derived metrics.
///
/// Empty denominators give precision or recall 1; f1 is 0 when both are 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Score {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub tn: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl Score {
    pub fn from_counts(tp: usize, fp: usize, fn_: usize, tn: usize) -> Self {
        let ratio = |num: usize, den: usize| if den == 0 { 1.0 } else { num as f64 / den as f64 };
        let precision = ratio(tp, tp + fp);
        let recall = ratio(tp, tp + fn_);
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        Self {
            tp,
            fp,
            fn_,
            tn,
            precision,
            recall,
            f1,
        }
    }
}

/// Labels each demonstration with `model`; a demonstration with a
/// post-state is a true positive, a failure a true negative.
pub fn score<C: Classifier + ?Sized>(model: &C, test: &[Demonstration]) -> Result<Score> {
    let (mut tp, mut fp, mut fn_, mut tn) = (0, 0, 0, 0);
    for (i, demo) in test.iter().enumerate() {
        let label = model.label(demo).map_err(|e| Error::at(i, e))?;
        match (demo.is_positive(), label) {
            (true, Label::Positive) => tp += 1,
            (true, Label::Negative) => fn_ += 1,
            (false, Label::Positive) => fp += 1,
            (false, Label::Negative) => tn += 1,
        }
    }
    Ok(Score::from_counts(tp, fp, fn_, tn))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum ModelKind {
    Sound,
    Complete,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Sound => "SOUND",
            ModelKind::Complete => "COMPLETE",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PointStatus {
    Ok,
    /// A space collapsed, so this model could not be extracted.
    Collapsed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub ratio: f64,
    pub positives: usize,
    pub negatives: usize,
    pub kind: ModelKind,
    pub score: Option<Score>,
    pub status: PointStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CurveConfig {
    pub ratios: Vec<f64>,
    pub seed: u64,
    pub dedupe: bool,
}

impl Default for CurveConfig {
    fn default() -> Self {
        Self {
            ratios: vec![0.0, 0.5, 1.0, 2.0, 5.0],
            seed: 0,
            dedupe: false,
        }
    }
}

fn is_collapse(e: &Error) -> bool {
    matches!(
        e.root(),
        Error::UpdateAfterCollapse { .. }
            | Error::NegativeWithEmptyLower { .. }
            | Error::CollapsedSpace { .. }
    )
}

fn point<C: Classifier>(
    extracted: Result<C>,
    test: &[Demonstration],
) -> Result<(Option<Score>, PointStatus)> {
    match extracted {
        Ok(model) => Ok((Some(score(&model, test)?), PointStatus::Ok)),
        Err(e) if is_collapse(&e) => Ok((None, PointStatus::Collapsed)),
        Err(e) => Err(e),
    }
}

/// Learns from growing prefixes of `train` and scores both extracted models on
/// `test` after each positive.
///
/// For each ratio `r` failures are drawn from the states visited by `train`
/// with a seed derived from `cfg.seed` and the ratio's position; after the
/// `i`-th positive the learner has also consumed `ceil(r · i)` of them. Points
/// are emitted before any training and after every positive. Negative
/// demonstrations inside `train` are ignored.
pub fn learning_curve(
    truth: &GroundModel,
    train: &[Demonstration],
    test: &[Demonstration],
    cfg: &CurveConfig,
) -> Result<Vec<CurvePoint>> {
    let positives: Vec<Demonstration> = train.iter().filter(|d| d.is_positive()).cloned().collect();
    let visited = visited_states(&positives);
    let universe = truth.universe();
    let mut out = Vec::new();
    for (k, &ratio) in cfg.ratios.iter().enumerate() {
        let sim = SimConfig {
            seed: stream_rng(cfg.seed, k as u64).next_u64(),
            ratio,
            dedupe: cfg.dedupe,
            ..SimConfig::default()
        };
        let negatives = sample_negatives(truth, &visited, positives.len(), &sim)?.demos;
        let mut learner = Learner::new(universe.clone(), truth.action_names());
        let mut consumed = 0;
        let mut stuck = false;
        for i in 0..=positives.len() {
            if i > 0 && !stuck {
                let want = negative_count(ratio, i).min(negatives.len());
                let step = std::iter::once(&positives[i - 1]).chain(&negatives[consumed..want]);
                match learner.observe_all(step) {
                    Ok(()) => consumed = want,
                    Err(e) if is_collapse(&e) => stuck = true,
                    Err(e) => return Err(e),
                }
            }
            let (sound, complete) = if stuck {
                ((None, PointStatus::Collapsed), (None, PointStatus::Collapsed))
            } else {
                (
                    point(extract_sound(universe, learner.spaces()), test)?,
                    point(extract_complete(universe, learner.spaces()), test)?,
                )
            };
            for (kind, (score, status)) in [(ModelKind::Sound, sound), (ModelKind::Complete, complete)] {
                out.push(CurvePoint {
                    ratio,
                    positives: i,
                    negatives: consumed,
                    kind,
                    score,
                    status,
                });
            }
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct CsvRow {
    ratio: f64,
    positives: usize,
    negatives: usize,
    model: ModelKind,
    tp: Option<usize>,
    fp: Option<usize>,
    #[serde(rename = "fn")]
    fn_: Option<usize>,
    tn: Option<usize>,
    precision: Option<f64>,
    recall: Option<f64>,
    f1: Option<f64>,
    status: PointStatus,
}

pub const CSV_HEADER: &str = "ratio,positives,negatives,model,tp,fp,fn,tn,precision,recall,f1,status";

/// Writes one row per point under a mandatory header; collapsed points
/// leave the metric columns empty.
pub fn write_curve_csv<W: Write>(writer: W, points: &[CurvePoint]) -> std::io::Result<()> {
    let mut csv = csv::WriterBuilder::new().has_headers(false).from_writer(writer);
    csv.write_record(CSV_HEADER.split(','))?;
    for p in points {
        let s = p.score;
        csv.serialize(CsvRow {
            ratio: p.ratio,
            positives: p.positives,
            negatives: p.negatives,
            model: p.kind,
            tp: s.map(|s| s.tp),
            fp: s.map(|s| s.fp),
            fn_: s.map(|s| s.fn_),
            tn: s.map(|s| s.tn),
            precision: s.map(|s| s.precision),
            recall: s.map(|s| s.recall),
            f1: s.map(|s| s.f1),
            status: p.status,
        })?;
    }
    csv.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::literal::{FluentUniverse, State};
    use crate::model::GroundAction;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn arithmetic() {
        let s = Score::from_counts(3, 1, 2, 4);
        assert!(close(s.precision, 0.75));
        assert!(close(s.recall, 0.6));
        assert!(close(s.f1, 2.0 * 0.75 * 0.6 / 1.35));
    }

    #[test]
    fn degenerate_conventions() {
        let s = Score::from_counts(0, 0, 0, 5);
        assert_eq!((s.precision, s.recall, s.f1), (1.0, 1.0, 1.0));
        let s = Score::from_counts(0, 2, 3, 0);
        assert_eq!((s.precision, s.recall, s.f1), (0.0, 0.0, 0.0));
        let s = Score::from_counts(0, 0, 3, 0);
        assert_eq!((s.precision, s.recall, s.f1), (1.0, 0.0, 0.0));
    }

    fn toggle() -> GroundModel {
        let u = FluentUniverse::new(["p", "q"]).unwrap();
        let set = |l: &[&str]| u.literal_set(l.iter().copied()).unwrap();
        GroundModel::new(
            u.clone(),
            vec![
                GroundAction {
                    name: "on".into(),
                    pre: set(&["!p"]),
                    eff: set(&["p"]),
                },
                GroundAction {
                    name: "off".into(),
                    pre: set(&["p"]),
                    eff: set(&["!p", "q"]),
                },
            ],
        )
        .unwrap()
    }

    fn exhaustive(m: &GroundModel) -> Vec<Demonstration> {
        let n = m.universe().len();
        let mut out = Vec::new();
        for code in 0..1u64 << n {
            let s = State::from_code(n, code);
            for a in 0..m.actions().len() {
                out.push(match m.apply(&s, a).unwrap() {
                    Some(next) => Demonstration::positive(s.clone(), a, next),
                    None => Demonstration::negative(s.clone(), a),
                });
            }
        }
        out
    }

    #[test]
    fn true_model_scores_perfectly() {
        let m = toggle();
        let s = score(&m, &exhaustive(&m)).unwrap();
        assert_eq!(s.fp + s.fn_, 0);
        assert_eq!(s.f1, 1.0);
    }

    #[test]
    fn curve_starts_at_init_and_ends_converged() {
        let m = toggle();
        let all = exhaustive(&m);
        let positives: Vec<_> = all.iter().filter(|d| d.is_positive()).cloned().collect();
        let cfg = CurveConfig {
            ratios: vec![0.0, 1.0],
            ..CurveConfig::default()
        };
        let points = learning_curve(&m, &positives, &all, &cfg).unwrap();
        assert_eq!(points.len(), 2 * 2 * (positives.len() + 1));
        let first_sound = points[0].score.unwrap();
        let first_complete = points[1].score.unwrap();
        assert_eq!((first_sound.tp, first_sound.recall), (0, 0.0));
        assert_eq!((first_complete.fn_, first_complete.recall), (0, 1.0));
        for p in &points {
            let s = p.score.unwrap();
            match p.kind {
                ModelKind::Sound => assert_eq!(s.fp, 0),
                ModelKind::Complete => assert_eq!(s.fn_, 0),
            }
        }
        let last = &points[points.len() - 2..];
        // positives alone leave a negative precondition undetermined at r = 0,
        // but r = 1 has seen failures too
        assert!(last.iter().all(|p| p.ratio == 1.0));
        assert_eq!(last[0].score.unwrap().f1, 1.0);
    }

    #[test]
    fn csv_layout() {
        let points = vec![
            CurvePoint {
                ratio: 0.5,
                positives: 1,
                negatives: 1,
                kind: ModelKind::Sound,
                score: Some(Score::from_counts(3, 1, 2, 4)),
                status: PointStatus::Ok,
            },
            CurvePoint {
                ratio: 0.5,
                positives: 2,
                negatives: 1,
                kind: ModelKind::Complete,
                score: None,
                status: PointStatus::Collapsed,
            },
        ];
        let mut buf = Vec::new();
        write_curve_csv(&mut buf, &points).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], "0.5,1,1,SOUND,3,1,2,4,0.75,0.6,0.6666666666666665,OK");
        assert_eq!(lines[2], "0.5,2,1,COMPLETE,,,,,,,,COLLAPSED");
    }
}
