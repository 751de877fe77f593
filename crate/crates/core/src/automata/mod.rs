//! Step-level path models.
//!
//! Four automata are modelled. Each state is a `(level, layer)` pair where the
//! layer records the kind of the last step taken:
//!
//! | model         | up          | down                | red        |
//! |---------------|-------------|---------------------|------------|
//! | `DapLr`       | unit        | giant, not twice    | -          |
//! | `DapRl`       | any rise, not twice | unit        | -          |
//! | `SkewFig`     | unit        | giant               | level - 1  |
//! | `SkewSolved`  | unit        | giant               | level + 1  |
//!
//! In both skew models an up-step may not follow a red step, a giant down-step
//! may not follow another, and a red step only follows a down or red step.

mod dfs;
mod dp;
mod sample;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use dfs::{count_dfs, dfs_table, enumerate, enumerate_ending};
pub use dp::{count_dp, CountTable};
pub use sample::{sample_uniform, Sampler};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("layer {layer} does not exist in model {model}")]
    UnknownLayer { model: ModelId, layer: Layer },
    #[error("invalid {model} word at step {position}: {reason}")]
    InvalidWord {
        model: ModelId,
        position: usize,
        reason: &'static str,
    },
    #[error("cannot parse {0:?} as a path word")]
    Parse(String),
    #[error("unknown model {0:?} (expected dap-lr, dap-rl, skew-fig or skew-solved)")]
    UnknownModel(String),
    #[error("no {model} path has {n} steps and ends at level {end_level}")]
    EmptySupport {
        model: ModelId,
        n: usize,
        end_level: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelId {
    /// Dyck paths with air pockets read left to right.
    DapLr,
    /// The same paths read right to left: long up-steps, unit down-steps.
    DapRl,
    /// Skew variant with red steps going down, as drawn in the layer figure.
    SkewFig,
    /// Skew variant with red steps going up, as in the solved functional equations.
    SkewSolved,
}

impl ModelId {
    pub const ALL: [ModelId; 4] = [
        ModelId::DapLr,
        ModelId::DapRl,
        ModelId::SkewFig,
        ModelId::SkewSolved,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelId::DapLr => "dap-lr",
            ModelId::DapRl => "dap-rl",
            ModelId::SkewFig => "skew-fig",
            ModelId::SkewSolved => "skew-solved",
        }
    }

    pub fn layers(self) -> &'static [Layer] {
        match self {
            ModelId::DapLr => &[Layer::AfterUp, Layer::AfterDown],
            ModelId::DapRl => &[Layer::AfterDown, Layer::AfterUp],
            ModelId::SkewFig | ModelId::SkewSolved => {
                &[Layer::AfterUp, Layer::AfterDown, Layer::AfterRed]
            }
        }
    }

    /// Layer holding the empty path.
    pub fn start_layer(self) -> Layer {
        match self {
            ModelId::DapRl => Layer::AfterDown,
            _ => Layer::AfterUp,
        }
    }

    pub fn has_layer(self, layer: Layer) -> bool {
        self.layers().contains(&layer)
    }

    /// Up-steps of arbitrary rise make the set of n-step words infinite
    /// unless a level cap is given.
    pub fn unbounded_rise(self) -> bool {
        self == ModelId::DapRl
    }

    pub fn is_skew(self) -> bool {
        matches!(self, ModelId::SkewFig | ModelId::SkewSolved)
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelId {
    type Err = AutomatonError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ModelId::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| AutomatonError::UnknownModel(s.to_owned()))
    }
}

/// Kind of the last step. For the skew models these are the `A`, `B` and `C`
/// layers; for `DapLr` the `f` and `g` families; for `DapRl` the empty path
/// sits in `AfterDown`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Layer {
    AfterUp,
    AfterDown,
    AfterRed,
}

impl Layer {
    pub(crate) fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Layer::AfterUp => "after-up",
            Layer::AfterDown => "after-down",
            Layer::AfterRed => "after-red",
        }
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Up(usize),
    GiantDown(usize),
    Red,
}

impl Step {
    fn layer(self) -> Layer {
        match self {
            Step::Up(_) => Layer::AfterUp,
            Step::GiantDown(_) => Layer::AfterDown,
            Step::Red => Layer::AfterRed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub step: Step,
    pub level: usize,
    pub layer: Layer,
}

impl Transition {
    fn new(step: Step, level: usize) -> Self {
        Transition {
            step,
            level,
            layer: step.layer(),
        }
    }
}

/// All edges leaving `(level, layer)`, ordered by step kind then by size.
///
/// `level_cap` bounds the level reached by upward moves; downward moves stop
/// at level 0.
pub fn transitions(
    model: ModelId,
    level: usize,
    layer: Layer,
    level_cap: usize,
) -> Result<Vec<Transition>, AutomatonError> {
    if !model.has_layer(layer) {
        return Err(AutomatonError::UnknownLayer { model, layer });
    }
    let mut out = Vec::new();
    let unit_up = |out: &mut Vec<Transition>| {
        if level < level_cap {
            out.push(Transition::new(Step::Up(1), level + 1));
        }
    };
    let giant_downs = |out: &mut Vec<Transition>| {
        out.extend((1..=level).map(|j| Transition::new(Step::GiantDown(j), level - j)));
    };
    match (model, layer) {
        (ModelId::DapLr, Layer::AfterUp) => {
            unit_up(&mut out);
            giant_downs(&mut out);
        }
        (ModelId::DapLr, _) => unit_up(&mut out),
        (ModelId::DapRl, Layer::AfterDown) => {
            out.extend(
                (level + 1..=level_cap).map(|to| Transition::new(Step::Up(to - level), to)),
            );
            if level > 0 {
                out.push(Transition::new(Step::GiantDown(1), level - 1));
            }
        }
        (ModelId::DapRl, _) => {
            if level > 0 {
                out.push(Transition::new(Step::GiantDown(1), level - 1));
            }
        }
        (_, Layer::AfterUp) => {
            unit_up(&mut out);
            giant_downs(&mut out);
        }
        (_, Layer::AfterDown) => {
            unit_up(&mut out);
            red_step(model, level, level_cap, &mut out);
        }
        (_, Layer::AfterRed) => {
            giant_downs(&mut out);
            red_step(model, level, level_cap, &mut out);
        }
    }
    Ok(out)
}

fn red_step(model: ModelId, level: usize, level_cap: usize, out: &mut Vec<Transition>) {
    match model {
        ModelId::SkewFig if level > 0 => out.push(Transition::new(Step::Red, level - 1)),
        ModelId::SkewSolved if level < level_cap => {
            out.push(Transition::new(Step::Red, level + 1))
        }
        _ => {}
    }
}

/// A validated sequence of steps of one model.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PathWord {
    model: ModelId,
    steps: Vec<Step>,
    end_level: usize,
    end_layer: Layer,
}

impl PathWord {
    /// Checks the word against the model's step alphabet, the nonnegativity
    /// constraint and the adjacency rules.
    ///
    /// This does not go through [`transitions`]; it restates the rules directly.
    pub fn new(model: ModelId, steps: Vec<Step>) -> Result<Self, AutomatonError> {
        let bad = |position, reason| AutomatonError::InvalidWord {
            model,
            position,
            reason,
        };
        let mut level: i64 = 0;
        let mut prev: Option<Step> = None;
        for (i, &step) in steps.iter().enumerate() {
            match (model, step) {
                (_, Step::Up(0) | Step::GiantDown(0)) => return Err(bad(i, "zero-size step")),
                (ModelId::DapRl, Step::GiantDown(d)) if d != 1 => {
                    return Err(bad(i, "down-steps are unit in this model"))
                }
                (ModelId::DapRl, _) => {}
                (_, Step::Up(r)) if r != 1 => return Err(bad(i, "up-steps are unit in this model")),
                (ModelId::DapLr, Step::Red) => return Err(bad(i, "no red steps in this model")),
                _ => {}
            }
            let allowed = match (model, step) {
                (ModelId::DapLr, Step::GiantDown(_)) => !matches!(prev, Some(Step::GiantDown(_))),
                (ModelId::DapLr, _) => true,
                (ModelId::DapRl, Step::Up(_)) => !matches!(prev, Some(Step::Up(_))),
                (ModelId::DapRl, _) => true,
                (_, Step::Up(_)) => !matches!(prev, Some(Step::Red)),
                (_, Step::GiantDown(_)) => !matches!(prev, Some(Step::GiantDown(_))),
                (_, Step::Red) => matches!(prev, Some(Step::GiantDown(_) | Step::Red)),
            };
            if !allowed {
                return Err(bad(i, "step may not follow the previous one"));
            }
            level += match step {
                Step::Up(r) => r as i64,
                Step::GiantDown(d) => -(d as i64),
                Step::Red if model == ModelId::SkewFig => -1,
                Step::Red => 1,
            };
            if level < 0 {
                return Err(bad(i, "path drops below level 0"));
            }
            prev = Some(step);
        }
        Ok(PathWord {
            model,
            end_layer: prev.map_or(model.start_layer(), Step::layer),
            end_level: level as usize,
            steps,
        })
    }

    /// Parses the text rendering produced by `Display`.
    pub fn parse(model: ModelId, text: &str) -> Result<Self, AutomatonError> {
        let fail = || AutomatonError::Parse(text.to_owned());
        let text = text.trim();
        let mut steps = Vec::new();
        if text != EMPTY_WORD {
            let mut chars = text.chars().peekable();
            while let Some(c) = chars.next() {
                let mut digits = String::new();
                while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                    digits.push(*d);
                    chars.next();
                }
                let size = if digits.is_empty() {
                    1
                } else {
                    digits.parse().map_err(|_| fail())?
                };
                steps.push(match c {
                    'U' => Step::Up(size),
                    'D' => Step::GiantDown(size),
                    'R' if digits.is_empty() => Step::Red,
                    _ => return Err(fail()),
                });
            }
        }
        PathWord::new(model, steps)
    }

    pub fn model(&self) -> ModelId {
        self.model
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end_level(&self) -> usize {
        self.end_level
    }

    pub fn end_layer(&self) -> Layer {
        self.end_layer
    }
}

const EMPTY_WORD: &str = "ε";

/// `U`, `D<j>`, `R` tokens; sizes are written only where the model lets them vary.
impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return f.write_str(EMPTY_WORD);
        }
        let rl = self.model == ModelId::DapRl;
        for step in &self.steps {
            match *step {
                Step::Up(r) if rl => write!(f, "U{r}")?,
                Step::Up(_) => f.write_str("U")?,
                Step::GiantDown(_) if rl => f.write_str("D")?,
                Step::GiantDown(d) => write!(f, "D{d}")?,
                Step::Red => f.write_str("R")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edges(model: ModelId, level: usize, layer: Layer, cap: usize) -> Vec<(Step, usize, Layer)> {
        transitions(model, level, layer, cap)
            .unwrap()
            .into_iter()
            .map(|t| (t.step, t.level, t.layer))
            .collect()
    }

    #[test]
    fn dap_lr_edges() {
        assert_eq!(
            edges(ModelId::DapLr, 2, Layer::AfterDown, 10),
            [(Step::Up(1), 3, Layer::AfterUp)]
        );
        assert_eq!(
            edges(ModelId::DapLr, 2, Layer::AfterUp, 10),
            [
                (Step::Up(1), 3, Layer::AfterUp),
                (Step::GiantDown(1), 1, Layer::AfterDown),
                (Step::GiantDown(2), 0, Layer::AfterDown),
            ]
        );
    }

    #[test]
    fn skew_fig_edges() {
        assert_eq!(
            edges(ModelId::SkewFig, 1, Layer::AfterDown, 10),
            [(Step::Up(1), 2, Layer::AfterUp), (Step::Red, 0, Layer::AfterRed)]
        );
        assert_eq!(
            edges(ModelId::SkewSolved, 1, Layer::AfterDown, 10),
            [(Step::Up(1), 2, Layer::AfterUp), (Step::Red, 2, Layer::AfterRed)]
        );
        assert!(edges(ModelId::SkewFig, 0, Layer::AfterRed, 10).is_empty());
    }

    #[test]
    fn dap_rl_edges_respect_cap() {
        let e = edges(ModelId::DapRl, 1, Layer::AfterDown, 4);
        assert_eq!(
            e,
            [
                (Step::Up(1), 2, Layer::AfterUp),
                (Step::Up(2), 3, Layer::AfterUp),
                (Step::Up(3), 4, Layer::AfterUp),
                (Step::GiantDown(1), 0, Layer::AfterDown),
            ]
        );
        assert_eq!(
            edges(ModelId::DapRl, 0, Layer::AfterUp, 4),
            Vec::<(Step, usize, Layer)>::new()
        );
    }

    #[test]
    fn unknown_layer_is_rejected() {
        assert_eq!(
            transitions(ModelId::DapLr, 0, Layer::AfterRed, 3),
            Err(AutomatonError::UnknownLayer {
                model: ModelId::DapLr,
                layer: Layer::AfterRed
            })
        );
    }

    #[test]
    fn word_validation() {
        let ok = PathWord::parse(ModelId::DapLr, "UUD1U").unwrap();
        assert_eq!((ok.end_level(), ok.end_layer()), (2, Layer::AfterUp));
        assert!(PathWord::parse(ModelId::DapLr, "UUD1D1").is_err());
        assert!(PathWord::parse(ModelId::DapLr, "UD2").is_err());
        assert!(PathWord::parse(ModelId::DapRl, "U2U1").is_err());
        assert!(PathWord::parse(ModelId::DapRl, "U2DD").is_ok());
        assert!(PathWord::parse(ModelId::SkewFig, "UUD1RU").is_err());
        assert!(PathWord::parse(ModelId::SkewFig, "UR").is_err());
        assert!(PathWord::parse(ModelId::SkewFig, "UD1R").is_err());
        assert!(PathWord::parse(ModelId::SkewSolved, "UD1R").is_ok());
        assert!(PathWord::parse(ModelId::SkewSolved, "UD1RR").is_ok());
        assert!(PathWord::parse(ModelId::SkewSolved, "UUD1RD2").is_ok());
        assert!(PathWord::parse(ModelId::SkewSolved, "UD1RD1D1").is_err());
        assert!(PathWord::parse(ModelId::DapLr, "UX").is_err());
    }

    #[test]
    fn empty_word_layers() {
        for model in ModelId::ALL {
            let w = PathWord::parse(model, "ε").unwrap();
            assert!(w.is_empty());
            assert_eq!(w.end_layer(), model.start_layer());
            assert_eq!(w.to_string(), "ε");
        }
    }

    #[test]
    fn display_round_trips() {
        for (model, text) in [
            (ModelId::DapLr, "UUD2UD1"),
            (ModelId::DapRl, "U1DU3DD"),
            (ModelId::SkewFig, "UUUD2R"),
        ] {
            assert_eq!(PathWord::parse(model, text).unwrap().to_string(), text);
        }
    }

    #[test]
    fn model_names() {
        for m in ModelId::ALL {
            assert_eq!(m.name().parse::<ModelId>().unwrap(), m);
        }
        assert!("dap".parse::<ModelId>().is_err());
    }
}
