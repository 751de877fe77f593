//! Exhaustive depth-first enumeration of path words.

use num_bigint::BigUint;

use super::dp::CountTable;
use super::{transitions, Layer, ModelId, PathWord, Step};

/// Visits every word of exactly `n` steps allowed by `bounds`.
///
/// `bounds(depth, level)` returns the highest level an upward step may reach
/// when it becomes step number `depth`, or `None` to prune the subtree
/// rooted at a state reached after `depth` steps.
fn walk<B, V>(model: ModelId, n: usize, bounds: &B, visit: &mut V)
where
    B: Fn(usize, usize) -> Option<usize>,
    V: FnMut(&[Step], usize, Layer),
{
    fn go<B, V>(
        model: ModelId,
        n: usize,
        bounds: &B,
        visit: &mut V,
        stack: &mut Vec<Step>,
        level: usize,
        layer: Layer,
    ) where
        B: Fn(usize, usize) -> Option<usize>,
        V: FnMut(&[Step], usize, Layer),
    {
        let depth = stack.len();
        let Some(cap) = bounds(depth, level) else {
            return;
        };
        if depth == n {
            visit(stack, level, layer);
            return;
        }
        let edges = transitions(model, level, layer, cap).expect("layers come from the model");
        for t in edges {
            stack.push(t.step);
            go(model, n, bounds, visit, stack, t.level, t.layer);
            stack.pop();
        }
    }
    let mut stack = Vec::with_capacity(n);
    go(model, n, bounds, visit, &mut stack, 0, model.start_layer());
}

/// Bounds that keep only prefixes able to end at `end_level` after `n` steps.
///
/// For `DapRl` every descent is a unit step, so after `depth` steps the level
/// can be at most `end_level + (n - depth)`. The other models climb one unit
/// at a time, so the level never exceeds `n` and must stay within reach of
/// `end_level` from below.
fn ending_bounds(model: ModelId, n: usize, end_level: usize) -> impl Fn(usize, usize) -> Option<usize> {
    move |depth, level| {
        let remaining = n - depth;
        if model.unbounded_rise() {
            let cap = end_level + remaining;
            (level <= cap).then(|| cap.saturating_sub(1))
        } else {
            (level + remaining >= end_level).then_some(n)
        }
    }
}

/// All `n`-step words whose levels never exceed `level_cap`.
pub fn enumerate(model: ModelId, n: usize, level_cap: usize) -> Vec<PathWord> {
    let mut out = Vec::new();
    walk(model, n, &|_, level| (level <= level_cap).then_some(level_cap), &mut |steps, _, _| {
        out.push(word(model, steps));
    });
    out
}

/// All `n`-step words ending at `end_level`.
pub fn enumerate_ending(model: ModelId, n: usize, end_level: usize) -> Vec<PathWord> {
    let mut out = Vec::new();
    walk(model, n, &ending_bounds(model, n, end_level), &mut |steps, level, _| {
        if level == end_level {
            out.push(word(model, steps));
        }
    });
    out
}

/// Number of `n`-step words ending at `end_level`, optionally in a given layer.
pub fn count_dfs(model: ModelId, n: usize, end_level: usize, layer: Option<Layer>) -> BigUint {
    let mut count: u64 = 0;
    walk(model, n, &ending_bounds(model, n, end_level), &mut |_, level, end| {
        if level == end_level && layer.map_or(true, |l| l == end) {
            count += 1;
        }
    });
    BigUint::from(count)
}

/// Tallies DFS counts into a table covering `n <= n_max`, `level <= n_max`.
pub fn dfs_table(model: ModelId, n_max: usize) -> CountTable {
    let mut table = CountTable::zeroed(model, n_max, |_| n_max + 1);
    for n in 0..=n_max {
        if model.unbounded_rise() {
            for end_level in 0..=n_max {
                walk(model, n, &ending_bounds(model, n, end_level), &mut |_, level, layer| {
                    if level == end_level {
                        table.bump(n, level, layer);
                    }
                });
            }
        } else {
            walk(model, n, &|_, _| Some(n), &mut |_, level, layer| {
                table.bump(n, level, layer);
            });
        }
    }
    table
}

fn word(model: ModelId, steps: &[Step]) -> PathWord {
    PathWord::new(model, steps.to_vec()).expect("transitions only produce valid words")
}
