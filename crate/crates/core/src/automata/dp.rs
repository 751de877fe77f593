//! Counting tables built directly from the layer recursions, one power of `z`
//! at a time.
//!
//! These recurrences are written from the generating-function equations
//! rather than from [`transitions`](super::transitions), so agreement with the
//! DFS tables is a genuine cross-check.

use num_bigint::BigUint;
use num_traits::Zero;

use super::{Layer, ModelId};

type Cell = [BigUint; 3];

/// Exact counts indexed by `(steps, end level, end layer)`.
///
/// Row `n` covers levels `0..exact_levels(n)`. For the unit-rise models that
/// is `0..=n_max`. For `DapRl` the rows extend further so that every cell with
/// `level <= n_max` is exact; see [`count_dp`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    model: ModelId,
    n_max: usize,
    rows: Vec<Vec<Cell>>,
}

impl CountTable {
    pub(crate) fn zeroed(model: ModelId, n_max: usize, width: impl Fn(usize) -> usize) -> Self {
        let rows = (0..=n_max)
            .map(|n| vec![Cell::default(); width(n)])
            .collect();
        CountTable { model, n_max, rows }
    }

    pub(crate) fn bump(&mut self, n: usize, level: usize, layer: Layer) {
        self.rows[n][level][layer.index()] += 1u32;
    }

    pub fn model(&self) -> ModelId {
        self.model
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Number of levels stored (and exact) in row `n`.
    pub fn exact_levels(&self, n: usize) -> usize {
        self.rows.get(n).map_or(0, Vec::len)
    }

    /// The count, or `None` outside the stored region or for a layer the model lacks.
    pub fn get(&self, n: usize, level: usize, layer: Layer) -> Option<&BigUint> {
        if !self.model.has_layer(layer) {
            return None;
        }
        self.rows.get(n)?.get(level).map(|c| &c[layer.index()])
    }

    /// Sum over layers at `(n, level)`.
    pub fn level_total(&self, n: usize, level: usize) -> Option<BigUint> {
        self.rows
            .get(n)?
            .get(level)
            .map(|c| c.iter().fold(BigUint::zero(), |acc, x| acc + x))
    }

    /// First cell (n, level, layer) where the two tables differ, comparing
    /// levels `0..=n_max` of the smaller table.
    pub fn first_difference(&self, other: &CountTable) -> Option<(usize, usize, Layer)> {
        let n_max = self.n_max.min(other.n_max);
        for n in 0..=n_max {
            for level in 0..=n_max {
                for &layer in self.model.layers() {
                    if self.get(n, level, layer) != other.get(n, level, layer) {
                        return Some((n, level, layer));
                    }
                }
            }
        }
        None
    }
}

/// Builds the exact count table for `n <= n_max`.
pub fn count_dp(model: ModelId, n_max: usize) -> CountTable {
    match model {
        ModelId::DapLr => dap_lr(n_max),
        ModelId::DapRl => dap_rl(n_max),
        ModelId::SkewFig | ModelId::SkewSolved => skew(model, n_max),
    }
}

/// Suffix sums `out[k] = sum_{j > k} v[j]`.
fn strict_suffix_sums(v: &[BigUint]) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); v.len()];
    let mut acc = BigUint::zero();
    for k in (0..v.len()).rev() {
        out[k] = acc.clone();
        acc += &v[k];
    }
    out
}

/// `f_k = z f_{k-1} + z g_{k-1}`, `g_k = z (f_{k+1} + f_{k+2} + ...)`, `f_0 = 1` at `z^0`.
fn dap_lr(n_max: usize) -> CountTable {
    let width = n_max + 1;
    let mut f = vec![BigUint::zero(); width];
    let mut g = vec![BigUint::zero(); width];
    f[0] = BigUint::from(1u32);
    let mut table = CountTable::zeroed(ModelId::DapLr, n_max, |_| width);
    for n in 0..=n_max {
        if n > 0 {
            let tail = strict_suffix_sums(&f);
            let mut next_f = vec![BigUint::zero(); width];
            for k in 1..width {
                next_f[k] = &f[k - 1] + &g[k - 1];
            }
            g = tail;
            f = next_f;
        }
        for k in 0..width {
            table.rows[n][k][Layer::AfterUp.index()] = f[k].clone();
            table.rows[n][k][Layer::AfterDown.index()] = g[k].clone();
        }
    }
    table
}

/// `a_k = [k = 0] + z b_{k+1}`, `b_k = z b_{k+1} + z sum_{j<k} a_j`, where `b`
/// counts every nonempty path and `a` those ending with a down-step.
///
/// A level-`k` cell after `n` steps depends on level `k + 1` after `n - 1`
/// steps, so levels are tracked up to `2 n_max` and row `n` keeps the
/// `2 n_max - n + 2` levels that never touched the cut-off.
fn dap_rl(n_max: usize) -> CountTable {
    let cap = 2 * n_max;
    let width = cap + 1;
    let row_width = |n: usize| width.min(2 * n_max + 2 - n);
    let mut a = vec![BigUint::zero(); width];
    let mut b = vec![BigUint::zero(); width];
    a[0] = BigUint::from(1u32);
    let mut table = CountTable::zeroed(ModelId::DapRl, n_max, row_width);
    for n in 0..=n_max {
        if n > 0 {
            let mut next_a = vec![BigUint::zero(); width];
            let mut next_b = vec![BigUint::zero(); width];
            let mut below = BigUint::zero();
            for k in 0..width {
                let from_above = b.get(k + 1).cloned().unwrap_or_default();
                next_a[k] = from_above.clone();
                next_b[k] = from_above + &below;
                below += &a[k];
            }
            a = next_a;
            b = next_b;
        }
        for k in 0..row_width(n) {
            let empty = u32::from(n == 0 && k == 0);
            let cell = &mut table.rows[n][k];
            cell[Layer::AfterDown.index()] = a[k].clone();
            cell[Layer::AfterUp.index()] = &b[k] + empty - &a[k];
        }
    }
    table
}

/// `a_{k+1} = z a_k + z b_k`, `b_k = z sum_{j>k} (a_j + c_j)`, and
/// `c_k = z (b_{k+1} + c_{k+1})` for the figure model or
/// `c_k = z (b_{k-1} + c_{k-1})` for the solved model.
fn skew(model: ModelId, n_max: usize) -> CountTable {
    let width = n_max + 1;
    let zeros = || vec![BigUint::zero(); width];
    let (mut a, mut b, mut c) = (zeros(), zeros(), zeros());
    a[0] = BigUint::from(1u32);
    let mut table = CountTable::zeroed(model, n_max, |_| width);
    for n in 0..=n_max {
        if n > 0 {
            let (mut na, mut nc) = (zeros(), zeros());
            let ac: Vec<BigUint> = a.iter().zip(&c).map(|(x, y)| x + y).collect();
            let nb = strict_suffix_sums(&ac);
            for k in 0..width {
                if k + 1 < width {
                    na[k + 1] = &a[k] + &b[k];
                }
                let src = match model {
                    ModelId::SkewFig => Some(k + 1).filter(|&j| j < width),
                    _ => k.checked_sub(1),
                };
                if let Some(j) = src {
                    nc[k] = &b[j] + &c[j];
                }
            }
            a = na;
            b = nb;
            c = nc;
        }
        for k in 0..width {
            let cell = &mut table.rows[n][k];
            cell[Layer::AfterUp.index()] = a[k].clone();
            cell[Layer::AfterDown.index()] = b[k].clone();
            cell[Layer::AfterRed.index()] = c[k].clone();
        }
    }
    table
}
