//! The cross-check matrix: closed forms against each other, against the
//! embedded reference series, and against both counting oracles.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use serde::Serialize;
use serde_json::{json, Value};

use crate::automata::{count_dfs, count_dp, dfs_table, CountTable, Layer, ModelId};
use crate::kernel::{self, KernelFamily};
use crate::reference::{self, ReferenceSeries};
use crate::series::SeriesError;
use crate::{Rational, Series};

/// Order at which the kernel residuals are always checked.
pub const RESIDUAL_ORDER: usize = 50;
/// Largest `k` in the Theorem-style identity sweeps.
pub const IDENTITY_MAX_K: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub order: usize,
    pub n_max: usize,
    /// Test hook: replace `s2` by `s2 + z` in the kernel-residual checks.
    pub corrupt_s2: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            order: 30,
            n_max: 12,
            corrupt_s2: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// First cell where an expected value and the computed one disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub layer: Option<String>,
    pub expected: String,
    pub got: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}", self.n)?;
        if let Some(k) = self.k {
            write!(f, " k={k}")?;
        }
        if let Some(layer) = &self.layer {
            write!(f, " layer={layer}")?;
        }
        write!(f, " expected={} got={}", self.expected, self.got)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub parameters: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Mismatch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Which skew automaton the closed forms count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum SkewResolution {
    Fig,
    Solved,
    Both,
    Neither,
}

impl SkewResolution {
    fn from_matches(fig: bool, solved: bool) -> Self {
        match (fig, solved) {
            (true, true) => SkewResolution::Both,
            (true, false) => SkewResolution::Fig,
            (false, true) => SkewResolution::Solved,
            (false, false) => SkewResolution::Neither,
        }
    }

    /// The automaton whose counts stand in for the closed forms, if any.
    pub fn model(self) -> Option<ModelId> {
        match self {
            SkewResolution::Fig => Some(ModelId::SkewFig),
            SkewResolution::Solved | SkewResolution::Both => Some(ModelId::SkewSolved),
            SkewResolution::Neither => None,
        }
    }
}

impl fmt::Display for SkewResolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SkewResolution::Fig => "FIG",
            SkewResolution::Solved => "SOLVED",
            SkewResolution::Both => "BOTH",
            SkewResolution::Neither => "NEITHER",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub config: Value,
    pub checks: Vec<Check>,
    pub skew_resolution: SkewResolution,
}

impl VerifyReport {
    pub fn success(&self) -> bool {
        self.checks.iter().all(Check::passed) && self.skew_resolution != SkewResolution::Neither
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}

type Outcome = Result<Option<Mismatch>, String>;

fn int(q: &Rational) -> BigInt {
    q.to_integer()
}

fn mismatch(n: usize, k: Option<usize>, layer: Option<Layer>, expected: impl ToString, got: impl ToString) -> Mismatch {
    Mismatch {
        n,
        k,
        layer: layer.map(|l| l.name().to_owned()),
        expected: expected.to_string(),
        got: got.to_string(),
    }
}

/// Compares two series up to their common order.
fn compare(k: Option<usize>, expected: &Series, got: &Series) -> Option<Mismatch> {
    expected
        .coeffs()
        .iter()
        .zip(got.coeffs())
        .position(|(a, b)| a != b)
        .map(|n| mismatch(n, k, None, expected.coeffs()[n].clone(), got.coeffs()[n].clone()))
}

fn compare_zero(series: &Series) -> Option<Mismatch> {
    series
        .coeffs()
        .iter()
        .position(|c| *c != Rational::from_integer(0.into()))
        .map(|n| mismatch(n, None, None, 0, series.coeffs()[n].clone()))
}

fn compare_reference(reference: &ReferenceSeries, got: &Series) -> Option<Mismatch> {
    reference
        .coeffs_iter()
        .enumerate()
        .find(|(n, want)| got.coeffs().get(*n).map(int) != Some(want.clone()))
        .map(|(n, want)| {
            let got = got.coeffs().get(n).map_or("missing".to_owned(), ToString::to_string);
            mismatch(n, Some(0), None, want, got)
        })
}

impl ReferenceSeries {
    fn coeffs_iter(&self) -> impl Iterator<Item = BigInt> + '_ {
        self.coefficients.iter().map(|&c| BigInt::from(c))
    }
}

/// Compares a closed-form coefficient with a table cell (or a layer sum).
fn compare_cell(n: usize, k: usize, layer: Option<Layer>, closed: &BigInt, counted: Option<BigUint>) -> Option<Mismatch> {
    let counted = counted.map(BigInt::from);
    (counted.as_ref() != Some(closed)).then(|| {
        mismatch(
            n,
            Some(k),
            layer,
            closed,
            counted.map_or("outside table".to_owned(), |c| c.to_string()),
        )
    })
}

fn err(e: SeriesError) -> String {
    e.to_string()
}

/// Runs the check matrix and the skew adjudication.
pub fn run(config: &VerifyConfig) -> VerifyReport {
    let VerifyConfig { order, n_max, .. } = *config;
    let mut checks = Vec::new();
    let mut push = |id: &str, parameters: Value, outcome: Outcome, note: Option<String>| {
        let (status, detail, note) = match outcome {
            Ok(None) => (Status::Pass, None, note),
            Ok(Some(m)) => (Status::Fail, Some(m), note),
            Err(e) => (Status::Fail, None, Some(e)),
        };
        checks.push(Check {
            id: id.to_owned(),
            parameters,
            status,
            detail,
            note,
        });
    };

    let ref_order = order.max(reference::DAP_LEVEL0.last_printed());
    push(
        "reference/dap-level0",
        json!({ "terms": reference::DAP_LEVEL0.coefficients.len() }),
        kernel::dap_level::<Rational>(0, ref_order)
            .map(|s| compare_reference(&reference::DAP_LEVEL0, &s))
            .map_err(err),
        Some("published terms through z^11".into()),
    );
    push(
        "reference/skew-level0",
        json!({ "terms": reference::SKEW_LEVEL0.coefficients.len() }),
        kernel::skew_level::<Rational>(0, ref_order)
            .map(|s| compare_reference(&reference::SKEW_LEVEL0, &s))
            .map_err(err),
        Some("published terms through z^11".into()),
    );

    push("theorem1/level-sum", json!({ "order": order, "k_max": IDENTITY_MAX_K }), level_sum(order), None);
    push("theorem1/g-from-f", json!({ "order": order, "k_max": IDENTITY_MAX_K }), g_from_f(order), None);
    push("total/g0-shift", json!({ "order": order }), total_shift(order), None);
    push("theorem2/b0", json!({ "order": order }), theorem2_b0(order), None);

    let residual_order = order.max(RESIDUAL_ORDER);
    for family in KernelFamily::ALL {
        push(
            &format!("kernel/residual-{family}"),
            json!({ "order": residual_order, "corrupted": config.corrupt_s2 }),
            residual(family, residual_order, config.corrupt_s2),
            None,
        );
        push(
            &format!("kernel/reciprocal-root-{family}"),
            json!({ "order": residual_order }),
            kernel::reciprocal_root_residual::<Rational>(family, residual_order)
                .map(|r| compare_zero(&r))
                .map_err(err),
            Some("s1 = 1/(z s2) is the second root".into()),
        );
    }
    push("skew/a1-minus-c1", json!({ "order": order }), a1_minus_c1(order), None);

    let dp: Vec<CountTable> = ModelId::ALL.iter().map(|&m| count_dp(m, n_max)).collect();
    for (model, dp_table) in ModelId::ALL.iter().zip(&dp) {
        let dfs = dfs_table(*model, n_max);
        let outcome = dfs.first_difference(dp_table).map(|(n, k, layer)| {
            let show = |t: &CountTable| t.get(n, k, layer).map_or("-".to_owned(), ToString::to_string);
            mismatch(n, Some(k), Some(layer), show(dp_table), show(&dfs))
        });
        push(
            &format!("oracle/dfs-vs-dp/{model}"),
            json!({ "n_max": n_max }),
            Ok(outcome),
            Some("expected = dp, got = dfs".into()),
        );
    }
    let table = |m: ModelId| &dp[ModelId::ALL.iter().position(|&x| x == m).unwrap()];

    push("closed-form/dap-lr", json!({ "n_max": n_max }), dap_lr_vs_table(table(ModelId::DapLr)), None);
    push("closed-form/dap-rl", json!({ "n_max": n_max }), dap_rl_vs_table(table(ModelId::DapRl)), None);

    push(
        "cross-reading/complete-paths",
        json!({ "n_min": 1, "n_max": n_max }),
        Ok((1..=n_max).find_map(|n| {
            let lr = count_dfs(ModelId::DapLr, n, 0, None);
            let rl = count_dfs(ModelId::DapRl, n, 0, None);
            (lr != rl).then(|| mismatch(n, Some(0), None, lr, rl))
        })),
        Some("expected = dap-lr, got = dap-rl".into()),
    );

    push(
        "desk/skew-counts",
        json!({ "cases": "skew-fig n=4,5; skew-solved n=4,5; level 0" }),
        Ok([
            (ModelId::SkewFig, 4, 3u32),
            (ModelId::SkewSolved, 4, 3),
            (ModelId::SkewFig, 5, 5),
            (ModelId::SkewSolved, 5, 7),
        ]
        .into_iter()
        .find_map(|(m, n, want)| {
            let got = count_dfs(m, n, 0, None);
            (got != BigUint::from(want)).then(|| Mismatch {
                layer: Some(m.name().to_owned()),
                ..mismatch(n, Some(0), None, want, got)
            })
        })),
        None,
    );

    let fig = skew_vs_table(table(ModelId::SkewFig), n_max);
    let solved = skew_vs_table(table(ModelId::SkewSolved), n_max);
    let resolution = match (&fig, &solved) {
        (Ok(f), Ok(s)) => SkewResolution::from_matches(f.is_none(), s.is_none()),
        _ => SkewResolution::Neither,
    };
    let describe = |r: &Outcome| match r {
        Ok(None) => "matches".to_owned(),
        Ok(Some(m)) => format!("first mismatch {m}"),
        Err(e) => e.clone(),
    };
    push(
        "skew/resolution",
        json!({ "n_max": n_max, "resolution": resolution.to_string() }),
        match resolution {
            SkewResolution::Neither => Err(format!(
                "no skew automaton matches: skew-fig {}; skew-solved {}",
                describe(&fig),
                describe(&solved)
            )),
            _ => Ok(None),
        },
        Some(format!("skew-fig {}; skew-solved {}", describe(&fig), describe(&solved))),
    );

    if let Some(model) = resolution.model() {
        push(
            &format!("skew/layer-marginals/{model}"),
            json!({ "n_max": n_max }),
            skew_marginals(table(model), n_max),
            Some("A(1) and C(1) against layer totals".into()),
        );
    }

    for (reference, model) in [
        (reference::DAP_LEVEL0, Some(ModelId::DapLr)),
        (reference::SKEW_LEVEL0, resolution.model()),
    ] {
        let first = reference.last_printed() + 1;
        if order < first {
            continue;
        }
        let id = format!("oracle-derived/{}", reference.name);
        let params = json!({ "from": first, "to": order });
        let Some(model) = model else {
            push(&id, params, Err("no automaton to derive terms from".into()), None);
            continue;
        };
        let closed = if model == ModelId::DapLr {
            kernel::dap_level::<Rational>(0, order)
        } else {
            kernel::skew_level::<Rational>(0, order)
        };
        let long = count_dp(model, order);
        let outcome = closed.map_err(err).map(|s| {
            (first..=order).find_map(|n| compare_cell(n, 0, None, &int(&s.coeffs()[n]), long.level_total(n, 0)))
        });
        push(&id, params, outcome, Some(format!("terms beyond z^11 are oracle-derived from {model}")));
    }

    VerifyReport {
        config: json!({ "order": order, "n_max": n_max, "corrupt_s2": config.corrupt_s2 }),
        checks,
        skew_resolution: resolution,
    }
}

fn level_sum(order: usize) -> Outcome {
    let s2 = kernel::dap_s2::<Rational>(order).map_err(err)?;
    for k in 0..=IDENTITY_MAX_K {
        let f = kernel::dap_f::<Rational>(k, order).map_err(err)?;
        let g = kernel::dap_g::<Rational>(k, order).map_err(err)?;
        let expected = s2.pow(k as u32 + 1).mul_z_pow(k).truncate(order);
        if let Some(m) = compare(Some(k), &expected, &(&f + &g)) {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

fn g_from_f(order: usize) -> Outcome {
    for k in 0..=IDENTITY_MAX_K {
        let next = kernel::dap_f::<Rational>(k + 1, order + 1).map_err(err)?;
        let f = kernel::dap_f::<Rational>(k, order).map_err(err)?;
        let expected = &next.div_z_pow(1).map_err(err)? - &f;
        let g = kernel::dap_g::<Rational>(k, order).map_err(err)?;
        if let Some(m) = compare(Some(k), &expected, &g) {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

fn total_shift(order: usize) -> Outcome {
    let total = kernel::dap_total::<Rational>(order).map_err(err)?;
    let g0 = kernel::dap_g::<Rational>(0, order).map_err(err)?;
    Ok(compare(None, &g0, &total.mul_z_pow(2).truncate(order)))
}

fn theorem2_b0(order: usize) -> Outcome {
    let b0 = kernel::rl_b::<Rational>(0, order).map_err(err)?;
    let s2 = kernel::dap_s2::<Rational>(order).map_err(err)?;
    Ok(compare(Some(0), &s2, &(&Series::one(order) + &b0)))
}

fn residual(family: KernelFamily, order: usize, corrupt: bool) -> Outcome {
    let mut root = family.root::<Rational>(order).map_err(err)?;
    if corrupt {
        root = &root + &Series::one(order - 1).mul_z_pow(1);
    }
    Ok(compare_zero(&family.eval(&root)))
}

fn a1_minus_c1(order: usize) -> Outcome {
    let a1 = kernel::skew_a1::<Rational>(order).map_err(err)?;
    let c1 = kernel::skew_c1::<Rational>(order).map_err(err)?;
    Ok(compare(None, &Series::geometric(order), &(&a1 - &c1)))
}

fn dap_lr_vs_table(table: &CountTable) -> Outcome {
    let n_max = table.n_max();
    for k in 0..=n_max {
        let f = kernel::dap_f::<Rational>(k, n_max).map_err(err)?;
        let g = kernel::dap_g::<Rational>(k, n_max).map_err(err)?;
        for n in 0..=n_max {
            for (series, layer) in [(&f, Layer::AfterUp), (&g, Layer::AfterDown)] {
                let cell = table.get(n, k, layer).cloned();
                if let Some(m) = compare_cell(n, k, Some(layer), &int(&series.coeffs()[n]), cell) {
                    return Ok(Some(m));
                }
            }
        }
    }
    Ok(None)
}

/// `b_k` against both layers for `n >= 1`; `a_k` against the after-down layer,
/// which already holds the empty path.
fn dap_rl_vs_table(table: &CountTable) -> Outcome {
    let n_max = table.n_max();
    for k in 0..=n_max {
        let b = kernel::rl_b::<Rational>(k, n_max).map_err(err)?;
        let a = kernel::rl_a::<Rational>(k, n_max).map_err(err)?;
        for n in 0..=n_max {
            if n >= 1 {
                if let Some(m) = compare_cell(n, k, None, &int(&b.coeffs()[n]), table.level_total(n, k)) {
                    return Ok(Some(m));
                }
            }
            let cell = table.get(n, k, Layer::AfterDown).cloned();
            if let Some(m) = compare_cell(n, k, Some(Layer::AfterDown), &int(&a.coeffs()[n]), cell) {
                return Ok(Some(m));
            }
        }
    }
    Ok(None)
}

/// `skew_level(k)` against the layer totals of one skew automaton, `k <= n <= n_max`.
pub fn skew_vs_table(table: &CountTable, n_max: usize) -> Outcome {
    for k in 0..=n_max {
        let closed = kernel::skew_level::<Rational>(k, n_max).map_err(err)?;
        for n in k..=n_max {
            if let Some(m) = compare_cell(n, k, None, &int(&closed.coeffs()[n]), table.level_total(n, k)) {
                return Ok(Some(m));
            }
        }
    }
    Ok(None)
}

fn skew_marginals(table: &CountTable, n_max: usize) -> Outcome {
    let a1 = kernel::skew_a1::<Rational>(n_max).map_err(err)?;
    let c1 = kernel::skew_c1::<Rational>(n_max).map_err(err)?;
    for n in 0..=n_max {
        for (series, layer) in [(&a1, Layer::AfterUp), (&c1, Layer::AfterRed)] {
            let total: BigUint = (0..=n).filter_map(|k| table.get(n, k, layer)).sum();
            if let Some(m) = compare_cell(n, n, Some(layer), &int(&series.coeffs()[n]), Some(total)) {
                return Ok(Some(Mismatch { k: None, ..m }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_resolves_to_solved() {
        let report = run(&VerifyConfig {
            order: 14,
            n_max: 8,
            corrupt_s2: false,
        });
        for c in &report.checks {
            assert!(c.passed(), "{c:?}");
        }
        assert_eq!(report.skew_resolution, SkewResolution::Solved);
        assert!(report.success());
        assert!(report.check("oracle-derived/dap-level0").is_some());
    }

    #[test]
    fn corruption_trips_the_residual() {
        let report = run(&VerifyConfig {
            order: 12,
            n_max: 6,
            corrupt_s2: true,
        });
        let check = report.check("kernel/residual-dap").unwrap();
        assert_eq!(check.status, Status::Fail);
        assert!(check.detail.is_some());
        assert!(!report.success());
    }

    #[test]
    fn fig_automaton_first_disagrees_at_five_steps() {
        let m = skew_vs_table(&count_dp(ModelId::SkewFig, 8), 8).unwrap().unwrap();
        assert_eq!((m.n, m.k), (5, Some(0)));
        let level0 = kernel::skew_level::<Rational>(0, 5).unwrap();
        assert_eq!(int(&level0.coeffs()[5]), BigInt::from(7));
        assert_eq!(count_dp(ModelId::SkewFig, 5).level_total(5, 0).unwrap(), 5u32.into());
    }

    #[test]
    fn short_order_skips_derived_extension() {
        let report = run(&VerifyConfig {
            order: 11,
            n_max: 5,
            corrupt_s2: false,
        });
        assert!(report.check("oracle-derived/dap-level0").is_none());
        assert!(report.success());
    }
}
