//! Published level-0 series, embedded verbatim.
//!
//! Only the printed terms are stored. Anything past `z^11` is derived by the
//! counting oracles and labelled as such wherever it is reported.

/// A named integer sequence, coefficients of `z^0, z^1, ...`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReferenceSeries {
    pub name: &'static str,
    pub description: &'static str,
    pub coefficients: &'static [u64],
}

/// Partial Dyck paths with air pockets returning to level 0 (`f_0 + g_0`).
/// From `z^2` on this is OEIS A004148.
pub const DAP_LEVEL0: ReferenceSeries = ReferenceSeries {
    name: "dap-level0",
    description: "air-pocket Dyck paths ending on the axis",
    coefficients: &[1, 0, 1, 1, 2, 4, 8, 17, 37, 82, 185, 423],
};

/// Skew Dyck paths with air pockets ending on the axis.
pub const SKEW_LEVEL0: ReferenceSeries = ReferenceSeries {
    name: "skew-level0",
    description: "skew air-pocket Dyck paths ending on the axis",
    coefficients: &[1, 0, 1, 1, 3, 7, 17, 45, 119, 323, 893, 2497],
};

pub const ALL: [ReferenceSeries; 2] = [DAP_LEVEL0, SKEW_LEVEL0];

impl ReferenceSeries {
    /// Highest exponent actually printed.
    pub fn last_printed(&self) -> usize {
        self.coefficients.len() - 1
    }
}
