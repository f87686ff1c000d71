//! Integer obstruction arithmetic for the existence of the structure.

use serde::{Deserialize, Serialize};

/// User-supplied characteristic numbers of a closed 8-manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologicalData {
    pub p1_squared: i64,
    pub p2: i64,
    pub euler: i64,
    pub w1_vanishes: bool,
    pub w2_vanishes: bool,
}

/// True iff `w1 = w2 = 0` and `p1² - 4 p2 ± 8 χ = 0` for one choice of sign.
pub fn lawson_condition(data: &TopologicalData) -> bool {
    if !data.w1_vanishes || !data.w2_vanishes {
        return false;
    }
    let base = data.p1_squared as i128 - 4 * data.p2 as i128;
    let chi8 = 8 * data.euler as i128;
    base + chi8 == 0 || base - chi8 == 0
}
