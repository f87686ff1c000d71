//! Integer obstruction arithmetic: w₁ = w₂ = 0 and p₁² - 4p₂ ± 8χ = 0.
//!
//! Run with: cargo run --example lawson_obstruction

use cayley_lab::spin7::{lawson_condition, TopologicalData};

fn main() {
    let cases = [
        (
            "all zero",
            TopologicalData {
                p1_squared: 0,
                p2: 0,
                euler: 0,
                w1_vanishes: true,
                w2_vanishes: true,
            },
        ),
        (
            "χ = 1 alone",
            TopologicalData {
                p1_squared: 0,
                p2: 0,
                euler: 1,
                w1_vanishes: true,
                w2_vanishes: true,
            },
        ),
        (
            "p₁² = 16, p₂ = 4",
            TopologicalData {
                p1_squared: 16,
                p2: 4,
                euler: 0,
                w1_vanishes: true,
                w2_vanishes: true,
            },
        ),
        (
            "balanced by +8χ",
            TopologicalData {
                p1_squared: 0,
                p2: 2,
                euler: 1,
                w1_vanishes: true,
                w2_vanishes: true,
            },
        ),
        (
            "w₂ ≠ 0 veto",
            TopologicalData {
                p1_squared: 0,
                p2: 0,
                euler: 0,
                w1_vanishes: true,
                w2_vanishes: false,
            },
        ),
    ];
    for (label, data) in cases {
        println!("{label:<20} -> {}", lawson_condition(&data));
    }
}
