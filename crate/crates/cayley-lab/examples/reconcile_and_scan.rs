//! Search the product-ansatz conventions for admissible 4-forms, then scan
//! the formal-differential grid for the conformal locus.
//!
//! Run with: cargo run --example reconcile_and_scan

use cayley_lab::cedga::{
    distinct_conventions, reconcile_cayley, theorem_scan, GridSpec, SU3Data, ThetaMode,
};
use cayley_lab::{Rational, Scalar};

fn main() -> cayley_lab::Result<()> {
    let report = reconcile_cayley()?;
    println!(
        "{} of {} searched combinations are admissible; the literal all-plus, c = 1 choice: {}",
        report.admissible.len(),
        report.searched,
        if report.literal_choice_admissible {
            "admissible"
        } else {
            "not admissible"
        }
    );
    for convention in &report.admissible {
        println!(
            "  signs {:?}  c = {}  relabel {:?}",
            convention.signs, convention.coeff_c, convention.relabel
        );
    }

    let su3 = SU3Data::<Rational>::standard();
    let conventions: Vec<_> = distinct_conventions(&report, &su3)?
        .into_iter()
        .map(|(c, _)| c)
        .collect();
    println!("\ndistinct 4-forms: {}", conventions.len());

    let scan = theorem_scan(
        &su3,
        &conventions,
        &GridSpec::default_grid(),
        ThetaMode::UFlat,
        None,
    )?;
    for (i, convention_scan) in scan.conventions.iter().enumerate() {
        println!("\nconvention {i}:");
        println!(
            "  locus constraints: {}",
            convention_scan.locus_constraints.join("; ")
        );
        println!(
            "  zero-residual grid points: {} ({} with nonzero Lee form)",
            convention_scan.zero_residual_count, convention_scan.locus_count
        );
        // show the point matching the derived relations dω = Ω₋, dΩ₊ = ω²/2
        let one = Rational::from_int(1).to_repr();
        let zero = Rational::from_int(0).to_repr();
        for point in &convention_scan.points {
            if !(point.zero_residual && point.q == one && point.p == zero) {
                continue;
            }
            if let Some(factor) = &point.theta_u_flat_multiple {
                println!(
                    "  sample locus point (p,q,r,s) = ({},{},{},{}): θ ∥ u♭ with factor {}",
                    point.p, point.q, point.r, point.s, factor
                );
                break;
            }
        }
    }
    Ok(())
}
