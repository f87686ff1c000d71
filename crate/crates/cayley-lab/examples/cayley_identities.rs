//! The standard Cayley 4-form and its certification: self-duality, the
//! 14·vol pairing, the operator spectrum on 2-forms and the component ranks.
//!
//! Run with: cargo run --example cayley_identities

use cayley_lab::spin7::{cayley_form, check_admissible, CayleyStructure};
use cayley_lab::Rational;
use cayley_lab::Scalar;

fn main() -> cayley_lab::Result<()> {
    let phi = cayley_form();
    println!("Φ = {phi}");
    println!();

    let report = check_admissible(&phi)?;
    println!("self-dual:      {}", report.self_dual);
    println!("Φ ∧ Φ / vol:    {}", report.phi_wedge_phi_coeff);
    println!(
        "spectrum check: (A - 3I)(A + I) = 0 is {}",
        report.spectrum_ok
    );
    println!(
        "ranks:          rank(A+I) = {}, rank(A-3I) = {}",
        report.ranks.0, report.ranks.1
    );
    println!("verdict:        {}", report.verdict);
    println!();

    // scaling breaks the normalization and the spectrum
    let doubled = phi.scale(&Rational::from_int(2));
    let bad = check_admissible(&doubled)?;
    println!(
        "2Φ verdict:     {} (pairing becomes {})",
        bad.verdict, bad.phi_wedge_phi_coeff
    );

    let s = CayleyStructure::standard();
    println!();
    let gram = s
        .b_gram_constant()
        .map(|c| c.to_string())
        .unwrap_or_else(|| "-".into());
    println!("|Bβ|²/|β|² constant: {gram}");
    println!("operator B rank:     {}", s.operator_b().rank());
    Ok(())
}
