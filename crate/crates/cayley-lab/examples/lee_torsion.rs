//! The Lee form of a conformally closed differential and the characteristic
//! torsion, with every quoted constant measured rather than assumed.
//!
//! Run with: cargo run --example lee_torsion

use cayley_lab::cedga::solve_lee;
use cayley_lab::spin7::{cayley_form, characteristic_torsion_lcp, lee_form, CayleyStructure};
use cayley_lab::{KForm, Rational};

fn main() -> cayley_lab::Result<()> {
    let s = CayleyStructure::standard();
    let phi = cayley_form();
    let theta: KForm<Rational> = KForm::basis_element(8, &[7])?;

    // a conformally parallel differential: dΦ = θ ∧ Φ
    let dphi = theta.wedge(&phi)?;
    let recovered = lee_form(&phi, &dphi)?;
    println!("θ input:          {theta}");
    println!("lee_form(Φ, θ∧Φ): {recovered}");
    let mu = s
        .lee_schur_constant()?
        .map(|c| c.to_string())
        .unwrap_or_else(|| "-".into());
    println!("Schur constant:   {mu}");
    println!();

    let (solved, residual) = solve_lee(&dphi, &phi)?;
    println!("solver θ:         {solved}   residual: {residual}");
    println!();

    let torsion = characteristic_torsion_lcp(&s, &theta)?;
    println!("T = -(7/6)*(θ∧Φ) = {}", torsion.torsion);
    println!("π_8(T)  = T:      {}", torsion.t3_8 == torsion.torsion);
    println!("π_48(T) = 0:      {}", torsion.t3_48.is_zero());
    println!("θ recovered via (6/7)*(T∧Φ): {}", torsion.theta_recovered);
    let scale = torsion
        .scale
        .as_ref()
        .map(|c| c.to_string())
        .unwrap_or_else(|| "-".into());
    println!("scale against input θ:       {scale}");
    println!("(a scale of 1 would mean the two quoted normalizations chain exactly)");
    Ok(())
}
