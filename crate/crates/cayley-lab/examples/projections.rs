//! Projections onto the irreducible components of each form degree: the
//! 7/21 split of 2-forms, the 8/48 split of 3-forms, and the 4-form splits.
//!
//! Run with: cargo run --example projections

use cayley_lab::spin7::CayleyStructure;
use cayley_lab::{KForm, Rational};

fn main() -> cayley_lab::Result<()> {
    let s = CayleyStructure::standard();

    let alpha: KForm<Rational> = KForm::basis_element(8, &[1, 2])?;
    let p7 = s.project2_7(&alpha)?;
    let p21 = s.project2_21(&alpha)?;
    println!("α           = {alpha}");
    println!("π_7(α)      = {p7}");
    println!("π_21(α)     = {p21}");
    println!("sum         = {}", p7.add(&p21)?);
    // the defining eigen-equation of the 7-component
    println!("*(π_7 α ∧ Φ) = {}", p7.wedge(s.phi())?.hodge()?);
    println!();

    let gamma: KForm<Rational> = KForm::basis_element(8, &[1, 2, 3])?;
    let g8 = s.project3_8(&gamma)?;
    let g48 = s.project3_48(&gamma)?;
    println!("γ            = {gamma}");
    println!("π_8(γ)       = {g8}");
    println!("π_48(γ) ∧ Φ  = {}", g48.wedge(s.phi())?);
    println!();

    let phi = s.phi();
    println!("π_sd(Φ)  = Φ:  {}", s.project4_selfdual(phi)? == *phi);
    println!("π_asd(Φ) = 0:  {}", s.project4_antiselfdual(phi)?.is_zero());
    println!("π_1(Φ)   = Φ:  {}", s.project4_1(phi)? == *phi);

    // Hodge transport of a 3_8 element lives in the mirrored 5-form component
    let transported = g8.hodge()?;
    println!();
    println!("*(π_8 γ) = {transported}");
    Ok(())
}
