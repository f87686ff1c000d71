//! Exact exterior algebra basics: wedge, Hodge star, interior product,
//! musical isomorphisms and inner products on the orthonormal 8-frame.
//!
//! Run with: cargo run --example exterior_algebra

use cayley_lab::exterior::{interior, KForm, Rational, Scalar, Vector};

fn main() -> cayley_lab::Result<()> {
    type F = KForm<Rational>;

    let dx1: F = KForm::basis_element(8, &[1])?;
    let dx2: F = KForm::basis_element(8, &[2])?;
    println!("dx^1 ∧ dx^2        = {}", dx1.wedge(&dx2)?);
    println!("dx^2 ∧ dx^1        = {}", dx2.wedge(&dx1)?);

    let quad: F = KForm::basis_element(8, &[1, 2, 3, 4])?;
    println!("*(dx^{{1234}})       = {}", quad.hodge()?);
    println!("**(dx^{{1234}})      = {}", quad.hodge()?.hodge()?);

    let one = KForm::constant(8, Rational::from_int(1));
    println!("*(1)               = {}", one.hodge()?);

    let e1 = Vector::<Rational>::basis(8, 1)?;
    let e2 = Vector::<Rational>::basis(8, 2)?;
    println!("ι_e1 dx^{{1234}}     = {}", interior(&e1, &quad)?);
    println!("ι_e2 dx^{{1234}}     = {}", interior(&e2, &quad)?);

    // the metric pairing against the volume form: a ∧ *b = ⟨a, b⟩ vol
    let a = F::from_int_components(8, 2, &[(&[1, 2], 3), (&[5, 6], -2)])?;
    let b = F::from_int_components(8, 2, &[(&[1, 2], 1), (&[3, 4], 7)])?;
    let lhs = a.wedge(&b.hodge()?)?;
    println!("a ∧ *b             = {lhs}");
    println!("⟨a, b⟩             = {}", a.inner(&b)?);
    println!(
        "|v♭ ∧ w♭|² for orthonormal v, w = {}",
        e1.flat().wedge(&e2.flat())?.norm2()
    );
    Ok(())
}
