//! The two-vector contraction identity: the volume coefficient of
//! (ι_v ι_w Φ) ∧ (ι_v ι_w Φ) ∧ Φ equals 6 |v♭ ∧ w♭|², exactly.
//!
//! Run with: cargo run --example karigiannis_contraction

use cayley_lab::spin7::{cayley_corollary_check, cayley_form};
use cayley_lab::{Rational, Scalar, Vector};

fn main() -> cayley_lab::Result<()> {
    let phi = cayley_form();

    let e1 = Vector::<Rational>::basis(8, 1)?;
    let e2 = Vector::<Rational>::basis(8, 2)?;
    let (lhs, rhs) = cayley_corollary_check(&e1, &e2, &phi)?;
    println!("(e1, e2): lhs = {lhs}, rhs = {rhs}");

    // degenerate pair
    let (lhs, rhs) = cayley_corollary_check(&e1, &e1, &phi)?;
    println!("(e1, e1): lhs = {lhs}, rhs = {rhs}");

    // all 28 basis pairs
    let mut all_equal = true;
    for i in 1..=8u8 {
        for j in (i + 1)..=8u8 {
            let v = Vector::<Rational>::basis(8, i)?;
            let w = Vector::<Rational>::basis(8, j)?;
            let (lhs, rhs) = cayley_corollary_check(&v, &w, &phi)?;
            all_equal &= lhs == rhs;
        }
    }
    println!("equality on all 28 basis pairs: {all_equal}");

    // a rational pair
    let v = Vector::new(vec![
        Rational::ratio(1, 2),
        Rational::from_int(-1),
        Rational::from_int(0),
        Rational::ratio(2, 3),
        Rational::from_int(1),
        Rational::from_int(0),
        Rational::ratio(-1, 5),
        Rational::from_int(2),
    ])?;
    let w = Vector::new(vec![
        Rational::from_int(1),
        Rational::from_int(1),
        Rational::ratio(3, 7),
        Rational::from_int(0),
        Rational::from_int(-2),
        Rational::ratio(1, 3),
        Rational::from_int(0),
        Rational::from_int(1),
    ])?;
    let (lhs, rhs) = cayley_corollary_check(&v, &w, &phi)?;
    println!("rational pair: lhs = {lhs}");
    println!("               rhs = {rhs}");
    println!("               equal: {}", lhs == rhs);
    Ok(())
}
