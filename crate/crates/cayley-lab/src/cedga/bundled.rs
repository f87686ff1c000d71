//! Bundled invariant data for the product of two 3-spheres.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exterior::{KForm, Rational, Scalar};

use super::lie::{su2_constants, LieAlgebra};
use super::su3::{nearly_kahler_check, NearlyKahlerResult, SU3Data};

/// The direct sum of two copies of su(2) (indices 1..3 and 4..6) together
/// with a candidate invariant SU(3)-structure:
///
/// `ω = e¹⁴ + e²⁵ + e³⁶`, `Ω₊ = dω`, and `Ω₋` chosen with `dΩ₋ = (1/12) ω²`.
///
/// The structure is shipped as data; whether it satisfies the nearly Kähler
/// equations is verified by the pipeline, not asserted.
pub fn bundled_example_s3s3() -> (LieAlgebra, SU3Data<Rational>) {
    let mut constants = su2_constants(0);
    constants.extend(su2_constants(3));
    let algebra = LieAlgebra::new(6, constants).expect("su(2) ⊕ su(2) constants are valid");

    let omega = KForm::from_int_components(6, 2, &[(&[1, 4], 1), (&[2, 5], 1), (&[3, 6], 1)])
        .expect("omega");
    let omega_plus = algebra.differential(&omega).expect("d omega");
    let twelfth = Rational::ratio(1, 12);
    let omega_minus = KForm::from_components(
        6,
        3,
        [
            // x_j x_k y_i over cyclic (i, j, k)
            (vec![2, 3, 4], twelfth.clone()),
            (vec![3, 1, 5], twelfth.clone()),
            (vec![1, 2, 6], twelfth.clone()),
            // x_i y_j y_k over cyclic (i, j, k)
            (vec![1, 5, 6], twelfth.clone()),
            (vec![2, 6, 4], twelfth.clone()),
            (vec![3, 4, 5], twelfth),
        ],
    )
    .expect("omega_minus");
    let su3 = SU3Data::new(omega, omega_plus, omega_minus).expect("bundled data is compatible");
    (algebra, su3)
}

/// Outcome of running the invariant-differential pipeline on the bundled
/// candidate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct S3Report {
    pub schema: u32,
    pub jacobi_ok: bool,
    /// `d² e^k = 0` for every generator.
    pub d_squared_zero: bool,
    pub d_omega: KForm<Rational>,
    pub d_omega_minus: KForm<Rational>,
    pub nearly_kahler: NearlyKahlerResult,
}

/// Run the full pipeline: Jacobi check, differential, nearly Kähler test.
pub fn s3s3_report() -> Result<S3Report> {
    let (algebra, su3) = bundled_example_s3s3();
    let jacobi_ok = algebra.jacobi_check();
    let mut d_squared_zero = true;
    for k in 1..=algebra.dimension() {
        let dk = algebra.generator_differential(k)?.clone();
        if !algebra.differential(&dk)?.is_zero() {
            d_squared_zero = false;
        }
    }
    let d_omega = algebra.differential(su3.omega())?;
    let d_omega_minus = algebra.differential(su3.omega_minus())?;
    let nearly_kahler = nearly_kahler_check(&su3, &d_omega, &d_omega_minus, 0.0)?;
    Ok(S3Report {
        schema: 1,
        jacobi_ok,
        d_squared_zero,
        d_omega,
        d_omega_minus,
        nearly_kahler,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pipeline_verifies_the_candidate() {
        let report = s3s3_report().unwrap();
        assert!(report.jacobi_ok);
        assert!(report.d_squared_zero);
        assert!(report.nearly_kahler.holds);
        // the verified constant for this normalization
        assert_eq!(
            report.nearly_kahler.constant,
            Some(Rational::ratio(1, 12).to_repr())
        );
        assert!(report.nearly_kahler.constant_nonzero);
    }

    #[test]
    fn candidate_satisfies_both_displayed_equations() {
        let (algebra, su3) = bundled_example_s3s3();
        let d_omega = algebra.differential(su3.omega()).unwrap();
        // dω = 12 · (1/12) · Ω₊ = Ω₊
        assert_eq!(d_omega, *su3.omega_plus());
        let d_omega_minus = algebra.differential(su3.omega_minus()).unwrap();
        let expected = su3.omega_squared().scale(&Rational::ratio(1, 12));
        assert_eq!(d_omega_minus, expected);
    }
}
