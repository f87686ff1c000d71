//! SU(3)-structure data on a 6-frame and the nearly Kähler test.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::scalar::CoeffRepr;
use crate::exterior::{KForm, Rational, Scalar};

/// The triple `(ω, Ω₊, Ω₋)` on indices 1..6. Construction rejects data with
/// `ω ∧ Ω± ≠ 0` or degenerate `ω³ = 0`, since every downstream contract
/// depends on those identities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SU3DataJson<S>", into = "SU3DataJson<S>")]
#[serde(bound(serialize = "S: Scalar", deserialize = "S: Scalar"))]
pub struct SU3Data<S: Scalar> {
    omega: KForm<S>,
    omega_plus: KForm<S>,
    omega_minus: KForm<S>,
}

#[derive(Serialize, Deserialize)]
#[serde(bound(serialize = "S: Scalar", deserialize = "S: Scalar"))]
struct SU3DataJson<S: Scalar> {
    omega: KForm<S>,
    omega_plus: KForm<S>,
    omega_minus: KForm<S>,
}

impl<S: Scalar> From<SU3Data<S>> for SU3DataJson<S> {
    fn from(value: SU3Data<S>) -> Self {
        Self {
            omega: value.omega,
            omega_plus: value.omega_plus,
            omega_minus: value.omega_minus,
        }
    }
}

impl<S: Scalar> TryFrom<SU3DataJson<S>> for SU3Data<S> {
    type Error = Error;

    fn try_from(value: SU3DataJson<S>) -> Result<Self> {
        SU3Data::new(value.omega, value.omega_plus, value.omega_minus)
    }
}

impl<S: Scalar> SU3Data<S> {
    pub fn new(omega: KForm<S>, omega_plus: KForm<S>, omega_minus: KForm<S>) -> Result<Self> {
        for (form, degree) in [(&omega, 2u8), (&omega_plus, 3), (&omega_minus, 3)] {
            if form.dimension() != 6 {
                return Err(Error::DimensionMismatch {
                    expected: 6,
                    found: form.dimension(),
                });
            }
            if form.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: form.degree(),
                });
            }
        }
        if !omega.wedge(&omega_plus)?.is_zero() {
            return Err(Error::InvalidModel("ω ∧ Ω₊ ≠ 0".into()));
        }
        if !omega.wedge(&omega_minus)?.is_zero() {
            return Err(Error::InvalidModel("ω ∧ Ω₋ ≠ 0".into()));
        }
        let cube = omega.wedge(&omega)?.wedge(&omega)?;
        if cube.is_zero() {
            return Err(Error::InvalidModel("ω³ = 0".into()));
        }
        Ok(Self {
            omega,
            omega_plus,
            omega_minus,
        })
    }

    /// The flat model: `ω = e¹² + e³⁴ + e⁵⁶`,
    /// `Ω₊ = e¹³⁵ - e¹⁴⁶ - e²³⁶ - e²⁴⁵`, `Ω₋ = e¹³⁶ + e¹⁴⁵ + e²³⁵ - e²⁴⁶`.
    pub fn standard() -> Self {
        let omega = KForm::from_int_components(6, 2, &[(&[1, 2], 1), (&[3, 4], 1), (&[5, 6], 1)])
            .expect("standard omega");
        let omega_plus = KForm::from_int_components(
            6,
            3,
            &[
                (&[1, 3, 5], 1),
                (&[1, 4, 6], -1),
                (&[2, 3, 6], -1),
                (&[2, 4, 5], -1),
            ],
        )
        .expect("standard omega_plus");
        let omega_minus = KForm::from_int_components(
            6,
            3,
            &[
                (&[1, 3, 6], 1),
                (&[1, 4, 5], 1),
                (&[2, 3, 5], 1),
                (&[2, 4, 6], -1),
            ],
        )
        .expect("standard omega_minus");
        Self::new(omega, omega_plus, omega_minus).expect("standard data is compatible")
    }

    pub fn omega(&self) -> &KForm<S> {
        &self.omega
    }

    pub fn omega_plus(&self) -> &KForm<S> {
        &self.omega_plus
    }

    pub fn omega_minus(&self) -> &KForm<S> {
        &self.omega_minus
    }

    pub fn omega_squared(&self) -> KForm<S> {
        self.omega.wedge(&self.omega).expect("same frame")
    }
}

impl SU3Data<Rational> {
    pub fn to_float(&self) -> SU3Data<f64> {
        SU3Data {
            omega: self.omega.to_float(),
            omega_plus: self.omega_plus.to_float(),
            omega_minus: self.omega_minus.to_float(),
        }
    }
}

/// Outcome of the nearly Kähler test `dω = 12 a Ω₊`, `dΩ₋ = a ω ∧ ω` for a
/// single constant `a`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NearlyKahlerResult {
    pub holds: bool,
    /// The common constant when the equations are consistent.
    pub constant: Option<CoeffRepr>,
    /// Whether the constant is nonzero (a zero constant means Kähler data).
    pub constant_nonzero: bool,
}

/// Solve for the single constant `a` satisfying both displayed equations,
/// exactly in exact mode and within `tol` in float mode.
pub fn nearly_kahler_check<S: Scalar>(
    su3: &SU3Data<S>,
    d_omega: &KForm<S>,
    d_omega_minus: &KForm<S>,
    tol: f64,
) -> Result<NearlyKahlerResult> {
    if d_omega.degree() != 3 {
        return Err(Error::DegreeMismatch {
            expected: 3,
            found: d_omega.degree(),
        });
    }
    if d_omega_minus.degree() != 4 {
        return Err(Error::DegreeMismatch {
            expected: 4,
            found: d_omega_minus.degree(),
        });
    }
    let twelve = S::from_int(12);
    let lhs1 = su3.omega_plus().scale(&twelve);
    let lhs2 = su3.omega_squared();

    // Stack both equations: (lhs1, lhs2) * a = (d_omega, d_omega_minus).
    // The constant comes from the first usable component, then every
    // component is verified.
    let a = first_ratio(&lhs1, d_omega, tol).or_else(|| first_ratio(&lhs2, d_omega_minus, tol));
    let a = match a {
        Some(a) => a,
        // both left sides negligible: consistent iff both right sides vanish
        None => S::zero(),
    };
    let holds =
        matches_scaled(&lhs1, &a, d_omega, tol)? && matches_scaled(&lhs2, &a, d_omega_minus, tol)?;
    let constant_nonzero = holds && !a.is_negligible(tol);
    Ok(NearlyKahlerResult {
        holds,
        constant: holds.then(|| a.to_repr()),
        constant_nonzero,
    })
}

fn first_ratio<S: Scalar>(lhs: &KForm<S>, rhs: &KForm<S>, tol: f64) -> Option<S> {
    lhs.iter()
        .find(|(_, c)| !c.is_negligible(tol))
        .map(|(mono, c)| rhs.term(mono) / c.clone())
}

fn matches_scaled<S: Scalar>(lhs: &KForm<S>, a: &S, rhs: &KForm<S>, tol: f64) -> Result<bool> {
    let difference = lhs.scale(a).sub(rhs)?;
    let ok = difference.iter().all(|(_, c)| c.is_negligible(tol));
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn standard_data_is_compatible() {
        let su3 = SU3Data::<Rational>::standard();
        assert!(su3.omega().wedge(su3.omega_plus()).unwrap().is_zero());
        assert!(su3.omega().wedge(su3.omega_minus()).unwrap().is_zero());
        let cube = su3.omega_squared().wedge(su3.omega()).unwrap();
        assert_eq!(cube.volume_coefficient().unwrap(), q(6));
    }

    #[test]
    fn incompatible_data_rejected() {
        let su3 = SU3Data::<Rational>::standard();
        let bad_plus = KForm::basis_element(6, &[1, 2, 3]).unwrap();
        assert!(SU3Data::new(su3.omega().clone(), bad_plus, su3.omega_minus().clone()).is_err());
        // degenerate omega
        let omega = KForm::basis_element(6, &[1, 2]).unwrap();
        assert!(SU3Data::new(omega, su3.omega_plus().clone(), su3.omega_minus().clone()).is_err());
    }

    #[test]
    fn nk_check_finds_constant() {
        let su3 = SU3Data::<Rational>::standard();
        let d_omega = su3.omega_plus().scale(&q(12));
        let d_omega_minus = su3.omega_squared();
        let r = nearly_kahler_check(&su3, &d_omega, &d_omega_minus, 0.0).unwrap();
        assert!(r.holds);
        assert_eq!(r.constant, Some(q(1).to_repr()));
        assert!(r.constant_nonzero);
    }

    #[test]
    fn nk_check_zero_constant() {
        let su3 = SU3Data::<Rational>::standard();
        let r = nearly_kahler_check(&su3, &KForm::zero(6, 3), &KForm::zero(6, 4), 0.0).unwrap();
        assert!(r.holds);
        assert_eq!(r.constant, Some(q(0).to_repr()));
        assert!(!r.constant_nonzero);
    }

    #[test]
    fn nk_check_inconsistent_pair() {
        let su3 = SU3Data::<Rational>::standard();
        let d_omega = su3.omega_plus().scale(&q(12));
        let d_omega_minus = su3.omega_squared().scale(&q(2));
        let r = nearly_kahler_check(&su3, &d_omega, &d_omega_minus, 0.0).unwrap();
        assert!(!r.holds);
        assert!(r.constant.is_none());
    }

    #[test]
    fn nk_check_respects_float_tolerance() {
        let su3 = SU3Data::<Rational>::standard().to_float();
        let d_omega = su3.omega_plus().scale(&12.0);
        let mut wiggle = su3.omega_squared();
        wiggle = wiggle
            .add(
                &KForm::basis_element(6, &[1, 2, 3, 4])
                    .unwrap()
                    .scale(&1e-13),
            )
            .unwrap();
        let r = nearly_kahler_check(&su3, &d_omega, &wiggle, 1e-9).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn serde_round_trip_validates() {
        let su3 = SU3Data::<Rational>::standard();
        let text = serde_json::to_string(&su3).unwrap();
        let back: SU3Data<Rational> = serde_json::from_str(&text).unwrap();
        assert_eq!(back, su3);
        // deserialization re-runs the compatibility checks
        let bad = r#"{"omega":{"n":6,"k":2,"terms":[{"idx":[1,2],"c":"1"}]},
                      "omega_plus":{"n":6,"k":3,"terms":[{"idx":[1,2,3],"c":"1"}]},
                      "omega_minus":{"n":6,"k":3,"terms":[]}}"#;
        assert!(serde_json::from_str::<SU3Data<Rational>>(bad).is_err());
    }
}
