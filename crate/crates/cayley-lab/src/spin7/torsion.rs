//! Lee form, characteristic torsion and the two-vector contraction identity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::scalar::CoeffRepr;
use crate::exterior::{KForm, Rational, Scalar, Vector};
use crate::spin7::structure::CayleyStructure;

/// The Lee 1-form of a pair `(phi, dphi)`:
///
/// `theta = -(1/7) * ( *dphi ∧ phi )*`
///
/// Linear in `dphi`. The normalizing 7 is implemented as written; whether it
/// recovers the input exactly on conformally parallel data is measured by
/// [`CayleyStructure::lee_schur_constant`] rather than assumed.
pub fn lee_form<S: Scalar>(phi: &KForm<S>, dphi: &KForm<S>) -> Result<KForm<S>> {
    if phi.dimension() != 8 || dphi.dimension() != 8 {
        return Err(Error::DimensionMismatch {
            expected: 8,
            found: if phi.dimension() != 8 {
                phi.dimension()
            } else {
                dphi.dimension()
            },
        });
    }
    if phi.degree() != 4 {
        return Err(Error::DegreeMismatch {
            expected: 4,
            found: phi.degree(),
        });
    }
    if dphi.degree() != 5 {
        return Err(Error::DegreeMismatch {
            expected: 5,
            found: dphi.degree(),
        });
    }
    let inner = dphi.hodge()?.wedge(phi)?.hodge()?;
    Ok(inner.scale(&S::ratio(-1, 7)))
}

impl CayleyStructure {
    /// Measure the constant of the map `θ ↦ lee_form(phi, θ ∧ phi)` on the
    /// eight basis 1-forms. Returns `Some(mu)` when every basis form is sent
    /// to the same multiple `mu` of itself, `None` otherwise.
    pub fn lee_schur_constant(&self) -> Result<Option<Rational>> {
        let mut constant: Option<Rational> = None;
        for i in 1..=8u8 {
            let theta = KForm::<Rational>::basis_element(8, &[i])?;
            let image = lee_form(self.phi(), &theta.wedge(self.phi())?)?;
            let mu = proportionality(&image, &theta);
            match (mu, &constant) {
                (Some(mu), None) => constant = Some(mu),
                (Some(mu), Some(seen)) if mu == *seen => {}
                _ => return Ok(None),
            }
        }
        Ok(constant)
    }
}

/// Characteristic torsion of a locally conformal parallel structure, from the
/// closed-form expression `T = -(7/6) * (theta ∧ phi)*`.
///
/// Also recovers `theta_recovered = (6/7) * (T ∧ phi)*` and reports the
/// measured proportionality `scale` of the recovery against the input, plus
/// the split of `T` into its 8- and 48-dimensional components.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TorsionResult {
    pub schema: u32,
    pub torsion: KForm<Rational>,
    pub t3_8: KForm<Rational>,
    pub t3_48: KForm<Rational>,
    pub theta_recovered: KForm<Rational>,
    /// `theta_recovered = scale · theta` when proportional; `None` when the
    /// input Lee form is zero (degenerate) or no single scale exists.
    pub scale: Option<CoeffRepr>,
    /// True when `theta = 0`, where the recovery scale is undefined.
    pub degenerate: bool,
}

pub fn characteristic_torsion_lcp(
    structure: &CayleyStructure,
    theta: &KForm<Rational>,
) -> Result<TorsionResult> {
    if theta.dimension() != 8 {
        return Err(Error::DimensionMismatch {
            expected: 8,
            found: theta.dimension(),
        });
    }
    if theta.degree() != 1 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            found: theta.degree(),
        });
    }
    let phi = structure.phi();
    let torsion = theta.wedge(phi)?.hodge()?.scale(&Rational::ratio(-7, 6));
    let t3_8 = structure.project3_8(&torsion)?;
    let t3_48 = structure.project3_48(&torsion)?;
    let theta_recovered = torsion.wedge(phi)?.hodge()?.scale(&Rational::ratio(6, 7));
    let degenerate = theta.is_zero();
    let scale = if degenerate {
        None
    } else {
        proportionality(&theta_recovered, theta).map(|s| s.to_repr())
    };
    Ok(TorsionResult {
        schema: 1,
        torsion,
        t3_8,
        t3_48,
        theta_recovered,
        scale,
        degenerate,
    })
}

/// The single scalar with `a = c · b`, if one exists (`b` nonzero).
fn proportionality(a: &KForm<Rational>, b: &KForm<Rational>) -> Option<Rational> {
    let (mono, coeff) = b.iter().next()?;
    let c = a.term(mono) / coeff.clone();
    if *a == b.scale(&c) {
        Some(c)
    } else {
        None
    }
}

/// Both sides of the two-vector contraction identity: the volume coefficient
/// of `(ι_v ι_w phi) ∧ (ι_v ι_w phi) ∧ phi` and `6 |v♭ ∧ w♭|²`.
/// They agree for admissible `phi`.
pub fn cayley_corollary_check<S: Scalar>(
    v: &Vector<S>,
    w: &Vector<S>,
    phi: &KForm<S>,
) -> Result<(S, S)> {
    if phi.dimension() != 8 {
        return Err(Error::DimensionMismatch {
            expected: 8,
            found: phi.dimension(),
        });
    }
    if phi.degree() != 4 {
        return Err(Error::DegreeMismatch {
            expected: 4,
            found: phi.degree(),
        });
    }
    let contracted = phi.interior(w)?.interior(v)?;
    let lhs = contracted
        .wedge(&contracted)?
        .wedge(phi)?
        .volume_coefficient()?;
    let rhs = S::from_int(6) * v.flat().wedge(&w.flat())?.norm2();
    Ok((lhs, rhs))
}
