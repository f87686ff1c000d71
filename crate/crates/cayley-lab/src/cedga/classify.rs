//! Torsion-class classifier for admissible 4-forms with a given differential.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::scalar::CoeffRepr;
use crate::exterior::{KForm, Rational, Scalar};
use crate::spin7::{
    characteristic_torsion_lcp, check_admissible, lee_form, CayleyStructure, TorsionResult,
};

use super::lie::LieAlgebra;
use super::product::ProductModel;

/// The four torsion classes, keyed by the Lee form:
/// `W0` torsion-free (`dΦ = 0`), `W1` balanced (`θ = 0`),
/// `W2` locally conformal parallel (`dΦ = θ∧Φ`, `dθ = 0`), else mixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FernandezClass {
    W0,
    W1,
    W2,
    Mixed,
}

impl std::fmt::Display for FernandezClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (label, name) = match self {
            FernandezClass::W0 => ("W0", "torsion-free"),
            FernandezClass::W1 => ("W1", "balanced"),
            FernandezClass::W2 => ("W2", "locally conformal parallel"),
            FernandezClass::Mixed => ("W1+W2", "mixed"),
        };
        write!(f, "{label} ({name})")
    }
}

/// Ambient differential for forms the model can differentiate. `None` means
/// the model does not determine the differential of that form.
pub trait DifferentialProvider {
    fn differential(&self, form: &KForm<Rational>) -> Option<KForm<Rational>>;
}

impl DifferentialProvider for LieAlgebra {
    fn differential(&self, form: &KForm<Rational>) -> Option<KForm<Rational>> {
        LieAlgebra::differential(self, form).ok()
    }
}

impl DifferentialProvider for ProductModel<Rational> {
    /// The formal rules determine `d` on the span of `e⁷`, `e⁸` (zero) and
    /// on 7-forms proportional to `vol₆ ∧ e⁷` / `vol₆ ∧ e⁸` through
    /// `vol₆ ∝ ω³`. Anything else is undetermined.
    fn differential(&self, form: &KForm<Rational>) -> Option<KForm<Rational>> {
        match form.degree() {
            1 => {
                let normal = form
                    .iter()
                    .all(|(m, _)| m.indices() == [7] || m.indices() == [8]);
                normal.then(|| KForm::zero(8, 2))
            }
            7 => {
                // decompose as vol₆ ∧ (a e⁷ + b e⁸): indices 1..6 plus one flat
                let mut a = Rational::zero();
                let mut b = Rational::zero();
                for (mono, coeff) in form.iter() {
                    match mono.indices() {
                        [1, 2, 3, 4, 5, 6, 7] => a = coeff.clone(),
                        [1, 2, 3, 4, 5, 6, 8] => b = coeff.clone(),
                        _ => return None,
                    }
                }
                // d(vol₆) = λ⁻¹ d(ω³) = 3 λ⁻¹ dω ∧ ω², λ the ω³ volume factor
                let omega = self.su3.omega();
                let lambda = omega
                    .wedge(omega)
                    .ok()?
                    .wedge(omega)
                    .ok()?
                    .volume_coefficient()
                    .ok()?;
                let d_omega = self.d_omega();
                let d_vol6 = d_omega
                    .wedge(&self.su3.omega_squared())
                    .ok()?
                    .scale(&(Rational::from_int(3) / lambda));
                let d_vol6 = d_vol6.embed(8).ok()?;
                // d(vol₆ ∧ e^i) = d(vol₆) ∧ e^i for the closed flat directions
                let e7 = KForm::basis_element(8, &[7]).ok()?;
                let e8 = KForm::basis_element(8, &[8]).ok()?;
                let part_a = d_vol6.wedge(&e7).ok()?.scale(&a);
                let part_b = d_vol6.wedge(&e8).ok()?.scale(&b);
                part_a.add(&part_b).ok()
            }
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Evidence {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub schema: u32,
    pub fernandez_class: FernandezClass,
    pub theta: KForm<Rational>,
    /// Squared norm of `dΦ - θ∧Φ`.
    pub residual_lcp: CoeffRepr,
    /// `dθ = 0`, when the model determines `dθ`.
    pub dtheta_zero: Option<bool>,
    /// `d*θ = 0`, when the model determines `d*θ`.
    pub gauduchon: Option<bool>,
    /// Characteristic torsion, attached for the conformally parallel class.
    pub torsion: Option<TorsionResult>,
    pub evidence: Vec<Evidence>,
}

/// Classify `(phi, dphi)` by the table of Lee-form conditions. `phi` must be
/// admissible; the provider supplies `dθ` and `d*θ` in the ambient model.
pub fn classify(
    phi: &KForm<Rational>,
    dphi: &KForm<Rational>,
    provider: &dyn DifferentialProvider,
) -> Result<ClassificationReport> {
    let admissibility = check_admissible(phi)?;
    if !admissibility.verdict {
        return Err(Error::NotAdmissible(
            "classification requires an admissible 4-form".into(),
        ));
    }
    if dphi.degree() != 5 || dphi.dimension() != 8 {
        return Err(Error::DegreeMismatch {
            expected: 5,
            found: dphi.degree(),
        });
    }

    let mut evidence = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        evidence.push(Evidence {
            name: name.into(),
            passed,
            detail,
        });
    };

    if dphi.is_zero() {
        push("dphi_zero", true, "dΦ = 0".into());
        return Ok(ClassificationReport {
            schema: 1,
            fernandez_class: FernandezClass::W0,
            theta: KForm::zero(8, 1),
            residual_lcp: Rational::zero().to_repr(),
            dtheta_zero: Some(true),
            gauduchon: Some(true),
            torsion: None,
            evidence,
        });
    }
    push("dphi_zero", false, "dΦ ≠ 0".into());

    let theta = lee_form(phi, dphi)?;
    if theta.is_zero() {
        push("lee_form_zero", true, "θ = 0".into());
        return Ok(ClassificationReport {
            schema: 1,
            fernandez_class: FernandezClass::W1,
            theta,
            residual_lcp: dphi.norm2().to_repr(),
            dtheta_zero: Some(true),
            gauduchon: Some(true),
            torsion: None,
            evidence,
        });
    }
    push("lee_form_zero", false, format!("θ = {theta}"));

    let residual = dphi.sub(&theta.wedge(phi)?)?.norm2();
    let lcp_exact = residual.is_zero();
    push(
        "lcp_residual_zero",
        lcp_exact,
        format!("|dΦ - θ∧Φ|² = {residual}"),
    );

    let dtheta_zero = provider.differential(&theta).map(|d| d.is_zero());
    match dtheta_zero {
        Some(flag) => push("dtheta_zero", flag, "dθ from the ambient model".into()),
        None => push("dtheta_zero", false, "dθ undetermined by the model".into()),
    }
    let gauduchon = provider.differential(&theta.hodge()?).map(|d| d.is_zero());

    let class = if lcp_exact && dtheta_zero == Some(true) {
        FernandezClass::W2
    } else {
        FernandezClass::Mixed
    };
    let torsion = if class == FernandezClass::W2 {
        let structure = CayleyStructure::new(phi.clone())?;
        Some(characteristic_torsion_lcp(&structure, &theta)?)
    } else {
        None
    };
    Ok(ClassificationReport {
        schema: 1,
        fernandez_class: class,
        theta,
        residual_lcp: residual.to_repr(),
        dtheta_zero,
        gauduchon,
        torsion,
        evidence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cedga::product::{build_product_phi, d_product_phi, Angle, DiffCoeffs};
    use crate::cedga::su3::SU3Data;
    use crate::spin7::cayley_form;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn qr(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn abelian_torus_is_torsion_free() {
        let algebra = LieAlgebra::abelian(8);
        let phi = cayley_form();
        let dphi = algebra.differential(&phi).unwrap();
        let report = classify(&phi, &dphi, &algebra).unwrap();
        assert_eq!(report.fernandez_class, FernandezClass::W0);
    }

    #[test]
    fn product_locus_point_is_lcp() {
        // dω = Ω₋, dΩ₊ = ω²/2, dΩ₋ = 0 in the convention that rebuilds the
        // standard Cayley form; the Lee form is e⁷.
        let model = ProductModel::new(
            SU3Data::standard(),
            Angle::zero(),
            qr(1, 2),
            [1, 1, -1, 1],
            DiffCoeffs::new(q(0), q(1), qr(1, 2), q(0)),
        )
        .unwrap();
        let phi = build_product_phi(&model).unwrap();
        let dphi = d_product_phi(&model).unwrap();
        let report = classify(&phi, &dphi, &model).unwrap();
        assert_eq!(report.fernandez_class, FernandezClass::W2);
        assert_eq!(report.theta, KForm::basis_element(8, &[7]).unwrap());
        assert_eq!(report.residual_lcp, q(0).to_repr());
        assert_eq!(report.dtheta_zero, Some(true));
        assert_eq!(report.gauduchon, Some(true));
        let torsion = report.torsion.expect("torsion attached for W2");
        assert!(torsion.t3_48.is_zero());
    }

    #[test]
    fn classifier_is_scale_aware() {
        let model = ProductModel::new(
            SU3Data::standard(),
            Angle::zero(),
            qr(1, 2),
            [1, 1, -1, 1],
            DiffCoeffs::new(q(0), q(1), qr(1, 2), q(0)),
        )
        .unwrap();
        let phi = build_product_phi(&model).unwrap();
        let dphi = d_product_phi(&model).unwrap();
        let single = classify(&phi, &dphi, &model).unwrap();
        let doubled = classify(&phi, &dphi.scale(&q(2)), &model).unwrap();
        // the Lee form doubles with dΦ and the verdict structure is stable
        assert_eq!(doubled.theta, single.theta.scale(&q(2)));
        assert_eq!(single.fernandez_class, FernandezClass::W2);
        assert_eq!(doubled.fernandez_class, FernandezClass::W2);
    }

    #[test]
    fn generic_perturbation_is_mixed() {
        let algebra = LieAlgebra::abelian(8);
        let phi = cayley_form();
        let dphi = KForm::basis_element(8, &[1, 2, 3, 4, 5])
            .unwrap()
            .add(&KForm::basis_element(8, &[7, 8, 1, 2, 3]).unwrap())
            .unwrap();
        let report = classify(&phi, &dphi, &algebra).unwrap();
        assert_eq!(report.fernandez_class, FernandezClass::Mixed);
    }

    #[test]
    fn rejects_inadmissible_phi() {
        let algebra = LieAlgebra::abelian(8);
        let phi = KForm::basis_element(8, &[1, 2, 3, 4]).unwrap();
        let dphi = KForm::zero(8, 5);
        assert!(matches!(
            classify(&phi, &dphi, &algebra),
            Err(Error::NotAdmissible(_))
        ));
    }

    #[test]
    fn product_provider_differentials() {
        let model = ProductModel::new(
            SU3Data::standard(),
            Angle::zero(),
            qr(1, 2),
            [1, 1, -1, 1],
            DiffCoeffs::new(q(0), q(1), qr(1, 2), q(0)),
        )
        .unwrap();
        // normal 1-forms are closed
        let theta = KForm::basis_element(8, &[7]).unwrap();
        assert!(model.differential(&theta).unwrap().is_zero());
        // tangential 1-forms are undetermined
        let tangent = KForm::basis_element(8, &[1]).unwrap();
        assert!(model.differential(&tangent).is_none());
        // d*θ is determined through ω³ and vanishes since dω ∧ ω² = 0
        let star_theta = theta.hodge().unwrap();
        assert!(model.differential(&star_theta).unwrap().is_zero());
        // generic 7-forms are undetermined
        let seven = KForm::basis_element(8, &[1, 2, 3, 4, 5, 7, 8]).unwrap();
        assert!(model.differential(&seven).is_none());
    }
}
