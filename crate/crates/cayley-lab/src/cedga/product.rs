//! The SU(3)-product 4-form ansatz on indices 1..6 with two flat directions
//! 7, 8, and the search for admissible sign/coefficient conventions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::scalar::CoeffRepr;
use crate::exterior::{KForm, Rational, Scalar};
use crate::spin7::{check_admissible, AdmissibilityReport};

use super::su3::SU3Data;

/// A rotation angle stored as its exact or floating cosine/sine pair,
/// with `cos² + sin² = 1` enforced at construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Scalar", deserialize = "S: Scalar"))]
#[serde(try_from = "AngleJson", into = "AngleJson")]
pub struct Angle<S: Scalar> {
    cos: S,
    sin: S,
}

#[derive(Serialize, Deserialize)]
struct AngleJson {
    cos: CoeffRepr,
    sin: CoeffRepr,
}

impl<S: Scalar> From<Angle<S>> for AngleJson {
    fn from(a: Angle<S>) -> Self {
        Self {
            cos: a.cos.to_repr(),
            sin: a.sin.to_repr(),
        }
    }
}

impl<S: Scalar> TryFrom<AngleJson> for Angle<S> {
    type Error = Error;

    fn try_from(a: AngleJson) -> Result<Self> {
        Angle::new(S::from_repr(&a.cos)?, S::from_repr(&a.sin)?)
    }
}

impl<S: Scalar> Angle<S> {
    pub fn new(cos: S, sin: S) -> Result<Self> {
        let norm = cos.clone() * cos.clone() + sin.clone() * sin.clone();
        let deviation = norm - S::one();
        // exact pairs must satisfy the circle identity on the nose; float
        // pairs only up to round-off
        if !deviation.is_negligible(1e-12) {
            return Err(Error::InvalidModel("cos² + sin² ≠ 1".into()));
        }
        Ok(Self { cos, sin })
    }

    pub fn zero() -> Self {
        Self {
            cos: S::one(),
            sin: S::zero(),
        }
    }

    pub fn quarter_turn() -> Self {
        Self {
            cos: S::zero(),
            sin: S::one(),
        }
    }

    pub fn cos(&self) -> &S {
        &self.cos
    }

    pub fn sin(&self) -> &S {
        &self.sin
    }
}

impl Angle<f64> {
    pub fn from_radians(theta: f64) -> Self {
        Self {
            cos: theta.cos(),
            sin: theta.sin(),
        }
    }
}

/// Formal differential coefficients: `dω = p Ω₊ + q Ω₋`,
/// `dΩ₊ = r ω∧ω`, `dΩ₋ = s ω∧ω`, `de⁷ = de⁸ = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Scalar", deserialize = "S: Scalar"))]
pub struct DiffCoeffs<S: Scalar> {
    #[serde(with = "coeff_repr_field")]
    pub p: S,
    #[serde(with = "coeff_repr_field")]
    pub q: S,
    #[serde(with = "coeff_repr_field")]
    pub r: S,
    #[serde(with = "coeff_repr_field")]
    pub s: S,
}

mod coeff_repr_field {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::exterior::scalar::{CoeffRepr, Scalar};

    pub fn serialize<S: Scalar, Ser: Serializer>(
        value: &S,
        serializer: Ser,
    ) -> std::result::Result<Ser::Ok, Ser::Error> {
        value.to_repr().serialize(serializer)
    }

    pub fn deserialize<'de, S: Scalar, D: Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<S, D::Error> {
        let repr = CoeffRepr::deserialize(deserializer)?;
        S::from_repr(&repr).map_err(serde::de::Error::custom)
    }
}

impl<S: Scalar> DiffCoeffs<S> {
    pub fn zero() -> Self {
        Self {
            p: S::zero(),
            q: S::zero(),
            r: S::zero(),
            s: S::zero(),
        }
    }

    pub fn new(p: S, q: S, r: S, s: S) -> Self {
        Self { p, q, r, s }
    }
}

/// The product ansatz
///
/// `Φ = s₁ ω∧e⁷⁸ + s₂ Ω₊∧u♭ + s₃ Ω₋∧v♭ + s₄ c ω∧ω`
///
/// with `u = cos γ e₇ + sin γ e₈`, `v = -sin γ e₇ + cos γ e₈`, together with
/// formal differential coefficients for scanning.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Scalar", deserialize = "S: Scalar"))]
pub struct ProductModel<S: Scalar> {
    pub schema: u32,
    pub su3: SU3Data<S>,
    pub gamma: Angle<S>,
    /// The ansatz direction for the expected Lee form; reporting only.
    pub beta: Angle<S>,
    #[serde(with = "coeff_repr_field")]
    pub coeff_c: S,
    /// Four ±1 choices for the four summands.
    pub signs: [i8; 4],
    pub diff: DiffCoeffs<S>,
}

impl<S: Scalar> ProductModel<S> {
    pub fn new(
        su3: SU3Data<S>,
        gamma: Angle<S>,
        coeff_c: S,
        signs: [i8; 4],
        diff: DiffCoeffs<S>,
    ) -> Result<Self> {
        if signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::InvalidModel("signs must be ±1".into()));
        }
        Ok(Self {
            schema: 1,
            su3,
            gamma,
            beta: Angle::zero(),
            coeff_c,
            signs,
            diff,
        })
    }

    /// `u♭ = cos γ e⁷ + sin γ e⁸` embedded in the 8-frame.
    pub fn u_flat(&self) -> KForm<S> {
        one_form_78(self.gamma.cos().clone(), self.gamma.sin().clone())
    }

    /// `v♭ = -sin γ e⁷ + cos γ e⁸`.
    pub fn v_flat(&self) -> KForm<S> {
        one_form_78(-self.gamma.sin().clone(), self.gamma.cos().clone())
    }

    fn sign(&self, i: usize) -> S {
        S::from_int(self.signs[i] as i64)
    }

    /// `dω = p Ω₊ + q Ω₋` in the 6-frame.
    pub fn d_omega(&self) -> KForm<S> {
        self.su3
            .omega_plus()
            .scale(&self.diff.p)
            .add(&self.su3.omega_minus().scale(&self.diff.q))
            .expect("same frame")
    }

    /// `dΩ₋ = s ω∧ω` in the 6-frame.
    pub fn d_omega_minus(&self) -> KForm<S> {
        self.su3.omega_squared().scale(&self.diff.s)
    }
}

impl ProductModel<Rational> {
    pub fn to_float(&self) -> ProductModel<f64> {
        ProductModel {
            schema: self.schema,
            su3: self.su3.to_float(),
            gamma: Angle {
                cos: crate::exterior::scalar::rational_to_f64(self.gamma.cos()),
                sin: crate::exterior::scalar::rational_to_f64(self.gamma.sin()),
            },
            beta: Angle {
                cos: crate::exterior::scalar::rational_to_f64(self.beta.cos()),
                sin: crate::exterior::scalar::rational_to_f64(self.beta.sin()),
            },
            coeff_c: crate::exterior::scalar::rational_to_f64(&self.coeff_c),
            signs: self.signs,
            diff: DiffCoeffs {
                p: crate::exterior::scalar::rational_to_f64(&self.diff.p),
                q: crate::exterior::scalar::rational_to_f64(&self.diff.q),
                r: crate::exterior::scalar::rational_to_f64(&self.diff.r),
                s: crate::exterior::scalar::rational_to_f64(&self.diff.s),
            },
        }
    }
}

fn one_form_78<S: Scalar>(c7: S, c8: S) -> KForm<S> {
    KForm::from_components(8, 1, [(vec![7], c7), (vec![8], c8)]).expect("valid 1-form")
}

/// Assemble the ansatz 4-form on the 8-frame.
pub fn build_product_phi<S: Scalar>(model: &ProductModel<S>) -> Result<KForm<S>> {
    let omega = model.su3.omega().embed(8)?;
    let omega_plus = model.su3.omega_plus().embed(8)?;
    let omega_minus = model.su3.omega_minus().embed(8)?;
    let e78 = KForm::basis_element(8, &[7, 8])?;

    let block1 = omega.wedge(&e78)?.scale(&model.sign(0));
    let block2 = omega_plus.wedge(&model.u_flat())?.scale(&model.sign(1));
    let block3 = omega_minus.wedge(&model.v_flat())?.scale(&model.sign(2));
    let c = model.sign(3) * model.coeff_c.clone();
    let block4 = omega.wedge(&omega)?.scale(&c);
    block1.add(&block2)?.add(&block3)?.add(&block4)
}

/// Full Leibniz differential of the ansatz under the formal rules, including
/// the `2 c dω ∧ ω` contribution from `d(ω∧ω)`.
pub fn d_product_phi<S: Scalar>(model: &ProductModel<S>) -> Result<KForm<S>> {
    let d_omega = model.d_omega().embed(8)?;
    let d_omega_plus = model.su3.omega_squared().scale(&model.diff.r).embed(8)?;
    let d_omega_minus = model.su3.omega_squared().scale(&model.diff.s).embed(8)?;
    let omega = model.su3.omega().embed(8)?;
    let e78 = KForm::basis_element(8, &[7, 8])?;

    let block1 = d_omega.wedge(&e78)?.scale(&model.sign(0));
    let block2 = d_omega_plus.wedge(&model.u_flat())?.scale(&model.sign(1));
    let block3 = d_omega_minus.wedge(&model.v_flat())?.scale(&model.sign(2));
    let two_c = S::from_int(2) * model.sign(3) * model.coeff_c.clone();
    let block4 = d_omega.wedge(&omega)?.scale(&two_c);
    block1.add(&block2)?.add(&block3)?.add(&block4)
}

/// Optional single-index orientation flip applied to a candidate 4-form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relabel {
    None,
    FlipE7,
    FlipE8,
}

impl Relabel {
    fn flip_index(&self) -> Option<u8> {
        match self {
            Relabel::None => None,
            Relabel::FlipE7 => Some(7),
            Relabel::FlipE8 => Some(8),
        }
    }

    pub fn apply(&self, form: &KForm<Rational>) -> KForm<Rational> {
        let Some(index) = self.flip_index() else {
            return form.clone();
        };
        KForm::from_components(
            form.dimension(),
            form.degree(),
            form.iter().map(|(m, c)| {
                let flipped = m.indices().contains(&index);
                (
                    m.indices().to_vec(),
                    if flipped { -c.clone() } else { c.clone() },
                )
            }),
        )
        .expect("relabeling keeps canonical terms")
    }
}

/// One point of the convention search space.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Convention {
    pub signs: [i8; 4],
    pub coeff_c: CoeffRepr,
    pub relabel: Relabel,
}

impl Convention {
    pub fn coeff_c_rational(&self) -> Result<Rational> {
        Rational::from_repr(&self.coeff_c)
    }

    /// The candidate 4-form at `γ = 0` for the standard SU(3) data.
    pub fn build_phi(&self, su3: &SU3Data<Rational>) -> Result<KForm<Rational>> {
        let model = ProductModel::new(
            su3.clone(),
            Angle::zero(),
            self.coeff_c_rational()?,
            self.signs,
            DiffCoeffs::zero(),
        )?;
        Ok(self.relabel.apply(&build_product_phi(&model)?))
    }

    /// Express the convention as a product model. Orientation flips of e⁷/e⁸
    /// are absorbed into the summand signs, which is exact at any angle.
    pub fn to_product_model(
        &self,
        su3: SU3Data<Rational>,
        gamma: Angle<Rational>,
        diff: DiffCoeffs<Rational>,
    ) -> Result<ProductModel<Rational>> {
        let mut signs = self.signs;
        match self.relabel {
            Relabel::None => {}
            // e⁷ appears in ω∧e⁷⁸ and Ω₊∧u♭ (at γ = 0)
            Relabel::FlipE7 => {
                signs[0] = -signs[0];
                signs[1] = -signs[1];
            }
            // e⁸ appears in ω∧e⁷⁸ and Ω₋∧v♭ (at γ = 0)
            Relabel::FlipE8 => {
                signs[0] = -signs[0];
                signs[2] = -signs[2];
            }
        }
        ProductModel::new(su3, gamma, self.coeff_c_rational()?, signs, diff)
    }
}

/// Result of the exhaustive convention search.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReconcileReport {
    pub schema: u32,
    /// Every combination whose 4-form passed all admissibility checks.
    pub admissible: Vec<Convention>,
    /// Admissibility evidence for the literal choice: all signs +1 and a
    /// unit ω∧ω coefficient.
    pub literal_choice: AdmissibilityReport,
    pub literal_choice_admissible: bool,
    /// Number of combinations searched.
    pub searched: usize,
}

/// Exhaustively search signs in {±1}⁴, `c` in {±1, ±1/2} and optional
/// single-index orientation flips of e⁷/e⁸ for combinations that make the
/// ansatz admissible at `γ = 0`.
pub fn reconcile_cayley() -> Result<ReconcileReport> {
    let su3 = SU3Data::<Rational>::standard();
    let coeffs = [
        Rational::from_int(1),
        Rational::from_int(-1),
        Rational::ratio(1, 2),
        Rational::ratio(-1, 2),
    ];
    let relabels = [Relabel::None, Relabel::FlipE7, Relabel::FlipE8];
    let mut admissible = Vec::new();
    let mut searched = 0usize;
    for s1 in [1i8, -1] {
        for s2 in [1i8, -1] {
            for s3 in [1i8, -1] {
                for s4 in [1i8, -1] {
                    for c in &coeffs {
                        for relabel in relabels {
                            searched += 1;
                            let convention = Convention {
                                signs: [s1, s2, s3, s4],
                                coeff_c: c.to_repr(),
                                relabel,
                            };
                            let phi = convention.build_phi(&su3)?;
                            if check_admissible(&phi)?.verdict {
                                admissible.push(convention);
                            }
                        }
                    }
                }
            }
        }
    }
    let literal = Convention {
        signs: [1, 1, 1, 1],
        coeff_c: Rational::from_int(1).to_repr(),
        relabel: Relabel::None,
    };
    let literal_choice = check_admissible(&literal.build_phi(&su3)?)?;
    let literal_choice_admissible = literal_choice.verdict;
    Ok(ReconcileReport {
        schema: 1,
        admissible,
        literal_choice,
        literal_choice_admissible,
        searched,
    })
}

/// Deduplicate conventions by the 4-form they produce, preferring
/// representatives without orientation flips.
pub fn distinct_conventions(
    report: &ReconcileReport,
    su3: &SU3Data<Rational>,
) -> Result<Vec<(Convention, KForm<Rational>)>> {
    let mut out: Vec<(Convention, KForm<Rational>)> = Vec::new();
    let ordered = report
        .admissible
        .iter()
        .filter(|c| c.relabel == Relabel::None)
        .chain(
            report
                .admissible
                .iter()
                .filter(|c| c.relabel != Relabel::None),
        );
    for convention in ordered {
        let phi = convention.build_phi(su3)?;
        if !out.iter().any(|(_, seen)| *seen == phi) {
            out.push((convention.clone(), phi));
        }
    }
    Ok(out)
}
