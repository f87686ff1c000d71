//! The Lee-form linear solver and the relation scanner over the product
//! ansatz.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::scalar::CoeffRepr;
use crate::exterior::{FormOperator, KForm, Matrix, Monomial, Rational, Scalar};

use super::classify::{classify, FernandezClass};
use super::product::{
    build_product_phi, d_product_phi, Angle, Convention, DiffCoeffs, ProductModel,
};
use super::su3::{nearly_kahler_check, NearlyKahlerResult, SU3Data};

/// Least-squares solution of `dφ = θ ∧ φ` over 1-forms `θ`, in the canonical
/// monomial basis. Exact in rational mode. Returns `(θ, squared residual)`;
/// a nonzero residual means `dφ` has no conformal factorization.
///
/// The wedge side is fixed as `θ ∧ φ`; for a 4-form `φ` this equals `φ ∧ θ`,
/// so the two possible conventions coincide here.
pub fn solve_lee<S: Scalar>(dphi: &KForm<S>, phi: &KForm<S>) -> Result<(KForm<S>, S)> {
    if phi.degree() != 4 || phi.dimension() != 8 {
        return Err(Error::DegreeMismatch {
            expected: 4,
            found: phi.degree(),
        });
    }
    if dphi.degree() != 5 || dphi.dimension() != 8 {
        return Err(Error::DegreeMismatch {
            expected: 5,
            found: dphi.degree(),
        });
    }
    let op = FormOperator::from_map(8, 1, 5, |theta| theta.wedge(phi))?;
    let rhs: Vec<S> = Monomial::basis(8, 5).iter().map(|m| dphi.term(m)).collect();
    let (coords, residual) = op.matrix().least_squares(&rhs)?;
    let theta = KForm::from_components(
        8,
        1,
        coords
            .into_iter()
            .enumerate()
            .map(|(i, c)| (vec![i as u8 + 1], c)),
    )?;
    Ok((theta, residual))
}

/// Cached normal-equation solver for one wedge operator, reused across a
/// whole grid.
struct CachedLeeSolver<S: Scalar> {
    m: Matrix<S>,
    mt: Matrix<S>,
    normal_inv: Matrix<S>,
}

impl<S: Scalar> CachedLeeSolver<S> {
    fn new(m: Matrix<S>) -> Result<Self> {
        let mt = m.transpose();
        let normal_inv = mt.mul(&m)?.inverse()?;
        Ok(Self { m, mt, normal_inv })
    }

    /// Returns `(solution, residual vector, squared residual)`.
    fn solve(&self, b: &[S]) -> Result<(Vec<S>, Vec<S>, S)> {
        let x = self.normal_inv.mul_vec(&self.mt.mul_vec(b)?)?;
        let fitted = self.m.mul_vec(&x)?;
        let mut residual_vec = Vec::with_capacity(b.len());
        let mut residual2 = S::zero();
        for (bi, fi) in b.iter().zip(&fitted) {
            let d = bi.clone() - fi.clone();
            residual2 = residual2 + d.clone() * d.clone();
            residual_vec.push(d);
        }
        Ok((x, residual_vec, residual2))
    }
}

/// The scalar values each of `p, q, r, s` ranges over.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    values: Vec<Rational>,
}

impl GridSpec {
    /// `{-2, -1, -1/2, 0, 1/2, 1, 2}`: contains the derived relation points
    /// and scans in seconds.
    pub fn default_grid() -> Self {
        Self::new(vec![
            Rational::from_int(-2),
            Rational::from_int(-1),
            Rational::ratio(-1, 2),
            Rational::zero(),
            Rational::ratio(1, 2),
            Rational::from_int(1),
            Rational::from_int(2),
        ])
        .expect("default grid is nonempty")
    }

    pub fn new(mut values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidModel("empty grid".into()));
        }
        values.sort();
        values.dedup();
        Ok(Self { values })
    }

    /// Parse a comma-separated value list, e.g. `-1,0,1/2,1`.
    pub fn parse(text: &str) -> Result<Self> {
        let values = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(crate::exterior::parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Self::new(values)
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// How the solved Lee form is reported against the angle ansatz.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaMode {
    /// Compare against `u♭` and report the proportionality factor.
    UFlat,
    /// Report the raw `(e⁷, e⁸)` components.
    GeneralBeta,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanPoint {
    pub p: CoeffRepr,
    pub q: CoeffRepr,
    pub r: CoeffRepr,
    pub s: CoeffRepr,
    /// Squared residual of the best conformal factorization.
    pub residual: CoeffRepr,
    pub zero_residual: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<KForm<Rational>>,
    /// The solved Lee form has no components along `e¹..e⁶`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_normal: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dtheta_zero: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fernandez_class: Option<FernandezClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nearly_kahler: Option<NearlyKahlerResult>,
    /// `θ = c · u♭`: the factor `c` (UFlat mode, when proportional).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_u_flat_multiple: Option<CoeffRepr>,
    /// Raw `(θ₇, θ₈)` components (GeneralBeta mode).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_flat_components: Option<[CoeffRepr; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConventionScan {
    pub convention: Convention,
    pub phi: KForm<Rational>,
    /// Rank of `θ ↦ θ ∧ φ` on 1-forms (8 = injective, solutions unique).
    pub lee_map_rank: usize,
    /// Human-readable linear constraints cutting out the zero-residual locus,
    /// e.g. `q - 2r = 0`.
    pub locus_constraints: Vec<String>,
    /// Basis of the zero-residual subspace in `(p, q, r, s)`.
    pub locus_directions: Vec<[CoeffRepr; 4]>,
    pub zero_residual_count: usize,
    /// Zero-residual points with a nonzero Lee form.
    pub locus_count: usize,
    pub points: Vec<ScanPoint>,
}

/// One floating-point sweep at a sampled angle, checked against the exact
/// locus computed at `γ = 0`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FloatSweepReport {
    pub convention_index: usize,
    pub gamma_radians: f64,
    pub zero_residual_count: usize,
    pub agrees_with_exact_locus: bool,
    pub all_locus_theta_normal: bool,
    pub max_residual_on_locus: f64,
    pub min_residual_off_locus: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct FloatSweepConfig {
    pub tolerance: f64,
    pub angle_samples: usize,
}

impl Default for FloatSweepConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-9,
            angle_samples: 8,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanReport {
    pub schema: u32,
    pub mode: String,
    pub theta_mode: ThetaMode,
    pub grid_values: Vec<CoeffRepr>,
    pub conventions: Vec<ConventionScan>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub float_sweeps: Option<Vec<FloatSweepReport>>,
}

/// Scan the formal-differential grid under every given convention: solve for
/// the Lee form at each grid point, report the zero-residual locus and its
/// linear relations, classify each locus point and run the nearly Kähler
/// test on the induced data.
///
/// Grid points are visited in sorted order and the report ordering is
/// deterministic. With a float config, the same grid is additionally swept
/// at equispaced angles `γ` in floating point and checked against the exact
/// locus.
pub fn theorem_scan(
    su3: &SU3Data<Rational>,
    conventions: &[Convention],
    grid: &GridSpec,
    theta_mode: ThetaMode,
    float_sweep: Option<FloatSweepConfig>,
) -> Result<ScanReport> {
    if conventions.is_empty() {
        return Err(Error::InvalidModel("empty conventions list".into()));
    }
    if grid.is_empty() {
        return Err(Error::InvalidModel("empty grid".into()));
    }
    let basis5 = Monomial::basis(8, 5);
    let mut convention_scans = Vec::new();
    let mut exact_locus_sets: Vec<Vec<bool>> = Vec::new();

    for convention in conventions {
        let base_model =
            convention.to_product_model(su3.clone(), Angle::zero(), DiffCoeffs::zero())?;
        let phi = build_product_phi(&base_model)?;
        let wedge_op = FormOperator::from_map(8, 1, 5, |theta| theta.wedge(&phi))?;
        let lee_map_rank = wedge_op.rank();
        let solver = CachedLeeSolver::new(wedge_op.matrix().clone())?;

        // the four unit differential directions and their residual vectors
        let directions = unit_directions(&base_model, &basis5)?;
        let mut residual_columns = Vec::new();
        for d in &directions {
            let (_, res_vec, _) = solver.solve(d)?;
            residual_columns.push(res_vec);
        }
        let residual_matrix = Matrix::from_rows(
            (0..basis5.len())
                .map(|i| residual_columns.iter().map(|c| c[i].clone()).collect())
                .collect(),
        )?;
        let locus_directions_raw = residual_matrix.null_space();
        let (rref, pivots) = residual_matrix.reduced_row_echelon();
        let locus_constraints = constraint_strings(&rref, &pivots);

        let mut points = Vec::new();
        let mut zero_residual_count = 0usize;
        let mut locus_count = 0usize;
        let mut locus_flags = Vec::new();
        for (p, q, r, s) in grid_points(grid) {
            let coeffs = DiffCoeffs::new(p.clone(), q.clone(), r.clone(), s.clone());
            let rhs = combine(&directions, &[&p, &q, &r, &s]);
            let (theta_coords, _, residual2) = solver.solve(&rhs)?;
            let zero_residual = residual2.is_zero();
            let mut point = ScanPoint {
                p: p.to_repr(),
                q: q.to_repr(),
                r: r.to_repr(),
                s: s.to_repr(),
                residual: residual2.to_repr(),
                zero_residual,
                theta: None,
                theta_normal: None,
                dtheta_zero: None,
                fernandez_class: None,
                nearly_kahler: None,
                theta_u_flat_multiple: None,
                theta_flat_components: None,
            };
            if zero_residual {
                zero_residual_count += 1;
                let theta = KForm::from_components(
                    8,
                    1,
                    theta_coords
                        .iter()
                        .enumerate()
                        .map(|(i, c)| (vec![i as u8 + 1], c.clone())),
                )?;
                let theta_nonzero = !theta.is_zero();
                if theta_nonzero {
                    locus_count += 1;
                }
                point.theta_normal = Some(theta_coords[..6].iter().all(|c| c.is_zero()));
                let model = convention.to_product_model(su3.clone(), Angle::zero(), coeffs)?;
                let dphi = d_product_phi(&model)?;
                let report = classify(&phi, &dphi, &model)?;
                point.dtheta_zero = report.dtheta_zero;
                point.fernandez_class = Some(report.fernandez_class);
                let d_omega = model.d_omega();
                let d_omega_minus = model.d_omega_minus();
                point.nearly_kahler =
                    Some(nearly_kahler_check(su3, &d_omega, &d_omega_minus, 0.0)?);
                match theta_mode {
                    ThetaMode::UFlat => {
                        let u = model.u_flat();
                        point.theta_u_flat_multiple =
                            proportionality(&theta, &u).map(|c| c.to_repr());
                    }
                    ThetaMode::GeneralBeta => {
                        point.theta_flat_components =
                            Some([theta_coords[6].to_repr(), theta_coords[7].to_repr()]);
                    }
                }
                point.theta = Some(theta);
            }
            locus_flags.push(zero_residual);
            points.push(point);
        }
        exact_locus_sets.push(locus_flags);
        convention_scans.push(ConventionScan {
            convention: convention.clone(),
            phi,
            lee_map_rank,
            locus_constraints,
            locus_directions: locus_directions_raw
                .into_iter()
                .map(|v| {
                    [
                        v[0].to_repr(),
                        v[1].to_repr(),
                        v[2].to_repr(),
                        v[3].to_repr(),
                    ]
                })
                .collect(),
            zero_residual_count,
            locus_count,
            points,
        });
    }

    let float_sweeps = match float_sweep {
        None => None,
        Some(config) => Some(run_float_sweeps(
            su3,
            conventions,
            grid,
            &exact_locus_sets,
            config,
        )?),
    };

    Ok(ScanReport {
        schema: 1,
        mode: if float_sweeps.is_some() {
            "float".into()
        } else {
            "exact".into()
        },
        theta_mode,
        grid_values: grid.values().iter().map(|v| v.to_repr()).collect(),
        conventions: convention_scans,
        float_sweeps,
    })
}

fn run_float_sweeps(
    su3: &SU3Data<Rational>,
    conventions: &[Convention],
    grid: &GridSpec,
    exact_locus_sets: &[Vec<bool>],
    config: FloatSweepConfig,
) -> Result<Vec<FloatSweepReport>> {
    let basis5 = Monomial::basis(8, 5);
    let grid_f: Vec<f64> = grid
        .values()
        .iter()
        .map(crate::exterior::scalar::rational_to_f64)
        .collect();
    let mut sweeps = Vec::new();
    for (ci, convention) in conventions.iter().enumerate() {
        for k in 0..config.angle_samples {
            let gamma = 2.0 * std::f64::consts::PI * k as f64 / config.angle_samples as f64;
            let base = convention
                .to_product_model(su3.clone(), Angle::zero(), DiffCoeffs::zero())?
                .to_float();
            let model = ProductModel {
                gamma: Angle::from_radians(gamma),
                ..base
            };
            let phi = build_product_phi(&model)?;
            let wedge_op = FormOperator::from_map(8, 1, 5, |theta| theta.wedge(&phi))?;
            let solver = CachedLeeSolver::new(wedge_op.matrix().clone())?;
            let directions = unit_float_directions(&model, &basis5)?;

            let mut zero_residual_count = 0usize;
            let mut agrees = true;
            let mut all_normal = true;
            let mut max_on_locus = 0.0f64;
            let mut min_off_locus = f64::INFINITY;
            let mut index = 0usize;
            for p in &grid_f {
                for q in &grid_f {
                    for r in &grid_f {
                        for s in &grid_f {
                            let rhs = combine(&directions, &[p, q, r, s]);
                            let (theta_coords, _, residual2) = solver.solve(&rhs)?;
                            let zero = residual2.is_negligible(config.tolerance);
                            if zero {
                                zero_residual_count += 1;
                                max_on_locus = max_on_locus.max(residual2);
                                if !theta_coords[..6]
                                    .iter()
                                    .all(|c| c.is_negligible(config.tolerance))
                                {
                                    all_normal = false;
                                }
                            } else {
                                min_off_locus = min_off_locus.min(residual2);
                            }
                            if zero != exact_locus_sets[ci][index] {
                                agrees = false;
                            }
                            index += 1;
                        }
                    }
                }
            }
            sweeps.push(FloatSweepReport {
                convention_index: ci,
                gamma_radians: gamma,
                zero_residual_count,
                agrees_with_exact_locus: agrees,
                all_locus_theta_normal: all_normal,
                max_residual_on_locus: max_on_locus,
                min_residual_off_locus: min_off_locus,
            });
        }
    }
    Ok(sweeps)
}

fn grid_points(
    grid: &GridSpec,
) -> impl Iterator<Item = (Rational, Rational, Rational, Rational)> + '_ {
    let values = grid.values();
    values.iter().flat_map(move |p| {
        values.iter().flat_map(move |q| {
            values.iter().flat_map(move |r| {
                values
                    .iter()
                    .map(move |s| (p.clone(), q.clone(), r.clone(), s.clone()))
            })
        })
    })
}

/// Coordinate vectors (in the 5-form basis) of `dΦ` for unit `p`, `q`, `r`, `s`.
fn unit_directions(
    base: &ProductModel<Rational>,
    basis5: &[Monomial],
) -> Result<Vec<Vec<Rational>>> {
    let mut out = Vec::with_capacity(4);
    for unit in unit_diffs::<Rational>() {
        let model = ProductModel {
            diff: unit,
            ..base.clone()
        };
        let dphi = d_product_phi(&model)?;
        out.push(basis5.iter().map(|m| dphi.term(m)).collect());
    }
    Ok(out)
}

fn unit_float_directions(base: &ProductModel<f64>, basis5: &[Monomial]) -> Result<Vec<Vec<f64>>> {
    let mut out = Vec::with_capacity(4);
    for unit in unit_diffs::<f64>() {
        let model = ProductModel {
            diff: unit,
            ..base.clone()
        };
        let dphi = d_product_phi(&model)?;
        out.push(basis5.iter().map(|m| dphi.term(m)).collect());
    }
    Ok(out)
}

fn unit_diffs<S: Scalar>() -> [DiffCoeffs<S>; 4] {
    [
        DiffCoeffs::new(S::one(), S::zero(), S::zero(), S::zero()),
        DiffCoeffs::new(S::zero(), S::one(), S::zero(), S::zero()),
        DiffCoeffs::new(S::zero(), S::zero(), S::one(), S::zero()),
        DiffCoeffs::new(S::zero(), S::zero(), S::zero(), S::one()),
    ]
}

fn combine<S: Scalar>(directions: &[Vec<S>], weights: &[&S]) -> Vec<S> {
    let len = directions[0].len();
    (0..len)
        .map(|i| {
            let mut acc = S::zero();
            for (d, w) in directions.iter().zip(weights) {
                if !d[i].is_zero() {
                    acc = acc + d[i].clone() * (*w).clone();
                }
            }
            acc
        })
        .collect()
}

fn proportionality<S: Scalar>(a: &KForm<S>, b: &KForm<S>) -> Option<S> {
    let (mono, coeff) = b.iter().next()?;
    if coeff.is_zero() {
        return None;
    }
    let c = a.term(mono) / coeff.clone();
    if *a == b.scale(&c) {
        Some(c)
    } else {
        None
    }
}

fn constraint_strings(rref: &Matrix<Rational>, pivots: &[usize]) -> Vec<String> {
    let names = ["p", "q", "r", "s"];
    (0..pivots.len())
        .map(|row| {
            let mut parts = Vec::new();
            for col in 0..rref.cols() {
                let c = rref.get(row, col);
                if c.is_zero() {
                    continue;
                }
                let name = names[col];
                let piece = if c == &Rational::from_int(1) {
                    name.to_string()
                } else if c == &Rational::from_int(-1) {
                    format!("-{name}")
                } else {
                    format!("{c}*{name}")
                };
                if parts.is_empty() {
                    parts.push(piece);
                } else if let Some(rest) = piece.strip_prefix('-') {
                    parts.push(format!("- {rest}"));
                } else {
                    parts.push(format!("+ {piece}"));
                }
            }
            format!("{} = 0", parts.join(" "))
        })
        .collect()
}
