//! Lie algebras given by structure constants, and the induced differential
//! on invariant forms.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exterior::{KForm, Rational};

/// A Lie algebra of dimension `n` with brackets
/// `[e_i, e_j] = Σ_k c^k_{ij} e_k`, constants stored for `i < j`.
///
/// The induced differential on invariant forms is
/// `d e^k = -Σ_{i<j} c^k_{ij} e^i ∧ e^j`, extended as a degree-one
/// antiderivation; `d² = 0` is equivalent to the Jacobi identity, which is
/// checked (and cached) before any differential is computed.
#[derive(Debug)]
pub struct LieAlgebra {
    n: u8,
    /// `(i, j, k) -> c^k_{ij}` with `i < j`, zero entries dropped.
    constants: BTreeMap<(u8, u8, u8), Rational>,
    jacobi: OnceLock<bool>,
    generator_differentials: Vec<KForm<Rational>>,
}

impl Clone for LieAlgebra {
    fn clone(&self) -> Self {
        Self {
            n: self.n,
            constants: self.constants.clone(),
            jacobi: OnceLock::new(),
            generator_differentials: self.generator_differentials.clone(),
        }
    }
}

impl LieAlgebra {
    pub fn new<I>(n: u8, constants: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((u8, u8, u8), Rational)>,
    {
        if n == 0 || n > crate::exterior::MAX_DIMENSION {
            return Err(Error::DimensionOutOfRange(n));
        }
        let mut map = BTreeMap::new();
        for ((i, j, k), c) in constants {
            if i == 0 || j == 0 || k == 0 || i > n || j > n || k > n {
                return Err(Error::IndexOutOfRange {
                    index: i.max(j).max(k),
                    n,
                });
            }
            if i >= j {
                return Err(Error::InvalidModel(format!(
                    "structure constant ({i},{j},{k}) requires i < j"
                )));
            }
            if !c.is_zero() {
                map.insert((i, j, k), c);
            }
        }
        let mut algebra = Self {
            n,
            constants: map,
            jacobi: OnceLock::new(),
            generator_differentials: Vec::new(),
        };
        algebra.generator_differentials = (1..=n)
            .map(|k| algebra.compute_generator_differential(k))
            .collect::<Result<_>>()?;
        Ok(algebra)
    }

    pub fn abelian(n: u8) -> Self {
        Self::new(n, []).expect("abelian constants are valid")
    }

    pub fn dimension(&self) -> u8 {
        self.n
    }

    pub fn constants(&self) -> &BTreeMap<(u8, u8, u8), Rational> {
        &self.constants
    }

    /// `[e_i, e_j]` as a coefficient vector, for any index order.
    pub fn bracket(&self, i: u8, j: u8) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.n as usize];
        if i == j {
            return out;
        }
        let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
        for k in 1..=self.n {
            if let Some(c) = self.constants.get(&(a, b, k)) {
                let value = if sign < 0 { -c.clone() } else { c.clone() };
                out[(k - 1) as usize] = value;
            }
        }
        out
    }

    /// Exact check of `Σ_cyc [[e_i, e_j], e_k] = 0` over all triples.
    pub fn jacobi_check(&self) -> bool {
        *self.jacobi.get_or_init(|| {
            for i in 1..=self.n {
                for j in (i + 1)..=self.n {
                    for k in (j + 1)..=self.n {
                        let mut total = vec![Rational::zero(); self.n as usize];
                        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                            let inner = self.bracket(a, b);
                            for (m, coeff) in inner.iter().enumerate() {
                                if coeff.is_zero() {
                                    continue;
                                }
                                let outer = self.bracket(m as u8 + 1, c);
                                for (l, v) in outer.iter().enumerate() {
                                    if !v.is_zero() {
                                        total[l] = total[l].clone() + coeff.clone() * v.clone();
                                    }
                                }
                            }
                        }
                        if total.iter().any(|x| !x.is_zero()) {
                            return false;
                        }
                    }
                }
            }
            true
        })
    }

    fn compute_generator_differential(&self, k: u8) -> Result<KForm<Rational>> {
        let mut out = KForm::zero(self.n, 2);
        for (&(i, j, target), c) in &self.constants {
            if target == k {
                let term = KForm::from_components(self.n, 2, [(vec![i, j], -c.clone())])?;
                out = out.add(&term)?;
            }
        }
        Ok(out)
    }

    /// `d e^k`, precomputed at construction.
    pub fn generator_differential(&self, k: u8) -> Result<&KForm<Rational>> {
        if k == 0 || k > self.n {
            return Err(Error::IndexOutOfRange {
                index: k,
                n: self.n,
            });
        }
        Ok(&self.generator_differentials[(k - 1) as usize])
    }

    /// The invariant-form differential. Requires the Jacobi identity.
    pub fn differential(&self, a: &KForm<Rational>) -> Result<KForm<Rational>> {
        if !self.jacobi_check() {
            return Err(Error::JacobiFailure);
        }
        self.differential_unchecked(a)
    }

    /// Same antiderivation without the Jacobi gate; used by tests that probe
    /// how `d² ≠ 0` signals a broken algebra.
    pub fn differential_unchecked(&self, a: &KForm<Rational>) -> Result<KForm<Rational>> {
        if a.dimension() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: a.dimension(),
            });
        }
        let degree = a.degree();
        let mut out = KForm::zero(self.n, degree + 1);
        for (mono, coeff) in a.iter() {
            let indices = mono.indices();
            for (pos, &idx) in indices.iter().enumerate() {
                let dgen = &self.generator_differentials[(idx - 1) as usize];
                if dgen.is_zero() {
                    continue;
                }
                let prefix: Vec<u8> = indices[..pos].to_vec();
                let suffix: Vec<u8> = indices[pos + 1..].to_vec();
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                let prefix_form = monomial_form(self.n, &prefix)?;
                let suffix_form = monomial_form(self.n, &suffix)?;
                let piece = prefix_form.wedge(dgen)?.wedge(&suffix_form)?;
                let scaled = piece.scale(&if sign < 0 {
                    -coeff.clone()
                } else {
                    coeff.clone()
                });
                out = out.add(&scaled)?;
            }
        }
        Ok(out)
    }
}

fn monomial_form(n: u8, indices: &[u8]) -> Result<KForm<Rational>> {
    if indices.is_empty() {
        Ok(KForm::constant(n, Rational::one()))
    } else {
        KForm::basis_element(n, indices)
    }
}

/// Parse the textual Lie-algebra format:
///
/// ```text
/// # comment
/// dim 6
/// 1 2 3 1      # [e_1, e_2] has e_3-coefficient 1
/// 1 3 2 -1/2
/// ```
///
/// The header `dim n` comes first; each following line is `i j k p/q` with
/// `i < j`.
pub fn parse_lie(text: &str) -> Result<LieAlgebra> {
    let mut dim: Option<u8> = None;
    let mut constants = Vec::new();
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fail = |message: &str| Error::Parse {
            line: line_no + 1,
            message: message.into(),
        };
        if dim.is_none() {
            let rest = line
                .strip_prefix("dim")
                .ok_or_else(|| fail("expected header `dim n`"))?
                .trim();
            let n: u8 = rest.parse().map_err(|_| fail("invalid dimension"))?;
            dim = Some(n);
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(fail("expected `i j k p/q`"));
        }
        let i: u8 = fields[0].parse().map_err(|_| fail("invalid index i"))?;
        let j: u8 = fields[1].parse().map_err(|_| fail("invalid index j"))?;
        let k: u8 = fields[2].parse().map_err(|_| fail("invalid index k"))?;
        let c = crate::exterior::parse_rational(fields[3])
            .map_err(|e| fail(&format!("invalid coefficient: {e}")))?;
        constants.push(((i, j, k), c));
    }
    let n = dim.ok_or(Error::Parse {
        line: 0,
        message: "missing `dim n` header".into(),
    })?;
    LieAlgebra::new(n, constants)
}

/// su(2): `[e_1,e_2] = e_3`, `[e_2,e_3] = e_1`, `[e_3,e_1] = e_2`.
pub fn su2_constants(offset: u8) -> Vec<((u8, u8, u8), Rational)> {
    let one = Rational::one();
    vec![
        ((offset + 1, offset + 2, offset + 3), one.clone()),
        ((offset + 2, offset + 3, offset + 1), one.clone()),
        ((offset + 1, offset + 3, offset + 2), -one),
    ]
}
