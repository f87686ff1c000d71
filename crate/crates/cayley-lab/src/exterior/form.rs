//! Sparse homogeneous differential forms with constant coefficients.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exterior::monomial::{validate_dimension, Monomial};
use crate::exterior::scalar::{rational_to_f64, CoeffRepr, Rational, Scalar};
use crate::exterior::vector::Vector;

/// A degree-`k` form on an oriented orthonormal `n`-frame, stored as a sparse
/// map from canonical monomials to coefficients.
///
/// Invariants: every stored monomial has degree `k`, no zero coefficients are
/// kept, and `k <= n` whenever the form is nonzero (a formal zero form may
/// carry a degree above `n`, e.g. as the result of an overflowing wedge).
#[derive(Debug, Clone, PartialEq)]
pub struct KForm<S: Scalar> {
    n: u8,
    degree: u8,
    terms: BTreeMap<Monomial, S>,
}

impl<S: Scalar> KForm<S> {
    pub fn zero(n: u8, degree: u8) -> Self {
        Self {
            n,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Degree-0 form holding a single scalar.
    pub fn constant(n: u8, value: S) -> Self {
        let mut form = Self::zero(n, 0);
        if !value.is_zero() {
            form.terms.insert(Monomial::scalar_unit(n), value);
        }
        form
    }

    /// The volume form `dx^{1...n}`.
    pub fn volume(n: u8) -> Self {
        let mut form = Self::zero(n, n);
        form.terms.insert(Monomial::volume(n), S::one());
        form
    }

    /// Build from `(indices, coefficient)` pairs; indices may be unsorted and
    /// are canonicalized with sign absorption. All terms must share degree.
    pub fn from_components<I>(n: u8, degree: u8, components: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u8>, S)>,
    {
        validate_dimension(n)?;
        let mut terms: BTreeMap<Monomial, S> = BTreeMap::new();
        for (indices, coeff) in components {
            if indices.len() as u8 != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: indices.len() as u8,
                });
            }
            let (sign, mono) = Monomial::from_unsorted(n, &indices)?;
            let signed = if sign < 0 { -coeff } else { coeff };
            merge_term(&mut terms, mono, signed);
        }
        if degree > n && !terms.is_empty() {
            return Err(Error::DegreeOutOfRange { degree, n });
        }
        Ok(Self { n, degree, terms })
    }

    /// Convenience constructor with integer coefficients.
    pub fn from_int_components(n: u8, degree: u8, components: &[(&[u8], i64)]) -> Result<Self> {
        Self::from_components(
            n,
            degree,
            components
                .iter()
                .map(|(idx, c)| (idx.to_vec(), S::from_int(*c))),
        )
    }

    /// A single basis monomial with coefficient one.
    pub fn basis_element(n: u8, indices: &[u8]) -> Result<Self> {
        Self::from_components(n, indices.len() as u8, [(indices.to_vec(), S::one())])
    }

    pub fn dimension(&self) -> u8 {
        self.n
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &S)> {
        self.terms.iter()
    }

    /// Coefficient of a canonical monomial (zero when absent).
    pub fn term(&self, monomial: &Monomial) -> S {
        self.terms.get(monomial).cloned().unwrap_or_else(S::zero)
    }

    /// Coefficient against a possibly unsorted index list, sign-adjusted.
    /// A repeated index yields zero.
    pub fn coefficient(&self, indices: &[u8]) -> S {
        match Monomial::from_unsorted(self.n, indices) {
            Ok((sign, mono)) => {
                let c = self.term(&mono);
                if sign < 0 {
                    -c
                } else {
                    c
                }
            }
            Err(_) => S::zero(),
        }
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut terms = self.terms.clone();
        for (mono, coeff) in &other.terms {
            merge_term(&mut terms, mono.clone(), coeff.clone());
        }
        Ok(Self {
            n: self.n,
            degree: self.degree,
            terms,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), -c.clone()))
            .collect();
        Self {
            n: self.n,
            degree: self.degree,
            terms,
        }
    }

    pub fn scale(&self, factor: &S) -> Self {
        if factor.is_zero() {
            return Self::zero(self.n, self.degree);
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone() * factor.clone()))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Self {
            n: self.n,
            degree: self.degree,
            terms,
        }
    }

    /// Graded-commutative exterior product. When the degrees overflow `n`
    /// the result is the zero form of that (formal) degree.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let degree = self.degree + other.degree;
        let mut out = Self::zero(self.n, degree);
        if degree > self.n {
            return Ok(out);
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((sign, mono)) = ma.wedge(mb) {
                    let mut coeff = ca.clone() * cb.clone();
                    if sign < 0 {
                        coeff = -coeff;
                    }
                    merge_term(&mut out.terms, mono, coeff);
                }
            }
        }
        Ok(out)
    }

    /// Hodge star for the orthonormal metric, orientation `dx^1 ∧ ... ∧ dx^n`.
    pub fn hodge(&self) -> Result<Self> {
        if self.degree > self.n {
            return Err(Error::DegreeOutOfRange {
                degree: self.degree,
                n: self.n,
            });
        }
        let mut out = Self::zero(self.n, self.n - self.degree);
        for (mono, coeff) in &self.terms {
            let (sign, dual) = mono.hodge();
            let c = if sign < 0 {
                -coeff.clone()
            } else {
                coeff.clone()
            };
            merge_term(&mut out.terms, dual, c);
        }
        Ok(out)
    }

    /// Inverse of the Hodge star from degree `n - k` back to `k`.
    pub fn inv_hodge(&self) -> Result<Self> {
        let k = self.n - self.degree;
        let sign = (k as u32 * (self.n - k) as u32) % 2;
        let star = self.hodge()?;
        Ok(if sign == 0 { star } else { star.neg() })
    }

    /// Interior product `ι_v` (degree-lowering antiderivation).
    pub fn interior(&self, v: &Vector<S>) -> Result<Self> {
        if v.dimension() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.dimension(),
            });
        }
        if self.degree == 0 {
            return Ok(Self::zero(self.n, 0));
        }
        let mut out = Self::zero(self.n, self.degree - 1);
        for (mono, coeff) in &self.terms {
            for &i in mono.indices() {
                let vi = v.component(i);
                if vi.is_zero() {
                    continue;
                }
                let (sign, reduced) = mono.contract(i).expect("index present");
                let mut c = coeff.clone() * vi;
                if sign < 0 {
                    c = -c;
                }
                merge_term(&mut out.terms, reduced, c);
            }
        }
        Ok(out)
    }

    /// Pairing of same-degree forms for which the basis monomials are
    /// orthonormal.
    pub fn inner(&self, other: &Self) -> Result<S> {
        self.check_same_shape(other)?;
        let mut acc = S::zero();
        for (mono, coeff) in &self.terms {
            if let Some(c) = other.terms.get(mono) {
                acc = acc + coeff.clone() * c.clone();
            }
        }
        Ok(acc)
    }

    /// Squared norm `⟨a, a⟩`.
    pub fn norm2(&self) -> S {
        let mut acc = S::zero();
        for coeff in self.terms.values() {
            acc = acc + coeff.clone() * coeff.clone();
        }
        acc
    }

    /// Coefficient of the volume monomial of a top-degree form.
    pub fn volume_coefficient(&self) -> Result<S> {
        if self.degree != self.n {
            return Err(Error::DegreeMismatch {
                expected: self.n,
                found: self.degree,
            });
        }
        Ok(self.term(&Monomial::volume(self.n)))
    }

    /// Reinterpret in a larger frame, keeping all indices.
    pub fn embed(&self, n: u8) -> Result<Self> {
        if n < self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: n,
            });
        }
        let mut terms = BTreeMap::new();
        for (mono, coeff) in &self.terms {
            terms.insert(mono.with_dimension(n)?, coeff.clone());
        }
        Ok(Self {
            n,
            degree: self.degree,
            terms,
        })
    }

    /// Drop terms whose coefficients are negligible at `tol`. Exact forms are
    /// returned unchanged apart from exact zeros (already absent).
    pub fn chop(&self, tol: f64) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(_, c)| !c.is_negligible(tol))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Self {
            n: self.n,
            degree: self.degree,
            terms,
        }
    }
}

impl KForm<Rational> {
    /// Lossy conversion for float-mode sweeps.
    pub fn to_float(&self) -> KForm<f64> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), rational_to_f64(c)))
            .filter(|(_, c)| *c != 0.0)
            .collect();
        KForm {
            n: self.n,
            degree: self.degree,
            terms,
        }
    }
}

/// `ι_v a`, spelled with the vector first as in the usual notation.
pub fn interior<S: Scalar>(v: &Vector<S>, a: &KForm<S>) -> Result<KForm<S>> {
    a.interior(v)
}

fn merge_term<S: Scalar>(terms: &mut BTreeMap<Monomial, S>, mono: Monomial, coeff: S) {
    if coeff.is_zero() {
        return;
    }
    match terms.entry(mono) {
        std::collections::btree_map::Entry::Vacant(slot) => {
            slot.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut slot) => {
            let merged = slot.get().clone() + coeff;
            if merged.is_zero() {
                slot.remove();
            } else {
                slot.insert(merged);
            }
        }
    }
}

impl<S: Scalar> fmt::Display for KForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in &self.terms {
            let cs = coeff.to_string();
            let (neg, magnitude) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mono.degree() == 0 {
                write!(f, "{magnitude}")?;
            } else {
                if magnitude != "1" {
                    write!(f, "{magnitude} ")?;
                }
                if mono.indices().iter().all(|&i| i <= 9) {
                    let digits: String = mono.indices().iter().map(|i| i.to_string()).collect();
                    write!(f, "dx^{{{digits}}}")?;
                } else {
                    let parts: Vec<String> = mono.indices().iter().map(|i| i.to_string()).collect();
                    write!(f, "dx^{{{}}}", parts.join(","))?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    idx: Vec<u8>,
    c: CoeffRepr,
}

#[derive(Serialize, Deserialize)]
struct FormJson {
    n: u8,
    k: u8,
    terms: Vec<TermJson>,
}

impl<S: Scalar> Serialize for KForm<S> {
    fn serialize<Ser: Serializer>(
        &self,
        serializer: Ser,
    ) -> std::result::Result<Ser::Ok, Ser::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                idx: m.indices().to_vec(),
                c: c.to_repr(),
            })
            .collect();
        FormJson {
            n: self.n,
            k: self.degree,
            terms,
        }
        .serialize(serializer)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for KForm<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = FormJson::deserialize(deserializer)?;
        let components = raw
            .terms
            .into_iter()
            .map(|t| S::from_repr(&t.c).map(|c| (t.idx, c)))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        KForm::from_components(raw.n, raw.k, components).map_err(D::Error::custom)
    }
}
