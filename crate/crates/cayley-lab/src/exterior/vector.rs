//! Tangent vectors against the orthonormal frame `e_1 .. e_n`.

use crate::error::{Error, Result};
use crate::exterior::form::KForm;
use crate::exterior::monomial::validate_dimension;
use crate::exterior::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Vector<S: Scalar> {
    components: Vec<S>,
}

impl<S: Scalar> Vector<S> {
    pub fn new(components: Vec<S>) -> Result<Self> {
        validate_dimension(components.len() as u8)?;
        Ok(Self { components })
    }

    pub fn zero(n: u8) -> Result<Self> {
        validate_dimension(n)?;
        Ok(Self {
            components: (0..n).map(|_| S::zero()).collect(),
        })
    }

    /// The frame vector `e_index` (1-based).
    pub fn basis(n: u8, index: u8) -> Result<Self> {
        validate_dimension(n)?;
        if index == 0 || index > n {
            return Err(Error::IndexOutOfRange { index, n });
        }
        let components = (1..=n)
            .map(|i| if i == index { S::one() } else { S::zero() })
            .collect();
        Ok(Self { components })
    }

    pub fn from_ints(components: &[i64]) -> Result<Self> {
        Self::new(components.iter().map(|&c| S::from_int(c)).collect())
    }

    pub fn dimension(&self) -> u8 {
        self.components.len() as u8
    }

    /// Component against `e_index` (1-based).
    pub fn component(&self, index: u8) -> S {
        self.components[(index - 1) as usize].clone()
    }

    pub fn components(&self) -> &[S] {
        &self.components
    }

    /// Musical isomorphism: `e_i ↦ dx^i` for the orthonormal metric.
    pub fn flat(&self) -> KForm<S> {
        let n = self.dimension();
        KForm::from_components(
            n,
            1,
            self.components
                .iter()
                .enumerate()
                .map(|(i, c)| (vec![i as u8 + 1], c.clone())),
        )
        .expect("1-form components are valid")
    }
}

/// Inverse musical isomorphism on 1-forms.
pub fn sharp<S: Scalar>(form: &KForm<S>) -> Result<Vector<S>> {
    if form.degree() != 1 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            found: form.degree(),
        });
    }
    let n = form.dimension();
    let mut components: Vec<S> = (0..n).map(|_| S::zero()).collect();
    for (mono, coeff) in form.iter() {
        components[(mono.indices()[0] - 1) as usize] = coeff.clone();
    }
    Vector::new(components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::scalar::Rational;

    #[test]
    fn flat_of_basis_vector() {
        let e7 = Vector::<Rational>::basis(8, 7).unwrap();
        let f = e7.flat();
        assert_eq!(f, KForm::basis_element(8, &[7]).unwrap());
        assert_eq!(sharp(&f).unwrap(), e7);
    }

    #[test]
    fn norm_of_wedge_of_orthonormal_frame() {
        let e1 = Vector::<Rational>::basis(8, 1).unwrap();
        let e2 = Vector::<Rational>::basis(8, 2).unwrap();
        let w = e1.flat().wedge(&e2.flat()).unwrap();
        assert_eq!(w.norm2(), Rational::from_int(1));
    }

    #[test]
    fn bounds_checked() {
        assert!(Vector::<Rational>::basis(8, 0).is_err());
        assert!(Vector::<Rational>::basis(8, 9).is_err());
        assert!(Vector::<Rational>::new(vec![]).is_err());
    }
}
