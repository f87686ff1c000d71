//! Canonical basis monomials `dx^{i1} ∧ ... ∧ dx^{ik}`.
//!
//! A monomial is a strictly increasing list of indices in `1..=n`. The
//! canonical basis order everywhere in the crate is lexicographic on index
//! lists; packed bitmasks are used internally for sign bookkeeping only.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Runtime cap on the frame dimension.
pub const MAX_DIMENSION: u8 = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    n: u8,
    indices: Vec<u8>,
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices.cmp(&other.indices).then(self.n.cmp(&other.n))
    }
}

pub(crate) fn validate_dimension(n: u8) -> Result<()> {
    if n == 0 || n > MAX_DIMENSION {
        return Err(Error::DimensionOutOfRange(n));
    }
    Ok(())
}

impl Monomial {
    /// Strictly increasing indices in `1..=n`.
    pub fn new(n: u8, indices: Vec<u8>) -> Result<Self> {
        validate_dimension(n)?;
        for (pos, &i) in indices.iter().enumerate() {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            if pos > 0 {
                match indices[pos - 1].cmp(&i) {
                    Ordering::Less => {}
                    Ordering::Equal => return Err(Error::RepeatedIndex(i)),
                    Ordering::Greater => {
                        return Err(Error::InvalidModel(format!(
                            "indices not increasing: {} after {}",
                            i,
                            indices[pos - 1]
                        )))
                    }
                }
            }
        }
        Ok(Self { n, indices })
    }

    /// Sort an arbitrary index list, returning the permutation sign.
    /// Errors on repeated or out-of-range indices.
    pub fn from_unsorted(n: u8, indices: &[u8]) -> Result<(i32, Self)> {
        validate_dimension(n)?;
        let mut idx = indices.to_vec();
        let mut sign = 1i32;
        let len = idx.len();
        for pass in 0..len {
            for j in 0..len.saturating_sub(1 + pass) {
                match idx[j].cmp(&idx[j + 1]) {
                    Ordering::Greater => {
                        idx.swap(j, j + 1);
                        sign = -sign;
                    }
                    Ordering::Equal => return Err(Error::RepeatedIndex(idx[j])),
                    Ordering::Less => {}
                }
            }
        }
        Ok((sign, Self::new(n, idx)?))
    }

    /// The empty monomial spanning degree zero.
    pub fn scalar_unit(n: u8) -> Self {
        Self {
            n,
            indices: Vec::new(),
        }
    }

    /// The top monomial `dx^{1...n}`.
    pub fn volume(n: u8) -> Self {
        Self {
            n,
            indices: (1..=n).collect(),
        }
    }

    pub fn dimension(&self) -> u8 {
        self.n
    }

    pub fn degree(&self) -> u8 {
        self.indices.len() as u8
    }

    pub fn indices(&self) -> &[u8] {
        &self.indices
    }

    fn mask(&self) -> u32 {
        self.indices.iter().fold(0u32, |m, &i| m | 1 << (i - 1))
    }

    /// Parity of merging `other` after `self`: counts pairs (i, j) with
    /// i in self, j in other, i > j.
    fn merge_sign(&self, other: &[u8]) -> i32 {
        let mask = self.mask();
        let mut inversions = 0u32;
        for &j in other {
            inversions += (mask >> j).count_ones();
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Product monomial with sign, or `None` when an index repeats.
    pub fn wedge(&self, other: &Self) -> Option<(i32, Monomial)> {
        debug_assert_eq!(self.n, other.n);
        if self.mask() & other.mask() != 0 {
            return None;
        }
        let sign = self.merge_sign(&other.indices);
        let mut indices = Vec::with_capacity(self.indices.len() + other.indices.len());
        let (mut a, mut b) = (
            self.indices.iter().peekable(),
            other.indices.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&x), Some(&&y)) => {
                    if x < y {
                        indices.push(x);
                        a.next();
                    } else {
                        indices.push(y);
                        b.next();
                    }
                }
                (Some(&&x), None) => {
                    indices.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    indices.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Some((sign, Monomial { n: self.n, indices }))
    }

    /// Hodge dual: complement indices with the sign of the permutation
    /// `(I, I^c)` of `(1..n)`, orientation `dx^1 ∧ ... ∧ dx^n`.
    pub fn hodge(&self) -> (i32, Monomial) {
        let mask = self.mask();
        let complement: Vec<u8> = (1..=self.n)
            .filter(|&i| mask & (1 << (i - 1)) == 0)
            .collect();
        let sign = self.merge_sign(&complement);
        (
            sign,
            Monomial {
                n: self.n,
                indices: complement,
            },
        )
    }

    /// Contraction with the basis vector `e_index`: removes the index with
    /// sign `(-1)^position`, or `None` when the index is absent.
    pub fn contract(&self, index: u8) -> Option<(i32, Monomial)> {
        let pos = self.indices.iter().position(|&i| i == index)?;
        let mut indices = self.indices.clone();
        indices.remove(pos);
        let sign = if pos % 2 == 0 { 1 } else { -1 };
        Some((sign, Monomial { n: self.n, indices }))
    }

    /// Reinterpret in a larger frame dimension.
    pub fn with_dimension(&self, n: u8) -> Result<Monomial> {
        validate_dimension(n)?;
        if let Some(&max) = self.indices.last() {
            if max > n {
                return Err(Error::IndexOutOfRange { index: max, n });
            }
        }
        Ok(Monomial {
            n,
            indices: self.indices.clone(),
        })
    }

    /// All degree-`k` monomials in lexicographic order.
    pub fn basis(n: u8, k: u8) -> Vec<Monomial> {
        if k > n {
            return Vec::new();
        }
        if k == 0 {
            return vec![Monomial::scalar_unit(n)];
        }
        let k = k as usize;
        let mut idx: Vec<u8> = (1..=k as u8).collect();
        let mut out = Vec::with_capacity(binomial(n, k as u8) as usize);
        loop {
            out.push(Monomial {
                n,
                indices: idx.clone(),
            });
            let mut t = k;
            while t > 0 && idx[t - 1] == n - (k - t) as u8 {
                t -= 1;
            }
            if t == 0 {
                break;
            }
            idx[t - 1] += 1;
            for j in t..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
        out
    }
}

/// Binomial coefficient, exact for n <= 16.
pub fn binomial(n: u8, k: u8) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let mut num = 1u64;
    for i in 0..k {
        num = num * (n as u64 - i) / (i + 1);
    }
    num
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: u8, idx: &[u8]) -> Monomial {
        Monomial::new(n, idx.to_vec()).unwrap()
    }

    #[test]
    fn construction_validates() {
        assert!(Monomial::new(8, vec![1, 2, 3]).is_ok());
        assert!(Monomial::new(8, vec![2, 1]).is_err());
        assert!(Monomial::new(8, vec![1, 1]).is_err());
        assert!(Monomial::new(8, vec![9]).is_err());
        assert!(Monomial::new(0, vec![]).is_err());
        assert!(Monomial::new(17, vec![]).is_err());
    }

    #[test]
    fn from_unsorted_tracks_parity() {
        let (s, mono) = Monomial::from_unsorted(8, &[2, 1]).unwrap();
        assert_eq!(s, -1);
        assert_eq!(mono.indices(), &[1, 2]);
        let (s, mono) = Monomial::from_unsorted(8, &[3, 1, 2]).unwrap();
        assert_eq!(s, 1);
        assert_eq!(mono.indices(), &[1, 2, 3]);
        assert!(Monomial::from_unsorted(8, &[1, 2, 1]).is_err());
    }

    #[test]
    fn wedge_signs() {
        // dx^1 ∧ dx^2 = dx^{12}
        assert_eq!(m(8, &[1]).wedge(&m(8, &[2])), Some((1, m(8, &[1, 2]))));
        // dx^2 ∧ dx^1 = -dx^{12}
        assert_eq!(m(8, &[2]).wedge(&m(8, &[1])), Some((-1, m(8, &[1, 2]))));
        // repeated index kills the product
        assert_eq!(m(8, &[1, 2]).wedge(&m(8, &[1])), None);
        // dx^{13} ∧ dx^{2}: one inversion (3 > 2)
        assert_eq!(
            m(8, &[1, 3]).wedge(&m(8, &[2])),
            Some((-1, m(8, &[1, 2, 3])))
        );
    }

    #[test]
    fn hodge_on_basis() {
        let (s, c) = m(8, &[1, 2, 3, 4]).hodge();
        assert_eq!((s, c), (1, m(8, &[5, 6, 7, 8])));
        let (s, c) = m(8, &[]).hodge();
        assert_eq!((s, c), (1, Monomial::volume(8)));
        // *(dx^{1256}) = +dx^{3478}: 4 inversions
        let (s, c) = m(8, &[1, 2, 5, 6]).hodge();
        assert_eq!((s, c), (1, m(8, &[3, 4, 7, 8])));
    }

    #[test]
    fn hodge_involution_sign_law() {
        // ** = (-1)^{k(n-k)} for every basis monomial, n = 8
        for k in 0..=8u8 {
            let expected = if (k as u32 * (8 - k) as u32) % 2 == 0 {
                1
            } else {
                -1
            };
            for mono in Monomial::basis(8, k) {
                let (s1, dual) = mono.hodge();
                let (s2, back) = dual.hodge();
                assert_eq!(back, mono);
                assert_eq!(s1 * s2, expected, "failed at k={k} {mono:?}");
            }
        }
    }

    #[test]
    fn contraction_signs() {
        assert_eq!(m(8, &[1, 2, 3, 4]).contract(1), Some((1, m(8, &[2, 3, 4]))));
        assert_eq!(
            m(8, &[1, 2, 3, 4]).contract(2),
            Some((-1, m(8, &[1, 3, 4])))
        );
        assert_eq!(m(8, &[1, 2, 3, 4]).contract(5), None);
    }

    #[test]
    fn basis_is_lexicographic() {
        let basis = Monomial::basis(4, 2);
        let listed: Vec<&[u8]> = basis.iter().map(|m| m.indices()).collect();
        assert_eq!(
            listed,
            vec![&[1u8, 2][..], &[1, 3], &[1, 4], &[2, 3], &[2, 4], &[3, 4]]
        );
        assert_eq!(Monomial::basis(8, 2).len(), 28);
        assert_eq!(Monomial::basis(8, 3).len(), 56);
        assert!(Monomial::basis(4, 5).is_empty());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(8, 4), 70);
        assert_eq!(binomial(8, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(16, 8), 12870);
    }
}
