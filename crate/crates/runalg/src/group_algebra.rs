//! Exact-rational elements of the group algebra of the symmetric group.
//!
//! This is the brute-force oracle layer: everything here works directly with
//! permutations, so it is only meant for small n. The composition convention
//! is (ab)(u) = a(b(u)) throughout.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::combinatorics::{Composition, Permutation};
use crate::descent_algebra::{Basis, DescentElement};
use crate::rat::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupAlgebraError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("element is not constant on the descent class of {0:?}")]
    NotInDescentAlgebra(Permutation),
}

/// Sparse element of Q[S_n]; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct GAElement {
    n: usize,
    terms: BTreeMap<Permutation, Rat>,
}

impl GAElement {
    pub fn zero(n: usize) -> Self {
        GAElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(n: usize) -> Self {
        Self::from_permutation(Permutation::identity(n))
    }

    pub fn from_permutation(p: Permutation) -> Self {
        let n = p.n();
        let mut terms = BTreeMap::new();
        terms.insert(p, Rat::from_integer(1.into()));
        GAElement { n, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Permutation, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &Permutation) -> Rat {
        self.terms.get(p).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, p: Permutation, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(p) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &GAElement) -> Result<GAElement, GroupAlgebraError> {
        if self.n != other.n {
            return Err(GroupAlgebraError::DegreeMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> GAElement {
        if c.is_zero() {
            return GAElement::zero(self.n);
        }
        GAElement {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(p, v)| (p.clone(), v * c))
                .collect(),
        }
    }

    /// Convolution product, bilinear over permutation composition.
    pub fn product(&self, other: &GAElement) -> Result<GAElement, GroupAlgebraError> {
        if self.n != other.n {
            return Err(GroupAlgebraError::DegreeMismatch(self.n, other.n));
        }
        let mut out = GAElement::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.compose(b), ca * cb);
            }
        }
        Ok(out)
    }

    /// Sum with coefficient 1 over all permutations satisfying the predicate.
    pub fn sum_over<F: Fn(&Permutation) -> bool>(n: usize, pred: F) -> GAElement {
        let mut out = GAElement::zero(n);
        for p in crate::combinatorics::permutations(n) {
            if pred(&p) {
                out.add_term(p, Rat::from_integer(1.into()));
            }
        }
        out
    }

    /// Project onto the descent algebra in the R basis. Errors unless the
    /// element is constant on every descent class.
    pub fn project_to_descent_basis(&self) -> Result<DescentElement, GroupAlgebraError> {
        let mut by_class: BTreeMap<u32, Rat> = BTreeMap::new();
        for (p, c) in &self.terms {
            let mask = p.descent_mask();
            match by_class.get(&mask) {
                None => {
                    by_class.insert(mask, c.clone());
                }
                Some(existing) => {
                    if existing != c {
                        return Err(GroupAlgebraError::NotInDescentAlgebra(p.clone()));
                    }
                }
            }
        }
        // Every permutation of the class must carry the coefficient, not just
        // the stored ones: a partially covered class means coefficient 0 on
        // the missing permutations.
        let mut class_sizes: BTreeMap<u32, usize> = BTreeMap::new();
        for p in crate::combinatorics::permutations(self.n) {
            *class_sizes.entry(p.descent_mask()).or_insert(0) += 1;
        }
        let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
        for p in self.terms.keys() {
            *counts.entry(p.descent_mask()).or_insert(0) += 1;
        }
        let mut out = DescentElement::zero(self.n, Basis::R);
        for (mask, c) in by_class {
            if counts[&mask] != class_sizes[&mask] {
                let witness = self
                    .terms
                    .keys()
                    .find(|p| p.descent_mask() == mask)
                    .unwrap()
                    .clone();
                return Err(GroupAlgebraError::NotInDescentAlgebra(witness));
            }
            out.add_term(Composition::from_descent_mask(self.n, mask), c);
        }
        Ok(out)
    }
}

impl std::fmt::Debug for GAElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*[{:?}]", crate::rat::format_rat(c), p)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::permutations;
    use crate::rat::rat_int;

    #[test]
    fn reversal_squares_to_identity() {
        for n in 2..=6 {
            let w = GAElement::from_permutation(Permutation::reversal(n));
            let prod = w.product(&w).unwrap();
            assert_eq!(prod, GAElement::unit(n));
        }
    }

    #[test]
    fn unit_is_two_sided() {
        let x = GAElement::sum_over(4, |p| p.run_stats().run == 2);
        let e = GAElement::unit(4);
        assert_eq!(e.product(&x).unwrap(), x);
        assert_eq!(x.product(&e).unwrap(), x);
    }

    #[test]
    fn product_associative_on_samples() {
        // Deterministic sample triples from the class sums.
        for n in 3..=5 {
            let a = GAElement::sum_over(n, |p| p.run_stats().first_ascending);
            let b = GAElement::sum_over(n, |p| p.peak_stats().pk == 0);
            let c = GAElement::sum_over(n, |p| p.descent_set().len() == 1);
            let ab_c = a.product(&b).unwrap().product(&c).unwrap();
            let a_bc = a.product(&b.product(&c).unwrap()).unwrap();
            assert_eq!(ab_c, a_bc);
        }
    }

    #[test]
    fn w1_times_wk_plus_equals_wk() {
        // W_1 W_k^+ = W_k at n = 4.
        let n = 4;
        let w1 = GAElement::sum_over(n, |p| p.run_stats().run == 1);
        for k in 1..n {
            let wkp = GAElement::sum_over(n, |p| {
                let rs = p.run_stats();
                rs.run == k && rs.first_ascending
            });
            let wk = GAElement::sum_over(n, |p| p.run_stats().run == k);
            assert_eq!(w1.product(&wkp).unwrap(), wk);
        }
    }

    #[test]
    fn sum_over_examples() {
        let x = GAElement::sum_over(3, |p| {
            let rs = p.run_stats();
            rs.run == 2 && rs.first_ascending
        });
        let expected: Vec<Vec<u8>> = vec![vec![1, 3, 2], vec![2, 3, 1]];
        let keys: Vec<Vec<u8>> = x.terms().keys().map(|p| p.word().to_vec()).collect();
        assert_eq!(keys, expected);

        assert!(GAElement::sum_over(4, |_| false).is_zero());
        assert_eq!(
            GAElement::sum_over(4, |_| true).terms().len(),
            24
        );
    }

    #[test]
    fn projection_examples() {
        // W_2^+ at n=3 is the class sum of descent set {2}, i.e. R_(2,1).
        let x = GAElement::sum_over(3, |p| {
            let rs = p.run_stats();
            rs.run == 2 && rs.first_ascending
        });
        let d = x.project_to_descent_basis().unwrap();
        let comp = Composition::new(vec![2, 1]).unwrap();
        assert_eq!(d.coefficient(&comp), rat_int(1));
        assert_eq!(d.terms().len(), 1);

        let zero = GAElement::zero(3).project_to_descent_basis().unwrap();
        assert!(zero.is_zero());

        let id = GAElement::unit(4).project_to_descent_basis().unwrap();
        assert_eq!(id.coefficient(&Composition::single(4)), rat_int(1));
        assert_eq!(id.terms().len(), 1);
    }

    #[test]
    fn projection_rejects_non_class_elements() {
        // A single non-identity permutation whose class has more elements.
        let p = permutations(3).into_iter().nth(1).unwrap();
        let x = GAElement::from_permutation(p);
        assert!(x.project_to_descent_basis().is_err());
    }

    #[test]
    fn run_and_peak_sums_lie_in_descent_algebra() {
        for n in 2..=6 {
            for k in 1..n {
                for asc in [true, false] {
                    let x = GAElement::sum_over(n, |p| {
                        let rs = p.run_stats();
                        rs.run == k && rs.first_ascending == asc
                    });
                    assert!(x.project_to_descent_basis().is_ok());
                }
            }
            for k in 0..=n / 2 {
                let x = GAElement::sum_over(n, |p| p.peak_stats().pk == k);
                assert!(x.project_to_descent_basis().is_ok());
                let x = GAElement::sum_over(n, |p| p.peak_stats().pk_left == k);
                assert!(x.project_to_descent_basis().is_ok());
            }
        }
    }
}
