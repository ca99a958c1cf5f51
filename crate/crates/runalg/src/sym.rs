//! Commutative symmetric functions in the power-sum basis, the morphism
//! Gamma from the descent algebra, and ribbon characters.
//!
//! The power-sum basis is the single canonical form; h, e, and ribbon
//! expansions are conversion entry points.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::combinatorics::{partitions, Composition, Partition};
use crate::descent_algebra::{Basis, DescentElement};
use crate::rat::{rat_int, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
}

/// Homogeneous symmetric function of degree n in the power-sum basis.
#[derive(Clone, PartialEq, Eq)]
pub struct SymElement {
    n: usize,
    terms: BTreeMap<Partition, Rat>,
}

impl SymElement {
    pub fn zero(n: usize) -> Self {
        SymElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, l: &Partition) -> Rat {
        self.terms.get(l).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, l: Partition, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(l.n(), self.n);
        use std::collections::btree_map::Entry;
        match self.terms.entry(l) {
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

    pub fn add(&self, other: &SymElement) -> SymElement {
        assert_eq!(self.n, other.n, "degree mismatch in add");
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymElement) -> SymElement {
        self.add(&other.scale(&-Rat::from_integer(1.into())))
    }

    pub fn scale(&self, c: &Rat) -> SymElement {
        if c.is_zero() {
            return SymElement::zero(self.n);
        }
        SymElement {
            n: self.n,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// p_lambda / z_lambda, an internal-product idempotent.
    pub fn p_idempotent(l: Partition) -> SymElement {
        let n = l.n();
        let z = rat_int(l.z() as i64);
        let mut out = SymElement::zero(n);
        out.add_term(l, Rat::from_integer(1.into()) / z);
        out
    }

    /// External (ordinary) product: p_lambda * p_mu = p_{lambda union mu}.
    pub fn external_product(&self, other: &SymElement) -> SymElement {
        let mut out = SymElement::zero(self.n + other.n);
        for (l, cl) in &self.terms {
            for (m, cm) in &other.terms {
                out.add_term(l.union(m), cl * cm);
            }
        }
        out
    }

    /// Internal product: bilinear with
    /// (p_lambda/z_lambda)(p_mu/z_mu) = delta p_lambda/z_lambda, i.e.
    /// p_lambda p_mu = delta_{lambda mu} z_lambda p_lambda.
    pub fn internal_product(&self, other: &SymElement) -> Result<SymElement, SymError> {
        if self.n != other.n {
            return Err(SymError::DegreeMismatch(self.n, other.n));
        }
        let mut out = SymElement::zero(self.n);
        for (l, cl) in &self.terms {
            let cm = other.coefficient(l);
            if !cm.is_zero() {
                out.add_term(l.clone(), cl * cm * rat_int(l.z() as i64));
            }
        }
        Ok(out)
    }
}

impl std::fmt::Debug for SymElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (l, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*p{:?}", crate::rat::format_rat(c), l)?;
        }
        Ok(())
    }
}

/// h_n = sum over partitions of n of p_lambda / z_lambda.
pub fn h_part(n: usize) -> SymElement {
    let mut out = SymElement::zero(n);
    for l in partitions(n) {
        let z = rat_int(l.z() as i64);
        out.add_term(l, Rat::from_integer(1.into()) / z);
    }
    out
}

/// e_n = sum over partitions of (-1)^{even length} p_lambda / z_lambda.
pub fn e_to_p(n: usize) -> SymElement {
    let mut out = SymElement::zero(n);
    for l in partitions(n) {
        let sign = if l.even_length() % 2 == 0 { 1 } else { -1 };
        let c = rat_int(sign) / rat_int(l.z() as i64);
        out.add_term(l, c);
    }
    out
}

/// h_J = product of h_j over the parts of J, in the power-sum basis.
pub fn h_to_p(j: &Composition) -> SymElement {
    let mut acc = {
        let mut one = SymElement::zero(0);
        one.add_term(Partition::empty(), Rat::from_integer(1.into()));
        one
    };
    for &part in j.parts() {
        acc = acc.external_product(&h_part(part));
    }
    acc
}

/// Ribbon r_I = sum over coarsenings J of I of (-1)^{l(I)-l(J)} h_J.
pub fn ribbon_to_p(i: &Composition) -> SymElement {
    let n = i.n();
    let mut out = SymElement::zero(n);
    let mask = i.descent_mask();
    let len = i.len();
    let mut sub = mask;
    loop {
        let j = Composition::from_descent_mask(n, sub);
        let sign = if (len - j.len()) % 2 == 0 { 1 } else { -1 };
        out = out.add(&h_to_p(&j).scale(&rat_int(sign)));
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & mask;
    }
    out
}

/// Gamma: R_I -> r_I, S^I -> h_I; a morphism for both products.
pub fn gamma(x: &DescentElement) -> SymElement {
    let s = x.to_basis(Basis::S);
    let mut out = SymElement::zero(x.n());
    for (comp, c) in s.terms() {
        out = out.add(&h_to_p(comp).scale(c));
    }
    out
}

/// Ribbon character values: chi_I(mu) = z_mu [p_mu] r_I.
pub fn chi_character(i: &Composition) -> BTreeMap<Partition, Rat> {
    let r = ribbon_to_p(i);
    let mut out = BTreeMap::new();
    for mu in partitions(i.n()) {
        let v = r.coefficient(&mu) * rat_int(mu.z() as i64);
        out.insert(mu, v);
    }
    out
}
