//! Degree-truncated series of descent-algebra elements: the graded
//! completion with external product, coproduct, star-log/exp, rational
//! star-powers, and the V-series built from alternating runs.
//!
//! A series tracks degrees 0..=N for a fixed cutoff N and silently truncates
//! above it. The degree-0 part is the scalar line on the empty composition.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::combinatorics::Composition;
use crate::descent_algebra::{Basis, DescentAlgebraError, DescentElement};
use crate::rat::{rat_int, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NSymError {
    #[error("constant term violation: {0}")]
    ConstantTermViolation(&'static str),
    #[error("degree {0} exceeds cutoff {1}")]
    DegreeOutOfRange(usize, usize),
    #[error(transparent)]
    Descent(#[from] DescentAlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VSign {
    Plus,
    Minus,
}

/// External product of two homogeneous elements: concatenation on the S
/// basis, near-concatenation on the R basis. Computed on the R basis.
pub fn element_external(a: &DescentElement, b: &DescentElement) -> DescentElement {
    let n = a.n() + b.n();
    let ra = a.to_basis(Basis::R);
    let rb = b.to_basis(Basis::R);
    let mut out = DescentElement::zero(n, Basis::R);
    for (i, ci) in ra.terms() {
        for (j, cj) in rb.terms() {
            let c = ci * cj;
            if i.is_empty() {
                out.add_term(j.clone(), c);
                continue;
            }
            if j.is_empty() {
                out.add_term(i.clone(), c);
                continue;
            }
            let mut concat = i.parts().to_vec();
            concat.extend_from_slice(j.parts());
            out.add_term(Composition::new(concat).unwrap(), c.clone());
            let mut merged = i.parts().to_vec();
            *merged.last_mut().unwrap() += j.parts()[0];
            merged.extend_from_slice(&j.parts()[1..]);
            out.add_term(Composition::new(merged).unwrap(), c);
        }
    }
    out
}

/// Graded series of descent-algebra elements up to a cutoff degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NSymSeries {
    cutoff: usize,
    parts: Vec<DescentElement>,
}

impl NSymSeries {
    pub fn zero(cutoff: usize) -> Self {
        NSymSeries {
            cutoff,
            parts: (0..=cutoff).map(|d| DescentElement::zero(d, Basis::R)).collect(),
        }
    }

    pub fn one(cutoff: usize) -> Self {
        let mut s = Self::zero(cutoff);
        s.parts[0].add_term(Composition::empty(), Rat::one());
        s
    }

    pub fn from_element(cutoff: usize, el: &DescentElement) -> Self {
        let mut s = Self::zero(cutoff);
        if el.n() <= cutoff {
            s.parts[el.n()] = el.to_basis(Basis::R);
        }
        s
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn part(&self, d: usize) -> &DescentElement {
        &self.parts[d]
    }

    pub fn set_part(&mut self, el: DescentElement) {
        let d = el.n();
        assert!(d <= self.cutoff);
        self.parts[d] = el.to_basis(Basis::R);
    }

    /// The scalar in degree 0.
    pub fn constant_term(&self) -> Rat {
        self.parts[0].coefficient(&Composition::empty())
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &NSymSeries) -> NSymSeries {
        let cutoff = self.cutoff.min(other.cutoff);
        let mut out = NSymSeries::zero(cutoff);
        for d in 0..=cutoff {
            out.parts[d] = self.parts[d].add(&other.parts[d]);
        }
        out
    }

    pub fn sub(&self, other: &NSymSeries) -> NSymSeries {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> NSymSeries {
        NSymSeries {
            cutoff: self.cutoff,
            parts: self.parts.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Degree-additive external product; result cutoff is the minimum.
    pub fn external_product(&self, other: &NSymSeries) -> NSymSeries {
        let cutoff = self.cutoff.min(other.cutoff);
        let mut out = NSymSeries::zero(cutoff);
        for i in 0..=cutoff {
            if self.parts[i].is_zero() {
                continue;
            }
            for j in 0..=cutoff - i {
                if other.parts[j].is_zero() {
                    continue;
                }
                let prod = element_external(&self.parts[i], &other.parts[j]);
                out.parts[i + j] = out.parts[i + j].add(&prod);
            }
        }
        out
    }

    pub fn external_pow(&self, k: usize) -> NSymSeries {
        let mut acc = NSymSeries::one(self.cutoff);
        for _ in 0..k {
            acc = acc.external_product(self);
        }
        acc
    }

    /// log under the external product; requires constant term exactly 1.
    pub fn log_star(&self) -> Result<NSymSeries, NSymError> {
        if self.constant_term() != Rat::one() {
            return Err(NSymError::ConstantTermViolation(
                "log_star requires constant term 1",
            ));
        }
        let f = self.sub(&NSymSeries::one(self.cutoff));
        let mut acc = NSymSeries::zero(self.cutoff);
        let mut pow = NSymSeries::one(self.cutoff);
        for k in 1..=self.cutoff.max(1) {
            pow = pow.external_product(&f);
            let sign = if k % 2 == 1 { Rat::one() } else { -Rat::one() };
            acc = acc.add(&pow.scale(&(sign / rat_int(k as i64))));
        }
        Ok(acc)
    }

    /// exp under the external product; requires constant term exactly 0.
    pub fn exp_star(&self) -> Result<NSymSeries, NSymError> {
        if !self.constant_term().is_zero() {
            return Err(NSymError::ConstantTermViolation(
                "exp_star requires constant term 0",
            ));
        }
        let mut acc = NSymSeries::one(self.cutoff);
        let mut pow = NSymSeries::one(self.cutoff);
        let mut factorial = Rat::one();
        for k in 1..=self.cutoff {
            pow = pow.external_product(self);
            factorial *= rat_int(k as i64);
            acc = acc.add(&pow.scale(&(Rat::one() / factorial.clone())));
        }
        Ok(acc)
    }

    /// Rational star-power via exp(q log); requires constant term exactly 1.
    pub fn power_star(&self, q: &Rat) -> Result<NSymSeries, NSymError> {
        let log = self.log_star()?;
        log.scale(q).exp_star()
    }

    /// Degree-d component of the coproduct, as an S-basis tensor:
    /// (I, J) -> coefficient of S^I tensor S^J, |I| + |J| = d.
    pub fn coproduct_degree(
        &self,
        d: usize,
    ) -> Result<BTreeMap<(Composition, Composition), Rat>, NSymError> {
        if d > self.cutoff {
            return Err(NSymError::DegreeOutOfRange(d, self.cutoff));
        }
        let mut out: BTreeMap<(Composition, Composition), Rat> = BTreeMap::new();
        let s = self.parts[d].to_basis(Basis::S);
        for (comp, c) in s.terms() {
            // Split each part k into a + b, keeping the nonzero halves.
            let mut splits: Vec<(Vec<usize>, Vec<usize>)> = vec![(vec![], vec![])];
            for &k in comp.parts() {
                let mut next = Vec::new();
                for (l, r) in &splits {
                    for a in 0..=k {
                        let mut l2 = l.clone();
                        let mut r2 = r.clone();
                        if a > 0 {
                            l2.push(a);
                        }
                        if k - a > 0 {
                            r2.push(k - a);
                        }
                        next.push((l2, r2));
                    }
                }
                splits = next;
            }
            for (l, r) in splits {
                let key = (
                    Composition::new(l).unwrap(),
                    Composition::new(r).unwrap(),
                );
                let entry = out.entry(key).or_insert_with(Rat::zero);
                *entry += c.clone();
                if entry.is_zero() {
                    // keep the map sparse
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    /// Checks Delta(a) = a tensor a degree by degree up to the cutoff.
    pub fn is_grouplike(&self) -> bool {
        for d in 0..=self.cutoff {
            let lhs = match self.coproduct_degree(d) {
                Ok(m) => m,
                Err(_) => return false,
            };
            let mut rhs: BTreeMap<(Composition, Composition), Rat> = BTreeMap::new();
            for d1 in 0..=d {
                let left = self.parts[d1].to_basis(Basis::S);
                let right = self.parts[d - d1].to_basis(Basis::S);
                for (i, ci) in left.terms() {
                    for (j, cj) in right.terms() {
                        let entry = rhs
                            .entry((i.clone(), j.clone()))
                            .or_insert_with(Rat::zero);
                        *entry += ci * cj;
                    }
                }
            }
            rhs.retain(|_, v| !v.is_zero());
            if lhs != rhs {
                return false;
            }
        }
        true
    }

    /// Internal product of the two degree-d parts.
    pub fn internal_on_degree(
        &self,
        other: &NSymSeries,
        d: usize,
    ) -> Result<DescentElement, NSymError> {
        if d > self.cutoff || d > other.cutoff {
            return Err(NSymError::DegreeOutOfRange(d, self.cutoff.min(other.cutoff)));
        }
        Ok(self.parts[d].internal_product(&other.parts[d])?)
    }
}

/// V_1^+ = sum of R_(d): a single ascending run in every degree.
pub fn v1_plus(cutoff: usize) -> NSymSeries {
    let mut s = NSymSeries::zero(cutoff);
    for d in 0..=cutoff {
        s.parts[d] = DescentElement::basis_element(Basis::R, Composition::single(d));
    }
    s
}

/// V_1^- = sum of R_(1^d): a single descending run in every degree.
pub fn v1_minus(cutoff: usize) -> NSymSeries {
    let mut s = NSymSeries::zero(cutoff);
    for d in 0..=cutoff {
        s.parts[d] = DescentElement::basis_element(Basis::R, Composition::ones(d));
    }
    s
}

/// The alternating-run series: external products of V_1^+ and V_1^-
/// alternating, starting with the given sign, with k factors.
pub fn build_v(k: usize, sign: VSign, cutoff: usize) -> NSymSeries {
    assert!(k >= 1, "V_k requires k >= 1");
    let plus = v1_plus(cutoff);
    let minus = v1_minus(cutoff);
    let mut acc = NSymSeries::one(cutoff);
    for step in 0..k {
        let even_step = step % 2 == 0;
        let factor = match (sign, even_step) {
            (VSign::Plus, true) | (VSign::Minus, false) => &plus,
            _ => &minus,
        };
        acc = acc.external_product(factor);
    }
    acc
}

/// V_k = V_k^+ + V_k^-.
pub fn build_v_total(k: usize, cutoff: usize) -> NSymSeries {
    build_v(k, VSign::Plus, cutoff).add(&build_v(k, VSign::Minus, cutoff))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn s_basis_concatenation() {
        let a = DescentElement::basis_element(Basis::S, comp(&[2, 3]));
        let b = DescentElement::basis_element(Basis::S, comp(&[5, 1, 1]));
        let prod = element_external(&a, &b).to_basis(Basis::S);
        assert_eq!(prod.coefficient(&comp(&[2, 3, 5, 1, 1])), rat_int(1));
        assert_eq!(prod.terms().len(), 1);
    }

    #[test]
    fn r_basis_near_concatenation() {
        let a = DescentElement::basis_element(Basis::R, comp(&[2, 3]));
        let b = DescentElement::basis_element(Basis::R, comp(&[5, 1, 1]));
        let prod = element_external(&a, &b);
        assert_eq!(prod.coefficient(&comp(&[2, 3, 5, 1, 1])), rat_int(1));
        assert_eq!(prod.coefficient(&comp(&[2, 8, 1, 1])), rat_int(1));
        assert_eq!(prod.terms().len(), 2);
    }

    #[test]
    fn one_is_external_unit() {
        let v = build_v(2, VSign::Minus, 5);
        assert_eq!(v.external_product(&NSymSeries::one(5)), v);
        assert_eq!(NSymSeries::one(5).external_product(&v), v);
    }

    #[test]
    fn v1_degree_parts() {
        let p = v1_plus(4);
        assert_eq!(
            p.part(3),
            &DescentElement::basis_element(Basis::R, comp(&[3]))
        );
        let m = v1_minus(4);
        assert_eq!(
            m.part(3),
            &DescentElement::basis_element(Basis::R, comp(&[1, 1, 1]))
        );
        assert_eq!(p.constant_term(), rat_int(1));
    }

    #[test]
    fn v2_minus_is_doubled_peakless_sum() {
        // V_2^- = 1 + 2 * sum of R_I over peakless descent classes
        // (plus nothing else in each degree).
        let v = build_v(2, VSign::Minus, 5);
        for n in 1..=5 {
            let part = v.part(n);
            for c in crate::combinatorics::compositions(n) {
                let expected = if c.peak_stats().pk == 0 {
                    rat_int(2)
                } else {
                    rat_int(0)
                };
                assert_eq!(part.coefficient(&c), expected, "n={n} c={c:?}");
            }
        }
    }

    #[test]
    fn grouplike_checks() {
        assert!(v1_plus(6).is_grouplike());
        assert!(v1_minus(6).is_grouplike());
        assert!(build_v(2, VSign::Minus, 5).is_grouplike());
        assert!(build_v(3, VSign::Plus, 5).is_grouplike());
        // Perturbing degree 1 breaks grouplikeness.
        let mut bad = v1_plus(6);
        let part1 = bad.part(1).scale(&rat_int(2));
        bad.set_part(part1);
        assert!(!bad.is_grouplike());
    }

    #[test]
    fn log_exp_round_trip() {
        let v = build_v(2, VSign::Minus, 6);
        let log = v.log_star().unwrap();
        assert!(log.constant_term().is_zero());
        assert_eq!(log.exp_star().unwrap(), v);

        assert!(NSymSeries::one(5).log_star().unwrap().is_zero());
        assert_eq!(
            NSymSeries::zero(5).exp_star().unwrap(),
            NSymSeries::one(5)
        );
    }

    #[test]
    fn constant_term_violations() {
        assert!(matches!(
            NSymSeries::zero(4).log_star(),
            Err(NSymError::ConstantTermViolation(_))
        ));
        assert!(matches!(
            NSymSeries::one(4).exp_star(),
            Err(NSymError::ConstantTermViolation(_))
        ));
    }

    #[test]
    fn half_power_squares_back() {
        let v = build_v(2, VSign::Minus, 6);
        let half = v.power_star(&rat(1, 2)).unwrap();
        assert_eq!(half.external_product(&half), v);
    }

    #[test]
    fn integer_power_matches_repeated_product() {
        let v = build_v(2, VSign::Plus, 5);
        let cubed = v.power_star(&rat_int(3)).unwrap();
        assert_eq!(cubed, v.external_pow(3));
    }

    #[test]
    fn exp_of_commuting_sum_factors() {
        // F and G built from the same series commute externally.
        let v = build_v(2, VSign::Minus, 5);
        let f = v.log_star().unwrap();
        let g = f.scale(&rat(1, 3));
        let lhs = f.add(&g).exp_star().unwrap();
        let rhs = f
            .exp_star()
            .unwrap()
            .external_product(&g.exp_star().unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn multiplicativity_small() {
        // V_k^+ V_l^+ = V_kl^+ and the sign cases, in degrees <= 5.
        let cutoff = 5;
        for k in 1..=3usize {
            for l in 1..=3usize {
                let vkp = build_v(k, VSign::Plus, cutoff);
                let vkm = build_v(k, VSign::Minus, cutoff);
                let vlp = build_v(l, VSign::Plus, cutoff);
                let vlm = build_v(l, VSign::Minus, cutoff);
                let vklp = build_v(k * l, VSign::Plus, cutoff);
                let vklm = build_v(k * l, VSign::Minus, cutoff);
                for d in 0..=cutoff {
                    assert!(vkp
                        .internal_on_degree(&vlp, d)
                        .unwrap()
                        .equivalent(vklp.part(d)));
                    assert!(vkm
                        .internal_on_degree(&vlp, d)
                        .unwrap()
                        .equivalent(vklm.part(d)));
                    let (pp, mm) = if k % 2 == 0 {
                        (&vklp, &vklm)
                    } else {
                        (&vklm, &vklp)
                    };
                    assert!(vkp
                        .internal_on_degree(&vlm, d)
                        .unwrap()
                        .equivalent(pp.part(d)));
                    assert!(vkm
                        .internal_on_degree(&vlm, d)
                        .unwrap()
                        .equivalent(mm.part(d)));
                }
            }
        }
    }

    #[test]
    fn reversal_anti_morphism() {
        // (G1 * G2) V_1^- = (G2 V_1^-) * (G1 V_1^-) degree by degree, and
        // R_I V_1^- = R_bar(I).
        use crate::descent_algebra::Side;
        for n in 1..=6 {
            for c in crate::combinatorics::compositions(n) {
                let x = DescentElement::basis_element(Basis::R, c.clone());
                assert!(x.omega_mul(Side::Right).equivalent(
                    &DescentElement::basis_element(Basis::R, c.bar())
                ));
            }
        }
        let cutoff = 5;
        let g1 = build_v(2, VSign::Plus, cutoff);
        let g2 = v1_minus(cutoff);
        let vm = v1_minus(cutoff);
        let lhs_series = g1.external_product(&g2);
        let rhs_series = {
            let mut s = NSymSeries::zero(cutoff);
            let g2v: Vec<DescentElement> = (0..=cutoff)
                .map(|d| g2.internal_on_degree(&vm, d).unwrap())
                .collect();
            let g1v: Vec<DescentElement> = (0..=cutoff)
                .map(|d| g1.internal_on_degree(&vm, d).unwrap())
                .collect();
            for i in 0..=cutoff {
                for j in 0..=cutoff - i {
                    let prod = element_external(&g2v[i], &g1v[j]);
                    s.parts[i + j] = s.parts[i + j].add(&prod);
                }
            }
            s
        };
        for d in 0..=cutoff {
            assert!(lhs_series
                .internal_on_degree(&vm, d)
                .unwrap()
                .equivalent(rhs_series.part(d)));
        }
    }

    #[test]
    fn splitting_formula_grouplike_case() {
        // G (F1 * F2) = (G F1) * (G F2) on each degree, for grouplike G.
        let cutoff = 5;
        let g = build_v(2, VSign::Minus, cutoff);
        for (da, ca) in [(1usize, &[1usize][..]), (2, &[2]), (2, &[1, 1])] {
            for (db, cb) in [(1usize, &[1usize][..]), (3, &[2, 1]), (2, &[1, 1])] {
                if da + db > cutoff {
                    continue;
                }
                let f1 = NSymSeries::from_element(
                    cutoff,
                    &DescentElement::basis_element(Basis::R, comp(ca)),
                );
                let f2 = NSymSeries::from_element(
                    cutoff,
                    &DescentElement::basis_element(Basis::R, comp(cb)),
                );
                let d = da + db;
                let lhs = g
                    .internal_on_degree(&f1.external_product(&f2), d)
                    .unwrap();
                let gf1 = g.internal_on_degree(&f1, da).unwrap();
                let gf2 = g.internal_on_degree(&f2, db).unwrap();
                let rhs = element_external(&gf1, &gf2);
                assert!(lhs.equivalent(&rhs), "da={da} db={db}");
            }
        }
    }
}
