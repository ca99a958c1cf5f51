//! The descent algebra in the R (ribbon) and S (complete) bases.
//!
//! Two internal products are provided: a fast one via structure constants on
//! the S basis (nonnegative-integer matrices with prescribed row and column
//! sums), and an oracle one that lifts to the group algebra. The two must
//! agree exactly; the convention is (ab)(u) = a(b(u)).

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_traits::Zero;
use once_cell::sync::Lazy;
use thiserror::Error;

use crate::combinatorics::{permutations, Composition, DescentMask};
use crate::group_algebra::{GAElement, GroupAlgebraError};
use crate::rat::Rat;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DescentAlgebraError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error(transparent)]
    Oracle(#[from] GroupAlgebraError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    R,
    S,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Sparse exact-rational element of the degree-n descent algebra.
#[derive(Clone, PartialEq, Eq)]
pub struct DescentElement {
    n: usize,
    basis: Basis,
    terms: BTreeMap<Composition, Rat>,
}

impl DescentElement {
    pub fn zero(n: usize, basis: Basis) -> Self {
        DescentElement {
            n,
            basis,
            terms: BTreeMap::new(),
        }
    }

    /// The unit R_(n) (the identity permutation's descent class).
    pub fn unit(n: usize) -> Self {
        Self::basis_element(Basis::R, Composition::single(n))
    }

    pub fn basis_element(basis: Basis, comp: Composition) -> Self {
        let n = comp.n();
        let mut terms = BTreeMap::new();
        terms.insert(comp, Rat::from_integer(1.into()));
        DescentElement { n, basis, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Composition, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, comp: &Composition) -> Rat {
        self.terms.get(comp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, comp: Composition, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(comp.n(), self.n);
        use std::collections::btree_map::Entry;
        match self.terms.entry(comp) {
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

    pub fn add(&self, other: &DescentElement) -> DescentElement {
        assert_eq!(self.n, other.n, "degree mismatch in add");
        let other = other.to_basis(self.basis);
        let mut out = self.clone();
        for (k, v) in other.terms {
            out.add_term(k, v);
        }
        out
    }

    pub fn sub(&self, other: &DescentElement) -> DescentElement {
        self.add(&other.scale(&Rat::from_integer((-1).into())))
    }

    pub fn scale(&self, c: &Rat) -> DescentElement {
        if c.is_zero() {
            return DescentElement::zero(self.n, self.basis);
        }
        DescentElement {
            n: self.n,
            basis: self.basis,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Basis conversion via the refinement sums: S^I = sum of R_J over
    /// coarsenings J of I, and the signed Mobius inverse.
    pub fn to_basis(&self, target: Basis) -> DescentElement {
        if self.basis == target {
            return self.clone();
        }
        let mut out = DescentElement::zero(self.n, target);
        for (comp, c) in &self.terms {
            let mask = comp.descent_mask();
            let len = mask.count_ones();
            // Iterate all submasks of `mask` (coarsenings).
            let mut sub = mask;
            loop {
                let j = Composition::from_descent_mask(self.n, sub);
                let coeff = match (self.basis, target) {
                    (Basis::S, Basis::R) => c.clone(),
                    (Basis::R, Basis::S) => {
                        if (len - sub.count_ones()) % 2 == 0 {
                            c.clone()
                        } else {
                            -c.clone()
                        }
                    }
                    _ => unreachable!(),
                };
                out.add_term(j, coeff);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & mask;
            }
        }
        out
    }

    /// Coefficients on the full R basis indexed by descent mask, as a dense
    /// vector of length 2^(n-1).
    pub fn r_coordinates(&self) -> Vec<Rat> {
        let r = self.to_basis(Basis::R);
        let dim = 1usize << (self.n.max(1) - 1);
        let mut v = vec![Rat::zero(); dim];
        for (comp, c) in &r.terms {
            v[comp.descent_mask() as usize] = c.clone();
        }
        v
    }

    pub fn from_r_coordinates(n: usize, v: &[Rat]) -> DescentElement {
        let mut out = DescentElement::zero(n, Basis::R);
        for (mask, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out.add_term(Composition::from_descent_mask(n, mask as u32), c.clone());
            }
        }
        out
    }

    /// Lift to the group algebra: each R_I becomes its descent-class sum.
    pub fn lift(&self) -> GAElement {
        let r = self.to_basis(Basis::R);
        let mut out = GAElement::zero(self.n);
        for p in permutations(self.n) {
            let comp = Composition::from_descent_mask(self.n, p.descent_mask());
            let c = r.coefficient(&comp);
            if !c.is_zero() {
                out.add_term(p, c);
            }
        }
        out
    }

    /// Fast internal product via S-basis structure constants.
    pub fn internal_product(
        &self,
        other: &DescentElement,
    ) -> Result<DescentElement, DescentAlgebraError> {
        if self.n != other.n {
            return Err(DescentAlgebraError::DegreeMismatch(self.n, other.n));
        }
        let n = self.n;
        if n == 0 {
            // Degree 0 is the scalar line on the empty composition.
            let c = self.coefficient(&Composition::empty())
                * other.coefficient(&Composition::empty());
            let mut out = DescentElement::zero(0, Basis::R);
            out.add_term(Composition::empty(), c);
            return Ok(out);
        }
        let a = self.to_basis(Basis::S);
        let b = other.to_basis(Basis::S);
        let mut acc: BTreeMap<DescentMask, Rat> = BTreeMap::new();
        for (ci, va) in &a.terms {
            for (cj, vb) in &b.terms {
                let coeff = va * vb;
                for (mask, mult) in
                    s_structure_constants(n, ci.descent_mask(), cj.descent_mask()).iter()
                {
                    let entry = acc.entry(*mask).or_insert_with(Rat::zero);
                    *entry += &coeff * Rat::from_integer((*mult).into());
                }
            }
        }
        let mut out = DescentElement::zero(n, Basis::S);
        for (mask, c) in acc {
            out.add_term(Composition::from_descent_mask(n, mask), c);
        }
        Ok(out.to_basis(Basis::R))
    }

    /// Oracle internal product: lift to the group algebra, convolve, project.
    pub fn internal_product_oracle(
        &self,
        other: &DescentElement,
    ) -> Result<DescentElement, DescentAlgebraError> {
        if self.n != other.n {
            return Err(DescentAlgebraError::DegreeMismatch(self.n, other.n));
        }
        let prod = self.lift().product(&other.lift())?;
        Ok(prod.project_to_descent_basis()?)
    }

    /// Multiplication by omega = R_(1^n), the reversal class. On the left
    /// this complements the descent set; on the right it applies `bar`.
    pub fn omega_mul(&self, side: Side) -> DescentElement {
        let n = self.n;
        if n == 0 {
            return self.clone();
        }
        let r = self.to_basis(Basis::R);
        let full: DescentMask = (1u32 << (n - 1)) - 1;
        let mut out = DescentElement::zero(n, Basis::R);
        for (comp, c) in &r.terms {
            let image = match side {
                Side::Left => Composition::from_descent_mask(n, !comp.descent_mask() & full),
                Side::Right => comp.bar(),
            };
            out.add_term(image, c.clone());
        }
        out
    }

    /// Conjugation x -> omega x omega.
    pub fn omega_conjugate(&self) -> DescentElement {
        self.omega_mul(Side::Left).omega_mul(Side::Right)
    }

    /// Equality irrespective of the stored basis.
    pub fn equivalent(&self, other: &DescentElement) -> bool {
        self.n == other.n && self.to_basis(Basis::R).terms == other.to_basis(Basis::R).terms
    }
}

impl std::fmt::Debug for DescentElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let tag = match self.basis {
            Basis::R => "R",
            Basis::S => "S",
        };
        for (i, (comp, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{}{:?}", crate::rat::format_rat(c), tag, comp)?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Fast structure constants on the S basis
// ---------------------------------------------------------------------------

type STable = Vec<(DescentMask, u64)>;

static S_CACHE: Lazy<Mutex<HashMap<(usize, DescentMask, DescentMask), STable>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// S^I S^J = sum over nonnegative-integer matrices with row sums I and
/// column sums J of S^(c(M)), where c(M) reads the nonzero entries column by
/// column. Returned as (descent mask of c(M), multiplicity) pairs.
fn s_structure_constants(n: usize, i_mask: DescentMask, j_mask: DescentMask) -> STable {
    if let Some(t) = S_CACHE.lock().unwrap().get(&(n, i_mask, j_mask)) {
        return t.clone();
    }
    let rows = Composition::from_descent_mask(n, i_mask);
    let cols = Composition::from_descent_mask(n, j_mask);
    let p = rows.len();
    let q = cols.len();
    let mut counts: HashMap<DescentMask, u64> = HashMap::new();
    // Fill column by column; entries[c * p + r]. Recursion distributes each
    // column sum over the p rows subject to remaining row capacities.
    let mut entries = vec![0usize; p * q];
    let mut row_left: Vec<usize> = rows.parts().to_vec();
    fn rec(
        c: usize,
        r: usize,
        col_left: usize,
        q: usize,
        p: usize,
        cols: &[usize],
        row_left: &mut Vec<usize>,
        entries: &mut Vec<usize>,
        counts: &mut HashMap<DescentMask, u64>,
        n: usize,
    ) {
        if c == q {
            // Read the nonzero entries column-major into a composition mask.
            let mut mask = 0u32;
            let mut acc = 0usize;
            for cc in 0..q {
                for rr in 0..p {
                    let e = entries[cc * p + rr];
                    if e > 0 {
                        acc += e;
                        if acc < n {
                            mask |= 1 << (acc - 1);
                        }
                    }
                }
            }
            *counts.entry(mask).or_insert(0) += 1;
            return;
        }
        if r == p {
            if col_left == 0 {
                rec(c + 1, 0, *cols.get(c + 1).unwrap_or(&0), q, p, cols, row_left, entries, counts, n);
            }
            return;
        }
        let max = col_left.min(row_left[r]);
        for e in 0..=max {
            entries[c * p + r] = e;
            row_left[r] -= e;
            rec(c, r + 1, col_left - e, q, p, cols, row_left, entries, counts, n);
            row_left[r] += e;
            entries[c * p + r] = 0;
        }
    }
    rec(
        0,
        0,
        *cols.parts().first().unwrap_or(&0),
        q,
        p,
        cols.parts(),
        &mut row_left,
        &mut entries,
        &mut counts,
        n,
    );
    let mut table: STable = counts.into_iter().collect();
    table.sort_unstable();
    S_CACHE
        .lock()
        .unwrap()
        .insert((n, i_mask, j_mask), table.clone());
    table
}

/// One full pass over S_n x S_n, bucketing products by descent classes.
/// Returns the R-basis structure-constant table
/// (mask of I, mask of J, mask of K) -> multiplicity of R_K in R_I R_J.
/// This is the group-algebra oracle, just factored through descent classes
/// by bilinearity.
pub fn oracle_structure_constants(n: usize) -> HashMap<(u32, u32, u32), u64> {
    let perms = permutations(n);
    let words: Vec<&[u8]> = perms.iter().map(|p| p.word()).collect();
    let masks: Vec<u32> = perms.iter().map(|p| p.descent_mask()).collect();
    let mut table = HashMap::new();
    let mut buf = vec![0u8; n];
    for (ai, a) in words.iter().enumerate() {
        for (bi, b) in words.iter().enumerate() {
            for u in 0..n {
                buf[u] = a[b[u] as usize - 1];
            }
            let mut mask = 0u32;
            for i in 1..n {
                if buf[i - 1] > buf[i] {
                    mask |= 1 << (i - 1);
                }
            }
            *table.entry((masks[ai], masks[bi], mask)).or_insert(0u64) += 1;
        }
    }
    // The raw count per bucket is (structure constant) * |class K|.
    let mut class_size: HashMap<u32, u64> = HashMap::new();
    for &m in &masks {
        *class_size.entry(m).or_insert(0) += 1;
    }
    for ((_, _, k), v) in table.iter_mut() {
        let size = class_size[k];
        debug_assert_eq!(*v % size, 0);
        *v /= size;
    }
    table
}
