//! Permutations, compositions, partitions, their statistics, and the left
//! weak order.
//!
//! Positions are 1-based throughout. All statistics that only depend on the
//! descent set (runs, peaks) are also available directly on descent masks, so
//! the same code path serves permutations and compositions.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CombinatoricsError {
    #[error("word is not a permutation of 1..{0}")]
    NotAPermutation(usize),
    #[error("composition part must be positive")]
    NonPositivePart,
    #[error("partition parts must be weakly decreasing and positive")]
    InvalidPartition,
    #[error("descent position {pos} out of range for n = {n}")]
    DescentOutOfRange { pos: usize, n: usize },
    #[error("size mismatch: |I| = {0} but |J| = {1}")]
    SizeMismatch(usize, usize),
}

/// Descent set as a bitmask: bit `i-1` is set when `i` is a descent,
/// `1 <= i <= n-1`.
pub type DescentMask = u32;

// ---------------------------------------------------------------------------
// Permutations
// ---------------------------------------------------------------------------

/// A permutation of {1..n} in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<u8>,
}

impl Permutation {
    pub fn from_word(word: Vec<u8>) -> Result<Self, CombinatoricsError> {
        let n = word.len();
        let mut seen = vec![false; n + 1];
        for &v in &word {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(CombinatoricsError::NotAPermutation(n));
            }
            seen[v] = true;
        }
        Ok(Permutation { word })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n as u8).collect(),
        }
    }

    /// The reversal n, n-1, ..., 1 (the longest element).
    pub fn reversal(n: usize) -> Self {
        Permutation {
            word: (1..=n as u8).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    /// Value at 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1] as usize
    }

    /// 1-based position of value `v`.
    pub fn position_of(&self, v: usize) -> usize {
        self.word.iter().position(|&x| x as usize == v).unwrap() + 1
    }

    /// Composition with the convention (self other)(u) = self(other(u)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.n(), other.n());
        Permutation {
            word: other.word.iter().map(|&u| self.word[u as usize - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut word = vec![0u8; self.n()];
        for (i, &v) in self.word.iter().enumerate() {
            word[v as usize - 1] = (i + 1) as u8;
        }
        Permutation { word }
    }

    /// Left multiplication by the simple transposition s_i (swaps the values
    /// i and i+1).
    pub fn swap_values(&self, i: usize) -> Permutation {
        let mut word = self.word.clone();
        for v in word.iter_mut() {
            if *v as usize == i {
                *v = (i + 1) as u8;
            } else if *v as usize == i + 1 {
                *v = i as u8;
            }
        }
        Permutation { word }
    }

    /// Right multiplication by s_g (swaps the entries at positions g, g+1).
    pub fn swap_positions(&self, g: usize) -> Permutation {
        let mut word = self.word.clone();
        word.swap(g - 1, g);
        Permutation { word }
    }

    pub fn descent_mask(&self) -> DescentMask {
        let mut mask = 0u32;
        for i in 1..self.n() {
            if self.word[i - 1] > self.word[i] {
                mask |= 1 << (i - 1);
            }
        }
        mask
    }

    pub fn descent_set(&self) -> BTreeSet<usize> {
        mask_to_set(self.descent_mask())
    }

    pub fn run_stats(&self) -> RunStats {
        mask_run_stats(self.descent_mask(), self.n())
    }

    pub fn peak_stats(&self) -> PeakStats {
        mask_peak_stats(self.descent_mask(), self.n())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.word.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Alternating-run statistics of a permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunStats {
    pub run: usize,
    pub first_ascending: bool,
    /// Number of runs after prepending an initial 0.
    pub left_run: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeakStats {
    /// Interior peaks, positions 2..n-1.
    pub pk: usize,
    /// Left peaks, positions 1..n-1 with the convention sigma(0) = 0.
    pub pk_left: usize,
}

/// Run statistics from a descent mask. Runs are the maximal blocks of equal
/// ascent/descent indicators, so they only depend on the descent set.
pub fn mask_run_stats(mask: DescentMask, n: usize) -> RunStats {
    if n <= 1 {
        return RunStats {
            run: 1,
            first_ascending: true,
            left_run: 1,
        };
    }
    let mut run = 1;
    for i in 1..n - 1 {
        let a = mask >> (i - 1) & 1;
        let b = mask >> i & 1;
        if a != b {
            run += 1;
        }
    }
    let first_ascending = mask & 1 == 0;
    RunStats {
        run,
        first_ascending,
        left_run: if first_ascending { run } else { run + 1 },
    }
}

/// Peak statistics from a descent mask: a peak at i means ascent at i-1 and
/// descent at i; a left peak additionally allows i = 1 (descent at 1).
pub fn mask_peak_stats(mask: DescentMask, n: usize) -> PeakStats {
    let mut pk = 0;
    for i in 2..n {
        if mask >> (i - 2) & 1 == 0 && mask >> (i - 1) & 1 == 1 {
            pk += 1;
        }
    }
    let pk_left = pk + (mask & 1) as usize;
    PeakStats { pk, pk_left }
}

pub fn mask_to_set(mask: DescentMask) -> BTreeSet<usize> {
    (1..=32)
        .filter(|i| mask >> (i - 1) & 1 == 1)
        .collect()
}

// ---------------------------------------------------------------------------
// Compositions
// ---------------------------------------------------------------------------

/// A composition of n: a sequence of positive parts. The empty composition
/// is the unique composition of 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self, CombinatoricsError> {
        if parts.iter().any(|&p| p == 0) {
            return Err(CombinatoricsError::NonPositivePart);
        }
        Ok(Composition { parts })
    }

    pub fn empty() -> Self {
        Composition { parts: vec![] }
    }

    pub fn single(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Composition { parts: vec![n] }
        }
    }

    pub fn ones(n: usize) -> Self {
        Composition { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Des(I) = {i_1, i_1+i_2, ...} as a bitmask.
    pub fn descent_mask(&self) -> DescentMask {
        let mut mask = 0u32;
        let mut acc = 0;
        for &p in &self.parts[..self.parts.len().saturating_sub(1)] {
            acc += p;
            mask |= 1 << (acc - 1);
        }
        mask
    }

    pub fn descent_set(&self) -> BTreeSet<usize> {
        mask_to_set(self.descent_mask())
    }

    pub fn from_descent_mask(n: usize, mask: DescentMask) -> Self {
        let mut parts = Vec::new();
        let mut last = 0;
        for i in 1..n {
            if mask >> (i - 1) & 1 == 1 {
                parts.push(i - last);
                last = i;
            }
        }
        if n > 0 {
            parts.push(n - last);
        }
        Composition { parts }
    }

    pub fn from_descents(
        n: usize,
        descents: &BTreeSet<usize>,
    ) -> Result<Self, CombinatoricsError> {
        let mut mask = 0u32;
        for &d in descents {
            if d == 0 || d >= n {
                return Err(CombinatoricsError::DescentOutOfRange { pos: d, n });
            }
            mask |= 1 << (d - 1);
        }
        Ok(Self::from_descent_mask(n, mask))
    }

    /// True iff `other` refines `self`, i.e. Des(self) is a subset of
    /// Des(other). Errors on size mismatch.
    pub fn refines(&self, other: &Composition) -> Result<bool, CombinatoricsError> {
        if self.n() != other.n() {
            return Err(CombinatoricsError::SizeMismatch(self.n(), other.n()));
        }
        let a = self.descent_mask();
        let b = other.descent_mask();
        Ok(a & b == a)
    }

    /// Exchange ascents and descents and reverse their order: the descent set
    /// becomes the reversal-complement of the original within [n-1].
    pub fn bar(&self) -> Composition {
        let n = self.n();
        if n == 0 {
            return Self::empty();
        }
        let mask = self.descent_mask();
        let mut out = 0u32;
        for i in 1..n {
            if mask >> (i - 1) & 1 == 0 {
                out |= 1 << (n - i - 1);
            }
        }
        Self::from_descent_mask(n, out)
    }

    /// Run/peak statistics of any permutation in the descent class Des(I).
    pub fn run_stats(&self) -> RunStats {
        mask_run_stats(self.descent_mask(), self.n())
    }

    pub fn peak_stats(&self) -> PeakStats {
        mask_peak_stats(self.descent_mask(), self.n())
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

// ---------------------------------------------------------------------------
// Partitions
// ---------------------------------------------------------------------------

/// A partition of n: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, CombinatoricsError> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(CombinatoricsError::InvalidPartition);
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: vec![] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn odd_length(&self) -> usize {
        self.parts.iter().filter(|&&p| p % 2 == 1).count()
    }

    pub fn even_length(&self) -> usize {
        self.parts.iter().filter(|&&p| p % 2 == 0).count()
    }

    /// z_lambda = prod over part sizes r of r^{m_r} m_r!.
    pub fn z(&self) -> u64 {
        let mut z = 1u64;
        let mut i = 0;
        while i < self.parts.len() {
            let r = self.parts[i];
            let mut m = 0u64;
            while i < self.parts.len() && self.parts[i] == r {
                m += 1;
                i += 1;
            }
            for j in 1..=m {
                z *= r as u64 * j;
            }
        }
        z
    }

    /// Multiset union of parts, re-sorted decreasingly.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts: Vec<usize> = self
            .parts
            .iter()
            .chain(other.parts.iter())
            .copied()
            .collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

// ---------------------------------------------------------------------------
// Enumeration (deterministic lexicographic order)
// ---------------------------------------------------------------------------

/// All permutations of {1..n} in lexicographic word order.
pub fn permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut word: Vec<u8> = (1..=n as u8).collect();
    loop {
        out.push(Permutation { word: word.clone() });
        if !next_lex(&mut word) {
            break;
        }
    }
    out
}

fn next_lex(word: &mut [u8]) -> bool {
    let n = word.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && word[i - 1] >= word[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while word[j] <= word[i - 1] {
        j -= 1;
    }
    word.swap(i - 1, j);
    word[i..].reverse();
    true
}

/// All compositions of n in lexicographic order on the part sequences.
pub fn compositions(n: usize) -> Vec<Composition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if rest == 0 {
            out.push(Composition { parts: cur.clone() });
            return;
        }
        for p in 1..=rest {
            cur.push(p);
            rec(rest - p, cur, out);
            cur.pop();
        }
    }
    rec(n, &mut cur, &mut out);
    out
}

/// All partitions of n, parts decreasing, in lexicographically decreasing
/// order of the part sequences.
pub fn partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n.max(1), &mut cur, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Left weak order
// ---------------------------------------------------------------------------

/// The cover s_i p of p in the left weak order, when i is to the left of i+1
/// in p; `None` otherwise.
pub fn weak_order_cover(p: &Permutation, i: usize) -> Option<Permutation> {
    if p.position_of(i) < p.position_of(i + 1) {
        Some(p.swap_values(i))
    } else {
        None
    }
}

/// Connectivity of a set of permutations under the (undirected) cover
/// relation of the left weak order, restricted to the set.
pub fn is_connected(set: &HashSet<Permutation>) -> bool {
    let mut iter = set.iter();
    let start = match iter.next() {
        Some(p) => p.clone(),
        None => return true,
    };
    let n = start.n();
    let mut seen = HashSet::new();
    seen.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for i in 1..n {
            let q = p.swap_values(i);
            if set.contains(&q) && seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.len() == set.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(word: &[u8]) -> Permutation {
        Permutation::from_word(word.to_vec()).unwrap()
    }

    #[test]
    fn descent_set_examples() {
        let p = perm(&[1, 4, 5, 2, 3, 6, 8, 7]);
        assert_eq!(p.descent_set(), BTreeSet::from([3, 7]));
        assert!(Permutation::identity(5).descent_set().is_empty());
        assert_eq!(
            Permutation::reversal(4).descent_set(),
            BTreeSet::from([1, 2, 3])
        );
    }

    #[test]
    fn run_stats_examples() {
        // Runs of 14523687 are 145, 52, 2368, 87.
        let p = perm(&[1, 4, 5, 2, 3, 6, 8, 7]);
        let rs = p.run_stats();
        assert_eq!(rs.run, 4);
        assert!(rs.first_ascending);
        assert_eq!(rs.left_run, 4);

        let id = Permutation::identity(6);
        assert_eq!(
            id.run_stats(),
            RunStats {
                run: 1,
                first_ascending: true,
                left_run: 1
            }
        );

        let rs = perm(&[3, 2, 1]).run_stats();
        assert_eq!(rs.run, 1);
        assert!(!rs.first_ascending);
        assert_eq!(rs.left_run, 2);

        let rs = Permutation::identity(1).run_stats();
        assert_eq!(rs.run, 1);
        assert!(rs.first_ascending);
    }

    #[test]
    fn left_run_matches_first_run_direction() {
        for p in permutations(6) {
            let rs = p.run_stats();
            if rs.first_ascending {
                assert_eq!(rs.left_run, rs.run);
            } else {
                assert_eq!(rs.left_run, rs.run + 1);
            }
        }
    }

    #[test]
    fn peak_stats_examples() {
        let rs = perm(&[1, 3, 2]).peak_stats();
        assert_eq!((rs.pk, rs.pk_left), (1, 1));
        let rs = perm(&[2, 1, 3]).peak_stats();
        assert_eq!((rs.pk, rs.pk_left), (0, 1));
        let rs = Permutation::identity(5).peak_stats();
        assert_eq!((rs.pk, rs.pk_left), (0, 0));
    }

    #[test]
    fn composition_descents_round_trip() {
        let i = Composition::from_descents(8, &BTreeSet::from([3, 7])).unwrap();
        assert_eq!(i.parts(), &[3, 4, 1]);
        assert_eq!(Composition::from_descent_mask(5, 0).parts(), &[5]);
        assert_eq!(
            Composition::from_descents(4, &BTreeSet::from([1, 2, 3]))
                .unwrap()
                .parts(),
            &[1, 1, 1, 1]
        );
        for c in compositions(7) {
            let back = Composition::from_descents(7, &c.descent_set()).unwrap();
            assert_eq!(back, c);
        }
        assert!(Composition::from_descents(4, &BTreeSet::from([4])).is_err());
    }

    #[test]
    fn refinement() {
        let i3 = Composition::new(vec![3]).unwrap();
        let i12 = Composition::new(vec![1, 2]).unwrap();
        let i21 = Composition::new(vec![2, 1]).unwrap();
        assert!(i3.refines(&i12).unwrap());
        assert!(!i12.refines(&i21).unwrap());
        assert!(i12.refines(&i12).unwrap());
        assert!(i3.refines(&Composition::new(vec![2, 2]).unwrap()).is_err());
    }

    #[test]
    fn bar_examples() {
        let i = Composition::new(vec![1, 3, 2]).unwrap();
        assert_eq!(i.bar().parts(), &[1, 2, 1, 2]);
        assert_eq!(Composition::single(5).bar().parts(), &[1, 1, 1, 1, 1]);
        for n in 1..=8 {
            for c in compositions(n) {
                assert_eq!(c.bar().bar(), c);
                // Des(bar I) = { n - d : d not in Des(I) }.
                let des: BTreeSet<usize> = c.descent_set();
                let expect: BTreeSet<usize> =
                    (1..n).filter(|d| !des.contains(d)).map(|d| n - d).collect();
                assert_eq!(c.bar().descent_set(), expect);
            }
        }
    }

    #[test]
    fn partition_stats() {
        let l = Partition::new(vec![2, 1, 1]).unwrap();
        assert_eq!(
            (l.len(), l.odd_length(), l.even_length(), l.z()),
            (3, 2, 1, 4)
        );
        assert_eq!(Partition::new(vec![6]).unwrap().z(), 6);
        assert_eq!(Partition::new(vec![1; 5]).unwrap().z(), 120);
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(compositions(4).len(), 8);
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(permutations(1).len(), 1);
        assert_eq!(compositions(1).len(), 1);
        assert_eq!(partitions(1).len(), 1);
        assert_eq!(permutations(6).len(), 720);
        assert_eq!(compositions(6).len(), 32);
        assert_eq!(partitions(6).len(), 11);
        assert_eq!(compositions(0).len(), 1);
        assert_eq!(partitions(0).len(), 1);
    }

    #[test]
    fn statistics_constant_on_descent_classes() {
        for n in 1..=6 {
            for p in permutations(n) {
                let c = Composition::from_descent_mask(n, p.descent_mask());
                assert_eq!(p.run_stats(), c.run_stats());
                assert_eq!(p.peak_stats(), c.peak_stats());
            }
        }
    }

    #[test]
    fn weak_order_covers() {
        let p = perm(&[2, 1, 3]);
        assert_eq!(weak_order_cover(&p, 2), Some(perm(&[3, 1, 2])));
        assert_eq!(weak_order_cover(&p, 1), None);
    }

    #[test]
    fn connectivity_examples() {
        let single = HashSet::from([perm(&[1, 3, 2])]);
        assert!(is_connected(&single));
        for n in 3..=5 {
            let two = HashSet::from([Permutation::identity(n), Permutation::reversal(n)]);
            assert!(!is_connected(&two));
        }
    }

    #[test]
    fn run_sets_connected() {
        // The descent-class blocks with a fixed run count and first-run
        // direction are connected in the left weak order.
        for n in 2..=6 {
            for k in 1..n {
                for asc in [true, false] {
                    let set: HashSet<Permutation> = permutations(n)
                        .into_iter()
                        .filter(|p| {
                            let rs = p.run_stats();
                            rs.run == k && rs.first_ascending == asc
                        })
                        .collect();
                    assert!(!set.is_empty());
                    assert!(is_connected(&set), "n={n} k={k} asc={asc}");
                }
            }
        }
    }

    #[test]
    fn run_set_partition_counts() {
        for n in 2..=7 {
            let perms = permutations(n);
            let mut total = 0;
            for k in 1..n {
                let wk = perms.iter().filter(|p| p.run_stats().run == k).count();
                let wkp = perms
                    .iter()
                    .filter(|p| {
                        let rs = p.run_stats();
                        rs.run == k && rs.first_ascending
                    })
                    .count();
                let wkm = perms
                    .iter()
                    .filter(|p| {
                        let rs = p.run_stats();
                        rs.run == k && !rs.first_ascending
                    })
                    .count();
                assert_eq!(wk, wkp + wkm);
                total += wk;
            }
            assert_eq!(total, perms.len());
            // Left-run classes: W°_k = W_k^+ ⊔ W_{k-1}^-.
            for k in 1..=n {
                let circ = perms.iter().filter(|p| p.run_stats().left_run == k).count();
                let plus = perms
                    .iter()
                    .filter(|p| {
                        let rs = p.run_stats();
                        rs.run == k && rs.first_ascending
                    })
                    .count();
                let minus = perms
                    .iter()
                    .filter(|p| {
                        let rs = p.run_stats();
                        k >= 1 && rs.run + 1 == k && !rs.first_ascending
                    })
                    .count();
                assert_eq!(circ, plus + minus);
            }
        }
    }
}
