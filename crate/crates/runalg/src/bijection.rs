//! Coefficient-matching bijections behind the closure of the signed-run
//! span: a map on factorization pairs for weak-order-adjacent permutations,
//! and the two-case variant for left runs.

use std::collections::HashMap;

use thiserror::Error;

use crate::combinatorics::{permutations, Permutation};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BijectionError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("case analysis exhausted: {0}")]
    InternalCaseExhaustion(&'static str),
}

/// Which branch of the definition produced the image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiCase {
    /// s_i alpha stays in the class: move the swap into alpha.
    SwapAlpha,
    /// s_g beta stays in the class: move the swap into beta.
    SwapBeta,
    /// The four rewiring branches, named by the two binary conditions:
    /// the letters around the swapped pair in alpha (C/D), and the letters
    /// around the swapped positions in the product (E/F).
    CE,
    DE,
    CF,
    DF,
}

fn in_run_class_plus(p: &Permutation, j: usize) -> bool {
    let s = p.run_stats();
    s.run == j && s.first_ascending
}

fn in_left_run_class(p: &Permutation, j: usize) -> bool {
    p.run_stats().left_run == j
}

/// Block rewiring shared by the four third-case branches.
///
/// `after` selects the direction: true moves the maximal block after the
/// swapped pair in front of it (the C-E shape), false moves the maximal
/// block before the pair behind it (the D-E shape). `block_pred` is the
/// letter condition defining the block (> i+1 in the E branches, < i in
/// the F branches, where i is the swapped value).
fn rewire(
    alpha: &Permutation,
    beta: &Permutation,
    g: usize,
    h: usize,
    after: bool,
    block_pred: &dyn Fn(usize) -> bool,
    edge_pred: &dyn Fn(usize) -> bool,
) -> Result<(Permutation, Permutation), BijectionError> {
    let n = alpha.n();
    // The pair occupies positions g, g+1.
    let pair = [alpha.at(g), alpha.at(g + 1)];
    let mut word: Vec<u8> = Vec::with_capacity(n);
    let (block_lo, block_hi);
    if after {
        // X1 = 1..g-1, pair, X3 = maximal block from g+2, X4 = rest.
        let mut end = g + 1;
        while end + 1 <= n && block_pred(alpha.at(end + 1)) {
            end += 1;
        }
        if end == g + 1 {
            return Err(BijectionError::InternalCaseExhaustion(
                "empty block after the pair",
            ));
        }
        if end + 1 > n || !edge_pred(alpha.at(end + 1)) {
            return Err(BijectionError::InternalCaseExhaustion(
                "tail after the block has the wrong letter",
            ));
        }
        block_lo = g + 2;
        block_hi = end;
        for u in 1..g {
            word.push(alpha.at(u) as u8);
        }
        for u in block_lo..=block_hi {
            word.push(alpha.at(u) as u8);
        }
        word.push(pair[1] as u8);
        word.push(pair[0] as u8);
        for u in block_hi + 1..=n {
            word.push(alpha.at(u) as u8);
        }
    } else {
        // X1 = 1..start-1 (ends with an edge letter), X2 = maximal block
        // ending at g-1, pair, X4 = rest.
        let mut start = g;
        while start >= 2 && block_pred(alpha.at(start - 1)) {
            start -= 1;
        }
        if start == g {
            return Err(BijectionError::InternalCaseExhaustion(
                "empty block before the pair",
            ));
        }
        if start < 2 || !edge_pred(alpha.at(start - 1)) {
            return Err(BijectionError::InternalCaseExhaustion(
                "head before the block has the wrong letter",
            ));
        }
        block_lo = start;
        block_hi = g - 1;
        for u in 1..start {
            word.push(alpha.at(u) as u8);
        }
        word.push(pair[1] as u8);
        word.push(pair[0] as u8);
        for u in block_lo..=block_hi {
            word.push(alpha.at(u) as u8);
        }
        for u in g + 2..=n {
            word.push(alpha.at(u) as u8);
        }
    }
    let alpha2 = Permutation::from_word(word).expect("rewired word is a permutation");
    let block_len = block_hi - block_lo + 1;
    // The pair positions shift across the block; everything inside the
    // block shifts two steps the other way.
    let mut bword: Vec<u8> = Vec::with_capacity(n);
    for u in 1..=n {
        let v = beta.at(u);
        let v2 = if u == h || u == h + 1 {
            if after {
                v + block_len
            } else {
                v - block_len
            }
        } else if v >= block_lo && v <= block_hi {
            if after {
                v - 2
            } else {
                v + 2
            }
        } else {
            v
        };
        bword.push(v2 as u8);
    }
    let beta2 = Permutation::from_word(bword).expect("rewired positions are a permutation");
    Ok((alpha2, beta2))
}

/// Transports a factorization of sigma to one of s_i sigma, preserving the
/// run classes of both factors. Defined when i, i+1 are adjacent in the
/// product and the swap keeps the product's run class. Applying the map
/// again with the same i inverts it.
pub fn phi(
    alpha: &Permutation,
    beta: &Permutation,
    i: usize,
    j: usize,
    k: usize,
) -> Result<(Permutation, Permutation, PhiCase), BijectionError> {
    let n = alpha.n();
    if beta.n() != n {
        return Err(BijectionError::PreconditionViolated("size mismatch"));
    }
    if !in_run_class_plus(alpha, j) || !in_run_class_plus(beta, k) {
        return Err(BijectionError::PreconditionViolated(
            "factors outside the stated run classes",
        ));
    }
    let sigma = alpha.compose(beta);
    let tau = sigma.swap_values(i);
    let (ss, ts) = (sigma.run_stats(), tau.run_stats());
    if ss.run != ts.run || ss.first_ascending != ts.first_ascending {
        return Err(BijectionError::PreconditionViolated(
            "swap changes the product's run class",
        ));
    }
    let pi = sigma.position_of(i);
    let pi1 = sigma.position_of(i + 1);
    if pi.abs_diff(pi1) != 1 {
        return Err(BijectionError::PreconditionViolated(
            "swapped values not adjacent in the product",
        ));
    }

    let sa = alpha.swap_values(i);
    if in_run_class_plus(&sa, j) {
        return Ok((sa, beta.clone(), PhiCase::SwapAlpha));
    }
    // The swap must act locally in alpha too.
    let (ai, ai1) = (alpha.position_of(i), alpha.position_of(i + 1));
    if ai.abs_diff(ai1) != 1 {
        return Err(BijectionError::InternalCaseExhaustion(
            "swap left alpha's class without the values being adjacent",
        ));
    }
    let g = ai.min(ai1);
    let sb = beta.swap_values(g);
    if in_run_class_plus(&sb, k) {
        return Ok((alpha.clone(), sb, PhiCase::SwapBeta));
    }
    let (bg, bg1) = (beta.position_of(g), beta.position_of(g + 1));
    if bg.abs_diff(bg1) != 1 {
        return Err(BijectionError::InternalCaseExhaustion(
            "swap left beta's class without the values being adjacent",
        ));
    }
    let h = bg.min(bg1);
    if !(2..=n - 2).contains(&g) || !(2..=n - 2).contains(&h) {
        return Err(BijectionError::InternalCaseExhaustion(
            "pair position out of the interior range",
        ));
    }
    let low = |v: usize| v < i;
    let high = |v: usize| v > i + 1;
    let c_case = if low(alpha.at(g - 1)) && high(alpha.at(g + 2)) {
        true
    } else if high(alpha.at(g - 1)) && low(alpha.at(g + 2)) {
        false
    } else {
        return Err(BijectionError::InternalCaseExhaustion(
            "letters around the pair in alpha do not straddle it",
        ));
    };
    let (x, y) = (sigma.at(h - 1), sigma.at(h + 2));
    let e_case = if low(x) && low(y) {
        true
    } else if high(x) && high(y) {
        false
    } else {
        return Err(BijectionError::InternalCaseExhaustion(
            "letters around the swap in the product are on opposite sides",
        ));
    };
    let (pair, case) = match (c_case, e_case) {
        (true, true) => (rewire(alpha, beta, g, h, true, &high, &low)?, PhiCase::CE),
        (false, true) => (rewire(alpha, beta, g, h, false, &high, &low)?, PhiCase::DE),
        (false, false) => (rewire(alpha, beta, g, h, true, &low, &high)?, PhiCase::DF),
        (true, false) => (rewire(alpha, beta, g, h, false, &low, &high)?, PhiCase::CF),
    };
    Ok((pair.0, pair.1, case))
}

/// The inverse direction: the same definition applied from the other end
/// of the weak-order edge.
pub fn psi(
    alpha: &Permutation,
    beta: &Permutation,
    i: usize,
    j: usize,
    k: usize,
) -> Result<(Permutation, Permutation, PhiCase), BijectionError> {
    phi(alpha, beta, i, j, k)
}

/// The two-case transport for left-run factorizations across the edge
/// sigma -> s_{n-1} sigma, for products starting n-1, n.
pub fn delta(
    alpha: &Permutation,
    beta: &Permutation,
    j: usize,
    k: usize,
) -> Result<(Permutation, Permutation), BijectionError> {
    let n = alpha.n();
    if !in_left_run_class(alpha, j) || !in_left_run_class(beta, k) {
        return Err(BijectionError::PreconditionViolated(
            "factors outside the stated left-run classes",
        ));
    }
    let sigma = alpha.compose(beta);
    let head = [sigma.at(1), sigma.at(2)];
    if head != [n - 1, n] && head != [n, n - 1] {
        return Err(BijectionError::PreconditionViolated(
            "product must start with the top two values",
        ));
    }
    let sa = alpha.swap_values(n - 1);
    if in_left_run_class(&sa, j) {
        return Ok((sa, beta.clone()));
    }
    let sb = beta.swap_values(n - 1);
    if !in_left_run_class(&sb, k) {
        // The argument rules this out: the swap must move one factor.
        return Err(BijectionError::InternalCaseExhaustion(
            "swap leaves both left-run classes",
        ));
    }
    Ok((alpha.clone(), sb))
}

#[derive(Debug, Clone, Default)]
pub struct BijectionReport {
    pub n: usize,
    /// Weak-order edges with the swapped values adjacent, within a run class.
    pub edges: usize,
    /// Factorization pairs transported across an edge.
    pub pairs: usize,
    pub size_mismatches: usize,
    pub image_errors: usize,
    pub inverse_failures: usize,
    /// Violations of the case pairing (the two swap cases are self-paired,
    /// the rewiring cases pair up as CE/DE and CF/DF).
    pub case_pairing_failures: usize,
    /// Left-run edges checked with the two-case map.
    pub delta_edges: usize,
    pub delta_failures: usize,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.size_mismatches == 0
            && self.image_errors == 0
            && self.inverse_failures == 0
            && self.case_pairing_failures == 0
            && self.delta_failures == 0
    }
}

fn expected_partner(c: PhiCase) -> PhiCase {
    match c {
        PhiCase::SwapAlpha => PhiCase::SwapAlpha,
        PhiCase::SwapBeta => PhiCase::SwapBeta,
        PhiCase::CE => PhiCase::DE,
        PhiCase::DE => PhiCase::CE,
        PhiCase::CF => PhiCase::DF,
        PhiCase::DF => PhiCase::CF,
    }
}

/// Exhaustive verification at one degree: every factorization set is
/// transported bijectively across every eligible weak-order edge, the map
/// applied twice is the identity, the rewiring cases exchange as predicted,
/// and the left-run two-case map works with no third case.
pub fn verify_bijection(n: usize) -> BijectionReport {
    assert!((2..=7).contains(&n), "exhaustive check is gated to 2..=7");
    let mut report = BijectionReport {
        n,
        ..Default::default()
    };
    let perms = permutations(n);
    // sigma -> per (j, k), its factorizations into ascending-first factors.
    let mut table: HashMap<Permutation, HashMap<(usize, usize), Vec<(Permutation, Permutation)>>> =
        HashMap::new();
    for a in &perms {
        let sa = a.run_stats();
        if !sa.first_ascending {
            continue;
        }
        for b in &perms {
            let sb = b.run_stats();
            if !sb.first_ascending {
                continue;
            }
            table
                .entry(a.compose(b))
                .or_default()
                .entry((sa.run, sb.run))
                .or_default()
                .push((a.clone(), b.clone()));
        }
    }
    let empty: HashMap<(usize, usize), Vec<(Permutation, Permutation)>> = HashMap::new();
    for sigma in &perms {
        let ss = sigma.run_stats();
        for i in 1..n {
            if sigma.position_of(i).abs_diff(sigma.position_of(i + 1)) != 1 {
                continue;
            }
            let tau = sigma.swap_values(i);
            let ts = tau.run_stats();
            if ss.run != ts.run || ss.first_ascending != ts.first_ascending {
                continue;
            }
            report.edges += 1;
            let from = table.get(sigma).unwrap_or(&empty);
            let to = table.get(&tau).unwrap_or(&empty);
            let mut jk_keys: Vec<(usize, usize)> = from.keys().chain(to.keys()).copied().collect();
            jk_keys.sort_unstable();
            jk_keys.dedup();
            for (j, k) in jk_keys {
                let src = from.get(&(j, k)).map_or(&[][..], |v| v);
                let dst = to.get(&(j, k)).map_or(&[][..], |v| v);
                if src.len() != dst.len() {
                    report.size_mismatches += 1;
                }
                for (a, b) in src {
                    report.pairs += 1;
                    match phi(a, b, i, j, k) {
                        Err(_) => report.image_errors += 1,
                        Ok((a2, b2, case)) => {
                            if !dst.iter().any(|(x, y)| x == &a2 && y == &b2) {
                                report.image_errors += 1;
                                continue;
                            }
                            match psi(&a2, &b2, i, j, k) {
                                Err(_) => report.inverse_failures += 1,
                                Ok((a3, b3, back_case)) => {
                                    if &a3 != a || &b3 != b {
                                        report.inverse_failures += 1;
                                    }
                                    if back_case != expected_partner(case) {
                                        report.case_pairing_failures += 1;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    // The left-run map: products starting n-1, n against their swaps.
    let mut left_table: HashMap<
        Permutation,
        HashMap<(usize, usize), Vec<(Permutation, Permutation)>>,
    > = HashMap::new();
    for a in &perms {
        for b in &perms {
            let s = a.compose(b);
            if (s.at(1) == n - 1 && s.at(2) == n) || (s.at(1) == n && s.at(2) == n - 1) {
                left_table
                    .entry(s)
                    .or_default()
                    .entry((a.run_stats().left_run, b.run_stats().left_run))
                    .or_default()
                    .push((a.clone(), b.clone()));
            }
        }
    }
    for sigma in &perms {
        if sigma.at(1) != n - 1 || sigma.at(2) != n {
            continue;
        }
        // The swap drops the run count, which needs at least two runs.
        if sigma.run_stats().run < 2 {
            continue;
        }
        report.delta_edges += 1;
        let tau = sigma.swap_values(n - 1);
        let from = left_table.get(sigma).unwrap_or(&empty);
        let to = left_table.get(&tau).unwrap_or(&empty);
        let mut jk_keys: Vec<(usize, usize)> = from.keys().chain(to.keys()).copied().collect();
        jk_keys.sort_unstable();
        jk_keys.dedup();
        for (j, k) in jk_keys {
            let src = from.get(&(j, k)).map_or(&[][..], |v| v);
            let dst = to.get(&(j, k)).map_or(&[][..], |v| v);
            if src.len() != dst.len() {
                report.delta_failures += 1;
            }
            for (a, b) in src {
                match delta(a, b, j, k) {
                    Err(_) => report.delta_failures += 1,
                    Ok((a2, b2)) => {
                        if !dst.iter().any(|(x, y)| x == &a2 && y == &b2) {
                            report.delta_failures += 1;
                            continue;
                        }
                        // Applying the two-case map back recovers the input.
                        match delta(&a2, &b2, j, k) {
                            Ok((a3, b3)) if &a3 == a && &b3 == b => {}
                            _ => report.delta_failures += 1,
                        }
                    }
                }
            }
        }
    }
    report
}
