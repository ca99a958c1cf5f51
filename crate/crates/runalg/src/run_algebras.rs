//! The run and peak subalgebras of the descent algebra: spanning families,
//! closure certificates, orthogonal idempotents, the radical decomposition,
//! and character tables.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::combinatorics::{compositions, partitions, Composition, Partition};
use crate::descent_algebra::{Basis, DescentElement};
use crate::linalg::{null_space, rank, solve_in_span};
use crate::nsym::{build_v, build_v_total, v1_minus, v1_plus, NSymSeries, VSign};
use crate::rat::{rat, rat_int, Rat};
use crate::sym::{gamma, SymElement};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RunAlgebraError {
    #[error("index {k} out of range for {what} at degree {n}")]
    OutOfRange {
        what: &'static str,
        k: usize,
        n: usize,
    },
    #[error("product of basis elements {0} and {1} escapes the span")]
    NotClosed(String, String),
    #[error("change-of-basis matrix is singular")]
    Singular,
    #[error("identity failed: {0}")]
    Identity(String),
    #[error("operation not defined for this algebra")]
    Unsupported,
}

/// The six subalgebras spanned by run and peak statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraId {
    /// Signed runs W_k^+, W_k^-: noncommutative.
    Wpm,
    /// Runs W_k = W_k^+ + W_k^-.
    W,
    /// Left runs W_k°.
    Wcirc,
    /// The omega-symmetric part: even runs plus both signs of odd runs.
    C,
    /// Interior peaks P_k.
    P,
    /// Left peaks P_k°.
    Pcirc,
}

impl AlgebraId {
    pub const ALL: [AlgebraId; 6] = [
        AlgebraId::Wpm,
        AlgebraId::W,
        AlgebraId::Wcirc,
        AlgebraId::C,
        AlgebraId::P,
        AlgebraId::Pcirc,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            AlgebraId::Wpm => "wpm",
            AlgebraId::W => "w",
            AlgebraId::Wcirc => "wcirc",
            AlgebraId::C => "c",
            AlgebraId::P => "p",
            AlgebraId::Pcirc => "pcirc",
        }
    }

    pub fn from_name(s: &str) -> Option<AlgebraId> {
        AlgebraId::ALL.iter().copied().find(|id| id.name() == s)
    }

    pub fn dimension(&self, n: usize) -> usize {
        match self {
            AlgebraId::Wpm => 2 * n - 2,
            AlgebraId::W => n - 1,
            AlgebraId::Wcirc => n,
            AlgebraId::C => (3 * n - 2) / 2,
            AlgebraId::P => n.div_ceil(2),
            AlgebraId::Pcirc => n / 2 + 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WVariant {
    Plus,
    Minus,
    Plain,
    Circ,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PVariant {
    Plain,
    Circ,
}

/// W_k^+ / W_k^- / W_k / W_k°: descent classes grouped by run count
/// (and by the direction of the first run for the signed variants).
pub fn build_w(n: usize, k: usize, variant: WVariant) -> Result<DescentElement, RunAlgebraError> {
    let max = match variant {
        WVariant::Circ => n,
        _ => n.saturating_sub(1),
    };
    if k < 1 || k > max {
        return Err(RunAlgebraError::OutOfRange { what: "W", k, n });
    }
    let mut out = DescentElement::zero(n, Basis::R);
    for comp in compositions(n) {
        let stats = comp.run_stats();
        let keep = match variant {
            WVariant::Plus => stats.run == k && stats.first_ascending,
            WVariant::Minus => stats.run == k && !stats.first_ascending,
            WVariant::Plain => stats.run == k,
            WVariant::Circ => stats.left_run == k,
        };
        if keep {
            out.add_term(comp, Rat::one());
        }
    }
    Ok(out)
}

/// P_k (interior peaks) / P_k° (left peaks): descent classes grouped by
/// peak count.
pub fn build_p(n: usize, k: usize, variant: PVariant) -> Result<DescentElement, RunAlgebraError> {
    let max = match variant {
        PVariant::Plain => (n.saturating_sub(1)) / 2,
        PVariant::Circ => n / 2,
    };
    if k > max {
        return Err(RunAlgebraError::OutOfRange { what: "P", k, n });
    }
    let mut out = DescentElement::zero(n, Basis::R);
    for comp in compositions(n) {
        let stats = comp.peak_stats();
        let keep = match variant {
            PVariant::Plain => stats.pk == k,
            PVariant::Circ => stats.pk_left == k,
        };
        if keep {
            out.add_term(comp, Rat::one());
        }
    }
    Ok(out)
}

/// The labeled spanning basis of each algebra, in a fixed order.
pub fn algebra_basis(n: usize, id: AlgebraId) -> Vec<(String, DescentElement)> {
    let mut basis = Vec::new();
    match id {
        AlgebraId::Wpm => {
            for k in 1..n {
                basis.push((format!("W{k}+"), build_w(n, k, WVariant::Plus).unwrap()));
            }
            for k in 1..n {
                basis.push((format!("W{k}-"), build_w(n, k, WVariant::Minus).unwrap()));
            }
        }
        AlgebraId::W => {
            for k in 1..n {
                basis.push((format!("W{k}"), build_w(n, k, WVariant::Plain).unwrap()));
            }
        }
        AlgebraId::Wcirc => {
            for k in 1..=n {
                basis.push((format!("W{k}o"), build_w(n, k, WVariant::Circ).unwrap()));
            }
        }
        AlgebraId::C => {
            for k in 1..=(n - 1) / 2 {
                basis.push((
                    format!("W{}", 2 * k),
                    build_w(n, 2 * k, WVariant::Plain).unwrap(),
                ));
            }
            for k in 1..=n / 2 {
                basis.push((
                    format!("W{}+", 2 * k - 1),
                    build_w(n, 2 * k - 1, WVariant::Plus).unwrap(),
                ));
                basis.push((
                    format!("W{}-", 2 * k - 1),
                    build_w(n, 2 * k - 1, WVariant::Minus).unwrap(),
                ));
            }
        }
        AlgebraId::P => {
            for k in 0..=(n - 1) / 2 {
                basis.push((format!("P{k}"), build_p(n, k, PVariant::Plain).unwrap()));
            }
        }
        AlgebraId::Pcirc => {
            for k in 0..=n / 2 {
                basis.push((format!("P{k}o"), build_p(n, k, PVariant::Circ).unwrap()));
            }
        }
    }
    basis
}

/// A verified multiplication table: every pairwise product of the basis,
/// re-expanded in the basis by exact elimination.
#[derive(Debug, Clone)]
pub struct ClosureCertificate {
    pub n: usize,
    pub id: AlgebraId,
    pub labels: Vec<String>,
    pub basis: Vec<DescentElement>,
    /// constants[i][j][k]: coefficient of basis_k in basis_i * basis_j.
    pub constants: Vec<Vec<Vec<Rat>>>,
}

impl ClosureCertificate {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// First (i, j) with constants[i][j] != constants[j][i], if any.
    pub fn asymmetry_witness(&self) -> Option<(usize, usize)> {
        let d = self.dim();
        for i in 0..d {
            for j in i + 1..d {
                if self.constants[i][j] != self.constants[j][i] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_commutative(&self) -> bool {
        self.asymmetry_witness().is_none()
    }
}

pub fn closure_certificate(n: usize, id: AlgebraId) -> Result<ClosureCertificate, RunAlgebraError> {
    assert!(n >= 2, "certificates start at degree 2");
    let labeled = algebra_basis(n, id);
    let labels: Vec<String> = labeled.iter().map(|(l, _)| l.clone()).collect();
    let basis: Vec<DescentElement> = labeled.into_iter().map(|(_, b)| b).collect();
    let coords: Vec<Vec<Rat>> = basis.iter().map(|b| b.r_coordinates()).collect();
    if rank(coords.clone()) != basis.len() {
        return Err(RunAlgebraError::Singular);
    }
    let d = basis.len();
    let mut constants = vec![vec![Vec::new(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let prod = basis[i].internal_product(&basis[j]).unwrap();
            let c = solve_in_span(&coords, &prod.r_coordinates())
                .ok_or_else(|| RunAlgebraError::NotClosed(labels[i].clone(), labels[j].clone()))?;
            constants[i][j] = c;
        }
    }
    Ok(ClosureCertificate {
        n,
        id,
        labels,
        basis,
        constants,
    })
}

/// Degree-n parts of the series family spanning the algebra.
pub fn v_family(n: usize, id: AlgebraId) -> Vec<(String, DescentElement)> {
    let mut fam = Vec::new();
    let mut push = |label: String, s: NSymSeries| {
        fam.push((label, s.part(n).clone()));
    };
    match id {
        AlgebraId::Wpm => {
            for k in 1..n {
                push(format!("V{k}+"), build_v(k, VSign::Plus, n));
                push(format!("V{k}-"), build_v(k, VSign::Minus, n));
            }
        }
        AlgebraId::W => {
            for k in 1..n {
                push(format!("V{k}"), build_v_total(k, n));
            }
        }
        AlgebraId::Wcirc => {
            for k in 1..=n {
                push(format!("V{k}+"), build_v(k, VSign::Plus, n));
            }
        }
        AlgebraId::C => {
            for k in 0..n {
                if 2 * k + 1 < n {
                    push(format!("V{}+", 2 * k + 1), build_v(2 * k + 1, VSign::Plus, n));
                    push(
                        format!("V{}-", 2 * k + 1),
                        build_v(2 * k + 1, VSign::Minus, n),
                    );
                }
            }
            for l in 1..n {
                if 2 * l < n {
                    push(format!("V{}", 2 * l), build_v_total(2 * l, n));
                }
            }
        }
        AlgebraId::P => {
            for k in 1..=(n + 1) / 2 {
                push(format!("V{}-", 2 * k), build_v(2 * k, VSign::Minus, n));
            }
        }
        AlgebraId::Pcirc => {
            for k in 0..=n / 2 {
                push(format!("V{}+", 2 * k + 1), build_v(2 * k + 1, VSign::Plus, n));
            }
        }
    }
    fam
}

/// Expresses the series family in the class-sum basis; row i holds the
/// coordinates of the i-th series element. Errors if the square matrix is
/// singular, i.e. the family fails to span.
pub fn v_to_w_basis(n: usize, id: AlgebraId) -> Result<Vec<Vec<Rat>>, RunAlgebraError> {
    let basis = algebra_basis(n, id);
    let coords: Vec<Vec<Rat>> = basis.iter().map(|(_, b)| b.r_coordinates()).collect();
    let fam = v_family(n, id);
    if fam.len() != basis.len() {
        return Err(RunAlgebraError::Singular);
    }
    let mut matrix = Vec::with_capacity(fam.len());
    for (_, v) in &fam {
        let c = solve_in_span(&coords, &v.r_coordinates()).ok_or(RunAlgebraError::Singular)?;
        matrix.push(c);
    }
    if rank(matrix.clone()) != matrix.len() {
        return Err(RunAlgebraError::Singular);
    }
    Ok(matrix)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdFamily {
    Iplus,
    Iminus,
    Jplus,
    Jminus,
}

/// The idempotent-generating series at the given cutoff:
/// I_1^- = (1/2) log V_2^-, I_k^- = (1/k!) (I_1^-)^k, the + mirror, and
/// J_k^± = V_1^± (V_2^∓)^(-1/2) I_k^∓, all under the external product.
pub fn idempotent_series(family: IdFamily, k: usize, cutoff: usize) -> NSymSeries {
    let half = rat(1, 2);
    let i_pow = |sign: VSign, k: usize| -> NSymSeries {
        if k == 0 {
            return NSymSeries::one(cutoff);
        }
        let v2 = build_v(2, sign, cutoff);
        let i1 = v2.log_star().unwrap().scale(&half);
        let mut fact = Rat::one();
        for j in 2..=k {
            fact *= rat_int(j as i64);
        }
        i1.external_pow(k).scale(&(Rat::one() / fact))
    };
    match family {
        // I_k^- lives in the interior-peak algebra: it is a series in V_2^-.
        IdFamily::Iminus => i_pow(VSign::Minus, k),
        IdFamily::Iplus => i_pow(VSign::Plus, k),
        IdFamily::Jplus => {
            let j0 = v1_plus(cutoff).external_product(
                &build_v(2, VSign::Minus, cutoff)
                    .power_star(&-half.clone())
                    .unwrap(),
            );
            j0.external_product(&i_pow(VSign::Minus, k))
        }
        IdFamily::Jminus => {
            let j0 = v1_minus(cutoff).external_product(
                &build_v(2, VSign::Plus, cutoff).power_star(&-half.clone()).unwrap(),
            );
            j0.external_product(&i_pow(VSign::Plus, k))
        }
    }
}

/// Degree-n part of the idempotent series.
pub fn idempotent(n: usize, family: IdFamily, k: usize) -> DescentElement {
    idempotent_series(family, k, n).part(n).clone()
}

/// Expected commutative image of an idempotent: the sum of p_lambda/z_lambda
/// over partitions passing the filter.
pub fn gamma_image<F: Fn(&Partition) -> bool>(n: usize, filter: F) -> SymElement {
    let mut out = SymElement::zero(n);
    for l in partitions(n) {
        if filter(&l) {
            out = out.add(&SymElement::p_idempotent(l));
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct IdempotentSystem {
    pub n: usize,
    pub id: AlgebraId,
    pub labels: Vec<String>,
    pub elements: Vec<DescentElement>,
    /// True when the elements sum to the unit R_(n).
    pub complete: bool,
}

/// The orthogonal idempotent basis of each algebra, assembled from the
/// I/J families with the k = n (mod 2) parity constraint, then verified:
/// pairwise orthogonality, idempotency, membership, count = dim, and the
/// predicted commutative images. The W^± system reuses the C system and
/// must additionally be complete.
pub fn idempotent_system(n: usize, id: AlgebraId) -> Result<IdempotentSystem, RunAlgebraError> {
    assert!(n >= 2);
    let half = rat(1, 2);
    let parity = |k: usize| k % 2 == n % 2;
    // (label, element, expected image under the ribbon-to-symmetric map).
    let mut system: Vec<(String, DescentElement, SymElement)> = Vec::new();

    // Shared building blocks, computed once per degree.
    let ip = |k| idempotent(n, IdFamily::Iplus, k);
    let im = |k| idempotent(n, IdFamily::Iminus, k);
    let jp = |k| idempotent(n, IdFamily::Jplus, k);
    let jm = |k| idempotent(n, IdFamily::Jminus, k);

    let even_positive = |l: &Partition| l.even_length() > 0 && l.even_length() % 2 == 0;
    match id {
        AlgebraId::W | AlgebraId::C | AlgebraId::Wpm => {
            for k in (1..=n).filter(|&k| parity(k)) {
                system.push((
                    format!("(I{k}+ + I{k}-)/2"),
                    ip(k).add(&im(k)).scale(&half),
                    gamma_image(n, |l| l.odd_length() == k && l.even_length() == 0),
                ));
            }
            for l in (0..=n.saturating_sub(4)).filter(|&l| parity(l)) {
                if n < 4 {
                    break;
                }
                system.push((
                    format!("(J{l}+ + J{l}- - I{l}+ - I{l}-)/2"),
                    jp(l).add(&jm(l)).sub(&ip(l)).sub(&im(l)).scale(&half),
                    gamma_image(n, |la| la.odd_length() == l && even_positive(la)),
                ));
            }
            if id != AlgebraId::W {
                for m in (0..=n - 2).filter(|&m| parity(m)) {
                    system.push((
                        format!("(J{m}+ - J{m}-)/2"),
                        jp(m).sub(&jm(m)).scale(&half),
                        gamma_image(n, |l| l.odd_length() == m && l.even_length() % 2 == 1),
                    ));
                }
            }
        }
        AlgebraId::Wcirc => {
            for k in (1..=n).filter(|&k| parity(k)) {
                system.push((
                    format!("I{k}+"),
                    ip(k),
                    gamma_image(n, |l| l.odd_length() == k && l.even_length() == 0),
                ));
            }
            // The difference of the two indicator images is already an
            // indicator, so no halving here.
            for l in (0..=n - 2).filter(|&l| parity(l)) {
                system.push((
                    format!("J{l}+ - I{l}+"),
                    jp(l).sub(&ip(l)),
                    gamma_image(n, |la| la.odd_length() == l && la.even_length() > 0),
                ));
            }
        }
        AlgebraId::P => {
            for k in (1..=n).filter(|&k| parity(k)) {
                system.push((
                    format!("I{k}-"),
                    im(k),
                    gamma_image(n, |l| l.odd_length() == k && l.even_length() == 0),
                ));
            }
        }
        AlgebraId::Pcirc => {
            for k in (0..=n).filter(|&k| parity(k)) {
                system.push((
                    format!("J{k}+"),
                    jp(k),
                    gamma_image(n, |l| l.odd_length() == k),
                ));
            }
        }
    }

    let basis = algebra_basis(n, id);
    let coords: Vec<Vec<Rat>> = basis.iter().map(|(_, b)| b.r_coordinates()).collect();
    // The signed-run algebra is not semisimple; its complete system is the
    // one of its symmetric part, so that is the count to match.
    let expected_count = match id {
        AlgebraId::Wpm => AlgebraId::C.dimension(n),
        other => other.dimension(n),
    };
    if system.len() != expected_count {
        return Err(RunAlgebraError::Identity(format!(
            "{} idempotents against expected count {}",
            system.len(),
            expected_count
        )));
    }
    for (label, e, image) in &system {
        if solve_in_span(&coords, &e.r_coordinates()).is_none() {
            return Err(RunAlgebraError::Identity(format!(
                "{label} outside the {} span",
                id.name()
            )));
        }
        if &gamma(e) != image {
            return Err(RunAlgebraError::Identity(format!(
                "{label} has the wrong commutative image"
            )));
        }
    }
    for (i, (li, ei, _)) in system.iter().enumerate() {
        for (j, (lj, ej, _)) in system.iter().enumerate() {
            let prod = ei.internal_product(ej).unwrap();
            let expect = if i == j {
                ei.clone()
            } else {
                DescentElement::zero(n, Basis::R)
            };
            if !prod.equivalent(&expect) {
                return Err(RunAlgebraError::Identity(format!(
                    "{li} * {lj} is not {}",
                    if i == j { "idempotent" } else { "zero" }
                )));
            }
        }
    }
    let mut sum = DescentElement::zero(n, Basis::R);
    for (_, e, _) in &system {
        sum = sum.add(e);
    }
    let complete = sum.equivalent(&DescentElement::unit(n));
    if id == AlgebraId::Wpm && !complete {
        return Err(RunAlgebraError::Identity(
            "signed-run system does not sum to the unit".into(),
        ));
    }
    let (labels, elements) = system
        .into_iter()
        .map(|(l, e, _)| (l, e))
        .unzip();
    Ok(IdempotentSystem {
        n,
        id,
        labels,
        elements,
        complete,
    })
}

#[derive(Debug, Clone)]
pub struct RadicalReport {
    pub n: usize,
    pub kernel_dim: usize,
    pub expected_dim: usize,
    /// W_{2k}^+ - W_{2k}^- span the kernel.
    pub spanned_by_differences: bool,
    /// The symmetric part and the kernel decompose the signed-run algebra.
    pub direct_sum: bool,
}

impl RadicalReport {
    pub fn passed(&self) -> bool {
        self.kernel_dim == self.expected_dim && self.spanned_by_differences && self.direct_sum
    }
}

/// The radical of the signed-run algebra: the kernel of the ribbon-to-
/// symmetric map inside it, with its explicit spanning set and the
/// complement decomposition.
pub fn radical_check(n: usize) -> RadicalReport {
    assert!(n >= 2);
    let parts_order = partitions(n);
    let sym_coords = |x: &DescentElement| -> Vec<Rat> {
        let g = gamma(x);
        parts_order.iter().map(|l| g.coefficient(l)).collect()
    };
    let basis = algebra_basis(n, AlgebraId::Wpm);
    let images: Vec<Vec<Rat>> = basis.iter().map(|(_, b)| sym_coords(b)).collect();
    // Null-space coefficients give a basis of the kernel inside the algebra.
    let kernel_coeffs = null_space(&images);
    let kernel_dim = kernel_coeffs.len();
    let mut kernel_vecs: Vec<Vec<Rat>> = Vec::new();
    for c in &kernel_coeffs {
        let mut acc = DescentElement::zero(n, Basis::R);
        for (coef, (_, b)) in c.iter().zip(&basis) {
            acc = acc.add(&b.scale(coef));
        }
        kernel_vecs.push(acc.r_coordinates());
    }
    // Candidate spanning set W_{2k}^+ - W_{2k}^-.
    let mut diffs: Vec<Vec<Rat>> = Vec::new();
    let mut diffs_in_kernel = true;
    for k in 1..=(n.div_ceil(2)).saturating_sub(1) {
        let d = build_w(n, 2 * k, WVariant::Plus)
            .unwrap()
            .sub(&build_w(n, 2 * k, WVariant::Minus).unwrap());
        if !gamma(&d).is_zero() {
            diffs_in_kernel = false;
        }
        diffs.push(d.r_coordinates());
    }
    let spanned_by_differences = diffs_in_kernel
        && rank(diffs.clone()) == diffs.len()
        && diffs.len() == kernel_dim
        && {
            let mut stacked = kernel_vecs.clone();
            stacked.extend(diffs.iter().cloned());
            rank(stacked) == kernel_dim
        };
    let c_coords: Vec<Vec<Rat>> = algebra_basis(n, AlgebraId::C)
        .iter()
        .map(|(_, b)| b.r_coordinates())
        .collect();
    let c_dim = rank(c_coords.clone());
    let mut stacked = c_coords;
    stacked.extend(kernel_vecs.iter().cloned());
    let direct_sum =
        c_dim + kernel_dim == 2 * n - 2 && rank(stacked) == 2 * n - 2;
    RadicalReport {
        n,
        kernel_dim,
        expected_dim: n.div_ceil(2) - 1,
        spanned_by_differences,
        direct_sum,
    }
}

#[derive(Debug, Clone)]
pub struct FoulkesTable {
    pub n: usize,
    pub id: AlgebraId,
    pub labels: Vec<String>,
    pub partitions: Vec<Partition>,
    /// values[row][col]: character value at the cycle type.
    pub values: Vec<Vec<Rat>>,
    /// Values agree on cycle types sharing the family's feature.
    pub depends_only_on_feature: bool,
    /// Values vanish where the family predicts (vacuous for families
    /// without a vanishing statement).
    pub vanishing: bool,
    pub linearly_independent: bool,
}

impl FoulkesTable {
    pub fn passed(&self) -> bool {
        self.depends_only_on_feature && self.vanishing && self.linearly_independent
    }
}

/// Level-set characters: sums of ribbon characters over descent classes
/// with a fixed run/peak statistic. Each family is constant on the cycle
///-type feature of its idempotent images.
pub fn foulkes_table(n: usize, id: AlgebraId) -> Result<FoulkesTable, RunAlgebraError> {
    assert!(n >= 2);
    let mut family: Vec<(String, DescentElement)> = Vec::new();
    let class_sum = |pred: &dyn Fn(&Composition) -> bool| -> DescentElement {
        let mut out = DescentElement::zero(n, Basis::R);
        for c in compositions(n) {
            if pred(&c) {
                out.add_term(c, Rat::one());
            }
        }
        out
    };
    match id {
        AlgebraId::Wpm => return Err(RunAlgebraError::Unsupported),
        AlgebraId::W => {
            for k in 1..n {
                family.push((format!("run={k}"), class_sum(&|c| c.run_stats().run == k)));
            }
        }
        AlgebraId::Wcirc => {
            for k in 1..=n {
                family.push((
                    format!("lrun={k}"),
                    class_sum(&|c| c.run_stats().left_run == k),
                ));
            }
        }
        AlgebraId::C => {
            for l in 1..n {
                if 2 * l < n {
                    family.push((
                        format!("run={}", 2 * l),
                        class_sum(&|c| c.run_stats().run == 2 * l),
                    ));
                }
            }
            for k in 0..n {
                let r = 2 * k + 1;
                if r < n {
                    family.push((
                        format!("run={r},desc"),
                        class_sum(&|c| {
                            let s = c.run_stats();
                            s.run == r && !s.first_ascending
                        }),
                    ));
                    family.push((
                        format!("run={r},asc"),
                        class_sum(&|c| {
                            let s = c.run_stats();
                            s.run == r && s.first_ascending
                        }),
                    ));
                }
            }
        }
        AlgebraId::P => {
            for k in 0..=(n - 1) / 2 {
                family.push((format!("pk={k}"), class_sum(&|c| c.peak_stats().pk == k)));
            }
        }
        AlgebraId::Pcirc => {
            for k in 0..=n / 2 {
                family.push((
                    format!("lpk={k}"),
                    class_sum(&|c| c.peak_stats().pk_left == k),
                ));
            }
        }
    }
    let parts_order = partitions(n);
    let mut values: Vec<Vec<Rat>> = Vec::new();
    for (_, x) in &family {
        let g = gamma(x);
        values.push(
            parts_order
                .iter()
                .map(|mu| g.coefficient(mu) * rat_int(mu.z() as i64))
                .collect(),
        );
    }
    // Feature of a cycle type: the idempotent-image class it belongs to.
    // None means the type lies outside every class, where all characters
    // of the family vanish.
    let feature = |l: &Partition| -> Option<(usize, u8)> {
        let le = l.even_length();
        let class3 = if le == 0 {
            0
        } else if le % 2 == 0 {
            1
        } else {
            2
        };
        match id {
            AlgebraId::W => (le % 2 == 0).then_some((l.odd_length(), class3)),
            AlgebraId::Wcirc => Some((l.odd_length(), u8::from(le > 0))),
            AlgebraId::C => Some((l.odd_length(), class3)),
            AlgebraId::P => (le == 0).then_some((l.odd_length(), 0)),
            AlgebraId::Pcirc => Some((l.odd_length(), 0)),
            AlgebraId::Wpm => unreachable!(),
        }
    };
    let mut depends = true;
    for row in &values {
        for (i, li) in parts_order.iter().enumerate() {
            for (j, lj) in parts_order.iter().enumerate().skip(i + 1) {
                if let (Some(a), Some(b)) = (feature(li), feature(lj)) {
                    if a == b && row[i] != row[j] {
                        depends = false;
                    }
                }
            }
        }
    }
    let vanishing = values.iter().all(|row| {
        parts_order
            .iter()
            .zip(row)
            .all(|(l, v)| feature(l).is_some() || v.is_zero())
    });
    let linearly_independent = rank(values.clone()) == values.len();
    Ok(FoulkesTable {
        n,
        id,
        labels: family.into_iter().map(|(l, _)| l).collect(),
        partitions: parts_order,
        values,
        depends_only_on_feature: depends,
        vanishing,
        linearly_independent,
    })
}

/// Left-peak class sums commute with everything in the signed-run algebra.
pub fn centrality_check(n: usize) -> bool {
    let basis = algebra_basis(n, AlgebraId::Wpm);
    for k in 0..=n / 2 {
        let p = build_p(n, k, PVariant::Circ).unwrap();
        for (_, x) in &basis {
            let left = p.internal_product(x).unwrap();
            let right = x.internal_product(&p).unwrap();
            if !left.equivalent(&right) {
                return false;
            }
        }
    }
    true
}

/// Interior-peak class sums are not central: returns a witness
/// (k, basis label) with P_k x != x P_k, if one exists at this degree.
pub fn pk_noncentral_witness(n: usize) -> Option<(usize, String)> {
    let basis = algebra_basis(n, AlgebraId::Wpm);
    for k in 0..=(n - 1) / 2 {
        let p = build_p(n, k, PVariant::Plain).unwrap();
        for (label, x) in &basis {
            let left = p.internal_product(x).unwrap();
            let right = x.internal_product(&p).unwrap();
            if !left.equivalent(&right) {
                return Some((k, label.clone()));
            }
        }
    }
    None
}
