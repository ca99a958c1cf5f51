//! End-to-end acceptance checks, one per headline claim, each printing a
//! single pass/fail line.

use std::panic::catch_unwind;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use runalg::combinatorics::{compositions, Composition};
use runalg::descent_algebra::{oracle_structure_constants, Basis, DescentElement};
use runalg::linalg::solve_in_span;
use runalg::nsym::{build_v, VSign};
use runalg::rat::{rat_int, Rat};
use runalg::run_algebras::{
    algebra_basis, centrality_check, closure_certificate, foulkes_table, idempotent_system,
    pk_noncentral_witness, radical_check, AlgebraId,
};

fn criterion(num: usize, name: &str, body: impl FnOnce() + std::panic::UnwindSafe) {
    let result = catch_unwind(body);
    let status = if result.is_ok() { "pass" } else { "fail" };
    // Direct handle writes bypass libtest's output capture, so the line is
    // visible even without --nocapture.
    use std::io::Write;
    let _ = writeln!(std::io::stderr(), "criterion {num:2} ({name}): {status}");
    if let Err(e) = result {
        std::panic::resume_unwind(e);
    }
}

#[test]
fn criterion_01_closure_and_dimensions() {
    criterion(1, "closure and dimensions", || {
        for n in 2..=8 {
            for id in AlgebraId::ALL {
                let cert = closure_certificate(n, id).unwrap();
                assert_eq!(cert.dim(), id.dimension(n), "{} at n={n}", id.name());
            }
        }
    });
}

#[test]
fn criterion_02_oracle_equivalence() {
    criterion(2, "fast product matches group algebra", || {
        for n in 2..=6 {
            for i in compositions(n) {
                let a = DescentElement::basis_element(Basis::R, i.clone());
                for j in compositions(n) {
                    let b = DescentElement::basis_element(Basis::R, j);
                    let fast = a.internal_product(&b).unwrap();
                    let slow = a.internal_product_oracle(&b).unwrap();
                    assert!(fast.equivalent(&slow), "n={n}");
                }
            }
        }

        // Degree 7: the one-pass structure-constant table certifies random
        // dense elements by bilinearity.
        let n = 7;
        let table = oracle_structure_constants(n);
        let classes: Vec<Composition> = compositions(n);
        let mut rng = ChaCha8Rng::seed_from_u64(0x52414c47);
        let random_element = |rng: &mut ChaCha8Rng| {
            let mut el = DescentElement::zero(n, Basis::R);
            for c in &classes {
                el.add_term(c.clone(), rat_int(rng.gen_range(-5i64..=5)));
            }
            el
        };
        let elements: Vec<DescentElement> = (0..200).map(|_| random_element(&mut rng)).collect();
        for pair in elements.chunks(2) {
            let (x, y) = (&pair[0], &pair[1]);
            let fast = x.internal_product(y).unwrap();
            // r_coordinates are indexed by descent mask.
            let mut expected = vec![rat_int(0); 1 << (n - 1)];
            let xs = x.r_coordinates();
            let ys = y.r_coordinates();
            for ((mi, mj, mk), c) in &table {
                let coeff = &xs[*mi as usize] * &ys[*mj as usize] * rat_int(*c as i64);
                expected[*mk as usize] += coeff;
            }
            let expected = DescentElement::from_r_coordinates(n, &expected);
            assert!(fast.equivalent(&expected));
        }
    });
}

#[test]
fn criterion_03_commutativity_split() {
    criterion(3, "five commutative algebras, one not", || {
        for n in 2..=8 {
            for id in AlgebraId::ALL {
                let cert = closure_certificate(n, id).unwrap();
                if id == AlgebraId::Wpm {
                    if n >= 4 {
                        assert!(cert.asymmetry_witness().is_some(), "n={n}");
                    }
                } else {
                    assert!(cert.is_commutative(), "{} at n={n}", id.name());
                }
            }
        }
    });
}

#[test]
fn criterion_04_multiplicativity() {
    criterion(4, "series family is multiplicative", || {
        let cutoff = 8;
        for k in 1..=4usize {
            for l in 1..=4usize {
                let vkp = build_v(k, VSign::Plus, cutoff);
                let vkm = build_v(k, VSign::Minus, cutoff);
                let vlp = build_v(l, VSign::Plus, cutoff);
                let vlm = build_v(l, VSign::Minus, cutoff);
                let vklp = build_v(k * l, VSign::Plus, cutoff);
                let vklm = build_v(k * l, VSign::Minus, cutoff);
                // The mixed-sign cases depend on the parity of the left factor.
                let (pm, mm) = if k % 2 == 0 {
                    (&vklp, &vklm)
                } else {
                    (&vklm, &vklp)
                };
                for d in 0..=cutoff {
                    let check = |a: &runalg::nsym::NSymSeries,
                                 b: &runalg::nsym::NSymSeries,
                                 out: &runalg::nsym::NSymSeries| {
                        assert!(
                            a.internal_on_degree(b, d).unwrap().equivalent(out.part(d)),
                            "k={k} l={l} d={d}"
                        );
                    };
                    check(&vkp, &vlp, &vklp);
                    check(&vkm, &vlp, &vklm);
                    check(&vkp, &vlm, pm);
                    check(&vkm, &vlm, mm);
                }
            }
        }
    });
}

#[test]
fn criterion_05_triangularity() {
    criterion(5, "triangular change of basis", || {
        for n in 2..=8 {
            let p_coords: Vec<Vec<Rat>> = algebra_basis(n, AlgebraId::P)
                .iter()
                .map(|(_, b)| b.r_coordinates())
                .collect();
            for k in 1..=(n + 1) / 2 {
                let v = build_v(2 * k, VSign::Minus, n).part(n).clone();
                let c = solve_in_span(&p_coords, &v.r_coordinates()).unwrap();
                assert_eq!(c[k - 1], rat_int(1 << (2 * k - 1)), "n={n} k={k}");
                assert!(c[k..].iter().all(|x| x.is_zero()), "n={n} k={k}");
            }
            let pc_coords: Vec<Vec<Rat>> = algebra_basis(n, AlgebraId::Pcirc)
                .iter()
                .map(|(_, b)| b.r_coordinates())
                .collect();
            for k in 0..=n / 2 {
                let v = build_v(2 * k + 1, VSign::Plus, n).part(n).clone();
                let c = solve_in_span(&pc_coords, &v.r_coordinates()).unwrap();
                assert_eq!(c[k], rat_int(1 << (2 * k)), "n={n} k={k}");
                assert!(c[k + 1..].iter().all(|x| x.is_zero()), "n={n} k={k}");
            }
        }
    });
}

#[test]
fn criterion_06_idempotent_systems() {
    criterion(6, "orthogonal idempotent systems", || {
        for n in 2..=8 {
            for id in AlgebraId::ALL {
                // Construction verifies idempotency, orthogonality, membership,
                // and the commutative images internally.
                let sys = idempotent_system(n, id).unwrap();
                if id != AlgebraId::Wpm {
                    assert_eq!(sys.elements.len(), id.dimension(n), "{} n={n}", id.name());
                }
            }
            // The full system is complete: it sums to the identity.
            let sys = idempotent_system(n, AlgebraId::Wpm).unwrap();
            assert!(sys.complete, "n={n}");
        }
    });
}

#[test]
fn criterion_07_radical() {
    criterion(7, "radical dimension and splitting", || {
        for n in 2..=8 {
            let rep = radical_check(n);
            assert_eq!(rep.kernel_dim, rep.expected_dim, "n={n}");
            assert!(rep.spanned_by_differences, "n={n}");
            assert!(rep.direct_sum, "n={n}");
        }
    });
}

#[test]
fn criterion_08_bijection() {
    criterion(8, "factorization transport maps", || {
        for n in 2..=6 {
            let rep = runalg::bijection::verify_bijection(n);
            assert!(rep.passed(), "n={n}: {rep:?}");
            if n >= 4 {
                assert!(rep.pairs > 0 && rep.delta_edges > 0, "n={n}");
            }
        }
    });
}

#[test]
fn criterion_09_foulkes_characters() {
    criterion(9, "level-set characters", || {
        for n in 2..=7 {
            for id in AlgebraId::ALL {
                if id == AlgebraId::Wpm {
                    assert!(foulkes_table(n, id).is_err());
                    continue;
                }
                let t = foulkes_table(n, id).unwrap();
                assert!(t.passed(), "{} at n={n}", id.name());
            }
        }
    });
}

#[test]
fn criterion_10_centrality() {
    criterion(10, "left-peak sums are central", || {
        for n in 2..=7 {
            assert!(centrality_check(n), "n={n}");
        }
        // Interior-peak sums are not central in general.
        assert!(pk_noncentral_witness(5).is_some());
    });
}
