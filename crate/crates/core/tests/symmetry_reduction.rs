//! Reduced representations checked against brute-force projections of the
//! dense full-space Hamiltonians, and reduced evolution checked against the
//! full simulator.

mod common;

use std::f64::consts::FRAC_PI_4;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use isingprep_core::{
    Pulse, PulseKind, PulseSequence, Sector, apply_sequence, boundary_states, dicke_basis,
    evolve_symmetric, fidelity, parity_sector, symmetric_hams, symmetry,
};
use isingprep_core::sim::{Axis, apply_global_rotation, w_state, StateVector};

/// `⟨u|H|v⟩` for dense H and full-basis states.
fn sandwich(h: &DMatrix<C64>, u: &StateVector, v: &StateVector) -> C64 {
    let hv = h * common::to_dvector(v);
    common::to_dvector(u).dotc(&hv)
}

#[test]
fn symmetric_hams_match_projection_oracle_n6() {
    let n = 6;
    let basis = dicke_basis(n).unwrap();
    let (h_x, h_y, h_zz) = symmetric_hams(n);
    let dense = [
        (common::collective(n, &common::sigma_x()), h_x),
        (common::collective(n, &common::sigma_y()), h_y),
        (common::ising_dense(n), h_zz),
    ];
    for (full, reduced) in &dense {
        for i in 0..=n {
            for j in 0..=n {
                let expected = sandwich(full, &basis.vectors()[i], &basis.vectors()[j]);
                assert!(
                    (reduced[(i, j)] - expected).norm() < 1e-10,
                    "({i},{j}): {} vs {}",
                    reduced[(i, j)],
                    expected
                );
            }
        }
    }
}

#[test]
fn parity_sector_matrices_match_projection_oracle() {
    for n in 2..=10 {
        let basis = dicke_basis(n).unwrap();
        let dense_zz = common::ising_dense(n);
        let dense_x = common::collective(n, &common::sigma_x());
        let dense_y = common::collective(n, &common::sigma_y());
        for sector in Sector::PARITY {
            let rep = parity_sector(n, sector).unwrap();
            let (kind, dense) = match sector {
                Sector::XPlus | Sector::XMinus => (PulseKind::X, &dense_x),
                _ => (PulseKind::Y, &dense_y),
            };
            let generator = rep.generator(kind).unwrap();

            // Sector basis vectors in the full space.
            let full_vectors: Vec<StateVector> = (0..rep.dim)
                .map(|c| {
                    let mut amps = vec![C64::new(0.0, 0.0); 1 << n];
                    for m in 0..=n {
                        let coeff = rep.embed[(m, c)];
                        for (k, a) in basis.vectors()[m].amps().iter().enumerate() {
                            amps[k] += coeff * a;
                        }
                    }
                    StateVector::from_amps(n, isingprep_core::Basis::Full, amps).unwrap()
                })
                .collect();

            for i in 0..rep.dim {
                for j in 0..rep.dim {
                    let expected = sandwich(dense, &full_vectors[i], &full_vectors[j]);
                    assert!(
                        (generator[(i, j)] - expected).norm() < 1e-10,
                        "n={n} {sector:?} ({i},{j})"
                    );
                    let expected_zz = sandwich(&dense_zz, &full_vectors[i], &full_vectors[j]);
                    assert!((rep.h_zz[(i, j)] - expected_zz).norm() < 1e-10);
                }
            }
        }
    }
}

#[test]
fn parity_blocks_do_not_couple() {
    // H_zz and the sector generator have vanishing matrix elements between
    // the + and - images.
    for n in 2..=8 {
        let (h_x, h_y, h_zz) = symmetric_hams(n);
        for (plus, minus, gen) in [
            (Sector::XPlus, Sector::XMinus, &h_x),
            (Sector::YPlus, Sector::YMinus, &h_y),
        ] {
            let p = parity_sector(n, plus).unwrap();
            let m = parity_sector(n, minus).unwrap();
            let cross_gen = p.embed.adjoint() * gen * &m.embed;
            let cross_zz = p.embed.adjoint() * &h_zz * &m.embed;
            assert!(cross_gen.norm() < 1e-12, "n={n} {plus:?}/{minus:?}");
            assert!(cross_zz.norm() < 1e-12, "n={n} {plus:?}/{minus:?}");
        }
    }
}

#[test]
fn reduced_evolution_matches_full_simulation() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for n in 2..=8 {
        for sector in Sector::PARITY {
            let rep = parity_sector(n, sector).unwrap();
            let kind = match sector {
                Sector::XPlus | Sector::XMinus => PulseKind::X,
                _ => PulseKind::Y,
            };
            for _ in 0..10 {
                let coords = common::random_coords(rep.dim, &mut rng);
                let angle = rng.gen_range(-3.0..3.0);
                let pulse = if rng.gen_bool(0.5) {
                    Pulse::zz(angle)
                } else {
                    Pulse { kind, angle }
                };

                let reduced = evolve_symmetric(&coords, pulse, &rep).unwrap();
                let full_in = rep.embed_to_full(&coords).unwrap();
                let full_out =
                    apply_sequence(&full_in, &PulseSequence::new(n, vec![pulse])).unwrap();
                let expected = rep.embed_to_full(&reduced).unwrap();
                assert!(
                    fidelity(&expected, &full_out).unwrap() > 1.0 - 1e-10,
                    "n={n} {sector:?} {pulse:?}"
                );
                // Componentwise too: the reduced path carries the same global
                // phase as the full path.
                for (a, b) in expected.amps().iter().zip(full_out.amps()) {
                    assert!((a - b).norm() < 1e-10);
                }
            }
        }
    }
}

#[test]
fn symmetric_rep_evolution_matches_full_simulation() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for n in 2..=8 {
        let rep = isingprep_core::SubspaceRep::symmetric(n).unwrap();
        for _ in 0..10 {
            let coords = common::random_coords(n + 1, &mut rng);
            let pulse = match rng.gen_range(0..3) {
                0 => Pulse::zz(rng.gen_range(-3.0..3.0)),
                1 => Pulse::x(rng.gen_range(-3.0..3.0)),
                _ => Pulse::y(rng.gen_range(-3.0..3.0)),
            };
            let reduced = evolve_symmetric(&coords, pulse, &rep).unwrap();
            let full_in = symmetry::embed_full(n, &coords).unwrap();
            let full_out = apply_sequence(&full_in, &PulseSequence::new(n, vec![pulse])).unwrap();
            let back = symmetry::project_symmetric(&full_out).unwrap();
            assert!((reduced - back).norm() < 1e-10, "n={n} {pulse:?}");
        }
    }
}

#[test]
fn boundary_states_match_full_space_rotations() {
    for n in 2..=10 {
        let b = boundary_states(n).unwrap();

        let zero = StateVector::zero_state(n).unwrap();
        let init_full = apply_global_rotation(&zero, Axis::Y, FRAC_PI_4).unwrap();
        let embedded = symmetry::embed_full(n, &b.init_sym).unwrap();
        assert!(fidelity(&embedded, &init_full).unwrap() > 1.0 - 1e-10, "init n={n}");

        let w = w_state(n).unwrap();
        let target_full = if n % 2 == 1 {
            apply_global_rotation(&w, Axis::Y, -FRAC_PI_4).unwrap()
        } else {
            apply_global_rotation(&w, Axis::X, -FRAC_PI_4).unwrap()
        };
        let embedded = symmetry::embed_full(n, &b.target_sym).unwrap();
        assert!(
            fidelity(&embedded, &target_full).unwrap() > 1.0 - 1e-10,
            "target n={n}"
        );
    }
}
