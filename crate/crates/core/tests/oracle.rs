use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use toric_entropy::entropy::is_diagonal;
use toric_entropy::lattice::NamedPartition;
use toric_entropy::oracle::{basis_ground_state, build_ground_state, reduced_density_matrix, StateVector};
use toric_entropy::toric::p_param;
use toric_entropy::{GroundStateCoeffs, Lattice};

#[test]
fn ground_states_are_stabilized() {
    for k in [2, 3] {
        let lat = Lattice::torus(k).unwrap();
        for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let psi = basis_ground_state(&lat, i, j).unwrap();
            assert!((psi.norm() - 1.0).abs() < 1e-12);
            assert!(psi.is_stabilized_by(&lat, 1e-12).unwrap(), "k={k} xi{i}{j}");
        }
        let c = GroundStateCoeffs::random(&mut ChaCha8Rng::seed_from_u64(k as u64));
        assert!(build_ground_state(&lat, &c).unwrap().is_stabilized_by(&lat, 1e-12).unwrap());
    }
}

#[test]
fn ground_basis_is_orthonormal() {
    let lat = Lattice::torus(3).unwrap();
    let states: Vec<StateVector> = [(0, 0), (0, 1), (1, 0), (1, 1)]
        .iter()
        .map(|&(i, j)| basis_ground_state(&lat, i, j).unwrap())
        .collect();
    for (a, sa) in states.iter().enumerate() {
        for (b, sb) in states.iter().enumerate() {
            let want = if a == b { 1.0 } else { 0.0 };
            assert!((sa.inner(sb).norm() - want).abs() < 1e-12);
        }
    }
}

#[test]
fn ladder_spectrum_has_two_levels() {
    for k in [2, 3] {
        let lat = Lattice::torus(k).unwrap();
        let p_ladder = NamedPartition::Ladder.build(&lat).unwrap();
        for seed in 0..5 {
            let c = GroundStateCoeffs::random(&mut ChaCha8Rng::seed_from_u64(100 + seed));
            let p = p_param(&c);
            let rho = reduced_density_matrix(&build_ground_state(&lat, &c).unwrap(), &p_ladder).unwrap();
            let ev = rho.eigenvalues().unwrap();
            let scale = (1u64 << k) as f64;
            let hi = ev.iter().filter(|&&x| (x - (1.0 + p) / scale).abs() < 1e-9).count();
            let lo = ev.iter().filter(|&&x| (x - (1.0 - p) / scale).abs() < 1e-9).count();
            let half = 1usize << (k - 1);
            assert_eq!((hi, lo), (half, half), "k={k} p={p} {ev:?}");
        }
    }
}

#[test]
fn xi00_chain_and_ladder_are_diagonal() {
    for k in [2, 3] {
        let lat = Lattice::torus(k).unwrap();
        let psi = basis_ground_state(&lat, 0, 0).unwrap();
        for n in [NamedPartition::Chain, NamedPartition::Ladder] {
            let p = n.build(&lat).unwrap();
            assert!(is_diagonal(&lat.star_group(), &p).unwrap());
            assert!(reduced_density_matrix(&psi, &p).unwrap().off_diagonal_mass() < 1e-12);
        }
    }
}

#[test]
fn ladder_coherence_appears_for_generic_states() {
    let lat = Lattice::torus(2).unwrap();
    let ladder = NamedPartition::Ladder.build(&lat).unwrap();
    let c = GroundStateCoeffs::from_real(0.8, 0.0, 0.6, 0.0).unwrap();
    assert!(p_param(&c).abs() > 0.1);
    let rho = reduced_density_matrix(&build_ground_state(&lat, &c).unwrap(), &ladder).unwrap();
    assert!(rho.off_diagonal_mass() > 1e-3);
}
