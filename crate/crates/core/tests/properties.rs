use dmxyz_core::entanglement::{branch_concurrence, generic_concurrence, spin_flip_sandwich};
use dmxyz_core::linalg4::{hermitian_eigensystem, hermitian_sqrt, inner, singular_values};
use dmxyz_core::{
    analytic_eigenstates, analytic_spectrum, build_hamiltonian, closed_form_density,
    concurrence_closed_form, concurrence_oracle_at, gibbs_state, lambda_closed_form,
    partition_function, Complex, ComplexMatrix4, DmAxis, ModelSpec, Temperature,
};
use proptest::prelude::*;

fn axis() -> impl Strategy<Value = DmAxis> {
    prop_oneof![Just(DmAxis::X), Just(DmAxis::Y), Just(DmAxis::Z)]
}

fn spec() -> impl Strategy<Value = ModelSpec> {
    (
        -3.0..3.0f64,
        -3.0..3.0f64,
        -3.0..3.0f64,
        axis(),
        -3.0..3.0f64,
    )
        .prop_map(|(jx, jy, jz, a, d)| ModelSpec::from_values(jx, jy, jz, a, d).unwrap())
}

fn temperature() -> impl Strategy<Value = Temperature> {
    (0.1..20.0f64).prop_map(|t| Temperature::new(t).unwrap())
}

fn hermitian() -> impl Strategy<Value = ComplexMatrix4> {
    proptest::collection::vec(-5.0..5.0f64, 32).prop_map(|v| {
        let m = ComplexMatrix4::from_fn(|r, c| Complex::new(v[4 * r + c], v[16 + 4 * r + c]));
        (m + m.adjoint()).scale(0.5)
    })
}

fn closed(spec: &ModelSpec, t: Temperature) -> f64 {
    concurrence_closed_form(spec, t).unwrap().value
}

fn with_couplings(spec: &ModelSpec, jx: f64, jy: f64, jz: f64) -> ModelSpec {
    ModelSpec::from_values(jx, jy, jz, spec.axis(), spec.dm.strength).unwrap()
}

proptest! {
    #[test]
    fn analytic_energies_match_diagonalisation(s in spec()) {
        let numeric = hermitian_eigensystem(&build_hamiltonian(&s)).unwrap().eigenvalues;
        let analytic = analytic_spectrum(&s).sorted_energies();
        for (a, n) in analytic.iter().zip(numeric) {
            prop_assert!((a - n).abs() <= 1e-10, "{analytic:?} vs {numeric:?}");
        }
    }

    #[test]
    fn energies_sum_to_zero(s in spec()) {
        let sum: f64 = analytic_spectrum(&s).energies.iter().sum();
        prop_assert!(sum.abs() <= 1e-12);
    }

    #[test]
    fn analytic_eigenstates_are_orthonormal_eigenvectors(s in spec()) {
        let h = build_hamiltonian(&s);
        let e = analytic_spectrum(&s).energies;
        let states = analytic_eigenstates(&s);
        for (k, v) in states.iter().enumerate() {
            let hv = h.mul_vec(v);
            let residual = (0..4).map(|i| (hv[i] - v[i] * e[k]).norm()).fold(0.0, f64::max);
            prop_assert!(residual <= 1e-12 * (1.0 + h.max_abs()), "state {k}: {residual:e}");
            for (l, u) in states.iter().enumerate() {
                let expected = if k == l { 1.0 } else { 0.0 };
                prop_assert!((inner(u, v) - expected).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn closed_form_partition_function(s in spec(), t in temperature()) {
        let numeric: f64 = hermitian_eigensystem(&build_hamiltonian(&s))
            .unwrap()
            .eigenvalues
            .iter()
            .map(|e| (-e / t.value()).exp())
            .sum();
        let z = partition_function(&s, t).unwrap();
        prop_assert!(((z - numeric) / numeric).abs() <= 1e-10);
    }

    #[test]
    fn gibbs_state_invariants(s in spec(), t in temperature()) {
        let state = gibbs_state(&s, t).unwrap();
        let rho = state.density().matrix();
        prop_assert!((rho.trace() - Complex::new(1.0, 0.0)).norm() <= 1e-12);
        prop_assert!(rho.hermiticity_deviation() <= 1e-12);
        let min = hermitian_eigensystem(rho).unwrap().eigenvalues[0];
        prop_assert!(min >= -1e-12);
        let h = build_hamiltonian(&s);
        let commutator = (*rho * h - h * *rho).max_abs();
        prop_assert!(commutator <= 1e-10 * h.max_abs().max(1.0), "[ρ, H] = {commutator:e}");
    }

    #[test]
    fn closed_form_density_matches_gibbs(s in spec(), t in temperature()) {
        prop_assume!(s.axis() != DmAxis::Z);
        let numeric = gibbs_state(&s, t).unwrap();
        let closed = closed_form_density(&s, t).unwrap();
        let diff = (closed - *numeric.density().matrix()).max_abs();
        prop_assert!(diff <= 1e-10, "entrywise difference {diff:e}");
    }

    #[test]
    fn closed_form_matches_oracle(s in spec(), t in temperature()) {
        let c = concurrence_closed_form(&s, t).unwrap();
        let o = concurrence_oracle_at(&s, t).unwrap();
        prop_assert!((c.value - o.value).abs() <= 1e-9);
        for (a, b) in c.lambdas.iter().zip(o.lambdas) {
            prop_assert!((a - b).abs() <= 1e-9);
        }
    }

    #[test]
    fn concurrence_is_in_unit_interval(s in spec(), t in temperature()) {
        let c = closed(&s, t);
        prop_assert!((0.0..=1.0).contains(&c));
    }

    #[test]
    fn lambdas_are_populations(s in spec(), t in temperature()) {
        let l = lambda_closed_form(&s, t).unwrap();
        prop_assert!(l.iter().all(|x| *x >= 0.0));
        prop_assert!((l.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn case_split_equals_generic_formula(s in spec(), t in temperature()) {
        let l = lambda_closed_form(&s, t).unwrap();
        prop_assert!((branch_concurrence(&s, l) - generic_concurrence(l)).abs() <= 1e-12);
    }

    #[test]
    fn sandwich_spectrum_is_lambda_squared(s in spec(), t in temperature()) {
        let state = gibbs_state(&s, t).unwrap();
        let sandwich = spin_flip_sandwich(state.density()).unwrap();
        let mut eig = hermitian_eigensystem(&sandwich).unwrap().eigenvalues;
        eig.reverse();
        let lambdas = concurrence_closed_form(&s, t).unwrap().lambdas;
        for (e, l) in eig.iter().zip(lambdas) {
            prop_assert!((e - l * l).abs() <= 1e-12);
        }
    }

    #[test]
    fn dm_sign_does_not_matter(s in spec(), t in temperature()) {
        let flipped = s.with_strength(-s.dm.strength);
        prop_assert!((closed(&s, t) - closed(&flipped, t)).abs() <= 1e-12);
    }

    #[test]
    fn axis_relabeling(
        jx in -3.0..3.0f64, jy in -3.0..3.0f64, jz in -3.0..3.0f64,
        d in -3.0..3.0f64, t in temperature(),
    ) {
        let along = |a, j: (f64, f64, f64)| ModelSpec::from_values(j.0, j.1, j.2, a, d).unwrap();
        let x = closed(&along(DmAxis::X, (jx, jy, jz)), t);
        let y = closed(&along(DmAxis::Y, (jy, jx, jz)), t);
        let z = closed(&along(DmAxis::Z, (jy, jz, jx)), t);
        prop_assert!((x - y).abs() <= 1e-12 && (x - z).abs() <= 1e-12, "{x} {y} {z}");
    }

    #[test]
    fn equal_couplings_give_equal_axes(
        j in -3.0..3.0f64, k in -3.0..3.0f64, d in -3.0..3.0f64, t in temperature(),
    ) {
        let c = |jx, jy, jz, a| closed(&ModelSpec::from_values(jx, jy, jz, a, d).unwrap(), t);
        prop_assert!((c(j, j, k, DmAxis::X) - c(j, j, k, DmAxis::Y)).abs() <= 1e-12);
        prop_assert!((c(k, j, j, DmAxis::Y) - c(k, j, j, DmAxis::Z)).abs() <= 1e-12);
        prop_assert!((c(j, k, j, DmAxis::X) - c(j, k, j, DmAxis::Z)).abs() <= 1e-12);
        let iso = [DmAxis::X, DmAxis::Y, DmAxis::Z].map(|a| c(j, j, j, a));
        prop_assert!((iso[0] - iso[1]).abs() <= 1e-12 && (iso[0] - iso[2]).abs() <= 1e-12);
    }

    #[test]
    fn coupling_permutation_with_axis(s in spec(), t in temperature()) {
        // Swapping the two perpendicular couplings leaves the split invariant
        // up to a relabelling that preserves λ as a set.
        let (jx, jy, jz) = (s.coupling.jx, s.coupling.jy, s.coupling.jz);
        let swapped = match s.axis() {
            DmAxis::X => with_couplings(&s, jx, jz, jy),
            DmAxis::Y => with_couplings(&s, jz, jy, jx),
            DmAxis::Z => with_couplings(&s, jy, jx, jz),
        };
        prop_assert!((closed(&s, t) - closed(&swapped, t)).abs() <= 1e-12);
    }

    #[test]
    fn eigensystem_reconstructs(a in hermitian()) {
        let eig = hermitian_eigensystem(&a).unwrap();
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        let back = eig.map_spectrum(|x| x).unwrap();
        prop_assert!((back - a).max_abs() <= 1e-12 * a.frobenius_norm().max(1.0));
        let v = eig.eigenvector_matrix();
        prop_assert!((v.adjoint() * v - ComplexMatrix4::identity()).max_abs() <= 1e-12);
    }

    #[test]
    fn sqrt_squares_back(a in hermitian()) {
        let psd = a * a;
        let root = hermitian_sqrt(&psd).unwrap();
        prop_assert!((root * root - psd).max_abs() <= 1e-11 * psd.frobenius_norm().max(1.0));
    }

    #[test]
    fn singular_values_match_gram_spectrum(
        v in proptest::collection::vec(-5.0..5.0f64, 32),
    ) {
        let m = ComplexMatrix4::from_fn(|r, c| Complex::new(v[4 * r + c], v[16 + 4 * r + c]));
        let sv = singular_values(&m).unwrap();
        let mut gram = hermitian_eigensystem(&(m * m.adjoint())).unwrap().eigenvalues;
        gram.reverse();
        for (s, g) in sv.iter().zip(gram) {
            prop_assert!((s * s - g).abs() <= 1e-10 * m.frobenius_norm().powi(2));
        }
        let fro: f64 = sv.iter().map(|s| s * s).sum::<f64>().sqrt();
        prop_assert!((fro - m.frobenius_norm()).abs() <= 1e-12 * m.frobenius_norm());
    }
}
