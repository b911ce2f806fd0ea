use proptest::prelude::*;
use tomostar::kernels::{classical_kernel, first_order_coefficient, quadratic_kernel, KernelArgs};
use tomostar::phase_space::{Deformation, GaussianSymbol, PhasePoint};
use tomostar::specfun::QuadratureSpec;
use tomostar::tomo_transform::{quadratic_forward, MeasureConvention, TomoPoint};

fn tomo_point() -> impl Strategy<Value = TomoPoint> {
    (0.0..5.0f64, -3.0..3.0f64, -3.0..3.0f64).prop_map(|(x, m, n)| TomoPoint::new(x, m, n).unwrap())
}

fn close(a: tomostar::Complex64, b: tomostar::Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + b.norm())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn swapping_factors_flips_h(x1 in tomo_point(), x2 in tomo_point(), x3 in tomo_point(), h in -0.9..0.9f64) {
        let a = KernelArgs::new(x1, x2, x3, Deformation::new(h).unwrap()).unwrap();
        let b = KernelArgs::new(x2, x1, x3, Deformation::new(-h).unwrap()).unwrap();
        let ka = quadratic_kernel(&a).unwrap();
        let kb = quadratic_kernel(&b).unwrap();
        prop_assert!(close(ka, kb, 1e-12), "{ka} vs {kb}");
    }

    #[test]
    fn classical_kernel_is_symmetric(x1 in tomo_point(), x2 in tomo_point(), x3 in tomo_point()) {
        let k12 = classical_kernel(x1, x2, x3).unwrap();
        let k21 = classical_kernel(x2, x1, x3).unwrap();
        prop_assert!(close(k12, k21, 1e-14));
    }

    #[test]
    fn first_order_term_is_antisymmetric(x1 in tomo_point(), x2 in tomo_point(), x3 in tomo_point()) {
        let a = first_order_coefficient(x1, x2, x3).unwrap();
        let b = first_order_coefficient(x2, x1, x3).unwrap();
        prop_assert!(close(a, -b, 1e-13));
    }

    #[test]
    fn zero_h_matches_classical_kernel(x1 in tomo_point(), x2 in tomo_point(), x3 in tomo_point()) {
        let q = quadratic_kernel(&KernelArgs::new(x1, x2, x3, Deformation::CLASSICAL).unwrap()).unwrap();
        let c = classical_kernel(x1, x2, x3).unwrap();
        prop_assert!(close(q, c, 1e-14));
    }

    #[test]
    fn forward_of_real_gaussian_is_real(
        q0 in -1.0..1.0f64, p0 in -1.0..1.0f64, width in 0.5..2.0f64, x in tomo_point(),
    ) {
        let g = GaussianSymbol::unit(PhasePoint::new(q0, p0), width).unwrap();
        let w = quadratic_forward(&g, x, MeasureConvention::Standard, &QuadratureSpec::default()).unwrap();
        prop_assert!(w.im.abs() <= 1e-12 * (1.0 + w.re.abs()));
    }
}
