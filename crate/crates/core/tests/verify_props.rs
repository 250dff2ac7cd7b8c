use proptest::prelude::*;
use theta_blaschke::contour::Contour;
use theta_blaschke::covering::{CoveringMap, DiscCover, EtaDifferential, HalfPlaneCover};
use theta_blaschke::divisor::{random_divisor, Annulus, Divisor, Oval, SurfaceSpec, Target};
use theta_blaschke::quadrature::QuadratureOptions;
use theta_blaschke::theta::lattice_distance;
use theta_blaschke::verify::{
    degree_count, oval_contour, period_integral, period_lattice_check, winding_number,
};
use theta_blaschke::Complex64;

fn disc(seed: u64, n: usize, t: f64) -> DiscCover {
    let a = Annulus::new(t).unwrap();
    let Divisor::Disc(d) = random_divisor(seed, n, Target::Disc, &SurfaceSpec::Annulus(a)).unwrap()
    else {
        unreachable!()
    };
    DiscCover::new(d, a).unwrap()
}

fn halfplane(seed: u64, n: usize, t: f64) -> HalfPlaneCover {
    let a = Annulus::new(t).unwrap();
    let Divisor::HalfPlane(d) =
        random_divisor(seed, n, Target::HalfPlane, &SurfaceSpec::Annulus(a)).unwrap()
    else {
        unreachable!()
    };
    HalfPlaneCover::new(d, a).unwrap()
}

fn clear_of_singularities(eta: &EtaDifferential, x: Complex64, margin: f64) -> bool {
    let p = eta.annulus().theta();
    eta.singular_points()
        .iter()
        .all(|s| lattice_distance(x - s, p) >= margin)
}

fn point(u: f64, v: f64, t: f64) -> Complex64 {
    Complex64::new(0.05 + 0.4 * u, v * t)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn path_integrals_are_additive_and_odd(
        seed in 0u64..500, n in 2usize..6, t in 0.5f64..3.0,
        a in (0.0f64..1.0, 0.0f64..1.0), b in (0.0f64..1.0, 0.0f64..1.0), c in (0.0f64..1.0, 0.0f64..1.0)
    ) {
        let eta = disc(seed, n, t).eta();
        let (a, b, c) = (point(a.0, a.1, t), point(b.0, b.1, t), point(c.0, c.1, t));
        prop_assume!([a, b, c].iter().all(|&x| clear_of_singularities(&eta, x, 0.02)));
        prop_assume!((a - b).norm() > 1e-3 && (b - c).norm() > 1e-3);
        let opts = QuadratureOptions::default();
        let ab = Contour::polyline(&[a, b]).unwrap();
        let bc = Contour::polyline(&[b, c]).unwrap();
        let whole = ab.concat(&bc).unwrap();
        let (Ok(i_ab), Ok(i_bc), Ok(i_whole), Ok(i_back)) = (
            period_integral(&eta, &ab, opts),
            period_integral(&eta, &bc, opts),
            period_integral(&eta, &whole, opts),
            period_integral(&eta, &whole.reversed(), opts),
        ) else {
            // a segment grazing a pole is refused rather than integrated
            return Ok(());
        };
        prop_assert!((i_ab + i_bc - i_whole).norm() <= 1e-10 * (1.0 + i_whole.norm()));
        prop_assert!((i_whole + i_back).norm() <= 1e-10 * (1.0 + i_whole.norm()));
    }

    #[test]
    fn winding_ignores_start_point_and_subdivision(
        seed in 0u64..500, n in 2usize..7, t in 0.5f64..3.0, y0 in 0.0f64..1.0, pieces in 1usize..9
    ) {
        let h = disc(seed, n, t);
        let a = *h.annulus();
        for oval in Oval::BOTH {
            let base = winding_number(&h, &oval_contour(oval, &a, 0.0)).unwrap();
            let shifted = winding_number(&h, &oval_contour(oval, &a, y0 * t)).unwrap();
            let pts: Vec<Complex64> = (0..=pieces)
                .map(|k| Complex64::new(oval.abscissa(), y0 * t + t * k as f64 / pieces as f64))
                .collect();
            let split = winding_number(&h, &Contour::polyline(&pts).unwrap()).unwrap();
            prop_assert_eq!(base, shifted);
            let split = if oval == Oval::Inner { -split } else { split };
            prop_assert_eq!(base, split);
        }
    }

    #[test]
    fn disc_degree_equals_the_number_of_zeros(seed in 0u64..500, n in 2usize..7, t in 0.5f64..3.0) {
        let h = disc(seed, n, t);
        prop_assert_eq!(degree_count(&CoveringMap::Disc(h)).unwrap(), n as i64);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn periods_lie_in_the_lattice(seed in 0u64..500, n in 2usize..6, t in 0.5f64..3.0) {
        let opts = QuadratureOptions::default();
        for map in [CoveringMap::HalfPlane(halfplane(seed, n, t)), CoveringMap::Disc(disc(seed, n, t))] {
            let r = period_lattice_check(&map, opts, 1e-8).unwrap();
            prop_assert!(r.overall(), "{:?}", r);
            if let CoveringMap::HalfPlane(_) = map {
                prop_assert!(r.get("B'-period-equals-m").is_some());
            }
        }
    }
}
