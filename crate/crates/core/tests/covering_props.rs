use proptest::prelude::*;
use theta_blaschke::covering::{
    mobius_l, rational_to_blaschke, DiscCover, HalfPlaneCover, RationalCover,
};
use theta_blaschke::divisor::{random_divisor, Annulus, Divisor, Oval, SurfaceSpec, Target};
use theta_blaschke::verify::{
    composition_error, interior_probes, oval_samples, upper_half_plane_probes,
};
use theta_blaschke::{Complex64, Extended};

fn surface(t: f64) -> (Annulus, SurfaceSpec) {
    let a = Annulus::new(t).unwrap();
    (a, SurfaceSpec::Annulus(a))
}

fn halfplane(seed: u64, n: usize, t: f64) -> HalfPlaneCover {
    let (a, s) = surface(t);
    let Divisor::HalfPlane(d) = random_divisor(seed, n, Target::HalfPlane, &s).unwrap() else {
        unreachable!()
    };
    HalfPlaneCover::new(d, a).unwrap()
}

fn disc(seed: u64, n: usize, t: f64) -> DiscCover {
    let (a, s) = surface(t);
    let Divisor::Disc(d) = random_divisor(seed, n, Target::Disc, &s).unwrap() else {
        unreachable!()
    };
    DiscCover::new(d, a).unwrap()
}

fn finite(v: Extended) -> Complex64 {
    v.finite().expect("finite value")
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / (1.0 + b.norm())
}

/// A point of the strip, kept away from the ovals where zeros and poles sit.
fn strip_point(re: f64, s: f64, t: f64) -> Complex64 {
    Complex64::new(0.02 + 0.46 * re, s * t)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn halfplane_cover_commutes_with_the_reflection(
        seed in 0u64..500, n in 2usize..7, t in 0.5f64..3.0, re in 0.0f64..1.0, s in 0.0f64..1.0
    ) {
        let h = halfplane(seed, n, t);
        let x = strip_point(re, s, t);
        let v = finite(h.eval(x));
        let mirrored = finite(h.eval(-x.conj()));
        prop_assert!((mirrored - v.conj()).norm() <= 1e-10 * (1.0 + v.norm()));
    }

    #[test]
    fn disc_cover_inverts_across_the_reflection(
        seed in 0u64..500, n in 2usize..7, t in 0.5f64..3.0, re in 0.0f64..1.0, s in 0.0f64..1.0
    ) {
        let h = disc(seed, n, t);
        let x = strip_point(re, s, t);
        let v = finite(h.eval(x));
        prop_assume!(v.norm() > 1e-6);
        let mirrored = finite(h.eval(-x.conj()));
        prop_assert!((mirrored * v.conj() - 1.0).norm() <= 1e-10);
    }

    #[test]
    fn valid_covers_are_doubly_periodic(
        seed in 0u64..500, n in 2usize..7, t in 0.5f64..3.0, re in 0.0f64..1.0, s in 0.0f64..1.0
    ) {
        let x = strip_point(re, s, t);
        let up = Complex64::new(0.0, t);
        let h = halfplane(seed, n, t);
        let v = finite(h.eval(x));
        prop_assert!(rel(finite(h.eval(x + 1.0)), v) <= 1e-9);
        prop_assert!(rel(finite(h.eval(x + up)), v) <= 1e-9);
        let g = disc(seed, n, t);
        let w = finite(g.eval(x));
        prop_assert!(rel(finite(g.eval(x + 1.0)), w) <= 1e-9);
        prop_assert!(rel(finite(g.eval(x + up)), w) <= 1e-9);
    }

    #[test]
    fn disc_cover_maps_into_the_closed_disc(seed in 0u64..500, n in 2usize..7, t in 0.5f64..3.0) {
        let h = disc(seed, n, t);
        let a = *h.annulus();
        for x in interior_probes(&a, 100) {
            prop_assert!(finite(h.eval(x)).norm() < 1.0);
        }
        for oval in Oval::BOTH {
            for x in oval_samples(oval, &a, 64) {
                prop_assert!((finite(h.eval(x)).norm() - 1.0).abs() <= 1e-9);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_covers_conjugate_to_blaschke_products(seed in 0u64..10_000, n in 1usize..9) {
        let Divisor::Classical(d) = random_divisor(seed, n, Target::ClassicalRational, &SurfaceSpec::Disc).unwrap() else {
            unreachable!()
        };
        let r = RationalCover::new(d).unwrap();
        let b = rational_to_blaschke(&r).unwrap();
        prop_assert!(b.zeros().iter().all(|a| a.norm() < 1.0));
        prop_assert!(composition_error(&r, &b, &upper_half_plane_probes(256)) <= 1e-8);
        // the Cayley map sends the upper half-plane into the disc
        let u = Complex64::new(0.3, 0.8);
        prop_assert!(finite(mobius_l(Extended::Finite(u))).norm() < 1.0);
    }
}
