use turansep_core::densopt::{h_density_poly, maximize_constrained, reduced_derivative, reference_bounds, OptimumMethod};
use turansep_core::Rational;

#[test]
fn grid_search_agrees_with_exact_optimum() {
    let poly = h_density_poly();
    let r = maximize_constrained(&poly);
    let steps = 200_000;
    let best = (0..=steps)
        .map(|i| {
            let x = 0.25 * i as f64 / steps as f64;
            poly.eval_f64(x, 0.5 - 2.0 * x)
        })
        .fold(f64::MIN, f64::max);
    assert!(best <= r.value + 1e-12);
    assert!(r.value - best < 1e-9);
    assert!((poly.eval_f64(r.x_star, r.y_star) - r.value).abs() <= 1e-12);
}

#[test]
fn optimum_is_interior_and_beats_endpoints() {
    let r = maximize_constrained(&h_density_poly());
    assert_eq!(r.method, OptimumMethod::InteriorStationaryPoint);
    assert!(r.x_star > 0.0 && r.x_star < 0.25 && r.y_star > 0.0);
    assert!(r.candidates.iter().all(|c| c.value <= r.exact_value));
    assert!(reduced_derivative(&h_density_poly(), r.x_star).abs() < 1e-10);
    assert!(r.value > reference_bounds().chung_lu.to_f64() + 0.009);
    assert!(r.value > reference_bounds().bcl.to_f64());
}

#[test]
fn plain_cubic_forms() {
    use turansep_core::densopt::DensityPolynomial;
    let zero = Rational::from_integer(0);
    // y³ alone peaks at x = 0
    let p = DensityPolynomial { x3: zero, x2y: zero, xy2: zero, y3: Rational::from_integer(8) };
    let r = maximize_constrained(&p);
    assert_eq!(r.method, OptimumMethod::Endpoint);
    assert_eq!(r.exact_x.to_string(), "0");
    assert_eq!(r.exact_value.to_string(), "1");
    // x³ alone peaks at x = 1/4
    let q = DensityPolynomial { x3: Rational::from_integer(64), x2y: zero, xy2: zero, y3: zero };
    let r = maximize_constrained(&q);
    assert_eq!(r.exact_x.to_string(), "1/4");
    assert!(r.golden_section.agrees);
}
