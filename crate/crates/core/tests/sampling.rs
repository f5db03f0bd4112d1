use widthlab::{
    build_grid, ecdf, histogram_density, moment_monte_carlo, moment_quadrature, sample_widths,
    uniform_direction_stream, width_extremes, CanonicalBody,
};

#[test]
fn z_components_pass_kolmogorov_smirnov() {
    let n = 1_000_000u64;
    let stream = uniform_direction_stream(3, 31).unwrap();
    let mut z: Vec<f64> = (0..n).map(|i| stream.get(i).xyz()[2]).collect();
    z.sort_by(f64::total_cmp);
    let nf = n as f64;
    let d = z
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let cdf = (x + 1.0) / 2.0;
            (cdf - i as f64 / nf).abs().max(((i + 1) as f64 / nf - cdf).abs())
        })
        .fold(0.0, f64::max);
    // 1% critical value.
    assert!(d < 1.6276 / nf.sqrt(), "D = {d}");
}

#[test]
fn planar_angles_are_uniform() {
    let n = 200_000u64;
    let stream = uniform_direction_stream(2, 32).unwrap();
    let mut t: Vec<f64> = (0..n)
        .map(|i| {
            let [x, y, _] = stream.get(i).xyz();
            y.atan2(x).rem_euclid(std::f64::consts::TAU) / std::f64::consts::TAU
        })
        .collect();
    t.sort_by(f64::total_cmp);
    let nf = n as f64;
    let d = t
        .iter()
        .enumerate()
        .map(|(i, &x)| (x - i as f64 / nf).abs().max(((i + 1) as f64 / nf - x).abs()))
        .fold(0.0, f64::max);
    assert!(d < 1.6276 / nf.sqrt(), "D = {d}");
}

#[test]
fn refining_the_grid_does_not_increase_the_error() {
    let p = CanonicalBody::Cube.polytope();
    let exact = 1.5;
    let mut last = f64::INFINITY;
    for (nt, np) in [(32, 16), (128, 64), (512, 256), (2048, 1024)] {
        let est = moment_quadrature(&p, 1, &build_grid(3, nt, np).unwrap()).unwrap();
        let err = (est.value - exact).abs();
        assert!(err <= last, "{nt}x{np}: {err} > {last}");
        last = err;
    }
}

#[test]
fn quadrature_and_monte_carlo_agree() {
    for body in CanonicalBody::ALL {
        let p = body.polytope();
        let grid = match body.dimension() {
            2 => build_grid(2, 8192, 0).unwrap(),
            _ => build_grid(3, 512, 256).unwrap(),
        };
        for k in [1, 2, 3] {
            let q = moment_quadrature(&p, k, &grid).unwrap();
            let mc = moment_monte_carlo(&p, k, 400_000, 9).unwrap();
            let z = (q.value - mc.value).abs() / mc.error_estimate;
            assert!(z < 4.0, "{body} k={k}: z = {z}");
        }
    }
}

#[test]
fn sample_moments_match_quadrature() {
    for body in CanonicalBody::ALL {
        let p = body.polytope();
        let s = sample_widths(&p, 300_000, 3).unwrap();
        let grid = match body.dimension() {
            2 => build_grid(2, 8192, 0).unwrap(),
            _ => build_grid(3, 512, 256).unwrap(),
        };
        for k in [1, 2] {
            let (mean, se) = s.moment(k);
            let q = moment_quadrature(&p, k, &grid).unwrap().value;
            assert!((mean - q).abs() < 4.0 * se, "{body} k={k}");
        }
    }
}

#[test]
fn samples_lie_in_the_support() {
    for body in CanonicalBody::ALL {
        let p = body.polytope();
        let ex = width_extremes(&p, 64, 40).unwrap();
        let s = sample_widths(&p, 100_000, 4).unwrap();
        for &w in &s.samples {
            assert!(w >= ex.min_width - 1e-9 && w <= ex.diameter + 1e-9, "{body}: {w}");
        }
    }
}

#[test]
fn cube_histogram_on_its_support_has_no_overflow() {
    let p = CanonicalBody::Cube.polytope();
    let s = sample_widths(&p, 200_000, 5).unwrap();
    let h = histogram_density(&s, 100, Some((1.0, 3f64.sqrt()))).unwrap();
    assert_eq!(h.overflow, 0);
    assert!((h.masses.iter().sum::<f64>() - 1.0).abs() < 1e-12);
}

#[test]
fn overflow_and_masses_account_for_every_sample() {
    let p = CanonicalBody::Tetrahedron.polytope();
    let s = sample_widths(&p, 50_000, 6).unwrap();
    let h = histogram_density(&s, 40, Some((0.8, 0.9))).unwrap();
    assert!(h.overflow > 0);
    let total = h.masses.iter().sum::<f64>() + h.overflow as f64 / h.n as f64;
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn ecdf_and_histogram_medians_agree_within_a_bin() {
    let p = CanonicalBody::Tetrahedron.polytope();
    let s = sample_widths(&p, 200_000, 7).unwrap();
    let h = histogram_density(&s, 200, None).unwrap();
    let e = ecdf(&s).unwrap();
    let bin = h.bin_edges[1] - h.bin_edges[0];
    assert!((e.quantile(0.5) - h.quantile(0.5)).abs() <= bin);
    assert!((e.eval(e.quantile(0.5)) - 0.5).abs() < 1e-4);
}

#[test]
fn sampling_is_reproducible_across_thread_counts() {
    let p = CanonicalBody::Cube.polytope();
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let three = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
    let a = one.install(|| sample_widths(&p, 20_000, 8).unwrap());
    let b = three.install(|| sample_widths(&p, 20_000, 8).unwrap());
    assert_eq!(a, b);
    let a = one.install(|| moment_monte_carlo(&p, 2, 50_000, 8).unwrap());
    let b = three.install(|| moment_monte_carlo(&p, 2, 50_000, 8).unwrap());
    assert_eq!(a.value.to_bits(), b.value.to_bits());
}
