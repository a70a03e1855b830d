//! Acceptance gate for the built-in reference experiment: each test checks
//! one numbered criterion against frozen reference values and prints the
//! measured numbers on failure. Criteria that the implementation cannot
//! meet as stated are asserted anyway and left to fail visibly.

use std::process::Command;
use std::sync::OnceLock;
use std::time::Instant;

use legfit::{
    back_transform, build_forsythe_basis, condition_diagnostics, design_matrix, figure_data,
    fit_ols, fit_pipeline, fit_pipeline_at, fit_rectangle_orthonormal, fit_rectangle_simple,
    fit_trapezoid_orthonormal, fit_trapezoid_simple, forsythe_fit, forsythe_to_monomial,
    legendre_eval, legendre_to_monomial, normalized_legendre_eval, quadrature_error_probe,
    reference_fit_reports, rescale_output, sample_test_function, substitute_affine, sum_of_squares,
    t2_forward, taylor_reference, test_function, weighted_inner, AffineMap, BasisKind, Dataset,
    FitReport, Grid, InnerProductRule, MethodTag, PolySeries, Scale,
};

/// Reference back-transformed monomial coefficients of the degree-30 fit of
/// the 629-point sample, by method: trapezoid-simple, trapezoid-orthonormal,
/// ordinary least squares.
const REFERENCE_COEFFS: [[f64; 3]; 31] = [
    [-0.0001255282, 0.001814486, -0.002035062],
    [12.33649, 12.44636, 12.50049],
    [1.852769, 1.629086, 1.821539],
    [-54.36178, -55.30185, -56.14278],
    [32.78326, 34.56230, 32.97494],
    [121.7605, 124.2576, 128.1177],
    [-122.8261, -127.6625, -122.5218],
    [-148.0910, -151.0391, -159.2726],
    [180.7955, 187.3529, 178.6751],
    [98.54291, 100.3063, 110.2045],
    [-147.9384, -153.1944, -144.4110],
    [-36.87822, -37.37939, -44.82297],
    [76.54964, 79.28914, 73.50992],
    [7.061322, 7.061628, 10.78721],
    [-26.87537, -27.85941, -25.26188],
    [-0.09374941, -0.04223660, -1.330764],
    [6.680829, 6.933201, 6.111261],
    [-0.3086695, -0.3285492, -0.01411589],
    [-1.204759, -1.251863, -1.065779],
    [0.08555660, 0.08970893, 0.03517729],
    [0.1590441, 0.1654770, 0.1352121],
    [-0.01253891, -0.01309178, -0.006412513],
    [-0.01527912, -0.01591658, -0.01241044],
    [0.001141524, 0.001189852, 0.0006253121],
    [0.001042632, 0.001087308, 0.0008050851],
    [-0.00006491531, -0.00006761426, -0.00003629592],
    [-0.00004797304, -0.00005007409, -0.00003507896],
    [0.000002124622, 0.000002212277, 0.000001186322],
    [0.000001335500, 0.000001395001, 0.0000009223072],
    [-0.00000003068878, -0.00000003195140, -0.00000001691387],
    [-0.00000001699460, -0.00000001776155, -0.00000001106804],
];

/// Reference sums of squared fitted values, same method order.
const REFERENCE_SS_NORMALIZED: [f64; 3] = [218.869, 219.183, 219.095];
const REFERENCE_SS_ORIGINAL: [f64; 3] = [13132.6, 13177.4, 13169.9];

fn fits16() -> &'static [FitReport] {
    static CELL: OnceLock<Vec<FitReport>> = OnceLock::new();
    CELL.get_or_init(|| reference_fit_reports(16).expect("16-digit reference run"))
}

fn fits32() -> &'static [FitReport] {
    static CELL: OnceLock<Vec<FitReport>> = OnceLock::new();
    CELL.get_or_init(|| reference_fit_reports(32).expect("32-digit reference run"))
}

/// Collects failed checks so one criterion reports every miss at once.
struct Checker {
    label: &'static str,
    failures: Vec<String>,
}

impl Checker {
    fn new(label: &'static str) -> Self {
        Checker {
            label,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, what: &str, pass: bool, detail: String) {
        if !pass {
            self.failures.push(format!("{what}: {detail}"));
        }
    }

    fn close_abs(&mut self, what: &str, got: f64, want: f64, tol: f64) {
        self.check(
            what,
            (got - want).abs() <= tol,
            format!("got {got:.10e}, want {want:.10e} within {tol:.1e}"),
        );
    }

    fn close_sig(&mut self, what: &str, got: f64, reference: f64, digits: i32) {
        let tol = 0.5 * 10f64.powi(reference.abs().log10().floor() as i32 - digits + 1);
        self.check(
            what,
            (got - reference).abs() <= tol,
            format!(
                "got {got:.10e}, reference {reference:.7e}, allowed {tol:.1e} ({digits} digits)"
            ),
        );
    }

    fn finish(self) {
        if self.failures.is_empty() {
            println!("{}: PASS", self.label);
            return;
        }
        for failure in &self.failures {
            println!("{}: FAIL {failure}", self.label);
        }
        panic!("{}: {} check(s) failed", self.label, self.failures.len());
    }
}

fn coefficient_digits(k: usize) -> i32 {
    if k <= 10 {
        6
    } else {
        4
    }
}

#[test]
fn criterion_01_trapezoid_simple_coefficients() {
    let ds = sample_test_function::<f64>(629).unwrap();
    let start = Instant::now();
    let report = fit_pipeline_at(&ds, 30, MethodTag::TrapezoidSimple, 16).unwrap();
    let elapsed = start.elapsed().as_secs_f64();

    let mut c = Checker::new("criterion 1");
    for (k, row) in REFERENCE_COEFFS.iter().enumerate() {
        c.close_sig(
            &format!("x^{k} coefficient"),
            report.series_original.coeffs[k],
            row[0],
            coefficient_digits(k),
        );
    }
    c.check("runtime", elapsed <= 10.0, format!("{elapsed:.3} s > 10 s"));
    c.finish();
}

#[test]
fn criterion_02_orthonormal_and_ols_coefficients() {
    let mut c = Checker::new("criterion 2");
    for (column, fit) in [(1usize, &fits16()[1]), (2usize, &fits16()[2])] {
        for (k, row) in REFERENCE_COEFFS.iter().enumerate() {
            c.close_sig(
                &format!("{} x^{k} coefficient", fit.method.name()),
                fit.series_original.coeffs[k],
                row[column],
                coefficient_digits(k),
            );
        }
    }
    c.finish();
}

#[test]
fn criterion_03_total_sum_of_squares() {
    let mut c = Checker::new("criterion 3");
    for (i, fit) in fits32().iter().enumerate() {
        let nm = &fit.ss_normalized;
        let or = &fit.ss_original;
        println!(
            "criterion 3: {} measured SS normalized (data/fitted/residual) = \
             {:.6}/{:.6}/{:.6e}, original = {:.1}/{:.1}/{:.6e}",
            fit.method.name(),
            nm.data_ss,
            nm.fitted_ss,
            nm.residual_ss,
            or.data_ss,
            or.fitted_ss,
            or.residual_ss,
        );
        c.close_sig(
            &format!("normalized-scale SS, {}", fit.method.name()),
            nm.fitted_ss,
            REFERENCE_SS_NORMALIZED[i],
            5,
        );
        c.close_sig(
            &format!("original-scale SS, {}", fit.method.name()),
            or.fitted_ss,
            REFERENCE_SS_ORIGINAL[i],
            5,
        );
    }
    c.finish();
}

#[test]
fn criterion_04_sixteen_digit_rerun_stability() {
    let mut c = Checker::new("criterion 4");
    for (low, high) in fits16().iter().zip(fits32()) {
        for k in 0..=30 {
            let a = low.series_original.coeffs[k];
            let b = high.series_original.coeffs[k];
            c.check(
                &format!("{} x^{k} cell", low.method.name()),
                (a - b).abs() <= 1e-5 * b.abs(),
                format!("16-digit {a:.10e} vs 32-digit {b:.10e}"),
            );
        }
    }
    c.finish();
}

#[test]
fn criterion_05_orthonormality_probe_suite() {
    let mut c = Checker::new("criterion 5");
    for k in 0..=10usize {
        for l in 0..=10usize {
            let err = quadrature_error_probe(k, l, 629).unwrap();
            c.check(
                &format!("probe({k},{l},629)"),
                err <= 1e-3,
                format!("deviation {err:.4e} > 1e-3"),
            );
            // Doubling the point count must shrink the error about
            // fourfold wherever it is above roundoff.
            if err >= 1e-6 {
                let finer = quadrature_error_probe(k, l, 1257).unwrap();
                let ratio = err / finer;
                c.check(
                    &format!("reduction probe({k},{l})"),
                    (3.5..=4.5).contains(&ratio),
                    format!("ratio {ratio:.4} outside [3.5, 4.5]"),
                );
            }
        }
    }
    c.finish();
}

#[test]
fn criterion_06_forsythe_property_suite() {
    let mut c = Checker::new("criterion 6");

    // Discrete orthogonality on the reference grid at degree 20.
    let ds = sample_test_function::<f64>(629)
        .unwrap()
        .normalize()
        .unwrap();
    let basis = build_forsythe_basis(ds.grid(), 20).unwrap();
    let mut dots = vec![vec![0.0f64; 21]; 21];
    for i in 0..ds.n() {
        let values = basis.values_at(20, ds.grid().point(i));
        for (k, row) in dots.iter_mut().enumerate() {
            for (l, cell) in row[..k].iter_mut().enumerate() {
                *cell += values[k] * values[l];
            }
        }
    }
    let mut worst = 0.0f64;
    for (k, row) in dots.iter().enumerate() {
        for (l, &d) in row[..k].iter().enumerate() {
            let r = (d / (basis.norms()[k] * basis.norms()[l]).sqrt()).abs();
            worst = worst.max(r);
        }
    }
    c.check(
        "orthogonality residual, degree 20",
        worst <= 1e-8,
        format!("{worst:.3e} > 1e-8"),
    );

    // Fitted-value agreement with least squares on a 101-point grid.
    let small = sample_test_function::<f64>(101)
        .unwrap()
        .normalize()
        .unwrap();
    for m in 0..=10usize {
        let ffit = forsythe_fit(&small, m).unwrap();
        let ols = fit_ols(&small, m, BasisKind::LegendreOrthonormal).unwrap();
        let mut diff = 0.0f64;
        let mut scale = 0.0f64;
        for i in 0..small.n() {
            let x = small.grid().point(i);
            diff = diff.max((ffit.eval(x) - ols.eval(x).unwrap()).abs());
            scale = scale.max(ols.eval(x).unwrap().abs());
        }
        c.check(
            &format!("agreement with least squares, degree {m}"),
            diff <= 1e-8 * scale,
            format!("max difference {diff:.3e} vs scale {scale:.3e}"),
        );
    }

    // Divergence of the back-transformed coefficients from the series
    // reference at high index, double precision, degree 30.
    let fit = forsythe_fit(&ds, 30).unwrap();
    let mono = forsythe_to_monomial(&fit).unwrap();
    let original = back_transform(&mono, ds.norm().unwrap()).unwrap();
    let taylor = taylor_reference();
    let mut diverged = Vec::new();
    for k in 13..=30usize {
        let ratio = (original.coeffs[k] / taylor.coeffs[k]).abs();
        if !(0.1..=10.0).contains(&ratio) {
            diverged.push((k, ratio));
        }
    }
    println!("criterion 6: diverged indices {diverged:?}");
    c.check(
        "high-index divergence count",
        diverged.len() * 2 >= 18,
        format!("{} of 18 indices diverged past 10x", diverged.len()),
    );
    c.finish();
}

#[test]
fn criterion_07_conditioning_gap() {
    let ds = sample_test_function::<f64>(629)
        .unwrap()
        .normalize()
        .unwrap();
    let mut c = Checker::new("criterion 7");
    let low = condition_diagnostics(&ds, 5).unwrap();
    c.check(
        "degree 5 gap",
        low.gram_condition_monomial >= 1e2 * low.gram_condition_orthonormal,
        format!(
            "monomial {:.3e} vs orthonormal {:.3e}",
            low.gram_condition_monomial, low.gram_condition_orthonormal
        ),
    );
    let high = condition_diagnostics(&ds, 15).unwrap();
    c.check(
        "degree 15 gap",
        high.gram_condition_monomial >= 1e6 * high.gram_condition_orthonormal,
        format!(
            "monomial {:.3e} vs orthonormal {:.3e}",
            high.gram_condition_monomial, high.gram_condition_orthonormal
        ),
    );
    c.finish();
}

#[test]
fn criterion_08_maximum_fit_error() {
    let ds = sample_test_function::<f64>(629).unwrap();
    let spread = ds.y().iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - ds.y().iter().cloned().fold(f64::INFINITY, f64::min);
    let bound = 1e-2 * spread;
    let mut c = Checker::new("criterion 8");
    for fit in fits16() {
        let mut worst = 0.0f64;
        let mut at = 0.0f64;
        for i in 0..ds.n() {
            let x = ds.grid().point(i);
            let e = (fit.series_original.eval(x).unwrap() - ds.y()[i]).abs();
            if e > worst {
                worst = e;
                at = x;
            }
        }
        println!(
            "criterion 8: {} max error {worst:.4} at x = {at:.4} (bound {bound:.4})",
            fit.method.name()
        );
        c.check(
            &format!("max error, {}", fit.method.name()),
            worst <= bound,
            format!("{worst:.4e} > {bound:.4e}"),
        );
    }
    c.finish();
}

// Independent closed-form evaluation used to cross-check the recurrence.
fn binomial(n: u64, k: u64) -> f64 {
    let k = k.min(n - k);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (n - i) as u128;
        den *= (i + 1) as u128;
    }
    (num / den) as f64
}

fn derivative_formula_value(k: usize, x: f64) -> f64 {
    let mut total = 0.0;
    for j in 0..=(k / 2) {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let c = binomial(k as u64, j as u64) * binomial((2 * k - 2 * j) as u64, k as u64);
        total += sign * c * x.powi((k - 2 * j) as i32);
    }
    total / 2f64.powi(k as i32)
}

fn run_cli(args: &[&str]) -> (String, String, bool) {
    let out = Command::new(env!("CARGO_BIN_EXE_legfit"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.success(),
    )
}

// Reference values are asserted at their printed width, so some literals
// approximate named constants on purpose.
#[allow(clippy::approx_constant)]
#[test]
fn criterion_09_worked_examples() {
    let mut c = Checker::new("criterion 9");

    // Recurrence vs the closed-form expansion, k <= 10, 21 points.
    for k in 0..=10usize {
        for i in 0..21 {
            let x = -1.0 + 0.1 * i as f64;
            let got = legendre_eval(k, x);
            let want = derivative_formula_value(k, x);
            let rel = (got - want).abs() / want.abs().max(1e-300);
            c.check(
                &format!("recurrence vs closed form, k={k}, x={x:.1}"),
                got == want || rel <= 1e-10,
                format!("{got:.15e} vs {want:.15e}"),
            );
        }
    }

    // Basis evaluation.
    c.check(
        "P0(0.37)",
        legendre_eval(0, 0.37f64) == 1.0,
        "not exactly 1".into(),
    );
    for k in 0..=30usize {
        c.check(
            &format!("P{k}(1)"),
            legendre_eval(k, 1.0f64) == 1.0,
            format!("{:.17e}", legendre_eval(k, 1.0f64)),
        );
    }
    c.check(
        "P2(0.5)",
        legendre_eval(2, 0.5f64) == -0.125,
        "not exactly -1/8".into(),
    );
    c.close_abs(
        "orth0",
        normalized_legendre_eval(0, 0.1234f64),
        0.70710678,
        5e-9,
    );
    c.close_abs(
        "orth1(1)",
        normalized_legendre_eval(1, 1.0f64),
        1.22474487,
        5e-9,
    );
    c.close_abs(
        "orth2(0.5)",
        normalized_legendre_eval(2, 0.5f64),
        -0.19764235,
        5e-9,
    );

    // Design matrices.
    let three = Grid::new(-1.0f64, 1.0, 3).unwrap();
    let phi = design_matrix(&three, 1, BasisKind::Legendre).unwrap();
    let expected = [[1.0, -1.0], [1.0, 0.0], [1.0, 1.0]];
    for i in 0..3 {
        for j in 0..2 {
            c.check(
                &format!("design[{i}][{j}]"),
                phi[(i, j)] == expected[i][j],
                format!("{}", phi[(i, j)]),
            );
        }
    }
    let phi2 = design_matrix(&three, 2, BasisKind::Legendre).unwrap();
    for (i, want) in [1.0, -0.5, 1.0].into_iter().enumerate() {
        c.check(
            &format!("degree-2 column at row {i}"),
            phi2[(i, 2)] == want,
            format!("{}", phi2[(i, 2)]),
        );
    }
    let unit = Grid::new(0.0f64, 1.0, 2).unwrap();
    let mono = design_matrix(&unit, 2, BasisKind::Monomial).unwrap();
    let expected = [[1.0, 0.0, 0.0], [1.0, 1.0, 1.0]];
    for i in 0..2 {
        for j in 0..3 {
            c.check(
                &format!("monomial design[{i}][{j}]"),
                mono[(i, j)] == expected[i][j],
                format!("{}", mono[(i, j)]),
            );
        }
    }

    // Basis conversion.
    let series = |basis, coeffs: Vec<f64>| PolySeries {
        basis,
        coeffs,
        domain: (-1.0, 1.0),
    };
    let lin = legendre_to_monomial(&series(BasisKind::Legendre, vec![0.0, 1.0])).unwrap();
    c.check(
        "conversion of the linear basis",
        lin.coeffs == vec![0.0, 1.0],
        format!("{:?}", lin.coeffs),
    );
    let quad = legendre_to_monomial(&series(BasisKind::Legendre, vec![0.0, 0.0, 1.0])).unwrap();
    c.check(
        "conversion of the quadratic basis",
        quad.coeffs == vec![-0.5, 0.0, 1.5],
        format!("{:?}", quad.coeffs),
    );
    // The input coefficient sqrt(2) is itself rounded, so the product with
    // sqrt(1/2) can be off by an ulp; the tail stays exactly zero.
    let unit_const = legendre_to_monomial(&series(
        BasisKind::LegendreOrthonormal,
        vec![2.0f64.sqrt(), 0.0, 0.0],
    ))
    .unwrap();
    c.close_abs(
        "orthonormal constant to monomial",
        unit_const.coeffs[0],
        1.0,
        1e-15,
    );
    c.check(
        "orthonormal constant tail",
        unit_const.coeffs[1..].iter().all(|&v| v == 0.0),
        format!("{:?}", unit_const.coeffs),
    );

    // Inner products on the three-point grid.
    let ones = [1.0f64; 3];
    let xs = [-1.0f64, 0.0, 1.0];
    c.check(
        "constant trapezoid",
        weighted_inner(&ones, &ones, 1.0, InnerProductRule::Trapezoid).unwrap() == 2.0,
        "not exactly 2".into(),
    );
    c.check(
        "linear trapezoid",
        weighted_inner(&xs, &xs, 1.0, InnerProductRule::Trapezoid).unwrap() == 1.0,
        "not exactly 1".into(),
    );
    c.check(
        "constant rectangle",
        weighted_inner(&ones, &ones, 1.0, InnerProductRule::Rectangle).unwrap() == 3.0,
        "not exactly 3".into(),
    );
    c.check(
        "probe(0,0,629)",
        quadrature_error_probe(0, 0, 629).unwrap() <= 1e-12,
        format!("{:.3e}", quadrature_error_probe(0, 0, 629).unwrap()),
    );
    c.check(
        "probe(0,1,629)",
        quadrature_error_probe(0, 1, 629).unwrap() <= 1e-12,
        format!("{:.3e}", quadrature_error_probe(0, 1, 629).unwrap()),
    );
    let p55 = quadrature_error_probe(5, 5, 629).unwrap();
    let p55_fine = quadrature_error_probe(5, 5, 1257).unwrap();
    c.check("probe(5,5,629)", p55 <= 1e-3, format!("{p55:.3e}"));
    c.check(
        "probe(5,5) reduction",
        (3.5..=4.5).contains(&(p55 / p55_fine)),
        format!("{:.4}", p55 / p55_fine),
    );

    // Domain maps.
    let pi = std::f64::consts::PI;
    let sym = t2_forward(-pi, pi).unwrap();
    c.check(
        "symmetric map",
        sym.scale == 1.0 / pi && sym.offset == 0.0,
        format!("({}, {})", sym.scale, sym.offset),
    );
    let ident = t2_forward(-1.0f64, 1.0).unwrap();
    c.check(
        "unit map",
        ident.scale == 1.0 && ident.offset == 0.0,
        format!("({}, {})", ident.scale, ident.offset),
    );
    c.check(
        "midpoint of [0,2]",
        t2_forward(0.0f64, 2.0).unwrap().apply(1.0) == 0.0,
        "midpoint not at 0".into(),
    );
    let m_series = |coeffs: Vec<f64>| PolySeries {
        basis: BasisKind::Monomial,
        coeffs,
        domain: (-1.0, 1.0),
    };
    let scaled = substitute_affine(
        &m_series(vec![0.0, 1.0]),
        &AffineMap::new(1.0 / pi, 0.0).unwrap(),
    )
    .unwrap();
    c.check(
        "variable scaling",
        scaled.coeffs == vec![0.0, 1.0 / pi],
        format!("{:?}", scaled.coeffs),
    );
    let shifted = substitute_affine(
        &m_series(vec![0.0, 0.0, 1.0]),
        &AffineMap::new(1.0, 1.0).unwrap(),
    )
    .unwrap();
    c.check(
        "binomial expansion",
        shifted.coeffs == vec![1.0, 2.0, 1.0],
        format!("{:?}", shifted.coeffs),
    );
    let same = substitute_affine(&m_series(vec![0.3, -0.7, 0.11]), &AffineMap::identity()).unwrap();
    c.check(
        "identity substitution",
        same.coeffs == vec![0.3, -0.7, 0.11],
        format!("{:?}", same.coeffs),
    );
    let rescaled = rescale_output(
        &m_series(vec![0.0, 1.0]),
        &AffineMap::new(1.0 / 6.0, 0.0).unwrap(),
    )
    .unwrap();
    c.check(
        "inverse y scaling",
        rescaled.coeffs == vec![0.0, 6.0],
        format!("{:?}", rescaled.coeffs),
    );
    let restored =
        rescale_output(&m_series(vec![0.0]), &AffineMap::new(1.0, -5.0).unwrap()).unwrap();
    c.check(
        "constant restored",
        restored.coeffs == vec![5.0],
        format!("{:?}", restored.coeffs),
    );
    let kept = rescale_output(&m_series(vec![0.25, -1.5]), &AffineMap::identity()).unwrap();
    c.check(
        "identity y map",
        kept.coeffs == vec![0.25, -1.5],
        format!("{:?}", kept.coeffs),
    );

    // Projection estimators.
    let grid629 = Grid::new(-1.0f64, 1.0, 629).unwrap();
    let points: Vec<f64> = grid629.points();
    let constant = Dataset::from_normalized(vec![1.0; 629]).unwrap();
    let rect_const = fit_rectangle_simple(&constant, 3).unwrap();
    c.check(
        "constant data recovers the constant, ratio rule",
        rect_const.coeffs[0] == 1.0,
        format!("{:.17e}", rect_const.coeffs[0]),
    );
    c.check(
        "constant data higher coefficients vanish, ratio rule",
        rect_const.coeffs[1..].iter().all(|&v| v == 0.0),
        format!("{:?}", rect_const.coeffs),
    );
    let p3 =
        Dataset::from_normalized(points.iter().map(|&x| legendre_eval(3, x)).collect()).unwrap();
    let rect_p3 = fit_rectangle_simple(&p3, 5).unwrap();
    c.close_abs(
        "degree-3 samples recover coefficient 3",
        rect_p3.coeffs[3],
        1.0,
        1e-2,
    );
    for k in [0usize, 1, 2, 4, 5] {
        c.check(
            &format!("degree-3 sample leakage at k={k}"),
            rect_p3.coeffs[k].abs() <= 1e-2,
            format!("{:.6e}", rect_p3.coeffs[k]),
        );
    }
    let zero = Dataset::from_normalized(vec![0.0; 629]).unwrap();
    c.check(
        "zero data, ratio rule",
        fit_rectangle_simple(&zero, 5)
            .unwrap()
            .coeffs
            .iter()
            .all(|&v| v == 0.0),
        "nonzero coefficient".into(),
    );
    c.check(
        "zero data, weighted rule",
        fit_rectangle_orthonormal(&zero, 5)
            .unwrap()
            .coeffs
            .iter()
            .all(|&v| v == 0.0),
        "nonzero coefficient".into(),
    );
    c.check(
        "zero data, trapezoid weighted rule",
        fit_trapezoid_orthonormal(&zero, 5)
            .unwrap()
            .coeffs
            .iter()
            .all(|&v| v == 0.0),
        "nonzero coefficient".into(),
    );
    let half_sqrt = Dataset::from_normalized(vec![0.5f64.sqrt(); 629]).unwrap();
    let rect_orth = fit_rectangle_orthonormal(&half_sqrt, 2).unwrap();
    c.close_abs(
        "constant orthonormal sample",
        rect_orth.coeffs[0],
        1.0,
        2.0 * half_sqrt.grid().h(),
    );
    let p2 = Dataset::from_normalized(
        points
            .iter()
            .map(|&x| normalized_legendre_eval(2, x))
            .collect(),
    )
    .unwrap();
    let rect_p2 = fit_rectangle_orthonormal(&p2, 4).unwrap();
    c.close_abs(
        "orthonormal degree-2 samples recover coefficient 2",
        rect_p2.coeffs[2],
        1.0,
        1e-2,
    );
    for k in [0usize, 1, 3, 4] {
        c.check(
            &format!("orthonormal degree-2 leakage at k={k}"),
            rect_p2.coeffs[k].abs() <= 1e-2,
            format!("{:.6e}", rect_p2.coeffs[k]),
        );
    }
    let trap_const = fit_trapezoid_simple(&constant, 3).unwrap();
    c.check(
        "constant data recovers the constant, trapezoid ratio rule",
        trap_const.coeffs[0] == 1.0,
        format!("{:.17e}", trap_const.coeffs[0]),
    );
    c.check(
        "constant data higher coefficients vanish, trapezoid ratio rule",
        trap_const.coeffs[1..].iter().all(|&v| v == 0.0),
        format!("{:?}", trap_const.coeffs),
    );

    // Least squares on exactly-polynomial data, every basis.
    let quad_data = Dataset::new(
        Grid::new(-2.0f64, 3.0, 11).unwrap(),
        (0..11)
            .map(|i| {
                let x = -2.0 + 0.5 * i as f64;
                2.0 * x * x - x + 0.5
            })
            .collect(),
    )
    .unwrap()
    .normalize()
    .unwrap();
    for basis in [
        BasisKind::Monomial,
        BasisKind::Legendre,
        BasisKind::LegendreOrthonormal,
    ] {
        let fit = fit_ols(&quad_data, 2, basis).unwrap();
        let ss = sum_of_squares(&quad_data, &fit, Scale::Normalized).unwrap();
        c.check(
            &format!("quadratic interpolation, {} basis", basis.name()),
            ss.residual_ss <= 1e-20 * ss.data_ss,
            format!("residual {:.3e} vs data {:.3e}", ss.residual_ss, ss.data_ss),
        );
        c.check(
            &format!("perfect-fit sums, {} basis", basis.name()),
            (ss.fitted_ss - ss.data_ss).abs() <= 1e-12 * ss.data_ss,
            format!("fitted {:.6e} vs data {:.6e}", ss.fitted_ss, ss.data_ss),
        );
    }

    // Condition diagnostics.
    let norm629 = sample_test_function::<f64>(629)
        .unwrap()
        .normalize()
        .unwrap();
    let flat = condition_diagnostics(&norm629, 0).unwrap();
    c.check(
        "degree-0 conditions",
        flat.gram_condition_orthonormal == 1.0 && flat.gram_condition_monomial == 1.0,
        format!("{:?}", flat),
    );
    let deep = condition_diagnostics(&norm629, 20).unwrap();
    c.check(
        "degree-20 monomial condition",
        deep.gram_condition_monomial > 1e10,
        format!("{:.3e}", deep.gram_condition_monomial),
    );

    // Pipeline on constant data.
    let level = Dataset::new(Grid::new(0.0f64, 5.0, 9).unwrap(), vec![-2.5; 9]).unwrap();
    for method in MethodTag::ALL {
        let report = fit_pipeline(&level, 2, method).unwrap();
        let coeffs = &report.series_original.coeffs;
        c.check(
            &format!("constant pipeline, {}", method.name()),
            (coeffs[0] + 2.5).abs() <= 1e-10 * 2.5
                && coeffs[1..].iter().all(|&v| v.abs() <= 1e-10 * 2.5),
            format!("{coeffs:?}"),
        );
    }

    // Discretely-orthogonal baseline.
    let tiny = Grid::new(-1.0f64, 1.0, 3).unwrap();
    let tiny_basis = build_forsythe_basis(&tiny, 1).unwrap();
    c.check(
        "symmetric-grid shift",
        tiny_basis.alphas()[0] == 0.0 && tiny_basis.values_at(1, 0.7)[1] == 0.7,
        format!("alpha {:?}", tiny_basis.alphas()),
    );
    c.check(
        "degree-0 norm equals point count",
        tiny_basis.norms()[0] == 3.0,
        format!("{:?}", tiny_basis.norms()),
    );
    let line = Dataset::from_normalized(vec![-1.0, 0.0, 1.0]).unwrap();
    let line_fit = forsythe_fit(&line, 1).unwrap();
    let line_mono = forsythe_to_monomial(&line_fit).unwrap();
    c.check(
        "linear fit to monomials",
        (line_mono.coeffs[0]).abs() <= 1e-15 && (line_mono.coeffs[1] - 1.0).abs() <= 1e-15,
        format!("{:?}", line_mono.coeffs),
    );
    let level3 = Dataset::from_normalized(vec![0.75; 3]).unwrap();
    let level_fit = forsythe_fit(&level3, 1).unwrap();
    c.check(
        "constant fit coefficients",
        level_fit.coeffs[0] == 0.75 && level_fit.coeffs[1] == 0.0,
        format!("{:?}", level_fit.coeffs),
    );
    let basis101 = build_forsythe_basis(&Grid::new(-1.0f64, 1.0, 101).unwrap(), 4).unwrap();
    let p2_samples: Vec<f64> = (0..101)
        .map(|i| basis101.values_at(2, basis101.grid().point(i))[2])
        .collect();
    let own = forsythe_fit(&Dataset::from_normalized(p2_samples).unwrap(), 4).unwrap();
    for (k, &b) in own.coeffs.iter().enumerate() {
        let want = if k == 2 { 1.0 } else { 0.0 };
        c.check(
            &format!("own-basis sample coefficient {k}"),
            (b - want).abs() <= 1e-8,
            format!("{b:.3e}"),
        );
    }
    let ffit629 = forsythe_fit(&norm629, 30).unwrap();
    let fres = ffit629.residual_ss(&norm629).unwrap();
    let ols_res = fits16()[2].ss_normalized.residual_ss;
    c.check(
        "baseline residual within twice least squares",
        fres <= 2.0 * ols_res,
        format!("{fres:.6e} vs {ols_res:.6e}"),
    );

    // Built-in sample and references.
    c.check("f(0)", test_function(0.0f64) == 0.0, "nonzero".into());
    let pi2 = pi * pi;
    c.close_abs(
        "f(pi)",
        test_function(pi),
        3.0 * pi2.sin() * (pi / 2.0).exp(),
        1e-12,
    );
    c.close_abs(
        "f(1)",
        test_function(1.0f64),
        3.0f64.sin() * 5.0f64.cos() / std::f64::consts::E,
        1e-14,
    );
    let two = sample_test_function::<f64>(2).unwrap();
    c.check(
        "two-point sample hits the endpoints",
        two.grid().points() == vec![-pi, pi],
        format!("{:?}", two.grid().points()),
    );
    let saved = sample_test_function::<f64>(101).unwrap();
    let mut buf = Vec::new();
    saved.save(&mut buf).unwrap();
    let reread: Dataset<f64> = Dataset::load(std::io::Cursor::new(buf)).unwrap();
    c.check(
        "write/read round trip",
        reread.y() == saved.y() && reread.grid().a() == saved.grid().a(),
        "dataset changed through serialization".into(),
    );
    let taylor = taylor_reference();
    c.close_abs(
        "series slope vs derivative",
        taylor.coeffs[1],
        3.0 + 3.0 * pi,
        1e-6,
    );
    c.close_abs(
        "series curvature vs derivative",
        taylor.coeffs[2],
        (3.0 * pi - 6.0) / 2.0,
        1e-4,
    );
    let fig1 = figure_data(1).unwrap();
    c.check(
        "figure 1 center row",
        fig1.rows[500] == vec![0.0, 0.0],
        format!("{:?}", fig1.rows[500]),
    );
    let fig2 = figure_data(2).unwrap();
    c.check(
        "figure 2 column count",
        fig2.column_labels.len() == 5,
        format!("{}", fig2.column_labels.len()),
    );
    // The maximum-error statement behind figure 2 is asserted separately at
    // criterion 8 and is not repeated here.

    // Command-line wiring.
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("data.csv");
    let (_, _, ok) = run_cli(&["sample", "--n", "629", "--output", data.to_str().unwrap()]);
    c.check("sample command", ok, "sample failed".into());
    let (fit_text, _, ok) = run_cli(&[
        "fit",
        "--input",
        data.to_str().unwrap(),
        "--degree",
        "30",
        "--method",
        "trapezoid-simple",
    ]);
    c.check(
        "fit command emits a report",
        ok && fit_text.contains("method: trapezoid-simple") && fit_text.contains("c[30]"),
        "missing report fields".into(),
    );
    let (_, errs, ok) = run_cli(&["fit", "--input", data.to_str().unwrap(), "--degree", "-1"]);
    c.check(
        "negative degree is a one-line error",
        !ok && errs.lines().count() == 1,
        format!("{errs:?}"),
    );
    let (cmp_csv, _, ok) = run_cli(&[
        "compare",
        "--input",
        data.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    let data_rows: Vec<&str> = cmp_csv
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('k'))
        .collect();
    c.check(
        "comparison schema",
        ok && data_rows.len() == 31 && data_rows.iter().all(|r| r.split(',').count() == 6),
        format!("{} rows", data_rows.len()),
    );
    let residual = |name: &str| -> f64 {
        cmp_csv
            .lines()
            .find(|l| l.starts_with(&format!("# residual-ss {name}")))
            .and_then(|l| l.rsplit(" = ").next())
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(f64::NAN)
    };
    let ols_r = residual("ols-orthonormal");
    c.check(
        "least-squares residual is smallest in comparison output",
        ols_r <= residual("trapezoid-simple")
            && ols_r <= residual("trapezoid-orthonormal")
            && ols_r <= residual("forsythe") + 1e-12,
        format!(
            "ols {ols_r:e}, ts {:e}, to {:e}, forsythe {:e}",
            residual("trapezoid-simple"),
            residual("trapezoid-orthonormal"),
            residual("forsythe")
        ),
    );
    let (csv_out, _, _) = run_cli(&[
        "fit",
        "--input",
        data.to_str().unwrap(),
        "--degree",
        "8",
        "--format",
        "csv",
    ]);
    let (flat_out, _, _) = run_cli(&[
        "fit",
        "--input",
        data.to_str().unwrap(),
        "--degree",
        "8",
        "--format",
        "structured",
    ]);
    let csv_c3 = csv_out
        .lines()
        .find(|l| l.starts_with("3,"))
        .and_then(|l| l.split(',').nth(1))
        .unwrap_or("");
    let flat_c3 = flat_out
        .lines()
        .find(|l| l.starts_with("coefficient_original_3 = "))
        .and_then(|l| l.rsplit(" = ").next())
        .unwrap_or("?");
    c.check(
        "formats carry identical values",
        !csv_c3.is_empty() && csv_c3 == flat_c3,
        format!("csv {csv_c3:?} vs structured {flat_c3:?}"),
    );
    let (bench_out, _, ok) = run_cli(&["bench", "--repeat", "5"]);
    let means: Vec<f64> = bench_out
        .lines()
        .filter_map(|l| l.split("mean = ").nth(1))
        .filter_map(|rest| rest.split(' ').next())
        .filter_map(|v| v.parse().ok())
        .collect();
    c.check(
        "bench timings",
        ok && means.len() == 3 && means.iter().all(|&t| t.is_finite() && t > 0.0),
        format!("{means:?}"),
    );
    c.finish();
}
