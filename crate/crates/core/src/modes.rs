use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gaussian::TwoModeCovariance;

/// Default tolerance on commutation residuals. Valid rows are analytic
/// constructions, so residuals should sit at rounding level.
pub const DEFAULT_VALIDATION_TOL: f64 = 1e-10;

/// Eigenfrequencies `omega_a > 0` of the diagonal free Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSpectrum {
    frequencies: Vec<f64>,
}

impl ModeSpectrum {
    pub fn new(frequencies: Vec<f64>) -> Result<Self> {
        if frequencies.is_empty() {
            return Err(Error::InvalidValue(
                "spectrum must contain at least one mode".into(),
            ));
        }
        if let Some(bad) = frequencies.iter().find(|w| !w.is_finite() || **w <= 0.0) {
            return Err(Error::InvalidValue(format!(
                "mode frequencies must be finite and positive, got {bad}"
            )));
        }
        Ok(Self { frequencies })
    }

    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn frequencies(&self) -> &[f64] {
        &self.frequencies
    }
}

/// Dimensionless temperature `t >= 0` with `beta = 1/t`; `t = 0` is the exact
/// zero-temperature limit (all thermal weights equal 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Temperature(f64);

impl Temperature {
    pub fn new(t: f64) -> Result<Self> {
        if !t.is_finite() || t < 0.0 {
            return Err(Error::InvalidValue(format!(
                "temperature must be finite and nonnegative, got {t}"
            )));
        }
        Ok(Self(t))
    }

    pub fn zero() -> Self {
        Self(0.0)
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0 == 0.0
    }

    /// `beta = 1/t`, infinite at zero temperature.
    pub fn beta(&self) -> f64 {
        if self.is_zero() {
            f64::INFINITY
        } else {
            self.0.recip()
        }
    }

    /// Thermal weight `coth(beta*omega/2)`, exactly 1 at `t = 0`.
    ///
    /// For `beta*omega > 1` uses `1 + 2/(e^{beta*omega} - 1)` to stay accurate
    /// as the weight approaches 1; otherwise the direct ratio.
    pub fn weight(&self, omega: f64) -> f64 {
        if self.is_zero() {
            return 1.0;
        }
        let x = omega / self.0;
        if x > 1.0 {
            1.0 + 2.0 / x.exp_m1()
        } else {
            (x / 2.0).tanh().recip()
        }
    }

    /// Residual weight `coth(beta*omega/2) - 1`, exactly 0 at `t = 0`.
    /// Computed as `2/(e^{beta*omega} - 1)`, which never cancels.
    pub fn excess_weight(&self, omega: f64) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        2.0 / (omega / self.0).exp_m1()
    }

    /// Boltzmann factor `e^{-beta*omega}`, 0 at `t = 0`.
    pub(crate) fn boltzmann(&self, omega: f64) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            (-omega / self.0).exp()
        }
    }
}

/// The rows `k` and `l` of the transformation matrices `S` and `T`:
/// `a_i = sum_a (S_ia^* b_a + T_ia b_a^dag)` for `i = k, l`.
///
/// Construction only enforces equal lengths; the physical commutation
/// constraints are checked separately by [`validate_rows`].
#[derive(Debug, Clone, PartialEq)]
pub struct TransformRows {
    s_k: Vec<Complex64>,
    t_k: Vec<Complex64>,
    s_l: Vec<Complex64>,
    t_l: Vec<Complex64>,
}

impl TransformRows {
    pub fn new(
        s_k: Vec<Complex64>,
        t_k: Vec<Complex64>,
        s_l: Vec<Complex64>,
        t_l: Vec<Complex64>,
    ) -> Result<Self> {
        let len = s_k.len();
        if len == 0 {
            return Err(Error::InvalidValue(
                "transformation rows must not be empty".into(),
            ));
        }
        for other in [t_k.len(), s_l.len(), t_l.len()] {
            if other != len {
                return Err(Error::LengthMismatch {
                    left: len,
                    right: other,
                });
            }
        }
        Ok(Self { s_k, t_k, s_l, t_l })
    }

    pub fn len(&self) -> usize {
        self.s_k.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn s_k(&self) -> &[Complex64] {
        &self.s_k
    }

    pub fn t_k(&self) -> &[Complex64] {
        &self.t_k
    }

    pub fn s_l(&self) -> &[Complex64] {
        &self.s_l
    }

    pub fn t_l(&self) -> &[Complex64] {
        &self.t_l
    }
}

/// Residual and verdict for one commutation constraint.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintCheck {
    pub name: &'static str,
    pub residual: f64,
    pub pass: bool,
}

/// Result of checking the three commutation constraints on a row pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub tol: f64,
    pub checks: Vec<ConstraintCheck>,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, c) in self.checks.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(
                f,
                "{}: residual {:.3e} {}",
                c.name,
                c.residual,
                if c.pass { "PASS" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}

/// Checks the three commutation constraints on the rows:
///
/// - normalization, `sum_a |S_ra|^2 - |T_ra|^2 = 1` for each row (`[a_r, a_r^dag] = 1`),
///   reported as the larger of the two row residuals;
/// - cross-orthogonality, `sum_a S_ka^* S_la - T_ka T_la^* = 0` (`[a_k, a_l^dag] = 0`);
/// - symmetry, `sum_a T_la S_ka^* = sum_a T_ka S_la^*` (`[a_k, a_l] = 0`).
pub fn validate_rows(rows: &TransformRows, tol: f64) -> Result<ValidationReport> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::InvalidValue(format!(
            "tolerance must be positive, got {tol}"
        )));
    }

    let norm_residual = |s: &[Complex64], t: &[Complex64]| -> f64 {
        let total: f64 = s
            .iter()
            .zip(t)
            .map(|(si, ti)| si.norm_sqr() - ti.norm_sqr())
            .sum();
        (total - 1.0).abs()
    };
    let normalization =
        norm_residual(&rows.s_k, &rows.t_k).max(norm_residual(&rows.s_l, &rows.t_l));

    let mut cross = Complex64::ZERO;
    let mut sym = Complex64::ZERO;
    for a in 0..rows.len() {
        cross += rows.s_k[a].conj() * rows.s_l[a] - rows.t_k[a] * rows.t_l[a].conj();
        sym += rows.t_l[a] * rows.s_k[a].conj() - rows.t_k[a] * rows.s_l[a].conj();
    }

    let make = |name: &'static str, residual: f64| ConstraintCheck {
        name,
        residual,
        pass: residual <= tol,
    };
    Ok(ValidationReport {
        tol,
        checks: vec![
            make("normalization", normalization),
            make("cross-orthogonality", cross.norm()),
            make("symmetry", sym.norm()),
        ],
    })
}

fn check_len(len: usize, expected: usize) -> Result<()> {
    if len != expected {
        return Err(Error::LengthMismatch {
            left: expected,
            right: len,
        });
    }
    Ok(())
}

/// Thermal inner product `<X|Y> = sum_a coth(beta*omega_a/2) X_a^* Y_a`.
///
/// Conjugate-symmetric, and `<X|X>` is real and at least the plain squared
/// norm of `X` (every weight is >= 1).
pub fn thermal_inner_product(
    x: &[Complex64],
    y: &[Complex64],
    spectrum: &ModeSpectrum,
    temp: Temperature,
) -> Result<Complex64> {
    check_len(x.len(), spectrum.len())?;
    check_len(y.len(), spectrum.len())?;
    Ok(spectrum
        .frequencies()
        .iter()
        .zip(x.iter().zip(y))
        .map(|(&w, (xi, yi))| temp.weight(w) * xi.conj() * yi)
        .sum())
}

/// Residual inner product `(X|Y) = sum_a (coth(beta*omega_a/2) - 1) X_a^* Y_a`,
/// the thermal excess over the vacuum contribution. All weights are
/// nonnegative, so `(X|X) >= 0`; at `t = 0` the product vanishes identically.
pub fn residual_inner_product(
    x: &[Complex64],
    y: &[Complex64],
    spectrum: &ModeSpectrum,
    temp: Temperature,
) -> Result<Complex64> {
    check_len(x.len(), spectrum.len())?;
    check_len(y.len(), spectrum.len())?;
    Ok(spectrum
        .frequencies()
        .iter()
        .zip(x.iter().zip(y))
        .map(|(&w, (xi, yi))| temp.excess_weight(w) * xi.conj() * yi)
        .sum())
}

/// Assembles the thermal two-mode covariance of the modes defined by `rows`:
///
/// ```text
/// n_r = (<S_r|S_r> + <T_r|T_r>)/2,   m_r = -<S_r|T_r>,
/// m_s = (<S_k|S_l> + <T_l|T_k>)/2,   m_c = -(<S_k|T_l> + <S_l|T_k>)/2.
/// ```
///
/// The rows must satisfy the commutation constraints at
/// [`DEFAULT_VALIDATION_TOL`]; otherwise the validation report is returned as
/// an error.
pub fn pair_covariance(
    rows: &TransformRows,
    spectrum: &ModeSpectrum,
    temp: Temperature,
) -> Result<TwoModeCovariance> {
    check_len(rows.len(), spectrum.len())?;
    let report = validate_rows(rows, DEFAULT_VALIDATION_TOL)?;
    if !report.pass() {
        return Err(Error::InvalidRows(report));
    }

    let weights: Vec<f64> = spectrum
        .frequencies()
        .iter()
        .map(|&w| temp.weight(w))
        .collect();
    let dot = |x: &[Complex64], y: &[Complex64]| -> Complex64 {
        weights
            .iter()
            .zip(x.iter().zip(y))
            .map(|(&w, (xi, yi))| w * xi.conj() * yi)
            .sum()
    };
    let occupation = |s: &[Complex64], t: &[Complex64]| -> f64 {
        0.5 * weights
            .iter()
            .zip(s.iter().zip(t))
            .map(|(&w, (si, ti))| w * (si.norm_sqr() + ti.norm_sqr()))
            .sum::<f64>()
    };

    let n1 = occupation(&rows.s_k, &rows.t_k);
    let n2 = occupation(&rows.s_l, &rows.t_l);
    let m1 = -dot(&rows.s_k, &rows.t_k);
    let m2 = -dot(&rows.s_l, &rows.t_l);
    let ms = 0.5 * (dot(&rows.s_k, &rows.s_l) + dot(&rows.t_l, &rows.t_k));
    let mc = -0.5 * (dot(&rows.s_k, &rows.t_l) + dot(&rows.s_l, &rows.t_k));
    Ok(TwoModeCovariance::new(n1, n2, m1, m2, ms, mc))
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    const COTH_1: f64 = 1.3130352854993313;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cr(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    /* coupled-oscillator rows at omega = 2, built by hand from
    xi_pm = (sqrt(1/omega) +- sqrt(omega))/2 */
    fn oscillator_rows() -> TransformRows {
        let omega: f64 = 2.0;
        let xp = 0.5 * (omega.sqrt().recip() + omega.sqrt());
        let xm = 0.5 * (omega.sqrt().recip() - omega.sqrt());
        let r = std::f64::consts::FRAC_1_SQRT_2;
        TransformRows::new(
            vec![cr(r), cr(r * xp)],
            vec![cr(0.0), cr(r * xm)],
            vec![cr(r), cr(-r * xp)],
            vec![cr(0.0), cr(-r * xm)],
        )
        .unwrap()
    }

    fn identity_rows() -> TransformRows {
        TransformRows::new(
            vec![cr(1.0), cr(0.0)],
            vec![cr(0.0), cr(0.0)],
            vec![cr(0.0), cr(1.0)],
            vec![cr(0.0), cr(0.0)],
        )
        .unwrap()
    }

    #[test]
    fn spectrum_rejects_bad_frequencies() {
        assert!(ModeSpectrum::new(vec![]).is_err());
        assert!(ModeSpectrum::new(vec![1.0, 0.0]).is_err());
        assert!(ModeSpectrum::new(vec![-2.0]).is_err());
        assert!(ModeSpectrum::new(vec![f64::NAN]).is_err());
        assert_eq!(ModeSpectrum::new(vec![1.0, 2.0]).unwrap().len(), 2);
    }

    #[test]
    fn temperature_rejects_bad_values() {
        assert!(Temperature::new(-0.1).is_err());
        assert!(Temperature::new(f64::NAN).is_err());
        assert!(Temperature::new(f64::INFINITY).is_err());
        assert_eq!(Temperature::new(0.0).unwrap(), Temperature::zero());
    }

    #[test]
    fn zero_temperature_weights_are_exact() {
        let t = Temperature::zero();
        assert_eq!(t.weight(0.3), 1.0);
        assert_eq!(t.weight(17.0), 1.0);
        assert_eq!(t.excess_weight(0.3), 0.0);
        assert!(t.beta().is_infinite());
    }

    #[test]
    fn weight_matches_coth() {
        // coth(1) at beta*omega = 2 (branch x > 1)
        let t = Temperature::new(0.5).unwrap();
        assert_relative_eq!(t.weight(1.0), COTH_1, max_relative = 1e-15);
        // coth(1/2) at beta*omega = 1 (direct ratio branch)
        let t = Temperature::new(1.0).unwrap();
        assert_relative_eq!(t.weight(1.0), 2.1639534137386529, max_relative = 1e-15);
    }

    #[test]
    fn weight_branches_agree_near_crossover() {
        let t = Temperature::new(1.0).unwrap();
        for x in [0.5, 0.9, 0.999, 1.0, 1.001, 1.1, 3.0] {
            let direct = (x / 2.0_f64).tanh().recip();
            let shifted = 1.0 + 2.0 / x.exp_m1();
            assert_relative_eq!(direct, shifted, max_relative = 1e-13);
            assert_relative_eq!(t.weight(x), direct, max_relative = 1e-13);
        }
    }

    #[test]
    fn excess_weight_survives_underflow_range() {
        // beta*omega = 50: coth - 1 ~ 4e-22 underflows against 1 but the
        // residual form keeps it.
        let t = Temperature::new(0.1).unwrap();
        let e = t.excess_weight(5.0);
        assert!(e > 0.0 && e < 1e-20);
        assert_eq!(t.weight(5.0), 1.0 + e);
    }

    #[test]
    fn thermal_product_examples() {
        let spectrum = ModeSpectrum::new(vec![1.0]).unwrap();
        let e1 = vec![cr(1.0)];
        let got = thermal_inner_product(&e1, &e1, &spectrum, Temperature::zero()).unwrap();
        assert_eq!(got, cr(1.0));
        let got =
            thermal_inner_product(&e1, &e1, &spectrum, Temperature::new(0.5).unwrap()).unwrap();
        assert_relative_eq!(got.re, COTH_1, max_relative = 1e-15);
        assert_eq!(got.im, 0.0);

        let spectrum = ModeSpectrum::new(vec![1.0, 3.0]).unwrap();
        let e1 = vec![cr(1.0), cr(0.0)];
        let e2 = vec![cr(0.0), cr(1.0)];
        let got =
            thermal_inner_product(&e1, &e2, &spectrum, Temperature::new(2.0).unwrap()).unwrap();
        assert_eq!(got, Complex64::ZERO);
    }

    #[test]
    fn thermal_product_is_conjugate_symmetric_and_dominates_norm() {
        use rand::{rngs::StdRng, Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        let spectrum = ModeSpectrum::new(vec![0.4, 1.0, 2.7]).unwrap();
        let temp = Temperature::new(1.3).unwrap();
        for _ in 0..50 {
            let draw = |rng: &mut StdRng| -> Vec<Complex64> {
                (0..3)
                    .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                    .collect()
            };
            let x = draw(&mut rng);
            let y = draw(&mut rng);
            let xy = thermal_inner_product(&x, &y, &spectrum, temp).unwrap();
            let yx = thermal_inner_product(&y, &x, &spectrum, temp).unwrap();
            assert_abs_diff_eq!(xy.re, yx.conj().re, epsilon = 1e-12);
            assert_abs_diff_eq!(xy.im, yx.conj().im, epsilon = 1e-12);
            let xx = thermal_inner_product(&x, &x, &spectrum, temp).unwrap();
            let plain: f64 = x.iter().map(|v| v.norm_sqr()).sum();
            assert!(xx.im.abs() < 1e-14);
            assert!(xx.re >= plain - 1e-12);
        }
    }

    #[test]
    fn residual_product_examples() {
        let spectrum = ModeSpectrum::new(vec![1.0]).unwrap();
        let e1 = vec![cr(1.0)];
        let got = residual_inner_product(&e1, &e1, &spectrum, Temperature::zero()).unwrap();
        assert_eq!(got, Complex64::ZERO);
        let got =
            residual_inner_product(&e1, &e1, &spectrum, Temperature::new(0.5).unwrap()).unwrap();
        assert_relative_eq!(got.re, COTH_1 - 1.0, max_relative = 1e-14);
    }

    #[test]
    fn inner_products_reject_mismatched_lengths() {
        let spectrum = ModeSpectrum::new(vec![1.0, 2.0]).unwrap();
        let short = vec![cr(1.0)];
        let long = vec![cr(1.0), cr(0.0)];
        let err = thermal_inner_product(&short, &long, &spectrum, Temperature::zero());
        assert!(matches!(err, Err(Error::LengthMismatch { .. })));
        let err = residual_inner_product(&long, &short, &spectrum, Temperature::zero());
        assert!(matches!(err, Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn rows_constructor_checks_lengths() {
        let err = TransformRows::new(
            vec![cr(1.0)],
            vec![cr(0.0), cr(0.0)],
            vec![cr(0.0)],
            vec![cr(0.0)],
        );
        assert!(matches!(
            err,
            Err(Error::LengthMismatch { left: 1, right: 2 })
        ));
        assert!(TransformRows::new(vec![], vec![], vec![], vec![]).is_err());
    }

    #[test]
    fn oscillator_rows_validate_tightly() {
        let report = validate_rows(&oscillator_rows(), 1e-12).unwrap();
        assert!(report.pass(), "{report}");
    }

    #[test]
    fn identity_rows_validate() {
        assert!(validate_rows(&identity_rows(), 1e-12).unwrap().pass());
    }

    #[test]
    fn short_row_fails_normalization_with_named_residual() {
        let rows = TransformRows::new(
            vec![cr(0.9), cr(0.0)],
            vec![cr(0.0), cr(0.0)],
            vec![cr(0.0), cr(1.0)],
            vec![cr(0.0), cr(0.0)],
        )
        .unwrap();
        let report = validate_rows(&rows, 1e-10).unwrap();
        assert!(!report.pass());
        let norm = report
            .checks
            .iter()
            .find(|c| c.name == "normalization")
            .unwrap();
        assert!(!norm.pass);
        assert_relative_eq!(norm.residual, 0.19, max_relative = 1e-12);
        for other in &report.checks {
            if other.name != "normalization" {
                assert!(other.pass, "{other:?}");
            }
        }
        assert!(format!("{report}").contains("normalization"));
    }

    #[test]
    fn cross_orthogonality_uses_commutator_form() {
        // For complex rows the residual sum S_ka^* S_la - T_ka T_la^* differs from
        // the variant with the conjugation on the other S factor; rows with
        // S_l = i S_k, T_l = i T_k separate the two forms cleanly.
        let s_k = vec![c(0.8, 0.3), c(0.5, -0.2), cr(0.9)];
        let t_k = vec![c(0.1, 0.4), c(-0.3, 0.2), c(0.2, -0.5)];
        let i = Complex64::I;
        let s_l: Vec<_> = s_k.iter().map(|z| i * z).collect();
        let t_l: Vec<_> = t_k.iter().map(|z| i * z).collect();
        let cross: Complex64 = (0..3)
            .map(|a| s_k[a].conj() * s_l[a] - t_k[a] * t_l[a].conj())
            .sum();
        let conjugated: Complex64 = (0..3)
            .map(|a| s_k[a] * s_l[a].conj() - t_k[a] * t_l[a].conj())
            .sum();
        // the two forms genuinely differ for complex data
        assert!((cross - conjugated).norm() > 0.1);
        let rows = TransformRows::new(s_k, t_k, s_l, t_l).unwrap();
        let report = validate_rows(&rows, 1e-10).unwrap();
        let check = report
            .checks
            .iter()
            .find(|c| c.name == "cross-orthogonality")
            .unwrap();
        assert_relative_eq!(check.residual, cross.norm(), max_relative = 1e-12);
    }

    #[test]
    fn pair_covariance_matches_oscillator_closed_form() {
        // frozen: u = coth(1/2), v = coth(1), a = 5v/4, b = -3v/4 at omega = 2, T = 1
        let m = pair_covariance(
            &oscillator_rows(),
            &ModeSpectrum::new(vec![1.0, 2.0]).unwrap(),
            Temperature::new(1.0).unwrap(),
        )
        .unwrap();
        assert_relative_eq!(m.n1(), 0.95131188015320424, max_relative = 1e-13);
        assert_relative_eq!(m.n2(), 0.95131188015320424, max_relative = 1e-13);
        assert_relative_eq!(m.m1().re, 0.24619411603112462, max_relative = 1e-13);
        assert_relative_eq!(m.m2().re, 0.24619411603112462, max_relative = 1e-13);
        assert_relative_eq!(m.ms().re, 0.13066482671612218, max_relative = 1e-12);
        assert_relative_eq!(m.mc().re, -0.24619411603112462, max_relative = 1e-13);
        for v in [m.m1(), m.m2(), m.ms(), m.mc()] {
            assert_eq!(v.im, 0.0);
        }
    }

    #[test]
    fn identity_rows_give_vacuum_at_zero_temperature() {
        let m = pair_covariance(
            &identity_rows(),
            &ModeSpectrum::new(vec![1.0, 1.0]).unwrap(),
            Temperature::zero(),
        )
        .unwrap();
        assert_eq!(m.n1(), 0.5);
        assert_eq!(m.n2(), 0.5);
        assert_eq!(m.m1(), Complex64::ZERO);
        assert_eq!(m.m2(), Complex64::ZERO);
        assert_eq!(m.ms(), Complex64::ZERO);
        assert_eq!(m.mc(), Complex64::ZERO);
    }

    #[test]
    fn identity_rows_thermal_occupation() {
        let m = pair_covariance(
            &identity_rows(),
            &ModeSpectrum::new(vec![1.0, 1.0]).unwrap(),
            Temperature::new(0.5).unwrap(),
        )
        .unwrap();
        assert_relative_eq!(m.n1(), COTH_1 / 2.0, max_relative = 1e-15);
        assert_relative_eq!(m.n2(), COTH_1 / 2.0, max_relative = 1e-15);
        assert_eq!(m.ms(), Complex64::ZERO);
    }

    #[test]
    fn pair_covariance_rejects_invalid_rows() {
        let rows = TransformRows::new(
            vec![cr(0.9), cr(0.0)],
            vec![cr(0.0), cr(0.0)],
            vec![cr(0.0), cr(1.0)],
            vec![cr(0.0), cr(0.0)],
        )
        .unwrap();
        let err = pair_covariance(
            &rows,
            &ModeSpectrum::new(vec![1.0, 2.0]).unwrap(),
            Temperature::new(1.0).unwrap(),
        );
        match err {
            Err(Error::InvalidRows(report)) => assert!(!report.pass()),
            other => panic!("expected InvalidRows, got {other:?}"),
        }
    }

    #[test]
    fn pair_covariance_rejects_spectrum_mismatch() {
        let err = pair_covariance(
            &oscillator_rows(),
            &ModeSpectrum::new(vec![1.0, 2.0, 3.0]).unwrap(),
            Temperature::zero(),
        );
        assert!(matches!(err, Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn occupation_is_monotone_in_temperature() {
        let rows = oscillator_rows();
        let spectrum = ModeSpectrum::new(vec![1.0, 2.0]).unwrap();
        let mut last = f64::NEG_INFINITY;
        for t in [0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0] {
            let m = pair_covariance(&rows, &spectrum, Temperature::new(t).unwrap()).unwrap();
            assert!(m.n1() >= last, "n1 decreased at T = {t}");
            assert!(m.n1() >= 0.5 - 1e-12);
            last = m.n1();
        }
    }

    proptest! {
        #[test]
        fn weight_is_at_least_one_and_decreasing(x in 1e-3f64..60.0, step in 1e-3f64..5.0) {
            let t = Temperature::new(1.0).unwrap();
            let w1 = t.weight(x);
            let w2 = t.weight(x + step);
            prop_assert!(w1 >= 1.0);
            prop_assert!(w2 >= 1.0);
            prop_assert!(w2 <= w1 + 1e-15);
        }

        #[test]
        fn excess_matches_weight(x in 1e-3f64..60.0) {
            let t = Temperature::new(1.0).unwrap();
            let diff = (t.weight(x) - 1.0 - t.excess_weight(x)).abs();
            // once the excess drops to a few ulps of 1, weight - 1 only
            // retains it up to the quantization of weight itself
            if t.excess_weight(x) > 1e-14 {
                prop_assert!(diff <= 1e-13 * t.weight(x));
            } else {
                prop_assert!(diff <= f64::EPSILON);
            }
        }
    }
}
