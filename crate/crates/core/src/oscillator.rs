//! The coupled-oscillator pair: two unit-frequency oscillators with a
//! bilinear coordinate coupling of strength omega0^2. Diagonalizing gives
//! eigenfrequencies 1 and omega = sqrt(1 + 2 omega0^2); the original
//! oscillator modes are Bogoliubov combinations of the two eigenmodes.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gaussian::{ebits_from_delta, entanglement_of_formation, normal_form};
use crate::modes::{
    pair_covariance, ModeSpectrum, Temperature, TransformRows, DEFAULT_VALIDATION_TOL,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairParams {
    omega: f64,
    temperature: Temperature,
}

impl PairParams {
    /// From the upper eigenfrequency `omega >= 1`.
    pub fn from_omega(omega: f64, temperature: Temperature) -> Result<Self> {
        if !omega.is_finite() || omega < 1.0 {
            return Err(Error::InvalidValue(format!(
                "eigenfrequency must satisfy omega >= 1, got {omega}"
            )));
        }
        Ok(Self { omega, temperature })
    }

    /// From the coupling strength `omega0 >= 0`, with `omega = sqrt(1 + 2 omega0^2)`.
    pub fn from_omega0(omega0: f64, temperature: Temperature) -> Result<Self> {
        if !omega0.is_finite() || omega0 < 0.0 {
            return Err(Error::InvalidValue(format!(
                "coupling must satisfy omega0 >= 0, got {omega0}"
            )));
        }
        Ok(Self {
            omega: (1.0 + 2.0 * omega0 * omega0).sqrt(),
            temperature,
        })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn omega0(&self) -> f64 {
        ((self.omega * self.omega - 1.0) / 2.0).max(0.0).sqrt()
    }

    pub fn temperature(&self) -> Temperature {
        self.temperature
    }
}

/// Eigenmode spectrum `{1, omega}` and the Bogoliubov rows of the two
/// oscillator modes: with `xi_pm = (sqrt(1/omega) pm sqrt(omega)) / 2`,
///
/// ```text
/// s_k = (1, xi+)/sqrt(2)   t_k = (0, xi-)/sqrt(2)
/// s_l = (1, -xi+)/sqrt(2)  t_l = (0, -xi-)/sqrt(2)
/// ```
pub fn build_pair(params: &PairParams) -> (ModeSpectrum, TransformRows) {
    let omega = params.omega();
    let xi_plus = 0.5 * ((1.0 / omega).sqrt() + omega.sqrt());
    let xi_minus = 0.5 * ((1.0 / omega).sqrt() - omega.sqrt());
    let r = |x: f64| Complex64::new(x * std::f64::consts::FRAC_1_SQRT_2, 0.0);

    let spectrum = ModeSpectrum::new(vec![1.0, omega]).expect("pair spectrum is valid");
    let rows = TransformRows::new(
        vec![r(1.0), r(xi_plus)],
        vec![r(0.0), r(xi_minus)],
        vec![r(1.0), r(-xi_plus)],
        vec![r(0.0), r(-xi_minus)],
    )
    .expect("pair rows share their length");
    (spectrum, rows)
}

/// Thermal factors of the pair: `u = coth(beta/2)`, `v = coth(beta omega/2)`,
/// `a = (1/omega + omega) v / 2`, `b = (1/omega - omega) v / 2`.
fn coth_factors(params: &PairParams) -> (f64, f64, f64, f64) {
    let omega = params.omega();
    let t = params.temperature();
    let u = t.weight(1.0);
    let v = t.weight(omega);
    let a = 0.5 * (1.0 / omega + omega) * v;
    let b = 0.5 * (1.0 / omega - omega) * v;
    (u, v, a, b)
}

/// The separability discriminant in closed form,
/// `delta^2 = coth(beta/2) coth(beta omega/2) / omega`.
/// The pair is entangled exactly when this is below 1.
pub fn delta_squared(params: &PairParams) -> f64 {
    let (u, v, _, _) = coth_factors(params);
    u * v / params.omega()
}

/// Entanglement of formation through the covariance pipeline:
/// rows -> thermal covariance -> normal form -> ebits.
pub fn entanglement(params: &PairParams) -> Result<f64> {
    let (spectrum, rows) = build_pair(params);
    let m = pair_covariance(&rows, &spectrum, params.temperature())?;
    let nf = normal_form(&m, DEFAULT_VALIDATION_TOL)?;
    entanglement_of_formation(&nf)
}

/// Entanglement of formation straight from the closed-form discriminant,
/// bypassing the covariance assembly. Agrees with [`entanglement`] to
/// rounding; separable parameters give exactly 0.
pub fn entanglement_closed_form(params: &PairParams) -> f64 {
    let delta = delta_squared(params).sqrt();
    if delta >= 1.0 - 1e-12 {
        0.0
    } else {
        ebits_from_delta(delta)
    }
}

/// Zero-temperature (maximal) entanglement,
/// `E = x log2 x - (x - 1) log2 (x - 1)` with `x = (1 + sqrt(omega))^2 / (4 sqrt(omega))`.
pub fn zero_temperature_entanglement(omega: f64) -> Result<f64> {
    if !omega.is_finite() || omega < 1.0 {
        return Err(Error::InvalidValue(format!(
            "eigenfrequency must satisfy omega >= 1, got {omega}"
        )));
    }
    // x - 1 = (1 - sqrt(omega))^2 / (4 sqrt(omega)); forming it directly
    // avoids the cancellation in x - 1 near omega = 1
    let root = omega.sqrt();
    let diff = 1.0 - root;
    let xm1 = diff * diff / (4.0 * root);
    if xm1 == 0.0 {
        return Ok(0.0);
    }
    let x = 1.0 + xm1;
    Ok(x * xm1.ln_1p() / std::f64::consts::LN_2 - xm1 * xm1.log2())
}

/// Temperature at which the pair stops being entangled, found by bisection on
/// `delta^2(T) = 1`. Stops once the residual `|delta^2 - 1|` drops below
/// `tol`; the returned temperature is then accurate to roughly `tol` divided
/// by the slope of `delta^2`.
pub fn threshold_temperature(omega: f64, tol: f64) -> Result<f64> {
    if !omega.is_finite() || omega < 1.0 {
        return Err(Error::InvalidValue(format!(
            "eigenfrequency must satisfy omega >= 1, got {omega}"
        )));
    }
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::InvalidValue(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if omega == 1.0 {
        // delta^2 = coth(beta/2)^2 >= 1 at every temperature
        return Err(Error::NoThreshold(omega));
    }

    let d2 = |t: f64| -> Result<f64> {
        let params = PairParams::from_omega(omega, Temperature::new(t)?)?;
        Ok(delta_squared(&params))
    };

    let mut lo = 0.0_f64;
    let mut hi = 1.0_f64;
    let mut doublings = 0usize;
    while d2(hi)? < 1.0 {
        hi *= 2.0;
        doublings += 1;
        if doublings > 200 {
            return Err(Error::Convergence {
                what: "threshold bracketing",
                iterations: doublings,
            });
        }
    }

    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let value = d2(mid)?;
        if (value - 1.0).abs() <= tol {
            return Ok(mid);
        }
        if value < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Convergence {
        what: "threshold bisection",
        iterations: 200,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoticRegime {
    /// `omega -> 1+`: `E ~ (1/(16 ln 2) + 1/4 - log2(omega - 1)/8) (omega - 1)^2`.
    Small,
    /// `omega -> inf`: `E ~ 1/ln 2 - 2 + log2(omega)/2`.
    Large,
}

/// Asymptotic forms of the zero-temperature entanglement. The large-omega
/// branch accepts any positive frequency but is only a useful approximation
/// well above omega = 1.
pub fn emax_asymptotic(omega: f64, regime: AsymptoticRegime) -> Result<f64> {
    let ln2 = std::f64::consts::LN_2;
    Ok(match regime {
        AsymptoticRegime::Small => {
            if !omega.is_finite() || omega < 1.0 {
                return Err(Error::InvalidValue(format!(
                    "small regime requires omega >= 1, got {omega}"
                )));
            }
            let eps = omega - 1.0;
            if eps == 0.0 {
                0.0
            } else {
                (1.0 / (16.0 * ln2) + 0.25 - eps.log2() / 8.0) * eps * eps
            }
        }
        AsymptoticRegime::Large => {
            if !omega.is_finite() || omega <= 0.0 {
                return Err(Error::InvalidValue(format!(
                    "large regime requires omega > 0, got {omega}"
                )));
            }
            1.0 / ln2 - 2.0 + omega.log2() / 2.0
        }
    })
}
