//! Brute-force check of the covariance construction in a truncated Fock
//! space. The thermal state of the eigenmodes is diagonal in the product
//! number basis, so second moments of the transformed modes reduce to
//! weighted sums over ladder-operator actions. Everything here is deliberately
//! independent of the inner-product route in [`crate::modes`].

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gaussian::TwoModeCovariance;
use crate::modes::{ModeSpectrum, Temperature, TransformRows};

const AUTO_BOUND_TARGET: f64 = 1e-12;
const MAX_MODES: usize = 4;
const MAX_CUTOFF: usize = 200;
const MAX_DIMENSION: usize = 2_000_000;

/// Per-mode occupation cutoff: each mode keeps the levels `0..=nmax`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockCutoff(usize);

impl FockCutoff {
    pub fn new(nmax: usize) -> Result<Self> {
        if nmax == 0 {
            return Err(Error::InvalidValue(
                "Fock cutoff must keep at least the levels 0 and 1".into(),
            ));
        }
        Ok(Self(nmax))
    }

    pub fn nmax(&self) -> usize {
        self.0
    }

    /// Worst-mode thermal weight remaining above the cutoff,
    /// `max_alpha e^(-beta omega_alpha nmax) / (1 - e^(-beta omega_alpha))`.
    /// Zero at zero temperature.
    pub fn truncation_bound(&self, spectrum: &ModeSpectrum, temperature: Temperature) -> f64 {
        if temperature.is_zero() {
            return 0.0;
        }
        spectrum
            .frequencies()
            .iter()
            .map(|&omega| {
                let q = temperature.boltzmann(omega);
                q.powi(self.0 as i32) / (1.0 - q)
            })
            .fold(0.0, f64::max)
    }

    /// Smallest cutoff whose truncation bound is below `1e-12`.
    pub fn auto(spectrum: &ModeSpectrum, temperature: Temperature) -> Result<Self> {
        if temperature.is_zero() {
            return Ok(Self(1));
        }
        for nmax in 1..=1_000_000 {
            let cutoff = Self(nmax);
            if cutoff.truncation_bound(spectrum, temperature) < AUTO_BOUND_TARGET {
                return Ok(cutoff);
            }
        }
        Err(Error::Convergence {
            what: "automatic Fock cutoff",
            iterations: 1_000_000,
        })
    }
}

/// Covariance reconstructed from Fock-space moments, along with the
/// truncation bound at the cutoff used and the largest first-moment magnitude
/// (which must vanish for number-diagonal states).
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub covariance: TwoModeCovariance,
    pub truncation_bound: f64,
    pub max_first_moment: f64,
}

struct Basis {
    per_mode: usize,
    strides: Vec<usize>,
    dim: usize,
}

impl Basis {
    fn new(modes: usize, nmax: usize) -> Option<Self> {
        let per_mode = nmax + 1;
        let mut strides = Vec::with_capacity(modes);
        let mut dim = 1usize;
        for _ in 0..modes {
            strides.push(dim);
            dim = dim.checked_mul(per_mode)?;
        }
        Some(Self {
            per_mode,
            strides,
            dim,
        })
    }

    fn digit(&self, idx: usize, mode: usize) -> usize {
        (idx / self.strides[mode]) % self.per_mode
    }
}

/// A linear combination `sum_alpha lower_alpha b_alpha + raise_alpha b_alpha^dag`.
struct Ladder {
    lower: Vec<Complex64>,
    raise: Vec<Complex64>,
}

impl Ladder {
    /// `out` receives the expansion of `op |idx>`; raising terms that leave
    /// the truncated space are dropped (that loss is what the truncation
    /// bound controls).
    fn apply(&self, basis: &Basis, idx: usize, out: &mut Vec<(usize, Complex64)>) {
        out.clear();
        for (mode, &stride) in basis.strides.iter().enumerate() {
            let n = basis.digit(idx, mode);
            let low = self.lower[mode];
            if n > 0 && low != Complex64::ZERO {
                out.push((idx - stride, low * (n as f64).sqrt()));
            }
            let raise = self.raise[mode];
            if n + 1 < basis.per_mode && raise != Complex64::ZERO {
                out.push((idx + stride, raise * ((n + 1) as f64).sqrt()));
            }
        }
    }
}

/// `<X Y> = sum_j w_j <j| X Y |j>` over the number-diagonal state.
fn moment(basis: &Basis, weights: &[f64], x: &Ladder, y: &Ladder) -> Complex64 {
    let mut acc = Complex64::ZERO;
    let mut ybuf = Vec::new();
    let mut xbuf = Vec::new();
    for (j, &w) in weights.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        y.apply(basis, j, &mut ybuf);
        for &(i, ay) in &ybuf {
            x.apply(basis, i, &mut xbuf);
            for &(r, ax) in &xbuf {
                if r == j {
                    acc += w * ay * ax;
                }
            }
        }
    }
    acc
}

fn first_moment(basis: &Basis, weights: &[f64], x: &Ladder) -> Complex64 {
    let mut acc = Complex64::ZERO;
    let mut buf = Vec::new();
    for (j, &w) in weights.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        x.apply(basis, j, &mut buf);
        for &(r, a) in &buf {
            if r == j {
                acc += w * a;
            }
        }
    }
    acc
}

/// Reconstructs the two-mode covariance by explicit moment sums in the
/// truncated product basis.
///
/// The state is the truncation-renormalized thermal state of the eigenmodes
/// (the exact ground state at zero temperature). Guards refuse more than 4
/// modes, cutoffs above 200, or product dimensions above two million.
pub fn oracle_pair_covariance(
    rows: &TransformRows,
    spectrum: &ModeSpectrum,
    temperature: Temperature,
    cutoff: FockCutoff,
) -> Result<OracleResult> {
    let modes = spectrum.len();
    if rows.len() != modes {
        return Err(Error::LengthMismatch {
            left: rows.len(),
            right: modes,
        });
    }
    if modes > MAX_MODES {
        return Err(Error::ResourceGuard(format!(
            "{modes} modes exceed the {MAX_MODES}-mode limit of the Fock oracle"
        )));
    }
    let nmax = cutoff.nmax();
    if nmax > MAX_CUTOFF {
        return Err(Error::ResourceGuard(format!(
            "cutoff {nmax} exceeds the limit of {MAX_CUTOFF}"
        )));
    }
    let basis = Basis::new(modes, nmax)
        .filter(|b| b.dim <= MAX_DIMENSION)
        .ok_or_else(|| {
            Error::ResourceGuard(format!(
                "basis dimension ({}+1)^{modes} exceeds the limit of {MAX_DIMENSION}",
                nmax
            ))
        })?;

    let tables: Vec<Vec<f64>> = spectrum
        .frequencies()
        .iter()
        .map(|&omega| {
            if temperature.is_zero() {
                let mut w = vec![0.0; basis.per_mode];
                w[0] = 1.0;
                w
            } else {
                let q = temperature.boltzmann(omega);
                let norm = (1.0 - q) / (1.0 - q.powi(basis.per_mode as i32));
                (0..basis.per_mode)
                    .map(|k| norm * q.powi(k as i32))
                    .collect()
            }
        })
        .collect();
    let weights: Vec<f64> = (0..basis.dim)
        .map(|idx| (0..modes).map(|m| tables[m][basis.digit(idx, m)]).product())
        .collect();

    let conj_of = |v: &[Complex64]| v.iter().map(Complex64::conj).collect::<Vec<_>>();
    let a_k = Ladder {
        lower: conj_of(rows.s_k()),
        raise: rows.t_k().to_vec(),
    };
    let a_k_dag = Ladder {
        lower: conj_of(rows.t_k()),
        raise: rows.s_k().to_vec(),
    };
    let a_l = Ladder {
        lower: conj_of(rows.s_l()),
        raise: rows.t_l().to_vec(),
    };
    let a_l_dag = Ladder {
        lower: conj_of(rows.t_l()),
        raise: rows.s_l().to_vec(),
    };

    let sym = |x: &Ladder, y: &Ladder| {
        0.5 * (moment(&basis, &weights, x, y) + moment(&basis, &weights, y, x))
    };
    let n1c = sym(&a_k, &a_k_dag);
    let n2c = sym(&a_l, &a_l_dag);
    for value in [n1c, n2c] {
        if value.im.abs() > 1e-9 * value.norm().max(1.0) {
            return Err(Error::ImaginaryResidue(value.im));
        }
    }
    let ms = sym(&a_k, &a_l_dag);
    let mc = -sym(&a_k, &a_l);
    let m1 = -moment(&basis, &weights, &a_k, &a_k);
    let m2 = -moment(&basis, &weights, &a_l, &a_l);

    let max_first_moment = first_moment(&basis, &weights, &a_k)
        .norm()
        .max(first_moment(&basis, &weights, &a_l).norm());

    Ok(OracleResult {
        covariance: TwoModeCovariance::new(n1c.re, n2c.re, m1, m2, ms, mc),
        truncation_bound: cutoff.truncation_bound(spectrum, temperature),
        max_first_moment,
    })
}
