use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Two-mode covariance matrix in the complex parameterization
///
/// ```text
///     | n1   m1   ms   mc  |
/// M = | m1*  n1   mc*  ms* |
///     | ms*  mc   n2   m2  |
///     | mc*  ms   m2*  n2  |
/// ```
///
/// `M` is Hermitian for any parameter values; positivity and `n >= 1/2` hold
/// for thermally derived states and can be checked with [`Self::is_physical`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeCovariance {
    n1: f64,
    n2: f64,
    m1: Complex64,
    m2: Complex64,
    ms: Complex64,
    mc: Complex64,
}

impl TwoModeCovariance {
    pub fn new(
        n1: f64,
        n2: f64,
        m1: Complex64,
        m2: Complex64,
        ms: Complex64,
        mc: Complex64,
    ) -> Self {
        Self {
            n1,
            n2,
            m1,
            m2,
            ms,
            mc,
        }
    }

    pub fn n1(&self) -> f64 {
        self.n1
    }

    pub fn n2(&self) -> f64 {
        self.n2
    }

    pub fn m1(&self) -> Complex64 {
        self.m1
    }

    pub fn m2(&self) -> Complex64 {
        self.m2
    }

    pub fn ms(&self) -> Complex64 {
        self.ms
    }

    pub fn mc(&self) -> Complex64 {
        self.mc
    }

    pub fn matrix(&self) -> Matrix4<Complex64> {
        let r = |x: f64| Complex64::new(x, 0.0);
        Matrix4::new(
            r(self.n1),
            self.m1,
            self.ms,
            self.mc,
            self.m1.conj(),
            r(self.n1),
            self.mc.conj(),
            self.ms.conj(),
            self.ms.conj(),
            self.mc,
            r(self.n2),
            self.m2,
            self.mc.conj(),
            self.ms,
            self.m2.conj(),
            r(self.n2),
        )
    }

    /// Upper-left mode block `[[n1, m1], [m1*, n1]]`.
    pub fn alpha_block(&self) -> Matrix2<Complex64> {
        let r = |x: f64| Complex64::new(x, 0.0);
        Matrix2::new(r(self.n1), self.m1, self.m1.conj(), r(self.n1))
    }

    /// Lower-right mode block `[[n2, m2], [m2*, n2]]`.
    pub fn beta_block(&self) -> Matrix2<Complex64> {
        let r = |x: f64| Complex64::new(x, 0.0);
        Matrix2::new(r(self.n2), self.m2, self.m2.conj(), r(self.n2))
    }

    /// Off-diagonal correlation block `[[ms, mc], [mc*, ms*]]`.
    pub fn gamma_block(&self) -> Matrix2<Complex64> {
        Matrix2::new(self.ms, self.mc, self.mc.conj(), self.ms)
    }

    /// Smallest eigenvalue of the (Hermitian) covariance matrix.
    pub fn min_eigenvalue(&self) -> f64 {
        self.matrix().symmetric_eigen().eigenvalues.min()
    }

    /// Positive semidefinite within `tol` and both occupations at least 1/2.
    pub fn is_physical(&self, tol: f64) -> bool {
        self.n1 >= 0.5 - tol && self.n2 >= 0.5 - tol && self.min_eigenvalue() >= -tol
    }

    /// Largest absolute difference over the six parameters.
    pub fn max_abs_difference(&self, other: &Self) -> f64 {
        [
            (self.n1 - other.n1).abs(),
            (self.n2 - other.n2).abs(),
            (self.m1 - other.m1).norm(),
            (self.m2 - other.m2).norm(),
            (self.ms - other.ms).norm(),
            (self.mc - other.mc).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

impl std::fmt::Display for TwoModeCovariance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "n1 = {:.16e}  n2 = {:.16e}", self.n1, self.n2)?;
        writeln!(f, "m1 = {:.16e} {:+.16e}i", self.m1.re, self.m1.im)?;
        writeln!(f, "m2 = {:.16e} {:+.16e}i", self.m2.re, self.m2.im)?;
        writeln!(f, "ms = {:.16e} {:+.16e}i", self.ms.re, self.ms.im)?;
        write!(f, "mc = {:.16e} {:+.16e}i", self.mc.re, self.mc.im)
    }
}

/// Real symmetric covariance of the quadratures `(x1, p1, x2, p2)` with
/// `x_r = (a_r + a_r^dag)/sqrt(2)`, `p_r = i(a_r^dag - a_r)/sqrt(2)`.
/// The vacuum gives the identity in this convention.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureCovariance {
    gamma: Matrix4<f64>,
}

impl QuadratureCovariance {
    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.gamma
    }

    pub fn determinant(&self) -> f64 {
        self.gamma.determinant()
    }

    /// Heisenberg physicality `Gamma + iJ >= 0`, with `J` the symplectic form
    /// made of `[[0, 1], [-1, 0]]` blocks.
    pub fn is_physical(&self, tol: f64) -> bool {
        let mut h = self.gamma.map(|x| Complex64::new(x, 0.0));
        let i = Complex64::I;
        h[(0, 1)] += i;
        h[(1, 0)] -= i;
        h[(2, 3)] += i;
        h[(3, 2)] -= i;
        h.symmetric_eigen().eigenvalues.min() >= -tol
    }
}

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/* block-diagonal embeddings of Q = [[-1, 1], [i, i]]/sqrt(2) and Q' = Q^dag */
fn q_full() -> Matrix4<Complex64> {
    let z = Complex64::ZERO;
    let m = Complex64::new(-FRAC_1_SQRT_2, 0.0);
    let p = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let i = Complex64::new(0.0, FRAC_1_SQRT_2);
    Matrix4::new(m, p, z, z, i, i, z, z, z, z, m, p, z, z, i, i)
}

fn q_prime_full() -> Matrix4<Complex64> {
    let z = Complex64::ZERO;
    let m = Complex64::new(-FRAC_1_SQRT_2, 0.0);
    let p = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let ni = Complex64::new(0.0, -FRAC_1_SQRT_2);
    Matrix4::new(m, ni, z, z, p, ni, z, z, z, z, m, ni, z, z, p, ni)
}

/// Converts the complex covariance to quadrature form,
/// `Gamma = 2 (Q + Q) M (Q' + Q')` with the block-diagonal `Q` embeddings.
///
/// The product is real and symmetric for every matrix in this
/// parameterization; residues above `1e-12` (relative to the matrix scale)
/// signal a malformed input and are reported as errors. Residues below that
/// are discarded and the result symmetrized.
pub fn to_quadrature(m: &TwoModeCovariance) -> Result<QuadratureCovariance> {
    let g = (q_full() * m.matrix() * q_prime_full()) * Complex64::new(2.0, 0.0);
    if !g.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::UnphysicalCovariance(
            "covariance entries must be finite".into(),
        ));
    }
    let scale = g.iter().fold(1.0_f64, |acc, z| acc.max(z.norm()));
    let tol = 1e-12 * scale;

    let max_imag = g.iter().fold(0.0_f64, |acc, z| acc.max(z.im.abs()));
    if max_imag > tol {
        return Err(Error::ImaginaryResidue(max_imag));
    }
    let re = g.map(|z| z.re);
    let asym = (re - re.transpose())
        .iter()
        .fold(0.0_f64, |acc, x| acc.max(x.abs()));
    if asym > tol {
        return Err(Error::UnphysicalCovariance(format!(
            "quadrature matrix asymmetry {asym:.3e} exceeds tolerance"
        )));
    }
    Ok(QuadratureCovariance {
        gamma: (re + re.transpose()) * 0.5,
    })
}

/// The determinants of the blocks of `M` and of `M` itself. All four are real:
/// `det alpha = n1^2 - |m1|^2`, `det beta = n2^2 - |m2|^2`,
/// `det gamma = |ms|^2 - |mc|^2`, and `det M` by the Hermitian structure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticInvariants {
    pub det_alpha: f64,
    pub det_beta: f64,
    pub det_gamma: f64,
    pub det_m: f64,
}

impl SymplecticInvariants {
    /// Symmetric-state predicate `det alpha = det beta` within `tol`.
    pub fn is_symmetric(&self, tol: f64) -> bool {
        (self.det_alpha - self.det_beta).abs() <= tol * self.det_alpha.abs().max(1.0)
    }
}

pub fn symplectic_invariants(m: &TwoModeCovariance) -> SymplecticInvariants {
    SymplecticInvariants {
        det_alpha: m.n1() * m.n1() - m.m1().norm_sqr(),
        det_beta: m.n2() * m.n2() - m.m2().norm_sqr(),
        det_gamma: m.ms().norm_sqr() - m.mc().norm_sqr(),
        det_m: m.matrix().determinant().re,
    }
}

/// Symmetric-state normal form of the quadrature covariance,
///
/// ```text
///         | n   0   kx   0  |
/// Gamma = | 0   n   0   -kp |
///         | kx  0   n    0  |
///         | 0  -kp  0    n  |
/// ```
///
/// with `kx >= kp >= 0`, reachable by local symplectic transformations that do
/// not change entanglement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalForm {
    n: f64,
    kx: f64,
    kp: f64,
}

impl NormalForm {
    pub fn new(n: f64, kx: f64, kp: f64) -> Result<Self> {
        if !n.is_finite() || n <= 0.0 {
            return Err(Error::InvalidValue(format!(
                "normal form requires n > 0, got {n}"
            )));
        }
        if !(kx >= kp && kp >= 0.0) {
            return Err(Error::InvalidValue(format!(
                "normal form requires kx >= kp >= 0, got kx = {kx}, kp = {kp}"
            )));
        }
        Ok(Self { n, kx, kp })
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn kx(&self) -> f64 {
        self.kx
    }

    pub fn kp(&self) -> f64 {
        self.kp
    }

    /// The entanglement discriminant `delta = sqrt((n - kx)(n - kp))`.
    pub fn delta(&self) -> f64 {
        ((self.n - self.kx) * (self.n - self.kp)).max(0.0).sqrt()
    }
}

/// Solves for the normal form from the symplectic invariants:
/// `n^2 = 4 det alpha`, `kx kp = 4 |det gamma|`,
/// `(n^2 - kx^2)(n^2 - kp^2) = 16 det M`.
///
/// Only symmetric states (`det alpha = det beta` within `tol`) are supported.
/// `kx^2` is the larger root of `t^2 - s t + P^2` with
/// `s = (n^4 + P^2 - D)/n^2`; `kp` is recovered as `P/kx`, which keeps the
/// product invariant exact even when `det gamma` is nearly zero. Small
/// negative intermediates (rounding on physical inputs) are clamped; beyond
/// `-tol` they are unphysical-covariance errors.
///
/// Accuracy note: the determinants pin down `(kx - kp)^2` only to absolute
/// rounding noise of order `1e-16`, so for near-pure states with `kx ~ kp`
/// the individual `kx` and `kp` carry errors up to `~1e-16 / (kx - kp)`.
/// `n`, `kx + kp`, `kx * kp` and [`NormalForm::delta`] do not suffer from
/// this cancellation and stay accurate to machine precision.
pub fn normal_form(m: &TwoModeCovariance, tol: f64) -> Result<NormalForm> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::InvalidValue(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let inv = symplectic_invariants(m);
    if !inv.is_symmetric(tol) {
        return Err(Error::NonSymmetricState(
            (inv.det_alpha - inv.det_beta).abs(),
        ));
    }
    if inv.det_alpha <= 0.0 {
        return Err(Error::UnphysicalCovariance(format!(
            "det alpha = {:.3e} must be positive",
            inv.det_alpha
        )));
    }

    let n_sq = 4.0 * inv.det_alpha;
    let n = n_sq.sqrt();
    let p = 4.0 * inv.det_gamma.abs();
    let d = 16.0 * inv.det_m;

    let s = (n_sq * n_sq + p * p - d) / n_sq;
    if s < -tol * n_sq.max(1.0) {
        return Err(Error::UnphysicalCovariance(format!(
            "kx^2 + kp^2 = {s:.3e} is negative"
        )));
    }
    let half = (s / 2.0).max(0.0);
    let disc = half * half - p * p;
    if disc < -tol * (half * half).max(1.0) {
        return Err(Error::UnphysicalCovariance(format!(
            "negative discriminant {disc:.3e} in the normal-form quadratic"
        )));
    }
    let kx = (half + disc.max(0.0).sqrt()).sqrt();
    let kp = if kx > 0.0 { (p / kx).min(kx) } else { 0.0 };
    Ok(NormalForm { n, kx, kp })
}

const STANDARD_FORM_TOL: f64 = 1e-10;
const SEPARABILITY_GRACE: f64 = 1e-12;

/// Separability test for standard-form covariances (`m1 = m2 = mc = 0`):
/// separable iff `n1 >= 1/2` and `(n1 - 1/2)(n2 - 1/2) >= |ms|^2`.
///
/// Inputs outside standard form are refused (the criterion is only valid for
/// that class). Both inequalities carry a `1e-12` grace so that states sitting
/// exactly on the boundary are not misclassified by rounding.
pub fn separability_standard_form(m: &TwoModeCovariance) -> Result<bool> {
    for (entry, value) in [("m1", m.m1()), ("m2", m.m2()), ("mc", m.mc())] {
        if value.norm() > STANDARD_FORM_TOL {
            return Err(Error::NonStandardForm {
                entry,
                magnitude: value.norm(),
            });
        }
    }
    Ok(m.n1() >= 0.5 - SEPARABILITY_GRACE
        && (m.n1() - 0.5) * (m.n2() - 0.5) >= m.ms().norm_sqr() - SEPARABILITY_GRACE)
}

/// Entanglement of formation in ebits for a symmetric state in normal form:
/// `Delta = min(1, sqrt((n - kx)(n - kp)))`, `c_pm = (1 pm Delta)^2 / (4 Delta)`,
/// `E = c_+ log2 c_+ - c_- log2 c_-`.
///
/// Returns 0 exactly for `Delta` within `1e-12` of 1 (separable side included).
/// `delta -> 0` means diverging entanglement and is reported as out-of-domain.
pub fn entanglement_of_formation(nf: &NormalForm) -> Result<f64> {
    const TOL: f64 = 1e-12;
    let prod = (nf.n() - nf.kx()) * (nf.n() - nf.kp());
    if prod < -TOL {
        return Err(Error::UnphysicalCovariance(format!(
            "(n - kx)(n - kp) = {prod:.3e} is negative"
        )));
    }
    let delta = prod.max(0.0).sqrt();
    if delta >= 1.0 - TOL {
        return Ok(0.0);
    }
    if delta <= 0.0 {
        return Err(Error::OutOfDomain(
            "delta = 0: entanglement of formation diverges".into(),
        ));
    }
    Ok(ebits_from_delta(delta))
}

/// `c_+ log2 c_+ - c_- log2 c_-` for `delta` strictly inside (0, 1).
pub(crate) fn ebits_from_delta(delta: f64) -> f64 {
    let cp = (1.0 + delta) * (1.0 + delta) / (4.0 * delta);
    let cm = (1.0 - delta) * (1.0 - delta) / (4.0 * delta);
    cp * cp.log2() - cm * cm.log2()
}
