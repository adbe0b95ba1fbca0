//! Random mode systems for tests and property checks.
//!
//! Both row generators build mode `l` from mode `k` entrywise, using only
//! operations that preserve `|z|^2` bit for bit (sign flips, conjugation,
//! multiplication by a unit imaginary). Paired entries then cancel exactly in
//! the commutator sums, so the generated rows satisfy the constraints to
//! rounding and the two modes have bitwise-identical occupations, which the
//! symmetric-state normal form requires.

use num_complex::Complex64;
use rand::Rng;

use crate::modes::{ModeSpectrum, TransformRows};

/// Uniform eigenfrequencies in `[lo, hi]`. Panics unless `len >= 1` and
/// `0 < lo <= hi`.
pub fn random_spectrum<R: Rng>(rng: &mut R, len: usize, lo: f64, hi: f64) -> ModeSpectrum {
    assert!(len >= 1, "spectrum needs at least one mode");
    assert!(
        lo > 0.0 && lo <= hi,
        "frequency range must satisfy 0 < lo <= hi"
    );
    let frequencies = (0..len).map(|_| rng.random_range(lo..=hi)).collect();
    ModeSpectrum::new(frequencies).expect("sampled frequencies are positive")
}

/* |transform(z)|^2 equals |z|^2 bitwise: components are sign flips or swaps */
fn exact_magnitude_transform<R: Rng>(rng: &mut R, z: Complex64) -> Complex64 {
    match rng.random_range(0..5u8) {
        0 => Complex64::new(-z.re, -z.im),
        1 => Complex64::new(-z.im, z.re),
        2 => Complex64::new(z.im, -z.re),
        3 => Complex64::new(z.re, -z.im),
        _ => Complex64::new(-z.re, z.im),
    }
}

fn nonzero_complex<R: Rng>(rng: &mut R) -> Complex64 {
    loop {
        let z = Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0));
        if z.norm_sqr() >= 0.01 {
            return z;
        }
    }
}

/// Rows with `T = 0`: mode operators mix only annihilators, so the
/// transformed modes stay in a (correlated) thermal state with no squeezing
/// and the pair is separable at every temperature.
///
/// Entries come in index pairs sharing the exact magnitude; mode `l` takes
/// the pair with signs `(+, -)`, which makes the cross-orthogonality sum
/// cancel exactly. For odd `len` the last entry is zero in both modes.
/// Panics unless `len >= 2`.
pub fn vacuum_preserving_rows<R: Rng>(rng: &mut R, len: usize) -> TransformRows {
    assert!(len >= 2, "need at least two modes");
    let mut s_k = vec![Complex64::ZERO; len];
    let mut signs = vec![1.0f64; len];
    for j in 0..len / 2 {
        let scale = rng.random_range(0.3..=1.5);
        let c = nonzero_complex(rng) * scale;
        s_k[2 * j] = c;
        s_k[2 * j + 1] = exact_magnitude_transform(rng, c);
        signs[2 * j + 1] = -1.0;
    }

    let norm = s_k.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut s_k {
        *z = Complex64::new(z.re / norm, z.im / norm);
    }
    let s_l: Vec<Complex64> = s_k.iter().zip(&signs).map(|(&z, &e)| z * e).collect();
    let zeros = vec![Complex64::ZERO; len];
    TransformRows::new(s_k, zeros.clone(), s_l, zeros).expect("generated rows share their length")
}

/// Rows of a symmetric two-mode system with genuine squeezing (`T != 0`).
///
/// Within each index pair both `S` and `T` entries of the second index are
/// exact-magnitude transforms of the first, and mode `l` carries the signs
/// `(+, -)`, so `|S|^2 - |T|^2` cancels pairwise in the cross sum while the
/// occupations and `m` parameters of the two modes coincide bitwise. `T`
/// entries are kept below `0.8 |S|` so each pair contributes positively to
/// the normalization. For odd `len` the last entry is zero in both modes.
/// Panics unless `len >= 2`.
pub fn symmetric_rows<R: Rng>(rng: &mut R, len: usize) -> TransformRows {
    assert!(len >= 2, "need at least two modes");
    let mut s_k = vec![Complex64::ZERO; len];
    let mut t_k = vec![Complex64::ZERO; len];
    let mut signs = vec![1.0f64; len];
    for j in 0..len / 2 {
        let scale = rng.random_range(0.3..=1.5);
        let c = nonzero_complex(rng) * scale;
        let lambda = rng.random_range(0.0..0.8);
        let q = nonzero_complex(rng);
        let q = q * (lambda * c.norm() / q.norm());
        s_k[2 * j] = c;
        t_k[2 * j] = q;
        s_k[2 * j + 1] = exact_magnitude_transform(rng, c);
        t_k[2 * j + 1] = exact_magnitude_transform(rng, q);
        signs[2 * j + 1] = -1.0;
    }

    let norm = s_k
        .iter()
        .zip(&t_k)
        .map(|(s, t)| s.norm_sqr() - t.norm_sqr())
        .sum::<f64>()
        .sqrt();
    for z in s_k.iter_mut().chain(t_k.iter_mut()) {
        *z = Complex64::new(z.re / norm, z.im / norm);
    }
    let s_l: Vec<Complex64> = s_k.iter().zip(&signs).map(|(&z, &e)| z * e).collect();
    let t_l: Vec<Complex64> = t_k.iter().zip(&signs).map(|(&z, &e)| z * e).collect();
    TransformRows::new(s_k, t_k, s_l, t_l).expect("generated rows share their length")
}
