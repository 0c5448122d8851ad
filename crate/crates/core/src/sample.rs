//! Seeded random elements for property audits.
//!
//! Every audit in the crate and the CLI draws from `ChaCha8Rng` seeded with a
//! `u64`, so identical seeds reproduce identical elements on every platform.

use std::sync::Arc;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::AlgebraElement;
use crate::groupoid::{Arrow, FiniteTwistedGroupoid, PointId};
use crate::semicrossed::{CrossedElement, FiniteDynamicalSystem};

pub type AuditRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> AuditRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform on the square `[-1, 1] x [-1, 1]`.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0))
}

/// Like [`random_complex`] but bounded away from zero.
pub fn random_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    loop {
        let z = random_complex(rng);
        if z.norm() > 0.1 {
            return z;
        }
    }
}

/// Each arrow carries a random coefficient with probability `density`.
pub fn random_element<R: Rng + ?Sized>(
    g: &Arc<FiniteTwistedGroupoid>,
    rng: &mut R,
    density: f64,
) -> AlgebraElement {
    let coeffs: Vec<(Arrow, Complex64)> = g
        .arrows()
        .iter()
        .filter_map(|&a| rng.random_bool(density).then(|| (a, random_complex(rng))))
        .collect();
    AlgebraElement::from_coeffs(g, coeffs).expect("arrows come from the groupoid")
}

pub fn random_diagonal<R: Rng + ?Sized>(g: &Arc<FiniteTwistedGroupoid>, rng: &mut R) -> AlgebraElement {
    let values: Vec<Complex64> = g.units().points().map(|_| random_complex(rng)).collect();
    AlgebraElement::diagonal(g, |x| values[x.0])
}

/// A random nonzero element supported on a bisection: on each orbit a random
/// permutation restricted to a random subset of sources.
pub fn random_normalizer<R: Rng + ?Sized>(g: &Arc<FiniteTwistedGroupoid>, rng: &mut R) -> AlgebraElement {
    let mut coeffs = Vec::new();
    for orbit in g.orbits() {
        let mut targets = orbit.clone();
        targets.shuffle(rng);
        for (&src, &dst) in orbit.iter().zip(&targets) {
            if rng.random_bool(0.6) {
                coeffs.push((Arrow::new(dst, src), random_nonzero(rng)));
            }
        }
    }
    if coeffs.is_empty() {
        let x = random_point(g, rng);
        let orbit = g.orbit(x).expect("point from the unit space");
        let y = orbit[rng.random_range(0..orbit.len())];
        coeffs.push((Arrow::new(y, x), random_nonzero(rng)));
    }
    AlgebraElement::from_coeffs(g, coeffs).expect("arrows lie inside orbits")
}

pub fn random_point<R: Rng + ?Sized>(g: &FiniteTwistedGroupoid, rng: &mut R) -> PointId {
    PointId(rng.random_range(0..g.units().len()))
}

/// `Σ_{|k| ≤ degree} U^k f_k` with every coefficient random.
pub fn random_crossed<R: Rng + ?Sized>(
    sys: &Arc<FiniteDynamicalSystem>,
    rng: &mut R,
    degree: i64,
) -> CrossedElement {
    let terms: Vec<(i64, Vec<Complex64>)> = (-degree..=degree)
        .map(|k| (k, (0..sys.len()).map(|_| random_complex(rng)).collect()))
        .collect();
    CrossedElement::from_fourier(sys, terms).expect("lengths match the system")
}
