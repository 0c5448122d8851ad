//! Workloads shared by the benchmarks.

use std::sync::Arc;

use cartan_core::builders::build_full_relation;
use cartan_core::sample::{random_element, rng_from_seed};
use cartan_core::semicrossed::{CrossedElement, FiniteDynamicalSystem};
use cartan_core::{AlgebraElement, Complex64, FiniteTwistedGroupoid};

/// Full relation on `n` points with two dense random elements.
pub fn dense_pair(n: usize, seed: u64) -> (Arc<FiniteTwistedGroupoid>, AlgebraElement, AlgebraElement) {
    let g = Arc::new(build_full_relation(n).expect("n > 0"));
    let mut rng = rng_from_seed(seed);
    let a = random_element(&g, &mut rng, 1.0);
    let b = random_element(&g, &mut rng, 1.0);
    (g, a, b)
}

/// `1 + U + U²` over a cyclic permutation of `n` points.
pub fn crossed_polynomial(n: usize) -> CrossedElement {
    let cycle: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let sys = Arc::new(FiniteDynamicalSystem::from_cycles(n, &cycle.join(" ")).expect("valid cycle"));
    let ones = vec![Complex64::new(1.0, 0.0); n];
    CrossedElement::from_fourier(&sys, (0..3).map(|k| (k, ones.clone()))).expect("lengths match")
}
