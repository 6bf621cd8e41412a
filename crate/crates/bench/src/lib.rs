//! Inputs shared by the benchmarks.

use twistlab::{Curve, TwistCollection, TwistPower};

pub fn uniform(curves: &[(i64, i64)], s: u64) -> Vec<TwistPower> {
    curves
        .iter()
        .map(|&(a, b)| TwistPower::new(Curve::new(a, b).expect("primitive"), s).expect("s > 0"))
        .collect()
}

pub fn collection(curves: &[(i64, i64)], s: u64) -> TwistCollection {
    TwistCollection::new(uniform(curves, s)).expect("distinct curves")
}

/// A triple whose reduction takes many steps: consecutive Fibonacci
/// numbers make every centered division step small.
pub fn fibonacci_triple(n: usize) -> Vec<TwistPower> {
    let (mut p, mut q) = (1i64, 1i64);
    for _ in 0..n {
        (p, q) = (q, p + q);
    }
    uniform(&[(1, 0), (p, q), (q, p + q)], 1)
}
