//! Fixtures shared by the criterion benches.

use dmxyz_core::analysis::verify::{sample_points, SamplePoint};
use dmxyz_core::DmAxis;

/// A fixed batch of random parameter points along one axis.
pub fn batch(axis: DmAxis, n: usize) -> Vec<SamplePoint> {
    let index = DmAxis::ALL
        .iter()
        .position(|a| *a == axis)
        .expect("known axis");
    sample_points(n, 2024)[index].clone()
}
