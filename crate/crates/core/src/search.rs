//! Threshold search over candidate levels with a monotone feasibility probe.

use crate::error::Result;
use crate::model::{Allocation, Instance, Value};
use crate::valuation::threshold_binary;

/// Largest candidate accepted by `probe`, assuming acceptance is downward closed
/// over the ascending `candidates`.
pub(crate) fn last_accepted<T>(
    candidates: &[Value],
    mut probe: impl FnMut(Value) -> Result<Option<T>>,
) -> Result<Option<(Value, T)>> {
    let (mut lo, mut hi) = (0, candidates.len());
    let mut best = None;
    while lo < hi {
        let mid = (lo + hi) / 2;
        match probe(candidates[mid])? {
            Some(found) => {
                best = Some((candidates[mid], found));
                lo = mid + 1;
            }
            None => hi = mid,
        }
    }
    Ok(best)
}

/// Smallest candidate accepted by `probe`, assuming acceptance is upward closed.
pub(crate) fn first_accepted<T>(
    candidates: &[Value],
    mut probe: impl FnMut(Value) -> Result<Option<T>>,
) -> Result<Option<(Value, T)>> {
    let (mut lo, mut hi) = (0, candidates.len());
    let mut best = None;
    while lo < hi {
        let mid = (lo + hi) / 2;
        match probe(candidates[mid])? {
            Some(found) => {
                best = Some((candidates[mid], found));
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    Ok(best)
}

/// Maximum ESW level for goods: the largest `nu` whose thresholded binary
/// instance the decision procedure `decide` can bring to ESW 1.
pub(crate) fn max_esw_level(
    instance: &Instance,
    mut decide: impl FnMut(&Instance) -> Result<Option<Allocation>>,
) -> Result<Option<(Value, Allocation)>> {
    let levels: Vec<Value> = instance.distinct_values().into_iter().filter(|&v| v > 0).collect();
    last_accepted(&levels, |nu| decide(&threshold_binary(instance, nu)))
}

/// Minimum ESC level for chores: the smallest `c` such that `decide` reaches
/// ESC 0 on the instance thresholded at `c + 1`.
pub(crate) fn min_esc_level(
    instance: &Instance,
    mut decide: impl FnMut(&Instance) -> Result<Option<Allocation>>,
) -> Result<Option<(Value, Allocation)>> {
    let mut levels = instance.distinct_values();
    if levels.first() != Some(&0) {
        levels.insert(0, 0);
    }
    first_accepted(&levels, |c| decide(&threshold_binary(instance, c + 1)))
}
