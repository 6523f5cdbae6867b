//! Chores: balanced egalitarian cost, greedy set cover for utilitarian cost at
//! quantile 0, and egalitarian cost at quantiles 0 and 1.
//!
//! Disutilities are stored as magnitudes. At quantile 0 a bundle costs its
//! worst chore, at quantile 1 its mildest one.

use crate::error::{Error, Result};
use crate::matching::{max_cardinality_bipartite, Graph};
use crate::model::{Allocation, Instance, Kind, SolveReport, Value};
use crate::partial::Partial;
use crate::quantile::Quantile;
use crate::search::min_esc_level;
use crate::usw::DemandQuota;
use crate::valuation::{esc, usc};

fn finish(
    instance: &Instance,
    allocation: Allocation,
    cost: fn(&Instance, &Allocation) -> Result<crate::model::Welfare>,
    algorithm: &'static str,
    feasible: bool,
) -> Result<SolveReport> {
    let welfare = cost(instance, &allocation)?;
    Ok(SolveReport {
        allocation,
        welfare,
        algorithm,
        feasible,
    })
}

fn decide_balanced(instance: &Instance) -> Result<Option<Allocation>> {
    let quota = DemandQuota::new(instance)?;
    let m = instance.items();
    let copies: usize = quota.per_agent.iter().sum();
    let mut copy_agent = Vec::with_capacity(copies);
    for (a, &c) in quota.per_agent.iter().enumerate() {
        copy_agent.extend(std::iter::repeat_n(a, c));
    }
    let mut graph = Graph::bipartite(copies, m);
    for (c, &a) in copy_agent.iter().enumerate() {
        for g in 0..m {
            if instance.value(a, g) == 0 {
                graph.add_edge(c, copies + g, 1).expect("distinct crossing edges");
            }
        }
    }
    let matching = max_cardinality_bipartite(&graph)?;
    if matching.len() < copies {
        return Ok(None);
    }
    let mut partial = Partial::new(instance.agents(), m);
    for &e in matching.edges() {
        let edge = graph.edge(e);
        partial.give(edge.u.max(edge.v) - copies, copy_agent[edge.u.min(edge.v)]);
    }
    partial.pad_round_robin(quota.k);
    Ok(Some(partial.finish()))
}

/// Balanced ESC on binary chores: every agent needs `k_i` zero-cost chores in
/// its size-`k` bundle.
pub fn balanced_esc_binary(instance: &Instance) -> Result<SolveReport> {
    const OP: &str = "balanced binary ESC";
    instance.require_kind(Kind::Chores, OP)?;
    let k = instance.require_balanced()?;
    instance.require_binary(OP)?;
    match decide_balanced(instance)? {
        Some(a) => finish(instance, a, esc, "balanced-esc", true),
        None => finish(instance, Allocation::blocks(instance.agents(), k), esc, "balanced-esc", false),
    }
}

/// Minimum balanced ESC for general chores.
pub fn balanced_esc(instance: &Instance) -> Result<SolveReport> {
    instance.require_kind(Kind::Chores, "balanced ESC")?;
    let k = instance.require_balanced()?;
    let allocation = min_esc_level(instance, decide_balanced)?
        .map(|(_, a)| a)
        .unwrap_or_else(|| Allocation::blocks(instance.agents(), k));
    finish(instance, allocation, esc, "balanced-esc", true)
}

/// A candidate set for the set-cover view of USC at quantile 0: `agent` takes
/// its `len` mildest chores and pays the worst of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCandidate {
    pub agent: usize,
    pub len: usize,
    pub items: Vec<usize>,
    pub weight: Value,
}

/// All `n * m` candidates, agent-major, prefix length ascending.
pub fn cover_candidates(instance: &Instance) -> Vec<CoverCandidate> {
    let mut out = Vec::with_capacity(instance.agents() * instance.items());
    for agent in 0..instance.agents() {
        let row = instance.row(agent);
        let mut order: Vec<usize> = (0..row.len()).collect();
        order.sort_by_key(|&g| (row[g], g));
        for len in 1..=order.len() {
            out.push(CoverCandidate {
                agent,
                len,
                items: order[..len].to_vec(),
                weight: row[order[len - 1]],
            });
        }
    }
    out
}

/// Greedy weighted set cover for USC with every quantile 0. The cover is
/// turned into an allocation by keeping each agent's largest chosen prefix and
/// giving every chore to the first chosen candidate that covers it. Within a
/// factor `ln m + 1` of the optimum.
pub fn usc_tau0_setcover(instance: &Instance) -> Result<SolveReport> {
    const OP: &str = "set-cover USC";
    instance.require_kind(Kind::Chores, OP)?;
    instance.require_quantile(Quantile::ZERO, OP)?;
    let m = instance.items();
    let candidates = cover_candidates(instance);
    let mut covered = vec![false; m];
    let mut left = m;
    let mut chosen: Vec<usize> = Vec::new();
    while left > 0 {
        // (candidate, weight, newly covered)
        let mut best: Option<(usize, u64, u64)> = None;
        for (c, cand) in candidates.iter().enumerate() {
            let fresh = cand.items.iter().filter(|&&g| !covered[g]).count() as u64;
            if fresh == 0 {
                continue;
            }
            let w = u64::from(cand.weight);
            if best.is_none_or(|(_, bw, bf)| (w as u128) * (bf as u128) < (bw as u128) * (fresh as u128)) {
                best = Some((c, w, fresh));
            }
        }
        let (c, _, fresh) = best.expect("the full prefix always covers something");
        for &g in &candidates[c].items {
            covered[g] = true;
        }
        left -= fresh as usize;
        chosen.push(c);
    }

    let mut partial = Partial::new(instance.agents(), m);
    for &c in &chosen {
        for &g in &candidates[c].items {
            if partial.is_free(g) {
                partial.give(g, candidates[c].agent);
            }
        }
    }
    finish(instance, partial.finish(), usc, "setcover", true)
}

fn decide_tau0(instance: &Instance) -> Result<Option<Allocation>> {
    let mut owner = Vec::with_capacity(instance.items());
    for g in 0..instance.items() {
        match (0..instance.agents()).find(|&a| instance.value(a, g) == 0) {
            Some(a) => owner.push(a),
            None => return Ok(None),
        }
    }
    Ok(Some(Allocation::from_owner_unchecked(owner)))
}

fn decide_tau1(instance: &Instance) -> Result<Option<Allocation>> {
    let taker = (0..instance.agents()).find(|&a| instance.row(a).contains(&0));
    Ok(taker.map(|a| Allocation::from_owner_unchecked(vec![a; instance.items()])))
}

fn esc_rule(
    instance: &Instance,
    tau: Quantile,
    operation: &'static str,
    decide: fn(&Instance) -> Result<Option<Allocation>>,
) -> Result<SolveReport> {
    instance.require_kind(Kind::Chores, operation)?;
    instance.require_quantile(tau, operation)?;
    let allocation = min_esc_level(instance, decide)?
        .map(|(_, a)| a)
        .ok_or_else(|| Error::InvalidInstance("no threshold level is achievable".into()))?;
    finish(instance, allocation, esc, operation, true)
}

/// Minimum ESC at quantile 0 (each agent pays its worst chore).
pub fn esc_tau0(instance: &Instance) -> Result<SolveReport> {
    esc_rule(instance, Quantile::ZERO, "esc-tau0", decide_tau0)
}

/// Minimum ESC at quantile 1 (each agent pays its mildest chore).
pub fn esc_tau1(instance: &Instance) -> Result<SolveReport> {
    esc_rule(instance, Quantile::ONE, "esc-tau1", decide_tau1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chores(tau: &str, rows: Vec<Vec<u32>>) -> Instance {
        Instance::homogeneous(Kind::Chores, tau.parse().unwrap(), rows).unwrap()
    }

    #[test]
    fn balanced_examples() {
        let inst = chores("1/2", vec![vec![0, 0, 1, 1], vec![1, 1, 0, 0]]);
        let r = balanced_esc_binary(&inst).unwrap();
        assert!(r.feasible);
        assert_eq!(r.allocation.owner(), &[0, 0, 1, 1]);
        assert_eq!(r.welfare.get(), 0);

        let zero = chores("1/3", vec![vec![0; 6]; 3]);
        assert_eq!(balanced_esc(&zero).unwrap().welfare.get(), 0);
        let bad = chores("0/1", vec![vec![0, 1], vec![0, 1]]);
        assert_eq!(balanced_esc(&bad).unwrap().welfare.get(), 1);
        assert!(!balanced_esc_binary(&bad).unwrap().feasible);
    }

    #[test]
    fn setcover_example() {
        let inst = chores("0/1", vec![vec![1, 1, 9], vec![9, 9, 2]]);
        let r = usc_tau0_setcover(&inst).unwrap();
        assert_eq!(r.allocation.owner(), &[0, 0, 1]);
        assert_eq!(r.welfare.get(), 3);

        let single = chores("0/1", vec![vec![3, 7, 5]]);
        assert_eq!(usc_tau0_setcover(&single).unwrap().welfare.get(), 7);
        let zero = chores("0/1", vec![vec![0; 4]; 3]);
        assert_eq!(usc_tau0_setcover(&zero).unwrap().welfare.get(), 0);
    }

    #[test]
    fn candidates_are_prefixes() {
        let inst = chores("0/1", vec![vec![4, 1, 4]]);
        let c = cover_candidates(&inst);
        assert_eq!(c.len(), 3);
        assert_eq!((c[1].items.clone(), c[1].weight), (vec![1, 0], 4));
        for cand in &c {
            assert_eq!(crate::valuation::bundle_value(&inst, cand.agent, &cand.items).unwrap(), cand.weight);
        }
    }

    #[test]
    fn esc_cases() {
        let universal = chores("0/1", vec![vec![0, 1], vec![0, 1]]);
        assert_eq!(esc_tau0(&universal).unwrap().welfare.get(), 1);
        let covered = chores("0/1", vec![vec![0, 3], vec![2, 0]]);
        assert_eq!(esc_tau0(&covered).unwrap().welfare.get(), 0);
        let optimist = chores("1/1", vec![vec![2, 3], vec![5, 0]]);
        let r = esc_tau1(&optimist).unwrap();
        assert_eq!(r.welfare.get(), 0);
        assert_eq!(r.allocation.owner(), &[1, 1]);
        assert!(matches!(esc_tau1(&covered), Err(Error::QuantileMismatch { .. })));
    }
}
