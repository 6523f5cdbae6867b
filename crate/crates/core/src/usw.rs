//! Utilitarian welfare for goods.

use crate::error::{Error, Result};
use crate::esw::{identical_esw_binary, ZeroOnePartition};
use crate::matching::{max_weight_bipartite, Graph};
use crate::model::{Allocation, Instance, Kind, SolveReport, Value};
use crate::partial::Partial;
use crate::quantile::Quantile;
use crate::valuation::usw;

/// Per-agent demand sizes for balanced bundles of size `k`: an agent only
/// needs its `k_i = k - ceil(tau * k) + 1` best items to fix its quantile.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DemandQuota {
    pub k: usize,
    pub per_agent: Vec<usize>,
}

impl DemandQuota {
    pub fn new(instance: &Instance) -> Result<Self> {
        let k = instance.require_balanced()?;
        let per_agent = instance.quantiles().iter().map(|&tau| demand(k, tau)).collect();
        Ok(Self { k, per_agent })
    }
}

/// `min(k, k - ceil(tau * k) + 1)`, so `k` for `tau = 0` and 1 for `tau = 1`.
pub fn demand(k: usize, tau: Quantile) -> usize {
    let ceil = if tau.is_zero() { 0 } else { tau.index(k) };
    k.min(k + 1 - ceil)
}

fn report(instance: &Instance, allocation: Allocation, algorithm: &'static str) -> Result<SolveReport> {
    let welfare = usw(instance, &allocation)?;
    Ok(SolveReport {
        allocation,
        welfare,
        algorithm,
        feasible: true,
    })
}

/// Top `count` free items of `agent` by value, ties to the lower item index.
fn top_items(instance: &Instance, agent: usize, free: &[usize], count: usize) -> Vec<usize> {
    let row = instance.row(agent);
    let mut order = free.to_vec();
    order.sort_by(|&a, &b| row[b].cmp(&row[a]).then(a.cmp(&b)));
    order.truncate(count);
    order
}

/// Greedy balanced USW: repeatedly lets the agent whose demand set has the
/// highest minimum value take that set, then pads bundles to size `k`
/// round-robin. Achieves at least `OPT / min(k + 1, n)`.
pub fn greedy_balanced_usw(instance: &Instance) -> Result<SolveReport> {
    instance.require_kind(Kind::Goods, "greedy balanced USW")?;
    let quota = DemandQuota::new(instance)?;
    let n = instance.agents();
    let mut partial = Partial::new(n, instance.items());
    let mut waiting: Vec<usize> = (0..n).collect();

    loop {
        let free = partial.free_items();
        if free.is_empty() || waiting.is_empty() {
            break;
        }
        let mut best: Option<(Value, usize, Vec<usize>)> = None;
        for (slot, &agent) in waiting.iter().enumerate() {
            let set = top_items(instance, agent, &free, quota.per_agent[agent]);
            let score = set.iter().map(|&g| instance.value(agent, g)).min().unwrap_or(0);
            if best.as_ref().is_none_or(|(s, _, _)| score > *s) {
                best = Some((score, slot, set));
            }
        }
        let (_, slot, set) = best.expect("waiting is non-empty");
        let agent = waiting.remove(slot);
        for g in set {
            partial.give(g, agent);
        }
    }
    partial.pad_round_robin(quota.k);
    report(instance, partial.finish(), "greedy")
}

/// Positive-weight edges between `agents` (left, in the given order) and all items.
fn agent_item_graph(instance: &Instance, agents: &[usize]) -> Graph {
    let mut graph = Graph::bipartite(agents.len(), instance.items());
    for (l, &a) in agents.iter().enumerate() {
        for (g, &v) in instance.row(a).iter().enumerate() {
            if v > 0 {
                graph
                    .add_edge(l, agents.len() + g, u64::from(v))
                    .expect("edges are distinct and cross");
            }
        }
    }
    graph
}

/// Gives each matched item to its matched agent and returns the builder.
fn matched_partial(instance: &Instance, agents: &[usize]) -> Result<Partial> {
    let graph = agent_item_graph(instance, agents);
    let matching = max_weight_bipartite(&graph)?;
    let mut partial = Partial::new(instance.agents(), instance.items());
    for &e in matching.edges() {
        let edge = graph.edge(e);
        let (l, r) = (edge.u.min(edge.v), edge.u.max(edge.v));
        partial.give(r - agents.len(), agents[l]);
    }
    Ok(partial)
}

/// Scapegoat USW: for every agent `i`, match the other agents to single items
/// by maximum weight and hand every unmatched item to `i`. Returns the best of
/// the `n` candidates, ties to the lowest scapegoat. At least `(n-1)/n * OPT`.
pub fn scapegoat_usw(instance: &Instance) -> Result<SolveReport> {
    instance.require_kind(Kind::Goods, "scapegoat USW")?;
    let n = instance.agents();
    if n < 2 {
        return Err(Error::TooFewAgents {
            operation: "scapegoat USW",
            required: 2,
            found: n,
        });
    }
    let mut best: Option<SolveReport> = None;
    for scapegoat in 0..n {
        let others: Vec<usize> = (0..n).filter(|&a| a != scapegoat).collect();
        let mut partial = matched_partial(instance, &others)?;
        partial.rest_to(scapegoat);
        let candidate = report(instance, partial.finish(), "scapegoat")?;
        if best.as_ref().is_none_or(|b| candidate.welfare > b.welfare) {
            best = Some(candidate);
        }
    }
    Ok(best.expect("n >= 2"))
}

/// Exact unbalanced USW when some agent has quantile 1: a maximum-weight
/// matching of all agents to single items, with every leftover item given to
/// the first such agent.
pub fn optimistic_exact_usw(instance: &Instance) -> Result<SolveReport> {
    instance.require_kind(Kind::Goods, "optimistic USW")?;
    let optimist = instance
        .quantiles()
        .iter()
        .position(|t| t.is_one())
        .ok_or(Error::NoOptimisticAgent)?;
    let agents: Vec<usize> = (0..instance.agents()).collect();
    let mut partial = matched_partial(instance, &agents)?;
    partial.rest_to(optimist);
    report(instance, partial.finish(), "optimistic")
}

/// Exact unbalanced USW for identical binary valuations with a shared quantile.
pub fn identical_binary_usw_unbalanced(instance: &Instance) -> Result<SolveReport> {
    const OP: &str = "identical binary USW";
    instance.require_kind(Kind::Goods, OP)?;
    instance.require_binary(OP)?;
    if !instance.is_identical() {
        return Err(Error::NotIdentical(OP));
    }
    let n = instance.agents();
    if let Some(allocation) = identical_esw_binary(instance)? {
        return report(instance, allocation, "identical-usw");
    }
    let parts = ZeroOnePartition::new(instance);
    let mut partial = Partial::new(n, instance.items());
    // at most n - 1 agents can reach 1: give them a single 1-item each
    for (agent, &g) in parts.ones.iter().take(n - 1).enumerate() {
        partial.give(g, agent);
    }
    partial.rest_to(n - 1);
    report(instance, partial.finish(), "identical-usw")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Quantile {
        s.parse().unwrap()
    }

    #[test]
    fn demand_sizes() {
        assert_eq!(demand(4, Quantile::ZERO), 4);
        assert_eq!(demand(4, Quantile::ONE), 1);
        assert_eq!(demand(2, q("1/2")), 2);
        assert_eq!(demand(4, q("1/2")), 3);
        assert_eq!(demand(3, q("1/3")), 3);
        assert_eq!(demand(3, q("2/3")), 2);
    }

    #[test]
    fn greedy_example() {
        let inst = Instance::homogeneous(Kind::Goods, q("1/2"), vec![vec![5, 4, 1, 0], vec![5, 1, 3, 2]]).unwrap();
        let r = greedy_balanced_usw(&inst).unwrap();
        assert_eq!(r.allocation.owner(), &[0, 0, 1, 1]);
        assert_eq!(r.welfare.get(), 6);
        assert_eq!(crate::valuation::esw(&inst, &r.allocation).unwrap().get(), 2);
    }

    #[test]
    fn scapegoat_example() {
        let inst = Instance::homogeneous(
            Kind::Goods,
            Quantile::ZERO,
            vec![vec![10, 0, 0, 0], vec![0, 8, 0, 0], vec![0, 0, 6, 5]],
        )
        .unwrap();
        let r = scapegoat_usw(&inst).unwrap();
        assert_eq!(r.welfare.get(), 23);
        assert_eq!(r.allocation.owner(), &[0, 1, 2, 2]);
    }

    #[test]
    fn scapegoat_needs_two_agents() {
        let inst = Instance::homogeneous(Kind::Goods, Quantile::ZERO, vec![vec![1]]).unwrap();
        assert!(matches!(scapegoat_usw(&inst), Err(Error::TooFewAgents { .. })));
    }

    #[test]
    fn optimistic_example() {
        let inst = Instance::new(Kind::Goods, vec![Quantile::ZERO, Quantile::ONE], vec![vec![9, 0], vec![1, 8]]).unwrap();
        let r = optimistic_exact_usw(&inst).unwrap();
        assert_eq!(r.welfare.get(), 17);
        assert_eq!(r.allocation.owner(), &[0, 1]);

        let none = Instance::homogeneous(Kind::Goods, Quantile::ZERO, vec![vec![1], vec![2]]).unwrap();
        assert_eq!(optimistic_exact_usw(&none), Err(Error::NoOptimisticAgent));
    }

    #[test]
    fn identical_usw_cases() {
        // three ones for two agents at tau = 0: ESW 1 is feasible
        let inst = Instance::homogeneous(Kind::Goods, Quantile::ZERO, vec![vec![1, 1, 1]; 2]).unwrap();
        assert_eq!(identical_binary_usw_unbalanced(&inst).unwrap().welfare.get(), 2);
        // one 1 and one universal 0 at tau = 0: ESW infeasible, USW 1
        let inst = Instance::homogeneous(Kind::Goods, Quantile::ZERO, vec![vec![1, 0]; 2]).unwrap();
        assert_eq!(identical_binary_usw_unbalanced(&inst).unwrap().welfare.get(), 1);
    }
}
