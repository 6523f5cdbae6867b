//! Egalitarian welfare for goods.
//!
//! Every solver here is a 0/1 decision on a binary instance ("can every agent
//! reach value 1?") lifted to general values by a threshold search.

use crate::error::{Error, Result};
use crate::matching::{max_cardinality_bipartite, max_weight_general, Graph};
use crate::model::{Allocation, Instance, Kind, SolveReport, Value};
use crate::partial::Partial;
use crate::quantile::Quantile;
use crate::search::max_esw_level;
use crate::usw::DemandQuota;
use crate::valuation::esw;

/// Items every agent values 0 (`zeros`) and the rest (`ones`), ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroOnePartition {
    pub zeros: Vec<usize>,
    pub ones: Vec<usize>,
}

impl ZeroOnePartition {
    pub fn new(instance: &Instance) -> Self {
        let (zeros, ones) = (0..instance.items())
            .partition(|&g| (0..instance.agents()).all(|a| instance.value(a, g) == 0));
        Self { zeros, ones }
    }
}

fn report(instance: &Instance, decided: Option<Allocation>, fallback: Allocation, algorithm: &'static str) -> Result<SolveReport> {
    let feasible = decided.is_some();
    let allocation = decided.unwrap_or(fallback);
    let welfare = esw(instance, &allocation)?;
    Ok(SolveReport {
        allocation,
        welfare,
        algorithm,
        feasible,
    })
}

/// Optimization report from a threshold search: feasible even at level 0.
fn search_report(
    instance: &Instance,
    found: Option<(Value, Allocation)>,
    fallback: Allocation,
    algorithm: &'static str,
) -> Result<SolveReport> {
    let allocation = found.map(|(_, a)| a).unwrap_or(fallback);
    let welfare = esw(instance, &allocation)?;
    Ok(SolveReport {
        allocation,
        welfare,
        algorithm,
        feasible: true,
    })
}

/// Agents (left) against items (right), an edge wherever the agent values the item 1.
fn ones_graph(instance: &Instance) -> Graph {
    let n = instance.agents();
    let mut graph = Graph::bipartite(n, instance.items());
    for a in 0..n {
        for g in 0..instance.items() {
            if instance.value(a, g) == 1 {
                graph.add_edge(a, n + g, 1).expect("distinct crossing edges");
            }
        }
    }
    graph
}

/// Each agent's matched item, if every agent is matched.
fn saturating_matching(instance: &Instance) -> Result<Option<Vec<usize>>> {
    let n = instance.agents();
    let graph = ones_graph(instance);
    let matching = max_cardinality_bipartite(&graph)?;
    if matching.len() < n {
        return Ok(None);
    }
    let mut item_of = vec![0; n];
    for &e in matching.edges() {
        let edge = graph.edge(e);
        item_of[edge.u.min(edge.v)] = edge.u.max(edge.v) - n;
    }
    Ok(Some(item_of))
}

fn first_valuing(instance: &Instance, items: &[usize]) -> Option<usize> {
    (0..instance.agents()).find(|&a| items.iter().all(|&g| instance.value(a, g) == 1))
}

pub(crate) fn decide_balanced(instance: &Instance) -> Result<Option<Allocation>> {
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
            if instance.value(a, g) == 1 {
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

/// Balanced ESW on binary goods: every agent needs `k_i` items of value 1 in
/// its size-`k` bundle, which a matching over `k_i` copies per agent decides.
pub fn balanced_esw_binary(instance: &Instance) -> Result<SolveReport> {
    const OP: &str = "balanced binary ESW";
    instance.require_kind(Kind::Goods, OP)?;
    let k = instance.require_balanced()?;
    instance.require_binary(OP)?;
    let decided = decide_balanced(instance)?;
    report(instance, decided, Allocation::blocks(instance.agents(), k), "balanced-esw")
}

/// Maximum balanced ESW for general goods.
pub fn balanced_esw(instance: &Instance) -> Result<SolveReport> {
    instance.require_kind(Kind::Goods, "balanced ESW")?;
    let k = instance.require_balanced()?;
    let found = max_esw_level(instance, decide_balanced)?;
    search_report(instance, found, Allocation::blocks(instance.agents(), k), "balanced-esw")
}

fn decide_frac(instance: &Instance, t: u32) -> Result<Option<Allocation>> {
    let n = instance.agents();
    let t = t as usize;
    let parts = ZeroOnePartition::new(instance);
    if (parts.zeros.len() + n) as u128 > (t as u128) * parts.ones.len() as u128 {
        return Ok(None);
    }
    let Some(item_of) = saturating_matching(instance)? else {
        return Ok(None);
    };
    let mut partial = Partial::new(n, instance.items());
    for (a, &g) in item_of.iter().enumerate() {
        partial.give(g, a);
    }
    let spare: Vec<usize> = parts.ones.iter().copied().filter(|&g| partial.is_free(g)).collect();
    let mut ones = spare.into_iter().peekable();
    let mut zeros = parts.zeros.iter().copied().peekable();
    while ones.peek().is_some() && zeros.peek().is_some() {
        let g = ones.next().expect("peeked");
        let a = first_valuing(instance, &[g]).expect("a 1-item has a valuing agent");
        partial.give(g, a);
        for z in zeros.by_ref().take(t) {
            partial.give(z, a);
        }
    }
    // leftover zeros: at most t - 1 more per agent
    let mut slots = (0..n).flat_map(|a| std::iter::repeat_n(a, t - 1));
    for z in zeros {
        let a = slots.next().expect("gate guarantees room for leftover zeros");
        partial.give(z, a);
    }
    for g in ones {
        let a = first_valuing(instance, &[g]).expect("a 1-item has a valuing agent");
        partial.give(g, a);
    }
    Ok(Some(partial.finish()))
}

fn decide_third(instance: &Instance) -> Result<Option<Allocation>> {
    let n = instance.agents();
    let parts = ZeroOnePartition::new(instance);
    let x = parts.ones.len();
    let heavy = (x + n + 1) as u64;
    // vertices: items of M_1 at 0..x, agents at x..x+n
    let mut graph = Graph::new(x + n);
    for a in 0..n {
        for (xi, &g) in parts.ones.iter().enumerate() {
            if instance.value(a, g) == 1 {
                graph.add_edge(xi, x + a, heavy)?;
            }
        }
    }
    for i in 0..x {
        for j in i + 1..x {
            if first_valuing(instance, &[parts.ones[i], parts.ones[j]]).is_some() {
                graph.add_edge(i, j, 1)?;
            }
        }
    }
    let matching = max_weight_general(&graph);
    if matching.weight(&graph) < (parts.zeros.len() as u128) + (n as u128) * heavy as u128 {
        return Ok(None);
    }
    let mut partial = Partial::new(n, instance.items());
    let mut pairs = Vec::new();
    for &e in matching.edges() {
        let edge = graph.edge(e);
        let (lo, hi) = (edge.u.min(edge.v), edge.u.max(edge.v));
        if hi >= x {
            partial.give(parts.ones[lo], hi - x);
        } else {
            pairs.push((parts.ones[lo], parts.ones[hi]));
        }
    }
    for (&z, &(g, h)) in parts.zeros.iter().zip(&pairs) {
        let a = first_valuing(instance, &[g, h]).expect("pair edges have a common agent");
        partial.give(z, a);
        partial.give(g, a);
        partial.give(h, a);
    }
    for &g in &parts.ones {
        if partial.is_free(g) {
            let a = first_valuing(instance, &[g]).expect("a 1-item has a valuing agent");
            partial.give(g, a);
        }
    }
    Ok(Some(partial.finish()))
}

fn decide_tau0(instance: &Instance) -> Result<Option<Allocation>> {
    let parts = ZeroOnePartition::new(instance);
    if !parts.zeros.is_empty() {
        return Ok(None);
    }
    let Some(item_of) = saturating_matching(instance)? else {
        return Ok(None);
    };
    let mut partial = Partial::new(instance.agents(), instance.items());
    for (a, &g) in item_of.iter().enumerate() {
        partial.give(g, a);
    }
    for g in partial.free_items() {
        let a = first_valuing(instance, &[g]).expect("no universal zeros");
        partial.give(g, a);
    }
    Ok(Some(partial.finish()))
}

fn decide_tau1(instance: &Instance) -> Result<Option<Allocation>> {
    let Some(item_of) = saturating_matching(instance)? else {
        return Ok(None);
    };
    let mut partial = Partial::new(instance.agents(), instance.items());
    for (a, &g) in item_of.iter().enumerate() {
        partial.give(g, a);
    }
    partial.rest_to(0);
    Ok(Some(partial.finish()))
}

/// Binary decision procedure for one member of the tractable quantile family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EswRule {
    Tau0,
    Third,
    /// `t / (t + 1)` for `t >= 1`
    Frac(u32),
    Tau1,
}

impl EswRule {
    /// Rule for a homogeneous quantile, or `IntractableQuantile`.
    pub fn for_quantile(tau: Quantile) -> Result<Self> {
        if tau.is_zero() {
            Ok(Self::Tau0)
        } else if tau.is_one() {
            Ok(Self::Tau1)
        } else if tau == Quantile::new(1, 3)? {
            Ok(Self::Third)
        } else if let Some(t) = tau.as_t_over_t_plus_one() {
            Ok(Self::Frac(t))
        } else {
            Err(Error::IntractableQuantile(tau.to_string()))
        }
    }

    pub fn quantile(self) -> Quantile {
        match self {
            Self::Tau0 => Quantile::ZERO,
            Self::Tau1 => Quantile::ONE,
            Self::Third => Quantile::new(1, 3).expect("valid"),
            Self::Frac(t) => Quantile::new(t, t + 1).expect("valid"),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Tau0 => "esw-tau0",
            Self::Third => "esw-third",
            Self::Frac(_) => "esw-frac",
            Self::Tau1 => "esw-tau1",
        }
    }

    fn decide(self, instance: &Instance) -> Result<Option<Allocation>> {
        match self {
            Self::Tau0 => decide_tau0(instance),
            Self::Third => decide_third(instance),
            Self::Frac(t) => decide_frac(instance, t),
            Self::Tau1 => decide_tau1(instance),
        }
    }

    fn check(self, instance: &Instance) -> Result<()> {
        instance.require_kind(Kind::Goods, self.name())?;
        if let Self::Frac(0) = self {
            return Err(Error::Unsupported("t / (t + 1) needs t >= 1".into()));
        }
        instance.require_quantile(self.quantile(), self.name())
    }

    /// Runs the 0/1 decision on a binary instance.
    pub fn solve_binary(self, instance: &Instance) -> Result<SolveReport> {
        self.check(instance)?;
        instance.require_binary(self.name())?;
        let decided = self.decide(instance)?;
        report(instance, decided, Allocation::all_to_first(instance.items()), self.name())
    }

    /// Maximum ESW over all allocations by threshold search over this rule.
    pub fn solve(self, instance: &Instance) -> Result<SolveReport> {
        self.check(instance)?;
        let found = max_esw_level(instance, |bin| self.decide(bin))?;
        search_report(instance, found, Allocation::all_to_first(instance.items()), self.name())
    }
}

/// Quantile `t / (t + 1)`: match every agent to a 1-item, then let each
/// further 1-item carry up to `t` universal zeros.
pub fn unbalanced_esw_binary_frac(instance: &Instance, t: u32) -> Result<SolveReport> {
    EswRule::Frac(t).solve_binary(instance)
}

/// Quantile `1/3`: every universal zero must be offset by two 1-items that a
/// single agent values, found with a weighted general matching.
pub fn unbalanced_esw_binary_third(instance: &Instance) -> Result<SolveReport> {
    EswRule::Third.solve_binary(instance)
}

pub fn unbalanced_esw_binary_tau0(instance: &Instance) -> Result<SolveReport> {
    EswRule::Tau0.solve_binary(instance)
}

pub fn unbalanced_esw_binary_tau1(instance: &Instance) -> Result<SolveReport> {
    EswRule::Tau1.solve_binary(instance)
}

/// Maximum ESW over all allocations for a homogeneous quantile in
/// `{0, 1/3, 1} ∪ {t/(t+1)}`; other quantiles are rejected.
pub fn unbalanced_esw(instance: &Instance) -> Result<SolveReport> {
    instance.require_kind(Kind::Goods, "unbalanced ESW")?;
    let tau = instance
        .common_quantile()
        .ok_or(Error::HeterogeneousQuantiles("unbalanced ESW"))?;
    EswRule::for_quantile(tau)?.solve(instance)
}

/// Fewest 1-items a bundle holding `zeros` 0-items needs for value 1 at a
/// positive quantile `tau`: the bundle size must exceed `zeros / tau`.
fn ones_needed(tau: Quantile, zeros: usize) -> usize {
    let (p, q) = (tau.numerator() as usize, tau.denominator() as usize);
    zeros * q / p + 1 - zeros
}

/// Exact decision for identical binary goods. Agents are interchangeable, so
/// only the number of zeros each one absorbs matters; a small dynamic program
/// finds the split that needs the fewest 1-items.
pub(crate) fn identical_esw_binary(instance: &Instance) -> Result<Option<Allocation>> {
    let n = instance.agents();
    let tau = instance.quantile(0);
    let row = instance.row(0);
    let zeros: Vec<usize> = (0..row.len()).filter(|&g| row[g] == 0).collect();
    let ones: Vec<usize> = (0..row.len()).filter(|&g| row[g] == 1).collect();
    let (z, r) = (zeros.len(), ones.len());

    let split: Vec<usize> = if tau.is_zero() {
        if z > 0 {
            return Ok(None);
        }
        vec![0; n]
    } else {
        // cost[i][j]: fewest ones for agents 0..i absorbing j zeros
        const INF: usize = usize::MAX;
        let mut cost = vec![vec![INF; z + 1]; n + 1];
        let mut choice = vec![vec![0; z + 1]; n + 1];
        cost[0][0] = 0;
        for i in 0..n {
            for j in 0..=z {
                if cost[i][j] == INF {
                    continue;
                }
                for l in 0..=z - j {
                    let c = cost[i][j] + ones_needed(tau, l);
                    if c < cost[i + 1][j + l] {
                        cost[i + 1][j + l] = c;
                        choice[i + 1][j + l] = l;
                    }
                }
            }
        }
        let mut split = vec![0; n];
        let mut j = z;
        for i in (1..=n).rev() {
            split[i - 1] = choice[i][j];
            j -= split[i - 1];
        }
        split
    };

    let needed: usize = split.iter().map(|&l| if tau.is_zero() { 1 } else { ones_needed(tau, l) }).sum();
    if needed > r {
        return Ok(None);
    }
    let mut partial = Partial::new(n, instance.items());
    let (mut zi, mut oi) = (zeros.into_iter(), ones.into_iter());
    for (a, &l) in split.iter().enumerate() {
        for g in zi.by_ref().take(l) {
            partial.give(g, a);
        }
        let want = if tau.is_zero() { 1 } else { ones_needed(tau, l) };
        for g in oi.by_ref().take(want) {
            partial.give(g, a);
        }
    }
    partial.rest_to(0);
    Ok(Some(partial.finish()))
}

fn require_identical(instance: &Instance, operation: &'static str) -> Result<()> {
    instance.require_kind(Kind::Goods, operation)?;
    if instance.is_identical() {
        Ok(())
    } else {
        Err(Error::NotIdentical(operation))
    }
}

/// Maximum ESW over all allocations when every agent shares one value row
/// and one quantile (any quantile).
pub fn identical_unbalanced_esw(instance: &Instance) -> Result<SolveReport> {
    const OP: &str = "identical ESW";
    require_identical(instance, OP)?;
    let fallback = Allocation::all_to_first(instance.items());
    if instance.is_binary() {
        let decided = identical_esw_binary(instance)?;
        return search_report(instance, decided.map(|a| (1, a)), fallback, "identical-esw");
    }
    let found = max_esw_level(instance, identical_esw_binary)?;
    search_report(instance, found, fallback, "identical-esw")
}
