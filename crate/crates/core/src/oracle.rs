//! Exhaustive ground truth for small instances and graphs.

use crate::error::{Error, Result};
use crate::matching::{Graph, Matching};
use crate::model::{Allocation, Instance, Welfare};
use crate::valuation::{Evaluator, Objective};

/// Hard cap on the number of allocations an enumeration may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_allocations: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        Self {
            max_allocations: 10_000_000,
        }
    }
}

impl EnumerationBudget {
    pub fn new(max_allocations: u64) -> Self {
        Self { max_allocations }
    }

    fn admit(self, count: u128) -> Result<()> {
        if count > self.max_allocations as u128 {
            Err(Error::BudgetExceeded {
                count,
                budget: self.max_allocations,
            })
        } else {
            Ok(())
        }
    }
}

/// Number of allocations of `m` items to `n` agents (saturating): `n^m`, or
/// the multinomial `m! / (k!)^n` when balanced.
pub fn allocation_count(n: usize, m: usize, balanced: bool) -> u128 {
    if !balanced {
        return (0..m).fold(1u128, |acc, _| acc.saturating_mul(n as u128));
    }
    let k = m / n;
    let mut count = 1u128;
    let mut left = m;
    for _ in 0..n {
        count = count.saturating_mul(binomial(left, k));
        left -= k;
    }
    count
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        // exact at every step: acc * (n - i) is divisible by i + 1
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Lexicographic walk over owner vectors, each agent holding at most `cap` items.
#[derive(Clone, Debug)]
pub struct Allocations {
    agents: usize,
    cap: usize,
    owner: Vec<usize>,
    counts: Vec<usize>,
    started: bool,
    done: bool,
}

impl Allocations {
    fn new(agents: usize, items: usize, cap: usize) -> Self {
        let mut walk = Self {
            agents,
            cap,
            owner: vec![0; items],
            counts: vec![0; agents],
            started: false,
            done: false,
        };
        walk.fill_from(0);
        walk
    }

    /// Fills positions `from..` with the smallest agents that still have room.
    fn fill_from(&mut self, from: usize) {
        let mut a = 0;
        for pos in from..self.owner.len() {
            while self.counts[a] >= self.cap {
                a += 1;
            }
            self.owner[pos] = a;
            self.counts[a] += 1;
        }
    }

    fn advance(&mut self) -> bool {
        for pos in (0..self.owner.len()).rev() {
            let cur = self.owner[pos];
            self.counts[cur] -= 1;
            if let Some(next) = (cur + 1..self.agents).find(|&a| self.counts[a] < self.cap) {
                self.owner[pos] = next;
                self.counts[next] += 1;
                self.fill_from(pos + 1);
                return true;
            }
        }
        false
    }

    /// Next owner vector without allocating.
    pub fn next_owner(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(&self.owner)
    }
}

impl Iterator for Allocations {
    type Item = Allocation;

    fn next(&mut self) -> Option<Allocation> {
        self.next_owner()
            .map(|o| Allocation::from_owner_unchecked(o.to_vec()))
    }
}

/// Every allocation of `m` items to `n` agents (or every balanced one) exactly
/// once, in lexicographic order of owner vectors.
pub fn enumerate_allocations(
    n: usize,
    m: usize,
    balanced: bool,
    budget: EnumerationBudget,
) -> Result<Allocations> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidInstance("enumeration needs n, m >= 1".into()));
    }
    if balanced && !m.is_multiple_of(n) {
        return Err(Error::NotDivisible { agents: n, items: m });
    }
    budget.admit(allocation_count(n, m, balanced))?;
    let cap = if balanced { m / n } else { m };
    Ok(Allocations::new(n, m, cap))
}

/// Exact optimum of `objective` and the first optimal allocation in
/// enumeration order.
pub fn opt_welfare(
    instance: &Instance,
    objective: Objective,
    balanced: bool,
    budget: EnumerationBudget,
) -> Result<(Welfare, Allocation)> {
    instance.require_kind(objective.kind(), objective.as_str())?;
    let mut walk = enumerate_allocations(instance.agents(), instance.items(), balanced, budget)?;
    let mut eval = Evaluator::new(instance);
    let mut best: Option<(Welfare, Vec<usize>)> = None;
    while let Some(owner) = walk.next_owner() {
        let w = eval.evaluate(objective, owner);
        if best.as_ref().is_none_or(|(b, _)| objective.improves(w, *b)) {
            best = Some((w, owner.to_vec()));
        }
    }
    let (w, owner) = best.expect("at least one allocation");
    Ok((w, Allocation::from_owner_unchecked(owner)))
}

/// Largest number of edges `brute_matching` accepts.
pub const BRUTE_MATCHING_MAX_EDGES: usize = 20;

/// Maximum-weight (or maximum-cardinality) matching by scanning every edge
/// subset. First optimum found wins.
pub fn brute_matching(graph: &Graph, weighted: bool) -> Result<Matching> {
    let edges = graph.edges();
    if edges.len() > BRUTE_MATCHING_MAX_EDGES {
        return Err(Error::InvalidGraph(format!(
            "{} edges exceed the brute-force cap of {BRUTE_MATCHING_MAX_EDGES}",
            edges.len()
        )));
    }
    struct Scan<'g> {
        graph: &'g Graph,
        weighted: bool,
        used: Vec<bool>,
        current: Vec<usize>,
        best: (u128, Vec<usize>),
    }
    impl Scan<'_> {
        fn score(&self) -> u128 {
            if self.weighted {
                self.current.iter().map(|&e| self.graph.edge(e).weight as u128).sum()
            } else {
                self.current.len() as u128
            }
        }

        fn go(&mut self, e: usize) {
            if e == self.graph.edges().len() {
                let s = self.score();
                if s > self.best.0 {
                    self.best = (s, self.current.clone());
                }
                return;
            }
            self.go(e + 1);
            let edge = self.graph.edge(e);
            if !self.used[edge.u] && !self.used[edge.v] {
                self.used[edge.u] = true;
                self.used[edge.v] = true;
                self.current.push(e);
                self.go(e + 1);
                self.current.pop();
                self.used[edge.u] = false;
                self.used[edge.v] = false;
            }
        }
    }
    let mut scan = Scan {
        graph,
        weighted,
        used: vec![false; graph.vertex_count()],
        current: Vec::new(),
        best: (0, Vec::new()),
    };
    scan.go(0);
    Matching::from_edges(graph, scan.best.1)
}
