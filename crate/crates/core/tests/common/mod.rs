//! Independent brute force used as ground truth by the integration tests.
//! Shares no evaluation or enumeration code with the library.

#![allow(dead_code)]

use quantile_welfare::matching::Graph;
use quantile_welfare::{Instance, Kind, Objective, Quantile};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(s: &str) -> Quantile {
    s.parse().unwrap()
}

/// Smallest `i >= 1` with `i / size >= p / q`, by linear scan.
fn position(tau: Quantile, size: usize) -> usize {
    let (p, d) = (tau.numerator() as u64, tau.denominator() as u64);
    (1..=size).find(|&i| i as u64 * d >= p * size as u64).unwrap()
}

/// Bundle value for goods, bundle disutility for chores (read through `-d`).
pub fn value(instance: &Instance, agent: usize, bundle: &[usize]) -> i64 {
    if bundle.is_empty() {
        return 0;
    }
    let pos = position(instance.quantile(agent), bundle.len());
    match instance.kind() {
        Kind::Goods => {
            let mut v: Vec<i64> = bundle.iter().map(|&g| instance.value(agent, g) as i64).collect();
            v.sort();
            v[pos - 1]
        }
        Kind::Chores => {
            let mut v: Vec<i64> = bundle.iter().map(|&g| -(instance.value(agent, g) as i64)).collect();
            v.sort();
            -v[pos - 1]
        }
    }
}

pub fn welfare(instance: &Instance, objective: Objective, owner: &[usize]) -> i64 {
    let n = instance.agents();
    let mut bundles = vec![Vec::new(); n];
    for (g, &a) in owner.iter().enumerate() {
        bundles[a].push(g);
    }
    let vals = (0..n).map(|a| value(instance, a, &bundles[a]));
    match objective {
        Objective::Usw | Objective::Usc => vals.sum(),
        Objective::Esw => vals.min().unwrap(),
        Objective::Esc => vals.max().unwrap(),
    }
}

/// Every owner vector by mixed-radix counting, optionally only balanced ones.
pub fn all_owners(n: usize, m: usize, balanced: bool) -> Vec<Vec<usize>> {
    let total = (n as u64).pow(m as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let owner: Vec<usize> = (0..m)
            .map(|_| {
                let a = (c % n as u64) as usize;
                c /= n as u64;
                a
            })
            .collect();
        if balanced {
            let mut sizes = vec![0; n];
            owner.iter().for_each(|&a| sizes[a] += 1);
            if sizes.iter().any(|&s| s * n != m) {
                continue;
            }
        }
        out.push(owner);
    }
    out
}

/// Exact optimum (maximum for welfare, minimum for cost).
pub fn optimum(instance: &Instance, objective: Objective, balanced: bool) -> i64 {
    let values = all_owners(instance.agents(), instance.items(), balanced)
        .into_iter()
        .map(|o| welfare(instance, objective, &o));
    match objective {
        Objective::Usw | Objective::Esw => values.max().unwrap(),
        Objective::Usc | Objective::Esc => values.min().unwrap(),
    }
}

/// Best matching weight (or size) over all edge subsets.
pub fn best_matching(graph: &Graph, weighted: bool) -> u128 {
    let edges = graph.edges();
    let mut best = 0;
    for mask in 0u32..(1 << edges.len()) {
        let mut used = vec![false; graph.vertex_count()];
        let mut score = 0u128;
        let mut ok = true;
        for (e, edge) in edges.iter().enumerate() {
            if mask >> e & 1 == 1 {
                if used[edge.u] || used[edge.v] {
                    ok = false;
                    break;
                }
                used[edge.u] = true;
                used[edge.v] = true;
                score += if weighted { edge.weight as u128 } else { 1 };
            }
        }
        if ok {
            best = best.max(score);
        }
    }
    best
}

pub fn random_rows(rng: &mut ChaCha8Rng, n: usize, m: usize, max: u32) -> Vec<Vec<u32>> {
    (0..n).map(|_| (0..m).map(|_| rng.random_range(0..=max)).collect()).collect()
}

pub fn random_instance(rng: &mut ChaCha8Rng, kind: Kind, taus: &[Quantile], n: usize, m: usize, max: u32) -> Instance {
    let quantiles = (0..n).map(|_| taus[rng.random_range(0..taus.len())]).collect();
    Instance::new(kind, quantiles, random_rows(rng, n, m, max)).unwrap()
}

pub fn homogeneous(rng: &mut ChaCha8Rng, kind: Kind, tau: Quantile, n: usize, m: usize, max: u32) -> Instance {
    Instance::homogeneous(kind, tau, random_rows(rng, n, m, max)).unwrap()
}

pub fn identical(rng: &mut ChaCha8Rng, kind: Kind, tau: Quantile, n: usize, m: usize, max: u32) -> Instance {
    let row = random_rows(rng, 1, m, max).remove(0);
    Instance::homogeneous(kind, tau, vec![row; n]).unwrap()
}

pub const TAUS: [&str; 10] = ["0/1", "1/4", "1/3", "2/5", "1/2", "3/5", "2/3", "3/4", "4/5", "1/1"];

pub fn taus() -> Vec<Quantile> {
    TAUS.iter().map(|s| q(s)).collect()
}

/// Random simple graph; bipartite with `left` vertices on the left when given.
pub fn random_graph(rng: &mut ChaCha8Rng, vertices: usize, max_edges: usize, max_weight: u64, left: Option<usize>) -> Graph {
    let mut graph = match left {
        Some(l) => Graph::bipartite(l, vertices - l),
        None => Graph::new(vertices),
    };
    let mut pairs = Vec::new();
    for u in 0..vertices {
        for v in u + 1..vertices {
            if left.is_none_or(|l| u < l && v >= l) {
                pairs.push((u, v));
            }
        }
    }
    let target = rng.random_range(0..=max_edges.min(pairs.len()));
    for _ in 0..target {
        let i = rng.random_range(0..pairs.len());
        let (u, v) = pairs.swap_remove(i);
        graph.add_edge(u, v, rng.random_range(0..=max_weight)).unwrap();
    }
    graph
}

/// Per-agent counts of owned items the agent values 1 and 0.
pub fn ones_zeros(instance: &Instance, owner: &[usize]) -> Vec<(usize, usize)> {
    let mut counts = vec![(0, 0); instance.agents()];
    for (g, &a) in owner.iter().enumerate() {
        if instance.value(a, g) == 1 {
            counts[a].0 += 1;
        } else {
            counts[a].1 += 1;
        }
    }
    counts
}
