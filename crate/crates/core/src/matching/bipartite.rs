use super::graph::{Graph, Matching, Side};
use crate::error::{Error, Result};

struct Sides {
    left: Vec<usize>,
    right: Vec<usize>,
    /// column of each right vertex, `usize::MAX` for left vertices
    column: Vec<usize>,
}

fn split(graph: &Graph) -> Result<Sides> {
    let sides = graph.sides().ok_or(Error::NotBipartite)?;
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut column = vec![usize::MAX; sides.len()];
    for (v, side) in sides.iter().enumerate() {
        match side {
            Side::Left => left.push(v),
            Side::Right => {
                column[v] = right.len();
                right.push(v);
            }
        }
    }
    Ok(Sides {
        left,
        right,
        column,
    })
}

/// Left-vertex adjacency in edge-index order: `(edge, column)`.
fn adjacency(graph: &Graph, sides: &Sides) -> Vec<Vec<(usize, usize)>> {
    let mut row_of = vec![usize::MAX; graph.vertex_count()];
    for (r, &v) in sides.left.iter().enumerate() {
        row_of[v] = r;
    }
    let mut adj = vec![Vec::new(); sides.left.len()];
    for (e, edge) in graph.edges().iter().enumerate() {
        let (l, r) = if sides.column[edge.u] == usize::MAX {
            (edge.u, edge.v)
        } else {
            (edge.v, edge.u)
        };
        adj[row_of[l]].push((e, sides.column[r]));
    }
    adj
}

/// Maximum-cardinality matching by repeated augmenting-path search
/// (left vertices in ascending order, edges in index order).
pub fn max_cardinality_bipartite(graph: &Graph) -> Result<Matching> {
    let sides = split(graph)?;
    let adj = adjacency(graph, &sides);
    // column -> (row, edge)
    let mut owner: Vec<Option<(usize, usize)>> = vec![None; sides.right.len()];
    let mut seen = vec![false; sides.right.len()];

    fn augment(
        row: usize,
        adj: &[Vec<(usize, usize)>],
        owner: &mut [Option<(usize, usize)>],
        seen: &mut [bool],
    ) -> bool {
        for &(e, col) in &adj[row] {
            if seen[col] {
                continue;
            }
            seen[col] = true;
            let free = match owner[col] {
                None => true,
                Some((other, _)) => augment(other, adj, owner, seen),
            };
            if free {
                owner[col] = Some((row, e));
                return true;
            }
        }
        false
    }

    for row in 0..sides.left.len() {
        seen.iter_mut().for_each(|s| *s = false);
        augment(row, &adj, &mut owner, &mut seen);
    }
    let mut edges: Vec<usize> = owner.iter().flatten().map(|&(_, e)| e).collect();
    edges.sort_unstable();
    Ok(Matching::from_sorted_unchecked(edges))
}

/// Maximum-weight (not necessarily perfect) matching via the Hungarian method
/// with potentials. Absent pairs are priced at weight 0 and dropped afterwards,
/// which is exact because all weights are non-negative. Zero-weight edges that
/// the assignment uses are kept.
pub fn max_weight_bipartite(graph: &Graph) -> Result<Matching> {
    let sides = split(graph)?;
    let adj = adjacency(graph, &sides);
    let rows = sides.left.len();
    let cols = sides.right.len().max(rows);
    if rows == 0 || graph.edges().is_empty() {
        return Ok(Matching::default());
    }

    // cost[i][j], 1-based rows/cols as in the classic formulation
    let mut cost = vec![vec![0i128; cols + 1]; rows + 1];
    let mut edge_at = vec![vec![usize::MAX; cols + 1]; rows + 1];
    for (r, list) in adj.iter().enumerate() {
        for &(e, c) in list {
            cost[r + 1][c + 1] = -(graph.edge(e).weight as i128);
            edge_at[r + 1][c + 1] = e;
        }
    }

    const INF: i128 = i128::MAX / 4;
    let mut u = vec![0i128; rows + 1];
    let mut v = vec![0i128; cols + 1];
    let mut p = vec![0usize; cols + 1];
    let mut way = vec![0usize; cols + 1];
    for i in 1..=rows {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![INF; cols + 1];
        let mut used = vec![false; cols + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = INF;
            let mut j1 = 0usize;
            for j in 1..=cols {
                if used[j] {
                    continue;
                }
                let cur = cost[i0][j] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=cols {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut edges: Vec<usize> = (1..=cols)
        .filter(|&j| p[j] != 0)
        .map(|j| edge_at[p[j]][j])
        .filter(|&e| e != usize::MAX)
        .collect();
    edges.sort_unstable();
    Ok(Matching::from_sorted_unchecked(edges))
}
