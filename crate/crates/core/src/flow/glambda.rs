use std::collections::{BTreeSet, HashMap};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{flow_vertices, integer_flows, Flow, FlowNetwork};
use crate::combinatorics::{Partition, Permutation};
use crate::error::{Error, Result};
use crate::gt::gt_system;
use crate::triangle::TrianglePoint;

type Vertex = (usize, usize);

/// `G_λ` together with the bookkeeping that names its vertices `v_{ij}` and
/// its edges by their endpoints.
#[derive(Debug, Clone)]
pub struct GtNetwork {
    lambda: Partition,
    network: FlowNetwork,
    coords: Vec<Vertex>,
    vertex_at: HashMap<Vertex, usize>,
    edge_at: HashMap<(Vertex, Vertex), usize>,
}

fn label((i, j): Vertex) -> String {
    format!("v{i},{j}")
}

/// Vertices sorted by `(i, j)` and edges in ordinal order: the `a` edges
/// `v_{ij} → v_{i+1,j}`, the right chain, the `b` edges
/// `v_{ij} → v_{i+1,j+1}`, and the left chain.
fn skeleton(n: usize) -> (Vec<Vertex>, Vec<(Vertex, Vertex)>) {
    if n == 1 {
        return (vec![(2, 2)], vec![]);
    }
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut inner = Vec::new();
    for i in 2..=n {
        for j in i..=n {
            inner.push((i, j));
        }
    }
    vertices.extend(&inner);
    vertices.extend((3..=n + 2).map(|i| (i, i - 1)));
    vertices.extend((3..=n + 1).map(|i| (i, n + 1)));
    vertices.sort();

    let mut edges = Vec::new();
    edges.extend(inner.iter().map(|&(i, j)| ((i, j), (i + 1, j))));
    edges.extend((3..=n + 1).map(|i| ((i, n + 1), (i + 1, n + 1))));
    edges.extend(inner.iter().map(|&(i, j)| ((i, j), (i + 1, j + 1))));
    edges.extend((3..=n + 1).map(|i| ((i, i - 1), (i + 1, i))));
    (vertices, edges)
}

impl GtNetwork {
    pub fn new(lambda: &Partition) -> Result<Self> {
        let n = lambda.len();
        if n == 0 {
            return Err(Error::InvalidParameters {
                reason: "G_λ needs a partition with at least one part".into(),
            });
        }
        let (coords, edge_list) = skeleton(n);
        let vertex_at: HashMap<Vertex, usize> =
            coords.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let mut netflow = vec![0; coords.len()];
        if n >= 2 {
            for j in 2..=n {
                netflow[vertex_at[&(2, j)]] = lambda.part(j - 1) - lambda.part(j);
            }
            netflow[vertex_at[&(n + 2, n + 1)]] = lambda.part(n) - lambda.part(1);
        }
        let edges: Vec<(usize, usize)> = edge_list
            .iter()
            .map(|(u, v)| (vertex_at[u], vertex_at[v]))
            .collect();
        let edge_at = edge_list.iter().enumerate().map(|(e, &uv)| (uv, e)).collect();
        let network = FlowNetwork::new(coords.iter().copied().map(label).collect(), edges, netflow)?;
        Ok(GtNetwork {
            lambda: lambda.clone(),
            network,
            coords,
            vertex_at,
            edge_at,
        })
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    pub fn network(&self) -> &FlowNetwork {
        &self.network
    }

    /// `(i, j)` of every vertex, in vertex order.
    pub fn vertex_coords(&self) -> &[Vertex] {
        &self.coords
    }

    pub fn vertex(&self, i: usize, j: usize) -> Option<usize> {
        self.vertex_at.get(&(i, j)).copied()
    }

    pub fn edge(&self, from: Vertex, to: Vertex) -> Option<usize> {
        self.edge_at.get(&(from, to)).copied()
    }

    /// Endpoints of edge `e` as vertex coordinates.
    pub fn edge_coords(&self, e: usize) -> (Vertex, Vertex) {
        let (u, v) = self.network.edges()[e];
        (self.coords[u], self.coords[v])
    }

    /// Edge carrying `a_{ij}`; `j = n+1` gives the right chain.
    pub fn a_edge(&self, i: usize, j: usize) -> usize {
        self.edge((i, j), (i + 1, j))
            .unwrap_or_else(|| panic!("no edge a_{i},{j}"))
    }

    /// Edge carrying `b_{ij}`; `j = i-1` gives the left chain.
    pub fn b_edge(&self, i: usize, j: usize) -> usize {
        self.edge((i, j), (i + 1, j + 1))
            .unwrap_or_else(|| panic!("no edge b_{i},{j}"))
    }

    pub fn integer_flows(&self) -> BTreeSet<Flow> {
        integer_flows(&self.network)
    }

    pub fn gt_to_flow(&self, x: &TrianglePoint) -> Result<Flow> {
        let n = self.n();
        if x.size() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                got: x.size(),
            });
        }
        if let Some(c) = gt_system(&self.lambda).first_violation(x) {
            return Err(Error::NotInPolytope {
                reason: format!("{c}"),
            });
        }
        let mut f = self.network.zero_flow();
        for i in 2..=n {
            for j in i..=n {
                f.0[self.a_edge(i, j)] = x.get(i - 1, j - 1) - x.get(i, j);
                f.0[self.b_edge(i, j)] = x.get(i, j) - x.get(i - 1, j);
            }
        }
        if n >= 2 {
            // Chain values follow from conservation.
            let (first, last) = (self.lambda.part(1), self.lambda.part(n));
            for i in 3..=n + 1 {
                f.0[self.a_edge(i, n + 1)] = x.get(i - 1, n) - last;
                f.0[self.b_edge(i, i - 1)] = first - x.get(i - 1, i - 1);
            }
        }
        debug_assert!(self.network.check_flow(&f).is_ok());
        Ok(f)
    }

    /// `x_{ij} = λ_j + Σ_{k=2}^{i} b_{kj}`.
    pub fn flow_to_gt(&self, f: &Flow) -> Result<TrianglePoint> {
        self.network.check_flow(f)?;
        let n = self.n();
        let mut x = TrianglePoint::zero(n);
        for j in 1..=n {
            x.set(1, j, self.lambda.part(j));
        }
        for i in 2..=n {
            for j in i..=n {
                x.set(i, j, x.get(i - 1, j) + f.0[self.b_edge(i, j)]);
            }
        }
        Ok(x)
    }

    /// `x_{ij} = λ_{j-i+1} - Σ_{k=0}^{i-2} a_{i-k,j-k}`.
    pub fn flow_to_gt_via_a(&self, f: &Flow) -> Result<TrianglePoint> {
        self.network.check_flow(f)?;
        let n = self.n();
        let mut x = TrianglePoint::zero(n);
        for i in 1..=n {
            for j in i..=n {
                let drop: i64 = (0..i - 1).map(|k| f.0[self.a_edge(i - k, j - k)]).sum();
                x.set(i, j, self.lambda.part(j - i + 1) - drop);
            }
        }
        Ok(x)
    }

    /// Each edge `v_{ij} → v_{i+1,j}` (right chain included) contributes its
    /// flow to coordinate `i-1`; all other edges contribute nothing.
    pub fn gwt(&self, f: &Flow) -> Vec<i64> {
        let mut w = vec![0; self.n()];
        for (e, &val) in f.0.iter().enumerate() {
            let ((i, j), (i2, j2)) = self.edge_coords(e);
            if i2 == i + 1 && j2 == j {
                w[i - 2] += val;
            }
        }
        w
    }

    /// `gwt(f) + λ_n·1`, which equals `wt` of the corresponding pattern.
    pub fn shifted_gwt(&self, f: &Flow) -> Vec<i64> {
        let last = self.lambda.part(self.n());
        self.gwt(f).into_iter().map(|v| v + last).collect()
    }
}

pub fn build_g_lambda(lambda: &Partition) -> Result<FlowNetwork> {
    Ok(GtNetwork::new(lambda)?.network)
}

/// 0/1 vectors of length `n` with `k` ones.
pub fn hypersimplex_vertices(k: usize, n: usize) -> BTreeSet<Vec<i64>> {
    (0u64..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).map(|i| (m >> i & 1) as i64).collect())
        .collect()
}

fn unit_column_image(k: usize, n: usize) -> Result<BTreeSet<Vec<i64>>> {
    let g = GtNetwork::new(&Partition::column(k, n))?;
    Ok(flow_vertices(g.network())?
        .iter()
        .map(|f| g.shifted_gwt(f))
        .collect())
}

/// The weights of the path flows of `G_{1^k 0^{n-k}}` are the vertices of the
/// hypersimplex `Δ_{k,n}`. Weights are taken after the `λ_n·1` shift, which
/// only matters for `k = n`.
pub fn check_hypersimplex(k: usize, n: usize) -> Result<bool> {
    if k < 1 || k > n {
        return Err(Error::InvalidParameters {
            reason: format!("need 1 <= k <= n, got k={k}, n={n}"),
        });
    }
    Ok(unit_column_image(k, n)? == hypersimplex_vertices(k, n))
}

/// Compares support functions of the permutahedron of `λ` and of
/// `Σ_k (λ_k - λ_{k+1}) Δ_{k,n}` on seeded random directions with distinct
/// entries.
pub fn check_permutahedron(lambda: &Partition, trials: usize, seed: u64) -> Result<bool> {
    let n = lambda.len();
    if n == 0 {
        return Err(Error::InvalidParameters {
            reason: "empty partition".into(),
        });
    }
    let images: Vec<BTreeSet<Vec<i64>>> = (1..=n)
        .map(|k| unit_column_image(k, n))
        .collect::<Result<_>>()?;
    let perms = Permutation::all(n);
    let dot = |c: &[i64], v: &[i64]| -> i64 { c.iter().zip(v).map(|(a, b)| a * b).sum() };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = 10 * n + 1;
    for _ in 0..trials {
        let c: Vec<i64> = rand::seq::index::sample(&mut rng, 2 * span, n)
            .iter()
            .map(|v| v as i64 - span as i64)
            .collect();
        let orbit = perms
            .iter()
            .map(|w| {
                let v: Vec<i64> = (1..=n).map(|i| lambda.part(w.at(i))).collect();
                dot(&c, &v)
            })
            .max()
            .expect("S_n is nonempty");
        let sum: i64 = (1..=n)
            .map(|k| {
                let best = images[k - 1].iter().map(|v| dot(&c, v)).max().unwrap_or(0);
                (lambda.part(k) - lambda.part(k + 1)) * best
            })
            .sum();
        if orbit != sum {
            return Ok(false);
        }
    }
    Ok(true)
}
