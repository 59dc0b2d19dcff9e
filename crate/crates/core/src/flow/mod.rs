//! Flow networks on acyclic multigraphs, their integer flows, and the
//! Gelfand-Tsetlin networks `G_λ`.

mod glambda;
mod overlay;

pub use glambda::{
    build_g_lambda, check_hypersimplex, check_permutahedron, hypersimplex_vertices, GtNetwork,
};
pub use overlay::{check_overlay_inclusions, hat_mu, hat_overlay, overlay, OverlayReport};

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer value per edge, indexed by edge ordinal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Flow(pub Vec<i64>);

impl Flow {
    pub fn zero(edges: usize) -> Self {
        Flow(vec![0; edges])
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &Flow) -> Flow {
        assert_eq!(self.0.len(), other.0.len(), "flows on different edge sets");
        Flow(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// A directed acyclic multigraph with a netflow (outflow minus inflow) at
/// every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
    netflow: Vec<i64>,
    order: Vec<usize>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(vertices: Vec<String>, edges: Vec<(usize, usize)>, netflow: Vec<i64>) -> Result<Self> {
        let nv = vertices.len();
        if netflow.len() != nv {
            return Err(Error::SizeMismatch {
                expected: nv,
                got: netflow.len(),
            });
        }
        let sum: i64 = netflow.iter().sum();
        if sum != 0 {
            return Err(Error::UnbalancedNetflow { sum });
        }
        let mut out_edges = vec![Vec::new(); nv];
        let mut in_edges = vec![Vec::new(); nv];
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u >= nv || v >= nv {
                return Err(Error::DanglingEdge { from: u, to: v });
            }
            out_edges[u].push(e);
            in_edges[v].push(e);
        }
        // Kahn's algorithm, smallest index first so the order is stable.
        let mut indegree: Vec<usize> = in_edges.iter().map(Vec::len).collect();
        let mut ready: BTreeSet<usize> = (0..nv).filter(|&v| indegree[v] == 0).collect();
        let mut order = Vec::with_capacity(nv);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &e in &out_edges[v] {
                let w = edges[e].1;
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    ready.insert(w);
                }
            }
        }
        if order.len() != nv {
            return Err(Error::CyclicNetwork);
        }
        Ok(FlowNetwork {
            vertices,
            edges,
            netflow,
            order,
            out_edges,
            in_edges,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn netflow(&self) -> &[i64] {
        &self.netflow
    }

    pub fn topological_order(&self) -> &[usize] {
        &self.order
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    /// Same graph, different netflow.
    pub fn with_netflow(&self, netflow: Vec<i64>) -> Result<Self> {
        FlowNetwork::new(self.vertices.clone(), self.edges.clone(), netflow)
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.netflow[v] > 0).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.netflow[v] < 0).collect()
    }

    pub fn zero_flow(&self) -> Flow {
        Flow::zero(self.edges.len())
    }

    /// Checks nonnegativity and conservation `inflow + netflow = outflow`.
    pub fn check_flow(&self, f: &Flow) -> Result<()> {
        let bad = |reason: String| Err(Error::InvalidFlow { reason });
        if f.0.len() != self.edges.len() {
            return bad(format!("{} values for {} edges", f.0.len(), self.edges.len()));
        }
        if let Some(e) = f.0.iter().position(|&x| x < 0) {
            return bad(format!("negative value {} on edge {e}", f.0[e]));
        }
        for v in 0..self.vertices.len() {
            let inflow: i64 = self.in_edges[v].iter().map(|&e| f.0[e]).sum();
            let outflow: i64 = self.out_edges[v].iter().map(|&e| f.0[e]).sum();
            if inflow + self.netflow[v] != outflow {
                return bad(format!(
                    "conservation fails at {}: in {inflow} + net {} != out {outflow}",
                    self.vertices[v], self.netflow[v]
                ));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("network serializes")
    }
}

#[derive(Serialize, Deserialize)]
struct NetworkJson {
    vertices: Vec<String>,
    edges: Vec<[String; 2]>,
    netflow: Vec<i64>,
}

impl Serialize for FlowNetwork {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        NetworkJson {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(u, v)| [self.vertices[u].clone(), self.vertices[v].clone()])
                .collect(),
            netflow: self.netflow.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FlowNetwork {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = NetworkJson::deserialize(d)?;
        let index: HashMap<&str, usize> = j
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        if index.len() != j.vertices.len() {
            return Err(D::Error::custom("duplicate vertex label"));
        }
        let edges = j
            .edges
            .iter()
            .map(|[u, v]| match (index.get(u.as_str()), index.get(v.as_str())) {
                (Some(&a), Some(&b)) => Ok((a, b)),
                _ => Err(D::Error::custom(format!("edge ({u},{v}) references a missing vertex"))),
            })
            .collect::<std::result::Result<_, _>>()?;
        FlowNetwork::new(j.vertices.clone(), edges, j.netflow).map_err(D::Error::custom)
    }
}

struct FlowSearch<'a> {
    net: &'a FlowNetwork,
    values: Vec<i64>,
    out: BTreeSet<Flow>,
}

impl FlowSearch<'_> {
    fn visit(&mut self, pos: usize) {
        let net = self.net;
        if pos == net.order.len() {
            self.out.insert(Flow(self.values.clone()));
            return;
        }
        let v = net.order[pos];
        let inflow: i64 = net.in_edges[v].iter().map(|&e| self.values[e]).sum();
        let need = inflow + net.netflow[v];
        if need < 0 {
            return;
        }
        if net.out_edges[v].is_empty() {
            if need == 0 {
                self.visit(pos + 1);
            }
            return;
        }
        self.distribute(pos, v, 0, need);
    }

    fn distribute(&mut self, pos: usize, v: usize, idx: usize, left: i64) {
        let outs = &self.net.out_edges[v];
        let e = outs[idx];
        if idx + 1 == outs.len() {
            self.values[e] = left;
            self.visit(pos + 1);
        } else {
            for x in 0..=left {
                self.values[e] = x;
                self.distribute(pos, v, idx + 1, left - x);
            }
        }
        self.values[e] = 0;
    }
}

/// All integer flows, found by splitting each vertex's outflow across its
/// out-edges in topological order.
pub fn integer_flows(net: &FlowNetwork) -> BTreeSet<Flow> {
    let mut search = FlowSearch {
        net,
        values: vec![0; net.edges.len()],
        out: BTreeSet::new(),
    };
    search.visit(0);
    search.out
}

/// Vertices of the flow polytope of a network with one source and one sink:
/// the unit path flows scaled by the source netflow. A network with zero
/// netflow has the zero flow as its only vertex.
pub fn flow_vertices(net: &FlowNetwork) -> Result<BTreeSet<Flow>> {
    let (sources, sinks) = (net.sources(), net.sinks());
    if sources.is_empty() && sinks.is_empty() {
        return Ok([net.zero_flow()].into());
    }
    if sources.len() != 1 || sinks.len() != 1 {
        return Err(Error::NotSingleCommodity {
            sources: sources.len(),
            sinks: sinks.len(),
        });
    }
    let (s, t) = (sources[0], sinks[0]);
    let amount = net.netflow[s];
    let mut out = BTreeSet::new();
    let mut path = Vec::new();
    fn walk(net: &FlowNetwork, v: usize, t: usize, amount: i64, path: &mut Vec<usize>, out: &mut BTreeSet<Flow>) {
        if v == t {
            let mut f = net.zero_flow();
            for &e in path.iter() {
                f.0[e] = amount;
            }
            out.insert(f);
            return;
        }
        for &e in &net.out_edges[v] {
            path.push(e);
            walk(net, net.edges[e].1, t, amount, path, out);
            path.pop();
        }
    }
    walk(net, s, t, amount, &mut path, &mut out);
    Ok(out)
}

/// Edgewise sumset of two flow sets.
pub fn flow_sumset(a: &BTreeSet<Flow>, b: &BTreeSet<Flow>) -> BTreeSet<Flow> {
    a.iter()
        .flat_map(|f| b.iter().map(move |g| f.add(g)))
        .collect()
}

/// Integer flows for netflow `a` plus those for `b` are exactly the integer
/// flows for `a + b`.
pub fn check_flow_minkowski(net: &FlowNetwork, a: &[i64], b: &[i64]) -> Result<bool> {
    let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
    if a.len() != b.len() {
        return Err(Error::SizeMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    let fa = integer_flows(&net.with_netflow(a.to_vec())?);
    let fb = integer_flows(&net.with_netflow(b.to_vec())?);
    let fab = integer_flows(&net.with_netflow(sum)?);
    Ok(flow_sumset(&fa, &fb) == fab)
}

/// A DAG on `n` vertices containing the path `0 → 1 → … → n-1` plus
/// `extra` random forward edges (parallel edges allowed). Netflow is zero.
pub fn random_dag<R: Rng>(rng: &mut R, n: usize, extra: usize) -> FlowNetwork {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
    if n >= 2 {
        for _ in 0..extra {
            let u = rng.gen_range(0..n - 1);
            let v = rng.gen_range(u + 1..n);
            edges.push((u, v));
        }
    }
    edges.sort();
    let vertices = (0..n).map(|v| v.to_string()).collect();
    FlowNetwork::new(vertices, edges, vec![0; n]).expect("forward edges are acyclic")
}

/// Nonnegative netflow up to `max` on every vertex but the last, which
/// absorbs the total.
pub fn random_netflow<R: Rng>(rng: &mut R, n: usize, max: i64) -> Vec<i64> {
    let mut a: Vec<i64> = (0..n.saturating_sub(1)).map(|_| rng.gen_range(0..=max)).collect();
    let total: i64 = a.iter().sum();
    a.push(-total);
    a
}

#[derive(Debug, Clone, Serialize)]
pub struct FlowMinkowskiTrial {
    pub network: FlowNetwork,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FlowMinkowskiReport {
    pub seed: u64,
    pub trials: Vec<FlowMinkowskiTrial>,
}

impl FlowMinkowskiReport {
    pub fn ok(&self) -> bool {
        self.trials.iter().all(|t| t.holds)
    }
}

/// Runs [`check_flow_minkowski`] on seeded random 5-vertex DAGs with netflow
/// entries at most 2.
pub fn random_flow_minkowski(seed: u64, trials: usize) -> Result<FlowMinkowskiReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    for _ in 0..trials {
        let extra = *[2usize, 3, 4, 5].choose(&mut rng).expect("nonempty");
        let network = random_dag(&mut rng, 5, extra);
        let a = random_netflow(&mut rng, 5, 2);
        let b = random_netflow(&mut rng, 5, 2);
        let holds = check_flow_minkowski(&network, &a, &b)?;
        out.push(FlowMinkowskiTrial { network, a, b, holds });
    }
    Ok(FlowMinkowskiReport { seed, trials: out })
}
