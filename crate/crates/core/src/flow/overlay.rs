use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{flow_sumset, integer_flows, Flow, FlowNetwork, GtNetwork};
use crate::combinatorics::{ParFamily, Partition};
use crate::error::{Error, Result};
use crate::gt::gt_points;
use crate::minkowski::{embed, minkowski_points};
use crate::triangle::TrianglePoint;

/// `v_{ij}` of `G_{λ^(k)}` sits at `v_{i, j+n-k}` of `G_n`.
fn shift(k: usize, n: usize, (i, j): (usize, usize)) -> (usize, usize) {
    (i, j + n - k)
}

struct Layout {
    n: usize,
    base: GtNetwork,
    /// `(k, G_{λ^(k)})` for `k >= 2`; `G_{λ^(1)}` is a lone vertex.
    summands: Vec<(usize, GtNetwork)>,
}

impl Layout {
    fn new(fam: &ParFamily) -> Result<Self> {
        let n = fam.n();
        if n == 0 {
            return Err(Error::InvalidParameters {
                reason: "empty family".into(),
            });
        }
        let base = GtNetwork::new(&Partition::zero(n))?;
        let summands = (2..=n)
            .map(|k| Ok((k, GtNetwork::new(fam.shape(k))?)))
            .collect::<Result<_>>()?;
        Ok(Layout { n, base, summands })
    }

    fn overlay_netflow(&self) -> Vec<i64> {
        let mut net = vec![0; self.base.vertex_coords().len()];
        for (k, g) in &self.summands {
            for (v, &c) in g.vertex_coords().iter().enumerate() {
                let (i, j) = shift(*k, self.n, c);
                let target = self.base.vertex(i, j).expect("embedded vertex exists");
                net[target] += g.network().netflow()[v];
            }
        }
        net
    }

    fn hat_netflow(&self) -> Vec<i64> {
        let mut net = self.overlay_netflow();
        let moved: i64 = net.iter().filter(|&&x| x < 0).sum();
        for x in net.iter_mut() {
            *x = (*x).max(0);
        }
        if let Some(sink) = self.base.vertex(self.n + 2, self.n + 1) {
            net[sink] += moved;
        }
        net
    }

    fn embed_flow(&self, k: usize, g: &GtNetwork, f: &Flow) -> Flow {
        let mut out = self.base.network().zero_flow();
        for (e, &val) in f.0.iter().enumerate() {
            let (u, v) = g.edge_coords(e);
            let target = self
                .base
                .edge(shift(k, self.n, u), shift(k, self.n, v))
                .expect("embedded edge exists");
            out.0[target] += val;
        }
        out
    }

    /// Routes the demand that summand `k < n` absorbs at `v_{k+2,n+1}` down
    /// the right chain to `v_{n+2,n+1}`.
    fn translate(&self, fam: &ParFamily, f: &Flow) -> Flow {
        let n = self.n;
        let mut out = f.clone();
        for i in 3..=n + 1 {
            let carried: i64 = (2..n.min(i - 1))
                .map(|k| fam.part(k, 1) - fam.part(k, k))
                .sum();
            out.0[self.base.a_edge(i, n + 1)] += carried;
        }
        out
    }
}

/// The summand networks laid over `G_n` with their netflows added.
pub fn overlay(fam: &ParFamily) -> Result<FlowNetwork> {
    let layout = Layout::new(fam)?;
    layout.base.network().with_netflow(layout.overlay_netflow())
}

/// [`overlay`] with every negative netflow moved to `v_{n+2,n+1}`.
pub fn hat_overlay(fam: &ParFamily) -> Result<FlowNetwork> {
    let layout = Layout::new(fam)?;
    layout.base.network().with_netflow(layout.hat_netflow())
}

/// `μ_n = 0` and `μ_k = μ_{k+1} + Σ_{j=0}^{k-1} (λ^{(n-j)}_{k-j} - λ^{(n-j)}_{k-j+1})`.
pub fn hat_mu(fam: &ParFamily) -> Result<Partition> {
    let n = fam.n();
    let mut mu = vec![0i64; n];
    for k in (1..n).rev() {
        let step: i64 = (0..k)
            .map(|j| fam.part(n - j, k - j) - fam.part(n - j, k - j + 1))
            .sum();
        mu[k - 1] = mu[k] + step;
    }
    Partition::new(mu)
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OverlayReport {
    pub family: ParFamily,
    pub mu: Partition,
    pub sumset_count: usize,
    pub overlay_count: usize,
    pub hat_count: usize,
    pub gt_mu_count: usize,
    /// Sums of embedded summand flows are flows of the overlay.
    pub sumset_in_overlay: bool,
    /// Translated overlay flows are flows of the hat network.
    pub overlay_in_hat: bool,
    /// The hat network is `G_μ` and its flows biject with `GT(μ)`.
    pub hat_matches_gt_mu: bool,
    /// Summing patterns and summing their flows induce a bijection between
    /// the lattice points of the two Minkowski sums.
    pub sum_equivalent: bool,
    pub overlay_witness: Option<Flow>,
    pub hat_witness: Option<Flow>,
}

impl OverlayReport {
    pub fn ok(&self) -> bool {
        self.sumset_in_overlay && self.overlay_in_hat && self.hat_matches_gt_mu && self.sum_equivalent
    }

    pub fn is_strict(&self) -> bool {
        self.overlay_witness.is_some() || self.hat_witness.is_some()
    }
}

/// Checks the inclusion chain sumset ⊆ overlay ⊆ hat (after translation) on
/// lattice points and the identification of the hat network with `G_μ`.
/// Meant for small families: the pattern tuples are enumerated outright.
pub fn check_overlay_inclusions(fam: &ParFamily) -> Result<OverlayReport> {
    let n = fam.n();
    let layout = Layout::new(fam)?;
    let overlay_net = layout.base.network().with_netflow(layout.overlay_netflow())?;
    let hat_net = layout.base.network().with_netflow(layout.hat_netflow())?;

    let mut sumset: BTreeSet<Flow> = [layout.base.network().zero_flow()].into();
    for (k, g) in &layout.summands {
        let embedded: BTreeSet<Flow> = g
            .integer_flows()
            .iter()
            .map(|f| layout.embed_flow(*k, g, f))
            .collect();
        sumset = flow_sumset(&sumset, &embedded);
    }
    let overlay_flows = integer_flows(&overlay_net);
    let hat_flows = integer_flows(&hat_net);
    let translated: BTreeSet<Flow> = overlay_flows
        .iter()
        .map(|f| layout.translate(fam, f))
        .collect();

    let mu = hat_mu(fam)?;
    let g_mu = GtNetwork::new(&mu)?;
    let gt_mu = gt_points(&mu);
    let hat_matches_gt_mu = hat_net.netflow() == g_mu.network().netflow() && {
        let images: Result<BTreeSet<TrianglePoint>> =
            hat_flows.iter().map(|f| g_mu.flow_to_gt(f)).collect();
        images.map(|s| s == gt_mu.iter().cloned().collect()).unwrap_or(false)
            && hat_flows.len() == gt_mu.len()
    };

    // Pair each tuple of patterns with its tuple of flows and check that the
    // two sums determine each other.
    let mut tuples: Vec<(TrianglePoint, Flow)> =
        vec![(TrianglePoint::zero(n), layout.base.network().zero_flow())];
    let first = embed(n, &TrianglePoint::from_entries(1, vec![fam.part(1, 1)])?)?;
    for (p, _) in tuples.iter_mut() {
        *p = p.add(&first);
    }
    for (k, g) in &layout.summands {
        let pairs: Vec<(TrianglePoint, Flow)> = gt_points(fam.shape(*k))
            .iter()
            .map(|x| {
                let f = g.gt_to_flow(x)?;
                Ok((embed(n, x)?, layout.embed_flow(*k, g, &f)))
            })
            .collect::<Result<_>>()?;
        tuples = tuples
            .iter()
            .flat_map(|(p, f)| pairs.iter().map(move |(q, h)| (p.add(q), f.add(h))))
            .collect();
    }
    let mut forward: BTreeMap<TrianglePoint, Flow> = BTreeMap::new();
    let mut backward: BTreeMap<Flow, TrianglePoint> = BTreeMap::new();
    let mut consistent = true;
    for (p, f) in tuples {
        consistent &= *forward.entry(p.clone()).or_insert_with(|| f.clone()) == f;
        consistent &= *backward.entry(f).or_insert_with(|| p.clone()) == p;
    }
    let sum_equivalent = consistent
        && backward.keys().cloned().collect::<BTreeSet<_>>() == sumset
        && forward.keys().cloned().collect::<BTreeSet<_>>()
            == minkowski_points(fam).iter().cloned().collect();

    Ok(OverlayReport {
        family: fam.clone(),
        mu,
        sumset_count: sumset.len(),
        overlay_count: overlay_flows.len(),
        hat_count: hat_flows.len(),
        gt_mu_count: gt_mu.len(),
        sumset_in_overlay: sumset.is_subset(&overlay_flows),
        overlay_in_hat: translated.is_subset(&hat_flows),
        hat_matches_gt_mu,
        sum_equivalent,
        overlay_witness: overlay_flows.difference(&sumset).next().cloned(),
        hat_witness: hat_flows.difference(&translated).next().cloned(),
    })
}
