//! Backhaul topologies for the seven deployment modes, UE association,
//! per-node SNR thresholds and decode-and-forward end-to-end outage.
//!
//! Nodes sit on a line: the donor at 0, node 1 at one hop length and node 2
//! at two. A UE is served over a mmWave access link by one node, which is
//! reached from the donor over one or more backhaul routes. The end-to-end
//! link is up when every hop of at least one route and the access link are
//! above their thresholds.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::error::{Error, Result};
use crate::hybrid::{hard_select, mrc_combine, outage_decision};
use crate::linkbudget::{Link, Technology};
use crate::scenario::Scenario;

/// Receiver strategy on a backhaul hop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HopStrategy {
    Hard,
    Mrc,
    /// The hop carries one link only.
    Single,
}

impl fmt::Display for HopStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HopStrategy::Hard => "hard",
            HopStrategy::Mrc => "mrc",
            HopStrategy::Single => "single",
        })
    }
}

/// Accepts the strategies that apply to a hop carrying both links.
impl FromStr for HopStrategy {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "hard" => Ok(HopStrategy::Hard),
            "mrc" => Ok(HopStrategy::Mrc),
            _ => Err(format!("unknown hop strategy `{s}`")),
        }
    }
}

/// Deployment mode 1 to 7.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModeId(u8);

impl ModeId {
    pub fn new(id: u8) -> Result<ModeId> {
        if (1..=7).contains(&id) {
            Ok(ModeId(id))
        } else {
            Err(Error::param("mode", id as f64, "mode must be 1..=7"))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = ModeId> {
        (1..=7).map(ModeId)
    }
}

impl fmt::Display for ModeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mode{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinkSet {
    pub fso: bool,
    pub subthz: bool,
}

impl LinkSet {
    pub const HYBRID: LinkSet = LinkSet {
        fso: true,
        subthz: true,
    };
    pub const FSO: LinkSet = LinkSet {
        fso: true,
        subthz: false,
    };
    pub const SUBTHZ: LinkSet = LinkSet {
        fso: false,
        subthz: true,
    };
}

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub label: &'static str,
    /// Position along the deployment line (m).
    pub position: f64,
    /// UEs served directly by this node.
    pub ues: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hop {
    pub from: usize,
    pub to: usize,
    pub length: f64,
    pub links: LinkSet,
    pub strategy: HopStrategy,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    pub mode: ModeId,
    /// Node 0 is the donor.
    pub nodes: Vec<Node>,
    pub hops: Vec<Hop>,
    /// Serving node for modes without handover.
    pub fixed_serving: Option<usize>,
    pub access_technology: Technology,
}

/// SNR threshold `2^(ues·rate) − 1` for a node carrying `ues_served` UEs.
pub fn node_threshold(ues_served: u32, rate_per_ue: f64) -> f64 {
    (ues_served as f64 * rate_per_ue).exp2() - 1.0
}

impl Topology {
    /// Checks hop endpoints, link sets and that the hop graph is acyclic.
    pub fn validate(&self) -> Result<()> {
        let n = self.nodes.len();
        if n == 0 {
            return Err(Error::Unsupported("topology without a donor".into()));
        }
        for h in &self.hops {
            if h.from >= n || h.to >= n || h.from == h.to {
                return Err(Error::Unsupported(format!("hop {}→{} is invalid", h.from, h.to)));
            }
            if !h.links.fso && !h.links.subthz {
                return Err(Error::Unsupported(format!(
                    "hop {}→{} carries no link",
                    h.from, h.to
                )));
            }
        }
        for i in 0..n {
            if self.reachable_from(i).contains(&i) {
                return Err(Error::Unsupported("hop graph has a cycle".into()));
            }
        }
        if let Some(s) = self.fixed_serving {
            if s >= n {
                return Err(Error::Unsupported(format!("serving node {s} does not exist")));
            }
        }
        Ok(())
    }

    /// Nodes reachable from `node` over one or more hops.
    fn reachable_from(&self, node: usize) -> Vec<usize> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![node];
        let mut out = Vec::new();
        while let Some(u) = stack.pop() {
            for h in self.hops.iter().filter(|h| h.from == u) {
                if !seen[h.to] {
                    seen[h.to] = true;
                    out.push(h.to);
                    stack.push(h.to);
                }
            }
        }
        out
    }

    /// UEs carried by `node`: its own plus those of every downstream node.
    pub fn downstream_load(&self, node: usize) -> u32 {
        self.nodes[node].ues
            + self
                .reachable_from(node)
                .into_iter()
                .map(|i| self.nodes[i].ues)
                .sum::<u32>()
    }

    /// Threshold of the hop, set by the load of its receiving node.
    pub fn hop_threshold(&self, hop: usize, rate_per_ue: f64) -> f64 {
        node_threshold(self.downstream_load(self.hops[hop].to), rate_per_ue)
    }

    /// Every hop sequence from the donor to `node`, as hop indices.
    pub fn routes(&self, node: usize) -> Vec<Vec<usize>> {
        fn walk(t: &Topology, at: usize, target: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if at == target {
                out.push(path.clone());
                return;
            }
            for (i, h) in t.hops.iter().enumerate() {
                if h.from == at {
                    path.push(i);
                    walk(t, h.to, target, path, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        walk(self, 0, node, &mut Vec::new(), &mut out);
        out
    }

    pub fn handover_enabled(&self) -> bool {
        self.fixed_serving.is_none()
    }
}

/// Builds the topology of one deployment mode.
///
/// Hybrid hops use `scenario.network.hop_strategy`. Node 2 is kept in modes
/// 5 and 6 so that node 1 carries its traffic.
pub fn build_mode(mode: ModeId, scenario: &Scenario) -> Result<Topology> {
    let l = scenario.geometry.hop_length;
    if !(l >= crate::linkbudget::MIN_RF_DISTANCE) {
        return Err(Error::param(
            "geometry.hop_length",
            l,
            "backhaul hops must be at least 1 m",
        ));
    }
    let ues = scenario.service.ues_per_node;
    let node = |label, position| Node { label, position, ues };
    let hybrid = scenario.network.hop_strategy;
    let hop = |from, to, length, links: LinkSet| Hop {
        from,
        to,
        length,
        links,
        strategy: if links == LinkSet::HYBRID {
            hybrid
        } else {
            HopStrategy::Single
        },
    };
    let donor = node("donor", 0.0);
    let n1 = node("node1", l);
    let n2 = node("node2", 2.0 * l);
    let (nodes, hops, fixed) = match mode.get() {
        1 => (vec![donor], vec![], None),
        2 => (
            vec![donor, n1, n2],
            vec![hop(0, 1, l, LinkSet::HYBRID), hop(1, 2, l, LinkSet::HYBRID)],
            None,
        ),
        3 => (
            vec![donor, n1, n2],
            vec![
                hop(0, 1, l, LinkSet::SUBTHZ),
                hop(1, 2, l, LinkSet::SUBTHZ),
                hop(0, 2, 2.0 * l, LinkSet::FSO),
            ],
            None,
        ),
        4 => (vec![donor, n2], vec![hop(0, 1, 2.0 * l, LinkSet::HYBRID)], None),
        5 => (
            vec![donor, n1, n2],
            vec![hop(0, 1, l, LinkSet::HYBRID), hop(1, 2, l, LinkSet::HYBRID)],
            Some(1),
        ),
        6 => (
            vec![donor, n1, n2],
            vec![hop(0, 1, l, LinkSet::SUBTHZ), hop(1, 2, l, LinkSet::SUBTHZ)],
            Some(1),
        ),
        7 => (
            vec![donor, n2],
            vec![hop(0, 1, 2.0 * l, LinkSet::HYBRID)],
            Some(1),
        ),
        _ => unreachable!("ModeId is range-checked"),
    };
    let t = Topology {
        mode,
        nodes,
        hops,
        fixed_serving: fixed,
        access_technology: Technology::MmWave,
    };
    t.validate()?;
    Ok(t)
}

fn slant(scenario: &Scenario, node_position: f64, ue_position: f64) -> f64 {
    let g = &scenario.geometry;
    (g.node_height - g.ue_height).hypot(ue_position - node_position)
}

/// Serving node for a UE at `ue_position`: the fixed node where there is
/// one, otherwise the node with the best mean access SNR, which with
/// identical access parameters is the nearest. Ties go to the lower index.
pub fn associate_ue(topology: &Topology, ue_position: f64, scenario: &Scenario) -> usize {
    if let Some(s) = topology.fixed_serving {
        return s;
    }
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (i, n) in topology.nodes.iter().enumerate() {
        let d = slant(scenario, n.position, ue_position);
        if d < best_d {
            best = i;
            best_d = d;
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HopSnr {
    pub hop: usize,
    pub snr: f64,
    pub threshold: f64,
}

/// One end-to-end realisation.
#[derive(Debug, Clone, PartialEq)]
pub struct E2eSample {
    /// Hops on any route to the serving node, in hop-index order.
    pub per_hop_snr: Vec<HopSnr>,
    pub access_snr: f64,
    pub access_threshold: f64,
    pub serving_node: usize,
    pub routes: Vec<Vec<usize>>,
    pub outage: bool,
}

impl E2eSample {
    /// Outage derived from the stored SNRs and thresholds.
    pub fn recompute_outage(&self) -> bool {
        let hop_ok = |i: usize| {
            self.per_hop_snr
                .iter()
                .find(|h| h.hop == i)
                .map(|h| !outage_decision(h.snr, h.threshold))
                .unwrap_or(false)
        };
        let backhaul_ok = self.routes.iter().any(|r| r.iter().all(|&i| hop_ok(i)));
        !backhaul_ok || outage_decision(self.access_snr, self.access_threshold)
    }
}

#[derive(Debug, Clone)]
struct HopSampler {
    index: usize,
    fso: Option<Link>,
    thz: Option<Link>,
    strategy: HopStrategy,
    threshold: f64,
}

impl HopSampler {
    #[inline]
    fn sample_snr<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let gf = self.fso.as_ref().map(|l| l.sample_snr(rng));
        let gt = self.thz.as_ref().map(|l| l.sample_snr(rng));
        match (gf, gt) {
            (Some(f), Some(t)) => match self.strategy {
                HopStrategy::Mrc => mrc_combine(f, t),
                _ => hard_select(f, t).1,
            },
            (Some(x), None) | (None, Some(x)) => x,
            (None, None) => unreachable!("validated hop carries a link"),
        }
    }
}

/// Pre-built samplers for one topology and UE position.
#[derive(Debug, Clone)]
pub struct E2eSampler {
    serving: usize,
    routes: Vec<Vec<usize>>,
    /// Route membership as bitmasks over `hops` positions.
    route_masks: Vec<u64>,
    hops: Vec<HopSampler>,
    access: Link,
    access_threshold: f64,
}

impl E2eSampler {
    pub fn new(topology: &Topology, scenario: &Scenario, ue_position: f64) -> Result<E2eSampler> {
        topology.validate()?;
        if topology.hops.len() > 64 {
            return Err(Error::Unsupported("at most 64 hops are supported".into()));
        }
        let serving = associate_ue(topology, ue_position, scenario);
        let routes = topology.routes(serving);
        if routes.is_empty() {
            return Err(Error::Unsupported(format!(
                "{}: serving node {serving} is unreachable",
                topology.mode
            )));
        }
        let mut used: Vec<usize> = routes.iter().flatten().copied().collect();
        used.sort_unstable();
        used.dedup();
        let rate = scenario.service.rate_per_ue;
        let mut hops = Vec::with_capacity(used.len());
        for &i in &used {
            let h = &topology.hops[i];
            hops.push(HopSampler {
                index: i,
                fso: if h.links.fso {
                    Some(Link::fso(scenario, h.length)?)
                } else {
                    None
                },
                thz: if h.links.subthz {
                    Some(Link::subthz(scenario, h.length)?)
                } else {
                    None
                },
                strategy: h.strategy,
                threshold: topology.hop_threshold(i, rate),
            });
        }
        let route_masks = routes
            .iter()
            .map(|r| {
                r.iter()
                    .map(|i| 1u64 << used.binary_search(i).expect("used hop"))
                    .fold(0, |a, b| a | b)
            })
            .collect();
        let node = &topology.nodes[serving];
        let access = Link::mmwave(scenario, slant(scenario, node.position, ue_position))?;
        Ok(E2eSampler {
            serving,
            routes,
            route_masks,
            hops,
            access,
            access_threshold: node_threshold(1, rate),
        })
    }

    pub fn serving_node(&self) -> usize {
        self.serving
    }

    /// Draws hops in hop-index order, then the access link, and returns the
    /// outage flag only.
    #[inline]
    pub fn sample_outage<R: Rng + ?Sized>(&self, rng: &mut R) -> bool {
        let mut up = 0u64;
        for (k, h) in self.hops.iter().enumerate() {
            if !outage_decision(h.sample_snr(rng), h.threshold) {
                up |= 1 << k;
            }
        }
        let access = self.access.sample_snr(rng);
        let backhaul_ok = self.route_masks.iter().any(|&m| m & !up == 0);
        !backhaul_ok || outage_decision(access, self.access_threshold)
    }

    /// Full realisation; consumes the stream exactly as `sample_outage`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> E2eSample {
        let per_hop_snr: Vec<HopSnr> = self
            .hops
            .iter()
            .map(|h| HopSnr {
                hop: h.index,
                snr: h.sample_snr(rng),
                threshold: h.threshold,
            })
            .collect();
        let access_snr = self.access.sample_snr(rng);
        let mut s = E2eSample {
            per_hop_snr,
            access_snr,
            access_threshold: self.access_threshold,
            serving_node: self.serving,
            routes: self.routes.clone(),
            outage: false,
        };
        s.outage = s.recompute_outage();
        s
    }
}

/// Draws one end-to-end realisation for a UE at `ue_position`.
pub fn e2e_sample<R: Rng + ?Sized>(
    topology: &Topology,
    scenario: &Scenario,
    ue_position: f64,
    rng: &mut R,
) -> Result<E2eSample> {
    Ok(E2eSampler::new(topology, scenario, ue_position)?.sample(rng))
}
