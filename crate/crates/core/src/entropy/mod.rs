//! Core entropy of quadratic parameters and the growth of biaccessible angles.

pub mod perron;

use std::collections::HashMap;

use serde::Serialize;

use crate::circle::{orbit, Angle, Arc};
use crate::error::{Error, Result};
use crate::itinerary::{lamination, Lamination};

/// Node count up to which the characteristic polynomial is used.
pub const EXACT_NODE_LIMIT: usize = 64;

/// Transition graph on unordered pairs of postcritical angles.
#[derive(Clone, Debug, Serialize)]
pub struct PairGraph {
    pub theta_c: Angle,
    /// The orbit of `theta_c`, in orbit order.
    pub orbit: Vec<Angle>,
    /// Index pairs `(i, j)` into `orbit` with `i < j`, sorted.
    pub nodes: Vec<(usize, usize)>,
    pub separated: Vec<bool>,
    /// Successors of each node, repeated for multiplicity.
    pub edges: Vec<Vec<usize>>,
}

impl PairGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node_angles(&self, node: usize) -> (&Angle, &Angle) {
        let (i, j) = self.nodes[node];
        (&self.orbit[i], &self.orbit[j])
    }

    /// Adjacency matrix in sparse row form.
    pub fn rows(&self) -> Vec<Vec<(usize, u32)>> {
        self.edges
            .iter()
            .map(|succ| {
                let mut row: Vec<(usize, u32)> = Vec::new();
                for &t in succ {
                    match row.iter_mut().find(|(c, _)| *c == t) {
                        Some(entry) => entry.1 += 1,
                        None => row.push((t, 1)),
                    }
                }
                row.sort();
                row
            })
            .collect()
    }

    pub fn matrix(&self) -> Vec<Vec<u32>> {
        let n = self.node_count();
        self.rows()
            .into_iter()
            .map(|row| {
                let mut dense = vec![0; n];
                for (c, w) in row {
                    dense[c] = w;
                }
                dense
            })
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Node<'a> {
            pair: [&'a Angle; 2],
            separated: bool,
            targets: Vec<[&'a Angle; 2]>,
        }
        let nodes: Vec<Node> = (0..self.node_count())
            .map(|k| {
                let (a, b) = self.node_angles(k);
                Node {
                    pair: [a, b],
                    separated: self.separated[k],
                    targets: self.edges[k]
                        .iter()
                        .map(|&t| {
                            let (x, y) = self.node_angles(t);
                            [x, y]
                        })
                        .collect(),
                }
            })
            .collect();
        Ok(serde_json::to_string_pretty(&serde_json::json!({
            "theta_c": self.theta_c,
            "nodes": nodes,
            "matrix": self.matrix(),
        }))?)
    }
}

/// Both critical angles lie strictly inside opposite arcs cut by the pair.
fn separates(x: &Angle, y: &Angle, leaf: &[Angle; 2]) -> bool {
    if leaf.iter().any(|e| e == x || e == y) {
        return false;
    }
    let arc = Arc::open(x.clone(), y.clone());
    arc.contains(&leaf[0]) != arc.contains(&leaf[1])
}

pub fn pair_graph(theta_c: &Angle) -> PairGraph {
    let points = orbit(theta_c, 2).expect("degree 2 is valid").points;
    let leaf: [Angle; 2] = theta_c.preimages(2).try_into().expect("two preimages");
    let position: HashMap<&Angle, usize> = points.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let n = points.len();
    let nodes: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let node_of = |x: &Angle, y: &Angle| -> Option<usize> {
        let (i, j) = (position[x], position[y]);
        if i == j {
            return None;
        }
        nodes.binary_search(&(i.min(j), i.max(j))).ok()
    };
    let mut separated = Vec::with_capacity(nodes.len());
    let mut edges = Vec::with_capacity(nodes.len());
    for &(i, j) in &nodes {
        let (x, y) = (&points[i], &points[j]);
        let (dx, dy) = (x.times(2), y.times(2));
        let split = separates(x, y, &leaf);
        let targets: Vec<usize> = if split {
            [node_of(&dx, theta_c), node_of(&dy, theta_c)]
                .into_iter()
                .flatten()
                .collect()
        } else {
            node_of(&dx, &dy).into_iter().collect()
        };
        separated.push(split);
        edges.push(targets);
    }
    PairGraph {
        theta_c: theta_c.clone(),
        orbit: points,
        nodes,
        separated,
        edges,
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SpectralRadius {
    /// Bisection on the exact characteristic polynomial, when small enough.
    pub exact: Option<f64>,
    pub power: f64,
}

impl SpectralRadius {
    pub fn value(&self) -> f64 {
        self.exact.unwrap_or(self.power)
    }
}

pub fn spectral_radius(g: &PairGraph, tol: f64) -> Result<SpectralRadius> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Config("tolerance must be positive".into()));
    }
    let rows = g.rows();
    let exact =
        (rows.len() <= EXACT_NODE_LIMIT).then(|| perron::perron_root_exact(&rows, tol / 2.0));
    let power = perron::perron_root_power(&rows, tol / 2.0, 1_000_000)?;
    Ok(SpectralRadius { exact, power })
}

/// `log` of the spectral radius of the pair graph.
pub fn core_entropy(theta_c: &Angle, tol: f64) -> Result<f64> {
    let rho = spectral_radius(&pair_graph(theta_c), tol)?;
    Ok(rho.value().max(1.0).ln())
}

/// Periodic angles up to a period bound that share their landing point with
/// another periodic angle of the same bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AccSet {
    pub theta_c: Angle,
    pub bound: usize,
    pub angles: Vec<Angle>,
}

impl AccSet {
    pub fn from_lamination(lam: &Lamination, bound: usize) -> Self {
        let mut angles = Vec::new();
        for class in lam.classes() {
            let kept: Vec<&Angle> = class
                .iter()
                .filter(|t| {
                    let o = orbit(t, 2).expect("degree 2 is valid");
                    o.is_periodic() && o.period <= bound
                })
                .collect();
            if kept.len() >= 2 {
                angles.extend(kept.into_iter().cloned());
            }
        }
        angles.sort();
        AccSet {
            theta_c: lam.theta_c().clone(),
            bound,
            angles,
        }
    }

    pub fn contains(&self, theta: &Angle) -> bool {
        self.angles.binary_search(theta).is_ok()
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }
}

pub fn acc_angles(theta_c: &Angle, max_period: usize) -> Result<AccSet> {
    let lam = lamination(theta_c, max_period, 0)?;
    Ok(AccSet::from_lamination(&lam, max_period))
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthFit {
    /// `counts[n - 1]` is the number of biaccessible angles of period at most `n`.
    pub counts: Vec<usize>,
    /// Inclusive range of `n` used in the fit.
    pub window: (usize, usize),
    /// Fitted exponential growth rate per step, natural log.
    pub growth: f64,
    /// `growth / log 2`.
    pub dimension: f64,
}

/// Least-squares growth rate of the biaccessible counts over the upper half
/// of `1..=n_max`.
pub fn hdim_growth(theta_c: &Angle, n_max: usize) -> Result<GrowthFit> {
    if n_max < 4 {
        return Err(Error::Config("n_max must be at least 4".into()));
    }
    let lam = lamination(theta_c, n_max, 0)?;
    let mut counts = vec![0usize; n_max];
    for class in lam.classes() {
        let mut periods: Vec<usize> = class
            .iter()
            .map(|t| orbit(t, 2).expect("degree 2 is valid"))
            .filter(|o| o.is_periodic())
            .map(|o| o.period)
            .collect();
        periods.sort();
        for (n, slot) in counts.iter_mut().enumerate() {
            let k = periods.partition_point(|&p| p <= n + 1);
            if k >= 2 {
                *slot += k;
            }
        }
    }
    if counts.iter().all(|&c| c == 0) {
        return Err(Error::Degenerate("no biaccessible periodic angles".into()));
    }
    let lo = n_max.div_ceil(2);
    let points: Vec<(f64, f64)> = (lo..=n_max)
        .filter(|&n| counts[n - 1] > 0)
        .map(|n| (n as f64, (counts[n - 1] as f64).ln()))
        .collect();
    if points.len() < 2 {
        return Err(Error::Degenerate("too few nonzero counts to fit".into()));
    }
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = points.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = points.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    let growth = sxy / sxx;
    Ok(GrowthFit {
        counts,
        window: (lo, n_max),
        growth,
        dimension: growth / std::f64::consts::LN_2,
    })
}
