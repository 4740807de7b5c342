//! The roller coaster: F_{θ,1/0} as a directed graph on semiconvergents.

use super::FareyTriangle;
use crate::continued_fractions::semiconvergents;
use crate::error::{Error, Result};
use crate::exact_numbers::{IrrationalNumber, ReducedFraction};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet, VecDeque};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeClass {
    Exterior,
    Interior,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoasterEdge {
    pub from: ReducedFraction,
    pub to: ReducedFraction,
    /// Third vertex of the first triangle containing the edge.
    pub label: ReducedFraction,
    pub class: EdgeClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RollerCoaster {
    pub theta: IrrationalNumber,
    pub depth: usize,
    /// Increasing, with 1/0 last.
    pub vertices: Vec<ReducedFraction>,
    /// (β_{i,m}, β_{i,m+1}, β_{i+1}) for i = −1..=depth−2, in order.
    pub triangles: Vec<FareyTriangle>,
    pub edges: Vec<CoasterEdge>,
}

impl RollerCoaster {
    pub fn edge(&self, from: &ReducedFraction, to: &ReducedFraction) -> Option<&CoasterEdge> {
        self.edges.iter().find(|e| &e.from == from && &e.to == to)
    }
}

fn directed(a: &ReducedFraction, b: &ReducedFraction) -> (ReducedFraction, ReducedFraction) {
    if a < b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

/// Triangles of F_{θ,1/0} up to β_depth, with edges directed by value.
pub fn roller_coaster(theta: &IrrationalNumber, depth: usize) -> Result<RollerCoaster> {
    if depth == 0 {
        return Err(Error::invalid("depth must be at least 1"));
    }
    let mut triangles = Vec::new();
    let mut exterior = HashSet::new();
    let mut labels: HashMap<(ReducedFraction, ReducedFraction), ReducedFraction> = HashMap::new();
    let mut order = Vec::new();
    let mut vertices = HashSet::new();
    let beta0 = theta.convergent_fraction(0)?;
    exterior.insert(directed(&beta0, &ReducedFraction::infinity()));
    for i in -1..=(depth as i64 - 2) {
        let semis = semiconvergents(theta, i)?;
        let apex = theta.convergent_fraction(i + 1)?;
        for w in semis.windows(2) {
            exterior.insert(directed(&w[0], &w[1]));
            let t = FareyTriangle::new(w[0].clone(), w[1].clone(), apex.clone())?;
            for (a, b) in t.edges() {
                let key = directed(&a, &b);
                if !labels.contains_key(&key) {
                    labels.insert(key.clone(), t.third(&a, &b).expect("edge of t").clone());
                    order.push(key);
                }
            }
            vertices.extend(t.vertices().iter().cloned());
            triangles.push(t);
        }
    }
    let edges = order
        .into_iter()
        .map(|key| {
            let class = if exterior.contains(&key) { EdgeClass::Exterior } else { EdgeClass::Interior };
            let label = labels[&key].clone();
            CoasterEdge { from: key.0, to: key.1, label, class }
        })
        .collect();
    let mut vertices: Vec<_> = vertices.into_iter().collect();
    vertices.sort();
    Ok(RollerCoaster { theta: theta.clone(), depth, vertices, triangles, edges })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathBundle {
    pub path: Vec<ReducedFraction>,
    /// The summands O(e), one per edge of the path.
    pub labels: Vec<ReducedFraction>,
    /// Whether the shortest directed path is the only one of its length.
    pub unique: bool,
}

/// 𝒪(P) for the shortest directed path P from λ₁ to λ₂.
pub fn shortest_path_bundle(rc: &RollerCoaster, from: &ReducedFraction, to: &ReducedFraction) -> Result<PathBundle> {
    if from >= to {
        return Err(Error::invalid("the path must run from a smaller vertex to a larger one"));
    }
    if !rc.vertices.contains(from) {
        return Err(Error::invalid(format!("{from} is not a vertex of this roller coaster")));
    }
    let mut out: HashMap<&ReducedFraction, Vec<&ReducedFraction>> = HashMap::new();
    for e in &rc.edges {
        out.entry(&e.from).or_default().push(&e.to);
    }
    // BFS with path counts (saturating at 2) and one predecessor per vertex.
    let mut dist: HashMap<&ReducedFraction, usize> = HashMap::from([(from, 0)]);
    let mut count: HashMap<&ReducedFraction, u8> = HashMap::from([(from, 1)]);
    let mut prev: HashMap<&ReducedFraction, &ReducedFraction> = HashMap::new();
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u];
        let cu = count[u];
        for &v in out.get(u).map(|v| v.as_slice()).unwrap_or(&[]) {
            match dist.get(v) {
                None => {
                    dist.insert(v, du + 1);
                    count.insert(v, cu);
                    prev.insert(v, u);
                    queue.push_back(v);
                }
                Some(&dv) if dv == du + 1 => {
                    let c = count.get_mut(v).expect("counted");
                    *c = (*c + cu).min(2);
                }
                _ => {}
            }
        }
    }
    if !dist.contains_key(to) {
        return Err(Error::NoPath { from: from.to_string(), to: to.to_string() });
    }
    let mut path = vec![to.clone()];
    let mut cur = to;
    while cur != from {
        cur = prev[cur];
        path.push(cur.clone());
    }
    path.reverse();
    let labels = path.windows(2).map(|w| rc.edge(&w[0], &w[1]).expect("path edge").label.clone()).collect();
    Ok(PathBundle { path, labels, unique: count[to] == 1 })
}
