//! Discrete-time quantum walks on general graphs, compiled to
//! interferometers.
//!
//! Each vertex `v` carries `d_v` coin directions; the walk's Hilbert space
//! is spanned by the (vertex, direction) slots, mapped to optical modes in
//! lexicographic order. One step applies the block-diagonal coin and then
//! the step permutation, so `t` steps evolve by `(S C)^t`, and
//! non-interacting bosonic walkers are exactly photons through that
//! unitary.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fock::{output_distribution_capped, FockBasisState, Interferometer, OutputDistribution};
use crate::linalg::{self, CMatrix};

/// A directed graph in coin-slot form: each (vertex, direction) slot names
/// the (vertex, direction) slot the walker occupies after one step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkGraph {
    /// targets[v][c] = (vertex, direction) reached from slot (v, c).
    targets: Vec<Vec<(usize, usize)>>,
    /// offsets[v] is the mode index of slot (v, 0); offsets[V] = mode count.
    offsets: Vec<usize>,
}

impl WalkGraph {
    /// Validate that every target is in range and that the step mapping is
    /// a permutation of all slots.
    pub fn new(targets: Vec<Vec<(usize, usize)>>) -> Result<Self> {
        if targets.is_empty() {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        let vertices = targets.len();
        let mut offsets = Vec::with_capacity(vertices + 1);
        let mut total = 0usize;
        for (v, slots) in targets.iter().enumerate() {
            if slots.is_empty() {
                return Err(Error::InvalidGraph(format!(
                    "vertex {v} has no coin directions"
                )));
            }
            offsets.push(total);
            total += slots.len();
        }
        offsets.push(total);

        let mut hit = vec![false; total];
        for slots in &targets {
            for &(tv, tc) in slots {
                if tv >= vertices {
                    return Err(Error::InvalidGraph(format!(
                        "target vertex {tv} out of range"
                    )));
                }
                if tc >= targets[tv].len() {
                    return Err(Error::InvalidGraph(format!(
                        "target direction {tc} out of range for vertex {tv}"
                    )));
                }
                let slot = offsets[tv] + tc;
                if hit[slot] {
                    return Err(Error::InvalidGraph(format!(
                        "slot ({tv}, {tc}) is targeted twice; the step map must be a permutation"
                    )));
                }
                hit[slot] = true;
            }
        }
        Ok(Self { targets, offsets })
    }

    pub fn vertex_count(&self) -> usize {
        self.targets.len()
    }

    pub fn degree(&self, vertex: usize) -> usize {
        self.targets[vertex].len()
    }

    /// Total number of (vertex, direction) slots, i.e. optical modes.
    pub fn mode_count(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Lexicographic slot-to-mode bijection.
    pub fn mode_index(&self, vertex: usize, direction: usize) -> Result<usize> {
        if vertex >= self.vertex_count() {
            return Err(Error::InvalidParameter(format!(
                "vertex {vertex} out of range"
            )));
        }
        if direction >= self.degree(vertex) {
            return Err(Error::InvalidParameter(format!(
                "direction {direction} out of range for vertex {vertex}"
            )));
        }
        Ok(self.offsets[vertex] + direction)
    }

    /// Inverse of [`Self::mode_index`].
    pub fn slot_at(&self, mode: usize) -> Result<(usize, usize)> {
        if mode >= self.mode_count() {
            return Err(Error::InvalidParameter(format!("mode {mode} out of range")));
        }
        let vertex = match self.offsets.binary_search(&mode) {
            Ok(v) if v < self.vertex_count() => v,
            Ok(v) => v - 1,
            Err(v) => v - 1,
        };
        Ok((vertex, mode - self.offsets[vertex]))
    }

    /// The step permutation over modes: `perm[from] = to`.
    pub fn step_permutation(&self) -> Vec<usize> {
        let mut perm = vec![0usize; self.mode_count()];
        for (v, slots) in self.targets.iter().enumerate() {
            for (c, &(tv, tc)) in slots.iter().enumerate() {
                perm[self.offsets[v] + c] = self.offsets[tv] + tc;
            }
        }
        perm
    }

    /// Path of `n >= 2` vertices with reflecting ends. Directions are
    /// 0 = leftward, 1 = rightward; a walker that runs into an end keeps
    /// its position and turns around.
    pub fn line(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGraph("a line needs at least 2 vertices".into()));
        }
        let mut targets = Vec::with_capacity(n);
        for v in 0..n {
            let left = if v == 0 { (0, 1) } else { (v - 1, 0) };
            let right = if v == n - 1 { (n - 1, 0) } else { (v + 1, 1) };
            targets.push(vec![left, right]);
        }
        Self::new(targets)
    }

    /// Cycle of `n >= 2` vertices; direction 0 steps backwards, 1 forwards.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidGraph("a cycle needs at least 2 vertices".into()));
        }
        let targets = (0..n)
            .map(|v| vec![((v + n - 1) % n, 0), ((v + 1) % n, 1)])
            .collect();
        Self::new(targets)
    }

    /// A single vertex whose `d` slots map to themselves: the step is the
    /// identity and the coin alone drives the evolution.
    pub fn self_loops(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidGraph("vertex needs at least one slot".into()));
        }
        Self::new(vec![(0..d).map(|c| (0, c)).collect()])
    }
}

#[derive(Serialize, Deserialize)]
struct WalkGraphWire {
    vertices: usize,
    slots: Vec<Vec<(usize, usize)>>,
}

impl Serialize for WalkGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        WalkGraphWire {
            vertices: self.vertex_count(),
            slots: self.targets.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WalkGraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = WalkGraphWire::deserialize(deserializer)?;
        if wire.vertices != wire.slots.len() {
            return Err(serde::de::Error::custom(format!(
                "declared {} vertices but listed {} slot tables",
                wire.vertices,
                wire.slots.len()
            )));
        }
        WalkGraph::new(wire.slots).map_err(serde::de::Error::custom)
    }
}

/// A complete walk specification: graph, per-vertex coin blocks, and the
/// number of steps.
#[derive(Clone, Debug)]
pub struct WalkSpec {
    graph: WalkGraph,
    coins: Vec<CMatrix>,
    steps: u64,
}

#[derive(Serialize, Deserialize)]
struct WalkSpecWire {
    graph: WalkGraph,
    /// One row-major [re, im] block per vertex, d_v x d_v.
    coins: Vec<Vec<[f64; 2]>>,
    steps: u64,
}

impl Serialize for WalkSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        WalkSpecWire {
            graph: self.graph.clone(),
            coins: self.coins.iter().map(linalg::matrix_to_pairs).collect(),
            steps: self.steps,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WalkSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = WalkSpecWire::deserialize(deserializer)?;
        if wire.coins.len() != wire.graph.vertex_count() {
            return Err(serde::de::Error::custom(format!(
                "{} coin blocks for {} vertices",
                wire.coins.len(),
                wire.graph.vertex_count()
            )));
        }
        let coins = wire
            .coins
            .iter()
            .enumerate()
            .map(|(v, pairs)| {
                let d = wire.graph.degree(v);
                linalg::matrix_from_pairs(d, d, pairs)
            })
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        WalkSpec::new(wire.graph, coins, wire.steps).map_err(serde::de::Error::custom)
    }
}

impl WalkSpec {
    pub fn new(graph: WalkGraph, coins: Vec<CMatrix>, steps: u64) -> Result<Self> {
        if coins.len() != graph.vertex_count() {
            return Err(Error::DimensionMismatch {
                expected: graph.vertex_count(),
                actual: coins.len(),
            });
        }
        for (v, coin) in coins.iter().enumerate() {
            let d = graph.degree(v);
            if coin.nrows() != d || coin.ncols() != d {
                return Err(Error::InvalidGraph(format!(
                    "coin block at vertex {v} is {}x{}, expected {d}x{d}",
                    coin.nrows(),
                    coin.ncols()
                )));
            }
            linalg::require_unitary(coin, Interferometer::CONSTRUCTION_TOL)?;
        }
        Ok(Self { graph, coins, steps })
    }

    /// Same Hadamard coin on every vertex; all degrees must be 2.
    pub fn hadamard(graph: WalkGraph, steps: u64) -> Result<Self> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let h = CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(s, 0.0),
                Complex64::new(s, 0.0),
                Complex64::new(s, 0.0),
                Complex64::new(-s, 0.0),
            ],
        );
        let coins = (0..graph.vertex_count())
            .map(|v| {
                if graph.degree(v) == 2 {
                    Ok(h.clone())
                } else {
                    Err(Error::InvalidGraph(format!(
                        "Hadamard coin needs degree 2, vertex {v} has degree {}",
                        graph.degree(v)
                    )))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(graph, coins, steps)
    }

    pub fn graph(&self) -> &WalkGraph {
        &self.graph
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Same graph and coins, different step count.
    pub fn with_steps(mut self, steps: u64) -> Self {
        self.steps = steps;
        self
    }

    /// The single-step unitary `S C` on the mode labelling.
    pub fn single_step(&self) -> CMatrix {
        let m = self.graph.mode_count();
        let mut coin = CMatrix::zeros(m, m);
        for (v, block) in self.coins.iter().enumerate() {
            let base = self.graph.offsets[v];
            for a in 0..block.nrows() {
                for b in 0..block.ncols() {
                    coin[(base + a, base + b)] = block[(a, b)];
                }
            }
        }
        let perm = self.graph.step_permutation();
        let mut step = CMatrix::zeros(m, m);
        for (from, &to) in perm.iter().enumerate() {
            step[(to, from)] = Complex64::ONE;
        }
        step * coin
    }

    /// `(S C)^t` as an interferometer.
    pub fn unitary(&self) -> Interferometer {
        Interferometer::from_trusted(linalg::matrix_power(&self.single_step(), self.steps))
    }

    /// Bosonic multi-walker distribution; delegates to the photonic path
    /// with `(S C)^t`, which *is* the walk/interferometer isomorphism.
    pub fn distribution(&self, walkers: &FockBasisState) -> Result<OutputDistribution> {
        self.distribution_capped(walkers, crate::fock::DEFAULT_CONFIGURATION_CAP)
    }

    pub fn distribution_capped(
        &self,
        walkers: &FockBasisState,
        cap: u128,
    ) -> Result<OutputDistribution> {
        output_distribution_capped(&self.unitary(), walkers, cap)
    }
}
