//! Simply-laced Dynkin diagrams and their generalized Cartan matrices.
//!
//! A diagram on `rank` nodes is a simple graph; its Cartan matrix has `2` on
//! the diagonal, `-1` for joined nodes and `0` otherwise. Because the matrix
//! is symmetric it doubles as the inner-product matrix of the simple roots.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Inertia};
use crate::par::{self, Execution};

/// Largest rank accepted by the exhaustive enumerator.
pub const MAX_ENUMERATION_RANK: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagramType {
    Finite,
    Affine,
    Indefinite,
}

impl fmt::Display for DiagramType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DiagramType::Finite => "finite",
            DiagramType::Affine => "affine",
            DiagramType::Indefinite => "indefinite",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    name: Option<String>,
    alias: Option<String>,
    rank: usize,
    /// Sorted pairs `(i, j)` with `i < j`.
    edges: Vec<(usize, usize)>,
    /// Bitmask of neighbors for each node.
    adjacency: Vec<u64>,
}

/// On-disk / JSON form: `{name, rank, edges, alias?}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
struct DiagramRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    rank: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    alias: Option<String>,
}

impl Serialize for Diagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramRecord {
            name: self.name.clone(),
            rank: self.rank,
            edges: self.edges.iter().map(|&(i, j)| [i, j]).collect(),
            alias: self.alias.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rec = DiagramRecord::deserialize(d)?;
        let edges: Vec<(usize, usize)> = rec.edges.iter().map(|e| (e[0], e[1])).collect();
        let mut dia = Diagram::new(rec.rank, &edges).map_err(serde::de::Error::custom)?;
        dia.name = rec.name;
        dia.alias = rec.alias;
        Ok(dia)
    }
}

impl Diagram {
    /// Builds a diagram from an edge list; edges are unordered pairs.
    pub fn new(rank: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if rank == 0 {
            return Err(Error::EmptyDiagram);
        }
        if rank > 64 {
            return Err(Error::NodeOutOfRange { index: rank - 1, rank: 64 });
        }
        let mut adjacency = vec![0u64; rank];
        let mut norm = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            for x in [a, b] {
                if x >= rank {
                    return Err(Error::NodeOutOfRange { index: x, rank });
                }
            }
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            if adjacency[i] >> j & 1 == 1 {
                return Err(Error::DuplicateEdge(i, j));
            }
            adjacency[i] |= 1 << j;
            adjacency[j] |= 1 << i;
            norm.push((i, j));
        }
        norm.sort_unstable();
        Ok(Diagram { name: None, alias: None, rank, edges: norm, adjacency })
    }

    fn from_adjacency(adjacency: Vec<u64>) -> Self {
        let rank = adjacency.len();
        let mut edges = Vec::new();
        for i in 0..rank {
            for j in i + 1..rank {
                if adjacency[i] >> j & 1 == 1 {
                    edges.push((i, j));
                }
            }
        }
        Diagram { name: None, alias: None, rank, edges, adjacency }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn alias(&self) -> Option<&str> {
        self.alias.as_deref()
    }

    /// Name used in reports: the catalog name, or `"custom"`.
    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| "custom".to_string())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn joined(&self, i: usize, j: usize) -> bool {
        self.adjacency[i] >> j & 1 == 1
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let m = self.adjacency[i];
        (0..self.rank).filter(move |&j| m >> j & 1 == 1)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].count_ones() as usize
    }

    pub fn gcm(&self) -> Vec<Vec<i64>> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| {
                        if i == j {
                            2
                        } else if self.joined(i, j) {
                            -1
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn gcm_rational(&self) -> linalg::Matrix {
        linalg::from_integers(&self.gcm())
    }

    fn full_mask(&self) -> u64 {
        if self.rank == 64 {
            u64::MAX
        } else {
            (1u64 << self.rank) - 1
        }
    }

    fn is_connected_mask(&self, mask: u64) -> bool {
        connected_within(&self.adjacency, mask)
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_mask(self.full_mask())
    }

    /// Induced subdiagram on `nodes` (relabelled `0..nodes.len()` in order).
    pub fn induced(&self, nodes: &[usize]) -> Diagram {
        let adjacency = nodes
            .iter()
            .map(|&a| {
                nodes
                    .iter()
                    .enumerate()
                    .filter(|&(_, &b)| self.joined(a, b))
                    .fold(0u64, |m, (k, _)| m | 1 << k)
            })
            .collect();
        Diagram::from_adjacency(adjacency)
    }

    /// Finite / affine / indefinite type of a connected diagram.
    pub fn classify(&self) -> Result<DiagramType> {
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(classify_gcm(&self.gcm_rational()))
    }

    pub fn inertia(&self) -> Inertia {
        linalg::inertia(&self.gcm_rational())
    }

    /// Each connected induced subdiagram on a proper nonempty node subset,
    /// largest subsets first.
    pub fn proper_irreducible_subdiagrams(&self) -> impl Iterator<Item = Subdiagram> + '_ {
        let full = self.full_mask();
        let mut masks: Vec<u64> = if self.rank <= 20 {
            (1..full).collect()
        } else {
            Vec::new()
        };
        masks.sort_by_key(|m| (std::cmp::Reverse(m.count_ones()), *m));
        masks
            .into_iter()
            .filter(move |&m| self.is_connected_mask(m))
            .map(move |m| {
                let nodes: Vec<usize> = (0..self.rank).filter(|&i| m >> i & 1 == 1).collect();
                let diagram = self.induced(&nodes);
                Subdiagram { nodes, diagram }
            })
    }

    /// Connected, indefinite, and every proper connected subdiagram is finite or affine.
    ///
    /// Every proper connected node set grows inside the diagram to a connected
    /// set missing one node, and principal submatrices of a semidefinite form
    /// are semidefinite, so only the connected complements of single nodes
    /// are classified.
    pub fn is_hyperbolic(&self) -> bool {
        if !self.is_connected() || self.rank < 2 {
            return false;
        }
        let full = self.full_mask();
        for v in 0..self.rank {
            let m = full & !(1u64 << v);
            if self.is_connected_mask(m) && !self.mask_is_semidefinite(m) {
                return false;
            }
        }
        classify_gcm(&self.gcm_rational()) == DiagramType::Indefinite
    }

    /// Finite-or-affine test for a connected node set. A connected graph with
    /// more edges than nodes, or as many but not a cycle, properly contains a
    /// cycle and so is indefinite; trees and cycles are classified exactly.
    fn mask_is_semidefinite(&self, mask: u64) -> bool {
        let k = mask.count_ones();
        let degrees = (0..self.rank)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| (self.adjacency[i] & mask).count_ones());
        let (sum, all_two) = degrees.fold((0, true), |(s, t), d| (s + d, t && d == 2));
        let e = sum / 2;
        if e > k || (e == k && !all_two) {
            return false;
        }
        let nodes: Vec<usize> = (0..self.rank).filter(|&i| mask >> i & 1 == 1).collect();
        classify_gcm(&self.induced(&nodes).gcm_rational()) != DiagramType::Indefinite
    }

    /// Lexicographically minimal upper-triangular adjacency bitstring over all
    /// relabellings. Bits run column by column: `(0,1), (0,2), (1,2), (0,3), …`.
    pub fn canonical_form(&self) -> CanonicalForm {
        let n = self.rank;
        let mut best: Option<Vec<bool>> = None;
        let mut order = Vec::with_capacity(n);
        let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        canon_search(&self.adjacency, &mut order, &mut bits, &mut best);
        CanonicalForm { rank: n, bits: best.unwrap_or_default() }
    }

    pub fn is_isomorphic(&self, other: &Diagram) -> bool {
        self.rank == other.rank
            && self.edges.len() == other.edges.len()
            && self.canonical_form() == other.canonical_form()
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())?;
        if let Some(a) = &self.alias {
            write!(f, " [{a}]")?;
        }
        write!(f, " (rank {}, edges", self.rank)?;
        for (i, j) in &self.edges {
            write!(f, " {i}-{j}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subdiagram {
    /// Nodes of the parent diagram, ascending.
    pub nodes: Vec<usize>,
    pub diagram: Diagram,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    rank: usize,
    bits: Vec<bool>,
}

impl CanonicalForm {
    /// The diagram whose adjacency is exactly this bitstring.
    pub fn to_diagram(&self) -> Diagram {
        let mut adjacency = vec![0u64; self.rank];
        let mut k = 0;
        for j in 1..self.rank {
            for i in 0..j {
                if self.bits[k] {
                    adjacency[i] |= 1 << j;
                    adjacency[j] |= 1 << i;
                }
                k += 1;
            }
        }
        Diagram::from_adjacency(adjacency)
    }

    pub fn bitstring(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

fn canon_search(
    adjacency: &[u64],
    order: &mut Vec<usize>,
    bits: &mut Vec<bool>,
    best: &mut Option<Vec<bool>>,
) {
    let n = adjacency.len();
    if order.len() == n {
        if best.as_ref().is_none_or(|b| *bits < *b) {
            *best = Some(bits.clone());
        }
        return;
    }
    for v in 0..n {
        if order.contains(&v) {
            continue;
        }
        let start = bits.len();
        bits.extend(order.iter().map(|&u| adjacency[u] >> v & 1 == 1));
        // Prune when this prefix is already worse than the best full string.
        let keep = match best {
            Some(b) => bits[..] <= b[..bits.len()],
            None => true,
        };
        if keep {
            order.push(v);
            canon_search(adjacency, order, bits, best);
            order.pop();
        }
        bits.truncate(start);
    }
}

fn connected_within(adjacency: &[u64], mask: u64) -> bool {
    if mask == 0 {
        return false;
    }
    let start = mask.trailing_zeros() as usize;
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adjacency[v] & mask;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == mask
}

/// Exact trichotomy of a symmetric matrix assumed to come from a connected diagram.
pub fn classify_gcm(gcm: &[Vec<crate::Rational>]) -> DiagramType {
    if linalg::is_positive_definite(gcm) {
        return DiagramType::Finite;
    }
    let inertia = linalg::inertia(gcm);
    if inertia.negative == 0 {
        DiagramType::Affine
    } else {
        DiagramType::Indefinite
    }
}

/// The 18 simply-laced hyperbolic diagrams, in table order.
pub fn catalog() -> &'static [Diagram] {
    static CATALOG: OnceLock<Vec<Diagram>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        serde_json::from_str(include_str!("../data/catalog.json"))
            .expect("bundled catalog is valid")
    })
}

/// Looks up a catalog entry by name (`"rank7-2"`) or alias (`"E10"`), case-insensitively.
pub fn find(name: &str) -> Option<&'static Diagram> {
    catalog().iter().find(|d| {
        d.name().is_some_and(|n| n.eq_ignore_ascii_case(name))
            || d.alias().is_some_and(|a| a.eq_ignore_ascii_case(name))
    })
}

pub fn e10() -> &'static Diagram {
    find("E10").expect("E10 is in the catalog")
}

/// Every connected hyperbolic diagram on `rank` nodes, up to isomorphism,
/// by exhaustive scan of all edge subsets. Results are in canonical labelling,
/// sorted by canonical form.
pub fn enumerate_hyperbolic(rank: usize, exec: Execution) -> Result<Vec<Diagram>> {
    if rank > MAX_ENUMERATION_RANK {
        return Err(Error::EnumerationTooCostly(rank));
    }
    if rank == 0 {
        return Err(Error::EmptyDiagram);
    }
    let pairs: Vec<(usize, usize)> =
        (0..rank).flat_map(|i| (i + 1..rank).map(move |j| (i, j))).collect();
    let total: u64 = 1 << pairs.len();
    let chunks: u64 = total.min(256);
    let per_chunk = total / chunks;
    let full = (1u64 << rank) - 1;

    let hits = par::flat_map_range(exec, chunks as usize, |c| {
        let lo = c as u64 * per_chunk;
        let hi = if c as u64 == chunks - 1 { total } else { lo + per_chunk };
        let mut found = Vec::new();
        let mut adjacency = vec![0u64; rank];
        for subset in lo..hi {
            adjacency.iter_mut().for_each(|a| *a = 0);
            for (k, &(i, j)) in pairs.iter().enumerate() {
                if subset >> k & 1 == 1 {
                    adjacency[i] |= 1 << j;
                    adjacency[j] |= 1 << i;
                }
            }
            if !connected_within(&adjacency, full) {
                continue;
            }
            let d = Diagram::from_adjacency(adjacency.clone());
            if d.is_hyperbolic() {
                found.push(d.canonical_form());
            }
        }
        found
    });
    let unique: BTreeSet<CanonicalForm> = hits.into_iter().collect();
    Ok(unique.iter().map(CanonicalForm::to_diagram).collect())
}
