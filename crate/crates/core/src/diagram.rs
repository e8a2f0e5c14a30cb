//! Combinatorial model of twisted and virtual link diagrams.
//!
//! A diagram keeps only what the invariants can see: the signed real
//! crossings, and for every edge of the 4-valent graph |D| the out-port it
//! leaves, the in-port it enters and how many bars it carries. Virtual
//! crossings and the position of bars along an edge are not recorded, so the
//! virtual moves and the first two twisted moves act as the identity here.
//!
//! Port labels around a crossing, drawn with both strands pointing up:
//!
//! ```text
//!   out 0   out 1
//!       \   /
//!         X
//!       /   \
//!    in 0   in 1
//! ```
//!
//! A strand entering at in-port `e` leaves at out-port `1 - e`. At a positive
//! crossing the strand from in 0 to out 1 passes over; at a negative crossing
//! the strand from in 1 to out 0 does.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub type CrossingId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CrossingSign {
    Positive,
    Negative,
}

impl CrossingSign {
    pub fn value(self) -> i64 {
        match self {
            CrossingSign::Positive => 1,
            CrossingSign::Negative => -1,
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            CrossingSign::Positive => CrossingSign::Negative,
            CrossingSign::Negative => CrossingSign::Positive,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            CrossingSign::Positive => '+',
            CrossingSign::Negative => '-',
        }
    }

    /// In-port through which the over-strand enters.
    pub fn over_entry(self) -> u8 {
        match self {
            CrossingSign::Positive => 0,
            CrossingSign::Negative => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    /// `i^+`: a strand leaves the crossing here.
    Out,
    /// `i^-`: a strand arrives at the crossing here.
    In,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub crossing: CrossingId,
    pub polarity: Polarity,
    pub index: u8,
}

impl Port {
    pub const fn outgoing(crossing: CrossingId, index: u8) -> Self {
        Port {
            crossing,
            polarity: Polarity::Out,
            index,
        }
    }

    pub const fn incoming(crossing: CrossingId, index: u8) -> Self {
        Port {
            crossing,
            polarity: Polarity::In,
            index,
        }
    }

    /// Same crossing and polarity, other index.
    pub fn flipped(self) -> Self {
        Port {
            index: 1 - self.index,
            ..self
        }
    }

    /// The out-port reached by following the strand through the crossing
    /// from this in-port.
    pub fn through(self) -> Port {
        debug_assert_eq!(self.polarity, Polarity::In);
        Port::outgoing(self.crossing, 1 - self.index)
    }

    fn relabeled(self, offset: CrossingId) -> Self {
        Port {
            crossing: self.crossing + offset,
            ..self
        }
    }
}

impl fmt::Display for Port {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.crossing, self.index)
    }
}

/// An edge of |D| from an out-port to an in-port.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagramEdge {
    pub from: Port,
    pub to: Port,
    pub bars: u32,
}

impl DiagramEdge {
    pub fn new(from: (CrossingId, u8), to: (CrossingId, u8), bars: u32) -> Self {
        DiagramEdge {
            from: Port::outgoing(from.0, from.1),
            to: Port::incoming(to.0, to.1),
            bars,
        }
    }

    pub fn has_odd_bars(&self) -> bool {
        self.bars % 2 == 1
    }
}

/// Signed crossings, port-to-port edges with bar counts, and crossing-free
/// components. Edges and free loops are kept sorted so that structural
/// equality does not depend on construction order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TwistedDiagram {
    crossings: BTreeMap<CrossingId, CrossingSign>,
    edges: Vec<DiagramEdge>,
    free_loops: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Violation {
    ZeroCrossingId,
    DuplicateCrossing(CrossingId),
    UndeclaredCrossing(Port),
    WrongPolarity(Port),
    PortIndexOutOfRange(Port),
    MissingEdgeFrom(Port),
    DuplicateEdgeFrom(Port),
    MissingEdgeInto(Port),
    DuplicateEdgeInto(Port),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroCrossingId => write!(f, "crossing identifiers must be positive"),
            Violation::DuplicateCrossing(c) => write!(f, "crossing {c} declared more than once"),
            Violation::UndeclaredCrossing(p) => {
                write!(f, "port {p} refers to undeclared crossing {}", p.crossing)
            }
            Violation::WrongPolarity(p) => {
                write!(f, "port {p} has the wrong polarity for its edge end")
            }
            Violation::PortIndexOutOfRange(p) => write!(f, "port {p} has index outside {{0, 1}}"),
            Violation::MissingEdgeFrom(p) => write!(f, "no edge leaves out-port {p}"),
            Violation::DuplicateEdgeFrom(p) => write!(f, "more than one edge leaves out-port {p}"),
            Violation::MissingEdgeInto(p) => write!(f, "no edge enters in-port {p}"),
            Violation::DuplicateEdgeInto(p) => write!(f, "more than one edge enters in-port {p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid diagram: {}", list_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("no edge leaves out-port {0}")]
    NoSuchEdge(Port),
    #[error("edge leaving {0} carries bars")]
    BarredEdge(Port),
    #[error("diagram carries bars but a bar-free diagram is required")]
    NotBarFree,
    #[error("crossing identifier {0} is too large for this construction")]
    IdentifierOverflow(CrossingId),
}

fn list_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl TwistedDiagram {
    pub fn new(
        crossings: impl IntoIterator<Item = (CrossingId, CrossingSign)>,
        mut edges: Vec<DiagramEdge>,
        mut free_loops: Vec<u32>,
    ) -> Self {
        edges.sort();
        free_loops.sort();
        TwistedDiagram {
            crossings: crossings.into_iter().collect(),
            edges,
            free_loops,
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn crossings(&self) -> &BTreeMap<CrossingId, CrossingSign> {
        &self.crossings
    }

    pub fn crossing_ids(&self) -> impl Iterator<Item = CrossingId> + '_ {
        self.crossings.keys().copied()
    }

    pub fn sign(&self, c: CrossingId) -> Option<CrossingSign> {
        self.crossings.get(&c).copied()
    }

    pub fn edges(&self) -> &[DiagramEdge] {
        &self.edges
    }

    pub fn free_loops(&self) -> &[u32] {
        &self.free_loops
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn max_crossing_id(&self) -> CrossingId {
        self.crossings.keys().next_back().copied().unwrap_or(0)
    }

    /// Position of each crossing in ascending identifier order; this is the
    /// block order of every matrix built from the diagram.
    pub fn crossing_positions(&self) -> BTreeMap<CrossingId, usize> {
        self.crossings
            .keys()
            .enumerate()
            .map(|(k, &c)| (c, k))
            .collect()
    }

    pub fn edge_from(&self, out: Port) -> Option<&DiagramEdge> {
        self.edges.iter().find(|e| e.from == out)
    }

    pub fn edge_into(&self, inp: Port) -> Option<&DiagramEdge> {
        self.edges.iter().find(|e| e.to == inp)
    }

    pub(crate) fn into_parts(
        self,
    ) -> (
        BTreeMap<CrossingId, CrossingSign>,
        Vec<DiagramEdge>,
        Vec<u32>,
    ) {
        (self.crossings, self.edges, self.free_loops)
    }

    /// Every broken invariant; empty iff the diagram is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.crossings.contains_key(&0) {
            out.push(Violation::ZeroCrossingId);
        }
        let mut seen_from: BTreeMap<Port, usize> = BTreeMap::new();
        let mut seen_to: BTreeMap<Port, usize> = BTreeMap::new();
        let mut reported = BTreeSet::new();
        for e in &self.edges {
            for (port, polarity) in [(e.from, Polarity::Out), (e.to, Polarity::In)] {
                if port.polarity != polarity {
                    out.push(Violation::WrongPolarity(port));
                }
                if port.index > 1 {
                    out.push(Violation::PortIndexOutOfRange(port));
                }
                if !self.crossings.contains_key(&port.crossing) && reported.insert(port) {
                    out.push(Violation::UndeclaredCrossing(port));
                }
            }
            *seen_from.entry(e.from).or_default() += 1;
            *seen_to.entry(e.to).or_default() += 1;
        }
        for &c in self.crossings.keys() {
            for index in 0..2 {
                let p = Port::outgoing(c, index);
                match seen_from.get(&p).copied().unwrap_or(0) {
                    0 => out.push(Violation::MissingEdgeFrom(p)),
                    1 => {}
                    _ => out.push(Violation::DuplicateEdgeFrom(p)),
                }
                let p = Port::incoming(c, index);
                match seen_to.get(&p).copied().unwrap_or(0) {
                    0 => out.push(Violation::MissingEdgeInto(p)),
                    1 => {}
                    _ => out.push(Violation::DuplicateEdgeInto(p)),
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub(crate) fn ensure_valid(&self) -> Result<(), DiagramError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(DiagramError::Invalid(v))
        }
    }

    /// Positive minus negative crossings.
    pub fn writhe(&self) -> i64 {
        self.crossings.values().map(|s| s.value()).sum()
    }

    /// Bars counted mod 2: true iff every edge and free loop carries an even
    /// number of bars.
    pub fn is_virtual(&self) -> bool {
        self.edges.iter().all(|e| e.bars % 2 == 0) && self.free_loops.iter().all(|b| b % 2 == 0)
    }

    /// True iff no bars at all.
    pub fn is_strictly_virtual(&self) -> bool {
        self.edges.iter().all(|e| e.bars == 0) && self.free_loops.iter().all(|&b| b == 0)
    }

    pub fn total_bars(&self) -> u64 {
        self.edges.iter().map(|e| e.bars as u64).sum::<u64>()
            + self.free_loops.iter().map(|&b| b as u64).sum::<u64>()
    }

    /// s(D): reflection followed by switching every crossing. Signs are
    /// unchanged and every port index is flipped.
    pub fn mirror(&self) -> TwistedDiagram {
        let edges = self
            .edges
            .iter()
            .map(|e| DiagramEdge {
                from: e.from.flipped(),
                to: e.to.flipped(),
                bars: e.bars,
            })
            .collect();
        TwistedDiagram::new(self.crossings.clone(), edges, self.free_loops.clone())
    }

    /// Closed curves of the diagram, free loops included.
    pub fn component_count(&self) -> usize {
        let next: BTreeMap<Port, Port> = self
            .edges
            .iter()
            .map(|e| (e.from, e.to.through()))
            .collect();
        let mut seen = BTreeSet::new();
        let mut count = self.free_loops.len();
        for &start in next.keys() {
            if seen.contains(&start) {
                continue;
            }
            count += 1;
            let mut p = start;
            while seen.insert(p) {
                match next.get(&p) {
                    Some(&q) => p = q,
                    None => break,
                }
            }
        }
        count
    }

    /// Disjoint union with `other`, whose crossings are shifted by
    /// `self.max_crossing_id()`.
    pub fn disjoint_union(&self, other: &TwistedDiagram) -> TwistedDiagram {
        let offset = self.max_crossing_id();
        let crossings = self
            .crossings
            .iter()
            .map(|(&c, &s)| (c, s))
            .chain(other.crossings.iter().map(|(&c, &s)| (c + offset, s)));
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|e| DiagramEdge {
                from: e.from.relabeled(offset),
                to: e.to.relabeled(offset),
                bars: e.bars,
            }))
            .collect();
        let loops = self
            .free_loops
            .iter()
            .chain(&other.free_loops)
            .copied()
            .collect();
        TwistedDiagram::new(crossings, edges, loops)
    }
}

/// Number of positive minus negative crossings of `d`.
pub fn writhe(d: &TwistedDiagram) -> i64 {
    d.writhe()
}

pub fn mirror(d: &TwistedDiagram) -> TwistedDiagram {
    d.mirror()
}

/// Cuts the bar-free edge leaving `e1` in `d1` and the bar-free edge leaving
/// `e2` in `d2` and cross-connects them. Crossings of `d2` are renumbered
/// above those of `d1`.
pub fn connected_sum(
    d1: &TwistedDiagram,
    e1: Port,
    d2: &TwistedDiagram,
    e2: Port,
) -> Result<TwistedDiagram, DiagramError> {
    let first = *d1.edge_from(e1).ok_or(DiagramError::NoSuchEdge(e1))?;
    let second = *d2.edge_from(e2).ok_or(DiagramError::NoSuchEdge(e2))?;
    if first.bars != 0 {
        return Err(DiagramError::BarredEdge(e1));
    }
    if second.bars != 0 {
        return Err(DiagramError::BarredEdge(e2));
    }
    let offset = d1.max_crossing_id();
    offset
        .checked_add(d2.max_crossing_id())
        .ok_or(DiagramError::IdentifierOverflow(d2.max_crossing_id()))?;
    let union = d1.disjoint_union(d2);
    let second = DiagramEdge {
        from: second.from.relabeled(offset),
        to: second.to.relabeled(offset),
        bars: 0,
    };
    let (crossings, mut edges, loops) = union.into_parts();
    edges.retain(|e| *e != first && *e != second);
    edges.push(DiagramEdge {
        from: first.from,
        to: second.to,
        bars: 0,
    });
    edges.push(DiagramEdge {
        from: second.from,
        to: first.to,
        bars: 0,
    });
    Ok(TwistedDiagram::new(crossings, edges, loops))
}

/// A uniformly random matching of the `2n` out-ports to the `2n` in-ports,
/// independent random signs, and `bars` bars dropped one at a time on
/// uniformly chosen edges. Crossings are numbered `1..=n`. With no crossings
/// there are no edges, and `bars` is ignored.
pub fn random_diagram(crossings: usize, bars: u32, seed: u64) -> TwistedDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_diagram_with(&mut rng, crossings, bars)
}

pub fn random_diagram_with<R: Rng + ?Sized>(
    rng: &mut R,
    crossings: usize,
    bars: u32,
) -> TwistedDiagram {
    let n = crossings as CrossingId;
    let signs: Vec<(CrossingId, CrossingSign)> = (1..=n)
        .map(|c| {
            let s = if rng.random_bool(0.5) {
                CrossingSign::Positive
            } else {
                CrossingSign::Negative
            };
            (c, s)
        })
        .collect();
    let mut targets: Vec<Port> = (1..=n)
        .flat_map(|c| [Port::incoming(c, 0), Port::incoming(c, 1)])
        .collect();
    targets.shuffle(rng);
    let mut edges: Vec<DiagramEdge> = (1..=n)
        .flat_map(|c| [Port::outgoing(c, 0), Port::outgoing(c, 1)])
        .zip(targets)
        .map(|(from, to)| DiagramEdge { from, to, bars: 0 })
        .collect();
    if !edges.is_empty() {
        for _ in 0..bars {
            let k = rng.random_range(0..edges.len());
            edges[k].bars += 1;
        }
    }
    TwistedDiagram::new(signs, edges, Vec::new())
}
