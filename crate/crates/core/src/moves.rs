//! Local rewrites for the Reidemeister moves and twisted move III.
//!
//! Virtual moves and the first two twisted moves are invisible in the
//! encoding and need no rewrite. New crossings are numbered above the current
//! maximum identifier.
//!
//! R3 is implemented in its braid form, with three crossings of equal sign
//! (both all-positive and all-negative), in both directions. With `a`, `b`,
//! `c` the three crossings, the left-hand pattern has internal edges
//! `a.1 -> b.0`, `a.0 -> c.0`, `b.0 -> c.1`; the right-hand pattern has
//! `a.1 -> c.1`, `a.0 -> b.1`, `b.1 -> c.0`.
//!
//! Removal moves whose result would contain a new crossing-free component
//! are enumerated and applied like any other, but [`random_walk`] skips them:
//! a crossing-free component contributes 1 to the determinant while a curl
//! contributes 0, so the invariant does not survive those particular moves.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diagram::{
    CrossingId, CrossingSign, DiagramEdge, DiagramError, Polarity, Port, TwistedDiagram,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    R1Plus,
    R1Minus,
    R2Plus,
    R2Minus,
    R3,
    T3,
}

impl MoveKind {
    pub const ALL: [MoveKind; 6] = [
        MoveKind::R1Plus,
        MoveKind::R1Minus,
        MoveKind::R2Plus,
        MoveKind::R2Minus,
        MoveKind::R3,
        MoveKind::T3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MoveKind::R1Plus => "R1+",
            MoveKind::R1Minus => "R1-",
            MoveKind::R2Plus => "R2+",
            MoveKind::R2Minus => "R2-",
            MoveKind::R3 => "R3",
            MoveKind::T3 => "T3",
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MoveKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MoveKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown move kind `{s}`"))
    }
}

/// Which side of R3 the site currently shows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BraidSide {
    Left,
    Right,
}

/// A located rewrite. Edges are named by the out-port they leave.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveSite {
    /// Curl the edge through a new crossing, entering it at in-port `entry`.
    R1Plus {
        edge: Port,
        sign: CrossingSign,
        entry: u8,
    },
    /// Remove a crossing carrying a curl.
    R1Minus { crossing: CrossingId },
    /// Push edge `over` across edge `under`, creating crossings of sign
    /// `sign` and then `-sign` along `over`.
    R2Plus {
        over: Port,
        under: Port,
        sign: CrossingSign,
        parallel: bool,
    },
    /// Remove a cancelling pair, `first < second`.
    R2Minus {
        first: CrossingId,
        second: CrossingId,
    },
    R3 {
        crossings: [CrossingId; 3],
        side: BraidSide,
    },
    /// Switch the crossing and carry its bars to the other side.
    T3 { crossing: CrossingId },
}

impl MoveSite {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSite::R1Plus { .. } => MoveKind::R1Plus,
            MoveSite::R1Minus { .. } => MoveKind::R1Minus,
            MoveSite::R2Plus { .. } => MoveKind::R2Plus,
            MoveSite::R2Minus { .. } => MoveKind::R2Minus,
            MoveSite::R3 { .. } => MoveKind::R3,
            MoveSite::T3 { .. } => MoveKind::T3,
        }
    }
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MoveSite::R1Plus { edge, sign, entry } => {
                write!(f, "R1+ edge {edge} sign {} entry {entry}", sign.symbol())
            }
            MoveSite::R1Minus { crossing } => write!(f, "R1- crossing {crossing}"),
            MoveSite::R2Plus {
                over,
                under,
                sign,
                parallel,
            } => write!(
                f,
                "R2+ over {over} under {under} sign {} {}",
                sign.symbol(),
                if parallel { "parallel" } else { "antiparallel" }
            ),
            MoveSite::R2Minus { first, second } => write!(f, "R2- crossings {first} {second}"),
            MoveSite::R3 {
                crossings: [a, b, c],
                side,
            } => {
                let side = if side == BraidSide::Left {
                    "left"
                } else {
                    "right"
                };
                write!(f, "R3 {side} crossings {a} {b} {c}")
            }
            MoveSite::T3 { crossing } => write!(f, "T3 crossing {crossing}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("site does not match the diagram: {0}")]
    InvalidSite(MoveSite),
}

struct Index<'a> {
    d: &'a TwistedDiagram,
    from: BTreeMap<Port, &'a DiagramEdge>,
    into: BTreeMap<Port, &'a DiagramEdge>,
}

impl<'a> Index<'a> {
    fn new(d: &'a TwistedDiagram) -> Self {
        Index {
            d,
            from: d.edges().iter().map(|e| (e.from, e)).collect(),
            into: d.edges().iter().map(|e| (e.to, e)).collect(),
        }
    }

    fn out(&self, c: CrossingId, i: u8) -> &'a DiagramEdge {
        self.from[&Port::outgoing(c, i)]
    }

    fn inn(&self, c: CrossingId, i: u8) -> &'a DiagramEdge {
        self.into[&Port::incoming(c, i)]
    }

    fn links(&self, from: (CrossingId, u8), to: (CrossingId, u8)) -> Option<&'a DiagramEdge> {
        let e = self.out(from.0, from.1);
        (e.to == Port::incoming(to.0, to.1)).then_some(e)
    }

    fn sign(&self, c: CrossingId) -> CrossingSign {
        self.d.crossings()[&c]
    }
}

fn curl_crossing(ix: &Index, c: CrossingId) -> bool {
    (0..2).any(|l| ix.links((c, l), (c, l)).is_some_and(|e| !e.has_odd_bars()))
}

fn cancelling_pair(ix: &Index, a: CrossingId, b: CrossingId) -> bool {
    if ix.sign(a) == ix.sign(b) {
        return false;
    }
    let even = |e: Option<&DiagramEdge>| e.is_some_and(|e| !e.has_odd_bars());
    let parallel = |p: CrossingId, q: CrossingId| (0..2).all(|l| even(ix.links((p, l), (q, l))));
    let antiparallel =
        (0..2).any(|m| even(ix.links((a, m), (b, m))) && even(ix.links((b, m), (a, m))));
    parallel(a, b) || parallel(b, a) || antiparallel
}

/// Three (role, port index) pairs, each mapped to another.
type RolePairs = [((usize, u8), (usize, u8)); 3];

const LEFT_INTERNAL: RolePairs = [((0, 1), (1, 0)), ((0, 0), (2, 0)), ((1, 0), (2, 1))];
const RIGHT_INTERNAL: RolePairs = [((0, 1), (2, 1)), ((0, 0), (1, 1)), ((1, 1), (2, 0))];
// external ports, left side -> right side
const IN_MAP: RolePairs = [((0, 0), (1, 0)), ((0, 1), (0, 0)), ((1, 1), (0, 1))];
const OUT_MAP: RolePairs = [((2, 0), (1, 0)), ((2, 1), (2, 0)), ((1, 1), (2, 1))];

fn braid_pattern(ix: &Index, c: [CrossingId; 3], side: BraidSide) -> bool {
    if c[0] == c[1] || c[1] == c[2] || c[0] == c[2] {
        return false;
    }
    if ix.sign(c[0]) != ix.sign(c[1]) || ix.sign(c[1]) != ix.sign(c[2]) {
        return false;
    }
    let internal = if side == BraidSide::Left {
        LEFT_INTERNAL
    } else {
        RIGHT_INTERNAL
    };
    internal
        .iter()
        .all(|&((p, i), (q, j))| ix.links((c[p], i), (c[q], j)).is_some_and(|e| e.bars == 0))
}

fn t3_side(ix: &Index, c: CrossingId) -> Option<Polarity> {
    let ins = [ix.inn(c, 0), ix.inn(c, 1)];
    let outs = [ix.out(c, 0), ix.out(c, 1)];
    let odd = |es: [&DiagramEdge; 2]| es.iter().all(|e| e.has_odd_bars());
    let even = |es: [&DiagramEdge; 2]| es.iter().all(|e| !e.has_odd_bars());
    if odd(ins) && even(outs) {
        Some(Polarity::In)
    } else if odd(outs) && even(ins) {
        Some(Polarity::Out)
    } else {
        None
    }
}

/// Every site of the given kind, in a deterministic order. Empty for an
/// invalid diagram.
pub fn enumerate_sites(d: &TwistedDiagram, kind: MoveKind) -> Vec<MoveSite> {
    if !d.is_valid() {
        return Vec::new();
    }
    let ix = Index::new(d);
    let ids: Vec<CrossingId> = d.crossing_ids().collect();
    let signs = [CrossingSign::Positive, CrossingSign::Negative];
    match kind {
        MoveKind::R1Plus => d
            .edges()
            .iter()
            .flat_map(|e| {
                signs
                    .into_iter()
                    .flat_map(move |sign| (0..2).map(move |entry| (e.from, sign, entry)))
            })
            .map(|(edge, sign, entry)| MoveSite::R1Plus { edge, sign, entry })
            .collect(),
        MoveKind::R1Minus => ids
            .iter()
            .filter(|&&c| curl_crossing(&ix, c))
            .map(|&crossing| MoveSite::R1Minus { crossing })
            .collect(),
        MoveKind::R2Plus => {
            let mut out = Vec::new();
            for e1 in d.edges() {
                for e2 in d.edges() {
                    if e1.from == e2.from {
                        continue;
                    }
                    for sign in signs {
                        for parallel in [true, false] {
                            out.push(MoveSite::R2Plus {
                                over: e1.from,
                                under: e2.from,
                                sign,
                                parallel,
                            });
                        }
                    }
                }
            }
            out
        }
        MoveKind::R2Minus => {
            let mut out = Vec::new();
            for (k, &a) in ids.iter().enumerate() {
                for &b in &ids[k + 1..] {
                    if cancelling_pair(&ix, a, b) {
                        out.push(MoveSite::R2Minus {
                            first: a,
                            second: b,
                        });
                    }
                }
            }
            out
        }
        MoveKind::R3 => {
            let mut out = Vec::new();
            for side in [BraidSide::Left, BraidSide::Right] {
                // the internal edge leaving out-port 1 of the first crossing
                // fixes one more role
                for &a in &ids {
                    let t = ix.out(a, 1).to.crossing;
                    for &other in &ids {
                        let triple = match side {
                            BraidSide::Left => [a, t, other],
                            BraidSide::Right => [a, other, t],
                        };
                        if braid_pattern(&ix, triple, side) {
                            out.push(MoveSite::R3 {
                                crossings: triple,
                                side,
                            });
                        }
                    }
                }
            }
            out.sort();
            out.dedup();
            out
        }
        MoveKind::T3 => ids
            .iter()
            .filter(|&&c| t3_side(&ix, c).is_some())
            .map(|&crossing| MoveSite::T3 { crossing })
            .collect(),
    }
}

/// All sites of all kinds.
pub fn all_sites(d: &TwistedDiagram) -> Vec<MoveSite> {
    MoveKind::ALL
        .into_iter()
        .flat_map(|k| enumerate_sites(d, k))
        .collect()
}

fn fresh_ids(d: &TwistedDiagram, count: CrossingId) -> Result<CrossingId, MoveError> {
    let max = d.max_crossing_id();
    max.checked_add(count)
        .map(|_| max + 1)
        .ok_or(MoveError::Diagram(DiagramError::IdentifierOverflow(max)))
}

/// Removes the crossings in `gone`, joining each strand straight through
/// them and adding up bars. Strands that close up inside `gone` become free
/// loops.
fn splice_out(d: &TwistedDiagram, gone: &BTreeSet<CrossingId>) -> TwistedDiagram {
    let from: BTreeMap<Port, &DiagramEdge> = d.edges().iter().map(|e| (e.from, e)).collect();
    let mut used = BTreeSet::new();
    let mut edges = Vec::new();
    for e in d
        .edges()
        .iter()
        .filter(|e| !gone.contains(&e.from.crossing))
    {
        let (mut to, mut bars) = (e.to, e.bars);
        while gone.contains(&to.crossing) {
            let next = from[&to.through()];
            used.insert(next.from);
            bars = bars.wrapping_add(next.bars);
            to = next.to;
        }
        edges.push(DiagramEdge {
            from: e.from,
            to,
            bars,
        });
    }
    let mut loops = d.free_loops().to_vec();
    for e in d.edges().iter().filter(|e| gone.contains(&e.from.crossing)) {
        if used.contains(&e.from) {
            continue;
        }
        let mut bars = 0u32;
        let mut p = e.from;
        while used.insert(p) {
            let next = from[&p];
            bars = bars.wrapping_add(next.bars);
            p = next.to.through();
        }
        loops.push(bars);
    }
    let crossings = d
        .crossings()
        .iter()
        .filter(|(c, _)| !gone.contains(c))
        .map(|(&c, &s)| (c, s));
    TwistedDiagram::new(crossings, edges, loops)
}

fn require(ok: bool, site: MoveSite) -> Result<(), MoveError> {
    if ok {
        Ok(())
    } else {
        Err(MoveError::InvalidSite(site))
    }
}

/// Applies `site` to `d`. Fails if `d` is invalid or the site does not match.
pub fn apply(d: &TwistedDiagram, site: MoveSite) -> Result<TwistedDiagram, MoveError> {
    d.ensure_valid()?;
    let ix = Index::new(d);
    let has = |c: CrossingId| d.crossings().contains_key(&c);
    match site {
        MoveSite::R1Plus { edge, sign, entry } => {
            require(entry < 2, site)?;
            let old = *ix.from.get(&edge).ok_or(MoveError::InvalidSite(site))?;
            let c = fresh_ids(d, 1)?;
            let mut edges: Vec<DiagramEdge> = d
                .edges()
                .iter()
                .filter(|e| e.from != edge)
                .copied()
                .collect();
            edges.push(DiagramEdge {
                from: old.from,
                to: Port::incoming(c, entry),
                bars: old.bars,
            });
            edges.push(DiagramEdge::new((c, 1 - entry), (c, 1 - entry), 0));
            edges.push(DiagramEdge {
                from: Port::outgoing(c, entry),
                to: old.to,
                bars: 0,
            });
            let crossings = d
                .crossings()
                .iter()
                .map(|(&k, &s)| (k, s))
                .chain([(c, sign)]);
            Ok(TwistedDiagram::new(
                crossings,
                edges,
                d.free_loops().to_vec(),
            ))
        }
        MoveSite::R1Minus { crossing } => {
            require(has(crossing) && curl_crossing(&ix, crossing), site)?;
            Ok(splice_out(d, &BTreeSet::from([crossing])))
        }
        MoveSite::R2Plus {
            over,
            under,
            sign,
            parallel,
        } => {
            require(over != under, site)?;
            let a = *ix.from.get(&over).ok_or(MoveError::InvalidSite(site))?;
            let b = *ix.from.get(&under).ok_or(MoveError::InvalidSite(site))?;
            let c1 = fresh_ids(d, 2)?;
            let c2 = c1 + 1;
            let o1 = sign.over_entry();
            let o2 = sign.opposite().over_entry();
            let (u1, u2) = (1 - o1, 1 - o2);
            let mut edges: Vec<DiagramEdge> = d
                .edges()
                .iter()
                .filter(|e| e.from != over && e.from != under)
                .copied()
                .collect();
            edges.push(DiagramEdge {
                from: a.from,
                to: Port::incoming(c1, o1),
                bars: a.bars,
            });
            edges.push(DiagramEdge::new((c1, 1 - o1), (c2, o2), 0));
            edges.push(DiagramEdge {
                from: Port::outgoing(c2, 1 - o2),
                to: a.to,
                bars: 0,
            });
            let (first, second) = if parallel {
                ((c1, u1), (c2, u2))
            } else {
                ((c2, u2), (c1, u1))
            };
            edges.push(DiagramEdge {
                from: b.from,
                to: Port::incoming(first.0, first.1),
                bars: b.bars,
            });
            edges.push(DiagramEdge::new((first.0, 1 - first.1), second, 0));
            edges.push(DiagramEdge {
                from: Port::outgoing(second.0, 1 - second.1),
                to: b.to,
                bars: 0,
            });
            let crossings = d
                .crossings()
                .iter()
                .map(|(&k, &s)| (k, s))
                .chain([(c1, sign), (c2, sign.opposite())]);
            Ok(TwistedDiagram::new(
                crossings,
                edges,
                d.free_loops().to_vec(),
            ))
        }
        MoveSite::R2Minus { first, second } => {
            require(first < second && has(first) && has(second), site)?;
            require(cancelling_pair(&ix, first, second), site)?;
            Ok(splice_out(d, &BTreeSet::from([first, second])))
        }
        MoveSite::R3 { crossings, side } => {
            require(crossings.iter().all(|&c| has(c)), site)?;
            require(braid_pattern(&ix, crossings, side), site)?;
            let (old, new) = match side {
                BraidSide::Left => (LEFT_INTERNAL, RIGHT_INTERNAL),
                BraidSide::Right => (RIGHT_INTERNAL, LEFT_INTERNAL),
            };
            let at = |(r, i): (usize, u8)| (crossings[r], i);
            let lookup = |map: &RolePairs, p: (CrossingId, u8)| {
                map.iter().find_map(|&(l, r)| match side {
                    BraidSide::Left => (at(l) == p).then(|| at(r)),
                    BraidSide::Right => (at(r) == p).then(|| at(l)),
                })
            };
            let internal: BTreeSet<Port> = old
                .iter()
                .map(|&(f, _)| Port::outgoing(at(f).0, at(f).1))
                .collect();
            let mut edges = Vec::new();
            for e in d.edges().iter().filter(|e| !internal.contains(&e.from)) {
                let from = lookup(&OUT_MAP, (e.from.crossing, e.from.index))
                    .map_or(e.from, |(c, i)| Port::outgoing(c, i));
                let to = lookup(&IN_MAP, (e.to.crossing, e.to.index))
                    .map_or(e.to, |(c, i)| Port::incoming(c, i));
                edges.push(DiagramEdge {
                    from,
                    to,
                    bars: e.bars,
                });
            }
            edges.extend(new.iter().map(|&(f, t)| DiagramEdge::new(at(f), at(t), 0)));
            Ok(TwistedDiagram::new(
                d.crossings().clone(),
                edges,
                d.free_loops().to_vec(),
            ))
        }
        MoveSite::T3 { crossing } => {
            require(has(crossing), site)?;
            let side = t3_side(&ix, crossing).ok_or(MoveError::InvalidSite(site))?;
            let edges = d
                .edges()
                .iter()
                .map(|e| {
                    let mut e = *e;
                    for (port, polarity) in
                        [(&mut e.from, Polarity::Out), (&mut e.to, Polarity::In)]
                    {
                        if port.crossing == crossing {
                            *port = port.flipped();
                            e.bars = if polarity == side {
                                e.bars - 1
                            } else {
                                e.bars.wrapping_add(1)
                            };
                        }
                    }
                    e
                })
                .collect();
            Ok(TwistedDiagram::new(
                d.crossings().clone(),
                edges,
                d.free_loops().to_vec(),
            ))
        }
    }
}

/// True if applying `site` leaves more crossing-free components than before.
pub fn creates_free_loop(d: &TwistedDiagram, site: MoveSite) -> bool {
    matches!(site.kind(), MoveKind::R1Minus | MoveKind::R2Minus)
        && apply(d, site).is_ok_and(|r| r.free_loops().len() > d.free_loops().len())
}

/// Sites a random walk may use: every site except removals that would leave
/// a crossing-free component behind.
pub fn walk_sites(d: &TwistedDiagram, kind: MoveKind) -> Vec<MoveSite> {
    let mut sites = enumerate_sites(d, kind);
    sites.retain(|&s| !creates_free_loop(d, s));
    sites
}

/// The sequence of sites and intermediate diagrams of a seeded walk. Each
/// step picks a move kind uniformly among kinds with usable sites, then a
/// site of that kind uniformly. A walk stops early if no site is usable.
pub fn random_walk_trace(
    d: &TwistedDiagram,
    steps: usize,
    seed: u64,
) -> Result<Vec<(MoveSite, TwistedDiagram)>, MoveError> {
    d.ensure_valid()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = d.clone();
    let mut trace = Vec::with_capacity(steps);
    for _ in 0..steps {
        let by_kind: Vec<Vec<MoveSite>> = MoveKind::ALL
            .into_iter()
            .map(|k| walk_sites(&current, k))
            .filter(|s| !s.is_empty())
            .collect();
        let Some(sites) = by_kind.choose(&mut rng) else {
            break;
        };
        let site = *sites.choose(&mut rng).expect("non-empty");
        current = apply(&current, site)?;
        trace.push((site, current.clone()));
    }
    Ok(trace)
}

/// `steps` random moves from `d`, deterministic in `seed`.
pub fn random_walk(
    d: &TwistedDiagram,
    steps: usize,
    seed: u64,
) -> Result<TwistedDiagram, MoveError> {
    Ok(random_walk_trace(d, steps, seed)?
        .pop()
        .map_or_else(|| d.clone(), |(_, d)| d))
}

/// Cuts three distinct edges and routes them through a new left-hand braid
/// triangle of the given sign. The result is a different diagram; it exists to
/// seed diagrams that offer an R3 site.
pub fn insert_braid_triangle(
    d: &TwistedDiagram,
    edges: [Port; 3],
    sign: CrossingSign,
) -> Result<TwistedDiagram, MoveError> {
    d.ensure_valid()?;
    let ix = Index::new(d);
    let cut: Vec<&DiagramEdge> = edges
        .iter()
        .map(|p| ix.from.get(p).copied().ok_or(DiagramError::NoSuchEdge(*p)))
        .collect::<Result<_, _>>()?;
    if edges[0] == edges[1] || edges[1] == edges[2] || edges[0] == edges[2] {
        return Err(DiagramError::NoSuchEdge(edges[1]).into());
    }
    let base = fresh_ids(d, 3)?;
    let c = [base, base + 1, base + 2];
    let at = |(r, i): (usize, u8)| (c[r], i);
    let mut out: Vec<DiagramEdge> = d
        .edges()
        .iter()
        .filter(|e| !edges.contains(&e.from))
        .copied()
        .collect();
    out.extend(
        LEFT_INTERNAL
            .iter()
            .map(|&(f, t)| DiagramEdge::new(at(f), at(t), 0)),
    );
    // strand k enters at the k-th external in-port and leaves at the k-th
    // external out-port along its own path through the triangle
    let entries = [(0, 0), (0, 1), (1, 1)];
    let exits = [(1, 1), (2, 1), (2, 0)];
    for k in 0..3 {
        let (ec, ei) = at(entries[k]);
        let (xc, xi) = at(exits[k]);
        out.push(DiagramEdge {
            from: cut[k].from,
            to: Port::incoming(ec, ei),
            bars: cut[k].bars,
        });
        out.push(DiagramEdge {
            from: Port::outgoing(xc, xi),
            to: cut[k].to,
            bars: 0,
        });
    }
    let crossings = d
        .crossings()
        .iter()
        .map(|(&k, &s)| (k, s))
        .chain(c.map(|k| (k, sign)));
    Ok(TwistedDiagram::new(crossings, out, d.free_loops().to_vec()))
}
