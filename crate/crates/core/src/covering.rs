//! The double covering diagram of a twisted diagram.
//!
//! Crossing `i` of the input lifts to crossing `2i - 1` (first sheet, a copy of
//! D) and crossing `2i` (second sheet, a copy of s(D)); both keep the sign of
//! `i`. An edge with an even number of bars stays on its sheet, an edge with an
//! odd number of bars moves to the other sheet. Port indices on the second
//! sheet are flipped, as in s(D).

use crate::diagram::{connected_sum, CrossingId, DiagramEdge, DiagramError, Port, TwistedDiagram};

fn first_sheet(c: CrossingId) -> CrossingId {
    2 * c - 1
}

fn second_sheet(c: CrossingId) -> CrossingId {
    2 * c
}

/// The double covering diagram. Always bar-free, with twice as many
/// crossings as `d`.
pub fn double_cover(d: &TwistedDiagram) -> Result<TwistedDiagram, DiagramError> {
    d.ensure_valid()?;
    let max = d.max_crossing_id();
    if max > CrossingId::MAX / 2 {
        return Err(DiagramError::IdentifierOverflow(max));
    }

    let crossings = d
        .crossings()
        .iter()
        .flat_map(|(&c, &s)| [(first_sheet(c), s), (second_sheet(c), s)]);

    let mut edges = Vec::with_capacity(2 * d.edges().len());
    for e in d.edges() {
        let (j, lambda) = (e.from.crossing, e.from.index);
        let (i, eps) = (e.to.crossing, e.to.index);
        if e.has_odd_bars() {
            edges.push(DiagramEdge::new(
                (first_sheet(j), lambda),
                (second_sheet(i), 1 - eps),
                0,
            ));
            edges.push(DiagramEdge::new(
                (second_sheet(j), 1 - lambda),
                (first_sheet(i), eps),
                0,
            ));
        } else {
            edges.push(DiagramEdge::new(
                (first_sheet(j), lambda),
                (first_sheet(i), eps),
                0,
            ));
            edges.push(DiagramEdge::new(
                (second_sheet(j), 1 - lambda),
                (second_sheet(i), 1 - eps),
                0,
            ));
        }
    }

    // an odd loop's two lifts join into a single curve
    let loops = d
        .free_loops()
        .iter()
        .flat_map(|&b| if b % 2 == 0 { vec![0, 0] } else { vec![0] })
        .collect();

    Ok(TwistedDiagram::new(crossings, edges, loops))
}

/// For a bar-free `d0` and one of its edges: the double cover of `d0` with one
/// extra bar on that edge, and the connected sum of `d0` and s(`d0`) taken
/// along that edge and its mirror image.
pub fn connected_sum_witness(
    d0: &TwistedDiagram,
    edge: Port,
) -> Result<(TwistedDiagram, TwistedDiagram), DiagramError> {
    d0.ensure_valid()?;
    if !d0.is_strictly_virtual() {
        return Err(DiagramError::NotBarFree);
    }
    if d0.edge_from(edge).is_none() {
        return Err(DiagramError::NoSuchEdge(edge));
    }
    let barred_edges = d0
        .edges()
        .iter()
        .map(|e| {
            if e.from == edge {
                DiagramEdge {
                    bars: e.bars + 1,
                    ..*e
                }
            } else {
                *e
            }
        })
        .collect();
    let barred = TwistedDiagram::new(
        d0.crossings().clone(),
        barred_edges,
        d0.free_loops().to_vec(),
    );
    let cover = double_cover(&barred)?;
    let csum = connected_sum(d0, edge, &d0.mirror(), edge.flipped())?;
    Ok((cover, csum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{random_diagram, CrossingSign};

    fn barred_kink() -> TwistedDiagram {
        TwistedDiagram::new(
            [(1, CrossingSign::Positive)],
            vec![
                DiagramEdge::new((1, 0), (1, 0), 0),
                DiagramEdge::new((1, 1), (1, 1), 1),
            ],
            vec![],
        )
    }

    #[test]
    fn bar_free_cover_is_union_with_mirror() {
        let d = random_diagram(4, 0, 9);
        let cover = double_cover(&d).unwrap();
        // sheet 1 restricted to odd ids is d, sheet 2 restricted to even ids is s(d)
        for e in d.edges() {
            let up = cover
                .edge_from(Port::outgoing(2 * e.from.crossing - 1, e.from.index))
                .unwrap();
            assert_eq!(up.to, Port::incoming(2 * e.to.crossing - 1, e.to.index));
        }
        for e in d.mirror().edges() {
            let down = cover
                .edge_from(Port::outgoing(2 * e.from.crossing, e.from.index))
                .unwrap();
            assert_eq!(down.to, Port::incoming(2 * e.to.crossing, e.to.index));
        }
    }

    #[test]
    fn barred_kink_cover_is_connected() {
        let cover = double_cover(&barred_kink()).unwrap();
        assert_eq!(cover.crossing_count(), 2);
        assert!(cover.is_strictly_virtual());
        assert!(cover.is_valid());
        assert_eq!(cover.component_count(), 1);
        assert_eq!(cover.writhe(), 2);
    }

    #[test]
    fn loops_lift_by_parity() {
        let d = TwistedDiagram::new([], vec![], vec![0, 1, 2, 3]);
        let cover = double_cover(&d).unwrap();
        assert_eq!(cover.free_loops(), &[0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn invalid_input_is_rejected() {
        let d = TwistedDiagram::new([(1, CrossingSign::Positive)], vec![], vec![]);
        assert!(matches!(double_cover(&d), Err(DiagramError::Invalid(_))));
    }

    #[test]
    fn witness_requires_bar_free_input() {
        assert_eq!(
            connected_sum_witness(&barred_kink(), Port::outgoing(1, 0)).unwrap_err(),
            DiagramError::NotBarFree
        );
        let d = random_diagram(3, 0, 1);
        assert_eq!(
            connected_sum_witness(&d, Port::outgoing(9, 0)).unwrap_err(),
            DiagramError::NoSuchEdge(Port::outgoing(9, 0))
        );
        let (cover, csum) = connected_sum_witness(&d, Port::outgoing(2, 1)).unwrap();
        assert_eq!(cover.crossing_count(), 6);
        assert_eq!(csum.crossing_count(), 6);
        assert!(cover.is_valid() && csum.is_valid());
    }
}
