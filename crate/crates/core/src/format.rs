//! Line-oriented text format for diagrams.
//!
//! ```text
//! # virtual trefoil
//! crossing 1 +
//! crossing 2 +
//! edge 1.0 2.0
//! edge 1.1 2.1 bars=1
//! loop bars=0
//! ```
//!
//! `edge j.l i.e bars=k` runs from out-port `l` of crossing `j` to in-port `e`
//! of crossing `i`. `bars=0` may be omitted and is omitted on output.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::diagram::{
    CrossingId, CrossingSign, DiagramEdge, DiagramError, Port, TwistedDiagram, Violation,
};

pub fn render_diagram(d: &TwistedDiagram) -> String {
    let mut out = String::new();
    for (&c, &s) in d.crossings() {
        writeln!(out, "crossing {c} {}", s.symbol()).unwrap();
    }
    for e in d.edges() {
        write!(out, "edge {} {}", e.from, e.to).unwrap();
        if e.bars != 0 {
            write!(out, " bars={}", e.bars).unwrap();
        }
        out.push('\n');
    }
    for &b in d.free_loops() {
        writeln!(out, "loop bars={b}").unwrap();
    }
    out
}

/// Parses and validates. Grammar problems are [`DiagramError::Syntax`];
/// well-formed text describing a broken diagram is [`DiagramError::Invalid`].
pub fn parse_diagram(s: &str) -> Result<TwistedDiagram, DiagramError> {
    let mut crossings: Vec<(CrossingId, CrossingSign)> = Vec::new();
    let mut edges = Vec::new();
    let mut loops = Vec::new();
    let mut violations = Vec::new();

    for (k, raw) in s.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        let Some((&keyword, args)) = tokens.split_first() else {
            continue;
        };
        let syntax = |message: String| DiagramError::Syntax { line, message };
        match keyword {
            "crossing" => {
                let [id, sign] = args else {
                    return Err(syntax("expected `crossing <id> <+|->`".into()));
                };
                let id: CrossingId = id
                    .parse()
                    .map_err(|_| syntax(format!("bad crossing id `{id}`")))?;
                let sign = match *sign {
                    "+" => CrossingSign::Positive,
                    "-" => CrossingSign::Negative,
                    other => return Err(syntax(format!("bad crossing sign `{other}`"))),
                };
                if crossings.iter().any(|&(c, _)| c == id) {
                    violations.push(Violation::DuplicateCrossing(id));
                } else {
                    crossings.push((id, sign));
                }
            }
            "edge" => {
                let (from, to, bars) = match args {
                    [from, to] => (from, to, None),
                    [from, to, bars] => (from, to, Some(*bars)),
                    _ => return Err(syntax("expected `edge <j>.<l> <i>.<e> [bars=<k>]`".into())),
                };
                let (fc, fi) = parse_port(from).map_err(syntax)?;
                let (tc, ti) = parse_port(to).map_err(syntax)?;
                let bars = bars
                    .map(parse_bars)
                    .transpose()
                    .map_err(syntax)?
                    .unwrap_or(0);
                edges.push(DiagramEdge {
                    from: Port::outgoing(fc, fi),
                    to: Port::incoming(tc, ti),
                    bars,
                });
            }
            "loop" => {
                let bars = match args {
                    [] => 0,
                    [bars] => parse_bars(bars).map_err(syntax)?,
                    _ => return Err(syntax("expected `loop [bars=<k>]`".into())),
                };
                loops.push(bars);
            }
            other => return Err(syntax(format!("unknown keyword `{other}`"))),
        }
    }

    let d = TwistedDiagram::new(crossings, edges, loops);
    violations.extend(d.validate());
    if violations.is_empty() {
        Ok(d)
    } else {
        Err(DiagramError::Invalid(violations))
    }
}

fn parse_port(token: &str) -> Result<(CrossingId, u8), String> {
    let (c, i) = token
        .split_once('.')
        .ok_or_else(|| format!("expected a port `<crossing>.<0|1>`, got `{token}`"))?;
    let c: CrossingId = c
        .parse()
        .map_err(|_| format!("bad crossing id in port `{token}`"))?;
    let i = match i {
        "0" => 0,
        "1" => 1,
        _ => return Err(format!("port index in `{token}` must be 0 or 1")),
    };
    Ok((c, i))
}

fn parse_bars(token: &str) -> Result<u32, String> {
    token
        .strip_prefix("bars=")
        .and_then(|k| k.parse().ok())
        .ok_or_else(|| format!("expected `bars=<k>` with k >= 0, got `{token}`"))
}

impl fmt::Display for TwistedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_diagram(self))
    }
}

impl FromStr for TwistedDiagram {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_diagram(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kink_file() {
        let d = parse_diagram("crossing 1 +\nedge 1.0 1.0\nedge 1.1 1.1 bars=0\n").unwrap();
        assert_eq!(d.crossing_count(), 1);
        assert_eq!(d.edges().len(), 2);
        assert_eq!(
            render_diagram(&d),
            "crossing 1 +\nedge 1.0 1.0\nedge 1.1 1.1\n"
        );
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# a comment\n\ncrossing 3 -   # trailing\nedge 3.0 3.1 bars=2\nedge 3.1 3.0\nloop bars=1\nloop\n";
        let d = parse_diagram(text).unwrap();
        assert_eq!(d.free_loops(), &[0, 1]);
        assert_eq!(d.edge_from(Port::outgoing(3, 0)).unwrap().bars, 2);
    }

    #[test]
    fn undeclared_crossing_is_semantic() {
        let err = parse_diagram("crossing 1 +\nedge 1.0 2.0\nedge 1.1 1.1\n").unwrap_err();
        match err {
            DiagramError::Invalid(v) => {
                assert!(v.contains(&Violation::UndeclaredCrossing(Port::incoming(2, 0))));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let cases = [
            ("crossing 1 +\nfoo 1\n", 2),
            ("crossing x +\n", 1),
            ("crossing 1 *\n", 1),
            ("crossing 1 +\n\nedge 1.2 1.0\n", 3),
            ("crossing 1 +\nedge 1.0 1.0 bars=-1\n", 2),
            ("loop bars=1 extra\n", 1),
            ("crossing 1\n", 1),
        ];
        for (text, line) in cases {
            match parse_diagram(text) {
                Err(DiagramError::Syntax { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn duplicate_crossing_reported() {
        let err =
            parse_diagram("crossing 1 +\ncrossing 1 -\nedge 1.0 1.0\nedge 1.1 1.1\n").unwrap_err();
        assert_eq!(
            err,
            DiagramError::Invalid(vec![Violation::DuplicateCrossing(1)])
        );
    }

    #[test]
    fn empty_text_is_empty_diagram() {
        assert_eq!(parse_diagram("").unwrap(), TwistedDiagram::empty());
        assert_eq!(render_diagram(&TwistedDiagram::empty()), "");
    }
}
