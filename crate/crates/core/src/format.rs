//! Text formats for games and update traces.
//!
//! Game files:
//!
//! ```text
//! buchi-game v1
//! vertices <n>
//! <id> <owner: 1|2> <buchi: 0|1>     n lines, ids 0..n-1 in order
//! edges <m>
//! <u> <v>                             m lines, in inedge tie-break order
//! ```
//!
//! Trace files hold one event per line: `delete <u> <v>`, `insert <u> <v>`
//! or `query`. In both formats blank lines and lines starting with `#` are
//! ignored.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{GameGraph, GraphError, Owner, VertexId};

pub const HEADER: &str = "buchi-game v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-blank, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

struct Lines<'a, I: Iterator<Item = (usize, &'a str)>> {
    inner: I,
    last: usize,
}

impl<'a, I: Iterator<Item = (usize, &'a str)>> Lines<'a, I> {
    fn next_line(&mut self, what: &str) -> Result<(usize, Vec<&'a str>), FormatError> {
        match self.inner.next() {
            Some((no, l)) => {
                self.last = no;
                Ok((no, l.split_whitespace().collect()))
            }
            None => Err(syntax(
                self.last + 1,
                format!("unexpected end of file, expected {what}"),
            )),
        }
    }
}

fn number(line: usize, token: &str, what: &str) -> Result<usize, FormatError> {
    token
        .parse()
        .map_err(|_| syntax(line, format!("invalid {what} `{token}`")))
}

/// `<keyword> <count>`
fn counted(line: usize, fields: &[&str], keyword: &str) -> Result<usize, FormatError> {
    match fields {
        [k, count] if *k == keyword => number(line, count, "count"),
        _ => Err(syntax(line, format!("expected `{keyword} <count>`"))),
    }
}

pub fn parse_game(text: &str) -> Result<GameGraph, FormatError> {
    let mut lines = Lines {
        inner: content_lines(text),
        last: 0,
    };

    let (no, fields) = lines.next_line("header")?;
    if fields.join(" ") != HEADER {
        return Err(syntax(no, format!("expected header `{HEADER}`")));
    }

    let (no, fields) = lines.next_line("vertex count")?;
    let n = counted(no, &fields, "vertices")?;
    let mut vertices = Vec::with_capacity(n);
    for expected in 0..n {
        let (no, fields) = lines.next_line("vertex record")?;
        let [id, owner, buchi] = fields[..] else {
            if fields.first() == Some(&"edges") {
                return Err(syntax(
                    no,
                    format!("found {expected} vertex records, header says {n}"),
                ));
            }
            return Err(syntax(no, "expected `<id> <owner> <buchi>`"));
        };
        if number(no, id, "vertex id")? != expected {
            return Err(syntax(no, format!("expected vertex id {expected}")));
        }
        let owner = match owner {
            "1" => Owner::Player1,
            "2" => Owner::Player2,
            _ => {
                return Err(syntax(
                    no,
                    format!("invalid owner `{owner}`, expected 1 or 2"),
                ))
            }
        };
        let buchi = match buchi {
            "0" => false,
            "1" => true,
            _ => {
                return Err(syntax(
                    no,
                    format!("invalid Büchi flag `{buchi}`, expected 0 or 1"),
                ))
            }
        };
        vertices.push((owner, buchi));
    }

    let (no, fields) = lines.next_line("edge count")?;
    let m = counted(no, &fields, "edges")?;
    let mut edges = Vec::with_capacity(m);
    for found in 0..m {
        let (no, fields) = match lines.inner.next() {
            Some((no, l)) => {
                lines.last = no;
                (no, l.split_whitespace().collect::<Vec<_>>())
            }
            None => {
                return Err(syntax(
                    lines.last + 1,
                    format!("found {found} edge records, header says {m}"),
                ))
            }
        };
        let [u, v] = fields[..] else {
            return Err(syntax(no, "expected `<u> <v>`"));
        };
        let (u, v) = (number(no, u, "vertex id")?, number(no, v, "vertex id")?);
        for x in [u, v] {
            if x >= n {
                return Err(syntax(no, format!("vertex {x} out of range 0..{n}")));
            }
        }
        edges.push((VertexId::new(u), VertexId::new(v)));
    }
    if let Some((no, _)) = lines.inner.next() {
        return Err(syntax(
            no,
            format!("more than the declared {m} edge records"),
        ));
    }

    Ok(GameGraph::build(&vertices, &edges)?)
}

/// Writes the surviving graph in the game format. Edges appear in creation
/// order; on a freshly built or parsed graph this reproduces the input.
pub fn render_game(g: &GameGraph) -> String {
    let mut out = String::new();
    writeln!(out, "{HEADER}").unwrap();
    writeln!(out, "vertices {}", g.n()).unwrap();
    for v in g.vertices() {
        let owner = match g.owner(v) {
            Owner::Player1 => 1,
            Owner::Player2 => 2,
        };
        writeln!(out, "{} {} {}", v, owner, u8::from(g.is_buchi(v))).unwrap();
    }
    writeln!(out, "edges {}", g.edge_count()).unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TraceEvent {
    Delete(VertexId, VertexId),
    Insert(VertexId, VertexId),
    Query,
}

impl std::fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TraceEvent::Delete(u, v) => write!(f, "delete {u} {v}"),
            TraceEvent::Insert(u, v) => write!(f, "insert {u} {v}"),
            TraceEvent::Query => f.write_str("query"),
        }
    }
}

/// Parses a trace. Vertex ids are range-checked later, by the solver.
pub fn parse_trace(text: &str) -> Result<Vec<TraceEvent>, FormatError> {
    content_lines(text)
        .map(|(no, l)| {
            let fields: Vec<&str> = l.split_whitespace().collect();
            let edge = |u: &str, v: &str| -> Result<(VertexId, VertexId), FormatError> {
                Ok((
                    VertexId::new(number(no, u, "vertex id")?),
                    VertexId::new(number(no, v, "vertex id")?),
                ))
            };
            match fields[..] {
                ["delete", u, v] => edge(u, v).map(|(u, v)| TraceEvent::Delete(u, v)),
                ["insert", u, v] => edge(u, v).map(|(u, v)| TraceEvent::Insert(u, v)),
                ["query"] => Ok(TraceEvent::Query),
                _ => Err(syntax(no, format!("unrecognised trace event `{l}`"))),
            }
        })
        .collect()
}

pub fn render_trace(events: &[TraceEvent]) -> String {
    events.iter().map(|e| format!("{e}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    const F1: &str = "buchi-game v1\nvertices 1\n0 1 1\nedges 1\n0 0\n";

    #[test]
    fn parses_f1() {
        let g = parse_game(F1).unwrap();
        assert_eq!(g.n(), 1);
        assert!(g.is_buchi(v(0)));
        assert!(g.has_edge(v(0), v(0)));
        assert_eq!(render_game(&g), F1);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text =
            "# a game\nbuchi-game v1\n\nvertices 1\n# the only vertex\n0 1 1\nedges 1\n0 0\n";
        assert_eq!(render_game(&parse_game(text).unwrap()), F1);
    }

    #[test]
    fn round_trip_keeps_edge_order() {
        let g = f2();
        let text = render_game(&g);
        let h = parse_game(&text).unwrap();
        assert_eq!(h.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        assert_eq!(render_game(&h), text);
    }

    #[test]
    fn count_mismatch_is_a_syntax_error() {
        let short = "buchi-game v1\nvertices 1\n0 1 1\nedges 2\n0 0\n";
        assert_eq!(
            parse_game(short).unwrap_err(),
            FormatError::Syntax {
                line: 6,
                message: "found 1 edge records, header says 2".into()
            }
        );
        let long = "buchi-game v1\nvertices 1\n0 1 1\nedges 0\n0 0\n";
        assert!(matches!(
            parse_game(long),
            Err(FormatError::Syntax { line: 5, .. })
        ));
    }

    #[test]
    fn bad_records() {
        let bad_owner = "buchi-game v1\nvertices 1\n0 3 1\nedges 1\n0 0\n";
        assert!(matches!(
            parse_game(bad_owner),
            Err(FormatError::Syntax { line: 3, .. })
        ));
        let bad_header = "buchi-game v2\n";
        assert!(matches!(
            parse_game(bad_header),
            Err(FormatError::Syntax { line: 1, .. })
        ));
        let out_of_range = "buchi-game v1\nvertices 1\n0 1 1\nedges 1\n0 4\n";
        assert!(matches!(
            parse_game(out_of_range),
            Err(FormatError::Syntax { line: 5, .. })
        ));
    }

    #[test]
    fn missing_outedges_surface_build_errors() {
        let text = "buchi-game v1\nvertices 2\n0 1 1\n1 1 0\nedges 1\n0 0\n";
        assert_eq!(
            parse_game(text).unwrap_err(),
            FormatError::Graph(GraphError::ZeroOutdegree(v(1)))
        );
    }

    #[test]
    fn traces() {
        let text = "# updates\ndelete 0 1\nquery\n\ninsert 2 3\n";
        let events = parse_trace(text).unwrap();
        assert_eq!(
            events,
            vec![
                TraceEvent::Delete(v(0), v(1)),
                TraceEvent::Query,
                TraceEvent::Insert(v(2), v(3))
            ]
        );
        assert_eq!(parse_trace(&render_trace(&events)).unwrap(), events);
        assert!(matches!(
            parse_trace("remove 1 2"),
            Err(FormatError::Syntax { line: 1, .. })
        ));
    }
}
