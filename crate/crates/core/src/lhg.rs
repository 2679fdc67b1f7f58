//! The `.lhg` text format.
//!
//! First line `lhg <r> <n>`, then one edge per line as r space-separated
//! vertex ids. Blank lines and `#` comments are ignored. The reader rejects
//! invariant violations with line numbers; the writer emits edges in
//! lexicographic order so write-read-write round-trips are bit-exact.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::hypergraph::LinearHypergraph;

pub fn write_lhg(g: &LinearHypergraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "lhg {} {}", g.r(), g.id_bound());
    for edge in g.edges() {
        let line: Vec<String> = edge.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

pub fn read_lhg(text: &str) -> Result<LinearHypergraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<Vec<u32>> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        match header {
            None => {
                let mut parts = line.split_whitespace();
                if parts.next() != Some("lhg") {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "expected header `lhg <r> <n>`".into(),
                    });
                }
                let r = parse_num(parts.next(), line_no, "r")?;
                let n = parse_num(parts.next(), line_no, "n")?;
                if parts.next().is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "trailing tokens after header".into(),
                    });
                }
                header = Some((r, n));
            }
            Some((r, _)) => {
                let verts: Vec<u32> = line
                    .split_whitespace()
                    .map(|tok| {
                        tok.parse::<u32>().map_err(|_| Error::Parse {
                            line: line_no,
                            message: format!("bad vertex id `{tok}`"),
                        })
                    })
                    .collect::<Result<_>>()?;
                if verts.len() != r {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("edge has {} vertices, expected {}", verts.len(), r),
                    });
                }
                edges.push(verts);
                edge_lines.push(line_no);
            }
        }
    }
    let (r, n) = header.ok_or(Error::Parse {
        line: 0,
        message: "missing `lhg <r> <n>` header".into(),
    })?;
    LinearHypergraph::build(r, n, &edges).map_err(|e| annotate(e, &edge_lines))
}

pub fn write_lhg_file(g: &LinearHypergraph, path: &Path) -> Result<()> {
    std::fs::write(path, write_lhg(g))?;
    Ok(())
}

pub fn read_lhg_file(path: &Path) -> Result<LinearHypergraph> {
    let text = std::fs::read_to_string(path)?;
    read_lhg(&text)
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    tok.and_then(|t| t.parse::<usize>().ok())
        .ok_or_else(|| Error::Parse {
            line,
            message: format!("bad or missing {what}"),
        })
}

/// Maps a build error's edge index to the corresponding input line.
fn annotate(e: Error, edge_lines: &[usize]) -> Error {
    let line_of = |index: usize| edge_lines.get(index).copied().unwrap_or(0);
    match e {
        Error::BadArity { index, .. } => Error::Parse {
            line: line_of(index),
            message: e.to_string(),
        },
        Error::DuplicateEdge { second, .. } => Error::Parse {
            line: line_of(second),
            message: e.to_string(),
        },
        Error::LinearityViolation { second, .. } => Error::Parse {
            line: line_of(second),
            message: e.to_string(),
        },
        Error::VertexOutOfRange(..) => Error::Parse {
            line: 0,
            message: e.to_string(),
        },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let g = LinearHypergraph::build(
            3,
            7,
            &[vec![2, 4, 5], vec![0, 1, 2], vec![0, 3, 4], vec![1, 3, 5]],
        )
        .unwrap();
        let text = write_lhg(&g);
        let back = read_lhg(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(write_lhg(&back), text);
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let text = "# partial triple system\nlhg 3 5\n\n0 1 2   # first line\n0 3 4\n";
        let g = read_lhg(text).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.r(), 3);
    }

    #[test]
    fn violations_carry_line_numbers() {
        let text = "lhg 3 5\n0 1 2\n0 1 3\n";
        match read_lhg(text).unwrap_err() {
            Error::Parse { line, message } => {
                assert_eq!(line, 3);
                assert!(message.contains("linearity"));
            }
            other => panic!("unexpected {other:?}"),
        }
        let dup = "lhg 2 3\n0 1\n1 0\n";
        match read_lhg(dup).unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn header_errors() {
        assert!(matches!(read_lhg(""), Err(Error::Parse { .. })));
        assert!(matches!(read_lhg("hg 2 3\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(read_lhg("lhg 2 3\n0\n"), Err(Error::Parse { line: 2, .. })));
    }
}
