//! Plain-text graph format, DOT export and search certificates.
//!
//! Graph files: `#` comment lines, one `n <N>` header, then `E <u> <v>` for
//! edges and `A <u> <v>` for arcs with 0-based labels. [`serialize`] writes
//! edges then arcs, each sorted, so its output is a fixpoint of
//! `serialize(parse(..))`.
//!
//! Certificates: a header block
//!
//! ```text
//! version mixed-moore/0.1.0
//! spec r=1 z=1 k=3 n=8 mode=count-all
//! count 2
//! stats nodes=11 prunes=2 leaves=4
//! converse 0 1
//! ```
//!
//! followed by one `graph <i>` ... `end` block per representative, whose body
//! is a graph file.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{GraphError, MixedGraph, Vertex};
use crate::search::{SearchCertificate, SearchMode, SearchSpec, SearchStats};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    SyntaxError { line: usize, message: String },
    #[error("invalid graph: {0}")]
    InvariantViolation(#[from] GraphError),
}

fn syntax(line: usize, message: impl Into<String>) -> IoError {
    IoError::SyntaxError {
        line,
        message: message.into(),
    }
}

/// A parsed graph with the normalization notes produced on the way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub graph: MixedGraph,
    pub warnings: Vec<String>,
}

fn parse_vertex(tok: Option<&str>, line: usize) -> Result<Vertex, IoError> {
    let tok = tok.ok_or_else(|| syntax(line, "missing vertex label"))?;
    tok.parse()
        .map_err(|_| syntax(line, format!("bad vertex label '{tok}'")))
}

/// `first_line` is the 1-based number of the first line of `text`, for
/// error messages about embedded graphs.
fn parse_at(text: &str, first_line: usize) -> Result<Parsed, IoError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut arcs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = first_line + idx;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut toks = content.split_whitespace();
        let key = toks.next().unwrap_or_default();
        match key {
            "n" => {
                if n.is_some() {
                    return Err(syntax(line, "repeated order header"));
                }
                let tok = toks.next().ok_or_else(|| syntax(line, "missing order"))?;
                n = Some(
                    tok.parse()
                        .map_err(|_| syntax(line, format!("bad order '{tok}'")))?,
                );
            }
            "E" | "A" => {
                if n.is_none() {
                    return Err(syntax(line, "edge or arc before the order header"));
                }
                let u = parse_vertex(toks.next(), line)?;
                let v = parse_vertex(toks.next(), line)?;
                if key == "E" {
                    edges.push((u, v))
                } else {
                    arcs.push((u, v))
                }
            }
            other => return Err(syntax(line, format!("unknown record '{other}'"))),
        }
        if let Some(extra) = toks.next() {
            return Err(syntax(line, format!("unexpected trailing token '{extra}'")));
        }
    }
    let n = n.ok_or_else(|| syntax(first_line, "missing order header 'n <N>'"))?;
    let (graph, folded) = MixedGraph::build_with_report(n, &edges, &arcs)?;
    let warnings = folded
        .into_iter()
        .map(|(u, v)| {
            format!("arcs ({u}, {v}) and ({v}, {u}) form a digon; read as edge {{{u}, {v}}}")
        })
        .collect();
    Ok(Parsed { graph, warnings })
}

pub fn parse(text: &str) -> Result<Parsed, IoError> {
    parse_at(text, 1)
}

pub fn serialize(g: &MixedGraph) -> String {
    let mut out = format!("n {}\n", g.order());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "E {u} {v}");
    }
    for &(u, v) in g.arcs() {
        let _ = writeln!(out, "A {u} {v}");
    }
    out
}

/// DOT digraph: edges are drawn without arrowheads, arcs with.
pub fn to_dot(g: &MixedGraph) -> String {
    let mut out = String::from("digraph G {\n");
    for v in 0..g.order() {
        let _ = writeln!(out, "  {v};");
    }
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -> {v} [dir=none];");
    }
    for &(u, v) in g.arcs() {
        let _ = writeln!(out, "  {u} -> {v};");
    }
    out.push_str("}\n");
    out
}

pub fn write_certificate(cert: &SearchCertificate) -> String {
    let s = &cert.spec;
    let mut out = String::new();
    let _ = writeln!(out, "version {}", cert.version);
    let _ = writeln!(
        out,
        "spec r={} z={} k={} n={} mode={}",
        s.r, s.z, s.k, s.n, s.mode
    );
    let _ = writeln!(out, "count {}", cert.count());
    let st = &cert.stats;
    let _ = writeln!(
        out,
        "stats nodes={} prunes={} leaves={}",
        st.nodes, st.prunes, st.leaves
    );
    out.push_str("converse");
    for &j in &cert.converse {
        if j == usize::MAX {
            out.push_str(" -");
        } else {
            let _ = write!(out, " {j}");
        }
    }
    out.push('\n');
    for (i, g) in cert.representatives.iter().enumerate() {
        let _ = writeln!(out, "graph {i}");
        out.push_str(&serialize(g));
        out.push_str("end\n");
    }
    out
}

fn key_values<'a>(
    toks: impl Iterator<Item = &'a str>,
    line: usize,
) -> Result<Vec<(&'a str, &'a str)>, IoError> {
    toks.map(|t| {
        t.split_once('=')
            .ok_or_else(|| syntax(line, format!("expected key=value, got '{t}'")))
    })
    .collect()
}

fn number<T: std::str::FromStr>(value: &str, line: usize) -> Result<T, IoError> {
    value
        .parse()
        .map_err(|_| syntax(line, format!("bad number '{value}'")))
}

pub fn parse_certificate(text: &str) -> Result<SearchCertificate, IoError> {
    let lines: Vec<&str> = text.lines().collect();
    let mut version = None;
    let mut spec = None;
    let mut count = None;
    let mut stats = SearchStats::default();
    let mut converse = Vec::new();
    let mut representatives = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let line = i + 1;
        let content = lines[i].trim();
        i += 1;
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut toks = content.split_whitespace();
        match toks.next().unwrap_or_default() {
            "version" => version = Some(toks.collect::<Vec<_>>().join(" ")),
            "spec" => {
                let (mut r, mut z, mut k, mut n, mut mode) =
                    (None, None, None, None, SearchMode::CountAll);
                for (key, value) in key_values(toks, line)? {
                    match key {
                        "r" => r = Some(number(value, line)?),
                        "z" => z = Some(number(value, line)?),
                        "k" => k = Some(number(value, line)?),
                        "n" => n = Some(number(value, line)?),
                        "mode" => mode = value.parse().map_err(|e: String| syntax(line, e))?,
                        other => return Err(syntax(line, format!("unknown spec field '{other}'"))),
                    }
                }
                let missing = || syntax(line, "spec needs r, z, k and n");
                spec = Some(SearchSpec {
                    r: r.ok_or_else(missing)?,
                    z: z.ok_or_else(missing)?,
                    k: k.ok_or_else(missing)?,
                    n: n.ok_or_else(missing)?,
                    mode,
                });
            }
            "count" => {
                let tok = toks.next().ok_or_else(|| syntax(line, "missing count"))?;
                count = Some(number::<usize>(tok, line)?);
            }
            "stats" => {
                for (key, value) in key_values(toks, line)? {
                    match key {
                        "nodes" => stats.nodes = number(value, line)?,
                        "prunes" => stats.prunes = number(value, line)?,
                        "leaves" => stats.leaves = number(value, line)?,
                        other => return Err(syntax(line, format!("unknown statistic '{other}'"))),
                    }
                }
            }
            "converse" => {
                converse = toks
                    .map(|t| {
                        if t == "-" {
                            Ok(usize::MAX)
                        } else {
                            number(t, line)
                        }
                    })
                    .collect::<Result<_, _>>()?;
            }
            "graph" => {
                let idx: usize = number(
                    toks.next()
                        .ok_or_else(|| syntax(line, "missing graph index"))?,
                    line,
                )?;
                if idx != representatives.len() {
                    return Err(syntax(
                        line,
                        format!(
                            "expected graph {}, found graph {idx}",
                            representatives.len()
                        ),
                    ));
                }
                let start = i;
                while i < lines.len() && lines[i].trim() != "end" {
                    i += 1;
                }
                if i == lines.len() {
                    return Err(syntax(line, "graph block without 'end'"));
                }
                let body = lines[start..i].join("\n");
                representatives.push(parse_at(&body, start + 1)?.graph);
                i += 1;
            }
            other => {
                return Err(syntax(
                    line,
                    format!("unknown certificate record '{other}'"),
                ))
            }
        }
    }
    let spec = spec.ok_or_else(|| syntax(1, "missing spec line"))?;
    let count = count.ok_or_else(|| syntax(1, "missing count line"))?;
    if count != representatives.len() {
        return Err(syntax(
            1,
            format!("count {count} but {} graphs listed", representatives.len()),
        ));
    }
    if converse.len() != count {
        return Err(syntax(1, "converse list does not match the count"));
    }
    Ok(SearchCertificate {
        spec,
        representatives,
        converse,
        stats,
        version: version.ok_or_else(|| syntax(1, "missing version line"))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{fig2a, moore_mixed_k3, tutte_coxeter};
    use crate::search::{enumerate, SearchOptions};

    #[test]
    fn parse_examples() {
        let p = parse("n 2\nE 0 1").unwrap();
        assert_eq!(p.graph.edges(), &[(0, 1)]);
        assert!(p.warnings.is_empty());

        let p = parse("n 2\nA 0 1\nA 1 0").unwrap();
        assert_eq!(p.graph.edges(), &[(0, 1)]);
        assert!(p.graph.arcs().is_empty());
        assert_eq!(p.warnings.len(), 1);

        assert_eq!(
            parse("n 2\nE 0 1\nA 0 1").unwrap_err(),
            IoError::InvariantViolation(GraphError::EdgeArcConflict(0, 1))
        );
        assert!(matches!(
            parse("n 2\nE 0 0"),
            Err(IoError::InvariantViolation(GraphError::SelfLoop(0)))
        ));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = parse("# c\nn 3\nE 0 1\nX 1 2").unwrap_err();
        assert_eq!(
            err,
            IoError::SyntaxError {
                line: 4,
                message: "unknown record 'X'".into()
            }
        );
        assert!(matches!(
            parse("E 0 1"),
            Err(IoError::SyntaxError { line: 1, .. })
        ));
        assert!(matches!(
            parse("n 3\nA 0 x"),
            Err(IoError::SyntaxError { line: 2, .. })
        ));
        assert!(matches!(
            parse("n 3\nA 0 1 2"),
            Err(IoError::SyntaxError { line: 2, .. })
        ));
        assert!(matches!(
            parse("n 3\nn 3"),
            Err(IoError::SyntaxError { line: 2, .. })
        ));
        assert!(matches!(parse(""), Err(IoError::SyntaxError { .. })));
    }

    #[test]
    fn round_trip() {
        for g in [fig2a(), moore_mixed_k3(3).unwrap(), tutte_coxeter()] {
            let text = serialize(&g);
            let back = parse(&text).unwrap().graph;
            assert_eq!(back, g);
            assert_eq!(serialize(&back), text);
        }
    }

    #[test]
    fn dot_export() {
        let edge = to_dot(&MixedGraph::build(2, &[(0, 1)], &[]).unwrap());
        assert!(edge.contains("0 -> 1 [dir=none];"));
        let arc = to_dot(&MixedGraph::build(2, &[], &[(0, 1)]).unwrap());
        assert!(arc.contains("  0 -> 1;\n"));
        let dot = to_dot(&fig2a());
        assert_eq!(dot.matches("[dir=none]").count(), 4);
        assert_eq!(dot.matches(" -> ").count(), 12);
        assert_eq!(dot, to_dot(&fig2a()));
    }

    #[test]
    fn certificate_round_trip() {
        let cert = enumerate(SearchSpec::count_all(1, 1, 3, 8), &SearchOptions::default()).unwrap();
        let text = write_certificate(&cert);
        assert!(text.starts_with("version mixed-moore/"));
        assert!(text.contains("count 2\n"));
        let back = parse_certificate(&text).unwrap();
        assert_eq!(back, cert);
        assert_eq!(write_certificate(&back), text);
    }

    #[test]
    fn certificate_count_mismatch_is_rejected() {
        let cert = enumerate(SearchSpec::count_all(1, 1, 3, 8), &SearchOptions::default()).unwrap();
        let text = write_certificate(&cert).replace("count 2", "count 3");
        assert!(parse_certificate(&text).is_err());
    }
}
