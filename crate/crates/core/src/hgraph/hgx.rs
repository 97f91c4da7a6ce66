//! HGX v1 text format and the partition file format.
//!
//! ```text
//! HGX 1
//! <num_nodes> <num_hedges>
//! <weight> <source> <k> <d_1> ... <d_k>      (one line per hyperedge)
//! ```

use std::fmt::Write as _;

use super::{Hyperedge, Hypergraph, Partitioning};
use crate::error::{Error, Result};

/// Validation applied while parsing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseMode {
    /// Network form: one hyperedge per source, no self-synapses.
    Snn,
    /// Any single-source directed hypergraph.
    General,
}

pub fn parse_hgx(text: &str, mode: ParseMode) -> Result<Hypergraph> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    if header.trim_end() != "HGX 1" {
        return Err(Error::parse(ln, format!("expected `HGX 1`, found `{header}`")));
    }

    let (ln, counts) = lines
        .next()
        .ok_or_else(|| Error::parse(2, "missing `<num_nodes> <num_hedges>` line"))?;
    let mut tok = counts.split_ascii_whitespace();
    let num_nodes: usize = parse_field(ln, tok.next(), "num_nodes")?;
    let num_hedges: usize = parse_field(ln, tok.next(), "num_hedges")?;
    if tok.next().is_some() {
        return Err(Error::parse(ln, "trailing tokens after hyperedge count"));
    }

    let mut hedges = Vec::with_capacity(num_hedges);
    let mut stamp = vec![usize::MAX; num_nodes];
    let mut sourced = vec![false; num_nodes];
    for id in 0..num_hedges {
        let (ln, line) = lines.next().ok_or_else(|| {
            Error::parse(
                id + 3,
                format!("expected {num_hedges} hyperedges, found {id}"),
            )
        })?;
        let mut tok = line.split_ascii_whitespace();
        let weight: f64 = parse_field(ln, tok.next(), "weight")?;
        if !(weight.is_finite() && weight > 0.0) {
            return Err(Error::parse(ln, format!("non-positive weight {weight}")));
        }
        let source: usize = parse_field(ln, tok.next(), "source")?;
        if source >= num_nodes {
            return Err(Error::parse(ln, format!("source {source} out of range")));
        }
        let k: usize = parse_field(ln, tok.next(), "destination count")?;
        let mut destinations = Vec::with_capacity(k);
        for _ in 0..k {
            let d: usize = parse_field(ln, tok.next(), "destination")?;
            if d >= num_nodes {
                return Err(Error::parse(ln, format!("destination {d} out of range")));
            }
            if stamp[d] == id {
                return Err(Error::parse(ln, format!("duplicate destination {d}")));
            }
            stamp[d] = id;
            if mode == ParseMode::Snn && d == source {
                return Err(Error::parse(ln, format!("destination equals source {d}")));
            }
            destinations.push(d);
        }
        if tok.next().is_some() {
            return Err(Error::parse(ln, format!("more than {k} destinations")));
        }
        if mode == ParseMode::Snn && std::mem::replace(&mut sourced[source], true) {
            return Err(Error::parse(ln, format!("duplicate source {source}")));
        }
        hedges.push(Hyperedge::new(source, destinations, weight));
    }
    if let Some((ln, extra)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(Error::parse(ln, format!("unexpected trailing line `{extra}`")));
    }
    Ok(Hypergraph::from_parts_unchecked(num_nodes, hedges))
}

fn parse_field<T: std::str::FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::parse(line, format!("malformed {what} `{tok}`")))
}

/// Serializes with single spaces and LF endings. `f64`'s `Display` already
/// yields the shortest string that round-trips.
pub fn write_hgx(g: &Hypergraph) -> String {
    let mut out = String::with_capacity(16 + g.num_connections() * 6);
    out.push_str("HGX 1\n");
    let _ = writeln!(out, "{} {}", g.num_nodes(), g.num_hedges());
    for e in g.hedges() {
        let _ = write!(out, "{} {} {}", e.weight, e.source, e.destinations.len());
        for d in &e.destinations {
            let _ = write!(out, " {d}");
        }
        out.push('\n');
    }
    out
}

pub fn write_partition_file(rho: &Partitioning) -> String {
    let mut out = String::new();
    for (node, part) in rho.assignment().iter().enumerate() {
        let _ = writeln!(out, "{node} {part}");
    }
    out
}

/// Reads `<node_id> <partition_id>` lines; every node must appear exactly once.
pub fn parse_partition_file(text: &str, num_nodes: usize) -> Result<Partitioning> {
    let mut assignment = vec![usize::MAX; num_nodes];
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut tok = line.split_ascii_whitespace();
        let node: usize = parse_field(ln, tok.next(), "node id")?;
        let part: usize = parse_field(ln, tok.next(), "partition id")?;
        if tok.next().is_some() {
            return Err(Error::parse(ln, "trailing tokens"));
        }
        if node >= num_nodes {
            return Err(Error::parse(ln, format!("node {node} out of range")));
        }
        if assignment[node] != usize::MAX {
            return Err(Error::parse(ln, format!("node {node} assigned twice")));
        }
        assignment[node] = part;
    }
    if let Some(missing) = assignment.iter().position(|&p| p == usize::MAX) {
        return Err(Error::InvalidPartitioning(format!("node {missing} unassigned")));
    }
    Partitioning::new(assignment)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_single_hyperedge() {
        let g = parse_hgx("HGX 1\n3 1\n0.5 0 2 1 2", ParseMode::Snn).unwrap();
        assert_eq!(g.num_nodes(), 3);
        assert_eq!(g.num_hedges(), 1);
        assert_eq!(g.hedge(0), &Hyperedge::new(0, vec![1, 2], 0.5));
    }

    #[test]
    fn rejects_self_synapse() {
        let err = parse_hgx("HGX 1\n2 1\n1.0 0 1 0", ParseMode::Snn).unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 3);
                assert!(message.contains("equals source"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
        // permitted outside network mode
        assert!(parse_hgx("HGX 1\n2 1\n1.0 0 1 0", ParseMode::General).is_ok());
    }

    fn line_of(text: &str) -> usize {
        match parse_hgx(text, ParseMode::Snn).unwrap_err() {
            Error::Parse { line, .. } => line,
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reports_line_numbers() {
        assert_eq!(line_of("HGX 2\n1 0\n"), 1);
        assert_eq!(line_of("HGX 1\n3\n"), 2);
        assert_eq!(line_of("HGX 1\n3 2\n1 0 1 1\n1 1 1 5\n"), 4);
        assert_eq!(line_of("HGX 1\n3 1\n1 0 2 1 1\n"), 3);
        assert_eq!(line_of("HGX 1\n3 1\n-1 0 1 1\n"), 3);
        assert_eq!(line_of("HGX 1\n3 1\n0 0 1 1\n"), 3);
        assert_eq!(line_of("HGX 1\n3 2\n1 0 1 1\n1 0 1 2\n"), 4);
        assert_eq!(line_of("HGX 1\n3 2\n1 0 1 1\n"), 4);
        assert_eq!(line_of("HGX 1\n3 1\n1 0 1 1\n1 1 1 2\n"), 4);
        assert_eq!(line_of("HGX 1\n3 1\n1 0 2 1\n"), 3);
    }

    #[test]
    fn writes_shortest_weights() {
        let g = Hypergraph::new(
            3,
            vec![
                Hyperedge::new(0, vec![1, 2], 1.0),
                Hyperedge::new(1, vec![2], 0.1),
            ],
        )
        .unwrap();
        assert_eq!(write_hgx(&g), "HGX 1\n3 2\n1 0 2 1 2\n0.1 1 1 2\n");
    }

    #[test]
    fn partition_file_round_trip() {
        let rho = Partitioning::new(vec![0, 1, 0, 2]).unwrap();
        let text = write_partition_file(&rho);
        assert_eq!(text, "0 0\n1 1\n2 0\n3 2\n");
        assert_eq!(parse_partition_file(&text, 4).unwrap(), rho);
        assert!(parse_partition_file("0 0\n", 2).is_err());
        assert!(parse_partition_file("0 0\n0 1\n", 1).is_err());
        // partition ids must be dense
        assert!(parse_partition_file("0 0\n1 2\n", 2).is_err());
    }
}
