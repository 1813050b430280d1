//! Line-based text formats.
//!
//! * Graph: a header `n m`, then `m` lines `u v` with `u < v`, sorted.
//! * Broadcast: one line `v value` per positive value, sorted by `v`;
//!   vertices not listed carry 0.
//! * Role map: one line `v role owner` per gadget vertex, where role is one
//!   of `orig`, `sub`, `ctr`, `leaf` and owner is `-` for `orig`/`sub`.
//!
//! Tokens are whitespace separated decimal integers. Lines whose first
//! non-blank character is `#`, and blank lines, are ignored when parsing.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::Broadcast;
use crate::reduction::{GadgetGraph, Role};

fn data_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            None
        } else {
            Some((i + 1, t.split_whitespace().collect()))
        }
    })
}

fn num(line: usize, token: &str) -> Result<usize> {
    token
        .parse()
        .map_err(|_| Error::Parse { line, msg: format!("`{token}` is not a nonnegative integer") })
}

fn expect_len(line: usize, tokens: &[&str], want: usize) -> Result<()> {
    if tokens.len() != want {
        return Err(Error::Parse {
            line,
            msg: format!("expected {want} fields, found {}", tokens.len()),
        });
    }
    Ok(())
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = data_lines(text);
    let (hline, header) = lines.next().ok_or(Error::Parse { line: 0, msg: "missing `n m` header".into() })?;
    expect_len(hline, &header, 2)?;
    let n = num(hline, header[0])?;
    let m = num(hline, header[1])?;
    let mut edges = Vec::with_capacity(m);
    for (line, tokens) in lines {
        if edges.len() == m {
            return Err(Error::Parse { line, msg: format!("more than {m} edge lines") });
        }
        expect_len(line, &tokens, 2)?;
        edges.push((num(line, tokens[0])?, num(line, tokens[1])?));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: text.lines().count(),
            msg: format!("header announces {m} edges, found {}", edges.len()),
        });
    }
    Graph::new(n, &edges)
}

pub fn write_broadcast(f: &Broadcast) -> String {
    let mut out = String::new();
    for (v, &value) in f.values().iter().enumerate() {
        if value > 0 {
            writeln!(out, "{v} {value}").unwrap();
        }
    }
    out
}

/// Parses a broadcast for a graph on `n` vertices.
pub fn parse_broadcast(text: &str, n: usize) -> Result<Broadcast> {
    let mut values = vec![0usize; n];
    let mut seen = vec![false; n];
    for (line, tokens) in data_lines(text) {
        expect_len(line, &tokens, 2)?;
        let v = num(line, tokens[0])?;
        let value = num(line, tokens[1])?;
        if v >= n {
            return Err(Error::Parse { line, msg: format!("vertex {v} out of range for {n} vertices") });
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::Parse { line, msg: format!("vertex {v} listed twice") });
        }
        values[v] = value;
    }
    Ok(Broadcast::new(values))
}

pub fn write_role_map(gg: &GadgetGraph) -> String {
    let mut out = String::new();
    for v in 0..gg.graph().vertex_count() {
        let owner = match gg.owner(v) {
            Some(o) if matches!(gg.role(v), Role::StarCenter | Role::StarLeaf) => o.to_string(),
            _ => "-".to_string(),
        };
        writeln!(out, "{v} {} {owner}", gg.role(v).tag()).unwrap();
    }
    out
}

/// Parses a role map into `(role, owner)` per vertex, in vertex order.
pub fn parse_role_map(text: &str) -> Result<Vec<(Role, Option<usize>)>> {
    let mut out = Vec::new();
    for (line, tokens) in data_lines(text) {
        expect_len(line, &tokens, 3)?;
        let v = num(line, tokens[0])?;
        if v != out.len() {
            return Err(Error::Parse { line, msg: format!("expected vertex {}, found {v}", out.len()) });
        }
        let role = Role::from_tag(tokens[1])
            .ok_or_else(|| Error::Parse { line, msg: format!("unknown role `{}`", tokens[1]) })?;
        let owner = match (role, tokens[2]) {
            (Role::Original | Role::Subdivision, "-") => None,
            (Role::StarCenter | Role::StarLeaf, t) if t != "-" => Some(num(line, t)?),
            _ => return Err(Error::Parse { line, msg: "owner does not match role".into() }),
        };
        out.push((role, owner));
    }
    Ok(out)
}
