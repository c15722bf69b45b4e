//! Text encoding of diagrams.
//!
//! ```text
//! # comments run to end of line
//! version: 1
//! tangle: false
//! crossing c1 over_in=3
//! vertex v1 ports=3
//! endpoint e1 label=b1          (tangles only)
//! strand s1 from=c1.2 to=v1.0
//! loop u1                       (a crossing-free closed component)
//! ```
//!
//! Node records may be prefixed with `node`. Records may appear in any order.

use std::collections::HashMap;
use std::fmt::Write;

use super::{Diagram, DiagramError, DiagramWarning, Node, NodeKind, PortRef, Strand};

#[derive(Debug, Clone)]
pub struct ParseOutput {
    pub diagram: Diagram,
    pub warnings: Vec<DiagramWarning>,
}

pub const FORMAT_VERSION: u32 = 1;

pub fn parse_diagram(text: &str) -> Result<ParseOutput, DiagramError> {
    let mut is_tangle = None;
    let mut nodes = Vec::new();
    let mut raw_strands = Vec::new();
    let mut loops = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let syntax = |message: String| DiagramError::Syntax { line: line_no, message };
        let line = raw.split('#').next().unwrap_or("");
        let line = normalize(&line.replace(':', " "));
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let tokens: &[&str] = match tokens.first() {
            None => continue,
            Some(&"node") => &tokens[1..],
            Some(_) => &tokens[..],
        };
        let Some(&head) = tokens.first() else {
            return Err(syntax("empty node record".into()));
        };
        match head {
            "version" => {
                let v = tokens.get(1).ok_or_else(|| syntax("missing version".into()))?;
                if v.parse::<u32>().ok() != Some(FORMAT_VERSION) {
                    return Err(syntax(format!("unsupported version `{v}`")));
                }
            }
            "tangle" => {
                is_tangle = Some(match tokens.get(1).copied() {
                    Some("true") => true,
                    Some("false") => false,
                    other => return Err(syntax(format!("expected true|false, got {other:?}"))),
                });
            }
            "crossing" => {
                let id = id_of(tokens, &syntax)?;
                let kv = key_values(&tokens[2..], &syntax)?;
                let over_in = match kv.get("over_in").copied() {
                    Some("1") => 1,
                    Some("3") => 3,
                    other => return Err(syntax(format!("over_in must be 1 or 3, got {other:?}"))),
                };
                nodes.push(Node { id, kind: NodeKind::Crossing { over_in } });
            }
            "vertex" => {
                let id = id_of(tokens, &syntax)?;
                let kv = key_values(&tokens[2..], &syntax)?;
                let ports = kv
                    .get("ports")
                    .and_then(|p| p.parse::<usize>().ok())
                    .filter(|&p| p > 0)
                    .ok_or_else(|| syntax("vertex needs ports=<k>, k >= 1".into()))?;
                nodes.push(Node { id, kind: NodeKind::Vertex { ports } });
            }
            "endpoint" => {
                let id = id_of(tokens, &syntax)?;
                let kv = key_values(&tokens[2..], &syntax)?;
                let label = kv.get("label").map_or_else(|| id.clone(), |l| l.to_string());
                nodes.push(Node { id, kind: NodeKind::Endpoint { label } });
            }
            "strand" => {
                let id = id_of(tokens, &syntax)?;
                let kv = key_values(&tokens[2..], &syntax)?;
                let from = kv.get("from").ok_or_else(|| syntax("strand needs from=".into()))?;
                let to = kv.get("to").ok_or_else(|| syntax("strand needs to=".into()))?;
                raw_strands.push((
                    line_no,
                    id,
                    port_spec(from).ok_or_else(|| syntax(format!("bad port `{from}`")))?,
                    port_spec(to).ok_or_else(|| syntax(format!("bad port `{to}`")))?,
                ));
            }
            "loop" => loops.push(id_of(tokens, &syntax)?),
            other => return Err(syntax(format!("unknown record `{other}`"))),
        }
    }
    let is_tangle = is_tangle.unwrap_or(false);
    let index: HashMap<&str, usize> = nodes.iter().enumerate().map(|(i, n)| (n.id.as_str(), i)).collect();
    let mut strands = Vec::with_capacity(raw_strands.len());
    for (_, id, (fnode, fport), (tnode, tport)) in &raw_strands {
        let lookup =
            |name: &String| index.get(name.as_str()).copied().ok_or_else(|| DiagramError::UnknownNode(name.clone()));
        strands.push(Strand {
            id: id.clone(),
            from: PortRef::new(lookup(fnode)?, *fport),
            to: PortRef::new(lookup(tnode)?, *tport),
        });
    }
    let (diagram, warnings) = Diagram::new(nodes, strands, loops, is_tangle)?;
    Ok(ParseOutput { diagram, warnings })
}

/// Drops whitespace around `=` and `.` so `from = c1 . 2` reads like `from=c1.2`.
fn normalize(line: &str) -> String {
    let mut out = String::with_capacity(line.len());
    for tok in line.split_whitespace() {
        let glue = tok.starts_with(['=', '.']) || out.ends_with(['=', '.']);
        if !out.is_empty() && !glue {
            out.push(' ');
        }
        out.push_str(tok);
    }
    out
}

fn id_of(tokens: &[&str], syntax: &dyn Fn(String) -> DiagramError) -> Result<String, DiagramError> {
    match tokens.get(1) {
        Some(id) if !id.contains('=') => Ok(id.to_string()),
        _ => Err(syntax(format!("`{}` record needs an id", tokens[0]))),
    }
}

fn key_values<'a>(
    tokens: &[&'a str],
    syntax: &dyn Fn(String) -> DiagramError,
) -> Result<HashMap<&'a str, &'a str>, DiagramError> {
    tokens.iter().map(|t| t.split_once('=').ok_or_else(|| syntax(format!("expected key=value, got `{t}`")))).collect()
}

fn port_spec(text: &str) -> Option<(String, usize)> {
    let (node, port) = text.rsplit_once('.')?;
    Some((node.to_string(), port.parse().ok()?))
}

pub fn serialize(d: &Diagram) -> String {
    let mut out = String::new();
    writeln!(out, "version: {FORMAT_VERSION}").unwrap();
    writeln!(out, "tangle: {}", d.is_tangle()).unwrap();
    for n in d.nodes() {
        match &n.kind {
            NodeKind::Crossing { over_in } => writeln!(out, "crossing {} over_in={}", n.id, over_in),
            NodeKind::Vertex { ports } => writeln!(out, "vertex {} ports={}", n.id, ports),
            NodeKind::Endpoint { label } => writeln!(out, "endpoint {} label={}", n.id, label),
        }
        .unwrap();
    }
    for s in d.strands() {
        writeln!(
            out,
            "strand {} from={}.{} to={}.{}",
            s.id,
            d.node(s.from.node).id,
            s.from.port,
            d.node(s.to.node).id,
            s.to.port
        )
        .unwrap();
    }
    for l in d.free_loops() {
        writeln!(out, "loop {l}").unwrap();
    }
    out
}
