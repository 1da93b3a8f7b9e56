//! `.web` text, DOT and CSV.

use std::fmt::Write as _;

use super::{Arrow, Simplicity, WebGraph, WebNode};
use crate::error::{Error, Result};
use crate::keyvalue::{parse_bool, parse_sections};
use crate::transition::fingerprint::FINGERPRINT_KEYS;
use crate::transition::{Fingerprint, TypeTag};

const ARROW_KEYS: [&str; 6] = ["id", "source", "target", "type", "transition", "verdict"];

pub(super) fn parse(text: &str) -> Result<WebGraph> {
    let mut g = WebGraph::new();
    for s in parse_sections(text)? {
        match s.name.as_str() {
            "node" => {
                let allowed: Vec<&str> = ["id", "description", "primitive"]
                    .into_iter()
                    .chain(FINGERPRINT_KEYS)
                    .collect();
                s.check_keys(&allowed)?;
                let id = s.require("id")?.value.clone();
                let primitive = s.get("primitive").map_or(Ok(false), parse_bool)?;
                let node = WebNode {
                    id,
                    fingerprint: Fingerprint::from_section(&s, true)?,
                    description: s.value("description").unwrap_or("").to_string(),
                    primitive,
                };
                g.add_node(node).map_err(|e| Error::parse(s.line, e.to_string()))?;
            }
            "arrow" => {
                s.check_keys(&ARROW_KEYS)?;
                let verdict = match s.get("verdict") {
                    Some(e) => Simplicity::parse(&e.value).map_err(|err| Error::parse(e.line, err.to_string()))?,
                    None => Simplicity::Unknown,
                };
                let ty = s.require("type")?;
                let arrow = Arrow {
                    id: s.require("id")?.value.clone(),
                    source: s.require("source")?.value.clone(),
                    target: s.require("target")?.value.clone(),
                    type_tag: TypeTag::parse(&ty.value).map_err(|e| Error::parse(ty.line, e.to_string()))?,
                    transition: s.value("transition").map(str::to_string),
                    simplicity: verdict,
                    record: None,
                };
                g.add_arrow(arrow).map_err(|e| Error::parse(s.line, e.to_string()))?;
            }
            other => return Err(Error::parse(s.line, format!("unknown section [{other}]"))),
        }
    }
    Ok(g)
}

pub(super) fn write(g: &WebGraph) -> String {
    let mut out = String::new();
    for n in g.nodes() {
        let _ = writeln!(out, "[node]\nid: {}", n.id);
        if !n.description.is_empty() {
            let _ = writeln!(out, "description: {}", n.description);
        }
        let _ = writeln!(out, "primitive: {}", n.primitive);
        n.fingerprint.write_entries(&mut out);
        out.push('\n');
    }
    for a in g.arrows() {
        let _ = writeln!(
            out,
            "[arrow]\nid: {}\nsource: {}\ntarget: {}\ntype: {}",
            a.id, a.source, a.target, a.type_tag
        );
        if let Some(t) = &a.transition {
            let _ = writeln!(out, "transition: {t}");
        }
        let _ = writeln!(out, "verdict: {}\n", a.simplicity);
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn quote(s: &str) -> String {
    format!("\"{}\"", escape(s))
}

pub(super) fn dot(g: &WebGraph) -> String {
    let mut out = String::from("digraph web {\n");
    for n in g.nodes() {
        let f = &n.fingerprint;
        let hodge = match (f.h11, f.h21) {
            (Some(a), Some(b)) => format!("h11={a} h21={b}"),
            _ => format!("b2={} b3={}", f.b[2], f.b[3]),
        };
        let shape = if n.primitive { ", shape=box" } else { "" };
        let label = format!("{}\\n{hodge}", escape(&n.id));
        let _ = writeln!(out, "  {} [label=\"{label}\"{shape}];", quote(&n.id));
    }
    for a in g.arrows() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}, style={}];",
            quote(&a.source),
            quote(&a.target),
            quote(&format!("{} {} {}", a.id, a.type_tag, a.simplicity)),
            a.simplicity.dot_style()
        );
    }
    out.push_str("}\n");
    out
}

pub(super) const CSV_HEADER: &str = "arrow,source,target,type,verdict,transition";

pub(super) fn csv(g: &WebGraph) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for a in g.arrows() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            a.id,
            a.source,
            a.target,
            a.type_tag,
            a.simplicity,
            a.transition.as_deref().unwrap_or("")
        );
    }
    out
}

/// Reads the arrows back from [`csv`] output; node data is not part of it.
pub(super) fn arrows_from_csv(text: &str) -> Result<Vec<Arrow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == CSV_HEADER => {}
        _ => return Err(Error::parse(1, "missing arrow CSV header")),
    }
    let mut out = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 6 {
            return Err(Error::parse(i + 1, format!("expected 6 columns, found {}", cols.len())));
        }
        let bad = |e: Error| Error::parse(i + 1, e.to_string());
        out.push(Arrow {
            id: cols[0].to_string(),
            source: cols[1].to_string(),
            target: cols[2].to_string(),
            type_tag: TypeTag::parse(cols[3]).map_err(bad)?,
            simplicity: Simplicity::parse(cols[4]).map_err(bad)?,
            transition: (!cols[5].is_empty()).then(|| cols[5].to_string()),
            record: None,
        });
    }
    Ok(out)
}
