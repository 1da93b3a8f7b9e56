//! The Calabi–Yau web: deformation classes joined by transitions.
//!
//! Arrows point from the resolution side `Y` to the smoothing side `Ỹ`;
//! connectivity queries ignore direction.

mod io;

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::singularity::AnalysisOptions;
use crate::transition::{
    compute_table, consistency_check, decide_simplicity, fingerprint_findings, Finding, Fingerprint, Severity,
    TransitionRecord, TypeTag, Verdict,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Simplicity {
    Simple,
    NotSimple,
    Unknown,
}

impl Simplicity {
    pub fn parse(s: &str) -> Result<Simplicity> {
        match s {
            "Simple" => Ok(Simplicity::Simple),
            "NotSimple" => Ok(Simplicity::NotSimple),
            "Unknown" => Ok(Simplicity::Unknown),
            _ => Err(Error::Graph(format!("unknown verdict {s:?}"))),
        }
    }

    /// DOT edge style: solid, dotted or dashed.
    pub fn dot_style(self) -> &'static str {
        match self {
            Simplicity::Simple => "solid",
            Simplicity::NotSimple => "dotted",
            Simplicity::Unknown => "dashed",
        }
    }
}

impl From<&Verdict> for Simplicity {
    fn from(v: &Verdict) -> Self {
        match v {
            Verdict::Simple { .. } => Simplicity::Simple,
            Verdict::NotSimple { .. } => Simplicity::NotSimple,
            Verdict::Unknown { .. } => Simplicity::Unknown,
        }
    }
}

impl fmt::Display for Simplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Simplicity::Simple => "Simple",
            Simplicity::NotSimple => "NotSimple",
            Simplicity::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WebNode {
    pub id: String,
    pub fingerprint: Fingerprint,
    pub description: String,
    pub primitive: bool,
}

#[derive(Clone, Debug)]
pub struct Arrow {
    pub id: String,
    /// Resolution side.
    pub source: String,
    /// Smoothing side.
    pub target: String,
    pub type_tag: TypeTag,
    /// Path of the transition record, relative to the graph file.
    pub transition: Option<String>,
    pub simplicity: Simplicity,
    /// The loaded record, when [`WebGraph::load_transitions`] has run.
    pub record: Option<Arc<TransitionRecord>>,
}

impl PartialEq for Arrow {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
            && self.source == other.source
            && self.target == other.target
            && self.type_tag == other.type_tag
            && self.transition == other.transition
            && self.simplicity == other.simplicity
    }
}

impl Eq for Arrow {}

#[derive(Clone, Debug, Default)]
pub struct WebGraph {
    nodes: Vec<WebNode>,
    arrows: Vec<Arrow>,
    node_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
    validation: Option<Vec<Finding>>,
}

impl PartialEq for WebGraph {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes && self.arrows == other.arrows
    }
}

impl Eq for WebGraph {}

impl WebGraph {
    pub fn new() -> Self {
        WebGraph::default()
    }

    pub fn nodes(&self) -> &[WebNode] {
        &self.nodes
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn node(&self, id: &str) -> Option<&WebNode> {
        self.node_index.get(id).map(|&i| &self.nodes[i])
    }

    pub fn arrow(&self, id: &str) -> Option<&Arrow> {
        self.arrow_index.get(id).map(|&i| &self.arrows[i])
    }

    fn id_taken(&self, id: &str) -> bool {
        self.node_index.contains_key(id) || self.arrow_index.contains_key(id)
    }

    pub fn add_node(&mut self, node: WebNode) -> Result<()> {
        if node.id.is_empty() || self.id_taken(&node.id) {
            return Err(Error::Graph(format!("duplicate or empty id {:?}", node.id)));
        }
        self.node_index.insert(node.id.clone(), self.nodes.len());
        self.nodes.push(node);
        self.validation = None;
        Ok(())
    }

    pub fn add_arrow(&mut self, arrow: Arrow) -> Result<()> {
        if arrow.id.is_empty() || self.id_taken(&arrow.id) {
            return Err(Error::Graph(format!("duplicate or empty id {:?}", arrow.id)));
        }
        for end in [&arrow.source, &arrow.target] {
            if !self.node_index.contains_key(end) {
                return Err(Error::Graph(format!("arrow {} refers to unknown node {end}", arrow.id)));
            }
        }
        self.arrow_index.insert(arrow.id.clone(), self.arrows.len());
        self.arrows.push(arrow);
        self.validation = None;
        Ok(())
    }

    /// A new version of the graph with `node` added; `self` is untouched.
    pub fn with_node(&self, node: WebNode) -> Result<WebGraph> {
        let mut g = self.clone();
        g.add_node(node)?;
        Ok(g)
    }

    pub fn with_arrow(&self, arrow: Arrow) -> Result<WebGraph> {
        let mut g = self.clone();
        g.add_arrow(arrow)?;
        Ok(g)
    }

    /// Findings of the last [`WebGraph::revalidate`], or `None` after an edit.
    pub fn validation_state(&self) -> Option<&[Finding]> {
        self.validation.as_deref()
    }

    pub fn revalidate(&mut self) -> &[Finding] {
        let findings = self.validate();
        self.validation.insert(findings)
    }

    /// Pure validation: identical content gives identical findings in
    /// identical order (nodes first, then arrows, each in insertion order).
    pub fn validate(&self) -> Vec<Finding> {
        let mut out = Vec::new();
        for n in &self.nodes {
            if !n.fingerprint.smooth {
                out.push(Finding::new(
                    Severity::Error,
                    format!("node {}: fingerprint is not smooth", n.id),
                ));
            }
            out.extend(fingerprint_findings(&format!("node {}", n.id), &n.fingerprint));
        }
        for a in &self.arrows {
            let src = &self.nodes[self.node_index[&a.source]];
            let tgt = &self.nodes[self.node_index[&a.target]];
            if let (Some(p), Some(q)) = (&src.fingerprint.pi1, &tgt.fingerprint.pi1) {
                if p != q {
                    let text = format!("arrow {}: fundamental group changes from {p} to {q}", a.id);
                    if a.simplicity == Simplicity::Simple || a.type_tag == TypeTag::Conifold {
                        out.push(Finding::new(
                            Severity::Error,
                            format!("{text} across a simple or conifold transition"),
                        ));
                    } else if a.type_tag == TypeTag::TypeII {
                        out.push(Finding::new(Severity::Info, text));
                    } else {
                        out.push(Finding::new(Severity::Warning, text));
                    }
                }
            }
            if a.type_tag == TypeTag::Conifold && a.simplicity != Simplicity::Simple {
                out.push(Finding::new(
                    Severity::Error,
                    format!("arrow {}: conifold arrows are Simple, cached {}", a.id, a.simplicity),
                ));
            }
            if a.type_tag == TypeTag::TypeII && a.simplicity != Simplicity::NotSimple {
                out.push(Finding::new(
                    Severity::Error,
                    format!("arrow {}: type II arrows are NotSimple, cached {}", a.id, a.simplicity),
                ));
            }
            if let Some(r) = &a.record {
                out.extend(record_findings(a, r, src, tgt));
            }
        }
        out
    }

    /// Undirected components, each listing node ids in insertion order;
    /// components ordered by their first node.
    pub fn connected_components(&self) -> Vec<Vec<String>> {
        let n = self.nodes.len();
        let mut comp = vec![usize::MAX; n];
        let adj = self.adjacency();
        let mut count = 0;
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &(w, _) in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        queue.push_back(w);
                    }
                }
            }
            count += 1;
        }
        let mut out = vec![Vec::new(); count];
        for (i, c) in comp.iter().enumerate() {
            out[*c].push(self.nodes[i].id.clone());
        }
        out
    }

    fn adjacency(&self) -> Vec<Vec<(usize, usize)>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for (k, a) in self.arrows.iter().enumerate() {
            let (s, t) = (self.node_index[&a.source], self.node_index[&a.target]);
            adj[s].push((t, k));
            adj[t].push((s, k));
        }
        adj
    }

    /// A shortest undirected arrow sequence from `a` to `b`, empty when `a == b`.
    pub fn path(&self, a: &str, b: &str) -> Result<Option<Vec<String>>> {
        let unknown = |id: &str| Error::Graph(format!("unknown node {id}"));
        let s = *self.node_index.get(a).ok_or_else(|| unknown(a))?;
        let t = *self.node_index.get(b).ok_or_else(|| unknown(b))?;
        let adj = self.adjacency();
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.nodes.len()];
        let mut seen = vec![false; self.nodes.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            if v == t {
                break;
            }
            for &(w, k) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = Some((v, k));
                    queue.push_back(w);
                }
            }
        }
        if !seen[t] {
            return Ok(None);
        }
        let mut path = Vec::new();
        let mut v = t;
        while let Some((u, k)) = prev[v] {
            path.push(self.arrows[k].id.clone());
            v = u;
        }
        path.reverse();
        Ok(Some(path))
    }

    /// Reads every referenced transition record relative to `base`, verifies
    /// witnesses and refreshes the cached verdicts.
    pub fn load_transitions(&mut self, base: &Path, opts: &AnalysisOptions) -> Result<()> {
        let mut cache: BTreeMap<String, Arc<TransitionRecord>> = BTreeMap::new();
        for a in &mut self.arrows {
            let Some(rel) = &a.transition else { continue };
            let record = match cache.get(rel) {
                Some(r) => r.clone(),
                None => {
                    let path = base.join(rel);
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
                    let mut r = TransitionRecord::from_text(&text)?;
                    r.verify_witness(opts)?;
                    let r = Arc::new(r);
                    cache.insert(rel.clone(), r.clone());
                    r
                }
            };
            a.simplicity = Simplicity::from(&decide_simplicity(&record));
            a.record = Some(record);
        }
        self.validation = None;
        Ok(())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        io::parse(text)
    }

    /// Canonical `.web` text.
    pub fn to_text(&self) -> String {
        io::write(self)
    }

    pub fn export_dot(&self) -> String {
        io::dot(self)
    }

    /// One row per arrow.
    pub fn export_csv(&self) -> String {
        io::csv(self)
    }

    /// Arrows read back from [`WebGraph::export_csv`] output.
    pub fn parse_arrow_csv(text: &str) -> Result<Vec<Arrow>> {
        io::arrows_from_csv(text)
    }
}

fn record_findings(a: &Arrow, r: &TransitionRecord, src: &WebNode, tgt: &WebNode) -> Vec<Finding> {
    let mut out = Vec::new();
    let err = |m: String| Finding::new(Severity::Error, format!("arrow {}: {m}", a.id));
    if r.type_tag != a.type_tag {
        out.push(err(format!(
            "type {} disagrees with the record's {}",
            a.type_tag, r.type_tag
        )));
    }
    let verdict = decide_simplicity(r);
    if Simplicity::from(&verdict) != a.simplicity {
        out.push(err(format!(
            "cached verdict {} but the record decides {verdict}",
            a.simplicity
        )));
    }
    if !r.smoothing.same_topology(&tgt.fingerprint) {
        out.push(err(format!("record smoothing does not match node {}", tgt.id)));
    }
    match compute_table(r) {
        Ok(table) => {
            if !table.resolution().same_topology(&src.fingerprint) {
                out.push(err(format!("record resolution does not match node {}", src.id)));
            }
        }
        Err(e) => out.push(err(e.to_string())),
    }
    for f in consistency_check(r) {
        out.push(Finding::new(f.severity, format!("arrow {}: {}", a.id, f.message)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(id: &str, pi1: &str) -> WebNode {
        let mut fingerprint = Fingerprint::calabi_yau(1, 101);
        fingerprint.pi1 = Some(pi1.to_string());
        WebNode {
            id: id.into(),
            fingerprint,
            description: String::new(),
            primitive: false,
        }
    }

    fn arrow(id: &str, s: &str, t: &str, ty: TypeTag, v: Simplicity) -> Arrow {
        Arrow {
            id: id.into(),
            source: s.into(),
            target: t.into(),
            type_tag: ty,
            transition: None,
            simplicity: v,
            record: None,
        }
    }

    #[test]
    fn integrity() {
        let mut g = WebGraph::new();
        g.add_node(node("a", "trivial")).unwrap();
        assert_eq!(g.nodes().len(), 1);
        assert!(g.add_node(node("a", "trivial")).is_err());
        assert!(g
            .add_arrow(arrow("x", "a", "missing", TypeTag::Small, Simplicity::Unknown))
            .is_err());
    }

    #[test]
    fn pi1_rules() {
        let mut g = WebGraph::new();
        g.add_node(node("a", "trivial")).unwrap();
        g.add_node(node("b", "Z/2")).unwrap();
        g.add_arrow(arrow("s", "a", "b", TypeTag::Small, Simplicity::Simple))
            .unwrap();
        assert!(g.validate().iter().any(|f| f.severity == Severity::Error));
        let mut g2 = WebGraph::new();
        g2.add_node(node("a", "trivial")).unwrap();
        g2.add_node(node("b", "Z/2")).unwrap();
        g2.add_arrow(arrow("t", "a", "b", TypeTag::TypeII, Simplicity::NotSimple))
            .unwrap();
        let f = g2.validate();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].severity, Severity::Info);
    }

    #[test]
    fn components_and_paths() {
        let mut g = WebGraph::new();
        for id in ["q", "t", "d", "lone"] {
            g.add_node(node(id, "trivial")).unwrap();
        }
        g.add_arrow(arrow("tq", "t", "q", TypeTag::TypeII, Simplicity::NotSimple))
            .unwrap();
        g.add_arrow(arrow("td", "t", "d", TypeTag::Conifold, Simplicity::Simple))
            .unwrap();
        assert_eq!(g.connected_components().len(), 2);
        assert_eq!(g.path("q", "d").unwrap().unwrap(), vec!["tq", "td"]);
        assert_eq!(g.path("q", "q").unwrap().unwrap(), Vec::<String>::new());
        assert_eq!(g.path("q", "lone").unwrap(), None);
        assert!(g.path("q", "nope").is_err());
        assert!(g.validation_state().is_none());
        assert!(g.revalidate().is_empty());
        assert!(g.validation_state().is_some());
    }

    #[test]
    fn exports() {
        let g = WebGraph::new();
        assert_eq!(g.export_dot(), "digraph web {\n}\n");
        assert_eq!(g.export_csv(), "arrow,source,target,type,verdict,transition\n");
        let mut g = WebGraph::new();
        g.add_node(node("a", "trivial")).unwrap();
        g.add_node(node("b", "trivial")).unwrap();
        g.add_arrow(arrow("u", "a", "b", TypeTag::Small, Simplicity::Unknown))
            .unwrap();
        let dot = g.export_dot();
        assert!(dot.contains("\"a\" -> \"b\" [label=\"u small Unknown\", style=dashed];"));
        assert_eq!(dot, g.export_dot());
        assert_eq!(WebGraph::from_text(&g.to_text()).unwrap(), g);
        assert!(WebGraph::from_text("[arrow]\nid: x\nsource: a\ntarget: b\ntype: small\n").is_err());
        assert!(WebGraph::from_text("[node]\nid: a\nb: 1,0,1,204,1,0,1\ncolour: red\n").is_err());
    }

    #[test]
    fn versions_are_independent() {
        let g = WebGraph::new();
        let g2 = g.with_node(node("a", "trivial")).unwrap();
        assert!(g.nodes().is_empty());
        assert_eq!(g2.nodes().len(), 1);
        assert!(g2.with_node(node("a", "trivial")).is_err());
    }
}
