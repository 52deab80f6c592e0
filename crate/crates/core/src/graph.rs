//! Undirected simple graphs with optional ground-truth labels.
//!
//! Nodes are indexed `0..n` in order of first appearance in the input. Labels
//! are stored 1-based (`1..=K`) and numbered by first appearance in node
//! order; the original label strings are kept in [`Graph::label_names`].

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    names: Vec<String>,
    labels: Option<Vec<usize>>,
    label_names: Vec<String>,
    edge_count: usize,
}

/// A parsed graph together with what was dropped while building it.
#[derive(Debug, Clone)]
pub struct ParsedGraph {
    pub graph: Graph,
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeInfo {
    pub degrees: Vec<usize>,
    pub d_min: usize,
    pub d_max: usize,
    /// Sum of degrees; `d_bar = degree_sum / n`.
    pub degree_sum: usize,
}

impl DegreeInfo {
    pub fn d_bar(&self) -> f64 {
        if self.degrees.is_empty() {
            0.0
        } else {
            self.degree_sum as f64 / self.degrees.len() as f64
        }
    }
}

/// Incrementally assembles a graph, interning node names in first-seen order.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    index: HashMap<String, usize>,
    names: Vec<String>,
    edges: Vec<(usize, usize)>,
    self_loops: usize,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn node(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len();
        self.index.insert(name.to_string(), i);
        self.names.push(name.to_string());
        i
    }

    pub fn edge(&mut self, a: &str, b: &str) {
        let i = self.node(a);
        let j = self.node(b);
        self.edge_by_index(i, j);
    }

    pub fn edge_by_index(&mut self, i: usize, j: usize) {
        if i == j {
            self.self_loops += 1;
        } else {
            self.edges.push((i.min(j), i.max(j)));
        }
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn build(self) -> ParsedGraph {
        let n = self.names.len();
        let mut edges = self.edges;
        let raw = edges.len();
        edges.sort_unstable();
        edges.dedup();
        let duplicates_dropped = raw - edges.len();
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in &edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        for row in &mut adj {
            row.sort_unstable();
        }
        ParsedGraph {
            graph: Graph {
                adj,
                names: self.names,
                labels: None,
                label_names: Vec::new(),
                edge_count: edges.len(),
            },
            self_loops_dropped: self.self_loops,
            duplicates_dropped,
        }
    }
}

impl Graph {
    /// Graph on `n` nodes named `1..=n` from index pairs.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut b = GraphBuilder::new();
        for i in 0..n {
            b.node(&(i + 1).to_string());
        }
        for (i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({i}, {j}) out of range for {n} nodes"
                )));
            }
            b.edge_by_index(i, j);
        }
        Ok(b.build().graph)
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].binary_search(&j).is_ok()
    }

    /// Edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
    }

    pub fn node_names(&self) -> &[String] {
        &self.names
    }

    /// Ground-truth labels in `1..=K`, if present.
    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    pub fn label_names(&self) -> &[String] {
        &self.label_names
    }

    pub fn class_count(&self) -> usize {
        self.label_names.len()
    }

    /// Attach labels given as strings, one per node in index order.
    /// Label ids are assigned by first appearance.
    pub fn with_label_strings<S: AsRef<str>>(mut self, raw: &[S]) -> Result<Graph> {
        if raw.len() != self.node_count() {
            return Err(Error::LengthMismatch(raw.len(), self.node_count()));
        }
        let mut ids = HashMap::new();
        let mut names = Vec::new();
        let labels = raw
            .iter()
            .map(|s| {
                let s = s.as_ref();
                *ids.entry(s.to_string()).or_insert_with(|| {
                    names.push(s.to_string());
                    names.len()
                })
            })
            .collect();
        self.labels = Some(labels);
        self.label_names = names;
        Ok(self)
    }

    /// Attach 1-based integer labels directly.
    pub fn with_labels(self, labels: &[usize]) -> Result<Graph> {
        let raw: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
        self.with_label_strings(&raw)
    }

    /// Subgraph induced by `keep` (indices in the order given). Labels are
    /// renumbered to be contiguous by first appearance.
    pub fn induced_subgraph(&self, keep: &[usize]) -> Graph {
        let mut position = vec![usize::MAX; self.node_count()];
        for (new, &old) in keep.iter().enumerate() {
            position[old] = new;
        }
        let mut adj = vec![Vec::new(); keep.len()];
        let mut edge_count = 0;
        for (new, &old) in keep.iter().enumerate() {
            for &nb in &self.adj[old] {
                let p = position[nb];
                if p != usize::MAX {
                    adj[new].push(p);
                    if p > new {
                        edge_count += 1;
                    }
                }
            }
            adj[new].sort_unstable();
        }
        let names = keep.iter().map(|&i| self.names[i].clone()).collect();
        let mut g = Graph {
            adj,
            names,
            labels: None,
            label_names: Vec::new(),
            edge_count,
        };
        if let Some(labels) = &self.labels {
            let raw: Vec<&str> = keep
                .iter()
                .map(|&i| self.label_names[labels[i] - 1].as_str())
                .collect();
            g = g
                .with_label_strings(&raw)
                .expect("induced labels have one entry per kept node");
        }
        g
    }

    /// Drop every node whose label name is in `excluded`; labels are renumbered
    /// `1..=K` by first appearance.
    pub fn filter_by_label<S: AsRef<str>>(&self, excluded: &[S]) -> Result<Graph> {
        let labels = self.labels.as_ref().ok_or(Error::Unlabeled)?;
        let drop: Vec<bool> = self
            .label_names
            .iter()
            .map(|name| excluded.iter().any(|e| e.as_ref() == name))
            .collect();
        let keep: Vec<usize> = (0..self.node_count())
            .filter(|&i| !drop[labels[i] - 1])
            .collect();
        if keep.is_empty() {
            return Err(Error::AllNodesExcluded);
        }
        Ok(self.induced_subgraph(&keep))
    }

    /// Label name of the smallest class (ties: lowest label id).
    pub fn smallest_class(&self) -> Option<&str> {
        let labels = self.labels.as_ref()?;
        let mut sizes = vec![0usize; self.label_names.len()];
        for &l in labels {
            sizes[l - 1] += 1;
        }
        let (idx, _) = sizes
            .iter()
            .enumerate()
            .min_by_key(|&(i, &s)| (s, i))?;
        Some(&self.label_names[idx])
    }

    /// Connected components as lists of node indices, ordered by their
    /// lowest member; members are in BFS order.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        !self.is_empty() && self.components().len() == 1
    }

    /// Subgraph induced on the largest connected component. Ties go to the
    /// component holding the lowest node index; original node order is kept.
    pub fn largest_connected_component(&self) -> Result<Graph> {
        if self.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let comps = self.components();
        if comps.len() == 1 {
            return Ok(self.clone());
        }
        let mut best = &comps[0];
        for c in &comps[1..] {
            if c.len() > best.len() {
                best = c;
            }
        }
        let mut keep = best.clone();
        keep.sort_unstable();
        Ok(self.induced_subgraph(&keep))
    }

    pub fn degree_info(&self) -> DegreeInfo {
        let degrees: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        DegreeInfo {
            d_min: degrees.iter().copied().min().unwrap_or(0),
            d_max: degrees.iter().copied().max().unwrap_or(0),
            degree_sum: degrees.iter().sum(),
            degrees,
        }
    }

    /// Space-separated edge list using node names.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (i, j) in self.edges() {
            let _ = writeln!(out, "{} {}", self.names[i], self.names[j]);
        }
        out
    }

    /// `name<TAB>label` lines, or `None` when unlabeled.
    pub fn to_label_list(&self) -> Option<String> {
        let labels = self.labels.as_ref()?;
        let mut out = String::new();
        for (name, &l) in self.names.iter().zip(labels) {
            let _ = writeln!(out, "{name}\t{}", self.label_names[l - 1]);
        }
        Some(out)
    }
}

fn split_pair(line: &str) -> Option<(&str, &str)> {
    let mut it = line
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty());
    let a = it.next()?;
    let b = it.next()?;
    if it.next().is_some() {
        return None;
    }
    Some((a, b))
}

/// Parse a whitespace- or comma-delimited edge list, optionally with a
/// `node<TAB>label` file covering every node.
pub fn parse_edge_list(text: &str, label_text: Option<&str>) -> Result<ParsedGraph> {
    let mut b = GraphBuilder::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (x, y) = split_pair(line)
            .ok_or_else(|| Error::parse(no + 1, format!("expected two node ids, got `{line}`")))?;
        b.edge(x, y);
    }
    let mut parsed = b.build();
    if let Some(label_text) = label_text {
        let labels = parse_labels(label_text, parsed.graph.node_names())?;
        parsed.graph = parsed.graph.with_label_strings(&labels)?;
    }
    Ok(parsed)
}

/// Read `node<TAB>label` lines and return one label string per node of
/// `names`, in node order.
pub fn parse_labels(text: &str, names: &[String]) -> Result<Vec<String>> {
    let index: HashMap<&str, usize> = names
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    let mut out: Vec<Option<String>> = vec![None; names.len()];
    for (no, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (node, label) = match trimmed.split_once('\t') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => split_pair(trimmed).ok_or_else(|| {
                Error::parse(no + 1, format!("expected `node<TAB>label`, got `{trimmed}`"))
            })?,
        };
        if node.is_empty() || label.is_empty() {
            return Err(Error::parse(no + 1, "empty node id or label"));
        }
        let i = *index
            .get(node)
            .ok_or_else(|| Error::UnknownNode(node.to_string()))?;
        out[i] = Some(label.to_string());
    }
    out.into_iter()
        .enumerate()
        .map(|(i, l)| l.ok_or_else(|| Error::MissingLabel(names[i].clone())))
        .collect()
}
