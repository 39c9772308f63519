//! Coxeter diagrams, geometric (polytope) diagrams, infinity-spanning trees
//! and the admissible vertex labelling used throughout the automata code.
//!
//! Vertices are 0-based in the API and 1-based in the text format.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Coxeter matrix entry `m_ij`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    Finite(u32),
    Infinity,
}

impl Label {
    pub fn is_infinite(self) -> bool {
        matches!(self, Label::Infinity)
    }

    /// `Some(m)` for finite labels.
    pub fn finite(self) -> Option<u32> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinity => None,
        }
    }

    /// True when the diagram draws an edge (`m >= 3` or infinity).
    pub fn is_edge(self) -> bool {
        match self {
            Label::Finite(m) => m >= 3,
            Label::Infinity => true,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinity => f.write_str("inf"),
        }
    }
}

/// Symmetric Coxeter matrix of a rank-`n` Coxeter system.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoxeterDiagram {
    rank: usize,
    labels: Vec<Label>,
}

impl CoxeterDiagram {
    /// Diagram with every off-diagonal label equal to 2.
    pub fn commuting(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidDiagram("rank must be at least 1".into()));
        }
        let mut labels = vec![Label::Finite(2); rank * rank];
        for i in 0..rank {
            labels[i * rank + i] = Label::Finite(1);
        }
        Ok(CoxeterDiagram { rank, labels })
    }

    /// Builds a diagram from 0-based edges; unlisted pairs get label 2.
    pub fn from_edges(rank: usize, edges: &[(usize, usize, Label)]) -> Result<Self> {
        let mut d = Self::commuting(rank)?;
        let mut seen = vec![false; rank * rank];
        for &(i, j, m) in edges {
            if i >= rank || j >= rank {
                return Err(Error::IndexOutOfRange {
                    index: i.max(j),
                    size: rank,
                });
            }
            if i == j {
                return Err(Error::InvalidDiagram(format!("self-edge at vertex {}", i + 1)));
            }
            if seen[i * rank + j] {
                return Err(Error::InvalidDiagram(format!("duplicate edge {}-{}", i + 1, j + 1)));
            }
            if let Label::Finite(v) = m {
                if v < 2 {
                    return Err(Error::InvalidDiagram(format!("label {v} < 2")));
                }
            }
            seen[i * rank + j] = true;
            seen[j * rank + i] = true;
            d.labels[i * rank + j] = m;
            d.labels[j * rank + i] = m;
        }
        Ok(d)
    }

    /// Diagram with every off-diagonal label infinite (free product of `Z_2`'s).
    pub fn universal(rank: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for i in 0..rank {
            for j in i + 1..rank {
                edges.push((i, j, Label::Infinity));
            }
        }
        Self::from_edges(rank, &edges)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self, i: usize, j: usize) -> Label {
        self.labels[i * self.rank + j]
    }

    /// Upper-triangular pairs with their labels.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, Label)> + '_ {
        (0..self.rank).flat_map(move |i| (i + 1..self.rank).map(move |j| (i, j, self.label(i, j))))
    }

    /// Finite labels `m >= 3` present in the diagram.
    pub fn finite_edge_labels(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .pairs()
            .filter_map(|(_, _, m)| m.finite())
            .filter(|&m| m >= 3)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// True when every off-diagonal label is infinite.
    pub fn is_free_product(&self) -> bool {
        self.pairs().all(|(_, _, m)| m.is_infinite())
    }

    pub fn infinity_neighbours(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank).filter(move |&j| j != i && self.label(i, j).is_infinite())
    }

    /// Connected components of the graph with an edge wherever `m_ij >= 3`.
    pub fn components(&self) -> Vec<Vec<usize>> {
        components_by(self.rank, |i, j| self.label(i, j).is_edge())
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    pub fn require_connected(&self) -> Result<()> {
        let c = self.components().len();
        if c == 1 {
            Ok(())
        } else {
            Err(Error::Disconnected { components: c })
        }
    }

    /// Diagram with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        check_permutation(perm, self.rank)?;
        let mut d = Self::commuting(self.rank)?;
        for (i, j, m) in self.pairs() {
            let (a, b) = (perm[i], perm[j]);
            d.labels[a * self.rank + b] = m;
            d.labels[b * self.rank + a] = m;
        }
        Ok(d)
    }

    /// Plain undirected DOT graph; label-3 edges are drawn unlabelled.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph coxeter {\n");
        for v in 0..self.rank {
            s.push_str(&format!("  v{} [label=\"{}\"];\n", v + 1, v + 1));
        }
        for (i, j, m) in self.pairs() {
            match m {
                Label::Finite(3) => s.push_str(&format!("  v{} -- v{};\n", i + 1, j + 1)),
                Label::Finite(k) if k >= 4 => {
                    s.push_str(&format!("  v{} -- v{} [label=\"{}\"];\n", i + 1, j + 1, k))
                }
                Label::Infinity => {
                    s.push_str(&format!("  v{} -- v{} [label=\"inf\"];\n", i + 1, j + 1))
                }
                _ => {}
            }
        }
        s.push_str("}\n");
        s
    }

    /// Canonical text form, parseable by [`parse_diagram`].
    pub fn to_text(&self) -> String {
        let mut s = format!("rank {}\n", self.rank);
        for (i, j, m) in self.pairs() {
            if m != Label::Finite(2) {
                s.push_str(&format!("edge {} {} {}\n", i + 1, j + 1, m));
            }
        }
        s
    }
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::DimensionMismatch {
            left: perm.len(),
            right: n,
        });
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::InvalidDiagram("not a permutation".into()));
        }
        seen[p] = true;
    }
    Ok(())
}

fn components_by(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if v != u && comp[v] == usize::MAX && adjacent(u, v) {
                    comp[v] = id;
                    members.push(v);
                    queue.push_back(v);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Edge kinds of a geometric (polytope) Coxeter diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeometricEdge {
    /// Facets meeting at angle `pi/m`, `m >= 3`.
    Angle(u32),
    /// Facets tangent at an ideal point.
    Bold,
    /// Facets with a common perpendicular.
    Dashed,
}

/// Diagram of a hyperbolic Coxeter polytope. Absent pairs meet at a right angle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometricDiagram {
    rank: usize,
    edges: BTreeMap<(usize, usize), GeometricEdge>,
}

impl GeometricDiagram {
    pub fn new(rank: usize, edges: &[(usize, usize, GeometricEdge)]) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidDiagram("rank must be at least 1".into()));
        }
        let mut map = BTreeMap::new();
        for &(i, j, kind) in edges {
            if i >= rank || j >= rank {
                return Err(Error::IndexOutOfRange {
                    index: i.max(j),
                    size: rank,
                });
            }
            if i == j {
                return Err(Error::InvalidDiagram(format!("self-edge at vertex {}", i + 1)));
            }
            if let GeometricEdge::Angle(m) = kind {
                if m < 3 {
                    return Err(Error::InvalidDiagram(format!("angle label {m} < 3")));
                }
            }
            let key = (i.min(j), i.max(j));
            if map.insert(key, kind).is_some() {
                return Err(Error::InvalidDiagram(format!("duplicate edge {}-{}", i + 1, j + 1)));
            }
        }
        Ok(GeometricDiagram { rank, edges: map })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, GeometricEdge)> + '_ {
        self.edges.iter().map(|(&(i, j), &k)| (i, j, k))
    }

    /// Bold and dashed edges both become infinity; angles keep their label.
    pub fn to_coxeter(&self) -> CoxeterDiagram {
        let edges: Vec<_> = self
            .edges()
            .map(|(i, j, k)| {
                let m = match k {
                    GeometricEdge::Angle(m) => Label::Finite(m),
                    GeometricEdge::Bold | GeometricEdge::Dashed => Label::Infinity,
                };
                (i, j, m)
            })
            .collect();
        CoxeterDiagram::from_edges(self.rank, &edges).expect("validated geometric diagram")
    }

    /// Whether the bold and dashed edges form a connected spanning subgraph.
    pub fn bold_dashed_connected(&self) -> bool {
        let ideal = |i: usize, j: usize| {
            matches!(
                self.edges.get(&(i.min(j), i.max(j))),
                Some(GeometricEdge::Bold | GeometricEdge::Dashed)
            )
        };
        components_by(self.rank, ideal).len() == 1
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph polytope {\n");
        for v in 0..self.rank {
            s.push_str(&format!("  v{} [label=\"{}\"];\n", v + 1, v + 1));
        }
        for (i, j, k) in self.edges() {
            let attrs = match k {
                GeometricEdge::Angle(3) => String::new(),
                GeometricEdge::Angle(m) => format!(" [label=\"{m}\"]"),
                GeometricEdge::Bold => " [style=bold, penwidth=3]".to_string(),
                GeometricEdge::Dashed => " [style=dashed]".to_string(),
            };
            s.push_str(&format!("  v{} -- v{}{};\n", i + 1, j + 1, attrs));
        }
        s.push_str("}\n");
        s
    }
}

/// Result of [`parse_diagram`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedDiagram {
    Coxeter(CoxeterDiagram),
    Geometric(GeometricDiagram),
}

impl ParsedDiagram {
    pub fn to_coxeter(&self) -> CoxeterDiagram {
        match self {
            ParsedDiagram::Coxeter(d) => d.clone(),
            ParsedDiagram::Geometric(g) => g.to_coxeter(),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            ParsedDiagram::Coxeter(d) => d.rank(),
            ParsedDiagram::Geometric(g) => g.rank(),
        }
    }

    pub fn to_dot(&self) -> String {
        match self {
            ParsedDiagram::Coxeter(d) => d.to_dot(),
            ParsedDiagram::Geometric(g) => g.to_dot(),
        }
    }
}

/// Parses the line-oriented diagram format:
///
/// ```text
/// # comment
/// rank 3
/// edge 1 2 inf
/// edge 2 3 4
/// ```
///
/// Geometric diagrams use `gedge <i> <j> <angle m | bold | dashed>` instead.
pub fn parse_diagram(text: &str) -> Result<ParsedDiagram> {
    let mut rank: Option<usize> = None;
    let mut cox_edges: Vec<(usize, usize, Label)> = Vec::new();
    let mut geo_edges: Vec<(usize, usize, GeometricEdge)> = Vec::new();
    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let syntax = |message: &str| Error::Syntax {
            line,
            message: message.to_string(),
        };

        let Some(n) = rank else {
            if tokens[0] != "rank" {
                return Err(syntax("expected `rank <n>` header"));
            }
            if tokens.len() != 2 {
                return Err(syntax("`rank` takes exactly one argument"));
            }
            let n: usize = tokens[1]
                .parse()
                .map_err(|_| syntax("rank must be a positive integer"))?;
            if n == 0 {
                return Err(syntax("rank must be a positive integer"));
            }
            rank = Some(n);
            continue;
        };

        let keyword = tokens[0];
        if keyword != "edge" && keyword != "gedge" {
            return Err(syntax(&format!("unknown directive `{keyword}`")));
        }
        if tokens.len() < 4 {
            return Err(syntax(&format!("`{keyword}` needs two vertices and a label")));
        }
        let vertex = |tok: &str| -> Result<usize> {
            let v: usize = tok
                .parse()
                .map_err(|_| syntax(&format!("bad vertex index `{tok}`")))?;
            if v == 0 || v > n {
                return Err(Error::VertexOutOfRange {
                    line,
                    vertex: v,
                    rank: n,
                });
            }
            Ok(v - 1)
        };
        let i = vertex(tokens[1])?;
        let j = vertex(tokens[2])?;
        if i == j {
            return Err(syntax("self-edges are not allowed"));
        }
        let key = (i.min(j), i.max(j));
        if seen.insert(key, line).is_some() {
            return Err(Error::DuplicateEdge {
                line,
                i: key.0 + 1,
                j: key.1 + 1,
            });
        }

        if keyword == "edge" {
            if !geo_edges.is_empty() {
                return Err(syntax("cannot mix `edge` and `gedge` lines"));
            }
            if tokens.len() != 4 {
                return Err(syntax("`edge` takes exactly three arguments"));
            }
            let label = parse_label(tokens[3], line, 2)?;
            cox_edges.push((i, j, label));
        } else {
            if !cox_edges.is_empty() {
                return Err(syntax("cannot mix `edge` and `gedge` lines"));
            }
            let kind = match (tokens[3], tokens.len()) {
                ("bold", 4) => GeometricEdge::Bold,
                ("dashed", 4) => GeometricEdge::Dashed,
                ("angle", 5) => match parse_label(tokens[4], line, 3)? {
                    Label::Finite(m) => GeometricEdge::Angle(m),
                    Label::Infinity => {
                        return Err(syntax("use `bold` or `dashed` for non-intersecting facets"))
                    }
                },
                _ => return Err(syntax("`gedge` kind must be `angle <m>`, `bold` or `dashed`")),
            };
            geo_edges.push((i, j, kind));
        }
    }

    let n = rank.ok_or(Error::Syntax {
        line: text.lines().count().max(1),
        message: "missing `rank <n>` header".into(),
    })?;
    if !geo_edges.is_empty() {
        Ok(ParsedDiagram::Geometric(GeometricDiagram::new(n, &geo_edges)?))
    } else {
        Ok(ParsedDiagram::Coxeter(CoxeterDiagram::from_edges(n, &cox_edges)?))
    }
}

fn parse_label(tok: &str, line: usize, min: u32) -> Result<Label> {
    if tok == "inf" || tok == "∞" {
        return Ok(Label::Infinity);
    }
    match tok.parse::<u32>() {
        Ok(m) if m >= min => Ok(Label::Finite(m)),
        _ => Err(Error::InvalidLabel {
            line,
            label: tok.to_string(),
            min,
        }),
    }
}

/// Spanning tree of a diagram whose edges all carry label infinity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpanningTree {
    root: usize,
    parent: Vec<Option<usize>>,
    adjacency: Vec<Vec<usize>>,
}

impl SpanningTree {
    /// Builds a tree from an edge list, checking that it is connected and acyclic.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if edges.len() + 1 != n {
            return Err(Error::InvalidDiagram(format!(
                "a spanning tree on {n} vertices needs {} edges, got {}",
                n.saturating_sub(1),
                edges.len()
            )));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::InvalidDiagram(format!("bad tree edge {}-{}", a + 1, b + 1)));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        let parent = bfs_parents(&adjacency, 0);
        if parent.iter().enumerate().any(|(v, p)| v != 0 && p.is_none()) {
            return Err(Error::InvalidDiagram("tree edges do not connect all vertices".into()));
        }
        Ok(SpanningTree {
            root: 0,
            parent,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn contains_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Tree edges as `(smaller, larger)` pairs, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, adj)| adj.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Leaves (degree-one vertices).
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.adjacency[v].len() == 1)
            .collect()
    }
}

fn bfs_parents(adjacency: &[Vec<usize>], root: usize) -> Vec<Option<usize>> {
    let n = adjacency.len();
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &v in &adjacency[u] {
            if !seen[v] {
                seen[v] = true;
                parent[v] = Some(u);
                queue.push_back(v);
            }
        }
    }
    parent
}

/// Returns an infinity-labelled spanning tree when the diagram is
/// infinity-spanned (rank at least 3), `None` otherwise.
///
/// The tree is the BFS tree over infinity edges from the lowest vertex of the
/// largest component of the infinity subgraph, visiting neighbours in index order.
pub fn infinity_spanned(d: &CoxeterDiagram) -> Option<SpanningTree> {
    let n = d.rank();
    if n < 3 {
        return None;
    }
    let comps = components_by(n, |i, j| d.label(i, j).is_infinite());
    let largest = comps
        .iter()
        .max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])))?;
    if largest.len() != n {
        return None;
    }
    let root = largest[0];
    let adjacency: Vec<Vec<usize>> = (0..n).map(|v| d.infinity_neighbours(v).collect()).collect();
    let parent = bfs_parents(&adjacency, root);
    let mut tree_adj = vec![Vec::new(); n];
    for (v, p) in parent.iter().enumerate() {
        if let Some(p) = *p {
            tree_adj[v].push(p);
            tree_adj[p].push(v);
        }
    }
    for adj in &mut tree_adj {
        adj.sort_unstable();
    }
    Some(SpanningTree {
        root,
        parent,
        adjacency: tree_adj,
    })
}

/// Vertex renumbering satisfying the labelling lemma: the tree contains the
/// path `1 - 2 - 3` and labels strictly increase along every tree path from
/// vertex `1` to a leaf.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Labelling {
    /// `label[v]`: new 0-based label of vertex `v`.
    label: Vec<usize>,
    /// `vertex[k]`: vertex carrying label `k`.
    vertex: Vec<usize>,
}

impl Labelling {
    pub fn from_labels(label: Vec<usize>) -> Result<Self> {
        check_permutation(&label, label.len())?;
        let mut vertex = vec![0; label.len()];
        for (v, &l) in label.iter().enumerate() {
            vertex[l] = v;
        }
        Ok(Labelling { label, vertex })
    }

    pub fn identity(n: usize) -> Self {
        Labelling {
            label: (0..n).collect(),
            vertex: (0..n).collect(),
        }
    }

    pub fn label_of(&self, v: usize) -> usize {
        self.label[v]
    }

    pub fn vertex_with(&self, k: usize) -> usize {
        self.vertex[k]
    }

    /// `labels()[v]` is the new label of vertex `v`.
    pub fn labels(&self) -> &[usize] {
        &self.label
    }

    /// Vertices in label order; usable as a ShortLex generator order.
    pub fn order(&self) -> &[usize] {
        &self.vertex
    }

    pub fn is_identity(&self) -> bool {
        self.label.iter().enumerate().all(|(v, &l)| v == l)
    }
}

/// Checks the two conditions of the labelling lemma for `labelling` on `tree`.
pub fn is_admissible(tree: &SpanningTree, labelling: &Labelling) -> bool {
    let n = tree.vertex_count();
    if n < 3 || labelling.label.len() != n {
        return false;
    }
    let (v1, v2, v3) = (
        labelling.vertex_with(0),
        labelling.vertex_with(1),
        labelling.vertex_with(2),
    );
    if !tree.contains_edge(v1, v2) || !tree.contains_edge(v2, v3) {
        return false;
    }
    // Rooted at v1, every vertex lies on some path to a leaf, so the path
    // condition is equivalent to labels increasing along every tree edge away from v1.
    let parent = bfs_parents(&tree.adjacency, v1);
    (0..n).all(|v| match parent[v] {
        Some(p) => labelling.label_of(p) < labelling.label_of(v),
        None => v == v1,
    })
}

/// Labels the tree by peeling leaves: an initial path `a - b - c` gets
/// labels 1, 2, 3, then leaves are numbered downward from `n`, the boundary
/// is removed and the process repeats.
///
/// Initial paths are tried in lexicographic order and the first one whose
/// peeling satisfies [`is_admissible`] is returned. Within one boundary, leaves
/// are labelled in descending vertex order.
pub fn admissible_labelling(d: &CoxeterDiagram, tree: &SpanningTree) -> Result<Labelling> {
    let n = d.rank();
    if n < 3 {
        return Err(Error::RankTooSmall { rank: n, needed: 3 });
    }
    if tree.vertex_count() != n {
        return Err(Error::DimensionMismatch {
            left: tree.vertex_count(),
            right: n,
        });
    }
    for (a, b) in tree.edges() {
        if !d.label(a, b).is_infinite() {
            return Err(Error::NotInfinityEdge { i: a + 1, j: b + 1 });
        }
    }

    for a in 0..n {
        for &b in tree.neighbours(a) {
            for &c in tree.neighbours(b) {
                if c == a {
                    continue;
                }
                let labelling = peel_labelling(tree, [a, b, c]);
                if is_admissible(tree, &labelling) {
                    return Ok(labelling);
                }
            }
        }
    }
    Ok(outward_labelling(tree))
}

fn peel_labelling(tree: &SpanningTree, start: [usize; 3]) -> Labelling {
    let n = tree.vertex_count();
    let mut label = vec![usize::MAX; n];
    for (k, &v) in start.iter().enumerate() {
        label[v] = k;
    }
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| tree.neighbours(v).len()).collect();
    let mut next = n;
    let mut remaining = n - 3;
    while remaining > 0 {
        let boundary: Vec<usize> = (0..n).filter(|&v| alive[v] && degree[v] <= 1).collect();
        for &v in boundary.iter().rev() {
            if label[v] == usize::MAX {
                next -= 1;
                label[v] = next;
                remaining -= 1;
            }
        }
        for &v in &boundary {
            alive[v] = false;
            for &u in tree.neighbours(v) {
                if alive[u] {
                    degree[u] -= 1;
                }
            }
        }
    }
    Labelling::from_labels(label).expect("peeling assigns every label once")
}

/// Root-outward numbering: used only when no peeling order is admissible.
fn outward_labelling(tree: &SpanningTree) -> Labelling {
    let n = tree.vertex_count();
    // Any vertex with a neighbour that has a further neighbour; a leaf of a
    // longest path always works.
    let (a, b, c) = (0..n)
        .find_map(|a| {
            tree.neighbours(a).iter().find_map(|&b| {
                tree.neighbours(b)
                    .iter()
                    .find(|&&c| c != a)
                    .map(|&c| (a, b, c))
            })
        })
        .expect("tree on at least 3 vertices has a path of length 2");
    let mut label = vec![usize::MAX; n];
    label[a] = 0;
    label[b] = 1;
    label[c] = 2;
    let mut next = 3;
    let mut queue = VecDeque::from([a, b, c]);
    while let Some(u) = queue.pop_front() {
        for &v in tree.neighbours(u) {
            if label[v] == usize::MAX {
                label[v] = next;
                next += 1;
                queue.push_back(v);
            }
        }
    }
    Labelling::from_labels(label).expect("BFS assigns every label once")
}
