//! Two-colored complete graphs, star-augmented graphs, and their text format.
//!
//! Vertices are `0..N`; a star-augmented graph has one extra vertex `w`
//! indexed `N`. Edges of the base graph are always totally colored; only
//! star pairs may be absent. Everything is kept in per-color adjacency
//! bitsets so the detectors can work with word operations.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported vertex count (bitset word width).
pub const MAX_ORDER: usize = 64;

#[inline(always)]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Iterate the set bits of a mask in ascending order.
#[inline]
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

/// Edge label: every base edge is exactly one of these.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Color {
    #[serde(rename = "R")]
    Red,
    #[serde(rename = "B")]
    Blue,
}

impl Color {
    /// The other color. An involution: `c.flip().flip() == c`.
    pub fn flip(self) -> Color {
        match self {
            Color::Red => Color::Blue,
            Color::Blue => Color::Red,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Color::Red => 'R',
            Color::Blue => 'B',
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("order {0} out of range (1..={MAX_ORDER})")]
    OrderOutOfRange(usize),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-pair at vertex {0}")]
    SamePair(usize),
    #[error("star edge count {k} exceeds base order {order}")]
    StarTooLarge { k: usize, order: usize },
    #[error("duplicate star edge at base vertex {0}")]
    DuplicateStarEdge(usize),
}

/// Monochromatic adjacency view: the graph `G^c` of one color class,
/// possibly including the star vertex as the last row.
#[derive(Clone, Debug)]
pub struct ColorView {
    n: usize,
    adj: Vec<u64>,
}

impl ColorView {
    pub(crate) fn new(adj: Vec<u64>) -> Self {
        let n = adj.len();
        debug_assert!(n <= MAX_ORDER);
        ColorView { n, adj }
    }

    #[inline(always)]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Neighbor bitset of `v` in this color class.
    #[inline(always)]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline(always)]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && (self.adj[u] & bit(v)) != 0
    }

    #[inline(always)]
    pub fn full_mask(&self) -> u64 {
        if self.n == MAX_ORDER {
            u64::MAX
        } else {
            bit(self.n) - 1
        }
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }
}

/// Access shared by complete and star-augmented colorings. `None` from
/// `pair_color` means the pair is a non-edge (only possible at the star
/// vertex).
pub trait EdgeColored {
    /// Total number of vertices, including the star vertex if present.
    fn vertex_count(&self) -> usize;
    /// Color of the pair, `None` for an absent star pair. Caller must pass
    /// distinct in-range vertices.
    fn pair_color(&self, u: usize, v: usize) -> Option<Color>;
    /// Monochromatic adjacency view of one color class.
    fn view(&self, c: Color) -> ColorView;
}

/// A complete graph of order `N` with a total red/blue edge coloring.
///
/// Stored as two bitset adjacency structures, one per color; the two views
/// partition the edge set of `K_N`.
#[derive(Clone, PartialEq, Eq)]
pub struct ColoredGraph {
    order: usize,
    red: Vec<u64>,
    blue: Vec<u64>,
}

impl fmt::Debug for ColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColoredGraph(order={}, red={})", self.order, self.edge_count(Color::Red))
    }
}

impl ColoredGraph {
    /// Build from a coloring function over pairs `u < v`.
    pub fn from_fn(
        order: usize,
        mut f: impl FnMut(usize, usize) -> Color,
    ) -> Result<Self, GraphError> {
        if order == 0 || order > MAX_ORDER {
            return Err(GraphError::OrderOutOfRange(order));
        }
        let mut red = vec![0u64; order];
        let mut blue = vec![0u64; order];
        for u in 0..order {
            for v in (u + 1)..order {
                let rows = match f(u, v) {
                    Color::Red => &mut red,
                    Color::Blue => &mut blue,
                };
                rows[u] |= bit(v);
                rows[v] |= bit(u);
            }
        }
        Ok(ColoredGraph { order, red, blue })
    }

    /// All edges in one color.
    pub fn monochromatic(order: usize, c: Color) -> Result<Self, GraphError> {
        Self::from_fn(order, |_, _| c)
    }

    #[inline(always)]
    pub fn order(&self) -> usize {
        self.order
    }

    /// Stored color of the pair `{u, v}`; symmetric in its arguments.
    pub fn color_of(&self, u: usize, v: usize) -> Result<Color, GraphError> {
        if u >= self.order {
            return Err(GraphError::VertexOutOfRange { vertex: u, order: self.order });
        }
        if v >= self.order {
            return Err(GraphError::VertexOutOfRange { vertex: v, order: self.order });
        }
        if u == v {
            return Err(GraphError::SamePair(u));
        }
        if self.red[u] & bit(v) != 0 {
            Ok(Color::Red)
        } else {
            Ok(Color::Blue)
        }
    }

    #[inline]
    pub fn neighbors(&self, v: usize, c: Color) -> u64 {
        match c {
            Color::Red => self.red[v],
            Color::Blue => self.blue[v],
        }
    }

    #[inline]
    pub fn degree(&self, v: usize, c: Color) -> usize {
        self.neighbors(v, c).count_ones() as usize
    }

    /// Per-vertex degrees in `G^c`. The red and blue profiles sum to
    /// `N - 1` at every vertex.
    pub fn degree_profile(&self, c: Color) -> Vec<usize> {
        (0..self.order).map(|v| self.degree(v, c)).collect()
    }

    pub fn edge_count(&self, c: Color) -> usize {
        (0..self.order).map(|v| self.degree(v, c)).sum::<usize>() / 2
    }

    /// All pairs `u < v` carrying color `c`.
    pub fn edges(&self, c: Color) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.order {
            for v in bits(self.neighbors(u, c)) {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

impl EdgeColored for ColoredGraph {
    fn vertex_count(&self) -> usize {
        self.order
    }

    fn pair_color(&self, u: usize, v: usize) -> Option<Color> {
        self.color_of(u, v).ok()
    }

    fn view(&self, c: Color) -> ColorView {
        ColorView::new(match c {
            Color::Red => self.red.clone(),
            Color::Blue => self.blue.clone(),
        })
    }
}

/// A complete base coloring plus one star vertex `w` (index `N`) joined to
/// `k` of the base vertices with colored edges. Pairs between `w` and the
/// remaining base vertices are absent, not "uncolored".
#[derive(Clone, PartialEq, Eq)]
pub struct StarColoredGraph {
    base: ColoredGraph,
    star_red: u64,
    star_blue: u64,
}

impl fmt::Debug for StarColoredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StarColoredGraph(order={}, k={})", self.base.order, self.k())
    }
}

impl StarColoredGraph {
    pub fn new(base: ColoredGraph, star_edges: &[(usize, Color)]) -> Result<Self, GraphError> {
        if base.order + 1 > MAX_ORDER {
            return Err(GraphError::OrderOutOfRange(base.order + 1));
        }
        let mut star_red = 0u64;
        let mut star_blue = 0u64;
        for &(v, c) in star_edges {
            if v >= base.order {
                return Err(GraphError::VertexOutOfRange { vertex: v, order: base.order });
            }
            if (star_red | star_blue) & bit(v) != 0 {
                return Err(GraphError::DuplicateStarEdge(v));
            }
            match c {
                Color::Red => star_red |= bit(v),
                Color::Blue => star_blue |= bit(v),
            }
        }
        Ok(StarColoredGraph { base, star_red, star_blue })
    }

    pub(crate) fn from_masks(
        base: ColoredGraph,
        star_red: u64,
        star_blue: u64,
    ) -> Result<Self, GraphError> {
        if base.order + 1 > MAX_ORDER {
            return Err(GraphError::OrderOutOfRange(base.order + 1));
        }
        let mask = if base.order == MAX_ORDER { u64::MAX } else { bit(base.order) - 1 };
        debug_assert_eq!(star_red & star_blue, 0);
        debug_assert_eq!(star_red & !mask, 0);
        debug_assert_eq!(star_blue & !mask, 0);
        Ok(StarColoredGraph { base, star_red, star_blue })
    }

    /// Removing `w` yields exactly this graph.
    pub fn base(&self) -> &ColoredGraph {
        &self.base
    }

    /// Index of the star vertex.
    #[inline(always)]
    pub fn star_vertex(&self) -> usize {
        self.base.order
    }

    /// Number of star edges.
    pub fn k(&self) -> usize {
        (self.star_red | self.star_blue).count_ones() as usize
    }

    pub fn star_neighbors(&self, c: Color) -> u64 {
        match c {
            Color::Red => self.star_red,
            Color::Blue => self.star_blue,
        }
    }

    /// Star edges as `(base vertex, color)`, ascending.
    pub fn star_edges(&self) -> Vec<(usize, Color)> {
        let mut out: Vec<(usize, Color)> = bits(self.star_red)
            .map(|v| (v, Color::Red))
            .chain(bits(self.star_blue).map(|v| (v, Color::Blue)))
            .collect();
        out.sort_unstable_by_key(|&(v, _)| v);
        out
    }

    /// Color of the pair; `None` exactly when one endpoint is the star
    /// vertex and the pair is not a star edge.
    pub fn color_of(&self, u: usize, v: usize) -> Result<Option<Color>, GraphError> {
        let n = self.base.order;
        if u > n {
            return Err(GraphError::VertexOutOfRange { vertex: u, order: n + 1 });
        }
        if v > n {
            return Err(GraphError::VertexOutOfRange { vertex: v, order: n + 1 });
        }
        if u == v {
            return Err(GraphError::SamePair(u));
        }
        if u < n && v < n {
            return self.base.color_of(u, v).map(Some);
        }
        let b = if u == n { v } else { u };
        if self.star_red & bit(b) != 0 {
            Ok(Some(Color::Red))
        } else if self.star_blue & bit(b) != 0 {
            Ok(Some(Color::Blue))
        } else {
            Ok(None)
        }
    }
}

impl EdgeColored for StarColoredGraph {
    fn vertex_count(&self) -> usize {
        self.base.order + 1
    }

    fn pair_color(&self, u: usize, v: usize) -> Option<Color> {
        self.color_of(u, v).ok().flatten()
    }

    fn view(&self, c: Color) -> ColorView {
        let n = self.base.order;
        let mut adj = Vec::with_capacity(n + 1);
        let (rows, star) = match c {
            Color::Red => (&self.base.red, self.star_red),
            Color::Blue => (&self.base.blue, self.star_blue),
        };
        for v in 0..n {
            let mut row = rows[v];
            if star & bit(v) != 0 {
                row |= bit(n);
            }
            adj.push(row);
        }
        adj.push(star);
        ColorView::new(adj)
    }
}

/// Either kind of graph the text format can hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyGraph {
    Complete(ColoredGraph),
    Star(StarColoredGraph),
}

impl AnyGraph {
    pub fn vertex_count(&self) -> usize {
        match self {
            AnyGraph::Complete(g) => g.vertex_count(),
            AnyGraph::Star(g) => g.vertex_count(),
        }
    }

    pub fn base(&self) -> &ColoredGraph {
        match self {
            AnyGraph::Complete(g) => g,
            AnyGraph::Star(g) => g.base(),
        }
    }

    pub fn serialize(&self) -> String {
        match self {
            AnyGraph::Complete(g) => serialize(g),
            AnyGraph::Star(g) => serialize_star(g),
        }
    }
}

// ---------------------------------------------------------------------------
// Target pairs
// ---------------------------------------------------------------------------

/// The red structure a coloring must avoid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RedTarget {
    /// `n` triangles sharing one center vertex; `Fan(1)` is a triangle.
    Fan(usize),
    /// `m` pairwise vertex-disjoint edges.
    Matching(usize),
}

impl RedTarget {
    pub fn param(&self) -> usize {
        match *self {
            RedTarget::Fan(p) | RedTarget::Matching(p) => p,
        }
    }
}

impl fmt::Display for RedTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RedTarget::Fan(n) => write!(f, "fan:{n}"),
            RedTarget::Matching(m) => write!(f, "matching:{m}"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TargetError {
    #[error("bad target spec {0:?}: expected fan:<n>, matching:<m>, or clique:<r>")]
    BadSpec(String),
    #[error("target parameter must be >= 1")]
    ZeroParam,
    #[error("blue clique target must be >= 2")]
    CliqueTooSmall,
    #[error("{0:?} is not valid here: red targets are fan/matching, blue targets are clique")]
    WrongSide(String),
}

impl FromStr for RedTarget {
    type Err = TargetError;

    fn from_str(s: &str) -> Result<Self, TargetError> {
        let (kind, num) = s.split_once(':').ok_or_else(|| TargetError::BadSpec(s.into()))?;
        let n: usize = num.parse().map_err(|_| TargetError::BadSpec(s.into()))?;
        if n == 0 {
            return Err(TargetError::ZeroParam);
        }
        match kind {
            "fan" => Ok(RedTarget::Fan(n)),
            "matching" => Ok(RedTarget::Matching(n)),
            "clique" => Err(TargetError::WrongSide(s.into())),
            _ => Err(TargetError::BadSpec(s.into())),
        }
    }
}

/// Parse a blue target spec `clique:<r>`.
pub fn parse_blue_target(s: &str) -> Result<usize, TargetError> {
    let (kind, num) = s.split_once(':').ok_or_else(|| TargetError::BadSpec(s.into()))?;
    if kind != "clique" {
        return Err(TargetError::WrongSide(s.into()));
    }
    let r: usize = num.parse().map_err(|_| TargetError::BadSpec(s.into()))?;
    if r < 2 {
        return Err(TargetError::CliqueTooSmall);
    }
    Ok(r)
}

/// The avoidance specification: a coloring is free when it contains neither
/// the red target nor a blue clique of the stated size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetPair {
    pub red: RedTarget,
    pub blue_clique: usize,
}

impl TargetPair {
    pub fn new(red: RedTarget, blue_clique: usize) -> Result<Self, TargetError> {
        if red.param() == 0 {
            return Err(TargetError::ZeroParam);
        }
        if blue_clique < 2 {
            return Err(TargetError::CliqueTooSmall);
        }
        Ok(TargetPair { red, blue_clique })
    }

    pub fn fan_vs_k4(n: usize) -> Self {
        TargetPair { red: RedTarget::Fan(n), blue_clique: 4 }
    }
}

impl fmt::Display for TargetPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, clique:{})", self.red, self.blue_clique)
    }
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("line {line}: bad header {content:?} (expected `cg <N>` or `cg <N> star <k>`)")]
    BadHeader { line: usize, content: String },
    #[error("order {order} out of range (1..={max})")]
    BadOrder { order: usize, max: usize },
    #[error("line {line}: malformed edge line {content:?}")]
    MalformedLine { line: usize, content: String },
    #[error("line {line}: vertex {vertex} out of range")]
    VertexRange { line: usize, vertex: usize },
    #[error("line {line}: edge ({u}, {v}) must satisfy u < v")]
    NotIncreasing { line: usize, u: usize, v: usize },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("missing color for base pair ({u}, {v})")]
    MissingEdge { u: usize, v: usize },
    #[error("star edge count mismatch: header says {expected}, found {found}")]
    StarCountMismatch { expected: usize, found: usize },
}

/// Canonical text for a complete coloring: header then one line per edge,
/// lexicographic by `(u, v)`.
pub fn serialize(g: &ColoredGraph) -> String {
    let n = g.order();
    let mut out = format!("cg {n}\n");
    for u in 0..n {
        for v in (u + 1)..n {
            let c = g.color_of(u, v).expect("complete");
            out.push_str(&format!("{u} {v} {c}\n"));
        }
    }
    out
}

/// Canonical text for a star-augmented coloring; star lines `(u, N)` sort
/// into the same lexicographic order as the base lines.
pub fn serialize_star(g: &StarColoredGraph) -> String {
    let n = g.base().order();
    let w = g.star_vertex();
    let mut out = format!("cg {n} star {}\n", g.k());
    for u in 0..n {
        for v in (u + 1)..n {
            let c = g.base().color_of(u, v).expect("complete");
            out.push_str(&format!("{u} {v} {c}\n"));
        }
        if let Some(c) = g.color_of(u, w).expect("in range") {
            out.push_str(&format!("{u} {w} {c}\n"));
        }
    }
    out
}

/// Parse the text format. Round-trips with [`serialize`]/[`serialize_star`]
/// bit-exactly after canonical ordering; edge lines may appear in any order.
pub fn parse(text: &str) -> Result<AnyGraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or(ParseError::Empty)?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let bad_header = || ParseError::BadHeader { line: hline, content: header.to_string() };
    let (order, star_k) = match fields.as_slice() {
        ["cg", n] => (n.parse::<usize>().map_err(|_| bad_header())?, None),
        ["cg", n, "star", k] => (
            n.parse::<usize>().map_err(|_| bad_header())?,
            Some(k.parse::<usize>().map_err(|_| bad_header())?),
        ),
        _ => return Err(bad_header()),
    };
    let max = if star_k.is_some() { MAX_ORDER - 1 } else { MAX_ORDER };
    if order == 0 || order > max {
        return Err(ParseError::BadOrder { order, max });
    }
    if let Some(k) = star_k {
        if k > order {
            return Err(ParseError::BadOrder { order: k, max: order });
        }
    }

    let vertex_count = order + usize::from(star_k.is_some());
    let mut seen = vec![0u64; vertex_count];
    let mut red = vec![0u64; vertex_count];
    let mut star_edges: Vec<(usize, Color)> = Vec::new();

    for (lno, line) in lines {
        let malformed = || ParseError::MalformedLine { line: lno, content: line.to_string() };
        let mut it = line.split_whitespace();
        let u: usize = it.next().ok_or_else(malformed)?.parse().map_err(|_| malformed())?;
        let v: usize = it.next().ok_or_else(malformed)?.parse().map_err(|_| malformed())?;
        let c = match it.next().ok_or_else(malformed)? {
            "R" => Color::Red,
            "B" => Color::Blue,
            _ => return Err(malformed()),
        };
        if it.next().is_some() {
            return Err(malformed());
        }
        if u >= vertex_count {
            return Err(ParseError::VertexRange { line: lno, vertex: u });
        }
        if v >= vertex_count {
            return Err(ParseError::VertexRange { line: lno, vertex: v });
        }
        if u >= v {
            return Err(ParseError::NotIncreasing { line: lno, u, v });
        }
        if seen[u] & bit(v) != 0 {
            return Err(ParseError::DuplicateEdge { line: lno, u, v });
        }
        seen[u] |= bit(v);
        seen[v] |= bit(u);
        if v == order && star_k.is_some() {
            star_edges.push((u, c));
        } else if c == Color::Red {
            red[u] |= bit(v);
            red[v] |= bit(u);
        }
    }

    for u in 0..order {
        for v in (u + 1)..order {
            if seen[u] & bit(v) == 0 {
                return Err(ParseError::MissingEdge { u, v });
            }
        }
    }

    let base = ColoredGraph::from_fn(order, |u, v| {
        if red[u] & bit(v) != 0 {
            Color::Red
        } else {
            Color::Blue
        }
    })
    .expect("order validated");

    match star_k {
        None => Ok(AnyGraph::Complete(base)),
        Some(k) => {
            if star_edges.len() != k {
                return Err(ParseError::StarCountMismatch { expected: k, found: star_edges.len() });
            }
            let g = StarColoredGraph::new(base, &star_edges).expect("validated");
            Ok(AnyGraph::Star(g))
        }
    }
}
