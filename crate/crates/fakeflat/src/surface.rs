//! Cut cellular surfaces: compact planar presentations of orientable
//! surfaces with boundary.
//!
//! A surface is stored purely combinatorially: oriented edges tagged by
//! their role (numbered in/out boundary circles, cut edges identified in
//! pairs inside the face words, or internal edges), and faces given by their
//! cyclic boundary words read anticlockwise from a basepoint position. Each
//! boundary circle consists of a single vertex and a single loop edge at it.
//!
//! Two local moves rewrite presentations of the same surface: splitting or
//! merging an edge at a vertex (move I) and splitting or merging a face
//! along an edge (move II). `glue` composes two surfaces along matching
//! out/in boundary circles; the leftmost identified circle becomes an
//! internal edge and the remaining ones become cut edges.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    Fwd,
    Rev,
}

impl Dir {
    pub fn flip(self) -> Self {
        match self {
            Dir::Fwd => Dir::Rev,
            Dir::Rev => Dir::Fwd,
        }
    }
}

/// One step of a face boundary word: an edge traversed with or against its
/// orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgeRef {
    pub edge: usize,
    pub dir: Dir,
}

impl EdgeRef {
    pub fn fwd(edge: usize) -> Self {
        EdgeRef {
            edge,
            dir: Dir::Fwd,
        }
    }

    pub fn rev(edge: usize) -> Self {
        EdgeRef {
            edge,
            dir: Dir::Rev,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    /// In-boundary circle, slot `k`, drawn along the bottom edge.
    In(usize),
    /// Out-boundary circle, slot `k`, drawn along the top edge.
    Out(usize),
    /// A 1-cell the surface was cut along; appears twice in face words.
    Cut,
    /// An interior 1-cell separating 2-cells of the planar region.
    Internal,
}

impl EdgeKind {
    pub fn is_boundary(&self) -> bool {
        matches!(self, EdgeKind::In(_) | EdgeKind::Out(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: usize,
    pub kind: EdgeKind,
    pub tail: usize,
    pub head: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    /// Cyclic boundary word, anticlockwise.
    pub word: Vec<EdgeRef>,
    /// Index into `word`; reading starts here.
    pub basepoint: usize,
}

/// Cell counts of a validated surface.
///
/// `internal_vertices` and `internal_edges` are the `v` and `e` entering the
/// invariant normalization; boundary circles contribute `in_circles` (n) and
/// `out_circles` (m). The Euler characteristic counts identified cells once.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub internal_vertices: usize,
    pub internal_edges: usize,
    pub in_circles: usize,
    pub out_circles: usize,
    pub euler_characteristic: i64,
}

#[derive(Clone, Debug)]
pub struct SurfaceComplex {
    name: String,
    vertices: BTreeSet<usize>,
    edges: Vec<Edge>,
    faces: Vec<Face>,
    n_in: usize,
    n_out: usize,
}

#[derive(Clone)]
struct CanonState {
    used: Vec<bool>,
    edge_key: BTreeMap<usize, i64>,
    next_key: i64,
    stream: Vec<i64>,
}

impl SurfaceComplex {
    /// Builds and validates a surface.
    pub fn new(
        name: &str,
        vertices: BTreeSet<usize>,
        edges: Vec<Edge>,
        faces: Vec<Face>,
        n_in: usize,
        n_out: usize,
    ) -> Result<Self> {
        let s = SurfaceComplex {
            name: name.to_string(),
            vertices,
            edges,
            faces,
            n_in,
            n_out,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertices(&self) -> &BTreeSet<usize> {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn edge(&self, id: usize) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    pub fn face(&self, id: usize) -> Option<&Face> {
        self.faces.iter().find(|f| f.id == id)
    }

    /// Start vertex of a word step.
    pub fn ref_start(&self, r: EdgeRef) -> usize {
        let e = self.edge(r.edge).expect("edge exists");
        match r.dir {
            Dir::Fwd => e.tail,
            Dir::Rev => e.head,
        }
    }

    /// End vertex of a word step.
    pub fn ref_end(&self, r: EdgeRef) -> usize {
        let e = self.edge(r.edge).expect("edge exists");
        match r.dir {
            Dir::Fwd => e.head,
            Dir::Rev => e.tail,
        }
    }

    /// The vertex sitting at position `pos` of a face word (the start of the
    /// step at that position).
    pub fn corner_vertex(&self, face_id: usize, pos: usize) -> Result<usize> {
        let f = self
            .face(face_id)
            .ok_or_else(|| Error::Parse(format!("no face {face_id}")))?;
        if pos >= f.word.len() {
            return Err(Error::Parse(format!(
                "position {pos} out of range for a word of length {}",
                f.word.len()
            )));
        }
        Ok(self.ref_start(f.word[pos]))
    }

    /// Checks every structural condition and reports the cell counts.
    pub fn validate(&self) -> Result<SurfaceReport> {
        let fail = |reason: String| Err(Error::InvalidComplex(reason));

        let mut ids = BTreeSet::new();
        for e in &self.edges {
            if !ids.insert(e.id) {
                return fail(format!("duplicate edge id {}", e.id));
            }
            if !self.vertices.contains(&e.tail) || !self.vertices.contains(&e.head) {
                return fail(format!(
                    "edge {} has an endpoint outside the vertex set",
                    e.id
                ));
            }
            if e.kind.is_boundary() && e.tail != e.head {
                return fail(format!(
                    "boundary edge {} must be a loop at its single 0-cell",
                    e.id
                ));
            }
        }

        for (want, n, mk) in [
            (self.n_in, "in", EdgeKind::In as fn(usize) -> EdgeKind),
            (self.n_out, "out", EdgeKind::Out as fn(usize) -> EdgeKind),
        ] {
            for slot in 0..want {
                let count = self.edges.iter().filter(|e| e.kind == mk(slot)).count();
                if count != 1 {
                    return fail(format!("{n} slot {slot} is used by {count} edges, not 1"));
                }
            }
            let extra = self
                .edges
                .iter()
                .filter(|e| match e.kind {
                    EdgeKind::In(s) => n == "in" && s >= want,
                    EdgeKind::Out(s) => n == "out" && s >= want,
                    _ => false,
                })
                .count();
            if extra > 0 {
                return fail(format!("{n} slots beyond the declared count"));
            }
        }

        let mut fids = BTreeSet::new();
        let mut occurrences: BTreeMap<usize, Vec<Dir>> = BTreeMap::new();
        for f in &self.faces {
            if !fids.insert(f.id) {
                return fail(format!("duplicate face id {}", f.id));
            }
            if f.word.is_empty() {
                return fail(format!("face {} has an empty boundary word", f.id));
            }
            if f.basepoint >= f.word.len() {
                return fail(format!("face {} basepoint out of range", f.id));
            }
            for r in &f.word {
                if self.edge(r.edge).is_none() {
                    return fail(format!("face {} refers to missing edge {}", f.id, r.edge));
                }
                occurrences.entry(r.edge).or_default().push(r.dir);
            }
            let len = f.word.len();
            for i in 0..len {
                if self.ref_end(f.word[i]) != self.ref_start(f.word[(i + 1) % len]) {
                    return fail(format!(
                        "face {} word is not head-to-tail consistent at position {i}",
                        f.id
                    ));
                }
            }
        }

        for e in &self.edges {
            let occ = occurrences.get(&e.id).map(Vec::as_slice).unwrap_or(&[]);
            match e.kind {
                EdgeKind::In(_) => {
                    if occ != [Dir::Fwd] {
                        return fail(format!(
                            "in-boundary edge {} must appear exactly once, forward",
                            e.id
                        ));
                    }
                }
                EdgeKind::Out(_) => {
                    if occ != [Dir::Rev] {
                        return fail(format!(
                            "out-boundary edge {} must appear exactly once, reversed",
                            e.id
                        ));
                    }
                }
                EdgeKind::Cut | EdgeKind::Internal => {
                    let fwd = occ.iter().filter(|d| **d == Dir::Fwd).count();
                    let rev = occ.len() - fwd;
                    if fwd != 1 || rev != 1 {
                        return fail(format!(
                            "edge {} must appear once in each direction (orientability), found {fwd} forward / {rev} reversed",
                            e.id
                        ));
                    }
                }
            }
        }

        let mut used = BTreeSet::new();
        for e in &self.edges {
            used.insert(e.tail);
            used.insert(e.head);
        }
        if used != self.vertices {
            return fail("isolated vertex".into());
        }

        let boundary_vertices: BTreeSet<usize> = self
            .edges
            .iter()
            .filter(|e| e.kind.is_boundary())
            .map(|e| e.tail)
            .collect();

        Ok(SurfaceReport {
            vertices: self.vertices.len(),
            edges: self.edges.len(),
            faces: self.faces.len(),
            internal_vertices: self.vertices.len() - boundary_vertices.len(),
            internal_edges: self.edges.iter().filter(|e| !e.kind.is_boundary()).count(),
            in_circles: self.n_in,
            out_circles: self.n_out,
            euler_characteristic: self.vertices.len() as i64 - self.edges.len() as i64
                + self.faces.len() as i64,
        })
    }

    // ----- the standard catalogue -----

    /// One 2-cell with word `a · a⁻¹` along a single cut edge.
    pub fn sphere() -> Self {
        Self::new(
            "sphere",
            [0, 1].into(),
            vec![Edge {
                id: 0,
                kind: EdgeKind::Cut,
                tail: 0,
                head: 1,
            }],
            vec![Face {
                id: 0,
                word: vec![EdgeRef::fwd(0), EdgeRef::rev(0)],
                basepoint: 0,
            }],
            0,
            0,
        )
        .expect("sphere is valid")
    }

    /// One 2-cell with word `g · k · k⁻¹`: boundary circle at the bottom.
    pub fn disk_in() -> Self {
        Self::new(
            "disk_in",
            [0, 1].into(),
            vec![
                Edge {
                    id: 0,
                    kind: EdgeKind::In(0),
                    tail: 0,
                    head: 0,
                },
                Edge {
                    id: 1,
                    kind: EdgeKind::Cut,
                    tail: 0,
                    head: 1,
                },
            ],
            vec![Face {
                id: 0,
                word: vec![EdgeRef::fwd(0), EdgeRef::fwd(1), EdgeRef::rev(1)],
                basepoint: 0,
            }],
            1,
            0,
        )
        .expect("disk_in is valid")
    }

    /// One 2-cell with word `k · g⁻¹ · k⁻¹`: boundary circle at the top.
    pub fn disk_out() -> Self {
        Self::new(
            "disk_out",
            [0, 1].into(),
            vec![
                Edge {
                    id: 0,
                    kind: EdgeKind::Out(0),
                    tail: 1,
                    head: 1,
                },
                Edge {
                    id: 1,
                    kind: EdgeKind::Cut,
                    tail: 0,
                    head: 1,
                },
            ],
            vec![Face {
                id: 0,
                word: vec![EdgeRef::fwd(1), EdgeRef::rev(0), EdgeRef::rev(1)],
                basepoint: 0,
            }],
            0,
            1,
        )
        .expect("disk_out is valid")
    }

    /// One 2-cell with word `g₁ · k · g₂⁻¹ · k⁻¹`: a bottom and a top circle
    /// joined by one cut edge.
    pub fn cylinder() -> Self {
        Self::new(
            "cylinder",
            [0, 1].into(),
            vec![
                Edge {
                    id: 0,
                    kind: EdgeKind::In(0),
                    tail: 0,
                    head: 0,
                },
                Edge {
                    id: 1,
                    kind: EdgeKind::Out(0),
                    tail: 1,
                    head: 1,
                },
                Edge {
                    id: 2,
                    kind: EdgeKind::Cut,
                    tail: 0,
                    head: 1,
                },
            ],
            vec![Face {
                id: 0,
                word: vec![
                    EdgeRef::fwd(0),
                    EdgeRef::fwd(2),
                    EdgeRef::rev(1),
                    EdgeRef::rev(2),
                ],
                basepoint: 0,
            }],
            1,
            1,
        )
        .expect("cylinder is valid")
    }

    /// One 2-cell with word `j₁ · j₂ · j₁⁻¹ · j₂⁻¹` on two cut loops at a
    /// single vertex.
    pub fn torus() -> Self {
        Self::new(
            "torus",
            [0].into(),
            vec![
                Edge {
                    id: 0,
                    kind: EdgeKind::Cut,
                    tail: 0,
                    head: 0,
                },
                Edge {
                    id: 1,
                    kind: EdgeKind::Cut,
                    tail: 0,
                    head: 0,
                },
            ],
            vec![Face {
                id: 0,
                word: vec![
                    EdgeRef::fwd(0),
                    EdgeRef::fwd(1),
                    EdgeRef::rev(0),
                    EdgeRef::rev(1),
                ],
                basepoint: 0,
            }],
            0,
            0,
        )
        .expect("torus is valid")
    }

    /// Pair of pants with one in-circle and two out-circles: a single
    /// 2-cell on vertices `a` (in), `b` (out 0), `c` (out 1) with cut edges
    /// `c1: a→b`, `c2: a→c` and word `g · c2 · o2⁻¹ · c2⁻¹ · c1 · o1⁻¹ · c1⁻¹`.
    pub fn pants_out() -> Self {
        Self::new(
            "pants_out",
            [0, 1, 2].into(),
            vec![
                Edge {
                    id: 0,
                    kind: EdgeKind::In(0),
                    tail: 0,
                    head: 0,
                },
                Edge {
                    id: 1,
                    kind: EdgeKind::Out(0),
                    tail: 1,
                    head: 1,
                },
                Edge {
                    id: 2,
                    kind: EdgeKind::Out(1),
                    tail: 2,
                    head: 2,
                },
                Edge {
                    id: 3,
                    kind: EdgeKind::Cut,
                    tail: 0,
                    head: 1,
                },
                Edge {
                    id: 4,
                    kind: EdgeKind::Cut,
                    tail: 0,
                    head: 2,
                },
            ],
            vec![Face {
                id: 0,
                word: vec![
                    EdgeRef::fwd(0),
                    EdgeRef::fwd(4),
                    EdgeRef::rev(2),
                    EdgeRef::rev(4),
                    EdgeRef::fwd(3),
                    EdgeRef::rev(1),
                    EdgeRef::rev(3),
                ],
                basepoint: 0,
            }],
            1,
            2,
        )
        .expect("pants_out is valid")
    }

    /// Mirror image of [`Self::pants_out`]: two in-circles and one
    /// out-circle.
    pub fn pants_in() -> Self {
        Self::new(
            "pants_in",
            [0, 1, 2].into(),
            vec![
                Edge {
                    id: 0,
                    kind: EdgeKind::In(0),
                    tail: 1,
                    head: 1,
                },
                Edge {
                    id: 1,
                    kind: EdgeKind::In(1),
                    tail: 2,
                    head: 2,
                },
                Edge {
                    id: 2,
                    kind: EdgeKind::Out(0),
                    tail: 0,
                    head: 0,
                },
                Edge {
                    id: 3,
                    kind: EdgeKind::Cut,
                    tail: 0,
                    head: 1,
                },
                Edge {
                    id: 4,
                    kind: EdgeKind::Cut,
                    tail: 0,
                    head: 2,
                },
            ],
            vec![Face {
                id: 0,
                word: vec![
                    EdgeRef::fwd(0),
                    EdgeRef::rev(3),
                    EdgeRef::fwd(4),
                    EdgeRef::fwd(1),
                    EdgeRef::rev(4),
                    EdgeRef::rev(2),
                    EdgeRef::fwd(3),
                ],
                basepoint: 0,
            }],
            2,
            1,
        )
        .expect("pants_in is valid")
    }

    fn next_vertex_id(&self) -> usize {
        self.vertices.iter().next_back().map_or(0, |m| m + 1)
    }

    fn next_edge_id(&self) -> usize {
        self.edges.iter().map(|e| e.id + 1).max().unwrap_or(0)
    }

    fn next_face_id(&self) -> usize {
        self.faces.iter().map(|f| f.id + 1).max().unwrap_or(0)
    }

    // ----- moves -----

    /// Move I, splitting: introduces a vertex into a non-boundary edge,
    /// dividing it into two. A cut edge has both of its word occurrences
    /// rewritten at once.
    pub fn move_i_split(&self, edge_id: usize) -> Result<Self> {
        let e = self
            .edge(edge_id)
            .ok_or_else(|| Error::Parse(format!("no edge {edge_id}")))?
            .clone();
        if e.kind.is_boundary() {
            return Err(Error::NotInternal(edge_id));
        }
        let w = self.next_vertex_id();
        let id1 = self.next_edge_id();
        let id2 = id1 + 1;
        let mut vertices = self.vertices.clone();
        vertices.insert(w);
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|x| x.id != edge_id)
            .cloned()
            .collect();
        edges.push(Edge {
            id: id1,
            kind: e.kind,
            tail: e.tail,
            head: w,
        });
        edges.push(Edge {
            id: id2,
            kind: e.kind,
            tail: w,
            head: e.head,
        });
        let faces = self
            .faces
            .iter()
            .map(|f| {
                let mut word = Vec::with_capacity(f.word.len() + 2);
                let mut basepoint = f.basepoint;
                for (i, r) in f.word.iter().enumerate() {
                    if r.edge == edge_id {
                        if i < f.basepoint {
                            basepoint += 1;
                        }
                        match r.dir {
                            Dir::Fwd => {
                                word.push(EdgeRef::fwd(id1));
                                word.push(EdgeRef::fwd(id2));
                            }
                            Dir::Rev => {
                                word.push(EdgeRef::rev(id2));
                                word.push(EdgeRef::rev(id1));
                            }
                        }
                    } else {
                        word.push(*r);
                    }
                }
                Face {
                    id: f.id,
                    word,
                    basepoint,
                }
            })
            .collect();
        Self::new(&self.name, vertices, edges, faces, self.n_in, self.n_out)
    }

    /// Internal vertices of degree two whose incident edges are distinct and
    /// of the same kind: exactly the vertices move I can remove.
    pub fn mergeable_vertices(&self) -> Vec<usize> {
        self.vertices
            .iter()
            .copied()
            .filter(|&v| self.merge_candidates(v).is_ok())
            .collect()
    }

    fn merge_candidates(&self, v: usize) -> Result<(Edge, Edge)> {
        if !self.vertices.contains(&v) {
            return Err(Error::Parse(format!("no vertex {v}")));
        }
        if self
            .edges
            .iter()
            .any(|e| e.kind.is_boundary() && e.tail == v)
        {
            return Err(Error::NotInternal(v));
        }
        let mut ends = Vec::new();
        for e in &self.edges {
            if e.tail == v {
                ends.push(e.id);
            }
            if e.head == v {
                ends.push(e.id);
            }
        }
        if ends.len() != 2 {
            return Err(Error::NotMergeable(format!(
                "vertex {v} has {} incident edge-ends, need exactly 2",
                ends.len()
            )));
        }
        if ends[0] == ends[1] {
            return Err(Error::NotMergeable(format!(
                "both edge-ends at vertex {v} belong to edge {}",
                ends[0]
            )));
        }
        let a = self.edge(ends[0]).unwrap().clone();
        let b = self.edge(ends[1]).unwrap().clone();
        if a.kind != b.kind {
            return Err(Error::NotMergeable(format!(
                "edges {} and {} at vertex {v} have different kinds",
                a.id, b.id
            )));
        }
        Ok((a, b))
    }

    /// Move I, merging: removes a vertex that separates two edges, combining
    /// them into one. Inverse of [`Self::move_i_split`].
    pub fn move_i_merge(&self, vertex: usize) -> Result<Self> {
        let (a, b) = self.merge_candidates(vertex)?;
        let merged_id = self.next_edge_id();
        // Traversal through the vertex enters along `a` and leaves along `b`.
        let tail = if a.head == vertex { a.tail } else { a.head };
        let head = if b.tail == vertex { b.head } else { b.tail };

        let enters = |r: &EdgeRef| (r.edge == a.id || r.edge == b.id) && self.ref_end(*r) == vertex;
        let leaves =
            |r: &EdgeRef| (r.edge == a.id || r.edge == b.id) && self.ref_start(*r) == vertex;

        let mut faces = Vec::with_capacity(self.faces.len());
        for f in &self.faces {
            let len = f.word.len();
            // Rotate once if a pattern pair wraps around the word boundary.
            let (word, bp): (Vec<EdgeRef>, usize) =
                if len >= 2 && enters(&f.word[len - 1]) && leaves(&f.word[0]) {
                    let mut w: Vec<EdgeRef> = f.word[1..].to_vec();
                    w.push(f.word[0]);
                    (w, (f.basepoint + len - 1) % len)
                } else {
                    (f.word.clone(), f.basepoint)
                };

            let mut new_word = Vec::with_capacity(len);
            let mut map = vec![0usize; len];
            let mut i = 0;
            while i < len {
                let r = word[i];
                if enters(&r) {
                    if i + 1 >= len || !leaves(&word[i + 1]) {
                        return Err(Error::NotMergeable(format!(
                            "face {} traverses vertex {vertex} inconsistently",
                            f.id
                        )));
                    }
                    let dir = if r.edge == a.id { Dir::Fwd } else { Dir::Rev };
                    map[i] = new_word.len();
                    map[i + 1] = new_word.len();
                    new_word.push(EdgeRef {
                        edge: merged_id,
                        dir,
                    });
                    i += 2;
                } else if leaves(&r) {
                    return Err(Error::NotMergeable(format!(
                        "face {} leaves vertex {vertex} without entering it",
                        f.id
                    )));
                } else {
                    map[i] = new_word.len();
                    new_word.push(r);
                    i += 1;
                }
            }
            faces.push(Face {
                id: f.id,
                basepoint: map[bp],
                word: new_word,
            });
        }

        let mut vertices = self.vertices.clone();
        vertices.remove(&vertex);
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| e.id != a.id && e.id != b.id)
            .cloned()
            .collect();
        edges.push(Edge {
            id: merged_id,
            kind: a.kind,
            tail,
            head,
        });
        Self::new(&self.name, vertices, edges, faces, self.n_in, self.n_out)
    }

    /// Move II, splitting: inserts an internal edge between two corners of a
    /// face, dividing it into two faces whose words concatenate to the
    /// original.
    pub fn move_ii_split(&self, face_id: usize, pos_a: usize, pos_b: usize) -> Result<Self> {
        let f = self
            .face(face_id)
            .ok_or_else(|| Error::Parse(format!("no face {face_id}")))?
            .clone();
        let len = f.word.len();
        if pos_a >= len || pos_b >= len {
            return Err(Error::Parse(format!(
                "positions ({pos_a},{pos_b}) out of range for a word of length {len}"
            )));
        }
        if pos_a == pos_b {
            return Err(Error::SamePosition);
        }
        let (a, b) = if pos_a < pos_b {
            (pos_a, pos_b)
        } else {
            (pos_b, pos_a)
        };
        let va = self.ref_start(f.word[a]);
        let vb = self.ref_start(f.word[b]);
        let x = self.next_edge_id();
        let f1 = self.next_face_id();
        let f2 = f1 + 1;

        let mut edges = self.edges.clone();
        edges.push(Edge {
            id: x,
            kind: EdgeKind::Internal,
            tail: va,
            head: vb,
        });

        let mut word1: Vec<EdgeRef> = f.word[a..b].to_vec();
        word1.push(EdgeRef::rev(x));
        let mut word2: Vec<EdgeRef> = f.word[b..].to_vec();
        word2.extend_from_slice(&f.word[..a]);
        word2.push(EdgeRef::fwd(x));

        let mut faces: Vec<Face> = self
            .faces
            .iter()
            .filter(|g| g.id != face_id)
            .cloned()
            .collect();
        faces.push(Face {
            id: f1,
            word: word1,
            basepoint: 0,
        });
        faces.push(Face {
            id: f2,
            word: word2,
            basepoint: 0,
        });
        Self::new(
            &self.name,
            self.vertices.clone(),
            edges,
            faces,
            self.n_in,
            self.n_out,
        )
    }

    /// Internal edges whose two word occurrences lie in two distinct faces:
    /// exactly the edges move II can remove.
    pub fn mergeable_edges(&self) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|e| e.kind == EdgeKind::Internal)
            .filter(|e| {
                let occ = self.find_occurrences(e.id);
                occ.len() == 2 && occ[0].0 != occ[1].0
            })
            .map(|e| e.id)
            .collect()
    }

    /// All `(face_index, position, dir)` occurrences of an edge.
    fn find_occurrences(&self, edge_id: usize) -> Vec<(usize, usize, Dir)> {
        let mut occ = Vec::new();
        for (fi, f) in self.faces.iter().enumerate() {
            for (p, r) in f.word.iter().enumerate() {
                if r.edge == edge_id {
                    occ.push((fi, p, r.dir));
                }
            }
        }
        occ
    }

    /// Move II, merging: removes an internal edge separating two distinct
    /// faces, combining them into one. Inverse of [`Self::move_ii_split`].
    pub fn move_ii_merge(&self, edge_id: usize) -> Result<Self> {
        let e = self
            .edge(edge_id)
            .ok_or_else(|| Error::Parse(format!("no edge {edge_id}")))?;
        if e.kind != EdgeKind::Internal {
            return Err(Error::NotInternal(edge_id));
        }
        let occ = self.find_occurrences(edge_id);
        debug_assert_eq!(occ.len(), 2);
        if occ[0].0 == occ[1].0 {
            return Err(Error::NotSeparating(edge_id));
        }
        let (fi_fwd, p_fwd, _) = *occ.iter().find(|o| o.2 == Dir::Fwd).expect("one forward");
        let (fi_rev, p_rev, _) = *occ.iter().find(|o| o.2 == Dir::Rev).expect("one reversed");
        let f1 = &self.faces[fi_fwd];
        let f2 = &self.faces[fi_rev];
        let (l1, l2) = (f1.word.len(), f2.word.len());
        if l1 + l2 == 2 {
            return Err(Error::NotMergeable(
                "merging two one-step faces would leave an empty boundary word".into(),
            ));
        }

        // Rotate each word so the shared edge sits last, then drop it.
        let rot = |word: &[EdgeRef], p: usize| -> Vec<EdgeRef> {
            let len = word.len();
            (0..len - 1).map(|i| word[(i + p + 1) % len]).collect()
        };
        let mut word = rot(&f1.word, p_fwd);
        let part1 = word.len();
        word.extend(rot(&f2.word, p_rev));
        // f1's basepoint corner survives; map it through the rotation.
        let mut basepoint = (f1.basepoint + l1 - (p_fwd + 1)) % l1;
        if basepoint >= word.len() {
            basepoint = if part1 < word.len() { part1 } else { 0 };
        }

        let merged = self.next_face_id();
        let mut faces: Vec<Face> = self
            .faces
            .iter()
            .filter(|g| g.id != f1.id && g.id != f2.id)
            .cloned()
            .collect();
        faces.push(Face {
            id: merged,
            word,
            basepoint,
        });
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|x| x.id != edge_id)
            .cloned()
            .collect();
        Self::new(
            &self.name,
            self.vertices.clone(),
            edges,
            faces,
            self.n_in,
            self.n_out,
        )
    }

    /// Reverses the orientation of a non-boundary edge, updating both of its
    /// word occurrences.
    pub fn flip_edge(&self, edge_id: usize) -> Result<Self> {
        let e = self
            .edge(edge_id)
            .ok_or_else(|| Error::Parse(format!("no edge {edge_id}")))?;
        if e.kind.is_boundary() {
            return Err(Error::NotInternal(edge_id));
        }
        let edges = self
            .edges
            .iter()
            .map(|x| {
                if x.id == edge_id {
                    Edge {
                        id: x.id,
                        kind: x.kind,
                        tail: x.head,
                        head: x.tail,
                    }
                } else {
                    x.clone()
                }
            })
            .collect();
        let faces = self
            .faces
            .iter()
            .map(|f| Face {
                id: f.id,
                basepoint: f.basepoint,
                word: f
                    .word
                    .iter()
                    .map(|r| {
                        if r.edge == edge_id {
                            EdgeRef {
                                edge: r.edge,
                                dir: r.dir.flip(),
                            }
                        } else {
                            *r
                        }
                    })
                    .collect(),
            })
            .collect();
        Self::new(
            &self.name,
            self.vertices.clone(),
            edges,
            faces,
            self.n_in,
            self.n_out,
        )
    }

    /// Returns the same surface with one face's basepoint moved.
    pub fn with_basepoint(&self, face_id: usize, pos: usize) -> Result<Self> {
        let f = self
            .face(face_id)
            .ok_or_else(|| Error::Parse(format!("no face {face_id}")))?;
        if pos >= f.word.len() {
            return Err(Error::Parse(format!(
                "basepoint {pos} out of range for a word of length {}",
                f.word.len()
            )));
        }
        let faces = self
            .faces
            .iter()
            .map(|g| {
                let mut g = g.clone();
                if g.id == face_id {
                    g.basepoint = pos;
                }
                g
            })
            .collect();
        Self::new(
            &self.name,
            self.vertices.clone(),
            self.edges.clone(),
            faces,
            self.n_in,
            self.n_out,
        )
    }

    /// Glues `second` on top of `first`, identifying out slot `k` of `first`
    /// with in slot `k` of `second`. The leftmost identified circle becomes
    /// an internal edge of the composite; the remaining ones become cut
    /// edges.
    pub fn glue(first: &SurfaceComplex, second: &SurfaceComplex) -> Result<SurfaceComplex> {
        let m = first.n_out;
        if m == 0 || m != second.n_in {
            return Err(Error::BoundaryMismatch {
                out_of_first: first.n_out,
                in_of_second: second.n_in,
            });
        }
        let voff = first.next_vertex_id();
        let eoff = first.next_edge_id();
        let foff = first.next_face_id();

        let mut vertices = first.vertices.clone();
        vertices.extend(second.vertices.iter().map(|v| v + voff));

        // vertex / edge substitutions induced by the identifications
        let mut vmap: BTreeMap<usize, usize> = BTreeMap::new();
        let mut emap: BTreeMap<usize, usize> = BTreeMap::new();
        let mut drop_edges: BTreeSet<usize> = BTreeSet::new();
        let mut first_edges = first.edges.clone();
        for k in 0..m {
            let o = first_edges
                .iter_mut()
                .find(|e| e.kind == EdgeKind::Out(k))
                .expect("validated out slot");
            let i = second
                .edges
                .iter()
                .find(|e| e.kind == EdgeKind::In(k))
                .expect("validated in slot");
            vmap.insert(i.tail + voff, o.tail);
            emap.insert(i.id + eoff, o.id);
            drop_edges.insert(i.id + eoff);
            o.kind = if k == 0 {
                EdgeKind::Internal
            } else {
                EdgeKind::Cut
            };
        }
        for v in vmap.keys() {
            vertices.remove(v);
        }

        let subst_v = |v: usize| *vmap.get(&v).unwrap_or(&v);
        let mut edges = first_edges;
        for e in &second.edges {
            let id = e.id + eoff;
            if drop_edges.contains(&id) {
                continue;
            }
            edges.push(Edge {
                id,
                kind: e.kind,
                tail: subst_v(e.tail + voff),
                head: subst_v(e.head + voff),
            });
        }

        let mut faces = first.faces.clone();
        for f in &second.faces {
            faces.push(Face {
                id: f.id + foff,
                basepoint: f.basepoint,
                word: f
                    .word
                    .iter()
                    .map(|r| {
                        let id = r.edge + eoff;
                        EdgeRef {
                            edge: *emap.get(&id).unwrap_or(&id),
                            dir: r.dir,
                        }
                    })
                    .collect(),
            });
        }

        SurfaceComplex::new(
            &format!("{}∘{}", second.name, first.name),
            vertices,
            edges,
            faces,
            first.n_in,
            second.n_out,
        )
    }

    /// Applies bijective relabellings to vertex, edge and face ids. The
    /// result presents the same surface; useful for testing canonical-form
    /// comparisons.
    pub fn relabelled(
        &self,
        vmap: impl Fn(usize) -> usize,
        emap: impl Fn(usize) -> usize,
        fmap: impl Fn(usize) -> usize,
    ) -> Result<Self> {
        let vertices = self.vertices.iter().map(|&v| vmap(v)).collect();
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                id: emap(e.id),
                kind: e.kind,
                tail: vmap(e.tail),
                head: vmap(e.head),
            })
            .collect();
        let faces = self
            .faces
            .iter()
            .map(|f| Face {
                id: fmap(f.id),
                basepoint: f.basepoint,
                word: f
                    .word
                    .iter()
                    .map(|r| EdgeRef {
                        edge: emap(r.edge),
                        dir: r.dir,
                    })
                    .collect(),
            })
            .collect();
        Self::new(&self.name, vertices, edges, faces, self.n_in, self.n_out)
    }

    /// A canonical encoding of the surface, equal for any two presentations
    /// that differ only by relabelling of cells (and by basepoints, which do
    /// not affect any invariant).
    ///
    /// The encoding lists face words with edges renamed in first-use order,
    /// minimized lexicographically over the order of faces and the rotation
    /// of each word, followed by the edge endpoint table with vertices
    /// renamed in first-use order. Boundary edges keep their slot numbers:
    /// slots are semantic, not labels.
    pub fn canonical_key(&self) -> Vec<i64> {
        let state = CanonState {
            used: vec![false; self.faces.len()],
            edge_key: BTreeMap::new(),
            next_key: 0,
            stream: vec![
                self.n_in as i64,
                self.n_out as i64,
                self.faces.len() as i64,
                self.edges.len() as i64,
                self.vertices.len() as i64,
            ],
        };
        let mut best = None;
        let mut budget = 1_000_000usize;
        self.canon_rec(&state, &mut best, &mut budget);
        best.expect("at least one encoding")
    }

    fn canon_face_block(&self, s: &mut CanonState, face: &Face, rot: usize) {
        let len = face.word.len();
        s.stream.push(len as i64);
        for i in 0..len {
            let r = face.word[(i + rot) % len];
            let kind = self.edge(r.edge).expect("edge exists").kind;
            let (code, num) = match kind {
                EdgeKind::In(slot) => (0, slot as i64),
                EdgeKind::Out(slot) => (1, slot as i64),
                EdgeKind::Cut | EdgeKind::Internal => {
                    let key = match s.edge_key.get(&r.edge) {
                        Some(k) => *k,
                        None => {
                            s.next_key += 1;
                            s.edge_key.insert(r.edge, s.next_key);
                            s.next_key
                        }
                    };
                    (if kind == EdgeKind::Cut { 2 } else { 3 }, key)
                }
            };
            s.stream.push(code);
            s.stream.push(num);
            s.stream.push(if r.dir == Dir::Fwd { 0 } else { 1 });
        }
    }

    /// Appends the edge endpoint table, with vertices renamed in first-use
    /// order over a canonical edge ordering.
    fn canon_finish(&self, s: &CanonState) -> Vec<i64> {
        let mut stream = s.stream.clone();
        let mut ordered: Vec<&Edge> = Vec::new();
        for slot in 0..self.n_in {
            ordered.push(
                self.edges
                    .iter()
                    .find(|e| e.kind == EdgeKind::In(slot))
                    .expect("validated in slot"),
            );
        }
        for slot in 0..self.n_out {
            ordered.push(
                self.edges
                    .iter()
                    .find(|e| e.kind == EdgeKind::Out(slot))
                    .expect("validated out slot"),
            );
        }
        let mut keyed: Vec<(i64, &Edge)> = self
            .edges
            .iter()
            .filter(|e| !e.kind.is_boundary())
            .map(|e| (s.edge_key[&e.id], e))
            .collect();
        keyed.sort_by_key(|(k, _)| *k);
        ordered.extend(keyed.into_iter().map(|(_, e)| e));

        let mut vkey: BTreeMap<usize, i64> = BTreeMap::new();
        let mut next_v = 0i64;
        for e in ordered {
            for v in [e.tail, e.head] {
                let key = match vkey.get(&v) {
                    Some(k) => *k,
                    None => {
                        next_v += 1;
                        vkey.insert(v, next_v);
                        next_v
                    }
                };
                stream.push(key);
            }
        }
        stream
    }

    fn canon_rec(&self, state: &CanonState, best: &mut Option<Vec<i64>>, budget: &mut usize) {
        assert!(*budget > 0, "canonical form search budget exhausted");
        *budget -= 1;
        if state.used.iter().all(|&u| u) {
            let full = self.canon_finish(state);
            if best.as_ref().is_none_or(|b| full < *b) {
                *best = Some(full);
            }
            return;
        }
        // all (face, rotation) continuations, cheapest block first
        let mut candidates: Vec<(Vec<i64>, CanonState)> = Vec::new();
        for (fi, f) in self.faces.iter().enumerate() {
            if state.used[fi] {
                continue;
            }
            for rot in 0..f.word.len() {
                let mut next = state.clone();
                next.used[fi] = true;
                self.canon_face_block(&mut next, f, rot);
                let block = next.stream[state.stream.len()..].to_vec();
                candidates.push((block, next));
            }
        }
        candidates.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.used.cmp(&b.1.used)));
        candidates
            .dedup_by(|a, b| a.0 == b.0 && a.1.used == b.1.used && a.1.edge_key == b.1.edge_key);
        for (_, next) in candidates {
            if let Some(b) = best.as_ref() {
                let n = next.stream.len().min(b.len());
                if next.stream[..n] > b[..n] {
                    continue;
                }
            }
            self.canon_rec(&next, best, budget);
        }
    }

    /// Equality of presentations up to relabelling of cells and basepoints.
    pub fn same_up_to_relabelling(&self, other: &SurfaceComplex) -> bool {
        self.canonical_key() == other.canonical_key()
    }
}
