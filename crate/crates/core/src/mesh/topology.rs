use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{Side, TriMesh};

fn edge_key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Number of triangles incident to each undirected edge.
pub fn edge_incidence(triangles: &[[usize; 3]]) -> BTreeMap<(usize, usize), usize> {
    let mut map = BTreeMap::new();
    for tri in triangles {
        for k in 0..3 {
            *map.entry(edge_key(tri[k], tri[(k + 1) % 3])).or_default() += 1;
        }
    }
    map
}

/// Edges used by exactly one triangle.
pub fn boundary_edges(triangles: &[[usize; 3]]) -> Vec<(usize, usize)> {
    edge_incidence(triangles).into_iter().filter(|&(_, c)| c == 1).map(|(e, _)| e).collect()
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Label triangles connected through shared edges. When sides are given,
/// triangles on opposite sides are never joined.
pub(crate) fn label_components(triangles: &[[usize; 3]], sides: Option<&[Side]>) -> (Vec<usize>, usize) {
    let mut uf = UnionFind::new(triangles.len());
    let mut first: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (t, tri) in triangles.iter().enumerate() {
        for k in 0..3 {
            first.entry(edge_key(tri[k], tri[(k + 1) % 3])).or_default().push(t);
        }
    }
    for group in first.values() {
        for w in group.windows(2) {
            if sides.is_none_or(|s| s[w[0]] == s[w[1]]) {
                uf.union(w[0], w[1]);
            }
        }
    }
    let mut relabel = BTreeMap::new();
    let mut labels = Vec::with_capacity(triangles.len());
    for t in 0..triangles.len() {
        let root = uf.find(t);
        let next = relabel.len();
        labels.push(*relabel.entry(root).or_insert(next));
    }
    let count = relabel.len();
    (labels, count)
}

fn count_rings(triangles: &[[usize; 3]]) -> usize {
    let edges = boundary_edges(triangles);
    let verts: BTreeSet<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    let index: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut uf = UnionFind::new(verts.len());
    for (a, b) in edges {
        uf.union(index[&a], index[&b]);
    }
    (0..verts.len()).filter(|&i| uf.find(i) == i).count()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentTopology {
    pub id: usize,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler: i64,
    pub boundary_rings: usize,
    pub closed: bool,
}

impl ComponentTopology {
    fn from_triangles(id: usize, triangles: &[[usize; 3]]) -> Self {
        let vertices = triangles.iter().flatten().collect::<BTreeSet<_>>().len();
        let incidence = edge_incidence(triangles);
        let edges = incidence.len();
        let faces = triangles.len();
        let boundary_rings = count_rings(triangles);
        ComponentTopology {
            id,
            vertices,
            edges,
            faces,
            euler: vertices as i64 - edges as i64 + faces as i64,
            boundary_rings,
            closed: incidence.values().all(|&c| c == 2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopologyReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler: i64,
    pub boundary_edges: usize,
    pub boundary_rings: usize,
    pub components: Vec<ComponentTopology>,
}

impl TopologyReport {
    /// Report with components found through shared edges.
    pub fn new(mesh: &TriMesh) -> Self {
        let (labels, count) = label_components(mesh.triangles(), None);
        Self::with_labels(mesh, &labels, count)
    }

    /// Report with caller-supplied component labels in `0..count`.
    pub fn with_labels(mesh: &TriMesh, labels: &[usize], count: usize) -> Self {
        let tris = mesh.triangles();
        let mut groups = vec![Vec::new(); count];
        for (tri, &l) in tris.iter().zip(labels) {
            groups[l].push(*tri);
        }
        let components =
            groups.iter().enumerate().map(|(id, g)| ComponentTopology::from_triangles(id, g)).collect();
        let whole = ComponentTopology::from_triangles(0, tris);
        TopologyReport {
            vertices: mesh.vertex_count(),
            edges: whole.edges,
            faces: whole.faces,
            euler: mesh.vertex_count() as i64 - whole.edges as i64 + whole.faces as i64,
            boundary_edges: boundary_edges(tris).len(),
            boundary_rings: whole.boundary_rings,
            components,
        }
    }
}
