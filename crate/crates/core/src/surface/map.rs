use serde::Serialize;

use crate::diagram::{DartGraph, VirtualLinkDiagram};
use crate::unionfind::UnionFind;

/// Ribbon graph of a diagram: crossings are 4-valent vertices with the
/// rotation fixed by the crossing sign, edges are the arcs between passes.
///
/// `corner(x)` is the wedge between dart `x` and `sigma(x)`. Faces are the
/// orbits of `corner(x) -> corner(alpha(sigma(x)))`; leaving along `x`, the
/// face of `corner(x)` is on the left and that of `corner(sigma_inv(x))` on
/// the right.
#[derive(Clone, Debug)]
pub struct CombinatorialMap {
    graph: DartGraph,
    corner_face: Vec<usize>,
    faces: Vec<Vec<usize>>,
    vertex_piece: Vec<usize>,
    pieces: usize,
    free_spheres: usize,
}

#[derive(Serialize)]
pub struct MapDump {
    pub darts: usize,
    pub sigma_cycles: Vec<Vec<usize>>,
    pub alpha_pairs: Vec<(usize, usize)>,
    pub face_orbits: Vec<Vec<usize>>,
}

impl CombinatorialMap {
    pub fn new(d: &VirtualLinkDiagram) -> Self {
        Self::from_graph(DartGraph::new(d))
    }

    pub fn from_graph(graph: DartGraph) -> Self {
        let n = graph.num_darts();
        let mut corner_face = vec![usize::MAX; n];
        let mut faces = Vec::new();
        for start in 0..n {
            if corner_face[start] != usize::MAX {
                continue;
            }
            let mut orbit = Vec::new();
            let mut x = start;
            while corner_face[x] == usize::MAX {
                corner_face[x] = faces.len();
                orbit.push(x);
                x = graph.alpha(graph.sigma(x));
            }
            faces.push(orbit);
        }
        let v = graph.num_crossings();
        let mut uf = UnionFind::new(v);
        for x in 0..n {
            uf.union(x / 4, graph.alpha(x) / 4);
        }
        let mut label = vec![usize::MAX; v];
        let mut vertex_piece = vec![0; v];
        let mut pieces = 0;
        for i in 0..v {
            let r = uf.find(i);
            if label[r] == usize::MAX {
                label[r] = pieces;
                pieces += 1;
            }
            vertex_piece[i] = label[r];
        }
        let free_spheres = graph.free_loops();
        Self {
            graph,
            corner_face,
            faces,
            vertex_piece,
            pieces,
            free_spheres,
        }
    }

    pub fn graph(&self) -> &DartGraph {
        &self.graph
    }

    pub fn num_darts(&self) -> usize {
        self.graph.num_darts()
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.num_crossings()
    }

    pub fn num_edges(&self) -> usize {
        self.graph.num_darts() / 2
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn sigma(&self, x: usize) -> usize {
        self.graph.sigma(x)
    }

    pub fn sigma_inv(&self, x: usize) -> usize {
        self.graph.sigma_inv(x)
    }

    pub fn alpha(&self, x: usize) -> usize {
        self.graph.alpha(x)
    }

    pub fn vertex(x: usize) -> usize {
        x / 4
    }

    /// Edge index of the arc carrying dart `x`.
    pub fn edge(&self, x: usize) -> usize {
        x.min(self.alpha(x))
    }

    pub fn corner_face(&self, x: usize) -> usize {
        self.corner_face[x]
    }

    pub fn left_face(&self, x: usize) -> usize {
        self.corner_face[x]
    }

    pub fn right_face(&self, x: usize) -> usize {
        self.corner_face[self.sigma_inv(x)]
    }

    /// Connected pieces with at least one crossing.
    pub fn num_pieces(&self) -> usize {
        self.pieces
    }

    pub fn vertex_piece(&self, v: usize) -> usize {
        self.vertex_piece[v]
    }

    pub fn face_piece(&self, f: usize) -> usize {
        self.vertex_piece[self.faces[f][0] / 4]
    }

    /// Crossingless components, each drawn on its own sphere.
    pub fn free_spheres(&self) -> usize {
        self.free_spheres
    }

    /// `V - E + F` of the capped surface, one entry per piece.
    pub fn piece_euler_characteristics(&self) -> Vec<i64> {
        let mut chi = vec![0i64; self.pieces];
        for v in 0..self.num_vertices() {
            chi[self.vertex_piece[v]] += 1 - 2;
        }
        for f in 0..self.num_faces() {
            chi[self.face_piece(f)] += 1;
        }
        chi
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.piece_euler_characteristics().iter().sum::<i64>() + 2 * self.free_spheres as i64
    }

    /// Total genus: the sum over pieces of `(2 - chi) / 2`.
    pub fn genus(&self) -> usize {
        self.piece_euler_characteristics()
            .iter()
            .map(|chi| ((2 - chi) / 2) as usize)
            .sum()
    }

    pub fn dump(&self) -> MapDump {
        MapDump {
            darts: self.num_darts(),
            sigma_cycles: (0..self.num_vertices())
                .map(|v| {
                    let mut cyc = vec![4 * v];
                    let mut x = self.sigma(4 * v);
                    while x != 4 * v {
                        cyc.push(x);
                        x = self.sigma(x);
                    }
                    cyc
                })
                .collect(),
            alpha_pairs: (0..self.num_darts())
                .filter(|&x| x < self.alpha(x))
                .map(|x| (x, self.alpha(x)))
                .collect(),
            face_orbits: self.faces.clone(),
        }
    }
}
