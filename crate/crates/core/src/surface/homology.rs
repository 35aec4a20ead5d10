use std::collections::VecDeque;

use serde::Serialize;

use super::{CombinatorialMap, EmbeddedLoop, SurfaceError};
use crate::algebra::{
    mat_mul, mat_vec, standard_symplectic, symplectic_reduce, transpose, IntMatrix, SkewForm,
    SymplecticBasis,
};

/// Coordinates in a symplectic basis `(m_1, l_1, ..., m_g, l_g)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct HomologyClass {
    pub coords: Vec<i64>,
}

impl HomologyClass {
    pub fn new(coords: Vec<i64>) -> Self {
        Self { coords }
    }

    pub fn zero(genus: usize) -> Self {
        Self {
            coords: vec![0; 2 * genus],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn genus(&self) -> usize {
        self.coords.len() / 2
    }

    /// Curves are unoriented: the first nonzero coordinate is made positive.
    pub fn canonical(&self) -> Self {
        match self.coords.iter().find(|&&c| c != 0) {
            Some(&c) if c < 0 => Self {
                coords: self.coords.iter().map(|x| -x).collect(),
            },
            _ => self.clone(),
        }
    }

    /// `sum_k a_k b'_k - b_k a'_k`, so `m_k . l_k = 1`.
    pub fn intersection(&self, other: &Self) -> Result<i64, SurfaceError> {
        if self.coords.len() != other.coords.len() {
            return Err(SurfaceError::BasisMismatch(self.coords.len(), other.coords.len()));
        }
        Ok(self
            .coords
            .chunks(2)
            .zip(other.coords.chunks(2))
            .map(|(p, q)| p[0] * q[1] - p[1] * q[0])
            .sum())
    }

    /// The `(a_k, b_k)` pair for torus `k`, counted from 1.
    pub fn project_to_torus(&self, k: usize) -> Result<(i64, i64), SurfaceError> {
        if k == 0 || k > self.genus() {
            return Err(SurfaceError::IndexOutOfRange(k, self.genus()));
        }
        Ok((self.coords[2 * k - 2], self.coords[2 * k - 1]))
    }
}

/// Sign of the crossing of two chords of a circle with 16 marked points,
/// `+1` when the second chord crosses the first from its right to its left.
fn chord_sign(p1: usize, q1: usize, p2: usize, q2: usize) -> i64 {
    let inside = |x: usize| {
        let span = (q1 + 16 - p1) % 16;
        let off = (x + 16 - p1) % 16;
        off > 0 && off < span
    };
    match (inside(p2), inside(q2)) {
        (true, false) => 1,
        (false, true) => -1,
        _ => 0,
    }
}

/// Algebraic intersection of two closed curves given by their passages
/// `(in, out)` through crossings. The second curve is pushed off to its
/// left, so shared arcs and shared crossings are counted consistently.
pub fn walk_intersection(map: &CombinatorialMap, w1: &[(usize, usize)], w2: &[(usize, usize)]) -> i64 {
    let pos = |x: usize| map.graph().position(x);
    let mut total = 0;
    for &(a1, b1) in w1 {
        for &(a2, b2) in w2 {
            if a1 / 4 != a2 / 4 {
                continue;
            }
            total += chord_sign(
                4 * pos(a1),
                4 * pos(b1),
                (4 * pos(a2) + 15) % 16,
                (4 * pos(b2) + 1) % 16,
            );
        }
    }
    total
}

fn passages(map: &CombinatorialMap, departures: &[usize]) -> Vec<(usize, usize)> {
    (0..departures.len())
        .map(|i| (map.alpha(departures[i]), departures[(i + 1) % departures.len()]))
        .collect()
}

/// A homology basis from a tree-cotree decomposition, its intersection form
/// and a symplectic change of basis.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    cycles: Vec<Vec<usize>>,
    dual_loops: Vec<Vec<usize>>,
    form: SkewForm,
    symplectic: SymplecticBasis,
    to_coords: IntMatrix,
    // Per crossing: (cycle index, in, out) of every basis passage.
    chords_at: Vec<Vec<(usize, u8, u8)>>,
}

struct Tree {
    parent: Vec<usize>,
    depth: Vec<usize>,
}

impl Tree {
    /// Steps from node `a` to node `b`. `up(child)` is the step from a child
    /// to its parent, `down(child)` the reverse, `node_of_parent(child)` the
    /// parent node.
    fn path(
        &self,
        mut a: usize,
        mut b: usize,
        up: impl Fn(usize) -> usize,
        parent_of: impl Fn(usize) -> usize,
    ) -> Vec<usize> {
        let mut head = Vec::new();
        let mut tail = Vec::new();
        while self.depth[a] > self.depth[b] {
            head.push(up(a));
            a = parent_of(a);
        }
        while self.depth[b] > self.depth[a] {
            tail.push(self.parent[b]);
            b = parent_of(b);
        }
        while a != b {
            head.push(up(a));
            a = parent_of(a);
            tail.push(self.parent[b]);
            b = parent_of(b);
        }
        tail.reverse();
        head.extend(tail);
        head
    }
}

impl HomologyBasis {
    pub fn new(map: &CombinatorialMap) -> Result<Self, SurfaceError> {
        let nv = map.num_vertices();
        let nd = map.num_darts();
        let mut in_tree = vec![false; nd];
        let mut tree = Tree {
            parent: vec![usize::MAX; nv],
            depth: vec![0; nv],
        };
        let mut seen = vec![false; nv];
        for root in 0..nv {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for x in 4 * v..4 * v + 4 {
                    let w = map.alpha(x) / 4;
                    if !seen[w] {
                        seen[w] = true;
                        tree.parent[w] = x;
                        tree.depth[w] = tree.depth[v] + 1;
                        in_tree[map.edge(x)] = true;
                        queue.push_back(w);
                    }
                }
            }
        }

        let nf = map.num_faces();
        let mut in_cotree = vec![false; nd];
        let mut cotree = Tree {
            parent: vec![usize::MAX; nf],
            depth: vec![0; nf],
        };
        let mut seen = vec![false; nf];
        for root in 0..nf {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(f) = queue.pop_front() {
                for &y in &map.faces()[f] {
                    let z = map.sigma(y);
                    if in_tree[map.edge(z)] {
                        continue;
                    }
                    let h = map.left_face(z);
                    if !seen[h] {
                        seen[h] = true;
                        cotree.parent[h] = z;
                        cotree.depth[h] = cotree.depth[f] + 1;
                        in_cotree[map.edge(z)] = true;
                        queue.push_back(h);
                    }
                }
            }
        }

        let mut cycles = Vec::new();
        let mut dual_loops = Vec::new();
        for x in 0..nd {
            if x > map.alpha(x) || in_tree[x] || in_cotree[x] {
                continue;
            }
            let mut cycle = vec![x];
            cycle.extend(tree.path(
                map.alpha(x) / 4,
                x / 4,
                |c| map.alpha(tree.parent[c]),
                |c| tree.parent[c] / 4,
            ));
            cycles.push(cycle);
            let mut dual = vec![x];
            dual.extend(cotree.path(
                map.left_face(x),
                map.right_face(x),
                |c| map.alpha(cotree.parent[c]),
                |c| map.right_face(cotree.parent[c]),
            ));
            dual_loops.push(dual);
        }
        debug_assert_eq!(cycles.len(), 2 * map.genus());

        let walks: Vec<_> = cycles.iter().map(|c| passages(map, c)).collect();
        let entries: IntMatrix = walks
            .iter()
            .map(|w1| walks.iter().map(|w2| walk_intersection(map, w1, w2)).collect())
            .collect();
        let form = SkewForm::new(entries)?;
        let symplectic = if form.dim() == 0 {
            SymplecticBasis {
                change: Vec::new(),
                pairs: Vec::new(),
            }
        } else {
            symplectic_reduce(&form)?
        };
        let j = standard_symplectic(form.dim() / 2);
        let to_coords = mat_mul(&transpose(&j), &transpose(&symplectic.change));
        let mut chords_at = vec![Vec::new(); nv];
        let pos = |x: usize| map.graph().position(x) as u8;
        for (i, w) in walks.iter().enumerate() {
            for &(a, b) in w {
                chords_at[a / 4].push((i, pos(a), pos(b)));
            }
        }
        Ok(Self {
            cycles,
            dual_loops,
            form,
            symplectic,
            to_coords,
            chords_at,
        })
    }

    pub fn genus(&self) -> usize {
        self.cycles.len() / 2
    }

    /// Basis cycles as the darts each arc is left from.
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// Closed curves in the dual graph, each given by the darts whose arcs
    /// it crosses, from the right of the dart to its left. Dual loop `i`
    /// meets basis cycle `i` on the arc only they share.
    pub fn dual_loops(&self) -> &[Vec<usize>] {
        &self.dual_loops
    }

    pub fn form(&self) -> &SkewForm {
        &self.form
    }

    pub fn symplectic(&self) -> &SymplecticBasis {
        &self.symplectic
    }

    /// Intersection numbers of every basis cycle with the curve.
    pub fn pairing_vector(&self, map: &CombinatorialMap, visits: &[(usize, usize)]) -> Vec<i64> {
        let pos = |x: usize| map.graph().position(x);
        let mut v = vec![0; self.cycles.len()];
        for &(a, b) in visits {
            let p2 = (4 * pos(a) + 15) % 16;
            let q2 = (4 * pos(b) + 1) % 16;
            for &(i, p1, q1) in &self.chords_at[a / 4] {
                v[i] += chord_sign(4 * p1 as usize, 4 * q1 as usize, p2, q2);
            }
        }
        v
    }

    /// Symplectic coordinates of a closed curve, with its orientation.
    pub fn oriented_class(&self, map: &CombinatorialMap, visits: &[(usize, usize)]) -> HomologyClass {
        if self.cycles.is_empty() {
            return HomologyClass::zero(0);
        }
        HomologyClass::new(mat_vec(&self.to_coords, &self.pairing_vector(map, visits)))
    }

    pub fn loop_class(&self, map: &CombinatorialMap, l: &EmbeddedLoop) -> HomologyClass {
        self.oriented_class(map, &l.visits(map)).canonical()
    }
}
