use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use super::embedded::RefinedEdge;
use super::{CombinatorialMap, EmbeddedLoop};
use crate::unionfind::UnionFind;

/// A connected piece of the surface after cutting.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CutComponent {
    pub euler_characteristic: i64,
    pub boundary_count: usize,
}

impl CutComponent {
    pub fn genus(&self) -> usize {
        ((2 - self.euler_characteristic - self.boundary_count as i64) / 2) as usize
    }

    pub fn is_disk(&self) -> bool {
        self.euler_characteristic == 1 && self.boundary_count == 1
    }
}

/// Cuts the surface along `l` and returns every resulting component, the
/// spheres of crossingless components included.
pub fn cut_along_loop(map: &CombinatorialMap, l: &EmbeddedLoop) -> Vec<CutComponent> {
    let nf = map.num_faces();
    let nd = map.num_darts();
    let cells = nf + map.num_vertices();
    let on_loop: HashSet<RefinedEdge> = l.steps().iter().map(|s| s.refined_edge(map)).collect();
    let points: HashSet<usize> = l.steps().iter().map(|s| s.start()).collect();

    let mut uf = UnionFind::new(cells);
    for x in 0..nd {
        if x < map.alpha(x) && !on_loop.contains(&RefinedEdge::Arc(x)) {
            uf.union(map.left_face(x), map.right_face(x));
        }
        if !on_loop.contains(&RefinedEdge::Side(x)) {
            uf.union(nf + x / 4, map.corner_face(x));
        }
    }

    // root -> (chi, boundaries); `first` orders components by smallest cell.
    let mut comps: BTreeMap<usize, (i64, usize)> = BTreeMap::new();
    let mut first: BTreeMap<usize, usize> = BTreeMap::new();
    for c in 0..cells {
        let r = uf.find(c);
        first.entry(r).or_insert(c);
        comps.entry(r).or_default().0 += 1;
    }
    for x in 0..nd {
        let root = uf.find(nf + x / 4);
        if !points.contains(&x) {
            comps.get_mut(&root).unwrap().0 += 1;
        }
        if !on_loop.contains(&RefinedEdge::Side(x)) {
            comps.get_mut(&root).unwrap().0 -= 1;
        }
        if x < map.alpha(x) && !on_loop.contains(&RefinedEdge::Arc(x)) {
            comps.get_mut(&uf.find(map.left_face(x))).unwrap().0 -= 1;
        }
    }
    if let Some(step) = l.steps().first() {
        let (left, right) = step.sides(map);
        comps.get_mut(&uf.find(left)).unwrap().1 += 1;
        comps.get_mut(&uf.find(right)).unwrap().1 += 1;
    }

    let mut order: Vec<(usize, (i64, usize))> = comps
        .into_iter()
        .map(|(root, v)| (first[&root], v))
        .collect();
    order.sort();
    order
        .into_iter()
        .map(|(_, (chi, b))| CutComponent {
            euler_characteristic: chi,
            boundary_count: b,
        })
        .chain((0..map.free_spheres()).map(|_| CutComponent {
            euler_characteristic: 2,
            boundary_count: 0,
        }))
        .collect()
}

pub fn is_disk_bounding(map: &CombinatorialMap, l: &EmbeddedLoop) -> bool {
    cut_along_loop(map, l).iter().any(CutComponent::is_disk)
}
