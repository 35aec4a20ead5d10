use proptest::prelude::*;

use super::*;
use crate::algebra::{determinant, mat_vec, IntMatrix};
use crate::diagram::testgen::arb_diagram;
use crate::diagram::SmoothingType;

fn rep(code: &str) -> SurfaceRep {
    build_carter_surface(&VirtualLinkDiagram::parse(code).unwrap())
}

const TORUS: &str = "O1+O2+U1+U2+";
const DOUBLE_TORUS: &str = "O1+O2+U1+U2+O3+O4+U3+U4+";
// Two virtual trefoils joined through a classical trefoil.
const CHAIN: &str = "O1+O2+U1+U2+O3+U4+O5+U3+O4+U5+O6+O7+U6+U7+";

/// Signed crossings of a primal curve (arcs by departure dart) with a dual
/// loop (arcs crossed right to left).
fn dual_count(map: &CombinatorialMap, arcs: &[usize], dual: &[usize]) -> i64 {
    let mut n = 0;
    for &x in arcs {
        for &y in dual {
            if y == x {
                n += 1;
            } else if y == map.alpha(x) {
                n -= 1;
            }
        }
    }
    n
}

/// Solves `m c = v` over the integers by Cramer's rule.
fn cramer(m: &IntMatrix, v: &[i64]) -> Vec<i64> {
    let det = determinant(m);
    assert_eq!(det.abs(), 1);
    (0..v.len())
        .map(|i| {
            let mut mi = m.clone();
            for (r, row) in mi.iter_mut().enumerate() {
                row[i] = v[r];
            }
            determinant(&mi) / det
        })
        .collect()
}

/// Coordinates of a curve in the raw tree-cotree basis, found only from
/// crossings with the dual loops, then paired against every basis cycle
/// through the intersection form. Must equal the direct pairing vector.
fn check_dual_route(r: &SurfaceRep, arcs: &[usize], visits: &[(usize, usize)]) {
    let map = r.map();
    let h = r.homology();
    let duals = h.dual_loops();
    let p: IntMatrix = duals
        .iter()
        .map(|f| h.cycles().iter().map(|e| dual_count(map, e, f)).collect())
        .collect();
    let vstar: Vec<i64> = duals.iter().map(|f| dual_count(map, arcs, f)).collect();
    let c = cramer(&p, &vstar);
    let direct = h.pairing_vector(map, visits);
    assert_eq!(mat_vec(h.form().entries(), &c), direct);
}

fn states(r: &SurfaceRep) -> impl Iterator<Item = Vec<EmbeddedLoop>> + '_ {
    let n = r.map().num_vertices();
    (0..1u32 << n).map(move |bits| {
        let types: Vec<_> = (0..n)
            .map(|c| if bits >> c & 1 == 0 { SmoothingType::Alpha } else { SmoothingType::Beta })
            .collect();
        trace_state_loops(r.map(), &types)
    })
}

fn face_loops(map: &CombinatorialMap) -> Vec<EmbeddedLoop> {
    map.faces()
        .iter()
        .filter_map(|orbit| {
            let steps = orbit
                .iter()
                .flat_map(|&y| [Step::Side { from: y, forward: true }, Step::Edge(map.sigma(y))])
                .collect();
            EmbeddedLoop::new(map, steps).ok()
        })
        .collect()
}

fn square_loop(map: &CombinatorialMap, v: usize) -> EmbeddedLoop {
    let mut steps = Vec::new();
    let mut x = 4 * v;
    for _ in 0..4 {
        steps.push(Step::Side { from: x, forward: true });
        x = map.sigma(x);
    }
    EmbeddedLoop::new(map, steps).unwrap()
}

#[test]
fn genera() {
    assert_eq!(rep("O1+U2+O3+U1+O2+U3+").genus(), 0);
    assert_eq!(rep(TORUS).genus(), 1);
    assert_eq!(rep(DOUBLE_TORUS).genus(), 2);
    assert_eq!(genus(&rep("U")), 0);
}

#[test]
fn planar_rep_has_empty_basis() {
    let r = rep("O1+U2+O3+U1+O2+U3+");
    assert!(r.homology().cycles().is_empty());
    assert_eq!(r.homology().form().dim(), 0);
}

#[test]
fn torus_form_is_unimodular_rank_two() {
    let r = rep(TORUS);
    let f = r.homology().form().entries().clone();
    assert_eq!(f[0][0], 0);
    assert_eq!(f[0][1].abs(), 1);
    assert_eq!(f[1][0], -f[0][1]);
}

#[test]
fn genus_two_form_reduces_to_standard() {
    let r = rep(DOUBLE_TORUS);
    let h = r.homology();
    assert_eq!(h.form().dim(), 4);
    assert_eq!(h.form().determinant(), 1);
    assert_eq!(
        h.form().transform(&h.symplectic().change),
        crate::algebra::standard_symplectic(2)
    );
}

#[test]
fn basis_cycles_have_unit_coordinates() {
    for code in [TORUS, DOUBLE_TORUS] {
        let r = rep(code);
        let h = r.homology();
        let classes: Vec<Vec<i64>> = h
            .cycles()
            .iter()
            .map(|c| {
                let l = EmbeddedLoop::from_graph_cycle(r.map(), c).unwrap();
                h.oriented_class(r.map(), &l.visits(r.map())).coords
            })
            .collect();
        // The classes form a unimodular matrix: they are a basis.
        assert_eq!(determinant(&classes).abs(), 1);
    }
}

#[test]
fn face_and_square_loops_bound_disks() {
    for code in [TORUS, DOUBLE_TORUS, "O1+U2+O3+U1+O2+U3+"] {
        let r = rep(code);
        let faces = face_loops(r.map());
        assert!(!faces.is_empty());
        for l in faces.iter().chain((0..r.map().num_vertices()).map(|v| square_loop(r.map(), v)).collect::<Vec<_>>().iter()) {
            assert!(r.loop_homology(l).is_zero());
            assert!(r.is_disk_bounding(l));
        }
    }
}

#[test]
fn meridian_cut_is_an_annulus() {
    let r = rep(TORUS);
    let l = EmbeddedLoop::from_graph_cycle(r.map(), &r.homology().cycles()[0]).unwrap();
    assert!(!r.loop_homology(&l).is_zero());
    let parts = r.cut_along_loop(&l);
    assert_eq!(
        parts,
        vec![CutComponent {
            euler_characteristic: 0,
            boundary_count: 2
        }]
    );
    assert!(!r.is_disk_bounding(&l));
}

#[test]
fn contractible_loop_on_torus_cuts_off_a_disk() {
    let r = rep(TORUS);
    let parts = r.cut_along_loop(&square_loop(r.map(), 0));
    assert_eq!(parts.len(), 2);
    assert!(parts.iter().any(CutComponent::is_disk));
    assert_eq!(parts.iter().map(CutComponent::genus).sum::<usize>(), 1);
}

/// Simple cycles of the refined map up to `max_len` steps, each found once
/// from its smallest point.
fn simple_cycles(map: &CombinatorialMap, max_len: usize) -> Vec<EmbeddedLoop> {
    fn moves(p: usize) -> [Step; 3] {
        [
            Step::Edge(p),
            Step::Side { from: p, forward: true },
            Step::Side { from: p, forward: false },
        ]
    }
    fn go(
        map: &CombinatorialMap,
        start: usize,
        steps: &mut Vec<Step>,
        used: &mut Vec<bool>,
        max_len: usize,
        out: &mut Vec<EmbeddedLoop>,
    ) {
        let p = steps.last().map_or(start, |s| s.end(map));
        for s in moves(p) {
            let q = s.end(map);
            if q == start && steps.len() >= 2 {
                steps.push(s);
                if let Ok(l) = EmbeddedLoop::new(map, steps.clone()) {
                    out.push(l);
                }
                steps.pop();
            } else if q > start && !used[q] && steps.len() + 1 < max_len {
                used[q] = true;
                steps.push(s);
                go(map, start, steps, used, max_len, out);
                steps.pop();
                used[q] = false;
            }
        }
    }
    let mut out = Vec::new();
    for start in 0..map.num_darts() {
        let mut used = vec![false; map.num_darts()];
        used[start] = true;
        go(map, start, &mut Vec::new(), &mut used, max_len, &mut out);
    }
    out
}

#[test]
fn cutting_invariants_on_all_short_cycles() {
    for code in [DOUBLE_TORUS, CHAIN, SEPARABLE] {
        let r = rep(code);
        let chi = r.map().euler_characteristic();
        let cycles = simple_cycles(r.map(), 12);
        assert!(cycles.len() > 100);
        for l in &cycles {
            let class = r.loop_homology(l);
            let parts = r.cut_along_loop(l);
            assert_eq!(parts.iter().map(|c| c.euler_characteristic).sum::<i64>(), chi);
            assert_eq!(parts.iter().map(|c| c.boundary_count).sum::<usize>(), 2);
            if r.is_disk_bounding(l) {
                assert!(class.is_zero());
            }
            // Separating exactly when the class vanishes.
            assert_eq!(parts.len() == 2, class.is_zero());
            if parts.len() == 2 {
                assert_eq!(parts.iter().map(CutComponent::genus).sum::<usize>(), 2);
            } else {
                assert_eq!(parts[0].genus(), 1);
            }
        }
    }
}

// Genus 2, with a refined map fine enough to carry a separating curve that
// bounds no disk. The curve was found by enumerating simple cycles.
const SEPARABLE: &str = "U3+O5-O2-O3+U1+U5-U4-O1+U2-O4-";

#[test]
fn separating_essential_curve() {
    let r = rep(SEPARABLE);
    assert_eq!(r.genus(), 2);
    let side = |from, forward| Step::Side { from, forward };
    let steps = vec![
        Step::Edge(0),
        side(15, true),
        Step::Edge(14),
        side(9, false),
        Step::Edge(8),
        side(6, true),
        side(5, true),
        Step::Edge(4),
        side(18, true),
        side(17, true),
        Step::Edge(16),
        side(11, false),
        Step::Edge(10),
        side(1, false),
    ];
    let l = EmbeddedLoop::new(r.map(), steps).unwrap();
    assert!(r.loop_homology(&l).is_zero());
    assert!(!r.is_disk_bounding(&l));
    let parts = r.cut_along_loop(&l);
    assert_eq!(parts.len(), 2);
    for c in parts {
        assert_eq!((c.euler_characteristic, c.boundary_count, c.genus()), (-1, 1, 1));
    }
}

#[test]
fn state_loops_match_the_dual_route() {
    for code in [TORUS, DOUBLE_TORUS, "O1+O2+U3+O4+U1+U2+O3+U4+", "O1-O2+U1-U3+U2+O3+"] {
        let r = rep(code);
        for loops in states(&r) {
            for l in loops {
                let arcs: Vec<usize> = l.arcs().collect();
                check_dual_route(&r, &arcs, &l.visits(r.map()));
            }
        }
    }
}

fn knot_visits(r: &SurfaceRep) -> Vec<(usize, usize)> {
    r.map().graph().pass_darts()[0].clone()
}

proptest! {
    #[test]
    fn random_forms_are_unimodular(d in arb_diagram()) {
        let r = build_carter_surface(&d);
        let h = r.homology();
        prop_assert_eq!(h.cycles().len(), 2 * r.genus());
        if r.genus() > 0 {
            prop_assert_eq!(h.form().determinant(), 1);
        }
    }

    #[test]
    fn random_dual_route_agrees(d in arb_diagram()) {
        let r = build_carter_surface(&d);
        if r.genus() > 0 {
            for loops in states(&r).take(8) {
                for l in loops {
                    let arcs: Vec<usize> = l.arcs().collect();
                    check_dual_route(&r, &arcs, &l.visits(r.map()));
                }
            }
        }
    }

    #[test]
    fn state_classes_sum_to_the_knot_mod_two(d in arb_diagram()) {
        prop_assume!(d.num_components() == 1);
        let r = build_carter_surface(&d);
        let h = r.homology();
        let knot = h.oriented_class(r.map(), &knot_visits(&r));
        for loops in states(&r).take(8) {
            let mut sum = vec![0i64; 2 * r.genus()];
            for l in loops {
                for (s, c) in sum.iter_mut().zip(h.oriented_class(r.map(), &l.visits(r.map())).coords) {
                    *s += c;
                }
            }
            for (s, k) in sum.iter().zip(&knot.coords) {
                prop_assert_eq!((s - k).rem_euclid(2), 0);
            }
        }
    }

    #[test]
    fn disk_bounding_state_loops_are_null(d in arb_diagram()) {
        let r = build_carter_surface(&d);
        for loops in states(&r).take(8) {
            for l in loops {
                if r.is_disk_bounding(&l) {
                    prop_assert!(r.loop_homology(&l).is_zero());
                }
            }
        }
    }

    #[test]
    fn planar_codes_have_genus_zero_iff_all_loops_bound(d in arb_diagram()) {
        let r = build_carter_surface(&d);
        if r.genus() == 0 {
            for loops in states(&r) {
                for l in loops {
                    prop_assert!(r.is_disk_bounding(&l));
                }
            }
        }
    }
}

