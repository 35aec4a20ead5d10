use std::collections::HashSet;

use serde::Serialize;

use super::{CombinatorialMap, SurfaceError};
use crate::diagram::SmoothingType;

/// One step of a closed curve on the refined map, whose points are the darts
/// and whose edges are the diagram arcs plus the four sides of a small
/// square around each crossing. Side `s` joins dart `s` to `sigma(s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Step {
    /// Along the arc from dart `x` to `alpha(x)`.
    Edge(usize),
    /// Along a square side from `from` to `sigma(from)` when `forward`,
    /// otherwise to `sigma_inv(from)`.
    Side { from: usize, forward: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum RefinedEdge {
    Arc(usize),
    Side(usize),
}

impl Step {
    pub fn start(self) -> usize {
        match self {
            Step::Edge(x) => x,
            Step::Side { from, .. } => from,
        }
    }

    pub fn end(self, map: &CombinatorialMap) -> usize {
        match self {
            Step::Edge(x) => map.alpha(x),
            Step::Side { from, forward: true } => map.sigma(from),
            Step::Side { from, forward: false } => map.sigma_inv(from),
        }
    }

    pub(crate) fn refined_edge(self, map: &CombinatorialMap) -> RefinedEdge {
        match self {
            Step::Edge(x) => RefinedEdge::Arc(map.edge(x)),
            Step::Side { from, forward: true } => RefinedEdge::Side(from),
            Step::Side { from, forward: false } => RefinedEdge::Side(map.sigma_inv(from)),
        }
    }

    /// Cells on the left and right of the step. Faces are numbered first,
    /// then one square per crossing.
    pub(crate) fn sides(self, map: &CombinatorialMap) -> (usize, usize) {
        let square = |x: usize| map.num_faces() + x / 4;
        match self {
            Step::Edge(x) => (map.left_face(x), map.right_face(x)),
            Step::Side { from, forward: true } => (square(from), map.corner_face(from)),
            Step::Side { from, forward: false } => {
                (map.corner_face(map.sigma_inv(from)), square(from))
            }
        }
    }
}

/// A simple closed curve on the refined map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddedLoop {
    steps: Vec<Step>,
}

impl EmbeddedLoop {
    /// Validates that the steps close up and visit no point or edge twice.
    pub fn new(map: &CombinatorialMap, steps: Vec<Step>) -> Result<Self, SurfaceError> {
        if steps.is_empty() {
            return Err(SurfaceError::LoopNotOnSurface("empty loop".into()));
        }
        let n = map.num_darts();
        for (i, s) in steps.iter().enumerate() {
            if s.start() >= n {
                return Err(SurfaceError::LoopNotOnSurface(format!("dart {} out of range", s.start())));
            }
            let next = steps[(i + 1) % steps.len()].start();
            if s.end(map) != next {
                return Err(SurfaceError::LoopNotOnSurface(format!(
                    "step {i} ends at dart {} but the next step starts at {next}",
                    s.end(map)
                )));
            }
        }
        let mut points = HashSet::new();
        let mut edges = HashSet::new();
        for s in &steps {
            if !points.insert(s.start()) {
                return Err(SurfaceError::LoopNotEmbedded(format!("dart {} visited twice", s.start())));
            }
            if !edges.insert(s.refined_edge(map)) {
                return Err(SurfaceError::LoopNotEmbedded("edge traversed twice".into()));
            }
        }
        Ok(Self { steps })
    }

    pub(crate) fn from_steps_unchecked(steps: Vec<Step>) -> Self {
        Self { steps }
    }

    /// Follows a closed walk in the crossing graph, given by the dart each
    /// arc leaves from, turning around each crossing the short way.
    pub fn from_graph_cycle(map: &CombinatorialMap, departures: &[usize]) -> Result<Self, SurfaceError> {
        let mut steps = Vec::new();
        for (i, &x) in departures.iter().enumerate() {
            steps.push(Step::Edge(x));
            let arrive = map.alpha(x);
            let leave = departures[(i + 1) % departures.len()];
            if arrive / 4 != leave / 4 {
                return Err(SurfaceError::LoopNotOnSurface(format!(
                    "arc into dart {arrive} does not reach the crossing of dart {leave}"
                )));
            }
            let turns = (map.graph().position(leave) + 4 - map.graph().position(arrive)) % 4;
            let (count, forward) = if turns <= 2 { (turns, true) } else { (4 - turns, false) };
            let mut p = arrive;
            for _ in 0..count {
                steps.push(Step::Side { from: p, forward });
                p = if forward { map.sigma(p) } else { map.sigma_inv(p) };
            }
        }
        Self::new(map, steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `(in, out)` dart pairs at each passage through a crossing.
    pub fn visits(&self, map: &CombinatorialMap) -> Vec<(usize, usize)> {
        let arcs: Vec<usize> = self
            .steps
            .iter()
            .filter_map(|s| match s {
                Step::Edge(x) => Some(*x),
                _ => None,
            })
            .collect();
        (0..arcs.len())
            .map(|i| (map.alpha(arcs[i]), arcs[(i + 1) % arcs.len()]))
            .collect()
    }

    /// Darts each arc is traversed from.
    pub fn arcs(&self) -> impl Iterator<Item = usize> + '_ {
        self.steps.iter().filter_map(|s| match s {
            Step::Edge(x) => Some(*x),
            _ => None,
        })
    }
}

/// The state curves of a full smoothing, one per closed loop, each routed
/// along the square sides at the crossings it turns through.
/// `types[c]` is the smoothing at crossing index `c`.
pub fn trace_state_loops(map: &CombinatorialMap, types: &[SmoothingType]) -> Vec<EmbeddedLoop> {
    let g = map.graph();
    let n = map.num_darts();
    let mut seen = vec![false; n];
    let mut loops = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut steps = Vec::new();
        let mut cur = start;
        loop {
            steps.push(Step::Edge(cur));
            seen[cur] = true;
            let y = map.alpha(cur);
            seen[y] = true;
            let p = g.smoothing_partner(y, types[y / 4]);
            steps.push(Step::Side {
                from: y,
                forward: p == map.sigma(y),
            });
            cur = p;
            if cur == start {
                break;
            }
        }
        loops.push(EmbeddedLoop::from_steps_unchecked(steps));
    }
    loops
}
