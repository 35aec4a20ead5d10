//! Classical tangles in a disk, their Temperley–Lieb expansion, and the
//! single- and double-virtualization pipelines.

mod expand;
mod matching;
mod virtualization;

pub use expand::{expand_tangle, TangleExpansion};
pub use matching::PlanarMatching;
pub use virtualization::{
    alpha_beta_at_crossing, double_virtualization_report, virtualization_report, zerocor_check,
    AlphaBeta, DoubleVirtualizationReport, FourState, VirtualizationReport, VirtualizationVerdict,
    ZeroCheck,
};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::diagram::darts::{assemble, DartKind, OVER_IN, OVER_OUT, UNDER_IN, UNDER_OUT};
use crate::diagram::{lex, record_sign, DiagramError, Pass, Role, Sign, Token, VirtualLinkDiagram};
use crate::unionfind::UnionFind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TangleError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("invalid tangle: {0}")]
    Validation(String),
    #[error("tangle does not embed in a disk with its boundary order")]
    NonClassicalTangle,
    #[error("matching has {0} points, tangle has {1}")]
    PointMismatch(usize, usize),
    #[error("both brackets vanish; the zero test is undecided")]
    Ambiguous,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A strand running from boundary point `start` to boundary point `end`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenStrand {
    pub start: u32,
    pub passes: Vec<Pass>,
    pub end: u32,
}

/// A tangle in a disk with boundary points `1..=2n` numbered
/// counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tangle {
    points: usize,
    strands: Vec<OpenStrand>,
    loops: Vec<Vec<Pass>>,
    signs: BTreeMap<u32, Sign>,
}

impl Tangle {
    pub fn new(
        strands: Vec<OpenStrand>,
        loops: Vec<Vec<Pass>>,
        signs: BTreeMap<u32, Sign>,
    ) -> Result<Self, TangleError> {
        let points = 2 * strands.len();
        let mut ends = BTreeSet::new();
        for s in &strands {
            for b in [s.start, s.end] {
                if b == 0 || b as usize > points {
                    return Err(TangleError::Validation(format!(
                        "boundary point B{b} outside 1..={points}"
                    )));
                }
                if !ends.insert(b) {
                    return Err(TangleError::Validation(format!("boundary point B{b} used twice")));
                }
            }
        }
        // Reuse the closed-code checks on the passes alone.
        let mut comps: Vec<Vec<Pass>> = strands.iter().map(|s| s.passes.clone()).collect();
        comps.extend(loops.iter().cloned());
        if !comps.is_empty() {
            VirtualLinkDiagram::new(comps, signs.clone())?;
        } else if !signs.is_empty() {
            return Err(TangleError::Validation("signs without crossings".into()));
        }
        Ok(Self {
            points,
            strands,
            loops,
            signs,
        })
    }

    /// `tangle := component (";" component)*`, where a component is either a
    /// closed Gauss-code component or `B<i> pass* B<j>`.
    pub fn parse(text: &str) -> Result<Self, TangleError> {
        let tokens = lex(text, true)?;
        let mut groups: Vec<Vec<(usize, Token)>> = vec![Vec::new()];
        for (offset, tok) in tokens {
            if tok == Token::Separator {
                groups.push(Vec::new());
            } else {
                groups.last_mut().expect("non-empty").push((offset, tok));
            }
        }
        let mut strands = Vec::new();
        let mut loops = Vec::new();
        let mut signs = BTreeMap::new();
        let parse_err = |offset: usize, message: &str| {
            TangleError::Diagram(DiagramError::Parse {
                offset,
                message: message.into(),
            })
        };
        for g in groups {
            let Some((first_offset, first)) = g.first().cloned() else {
                return Err(parse_err(text.len(), "empty component"));
            };
            let mut passes = Vec::new();
            let mut bounds = Vec::new();
            let mut unknot = false;
            for (i, (offset, tok)) in g.iter().enumerate() {
                match tok {
                    Token::Pass { crossing, role, sign } => {
                        if bounds.len() != usize::from(matches!(first, Token::Boundary(_))) {
                            return Err(parse_err(*offset, "pass after the closing boundary point"));
                        }
                        record_sign(&mut signs, *crossing, *sign)?;
                        passes.push(Pass {
                            crossing: *crossing,
                            role: *role,
                        });
                    }
                    Token::Boundary(b) => {
                        if i != 0 && i != g.len() - 1 {
                            return Err(parse_err(*offset, "boundary point inside a strand"));
                        }
                        bounds.push(*b);
                    }
                    Token::Unknot => {
                        if g.len() != 1 {
                            return Err(parse_err(*offset, "'U' marker must stand alone in its component"));
                        }
                        unknot = true;
                    }
                    Token::Separator => unreachable!("split above"),
                }
            }
            match bounds.len() {
                0 if unknot || !passes.is_empty() => loops.push(passes),
                2 => strands.push(OpenStrand {
                    start: bounds[0],
                    passes,
                    end: bounds[1],
                }),
                _ => return Err(parse_err(first_offset, "a strand needs boundary points at both ends")),
            }
        }
        Self::new(strands, loops, signs)
    }

    /// The braid on `strands` strands given by `word` (`i` for the
    /// generator in which strand position `i` crosses over position `i + 1`,
    /// `-i` for its inverse). Strands run upward from the bottom points
    /// `1..=n`, numbered left to right, to the top points `n+1..=2n`,
    /// numbered right to left.
    pub fn from_braid(strands: usize, word: &[i32]) -> Result<Self, TangleError> {
        let n = strands;
        let mut at: Vec<usize> = (0..n).collect();
        let mut passes: Vec<Vec<Pass>> = vec![Vec::new(); n];
        let mut signs = BTreeMap::new();
        for (k, &g) in word.iter().enumerate() {
            let i = g.unsigned_abs() as usize;
            if g == 0 || i >= n {
                return Err(TangleError::Validation(format!("generator {g} out of range")));
            }
            let id = k as u32 + 1;
            let (left, right) = (at[i - 1], at[i]);
            let (left_role, sign) = if g > 0 {
                (Role::Over, Sign::Positive)
            } else {
                (Role::Under, Sign::Negative)
            };
            passes[left].push(Pass {
                crossing: id,
                role: left_role,
            });
            passes[right].push(Pass {
                crossing: id,
                role: left_role.flipped(),
            });
            signs.insert(id, sign);
            at.swap(i - 1, i);
        }
        let mut end = vec![0u32; n];
        for (pos, &s) in at.iter().enumerate() {
            end[s] = (2 * n - pos) as u32;
        }
        let strands = passes
            .into_iter()
            .enumerate()
            .map(|(s, p)| OpenStrand {
                start: s as u32 + 1,
                passes: p,
                end: end[s],
            })
            .collect();
        Self::new(strands, Vec::new(), signs)
    }

    /// Number of boundary points.
    pub fn num_points(&self) -> usize {
        self.points
    }

    pub fn num_crossings(&self) -> usize {
        self.signs.len()
    }

    pub fn crossing_ids(&self) -> Vec<u32> {
        self.signs.keys().copied().collect()
    }

    pub fn strands(&self) -> &[OpenStrand] {
        &self.strands
    }

    pub fn loops(&self) -> &[Vec<Pass>] {
        &self.loops
    }

    pub fn sign(&self, id: u32) -> Option<Sign> {
        self.signs.get(&id).copied()
    }

    /// Crossing-dart wiring of the tangle.
    pub(crate) fn wiring(&self) -> Wiring {
        let ids = self.crossing_ids();
        let index = |id: u32| ids.binary_search(&id).expect("known crossing");
        let nc = ids.len();
        let mut alpha = vec![usize::MAX; 4 * nc + self.points];
        let boundary = |b: u32| 4 * nc + b as usize - 1;
        let darts = |p: &Pass| {
            let base = 4 * index(p.crossing);
            match p.role {
                Role::Over => (base + OVER_IN, base + OVER_OUT),
                Role::Under => (base + UNDER_IN, base + UNDER_OUT),
            }
        };
        let mut link = |a: usize, b: usize| {
            alpha[a] = b;
            alpha[b] = a;
        };
        for s in &self.strands {
            let mut prev = boundary(s.start);
            for p in &s.passes {
                let (i, o) = darts(p);
                link(prev, i);
                prev = o;
            }
            link(prev, boundary(s.end));
        }
        let mut free_loops = 0;
        for l in &self.loops {
            if l.is_empty() {
                free_loops += 1;
                continue;
            }
            let ds: Vec<(usize, usize)> = l.iter().map(darts).collect();
            for k in 0..ds.len() {
                link(ds[k].1, ds[(k + 1) % ds.len()].0);
            }
        }
        Wiring {
            signs: ids.iter().map(|id| self.signs[id]).collect(),
            ids,
            alpha,
            free_loops,
            points: self.points,
        }
    }

    /// Whether the tangle sits in a disk with its boundary points in the
    /// stated counterclockwise order: collapsing the outside of the disk to
    /// one vertex must give a planar map.
    pub fn is_classical(&self) -> bool {
        let w = self.wiring();
        let nc = w.ids.len();
        let total = w.alpha.len();
        let sigma = |x: usize| -> usize {
            if x < 4 * nc {
                let c = x / 4;
                let pos = crate::diagram::darts::position_of(w.signs[c], x % 4);
                4 * c + crate::diagram::darts::role_at(w.signs[c], pos + 1)
            } else {
                // Seen from outside the disk the boundary order is reversed.
                let k = x - 4 * nc;
                4 * nc + (k + w.points - 1) % w.points
            }
        };
        let outer = usize::from(w.points > 0);
        let vertices = nc + outer;
        let mut uf = UnionFind::new(vertices);
        let vertex = |x: usize| if x < 4 * nc { x / 4 } else { nc };
        for x in 0..total {
            uf.union(vertex(x), vertex(w.alpha[x]));
        }
        let mut seen = vec![false; total];
        let mut faces = 0;
        for x in 0..total {
            if seen[x] {
                continue;
            }
            faces += 1;
            let mut y = x;
            while !seen[y] {
                seen[y] = true;
                y = w.alpha[sigma(y)];
            }
        }
        let edges = total / 2;
        let chi = vertices as i64 - edges as i64 + faces as i64;
        chi == 2 * uf.count_sets() as i64
    }

    /// Closes the tangle by joining boundary points outside the disk along
    /// `outer`.
    pub fn closure(&self, outer: &PlanarMatching) -> Result<VirtualLinkDiagram, TangleError> {
        if outer.num_points() != self.points {
            return Err(TangleError::PointMismatch(outer.num_points(), self.points));
        }
        let w = self.wiring();
        let nc = w.ids.len();
        let mut alpha = w.alpha[..4 * nc].to_vec();
        let mut free_loops = w.free_loops;
        let partner = outer.partners();
        let inner = |b: usize| w.alpha[4 * nc + b];
        let mut used = vec![false; w.points];
        // From boundary point `b`, go outside to its partner and follow
        // crossingless strands until a crossing dart is reached.
        let reach = |mut b: usize, used: &mut Vec<bool>| -> usize {
            loop {
                used[b] = true;
                let c = partner[b];
                used[c] = true;
                let y = inner(c);
                if y < 4 * nc {
                    return y;
                }
                b = y - 4 * nc;
            }
        };
        for b in 0..w.points {
            let x = inner(b);
            if x < 4 * nc && !used[b] {
                let y = reach(b, &mut used);
                alpha[x] = y;
                alpha[y] = x;
            }
        }
        for b0 in 0..w.points {
            if used[b0] {
                continue;
            }
            free_loops += 1;
            let mut b = b0;
            while !used[b] {
                used[b] = true;
                let c = partner[b];
                used[c] = true;
                b = inner(c) - 4 * nc;
            }
        }
        let kinds: Vec<DartKind> = (0..4 * nc)
            .map(|d| {
                let role = d % 4;
                DartKind::Strand {
                    crossing: w.ids[d / 4],
                    role: if role % 2 == 0 { Role::Over } else { Role::Under },
                    is_in: role < 2,
                    other: d - role + (role + 2) % 4,
                }
            })
            .collect();
        Ok(assemble(&alpha, &kinds, &self.signs, free_loops))
    }
}

const TANGLES: &[(&str, &str)] = &[
    ("crossing", "B1 O1+ B3; B2 U1+ B4"),
    ("identity2", "B1 B4; B2 B3"),
    ("tprime", "B1O1+U2-O3-U4+B8;B2U1+O4+U5-B6;B3O2-U3-O5-B7;B4B5"),
];

/// Names accepted by [`tangle_catalog`].
pub fn tangle_catalog_names() -> Vec<&'static str> {
    TANGLES.iter().map(|(n, _)| *n).collect()
}

/// Named tangles. `tprime` is the braid `1,-2,-2,1,-2` on four strands.
pub fn tangle_catalog(name: &str) -> Result<Tangle, TangleError> {
    TANGLES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, code)| Tangle::parse(code).expect("catalog tangles are valid"))
        .ok_or_else(|| TangleError::Diagram(DiagramError::UnknownName(name.to_string())))
}

/// Darts of a tangle: four per crossing in increasing id order, then one
/// per boundary point.
pub(crate) struct Wiring {
    pub ids: Vec<u32>,
    pub signs: Vec<Sign>,
    pub alpha: Vec<usize>,
    pub free_loops: usize,
    pub points: usize,
}

impl fmt::Display for Tangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let write_pass = |f: &mut fmt::Formatter<'_>, p: &Pass| {
            let r = match p.role {
                Role::Over => 'O',
                Role::Under => 'U',
            };
            let s = match self.signs[&p.crossing] {
                Sign::Positive => '+',
                Sign::Negative => '-',
            };
            write!(f, "{r}{}{s}", p.crossing)
        };
        let mut first = true;
        for s in &self.strands {
            if !first {
                f.write_str(";")?;
            }
            first = false;
            write!(f, "B{}", s.start)?;
            for p in &s.passes {
                write_pass(f, p)?;
            }
            write!(f, "B{}", s.end)?;
        }
        for l in &self.loops {
            if !first {
                f.write_str(";")?;
            }
            first = false;
            if l.is_empty() {
                f.write_str("U")?;
            }
            for p in l {
                write_pass(f, p)?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for Tangle {
    type Err = TangleError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}
