//! Dart-level view of a diagram: every classical crossing owns four darts
//! (half-edges) and consecutive passes are joined by edges.

use std::collections::{BTreeMap, HashMap};

use super::{Pass, Role, Sign, SmoothingType, VirtualLinkDiagram};

pub const OVER_IN: usize = 0;
pub const UNDER_IN: usize = 1;
pub const OVER_OUT: usize = 2;
pub const UNDER_OUT: usize = 3;

// Counterclockwise order of the roles around a negative crossing. Around a
// positive crossing the order is OVER_IN, UNDER_IN, OVER_OUT, UNDER_OUT. The
// table is its own inverse, so it maps roles to positions and back.
const NEGATIVE_ORDER: [usize; 4] = [OVER_IN, UNDER_OUT, OVER_OUT, UNDER_IN];

/// Counterclockwise position (0..4) of a dart role around a crossing.
pub(crate) fn position_of(sign: Sign, role: usize) -> usize {
    match sign {
        Sign::Positive => role,
        Sign::Negative => NEGATIVE_ORDER[role],
    }
}

/// Role of the dart at counterclockwise position `pos`.
pub(crate) fn role_at(sign: Sign, pos: usize) -> usize {
    position_of(sign, pos % 4)
}

/// Role joined to `role` by the smoothing `ty` at a crossing of sign `sign`.
pub(crate) fn partner_role(sign: Sign, role: usize, ty: SmoothingType) -> usize {
    let forward = match ty {
        SmoothingType::Alpha => role % 2 == 1,
        SmoothingType::Beta => role % 2 == 0,
    };
    let pos = position_of(sign, role);
    role_at(sign, if forward { pos + 1 } else { pos + 3 })
}

#[derive(Clone, Debug)]
pub struct DartGraph {
    ids: Vec<u32>,
    signs: Vec<Sign>,
    alpha: Vec<usize>,
    free_loops: usize,
    pass_darts: Vec<Vec<(usize, usize)>>,
}

impl DartGraph {
    pub fn new(d: &VirtualLinkDiagram) -> Self {
        let ids = d.crossing_ids();
        let index: HashMap<u32, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let signs = ids.iter().map(|id| d.sign(*id).unwrap()).collect();
        let mut alpha = vec![usize::MAX; 4 * ids.len()];
        let mut free_loops = 0;
        let mut pass_darts = Vec::new();
        for comp in d.components() {
            if comp.is_empty() {
                free_loops += 1;
                pass_darts.push(Vec::new());
                continue;
            }
            let darts: Vec<(usize, usize)> = comp
                .iter()
                .map(|p| {
                    let base = 4 * index[&p.crossing];
                    match p.role {
                        Role::Over => (base + OVER_IN, base + OVER_OUT),
                        Role::Under => (base + UNDER_IN, base + UNDER_OUT),
                    }
                })
                .collect();
            for k in 0..darts.len() {
                let out = darts[k].1;
                let next_in = darts[(k + 1) % darts.len()].0;
                alpha[out] = next_in;
                alpha[next_in] = out;
            }
            pass_darts.push(darts);
        }
        Self {
            ids,
            signs,
            alpha,
            free_loops,
            pass_darts,
        }
    }

    pub fn num_crossings(&self) -> usize {
        self.ids.len()
    }

    pub fn num_darts(&self) -> usize {
        self.alpha.len()
    }

    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    pub fn index_of(&self, id: u32) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    pub fn sign_at(&self, crossing: usize) -> Sign {
        self.signs[crossing]
    }

    /// Crossingless components.
    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    /// `(in, out)` darts of every pass, per component.
    pub fn pass_darts(&self) -> &[Vec<(usize, usize)>] {
        &self.pass_darts
    }

    pub fn alpha(&self, dart: usize) -> usize {
        self.alpha[dart]
    }

    pub fn alpha_slice(&self) -> &[usize] {
        &self.alpha
    }

    pub fn crossing_of(dart: usize) -> usize {
        dart / 4
    }

    pub fn role_of(dart: usize) -> usize {
        dart % 4
    }

    pub fn is_over(dart: usize) -> bool {
        dart % 2 == 0
    }

    /// Counterclockwise position (0..4) of the dart around its crossing.
    pub fn position(&self, dart: usize) -> usize {
        position_of(self.signs[dart / 4], dart % 4)
    }

    fn at_position(&self, crossing: usize, pos: usize) -> usize {
        4 * crossing + role_at(self.signs[crossing], pos)
    }

    /// Next dart counterclockwise around the same crossing.
    pub fn sigma(&self, dart: usize) -> usize {
        self.at_position(dart / 4, self.position(dart) + 1)
    }

    pub fn sigma_inv(&self, dart: usize) -> usize {
        self.at_position(dart / 4, self.position(dart) + 3)
    }

    /// The dart joined to `dart` by the given smoothing of its crossing.
    ///
    /// The alpha smoothing keeps the corners counterclockwise of the under
    /// darts, pairing each under dart with its counterclockwise neighbour;
    /// the beta smoothing does the same for the over darts.
    pub fn smoothing_partner(&self, dart: usize, ty: SmoothingType) -> usize {
        dart - dart % 4 + partner_role(self.signs[dart / 4], dart % 4, ty)
    }

    /// Smooths the crossings (by dense index) in `resolved` and rebuilds the
    /// Gauss code of what remains.
    pub fn resolve(&self, resolved: &BTreeMap<usize, SmoothingType>) -> VirtualLinkDiagram {
        let kinds: Vec<DartKind> = (0..self.num_darts())
            .map(|d| {
                let c = d / 4;
                if let Some(&ty) = resolved.get(&c) {
                    DartKind::Junction {
                        partner: self.smoothing_partner(d, ty),
                    }
                } else {
                    let role = d % 4;
                    DartKind::Strand {
                        crossing: self.ids[c],
                        role: if Self::is_over(d) { Role::Over } else { Role::Under },
                        is_in: role < 2,
                        other: 4 * c + (role + 2) % 4,
                    }
                }
            })
            .collect();
        let signs = self
            .ids
            .iter()
            .enumerate()
            .filter(|(i, _)| !resolved.contains_key(i))
            .map(|(i, &id)| (id, self.signs[i]))
            .collect();
        assemble(&self.alpha, &kinds, &signs, self.free_loops)
    }
}

/// How a walk continues once it reaches a dart.
#[derive(Clone, Copy, Debug)]
pub(crate) enum DartKind {
    /// End of the strand of a surviving crossing; the walk passes the
    /// crossing and leaves through `other`.
    Strand {
        crossing: u32,
        role: Role,
        is_in: bool,
        other: usize,
    },
    /// The walk jumps to `partner` and leaves through it.
    Junction { partner: usize },
}

/// Traces closed walks through `alpha` (edges) and `kinds` (what happens at
/// each dart) and returns them as a diagram. A strand traversed from its out
/// dart is reversed; a crossing with exactly one reversed strand changes sign.
pub(crate) fn assemble(
    alpha: &[usize],
    kinds: &[DartKind],
    signs: &BTreeMap<u32, Sign>,
    extra_free_loops: usize,
) -> VirtualLinkDiagram {
    let n = alpha.len();
    let mut visited = vec![false; n];
    let mut components: Vec<Vec<Pass>> = Vec::new();
    let mut reversed: BTreeMap<u32, u8> = BTreeMap::new();

    for start in 0..n {
        let DartKind::Strand { is_in: true, .. } = kinds[start] else {
            continue;
        };
        if visited[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut y = start;
        loop {
            match kinds[y] {
                DartKind::Strand {
                    crossing,
                    role,
                    is_in,
                    other,
                } => {
                    if visited[y] {
                        break;
                    }
                    visited[y] = true;
                    visited[other] = true;
                    comp.push(Pass { crossing, role });
                    if !is_in {
                        *reversed.entry(crossing).or_default() += 1;
                    }
                    y = alpha[other];
                }
                DartKind::Junction { partner } => {
                    visited[y] = true;
                    visited[partner] = true;
                    y = alpha[partner];
                }
            }
        }
        components.push(comp);
    }

    let mut loops = extra_free_loops;
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut y = start;
        while !visited[y] {
            let DartKind::Junction { partner } = kinds[y] else {
                unreachable!("every strand was visited above");
            };
            visited[y] = true;
            visited[partner] = true;
            y = alpha[partner];
        }
        loops += 1;
    }
    components.extend(std::iter::repeat_with(Vec::new).take(loops));

    let signs = signs
        .iter()
        .map(|(&id, &s)| {
            let flips = reversed.get(&id).copied().unwrap_or(0);
            (id, if flips == 1 { s.flipped() } else { s })
        })
        .collect();
    VirtualLinkDiagram::new(components, signs).expect("resolution preserves validity")
}
