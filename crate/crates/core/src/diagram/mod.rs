//! Virtual link diagrams as signed Gauss codes.
//!
//! Virtual crossings are never stored: the signed Gauss code carries all the
//! data the bracket and the Carter surface depend on.

mod catalog;
pub(crate) mod darts;
mod gauss;
#[cfg(test)]
pub(crate) mod testgen;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use catalog::{catalog, catalog_description, catalog_names, p_family};
pub use darts::DartGraph;
pub(crate) use gauss::{lex, record_sign, Token};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("invalid diagram: {0}")]
    Validation(String),
    #[error("unknown crossing {0}")]
    UnknownCrossing(u32),
    #[error("unknown catalog entry '{0}'")]
    UnknownName(String),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Role {
    Over,
    Under,
}

impl Role {
    pub fn flipped(self) -> Self {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

/// One visit of a component to a classical crossing.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pass {
    pub crossing: u32,
    pub role: Role,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct CrossingRecord {
    pub id: u32,
    pub sign: Sign,
}

/// The two smoothings of a classical crossing. `Alpha` is the `A`-smoothing
/// (it joins the two regions swept by turning the over-strand
/// counterclockwise), `Beta` the `A^-1`-smoothing.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SmoothingType {
    Alpha,
    Beta,
}

/// A total assignment of smoothing types, indexed by crossing id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Smoothing(pub BTreeMap<u32, SmoothingType>);

impl Smoothing {
    /// Bit `i` of `bits` set means the `i`-th crossing (in increasing id
    /// order) gets `Beta`.
    pub fn from_bits(ids: &[u32], bits: u64) -> Self {
        Smoothing(
            ids.iter()
                .enumerate()
                .map(|(i, &id)| {
                    let ty = if bits >> i & 1 == 1 {
                        SmoothingType::Beta
                    } else {
                        SmoothingType::Alpha
                    };
                    (id, ty)
                })
                .collect(),
        )
    }

    /// Number of alpha smoothings minus number of beta smoothings.
    pub fn exponent(&self) -> i32 {
        self.0
            .values()
            .map(|t| match t {
                SmoothingType::Alpha => 1,
                SmoothingType::Beta => -1,
            })
            .sum()
    }
}

/// A virtual knot or link diagram given by a signed Gauss code.
///
/// Each component is a cyclic sequence of passes; an empty component is a
/// crossingless unknotted circle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VirtualLinkDiagram {
    components: Vec<Vec<Pass>>,
    signs: BTreeMap<u32, Sign>,
}

impl VirtualLinkDiagram {
    /// Validates and builds a diagram.
    pub fn new(
        components: Vec<Vec<Pass>>,
        signs: BTreeMap<u32, Sign>,
    ) -> Result<Self, DiagramError> {
        if components.is_empty() {
            return Err(DiagramError::Validation("diagram has no components".into()));
        }
        let mut seen: HashMap<u32, (usize, usize)> = HashMap::new();
        for pass in components.iter().flatten() {
            if pass.crossing == 0 {
                return Err(DiagramError::Validation("crossing ids must be positive".into()));
            }
            let e = seen.entry(pass.crossing).or_insert((0, 0));
            match pass.role {
                Role::Over => e.0 += 1,
                Role::Under => e.1 += 1,
            }
        }
        for (&id, &(o, u)) in &seen {
            if o + u != 2 {
                return Err(DiagramError::Validation(format!(
                    "crossing {id} appears {} times",
                    o + u
                )));
            }
            if o != 1 {
                return Err(DiagramError::Validation(format!(
                    "crossing {id} needs one over and one under pass"
                )));
            }
            if !signs.contains_key(&id) {
                return Err(DiagramError::Validation(format!("crossing {id} has no sign")));
            }
        }
        if let Some(id) = signs.keys().find(|id| !seen.contains_key(id)) {
            return Err(DiagramError::Validation(format!(
                "sign given for absent crossing {id}"
            )));
        }
        Ok(Self { components, signs })
    }

    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        gauss::parse_gauss_code(text)
    }

    pub fn unknot() -> Self {
        Self {
            components: vec![vec![]],
            signs: BTreeMap::new(),
        }
    }

    pub fn components(&self) -> &[Vec<Pass>] {
        &self.components
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn num_crossings(&self) -> usize {
        self.signs.len()
    }

    /// Crossing ids in increasing order; this is the dense index order used
    /// by state enumeration.
    pub fn crossing_ids(&self) -> Vec<u32> {
        self.signs.keys().copied().collect()
    }

    pub fn sign(&self, id: u32) -> Option<Sign> {
        self.signs.get(&id).copied()
    }

    pub fn crossings(&self) -> impl Iterator<Item = CrossingRecord> + '_ {
        self.signs.iter().map(|(&id, &sign)| CrossingRecord { id, sign })
    }

    pub fn writhe(&self) -> i64 {
        self.signs.values().map(|s| s.value()).sum()
    }

    fn check(&self, id: u32) -> Result<(), DiagramError> {
        if self.signs.contains_key(&id) {
            Ok(())
        } else {
            Err(DiagramError::UnknownCrossing(id))
        }
    }

    fn map_passes(&self, id: u32, f: impl Fn(Pass) -> Pass) -> Vec<Vec<Pass>> {
        self.components
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&p| if p.crossing == id { f(p) } else { p })
                    .collect()
            })
            .collect()
    }

    /// Crossing change: exchanges the over and under passes of `id` and
    /// negates its sign.
    pub fn switch_crossing(&self, id: u32) -> Result<Self, DiagramError> {
        self.check(id)?;
        let components = self.map_passes(id, |p| Pass {
            crossing: p.crossing,
            role: p.role.flipped(),
        });
        let mut signs = self.signs.clone();
        signs.insert(id, self.signs[&id].flipped());
        Ok(Self { components, signs })
    }

    /// Replaces crossing `id` by the opposite crossing flanked by two virtual
    /// crossings. The same strand stays on top, but the flanking virtual
    /// crossings reverse the local writhe, so in Gauss-code terms only the
    /// sign changes.
    pub fn virtualize_crossing(&self, id: u32) -> Result<Self, DiagramError> {
        self.check(id)?;
        let mut signs = self.signs.clone();
        signs.insert(id, self.signs[&id].flipped());
        Ok(Self {
            components: self.components.clone(),
            signs,
        })
    }

    /// Mirror image: every crossing switched.
    pub fn mirror(&self) -> Self {
        Self {
            components: self
                .components
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|p| Pass {
                            crossing: p.crossing,
                            role: p.role.flipped(),
                        })
                        .collect()
                })
                .collect(),
            signs: self.signs.iter().map(|(&k, s)| (k, s.flipped())).collect(),
        }
    }

    /// Removes crossing `id`, reconnecting its four ends according to the
    /// smoothing. Strands traversed against their old orientation have the
    /// signs of their crossings adjusted so the geometry is unchanged.
    pub fn smooth_crossing(&self, id: u32, ty: SmoothingType) -> Result<Self, DiagramError> {
        self.check(id)?;
        let graph = DartGraph::new(self);
        let idx = graph.index_of(id).expect("checked");
        Ok(graph.resolve(&BTreeMap::from([(idx, ty)])))
    }

    /// Renames crossings through `map` (which must be injective on the ids).
    pub fn relabeled(&self, map: &BTreeMap<u32, u32>) -> Result<Self, DiagramError> {
        let rename = |id: u32| map.get(&id).copied().unwrap_or(id);
        let components = self
            .components
            .iter()
            .map(|c| {
                c.iter()
                    .map(|p| Pass {
                        crossing: rename(p.crossing),
                        role: p.role,
                    })
                    .collect()
            })
            .collect();
        let signs: BTreeMap<u32, Sign> =
            self.signs.iter().map(|(&k, &s)| (rename(k), s)).collect();
        if signs.len() != self.signs.len() {
            return Err(DiagramError::Validation("relabeling is not injective".into()));
        }
        Self::new(components, signs)
    }

    /// Starts component `component` at its `shift`-th pass.
    pub fn rotated(&self, component: usize, shift: usize) -> Self {
        let mut out = self.clone();
        if let Some(c) = out.components.get_mut(component) {
            if !c.is_empty() {
                let k = shift % c.len();
                c.rotate_left(k);
            }
        }
        out
    }

    /// A deterministic representative up to crossing relabeling and cyclic
    /// rotation of each component: each component in turn takes the rotation
    /// whose code, after renumbering crossings by first appearance, is
    /// smallest.
    pub fn canonical(&self) -> Self {
        let mut labels: BTreeMap<u32, u32> = BTreeMap::new();
        let mut components = Vec::with_capacity(self.components.len());
        for comp in &self.components {
            if comp.is_empty() {
                components.push(Vec::new());
                continue;
            }
            let mut best: Option<(Vec<(u32, Role, Sign)>, BTreeMap<u32, u32>, usize)> = None;
            for shift in 0..comp.len() {
                let mut trial = labels.clone();
                let mut key = Vec::with_capacity(comp.len());
                for k in 0..comp.len() {
                    let p = comp[(shift + k) % comp.len()];
                    let next = trial.len() as u32 + 1;
                    let label = *trial.entry(p.crossing).or_insert(next);
                    key.push((label, p.role, self.signs[&p.crossing]));
                }
                if best.as_ref().is_none_or(|(b, _, _)| key < *b) {
                    best = Some((key, trial, shift));
                }
            }
            let (_, trial, shift) = best.expect("non-empty component");
            labels = trial;
            let mut rotated = comp.clone();
            rotated.rotate_left(shift);
            components.push(
                rotated
                    .into_iter()
                    .map(|p| Pass {
                        crossing: labels[&p.crossing],
                        role: p.role,
                    })
                    .collect(),
            );
        }
        let signs = self.signs.iter().map(|(k, &s)| (labels[k], s)).collect();
        Self { components, signs }
    }

    /// The ids of crossings whose two passes lie on different components.
    pub fn mixed_crossings(&self) -> BTreeSet<u32> {
        let mut owner: HashMap<u32, usize> = HashMap::new();
        let mut mixed = BTreeSet::new();
        for (ci, comp) in self.components.iter().enumerate() {
            for p in comp {
                if let Some(&o) = owner.get(&p.crossing) {
                    if o != ci {
                        mixed.insert(p.crossing);
                    }
                } else {
                    owner.insert(p.crossing, ci);
                }
            }
        }
        mixed
    }
}

impl fmt::Display for VirtualLinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, comp) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            if comp.is_empty() {
                f.write_str("U")?;
            }
            for p in comp {
                let r = match p.role {
                    Role::Over => 'O',
                    Role::Under => 'U',
                };
                write!(f, "{}{}{}", r, p.crossing, self.signs[&p.crossing].symbol())?;
            }
        }
        Ok(())
    }
}

impl Serialize for VirtualLinkDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl std::str::FromStr for VirtualLinkDiagram {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}
