//! Surface bracket and non-classicality certificates.

mod certify;
mod criteria;

pub use certify::{certify, certify_parallel, certify_rep, family_report, Certificate, Verdict};
pub use criteria::{
    mod2_span_criterion, per_torus_criterion, BasisChoice, Criterion, SpanWitness, TorusWitness,
    Witness,
};

use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::algebra::LaurentPoly;
use crate::bracket::{gray, Convention};
use crate::diagram::{Smoothing, SmoothingType};
use crate::surface::{trace_state_loops, EmbeddedLoop, HomologyClass, SurfaceRep};

/// One full smoothing drawn on the surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceState {
    pub smoothing: Smoothing,
    /// `c(s)`: number of alpha smoothings minus number of beta smoothings.
    pub exponent: i32,
    pub loops: Vec<EmbeddedLoop>,
    /// Loops bounding a disk, crossingless components included.
    pub disk_bounding: usize,
    /// Nonzero classes, canonical and sorted.
    pub classes: Vec<HomologyClass>,
    /// Null-homologous loops that bound no disk.
    pub null_essential: usize,
}

impl SurfaceState {
    pub fn key(&self) -> StateKey {
        StateKey {
            classes: self.classes.clone(),
            null_essential: self.null_essential,
        }
    }

    pub fn total_loops(&self) -> usize {
        self.disk_bounding + self.classes.len() + self.null_essential
    }
}

/// Evaluates the state with Beta at the crossings whose bit is set.
pub fn evaluate_state(rep: &SurfaceRep, bits: u64) -> SurfaceState {
    let map = rep.map();
    let ids = map.graph().ids();
    let types: Vec<SmoothingType> = (0..ids.len())
        .map(|i| if bits >> i & 1 == 1 { SmoothingType::Beta } else { SmoothingType::Alpha })
        .collect();
    let smoothing = Smoothing::from_bits(ids, bits);
    let loops = trace_state_loops(map, &types);
    let mut disk_bounding = map.free_spheres();
    let mut null_essential = 0;
    let mut classes = Vec::new();
    for l in &loops {
        let c = rep.loop_homology(l);
        if !c.is_zero() {
            classes.push(c);
        } else if rep.is_disk_bounding(l) {
            disk_bounding += 1;
        } else {
            null_essential += 1;
        }
    }
    classes.sort();
    SurfaceState {
        exponent: smoothing.exponent(),
        smoothing,
        loops,
        disk_bounding,
        classes,
        null_essential,
    }
}

/// All `2^n` states in binary order of the Beta set.
pub fn enumerate_surface_states(rep: &SurfaceRep) -> Vec<SurfaceState> {
    let n = rep.map().num_vertices();
    (0..1u64 << n).map(|bits| evaluate_state(rep, bits)).collect()
}

/// All states in Gray-code order, split into `parallel` contiguous ranges.
pub fn enumerate_surface_states_gray(rep: &SurfaceRep, parallel: usize) -> Vec<SurfaceState> {
    let n = rep.map().num_vertices();
    let ranges = split(1u64 << n, parallel);
    let parts: Vec<Vec<SurfaceState>> = std::thread::scope(|s| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|r| s.spawn(move || r.map(|i| evaluate_state(rep, gray(i))).collect()))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    parts.concat()
}

fn split(total: u64, parts: usize) -> Vec<std::ops::Range<u64>> {
    let parts = parts.max(1) as u64;
    let chunk = total.div_ceil(parts).max(1);
    (0..parts)
        .map(|p| (p * chunk).min(total)..((p + 1) * chunk).min(total))
        .filter(|r| !r.is_empty())
        .collect()
}

/// Grouping key of a state: its nonzero classes and the number of
/// null-homologous essential loops.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StateKey {
    pub classes: Vec<HomologyClass>,
    pub null_essential: usize,
}

impl StateKey {
    pub fn is_trivial(&self) -> bool {
        self.classes.is_empty() && self.null_essential == 0
    }
}

/// `sum_s A^c(s) d^(disk-bounding loops) [key(s)]`, one `d` per
/// disk-bounding loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceBracket {
    pub genus: usize,
    pub terms: BTreeMap<StateKey, LaurentPoly>,
}

impl SurfaceBracket {
    pub fn convention(&self) -> Convention {
        Convention::Unreduced
    }

    pub fn from_states<'a>(genus: usize, states: impl IntoIterator<Item = &'a SurfaceState>) -> Self {
        let d = LaurentPoly::loop_value();
        let mut terms: BTreeMap<StateKey, LaurentPoly> = BTreeMap::new();
        for s in states {
            let c = d.pow(s.disk_bounding as u32).shift(s.exponent);
            *terms.entry(s.key()).or_default() += &c;
        }
        terms.retain(|_, v| !v.is_zero());
        Self { genus, terms }
    }

    pub fn merge(mut self, other: Self) -> Self {
        for (k, v) in other.terms {
            *self.terms.entry(k).or_default() += &v;
        }
        self.terms.retain(|_, v| !v.is_zero());
        self
    }

    /// Replaces every remaining curve symbol by `d`. Equals `d` times the
    /// reduced planar bracket.
    pub fn collapse(&self) -> LaurentPoly {
        let d = LaurentPoly::loop_value();
        self.terms
            .iter()
            .map(|(k, v)| v * &d.pow((k.classes.len() + k.null_essential) as u32))
            .sum()
    }

    /// Distinct nonzero classes over the keys with nonzero coefficient, in
    /// key order, each with the index of the first key containing it.
    pub fn classes(&self) -> Vec<(usize, HomologyClass)> {
        let mut out: Vec<(usize, HomologyClass)> = Vec::new();
        for (i, k) in self.terms.keys().enumerate() {
            for c in &k.classes {
                if !out.iter().any(|(_, x)| x == c) {
                    out.push((i, c.clone()));
                }
            }
        }
        out
    }
}

impl Serialize for SurfaceBracket {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            classes: &'a [HomologyClass],
            null_essential: usize,
            coefficient: &'a LaurentPoly,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(k, v)| Term {
                classes: &k.classes,
                null_essential: k.null_essential,
                coefficient: v,
            })
            .collect();
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("convention", &self.convention())?;
        m.serialize_entry("genus", &self.genus)?;
        m.serialize_entry("terms", &terms)?;
        m.end()
    }
}

/// The surface bracket, summed over `parallel` ranges of states without
/// keeping the states.
pub fn surface_bracket(rep: &SurfaceRep, parallel: usize) -> SurfaceBracket {
    let n = rep.map().num_vertices();
    let genus = rep.genus();
    let ranges = split(1u64 << n, parallel);
    let parts: Vec<SurfaceBracket> = std::thread::scope(|s| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|r| {
                s.spawn(move || {
                    let states: Vec<SurfaceState> = r.map(|i| evaluate_state(rep, gray(i))).collect();
                    SurfaceBracket::from_states(genus, &states)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    parts
        .into_iter()
        .fold(SurfaceBracket { genus, terms: BTreeMap::new() }, SurfaceBracket::merge)
}
