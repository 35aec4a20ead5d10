use std::fmt;

use serde::{Serialize, Serializer};

use super::{mod2_span_criterion, per_torus_criterion, surface_bracket, Criterion};
use crate::bracket::Convention;
use crate::diagram::{p_family, VirtualLinkDiagram};
use crate::surface::{build_carter_surface, SurfaceRep};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Not equivalent to a classical link, and nontrivial; the payload is
    /// the genus of the representation used.
    NonClassical(usize),
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::NonClassical(g) => write!(f, "NonClassical({g})"),
            Verdict::Inconclusive => f.write_str("Inconclusive"),
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Verdict::NonClassical(_) => "NonClassical",
            Verdict::Inconclusive => "Inconclusive",
        })
    }
}

/// Field order is fixed for stable JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub genus: usize,
    pub criteria: Vec<Criterion>,
    /// Canonical signed Gauss code.
    pub diagram: String,
    pub convention: Convention,
}

/// A representation of positive genus none of whose state curves can be
/// cancelled: either every torus summand carries two algebraically meeting
/// curves, or the curves span homology mod 2. Both conditions are invariant
/// under isotopy in the surface and homeomorphisms of it. Failure of both
/// is reported as inconclusive, never as classical.
pub fn certify_rep(d: &VirtualLinkDiagram, rep: &SurfaceRep, parallel: usize) -> Certificate {
    let genus = rep.genus();
    let diagram = d.canonical().to_string();
    if genus == 0 {
        return Certificate {
            verdict: Verdict::Inconclusive,
            genus,
            criteria: Vec::new(),
            diagram,
            convention: Convention::Unreduced,
        };
    }
    let sb = surface_bracket(rep, parallel);
    let criteria = vec![per_torus_criterion(&sb), mod2_span_criterion(&sb)];
    let verdict = if criteria.iter().any(|c| c.satisfied) {
        Verdict::NonClassical(genus)
    } else {
        Verdict::Inconclusive
    };
    Certificate {
        verdict,
        genus,
        criteria,
        diagram,
        convention: Convention::Unreduced,
    }
}

pub fn certify(d: &VirtualLinkDiagram) -> Certificate {
    certify_parallel(d, 1)
}

pub fn certify_parallel(d: &VirtualLinkDiagram, parallel: usize) -> Certificate {
    certify_rep(d, &build_carter_surface(d), parallel)
}

/// Certificate for the `n`-th member of the twisted Kishino family.
pub fn family_report(n: usize) -> Certificate {
    certify(&p_family(n))
}
