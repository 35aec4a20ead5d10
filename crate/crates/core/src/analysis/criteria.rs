use serde::Serialize;

use super::SurfaceBracket;
use crate::algebra::mod2_rank;
use crate::surface::HomologyClass;

/// The symplectic basis a criterion was evaluated in.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisChoice {
    /// The basis computed from the surface.
    Computed,
    /// The computed basis moved by the transvection `x -> x + (u . x) u`
    /// with `u = e_i + e_j`.
    Transvection { i: usize, j: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusWitness {
    pub torus: usize,
    /// Indices of the surface-bracket keys holding the two curves.
    pub keys: (usize, usize),
    pub classes: (HomologyClass, HomologyClass),
    pub projections: ((i64, i64), (i64, i64)),
    pub intersection: i64,
    pub basis: BasisChoice,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanWitness {
    pub rank: usize,
    pub dimension: usize,
    pub classes: Vec<HomologyClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Torus(TorusWitness),
    Span(SpanWitness),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Criterion {
    pub name: &'static str,
    pub satisfied: bool,
    pub witnesses: Vec<Witness>,
}

pub const PER_TORUS: &str = "per_torus_intersection";
pub const MOD2_SPAN: &str = "mod2_span";

fn transvect(c: &HomologyClass, i: usize, j: usize) -> HomologyClass {
    let mut u = vec![0; c.coords.len()];
    u[i] = 1;
    u[j] = 1;
    let w = HomologyClass::new(u.clone()).intersection(c).expect("same rank");
    HomologyClass::new(c.coords.iter().zip(&u).map(|(x, y)| x + w * y).collect())
}

fn torus_witnesses(
    classes: &[(usize, HomologyClass)],
    genus: usize,
    basis: &BasisChoice,
) -> Option<Vec<TorusWitness>> {
    let mut out = Vec::new();
    for k in 1..=genus {
        let mut found = None;
        'search: for (p, (ki, ci)) in classes.iter().enumerate() {
            let (a, b) = ci.project_to_torus(k).ok()?;
            for (kj, cj) in &classes[p + 1..] {
                let (a2, b2) = cj.project_to_torus(k).ok()?;
                let det = a * b2 - b * a2;
                if det != 0 {
                    found = Some(TorusWitness {
                        torus: k,
                        keys: (*ki, *kj),
                        classes: (ci.clone(), cj.clone()),
                        projections: ((a, b), (a2, b2)),
                        intersection: det,
                        basis: basis.clone(),
                    });
                    break 'search;
                }
            }
        }
        out.push(found?);
    }
    Some(out)
}

/// For every torus summand, two curves from states with nonzero
/// coefficient whose projections meet algebraically. Retries in transvected
/// bases mixing two summands when the computed basis fails.
pub fn per_torus_criterion(sb: &SurfaceBracket) -> Criterion {
    let classes = sb.classes();
    let g = sb.genus;
    let mut choices = vec![BasisChoice::Computed];
    if g >= 2 {
        for i in 0..2 * g {
            for j in i + 1..2 * g {
                if i / 2 != j / 2 {
                    choices.push(BasisChoice::Transvection { i, j });
                }
            }
        }
    }
    if g > 0 {
        for choice in choices {
            let moved: Vec<(usize, HomologyClass)> = match choice {
                BasisChoice::Computed => classes.clone(),
                BasisChoice::Transvection { i, j } => classes
                    .iter()
                    .map(|(k, c)| (*k, transvect(c, i, j).canonical()))
                    .collect(),
            };
            if let Some(w) = torus_witnesses(&moved, g, &choice) {
                return Criterion {
                    name: PER_TORUS,
                    satisfied: true,
                    witnesses: w.into_iter().map(Witness::Torus).collect(),
                };
            }
        }
    }
    Criterion {
        name: PER_TORUS,
        satisfied: false,
        witnesses: Vec::new(),
    }
}

/// The curve classes of states with nonzero coefficient span first
/// homology with `Z/2` coefficients.
pub fn mod2_span_criterion(sb: &SurfaceBracket) -> Criterion {
    let classes: Vec<HomologyClass> = sb.classes().into_iter().map(|(_, c)| c).collect();
    let vectors: Vec<Vec<i64>> = classes.iter().map(|c| c.coords.clone()).collect();
    let rank = mod2_rank(&vectors);
    let dimension = 2 * sb.genus;
    Criterion {
        name: MOD2_SPAN,
        satisfied: sb.genus > 0 && rank == dimension,
        witnesses: vec![Witness::Span(SpanWitness {
            rank,
            dimension,
            classes,
        })],
    }
}
