//! Planar Kauffman bracket, writhe normalization and the Jones polynomial.
//!
//! The bracket here is reduced: a crossingless one-component diagram has
//! bracket 1 and every state contributes `A^c d^(loops - 1)`. The surface
//! bracket in [`crate::analysis`] keeps one `d` per disk-bounding curve
//! instead; the two differ by one factor of `d`.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::LaurentPoly;
use crate::diagram::{DartGraph, SmoothingType, VirtualLinkDiagram};
use crate::unionfind::UnionFind;

/// Bracket normalization.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// Unknot has bracket 1.
    Reduced,
    /// Every loop, including the last, contributes a factor `d`.
    Unreduced,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Reduced => "reduced",
            Convention::Unreduced => "unreduced",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BracketValue {
    pub value: LaurentPoly,
    pub convention: Convention,
}

impl BracketValue {
    pub fn of(d: &VirtualLinkDiagram, convention: Convention, parallel: usize) -> Self {
        let reduced = kauffman_bracket_parallel(d, parallel);
        let value = match convention {
            Convention::Reduced => reduced,
            Convention::Unreduced => &reduced * &LaurentPoly::loop_value(),
        };
        Self { value, convention }
    }
}

/// Number of states with a given `(c(s), loop count)`.
pub type StateHistogram = HashMap<(i32, u32), u64>;

/// Gray code of `i`: consecutive indices differ in one smoothing.
pub fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

/// Counts `(c(s), loops)` over the states with Gray index in `range`.
pub fn state_histogram(graph: &DartGraph, range: std::ops::Range<u64>) -> StateHistogram {
    let n = graph.num_crossings();
    let darts = graph.num_darts();
    let mut hist = StateHistogram::new();
    let mut uf = UnionFind::new(darts);
    // Per crossing, the partner pairs for alpha and beta.
    let pairs: Vec<[[(usize, usize); 2]; 2]> = (0..n)
        .map(|c| {
            let mk = |ty| {
                let a = 4 * c + 1;
                let b = 4 * c;
                let first = (a, graph.smoothing_partner(a, ty));
                let second = if first.1 == b || first.0 == b {
                    (4 * c + 2, graph.smoothing_partner(4 * c + 2, ty))
                } else {
                    (b, graph.smoothing_partner(b, ty))
                };
                [first, second]
            };
            [mk(SmoothingType::Alpha), mk(SmoothingType::Beta)]
        })
        .collect();
    for i in range {
        let bits = gray(i);
        uf.reset();
        for d in 0..darts {
            uf.union(d, graph.alpha(d));
        }
        let mut beta = 0i32;
        for (c, p) in pairs.iter().enumerate() {
            let b = (bits >> c & 1) as usize;
            beta += b as i32;
            for &(x, y) in &p[b] {
                uf.union(x, y);
            }
        }
        let loops = uf.count_sets() as u32 + graph.free_loops() as u32;
        *hist.entry((n as i32 - 2 * beta, loops)).or_default() += 1;
    }
    hist
}

/// Splits `0..2^n` into `parts` ranges and merges the histograms.
pub fn parallel_histogram(graph: &DartGraph, parts: usize) -> StateHistogram {
    let total = 1u64 << graph.num_crossings();
    let parts = parts.max(1) as u64;
    let chunk = total.div_ceil(parts);
    let ranges: Vec<_> = (0..parts)
        .map(|p| (p * chunk).min(total)..((p + 1) * chunk).min(total))
        .filter(|r| !r.is_empty())
        .collect();
    if ranges.len() <= 1 {
        return state_histogram(graph, 0..total);
    }
    let partials: Vec<StateHistogram> = std::thread::scope(|s| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|r| s.spawn(move || state_histogram(graph, r)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut merged = StateHistogram::new();
    for part in partials {
        for (k, v) in part {
            *merged.entry(k).or_default() += v;
        }
    }
    merged
}

fn histogram_to_bracket(hist: &StateHistogram) -> LaurentPoly {
    let d = LaurentPoly::loop_value();
    let max_loops = hist.keys().map(|k| k.1).max().unwrap_or(1);
    let powers: Vec<LaurentPoly> = std::iter::successors(Some(LaurentPoly::one()), |p| Some(p * &d))
        .take(max_loops as usize)
        .collect();
    let mut out = LaurentPoly::zero();
    for (&(c, loops), &count) in hist {
        out += &powers[loops as usize - 1].shift(c).scale(count as i64);
    }
    out
}

/// Reduced Kauffman bracket by the full state sum.
pub fn kauffman_bracket(d: &VirtualLinkDiagram) -> LaurentPoly {
    kauffman_bracket_parallel(d, 1)
}

pub fn kauffman_bracket_parallel(d: &VirtualLinkDiagram, parallel: usize) -> LaurentPoly {
    let graph = DartGraph::new(d);
    histogram_to_bracket(&parallel_histogram(&graph, parallel))
}

/// Reduced bracket by expanding one crossing at a time, memoized on the
/// canonical code of each partially smoothed diagram.
pub fn bracket_by_recursion(d: &VirtualLinkDiagram) -> LaurentPoly {
    fn go(d: &VirtualLinkDiagram, memo: &mut HashMap<String, LaurentPoly>) -> LaurentPoly {
        let Some(&id) = d.crossing_ids().first() else {
            return LaurentPoly::loop_value().pow(d.num_components() as u32 - 1);
        };
        let key = d.canonical().to_string();
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let a = d.smooth_crossing(id, SmoothingType::Alpha).expect("crossing exists");
        let b = d.smooth_crossing(id, SmoothingType::Beta).expect("crossing exists");
        let v = &go(&a, memo).shift(1) + &go(&b, memo).shift(-1);
        memo.insert(key, v.clone());
        v
    }
    go(d, &mut HashMap::new())
}

/// `(-A)^(-3w) <K>`, invariant under all Reidemeister moves.
pub fn f_polynomial(d: &VirtualLinkDiagram) -> LaurentPoly {
    f_polynomial_parallel(d, 1)
}

pub fn f_polynomial_parallel(d: &VirtualLinkDiagram, parallel: usize) -> LaurentPoly {
    let w = d.writhe();
    let norm = LaurentPoly::monomial(if w % 2 == 0 { 1 } else { -1 }, (-3 * w) as i32);
    &norm * &kauffman_bracket_parallel(d, parallel)
}

/// The Jones polynomial kept in `A`; substitute `t = A^-4` for `V(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JonesPolynomial {
    pub in_a: LaurentPoly,
}

impl JonesPolynomial {
    /// `V` in integer powers of `t`, when every `A`-exponent is a multiple
    /// of 4 (always true for knots).
    pub fn in_t(&self) -> Option<LaurentPoly> {
        self.in_a
            .to_t_exponents()
            .map(|terms| LaurentPoly::from_terms(terms))
    }

    pub fn render(&self) -> String {
        match self.in_t() {
            Some(t) => t.render_in("t"),
            None => self.in_a.to_string(),
        }
    }
}

pub fn jones(d: &VirtualLinkDiagram) -> JonesPolynomial {
    jones_parallel(d, 1)
}

pub fn jones_parallel(d: &VirtualLinkDiagram, parallel: usize) -> JonesPolynomial {
    JonesPolynomial {
        in_a: f_polynomial_parallel(d, parallel),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("1 - V(t) is not divisible by (1 - t)(1 - t^3)")]
pub struct NotDivisible;

/// Returns `W` with `1 - V = W (1 - t)(1 - t^3)`. Both polynomials use the
/// exponent of `t`.
pub fn jones_divisibility(v_in_t: &LaurentPoly) -> Result<LaurentPoly, NotDivisible> {
    let num = &LaurentPoly::one() - v_in_t;
    let den = LaurentPoly::from_terms([(0, 1), (1, -1), (3, -1), (4, 1)]);
    num.divide_exact(&den).map_err(|_| NotDivisible)
}
