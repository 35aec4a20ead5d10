use std::collections::BTreeMap;

use serde::Serialize;

use super::{PlanarMatching, Tangle, TangleError};
use crate::algebra::LaurentPoly;
use crate::diagram::darts::partner_role;
use crate::diagram::SmoothingType;

/// `sum_m c_m m` over non-crossing matchings `m` of the boundary points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct TangleExpansion {
    pub terms: BTreeMap<PlanarMatching, LaurentPoly>,
}

impl TangleExpansion {
    pub fn coefficient(&self, m: &PlanarMatching) -> LaurentPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Reduced bracket of the closure along `outer`: each matching closes
    /// into some number of loops and the first loop is not counted.
    pub fn close(&self, outer: &PlanarMatching) -> LaurentPoly {
        let d = LaurentPoly::loop_value();
        let mut total = LaurentPoly::zero();
        let mut empty = LaurentPoly::zero();
        for (m, c) in &self.terms {
            match m.loops_with(outer) {
                0 => empty += c,
                k => total += &(c * &d.pow(k as u32 - 1)),
            }
        }
        if !empty.is_zero() {
            // No boundary: every loop was counted inside the coefficient.
            total += &empty.divide_exact(&d).expect("closed tangles carry a factor d");
        }
        total
    }
}

/// State sum of the tangle: each smoothing contributes
/// `A^(#alpha - #beta) d^(closed loops)` to the matching it leaves.
pub fn expand_tangle(t: &Tangle) -> Result<TangleExpansion, TangleError> {
    if !t.is_classical() {
        return Err(TangleError::NonClassicalTangle);
    }
    let w = t.wiring();
    let nc = w.ids.len();
    let d = LaurentPoly::loop_value();
    let mut counts: BTreeMap<(Vec<(u32, u32)>, i32, usize), i64> = BTreeMap::new();
    let mut seen = vec![false; 4 * nc];
    for bits in 0..1u64 << nc {
        let partner = |x: usize| {
            let c = x / 4;
            let ty = if bits >> c & 1 == 1 {
                SmoothingType::Beta
            } else {
                SmoothingType::Alpha
            };
            4 * c + partner_role(w.signs[c], x % 4, ty)
        };
        seen.iter_mut().for_each(|s| *s = false);
        let mut pairs = Vec::with_capacity(w.points / 2);
        for b in 0..w.points {
            let mut y = w.alpha[4 * nc + b];
            while y < 4 * nc {
                seen[y] = true;
                let z = partner(y);
                seen[z] = true;
                y = w.alpha[z];
            }
            let e = y - 4 * nc;
            if b < e {
                pairs.push((b as u32 + 1, e as u32 + 1));
            }
        }
        let mut loops = w.free_loops;
        for x in 0..4 * nc {
            if seen[x] {
                continue;
            }
            loops += 1;
            let mut y = x;
            while !seen[y] {
                seen[y] = true;
                let z = partner(y);
                seen[z] = true;
                y = w.alpha[z];
            }
        }
        let exponent = nc as i32 - 2 * bits.count_ones() as i32;
        pairs.sort_unstable();
        *counts.entry((pairs, exponent, loops)).or_default() += 1;
    }
    let mut terms: BTreeMap<PlanarMatching, LaurentPoly> = BTreeMap::new();
    for ((pairs, exponent, loops), n) in counts {
        let m = PlanarMatching::new(pairs).expect("tracing yields a perfect matching");
        *terms.entry(m).or_default() += &d.pow(loops as u32).shift(exponent).scale(n);
    }
    terms.retain(|_, v| !v.is_zero());
    Ok(TangleExpansion { terms })
}
