use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::TangleError;

/// A perfect matching of boundary points `1..=2n`, stored as sorted pairs
/// `(a, b)` with `a < b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanarMatching(Vec<(u32, u32)>);

impl PlanarMatching {
    pub fn new(mut pairs: Vec<(u32, u32)>) -> Result<Self, TangleError> {
        for p in &mut pairs {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        pairs.sort_unstable();
        let n = 2 * pairs.len() as u32;
        let mut seen = vec![false; n as usize + 1];
        for &(a, b) in &pairs {
            for x in [a, b] {
                if x == 0 || x > n || std::mem::replace(&mut seen[x as usize], true) {
                    return Err(TangleError::Validation(format!(
                        "{x} is not a free point of 1..={n}"
                    )));
                }
            }
        }
        Ok(Self(pairs))
    }

    /// All non-crossing matchings of `points` points in increasing order of
    /// their pair lists. There are Catalan-many: 2 for four points, 14 for
    /// eight.
    pub fn all(points: usize) -> Vec<Self> {
        fn rec(free: &[u32], out: &mut Vec<Vec<(u32, u32)>>) {
            let Some((&first, rest)) = free.split_first() else {
                out.push(Vec::new());
                return;
            };
            for k in (0..rest.len()).step_by(2) {
                let mut inner = Vec::new();
                rec(&rest[..k], &mut inner);
                let mut outer = Vec::new();
                rec(&rest[k + 1..], &mut outer);
                for i in &inner {
                    for o in &outer {
                        let mut m = vec![(first, rest[k])];
                        m.extend_from_slice(i);
                        m.extend_from_slice(o);
                        m.sort_unstable();
                        out.push(m);
                    }
                }
            }
        }
        assert!(points % 2 == 0, "odd number of boundary points");
        let free: Vec<u32> = (1..=points as u32).collect();
        let mut out = Vec::new();
        rec(&free, &mut out);
        let mut all: Vec<Self> = out.into_iter().map(Self).collect();
        all.sort();
        all
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn num_points(&self) -> usize {
        2 * self.0.len()
    }

    /// `partners()[i]` is the zero-based partner of zero-based point `i`.
    pub fn partners(&self) -> Vec<usize> {
        let mut p = vec![0; self.num_points()];
        for &(a, b) in &self.0 {
            p[a as usize - 1] = b as usize - 1;
            p[b as usize - 1] = a as usize - 1;
        }
        p
    }

    /// No two chords interleave around the circle.
    pub fn is_noncrossing(&self) -> bool {
        self.0.iter().all(|&(a, b)| {
            self.0
                .iter()
                .all(|&(c, d)| !(a < c && c < b && b < d) && !(c < a && a < d && d < b))
        })
    }

    /// Closed loops formed by joining `self` inside the disk to `outer`
    /// outside it.
    pub fn loops_with(&self, outer: &PlanarMatching) -> usize {
        let inner = self.partners();
        let outer = outer.partners();
        let mut seen = vec![false; inner.len()];
        let mut loops = 0;
        for start in 0..inner.len() {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                let y = inner[x];
                seen[y] = true;
                x = outer[y];
            }
        }
        loops
    }
}

impl fmt::Display for PlanarMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in &self.0 {
            write!(f, "({a}-{b})")?;
        }
        Ok(())
    }
}

impl FromStr for PlanarMatching {
    type Err = TangleError;

    /// Parses the `(1-2)(3-4)` form.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TangleError::Validation(format!("malformed matching '{s}'"));
        let s = s.trim();
        let body = s.strip_prefix('(').and_then(|b| b.strip_suffix(')')).ok_or_else(bad)?;
        let pairs = body
            .split(")(")
            .map(|p| {
                let (a, b) = p.split_once('-').ok_or_else(bad)?;
                Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
            })
            .collect::<Result<Vec<_>, TangleError>>()?;
        Self::new(pairs)
    }
}

impl Serialize for PlanarMatching {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
