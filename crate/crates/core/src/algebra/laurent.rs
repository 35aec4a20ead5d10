use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::AlgebraError;

/// An integer Laurent polynomial in the bracket variable `A`.
///
/// Terms are stored sorted by exponent and zero coefficients are never kept,
/// so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `coef * A^exp`.
    pub fn monomial(coef: i64, exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if coef != 0 {
            terms.insert(exp, coef);
        }
        Self { terms }
    }

    /// The loop value `d = -A^2 - A^-2`.
    pub fn loop_value() -> Self {
        Self::from_terms([(2, -1), (-2, -1)])
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i32, coef: i64) {
        if coef == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(0);
        *entry += coef;
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0) == Some(&1)
    }

    pub fn coefficient(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// Iterates `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Returns `Some((coef, exp))` if the polynomial is a single term.
    pub fn as_monomial(&self) -> Option<(i64, i32)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(&e, &c)| (c, e))
        } else {
            None
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, &c)| (e, c * k)).collect(),
        }
    }

    /// Multiplies by `A^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one();
        for _ in 0..n {
            result = &result * self;
        }
        result
    }

    /// Substitutes `A -> A^k` (e.g. `k = -1` for the mirror image).
    pub fn substitute_power(&self, k: i32) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, &c)| (e * k, c)))
    }

    /// Exact quotient `self / den`, or `Indivisible` if `den` does not divide
    /// `self` in `Z[A, A^-1]`.
    pub fn divide_exact(&self, den: &Self) -> Result<Self, AlgebraError> {
        let (den_lo, den_lo_c) = match den.terms.iter().next() {
            Some((&e, &c)) => (e, c),
            None => return Err(AlgebraError::ZeroDivisor),
        };
        let den_hi = den.max_exp().unwrap();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        // Cancel the lowest term of the remainder at every step. Any exact
        // quotient lives in [num_lo - den_lo, num_hi - den_hi].
        while let Some((r_lo, r_c)) = rem.terms.iter().next().map(|(&e, &c)| (e, c)) {
            let r_hi = rem.max_exp().unwrap();
            if r_hi - r_lo < den_hi - den_lo || r_c % den_lo_c != 0 {
                return Err(AlgebraError::Indivisible);
            }
            let q = Self::monomial(r_c / den_lo_c, r_lo - den_lo);
            rem = &rem - &(&q * den);
            quot = &quot + &q;
        }
        Ok(quot)
    }

    /// Writes the polynomial in the Jones variable `t = A^-4`, returning
    /// `(coefficient, power of t)` pairs, or `None` if some exponent is not
    /// divisible by 4.
    pub fn to_t_exponents(&self) -> Option<Vec<(i32, i64)>> {
        let mut out: Vec<(i32, i64)> = Vec::with_capacity(self.terms.len());
        for (&e, &c) in self.terms.iter().rev() {
            if e % 4 != 0 {
                return None;
            }
            out.push((-e / 4, c));
        }
        Some(out)
    }

    /// Inverse of [`Self::to_t_exponents`]: builds the `A`-polynomial for
    /// `sum c * t^k` with `t = A^-4`.
    pub fn from_t_exponents<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Self {
        Self::from_terms(terms.into_iter().map(|(k, c)| (-4 * k, c)))
    }

    /// Renders in a variable other than `A`, e.g. `t` after exponent conversion.
    pub fn render_in(&self, var: &str) -> String {
        render_terms(self.terms.iter().rev().map(|(&e, &c)| (e, c)), var)
    }
}

fn render_terms<I: Iterator<Item = (i32, i64)>>(terms: I, var: &str) -> String {
    let mut s = String::new();
    for (i, (e, c)) in terms.enumerate() {
        let mag = c.unsigned_abs();
        if i == 0 {
            if c < 0 {
                s.push('-');
            }
        } else {
            s.push_str(if c < 0 { " - " } else { " + " });
        }
        match e {
            0 => s.push_str(&mag.to_string()),
            _ => {
                if mag != 1 {
                    s.push_str(&mag.to_string());
                }
                s.push_str(var);
                if e != 1 {
                    s.push('^');
                    s.push_str(&e.to_string());
                }
            }
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_in("A"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::monomial(c, 0)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, &c) in &rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, &c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut acc = LaurentPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

// JSON: {"-3": 1, "5": -1}, keys in increasing exponent order.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = BTreeMap::<i32, i64>::deserialize(d)?;
        Ok(Self::from_terms(raw))
    }
}

/// Solves
///
/// ```text
/// m11 x + m12 y = r1
/// m21 x + m22 y = r2
/// ```
///
/// over the fraction field of `Z[A, A^-1]` by Cramer's rule and insists that
/// both solutions are Laurent polynomials.
pub fn solve_2x2_laurent(
    m11: &LaurentPoly,
    m12: &LaurentPoly,
    m21: &LaurentPoly,
    m22: &LaurentPoly,
    r1: &LaurentPoly,
    r2: &LaurentPoly,
) -> Result<(LaurentPoly, LaurentPoly), AlgebraError> {
    let det = &(m11 * m22) - &(m12 * m21);
    if det.is_zero() {
        return Err(AlgebraError::SingularSystem);
    }
    let x_num = &(r1 * m22) - &(m12 * r2);
    let y_num = &(m11 * r2) - &(m21 * r1);
    let x = x_num.divide_exact(&det).map_err(|_| AlgebraError::NoLaurentSolution)?;
    let y = y_num.divide_exact(&det).map_err(|_| AlgebraError::NoLaurentSolution)?;
    Ok((x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(e: i32) -> LaurentPoly {
        LaurentPoly::monomial(1, e)
    }

    #[test]
    fn difference_of_squares() {
        let p = &a(1) + &a(-1);
        let q = &a(1) - &a(-1);
        assert_eq!(&p * &q, &a(2) - &a(-2));
    }

    #[test]
    fn loop_value_squared() {
        let d = LaurentPoly::loop_value();
        assert_eq!(&d * &d, LaurentPoly::from_terms([(4, 1), (0, 2), (-4, 1)]));
    }

    #[test]
    fn exact_division() {
        let num = &a(2) - &a(-2);
        let den = &a(1) - &a(-1);
        assert_eq!(num.divide_exact(&den).unwrap(), &a(1) + &a(-1));
        assert_eq!(
            LaurentPoly::one().divide_exact(&(&a(1) + &a(0))),
            Err(AlgebraError::Indivisible)
        );
        assert_eq!(LaurentPoly::zero().divide_exact(&den).unwrap(), LaurentPoly::zero());
        assert_eq!(num.divide_exact(&LaurentPoly::zero()), Err(AlgebraError::ZeroDivisor));
    }

    #[test]
    fn division_needs_integral_leading_quotient() {
        let num = LaurentPoly::from_terms([(0, 3), (1, 3)]);
        let den = LaurentPoly::from_terms([(0, 2), (1, 2)]);
        assert_eq!(num.divide_exact(&den), Err(AlgebraError::Indivisible));
    }

    #[test]
    fn skein_system_plug_through() {
        // -A^-3 x - A^3 y = r1, -A^3 x - A^-3 y = r2 with (x, y) = (A, 0)
        let m11 = LaurentPoly::monomial(-1, -3);
        let m12 = LaurentPoly::monomial(-1, 3);
        let m21 = LaurentPoly::monomial(-1, 3);
        let m22 = LaurentPoly::monomial(-1, -3);
        let r1 = &m11 * &a(1);
        let r2 = &m21 * &a(1);
        let (x, y) = solve_2x2_laurent(&m11, &m12, &m21, &m22, &r1, &r2).unwrap();
        assert_eq!(x, a(1));
        assert!(y.is_zero());
        let det = &(&m11 * &m22) - &(&m12 * &m21);
        assert_eq!(det, &a(-6) - &a(6));
    }

    #[test]
    fn singular_and_non_laurent_systems() {
        let one = LaurentPoly::one();
        assert_eq!(
            solve_2x2_laurent(&one, &one, &one, &one, &one, &one),
            Err(AlgebraError::SingularSystem)
        );
        // x + y = 1, x - y = 0 has x = y = 1/2.
        assert_eq!(
            solve_2x2_laurent(&one, &one, &one, &-&one, &one, &LaurentPoly::zero()),
            Err(AlgebraError::NoLaurentSolution)
        );
    }

    #[test]
    fn json_encoding() {
        let p = LaurentPoly::from_terms([(5, -1), (-3, 1)]);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"-3":1,"5":-1}"#);
        let back: LaurentPoly = serde_json::from_str(r#"{"-3":1,"5":-1,"7":0}"#).unwrap();
        assert_eq!(back, p);
        assert_eq!(serde_json::to_string(&LaurentPoly::zero()).unwrap(), "{}");
    }

    #[test]
    fn display() {
        let p = LaurentPoly::from_terms([(9, 1), (5, -2), (1, 2)]);
        assert_eq!(p.to_string(), "A^9 - 2A^5 + 2A");
        assert_eq!(LaurentPoly::from_terms([(-1, -1), (0, 3)]).to_string(), "3 - A^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    pub(crate) fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-8i32..8, -5i64..5), 0..6).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_axioms(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert!((&p + &-&p).is_zero());
            prop_assert!(p.terms().all(|(_, c)| c != 0));
        }

        #[test]
        fn divide_round_trip(q in arb_poly(), den in arb_poly()) {
            prop_assume!(!den.is_zero());
            let num = &q * &den;
            prop_assert_eq!(num.divide_exact(&den).unwrap(), q);
        }

        #[test]
        fn json_round_trip(p in arb_poly()) {
            let s = serde_json::to_string(&p).unwrap();
            prop_assert_eq!(serde_json::from_str::<LaurentPoly>(&s).unwrap(), p);
        }
    }
}
