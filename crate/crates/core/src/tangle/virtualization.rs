use std::fmt;

use serde::{Serialize, Serializer};

use super::{expand_tangle, Tangle, TangleError, TangleExpansion};
use crate::algebra::{solve_2x2_laurent, LaurentPoly};
use crate::analysis::{certify, Certificate, Verdict};
use crate::bracket::{f_polynomial, kauffman_bracket};
use crate::diagram::{SmoothingType, VirtualLinkDiagram};
use crate::surface::build_carter_surface;

/// Coefficients of the tangle left after removing one crossing, in the
/// basis of its two closures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaBeta {
    pub alpha: LaurentPoly,
    pub beta: LaurentPoly,
}

/// Solves `alpha + beta d = <K_alpha>` and `alpha d + beta = <K_beta>`, where
/// `K_alpha`, `K_beta` are the two smoothings of `k` at `v` (reduced
/// brackets), and checks `<K> = -A^-3 alpha - A^3 beta` and
/// `<K_s> = -A^3 alpha - A^-3 beta`.
pub fn alpha_beta_at_crossing(k: &VirtualLinkDiagram, v: u32) -> Result<AlphaBeta, TangleError> {
    let ka = kauffman_bracket(&k.smooth_crossing(v, SmoothingType::Alpha)?);
    let kb = kauffman_bracket(&k.smooth_crossing(v, SmoothingType::Beta)?);
    let one = LaurentPoly::one();
    let d = LaurentPoly::loop_value();
    let (alpha, beta) = solve_2x2_laurent(&one, &d, &d, &one, &ka, &kb)?;
    let m = |c: i64, e: i32| LaurentPoly::monomial(c, e);
    let bk = &(&m(-1, -3) * &alpha) + &(&m(-1, 3) * &beta);
    let bks = &(&m(-1, 3) * &alpha) + &(&m(-1, -3) * &beta);
    assert_eq!(bk, kauffman_bracket(k), "bracket identity at crossing {v}");
    assert_eq!(
        bks,
        kauffman_bracket(&k.switch_crossing(v)?),
        "switched bracket identity at crossing {v}"
    );
    Ok(AlphaBeta { alpha, beta })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ZeroCheck {
    AlphaZero,
    BetaZero,
    NeitherZero,
}

/// Decides which of `alpha`, `beta` vanishes from the brackets of `K` and
/// `K_s` alone: `alpha = 0` iff `<K> = A^6 <K_s>`, `beta = 0` iff
/// `<K> = A^-6 <K_s>`.
pub fn zerocor_check(bk: &LaurentPoly, bks: &LaurentPoly) -> Result<ZeroCheck, TangleError> {
    if bk.is_zero() && bks.is_zero() {
        return Err(TangleError::Ambiguous);
    }
    Ok(if *bk == bks.shift(6) {
        ZeroCheck::AlphaZero
    } else if *bk == bks.shift(-6) {
        ZeroCheck::BetaZero
    } else {
        ZeroCheck::NeitherZero
    })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum VirtualizationVerdict {
    NonClassical(usize),
    Undetected,
}

impl fmt::Display for VirtualizationVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VirtualizationVerdict::NonClassical(g) => write!(f, "NonClassical({g})"),
            VirtualizationVerdict::Undetected => f.write_str("Undetected"),
        }
    }
}

impl Serialize for VirtualizationVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VirtualizationReport {
    pub diagram: String,
    pub crossing: u32,
    pub alpha: LaurentPoly,
    pub beta: LaurentPoly,
    pub bracket: LaurentPoly,
    pub bracket_switched: LaurentPoly,
    pub bracket_virtualized: LaurentPoly,
    pub zero_check: ZeroCheck,
    /// `<K_v> = <K_s>`.
    pub brackets_agree: bool,
    /// The input has a genus-0 representation.
    pub classical_input: bool,
    pub verdict: VirtualizationVerdict,
    pub certificate: Option<Certificate>,
    pub certificate_agrees: Option<bool>,
}

fn agrees(v: VirtualizationVerdict, c: &Certificate) -> bool {
    match v {
        VirtualizationVerdict::NonClassical(g) => c.verdict == Verdict::NonClassical(g),
        VirtualizationVerdict::Undetected => c.verdict == Verdict::Inconclusive,
    }
}

/// `K_v` is non-classical of genus one when `K` is classical and both
/// `alpha` and `beta` are nonzero at `v`; otherwise nothing is claimed.
pub fn virtualization_report(
    k: &VirtualLinkDiagram,
    v: u32,
    run_certify: bool,
) -> Result<VirtualizationReport, TangleError> {
    let ab = alpha_beta_at_crossing(k, v)?;
    let ks = k.switch_crossing(v)?;
    let kv = k.virtualize_crossing(v)?;
    let bracket = kauffman_bracket(k);
    let bracket_switched = kauffman_bracket(&ks);
    let bracket_virtualized = kauffman_bracket(&kv);
    let zero_check = zerocor_check(&bracket, &bracket_switched)?;
    let classical_input = build_carter_surface(k).genus() == 0;
    let verdict = if classical_input && !ab.alpha.is_zero() && !ab.beta.is_zero() {
        VirtualizationVerdict::NonClassical(1)
    } else {
        VirtualizationVerdict::Undetected
    };
    let certificate = run_certify.then(|| certify(&kv));
    let certificate_agrees = certificate.as_ref().map(|c| agrees(verdict, c));
    Ok(VirtualizationReport {
        diagram: k.to_string(),
        crossing: v,
        alpha: ab.alpha,
        beta: ab.beta,
        brackets_agree: bracket_virtualized == bracket_switched,
        bracket,
        bracket_switched,
        bracket_virtualized,
        zero_check,
        classical_input,
        verdict,
        certificate,
        certificate_agrees,
    })
}

/// One of the four smoothings of the two virtualized crossings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FourState {
    pub smoothing: (SmoothingType, SmoothingType),
    pub coefficient: LaurentPoly,
    pub diagram: String,
    pub bracket: LaurentPoly,
    pub genus: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleVirtualizationReport {
    pub diagram: String,
    pub crossings: (u32, u32),
    pub bracket: LaurentPoly,
    pub bracket_switched: LaurentPoly,
    pub bracket_virtualized: LaurentPoly,
    pub fpoly_virtualized: LaurentPoly,
    pub genus_virtualized: usize,
    pub states: Vec<FourState>,
    /// The four states sum to the bracket of the virtualized diagram.
    pub states_sum: bool,
    pub tangle_expansion: Option<TangleExpansion>,
    pub certificate: Certificate,
    pub verdict: Verdict,
}

/// Virtualizes `v1` and `v2`, expands the result at those crossings and
/// certifies it. `tangle`, when given, is the complementary tangle and is
/// expanded for comparison.
pub fn double_virtualization_report(
    k: &VirtualLinkDiagram,
    v1: u32,
    v2: u32,
    tangle: Option<&Tangle>,
) -> Result<DoubleVirtualizationReport, TangleError> {
    if v1 == v2 {
        return Err(TangleError::Validation("the two crossings must differ".into()));
    }
    let ks = k.switch_crossing(v1)?.switch_crossing(v2)?;
    let kv = k.virtualize_crossing(v1)?.virtualize_crossing(v2)?;
    let bracket_virtualized = kauffman_bracket(&kv);
    let mut states = Vec::with_capacity(4);
    let types = [SmoothingType::Alpha, SmoothingType::Beta];
    let exponent = |t: SmoothingType| if t == SmoothingType::Alpha { 1 } else { -1 };
    let mut sum = LaurentPoly::zero();
    for t1 in types {
        for t2 in types {
            let s = kv.smooth_crossing(v1, t1)?.smooth_crossing(v2, t2)?;
            let coefficient = LaurentPoly::monomial(1, exponent(t1) + exponent(t2));
            let bracket = kauffman_bracket(&s);
            sum += &(&coefficient * &bracket);
            states.push(FourState {
                smoothing: (t1, t2),
                coefficient,
                diagram: s.to_string(),
                genus: build_carter_surface(&s).genus(),
                bracket,
            });
        }
    }
    let states_sum = sum == bracket_virtualized;
    let tangle_expansion = tangle.map(expand_tangle).transpose()?;
    let certificate = certify(&kv);
    Ok(DoubleVirtualizationReport {
        diagram: k.to_string(),
        crossings: (v1, v2),
        bracket: kauffman_bracket(k),
        bracket_switched: kauffman_bracket(&ks),
        fpoly_virtualized: f_polynomial(&kv),
        genus_virtualized: build_carter_surface(&kv).genus(),
        bracket_virtualized,
        states,
        states_sum,
        tangle_expansion,
        verdict: certificate.verdict,
        certificate,
    })
}
