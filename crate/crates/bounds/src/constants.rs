//! The constants `S1, A, B, C1, C2` and the bounds built from them.

use serde::Serialize;

use cxdim_hyperbolic::{prism_gap, y0::closed_form_threshold, CapKind};

use crate::{BoundError, Result};

/// Which form of `B` and `C1` to use. `Thm` carries the extra `+ m - 2`
/// inside the common factor; `Cor` drops it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    #[default]
    Thm,
    Cor,
}

impl std::str::FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "thm" => Ok(Variant::Thm),
            "cor" => Ok(Variant::Cor),
            _ => Err(format!("unknown constants variant `{s}` (expected thm or cor)")),
        }
    }
}

fn check(m: u64, big_m: u64) -> Result<(f64, f64)> {
    if m < 4 || big_m < 3 {
        return Err(BoundError::Domain(format!("need m >= 4 and M >= 3, got m = {m}, M = {big_m}")));
    }
    Ok((m as f64, big_m as f64))
}

pub fn constant_s1(m: u64, big_m: u64) -> Result<f64> {
    let (m, mm) = check(m, big_m)?;
    Ok(mm * (m * m - 3.0 * m + 2.0))
}

pub fn constant_a(m: u64, big_m: u64) -> Result<f64> {
    let (m, mm) = check(m, big_m)?;
    let inner = (m - 1.0) / 2.0 + (2.0 * mm - 5.0) + (2.0 * mm - 4.0) * (m - 3.0) + (2.0 * mm - 3.0) * (m - 3.0).powi(2) / 4.0;
    Ok(2.0 * mm * (m - 2.0).powi(2) * inner)
}

fn common_factor(m: f64, mm: f64, variant: Variant) -> f64 {
    let base = mm * (m.powi(3) - 5.0 * m * m + 8.0 * m - 4.0);
    match variant {
        Variant::Thm => base + m - 2.0,
        Variant::Cor => base,
    }
}

pub fn b0() -> f64 {
    32.0 * std::f64::consts::PI / (3.0 * 3f64.sqrt())
}

pub fn constant_b(m: u64, big_m: u64, variant: Variant) -> Result<f64> {
    let (m, mm) = check(m, big_m)?;
    Ok(b0() * common_factor(m, mm, variant))
}

pub fn constant_c1(m: u64, big_m: u64, variant: Variant) -> Result<f64> {
    let (m, mm) = check(m, big_m)?;
    Ok((4.0 * mm * mm - 6.0 * mm) * common_factor(m, mm, variant))
}

pub fn constant_c2(big_m: u64, y0: f64) -> Result<f64> {
    if big_m < 3 {
        return Err(BoundError::Domain(format!("need M >= 3, got {big_m}")));
    }
    Ok((2.0 * big_m as f64 - 3.0).ln() / prism_gap(y0)?)
}

/// Smallest `y0` for which every cap-vertex link is CAT(1).
pub fn y0_threshold() -> f64 {
    CapKind::ALL.iter().map(|&k| closed_form_threshold(k)).fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct LowerBound {
    pub value: f64,
    pub v: u64,
    pub h: u64,
}

/// `1 + log V / log H` with `V = floor((m-5)/3)`, `H = 2M - 1`.
pub fn lower_bound(m: u64, big_m: u64) -> Result<LowerBound> {
    if m < 11 || big_m < 3 {
        return Err(BoundError::Domain(format!("need m >= 11 and M >= 3, got m = {m}, M = {big_m}")));
    }
    lower_bound_with_v(m, big_m, (m - 5) / 3)
}

/// Same bound with an explicit vertical branching `V`, `m >= 3V + 5`.
pub fn lower_bound_with_v(m: u64, big_m: u64, v: u64) -> Result<LowerBound> {
    if v < 2 || m < 3 * v + 5 || big_m < 3 {
        return Err(BoundError::Domain(format!("need V >= 2, m >= 3V + 5, M >= 3; got V = {v}, m = {m}, M = {big_m}")));
    }
    let h = 2 * big_m - 1;
    Ok(LowerBound { value: 1.0 + (v as f64).ln() / (h as f64).ln(), v, h })
}

/// `3 C2 + 3 log(1 + A + F)`.
pub fn hausdorff_upper(m: u64, big_m: u64, y0: f64, variant: Variant) -> Result<f64> {
    let threshold = y0_threshold();
    if !(y0 >= threshold) {
        return Err(BoundError::Infeasible { y0, threshold });
    }
    let a = constant_a(m, big_m)?;
    let f = constant_b(m, big_m, variant)?.max(constant_c1(m, big_m, variant)?);
    Ok(3.0 * constant_c2(big_m, y0)? + 3.0 * (1.0 + a + f).ln())
}

/// `log(e^{-s + 3 C2} (1 + A + F)^3)`; negative iff the root test converges.
pub fn root_test_log_ratio(s: f64, m: u64, big_m: u64, y0: f64, variant: Variant) -> Result<f64> {
    let a = constant_a(m, big_m)?;
    let f = constant_b(m, big_m, variant)?.max(constant_c1(m, big_m, variant)?);
    Ok(-s + 3.0 * constant_c2(big_m, y0)? + 3.0 * (1.0 + a + f).ln())
}

/// `23 + 12 log m` for `M = 3`, `13 + 12 log m + 19 log M` for `M >= 4`.
pub fn cor_upper(m: u64, big_m: u64) -> Result<f64> {
    let (m, mm) = check(m, big_m)?;
    Ok(if big_m == 3 { 23.0 + 12.0 * m.ln() } else { 13.0 + 12.0 * m.ln() + 19.0 * mm.ln() })
}

/// The estimates taking the theorem's value to the corollary's, in order.
#[derive(Clone, Debug, Serialize)]
pub struct CorChain {
    pub m: u64,
    #[serde(rename = "M")]
    pub big_m: u64,
    /// `(description, value)`; the first entry is the theorem's bound at `y0 = 1.5`.
    pub steps: Vec<(String, f64)>,
    pub monotone: bool,
}

pub fn cor_chain(m: u64, big_m: u64) -> Result<CorChain> {
    let thm = hausdorff_upper(m, big_m, 1.5, Variant::Thm)?;
    let (mf, mm) = (m as f64, big_m as f64);
    let mut steps = vec![("3 C2 + 3 log(1 + A + F), y0 = 1.5".to_string(), thm)];
    if big_m == 3 {
        let l3 = 10.0 * 3f64.ln();
        steps.push(("10 log 3 + 3 log(27 m^4 + 60 m^3)".into(), l3 + 3.0 * (27.0 * mf.powi(4) + 60.0 * mf.powi(3)).ln()));
        steps.push(("10 log 3 + 3 log(42 m^4)".into(), l3 + 3.0 * (42.0 * mf.powi(4)).ln()));
        steps.push(("10 log 3 + 3 log 42 + 12 log m".into(), l3 + 3.0 * 42f64.ln() + 12.0 * mf.ln()));
    } else {
        let l = 10.0 * (2.0 * mm - 3.0).ln();
        steps.push((
            "10 log(2M-3) + 3 log(3 m^4 M^2 + 4 m^3 M^3)".into(),
            l + 3.0 * (3.0 * mf.powi(4) * mm * mm + 4.0 * mf.powi(3) * mm.powi(3)).ln(),
        ));
        steps.push(("10 log(2M-3) + 3 log(7 m^4 M^3)".into(), l + 3.0 * (7.0 * mf.powi(4) * mm.powi(3)).ln()));
        steps.push((
            "19 log M + 10 log 2 + 3 log 7 + 12 log m".into(),
            19.0 * mm.ln() + 10.0 * 2f64.ln() + 3.0 * 7f64.ln() + 12.0 * mf.ln(),
        ));
    }
    steps.push(("corollary bound".into(), cor_upper(m, big_m)?));
    let monotone = steps.windows(2).all(|w| w[0].1 <= w[1].1 + 1e-12);
    Ok(CorChain { m, big_m, steps, monotone })
}

/// `1 + log(m - 1) / log(2M - 5)`, for `M >= 4`.
pub fn bourdon_kleiner_upper(m: u64, big_m: u64) -> Result<f64> {
    if big_m < 4 {
        return Err(BoundError::NotApplicable(format!("needs M >= 4, got M = {big_m}")));
    }
    let (m, mm) = check(m, big_m)?;
    Ok(1.0 + (m - 1.0).ln() / (2.0 * mm - 5.0).ln())
}

#[derive(Clone, Debug, Serialize)]
pub struct DenseRow {
    #[serde(rename = "M")]
    pub big_m: u64,
    pub m: u64,
    pub lower: Option<f64>,
    pub upper: f64,
    pub lower_gap: Option<f64>,
    pub upper_gap: f64,
}

/// For each `M`, `m = ceil(M^Q)`; both bounds and their distance to `1 + Q`.
pub fn dense_set_table(q: f64, ms: &[u64]) -> Result<Vec<DenseRow>> {
    if !(q > 0.0) {
        return Err(BoundError::Domain(format!("need Q > 0, got {q}")));
    }
    ms.iter()
        .map(|&big_m| {
            let m = (big_m as f64).powf(q).ceil() as u64;
            let upper = bourdon_kleiner_upper(m.max(4), big_m)?;
            let lower = lower_bound(m, big_m).ok().map(|l| l.value);
            Ok(DenseRow {
                big_m,
                m,
                lower,
                upper,
                lower_gap: lower.map(|l| (1.0 + q - l).abs()),
                upper_gap: (upper - 1.0 - q).abs(),
            })
        })
        .collect()
}
