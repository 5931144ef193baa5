use serde::Serialize;

use cxdim_hyperbolic::prism_gap;

use crate::constants::*;
use crate::Result;

pub const DEFAULT_Y0: f64 = 1.5;

/// Every intermediate constant and bound for one `(m, M, y0)`.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub m: u64,
    #[serde(rename = "M")]
    pub big_m: u64,
    pub y0: f64,
    pub variant: Variant,
    #[serde(rename = "S1")]
    pub s1: f64,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "C1")]
    pub c1: f64,
    #[serde(rename = "C2")]
    pub c2: f64,
    #[serde(rename = "F")]
    pub f: f64,
    #[serde(rename = "D_y0")]
    pub d_y0: f64,
    pub lower: Option<f64>,
    pub lower_v: Option<u64>,
    pub lower_h: Option<u64>,
    pub hausdorff_upper: f64,
    pub cor_upper: f64,
    pub bourdon_kleiner: Option<f64>,
}

impl BoundReport {
    pub fn new(m: u64, big_m: u64, y0: f64, variant: Variant) -> Result<Self> {
        let b = constant_b(m, big_m, variant)?;
        let c1 = constant_c1(m, big_m, variant)?;
        let lower = lower_bound(m, big_m).ok();
        Ok(Self {
            m,
            big_m,
            y0,
            variant,
            s1: constant_s1(m, big_m)?,
            a: constant_a(m, big_m)?,
            b,
            c1,
            c2: constant_c2(big_m, y0)?,
            f: b.max(c1),
            d_y0: prism_gap(y0)?,
            lower: lower.map(|l| l.value),
            lower_v: lower.map(|l| l.v),
            lower_h: lower.map(|l| l.h),
            hausdorff_upper: hausdorff_upper(m, big_m, y0, variant)?,
            cor_upper: cor_upper(m, big_m)?,
            bourdon_kleiner: bourdon_kleiner_upper(m, big_m).ok(),
        })
    }

    /// Ordering and positivity checks that every report should satisfy.
    pub fn sane(&self) -> bool {
        let positive = [self.s1, self.a, self.b, self.c1, self.c2, self.f, self.d_y0].iter().all(|x| *x > 0.0);
        let ordered = self.lower.map_or(true, |l| l < self.hausdorff_upper && l < self.cor_upper);
        positive && ordered && self.f == self.b.max(self.c1)
    }
}
