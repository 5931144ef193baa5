//! The orbit-point count in a ball of radius `r`, in log space.

use serde::Serialize;

use crate::{constant_a, constant_b, constant_c1, constant_c2, ln_binom, Result, Variant};

/// `log(2M e^{3 C2 r} (1 + A + F)^{3r})`.
pub fn log_orbit_bound(m: u64, big_m: u64, y0: f64, r: u32, variant: Variant) -> Result<f64> {
    let a = constant_a(m, big_m)?;
    let f = constant_b(m, big_m, variant)?.max(constant_c1(m, big_m, variant)?);
    let c2 = constant_c2(big_m, y0)?;
    let r = r as f64;
    Ok((2.0 * big_m as f64).ln() + 3.0 * c2 * r + 3.0 * r * (1.0 + a + f).ln())
}

/// Logs of the three successive bounds on `|P^j|`, per `k` and summed.
#[derive(Clone, Debug, Serialize)]
pub struct ChainTerms {
    pub r: u32,
    pub j: u32,
    /// `log` of the `k`-th summand of the first and second bounds.
    pub eq1: Vec<f64>,
    pub eq2: Vec<f64>,
    pub eq1_sum: f64,
    pub eq2_sum: f64,
    pub eq3: f64,
}

fn log_sum_exp(xs: &[f64]) -> f64 {
    let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return max;
    }
    max + xs.iter().map(|x| (x - max).exp()).sum::<f64>().ln()
}

/// Terms for given `A`, `F`, `C2`:
/// `A^k F^{j-k} e^{3 C2 r} C(j,k) C(r + j - floor(3k/2) - 1, j - k - 1)`,
/// `C(r+j, j) e^{3 C2 r} A^k F^{j-k} C(j,k)`, and `C(r+j, j) e^{3 C2 r} (A + F)^j`.
pub fn chain_terms(r: u32, j: u32, a: f64, f: f64, c2: f64) -> ChainTerms {
    let (ri, ji) = (r as i64, j as i64);
    let base = 3.0 * c2 * r as f64;
    let lead = ln_binom(ri + ji, ji);
    let mut eq1 = Vec::new();
    let mut eq2 = Vec::new();
    for k in 0..=ji {
        let pw = k as f64 * a.ln() + (ji - k) as f64 * f.ln() + base + ln_binom(ji, k);
        eq1.push(pw + ln_binom(ri + ji - (3 * k) / 2 - 1, ji - k - 1));
        eq2.push(pw + lead);
    }
    let eq1_sum = log_sum_exp(&eq1);
    let eq2_sum = log_sum_exp(&eq2);
    let eq3 = lead + base + j as f64 * (a + f).ln();
    ChainTerms { r, j, eq1, eq2, eq1_sum, eq2_sum, eq3 }
}

impl ChainTerms {
    /// `eq1 <= eq2` termwise and `eq2 <= eq3` in total, with a relative slack
    /// for the binomial-theorem equality.
    pub fn holds(&self) -> bool {
        let tol = 1e-9 * self.eq3.abs().max(1.0);
        self.eq1.iter().zip(&self.eq2).all(|(x, y)| *x <= *y + tol) && self.eq1_sum <= self.eq2_sum + tol && self.eq2_sum <= self.eq3 + tol
    }
}

/// Chain terms with the constants of `(m, M, y0)`.
pub fn chain_terms_for(m: u64, big_m: u64, y0: f64, r: u32, j: u32, variant: Variant) -> Result<ChainTerms> {
    let a = constant_a(m, big_m)?;
    let f = constant_b(m, big_m, variant)?.max(constant_c1(m, big_m, variant)?);
    Ok(chain_terms(r, j, a, f, constant_c2(big_m, y0)?))
}
