//! Exponent systems, dual exponents and sharp Young constants.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on the exponent sum conditions.
pub const SUM_TOL: f64 = 1e-12;

/// `p' = p / (p - 1)`; `1' = inf`, `inf' = 1`, negative for `0 < p < 1`.
pub fn dual_exponent(p: f64) -> Result<f64> {
    if p.is_nan() || p <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "p",
            value: p,
            reason: "exponent must be positive",
        });
    }
    Ok(if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    })
}

/// `C_p^d` with `C_p^2 = p^{1/p} / |p'|^{1/p'}`; `C_1 = C_inf = 1`.
pub fn sharp_constant(p: f64, d: u32) -> Result<f64> {
    let q = dual_exponent(p)?;
    if p == 1.0 || p.is_infinite() {
        return Ok(1.0);
    }
    let c2 = p.powf(p.recip()) / q.abs().powf(q.recip());
    Ok(c2.sqrt().powi(d as i32))
}

/// `C_{r'}^d` for a target index `r`, evaluated as `1 / C_r^d`.
///
/// For `r > 1` this is the forward constant at `r'`. For `0 < r < 1` the dual is
/// negative and the symmetric form `|r'|^{1/r'} / |r|^{1/r}` is the one that
/// reproduces the Gaussian value of the reverse inequality.
pub fn dual_sharp_constant(r: f64, d: u32) -> Result<f64> {
    Ok(sharp_constant(r, d)?.recip())
}

/// `(C_p C_q C_{r'})^d`.
pub fn young_constant(p: f64, q: f64, r: f64, d: u32) -> Result<f64> {
    Ok(sharp_constant(p, d)? * sharp_constant(q, d)? * dual_sharp_constant(r, d)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `L^inf` (Brascamp-Lieb) case: `sum 1/p_j = n - 1`.
    Sup,
    /// Young: `1 < p_j, r`, `sum 1/p_j = n - 1 + 1/r`.
    Forward,
    /// Reverse Young: `0 < p_j, r < 1`.
    Reverse,
    /// Sup-convolution: `sum 1/q_j = 1`.
    Prekopa,
    /// Entropy weights: `sum gamma_j = 1`.
    Entropy,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Sup => "sup",
            Regime::Forward => "forward",
            Regime::Reverse => "reverse",
            Regime::Prekopa => "prekopa",
            Regime::Entropy => "entropy",
        })
    }
}

/// Validated exponents with their derived duals, diffusion coefficients and powers.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentSystem {
    regime: Regime,
    exponents: Vec<f64>,
    r: f64,
    dimension: u32,
    scale: f64,
    duals: Vec<f64>,
    kappas: Vec<f64>,
    powers: Vec<f64>,
}

impl ExponentSystem {
    /// `r` is ignored except for the forward and reverse regimes.
    /// A forward system with `r = inf` is stored as [`Regime::Sup`].
    pub fn new(regime: Regime, exponents: Vec<f64>, r: f64, dimension: u32, scale: f64) -> Result<Self> {
        let n = exponents.len();
        if n < 2 {
            return Err(Error::InvalidExponents(format!("need n >= 2 exponents, got {n}")));
        }
        if dimension == 0 {
            return Err(Error::InvalidExponents("dimension must be >= 1".into()));
        }
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidExponents(format!("scale must be positive, got {scale}")));
        }
        if exponents.iter().any(|p| p.is_nan()) || r.is_nan() {
            return Err(Error::InvalidExponents("NaN exponent".into()));
        }
        let regime = match regime {
            Regime::Forward if r.is_infinite() => Regime::Sup,
            other => other,
        };
        let r = match regime {
            Regime::Sup => f64::INFINITY,
            Regime::Forward | Regime::Reverse => r,
            Regime::Prekopa | Regime::Entropy => 1.0,
        };
        let inv_sum: f64 = exponents.iter().map(|p| p.recip()).sum();
        let nf = n as f64;
        let check_sum = |got: f64, want: f64, what: &str| -> Result<()> {
            if (got - want).abs() > SUM_TOL {
                Err(Error::InvalidExponents(format!("{what}: sum is {got}, expected {want}")))
            } else {
                Ok(())
            }
        };
        let range_err = |what: &str| Error::InvalidExponents(format!("{regime} regime: {what}"));
        match regime {
            Regime::Sup => {
                if exponents.iter().any(|&p| p < 1.0) {
                    return Err(range_err("need 1 <= p_j <= inf"));
                }
                check_sum(inv_sum, nf - 1.0, "sum 1/p_j")?;
            }
            Regime::Forward => {
                if exponents.iter().any(|&p| p <= 1.0) || r <= 1.0 {
                    return Err(range_err("need 1 < p_j <= inf and 1 < r <= inf"));
                }
                check_sum(inv_sum, nf - 1.0 + r.recip(), "sum 1/p_j")?;
            }
            Regime::Reverse => {
                if exponents.iter().any(|&p| !(p > 0.0 && p < 1.0)) || !(r > 0.0 && r < 1.0) {
                    return Err(range_err("need 0 < p_j < 1 and 0 < r < 1"));
                }
                check_sum(inv_sum, nf - 1.0 + r.recip(), "sum 1/p_j")?;
            }
            Regime::Prekopa => {
                if exponents.iter().any(|&q| !(q > 1.0 && q.is_finite())) {
                    return Err(range_err("need 1 < q_j < inf"));
                }
                check_sum(inv_sum, 1.0, "sum 1/q_j")?;
            }
            Regime::Entropy => {
                if exponents.iter().any(|&g| !(g > 0.0)) {
                    return Err(range_err("need gamma_j > 0"));
                }
                check_sum(exponents.iter().sum(), 1.0, "sum gamma_j")?;
            }
        }
        let duals = match regime {
            Regime::Entropy => Vec::new(),
            _ => exponents
                .iter()
                .map(|&p| dual_exponent(p))
                .collect::<Result<Vec<_>>>()?,
        };
        let kappas: Vec<f64> = match regime {
            Regime::Sup | Regime::Forward | Regime::Reverse => exponents
                .iter()
                .zip(&duals)
                .map(|(&p, &q)| scale / (p * q.abs()))
                .collect(),
            Regime::Prekopa => exponents.iter().map(|&q| scale / (q * q)).collect(),
            Regime::Entropy => exponents.iter().map(|&g| scale * g).collect(),
        };
        let powers = match regime {
            Regime::Entropy => vec![1.0; n],
            _ => exponents.iter().map(|p| p.recip()).collect(),
        };
        Ok(Self {
            regime,
            exponents,
            r,
            dimension,
            scale,
            duals,
            kappas,
            powers,
        })
    }

    pub fn sup(p: Vec<f64>) -> Result<Self> {
        Self::new(Regime::Sup, p, f64::INFINITY, 1, 1.0)
    }

    pub fn forward(p: Vec<f64>, r: f64) -> Result<Self> {
        Self::new(Regime::Forward, p, r, 1, 1.0)
    }

    pub fn reverse(p: Vec<f64>, r: f64) -> Result<Self> {
        Self::new(Regime::Reverse, p, r, 1, 1.0)
    }

    pub fn prekopa(q: Vec<f64>) -> Result<Self> {
        Self::new(Regime::Prekopa, q, 1.0, 1, 1.0)
    }

    pub fn entropy(gamma: Vec<f64>) -> Result<Self> {
        Self::new(Regime::Entropy, gamma, 1.0, 1, 1.0)
    }

    /// Same exponents with every diffusion coefficient multiplied by `scale`.
    pub fn with_scale(self, scale: f64) -> Result<Self> {
        Self::new(self.regime, self.exponents, self.r, self.dimension, scale)
    }

    pub fn with_dimension(self, dimension: u32) -> Result<Self> {
        Self::new(self.regime, self.exponents, self.r, dimension, self.scale)
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn n(&self) -> usize {
        self.exponents.len()
    }

    /// `p_j`, `q_j` or `gamma_j` depending on the regime.
    pub fn exponents(&self) -> &[f64] {
        &self.exponents
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Dual exponents (empty for the entropy regime).
    pub fn duals(&self) -> &[f64] {
        &self.duals
    }

    pub fn kappas(&self) -> &[f64] {
        &self.kappas
    }

    /// Powers `alpha_j` applied to each evolved input before convolving.
    pub fn powers(&self) -> &[f64] {
        &self.powers
    }

    pub fn describe(&self) -> String {
        let ex: Vec<String> = self.exponents.iter().map(|p| format!("{p:.6}")).collect();
        match self.regime {
            Regime::Forward | Regime::Reverse => {
                format!("{} p=({}) r={:.6} C={}", self.regime, ex.join(","), self.r, self.scale)
            }
            _ => format!("{} ({}) C={}", self.regime, ex.join(","), self.scale),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duals() {
        assert_eq!(dual_exponent(2.0).unwrap(), 2.0);
        assert!((dual_exponent(4.0 / 3.0).unwrap() - 4.0).abs() < 1e-12);
        assert!((dual_exponent(2.0 / 3.0).unwrap() + 2.0).abs() < 1e-12);
        assert_eq!(dual_exponent(1.0).unwrap(), f64::INFINITY);
        assert_eq!(dual_exponent(f64::INFINITY).unwrap(), 1.0);
        assert!(dual_exponent(0.0).is_err());
        assert!(dual_exponent(-1.0).is_err());
    }

    #[test]
    fn sharp_constants_against_high_precision() {
        // 30-digit mpmath evaluations of p^{1/p} / |p'|^{1/p'}
        assert_eq!(sharp_constant(2.0, 1).unwrap(), 1.0);
        assert!((sharp_constant(4.0, 1).unwrap() - 1.067_592_398_098_351_4).abs() < 1e-14);
        assert!((sharp_constant(2.0 / 3.0, 1).unwrap() - 0.877_382_675_301_661_6).abs() < 1e-14);
        assert!((sharp_constant(1.5, 1).unwrap() - 0.953_184_292_996_936_6).abs() < 1e-14);
        assert!((sharp_constant(4.0 / 3.0, 1).unwrap() - 0.936_687_074_375_248_1).abs() < 1e-14);
        assert_eq!(sharp_constant(1.0, 3).unwrap(), 1.0);
        assert_eq!(sharp_constant(f64::INFINITY, 3).unwrap(), 1.0);
        assert!((sharp_constant(4.0, 2).unwrap() - 1.067_592_398_098_351_4f64.powi(2)).abs() < 1e-13);
        assert!(sharp_constant(0.0, 1).is_err());
    }

    #[test]
    fn sharp_constant_sides_of_one() {
        for k in 1..200 {
            let p = 1.0 + 0.05 * k as f64;
            let c = sharp_constant(p, 1).unwrap();
            if p < 2.0 {
                assert!(c < 1.0, "p={p}");
            } else if p > 2.0 {
                assert!(c > 1.0, "p={p}");
            }
        }
        // below 1 the constant is not one-sided: it dips under 1 and then overshoots near 1^-
        assert!(sharp_constant(0.5, 1).unwrap() < 1.0);
        assert!(sharp_constant(0.75, 1).unwrap() < 1.0);
        assert!(sharp_constant(0.9, 1).unwrap() > 1.0);
        for p in [1.0 - 1e-9, 1.0 + 1e-9, 1e9] {
            assert!((sharp_constant(p, 1).unwrap() - 1.0).abs() < 1e-6, "p={p}");
        }
        assert!(sharp_constant(0.1, 1).unwrap() < 0.6);
    }

    #[test]
    fn conjugate_constants_cancel() {
        for p in [1.2, 1.5, 2.0, 3.0, 7.0] {
            let q = dual_exponent(p).unwrap();
            let prod = sharp_constant(p, 1).unwrap() * sharp_constant(q, 1).unwrap();
            assert!((prod - 1.0).abs() < 1e-14);
        }
        assert!((dual_sharp_constant(0.5, 1).unwrap() - 2.0).abs() < 1e-14);
        assert_eq!(dual_sharp_constant(2.0, 1).unwrap(), 1.0);
        assert_eq!(young_constant(1.0, 1.0, 1.0, 1).unwrap(), 1.0);
    }

    #[test]
    fn regimes_assign_coefficients() {
        let sup = ExponentSystem::sup(vec![1.5; 3]).unwrap();
        for k in sup.kappas() {
            assert!((k - 2.0 / 9.0).abs() < 1e-15);
        }
        let fwd = ExponentSystem::forward(vec![4.0 / 3.0; 2], 2.0).unwrap();
        assert!((fwd.kappas()[0] - 3.0 / 16.0).abs() < 1e-15);
        let rev = ExponentSystem::reverse(vec![2.0 / 3.0; 2], 0.5).unwrap();
        assert!((rev.kappas()[1] - 0.75).abs() < 1e-15);
        assert!((rev.duals()[0] + 2.0).abs() < 1e-12);
        let pl = ExponentSystem::prekopa(vec![2.0, 2.0]).unwrap();
        assert_eq!(pl.kappas(), &[0.25, 0.25]);
        assert_eq!(pl.powers(), &[0.5, 0.5]);
        let ent = ExponentSystem::entropy(vec![0.25, 0.75]).unwrap().with_scale(2.0).unwrap();
        assert_eq!(ent.kappas(), &[0.5, 1.5]);
        assert_eq!(ent.powers(), &[1.0, 1.0]);
        let collapsed = ExponentSystem::forward(vec![2.0, 2.0], f64::INFINITY).unwrap();
        assert_eq!(collapsed.regime(), Regime::Sup);
        for (p, q) in sup.exponents().iter().zip(sup.duals()) {
            assert!((p.recip() + q.recip() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn regimes_reject_violations() {
        assert!(ExponentSystem::sup(vec![1.5, 1.5]).is_err());
        assert!(ExponentSystem::sup(vec![1.5, 1.5, 1.5 + 1e-9]).is_err());
        assert!(ExponentSystem::sup(vec![0.9, 1.5, 1.5]).is_err());
        assert!(ExponentSystem::sup(vec![2.0]).is_err());
        assert!(ExponentSystem::forward(vec![4.0 / 3.0; 2], 3.0).is_err());
        assert!(ExponentSystem::reverse(vec![2.0 / 3.0; 2], 2.0).is_err());
        assert!(ExponentSystem::prekopa(vec![3.0, 3.0]).is_err());
        assert!(ExponentSystem::entropy(vec![0.5, 0.6]).is_err());
        assert!(ExponentSystem::entropy(vec![0.5, 0.5]).unwrap().with_scale(0.0).is_err());
    }
}
