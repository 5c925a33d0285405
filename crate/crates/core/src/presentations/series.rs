use std::fmt;

use serde::{Deserialize, Serialize};

/// Integer power series in `t` (indexed by weight) truncated after `t^cap`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TruncatedSeries {
    coeffs: Vec<i64>,
}

impl TruncatedSeries {
    pub fn from_coeffs(coeffs: Vec<i64>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series keeps at least t^0");
        TruncatedSeries { coeffs }
    }

    pub fn one(cap: u32) -> Self {
        let mut coeffs = vec![0; cap as usize + 1];
        coeffs[0] = 1;
        TruncatedSeries { coeffs }
    }

    /// `Π_w 1/(1 - t^w)` over the given weights.
    pub fn inverse_product(weights: impl IntoIterator<Item = u32>, cap: u32) -> Self {
        let mut s = TruncatedSeries::one(cap);
        for w in weights {
            let w = w as usize;
            assert!(w > 0, "weights must be positive");
            for i in w..s.coeffs.len() {
                s.coeffs[i] += s.coeffs[i - w];
            }
        }
        s
    }

    /// Poincaré series of `H^*(BU(n))` in weights: `Π_{i=1}^{n} 1/(1 - t^i)`.
    pub fn bu(n: u32, cap: u32) -> Self {
        TruncatedSeries::inverse_product(1..=n, cap)
    }

    pub fn cap(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coefficient(&self, w: u32) -> i64 {
        self.coeffs.get(w as usize).copied().unwrap_or(0)
    }

    /// Cauchy product, truncated to the shorter input.
    pub fn mul(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let len = self.coeffs.len().min(other.coeffs.len());
        let mut out = vec![0i64; len];
        for (i, a) in self.coeffs.iter().take(len).enumerate() {
            for (j, b) in other.coeffs.iter().take(len - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            first = false;
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "t")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.coeffs.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bu_series() {
        assert_eq!(TruncatedSeries::bu(2, 4).coeffs(), &[1, 1, 2, 2, 3]);
        assert_eq!(TruncatedSeries::bu(3, 3).coeffs(), &[1, 1, 2, 3]);
        assert_eq!(TruncatedSeries::bu(1, 3).coeffs(), &[1, 1, 1, 1]);
    }

    #[test]
    fn convolution() {
        let a = TruncatedSeries::bu(2, 4);
        let ones = TruncatedSeries::from_coeffs(vec![1; 5]);
        assert_eq!(a.mul(&ones).coeffs(), &[1, 2, 4, 6, 9]);
        let b = TruncatedSeries::from_coeffs(vec![1, 1, 2, 2]);
        assert_eq!(TruncatedSeries::bu(3, 3).mul(&b).coeffs(), &[1, 2, 5, 9]);
    }

    #[test]
    fn display() {
        let s = TruncatedSeries::from_coeffs(vec![1, 2, 0, -1]);
        assert_eq!(s.to_string(), "1 + 2t - t^3 + O(t^4)");
    }
}
