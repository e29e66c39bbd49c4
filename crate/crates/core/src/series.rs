//! Truncated power series with exact rational coefficients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::de::Deserializer;
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// `c_0 + c_1 T + ... + c_N T^N`, everything above `T^N` discarded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<BigRational>,
}

impl TruncSeries {
    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// Panics on an empty coefficient list; a series always has a constant term.
    pub fn from_rationals(coeffs: Vec<BigRational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "series needs at least the constant term"
        );
        TruncSeries { coeffs }
    }

    pub fn from_integers<I>(coeffs: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<BigInt>,
    {
        Self::from_rationals(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Option<&BigRational> {
        self.coeffs.get(k)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Keep only the terms up to `T^order` (no-op if already shorter).
    pub fn truncate(&self, order: usize) -> Self {
        let keep = (order + 1).min(self.coeffs.len());
        TruncSeries {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    /// Product truncated at the smaller of the two orders.
    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        let order = self.order().min(other.order());
        let mut out = vec![BigRational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncSeries { coeffs: out }
    }

    /// `exp(sum_{n>=1} a_n T^n / n)` through `T^order`, where `a[0]` is `a_1`.
    ///
    /// Uses `m c_m = sum_{n=1}^{m} a_n c_{m-n}`, `c_0 = 1`.
    pub fn exp_of_power_sums(a: &[BigInt], order: usize) -> TruncSeries {
        let mut c: Vec<BigRational> = Vec::with_capacity(order + 1);
        c.push(BigRational::one());
        for m in 1..=order {
            let mut acc = BigRational::zero();
            for n in 1..=m.min(a.len()) {
                let an = &a[n - 1];
                if !an.is_zero() {
                    acc += &c[m - n] * BigRational::from_integer(an.clone());
                }
            }
            c.push(acc / BigRational::from_integer(BigInt::from(m)));
        }
        TruncSeries { coeffs: c }
    }

    /// Expansion of `num / den` for integer polynomials (ascending
    /// coefficients) with `den(0) = 1`. Returns `None` when `den(0) != 1`.
    pub fn from_polynomial_ratio(num: &[BigInt], den: &[BigInt], order: usize) -> Option<Self> {
        if den.first().map(|c| c.is_one()) != Some(true) {
            return None;
        }
        let mut out: Vec<BigInt> = Vec::with_capacity(order + 1);
        for m in 0..=order {
            let mut v = num.get(m).cloned().unwrap_or_default();
            for k in 1..=m.min(den.len().saturating_sub(1)) {
                if !den[k].is_zero() {
                    v -= &den[k] * &out[m - k];
                }
            }
            out.push(v);
        }
        Some(Self::from_integers(out))
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigRational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one();
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        f.write_str("T")?;
                    } else {
                        write!(f, "T^{k}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(T^{})", self.order() + 1)
    }
}

impl Serialize for TruncSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        let mut st = s.serialize_struct("TruncSeries", 2)?;
        st.serialize_field("order", &self.order())?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for TruncSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            order: usize,
            coeffs: Vec<String>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.coeffs.len() != raw.order + 1 {
            return Err(serde::de::Error::custom(format!(
                "series of order {} needs {} coefficients, got {}",
                raw.order,
                raw.order + 1,
                raw.coeffs.len()
            )));
        }
        let coeffs = raw
            .coeffs
            .iter()
            .map(|c| {
                BigRational::from_str(c.trim())
                    .map_err(|_| serde::de::Error::custom(format!("bad coefficient {c:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TruncSeries { coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &TruncSeries) -> Vec<i64> {
        s.to_integers()
            .unwrap()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn exp_of_constant_power_sums_is_geometric() {
        // exp(sum T^n / n) = 1/(1-T)
        let a = vec![BigInt::one(); 8];
        assert_eq!(ints(&TruncSeries::exp_of_power_sums(&a, 8)), vec![1; 9]);
    }

    #[test]
    fn exp_can_be_non_integral() {
        // exp(T) = 1 + T + T^2/2 + ...
        let s = TruncSeries::exp_of_power_sums(&[BigInt::one()], 3);
        assert!(!s.is_integral());
        assert_eq!(s.coeff(2).unwrap(), &BigRational::new(1.into(), 2.into()));
        assert_eq!(s.coeff(3).unwrap(), &BigRational::new(1.into(), 6.into()));
    }

    #[test]
    fn polynomial_ratio() {
        // (1+T+T^2)/(1-T) = 1 + 2T + 3T^2 + 3T^3 + ...
        let num: Vec<BigInt> = vec![1.into(), 1.into(), 1.into()];
        let den: Vec<BigInt> = vec![1.into(), (-1).into()];
        let s = TruncSeries::from_polynomial_ratio(&num, &den, 5).unwrap();
        assert_eq!(ints(&s), vec![1, 2, 3, 3, 3, 3]);
        assert!(TruncSeries::from_polynomial_ratio(&num, &[2.into()], 3).is_none());
    }

    #[test]
    fn json_shape() {
        let s = TruncSeries::from_rationals(vec![
            BigRational::one(),
            BigRational::new((-1).into(), 2.into()),
        ]);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"order":1,"coeffs":["1","-1/2"]}"#);
        let back: TruncSeries = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<TruncSeries>(r#"{"order":2,"coeffs":["1"]}"#).is_err());
    }

    #[test]
    fn display() {
        let s = TruncSeries::from_integers(vec![1, -1, 0, 2]);
        assert_eq!(s.to_string(), "1 - T + 2*T^3 + O(T^4)");
    }
}
