//! Finite products `prod_l (1 - T^l)^{a_l}` with integer exponents.
//!
//! Every invariant in this crate (Poincaré series, orbit invariant, the
//! relative zeta functions and their duals) lives in this multiplicative
//! group, so identities between them reduce to equality of exponent maps.

use crate::error::{Error, Result};
use crate::json::JsonInt;
use crate::series::TruncSeries;
use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::de::Deserializer;
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Canonical form: keys are cycle lengths `l >= 1` in ascending order,
/// values are nonzero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CycloProduct {
    factors: BTreeMap<u64, BigInt>,
}

impl CycloProduct {
    /// The constant 1.
    pub fn one() -> Self {
        CycloProduct::default()
    }

    /// `(1 - T^l)^a`.
    pub fn factor(l: u64, a: impl Into<BigInt>) -> Result<Self> {
        if l == 0 {
            return Err(Error::ZeroCycleLength);
        }
        let a = a.into();
        let mut factors = BTreeMap::new();
        if !a.is_zero() {
            factors.insert(l, a);
        }
        Ok(CycloProduct { factors })
    }

    /// Builds a product from `(l, a)` pairs, summing exponents of repeated lengths.
    pub fn from_factors<I, A>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, A)>,
        A: Into<BigInt>,
    {
        let mut out = CycloProduct::one();
        for (l, a) in pairs {
            if l == 0 {
                return Err(Error::ZeroCycleLength);
            }
            out.add_exponent(l, a.into());
        }
        Ok(out)
    }

    fn add_exponent(&mut self, l: u64, a: BigInt) {
        if a.is_zero() {
            return;
        }
        let slot = self.factors.entry(l).or_default();
        *slot += a;
        if slot.is_zero() {
            self.factors.remove(&l);
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Factors in ascending order of cycle length.
    pub fn factors(&self) -> impl Iterator<Item = (u64, &BigInt)> + '_ {
        self.factors.iter().map(|(&l, a)| (l, a))
    }

    /// Exponent of `(1 - T^l)`, zero when absent.
    pub fn exponent(&self, l: u64) -> BigInt {
        self.factors.get(&l).cloned().unwrap_or_default()
    }

    pub fn mul(&self, other: &CycloProduct) -> CycloProduct {
        let mut out = self.clone();
        for (&l, a) in &other.factors {
            out.add_exponent(l, a.clone());
        }
        out
    }

    pub fn inv(&self) -> CycloProduct {
        CycloProduct {
            factors: self.factors.iter().map(|(&l, a)| (l, -a)).collect(),
        }
    }

    pub fn pow(&self, k: impl Into<BigInt>) -> CycloProduct {
        let k = k.into();
        if k.is_zero() {
            return CycloProduct::one();
        }
        CycloProduct {
            factors: self.factors.iter().map(|(&l, a)| (l, a * &k)).collect(),
        }
    }

    /// `T -> T^k`.
    pub fn substitute(&self, k: u64) -> Result<CycloProduct> {
        if k == 0 {
            return Err(Error::ZeroSubstitution);
        }
        let mut factors = BTreeMap::new();
        for (&l, a) in &self.factors {
            let key = l
                .checked_mul(k)
                .ok_or_else(|| Error::Input(format!("cycle length {l}*{k} overflows u64")))?;
            factors.insert(key, a.clone());
        }
        Ok(CycloProduct { factors })
    }

    /// Saito dual of level `d`: `(1 - T^l)^a` becomes `(1 - T^{d/l})^{-a}`.
    ///
    /// Defined only when every cycle length divides `d`; the first offending
    /// length (ascending) is reported otherwise.
    pub fn saito_dual(&self, d: u64) -> Result<CycloProduct> {
        if d == 0 {
            return Err(Error::ZeroLevel);
        }
        let mut out = CycloProduct::one();
        for (&l, a) in &self.factors {
            if !d.is_multiple_of(l) {
                return Err(Error::DualLevel { key: l, level: d });
            }
            out.add_exponent(d / l, -a);
        }
        Ok(out)
    }

    /// `sum_l l * a_l`, the degree of the product as a rational function.
    pub fn degree(&self) -> BigInt {
        self.factors.iter().map(|(&l, a)| a * BigInt::from(l)).sum()
    }

    /// True when every cycle length divides `d`.
    pub fn supported_on_divisors_of(&self, d: u64) -> bool {
        d != 0 && self.factors.keys().all(|l| d.is_multiple_of(*l))
    }

    /// Exact integer coefficients of the expansion through `T^order`.
    pub fn expand_integers(&self, order: usize) -> Vec<BigInt> {
        if let Some(small) = expand_with::<i128>(self, order) {
            return small.into_iter().map(BigInt::from).collect();
        }
        expand_with::<BigInt>(self, order).expect("bignum expansion cannot overflow")
    }

    /// Power-series expansion through `T^order`.
    pub fn expand(&self, order: usize) -> TruncSeries {
        TruncSeries::from_integers(self.expand_integers(order))
    }
}

/// Coefficient ring for [`expand_with`]: `None` from any operation means overflow.
trait ExpandCoeff: Clone + Zero + One + CheckedAdd + CheckedSub + CheckedMul + CheckedDiv {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn from_u64(v: u64) -> Option<Self>;
}

impl ExpandCoeff for i128 {
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
    fn from_u64(v: u64) -> Option<Self> {
        Some(v as i128)
    }
}

impl ExpandCoeff for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn from_u64(v: u64) -> Option<Self> {
        Some(BigInt::from(v))
    }
}

fn expand_with<C: ExpandCoeff>(p: &CycloProduct, order: usize) -> Option<Vec<C>> {
    let mut c = vec![C::zero(); order + 1];
    c[0] = C::one();
    for (&l, a) in &p.factors {
        let Ok(l) = usize::try_from(l) else { continue };
        if l > order {
            continue;
        }
        let reach = order / l;
        let mag = a.magnitude();
        // Repeated single passes cost |a|*order, the binomial route reach*order.
        let passes = mag.to_usize().filter(|&m| m <= reach + 1);
        match passes {
            Some(m) => {
                for _ in 0..m {
                    if a.is_positive() {
                        for i in (l..=order).rev() {
                            c[i] = c[i].checked_sub(&c[i - l])?;
                        }
                    } else {
                        for i in l..=order {
                            c[i] = c[i].checked_add(&c[i - l])?;
                        }
                    }
                }
            }
            None => {
                let b = binomial_series::<C>(a, reach)?;
                let mut next = vec![C::zero(); order + 1];
                for (i, ci) in c.iter().enumerate() {
                    if ci.is_zero() {
                        continue;
                    }
                    for (k, bk) in b.iter().enumerate() {
                        let idx = i + k * l;
                        if idx > order {
                            break;
                        }
                        next[idx] = next[idx].checked_add(&ci.checked_mul(bk)?)?;
                    }
                }
                c = next;
            }
        }
    }
    Some(c)
}

/// Coefficients of `(1 - x)^a` for `x^0..=x^reach`.
fn binomial_series<C: ExpandCoeff>(a: &BigInt, reach: usize) -> Option<Vec<C>> {
    let mut out = Vec::with_capacity(reach + 1);
    let mut cur = C::one();
    out.push(cur.clone());
    if a.is_positive() {
        // (1-x)^a = sum (-1)^k C(a,k) x^k, which stops at k = a.
        let a_c = C::from_big(a)?;
        for k in 0..reach {
            let k_c = C::from_u64(k as u64)?;
            if a_c.checked_sub(&k_c)?.is_zero() {
                out.extend(std::iter::repeat_with(C::zero).take(reach - k));
                break;
            }
            // cur holds (-1)^k C(a,k); next is -(cur * (a-k)) / (k+1).
            let step = cur
                .checked_mul(&a_c.checked_sub(&k_c)?)?
                .checked_div(&C::from_u64(k as u64 + 1)?)?;
            cur = C::zero().checked_sub(&step)?;
            out.push(cur.clone());
        }
    } else {
        // (1-x)^{-n} = sum C(n+k-1,k) x^k.
        let n_c = C::from_big(&-a)?;
        for k in 0..reach {
            let k_c = C::from_u64(k as u64)?;
            cur = cur
                .checked_mul(&n_c.checked_add(&k_c)?)?
                .checked_div(&C::from_u64(k as u64 + 1)?)?;
            out.push(cur.clone());
        }
    }
    Some(out)
}

impl fmt::Display for CycloProduct {
    /// `(1-T^12)(1-T^26)/((1-T^4)(1-T^6)(1-T^13))`; exponents above one in
    /// absolute value are written `(1-T^4)^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn binom(l: u64, e: &BigInt) -> String {
            let base = if l == 1 {
                "(1-T)".to_string()
            } else {
                format!("(1-T^{l})")
            };
            if e.is_one() {
                base
            } else {
                format!("{base}^{e}")
            }
        }
        let num: Vec<String> = self
            .factors
            .iter()
            .filter(|(_, a)| a.is_positive())
            .map(|(&l, a)| binom(l, a))
            .collect();
        let den: Vec<String> = self
            .factors
            .iter()
            .filter(|(_, a)| a.is_negative())
            .map(|(&l, a)| binom(l, &-a))
            .collect();
        let num = if num.is_empty() {
            "1".to_string()
        } else {
            num.concat()
        };
        match den.len() {
            0 => f.write_str(&num),
            1 => write!(f, "{num}/{}", den[0]),
            _ => write!(f, "{num}/({})", den.concat()),
        }
    }
}

impl Serialize for CycloProduct {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<(u64, JsonInt)> = self
            .factors
            .iter()
            .map(|(&l, a)| (l, JsonInt(a.clone())))
            .collect();
        let mut st = s.serialize_struct("CycloProduct", 1)?;
        st.serialize_field("factors", &pairs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for CycloProduct {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            factors: Vec<(u64, JsonInt)>,
        }
        let raw = Raw::deserialize(d)?;
        CycloProduct::from_factors(raw.factors.into_iter().map(|(l, a)| (l, a.0)))
            .map_err(serde::de::Error::custom)
    }
}

impl std::ops::Mul for &CycloProduct {
    type Output = CycloProduct;
    fn mul(self, rhs: &CycloProduct) -> CycloProduct {
        CycloProduct::mul(self, rhs)
    }
}
