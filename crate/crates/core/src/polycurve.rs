//! Equations of the monomial curve `C^Gamma` and of a plane branch with the
//! same semigroup obtained from it by deformation and elimination.
//!
//! With `z_i = t^{beta_i}` the monomial curve is cut out by
//! `f_i = z_i^{n_i} - prod_{j<i} z_j^{l_ij}`. Deforming `f_i = lambda_i z_{i+1}`
//! for `i < g`, with `lambda_i = s^{beta_{i+1} - n_i beta_i}`, lets every
//! `z_{i+1}` (`i >= 1`) be solved for, leaving one equation in `z_0, z_1, s`.

use crate::error::{Error, Result};
use crate::semigroup::BranchData;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::Serializer;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Sparse polynomial with integer coefficients in a fixed number of variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::var_power(nvars, index, 1)
    }

    pub fn var_power(nvars: usize, index: usize, k: u32) -> Self {
        assert!(
            index < nvars,
            "variable {index} out of range for {nvars} variables"
        );
        let mut exps = vec![0; nvars];
        exps[index] = k;
        Self::monomial(exps, 1)
    }

    pub fn monomial(exps: Vec<u32>, c: impl Into<BigInt>) -> Self {
        let nvars = exps.len();
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MultiPoly { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exps.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    fn check_arity(&self, other: &MultiPoly) {
        assert_eq!(
            self.nvars, other.nvars,
            "polynomials over different variable sets"
        );
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.check_arity(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.check_arity(other);
        let mut out = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut out = MultiPoly::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// Smallest exponent of variable `index` over all terms (`None` for zero).
    pub fn min_exponent(&self, index: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[index]).min()
    }

    /// Divide by `x_index^k`; every term must carry at least that power.
    pub fn div_var_power(&self, index: usize, k: u32) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[index] = e[index]
                        .checked_sub(k)
                        .expect("division by a variable power that does not divide");
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Sets variable `index` to zero.
    pub fn specialize_zero(&self, index: usize) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[index] == 0)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Compact rendering with the given variable names, terms in descending
    /// lexicographic order: `x^6-x^5*y*s^2-2*x^3*y^2+y^4` style.
    pub fn render(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars, "one name per variable");
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if c.is_negative() {
                out.push('-');
            } else if i > 0 {
                out.push('+');
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() {
                factors.push(mag.to_string());
            }
            for (v, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(names[v].to_string()),
                    _ => factors.push(format!("{}^{k}", names[v])),
                }
            }
            if factors.is_empty() {
                out.push('1');
            } else {
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl Serialize for MultiPoly {
    /// Term list `[[exponents], "coefficient"]`, ascending exponent order.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|(e, c)| (e, c.to_string())))
    }
}

/// Common weighted degree of all terms, `None` if the terms disagree or the
/// polynomial is zero.
pub fn weighted_degree(p: &MultiPoly, weights: &[i64]) -> Option<i64> {
    assert_eq!(weights.len(), p.nvars(), "one weight per variable");
    let mut degrees = p.terms.keys().map(|e| {
        e.iter()
            .zip(weights)
            .map(|(&k, &w)| k as i64 * w)
            .sum::<i64>()
    });
    let first = degrees.next()?;
    degrees.all(|d| d == first).then_some(first)
}

/// True iff `z_i = t^{beta_i}` kills `p`. Variables beyond `z_g` must not occur.
pub fn parametrization_check(p: &MultiPoly, bd: &BranchData) -> bool {
    let beta = bd.beta();
    let mut collected: BTreeMap<u64, BigInt> = BTreeMap::new();
    for (e, c) in &p.terms {
        if e.iter().skip(beta.len()).any(|&k| k != 0) {
            return false;
        }
        let t_exp: u64 = e.iter().zip(beta).map(|(&k, &b)| k as u64 * b).sum();
        *collected.entry(t_exp).or_default() += c;
    }
    collected.values().all(Zero::is_zero)
}

/// A polynomial expression kept in factored shape for printing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Var(usize),
    Pow(Box<Expr>, u32),
    /// Empty product is 1.
    Product(Vec<Expr>),
    /// `(negative, term)` pairs, in printing order.
    Sum(Vec<(bool, Expr)>),
}

impl Expr {
    pub fn expand(&self, nvars: usize) -> MultiPoly {
        match self {
            Expr::Var(i) => MultiPoly::var(nvars, *i),
            Expr::Pow(b, k) => b.expand(nvars).pow(*k),
            Expr::Product(fs) => fs
                .iter()
                .fold(MultiPoly::one(nvars), |acc, f| acc.mul(&f.expand(nvars))),
            Expr::Sum(ts) => ts.iter().fold(MultiPoly::zero(nvars), |acc, (neg, t)| {
                let t = t.expand(nvars);
                if *neg {
                    acc.sub(&t)
                } else {
                    acc.add(&t)
                }
            }),
        }
    }

    /// Top-level sums are spaced (`a - b`), nested ones are compact and
    /// parenthesised (`(y^2-x^3)^2`).
    pub fn render(&self, names: &[&str]) -> String {
        let mut out = String::new();
        self.write(names, true, &mut out);
        out
    }

    fn write(&self, names: &[&str], top: bool, out: &mut String) {
        match self {
            Expr::Var(i) => out.push_str(names[*i]),
            Expr::Pow(b, k) => {
                let wrap = matches!(**b, Expr::Sum(_) | Expr::Product(_));
                if wrap {
                    out.push('(');
                }
                b.write(names, false, out);
                if wrap {
                    out.push(')');
                }
                if *k != 1 {
                    let _ = write!(out, "^{k}");
                }
            }
            Expr::Product(fs) => {
                if fs.is_empty() {
                    out.push('1');
                }
                for (i, f) in fs.iter().enumerate() {
                    if i > 0 {
                        out.push('*');
                    }
                    if let Expr::Sum(_) = f {
                        out.push('(');
                        f.write(names, false, out);
                        out.push(')');
                    } else {
                        f.write(names, false, out);
                    }
                }
            }
            Expr::Sum(ts) => {
                for (i, (neg, t)) in ts.iter().enumerate() {
                    let sep = match (i, *neg, top) {
                        (0, true, _) => "-",
                        (0, false, _) => "",
                        (_, true, true) => " - ",
                        (_, false, true) => " + ",
                        (_, true, false) => "-",
                        (_, false, false) => "+",
                    };
                    out.push_str(sep);
                    if let Expr::Sum(_) = t {
                        out.push('(');
                        t.write(names, false, out);
                        out.push(')');
                    } else {
                        t.write(names, false, out);
                    }
                }
            }
        }
    }
}

/// `z^k`, collapsing trivial exponents.
fn power(base: Expr, k: u32) -> Option<Expr> {
    match k {
        0 => None,
        1 => Some(base),
        _ => Some(Expr::Pow(Box::new(base), k)),
    }
}

fn product(mut factors: Vec<Expr>) -> Expr {
    if factors.len() == 1 {
        factors.pop().unwrap()
    } else {
        Expr::Product(factors)
    }
}

/// Variable names used when printing equations of `bd`: `x, y, z` for
/// `g <= 2`, otherwise `z0, z1, ...`.
pub fn variable_names(bd: &BranchData) -> Vec<String> {
    if bd.g() <= 2 {
        ["x", "y", "z"][..=bd.g()]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        (0..=bd.g()).map(|i| format!("z{i}")).collect()
    }
}

/// `f_i = z_i^{n_i} - prod_{j<i} z_j^{l_ij}` as expressions in `z_0..z_g`.
pub fn monomial_equation_exprs(bd: &BranchData) -> Vec<Expr> {
    (1..=bd.g())
        .map(|i| {
            let lead = power(Expr::Var(i), bd.n_at(i) as u32).expect("n_i >= 2");
            let tail: Vec<Expr> = bd.l_matrix()[i - 1]
                .iter()
                .enumerate()
                .filter_map(|(j, &l)| power(Expr::Var(j), l as u32))
                .collect();
            Expr::Sum(vec![(false, lead), (true, product(tail))])
        })
        .collect()
}

/// `f_1, ..., f_g` as polynomials in `z_0..z_g`.
pub fn monomial_equations(bd: &BranchData) -> Vec<MultiPoly> {
    let nvars = bd.g() + 1;
    monomial_equation_exprs(bd)
        .iter()
        .map(|e| e.expand(nvars))
        .collect()
}

/// Result of eliminating `z_2, ..., z_g` from the deformed equations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elimination {
    /// Plane-curve equation in `(z_0, z_1, s)`.
    pub poly: MultiPoly,
    /// Same equation in factored form.
    pub expr: Expr,
    /// The power of `s` multiplied into `f_g` to clear denominators.
    pub cleared_power: u32,
}

/// Index of `s` in the eliminated equation's variables `(z_0, z_1, s)`.
pub const S_INDEX: usize = 2;

/// `s`-exponent of `lambda_i`: `beta_{i+1} - n_i beta_i`.
pub fn lambda_exponent(bd: &BranchData, i: usize) -> u32 {
    (bd.beta()[i + 1] - bd.d_at(i)) as u32
}

/// Substitution chain `z_{i+1} = f_i / lambda_i` followed by clearing the
/// `s`-denominator of `f_g`.
pub fn deform_and_eliminate(bd: &BranchData) -> Result<Elimination> {
    let g = bd.g();
    if g == 0 {
        return Err(Error::SmoothBranch);
    }
    let poly = eliminate_polynomial(bd);
    let expr = eliminate_expr(bd);
    Ok(Elimination {
        cleared_power: poly.1,
        poly: poly.0,
        expr,
    })
}

/// Each substituted `z_j` is a pair `(numerator, k)` meaning `numerator / s^k`.
type Fraction = (MultiPoly, u32);

fn eliminate_polynomial(bd: &BranchData) -> (MultiPoly, u32) {
    const NV: usize = 3;
    let g = bd.g();
    let mut z: Vec<Fraction> = vec![(MultiPoly::var(NV, 0), 0), (MultiPoly::var(NV, 1), 0)];

    let monomial = |z: &[Fraction], exps: &[(usize, u32)]| -> Fraction {
        exps.iter()
            .fold((MultiPoly::one(NV), 0), |(p, k), &(j, a)| {
                (p.mul(&z[j].0.pow(a)), k + a * z[j].1)
            })
    };
    let f = |z: &[Fraction], i: usize| -> Fraction {
        let lead = monomial(z, &[(i, bd.n_at(i) as u32)]);
        let tail_exps: Vec<(usize, u32)> = bd.l_matrix()[i - 1]
            .iter()
            .enumerate()
            .map(|(j, &l)| (j, l as u32))
            .collect();
        let tail = monomial(z, &tail_exps);
        let k = lead.1.max(tail.1);
        let s_lead = MultiPoly::var_power(NV, S_INDEX, k - lead.1);
        let s_tail = MultiPoly::var_power(NV, S_INDEX, k - tail.1);
        (lead.0.mul(&s_lead).sub(&tail.0.mul(&s_tail)), k)
    };

    for i in 1..g {
        let (num, k) = f(&z, i);
        z.push((num, k + lambda_exponent(bd, i)));
    }
    let (num, k) = f(&z, g);
    let common = num.min_exponent(S_INDEX).unwrap_or(0).min(k);
    (num.div_var_power(S_INDEX, common), k - common)
}

fn eliminate_expr(bd: &BranchData) -> Expr {
    let g = bd.g();
    let s = Expr::Var(S_INDEX);
    // (numerator expression, s-denominator) per z_j.
    let mut z: Vec<(Expr, u32)> = vec![(Expr::Var(0), 0), (Expr::Var(1), 0)];

    let f = |z: &[(Expr, u32)], i: usize| -> (Expr, u32) {
        let monomial = |exps: &[(usize, u32)]| -> (Vec<Expr>, u32) {
            let mut den = 0;
            let mut factors = Vec::new();
            for &(j, a) in exps {
                if let Some(p) = power(z[j].0.clone(), a) {
                    factors.push(p);
                }
                den += a * z[j].1;
            }
            (factors, den)
        };
        let (lead, lead_den) = monomial(&[(i, bd.n_at(i) as u32)]);
        let tail_exps: Vec<(usize, u32)> = bd.l_matrix()[i - 1]
            .iter()
            .enumerate()
            .map(|(j, &l)| (j, l as u32))
            .collect();
        let (tail, tail_den) = monomial(&tail_exps);
        let k = lead_den.max(tail_den);
        let with_s = |mut fs: Vec<Expr>, den: u32| {
            if let Some(p) = power(s.clone(), k - den) {
                fs.insert(0, p);
            }
            product(fs)
        };
        (
            Expr::Sum(vec![
                (false, with_s(lead, lead_den)),
                (true, with_s(tail, tail_den)),
            ]),
            k,
        )
    };

    for i in 1..g {
        let (num, k) = f(&z, i);
        z.push((num, k + lambda_exponent(bd, i)));
    }
    f(&z, g).0
}

/// Names for the eliminated equation's variables `(z_0, z_1, s)`.
pub fn eliminated_names(bd: &BranchData) -> [String; 3] {
    if bd.g() <= 2 {
        ["x".into(), "y".into(), "s".into()]
    } else {
        ["z0".into(), "z1".into(), "s".into()]
    }
}

/// JSON form of a polynomial: names plus the term list.
#[derive(Debug, Clone, Serialize)]
pub struct PolyJson {
    pub variables: Vec<String>,
    pub text: String,
    pub expanded: String,
    pub terms: MultiPoly,
}

impl PolyJson {
    pub fn new(expr: &Expr, names: &[String]) -> Self {
        let names_ref: Vec<&str> = names.iter().map(String::as_str).collect();
        let poly = expr.expand(names.len());
        PolyJson {
            variables: names.to_vec(),
            text: expr.render(&names_ref),
            expanded: poly.render(&names_ref),
            terms: poly,
        }
    }
}
