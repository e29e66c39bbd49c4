//! Poincaré series, orbit invariant, relative zeta functions and their Saito
//! duals for a plane branch, together with verifiers for the identities that
//! tie them together.
//!
//! Conventions: `Z` is the monodromy zeta function of the branch, `Z~` its
//! relative variant with `Z~ = (1-T)^{-1} Z^{-1}`, and `zeta~_j` the zeta
//! function of the monodromy of `f_j` on the pair `(X^(j-1), F^(j))` of the
//! monomial curve.

use crate::cyclo::CycloProduct;
use crate::error::{Error, Result};
use crate::semigroup::BranchData;
use serde::Serialize;
use std::fmt;

/// Hilbert series of the monomial complete intersection:
/// `prod_j (1-T^{d_j}) / prod_i (1-T^{beta_i})`.
pub fn poincare(bd: &BranchData) -> CycloProduct {
    let num = bd.d().iter().map(|&d| (d, 1i64));
    let den = bd.beta().iter().map(|&b| (b, -1i64));
    CycloProduct::from_factors(num.chain(den)).expect("generators are positive")
}

/// Orbit invariant of the monomial curve, `(1-T)` for every branch.
pub fn orbit_invariant(_bd: &BranchData) -> CycloProduct {
    one_minus_t(1)
}

fn one_minus_t(a: i64) -> CycloProduct {
    CycloProduct::factor(1, a).expect("length 1")
}

/// `(1-T^{beta_g})(1-T^{n_g}) / ((1-T^{d_g})(1-T))`.
pub fn zeta_tilde_top(bd: &BranchData) -> Result<CycloProduct> {
    let g = bd.g();
    if g == 0 {
        return Err(Error::SmoothBranch);
    }
    CycloProduct::from_factors([
        (bd.beta()[g], 1i64),
        (bd.n_at(g), 1),
        (bd.d_at(g), -1),
        (1, -1),
    ])
}

/// `zeta~_j`, computed on the `j`-th approximate branch.
pub fn zeta_tilde(bd: &BranchData, j: usize) -> Result<CycloProduct> {
    zeta_tilde_top(&bd.truncate(j)?)
}

/// `(zeta~_j)^{*_{d_j}}`: the dual at the level `d_j / e_j` of the approximate
/// branch, pulled back along `T -> T^{e_j}`.
pub fn dual_at_full_level(bd: &BranchData, j: usize) -> Result<CycloProduct> {
    let zt = zeta_tilde(bd, j)?;
    let ej = bd.e()[j];
    let level = bd.d_at(j) / ej;
    zt.saito_dual(level)?.substitute(ej)
}

/// `prod_{j=1}^{g} (zeta~_j)^{*_{d_j}}`; the empty product for `g = 0`.
pub fn egz_rhs(bd: &BranchData) -> Result<CycloProduct> {
    (1..=bd.g()).try_fold(CycloProduct::one(), |acc, j| {
        Ok(acc.mul(&dual_at_full_level(bd, j)?))
    })
}

/// `Z~_g = zeta~_g * Z~_{g-1}(T^{n_g})`, with `Z~_0 = 1`.
pub fn z_tilde(bd: &BranchData) -> Result<CycloProduct> {
    let g = bd.g();
    if g == 0 {
        return Ok(CycloProduct::one());
    }
    let prev = z_tilde(&bd.approximate(g - 1)?)?;
    Ok(zeta_tilde_top(bd)?.mul(&prev.substitute(bd.n_at(g))?))
}

/// Monodromy zeta function `Z = (1-T)^{-1} Z~^{-1}`.
pub fn z_monodromy(bd: &BranchData) -> Result<CycloProduct> {
    Ok(one_minus_t(-1).mul(&z_tilde(bd)?.inv()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    /// `Z = P`.
    Cdg,
    /// `P * Or = prod_j (zeta~_j)^{*_{d_j}}`.
    Egz,
    /// `Z~^{-1} = prod_j (zeta~_j)^{*_{d_j}}`.
    Propjan,
    /// `(zeta~_g)^{*_{d_g}} = zeta~_g^{-1}`.
    Lemma1,
}

impl Check {
    pub const ALL: [Check; 4] = [Check::Cdg, Check::Egz, Check::Propjan, Check::Lemma1];

    pub fn name(self) -> &'static str {
        match self {
            Check::Cdg => "cdg",
            Check::Egz => "egz",
            Check::Propjan => "propjan",
            Check::Lemma1 => "lemma1",
        }
    }

    pub fn run(self, bd: &BranchData) -> Result<Report> {
        match self {
            Check::Cdg => verify_cdg(bd),
            Check::Egz => verify_egz(bd),
            Check::Propjan => verify_propjan(bd),
            Check::Lemma1 => verify_lemma1(bd),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cdg" => Ok(Check::Cdg),
            "egz" => Ok(Check::Egz),
            "propjan" => Ok(Check::Propjan),
            "lemma1" => Ok(Check::Lemma1),
            other => Err(Error::Input(format!("unknown check {other:?}"))),
        }
    }
}

/// Outcome of one identity check with both sides in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub semigroup: Vec<u64>,
    pub check: Check,
    pub holds: bool,
    pub lhs: CycloProduct,
    pub rhs: CycloProduct,
}

impl Report {
    fn new(bd: &BranchData, check: Check, lhs: CycloProduct, rhs: CycloProduct) -> Self {
        Report {
            semigroup: bd.beta().to_vec(),
            check,
            holds: lhs == rhs,
            lhs,
            rhs,
        }
    }
}

pub fn verify_cdg(bd: &BranchData) -> Result<Report> {
    Ok(Report::new(bd, Check::Cdg, z_monodromy(bd)?, poincare(bd)))
}

pub fn verify_egz(bd: &BranchData) -> Result<Report> {
    let lhs = poincare(bd).mul(&orbit_invariant(bd));
    Ok(Report::new(bd, Check::Egz, lhs, egz_rhs(bd)?))
}

pub fn verify_propjan(bd: &BranchData) -> Result<Report> {
    Ok(Report::new(
        bd,
        Check::Propjan,
        z_tilde(bd)?.inv(),
        egz_rhs(bd)?,
    ))
}

/// Vacuous (both sides 1) for the smooth branch.
pub fn verify_lemma1(bd: &BranchData) -> Result<Report> {
    if bd.g() == 0 {
        return Ok(Report::new(
            bd,
            Check::Lemma1,
            CycloProduct::one(),
            CycloProduct::one(),
        ));
    }
    let top = zeta_tilde_top(bd)?;
    let lhs = top.saito_dual(bd.d_at(bd.g()))?;
    Ok(Report::new(bd, Check::Lemma1, lhs, top.inv()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::analyze;

    fn cp(pairs: &[(u64, i64)]) -> CycloProduct {
        CycloProduct::from_factors(pairs.iter().copied()).unwrap()
    }

    fn golden() -> BranchData {
        analyze(&[4, 6, 13]).unwrap()
    }

    fn cusp() -> BranchData {
        analyze(&[2, 3]).unwrap()
    }

    fn smooth() -> BranchData {
        analyze(&[1]).unwrap()
    }

    #[test]
    fn poincare_closed_forms() {
        assert_eq!(
            poincare(&golden()),
            cp(&[(12, 1), (26, 1), (4, -1), (6, -1), (13, -1)])
        );
        assert_eq!(poincare(&cusp()), cp(&[(6, 1), (2, -1), (3, -1)]));
        assert_eq!(poincare(&smooth()), cp(&[(1, -1)]));
    }

    #[test]
    fn orbit_is_one_minus_t() {
        assert_eq!(orbit_invariant(&golden()), cp(&[(1, 1)]));
        assert_eq!(orbit_invariant(&cusp()), cp(&[(1, 1)]));
        let e: Vec<i64> = orbit_invariant(&cusp())
            .expand_integers(3)
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect();
        assert_eq!(e, vec![1, -1, 0, 0]);
    }

    #[test]
    fn relative_zetas() {
        let top = cp(&[(13, 1), (2, 1), (26, -1), (1, -1)]);
        assert_eq!(zeta_tilde_top(&golden()).unwrap(), top);
        assert_eq!(zeta_tilde(&golden(), 2).unwrap(), top);
        let first = cp(&[(3, 1), (2, 1), (6, -1), (1, -1)]);
        assert_eq!(zeta_tilde_top(&cusp()).unwrap(), first);
        assert_eq!(zeta_tilde(&golden(), 1).unwrap(), first);
        assert_eq!(
            zeta_tilde(&cusp(), 1).unwrap(),
            zeta_tilde_top(&cusp()).unwrap()
        );
        assert_eq!(zeta_tilde_top(&smooth()), Err(Error::SmoothBranch));
        assert!(zeta_tilde(&golden(), 3).is_err());
        let sum: i64 = first
            .factors()
            .map(|(_, a)| i64::try_from(a).unwrap())
            .sum();
        assert_eq!(sum, 0);
    }

    #[test]
    fn duals_at_full_level() {
        let bd = golden();
        assert_eq!(
            dual_at_full_level(&bd, 2).unwrap(),
            cp(&[(26, 1), (1, 1), (13, -1), (2, -1)])
        );
        assert_eq!(
            dual_at_full_level(&bd, 1).unwrap(),
            cp(&[(12, 1), (2, 1), (6, -1), (4, -1)])
        );
        for j in 1..=bd.g() {
            let reduced = zeta_tilde(&bd, j)
                .unwrap()
                .inv()
                .substitute(bd.e()[j])
                .unwrap();
            assert_eq!(dual_at_full_level(&bd, j).unwrap(), reduced);
        }
    }

    #[test]
    fn product_of_duals() {
        assert_eq!(
            egz_rhs(&golden()).unwrap(),
            cp(&[(12, 1), (26, 1), (1, 1), (4, -1), (6, -1), (13, -1)])
        );
        assert_eq!(
            egz_rhs(&cusp()).unwrap(),
            cp(&[(6, 1), (1, 1), (2, -1), (3, -1)])
        );
        assert!(egz_rhs(&smooth()).unwrap().is_one());
    }

    #[test]
    fn relative_and_monodromy_zeta() {
        assert_eq!(
            z_tilde(&cusp()).unwrap(),
            cp(&[(3, 1), (2, 1), (6, -1), (1, -1)])
        );
        assert_eq!(
            z_tilde(&golden()).unwrap(),
            cp(&[(13, 1), (6, 1), (4, 1), (26, -1), (12, -1), (1, -1)])
        );
        assert!(z_tilde(&smooth()).unwrap().is_one());
        assert_eq!(
            z_monodromy(&cusp()).unwrap(),
            cp(&[(6, 1), (2, -1), (3, -1)])
        );
        assert_eq!(z_monodromy(&golden()).unwrap(), poincare(&golden()));
        assert_eq!(z_monodromy(&smooth()).unwrap(), cp(&[(1, -1)]));
    }

    #[test]
    fn all_checks_hold_on_examples() {
        for bd in [
            golden(),
            cusp(),
            smooth(),
            analyze(&[8, 12, 26, 53]).unwrap(),
        ] {
            for check in Check::ALL {
                let r = check.run(&bd).unwrap();
                assert!(
                    r.holds,
                    "{check} fails on {:?}: {} vs {}",
                    bd.beta(),
                    r.lhs,
                    r.rhs
                );
            }
        }
    }

    #[test]
    fn degree_balance_matches_conductor() {
        for gens in [
            &[4u64, 6, 13][..],
            &[2, 3],
            &[8, 12, 26, 53],
            &[3, 7],
            &[6, 9, 38],
        ] {
            let bd = analyze(gens).unwrap();
            assert_eq!(
                poincare(&bd).degree(),
                num_bigint::BigInt::from(bd.conductor()) - 1
            );
        }
    }

    #[test]
    fn report_json() {
        let r = verify_cdg(&cusp()).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["check"], "cdg");
        assert_eq!(v["holds"], true);
        assert_eq!(v["semigroup"], serde_json::json!([2, 3]));
        assert_eq!(
            v["lhs"],
            serde_json::json!({"factors": [[2, -1], [3, -1], [6, 1]]})
        );
    }

    #[test]
    fn check_names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!("all".parse::<Check>().is_err());
    }
}
