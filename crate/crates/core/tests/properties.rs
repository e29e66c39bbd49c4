use branchzeta::invariants::Check;
use branchzeta::polycurve::{deform_and_eliminate, weighted_degree};
use branchzeta::{analyze, BranchData};
use num_integer::Integer;
use proptest::prelude::*;

/// Valid generator tuples built from the characteristic data: pick the
/// `n_i >= 2`, then each `beta_i = e_i * k` with `k` coprime to `n_i` and
/// `beta_i > n_{i-1} beta_{i-1}`.
fn semigroup() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(2u64..=4, 1..=3)
        .prop_flat_map(|n| {
            let g = n.len();
            (Just(n), prop::collection::vec(0u64..40, g))
        })
        .prop_map(|(n, offsets)| {
            let g = n.len();
            let mut e = vec![1u64; g + 1];
            for i in (0..g).rev() {
                e[i] = e[i + 1] * n[i];
            }
            let mut gens = vec![e[0]];
            for i in 1..=g {
                let floor = if i == 1 {
                    gens[0]
                } else {
                    n[i - 2] * gens[i - 1]
                };
                let mut k = floor / e[i] + 1 + offsets[i - 1];
                while k.gcd(&n[i - 1]) != 1 {
                    k += 1;
                }
                gens.push(e[i] * k);
            }
            gens
        })
}

fn member(gens: &[u64], h: u64) -> bool {
    let mut reach = vec![false; h as usize + 1];
    reach[0] = true;
    for &g in gens {
        for x in g as usize..=h as usize {
            reach[x] |= reach[x - g as usize];
        }
    }
    reach[h as usize]
}

fn bd(gens: &[u64]) -> BranchData {
    analyze(gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn structure_constants(gens in semigroup()) {
        let bd = bd(&gens);
        let g = bd.g();
        prop_assert_eq!(bd.beta(), gens.as_slice());
        prop_assert_eq!(bd.e()[g], 1);
        prop_assert_eq!(bd.n().iter().product::<u64>(), gens[0]);
        for (i, b) in gens.iter().enumerate().skip(1) {
            prop_assert_eq!(bd.d_at(i), bd.n_at(i) * b);
            prop_assert_eq!(bd.e()[i - 1], bd.n_at(i) * bd.e()[i]);
        }
    }

    #[test]
    fn conductor_closed_form_and_gap(gens in semigroup()) {
        let bd = bd(&gens);
        let g = bd.g();
        let sum: u64 = (1..=g).map(|i| (bd.n_at(i) - 1) * gens[i]).sum();
        let c = sum + 1 - gens[0];
        prop_assert_eq!(bd.conductor(), c);
        prop_assert_eq!(bd.delta() * 2, c);
        prop_assert!(!member(&gens, c - 1));
        for h in c..c + gens[0] {
            prop_assert!(member(&gens, h));
        }
    }

    #[test]
    fn bounded_representations(gens in semigroup()) {
        let bd = bd(&gens);
        for (row, i) in bd.l_matrix().iter().zip(1..) {
            prop_assert_eq!(row.len(), i);
            let total: u64 = row.iter().zip(&gens).map(|(l, b)| l * b).sum();
            prop_assert_eq!(total, bd.d_at(i));
            for (j, l) in row.iter().enumerate().skip(1) {
                prop_assert!(*l < bd.n_at(j));
            }
        }
    }

    #[test]
    fn truncations_rescale(gens in semigroup()) {
        let bd = bd(&gens);
        for j in 1..=bd.g() {
            let t = bd.truncate(j).unwrap();
            let e = bd.e()[j];
            let want: Vec<u64> = gens[..=j].iter().map(|b| b / e).collect();
            prop_assert_eq!(t.beta(), want.as_slice());
        }
    }

    #[test]
    fn identities_hold(gens in semigroup()) {
        let bd = bd(&gens);
        for check in Check::ALL {
            let report = check.run(&bd).unwrap();
            prop_assert!(report.holds, "{} fails for {:?}", check, gens);
        }
    }

    #[test]
    fn elimination_is_weighted_homogeneous(gens in semigroup()) {
        let bd = bd(&gens);
        let el = deform_and_eliminate(&bd).unwrap();
        let weights = [gens[0] as i64, gens[1] as i64, -1];
        let want = bd.d_at(bd.g()) as i64 - el.cleared_power as i64;
        prop_assert_eq!(weighted_degree(&el.poly, &weights), Some(want));
        prop_assert_eq!(el.expr.expand(3), el.poly);
    }
}
