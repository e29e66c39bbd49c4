//! Semigroups of plane branches `<beta_0, ..., beta_g>` and their structure
//! constants: the gcd chain `e_i`, the quotients `n_i = e_{i-1}/e_i`, the
//! equation degrees `d_i = n_i beta_i`, and the representations
//! `n_i beta_i = sum_{j<i} l_ij beta_j` with `0 <= l_ij < n_j` for `j >= 1`.

use crate::error::{Error, Result};
use crate::series::TruncSeries;
use num_integer::Integer;
use serde::Serialize;

/// Validated generators of a plane-branch semigroup plus derived data.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BranchData {
    beta: Vec<u64>,
    e: Vec<u64>,
    n: Vec<u64>,
    d: Vec<u64>,
    #[serde(rename = "L")]
    l: Vec<Vec<u64>>,
    conductor: u64,
    delta: u64,
}

impl BranchData {
    /// Number of characteristic pairs; the generators are `beta_0..=beta_g`.
    pub fn g(&self) -> usize {
        self.beta.len() - 1
    }

    pub fn beta(&self) -> &[u64] {
        &self.beta
    }

    /// `e_0..=e_g`.
    pub fn e(&self) -> &[u64] {
        &self.e
    }

    /// `n_1..=n_g`, stored zero-based: `n()[i-1] = n_i`.
    pub fn n(&self) -> &[u64] {
        &self.n
    }

    /// `d_1..=d_g`, stored zero-based like [`BranchData::n`].
    pub fn d(&self) -> &[u64] {
        &self.d
    }

    /// Row `i-1` holds `l_i0, ..., l_i,i-1`.
    pub fn l_matrix(&self) -> &[Vec<u64>] {
        &self.l
    }

    /// Smallest `c` with `c + N` contained in the semigroup.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Number of gaps.
    pub fn delta(&self) -> u64 {
        self.delta
    }

    /// `n_i` for `1 <= i <= g`.
    pub fn n_at(&self, i: usize) -> u64 {
        self.n[i - 1]
    }

    /// `d_i` for `1 <= i <= g`.
    pub fn d_at(&self, i: usize) -> u64 {
        self.d[i - 1]
    }

    /// Semigroup of the `j`-th approximate branch,
    /// `<beta_0/e_j, ..., beta_j/e_j>`, for `1 <= j <= g`.
    pub fn truncate(&self, j: usize) -> Result<BranchData> {
        if j == 0 || j > self.g() {
            return Err(Error::IndexOutOfRange {
                index: j,
                g: self.g(),
            });
        }
        self.approximate(j)
    }

    /// Like [`BranchData::truncate`] but also accepts `j = 0`, giving `<1>`.
    pub(crate) fn approximate(&self, j: usize) -> Result<BranchData> {
        let ej = self.e[j];
        let gens: Vec<u64> = self.beta[..=j].iter().map(|b| b / ej).collect();
        analyze(&gens).map_err(|err| {
            Error::Internal(format!(
                "truncation {gens:?} of a valid branch rejected: {err}"
            ))
        })
    }
}

/// Validates `gens` as the minimal generators of a plane-branch semigroup and
/// computes its structure constants.
pub fn analyze(gens: &[u64]) -> Result<BranchData> {
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    if gens.contains(&0) {
        return Err(Error::ZeroGenerator);
    }
    if let Some(i) = (1..gens.len()).find(|&i| gens[i] <= gens[i - 1]) {
        return Err(Error::NotIncreasing { index: i });
    }
    let g = gens.len() - 1;

    let mut e = vec![gens[0]];
    let mut n = Vec::with_capacity(g);
    for i in 1..=g {
        let prev = e[i - 1];
        let cur = prev.gcd(&gens[i]);
        if cur == prev {
            return Err(Error::RedundantGenerator { index: i });
        }
        e.push(cur);
        n.push(prev / cur);
    }
    if e[g] != 1 {
        return Err(Error::NotCoprime { gcd: e[g] });
    }

    let mut d = Vec::with_capacity(g);
    for i in 1..=g {
        let di = n[i - 1]
            .checked_mul(gens[i])
            .ok_or_else(|| Error::Input("generators too large".into()))?;
        d.push(di);
    }
    for i in 1..g {
        if d[i - 1] >= gens[i + 1] {
            return Err(Error::OrderViolation {
                index: i,
                product: d[i - 1],
                next: gens[i + 1],
            });
        }
    }

    let mut l = Vec::with_capacity(g);
    for i in 1..=g {
        let bounds: Vec<Option<u64>> = std::iter::once(None)
            .chain(n[..i - 1].iter().map(|&nj| Some(nj)))
            .collect();
        let row = representation(&gens[..i], d[i - 1], &bounds).ok_or(Error::NotRepresentable {
            index: i,
            value: d[i - 1],
        })?;
        l.push(row);
    }

    let (conductor, delta) = conductor_and_delta(gens, &d)?;
    Ok(BranchData {
        beta: gens.to_vec(),
        e,
        n,
        d,
        l,
        conductor,
        delta,
    })
}

/// Membership table for `0..len`.
pub fn membership_table(gens: &[u64], len: usize) -> Vec<bool> {
    let mut table = vec![false; len];
    if len == 0 {
        return table;
    }
    table[0] = true;
    let gens: Vec<usize> = gens
        .iter()
        .filter_map(|&b| usize::try_from(b).ok())
        .filter(|&b| b > 0)
        .collect();
    for h in 1..len {
        table[h] = gens.iter().any(|&b| b <= h && table[h - b]);
    }
    table
}

/// True iff `h` is a non-negative integer combination of `gens`.
pub fn membership(gens: &[u64], h: u64) -> bool {
    let h = usize::try_from(h).expect("membership query fits in memory");
    membership_table(gens, h + 1)[h]
}

/// Exponents `l_j` with `value = sum l_j gens[j]` and `l_j < bounds[j]` where a
/// bound is given. Among several solutions the lexicographically smallest
/// read from the highest index down is returned.
pub fn representation(gens_prefix: &[u64], value: u64, bounds: &[Option<u64>]) -> Option<Vec<u64>> {
    if gens_prefix.is_empty() || gens_prefix.contains(&0) {
        return (value == 0).then(|| vec![0; gens_prefix.len()]);
    }
    let mut out = vec![0; gens_prefix.len()];
    search_representation(gens_prefix, bounds, gens_prefix.len() - 1, value, &mut out)
        .then_some(out)
}

fn search_representation(
    gens: &[u64],
    bounds: &[Option<u64>],
    j: usize,
    rest: u64,
    out: &mut [u64],
) -> bool {
    if j == 0 {
        if rest.is_multiple_of(gens[0]) {
            let l0 = rest / gens[0];
            if bounds.first().copied().flatten().is_none_or(|b| l0 < b) {
                out[0] = l0;
                return true;
            }
        }
        return false;
    }
    let limit = match bounds.get(j).copied().flatten() {
        Some(0) => return false,
        Some(b) => (b - 1).min(rest / gens[j]),
        None => rest / gens[j],
    };
    for lj in 0..=limit {
        out[j] = lj;
        if search_representation(gens, bounds, j - 1, rest - lj * gens[j], out) {
            return true;
        }
    }
    false
}

fn conductor_and_delta(gens: &[u64], d: &[u64]) -> Result<(u64, u64)> {
    let run_needed = gens[0] as usize;
    // Any branch conductor lies below sum d_i + beta_0; past that the table stops.
    let cap = d.iter().sum::<u64>() as usize + run_needed + 1;
    let gens_us: Vec<usize> = gens.iter().map(|&b| b as usize).collect();
    let mut table: Vec<bool> = Vec::with_capacity(cap.min(1 << 20));
    let mut run = 0usize;
    let mut gaps = 0u64;
    let mut gaps_before_run = 0u64;
    for h in 0..cap {
        let member = h == 0 || gens_us.iter().any(|&b| b <= h && table[h - b]);
        table.push(member);
        if member {
            if run == 0 {
                gaps_before_run = gaps;
            }
            run += 1;
            if run == run_needed {
                let conductor = (h + 1 - run) as u64;
                let delta = gaps_before_run;
                if conductor != 2 * delta {
                    return Err(Error::Internal(format!(
                        "conductor {conductor} is not twice the gap count {delta} for {gens:?}"
                    )));
                }
                return Ok((conductor, delta));
            }
        } else {
            run = 0;
            gaps += 1;
        }
    }
    Err(Error::Internal(format!(
        "no conductor below {cap} for {gens:?}"
    )))
}

/// Indicator series of the semigroup through `T^order`.
pub fn poincare_oracle(gens: &[u64], order: usize) -> TruncSeries {
    TruncSeries::from_integers(membership_table(gens, order + 1).into_iter().map(|m| {
        if m {
            1
        } else {
            0
        }
    }))
}
