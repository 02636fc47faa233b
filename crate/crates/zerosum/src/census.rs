//! Small-n census of realizable zero-sum dimensions, plus statistical and
//! curve-counting checks.
//!
//! In exhaustive mode the census enumerates every k-dimensional subspace of
//! F_{2^n} (practical for n <= 10) and applies the Moore criterion, so a
//! missing dimension is a proof of nonexistence at that n. Constructive
//! mode instead asks [`build_zero_sum`] for each k and records how each
//! witness was found; absences are then only evidence.
//!
//! The report carries consistency checks along: the k <-> n-k symmetry of
//! realizable dimensions (exhaustive mode), the parity rule (dimension 2
//! works iff n is even), and the exclusion of dimensions 1 and n-1.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bitlinalg::{enumerate_k_subspaces, rref_contains, rref_in_place, Subspace};
use crate::construct::{
    build_zero_sum, certify_subspace, extend_non_zero_sum, BuildOutcome, Method, SearchBudget,
    ZeroSumCertificate,
};
use crate::gf2n::{FieldElement, FieldSpec};
use crate::moore::{delta1_cofactors, is_zero_sum};
use crate::rng::Rng;
use crate::{Error, Result};

/// Largest n accepted in exhaustive mode by default.
pub const EXHAUSTIVE_CAP: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CensusMode {
    Exhaustive,
    Constructive,
}

/// Evidence recorded per dimension: a certificate, or why none is present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Evidence {
    Certificate(Box<ZeroSumCertificate>),
    Status(String),
}

pub const EVIDENCE_EXHAUSTED: &str = "exhausted-none";
pub const EVIDENCE_NOT_EXIST: &str = "not-exist";
pub const EVIDENCE_NO_SOLUTION: &str = "no-solution";

/// Consistency checks computed alongside the census.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CensusChecks {
    /// k realizable iff n-k realizable; only asserted by exhaustive runs.
    pub symmetry: Option<bool>,
    /// 2 realizable iff n even.
    pub parity: bool,
    /// 1 and n-1 are never realizable.
    pub ends_excluded: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: u32,
    pub mode: CensusMode,
    /// Dimensions k with a zero-sum subspace found.
    pub members: Vec<u32>,
    pub evidence: BTreeMap<u32, Evidence>,
    /// Number of zero-sum k-subspaces, when counting was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<BTreeMap<u32, u64>>,
    pub checks: CensusChecks,
}

impl CensusReport {
    pub fn is_member(&self, k: u32) -> bool {
        self.members.contains(&k)
    }

    /// CSV export with columns n,k,member,method.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,k,member,method\n");
        for k in 1..self.n {
            let (member, method) = match self.evidence.get(&k) {
                Some(Evidence::Certificate(c)) => (true, c.method.as_str().to_string()),
                Some(Evidence::Status(s)) => (false, s.clone()),
                None => (false, String::new()),
            };
            out.push_str(&format!("{},{},{},{}\n", self.n, k, member, method));
        }
        out
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CensusOptions {
    /// Count all zero-sum subspaces per dimension (exhaustive mode only;
    /// disables the early exit).
    pub counts: bool,
    pub budget: SearchBudget,
    pub exhaustive_cap: u32,
}

impl Default for CensusOptions {
    fn default() -> CensusOptions {
        CensusOptions {
            counts: false,
            budget: SearchBudget::default(),
            exhaustive_cap: EXHAUSTIVE_CAP,
        }
    }
}

/// Determines the realizable zero-sum dimensions of F_{2^n}.
pub fn census_run(n: u32, mode: CensusMode, options: &CensusOptions) -> Result<CensusReport> {
    let spec = FieldSpec::new(n)?;
    let mut members = Vec::new();
    let mut evidence: BTreeMap<u32, Evidence> = BTreeMap::new();
    let mut counts: BTreeMap<u32, u64> = BTreeMap::new();

    match mode {
        CensusMode::Exhaustive => {
            if n > options.exhaustive_cap {
                return Err(Error::CapExceeded);
            }
            for k in 1..n {
                let mut witness: Option<Subspace> = None;
                let mut count = 0u64;
                for s in enumerate_k_subspaces(&spec, k)? {
                    if is_zero_sum(&s)? {
                        count += 1;
                        if witness.is_none() {
                            witness = Some(s);
                            if !options.counts {
                                break;
                            }
                        }
                    }
                }
                match witness {
                    Some(s) => {
                        members.push(k);
                        let cert = certify_subspace(&s, Method::Exhaustive, &options.budget)?;
                        evidence.insert(k, Evidence::Certificate(Box::new(cert)));
                    }
                    None => {
                        evidence.insert(k, Evidence::Status(EVIDENCE_EXHAUSTED.into()));
                    }
                }
                if options.counts {
                    counts.insert(k, count);
                }
            }
        }
        CensusMode::Constructive => {
            for k in 1..n {
                match build_zero_sum(n, k, &options.budget)? {
                    BuildOutcome::Certificate(cert) => {
                        members.push(k);
                        evidence.insert(k, Evidence::Certificate(Box::new(cert)));
                    }
                    BuildOutcome::NotExist => {
                        evidence.insert(k, Evidence::Status(EVIDENCE_NOT_EXIST.into()));
                    }
                    BuildOutcome::NoSolution => {
                        evidence.insert(k, Evidence::Status(EVIDENCE_NO_SOLUTION.into()));
                    }
                }
            }
        }
    }

    let symmetry = match mode {
        CensusMode::Exhaustive => {
            Some((1..n).all(|k| members.contains(&k) == members.contains(&(n - k))))
        }
        CensusMode::Constructive => None,
    };
    let checks = CensusChecks {
        symmetry,
        parity: members.contains(&2) == (n % 2 == 0),
        ends_excluded: !members.contains(&1) && !members.contains(&(n - 1)),
    };

    Ok(CensusReport {
        n,
        mode,
        members,
        evidence,
        counts: options.counts.then_some(counts),
        checks,
    })
}

/// A sampled affine subspace whose inverse sum vanished (none are expected:
/// inverse sums over affine subspaces avoiding zero are always nonzero).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AffineCounterexample {
    pub offset: String,
    pub basis: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AffineCheckReport {
    pub n: u32,
    pub trials: u64,
    pub violations: u64,
    pub first_violation: Option<AffineCounterexample>,
}

impl AffineCheckReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Samples random affine subspaces A = offset + S with 0 not in A
/// (dimension at most min(n-1, 12)) and checks that the inverse sum over A
/// never vanishes.
pub fn affine_sample_check(n: u32, trials: u64, seed: u64) -> Result<AffineCheckReport> {
    let spec = FieldSpec::new(n)?;
    let mut rng = Rng::new(seed);
    let max_dim = n.saturating_sub(1).min(12) as u64;
    let mut violations = 0u64;
    let mut first: Option<AffineCounterexample> = None;

    for _ in 0..trials {
        let d = rng.below(max_dim + 1) as usize;
        let vs: Vec<FieldElement> = (0..d).map(|_| rng.element(&spec)).collect();
        let s = Subspace::from_vectors(&spec, &vs);
        let offset = loop {
            let o = rng.element(&spec);
            if !s.contains(o) {
                break o; // 0 not in offset + S
            }
        };
        let mut sum = FieldElement::ZERO;
        for e in s.elements()? {
            sum += spec.inv(offset + e);
        }
        if sum.is_zero() {
            violations += 1;
            if first.is_none() {
                first = Some(AffineCounterexample {
                    offset: offset.to_hex(),
                    basis: s.basis().iter().map(|b| b.to_hex()).collect(),
                });
            }
        }
    }

    Ok(AffineCheckReport { n, trials, violations, first_violation: first })
}

/// Exact count of pairs (x1, x2) with Delta_1(x1, x2, u_1..u_l) = 0 and
/// Delta(x1, x2, u_1..u_l) != 0, compared with the Hasse-Weil style lower
/// bound q - 9 * 2^(2l) * sqrt(q).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveCount {
    pub n: u32,
    pub l: u32,
    pub u_basis: Vec<String>,
    pub points_on_curve_off_delta: u64,
    pub hw_lower_bound: f64,
    pub exceeds_bound: bool,
}

/// Full 2^(2n) scan over (x1, x2). The u-basis is built deterministically
/// by non-zero-sum extension from 1; `_seed` is reserved for interface
/// stability (the scan itself is deterministic).
pub fn curve_point_count(n: u32, l: u32, _seed: u64) -> Result<CurveCount> {
    if 2 * n > 26 {
        return Err(Error::ScanBudgetExceeded);
    }
    let spec = FieldSpec::new(n)?;
    if l == 0 || l + 2 > n {
        return Err(Error::PreconditionViolated("need 1 <= l and l + 2 <= n"));
    }
    let us = extend_non_zero_sum(&spec, &[FieldElement::ONE], l as usize - 1)?;
    let u_rows: Vec<u64> = {
        let mut rows: Vec<u64> = us.iter().map(|u| u.bits()).collect();
        rref_in_place(&mut rows);
        rows
    };

    let order = 1u64 << n;
    let mut count = 0u64;
    for x2_bits in 0..order {
        // Delta(x1, x2, u) = 0 for every x1 unless (x2, u) is independent.
        if rref_contains(&u_rows, x2_bits) {
            continue;
        }
        let x2 = FieldElement::new(x2_bits);
        let mut tuple = vec![x2];
        tuple.extend_from_slice(&us);
        // Delta_1(x1, x2, u) is linear in x1 (arguments commute in char 2).
        let cof = delta1_cofactors(&spec, &tuple)?;
        let map = {
            let cols: Vec<u64> = (0..n)
                .map(|i| {
                    crate::moore::delta1_apply(&spec, &cof, FieldElement::new(1u64 << i)).bits()
                })
                .collect();
            crate::bitlinalg::BitMatrix::from_columns(&cols, n)
        };
        let mut span_rows = u_rows.clone();
        span_rows.push(x2_bits);
        rref_in_place(&mut span_rows);
        for x1_bits in 0..order {
            if map.mul_vec(x1_bits) == 0 && !rref_contains(&span_rows, x1_bits) {
                count += 1;
            }
        }
    }

    let q = (1u128 << n) as f64;
    let hw_lower_bound = q - 9.0 * f64::powi(2.0, 2 * l as i32) * q.sqrt();
    Ok(CurveCount {
        n,
        l,
        u_basis: us.iter().map(|u| u.to_hex()).collect(),
        points_on_curve_off_delta: count,
        hw_lower_bound,
        exceeds_bound: count as f64 > hw_lower_bound,
    })
}
