//! Code-theoretic observables of a stabilizer state: localizable logical
//! operators, contiguous code distance and half-cut mutual information.

use std::fmt::Write as _;

use crate::bits::QubitSet;
use crate::error::{Error, Result};
use crate::gf2::rank_of_rows;
use crate::pauli::PauliString;
use crate::region::{Boundary, Region, Subsystem};
use crate::segments::SegmentProfile;
use crate::stabilizer::StabilizerState;
use crate::symplectic::complete_basis;

/// Largest region accepted by [`ell_bruteforce`].
pub const BRUTE_FORCE_BUDGET: usize = 12;

// Above this many generators the elements of S supported on A are found by
// elimination instead of enumerating all of S.
const GROUP_ENUMERATION_LIMIT: usize = 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CountMethod {
    MutualInformation,
    AlgebraicRank,
    BruteForce,
}

/// `ℓ_A`: `2^ℓ` inequivalent logical operators are localizable on `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LogicalCount {
    pub ell: usize,
    pub method: CountMethod,
}

/// `ℓ_A = I(A:R)` in units of ln 2.
pub fn ell_mutual_information<A: Subsystem + ?Sized>(state: &StabilizerState, a: &A) -> Result<LogicalCount> {
    Ok(LogicalCount {
        ell: state.mutual_information_with_reference(a)?,
        method: CountMethod::MutualInformation,
    })
}

fn masked_rank(rows: &[PauliString], keep: &QubitSet) -> usize {
    let packed: Vec<Vec<u64>> = rows.iter().map(|r| r.masked(keep).symplectic_row()).collect();
    let cols = packed.first().map_or(0, |r| r.len() * 64);
    rank_of_rows(cols, packed.iter().map(|r| r.as_slice()))
}

/// `ℓ_A` from group orders:
/// `|L_A| = |C(S)| |proj_Ā S| / (|S| |proj_Ā C(S)|)`, with a generating set
/// of the centralizer built from scratch by symplectic completion.
pub fn ell_algebraic<A: Subsystem + ?Sized>(state: &StabilizerState, a: &A) -> Result<LogicalCount> {
    let n = state.n_qubits();
    let set = a.qubit_set(n)?;
    let rest = set.complement();
    let stabs = state.generators();
    let basis = complete_basis(n, stabs);
    let mut cent: Vec<PauliString> = stabs.to_vec();
    cent.extend(basis.logical_x);
    cent.extend(basis.logical_z);
    let m = stabs.len();
    let k = n - m;
    let ell = (n + k) + masked_rank(stabs, &rest) - m - masked_rank(&cent, &rest);
    Ok(LogicalCount {
        ell,
        method: CountMethod::AlgebraicRank,
    })
}

/// `ℓ_A` by enumerating every Pauli supported on `A` (at most
/// [`BRUTE_FORCE_BUDGET`] qubits).
pub fn ell_bruteforce<A: Subsystem + ?Sized>(state: &StabilizerState, a: &A) -> Result<LogicalCount> {
    let n = state.n_qubits();
    let set = a.qubit_set(n)?;
    let sites: Vec<usize> = set.iter().collect();
    let size = sites.len();
    if size > BRUTE_FORCE_BUDGET {
        return Err(Error::EnumerationBudget {
            size,
            budget: BRUTE_FORCE_BUDGET,
        });
    }
    // Local encoding: bit 2j = x on sites[j], bit 2j+1 = z on sites[j].
    let encode = |p: &PauliString| -> u32 {
        sites.iter().enumerate().fold(0u32, |acc, (j, &q)| {
            let (x, z) = p.get(q).bits();
            acc | (x as u32) << (2 * j) | (z as u32) << (2 * j + 1)
        })
    };
    let swap_xz = |v: u32| ((v & 0x5555_5555) << 1) | ((v >> 1) & 0x5555_5555);
    let duals: Vec<u32> = state
        .generators()
        .iter()
        .map(|g| swap_xz(encode(g)))
        .collect();

    let commuting = (0u32..1 << (2 * size))
        .filter(|&v| duals.iter().all(|&d| (v & d).count_ones() % 2 == 0))
        .count();

    let in_group = stabilizer_elements_on(state, &set);
    let ell = commuting.trailing_zeros() as usize - in_group.trailing_zeros() as usize;
    debug_assert!(commuting.is_power_of_two() && in_group.is_power_of_two());
    Ok(LogicalCount {
        ell,
        method: CountMethod::BruteForce,
    })
}

/// Number of elements of `S` (content only) supported inside `set`.
fn stabilizer_elements_on(state: &StabilizerState, set: &QubitSet) -> usize {
    let rest = set.complement();
    let gens = state.generators();
    let m = gens.len();
    if m <= GROUP_ENUMERATION_LIMIT {
        // Gray-code walk over all 2^m products.
        let mut cur = PauliString::identity(state.n_qubits());
        let mut count = 1;
        for i in 1u64..1 << m {
            let flip = i.trailing_zeros() as usize;
            cur.xor_content_unchecked(&gens[flip]);
            if cur.masked(&rest).is_identity() {
                count += 1;
            }
        }
        return count;
    }
    // Too many generators: the kernel of the projection onto Ā has dimension
    // m - rank(proj_Ā S).
    1usize << (m - masked_rank(gens, &rest))
}

/// Per-length summary of `ℓ_A` over segment offsets.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub length: usize,
    pub min_mi: f64,
    pub mean_mi: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DistanceEstimate {
    pub d_cont: usize,
    /// Threshold in units of ln 2.
    pub epsilon: f64,
    pub scan: Vec<ScanRow>,
}

impl DistanceEstimate {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("length,min_mi,mean_mi\n");
        for r in &self.scan {
            let _ = writeln!(out, "{},{},{}", r.length, r.min_mi, r.mean_mi);
        }
        out
    }
}

/// Default threshold: one bit of mutual information.
pub const DEFAULT_EPSILON: f64 = 1.0;

/// Smallest segment length `ℓ` whose minimum of `I(A:R)` over offsets is at
/// least `epsilon` (ln 2 units). Lengths run over `1..=L`, offsets over all
/// positions (`L` under periodic boundaries, `L - ℓ + 1` under open).
pub fn contiguous_distance(
    state: &StabilizerState,
    bc: Boundary,
    epsilon: f64,
) -> Result<DistanceEstimate> {
    if state.num_logical() == 0 {
        return Err(Error::NoLogicalQubits);
    }
    let profile = SegmentProfile::new(state, bc);
    distance_from_profile(&profile, epsilon, state.n_qubits(), 1)
}

/// Distance scan over lengths `1..=max_len` using every `stride`-th offset.
pub fn distance_from_profile(
    profile: &SegmentProfile,
    epsilon: f64,
    max_len: usize,
    stride: usize,
) -> Result<DistanceEstimate> {
    let n = profile.n_qubits();
    let k = profile.total_entropy();
    if k == 0 {
        return Err(Error::NoLogicalQubits);
    }
    if !(epsilon > 0.0 && epsilon <= 2.0 * k as f64) {
        return Err(Error::Config(format!(
            "epsilon {epsilon} outside (0, 2k] with k = {k}"
        )));
    }
    let stride = stride.max(1);
    let mut scan = Vec::new();
    let mut d_cont = None;
    for len in 1..=max_len.min(n) {
        let offsets = match profile.boundary() {
            Boundary::Open => n - len + 1,
            Boundary::Periodic => n,
        };
        let mut min = usize::MAX;
        let mut sum = 0usize;
        let mut cnt = 0usize;
        for start in (0..offsets).step_by(stride) {
            let v = profile.logical_count(start, len)?;
            min = min.min(v);
            sum += v;
            cnt += 1;
        }
        scan.push(ScanRow {
            length: len,
            min_mi: min as f64,
            mean_mi: sum as f64 / cnt as f64,
        });
        if d_cont.is_none() && min as f64 >= epsilon {
            d_cont = Some(len);
        }
    }
    let d_cont = d_cont.ok_or_else(|| {
        Error::Regime(format!("no segment up to length {max_len} reaches epsilon {epsilon}"))
    })?;
    Ok(DistanceEstimate {
        d_cont,
        epsilon,
        scan,
    })
}

/// Reference implementation of [`contiguous_distance`] with one rank
/// computation per segment.
pub fn contiguous_distance_by_rank(
    state: &StabilizerState,
    bc: Boundary,
    epsilon: f64,
) -> Result<usize> {
    let n = state.n_qubits();
    if state.num_logical() == 0 {
        return Err(Error::NoLogicalQubits);
    }
    for len in 1..=n {
        let offsets = match bc {
            Boundary::Open => n - len + 1,
            Boundary::Periodic => n,
        };
        let mut min = usize::MAX;
        for start in 0..offsets {
            let r = Region::for_boundary(bc, start, len);
            min = min.min(state.mutual_information_with_reference(&r)?);
        }
        if min as f64 >= epsilon {
            return Ok(len);
        }
    }
    Err(Error::Regime(format!("epsilon {epsilon} never reached")))
}

/// `I(A:B)` between the two halves `[0, L/2)` and `[L/2, L)`.
pub fn halfcut_mi(state: &StabilizerState) -> Result<usize> {
    let n = state.n_qubits();
    if n % 2 != 0 {
        return Err(Error::OddQubitCount(n));
    }
    state.mutual_information_between(&Region::segment(0, n / 2), &Region::segment(n / 2, n / 2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SingletonAudit {
    pub k: usize,
    pub n_qubits: usize,
    pub d_cont: usize,
    /// Whether `k ≤ L - 2 d_cont`.
    pub holds: bool,
}

/// Reports whether the Singleton-type bound `k ≤ L - 2 d_cont` holds with the
/// contiguous distance in place of the code distance. Since `d_cont ≥ d` it
/// can fail for small codes; the result is reported, never asserted.
pub fn singleton_audit(state: &StabilizerState, bc: Boundary) -> Result<SingletonAudit> {
    let d = contiguous_distance(state, bc, DEFAULT_EPSILON)?;
    let (k, n) = (state.num_logical(), state.n_qubits());
    Ok(SingletonAudit {
        k,
        n_qubits: n,
        d_cont: d.d_cont,
        holds: k + 2 * d.d_cont <= n,
    })
}
