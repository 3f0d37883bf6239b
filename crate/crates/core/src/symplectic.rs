//! Completion of a stabilizer generating set to a full symplectic basis.
//!
//! Given independent, mutually commuting `s_1..s_m` on `n` qubits this finds
//! destabilizers `d_1..d_m` and logical pairs `(x̄_j, z̄_j)`, `j = 1..n-m`, with
//! `⟨s_i, d_j⟩ = δ_ij`, `⟨x̄_i, z̄_j⟩ = δ_ij` and every other pair commuting.
//! Stabilizers together with the logical pairs generate the centralizer.
//!
//! Only operator content is meaningful in the returned rows; their phases are
//! zero.

use crate::gf2::Gf2Matrix;
use crate::pauli::{Pauli, PauliString};

#[derive(Clone, Debug)]
pub struct SymplecticBasis {
    pub destabilizers: Vec<PauliString>,
    pub logical_x: Vec<PauliString>,
    pub logical_z: Vec<PauliString>,
}

fn unit(n: usize, col: usize) -> PauliString {
    if col < n {
        PauliString::single(n, col, Pauli::X)
    } else {
        PauliString::single(n, col - n, Pauli::Z)
    }
}

fn content(p: &PauliString) -> PauliString {
    let mut c = p.clone();
    c.set_phase(0);
    c
}

/// Destabilizers for `stabilizers`, which must be independent and commuting.
fn destabilizers(n: usize, stabilizers: &[PauliString]) -> Vec<PauliString> {
    let m = stabilizers.len();
    if m == 0 {
        return Vec::new();
    }
    // Row i evaluates v ↦ ⟨s_i, v⟩ for v = (v_x | v_z), augmented with I_m.
    let mut aug = Gf2Matrix::zeros(m, 2 * n + m);
    for (i, s) in stabilizers.iter().enumerate() {
        for q in 0..n {
            let (x, z) = s.get(q).bits();
            aug.set(i, q, z);
            aug.set(i, n + q, x);
        }
        aug.set(i, 2 * n + i, true);
    }
    let pivots = aug.row_reduce_cols(2 * n);
    assert_eq!(pivots.len(), m, "stabilizers must be independent");

    let mut d: Vec<PauliString> = (0..m)
        .map(|j| {
            let mut v = PauliString::identity(n);
            for (r, &p) in pivots.iter().enumerate() {
                if aug.get(r, 2 * n + j) {
                    v.xor_content_unchecked(&unit(n, p));
                }
            }
            v
        })
        .collect();

    // Make the destabilizers mutually commute; adding s_i to d_j only flips
    // ⟨d_j, d_i⟩.
    for j in 0..m {
        for i in 0..j {
            if d[j].anticommutes_unchecked(&d[i]) {
                let s = content(&stabilizers[i]);
                d[j].xor_content_unchecked(&s);
            }
        }
    }
    d
}

/// Removes the components of `v` along the symplectic pairs `(a_i, b_i)`.
fn project_out(v: &mut PauliString, a: &[PauliString], b: &[PauliString]) {
    let mut add = PauliString::identity(v.n_qubits());
    for (ai, bi) in a.iter().zip(b) {
        if v.anticommutes_unchecked(bi) {
            add.xor_content_unchecked(ai);
        }
        if v.anticommutes_unchecked(ai) {
            add.xor_content_unchecked(bi);
        }
    }
    v.xor_content_unchecked(&add);
}

/// Completes `stabilizers` to a full symplectic basis.
///
/// Logical pairs come from a symplectic Gram–Schmidt pass over the
/// single-qubit Paulis in the order `X_0, Z_0, X_1, Z_1, ...`; the first
/// surviving vector becomes `x̄`, the first later vector anticommuting with it
/// becomes `z̄`.
pub fn complete_basis(n: usize, stabilizers: &[PauliString]) -> SymplecticBasis {
    let stabs: Vec<PauliString> = stabilizers.iter().map(content).collect();
    let destabs = destabilizers(n, &stabs);
    let k = n - stabs.len();

    let mut cands: Vec<PauliString> = (0..n)
        .flat_map(|q| [PauliString::single(n, q, Pauli::X), PauliString::single(n, q, Pauli::Z)])
        .collect();
    for c in cands.iter_mut() {
        project_out(c, &stabs, &destabs);
    }

    let mut lx = Vec::with_capacity(k);
    let mut lz = Vec::with_capacity(k);
    while lx.len() < k {
        let a = cands
            .iter()
            .position(|c| !c.is_identity())
            .expect("complement of the stabilizer/destabilizer span is nondegenerate");
        let u = cands[a].clone();
        let b = (a + 1..cands.len())
            .find(|&b| cands[b].anticommutes_unchecked(&u))
            .expect("every nonzero vector has a symplectic partner");
        let w = cands[b].clone();
        for c in cands.iter_mut().skip(a) {
            project_out(c, std::slice::from_ref(&u), std::slice::from_ref(&w));
        }
        lx.push(u);
        lz.push(w);
    }

    SymplecticBasis {
        destabilizers: destabs,
        logical_x: lx,
        logical_z: lz,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(v: &[&str]) -> Vec<PauliString> {
        v.iter().map(|s| s.parse().unwrap()).collect()
    }

    fn check(n: usize, stabs: &[PauliString]) {
        let b = complete_basis(n, stabs);
        let m = stabs.len();
        assert_eq!(b.destabilizers.len(), m);
        assert_eq!(b.logical_x.len(), n - m);
        for i in 0..m {
            for j in 0..m {
                assert_eq!(
                    stabs[i].anticommutes_unchecked(&b.destabilizers[j]),
                    i == j
                );
                assert!(!b.destabilizers[i].anticommutes_unchecked(&b.destabilizers[j]));
            }
            for l in b.logical_x.iter().chain(&b.logical_z) {
                assert!(!stabs[i].anticommutes_unchecked(l));
                assert!(!b.destabilizers[i].anticommutes_unchecked(l));
            }
        }
        for i in 0..n - m {
            for j in 0..n - m {
                assert_eq!(b.logical_x[i].anticommutes_unchecked(&b.logical_z[j]), i == j);
                assert!(!b.logical_x[i].anticommutes_unchecked(&b.logical_x[j]));
                assert!(!b.logical_z[i].anticommutes_unchecked(&b.logical_z[j]));
            }
        }
    }

    #[test]
    fn empty_group_gets_single_qubit_logicals() {
        let b = complete_basis(3, &[]);
        assert_eq!(b.logical_x, ps(&["XII", "IXI", "IIX"]));
        assert_eq!(b.logical_z, ps(&["ZII", "IZI", "IIZ"]));
    }

    #[test]
    fn repetition_code_basis() {
        check(3, &ps(&["ZZI", "IZZ"]));
    }

    #[test]
    fn five_qubit_code_basis() {
        check(5, &ps(&["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"]));
    }

    #[test]
    fn bell_pair_has_no_logicals() {
        check(2, &ps(&["XX", "ZZ"]));
    }

    #[test]
    fn wide_random_like_group() {
        let stabs = ps(&[
            "XXIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIZ",
            "ZZIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIII",
            "IIYYIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIIII",
        ]);
        check(68, &stabs);
    }
}
