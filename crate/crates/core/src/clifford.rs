//! Two-qubit Clifford gates as conjugation tables.

use rand::Rng;

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};

/// Packed two-qubit Pauli: bit 0 = x₁, bit 1 = z₁, bit 2 = x₂, bit 3 = z₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Small {
    bits: u8,
    phase: u8,
}

// +1 for XY, YZ, ZX; -1 for the reverse order.
fn product_phase(ax: u8, az: u8, bx: u8, bz: u8) -> i32 {
    match ((ax, az), (bx, bz)) {
        ((1, 0), (1, 1)) | ((1, 1), (0, 1)) | ((0, 1), (1, 0)) => 1,
        ((1, 1), (1, 0)) | ((0, 1), (1, 1)) | ((1, 0), (0, 1)) => -1,
        _ => 0,
    }
}

impl Small {
    const IDENTITY: Small = Small { bits: 0, phase: 0 };

    fn mul(self, o: Small) -> Small {
        let mut ph = self.phase as i32 + o.phase as i32;
        for site in 0..2 {
            let sh = 2 * site;
            ph += product_phase(
                (self.bits >> sh) & 1,
                (self.bits >> (sh + 1)) & 1,
                (o.bits >> sh) & 1,
                (o.bits >> (sh + 1)) & 1,
            );
        }
        Small {
            bits: self.bits ^ o.bits,
            phase: ph.rem_euclid(4) as u8,
        }
    }

    fn anticommutes(self, o: Small) -> bool {
        let sympl = |a: u8, b: u8| {
            let mut s = 0;
            for site in 0..2 {
                let sh = 2 * site;
                s ^= ((a >> sh) & 1) & ((b >> (sh + 1)) & 1);
                s ^= ((a >> (sh + 1)) & 1) & ((b >> sh) & 1);
            }
            s
        };
        sympl(self.bits, o.bits) == 1
    }

    fn to_pauli(self) -> PauliString {
        let mut p = PauliString::identity(2);
        for site in 0..2 {
            let sh = 2 * site;
            p.set(
                site,
                Pauli::from_bits((self.bits >> sh) & 1 == 1, (self.bits >> (sh + 1)) & 1 == 1),
            );
        }
        p.set_phase(self.phase);
        p
    }

    fn from_pauli(p: &PauliString) -> Small {
        let mut bits = 0;
        for site in 0..2 {
            let (x, z) = p.get(site).bits();
            bits |= (x as u8) << (2 * site);
            bits |= (z as u8) << (2 * site + 1);
        }
        Small {
            bits,
            phase: p.phase(),
        }
    }
}

/// A two-qubit Clifford unitary, given by the images of `X⊗I`, `Z⊗I`, `I⊗X`
/// and `I⊗Z` under conjugation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CliffordGate {
    images: [Small; 4],
    // Image of every two-qubit letter pattern: (new bits, phase added).
    table: [(u8, u8); 16],
}

impl CliffordGate {
    /// Builds a gate from the images of `[X⊗I, Z⊗I, I⊗X, I⊗Z]`.
    ///
    /// Images must be Hermitian two-qubit Paulis with the commutation
    /// relations of the generators.
    pub fn from_images(images: [PauliString; 4]) -> Result<Self> {
        let mut small = [Small::IDENTITY; 4];
        for (i, img) in images.iter().enumerate() {
            if img.n_qubits() != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    found: img.n_qubits(),
                });
            }
            if !img.is_hermitian() {
                return Err(Error::InvalidGate(format!("image {i} is not Hermitian")));
            }
            small[i] = Small::from_pauli(img);
        }
        Self::from_small(small)
    }

    fn from_small(images: [Small; 4]) -> Result<Self> {
        for i in 0..4 {
            if images[i].bits == 0 {
                return Err(Error::InvalidGate(format!("image {i} is the identity")));
            }
            for j in i + 1..4 {
                // generators X1,Z1 anticommute and X2,Z2 anticommute
                let expect = (i, j) == (0, 1) || (i, j) == (2, 3);
                if images[i].anticommutes(images[j]) != expect {
                    return Err(Error::InvalidGate(format!(
                        "images {i} and {j} violate the symplectic condition"
                    )));
                }
            }
        }
        let mut table = [(0u8, 0u8); 16];
        for (idx, entry) in table.iter_mut().enumerate() {
            let idx = idx as u8;
            let (x1, z1, x2, z2) = (idx & 1, (idx >> 1) & 1, (idx >> 2) & 1, (idx >> 3) & 1);
            // letter Y = iXZ, so the pattern is i^{x1 z1 + x2 z2} X1^x1 Z1^z1 X2^x2 Z2^z2
            let mut acc = Small {
                bits: 0,
                phase: (x1 * z1 + x2 * z2) & 3,
            };
            for (bit, img) in [x1, z1, x2, z2].into_iter().zip(images) {
                if bit == 1 {
                    acc = acc.mul(img);
                }
            }
            *entry = (acc.bits, acc.phase);
        }
        Ok(Self { images, table })
    }

    pub fn image(&self, generator: usize) -> PauliString {
        self.images[generator].to_pauli()
    }

    pub fn identity() -> Self {
        Self::from_named(["XI", "ZI", "IX", "IZ"])
    }

    /// CNOT with control on the first site.
    pub fn cnot() -> Self {
        Self::from_named(["XX", "ZI", "IX", "ZZ"])
    }

    /// Hadamard on the first site.
    pub fn hadamard_first() -> Self {
        Self::from_named(["ZI", "XI", "IX", "IZ"])
    }

    /// Phase gate `S` on the first site.
    pub fn phase_first() -> Self {
        Self::from_named(["YI", "ZI", "IX", "IZ"])
    }

    pub fn swap() -> Self {
        Self::from_named(["IX", "IZ", "XI", "ZI"])
    }

    fn from_named(images: [&str; 4]) -> Self {
        Self::from_images(images.map(|s| s.parse().expect("valid literal")))
            .expect("valid Clifford literal")
    }

    /// Samples uniformly from the two-qubit Clifford group modulo global
    /// phase (11520 elements).
    ///
    /// The images of `X⊗I`, `Z⊗I`, `I⊗X`, `I⊗Z` are drawn one at a time,
    /// uniformly among the Paulis compatible with the earlier choices
    /// (15 · 8 · 3 · 2 = 720 symplectic maps), then each gets a uniform sign.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut chosen: Vec<Small> = Vec::with_capacity(4);
        for slot in 0..4 {
            let candidates: Vec<u8> = (1u8..16)
                .filter(|&b| {
                    let c = Small { bits: b, phase: 0 };
                    chosen.iter().enumerate().all(|(i, &prev)| {
                        let expect = (i, slot) == (0, 1) || (i, slot) == (2, 3);
                        c.anticommutes(prev) == expect
                    }) && !in_span(&chosen, b)
                })
                .collect();
            let bits = candidates[rng.gen_range(0..candidates.len())];
            chosen.push(Small { bits, phase: 0 });
        }
        for img in chosen.iter_mut() {
            if rng.gen::<bool>() {
                img.phase = 2;
            }
        }
        Self::from_small([chosen[0], chosen[1], chosen[2], chosen[3]])
            .expect("constructed symplectic")
    }

    /// Conjugates the sites `(q1, q2)` of `p` in place.
    #[inline]
    pub(crate) fn apply_to_row(&self, p: &mut PauliString, q1: usize, q2: usize) {
        let (w1, b1) = (q1 / 64, q1 % 64);
        let (w2, b2) = (q2 / 64, q2 % 64);
        let (x, z, phase) = p.words_mut();
        let idx = ((x[w1] >> b1) & 1)
            | (((z[w1] >> b1) & 1) << 1)
            | (((x[w2] >> b2) & 1) << 2)
            | (((z[w2] >> b2) & 1) << 3);
        let (out, ph) = self.table[idx as usize];
        let out = out as u64;
        x[w1] = (x[w1] & !(1 << b1)) | ((out & 1) << b1);
        z[w1] = (z[w1] & !(1 << b1)) | (((out >> 1) & 1) << b1);
        x[w2] = (x[w2] & !(1 << b2)) | (((out >> 2) & 1) << b2);
        z[w2] = (z[w2] & !(1 << b2)) | (((out >> 3) & 1) << b2);
        *phase = (*phase + ph) & 3;
    }

    /// Conjugates a two-qubit Pauli string.
    pub fn conjugate(&self, p: &PauliString) -> Result<PauliString> {
        if p.n_qubits() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: p.n_qubits(),
            });
        }
        let mut out = p.clone();
        self.apply_to_row(&mut out, 0, 1);
        Ok(out)
    }
}

fn in_span(chosen: &[Small], bits: u8) -> bool {
    let n = chosen.len();
    (0u32..(1 << n)).any(|mask| {
        let combo = chosen
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(0u8, |acc, (_, c)| acc ^ c.bits);
        combo == bits
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn cnot_conjugation_identities() {
        let g = CliffordGate::cnot();
        assert_eq!(g.conjugate(&p("XI")).unwrap(), p("XX"));
        assert_eq!(g.conjugate(&p("IZ")).unwrap(), p("ZZ"));
        assert_eq!(g.conjugate(&p("YI")).unwrap(), p("YX"));
        assert_eq!(g.conjugate(&p("XZ")).unwrap(), p("-YY"));
    }

    #[test]
    fn hadamard_maps_z_to_x_and_flips_y() {
        let h = CliffordGate::hadamard_first();
        assert_eq!(h.conjugate(&p("ZI")).unwrap(), p("XI"));
        assert_eq!(h.conjugate(&p("YI")).unwrap(), p("-YI"));
    }

    #[test]
    fn invalid_images_rejected() {
        let bad = ["XI", "XI", "IX", "IZ"].map(|s| p(s));
        assert!(CliffordGate::from_images(bad).is_err());
        let commuting = ["XI", "IX", "ZI", "IZ"].map(|s| p(s));
        assert!(CliffordGate::from_images(commuting).is_err());
    }

    #[test]
    fn random_gates_satisfy_symplectic_constraints() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..2000 {
            let g = CliffordGate::random(&mut rng);
            let im: Vec<PauliString> = (0..4).map(|i| g.image(i)).collect();
            assert!(!im[0].commutes(&im[1]).unwrap());
            assert!(im[0].commutes(&im[3]).unwrap());
            assert!(im[0].commutes(&im[2]).unwrap());
            assert!(!im[2].commutes(&im[3]).unwrap());
            // Hermitian in, Hermitian out
            for idx in 0..16u8 {
                assert_eq!(g.table[idx as usize].1 & 1, 0);
            }
        }
    }

    #[test]
    fn sampler_reaches_every_group_element() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut seen = HashSet::new();
        for _ in 0..400_000 {
            seen.insert(CliffordGate::random(&mut rng).images);
        }
        assert_eq!(seen.len(), 11520);
    }
}
