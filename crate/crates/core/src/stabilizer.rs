//! Mixed stabilizer states (code states) and their entropies.
//!
//! The state on `L` qubits is the maximally mixed state on the code space of
//! a stabilizer group `S = ⟨g_1, ..., g_m⟩`; its entropy is `k = L - m` (in
//! units of ln 2). Besides the `m` generators the tableau keeps a
//! destabilizer for each generator and `k` logical pairs, so that every
//! measurement update costs `O(L²/64)` word operations. Only the generator
//! signs are tracked; destabilizer and logical rows carry content only.

use std::fmt::Write as _;

use rand::Rng;

use crate::bits::QubitSet;
use crate::clifford::CliffordGate;
use crate::error::{Error, Result};
use crate::gf2::{rank_of_rows, Gf2Matrix};
use crate::pauli::{Pauli, PauliString, Sign};
use crate::region::Subsystem;
use crate::symplectic::complete_basis;

/// Which branch of the measurement update applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MeasurementCase {
    /// Some generator anticommutes with the measured Pauli; outcome random.
    Anticommuting,
    /// The measured Pauli is (up to sign) already in the stabilizer group.
    TrivialLogical,
    /// The measured Pauli is a nontrivial logical; the state purifies by one.
    NontrivialLogical,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MeasurementOutcome {
    pub sign: Sign,
    pub case: MeasurementCase,
    /// Entropy decrease in units of ln 2; 1 exactly for nontrivial logicals.
    pub entropy_drop: u32,
}

#[derive(Clone, Debug)]
pub struct StabilizerState {
    n: usize,
    stabs: Vec<PauliString>,
    destabs: Vec<PauliString>,
    logical_x: Vec<PauliString>,
    logical_z: Vec<PauliString>,
}

impl PartialEq for StabilizerState {
    /// Two states are equal when their generator lists agree exactly.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.stabs == other.stabs
    }
}

impl StabilizerState {
    /// The maximally mixed state: no generators, `k = L`.
    pub fn new_maximally_mixed(n: usize) -> Self {
        Self {
            n,
            stabs: Vec::new(),
            destabs: Vec::new(),
            logical_x: (0..n).map(|q| PauliString::single(n, q, Pauli::X)).collect(),
            logical_z: (0..n).map(|q| PauliString::single(n, q, Pauli::Z)).collect(),
        }
    }

    /// The product state `|0...0⟩`, stabilized by every `Z_i`.
    pub fn new_product_state(n: usize) -> Self {
        Self {
            n,
            stabs: (0..n).map(|q| PauliString::single(n, q, Pauli::Z)).collect(),
            destabs: (0..n).map(|q| PauliString::single(n, q, Pauli::X)).collect(),
            logical_x: Vec::new(),
            logical_z: Vec::new(),
        }
    }

    /// The code state of the group generated by `generators`, which must be
    /// Hermitian, mutually commuting and independent.
    pub fn from_generators(n: usize, generators: Vec<PauliString>) -> Result<Self> {
        for g in &generators {
            if g.n_qubits() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: g.n_qubits(),
                });
            }
            g.sign()?;
        }
        for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                if generators[i].anticommutes_unchecked(&generators[j]) {
                    return Err(Error::NonCommuting(i, j));
                }
            }
        }
        let rank = content_rank(n, &generators);
        if rank < generators.len() {
            return Err(Error::Dependent {
                rank,
                count: generators.len(),
            });
        }
        let basis = complete_basis(n, &generators);
        Ok(Self {
            n,
            stabs: generators,
            destabs: basis.destabilizers,
            logical_x: basis.logical_x,
            logical_z: basis.logical_z,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.stabs
    }

    pub fn num_generators(&self) -> usize {
        self.stabs.len()
    }

    /// Number of logical qubits `k = L - m`.
    pub fn num_logical(&self) -> usize {
        self.n - self.stabs.len()
    }

    /// Representative logical operators `(x̄_j, z̄_j)` maintained by the
    /// tableau (content only).
    pub fn logical_operators(&self) -> (&[PauliString], &[PauliString]) {
        (&self.logical_x, &self.logical_z)
    }

    /// Applies `gate` to the ordered pair of sites `(q1, q2)`.
    pub fn apply_clifford(&mut self, gate: &CliffordGate, q1: usize, q2: usize) -> Result<()> {
        self.apply_cliffords(&[(gate, q1, q2)])
    }

    /// Applies a list of gates in order. Gates on overlapping sites are
    /// applied sequentially.
    pub fn apply_cliffords(&mut self, gates: &[(&CliffordGate, usize, usize)]) -> Result<()> {
        for &(_, a, b) in gates {
            if a == b || a >= self.n || b >= self.n {
                return Err(Error::InvalidSites(a, b, self.n));
            }
        }
        for row in self.rows_mut() {
            for &(g, a, b) in gates {
                g.apply_to_row(row, a, b);
            }
        }
        Ok(())
    }

    fn rows_mut(&mut self) -> impl Iterator<Item = &mut PauliString> {
        self.stabs
            .iter_mut()
            .chain(self.destabs.iter_mut())
            .chain(self.logical_x.iter_mut())
            .chain(self.logical_z.iter_mut())
    }

    /// Projective measurement of the Hermitian Pauli `g`.
    pub fn measure<R: Rng + ?Sized>(
        &mut self,
        g: &PauliString,
        rng: &mut R,
    ) -> Result<MeasurementOutcome> {
        if g.n_qubits() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: g.n_qubits(),
            });
        }
        g.sign()?;
        let probe = Probe::new(g);

        if let Some(p) = self.stabs.iter().position(|s| probe.anticommutes(s)) {
            let pivot = self.stabs[p].clone();
            for (i, s) in self.stabs.iter_mut().enumerate() {
                if i != p && probe.anticommutes(s) {
                    s.mul_assign_unchecked(&pivot);
                }
            }
            let others = self
                .destabs
                .iter_mut()
                .enumerate()
                .filter(|&(i, _)| i != p)
                .map(|(_, r)| r)
                .chain(self.logical_x.iter_mut())
                .chain(self.logical_z.iter_mut());
            for r in others {
                if probe.anticommutes(r) {
                    r.xor_content_unchecked(&pivot);
                }
            }
            let sign = random_sign(rng);
            self.destabs[p] = content_only(pivot);
            self.stabs[p] = signed(g, sign);
            return Ok(MeasurementOutcome {
                sign,
                case: MeasurementCase::Anticommuting,
                entropy_drop: 0,
            });
        }

        let hit = self
            .logical_x
            .iter()
            .zip(&self.logical_z)
            .enumerate()
            .find_map(|(j, (x, z))| {
                if probe.anticommutes(x) {
                    Some((j, false))
                } else if probe.anticommutes(z) {
                    Some((j, true))
                } else {
                    None
                }
            });

        match hit {
            Some((j, is_z)) => {
                let h = if is_z {
                    self.logical_z[j].clone()
                } else {
                    self.logical_x[j].clone()
                };
                for r in self.destabs.iter_mut() {
                    if probe.anticommutes(r) {
                        r.xor_content_unchecked(&h);
                    }
                }
                for (i, (x, z)) in self
                    .logical_x
                    .iter_mut()
                    .zip(self.logical_z.iter_mut())
                    .enumerate()
                {
                    if i == j {
                        continue;
                    }
                    if probe.anticommutes(x) {
                        x.xor_content_unchecked(&h);
                    }
                    if probe.anticommutes(z) {
                        z.xor_content_unchecked(&h);
                    }
                }
                self.logical_x.swap_remove(j);
                self.logical_z.swap_remove(j);
                let sign = random_sign(rng);
                self.stabs.push(signed(g, sign));
                self.destabs.push(h);
                Ok(MeasurementOutcome {
                    sign,
                    case: MeasurementCase::NontrivialLogical,
                    entropy_drop: 1,
                })
            }
            None => {
                // g = ∏ s_i over i with ⟨g, d_i⟩ = 1
                let mut prod = PauliString::identity(self.n);
                for (s, d) in self.stabs.iter().zip(&self.destabs) {
                    if probe.anticommutes(d) {
                        prod.mul_assign_unchecked(s);
                    }
                }
                debug_assert!(prod.content_eq(g));
                let sign = match (g.phase() + 4 - prod.phase()) & 3 {
                    0 => Sign::Plus,
                    _ => Sign::Minus,
                };
                Ok(MeasurementOutcome {
                    sign,
                    case: MeasurementCase::TrivialLogical,
                    entropy_drop: 0,
                })
            }
        }
    }

    /// Measures the single-site Pauli `letter` on qubit `q`.
    pub fn measure_site<R: Rng + ?Sized>(
        &mut self,
        q: usize,
        letter: Pauli,
        rng: &mut R,
    ) -> Result<MeasurementOutcome> {
        if q >= self.n || letter == Pauli::I {
            return Err(Error::InvalidSites(q, q, self.n));
        }
        self.measure(&PauliString::single(self.n, q, letter), rng)
    }

    /// Entropy of the reduced state on `a`, in units of ln 2:
    /// `|A| - m + rank(generators restricted to Ā)`.
    pub fn entropy<A: Subsystem + ?Sized>(&self, a: &A) -> Result<usize> {
        let set = a.qubit_set(self.n)?;
        Ok(self.entropy_of_set(&set))
    }

    pub(crate) fn entropy_of_set(&self, a: &QubitSet) -> usize {
        let rest = a.complement();
        let rows: Vec<Vec<u64>> = self
            .stabs
            .iter()
            .map(|s| s.masked(&rest).symplectic_row())
            .collect();
        let r = rank_of_rows(2 * rest.words().len() * 64, rows.iter().map(|r| r.as_slice()));
        a.len() + r - self.stabs.len()
    }

    /// Entropy of the whole register: `k = L - m`.
    pub fn total_entropy(&self) -> usize {
        self.num_logical()
    }

    /// `I(A:R) = S(A) + S(Q) - S(Ā)` for any purification `R` of the state.
    pub fn mutual_information_with_reference<A: Subsystem + ?Sized>(&self, a: &A) -> Result<usize> {
        let set = a.qubit_set(self.n)?;
        Ok(self.mi_reference_of_set(&set))
    }

    pub(crate) fn mi_reference_of_set(&self, a: &QubitSet) -> usize {
        self.entropy_of_set(a) + self.total_entropy() - self.entropy_of_set(&a.complement())
    }

    /// `I(A:B) = S(A) + S(B) - S(A∪B)` for disjoint `A`, `B`.
    pub fn mutual_information_between<A, B>(&self, a: &A, b: &B) -> Result<usize>
    where
        A: Subsystem + ?Sized,
        B: Subsystem + ?Sized,
    {
        let sa = a.qubit_set(self.n)?;
        let sb = b.qubit_set(self.n)?;
        if !sa.is_disjoint(&sb) {
            return Err(Error::OverlappingRegions);
        }
        Ok(self.entropy_of_set(&sa) + self.entropy_of_set(&sb)
            - self.entropy_of_set(&sa.union(&sb)))
    }

    /// Expresses the content of `g` as a product of generators by solving a
    /// GF(2) linear system. Returns the generator indices used, or `None` if
    /// `g` is not in the group (up to phase).
    pub fn decompose(&self, g: &PauliString) -> Result<Option<Vec<usize>>> {
        if g.n_qubits() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: g.n_qubits(),
            });
        }
        let m = self.stabs.len();
        let width = 2 * self.n;
        // Columns: generators and g, rows: symplectic coordinates.
        let mut a = Gf2Matrix::zeros(width, m + 1);
        for (j, p) in self.stabs.iter().chain(std::iter::once(g)).enumerate() {
            for q in 0..self.n {
                let (x, z) = p.get(q).bits();
                a.set(q, j, x);
                a.set(self.n + q, j, z);
            }
        }
        let pivots = a.row_reduce_cols(m + 1);
        if pivots.last() == Some(&m) {
            return Ok(None);
        }
        let used = pivots
            .iter()
            .enumerate()
            .filter(|&(r, _)| a.get(r, m))
            .map(|(_, &c)| c)
            .collect();
        Ok(Some(used))
    }

    /// Checks commutation and independence of the generators and the full
    /// symplectic relations of the tableau.
    pub fn check_invariants(&self) -> Result<()> {
        let m = self.stabs.len();
        for i in 0..m {
            self.stabs[i].sign()?;
            for j in i + 1..m {
                if self.stabs[i].anticommutes_unchecked(&self.stabs[j]) {
                    return Err(Error::NonCommuting(i, j));
                }
            }
        }
        let rank = content_rank(self.n, &self.stabs);
        if rank < m {
            return Err(Error::Dependent { rank, count: m });
        }
        let k = self.num_logical();
        if self.destabs.len() != m || self.logical_x.len() != k || self.logical_z.len() != k {
            return Err(Error::Snapshot("tableau row counts inconsistent".into()));
        }
        let broken = |what: &str| Err(Error::Snapshot(format!("symplectic relation broken: {what}")));
        for i in 0..m {
            for j in 0..m {
                if self.stabs[i].anticommutes_unchecked(&self.destabs[j]) != (i == j) {
                    return broken("stabilizer/destabilizer");
                }
            }
            for l in self.logical_x.iter().chain(&self.logical_z) {
                if self.stabs[i].anticommutes_unchecked(l) || self.destabs[i].anticommutes_unchecked(l)
                {
                    return broken("logical/stabilizer");
                }
            }
        }
        for i in 0..k {
            for j in 0..k {
                if self.logical_x[i].anticommutes_unchecked(&self.logical_z[j]) != (i == j) {
                    return broken("logical pair");
                }
            }
        }
        Ok(())
    }

    /// Text snapshot: a `L=<n> m=<m>` header then one signed generator per line.
    pub fn to_snapshot(&self) -> String {
        let mut out = format!("L={} m={}\n", self.n, self.stabs.len());
        for s in &self.stabs {
            let _ = writeln!(out, "{s}");
        }
        out
    }

    pub fn from_snapshot(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Snapshot("empty snapshot".into()))?;
        let mut n = None;
        let mut m = None;
        for field in header.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::Snapshot(format!("bad header field {field:?}")))?;
            let v: usize = value
                .parse()
                .map_err(|_| Error::Snapshot(format!("bad header value {field:?}")))?;
            match key {
                "L" => n = Some(v),
                "m" => m = Some(v),
                _ => return Err(Error::Snapshot(format!("unknown header key {key:?}"))),
            }
        }
        let (n, m) = n
            .zip(m)
            .ok_or_else(|| Error::Snapshot("header needs L and m".into()))?;
        let gens = lines
            .map(str::parse::<PauliString>)
            .collect::<Result<Vec<_>>>()?;
        if gens.len() != m {
            return Err(Error::Snapshot(format!(
                "header says m={m}, found {} generators",
                gens.len()
            )));
        }
        Self::from_generators(n, gens)
    }
}

fn content_rank(n: usize, rows: &[PauliString]) -> usize {
    let packed: Vec<Vec<u64>> = rows.iter().map(PauliString::symplectic_row).collect();
    let _ = n;
    let cols = packed.first().map_or(0, |r| r.len() * 64);
    rank_of_rows(cols, packed.iter().map(|r| r.as_slice()))
}

fn content_only(mut p: PauliString) -> PauliString {
    p.set_phase(0);
    p
}

fn signed(g: &PauliString, sign: Sign) -> PauliString {
    let mut s = g.clone();
    s.set_phase((g.phase() + sign.phase()) & 3);
    s
}

fn random_sign<R: Rng + ?Sized>(rng: &mut R) -> Sign {
    if rng.gen::<bool>() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Commutation tests against a fixed Pauli, touching only the words where it
/// is supported.
struct Probe<'a> {
    g: &'a PauliString,
    words: Vec<usize>,
}

impl<'a> Probe<'a> {
    fn new(g: &'a PauliString) -> Self {
        let words = (0..g.x_words().len())
            .filter(|&w| g.x_words()[w] | g.z_words()[w] != 0)
            .collect();
        Self { g, words }
    }

    #[inline]
    fn anticommutes(&self, r: &PauliString) -> bool {
        let (gx, gz) = (self.g.x_words(), self.g.z_words());
        let (rx, rz) = (r.x_words(), r.z_words());
        let mut parity = 0u32;
        for &w in &self.words {
            parity ^= ((gx[w] & rz[w]) ^ (gz[w] & rx[w])).count_ones();
        }
        parity & 1 == 1
    }
}
