//! Bit-packed Pauli strings.
//!
//! A [`PauliString`] on `n` qubits is stored as two bit vectors `x`, `z` and a
//! phase exponent `phase` (mod 4). It represents the operator
//!
//! `i^phase · P_0 ⊗ P_1 ⊗ ... ⊗ P_{n-1}`
//!
//! with the single-site letter chosen from the bit pair: `(0,0) = I`,
//! `(1,0) = X`, `(0,1) = Z`, `(1,1) = Y`. The letter `Y` is the Hermitian
//! Pauli `Y = iXZ`, so a string is Hermitian exactly when `phase` is even and
//! its observable sign is `+1` for phase 0, `-1` for phase 2.

use std::fmt;
use std::str::FromStr;

use crate::bits::{get_bit, set_bit, words_for, QubitSet};
use crate::error::{Error, Result};
use crate::region::Region;

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    fn to_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Observable sign of a Hermitian Pauli string.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub(crate) fn phase(self) -> u8 {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 2,
        }
    }
}

/// Net `i`-exponent picked up per word when multiplying letters `a · b`.
///
/// `XY = iZ`, `YZ = iX`, `ZX = iY` contribute `+1`; the reversed products
/// contribute `-1`.
#[inline]
fn product_phase_word(ax: u64, az: u64, bx: u64, bz: u64) -> i32 {
    let a_x = ax & !az;
    let a_y = ax & az;
    let a_z = !ax & az;
    let b_x = bx & !bz;
    let b_y = bx & bz;
    let b_z = !bx & bz;
    let pos = (a_x & b_y) | (a_y & b_z) | (a_z & b_x);
    let neg = (a_y & b_x) | (a_z & b_y) | (a_x & b_z);
    pos.count_ones() as i32 - neg.count_ones() as i32
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: u8,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        let w = words_for(n);
        Self {
            n,
            x: vec![0; w],
            z: vec![0; w],
            phase: 0,
        }
    }

    /// A single-site Pauli `letter` on qubit `q` of an `n`-qubit register.
    pub fn single(n: usize, q: usize, letter: Pauli) -> Self {
        let mut p = Self::identity(n);
        p.set(q, letter);
        p
    }

    pub fn from_letters(letters: &[Pauli]) -> Self {
        let mut p = Self::identity(letters.len());
        for (q, &l) in letters.iter().enumerate() {
            p.set(q, l);
        }
        p
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn set_phase(&mut self, phase: u8) {
        self.phase = phase & 3;
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase & 1 == 0
    }

    /// The observable sign; phases `i` and `-i` are rejected.
    pub fn sign(&self) -> Result<Sign> {
        match self.phase {
            0 => Ok(Sign::Plus),
            2 => Ok(Sign::Minus),
            p => Err(Error::NonHermitian(p)),
        }
    }

    pub fn get(&self, q: usize) -> Pauli {
        Pauli::from_bits(get_bit(&self.x, q), get_bit(&self.z, q))
    }

    pub fn set(&mut self, q: usize, letter: Pauli) {
        let (x, z) = letter.bits();
        set_bit(&mut self.x, q, x);
        set_bit(&mut self.z, q, z);
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    pub(crate) fn words_mut(&mut self) -> (&mut [u64], &mut [u64], &mut u8) {
        (&mut self.x, &mut self.z, &mut self.phase)
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    /// Lowest and highest non-identity sites, if any.
    pub fn support_bounds(&self) -> Option<(usize, usize)> {
        let mut lo = None;
        let mut hi = None;
        for (w, (x, z)) in self.x.iter().zip(&self.z).enumerate() {
            let s = x | z;
            if s != 0 {
                if lo.is_none() {
                    lo = Some(w * 64 + s.trailing_zeros() as usize);
                }
                hi = Some(w * 64 + 63 - s.leading_zeros() as usize);
            }
        }
        lo.zip(hi)
    }

    /// Same operator content, ignoring the phase.
    pub fn content_eq(&self, other: &Self) -> bool {
        self.n == other.n && self.x == other.x && self.z == other.z
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// Group product `self · other` with the phase tracked mod 4.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        let mut out = self.clone();
        out.mul_assign_unchecked(other);
        Ok(out)
    }

    /// `self ← self · other`. Both operands must have the same length.
    pub(crate) fn mul_assign_unchecked(&mut self, other: &Self) {
        let mut acc = self.phase as i32 + other.phase as i32;
        for i in 0..self.x.len() {
            acc += product_phase_word(self.x[i], self.z[i], other.x[i], other.z[i]);
            self.x[i] ^= other.x[i];
            self.z[i] ^= other.z[i];
        }
        self.phase = acc.rem_euclid(4) as u8;
    }

    /// `self ← self · other` on the operator content only; the phase is left
    /// untouched. Used for tableau rows whose sign carries no meaning.
    pub(crate) fn xor_content_unchecked(&mut self, other: &Self) {
        for i in 0..self.x.len() {
            self.x[i] ^= other.x[i];
            self.z[i] ^= other.z[i];
        }
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        Ok(!self.anticommutes_unchecked(other))
    }

    #[inline]
    pub(crate) fn anticommutes_unchecked(&self, other: &Self) -> bool {
        let mut parity = 0u32;
        for i in 0..self.x.len() {
            parity ^= ((self.x[i] & other.z[i]) ^ (self.z[i] & other.x[i])).count_ones();
        }
        parity & 1 == 1
    }

    /// The Pauli on `|r|` qubits obtained by keeping the sites of `r`, in
    /// segment order. The phase is dropped.
    pub fn restrict(&self, r: &Region) -> Result<Self> {
        let qubits = r.qubits(self.n)?;
        let mut out = Self::identity(qubits.len());
        for (i, &q) in qubits.iter().enumerate() {
            out.set(i, self.get(q));
        }
        Ok(out)
    }

    /// Content with every site outside `set` replaced by the identity. The
    /// phase is dropped.
    pub fn masked(&self, set: &QubitSet) -> Self {
        let m = set.words();
        Self {
            n: self.n,
            x: self.x.iter().zip(m).map(|(a, b)| a & b).collect(),
            z: self.z.iter().zip(m).map(|(a, b)| a & b).collect(),
            phase: 0,
        }
    }

    /// Concatenated `x | z` bits, the row used for GF(2) rank computations.
    pub(crate) fn symplectic_row(&self) -> Vec<u64> {
        let mut row = Vec::with_capacity(2 * self.x.len());
        row.extend_from_slice(&self.x);
        row.extend_from_slice(&self.z);
        row
    }
}

impl fmt::Display for PauliString {
    /// `+XIZY` style; phases `±i` are written as `+i`/`-i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        f.write_str(prefix)?;
        for q in 0..self.n {
            write!(f, "{}", self.get(q).to_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (phase, body) = if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else {
            (0, s)
        };
        let letters = body
            .chars()
            .map(|c| match c {
                'I' | '_' | '.' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                _ => Err(Error::ParsePauli(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        if letters.is_empty() {
            return Err(Error::ParsePauli(s.to_string()));
        }
        let mut p = Self::from_letters(&letters);
        p.phase = phase;
        Ok(p)
    }
}
