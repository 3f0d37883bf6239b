//! Entropies and logical counts of every contiguous segment at once.
//!
//! A generating set is brought into a gauge where each row has a left
//! endpoint from an echelon form and rows ending on the same site carry
//! independent letters there. In that gauge the subgroup supported on a
//! segment `[a, b]` is spanned by exactly the rows whose endpoints both lie
//! in `[a, b]`, so its dimension is a 2D prefix count. Applying this to the
//! stabilizers gives `S(A) = |A| - dim S_A`, and applying it to stabilizers
//! plus logical pairs gives `dim C(S)_A`, whence `ℓ_A = dim C(S)_A - dim S_A`.
//!
//! Under periodic boundaries segments of length at most `L/2` are counted on
//! one of two cuts of the ring (origins `0` and `L/2`); longer segments are
//! obtained from their complements.

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliString};
use crate::region::Boundary;
use crate::stabilizer::StabilizerState;

/// `count(a, b)` = number of gauge-fixed rows with both endpoints in `[a, b]`.
#[derive(Clone, Debug)]
struct EndpointCounts {
    n: usize,
    table: Vec<u32>,
}

impl EndpointCounts {
    fn from_endpoints(n: usize, ends: &[(usize, usize)]) -> Self {
        let mut table = vec![0u32; n * n];
        for &(l, r) in ends {
            table[l * n + r] += 1;
        }
        // prefix over r, then suffix over l
        for l in 0..n {
            for r in 1..n {
                table[l * n + r] += table[l * n + r - 1];
            }
        }
        for l in (0..n.saturating_sub(1)).rev() {
            for r in 0..n {
                table[l * n + r] += table[(l + 1) * n + r];
            }
        }
        Self { n, table }
    }

    fn count(&self, a: usize, b: usize) -> usize {
        debug_assert!(a <= b && b < self.n);
        self.table[a * self.n + b] as usize
    }
}

fn letter_bits(p: &PauliString, q: usize) -> u8 {
    let (x, z) = p.get(q).bits();
    x as u8 | (z as u8) << 1
}

/// Brings `rows` (independent) into the two-sided gauge and returns each
/// row's `(left, right)` endpoints.
fn gauge_endpoints(n: usize, mut rows: Vec<PauliString>) -> Vec<(usize, usize)> {
    let m = rows.len();
    let mut left = vec![usize::MAX; m];

    // Echelon form in column order x_0, z_0, x_1, z_1, ...
    let mut active: Vec<usize> = (0..m).collect();
    for site in 0..n {
        if active.is_empty() {
            break;
        }
        for bit in [1u8, 2u8] {
            let Some(pos) = active
                .iter()
                .position(|&i| letter_bits(&rows[i], site) & bit != 0)
            else {
                continue;
            };
            let piv = active.swap_remove(pos);
            left[piv] = site;
            let pivot = rows[piv].clone();
            for &i in &active {
                if letter_bits(&rows[i], site) & bit != 0 {
                    rows[i].xor_content_unchecked(&pivot);
                }
            }
        }
    }
    debug_assert!(active.is_empty(), "rows must be independent");

    let right_of = |p: &PauliString| p.support_bounds().expect("nonzero row").1;
    let mut right: Vec<usize> = rows.iter().map(right_of).collect();
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &r) in right.iter().enumerate() {
        buckets[r].push(i);
    }

    for y in (0..n).rev() {
        let mut ending = std::mem::take(&mut buckets[y]);
        if ending.len() <= 1 {
            continue;
        }
        // Adding a row with a larger left endpoint keeps the left endpoint.
        ending.sort_by(|&a, &b| left[b].cmp(&left[a]).then(a.cmp(&b)));
        let p1 = ending[0];
        let l1 = letter_bits(&rows[p1], y);
        let mut p2: Option<(usize, u8)> = None;
        for &i in &ending[1..] {
            let li = letter_bits(&rows[i], y);
            let add: Vec<usize> = if li == l1 {
                vec![p1]
            } else if let Some((j, l2)) = p2 {
                if li == l2 {
                    vec![j]
                } else {
                    vec![p1, j]
                }
            } else {
                p2 = Some((i, li));
                continue;
            };
            for j in add {
                let src = rows[j].clone();
                rows[i].xor_content_unchecked(&src);
            }
            right[i] = right_of(&rows[i]);
            debug_assert!(right[i] < y);
            buckets[right[i]].push(i);
        }
    }

    left.into_iter().zip(right).collect()
}

fn rotate(p: &PauliString, origin: usize) -> PauliString {
    let n = p.n_qubits();
    let mut out = PauliString::identity(n);
    for j in 0..n {
        let letter = p.get((j + origin) % n);
        if letter != Pauli::I {
            out.set(j, letter);
        }
    }
    out
}

#[derive(Clone, Debug)]
struct Cut {
    origin: usize,
    stabilizers: EndpointCounts,
    centralizer: EndpointCounts,
}

impl Cut {
    fn new(state: &StabilizerState, origin: usize) -> Self {
        let n = state.n_qubits();
        let rot = |p: &PauliString| rotate(p, origin);
        let stabs: Vec<PauliString> = state.generators().iter().map(rot).collect();
        let (lx, lz) = state.logical_operators();
        let mut cent = stabs.clone();
        cent.extend(lx.iter().chain(lz).map(rot));
        Self {
            origin,
            stabilizers: EndpointCounts::from_endpoints(n, &gauge_endpoints(n, stabs)),
            centralizer: EndpointCounts::from_endpoints(n, &gauge_endpoints(n, cent)),
        }
    }
}

/// Entropy and logical-count profile over all contiguous segments of a
/// state, after a one-off `O(L³/64)` gauge fixing.
#[derive(Clone, Debug)]
pub struct SegmentProfile {
    n: usize,
    k: usize,
    bc: Boundary,
    cuts: Vec<Cut>,
}

impl SegmentProfile {
    pub fn new(state: &StabilizerState, bc: Boundary) -> Self {
        let n = state.n_qubits();
        let origins = match bc {
            Boundary::Open => vec![0],
            Boundary::Periodic => vec![0, n / 2],
        };
        Self {
            n,
            k: state.num_logical(),
            bc,
            cuts: origins.into_iter().map(|o| Cut::new(state, o)).collect(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn boundary(&self) -> Boundary {
        self.bc
    }

    pub fn total_entropy(&self) -> usize {
        self.k
    }

    fn check(&self, start: usize, length: usize) -> Result<()> {
        let ok = match self.bc {
            Boundary::Open => start + length <= self.n,
            Boundary::Periodic => start < self.n.max(1) && length <= self.n,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidRegion {
                start,
                length,
                n_qubits: self.n,
            })
        }
    }

    /// `(dim S_A, dim C(S)_A)` for a segment that does not cross the cut of
    /// one of the stored origins.
    fn dims(&self, start: usize, length: usize) -> (usize, usize) {
        for cut in &self.cuts {
            let a = (start + self.n - cut.origin) % self.n;
            if a + length <= self.n {
                let b = a + length - 1;
                return (cut.stabilizers.count(a, b), cut.centralizer.count(a, b));
            }
        }
        unreachable!("segment of length {length} crosses every cut")
    }

    fn is_short(&self, length: usize) -> bool {
        self.bc == Boundary::Open || length <= self.n / 2
    }

    /// `S(A)` in units of ln 2 for the segment `[start, start + length)`
    /// (wrapping under periodic boundaries).
    pub fn entropy(&self, start: usize, length: usize) -> Result<usize> {
        self.check(start, length)?;
        if length == 0 {
            return Ok(0);
        }
        if length == self.n {
            return Ok(self.k);
        }
        if self.is_short(length) {
            return Ok(length - self.dims(start, length).0);
        }
        let (cs, cl) = ((start + length) % self.n, self.n - length);
        let s_c = self.entropy(cs, cl)?;
        let ell_c = self.logical_count(cs, cl)?;
        Ok(s_c + self.k - ell_c)
    }

    /// `ℓ_A = I(A:R)` in units of ln 2.
    pub fn logical_count(&self, start: usize, length: usize) -> Result<usize> {
        self.check(start, length)?;
        if length == 0 {
            return Ok(0);
        }
        if length == self.n {
            return Ok(2 * self.k);
        }
        if self.is_short(length) {
            let (s, c) = self.dims(start, length);
            return Ok(c - s);
        }
        let (cs, cl) = ((start + length) % self.n, self.n - length);
        Ok(2 * self.k - self.logical_count(cs, cl)?)
    }

    /// `I(A:Ā) = S(A) + S(Ā) - S(Q)`.
    pub fn mutual_information_with_complement(&self, start: usize, length: usize) -> Result<usize> {
        self.check(start, length)?;
        let rest_start = (start + length) % self.n.max(1);
        let s_rest = match self.bc {
            Boundary::Periodic => self.entropy(rest_start, self.n - length)?,
            Boundary::Open if start == 0 || start + length == self.n => {
                let rs = if start == 0 { length } else { 0 };
                self.entropy(rs, self.n - length)?
            }
            Boundary::Open => {
                return Err(Error::InvalidRegion {
                    start,
                    length,
                    n_qubits: self.n,
                })
            }
        };
        Ok(self.entropy(start, length)? + s_rest - self.k)
    }
}
