//! Basis enumeration for the symmetric irrep (λ,0) and the su(3) generators
//! realized as matrices on it.
//!
//! The irrep is carried by three-mode oscillator states |n₁n₂n₃⟩ with
//! n₁+n₂+n₃ = λ. The algebra is spanned by the ladder operators
//! Ĉ_ij = a_i†a_j (i ≠ j) and the Cartan pair ĥ₁ = n̂₂ − n̂₁,
//! ĥ₂ = n̂₃ − n̂₂.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::Error;

/// Occupation triple labeling a weight vector of (λ,0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisState {
    pub n1: u32,
    pub n2: u32,
    pub n3: u32,
}

impl BasisState {
    pub fn new(n1: u32, n2: u32, n3: u32) -> Self {
        Self { n1, n2, n3 }
    }

    /// Total occupation, i.e. the irrep label this state belongs to.
    pub fn total(&self) -> u32 {
        self.n1 + self.n2 + self.n3
    }

    pub fn occupation(&self, mode: usize) -> u32 {
        match mode {
            1 => self.n1,
            2 => self.n2,
            3 => self.n3,
            _ => panic!("mode {mode} out of range"),
        }
    }

    /// Component-wise sum with another weight.
    pub fn plus(&self, other: &BasisState) -> BasisState {
        BasisState::new(self.n1 + other.n1, self.n2 + other.n2, self.n3 + other.n3)
    }

    /// Component-wise difference, `None` if any component would go negative.
    pub fn checked_sub(&self, other: &BasisState) -> Option<BasisState> {
        Some(BasisState::new(
            self.n1.checked_sub(other.n1)?,
            self.n2.checked_sub(other.n2)?,
            self.n3.checked_sub(other.n3)?,
        ))
    }
}

/// dim (λ,0) = ½(λ+1)(λ+2).
pub fn dim(lambda: u32) -> usize {
    ((lambda as usize + 1) * (lambda as usize + 2)) / 2
}

/// The ordered basis of (λ,0).
///
/// Canonical ordering is lexicographic descending in (n₁, n₂): n₁ runs from
/// λ down to 0, then n₂ from λ−n₁ down to 0, with n₃ fixed by the sum. For
/// λ = 1 this makes the fundamental basis (e₁, e₂, e₃) and puts the lowest
/// weight |00λ⟩ last.
#[derive(Debug, Clone)]
pub struct IrrepBasis {
    lambda: u32,
    states: Vec<BasisState>,
}

impl IrrepBasis {
    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[BasisState] {
        &self.states
    }

    pub fn state(&self, index: usize) -> &BasisState {
        &self.states[index]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BasisState> {
        self.states.iter()
    }

    /// Position of a weight in the canonical ordering, `None` if it does not
    /// belong to this irrep. Computed arithmetically; the ordering makes
    /// `index` a bijection onto 0..dim−1.
    pub fn position(&self, s: &BasisState) -> Option<usize> {
        if s.total() != self.lambda {
            return None;
        }
        let m = (self.lambda - s.n1) as usize;
        Some(m * (m + 1) / 2 + m - s.n2 as usize)
    }

    /// Index of the lowest weight state |00λ⟩.
    pub fn lowest_weight(&self) -> usize {
        self.states.len() - 1
    }
}

/// All occupation triples with n₁+n₂+n₃ = λ, canonically ordered.
pub fn enumerate_basis(lambda: u32) -> IrrepBasis {
    let mut states = Vec::with_capacity(dim(lambda));
    for n1 in (0..=lambda).rev() {
        for n2 in (0..=lambda - n1).rev() {
            states.push(BasisState::new(n1, n2, lambda - n1 - n2));
        }
    }
    IrrepBasis { lambda, states }
}

/// A one-body su(3) element lifted to a dim×dim matrix on (λ,0).
#[derive(Debug, Clone, PartialEq)]
pub struct CollectiveOperator {
    pub lambda: u32,
    pub matrix: DMatrix<Complex64>,
}

impl CollectiveOperator {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    fn zeros(lambda: u32) -> Self {
        let d = dim(lambda);
        Self {
            lambda,
            matrix: DMatrix::zeros(d, d),
        }
    }
}

fn check_mode(i: usize) -> Result<(), Error> {
    if (1..=3).contains(&i) {
        Ok(())
    } else {
        Err(Error::InvalidMode(i))
    }
}

/// Matrix of Ĉ_ij = a_i†a_j on (λ,0).
///
/// Ĉ₁₂|n₁n₂n₃⟩ = √((n₁+1)n₂) |n₁+1,n₂−1,n₃⟩, and cyclically; each column
/// with n_j > 0 holds exactly one nonzero real entry.
pub fn ladder_matrix(i: usize, j: usize, lambda: u32) -> Result<CollectiveOperator, Error> {
    check_mode(i)?;
    check_mode(j)?;
    if i == j {
        return Err(Error::InvalidGenerator(i));
    }
    let basis = enumerate_basis(lambda);
    let mut op = CollectiveOperator::zeros(lambda);
    for (col, s) in basis.iter().enumerate() {
        let nj = s.occupation(j);
        if nj == 0 {
            continue;
        }
        let ni = s.occupation(i);
        let mut occ = [s.n1, s.n2, s.n3];
        occ[i - 1] += 1;
        occ[j - 1] -= 1;
        let target = BasisState::new(occ[0], occ[1], occ[2]);
        let row = basis.position(&target).expect("ladder stays inside irrep");
        op.matrix[(row, col)] = Complex64::new((((ni + 1) * nj) as f64).sqrt(), 0.0);
    }
    Ok(op)
}

/// Diagonal matrix of the number operator n̂_i on (λ,0).
pub fn number_matrix(i: usize, lambda: u32) -> Result<CollectiveOperator, Error> {
    check_mode(i)?;
    let basis = enumerate_basis(lambda);
    let mut op = CollectiveOperator::zeros(lambda);
    for (col, s) in basis.iter().enumerate() {
        op.matrix[(col, col)] = Complex64::new(s.occupation(i) as f64, 0.0);
    }
    Ok(op)
}

/// ĥ₁ = n̂₂ − n̂₁ (k = 1) or ĥ₂ = n̂₃ − n̂₂ (k = 2).
pub fn cartan_matrix(k: usize, lambda: u32) -> Result<CollectiveOperator, Error> {
    let (plus, minus) = match k {
        1 => (2, 1),
        2 => (3, 2),
        _ => return Err(Error::InvalidCartanLabel(k)),
    };
    let mut op = number_matrix(plus, lambda)?;
    let neg = number_matrix(minus, lambda)?;
    op.matrix -= neg.matrix;
    Ok(op)
}
