//! Exact-rational lattices: bases, Gram matrices, duals, integer kernels,
//! shortest vectors and coset minima.

use crate::enumerate::{enumerate_closest, enumerate_shortest, lll_reduce};
use crate::error::{Error, Result};
use crate::qmat::QMat;
use crate::rat::{dot, is_integer, norm_sq, rat_int, Int, Rat};
use crate::zmat::ZMat;
use num_integer::Integer;
use num_traits::{One, Zero};

/// A lattice of rank `r` inside `Q^n`, given by `r` independent basis rows.
/// Rank zero (no rows) is allowed; most operations reject it explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    ambient_dim: usize,
    basis: Vec<Vec<Rat>>,
}

/// The full set of minimal vectors of a lattice with its common squared
/// norm. The set is closed under negation and sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalVectorSet {
    vectors: Vec<Vec<Rat>>,
    min_norm_sq: Rat,
}

impl MinimalVectorSet {
    pub(crate) fn from_parts(mut vectors: Vec<Vec<Rat>>, min_norm_sq: Rat) -> Self {
        vectors.sort();
        debug_assert!(vectors.windows(2).all(|w| w[0] != w[1]), "duplicate minimal vector");
        MinimalVectorSet { vectors, min_norm_sq }
    }

    pub fn vectors(&self) -> &[Vec<Rat>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn min_norm_sq(&self) -> &Rat {
        &self.min_norm_sq
    }

    /// One representative per `{x, -x}` pair: the lexicographically smaller.
    pub fn sign_classes(&self) -> Vec<&Vec<Rat>> {
        self.vectors
            .iter()
            .filter(|v| {
                let neg: Vec<Rat> = v.iter().map(|x| -x.clone()).collect();
                **v < neg
            })
            .collect()
    }
}

/// A symmetric rational matrix (Gram matrices, second moments, projectors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricForm {
    mat: QMat,
}

impl SymmetricForm {
    pub fn new(mat: QMat) -> Result<Self> {
        if !mat.is_symmetric() {
            return Err(Error::InvalidInput("matrix is not symmetric".into()));
        }
        Ok(SymmetricForm { mat })
    }

    pub(crate) fn new_unchecked(mat: QMat) -> Self {
        debug_assert!(mat.is_symmetric());
        SymmetricForm { mat }
    }

    pub fn matrix(&self) -> &QMat {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn sub(&self, other: &SymmetricForm) -> SymmetricForm {
        SymmetricForm { mat: self.mat.sub(&other.mat) }
    }

    pub fn scale(&self, c: &Rat) -> SymmetricForm {
        SymmetricForm { mat: self.mat.scale(c) }
    }

    pub fn max_abs_entry(&self) -> Rat {
        self.mat.max_abs_entry()
    }
}

impl Lattice {
    /// Builds a lattice from independent basis rows. Fails when a row has
    /// the wrong length or the rows are dependent (Gram determinant zero).
    pub fn new(ambient_dim: usize, basis: Vec<Vec<Rat>>) -> Result<Self> {
        for row in &basis {
            if row.len() != ambient_dim {
                return Err(Error::DimensionMismatch { expected: ambient_dim, found: row.len() });
            }
        }
        if basis.len() > ambient_dim {
            return Err(Error::InvalidInput(format!(
                "{} rows cannot be independent in dimension {}",
                basis.len(),
                ambient_dim
            )));
        }
        let lattice = Lattice { ambient_dim, basis };
        if lattice.rank() > 0 && lattice.gram_matrix().det().is_zero() {
            return Err(Error::InvalidInput("basis rows are linearly dependent".into()));
        }
        Ok(lattice)
    }

    pub fn from_integer_rows(ambient_dim: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let basis = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat_int(x)).collect())
            .collect();
        Lattice::new(ambient_dim, basis)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    fn gram_matrix(&self) -> QMat {
        let r = self.rank();
        let mut g = QMat::zeros(r, r);
        for i in 0..r {
            for j in 0..=i {
                let v = dot(&self.basis[i], &self.basis[j]);
                g.set(i, j, v.clone());
                g.set(j, i, v);
            }
        }
        g
    }

    /// The lattice scaled by a nonzero rational factor.
    pub fn scale(&self, c: &Rat) -> Lattice {
        assert!(!c.is_zero(), "scaling factor must be nonzero");
        let basis = self
            .basis
            .iter()
            .map(|row| row.iter().map(|x| x * c).collect())
            .collect();
        Lattice { ambient_dim: self.ambient_dim, basis }
    }

    /// The vector with the given integer coefficients in this basis.
    pub fn vector_from_coeffs(&self, coeffs: &[Int]) -> Vec<Rat> {
        assert_eq!(coeffs.len(), self.rank());
        let mut v = vec![Rat::zero(); self.ambient_dim];
        for (c, row) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            let cq = Rat::from_integer(c.clone());
            for (slot, x) in v.iter_mut().zip(row) {
                *slot += &cq * x;
            }
        }
        v
    }

    /// Rational coordinates of `v` in this basis, or `None` when `v` lies
    /// outside the span.
    pub fn coords_of(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(v.len(), self.ambient_dim);
        if self.rank() == 0 {
            return if v.iter().all(|x| x.is_zero()) { Some(vec![]) } else { None };
        }
        let ginv = self.gram_matrix().inverse().expect("basis is independent");
        let pairings: Vec<Rat> = self.basis.iter().map(|b| dot(v, b)).collect();
        let coords = ginv.mul_row_vec(&pairings);
        // Membership in the span must be rechecked: the normal equations
        // alone are satisfied by the projection of v.
        let mut reconstructed = vec![Rat::zero(); self.ambient_dim];
        for (c, row) in coords.iter().zip(&self.basis) {
            for (slot, x) in reconstructed.iter_mut().zip(row) {
                *slot += c * x;
            }
        }
        if reconstructed == v { Some(coords) } else { None }
    }

    /// Whether `v` is a lattice point (integer coordinates in the basis).
    pub fn contains(&self, v: &[Rat]) -> bool {
        match self.coords_of(v) {
            Some(coords) => coords.iter().all(is_integer),
            None => false,
        }
    }

    /// Orthogonal projector of the ambient space onto the lattice span.
    pub fn span_projector(&self) -> SymmetricForm {
        let n = self.ambient_dim;
        if self.rank() == 0 {
            return SymmetricForm::new_unchecked(QMat::zeros(n, n));
        }
        let b = QMat::from_rows(self.basis.clone());
        let ginv = self.gram_matrix().inverse().expect("basis is independent");
        SymmetricForm::new_unchecked(b.transpose().mul(&ginv).mul(&b))
    }
}

/// Gram matrix of the basis, entry `(i, j) = (b_i, b_j)`.
pub fn gram(lattice: &Lattice) -> SymmetricForm {
    SymmetricForm::new_unchecked(lattice.gram_matrix())
}

/// Dual lattice in the same span: the dual basis rows pair with the primal
/// basis as the identity matrix.
pub fn dual(lattice: &Lattice) -> Lattice {
    if lattice.rank() == 0 {
        return lattice.clone();
    }
    let ginv = lattice.gram_matrix().inverse().expect("basis is independent");
    let b = QMat::from_rows(lattice.basis().to_vec());
    let d = ginv.mul(&b);
    Lattice { ambient_dim: lattice.ambient_dim(), basis: d.row_vecs() }
}

/// Basis of the integer solutions of a mixed system: for each row `r_i`,
/// `r_i . x = 0` over the integers when `moduli[i]` is `None`, and
/// `r_i . x = 0 (mod m)` when it is `Some(m)`. With no constraints the
/// result is `Z^n`.
pub fn integer_kernel(
    ambient_dim: usize,
    rows: &[Vec<i64>],
    moduli: &[Option<u64>],
) -> Result<Lattice> {
    if rows.len() != moduli.len() {
        return Err(Error::DimensionMismatch { expected: rows.len(), found: moduli.len() });
    }
    for row in rows {
        if row.len() != ambient_dim {
            return Err(Error::DimensionMismatch { expected: ambient_dim, found: row.len() });
        }
    }
    let k = rows.len();
    let finite: Vec<usize> = (0..k).filter(|&i| moduli[i].is_some()).collect();
    let aux = finite.len();

    // Solutions x of the mixed system are exactly the x-parts of the right
    // kernel of [R | D] where D carries one column per finite modulus.
    let mut c = ZMat::zeros(k, ambient_dim + aux);
    for (i, row) in rows.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            c.set(i, j, Int::from(x));
        }
    }
    for (slot, &i) in finite.iter().enumerate() {
        let m = moduli[i].expect("finite modulus");
        c.set(i, ambient_dim + slot, Int::from(m));
    }

    let kernel = c.transpose().left_kernel();
    let projected: Vec<Vec<Int>> = (0..kernel.rows())
        .map(|i| kernel.row(i)[..ambient_dim].to_vec())
        .collect();
    let canonical = if projected.is_empty() {
        ZMat::zeros(0, ambient_dim)
    } else {
        ZMat::from_rows(projected).row_lattice_canonical()
    };

    let basis: Vec<Vec<Rat>> = (0..canonical.rows())
        .map(|i| canonical.row(i).iter().map(|x| Rat::from_integer(x.clone())).collect())
        .collect();

    // Recheck membership of every returned basis vector in the solution set.
    for row in &canonical.row_vecs() {
        for (i, cons) in rows.iter().enumerate() {
            let mut acc = Int::zero();
            for (a, &b) in row.iter().zip(cons) {
                acc += a * Int::from(b);
            }
            match moduli[i] {
                None => assert!(acc.is_zero(), "kernel basis vector violates a Z constraint"),
                Some(m) => assert!(
                    acc.mod_floor(&Int::from(m)).is_zero(),
                    "kernel basis vector violates a congruence"
                ),
            }
        }
    }

    Lattice::new(ambient_dim, basis)
}

/// All minimal vectors of the lattice, by exact Fincke-Pohst enumeration on
/// an LLL-reduced basis.
pub fn shortest_vectors(lattice: &Lattice) -> Result<MinimalVectorSet> {
    if lattice.rank() == 0 {
        return Err(Error::EmptyLattice);
    }
    let mut basis = lattice.basis().to_vec();
    lll_reduce(&mut basis);
    let reduced = Lattice { ambient_dim: lattice.ambient_dim(), basis };
    let (min, coeffs) = enumerate_shortest(&reduced.gram_matrix());
    let vectors: Vec<Vec<Rat>> = coeffs.iter().map(|c| reduced.vector_from_coeffs(c)).collect();
    Ok(MinimalVectorSet::from_parts(vectors, min))
}

/// Minimum squared norm over the coset `t + L`. Zero iff `t` is a lattice
/// point; errors when `t` lies outside the span of `L`.
pub fn coset_min_norm_sq(lattice: &Lattice, t: &[Rat]) -> Result<Rat> {
    if lattice.rank() == 0 {
        return Err(Error::EmptyLattice);
    }
    if t.len() != lattice.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: lattice.ambient_dim(), found: t.len() });
    }
    let mut basis = lattice.basis().to_vec();
    lll_reduce(&mut basis);
    let reduced = Lattice { ambient_dim: lattice.ambient_dim(), basis };
    let shift = reduced
        .coords_of(t)
        .ok_or_else(|| Error::InvalidInput("target vector lies outside the lattice span".into()))?;
    let (min, witness) = enumerate_closest(&reduced.gram_matrix(), &shift);
    // The witness certifies attainability: t + sum(c_i b_i) has the norm.
    if cfg!(debug_assertions) {
        let mut v = reduced.vector_from_coeffs(&witness);
        for (slot, x) in v.iter_mut().zip(t) {
            *slot += x;
        }
        debug_assert_eq!(norm_sq(&v), min);
    }
    Ok(min)
}

/// The projector `I - J/n` onto the sum-zero hyperplane of `Q^n`.
pub fn projection_form(n: usize) -> Result<SymmetricForm> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("projection requires n >= 2, got {n}")));
    }
    let nn = rat_int(n as i64);
    let mut m = QMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut v = -nn.recip();
            if i == j {
                v += Rat::one();
            }
            m.set(i, j, v);
        }
    }
    Ok(SymmetricForm::new_unchecked(m))
}

/// Projection of a vector onto the sum-zero hyperplane:
/// `x - ((x, 1)/n) * 1`.
pub fn project_sum_zero(v: &[Rat]) -> Vec<Rat> {
    let n = v.len();
    let mean = v.iter().fold(Rat::zero(), |acc, x| acc + x) / rat_int(n as i64);
    v.iter().map(|x| x - &mean).collect()
}
