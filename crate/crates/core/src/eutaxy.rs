//! Strong eutaxy, spherical 2-design and tight-frame certificates, plus
//! the parity classification predicate and its integrality obstruction.
//!
//! A lattice is strongly eutactic exactly when the second moment of its
//! minimal vectors is a scalar multiple of the projector onto the lattice
//! span; the scalar is `min_norm^2 * |S| / rank`. The rank (not the
//! ambient dimension) enters the denominator so that lattices of rank
//! `n - 1` inside dimension `n` are handled correctly.

use crate::error::{Error, Result};
use crate::group::AbelianGroup;
use crate::lattice::{shortest_vectors, Lattice, SymmetricForm};
use crate::qmat::QMat;
use crate::rat::{norm_sq, rat_int, Rat};
use num_traits::{Signed, Zero};

/// Exact strong-eutaxy certificate: verdict plus the two matrices whose
/// equality it asserts and their difference as a witness.
#[derive(Clone, Debug)]
pub struct EutaxyCertificate {
    pub verdict: bool,
    pub rank: usize,
    pub vector_count: usize,
    pub min_norm_sq: Rat,
    /// The scalar `min_norm_sq * vector_count / rank`.
    pub constant: Rat,
    pub second_moment: SymmetricForm,
    pub target: SymmetricForm,
    pub discrepancy: SymmetricForm,
}

/// Sum of outer products `x x^T` over a set of ambient vectors.
pub(crate) fn second_moment(vectors: &[Vec<Rat>], dim: usize) -> SymmetricForm {
    let mut m = QMat::zeros(dim, dim);
    for v in vectors {
        for i in 0..dim {
            if v[i].is_zero() {
                continue;
            }
            for j in i..dim {
                let w = m.at(i, j) + &v[i] * &v[j];
                m.set(i, j, w);
            }
        }
    }
    for i in 0..dim {
        for j in 0..i {
            m.set(i, j, m.at(j, i).clone());
        }
    }
    SymmetricForm::new_unchecked(m)
}

/// Decides strong eutaxy of a lattice by comparing the second moment of
/// its minimal vectors against the scaled span projector, exactly.
pub fn strong_eutaxy_check(lattice: &Lattice) -> Result<EutaxyCertificate> {
    if lattice.rank() == 0 {
        return Err(Error::EmptyLattice);
    }
    let sv = shortest_vectors(lattice)?;
    let rank = lattice.rank();
    let dim = lattice.ambient_dim();
    let moment = second_moment(sv.vectors(), dim);
    let constant = sv.min_norm_sq() * rat_int(sv.len() as i64) / rat_int(rank as i64);
    let target = lattice.span_projector().scale(&constant);
    let discrepancy = moment.sub(&target);
    Ok(EutaxyCertificate {
        verdict: discrepancy.is_zero(),
        rank,
        vector_count: sv.len(),
        min_norm_sq: sv.min_norm_sq().clone(),
        constant,
        second_moment: moment,
        target,
        discrepancy,
    })
}

/// Whether a finite point set with common squared norm `norm_sq`, living in
/// an `r`-dimensional subspace, averages every polynomial of degree <= 2
/// over the sphere of that subspace: the centroid vanishes and the second
/// moment is `(m * norm_sq / r)` times the projector onto the subspace.
///
/// The points must actually span the `r`-dimensional subspace for the
/// property to hold; a set spanning less is not a 2-design of it.
pub fn spherical_2_design_check(points: &[Vec<Rat>], norm_sq_common: &Rat, r: usize) -> Result<bool> {
    if points.is_empty() {
        return Err(Error::InvalidInput("a design needs at least one point".into()));
    }
    if r < 1 {
        return Err(Error::InvalidInput("the subspace dimension must be at least 1".into()));
    }
    if !norm_sq_common.is_positive() {
        return Err(Error::InvalidInput("points must lie on a sphere of positive radius".into()));
    }
    let dim = points[0].len();
    for p in points {
        if p.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
        }
        if &norm_sq(p) != norm_sq_common {
            return Err(Error::InvalidInput("mixed squared norms in the point set".into()));
        }
    }

    // Degree-1 moments: the centroid must vanish.
    for col in 0..dim {
        let sum = points.iter().fold(Rat::zero(), |a, p| a + &p[col]);
        if !sum.is_zero() {
            return Ok(false);
        }
    }

    let projector = span_projector_of_points(points, dim);
    let span_rank = projector_rank(&projector);
    if span_rank > r {
        return Err(Error::InvalidInput(format!(
            "points span {span_rank} dimensions but were declared to live in {r}"
        )));
    }
    if span_rank < r {
        // The second moment has rank below r, so it cannot be a positive
        // multiple of the projector onto any r-dimensional subspace.
        return Ok(false);
    }
    let constant = rat_int(points.len() as i64) * norm_sq_common / rat_int(r as i64);
    let moment = second_moment(points, dim);
    Ok(moment == projector.scale(&constant))
}

/// Whether the point family, scaled to common squared norm `r/m`, forms a
/// uniform normalized tight frame of its span: equal norms, span of
/// dimension `r`, and second moment proportional to the span projector.
/// With inputs already of squared norm `r/m` the second-moment condition
/// is exactly `sum x x^T = P`.
pub fn unt_frame_check(vectors: &[Vec<Rat>], r: usize, m: usize) -> Result<bool> {
    if vectors.is_empty() {
        return Err(Error::InvalidInput("a frame needs at least one vector".into()));
    }
    if r < 1 || m < r {
        return Err(Error::InvalidInput(format!("frame parameters need m >= r >= 1, got m = {m}, r = {r}")));
    }
    if vectors.len() != m {
        return Err(Error::DimensionMismatch { expected: m, found: vectors.len() });
    }
    let dim = vectors[0].len();
    for v in vectors {
        if v.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
        }
    }

    let common = norm_sq(&vectors[0]);
    if !common.is_positive() {
        return Ok(false);
    }
    if vectors.iter().any(|v| norm_sq(v) != common) {
        return Ok(false);
    }

    let projector = span_projector_of_points(vectors, dim);
    if projector_rank(&projector) != r {
        return Ok(false);
    }
    // After scaling each vector to squared norm r/m the condition
    // sum x x^T = P becomes sum x x^T = (m * common / r) P for the raw input.
    let constant = rat_int(m as i64) * &common / rat_int(r as i64);
    let moment = second_moment(vectors, dim);
    Ok(moment == projector.scale(&constant))
}

/// Orthogonal projector onto the span of a point family.
fn span_projector_of_points(points: &[Vec<Rat>], dim: usize) -> SymmetricForm {
    // Extract an independent subset by Gaussian elimination.
    let mut echelon: Vec<Vec<Rat>> = Vec::new();
    let mut independent: Vec<Vec<Rat>> = Vec::new();
    for p in points {
        let mut v = p.clone();
        for row in &echelon {
            let lead = row.iter().position(|x| !x.is_zero()).expect("echelon rows are nonzero");
            if !v[lead].is_zero() {
                let f = &v[lead] / &row[lead];
                for (a, b) in v.iter_mut().zip(row) {
                    *a -= &f * b;
                }
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            echelon.push(v);
            independent.push(p.clone());
        }
    }
    if independent.is_empty() {
        return SymmetricForm::new_unchecked(QMat::zeros(dim, dim));
    }
    let lattice = Lattice::new(dim, independent).expect("rows are independent by construction");
    lattice.span_projector()
}

fn projector_rank(p: &SymmetricForm) -> usize {
    p.matrix().rank()
}

/// The parity classification: the group lattice is strongly eutactic iff
/// the order is odd or every invariant factor equals 2.
pub fn predicted_strongly_eutactic(group: &AbelianGroup) -> bool {
    assert!(group.order() >= 2, "the predicate is defined for order >= 2");
    group.order() % 2 == 1 || group.invariant_factors().iter().all(|&d| d == 2)
}

/// The obstruction quantity `4n(kappa - 1)/(n - 1)`; strong eutaxy of an
/// even-order group lattice forces it to be an integer, which fails
/// whenever `1 < kappa < n`.
pub fn integrality_obstruction(n: u64, kappa: u64) -> Rat {
    assert!(n >= 2, "obstruction needs n >= 2");
    assert!(kappa >= 1 && n % kappa == 0, "kappa must divide n");
    rat_int(4) * rat_int(n as i64) * (rat_int(kappa as i64) - rat_int(1))
        / (rat_int(n as i64) - rat_int(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;
    use crate::lattice::shortest_vectors;
    use crate::lg::build;
    use crate::rat::{is_integer, rat};

    fn z2() -> Lattice {
        Lattice::from_integer_rows(2, &[vec![1, 0], vec![0, 1]]).unwrap()
    }

    #[test]
    fn z2_is_strongly_eutactic() {
        let cert = strong_eutaxy_check(&z2()).unwrap();
        assert!(cert.verdict);
        assert_eq!(cert.constant, rat_int(2));
        assert!(cert.discrepancy.is_zero());
    }

    #[test]
    fn c6_lattice_is_not_strongly_eutactic() {
        let lg = build(&make_group(&[6]).unwrap()).unwrap();
        let cert = strong_eutaxy_check(lg.lattice()).unwrap();
        assert!(!cert.verdict);
        assert!(!cert.discrepancy.is_zero());
    }

    #[test]
    fn c5_second_moment_is_ten_times_projector() {
        let lg = build(&make_group(&[5]).unwrap()).unwrap();
        let cert = strong_eutaxy_check(lg.lattice()).unwrap();
        assert!(cert.verdict);
        // min_norm^2 * m / r = 4 * 10 / 4.
        assert_eq!(cert.constant, rat_int(10));
        let p = lg.lattice().span_projector();
        assert_eq!(cert.second_moment.matrix(), p.scale(&rat_int(10)).matrix());
    }

    #[test]
    fn scaling_invariance() {
        let lg = build(&make_group(&[5]).unwrap()).unwrap();
        for c in [rat(1, 3), rat_int(2), rat(7, 2)] {
            let scaled = lg.lattice().scale(&c);
            assert_eq!(
                strong_eutaxy_check(&scaled).unwrap().verdict,
                strong_eutaxy_check(lg.lattice()).unwrap().verdict
            );
        }
        let lg6 = build(&make_group(&[6]).unwrap()).unwrap();
        let scaled = lg6.lattice().scale(&rat(1, 2));
        assert!(!strong_eutaxy_check(&scaled).unwrap().verdict);
    }

    #[test]
    fn design_check_examples() {
        // Cross polytope in the plane.
        let pts = vec![
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(-1), rat_int(0)],
            vec![rat_int(0), rat_int(1)],
            vec![rat_int(0), rat_int(-1)],
        ];
        assert!(spherical_2_design_check(&pts, &rat_int(1), 2).unwrap());

        // An antipodal pair declared to live in the plane: second moment
        // has rank 1, so it is not a 2-design of the plane.
        let pair = vec![vec![rat_int(1), rat_int(0)], vec![rat_int(-1), rat_int(0)]];
        assert!(!spherical_2_design_check(&pair, &rat_int(1), 2).unwrap());
        // Of its own line it is one.
        assert!(spherical_2_design_check(&pair, &rat_int(1), 1).unwrap());

        // Unbalanced direction weights break the moment condition.
        let lop = vec![
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(-1), rat_int(0)],
            vec![rat_int(0), rat_int(1)],
            vec![rat_int(0), rat_int(-1)],
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(-1), rat_int(0)],
        ];
        assert!(!spherical_2_design_check(&lop, &rat_int(1), 2).unwrap());

        // Minimal vectors of the order-7 group lattice form a 2-design.
        let lg = build(&make_group(&[7]).unwrap()).unwrap();
        let sv = shortest_vectors(lg.lattice()).unwrap();
        assert!(spherical_2_design_check(sv.vectors(), sv.min_norm_sq(), 6).unwrap());

        // Mixed norms are rejected, as are points overflowing the subspace.
        let mixed = vec![vec![rat_int(1), rat_int(0)], vec![rat_int(0), rat_int(2)]];
        assert!(spherical_2_design_check(&mixed, &rat_int(1), 2).is_err());
        assert!(spherical_2_design_check(&pts, &rat_int(1), 1).is_err());
    }

    #[test]
    fn frame_check_examples() {
        // A +-pair in dimension 1: any common norm rescales to r/m = 1/2.
        let pair = vec![vec![rat(1, 2)], vec![rat(-1, 2)]];
        assert!(unt_frame_check(&pair, 1, 2).unwrap());

        // Minimal vectors of the order-5 group lattice: m = 10, r = 4.
        let lg = build(&make_group(&[5]).unwrap()).unwrap();
        let sv = shortest_vectors(lg.lattice()).unwrap();
        assert!(unt_frame_check(sv.vectors(), 4, 10).unwrap());

        // Order 8, type (2, 4): not an elementary 2-group, so no frame.
        let lg = build(&make_group(&[2, 4]).unwrap()).unwrap();
        let sv = shortest_vectors(lg.lattice()).unwrap();
        assert!(!unt_frame_check(sv.vectors(), 7, sv.len()).unwrap());

        assert!(unt_frame_check(&[], 1, 1).is_err());
        assert!(unt_frame_check(&pair, 2, 1).is_err());
    }

    #[test]
    fn predicted_verdicts() {
        assert!(predicted_strongly_eutactic(&make_group(&[9]).unwrap()));
        assert!(predicted_strongly_eutactic(&make_group(&[2, 2, 2, 2]).unwrap()));
        assert!(!predicted_strongly_eutactic(&make_group(&[2, 6]).unwrap()));
        assert!(!predicted_strongly_eutactic(&make_group(&[4]).unwrap()));
        assert!(predicted_strongly_eutactic(&make_group(&[15]).unwrap()));
    }

    #[test]
    fn obstruction_values() {
        assert_eq!(integrality_obstruction(6, 2), rat(24, 5));
        assert!(!is_integer(&integrality_obstruction(6, 2)));
        assert_eq!(integrality_obstruction(10, 1), rat_int(0));
        assert_eq!(integrality_obstruction(8, 4), rat(96, 7));
        assert!(!is_integer(&integrality_obstruction(8, 4)));
    }
}
