//! The lattice generated by a finite Abelian group: the sublattice of the
//! sum-zero root lattice cut out by the group relation, its structural
//! minimal vectors and the closed-form count of those vectors.

use crate::error::{Error, Result};
use crate::group::{AbelianGroup, GroupElement};
use crate::lattice::{gram, integer_kernel, shortest_vectors, Lattice};
use crate::rat::{rat_int, Rat};
use num_traits::Zero;

/// The lattice attached to a group of order `n`: integer vectors with zero
/// coordinate sum whose formal group-ring sum vanishes. Rank is `n - 1`
/// and the index in the sum-zero lattice equals `n`.
#[derive(Clone, Debug)]
pub struct LgLattice {
    group: AbelianGroup,
    lattice: Lattice,
}

impl LgLattice {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Position of a group element in the coordinate enumeration, 1-based.
    pub fn element_position(&self, g: &GroupElement) -> usize {
        self.group.index_of(g) + 1
    }
}

/// Builds the lattice of a group of order at least 2, via the integer
/// kernel of the sum-zero equation and one congruence per invariant factor.
pub fn build(group: &AbelianGroup) -> Result<LgLattice> {
    let n = group.order() as usize;
    if n < 2 {
        return Err(Error::InvalidInput(
            "the lattice of the trivial group is not defined".into(),
        ));
    }
    let mut rows = vec![vec![1i64; n]];
    let mut moduli = vec![None];
    for (i, &d) in group.invariant_factors().iter().enumerate() {
        let row: Vec<i64> = group.elements().iter().map(|g| g.residues()[i] as i64).collect();
        rows.push(row);
        moduli.push(Some(d));
    }
    let lattice = integer_kernel(n, &rows, &moduli)?;
    assert_eq!(lattice.rank(), n - 1, "the group lattice has rank n - 1");
    Ok(LgLattice { group: group.clone(), lattice })
}

/// A minimal vector of the group lattice in its structural form: four
/// distinct elements with `p + q = r + s`, realized as the ambient vector
/// `e_p + e_q - e_r - e_s` of squared norm 4 and zero coordinate sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalQuadruple {
    pub p: GroupElement,
    pub q: GroupElement,
    pub r: GroupElement,
    pub s: GroupElement,
    pub vector: Vec<Rat>,
}

/// All minimal quadruples of a group of order >= 4: every ordered pair of
/// distinct unordered pairs with a common sum contributes one, so the
/// collection is closed under negation (swap the pairs).
pub fn minimal_quadruples(lg: &LgLattice) -> Result<Vec<MinimalQuadruple>> {
    let group = lg.group();
    let n = group.order() as usize;
    if n < 4 {
        return Err(Error::UnsupportedOrder(format!(
            "the structural form of minimal vectors requires order >= 4 (got {n}); \
             use the generic shortest-vector enumeration instead"
        )));
    }

    // Unordered pairs {p, q}, p != q, bucketed by their sum.
    let mut pairs_by_sum: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for p in 0..n {
        for q in p + 1..n {
            let z = group.add(&group.elements()[p], &group.elements()[q]);
            pairs_by_sum[group.index_of(&z)].push((p, q));
        }
    }

    let mut out = Vec::new();
    for pairs in &pairs_by_sum {
        for &(p, q) in pairs {
            for &(r, s) in pairs {
                if (p, q) == (r, s) {
                    continue;
                }
                // Two distinct pairs with the same sum are disjoint.
                let mut v = vec![Rat::zero(); n];
                v[p] = rat_int(1);
                v[q] = rat_int(1);
                v[r] = rat_int(-1);
                v[s] = rat_int(-1);
                out.push(MinimalQuadruple {
                    p: group.elements()[p].clone(),
                    q: group.elements()[q].clone(),
                    r: group.elements()[r].clone(),
                    s: group.elements()[s].clone(),
                    vector: v,
                });
            }
        }
    }
    Ok(out)
}

/// The minimal vectors of the group lattice for order >= 4, from the
/// structural quadruple enumeration. Every vector has squared norm 4.
pub fn structural_minimal_vectors(lg: &LgLattice) -> Result<crate::lattice::MinimalVectorSet> {
    let vectors = minimal_quadruples(lg)?.into_iter().map(|quad| quad.vector).collect();
    Ok(crate::lattice::MinimalVectorSet::from_parts(vectors, rat_int(4)))
}

/// Closed-form count of minimal vectors for a group of order `n` with
/// 2-torsion subgroup of order `kappa`. Both published forms of the count
/// are evaluated and must agree; the result counts `x` and `-x` separately.
pub fn minimal_count_formula(n: u64, kappa: u64) -> Result<u128> {
    if n < 4 {
        return Err(Error::UnsupportedOrder(format!("the count formula requires n >= 4, got {n}")));
    }
    if kappa == 0 || n % kappa != 0 {
        return Err(Error::InvalidInput(format!("kappa = {kappa} does not divide n = {n}")));
    }
    let nq = rat_int(n as i64);
    let kq = rat_int(kappa as i64);
    let image = &nq / &kq;

    let split = &image * (&nq - &kq) * (&nq - &kq - rat_int(2)) / rat_int(4)
        + (&nq - &image) * &nq * (&nq - rat_int(2)) / rat_int(4);
    let simplified = &nq * ((&nq - rat_int(1)) * (&nq - rat_int(3)) + &kq - rat_int(1)) / rat_int(4);
    assert_eq!(split, simplified, "the two count forms are algebraically equal");

    if !split.is_integer() {
        return Err(Error::InvalidInput(format!(
            "kappa = {kappa} is not a feasible 2-torsion order for n = {n}"
        )));
    }
    Ok(u128::try_from(split.to_integer()).expect("count is nonnegative and fits u128"))
}

/// True minimal squared norm of the group lattice from generic enumeration.
/// Known values: 8 for order 2, 6 for order 3, and 4 for every order >= 4.
pub fn min_norm_claim_check(lg: &LgLattice) -> Result<Rat> {
    Ok(shortest_vectors(lg.lattice())?.min_norm_sq().clone())
}

/// Squared index of a sublattice in a containing lattice of equal rank,
/// from the ratio of Gram determinants.
pub fn index_sq_in(sub: &Lattice, sup: &Lattice) -> Rat {
    gram(sub).matrix().det() / gram(sup).matrix().det()
}
