//! Perfection rank, eutaxy feasibility and the extremality certificate:
//! a lattice is extreme (a local packing-density maximum) iff it is
//! perfect and eutactic.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::lattice::{gram, shortest_vectors, Lattice};
use crate::qmat::QMat;
use crate::rat::{rat_int, Rat};
use crate::simplex::{maximize, LpOutcome};
use num_traits::{Signed, Zero};

/// Default pivot budget for the eutaxy linear program.
pub const DEFAULT_LP_PIVOT_BUDGET: u64 = 2_000_000;

/// Tri-state eutaxy verdict. `Eutactic` carries positive weights, one per
/// `{x, -x}` class keyed by the lexicographically smaller representative,
/// that resolve the span projector exactly when applied to both members.
#[derive(Clone, Debug, PartialEq)]
pub enum EutaxyOutcome {
    Eutactic(Vec<(Vec<Rat>, Rat)>),
    NotEutactic,
    BudgetExceeded,
}

/// Combined local-optimality report.
#[derive(Clone, Debug)]
pub struct OptimalityReport {
    pub perfect: bool,
    pub perfection_rank: usize,
    /// `r(r+1)/2` for a lattice of rank `r`.
    pub perfection_target: usize,
    pub eutactic: EutaxyOutcome,
    /// `None` when the eutaxy budget ran out and perfection alone cannot
    /// settle extremality.
    pub extreme: Option<bool>,
}

/// Expresses an ambient vector in basis coordinates of the lattice span.
fn span_coords(lattice: &Lattice, ginv: &QMat, v: &[Rat]) -> Vec<Rat> {
    let pairings: Vec<Rat> = lattice.basis().iter().map(|b| crate::rat::dot(v, b)).collect();
    ginv.mul_row_vec(&pairings)
}

/// Flattened upper triangle of the outer product `a a^T`, scaled by `scale`.
fn flatten_outer(a: &[Rat], scale: &Rat) -> Vec<Rat> {
    let r = a.len();
    let mut out = Vec::with_capacity(r * (r + 1) / 2);
    for i in 0..r {
        for j in i..r {
            out.push(&a[i] * &a[j] * scale);
        }
    }
    out
}

/// Perfection: do the outer products of the minimal vectors span the full
/// space of symmetric forms on the lattice span? Returns the verdict and
/// the achieved rank; the target is `r(r+1)/2`.
///
/// The test is run in a fixed rational basis of the span, which is
/// legitimate because a change of basis acts as a linear isomorphism on
/// symmetric matrices.
pub fn is_perfect(lattice: &Lattice) -> Result<(bool, usize)> {
    if lattice.rank() == 0 {
        return Err(Error::EmptyLattice);
    }
    let sv = shortest_vectors(lattice)?;
    let r = lattice.rank();
    let ginv = gram(lattice).matrix().inverse().expect("basis is independent");
    let one = Rat::from_integer(1.into());
    let rows: Vec<Vec<Rat>> = sv
        .sign_classes()
        .iter()
        .map(|x| flatten_outer(&span_coords(lattice, &ginv, x), &one))
        .collect();
    let rank = QMat::from_rows(rows).rank();
    Ok((rank == r * (r + 1) / 2, rank))
}

/// Eutaxy: is the span projector a strictly positive combination of the
/// minimal-vector projectors? Decided by an exact linear program that
/// maximizes the smallest weight; eutactic iff the optimum is positive.
pub fn is_eutactic(lattice: &Lattice, budget: &Budget) -> Result<EutaxyOutcome> {
    if lattice.rank() == 0 {
        return Err(Error::EmptyLattice);
    }
    let sv = shortest_vectors(lattice)?;
    let classes: Vec<Vec<Rat>> = sv.sign_classes().into_iter().cloned().collect();
    let r = lattice.rank();
    let ginv = gram(lattice).matrix().inverse().expect("basis is independent");

    // In span coordinates the eutaxy identity reads
    //     sum_c 2 rho_c (alpha_c alpha_c^T) = G^{-1},
    // one equation per upper-triangle entry. Substituting
    // rho_c = s_c + t with slack variables s_c >= 0 turns "maximize the
    // minimum weight" into a standard-form LP in (s, t).
    let two = rat_int(2);
    let cols: Vec<Vec<Rat>> = classes
        .iter()
        .map(|x| flatten_outer(&span_coords(lattice, &ginv, x), &two))
        .collect();
    let neq = r * (r + 1) / 2;
    let nclasses = cols.len();

    let mut constraints = QMat::zeros(neq, nclasses + 1);
    for (c, col) in cols.iter().enumerate() {
        for (e, v) in col.iter().enumerate() {
            constraints.set(e, c, v.clone());
        }
    }
    for e in 0..neq {
        let mut total = Rat::zero();
        for col in &cols {
            total += &col[e];
        }
        constraints.set(e, nclasses, total);
    }
    let mut rhs = Vec::with_capacity(neq);
    for i in 0..r {
        for j in i..r {
            rhs.push(ginv.at(i, j).clone());
        }
    }
    let mut objective = vec![Rat::zero(); nclasses + 1];
    objective[nclasses] = Rat::from_integer(1.into());

    let mut meter = budget.with_default_step_cap(DEFAULT_LP_PIVOT_BUDGET).start();
    match maximize(&constraints, &rhs, &objective, &mut meter) {
        LpOutcome::Infeasible => Ok(EutaxyOutcome::NotEutactic),
        LpOutcome::BudgetExceeded => Ok(EutaxyOutcome::BudgetExceeded),
        LpOutcome::Unbounded => unreachable!("the eutaxy LP is bounded by the trace identity"),
        LpOutcome::Optimal { objective: tstar, solution } => {
            if !tstar.is_positive() {
                return Ok(EutaxyOutcome::NotEutactic);
            }
            let weights: Vec<(Vec<Rat>, Rat)> = classes
                .iter()
                .zip(&solution)
                .map(|(x, s)| (x.clone(), s + &tstar))
                .collect();
            verify_weights(lattice, &weights);
            Ok(EutaxyOutcome::Eutactic(weights))
        }
    }
}

/// Substitutes the weights back into the eutaxy identity over the full
/// minimal-vector set and demands exact entrywise equality.
fn verify_weights(lattice: &Lattice, weights: &[(Vec<Rat>, Rat)]) {
    let n = lattice.ambient_dim();
    let mut acc = QMat::zeros(n, n);
    for (x, rho) in weights {
        assert!(rho.is_positive(), "eutaxy weights must be positive");
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                // Weight applied to both x and -x doubles the class term.
                let v = acc.at(i, j) + rat_int(2) * rho * &x[i] * &x[j];
                acc.set(i, j, v);
            }
        }
    }
    assert_eq!(
        &acc,
        lattice.span_projector().matrix(),
        "LP weights failed exact re-verification"
    );
}

/// Voronoi's criterion at desk scale: perfect and eutactic implies extreme.
pub fn extremality_certificate(lattice: &Lattice, budget: &Budget) -> Result<OptimalityReport> {
    let (perfect, perfection_rank) = is_perfect(lattice)?;
    let r = lattice.rank();
    let eutactic = is_eutactic(lattice, budget)?;
    let extreme = match (&eutactic, perfect) {
        (_, false) => Some(false),
        (EutaxyOutcome::Eutactic(_), true) => Some(true),
        (EutaxyOutcome::NotEutactic, true) => Some(false),
        (EutaxyOutcome::BudgetExceeded, true) => None,
    };
    Ok(OptimalityReport {
        perfect,
        perfection_rank,
        perfection_target: r * (r + 1) / 2,
        eutactic,
        extreme,
    })
}
