//! Lattice automorphism orders by backtrack search over minimal-vector
//! images, the guaranteed holomorph subgroup, and the dual-coset
//! construction that decides when the dual minimal vectors coincide with
//! those of the ambient sum-zero lattice.
//!
//! The search counts the group through an orbit-stabilizer chain: at each
//! base vector it counts the images reachable by a fully verified
//! automorphism fixing the earlier base vectors, and multiplies the orbit
//! sizes. Every accepted map is rechecked to preserve the Gram structure
//! and to permute the whole search vector set, which generates the
//! lattice, so no unverified order is ever reported.

use crate::budget::{Budget, BudgetMeter};
use crate::error::{Error, Result};
use crate::group::{automorphisms, dual_characters, AbelianGroup, Character};
use crate::lattice::{coset_min_norm_sq, dual, integer_kernel, project_sum_zero, shortest_vectors, Lattice};
use crate::lg::build;
use crate::rat::{mod_one, rat_int, Int, Rat};
use crate::zmat::ZMat;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::HashMap;

/// Automorphism order report for a group lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutReport {
    pub aut_order: u128,
    /// `2 n |Aut(G)|`, the order of the guaranteed subgroup.
    pub subgroup_order: u128,
    /// `aut_order / subgroup_order`; an integer >= 1 for orders >= 3.
    pub ratio: Rat,
}

/// Full automorphism report for the lattice of a group: the searched
/// order, the guaranteed subgroup order and their ratio. For orders >= 3
/// the subgroup embeds faithfully, so the ratio is checked to be a
/// positive integer.
pub fn aut_report(group: &AbelianGroup, budget: &Budget) -> Result<AutReport> {
    let lg = build(group)?;
    let order = aut_order(lg.lattice(), budget)?;
    let sub = subgroup_order(group)?;
    let ratio = Rat::new(Int::from(order), Int::from(sub));
    if group.order() >= 3 {
        assert!(
            order % sub == 0 && ratio >= Rat::one(),
            "the holomorph subgroup must divide the automorphism group"
        );
    }
    Ok(AutReport { aut_order: order, subgroup_order: sub, ratio })
}

/// One residue class of the dual quotient: the projected character vector
/// and the exact minimum squared norm over its coset.
#[derive(Clone, Debug)]
pub struct DualCoset {
    pub character: Character,
    pub representative: Vec<Rat>,
    pub min_norm_sq: Rat,
}

/// All residue classes of the dual quotient, one per character of the
/// group, in character enumeration order.
#[derive(Clone, Debug)]
pub struct DualCosetFamily {
    pub cosets: Vec<DualCoset>,
}

/// Order of the automorphism group of a lattice: all orthogonal maps of
/// the span permuting the lattice.
pub fn aut_order(lattice: &Lattice, budget: &Budget) -> Result<u128> {
    if lattice.rank() == 0 {
        return Err(Error::EmptyLattice);
    }
    let search = AutSearch::prepare(lattice)?;
    search.run(budget)
}

/// Order of the guaranteed subgroup `C_2 x (G x| Aut(G))` of the lattice
/// automorphism group: `2 n |Aut(G)|`.
pub fn subgroup_order(group: &AbelianGroup) -> Result<u128> {
    if group.order() < 2 {
        return Err(Error::InvalidInput("the subgroup order needs |G| >= 2".into()));
    }
    let autos = automorphisms(group)?.len() as u128;
    Ok(2 * group.order() as u128 * autos)
}

/// `|Aut(L_G)| / |C_2 x (G x| Aut(G))|` as an exact rational.
pub fn aut_ratio(group: &AbelianGroup, budget: &Budget) -> Result<Rat> {
    let lg = build(group)?;
    let order = aut_order(lg.lattice(), budget)?;
    let sub = subgroup_order(group)?;
    Ok(Rat::new(Int::from(order), Int::from(sub)))
}

/// Whether the holomorph subgroup is the whole automorphism group, i.e.
/// the ratio equals one. Asserts agreement with the closed classification
/// `n in {3, 4, 6} or n >= 12`.
pub fn theorem_auto_check(group: &AbelianGroup, budget: &Budget) -> Result<bool> {
    let n = group.order();
    if n < 3 {
        return Err(Error::InvalidInput("the classification needs |G| >= 3".into()));
    }
    let ratio_is_one = aut_ratio(group, budget)?.is_one();
    let predicted = matches!(n, 3 | 4 | 6) || n >= 12;
    assert_eq!(
        ratio_is_one, predicted,
        "automorphism classification mismatch at order {n}"
    );
    Ok(ratio_is_one)
}

/// The ambient sum-zero lattice in dimension `n`.
pub fn sum_zero_lattice(n: usize) -> Result<Lattice> {
    integer_kernel(n, &[vec![1; n]], &[None])
}

/// Residue classes of the dual quotient: for every character, the vector
/// of its values on the group elements is projected onto the sum-zero
/// hyperplane and minimized over its coset modulo the dual of the ambient
/// sum-zero lattice.
pub fn dual_cosets(group: &AbelianGroup) -> Result<DualCosetFamily> {
    let n = group.order() as usize;
    if n < 2 {
        return Err(Error::InvalidInput("dual cosets need |G| >= 2".into()));
    }
    let ambient_dual = dual(&sum_zero_lattice(n)?);
    let mut cosets = Vec::with_capacity(n);
    for character in dual_characters(group) {
        let values: Vec<Rat> = group.elements().iter().map(|g| character.eval(g)).collect();
        let representative = project_sum_zero(&values);
        let min_norm_sq = coset_min_norm_sq(&ambient_dual, &representative)?;
        if character.is_zero() {
            assert!(min_norm_sq.is_zero(), "the trivial coset contains zero");
        }
        cosets.push(DualCoset { character, representative, min_norm_sq });
    }
    Ok(DualCosetFamily { cosets })
}

/// Whether the dual of the group lattice has the same minimal vectors as
/// the dual of the ambient sum-zero lattice: every nontrivial coset must
/// stay strictly above the ambient dual minimum `(n-1)/n`.
pub fn dual_min_equal(group: &AbelianGroup) -> Result<bool> {
    let n = group.order();
    if n < 3 {
        return Err(Error::InvalidInput("the dual comparison needs |G| >= 3".into()));
    }
    let threshold = Rat::new(Int::from(n - 1), Int::from(n));
    let family = dual_cosets(group)?;
    Ok(family
        .cosets
        .iter()
        .filter(|c| !c.character.is_zero())
        .all(|c| c.min_norm_sq > threshold))
}

/// Permutation rearranging the value vector of a character into the value
/// vector of the cyclic-group character with the same image: position `j`
/// of the result holds the index of the entry equal to `j/ord` mod 1.
/// Permutations of coordinates are isometries commuting with the
/// projection, so coset minima are unchanged.
pub fn cyclic_rearrangement(character: &Character, group: &AbelianGroup) -> Vec<usize> {
    let n = group.order() as usize;
    let ord = character.order();
    let values: Vec<Rat> = group.elements().iter().map(|g| character.eval(g)).collect();

    // Bucket source positions by value.
    let mut buckets: HashMap<Vec<u8>, Vec<usize>> = HashMap::new();
    for (i, v) in values.iter().enumerate() {
        buckets.entry(rat_key(v)).or_default().push(i);
    }
    let mut perm = Vec::with_capacity(n);
    for j in 0..n {
        let target = mod_one(&Rat::new(Int::from(j), Int::from(ord)));
        let bucket = buckets
            .get_mut(&rat_key(&target))
            .unwrap_or_else(|| panic!("character values do not cover {target}"));
        assert!(!bucket.is_empty(), "cyclic pattern exhausted a value class");
        perm.push(bucket.remove(0));
    }
    debug_assert!(buckets.values().all(Vec::is_empty));
    perm
}

fn rat_key(r: &Rat) -> Vec<u8> {
    format!("{}/{}", r.numer(), r.denom()).into_bytes()
}

// ---------------------------------------------------------------------
// Backtrack search.

struct AutSearch {
    rank: usize,
    /// Search vectors as scaled integer coordinates, lexicographic order.
    vectors: Vec<Vec<i64>>,
    /// Flat m x m table of pairwise inner products.
    products: Vec<i64>,
    /// Fingerprint class of each vector (histogram of its product row).
    class_of: Vec<u32>,
    /// Independent spanning base, chosen to minimize candidate counts.
    base: Vec<usize>,
    /// Candidates per level under the identity prefix; valid only for the
    /// outer orbit loop, where earlier base vectors are fixed pointwise.
    orbit_candidates: Vec<Vec<usize>>,
    /// Candidates per level filtered by invariants alone (fingerprint
    /// class and diagonal); the completion search checks prefix products
    /// dynamically against the actual images.
    class_candidates: Vec<Vec<usize>>,
}

enum Stop {
    Budget,
}

impl AutSearch {
    fn prepare(lattice: &Lattice) -> Result<AutSearch> {
        let rank = lattice.rank();

        // Clear denominators; scaling does not change the automorphisms.
        let mut denom = Int::one();
        for row in lattice.basis() {
            for x in row {
                denom = denom.lcm(x.denom());
            }
        }
        let scale = Rat::from_integer(denom);
        let scaled = lattice.scale(&scale);

        let mut basis = scaled.basis().to_vec();
        crate::enumerate::lll_reduce(&mut basis);
        let reduced = Lattice::new(scaled.ambient_dim(), basis)?;
        let gram = crate::lattice::gram(&reduced);

        let basis_canonical = integer_rows(&reduced)?.row_lattice_canonical();

        // Gather norm shells until the vector set generates the lattice.
        let sv = shortest_vectors(&reduced)?;
        let mut bound = sv.min_norm_sq().clone();
        let vectors = loop {
            let found = crate::enumerate::enumerate_up_to(gram.matrix(), &bound);
            let mut by_norm: Vec<(Rat, Vec<Vec<Rat>>)> = Vec::new();
            let mut items: Vec<(Rat, Vec<Rat>)> = found
                .into_iter()
                .map(|(coeffs, norm)| (norm, reduced.vector_from_coeffs(&coeffs)))
                .collect();
            items.sort();
            for (norm, v) in items {
                match by_norm.last_mut() {
                    Some((n, bucket)) if *n == norm => bucket.push(v),
                    _ => by_norm.push((norm, vec![v])),
                }
            }
            let mut collected: Vec<Vec<Rat>> = Vec::new();
            let mut generated = false;
            for (_, shell) in &by_norm {
                collected.extend(shell.iter().cloned());
                let rows: Vec<Vec<Int>> = collected
                    .iter()
                    .map(|v| v.iter().map(|x| x.to_integer()).collect())
                    .collect();
                let canon = ZMat::from_rows(rows).row_lattice_canonical();
                if canon == basis_canonical {
                    generated = true;
                    break;
                }
            }
            if generated {
                break collected;
            }
            bound = &bound * rat_int(2);
        };

        let mut int_vectors: Vec<Vec<i64>> = vectors
            .iter()
            .map(|v| {
                v.iter()
                    .map(|x| i64::try_from(x.to_integer()).expect("search vector entry fits i64"))
                    .collect()
            })
            .collect();
        int_vectors.sort();
        let m = int_vectors.len();

        let mut products = vec![0i64; m * m];
        for a in 0..m {
            for b in a..m {
                let p: i64 = int_vectors[a].iter().zip(&int_vectors[b]).map(|(x, y)| x * y).sum();
                products[a * m + b] = p;
                products[b * m + a] = p;
            }
        }

        // Fingerprint: the sorted histogram of a vector's product row is
        // invariant under every automorphism.
        let mut class_ids: HashMap<Vec<(i64, u32)>, u32> = HashMap::new();
        let mut class_of = vec![0u32; m];
        for a in 0..m {
            let mut hist: std::collections::BTreeMap<i64, u32> = Default::default();
            for b in 0..m {
                *hist.entry(products[a * m + b]).or_insert(0) += 1;
            }
            let key: Vec<(i64, u32)> = hist.into_iter().collect();
            let next = class_ids.len() as u32;
            class_of[a] = *class_ids.entry(key).or_insert(next);
        }

        let mut search = AutSearch {
            rank,
            vectors: int_vectors,
            products,
            class_of,
            base: Vec::new(),
            orbit_candidates: Vec::new(),
            class_candidates: Vec::new(),
        };
        search.choose_base();
        Ok(search)
    }

    fn p(&self, a: usize, b: usize) -> i64 {
        self.products[a * self.vectors.len() + b]
    }

    /// Greedy base: at each level pick, among vectors independent of the
    /// prefix, one minimizing the number of image candidates.
    fn choose_base(&mut self) {
        let m = self.vectors.len();
        let mut echelon: Vec<Vec<Rat>> = Vec::new();
        while self.base.len() < self.rank {
            let mut best: Option<(usize, usize)> = None;
            for u in 0..m {
                if !independent_of(&mut echelon, &self.vectors[u], false) {
                    continue;
                }
                let count = (0..m)
                    .filter(|&w| self.compatible_with_prefix(w, u))
                    .count();
                if best.is_none_or(|(c, _)| (count, u) < (c, best.unwrap().1)) {
                    best = Some((count, u));
                }
            }
            let (_, chosen) = best.expect("the vector set spans the lattice");
            independent_of(&mut echelon, &self.vectors[chosen], true);
            let orbit_cands: Vec<usize> = (0..m)
                .filter(|&w| self.compatible_with_prefix(w, chosen))
                .collect();
            let class_cands: Vec<usize> = (0..m)
                .filter(|&w| {
                    self.class_of[w] == self.class_of[chosen] && self.p(w, w) == self.p(chosen, chosen)
                })
                .collect();
            self.base.push(chosen);
            self.orbit_candidates.push(orbit_cands);
            self.class_candidates.push(class_cands);
        }
    }

    /// Candidate filter for mapping base vector `u` to `w` when all earlier
    /// base vectors are fixed pointwise.
    fn compatible_with_prefix(&self, w: usize, u: usize) -> bool {
        if self.class_of[w] != self.class_of[u] || self.p(w, w) != self.p(u, u) {
            return false;
        }
        self.base.iter().all(|&b| self.p(w, b) == self.p(u, b))
    }

    fn run(&self, budget: &Budget) -> Result<u128> {
        let mut meter = budget.start();
        let mut total: u128 = 1;
        for level in 0..self.rank {
            let mut orbit: u128 = 0;
            for &w in &self.orbit_candidates[level] {
                if w == self.base[level] {
                    // The identity extends trivially.
                    orbit += 1;
                    continue;
                }
                let mut images: Vec<usize> = self.base[..level].to_vec();
                images.push(w);
                match self.complete(&mut images, level + 1, &mut meter) {
                    Ok(true) => orbit += 1,
                    Ok(false) => {}
                    Err(Stop::Budget) => {
                        return Err(Error::BudgetExceeded {
                            what: format!(
                                "lattice automorphism search (level {level}, {} nodes)",
                                meter.steps_used()
                            ),
                            lower_bound: Some(total),
                        });
                    }
                }
            }
            assert!(orbit >= 1, "the identity is always in the orbit");
            total *= orbit;
        }
        Ok(total)
    }

    /// Depth-first completion: extend the partial assignment of base
    /// images to a full one that verifies as an automorphism.
    fn complete(&self, images: &mut Vec<usize>, level: usize, meter: &mut BudgetMeter) -> std::result::Result<bool, Stop> {
        if level == self.rank {
            return Ok(self.verify(images));
        }
        let target = self.base[level];
        'candidates: for &w in &self.class_candidates[level] {
            if !meter.tick() {
                return Err(Stop::Budget);
            }
            for (j, &img) in images.iter().enumerate() {
                if self.p(w, img) != self.p(target, self.base[j]) {
                    continue 'candidates;
                }
            }
            images.push(w);
            if self.complete(images, level + 1, meter)? {
                images.pop();
                return Ok(true);
            }
            images.pop();
        }
        Ok(false)
    }

    /// Full verification of a complete base-image assignment: the induced
    /// orthogonal map must permute the whole search vector set.
    fn verify(&self, images: &[usize]) -> bool {
        let m = self.vectors.len();
        let r = self.rank;
        let mut table: HashMap<Vec<i64>, usize> = HashMap::with_capacity(m);
        for u in 0..m {
            let profile: Vec<i64> = images.iter().map(|&img| self.p(u, img)).collect();
            if table.insert(profile, u).is_some() {
                // Images are independent, so profiles are unique.
                unreachable!("duplicate profile against an independent image set");
            }
        }
        let mut hit = vec![false; m];
        for v in 0..m {
            let profile: Vec<i64> = (0..r).map(|j| self.p(v, self.base[j])).collect();
            match table.get(&profile) {
                Some(&u) if !hit[u] => hit[u] = true,
                _ => return false,
            }
        }
        true
    }
}

fn integer_rows(lattice: &Lattice) -> Result<ZMat> {
    let rows: Vec<Vec<Int>> = lattice
        .basis()
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    assert!(x.is_integer(), "integer lattice expected");
                    x.to_integer()
                })
                .collect()
        })
        .collect();
    Ok(ZMat::from_rows(rows))
}

/// Rational independence bookkeeping: reduces `v` against the echelon and
/// reports whether a nonzero remainder survives, optionally keeping it.
fn independent_of(echelon: &mut Vec<Vec<Rat>>, v: &[i64], insert: bool) -> bool {
    let mut w: Vec<Rat> = v.iter().map(|&x| rat_int(x)).collect();
    for row in echelon.iter() {
        let lead = row.iter().position(|x| !x.is_zero()).expect("echelon rows nonzero");
        if !w[lead].is_zero() {
            let f = &w[lead] / &row[lead];
            for (a, b) in w.iter_mut().zip(row) {
                *a -= &f * b;
            }
        }
    }
    let nonzero = w.iter().any(|x| !x.is_zero());
    if nonzero && insert {
        echelon.push(w);
    }
    nonzero
}
