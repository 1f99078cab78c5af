//! Finite Abelian groups in invariant-factor form: element enumeration,
//! 2-torsion, automorphism enumeration and the dual character group.

use crate::error::{Error, Result};
use crate::rat::{mod_one, Rat};
use num_traits::Zero;
use std::collections::BTreeSet;

/// Largest group order for which elements are enumerated eagerly.
const ELEMENT_LIMIT: u64 = 1 << 20;

/// Default cap on the number of candidate generator-image tuples tried by
/// [`automorphisms`].
pub const DEFAULT_AUT_ENUM_BUDGET: u64 = 50_000_000;

/// A finite Abelian group `Z/d_1 x ... x Z/d_k` with `d_1 | d_2 | ... | d_k`.
///
/// Elements are enumerated lexicographically on residue tuples, identity
/// first. Every certificate downstream is invariant under re-enumeration;
/// the fixed order only pins down serialized output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    invariant_factors: Vec<u64>,
    order: u64,
    elements: Vec<GroupElement>,
}

/// Element of an [`AbelianGroup`], as a residue tuple with
/// `residues[i] in [0, d_i)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    residues: Vec<u64>,
}

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }
}

/// Constructs the group `Z/f_1 x ... x Z/f_m` in canonical invariant-factor
/// form. Coprime factors are merged, so `[2, 3]` and `[6]` build the same
/// group. The empty list yields the trivial group.
pub fn make_group(cyclic_factors: &[u64]) -> Result<AbelianGroup> {
    for &f in cyclic_factors {
        if f < 2 {
            return Err(Error::InvalidInput(format!(
                "cyclic factor {f} is not allowed; every factor must be >= 2"
            )));
        }
    }
    let invariant_factors = invariant_factors_of(cyclic_factors);
    let mut order: u64 = 1;
    for &d in &invariant_factors {
        order = order.checked_mul(d).ok_or_else(|| {
            Error::InvalidInput("group order overflows a 64-bit integer".into())
        })?;
    }
    if order > ELEMENT_LIMIT {
        return Err(Error::InvalidInput(format!(
            "group order {order} exceeds the element enumeration limit {ELEMENT_LIMIT}"
        )));
    }
    let elements = enumerate_residue_tuples(&invariant_factors);
    Ok(AbelianGroup { invariant_factors, order, elements })
}

/// Canonical divisibility chain from an arbitrary list of cyclic orders:
/// split each factor into prime powers, then stack the largest power of
/// each prime into the largest invariant factor and so on down.
fn invariant_factors_of(cyclic_factors: &[u64]) -> Vec<u64> {
    use std::collections::BTreeMap;
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &f in cyclic_factors {
        for (p, e) in factorize(f) {
            by_prime.entry(p).or_default().push(p.pow(e));
        }
    }
    let slots = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; slots];
    for powers in by_prime.values_mut() {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        for (slot, &pw) in powers.iter().enumerate() {
            factors[slot] *= pw;
        }
    }
    // factors[0] is the largest; the canonical chain is ascending.
    factors.reverse();
    factors
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn enumerate_residue_tuples(factors: &[u64]) -> Vec<GroupElement> {
    let mut out = vec![GroupElement { residues: vec![0; factors.len()] }];
    for (i, &d) in factors.iter().enumerate() {
        let prev = std::mem::take(&mut out);
        for base in prev {
            for r in 0..d {
                let mut residues = base.residues.clone();
                residues[i] = r;
                out.push(GroupElement { residues });
            }
        }
    }
    out
}

impl AbelianGroup {
    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// All elements, lexicographic on residue tuples, identity first.
    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { residues: vec![0; self.invariant_factors.len()] }
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let residues = self
            .invariant_factors
            .iter()
            .zip(a.residues.iter().zip(&b.residues))
            .map(|(&d, (&x, &y))| (x + y) % d)
            .collect();
        GroupElement { residues }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        let residues = self
            .invariant_factors
            .iter()
            .zip(&a.residues)
            .map(|(&d, &x)| (d - x) % d)
            .collect();
        GroupElement { residues }
    }

    pub fn double(&self, a: &GroupElement) -> GroupElement {
        self.add(a, a)
    }

    /// `n * a` by repeated doubling.
    pub fn scalar_mul(&self, mut n: u64, a: &GroupElement) -> GroupElement {
        let mut acc = self.zero();
        let mut base = a.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            base = self.double(&base);
            n >>= 1;
        }
        acc
    }

    /// Additive order of an element.
    pub fn element_order(&self, a: &GroupElement) -> u64 {
        let mut ord: u64 = 1;
        for (&d, &r) in self.invariant_factors.iter().zip(&a.residues) {
            let o = d / gcd(d, r);
            ord = lcm(ord, o);
        }
        ord
    }

    /// Position of an element in the fixed enumeration (0-based).
    pub fn index_of(&self, a: &GroupElement) -> usize {
        let mut idx: u64 = 0;
        for (&d, &r) in self.invariant_factors.iter().zip(&a.residues) {
            idx = idx * d + r;
        }
        idx as usize
    }

    /// The `i`-th canonical generator: residue 1 in component `i`.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut g = self.zero();
        g.residues[i] = 1;
        g
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Order of the 2-torsion subgroup `{x : 2x = 0}`; equals the product of
/// `gcd(2, d_i)` over the invariant factors.
pub fn two_torsion_order(group: &AbelianGroup) -> u64 {
    group.invariant_factors().iter().map(|&d| gcd(2, d)).product()
}

/// Size of the image of the doubling map `x -> 2x`, by direct enumeration.
pub fn doubling_image_size(group: &AbelianGroup) -> u64 {
    let image: BTreeSet<GroupElement> =
        group.elements().iter().map(|g| group.double(g)).collect();
    image.len() as u64
}

/// A group automorphism, stored both as generator images and as the induced
/// permutation of the element enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAutomorphism {
    generator_images: Vec<GroupElement>,
    perm: Vec<u32>,
}

impl GroupAutomorphism {
    pub fn generator_images(&self) -> &[GroupElement] {
        &self.generator_images
    }

    /// Permutation of element indices; `perm[i]` is the image of element `i`.
    pub fn permutation(&self) -> &[u32] {
        &self.perm
    }

    pub fn apply(&self, group: &AbelianGroup, a: &GroupElement) -> GroupElement {
        group.elements()[self.perm[group.index_of(a)] as usize].clone()
    }

    pub fn compose(&self, group: &AbelianGroup, inner: &GroupAutomorphism) -> GroupAutomorphism {
        let perm: Vec<u32> = inner.perm.iter().map(|&i| self.perm[i as usize]).collect();
        GroupAutomorphism::from_perm(group, perm)
    }

    pub fn inverse(&self, group: &AbelianGroup) -> GroupAutomorphism {
        let mut perm = vec![0u32; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            perm[p as usize] = i as u32;
        }
        GroupAutomorphism::from_perm(group, perm)
    }

    fn from_perm(group: &AbelianGroup, perm: Vec<u32>) -> GroupAutomorphism {
        let generator_images = (0..group.invariant_factors().len())
            .map(|i| {
                let g = group.generator(i);
                group.elements()[perm[group.index_of(&g)] as usize].clone()
            })
            .collect();
        GroupAutomorphism { generator_images, perm }
    }
}

/// All automorphisms of the group, by exhaustive enumeration of generator
/// images filtered for bijectivity.
pub fn automorphisms(group: &AbelianGroup) -> Result<Vec<GroupAutomorphism>> {
    automorphisms_with_budget(group, DEFAULT_AUT_ENUM_BUDGET)
}

/// See [`automorphisms`]. Errors out (naming the bound) when the number of
/// candidate tuples exceeds `budget`.
pub fn automorphisms_with_budget(
    group: &AbelianGroup,
    budget: u64,
) -> Result<Vec<GroupAutomorphism>> {
    let k = group.invariant_factors().len();
    let n = group.order();
    if k == 0 {
        return Ok(vec![GroupAutomorphism { generator_images: vec![], perm: vec![0] }]);
    }

    // The image of generator i must have order dividing d_i.
    let candidates: Vec<Vec<&GroupElement>> = group
        .invariant_factors()
        .iter()
        .map(|&d| {
            group
                .elements()
                .iter()
                .filter(|g| group.scalar_mul(d, g) == group.zero())
                .collect()
        })
        .collect();

    let mut tuple_count: u64 = 1;
    for c in &candidates {
        tuple_count = tuple_count.saturating_mul(c.len() as u64);
    }
    if tuple_count > budget {
        return Err(Error::BudgetExceeded {
            what: format!(
                "group automorphism enumeration: {tuple_count} candidate tuples exceed the budget {budget}"
            ),
            lower_bound: None,
        });
    }

    let mut out = Vec::new();
    let mut images: Vec<&GroupElement> = Vec::with_capacity(k);
    enumerate_tuples(group, &candidates, &mut images, &mut out, n as usize);
    Ok(out)
}

fn enumerate_tuples<'a>(
    group: &AbelianGroup,
    candidates: &[Vec<&'a GroupElement>],
    images: &mut Vec<&'a GroupElement>,
    out: &mut Vec<GroupAutomorphism>,
    n: usize,
) {
    if images.len() == candidates.len() {
        if let Some(auto) = endomorphism_if_bijective(group, images, n) {
            out.push(auto);
        }
        return;
    }
    for &c in &candidates[images.len()] {
        images.push(c);
        enumerate_tuples(group, candidates, images, out, n);
        images.pop();
    }
}

fn endomorphism_if_bijective(
    group: &AbelianGroup,
    images: &[&GroupElement],
    n: usize,
) -> Option<GroupAutomorphism> {
    let mut perm = vec![0u32; n];
    let mut seen = vec![false; n];
    for (idx, x) in group.elements().iter().enumerate() {
        let mut y = group.zero();
        for (r, img) in x.residues().iter().zip(images) {
            y = group.add(&y, &group.scalar_mul(*r, img));
        }
        let target = group.index_of(&y);
        if seen[target] {
            return None;
        }
        seen[target] = true;
        perm[idx] = target as u32;
    }
    Some(GroupAutomorphism {
        generator_images: images.iter().map(|&g| g.clone()).collect(),
        perm,
    })
}

/// A character `G -> Q/Z`, stored as exact rational images of the canonical
/// generators with denominators dividing the invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Character {
    generator_images: Vec<Rat>,
}

impl Character {
    pub fn generator_images(&self) -> &[Rat] {
        &self.generator_images
    }

    /// Evaluates the character, canonically in `[0, 1)`.
    pub fn eval(&self, element: &GroupElement) -> Rat {
        let mut acc = Rat::zero();
        for (&r, q) in element.residues().iter().zip(&self.generator_images) {
            acc += Rat::from_integer(r.into()) * q;
        }
        mod_one(&acc)
    }

    pub fn is_zero(&self) -> bool {
        self.generator_images.iter().all(|q| q.is_zero())
    }

    /// Order of the character in the dual group: the lcm of the reduced
    /// denominators of the generator images.
    pub fn order(&self) -> u64 {
        let mut ord: u64 = 1;
        for q in &self.generator_images {
            let den: u64 = u64::try_from(q.denom().clone()).expect("character denominator fits u64");
            ord = lcm(ord, den);
        }
        ord
    }
}

/// All `|G|` characters, lexicographic on numerator tuples; the zero
/// character comes first.
pub fn dual_characters(group: &AbelianGroup) -> Vec<Character> {
    let factors = group.invariant_factors();
    let mut out = vec![Character { generator_images: vec![] }];
    for &d in factors {
        let prev = std::mem::take(&mut out);
        for base in prev {
            for c in 0..d {
                let mut generator_images = base.generator_images.clone();
                generator_images.push(Rat::new(c.into(), d.into()));
                out.push(Character { generator_images });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn make_group_canonicalizes() {
        assert_eq!(make_group(&[2, 3]).unwrap().invariant_factors(), &[6]);
        assert_eq!(make_group(&[2, 4]).unwrap().invariant_factors(), &[2, 4]);
        assert_eq!(make_group(&[6, 4]).unwrap().invariant_factors(), &[2, 12]);
        assert_eq!(make_group(&[6, 4]).unwrap().order(), 24);
        assert_eq!(make_group(&[]).unwrap().order(), 1);
        assert!(make_group(&[1]).is_err());
        assert!(make_group(&[0, 3]).is_err());
        // Orders beyond the element-enumeration limit are rejected early.
        assert!(make_group(&[2; 21]).is_err());
        assert!(make_group(&[1 << 40, 1 << 40]).is_err());
    }

    #[test]
    fn make_group_preserves_isomorphism_type() {
        // CRT isomorphism: the multiset of element orders must agree.
        let sorted_orders = |g: &AbelianGroup| {
            let mut v: Vec<u64> = g.elements().iter().map(|e| g.element_order(e)).collect();
            v.sort_unstable();
            v
        };
        let a = make_group(&[2, 3]).unwrap();
        let b = make_group(&[6]).unwrap();
        assert_eq!(sorted_orders(&a), sorted_orders(&b));
        let a = make_group(&[6, 4]).unwrap();
        let b = make_group(&[2, 12]).unwrap();
        assert_eq!(sorted_orders(&a), sorted_orders(&b));
        let a = make_group(&[4, 2]).unwrap();
        let b = make_group(&[2, 4]).unwrap();
        assert_eq!(sorted_orders(&a), sorted_orders(&b));
    }

    #[test]
    fn element_enumeration_is_lexicographic() {
        let g = make_group(&[]).unwrap();
        assert_eq!(g.elements().len(), 1);
        assert_eq!(g.elements()[0].residues(), &[] as &[u64]);

        let c3 = make_group(&[3]).unwrap();
        let res: Vec<&[u64]> = c3.elements().iter().map(|e| e.residues()).collect();
        assert_eq!(res, vec![&[0][..], &[1][..], &[2][..]]);

        let v4 = make_group(&[2, 2]).unwrap();
        let res: Vec<&[u64]> = v4.elements().iter().map(|e| e.residues()).collect();
        assert_eq!(res, vec![&[0, 0][..], &[0, 1][..], &[1, 0][..], &[1, 1][..]]);

        // index_of inverts the enumeration.
        for (i, e) in v4.elements().iter().enumerate() {
            assert_eq!(v4.index_of(e), i);
        }
    }

    #[test]
    fn two_torsion_examples() {
        assert_eq!(two_torsion_order(&make_group(&[5]).unwrap()), 1);
        assert_eq!(two_torsion_order(&make_group(&[2, 4]).unwrap()), 4);
        assert_eq!(two_torsion_order(&make_group(&[2, 2, 2]).unwrap()), 8);
        // Oracle: direct enumeration.
        for spec in [vec![5], vec![2, 4], vec![2, 2, 2], vec![12], vec![3, 9]] {
            let g = make_group(&spec).unwrap();
            let count = g
                .elements()
                .iter()
                .filter(|e| g.double(e) == g.zero())
                .count() as u64;
            assert_eq!(two_torsion_order(&g), count);
        }
    }

    #[test]
    fn doubling_image_examples() {
        assert_eq!(doubling_image_size(&make_group(&[5]).unwrap()), 5);
        assert_eq!(doubling_image_size(&make_group(&[8]).unwrap()), 4);
        assert_eq!(doubling_image_size(&make_group(&[2, 2]).unwrap()), 1);
    }

    #[test]
    fn torsion_times_image_is_order() {
        for spec in [vec![2], vec![3], vec![4], vec![2, 2], vec![8], vec![2, 4], vec![12], vec![2, 6], vec![16], vec![2, 2, 4]] {
            let g = make_group(&spec).unwrap();
            assert_eq!(two_torsion_order(&g) * doubling_image_size(&g), g.order());
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&make_group(&[5]).unwrap()).unwrap().len(), 4);
        assert_eq!(automorphisms(&make_group(&[2, 2, 2]).unwrap()).unwrap().len(), 168);
        assert_eq!(automorphisms(&make_group(&[2, 4]).unwrap()).unwrap().len(), 8);
        assert_eq!(automorphisms(&make_group(&[]).unwrap()).unwrap().len(), 1);
        assert_eq!(automorphisms(&make_group(&[3, 3]).unwrap()).unwrap().len(), 48);
    }

    #[test]
    fn automorphisms_form_a_group() {
        let g = make_group(&[2, 4]).unwrap();
        let autos = automorphisms(&g).unwrap();
        let identity: Vec<u32> = (0..g.order() as u32).collect();
        assert!(autos.iter().any(|a| a.permutation() == identity.as_slice()));
        for a in &autos {
            assert!(autos.contains(&a.inverse(&g)));
            for b in &autos {
                assert!(autos.contains(&a.compose(&g, b)));
            }
            assert_eq!(a.permutation()[0], 0, "automorphisms fix the identity");
        }
    }

    #[test]
    fn automorphism_budget_is_enforced() {
        let g = make_group(&[2, 2, 2]).unwrap();
        match automorphisms_with_budget(&g, 10) {
            Err(Error::BudgetExceeded { .. }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn character_examples() {
        let trivial = make_group(&[]).unwrap();
        let chars = dual_characters(&trivial);
        assert_eq!(chars.len(), 1);
        assert!(chars[0].is_zero());

        let c2 = make_group(&[2]).unwrap();
        let imgs: Vec<Rat> = dual_characters(&c2)
            .iter()
            .map(|c| c.eval(&c2.elements()[1]))
            .collect();
        assert_eq!(imgs, vec![rat(0, 1), rat(1, 2)]);

        let c3c3 = make_group(&[3, 3]).unwrap();
        let chars = dual_characters(&c3c3);
        assert_eq!(chars.len(), 9);
        for c in &chars {
            for q in c.generator_images() {
                assert!(*q == rat(0, 1) || *q == rat(1, 3) || *q == rat(2, 3));
            }
        }
    }

    #[test]
    fn characters_are_homomorphisms_and_separate_points() {
        for spec in [vec![4], vec![2, 6], vec![3, 3], vec![8]] {
            let g = make_group(&spec).unwrap();
            let chars = dual_characters(&g);
            assert_eq!(chars.len(), g.order() as usize);
            for c in &chars {
                for a in g.elements() {
                    for b in g.elements() {
                        let lhs = c.eval(&g.add(a, b));
                        let rhs = mod_one(&(c.eval(a) + c.eval(b)));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
            for a in g.elements().iter().skip(1) {
                assert!(
                    chars.iter().any(|c| !c.eval(a).is_zero()),
                    "characters must separate {a:?}"
                );
            }
        }
    }
}
