//! Enumeration of Abelian-group isomorphism types by order, for sweep-style
//! verification over every type up to a bound.

use crate::group::make_group;

/// Canonical invariant factors of every isomorphism type of order `n`:
/// one entry per choice of partitions of the prime exponents.
pub fn types_of_order(n: u64) -> Vec<Vec<u64>> {
    assert!(n >= 1);
    if n == 1 {
        return vec![vec![]];
    }
    let mut prime_power_choices: Vec<Vec<Vec<u64>>> = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            prime_power_choices.push(partition_powers(p, e));
        }
        p += 1;
    }
    if rest > 1 {
        prime_power_choices.push(partition_powers(rest, 1));
    }

    // One type per combination of partitions across the primes.
    let mut combos: Vec<Vec<u64>> = vec![vec![]];
    for choices in prime_power_choices {
        let prev = std::mem::take(&mut combos);
        for base in prev {
            for choice in &choices {
                let mut c = base.clone();
                c.extend(choice);
                combos.push(c);
            }
        }
    }

    let mut types: Vec<Vec<u64>> = combos
        .into_iter()
        .map(|factors| {
            make_group(&factors)
                .expect("prime powers are valid cyclic factors")
                .invariant_factors()
                .to_vec()
        })
        .collect();
    types.sort();
    types.dedup();
    types
}

/// Prime-power multisets `p^(e_1), p^(e_2), ...` over all partitions of `e`.
fn partition_powers(p: u64, e: u32) -> Vec<Vec<u64>> {
    partitions(e)
        .into_iter()
        .map(|parts| parts.into_iter().map(|part| p.pow(part)).collect())
        .collect()
}

/// All partitions of `e` into positive parts, each in descending order.
fn partitions(e: u32) -> Vec<Vec<u32>> {
    fn rec(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(e, e, &mut Vec::new(), &mut out);
    out
}

/// Canonical invariant factors of every type with `2 <= order <= max_order`,
/// sorted by order and then lexicographically.
pub fn types_up_to(max_order: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for n in 2..=max_order {
        out.extend(types_of_order(n));
    }
    out.sort_by_key(|t| (t.iter().product::<u64>(), t.clone()));
    out
}

/// Display label built from the invariant factors, e.g. `C_2xC_12`.
pub fn group_label(invariant_factors: &[u64]) -> String {
    if invariant_factors.is_empty() {
        return "C_1".into();
    }
    invariant_factors
        .iter()
        .map(|d| format!("C_{d}"))
        .collect::<Vec<_>>()
        .join("x")
}
