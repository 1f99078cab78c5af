//! Exact shortest-vector and closest-vector enumeration.
//!
//! The search runs on an LDL^T decomposition of the Gram matrix with all
//! bounds compared as exact rationals, so the returned minima are
//! certificates, not estimates. An exact LLL pass keeps the enumeration
//! trees small; reduction quality beyond that is out of scope.

use crate::qmat::QMat;
use crate::rat::{dot, rat, round_to_int, Int, Rat};
use num_traits::{One, Signed, Zero};

/// In-place exact LLL reduction (delta = 99/100) of independent row vectors.
pub fn lll_reduce(basis: &mut Vec<Vec<Rat>>) {
    let n = basis.len();
    if n <= 1 {
        return;
    }
    let delta = rat(99, 100);
    let (mut mu, mut bstar_norm) = gram_schmidt(basis);

    let mut k = 1;
    while k < n {
        // Size-reduce row k against all earlier rows.
        for j in (0..k).rev() {
            if mu[k][j].abs() > rat(1, 2) {
                let r = round_to_int(&mu[k][j]);
                let rq = Rat::from_integer(r.clone());
                for col in 0..basis[k].len() {
                    let v = &basis[k][col] - &rq * &basis[j][col];
                    basis[k][col] = v;
                }
                for l in 0..j {
                    mu[k][l] = &mu[k][l] - &rq * &mu[j][l];
                }
                mu[k][j] = &mu[k][j] - rq;
            }
        }
        let lovasz = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &bstar_norm[k - 1];
        if bstar_norm[k] >= lovasz {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            let (m2, b2) = gram_schmidt(basis);
            mu = m2;
            bstar_norm = b2;
            k = k.max(2) - 1;
        }
    }
}

/// Gram-Schmidt data: returns (mu, squared norms of the orthogonalized rows).
fn gram_schmidt(basis: &[Vec<Rat>]) -> (Vec<Vec<Rat>>, Vec<Rat>) {
    let n = basis.len();
    let mut ortho: Vec<Vec<Rat>> = Vec::with_capacity(n);
    let mut mu = vec![vec![Rat::zero(); n]; n];
    let mut norms = Vec::with_capacity(n);
    for i in 0..n {
        let mut v = basis[i].clone();
        for j in 0..i {
            let m = if norms[j] == Rat::zero() {
                Rat::zero()
            } else {
                dot(&basis[i], &ortho[j]) / &norms[j]
            };
            for col in 0..v.len() {
                let w = &v[col] - &m * &ortho[j][col];
                v[col] = w;
            }
            mu[i][j] = m;
        }
        let nrm = dot(&v, &v);
        norms.push(nrm);
        ortho.push(v);
    }
    (mu, norms)
}

/// LDL^T decomposition of a symmetric positive definite matrix:
/// `g = l * diag(d) * l^T` with `l` unit lower triangular.
pub fn ldl(gram: &QMat) -> (QMat, Vec<Rat>) {
    let n = gram.rows();
    assert!(gram.is_symmetric(), "LDL input must be symmetric");
    let mut l = QMat::identity(n);
    let mut d = vec![Rat::zero(); n];
    for j in 0..n {
        let mut dj = gram.at(j, j).clone();
        for k in 0..j {
            dj -= l.at(j, k) * l.at(j, k) * &d[k];
        }
        assert!(dj.is_positive(), "Gram matrix is not positive definite");
        d[j] = dj;
        for i in j + 1..n {
            let mut v = gram.at(i, j).clone();
            for k in 0..j {
                v -= l.at(i, k) * l.at(j, k) * &d[k];
            }
            l.set(i, j, v / &d[j]);
        }
    }
    (l, d)
}

/// All nonzero integer coefficient vectors of minimal value of the quadratic
/// form given by `gram`, together with that minimal value. The result is
/// closed under negation.
pub fn enumerate_shortest(gram: &QMat) -> (Rat, Vec<Vec<Int>>) {
    let r = gram.rows();
    assert!(r >= 1);
    let (l, d) = ldl(gram);
    // The shortest basis vector bounds the minimum from above.
    let initial = (0..r).map(|i| gram.at(i, i).clone()).min().unwrap();
    let mut search = Search {
        l: &l,
        d: &d,
        r,
        bound: initial,
        best: None,
        found: Vec::new(),
        coeffs: vec![Int::zero(); r],
        target: None,
    };
    search.descend(r as isize - 1, Rat::zero());
    let best = search.best.expect("a nonzero lattice vector always exists");
    (best, search.found)
}

/// All nonzero integer coefficient vectors with form value at most `bound`,
/// paired with their values.
pub fn enumerate_up_to(gram: &QMat, bound: &Rat) -> Vec<(Vec<Int>, Rat)> {
    let r = gram.rows();
    assert!(r >= 1);
    let (l, d) = ldl(gram);
    let mut collector = Collect { l: &l, d: &d, r, bound: bound.clone(), found: Vec::new(), coeffs: vec![Int::zero(); r] };
    collector.descend(r as isize - 1, Rat::zero());
    collector.found
}

/// Minimum of `(c + shift) G (c + shift)^T` over integer vectors `c`, with a
/// witness. `shift` is the rational coefficient vector of the target point.
pub fn enumerate_closest(gram: &QMat, shift: &[Rat]) -> (Rat, Vec<Int>) {
    let r = gram.rows();
    assert!(r >= 1);
    assert_eq!(shift.len(), r);
    let (l, d) = ldl(gram);

    // Babai nearest-plane pass gives a finite starting bound.
    let mut babai = vec![Int::zero(); r];
    let mut babai_cost = Rat::zero();
    for i in (0..r).rev() {
        let mut center = shift[i].clone();
        for j in i + 1..r {
            center += (Rat::from_integer(babai[j].clone()) + &shift[j]) * l.at(j, i);
        }
        babai[i] = round_to_int(&-&center);
        let y = Rat::from_integer(babai[i].clone()) + center;
        babai_cost += &y * &y * &d[i];
    }

    let mut search = Search {
        l: &l,
        d: &d,
        r,
        bound: babai_cost.clone(),
        best: Some(babai_cost),
        found: vec![babai],
        coeffs: vec![Int::zero(); r],
        target: Some(shift.to_vec()),
    };
    search.descend(r as isize - 1, Rat::zero());
    let best = search.best.expect("Babai seeded the search");
    (best, search.found.pop().expect("witness present"))
}

/// Depth-first zig-zag enumeration with an adaptively shrinking bound.
/// When `target` is set the search solves the closest-vector problem and
/// keeps a single witness; otherwise it collects every minimal vector and
/// skips the zero assignment.
struct Search<'a> {
    l: &'a QMat,
    d: &'a [Rat],
    r: usize,
    bound: Rat,
    best: Option<Rat>,
    found: Vec<Vec<Int>>,
    coeffs: Vec<Int>,
    target: Option<Vec<Rat>>,
}

impl Search<'_> {
    fn record(&mut self, used: Rat) {
        if self.target.is_none() && self.coeffs.iter().all(|c| c.is_zero()) {
            return;
        }
        match &self.best {
            Some(b) if &used > b => {}
            Some(b) if &used == b => self.found.push(self.coeffs.clone()),
            _ => {
                self.best = Some(used.clone());
                self.bound = used;
                self.found.clear();
                self.found.push(self.coeffs.clone());
            }
        }
    }

    fn center_at(&self, level: usize) -> Rat {
        let mut center = match &self.target {
            Some(shift) => shift[level].clone(),
            None => Rat::zero(),
        };
        for j in level + 1..self.r {
            let mut cj = Rat::from_integer(self.coeffs[j].clone());
            if let Some(shift) = &self.target {
                cj += &shift[j];
            }
            center += cj * self.l.at(j, level);
        }
        center
    }

    fn descend(&mut self, level: isize, used: Rat) {
        if level < 0 {
            self.record(used);
            return;
        }
        let i = level as usize;
        let center = self.center_at(i);
        let c0 = round_to_int(&-&center);

        let cost = |c: &Int| {
            let y = Rat::from_integer(c.clone()) + &center;
            &y * &y * &self.d[i]
        };

        let first = cost(&c0);
        if &used + &first <= self.bound {
            self.coeffs[i] = c0.clone();
            self.descend(level - 1, &used + &first);
        } else {
            // No integer at this level fits within the bound.
            return;
        }
        let mut c = &c0 + Int::one();
        loop {
            let k = cost(&c);
            if &used + &k > self.bound {
                break;
            }
            self.coeffs[i] = c.clone();
            self.descend(level - 1, &used + &k);
            c += Int::one();
        }
        let mut c = &c0 - Int::one();
        loop {
            let k = cost(&c);
            if &used + &k > self.bound {
                break;
            }
            self.coeffs[i] = c.clone();
            self.descend(level - 1, &used + &k);
            c -= Int::one();
        }
        self.coeffs[i] = Int::zero();
    }
}

/// Fixed-bound variant of [`Search`] that keeps everything it visits.
struct Collect<'a> {
    l: &'a QMat,
    d: &'a [Rat],
    r: usize,
    bound: Rat,
    found: Vec<(Vec<Int>, Rat)>,
    coeffs: Vec<Int>,
}

impl Collect<'_> {
    fn descend(&mut self, level: isize, used: Rat) {
        if level < 0 {
            if !self.coeffs.iter().all(|c| c.is_zero()) {
                self.found.push((self.coeffs.clone(), used));
            }
            return;
        }
        let i = level as usize;
        let mut center = Rat::zero();
        for j in i + 1..self.r {
            center += Rat::from_integer(self.coeffs[j].clone()) * self.l.at(j, i);
        }
        let c0 = round_to_int(&-&center);
        let cost = |c: &Int| {
            let y = Rat::from_integer(c.clone()) + &center;
            &y * &y * &self.d[i]
        };

        let first = cost(&c0);
        if &used + &first <= self.bound {
            self.coeffs[i] = c0.clone();
            self.descend(level - 1, &used + &first);
        } else {
            return;
        }
        let mut c = &c0 + Int::one();
        loop {
            let k = cost(&c);
            if &used + &k > self.bound {
                break;
            }
            self.coeffs[i] = c.clone();
            self.descend(level - 1, &used + &k);
            c += Int::one();
        }
        let mut c = &c0 - Int::one();
        loop {
            let k = cost(&c);
            if &used + &k > self.bound {
                break;
            }
            self.coeffs[i] = c.clone();
            self.descend(level - 1, &used + &k);
            c -= Int::one();
        }
        self.coeffs[i] = Int::zero();
    }
}
