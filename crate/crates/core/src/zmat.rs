//! Integer matrices, row Hermite normal form with an explicit unimodular
//! transform, and integer kernels derived from it. The retained transform
//! makes every kernel basis checkable after the fact.

use crate::rat::Int;
use num_integer::Integer;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZMat {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

/// Row Hermite normal form `h = u * m` with unimodular `u`.
///
/// Pivot entries are positive, entries below a pivot are zero and entries
/// above are reduced into `[0, pivot)`. Zero rows are collected at the
/// bottom; `pivots[r]` is the pivot column of row `r`.
pub struct HnfResult {
    pub h: ZMat,
    pub u: ZMat,
    pub pivots: Vec<usize>,
}

impl ZMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ZMat { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ZMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Int::from(1));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged row in matrix constructor");
            data.extend(row);
        }
        ZMat { rows: r, cols: c, data }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        ZMat::from_rows(rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Int>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> ZMat {
        let mut t = ZMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Applies the row operation `(row_i, row_j) <- (x*row_i + y*row_j, -q*row_i + p*row_j)`
    /// where the 2x2 block has determinant 1.
    fn combine_rows(&mut self, i: usize, j: usize, x: &Int, y: &Int, q: &Int, p: &Int) {
        for col in 0..self.cols {
            let a = self.at(i, col).clone();
            let b = self.at(j, col).clone();
            self.set(i, col, x * &a + y * &b);
            self.set(j, col, p * &b - q * &a);
        }
    }

    fn add_multiple(&mut self, dst: usize, src: usize, f: &Int) {
        if f.is_zero() {
            return;
        }
        for col in 0..self.cols {
            let v = self.at(dst, col) + f * self.at(src, col);
            self.set(dst, col, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for col in 0..self.cols {
            let v = -self.at(i, col).clone();
            self.set(i, col, v);
        }
    }

    /// Row Hermite normal form; see [`HnfResult`].
    pub fn row_hnf(&self) -> HnfResult {
        let mut h = self.clone();
        let mut u = ZMat::identity(self.rows);
        let mut pivots = Vec::new();
        let mut pr = 0;

        for pc in 0..self.cols {
            if pr == h.rows {
                break;
            }
            let Some(nz) = (pr..h.rows).find(|&i| !h.at(i, pc).is_zero()) else {
                continue;
            };
            h.swap_rows(pr, nz);
            u.swap_rows(pr, nz);

            for i in pr + 1..h.rows {
                if h.at(i, pc).is_zero() {
                    continue;
                }
                let a = h.at(pr, pc).clone();
                let b = h.at(i, pc).clone();
                let ext = a.extended_gcd(&b);
                // x*a + y*b = d; the 2x2 transform (x, y; -b/d, a/d) is unimodular.
                let bd = &b / &ext.gcd;
                let ad = &a / &ext.gcd;
                h.combine_rows(pr, i, &ext.x, &ext.y, &bd, &ad);
                u.combine_rows(pr, i, &ext.x, &ext.y, &bd, &ad);
                debug_assert!(h.at(i, pc).is_zero());
            }
            if h.at(pr, pc).is_negative() {
                h.negate_row(pr);
                u.negate_row(pr);
            }
            // Reduce the entries above the pivot into [0, pivot).
            for i in 0..pr {
                let q = h.at(i, pc).div_floor(h.at(pr, pc));
                let f = -q;
                h.add_multiple(i, pr, &f);
                u.add_multiple(i, pr, &f);
            }
            pivots.push(pc);
            pr += 1;
        }

        HnfResult { h, u, pivots }
    }

    /// Basis of the left kernel `{x : x * self = 0}`, one row per basis vector.
    pub fn left_kernel(&self) -> ZMat {
        let res = self.row_hnf();
        let rank = res.pivots.len();
        let rows: Vec<Vec<Int>> = (rank..self.rows).map(|i| res.u.row(i).to_vec()).collect();
        if rows.is_empty() {
            ZMat::zeros(0, self.rows)
        } else {
            ZMat::from_rows(rows)
        }
    }

    /// Canonical form of the lattice generated by the rows: the nonzero
    /// rows of the reduced row HNF. Two generating sets span the same
    /// integer row lattice iff their canonical forms are equal.
    pub fn row_lattice_canonical(&self) -> ZMat {
        let res = self.row_hnf();
        let rank = res.pivots.len();
        let rows: Vec<Vec<Int>> = (0..rank).map(|i| res.h.row(i).to_vec()).collect();
        if rows.is_empty() {
            ZMat::zeros(0, self.cols)
        } else {
            ZMat::from_rows(rows)
        }
    }
}
