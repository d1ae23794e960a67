use std::collections::HashMap;

use itertools::Itertools;

use super::polynomial::Polynomial;
use super::ring::RingRef;
use crate::error::{Error, Result};
use crate::exec;

/// Dense matrix of polynomials over one ring, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    ring: RingRef,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn from_rows(ring: &RingRef, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::input("ragged matrix rows"));
            }
            for e in row {
                if e.ring() != ring && **e.ring() != **ring {
                    return Err(Error::input("matrix entries from different rings"));
                }
                entries.push(e);
            }
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Matrix with `extra` rows appended below.
    pub fn stacked(&self, extra: &PolyMatrix) -> Result<PolyMatrix> {
        if extra.cols != self.cols {
            return Err(Error::input("column mismatch when stacking"));
        }
        let mut entries = self.entries.clone();
        entries.extend(extra.entries.iter().cloned());
        Ok(PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows + extra.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Determinant of the submatrix on `rows` x `cols` by cofactor expansion
    /// along rows, memoized on the remaining column set.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Polynomial> {
        assert_eq!(rows.len(), cols.len());
        let mut memo: HashMap<u64, Polynomial> = HashMap::new();
        let full: u64 = if cols.len() == 64 { u64::MAX } else { (1u64 << cols.len()) - 1 };
        self.minor_rec(rows, cols, 0, full, &mut memo)
    }

    fn minor_rec(&self, rows: &[usize], cols: &[usize], depth: usize, mask: u64, memo: &mut HashMap<u64, Polynomial>) -> Result<Polynomial> {
        if depth == rows.len() {
            return Ok(Polynomial::one(&self.ring));
        }
        if let Some(p) = memo.get(&mask) {
            return Ok(p.clone());
        }
        let mut acc = Polynomial::zero(&self.ring);
        let mut sign_pos = true;
        for (k, &c) in cols.iter().enumerate() {
            if mask & (1 << k) == 0 {
                continue;
            }
            let e = self.get(rows[depth], c);
            if !e.is_zero() {
                let sub = self.minor_rec(rows, cols, depth + 1, mask & !(1 << k), memo)?;
                let term = e.try_mul(&sub)?;
                acc = if sign_pos { &acc + &term } else { &acc - &term };
            }
            sign_pos = !sign_pos;
        }
        memo.insert(mask, acc.clone());
        Ok(acc)
    }
}

/// Entry `(i, j)` is the partial derivative of `gens[i]` with respect to
/// `vars[j]`.
pub fn jacobian_matrix(gens: &[Polynomial], vars: &[usize]) -> Result<PolyMatrix> {
    let ring = match gens.first() {
        Some(g) => g.ring().clone(),
        None => return Err(Error::input("jacobian of an empty generator list")),
    };
    for g in gens {
        g.check_same_ring(&gens[0])?;
    }
    for &v in vars {
        if v >= ring.nvars() {
            return Err(Error::input(format!("variable index {v} out of range")));
        }
    }
    let rows = gens
        .iter()
        .map(|g| vars.iter().map(|&v| g.derivative(v)).collect())
        .collect();
    PolyMatrix::from_rows(&ring, rows)
}

/// All nonzero `k x k` minors, ordered by (row subset, column subset) in
/// lexicographic order, exact duplicates removed.
pub fn minors_ideal(m: &PolyMatrix, k: usize) -> Result<Vec<Polynomial>> {
    if k == 0 || k > m.rows().min(m.cols()) {
        return Err(Error::input(format!(
            "minor size {k} out of range for a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let row_sets: Vec<Vec<usize>> = (0..m.rows()).combinations(k).collect();
    let col_sets: Vec<Vec<usize>> = (0..m.cols()).combinations(k).collect();
    let jobs: Vec<(usize, usize)> = (0..row_sets.len())
        .flat_map(|r| (0..col_sets.len()).map(move |c| (r, c)))
        .collect();
    let dets = exec::try_par_map(&jobs, |&(r, c)| m.minor(&row_sets[r], &col_sets[c]))?;
    let mut out: Vec<Polynomial> = Vec::new();
    for d in dets {
        if !d.is_zero() && !out.contains(&d) {
            out.push(d);
        }
    }
    Ok(out)
}
