//! Fraction-free row reduction over the integers.
//!
//! Rational rows are rescaled to primitive integer rows, reduced with
//! cross-multiplication (`b·row − a·pivot`, with `a/b` the reduced ratio of the
//! two leading coefficients) and re-made primitive after every step, so every
//! intermediate entry is an integer. Rows are stored sparsely because the
//! operator matrices this crate produces are mostly zero.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// A nonzero sparse integer row, sorted by column.
#[derive(Clone, Debug)]
pub(crate) struct IntRow {
    entries: Vec<(usize, BigInt)>,
}

impl IntRow {
    /// Scales a rational row to a primitive integer row; `None` for the zero row.
    pub(crate) fn from_rationals(row: &[Rational]) -> Option<Self> {
        let mut lcm = BigInt::one();
        for x in row.iter().filter(|x| !x.is_zero()) {
            if !x.denom().is_one() {
                lcm = lcm.lcm(x.denom());
            }
        }
        let entries: Vec<(usize, BigInt)> = row
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| {
                if lcm.is_one() {
                    (j, x.numer().clone())
                } else {
                    (j, (x.numer() * (&lcm / x.denom())))
                }
            })
            .collect();
        if entries.is_empty() {
            return None;
        }
        let mut r = IntRow { entries };
        r.make_primitive();
        Some(r)
    }

    fn lead_col(&self) -> usize {
        self.entries[0].0
    }

    fn lead(&self) -> &BigInt {
        &self.entries[0].1
    }

    fn coeff_at(&self, col: usize) -> Option<&BigInt> {
        self.entries
            .binary_search_by_key(&col, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    fn make_primitive(&mut self) {
        let mut g = BigInt::zero();
        for (_, x) in &self.entries {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
        if !g.is_zero() && !g.is_one() {
            for (_, x) in self.entries.iter_mut() {
                *x /= &g;
            }
        }
    }

    /// Cost used to rank pivot candidates: small leading coefficient first, then sparsity.
    fn pivot_cost(&self) -> (u64, usize) {
        (self.lead().bits(), self.entries.len())
    }

    /// Eliminates column `col` of `self` using `pivot`. Returns `None` if the result vanishes.
    fn eliminate(&self, pivot: &IntRow, col: usize) -> Option<IntRow> {
        let t = self.coeff_at(col).expect("target has no entry in pivot column");
        let p = pivot.coeff_at(col).expect("pivot has no entry in pivot column");
        let g = t.gcd(p);
        let a = t / &g;
        let b = p / &g;
        let mut out = Vec::with_capacity(self.entries.len() + pivot.entries.len());
        let (mut i, mut k) = (0, 0);
        let (xs, ys) = (&self.entries, &pivot.entries);
        while i < xs.len() || k < ys.len() {
            let take_x = k >= ys.len() || (i < xs.len() && xs[i].0 < ys[k].0);
            let take_y = i >= xs.len() || (k < ys.len() && ys[k].0 < xs[i].0);
            if take_x {
                out.push((xs[i].0, &b * &xs[i].1));
                i += 1;
            } else if take_y {
                out.push((ys[k].0, -(&a * &ys[k].1)));
                k += 1;
            } else {
                let v = &b * &xs[i].1 - &a * &ys[k].1;
                if !v.is_zero() {
                    out.push((xs[i].0, v));
                }
                i += 1;
                k += 1;
            }
        }
        if out.is_empty() {
            return None;
        }
        let mut r = IntRow { entries: out };
        r.make_primitive();
        Some(r)
    }

    fn to_normalized_rationals(&self, cols: usize) -> Vec<Rational> {
        let lead = self.lead().clone();
        let mut v = vec![Rational::zero(); cols];
        for (j, x) in &self.entries {
            v[*j] = Rational::new(x.clone(), lead.clone());
        }
        v
    }
}

/// Row echelon form with primitive integer rows.
pub(crate) struct RowEchelon {
    cols: usize,
    rows: Vec<IntRow>,
    pivots: Vec<usize>,
}

impl RowEchelon {
    pub(crate) fn new(rows: Vec<IntRow>, cols: usize) -> Self {
        let mut active = rows;
        let mut done = Vec::new();
        let mut pivots = Vec::new();
        while !active.is_empty() {
            let col = active.iter().map(IntRow::lead_col).min().unwrap();
            let mut best: Option<usize> = None;
            for (k, r) in active.iter().enumerate() {
                if r.lead_col() != col {
                    continue;
                }
                best = match best {
                    Some(b) if active[b].pivot_cost() <= r.pivot_cost() => Some(b),
                    _ => Some(k),
                };
            }
            let pivot = active.swap_remove(best.unwrap());
            let mut next = Vec::with_capacity(active.len());
            for r in active.drain(..) {
                if r.lead_col() == col {
                    if let Some(reduced) = r.eliminate(&pivot, col) {
                        next.push(reduced);
                    }
                } else {
                    next.push(r);
                }
            }
            active = next;
            pivots.push(col);
            done.push(pivot);
        }
        RowEchelon {
            cols,
            rows: done,
            pivots,
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Back-substitutes to reduced row echelon form over the rationals.
    pub(crate) fn into_rref(mut self) -> Rref {
        let r = self.rows.len();
        for i in (0..r).rev() {
            let col = self.pivots[i];
            let (above, rest) = self.rows.split_at_mut(i);
            let pivot = &rest[0];
            for row in above.iter_mut() {
                if row.coeff_at(col).is_some() {
                    *row = row
                        .eliminate(pivot, col)
                        .expect("echelon rows are independent");
                }
            }
        }
        let rows = self
            .rows
            .iter()
            .map(|row| row.to_normalized_rationals(self.cols))
            .collect();
        Rref {
            cols: self.cols,
            rows,
            pivots: self.pivots,
        }
    }
}

/// Reduced row echelon form: pivot entries are 1 and pivot columns are otherwise zero.
#[derive(Clone, Debug)]
pub(crate) struct Rref {
    pub(crate) cols: usize,
    pub(crate) rows: Vec<Vec<Rational>>,
    pub(crate) pivots: Vec<usize>,
}

pub(crate) fn int_rows<'a>(rows: impl Iterator<Item = &'a [Rational]>) -> Vec<IntRow> {
    rows.filter_map(IntRow::from_rationals).collect()
}

pub(crate) fn rref_of_rows<'a>(rows: impl Iterator<Item = &'a [Rational]>, cols: usize) -> Rref {
    RowEchelon::new(int_rows(rows), cols).into_rref()
}

pub(crate) fn rank_of_rows<'a>(rows: impl Iterator<Item = &'a [Rational]>, cols: usize) -> usize {
    RowEchelon::new(int_rows(rows), cols).rank()
}

/// Bareiss elimination without pivoting. The k-th pivot is the leading principal
/// minor of order k+1; stops at (and returns) the first one that is not positive.
pub(crate) fn first_nonpositive_leading_minor(
    entries: &[Vec<Rational>],
) -> Option<(usize, Rational)> {
    let n = entries.len();
    let mut m = entries.to_vec();
    let mut prev = Rational::one();
    for k in 0..n {
        let pivot = m[k][k].clone();
        if !pivot.is_positive() {
            return Some((k + 1, pivot));
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&pivot * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = pivot;
    }
    None
}

/// Bareiss determinant with row pivoting.
pub(crate) fn bareiss_determinant(entries: &[Vec<Rational>]) -> Rational {
    let n = entries.len();
    if n == 0 {
        return Rational::one();
    }
    let mut m = entries.to_vec();
    let mut prev = Rational::one();
    let mut sign = Rational::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}
