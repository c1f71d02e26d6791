//! Dense linear algebra over a [`Field`].

use crate::field::{Field, FieldElement};

/// Rank by Gaussian elimination; `rows` is consumed as scratch.
pub fn rank(mut rows: Vec<Vec<FieldElement>>, field: &Field) -> usize {
    let ncols = rows.iter().map(|r| r.len()).max().unwrap_or(0);
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i].get(c).is_some_and(|v| !v.is_zero()))
        else {
            continue;
        };
        rows.swap(r, piv);
        let inv = field.inv(rows[r][c]).expect("nonzero pivot");
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let v = row.get(c).copied().unwrap_or(FieldElement::ZERO);
            if v.is_zero() {
                continue;
            }
            let f = field.mul(v, inv);
            for (j, &pv) in pivot_row.iter().enumerate().skip(c) {
                if !pv.is_zero() {
                    row[j] = field.sub(row[j], field.mul(f, pv));
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

struct Pivot {
    row: usize,
    /// Normalized so `vec[row] == 1`; entries past the end are zero.
    vec: Vec<FieldElement>,
    /// `vec = sum combo[j] * column_j`.
    combo: Vec<FieldElement>,
}

/// Incremental column elimination: columns arrive one at a time and each
/// one is either independent of the previous ones or yields the relation
/// expressing it through them.
pub struct ColumnReducer {
    field: Field,
    pivots: Vec<Pivot>,
    columns: usize,
}

impl ColumnReducer {
    pub fn new(field: &Field) -> Self {
        ColumnReducer {
            field: field.clone(),
            pivots: Vec::new(),
            columns: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    /// Stored field elements, for resource accounting.
    pub fn footprint(&self) -> usize {
        self.pivots.iter().map(|p| p.vec.len() + p.combo.len()).sum()
    }

    /// Adds the next column. On dependence returns coefficients `c` over all
    /// columns so far, with `c[last] == 1` and `sum c_j column_j == 0`.
    pub fn push(&mut self, mut v: Vec<FieldElement>) -> Option<Vec<FieldElement>> {
        let f = &self.field;
        let idx = self.columns;
        self.columns += 1;
        let mut combo = vec![FieldElement::ZERO; idx + 1];
        combo[idx] = f.one();
        for p in &self.pivots {
            let c = match v.get(p.row) {
                Some(c) if !c.is_zero() => *c,
                _ => continue,
            };
            if v.len() < p.vec.len() {
                v.resize(p.vec.len(), FieldElement::ZERO);
            }
            for (slot, &x) in v.iter_mut().zip(&p.vec) {
                if !x.is_zero() {
                    *slot = f.sub(*slot, f.mul(c, x));
                }
            }
            for (slot, &x) in combo.iter_mut().zip(&p.combo) {
                if !x.is_zero() {
                    *slot = f.sub(*slot, f.mul(c, x));
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => Some(combo),
            Some(row) => {
                let inv = f.inv(v[row]).expect("nonzero");
                for x in v.iter_mut().chain(combo.iter_mut()) {
                    *x = f.mul(*x, inv);
                }
                while v.last().is_some_and(|x| x.is_zero()) {
                    v.pop();
                }
                self.pivots.push(Pivot { row, vec: v, combo });
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::mk_field;

    #[test]
    fn rank_of_small_matrices() {
        let f = mk_field(5, 1).unwrap();
        let m = |rows: &[&[i64]]| -> Vec<Vec<FieldElement>> {
            rows.iter()
                .map(|r| r.iter().map(|&v| f.from_i64(v)).collect())
                .collect()
        };
        assert_eq!(rank(m(&[&[1, 2], &[2, 4]]), &f), 1);
        assert_eq!(rank(m(&[&[1, 2], &[2, 3]]), &f), 2);
        assert_eq!(rank(m(&[&[0, 0], &[0, 0]]), &f), 0);
        assert_eq!(rank(m(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 2]]), &f), 2);
    }

    #[test]
    fn reducer_reports_relations() {
        let f = mk_field(7, 1).unwrap();
        let col = |v: &[i64]| v.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>();
        let mut red = ColumnReducer::new(&f);
        assert!(red.push(col(&[1, 0, 2])).is_none());
        assert!(red.push(col(&[0, 1])).is_none());
        let rel = red.push(col(&[3, 5, 6])).unwrap();
        // c0*(1,0,2) + c1*(0,1,0) + (3,5,6) = 0.
        assert_eq!(rel, col(&[-3, -5, 1]));
        assert_eq!(red.rank(), 2);
    }
}
