//! Exact row elimination for the graded verifier: incremental reduced row
//! echelon form over the coefficient fields, bit-packed over GF(2) and
//! dense otherwise.

use crate::polyring::{Coef, FieldKind};

/// One matrix row. The bit variant packs GF(2) entries 64 per word.
#[derive(Clone, Debug)]
pub enum Row {
    Bits(Vec<u64>),
    Dense(Vec<Coef>),
}

impl Row {
    pub fn zero(field: &FieldKind, ncols: usize) -> Row {
        if field.characteristic() == 2 {
            Row::Bits(vec![0; ncols.div_ceil(64)])
        } else {
            Row::Dense(vec![field.zero(); ncols])
        }
    }

    pub fn set(&mut self, col: usize, c: Coef) {
        match self {
            Row::Bits(words) => {
                if c.is_zero() {
                    words[col / 64] &= !(1 << (col % 64));
                } else {
                    words[col / 64] |= 1 << (col % 64);
                }
            }
            Row::Dense(v) => v[col] = c,
        }
    }

    pub fn get(&self, col: usize, field: &FieldKind) -> Coef {
        match self {
            Row::Bits(words) => {
                if words[col / 64] >> (col % 64) & 1 == 1 {
                    field.one()
                } else {
                    field.zero()
                }
            }
            Row::Dense(v) => v[col].clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Row::Bits(words) => words.iter().all(|&w| w == 0),
            Row::Dense(v) => v.iter().all(Coef::is_zero),
        }
    }

    fn leading(&self) -> Option<(usize, Coef)> {
        match self {
            Row::Bits(words) => {
                for (i, &w) in words.iter().enumerate() {
                    if w != 0 {
                        let col = i * 64 + w.trailing_zeros() as usize;
                        return Some((col, Coef::Fp { p: 2, v: 1 }));
                    }
                }
                None
            }
            Row::Dense(v) => v
                .iter()
                .enumerate()
                .find(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone())),
        }
    }

    /// self -= c * other.
    pub fn sub_scaled(&mut self, c: &Coef, other: &Row) {
        match (self, other) {
            (Row::Bits(a), Row::Bits(b)) => {
                // Over GF(2) a nonzero scale is 1.
                if !c.is_zero() {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x ^= y;
                    }
                }
            }
            (Row::Dense(a), Row::Dense(b)) => {
                for (x, y) in a.iter_mut().zip(b) {
                    if !y.is_zero() {
                        *x = x.sub(&c.mul(y));
                    }
                }
            }
            _ => unreachable!("mixed row kinds"),
        }
    }

    fn scale_to_monic(&mut self, lead: &Coef) {
        if let Row::Dense(v) = self {
            if !lead.is_one() {
                let inv = lead.inv().expect("nonzero leading entry");
                for x in v.iter_mut() {
                    if !x.is_zero() {
                        *x = x.mul(&inv);
                    }
                }
            }
        }
    }

    /// Lays blocks side by side, each padded to a whole number of words in
    /// the packed case so bit offsets never straddle a block boundary.
    pub fn concat(field: &FieldKind, parts: &[Row], ncols: usize) -> Row {
        if field.characteristic() == 2 {
            let stride = ncols.div_ceil(64);
            let mut words = Vec::with_capacity(stride * parts.len());
            for p in parts {
                match p {
                    Row::Bits(w) => {
                        debug_assert_eq!(w.len(), stride);
                        words.extend_from_slice(w);
                    }
                    Row::Dense(_) => unreachable!("mixed row kinds"),
                }
            }
            Row::Bits(words)
        } else {
            let mut v = Vec::with_capacity(ncols * parts.len());
            for p in parts {
                match p {
                    Row::Dense(d) => {
                        debug_assert_eq!(d.len(), ncols);
                        v.extend_from_slice(d);
                    }
                    Row::Bits(_) => unreachable!("mixed row kinds"),
                }
            }
            Row::Dense(v)
        }
    }
}

/// Maintains a reduced row echelon basis under row insertion: every stored
/// row is monic at its pivot and zero at every other pivot column.
#[derive(Clone, Debug)]
pub struct Eliminator {
    field: FieldKind,
    ncols: usize,
    rows: Vec<Row>,
    pivots: Vec<usize>,
    row_of_pivot: Vec<Option<usize>>,
}

impl Eliminator {
    pub fn new(field: &FieldKind, ncols: usize) -> Eliminator {
        Eliminator {
            field: field.clone(),
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
            row_of_pivot: vec![None; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert_sparse(&mut self, entries: &[(usize, Coef)]) -> bool {
        let mut row = Row::zero(&self.field, self.ncols);
        for (col, c) in entries {
            row.set(*col, row.get(*col, &self.field).add(c));
        }
        self.insert(row)
    }

    /// Reduces the row; if it survives, makes it a new pivot row and clears
    /// its pivot column from all earlier rows. Returns false on a zero
    /// remainder.
    pub fn insert(&mut self, row: Row) -> bool {
        let mut row = self.reduce(row);
        let Some((lead, c)) = row.leading() else { return false };
        row.scale_to_monic(&c);
        for existing in self.rows.iter_mut() {
            let at = existing.get(lead, &self.field);
            if !at.is_zero() {
                existing.sub_scaled(&at, &row);
            }
        }
        self.row_of_pivot[lead] = Some(self.rows.len());
        self.rows.push(row);
        self.pivots.push(lead);
        true
    }

    /// Canonical normal form: clears every pivot coordinate. One pass
    /// suffices because stored rows vanish at all other pivots.
    pub fn reduce(&self, mut row: Row) -> Row {
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = row.get(p, &self.field);
            if !c.is_zero() {
                row.sub_scaled(&c, &self.rows[i]);
            }
        }
        row
    }

    /// Normal form of a unit vector modulo the row space: free columns are
    /// already reduced, pivot columns subtract their monic pivot row.
    pub fn unit_nf(&self, col: usize) -> Row {
        let mut e = Row::zero(&self.field, self.ncols);
        e.set(col, self.field.one());
        match self.row_of_pivot[col] {
            None => e,
            Some(r) => {
                e.sub_scaled(&self.field.one(), &self.rows[r]);
                e
            }
        }
    }

    /// A basis of the solution space of (rows) * x = 0, one vector per free
    /// column.
    pub fn nullspace_basis(&self) -> Vec<Vec<Coef>> {
        let mut basis = Vec::new();
        for f in 0..self.ncols {
            if self.row_of_pivot[f].is_some() {
                continue;
            }
            let mut v = vec![self.field.zero(); self.ncols];
            v[f] = self.field.one();
            for (r, &p) in self.rows.iter().zip(&self.pivots) {
                let c = r.get(f, &self.field);
                if !c.is_zero() {
                    v[p] = c.neg();
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Exact fixed space of a list of square matrices (row-major action
/// (M v)_i = sum_j M[i][j] v[j]): the common nullspace of the M - 1.
pub fn brute_fixed_subspace(
    field: &FieldKind,
    dim: usize,
    mats: &[Vec<Vec<Coef>>],
) -> Vec<Vec<Coef>> {
    let mut elim = Eliminator::new(field, dim);
    for m in mats {
        for (i, mrow) in m.iter().enumerate() {
            let mut row = Row::zero(field, dim);
            for (j, c) in mrow.iter().enumerate() {
                let v = if i == j { c.sub(&field.one()) } else { c.clone() };
                row.set(j, v);
            }
            elim.insert(row);
        }
    }
    elim.nullspace_basis()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldKind {
        FieldKind::prime(2).unwrap()
    }

    #[test]
    fn rank_and_reduction_over_f2() {
        let f = f2();
        let mut e = Eliminator::new(&f, 4);
        assert!(e.insert_sparse(&[(0, f.one()), (1, f.one())]));
        assert!(e.insert_sparse(&[(1, f.one()), (2, f.one())]));
        assert!(!e.insert_sparse(&[(0, f.one()), (2, f.one())]), "dependent");
        assert_eq!(e.rank(), 2);
        let nf = e.reduce({
            let mut r = Row::zero(&f, 4);
            r.set(0, f.one());
            r
        });
        // e0 reduces to e2 modulo the two rows.
        assert!(!nf.get(2, &f).is_zero());
        assert!(nf.get(0, &f).is_zero());
    }

    #[test]
    fn rank_over_rationals() {
        let f = FieldKind::Rationals;
        let mut e = Eliminator::new(&f, 3);
        let two = f.from_i64(2);
        let three = f.from_i64(3);
        assert!(e.insert_sparse(&[(0, two.clone()), (1, three.clone())]));
        assert!(e.insert_sparse(&[(0, f.one()), (2, f.one())]));
        assert!(e.insert_sparse(&[(1, f.one())]));
        assert_eq!(e.rank(), 3);
        assert!(!e.insert_sparse(&[(2, two)]));
    }

    #[test]
    fn unit_nf_matches_reduce() {
        let f = FieldKind::prime(5).unwrap();
        let mut e = Eliminator::new(&f, 5);
        e.insert_sparse(&[(1, f.from_i64(2)), (3, f.from_i64(3))]);
        e.insert_sparse(&[(0, f.one()), (4, f.from_i64(4))]);
        for col in 0..5 {
            let by_lookup = e.unit_nf(col);
            let mut unit = Row::zero(&f, 5);
            unit.set(col, f.one());
            let by_reduce = e.reduce(unit);
            for c in 0..5 {
                assert_eq!(by_lookup.get(c, &f), by_reduce.get(c, &f));
            }
        }
    }

    #[test]
    fn fixed_space_of_swap_is_three_dimensional() {
        // The rank-4 swap representation (i, j) -> (j, i) over GF(2).
        let f = f2();
        let zero = f.zero();
        let one = f.one();
        let mut swap = vec![vec![zero; 4]; 4];
        // basis order: 00, 01, 10, 11; swap exchanges 01 and 10.
        swap[0][0] = one.clone();
        swap[1][2] = one.clone();
        swap[2][1] = one.clone();
        swap[3][3] = one.clone();
        let basis = brute_fixed_subspace(&f, 4, &[swap]);
        assert_eq!(basis.len(), 3);
    }

    #[test]
    fn regular_representation_fixes_only_the_orbit_sum() {
        // S3 acting on itself by left multiplication, over the rationals:
        // the fixed space is spanned by the sum over the group.
        let f = FieldKind::Rationals;
        let elements: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let compose = |a: &[usize; 3], b: &[usize; 3]| -> [usize; 3] {
            [a[b[0]], a[b[1]], a[b[2]]]
        };
        let index = |p: &[usize; 3]| elements.iter().position(|e| e == p).unwrap();
        let mats: Vec<Vec<Vec<Coef>>> = elements[1..=2]
            .iter()
            .map(|g| {
                let mut m = vec![vec![f.zero(); 6]; 6];
                for (j, h) in elements.iter().enumerate() {
                    m[index(&compose(g, h))][j] = f.one();
                }
                m
            })
            .collect();
        let basis = brute_fixed_subspace(&f, 6, &mats);
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        assert!(v.iter().all(|c| *c == v[0]));
    }

    #[test]
    fn nullspace_of_full_rank_matrix_is_trivial() {
        let f = f2();
        let mut e = Eliminator::new(&f, 2);
        e.insert_sparse(&[(0, f.one())]);
        e.insert_sparse(&[(1, f.one())]);
        assert!(e.nullspace_basis().is_empty());
    }
}
