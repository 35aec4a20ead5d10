use serde::Serialize;

use super::AlgebraError;

/// Dense square integer matrix, row-major.
pub type IntMatrix = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn transpose(m: &IntMatrix) -> IntMatrix {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| (0..rows).map(|i| m[i][j]).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &IntMatrix, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// The standard symplectic matrix `J`: `g` diagonal blocks `[[0, 1], [-1, 0]]`.
pub fn standard_symplectic(genus: usize) -> IntMatrix {
    let mut j = vec![vec![0; 2 * genus]; 2 * genus];
    for k in 0..genus {
        j[2 * k][2 * k + 1] = 1;
        j[2 * k + 1][2 * k] = -1;
    }
    j
}

/// An integer skew-symmetric bilinear form, typically an intersection form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewForm {
    entries: IntMatrix,
}

impl SkewForm {
    pub fn new(entries: IntMatrix) -> Result<Self, AlgebraError> {
        let n = entries.len();
        if n % 2 != 0 || entries.iter().any(|r| r.len() != n) {
            return Err(AlgebraError::NotSkew);
        }
        for i in 0..n {
            for j in 0..n {
                if entries[i][j] != -entries[j][i] {
                    return Err(AlgebraError::NotSkew);
                }
            }
        }
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &IntMatrix {
        &self.entries
    }

    pub fn pair(&self, u: &[i64], v: &[i64]) -> i64 {
        let mut acc = 0;
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            for (j, &vj) in v.iter().enumerate() {
                acc += ui * self.entries[i][j] * vj;
            }
        }
        acc
    }

    /// `P^T M P`.
    pub fn transform(&self, p: &IntMatrix) -> IntMatrix {
        mat_mul(&mat_mul(&transpose(p), &self.entries), p)
    }

    pub fn determinant(&self) -> i64 {
        determinant(&self.entries)
    }
}

/// A symplectic basis for a unimodular [`SkewForm`].
///
/// Column `2k` of `change` is the meridian `m_{k+1}` and column `2k + 1` the
/// longitude `l_{k+1}`, both written in the source coordinates, with
/// `m . l = +1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymplecticBasis {
    pub change: IntMatrix,
    pub pairs: Vec<(usize, usize)>,
}

impl SymplecticBasis {
    pub fn genus(&self) -> usize {
        self.pairs.len()
    }
}

/// Integer symplectic Gram-Schmidt.
///
/// The first remaining vector `u` is paired against the rest; the partner is
/// found by Euclidean reduction of the values `omega(u, w)`, always dividing
/// by the smallest nonzero magnitude (lowest index on ties). Every step is an
/// elementary unimodular column operation, so `change` stays in `GL(2g, Z)`.
pub fn symplectic_reduce(form: &SkewForm) -> Result<SymplecticBasis, AlgebraError> {
    let n = form.dim();
    let det = form.determinant();
    if det.abs() != 1 {
        return Err(AlgebraError::NotUnimodular(det));
    }
    let mut remaining: Vec<Vec<i64>> = identity(n);
    let mut columns: Vec<Vec<i64>> = Vec::with_capacity(n);

    while !remaining.is_empty() {
        let u = remaining.remove(0);
        loop {
            let values: Vec<i64> = remaining.iter().map(|w| form.pair(&u, w)).collect();
            let nonzero: Vec<usize> = (0..values.len()).filter(|&i| values[i] != 0).collect();
            let pivot = match nonzero.iter().min_by_key(|&&i| (values[i].abs(), i)) {
                Some(&p) => p,
                None => return Err(AlgebraError::NotUnimodular(det)),
            };
            if nonzero.len() == 1 {
                if values[pivot].abs() != 1 {
                    return Err(AlgebraError::NotUnimodular(det));
                }
                break;
            }
            let pv = values[pivot];
            for &i in &nonzero {
                if i == pivot {
                    continue;
                }
                let q = values[i].div_euclid(pv);
                if q != 0 {
                    let p = remaining[pivot].clone();
                    for (x, y) in remaining[i].iter_mut().zip(&p) {
                        *x -= q * y;
                    }
                }
            }
        }
        let partner = (0..remaining.len())
            .find(|&i| form.pair(&u, &remaining[i]) != 0)
            .expect("pivot found above");
        let mut l = remaining.remove(partner);
        if form.pair(&u, &l) < 0 {
            l.iter_mut().for_each(|x| *x = -*x);
        }
        for w in remaining.iter_mut() {
            let wl = form.pair(w, &l);
            let wm = form.pair(w, &u);
            for k in 0..n {
                w[k] += -wl * u[k] + wm * l[k];
            }
        }
        columns.push(u);
        columns.push(l);
    }

    let change = transpose(&columns);
    let pairs = (0..n / 2).map(|k| (2 * k, 2 * k + 1)).collect();
    Ok(SymplecticBasis { change, pairs })
}

/// Rank over GF(2) of a set of integer vectors of equal length.
pub fn mod2_rank(vectors: &[Vec<i64>]) -> usize {
    let mut rows: Vec<Vec<bool>> = vectors
        .iter()
        .map(|v| v.iter().map(|x| x.rem_euclid(2) == 1).collect())
        .collect();
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][col]) else {
            continue;
        };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][col] {
                let pivot_row = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot_row) {
                    *x ^= *y;
                }
            }
        }
        rank += 1;
    }
    rank
}
