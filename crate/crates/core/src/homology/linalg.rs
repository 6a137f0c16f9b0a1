//! Exact rank of small integer matrices over `Q` or `F_p`.

use num_bigint::BigInt;
use num_traits::{CheckedMul, CheckedSub, One, Zero};

use super::FieldSpec;

/// Rank of `rows` (all of equal length) over the given field.
pub fn rank(rows: &[Vec<i64>], field: FieldSpec) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    match field.characteristic() {
        0 => {
            let small: Vec<Vec<i128>> =
                rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
            match bareiss_rank(small) {
                Some(r) => r,
                None => {
                    let big: Vec<Vec<BigInt>> =
                        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
                    bareiss_rank(big).expect("big integers do not overflow")
                }
            }
        }
        p => modular_rank(rows, p),
    }
}

/// Fraction-free elimination. Pivots are taken at the first nonzero entry
/// in row-major order of the remaining rows and unused columns. Returns
/// `None` if an intermediate value overflows `T`.
fn bareiss_rank<T>(mut a: Vec<Vec<T>>) -> Option<usize>
where
    T: Clone + Zero + One + PartialEq + CheckedMul + CheckedSub + std::ops::Div<Output = T>,
{
    let nrows = a.len();
    let ncols = a[0].len();
    let mut used = vec![false; ncols];
    let mut prev = T::one();
    let mut r = 0;
    while r < nrows {
        let pivot = (r..nrows)
            .flat_map(|i| (0..ncols).map(move |j| (i, j)))
            .find(|&(i, j)| !used[j] && !a[i][j].is_zero());
        let Some((pi, pc)) = pivot else { break };
        a.swap(r, pi);
        used[pc] = true;
        let p = a[r][pc].clone();
        let (top, below) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in below {
            let factor = row[pc].clone();
            for (x, y) in row.iter_mut().zip(pivot_row) {
                let lhs = p.checked_mul(x)?;
                let rhs = factor.checked_mul(y)?;
                *x = lhs.checked_sub(&rhs)? / prev.clone();
            }
        }
        prev = p;
        r += 1;
    }
    Some(r)
}

fn modular_rank(rows: &[Vec<i64>], p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
        .collect();
    let nrows = a.len();
    let ncols = a[0].len();
    let mut used = vec![false; ncols];
    let mut r = 0;
    while r < nrows {
        let pivot = (r..nrows)
            .flat_map(|i| (0..ncols).map(move |j| (i, j)))
            .find(|&(i, j)| !used[j] && a[i][j] != 0);
        let Some((pi, pc)) = pivot else { break };
        a.swap(r, pi);
        used[pc] = true;
        let inv = mod_pow(a[r][pc], p - 2, p);
        let (top, below) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in below {
            if row[pc] == 0 {
                continue;
            }
            let f = mul_mod(row[pc], inv, p);
            for (x, &y) in row.iter_mut().zip(pivot_row) {
                *x = (*x + p - mul_mod(f, y, p)) % p;
            }
        }
        r += 1;
    }
    r
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    fn fp(p: u64) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank(&[], q()), 0);
        assert_eq!(rank(&[vec![0, 0], vec![0, 0]], q()), 0);
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]], q()), 1);
        assert_eq!(rank(&[vec![1, 2], vec![3, 4]], q()), 2);
        assert_eq!(rank(&[vec![0, 1, 0], vec![0, 0, 1], vec![0, 1, 1]], q()), 2);
    }

    #[test]
    fn characteristic_dependence() {
        // det = 2: full rank over Q and F_3, rank 1 over F_2
        let m = vec![vec![1, 1], vec![1, -1]];
        assert_eq!(rank(&m, q()), 2);
        assert_eq!(rank(&m, fp(2)), 1);
        assert_eq!(rank(&m, fp(3)), 2);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        // 40x40 matrix with a large determinant; i128 Bareiss may overflow
        // on the way, the answer must still be exact.
        let n = 40;
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| ((i * 7 + j * 13) % 23) as i64 * 1_000_003 + (i == j) as i64).collect())
            .collect();
        assert_eq!(rank(&rows, q()), rank(&rows, fp(1_000_000_007)));
    }

    /// Rank over Q via exact rational elimination with BigInt fractions.
    fn rational_rank(rows: &[Vec<i64>]) -> usize {
        use num_bigint::BigInt;
        let mut a: Vec<Vec<(BigInt, BigInt)>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| (BigInt::from(x), BigInt::from(1))).collect())
            .collect();
        let (nr, nc) = (a.len(), a.first().map_or(0, Vec::len));
        let mut r = 0;
        for c in 0..nc {
            let Some(p) = (r..nr).find(|&i| !a[i][c].0.is_zero()) else { continue };
            a.swap(r, p);
            let (top, below) = a.split_at_mut(r + 1);
            let pivot_row = &top[r];
            for row in below {
                if row[c].0.is_zero() {
                    continue;
                }
                let (fnum, fden) = (&row[c].0 * &pivot_row[c].1, &row[c].1 * &pivot_row[c].0);
                for (x, y) in row.iter_mut().zip(pivot_row) {
                    let num = &x.0 * &y.1 * &fden - &y.0 * &fnum * &x.1;
                    let den = &x.1 * &y.1 * &fden;
                    *x = (num, den);
                }
            }
            r += 1;
        }
        r
    }

    proptest! {
        #[test]
        fn bareiss_matches_rational_elimination(
            rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 5), 1..6)
        ) {
            prop_assert_eq!(rank(&rows, q()), rational_rank(&rows));
        }
    }
}
