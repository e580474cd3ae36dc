//! Integral LLL reduction (exact, no rationals) for small lattices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    // nearest integer to a/b for b > 0
    let two = BigInt::from(2);
    (a * &two + b).div_floor(&(b * two))
}

/// Integer state of the reduction: `d[i]` are the leading Gram determinants
/// (`d[0] = 1`) and `lam[k][j] = d[j]·μ_kj`, all exact integers. Indices are
/// 1-based to follow the usual presentation.
struct State {
    d: Vec<BigInt>,
    lam: Vec<Vec<BigInt>>,
}

impl State {
    fn red(&mut self, b: &mut [Vec<BigInt>], k: usize, l: usize) {
        let two_lam: BigInt = &self.lam[k][l] * 2;
        if two_lam.abs() <= self.d[l] {
            return;
        }
        let q = round_div(&self.lam[k][l], &self.d[l]);
        let bl = b[l - 1].clone();
        for (x, y) in b[k - 1].iter_mut().zip(&bl) {
            *x -= &q * y;
        }
        self.lam[k][l] = &self.lam[k][l] - &q * &self.d[l];
        for i in 1..l {
            self.lam[k][i] = &self.lam[k][i] - &q * &self.lam[l][i];
        }
    }

    fn swap(&mut self, b: &mut [Vec<BigInt>], k: usize, kmax: usize) {
        b.swap(k - 1, k - 2);
        for j in 1..k - 1 {
            let t = self.lam[k][j].clone();
            self.lam[k][j] = self.lam[k - 1][j].clone();
            self.lam[k - 1][j] = t;
        }
        let lam = self.lam[k][k - 1].clone();
        let big = (&self.d[k - 2] * &self.d[k] + &lam * &lam) / &self.d[k - 1];
        for i in k + 1..=kmax {
            let t = self.lam[i][k].clone();
            self.lam[i][k] = (&self.d[k] * &self.lam[i][k - 1] - &lam * &t) / &self.d[k - 1];
            self.lam[i][k - 1] = (&big * &t + &lam * &self.lam[i][k]) / &self.d[k];
        }
        self.d[k - 1] = big;
    }
}

/// LLL with δ = 3/4 in integer arithmetic; rows of `basis` are reduced in
/// place. The rows must be linearly independent.
pub fn lll(basis: &mut Vec<Vec<BigInt>>) {
    let n = basis.len();
    if n < 2 {
        return;
    }
    let mut st = State { d: vec![BigInt::zero(); n + 1], lam: vec![vec![BigInt::zero(); n + 1]; n + 1] };
    st.d[0] = BigInt::one();
    st.d[1] = dot(&basis[0], &basis[0]);
    let (mut k, mut kmax) = (2usize, 1usize);
    while k <= n {
        if k > kmax {
            kmax = k;
            for j in 1..=k {
                let mut u = dot(&basis[k - 1], &basis[j - 1]);
                for i in 1..j {
                    u = (&st.d[i] * &u - &st.lam[k][i] * &st.lam[j][i]) / &st.d[i - 1];
                }
                if j < k {
                    st.lam[k][j] = u;
                } else {
                    st.d[k] = u;
                }
            }
            if st.d[k].is_zero() {
                return;
            }
        }
        st.red(basis, k, k - 1);
        let lam = &st.lam[k][k - 1];
        let lhs: BigInt = &st.d[k] * &st.d[k - 2] * 4;
        let rhs: BigInt = &st.d[k - 1] * &st.d[k - 1] * 3 - lam * lam * 4;
        if lhs < rhs {
            st.swap(basis, k, kmax);
            k = (k - 1).max(2);
        } else {
            for l in (1..k - 1).rev() {
                st.red(basis, k, l);
            }
            k += 1;
        }
    }
}

/// Squared Euclidean length of a row.
pub fn norm2(v: &[BigInt]) -> BigInt {
    dot(v, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_a_short_vector() {
        // relation 2·x − 3·y = 0 hidden in a scaled lattice
        let big = BigInt::from(10).pow(12);
        let mut b = vec![
            vec![BigInt::one(), BigInt::zero(), &big * 3],
            vec![BigInt::zero(), BigInt::one(), &big * 2],
        ];
        lll(&mut b);
        let first = &b[0];
        assert_eq!(first[2], BigInt::zero());
        assert_eq!((first[0].abs(), first[1].abs()), (BigInt::from(2), BigInt::from(3)));
    }

    #[test]
    fn reduced_basis_spans_the_same_lattice() {
        let rows = [[1, 0, 0, 31_415_926], [0, 1, 0, 27_182_818], [0, 0, 1, 14_142_135]];
        let mut b: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        lll(&mut b);
        // unimodular change of basis keeps the determinant of the Gram matrix
        let gram = |m: &[Vec<BigInt>]| {
            let g: Vec<Vec<BigInt>> = m.iter().map(|r| m.iter().map(|s| dot(r, s)).collect()).collect();
            &g[0][0] * (&g[1][1] * &g[2][2] - &g[1][2] * &g[2][1]) - &g[0][1] * (&g[1][0] * &g[2][2] - &g[1][2] * &g[2][0])
                + &g[0][2] * (&g[1][0] * &g[2][1] - &g[1][1] * &g[2][0])
        };
        let orig: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        assert_eq!(gram(&b), gram(&orig));
        assert!(norm2(&b[0]) < norm2(&orig[0]));
    }
}
