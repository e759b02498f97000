//! Linear algebra over GF(2) on bit-packed vectors.
//!
//! A vector of dimension `n <= 32` is a `u32` whose bit `i` is coordinate
//! `i`. A matrix is the list of its columns.

pub type Vec2 = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    pub cols: Vec<Vec2>,
}

impl Mat2 {
    pub fn identity(n: usize) -> Self {
        Mat2 {
            cols: (0..n).map(|i| 1 << i).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.cols.len()
    }

    pub fn apply(&self, x: Vec2) -> Vec2 {
        let mut acc = 0;
        let mut x = x;
        let mut i = 0;
        while x != 0 {
            if x & 1 == 1 {
                acc ^= self.cols[i];
            }
            x >>= 1;
            i += 1;
        }
        acc
    }

    /// `self * other`.
    pub fn mul(&self, other: &Mat2) -> Mat2 {
        Mat2 {
            cols: other.cols.iter().map(|&c| self.apply(c)).collect(),
        }
    }

    pub fn inverse(&self) -> Option<Mat2> {
        let n = self.dim();
        let mut a = self.cols.clone();
        let mut inv: Vec<Vec2> = (0..n).map(|i| 1 << i).collect();
        // column reduction: make a the identity by column operations
        for r in 0..n {
            let piv = (r..n).find(|&c| a[c] >> r & 1 == 1)?;
            a.swap(r, piv);
            inv.swap(r, piv);
            for c in 0..n {
                if c != r && a[c] >> r & 1 == 1 {
                    a[c] ^= a[r];
                    inv[c] ^= inv[r];
                }
            }
        }
        // the same column operations turned the identity into self^{-1}
        Some(Mat2 { cols: inv })
    }

    pub fn transpose(&self) -> Mat2 {
        let n = self.dim();
        Mat2 {
            cols: (0..n)
                .map(|j| (0..n).fold(0, |acc, i| acc | ((self.cols[i] >> j & 1) << i)))
                .collect(),
        }
    }

    /// Pack a matrix of dimension at most 8 into a `u64` key.
    pub fn pack(&self) -> u64 {
        assert!(self.dim() <= 8);
        self.cols
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &c)| acc | (u64::from(c) << (8 * i)))
    }

    pub fn unpack(key: u64, n: usize) -> Mat2 {
        Mat2 {
            cols: (0..n).map(|i| ((key >> (8 * i)) & 0xff) as u32).collect(),
        }
    }
}

pub fn weight(x: Vec2) -> u32 {
    x.count_ones()
}

pub fn dot(x: Vec2, y: Vec2) -> u32 {
    (x & y).count_ones() & 1
}

/// Rank of a list of vectors.
pub fn rank(vecs: &[Vec2]) -> usize {
    basis(vecs).len()
}

/// Echelon basis of the span (distinct leading bits).
pub fn basis(vecs: &[Vec2]) -> Vec<Vec2> {
    let mut b: Vec<Vec2> = Vec::new();
    for &v in vecs {
        let mut x = v;
        for &e in &b {
            let top = 31 - e.leading_zeros();
            if x >> top & 1 == 1 {
                x ^= e;
            }
        }
        if x != 0 {
            b.push(x);
            b.sort_unstable_by(|a, c| c.cmp(a));
        }
    }
    b
}

/// All elements of `GL(n, 2)` for small `n`.
pub fn general_linear(n: usize) -> Vec<Mat2> {
    assert!(n <= 5, "GL({n},2) too large to enumerate");
    let mut out = Vec::new();
    let mut cols = Vec::with_capacity(n);
    gl_rec(n, &mut cols, &mut out);
    out
}

fn gl_rec(n: usize, cols: &mut Vec<Vec2>, out: &mut Vec<Mat2>) {
    if cols.len() == n {
        out.push(Mat2 { cols: cols.clone() });
        return;
    }
    for v in 1..(1u32 << n) {
        let mut probe = cols.clone();
        probe.push(v);
        if rank(&probe) == probe.len() {
            cols.push(v);
            gl_rec(n, cols, out);
            cols.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl_orders() {
        assert_eq!(general_linear(1).len(), 1);
        assert_eq!(general_linear(2).len(), 6);
        assert_eq!(general_linear(3).len(), 168);
    }

    #[test]
    fn inverse_round_trip() {
        for m in general_linear(3) {
            let inv = m.inverse().unwrap();
            assert_eq!(m.mul(&inv), Mat2::identity(3));
            assert_eq!(inv.mul(&m), Mat2::identity(3));
            assert_eq!(Mat2::unpack(m.pack(), 3), m);
        }
        assert!(Mat2 { cols: vec![1, 1] }.inverse().is_none());
    }
}
