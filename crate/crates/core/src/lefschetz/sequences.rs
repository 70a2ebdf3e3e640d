use num_bigint::BigInt;
use num_traits::One;

use crate::exactmath::binomial;

/// Weakly increasing up to some index, weakly decreasing after it.
pub fn unimodal(h: &[usize]) -> bool {
    let mut i = 0;
    while i + 1 < h.len() && h[i] <= h[i + 1] {
        i += 1;
    }
    while i + 1 < h.len() && h[i] >= h[i + 1] {
        i += 1;
    }
    i + 1 >= h.len()
}

pub fn symmetric(h: &[usize]) -> bool {
    h.iter().eq(h.iter().rev())
}

/// h-vector from an f-vector `(f_0, ..., f_{d-1})` with `f_{-1} = 1`:
/// `h_i = sum_{j=0}^{i} C(d-j, d-i) (-1)^{i-j} f_{j-1}`.
pub fn h_vector(f: &[BigInt], d: usize) -> Vec<BigInt> {
    let fm = |j: usize| -> BigInt {
        if j == 0 {
            BigInt::one()
        } else {
            f.get(j - 1).cloned().unwrap_or_default()
        }
    };
    (0..=d)
        .map(|i| {
            let mut acc = BigInt::default();
            for j in 0..=i {
                let term = binomial((d - j) as u64, (d - i) as u64) * fm(j);
                if (i - j) % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        })
        .collect()
}
