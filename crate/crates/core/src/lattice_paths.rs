//! Legal lattice paths and Narayana numbers.
//!
//! The directed graph on the non-negative integer grid has an arrow
//! `(a, b1) -> (a+1, b2)` whenever `b2 >= b1 - 1`: every step moves one
//! column right and drops by at most one. A path is *legal* if it starts at
//! the origin and every later node sits strictly above the line `y = 0`.
//! An edge is *upward* if it does not drop.
//!
//! The number `b_j(k,l)` of legal paths from the origin to `(k,l)` with
//! exactly `j` upward edges satisfies
//!
//! ```text
//! b_j(k,l) = sum_{r=1}^{l} b_{j-1}(k-1,r) + b_j(k-1,l+1)
//! ```
//!
//! by splitting on the next-to-last node, and at `l = 1` the count is the
//! Narayana number `(1/k) C(k,j) C(k,j-1)`. The Narayana evaluation follows
//! from a cycle-lemma argument: unconstrained paths to `(k,1)` fall into
//! rotation classes of size exactly `k`, each containing one legal path;
//! [`cut_and_glue_census`] replays that argument by explicit orbit
//! construction for small `k`.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};

use crate::error::{Error, Result};
use crate::rational::binomial;

/// Table of legal-path counts `b_j(k,l)` filled by the recursion.
#[derive(Debug, Clone)]
pub struct PathTable {
    k_max: u32,
    l_max: u32,
    // counts[k-1][l-1][j] for 0 <= j <= k_max; l runs over an internal
    // extended range so the recursion can look one column up.
    counts: Vec<Vec<Vec<BigUint>>>,
}

impl PathTable {
    pub fn k_max(&self) -> u32 {
        self.k_max
    }

    pub fn l_max(&self) -> u32 {
        self.l_max
    }

    /// `b_j(k,l)`; zero outside the stored table or for `j` out of `1..=k`.
    pub fn count(&self, k: u32, l: u32, j: u32) -> BigUint {
        if k == 0 || l == 0 {
            return BigUint::ZERO;
        }
        self.counts
            .get(k as usize - 1)
            .and_then(|row| row.get(l as usize - 1))
            .and_then(|cell| cell.get(j as usize))
            .cloned()
            .unwrap_or(BigUint::ZERO)
    }

    /// CSV rows `k,l,j,count` over `1..=k_max`, `1..=l_max`, `1..=k`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,l,j,count\n");
        for k in 1..=self.k_max {
            for l in 1..=self.l_max {
                for j in 1..=k {
                    out.push_str(&format!("{k},{l},{j},{}\n", self.count(k, l, j)));
                }
            }
        }
        out
    }
}

/// Fill the path table for `1 <= k <= k_max`, `1 <= l <= l_max` via the
/// splitting recursion (seed: a single upward edge reaches any `(1,l)`).
pub fn path_table_recursion(k_max: u32, l_max: u32) -> PathTable {
    assert!(k_max >= 1 && l_max >= 1);
    // Column k needs l up to l_max + (k_max - k) to feed later columns.
    let width = |k: u32| (l_max + k_max - k) as usize;
    let mut counts: Vec<Vec<Vec<BigUint>>> = Vec::with_capacity(k_max as usize);
    for k in 1..=k_max {
        let mut column = vec![vec![BigUint::ZERO; k_max as usize + 1]; width(k)];
        if k == 1 {
            for cell in &mut column {
                cell[1] = BigUint::from(1u32);
            }
        } else {
            let prev = &counts[k as usize - 2];
            for l in 1..=width(k) as u32 {
                for j in 1..=k {
                    let mut acc = prev[l as usize][j as usize].clone(); // b_j(k-1, l+1)
                    for r in 1..=l {
                        acc += &prev[r as usize - 1][j as usize - 1];
                    }
                    column[l as usize - 1][j as usize] = acc;
                }
            }
        }
        counts.push(column);
    }
    PathTable {
        k_max,
        l_max,
        counts,
    }
}

/// Count legal paths from the origin to `(k,l)` with exactly `j` upward
/// edges by exhaustive search.
///
/// Upward edges may rise by any amount, but a node higher than
/// `l + (remaining steps)` can never come back down to `l`, which makes the
/// search finite.
pub fn enumerate_legal_paths(k: u32, l: u32, j: u32) -> BigUint {
    assert!(k >= 1 && l >= 1 && j <= k);
    fn walk(x: u32, y: i64, ups: u32, k: u32, l: u32, j: u32) -> u128 {
        if x == k {
            return (y == l as i64 && ups == j) as u128;
        }
        let mut total = 0u128;
        let ceiling = l as i64 + (k - x - 1) as i64;
        // downward step
        if y > 1 {
            total += walk(x + 1, y - 1, ups, k, l, j);
        }
        // upward steps of every admissible height
        if ups < j {
            let mut next = y.max(1);
            while next <= ceiling {
                total += walk(x + 1, next, ups + 1, k, l, j);
                next += 1;
            }
        }
        total
    }
    BigUint::from(walk(0, 0, 0, k, l, j))
}

/// Narayana number `(1/k) C(k,j) C(k,j-1)`, exact and always an integer.
pub fn narayana(k: u32, j: u32) -> Result<BigInt> {
    if j < 1 || j > k {
        return Err(Error::UpwardCountOutOfRange { k, j });
    }
    let product = binomial(k as u64, j as u64) * binomial(k as u64, j as u64 - 1);
    let (value, rem) = num_integer::Integer::div_rem(&product, &BigInt::from(k));
    assert!(rem == BigInt::ZERO, "Narayana numbers are integers");
    Ok(value)
}

/// Catalan number `C(2k, k) / (k+1)`.
pub fn catalan(k: u32) -> BigInt {
    binomial(2 * k as u64, k as u64) / BigInt::from(k + 1)
}

/// Count unconstrained paths from the origin to `(k,1)` with `j` upward
/// edges, and the number of their rotation classes.
///
/// The free count is `C(k,j) C(k,j-1)` (choose the upward positions, then
/// compose the total rise `k-j+1` into `j` non-negative heights); the class
/// count is the Narayana number. For `k <= 6` both are re-derived by explicit
/// enumeration: every rotation class must have exactly `k` members and glue
/// to a single legal path.
pub fn cut_and_glue_census(k: u32, j: u32) -> (BigUint, BigUint) {
    assert!(k >= 1 && (1..=k).contains(&j));
    let free = (binomial(k as u64, j as u64) * binomial(k as u64, j as u64 - 1))
        .to_biguint()
        .expect("binomial products are non-negative");
    let classes = &free / BigUint::from(k);
    assert!(&classes * BigUint::from(k) == free, "orbit size divides");

    if k <= 6 {
        let (enumerated_free, enumerated_classes) = enumerate_orbits(k, j);
        assert_eq!(BigUint::from(enumerated_free), free);
        assert_eq!(BigUint::from(enumerated_classes), classes);
    }
    (free, classes)
}

/// Exhaustively build all free paths to `(k,1)`, apply the cut-and-glue
/// rotation, and check the orbit structure. Returns (paths, classes).
fn enumerate_orbits(k: u32, j: u32) -> (u64, u64) {
    let k = k as usize;
    let j = j as usize;
    let rise = k - j + 1; // total height of the upward edges

    // all ways to place j upward edges among k steps
    let mut masks = Vec::new();
    for mask in 0u32..(1 << k) {
        if mask.count_ones() as usize == j {
            masks.push(mask);
        }
    }
    // all compositions of `rise` into j non-negative parts
    let mut compositions = Vec::new();
    let mut current = vec![0u32; j];
    compose(rise as u32, 0, &mut current, &mut compositions);

    let mut paths: Vec<Vec<i64>> = Vec::new();
    for &mask in &masks {
        for comp in &compositions {
            let mut steps = Vec::with_capacity(k);
            let mut up_idx = 0;
            for pos in 0..k {
                if mask >> pos & 1 == 1 {
                    steps.push(comp[up_idx] as i64);
                    up_idx += 1;
                } else {
                    steps.push(-1);
                }
            }
            paths.push(steps);
        }
    }

    let mut groups: HashMap<Vec<i64>, Vec<Vec<i64>>> = HashMap::new();
    for steps in &paths {
        let glued = cut_and_glue(steps);
        assert!(is_legal(&glued), "glued path must be legal: {steps:?}");
        groups.entry(glued).or_default().push(steps.clone());
    }
    for (glued, members) in &groups {
        assert_eq!(members.len(), k, "class of {glued:?} has {} members", members.len());
        // the class is exactly the set of rotations of its glued representative
        for rot in 0..k {
            let mut rotated = glued[rot..].to_vec();
            rotated.extend_from_slice(&glued[..rot]);
            assert!(members.contains(&rotated));
        }
    }
    (paths.len() as u64, groups.len() as u64)
}

fn compose(remaining: u32, idx: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if idx + 1 == current.len() {
        current[idx] = remaining;
        out.push(current.clone());
        return;
    }
    for v in 0..=remaining {
        current[idx] = v;
        compose(remaining - v, idx + 1, current, out);
    }
}

/// Rotate the path so that it starts right after its latest global minimum.
fn cut_and_glue(steps: &[i64]) -> Vec<i64> {
    let mut y = 0i64;
    let mut min_y = 0i64;
    let mut min_at = 0usize;
    for (i, &d) in steps.iter().enumerate() {
        y += d;
        if y <= min_y {
            min_y = y;
            min_at = i + 1;
        }
    }
    let cut = min_at % steps.len();
    let mut glued = steps[cut..].to_vec();
    glued.extend_from_slice(&steps[..cut]);
    glued
}

fn is_legal(steps: &[i64]) -> bool {
    let mut y = 0i64;
    steps.iter().all(|&d| {
        y += d;
        y >= 1
    })
}
