//! Howell normal form for row spans over `Z/ℓ^n`.
//!
//! `Z/ℓ^n` is a chain ring, so every nonzero entry is `ℓ^k · unit` and a
//! pivot can always be scaled to an exact power of ℓ. Besides the usual
//! echelon reduction we feed `ℓ^{n-k} · row` back into the pool for each
//! pivot row: those multiples vanish at the pivot column and may carry
//! information further right. With that step the rows whose pivot lies at or
//! beyond column `c` span exactly the elements of the module that vanish
//! before `c`, which is what makes the reduced form unique.

use num_integer::Integer;

/// `ℓ`-adic valuation of a nonzero residue.
fn val(mut x: u64, ell: u64) -> u32 {
    debug_assert!(x != 0);
    let mut k = 0;
    while x % ell == 0 {
        x /= ell;
        k += 1;
    }
    k
}

/// Inverse of a unit modulo `m`.
fn inv_mod(x: u64, m: u64) -> u64 {
    let eg = (x as i128).extended_gcd(&(m as i128));
    debug_assert_eq!(eg.gcd, 1);
    eg.x.rem_euclid(m as i128) as u64
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HowellForm {
    ell: u64,
    n: u32,
    modulus: u64,
    cols: usize,
    rows: Vec<Vec<u64>>,
    /// `(column, k)` for each row: the pivot entry is exactly `ℓ^k`.
    pivots: Vec<(usize, u32)>,
}

impl HowellForm {
    pub fn new(ell: u64, n: u32, cols: usize, generators: &[Vec<u64>]) -> Self {
        let modulus = ell.pow(n);
        let m128 = modulus as u128;
        let mut pool: Vec<Vec<u64>> = generators
            .iter()
            .map(|g| {
                assert_eq!(g.len(), cols, "generator length mismatch");
                g.iter().map(|&x| x % modulus).collect()
            })
            .filter(|g: &Vec<u64>| g.iter().any(|&x| x != 0))
            .collect();
        let mut rows = Vec::new();
        let mut pivots = Vec::new();

        let axpy = |target: &mut Vec<u64>, c: u64, src: &[u64]| {
            // target -= c * src
            for (t, &s) in target.iter_mut().zip(src) {
                let sub = (c as u128 * s as u128 % m128) as u64;
                *t = ((*t as u128 + m128 - sub as u128) % m128) as u64;
            }
        };

        for col in 0..cols {
            let best = pool
                .iter()
                .enumerate()
                .filter(|(_, r)| r[col] != 0)
                .min_by_key(|(_, r)| val(r[col], ell))
                .map(|(i, _)| i);
            let Some(idx) = best else { continue };
            let mut p = pool.swap_remove(idx);
            let k = val(p[col], ell);
            let lk = ell.pow(k);
            let u_inv = inv_mod(p[col] / lk, modulus);
            for x in p.iter_mut() {
                *x = (*x as u128 * u_inv as u128 % m128) as u64;
            }
            debug_assert_eq!(p[col], lk);
            for other in pool.iter_mut() {
                if other[col] != 0 {
                    let c = other[col] / lk;
                    axpy(other, c, &p);
                    debug_assert_eq!(other[col], 0);
                }
            }
            let shift = ell.pow(n - k);
            let extra: Vec<u64> = p
                .iter()
                .map(|&x| (x as u128 * shift as u128 % m128) as u64)
                .collect();
            pool.push(extra);
            pool.retain(|r| r.iter().any(|&x| x != 0));
            rows.push(p);
            pivots.push((col, k));
        }
        debug_assert!(pool.is_empty());

        // reduce the entries above each pivot into [0, ℓ^k)
        for i in 0..rows.len() {
            let (col, k) = pivots[i];
            let lk = ell.pow(k);
            let (above, rest) = rows.split_at_mut(i);
            let pivot_row = &rest[0];
            for h in above.iter_mut() {
                let c = h[col] / lk;
                if c != 0 {
                    axpy(h, c, pivot_row);
                }
            }
        }

        HowellForm {
            ell,
            n,
            modulus,
            cols,
            rows,
            pivots,
        }
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[(usize, u32)] {
        &self.pivots
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `log_ℓ` of the number of elements in the row span.
    pub fn log_order(&self) -> u32 {
        self.pivots.iter().map(|&(_, k)| self.n - k).sum()
    }

    /// Exact membership by reduction against the pivot rows.
    pub fn contains(&self, x: &[u64]) -> bool {
        assert_eq!(x.len(), self.cols, "vector length mismatch");
        let m = self.modulus as u128;
        let mut x: Vec<u64> = x.iter().map(|&v| v % self.modulus).collect();
        let mut pivot_iter = self.pivots.iter().zip(&self.rows).peekable();
        for col in 0..self.cols {
            match pivot_iter.peek() {
                Some(&(&(pc, k), row)) if pc == col => {
                    let lk = self.ell.pow(k);
                    if x[col] % lk != 0 {
                        return false;
                    }
                    let c = x[col] / lk;
                    for (t, &s) in x.iter_mut().zip(row) {
                        let sub = (c as u128 * s as u128 % m) as u64;
                        *t = ((*t as u128 + m - sub as u128) % m) as u64;
                    }
                    pivot_iter.next();
                }
                _ => {
                    if x[col] != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    /// All `Z/ℓ^n`-combinations of the generators.
    fn span(modulus: u64, cols: usize, gens: &[Vec<u64>]) -> HashSet<Vec<u64>> {
        let mut set: HashSet<Vec<u64>> = HashSet::new();
        set.insert(vec![0; cols]);
        for g in gens {
            let mut next = HashSet::new();
            for v in &set {
                for c in 0..modulus {
                    next.insert(
                        v.iter()
                            .zip(g)
                            .map(|(&a, &b)| (a + c * b) % modulus)
                            .collect(),
                    );
                }
            }
            set = next;
        }
        set
    }

    #[test]
    fn order_of_small_span() {
        let gens = vec![vec![2, 0], vec![0, 1]];
        let h = HowellForm::new(2, 2, 2, &gens);
        assert_eq!(2u64.pow(h.log_order()), 8);
        assert_eq!(span(4, 2, &gens).len(), 8);
    }

    #[test]
    fn howell_step_matters() {
        // (2, 1) over Z/4 spans {0,(2,1),(0,2),(2,3)}; (0, 2) must be a member.
        let h = HowellForm::new(2, 2, 2, &[vec![2, 1]]);
        assert!(h.contains(&[0, 2]));
        assert!(!h.contains(&[0, 1]));
        assert_eq!(h.log_order(), 2);
    }

    fn arb_gens(modulus: u64, cols: usize) -> impl Strategy<Value = Vec<Vec<u64>>> {
        prop::collection::vec(prop::collection::vec(0..modulus, cols), 0..4)
    }

    proptest! {
        #[test]
        fn agrees_with_enumeration(gens in arb_gens(9, 3), probe in prop::collection::vec(0..9u64, 3)) {
            let h = HowellForm::new(3, 2, 3, &gens);
            let s = span(9, 3, &gens);
            prop_assert_eq!(3usize.pow(h.log_order()), s.len());
            prop_assert_eq!(h.contains(&probe), s.contains(&probe));
        }

        #[test]
        fn canonical_under_generator_changes(gens in arb_gens(8, 3), c in 0..8u64) {
            let h = HowellForm::new(2, 3, 3, &gens);
            let mut rev = gens.clone();
            rev.reverse();
            prop_assert_eq!(&HowellForm::new(2, 3, 3, &rev), &h);
            if gens.len() >= 2 {
                let mut mixed = gens.clone();
                mixed[0] = mixed[0].iter().zip(&gens[1]).map(|(&a, &b)| (a + c * b) % 8).collect();
                prop_assert_eq!(&HowellForm::new(2, 3, 3, &mixed), &h);
            }
            // spanning set of the form itself gives the same form
            prop_assert_eq!(&HowellForm::new(2, 3, 3, h.rows()), &h);
        }
    }
}
