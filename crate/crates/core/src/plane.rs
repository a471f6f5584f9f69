//! Plane permutations `(s, π)`: a long cycle `s` written as a sequence
//! `s_0 s_1 .. s_{n-1}`, together with an arbitrary permutation `π`.
//!
//! The sequence `s` induces the linear order `<_s` (left to right). An element
//! `s_i` is an exceedance when `s_i <_s π(s_i)`, and an anti-exceedance
//! otherwise. Fixed points are therefore anti-exceedances.

use std::fmt;

use crate::error::{Error, Result};
use crate::permutation::Permutation;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlanePermutation {
    s: Vec<usize>,
    pi: Permutation,
    // pos[x] = index of x in s; realizes <_s as index comparison
    pos: Vec<usize>,
}

impl PlanePermutation {
    /// `s` lists the upper row left to right (zero-based labels). `s_0` need
    /// not be the smallest label.
    pub fn new(s: Vec<usize>, pi: Permutation) -> Result<Self> {
        let n = s.len();
        if pi.n() != n {
            return Err(Error::SizeMismatch {
                left: n,
                right: pi.n(),
            });
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &x) in s.iter().enumerate() {
            if x >= n || pos[x] != usize::MAX {
                return Err(Error::ParsePermutation {
                    text: format!("{s:?}"),
                    reason: "upper row is not an arrangement of the ground set".into(),
                });
            }
            pos[x] = i;
        }
        Ok(PlanePermutation { s, pi, pos })
    }

    /// `s = (0 1 .. n-1)`, so `<_s` is the natural order.
    pub fn canonical(pi: Permutation) -> Self {
        let n = pi.n();
        PlanePermutation {
            s: (0..n).collect(),
            pos: (0..n).collect(),
            pi,
        }
    }

    pub fn n(&self) -> usize {
        self.s.len()
    }

    pub fn upper(&self) -> &[usize] {
        &self.s
    }

    pub fn vertical(&self) -> &Permutation {
        &self.pi
    }

    /// Index of `x` in the upper row.
    pub fn position(&self, x: usize) -> usize {
        self.pos[x]
    }

    /// `s` as a cyclic permutation `s_i -> s_{i+1}`.
    pub fn upper_cycle(&self) -> Permutation {
        let n = self.n();
        let mut images = vec![0; n];
        for i in 0..n {
            images[self.s[i]] = self.s[(i + 1) % n];
        }
        Permutation::from_images_unchecked(images)
    }

    /// The diagonal `D = s ∘ π⁻¹`.
    pub fn diagonal(&self) -> Permutation {
        self.upper_cycle()
            .compose(&self.pi.inverse())
            .expect("same ground set")
    }

    /// The diagonal read off the two-row array: `D(π(s_{i-1})) = s_i`, cyclically.
    pub fn diagonal_from_pairs(&self) -> Permutation {
        let n = self.n();
        let mut images = vec![0; n];
        for i in 0..n {
            let prev = self.s[(i + n - 1) % n];
            images[self.pi.apply(prev)] = self.s[i];
        }
        Permutation::from_images_unchecked(images)
    }

    pub fn is_exceedance(&self, x: usize) -> bool {
        self.pos[x] < self.pos[self.pi.apply(x)]
    }

    pub fn exceedance_count(&self) -> usize {
        (0..self.n()).filter(|&x| self.is_exceedance(x)).count()
    }

    pub fn anti_exceedance_count(&self) -> usize {
        self.n() - self.exceedance_count()
    }

    /// The trivial anti-exceedances: in each cycle of `π`, the preimage of the
    /// `<_s`-minimum of that cycle.
    pub fn trivial_anti_exceedances(&self) -> Vec<usize> {
        let inv = self.pi.inverse();
        self.pi
            .cycles()
            .iter()
            .map(|cycle| {
                let min = *cycle.iter().min_by_key(|&&x| self.pos[x]).expect("nonempty");
                inv.apply(min)
            })
            .collect()
    }

    /// Anti-exceedances beyond the one trivial anti-exceedance per cycle.
    pub fn ntae_count(&self) -> usize {
        self.anti_exceedance_count() - self.pi.num_cycles()
    }

    /// Relabels `s_i ↦ i` and conjugates `π` accordingly, giving the plane
    /// permutation with canonical upper row that has the same statistics.
    pub fn relabeled(&self) -> PlanePermutation {
        let images = (0..self.n())
            .map(|i| self.pos[self.pi.apply(self.s[i])])
            .collect();
        PlanePermutation::canonical(Permutation::from_images_unchecked(images))
    }

    /// Two-row array with 1-based labels: `s` on top, `π(s_i)` below.
    pub fn two_row(&self) -> String {
        let top: Vec<String> = self.s.iter().map(|x| (x + 1).to_string()).collect();
        let bottom: Vec<String> = self
            .s
            .iter()
            .map(|&x| (self.pi.apply(x) + 1).to_string())
            .collect();
        let width = top
            .iter()
            .chain(bottom.iter())
            .map(String::len)
            .max()
            .unwrap_or(1);
        let row = |cells: &[String]| {
            cells
                .iter()
                .map(|c| format!("{c:>width$}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!("{}\n{}", row(&top), row(&bottom))
    }
}

impl fmt::Display for PlanePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.two_row())
    }
}

impl fmt::Debug for PlanePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlanePermutation(s={:?}, pi={})", self.s, self.pi)
    }
}
