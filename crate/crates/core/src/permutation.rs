//! Permutations of a finite ground set.
//!
//! Internally the ground set is `{0, .., n-1}`; every text rendering and parser
//! uses the conventional `{1, .., n}` labels. Composition is right to left:
//! `f.compose(&g)` maps `x` to `f(g(x))`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// From zero-based images: position `x` holds the image of `x`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &y in &images {
            if y >= n || seen[y] {
                return Err(Error::ParsePermutation {
                    text: format!("{images:?}"),
                    reason: "not a bijection".into(),
                });
            }
            seen[y] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// From zero-based disjoint cycles on `{0..n-1}`; unlisted points are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if x >= n || seen[x] {
                    return Err(Error::ParsePermutation {
                        text: format!("{cycles:?}"),
                        reason: format!("element {} repeated or outside 1..={n}", x + 1),
                    });
                }
                seen[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// The `n`-cycle `0 -> 1 -> ... -> n-1 -> 0`.
    pub fn canonical_long_cycle(n: usize) -> Self {
        Permutation {
            images: (0..n).map(|x| (x + 1) % n).collect(),
        }
    }

    /// The permutation with consecutive blocks as cycles, one per part of
    /// `lambda` in order: `(0 .. λ_1-1)(λ_1 .. λ_1+λ_2-1)...`.
    pub fn canonical_of_type(lambda: &Partition) -> Self {
        let mut images = Vec::with_capacity(lambda.n());
        let mut start = 0;
        for &part in lambda.parts() {
            for t in 0..part {
                images.push(start + (t + 1) % part);
            }
            start += part;
        }
        Permutation { images }
    }

    /// Size of the ground set.
    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `self ∘ g`: apply `g` first, then `self`.
    pub fn compose(&self, g: &Permutation) -> Result<Permutation> {
        if self.n() != g.n() {
            return Err(Error::SizeMismatch {
                left: self.n(),
                right: g.n(),
            });
        }
        Ok(Permutation {
            images: g.images.iter().map(|&y| self.images[y]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { images: inv }
    }

    /// `q ∘ self ∘ q⁻¹`.
    pub fn conjugate_by(&self, q: &Permutation) -> Result<Permutation> {
        q.compose(&self.compose(&q.inverse())?)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Disjoint cycles, each starting at its minimum, ordered by minimum.
    /// Fixed points appear as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn num_cycles(&self) -> usize {
        cycle_count(&self.images)
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::new(self.cycles().iter().map(Vec::len).collect()).expect("cycles are nonempty")
    }

    /// True for an `n`-cycle on the whole ground set (the identity on one point
    /// counts).
    pub fn is_long_cycle(&self) -> bool {
        is_long_cycle(&self.images)
    }

    /// Splices the maximum element `x = n-1` out of its cycle:
    /// `(.. a x b ..)` becomes `(.. a b ..)`, and a fixed `x` disappears.
    pub fn erase_element(&self, x: usize) -> Result<Permutation> {
        let n = self.n();
        if n == 0 || x != n - 1 {
            return Err(Error::NotMaximum {
                max: n,
                got: x + 1,
            });
        }
        let mut images = self.images[..x].to_vec();
        let after = self.images[x];
        if after != x {
            let before = self.images.iter().position(|&y| y == x).expect("bijection");
            images[before] = after;
        }
        Ok(Permutation { images })
    }

    /// Splices a new maximum element `x = n` into the cycle of `after`,
    /// immediately following it.
    pub fn insert_element(&self, x: usize, after: usize) -> Result<Permutation> {
        let n = self.n();
        if x != n {
            return Err(Error::NotMaximum {
                max: n + 1,
                got: x + 1,
            });
        }
        if after >= n {
            return Err(Error::InsertPosition {
                after: after + 1,
                n,
            });
        }
        let mut images = self.images.clone();
        images.push(images[after]);
        images[after] = x;
        Ok(Permutation { images })
    }

    /// One-line notation with 1-based labels, e.g. `2 3 1`.
    pub fn one_line(&self) -> String {
        self.images
            .iter()
            .map(|y| (y + 1).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub(crate) fn cycle_count(images: &[usize]) -> usize {
    let mut seen = vec![false; images.len()];
    let mut count = 0;
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = images[x];
        }
    }
    count
}

pub(crate) fn is_long_cycle(images: &[usize]) -> bool {
    let n = images.len();
    if n == 0 {
        return false;
    }
    let mut x = images[0];
    let mut steps = 1;
    while x != 0 {
        x = images[x];
        steps += 1;
        if steps > n {
            return false;
        }
    }
    steps == n
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based labels, fixed points included: `(1 4)(2)(3)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in self.cycles() {
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses cycle notation `(1 2 3)(4 5)` or one-line images `2 3 1 5 4`.
///
/// For cycle notation the ground set is `[n]` when `n` is given, otherwise the
/// largest label mentioned.
pub fn parse_permutation(text: &str, n: Option<usize>) -> Result<Permutation> {
    let malformed = |reason: String| Error::ParsePermutation {
        text: text.to_string(),
        reason,
    };
    let label = |tok: &str| -> Result<usize> {
        match tok.parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v - 1),
            _ => Err(malformed(format!("bad element {tok:?}"))),
        }
    };
    let trimmed = text.trim();
    if trimmed.starts_with('(') {
        let mut cycles = Vec::new();
        let mut rest = trimmed;
        while !rest.is_empty() {
            let inner = rest
                .strip_prefix('(')
                .ok_or_else(|| malformed("expected '('".into()))?;
            let close = inner
                .find(')')
                .ok_or_else(|| malformed("unclosed cycle".into()))?;
            let cycle = inner[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(label)
                .collect::<Result<Vec<_>>>()?;
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = inner[close + 1..].trim_start();
        }
        let max = cycles.iter().flatten().map(|&x| x + 1).max().unwrap_or(0);
        let size = n.unwrap_or(max);
        if size < max {
            return Err(malformed(format!("element {max} outside 1..={size}")));
        }
        Permutation::from_cycles(size, &cycles)
    } else {
        let images = trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(label)
            .collect::<Result<Vec<_>>>()?;
        if let Some(size) = n {
            if size != images.len() {
                return Err(Error::SizeMismatch {
                    left: size,
                    right: images.len(),
                });
            }
        }
        Permutation::from_images(images).map_err(|_| malformed("not a bijection".into()))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_permutation(s, None)
    }
}

/// Rearranges `xs` into the next permutation in lexicographic order, returning
/// false (and leaving `xs` sorted ascending) after the last one.
pub(crate) fn next_permutation(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        xs.reverse();
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// Lazily enumerates the `(n-1)!` long cycles on `{0..n-1}`.
///
/// Each cycle is identified with its word `(0 a_1 .. a_{n-1})`; words are
/// produced in lexicographic order. [`NCycles::with_prefix`] restricts to the
/// words starting `0, prefix..`, so disjoint prefixes split the stream into
/// independent sub-ranges.
pub struct NCycles {
    word: Vec<usize>,
    fixed: usize,
    state: StreamState,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum StreamState {
    Fresh,
    Running,
    Done,
}

impl NCycles {
    pub fn new(n: usize) -> Self {
        NCycles::with_prefix(n, &[])
    }

    /// Only the words beginning `0, prefix[0], prefix[1], ..`.
    ///
    /// # Panics
    /// If the prefix repeats an element, contains 0, or leaves the ground set.
    pub fn with_prefix(n: usize, prefix: &[usize]) -> Self {
        let mut word = Vec::with_capacity(n);
        if n > 0 {
            word.push(0);
            word.extend_from_slice(prefix);
            let mut used = vec![false; n];
            for &x in &word {
                assert!(x < n && !used[x], "invalid cycle prefix {prefix:?}");
                used[x] = true;
            }
            word.extend((0..n).filter(|&x| !used[x]));
        }
        NCycles {
            fixed: (1 + prefix.len()).min(n),
            word,
            state: if n == 0 {
                StreamState::Done
            } else {
                StreamState::Fresh
            },
        }
    }

    /// Advances and returns the next word, without allocating.
    pub fn next_word(&mut self) -> Option<&[usize]> {
        match self.state {
            StreamState::Done => return None,
            StreamState::Fresh => self.state = StreamState::Running,
            StreamState::Running => {
                if !next_permutation(&mut self.word[self.fixed..]) {
                    self.state = StreamState::Done;
                    return None;
                }
            }
        }
        Some(&self.word)
    }
}

impl Iterator for NCycles {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let word = self.next_word()?;
        Some(Permutation::from_images_unchecked(word_to_images(word)))
    }
}

/// Images of the cycle whose word is `word`.
pub(crate) fn word_to_images(word: &[usize]) -> Vec<usize> {
    let mut images = vec![0; word.len()];
    write_cycle_images(word, &mut images);
    images
}

pub(crate) fn write_cycle_images(word: &[usize], images: &mut [usize]) {
    let n = word.len();
    for i in 0..n {
        images[word[i]] = word[(i + 1) % n];
    }
}

/// The disjoint prefixes of length `depth` (after the leading 0) that split
/// [`NCycles`] into independent chunks.
pub fn n_cycle_prefixes(n: usize, depth: usize) -> Vec<Vec<usize>> {
    let depth = depth.min(n.saturating_sub(1));
    let mut out = vec![Vec::new()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for prefix in &out {
            for x in 1..n {
                if !prefix.contains(&x) {
                    let mut p = prefix.clone();
                    p.push(x);
                    next.push(p);
                }
            }
        }
        out = next;
    }
    out
}

pub fn enumerate_n_cycles(n: usize) -> NCycles {
    NCycles::new(n)
}

/// All `n!` permutations of `{0..n-1}` in lexicographic order of their images.
pub struct AllPermutations {
    images: Vec<usize>,
    state: StreamState,
}

impl AllPermutations {
    pub fn new(n: usize) -> Self {
        AllPermutations {
            images: (0..n).collect(),
            state: StreamState::Fresh,
        }
    }

    pub fn next_images(&mut self) -> Option<&[usize]> {
        match self.state {
            StreamState::Done => return None,
            StreamState::Fresh => self.state = StreamState::Running,
            StreamState::Running => {
                if !next_permutation(&mut self.images) {
                    self.state = StreamState::Done;
                    return None;
                }
            }
        }
        Some(&self.images)
    }
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let images = self.next_images()?.to_vec();
        Some(Permutation { images })
    }
}

/// Lazily enumerates the `z_λ` permutations of cycle type `lambda`.
///
/// Runs over arrangements `w` of the ground set and cuts `w` into consecutive
/// blocks of lengths `λ_1, λ_2, ..`; each block becomes a cycle. An arrangement
/// is kept only if every block starts with its minimum and blocks of equal
/// length have increasing minima, which picks each permutation exactly once.
pub struct ByType {
    blocks: Vec<usize>,
    arrangements: AllPermutations,
}

impl ByType {
    pub fn new(lambda: &Partition) -> Self {
        ByType {
            blocks: lambda.parts().to_vec(),
            arrangements: AllPermutations::new(lambda.n()),
        }
    }

    fn is_canonical(blocks: &[usize], word: &[usize]) -> bool {
        let mut start = 0;
        let mut prev: Option<(usize, usize)> = None;
        for &len in blocks {
            let block = &word[start..start + len];
            let first = block[0];
            if block[1..].iter().any(|&x| x < first) {
                return false;
            }
            if let Some((plen, pfirst)) = prev {
                if plen == len && pfirst > first {
                    return false;
                }
            }
            prev = Some((len, first));
            start += len;
        }
        true
    }
}

impl Iterator for ByType {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        loop {
            let word = self.arrangements.next_images()?;
            if !ByType::is_canonical(&self.blocks, word) {
                continue;
            }
            let mut images = vec![0; word.len()];
            let mut start = 0;
            for &len in &self.blocks {
                write_cycle_images(&word[start..start + len], &mut images[..]);
                start += len;
            }
            return Some(Permutation { images });
        }
    }
}

pub fn enumerate_by_type(lambda: &Partition) -> ByType {
    ByType::new(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn perm(text: &str, n: usize) -> Permutation {
        parse_permutation(text, Some(n)).unwrap()
    }

    #[test]
    fn compose_is_right_to_left() {
        let c = perm("(1 2 3)", 3);
        let d = perm("(1 3 2)", 3);
        assert!(c.compose(&d).unwrap().is_identity());
        assert_eq!(c.compose(&c).unwrap(), d);
        assert_eq!(Permutation::identity(3).compose(&d).unwrap(), d);
        // (1 2) then (2 3): 1 -> 2 -> 3
        let f = perm("(2 3)", 3);
        let g = perm("(1 2)", 3);
        assert_eq!(f.compose(&g).unwrap().apply(0), 2);
        assert!(matches!(
            c.compose(&Permutation::identity(4)),
            Err(Error::SizeMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn cycle_types() {
        assert_eq!(Permutation::identity(4).cycle_type().parts(), &[1, 1, 1, 1]);
        assert_eq!(perm("(1 2)", 3).cycle_type().parts(), &[2, 1]);
        assert_eq!(perm("(1 2 3)(4 5)", 5).cycle_type().parts(), &[3, 2]);
    }

    #[test]
    fn parse_and_render() {
        let p = perm("(1 2 3)(4 5)", 5);
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
        assert_eq!(p.one_line(), "2 3 1 5 4");
        assert_eq!("2 3 1 5 4".parse::<Permutation>().unwrap(), p);
        assert_eq!(perm("(1 4)", 4).to_string(), "(1 4)(2)(3)");
        assert!(parse_permutation("(1 2)(2 3)", None).is_err());
        assert!(parse_permutation("2 2 1", None).is_err());
        assert!(parse_permutation("(1 5)", Some(4)).is_err());
        assert!(parse_permutation("(1 2", None).is_err());
    }

    #[test]
    fn n_cycle_counts() {
        let three: Vec<_> = enumerate_n_cycles(3).map(|p| p.to_string()).collect();
        assert_eq!(three, vec!["(1 2 3)", "(1 3 2)"]);
        assert_eq!(enumerate_n_cycles(4).count(), 6);
        let one: Vec<_> = enumerate_n_cycles(1).collect();
        assert_eq!(one, vec![Permutation::identity(1)]);
        assert_eq!(enumerate_n_cycles(7).count(), 720);
        assert!(enumerate_n_cycles(6).all(|p| p.is_long_cycle()));
    }

    #[test]
    fn prefixes_partition_the_stream() {
        for n in 1..=7 {
            for depth in 0..=3 {
                let mut all = HashSet::new();
                let mut total = 0;
                for prefix in n_cycle_prefixes(n, depth) {
                    for c in NCycles::with_prefix(n, &prefix) {
                        total += 1;
                        all.insert(c);
                    }
                }
                assert_eq!(total, all.len());
                assert_eq!(total, (1..n).product::<usize>().max(1));
            }
        }
    }

    #[test]
    fn by_type_counts() {
        let ids: Vec<_> = enumerate_by_type(&"1,1,1".parse().unwrap()).collect();
        assert_eq!(ids, vec![Permutation::identity(3)]);
        assert_eq!(enumerate_by_type(&"3".parse().unwrap()).count(), 2);
        assert_eq!(enumerate_by_type(&"2,1".parse().unwrap()).count(), 3);
        let lambda: Partition = "2,2,1".parse().unwrap();
        let all: HashSet<_> = enumerate_by_type(&lambda).collect();
        assert_eq!(all.len(), 15);
        assert!(all.iter().all(|p| p.cycle_type() == lambda));
    }

    #[test]
    fn erase_cases() {
        assert_eq!(
            perm("(1 2 4 3)", 4).erase_element(3).unwrap(),
            perm("(1 2 3)", 3)
        );
        assert_eq!(
            perm("(1 2 3)(4)", 4).erase_element(3).unwrap(),
            perm("(1 2 3)", 3)
        );
        assert_eq!(
            Permutation::identity(4).erase_element(3).unwrap(),
            Permutation::identity(3)
        );
        assert!(matches!(
            perm("(1 2 4 3)", 4).erase_element(2),
            Err(Error::NotMaximum { .. })
        ));
    }

    #[test]
    fn insert_cases() {
        assert_eq!(
            perm("(1 2 3)", 3).insert_element(3, 1).unwrap(),
            perm("(1 2 4 3)", 4)
        );
        assert_eq!(
            Permutation::identity(3).insert_element(3, 0).unwrap().to_string(),
            "(1 4)(2)(3)"
        );
        assert!(matches!(
            perm("(1 2 3)", 3).insert_element(3, 3),
            Err(Error::InsertPosition { .. })
        ));
        assert!(matches!(
            perm("(1 2 3)", 3).insert_element(5, 0),
            Err(Error::NotMaximum { .. })
        ));
    }

    #[test]
    fn insertion_into_cycle_is_injective() {
        let p = perm("(1 2 3)(4 5)", 5);
        let results: HashSet<_> = (0..5).map(|a| p.insert_element(5, a).unwrap()).collect();
        assert_eq!(results.len(), 5);
    }

    #[test]
    fn canonical_of_type_blocks() {
        let lambda: Partition = "3,2,1".parse().unwrap();
        assert_eq!(
            Permutation::canonical_of_type(&lambda).to_string(),
            "(1 2 3)(4 5)(6)"
        );
    }
}
