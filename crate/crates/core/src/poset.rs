//! Set partitions of `{1, .., k}`, finite posets, and the lattice of
//! partitions whose blocks are singletons or have size at least `r`.
//!
//! The r-equal arrangement in `(R^n)^k` has one subspace per minimal
//! r-fold coincidence; intersections of subspaces correspond exactly to the
//! partitions modelled here, ordered by reverse refinement (finer = smaller,
//! with the discrete partition as bottom element).

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::complex::SimplicialComplex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("partitions need at least one point, got k = 0")]
    ZeroPoints,
    #[error("multiplicity bound must be at least 2, got r = {r}")]
    MultiplicityTooSmall { r: u32 },
    #[error("no {r}-fold coincidence is possible among {k} points; the arrangement is empty")]
    EmptyArrangement { k: u32, r: u32 },
    #[error("invalid partition of {{1, .., {k}}}: {reason}")]
    InvalidPartition { k: u32, reason: String },
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("element index {index} out of range for poset of size {size}")]
    ElementOutOfRange { index: usize, size: usize },
    #[error("operation requires a poset with a bottom element")]
    NoBottom,
}

/// A partition of the ground set `{1, .., k}` into nonempty blocks, stored in
/// canonical form: each block sorted, blocks ordered by least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    ground_size: u32,
    blocks: Vec<Vec<u32>>,
}

impl Partition {
    pub fn new(ground_size: u32, blocks: Vec<Vec<u32>>) -> Result<Self, PosetError> {
        if ground_size == 0 {
            return Err(PosetError::ZeroPoints);
        }
        let invalid = |reason: String| PosetError::InvalidPartition {
            k: ground_size,
            reason,
        };
        let mut seen = vec![false; ground_size as usize + 1];
        for block in &blocks {
            if block.is_empty() {
                return Err(invalid("empty block".to_string()));
            }
            for &v in block {
                if v == 0 || v > ground_size {
                    return Err(invalid(format!("element {v} out of range")));
                }
                if seen[v as usize] {
                    return Err(invalid(format!("element {v} appears twice")));
                }
                seen[v as usize] = true;
            }
        }
        if let Some(missing) = (1..=ground_size).find(|&v| !seen[v as usize]) {
            return Err(invalid(format!("element {missing} is not covered")));
        }
        Ok(Self::from_blocks_unchecked(ground_size, blocks))
    }

    fn from_blocks_unchecked(ground_size: u32, mut blocks: Vec<Vec<u32>>) -> Self {
        for block in &mut blocks {
            block.sort_unstable();
        }
        blocks.sort_unstable();
        Partition {
            ground_size,
            blocks,
        }
    }

    /// The finest partition: every element in its own block.
    pub fn discrete(ground_size: u32) -> Self {
        Self::from_blocks_unchecked(ground_size, (1..=ground_size).map(|v| vec![v]).collect())
    }

    /// The coarsest partition: one block containing everything.
    pub fn single_block(ground_size: u32) -> Self {
        Self::from_blocks_unchecked(ground_size, vec![(1..=ground_size).collect()])
    }

    pub fn ground_size(&self) -> u32 {
        self.ground_size
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn block_count(&self) -> u32 {
        self.blocks.len() as u32
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.ground_size as usize
    }

    /// Sizes of the non-singleton blocks, sorted descending. Two partitions
    /// with the same shape have isomorphic lower intervals in the lattice.
    pub fn big_block_shape(&self) -> Vec<u32> {
        let mut shape: Vec<u32> = self
            .blocks
            .iter()
            .map(|b| b.len() as u32)
            .filter(|&s| s >= 2)
            .collect();
        shape.sort_unstable_by(|a, b| b.cmp(a));
        shape
    }

    /// True when every block is a singleton or has at least `r` elements.
    pub fn is_r_valid(&self, r: u32) -> bool {
        self.blocks
            .iter()
            .all(|b| b.len() == 1 || b.len() >= r as usize)
    }

    /// True when every block of `self` is contained in a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        debug_assert_eq!(self.ground_size, coarser.ground_size);
        if self.ground_size != coarser.ground_size {
            return false;
        }
        let mut owner = vec![usize::MAX; self.ground_size as usize + 1];
        for (i, block) in coarser.blocks.iter().enumerate() {
            for &v in block {
                owner[v as usize] = i;
            }
        }
        self.blocks.iter().all(|block| {
            let first = owner[block[0] as usize];
            block.iter().all(|&v| owner[v as usize] == first)
        })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        write!(f, "{}", rendered.join("|"))
    }
}

/// All set partitions of `{1, .., k}`, enumerated through restricted growth
/// strings, in canonical order.
pub fn set_partitions(k: u32) -> Vec<Partition> {
    assert!(k >= 1, "set_partitions needs k >= 1");
    let k = k as usize;
    let mut out = Vec::new();
    // rgs[i] = block index of element i+1; rgs[i] <= 1 + max(rgs[..i]).
    let mut rgs = vec![0u32; k];
    loop {
        let block_count = *rgs.iter().max().unwrap() as usize + 1;
        let mut blocks = vec![Vec::new(); block_count];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b as usize].push(i as u32 + 1);
        }
        out.push(Partition::from_blocks_unchecked(k as u32, blocks));

        // Advance to the next restricted growth string.
        let mut pos = k;
        loop {
            if pos == 1 {
                let mut sorted = out;
                sorted.sort_unstable();
                return sorted;
            }
            pos -= 1;
            let cap = rgs[..pos].iter().max().unwrap() + 1;
            if rgs[pos] < cap {
                rgs[pos] += 1;
                for slot in rgs.iter_mut().skip(pos + 1) {
                    *slot = 0;
                }
                break;
            }
        }
    }
}

/// Partitions of `{1, .., k}` whose blocks are singletons or of size >= `r`.
pub fn r_valid_partitions(k: u32, r: u32) -> Vec<Partition> {
    set_partitions(k)
        .into_iter()
        .filter(|p| p.is_r_valid(r))
        .collect()
}

/// Counts the partitions enumerated by [`r_valid_partitions`] without
/// constructing them, via the recurrence on the block of the largest element.
pub fn count_r_valid_partitions(k: u32, r: u32) -> u128 {
    let k = k as usize;
    let r = r as usize;
    let mut binom = vec![vec![0u128; k + 1]; k + 1];
    for i in 0..=k {
        binom[i][0] = 1;
        for j in 1..=i {
            binom[i][j] = binom[i - 1][j - 1] + binom[i - 1].get(j).copied().unwrap_or(0);
        }
    }
    let mut a = vec![0u128; k + 1];
    a[0] = 1;
    for j in 1..=k {
        // Element j sits in a singleton, or in a block of size t >= r.
        let mut total = a[j - 1];
        for t in r..=j {
            total += binom[j - 1][t - 1] * a[j - t];
        }
        a[j] = total;
    }
    a[k]
}

/// A finite poset over explicit elements, with the order relation stored as
/// bitset rows so the axioms can be checked at construction even for a few
/// thousand elements.
#[derive(Clone, Debug)]
pub struct Poset<T> {
    elements: Vec<T>,
    words: usize,
    up: Vec<u64>,
    down: Vec<u64>,
    bottom: Option<usize>,
}

fn bit_get(bits: &[u64], words: usize, row: usize, col: usize) -> bool {
    bits[row * words + col / 64] >> (col % 64) & 1 == 1
}

fn bit_set(bits: &mut [u64], words: usize, row: usize, col: usize) {
    bits[row * words + col / 64] |= 1 << (col % 64);
}

fn row_is_subset(bits: &[u64], words: usize, sub: usize, sup: usize) -> bool {
    let a = &bits[sub * words..(sub + 1) * words];
    let b = &bits[sup * words..(sup + 1) * words];
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

impl<T> Poset<T> {
    /// Builds a poset from elements and a comparison closure, verifying
    /// reflexivity, antisymmetry, and transitivity.
    pub fn new<F>(elements: Vec<T>, leq: F) -> Result<Self, PosetError>
    where
        F: Fn(&T, &T) -> bool,
    {
        let n = elements.len();
        let words = n.div_ceil(64);
        let mut up = vec![0u64; n * words];
        for i in 0..n {
            for j in 0..n {
                if leq(&elements[i], &elements[j]) {
                    bit_set(&mut up, words, i, j);
                }
            }
        }
        Self::from_up_bits(elements, up, true)
    }

    fn from_up_bits(elements: Vec<T>, up: Vec<u64>, check: bool) -> Result<Self, PosetError> {
        let n = elements.len();
        let words = n.div_ceil(64);
        debug_assert_eq!(up.len(), n * words);
        if check {
            for i in 0..n {
                if !bit_get(&up, words, i, i) {
                    return Err(PosetError::NotAPartialOrder(format!(
                        "element {i} is not related to itself"
                    )));
                }
            }
            for i in 0..n {
                for j in 0..n {
                    if i != j && bit_get(&up, words, i, j) && bit_get(&up, words, j, i) {
                        return Err(PosetError::NotAPartialOrder(format!(
                            "elements {i} and {j} are related both ways"
                        )));
                    }
                }
            }
            // x <= y forces up(y) to sit inside up(x).
            for i in 0..n {
                for j in 0..n {
                    if bit_get(&up, words, i, j) && !row_is_subset(&up, words, j, i) {
                        return Err(PosetError::NotAPartialOrder(format!(
                            "transitivity fails above the pair ({i}, {j})"
                        )));
                    }
                }
            }
        }
        let mut down = vec![0u64; n * words];
        for i in 0..n {
            for j in 0..n {
                if bit_get(&up, words, i, j) {
                    bit_set(&mut down, words, j, i);
                }
            }
        }
        let full_row =
            |bits: &[u64], row: usize| -> bool { (0..n).all(|j| bit_get(bits, words, row, j)) };
        let bottom = (0..n).find(|&i| full_row(&up, i));
        Ok(Poset {
            elements,
            words,
            up,
            down,
            bottom,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &T {
        &self.elements[index]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        bit_get(&self.up, self.words, i, j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    /// Index of the unique minimum, when one exists.
    pub fn bottom(&self) -> Option<usize> {
        self.bottom
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.len()).all(|j| j == i || !self.leq(j, i)))
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.len()).all(|j| j == i || !self.leq(i, j)))
            .collect()
    }

    /// Cover relations as `(lower, upper)` index pairs, lexicographically
    /// sorted. `upper` covers `lower` when nothing sits strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let words = self.words;
        let mut covers = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.leq(i, j) {
                    continue;
                }
                // |[i, j]| = 2 exactly for covers.
                let between: u32 = self.up[i * words..(i + 1) * words]
                    .iter()
                    .zip(&self.down[j * words..(j + 1) * words])
                    .map(|(a, b)| (a & b).count_ones())
                    .sum();
                if between == 2 {
                    covers.push((i, j));
                }
            }
        }
        covers.sort_unstable();
        covers
    }

    /// The open interval `(bottom, x)`: everything strictly between the
    /// bottom element and `x`, with the induced order.
    pub fn open_interval(&self, x: usize) -> Result<Poset<T>, PosetError>
    where
        T: Clone,
    {
        let bottom = self.bottom.ok_or(PosetError::NoBottom)?;
        if x >= self.len() {
            return Err(PosetError::ElementOutOfRange {
                index: x,
                size: self.len(),
            });
        }
        let kept: Vec<usize> = (0..self.len())
            .filter(|&y| y != bottom && y != x && self.leq(y, x))
            .collect();
        let elements: Vec<T> = kept.iter().map(|&y| self.elements[y].clone()).collect();
        let n = kept.len();
        let words = n.div_ceil(64);
        let mut up = vec![0u64; n * words];
        for (a, &ya) in kept.iter().enumerate() {
            for (b, &yb) in kept.iter().enumerate() {
                if self.leq(ya, yb) {
                    bit_set(&mut up, words, a, b);
                }
            }
        }
        // Induced suborders inherit the axioms.
        Poset::from_up_bits(elements, up, false)
    }

    /// The order complex: vertices are poset elements, facets are the maximal
    /// chains, found by walking cover paths from minimal elements upward.
    pub fn order_complex(&self) -> SimplicialComplex {
        let n = self.len();
        if n == 0 {
            return SimplicialComplex::empty();
        }
        let mut covers_up: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (lo, hi) in self.covers() {
            covers_up[lo].push(hi);
        }
        let mut facets: Vec<Vec<u32>> = Vec::new();
        let mut path: Vec<usize> = Vec::new();
        for start in self.minimal_elements() {
            // Iterative depth-first enumeration of maximal cover paths.
            let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
            path.clear();
            path.push(start);
            while let Some(&mut (node, ref mut next)) = stack.last_mut() {
                if covers_up[node].is_empty() {
                    let mut chain: Vec<u32> = path.iter().map(|&v| v as u32).collect();
                    chain.sort_unstable();
                    facets.push(chain);
                    stack.pop();
                    path.pop();
                    continue;
                }
                if *next < covers_up[node].len() {
                    let child = covers_up[node][*next];
                    *next += 1;
                    stack.push((child, 0));
                    path.push(child);
                } else {
                    stack.pop();
                    path.pop();
                }
            }
        }
        facets.sort_unstable();
        facets.dedup();
        // Distinct maximal chains never contain one another.
        SimplicialComplex::from_facets_trusted(n as u32, facets)
    }

    /// Serializable snapshot: element labels, cover relations, bottom index.
    pub fn export(&self) -> PosetExport
    where
        T: fmt::Display,
    {
        PosetExport {
            size: self.len(),
            elements: self.elements.iter().map(|e| e.to_string()).collect(),
            covers: self.covers(),
            bottom: self.bottom,
        }
    }
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct PosetExport {
    pub size: usize,
    pub elements: Vec<String>,
    pub covers: Vec<(usize, usize)>,
    pub bottom: Option<usize>,
}

/// The intersection lattice of the r-equal arrangement on `k` points:
/// partitions whose blocks are singletons or of size >= `r`, ordered by
/// reverse refinement, with the discrete partition as bottom element.
pub fn r_equal_poset(k: u32, r: u32) -> Result<Poset<Partition>, PosetError> {
    if k == 0 {
        return Err(PosetError::ZeroPoints);
    }
    if r < 2 {
        return Err(PosetError::MultiplicityTooSmall { r });
    }
    if r > k {
        return Err(PosetError::EmptyArrangement { k, r });
    }
    let elements = r_valid_partitions(k, r);
    Poset::new(elements, |a, b| a.refines(b))
}

/// Open interval `(discrete, x)` of the r-equal lattice, built directly on a
/// canonical ground set from the multiset of non-singleton block sizes of
/// `x`. Isomorphic to the interval above any partition of that shape.
pub fn canonical_open_interval(r: u32, big_blocks: &[u32]) -> Poset<Partition> {
    assert!(r >= 2);
    assert!(big_blocks.iter().all(|&s| s >= r));
    let ground: u32 = big_blocks.iter().sum();
    if ground == 0 {
        return Poset::from_up_bits(Vec::new(), Vec::new(), false)
            .expect("empty poset is trivially valid");
    }
    // Per-block r-valid partitions, each block on its own segment of the
    // ground set.
    let mut offset = 0u32;
    let mut per_block: Vec<Vec<Vec<Vec<u32>>>> = Vec::new();
    for &size in big_blocks {
        let local: Vec<Vec<Vec<u32>>> = r_valid_partitions(size, r)
            .into_iter()
            .map(|p| {
                p.blocks()
                    .iter()
                    .map(|b| b.iter().map(|&v| v + offset).collect())
                    .collect()
            })
            .collect();
        per_block.push(local);
        offset += size;
    }
    let mut elements: Vec<Partition> = Vec::new();
    let mut stack: Vec<(usize, Vec<Vec<u32>>)> = vec![(0, Vec::new())];
    while let Some((depth, blocks)) = stack.pop() {
        if depth == per_block.len() {
            elements.push(Partition::from_blocks_unchecked(ground, blocks));
            continue;
        }
        for choice in &per_block[depth] {
            let mut next = blocks.clone();
            next.extend(choice.iter().cloned());
            stack.push((depth + 1, next));
        }
    }
    let top = Partition::new(ground, {
        let mut blocks = Vec::new();
        let mut start = 1u32;
        for &size in big_blocks {
            blocks.push((start..start + size).collect());
            start += size;
        }
        blocks
    })
    .expect("segment blocks partition the ground set");
    let discrete = Partition::discrete(ground);
    elements.retain(|p| *p != top && *p != discrete);
    elements.sort_unstable();
    Poset::new(elements, |a, b| a.refines(b)).expect("refinement restricts to a partial order")
}
