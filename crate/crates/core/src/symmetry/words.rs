use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::recursion::builtins;
use crate::error::{Error, Result};
use crate::jet::DiffFn;
use crate::scalar::Scalar;

/// A composition `R_{i_1} R_{i_2} ... R_{i_k}`; the rightmost operator acts
/// first. The empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OperatorWord(Vec<u8>);

impl OperatorWord {
    pub fn identity() -> Self {
        OperatorWord(Vec::new())
    }

    /// Panics if an index is outside `1..=9`; use [`OperatorWord::try_new`]
    /// for unchecked input.
    pub fn new(indices: Vec<u8>) -> Self {
        Self::try_new(indices).expect("operator indices must lie in 1..=9")
    }

    pub fn try_new(indices: Vec<u8>) -> Result<Self> {
        match indices.iter().find(|&&i| !(1..=9).contains(&i)) {
            Some(&i) => Err(Error::InvalidOperatorIndex(i.into())),
            None => Ok(OperatorWord(indices)),
        }
    }

    pub fn indices(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// Net scaling weight: `+1` for R1..R3, `-1` for R6, R8, R9, `0` for the
    /// rotations. Characteristics of different weights share no monomials.
    pub fn weight(&self) -> i32 {
        self.0
            .iter()
            .map(|i| match i {
                1..=3 => 1,
                6 | 8 | 9 => -1,
                _ => 0,
            })
            .sum()
    }

    /// The word with its outermost operator removed.
    fn tail(&self) -> OperatorWord {
        OperatorWord(self.0[1..].to_vec())
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("I");
        }
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "R{i}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordMode {
    /// Sorted index sequences only (`i_1 ≤ i_2 ≤ ...`).
    Nondecreasing,
    All,
}

/// Every word of length `0..=n`, shortest first, lexicographic within a length.
pub fn enumerate_words(n: usize, mode: WordMode) -> Vec<OperatorWord> {
    let mut out = vec![OperatorWord::identity()];
    let mut layer = vec![Vec::<u8>::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &layer {
            let lo = match mode {
                WordMode::Nondecreasing => w.last().copied().unwrap_or(1),
                WordMode::All => 1,
            };
            for i in lo..=9 {
                let mut v = w.clone();
                v.push(i);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned().map(OperatorWord));
        layer = next;
    }
    out
}

/// `R_{i_1}(...(R_{i_k}(seed)))`.
pub fn apply_word<C: Scalar>(w: &OperatorWord, seed: &DiffFn<C>) -> DiffFn<C> {
    let ops = builtins::<C>();
    w.0.iter()
        .rev()
        .fold(seed.clone(), |q, &i| ops[usize::from(i) - 1].apply(&q))
}

/// Characteristics `apply_word(w, U)` for a batch of words, sharing work
/// between words with a common suffix. Each length layer is computed in
/// parallel from the previous one.
pub fn characteristics<C: Scalar>(words: &[OperatorWord]) -> Vec<DiffFn<C>> {
    let ops = builtins::<C>();
    let mut memo: HashMap<OperatorWord, DiffFn<C>> = HashMap::new();
    memo.insert(OperatorWord::identity(), DiffFn::u());

    // Close the request under taking tails, then fill shortest first.
    let mut needed: Vec<Vec<OperatorWord>> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut stack: Vec<OperatorWord> = words.to_vec();
    while let Some(w) = stack.pop() {
        if w.is_empty() || !seen.insert(w.clone()) {
            continue;
        }
        if needed.len() < w.len() {
            needed.resize(w.len(), Vec::new());
        }
        stack.push(w.tail());
        needed[w.len() - 1].push(w);
    }
    for layer in needed {
        let done: Vec<(OperatorWord, DiffFn<C>)> = layer
            .into_par_iter()
            .map(|w| {
                let inner = &memo[&w.tail()];
                let q = ops[usize::from(w.0[0]) - 1].apply(inner);
                (w, q)
            })
            .collect();
        memo.extend(done);
    }
    words.iter().map(|w| memo[w].clone()).collect()
}
