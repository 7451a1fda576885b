//! Permutations of `{1, 2, 3, ...}` fixing all but finitely many points,
//! stored in one-line notation with trailing fixed points trimmed.
//!
//! Trimming realizes the identification of `S_n` with the subgroup of
//! `S_{n+1}` fixing `n+1`: two words describe the same permutation exactly
//! when their trimmed forms are equal, so equality and hashing need no
//! further bookkeeping.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("entry {entry} out of range 1..={max}")]
    EntryOutOfRange { entry: u32, max: usize },
    #[error("duplicate entry {entry}")]
    DuplicateEntry { entry: u32 },
    #[error("infeasible Lehmer code: entry {entry} at position {position} exceeds {max}")]
    InfeasibleCode {
        entry: u32,
        position: usize,
        max: u32,
    },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParsePermError {
    #[error("empty permutation text")]
    Empty,
    #[error("bad token {token:?} in permutation text")]
    BadToken { token: String },
    #[error("not a permutation: {0}")]
    Invalid(#[from] PermError),
}

/// A permutation in canonical trimmed one-line notation.
///
/// Invariants: `word` is a bijection of `{1..m}` onto itself and either
/// `m = 0` or `word[m-1] != m`. The identity is the empty word.
///
/// The derived `Ord` (lexicographic on the trimmed word) is the canonical
/// ordering used everywhere deterministic output is required.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<u32>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

fn trim(mut word: Vec<u32>) -> Vec<u32> {
    while let Some(&last) = word.last() {
        if last as usize == word.len() {
            word.pop();
        } else {
            break;
        }
    }
    word
}

impl Permutation {
    pub fn identity() -> Self {
        Permutation { word: Vec::new() }
    }

    /// Builds a permutation from one-line notation, validating that the
    /// entries are a bijection of `{1..m}` and trimming trailing fixed points.
    pub fn from_one_line(entries: &[u32]) -> Result<Self, PermError> {
        let m = entries.len();
        let mut seen = vec![false; m];
        for &e in entries {
            if e == 0 || e as usize > m {
                return Err(PermError::EntryOutOfRange { entry: e, max: m });
            }
            if seen[e as usize - 1] {
                return Err(PermError::DuplicateEntry { entry: e });
            }
            seen[e as usize - 1] = true;
        }
        Ok(Permutation {
            word: trim(entries.to_vec()),
        })
    }

    /// The simple transposition `s_i` swapping the letters `i` and `i+1`.
    pub fn simple(i: u32) -> Self {
        assert!(i >= 1, "simple transposition index must be positive");
        let mut word: Vec<u32> = (1..=i + 1).collect();
        word.swap(i as usize - 1, i as usize);
        Permutation { word }
    }

    /// The long element `n (n-1) ... 1` of `S_n`.
    pub fn long_element(n: usize) -> Self {
        Permutation {
            word: trim((1..=n as u32).rev().collect()),
        }
    }

    /// Size of the stored word; the permutation lives in `S_m` minimally.
    pub fn size(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    /// The image `w(i)`; points beyond the stored word are fixed.
    pub fn apply(&self, i: u32) -> u32 {
        assert!(i >= 1);
        self.word.get(i as usize - 1).copied().unwrap_or(i)
    }

    /// Coxeter length, computed as the inversion count
    /// `#{(i,j) : i < j, w(i) > w(j)}`.
    pub fn length(&self) -> u64 {
        let mut inv = 0u64;
        for i in 0..self.word.len() {
            for j in i + 1..self.word.len() {
                if self.word[i] > self.word[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// Right descents `{i : w(i) > w(i+1)}`, ascending.
    pub fn descents(&self) -> Vec<u32> {
        (1..self.word.len())
            .filter(|&i| self.word[i - 1] > self.word[i])
            .map(|i| i as u32)
            .collect()
    }

    /// Left descents `{i : w^{-1}(i) > w^{-1}(i+1)}`, ascending.
    pub fn left_descents(&self) -> Vec<u32> {
        self.inverse().descents()
    }

    pub fn has_descent(&self, i: u32) -> bool {
        let i = i as usize;
        i >= 1 && i < self.word.len() && self.word[i - 1] > self.word[i]
    }

    pub fn has_left_descent(&self, i: u32) -> bool {
        self.position(i) > self.position(i + 1)
    }

    /// Position of the letter `v`, i.e. `w^{-1}(v)`.
    fn position(&self, v: u32) -> u32 {
        match self.word.iter().position(|&e| e == v) {
            Some(idx) => idx as u32 + 1,
            None => v,
        }
    }

    pub fn inverse(&self) -> Self {
        let mut word = vec![0u32; self.word.len()];
        for (i, &e) in self.word.iter().enumerate() {
            word[e as usize - 1] = i as u32 + 1;
        }
        Permutation { word }
    }

    /// Group composition with the convention `(uv)(k) = u(v(k))`.
    pub fn mul(&self, other: &Permutation) -> Self {
        let m = self.size().max(other.size());
        let word = (1..=m as u32).map(|k| self.apply(other.apply(k))).collect();
        Permutation { word: trim(word) }
    }

    /// Left multiplication `s_i * w`: swaps the letters `i` and `i+1`.
    pub fn left_s(&self, i: u32) -> Self {
        assert!(i >= 1);
        let m = self.size().max(i as usize + 1);
        let word = (1..=m as u32)
            .map(|k| {
                let v = self.apply(k);
                if v == i {
                    i + 1
                } else if v == i + 1 {
                    i
                } else {
                    v
                }
            })
            .collect();
        Permutation { word: trim(word) }
    }

    /// Right multiplication `w * s_i`: swaps the entries in positions `i`, `i+1`.
    pub fn right_s(&self, i: u32) -> Self {
        assert!(i >= 1);
        let m = self.size().max(i as usize + 1);
        let mut word: Vec<u32> = (1..=m as u32).map(|k| self.apply(k)).collect();
        word.swap(i as usize - 1, i as usize);
        Permutation { word: trim(word) }
    }

    /// Major index: the sum of the (right) descent positions.
    pub fn major_index(&self) -> u64 {
        self.descents().iter().map(|&d| d as u64).sum()
    }

    /// Lehmer code `c_i = #{j > i : w(j) < w(i)}` at the stored length.
    pub fn lehmer_code(&self) -> Vec<u32> {
        let n = self.word.len();
        let mut code = vec![0u32; n];
        for i in 0..n {
            for j in i + 1..n {
                if self.word[j] < self.word[i] {
                    code[i] += 1;
                }
            }
        }
        code
    }

    /// Inverse of [`lehmer_code`](Self::lehmer_code). The ambient rank is the
    /// code length; entries must satisfy `code[i] <= m - i` (1-based), else
    /// the code is infeasible.
    pub fn from_lehmer_code(code: &[u32]) -> Result<Self, PermError> {
        let m = code.len();
        let mut remaining: Vec<u32> = (1..=m as u32).collect();
        let mut word = Vec::with_capacity(m);
        for (idx, &c) in code.iter().enumerate() {
            if c as usize >= remaining.len() {
                return Err(PermError::InfeasibleCode {
                    entry: c,
                    position: idx + 1,
                    max: (remaining.len() - 1) as u32,
                });
            }
            word.push(remaining.remove(c as usize));
        }
        Ok(Permutation { word: trim(word) })
    }

    /// All reduced words of `w`, in lexicographic order.
    ///
    /// `|R(w)|` grows exponentially with the rank; this is only meant for
    /// small permutations.
    pub fn reduced_words(&self) -> Vec<Vec<u32>> {
        if self.is_identity() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        // First letters are left descents, taken ascending, so the overall
        // enumeration comes out lexicographically sorted.
        for d in self.left_descents() {
            let rest = self.left_s(d);
            for mut tail in rest.reduced_words() {
                tail.insert(0, d);
                out.push(tail);
            }
        }
        out
    }

    /// Left weak order: `self <=_L w` iff `w = v * self` with lengths adding.
    pub fn left_weak_leq(&self, w: &Permutation) -> bool {
        let v = w.mul(&self.inverse());
        v.length() + self.length() == w.length()
    }

    /// Everything `<=_L self`, found by walking down through left descents.
    pub fn left_weak_lower_set(&self) -> Vec<Permutation> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(self.clone());
        queue.push_back(self.clone());
        while let Some(p) = queue.pop_front() {
            for d in p.left_descents() {
                let q = p.left_s(d);
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// The shift embedding: `(1 x w)(1) = 1` and `(1 x w)(i) = w(i-1) + 1`.
    pub fn one_times(&self) -> Self {
        let mut word = Vec::with_capacity(self.word.len() + 1);
        word.push(1);
        word.extend(self.word.iter().map(|&e| e + 1));
        Permutation { word: trim(word) }
    }

    /// Inverse of [`one_times`](Self::one_times), when the first letter is fixed.
    pub fn shift_down(&self) -> Option<Self> {
        if self.is_identity() {
            return Some(self.clone());
        }
        if self.word[0] != 1 {
            return None;
        }
        Some(Permutation {
            word: trim(self.word[1..].iter().map(|&e| e - 1).collect()),
        })
    }

    /// Exactly one (right) descent. The identity is not Grassmannian.
    pub fn is_grassmannian(&self) -> bool {
        self.descents().len() == 1
    }

    /// Exactly one left descent.
    pub fn is_inverse_grassmannian(&self) -> bool {
        self.left_descents().len() == 1
    }

    /// All permutations of `S_n`, sorted by word.
    pub fn all(n: usize) -> Vec<Permutation> {
        fn rec(prefix: &mut Vec<u32>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
            let n = used.len();
            if prefix.len() == n {
                out.push(Permutation {
                    word: trim(prefix.clone()),
                });
                return;
            }
            for v in 1..=n as u32 {
                if !used[v as usize - 1] {
                    used[v as usize - 1] = true;
                    prefix.push(v);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[v as usize - 1] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; n], &mut out);
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for Permutation {
    /// Compact digit string when every entry is at most 9, comma-separated
    /// otherwise. The identity prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        if self.word.iter().all(|&e| e <= 9) {
            for e in &self.word {
                write!(f, "{e}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.word.iter().map(|e| e.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl FromStr for Permutation {
    type Err = ParsePermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParsePermError::Empty);
        }
        let entries: Vec<u32> = if s.contains(',') {
            s.split(',')
                .map(|tok| {
                    let tok = tok.trim();
                    tok.parse::<u32>().map_err(|_| ParsePermError::BadToken {
                        token: tok.to_string(),
                    })
                })
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| match c.to_digit(10) {
                    Some(d) if d >= 1 => Ok(d),
                    _ => Err(ParsePermError::BadToken {
                        token: c.to_string(),
                    }),
                })
                .collect::<Result<_, _>>()?
        };
        Ok(Permutation::from_one_line(&entries)?)
    }
}
