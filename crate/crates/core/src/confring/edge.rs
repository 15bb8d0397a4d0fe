use std::fmt;

use crate::error::{input, Result};

/// Largest supported number of labelled points.
pub const MAX_POINTS: usize = 64;

/// An edge `{i, j}` stored with `i < j`; both endpoints are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    i: u8,
    j: u8,
}

impl Edge {
    /// Panics unless `1 ≤ i < j ≤ MAX_POINTS`.
    pub fn new(i: usize, j: usize) -> Self {
        assert!(1 <= i && i < j && j <= MAX_POINTS, "invalid edge ({i}, {j})");
        Edge { i: i as u8, j: j as u8 }
    }

    pub fn i(self) -> usize {
        self.i as usize
    }

    pub fn j(self) -> usize {
        self.j as usize
    }

    /// Sort key placing edges by larger endpoint first.
    pub fn key(self) -> (u8, u8) {
        (self.j, self.i)
    }

    pub fn label(self, prefix: &str) -> String {
        if self.j < 10 {
            format!("{prefix}_{}{}", self.i, self.j)
        } else {
            format!("{prefix}_{{{},{}}}", self.i, self.j)
        }
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// Parses `"1,3;2,3"` into the ordered word `[(1,3), (2,3)]`; the empty string is the unit.
pub fn parse_word(s: &str) -> Result<Vec<(usize, usize)>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(';')
        .map(|pair| {
            let (a, b) = pair
                .split_once(',')
                .ok_or_else(|| crate::Error::Input(format!("generator {pair:?} is not of the form i,j")))?;
            let parse =
                |t: &str| t.trim().parse::<usize>().map_err(|_| crate::Error::Input(format!("bad index {t:?}")));
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}

/// A permutation of `{1, …, k}` given by its images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &x in &images {
            if x == 0 || x > k || seen[x - 1] {
                return input(format!("{images:?} is not a permutation of 1..{k}"));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(k: usize) -> Self {
        Permutation((1..=k).collect())
    }

    /// Parses `"2,1,3"`.
    pub fn parse(s: &str) -> Result<Self> {
        let images = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.trim().parse::<usize>().map_err(|_| crate::Error::Input(format!("bad permutation entry {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(images)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "composing permutations of different sizes");
        Permutation(other.0.iter().map(|&x| self.apply(x)).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation(inv)
    }

    /// `+1` for even permutations, `-1` for odd ones.
    pub fn sign(&self) -> i64 {
        let mut inversions = 0;
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if self.0[a] > self.0[b] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// All permutations of `1..=k` in lexicographic order.
    pub fn all(k: usize) -> Vec<Permutation> {
        fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if prefix.len() == used.len() {
                out.push(Permutation(prefix.clone()));
                return;
            }
            for x in 0..used.len() {
                if !used[x] {
                    used[x] = true;
                    prefix.push(x + 1);
                    rec(prefix, used, out);
                    prefix.pop();
                    used[x] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut vec![false; k], &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_parsing() {
        assert_eq!(parse_word("1,3; 2,3").unwrap(), vec![(1, 3), (2, 3)]);
        assert!(parse_word("").unwrap().is_empty());
        assert!(parse_word("1;2").is_err());
    }

    #[test]
    fn permutation_algebra() {
        let s = Permutation::parse("2,3,1").unwrap();
        let t = Permutation::parse("2,1,3").unwrap();
        assert_eq!(s.compose(&t).images(), &[3, 2, 1]);
        assert_eq!(s.compose(&s.inverse()), Permutation::identity(3));
        assert_eq!(s.sign(), 1);
        assert_eq!(t.sign(), -1);
        assert_eq!(Permutation::all(4).len(), 24);
    }
}
