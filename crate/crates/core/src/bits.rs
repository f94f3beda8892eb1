//! Truth tables of Boolean functions on `[m]`, stored as packed bit-vectors.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A truth table `x ∈ {0,1}^m`; bit `i` is `f(i)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FunctionInstance {
    m: usize,
    words: Vec<u64>,
}

impl FunctionInstance {
    pub fn zeros(m: usize) -> Self {
        FunctionInstance {
            m,
            words: vec![0; m.div_ceil(64)],
        }
    }

    pub fn ones(m: usize) -> Self {
        let mut x = Self::zeros(m);
        for i in 0..m {
            x.set(i, true);
        }
        x
    }

    /// Builds an instance with exactly the given indices marked.
    pub fn from_marked(m: usize, marked: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut x = Self::zeros(m);
        for i in marked {
            if i >= m {
                return Err(Error::InvalidInput(format!(
                    "marked index {i} outside domain of size {m}"
                )));
            }
            x.set(i, true);
        }
        Ok(x)
    }

    /// Builds an instance from the low `m` bits of `mask` (bit `i` is `x_i`).
    pub fn from_mask(m: usize, mask: u64) -> Self {
        assert!(m <= 64, "from_mask needs m <= 64");
        let mut x = Self::zeros(m);
        if m > 0 {
            x.words[0] = if m == 64 {
                mask
            } else {
                mask & ((1u64 << m) - 1)
            };
        }
        x
    }

    /// Low-word mask, valid when `m <= 64`.
    pub fn mask(&self) -> u64 {
        debug_assert!(self.m <= 64);
        self.words.first().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.m);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.m);
        let bit = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= bit;
        } else {
            self.words[i / 64] &= !bit;
        }
    }

    pub fn marked_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices `i` with `x_i = 1`, ascending.
    pub fn marked(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let tz = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(wi * 64 + tz)
                }
            })
        })
    }

    /// True iff `x_i = 0` for every `i` in `set`.
    pub fn is_zero_on(&self, set: &[usize]) -> bool {
        set.iter().all(|&i| !self.get(i))
    }

    /// The substring `x_keep`, in the order given by `keep`.
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let mut out = Self::zeros(keep.len());
        for (j, &i) in keep.iter().enumerate() {
            if self.get(i) {
                out.set(j, true);
            }
        }
        out
    }
}

impl fmt::Display for FunctionInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.m {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for FunctionInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FunctionInstance({self})")
    }
}

/// Parses a bit-string written index 0 first, e.g. `"0101"`.
impl FromStr for FunctionInstance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut x = Self::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => x.set(i, true),
                other => {
                    return Err(Error::InvalidInput(format!(
                        "bit-string contains '{other}' at position {i}"
                    )))
                }
            }
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_index_zero_first() {
        let x: FunctionInstance = "0101".parse().unwrap();
        assert!(!x.get(0));
        assert!(x.get(1));
        assert!(x.get(3));
        assert_eq!(x.marked_count(), 2);
        assert_eq!(x.to_string(), "0101");
        assert_eq!(x.marked().collect::<Vec<_>>(), vec![1, 3]);
    }

    #[test]
    fn rejects_non_binary() {
        assert!("01a".parse::<FunctionInstance>().is_err());
    }

    #[test]
    fn marked_iterates_across_words() {
        let x = FunctionInstance::from_marked(200, [0, 63, 64, 130, 199]).unwrap();
        assert_eq!(x.marked().collect::<Vec<_>>(), vec![0, 63, 64, 130, 199]);
        assert_eq!(x.marked_count(), 5);
    }

    #[test]
    fn restrict_follows_keep_order() {
        let x: FunctionInstance = "10110".parse().unwrap();
        assert_eq!(x.restrict(&[1, 2, 4]).to_string(), "010");
        assert!(x.is_zero_on(&[1, 4]));
        assert!(!x.is_zero_on(&[0]));
    }

    #[test]
    fn mask_round_trip() {
        let x = FunctionInstance::from_mask(5, 0b10110);
        assert_eq!(x.to_string(), "01101");
        assert_eq!(x.mask(), 0b10110);
    }
}
