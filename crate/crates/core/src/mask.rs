//! Fixed-width dense bitsets over element indices.
//!
//! Every group in this crate has at most [`MAX_ORDER`] elements, so a subset
//! of a group always fits in eight machine words. Masks are `Copy`, hash by
//! value and compare word-by-word, which makes deduplication of subgroups a
//! plain `HashSet<Mask>` lookup.

use std::fmt;

use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::MAX_ORDER;

const WORDS: usize = MAX_ORDER / 64;

/// A set of element indices `0..MAX_ORDER`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mask {
    words: [u64; WORDS],
}

impl Mask {
    pub const EMPTY: Mask = Mask { words: [0; WORDS] };

    /// The mask containing only the identity (index 0).
    pub const fn identity() -> Self {
        let mut words = [0; WORDS];
        words[0] = 1;
        Mask { words }
    }

    /// The mask `{0, 1, .., n - 1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ORDER);
        let mut m = Mask::EMPTY;
        for w in 0..WORDS {
            let lo = w * 64;
            if n >= lo + 64 {
                m.words[w] = u64::MAX;
            } else if n > lo {
                m.words[w] = (1u64 << (n - lo)) - 1;
            }
        }
        m
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut m = Mask::EMPTY;
        for i in it {
            m.insert(i);
        }
        m
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    /// Inserts `i`, returning `true` if it was not already present.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let w = &mut self.words[i >> 6];
        let bit = 1u64 << (i & 63);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i >> 6] &= !(1u64 << (i & 63));
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn intersection(&self, other: &Mask) -> Mask {
        let mut m = *self;
        for (a, b) in m.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
        m
    }

    #[inline]
    pub fn union(&self, other: &Mask) -> Mask {
        let mut m = *self;
        for (a, b) in m.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
        m
    }

    #[inline]
    pub fn difference(&self, other: &Mask) -> Mask {
        let mut m = *self;
        for (a, b) in m.words.iter_mut().zip(other.words.iter()) {
            *a &= !b;
        }
        m
    }

    #[inline]
    pub fn is_subset(&self, other: &Mask) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    /// Smallest index in the set.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Largest index in the set.
    pub fn last(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    /// Set indices in increasing order.
    pub fn iter(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            idx: 0,
            cur: self.words[0],
        }
    }
}

pub struct Ones<'a> {
    words: &'a [u64; WORDS],
    idx: usize,
    cur: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let tz = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * 64 + tz);
            }
            self.idx += 1;
            if self.idx >= WORDS {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

impl<'a> IntoIterator for &'a Mask {
    type Item = usize;
    type IntoIter = Ones<'a>;

    fn into_iter(self) -> Ones<'a> {
        self.iter()
    }
}

impl FromIterator<usize> for Mask {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Mask::from_indices(iter)
    }
}

impl fmt::Debug for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

// Serialized as the sorted list of member indices.
impl Serialize for Mask {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.len()))?;
        for i in self.iter() {
            seq.serialize_element(&i)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Mask {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct MaskVisitor;

        impl<'de> Visitor<'de> for MaskVisitor {
            type Value = Mask;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "a list of element indices below {MAX_ORDER}")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Mask, A::Error> {
                let mut m = Mask::EMPTY;
                while let Some(i) = seq.next_element::<usize>()? {
                    if i >= MAX_ORDER {
                        return Err(serde::de::Error::custom(format!(
                            "element index {i} out of range"
                        )));
                    }
                    m.insert(i);
                }
                Ok(m)
            }
        }

        deserializer.deserialize_seq(MaskVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_and_identity() {
        assert_eq!(Mask::full(0), Mask::EMPTY);
        assert_eq!(Mask::full(1), Mask::identity());
        assert_eq!(Mask::full(64).len(), 64);
        assert_eq!(Mask::full(130).len(), 130);
        assert_eq!(Mask::full(512).len(), 512);
        assert_eq!(Mask::full(130).last(), Some(129));
    }

    #[test]
    fn first_last_empty() {
        assert_eq!(Mask::EMPTY.first(), None);
        assert_eq!(Mask::EMPTY.last(), None);
        let m = Mask::from_indices([3, 200, 511]);
        assert_eq!(m.first(), Some(3));
        assert_eq!(m.last(), Some(511));
    }

    proptest! {
        #[test]
        fn iter_matches_indices(mut v in proptest::collection::vec(0usize..512, 0..60)) {
            let m = Mask::from_indices(v.iter().copied());
            v.sort_unstable();
            v.dedup();
            prop_assert_eq!(m.iter().collect::<Vec<_>>(), v.clone());
            prop_assert_eq!(m.len(), v.len());
            let json = serde_json::to_string(&m).unwrap();
            let back: Mask = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(back, m);
        }

        #[test]
        fn set_algebra(a in proptest::collection::vec(0usize..512, 0..40),
                       b in proptest::collection::vec(0usize..512, 0..40)) {
            let ma = Mask::from_indices(a.iter().copied());
            let mb = Mask::from_indices(b.iter().copied());
            let i = ma.intersection(&mb);
            let u = ma.union(&mb);
            prop_assert!(i.is_subset(&ma) && i.is_subset(&mb));
            prop_assert!(ma.is_subset(&u) && mb.is_subset(&u));
            prop_assert_eq!(i.len() + u.len(), ma.len() + mb.len());
            prop_assert_eq!(ma.difference(&mb).intersection(&mb), Mask::EMPTY);
        }
    }
}
