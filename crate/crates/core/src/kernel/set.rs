use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Sub, SubAssign};

/// Subset of a ground set `{0, .., 63}` stored as a bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Set(pub u64);

impl Set {
    pub const EMPTY: Set = Set(0);

    /// `{0, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Set {
        if n >= 64 {
            Set(u64::MAX)
        } else {
            Set((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn single(e: usize) -> Set {
        Set(1u64 << e)
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(self, e: usize) -> bool {
        e < 64 && self.0 >> e & 1 == 1
    }

    #[inline]
    pub fn with(self, e: usize) -> Set {
        Set(self.0 | 1u64 << e)
    }

    #[inline]
    pub fn without(self, e: usize) -> Set {
        Set(self.0 & !(1u64 << e))
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_subset(self, other: Set) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Set) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    #[inline]
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    #[inline]
    pub fn iter(self) -> SetIter {
        SetIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Iterates over every subset of `self`, starting with the empty set.
    pub fn subsets(self) -> Subsets {
        Subsets { mask: self.0, cur: 0, done: false }
    }

    /// Image of `self` under an element map.
    pub fn map(self, f: &[usize]) -> Set {
        self.iter().map(|e| f[e]).collect()
    }
}

impl FromIterator<usize> for Set {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = 0u64;
        for e in iter {
            s |= 1u64 << e;
        }
        Set(s)
    }
}

impl<'a> FromIterator<&'a usize> for Set {
    fn from_iter<I: IntoIterator<Item = &'a usize>>(iter: I) -> Self {
        iter.into_iter().copied().collect()
    }
}

impl IntoIterator for Set {
    type Item = usize;
    type IntoIter = SetIter;
    fn into_iter(self) -> SetIter {
        self.iter()
    }
}

pub struct SetIter(u64);

impl Iterator for SetIter {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for SetIter {}

pub struct Subsets {
    mask: u64,
    cur: u64,
    done: bool,
}

impl Iterator for Subsets {
    type Item = Set;
    fn next(&mut self) -> Option<Set> {
        if self.done {
            return None;
        }
        let out = Set(self.cur);
        self.cur = self.cur.wrapping_sub(self.mask) & self.mask;
        if self.cur == 0 {
            self.done = true;
        }
        Some(out)
    }
}

macro_rules! set_op {
    ($tr:ident, $f:ident, $tra:ident, $fa:ident, $op:tt) => {
        impl $tr for Set {
            type Output = Set;
            #[inline]
            fn $f(self, rhs: Set) -> Set {
                Set(self.0 $op rhs.0)
            }
        }
        impl $tra for Set {
            #[inline]
            fn $fa(&mut self, rhs: Set) {
                self.0 = self.0 $op rhs.0;
            }
        }
    };
}

set_op!(BitOr, bitor, BitOrAssign, bitor_assign, |);
set_op!(BitAnd, bitand, BitAndAssign, bitand_assign, &);

impl Sub for Set {
    type Output = Set;
    #[inline]
    fn sub(self, rhs: Set) -> Set {
        Set(self.0 & !rhs.0)
    }
}

impl SubAssign for Set {
    #[inline]
    fn sub_assign(&mut self, rhs: Set) {
        self.0 &= !rhs.0;
    }
}

impl fmt::Debug for Set {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for Set {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_all() {
        let s: Set = [1, 3, 4].iter().collect();
        let subs: Vec<Set> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert_eq!(subs[0], Set::EMPTY);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(Set::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn basic_ops() {
        let a: Set = [0, 2].iter().collect();
        let b: Set = [2, 5].iter().collect();
        assert_eq!((a | b).to_vec(), vec![0, 2, 5]);
        assert_eq!((a & b).to_vec(), vec![2]);
        assert_eq!((a - b).to_vec(), vec![0]);
        assert_eq!(Set::full(64).len(), 64);
        assert_eq!(format!("{}", a), "{0,2}");
        assert_eq!(b.last(), Some(5));
    }
}
