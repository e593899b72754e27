//! Finite multisets over non-negative integer element ids.
//!
//! A multiset is a support set together with a positive multiplicity for
//! each element. Entries are kept sorted by element id, so equality, ordering
//! and hashing are canonical and serialization is deterministic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, BitAnd, BitOr, Sub};

use serde::de::{self, Deserializer, MapAccess, SeqAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

/// A multiset of element ids. Zero multiplicities are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset {
    entries: BTreeMap<usize, u32>,
}

/// How one multiset sits inside another.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Containment {
    NotContained,
    Proper,
    Equal,
}

impl Multiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(elem: usize) -> Self {
        let mut m = Self::new();
        m.insert(elem, 1);
        m
    }

    /// Builds a multiset from `(element, multiplicity)` pairs; repeated
    /// elements accumulate and zero multiplicities are dropped.
    pub fn from_pairs<I: IntoIterator<Item = (usize, u32)>>(pairs: I) -> Self {
        let mut m = Self::new();
        for (e, k) in pairs {
            m.insert(e, k);
        }
        m
    }

    /// Builds a multiset from a dense exponent vector indexed by element id.
    pub fn from_dense(exponents: &[u32]) -> Self {
        Self::from_pairs(exponents.iter().enumerate().map(|(e, &k)| (e, k)))
    }

    /// Dense exponent vector of length `len`. Elements `>= len` are ignored.
    pub fn to_dense(&self, len: usize) -> Vec<u32> {
        let mut v = vec![0; len];
        for (e, k) in self.iter() {
            if e < len {
                v[e] = k;
            }
        }
        v
    }

    pub fn insert(&mut self, elem: usize, k: u32) {
        if k > 0 {
            *self.entries.entry(elem).or_insert(0) += k;
        }
    }

    /// Removes up to `k` copies of `elem`; returns how many were removed.
    pub fn remove(&mut self, elem: usize, k: u32) -> u32 {
        let Some(m) = self.entries.get_mut(&elem) else {
            return 0;
        };
        let taken = k.min(*m);
        *m -= taken;
        if *m == 0 {
            self.entries.remove(&elem);
        }
        taken
    }

    pub fn multiplicity(&self, elem: usize) -> u32 {
        self.entries.get(&elem).copied().unwrap_or(0)
    }

    pub fn contains(&self, elem: usize) -> bool {
        self.entries.contains_key(&elem)
    }

    /// `|M|`: the sum of all multiplicities.
    pub fn size(&self) -> usize {
        self.entries.values().map(|&k| k as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    /// `(element, multiplicity)` pairs in increasing element order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.entries.iter().map(|(&e, &k)| (e, k))
    }

    /// Every element repeated according to its multiplicity.
    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.iter()
            .flat_map(|(e, k)| std::iter::repeat_n(e, k as usize))
    }

    /// Multiplicity-wise maximum.
    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, k) in other.iter() {
            let m = out.entries.entry(e).or_insert(0);
            *m = (*m).max(k);
        }
        out
    }

    /// Multiplicity-wise minimum; elements with minimum zero are absent.
    pub fn intersection(&self, other: &Self) -> Self {
        Self {
            entries: self
                .iter()
                .filter_map(|(e, k)| {
                    let m = k.min(other.multiplicity(e));
                    (m > 0).then_some((e, m))
                })
                .collect(),
        }
    }

    /// Relative complement: multiplicities subtract and saturate at zero.
    pub fn difference(&self, other: &Self) -> Self {
        Self {
            entries: self
                .iter()
                .filter_map(|(e, k)| {
                    let m = k.saturating_sub(other.multiplicity(e));
                    (m > 0).then_some((e, m))
                })
                .collect(),
        }
    }

    /// The sum `M1 ⊔ M2`: multiplicities add.
    pub fn sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, k) in other.iter() {
            out.insert(e, k);
        }
        out
    }

    /// Classifies `self` as a submultiset of `sup`.
    pub fn containment_in(&self, sup: &Self) -> Containment {
        if !self.is_subset(sup) {
            Containment::NotContained
        } else if self == sup {
            Containment::Equal
        } else {
            Containment::Proper
        }
    }

    pub fn is_subset(&self, sup: &Self) -> bool {
        self.iter().all(|(e, k)| k <= sup.multiplicity(e))
    }

    pub fn is_proper_subset(&self, sup: &Self) -> bool {
        self.containment_in(sup) == Containment::Proper
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        other.is_subset(self).then(|| self.difference(other))
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.support().all(|e| !other.contains(e))
    }
}

/// `is_submultiset(sub, sup)` in free-function form.
pub fn is_submultiset(sub: &Multiset, sup: &Multiset) -> Containment {
    sub.containment_in(sup)
}

impl BitOr for &Multiset {
    type Output = Multiset;
    fn bitor(self, rhs: Self) -> Multiset {
        self.union(rhs)
    }
}

impl BitAnd for &Multiset {
    type Output = Multiset;
    fn bitand(self, rhs: Self) -> Multiset {
        self.intersection(rhs)
    }
}

impl Sub for &Multiset {
    type Output = Multiset;
    fn sub(self, rhs: Self) -> Multiset {
        self.difference(rhs)
    }
}

impl Add for &Multiset {
    type Output = Multiset;
    fn add(self, rhs: Self) -> Multiset {
        self.sum(rhs)
    }
}

impl FromIterator<usize> for Multiset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_pairs(iter.into_iter().map(|e| (e, 1)))
    }
}

impl fmt::Debug for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries.iter()).finish()
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for Multiset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.entries.len()))?;
        for (e, k) in self.iter() {
            map.serialize_entry(&e.to_string(), &k)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for Multiset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct MultisetVisitor;

        impl<'de> Visitor<'de> for MultisetVisitor {
            type Value = Multiset;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an object {{\"id\": multiplicity}} or an array of ids")
            }

            fn visit_map<A: MapAccess<'de>>(
                self,
                mut map: A,
            ) -> std::result::Result<Multiset, A::Error> {
                let mut m = Multiset::new();
                while let Some((key, k)) = map.next_entry::<String, u32>()? {
                    let e = key.parse::<usize>().map_err(|_| {
                        de::Error::custom(format!("element id `{key}` is not an integer"))
                    })?;
                    m.insert(e, k);
                }
                Ok(m)
            }

            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Multiset, A::Error> {
                let mut m = Multiset::new();
                while let Some(e) = seq.next_element::<usize>()? {
                    m.insert(e, 1);
                }
                Ok(m)
            }
        }

        deserializer.deserialize_any(MultisetVisitor)
    }
}
