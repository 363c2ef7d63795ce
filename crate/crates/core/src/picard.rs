//! The Picard lattice `Z h ⊕ Z e_1 ⊕ … ⊕ Z e_r` of a del Pezzo surface, with
//! its intersection pairing of signature `(1, -r)` and canonical class
//! `K = -3h + e_1 + … + e_r`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};

/// Smallest supported number of blown-up points.
pub const MIN_RANK: u8 = 3;
/// Largest supported number of blown-up points.
pub const MAX_RANK: u8 = 8;
const MAX_COORDS: usize = MAX_RANK as usize + 1;

/// Exact rational values in `Pic ⊗ Q`.
pub type Rational = Ratio<i64>;

/// A divisor class in the basis `(h, e_1, …, e_r)`.
///
/// The class remembers its rank `r`; arithmetic between classes of different
/// rank panics, and [`intersect`] reports it as an error. Ordering is by rank,
/// then lexicographic on the coordinates, which is the canonical order used
/// for every enumerated set.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorClass {
    rank: u8,
    coords: [i64; MAX_COORDS],
}

impl DivisorClass {
    /// Builds a class from its `r + 1` coordinates `d_0, c_1, …, c_r`.
    pub fn new(rank: u8, coords: &[i64]) -> Result<Self> {
        check_rank(i64::from(rank))?;
        if coords.len() != rank as usize + 1 {
            return Err(Error::CoordinateCount {
                rank,
                got: coords.len(),
            });
        }
        let mut c = [0; MAX_COORDS];
        c[..coords.len()].copy_from_slice(coords);
        Ok(DivisorClass { rank, coords: c })
    }

    pub(crate) fn zero(rank: u8) -> Self {
        DivisorClass {
            rank,
            coords: [0; MAX_COORDS],
        }
    }

    /// Parses the literal syntax `"d0,c1,…,cr"`; the rank is the number of
    /// entries minus one.
    pub fn parse(literal: &str) -> Result<Self> {
        let coords = literal
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(literal.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        if coords.len() < 2 {
            return Err(Error::Parse(literal.to_string()));
        }
        let rank = u8::try_from(coords.len() - 1).map_err(|_| Error::Parse(literal.to_string()))?;
        Self::new(rank, &coords)
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    /// The coordinates `d_0, c_1, …, c_r`.
    pub fn coords(&self) -> &[i64] {
        &self.coords[..=self.rank as usize]
    }

    /// Coefficient of `h`.
    pub fn degree(&self) -> i64 {
        self.coords[0]
    }

    /// Coefficient of `e_i`, `1 ≤ i ≤ r`.
    pub fn coefficient(&self, i: usize) -> i64 {
        assert!((1..=self.rank as usize).contains(&i), "e_{i} out of range");
        self.coords[i]
    }

    /// The intersection product. Panics on rank mismatch; see [`intersect`]
    /// for the checked form.
    pub fn dot(&self, other: &DivisorClass) -> i64 {
        assert_eq!(self.rank, other.rank, "intersection across ranks");
        let n = self.rank as usize + 1;
        let mut acc = self.coords[0] * other.coords[0];
        for i in 1..n {
            acc -= self.coords[i] * other.coords[i];
        }
        acc
    }

    /// Self-intersection `D²`.
    pub fn square(&self) -> i64 {
        self.dot(self)
    }

    /// Largest absolute coordinate.
    pub fn max_abs(&self) -> i64 {
        self.coords().iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    /// Drops the last coordinate, giving a class of rank `r - 1`.
    pub(crate) fn truncate(&self) -> DivisorClass {
        let mut out = *self;
        out.coords[self.rank as usize] = 0;
        out.rank -= 1;
        out
    }

    /// Divides every coordinate by `n`, if all are divisible.
    pub fn checked_div(&self, n: i64) -> Option<DivisorClass> {
        if self.coords().iter().all(|c| c % n == 0) {
            let mut out = *self;
            for c in out.coords.iter_mut() {
                *c /= n;
            }
            Some(out)
        } else {
            None
        }
    }
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for DivisorClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;

    fn add(mut self, rhs: DivisorClass) -> DivisorClass {
        assert_eq!(self.rank, rhs.rank, "addition across ranks");
        for (a, b) in self.coords.iter_mut().zip(rhs.coords) {
            *a += b;
        }
        self
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;

    fn sub(self, rhs: DivisorClass) -> DivisorClass {
        self + (-rhs)
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;

    fn neg(mut self) -> DivisorClass {
        for c in self.coords.iter_mut() {
            *c = -*c;
        }
        self
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;

    fn mul(self, mut rhs: DivisorClass) -> DivisorClass {
        for c in rhs.coords.iter_mut() {
            *c *= self;
        }
        rhs
    }
}

impl std::iter::Sum for DivisorClass {
    /// Panics on an empty iterator, which has no rank.
    fn sum<I: Iterator<Item = DivisorClass>>(mut iter: I) -> DivisorClass {
        let first = iter.next().expect("sum of an empty set of classes");
        iter.fold(first, |acc, d| acc + d)
    }
}

fn check_rank(r: i64) -> Result<u8> {
    if (i64::from(MIN_RANK)..=i64::from(MAX_RANK)).contains(&r) {
        Ok(r as u8)
    } else {
        Err(Error::RankOutOfRange(r))
    }
}

/// Checked intersection product `d_0 d_0' - Σ c_i c_i'`.
pub fn intersect(a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
    if a.rank != b.rank {
        return Err(Error::RankMismatch {
            left: a.rank,
            right: b.rank,
        });
    }
    Ok(a.dot(b))
}

/// The del Pezzo surface `S_r`: the plane blown up at `r` general points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Surface {
    r: u8,
}

impl Surface {
    pub fn new(r: i64) -> Result<Self> {
        Ok(Surface { r: check_rank(r)? })
    }

    pub fn rank(&self) -> u8 {
        self.r
    }

    /// `K² = 9 - r`.
    pub fn degree(&self) -> i64 {
        9 - i64::from(self.r)
    }

    /// The canonical class `-3h + Σ e_i`.
    pub fn canonical(&self) -> DivisorClass {
        let mut k = DivisorClass::zero(self.r);
        k.coords[0] = -3;
        for c in &mut k.coords[1..=self.r as usize] {
            *c = 1;
        }
        k
    }

    pub fn h(&self) -> DivisorClass {
        let mut d = DivisorClass::zero(self.r);
        d.coords[0] = 1;
        d
    }

    /// The exceptional class `e_i`, `1 ≤ i ≤ r`.
    pub fn e(&self, i: usize) -> DivisorClass {
        assert!((1..=self.r as usize).contains(&i), "e_{i} out of range");
        let mut d = DivisorClass::zero(self.r);
        d.coords[i] = 1;
        d
    }

    /// Builds a class of this surface's rank.
    pub fn class(&self, coords: &[i64]) -> Result<DivisorClass> {
        DivisorClass::new(self.r, coords)
    }

    fn check(&self, d: &DivisorClass) -> Result<()> {
        if d.rank != self.r {
            Err(Error::RankMismatch {
                left: self.r,
                right: d.rank,
            })
        } else {
            Ok(())
        }
    }

    /// `D·K = -3 d_0 - Σ c_i`.
    pub fn k_degree(&self, d: &DivisorClass) -> Result<i64> {
        self.check(d)?;
        Ok(self.k_degree_unchecked(d))
    }

    pub(crate) fn k_degree_unchecked(&self, d: &DivisorClass) -> i64 {
        -3 * d.coords[0] - d.coords[1..=self.r as usize].iter().sum::<i64>()
    }

    /// True when `d` has rank `r`, `D² = self_int` and `D·K = k_deg`.
    pub fn has_invariants(&self, d: &DivisorClass, self_int: i64, k_deg: i64) -> bool {
        d.rank == self.r && d.square() == self_int && self.k_degree_unchecked(d) == k_deg
    }

    /// `l² = l·K = -1`.
    pub fn is_line(&self, d: &DivisorClass) -> bool {
        self.has_invariants(d, -1, -1)
    }

    /// `d² = -2`, `d·K = 0`.
    pub fn is_root(&self, d: &DivisorClass) -> bool {
        self.has_invariants(d, -2, 0)
    }

    /// `f² = 0`, `f·K = -2`.
    pub fn is_ruling(&self, d: &DivisorClass) -> bool {
        self.has_invariants(d, 0, -2)
    }

    /// `D² = 1`, `D·K = -3`.
    pub fn is_exceptional_system(&self, d: &DivisorClass) -> bool {
        self.has_invariants(d, 1, -3)
    }

    /// `D² - b²/(9-r)`: the squared distance from `D` to the centre
    /// `(b/(9-r)) K` of the affine hyperplane `{D·K = -b}`, provided `D`
    /// lies on it.
    pub fn affine_norm(&self, d: &DivisorClass, b: i64) -> Result<Rational> {
        self.check(d)?;
        Ok(Rational::from_integer(d.square()) - Rational::new(b * b, self.degree()))
    }
}
