//! Complete enumeration of the classes `D` with prescribed `D²` and `D·K`.
//!
//! Writing `b = -D·K`, the coordinates satisfy `Σ c_i = b - 3 d_0` and
//! `Σ c_i² = d_0² - D²`. Cauchy–Schwarz on the `c_i` bounds `d_0` to the
//! integer solutions of `(9-r) d_0² - 6b d_0 + (b² + r D²) ≤ 0`, and the same
//! inequality on each suffix prunes the depth-first search over `c_1 … c_r`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::picard::{DivisorClass, Surface};

/// Which equations the members of a [`ClassSet`] satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassKind {
    Lines,
    Roots,
    Rulings,
    ExceptionalSystems,
    Generic { self_int: i64, k_deg: i64 },
}

impl ClassKind {
    pub fn from_invariants(self_int: i64, k_deg: i64) -> Self {
        match (self_int, k_deg) {
            (-1, -1) => ClassKind::Lines,
            (-2, 0) => ClassKind::Roots,
            (0, -2) => ClassKind::Rulings,
            (1, -3) => ClassKind::ExceptionalSystems,
            (self_int, k_deg) => ClassKind::Generic { self_int, k_deg },
        }
    }

    /// `(D², D·K)` for members of this kind.
    pub fn invariants(&self) -> (i64, i64) {
        match *self {
            ClassKind::Lines => (-1, -1),
            ClassKind::Roots => (-2, 0),
            ClassKind::Rulings => (0, -2),
            ClassKind::ExceptionalSystems => (1, -3),
            ClassKind::Generic { self_int, k_deg } => (self_int, k_deg),
        }
    }
}

/// A duplicate-free set of classes of one rank, kept in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSet {
    rank: u8,
    kind: ClassKind,
    items: Vec<DivisorClass>,
}

impl ClassSet {
    /// Sorts and deduplicates `items`.
    pub fn from_classes(rank: u8, kind: ClassKind, mut items: Vec<DivisorClass>) -> Self {
        debug_assert!(items.iter().all(|d| d.rank() == rank));
        items.sort_unstable();
        items.dedup();
        ClassSet { rank, kind, items }
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn kind(&self) -> ClassKind {
        self.kind
    }

    pub fn items(&self) -> &[DivisorClass] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, DivisorClass> {
        self.items.iter()
    }

    /// Position of `d` in canonical order.
    pub fn index_of(&self, d: &DivisorClass) -> Option<usize> {
        self.items.binary_search(d).ok()
    }

    pub fn contains(&self, d: &DivisorClass) -> bool {
        self.index_of(d).is_some()
    }
}

impl<'a> IntoIterator for &'a ClassSet {
    type Item = &'a DivisorClass;
    type IntoIter = std::slice::Iter<'a, DivisorClass>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

fn isqrt(n: i64) -> i64 {
    debug_assert!(n >= 0);
    let mut x = (n as f64).sqrt() as i64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Every class with `D² = self_int` and `D·K = k_deg`, in canonical order.
/// Parameter pairs violating `(D·K)² ≥ D² (9-r)` give the empty set.
pub fn solve_classes(s: &Surface, self_int: i64, k_deg: i64) -> ClassSet {
    let kind = ClassKind::from_invariants(self_int, k_deg);
    let rank = s.rank();
    let r = i64::from(rank);
    let n = s.degree();
    let b = -k_deg;
    if b * b < self_int * n {
        return ClassSet::from_classes(rank, kind, Vec::new());
    }

    // n x² - 6b x + (b² + r·self_int) ≤ 0
    let qa = n;
    let qb = -6 * b;
    let qc = b * b + r * self_int;
    let disc = qb * qb - 4 * qa * qc;
    if disc < 0 {
        return ClassSet::from_classes(rank, kind, Vec::new());
    }
    let root = isqrt(disc) + 1;
    let lo = (-qb - root).div_euclid(2 * qa) - 1;
    let hi = (-qb + root).div_euclid(2 * qa) + 1;

    let items: Vec<DivisorClass> = (lo..=hi)
        .into_par_iter()
        .filter(|&d0| qa * d0 * d0 + qb * d0 + qc <= 0)
        .flat_map_iter(|d0| {
            let mut out = Vec::new();
            let sum = b - 3 * d0;
            let sum_sq = d0 * d0 - self_int;
            let mut coords = vec![0i64; rank as usize + 1];
            coords[0] = d0;
            fill(&mut coords, 1, sum, sum_sq, &mut |c| {
                out.push(DivisorClass::new(rank, c).expect("rank already checked"));
            });
            out
        })
        .collect();
    ClassSet::from_classes(rank, kind, items)
}

/// Fills `coords[pos..]` with every integer vector of the given sum and
/// sum of squares.
fn fill(coords: &mut [i64], pos: usize, sum: i64, sum_sq: i64, emit: &mut impl FnMut(&[i64])) {
    let m = (coords.len() - pos) as i64;
    if sum_sq < 0 || sum * sum > m * sum_sq || (sum - sum_sq).rem_euclid(2) != 0 {
        return;
    }
    if m == 1 {
        if sum * sum != sum_sq {
            return;
        }
        coords[pos] = sum;
        emit(coords);
        return;
    }
    let bound = isqrt(sum_sq);
    for c in -bound..=bound {
        let rest_sum = sum - c;
        let rest_sq = sum_sq - c * c;
        if rest_sum * rest_sum > (m - 1) * rest_sq {
            continue;
        }
        coords[pos] = c;
        fill(coords, pos + 1, rest_sum, rest_sq, emit);
    }
}

/// The line set `L_r`: `l² = l·K = -1`.
pub fn lines(s: &Surface) -> ClassSet {
    solve_classes(s, -1, -1)
}

/// The root system `R_r`: `d² = -2`, `d·K = 0`.
pub fn roots(s: &Surface) -> ClassSet {
    solve_classes(s, -2, 0)
}

/// The rulings `F_r`: `f² = 0`, `f·K = -2`.
pub fn rulings(s: &Surface) -> ClassSet {
    solve_classes(s, 0, -2)
}

/// The exceptional systems: `D² = 1`, `D·K = -3`.
pub fn exceptional_systems(s: &Surface) -> ClassSet {
    solve_classes(s, 1, -3)
}

/// Classes with `D² = D·K = -a`: the candidates for a sum of `a` skew lines.
pub fn a_divisors(s: &Surface, a: i64) -> Result<ClassSet> {
    if !(1..=i64::from(s.rank())).contains(&a) {
        return Err(Error::OutOfRange(format!("a = {a} for r = {}", s.rank())));
    }
    Ok(solve_classes(s, -a, -a))
}

/// Splits `d` into pairwise-skew lines, if it is such a sum.
///
/// The candidate set is `{l : d·l = -1}`; when `d` is a sum of skew lines
/// those are exactly its summands, so the decomposition is unique.
pub fn skew_decompose(s: &Surface, d: &DivisorClass) -> Option<Vec<DivisorClass>> {
    if d.rank() != s.rank() {
        return None;
    }
    skew_decompose_in(&lines(s), d)
}

/// [`skew_decompose`] against a precomputed line set.
pub fn skew_decompose_in(lines: &ClassSet, d: &DivisorClass) -> Option<Vec<DivisorClass>> {
    if d.rank() != lines.rank() {
        return None;
    }
    let parts: Vec<DivisorClass> = lines.iter().filter(|l| d.dot(l) == -1).copied().collect();
    for (i, a) in parts.iter().enumerate() {
        if parts[i + 1..].iter().any(|b| a.dot(b) != 0) {
            return None;
        }
    }
    let total = parts
        .iter()
        .fold(DivisorClass::zero(lines.rank()), |acc, l| acc + *l);
    (total == *d).then_some(parts)
}

/// `Σ_{d | n} d³` by trial division.
pub fn sigma3(n: u64) -> u64 {
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| d * d * d)
        .sum()
}

/// Number of vectors of norm `m` in the E8 lattice: the `q^m` coefficient of
/// its theta series, `240 σ₃(m/2)` for even `m > 0`.
pub fn e8_theta_coefficient(m: i64) -> Result<u64> {
    match m {
        m if m < 0 => Err(Error::OutOfRange(format!("theta coefficient index {m}"))),
        0 => Ok(1),
        m if m % 2 == 1 => Ok(0),
        m => Ok(240 * sigma3((m / 2) as u64)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(r: i64) -> Surface {
        Surface::new(r).unwrap()
    }

    fn lit(r: u8, c: &[i64]) -> DivisorClass {
        DivisorClass::new(r, c).unwrap()
    }

    #[test]
    fn lines_of_s3() {
        let got = lines(&s(3));
        let mut want = [
            lit(3, &[0, 1, 0, 0]),
            lit(3, &[0, 0, 1, 0]),
            lit(3, &[0, 0, 0, 1]),
            lit(3, &[1, -1, -1, 0]),
            lit(3, &[1, -1, 0, -1]),
            lit(3, &[1, 0, -1, -1]),
        ];
        want.sort();
        assert_eq!(got.items(), &want[..]);
        assert_eq!(got.kind(), ClassKind::Lines);
    }

    #[test]
    fn headline_counts() {
        assert_eq!(lines(&s(6)).len(), 27);
        assert_eq!(lines(&s(8)).len(), 240);
        assert_eq!(rulings(&s(8)).len(), 2160);
        assert_eq!(roots(&s(6)).len(), 72);
        assert_eq!(exceptional_systems(&s(8)).len(), 17520);
    }

    #[test]
    fn a_divisor_counts() {
        assert_eq!(a_divisors(&s(4), 2).unwrap().len(), 30);
        assert_eq!(a_divisors(&s(3), 3).unwrap().len(), 2);
        assert_eq!(a_divisors(&s(3), 2).unwrap().len(), 9);
        assert!(a_divisors(&s(3), 4).is_err());
        assert!(a_divisors(&s(3), 0).is_err());
    }

    #[test]
    fn infeasible_is_empty() {
        // b² < D²(9-r)
        assert!(solve_classes(&s(6), 5, -1).is_empty());
        assert!(solve_classes(&s(8), 2, 0).is_empty());
    }

    #[test]
    fn output_is_sorted_and_satisfies_equations() {
        let sr = s(7);
        let set = solve_classes(&sr, -3, -1);
        assert!(set.items().windows(2).all(|w| w[0] < w[1]));
        assert!(set.iter().all(|d| sr.has_invariants(d, -3, -1)));
    }

    #[test]
    fn skew_decompose_examples() {
        let s5 = s(5);
        assert_eq!(
            skew_decompose(&s5, &(s5.e(1) + s5.e(2))),
            Some(vec![s5.e(2), s5.e(1)])
        );
        let s3 = s(3);
        let d = s3.h() + s3.e(1) - s3.e(2) - s3.e(3);
        let mut parts = skew_decompose(&s3, &d).unwrap();
        parts.sort();
        let mut want = vec![s3.e(1), s3.h() - s3.e(2) - s3.e(3)];
        want.sort();
        assert_eq!(parts, want);
        // Two meeting lines do not decompose.
        let l = s3.h() - s3.e(1) - s3.e(2);
        assert_eq!(skew_decompose(&s3, &(s3.e(1) + l)), None);
    }

    #[test]
    fn skew_decompose_rejects_phi_of_root_systems() {
        let s8 = s(8);
        let k = s8.canonical();
        for d in roots(&s8).iter() {
            assert_eq!(skew_decompose(&s8, &(-8 * k + 6 * *d)), None);
        }
    }

    #[test]
    fn theta_coefficients() {
        assert_eq!(e8_theta_coefficient(0), Ok(1));
        assert_eq!(e8_theta_coefficient(2), Ok(240));
        assert_eq!(e8_theta_coefficient(3), Ok(0));
        assert_eq!(e8_theta_coefficient(4), Ok(2160));
        assert_eq!(e8_theta_coefficient(8), Ok(17520));
        assert!(e8_theta_coefficient(-2).is_err());
        assert_eq!(sigma3(4), 73);
    }
}
