//! Reflections in roots and orbits of the Weyl group `W(S_r)`.

use std::collections::{HashSet, VecDeque};

use crate::enumerate::{self, ClassKind, ClassSet};
use crate::error::{Error, Result};
use crate::picard::{DivisorClass, Surface};

/// The simple roots `d_0 = h - e_1 - e_2 - e_3`, `d_i = e_i - e_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBasis {
    rank: u8,
    roots: Vec<DivisorClass>,
}

impl RootBasis {
    pub fn new(s: &Surface) -> Self {
        let r = s.rank() as usize;
        let mut roots = Vec::with_capacity(r);
        roots.push(s.h() - s.e(1) - s.e(2) - s.e(3));
        roots.extend((1..r).map(|i| s.e(i) - s.e(i + 1)));
        RootBasis {
            rank: s.rank(),
            roots,
        }
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn roots(&self) -> &[DivisorClass] {
        &self.roots
    }

    /// Pairwise intersections of the simple roots.
    pub fn gram(&self) -> Vec<Vec<i64>> {
        self.roots
            .iter()
            .map(|a| self.roots.iter().map(|b| a.dot(b)).collect())
            .collect()
    }
}

fn canonical_of(rank: u8) -> DivisorClass {
    Surface::new(i64::from(rank))
        .expect("class ranks are always in range")
        .canonical()
}

fn check_root(d: &DivisorClass) -> Result<()> {
    let k = canonical_of(d.rank());
    if d.square() == -2 && d.dot(&k) == 0 {
        Ok(())
    } else {
        Err(Error::NotARoot(*d))
    }
}

/// `σ_d(D) = D + (D·d) d`.
pub fn reflect(root: &DivisorClass, d: &DivisorClass) -> Result<DivisorClass> {
    if root.rank() != d.rank() {
        return Err(Error::RankMismatch {
            left: root.rank(),
            right: d.rank(),
        });
    }
    check_root(root)?;
    Ok(reflect_unchecked(root, d))
}

#[inline]
pub(crate) fn reflect_unchecked(root: &DivisorClass, d: &DivisorClass) -> DivisorClass {
    *d + d.dot(root) * *root
}

/// Closure of `{seed}` under the reflections in `generators`, in canonical order.
pub fn orbit(s: &Surface, seed: &DivisorClass, generators: &[DivisorClass]) -> Result<ClassSet> {
    for g in std::iter::once(seed).chain(generators) {
        if g.rank() != s.rank() {
            return Err(Error::RankMismatch {
                left: s.rank(),
                right: g.rank(),
            });
        }
    }
    for g in generators {
        check_root(g)?;
    }
    let mut seen: HashSet<DivisorClass> = HashSet::from([*seed]);
    let mut queue = VecDeque::from([*seed]);
    while let Some(d) = queue.pop_front() {
        for g in generators {
            let image = reflect_unchecked(g, &d);
            if seen.insert(image) {
                queue.push_back(image);
            }
        }
    }
    let kind = ClassKind::from_invariants(seed.square(), s.k_degree_unchecked(seed));
    Ok(ClassSet::from_classes(
        s.rank(),
        kind,
        seen.into_iter().collect(),
    ))
}

/// Orbit of `seed` under the full Weyl group, generated by the simple roots.
pub fn weyl_orbit(s: &Surface, seed: &DivisorClass) -> Result<ClassSet> {
    orbit(s, seed, RootBasis::new(s).roots())
}

/// `|W(S_r)|` by the orbit–stabilizer chain `|W(S_r)| = |L_r| · |W(S_{r-1})|`
/// starting from `|W(S_3)| = |A_1 × A_2| = 12`.
pub fn weyl_order(r: i64) -> Result<u64> {
    let s = Surface::new(r)?;
    if r == 3 {
        return Ok(12);
    }
    Ok(enumerate::lines(&s).len() as u64 * weyl_order(r - 1)?)
}
