//! The Gosset polytope `(r-4)_21` realised on the line set of `S_r`.
//!
//! Vertices are the lines in canonical order, and two vertices span an edge
//! exactly when the lines are skew (`l_i·l_j = 0`). Simplicial faces are the
//! cliques of this skew graph; the crosspolytope facets come from the rulings.

use rayon::prelude::*;

use crate::enumerate::{self, ClassSet};
use crate::error::{Error, Result};
use crate::fixture::Fixture;
use crate::picard::{DivisorClass, Surface};

const WORDS: usize = 4;

/// A subset of at most 256 vertex indices, as packed bits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet([u64; WORDS]);

impl VertexSet {
    pub const CAPACITY: usize = WORDS * 64;

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = VertexSet::default();
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a &= b;
        }
        out
    }

    /// Members strictly greater than `i`.
    pub fn above(&self, i: usize) -> VertexSet {
        let mut out = *self;
        let w = i / 64;
        for word in &mut out.0[..w] {
            *word = 0;
        }
        let bit = i % 64;
        out.0[w] &= if bit == 63 { 0 } else { !0u64 << (bit + 1) };
        out
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let t = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(w * 64 + t)
                }
            })
        })
    }
}

/// A simplicial face: pairwise-skew vertices, in increasing index order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    vertices: Vec<usize>,
}

impl Simplex {
    /// Sorts the indices; does not check skewness (see
    /// [`GossetPolytope::is_simplex`]).
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// One less than the vertex count.
    pub fn dimension(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::from_indices(self.vertices.iter().copied())
    }
}

/// An `(r-1)`-crosspolytope facet: the lines skew to a ruling `f`, paired
/// by `l ↔ f - l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crosspolytope {
    ruling: DivisorClass,
    pairs: Vec<(usize, usize)>,
}

impl Crosspolytope {
    pub fn ruling(&self) -> &DivisorClass {
        &self.ruling
    }

    /// Antipodal pairs `(i, j)`, `i < j`, sorted by `i`.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn dimension(&self) -> usize {
        self.pairs.len()
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::from_indices(self.pairs.iter().flat_map(|&(i, j)| [i, j]))
    }

    /// All vertex indices, increasing.
    pub fn vertices(&self) -> Vec<usize> {
        self.vertex_set().iter().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Face {
    Simplex(Simplex),
    Crosspolytope(Crosspolytope),
}

/// The counts of one column of the `k_21` subpolytope table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceTable {
    pub crosspolytopes: u64,
    pub vertices: u64,
    /// `α_1, …, α_{r-1}`.
    pub simplexes: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct GossetPolytope {
    surface: Surface,
    vertices: ClassSet,
    adjacency: Vec<VertexSet>,
}

impl GossetPolytope {
    pub fn build(s: &Surface) -> Self {
        let vertices = enumerate::lines(s);
        assert!(vertices.len() <= VertexSet::CAPACITY);
        let adjacency = vertices
            .iter()
            .map(|a| {
                VertexSet::from_indices(
                    vertices
                        .iter()
                        .enumerate()
                        .filter(|(_, b)| a.dot(b) == 0)
                        .map(|(j, _)| j),
                )
            })
            .collect();
        GossetPolytope {
            surface: *s,
            vertices,
            adjacency,
        }
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    pub fn rank(&self) -> u8 {
        self.surface.rank()
    }

    pub fn vertices(&self) -> &ClassSet {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &DivisorClass {
        &self.vertices.items()[i]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn neighbours(&self, i: usize) -> &VertexSet {
        &self.adjacency[i]
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(j)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency[i].len()
    }

    /// Edges `(i, j)` with `i < j`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.vertex_count())
            .flat_map(|i| {
                self.adjacency[i]
                    .above(i)
                    .iter()
                    .map(move |j| (i, j))
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::from_indices(0..self.vertex_count())
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k < self.rank() as usize {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!(
                "simplex dimension {k} for r = {}",
                self.rank()
            )))
        }
    }

    /// Number of `k`-simplexes, i.e. `(k+1)`-cliques of the skew graph.
    pub fn count_simplexes(&self, k: usize) -> Result<u64> {
        self.check_k(k)?;
        Ok(self.count_cliques_within(&self.all_vertices(), k + 1))
    }

    /// The `k`-simplexes in canonical (lexicographic) order.
    pub fn list_simplexes(&self, k: usize) -> Result<Vec<Simplex>> {
        self.check_k(k)?;
        let mut out = Vec::new();
        self.for_each_clique_par(
            k + 1,
            |clique| Simplex {
                vertices: clique.to_vec(),
            },
            &mut out,
        );
        Ok(out)
    }

    /// The `k`-simplexes as packed vertex sets, in canonical order.
    pub fn simplex_sets(&self, k: usize) -> Result<Vec<VertexSet>> {
        self.check_k(k)?;
        let mut out = Vec::new();
        self.for_each_clique_par(
            k + 1,
            |clique| VertexSet::from_indices(clique.iter().copied()),
            &mut out,
        );
        Ok(out)
    }

    /// Number of `size`-cliques whose vertices all lie in `within`.
    pub fn count_cliques_within(&self, within: &VertexSet, size: usize) -> u64 {
        if size == 0 {
            return 1;
        }
        let roots: Vec<usize> = within.iter().collect();
        roots
            .par_iter()
            .map(|&v| {
                let cand = within.above(v).intersection(&self.adjacency[v]);
                self.count_extensions(&cand, size - 1)
            })
            .sum()
    }

    fn count_extensions(&self, cand: &VertexSet, remaining: usize) -> u64 {
        match remaining {
            0 => 1,
            1 => cand.len() as u64,
            _ => cand
                .iter()
                .map(|v| {
                    self.count_extensions(
                        &cand.above(v).intersection(&self.adjacency[v]),
                        remaining - 1,
                    )
                })
                .sum(),
        }
    }

    /// Visits every `size`-clique in canonical order, fanning out over the
    /// smallest vertex and concatenating the per-branch results in order.
    fn for_each_clique_par<T: Send>(
        &self,
        size: usize,
        make: impl Fn(&[usize]) -> T + Sync,
        out: &mut Vec<T>,
    ) {
        if size == 0 {
            return;
        }
        let branches: Vec<Vec<T>> = (0..self.vertex_count())
            .into_par_iter()
            .map(|v| {
                let mut local = Vec::new();
                let mut clique = vec![v];
                let cand = self.adjacency[v].above(v);
                self.extend(&mut clique, &cand, size - 1, &mut |c| local.push(make(c)));
                local
            })
            .collect();
        out.extend(branches.into_iter().flatten());
    }

    fn extend(
        &self,
        clique: &mut Vec<usize>,
        cand: &VertexSet,
        remaining: usize,
        emit: &mut impl FnMut(&[usize]),
    ) {
        if remaining == 0 {
            emit(clique);
            return;
        }
        for v in cand.iter() {
            clique.push(v);
            let next = cand.above(v).intersection(&self.adjacency[v]);
            self.extend(clique, &next, remaining - 1, emit);
            clique.pop();
        }
    }

    /// True when the indices are distinct, in range and pairwise adjacent.
    pub fn is_simplex(&self, x: &Simplex) -> bool {
        let v = x.vertices();
        v.iter().all(|&i| i < self.vertex_count())
            && v.windows(2).all(|w| w[0] < w[1])
            && v.iter()
                .enumerate()
                .all(|(a, &i)| v[a + 1..].iter().all(|&j| self.is_adjacent(i, j)))
    }

    /// One crosspolytope per ruling, in ruling order.
    ///
    /// Panics if a ruling does not give exactly `r - 1` antipodal pairs,
    /// which would mean the line set itself is wrong.
    pub fn crosspolytopes(&self) -> Vec<Crosspolytope> {
        let rulings = enumerate::rulings(&self.surface);
        let r = self.rank() as usize;
        rulings
            .items()
            .par_iter()
            .map(|f| {
                let vertices: Vec<usize> = (0..self.vertex_count())
                    .filter(|&i| f.dot(self.vertex(i)) == 0)
                    .collect();
                assert_eq!(
                    vertices.len(),
                    2 * (r - 1),
                    "ruling {f} meets the wrong number of lines"
                );
                let pairs: Vec<(usize, usize)> = vertices
                    .iter()
                    .filter_map(|&i| {
                        let j = self
                            .vertices
                            .index_of(&(*f - *self.vertex(i)))
                            .unwrap_or_else(|| panic!("{f} - l_{i} is not a line"));
                        (i < j).then_some((i, j))
                    })
                    .collect();
                assert_eq!(pairs.len(), r - 1, "ruling {f} has a self-paired line");
                Crosspolytope { ruling: *f, pairs }
            })
            .collect()
    }

    /// Sum of the vertex classes of a simplex; the ruling of a crosspolytope.
    pub fn center(&self, face: &Face) -> DivisorClass {
        match face {
            Face::Simplex(x) => self.simplex_center(x),
            Face::Crosspolytope(c) => c.ruling,
        }
    }

    pub fn simplex_center(&self, x: &Simplex) -> DivisorClass {
        x.vertices
            .iter()
            .fold(DivisorClass::zero(self.rank()), |acc, &i| {
                acc + *self.vertex(i)
            })
    }

    /// For a facet simplex (`r` vertices) returns `(center - K)/3` when it is
    /// integral; it is then an exceptional system `D` with `K + 3D` = center.
    pub fn exceptional_system_of(&self, x: &Simplex) -> Result<Option<DivisorClass>> {
        let r = self.rank() as usize;
        if x.vertices.len() != r {
            return Err(Error::Dimension {
                expected: r,
                got: x.vertices.len(),
            });
        }
        let d = (self.simplex_center(x) - self.surface.canonical()).checked_div(3);
        if let Some(d) = &d {
            debug_assert!(self.surface.is_exceptional_system(d));
        }
        Ok(d)
    }

    /// The facet simplex whose centre is `K + 3D`, if `K + 3D` is a sum of `r` skew lines.
    pub fn facet_of_exceptional_system(&self, d: &DivisorClass) -> Option<Simplex> {
        if !self.surface.is_exceptional_system(d) {
            return None;
        }
        let target = self.surface.canonical() + 3 * *d;
        let parts = enumerate::skew_decompose_in(&self.vertices, &target)?;
        let x = Simplex::new(
            parts
                .iter()
                .map(|l| self.vertices.index_of(l).expect("part is a line"))
                .collect(),
        );
        (x.vertices.len() == self.rank() as usize).then_some(x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FaceFamily {
    /// Regular simplex `α_n`.
    Simplex,
    /// Crosspolytope `β_n`.
    Crosspolytope,
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of `k`-simplexes of `α_n` (`C(n+1, k+1)`) or of `β_n`
/// (`2^{k+1} C(n, k+1)`).
pub fn face_count_formula(family: FaceFamily, n: u64, k: u64) -> Result<u64> {
    if k >= n {
        return Err(Error::OutOfRange(format!(
            "face dimension {k} of a {n}-polytope"
        )));
    }
    Ok(match family {
        FaceFamily::Simplex => binomial(n + 1, k + 1),
        FaceFamily::Crosspolytope => (1 << (k + 1)) * binomial(n, k + 1),
    })
}

/// The subpolytope counts of `(r-4)_21` from the built-in expected-value table.
pub fn expected_face_table(r: i64) -> Result<FaceTable> {
    Surface::new(r)?;
    let fx = Fixture::builtin();
    let r = r as u8;
    let get = |q: &str, k: Option<u8>| {
        fx.value(q, r, k)
            .unwrap_or_else(|| panic!("built-in table lacks {q} r={r} k={k:?}"))
    };
    Ok(FaceTable {
        crosspolytopes: get("crosspolytopes", None),
        vertices: get("vertices", None),
        simplexes: (1..r).map(|k| get("simplexes", Some(k))).collect(),
    })
}
