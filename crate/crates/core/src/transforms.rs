//! Blow-down bookkeeping for lines, the neighbourhoods `N_k(l)`, and the
//! Gieser and Bertini involutions as symmetries of `3_21` and `4_21`.
//!
//! Blowing down always contracts the last exceptional class `e_r`. To blow
//! down along another line `l`, first carry `l` to `e_r` with the reflections
//! returned by [`reflections_to_last`], apply the same reflections to every
//! class of interest, and then use [`blow_down_class`].

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::enumerate::{self, ClassKind, ClassSet};
use crate::error::{Error, Result};
use crate::gosset::{GossetPolytope, VertexSet};
use crate::picard::{DivisorClass, Surface};
use crate::weyl::{self, RootBasis};

fn require_line(s: &Surface, l: &DivisorClass) -> Result<()> {
    if s.is_line(l) {
        Ok(())
    } else {
        Err(Error::NotALine(*l))
    }
}

/// `m = l·e_r`, the multiplicity of the strict transform at the blown-up
/// point. `e_r` itself gives `-1`.
pub fn line_degree(s: &Surface, l: &DivisorClass) -> Result<i64> {
    require_line(s, l)?;
    Ok(l.dot(&s.e(s.rank() as usize)))
}

/// Writes `l = D - m e_r` and returns `(D, m)` with `D` on `S_{r-1}`.
pub fn blow_down_class(s: &Surface, l: &DivisorClass) -> Result<(DivisorClass, i64)> {
    require_line(s, l)?;
    if s.rank() <= 3 {
        return Err(Error::OutOfRange(format!(
            "blow-down from r = {}",
            s.rank()
        )));
    }
    let last = s.e(s.rank() as usize);
    if *l == last {
        return Err(Error::NoStrictTransform);
    }
    Ok((l.truncate(), l.dot(&last)))
}

/// Lines other than `e_r`, bucketed by `l·e_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeClassification {
    rank: u8,
    buckets: BTreeMap<i64, ClassSet>,
}

impl DegreeClassification {
    pub fn new(s: &Surface) -> Self {
        let last = s.e(s.rank() as usize);
        let mut raw: BTreeMap<i64, Vec<DivisorClass>> = BTreeMap::new();
        for l in enumerate::lines(s).iter().filter(|l| **l != last) {
            raw.entry(l.dot(&last)).or_default().push(*l);
        }
        let buckets = raw
            .into_iter()
            .map(|(m, v)| (m, ClassSet::from_classes(s.rank(), ClassKind::Lines, v)))
            .collect();
        DegreeClassification {
            rank: s.rank(),
            buckets,
        }
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn buckets(&self) -> &BTreeMap<i64, ClassSet> {
        &self.buckets
    }

    pub fn bucket(&self, m: i64) -> Option<&ClassSet> {
        self.buckets.get(&m)
    }

    pub fn bucket_len(&self, m: i64) -> usize {
        self.bucket(m).map_or(0, ClassSet::len)
    }
}

/// `N_k(l) = {l' ∈ L_r : l'·l = k}`.
pub fn n_k(s: &Surface, l: &DivisorClass, k: i64) -> Result<ClassSet> {
    require_line(s, l)?;
    Ok(n_k_in(&enumerate::lines(s), l, k))
}

/// [`n_k`] against a precomputed line set.
pub fn n_k_in(lines: &ClassSet, l: &DivisorClass, k: i64) -> ClassSet {
    let items = lines.iter().filter(|x| x.dot(l) == k).copied().collect();
    ClassSet::from_classes(lines.rank(), ClassKind::Lines, items)
}

/// Simple-root reflections carrying the line `l` to `e_r`, in application order.
pub fn reflections_to_last(s: &Surface, l: &DivisorClass) -> Result<Vec<DivisorClass>> {
    require_line(s, l)?;
    let basis = RootBasis::new(s);
    let target = s.e(s.rank() as usize);
    let mut parent: HashMap<DivisorClass, Option<(DivisorClass, DivisorClass)>> =
        HashMap::from([(*l, None)]);
    let mut queue = VecDeque::from([*l]);
    while let Some(d) = queue.pop_front() {
        if d == target {
            let mut path = Vec::new();
            let mut cur = d;
            while let Some((prev, root)) = parent[&cur] {
                path.push(root);
                cur = prev;
            }
            path.reverse();
            return Ok(path);
        }
        for root in basis.roots() {
            let image = weyl::reflect_unchecked(root, &d);
            parent.entry(image).or_insert_with(|| {
                queue.push_back(image);
                Some((d, *root))
            });
        }
    }
    unreachable!("W(S_r) acts transitively on lines")
}

/// `G(l) = -(K + l)` on `S_7`.
pub fn gieser(l: &DivisorClass) -> Result<DivisorClass> {
    let s = involution_surface(l, 7)?;
    Ok(-(s.canonical() + *l))
}

/// `B(l) = -(2K + l)` on `S_8`.
pub fn bertini(l: &DivisorClass) -> Result<DivisorClass> {
    let s = involution_surface(l, 8)?;
    Ok(-(2 * s.canonical() + *l))
}

fn involution_surface(l: &DivisorClass, r: u8) -> Result<Surface> {
    if l.rank() != r {
        return Err(Error::RankMismatch {
            left: r,
            right: l.rank(),
        });
    }
    let s = Surface::new(i64::from(r))?;
    require_line(&s, l)?;
    Ok(s)
}

/// The permutation a line isometry induces on every face layer.
///
/// `simplexes[k][i]` is the index, in canonical listing order, of the image of
/// the `i`-th `k`-simplex; `crosspolytopes[i]` likewise for crosspolytopes in
/// ruling order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceMap {
    pub vertices: Vec<usize>,
    pub simplexes: Vec<Vec<u32>>,
    pub crosspolytopes: Vec<usize>,
}

/// [`induced_face_map_layers`] over every simplex dimension `0 ..= r-1`.
pub fn induced_face_map(
    p: &GossetPolytope,
    line_map: impl Fn(&DivisorClass) -> DivisorClass,
) -> Result<FaceMap> {
    induced_face_map_layers(p, line_map, p.rank() as usize - 1)
}

/// Audits that `line_map` permutes the vertices preserving every pairwise
/// intersection, then re-derives the image of each face from its vertex
/// images, for simplexes of dimension up to `max_k`.
pub fn induced_face_map_layers(
    p: &GossetPolytope,
    line_map: impl Fn(&DivisorClass) -> DivisorClass,
    max_k: usize,
) -> Result<FaceMap> {
    let n = p.vertex_count();
    let mut vertices = Vec::with_capacity(n);
    let mut hit = vec![false; n];
    for i in 0..n {
        let image = line_map(p.vertex(i));
        let j = p.vertices().index_of(&image).ok_or_else(|| {
            Error::NotAnIsometry(format!("{} maps to non-line {image}", p.vertex(i)))
        })?;
        if std::mem::replace(&mut hit[j], true) {
            return Err(Error::NotAnIsometry(format!("two lines map to {image}")));
        }
        vertices.push(j);
    }
    for i in 0..n {
        for j in i + 1..n {
            let before = p.vertex(i).dot(p.vertex(j));
            let after = p.vertex(vertices[i]).dot(p.vertex(vertices[j]));
            if before != after {
                return Err(Error::NotAnIsometry(format!(
                    "l_{i}·l_{j} = {before} becomes {after}"
                )));
            }
        }
    }
    let image_set = |set: &VertexSet| VertexSet::from_indices(set.iter().map(|i| vertices[i]));

    let mut simplexes = Vec::new();
    for k in 0..=max_k.min(p.rank() as usize - 1) {
        let layer = p.simplex_sets(k)?;
        let index: HashMap<VertexSet, u32> = layer
            .iter()
            .enumerate()
            .map(|(i, s)| (*s, i as u32))
            .collect();
        let mut seen = vec![false; layer.len()];
        let mut perm = Vec::with_capacity(layer.len());
        for set in &layer {
            let &t = index.get(&image_set(set)).ok_or_else(|| {
                Error::NotAnIsometry(format!("a {k}-simplex maps outside the {k}-simplexes"))
            })?;
            if std::mem::replace(&mut seen[t as usize], true) {
                return Err(Error::NotAnIsometry(format!(
                    "two {k}-simplexes share an image"
                )));
            }
            perm.push(t);
        }
        simplexes.push(perm);
    }

    let cps = p.crosspolytopes();
    let by_ruling: HashMap<DivisorClass, usize> = cps
        .iter()
        .enumerate()
        .map(|(i, c)| (*c.ruling(), i))
        .collect();
    let mut seen = vec![false; cps.len()];
    let mut crosspolytopes = Vec::with_capacity(cps.len());
    for c in &cps {
        let (a, b) = c.pairs()[0];
        let ruling = *p.vertex(vertices[a]) + *p.vertex(vertices[b]);
        let &t = by_ruling
            .get(&ruling)
            .ok_or_else(|| Error::NotAnIsometry(format!("{ruling} is not a ruling")))?;
        let mapped: Vec<(usize, usize)> = {
            let mut v: Vec<_> = c
                .pairs()
                .iter()
                .map(|&(i, j)| (vertices[i].min(vertices[j]), vertices[i].max(vertices[j])))
                .collect();
            v.sort_unstable();
            v
        };
        if mapped != cps[t].pairs() {
            return Err(Error::NotAnIsometry(format!(
                "antipodal pairs of {} not preserved",
                c.ruling()
            )));
        }
        if std::mem::replace(&mut seen[t], true) {
            return Err(Error::NotAnIsometry(
                "two crosspolytopes share an image".into(),
            ));
        }
        crosspolytopes.push(t);
    }

    Ok(FaceMap {
        vertices,
        simplexes,
        crosspolytopes,
    })
}
