//! The full table of checks run by `delpezzo verify`.
//!
//! Check ids are `ACnn.name`; `nn` is the acceptance row the check belongs to.
//! Expected values come from a [`Fixture`], so a corrupted fixture makes the
//! corresponding checks fail rather than silently passing.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::enumerate::{self, ClassSet};
use crate::export;
use crate::fixture::{Fixture, Source};
use crate::gosset::{face_count_formula, FaceFamily, GossetPolytope, Simplex};
use crate::picard::{DivisorClass, Rational, Surface};
use crate::transforms;
use crate::weyl;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Depth {
    /// Skips the `4_21` simplex layers above `k = 3` and the facet audit at `r = 8`.
    Fast,
    Deep,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub r: u8,
    pub expected: Value,
    pub source: Source,
    pub computed: Value,
    pub pass: bool,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub depth: Depth,
    pub status: Status,
    pub checks: Vec<CheckRecord>,
    /// Ids of checks left out at this depth, as `r:id`.
    pub skipped: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{} r={} {:<34} expected {} ({}) computed {} [{} ms]",
                if c.pass { "PASS" } else { "FAIL" },
                c.r,
                c.id,
                c.expected,
                match c.source {
                    Source::Published => "published",
                    Source::Derived => "derived",
                    Source::Trivial => "trivial",
                },
                c.computed,
                c.elapsed_ms
            );
            if let Some(note) = &c.note {
                let _ = writeln!(out, "     note: {note}");
            }
        }
        for s in &self.skipped {
            let _ = writeln!(out, "SKIP {s}");
        }
        let failed = self.failures().count();
        let _ = writeln!(
            out,
            "{}: {} checks, {} failed, {} skipped ({:?})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.checks.len(),
            failed,
            self.skipped.len(),
            self.depth
        );
        out
    }
}

/// Runs every check for each `r` in `ranks`. Ranks run concurrently; the
/// report is ordered by `r`, then check id.
pub fn verify(ranks: &[u8], depth: Depth, fixture: &Fixture) -> VerificationReport {
    let per_rank: Vec<(Vec<CheckRecord>, Vec<String>)> = ranks
        .par_iter()
        .map(|&r| {
            let mut ctx = Checker::new(r, depth, fixture);
            ctx.run_all();
            (ctx.records, ctx.skipped)
        })
        .collect();
    let mut checks = Vec::new();
    let mut skipped = Vec::new();
    for (c, s) in per_rank {
        checks.extend(c);
        skipped.extend(s);
    }
    checks.sort_by(|a, b| (a.r, &a.id).cmp(&(b.r, &b.id)));
    skipped.sort();
    let status = if checks.iter().all(|c| c.pass) {
        Status::Pass
    } else {
        Status::Fail
    };
    VerificationReport {
        depth,
        status,
        checks,
        skipped,
    }
}

struct Checker<'a> {
    r: u8,
    s: Surface,
    depth: Depth,
    fixture: &'a Fixture,
    lines: ClassSet,
    rulings: ClassSet,
    systems: ClassSet,
    polytope: GossetPolytope,
    /// `count_simplexes(k)` for the layers computed at this depth.
    simplex_counts: Vec<Option<u64>>,
    records: Vec<CheckRecord>,
    skipped: Vec<String>,
}

impl<'a> Checker<'a> {
    fn new(r: u8, depth: Depth, fixture: &'a Fixture) -> Self {
        let s = Surface::new(i64::from(r)).expect("rank in range");
        Checker {
            r,
            s,
            depth,
            fixture,
            lines: enumerate::lines(&s),
            rulings: enumerate::rulings(&s),
            systems: enumerate::exceptional_systems(&s),
            polytope: GossetPolytope::build(&s),
            simplex_counts: Vec::new(),
            records: Vec::new(),
            skipped: Vec::new(),
        }
    }

    fn heavy(&self) -> bool {
        self.r == 8 && self.depth == Depth::Fast
    }

    fn max_layer(&self) -> usize {
        if self.heavy() {
            3
        } else {
            self.r as usize - 1
        }
    }

    fn skip(&mut self, id: &str) {
        self.skipped.push(format!("{}:{id}", self.r));
    }

    /// Records a count checked against the fixture entry `(quantity, r, k)`.
    /// `extra` must also hold for the check to pass.
    #[allow(clippy::too_many_arguments)]
    fn count(
        &mut self,
        id: &str,
        quantity: &str,
        r: u8,
        k: Option<u8>,
        start: Instant,
        computed: u64,
        extra: bool,
    ) {
        let entry = self.fixture.entry(quantity, r, k);
        let (expected, source, note) = match entry {
            Some(e) => (json!(e.value), e.source, e.note.clone()),
            None => (
                Value::Null,
                Source::Published,
                Some(format!("no expected value for {quantity}")),
            ),
        };
        let pass = extra && entry.is_some_and(|e| e.value == computed);
        self.push(id, expected, source, json!(computed), pass, start, note);
    }

    /// Records a structural property that must hold.
    fn holds(&mut self, id: &str, source: Source, start: Instant, ok: bool) {
        self.push(id, json!(true), source, json!(ok), ok, start, None);
    }

    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        id: &str,
        expected: Value,
        source: Source,
        computed: Value,
        pass: bool,
        start: Instant,
        note: Option<String>,
    ) {
        self.records.push(CheckRecord {
            id: id.to_string(),
            r: self.r,
            expected,
            source,
            computed,
            pass,
            elapsed_ms: start.elapsed().as_millis() as u64,
            note,
        });
    }

    fn run_all(&mut self) {
        self.class_counts();
        self.face_table();
        self.a_divisors();
        self.weyl_order();
        self.orbits();
        self.crosspolytope_structure();
        self.phi();
        if self.r >= 4 {
            self.neighbourhoods();
        }
        if self.r >= 7 {
            self.involution();
        }
        if self.r == 8 {
            self.theta();
        }
        self.properties();
    }

    fn class_counts(&mut self) {
        let t = Instant::now();
        let n = enumerate::lines(&self.s).len() as u64;
        let ok = self.lines.iter().all(|l| self.s.is_line(l));
        self.count("AC01.lines", "lines", self.r, None, t, n, ok);
        let t = Instant::now();
        let n = enumerate::rulings(&self.s).len() as u64;
        self.count("AC02.rulings", "rulings", self.r, None, t, n, true);
        let t = Instant::now();
        let n = enumerate::exceptional_systems(&self.s).len() as u64;
        self.count(
            "AC03.exceptional_systems",
            "exceptional_systems",
            self.r,
            None,
            t,
            n,
            true,
        );
    }

    fn face_table(&mut self) {
        let r = self.r;
        let t = Instant::now();
        let n = self.polytope.crosspolytopes().len() as u64;
        let equals_rulings = n == self.rulings.len() as u64;
        self.count(
            "AC04.crosspolytopes",
            "crosspolytopes",
            r,
            None,
            t,
            n,
            equals_rulings,
        );
        let t = Instant::now();
        let n = self.polytope.vertex_count() as u64;
        self.count("AC04.vertices", "vertices", r, None, t, n, true);
        self.simplex_counts = vec![None; r as usize];
        for k in 1..r as usize {
            let id = format!("AC04.simplexes.k{k}");
            if k > self.max_layer() {
                self.skip(&id);
                continue;
            }
            let t = Instant::now();
            let n = self.polytope.count_simplexes(k).expect("k < r");
            self.simplex_counts[k] = Some(n);
            self.count(&id, "simplexes", r, Some(k as u8), t, n, true);
        }
    }

    fn a_divisors(&mut self) {
        for a in [2u8, 3] {
            let t = Instant::now();
            let set = enumerate::a_divisors(&self.s, i64::from(a)).expect("a ≤ r");
            let n = set.len() as u64;
            let matches_simplexes = self.simplex_counts[a as usize - 1] == Some(n);
            let decomposes = set.iter().all(|d| {
                enumerate::skew_decompose_in(&self.lines, d).is_some_and(|p| p.len() == a as usize)
            });
            self.count(
                &format!("AC05.a_divisors.a{a}"),
                "a_divisors",
                self.r,
                Some(a),
                t,
                n,
                matches_simplexes && decomposes,
            );
        }
    }

    fn weyl_order(&mut self) {
        let t = Instant::now();
        let n = weyl::weyl_order(i64::from(self.r)).expect("rank in range");
        self.count("AC06.weyl_order", "weyl_order", self.r, None, t, n, true);
    }

    fn orbits(&mut self) {
        let s = self.s;
        let r = self.r as usize;
        let t = Instant::now();
        let ok = weyl::weyl_orbit(&s, &s.e(r)).expect("valid seed") == self.lines;
        self.holds("AC07.orbit_lines", Source::Published, t, ok);
        let t = Instant::now();
        let ok = weyl::weyl_orbit(&s, &(s.h() - s.e(1))).expect("valid seed") == self.rulings;
        self.holds("AC07.orbit_rulings", Source::Published, t, ok);
        let t = Instant::now();
        let of_h = weyl::weyl_orbit(&s, &s.h()).expect("valid seed");
        if r <= 7 {
            let ok = of_h == self.systems;
            self.holds("AC07.orbit_exceptional_systems", Source::Published, t, ok);
        } else {
            let n = of_h.len() as u64;
            self.count(
                "AC07.orbit_h",
                "exceptional_orbit_h",
                8,
                None,
                t,
                n,
                of_h.iter().all(|d| self.systems.contains(d)),
            );
            let t = Instant::now();
            let k = s.canonical();
            let from_roots: Vec<DivisorClass> = enumerate::roots(&s)
                .iter()
                .map(|d| -3 * k + 2 * *d)
                .collect();
            let root_orbit = weyl::weyl_orbit(&s, &from_roots[0]).expect("valid seed");
            let mut sorted = from_roots.clone();
            sorted.sort();
            let same_set = root_orbit.items() == &sorted[..];
            let partition = of_h.len() + root_orbit.len() == self.systems.len()
                && root_orbit
                    .iter()
                    .all(|d| self.systems.contains(d) && !of_h.contains(d));
            let n = root_orbit.len() as u64;
            self.count(
                "AC07.orbit_roots",
                "exceptional_orbit_root",
                8,
                None,
                t,
                n,
                same_set && partition,
            );
        }
    }

    fn crosspolytope_structure(&mut self) {
        let t = Instant::now();
        let p = &self.polytope;
        let cps = p.crosspolytopes();
        let r = self.r as usize;
        let shape_ok = cps.iter().all(|c| {
            c.pairs().len() == r - 1
                && c.pairs().iter().enumerate().all(|(a, &(i, j))| {
                    p.vertex(i).dot(p.vertex(j)) == 1
                        && *p.vertex(i) + *p.vertex(j) == *c.ruling()
                        && c.pairs()[a + 1..].iter().all(|&(x, y)| {
                            [i, j].iter().all(|&u| {
                                p.vertex(u).dot(p.vertex(x)) == 0
                                    && p.vertex(u).dot(p.vertex(y)) == 0
                            })
                        })
                })
        });
        let shape_ms = t.elapsed();
        let t = Instant::now();
        let faces_ok = (0..r - 1).all(|k| {
            let want = face_count_formula(FaceFamily::Crosspolytope, r as u64 - 1, k as u64)
                .expect("k < n");
            cps.iter()
                .all(|c| p.count_cliques_within(&c.vertex_set(), k + 1) == want)
        });
        self.holds("AC08.internal_faces", Source::Derived, t, faces_ok);
        self.holds(
            "AC08.antipodal_pairs",
            Source::Published,
            Instant::now() - shape_ms,
            shape_ok,
        );
    }

    fn phi(&mut self) {
        let r = self.r as usize;
        if self.heavy() {
            self.skip("AC09.phi_facets");
            return;
        }
        let t = Instant::now();
        let p = &self.polytope;
        let facets = p.list_simplexes(r - 1).expect("k < r");
        let images: Vec<Option<DivisorClass>> = facets
            .par_iter()
            .map(|x| p.exceptional_system_of(x).expect("facet dimension"))
            .collect();
        let hits: Vec<(&Simplex, DivisorClass)> = facets
            .iter()
            .zip(&images)
            .filter_map(|(x, d)| d.map(|d| (x, d)))
            .collect();
        let distinct: HashSet<DivisorClass> = hits.iter().map(|(_, d)| *d).collect();
        let injective = distinct.len() == hits.len();
        let back = hits.par_iter().all(|(x, d)| {
            self.systems.contains(d) && p.facet_of_exceptional_system(d).as_ref() == Some(*x)
        });
        if r <= 7 {
            let all_integral = hits.len() == facets.len();
            let onto = distinct.len() == self.systems.len();
            self.holds(
                "AC09.phi_bijection",
                Source::Published,
                t,
                all_integral && injective && back && onto,
            );
        } else {
            let n = hits.len() as u64;
            let no_preimage = self
                .systems
                .iter()
                .filter(|d| !distinct.contains(d))
                .all(|d| p.facet_of_exceptional_system(d).is_none());
            self.count(
                "AC09.phi_facets",
                "phi_facets",
                8,
                None,
                t,
                n,
                injective && back && no_preimage,
            );
        }
    }

    fn neighbourhoods(&mut self) {
        let s = self.s;
        let r = self.r;
        let t = Instant::now();
        let sizes: Vec<(usize, usize)> = self
            .lines
            .iter()
            .map(|l| {
                (
                    transforms::n_k_in(&self.lines, l, 0).len(),
                    transforms::n_k_in(&self.lines, l, 1).len(),
                )
            })
            .collect();
        let all_equal =
            |f: fn(&(usize, usize)) -> usize| sizes.iter().all(|x| f(x) == f(&sizes[0]));
        let n0 = sizes[0].0 as u64;
        let uniform0 = all_equal(|x| x.0);
        self.count("AC10.n0", "lines", r - 1, None, t, n0, uniform0);
        let n1 = sizes[0].1 as u64;
        let uniform1 = all_equal(|x| x.1);
        self.count("AC10.n1", "rulings", r - 1, None, t, n1, uniform1);
        let k = s.canonical();
        if r == 7 {
            let t = Instant::now();
            let ok = self
                .lines
                .iter()
                .all(|l| transforms::n_k_in(&self.lines, l, 2).items() == [-k - *l]);
            self.holds("AC10.n2_singleton", Source::Published, t, ok);
        }
        if r == 8 {
            let t = Instant::now();
            let ok = self
                .lines
                .iter()
                .all(|l| transforms::n_k_in(&self.lines, l, 3).items() == [-2 * k - *l]);
            self.holds("AC10.n3_singleton", Source::Published, t, ok);
            let t = Instant::now();
            let ok = self.lines.iter().all(|l| {
                let dual = -2 * k - *l;
                transforms::n_k_in(&self.lines, l, 0).len()
                    == transforms::n_k_in(&self.lines, &dual, 2).len()
                    && transforms::n_k_in(&self.lines, l, 1).len()
                        == transforms::n_k_in(&self.lines, &dual, 1).len()
            });
            self.holds("AC10.duality", Source::Published, t, ok);
        }
    }

    fn involution(&mut self) {
        let t = Instant::now();
        let r = self.r;
        let map = move |l: &DivisorClass| {
            if r == 7 {
                transforms::gieser(l).expect("line of S_7")
            } else {
                transforms::bertini(l).expect("line of S_8")
            }
        };
        let ok = self.lines.iter().all(|l| {
            let g = map(l);
            g != *l && map(&g) == *l && self.lines.contains(&g)
        });
        self.holds("AC11.involution", Source::Published, t, ok);
        let t = Instant::now();
        let max_k = self.max_layer();
        if max_k < self.r as usize - 1 {
            self.skip("AC11.face_layers.high");
        }
        let ok = match transforms::induced_face_map_layers(&self.polytope, map, max_k) {
            Ok(fm) => {
                fm.simplexes.iter().enumerate().all(|(k, perm)| {
                    Some(perm.len() as u64) == self.polytope.count_simplexes(k).ok()
                }) && fm.crosspolytopes.len() == self.rulings.len()
            }
            Err(_) => false,
        };
        self.holds("AC11.face_layers", Source::Published, t, ok);
    }

    fn theta(&mut self) {
        for (m, set_len) in [
            (2u8, self.lines.len()),
            (4, self.rulings.len()),
            (8, self.systems.len()),
        ] {
            let t = Instant::now();
            let n = enumerate::e8_theta_coefficient(i64::from(m)).expect("m ≥ 0");
            self.count(
                &format!("AC12.theta.m{m}"),
                "theta",
                8,
                Some(m),
                t,
                n,
                n == set_len as u64,
            );
        }
    }

    fn properties(&mut self) {
        let s = self.s;
        let t = Instant::now();
        let radius = -Rational::from_integer(1) - Rational::new(1, s.degree());
        let ok = self.lines.iter().all(|l| s.affine_norm(l, 1) == Ok(radius));
        self.holds("AC13.sphere", Source::Published, t, ok);

        let t = Instant::now();
        let roots = enumerate::roots(&s);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + u64::from(self.r));
        let random_class = |rng: &mut ChaCha8Rng| {
            let coords: Vec<i64> = (0..=self.r).map(|_| rng.gen_range(-9..=9)).collect();
            s.class(&coords).expect("rank in range")
        };
        let ok = (0..10_000).all(|_| {
            let d = roots.items()[rng.gen_range(0..roots.len())];
            let a = random_class(&mut rng);
            let b = random_class(&mut rng);
            weyl::reflect(&d, &a)
                .expect("root")
                .dot(&weyl::reflect(&d, &b).expect("root"))
                == a.dot(&b)
        });
        self.holds("AC13.reflection_isometry", Source::Published, t, ok);

        if self.heavy() {
            self.skip("AC13.export_determinism");
        } else {
            let t = Instant::now();
            let mut first = Vec::new();
            let mut second = Vec::new();
            let ok = export::write_json(&self.polytope, &mut first).is_ok()
                && export::write_json(&GossetPolytope::build(&s), &mut second).is_ok()
                && first == second;
            self.holds("AC13.export_determinism", Source::Trivial, t, ok);
        }
    }
}
