//! Exit criteria. Every check is exact; run with `--nocapture` to see one
//! PASS/FAIL line per criterion.

mod common;

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use common::{box_search, criterion, surface};
use delpezzo::enumerate::{self, e8_theta_coefficient};
use delpezzo::export;
use delpezzo::fixture::Fixture;
use delpezzo::gosset::{face_count_formula, FaceFamily, GossetPolytope};
use delpezzo::transforms;
use delpezzo::verify::{self, Depth};
use delpezzo::weyl;
use delpezzo::{DivisorClass, Rational};

const RANKS: std::ops::RangeInclusive<i64> = 3..=8;

#[test]
fn ac01_line_counts() {
    let got: Vec<usize> = RANKS.map(|r| enumerate::lines(&surface(r)).len()).collect();
    criterion(
        "AC01",
        &format!("line counts {got:?}"),
        got == [6, 10, 16, 27, 56, 240],
    );
}

#[test]
fn ac02_ruling_counts() {
    let got: Vec<usize> = RANKS
        .map(|r| enumerate::rulings(&surface(r)).len())
        .collect();
    criterion(
        "AC02",
        &format!("ruling counts {got:?}"),
        got == [3, 5, 10, 27, 126, 2160],
    );
}

#[test]
fn ac03_exceptional_system_counts() {
    let got: Vec<usize> = RANKS
        .map(|r| enumerate::exceptional_systems(&surface(r)).len())
        .collect();
    criterion(
        "AC03",
        &format!("exceptional-system counts {got:?}"),
        got == [2, 5, 16, 72, 576, 17520],
    );
}

fn face_row(r: i64) -> Vec<u64> {
    let p = GossetPolytope::build(&surface(r));
    let mut row = vec![p.crosspolytopes().len() as u64, p.vertex_count() as u64];
    row.extend((1..r as usize).map(|k| p.count_simplexes(k).unwrap()));
    row
}

#[test]
fn ac04_face_table() {
    let expected: [&[u64]; 6] = [
        &[3, 6, 9, 2],
        &[5, 10, 30, 30, 5],
        &[10, 16, 80, 160, 120, 16],
        &[27, 27, 216, 720, 1080, 648, 72],
        &[126, 56, 756, 4032, 10080, 12096, 6048, 576],
        &[
            2160, 240, 6720, 60480, 241920, 483840, 483840, 207360, 17280,
        ],
    ];
    let mut ok = true;
    for (r, want) in RANKS.zip(expected) {
        let got = face_row(r);
        let table = delpezzo::gosset::expected_face_table(r).unwrap();
        let mut from_table = vec![table.crosspolytopes, table.vertices];
        from_table.extend(table.simplexes);
        println!("  r={r} {got:?}");
        ok &= got == want && from_table == want;
    }
    criterion("AC04", "face table of (r-4)_21 for every r", ok);
}

#[test]
fn ac05_a_divisor_equivalence() {
    let mut ok = true;
    for r in RANKS {
        let s = surface(r);
        let p = GossetPolytope::build(&s);
        for a in [2, 3] {
            let n = enumerate::a_divisors(&s, a).unwrap().len() as u64;
            ok &= n == p.count_simplexes(a as usize - 1).unwrap();
        }
    }
    let s3 = surface(3);
    ok &= enumerate::a_divisors(&s3, 3).unwrap().len() == 2;
    // The S_3, a = 2 value comes from the independent box search.
    let oracle = box_search(3, 10, 3);
    let from_box = &oracle[&(-2, -2)];
    ok &= from_box.len() == 9 && enumerate::a_divisors(&s3, 2).unwrap().items() == &from_box[..];
    let entry = Fixture::builtin().entry("a_divisors", 3, Some(2)).unwrap();
    ok &= entry.value == 9 && entry.note.is_some();
    criterion(
        "AC05",
        "a-divisors match α_1 / α_2 counts; S_3 a=2 is 9 (published 6 flagged)",
        ok,
    );
}

#[test]
fn ac06_weyl_orders() {
    let got: Vec<u64> = RANKS.map(|r| weyl::weyl_order(r).unwrap()).collect();
    criterion(
        "AC06",
        &format!("Weyl orders {got:?}"),
        got == [12, 120, 1920, 51840, 2_903_040, 696_729_600],
    );
}

#[test]
fn ac07_orbit_transitivity() {
    let mut ok = true;
    for r in RANKS {
        let s = surface(r);
        ok &= weyl::weyl_orbit(&s, &s.e(r as usize)).unwrap() == enumerate::lines(&s);
        ok &= weyl::weyl_orbit(&s, &(s.h() - s.e(1))).unwrap() == enumerate::rulings(&s);
        if r <= 7 {
            ok &= weyl::weyl_orbit(&s, &s.h()).unwrap() == enumerate::exceptional_systems(&s);
        }
    }
    let s8 = surface(8);
    let k = s8.canonical();
    let systems = enumerate::exceptional_systems(&s8);
    let of_h = weyl::weyl_orbit(&s8, &s8.h()).unwrap();
    let mut from_roots: Vec<DivisorClass> = enumerate::roots(&s8)
        .iter()
        .map(|d| -3 * k + 2 * *d)
        .collect();
    from_roots.sort();
    let of_root = weyl::weyl_orbit(&s8, &from_roots[0]).unwrap();
    ok &= of_h.len() == 17280 && of_root.len() == 240;
    ok &= of_root.items() == &from_roots[..];
    let mut union: Vec<DivisorClass> = of_h.iter().chain(of_root.iter()).copied().collect();
    union.sort();
    ok &= union == systems.items();
    // The unscaled form is not an exceptional system.
    ok &= enumerate::roots(&s8)
        .iter()
        .all(|d| (-3 * k + *d).square() == 7);
    criterion(
        "AC07",
        "orbits of e_r, h-e_1, h; r=8 systems split 17280 + 240",
        ok,
    );
}

#[test]
fn ac08_crosspolytope_structure() {
    let mut ok = true;
    for r in RANKS {
        let p = GossetPolytope::build(&surface(r));
        let n = r as usize - 1;
        for c in p.crosspolytopes() {
            ok &= c.pairs().len() == n;
            let vs = c.vertices();
            ok &= vs.len() == 2 * n;
            for (a, &(i, j)) in c.pairs().iter().enumerate() {
                ok &= p.vertex(i).dot(p.vertex(j)) == 1;
                for &(x, y) in &c.pairs()[a + 1..] {
                    for u in [i, j] {
                        for v in [x, y] {
                            ok &= p.vertex(u).dot(p.vertex(v)) == 0;
                        }
                    }
                }
            }
            for k in 0..n {
                let want =
                    face_count_formula(FaceFamily::Crosspolytope, n as u64, k as u64).unwrap();
                ok &= want == (1 << (k + 1)) * delpezzo::gosset::binomial(n as u64, k as u64 + 1);
                ok &= p.count_cliques_within(&c.vertex_set(), k + 1) == want;
            }
        }
    }
    criterion(
        "AC08",
        "r-1 antipodal pairs per ruling; internal faces 2^{k+1} C(r-1,k+1)",
        ok,
    );
}

#[test]
fn ac09_phi_bijection() {
    let mut ok = true;
    for r in RANKS {
        let s = surface(r);
        let p = GossetPolytope::build(&s);
        let systems = enumerate::exceptional_systems(&s);
        let facets = p.list_simplexes(r as usize - 1).unwrap();
        let mut images = HashSet::new();
        let mut hits = 0;
        for x in &facets {
            // integrality of (center - K)/3 checked independently of the library path
            let center = p.simplex_center(x) - s.canonical();
            let integral = center.coords().iter().all(|c| c % 3 == 0);
            let got = p.exceptional_system_of(x).unwrap();
            ok &= got.is_some() == integral;
            if let Some(d) = got {
                hits += 1;
                ok &= s.is_exceptional_system(&d) && s.canonical() + 3 * d == p.simplex_center(x);
                ok &= p.facet_of_exceptional_system(&d).as_ref() == Some(x);
                images.insert(d);
            }
        }
        ok &= images.len() == hits;
        if r <= 7 {
            ok &= hits == facets.len() && hits == systems.len();
            ok &= systems
                .iter()
                .all(|d| p.facet_of_exceptional_system(d).is_some());
        } else {
            ok &= hits == 17280;
        }
    }
    criterion(
        "AC09",
        "facets <-> exceptional systems for r <= 7; 17280 at r = 8",
        ok,
    );
}

#[test]
fn ac10_n_k_theorems() {
    let mut ok = true;
    for r in 4..=8 {
        let s = surface(r);
        let prev = surface(r - 1);
        let lines = enumerate::lines(&s);
        let n0 = enumerate::lines(&prev).len();
        let n1 = enumerate::rulings(&prev).len();
        let k = s.canonical();
        for l in lines.iter() {
            ok &= transforms::n_k_in(&lines, l, 0).len() == n0;
            ok &= transforms::n_k_in(&lines, l, 1).len() == n1;
            if r == 7 {
                ok &= transforms::n_k_in(&lines, l, 2).items() == [-k - *l];
            }
            if r == 8 {
                let dual = -2 * k - *l;
                ok &= transforms::n_k_in(&lines, l, 3).items() == [dual];
                ok &= transforms::n_k_in(&lines, l, 0).len()
                    == transforms::n_k_in(&lines, &dual, 2).len();
                ok &= transforms::n_k_in(&lines, l, 1).len()
                    == transforms::n_k_in(&lines, &dual, 1).len();
            }
        }
    }
    criterion(
        "AC10",
        "|N_0| = |L_{r-1}|, |N_1| = |F_{r-1}|, N_2/N_3 singletons, r=8 dualities",
        ok,
    );
}

#[test]
fn ac11_gieser_bertini() {
    let mut ok = true;
    for (r, map) in [
        (
            7,
            transforms::gieser as fn(&DivisorClass) -> delpezzo::Result<DivisorClass>,
        ),
        (8, transforms::bertini),
    ] {
        let s = surface(r);
        let p = GossetPolytope::build(&s);
        let lines = enumerate::lines(&s);
        for l in lines.iter() {
            let g = map(l).unwrap();
            ok &= g != *l && lines.contains(&g) && map(&g).unwrap() == *l;
            for m in lines.iter() {
                ok &= g.dot(&map(m).unwrap()) == l.dot(m);
            }
        }
        let fm = transforms::induced_face_map(&p, |d| map(d).unwrap()).unwrap();
        ok &= fm.simplexes.len() == r as usize;
        for (k, perm) in fm.simplexes.iter().enumerate() {
            let mut sorted = perm.clone();
            sorted.sort_unstable();
            ok &= sorted.iter().enumerate().all(|(i, &j)| i as u32 == j);
            ok &= perm.len() as u64 == p.count_simplexes(k).unwrap();
        }
        ok &= fm.crosspolytopes.len() == enumerate::rulings(&s).len();
        // Gieser sends the crosspolytope of f to that of -2K - f.
        if r == 7 {
            let cps = p.crosspolytopes();
            for (i, c) in cps.iter().enumerate() {
                let image = -2 * s.canonical() - *c.ruling();
                ok &= s.is_ruling(&image) && *cps[fm.crosspolytopes[i]].ruling() == image;
            }
        }
    }
    criterion(
        "AC11",
        "Gieser/Bertini: fixed-point-free isometric involutions, bijective on every face layer",
        ok,
    );
}

#[test]
fn ac12_theta_oracle() {
    let s8 = surface(8);
    let got = [2, 4, 8].map(|m| e8_theta_coefficient(m).unwrap());
    let counts = [
        enumerate::lines(&s8).len() as u64,
        enumerate::rulings(&s8).len() as u64,
        enumerate::exceptional_systems(&s8).len() as u64,
    ];
    // D ↦ D + bK lands in the E8 lattice with norm b² - D²
    let mut cross = true;
    for (a, b) in [(-1, 1), (0, 2), (1, 3), (-2, 2)] {
        cross &= enumerate::solve_classes(&s8, a, -b).len() as u64
            == e8_theta_coefficient(-a + b * b).unwrap();
    }
    criterion(
        "AC12",
        &format!("theta coefficients {got:?} vs counts {counts:?}"),
        got == [240, 2160, 17520] && got == counts && cross,
    );
}

#[test]
fn ac13_property_suite() {
    let mut ok = true;

    // reflection isometry on 10^4 random triples
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..10_000 {
        let r = rng.gen_range(3..=8);
        let s = surface(r);
        let roots = enumerate::roots(&s);
        let d = roots.items()[rng.gen_range(0..roots.len())];
        let mut random = || {
            let c: Vec<i64> = (0..=r).map(|_| rng.gen_range(-12..=12)).collect();
            s.class(&c).unwrap()
        };
        let (a, b) = (random(), random());
        ok &= weyl::reflect(&d, &a)
            .unwrap()
            .dot(&weyl::reflect(&d, &b).unwrap())
            == a.dot(&b);
    }
    println!("  reflection isometry: {ok}");

    // sphere radius of every line
    for r in RANKS {
        let s = surface(r);
        let radius = Rational::from_integer(-1) - Rational::new(1, 9 - r);
        ok &= enumerate::lines(&s)
            .iter()
            .all(|l| s.affine_norm(l, 1).unwrap() == radius);
    }
    println!("  sphere identity: {ok}");

    // pruned enumeration == naive box search
    for r in 3..=5u8 {
        let s = surface(i64::from(r));
        let oracle = box_search(r, 10, 3);
        for a in -3..=3 {
            for b in -3..=3 {
                let want = oracle.get(&(a, b)).cloned().unwrap_or_default();
                ok &= enumerate::solve_classes(&s, a, b).items() == &want[..];
            }
        }
    }
    println!("  enumeration vs box search: {ok}");

    // export determinism by checksum
    for r in RANKS {
        let digest = || {
            let mut buf = Vec::new();
            export::write_json(&GossetPolytope::build(&surface(r)), &mut buf).unwrap();
            Sha256::digest(&buf)
        };
        ok &= digest() == digest();
    }
    criterion(
        "AC13",
        "reflection isometry, sphere radius, box-search completeness, export checksums",
        ok,
    );
}

#[test]
fn deep_verification_report_passes() {
    let report = verify::verify(&[3, 4, 5, 6, 7, 8], Depth::Deep, Fixture::builtin());
    for c in report.failures() {
        println!(
            "  {} r={} expected {} computed {}",
            c.id, c.r, c.expected, c.computed
        );
    }
    criterion(
        "VERIFY",
        "delpezzo verify --all --deep",
        report.passed() && report.skipped.is_empty(),
    );
}
