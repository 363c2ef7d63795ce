//! Independent oracles: plain box searches that share no code with the
//! pruned enumerator.

#![allow(dead_code)]

use std::collections::BTreeMap;

use delpezzo::{DivisorClass, Surface};

/// Every class with coordinates in `[-bound, bound]`, bucketed by
/// `(D², D·K)` for `|D²|, |D·K| ≤ window`.
pub fn box_search(r: u8, bound: i64, window: i64) -> BTreeMap<(i64, i64), Vec<DivisorClass>> {
    let n = r as usize + 1;
    let mut out: BTreeMap<(i64, i64), Vec<DivisorClass>> = BTreeMap::new();
    let mut coords = vec![-bound; n];
    loop {
        let square = coords[0] * coords[0] - coords[1..].iter().map(|c| c * c).sum::<i64>();
        let k_deg = -3 * coords[0] - coords[1..].iter().sum::<i64>();
        if square.abs() <= window && k_deg.abs() <= window {
            out.entry((square, k_deg))
                .or_default()
                .push(DivisorClass::new(r, &coords).unwrap());
        }
        // odometer
        let mut i = n;
        loop {
            if i == 0 {
                for v in out.values_mut() {
                    v.sort();
                }
                return out;
            }
            i -= 1;
            if coords[i] < bound {
                coords[i] += 1;
                break;
            }
            coords[i] = -bound;
        }
    }
}

pub fn surface(r: i64) -> Surface {
    Surface::new(r).unwrap()
}

/// Prints one line per acceptance criterion and fails the test if it did not pass.
pub fn criterion(id: &str, what: &str, pass: bool) {
    println!("{id} {} {what}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "{id} failed: {what}");
}
