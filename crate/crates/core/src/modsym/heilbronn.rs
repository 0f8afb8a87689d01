//! Heilbronn matrix sets realising T_n on Manin symbols.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Integer 2x2 matrix `[a, b, c, d]` = [[a, b], [c, d]].
pub type Mat2 = [i64; 4];

/// Cremona's set for a prime p: determinant p, about 12 log(2) p log(p) / pi^2
/// matrices. Only valid when p does not divide the level.
pub fn cremona(p: u64) -> Vec<Mat2> {
    let p = p as i64;
    if p == 2 {
        return vec![[1, 0, 0, 2], [2, 0, 0, 1], [2, 1, 0, 1], [1, 0, 1, 2]];
    }
    let mut out = vec![[1, 0, 0, p]];
    let half = (p - 1) / 2;
    for r in -half..=half {
        let (mut x1, mut x2, mut y1, mut y2) = (p, -r, 0i64, 1i64);
        let (mut a, mut b) = (-p, r);
        out.push([x1, x2, y1, y2]);
        while b != 0 {
            let q = round_div(a, b);
            let c = a - b * q;
            a = -b;
            b = c;
            let x3 = q * x2 - x1;
            x1 = x2;
            x2 = x3;
            let y3 = q * y2 - y1;
            y1 = y2;
            y2 = y3;
            out.push([x1, x2, y1, y2]);
        }
    }
    out
}

/// a / b rounded to the nearest integer, halves away from zero.
fn round_div(a: i64, b: i64) -> i64 {
    let (q, r) = (a / b, a % b);
    if 2 * r.abs() >= b.abs() {
        if (a < 0) == (b < 0) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Merel's set: all [[a, b], [c, d]] with ad - bc = n, a > b >= 0, d > c >= 0.
pub fn merel(n: u64) -> Vec<Mat2> {
    let n = n as i64;
    let mut out = Vec::new();
    for a in 1..=n {
        for b in 0..a {
            let mut c = 0;
            // d = (n + bc) / a must exceed c, i.e. c (a - b) < n
            while c * (a - b) < n {
                let num = n + b * c;
                if num % a == 0 {
                    let d = num / a;
                    if d > c {
                        out.push([a, b, c, d]);
                    }
                }
                c += 1;
            }
        }
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Kind {
    Cremona,
    Merel,
}

fn cache() -> &'static Mutex<HashMap<(Kind, u64), Arc<Vec<Mat2>>>> {
    static CACHE: OnceLock<Mutex<HashMap<(Kind, u64), Arc<Vec<Mat2>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Heilbronn matrices for T_l at the given level: Cremona's (smaller) set
/// when l does not divide the level, Merel's otherwise. Cached per l.
pub fn heilbronn_for(l: u64, level: u64) -> Arc<Vec<Mat2>> {
    let kind = if level.is_multiple_of(l) { Kind::Merel } else { Kind::Cremona };
    let mut guard = cache().lock().expect("heilbronn cache poisoned");
    guard
        .entry((kind, l))
        .or_insert_with(|| {
            Arc::new(match kind {
                Kind::Cremona => cremona(l),
                Kind::Merel => merel(l),
            })
        })
        .clone()
}
