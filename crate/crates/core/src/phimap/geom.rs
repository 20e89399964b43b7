//! Exact planar primitives over `BigRational`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn half() -> Q {
    q(1, 2)
}

/// Representative in `[0, 1)`.
pub fn reduce(x: &Q) -> Q {
    x - x.floor()
}

pub fn cross(a: &[Q; 2], b: &[Q; 2]) -> Q {
    &a[0] * &b[1] - &a[1] * &b[0]
}

pub fn dot(a: &[Q; 2], b: &[Q; 2]) -> Q {
    &a[0] * &b[0] + &a[1] * &b[1]
}

pub fn add(a: &[Q; 2], b: &[Q; 2]) -> [Q; 2] {
    [&a[0] + &b[0], &a[1] + &b[1]]
}

pub fn sub(a: &[Q; 2], b: &[Q; 2]) -> [Q; 2] {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

pub fn scale(a: &[Q; 2], t: &Q) -> [Q; 2] {
    [&a[0] * t, &a[1] * t]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Meet {
    None,
    /// Single common point at parameters `t` on the first and `s` on the
    /// second segment, both in `[0, 1]`.
    Point { t: Q, s: Q },
    /// Collinear with a common piece of positive length.
    Overlap,
}

fn in_unit(x: &Q) -> bool {
    !x.is_negative() && *x <= Q::one()
}

/// Intersects `p1 + t d1` with `p2 + s d2` for `t, s` in `[0, 1]`.
pub fn meet(p1: &[Q; 2], d1: &[Q; 2], p2: &[Q; 2], d2: &[Q; 2]) -> Meet {
    let w = sub(p2, p1);
    let den = cross(d1, d2);
    if !den.is_zero() {
        let t = cross(&w, d2) / &den;
        let s = cross(&w, d1) / &den;
        return if in_unit(&t) && in_unit(&s) { Meet::Point { t, s } } else { Meet::None };
    }
    if !cross(&w, d1).is_zero() {
        return Meet::None;
    }
    let dd = dot(d1, d1);
    let a = dot(&w, d1) / &dd;
    let b = dot(&add(&w, d2), d1) / &dd;
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let lo = if lo.is_negative() { Q::zero() } else { lo };
    let hi = if hi > Q::one() { Q::one() } else { hi };
    if lo < hi {
        Meet::Overlap
    } else if lo == hi {
        let t = lo;
        let at = add(p1, &scale(d1, &t));
        let s = dot(&sub(&at, p2), d2) / dot(d2, d2);
        Meet::Point { t, s }
    } else {
        Meet::None
    }
}

pub fn sign_of(x: &Q) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Decimal rendering for messages.
pub fn approx(x: &Q) -> String {
    let num: f64 = x.numer().to_string().parse().unwrap_or(f64::NAN);
    let den: f64 = x.denom().to_string().parse().unwrap_or(f64::NAN);
    format!("{:.6}", num / den)
}

/// Parses `p/q`, an integer, or a finite decimal, exactly.
pub fn parse_q(s: &str) -> Option<Q> {
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if (int.is_empty() && frac.is_empty())
        || !int.bytes().all(|c| c.is_ascii_digit())
        || !frac.bytes().all(|c| c.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int}{frac}");
    let n: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().ok()? };
    let d = num_traits::pow(BigInt::from(10), frac.len());
    let v = Q::new(n, d);
    Some(if neg { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: (i64, i64), y: (i64, i64)) -> [Q; 2] {
        [q(x.0, x.1), q(y.0, y.1)]
    }

    #[test]
    fn crossing_segments() {
        let m = meet(&v((0, 1), (0, 1)), &v((1, 1), (1, 1)), &v((0, 1), (1, 1)), &v((1, 1), (-1, 1)));
        assert_eq!(m, Meet::Point { t: half(), s: half() });
    }

    #[test]
    fn parallel_and_collinear() {
        let d = v((1, 1), (0, 1));
        assert_eq!(meet(&v((0, 1), (0, 1)), &d, &v((0, 1), (1, 1)), &d), Meet::None);
        assert_eq!(meet(&v((0, 1), (0, 1)), &d, &v((1, 2), (0, 1)), &d), Meet::Overlap);
        assert_eq!(
            meet(&v((0, 1), (0, 1)), &d, &v((1, 1), (0, 1)), &d),
            Meet::Point { t: Q::one(), s: Q::zero() }
        );
        assert_eq!(meet(&v((0, 1), (0, 1)), &d, &v((2, 1), (0, 1)), &d), Meet::None);
    }

    #[test]
    fn numbers() {
        assert_eq!(parse_q("0.05"), Some(q(1, 20)));
        assert_eq!(parse_q("-3/4"), Some(q(-3, 4)));
        assert_eq!(parse_q("7"), Some(q(7, 1)));
        assert_eq!(parse_q(".5"), Some(half()));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(parse_q("abc"), None);
        assert_eq!(parse_q("."), None);
        assert_eq!(reduce(&q(-1, 4)), q(3, 4));
    }
}
