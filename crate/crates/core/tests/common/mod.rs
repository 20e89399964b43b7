//! Independent Kauffman-bracket oracle for flat-free diagrams.
//!
//! The oracle never touches the library's smoothing code: it builds the
//! half-edge graph of each state from scratch, counts cycles by walking it,
//! and expands the bracket over a plain `BTreeMap<i32, i64>` Laurent
//! polynomial in `A`. For a flat-free diagram `X = (-a^2 - a^-2) f` where
//! `f = (-A^3)^-w <D>` with `<O> = 1` and `a = A`.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use fvknot::{flat_virtual_jones, parse_diagram, Component, CrossingKind, Diagram, Poly2, Sign, Visit};

pub type Laurent = BTreeMap<i32, i64>;

pub fn mul(p: &Laurent, q: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (i, a) in p {
        for (j, b) in q {
            *out.entry(i + j).or_default() += a * b;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

pub fn loop_factor() -> Laurent {
    [(-2, -1), (2, -1)].into()
}

/// A flat-free code: per component, (crossing index, is_over) visits.
#[derive(Clone, Debug)]
pub struct Code {
    pub comps: Vec<Vec<(usize, bool)>>,
    pub positive: Vec<bool>,
}

/// Normalized bracket `f` of the code.
pub fn oracle_f(code: &Code) -> Laurent {
    let n = code.positive.len();
    // Global visit numbering and successor along each component.
    let mut next = Vec::new();
    let mut over_at = vec![usize::MAX; n];
    let mut under_at = vec![usize::MAX; n];
    let mut unknots = 0;
    for comp in &code.comps {
        if comp.is_empty() {
            unknots += 1;
            continue;
        }
        let base = next.len();
        for (k, &(x, over)) in comp.iter().enumerate() {
            next.push(base + (k + 1) % comp.len());
            if over {
                over_at[x] = base + k;
            } else {
                under_at[x] = base + k;
            }
        }
    }
    let v = next.len();
    // Node 2g = arriving at visit g, 2g + 1 = leaving it.
    let mut tally: BTreeMap<(i32, usize), i64> = BTreeMap::new();
    for s in 0u32..(1 << n) {
        let mut partner = vec![usize::MAX; 2 * v];
        for x in 0..n {
            let (o, u) = (over_at[x], under_at[x]);
            let a_smoothing = s & (1 << x) == 0;
            // The A-smoothing opens the regions swept counterclockwise by
            // the over strand. At a positive crossing they are bounded by
            // (over in, under out) and (under in, over out).
            let joins_in_out = a_smoothing == code.positive[x];
            let (p1, p2) = if joins_in_out {
                ((2 * o, 2 * u + 1), (2 * u, 2 * o + 1))
            } else {
                ((2 * o, 2 * u), (2 * o + 1, 2 * u + 1))
            };
            for (a, b) in [p1, p2] {
                partner[a] = b;
                partner[b] = a;
            }
        }
        let mut seen = vec![false; 2 * v];
        let mut loops = unknots;
        for start in 0..2 * v {
            if seen[start] {
                continue;
            }
            loops += 1;
            // Alternate: smoothing edge, then the arc to the next visit.
            let mut node = start;
            loop {
                seen[node] = true;
                let across = partner[node];
                seen[across] = true;
                let g = across / 2;
                node = if across % 2 == 1 {
                    2 * next[g]
                } else {
                    let prev = next.iter().position(|&h| h == g).unwrap();
                    2 * prev + 1
                };
                if node == start {
                    break;
                }
            }
        }
        let a_count = (0..n).filter(|x| s & (1 << x) == 0).count() as i32;
        *tally.entry((2 * a_count - n as i32, loops)).or_default() += 1;
    }
    let mut bracket = Laurent::new();
    for ((a_exp, loops), count) in tally {
        let mut term: Laurent = [(a_exp, count)].into();
        for _ in 1..loops {
            term = mul(&term, &loop_factor());
        }
        for (e, c) in term {
            *bracket.entry(e).or_default() += c;
        }
    }
    bracket.retain(|_, c| *c != 0);
    let w: i32 = code.positive.iter().map(|&p| if p { 1 } else { -1 }).sum();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    mul(&bracket, &[(-3 * w, sign)].into())
}

pub fn to_poly(p: &Laurent) -> Poly2 {
    p.iter().map(|(&e, &c)| Poly2::monomial(c, e, 0)).sum()
}

pub fn to_diagram(code: &Code) -> Diagram {
    let table = code
        .positive
        .iter()
        .enumerate()
        .map(|(x, &p)| (x as u32 + 1, CrossingKind::Classical(if p { Sign::Pos } else { Sign::Neg })))
        .collect();
    let comps = code
        .comps
        .iter()
        .map(|c| {
            Component::from_visits(
                c.iter()
                    .map(|&(x, over)| if over { Visit::over(x as u32 + 1) } else { Visit::under(x as u32 + 1) })
                    .collect(),
            )
        })
        .collect();
    Diagram::new(table, comps)
}

/// Whether the library agrees with the oracle on `code`.
pub fn agrees(code: &Code) -> bool {
    let f = oracle_f(code);
    let expected = &Poly2::loop_value() * &to_poly(&f);
    let d = to_diagram(code);
    d.is_valid() && flat_virtual_jones(&d) == expected
}

pub fn check(code: &Code) {
    assert!(agrees(code), "{code:?}");
}

/// Sequences of length 2n where each of n labels occurs twice, labels in
/// order of first occurrence.
pub fn matchings(n: usize) -> Vec<Vec<usize>> {
    fn go(seq: &mut Vec<Option<usize>>, next: usize, out: &mut Vec<Vec<usize>>) {
        let Some(first) = seq.iter().position(|s| s.is_none()) else {
            out.push(seq.iter().map(|s| s.unwrap()).collect());
            return;
        };
        seq[first] = Some(next);
        for j in first + 1..seq.len() {
            if seq[j].is_none() {
                seq[j] = Some(next);
                go(seq, next + 1, out);
                seq[j] = None;
            }
        }
        seq[first] = None;
    }
    let mut out = Vec::new();
    go(&mut vec![None; 2 * n], 0, &mut out);
    out
}

/// Relabels by first appearance.
pub fn relabel(comps: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut map = BTreeMap::new();
    comps
        .iter()
        .map(|c| {
            c.iter()
                .map(|x| {
                    let k = map.len();
                    *map.entry(*x).or_insert(k)
                })
                .collect()
        })
        .collect()
}

pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out
}

/// Smallest relabeled form over component orders and rotations.
pub fn canonical(comps: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut best: Option<Vec<Vec<usize>>> = None;
    for perm in permutations(comps.len()) {
        let ordered: Vec<&Vec<usize>> = perm.iter().map(|&i| &comps[i]).collect();
        // Restricting to orders with nondecreasing lengths still gives a
        // canonical form, with far fewer candidates.
        if ordered.windows(2).any(|w| w[0].len() > w[1].len()) {
            continue;
        }
        let mut rot = vec![0; comps.len()];
        loop {
            let rotated: Vec<Vec<usize>> = ordered
                .iter()
                .zip(&rot)
                .map(|(c, &r)| {
                    let mut c = (*c).clone();
                    c.rotate_left(r);
                    c
                })
                .collect();
            let cand = relabel(&rotated);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
            // odometer over rotations
            let mut i = 0;
            while i < rot.len() {
                rot[i] += 1;
                if rot[i] < ordered[i].len() {
                    break;
                }
                rot[i] = 0;
                i += 1;
            }
            if i == rot.len() {
                break;
            }
        }
    }
    best.unwrap()
}

/// Multi-component Gauss codes with `n` crossings up to relabeling,
/// rotation of components, and reordering of components.
pub fn structures(n: usize) -> BTreeSet<Vec<Vec<usize>>> {
    let mut out = BTreeSet::new();
    if n == 0 {
        // the unknot
        out.insert(vec![vec![]]);
        return out;
    }
    for seq in matchings(n) {
        let len = seq.len();
        for mask in 0u32..(1 << (len - 1)) {
            let mut comps = vec![vec![seq[0]]];
            for (i, &x) in seq.iter().enumerate().skip(1) {
                if mask & (1 << (i - 1)) != 0 {
                    comps.push(Vec::new());
                }
                comps.last_mut().unwrap().push(x);
            }
            out.insert(canonical(&comps));
        }
    }
    out
}

pub fn decorations(structure: &[Vec<usize>], n: usize) -> Vec<Code> {
    let mut out = Vec::new();
    for roles in 0u32..(1 << n) {
        for signs in 0u32..(1 << n) {
            let mut first_seen = vec![false; n];
            let comps = structure
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|&x| {
                            let first = !first_seen[x];
                            first_seen[x] = true;
                            // bit set: the first visit is the under one
                            (x, first == (roles & (1 << x) == 0))
                        })
                        .collect()
                })
                .collect();
            out.push(Code { comps, positive: (0..n).map(|x| signs & (1 << x) == 0).collect() });
        }
    }
    out
}


pub fn fixture(name: &str) -> Diagram {
    let text = std::fs::read_to_string(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap();
    parse_diagram(&text).unwrap()
}

pub fn code_of(d: &Diagram) -> Code {
    let ids: Vec<u32> = d.crossings().keys().copied().collect();
    let idx = |id: u32| ids.iter().position(|&x| x == id).unwrap();
    Code {
        comps: d
            .components()
            .iter()
            .map(|c| c.visits().iter().map(|v| (idx(v.crossing), v.role == fvknot::Role::Over)).collect())
            .collect(),
        positive: ids.iter().map(|&id| d.kind(id) == Some(CrossingKind::Classical(Sign::Pos))).collect(),
    }
}

