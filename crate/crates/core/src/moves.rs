//! The move system on Gauss codes.
//!
//! Virtual crossings are not stored, so every move is a local rewrite of the
//! cyclic visit sequences:
//!
//! * classical R1: a crossing whose two visits are cyclically adjacent;
//! * classical and flat R2: two crossings `p, q` whose visits form two
//!   disjoint adjacent pairs `{p, q}` (a bigon);
//! * classical, flat and mixed R3: three crossings `x, y, z` whose visits
//!   form three disjoint adjacent pairs `{x, y}`, `{x, z}`, `{y, z}` (a
//!   triangle). The move reverses each pair.
//!
//! Flat bits are opaque labels: no move constrains or consults them. An
//! inserted flat bigon gets opposite bits.
//!
//! Classical R3 case table. Name the strands by their pairs. A triangle is a
//! move site when
//!
//! 1. heights are acyclic: one strand is over at both of its crossings, one
//!    at exactly one, one at neither; and
//! 2. it is realized by three lines. Put the crossings at the corners of a
//!    triangle; each strand's direction is then forced by the order of its
//!    two visits, and each crossing sign must equal the sign of
//!    `cross(over direction, under direction)`. Of the 6 ways to place the
//!    crossings on the corners, only the orientation of the triangle
//!    matters, so a triangle is realizable when one of the two orientations
//!    reproduces all three signs.
//!
//! Both conditions survive the move, so the inverse is again an R3 site.
//! Flat R3 has no conditions; mixed R3 (two flats and one classical
//! crossing, the strand through both flats passing the classical crossing)
//! keeps the over/under data of its classical crossing and has no further
//! conditions, since flat bits are not tracked.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Component, CrossingId, CrossingKind, Diagram, Role, Sign, Visit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Op {
    Insert,
    Delete,
}

/// Which visit of an R1 kink comes first along the strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum KinkOrder {
    OverFirst,
    UnderFirst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    ClassicalR1 { op: Op, sign: Sign, order: KinkOrder },
    ClassicalR2 { op: Op },
    ClassicalR3,
    FlatR2 { op: Op },
    FlatR3,
    MixedR3,
}

impl MoveKind {
    pub fn all() -> Vec<MoveKind> {
        let mut out = Vec::new();
        for op in [Op::Insert, Op::Delete] {
            for sign in [Sign::Pos, Sign::Neg] {
                for order in [KinkOrder::OverFirst, KinkOrder::UnderFirst] {
                    out.push(MoveKind::ClassicalR1 { op, sign, order });
                }
            }
            out.push(MoveKind::ClassicalR2 { op });
            out.push(MoveKind::FlatR2 { op });
        }
        out.extend([MoveKind::ClassicalR3, MoveKind::FlatR3, MoveKind::MixedR3]);
        out
    }

    /// Change in the number of crossings.
    pub fn crossing_delta(self) -> i32 {
        match self {
            MoveKind::ClassicalR1 { op: Op::Insert, .. } => 1,
            MoveKind::ClassicalR1 { op: Op::Delete, .. } => -1,
            MoveKind::ClassicalR2 { op: Op::Insert } | MoveKind::FlatR2 { op: Op::Insert } => 2,
            MoveKind::ClassicalR2 { op: Op::Delete } | MoveKind::FlatR2 { op: Op::Delete } => -2,
            _ => 0,
        }
    }

    /// The move undoing this one, if it is not its own inverse.
    pub fn inverse(self) -> MoveKind {
        let flip = |op| match op {
            Op::Insert => Op::Delete,
            Op::Delete => Op::Insert,
        };
        match self {
            MoveKind::ClassicalR1 { op, sign, order } => MoveKind::ClassicalR1 { op: flip(op), sign, order },
            MoveKind::ClassicalR2 { op } => MoveKind::ClassicalR2 { op: flip(op) },
            MoveKind::FlatR2 { op } => MoveKind::FlatR2 { op: flip(op) },
            k => k,
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = |op: &Op| match op {
            Op::Insert => "insert",
            Op::Delete => "delete",
        };
        match self {
            MoveKind::ClassicalR1 { op: o, sign, order } => {
                let order = match order {
                    KinkOrder::OverFirst => "over-first",
                    KinkOrder::UnderFirst => "under-first",
                };
                write!(f, "classical-r1 {} {} {}", op(o), sign, order)
            }
            MoveKind::ClassicalR2 { op: o } => write!(f, "classical-r2 {}", op(o)),
            MoveKind::ClassicalR3 => f.write_str("classical-r3"),
            MoveKind::FlatR2 { op: o } => write!(f, "flat-r2 {}", op(o)),
            MoveKind::FlatR3 => f.write_str("flat-r3"),
            MoveKind::MixedR3 => f.write_str("mixed-r3"),
        }
    }
}

/// Which moves a move sequence may use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Restriction {
    /// Every move.
    #[default]
    None,
    /// No R3 move with three flat crossings.
    NoFlatR3,
    /// Also no mixed R3 move; the stricter reading of the restricted
    /// equivalence.
    NoFlatOrMixedR3,
}

impl Restriction {
    pub fn allows(self, kind: MoveKind) -> bool {
        match (self, kind) {
            (Restriction::None, _) => true,
            (_, MoveKind::FlatR3) => false,
            (Restriction::NoFlatOrMixedR3, MoveKind::MixedR3) => false,
            _ => true,
        }
    }
}

/// The arc following visit `index` of a component (index 0 for a
/// crossingless component).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArcPos {
    pub component: usize,
    pub index: usize,
}

/// Visits `index` and `index + 1` (cyclically) of a component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StrandPos {
    pub component: usize,
    pub index: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveSite {
    /// R1 insertion point.
    Arc(ArcPos),
    /// R1 deletion: the kink occupies visits `index`, `index + 1`.
    Kink(StrandPos),
    /// R2 insertion. For classical moves `first` passes over `second`.
    /// The first strand gets `p, q`; the second gets `p, q`, or `q, p` when
    /// `antiparallel`. `p` has sign (or bit) `lead`, `q` the opposite. When
    /// both arcs coincide the two parts are concatenated, the second
    /// strand's part first if `second_first`.
    ArcPair { first: ArcPos, second: ArcPos, antiparallel: bool, lead: Sign, second_first: bool },
    /// R2 deletion. For classical moves `first` holds the over visits.
    Bigon { first: StrandPos, second: StrandPos },
    /// R3: three disjoint adjacent pairs covering three crossings pairwise.
    Triangle { strands: [StrandPos; 3] },
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = |s: &StrandPos| format!("{}:{}", s.component, s.index);
        match self {
            MoveSite::Arc(a) => write!(f, "arc {}:{}", a.component, a.index),
            MoveSite::Kink(s) => write!(f, "kink {}", p(s)),
            MoveSite::ArcPair { first, second, antiparallel, lead, second_first } => write!(
                f,
                "arcs {}:{} {}:{} {} lead {} {}",
                first.component,
                first.index,
                second.component,
                second.index,
                if *antiparallel { "antiparallel" } else { "parallel" },
                lead,
                if *second_first { "second-first" } else { "first-first" }
            ),
            MoveSite::Bigon { first, second } => write!(f, "bigon {} {}", p(first), p(second)),
            MoveSite::Triangle { strands } => {
                write!(f, "triangle {} {} {}", p(&strands[0]), p(&strands[1]), p(&strands[2]))
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("{kind} does not apply at {site}")]
    InvalidSite { kind: MoveKind, site: MoveSite },
}

fn comp_len(d: &Diagram, c: usize) -> usize {
    d.components()[c].visits().len()
}

fn pair(d: &Diagram, s: StrandPos) -> Option<(Visit, Visit)> {
    let v = d.components().get(s.component)?.visits();
    if v.len() < 2 || s.index >= v.len() {
        return None;
    }
    Some((v[s.index], v[(s.index + 1) % v.len()]))
}

fn positions(d: &Diagram, s: StrandPos) -> [(usize, usize); 2] {
    let n = comp_len(d, s.component);
    [(s.component, s.index), (s.component, (s.index + 1) % n)]
}

fn disjoint(d: &Diagram, ss: &[StrandPos]) -> bool {
    let mut seen = BTreeSet::new();
    ss.iter().flat_map(|s| positions(d, *s)).all(|p| seen.insert(p))
}

fn arcs(d: &Diagram) -> Vec<ArcPos> {
    d.components()
        .iter()
        .enumerate()
        .flat_map(|(c, comp)| (0..comp.visits().len().max(1)).map(move |index| ArcPos { component: c, index }))
        .collect()
}

fn valid_arc(d: &Diagram, a: ArcPos) -> bool {
    a.component < d.components().len() && a.index < comp_len(d, a.component).max(1)
}

/// All adjacent visit pairs of two distinct crossings.
fn adjacent_pairs(d: &Diagram) -> Vec<StrandPos> {
    let mut out = Vec::new();
    for (c, comp) in d.components().iter().enumerate() {
        let v = comp.visits();
        if v.len() < 2 {
            continue;
        }
        for i in 0..v.len() {
            // A 2-visit component has one arc pair read both ways; keep both,
            // they are different arcs.
            if v[i].crossing != v[(i + 1) % v.len()].crossing {
                out.push(StrandPos { component: c, index: i });
            }
        }
    }
    out
}

fn crossing_pair(d: &Diagram, s: StrandPos) -> (CrossingId, CrossingId) {
    let (a, b) = pair(d, s).expect("adjacent pair");
    (a.crossing.min(b.crossing), a.crossing.max(b.crossing))
}

/// Sites of `kind` in `d`, in a deterministic order.
pub fn enumerate_sites(d: &Diagram, kind: MoveKind) -> Vec<MoveSite> {
    match kind {
        MoveKind::ClassicalR1 { op: Op::Insert, .. } => arcs(d).into_iter().map(MoveSite::Arc).collect(),
        MoveKind::ClassicalR2 { op: Op::Insert } | MoveKind::FlatR2 { op: Op::Insert } => {
            let arcs = arcs(d);
            let mut out = Vec::new();
            for &first in &arcs {
                for &second in &arcs {
                    for antiparallel in [false, true] {
                        for lead in [Sign::Pos, Sign::Neg] {
                            let orders: &[bool] = if first == second { &[false, true] } else { &[false] };
                            for &second_first in orders {
                                out.push(MoveSite::ArcPair { first, second, antiparallel, lead, second_first });
                            }
                        }
                    }
                }
            }
            out
        }
        _ => candidate_sites(d, kind).into_iter().filter(|s| check(d, kind, s)).collect(),
    }
}

fn candidate_sites(d: &Diagram, kind: MoveKind) -> Vec<MoveSite> {
    match kind {
        MoveKind::ClassicalR1 { .. } => d
            .components()
            .iter()
            .enumerate()
            .flat_map(|(c, comp)| (0..comp.visits().len()).map(move |index| StrandPos { component: c, index }))
            .filter(|s| comp_len(d, s.component) >= 2)
            .map(MoveSite::Kink)
            .collect(),
        MoveKind::ClassicalR2 { .. } | MoveKind::FlatR2 { .. } => {
            let mut by_pair: BTreeMap<(CrossingId, CrossingId), Vec<StrandPos>> = BTreeMap::new();
            for s in adjacent_pairs(d) {
                by_pair.entry(crossing_pair(d, s)).or_default().push(s);
            }
            let mut out = Vec::new();
            for list in by_pair.values() {
                for &first in list {
                    for &second in list {
                        if first != second {
                            out.push(MoveSite::Bigon { first, second });
                        }
                    }
                }
            }
            out
        }
        _ => triangles(d).into_iter().map(|strands| MoveSite::Triangle { strands }).collect(),
    }
}

/// Disjoint triples of adjacent pairs covering `{x,y}, {x,z}, {y,z}`.
fn triangles(d: &Diagram) -> Vec<[StrandPos; 3]> {
    let mut by_pair: BTreeMap<(CrossingId, CrossingId), Vec<StrandPos>> = BTreeMap::new();
    let mut nbrs: BTreeMap<CrossingId, BTreeSet<CrossingId>> = BTreeMap::new();
    for s in adjacent_pairs(d) {
        let (x, y) = crossing_pair(d, s);
        by_pair.entry((x, y)).or_default().push(s);
        nbrs.entry(x).or_default().insert(y);
        nbrs.entry(y).or_default().insert(x);
    }
    let mut out = Vec::new();
    for (&(x, y), xy) in &by_pair {
        for &z in nbrs[&x].intersection(&nbrs[&y]) {
            if z <= y {
                continue;
            }
            for &a in xy {
                for &b in &by_pair[&(x, z)] {
                    for &c in &by_pair[&(y, z)] {
                        if disjoint(d, &[a, b, c]) {
                            out.push([a, b, c]);
                        }
                    }
                }
            }
        }
    }
    out
}

fn classical_sign(d: &Diagram, id: CrossingId) -> Option<Sign> {
    match d.kind(id)? {
        CrossingKind::Classical(s) => Some(s),
        CrossingKind::Flat(_) => None,
    }
}

fn is_flat(d: &Diagram, id: CrossingId) -> bool {
    matches!(d.kind(id), Some(CrossingKind::Flat(_)))
}

/// Whether `kind` applies at `site`.
pub fn check(d: &Diagram, kind: MoveKind, site: &MoveSite) -> bool {
    match (kind, site) {
        (MoveKind::ClassicalR1 { op: Op::Insert, .. }, MoveSite::Arc(a)) => valid_arc(d, *a),
        (MoveKind::ClassicalR1 { op: Op::Delete, sign, order }, MoveSite::Kink(s)) => {
            let Some((u, v)) = pair(d, *s) else { return false };
            let want = match order {
                KinkOrder::OverFirst => (Role::Over, Role::Under),
                KinkOrder::UnderFirst => (Role::Under, Role::Over),
            };
            u.crossing == v.crossing && (u.role, v.role) == want && classical_sign(d, u.crossing) == Some(sign)
        }
        (
            MoveKind::ClassicalR2 { op: Op::Insert } | MoveKind::FlatR2 { op: Op::Insert },
            MoveSite::ArcPair { first, second, second_first, .. },
        ) => valid_arc(d, *first) && valid_arc(d, *second) && (!*second_first || first == second),
        (MoveKind::ClassicalR2 { op: Op::Delete }, MoveSite::Bigon { first, second }) => {
            let (Some((a, b)), Some((c, e))) = (pair(d, *first), pair(d, *second)) else {
                return false;
            };
            if !disjoint(d, &[*first, *second]) {
                return false;
            }
            let (p, q) = (a.crossing, b.crossing);
            let (Some(sp), Some(sq)) = (classical_sign(d, p), classical_sign(d, q)) else {
                return false;
            };
            p != q
                && sp != sq
                && a.role == Role::Over
                && b.role == Role::Over
                && c.role == Role::Under
                && e.role == Role::Under
                && BTreeSet::from([c.crossing, e.crossing]) == BTreeSet::from([p, q])
        }
        (MoveKind::FlatR2 { op: Op::Delete }, MoveSite::Bigon { first, second }) => {
            let (Some((a, b)), Some((c, e))) = (pair(d, *first), pair(d, *second)) else {
                return false;
            };
            let (p, q) = (a.crossing, b.crossing);
            p != q
                && is_flat(d, p)
                && is_flat(d, q)
                && disjoint(d, &[*first, *second])
                && BTreeSet::from([c.crossing, e.crossing]) == BTreeSet::from([p, q])
        }
        (MoveKind::ClassicalR3 | MoveKind::FlatR3 | MoveKind::MixedR3, MoveSite::Triangle { strands }) => {
            check_triangle(d, kind, strands)
        }
        _ => false,
    }
}

fn check_triangle(d: &Diagram, kind: MoveKind, strands: &[StrandPos; 3]) -> bool {
    let Some(pairs) = strands.iter().map(|s| pair(d, *s)).collect::<Option<Vec<_>>>() else {
        return false;
    };
    if !disjoint(d, strands) {
        return false;
    }
    let mut ids: BTreeSet<CrossingId> = BTreeSet::new();
    let mut covered: BTreeSet<(CrossingId, CrossingId)> = BTreeSet::new();
    for (a, b) in &pairs {
        if a.crossing == b.crossing {
            return false;
        }
        ids.extend([a.crossing, b.crossing]);
        covered.insert((a.crossing.min(b.crossing), a.crossing.max(b.crossing)));
    }
    if ids.len() != 3 || covered.len() != 3 {
        return false;
    }
    let flats = ids.iter().filter(|&&id| is_flat(d, id)).count();
    match kind {
        MoveKind::FlatR3 => flats == 3,
        MoveKind::MixedR3 => flats == 2,
        MoveKind::ClassicalR3 => flats == 0 && classical_triangle_ok(d, &pairs),
        _ => false,
    }
}

/// Whether three strands, each given by its two visits in order, form a
/// classical R3 triangle (see the module docs).
fn classical_triangle_ok(d: &Diagram, pairs: &[(Visit, Visit)]) -> bool {
    let mut overs: Vec<usize> = pairs
        .iter()
        .map(|(a, b)| [a, b].iter().filter(|v| v.role == Role::Over).count())
        .collect();
    overs.sort_unstable();
    if overs != [0, 1, 2] {
        return false;
    }
    let ids: Vec<CrossingId> = pairs
        .iter()
        .flat_map(|(a, b)| [a.crossing, b.crossing])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    // Corners of a triangle in both orientations.
    let corners: [[i64; 2]; 3] = [[0, 0], [1, 0], [0, 1]];
    [false, true].into_iter().any(|mirror| {
        let at = |id: CrossingId| {
            let k = ids.iter().position(|&x| x == id).unwrap();
            let p = corners[k];
            if mirror {
                [p[1], p[0]]
            } else {
                p
            }
        };
        let dir = |(a, b): &(Visit, Visit)| {
            let (p, q) = (at(a.crossing), at(b.crossing));
            [q[0] - p[0], q[1] - p[1]]
        };
        ids.iter().all(|&id| {
            let mut over = None;
            let mut under = None;
            for pr in pairs {
                for v in [pr.0, pr.1] {
                    if v.crossing == id {
                        match v.role {
                            Role::Over => over = Some(dir(pr)),
                            _ => under = Some(dir(pr)),
                        }
                    }
                }
            }
            let (o, u) = (over.unwrap(), under.unwrap());
            let cross = o[0] * u[1] - o[1] * u[0];
            Sign::from_value(cross.signum() as i32) == classical_sign(d, id)
        })
    })
}

/// Applies `kind` at `site`.
pub fn apply(d: &Diagram, kind: MoveKind, site: &MoveSite) -> Result<Diagram, MoveError> {
    if !check(d, kind, site) {
        return Err(MoveError::InvalidSite { kind, site: *site });
    }
    let mut table = d.crossings().clone();
    let mut comps: Vec<Vec<Visit>> = d.components().iter().map(|c| c.visits().to_vec()).collect();
    match (kind, site) {
        (MoveKind::ClassicalR1 { sign, order, .. }, MoveSite::Arc(a)) => {
            let x = d.fresh_id();
            table.insert(x, CrossingKind::Classical(sign));
            let part = match order {
                KinkOrder::OverFirst => [Visit::over(x), Visit::under(x)],
                KinkOrder::UnderFirst => [Visit::under(x), Visit::over(x)],
            };
            insert_at(&mut comps, *a, &part);
        }
        (MoveKind::ClassicalR1 { .. }, MoveSite::Kink(s)) => {
            let (v, _) = pair(d, *s).unwrap();
            table.remove(&v.crossing);
            remove_positions(&mut comps, &positions(d, *s));
        }
        (
            MoveKind::ClassicalR2 { .. } | MoveKind::FlatR2 { .. },
            MoveSite::ArcPair { first, second, antiparallel, lead, second_first },
        ) => {
            let p = d.fresh_id();
            let q = p + 1;
            let classical = matches!(kind, MoveKind::ClassicalR2 { .. });
            let mk1 = if classical { Visit::over } else { Visit::flat };
            let mk2 = if classical { Visit::under } else { Visit::flat };
            let wrap = |s: Sign| if classical { CrossingKind::Classical(s) } else { CrossingKind::Flat(s) };
            table.insert(p, wrap(*lead));
            table.insert(q, wrap(lead.flip()));
            let part1 = vec![mk1(p), mk1(q)];
            let part2 = if *antiparallel { vec![mk2(q), mk2(p)] } else { vec![mk2(p), mk2(q)] };
            if first == second {
                let joined: Vec<Visit> =
                    if *second_first { [part2, part1].concat() } else { [part1, part2].concat() };
                insert_at(&mut comps, *first, &joined);
            } else if (first.component, first.index) > (second.component, second.index) {
                insert_at(&mut comps, *first, &part1);
                insert_at(&mut comps, *second, &part2);
            } else {
                insert_at(&mut comps, *second, &part2);
                insert_at(&mut comps, *first, &part1);
            }
        }
        (MoveKind::ClassicalR2 { .. } | MoveKind::FlatR2 { .. }, MoveSite::Bigon { first, second }) => {
            let (a, b) = pair(d, *first).unwrap();
            table.remove(&a.crossing);
            table.remove(&b.crossing);
            let mut pos = positions(d, *first).to_vec();
            pos.extend(positions(d, *second));
            remove_positions(&mut comps, &pos);
        }
        (_, MoveSite::Triangle { strands }) => {
            for s in strands {
                let [(c, i), (_, j)] = positions(d, *s);
                comps[c].swap(i, j);
            }
        }
        _ => unreachable!("check() accepted an unmatched kind/site"),
    }
    let out = Diagram::new(table, comps.into_iter().map(Component::from_visits).collect());
    debug_assert!(out.is_valid(), "{kind} at {site} produced an invalid diagram");
    Ok(out)
}

fn insert_at(comps: &mut [Vec<Visit>], a: ArcPos, part: &[Visit]) {
    let v = &mut comps[a.component];
    let at = if v.is_empty() { 0 } else { a.index + 1 };
    v.splice(at..at, part.iter().copied());
}

fn remove_positions(comps: &mut [Vec<Visit>], pos: &[(usize, usize)]) {
    let mut sorted = pos.to_vec();
    sorted.sort_unstable();
    for &(c, i) in sorted.iter().rev() {
        comps[c].remove(i);
    }
}
