//! Flat-virtual diagrams from curves on the cylinder and the torus.
//!
//! Coordinates are exact rationals. Angles are measured in turns, so a
//! periodic coordinate lives in `[0, 1)`. Each segment of a closed
//! polygonal curve takes the shortest way around (its periodic extent is
//! below half a turn), which makes the curve unambiguous on the surface.
//!
//! Given a finite group of translations (rotations by `k/d` turns on the
//! cylinder, a lattice `(k1/d1, k2/d2)` on the torus), every unordered pair
//! of curve points that differ by a nonzero group element becomes a flat
//! crossing visited at both points. Ordinary self-intersections of the
//! projection become classical crossings, the larger height passing over.

mod curvefile;
pub mod geom;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use curvefile::{parse_curve_file, serialize_curve_file, CurveFile};
use geom::{approx, cross, meet, q, reduce, Meet, Q};

use crate::diagram::{Component, CrossingId, CrossingKind, Diagram, Sign, Visit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    /// `S^1 x [0, 1]`: first coordinate periodic, second is the height `z`.
    Cylinder,
    /// `S^1 x S^1`: both coordinates periodic.
    Torus,
}

impl Space {
    fn periodic(self) -> [bool; 2] {
        match self {
            Space::Cylinder => [true, false],
            Space::Torus => [true, true],
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Space::Cylinder => "cylinder",
            Space::Torus => "torus",
        })
    }
}

/// A vertex `(u, v, h)`: `(theta, z)` on the cylinder, `(theta1, theta2)` on
/// the torus, and a height `h` that only decides over/under.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveVertex {
    pub u: Q,
    pub v: Q,
    pub h: Q,
}

impl CurveVertex {
    pub fn new(u: Q, v: Q, h: Q) -> Self {
        CurveVertex { u, v, h }
    }
}

/// Closed polygonal curves on a surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    space: Space,
    components: Vec<Vec<CurveVertex>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    /// Rotations of the cylinder by multiples of `1/d` turn.
    Cyclic { d: u32 },
    /// Translations of the torus by `(k1/d1, k2/d2)`.
    Lattice { d1: u32, d2: u32 },
}

impl GroupSpec {
    pub fn space(self) -> Space {
        match self {
            GroupSpec::Cyclic { .. } => Space::Cylinder,
            GroupSpec::Lattice { .. } => Space::Torus,
        }
    }

    pub fn order(self) -> u32 {
        match self {
            GroupSpec::Cyclic { d } => d,
            GroupSpec::Lattice { d1, d2 } => d1 * d2,
        }
    }

    /// All group elements except the identity, as translation vectors.
    pub fn nonzero_elements(self) -> Vec<[Q; 2]> {
        match self {
            GroupSpec::Cyclic { d } => {
                (1..d).map(|k| [q(k as i64, d as i64), Q::zero()]).collect()
            }
            GroupSpec::Lattice { d1, d2 } => (0..d1)
                .flat_map(|k1| (0..d2).map(move |k2| (k1, k2)))
                .filter(|&(k1, k2)| (k1, k2) != (0, 0))
                .map(|(k1, k2)| [q(k1 as i64, d1 as i64), q(k2 as i64, d2 as i64)])
                .collect(),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic { d } => write!(f, "{d}"),
            GroupSpec::Lattice { d1, d2 } => write!(f, "{d1} {d2}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PhiError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("group {group} does not act on the {space}")]
    SpaceMismatch { group: GroupSpec, space: Space },
    #[error("non-generic projection: {0}")]
    NonGenericProjection(String),
    #[error("non-generic with respect to subgroup: {0}")]
    NonGenericSubgroup(String),
}

impl PhiError {
    pub fn is_genericity(&self) -> bool {
        matches!(self, PhiError::NonGenericProjection(_) | PhiError::NonGenericSubgroup(_))
    }
}

/// Minimal lift of `b - a` for a periodic coordinate.
fn periodic_delta(a: &Q, b: &Q) -> Q {
    let r = reduce(&(b - a));
    if r > geom::half() {
        r - Q::one()
    } else {
        r
    }
}

impl Curve {
    /// Checks the vertex lists and reduces periodic coordinates into `[0, 1)`.
    pub fn new(space: Space, components: Vec<Vec<CurveVertex>>) -> Result<Self, PhiError> {
        let periodic = space.periodic();
        let mut out = Vec::with_capacity(components.len());
        for (ci, comp) in components.into_iter().enumerate() {
            if comp.len() < 2 {
                return Err(PhiError::InvalidCurve(format!(
                    "component {ci} needs at least 2 vertices"
                )));
            }
            let comp: Vec<CurveVertex> = comp
                .into_iter()
                .map(|p| CurveVertex {
                    u: if periodic[0] { reduce(&p.u) } else { p.u },
                    v: if periodic[1] { reduce(&p.v) } else { p.v },
                    h: p.h,
                })
                .collect();
            if space == Space::Cylinder {
                if let Some((k, p)) =
                    comp.iter().enumerate().find(|(_, p)| p.v.is_negative() || p.v > Q::one())
                {
                    return Err(PhiError::InvalidCurve(format!(
                        "component {ci} vertex {k}: z = {} outside [0, 1]",
                        p.v
                    )));
                }
            }
            for k in 0..comp.len() {
                let (a, b) = (&comp[k], &comp[(k + 1) % comp.len()]);
                let mut zero = true;
                for (axis, (x, y)) in [(&a.u, &b.u), (&a.v, &b.v)].into_iter().enumerate() {
                    if periodic[axis] {
                        let dlt = periodic_delta(x, y);
                        if dlt.abs() == geom::half() {
                            return Err(PhiError::InvalidCurve(format!(
                                "component {ci} segment {k} spans exactly half a turn; subdivide it"
                            )));
                        }
                        zero &= dlt.is_zero();
                    } else {
                        zero &= x == y;
                    }
                }
                if zero {
                    return Err(PhiError::InvalidCurve(format!(
                        "component {ci} segment {k} has zero length"
                    )));
                }
            }
            out.push(comp);
        }
        Ok(Curve { space, components: out })
    }

    /// Builds a curve from explicitly lifted vertices.
    ///
    /// Each component lists a closed polyline in the universal cover: its
    /// last vertex repeats the first one shifted by whole turns. Segments
    /// longer than half a turn are split into equal pieces.
    pub fn from_lifted(space: Space, components: Vec<Vec<CurveVertex>>) -> Result<Self, PhiError> {
        let subdivided = components
            .into_iter()
            .enumerate()
            .map(|(ci, c)| auto_subdivide(space, &c).map_err(|m| PhiError::InvalidCurve(format!("component {ci}: {m}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Curve::new(space, subdivided)
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn components(&self) -> &[Vec<CurveVertex>] {
        &self.components
    }

    /// Translates every vertex by `g` (in turns).
    pub fn translate(&self, g: &[Q; 2]) -> Curve {
        let comps = self
            .components
            .iter()
            .map(|c| {
                c.iter()
                    .map(|p| CurveVertex { u: &p.u + &g[0], v: &p.v + &g[1], h: p.h.clone() })
                    .collect()
            })
            .collect();
        Curve::new(self.space, comps).expect("translation preserves validity")
    }

    /// Splits every segment into `parts` equal pieces.
    pub fn subdivide(&self, parts: usize) -> Curve {
        assert!(parts >= 1);
        let comps = self
            .components
            .iter()
            .map(|c| {
                let segs = segments_of(self.space, c, 0);
                let mut out = Vec::new();
                for s in segs {
                    for k in 0..parts {
                        let t = q(k as i64, parts as i64);
                        let p = s.point(&t);
                        out.push(CurveVertex { u: p[0].clone(), v: p[1].clone(), h: s.height(&t) });
                    }
                }
                out
            })
            .collect();
        Curve::new(self.space, comps).expect("subdivision preserves validity")
    }

    fn segments(&self) -> Vec<Segment> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(ci, c)| segments_of(self.space, c, ci))
            .collect()
    }
}

/// See [`Curve::from_lifted`]. Returns the vertices with the closing
/// duplicate removed.
pub fn auto_subdivide(space: Space, lifted: &[CurveVertex]) -> Result<Vec<CurveVertex>, String> {
    let periodic = space.periodic();
    if lifted.len() < 3 {
        return Err("a lifted component needs at least 3 lines (last repeats the first)".into());
    }
    let (first, last) = (&lifted[0], &lifted[lifted.len() - 1]);
    for (axis, (a, b)) in [(&first.u, &last.u), (&first.v, &last.v)].into_iter().enumerate() {
        let diff = b - a;
        let closes = if periodic[axis] { diff.is_integer() } else { diff.is_zero() };
        if !closes {
            return Err("last vertex must repeat the first up to whole turns".into());
        }
    }
    if first.h != last.h {
        return Err("last vertex must repeat the first height".into());
    }
    let mut out = Vec::new();
    for w in lifted.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let du = &b.u - &a.u;
        let dv = &b.v - &a.v;
        let mut extent = Q::zero();
        for (axis, dlt) in [&du, &dv].into_iter().enumerate() {
            if periodic[axis] && dlt.abs() > extent {
                extent = dlt.abs();
            }
        }
        // pieces with extent strictly below 1/2
        let parts: num_bigint::BigInt = (extent * q(2, 1)).floor().to_integer() + 1;
        let parts: i64 = parts.try_into().map_err(|_| "segment too long".to_string())?;
        for k in 0..parts {
            let t = q(k, parts);
            out.push(CurveVertex {
                u: &a.u + &du * &t,
                v: &a.v + &dv * &t,
                h: &a.h + (&b.h - &a.h) * &t,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
struct Segment {
    comp: usize,
    idx: usize,
    start: [Q; 2],
    delta: [Q; 2],
    h0: Q,
    h1: Q,
}

impl Segment {
    fn point(&self, t: &Q) -> [Q; 2] {
        [&self.start[0] + &self.delta[0] * t, &self.start[1] + &self.delta[1] * t]
    }

    fn height(&self, t: &Q) -> Q {
        &self.h0 + (&self.h1 - &self.h0) * t
    }

    fn at(&self, t: &Q) -> CurvePoint {
        CurvePoint { component: self.comp, segment: self.idx, t: t.clone() }
    }
}

fn segments_of(space: Space, c: &[CurveVertex], comp: usize) -> Vec<Segment> {
    let periodic = space.periodic();
    (0..c.len())
        .map(|k| {
            let (a, b) = (&c[k], &c[(k + 1) % c.len()]);
            let d = |axis: usize, x: &Q, y: &Q| {
                if periodic[axis] {
                    periodic_delta(x, y)
                } else {
                    y - x
                }
            };
            Segment {
                comp,
                idx: k,
                start: [a.u.clone(), a.v.clone()],
                delta: [d(0, &a.u, &b.u), d(1, &a.v, &b.v)],
                h0: a.h.clone(),
                h1: b.h.clone(),
            }
        })
        .collect()
}

/// Lattice shifts that can bring two short segments together.
fn shifts(space: Space) -> Vec<[Q; 2]> {
    let one = [-1i64, 0, 1];
    match space {
        Space::Cylinder => one.iter().map(|&m| [q(m, 1), Q::zero()]).collect(),
        Space::Torus => one
            .iter()
            .flat_map(|&m| one.iter().map(move |&n| [q(m, 1), q(n, 1)]))
            .collect(),
    }
}

/// A point on a curve: component, segment, and parameter in `(0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CurvePoint {
    pub component: usize,
    pub segment: usize,
    pub t: Q,
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "component {} segment {} t={}", self.component, self.segment, self.t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalCrossing {
    pub over: CurvePoint,
    pub under: CurvePoint,
    /// Surface coordinates of the double point, periodic parts in `[0, 1)`.
    pub position: [Q; 2],
    pub sign: Sign,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalentPair {
    /// The smaller of the two points; `b = a + group_element`.
    pub a: CurvePoint,
    pub b: CurvePoint,
    pub group_element: [Q; 2],
    /// Sign of the cross product of the tangents at `a` and `b`.
    pub flat_bit: Sign,
}

#[derive(Clone, Debug)]
pub struct PhiOutput {
    pub diagram: Diagram,
    pub crossings: Vec<ClassicalCrossing>,
    pub pairs: Vec<EquivalentPair>,
    /// Set for the order-2 groups, whose images are claimed to be
    /// well defined up to the restricted move system.
    pub restricted_eligible: bool,
}

fn describe(space: Space, p: &[Q; 2]) -> String {
    let names = match space {
        Space::Cylinder => ("theta", "z"),
        Space::Torus => ("theta1", "theta2"),
    };
    let periodic = space.periodic();
    let show = |axis: usize, x: &Q| {
        let x = if periodic[axis] { reduce(x) } else { x.clone() };
        format!("{x} (~{})", approx(&x))
    };
    format!("({}={}, {}={})", names.0, show(0, &p[0]), names.1, show(1, &p[1]))
}

fn is_endpoint(x: &Q) -> bool {
    x.is_zero() || x.is_one()
}

fn sign_from(x: &Q) -> Sign {
    if x.is_positive() {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

fn adjacent(segs: &[Segment], counts: &[usize], i: usize, j: usize) -> (bool, bool) {
    // (j follows i, i follows j) along their component
    let (a, b) = (&segs[i], &segs[j]);
    if a.comp != b.comp {
        return (false, false);
    }
    let n = counts[a.comp];
    ((a.idx + 1) % n == b.idx, (b.idx + 1) % n == a.idx)
}

/// Classical crossings of the projection of `c`.
pub fn project_crossings(c: &Curve) -> Result<Vec<ClassicalCrossing>, PhiError> {
    let segs = c.segments();
    let counts: Vec<usize> = c.components.iter().map(Vec::len).collect();
    let shifts = shifts(c.space);
    let mut out = Vec::new();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let (ij, ji) = adjacent(&segs, &counts, i, j);
            for sh in &shifts {
                let p2 = geom::add(&segs[j].start, sh);
                match meet(&segs[i].start, &segs[i].delta, &p2, &segs[j].delta) {
                    Meet::None => {}
                    Meet::Overlap => {
                        let p = segs[i].point(&geom::half());
                        return Err(PhiError::NonGenericProjection(format!(
                            "segments overlap near {}",
                            describe(c.space, &p)
                        )));
                    }
                    Meet::Point { t, s } => {
                        let shared = (ij && t.is_one() && s.is_zero())
                            || (ji && t.is_zero() && s.is_one());
                        if shared {
                            continue;
                        }
                        let p = segs[i].point(&t);
                        if is_endpoint(&t) || is_endpoint(&s) {
                            return Err(PhiError::NonGenericProjection(format!(
                                "double point at a vertex {}",
                                describe(c.space, &p)
                            )));
                        }
                        let (hi, hj) = (segs[i].height(&t), segs[j].height(&s));
                        if hi == hj {
                            return Err(PhiError::NonGenericProjection(format!(
                                "equal heights at crossing {}",
                                describe(c.space, &p)
                            )));
                        }
                        let (over, under) = if hi > hj { (i, j) } else { (j, i) };
                        let (to, tu) = if hi > hj { (&t, &s) } else { (&s, &t) };
                        let sign = sign_from(&cross(&segs[over].delta, &segs[under].delta));
                        out.push(ClassicalCrossing {
                            over: segs[over].at(to),
                            under: segs[under].at(tu),
                            position: [
                                if c.space.periodic()[0] { reduce(&p[0]) } else { p[0].clone() },
                                if c.space.periodic()[1] { reduce(&p[1]) } else { p[1].clone() },
                            ],
                            sign,
                        });
                    }
                }
            }
        }
    }
    // A point of the curve may carry at most one crossing.
    let mut seen: BTreeSet<&CurvePoint> = BTreeSet::new();
    for x in &out {
        for p in [&x.over, &x.under] {
            if !seen.insert(p) {
                return Err(PhiError::NonGenericProjection(format!(
                    "multiple crossing at {}",
                    describe(c.space, &x.position)
                )));
            }
        }
    }
    out.sort_by(|x, y| std::cmp::min(&x.over, &x.under).cmp(std::cmp::min(&y.over, &y.under)));
    Ok(out)
}

fn check_space(c: &Curve, spec: GroupSpec) -> Result<(), PhiError> {
    if spec.space() != c.space {
        return Err(PhiError::SpaceMismatch { group: spec, space: c.space });
    }
    if spec.order() == 0 {
        return Err(PhiError::InvalidCurve("group orders must be positive".into()));
    }
    Ok(())
}

/// Unordered pairs of curve points differing by a nonzero group element.
pub fn find_equivalent_pairs(c: &Curve, spec: GroupSpec) -> Result<Vec<EquivalentPair>, PhiError> {
    check_space(c, spec)?;
    let segs = c.segments();
    let shifts = shifts(c.space);
    let periodic = c.space.periodic();
    let mut found: BTreeMap<(CurvePoint, CurvePoint), EquivalentPair> = BTreeMap::new();
    for g in spec.nonzero_elements() {
        let neg_g = [reduce(&-&g[0]), if periodic[1] { reduce(&-&g[1]) } else { -&g[1] }];
        for i in 0..segs.len() {
            for j in 0..segs.len() {
                // q on segment i equals p + g with p on segment j
                let moved = geom::add(&segs[j].start, &g);
                let moved = [reduce(&moved[0]), if periodic[1] { reduce(&moved[1]) } else { moved[1].clone() }];
                for sh in &shifts {
                    let p2 = geom::add(&moved, sh);
                    match meet(&segs[i].start, &segs[i].delta, &p2, &segs[j].delta) {
                        Meet::None => {}
                        Meet::Overlap => {
                            let x = segs[i].point(&geom::half());
                            return Err(PhiError::NonGenericSubgroup(format!(
                                "curve overlaps its translate by ({}, {}) near {}",
                                g[0],
                                g[1],
                                describe(c.space, &x)
                            )));
                        }
                        Meet::Point { t, s } => {
                            let qp = segs[i].point(&t);
                            let pp = segs[j].point(&s);
                            if is_endpoint(&t) || is_endpoint(&s) {
                                return Err(PhiError::NonGenericSubgroup(format!(
                                    "equivalent points {} and {} include a vertex",
                                    describe(c.space, &pp),
                                    describe(c.space, &qp)
                                )));
                            }
                            let p = segs[j].at(&s);
                            let qpt = segs[i].at(&t);
                            let (a, b, ga, da, db) = if p < qpt {
                                (p, qpt, g.clone(), &segs[j].delta, &segs[i].delta)
                            } else {
                                (qpt, p, neg_g.clone(), &segs[i].delta, &segs[j].delta)
                            };
                            let bit = sign_from(&cross(da, db));
                            found.entry((a.clone(), b.clone())).or_insert(EquivalentPair {
                                a,
                                b,
                                group_element: ga,
                                flat_bit: bit,
                            });
                        }
                    }
                }
            }
        }
    }
    let pairs: Vec<EquivalentPair> = found.into_values().collect();
    let mut seen: BTreeSet<&CurvePoint> = BTreeSet::new();
    for pr in &pairs {
        for pt in [&pr.a, &pr.b] {
            if !seen.insert(pt) {
                let s = &segs.iter().find(|s| s.comp == pt.component && s.idx == pt.segment).unwrap();
                return Err(PhiError::NonGenericSubgroup(format!(
                    "point {} is equivalent to more than one other point",
                    describe(c.space, &s.point(&pt.t))
                )));
            }
        }
    }
    Ok(pairs)
}

/// The flat-virtual diagram of `c` for the group `spec`.
pub fn phi(c: &Curve, spec: GroupSpec) -> Result<PhiOutput, PhiError> {
    check_space(c, spec)?;
    let crossings = project_crossings(c)?;
    let pairs = find_equivalent_pairs(c, spec)?;

    let on_crossing: BTreeSet<&CurvePoint> =
        crossings.iter().flat_map(|x| [&x.over, &x.under]).collect();
    for pr in &pairs {
        for pt in [&pr.a, &pr.b] {
            if on_crossing.contains(pt) {
                let x = crossings.iter().find(|x| &x.over == pt || &x.under == pt).unwrap();
                return Err(PhiError::NonGenericSubgroup(format!(
                    "equivalent point lies on the crossing at {}",
                    describe(c.space, &x.position)
                )));
            }
        }
    }

    let mut table: BTreeMap<CrossingId, CrossingKind> = BTreeMap::new();
    let mut events: BTreeMap<CurvePoint, Visit> = BTreeMap::new();
    let mut id: CrossingId = 0;
    for x in &crossings {
        id += 1;
        table.insert(id, CrossingKind::Classical(x.sign));
        events.insert(x.over.clone(), Visit::over(id));
        events.insert(x.under.clone(), Visit::under(id));
    }
    for pr in &pairs {
        id += 1;
        table.insert(id, CrossingKind::Flat(pr.flat_bit));
        events.insert(pr.a.clone(), Visit::flat(id));
        events.insert(pr.b.clone(), Visit::flat(id));
    }
    let mut components: Vec<Vec<Visit>> = vec![Vec::new(); c.components.len()];
    // BTreeMap order is (component, segment, t): traversal order.
    for (pt, v) in events {
        components[pt.component].push(v);
    }
    let diagram = Diagram::new(table, components.into_iter().map(Component::from_visits).collect());
    debug_assert!(diagram.is_valid());
    Ok(PhiOutput {
        diagram,
        crossings,
        pairs,
        restricted_eligible: spec.order() == 2,
    })
}

/// Number of points in `C ∩ (C + g)` summed over nonzero `g`. Independent
/// of the pairing logic; every unordered pair is seen twice.
pub fn translate_intersection_count(c: &Curve, spec: GroupSpec) -> Result<usize, PhiError> {
    check_space(c, spec)?;
    let mut total = 0;
    for g in spec.nonzero_elements() {
        let moved = c.translate(&g);
        let a = c.segments();
        let b = moved.segments();
        for s in &a {
            for r in &b {
                for sh in shifts(c.space) {
                    if let Meet::Point { .. } =
                        meet(&s.start, &s.delta, &geom::add(&r.start, &sh), &r.delta)
                    {
                        total += 1;
                    }
                }
            }
        }
    }
    Ok(total)
}

/// A random curve with `vertices` vertices per component, coordinates on a
/// grid of spacing `1/997`. Not necessarily generic; callers retry on
/// genericity errors.
pub fn random_curve<R: rand::Rng>(rng: &mut R, space: Space, components: usize, vertices: usize) -> Curve {
    const DEN: i64 = 997;
    loop {
        let comps = (0..components)
            .map(|_| {
                (0..vertices.max(3))
                    .map(|_| {
                        let u = q(rng.gen_range(0..DEN), DEN);
                        let v = match space {
                            Space::Cylinder => q(rng.gen_range(DEN / 10..DEN - DEN / 10), DEN),
                            Space::Torus => q(rng.gen_range(0..DEN), DEN),
                        };
                        CurveVertex::new(u, v, q(rng.gen_range(0..DEN), DEN))
                    })
                    .collect()
            })
            .collect();
        if let Ok(c) = Curve::new(space, comps) {
            return c;
        }
    }
}
