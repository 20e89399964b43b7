//! State-sum evaluation of the flat-virtual Jones polynomial
//!
//! `X(D) = (-a)^(-3w) * sum_s a^(alpha - beta) * (-a^2 - a^-2)^gamma_even * b^gamma_odd`
//!
//! where the sum runs over all 0/1 choices at classical crossings, and
//! `gamma_even` / `gamma_odd` count the loops of the smoothing that pass
//! through an even / odd number of distinct flat crossings.
//!
//! Smoothing convention: state 0 is the Kauffman A-smoothing. At a positive
//! crossing that is the orientation-respecting smoothing; at a negative one
//! it is the other.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

use crate::diagram::{CrossingId, CrossingKind, Diagram, Role, Sign};
use crate::poly::Poly2;

pub const DEFAULT_STATE_CAP: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StateSumError {
    #[error("state/crossing-set mismatch")]
    StateMismatch,
    #[error("diagram has {classical} classical crossings, above the cap of {cap}")]
    CapExceeded { classical: usize, cap: usize },
    #[error("worker count must be at least 1")]
    NoWorkers,
}

/// A choice of smoothing (0 or 1) at every classical crossing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct State {
    bits: BTreeMap<CrossingId, u8>,
}

impl State {
    pub fn new(bits: BTreeMap<CrossingId, u8>) -> Option<Self> {
        bits.values().all(|&b| b <= 1).then_some(State { bits })
    }

    /// The `index`-th state in lexicographic order over `ids` (sorted
    /// ascending); the first id is the most significant bit.
    pub fn from_index(ids: &[CrossingId], index: u64) -> Self {
        let n = ids.len();
        let bits = ids
            .iter()
            .enumerate()
            .map(|(k, &id)| (id, ((index >> (n - 1 - k)) & 1) as u8))
            .collect();
        State { bits }
    }

    pub fn bit(&self, id: CrossingId) -> Option<u8> {
        self.bits.get(&id).copied()
    }

    pub fn bits(&self) -> &BTreeMap<CrossingId, u8> {
        &self.bits
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Loop {
    /// Flat crossings met by the loop, each listed once.
    pub flats: BTreeSet<CrossingId>,
    /// Number of crossing-to-crossing arcs of the diagram on this loop.
    pub arcs: usize,
}

/// Loops of a smoothed diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopSet {
    pub loops: Vec<Loop>,
    pub alpha: usize,
    pub beta: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct GammaCounts {
    pub alpha: usize,
    pub beta: usize,
    pub gamma_even: usize,
    pub gamma_odd: usize,
}

pub fn gamma(ls: &LoopSet) -> GammaCounts {
    let gamma_odd = ls.loops.iter().filter(|l| l.flats.len() % 2 == 1).count();
    GammaCounts {
        alpha: ls.alpha,
        beta: ls.beta,
        gamma_even: ls.loops.len() - gamma_odd,
        gamma_odd,
    }
}

/// Where a flat crossing visit sits once classical crossings are cut open.
#[derive(Clone, Copy, Debug)]
enum Site {
    Arc(usize),
    Closed(usize),
}

#[derive(Clone, Copy, Debug)]
struct Ends {
    sign: Sign,
    over_in: usize,
    over_out: usize,
    under_in: usize,
    under_out: usize,
}

/// Half-edge view of a diagram: the arcs between consecutive classical
/// visits, the classical crossings' four ends, and the flat crossings'
/// positions.
struct Compiled {
    classical: Vec<CrossingId>,
    ends: Vec<Ends>,
    arc_count: usize,
    /// Components without classical visits; each is a loop in every state.
    closed: Vec<Vec<CrossingId>>,
    flats: Vec<(CrossingId, Site, Site)>,
}

impl Compiled {
    fn new(d: &Diagram) -> Self {
        let classical = d.classical_ids();
        let index: HashMap<CrossingId, usize> =
            classical.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let mut over_in = vec![usize::MAX; classical.len()];
        let mut over_out = vec![usize::MAX; classical.len()];
        let mut under_in = vec![usize::MAX; classical.len()];
        let mut under_out = vec![usize::MAX; classical.len()];
        let mut flat_sites: BTreeMap<CrossingId, Vec<Site>> = BTreeMap::new();
        let mut closed = Vec::new();
        let mut arc_count = 0;

        for comp in d.components() {
            let visits = comp.visits();
            let Some(start) = visits.iter().position(|v| v.role != Role::FlatPass) else {
                let ci = closed.len();
                let flats: Vec<CrossingId> = visits.iter().map(|v| v.crossing).collect();
                for &f in &flats {
                    flat_sites.entry(f).or_default().push(Site::Closed(ci));
                }
                closed.push(flats);
                continue;
            };
            let n = visits.len();
            // Arc ids for this component: the arc leaving the k-th classical
            // visit (counted from `start`) is `first + k`.
            let first = arc_count;
            let classical_here = visits.iter().filter(|v| v.role != Role::FlatPass).count();
            let mut current = first + classical_here - 1; // arc arriving at `start`
            for step in 0..n {
                let v = visits[(start + step) % n];
                match v.role {
                    Role::FlatPass => {
                        flat_sites.entry(v.crossing).or_default().push(Site::Arc(current));
                    }
                    role => {
                        let k = index[&v.crossing];
                        let incoming = current;
                        current = if step == 0 { first } else { current + 1 };
                        if role == Role::Over {
                            over_in[k] = incoming;
                            over_out[k] = current;
                        } else {
                            under_in[k] = incoming;
                            under_out[k] = current;
                        }
                    }
                }
            }
            arc_count += classical_here;
        }

        let ends = classical
            .iter()
            .enumerate()
            .map(|(k, id)| {
                let Some(CrossingKind::Classical(sign)) = d.kind(*id) else { unreachable!() };
                assert!(
                    over_in[k] != usize::MAX && under_in[k] != usize::MAX,
                    "diagram must be valid: classical crossing {id} lacks a visit"
                );
                Ends {
                    sign,
                    over_in: over_in[k],
                    over_out: over_out[k],
                    under_in: under_in[k],
                    under_out: under_out[k],
                }
            })
            .collect();
        let flats = flat_sites
            .into_iter()
            .map(|(id, s)| {
                assert!(s.len() == 2, "diagram must be valid: flat crossing {id} needs two visits");
                (id, s[0], s[1])
            })
            .collect();
        Compiled { classical, ends, arc_count, closed, flats }
    }

    fn n(&self) -> usize {
        self.classical.len()
    }
}

/// Reusable union-find scratch space for one worker.
struct Scratch {
    parent: Vec<usize>,
    parity: Vec<bool>,
    loop_of: Vec<usize>,
}

impl Scratch {
    fn new(c: &Compiled) -> Self {
        Scratch {
            parent: vec![0; c.arc_count],
            parity: vec![false; c.arc_count + c.closed.len()],
            loop_of: vec![usize::MAX; c.arc_count],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    /// Smooths according to `bit(k)` for the k-th classical crossing and
    /// returns `(beta, gamma_even, gamma_odd)`.
    fn evaluate(&mut self, c: &Compiled, bit: impl Fn(usize) -> bool) -> (usize, usize, usize) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i;
        }
        let mut beta = 0;
        for (k, e) in c.ends.iter().enumerate() {
            let b = bit(k);
            beta += b as usize;
            let oriented = b == (e.sign == Sign::Neg);
            if oriented {
                self.union(e.over_in, e.under_out);
                self.union(e.under_in, e.over_out);
            } else {
                self.union(e.over_in, e.under_in);
                self.union(e.over_out, e.under_out);
            }
        }
        // Loops are numbered: roots first (by arc index), then closed components.
        let mut loops = 0;
        for a in 0..c.arc_count {
            if self.find(a) == a {
                self.loop_of[a] = loops;
                loops += 1;
            }
        }
        let total = loops + c.closed.len();
        self.parity[..total].iter_mut().for_each(|p| *p = false);
        for &(_, s1, s2) in &c.flats {
            let l1 = self.loop_index(s1, loops);
            let l2 = self.loop_index(s2, loops);
            self.parity[l1] ^= true;
            if l2 != l1 {
                self.parity[l2] ^= true;
            }
        }
        let odd = self.parity[..total].iter().filter(|p| **p).count();
        (beta, total - odd, odd)
    }

    fn loop_index(&mut self, s: Site, arc_loops: usize) -> usize {
        match s {
            Site::Arc(a) => {
                let r = self.find(a);
                self.loop_of[r]
            }
            Site::Closed(ci) => arc_loops + ci,
        }
    }
}

/// Smooths every classical crossing of `d` per `state`.
pub fn smooth(d: &Diagram, state: &State) -> Result<LoopSet, StateSumError> {
    let c = Compiled::new(d);
    if state.bits.len() != c.n() || c.classical.iter().any(|id| !state.bits.contains_key(id)) {
        return Err(StateSumError::StateMismatch);
    }
    let mut s = Scratch::new(&c);
    let (beta, _, _) = s.evaluate(&c, |k| state.bits[&c.classical[k]] == 1);
    let mut loops: Vec<Loop> = Vec::new();
    let mut root_loop: BTreeMap<usize, usize> = BTreeMap::new();
    for a in 0..c.arc_count {
        let r = s.find(a);
        let li = *root_loop.entry(r).or_insert_with(|| {
            loops.push(Loop { flats: BTreeSet::new(), arcs: 0 });
            loops.len() - 1
        });
        loops[li].arcs += 1;
    }
    let arc_loops = loops.len();
    for _ in &c.closed {
        loops.push(Loop { flats: BTreeSet::new(), arcs: 1 });
    }
    for &(id, s1, s2) in &c.flats {
        for site in [s1, s2] {
            let li = match site {
                Site::Arc(a) => root_loop[&s.find(a)],
                Site::Closed(ci) => arc_loops + ci,
            };
            loops[li].flats.insert(id);
        }
    }
    Ok(LoopSet { loops, alpha: c.n() - beta, beta })
}

/// `a^(alpha - beta) * (-a^2 - a^-2)^gamma_even * b^gamma_odd`.
pub fn state_contribution(g: &GammaCounts) -> Poly2 {
    Poly2::loop_value()
        .pow(g.gamma_even as u32)
        .mul_monomial(&BigInt::from(1), g.alpha as i32 - g.beta as i32, g.gamma_odd as u32)
}

/// The normalization `(-a)^(-3 w(D))`.
pub fn prefactor(d: &Diagram) -> Poly2 {
    Poly2::neg_a_pow(-3 * d.writhe())
}

type Tally = HashMap<(usize, usize, usize), u64>;

fn tally_range(c: &Compiled, range: std::ops::Range<u64>) -> Tally {
    let n = c.n();
    let mut s = Scratch::new(c);
    let mut t = Tally::new();
    for idx in range {
        let key = s.evaluate(c, |k| (idx >> (n - 1 - k)) & 1 == 1);
        *t.entry(key).or_default() += 1;
    }
    t
}

fn assemble(d: &Diagram, n: usize, tally: BTreeMap<(usize, usize, usize), u64>) -> Poly2 {
    let max_even = tally.keys().map(|k| k.1).max().unwrap_or(0);
    let mut powers = vec![Poly2::one()];
    for _ in 0..max_even {
        let next = powers.last().unwrap() * &Poly2::loop_value();
        powers.push(next);
    }
    let mut body = Poly2::zero();
    for ((beta, even, odd), count) in tally {
        let a_shift = n as i32 - 2 * beta as i32;
        body += &powers[even].mul_monomial(&BigInt::from(count), a_shift, odd as u32);
    }
    &prefactor(d) * &body
}

const CHUNK_BITS: usize = 10;

/// Evaluates the state sum with `workers` threads. The result does not
/// depend on the worker count.
pub fn flat_virtual_jones_with(d: &Diagram, workers: usize) -> Result<Poly2, StateSumError> {
    if workers == 0 {
        return Err(StateSumError::NoWorkers);
    }
    let c = Compiled::new(d);
    let n = c.n();
    assert!(n < 64, "state enumeration supports fewer than 64 classical crossings");
    let total: u64 = 1 << n;
    let chunk: u64 = 1 << CHUNK_BITS.min(n);
    let ranges: Vec<_> = (0..total / chunk).map(|i| i * chunk..(i + 1) * chunk).collect();

    let merge = |mut acc: Tally, t: Tally| {
        for (k, v) in t {
            *acc.entry(k).or_default() += v;
        }
        acc
    };
    let tally = if workers == 1 || ranges.len() == 1 {
        ranges.into_iter().map(|r| tally_range(&c, r)).fold(Tally::new(), merge)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("failed to start worker pool");
        pool.install(|| {
            ranges
                .into_par_iter()
                .map(|r| tally_range(&c, r))
                .reduce(Tally::new, merge)
        })
    };
    Ok(assemble(d, n, tally.into_iter().collect()))
}

/// The flat-virtual Jones polynomial of a valid diagram, single-threaded.
///
/// Cost is `2^c` smoothings for `c` classical crossings.
pub fn flat_virtual_jones(d: &Diagram) -> Poly2 {
    flat_virtual_jones_with(d, 1).expect("one worker is always allowed")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateRow {
    pub state: State,
    pub counts: GammaCounts,
    /// The summand before the `(-a)^(-3w)` prefactor.
    pub contribution: Poly2,
}

/// Every state with its counts and summand, in lexicographic state order.
pub fn state_table(d: &Diagram, cap: usize) -> Result<Vec<StateRow>, StateSumError> {
    let c = Compiled::new(d);
    let n = c.n();
    if n > cap {
        return Err(StateSumError::CapExceeded { classical: n, cap });
    }
    let mut s = Scratch::new(&c);
    Ok((0..1u64 << n)
        .map(|idx| {
            let (beta, gamma_even, gamma_odd) = s.evaluate(&c, |k| (idx >> (n - 1 - k)) & 1 == 1);
            let counts = GammaCounts { alpha: n - beta, beta, gamma_even, gamma_odd };
            StateRow {
                state: State::from_index(&c.classical, idx),
                contribution: state_contribution(&counts),
                counts,
            }
        })
        .collect())
}

/// Number of loops in every state, flat parities ignored. Used by tests
/// and by the degree bound.
pub fn loop_count_range(d: &Diagram) -> (usize, usize) {
    let c = Compiled::new(d);
    let n = c.n();
    let mut s = Scratch::new(&c);
    (0..1u64 << n)
        .map(|idx| {
            let (_, e, o) = s.evaluate(&c, |k| (idx >> (n - 1 - k)) & 1 == 1);
            e + o
        })
        .fold((usize::MAX, 0), |(lo, hi), l| (lo.min(l), hi.max(l)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{Component, CrossingKind, Visit};

    fn kink(sign: Sign) -> Diagram {
        Diagram::new(
            [(1, CrossingKind::Classical(sign))].into(),
            vec![Component::Strand(vec![Visit::over(1), Visit::under(1)])],
        )
    }

    #[test]
    fn unknot() {
        let d = Diagram::unknot();
        assert_eq!(flat_virtual_jones(&d), Poly2::loop_value());
        let ls = smooth(&d, &State::new(BTreeMap::new()).unwrap()).unwrap();
        assert_eq!(ls.loops.len(), 1);
        assert!(ls.loops[0].flats.is_empty());
        let table = state_table(&d, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(table.len(), 1);
        assert_eq!(table[0].contribution.to_string(), "-a^-2 - a^2");
    }

    #[test]
    fn empty_diagram_is_one() {
        assert_eq!(flat_virtual_jones(&Diagram::empty()), Poly2::one());
    }

    #[test]
    fn kink_smoothings_split_and_merge() {
        for sign in [Sign::Pos, Sign::Neg] {
            let d = kink(sign);
            let counts: Vec<usize> = [0u8, 1]
                .iter()
                .map(|&b| {
                    let st = State::new([(1, b)].into()).unwrap();
                    smooth(&d, &st).unwrap().loops.len()
                })
                .collect();
            // A-smoothing of a positive kink splits; of a negative kink merges.
            let expect = if sign == Sign::Pos { vec![2, 1] } else { vec![1, 2] };
            assert_eq!(counts, expect);
            assert_eq!(flat_virtual_jones(&d), Poly2::loop_value());
            assert_eq!(state_table(&d, 24).unwrap().len(), 2);
        }
    }

    #[test]
    fn state_mismatch() {
        let d = kink(Sign::Pos);
        let bad = State::new([(2, 0)].into()).unwrap();
        assert_eq!(smooth(&d, &bad), Err(StateSumError::StateMismatch));
        let empty = State::new(BTreeMap::new()).unwrap();
        assert_eq!(smooth(&d, &empty), Err(StateSumError::StateMismatch));
    }

    #[test]
    fn gamma_parity_by_definition() {
        let set = |ids: &[CrossingId]| Loop { flats: ids.iter().copied().collect(), arcs: 1 };
        let ls = LoopSet { loops: vec![set(&[]), set(&[1, 2]), set(&[1]), set(&[2])], alpha: 0, beta: 0 };
        let g = gamma(&ls);
        assert_eq!((g.gamma_even, g.gamma_odd), (2, 2));
        let one = LoopSet { loops: vec![set(&[])], alpha: 0, beta: 0 };
        assert_eq!((gamma(&one).gamma_even, gamma(&one).gamma_odd), (1, 0));
    }

    #[test]
    fn flat_self_crossing_counts_once() {
        // Flat curl on a circle: one loop meeting one flat crossing.
        let d = Diagram::new(
            [(1, CrossingKind::Flat(Sign::Pos))].into(),
            vec![Component::Strand(vec![Visit::flat(1), Visit::flat(1)])],
        );
        assert_eq!(flat_virtual_jones(&d), Poly2::b());
    }

    #[test]
    fn cap_is_enforced() {
        let d = kink(Sign::Pos);
        assert_eq!(
            state_table(&d, 0).unwrap_err(),
            StateSumError::CapExceeded { classical: 1, cap: 0 }
        );
    }

    #[test]
    fn zero_workers_rejected() {
        assert_eq!(flat_virtual_jones_with(&Diagram::unknot(), 0), Err(StateSumError::NoWorkers));
    }

    #[test]
    fn lexicographic_state_order() {
        let s = State::from_index(&[3, 5, 9], 0b011);
        assert_eq!(s.bit(3), Some(0));
        assert_eq!(s.bit(5), Some(1));
        assert_eq!(s.bit(9), Some(1));
    }
}
