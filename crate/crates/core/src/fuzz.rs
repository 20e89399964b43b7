//! Randomized invariance checks for the move system.
//!
//! A trial draws a random valid diagram from its seed, applies random moves,
//! and checks after every step that the diagram stays valid and that the
//! component count and `X` do not change. Trial `i` of a run with seed `s`
//! uses seed `s + i`, so any trial can be replayed alone.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::{Component, CrossingId, CrossingKind, Diagram, Sign, Visit};
use crate::format::serialize_diagram;
use crate::moves::{apply, check, enumerate_sites, KinkOrder, MoveKind, MoveSite, Restriction};
use crate::statesum::flat_virtual_jones;

fn random_sign<R: Rng>(rng: &mut R) -> Sign {
    if rng.gen() {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

/// A uniformly shuffled Gauss code with `crossings` crossings on up to
/// `max_components` components; each crossing is flat with probability
/// `flat_share`.
pub fn random_diagram<R: Rng>(rng: &mut R, crossings: usize, max_components: usize, flat_share: f64) -> Diagram {
    let mut table = std::collections::BTreeMap::new();
    let mut visits = Vec::with_capacity(2 * crossings);
    for id in 1..=crossings as CrossingId {
        if rng.gen_bool(flat_share) {
            table.insert(id, CrossingKind::Flat(random_sign(rng)));
            visits.extend([Visit::flat(id), Visit::flat(id)]);
        } else {
            table.insert(id, CrossingKind::Classical(random_sign(rng)));
            visits.extend([Visit::over(id), Visit::under(id)]);
        }
    }
    visits.shuffle(rng);
    let k = rng.gen_range(1..=max_components.max(1));
    // Cut points split the visits into up to k nonempty runs; missing runs
    // become crossingless components.
    let mut cuts: Vec<usize> = if visits.len() > 1 {
        let mut all: Vec<usize> = (1..visits.len()).collect();
        all.shuffle(rng);
        all.truncate(k - 1);
        all
    } else {
        Vec::new()
    };
    cuts.sort_unstable();
    let mut comps = Vec::new();
    let mut start = 0;
    for c in cuts.into_iter().chain([visits.len()]) {
        comps.push(Component::from_visits(visits[start..c].to_vec()));
        start = c;
    }
    while comps.len() < k {
        comps.push(Component::Unknot);
    }
    Diagram::new(table, comps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TriangleType {
    Classical,
    Flat,
    Mixed,
}

/// Adds three crossings forming an R3 triangle of a random type on random
/// arcs of `d`. Falls back to `d` unchanged if no valid sign choice is found.
pub fn plant_triangle<R: Rng>(rng: &mut R, d: &Diagram) -> Diagram {
    let ty = *[TriangleType::Classical, TriangleType::Flat, TriangleType::Mixed].choose(rng).unwrap();
    let x = d.fresh_id();
    let ids = [x, x + 1, x + 2];
    // arcs of the original diagram
    let arcs: Vec<(usize, usize)> = d
        .components()
        .iter()
        .enumerate()
        .flat_map(|(c, comp)| (0..comp.visits().len().max(1)).map(move |i| (c, i)))
        .collect();
    for _ in 0..64 {
        let mut table = d.crossings().clone();
        let kinds: [CrossingKind; 3] = match ty {
            TriangleType::Classical => [0; 3].map(|_| CrossingKind::Classical(random_sign(rng))),
            TriangleType::Flat => [0; 3].map(|_| CrossingKind::Flat(random_sign(rng))),
            TriangleType::Mixed => [
                CrossingKind::Flat(random_sign(rng)),
                CrossingKind::Flat(random_sign(rng)),
                CrossingKind::Classical(random_sign(rng)),
            ],
        };
        for (id, k) in ids.iter().zip(kinds) {
            table.insert(*id, k);
        }
        // Classical heights: a random strand order top > middle > bottom.
        let mut height = [0u8, 1, 2];
        height.shuffle(rng);
        let strands = [(0usize, 1usize), (0, 2), (1, 2)];
        let parts: Vec<Vec<Visit>> = strands
            .iter()
            .enumerate()
            .map(|(si, &(a, b))| {
                let visit = |c: usize| -> Visit {
                    let id = ids[c];
                    match kinds[c] {
                        CrossingKind::Flat(_) => Visit::flat(id),
                        CrossingKind::Classical(_) => {
                            let other = strands.iter().position(|&(p, q)| (p == c || q == c) && (p, q) != (a, b)).unwrap();
                            if height[si] > height[other] {
                                Visit::over(id)
                            } else {
                                Visit::under(id)
                            }
                        }
                    }
                };
                let mut part = vec![visit(a), visit(b)];
                if rng.gen() {
                    part.reverse();
                }
                part
            })
            .collect();
        let mut placed: Vec<((usize, usize), usize)> =
            (0..3).map(|p| (*arcs.choose(rng).unwrap(), p)).collect();
        // Insert from the back so earlier positions stay valid.
        placed.sort_by(|a, b| b.cmp(a));
        let mut comps: Vec<Vec<Visit>> = d.components().iter().map(|c| c.visits().to_vec()).collect();
        for ((c, i), p) in placed {
            let v = &mut comps[c];
            let at = if v.is_empty() { 0 } else { i + 1 };
            v.splice(at..at, parts[p].iter().copied());
        }
        let out = Diagram::new(table, comps.into_iter().map(Component::from_visits).collect());
        let kind = match ty {
            TriangleType::Classical => MoveKind::ClassicalR3,
            TriangleType::Flat => MoveKind::FlatR3,
            TriangleType::Mixed => MoveKind::MixedR3,
        };
        if !enumerate_sites(&out, kind).is_empty() {
            return out;
        }
    }
    d.clone()
}

/// A random starting diagram for a trial: a shuffled Gauss code plus up to
/// two planted triangles, at most `cap` crossings in total.
pub fn random_start<R: Rng>(rng: &mut R, cap: usize) -> Diagram {
    let planted = rng.gen_range(0..=2usize).min(cap / 3);
    let base = rng.gen_range(0..=cap - 3 * planted);
    let flat_share = rng.gen_range(0.0..=0.6);
    let mut d = random_diagram(rng, base, 3, flat_share);
    for _ in 0..planted {
        d = plant_triangle(rng, &d);
    }
    d
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Step {
    pub kind: String,
    pub site: String,
    /// `X` after the move, canonical text.
    pub x: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub step: usize,
    pub message: String,
    pub diagram: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialReport {
    pub seed: u64,
    pub steps: usize,
    pub cap: usize,
    pub restricted: bool,
    pub initial: String,
    pub initial_x: String,
    pub moves: Vec<Step>,
    pub violation: Option<Violation>,
}

impl TrialReport {
    /// Command line that replays this trial alone.
    pub fn reproduce(&self) -> String {
        format!(
            "fvknot fuzz --seed {} --steps {} --trials 1 --cap {}{}",
            self.seed,
            self.steps,
            self.cap,
            if self.restricted { " --restricted" } else { "" }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzReport {
    pub trials: Vec<TrialReport>,
}

impl FuzzReport {
    pub fn violations(&self) -> usize {
        self.trials.iter().filter(|t| t.violation.is_some()).count()
    }

    pub fn moves_applied(&self) -> usize {
        self.trials.iter().map(|t| t.moves.len()).sum()
    }
}

impl fmt::Display for FuzzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.trials {
            if let Some(v) = &t.violation {
                writeln!(f, "VIOLATION seed={} step={}: {}", t.seed, v.step, v.message)?;
                writeln!(f, "initial X = {}", t.initial_x)?;
                writeln!(f, "initial diagram:\n{}", t.initial)?;
                for (i, s) in t.moves.iter().enumerate() {
                    writeln!(f, "  {:>3}. {} @ {} => {}", i + 1, s.kind, s.site, s.x)?;
                }
                writeln!(f, "diagram at failure:\n{}", v.diagram)?;
                writeln!(f, "reproduce: {}", t.reproduce())?;
            }
        }
        let n = self.violations();
        writeln!(
            f,
            "{} trials, {} moves, {}",
            self.trials.len(),
            self.moves_applied(),
            if n == 0 { "no violations".to_string() } else { format!("{n} violations") }
        )
    }
}

fn family(k: MoveKind) -> MoveKind {
    match k {
        MoveKind::ClassicalR1 { op, .. } => MoveKind::ClassicalR1 { op, sign: Sign::Pos, order: KinkOrder::OverFirst },
        k => k,
    }
}

fn restriction(restricted: bool) -> Restriction {
    if restricted {
        Restriction::NoFlatR3
    } else {
        Restriction::None
    }
}

/// Applies `steps` random moves to `start`, checking invariance after each.
pub fn run_moves(
    start: &Diagram,
    seed: u64,
    steps: usize,
    cap: usize,
    rules: Restriction,
) -> (Vec<Step>, Option<Violation>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let x0 = flat_virtual_jones(start);
    let c0 = start.component_count();
    let mut d = start.clone();
    let mut log = Vec::with_capacity(steps);
    for step in 1..=steps {
        let n = d.crossing_count() as i32;
        let options: Vec<(MoveKind, Vec<MoveSite>)> = MoveKind::all()
            .into_iter()
            .filter(|&k| rules.allows(k) && n + k.crossing_delta() <= cap as i32)
            .map(|k| (k, enumerate_sites(&d, k)))
            .filter(|(_, s)| !s.is_empty())
            .collect();
        // Pick a move family uniformly, then a variant, so the four R1
        // variants together weigh as much as any other family.
        let families: Vec<MoveKind> = options.iter().map(|(k, _)| family(*k)).collect::<BTreeSet<_>>().into_iter().collect();
        let Some(&fam) = families.choose(&mut rng) else {
            break;
        };
        let variants: Vec<&(MoveKind, Vec<MoveSite>)> = options.iter().filter(|(k, _)| family(*k) == fam).collect();
        let (kind, sites) = *variants.choose(&mut rng).unwrap();
        let site = *sites.choose(&mut rng).unwrap();
        debug_assert!(check(&d, *kind, &site));
        let next = match apply(&d, *kind, &site) {
            Ok(next) => next,
            Err(e) => {
                let v = Violation { step, message: e.to_string(), diagram: serialize_diagram(&d) };
                return (log, Some(v));
            }
        };
        let x = flat_virtual_jones(&next);
        log.push(Step { kind: kind.to_string(), site: site.to_string(), x: x.to_string() });
        let report = next.validate();
        let message = if !report.is_ok() {
            Some(format!("invalid diagram: {report}"))
        } else if next.component_count() != c0 {
            Some(format!("component count {} != {}", next.component_count(), c0))
        } else if x != x0 {
            Some(format!("X changed from {x0} to {x}"))
        } else {
            None
        };
        if let Some(message) = message {
            return (log, Some(Violation { step, message, diagram: serialize_diagram(&next) }));
        }
        d = next;
    }
    (log, None)
}

/// One trial from a random start.
pub fn fuzz_trial(seed: u64, steps: usize, cap: usize, restricted: bool) -> TrialReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = random_start(&mut rng, cap);
    trial_from(&start, seed, steps, cap, restricted)
}

/// One trial from a given diagram.
pub fn trial_from(start: &Diagram, seed: u64, steps: usize, cap: usize, restricted: bool) -> TrialReport {
    let (moves, violation) = run_moves(start, seed, steps, cap, restriction(restricted));
    TrialReport {
        seed,
        steps,
        cap,
        restricted,
        initial: serialize_diagram(start),
        initial_x: flat_virtual_jones(start).to_string(),
        moves,
        violation,
    }
}

/// `trials` independent trials with seeds `seed, seed + 1, ...`, run in
/// parallel; the report is ordered by seed.
pub fn fuzz_invariance(seed: u64, trials: usize, steps: usize, cap: usize, restricted: bool) -> FuzzReport {
    let trials = (0..trials as u64)
        .into_par_iter()
        .map(|i| fuzz_trial(seed.wrapping_add(i), steps, cap, restricted))
        .collect();
    FuzzReport { trials }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_diagrams_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(0..10);
            let d = random_diagram(&mut rng, n, 3, 0.5);
            assert!(d.is_valid(), "{}", d.validate());
            assert_eq!(d.crossing_count(), n);
        }
    }

    #[test]
    fn planted_triangles_are_sites() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut hits = 0;
        for _ in 0..100 {
            let d = random_diagram(&mut rng, 3, 2, 0.3);
            let t = plant_triangle(&mut rng, &d);
            assert!(t.is_valid());
            if t.crossing_count() == d.crossing_count() + 3 {
                hits += 1;
            }
        }
        assert!(hits > 90, "{hits}");
    }

    #[test]
    fn zero_steps() {
        let r = fuzz_invariance(5, 3, 0, 10, false);
        assert_eq!(r.violations(), 0);
        assert_eq!(r.moves_applied(), 0);
    }

    #[test]
    fn seed_one() {
        let r = fuzz_invariance(1, 4, 50, 10, false);
        assert_eq!(r.violations(), 0, "{r}");
    }

    #[test]
    fn restricted_never_uses_flat_r3() {
        let r = fuzz_invariance(40, 20, 50, 10, true);
        assert_eq!(r.violations(), 0, "{r}");
        assert!(r.trials.iter().flat_map(|t| &t.moves).all(|s| s.kind != "flat-r3"));
    }

    #[test]
    fn replay_matches() {
        let a = fuzz_invariance(77, 3, 20, 10, false);
        let b = fuzz_trial(79, 20, 10, false);
        assert_eq!(a.trials[2], b);
    }
}
