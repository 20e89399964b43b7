//! Gauss-code model of flat-virtual link diagrams.
//!
//! Virtual crossings are never stored: a diagram is the set of classical and
//! flat crossings together with the cyclic order in which each component
//! visits them. Any two drawings with the same Gauss code differ by detour
//! moves only.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

pub type CrossingId = u32;

/// A `±1` datum: the writhe sign of a classical crossing or the rotation bit
/// of a flat one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn from_value(v: i32) -> Option<Sign> {
        match v {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Pos => "+1",
            Sign::Neg => "-1",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CrossingKind {
    /// Over/under crossing; the sign is its writhe contribution.
    Classical(Sign),
    /// Flat crossing; the bit records the rotation sense and never enters
    /// the invariant.
    Flat(Sign),
}

impl CrossingKind {
    pub fn is_classical(self) -> bool {
        matches!(self, CrossingKind::Classical(_))
    }

    pub fn is_flat(self) -> bool {
        matches!(self, CrossingKind::Flat(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    Over,
    Under,
    FlatPass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Visit {
    pub crossing: CrossingId,
    pub role: Role,
}

impl Visit {
    pub fn over(crossing: CrossingId) -> Self {
        Visit { crossing, role: Role::Over }
    }

    pub fn under(crossing: CrossingId) -> Self {
        Visit { crossing, role: Role::Under }
    }

    pub fn flat(crossing: CrossingId) -> Self {
        Visit { crossing, role: Role::FlatPass }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    /// A crossingless circle.
    Unknot,
    /// Visits in traversal order, read cyclically. Must be nonempty.
    Strand(Vec<Visit>),
}

impl Component {
    pub fn visits(&self) -> &[Visit] {
        match self {
            Component::Unknot => &[],
            Component::Strand(v) => v,
        }
    }

    /// Builds a component, mapping an empty visit list to the unknot marker.
    pub fn from_visits(visits: Vec<Visit>) -> Self {
        if visits.is_empty() {
            Component::Unknot
        } else {
            Component::Strand(visits)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    crossings: BTreeMap<CrossingId, CrossingKind>,
    components: Vec<Component>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    UnknownCrossing { component: usize, position: usize, crossing: CrossingId },
    VisitCount { crossing: CrossingId, found: usize },
    ClassicalRoles { crossing: CrossingId },
    FlatRoles { crossing: CrossingId },
    EmptyComponent { component: usize },
}

impl Violation {
    pub fn crossing(&self) -> Option<CrossingId> {
        match *self {
            Violation::UnknownCrossing { crossing, .. }
            | Violation::VisitCount { crossing, .. }
            | Violation::ClassicalRoles { crossing }
            | Violation::FlatRoles { crossing } => Some(crossing),
            Violation::EmptyComponent { .. } => None,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::UnknownCrossing { component, position, crossing } => write!(
                f,
                "component {component} position {position}: visit to undeclared crossing id {crossing}"
            ),
            Violation::VisitCount { crossing, found } => {
                let noun = if *found == 1 { "visit" } else { "visits" };
                write!(f, "crossing id {crossing} has {found} {noun}, expected 2")
            }
            Violation::ClassicalRoles { crossing } => {
                write!(f, "crossing id {crossing}: classical visit roles must be {{Over, Under}}")
            }
            Violation::FlatRoles { crossing } => {
                write!(f, "crossing id {crossing}: flat visit roles must be {{FlatPass, FlatPass}}")
            }
            Violation::EmptyComponent { component } => {
                write!(f, "component {component} is an empty strand; use the unknot marker")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl Diagram {
    /// Assembles a diagram without checking it; see [`Diagram::validate`].
    pub fn new(crossings: BTreeMap<CrossingId, CrossingKind>, components: Vec<Component>) -> Self {
        Diagram { crossings, components }
    }

    pub fn empty() -> Self {
        Self::new(BTreeMap::new(), Vec::new())
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    pub fn unlink(n: usize) -> Self {
        Self::new(BTreeMap::new(), vec![Component::Unknot; n])
    }

    pub fn crossings(&self) -> &BTreeMap<CrossingId, CrossingKind> {
        &self.crossings
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn kind(&self, id: CrossingId) -> Option<CrossingKind> {
        self.crossings.get(&id).copied()
    }

    /// Classical crossing ids in ascending order.
    pub fn classical_ids(&self) -> Vec<CrossingId> {
        self.crossings
            .iter()
            .filter(|(_, k)| k.is_classical())
            .map(|(&id, _)| id)
            .collect()
    }

    pub fn flat_ids(&self) -> Vec<CrossingId> {
        self.crossings.iter().filter(|(_, k)| k.is_flat()).map(|(&id, _)| id).collect()
    }

    pub fn classical_count(&self) -> usize {
        self.crossings.values().filter(|k| k.is_classical()).count()
    }

    pub fn flat_count(&self) -> usize {
        self.crossings.values().filter(|k| k.is_flat()).count()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn visit_count(&self) -> usize {
        self.components.iter().map(|c| c.visits().len()).sum()
    }

    pub fn max_id(&self) -> Option<CrossingId> {
        self.crossings.keys().next_back().copied()
    }

    pub fn fresh_id(&self) -> CrossingId {
        self.max_id().map_or(1, |m| m + 1)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let mut seen: BTreeMap<CrossingId, Vec<Role>> = BTreeMap::new();
        for (ci, comp) in self.components.iter().enumerate() {
            if let Component::Strand(v) = comp {
                if v.is_empty() {
                    violations.push(Violation::EmptyComponent { component: ci });
                }
                for (pos, visit) in v.iter().enumerate() {
                    if !self.crossings.contains_key(&visit.crossing) {
                        violations.push(Violation::UnknownCrossing {
                            component: ci,
                            position: pos,
                            crossing: visit.crossing,
                        });
                        continue;
                    }
                    seen.entry(visit.crossing).or_default().push(visit.role);
                }
            }
        }
        for (&id, &kind) in &self.crossings {
            let roles = seen.get(&id).map(Vec::as_slice).unwrap_or(&[]);
            if roles.len() != 2 {
                violations.push(Violation::VisitCount { crossing: id, found: roles.len() });
            }
            match kind {
                CrossingKind::Classical(_) => {
                    let overs = roles.iter().filter(|r| **r == Role::Over).count();
                    let unders = roles.iter().filter(|r| **r == Role::Under).count();
                    let flats = roles.len() - overs - unders;
                    if overs > 1 || unders > 1 || flats > 0 {
                        violations.push(Violation::ClassicalRoles { crossing: id });
                    }
                }
                CrossingKind::Flat(_) => {
                    if roles.iter().any(|r| *r != Role::FlatPass) {
                        violations.push(Violation::FlatRoles { crossing: id });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn writhe(&self) -> i32 {
        self.crossings
            .values()
            .map(|k| match k {
                CrossingKind::Classical(s) => s.value(),
                CrossingKind::Flat(_) => 0,
            })
            .sum()
    }

    /// Makes every classical crossing flat, keeping its sign as the flat bit.
    pub fn forget(&self) -> Diagram {
        let crossings = self
            .crossings
            .iter()
            .map(|(&id, &k)| {
                let k = match k {
                    CrossingKind::Classical(s) | CrossingKind::Flat(s) => CrossingKind::Flat(s),
                };
                (id, k)
            })
            .collect();
        let components = self
            .components
            .iter()
            .map(|c| match c {
                Component::Unknot => Component::Unknot,
                Component::Strand(v) => Component::Strand(
                    v.iter().map(|vis| Visit::flat(vis.crossing)).collect(),
                ),
            })
            .collect();
        Diagram { crossings, components }
    }

    /// Renames crossings to `1..=n` in order of first appearance.
    pub fn relabeled(&self) -> Diagram {
        let mut map: BTreeMap<CrossingId, CrossingId> = BTreeMap::new();
        let mut next = 1;
        for comp in &self.components {
            for v in comp.visits() {
                map.entry(v.crossing).or_insert_with(|| {
                    next += 1;
                    next - 1
                });
            }
        }
        for &id in self.crossings.keys() {
            map.entry(id).or_insert_with(|| {
                next += 1;
                next - 1
            });
        }
        self.rename(|id| map[&id])
    }

    /// Applies an injective renaming of crossing ids.
    pub fn rename(&self, f: impl Fn(CrossingId) -> CrossingId) -> Diagram {
        let crossings = self.crossings.iter().map(|(&id, &k)| (f(id), k)).collect();
        let components = self
            .components
            .iter()
            .map(|c| match c {
                Component::Unknot => Component::Unknot,
                Component::Strand(v) => Component::Strand(
                    v.iter().map(|x| Visit { crossing: f(x.crossing), role: x.role }).collect(),
                ),
            })
            .collect();
        Diagram { crossings, components }
    }

    /// Equality up to renaming crossings.
    pub fn same_up_to_relabeling(&self, other: &Diagram) -> bool {
        self.relabeled() == other.relabeled()
    }

    /// Rotates the base point of component `ci` forward by `k` visits.
    pub fn rotate_component(&self, ci: usize, k: usize) -> Diagram {
        let mut out = self.clone();
        if let Some(Component::Strand(v)) = out.components.get_mut(ci) {
            let n = v.len();
            v.rotate_left(k % n);
        }
        out
    }

    pub fn permute_components(&self, order: &[usize]) -> Diagram {
        Diagram {
            crossings: self.crossings.clone(),
            components: order.iter().map(|&i| self.components[i].clone()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kink(sign: Sign) -> Diagram {
        Diagram::new(
            [(1, CrossingKind::Classical(sign))].into(),
            vec![Component::Strand(vec![Visit::over(1), Visit::under(1)])],
        )
    }

    #[test]
    fn unknot_is_valid() {
        let d = Diagram::unknot();
        assert!(d.validate().is_ok());
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.writhe(), 0);
        assert_eq!(d.forget(), d);
    }

    #[test]
    fn two_unknots() {
        assert_eq!(Diagram::unlink(2).component_count(), 2);
    }

    #[test]
    fn double_over_is_reported() {
        let d = Diagram::new(
            [(1, CrossingKind::Classical(Sign::Pos))].into(),
            vec![Component::Strand(vec![Visit::over(1), Visit::over(1)])],
        );
        let r = d.validate();
        assert_eq!(r.violations, vec![Violation::ClassicalRoles { crossing: 1 }]);
        assert!(r.to_string().contains("classical visit roles must be {Over, Under}"));
    }

    #[test]
    fn single_flat_visit_is_reported() {
        let d = Diagram::new(
            [(2, CrossingKind::Flat(Sign::Pos))].into(),
            vec![Component::Strand(vec![Visit::flat(2)])],
        );
        let r = d.validate();
        assert_eq!(r.violations, vec![Violation::VisitCount { crossing: 2, found: 1 }]);
        assert_eq!(r.to_string(), "crossing id 2 has 1 visit, expected 2");
    }

    #[test]
    fn other_violations() {
        let d = Diagram::new(
            [(1, CrossingKind::Flat(Sign::Pos))].into(),
            vec![
                Component::Strand(vec![Visit::over(1), Visit::flat(1), Visit::flat(7)]),
                Component::Strand(vec![]),
            ],
        );
        let r = d.validate();
        assert!(r.violations.contains(&Violation::UnknownCrossing {
            component: 0,
            position: 2,
            crossing: 7
        }));
        assert!(r.violations.contains(&Violation::FlatRoles { crossing: 1 }));
        assert!(r.violations.contains(&Violation::EmptyComponent { component: 1 }));
    }

    #[test]
    fn kink_writhe() {
        assert_eq!(kink(Sign::Pos).writhe(), 1);
        assert_eq!(kink(Sign::Neg).writhe(), -1);
    }

    #[test]
    fn forget_counts_and_idempotence() {
        let d = Diagram::new(
            [
                (1, CrossingKind::Classical(Sign::Pos)),
                (2, CrossingKind::Classical(Sign::Pos)),
                (3, CrossingKind::Flat(Sign::Neg)),
                (4, CrossingKind::Flat(Sign::Pos)),
            ]
            .into(),
            vec![Component::Strand(vec![
                Visit::over(1),
                Visit::under(2),
                Visit::flat(4),
                Visit::flat(4),
                Visit::over(2),
                Visit::under(1),
                Visit::flat(3),
                Visit::flat(3),
            ])],
        );
        assert!(d.is_valid());
        let f = d.forget();
        assert!(f.is_valid());
        assert_eq!(f.classical_count(), 0);
        assert_eq!(f.flat_count(), 4);
        assert_eq!(f.forget(), f);
        assert_eq!(f.component_count(), d.component_count());
        assert_eq!(f.writhe(), 0);
    }

    #[test]
    fn relabeling() {
        let d = kink(Sign::Pos).rename(|i| i + 40);
        assert!(d.same_up_to_relabeling(&kink(Sign::Pos)));
        assert!(!d.same_up_to_relabeling(&kink(Sign::Neg)));
    }
}
