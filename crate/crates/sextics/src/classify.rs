//! Enumeration of rigid isotopy classes of real irreducible nodal sextics
//! without real nodes.
//!
//! A candidate class is (m, scheme, dividing type, r). Existence is decided
//! topologically, through (1) a nonsingular sextic with the right scheme and
//! type exists (static table), (2) Harnack, (3) Arnold, (4) the
//! injective-pair rule, and independently through the arithmetic conditions
//! (i)-(v) on the translated invariants (a, t, δ, r). Whenever (1) holds and
//! m ≥ 1, the two verdicts are asserted to agree; a disagreement is a bug,
//! not a user error.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::involution::{arithmetic_conditions, ConditionsReport};
use crate::scheme::{
    arnold_congruence, counts, enumerate_schemes, harnack_check, no_injective_pairs_rule,
    parse_viro, render_viro, scheme_to_invariants, DividingType, RealScheme, TranslatedInvariants,
};
use crate::{Error, Result};

/// One rigid isotopy class: m node pairs, a real scheme, a dividing type,
/// and (for dividing classes) the number r ≤ m of crossing pairs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RigidIsotopyClass {
    pub m: u32,
    pub scheme: RealScheme,
    pub divtype: DividingType,
    pub r: Option<u32>,
}

impl RigidIsotopyClass {
    pub fn new(m: u32, scheme: RealScheme, divtype: DividingType, r: Option<u32>) -> Result<Self> {
        match (divtype, r) {
            (DividingType::I, None) => {
                return Err(Error::input("dividing classes carry a crossing count r"))
            }
            (DividingType::II, Some(_)) => {
                return Err(Error::input("non-dividing classes have no crossing count"))
            }
            (DividingType::I, Some(r)) if r > m => {
                return Err(Error::input("crossing pairs are a subset of pairs: r ≤ m"))
            }
            _ => {}
        }
        Ok(RigidIsotopyClass {
            m,
            scheme,
            divtype,
            r,
        })
    }
}

impl std::fmt::Display for RigidIsotopyClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "m={} {} type {}",
            self.m,
            render_viro(&self.scheme),
            self.divtype
        )?;
        if let Some(r) = self.r {
            write!(f, " r={r}")?;
        }
        Ok(())
    }
}

/// The (scheme, dividing type) pairs realized by nonsingular real sextics.
///
/// Static data: 14 dividing schemes and 56 non-dividing schemes (including
/// the empty one). This classical classification enters only through
/// condition (1).
pub struct NonsingularTable {
    type_i: BTreeSet<RealScheme>,
    type_ii: BTreeSet<RealScheme>,
}

const NONSINGULAR_TYPE_I: [&str; 14] = [
    "⟨9⊔1⟨1⟩⟩",
    "⟨5⊔1⟨5⟩⟩",
    "⟨1⊔1⟨9⟩⟩",
    "⟨1⟨8⟩⟩",
    "⟨6⊔1⟨2⟩⟩",
    "⟨4⊔1⟨4⟩⟩",
    "⟨2⊔1⟨6⟩⟩",
    "⟨9⟩",
    "⟨5⊔1⟨1⟩⟩",
    "⟨3⊔1⟨3⟩⟩",
    "⟨1⊔1⟨5⟩⟩",
    "⟨1⟨4⟩⟩",
    "⟨2⊔1⟨2⟩⟩",
    "⟨1⟨1⟨1⟩⟩⟩",
];

const NONSINGULAR_TYPE_II: [&str; 56] = [
    "⟨1⟨9⟩⟩",
    "⟨8⊔1⟨1⟩⟩",
    "⟨7⊔1⟨2⟩⟩",
    "⟨6⊔1⟨3⟩⟩",
    "⟨5⊔1⟨4⟩⟩",
    "⟨4⊔1⟨5⟩⟩",
    "⟨3⊔1⟨6⟩⟩",
    "⟨2⊔1⟨7⟩⟩",
    "⟨1⊔1⟨8⟩⟩",
    "⟨10⟩",
    "⟨1⟨8⟩⟩",
    "⟨7⊔1⟨1⟩⟩",
    "⟨6⊔1⟨2⟩⟩",
    "⟨5⊔1⟨3⟩⟩",
    "⟨4⊔1⟨4⟩⟩",
    "⟨3⊔1⟨5⟩⟩",
    "⟨2⊔1⟨6⟩⟩",
    "⟨1⊔1⟨7⟩⟩",
    "⟨9⟩",
    "⟨1⟨7⟩⟩",
    "⟨6⊔1⟨1⟩⟩",
    "⟨5⊔1⟨2⟩⟩",
    "⟨4⊔1⟨3⟩⟩",
    "⟨3⊔1⟨4⟩⟩",
    "⟨2⊔1⟨5⟩⟩",
    "⟨1⊔1⟨6⟩⟩",
    "⟨8⟩",
    "⟨1⟨6⟩⟩",
    "⟨5⊔1⟨1⟩⟩",
    "⟨4⊔1⟨2⟩⟩",
    "⟨3⊔1⟨3⟩⟩",
    "⟨2⊔1⟨4⟩⟩",
    "⟨1⊔1⟨5⟩⟩",
    "⟨7⟩",
    "⟨1⟨5⟩⟩",
    "⟨4⊔1⟨1⟩⟩",
    "⟨3⊔1⟨2⟩⟩",
    "⟨2⊔1⟨3⟩⟩",
    "⟨1⊔1⟨4⟩⟩",
    "⟨6⟩",
    "⟨1⟨4⟩⟩",
    "⟨3⊔1⟨1⟩⟩",
    "⟨2⊔1⟨2⟩⟩",
    "⟨1⊔1⟨3⟩⟩",
    "⟨5⟩",
    "⟨1⟨3⟩⟩",
    "⟨2⊔1⟨1⟩⟩",
    "⟨1⊔1⟨2⟩⟩",
    "⟨4⟩",
    "⟨1⟨2⟩⟩",
    "⟨1⊔1⟨1⟩⟩",
    "⟨3⟩",
    "⟨1⟨1⟩⟩",
    "⟨2⟩",
    "⟨1⟩",
    "∅",
];

impl NonsingularTable {
    pub fn standard() -> Self {
        let parse_all = |texts: &[&str]| -> BTreeSet<RealScheme> {
            texts
                .iter()
                .map(|t| parse_viro(t).expect("static table entry parses"))
                .collect()
        };
        let table = NonsingularTable {
            type_i: parse_all(&NONSINGULAR_TYPE_I),
            type_ii: parse_all(&NONSINGULAR_TYPE_II),
        };
        debug_assert_eq!(table.type_i.len(), 14);
        debug_assert_eq!(table.type_ii.len(), 56);
        table
    }

    pub fn contains(&self, scheme: &RealScheme, divtype: DividingType) -> bool {
        match divtype {
            DividingType::I => self.type_i.contains(scheme),
            DividingType::II => self.type_ii.contains(scheme),
        }
    }

    pub fn type_i(&self) -> &BTreeSet<RealScheme> {
        &self.type_i
    }

    pub fn type_ii(&self) -> &BTreeSet<RealScheme> {
        &self.type_ii
    }
}

/// Per-condition report for the topological path (1)-(4).
/// Conditions (3) and (4) apply to dividing classes only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TopologicalReport {
    /// (1) a nonsingular sextic with this scheme and the right type exists
    pub smoothing: bool,
    /// (2) Harnack's inequality for the normalization
    pub harnack: bool,
    /// (3) Arnold's congruence
    pub arnold: Option<bool>,
    /// (4) the injective-pair rule
    pub injective_rule: Option<bool>,
}

impl TopologicalReport {
    pub fn all(&self) -> bool {
        self.smoothing && self.conditions_2_to_4()
    }

    /// Conditions (2)-(4) only, the part mirrored by the arithmetic path.
    pub fn conditions_2_to_4(&self) -> bool {
        self.harnack && self.arnold.unwrap_or(true) && self.injective_rule.unwrap_or(true)
    }

    pub fn entries(&self) -> Vec<(&'static str, Option<bool>)> {
        vec![
            ("(1) smoothing", Some(self.smoothing)),
            ("(2) harnack", Some(self.harnack)),
            ("(3) arnold", self.arnold),
            ("(4) injective-pair rule", self.injective_rule),
        ]
    }
}

/// Evaluate the topological conditions (1)-(4).
///
/// Condition (1): a dividing class smooths to a dividing nonsingular sextic
/// exactly when r = 0; with r ≥ 1 crossing pairs the smoothing is
/// non-dividing, so the scheme must be realized with type II.
pub fn topological_conditions(
    c: &RigidIsotopyClass,
    table: &NonsingularTable,
) -> TopologicalReport {
    let needed_type = match (c.divtype, c.r) {
        (DividingType::I, Some(0)) => DividingType::I,
        _ => DividingType::II,
    };
    let smoothing = table.contains(&c.scheme, needed_type);
    let l = counts(&c.scheme).ovals;
    let harnack = harnack_check(l, c.m, c.divtype);
    let (arnold, injective_rule) = match (c.divtype, c.r) {
        (DividingType::I, Some(r)) => (
            Some(arnold_congruence(&c.scheme, r)),
            Some(no_injective_pairs_rule(&c.scheme, r)),
        ),
        _ => (None, None),
    };
    TopologicalReport {
        smoothing,
        harnack,
        arnold,
        injective_rule,
    }
}

/// Everything `check` wants to show: both condition reports, the translated
/// invariants, and the verdict.
#[derive(Clone, Debug)]
pub struct ClassReport {
    pub topological: TopologicalReport,
    pub translated: Option<TranslatedInvariants>,
    pub arithmetic: Option<ConditionsReport>,
    pub exists: bool,
}

/// Decide existence of a class, checking both paths.
///
/// For m ≥ 1 the topological verdict is returned and, whenever condition (1)
/// holds, conditions (2)-(4) are asserted to agree with the arithmetic
/// conditions (i)-(v); a disagreement reports an internal inconsistency.
/// For m = 0 the class exists iff it appears in the nonsingular table.
pub fn class_report(c: &RigidIsotopyClass, table: &NonsingularTable) -> Result<ClassReport> {
    // structural invariants, re-checked for hand-built classes
    RigidIsotopyClass::new(c.m, c.scheme.clone(), c.divtype, c.r)?;
    if c.scheme.is_empty() && c.divtype == DividingType::I {
        return Err(Error::input("the empty scheme is non-dividing"));
    }

    let topological = topological_conditions(c, table);
    if c.m == 0 {
        return Ok(ClassReport {
            topological,
            translated: None,
            arithmetic: None,
            exists: topological.smoothing,
        });
    }

    let translated = scheme_to_invariants(&c.scheme, c.divtype, c.r)?;
    let arithmetic = arithmetic_conditions(
        c.m,
        translated.a,
        translated.t,
        translated.delta,
        translated.r,
    )?;
    if topological.smoothing && topological.conditions_2_to_4() != arithmetic.all() {
        return Err(Error::Inconsistency(format!(
            "dual-path disagreement for {c}: topological (2)-(4) = {}, arithmetic (i)-(v) = {}",
            topological.conditions_2_to_4(),
            arithmetic.all()
        )));
    }
    Ok(ClassReport {
        exists: topological.all(),
        topological,
        translated: Some(translated),
        arithmetic: Some(arithmetic),
    })
}

pub fn exists_class(c: &RigidIsotopyClass, table: &NonsingularTable) -> Result<bool> {
    Ok(class_report(c, table)?.exists)
}

/// All existing classes with m ≤ 5, in (m, scheme text, type, r) order.
pub fn enumerate_classes(table: &NonsingularTable) -> Result<Vec<RigidIsotopyClass>> {
    let schemes = enumerate_schemes(11, 3);
    let mut out = Vec::new();
    for m in 0..=5u32 {
        for scheme in &schemes {
            let mut candidates: Vec<RigidIsotopyClass> = Vec::new();
            if !scheme.is_empty() {
                for r in 0..=m {
                    candidates.push(RigidIsotopyClass::new(
                        m,
                        scheme.clone(),
                        DividingType::I,
                        Some(r),
                    )?);
                }
            }
            candidates.push(RigidIsotopyClass::new(
                m,
                scheme.clone(),
                DividingType::II,
                None,
            )?);
            for c in candidates {
                if exists_class(&c, table)? {
                    out.push(c);
                }
            }
        }
    }
    out.sort_by_cached_key(|c| (c.m, render_viro(&c.scheme), c.divtype, c.r));
    Ok(out)
}

// ---------------------------------------------------------------------------
// Figure tables

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Figure1Row {
    pub scheme: String,
    pub r_set: Vec<u32>,
    pub m_max: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Figure2Row {
    pub scheme: String,
    pub m_max: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FigureTables {
    pub figure1: Vec<Figure1Row>,
    pub figure2: Vec<Figure2Row>,
}

/// Group enumerated classes into the two classification tables:
/// per dividing scheme the set of realized r values and the largest m,
/// per non-dividing scheme the largest m. Rows ordered by (m_max, scheme).
pub fn figure_tables(classes: &[RigidIsotopyClass]) -> FigureTables {
    let mut fig1: BTreeMap<String, (BTreeSet<u32>, u32)> = BTreeMap::new();
    let mut fig2: BTreeMap<String, u32> = BTreeMap::new();
    for c in classes {
        let text = render_viro(&c.scheme);
        match c.divtype {
            DividingType::I => {
                let entry = fig1.entry(text).or_default();
                entry.0.insert(c.r.expect("dividing class has r"));
                entry.1 = entry.1.max(c.m);
            }
            DividingType::II => {
                let entry = fig2.entry(text).or_default();
                *entry = (*entry).max(c.m);
            }
        }
    }
    let mut figure1: Vec<Figure1Row> = fig1
        .into_iter()
        .map(|(scheme, (r_set, m_max))| Figure1Row {
            scheme,
            r_set: r_set.into_iter().collect(),
            m_max,
        })
        .collect();
    figure1.sort_by(|a, b| (a.m_max, &a.scheme).cmp(&(b.m_max, &b.scheme)));
    let mut figure2: Vec<Figure2Row> = fig2
        .into_iter()
        .map(|(scheme, m_max)| Figure2Row { scheme, m_max })
        .collect();
    figure2.sort_by(|a, b| (a.m_max, &a.scheme).cmp(&(b.m_max, &b.scheme)));
    FigureTables { figure1, figure2 }
}

/// Row-by-row comparison keyed by scheme text; returns human-readable
/// mismatches (empty = tables agree).
pub fn compare_tables(computed: &FigureTables, golden: &FigureTables) -> Vec<String> {
    let mut diffs = Vec::new();
    let computed1: BTreeMap<&str, (&[u32], u32)> = computed
        .figure1
        .iter()
        .map(|r| (r.scheme.as_str(), (r.r_set.as_slice(), r.m_max)))
        .collect();
    let golden1: BTreeMap<&str, (Vec<u32>, u32)> = golden
        .figure1
        .iter()
        .map(|r| {
            let mut rs = r.r_set.clone();
            rs.sort_unstable();
            (r.scheme.as_str(), (rs, r.m_max))
        })
        .collect();
    for (scheme, (r_set, m_max)) in &golden1 {
        match computed1.get(scheme) {
            None => diffs.push(format!("figure1: {scheme} missing from enumeration")),
            Some((crs, cm)) => {
                if crs != &r_set.as_slice() {
                    diffs.push(format!(
                        "figure1: {scheme} r-set {crs:?} ≠ expected {r_set:?}"
                    ));
                }
                if cm != m_max {
                    diffs.push(format!("figure1: {scheme} m_max {cm} ≠ expected {m_max}"));
                }
            }
        }
    }
    for scheme in computed1.keys() {
        if !golden1.contains_key(scheme) {
            diffs.push(format!("figure1: unexpected scheme {scheme} enumerated"));
        }
    }

    let computed2: BTreeMap<&str, u32> = computed
        .figure2
        .iter()
        .map(|r| (r.scheme.as_str(), r.m_max))
        .collect();
    let golden2: BTreeMap<&str, u32> = golden
        .figure2
        .iter()
        .map(|r| (r.scheme.as_str(), r.m_max))
        .collect();
    for (scheme, m_max) in &golden2 {
        match computed2.get(scheme) {
            None => diffs.push(format!("figure2: {scheme} missing from enumeration")),
            Some(cm) if cm != m_max => {
                diffs.push(format!("figure2: {scheme} m_max {cm} ≠ expected {m_max}"))
            }
            _ => {}
        }
    }
    for scheme in computed2.keys() {
        if !golden2.contains_key(scheme) {
            diffs.push(format!("figure2: unexpected scheme {scheme} enumerated"));
        }
    }
    diffs
}

/// (dividing classes, non-dividing classes, non-dividing over the empty scheme)
pub fn class_totals(classes: &[RigidIsotopyClass]) -> (usize, usize, usize) {
    let dividing = classes
        .iter()
        .filter(|c| c.divtype == DividingType::I)
        .count();
    let nondividing = classes.len() - dividing;
    let empty = classes
        .iter()
        .filter(|c| c.divtype == DividingType::II && c.scheme.is_empty())
        .count();
    (dividing, nondividing, empty)
}

type InvariantKey = (i64, i64, u8, Option<u32>);

/// The invariant map (scheme, type, r) → (a, t, δ, r) restricted to the
/// enumerated classes must be injective.
pub fn injectivity_check(classes: &[RigidIsotopyClass]) -> bool {
    let mut seen: BTreeMap<InvariantKey, (String, DividingType, Option<u32>)> = BTreeMap::new();
    for c in classes {
        let combo = (render_viro(&c.scheme), c.divtype, c.r);
        let t = scheme_to_invariants(&c.scheme, c.divtype, c.r).expect("enumerated class");
        let key = (t.a, t.t, t.delta, t.r);
        if let Some(prev) = seen.get(&key) {
            if prev != &combo {
                return false;
            }
        } else {
            seen.insert(key, combo);
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> NonsingularTable {
        NonsingularTable::standard()
    }

    fn class(m: u32, text: &str, divtype: DividingType, r: Option<u32>) -> RigidIsotopyClass {
        RigidIsotopyClass::new(m, parse_viro(text).unwrap(), divtype, r).unwrap()
    }

    #[test]
    fn table_sizes() {
        let t = table();
        assert_eq!(t.type_i().len(), 14);
        assert_eq!(t.type_ii().len(), 56);
        assert!(t.contains(&parse_viro("⟨9⟩").unwrap(), DividingType::I));
        assert!(t.contains(&RealScheme::empty(), DividingType::II));
        assert!(!t.contains(&parse_viro("⟨11⟩").unwrap(), DividingType::I));
    }

    #[test]
    fn topological_examples() {
        let t = table();
        assert!(topological_conditions(&class(1, "⟨9⟩", DividingType::I, Some(0)), &t).all());
        // no type-II nonsingular ⟨1⟨1⟨1⟩⟩⟩, so r ≥ 1 fails condition (1)
        let deep = class(2, "⟨1⟨1⟨1⟩⟩⟩", DividingType::I, Some(2));
        let rep = topological_conditions(&deep, &t);
        assert!(!rep.smoothing);
        assert!(!rep.all());
        assert!(topological_conditions(&class(5, "⟨1⟩", DividingType::I, Some(4)), &t).all());
    }

    #[test]
    fn exists_examples() {
        let t = table();
        assert!(exists_class(&class(1, "⟨1⟨8⟩⟩", DividingType::I, Some(0)), &t).unwrap());
        assert!(!exists_class(&class(1, "⟨9⟩", DividingType::I, Some(1)), &t).unwrap());
        assert!(!exists_class(&class(6, "⟨1⟩", DividingType::II, None), &t).unwrap());
        assert!(!exists_class(&class(2, "⟨1⟨1⟨1⟩⟩⟩", DividingType::I, Some(2)), &t).unwrap());
        // m = 0 is pure table membership
        assert!(exists_class(&class(0, "⟨10⟩", DividingType::II, None), &t).unwrap());
        assert!(!exists_class(&class(0, "⟨10⟩", DividingType::I, Some(0)), &t).unwrap());
        // the empty scheme runs through the δ = 0 translation up to m = 5
        assert!(exists_class(&class(5, "∅", DividingType::II, None), &t).unwrap());
    }

    #[test]
    fn class_structural_errors() {
        assert!(
            RigidIsotopyClass::new(1, parse_viro("⟨9⟩").unwrap(), DividingType::I, Some(2))
                .is_err()
        );
        assert!(
            RigidIsotopyClass::new(1, parse_viro("⟨9⟩").unwrap(), DividingType::I, None).is_err()
        );
        assert!(
            RigidIsotopyClass::new(1, parse_viro("⟨9⟩").unwrap(), DividingType::II, Some(0))
                .is_err()
        );
        let empty_dividing = RigidIsotopyClass {
            m: 1,
            scheme: RealScheme::empty(),
            divtype: DividingType::I,
            r: Some(0),
        };
        assert!(class_report(&empty_dividing, &table()).is_err());
    }

    #[test]
    fn enumeration_matches_paper_counts() {
        let t = table();
        let classes = enumerate_classes(&t).unwrap();
        let (dividing, nondividing, empty) = class_totals(&classes);
        assert_eq!(dividing, 78);
        assert_eq!(nondividing, 131);
        assert_eq!(empty, 6);
        assert_eq!(nondividing - empty, 125);

        let tables = figure_tables(&classes);
        assert_eq!(tables.figure1.len(), 29);
        assert_eq!(tables.figure2.len(), 56);

        // no class has l = 11 with m ≥ 1
        assert!(!classes
            .iter()
            .any(|c| c.m >= 1 && counts(&c.scheme).ovals == 11));

        // m = 5 dividing classes: only ⟨1⟩ with r = 4
        let m5_dividing: Vec<_> = classes
            .iter()
            .filter(|c| c.m == 5 && c.divtype == DividingType::I)
            .collect();
        assert_eq!(m5_dividing.len(), 1);
        assert_eq!(render_viro(&m5_dividing[0].scheme), "⟨1⟩");
        assert_eq!(m5_dividing[0].r, Some(4));
        // and the only m = 5 non-dividing class is the empty scheme
        let m5_nondividing: Vec<_> = classes
            .iter()
            .filter(|c| c.m == 5 && c.divtype == DividingType::II)
            .collect();
        assert_eq!(m5_nondividing.len(), 1);
        assert!(m5_nondividing[0].scheme.is_empty());
    }

    #[test]
    fn figure_rows_spotchecks() {
        let classes = enumerate_classes(&table()).unwrap();
        let tables = figure_tables(&classes);
        let row = |scheme: &str| {
            tables
                .figure1
                .iter()
                .find(|r| r.scheme == scheme)
                .unwrap_or_else(|| panic!("{scheme} missing from figure 1"))
        };
        assert_eq!((row("⟨9⟩").r_set.clone(), row("⟨9⟩").m_max), (vec![0], 1));
        assert_eq!((row("⟨5⟩").r_set.clone(), row("⟨5⟩").m_max), (vec![2], 3));
        assert_eq!(
            (row("⟨1⊔1⟨1⟩⟩").r_set.clone(), row("⟨1⊔1⟨1⟩⟩").m_max),
            (vec![2, 4], 4)
        );
        assert_eq!(
            (row("⟨1⟨1⟨1⟩⟩⟩").r_set.clone(), row("⟨1⟨1⟨1⟩⟩⟩").m_max),
            (vec![0], 4)
        );
        assert_eq!((row("⟨1⟩").r_set.clone(), row("⟨1⟩").m_max), (vec![4], 5));
        assert_eq!(row("⟨3⊔1⟨3⟩⟩").r_set, vec![0, 2]);
        assert_eq!(row("⟨1⊔1⟨1⟩⟩").m_max, 4);

        let row2 = |scheme: &str| {
            tables
                .figure2
                .iter()
                .find(|r| r.scheme == scheme)
                .unwrap_or_else(|| panic!("{scheme} missing from figure 2"))
        };
        assert_eq!(row2("⟨8⟩").m_max, 1);
        assert_eq!(row2("⟨10⟩").m_max, 0);
        assert_eq!(row2("∅").m_max, 5);
    }

    #[test]
    fn m_max_laws() {
        let classes = enumerate_classes(&table()).unwrap();
        let tables = figure_tables(&classes);
        for row in &tables.figure1 {
            let scheme = parse_viro(&row.scheme).unwrap();
            let a = 11 - counts(&scheme).ovals as i64;
            assert_eq!(
                row.m_max as i64,
                a / 2,
                "figure1 m_max law for {}",
                row.scheme
            );
        }
        for row in &tables.figure2 {
            let scheme = parse_viro(&row.scheme).unwrap();
            if scheme.is_empty() {
                assert_eq!(row.m_max, 5);
            } else {
                let a = 11 - counts(&scheme).ovals as i64;
                assert_eq!(
                    row.m_max as i64,
                    (a - 1) / 2,
                    "figure2 m_max law for {}",
                    row.scheme
                );
            }
        }
    }

    #[test]
    fn m0_classes_equal_table() {
        let t = table();
        let classes = enumerate_classes(&t).unwrap();
        let m0_i: BTreeSet<RealScheme> = classes
            .iter()
            .filter(|c| c.m == 0 && c.divtype == DividingType::I)
            .map(|c| c.scheme.clone())
            .collect();
        let m0_ii: BTreeSet<RealScheme> = classes
            .iter()
            .filter(|c| c.m == 0 && c.divtype == DividingType::II)
            .map(|c| c.scheme.clone())
            .collect();
        assert_eq!(&m0_i, t.type_i());
        assert_eq!(&m0_ii, t.type_ii());
    }

    #[test]
    fn injectivity() {
        let classes = enumerate_classes(&table()).unwrap();
        assert!(injectivity_check(&classes));
        // the two (8,9,0,·) schemes are separated by r
        let a = scheme_to_invariants(&parse_viro("⟨1⟨1⟨1⟩⟩⟩").unwrap(), DividingType::I, Some(0))
            .unwrap();
        let b = scheme_to_invariants(&parse_viro("⟨1⊔1⟨1⟩⟩").unwrap(), DividingType::I, Some(2))
            .unwrap();
        assert_eq!((a.a, a.t, a.delta), (8, 9, 0));
        assert_eq!((b.a, b.t, b.delta), (8, 9, 0));
        assert_ne!(a.r, b.r);
    }

    #[test]
    fn tables_compare_to_themselves() {
        let classes = enumerate_classes(&table()).unwrap();
        let tables = figure_tables(&classes);
        assert!(compare_tables(&tables, &tables).is_empty());
        let mut broken = tables.clone();
        broken.figure1[0].m_max += 1;
        assert!(!compare_tables(&tables, &broken).is_empty());
    }
}
