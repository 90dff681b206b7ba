//! Acceptance suite: one test per criterion, each printing a PASS line.
//! Run with `cargo test -p sextics --test acceptance -- --nocapture`.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use sextics::classify::{
    class_totals, compare_tables, enumerate_classes, figure_tables, injectivity_check,
    topological_conditions, FigureTables, NonsingularTable, RigidIsotopyClass,
};
use sextics::forms::gauss_signature;
use sextics::involution::{
    arithmetic_conditions, boundary_condition_bc1, catalog, epsilon_identity, epsilon_v_plus,
    epsilon_via_discriminant, invariants, validate_marking,
};
use sextics::lattice::{
    direct_sum, discriminant_form, is_even, make_standard, signature, StandardLattice,
};
use sextics::scheme::{
    enumerate_schemes, parse_viro, render_viro, render_with, scheme_to_invariants, DividingType,
    Notation,
};

fn golden() -> FigureTables {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../figures.json");
    serde_json::from_str(&std::fs::read_to_string(path).expect("figures.json readable"))
        .expect("figures.json parses")
}

fn enumerated() -> Vec<RigidIsotopyClass> {
    enumerate_classes(&NonsingularTable::standard()).expect("enumeration is consistent")
}

#[test]
fn acceptance_01_figure1_reproduction() {
    let start = Instant::now();
    let classes = enumerated();
    let elapsed = start.elapsed();
    let tables = figure_tables(&classes);
    let gold = golden();
    assert_eq!(
        tables.figure1.len(),
        29,
        "figure 1 must have 29 scheme rows"
    );
    let diffs: Vec<String> = compare_tables(&tables, &gold)
        .into_iter()
        .filter(|d| d.starts_with("figure1"))
        .collect();
    assert!(diffs.is_empty(), "figure 1 mismatches: {diffs:?}");
    // named spot checks
    let row = |scheme: &str| tables.figure1.iter().find(|r| r.scheme == scheme).unwrap();
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
    assert!(
        elapsed.as_secs() < 5,
        "enumeration took {elapsed:?}, budget is 5 s"
    );
    println!(
        "PASS criterion 1: figure 1 reproduced (29 rows, exact r-sets and m_max) in {elapsed:?}"
    );
}

#[test]
fn acceptance_02_dividing_total() {
    let (dividing, _, _) = class_totals(&enumerated());
    assert_eq!(dividing, 78);
    println!("PASS criterion 2: 78 dividing classes");
}

#[test]
fn acceptance_03_figure2_structure() {
    let classes = enumerated();
    let tables = figure_tables(&classes);
    let gold = golden();
    assert_eq!(
        tables.figure2.len(),
        56,
        "figure 2 must have 56 scheme rows"
    );
    let diffs: Vec<String> = compare_tables(&tables, &gold)
        .into_iter()
        .filter(|d| d.starts_with("figure2"))
        .collect();
    assert!(diffs.is_empty(), "figure 2 mismatches: {diffs:?}");
    // per-row m_max law: (0,0,1,1,2,2,3,3,4,4) for l = 10..1 and 5 for ∅
    let expected_m_max = |l: u32| -> u32 {
        match l {
            10 | 9 => 0,
            8 | 7 => 1,
            6 | 5 => 2,
            4 | 3 => 3,
            2 | 1 => 4,
            0 => 5,
            _ => unreachable!(),
        }
    };
    let mut per_l = std::collections::BTreeMap::<u32, u32>::new();
    for row in &tables.figure2 {
        let scheme = parse_viro(&row.scheme).unwrap();
        let l = sextics::scheme::counts(&scheme).ovals;
        assert_eq!(row.m_max, expected_m_max(l), "m_max law at {}", row.scheme);
        *per_l.entry(l).or_default() += 1;
    }
    for l in 1..=10u32 {
        assert_eq!(per_l[&l], l, "type-II scheme count at l = {l}");
    }
    assert_eq!(per_l[&0], 1);

    let (_, nondividing, empty) = class_totals(&classes);
    assert_eq!(nondividing - empty, 125);
    println!(
        "PASS criterion 3: figure 2 reproduced (56 rows); non-dividing total {nondividing} = \
         125 nonempty-scheme classes + {empty} classes of the empty scheme \
         (the stated count 125 excludes the ∅ row)"
    );
}

#[test]
fn acceptance_04_epsilon_congruence_suite() {
    for r in 0..=20u32 {
        assert!(epsilon_identity(r), "4ε + c_v + 2r ≢ 0 (mod 8) at r = {r}");
        for m in r..=r + 10 {
            assert_eq!(
                epsilon_via_discriminant(m, r).unwrap(),
                epsilon_v_plus(r),
                "ε routes disagree at m = {m}, r = {r}"
            );
        }
    }
    println!("PASS criterion 4: ε identity and discriminant route for r ≤ 20");
}

#[test]
fn acceptance_05_bc1_equivalence() {
    for a in 0i64..=20 {
        let t = a - 1;
        for r in 0u32..=10 {
            assert_eq!(
                boundary_condition_bc1(a, t, r),
                (2 * r as i64 - (a - 2)).rem_euclid(8) == 0,
                "BC1 mismatch at a = {a}, r = {r}"
            );
        }
    }
    println!("PASS criterion 5: BC1 ⇔ 2r ≡ a − 2 (mod 8) on the full grid");
}

#[test]
fn acceptance_06_dual_path_agreement() {
    let table = NonsingularTable::standard();
    let mut checked = 0u64;
    for scheme in enumerate_schemes(11, 3) {
        for m in 1..=5u32 {
            let mut candidates: Vec<(DividingType, Option<u32>)> = vec![(DividingType::II, None)];
            if !scheme.is_empty() {
                for r in 0..=m {
                    candidates.push((DividingType::I, Some(r)));
                }
            }
            for (divtype, r) in candidates {
                let c = RigidIsotopyClass::new(m, scheme.clone(), divtype, r).unwrap();
                let topo = topological_conditions(&c, &table);
                if !topo.smoothing {
                    continue;
                }
                let trans = scheme_to_invariants(&scheme, divtype, r).unwrap();
                let arith =
                    arithmetic_conditions(m, trans.a, trans.t, trans.delta, trans.r).unwrap();
                assert_eq!(
                    topo.conditions_2_to_4(),
                    arith.all(),
                    "paths disagree for {c}"
                );
                checked += 1;
            }
        }
    }
    assert!(checked > 1000, "sweep unexpectedly small: {checked}");
    println!("PASS criterion 6: zero dual-path disagreements over {checked} candidates");
}

#[test]
fn acceptance_07_injectivity() {
    let classes = enumerated();
    assert!(injectivity_check(&classes), "invariant map has a collision");
    println!(
        "PASS criterion 7: invariant map injective on {} classes",
        classes.len()
    );
}

#[test]
fn acceptance_08_lattice_unit_suite() {
    let k3 = make_standard(StandardLattice::K3);
    assert_eq!(signature(&k3).unwrap(), (3, 19));
    assert!(is_even(&k3));
    assert!(k3.det().abs() == BigInt::from(1));

    let m4 = make_standard(StandardLattice::MinusFour);
    let mut l = m4.clone();
    for m in 1..=5usize {
        let f = discriminant_form(&l).unwrap();
        assert_eq!(f.orders(), vec![4; m].as_slice());
        let minus_quarter_mod_2 = BigRational::new(BigInt::from(7), BigInt::from(4));
        for i in 0..m {
            assert_eq!(
                f.q_gen(i),
                minus_quarter_mod_2,
                "q on generator {i} of ⟨−4⟩^{m}"
            );
        }
        l = direct_sum(&l, &m4);
    }

    let hm1 = catalog().remove(0);
    assert_eq!(validate_marking(&hm1.model), Ok(()));
    let inv = invariants(&hm1.model).unwrap();
    assert_eq!(
        (inv.m, inv.a, inv.t, inv.delta, inv.r),
        (1, 8, 9, 0, Some(0))
    );
    let t =
        scheme_to_invariants(&parse_viro("⟨1⟨1⟨1⟩⟩⟩").unwrap(), DividingType::I, Some(0)).unwrap();
    assert_eq!((t.a, t.t, t.delta, t.r), (8, 9, 0, Some(0)));
    println!("PASS criterion 8: K3 unit checks, ⟨−4⟩^m discriminant forms, HM1 = (1,8,9,0,0)");
}

#[test]
fn acceptance_09_milgram_oracle() {
    let u = make_standard(StandardLattice::U);
    let two = make_standard(StandardLattice::Two);
    let m2 = make_standard(StandardLattice::A1Minus);
    let m4 = make_standard(StandardLattice::MinusFour);
    let a2 = sextics::lattice::IntLattice::from_rows(&[vec![2, -1], vec![-1, 2]]).unwrap();
    let a2m = sextics::lattice::IntLattice::from_rows(&[vec![-2, 1], vec![1, -2]]).unwrap();
    let six = sextics::lattice::IntLattice::from_rows(&[vec![6]]).unwrap();
    let m6 = sextics::lattice::IntLattice::from_rows(&[vec![-6]]).unwrap();
    let eight = sextics::lattice::IntLattice::from_rows(&[vec![8]]).unwrap();
    let u2 = sextics::lattice::IntLattice::from_rows(&[vec![0, 2], vec![2, 0]]).unwrap();
    let d4m = sextics::lattice::IntLattice::from_rows(&[
        vec![-2, 1, 0, 0],
        vec![1, -2, 1, 1],
        vec![0, 1, -2, 0],
        vec![0, 1, 0, -2],
    ])
    .unwrap();
    let lattices = vec![
        two.clone(),
        m2.clone(),
        m4.clone(),
        six,
        m6.clone(),
        eight,
        u.clone(),
        u2,
        a2.clone(),
        a2m,
        d4m,
        direct_sum(&two, &m2),
        direct_sum(&two, &m4),
        direct_sum(&m4, &m4),
        direct_sum(&a2, &m2),
        direct_sum(&u, &m4),
        direct_sum(&u, &u),
        direct_sum(&m6, &m6),
        direct_sum(&direct_sum(&two, &m2), &direct_sum(&two, &m2)),
        direct_sum(&direct_sum(&m2, &m2), &direct_sum(&m2, &m2)),
    ];
    let mut count = 0;
    for lat in lattices {
        assert!(lat.rank() <= 4 && lat.det().abs() <= BigInt::from(64));
        let f = discriminant_form(&lat).unwrap();
        let sigma = gauss_signature(&f).unwrap();
        let (p, n) = signature(&lat).unwrap();
        assert_eq!(
            sigma as i64,
            (p as i64 - n as i64).rem_euclid(8),
            "Milgram mismatch for a rank-{} lattice of det {}",
            lat.rank(),
            lat.det()
        );
        count += 1;
    }
    println!("PASS criterion 9: Milgram σ(q) ≡ sig (mod 8) on {count} catalog lattices");
}

#[test]
fn acceptance_10_parser_roundtrip() {
    let schemes = enumerate_schemes(11, 3);
    for s in &schemes {
        assert_eq!(&parse_viro(&render_viro(s)).unwrap(), s);
        assert_eq!(&parse_viro(&render_with(s, Notation::Ascii)).unwrap(), s);
    }
    println!(
        "PASS criterion 10: parse ∘ render identity on {} schemes (≤ 11 ovals, depth ≤ 3)",
        schemes.len()
    );
}
