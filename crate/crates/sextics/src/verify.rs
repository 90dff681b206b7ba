//! Self-verification suites: every module-level invariant, runnable as a
//! batch (the CLI `verify` subcommand) and reused by the integration tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::classify::{
    class_totals, compare_tables, enumerate_classes, figure_tables, injectivity_check,
    topological_conditions, FigureTables, NonsingularTable, RigidIsotopyClass,
};
use crate::forms::{
    are_isomorphic, gauss_signature, glue, orthogonal_sum, two_adic_unit_square_class,
    FiniteQuadraticForm, SubgroupAntiIsometry,
};
use crate::involution::{
    arithmetic_conditions, boundary_condition_bc1, catalog, epsilon_identity, epsilon_v_plus,
    epsilon_via_discriminant, invariants, validate_marking,
};
use crate::lattice::{
    direct_sum, discriminant_form, discriminant_group, is_even, is_primitive_sublattice,
    make_standard, orthogonal_complement, signature, IntLattice, StandardLattice, Sublattice,
};
use crate::matrix::rational_inverse;
use crate::scheme::{
    counts, enumerate_schemes, euler_char_nonorientable_half, no_injective_pairs_rule, parse_viro,
    region_decomposition_chi, render_viro, render_with, scheme_to_invariants, DividingType,
    Notation,
};

/// The shipped classification tables, embedded for `verify`.
pub const GOLDEN_FIGURES: &str =
    include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../figures.json"));

pub fn golden_tables() -> FigureTables {
    serde_json::from_str(GOLDEN_FIGURES).expect("embedded figures.json parses")
}

/// Outcome of one verification suite.
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, result: Result<String, String>) -> Check {
    match result {
        Ok(detail) => Check {
            name,
            passed: true,
            detail,
        },
        Err(detail) => Check {
            name,
            passed: false,
            detail,
        },
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Small even lattices with |det| ≤ 64 and rank ≤ 4 used as the Milgram
/// cross-check catalog; includes odd determinant factors (3) on purpose.
fn milgram_catalog() -> Vec<IntLattice> {
    let u = make_standard(StandardLattice::U);
    let two = make_standard(StandardLattice::Two);
    let m2 = make_standard(StandardLattice::A1Minus);
    let m4 = make_standard(StandardLattice::MinusFour);
    let four = IntLattice::from_rows(&[vec![4]]).unwrap();
    let six = IntLattice::from_rows(&[vec![6]]).unwrap();
    let m6 = IntLattice::from_rows(&[vec![-6]]).unwrap();
    let eight = IntLattice::from_rows(&[vec![8]]).unwrap();
    let m8 = IntLattice::from_rows(&[vec![-8]]).unwrap();
    let a2 = IntLattice::from_rows(&[vec![2, -1], vec![-1, 2]]).unwrap();
    let a2m = IntLattice::from_rows(&[vec![-2, 1], vec![1, -2]]).unwrap();
    let u2 = IntLattice::from_rows(&[vec![0, 2], vec![2, 0]]).unwrap();
    let d4m = IntLattice::from_rows(&[
        vec![-2, 1, 0, 0],
        vec![1, -2, 1, 1],
        vec![0, 1, -2, 0],
        vec![0, 1, 0, -2],
    ])
    .unwrap();
    vec![
        two.clone(),
        m2.clone(),
        four.clone(),
        m4.clone(),
        six.clone(),
        m6.clone(),
        eight,
        m8,
        u.clone(),
        u2.clone(),
        a2.clone(),
        a2m.clone(),
        d4m,
        direct_sum(&two, &m2),
        direct_sum(&two, &m4),
        direct_sum(&four, &m4),
        direct_sum(&m2, &m2),
        direct_sum(&m4, &m4),
        direct_sum(&a2, &m2),
        direct_sum(&a2m, &two),
        direct_sum(&u, &m4),
        direct_sum(&u, &u),
        direct_sum(&u2, &u2),
        direct_sum(&six, &m2),
        direct_sum(&m6, &m6),
        direct_sum(&direct_sum(&two, &m2), &direct_sum(&two, &m2)),
        direct_sum(&direct_sum(&m2, &m2), &direct_sum(&m2, &m2)),
    ]
}

fn lattice_unit_suite() -> Result<String, String> {
    let k3 = make_standard(StandardLattice::K3);
    ensure(k3.rank() == 22, "K3 rank")?;
    ensure(is_even(&k3), "K3 evenness")?;
    ensure(k3.is_unimodular(), "K3 determinant")?;
    ensure(
        signature(&k3).map_err(|e| e.to_string())? == (3, 19),
        "K3 signature",
    )?;
    let m4 = make_standard(StandardLattice::MinusFour);
    let mut l = m4.clone();
    for m in 1..=5usize {
        let f = discriminant_form(&l).map_err(|e| e.to_string())?;
        ensure(f.orders() == vec![4; m], format!("⟨−4⟩^{m} orders"))?;
        let expected = BigRational::new(BigInt::from(7), BigInt::from(4));
        for i in 0..m {
            ensure(f.q_gen(i) == expected, format!("⟨−4⟩^{m} q-value {i}"))?;
        }
        l = direct_sum(&l, &m4);
    }
    // signature parts add to rank, |det| = product of discriminant orders
    for lat in milgram_catalog() {
        let (p, n) = signature(&lat).map_err(|e| e.to_string())?;
        ensure(p + n == lat.rank(), "signature vs rank")?;
        let product: BigInt = discriminant_group(&lat)
            .map_err(|e| e.to_string())?
            .into_iter()
            .product();
        ensure(product == lat.det().abs(), "disc order product vs |det|")?;
    }
    // eigenlattices of an involution: mutually orthogonal, ranks add up
    for entry in catalog() {
        let l = &entry.model.lattice;
        let plus =
            crate::lattice::fixed_sublattice(l, &entry.model.phi, 1).map_err(|e| e.to_string())?;
        let minus =
            crate::lattice::fixed_sublattice(l, &entry.model.phi, -1).map_err(|e| e.to_string())?;
        ensure(
            plus.rank() + minus.rank() == l.rank(),
            format!("{}: eigenlattice ranks do not sum", entry.name),
        )?;
        let pairing = plus.basis().transpose().mul(l.gram()).mul(minus.basis());
        for i in 0..pairing.rows() {
            for j in 0..pairing.cols() {
                ensure(
                    pairing[(i, j)].is_zero(),
                    format!("{}: eigenlattices not orthogonal", entry.name),
                )?;
            }
        }
    }
    Ok("K3 invariants, ⟨−4⟩^m forms, signature/determinant/eigenlattice consistency".into())
}

fn disc_group_oracle_suite() -> Result<String, String> {
    // brute force: enumerate dual classes in (1/D)ℤⁿ/ℤⁿ and compare element
    // order multisets with the SNF answer
    let catalog: Vec<IntLattice> = vec![
        make_standard(StandardLattice::Two),
        make_standard(StandardLattice::A1Minus),
        make_standard(StandardLattice::MinusFour),
        IntLattice::from_rows(&[vec![6]]).unwrap(),
        IntLattice::from_rows(&[vec![-8]]).unwrap(),
        IntLattice::from_rows(&[vec![2, -1], vec![-1, 2]]).unwrap(),
        IntLattice::from_rows(&[vec![0, 2], vec![2, 0]]).unwrap(),
        direct_sum(
            &make_standard(StandardLattice::Two),
            &make_standard(StandardLattice::A1Minus),
        ),
        direct_sum(
            &make_standard(StandardLattice::MinusFour),
            &make_standard(StandardLattice::A1Minus),
        ),
        IntLattice::from_rows(&[vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 2]]).unwrap(),
        IntLattice::from_rows(&[vec![-2, 1, 0], vec![1, -2, 1], vec![0, 1, -2]]).unwrap(),
    ];
    let mut tested = 0;
    for lat in catalog {
        let n = lat.rank();
        let det = lat.det().abs();
        let d = det.to_u64().expect("small determinant");
        if d == 0 || d > 16 || n > 3 {
            continue;
        }
        tested += 1;
        let g_inv = rational_inverse(lat.gram()).expect("nondegenerate");
        // dual classes: vectors G⁻¹w mod ℤⁿ for w in (ℤ/D)ⁿ
        let mut orders: Vec<u64> = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        let total = d.pow(n as u32);
        for mut idx in 0..total {
            let mut w = vec![BigInt::zero(); n];
            for slot in w.iter_mut() {
                *slot = BigInt::from(idx % d);
                idx /= d;
            }
            let dual: Vec<BigRational> = crate::matrix::rat_mat_vec(&g_inv, &w);
            let frac: Vec<BigRational> = dual
                .iter()
                .map(|x| x - BigRational::from(x.to_integer().clone()))
                .map(|x| {
                    if x < BigRational::zero() {
                        x + BigRational::one()
                    } else {
                        x
                    }
                })
                .collect();
            let key = frac
                .iter()
                .map(|x| format!("{}/{}", x.numer(), x.denom()))
                .collect::<Vec<_>>()
                .join(",");
            if seen.insert(key) {
                let order = frac
                    .iter()
                    .map(|x| x.denom().to_u64().unwrap())
                    .fold(1u64, |a, b| a.lcm(&b));
                orders.push(order);
            }
        }
        ensure(
            seen.len() as u64 == d,
            format!("dual class count {} vs |det| {d}", seen.len()),
        )?;
        let snf_orders = discriminant_group(&lat).map_err(|e| e.to_string())?;
        // element order multiset of ⊕ ℤ/dᵢ
        let mut expected: Vec<u64> = vec![1];
        for f in &snf_orders {
            let f = f.to_u64().unwrap();
            let mut next = Vec::new();
            for existing in &expected {
                for c in 0..f {
                    let ord = if c == 0 { 1 } else { f / f.gcd(&c) };
                    next.push(existing.lcm(&ord));
                }
            }
            expected = next;
        }
        orders.sort_unstable();
        expected.sort_unstable();
        ensure(
            orders == expected,
            format!("element order multisets differ: {orders:?} vs {expected:?}"),
        )?;
    }
    Ok(format!(
        "dual-vector enumeration matches SNF on {tested} lattices (rank ≤ 3, |det| ≤ 16)"
    ))
}

fn complement_primitivity_suite() -> Result<String, String> {
    let u = make_standard(StandardLattice::U);
    let k3 = make_standard(StandardLattice::K3);
    let vecs = |v: &[i64]| -> Vec<BigInt> { v.iter().map(|&x| BigInt::from(x)).collect() };
    let cases: Vec<(IntLattice, Sublattice)> = vec![
        (u.clone(), Sublattice::from_vectors(2, &[vecs(&[1, 1])])),
        (u.clone(), Sublattice::from_vectors(2, &[vecs(&[2, 0])])),
        (u.clone(), Sublattice::from_vectors(2, &[])),
        (k3.clone(), {
            let mut h = vec![BigInt::zero(); 22];
            h[0] = BigInt::one();
            h[1] = BigInt::one();
            let mut s1 = vec![BigInt::zero(); 22];
            s1[6] = BigInt::one();
            let mut s2 = vec![BigInt::zero(); 22];
            s2[14] = BigInt::one();
            Sublattice::from_vectors(22, &[h, s1, s2])
        }),
    ];
    for (lat, sub) in &cases {
        let comp = orthogonal_complement(lat, sub);
        ensure(
            is_primitive_sublattice(lat, &comp),
            "complement not primitive",
        )?;
    }
    // rank count for the K3 case: complement of the rank-3 span is rank 19
    let comp = orthogonal_complement(&cases[3].0, &cases[3].1);
    ensure(comp.rank() == 19, "K3 complement rank")?;
    Ok("orthogonal complements are primitive (incl. rank-19 complement in K3)".into())
}

fn form_axioms_suite() -> Result<String, String> {
    let m4 = make_standard(StandardLattice::MinusFour);
    let mut forms: Vec<FiniteQuadraticForm> = vec![
        discriminant_form(&make_standard(StandardLattice::A1Minus)).unwrap(),
        discriminant_form(&direct_sum(&m4, &m4)).unwrap(),
        crate::involution::s_minus_form(3).unwrap(),
        orthogonal_sum(
            &FiniteQuadraticForm::cyclic(3, BigRational::new(2.into(), 3.into())).unwrap(),
            &FiniteQuadraticForm::cyclic(4, BigRational::new((-1).into(), 4.into())).unwrap(),
        ),
    ];
    // the invariant part of HM1 gives an order-256 form, still ≤ 512
    let hm1 = catalog().remove(0);
    let plus = crate::lattice::fixed_sublattice(&hm1.model.lattice, &hm1.model.phi, 1).unwrap();
    forms.push(discriminant_form(&plus.as_lattice(&hm1.model.lattice)).unwrap());

    let two = BigRational::from(BigInt::from(2));
    let mut pairs = 0u64;
    for f in &forms {
        ensure(f.group_order() <= 512, "test form too large")?;
        let elements: Vec<_> = f.elements().collect();
        for x in &elements {
            for y in &elements {
                let lhs = f.q_of(&f.add(x, y)) - f.q_of(x) - f.q_of(y);
                let rhs = f.b_of(x, y) * &two;
                let diff = lhs - rhs;
                ensure(
                    diff.is_integer() && diff.to_integer().is_even(),
                    "polarization identity fails",
                )?;
                pairs += 1;
            }
        }
        // q(nx) = n²q(x)
        for x in &elements {
            for n in 0..=8u64 {
                let lhs = f.q_of(&f.scalar_mul(n, x));
                let rhs = f.q_of(x) * BigRational::from(BigInt::from(n * n));
                let diff = lhs - rhs;
                ensure(
                    diff.is_integer() && diff.to_integer().is_even(),
                    "q(nx) = n²q(x) fails",
                )?;
            }
        }
    }
    Ok(format!(
        "polarization and scaling identities over {pairs} pairs"
    ))
}

fn milgram_suite() -> Result<String, String> {
    let mut tested = 0;
    for lat in milgram_catalog() {
        ensure(lat.rank() <= 4, "catalog rank")?;
        ensure(lat.det().abs() <= BigInt::from(64), "catalog determinant")?;
        let f = discriminant_form(&lat).map_err(|e| e.to_string())?;
        let sigma = gauss_signature(&f).map_err(|e| e.to_string())?;
        let (p, n) = signature(&lat).map_err(|e| e.to_string())?;
        let expected = (p as i64 - n as i64).rem_euclid(8) as u8;
        ensure(
            sigma == expected,
            format!(
                "Milgram mismatch for {:?}: σ(q) = {sigma}, sig = {expected}",
                lat.label
            ),
        )?;
        tested += 1;
    }
    Ok(format!(
        "gauss_signature ≡ sig₊ − sig₋ (mod 8) on {tested} lattices"
    ))
}

fn period2_classification_suite() -> Result<String, String> {
    // all nondegenerate period-2 forms on (ℤ/2)^k, k ≤ 3 (order ≤ 32 overall
    // when summed in pairs): classified by (length, parity, Gauss signature)
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let mut forms: Vec<FiniteQuadraticForm> = Vec::new();
    for k in 1..=3usize {
        // enumerate q-values in {0, 1/2, 1, 3/2} and off-diagonal b in {0, 1/2}
        let qs = [
            BigRational::zero(),
            half.clone(),
            BigRational::one(),
            &half * BigRational::from(BigInt::from(3)),
        ];
        let offs = [BigRational::zero(), half.clone()];
        let off_slots = k * (k - 1) / 2;
        for q_idx in 0..(4usize.pow(k as u32)) {
            for b_idx in 0..(2usize.pow(off_slots as u32)) {
                let mut q = Vec::with_capacity(k);
                let mut rem = q_idx;
                for _ in 0..k {
                    q.push(qs[rem % 4].clone());
                    rem /= 4;
                }
                let mut b = vec![vec![BigRational::zero(); k]; k];
                for (i, qi) in q.iter().enumerate() {
                    // b(g,g) ≡ q(g) mod 1
                    b[i][i] = qi - BigRational::from(qi.to_integer().clone());
                }
                let mut rem = b_idx;
                for i in 0..k {
                    for j in i + 1..k {
                        b[i][j] = offs[rem % 2].clone();
                        b[j][i] = b[i][j].clone();
                        rem /= 2;
                    }
                }
                let orders = vec![BigInt::from(2); k];
                if let Ok(f) = FiniteQuadraticForm::new(orders, q, b) {
                    if f.is_nondegenerate() {
                        forms.push(f);
                    }
                }
            }
        }
    }
    let mut profiles = Vec::with_capacity(forms.len());
    for f in &forms {
        profiles.push((f.profile(), gauss_signature(f).map_err(|e| e.to_string())?));
    }
    let mut compared = 0;
    for (i, f) in forms.iter().enumerate() {
        let (fp, fs) = (profiles[i].0, profiles[i].1);
        for (j, g) in forms.iter().enumerate().skip(i) {
            let (gp, gs) = (profiles[j].0, profiles[j].1);
            if fp.length != gp.length || fp.parity != gp.parity {
                continue;
            }
            let iso = are_isomorphic(f, g);
            ensure(
                iso == (fs == gs),
                format!(
                    "period-2 classification: (len {}, {:?}, σ {fs} vs σ {gs}) iso = {iso}",
                    fp.length, fp.parity
                ),
            )?;
            compared += 1;
        }
    }
    Ok(format!(
        "(length, parity, σ mod 8) classifies {} period-2 forms ({compared} comparisons)",
        forms.len()
    ))
}

fn glue_normalization_suite() -> Result<String, String> {
    // glue output must not depend on generator ordering
    let sp = crate::involution::s_plus_form(2).unwrap();
    let sm = crate::involution::s_minus_form(2).unwrap();
    let gens = |order: &[usize], total: usize| -> Vec<Vec<u64>> {
        order
            .iter()
            .map(|&i| {
                let mut el = vec![0u64; total];
                el[i] = 2;
                el
            })
            .collect()
    };
    let gp_a = sp.form_on_generators(&gens(&[0, 1], 2)).unwrap();
    let gm_a = sm.form_on_generators(&gens(&[0, 1], 3)).unwrap();
    let gp_b = sp.form_on_generators(&gens(&[1, 0], 2)).unwrap();
    let gm_b = sm.form_on_generators(&gens(&[1, 0], 3)).unwrap();
    let identity = SubgroupAntiIsometry {
        domain_generators: vec![vec![1, 0], vec![0, 1]],
        image_generators: vec![vec![1, 0], vec![0, 1]],
    };
    let glued_a = glue(&gp_a, &gm_a, &identity).map_err(|e| e.to_string())?;
    let glued_b = glue(&gp_b, &gm_b, &identity).map_err(|e| e.to_string())?;
    ensure(
        are_isomorphic(&glued_a, &glued_b),
        "glue depends on generator ordering",
    )?;
    ensure(
        glued_a.orders() == glued_b.orders(),
        "normalized orders differ",
    )?;
    Ok("glue is stable under generator reordering".into())
}

fn two_adic_suite() -> Result<String, String> {
    let mut tested = 0;
    for num in [1i64, 3, 5, 7, -1, -3, -5, -7, 9, 11, 15, 21, -15] {
        for den in [1i64, 3, 5, 7, 9] {
            let u = BigRational::new(num.into(), den.into());
            let base = two_adic_unit_square_class(&u).map_err(|e| e.to_string())?;
            for v in [1i64, 3, 5, 7, 9, 15] {
                let scaled = &u * BigRational::from(BigInt::from(v * v));
                let got = two_adic_unit_square_class(&scaled).map_err(|e| e.to_string())?;
                ensure(
                    got == base,
                    format!("class not square-invariant at {u} · {v}²"),
                )?;
                tested += 1;
            }
        }
    }
    Ok(format!("square-class invariance over {tested} cases"))
}

fn epsilon_suite() -> Result<String, String> {
    for r in 0..=20u32 {
        ensure(epsilon_identity(r), format!("identity fails at r = {r}"))?;
        for m in r..=r + 10 {
            let via = epsilon_via_discriminant(m, r).map_err(|e| e.to_string())?;
            ensure(
                via == epsilon_v_plus(r),
                format!("ε mismatch at m = {m}, r = {r}"),
            )?;
        }
    }
    Ok("4ε + c_v + 2r ≡ 0 (mod 8) and the discriminant route, r ≤ 20".into())
}

fn bc1_suite() -> Result<String, String> {
    for a in 0i64..=20 {
        let t = a - 1;
        for r in 0u32..=10 {
            let bc1 = boundary_condition_bc1(a, t, r);
            let direct = (2 * r as i64 - (a - 2)).rem_euclid(8) == 0;
            ensure(bc1 == direct, format!("BC1 mismatch at a = {a}, r = {r}"))?;
        }
    }
    Ok("BC1 ⇔ 2r ≡ a − 2 (mod 8) for a ≤ 20, r ≤ 10".into())
}

fn scheme_roundtrip_suite() -> Result<String, String> {
    let schemes = enumerate_schemes(11, 3);
    for s in &schemes {
        let text = render_viro(s);
        let back = parse_viro(&text).map_err(|e| e.to_string())?;
        ensure(&back == s, format!("roundtrip failed for {text}"))?;
        let ascii = render_with(s, Notation::Ascii);
        let back = parse_viro(&ascii).map_err(|e| e.to_string())?;
        ensure(&back == s, format!("ascii roundtrip failed for {ascii}"))?;
        if !s.is_empty() {
            let t = scheme_to_invariants(s, DividingType::II, None).map_err(|e| e.to_string())?;
            ensure(t.a + counts(s).ovals as i64 == 11, "a + l ≠ 11")?;
            let chi = euler_char_nonorientable_half(s).map_err(|e| e.to_string())?;
            let oracle = region_decomposition_chi(s).map_err(|e| e.to_string())?;
            ensure(chi == oracle, format!("χ(B) oracle mismatch for {text}"))?;
        }
        let c = counts(s);
        ensure(c.even + c.odd == c.ovals, "parity split")?;
        ensure(
            c.injective_pairs <= c.ovals * c.ovals.saturating_sub(1) / 2,
            "injective pair bound",
        )?;
    }
    Ok(format!(
        "parse ∘ render identity and χ(B) oracle over {} schemes",
        schemes.len()
    ))
}

fn nest_free_r_suite() -> Result<String, String> {
    // for the nest-free dividing schemes the injective-pair rule pins r
    for (text, forced) in [
        ("⟨1⟩", 4u32),
        ("⟨3⟩", 3),
        ("⟨5⟩", 2),
        ("⟨7⟩", 1),
        ("⟨9⟩", 0),
    ] {
        let s = parse_viro(text).unwrap();
        for r in 0..=5u32 {
            let ok = no_injective_pairs_rule(&s, r);
            ensure(
                ok == (r == forced),
                format!("{text}: rule admits r = {r}, expected only {forced}"),
            )?;
        }
    }
    Ok("⟨1⟩,⟨3⟩,⟨5⟩,⟨7⟩,⟨9⟩ force r = 4,3,2,1,0".into())
}

fn catalog_suite() -> Result<String, String> {
    for entry in catalog() {
        validate_marking(&entry.model).map_err(|e| format!("{}: {e}", entry.name))?;
        let inv = invariants(&entry.model).map_err(|e| format!("{}: {e}", entry.name))?;
        ensure(
            inv == entry.expected,
            format!("{}: got {inv:?}, expected {:?}", entry.name, entry.expected),
        )?;
    }
    // HM1 matches the ⟨1⟨1⟨1⟩⟩⟩ type-I translation
    let hm1 = catalog().remove(0);
    let inv = invariants(&hm1.model).unwrap();
    let t =
        scheme_to_invariants(&parse_viro("⟨1⟨1⟨1⟩⟩⟩").unwrap(), DividingType::I, Some(0)).unwrap();
    ensure(
        t.a == inv.a as i64 && t.t == inv.t as i64 && t.delta == inv.delta && t.r == inv.r,
        "HM1 does not match the ⟨1⟨1⟨1⟩⟩⟩ translation",
    )?;
    // invariants are stable under reordering σ pairs and swapping s' ↔ s''
    let mut model = catalog().remove(3).model;
    let base = invariants(&model).map_err(|e| e.to_string())?;
    model.sigma.reverse();
    ensure(
        invariants(&model).map_err(|e| e.to_string())? == base,
        "invariants change under pair reordering",
    )?;
    let (s1, s2) = model.sigma[0].clone();
    model.sigma[0] = (s2, s1);
    ensure(
        invariants(&model).map_err(|e| e.to_string())? == base,
        "invariants change under s' ↔ s'' swap",
    )?;
    Ok("4 catalog models validate with the expected invariants".into())
}

fn dual_path_suite() -> Result<String, String> {
    let table = NonsingularTable::standard();
    let schemes = enumerate_schemes(11, 3);
    let mut agreements = 0u64;
    for scheme in &schemes {
        for m in 1..=5u32 {
            let mut candidates: Vec<(DividingType, Option<u32>)> = vec![(DividingType::II, None)];
            if !scheme.is_empty() {
                for r in 0..=m {
                    candidates.push((DividingType::I, Some(r)));
                }
            }
            for (divtype, r) in candidates {
                let c = RigidIsotopyClass::new(m, scheme.clone(), divtype, r)
                    .map_err(|e| e.to_string())?;
                let topo = topological_conditions(&c, &table);
                if !topo.smoothing {
                    continue;
                }
                let trans = scheme_to_invariants(scheme, divtype, r).map_err(|e| e.to_string())?;
                let arith = arithmetic_conditions(m, trans.a, trans.t, trans.delta, trans.r)
                    .map_err(|e| e.to_string())?;
                ensure(
                    topo.conditions_2_to_4() == arith.all(),
                    format!("paths disagree for {c}"),
                )?;
                agreements += 1;
            }
        }
    }
    Ok(format!(
        "topological (2)-(4) ⇔ arithmetic (i)-(v) on {agreements} candidates"
    ))
}

fn figures_suite() -> Result<String, String> {
    let table = NonsingularTable::standard();
    let classes = enumerate_classes(&table).map_err(|e| e.to_string())?;
    let tables = figure_tables(&classes);
    let golden = golden_tables();
    let diffs = compare_tables(&tables, &golden);
    ensure(diffs.is_empty(), diffs.join("; "))?;
    let (dividing, nondividing, empty) = class_totals(&classes);
    ensure(dividing == 78, format!("dividing classes: {dividing} ≠ 78"))?;
    ensure(
        nondividing - empty == 125,
        format!(
            "non-dividing over nonempty schemes: {} ≠ 125",
            nondividing - empty
        ),
    )?;
    ensure(injectivity_check(&classes), "invariant map not injective")?;
    // nonsingular classes coincide with the static table
    let m0_i: std::collections::BTreeSet<_> = classes
        .iter()
        .filter(|c| c.m == 0 && c.divtype == DividingType::I)
        .map(|c| c.scheme.clone())
        .collect();
    let m0_ii: std::collections::BTreeSet<_> = classes
        .iter()
        .filter(|c| c.m == 0 && c.divtype == DividingType::II)
        .map(|c| c.scheme.clone())
        .collect();
    ensure(&m0_i == table.type_i(), "m = 0 dividing classes ≠ table")?;
    ensure(
        &m0_ii == table.type_ii(),
        "m = 0 non-dividing classes ≠ table",
    )?;
    // m_max laws: ⌊a/2⌋ for dividing rows, ⌊(a−1)/2⌋ for non-dividing rows
    for row in &tables.figure1 {
        let scheme = parse_viro(&row.scheme).unwrap();
        let a = 11 - counts(&scheme).ovals as i64;
        ensure(
            row.m_max as i64 == a / 2,
            format!("figure1 m_max law: {}", row.scheme),
        )?;
    }
    for row in &tables.figure2 {
        let scheme = parse_viro(&row.scheme).unwrap();
        if scheme.is_empty() {
            ensure(row.m_max == 5, "∅ row m_max")?;
        } else {
            let a = 11 - counts(&scheme).ovals as i64;
            ensure(
                row.m_max as i64 == (a - 1) / 2,
                format!("figure2 m_max law: {}", row.scheme),
            )?;
        }
    }
    Ok(format!(
        "tables reproduced ({} + {} rows); {dividing} dividing, {nondividing} non-dividing \
         ({} + {empty} for ∅; the stated total 125 counts nonempty schemes only)",
        tables.figure1.len(),
        tables.figure2.len(),
        nondividing - empty
    ))
}

/// Run every verification suite.
pub fn run_all() -> Vec<Check> {
    vec![
        check("lattice-units", lattice_unit_suite()),
        check("disc-group-bruteforce", disc_group_oracle_suite()),
        check("complement-primitivity", complement_primitivity_suite()),
        check("form-axioms", form_axioms_suite()),
        check("milgram", milgram_suite()),
        check("period2-classification", period2_classification_suite()),
        check("glue-normalization", glue_normalization_suite()),
        check("two-adic-squares", two_adic_suite()),
        check("epsilon-congruence", epsilon_suite()),
        check("bc1-equivalence", bc1_suite()),
        check("scheme-roundtrip", scheme_roundtrip_suite()),
        check("nest-free-r-forcing", nest_free_r_suite()),
        check("involution-catalog", catalog_suite()),
        check("dual-path-agreement", dual_path_suite()),
        check("figure-reproduction", figures_suite()),
    ]
}
