//! Homological types: a marked geometric involution on the K3 lattice is a
//! tuple (L, h, σ, φ) with h² = 2, σ a set of m pairs of pairwise-orthogonal
//! roots orthogonal to h, and φ an isometric involution with φ(h) = −h,
//! φ(s'ᵢ) = −s''ᵢ, whose invariant part has exactly one positive square.
//!
//! From a valid marking this module extracts the numerical invariants
//! (m, a, t, δ, r) and provides the arithmetic existence conditions (i)-(v)
//! together with the boundary-condition machinery (c_v, ε_{v+}, the β-basis
//! discriminant route) that backs condition (v).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forms::{
    glue, orthogonal_sum, two_adic_unit_square_class, FiniteQuadraticForm, SubgroupAntiIsometry,
};
use crate::lattice::{
    direct_sum, discriminant_group, fixed_sublattice, is_even, is_primitive_sublattice, signature,
    twisted_characteristic_vector, IntLattice, LatticeInvolution, Sublattice,
};
use crate::matrix::{solve_mod2, IntMat, SolveMod2};
use crate::{Error, Result};

/// A marked geometric involution (L, h, σ, φ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedInvolution {
    pub lattice: IntLattice,
    pub h: Vec<BigInt>,
    pub sigma: Vec<(Vec<BigInt>, Vec<BigInt>)>,
    pub phi: LatticeInvolution,
}

/// The numerical invariants of a homological type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomInvariants {
    pub m: u32,
    pub a: u32,
    pub t: u32,
    pub delta: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
}

/// First violated clause of the marking invariants.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MarkingViolation {
    #[error("lattice is not even unimodular")]
    NotEvenUnimodular,
    #[error("phi is not an isometric involution")]
    NotAnInvolution,
    #[error("polarization vector does not have square 2")]
    PolarizationSquare,
    #[error("orthogonality: nodal class {0} is not a root of square -2")]
    NotARoot(usize),
    #[error("orthogonality: nodal classes {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("orthogonality: nodal class {0} is not orthogonal to h")]
    NotOrthogonalToH(usize),
    #[error("primitivity: the sublattice spanned by h and sigma is not primitive")]
    NotPrimitive,
    #[error("involution does not send h to -h")]
    WrongActionOnH,
    #[error("involution does not exchange-negate nodal pair {0}")]
    WrongActionOnPair(usize),
    #[error("real node: phi(s) = -s for nodal class {0}")]
    RealNode(usize),
    #[error("invariant sublattice has {0} positive squares instead of one")]
    PositiveSquares(usize),
    #[error("no anti-invariant vector pairs oddly with h (property (*) fails)")]
    PropertyStar,
}

/// Flattened list of the 2m nodal class vectors, pair-major.
fn sigma_flat(mi: &MarkedInvolution) -> Vec<&Vec<BigInt>> {
    mi.sigma.iter().flat_map(|(s1, s2)| [s1, s2]).collect()
}

fn vec_eq_neg(a: &[BigInt], b: &[BigInt]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| *x == -y)
}

/// Check every marking invariant, reporting the first violated clause.
pub fn validate_marking(mi: &MarkedInvolution) -> std::result::Result<(), MarkingViolation> {
    let l = &mi.lattice;
    if !is_even(l) || !l.is_unimodular() {
        return Err(MarkingViolation::NotEvenUnimodular);
    }
    if mi.phi.validate(l).is_err() {
        return Err(MarkingViolation::NotAnInvolution);
    }
    if l.dot(&mi.h, &mi.h) != BigInt::from(2) {
        return Err(MarkingViolation::PolarizationSquare);
    }

    let classes = sigma_flat(mi);
    let minus_two = BigInt::from(-2);
    for (i, s) in classes.iter().enumerate() {
        if l.dot(s, s) != minus_two {
            return Err(MarkingViolation::NotARoot(i));
        }
    }
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            if !l.dot(classes[i], classes[j]).is_zero() {
                return Err(MarkingViolation::NotOrthogonal(i, j));
            }
        }
        if !l.dot(classes[i], &mi.h).is_zero() {
            return Err(MarkingViolation::NotOrthogonalToH(i));
        }
    }

    let mut span: Vec<Vec<BigInt>> = vec![mi.h.clone()];
    span.extend(classes.iter().map(|v| (*v).clone()));
    let s_sub = Sublattice::from_vectors(l.rank(), &span);
    if !is_primitive_sublattice(l, &s_sub) {
        return Err(MarkingViolation::NotPrimitive);
    }

    let minus_h: Vec<BigInt> = mi.h.iter().map(|x| -x).collect();
    if mi.phi.apply(&mi.h) != minus_h {
        return Err(MarkingViolation::WrongActionOnH);
    }
    for (i, s) in classes.iter().enumerate() {
        if vec_eq_neg(&mi.phi.apply(s), s) {
            return Err(MarkingViolation::RealNode(i));
        }
    }
    for (i, (s1, s2)) in mi.sigma.iter().enumerate() {
        if !vec_eq_neg(&mi.phi.apply(s1), s2) || !vec_eq_neg(&mi.phi.apply(s2), s1) {
            return Err(MarkingViolation::WrongActionOnPair(i));
        }
    }

    let plus = fixed_sublattice(l, &mi.phi, 1).expect("validated involution");
    let plus_lat = plus.as_lattice(l);
    let (pos, _) = signature(&plus_lat).map_err(|_| MarkingViolation::PositiveSquares(0))?;
    if pos != 1 {
        return Err(MarkingViolation::PositiveSquares(pos));
    }

    // property (*): some x with φ(x) = −x has x·h odd
    let minus = fixed_sublattice(l, &mi.phi, -1).expect("validated involution");
    let star = (0..minus.rank()).any(|j| {
        let v = minus.basis().col(j);
        (l.dot(&v, &mi.h) % 2u8) != BigInt::zero()
    });
    if !star {
        return Err(MarkingViolation::PropertyStar);
    }
    Ok(())
}

/// Extract (m, a, t, δ, r) from a valid marking.
///
/// a and t come from the invariant sublattice (discriminant group must be of
/// period 2); δ = 0 iff the twisted characteristic vector lies mod 2 in the
/// span of {h} ∪ σ; the crossing count r solves ᾱ = Σ_{i∈I} (s̄'ᵢ + s̄''ᵢ),
/// which by property (*) has no h̄ term.
pub fn invariants(mi: &MarkedInvolution) -> Result<HomInvariants> {
    validate_marking(mi)?;
    let l = &mi.lattice;
    let m = mi.sigma.len() as u32;

    let plus = fixed_sublattice(l, &mi.phi, 1)?;
    let plus_lat = plus.as_lattice(l);
    let (pos, neg) = signature(&plus_lat)?;
    debug_assert_eq!(pos, 1);
    let t = neg as u32;

    let factors = discriminant_group(&plus_lat)?;
    if factors.iter().any(|f| f != &BigInt::from(2)) {
        return Err(Error::NotPeriodTwo);
    }
    let a = factors.len() as u32;

    let alpha = twisted_characteristic_vector(l, &mi.phi)?;

    // columns: h, s'₁, s''₁, …, s'_m, s''_m
    let mut cols: Vec<Vec<BigInt>> = vec![mi.h.clone()];
    for (s1, s2) in &mi.sigma {
        cols.push(s1.clone());
        cols.push(s2.clone());
    }
    let span = IntMat::from_cols(l.rank(), &cols);
    let (delta, r) = match solve_mod2(&span, &alpha) {
        SolveMod2::None => (1u8, None),
        SolveMod2::Multiple(_) => {
            return Err(Error::Inconsistency(
                "S/2S does not embed: sigma classes dependent mod 2".into(),
            ))
        }
        SolveMod2::Unique(coefs) => {
            if coefs[0] != 0 {
                return Err(Error::Inconsistency(
                    "characteristic vector has an h̄ component despite property (*)".into(),
                ));
            }
            let mut count = 0u32;
            for i in 0..m as usize {
                let (c1, c2) = (coefs[1 + 2 * i], coefs[2 + 2 * i]);
                if c1 != c2 {
                    return Err(Error::Inconsistency(
                        "characteristic vector splits a conjugate nodal pair".into(),
                    ));
                }
                count += c1 as u32;
            }
            (0u8, Some(count))
        }
    };

    Ok(HomInvariants { m, a, t, delta, r })
}

/// Discriminant form of S₊ = ⟨p₁,…,p_m⟩, pᵢ² = −4: (ℤ/4)^m with q = −1/4.
pub fn s_plus_form(m: u32) -> Result<FiniteQuadraticForm> {
    if m == 0 {
        return Err(Error::input("s_plus_form needs m ≥ 1"));
    }
    let quarter = BigRational::new(BigInt::from(-1), BigInt::from(4));
    let mut f = FiniteQuadraticForm::cyclic(4, quarter.clone())?;
    for _ in 1..m {
        f = orthogonal_sum(&f, &FiniteQuadraticForm::cyclic(4, quarter.clone())?);
    }
    Ok(f)
}

/// Discriminant form of S₋ = ⟨n₁,…,n_m, h⟩: (ℤ/4)^m ⊕ ℤ/2 with q = 1/2 on
/// the h̄ class.
pub fn s_minus_form(m: u32) -> Result<FiniteQuadraticForm> {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    Ok(orthogonal_sum(
        &s_plus_form(m)?,
        &FiniteQuadraticForm::cyclic(2, half)?,
    ))
}

/// The glued form q_r: 2-torsion of A_{S₊} glued to the 2-torsion of A_{S₋}
/// minus the h̄ class, along the anti-isometry [pᵢ/2] ↦ [nᵢ/2] induced by S.
pub fn q_r_form(m: u32) -> Result<FiniteQuadraticForm> {
    let sp = s_plus_form(m)?;
    let sm = s_minus_form(m)?;
    let two_torsion = |k: usize, total: usize| -> Vec<Vec<u64>> {
        (0..k)
            .map(|i| {
                let mut el = vec![0u64; total];
                el[i] = 2;
                el
            })
            .collect()
    };
    let gamma_plus = sp.form_on_generators(&two_torsion(m as usize, m as usize))?;
    let gamma_minus = sm.form_on_generators(&two_torsion(m as usize, m as usize + 1))?;
    let unit = |i: usize| {
        let mut el = vec![0u64; m as usize];
        el[i] = 1;
        el
    };
    let identity = SubgroupAntiIsometry {
        domain_generators: (0..m as usize).map(unit).collect(),
        image_generators: (0..m as usize).map(unit).collect(),
    };
    glue(&gamma_plus, &gamma_minus, &identity)
}

/// c_v ∈ {−1,0,1,2} mod 8, with ½·c_v = q(v_q) mod 2. Here q(v_q) ≡ r (mod 2),
/// so c_v is 0 for even r and 2 for odd r.
pub fn c_v(r: u32) -> u8 {
    if r.is_multiple_of(2) {
        0
    } else {
        2
    }
}

/// ε_{v₊} ≡ ⌈r/2⌉ (mod 2).
pub fn epsilon_v_plus(r: u32) -> u8 {
    (r.div_ceil(2) % 2) as u8
}

/// Independent route to ε_{v₊}: build the orthogonal β-basis of η with
/// squares −5/4 (odd i ≤ r) and −1/4 (otherwise), scale to bᵢ² = 4βᵢ²,
/// take the discriminant, strip powers of 4 and read the exponent of 5 from
/// the 2-adic square class of the odd part.
pub fn epsilon_via_discriminant(m: u32, r: u32) -> Result<u8> {
    if r > m {
        return Err(Error::input("crossing count r exceeds the pair count m"));
    }
    let mut disc = BigInt::from(1);
    for i in 1..=m {
        let b_sq: i64 = if i <= r && i % 2 == 1 { -20 } else { -4 };
        disc *= BigInt::from(b_sq);
    }
    let four = BigInt::from(4);
    while (&disc % &four).is_zero() {
        disc /= &four;
    }
    let class = two_adic_unit_square_class(&BigRational::from(disc))?;
    Ok(class.five_exponent())
}

/// 4·ε_{v₊}(r) + c_v(r) + 2r ≡ 0 (mod 8); holds for every r.
pub fn epsilon_identity(r: u32) -> bool {
    (4 * epsilon_v_plus(r) as u32 + c_v(r) as u32 + 2 * r).is_multiple_of(8)
}

/// Boundary condition 1 − t ≡ 4·ε_{v₊} + c_v (mod 8); meaningful in the
/// δ = 0, a = 1 + t regime, where it is equivalent to 2r ≡ a − 2 (mod 8).
pub fn boundary_condition_bc1(_a: i64, t: i64, r: u32) -> bool {
    let rhs = 4 * epsilon_v_plus(r) as i64 + c_v(r) as i64;
    (1 - t - rhs).rem_euclid(8) == 0
}

/// Per-condition report for the arithmetic existence conditions (i)-(v).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionsReport {
    /// a ≤ 1+t ≤ 20−a
    pub cond_i: bool,
    /// a ≡ 1+t (mod 2)
    pub cond_ii: bool,
    /// 2m ≤ a, equality only if δ = 0
    pub cond_iii: bool,
    /// δ = 0 ⇒ 2r ≡ 1−t (mod 4)
    pub cond_iv: bool,
    /// δ = 0 and a = 1+t ⇒ 2r ≡ a−2 (mod 8)
    pub cond_v: bool,
}

impl ConditionsReport {
    pub fn all(&self) -> bool {
        self.cond_i && self.cond_ii && self.cond_iii && self.cond_iv && self.cond_v
    }

    pub fn entries(&self) -> [(&'static str, bool); 5] {
        [
            ("(i)", self.cond_i),
            ("(ii)", self.cond_ii),
            ("(iii)", self.cond_iii),
            ("(iv)", self.cond_iv),
            ("(v)", self.cond_v),
        ]
    }
}

/// The arithmetic existence conditions for m ≥ 1.
///
/// The m = 0 boundary is out of scope here: nonsingular classes are decided
/// by the static table in the classifier.
pub fn arithmetic_conditions(
    m: u32,
    a: i64,
    t: i64,
    delta: u8,
    r: Option<u32>,
) -> Result<ConditionsReport> {
    if m == 0 {
        return Err(Error::input(
            "arithmetic conditions apply for m ≥ 1; m = 0 uses the nonsingular table",
        ));
    }
    if delta > 1 {
        return Err(Error::input("delta must be 0 or 1"));
    }
    if delta == 0 && r.is_none() {
        return Err(Error::input("r is required when delta = 0"));
    }
    if delta == 1 && r.is_some() {
        return Err(Error::input("r must be absent when delta = 1"));
    }
    let two_m = 2 * m as i64;
    let cond_i = a <= 1 + t && t < 20 - a;
    let cond_ii = (a - (1 + t)).rem_euclid(2) == 0;
    let cond_iii = two_m <= a && (two_m != a || delta == 0);
    let cond_iv = match r {
        None => true,
        Some(r) => (2 * r as i64 - (1 - t)).rem_euclid(4) == 0,
    };
    let cond_v = match r {
        None => true,
        Some(r) => a != 1 + t || (2 * r as i64 - (a - 2)).rem_euclid(8) == 0,
    };
    Ok(ConditionsReport {
        cond_i,
        cond_ii,
        cond_iii,
        cond_iv,
        cond_v,
    })
}

// ---------------------------------------------------------------------------
// Block-model factory

/// Per-summand action of the involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockAction {
    /// Identity on the block.
    Plus,
    /// Negation on the block.
    Minus,
    /// Swap the two coordinates of a rank-2 block (needs a swap-symmetric Gram).
    SwapCoords,
    /// x ↦ −(x at the partner block); the partner must carry the mirror action.
    PairNegate(usize),
}

/// Assembly description: blocks with actions, plus placements of h and σ in
/// the coordinates of the assembled direct sum.
#[derive(Clone, Debug)]
pub struct ModelSpec {
    pub blocks: Vec<(IntLattice, BlockAction)>,
    pub h: Vec<BigInt>,
    pub sigma: Vec<(Vec<BigInt>, Vec<BigInt>)>,
}

/// Assemble a marked involution from blocks. The blocks must tile the K3
/// lattice (rank 22, even, unimodular, signature (3,19)). The caller still
/// runs [`validate_marking`] (or [`invariants`], which validates).
pub fn build_model_involution(spec: &ModelSpec) -> Result<MarkedInvolution> {
    let mut lattice = spec.blocks[0].0.clone();
    for (block, _) in &spec.blocks[1..] {
        lattice = direct_sum(&lattice, block);
    }
    if lattice.rank() != 22
        || !is_even(&lattice)
        || !lattice.is_unimodular()
        || signature(&lattice)? != (3, 19)
    {
        return Err(Error::input("blocks do not tile the K3 lattice"));
    }

    let offsets: Vec<usize> = spec
        .blocks
        .iter()
        .scan(0usize, |acc, (b, _)| {
            let off = *acc;
            *acc += b.rank();
            Some(off)
        })
        .collect();

    let n = lattice.rank();
    let mut phi = IntMat::zero(n, n);
    for (idx, (block, action)) in spec.blocks.iter().enumerate() {
        let off = offsets[idx];
        let rk = block.rank();
        match action {
            BlockAction::Plus => {
                for i in 0..rk {
                    phi[(off + i, off + i)] = BigInt::from(1);
                }
            }
            BlockAction::Minus => {
                for i in 0..rk {
                    phi[(off + i, off + i)] = BigInt::from(-1);
                }
            }
            BlockAction::SwapCoords => {
                if rk != 2 || block.gram()[(0, 0)] != block.gram()[(1, 1)] {
                    return Err(Error::input(
                        "coordinate swap needs a rank-2 block with a swap-symmetric Gram",
                    ));
                }
                phi[(off, off + 1)] = BigInt::from(1);
                phi[(off + 1, off)] = BigInt::from(1);
            }
            BlockAction::PairNegate(partner) => {
                let p = *partner;
                if p >= spec.blocks.len()
                    || spec.blocks[p].1 != BlockAction::PairNegate(idx)
                    || spec.blocks[p].0.gram() != block.gram()
                {
                    return Err(Error::input(
                        "pair-negate partners must reference each other and share a Gram",
                    ));
                }
                let po = offsets[p];
                for i in 0..rk {
                    phi[(po + i, off + i)] = BigInt::from(-1);
                }
            }
        }
    }

    Ok(MarkedInvolution {
        lattice,
        h: spec.h.clone(),
        sigma: spec.sigma.clone(),
        phi: LatticeInvolution::new(phi),
    })
}

/// Named catalog model with its expected invariants.
pub struct CatalogEntry {
    pub name: &'static str,
    pub model: MarkedInvolution,
    pub expected: HomInvariants,
}

fn unit_vec(n: usize, entries: &[(usize, i64)]) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    for &(i, x) in entries {
        v[i] = BigInt::from(x);
    }
    v
}

/// The built-in models. Block layout: U₁ (0-1), U₂ (2-3), U₃ (4-5),
/// E8(−1)₁ (6-13), E8(−1)₂ (14-21).
pub fn catalog() -> Vec<CatalogEntry> {
    use crate::lattice::{make_standard, StandardLattice};
    let u = || make_standard(StandardLattice::U);
    let e8 = || make_standard(StandardLattice::E8Minus);
    let h_u1 = unit_vec(22, &[(0, 1), (1, 1)]);
    let e8_pair = |root: usize| {
        (
            unit_vec(22, &[(6 + root, 1)]),
            unit_vec(22, &[(14 + root, 1)]),
        )
    };

    let hm1 = build_model_involution(&ModelSpec {
        blocks: vec![
            (u(), BlockAction::Minus),
            (u(), BlockAction::Plus),
            (u(), BlockAction::Minus),
            (e8(), BlockAction::PairNegate(4)),
            (e8(), BlockAction::PairNegate(3)),
        ],
        h: h_u1.clone(),
        sigma: vec![e8_pair(0)],
    })
    .expect("HM1 assembles");

    let hm2 = build_model_involution(&ModelSpec {
        blocks: vec![
            (u(), BlockAction::Minus),
            (u(), BlockAction::PairNegate(2)),
            (u(), BlockAction::PairNegate(1)),
            (e8(), BlockAction::Minus),
            (e8(), BlockAction::Minus),
        ],
        h: h_u1.clone(),
        sigma: vec![(
            unit_vec(22, &[(2, 1), (3, -1)]),
            unit_vec(22, &[(4, 1), (5, -1)]),
        )],
    })
    .expect("HM2 assembles");

    let hm3 = build_model_involution(&ModelSpec {
        blocks: vec![
            (u(), BlockAction::Minus),
            (u(), BlockAction::Minus),
            (u(), BlockAction::SwapCoords),
            (e8(), BlockAction::PairNegate(4)),
            (e8(), BlockAction::PairNegate(3)),
        ],
        h: h_u1.clone(),
        sigma: vec![e8_pair(0)],
    })
    .expect("HM3 assembles");

    let hm4 = build_model_involution(&ModelSpec {
        blocks: vec![
            (u(), BlockAction::Minus),
            (u(), BlockAction::Plus),
            (u(), BlockAction::Minus),
            (e8(), BlockAction::PairNegate(4)),
            (e8(), BlockAction::PairNegate(3)),
        ],
        h: h_u1,
        sigma: vec![e8_pair(0), e8_pair(1)],
    })
    .expect("HM4 assembles");

    let inv = |m, a, t, delta, r| HomInvariants { m, a, t, delta, r };
    vec![
        CatalogEntry {
            name: "HM1",
            model: hm1,
            expected: inv(1, 8, 9, 0, Some(0)),
        },
        CatalogEntry {
            name: "HM2",
            model: hm2,
            expected: inv(1, 2, 1, 0, Some(0)),
        },
        CatalogEntry {
            name: "HM3",
            model: hm3,
            expected: inv(1, 9, 8, 1, None),
        },
        CatalogEntry {
            name: "HM4",
            model: hm4,
            expected: inv(2, 8, 9, 0, Some(0)),
        },
    ]
}

/// Serialized catalog: marking literals with their expected invariants.
#[derive(Serialize, Deserialize)]
pub struct CatalogFile {
    pub models: Vec<CatalogModel>,
}

#[derive(Serialize, Deserialize)]
pub struct CatalogModel {
    pub name: String,
    pub marking: MarkedInvolution,
    pub expected: HomInvariants,
}

pub fn catalog_file() -> CatalogFile {
    CatalogFile {
        models: catalog()
            .into_iter()
            .map(|e| CatalogModel {
                name: e.name.to_string(),
                marking: e.model,
                expected: e.expected,
            })
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// JSON literal: {"lattice": {...}, "h": [...], "sigma": [[[..],[..]], ...],
//                "phi": [[...]]}

#[derive(Serialize, Deserialize)]
struct MarkedInvolutionLiteral {
    lattice: IntLattice,
    h: Vec<i64>,
    sigma: Vec<(Vec<i64>, Vec<i64>)>,
    phi: Vec<Vec<i64>>,
}

impl Serialize for MarkedInvolution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let to_i64 = |v: &[BigInt]| -> Vec<i64> {
            v.iter()
                .map(|x| i64::try_from(x.clone()).expect("entry fits i64"))
                .collect()
        };
        let phi = (0..self.phi.matrix().rows())
            .map(|i| {
                (0..self.phi.matrix().cols())
                    .map(|j| i64::try_from(self.phi.matrix()[(i, j)].clone()).unwrap())
                    .collect()
            })
            .collect();
        MarkedInvolutionLiteral {
            lattice: self.lattice.clone(),
            h: to_i64(&self.h),
            sigma: self
                .sigma
                .iter()
                .map(|(a, b)| (to_i64(a), to_i64(b)))
                .collect(),
            phi,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MarkedInvolution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let lit = MarkedInvolutionLiteral::deserialize(d)?;
        let to_big = |v: &[i64]| -> Vec<BigInt> { v.iter().map(|&x| BigInt::from(x)).collect() };
        Ok(MarkedInvolution {
            lattice: lit.lattice,
            h: to_big(&lit.h),
            sigma: lit
                .sigma
                .iter()
                .map(|(a, b)| (to_big(a), to_big(b)))
                .collect(),
            phi: LatticeInvolution::new(IntMat::from_rows(&lit.phi)),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::Parity;
    use crate::lattice::{make_standard, StandardLattice};

    fn hm1() -> MarkedInvolution {
        catalog().remove(0).model
    }

    #[test]
    fn catalog_models_validate_and_match() {
        for entry in catalog() {
            assert_eq!(validate_marking(&entry.model), Ok(()), "{}", entry.name);
            assert_eq!(
                invariants(&entry.model).unwrap(),
                entry.expected,
                "{}",
                entry.name
            );
        }
    }

    #[test]
    fn hm1_eigenlattice_and_characteristic_vector() {
        use crate::lattice::{fixed_sublattice, signature, twisted_characteristic_vector};
        let mi = hm1();
        let plus = fixed_sublattice(&mi.lattice, &mi.phi, 1).unwrap();
        assert_eq!(plus.rank(), 10);
        assert_eq!(signature(&plus.as_lattice(&mi.lattice)).unwrap(), (1, 9));
        // twisted characteristic vector vanishes mod 2 on this model
        let alpha = twisted_characteristic_vector(&mi.lattice, &mi.phi).unwrap();
        assert!(alpha.iter().all(|x| (x % 2u8).is_zero()));
    }

    #[test]
    fn hm1_variant_with_two_positive_squares_rejected() {
        let u = || make_standard(StandardLattice::U);
        let e8 = || make_standard(StandardLattice::E8Minus);
        let bad = build_model_involution(&ModelSpec {
            blocks: vec![
                (u(), BlockAction::Minus),
                (u(), BlockAction::Plus),
                (u(), BlockAction::Plus),
                (e8(), BlockAction::PairNegate(4)),
                (e8(), BlockAction::PairNegate(3)),
            ],
            h: unit_vec(22, &[(0, 1), (1, 1)]),
            sigma: vec![(unit_vec(22, &[(6, 1)]), unit_vec(22, &[(14, 1)]))],
        })
        .unwrap();
        assert_eq!(
            validate_marking(&bad),
            Err(MarkingViolation::PositiveSquares(2))
        );
    }

    #[test]
    fn sigma_inside_anti_invariant_block_is_a_real_node() {
        let u = || make_standard(StandardLattice::U);
        let e8 = || make_standard(StandardLattice::E8Minus);
        // both nodal classes inside E8 blocks that phi negates pointwise
        let bad = build_model_involution(&ModelSpec {
            blocks: vec![
                (u(), BlockAction::Minus),
                (u(), BlockAction::Plus),
                (u(), BlockAction::Minus),
                (e8(), BlockAction::Minus),
                (e8(), BlockAction::Minus),
            ],
            h: unit_vec(22, &[(0, 1), (1, 1)]),
            sigma: vec![(unit_vec(22, &[(6, 1)]), unit_vec(22, &[(14, 1)]))],
        })
        .unwrap();
        assert_eq!(validate_marking(&bad), Err(MarkingViolation::RealNode(0)));
    }

    #[test]
    fn orthogonality_and_primitivity_violations() {
        let mut mi = hm1();
        // E8 Dynkin nodes 3 and 4 are adjacent: their roots pair to -1
        mi.sigma = vec![
            (unit_vec(22, &[(8, 1)]), unit_vec(22, &[(16, 1)])),
            (unit_vec(22, &[(9, 1)]), unit_vec(22, &[(17, 1)])),
        ];
        assert!(matches!(
            validate_marking(&mi),
            Err(MarkingViolation::NotOrthogonal(_, _))
        ));

        // h = e+f and s' = e−f inside one U summand: (h+s')/2 = e integral
        let u = || make_standard(StandardLattice::U);
        let e8 = || make_standard(StandardLattice::E8Minus);
        let imprimitive = build_model_involution(&ModelSpec {
            blocks: vec![
                (u(), BlockAction::Minus),
                (u(), BlockAction::PairNegate(2)),
                (u(), BlockAction::PairNegate(1)),
                (e8(), BlockAction::Minus),
                (e8(), BlockAction::Minus),
            ],
            h: unit_vec(22, &[(2, 1), (3, 1)]),
            sigma: vec![(
                unit_vec(22, &[(2, 1), (3, -1)]),
                unit_vec(22, &[(4, -1), (5, 1)]),
            )],
        })
        .unwrap();
        assert_eq!(
            validate_marking(&imprimitive),
            Err(MarkingViolation::NotPrimitive)
        );

        let mut not_root = hm1();
        not_root.sigma = vec![(unit_vec(22, &[(0, 1)]), unit_vec(22, &[(1, 1)]))];
        assert!(matches!(
            validate_marking(&not_root),
            Err(MarkingViolation::NotARoot(0))
        ));
    }

    #[test]
    fn invariants_error_propagates_from_validation() {
        let mut mi = hm1();
        mi.sigma = vec![(unit_vec(22, &[(0, 1)]), unit_vec(22, &[(1, 1)]))];
        assert!(matches!(invariants(&mi), Err(Error::Marking(_))));
    }

    #[test]
    fn invariants_stable_under_pair_symmetries() {
        let mut model = catalog().remove(3).model; // HM4, m = 2
        let base = invariants(&model).unwrap();
        model.sigma.reverse();
        assert_eq!(invariants(&model).unwrap(), base);
        let (s1, s2) = model.sigma[0].clone();
        model.sigma[0] = (s2, s1);
        assert_eq!(invariants(&model).unwrap(), base);
    }

    #[test]
    fn s_forms() {
        let sp1 = s_plus_form(1).unwrap();
        assert_eq!(sp1.orders(), &[4]);
        assert_eq!(
            sp1.q_gen(0),
            BigRational::new(BigInt::from(7), BigInt::from(4))
        );
        let sm1 = s_minus_form(1).unwrap();
        assert_eq!(sm1.orders(), &[4, 2]);
        assert_eq!(
            sm1.q_gen(1),
            BigRational::new(BigInt::from(1), BigInt::from(2))
        );
        let sp2 = s_plus_form(2).unwrap();
        let p = sp2.profile();
        assert_eq!((p.length, p.period, p.parity), (2, 4, Parity::Odd));
        assert!(s_plus_form(0).is_err());

        // matches the discriminant form of ⟨−4⟩^m ⊕ ⟨2⟩ computed from Gram
        use crate::forms::are_isomorphic;
        use crate::lattice::{direct_sum, discriminant_form};
        let m4 = make_standard(StandardLattice::MinusFour);
        let two = make_standard(StandardLattice::Two);
        let s_minus_lattice = direct_sum(&direct_sum(&m4, &m4), &two);
        assert!(are_isomorphic(
            &discriminant_form(&s_minus_lattice).unwrap(),
            &s_minus_form(2).unwrap()
        ));
    }

    #[test]
    fn q_r_is_two_group_with_popcount_q() {
        for m in 1..=5u32 {
            let qr = q_r_form(m).unwrap();
            assert_eq!(qr.group_order(), 1u64 << m);
            let p = qr.profile();
            assert!(p.period <= 2);
            assert_eq!(p.parity, Parity::Even);
            // half the elements have q ≡ 1, half q ≡ 0 (popcount parity)
            let one = BigRational::from(BigInt::from(1));
            let ones = qr.elements().filter(|x| qr.q_of(x) == one).count() as u64;
            assert_eq!(ones, 1u64 << (m - 1));
        }
        assert!(q_r_form(0).is_err());
    }

    #[test]
    fn c_v_and_epsilon() {
        assert_eq!(c_v(0), 0);
        assert_eq!(c_v(1), 2);
        assert_eq!(c_v(6), 0);
        assert_eq!(epsilon_v_plus(0), 0);
        assert_eq!(epsilon_v_plus(1), 1);
        assert_eq!(epsilon_v_plus(2), 1);
        assert_eq!(epsilon_v_plus(3), 0);
        assert_eq!(epsilon_via_discriminant(3, 2).unwrap(), 1);
        assert_eq!(epsilon_via_discriminant(5, 0).unwrap(), 0);
        assert_eq!(epsilon_via_discriminant(4, 4).unwrap(), 0);
        assert!(epsilon_via_discriminant(1, 2).is_err());
    }

    #[test]
    fn epsilon_lemma_sweep() {
        for r in 0..=20 {
            assert!(epsilon_identity(r), "identity fails at r = {r}");
            for m in r..=r + 10 {
                assert_eq!(
                    epsilon_via_discriminant(m, r).unwrap(),
                    epsilon_v_plus(r),
                    "discriminant route disagrees at m={m}, r={r}"
                );
            }
        }
    }

    #[test]
    fn bc1_examples_and_equivalence() {
        assert!(boundary_condition_bc1(2, 1, 0));
        assert!(boundary_condition_bc1(10, 9, 0));
        assert!(!boundary_condition_bc1(10, 9, 1));
        for a in 0i64..=20 {
            let t = a - 1;
            for r in 0u32..=10 {
                let direct = (2 * r as i64 - (a - 2)).rem_euclid(8) == 0;
                assert_eq!(boundary_condition_bc1(a, t, r), direct, "a={a}, r={r}");
            }
        }
    }

    #[test]
    fn conditions_examples() {
        let ok = arithmetic_conditions(1, 2, 1, 0, Some(0)).unwrap();
        assert!(ok.all());
        let bad_iv = arithmetic_conditions(1, 2, 1, 0, Some(1)).unwrap();
        assert!(!bad_iv.cond_iv && !bad_iv.all());
        let hm1_row = arithmetic_conditions(1, 8, 9, 0, Some(0)).unwrap();
        assert!(hm1_row.all());
        assert!(arithmetic_conditions(0, 2, 1, 0, Some(0)).is_err());
        assert!(arithmetic_conditions(1, 2, 1, 0, None).is_err());
        assert!(arithmetic_conditions(1, 9, 8, 1, Some(0)).is_err());
        // delta = 1 with 2m = a violates (iii)
        let eq = arithmetic_conditions(2, 4, 5, 1, None).unwrap();
        assert!(!eq.cond_iii);
    }

    #[test]
    fn marked_involution_literal_roundtrip() {
        let mi = hm1();
        let json = serde_json::to_string(&mi).unwrap();
        let back: MarkedInvolution = serde_json::from_str(&json).unwrap();
        assert_eq!(back, mi);
        assert_eq!(invariants(&back).unwrap(), catalog()[0].expected);
    }
}
