//! Integer lattices given by Gram matrices.
//!
//! A lattice here is a free ℤ-module with a symmetric integer bilinear form,
//! stored as its Gram matrix in a fixed basis. Sublattices are basis matrices
//! in ambient coordinates and are kept saturated (primitively closed) by all
//! operations that produce them. Signatures come from symmetric Gaussian
//! elimination over ℚ, with a 2×2 hyperbolic pivot when every remaining
//! diagonal entry vanishes, so even lattices like U never leave exact
//! arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::forms::FiniteQuadraticForm;
use crate::matrix::{
    kernel_basis, rat_mat_vec, rational_inverse, smith_normal_form, solve_mod2, IntMat, SolveMod2,
};
use crate::{Error, Result};

/// Integer lattice: a symmetric Gram matrix plus an optional label.
#[derive(Clone, PartialEq, Eq)]
pub struct IntLattice {
    gram: IntMat,
    pub label: Option<String>,
}

impl std::fmt::Debug for IntLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.label {
            Some(l) => write!(f, "IntLattice[{l}] {:?}", self.gram),
            None => write!(f, "IntLattice {:?}", self.gram),
        }
    }
}

/// Sublattice of an ambient lattice; columns of `basis` are the vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    basis: IntMat,
}

/// Isometric involution in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeInvolution {
    matrix: IntMat,
}

/// Names accepted by [`make_standard`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardLattice {
    /// Hyperbolic plane, Gram [[0,1],[1,0]].
    U,
    /// Negative definite E8 (Dynkin Gram negated).
    E8Minus,
    /// ⟨−2⟩.
    A1Minus,
    /// ⟨2⟩.
    Two,
    /// ⟨−4⟩.
    MinusFour,
    /// U³ ⊕ E8(−1)², the even unimodular lattice of signature (3,19).
    K3,
}

impl std::str::FromStr for StandardLattice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "U" => Ok(StandardLattice::U),
            "E8_minus" => Ok(StandardLattice::E8Minus),
            "A1_minus" => Ok(StandardLattice::A1Minus),
            "two" => Ok(StandardLattice::Two),
            "minus_four" => Ok(StandardLattice::MinusFour),
            "K3" => Ok(StandardLattice::K3),
            other => Err(Error::UnknownLattice(other.to_string())),
        }
    }
}

impl IntLattice {
    pub fn new(gram: IntMat) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(IntLattice { gram, label: None })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        IntLattice::new(IntMat::from_rows(rows))
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMat {
        &self.gram
    }

    pub fn det(&self) -> BigInt {
        self.gram.det()
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    /// Inner product of two vectors in basis coordinates.
    pub fn dot(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let gy = self.gram.mul_vec(y);
        x.iter().zip(gy.iter()).map(|(a, b)| a * b).sum()
    }

    /// Full lattice as a sublattice of itself.
    pub fn full_sublattice(&self) -> Sublattice {
        Sublattice {
            basis: IntMat::identity(self.rank()),
        }
    }
}

impl Sublattice {
    /// Columns must be linearly independent over ℚ.
    pub fn from_vectors(ambient_rank: usize, vectors: &[Vec<BigInt>]) -> Self {
        Sublattice::from_basis(IntMat::from_cols(ambient_rank, vectors))
    }

    pub fn from_basis(basis: IntMat) -> Self {
        assert!(
            smith_normal_form(&basis).rank() == basis.cols(),
            "sublattice basis columns must be linearly independent"
        );
        Sublattice { basis }
    }

    pub fn basis(&self) -> &IntMat {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// Gram matrix of the sublattice inside `ambient`.
    pub fn gram_in(&self, ambient: &IntLattice) -> IntMat {
        self.basis.transpose().mul(ambient.gram()).mul(&self.basis)
    }

    /// The sublattice as a lattice in its own right.
    pub fn as_lattice(&self, ambient: &IntLattice) -> IntLattice {
        IntLattice {
            gram: self.gram_in(ambient),
            label: None,
        }
    }
}

impl LatticeInvolution {
    pub fn new(matrix: IntMat) -> Self {
        LatticeInvolution { matrix }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        LatticeInvolution {
            matrix: IntMat::from_rows(rows),
        }
    }

    pub fn matrix(&self) -> &IntMat {
        &self.matrix
    }

    /// Checks M² = I and MᵀGM = G.
    pub fn validate(&self, l: &IntLattice) -> Result<()> {
        let n = l.rank();
        if self.matrix.rows() != n || self.matrix.cols() != n {
            return Err(Error::InvalidInvolution);
        }
        if self.matrix.mul(&self.matrix) != IntMat::identity(n) {
            return Err(Error::InvalidInvolution);
        }
        if &self.matrix.transpose().mul(l.gram()).mul(&self.matrix) != l.gram() {
            return Err(Error::InvalidInvolution);
        }
        Ok(())
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(v)
    }
}

/// Gram matrix of E8 with the Bourbaki Dynkin diagram
/// (chain 1-3-4-5-6-7-8, node 2 attached to node 4).
fn e8_gram() -> IntMat {
    let edges = [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)];
    let mut g = IntMat::zero(8, 8);
    for i in 0..8 {
        g[(i, i)] = BigInt::from(2);
    }
    for (a, b) in edges {
        g[(a - 1, b - 1)] = BigInt::from(-1);
        g[(b - 1, a - 1)] = BigInt::from(-1);
    }
    g
}

fn negate(m: &IntMat) -> IntMat {
    let mut out = m.clone();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out[(i, j)] = -m[(i, j)].clone();
        }
    }
    out
}

pub fn make_standard(name: StandardLattice) -> IntLattice {
    let (gram, label) = match name {
        StandardLattice::U => (IntMat::from_rows(&[vec![0, 1], vec![1, 0]]), "U"),
        StandardLattice::E8Minus => (negate(&e8_gram()), "E8(-1)"),
        StandardLattice::A1Minus => (IntMat::from_rows(&[vec![-2]]), "<-2>"),
        StandardLattice::Two => (IntMat::from_rows(&[vec![2]]), "<2>"),
        StandardLattice::MinusFour => (IntMat::from_rows(&[vec![-4]]), "<-4>"),
        StandardLattice::K3 => {
            let u = IntMat::from_rows(&[vec![0, 1], vec![1, 0]]);
            let e8m = negate(&e8_gram());
            (
                IntMat::block_diag(&[u.clone(), u.clone(), u, e8m.clone(), e8m]),
                "K3",
            )
        }
    };
    IntLattice {
        gram,
        label: Some(label.to_string()),
    }
}

pub fn direct_sum(a: &IntLattice, b: &IntLattice) -> IntLattice {
    IntLattice {
        gram: IntMat::block_diag(&[a.gram.clone(), b.gram.clone()]),
        label: None,
    }
}

/// Inertia indices (positive, negative) of a nondegenerate Gram matrix.
pub fn signature(l: &IntLattice) -> Result<(usize, usize)> {
    let n = l.rank();
    let mut a: Vec<Vec<BigRational>> = l.gram.to_rational();
    let mut pos = 0usize;
    let mut neg = 0usize;
    let mut k = 0usize;

    let swap_sym = |a: &mut Vec<Vec<BigRational>>, i: usize, j: usize| {
        if i == j {
            return;
        }
        a.swap(i, j);
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    };
    // row[i] += f·row[p] and the symmetric column operation
    let add_sym = |a: &mut Vec<Vec<BigRational>>, i: usize, p: usize, f: &BigRational| {
        let n = a.len();
        for j in 0..n {
            let x = f * &a[p][j];
            a[i][j] += x;
        }
        for r in 0..n {
            let x = f * &a[r][p];
            a[r][i] += x;
        }
    };

    while k < n {
        if let Some(j) = (k..n).find(|&j| !a[j][j].is_zero()) {
            swap_sym(&mut a, k, j);
            if a[k][k].is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            let pivot = a[k][k].clone();
            for i in k + 1..n {
                if !a[i][k].is_zero() {
                    let f = -(&a[i][k] / &pivot);
                    add_sym(&mut a, i, k, &f);
                }
            }
            k += 1;
        } else {
            // all remaining diagonal entries vanish: look for a hyperbolic pair
            let mut pair = None;
            'search: for i in k..n {
                for j in i + 1..n {
                    if !a[i][j].is_zero() {
                        pair = Some((i, j));
                        break 'search;
                    }
                }
            }
            let Some((i, j)) = pair else {
                return Err(Error::Degenerate);
            };
            swap_sym(&mut a, k, i);
            let j = if j == k { i } else { j };
            swap_sym(&mut a, k + 1, j);
            let b = a[k][k + 1].clone();
            debug_assert!(!b.is_zero());
            for r in k + 2..n {
                let x = a[r][k].clone();
                let y = a[r][k + 1].clone();
                if !y.is_zero() {
                    let f = -(&y / &b);
                    add_sym(&mut a, r, k, &f);
                }
                if !x.is_zero() {
                    let f = -(&x / &b);
                    add_sym(&mut a, r, k + 1, &f);
                }
            }
            pos += 1;
            neg += 1;
            k += 2;
        }
    }
    Ok((pos, neg))
}

/// True iff every diagonal Gram entry is even.
pub fn is_even(l: &IntLattice) -> bool {
    (0..l.rank()).all(|i| (&l.gram[(i, i)] % 2u8).is_zero())
}

/// Invariant factors (> 1, in divisor-chain order) of the discriminant group
/// A_L = L*/L ≅ ℤⁿ / Gℤⁿ.
pub fn discriminant_group(l: &IntLattice) -> Result<Vec<BigInt>> {
    if l.det().is_zero() {
        return Err(Error::Degenerate);
    }
    Ok(smith_normal_form(&l.gram).invariant_factors())
}

/// Discriminant quadratic form of an even nondegenerate lattice.
///
/// Generators are G⁻¹·U⁻¹·eᵢ for the SNF `U·G·V = D`; values are computed
/// from the rational Gram and reduced into [0,2) and [0,1).
pub fn discriminant_form(l: &IntLattice) -> Result<FiniteQuadraticForm> {
    if l.det().is_zero() {
        return Err(Error::Degenerate);
    }
    if !is_even(l) {
        return Err(Error::OddLattice);
    }
    let snf = smith_normal_form(&l.gram);
    let u_inv = rational_inverse(&snf.u).expect("unimodular");
    let g_inv = rational_inverse(&l.gram).expect("nondegenerate");
    let n = l.rank();

    let mut orders = Vec::new();
    let mut gens: Vec<Vec<BigRational>> = Vec::new();
    for i in 0..n {
        let d = snf.d[(i, i)].clone();
        if d <= BigInt::one() {
            continue;
        }
        // column i of U⁻¹, pushed through G⁻¹
        let col: Vec<BigInt> = (0..n)
            .map(|r| {
                let val = u_inv[r][i].clone();
                debug_assert!(val.is_integer());
                val.to_integer()
            })
            .collect();
        gens.push(rat_mat_vec(&g_inv, &col));
        orders.push(d);
    }

    let gram_rat = l.gram.to_rational();
    let pair = |x: &[BigRational], y: &[BigRational]| -> BigRational {
        let mut acc = BigRational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                acc += xi * &gram_rat[i][j] * yj;
            }
        }
        acc
    };

    let k = gens.len();
    let mut q = Vec::with_capacity(k);
    let mut b = vec![vec![BigRational::zero(); k]; k];
    for i in 0..k {
        q.push(pair(&gens[i], &gens[i]));
        for j in 0..k {
            b[i][j] = pair(&gens[i], &gens[j]);
        }
    }
    FiniteQuadraticForm::new(orders, q, b)
}

/// Orthogonal complement of `s` in `l`: the saturated kernel of the pairing
/// against the basis of `s`. The result is a primitive sublattice.
pub fn orthogonal_complement(l: &IntLattice, s: &Sublattice) -> Sublattice {
    let pairing = s.basis.transpose().mul(l.gram());
    Sublattice {
        basis: kernel_basis(&pairing),
    }
}

/// True iff l/s is torsion-free (all invariant factors of the basis matrix
/// are 1).
pub fn is_primitive_sublattice(_l: &IntLattice, s: &Sublattice) -> bool {
    if s.rank() == 0 {
        return true;
    }
    smith_normal_form(&s.basis).invariant_factors().is_empty()
}

/// Saturated kernel of (φ − sign·I): the (+1)- or (−1)-eigenlattice.
pub fn fixed_sublattice(l: &IntLattice, phi: &LatticeInvolution, sign: i8) -> Result<Sublattice> {
    assert!(sign == 1 || sign == -1, "sign must be ±1");
    phi.validate(l)?;
    let n = l.rank();
    let mut m = phi.matrix.clone();
    for i in 0..n {
        let s = BigInt::from(sign);
        m[(i, i)] -= s;
    }
    Ok(Sublattice {
        basis: kernel_basis(&m),
    })
}

/// Characteristic vector α of the twisted form (x, y) ↦ x·φ(y):
/// α·φ(x) ≡ x·φ(x) (mod 2) for all x, unique mod 2L when L is unimodular.
pub fn twisted_characteristic_vector(
    l: &IntLattice,
    phi: &LatticeInvolution,
) -> Result<Vec<BigInt>> {
    phi.validate(l)?;
    let twisted = l.gram().mul(&phi.matrix); // (Gφ)_{ij} = e_i·φ(e_j)
    let n = l.rank();
    let rhs: Vec<BigInt> = (0..n).map(|i| twisted[(i, i)].clone()).collect();
    // α solves (Gφ)ᵀ α ≡ diag (mod 2)
    let sol = match solve_mod2(&twisted.transpose(), &rhs) {
        SolveMod2::None => return Err(Error::NoCharacteristicVector),
        SolveMod2::Multiple(_) => return Err(Error::AmbiguousCharacteristicVector),
        SolveMod2::Unique(x) => x,
    };
    let alpha: Vec<BigInt> = sol.iter().map(|&b| BigInt::from(b)).collect();
    // defining congruence, re-checked on every basis vector
    for i in 0..n {
        let lhs: BigInt = (0..n).map(|j| &twisted[(j, i)] * &alpha[j]).sum();
        let target = &twisted[(i, i)];
        if ((lhs - target) % 2u8) != BigInt::zero() {
            return Err(Error::Inconsistency(
                "twisted characteristic vector failed its congruence".into(),
            ));
        }
    }
    Ok(alpha)
}

// ---------------------------------------------------------------------------
// JSON literals

#[derive(Serialize, Deserialize)]
struct LatticeLiteral {
    gram: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl Serialize for IntLattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let gram = (0..self.rank())
            .map(|i| {
                (0..self.rank())
                    .map(|j| int_to_i64(&self.gram[(i, j)]))
                    .collect()
            })
            .collect();
        LatticeLiteral {
            gram,
            label: self.label.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntLattice {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let lit = LatticeLiteral::deserialize(d)?;
        let mut l =
            IntLattice::new(IntMat::from_rows(&lit.gram)).map_err(serde::de::Error::custom)?;
        l.label = lit.label;
        Ok(l)
    }
}

#[derive(Serialize, Deserialize)]
struct InvolutionLiteral {
    matrix: Vec<Vec<i64>>,
}

impl Serialize for LatticeInvolution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let matrix = (0..self.matrix.rows())
            .map(|i| {
                (0..self.matrix.cols())
                    .map(|j| int_to_i64(&self.matrix[(i, j)]))
                    .collect()
            })
            .collect();
        InvolutionLiteral { matrix }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticeInvolution {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let lit = InvolutionLiteral::deserialize(d)?;
        Ok(LatticeInvolution {
            matrix: IntMat::from_rows(&lit.matrix),
        })
    }
}

#[derive(Serialize, Deserialize)]
struct SublatticeLiteral {
    /// Columns are the basis vectors.
    basis: Vec<Vec<i64>>,
}

impl Serialize for Sublattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let basis = (0..self.basis.rows())
            .map(|i| {
                (0..self.basis.cols())
                    .map(|j| int_to_i64(&self.basis[(i, j)]))
                    .collect()
            })
            .collect();
        SublatticeLiteral { basis }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Sublattice {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let lit = SublatticeLiteral::deserialize(d)?;
        let basis = IntMat::from_rows(&lit.basis);
        if smith_normal_form(&basis).rank() != basis.cols() {
            return Err(serde::de::Error::custom(
                "sublattice basis columns must be linearly independent",
            ));
        }
        Ok(Sublattice { basis })
    }
}

fn int_to_i64(x: &BigInt) -> i64 {
    i64::try_from(x.clone()).expect("lattice entry exceeds i64")
}

#[cfg(test)]
pub(crate) fn vec_i64(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_lattices() {
        let u = make_standard(StandardLattice::U);
        assert_eq!(u.gram(), &IntMat::from_rows(&[vec![0, 1], vec![1, 0]]));
        assert_eq!(
            make_standard(StandardLattice::MinusFour).gram(),
            &IntMat::from_rows(&[vec![-4]])
        );
        let k3 = make_standard(StandardLattice::K3);
        assert_eq!(k3.rank(), 22);
        assert!(is_even(&k3));
        assert!(k3.is_unimodular());
        let e8m = make_standard(StandardLattice::E8Minus);
        assert!(is_even(&e8m));
        assert_eq!(e8m.det().abs(), BigInt::one());
        assert_eq!(signature(&e8m).unwrap(), (0, 8));
        assert!("bogus".parse::<StandardLattice>().is_err());
    }

    #[test]
    fn direct_sums() {
        let two = make_standard(StandardLattice::Two);
        let mtwo = make_standard(StandardLattice::A1Minus);
        let s = direct_sum(&two, &mtwo);
        assert_eq!(s.gram(), &IntMat::from_rows(&[vec![2, 0], vec![0, -2]]));
        let u = make_standard(StandardLattice::U);
        let uu = direct_sum(&u, &u);
        assert_eq!(uu.rank(), 4);
        assert_eq!(signature(&uu).unwrap(), (2, 2));
    }

    #[test]
    fn signatures() {
        assert_eq!(
            signature(&make_standard(StandardLattice::Two)).unwrap(),
            (1, 0)
        );
        assert_eq!(
            signature(&make_standard(StandardLattice::U)).unwrap(),
            (1, 1)
        );
        assert_eq!(
            signature(&make_standard(StandardLattice::K3)).unwrap(),
            (3, 19)
        );
        let degenerate = IntLattice::from_rows(&[vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(signature(&degenerate), Err(Error::Degenerate));
    }

    #[test]
    fn signature_matches_rank_for_catalog() {
        for l in [
            make_standard(StandardLattice::U),
            make_standard(StandardLattice::K3),
            make_standard(StandardLattice::E8Minus),
            direct_sum(
                &make_standard(StandardLattice::Two),
                &make_standard(StandardLattice::MinusFour),
            ),
        ] {
            let (p, n) = signature(&l).unwrap();
            assert_eq!(p + n, l.rank());
        }
    }

    #[test]
    fn evenness() {
        assert!(is_even(&make_standard(StandardLattice::U)));
        assert!(!is_even(&IntLattice::from_rows(&[vec![1]]).unwrap()));
        assert!(is_even(&make_standard(StandardLattice::K3)));
    }

    #[test]
    fn discriminant_groups() {
        assert!(discriminant_group(&make_standard(StandardLattice::E8Minus))
            .unwrap()
            .is_empty());
        let m4 = make_standard(StandardLattice::MinusFour);
        let m4m4 = direct_sum(&m4, &m4);
        assert_eq!(
            discriminant_group(&m4m4).unwrap(),
            vec![BigInt::from(4), BigInt::from(4)]
        );
        let mixed = direct_sum(
            &make_standard(StandardLattice::Two),
            &make_standard(StandardLattice::A1Minus),
        );
        assert_eq!(
            discriminant_group(&mixed).unwrap(),
            vec![BigInt::from(2), BigInt::from(2)]
        );
        // order product = |det|
        let d: BigInt = discriminant_group(&m4m4).unwrap().into_iter().product();
        assert_eq!(d, m4m4.det().abs());
    }

    #[test]
    fn discriminant_form_values() {
        let f = discriminant_form(&make_standard(StandardLattice::A1Minus)).unwrap();
        assert_eq!(f.orders(), &[2]);
        // q(g) = -1/2 ≡ 3/2 (mod 2)
        assert_eq!(
            f.q_gen(0),
            BigRational::new(BigInt::from(3), BigInt::from(2))
        );

        let f4 = discriminant_form(&make_standard(StandardLattice::MinusFour)).unwrap();
        assert_eq!(f4.orders(), &[4]);
        // q(g) = -1/4 ≡ 7/4 (mod 2)
        assert_eq!(
            f4.q_gen(0),
            BigRational::new(BigInt::from(7), BigInt::from(4))
        );

        let fu = discriminant_form(&make_standard(StandardLattice::U)).unwrap();
        assert!(fu.orders().is_empty());

        let odd = IntLattice::from_rows(&[vec![1]]).unwrap();
        assert_eq!(discriminant_form(&odd), Err(Error::OddLattice));
    }

    #[test]
    fn complements_in_u() {
        let u = make_standard(StandardLattice::U);
        let span = Sublattice::from_vectors(2, &[vec_i64(&[1, 1])]);
        let c = orthogonal_complement(&u, &span);
        assert_eq!(c.rank(), 1);
        let v = c.basis().col(0);
        assert_eq!(u.dot(&v, &vec_i64(&[1, 1])), BigInt::zero());
        // complement of e+f is spanned by ±(e−f)
        assert_eq!((v[0].clone() + v[1].clone()), BigInt::zero());
        assert!(is_primitive_sublattice(&u, &c));

        let zero = Sublattice::from_vectors(2, &[]);
        let full = orthogonal_complement(&u, &zero);
        assert_eq!(full.rank(), 2);
    }

    #[test]
    fn primitivity() {
        let u = make_standard(StandardLattice::U);
        let index2 = Sublattice::from_vectors(2, &[vec_i64(&[2, 0])]);
        assert!(!is_primitive_sublattice(&u, &index2));
        let prim = Sublattice::from_vectors(2, &[vec_i64(&[1, 1])]);
        assert!(is_primitive_sublattice(&u, &prim));
        // h = e+f, s' = e−f: (h+s')/2 = e is integral, so not primitive
        let hs = Sublattice::from_vectors(2, &[vec_i64(&[1, 1]), vec_i64(&[1, -1])]);
        assert!(!is_primitive_sublattice(&u, &hs));
    }

    #[test]
    fn fixed_parts_of_swap() {
        let u = make_standard(StandardLattice::U);
        let swap = LatticeInvolution::from_rows(&[vec![0, 1], vec![1, 0]]);
        let plus = fixed_sublattice(&u, &swap, 1).unwrap();
        assert_eq!(plus.rank(), 1);
        assert_eq!(plus.gram_in(&u), IntMat::from_rows(&[vec![2]]));
        let minus = fixed_sublattice(&u, &swap, -1).unwrap();
        assert_eq!(minus.gram_in(&u), IntMat::from_rows(&[vec![-2]]));
        // mutually orthogonal, ranks add up
        let pairing = plus.basis().transpose().mul(u.gram()).mul(minus.basis());
        assert!(pairing.col(0).iter().all(|x| x.is_zero()));
        assert_eq!(plus.rank() + minus.rank(), u.rank());

        let neg = LatticeInvolution::from_rows(&[vec![-1, 0], vec![0, -1]]);
        assert_eq!(fixed_sublattice(&u, &neg, 1).unwrap().rank(), 0);

        let not_involution = LatticeInvolution::from_rows(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(
            fixed_sublattice(&u, &not_involution, 1),
            Err(Error::InvalidInvolution)
        );
    }

    #[test]
    fn twisted_characteristic() {
        let u = make_standard(StandardLattice::U);
        let id = LatticeInvolution::from_rows(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(
            twisted_characteristic_vector(&u, &id).unwrap(),
            vec_i64(&[0, 0])
        );
        let swap = LatticeInvolution::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(
            twisted_characteristic_vector(&u, &swap).unwrap(),
            vec_i64(&[1, 1])
        );
        // non-unimodular: ⟨2⟩⊕⟨−2⟩ with identity has an all-even system
        let l = direct_sum(
            &make_standard(StandardLattice::Two),
            &make_standard(StandardLattice::A1Minus),
        );
        let id2 = LatticeInvolution::from_rows(&[vec![1, 0], vec![0, 1]]);
        assert_eq!(
            twisted_characteristic_vector(&l, &id2),
            Err(Error::AmbiguousCharacteristicVector)
        );
    }

    #[test]
    fn lattice_literal_roundtrip() {
        let l = make_standard(StandardLattice::U);
        let json = serde_json::to_string(&l).unwrap();
        assert_eq!(json, r#"{"gram":[[0,1],[1,0]],"label":"U"}"#);
        let back: IntLattice = serde_json::from_str(&json).unwrap();
        assert_eq!(back, l);
        let bad: std::result::Result<IntLattice, _> =
            serde_json::from_str(r#"{"gram":[[0,1],[2,0]]}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn involution_and_sublattice_literals() {
        let inv: LatticeInvolution = serde_json::from_str(r#"{"matrix":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(inv, LatticeInvolution::from_rows(&[vec![0, 1], vec![1, 0]]));
        assert_eq!(
            serde_json::to_string(&inv).unwrap(),
            r#"{"matrix":[[0,1],[1,0]]}"#
        );
        // columns are the basis vectors
        let sub: Sublattice = serde_json::from_str(r#"{"basis":[[1],[1]]}"#).unwrap();
        assert_eq!(sub.rank(), 1);
        assert_eq!(sub.basis().col(0), vec_i64(&[1, 1]));
        let u = make_standard(StandardLattice::U);
        assert_eq!(sub.gram_in(&u), IntMat::from_rows(&[vec![2]]));
    }
}
