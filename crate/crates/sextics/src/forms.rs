//! Finite quadratic forms: a finite abelian group ⊕ᵢ ℤ/oᵢ together with
//! q: A → ℚ/2ℤ and the induced pairing b: A×A → ℚ/ℤ with
//! q(x+y) − q(x) − q(y) ≡ 2b(x,y).
//!
//! Values are stored as integers over one common denominator, so every
//! evaluation is exact integer arithmetic; the public accessors hand out
//! reduced rationals (q in [0,2), b in [0,1)). Groups appearing here are
//! tiny, so subgroup and quotient constructions are done by brute force and
//! normalized through Smith normal form, which makes outputs deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycloRing;
use crate::matrix::{kernel_basis, rational_inverse, smith_normal_form, IntMat};
use crate::{Error, Result};

/// Group element: coefficients on the generators, reduced mod the orders.
pub type Element = Vec<u64>;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteQuadraticForm {
    orders: Vec<u64>,
    /// Common denominator of all q- and b-values.
    den: u64,
    /// q(gᵢ) = q_num[i] / den, in [0, 2·den).
    q_num: Vec<u64>,
    /// b(gᵢ,gⱼ) = b_num[i][j] / den, in [0, den).
    b_num: Vec<Vec<u64>>,
}

impl std::fmt::Debug for FiniteQuadraticForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteQuadraticForm(orders={:?}, q=[", self.orders)?;
        for i in 0..self.orders.len() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", render_ratio(&self.q_gen(i)))?;
        }
        write!(f, "])")
    }
}

/// (length, period, parity) of a form's underlying group and values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Profile {
    pub length: usize,
    pub period: u64,
    pub parity: Parity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl std::fmt::Display for Parity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

/// Partial anti-isometry between subgroups of two forms, given on generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubgroupAntiIsometry {
    pub domain_generators: Vec<Element>,
    pub image_generators: Vec<Element>,
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    a / a.gcd(&b) * b
}

fn ratio_den_u64(r: &BigRational) -> Result<u64> {
    r.denom()
        .to_u64()
        .ok_or_else(|| Error::InvalidForm("denominator too large".into()))
}

/// Reduce `r` into [0, modulus) and scale by `den` (num on common denominator).
fn scaled_mod(r: &BigRational, den: u64, modulus: u64) -> u64 {
    let scaled = r * BigRational::from(BigInt::from(den));
    debug_assert!(scaled.is_integer());
    let m = BigInt::from(den * modulus);
    let v = scaled.to_integer().mod_floor(&m);
    v.to_u64().expect("reduced value fits")
}

impl FiniteQuadraticForm {
    /// Build a form from generator orders, q-values and the pairing matrix.
    ///
    /// Checks the compatibility axioms: b symmetric, oᵢ·b(i,j) ≡ 0 (mod 1),
    /// q(gᵢ) ≡ b(gᵢ,gᵢ) (mod 1), and the well-definedness conditions
    /// oᵢ·qᵢ ∈ ℤ, oᵢ²·qᵢ ∈ 2ℤ.
    pub fn new(orders: Vec<BigInt>, q: Vec<BigRational>, b: Vec<Vec<BigRational>>) -> Result<Self> {
        let k = orders.len();
        if q.len() != k || b.len() != k || b.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidForm("mismatched dimensions".into()));
        }
        let orders: Vec<u64> = orders
            .iter()
            .map(|o| {
                o.to_u64()
                    .filter(|&o| o >= 2)
                    .ok_or_else(|| Error::InvalidForm("generator order must be ≥ 2".into()))
            })
            .collect::<Result<_>>()?;

        let mut den = 1u64;
        for qi in &q {
            den = lcm_u64(den, ratio_den_u64(qi)?);
        }
        for row in &b {
            for bij in row {
                den = lcm_u64(den, ratio_den_u64(bij)?);
            }
        }

        for i in 0..k {
            for j in 0..k {
                if b[i][j] != b[j][i] {
                    return Err(Error::InvalidForm("pairing matrix not symmetric".into()));
                }
                let ann = &b[i][j] * BigRational::from(BigInt::from(orders[i]));
                if !ann.is_integer() {
                    return Err(Error::InvalidForm(format!(
                        "order {} does not annihilate b({i},{j})",
                        orders[i]
                    )));
                }
            }
            let diag = (&q[i] - &b[i][i]).reduced();
            if !diag.is_integer() {
                return Err(Error::InvalidForm(format!(
                    "q({i}) and b({i},{i}) disagree mod 1"
                )));
            }
            let oq = &q[i] * BigRational::from(BigInt::from(orders[i]));
            if !oq.is_integer() {
                return Err(Error::InvalidForm(format!("oᵢ·q({i}) is not an integer")));
            }
            if !(&oq * BigRational::from(BigInt::from(orders[i])))
                .to_integer()
                .is_even()
            {
                return Err(Error::InvalidForm(format!("oᵢ²·q({i}) is odd")));
            }
        }

        let q_num = q.iter().map(|qi| scaled_mod(qi, den, 2)).collect();
        let b_num = b
            .iter()
            .map(|row| row.iter().map(|bij| scaled_mod(bij, den, 1)).collect())
            .collect();
        Ok(FiniteQuadraticForm {
            orders,
            den,
            q_num,
            b_num,
        })
    }

    /// The trivial form on the trivial group.
    pub fn trivial() -> Self {
        FiniteQuadraticForm {
            orders: vec![],
            den: 1,
            q_num: vec![],
            b_num: vec![],
        }
    }

    /// Cyclic form ℤ/order with q(g) = q; b(g,g) = q mod 1.
    pub fn cyclic(order: u64, q: BigRational) -> Result<Self> {
        let b = q.clone();
        FiniteQuadraticForm::new(vec![BigInt::from(order)], vec![q], vec![vec![b]])
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn num_gens(&self) -> usize {
        self.orders.len()
    }

    pub fn group_order(&self) -> u64 {
        self.orders.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn q_gen(&self, i: usize) -> BigRational {
        BigRational::new(BigInt::from(self.q_num[i]), BigInt::from(self.den))
    }

    pub fn b_gen(&self, i: usize, j: usize) -> BigRational {
        BigRational::new(BigInt::from(self.b_num[i][j]), BigInt::from(self.den))
    }

    pub fn zero_element(&self) -> Element {
        vec![0; self.orders.len()]
    }

    pub fn reduce(&self, el: &[u64]) -> Element {
        el.iter().zip(&self.orders).map(|(&c, &o)| c % o).collect()
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Element {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((&a, &b), &o)| (a + b) % o)
            .collect()
    }

    pub fn neg(&self, x: &[u64]) -> Element {
        x.iter()
            .zip(&self.orders)
            .map(|(&a, &o)| (o - a % o) % o)
            .collect()
    }

    pub fn scalar_mul(&self, n: u64, x: &[u64]) -> Element {
        x.iter()
            .zip(&self.orders)
            .map(|(&a, &o)| (a as u128 * n as u128 % o as u128) as u64)
            .collect()
    }

    pub fn order_of(&self, x: &[u64]) -> u64 {
        x.iter()
            .zip(&self.orders)
            .map(|(&c, &o)| if c == 0 { 1 } else { o / o.gcd(&c) })
            .fold(1, lcm_u64)
    }

    /// All group elements, in odometer order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        let k = self.orders.len();
        let total = self.group_order();
        (0..total).map(move |mut idx| {
            let mut el = vec![0u64; k];
            for i in (0..k).rev() {
                el[i] = idx % self.orders[i];
                idx /= self.orders[i];
            }
            el
        })
    }

    /// q(x)·den, reduced mod 2·den.
    pub(crate) fn q_scaled(&self, x: &[u64]) -> u64 {
        let k = self.orders.len();
        let modulus = 2 * self.den as u128;
        let mut acc: u128 = 0;
        for i in 0..k {
            let c = x[i] as u128 % self.orders[i] as u128;
            acc = (acc + c * c % modulus * self.q_num[i] as u128) % modulus;
            for j in i + 1..k {
                let cj = x[j] as u128 % self.orders[j] as u128;
                acc = (acc + 2 * c * cj % modulus * self.b_num[i][j] as u128) % modulus;
            }
        }
        acc as u64
    }

    /// b(x,y)·den, reduced mod den.
    pub(crate) fn b_scaled(&self, x: &[u64], y: &[u64]) -> u64 {
        let k = self.orders.len();
        let modulus = self.den as u128;
        let mut acc: u128 = 0;
        for i in 0..k {
            let xi = x[i] as u128 % self.orders[i] as u128;
            if xi == 0 {
                continue;
            }
            for j in 0..k {
                let yj = y[j] as u128 % self.orders[j] as u128;
                acc = (acc + xi * yj % modulus * self.b_num[i][j] as u128) % modulus;
            }
        }
        acc as u64
    }

    /// q(x) as a rational in [0, 2).
    pub fn q_of(&self, x: &[u64]) -> BigRational {
        BigRational::new(BigInt::from(self.q_scaled(x)), BigInt::from(self.den))
    }

    /// b(x,y) as a rational in [0, 1).
    pub fn b_of(&self, x: &[u64], y: &[u64]) -> BigRational {
        BigRational::new(BigInt::from(self.b_scaled(x, y)), BigInt::from(self.den))
    }

    /// Minimal number of generators, group exponent, and parity of q.
    /// Parity is even iff q takes values in ℤ/2ℤ on the whole group.
    pub fn profile(&self) -> Profile {
        let k = self.orders.len();
        let diag = IntMat::from_bigint_rows(
            &(0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| {
                            if i == j {
                                BigInt::from(self.orders[i])
                            } else {
                                BigInt::zero()
                            }
                        })
                        .collect()
                })
                .collect::<Vec<_>>(),
        );
        let factors = smith_normal_form(&diag).invariant_factors();
        let length = factors.len();
        let period = factors
            .last()
            .map(|f| f.to_u64().expect("small order"))
            .unwrap_or(1);
        // integer q on all elements ⟺ integer q on generators and 2b integral
        let even = (0..k).all(|i| self.q_num[i].is_multiple_of(self.den))
            && (0..k).all(|i| (i + 1..k).all(|j| (2 * self.b_num[i][j]).is_multiple_of(self.den)));
        Profile {
            length,
            period,
            parity: if even { Parity::Even } else { Parity::Odd },
        }
    }

    /// True iff the pairing b has trivial radical.
    pub fn is_nondegenerate(&self) -> bool {
        let k = self.orders.len();
        self.elements().all(|x| {
            x.iter().all(|&c| c == 0)
                || (0..k).any(|j| {
                    let mut gen = vec![0u64; k];
                    gen[j] = 1;
                    self.b_scaled(&x, &gen) != 0
                })
        })
    }

    /// Generators of the 2-torsion subgroup: (oᵢ/2)·gᵢ for even oᵢ.
    pub fn two_torsion_generators(&self) -> Vec<Element> {
        let k = self.orders.len();
        (0..k)
            .filter(|&i| self.orders[i].is_multiple_of(2))
            .map(|i| {
                let mut el = vec![0u64; k];
                el[i] = self.orders[i] / 2;
                el
            })
            .collect()
    }

    /// The form on the subgroup generated by independent elements, keeping
    /// them as the generators (no renormalization). Independence is checked
    /// by comparing the closure size with the product of element orders.
    pub fn form_on_generators(&self, gens: &[Element]) -> Result<FiniteQuadraticForm> {
        let orders: Vec<u64> = gens.iter().map(|g| self.order_of(g)).collect();
        let expected: u64 = orders.iter().product();
        let mut seen = std::collections::BTreeSet::new();
        let k = gens.len();
        for mut idx in 0..expected {
            let mut el = self.zero_element();
            for i in (0..k).rev() {
                let c = idx % orders[i];
                idx /= orders[i];
                el = self.add(&el, &self.scalar_mul(c, &gens[i]));
            }
            seen.insert(el);
        }
        if seen.len() as u64 != expected {
            return Err(Error::input("subgroup generators are not independent"));
        }
        let q = gens.iter().map(|g| self.q_of(g)).collect();
        let b = gens
            .iter()
            .map(|gi| gens.iter().map(|gj| self.b_of(gi, gj)).collect())
            .collect();
        FiniteQuadraticForm::new(orders.iter().map(|&o| BigInt::from(o)).collect(), q, b)
    }

    /// The form restricted to the subgroup generated by `gens`,
    /// normalized via Smith normal form.
    pub fn subform(&self, gens: &[Element]) -> Result<FiniteQuadraticForm> {
        let t = self.orders.len();
        let mut cols: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| g.iter().map(|&c| BigInt::from(c)).collect())
            .collect();
        for i in 0..t {
            let mut col = vec![BigInt::zero(); t];
            col[i] = BigInt::from(self.orders[i]);
            cols.push(col);
        }
        let k_lat = column_lattice_basis(&IntMat::from_cols(t, &cols))?;
        let relations = self.relation_lattice();
        self.quotient_form(&k_lat, &relations)
    }

    fn relation_lattice(&self) -> IntMat {
        let t = self.orders.len();
        let mut m = IntMat::zero(t, t);
        for i in 0..t {
            m[(i, i)] = BigInt::from(self.orders[i]);
        }
        m
    }

    /// Quotient form K/N for full-rank lattices N ⊆ K ⊆ ℤ^t covering the
    /// generators; q must descend (checked).
    fn quotient_form(&self, k_lat: &IntMat, n_lat: &IntMat) -> Result<FiniteQuadraticForm> {
        let t = self.orders.len();
        if t == 0 {
            return Ok(FiniteQuadraticForm::trivial());
        }
        let k_inv = rational_inverse(k_lat)
            .ok_or_else(|| Error::Inconsistency("quotient lattice K is not full rank".into()))?;
        let n_rat = n_lat.to_rational();
        let mut trans = IntMat::zero(t, t);
        for i in 0..t {
            for j in 0..t {
                let mut acc = BigRational::zero();
                for (l, k_inv_il) in k_inv[i].iter().enumerate() {
                    acc += k_inv_il * &n_rat[l][j];
                }
                if !acc.is_integer() {
                    return Err(Error::Inconsistency("N is not contained in K".into()));
                }
                trans[(i, j)] = acc.to_integer();
            }
        }

        // q must be constant on N-cosets
        let to_element = |col: &[BigInt]| -> Element {
            col.iter()
                .zip(&self.orders)
                .map(|(c, &o)| c.mod_floor(&BigInt::from(o)).to_u64().unwrap())
                .collect()
        };
        for j in 0..t {
            let n_el = to_element(&n_lat.col(j));
            if self.q_scaled(&n_el) != 0 {
                return Err(Error::Inconsistency(
                    "q does not vanish on the glue subgroup".into(),
                ));
            }
            for i in 0..t {
                let k_el = to_element(&k_lat.col(i));
                if self.b_scaled(&k_el, &n_el) != 0 {
                    return Err(Error::Inconsistency(
                        "glue subgroup does not pair trivially with its complement".into(),
                    ));
                }
            }
        }

        let snf = smith_normal_form(&trans);
        let u_inv = rational_inverse(&snf.u).expect("unimodular");
        let mut orders = Vec::new();
        let mut gens: Vec<Element> = Vec::new();
        for i in 0..t {
            let d = &snf.d[(i, i)];
            if d <= &BigInt::one() {
                continue;
            }
            // generator: K · (column i of U⁻¹)
            let col: Vec<BigInt> = (0..t)
                .map(|r| {
                    debug_assert!(u_inv[r][i].is_integer());
                    u_inv[r][i].to_integer()
                })
                .collect();
            let lifted = k_lat.mul_vec(&col);
            gens.push(to_element(&lifted));
            orders.push(d.clone());
        }
        let q = gens.iter().map(|g| self.q_of(g)).collect();
        let b = gens
            .iter()
            .map(|gi| gens.iter().map(|gj| self.b_of(gi, gj)).collect())
            .collect();
        FiniteQuadraticForm::new(orders, q, b)
    }
}

/// Basis (t×t) of the column span of `a` (t×k); requires full rank.
fn column_lattice_basis(a: &IntMat) -> Result<IntMat> {
    let t = a.rows();
    let snf = smith_normal_form(a);
    if snf.rank() != t {
        return Err(Error::Inconsistency(
            "column lattice not of full rank".into(),
        ));
    }
    let u_inv = rational_inverse(&snf.u).expect("unimodular");
    let mut basis = IntMat::zero(t, t);
    for j in 0..t {
        for i in 0..t {
            debug_assert!(u_inv[i][j].is_integer());
            basis[(i, j)] = u_inv[i][j].to_integer() * &snf.d[(j, j)];
        }
    }
    Ok(basis)
}

/// Block orthogonal sum.
pub fn orthogonal_sum(a: &FiniteQuadraticForm, b: &FiniteQuadraticForm) -> FiniteQuadraticForm {
    let ka = a.num_gens();
    let kb = b.num_gens();
    let orders: Vec<BigInt> = a
        .orders
        .iter()
        .chain(&b.orders)
        .map(|&o| BigInt::from(o))
        .collect();
    let q: Vec<BigRational> = (0..ka)
        .map(|i| a.q_gen(i))
        .chain((0..kb).map(|i| b.q_gen(i)))
        .collect();
    let mut bm = vec![vec![BigRational::zero(); ka + kb]; ka + kb];
    for i in 0..ka {
        for j in 0..ka {
            bm[i][j] = a.b_gen(i, j);
        }
    }
    for i in 0..kb {
        for j in 0..kb {
            bm[ka + i][ka + j] = b.b_gen(i, j);
        }
    }
    FiniteQuadraticForm::new(orders, q, bm).expect("sum of valid forms is valid")
}

/// Characteristic element: v with b(v,x) ≡ q(x) (mod 1) for every x,
/// found by exhaustive search.
pub fn characteristic_element(f: &FiniteQuadraticForm) -> Result<Element> {
    let den = f.den;
    for v in f.elements() {
        let ok = f
            .elements()
            .all(|x| f.b_scaled(&v, &x) == f.q_scaled(&x) % den);
        if ok {
            return Ok(v);
        }
    }
    Err(Error::NoCharacteristicElement)
}

/// Milgram signature: σ mod 8 with Σ_x exp(iπ q(x)) = √|A| · ζ₈^σ,
/// computed exactly in ℤ[ζ_N].
pub fn gauss_signature(f: &FiniteQuadraticForm) -> Result<u8> {
    if !f.is_nondegenerate() {
        return Err(Error::DegenerateForm);
    }
    let order = f.group_order();
    // N must absorb ζ₈, every exp(iπ q(x)), and √p for odd p | |A|
    let mut n = lcm_u64(8, 2 * f.den);
    let mut rest = order;
    while rest.is_multiple_of(2) {
        rest /= 2;
    }
    let mut p = 3u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            n = lcm_u64(n, p);
            while rest.is_multiple_of(p) {
                rest /= p;
            }
        }
        p += 2;
    }
    if rest > 1 {
        n = lcm_u64(n, rest);
    }
    let ring = CycloRing::new(n as usize);

    let mut gauss_sum = ring.zero();
    let step = n / (2 * f.den); // exponent of ζ_N for q = 1/den
    for x in f.elements() {
        let e = (f.q_scaled(&x) % (2 * f.den)) * step;
        ring.add_assign(&mut gauss_sum, &ring.root_power(e as i64));
    }

    let sqrt_order = ring.sqrt_positive_int(order);
    for sigma in 0u8..8 {
        let candidate = ring.mul(
            &sqrt_order,
            &ring.root_power((sigma as i64) * (n as i64) / 8),
        );
        if ring.eq(&gauss_sum, &candidate) {
            return Ok(sigma);
        }
    }
    Err(Error::Inconsistency(
        "Gauss sum matched no eighth root of unity".into(),
    ))
}

/// Glue two forms along an anti-isometry γ of subgroups:
/// (Γ_γ)⊥ / Γ_γ inside a ⊕ b, with the induced q.
pub fn glue(
    a: &FiniteQuadraticForm,
    b: &FiniteQuadraticForm,
    gamma: &SubgroupAntiIsometry,
) -> Result<FiniteQuadraticForm> {
    let kd = gamma.domain_generators.len();
    if gamma.image_generators.len() != kd {
        return Err(Error::InvalidAntiIsometry(
            "domain and image generator counts differ".into(),
        ));
    }
    for d in &gamma.domain_generators {
        if d.len() != a.num_gens() {
            return Err(Error::InvalidAntiIsometry(
                "domain element has wrong length".into(),
            ));
        }
    }
    for d in &gamma.image_generators {
        if d.len() != b.num_gens() {
            return Err(Error::InvalidAntiIsometry(
                "image element has wrong length".into(),
            ));
        }
    }

    // brute-force the subgroup map and verify it is a well-defined bijection
    // reversing q
    let mut map: std::collections::BTreeMap<Element, Element> = Default::default();
    let ranges: Vec<u64> = gamma
        .domain_generators
        .iter()
        .map(|d| a.order_of(d))
        .collect();
    let combos: u64 = ranges.iter().product();
    for mut idx in 0..combos {
        let mut coef = vec![0u64; kd];
        for i in (0..kd).rev() {
            coef[i] = idx % ranges[i];
            idx /= ranges[i];
        }
        let mut dom = a.zero_element();
        let mut img = b.zero_element();
        for i in 0..kd {
            dom = a.add(&dom, &a.scalar_mul(coef[i], &gamma.domain_generators[i]));
            img = b.add(&img, &b.scalar_mul(coef[i], &gamma.image_generators[i]));
        }
        if let Some(prev) = map.get(&dom) {
            if prev != &img {
                return Err(Error::InvalidAntiIsometry(
                    "assignment does not extend to a group homomorphism".into(),
                ));
            }
        } else {
            map.insert(dom, img);
        }
    }
    let image_count = map
        .values()
        .collect::<std::collections::BTreeSet<_>>()
        .len();
    if image_count != map.len() {
        return Err(Error::InvalidAntiIsometry("map is not injective".into()));
    }
    for (dom, img) in &map {
        let minus_q = (2 * a.den - a.q_scaled(dom) % (2 * a.den)) % (2 * a.den);
        // compare −q_a(dom) and q_b(img) in ℚ/2ℤ over possibly different dens
        let lhs = BigRational::new(BigInt::from(minus_q), BigInt::from(a.den));
        let rhs = b.q_of(img);
        if (lhs - rhs)
            .to_integer_checked()
            .map(|v| v.mod_floor(&BigInt::from(2)))
            != Some(BigInt::zero())
        {
            return Err(Error::InvalidAntiIsometry(
                "map does not reverse the quadratic form".into(),
            ));
        }
    }

    let sum = orthogonal_sum(a, b);
    let ka = a.num_gens();
    let t = sum.num_gens();
    let graph: Vec<Element> = (0..kd)
        .map(|i| {
            let mut el = vec![0u64; t];
            el[..ka].copy_from_slice(&gamma.domain_generators[i]);
            el[ka..].copy_from_slice(&gamma.image_generators[i]);
            sum.reduce(&el)
        })
        .collect();

    // K = { x : b(x, g) ≡ 0 mod 1 for all graph generators g }
    let den = sum.den;
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for g in &graph {
        let mut row = Vec::with_capacity(t + kd);
        for i in 0..t {
            let mut e_i = vec![0u64; t];
            e_i[i] = 1;
            row.push(BigInt::from(sum.b_scaled(&e_i, g)));
        }
        rows.push(row);
    }
    // augment with den·I to solve the congruence over ℤ
    let j = graph.len();
    let mut aug = IntMat::zero(j, t + j);
    for (r, row) in rows.iter().enumerate() {
        for (c, val) in row.iter().enumerate() {
            aug[(r, c)] = val.clone();
        }
        aug[(r, t + r)] = BigInt::from(den);
    }
    let ker = kernel_basis(&aug);
    let mut k_cols: Vec<Vec<BigInt>> = (0..ker.cols())
        .map(|c| (0..t).map(|r| ker[(r, c)].clone()).collect())
        .collect();
    for i in 0..t {
        let mut col = vec![BigInt::zero(); t];
        col[i] = BigInt::from(sum.orders[i]);
        k_cols.push(col);
    }
    let k_lat = column_lattice_basis(&IntMat::from_cols(t, &k_cols))?;

    let mut n_cols: Vec<Vec<BigInt>> = graph
        .iter()
        .map(|g| g.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    for i in 0..t {
        let mut col = vec![BigInt::zero(); t];
        col[i] = BigInt::from(sum.orders[i]);
        n_cols.push(col);
    }
    let n_lat = column_lattice_basis(&IntMat::from_cols(t, &n_cols))?;

    sum.quotient_form(&k_lat, &n_lat)
}

trait ToIntegerChecked {
    fn to_integer_checked(&self) -> Option<BigInt>;
}

impl ToIntegerChecked for BigRational {
    fn to_integer_checked(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.to_integer())
    }
}

/// 2-adic square classes of odd units, {1, −1, 5, −5}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoAdicClass {
    One,
    MinusOne,
    Five,
    MinusFive,
}

impl TwoAdicClass {
    pub fn value(self) -> i8 {
        match self {
            TwoAdicClass::One => 1,
            TwoAdicClass::MinusOne => -1,
            TwoAdicClass::Five => 5,
            TwoAdicClass::MinusFive => -5,
        }
    }

    /// Exponent of 5 in the representative.
    pub fn five_exponent(self) -> u8 {
        match self {
            TwoAdicClass::Five | TwoAdicClass::MinusFive => 1,
            _ => 0,
        }
    }
}

/// Square class of an odd rational unit in ℚ₂*/(ℚ₂*)², via u mod 8.
pub fn two_adic_unit_square_class(u: &BigRational) -> Result<TwoAdicClass> {
    let eight = BigInt::from(8);
    if u.numer().is_even() || u.denom().is_even() || u.numer().is_zero() {
        return Err(Error::input("2-adic square class needs an odd unit"));
    }
    // odd residues are involutions mod 8, so num/den ≡ num·den
    let residue = (u.numer().mod_floor(&eight) * u.denom().mod_floor(&eight)).mod_floor(&eight);
    Ok(match residue.to_u8().unwrap() {
        1 => TwoAdicClass::One,
        3 => TwoAdicClass::MinusFive,
        5 => TwoAdicClass::Five,
        7 => TwoAdicClass::MinusOne,
        _ => unreachable!("odd residue mod 8"),
    })
}

/// Brute-force isomorphism test for small forms (used by oracles).
pub fn are_isomorphic(f: &FiniteQuadraticForm, g: &FiniteQuadraticForm) -> bool {
    let fe = f.normalized();
    let ge = g.normalized();
    if fe.orders != ge.orders {
        return false;
    }
    if fe.orders.is_empty() {
        return true;
    }
    let g_elements: Vec<Element> = ge.elements().collect();
    let mut images: Vec<Element> = Vec::new();
    fn extend(
        fe: &FiniteQuadraticForm,
        ge: &FiniteQuadraticForm,
        g_elements: &[Element],
        images: &mut Vec<Element>,
    ) -> bool {
        let i = images.len();
        if i == fe.orders.len() {
            // images define a homomorphism on ⊕ℤ/oᵢ; check bijective + q-preserving
            let mut seen = std::collections::BTreeSet::new();
            for x in fe.elements() {
                let mut img = ge.zero_element();
                for (c, im) in x.iter().zip(images.iter()) {
                    img = ge.add(&img, &ge.scalar_mul(*c, im));
                }
                if fe.q_of(&x) != ge.q_of(&img) || !seen.insert(img) {
                    return false;
                }
            }
            return true;
        }
        let mut gen = vec![0u64; fe.orders.len()];
        gen[i] = 1;
        for cand in g_elements {
            if ge.order_of(cand) != fe.orders[i] {
                continue;
            }
            if ge.q_of(cand) != fe.q_of(&gen) {
                continue;
            }
            let mut pair_ok = true;
            for (j, prev) in images.iter().enumerate() {
                let mut gj = vec![0u64; fe.orders.len()];
                gj[j] = 1;
                if ge.b_of(cand, prev) != fe.b_of(&gen, &gj) {
                    pair_ok = false;
                    break;
                }
            }
            if !pair_ok {
                continue;
            }
            images.push(cand.clone());
            if extend(fe, ge, g_elements, images) {
                return true;
            }
            images.pop();
        }
        false
    }
    extend(&fe, &ge, &g_elements, &mut images)
}

impl FiniteQuadraticForm {
    /// The same form on invariant-factor generators.
    pub fn normalized(&self) -> FiniteQuadraticForm {
        if self.orders.is_empty() {
            return self.clone();
        }
        let t = self.orders.len();
        self.quotient_form(&IntMat::identity(t), &self.relation_lattice())
            .expect("normalization never fails")
    }
}

// ---------------------------------------------------------------------------
// JSON literal: {"orders": [...], "q": ["p/q", ...], "b": [["p/q", ...], ...]}

pub fn parse_ratio(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::input(format!("bad rational `{s}`")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::input(format!("bad rational `{s}`")))?;
    if d.is_zero() {
        return Err(Error::input(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(n, d))
}

pub fn render_ratio(r: &BigRational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Serialize, Deserialize)]
struct FormLiteral {
    orders: Vec<u64>,
    q: Vec<String>,
    b: Vec<Vec<String>>,
}

impl Serialize for FiniteQuadraticForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let k = self.num_gens();
        FormLiteral {
            orders: self.orders.clone(),
            q: (0..k).map(|i| render_ratio(&self.q_gen(i))).collect(),
            b: (0..k)
                .map(|i| (0..k).map(|j| render_ratio(&self.b_gen(i, j))).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteQuadraticForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let lit = FormLiteral::deserialize(d)?;
        let orders = lit.orders.iter().map(|&o| BigInt::from(o)).collect();
        let q = lit
            .q
            .iter()
            .map(|s| parse_ratio(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        let b = lit
            .b
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_ratio(s))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        FiniteQuadraticForm::new(orders, q, b).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{direct_sum, discriminant_form, make_standard, StandardLattice};

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn half() -> FiniteQuadraticForm {
        FiniteQuadraticForm::cyclic(2, ratio(1, 2)).unwrap()
    }

    fn minus_half() -> FiniteQuadraticForm {
        FiniteQuadraticForm::cyclic(2, ratio(-1, 2)).unwrap()
    }

    #[test]
    fn profiles() {
        let trivial = FiniteQuadraticForm::trivial();
        assert_eq!(
            trivial.profile(),
            Profile {
                length: 0,
                period: 1,
                parity: Parity::Even
            }
        );
        let d2 = discriminant_form(&make_standard(StandardLattice::A1Minus)).unwrap();
        assert_eq!(
            d2.profile(),
            Profile {
                length: 1,
                period: 2,
                parity: Parity::Odd
            }
        );
        let m4 = make_standard(StandardLattice::MinusFour);
        let sum = discriminant_form(&direct_sum(&direct_sum(&m4, &m4), &m4)).unwrap();
        assert_eq!(
            sum.profile(),
            Profile {
                length: 3,
                period: 4,
                parity: Parity::Odd
            }
        );
        // ℤ/2 ⊕ ℤ/3 has a single invariant factor
        let mixed = orthogonal_sum(
            &FiniteQuadraticForm::cyclic(2, ratio(1, 2)).unwrap(),
            &FiniteQuadraticForm::cyclic(3, ratio(2, 3)).unwrap(),
        );
        assert_eq!(mixed.profile().length, 1);
        assert_eq!(mixed.profile().period, 6);
    }

    #[test]
    fn orthogonal_sums() {
        let f = half();
        let sum = orthogonal_sum(&f, &FiniteQuadraticForm::trivial());
        assert_eq!(sum, f);
        let gamma_even = orthogonal_sum(&half(), &minus_half());
        assert_eq!(gamma_even.orders(), &[2, 2]);
        assert_eq!(gamma_even.q_gen(0), ratio(1, 2));
        assert_eq!(gamma_even.q_gen(1), ratio(3, 2));
        let gamma_odd = orthogonal_sum(&half(), &half());
        assert_eq!(gamma_odd.q_gen(1), ratio(1, 2));
    }

    #[test]
    fn polarization_identity_small_groups() {
        // q(x+y) − q(x) − q(y) ≡ 2b(x,y) mod 2, full enumeration
        let m4 = make_standard(StandardLattice::MinusFour);
        let catalog = vec![
            discriminant_form(&make_standard(StandardLattice::A1Minus)).unwrap(),
            discriminant_form(&direct_sum(&m4, &m4)).unwrap(),
            discriminant_form(&direct_sum(
                &make_standard(StandardLattice::Two),
                &make_standard(StandardLattice::A1Minus),
            ))
            .unwrap(),
            orthogonal_sum(
                &FiniteQuadraticForm::cyclic(3, ratio(2, 3)).unwrap(),
                &FiniteQuadraticForm::cyclic(4, ratio(-1, 4)).unwrap(),
            ),
        ];
        for f in catalog {
            assert!(f.group_order() <= 512);
            let elements: Vec<Element> = f.elements().collect();
            for x in &elements {
                for y in &elements {
                    let lhs = f.q_of(&f.add(x, y)) - f.q_of(x) - f.q_of(y);
                    let rhs = f.b_of(x, y) * ratio(2, 1);
                    let diff = lhs - rhs;
                    assert!(diff.is_integer() && diff.to_integer().is_even());
                }
            }
        }
    }

    #[test]
    fn characteristic_elements() {
        assert_eq!(
            characteristic_element(&FiniteQuadraticForm::trivial()).unwrap(),
            Vec::<u64>::new()
        );
        let v = characteristic_element(&half()).unwrap();
        assert_eq!(v, vec![1]);
        // (ℤ/4, −1/4): x ↦ q(x) mod 1 is not linear, no solution exists
        let m4 = discriminant_form(&make_standard(StandardLattice::MinusFour)).unwrap();
        assert_eq!(
            characteristic_element(&m4),
            Err(Error::NoCharacteristicElement)
        );
    }

    #[test]
    fn gauss_signatures() {
        assert_eq!(gauss_signature(&FiniteQuadraticForm::trivial()).unwrap(), 0);
        let d = discriminant_form(&make_standard(StandardLattice::A1Minus)).unwrap();
        assert_eq!(gauss_signature(&d).unwrap(), 7);
        let hyp = discriminant_form(&direct_sum(
            &make_standard(StandardLattice::Two),
            &make_standard(StandardLattice::A1Minus),
        ))
        .unwrap();
        assert_eq!(gauss_signature(&hyp).unwrap(), 0);
        // degenerate: ℤ/2 with q ≡ 1, b ≡ 0
        let deg = FiniteQuadraticForm::cyclic(2, ratio(1, 1)).unwrap();
        assert_eq!(gauss_signature(&deg), Err(Error::DegenerateForm));
    }

    #[test]
    fn glue_trivial_subgroup_is_sum() {
        let a = discriminant_form(&make_standard(StandardLattice::MinusFour)).unwrap();
        let b = half();
        let gamma = SubgroupAntiIsometry {
            domain_generators: vec![],
            image_generators: vec![],
        };
        let glued = glue(&a, &b, &gamma).unwrap();
        assert!(are_isomorphic(&glued, &orthogonal_sum(&a, &b)));
        assert_eq!(glued.group_order(), 8);
    }

    #[test]
    fn glue_opposite_halves_cancels() {
        let a = half();
        let b = minus_half();
        let gamma = SubgroupAntiIsometry {
            domain_generators: vec![vec![1]],
            image_generators: vec![vec![1]],
        };
        let glued = glue(&a, &b, &gamma).unwrap();
        assert!(glued.is_trivial());
    }

    #[test]
    fn glue_two_torsion_of_z4() {
        // the m = 1 gluing: 2-torsion of (ℤ/4, −1/4) with itself
        let z4 = discriminant_form(&make_standard(StandardLattice::MinusFour)).unwrap();
        let tt = z4.subform(&z4.two_torsion_generators()).unwrap();
        assert_eq!(tt.orders(), &[2]);
        assert_eq!(tt.q_gen(0), ratio(1, 1));
        let gamma = SubgroupAntiIsometry {
            domain_generators: vec![vec![1]],
            image_generators: vec![vec![1]],
        };
        let glued = glue(&tt, &tt, &gamma).unwrap();
        assert_eq!(glued.group_order(), 2);
        assert_eq!(glued.q_gen(0), ratio(1, 1));
        assert_eq!(glued.profile().parity, Parity::Even);
    }

    #[test]
    fn glue_rejects_non_anti_isometry() {
        let a = half();
        let b = half();
        let gamma = SubgroupAntiIsometry {
            domain_generators: vec![vec![1]],
            image_generators: vec![vec![0]],
        };
        assert!(matches!(
            glue(&a, &b, &gamma),
            Err(Error::InvalidAntiIsometry(_))
        ));
    }

    #[test]
    fn two_adic_classes() {
        assert_eq!(
            two_adic_unit_square_class(&ratio(1, 1)).unwrap(),
            TwoAdicClass::One
        );
        assert_eq!(
            two_adic_unit_square_class(&ratio(5, 1)).unwrap(),
            TwoAdicClass::Five
        );
        assert_eq!(
            two_adic_unit_square_class(&ratio(-3, 1)).unwrap(),
            TwoAdicClass::Five
        );
        assert_eq!(
            two_adic_unit_square_class(&ratio(7, 1)).unwrap(),
            TwoAdicClass::MinusOne
        );
        assert!(two_adic_unit_square_class(&ratio(2, 1)).is_err());
        // invariance under odd squares
        for num in [1i64, 3, 5, 7, -1, -3, 9, 15] {
            for sq in [1i64, 3, 5, 9, 25] {
                let u = ratio(num, 1);
                let v = ratio(num * sq * sq, 1);
                assert_eq!(
                    two_adic_unit_square_class(&u).unwrap(),
                    two_adic_unit_square_class(&v).unwrap()
                );
            }
        }
    }

    #[test]
    fn form_literal_roundtrip() {
        let f = discriminant_form(&make_standard(StandardLattice::MinusFour)).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"orders":[4],"q":["7/4"],"b":[["3/4"]]}"#);
        let back: FiniteQuadraticForm = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn normalization_and_isomorphism() {
        // same form presented with generators in different orders
        let f = orthogonal_sum(&half(), &minus_half());
        let g = orthogonal_sum(&minus_half(), &half());
        assert!(are_isomorphic(&f, &g));
        assert!(!are_isomorphic(&f, &orthogonal_sum(&half(), &half())));
    }
}
