//! Finitely presented supercommutative algebras and their normal-form elements.
//!
//! A presentation consists of an ordered list of homogeneous generators, a
//! monomial ideal of relations, optional nilpotency truncations on even
//! generators, and a set of even generators that are formally inverted
//! (Laurent exponents). Odd generators square to zero automatically.
//!
//! Elements are stored as maps from canonical monomials to nonzero scalars,
//! so structural equality is semantic equality.

use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    /// Parity of a product.
    pub fn plus(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// The Koszul sign (-1)^{|a||b|} as a scalar factor.
    pub fn koszul(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Even => write!(f, "even"),
            Parity::Odd => write!(f, "odd"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub parity: Parity,
    /// For even generators: `Some(t)` means the generator's t-th power is zero.
    pub truncation: Option<u32>,
    /// Formally localized even generator (negative exponents allowed).
    pub invertible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    UnknownGenerator(String),
    NegativeExponent(String),
    MixedAlgebras,
    NotEven,
    NotNilpotent,
    NotAUnit,
    NotOdd(String),
    ParityMismatch(String),
    RelationNotKilled(String),
    TruncatedUnit(String),
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::UnknownGenerator(n) => write!(f, "unknown generator `{n}`"),
            AlgebraError::NegativeExponent(n) => {
                write!(f, "negative exponent on non-invertible generator `{n}`")
            }
            AlgebraError::MixedAlgebras => write!(f, "operands belong to different algebras"),
            AlgebraError::NotEven => write!(f, "element is not even"),
            AlgebraError::NotNilpotent => write!(f, "element is not nilpotent"),
            AlgebraError::NotAUnit => write!(f, "element reduction is not a unit"),
            AlgebraError::NotOdd(n) => write!(f, "generator `{n}` is not odd"),
            AlgebraError::ParityMismatch(what) => write!(f, "parity mismatch: {what}"),
            AlgebraError::RelationNotKilled(m) => {
                write!(f, "morphism does not kill relation `{m}`")
            }
            AlgebraError::TruncatedUnit(n) => {
                write!(f, "generator `{n}` cannot be both nilpotent and invertible")
            }
        }
    }
}

impl std::error::Error for AlgebraError {}

/// A canonical monomial: one exponent per generator, in declaration order.
/// Odd exponents lie in {0,1}; negative exponents only on invertible
/// generators.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn one(width: usize) -> Self {
        Monomial(vec![0; width])
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }
}

#[derive(Debug)]
pub struct AlgebraPresentation {
    pub generators: Vec<Generator>,
    by_name: BTreeMap<String, usize>,
    /// Generating monomials of the relation ideal (beyond odd squares and
    /// truncations, which are handled structurally).
    pub relations: Vec<Monomial>,
    pub label: String,
}

pub type Algebra = Arc<AlgebraPresentation>;

/// Builder for presentations.
pub struct AlgebraBuilder {
    generators: Vec<Generator>,
    relations: Vec<Vec<(String, u32)>>,
    label: String,
}

impl AlgebraBuilder {
    pub fn new(label: &str) -> Self {
        AlgebraBuilder {
            generators: Vec::new(),
            relations: Vec::new(),
            label: label.to_string(),
        }
    }

    pub fn even(mut self, name: &str) -> Self {
        self.generators.push(Generator {
            name: name.to_string(),
            parity: Parity::Even,
            truncation: None,
            invertible: false,
        });
        self
    }

    pub fn odd(mut self, name: &str) -> Self {
        self.generators.push(Generator {
            name: name.to_string(),
            parity: Parity::Odd,
            truncation: None,
            invertible: false,
        });
        self
    }

    /// Declare an even generator with `name^order = 0`.
    pub fn even_truncated(mut self, name: &str, order: u32) -> Self {
        assert!(order >= 1);
        self.generators.push(Generator {
            name: name.to_string(),
            parity: Parity::Even,
            truncation: Some(order),
            invertible: false,
        });
        self
    }

    /// Declare a formally inverted even generator.
    pub fn unit(mut self, name: &str) -> Self {
        self.generators.push(Generator {
            name: name.to_string(),
            parity: Parity::Even,
            truncation: None,
            invertible: true,
        });
        self
    }

    /// Declare a monomial relation, e.g. `[("eps", 2)]` or `[("theta",1),("gamma",1)]`.
    pub fn relation(mut self, factors: &[(&str, u32)]) -> Self {
        self.relations
            .push(factors.iter().map(|(n, e)| (n.to_string(), *e)).collect());
        self
    }

    pub fn build(self) -> Result<Algebra, AlgebraError> {
        let mut by_name = BTreeMap::new();
        for (i, g) in self.generators.iter().enumerate() {
            if g.invertible && g.truncation.is_some() {
                return Err(AlgebraError::TruncatedUnit(g.name.clone()));
            }
            by_name.insert(g.name.clone(), i);
        }
        let width = self.generators.len();
        let mut relations = Vec::new();
        let mut generators = self.generators;
        for rel in &self.relations {
            let mut m = Monomial::one(width);
            for (name, exp) in rel {
                let idx = *by_name
                    .get(name)
                    .ok_or_else(|| AlgebraError::UnknownGenerator(name.clone()))?;
                if generators[idx].invertible {
                    return Err(AlgebraError::TruncatedUnit(name.clone()));
                }
                m.0[idx] += *exp as i32;
            }
            // A pure power of a single even generator is a truncation.
            let support: Vec<usize> = (0..width).filter(|&i| m.0[i] != 0).collect();
            if support.len() == 1 {
                let i = support[0];
                if generators[i].parity == Parity::Even {
                    let t = m.0[i] as u32;
                    let cur = generators[i].truncation.unwrap_or(u32::MAX);
                    generators[i].truncation = Some(cur.min(t));
                    continue;
                }
            }
            relations.push(m);
        }
        Ok(Arc::new(AlgebraPresentation {
            generators,
            by_name,
            relations,
            label: self.label,
        }))
    }
}

impl AlgebraPresentation {
    pub fn width(&self) -> usize {
        self.generators.len()
    }

    pub fn index_of(&self, name: &str) -> Result<usize, AlgebraError> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))
    }

    pub fn parity_of_monomial(&self, m: &Monomial) -> Parity {
        let odd_count: i32 =
            m.0.iter()
                .enumerate()
                .filter(|(i, _)| self.generators[*i].parity.is_odd())
                .map(|(_, e)| e)
                .sum();
        if odd_count % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// A monomial is zero when a truncation or relation monomial divides it.
    pub fn monomial_is_zero(&self, m: &Monomial) -> bool {
        for (i, g) in self.generators.iter().enumerate() {
            if let Some(t) = g.truncation {
                if m.0[i] >= t as i32 {
                    return true;
                }
            }
        }
        self.relations
            .iter()
            .any(|rel| rel.0.iter().zip(&m.0).all(|(&r, &e)| e >= r))
    }

    /// Whether monomials of this generator are nilpotent.
    pub fn generator_is_nilpotent(&self, i: usize) -> bool {
        self.generators[i].parity.is_odd() || self.generators[i].truncation.is_some()
    }

    /// Upper bound on the nilpotency order of any element of the nil ideal.
    pub fn nilpotency_bound(&self) -> u32 {
        let mut bound = 1u32;
        for g in &self.generators {
            if g.parity.is_odd() {
                bound += 1;
            } else if let Some(t) = g.truncation {
                bound += t - 1;
            }
        }
        bound
    }

    /// All nonzero monomials with even exponents bounded by `even_cap` (or
    /// the truncation, whichever is smaller) and unit exponents ranging over
    /// `[-unit_window, unit_window]`. Odd exponents range over {0,1}.
    pub fn enumerate_monomials(&self, even_cap: u32, unit_window: u32) -> Vec<Monomial> {
        let mut out = vec![Monomial::one(self.width())];
        for (i, g) in self.generators.iter().enumerate() {
            let range: Vec<i32> = if g.parity.is_odd() {
                vec![0, 1]
            } else if g.invertible {
                (-(unit_window as i32)..=unit_window as i32).collect()
            } else {
                let cap = g
                    .truncation
                    .map(|t| (t - 1).min(even_cap))
                    .unwrap_or(even_cap);
                (0..=cap as i32).collect()
            };
            let mut next = Vec::with_capacity(out.len() * range.len());
            for m in &out {
                for &e in &range {
                    let mut m2 = m.clone();
                    m2.0[i] = e;
                    if !self.monomial_is_zero(&m2) {
                        next.push(m2);
                    }
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

/// Normal-form element of a presented algebra.
#[derive(Clone)]
pub struct SuperElement {
    pub algebra: Algebra,
    pub terms: BTreeMap<Monomial, Scalar>,
}

impl PartialEq for SuperElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) && self.terms == other.terms
    }
}

impl Eq for SuperElement {}

/// Result of multiplying two monomials: the Koszul sign and the product,
/// or `None` when the product is zero.
fn monomial_mul(alg: &AlgebraPresentation, a: &Monomial, b: &Monomial) -> Option<(i64, Monomial)> {
    let width = alg.width();
    let mut sign = 1i64;
    // Count transpositions: each odd generator of `b` must pass every odd
    // generator of `a` with strictly larger index.
    let mut odd_after = 0i64;
    let odd_a: Vec<usize> = (0..width)
        .filter(|&i| alg.generators[i].parity.is_odd() && a.0[i] != 0)
        .collect();
    // For each odd index j present in b, count odd indices of a above j.
    for j in 0..width {
        if alg.generators[j].parity.is_odd() && b.0[j] != 0 {
            if a.0[j] != 0 {
                return None; // odd square
            }
            let above = odd_a.iter().filter(|&&i| i > j).count() as i64;
            odd_after += above;
        }
    }
    if odd_after % 2 != 0 {
        sign = -1;
    }
    let mut m = Monomial(vec![0; width]);
    for i in 0..width {
        m.0[i] = a.0[i] + b.0[i];
    }
    if alg.monomial_is_zero(&m) {
        return None;
    }
    Some((sign, m))
}

impl SuperElement {
    pub fn zero(algebra: &Algebra) -> Self {
        SuperElement {
            algebra: algebra.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(algebra: &Algebra, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(algebra.width()), c);
        }
        SuperElement {
            algebra: algebra.clone(),
            terms,
        }
    }

    pub fn one(algebra: &Algebra) -> Self {
        Self::scalar(algebra, Scalar::one())
    }

    pub fn from_int(algebra: &Algebra, n: i64) -> Self {
        Self::scalar(algebra, Scalar::from_int(n))
    }

    pub fn generator(algebra: &Algebra, name: &str) -> Result<Self, AlgebraError> {
        Self::generator_pow(algebra, name, 1)
    }

    pub fn generator_pow(algebra: &Algebra, name: &str, exp: i32) -> Result<Self, AlgebraError> {
        let idx = algebra.index_of(name)?;
        let g = &algebra.generators[idx];
        if exp < 0 && !g.invertible {
            return Err(AlgebraError::NegativeExponent(name.to_string()));
        }
        if g.parity.is_odd() && exp > 1 {
            return Ok(Self::zero(algebra));
        }
        let mut m = Monomial::one(algebra.width());
        m.0[idx] = exp;
        let mut terms = BTreeMap::new();
        if !algebra.monomial_is_zero(&m) {
            terms.insert(m, Scalar::one());
        }
        Ok(SuperElement {
            algebra: algebra.clone(),
            terms,
        })
    }

    pub fn from_monomial(algebra: &Algebra, m: Monomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() && !algebra.monomial_is_zero(&m) {
            terms.insert(m, c);
        }
        SuperElement {
            algebra: algebra.clone(),
            terms,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .get(&Monomial::one(self.algebra.width()))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// Homogeneous parity, if the element is homogeneous. Zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut p = None;
        for m in self.terms.keys() {
            let q = self.algebra.parity_of_monomial(m);
            match p {
                None => p = Some(q),
                Some(r) if r != q => return None,
                _ => {}
            }
        }
        Some(p.unwrap_or(Parity::Even))
    }

    pub fn is_even(&self) -> bool {
        self.parity() == Some(Parity::Even)
    }

    pub fn homogeneous_part(&self, p: Parity) -> SuperElement {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| self.algebra.parity_of_monomial(m) == p)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        SuperElement {
            algebra: self.algebra.clone(),
            terms,
        }
    }

    fn check_same(&self, other: &Self) -> Result<(), AlgebraError> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) {
            Ok(())
        } else {
            Err(AlgebraError::MixedAlgebras)
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other).expect("add: mixed algebras");
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(Scalar::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(m);
            }
        }
        SuperElement {
            algebra: self.algebra.clone(),
            terms,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        SuperElement {
            algebra: self.algebra.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.algebra);
        }
        SuperElement {
            algebra: self.algebra.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Supercommutative product.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_same(other).expect("mul: mixed algebras");
        let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((sign, m)) = monomial_mul(&self.algebra, ma, mb) {
                    let mut c = ca * cb;
                    if sign < 0 {
                        c = -c;
                    }
                    let entry = terms.entry(m).or_insert_with(Scalar::zero);
                    *entry += &c;
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        SuperElement {
            algebra: self.algebra.clone(),
            terms,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.algebra);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Left partial derivative with respect to a generator.
    ///
    /// For an odd generator the monomial's factor is moved to the front,
    /// collecting one sign per odd generator it passes, and then removed.
    pub fn partial_derivative(&self, name: &str) -> Result<Self, AlgebraError> {
        let idx = self.algebra.index_of(name)?;
        let odd = self.algebra.generators[idx].parity.is_odd();
        let mut terms: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            let mut c2 = c.clone();
            if odd {
                // Count odd generators with smaller index present in m.
                let before = (0..idx)
                    .filter(|&i| self.algebra.generators[i].parity.is_odd() && m.0[i] != 0)
                    .count();
                if before % 2 == 1 {
                    c2 = -c2;
                }
                m2.0[idx] = 0;
            } else {
                m2.0[idx] = e - 1;
                c2 = c2 * Scalar::from_int(e as i64);
            }
            if c2.is_zero() || self.algebra.monomial_is_zero(&m2) {
                continue;
            }
            let entry = terms.entry(m2).or_insert_with(Scalar::zero);
            *entry += &c2;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(SuperElement {
            algebra: self.algebra.clone(),
            terms,
        })
    }

    /// Berezin integral: iterated left derivatives in the order listed.
    ///
    /// Equivalently, the coefficient of the top monomial in `odd_vars` when
    /// that monomial is factored out to the left.
    pub fn berezin_integral(&self, odd_vars: &[&str]) -> Result<Self, AlgebraError> {
        for v in odd_vars {
            let idx = self.algebra.index_of(v)?;
            if !self.algebra.generators[idx].parity.is_odd() {
                return Err(AlgebraError::NotOdd(v.to_string()));
            }
        }
        let mut cur = self.clone();
        for v in odd_vars {
            cur = cur.partial_derivative(v)?;
        }
        Ok(cur)
    }

    /// Whether the element lies in the nil ideal (every monomial contains
    /// a nilpotent generator).
    pub fn in_nil_ideal(&self) -> bool {
        self.terms.keys().all(|m| {
            m.0.iter()
                .enumerate()
                .any(|(i, &e)| e != 0 && self.algebra.generator_is_nilpotent(i))
        })
    }

    /// Finite exponential series of an even nilpotent element.
    pub fn exp_nilpotent(&self) -> Result<Self, AlgebraError> {
        if self.parity() != Some(Parity::Even) {
            return Err(AlgebraError::NotEven);
        }
        if !self.in_nil_ideal() {
            return Err(AlgebraError::NotNilpotent);
        }
        let bound = self.algebra.nilpotency_bound();
        let mut acc = Self::one(&self.algebra);
        let mut term = Self::one(&self.algebra);
        let mut k = 0u32;
        loop {
            k += 1;
            if k > bound {
                return Err(AlgebraError::NotNilpotent);
            }
            term = term.mul(self).scale(&Scalar::from_ratio(1, k as i64));
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Reduction: kill every monomial containing a nilpotent generator,
    /// keeping units and free even generators symbolic.
    pub fn nil_reduction(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| {
                m.0.iter()
                    .enumerate()
                    .all(|(i, &e)| e == 0 || !self.algebra.generator_is_nilpotent(i))
            })
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        SuperElement {
            algebra: self.algebra.clone(),
            terms,
        }
    }

    /// Multiplicative inverse of an element whose reduction is a single
    /// invertible term (a scalar times a Laurent monomial in units).
    pub fn invert(&self) -> Result<Self, AlgebraError> {
        let red = self.nil_reduction();
        if red.terms.len() != 1 {
            return Err(AlgebraError::NotAUnit);
        }
        let (m, c) = red.terms.iter().next().unwrap();
        // Every generator appearing in the reduction must be invertible.
        if m.0
            .iter()
            .enumerate()
            .any(|(i, &e)| e != 0 && !self.algebra.generators[i].invertible)
        {
            return Err(AlgebraError::NotAUnit);
        }
        let mut m_inv = m.clone();
        for e in m_inv.0.iter_mut() {
            *e = -*e;
        }
        let unit_inv = SuperElement::from_monomial(&self.algebra, m_inv, c.inv());
        // e = red * (1 + n)  =>  e^{-1} = red^{-1} * sum (-n)^k.
        let n = unit_inv.mul(&self.sub(&red));
        let bound = self.algebra.nilpotency_bound();
        let mut acc = Self::one(&self.algebra);
        let mut term = Self::one(&self.algebra);
        for _ in 0..=bound {
            term = term.mul(&n).neg();
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        Ok(unit_inv.mul(&acc))
    }

    /// Antilinear involution: conjugate coefficients, fix generators.
    pub fn conjugate(&self) -> Self {
        SuperElement {
            algebra: self.algebra.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.conj()))
                .collect(),
        }
    }

    /// Substitute generators by images in a target algebra. Every generator
    /// of the source must be mapped. Fails the caller's responsibility checks
    /// only through zero/invertibility arithmetic.
    pub fn substitute(
        &self,
        target: &Algebra,
        images: &BTreeMap<usize, SuperElement>,
    ) -> Result<SuperElement, AlgebraError> {
        let mut acc = SuperElement::zero(target);
        for (m, c) in &self.terms {
            let mut term = SuperElement::scalar(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let img = images.get(&i).ok_or_else(|| {
                    AlgebraError::UnknownGenerator(self.algebra.generators[i].name.clone())
                })?;
                if e < 0 {
                    let inv = img.invert()?;
                    for _ in 0..(-e) {
                        term = term.mul(&inv);
                    }
                } else {
                    for _ in 0..e {
                        term = term.mul(img);
                    }
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Evaluate at a classical point: nilpotent generators to zero, others
    /// to the provided rational values (units must get nonzero values).
    pub fn evaluate_classical(
        &self,
        point: &BTreeMap<usize, Scalar>,
    ) -> Result<Scalar, AlgebraError> {
        let mut acc = Scalar::zero();
        'terms: for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if self.algebra.generator_is_nilpotent(i) {
                    continue 'terms;
                }
                let val = point.get(&i).cloned().unwrap_or_else(Scalar::zero);
                if e < 0 {
                    if val.is_zero() {
                        return Err(AlgebraError::NotAUnit);
                    }
                    let inv = val.inv();
                    for _ in 0..(-e) {
                        v *= &inv;
                    }
                } else {
                    if val.is_zero() {
                        continue 'terms;
                    }
                    for _ in 0..e {
                        v *= &val;
                    }
                }
            }
            acc += &v;
        }
        Ok(acc)
    }
}

/// Build an element from raw written terms: each term is a coefficient and a
/// sequence of (generator name, exponent) factors in writing order. The
/// result is the canonical normal form with Koszul signs collected.
pub fn normalize(
    algebra: &Algebra,
    raw_terms: &[(Vec<(&str, i32)>, Scalar)],
) -> Result<SuperElement, AlgebraError> {
    let mut acc = SuperElement::zero(algebra);
    for (factors, coeff) in raw_terms {
        let mut term = SuperElement::scalar(algebra, coeff.clone());
        for (name, exp) in factors {
            let g = SuperElement::generator_pow(algebra, name, *exp)?;
            term = term.mul(&g);
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

impl fmt::Display for SuperElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_one() {
                write!(f, "({c})")?;
                continue;
            }
            write!(f, "({c})")?;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                write!(f, "*{}", self.algebra.generators[i].name)?;
                if e != 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SuperElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
