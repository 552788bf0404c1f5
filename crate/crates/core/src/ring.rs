//! Exact scalar arithmetic.
//!
//! A [`Scalar`] lives in one of three rings: arbitrary precision integers,
//! rationals, or sparse multivariate polynomials with integer coefficients
//! over an ordered list of named indeterminates. Every computation keeps all
//! of its scalars in one ring, identified by a [`RingTag`]; mixing rings is a
//! [`RingError::Mismatch`].

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("ring mismatch: {left} vs {right}")]
    Mismatch { left: String, right: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division: {dividend} is not divisible by {divisor}")]
    InexactDivision { dividend: String, divisor: String },
    #[error("invalid indeterminate list: {0}")]
    InvalidVars(String),
    #[error("cannot parse {input:?} at offset {offset}: {message}")]
    Parse {
        input: String,
        offset: usize,
        message: String,
    },
}

/// Ordered list of indeterminate names shared by every polynomial of a ring.
#[derive(Debug, Clone)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<I, S>(names: I) -> Result<Self, RingError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (k, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(RingError::InvalidVars(format!("{name:?} is not an identifier")));
            }
            if names[..k].contains(name) {
                return Err(RingError::InvalidVars(format!("{name:?} declared twice")));
            }
        }
        Ok(Vars(names.into()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl PartialEq for Vars {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Vars {}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Which ring a scalar belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingTag {
    Integer,
    Rational,
    Polynomial(Vars),
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::Integer => f.write_str("int"),
            RingTag::Rational => f.write_str("rat"),
            RingTag::Polynomial(vars) => write!(f, "poly[{}]", vars.names().join(",")),
        }
    }
}

impl RingTag {
    pub fn polynomial<I, S>(names: I) -> Result<Self, RingError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Ok(RingTag::Polynomial(Vars::new(names)?))
    }

    fn ensure_same(&self, other: &RingTag) -> Result<(), RingError> {
        if self == other {
            Ok(())
        } else {
            Err(RingError::Mismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

/// Exponent vector of a monomial. Ordered graded-lexicographically: total
/// degree first, then lexicographically with `x1 > x2 > ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exponents: Box<[u32]>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial {
            degree: exponents.iter().sum(),
            exponents: exponents.into_boxed_slice(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial::new(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exponents: self
                .exponents
                .iter()
                .zip(other.exponents.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if other.degree > self.degree {
            return None;
        }
        let exponents = self
            .exponents
            .iter()
            .zip(other.exponents.iter())
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Box<[u32]>>>()?;
        Some(Monomial {
            degree: self.degree - other.degree,
            exponents,
        })
    }
}

/// Sparse polynomial with integer coefficients.
///
/// Terms are sorted ascending in graded lex order and never carry a zero
/// coefficient, so derived equality is equality of polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    vars: Vars,
    terms: Vec<(Monomial, BigInt)>,
}

impl Poly {
    pub fn zero(vars: &Vars) -> Self {
        Poly {
            vars: vars.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(vars: &Vars, c: BigInt) -> Self {
        let mut p = Poly::zero(vars);
        if !c.is_zero() {
            p.terms.push((Monomial::one(vars.len()), c));
        }
        p
    }

    /// The indeterminate at position `index` of `vars`.
    pub fn var(vars: &Vars, index: usize) -> Self {
        assert!(index < vars.len(), "indeterminate index out of range");
        let mut e = vec![0; vars.len()];
        e[index] = 1;
        Poly {
            vars: vars.clone(),
            terms: vec![(Monomial::new(e), BigInt::one())],
        }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zeros.
    pub fn from_terms<I>(vars: &Vars, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.exponents.len(), vars.len(), "monomial arity mismatch");
            *acc.entry(m).or_default() += c;
        }
        Self::from_map(vars, acc)
    }

    fn from_map(vars: &Vars, acc: HashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Poly {
            vars: vars.clone(),
            terms,
        }
    }

    /// Re-establishes the canonical form. Idempotent.
    pub fn normalized(&self) -> Self {
        Poly::from_terms(&self.vars, self.terms.iter().cloned())
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.as_slice() {
            [] => Some(BigInt::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.last().map(|(m, _)| m.degree)
    }

    fn leading(&self) -> Option<&(Monomial, BigInt)> {
        self.terms.last()
    }

    fn add_ref(&self, other: &Poly) -> Poly {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                Ordering::Less => {
                    terms.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    terms.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca + cb;
                    if !c.is_zero() {
                        terms.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&other.terms[j..]);
        Poly {
            vars: self.vars.clone(),
            terms,
        }
    }

    fn neg_ref(&self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    fn scale(&self, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    fn mul_ref(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.vars);
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        Poly::from_map(&self.vars, acc)
    }

    /// Exact quotient by repeated division of leading terms. Fails as soon as
    /// a leading term of the remainder is not divisible by the divisor's
    /// leading term, which happens iff the division is inexact.
    fn exact_div(&self, divisor: &Poly) -> Result<Poly, RingError> {
        let inexact = || RingError::InexactDivision {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
        };
        let (lm, lc) = divisor.leading().ok_or(RingError::DivisionByZero)?;
        if let Some(c) = divisor.as_constant() {
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, a) in &self.terms {
                let (q, r) = a.div_rem(&c);
                if !r.is_zero() {
                    return Err(inexact());
                }
                terms.push((m.clone(), q));
            }
            return Ok(Poly {
                vars: self.vars.clone(),
                terms,
            });
        }
        let mut rem: BTreeMap<Monomial, BigInt> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.checked_div(lm).ok_or_else(inexact)?;
            let (qc, r) = c.div_rem(lc);
            if !r.is_zero() {
                return Err(inexact());
            }
            // The leading term cancels exactly; subtract the rest of qm*qc*divisor.
            for (dm, dc) in &divisor.terms[..divisor.terms.len() - 1] {
                let key = qm.mul(dm);
                let delta = &qc * dc;
                match rem.get_mut(&key) {
                    Some(v) => {
                        *v -= delta;
                        if v.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, -delta);
                    }
                }
            }
            quotient.push((qm, qc));
        }
        quotient.reverse();
        Ok(Poly {
            vars: self.vars.clone(),
            terms: quotient,
        })
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = c.abs();
            let mut parts: Vec<String> = Vec::new();
            if m.is_one() || !abs.is_one() {
                parts.push(abs.to_string());
            }
            for (name, &e) in self.vars.names().iter().zip(m.exponents.iter()) {
                match e {
                    0 => {}
                    1 => parts.push(name.clone()),
                    _ => parts.push(format!("{name}^{e}")),
                }
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

/// An element of one of the supported exact rings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Poly(Poly),
}

impl Scalar {
    pub fn int(v: impl Into<BigInt>) -> Self {
        Scalar::Int(v.into())
    }

    pub fn zero(ring: &RingTag) -> Self {
        Scalar::from_bigint(ring, BigInt::zero())
    }

    pub fn one(ring: &RingTag) -> Self {
        Scalar::from_bigint(ring, BigInt::one())
    }

    pub fn from_i64(ring: &RingTag, v: i64) -> Self {
        Scalar::from_bigint(ring, BigInt::from(v))
    }

    pub fn from_bigint(ring: &RingTag, v: BigInt) -> Self {
        match ring {
            RingTag::Integer => Scalar::Int(v),
            RingTag::Rational => Scalar::Rat(BigRational::from_integer(v)),
            RingTag::Polynomial(vars) => Scalar::Poly(Poly::constant(vars, v)),
        }
    }

    /// The indeterminate `name` of a polynomial ring.
    pub fn var(ring: &RingTag, name: &str) -> Result<Self, RingError> {
        match ring {
            RingTag::Polynomial(vars) => vars
                .index_of(name)
                .map(|i| Scalar::Poly(Poly::var(vars, i)))
                .ok_or_else(|| RingError::InvalidVars(format!("{name:?} is not declared"))),
            _ => Err(RingError::InvalidVars(format!("{ring} has no indeterminate {name:?}"))),
        }
    }

    pub fn ring(&self) -> RingTag {
        match self {
            Scalar::Int(_) => RingTag::Integer,
            Scalar::Rat(_) => RingTag::Rational,
            Scalar::Poly(p) => RingTag::Polynomial(p.vars.clone()),
        }
    }

    fn same_ring(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Int(_), Scalar::Int(_)) | (Scalar::Rat(_), Scalar::Rat(_)) => true,
            (Scalar::Poly(a), Scalar::Poly(b)) => a.vars == b.vars,
            _ => false,
        }
    }

    fn mismatch(&self, other: &Scalar) -> RingError {
        RingError::Mismatch {
            left: self.ring().to_string(),
            right: other.ring().to_string(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_zero(),
            Scalar::Rat(v) => v.is_zero(),
            Scalar::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_one(),
            Scalar::Rat(v) => v.is_one(),
            Scalar::Poly(p) => p.as_constant().is_some_and(|c| c.is_one()),
        }
    }

    pub fn as_bigint(&self) -> Option<&BigInt> {
        match self {
            Scalar::Int(v) => Some(v),
            _ => None,
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, RingError> {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Ok(Scalar::Int(a + b)),
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a + b)),
            (Scalar::Poly(a), Scalar::Poly(b)) if a.vars == b.vars => Ok(Scalar::Poly(a.add_ref(b))),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, RingError> {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Ok(Scalar::Int(a - b)),
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a - b)),
            (Scalar::Poly(a), Scalar::Poly(b)) if a.vars == b.vars => Ok(Scalar::Poly(a.add_ref(&b.neg_ref()))),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, RingError> {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Ok(Scalar::Int(a * b)),
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a * b)),
            (Scalar::Poly(a), Scalar::Poly(b)) if a.vars == b.vars => Ok(Scalar::Poly(a.mul_ref(b))),
            _ => Err(self.mismatch(other)),
        }
    }

    /// Quotient `q` with `q * divisor == self`. Over the integers and
    /// polynomials the division must be exact; over the rationals any nonzero
    /// divisor works.
    pub fn exact_divide(&self, divisor: &Scalar) -> Result<Scalar, RingError> {
        if !self.same_ring(divisor) {
            return Err(self.mismatch(divisor));
        }
        if divisor.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        match (self, divisor) {
            (Scalar::Int(a), Scalar::Int(b)) => {
                let (q, r) = a.div_rem(b);
                if r.is_zero() {
                    Ok(Scalar::Int(q))
                } else {
                    Err(RingError::InexactDivision {
                        dividend: a.to_string(),
                        divisor: b.to_string(),
                    })
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Ok(Scalar::Rat(a / b)),
            (Scalar::Poly(a), Scalar::Poly(b)) => a.exact_div(b).map(Scalar::Poly),
            _ => unreachable!("ring checked above"),
        }
    }

    /// Canonical form. Values built through the public API are always
    /// canonical, so this is the identity on them.
    pub fn normalized(&self) -> Scalar {
        match self {
            Scalar::Int(v) => Scalar::Int(v.clone()),
            Scalar::Rat(v) => Scalar::Rat(v.reduced()),
            Scalar::Poly(p) => Scalar::Poly(p.normalized()),
        }
    }

    /// Embeds `self` into `ring` (int → rat, int → constant polynomial).
    pub fn coerce(&self, ring: &RingTag) -> Result<Scalar, RingError> {
        match (self, ring) {
            (Scalar::Int(v), _) => Ok(Scalar::from_bigint(ring, v.clone())),
            _ => {
                self.ring().ensure_same(ring)?;
                Ok(self.clone())
            }
        }
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    /// `-self` when `negate`, else a clone.
    pub fn negate_if(&self, negate: bool) -> Scalar {
        if negate {
            -self
        } else {
            self.clone()
        }
    }

    pub fn parse(text: &str, ring: &RingTag) -> Result<Scalar, RingError> {
        Parser::new(text, ring).parse()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Rat(v) if v.denom().is_one() => write!(f, "{}", v.numer()),
            Scalar::Rat(v) => write!(f, "{}/{}", v.numer(), v.denom()),
            Scalar::Poly(p) => write!(f, "{p}"),
        }
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Int(v) => Scalar::Int(-v),
            Scalar::Rat(v) => Scalar::Rat(-v),
            Scalar::Poly(p) => Scalar::Poly(p.neg_ref()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

// Operator forms panic on ring mismatch; callers validate rings up front
// (matrices carry a single ring tag) and use the `checked_*` forms otherwise.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident, $assign_trait:ident, $assign_method:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $assign_trait<&Scalar> for Scalar {
            fn $assign_method(&mut self, rhs: &Scalar) {
                *self = (&*self).$method(rhs);
            }
        }
        impl $assign_trait<Scalar> for Scalar {
            fn $assign_method(&mut self, rhs: Scalar) {
                *self = (&*self).$method(&rhs);
            }
        }
    };
}

forward_binop!(Add, add, checked_add, AddAssign, add_assign);
forward_binop!(Sub, sub, checked_sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, checked_mul, MulAssign, mul_assign);

/// Recursive-descent parser for the scalar text syntax:
/// sums and differences of products of integers, indeterminates,
/// parenthesised expressions and non-negative integer powers. `/` is only
/// accepted over the rationals.
struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    ring: &'a RingTag,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, ring: &'a RingTag) -> Self {
        Parser {
            text,
            bytes: text.as_bytes(),
            pos: 0,
            ring,
        }
    }

    fn error(&self, message: impl Into<String>) -> RingError {
        RingError::Parse {
            input: self.text.to_string(),
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<Scalar, RingError> {
        if self.peek().is_none() {
            return Err(self.error("empty expression"));
        }
        let v = self.expr()?;
        if self.peek().is_some() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<Scalar, RingError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Scalar, RingError> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == b'*' {
                acc * rhs
            } else {
                if *self.ring != RingTag::Rational {
                    return Err(self.error("'/' is only allowed for rationals"));
                }
                acc.exact_divide(&rhs).map_err(|e| self.error(e.to_string()))?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Scalar, RingError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Scalar, RingError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let digits = self.digits();
        let exp: u32 = digits
            .parse()
            .map_err(|_| self.error("expected a non-negative integer exponent"))?;
        let mut acc = Scalar::one(self.ring);
        for _ in 0..exp {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn atom(&mut self) -> Result<Scalar, RingError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let v: BigInt = digits.parse().map_err(|_| self.error("bad integer"))?;
                Ok(Scalar::from_bigint(self.ring, v))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = &self.text[start..self.pos];
                Scalar::var(self.ring, name).map_err(|_| {
                    self.pos = start;
                    self.error(format!("unknown indeterminate {name:?} for ring {}", self.ring))
                })
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
