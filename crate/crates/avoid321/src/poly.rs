//! Sparse multivariate Laurent polynomials over the integers.
//!
//! The variable alphabet is fixed: an unbounded family `t1, t2, …` plus
//! `x`, `y`, `z`. Exponents may be negative (substitutions like
//! `y ← yz/x` need them); coefficients are arbitrary-precision integers,
//! so arithmetic never overflows silently.
//!
//! Terms live in a sorted map under a canonical order (total degree, then
//! exponent vectors compared in the variable order `t1 < t2 < … < x < y
//! < z`), which makes rendering and JSON output deterministic. Exact
//! division uses a separate pure-lexicographic order with `x > y > z >
//! t1 > t2 > …`, under which the binomial `x − yz` has leading term `x`.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// One variable of the fixed alphabet.
///
/// The derived order is the canonical display order
/// `t1 < t2 < … < x < y < z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    T(u32),
    X,
    Y,
    Z,
}

impl Var {
    /// The refinement variable `t_i`; indices start at 1.
    pub fn t(i: u32) -> Var {
        assert!(i >= 1, "t-variable indices start at 1");
        Var::T(i)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::T(i) => write!(f, "t{i}"),
            Var::X => write!(f, "x"),
            Var::Y => write!(f, "y"),
            Var::Z => write!(f, "z"),
        }
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Var> {
        match s {
            "x" => Ok(Var::X),
            "y" => Ok(Var::Y),
            "z" => Ok(Var::Z),
            _ => {
                let idx = s
                    .strip_prefix('t')
                    .and_then(|rest| rest.parse::<u32>().ok())
                    .filter(|&i| i >= 1)
                    .ok_or_else(|| Error::Parse(format!("unknown variable {s:?}")))?;
                Ok(Var::T(idx))
            }
        }
    }
}

/// A power product with integer (possibly negative) exponents.
/// Zero exponents are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: BTreeMap<Var, i32>,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(v: Var) -> Monomial {
        Monomial::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: i32) -> Monomial {
        let mut exps = BTreeMap::new();
        if e != 0 {
            exps.insert(v, e);
        }
        Monomial { exps }
    }

    pub fn from_exps(pairs: impl IntoIterator<Item = (Var, i32)>) -> Monomial {
        let mut m = Monomial::one();
        for (v, e) in pairs {
            m.mul_var(v, e);
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, v: Var) -> i32 {
        self.exps.get(&v).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (Var, i32)> + '_ {
        self.exps.iter().map(|(&v, &e)| (v, e))
    }

    pub fn total_degree(&self) -> i64 {
        self.exps.values().map(|&e| e as i64).sum()
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.exps.values().any(|&e| e < 0)
    }

    fn mul_var(&mut self, v: Var, e: i32) {
        if e == 0 {
            return;
        }
        let entry = self.exps.entry(v).or_insert(0);
        *entry = entry.checked_add(e).expect("exponent overflow");
        if *entry == 0 {
            self.exps.remove(&v);
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (&v, &e) in &other.exps {
            out.mul_var(v, e);
        }
        out
    }

    /// Exponentwise quotient; always defined in the Laurent ring.
    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (&v, &e) in &other.exps {
            out.mul_var(v, -e);
        }
        out
    }

    pub fn pow(&self, e: i32) -> Monomial {
        let mut out = Monomial::one();
        for (&v, &base) in &self.exps {
            out.mul_var(v, base.checked_mul(e).expect("exponent overflow"));
        }
        out
    }

    /// True if `self` divides `other` inside the polynomial ring, i.e.
    /// exponentwise ≤.
    fn divides_poly(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|(&v, &e)| e <= other.exponent(v))
    }

    /// Pure lexicographic comparison with `x > y > z > t1 > t2 > …`.
    fn cmp_division(&self, other: &Monomial) -> Ordering {
        for v in [Var::X, Var::Y, Var::Z] {
            match self.exponent(v).cmp(&other.exponent(v)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        let mut a = self.exps.range(..Var::X);
        let mut b = other.exps.range(..Var::X);
        let (mut na, mut nb) = (a.next(), b.next());
        loop {
            match (na, nb) {
                (None, None) => return Ordering::Equal,
                (Some((_, &ea)), None) => {
                    if ea != 0 {
                        return ea.cmp(&0);
                    }
                    na = a.next();
                }
                (None, Some((_, &eb))) => {
                    if eb != 0 {
                        return 0.cmp(&eb);
                    }
                    nb = b.next();
                }
                (Some((&va, &ea)), Some((&vb, &eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        if ea != 0 {
                            return ea.cmp(&0);
                        }
                        na = a.next();
                    }
                    Ordering::Greater => {
                        if eb != 0 {
                            return 0.cmp(&eb);
                        }
                        nb = b.next();
                    }
                    Ordering::Equal => {
                        match ea.cmp(&eb) {
                            Ordering::Equal => {}
                            ord => return ord,
                        }
                        na = a.next();
                        nb = b.next();
                    }
                },
            }
        }
    }
}

impl Ord for Monomial {
    /// Canonical order: total degree ascending, ties broken by comparing
    /// exponent vectors componentwise in the order `t1 < t2 < … < x < y < z`.
    fn cmp(&self, other: &Monomial) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let mut a = self.exps.iter();
        let mut b = other.exps.iter();
        let (mut na, mut nb) = (a.next(), b.next());
        loop {
            match (na, nb) {
                (None, None) => return Ordering::Equal,
                (Some((_, &ea)), None) => {
                    if ea != 0 {
                        return ea.cmp(&0);
                    }
                    na = a.next();
                }
                (None, Some((_, &eb))) => {
                    if eb != 0 {
                        return 0.cmp(&eb);
                    }
                    nb = b.next();
                }
                (Some((&va, &ea)), Some((&vb, &eb))) => match va.cmp(&vb) {
                    // The earlier variable is present in one monomial only:
                    // the other contributes exponent 0 there.
                    Ordering::Less => {
                        if ea != 0 {
                            return ea.cmp(&0);
                        }
                        na = a.next();
                    }
                    Ordering::Greater => {
                        if eb != 0 {
                            return 0.cmp(&eb);
                        }
                        nb = b.next();
                    }
                    Ordering::Equal => {
                        match ea.cmp(&eb) {
                            Ordering::Equal => {}
                            ord => return ord,
                        }
                        na = a.next();
                        nb = b.next();
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (&v, &e) in &self.exps {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A sparse Laurent polynomial: a canonical map from monomials to nonzero
/// integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> LaurentPoly {
        LaurentPoly::monomial(Monomial::one(), c)
    }

    pub fn var(v: Var) -> LaurentPoly {
        LaurentPoly::monomial(Monomial::var(v), 1)
    }

    pub fn monomial(m: Monomial, c: impl Into<BigInt>) -> LaurentPoly {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms(pairs: impl IntoIterator<Item = (Monomial, BigInt)>) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (m, c) in pairs {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// `Some(c)` iff the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.terms.keys().any(Monomial::has_negative_exponent)
    }

    /// Sum of all coefficients, i.e. the value at every variable = 1.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), tc * c))
                .collect(),
        }
    }

    /// Simultaneous substitution of variables by monomials or constants.
    ///
    /// Every replacement must be a single Laurent term or a constant
    /// (that is enough for all generating-function specializations).
    /// Replacements are applied to the original occurrences only: the
    /// image of `y ← yz/x` is not substituted again.
    pub fn substitute_map(&self, map: &[(Var, LaurentPoly)]) -> Result<LaurentPoly> {
        for (_, rep) in map {
            if rep.num_terms() > 1 {
                return Err(Error::NotMonomial(rep.num_terms()));
            }
        }
        let mut out = LaurentPoly::zero();
        'term: for (mono, coeff) in &self.terms {
            let mut new_coeff = coeff.clone();
            let mut new_mono = mono.clone();
            for (v, rep) in map {
                let e = mono.exponent(*v);
                if e == 0 {
                    continue;
                }
                new_mono = new_mono.mul(&Monomial::var_pow(*v, -e));
                match rep.terms.iter().next() {
                    None => {
                        // Replacement is the zero polynomial.
                        if e < 0 {
                            return Err(Error::ZeroToNegativePower);
                        }
                        continue 'term; // v^e with e > 0 kills the term
                    }
                    Some((rm, rc)) => {
                        if e < 0 && !(rc.magnitude().is_one()) {
                            return Err(Error::NonUnitCoefficient(rc.to_string()));
                        }
                        new_mono = new_mono.mul(&rm.pow(e));
                        // |rc| = 1 when e < 0, so |e| is the right power.
                        new_coeff *= rc.pow(e.unsigned_abs());
                    }
                }
            }
            out.add_term(new_mono, new_coeff);
        }
        Ok(out)
    }

    /// Substitutes a single variable by a monomial or constant.
    pub fn substitute(&self, v: Var, replacement: &LaurentPoly) -> Result<LaurentPoly> {
        self.substitute_map(&[(v, replacement.clone())])
    }

    pub fn substitute_const(&self, v: Var, value: impl Into<BigInt>) -> Result<LaurentPoly> {
        self.substitute(v, &LaurentPoly::constant(value))
    }

    /// Replaces every `t_i` by the same integer constant.
    pub fn substitute_all_t(&self, value: impl Into<BigInt>) -> Result<LaurentPoly> {
        let rep = LaurentPoly::constant(value);
        let t_vars: Vec<Var> = self
            .terms
            .keys()
            .flat_map(|m| m.exponents().map(|(v, _)| v))
            .filter(|v| matches!(v, Var::T(_)))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let map: Vec<(Var, LaurentPoly)> = t_vars.into_iter().map(|v| (v, rep.clone())).collect();
        self.substitute_map(&map)
    }

    /// Exact division, failing loudly on a nonzero remainder.
    ///
    /// Monomial by monomial is resolved in the Laurent ring directly.
    /// Otherwise both operands are shifted by monomials to clear negative
    /// exponents, divided as ordinary polynomials (single-divisor
    /// reduction under the lexicographic order with `x` highest), and the
    /// quotient is shifted back.
    pub fn divide_exact(num: &LaurentPoly, den: &LaurentPoly) -> Result<LaurentPoly> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        if num.num_terms() == 1 && den.num_terms() == 1 {
            let (nm, nc) = num.terms.iter().next().unwrap();
            let (dm, dc) = den.terms.iter().next().unwrap();
            let (q, r) = num_integer_div_rem(nc, dc);
            if !r.is_zero() {
                return Err(Error::NotDivisible(format!(
                    "coefficient {nc} not divisible by {dc}"
                )));
            }
            return Ok(LaurentPoly::monomial(nm.div(dm), q));
        }

        let num_shift = negative_clearing_monomial(num);
        let den_shift = negative_clearing_monomial(den);
        let one = BigInt::one();
        let num_poly = num.mul_monomial(&num_shift, &one);
        let den_poly = den.mul_monomial(&den_shift, &one);

        // Leading term of the divisor under the division order.
        let (den_lt_mono, den_lt_coeff) = den_poly
            .terms
            .iter()
            .max_by(|(a, _), (b, _)| a.cmp_division(b))
            .map(|(m, c)| (m.clone(), c.clone()))
            .unwrap();

        let mut remainder: BTreeMap<DivOrdered, BigInt> = num_poly
            .terms
            .into_iter()
            .map(|(m, c)| (DivOrdered(m), c))
            .collect();
        let mut quotient = LaurentPoly::zero();

        while let Some((DivOrdered(lt_mono), lt_coeff)) =
            remainder.last_key_value().map(|(k, v)| (k.0.clone(), v.clone()))
        {
            if !den_lt_mono.divides_poly(&lt_mono) {
                return Err(Error::NotDivisible(format!(
                    "leading term {lt_mono} not reducible by {den_lt_mono}"
                )));
            }
            let (qc, r) = num_integer_div_rem(&lt_coeff, &den_lt_coeff);
            if !r.is_zero() {
                return Err(Error::NotDivisible(format!(
                    "coefficient {lt_coeff} not divisible by {den_lt_coeff}"
                )));
            }
            let qm = lt_mono.div(&den_lt_mono);
            for (dm, dc) in &den_poly.terms {
                let key = DivOrdered(dm.mul(&qm));
                use std::collections::btree_map::Entry;
                match remainder.entry(key) {
                    Entry::Vacant(slot) => {
                        let v = -(dc * &qc);
                        if !v.is_zero() {
                            slot.insert(v);
                        }
                    }
                    Entry::Occupied(mut slot) => {
                        *slot.get_mut() -= dc * &qc;
                        if slot.get().is_zero() {
                            slot.remove();
                        }
                    }
                }
            }
            quotient.add_term(qm, qc);
        }

        // Undo the clearing shifts: q_true = q · den_shift / num_shift.
        Ok(quotient.mul_monomial(&den_shift.div(&num_shift), &one))
    }

    /// Deterministic text rendering; parseable back via `FromStr`.
    pub fn canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else if negative {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let mag = c.magnitude();
            if m.is_one() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&m.to_string());
            }
        }
        out
    }
}

fn num_integer_div_rem(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let q = a / b;
    let r = a - &q * b;
    (q, r)
}

/// Smallest monomial shift making every exponent of `p` nonnegative.
fn negative_clearing_monomial(p: &LaurentPoly) -> Monomial {
    let mut mins: BTreeMap<Var, i32> = BTreeMap::new();
    for (m, _) in p.terms() {
        for (v, e) in m.exponents() {
            let entry = mins.entry(v).or_insert(0);
            *entry = (*entry).min(e);
        }
    }
    Monomial::from_exps(
        mins.into_iter()
            .filter(|&(_, e)| e < 0)
            .map(|(v, e)| (v, -e)),
    )
}

/// Monomial wrapper ordered by the division order.
#[derive(Debug, Clone, PartialEq, Eq)]
struct DivOrdered(Monomial);

impl Ord for DivOrdered {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp_division(&other.0)
    }
}

impl PartialOrd for DivOrdered {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_string())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<LaurentPoly> {
        parse_poly(s)
    }
}

/// Parses the canonical text form (and modest variations: optional
/// whitespace, an ASCII or U+2212 minus, explicit `+`/`-` signs).
fn parse_poly(input: &str) -> Result<LaurentPoly> {
    let normalized: String = input.replace('\u{2212}', "-");
    let s = normalized.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut poly = LaurentPoly::zero();
    let bytes: Vec<char> = s.chars().collect();
    let mut pos = 0usize;
    let mut sign = 1i64;
    let mut expect_term = true;
    while pos < bytes.len() {
        let c = bytes[pos];
        if c.is_whitespace() {
            pos += 1;
        } else if c == '+' || c == '-' {
            if expect_term && c == '-' {
                sign = -sign;
            } else if expect_term {
                // unary plus: ignore
            } else {
                sign = if c == '-' { -1 } else { 1 };
                expect_term = true;
            }
            pos += 1;
        } else {
            let (mono, coeff, next) = parse_term(&bytes, pos)?;
            poly.add_term(mono, coeff * sign);
            sign = 1;
            expect_term = false;
            pos = next;
        }
    }
    if expect_term && !poly.is_zero() {
        return Err(Error::Parse("dangling operator".into()));
    }
    Ok(poly)
}

fn parse_term(chars: &[char], mut pos: usize) -> Result<(Monomial, BigInt, usize)> {
    let mut coeff = BigInt::one();
    let mut mono = Monomial::one();
    let mut saw_factor = false;
    loop {
        if pos < chars.len() && chars[pos].is_ascii_digit() {
            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let digits: String = chars[start..pos].iter().collect();
            coeff *= digits
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad integer {digits:?}")))?;
            saw_factor = true;
        } else if pos < chars.len() && chars[pos].is_ascii_alphabetic() {
            let start = pos;
            pos += 1;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let name: String = chars[start..pos].iter().collect();
            let var: Var = name.parse()?;
            let mut exp = 1i32;
            if pos < chars.len() && chars[pos] == '^' {
                pos += 1;
                let mut exp_sign = 1i32;
                if pos < chars.len() && chars[pos] == '-' {
                    exp_sign = -1;
                    pos += 1;
                }
                let start = pos;
                while pos < chars.len() && chars[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return Err(Error::Parse("missing exponent after '^'".into()));
                }
                let digits: String = chars[start..pos].iter().collect();
                exp = exp_sign
                    * digits
                        .parse::<i32>()
                        .map_err(|_| Error::Parse(format!("bad exponent {digits:?}")))?;
            }
            mono = mono.mul(&Monomial::var_pow(var, exp));
            saw_factor = true;
        } else {
            return Err(Error::Parse(format!(
                "unexpected character at term position {pos}"
            )));
        }
        // A '*' continues the same term.
        if pos < chars.len() && chars[pos] == '*' {
            pos += 1;
            continue;
        }
        break;
    }
    if !saw_factor {
        return Err(Error::Parse("empty term".into()));
    }
    Ok((mono, coeff, pos))
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: CoeffRepr,
    exp: BTreeMap<String, i32>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffRepr {
    Small(i64),
    Big(String),
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct PolyRepr {
            terms: Vec<TermRepr>,
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| TermRepr {
                coeff: match c.to_i64() {
                    Some(v) => CoeffRepr::Small(v),
                    None => CoeffRepr::Big(c.to_string()),
                },
                exp: m.exponents().map(|(v, e)| (v.to_string(), e)).collect(),
            })
            .collect();
        PolyRepr { terms }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct PolyRepr {
            terms: Vec<TermRepr>,
        }
        let repr = PolyRepr::deserialize(deserializer)?;
        let mut poly = LaurentPoly::zero();
        for term in repr.terms {
            let coeff = match term.coeff {
                CoeffRepr::Small(v) => BigInt::from(v),
                CoeffRepr::Big(s) => s
                    .parse::<BigInt>()
                    .map_err(|e| serde::de::Error::custom(format!("bad coefficient: {e}")))?,
            };
            let mut mono = Monomial::one();
            for (name, e) in term.exp {
                let var: Var = name
                    .parse()
                    .map_err(|_| serde::de::Error::custom(format!("bad variable {name:?}")))?;
                mono = mono.mul(&Monomial::var_pow(var, e));
            }
            poly.add_term(mono, coeff);
        }
        Ok(poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn var_order_is_canonical() {
        assert!(Var::t(1) < Var::t(2));
        assert!(Var::t(99) < Var::X);
        assert!(Var::X < Var::Y && Var::Y < Var::Z);
    }

    #[test]
    fn add_examples() {
        let z = LaurentPoly::var(Var::Z);
        assert!((&z + &(-&z)).is_zero());

        let z2 = parse("z^2");
        let t1xyz = parse("t1*x*y*z");
        assert_eq!((&z2 + &t1xyz).canonical_string(), "z^2 + t1*x*y*z");

        let p = parse("3*x - y");
        assert_eq!(&p + &LaurentPoly::zero(), p);
    }

    #[test]
    fn mul_examples() {
        let a = parse("x - y*z");
        let b = parse("x + y*z");
        assert_eq!(&a * &b, parse("x^2 - y^2*z^2"));

        let xinv = LaurentPoly::monomial(Monomial::var_pow(Var::X, -1), 1);
        let x = LaurentPoly::var(Var::X);
        assert_eq!(&xinv * &x, LaurentPoly::one());

        let telescoping = &parse("1 - y") * &parse("1 + y + y^2");
        assert_eq!(telescoping, parse("1 - y^3"));
    }

    #[test]
    fn substitute_examples() {
        // f_2 with z ← 1.
        let f2 = parse("z^2 + t1*x*y*z");
        assert_eq!(f2.substitute_const(Var::Z, 1).unwrap(), parse("1 + t1*x*y"));

        // y ← yz/x applied to xy.
        let yz_over_x = parse("y*z*x^-1");
        let xy = parse("x*y");
        assert_eq!(xy.substitute(Var::Y, &yz_over_x).unwrap(), parse("y*z"));

        // x ← −1 in x²y + xy².
        let p = parse("x^2*y + x*y^2");
        assert_eq!(p.substitute_const(Var::X, -1).unwrap(), parse("y - y^2"));
    }

    #[test]
    fn substitute_zero_rules() {
        let p = parse("x^2 + x + 1");
        assert_eq!(p.substitute_const(Var::X, 0).unwrap(), parse("1"));
        let laurent = parse("x^-1 + 1");
        assert!(matches!(
            laurent.substitute_const(Var::X, 0),
            Err(Error::ZeroToNegativePower)
        ));
    }

    #[test]
    fn substitute_rejects_polynomials() {
        let p = parse("x");
        let two_terms = parse("y + z");
        assert!(matches!(
            p.substitute(Var::X, &two_terms),
            Err(Error::NotMonomial(2))
        ));
    }

    #[test]
    fn substitute_negative_power_needs_unit() {
        let p = parse("x^-1");
        assert!(p.substitute_const(Var::X, -1).is_ok());
        assert!(matches!(
            p.substitute_const(Var::X, 2),
            Err(Error::NonUnitCoefficient(_))
        ));
    }

    #[test]
    fn substitute_all_t_examples() {
        let f2 = parse("z^2 + t1*x*y*z");
        assert_eq!(f2.substitute_all_t(1).unwrap(), parse("z^2 + x*y*z"));
        assert_eq!(LaurentPoly::zero().substitute_all_t(7).unwrap(), LaurentPoly::zero());
    }

    #[test]
    fn divide_examples() {
        let q = LaurentPoly::divide_exact(&parse("x^2 - y^2*z^2"), &parse("x - y*z")).unwrap();
        assert_eq!(q, parse("x + y*z"));

        let f2 = parse("z^2 + t1*x*y*z");
        let den = parse("x - y*z");
        let prod = &den * &f2;
        assert_eq!(LaurentPoly::divide_exact(&prod, &den).unwrap(), f2);

        // Monomial quotients live in the Laurent ring.
        let q = LaurentPoly::divide_exact(&parse("x"), &parse("y")).unwrap();
        assert_eq!(q, parse("x*y^-1"));

        // ... but a true polynomial division failure is an error.
        assert!(matches!(
            LaurentPoly::divide_exact(&parse("x + 1"), &parse("y")),
            Err(Error::NotDivisible(_))
        ));

        assert!(matches!(
            LaurentPoly::divide_exact(&parse("x"), &LaurentPoly::zero()),
            Err(Error::DivisionByZero)
        ));

        // Coefficient exactness matters too.
        assert!(LaurentPoly::divide_exact(&parse("2*x"), &parse("2")).is_ok());
        assert!(LaurentPoly::divide_exact(&parse("3*x"), &parse("2")).is_err());
    }

    #[test]
    fn divide_laurent_numerator() {
        // Numerator with negative exponents, divisor x − yz.
        let f = parse("x^-1*y + 3 - z^2");
        let den = parse("x - y*z");
        let prod = &f * &den;
        assert_eq!(LaurentPoly::divide_exact(&prod, &den).unwrap(), f);
    }

    #[test]
    fn canonical_string_examples() {
        assert_eq!(LaurentPoly::var(Var::Z).canonical_string(), "z");
        assert_eq!(parse("z^2 + t1*x*y*z").canonical_string(), "z^2 + t1*x*y*z");
        assert_eq!(LaurentPoly::zero().canonical_string(), "0");
        assert_eq!(parse("1 - y").canonical_string(), "1 - y");
        assert_eq!(parse("-2*x + x^-1").canonical_string(), "x^-1 - 2*x");
    }

    #[test]
    fn canonical_order_degree_then_lex() {
        // Same degree: t2-term precedes t1-term because the exponent
        // vector (…, t1=0, t2=1, …) is lexicographically smaller.
        let p = parse("t1*x*y*z^3 + t2*x*y^2*z^2");
        assert_eq!(p.canonical_string(), "t2*x*y^2*z^2 + t1*x*y*z^3");
    }

    #[test]
    fn parse_round_trip() {
        for s in [
            "0",
            "z",
            "1 - y",
            "z^2 + t1*x*y*z",
            "x^-1 - 2*x",
            "-7",
            "5*t3^2*y^-4 + x",
        ] {
            let p = parse(s);
            assert_eq!(p.canonical_string(), s);
            assert_eq!(parse(&p.canonical_string()), p);
        }
    }

    #[test]
    fn json_round_trip() {
        let p = parse("z^2 - 3*t1*x*y*z");
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"{"terms":[{"coeff":1,"exp":{"z":2}},{"coeff":-3,"exp":{"t1":1,"x":1,"y":1,"z":1}}]}"#
        );
        let back: LaurentPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}
