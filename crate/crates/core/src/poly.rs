//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Counting formulas in this crate never leave exact arithmetic: coefficients
//! are `BigRational`, evaluation is exact, and the canonical term order
//! (total degree descending, then exponent vectors ascending in variable
//! declaration order) makes printed output deterministic.
//!
//! Key entry points:
//! - [`MultiPoly`]: the polynomial type with ring operations and evaluation
//! - [`LinForm`]: integer affine forms such as `x_b - x_a - 1`
//! - [`rising_binomial`]: `C(t + d, d)` as a polynomial in the form `t`
//! - [`interpolate_univariate`]: exact Lagrange interpolation

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational scalar used for all coefficients.
pub type Rat = BigRational;
/// Arbitrary-precision integer used for all counts.
pub type Int = BigInt;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("UnknownVariable({0})")]
    UnknownVariable(String),
    #[error("DuplicateAbscissa({0})")]
    DuplicateAbscissa(i64),
}

/// Exponent vector, stored sparsely as variable index -> positive exponent.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(BTreeMap<u32, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(index: u32) -> Self {
        let mut m = BTreeMap::new();
        m.insert(index, 1);
        Monomial(m)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn exponent_of(&self, index: u32) -> u32 {
        self.0.get(&index).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.0.iter().map(|(&v, &e)| (v, e))
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.0.clone();
        for (&v, &e) in &other.0 {
            *out.entry(v).or_insert(0) += e;
        }
        Monomial(out)
    }
}

impl Ord for Monomial {
    /// Canonical term order: higher total degree first; among equal degrees,
    /// exponent vectors ascending lexicographically in variable order.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match other.total_degree().cmp(&self.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let mut a = self.0.iter().peekable();
        let mut b = other.0.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(&va, &ea)), Some(&(&vb, &eb))) => {
                    if va < vb {
                        // self has a nonzero exponent at an earlier variable
                        return Ordering::Greater;
                    }
                    if vb < va {
                        return Ordering::Less;
                    }
                    match ea.cmp(&eb) {
                        Ordering::Equal => {
                            a.next();
                            b.next();
                        }
                        ord => return ord,
                    }
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over the rationals.
///
/// The variable universe is fixed at construction; binary operations require
/// both operands to share it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn zero(vars: &[String]) -> Self {
        MultiPoly {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[String], c: Rat) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn constant_int(vars: &[String], c: i64) -> Self {
        Self::constant(vars, Rat::from_integer(Int::from(c)))
    }

    pub fn var(vars: &[String], name: &str) -> Result<Self, PolyError> {
        let idx = index_of(vars, name)?;
        let mut p = Self::zero(vars);
        p.terms.insert(Monomial::var(idx), Rat::one());
        Ok(p)
    }

    /// Assemble from explicit (exponent map, coefficient) pairs; repeated
    /// monomials accumulate, zero coefficients drop out.
    pub fn from_terms(
        vars: &[String],
        terms: &[(BTreeMap<String, u32>, Rat)],
    ) -> Result<Self, PolyError> {
        let mut p = Self::zero(vars);
        for (exps, coeff) in terms {
            let mut mono = BTreeMap::new();
            for (name, &e) in exps {
                if e == 0 {
                    continue;
                }
                *mono.entry(index_of(vars, name)?).or_insert(0) += e;
            }
            p.insert_term(Monomial(mono), coeff.clone());
        }
        Ok(p)
    }

    /// Exponents of a monomial keyed by variable name.
    pub fn named_exponents(&self, m: &Monomial) -> BTreeMap<String, u32> {
        m.exponents()
            .map(|(v, e)| (self.vars[v as usize].clone(), e))
            .collect()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    fn insert_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_same_universe(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.vars != other.vars {
            let name = other
                .vars
                .iter()
                .find(|v| !self.vars.contains(v))
                .or_else(|| self.vars.iter().find(|v| !other.vars.contains(v)))
                .cloned()
                .unwrap_or_else(|| "<order>".to_string());
            return Err(PolyError::UnknownVariable(name));
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_same_universe(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_same_universe(other)?;
        let mut out = Self::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.insert_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        let mut out = Self::zero(&self.vars);
        if c.is_zero() {
            return out;
        }
        for (m, co) in &self.terms {
            out.terms.insert(m.clone(), co * c);
        }
        out
    }

    pub fn scale_int(&self, c: &Int) -> MultiPoly {
        self.scale(&Rat::from_integer(c.clone()))
    }

    /// Exact evaluation at a rational point. Every variable that occurs in a
    /// term must be assigned; assignments for undeclared names are rejected.
    pub fn eval(&self, point: &BTreeMap<String, Rat>) -> Result<Rat, PolyError> {
        for name in point.keys() {
            index_of(&self.vars, name)?;
        }
        let mut by_index: Vec<Option<&Rat>> = vec![None; self.vars.len()];
        for (name, val) in point {
            by_index[index_of(&self.vars, name)? as usize] = Some(val);
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in m.exponents() {
                let val = by_index[v as usize]
                    .ok_or_else(|| PolyError::UnknownVariable(self.vars[v as usize].clone()))?;
                for _ in 0..e {
                    term *= val;
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Convenience: evaluate at an integer point.
    pub fn eval_int(&self, point: &BTreeMap<String, i64>) -> Result<Rat, PolyError> {
        let rat: BTreeMap<String, Rat> = point
            .iter()
            .map(|(k, &v)| (k.clone(), Rat::from_integer(Int::from(v))))
            .collect();
        self.eval(&rat)
    }

    pub fn degree_in(&self, name: &str) -> Result<u32, PolyError> {
        let idx = index_of(&self.vars, name)?;
        Ok(self
            .terms
            .keys()
            .map(|m| m.exponent_of(idx))
            .max()
            .unwrap_or(0))
    }

    /// Substitute each variable by a polynomial over a common target universe.
    /// Variables missing from `images` are an error.
    pub fn substitute(
        &self,
        images: &BTreeMap<String, MultiPoly>,
        target_vars: &[String],
    ) -> Result<MultiPoly, PolyError> {
        let mut image_by_index: Vec<&MultiPoly> = Vec::with_capacity(self.vars.len());
        for name in &self.vars {
            let img = images
                .get(name)
                .ok_or_else(|| PolyError::UnknownVariable(name.clone()))?;
            if img.vars != target_vars {
                return Err(PolyError::UnknownVariable(name.clone()));
            }
            image_by_index.push(img);
        }
        let mut acc = MultiPoly::zero(target_vars);
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(target_vars, c.clone());
            for (v, e) in m.exponents() {
                for _ in 0..e {
                    term = term.mul(image_by_index[v as usize])?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Rebuild the polynomial over a new universe, translating variable names
    /// through `rename`. Every occurring variable must be mapped.
    pub fn rename_vars(
        &self,
        rename: &BTreeMap<String, String>,
        target_vars: &[String],
    ) -> Result<MultiPoly, PolyError> {
        let mut out = MultiPoly::zero(target_vars);
        for (m, c) in &self.terms {
            let mut exps = BTreeMap::new();
            for (v, e) in m.exponents() {
                let old = &self.vars[v as usize];
                let new = rename
                    .get(old)
                    .ok_or_else(|| PolyError::UnknownVariable(old.clone()))?;
                let idx = index_of(target_vars, new)?;
                *exps.entry(idx).or_insert(0) += e;
            }
            out.insert_term(Monomial(exps), c.clone());
        }
        Ok(out)
    }
}

fn index_of(vars: &[String], name: &str) -> Result<u32, PolyError> {
    vars.iter()
        .position(|v| v == name)
        .map(|i| i as u32)
        .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            if m.total_degree() == 0 {
                write!(f, "{}", format_rat(&abs))?;
            } else {
                write!(f, "{}", format_rat(&abs))?;
                for (v, e) in m.exponents() {
                    if e == 1 {
                        write!(f, "*{}", self.vars[v as usize])?;
                    } else {
                        write!(f, "*{}^{}", self.vars[v as usize], e)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Render a rational as `p` or `p/q`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Integer affine form `sum coeff_v * x_v + constant`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinForm {
    pub coeffs: BTreeMap<String, i64>,
    pub constant: i64,
}

impl LinForm {
    pub fn constant(c: i64) -> Self {
        LinForm {
            coeffs: BTreeMap::new(),
            constant: c,
        }
    }

    pub fn var(name: &str) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(name.to_string(), 1);
        LinForm {
            coeffs,
            constant: 0,
        }
    }

    /// `x_b - x_a + c`, the marker-gap form used by the counting formulas.
    pub fn difference(upper: &str, lower: &str, c: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        *coeffs.entry(upper.to_string()).or_insert(0) += 1;
        *coeffs.entry(lower.to_string()).or_insert(0) -= 1;
        coeffs.retain(|_, v| *v != 0);
        LinForm {
            coeffs,
            constant: c,
        }
    }

    pub fn shift(&self, c: i64) -> Self {
        let mut out = self.clone();
        out.constant += c;
        out
    }

    pub fn to_poly(&self, vars: &[String]) -> Result<MultiPoly, PolyError> {
        let mut p = MultiPoly::constant_int(vars, self.constant);
        for (name, &c) in &self.coeffs {
            let v = MultiPoly::var(vars, name)?.scale_int(&Int::from(c));
            p = p.add(&v)?;
        }
        Ok(p)
    }
}

/// `C(t + d, d) = prod_{i=1..d} (t + i) / d!` as a polynomial in the affine
/// form `t`. For `d = 0` this is the constant 1.
pub fn rising_binomial(vars: &[String], t: &LinForm, d: usize) -> Result<MultiPoly, PolyError> {
    let mut acc = MultiPoly::constant_int(vars, 1);
    let mut factorial = Int::one();
    for i in 1..=d {
        acc = acc.mul(&t.shift(i as i64).to_poly(vars)?)?;
        factorial *= Int::from(i as i64);
    }
    Ok(acc.scale(&Rat::new(Int::one(), factorial)))
}

/// `C(n + d, d)` for an arbitrary integer `n`: the numeric counterpart of
/// [`rising_binomial`], exact for negative arguments as well.
pub fn rising_binomial_int(n: &Int, d: usize) -> Int {
    let mut num = Int::one();
    let mut den = Int::one();
    for i in 1..=d {
        num *= n + Int::from(i as i64);
        den *= Int::from(i as i64);
    }
    num / den
}

/// Ordinary binomial coefficient `C(n, k)` with `C(n, k) = 0` for `n < k`,
/// defined for `n >= 0`.
pub fn binomial(n: i64, k: usize) -> Int {
    if n < 0 || (k as i64) > n {
        return Int::zero();
    }
    rising_binomial_int(&Int::from(n - k as i64), k)
}

/// Exact Lagrange interpolation through `samples = [(x_i, y_i)]`, producing a
/// univariate polynomial in `var` of degree < samples.len().
pub fn interpolate_univariate(var: &str, samples: &[(i64, Rat)]) -> Result<MultiPoly, PolyError> {
    for (i, (xi, _)) in samples.iter().enumerate() {
        if samples[..i].iter().any(|(xj, _)| xj == xi) {
            return Err(PolyError::DuplicateAbscissa(*xi));
        }
    }
    let vars = vec![var.to_string()];
    let x = MultiPoly::var(&vars, var).expect("var in universe");
    let mut acc = MultiPoly::zero(&vars);
    for (i, (xi, yi)) in samples.iter().enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = MultiPoly::constant(&vars, yi.clone());
        for (j, (xj, _)) in samples.iter().enumerate() {
            if i == j {
                continue;
            }
            let num = x
                .sub(&MultiPoly::constant_int(&vars, *xj))
                .expect("universe");
            basis = basis.mul(&num).expect("universe");
            let den = Rat::from_integer(Int::from(*xi - *xj));
            basis = basis.scale(&den.recip());
        }
        acc = acc.add(&basis).expect("universe");
    }
    Ok(acc)
}
