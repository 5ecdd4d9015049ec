//! Sparse multivariate polynomials with integer coefficients.
//!
//! Canonical order: descending total degree, then descending exponent
//! vectors compared lexicographically (the first variable is the most
//! significant). Text rendering follows that order, e.g.
//! `4*u12^6 + u11^2*u12^4 - 2*u11`.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::Field;

pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    vars: Vec<String>,
    terms: BTreeMap<Monomial, BigInt>,
}

fn degree_of(m: &[u32]) -> u32 {
    m.iter().sum()
}

impl Poly {
    pub fn zero(vars: &[String]) -> Self {
        Poly { vars: vars.to_vec(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[String], c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(vec![0; vars.len()], c.into());
        p
    }

    pub fn var(vars: &[String], i: usize) -> Self {
        let mut m = vec![0; vars.len()];
        m[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(m, BigInt::one());
        p
    }

    /// Variable by name; panics if absent.
    pub fn named(vars: &[String], name: &str) -> Self {
        let i = vars.iter().position(|v| v == name).unwrap_or_else(|| panic!("unknown variable {name}"));
        Self::var(vars, i)
    }

    pub fn from_terms(vars: &[String], terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            if m.len() != vars.len() {
                return Err(Error::Parse(format!("monomial of length {} in {} variables", m.len(), vars.len())));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &[u32]) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m);
        match e {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Terms in canonical order.
    pub fn canonical_terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|(m, _)| (Reverse(degree_of(m)), Reverse(*m)));
        v
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().max_by_key(|(m, _)| (degree_of(m), *m))
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| degree_of(m)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(|m| degree_of(m));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn homogeneous_components(&self) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(degree_of(m)).or_insert_with(|| Poly::zero(&self.vars)).add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::constant(&self.vars, 1);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide by the content and make the leading coefficient positive.
    pub fn normalized(&self) -> Poly {
        let g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        let sign = match self.leading_term() {
            Some((_, c)) if c.is_negative() => -BigInt::one(),
            _ => BigInt::one(),
        };
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c / &g * &sign)).collect(),
        }
    }

    pub fn eval<F: Field>(&self, values: &[F]) -> F {
        assert_eq!(values.len(), self.vars.len(), "one value per variable");
        let mut powers: Vec<Vec<F>> = values.iter().map(|v| vec![F::one(), v.clone()]).collect();
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = F::from_bigint(c);
            for (k, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[k].len() <= e {
                    let next = powers[k].last().unwrap().clone() * values[k].clone();
                    powers[k].push(next);
                }
                t = t * powers[k][e].clone();
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitute `images[k]` for the k-th variable; the result lives in
    /// the variables of the images.
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.vars.len(), "one image per variable");
        let target = images.first().map_or_else(Vec::new, |p| p.vars.clone());
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::constant(&target, 1), p.clone()]).collect();
        let mut acc = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&target, c.clone());
            for (k, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let e = e as usize;
                while powers[k].len() <= e {
                    let next = powers[k].last().unwrap() * &images[k];
                    powers[k].push(next);
                }
                t = &t * &powers[k][e];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Re-express in a larger variable list containing all current names.
    pub fn embed(&self, vars: &[String]) -> Result<Poly> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).ok_or_else(|| Error::Parse(format!("variable {v} missing"))))
            .collect::<Result<_>>()?;
        let mut p = Poly::zero(vars);
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (k, &x) in m.iter().enumerate() {
                e[map[k]] = x;
            }
            p.add_term(e, c.clone());
        }
        Ok(p)
    }

    /// Parse the canonical text format (terms may come in any order).
    pub fn parse(vars: &[String], text: &str) -> Result<Poly> {
        Parser { src: text.as_bytes(), pos: 0, vars }.expr()
    }

    /// `{"e1,e2,..": "coefficient"}` in canonical order.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .canonical_terms()
            .into_iter()
            .map(|(m, c)| {
                let key: Vec<String> = m.iter().map(u32::to_string).collect();
                (key.join(","), serde_json::Value::String(c.to_string()))
            })
            .collect();
        serde_json::Value::Object(map)
    }

    pub fn from_json(vars: &[String], value: &serde_json::Value) -> Result<Poly> {
        let obj = value.as_object().ok_or_else(|| Error::Parse("expected a JSON object".into()))?;
        let mut p = Poly::zero(vars);
        for (k, v) in obj {
            let m: Monomial = if k.is_empty() {
                Vec::new()
            } else {
                k.split(',').map(|x| x.parse::<u32>().map_err(|e| Error::Parse(e.to_string()))).collect::<Result<_>>()?
            };
            if m.len() != vars.len() {
                return Err(Error::Parse(format!("exponent vector {k} has the wrong length")));
            }
            let c = v
                .as_str()
                .and_then(|s| s.parse::<BigInt>().ok())
                .ok_or_else(|| Error::Parse(format!("bad coefficient for {k}")))?;
            p.add_term(m, c);
        }
        Ok(p)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.canonical_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars[i].clone()),
                    _ => factors.push(format!("{}^{e}", self.vars[i])),
                }
            }
            if factors.is_empty() || !a.is_one() {
                factors.insert(0, a.to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.vars, rhs.vars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.vars, rhs.vars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.vars, rhs.vars);
        let mut out = Poly::zero(&self.vars);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let m: Monomial = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.add_term(m, x * y);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {}", self.pos))
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err("expected a number"))
    }

    fn ident(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        self.vars.iter().position(|v| v == name).ok_or_else(|| self.err(&format!("unknown variable `{name}`")))
    }

    fn term(&mut self) -> Result<(Monomial, BigInt)> {
        let mut m = vec![0u32; self.vars.len()];
        let mut c = BigInt::one();
        loop {
            match self.peek() {
                Some(b) if b.is_ascii_digit() => c *= self.number()?,
                Some(b) if b.is_ascii_alphabetic() => {
                    let i = self.ident()?;
                    let mut e = 1u32;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        e = u32::try_from(self.number()?).map_err(|_| self.err("exponent too large"))?;
                    }
                    m[i] += e;
                }
                _ => return Err(self.err("expected a factor")),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((m, c));
            }
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut p = Poly::zero(self.vars);
        let mut sign = BigInt::one();
        match self.peek() {
            Some(b'-') => {
                sign = -sign;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let (m, c) = self.term()?;
            p.add_term(m, c * &sign);
            match self.peek() {
                None => return Ok(p),
                Some(b'+') => sign = BigInt::one(),
                Some(b'-') => sign = -BigInt::one(),
                Some(_) => return Err(self.err("expected + or -")),
            }
            self.pos += 1;
        }
    }
}

pub fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    #[test]
    fn arithmetic_and_rendering() {
        let v = names(&["x", "y"]);
        let x = Poly::var(&v, 0);
        let y = Poly::var(&v, 1);
        let p = &(&x * &x) - &(&y.scale(&BigInt::from(3)) * &x);
        assert_eq!(p.to_string(), "x^2 - 3*x*y");
        let q = &(&p + &Poly::constant(&v, -1)) + &y;
        assert_eq!(q.to_string(), "x^2 - 3*x*y + y - 1");
        assert_eq!(Poly::parse(&v, &q.to_string()).unwrap(), q);
        assert_eq!(Poly::parse(&v, "-1 + y + x*x - 3*y*x").unwrap(), q);
        assert_eq!(Poly::from_json(&v, &q.to_json()).unwrap(), q);
        assert_eq!(Poly::zero(&v).to_string(), "0");
        assert!((&p - &p).is_zero());
        assert_eq!(p.eval(&[rat(2, 1), rat(1, 3)]), rat(2, 1));
    }

    #[test]
    fn composition_and_normalization() {
        let v = names(&["s", "t"]);
        let w = names(&["a"]);
        let a = Poly::var(&w, 0);
        let p = Poly::parse(&v, "s*t - 2*t^2").unwrap();
        let q = p.compose(&[a.clone(), a.scale(&BigInt::from(2))]);
        assert_eq!(q.to_string(), "-6*a^2");
        assert_eq!(q.normalized().to_string(), "a^2");
        assert_eq!(Poly::parse(&v, "-4*s + 6").unwrap().normalized().to_string(), "2*s - 3");
        assert!(Poly::parse(&v, "2*z").is_err());
        assert!(Poly::parse(&v, "2 + ").is_err());
    }
}
