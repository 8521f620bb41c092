//! Sparse multivariate polynomials over an exact field.
//!
//! Exponents are packed into a single `u128` (one byte per variable, first
//! variable in the most significant byte), so at most 16 variables with
//! exponents below 256 are supported. Monomials are ordered graded-lexicographically.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use crate::field::Field;

/// Maximum number of polynomial variables.
pub const MAX_VARS: usize = 16;

/// A monomial; ordered by total degree, then lexicographically with `x_0 > x_1 > ...`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Mono {
    deg: u16,
    bits: u128,
}

impl Mono {
    pub const ONE: Mono = Mono { deg: 0, bits: 0 };

    fn shift(i: usize) -> u32 {
        debug_assert!(i < MAX_VARS);
        8 * (MAX_VARS - 1 - i) as u32
    }

    pub fn var(i: usize) -> Mono {
        assert!(i < MAX_VARS, "at most {MAX_VARS} variables are supported");
        Mono { deg: 1, bits: 1u128 << Self::shift(i) }
    }

    pub fn from_exps(exps: &[u16]) -> Mono {
        assert!(exps.len() <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        let mut m = Mono::ONE;
        for (i, &e) in exps.iter().enumerate() {
            assert!(e < 256, "exponent overflow");
            m.bits |= (e as u128) << Self::shift(i);
            m.deg += e;
        }
        m
    }

    pub fn exp(&self, i: usize) -> u16 {
        ((self.bits >> Self::shift(i)) & 0xff) as u16
    }

    pub fn exps(&self, nvars: usize) -> Vec<u16> {
        (0..nvars).map(|i| self.exp(i)).collect()
    }

    pub fn degree(&self) -> usize {
        self.deg as usize
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let bits = self.bits + o.bits;
        debug_assert!(
            (0..MAX_VARS).all(|i| (bits >> Self::shift(i)) & 0xff >= (self.bits >> Self::shift(i)) & 0xff),
            "exponent overflow"
        );
        Mono { deg: self.deg + o.deg, bits }
    }

    pub fn divides(&self, o: &Mono) -> bool {
        self.deg <= o.deg && (0..MAX_VARS).all(|i| self.exp(i) <= o.exp(i))
    }

    /// `o / self`, assuming divisibility.
    pub fn div_into(&self, o: &Mono) -> Mono {
        Mono { deg: o.deg - self.deg, bits: o.bits - self.bits }
    }

    /// Render with the given variable names, e.g. `e1^2 e2`; `1` for the unit.
    pub fn render(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, name) in names.iter().enumerate() {
            match self.exp(i) {
                0 => {}
                1 => parts.push(name.clone()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

/// All monomials of a fixed degree in a fixed number of variables, in descending order.
#[derive(Debug)]
pub struct MonoBasis {
    pub monos: Vec<Mono>,
    index: HashMap<Mono, usize>,
}

impl MonoBasis {
    pub fn len(&self) -> usize {
        self.monos.len()
    }
    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }
    pub fn index_of(&self, m: &Mono) -> Option<usize> {
        self.index.get(m).copied()
    }
}

type BasisCache = Mutex<HashMap<(usize, usize), Arc<MonoBasis>>>;

/// Cached monomial basis of the degree-`d` piece (polynomial degree) in `n` variables.
pub fn monomials(n: usize, d: usize) -> Arc<MonoBasis> {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().unwrap().get(&(n, d)) {
        return b.clone();
    }
    let mut monos = Vec::new();
    let mut exps = vec![0u16; n];
    fn rec(i: usize, left: usize, exps: &mut Vec<u16>, out: &mut Vec<Mono>) {
        let n = exps.len();
        if i + 1 == n {
            exps[i] = left as u16;
            out.push(Mono::from_exps(exps));
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e as u16;
            rec(i + 1, left - e, exps, out);
        }
        exps[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            monos.push(Mono::ONE);
        }
    } else {
        rec(0, d, &mut exps, &mut monos);
    }
    let index = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let basis = Arc::new(MonoBasis { monos, index });
    cache.lock().unwrap().insert((n, d), basis.clone());
    basis
}

/// Number of monomials of degree `d` in `n` variables.
pub fn num_monomials(n: usize, d: usize) -> usize {
    if n == 0 {
        return (d == 0) as usize;
    }
    // binomial(d + n - 1, n - 1)
    let mut acc: usize = 1;
    for i in 0..(n - 1) {
        acc = acc * (d + n - 1 - i) / (i + 1);
    }
    acc
}

/// A polynomial in `nvars` variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F: Field> {
    nvars: usize,
    terms: BTreeMap<Mono, F>,
}

impl<F: Field> Poly<F> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, F::one())
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        Self::monomial(nvars, Mono::ONE, c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        Self::monomial(nvars, Mono::var(i), F::one())
    }

    pub fn monomial(nvars: usize, m: Mono, c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    /// The linear form `Σ coeffs[i] x_i`.
    pub fn linear(coeffs: &[F]) -> Self {
        let mut p = Self::zero(coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Mono::var(i), c.clone());
            }
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Mono, F)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Mono) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Mono, &F)> {
        self.terms.iter().next_back()
    }

    /// Constant coefficient.
    pub fn constant_term(&self) -> F {
        self.coeff(&Mono::ONE)
    }

    /// Polynomial degree of the leading term; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.leading().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys();
        match it.next() {
            None => true,
            Some(m) => it.all(|o| o.degree() == m.degree()),
        }
    }

    /// Component of polynomial degree `d`.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    pub fn add_term(&mut self, m: Mono, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (*m, a.clone() * c.clone())).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, x)| (a.mul(m), x.clone() * c.clone())).collect(),
        }
    }

    /// Add `c * m * other` in place.
    pub fn add_scaled_mono(&mut self, other: &Self, m: &Mono, c: &F) {
        for (a, x) in &other.terms {
            self.add_term(a.mul(m), x.clone() * c.clone());
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (lm, lc) = d.leading()?;
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let t = lm.div_into(m);
            let coef = c.clone() * lc_inv.clone();
            rem.add_scaled_mono(d, &t, &(-coef.clone()));
            q.add_term(t, coef);
        }
        Some(q)
    }

    /// Substitute `x_i ↦ images[i]`.
    pub fn substitute(&self, images: &[Self]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let out_vars = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut powers: Vec<Vec<Self>> = images.iter().map(|p| vec![Self::one(p.nvars), p.clone()]).collect();
        let mut out = Self::zero(out_vars);
        for (m, c) in &self.terms {
            let mut t = Self::constant(out_vars, c.clone());
            for (i, pw) in powers.iter_mut().enumerate() {
                let e = m.exp(i) as usize;
                if e == 0 {
                    continue;
                }
                while pw.len() <= e {
                    let next = &pw[pw.len() - 1] * &pw[1];
                    pw.push(next);
                }
                t = &t * &pw[e];
            }
            out = out + t;
        }
        out
    }

    /// Evaluate at a point.
    pub fn eval(&self, point: &[F]) -> F {
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Dense coordinates of the degree-`d` part in the basis `monomials(nvars, d)`.
    pub fn coords_in_degree(&self, d: usize) -> Vec<F> {
        let basis = monomials(self.nvars, d);
        let mut v = vec![F::zero(); basis.len()];
        for (m, c) in &self.terms {
            if m.degree() == d {
                v[basis.index_of(m).expect("monomial in basis")] = c.clone();
            }
        }
        v
    }

    /// Inverse of [`Poly::coords_in_degree`].
    pub fn from_coords(nvars: usize, d: usize, coords: &[F]) -> Self {
        let basis = monomials(nvars, d);
        Self::from_terms(nvars, basis.monos.iter().zip(coords).map(|(m, c)| (*m, c.clone())))
    }

    /// Render with variable names `e1, e2, ...`.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(r) => (true, r.to_string()),
                None => (false, s),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if *m == Mono::ONE {
                out.push_str(&mag);
            } else if mag == "1" {
                out.push_str(&m.render(names));
            } else {
                out.push_str(&format!("{mag} {}", m.render(names)));
            }
        }
        out
    }

    /// Parse the output of [`Poly::render`] (terms like `2 e1^2 e2`, `-1/2 e3`, `e1*e2`).
    pub fn parse(nvars: usize, names: &[String], s: &str) -> Option<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
        let s = s.replace("*", "");
        let mut p = Self::zero(nvars);
        let mut rest = s.as_str();
        if rest.is_empty() {
            return None;
        }
        while !rest.is_empty() {
            let (neg, body) = match rest.as_bytes()[0] {
                b'-' => (true, &rest[1..]),
                b'+' => (false, &rest[1..]),
                _ => (false, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            // A minus sign directly after '^' is part of an exponent; exponents are nonnegative here.
            let term = &body[..end];
            rest = &body[end..];
            let (m, c) = parse_term::<F>(nvars, names, term)?;
            p.add_term(m, if neg { -c } else { c });
        }
        Some(p)
    }
}

fn parse_term<F: Field>(nvars: usize, names: &[String], term: &str) -> Option<(Mono, F)> {
    let digits_end = term.find(|c: char| !(c.is_ascii_digit() || c == '/')).unwrap_or(term.len());
    let coef = if digits_end == 0 { F::one() } else { F::parse(&term[..digits_end])? };
    let mut rest = &term[digits_end..];
    let mut exps = vec![0u16; nvars];
    // Longest names first so that `e10` is not read as `e1` followed by `0`.
    let mut order: Vec<usize> = (0..names.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(names[i].len()));
    while !rest.is_empty() {
        let i = order.iter().copied().find(|&i| rest.starts_with(names[i].as_str()))?;
        rest = &rest[names[i].len()..];
        let mut e = 1u16;
        if let Some(r) = rest.strip_prefix('^') {
            let n = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
            e = r[..n].parse().ok()?;
            rest = &r[n..];
        }
        exps[i] += e;
    }
    Some((Mono::from_exps(&exps), coef))
}

/// Default variable names `e1, ..., en`.
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&default_names(self.nvars)))
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&default_names(self.nvars)))
    }
}

impl<F: Field> Add for Poly<F> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for (m, c) in o.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<F: Field> Add<&Poly<F>> for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, o: &Poly<F>) -> Poly<F> {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c.clone());
        }
        r
    }
}

impl<F: Field> Sub for Poly<F> {
    type Output = Self;
    fn sub(mut self, o: Self) -> Self {
        for (m, c) in o.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl<F: Field> Sub<&Poly<F>> for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, o: &Poly<F>) -> Poly<F> {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, -c.clone());
        }
        r
    }
}

impl<F: Field> Neg for Poly<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly { nvars: self.nvars, terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<F: Field> Mul<&Poly<F>> for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, o: &Poly<F>) -> Poly<F> {
        let mut acc: HashMap<Mono, F> = HashMap::with_capacity(self.terms.len() * o.terms.len());
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let m = a.mul(b);
                let t = x.clone() * y.clone();
                match acc.get_mut(&m) {
                    Some(c) => *c = c.clone() + t,
                    None => {
                        acc.insert(m, t);
                    }
                }
            }
        }
        Poly { nvars: self.nvars, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl<F: Field> Mul for Poly<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    fn names() -> Vec<String> {
        default_names(3)
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let x = Mono::var(0);
        let y = Mono::var(1);
        assert!(x > y);
        assert!(y.mul(&y) > x);
        assert_eq!(monomials(3, 2).monos[0], x.mul(&x));
        assert_eq!(monomials(3, 2).len(), 6);
        assert_eq!(num_monomials(3, 2), 6);
        assert_eq!(num_monomials(2, 5), 6);
    }

    #[test]
    fn exact_division_and_failure() {
        let x = Poly::<Q>::var(3, 0);
        let y = Poly::<Q>::var(3, 1);
        let f = &(&x - &y) * &(&x + &y);
        assert_eq!(f.div_exact(&(&x - &y)), Some(&x + &y));
        assert_eq!(x.div_exact(&y), None);
    }

    #[test]
    fn render_and_parse_round_trip() {
        let p = Poly::<Q>::parse(3, &names(), "2 e1^2 e2 - 1/2 e3 + 3").unwrap();
        let s = p.render(&names());
        assert_eq!(s, "2 e1^2 e2 - 1/2 e3 + 3");
        assert_eq!(Poly::<Q>::parse(3, &names(), &s), Some(p));
    }

    #[test]
    fn substitution_swaps_variables() {
        let x = Poly::<Q>::var(2, 0);
        let y = Poly::<Q>::var(2, 1);
        let f = &(&x * &x) * &y;
        let g = f.substitute(&[y.clone(), x.clone()]);
        assert_eq!(g, &(&y * &y) * &x);
    }
}
