//! Laurent polynomials in `v` with integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// A finitely supported map exponent → nonzero integer coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Laurent {
    coeffs: BTreeMap<i32, i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c v^e`.
    pub fn monomial(e: i32, c: i64) -> Self {
        let mut l = Laurent::zero();
        l.add_term(e, c);
        l
    }

    /// `v^e`.
    pub fn v_pow(e: i32) -> Self {
        Self::monomial(e, 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut l = Laurent::zero();
        for (e, c) in terms {
            l.add_term(e, c);
        }
        l
    }

    pub fn add_term(&mut self, e: i32, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i32) -> i64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, *c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// `v ↦ v^{-1}`.
    pub fn bar(&self) -> Self {
        Laurent { coeffs: self.coeffs.iter().map(|(e, c)| (-e, *c)).collect() }
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Laurent { coeffs: self.coeffs.iter().map(|(e, c)| (e + k, *c)).collect() }
    }

    pub fn scale(&self, k: i64) -> Self {
        Laurent::from_terms(self.coeffs.iter().map(|(e, c)| (*e, c * k)))
    }

    /// Value at `v = 1`.
    pub fn eval_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| *c > 0)
    }

    /// Exact division; `None` when `d` does not divide `self` in `ℤ[v, v^{-1}]`.
    pub fn div_exact(&self, d: &Laurent) -> Option<Laurent> {
        let (dlo, dlc) = d.coeffs.iter().next().map(|(e, c)| (*e, *c))?;
        let mut rem = self.clone();
        let mut q = Laurent::zero();
        let dhi = d.max_exp().unwrap();
        while let Some((e, c)) = rem.coeffs.iter().next().map(|(e, c)| (*e, *c)) {
            if c % dlc != 0 {
                return None;
            }
            let t = c / dlc;
            let k = e - dlo;
            // Lowest terms are eliminated one by one; the remainder's span must shrink.
            if rem.max_exp().unwrap() < k + dhi {
                return None;
            }
            q.add_term(k, t);
            rem = &rem - &d.shift(k).scale(t);
        }
        Some(q)
    }

    /// Parse strings such as `"v^-1 - v"`, `"(2v^2 + 1)"`, `"-3"`, `"0"`.
    pub fn parse(s: &str) -> Option<Laurent> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let s = s.trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return None;
        }
        let bytes = s.as_bytes();
        let mut out = Laurent::zero();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1i64;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -1;
                }
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coef: i64 = if i > start { s[start..i].parse().ok()? } else { 1 };
            if i < bytes.len() && bytes[i] == b'*' {
                i += 1;
            }
            let mut exp = 0i32;
            if i < bytes.len() && bytes[i] == b'v' {
                i += 1;
                exp = 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let es = i;
                    if i < bytes.len() && bytes[i] == b'-' {
                        i += 1;
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    exp = s[es..i].parse().ok()?;
                }
            } else if i == start {
                return None;
            }
            if i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
                return None;
            }
            out.add_term(exp, sign * coef);
        }
        Some(out)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c < 0 { " - " } else { " + " })?;
            }
            let var = match e {
                0 => String::new(),
                1 => "v".to_string(),
                _ => format!("v^{e}"),
            };
            if var.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{var}")?;
            } else {
                write!(f, "{mag}{var}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&Laurent> for &Laurent {
    type Output = Laurent;
    fn add(self, o: &Laurent) -> Laurent {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(self, o: Laurent) -> Laurent {
        &self + &o
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, o: &Laurent) {
        for (e, c) in o.terms() {
            self.add_term(e, c);
        }
    }
}

impl Sub<&Laurent> for &Laurent {
    type Output = Laurent;
    fn sub(self, o: &Laurent) -> Laurent {
        let mut r = self.clone();
        for (e, c) in o.terms() {
            r.add_term(e, -c);
        }
        r
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, o: Laurent) -> Laurent {
        &self - &o
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        self.scale(-1)
    }
}

impl Mul<&Laurent> for &Laurent {
    type Output = Laurent;
    fn mul(self, o: &Laurent) -> Laurent {
        let mut r = Laurent::zero();
        for (a, x) in self.terms() {
            for (b, y) in o.terms() {
                r.add_term(a + b, x * y);
            }
        }
        r
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, o: Laurent) -> Laurent {
        &self * &o
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_uses_ascending_exponents() {
        let l = Laurent::from_terms([(1, -1), (-1, 1)]);
        assert_eq!(l.to_string(), "v^-1 - v");
        assert_eq!(Laurent::monomial(-1, 2).to_string(), "2v^-1");
        assert_eq!(Laurent::one().to_string(), "1");
        assert_eq!(Laurent::zero().to_string(), "0");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["v^-1 - v", "2v^-1", "1", "-v^-2 + 3 + v^5", "0"] {
            assert_eq!(Laurent::parse(s).unwrap().to_string(), s);
        }
        assert_eq!(Laurent::parse("(v^-1 - v)"), Laurent::parse("v^-1-v"));
        assert!(Laurent::parse("x").is_none());
    }

    #[test]
    fn exact_division() {
        let q = Laurent::from_terms([(-1, 1), (1, 1)]);
        let p = &q * &Laurent::from_terms([(0, 2), (3, -1)]);
        assert_eq!(p.div_exact(&q), Some(Laurent::from_terms([(0, 2), (3, -1)])));
        assert_eq!(Laurent::one().div_exact(&q), None);
    }
}
