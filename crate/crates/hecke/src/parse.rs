//! Text and JSON forms of Hecke algebra elements.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := [coeff ['*']] [factor ('*' factor)*]
//! coeff  := '(' laurent ')' | integer ['v' ['^' integer]] | 'v' ['^' integer]
//! factor := 'H' word | 'uH' word | 'uH{' generators '}' | '(' expr ')'
//! ```
//!
//! `H<word>` is the standard basis element, `uH<word>` the Kazhdan–Lusztig element and
//! `uH{st}` the longest-element KL element `H̲_{w_I}` of the parabolic subgroup `W_I`.

use serde_json::{Map, Value};

use sbim_algebra::Laurent;
use sbim_coxeter::{CoxeterGroup, Element, Subset};

use crate::elt::{Hecke, HeckeElt};
use crate::error::HeckeError;
use crate::singular::SingularHeckeElt;

struct Parser<'a, 'g> {
    h: &'a Hecke<'g>,
    s: Vec<char>,
    pos: usize,
}

fn perr(msg: impl Into<String>) -> HeckeError {
    HeckeError::Parse(msg.into())
}

impl Parser<'_, '_> {
    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).copied()
    }

    fn peek_str(&self, p: &str) -> bool {
        p.chars().enumerate().all(|(i, c)| self.s.get(self.pos + i) == Some(&c))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<HeckeElt, HeckeError> {
        let mut acc = HeckeElt::zero();
        let mut first = true;
        loop {
            let neg = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                return Ok(acc);
            };
            first = false;
            let t = self.term()?;
            acc = if neg { acc.sub(&t) } else { acc.add(&t) };
            if self.peek().is_none() || self.peek() == Some(')') {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<HeckeElt, HeckeError> {
        let coeff = self.coeff()?;
        if coeff.is_some() {
            self.eat('*');
        }
        let mut acc: Option<HeckeElt> = None;
        if self.peek_str("H") || self.peek_str("uH") || self.peek() == Some('(') {
            let mut a = self.factor()?;
            while self.eat('*') {
                a = self.h.mul(&a, &self.factor()?)?;
            }
            acc = Some(a);
        }
        match (coeff, acc) {
            (None, None) => Err(perr(format!("expected a term at position {}", self.pos))),
            (Some(c), None) => Ok(HeckeElt::term(Element::identity(), c)),
            (None, Some(a)) => Ok(a),
            (Some(c), Some(a)) => Ok(a.scale(&c)),
        }
    }

    /// A Laurent coefficient, if one starts here. Parenthesised groups count as
    /// coefficients only if their content parses as a Laurent polynomial.
    fn coeff(&mut self) -> Result<Option<Laurent>, HeckeError> {
        if self.peek() == Some('(') {
            let mut depth = 0;
            let mut end = self.pos;
            while end < self.s.len() {
                match self.s[end] {
                    '(' => depth += 1,
                    ')' => {
                        depth -= 1;
                        if depth == 0 {
                            break;
                        }
                    }
                    _ => {}
                }
                end += 1;
            }
            if end >= self.s.len() {
                return Err(perr("unbalanced parenthesis"));
            }
            let inner: String = self.s[self.pos + 1..end].iter().collect();
            if let Some(l) = Laurent::parse(&inner) {
                self.pos = end + 1;
                return Ok(Some(l));
            }
            return Ok(None);
        }
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let int: Option<i64> = if self.pos > start {
            let t: String = self.s[start..self.pos].iter().collect();
            Some(t.parse().map_err(|_| perr(format!("bad integer {t}")))?)
        } else {
            None
        };
        let mut exp = None;
        if self.eat('v') {
            exp = Some(1);
            if self.eat('^') {
                let es = self.pos;
                self.eat('-');
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let t: String = self.s[es..self.pos].iter().collect();
                exp = Some(t.parse().map_err(|_| perr(format!("bad exponent {t}")))?);
            }
        }
        Ok(match (int, exp) {
            (None, None) => None,
            (c, e) => Some(Laurent::monomial(e.unwrap_or(0), c.unwrap_or(1))),
        })
    }

    fn word(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| !"+-*(){}".contains(c)) {
            self.pos += 1;
        }
        self.s[start..self.pos].iter().collect()
    }

    fn factor(&mut self) -> Result<HeckeElt, HeckeError> {
        let g = self.h.group;
        if self.eat('(') {
            let e = self.expr()?;
            if !self.eat(')') {
                return Err(perr("expected ')'"));
            }
            return Ok(e);
        }
        if self.peek_str("uH") {
            self.pos += 2;
            if self.eat('{') {
                let w = self.word();
                if !self.eat('}') {
                    return Err(perr("expected '}'"));
                }
                return self.h.longest_kl(g.parse_subset(&w)?);
            }
            let w = self.word();
            return self.h.kl_element(&g.parse_element(&w)?);
        }
        if self.eat('H') {
            let w = self.word();
            return Ok(HeckeElt::basis(g.parse_element(&w)?));
        }
        Err(perr(format!("expected H, uH or '(' at position {}", self.pos)))
    }
}

impl Hecke<'_> {
    /// Parse an element from the text grammar described in the module documentation.
    pub fn parse(&self, text: &str) -> Result<HeckeElt, HeckeError> {
        let mut p = Parser { h: self, s: text.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 };
        if p.s.is_empty() {
            return Err(perr("empty expression"));
        }
        let e = p.expr()?;
        if p.pos != p.s.len() {
            return Err(perr(format!("unexpected input at position {}", p.pos)));
        }
        Ok(e)
    }

    /// Human-readable form, e.g. `(v^-1 - v) Hs + H1`, largest elements first.
    pub fn render(&self, h: &HeckeElt) -> String {
        if h.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = h
            .terms()
            .rev()
            .map(|(w, c)| {
                let name = self.group.name(w);
                if *c == Laurent::one() {
                    format!("H{name}")
                } else {
                    format!("({c}) H{name}")
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// JSON `{"H<word>": "<laurent>"}`.
    pub fn to_json(&self, h: &HeckeElt) -> Value {
        let mut m = Map::new();
        for (w, c) in h.terms() {
            m.insert(format!("H{}", self.group.name(w)), Value::String(c.to_string()));
        }
        Value::Object(m)
    }

    /// JSON `{"s1": [...], "s2": [...], "c:<x₋ word>": "<laurent>"}`.
    pub fn singular_to_json(&self, h: &SingularHeckeElt) -> Value {
        let mut m = Map::new();
        m.insert("s1".into(), subset_json(self.group, &h.s1));
        m.insert("s2".into(), subset_json(self.group, &h.s2));
        for (x, c) in h.terms() {
            m.insert(format!("c:{}", self.group.name(x)), Value::String(c.to_string()));
        }
        Value::Object(m)
    }

    /// Inverse of [`Hecke::to_json`].
    pub fn from_json(&self, v: &Value) -> Result<HeckeElt, HeckeError> {
        let obj = v.as_object().ok_or_else(|| perr("expected a JSON object"))?;
        let mut h = HeckeElt::zero();
        for (k, c) in obj {
            let w = k.strip_prefix('H').ok_or_else(|| perr(format!("bad key {k}")))?;
            let c = c.as_str().and_then(Laurent::parse).ok_or_else(|| perr(format!("bad coefficient for {k}")))?;
            h.add_term(self.group.parse_element(w)?, &c);
        }
        Ok(h)
    }
}

fn subset_json(g: &CoxeterGroup, s: &Subset) -> Value {
    Value::Array(g.subset_names(s).into_iter().map(Value::String).collect())
}
