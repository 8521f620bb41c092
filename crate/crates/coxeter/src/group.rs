//! Group arithmetic through the faithful reference representation.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use sbim_realization::{geometric_cartan, CoxeterData, RealizationError};

use crate::error::CoxeterError;

/// Hard cap on the number of elements materialized by whole-group enumeration.
pub const ENUMERATION_CAP: usize = 50_000;
/// Groups with elements longer than this are treated as infinite.
pub const FINITENESS_LENGTH_CAP: usize = 64;

fn level_len(level: &[Element]) -> usize {
    level.first().map(|e| e.length()).unwrap_or(0)
}

/// A group element stored by its ShortLex-minimal reduced word (generator indices).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element(Vec<u8>);

impl Element {
    pub fn identity() -> Self {
        Element(Vec::new())
    }

    /// A simple reflection; its one-letter word is reduced in every group.
    pub fn generator(s: usize) -> Self {
        Element(vec![s as u8])
    }

    pub fn word(&self) -> &[u8] {
        &self.0
    }

    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A set of generators, as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Debug)]
pub struct Subset(pub u16);

impl Subset {
    pub fn empty() -> Self {
        Subset(0)
    }
    pub fn from_indices(idx: impl IntoIterator<Item = usize>) -> Self {
        Subset(idx.into_iter().fold(0u16, |acc, i| acc | (1 << i)))
    }
    pub fn full(rank: usize) -> Self {
        Subset(((1u32 << rank) - 1) as u16)
    }
    pub fn contains(&self, s: usize) -> bool {
        self.0 & (1 << s) != 0
    }
    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..16).filter(move |s| self.contains(*s))
    }
    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }
    pub fn union(&self, o: &Subset) -> Subset {
        Subset(self.0 | o.0)
    }
    pub fn intersection(&self, o: &Subset) -> Subset {
        Subset(self.0 & o.0)
    }
    pub fn is_subset_of(&self, o: &Subset) -> bool {
        self.0 & !o.0 == 0
    }
    /// All subsets of `{0, …, rank-1}`, in increasing bitmask order.
    pub fn all(rank: usize) -> Vec<Subset> {
        (0..(1u32 << rank)).map(|b| Subset(b as u16)).collect()
    }
}

type Mat = Vec<Vec<i64>>;

/// A Coxeter group with memoized normal forms.
pub struct CoxeterGroup {
    data: CoxeterData,
    sigma: Vec<Mat>,
    length_bound: usize,
    normal_cache: Mutex<HashMap<Vec<u8>, Element>>,
    bruhat_cache: Mutex<HashMap<(Element, Element), bool>>,
    all_elements: OnceLock<Option<Vec<Element>>>,
    pub(crate) parabolic_cache: Mutex<HashMap<Subset, std::sync::Arc<crate::cosets::Parabolic>>>,
}

impl fmt::Debug for CoxeterGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterGroup").field("data", &self.data).finish()
    }
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

impl CoxeterGroup {
    /// Default length cap used for infinite groups.
    pub const DEFAULT_LENGTH_BOUND: usize = 12;

    pub fn new(data: CoxeterData) -> Result<Self, RealizationError> {
        Self::with_length_bound(data, Self::DEFAULT_LENGTH_BOUND)
    }

    pub fn with_length_bound(data: CoxeterData, length_bound: usize) -> Result<Self, RealizationError> {
        let a = geometric_cartan(&data)?;
        let n = data.rank();
        // σ_s(α_t) = α_t − a_{st} α_s, stored column-wise on the root basis.
        let sigma = (0..n)
            .map(|s| {
                let mut m = identity(n);
                for t in 0..n {
                    m[s][t] -= a[s][t];
                }
                m
            })
            .collect();
        Ok(CoxeterGroup {
            data,
            sigma,
            length_bound,
            normal_cache: Mutex::new(HashMap::new()),
            bruhat_cache: Mutex::new(HashMap::new()),
            all_elements: OnceLock::new(),
            parabolic_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn data(&self) -> &CoxeterData {
        &self.data
    }

    pub fn rank(&self) -> usize {
        self.data.rank()
    }

    pub fn length_bound(&self) -> usize {
        self.length_bound
    }

    /// Matrix of the product of the word on the root basis.
    fn word_matrix(&self, word: impl Iterator<Item = u8>) -> Mat {
        let mut m = identity(self.rank());
        for s in word {
            m = mat_mul(&m, &self.sigma[s as usize]);
        }
        m
    }

    fn column_negative(m: &Mat, s: usize) -> bool {
        m.iter().any(|row| row[s] < 0)
    }

    /// ShortLex normal form of an arbitrary word.
    pub fn normalize(&self, word: &[u8]) -> Element {
        if let Some(e) = self.normal_cache.lock().unwrap().get(word) {
            return e.clone();
        }
        let n = self.rank();
        // Matrix of w^{-1}; the least left descent s satisfies w^{-1}(α_s) < 0.
        let mut m = self.word_matrix(word.iter().rev().copied());
        let mut out = Vec::with_capacity(word.len());
        loop {
            let Some(s) = (0..n).find(|&s| Self::column_negative(&m, s)) else { break };
            out.push(s as u8);
            m = mat_mul(&m, &self.sigma[s]);
        }
        let e = Element(out);
        self.normal_cache.lock().unwrap().insert(word.to_vec(), e.clone());
        e
    }

    fn check_bound(&self, e: Element) -> Result<Element, CoxeterError> {
        if !self.is_finite() && e.length() > self.length_bound {
            return Err(CoxeterError::LengthBoundExceeded { bound: self.length_bound, length: e.length() });
        }
        Ok(e)
    }

    pub fn gen(&self, s: usize) -> Element {
        Element(vec![s as u8])
    }

    pub fn from_word(&self, word: &[u8]) -> Result<Element, CoxeterError> {
        if let Some(&s) = word.iter().find(|&&s| s as usize >= self.rank()) {
            return Err(CoxeterError::UnknownGenerator(format!("index {s}")));
        }
        self.check_bound(self.normalize(word))
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Result<Element, CoxeterError> {
        let w: Vec<u8> = a.0.iter().chain(&b.0).copied().collect();
        self.check_bound(self.normalize(&w))
    }

    pub fn inv(&self, a: &Element) -> Element {
        let w: Vec<u8> = a.0.iter().rev().copied().collect();
        self.normalize(&w)
    }

    /// `s·w`.
    pub fn lmul_gen(&self, s: usize, w: &Element) -> Result<Element, CoxeterError> {
        let mut v = Vec::with_capacity(w.length() + 1);
        v.push(s as u8);
        v.extend_from_slice(&w.0);
        self.check_bound(self.normalize(&v))
    }

    /// `w·s`.
    pub fn rmul_gen(&self, w: &Element, s: usize) -> Result<Element, CoxeterError> {
        let mut v = w.0.clone();
        v.push(s as u8);
        self.check_bound(self.normalize(&v))
    }

    pub fn is_left_descent(&self, w: &Element, s: usize) -> bool {
        self.normalize(&[&[s as u8][..], &w.0].concat()).length() < w.length()
    }

    pub fn is_right_descent(&self, w: &Element, s: usize) -> bool {
        self.normalize(&[&w.0[..], &[s as u8][..]].concat()).length() < w.length()
    }

    /// Bruhat order by recursion on a left descent of `b`.
    pub fn bruhat_leq(&self, a: &Element, b: &Element) -> bool {
        if a.is_identity() {
            return true;
        }
        if a.length() >= b.length() {
            return a == b;
        }
        let key = (a.clone(), b.clone());
        if let Some(r) = self.bruhat_cache.lock().unwrap().get(&key) {
            return *r;
        }
        let s = b.0[0] as usize;
        let sb = self.normalize(&b.0[1..]);
        let r = if self.is_left_descent(a, s) {
            let sa = self.normalize(&[&[s as u8][..], &a.0].concat());
            self.bruhat_leq(&sa, &sb)
        } else {
            self.bruhat_leq(a, &sb)
        };
        self.bruhat_cache.lock().unwrap().insert(key, r);
        r
    }

    /// Elements of length ≤ `bound` in ShortLex order.
    pub fn elements_up_to(&self, bound: usize) -> Vec<Element> {
        let mut out = vec![Element::identity()];
        let mut level = vec![Element::identity()];
        for _ in 0..bound {
            let mut next = HashSet::new();
            for w in &level {
                for s in 0..self.rank() {
                    let ws = self.normalize(&[&w.0[..], &[s as u8][..]].concat());
                    if ws.length() > w.length() {
                        next.insert(ws);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            let mut next: Vec<Element> = next.into_iter().collect();
            next.sort();
            out.extend(next.iter().cloned());
            level = next;
            if out.len() > ENUMERATION_CAP {
                break;
            }
        }
        out
    }

    /// All elements of a finite group (ShortLex order); `None` for infinite or huge groups.
    pub fn all_elements(&self) -> Option<&[Element]> {
        self.all_elements
            .get_or_init(|| {
                let mut out = vec![Element::identity()];
                let mut level = vec![Element::identity()];
                loop {
                    let mut next = HashSet::new();
                    for w in &level {
                        for s in 0..self.rank() {
                            let ws = self.normalize(&[&w.0[..], &[s as u8][..]].concat());
                            if ws.length() > w.length() {
                                next.insert(ws);
                            }
                        }
                    }
                    if next.is_empty() {
                        return Some(out);
                    }
                    let mut next: Vec<Element> = next.into_iter().collect();
                    next.sort();
                    out.extend(next.iter().cloned());
                    if out.len() > ENUMERATION_CAP || level_len(&next) > FINITENESS_LENGTH_CAP {
                        return None;
                    }
                    level = next;
                }
            })
            .as_deref()
    }

    pub fn is_finite(&self) -> bool {
        self.all_elements().is_some()
    }

    /// Elements within the configured bound (all elements for finite groups).
    pub fn bounded_elements(&self) -> Vec<Element> {
        match self.all_elements() {
            Some(all) => all.to_vec(),
            None => self.elements_up_to(self.length_bound),
        }
    }

    /// The longest element of a finite group.
    pub fn longest(&self) -> Option<Element> {
        self.all_elements().and_then(|a| a.last().cloned())
    }

    /// Element name, e.g. `sts`; `1` for the identity.
    pub fn name(&self, w: &Element) -> String {
        if w.is_identity() {
            return "1".to_string();
        }
        w.0.iter().map(|&s| self.data.name(s as usize)).collect()
    }

    /// Tokenize a word greedily against the generator names (longest match first).
    /// `1`, `e` and the empty string denote the identity.
    pub fn parse_word(&self, s: &str) -> Result<Vec<u8>, CoxeterError> {
        let s = s.trim();
        if s.is_empty() || s == "1" || (s == "e" && self.data.index_of("e").is_none()) {
            return Ok(Vec::new());
        }
        let mut order: Vec<usize> = (0..self.rank()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.data.name(i).len()));
        let mut rest = s;
        let mut out = Vec::new();
        while !rest.is_empty() {
            rest = rest.trim_start_matches([' ', ',', '*', '.']);
            if rest.is_empty() {
                break;
            }
            let Some(i) = order.iter().copied().find(|&i| rest.starts_with(self.data.name(i))) else {
                return Err(CoxeterError::UnknownGenerator(rest.to_string()));
            };
            out.push(i as u8);
            rest = &rest[self.data.name(i).len()..];
        }
        Ok(out)
    }

    /// Parse a word into its element.
    pub fn parse_element(&self, s: &str) -> Result<Element, CoxeterError> {
        let w = self.parse_word(s)?;
        self.from_word(&w)
    }

    /// Parse a subset written as names (`"st"`, `"s,t"`, `""` or `"-"` for ∅).
    pub fn parse_subset(&self, s: &str) -> Result<Subset, CoxeterError> {
        let s = s.trim();
        if s == "-" || s == "∅" || s.eq_ignore_ascii_case("empty") {
            return Ok(Subset::empty());
        }
        Ok(Subset::from_indices(self.parse_word(s)?.into_iter().map(|i| i as usize)))
    }

    pub fn subset_names(&self, s: &Subset) -> Vec<String> {
        s.iter().map(|i| self.data.name(i).to_string()).collect()
    }
}
