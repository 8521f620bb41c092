//! Coxeter data and realizations over an exact field.

use sbim_algebra::{Field, Poly, Q};

use crate::error::RealizationError;

/// Generator names and a Coxeter matrix; `None` encodes `m(s,t) = ∞`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterData {
    generators: Vec<String>,
    matrix: Vec<Vec<Option<u32>>>,
}

impl CoxeterData {
    pub fn new(generators: Vec<String>, matrix: Vec<Vec<Option<u32>>>) -> Result<Self, RealizationError> {
        let n = generators.len();
        if n == 0 {
            return Err(RealizationError::Schema("at least one generator is required".into()));
        }
        if n > 8 {
            return Err(RealizationError::Schema("at most 8 generators are supported".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.is_empty() || generators[..i].contains(g) {
                return Err(RealizationError::Schema(format!("invalid or repeated generator name {g:?}")));
            }
        }
        if matrix.len() != n || matrix.iter().any(|r| r.len() != n) {
            return Err(RealizationError::Schema("coxeter_matrix must be square of generator count".into()));
        }
        for i in 0..n {
            if matrix[i][i] != Some(1) {
                return Err(RealizationError::Schema("coxeter_matrix diagonal must be 1".into()));
            }
            for j in 0..n {
                if matrix[i][j] != matrix[j][i] {
                    return Err(RealizationError::Schema("coxeter_matrix must be symmetric".into()));
                }
                if i != j && matches!(matrix[i][j], Some(m) if m < 2) {
                    return Err(RealizationError::Schema("off-diagonal Coxeter entries must be ≥ 2".into()));
                }
            }
        }
        Ok(CoxeterData { generators, matrix })
    }

    /// Type `A_n` with generators named as given.
    pub fn type_a(names: &[&str]) -> Self {
        let n = names.len();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| Some(if i == j { 1 } else if i.abs_diff(j) == 1 { 3 } else { 2 })).collect())
            .collect();
        CoxeterData::new(names.iter().map(|s| s.to_string()).collect(), matrix).unwrap()
    }

    /// Dihedral type `I_2(m)` on generators `s, t`.
    pub fn dihedral(m: Option<u32>) -> Self {
        CoxeterData::new(vec!["s".into(), "t".into()], vec![vec![Some(1), m], vec![m, Some(1)]]).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn name(&self, i: usize) -> &str {
        &self.generators[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    pub fn m(&self, i: usize, j: usize) -> Option<u32> {
        self.matrix[i][j]
    }

    pub fn matrix(&self) -> &[Vec<Option<u32>>] {
        &self.matrix
    }
}

/// A realization `(V, {(α_s, α_s^∨)})`: roots as vectors, coroots as functionals on `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization<F: Field> {
    pub coxeter: CoxeterData,
    pub dim_v: usize,
    pub alpha: Vec<Vec<F>>,
    pub alpha_check: Vec<Vec<F>>,
    pub assume_balancedness: bool,
}

/// Dense square matrix product.
pub fn mat_mul<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    let n = a.len();
    let m = b.first().map(|r| r.len()).unwrap_or(0);
    let mut out = vec![vec![F::zero(); m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] = out[i][j].clone() + a[i][k].clone() * bk[j].clone();
            }
        }
    }
    out
}

pub fn identity<F: Field>(n: usize) -> Vec<Vec<F>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { F::one() } else { F::zero() }).collect()).collect()
}

impl<F: Field> Realization<F> {
    /// Build and validate a realization.
    pub fn new(
        coxeter: CoxeterData,
        dim_v: usize,
        alpha: Vec<Vec<F>>,
        alpha_check: Vec<Vec<F>>,
        assume_balancedness: bool,
    ) -> Result<Self, RealizationError> {
        let r = Realization { coxeter, dim_v, alpha, alpha_check, assume_balancedness };
        r.validate()?;
        Ok(r)
    }

    pub fn rank(&self) -> usize {
        self.coxeter.rank()
    }

    /// `⟨α_s^∨, v⟩`.
    pub fn pair(&self, s: usize, v: &[F]) -> F {
        self.alpha_check[s].iter().zip(v).fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    /// `s(v) = v − ⟨α_s^∨, v⟩ α_s`.
    pub fn reflect(&self, s: usize, v: &[F]) -> Vec<F> {
        let c = self.pair(s, v);
        v.iter().zip(&self.alpha[s]).map(|(x, a)| x.clone() - c.clone() * a.clone()).collect()
    }

    /// Matrix of `s` acting on coordinate column vectors.
    pub fn action(&self, s: usize) -> Vec<Vec<F>> {
        let n = self.dim_v;
        let mut m = identity::<F>(n);
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = x.clone() - self.alpha[s][i].clone() * self.alpha_check[s][j].clone();
            }
        }
        m
    }

    /// Matrix of the product `s_{w[0]} s_{w[1]} ⋯`.
    pub fn word_matrix(&self, word: &[u8]) -> Vec<Vec<F>> {
        let mut m = identity::<F>(self.dim_v);
        for &s in word {
            m = mat_mul(&m, &self.action(s as usize));
        }
        m
    }

    /// Apply a matrix to a vector.
    pub fn apply(m: &[Vec<F>], v: &[F]) -> Vec<F> {
        m.iter().map(|row| row.iter().zip(v).fold(F::zero(), |a, (x, y)| a + x.clone() * y.clone())).collect()
    }

    /// `α_s` as a linear polynomial in `R = Sym(V)`.
    pub fn root_poly(&self, s: usize) -> Poly<F> {
        Poly::linear(&self.alpha[s])
    }

    /// The linear polynomial of a vector of `V`.
    pub fn vector_poly(&self, v: &[F]) -> Poly<F> {
        Poly::linear(v)
    }

    pub fn validate(&self) -> Result<(), RealizationError> {
        let n = self.rank();
        if self.dim_v == 0 || self.dim_v > sbim_algebra::poly::MAX_VARS {
            return Err(RealizationError::Schema(format!(
                "dim_v must lie in 1..={}",
                sbim_algebra::poly::MAX_VARS
            )));
        }
        if self.alpha.len() != n || self.alpha_check.len() != n {
            return Err(RealizationError::Schema("alpha/alpha_check must list every generator".into()));
        }
        for s in 0..n {
            if self.alpha[s].len() != self.dim_v || self.alpha_check[s].len() != self.dim_v {
                return Err(RealizationError::Schema(format!(
                    "vectors for {} must have length dim_v",
                    self.coxeter.name(s)
                )));
            }
            if self.alpha[s].iter().all(|x| x.is_zero()) {
                return Err(RealizationError::ZeroRoot(self.coxeter.name(s).to_string()));
            }
            let p = self.pair(s, &self.alpha[s]);
            if p != F::from_i64(2) {
                return Err(RealizationError::PairingNotTwo { generator: self.coxeter.name(s).to_string(), value: p.to_string() });
            }
        }
        let id = identity::<F>(self.dim_v);
        for s in 0..n {
            for t in (s + 1)..n {
                if let Some(m) = self.coxeter.m(s, t) {
                    let st = mat_mul(&self.action(s), &self.action(t));
                    let mut p = identity::<F>(self.dim_v);
                    for _ in 0..m {
                        p = mat_mul(&p, &st);
                    }
                    if p != id {
                        return Err(RealizationError::BraidFailure {
                            s: self.coxeter.name(s).to_string(),
                            t: self.coxeter.name(t).to_string(),
                            m,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// Integer generalized Cartan matrix `a_{st} = ⟨α_s^∨, α_t⟩` of the faithful reference
/// representation: `a_{st} a_{ts} = 4cos²(π/m)` with the smaller entry on `a_{st}` for `s < t`.
pub fn geometric_cartan(coxeter: &CoxeterData) -> Result<Vec<Vec<i64>>, RealizationError> {
    let n = coxeter.rank();
    let mut a = vec![vec![0i64; n]; n];
    for s in 0..n {
        a[s][s] = 2;
        for t in (s + 1)..n {
            let (x, y) = match coxeter.m(s, t) {
                Some(2) => (0, 0),
                Some(3) => (-1, -1),
                Some(4) => (-1, -2),
                Some(6) => (-1, -3),
                None => (-2, -2),
                Some(m) => {
                    return Err(RealizationError::IrrationalCosine {
                        s: coxeter.name(s).to_string(),
                        t: coxeter.name(t).to_string(),
                        m,
                    })
                }
            };
            a[s][t] = x;
            a[t][s] = y;
        }
    }
    Ok(a)
}

/// The reference representation as a rational realization on the root basis.
pub fn geometric_representation(coxeter: &CoxeterData) -> Result<Realization<Q>, RealizationError> {
    let a = geometric_cartan(coxeter)?;
    let n = coxeter.rank();
    let alpha = (0..n).map(|s| (0..n).map(|j| Q::from_i64((s == j) as i64)).collect()).collect();
    let alpha_check = a.iter().map(|row| row.iter().map(|x| Q::from_i64(*x)).collect()).collect();
    Realization::new(coxeter.clone(), n, alpha, alpha_check, true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_pairings() {
        let a2 = geometric_cartan(&CoxeterData::dihedral(Some(3))).unwrap();
        assert_eq!(a2, vec![vec![2, -1], vec![-1, 2]]);
        let a1a1 = geometric_cartan(&CoxeterData::dihedral(Some(2))).unwrap();
        assert_eq!(a1a1[0][1], 0);
        assert!(matches!(
            geometric_cartan(&CoxeterData::dihedral(Some(5))),
            Err(RealizationError::IrrationalCosine { m: 5, .. })
        ));
        for m in [Some(2), Some(3), Some(4), Some(6), None] {
            geometric_representation(&CoxeterData::dihedral(m)).unwrap();
        }
    }
}
