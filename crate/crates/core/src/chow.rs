//! Cycle classes on products of projective spaces.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

/// A class in `A_*(P^{n_1} x ... x P^{n_k})`, as integer coefficients on
/// the basis `[P^{a_1} x ... x P^{a_k}]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChowClass {
    dims: Vec<usize>,
    coeffs: BTreeMap<Vec<usize>, i64>,
}

impl ChowClass {
    pub fn zero(dims: &[usize]) -> Self {
        ChowClass {
            dims: dims.to_vec(),
            coeffs: BTreeMap::new(),
        }
    }

    /// `[P^{a_1} x ... x P^{a_k}]`.
    pub fn basis(dims: &[usize], key: &[usize]) -> Self {
        let mut c = Self::zero(dims);
        c.add_term(key, 1);
        c
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn coefficient(&self, key: &[usize]) -> i64 {
        self.coeffs.get(key).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], i64)> {
        self.coeffs.iter().map(|(k, &c)| (k.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, key: &[usize], c: i64) {
        assert_eq!(key.len(), self.dims.len(), "class key has wrong arity");
        assert!(key.iter().zip(&self.dims).all(|(a, n)| a <= n), "class key exceeds factor dimension");
        if c == 0 {
            return;
        }
        let e = self.coeffs.entry(key.to_vec()).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(key);
        }
    }

    pub fn add(&self, other: &ChowClass) -> ChowClass {
        let mut out = self.clone();
        for (k, c) in other.terms() {
            out.add_term(k, c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> ChowClass {
        let mut out = Self::zero(&self.dims);
        for (key, c) in self.terms() {
            out.add_term(key, c * k);
        }
        out
    }

    pub fn sub(&self, other: &ChowClass) -> ChowClass {
        self.add(&other.scale(-1))
    }

    /// Cap with the divisor `sum_i l_i H_i`.
    pub fn cap_divisor(&self, l: &[i64]) -> ChowClass {
        let mut out = Self::zero(&self.dims);
        for (key, c) in self.terms() {
            for (i, &li) in l.iter().enumerate() {
                if li != 0 && key[i] > 0 {
                    let mut k = key.to_vec();
                    k[i] -= 1;
                    out.add_term(&k, c * li);
                }
            }
        }
        out
    }

    /// Cap with `(1 + L)^{-k}`, `L = sum_i l_i H_i`.
    pub fn cap_inverse_power(&self, l: &[i64], k: u32) -> ChowClass {
        // (1+L)^{-k} = sum_m (-1)^m C(k+m-1, m) L^m
        if k == 0 {
            return self.clone();
        }
        let mut out = Self::zero(&self.dims);
        let mut power = self.clone();
        let mut m = 0u64;
        while !power.is_zero() {
            let sign = if m.is_multiple_of(2) { 1 } else { -1 };
            out = out.add(&power.scale(sign * binomial(k as u64 + m - 1, m) as i64));
            power = power.cap_divisor(l);
            m += 1;
        }
        out
    }

    /// Total dimension `sum a_i` of each basis element with nonzero
    /// coefficient.
    pub fn dimensions(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().map(|k| k.iter().sum())
    }

    /// Coefficients by dimension for a class on a single projective space.
    pub fn to_vector(&self) -> ChowVector {
        assert_eq!(self.dims.len(), 1, "to_vector needs a single factor");
        let mut v = vec![0; self.dims[0] + 1];
        for (k, c) in self.terms() {
            v[k[0]] += c;
        }
        ChowVector::new(v)
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (key, c) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " {} ", if *c < 0 { '-' } else { '+' })?;
            } else if *c < 0 {
                write!(f, "-")?;
            }
            first = false;
            let parts: Vec<String> = key.iter().map(|a| format!("P^{a}")).collect();
            write!(f, "{}[{}]", c.abs(), parts.join(" x "))?;
        }
        Ok(())
    }
}

/// A class in `A_*(P^n)`: `coeffs[j]` is the coefficient of `[P^j]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ChowVector {
    pub coeffs: Vec<i64>,
}

impl ChowVector {
    pub fn new(coeffs: Vec<i64>) -> Self {
        ChowVector { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        ChowVector { coeffs: vec![0; n + 1] }
    }

    pub fn ambient_dim(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn get(&self, j: usize) -> i64 {
        self.coeffs.get(j).copied().unwrap_or(0)
    }

    /// Degree of the zero-dimensional part.
    pub fn degree_zero(&self) -> i64 {
        self.get(0)
    }

    pub fn add(&self, other: &ChowVector) -> ChowVector {
        let n = self.coeffs.len().max(other.coeffs.len());
        ChowVector::new((0..n).map(|j| self.get(j) + other.get(j)).collect())
    }

    pub fn scale(&self, k: i64) -> ChowVector {
        ChowVector::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// `c(TP^n) ∩ [P^n] = sum_m C(n+1, m) [P^{n-m}]`.
    pub fn chern_projective_space(n: usize) -> ChowVector {
        let mut v = vec![0; n + 1];
        for m in 0..=n {
            v[n - m] = binomial(n as u64 + 1, m as u64) as i64;
        }
        ChowVector::new(v)
    }
}

impl fmt::Display for ChowVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            first = false;
            write!(f, "{}[P^{j}]", c.abs())?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}
