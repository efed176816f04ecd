//! Polynomials over a field and the textual grammar `c*x1^a*x2^b + ...`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// Exponent vector of a monomial.
pub type Monomial = Vec<u32>;

pub fn monomial_degree(m: &[u32]) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

/// All monomials of degree `d` in `n` variables, lexicographically
/// descending (`x1^d` first).
pub fn monomials(n: usize, d: usize) -> Vec<Monomial> {
    fn go(n: usize, i: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i + 1 == n {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            go(n, i + 1, left - e, cur, out);
        }
    }
    if n == 0 {
        return if d == 0 { alloc::vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    go(n, 0, d as u32, &mut alloc::vec![0; n], &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    num_vars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Self {
        Polynomial { num_vars, terms: BTreeMap::new() }
    }

    pub fn from_terms(field: FieldSpec, num_vars: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Polynomial::zero(num_vars);
        for (m, c) in terms {
            assert_eq!(m.len(), num_vars);
            p.add_term(field, m, c);
        }
        p
    }

    fn add_term(&mut self, field: FieldSpec, m: Monomial, c: Scalar) {
        let sum = match self.terms.get(&m) {
            Some(old) => field.add(old, &c),
            None => c,
        };
        if field.is_zero(&sum) {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    /// The common degree of all terms, or `None` for a non-homogeneous or zero polynomial.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|m| monomial_degree(m));
        let d = degrees.next()?;
        degrees.all(|e| e == d).then_some(d)
    }

    /// Parses `c*x1^a*x2^b` terms joined by `+`/`-`. `vars` names the
    /// variables; `x1..xn` are always accepted as well.
    pub fn parse(field: FieldSpec, vars: &[String], s: &str) -> Result<Polynomial> {
        let err = |msg: &str| Error::Parse { what: "polynomial", input: alloc::format!("{s} ({msg})") };
        let n = vars.len();
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().replace('\u{2212}', "-");
        if text.is_empty() {
            return Err(err("empty"));
        }
        let mut poly = Polynomial::zero(n);
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut negative = false;
        for (k, ch) in text.char_indices() {
            if (ch == '+' || ch == '-') && !(k > 0 && text[..k].ends_with('^')) {
                if !cur.is_empty() {
                    pieces.push((negative, core::mem::take(&mut cur)));
                } else if k > 0 {
                    return Err(err("dangling sign"));
                }
                negative = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(err("dangling sign"));
        }
        pieces.push((negative, cur));
        for (neg, term) in pieces {
            let mut coeff = field.one();
            let mut mono = alloc::vec![0u32; n];
            for factor in term.split('*') {
                if factor.is_empty() {
                    return Err(err("empty factor"));
                }
                if factor.as_bytes()[0].is_ascii_digit() {
                    coeff = field.mul(&coeff, &field.parse_scalar(factor)?);
                    continue;
                }
                let (name, exp) = match factor.split_once('^') {
                    Some((v, e)) => (v, e.parse::<u32>().map_err(|_| err("bad exponent"))?),
                    None => (factor, 1),
                };
                let idx = vars
                    .iter()
                    .position(|v| v == name)
                    .or_else(|| {
                        name.strip_prefix('x')
                            .and_then(|i| i.parse::<usize>().ok())
                            .filter(|&i| i >= 1 && i <= n)
                            .map(|i| i - 1)
                    })
                    .ok_or_else(|| err(&alloc::format!("unknown variable {name}")))?;
                mono[idx] += exp;
            }
            if neg {
                coeff = field.neg(&coeff);
            }
            poly.add_term(field, mono, coeff);
        }
        Ok(poly)
    }

    pub fn to_string_with(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let text = alloc::format!("{c}");
            let (neg, abs) = match text.strip_prefix('-') {
                Some(a) => (true, a.to_string()),
                None => (false, text),
            };
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            let factors: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| if *e == 1 { vars[i].clone() } else { alloc::format!("{}^{e}", vars[i]) })
                .collect();
            if factors.is_empty() {
                out.push_str(&abs);
            } else {
                if abs != "1" {
                    out.push_str(&abs);
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn xy() -> Vec<String> {
        vec!["x".to_string(), "y".to_string()]
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(monomials(3, 1).len(), 3);
        assert_eq!(monomials(3, 2).len(), 6);
        assert_eq!(monomials(0, 0), vec![Vec::<u32>::new()]);
        assert!(monomials(0, 1).is_empty());
    }

    #[test]
    fn parse_terms() {
        let p = Polynomial::parse(Q, &xy(), "3/2*x^2 - x*y + y^2").unwrap();
        assert_eq!(p.homogeneous_degree(), Some(2));
        assert_eq!(p.terms().count(), 3);
        assert_eq!(p.to_string_with(&xy()), "3/2*x^2 - x*y + y^2");

        let q = Polynomial::parse(Q, &xy(), "x1*x2").unwrap();
        assert_eq!(q, Polynomial::parse(Q, &xy(), "x*y").unwrap());

        let r = Polynomial::parse(Q, &xy(), "\u{2212}x + x").unwrap();
        assert!(r.is_zero());
        assert_eq!(Polynomial::parse(Q, &xy(), "x + y^2").unwrap().homogeneous_degree(), None);
    }

    #[test]
    fn non_ascii_variable_names() {
        let vars = vec!["α".to_string(), "β".to_string()];
        let p = Polynomial::parse(Q, &vars, "α^2 - α*β").unwrap();
        assert_eq!(p.to_string_with(&vars), "α^2 - α*β");
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "x +", "x ** y", "z", "x^a", "x3"] {
            assert!(Polynomial::parse(Q, &xy(), bad).is_err(), "{bad}");
        }
    }
}
