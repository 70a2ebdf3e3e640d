use crate::error::{Error, Result};
use crate::exactmath::{FieldSpec, Scalar};
use crate::poly::{
    format_dual, format_poly, parse_dual, parse_poly, weighted_monomial_basis, DualPoly, Monomial,
    Poly,
};

/// Polynomial ring with named, positively weighted variables over a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    names: Vec<String>,
    weights: Vec<u32>,
    field: FieldSpec,
}

impl Ring {
    pub fn new(names: &[&str], field: FieldSpec) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let weights = vec![1; names.len()];
        Self::with_weights(names, weights, field)
    }

    pub fn with_weights(names: Vec<String>, weights: Vec<u32>, field: FieldSpec) -> Result<Self> {
        if names.len() != weights.len() {
            return Err(Error::Dimension(format!(
                "{} variables but {} weights",
                names.len(),
                weights.len()
            )));
        }
        if weights.contains(&0) {
            return Err(Error::Invalid("variable weights must be positive".into()));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::Invalid(format!("duplicate variable `{a}`")));
            }
            let ok = a.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && a.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::Invalid(format!("bad variable name `{a}`")));
            }
        }
        Ok(Ring {
            names,
            weights,
            field,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn has_unit_weights(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(1)
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Monomials of weighted degree `d`, largest first.
    pub fn basis(&self, d: usize) -> Vec<Monomial> {
        weighted_monomial_basis(&self.weights, d as u32)
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(self.nvars(), i, self.field)
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.nvars(), self.field)
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.nvars(), self.field)
    }

    pub fn constant(&self, c: Scalar) -> Poly {
        Poly::constant(self.nvars(), c)
    }

    pub fn monomial_poly(&self, m: &Monomial) -> Poly {
        Poly::term(m.clone(), self.field.one())
    }

    pub fn parse(&self, text: &str) -> Result<Poly> {
        parse_poly(text, &self.names, self.field)
    }

    pub fn parse_dual(&self, text: &str) -> Result<DualPoly> {
        parse_dual(text, &self.names, self.field)
    }

    pub fn format(&self, p: &Poly) -> String {
        format_poly(p, &self.names)
    }

    pub fn format_dual(&self, f: &DualPoly) -> String {
        format_dual(f, &self.names)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        self.format(&self.monomial_poly(m))
    }

    /// Weighted degree of a nonzero homogeneous polynomial.
    pub fn degree_of(&self, p: &Poly) -> Result<usize> {
        if p.is_zero() {
            return Err(Error::Invalid("zero polynomial has no degree".into()));
        }
        p.homogeneous_degree(&self.weights)
            .map(|d| d as usize)
            .ok_or_else(|| Error::NotHomogeneous(self.format(p)))
    }

    pub fn check_member(&self, p: &Poly) -> Result<()> {
        if p.nvars() != self.nvars() {
            return Err(Error::Dimension(format!(
                "polynomial in {} variables, ring has {}",
                p.nvars(),
                self.nvars()
            )));
        }
        if p.field() != self.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", p.field(), self.field)));
        }
        Ok(())
    }

    /// The same variables over another field.
    pub fn over(&self, field: FieldSpec) -> Ring {
        Ring {
            field,
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_names_and_weights() {
        assert!(Ring::new(&["x", "x"], FieldSpec::RATIONALS).is_err());
        assert!(Ring::new(&["1x"], FieldSpec::RATIONALS).is_err());
        assert!(Ring::with_weights(vec!["x".into()], vec![0], FieldSpec::RATIONALS).is_err());
        let r = Ring::with_weights(vec!["x".into(), "y".into()], vec![1, 3], FieldSpec::RATIONALS)
            .unwrap();
        assert_eq!(r.basis(3).len(), 2);
        assert_eq!(r.degree_of(&r.parse("x^3 + y").unwrap()).unwrap(), 3);
        assert!(r.degree_of(&r.parse("x^2 + y").unwrap()).is_err());
    }
}
