//! Divisors on the punctured line `T ∈ K^×`.
//!
//! A [`Place`] of degree `f` stands for the zero set of `T^f - λ`; degree-one
//! places are ordinary points `T = λ`. Higher-degree places carry the
//! divisors of `L`-ratios attached to `f`-dimensional irreducibles, whose
//! Euler factors are polynomials in `T^f` that need not split over `K`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::field::FieldElem;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Place {
    pub degree: u32,
    pub point: FieldElem,
}

impl Place {
    pub fn point(point: FieldElem) -> Self {
        Place { degree: 1, point }
    }

    pub fn new(degree: u32, point: FieldElem) -> Self {
        Place { degree, point }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 1 {
            write!(f, "T={}", self.point)
        } else {
            write!(f, "T^{}={}", self.degree, self.point)
        }
    }
}

/// Finitely supported integer combination of places. Zero multiplicities are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor {
    support: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn add_at(&mut self, place: Place, mult: i64) {
        if mult == 0 {
            return;
        }
        let e = self.support.entry(place.clone()).or_insert(0);
        *e += mult;
        if *e == 0 {
            self.support.remove(&place);
        }
    }

    pub fn get(&self, place: &Place) -> i64 {
        self.support.get(place).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, &i64)> {
        self.support.iter()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (p, &m) in &other.support {
            out.add_at(p.clone(), m);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Divisor {
        let mut out = Divisor::new();
        for (p, &m) in &self.support {
            out.add_at(p.clone(), k * m);
        }
        out
    }

    pub fn neg(&self) -> Divisor {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        self.add(&other.neg())
    }

    /// Applies `ζ ↦ ζ^k` to every point.
    pub fn galois(&self, k: i64) -> Result<Divisor> {
        let mut out = Divisor::new();
        for (p, &m) in &self.support {
            out.add_at(Place::new(p.degree, p.point.galois(k)?), m);
        }
        Ok(out)
    }

    /// Total degree `Σ m·deg`.
    pub fn degree(&self) -> i64 {
        self.support.iter().map(|(p, m)| m * p.degree as i64).sum()
    }
}

impl FromIterator<(Place, i64)> for Divisor {
    fn from_iter<I: IntoIterator<Item = (Place, i64)>>(iter: I) -> Self {
        let mut d = Divisor::new();
        for (p, m) in iter {
            d.add_at(p, m);
        }
        d
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self
            .support
            .iter()
            .map(|(p, m)| format!("{p}: {m:+}"))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
