//! Closed parametric families for the problem data.
//!
//! Every family is closed under differentiation, so boundary traces such as
//! `u^(j)(0)` and `g^(j)(0)` are exact and never obtained by finite
//! differences.
//!
//! * [`HalfLineFunction`]: sums of `c x^m exp(-a x^2 - b x)` on `[0, inf)`.
//! * [`BoundaryFunction`]: sums of `c t^m exp(-b t) cos(phi t + phase)`,
//!   stored internally as complex exponential-polynomials.
//! * [`ForcingFunction`]: finite sums of separable products `S(x) T(t)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One term `c x^m exp(-a x^2 - b x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussTerm {
    pub c: f64,
    #[serde(default)]
    pub m: u32,
    #[serde(default)]
    pub a: f64,
    #[serde(default)]
    pub b: f64,
}

impl GaussTerm {
    fn validate(&self) -> Result<()> {
        if !(self.c.is_finite() && self.a.is_finite() && self.b.is_finite()) {
            return Err(Error::InvalidTerm(format!("non-finite parameters in {self:?}")));
        }
        if self.a < 0.0 || self.b < 0.0 {
            return Err(Error::InvalidTerm(format!("negative decay rate in {self:?}")));
        }
        if self.a == 0.0 && self.b == 0.0 {
            return Err(Error::InvalidTerm(format!(
                "term {self:?} does not decay (need a > 0 or b > 0)"
            )));
        }
        Ok(())
    }

    #[inline]
    fn value(&self, x: f64) -> f64 {
        self.c * x.powi(self.m as i32) * (-self.a * x * x - self.b * x).exp()
    }

}

/// Rapidly decreasing function on the half-line.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfLineFunction {
    terms: Vec<GaussTerm>,
}

impl HalfLineFunction {
    pub fn new(terms: Vec<GaussTerm>) -> Result<Self> {
        for t in &terms {
            t.validate()?;
        }
        Ok(Self::from_terms_unchecked(terms))
    }

    fn from_terms_unchecked(terms: Vec<GaussTerm>) -> Self {
        let mut merged: Vec<GaussTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            if t.c == 0.0 {
                continue;
            }
            match merged
                .iter_mut()
                .find(|s| s.m == t.m && s.a == t.a && s.b == t.b)
            {
                Some(s) => s.c += t.c,
                None => merged.push(t),
            }
        }
        merged.retain(|t| t.c != 0.0);
        merged.sort_by(|p, q| {
            (p.a, p.b, p.m)
                .partial_cmp(&(q.a, q.b, q.m))
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        Self { terms: merged }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `c x^m exp(-a x^2)`, `a > 0`.
    pub fn gaussian(c: f64, m: u32, a: f64) -> Result<Self> {
        Self::new(vec![GaussTerm { c, m, a, b: 0.0 }])
    }

    /// `c x^m exp(-b x)`, `b > 0`.
    pub fn exponential(c: f64, m: u32, b: f64) -> Result<Self> {
        Self::new(vec![GaussTerm { c, m, a: 0.0, b }])
    }

    pub fn terms(&self) -> &[GaussTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when every term is a pure exponential (`a = 0`).
    pub fn is_exponential_only(&self) -> bool {
        self.terms.iter().all(|t| t.a == 0.0)
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if x < 0.0 || x.is_nan() {
            return Err(Error::OutsideDomain { x, t: 0.0 });
        }
        Ok(self.value(x))
    }

    #[inline]
    pub(crate) fn value(&self, x: f64) -> f64 {
        self.terms.iter().map(|t| t.value(x)).sum()
    }

    /// Analytic continuation to complex arguments.
    pub fn eval_complex(&self, y: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|t| t.c * y.powu(t.m) * (-t.a * y * y - t.b * y).exp())
            .sum()
    }

    /// Exact `k`-th derivative.
    pub fn deriv(&self, k: usize) -> Self {
        let mut cur = self.clone();
        for _ in 0..k {
            let mut next = Vec::with_capacity(3 * cur.terms.len());
            for t in &cur.terms {
                if t.m > 0 {
                    next.push(GaussTerm { c: t.c * t.m as f64, m: t.m - 1, ..*t });
                }
                if t.b != 0.0 {
                    next.push(GaussTerm { c: -t.c * t.b, ..*t });
                }
                if t.a != 0.0 {
                    next.push(GaussTerm { c: -2.0 * t.a * t.c, m: t.m + 1, ..*t });
                }
            }
            cur = Self::from_terms_unchecked(next);
        }
        cur
    }

    /// `[u(0), u'(0), ..., u^(n-1)(0)]`.
    pub fn derivs_at_zero(&self, n: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(n);
        let mut cur = self.clone();
        for _ in 0..n {
            out.push(cur.value(0.0));
            cur = cur.deriv(1);
        }
        out
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::from_terms_unchecked(
            self.terms.iter().map(|t| GaussTerm { c: t.c * c, ..*t }).collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Self::from_terms_unchecked(terms)
    }
}

/// Real input form of a temporal term: `c t^m exp(-b t) cos(phi t + phase)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscTerm {
    pub c: f64,
    #[serde(default)]
    pub m: u32,
    #[serde(default)]
    pub b: f64,
    #[serde(default)]
    pub phi: f64,
    #[serde(default)]
    pub phase: f64,
}

/// `coeff t^m exp(rate t)` with complex coefficient and rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpTerm {
    pub coeff: Complex64,
    pub m: u32,
    pub rate: Complex64,
}

/// Smooth real function on `[0, inf)` closed under `d/dt`.
///
/// Stored as a sum of complex exponential-polynomials whose total is real
/// on the real axis; conjugate pairs come from the cosine factors.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BoundaryFunction {
    terms: Vec<ExpTerm>,
}

impl BoundaryFunction {
    pub fn new(terms: &[OscTerm]) -> Result<Self> {
        let mut out = Vec::with_capacity(2 * terms.len());
        for t in terms {
            if !(t.c.is_finite() && t.b.is_finite() && t.phi.is_finite() && t.phase.is_finite()) {
                return Err(Error::InvalidTerm(format!("non-finite parameters in {t:?}")));
            }
            if t.b < 0.0 {
                return Err(Error::InvalidTerm(format!("negative decay rate in {t:?}")));
            }
            let half = Complex64::from_polar(0.5 * t.c, t.phase);
            out.push(ExpTerm { coeff: half, m: t.m, rate: Complex64::new(-t.b, t.phi) });
            out.push(ExpTerm { coeff: half.conj(), m: t.m, rate: Complex64::new(-t.b, -t.phi) });
        }
        Ok(Self::from_terms(out))
    }

    fn from_terms(terms: Vec<ExpTerm>) -> Self {
        let mut merged: Vec<ExpTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match merged.iter_mut().find(|s| s.m == t.m && s.rate == t.rate) {
                Some(s) => s.coeff += t.coeff,
                None => merged.push(t),
            }
        }
        merged.retain(|t| t.coeff != Complex64::new(0.0, 0.0));
        Self { terms: merged }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        Self::from_terms(vec![ExpTerm { coeff: c.into(), m: 0, rate: 0.0.into() }])
    }

    /// `c t^m exp(-b t)`.
    pub fn exp_poly(c: f64, m: u32, b: f64) -> Result<Self> {
        Self::new(&[OscTerm { c, m, b, phi: 0.0, phase: 0.0 }])
    }

    pub fn exp_terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    /// Real-form terms whose sum reproduces the function.
    pub fn osc_terms(&self) -> Vec<OscTerm> {
        self.terms
            .iter()
            .map(|t| OscTerm {
                c: t.coeff.norm(),
                m: t.m,
                b: -t.rate.re,
                phi: t.rate.im,
                phase: t.coeff.arg(),
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        if t < 0.0 || t.is_nan() {
            return Err(Error::OutsideDomain { x: 0.0, t });
        }
        Ok(self.value(t))
    }

    #[inline]
    pub(crate) fn value(&self, t: f64) -> f64 {
        self.value_complex(t).re
    }

    pub(crate) fn value_complex(&self, t: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|s| s.coeff * t.powi(s.m as i32) * (s.rate * t).exp())
            .sum()
    }

    pub fn deriv(&self, k: usize) -> Self {
        let mut cur = self.clone();
        for _ in 0..k {
            let mut next = Vec::with_capacity(2 * cur.terms.len());
            for s in &cur.terms {
                if s.m > 0 {
                    next.push(ExpTerm { coeff: s.coeff * s.m as f64, m: s.m - 1, rate: s.rate });
                }
                if s.rate != Complex64::new(0.0, 0.0) {
                    next.push(ExpTerm { coeff: s.coeff * s.rate, ..*s });
                }
            }
            cur = Self::from_terms(next);
        }
        cur
    }

    /// `[g(t), g'(t), ..., g^(n-1)(t)]`.
    pub fn derivs_at(&self, t: f64, n: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(n);
        let mut cur = self.clone();
        for _ in 0..n {
            out.push(cur.value(t));
            cur = cur.deriv(1);
        }
        out
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::from_terms(
            self.terms.iter().map(|s| ExpTerm { coeff: s.coeff * c, ..*s }).collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Self::from_terms(terms)
    }
}

/// One separable forcing term `spatial(x) * temporal(t)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ForcingTerm {
    pub spatial: HalfLineFunction,
    pub temporal: BoundaryFunction,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ForcingFunction {
    terms: Vec<ForcingTerm>,
}

impl ForcingFunction {
    pub fn new(terms: Vec<ForcingTerm>) -> Self {
        Self {
            terms: terms
                .into_iter()
                .filter(|t| !t.spatial.is_zero() && !t.temporal.is_zero())
                .collect(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn separable(spatial: HalfLineFunction, temporal: BoundaryFunction) -> Self {
        Self::new(vec![ForcingTerm { spatial, temporal }])
    }

    pub fn terms(&self) -> &[ForcingTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: f64, t: f64) -> Result<f64> {
        if x < 0.0 || t < 0.0 || x.is_nan() || t.is_nan() {
            return Err(Error::OutsideDomain { x, t });
        }
        Ok(self.value(x, t))
    }

    pub(crate) fn value(&self, x: f64, t: f64) -> f64 {
        self.terms
            .iter()
            .map(|s| s.spatial.value(x) * s.temporal.value(t))
            .sum()
    }

    /// `d^k/dx^k d^l/dt^l f`.
    pub fn deriv(&self, k: usize, l: usize) -> Self {
        Self::new(
            self.terms
                .iter()
                .map(|s| ForcingTerm { spatial: s.spatial.deriv(k), temporal: s.temporal.deriv(l) })
                .collect(),
        )
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::new(
            self.terms
                .iter()
                .map(|s| ForcingTerm { spatial: s.spatial.scale(c), temporal: s.temporal.clone() })
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::new(terms)
    }
}

/// Initial datum `u`, boundary datum `g` and forcing `f`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DatumTriple {
    pub u: HalfLineFunction,
    pub g: BoundaryFunction,
    pub f: ForcingFunction,
}

impl DatumTriple {
    pub fn new(u: HalfLineFunction, g: BoundaryFunction, f: ForcingFunction) -> Self {
        Self { u, g, f }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.g.is_zero() && self.f.is_zero()
    }

    pub fn scale(&self, c: f64) -> Self {
        Self { u: self.u.scale(c), g: self.g.scale(c), f: self.f.scale(c) }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { u: self.u.add(&other.u), g: self.g.add(&other.g), f: self.f.add(&other.f) }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: DatumSpec = serde_json::from_str(text)?;
        spec.build()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&DatumSpec::from(self)).expect("datum spec serializes")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ForcingSpec {
    #[serde(default)]
    spatial: Vec<GaussTerm>,
    #[serde(default)]
    temporal: Vec<OscTerm>,
}

/// On-disk data description; see the README for the schema.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DatumSpec {
    #[serde(default)]
    u: Vec<GaussTerm>,
    #[serde(default)]
    g: Vec<OscTerm>,
    #[serde(default)]
    f: Vec<ForcingSpec>,
}

impl DatumSpec {
    fn build(self) -> Result<DatumTriple> {
        let u = HalfLineFunction::new(self.u)?;
        let g = BoundaryFunction::new(&self.g)?;
        let mut f = Vec::with_capacity(self.f.len());
        for s in self.f {
            f.push(ForcingTerm {
                spatial: HalfLineFunction::new(s.spatial)?,
                temporal: BoundaryFunction::new(&s.temporal)?,
            });
        }
        Ok(DatumTriple { u, g, f: ForcingFunction::new(f) })
    }
}

impl From<&DatumTriple> for DatumSpec {
    fn from(d: &DatumTriple) -> Self {
        Self {
            u: d.u.terms().to_vec(),
            g: d.g.osc_terms(),
            f: d
                .f
                .terms()
                .iter()
                .map(|s| ForcingSpec {
                    spatial: s.spatial.terms().to_vec(),
                    temporal: s.temporal.osc_terms(),
                })
                .collect(),
        }
    }
}
