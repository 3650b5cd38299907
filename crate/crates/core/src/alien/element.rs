//! Elements of the differential algebra carrying the formal integral.
//!
//! A basis monomial is `L * E^m * e^(-2nz) * P^p * u^a * v^b * z^-k` where
//! `E = e^(f-g)`, `u = g'`, `v = f'`, `L` is one of `1, g, f, z, R` and, in
//! the composed frame, `P = e^(-2 phi_u)`. Coefficients are polynomials in
//! `s1, s2` (and the flow symbols). Linear parts never multiply each other.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{Poly, Var};
use super::AlienError;
use crate::exact::{Gauss, Q};

/// Linear generator of a monomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Lin {
    One,
    G,
    F,
    Z,
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    pub lin: Lin,
    pub m: i32,
    pub n: i32,
    pub p: i32,
    pub u: u16,
    pub v: u16,
    pub k: u16,
}

impl Mono {
    pub const ONE: Mono = Mono {
        lin: Lin::One,
        m: 0,
        n: 0,
        p: 0,
        u: 0,
        v: 0,
        k: 0,
    };

    pub fn lin(lin: Lin) -> Mono {
        Mono { lin, ..Mono::ONE }
    }

    /// `E^m e^(-2nz)`.
    pub fn e(m: i32, n: i32) -> Mono {
        Mono { m, n, ..Mono::ONE }
    }

    pub fn with_p(self, p: i32) -> Mono {
        Mono { p, ..self }
    }

    pub fn times(&self, o: &Mono) -> Result<Mono, AlienError> {
        let lin = match (self.lin, o.lin) {
            (Lin::One, l) | (l, Lin::One) => l,
            _ => return Err(AlienError::NonlinearLin),
        };
        Ok(Mono {
            lin,
            m: self.m + o.m,
            n: self.n + o.n,
            p: self.p + o.p,
            u: self.u + o.u,
            v: self.v + o.v,
            k: self.k + o.k,
        })
    }
}

/// Where `g`, `E` live: directly in `z`, or composed with `id + phi_u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Frame {
    Direct,
    Composed,
}

/// Validity window: terms are exact for `deg_{s2} <= sigma` and
/// `e_lo <= n <= e_hi`; `None` means unbounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub sigma: Option<u32>,
    pub e_hi: Option<i32>,
    pub e_lo: Option<i32>,
}

impl Caps {
    pub const EXACT: Caps = Caps {
        sigma: None,
        e_hi: None,
        e_lo: None,
    };

    /// Caps for an element graded by `e^(-2z)` with `n >= 0`.
    pub fn right(k_sigma: u32, k_e: u32) -> Caps {
        Caps {
            sigma: Some(k_sigma),
            e_hi: Some(k_e as i32),
            e_lo: None,
        }
    }

    pub fn meet(&self, o: &Caps) -> Caps {
        fn min_u(a: Option<u32>, b: Option<u32>) -> Option<u32> {
            match (a, b) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, None) | (None, x) => x,
            }
        }
        fn min_i(a: Option<i32>, b: Option<i32>) -> Option<i32> {
            match (a, b) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, None) | (None, x) => x,
            }
        }
        fn max_i(a: Option<i32>, b: Option<i32>) -> Option<i32> {
            match (a, b) {
                (Some(x), Some(y)) => Some(x.max(y)),
                (x, None) | (None, x) => x,
            }
        }
        Caps {
            sigma: min_u(self.sigma, o.sigma),
            e_hi: min_i(self.e_hi, o.e_hi),
            e_lo: max_i(self.e_lo, o.e_lo),
        }
    }

    fn keeps_n(&self, n: i32) -> bool {
        self.e_hi.is_none_or(|h| n <= h) && self.e_lo.is_none_or(|l| n >= l)
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct TransElement {
    terms: BTreeMap<Mono, Poly>,
    caps: Caps,
    frame: Frame,
}

impl TransElement {
    pub fn zero(caps: Caps, frame: Frame) -> Self {
        TransElement {
            terms: BTreeMap::new(),
            caps,
            frame,
        }
    }

    pub fn from_terms(
        terms: impl IntoIterator<Item = (Mono, Poly)>,
        caps: Caps,
        frame: Frame,
    ) -> Self {
        let mut x = Self::zero(caps, frame);
        for (mo, p) in terms {
            x.push(mo, p);
        }
        x.truncate();
        x
    }

    pub fn mono(mo: Mono, c: Poly, caps: Caps, frame: Frame) -> Self {
        Self::from_terms([(mo, c)], caps, frame)
    }

    pub fn constant(c: Poly, frame: Frame) -> Self {
        Self::mono(Mono::ONE, c, Caps::EXACT, frame)
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.caps = caps;
        self.truncate();
        self
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Poly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mo: &Mono) -> Poly {
        self.terms.get(mo).cloned().unwrap_or_default()
    }

    pub fn push(&mut self, mo: Mono, c: Poly) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.remove(&mo).unwrap_or_default().add(&c);
        if !entry.is_zero() {
            self.terms.insert(mo, entry);
        }
    }

    /// Drops everything outside the caps.
    pub fn truncate(&mut self) {
        let caps = self.caps;
        let old = std::mem::take(&mut self.terms);
        for (mo, mut p) in old {
            if !caps.keeps_n(mo.n) {
                continue;
            }
            if let Some(c) = caps.sigma {
                p.truncate(Var::S2, c);
            }
            if !p.is_zero() {
                self.terms.insert(mo, p);
            }
        }
    }

    fn check_frame(&self, o: &TransElement) -> Result<(), AlienError> {
        if self.frame != o.frame {
            return Err(AlienError::FrameMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &TransElement) -> Result<TransElement, AlienError> {
        self.check_frame(o)?;
        let mut r = self.clone();
        r.caps = self.caps.meet(&o.caps);
        for (mo, p) in &o.terms {
            r.push(*mo, p.clone());
        }
        r.truncate();
        Ok(r)
    }

    pub fn sub(&self, o: &TransElement) -> Result<TransElement, AlienError> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> TransElement {
        self.scale_poly(&Poly::constant(-Gauss::one()))
    }

    pub fn scale(&self, c: &Gauss) -> TransElement {
        self.scale_poly(&Poly::constant(c.clone()))
    }

    pub fn scale_q(&self, c: &Q) -> TransElement {
        self.scale(&Gauss::real(c.clone()))
    }

    /// Multiplication by a parameter polynomial.
    pub fn scale_poly(&self, c: &Poly) -> TransElement {
        let terms = self.terms.iter().map(|(mo, p)| (*mo, p.mul(c)));
        Self::from_terms(terms, self.caps, self.frame)
    }

    pub fn mul(&self, o: &TransElement) -> Result<TransElement, AlienError> {
        self.check_frame(o)?;
        let caps = self.caps.meet(&o.caps);
        let mut r = TransElement::zero(caps, self.frame);
        for (ma, pa) in &self.terms {
            for (mb, pb) in &o.terms {
                let mo = ma.times(mb)?;
                if !caps.keeps_n(mo.n) {
                    continue;
                }
                r.push(mo, pa.mul_capped(pb, Var::S2, caps.sigma));
            }
        }
        r.truncate();
        Ok(r)
    }

    /// Multiplies every monomial by `mo`.
    pub fn mul_mono(&self, mo: &Mono) -> Result<TransElement, AlienError> {
        let mut r = TransElement::zero(self.caps, self.frame);
        for (m, p) in &self.terms {
            r.push(m.times(mo)?, p.clone());
        }
        r.truncate();
        Ok(r)
    }

    /// Multiplication by `e^(-2jz)`; raising the grading keeps the upper cap,
    /// lowering it keeps the lower cap.
    pub fn shift_e(&self, j: i32) -> TransElement {
        let mut caps = self.caps;
        if j > 0 {
            caps.e_lo = caps.e_lo.map(|l| l + j);
        } else if j < 0 {
            caps.e_hi = caps.e_hi.map(|h| h + j);
        }
        let terms = self
            .terms
            .iter()
            .map(|(mo, p)| (Mono { n: mo.n + j, ..*mo }, p.clone()));
        Self::from_terms(terms, caps, self.frame)
    }

    /// Partial derivative in a parameter.
    pub fn d_param(&self, v: Var) -> TransElement {
        let mut caps = self.caps;
        if v == Var::S2 {
            caps.sigma = caps.sigma.map(|c| c.saturating_sub(1));
        }
        let terms = self.terms.iter().map(|(mo, p)| (*mo, p.diff(v)));
        Self::from_terms(terms, caps, self.frame)
    }

    /// Substitutes a parameter. A value with a nonzero `s2`-free part would
    /// mix truncated `s2`-degrees, so it needs an uncapped `s2`.
    pub fn substitute(&self, v: Var, value: &Poly) -> Result<TransElement, AlienError> {
        let mixes = v == Var::S2 && value.min_degree(Var::S2) == Some(0);
        if mixes && self.caps.sigma.is_some() {
            return Err(AlienError::CapInconsistency(
                "shifting s2 by a constant needs an element without an s2 cap".into(),
            ));
        }
        let terms = self
            .terms
            .iter()
            .map(|(mo, p)| (*mo, p.substitute(v, value, self.caps.sigma)));
        Ok(Self::from_terms(terms, self.caps, self.frame))
    }

    /// Smallest `s2`-degree over all coefficients.
    pub fn min_sigma2_degree(&self) -> Option<u32> {
        self.terms
            .values()
            .filter_map(|p| p.min_degree(Var::S2))
            .min()
    }

    pub fn min_grading(&self) -> Option<i32> {
        self.terms.keys().map(|m| m.n).min()
    }

    /// Restriction to the terms whose monomial satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&Mono) -> bool) -> TransElement {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| keep(m))
            .map(|(m, p)| (*m, p.clone()));
        Self::from_terms(terms, self.caps, self.frame)
    }

    /// Coefficient of `s2^k` (as an element).
    pub fn sigma2_slice(&self, k: u16) -> TransElement {
        let terms = self.terms.iter().map(|(m, p)| (*m, p.coeff_of(Var::S2, k)));
        Self::from_terms(
            terms,
            Caps {
                sigma: None,
                ..self.caps
            },
            self.frame,
        )
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(m, p)| TermJson {
                g: u8::from(m.lin == Lin::G),
                lin: match m.lin {
                    Lin::F => Some("f".into()),
                    Lin::Z => Some("z".into()),
                    Lin::R => Some("R".into()),
                    _ => None,
                },
                m: m.m,
                n: m.n,
                p: (m.p != 0).then_some(m.p),
                u: (m.u != 0).then_some(m.u),
                v: (m.v != 0).then_some(m.v),
                k: (m.k != 0).then_some(m.k),
                poly: p.to_string(),
            })
            .collect();
        serde_json::json!({ "terms": terms })
    }
}

#[derive(Serialize)]
struct TermJson {
    g: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    lin: Option<String>,
    m: i32,
    n: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    u: Option<u16>,
    #[serde(skip_serializing_if = "Option::is_none")]
    v: Option<u16>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u16>,
    poly: String,
}

impl fmt::Display for TransElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, p) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "[{p}]")?;
            match m.lin {
                Lin::One => {}
                Lin::G => f.write_str("*g")?,
                Lin::F => f.write_str("*f")?,
                Lin::Z => f.write_str("*z")?,
                Lin::R => f.write_str("*R")?,
            }
            if m.m != 0 {
                write!(f, "*E^{}", m.m)?;
            }
            if m.n != 0 {
                write!(f, "*e^({}z)", -2 * m.n)?;
            }
            if m.p != 0 {
                write!(f, "*P^{}", m.p)?;
            }
            if m.u != 0 {
                write!(f, "*u^{}", m.u)?;
            }
            if m.v != 0 {
                write!(f, "*v^{}", m.v)?;
            }
            if m.k != 0 {
                write!(f, "*z^-{}", m.k)?;
            }
        }
        Ok(())
    }
}

/// Shorthand constructors.
pub fn poly_one() -> Poly {
    Poly::one()
}

pub fn gauss(re: Q, im: Q) -> Gauss {
    Gauss::new(re, im)
}

pub fn unit() -> Gauss {
    Gauss::one()
}

pub fn zero_g() -> Gauss {
    Gauss::zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qi;

    #[test]
    fn linear_parts_do_not_multiply() {
        let g = TransElement::mono(Mono::lin(Lin::G), Poly::one(), Caps::EXACT, Frame::Direct);
        assert_eq!(g.mul(&g), Err(AlienError::NonlinearLin));
        let e = TransElement::mono(Mono::e(1, 1), Poly::one(), Caps::EXACT, Frame::Direct);
        let ge = g.mul(&e).unwrap();
        assert_eq!(
            ge.terms().next().unwrap().0,
            &Mono {
                lin: Lin::G,
                m: 1,
                n: 1,
                ..Mono::ONE
            }
        );
    }

    #[test]
    fn caps_truncate_products() {
        let caps = Caps::right(2, 2);
        let x = TransElement::mono(Mono::e(1, 1), Poly::var(Var::S2), caps, Frame::Direct);
        let x3 = x.mul(&x).unwrap().mul(&x).unwrap();
        assert!(x3.is_zero());
        let x2 = x.mul(&x).unwrap();
        assert_eq!(
            x2.coeff(&Mono::e(2, 2)),
            Poly::var_pow(Var::S2, 2, Gauss::one())
        );
    }

    #[test]
    fn shift_bookkeeping() {
        let x = TransElement::mono(Mono::e(0, 1), Poly::one(), Caps::right(3, 3), Frame::Direct);
        let down = x.shift_e(-1);
        assert_eq!(down.caps().e_hi, Some(2));
        let up = x.shift_e(1);
        assert_eq!(up.caps().e_hi, Some(3));
        assert_eq!(up.coeff(&Mono::e(0, 2)), Poly::one());
        let _ = qi(0);
    }

    #[test]
    fn json_layout() {
        let x = TransElement::mono(Mono::lin(Lin::G), Poly::one(), Caps::EXACT, Frame::Direct);
        assert_eq!(
            x.to_json().to_string(),
            r#"{"terms":[{"g":1,"m":0,"n":0,"poly":"1"}]}"#
        );
    }
}
