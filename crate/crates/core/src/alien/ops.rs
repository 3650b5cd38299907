//! Alien derivations, the dotted operators and their exponentials.

use std::fmt;
use std::str::FromStr;

use super::element::{Frame, Lin, Mono, TransElement};
use super::poly::Poly;
use super::AlienError;
use crate::exact::{q, qi, Gauss};

/// The three derivations acting on the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Der {
    /// `Delta_2`.
    Right,
    /// `Delta_-2`.
    Left,
    /// `d/dz`.
    Dz,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlienOp {
    /// `Delta_w`; zero unless `w = +-2`.
    Delta(i32),
    /// `Delta^+_w`.
    DeltaPlus(i32),
    /// `e^(-2z) Delta_2`.
    DotRight,
    /// `e^(2z) Delta_-2`.
    DotLeft,
    /// `exp(e^(-2z) Delta_2)`.
    StokesRight,
    /// `exp(e^(2z) Delta_-2)`.
    StokesLeft,
    Dz,
}

impl fmt::Display for AlienOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlienOp::Delta(w) => write!(f, "delta:{w}"),
            AlienOp::DeltaPlus(w) => write!(f, "deltaplus:{w}"),
            AlienOp::DotRight => f.write_str("dot-right"),
            AlienOp::DotLeft => f.write_str("dot-left"),
            AlienOp::StokesRight => f.write_str("stokes-right"),
            AlienOp::StokesLeft => f.write_str("stokes-left"),
            AlienOp::Dz => f.write_str("dz"),
        }
    }
}

impl FromStr for AlienOp {
    type Err = AlienError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AlienError::InvalidOp(s.to_string());
        let (head, tail) = match s.split_once(':') {
            Some((h, t)) => (h, Some(t)),
            None => (s, None),
        };
        let omega =
            || -> Result<i32, AlienError> { tail.ok_or_else(bad)?.parse().map_err(|_| bad()) };
        match head {
            "delta" => Ok(AlienOp::Delta(omega()?)),
            "deltaplus" => Ok(AlienOp::DeltaPlus(omega()?)),
            "dot-right" => Ok(AlienOp::DotRight),
            "dot-left" => Ok(AlienOp::DotLeft),
            "stokes-right" => Ok(AlienOp::StokesRight),
            "stokes-left" => Ok(AlienOp::StokesLeft),
            "dz" => Ok(AlienOp::Dz),
            _ => Err(bad()),
        }
    }
}

fn i_times(c: &Poly, re: i64, im: i64) -> Poly {
    c.scale(&Gauss::new(qi(re), qi(im)))
}

fn shifted(mo: &Mono, dm: i32, dp: i32, du: i32, dv: i32, dk: i32) -> Mono {
    Mono {
        m: mo.m + dm,
        p: mo.p + dp,
        u: (mo.u as i32 + du) as u16,
        v: (mo.v as i32 + dv) as u16,
        k: (mo.k as i32 + dk) as u16,
        ..*mo
    }
}

/// Applies a derivation through the Leibniz rule on each basis monomial.
pub fn derive(d: Der, x: &TransElement) -> TransElement {
    let pf = i32::from(x.frame() == Frame::Composed);
    let mut r = TransElement::zero(x.caps(), x.frame());
    for (mo, c) in x.terms() {
        let base = Mono {
            lin: Lin::One,
            ..*mo
        };
        match (d, mo.lin) {
            (Der::Right, Lin::G) => r.push(shifted(&base, 1, pf, 0, 0, 0), i_times(c, 0, -1)),
            (Der::Left, Lin::F) => r.push(shifted(&base, -1, -pf, 0, 0, 0), i_times(c, 0, -1)),
            (Der::Dz, Lin::G) => r.push(shifted(&base, 0, 0, 1, 0, 0), c.clone()),
            (Der::Dz, Lin::F) => r.push(shifted(&base, 0, 0, 0, 1, 0), c.clone()),
            (Der::Dz, Lin::Z) => r.push(base, c.clone()),
            _ => {}
        }
        let m = mo.m as i64;
        if m != 0 {
            match d {
                Der::Right => r.push(shifted(mo, 1, pf, 0, 0, 0), i_times(c, 0, m)),
                Der::Left => r.push(shifted(mo, -1, -pf, 0, 0, 0), i_times(c, 0, -m)),
                Der::Dz => {
                    r.push(shifted(mo, 0, 0, 0, 1, 0), i_times(c, m, 0));
                    r.push(shifted(mo, 0, 0, 1, 0, 0), i_times(c, -m, 0));
                }
            }
        }
        if d == Der::Dz && mo.n != 0 {
            r.push(*mo, i_times(c, -2 * mo.n as i64, 0));
        }
        if mo.u > 0 {
            let a = mo.u as i64;
            match d {
                Der::Right => {
                    r.push(shifted(mo, 1, pf, -1, 1, 0), i_times(c, 0, -a));
                    r.push(shifted(mo, 1, pf, 0, 0, 0), i_times(c, 0, a));
                    r.push(shifted(mo, 1, pf, -1, 0, 0), i_times(c, 0, 2 * a));
                }
                Der::Left => {}
                Der::Dz => {
                    r.push(shifted(mo, 0, 0, 1, 0, 0), i_times(c, -a, 0));
                    r.push(*mo, i_times(c, -2 * a, 0));
                    r.push(shifted(mo, 0, 0, -1, 0, 2), c.scale_q(&(q(-5, 36) * qi(a))));
                }
            }
        }
        if mo.v > 0 {
            let b = mo.v as i64;
            match d {
                Der::Right => {}
                Der::Left => {
                    r.push(shifted(mo, -1, -pf, 0, 0, 0), i_times(c, 0, b));
                    r.push(shifted(mo, -1, -pf, 1, -1, 0), i_times(c, 0, -b));
                    r.push(shifted(mo, -1, -pf, 0, -1, 0), i_times(c, 0, -2 * b));
                }
                Der::Dz => {
                    r.push(shifted(mo, 0, 0, 0, 1, 0), i_times(c, -b, 0));
                    r.push(*mo, i_times(c, 2 * b, 0));
                    r.push(shifted(mo, 0, 0, 0, -1, 2), c.scale_q(&(q(-5, 36) * qi(b))));
                }
            }
        }
        if d == Der::Dz && mo.k > 0 {
            r.push(shifted(mo, 0, 0, 0, 0, 1), i_times(c, -(mo.k as i64), 0));
        }
    }
    r.truncate();
    r
}

fn dot(left: bool, x: &TransElement) -> TransElement {
    if left {
        derive(Der::Left, x).shift_e(-1)
    } else {
        derive(Der::Right, x).shift_e(1)
    }
}

fn power_over_factorial(d: Der, m: u32, x: &TransElement) -> TransElement {
    let mut y = x.clone();
    for j in 1..=m {
        y = derive(d, &y).scale_q(&q(1, j as i64));
    }
    y
}

/// `exp(t * D)` for a dotted operator `D`, with `t` a parameter polynomial.
pub fn exp_flow(left: bool, t: &Poly, x: &TransElement) -> Result<TransElement, AlienError> {
    let caps = x.caps();
    if left {
        if caps.sigma.is_none() {
            return Err(AlienError::Admissibility(
                "the left flow needs an s2 cap".into(),
            ));
        }
        if x.min_grading().is_some_and(|n| n < 0) {
            return Err(AlienError::Admissibility(
                "element has positive exponentials e^(2z)".into(),
            ));
        }
    } else if caps.e_hi.is_none() {
        return Err(AlienError::MissingCap(
            "the right flow needs an upper e-grading cap".into(),
        ));
    }
    let mut sum = x.clone();
    let mut term = x.clone();
    let mut r = 0u32;
    loop {
        r += 1;
        term = dot(left, &term).scale_poly(t).scale_q(&q(1, r as i64));
        if term.is_zero() {
            break;
        }
        if left {
            let deg = term.min_sigma2_degree().unwrap_or(u32::MAX);
            if deg < r {
                return Err(AlienError::Admissibility(format!(
                    "application {r} left s2-degree {deg} in place"
                )));
            }
            if term.min_grading().is_some_and(|n| n < 0) {
                return Err(AlienError::Admissibility(format!(
                    "application {r} produced e^(2z)"
                )));
            }
        }
        sum = sum.add(&term)?;
    }
    Ok(sum)
}

pub fn te_apply(op: AlienOp, x: &TransElement) -> Result<TransElement, AlienError> {
    match op {
        AlienOp::Delta(0) | AlienOp::DeltaPlus(0) => Err(AlienError::InvalidOp(op.to_string())),
        AlienOp::Delta(2) => Ok(derive(Der::Right, x)),
        AlienOp::Delta(-2) => Ok(derive(Der::Left, x)),
        AlienOp::Delta(_) => Ok(TransElement::zero(x.caps(), x.frame())),
        AlienOp::DeltaPlus(w) => {
            if w % 2 != 0 {
                return Ok(TransElement::zero(x.caps(), x.frame()));
            }
            let d = if w > 0 { Der::Right } else { Der::Left };
            Ok(power_over_factorial(d, (w.abs() / 2) as u32, x))
        }
        AlienOp::DotRight => Ok(dot(false, x)),
        AlienOp::DotLeft => Ok(dot(true, x)),
        AlienOp::StokesRight => exp_flow(false, &Poly::one(), x),
        AlienOp::StokesLeft => exp_flow(true, &Poly::one(), x),
        AlienOp::Dz => Ok(derive(Der::Dz, x)),
    }
}

/// `[A, B] x = A(Bx) - B(Ax)`.
pub fn commutator(a: AlienOp, b: AlienOp, x: &TransElement) -> Result<TransElement, AlienError> {
    let ab = te_apply(a, &te_apply(b, x)?)?;
    let ba = te_apply(b, &te_apply(a, x)?)?;
    ab.sub(&ba)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alien::element::Caps;
    use num_traits::{One, Zero};

    fn el(mo: Mono) -> TransElement {
        TransElement::mono(mo, Poly::one(), Caps::EXACT, Frame::Direct)
    }

    #[test]
    fn generators() {
        let g = el(Mono::lin(Lin::G));
        let dg = te_apply(AlienOp::Delta(2), &g).unwrap();
        assert_eq!(
            dg.coeff(&Mono::e(1, 0)),
            Poly::constant(Gauss::new(qi(0), qi(-1)))
        );
        assert!(te_apply(AlienOp::Delta(-2), &g).unwrap().is_zero());
        let e3 = el(Mono::e(3, 1));
        assert!(te_apply(AlienOp::Delta(4), &e3).unwrap().is_zero());
        let d = te_apply(AlienOp::Delta(-2), &e3).unwrap();
        assert_eq!(
            d.coeff(&Mono::e(2, 1)),
            Poly::constant(Gauss::new(qi(0), qi(-3)))
        );
    }

    #[test]
    fn parse_labels() {
        for s in ["delta:2", "deltaplus:-4", "dot-left", "stokes-right", "dz"] {
            assert_eq!(s.parse::<AlienOp>().unwrap().to_string(), s);
        }
        assert!("delta".parse::<AlienOp>().is_err());
    }

    #[test]
    fn derivative_of_e_power_uses_both_logs() {
        let e = el(Mono::e(1, 1));
        let d = te_apply(AlienOp::Dz, &e).unwrap();
        let v = Mono {
            v: 1,
            ..Mono::e(1, 1)
        };
        let u = Mono {
            u: 1,
            ..Mono::e(1, 1)
        };
        assert_eq!(d.coeff(&v), Poly::one());
        assert_eq!(d.coeff(&u), Poly::constant(-Gauss::one()));
        assert_eq!(d.coeff(&Mono::e(1, 1)), Poly::rational(qi(-2)));
        assert!(Gauss::zero().is_zero());
    }
}
