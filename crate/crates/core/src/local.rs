//! Arithmetic in the completions of Q: square classes, Hilbert symbols and
//! the local invariant of corestricted quaternion classes `(a, d)`.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign};

use crate::arith::{is_prime, jacobi, valuation};
use crate::error::{malformed, Error, Result};
use crate::qfields::{completions, Completion, QuadraticTower};

/// A place of Q.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Infinite,
    Prime(u64),
}

impl Place {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Place::Prime(p))
        } else {
            Err(malformed(format!("{p} is not prime")))
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinite => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// An element of `{0, 1/2} ⊂ Q/Z`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InvValue {
    half: bool,
}

impl InvValue {
    pub const ZERO: InvValue = InvValue { half: false };
    pub const HALF: InvValue = InvValue { half: true };

    pub fn is_zero(self) -> bool {
        !self.half
    }

    pub fn is_half(self) -> bool {
        self.half
    }

    /// Invariant of a quaternion class from its Hilbert symbol.
    pub fn from_symbol(s: i32) -> Self {
        InvValue { half: s == -1 }
    }
}

impl Add for InvValue {
    type Output = InvValue;
    fn add(self, rhs: InvValue) -> InvValue {
        InvValue {
            half: self.half != rhs.half,
        }
    }
}

impl AddAssign for InvValue {
    fn add_assign(&mut self, rhs: InvValue) {
        self.half = self.half != rhs.half;
    }
}

impl Sum for InvValue {
    fn sum<I: Iterator<Item = InvValue>>(iter: I) -> InvValue {
        iter.fold(InvValue::ZERO, Add::add)
    }
}

impl fmt::Display for InvValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.half { "1/2" } else { "0" })
    }
}

/// `x + y√e` with integer coordinates; `y` must be 0 over Q itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TowerElement {
    pub x: i128,
    pub y: i128,
}

impl TowerElement {
    pub fn new(x: i128, y: i128) -> Result<Self> {
        if x == 0 && y == 0 {
            return Err(malformed("tower element is zero"));
        }
        Ok(TowerElement { x, y })
    }

    pub fn rational(x: i128) -> Result<Self> {
        Self::new(x, 0)
    }

    pub fn one() -> Self {
        TowerElement { x: 1, y: 0 }
    }

    /// Product with a rational integer.
    pub fn scale(self, r: i128) -> Result<Self> {
        let x = self.x.checked_mul(r).ok_or(Error::Overflow("tower element scaling"))?;
        let y = self.y.checked_mul(r).ok_or(Error::Overflow("tower element scaling"))?;
        Self::new(x, y)
    }
}

/// Whether the nonzero integer `x` is a square in `Q_v`.
pub fn local_square(x: i128, v: Place) -> Result<bool> {
    if x == 0 {
        return Err(malformed("zero has no square class"));
    }
    Ok(match v {
        Place::Infinite => x > 0,
        Place::Prime(2) => {
            let (k, u) = valuation(x, 2);
            k % 2 == 0 && u.rem_euclid(8) == 1
        }
        Place::Prime(p) => {
            let (k, u) = valuation(x, p);
            k % 2 == 0 && jacobi(u, p) == 1
        }
    })
}

/// Hilbert symbol `(a, b)_v`: +1 when the quaternion algebra `(a, b)` splits over `Q_v`.
pub fn hilbert(a: i128, b: i128, v: Place) -> Result<i32> {
    if a == 0 || b == 0 {
        return Err(malformed("Hilbert symbol of zero"));
    }
    Ok(match v {
        Place::Infinite => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => {
            let (alpha, u) = valuation(a, 2);
            let (beta, w) = valuation(b, 2);
            // ε(t) = (t-1)/2, ω(t) = (t²-1)/8 mod 2, on the residues mod 8
            let eps = |t: i128| ((t.rem_euclid(8) - 1) / 2) & 1;
            let omega = |t: i128| {
                let r = t.rem_euclid(8);
                ((r * r - 1) / 8) & 1
            };
            let exp = eps(u) * eps(w) + alpha as i128 * omega(w) + beta as i128 * omega(u);
            if exp % 2 == 0 {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            let (alpha, u) = valuation(a, p);
            let (beta, w) = valuation(b, p);
            let mut s = 1;
            if (alpha * beta) % 2 == 1 && (p % 4) == 3 {
                s = -s;
            }
            if beta % 2 == 1 {
                s *= jacobi(u, p);
            }
            if alpha % 2 == 1 {
                s *= jacobi(w, p);
            }
            s
        }
    })
}

/// `N(x + y√e) = x² − e·y²`, or `x` when there is no `e`.
pub fn norm(t: TowerElement, e: Option<i128>) -> Result<i128> {
    let n = match e {
        None => {
            if t.y != 0 {
                return Err(malformed("irrational coordinate over Q"));
            }
            t.x
        }
        Some(e) => {
            let xx = t.x.checked_mul(t.x).ok_or(Error::Overflow("norm"))?;
            let eyy =
                t.y.checked_mul(t.y)
                    .and_then(|yy| yy.checked_mul(e))
                    .ok_or(Error::Overflow("norm"))?;
            xx.checked_sub(eyy).ok_or(Error::Overflow("norm"))?
        }
    };
    if n == 0 {
        return Err(malformed("zero norm: element vanishes or e is a square"));
    }
    Ok(n)
}

/// The local component `a^v` of a datum for one tower at one place.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalComponent {
    /// `F ⊗ Q_v` is a field: `Q_v`, `Q_v(√e)` or `C`.
    Field(TowerElement),
    /// `F ⊗ Q_v = Q_v × Q_v`; each coordinate is a nonzero integer.
    Split([i128; 2]),
}

/// `inv_v cor_{F^v/Q_v} (a, d)` for the tower's `d`.
///
/// Over a quadratic completion the projection formula gives
/// `cor(a, d) = (N(a), d)`; at a split place the two copies of `Q_v`
/// contribute additively.
pub fn cor_inv(tower: &QuadraticTower, a: &LocalComponent, v: Place) -> Result<InvValue> {
    let d = tower.d() as i128;
    let shape = completions(tower, v)?;
    match (a, shape.as_slice()) {
        (LocalComponent::Field(t), [Completion::Base]) => {
            if t.y != 0 {
                return Err(malformed(format!("irrational value over Q at {v}")));
            }
            Ok(InvValue::from_symbol(hilbert(t.x, d, v)?))
        }
        (LocalComponent::Field(t), [Completion::Quadratic]) => {
            let n = norm(*t, tower.e().map(i128::from))?;
            Ok(InvValue::from_symbol(hilbert(n, d, v)?))
        }
        (LocalComponent::Field(t), [Completion::Complex]) => {
            norm(*t, tower.e().map(i128::from))?;
            Ok(InvValue::ZERO)
        }
        (LocalComponent::Split(xs), [Completion::Base, Completion::Base]) => {
            let mut total = InvValue::ZERO;
            for &x in xs {
                total += InvValue::from_symbol(hilbert(x, d, v)?);
            }
            Ok(total)
        }
        (LocalComponent::Split(_), _) => Err(malformed(format!(
            "split component given at {v}, where F does not split"
        ))),
        (LocalComponent::Field(_), _) => Err(malformed(format!("single component given at {v}, where F splits"))),
    }
}
