//! Brute-force reference definitions: Chebyshev polynomials, the zeros of the
//! polynomial algebras behind DCT-2 and skew DCT-4, and the dense definition
//! matrices every factorization is checked against.
//!
//! Zeros are always ordered by ascending angle `θ` (so descending `x = cos θ`).
//! Row `k` of every definition matrix corresponds to the `k`-th zero in that
//! order, and the output permutations built by the factorizer rely on it.

use std::f64::consts::PI;
use std::fmt;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};

/// The three Chebyshev families used by the DCT algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChebKind {
    /// `T_n(cos θ) = cos nθ`
    First,
    /// `U_n(cos θ) = sin (n+1)θ / sin θ`
    Second,
    /// `V_n(cos θ) = cos (n+½)θ / cos ½θ`
    Third,
}

impl ChebKind {
    pub const ALL: [ChebKind; 3] = [ChebKind::First, ChebKind::Second, ChebKind::Third];
}

/// Evaluates a Chebyshev polynomial at any real `x`.
///
/// Degrees 0..=2 are explicit polynomials; higher degrees use the shared
/// three-term recurrence `p_{n+1} = 2x p_n - p_{n-1}`.
pub fn cheb_eval(kind: ChebKind, n: usize, x: f64) -> f64 {
    let (p0, p1, p2) = match kind {
        ChebKind::First => (1.0, x, 2.0 * x * x - 1.0),
        ChebKind::Second => (1.0, 2.0 * x, 4.0 * x * x - 1.0),
        ChebKind::Third => (1.0, 2.0 * x - 1.0, 4.0 * x * x - 2.0 * x - 1.0),
    };
    match n {
        0 => p0,
        1 => p1,
        2 => p2,
        _ => {
            let (mut prev, mut cur) = (p1, p2);
            for _ in 2..n {
                let next = 2.0 * x * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

/// Trigonometric closed form at `x = cos θ`, given the angle directly.
///
/// Undefined (division by zero) at `θ = 0, π` for `U` and at `θ = π` for `V`.
pub fn cheb_closed_form(kind: ChebKind, n: usize, theta: f64) -> f64 {
    let n = n as f64;
    match kind {
        ChebKind::First => (n * theta).cos(),
        ChebKind::Second => ((n + 1.0) * theta).sin() / theta.sin(),
        ChebKind::Third => ((n + 0.5) * theta).cos() / (0.5 * theta).cos(),
    }
}

/// An exact dyadic rational, the parameter `r` of a skew DCT-4.
///
/// The recursion only ever maps `r` to `r/2` and `1 - r/2`, so every
/// parameter reachable from `1/2` stays dyadic and is kept exact here; the
/// cosine is taken once, when a coefficient is materialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

const MAX_DEN: i64 = 1 << 60;

impl Rational {
    pub const HALF: Rational = Rational { num: 1, den: 2 };

    /// Builds `num/den` in lowest terms. The reduced denominator must be a
    /// power of two.
    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den <= 0 {
            return Err(Error::Domain(format!("denominator {den} must be positive")));
        }
        let g = gcd(num.unsigned_abs(), den as u64) as i64;
        let (num, den) = (num / g, den / g);
        if !(den as u64).is_power_of_two() || den > MAX_DEN {
            return Err(Error::Domain(format!(
                "{num}/{den} is not a dyadic rational"
            )));
        }
        Ok(Self { num, den })
    }

    /// Like [`Rational::new`] but also requires `0 < r < 1`.
    pub fn skew(num: i64, den: i64) -> Result<Self> {
        let r = Self::new(num, den)?;
        r.check_skew()?;
        Ok(r)
    }

    pub fn num(self) -> i64 {
        self.num
    }

    pub fn den(self) -> i64 {
        self.den
    }

    pub fn is_skew_parameter(self) -> bool {
        self.num > 0 && self.num < self.den
    }

    pub fn check_skew(self) -> Result<()> {
        if self.is_skew_parameter() {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "skew parameter {self} not in (0, 1)"
            )))
        }
    }

    /// `r / 2`
    pub fn halved(self) -> Rational {
        Rational::new(self.num, self.den * 2).expect("halving a dyadic rational")
    }

    /// `1 - r / 2`
    pub fn reflected_half(self) -> Rational {
        Rational::new(2 * self.den - self.num, self.den * 2).expect("1 - r/2 of a dyadic rational")
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `cos(r π)`
    pub fn cos_pi(self) -> f64 {
        (PI * self.num as f64 / self.den as f64).cos()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// Zeros of an algebra's defining polynomial, by ascending angle.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroList {
    angles: Vec<f64>,
    values: Vec<f64>,
}

impl ZeroList {
    fn from_angles(mut angles: Vec<f64>) -> Self {
        angles.sort_by(f64::total_cmp);
        let values = angles.iter().map(|t| t.cos()).collect();
        Self { angles, values }
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    /// `cos θ_k` for each angle.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }
}

/// The `n` zeros of `2T_n(x) - 2cos rπ`, that is the solutions
/// `θ ∈ (0, π)` of `cos nθ = cos rπ`.
pub fn skew_zeros(n: usize, r: Rational) -> Result<ZeroList> {
    if n == 0 {
        return Err(Error::Domain("transform size must be positive".into()));
    }
    r.check_skew()?;
    let rf = r.to_f64();
    let nf = n as f64;
    let rising = (0..n.div_ceil(2)).map(|j| (2.0 * j as f64 + rf) * PI / nf);
    let falling = (1..=n / 2).map(|j| (2.0 * j as f64 - rf) * PI / nf);
    Ok(ZeroList::from_angles(rising.chain(falling).collect()))
}

/// The `n` zeros of `(x - 1) U_{n-1}(x)`: `θ_k = kπ/n`.
pub fn dct2_zeros(n: usize) -> Result<ZeroList> {
    if n == 0 {
        return Err(Error::Domain("transform size must be positive".into()));
    }
    Ok(ZeroList::from_angles(
        (0..n).map(|k| k as f64 * PI / n as f64).collect(),
    ))
}

/// Which dense definition matrix to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RefKind {
    /// `cos k(ℓ+½)π/n`
    Dct2,
    /// DCT-2 with row `k` divided by `cos kπ/2n`: `[V_ℓ(α_k)]`.
    Dct2Bar,
    /// `cos (k+½)(ℓ+½)π/n`
    Dct4,
    /// Skew polynomial transform `[V_ℓ(α_k)]` at the zeros of
    /// `2T_n - 2cos rπ`.
    Dct4Bar,
}

/// Dense definition matrix of a transform.
///
/// `r` is accepted only for [`RefKind::Dct4Bar`], where it defaults to `1/2`.
pub fn ref_matrix(kind: RefKind, n: usize, r: Option<Rational>) -> Result<DenseMatrix> {
    if n == 0 {
        return Err(Error::Domain("transform size must be positive".into()));
    }
    if r.is_some() && kind != RefKind::Dct4Bar {
        return Err(Error::Domain(format!(
            "skew parameter given for non-skew transform {kind:?}"
        )));
    }
    let nf = n as f64;
    let m = match kind {
        RefKind::Dct2 => {
            DenseMatrix::from_fn(n, n, |k, l| (k as f64 * (l as f64 + 0.5) * PI / nf).cos())
        }
        RefKind::Dct2Bar => {
            let zeros = dct2_zeros(n)?;
            DenseMatrix::from_fn(n, n, |k, l| {
                cheb_closed_form(ChebKind::Third, l, zeros.angles()[k])
            })
        }
        RefKind::Dct4 => DenseMatrix::from_fn(n, n, |k, l| {
            ((k as f64 + 0.5) * (l as f64 + 0.5) * PI / nf).cos()
        }),
        RefKind::Dct4Bar => {
            let zeros = skew_zeros(n, r.unwrap_or(Rational::HALF))?;
            DenseMatrix::from_fn(n, n, |k, l| {
                cheb_closed_form(ChebKind::Third, l, zeros.angles()[k])
            })
        }
    };
    Ok(m)
}

/// Diagonal scaling turning a polynomial transform into its DCT.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalingKind {
    /// `cos kπ/2n`; the first entry is exactly 1.
    C2,
    /// `cos (k+½)π/2n`
    C4,
}

pub fn scaling_diag(kind: ScalingKind, n: usize) -> Vec<f64> {
    let nf = n as f64;
    (0..n)
        .map(|k| {
            let k = k as f64;
            match kind {
                ScalingKind::C2 => (k * PI / (2.0 * nf)).cos(),
                ScalingKind::C4 => ((k + 0.5) * PI / (2.0 * nf)).cos(),
            }
        })
        .collect()
}
