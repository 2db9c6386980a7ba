//! Exact arithmetic in the cyclotomic field ℚ(ζ_m).
//!
//! Elements are coefficient vectors over the power basis `1, ζ, …, ζ^{d-1}`
//! with `d = φ(m)`, reduced modulo the m-th cyclotomic polynomial, so equal
//! field elements have equal vectors.

use std::sync::Arc;

use num_rational::Rational64;
use num_traits::{One, Zero};

/// Integer coefficients of Φ_n, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic index must be positive");
    // x^n - 1 divided by Φ_d for every proper divisor d
    let mut p = vec![0i64; n + 1];
    p[0] = -1;
    p[n] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        p = divide_exact(&p, &cyclotomic_polynomial(d));
    }
    p
}

fn divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd];
    let mut q = vec![0i64; num.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd] / lead;
        q[k] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact polynomial division");
    q
}

#[derive(Debug)]
struct FieldData {
    m: usize,
    degree: usize,
    /// ζ^k reduced, for k in 0..m.
    powers: Vec<Vec<Rational64>>,
}

/// The field ℚ(ζ_m); cheap to clone.
#[derive(Clone, Debug)]
pub struct CyclotomicField(Arc<FieldData>);

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.0.m == other.0.m
    }
}

impl Eq for CyclotomicField {}

impl CyclotomicField {
    pub fn new(m: usize) -> Self {
        let phi = cyclotomic_polynomial(m);
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(m);
        let mut cur = vec![Rational64::zero(); degree];
        cur[0] = Rational64::one();
        for _ in 0..m {
            powers.push(cur.clone());
            // multiply by ζ and substitute ζ^d = -Σ φ_i ζ^i
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = Rational64::zero();
            if !top.is_zero() {
                for i in 0..degree {
                    cur[i] -= top * Rational64::from_integer(phi[i]);
                }
            }
        }
        CyclotomicField(Arc::new(FieldData { m, degree, powers }))
    }

    pub fn order(&self) -> usize {
        self.0.m
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn zero(&self) -> Cyc {
        Cyc {
            field: self.clone(),
            c: vec![Rational64::zero(); self.0.degree],
        }
    }

    pub fn one(&self) -> Cyc {
        self.rational(Rational64::one())
    }

    pub fn integer(&self, k: i64) -> Cyc {
        self.rational(Rational64::from_integer(k))
    }

    pub fn rational(&self, q: Rational64) -> Cyc {
        let mut z = self.zero();
        z.c[0] = q;
        z
    }

    /// ζ_m^k for any integer k.
    pub fn zeta_pow(&self, k: i64) -> Cyc {
        let m = self.0.m as i64;
        Cyc {
            field: self.clone(),
            c: self.0.powers[k.rem_euclid(m) as usize].clone(),
        }
    }

    /// A primitive n-th root of unity, `n | m`.
    pub fn root_of_unity(&self, n: usize) -> Cyc {
        assert!(self.0.m.is_multiple_of(n), "ζ_{n} is not in ℚ(ζ_{})", self.0.m);
        self.zeta_pow((self.0.m / n) as i64)
    }
}

/// An element of ℚ(ζ_m).
#[derive(Clone, Debug)]
pub struct Cyc {
    field: CyclotomicField,
    c: Vec<Rational64>,
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c
    }
}

impl Eq for Cyc {}

impl std::hash::Hash for Cyc {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl PartialOrd for Cyc {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on coefficients; only used for deterministic sorting.
impl Ord for Cyc {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.c.cmp(&other.c)
    }
}

impl Cyc {
    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational64] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<Rational64> {
        if self.c[1..].iter().all(Zero::is_zero) {
            Some(self.c[0])
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    pub fn add(&self, o: &Cyc) -> Cyc {
        Cyc {
            field: self.field.clone(),
            c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Cyc) -> Cyc {
        Cyc {
            field: self.field.clone(),
            c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> Cyc {
        Cyc {
            field: self.field.clone(),
            c: self.c.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, q: Rational64) -> Cyc {
        Cyc {
            field: self.field.clone(),
            c: self.c.iter().map(|a| a * q).collect(),
        }
    }

    pub fn mul(&self, o: &Cyc) -> Cyc {
        let f = &self.field.0;
        let mut out = vec![Rational64::zero(); f.degree];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, p) in f.powers[(i + j) % f.m].iter().enumerate() {
                    if !p.is_zero() {
                        out[k] += ab * p;
                    }
                }
            }
        }
        Cyc {
            field: self.field.clone(),
            c: out,
        }
    }

    /// Image under the automorphism ζ ↦ ζ^k, `gcd(k, m) = 1`.
    pub fn galois(&self, k: i64) -> Cyc {
        let f = &self.field.0;
        let mut out = vec![Rational64::zero(); f.degree];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let e = (k * i as i64).rem_euclid(f.m as i64) as usize;
            for (t, p) in f.powers[e].iter().enumerate() {
                out[t] += a * p;
            }
        }
        Cyc {
            field: self.field.clone(),
            c: out,
        }
    }

    /// Complex conjugate (ζ ↦ ζ^{-1}).
    pub fn conj(&self) -> Cyc {
        self.galois(-1)
    }

    /// Numerical value, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.field.0.m as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, a) in self.c.iter().enumerate() {
            let v = *a.numer() as f64 / *a.denom() as f64;
            let t = 2.0 * std::f64::consts::PI * i as f64 / m;
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }
}
