//! Exact matrix modules over the subalgebras ⟨h⟩, ⟨e⟩ and 𝔟 = ⟨h, e⟩ of sl2.
//!
//! Matrices have rational entries; `h` may additionally carry one formal
//! parameter `λ₀` on its diagonal, recorded as a 0/1 flag per basis vector.
//! Raising and Jordan cells put their ones below the diagonal:
//! `X[i+1][i] = 1`, so `e` sends basis vector `i` to basis vector `i + 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::actiongraph::{ActionGraph, GraphKind, Vertex, Window, WindowShape};
use crate::error::{Error, Result};
use crate::rootdata::Weight;

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Dense square or rectangular rational matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = QMat::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, q(x));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, o: &QMat) -> QMat {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = QMat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * o.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &QMat) -> QMat {
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &QMat) -> QMat {
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Q) -> QMat {
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// `self - μ I`.
    pub fn shift(&self, mu: &Q) -> QMat {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = m.get(i, i) - mu;
            m.set(i, i, v);
        }
        m
    }

    /// Kronecker product.
    pub fn kron(&self, o: &QMat) -> QMat {
        let mut out = QMat::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        let b = o.get(k, l);
                        if !b.is_zero() {
                            out.set(i * o.rows + k, j * o.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// `a ⊗ 1 + 1 ⊗ b`.
    pub fn kron_sum(a: &QMat, b: &QMat) -> QMat {
        a.kron(&QMat::identity(b.rows)).add(&QMat::identity(a.rows).kron(b))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j).is_zero()))
    }

    fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|i| (0..i.min(self.cols)).all(|j| self.get(i, j).is_zero()))
    }

    fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    fn apply(&self, v: &[Q]) -> Vec<Q> {
        (0..self.rows)
            .map(|i| {
                let mut s = Q::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        s += a * x;
                    }
                }
                s
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::default();
        for j in 0..self.cols {
            e.insert(self.column(j));
        }
        e.rank()
    }

    /// Basis of the kernel.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let (rref, pivots) = self.rref();
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![Q::zero(); self.cols];
                v[free] = Q::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -rref.get(r, free).clone();
                }
                v
            })
            .collect()
    }

    fn rref(&self) -> (QMat, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..a.cols {
                    a.data.swap(p * a.cols + j, r * a.cols + j);
                }
            }
            let inv = a.get(r, c).recip();
            for j in 0..a.cols {
                let v = a.get(r, j) * &inv;
                a.set(r, j, v);
            }
            for i in 0..a.rows {
                if i != r && !a.get(i, c).is_zero() {
                    let f = a.get(i, c).clone();
                    for j in 0..a.cols {
                        let t = a.get(r, j);
                        if !t.is_zero() {
                            let v = a.get(i, j) - &f * t;
                            a.set(i, j, v);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == a.rows {
                break;
            }
        }
        (a, pivots)
    }
}

/// Incremental row echelon basis of a subspace.
#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, Vec<Q>)>,
}

impl Echelon {
    fn insert(&mut self, mut v: Vec<Q>) -> bool {
        for (p, row) in &self.rows {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                for (x, y) in v.iter_mut().zip(row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rows.push((p, v));
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn vectors(&self) -> impl Iterator<Item = &Vec<Q>> {
        self.rows.iter().map(|(_, v)| v)
    }
}

/// Dimension of the span of `vs`.
fn span_rank(vs: impl IntoIterator<Item = Vec<Q>>) -> usize {
    let mut e = Echelon::default();
    for v in vs {
        e.insert(v);
    }
    e.rank()
}

/// `rank(X^j)` for `j = 0, 1, …` until it stabilises (last entry repeats
/// forever after). Computed along the image chain `im X^j = X · im X^{j-1}`.
pub fn power_ranks(x: &QMat) -> Vec<usize> {
    let n = x.rows();
    let mut ranks = vec![n];
    let mut basis: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut v = vec![Q::zero(); n];
            v[i] = Q::one();
            v
        })
        .collect();
    loop {
        let mut e = Echelon::default();
        for v in &basis {
            e.insert(x.apply(v));
        }
        let r = e.rank();
        let last = *ranks.last().expect("non-empty");
        ranks.push(r);
        if r == last || r == 0 {
            return ranks;
        }
        basis = e.vectors().cloned().collect();
    }
}

/// Jordan block sizes with multiplicities from a stabilised rank sequence.
fn blocks_from_ranks(ranks: &[usize]) -> BTreeMap<usize, usize> {
    let r = |j: usize| ranks[j.min(ranks.len() - 1)];
    let mut out = BTreeMap::new();
    for j in 1..ranks.len() {
        let at_least_j = r(j - 1) - r(j);
        let at_least_next = r(j) - r(j + 1);
        if at_least_j > at_least_next {
            out.insert(j, at_least_j - at_least_next);
        }
    }
    out
}

/// Eigenvalue `c·λ₀ + q` with `c ∈ {0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shift {
    pub formal: bool,
    pub q: Q,
}

impl Shift {
    pub fn formal(q: Q) -> Self {
        Shift { formal: true, q }
    }

    pub fn plain(q: Q) -> Self {
        Shift { formal: false, q }
    }

    pub fn formal_int(k: i64) -> Self {
        Shift::formal(self::q(k))
    }

    pub fn plain_int(k: i64) -> Self {
        Shift::plain(self::q(k))
    }

    pub fn add(&self, o: &Shift) -> Result<Shift> {
        if self.formal && o.formal {
            return Err(Error::rejected("sum of two formal parameters is not representable"));
        }
        Ok(Shift {
            formal: self.formal || o.formal,
            q: &self.q + &o.q,
        })
    }

    fn offset_by(&self, k: i64) -> Shift {
        Shift {
            formal: self.formal,
            q: &self.q + q(k),
        }
    }
}

impl fmt::Display for Shift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.formal {
            return write!(f, "{}", self.q);
        }
        if self.q.is_zero() {
            f.write_str("λ₀")
        } else if self.q.is_negative() {
            write!(f, "λ₀{}", self.q)
        } else {
            write!(f, "λ₀+{}", self.q)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Subalgebra {
    /// ⟨h⟩
    H,
    /// ⟨e⟩
    E,
    /// 𝔟 = ⟨h, e⟩
    B,
}

impl fmt::Display for Subalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Subalgebra::H => "h",
            Subalgebra::E => "e",
            Subalgebra::B => "b",
        })
    }
}

/// Action of `h`: `matrix + λ₀ · diag(formal)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HAction {
    pub matrix: QMat,
    pub formal: Vec<bool>,
}

impl HAction {
    fn is_parameterized(&self) -> bool {
        self.formal.iter().any(|&f| f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixModule {
    algebra: Subalgebra,
    dim: usize,
    h: Option<HAction>,
    e: Option<QMat>,
}

impl MatrixModule {
    /// Validates shapes, the presence of the generators of `algebra`, and
    /// `[h, e] = 2e` (including `[diag(formal), e] = 0`).
    pub fn new(algebra: Subalgebra, h: Option<HAction>, e: Option<QMat>) -> Result<Self> {
        let needs_h = matches!(algebra, Subalgebra::H | Subalgebra::B);
        let needs_e = matches!(algebra, Subalgebra::E | Subalgebra::B);
        if needs_h != h.is_some() || needs_e != e.is_some() {
            return Err(Error::InvalidArgument(format!(
                "a {algebra}-module needs exactly its generators"
            )));
        }
        let dim = h
            .as_ref()
            .map(|h| h.matrix.rows())
            .or(e.as_ref().map(QMat::rows))
            .unwrap_or(0);
        if dim == 0 {
            return Err(Error::InvalidArgument("module dimension must be positive".into()));
        }
        if let Some(h) = &h {
            if h.matrix.rows() != dim || h.matrix.cols() != dim || h.formal.len() != dim {
                return Err(Error::InvalidArgument("h has inconsistent shape".into()));
            }
        }
        if let Some(e) = &e {
            if e.rows() != dim || e.cols() != dim {
                return Err(Error::InvalidArgument("e has inconsistent shape".into()));
            }
        }
        let m = MatrixModule { algebra, dim, h, e };
        if !m.relations_hold() {
            return Err(Error::InvalidArgument("[h, e] = 2e fails".into()));
        }
        Ok(m)
    }

    pub fn algebra(&self) -> Subalgebra {
        self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn h(&self) -> Option<&HAction> {
        self.h.as_ref()
    }

    pub fn e(&self) -> Option<&QMat> {
        self.e.as_ref()
    }

    pub fn is_parameterized(&self) -> bool {
        self.h.as_ref().is_some_and(HAction::is_parameterized)
    }

    pub fn relations_hold(&self) -> bool {
        let (Some(h), Some(e)) = (&self.h, &self.e) else {
            return true;
        };
        let comm = h.matrix.mul(e).sub(&e.mul(&h.matrix));
        if comm != e.scale(&q(2)) {
            return false;
        }
        // the formal diagonal must commute with e
        (0..self.dim).all(|i| (0..self.dim).all(|j| h.formal[i] == h.formal[j] || e.get(i, j).is_zero()))
    }

    /// Multiset of `h`-eigenvalues, when `h` is triangular.
    pub fn h_spectrum(&self) -> Option<BTreeMap<Shift, usize>> {
        let h = self.h.as_ref()?;
        if !(h.matrix.is_lower_triangular() || h.matrix.is_upper_triangular()) {
            return None;
        }
        let mut out = BTreeMap::new();
        for i in 0..self.dim {
            *out.entry(Shift {
                formal: h.formal[i],
                q: h.matrix.get(i, i).clone(),
            })
            .or_insert(0) += 1;
        }
        Some(out)
    }
}

fn check_size(k: usize) -> Result<()> {
    if k < 1 {
        Err(Error::InvalidArgument("size k must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn lower_shift(k: usize) -> QMat {
    let mut n = QMat::zeros(k, k);
    for i in 1..k {
        n.set(i, i - 1, Q::one());
    }
    n
}

/// Simple ⟨h⟩-module `K`: `h` acts by `offset`.
pub fn make_k(offset: Shift) -> MatrixModule {
    let mut m = QMat::zeros(1, 1);
    m.set(0, 0, offset.q);
    MatrixModule::new(
        Subalgebra::H,
        Some(HAction {
            matrix: m,
            formal: vec![offset.formal],
        }),
        None,
    )
    .expect("K is a valid h-module")
}

/// Uniserial ⟨e⟩-module `F(offset, k)`: a k × k Jordan cell with eigenvalue `offset`.
pub fn make_f(offset: Q, k: usize) -> Result<MatrixModule> {
    check_size(k)?;
    let e = QMat::identity(k).scale(&offset).add(&lower_shift(k));
    MatrixModule::new(Subalgebra::E, None, Some(e))
}

/// 𝔟-module `Q(offset, k)`: weights `offset, offset + 2, …, offset + 2(k-1)`
/// with `e` raising each weight vector to the next.
pub fn make_q(offset: Shift, k: usize) -> Result<MatrixModule> {
    check_size(k)?;
    let mut h = QMat::zeros(k, k);
    for i in 0..k {
        h.set(i, i, &offset.q + q(2 * i as i64));
    }
    MatrixModule::new(
        Subalgebra::B,
        Some(HAction {
            matrix: h,
            formal: vec![offset.formal; k],
        }),
        Some(lower_shift(k)),
    )
}

/// The natural two-dimensional sl2-module restricted to a subalgebra.
pub fn restrict_v(algebra: Subalgebra) -> MatrixModule {
    match algebra {
        Subalgebra::E => make_f(Q::zero(), 2).expect("size 2"),
        Subalgebra::H => MatrixModule::new(
            Subalgebra::H,
            Some(HAction {
                matrix: QMat::from_i64(&[vec![-1, 0], vec![0, 1]]),
                formal: vec![false, false],
            }),
            None,
        )
        .expect("diagonal h"),
        Subalgebra::B => make_q(Shift::plain_int(-1), 2).expect("size 2"),
    }
}

/// Tensor product with the Leibniz action `x ⊗ 1 + 1 ⊗ x`.
pub fn tensor(a: &MatrixModule, b: &MatrixModule) -> Result<MatrixModule> {
    if a.algebra != b.algebra {
        return Err(Error::InvalidArgument(format!(
            "cannot tensor a {}-module with a {}-module",
            a.algebra, b.algebra
        )));
    }
    if a.is_parameterized() && b.is_parameterized() {
        return Err(Error::rejected("both factors carry the formal parameter"));
    }
    let h = match (&a.h, &b.h) {
        (Some(ha), Some(hb)) => {
            let mut formal = Vec::with_capacity(a.dim * b.dim);
            for &fa in &ha.formal {
                for &fb in &hb.formal {
                    formal.push(fa || fb);
                }
            }
            Some(HAction {
                matrix: QMat::kron_sum(&ha.matrix, &hb.matrix),
                formal,
            })
        }
        _ => None,
    };
    let e = match (&a.e, &b.e) {
        (Some(ea), Some(eb)) => Some(QMat::kron_sum(ea, eb)),
        _ => None,
    };
    MatrixModule::new(a.algebra, h, e)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Indecomposable {
    K(Shift),
    F(Shift, usize),
    Q(Shift, usize),
}

impl Indecomposable {
    pub fn size(&self) -> usize {
        match self {
            Indecomposable::K(_) => 1,
            Indecomposable::F(_, k) | Indecomposable::Q(_, k) => *k,
        }
    }

    pub fn offset(&self) -> &Shift {
        match self {
            Indecomposable::K(s) | Indecomposable::F(s, _) | Indecomposable::Q(s, _) => s,
        }
    }

    fn family(&self) -> &'static str {
        match self {
            Indecomposable::K(_) => "K",
            Indecomposable::F(..) => "F",
            Indecomposable::Q(..) => "Q",
        }
    }

    pub fn build(&self) -> Result<MatrixModule> {
        match self {
            Indecomposable::K(s) => Ok(make_k(s.clone())),
            Indecomposable::F(s, k) => {
                if s.formal {
                    return Err(Error::InvalidArgument("F has no formal parameter".into()));
                }
                make_f(s.q.clone(), *k)
            }
            Indecomposable::Q(s, k) => make_q(s.clone(), *k),
        }
    }
}

impl fmt::Display for Indecomposable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Indecomposable::K(s) => write!(f, "K({s})"),
            Indecomposable::F(s, k) => write!(f, "F({s},{k})"),
            Indecomposable::Q(s, k) => write!(f, "Q({s},{k})"),
        }
    }
}

/// Multiset of indecomposables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndecompList {
    parts: BTreeMap<Indecomposable, usize>,
}

impl IndecompList {
    pub fn parts(&self) -> &BTreeMap<Indecomposable, usize> {
        &self.parts
    }

    pub fn push(&mut self, x: Indecomposable, m: usize) {
        if m > 0 {
            *self.parts.entry(x).or_insert(0) += m;
        }
    }

    pub fn multiplicity(&self, x: &Indecomposable) -> usize {
        self.parts.get(x).copied().unwrap_or(0)
    }

    pub fn dimension(&self) -> usize {
        self.parts.iter().map(|(x, m)| x.size() * m).sum()
    }

    /// h-eigenvalue multiset of the direct sum (K and Q parts only).
    pub fn h_spectrum(&self) -> BTreeMap<Shift, usize> {
        let mut out = BTreeMap::new();
        for (x, &m) in &self.parts {
            match x {
                Indecomposable::K(s) => *out.entry(s.clone()).or_insert(0) += m,
                Indecomposable::Q(s, k) => {
                    for i in 0..*k {
                        *out.entry(s.offset_by(2 * i as i64)).or_insert(0) += m;
                    }
                }
                Indecomposable::F(..) => {}
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.parts
                .iter()
                .map(|(x, m)| {
                    json!({
                        "family": x.family(),
                        "offset": x.offset().to_string(),
                        "formal": x.offset().formal,
                        "size": x.size(),
                        "multiplicity": m,
                    })
                })
                .collect(),
        )
    }
}

impl fmt::Display for IndecompList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (x, m) in &self.parts {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if *m > 1 {
                write!(f, "{m}{x}")?;
            } else {
                write!(f, "{x}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Rank data reported when a module leaves the target family: for each
/// eigenvalue, `rank((X - μ)^j)` for `j = 0, 1, …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantProfile {
    pub generator: &'static str,
    pub reason: String,
    pub rank_sequences: BTreeMap<Shift, Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposed {
    Family(IndecompList),
    OutsideFamily(InvariantProfile),
}

impl Decomposed {
    pub fn family(&self) -> Option<&IndecompList> {
        match self {
            Decomposed::Family(l) => Some(l),
            Decomposed::OutsideFamily(_) => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Decomposed::Family(l) => json!({"verdict": "decomposed", "parts": l.to_json()}),
            Decomposed::OutsideFamily(p) => json!({
                "verdict": "outside-family",
                "generator": p.generator,
                "reason": p.reason,
                "rank_sequences": p.rank_sequences.iter().map(|(s, r)| json!({"eigenvalue": s.to_string(), "ranks": r})).collect::<Vec<_>>(),
            }),
        }
    }
}

/// Restriction of `x` to the basis vectors in `idx`; the caller guarantees
/// the span of those vectors is invariant.
fn principal_block(x: &QMat, idx: &[usize]) -> QMat {
    let mut out = QMat::zeros(idx.len(), idx.len());
    for (a, &i) in idx.iter().enumerate() {
        for (b, &j) in idx.iter().enumerate() {
            out.set(a, b, x.get(i, j).clone());
        }
    }
    out
}

/// Best rational approximation with denominator at most `max_den`.
fn rational_near(x: f64, max_den: i64) -> Q {
    let mut best = (f64::INFINITY, Q::zero());
    for d in 1..=max_den {
        let n = (x * d as f64).round() as i64;
        let err = (x - n as f64 / d as f64).abs();
        if err < best.0 - 1e-12 {
            best = (err, Q::new(BigInt::from(n), BigInt::from(d)));
        }
    }
    best.1
}

/// Candidate rational eigenvalues; exact from the diagonal when triangular,
/// otherwise rounded floating eigenvalues (certified by the caller).
fn eigenvalue_candidates(x: &QMat) -> BTreeSet<Q> {
    if x.is_lower_triangular() || x.is_upper_triangular() {
        return (0..x.rows()).map(|i| x.get(i, i).clone()).collect();
    }
    let n = x.rows();
    let m = nalgebra::DMatrix::from_fn(n, n, |i, j| x.get(i, j).to_f64().unwrap_or(f64::NAN));
    m.complex_eigenvalues()
        .iter()
        .filter(|z| z.im.abs() < 1e-6)
        .map(|z| rational_near(z.re, 64))
        .collect()
}

/// Generalised-eigenspace rank sequences of a rational matrix. `Err` carries
/// the dimension left unexplained when some eigenvalue is not rational.
fn jordan_data(x: &QMat) -> std::result::Result<BTreeMap<Q, Vec<usize>>, usize> {
    let n = x.rows();
    let mut out = BTreeMap::new();
    let mut covered = 0;
    for mu in eigenvalue_candidates(x) {
        let ranks = power_ranks(&x.shift(&mu));
        let gen_dim = n - ranks.last().expect("non-empty");
        if gen_dim > 0 {
            covered += gen_dim;
            out.insert(mu, ranks);
        }
    }
    if covered == n {
        Ok(out)
    } else {
        Err(n - covered)
    }
}

/// Splits basis indices by the formal flag of `h`; each block is invariant
/// under every generator (checked by [`MatrixModule::new`] for `e`, here for `h`).
fn formal_blocks(m: &MatrixModule) -> Result<Vec<(bool, Vec<usize>)>> {
    let Some(h) = &m.h else {
        return Ok(vec![(false, (0..m.dim).collect())]);
    };
    for i in 0..m.dim {
        for j in 0..m.dim {
            if h.formal[i] != h.formal[j] && !h.matrix.get(i, j).is_zero() {
                return Err(Error::rejected("h mixes formal and plain weight vectors"));
            }
        }
    }
    Ok([false, true]
        .into_iter()
        .map(|c| (c, (0..m.dim).filter(|&i| h.formal[i] == c).collect::<Vec<_>>()))
        .filter(|(_, idx)| !idx.is_empty())
        .collect())
}

/// Decomposes a module into the family members `K`, `F` or `Q`.
///
/// ⟨e⟩ and ⟨h⟩: Jordan structure from rank sequences of `(X - μ)^j`.
/// 𝔟: requires `h` semisimple; weight spaces along each `μ + 2ℤ` chain form
/// a linear quiver representation, whose interval multiplicities
/// `n[a,b] = r(a,b) - r(a-2,b) - r(a,b+2) + r(a-2,b+2)` (with
/// `r(a,b) = rank e^{(b-a)/2} : W_a → W_b`) give `Q(a, (b-a)/2 + 1)`. The
/// answer is re-checked by comparing every `r(a,b)` with the direct sum's.
pub fn decompose(m: &MatrixModule) -> Result<Decomposed> {
    let mut list = IndecompList::default();
    for (formal, idx) in formal_blocks(m)? {
        let outcome = match m.algebra {
            Subalgebra::E => decompose_e(&principal_block(m.e.as_ref().expect("e-module has e"), &idx), formal)?,
            Subalgebra::H => decompose_h(
                &principal_block(&m.h.as_ref().expect("h-module has h").matrix, &idx),
                formal,
            )?,
            Subalgebra::B => decompose_b(
                &principal_block(&m.h.as_ref().expect("b-module has h").matrix, &idx),
                &principal_block(m.e.as_ref().expect("b-module has e"), &idx),
                formal,
            )?,
        };
        match outcome {
            Decomposed::Family(l) => {
                for (x, k) in l.parts {
                    list.push(x, k);
                }
            }
            other => return Ok(other),
        }
    }
    if list.dimension() != m.dim {
        return Err(Error::internal(format!(
            "decomposition has dimension {} for a module of dimension {}",
            list.dimension(),
            m.dim
        )));
    }
    if let (Some(expected), true) = (m.h_spectrum(), m.algebra != Subalgebra::E) {
        if list.h_spectrum() != expected {
            return Err(Error::internal("decomposition does not conserve the h-spectrum"));
        }
    }
    Ok(Decomposed::Family(list))
}

fn profile(generator: &'static str, reason: String, data: BTreeMap<Q, Vec<usize>>, formal: bool) -> Decomposed {
    Decomposed::OutsideFamily(InvariantProfile {
        generator,
        reason,
        rank_sequences: data.into_iter().map(|(q, r)| (Shift { formal, q }, r)).collect(),
    })
}

fn decompose_e(e: &QMat, formal: bool) -> Result<Decomposed> {
    let data = jordan_data(e)
        .map_err(|missing| Error::rejected(format!("e has {missing} dimensions of non-rational spectrum")))?;
    let mut list = IndecompList::default();
    for (mu, ranks) in &data {
        for (size, count) in blocks_from_ranks(ranks) {
            list.push(Indecomposable::F(Shift { formal, q: mu.clone() }, size), count);
        }
    }
    Ok(Decomposed::Family(list))
}

fn decompose_h(h: &QMat, formal: bool) -> Result<Decomposed> {
    let data = jordan_data(h)
        .map_err(|missing| Error::rejected(format!("h has {missing} dimensions of non-rational spectrum")))?;
    if data.values().any(|r| r.len() > 2 && r[1] != r[2]) {
        return Ok(profile("h", "h is not semisimple".into(), data, formal));
    }
    let mut list = IndecompList::default();
    for (mu, ranks) in &data {
        list.push(Indecomposable::K(Shift { formal, q: mu.clone() }), ranks[0] - ranks[1]);
    }
    Ok(Decomposed::Family(list))
}

fn decompose_b(h: &QMat, e: &QMat, formal: bool) -> Result<Decomposed> {
    let data = jordan_data(h)
        .map_err(|missing| Error::rejected(format!("h has {missing} dimensions of non-rational spectrum")))?;
    if data.values().any(|r| r.len() > 2 && r[1] != r[2]) {
        return Ok(profile("h", "h is not semisimple".into(), data, formal));
    }
    // weight spaces
    let spaces: BTreeMap<Q, Vec<Vec<Q>>> = data.keys().map(|mu| (mu.clone(), h.shift(mu).kernel())).collect();
    // chains μ + 2ℤ keyed by μ mod 2
    let two = q(2);
    let mut chains: BTreeMap<Q, (Q, Q)> = BTreeMap::new();
    for mu in spaces.keys() {
        let residue = mu - &two * (mu / &two).floor();
        let entry = chains.entry(residue).or_insert((mu.clone(), mu.clone()));
        if *mu < entry.0 {
            entry.0 = mu.clone();
        }
        if *mu > entry.1 {
            entry.1 = mu.clone();
        }
    }

    let mut list = IndecompList::default();
    for (lo, hi) in chains.values() {
        let steps = ((hi - lo) / &two).to_integer().to_usize().expect("chain length fits") + 1;
        let weight = |i: usize| lo + q(2 * i as i64);
        // r[a][b] = rank e^{b-a}: W_a → W_b, indices along the chain
        let mut r = vec![vec![0usize; steps]; steps];
        for (a, row) in r.iter_mut().enumerate() {
            let mut vs: Vec<Vec<Q>> = spaces.get(&weight(a)).cloned().unwrap_or_default();
            for (b, slot) in row.iter_mut().enumerate().skip(a) {
                if b > a {
                    vs = vs.iter().map(|v| e.apply(v)).collect();
                }
                *slot = span_rank(vs.iter().cloned());
            }
        }
        let rank = |a: isize, b: isize| -> i64 {
            if a < 0 || b >= steps as isize || a > b {
                0
            } else {
                r[a as usize][b as usize] as i64
            }
        };
        let mut counts = vec![vec![0i64; steps]; steps];
        for a in 0..steps as isize {
            for b in a..steps as isize {
                let n = rank(a, b) - rank(a - 1, b) - rank(a, b + 1) + rank(a - 1, b + 1);
                if n < 0 {
                    return Err(Error::internal(format!("negative interval multiplicity {n}")));
                }
                counts[a as usize][b as usize] = n;
                if n > 0 {
                    let offset = Shift {
                        formal,
                        q: weight(a as usize),
                    };
                    list.push(Indecomposable::Q(offset, (b - a) as usize + 1), n as usize);
                }
            }
        }
        // certificate: the direct sum of the intervals has the same rank profile
        for a in 0..steps {
            for b in a..steps {
                let predicted: i64 = (0..=a)
                    .flat_map(|c| (b..steps).map(move |d| (c, d)))
                    .map(|(c, d)| counts[c][d])
                    .sum();
                if predicted != r[a][b] as i64 {
                    return Err(Error::internal("interval decomposition fails its rank certificate"));
                }
            }
        }
    }
    Ok(Decomposed::Family(list))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubalgebraCase {
    H,
    E,
    B,
}

impl SubalgebraCase {
    fn algebra(self) -> Subalgebra {
        match self {
            SubalgebraCase::H => Subalgebra::H,
            SubalgebraCase::E => Subalgebra::E,
            SubalgebraCase::B => Subalgebra::B,
        }
    }
}

/// Family member at position `i` of the window.
fn family_member(case: SubalgebraCase, i: i64) -> Indecomposable {
    match case {
        SubalgebraCase::H => Indecomposable::K(Shift::formal_int(i)),
        SubalgebraCase::E => Indecomposable::F(Shift::plain_int(0), i as usize),
        SubalgebraCase::B => Indecomposable::Q(Shift::formal_int(-(i - 1)), i as usize),
    }
}

/// Action graph of `− ⊗ V` on a family of indecomposables, every arrow
/// computed by `tensor` and `decompose`.
///
/// Windows: `h`: `K(λ₀+j)` for `|j| ≤ n`; `e`: `F(0,k)` for `1 ≤ k ≤ n`;
/// `b`: `Q(λ₀-(k-1), k)` for `1 ≤ k ≤ n`. A vertex is interior when every
/// summand of its tensor product lies in the window.
pub fn subalgebra_graph(case: SubalgebraCase, n: usize) -> Result<ActionGraph> {
    if n < 2 {
        return Err(Error::InvalidArgument("subalgebra window must be at least 2".into()));
    }
    let range: Vec<i64> = match case {
        SubalgebraCase::H => (-(n as i64)..=n as i64).collect(),
        _ => (1..=n as i64).collect(),
    };
    let members: Vec<Indecomposable> = range.iter().map(|&i| family_member(case, i)).collect();
    let index: BTreeMap<&Indecomposable, usize> = members.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let v = restrict_v(case.algebra());
    let mut arrows = Vec::new();
    let mut vertices = Vec::new();
    for (i, x) in members.iter().enumerate() {
        let product = tensor(&x.build()?, &v)?;
        let parts = match decompose(&product)? {
            Decomposed::Family(l) => l,
            Decomposed::OutsideFamily(p) => {
                return Err(Error::internal(format!("{x} ⊗ V left the family: {}", p.reason)))
            }
        };
        let mut interior = true;
        for (y, &m) in parts.parts() {
            match index.get(y) {
                Some(&j) => arrows.push(((i, j), m as u64)),
                None => interior = false,
            }
        }
        vertices.push(Vertex {
            label: x.to_string(),
            weight: Some(Weight(vec![range[i]])),
            interior,
        });
    }
    let window = Window {
        shape: WindowShape::FamilyIndex,
        bound: n as i64,
    };
    let kind = match case {
        SubalgebraCase::H => GraphKind::SubalgebraH,
        SubalgebraCase::E => GraphKind::SubalgebraE,
        SubalgebraCase::B => GraphKind::SubalgebraB,
    };
    let mut g = ActionGraph::new(kind, vertices, arrows, window)?;
    match case {
        SubalgebraCase::H => {
            g = g.with_note(
                "h-weights of V are ±1, so tensoring shifts K by ±1; indexing the family by even shifts only gives the same A∞∞ shape on each coset",
            )
        }
        SubalgebraCase::B => {
            g = g.with_note(
                "the family closed under ⊗V is Q(λ₀-(k-1),k); an offset of -2(k-1) is not preserved by ⊗V with weights ±1",
            )
        }
        SubalgebraCase::E => {}
    }
    Ok(g)
}
