//! Finite subgroups of SL2(ℂ), their character tables, and McKay graphs.
//!
//! Groups are enumerated exactly as 2×2 matrices over a cyclotomic field.
//! Character tables are computed with Dixon's method: simultaneous
//! eigenvectors of the class-multiplication matrices over a prime field
//! `F_p` with `p ≡ 1 (mod exponent)`, lifted to cyclotomic values through
//! eigenvalue multiplicities. Orthogonality is then checked exactly.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use serde_json::{json, Value};

use crate::actiongraph::{simplify_mixed, ActionGraph, GraphKind, Vertex, Window, WindowShape};
use crate::cyclotomic::{Cyc, CyclotomicField};
use crate::diagramcat::{smith_classify, DiagramFamily, DiagramId, EdgeGraph, SmithClass};
use crate::error::{Error, Result};

pub const DEFAULT_SIZE_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(usize),
    BinaryDihedral(usize),
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
}

impl GroupSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            GroupSpec::Cyclic(n) if n < 1 => Err(Error::InvalidArgument("cyclic group needs n ≥ 1".into())),
            GroupSpec::BinaryDihedral(n) if n < 2 => {
                Err(Error::InvalidArgument("binary dihedral group needs n ≥ 2".into()))
            }
            _ => Ok(()),
        }
    }

    /// Field ℚ(ζ_m) holding both the matrix entries and the character values.
    fn field_order(&self) -> usize {
        match *self {
            GroupSpec::Cyclic(n) => n,
            GroupSpec::BinaryDihedral(n) => (2 * n).lcm(&4),
            GroupSpec::BinaryTetrahedral => 12,
            GroupSpec::BinaryOctahedral => 24,
            GroupSpec::BinaryIcosahedral => 60,
        }
    }

    /// Affine diagram the McKay correspondence predicts.
    pub fn expected_diagram(&self) -> DiagramId {
        match *self {
            GroupSpec::Cyclic(1) => DiagramId::new(DiagramFamily::AffA, Some(0)),
            GroupSpec::Cyclic(2) => DiagramId::new(DiagramFamily::AffA12, None),
            GroupSpec::Cyclic(n) => DiagramId::new(DiagramFamily::AffA, Some(n - 1)),
            GroupSpec::BinaryDihedral(n) => DiagramId::new(DiagramFamily::AffD, Some(n + 2)),
            GroupSpec::BinaryTetrahedral => DiagramId::new(DiagramFamily::AffE6, None),
            GroupSpec::BinaryOctahedral => DiagramId::new(DiagramFamily::AffE7, None),
            GroupSpec::BinaryIcosahedral => DiagramId::new(DiagramFamily::AffE8, None),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic({n})"),
            GroupSpec::BinaryDihedral(n) => write!(f, "binary-dihedral({n})"),
            GroupSpec::BinaryTetrahedral => f.write_str("binary-tetrahedral"),
            GroupSpec::BinaryOctahedral => f.write_str("binary-octahedral"),
            GroupSpec::BinaryIcosahedral => f.write_str("binary-icosahedral"),
        }
    }
}

impl GroupSpec {
    /// Parses a family name plus optional parameter, e.g. `("cyclic", Some(5))`.
    pub fn parse(family: &str, n: Option<usize>) -> Result<Self> {
        let need =
            |n: Option<usize>| n.ok_or_else(|| Error::InvalidArgument(format!("'{family}' needs a parameter n")));
        let spec = match family.to_ascii_lowercase().replace('_', "-").as_str() {
            "cyclic" | "c" => GroupSpec::Cyclic(need(n)?),
            "binary-dihedral" | "dicyclic" | "bd" => GroupSpec::BinaryDihedral(need(n)?),
            "binary-tetrahedral" | "bt" | "2t" => GroupSpec::BinaryTetrahedral,
            "binary-octahedral" | "bo" | "2o" => GroupSpec::BinaryOctahedral,
            "binary-icosahedral" | "bi" | "2i" => GroupSpec::BinaryIcosahedral,
            other => return Err(Error::InvalidArgument(format!("unknown group family '{other}'"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Accepts `cyclic:5`, `binary-dihedral:3`, `binary-icosahedral`.
    fn from_str(s: &str) -> Result<Self> {
        let (fam, n) = match s.split_once(':') {
            Some((f, n)) => (
                f,
                Some(
                    n.trim()
                        .parse()
                        .map_err(|_| Error::InvalidArgument(format!("bad group parameter in '{s}'")))?,
                ),
            ),
            None => (s, None),
        };
        GroupSpec::parse(fam.trim(), n)
    }
}

/// 2×2 matrix over ℚ(ζ_m), row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2(pub [Cyc; 4]);

impl Mat2 {
    fn mul(&self, o: &Mat2) -> Mat2 {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &o.0;
        Mat2([
            a.mul(e).add(&b.mul(g)),
            a.mul(f).add(&b.mul(h)),
            c.mul(e).add(&d.mul(g)),
            c.mul(f).add(&d.mul(h)),
        ])
    }

    fn inverse_sl2(&self) -> Mat2 {
        let [a, b, c, d] = &self.0;
        Mat2([d.clone(), b.neg(), c.neg(), a.clone()])
    }

    pub fn det(&self) -> Cyc {
        let [a, b, c, d] = &self.0;
        a.mul(d).sub(&b.mul(c))
    }

    pub fn trace(&self) -> Cyc {
        self.0[0].add(&self.0[3])
    }

    fn identity(f: &CyclotomicField) -> Mat2 {
        Mat2([f.one(), f.zero(), f.zero(), f.one()])
    }
}

/// Quaternion `a + b i + c j + d k` as a matrix over ℚ(ζ_m), `4 | m`.
fn quaternion(f: &CyclotomicField, a: &Cyc, b: &Cyc, c: &Cyc, d: &Cyc) -> Mat2 {
    let i = f.root_of_unity(4);
    Mat2([
        a.add(&b.mul(&i)),
        c.add(&d.mul(&i)),
        c.neg().add(&d.mul(&i)),
        a.sub(&b.mul(&i)),
    ])
}

fn generators(spec: GroupSpec, f: &CyclotomicField) -> Vec<Mat2> {
    let half = Rational64::new(1, 2);
    let q = |x: Rational64| f.rational(x);
    let z = || f.zero();
    let one = || f.one();
    // i, j and ½(1 + i + j + k) generate the binary tetrahedral group
    let tetra = || {
        vec![
            quaternion(f, &z(), &one(), &z(), &z()),
            quaternion(f, &z(), &z(), &one(), &z()),
            quaternion(f, &q(half), &q(half), &q(half), &q(half)),
        ]
    };
    match spec {
        GroupSpec::Cyclic(n) => {
            let w = f.root_of_unity(n);
            vec![Mat2([w.clone(), z(), z(), w.conj()])]
        }
        GroupSpec::BinaryDihedral(n) => {
            let w = f.root_of_unity(2 * n);
            vec![
                Mat2([w.clone(), z(), z(), w.conj()]),
                Mat2([z(), one(), one().neg(), z()]),
            ]
        }
        GroupSpec::BinaryTetrahedral => tetra(),
        GroupSpec::BinaryOctahedral => {
            // (1 + i)/√2 with √2 = ζ8 + ζ8⁻¹
            let z8 = f.root_of_unity(8);
            let inv_sqrt2 = z8.add(&z8.conj()).scale(half);
            let mut g = tetra();
            g.push(quaternion(f, &inv_sqrt2, &inv_sqrt2, &z(), &z()));
            g
        }
        GroupSpec::BinaryIcosahedral => {
            // ½(φ + φ⁻¹ i + j), φ⁻¹ = ζ5 + ζ5⁻¹
            let z5 = f.root_of_unity(5);
            let phi_inv = z5.add(&z5.conj());
            let phi = phi_inv.add(&f.one());
            let icos = quaternion(f, &phi.scale(half), &phi_inv.scale(half), &q(half), &z());
            let mut g = tetra();
            g.push(icos);
            g
        }
    }
}

/// Group elements, conjugacy classes and the exact character table.
#[derive(Clone, Debug)]
pub struct GroupData {
    pub spec: GroupSpec,
    pub field: CyclotomicField,
    pub elements: Vec<Mat2>,
    /// Classes as element indices; class 0 is the identity.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub class_orders: Vec<usize>,
    /// `char_table[i][c]`: value of the i-th irreducible on class `c`;
    /// row 0 is the trivial character, rows sorted by degree.
    pub char_table: Vec<Vec<Cyc>>,
}

impl GroupData {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn dims(&self) -> Vec<u64> {
        self.char_table
            .iter()
            .map(|row| row[0].as_integer().expect("degrees are integers") as u64)
            .collect()
    }

    /// Character of the defining two-dimensional representation.
    pub fn natural_character(&self) -> Vec<Cyc> {
        self.classes.iter().map(|c| self.elements[c[0]].trace()).collect()
    }

    /// `⟨α, β⟩ = |G|⁻¹ Σ |C| α(C) conj β(C)`, exactly.
    pub fn inner_product(&self, a: &[Cyc], b: &[Cyc]) -> Cyc {
        let mut s = self.field.zero();
        for (c, class) in self.classes.iter().enumerate() {
            s = s.add(
                &a[c]
                    .mul(&b[c].conj())
                    .scale(Rational64::from_integer(class.len() as i64)),
            );
        }
        s.scale(Rational64::new(1, self.order() as i64))
    }

    fn integral_inner_product(&self, a: &[Cyc], b: &[Cyc]) -> Result<i64> {
        let v = self.inner_product(a, b);
        v.as_integer()
            .ok_or_else(|| Error::internal(format!("character inner product is not an integer: {v:?}")))
    }
}

fn close_group(gens: &[Mat2], f: &CyclotomicField, cap: usize) -> Result<(Vec<Mat2>, HashMap<Mat2, usize>)> {
    let id = Mat2::identity(f);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in gens {
            let p = elements[i].mul(g);
            if !index.contains_key(&p) {
                if elements.len() >= cap {
                    return Err(Error::rejected(format!("group closure exceeds the size cap {cap}")));
                }
                index.insert(p.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(p);
            }
        }
    }
    Ok((elements, index))
}

fn element_order(g: &Mat2, f: &CyclotomicField) -> usize {
    let id = Mat2::identity(f);
    let mut p = g.clone();
    let mut k = 1;
    while p != id {
        p = p.mul(g);
        k += 1;
    }
    k
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut r = p - 1;
    let mut d = 2;
    while d * d <= r {
        if r.is_multiple_of(d) {
            factors.push(d);
            while r.is_multiple_of(d) {
                r /= d;
            }
        }
        d += 1;
    }
    if r > 1 {
        factors.push(r);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("every prime has a primitive root")
}

/// Kernel of a `rows × cols` matrix over F_p, as basis vectors.
fn kernel_mod(mut a: Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = inv_mod(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..cols {
                    a[i][j] = (a[i][j] + p - f * a[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0u64; cols];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - a[row][free]) % p;
            }
            v
        })
        .collect()
}

/// Simultaneous eigenvectors of the class matrices over F_p, each normalised
/// to 1 at the identity class. `None` if p does not split them.
fn joint_eigenvectors(mats: &[Vec<Vec<u64>>], k: usize, p: u64) -> Option<Vec<Vec<u64>>> {
    // each space is a k × s basis stored as a list of column vectors
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k)
        .map(|i| {
            let mut e = vec![0; k];
            e[i] = 1;
            e
        })
        .collect()];
    for m in mats {
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            // image of the basis under m
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|v| {
                    (0..k)
                        .map(|r| (0..k).map(|c| m[r][c] * v[c] % p).sum::<u64>() % p)
                        .collect()
                })
                .collect();
            let s = basis.len();
            let mut found = 0;
            for lambda in 0..p {
                // columns (M - λ) v_j; kernel in coefficient space
                let sys: Vec<Vec<u64>> = (0..k)
                    .map(|r| {
                        (0..s)
                            .map(|j| (images[j][r] + p - lambda * basis[j][r] % p) % p)
                            .collect()
                    })
                    .collect();
                let ker = kernel_mod(sys, s, p);
                if ker.is_empty() {
                    continue;
                }
                found += ker.len();
                next.push(
                    ker.iter()
                        .map(|coef| {
                            (0..k)
                                .map(|r| (0..s).map(|j| coef[j] * basis[j][r] % p).sum::<u64>() % p)
                                .collect()
                        })
                        .collect(),
                );
                if found == s {
                    break;
                }
            }
            if found != s {
                return None;
            }
        }
        spaces = next;
    }
    let mut out = Vec::new();
    for basis in spaces {
        if basis.len() != 1 {
            return None;
        }
        let v = &basis[0];
        if v[0] == 0 {
            return None;
        }
        let inv = inv_mod(v[0], p);
        out.push(v.iter().map(|x| x * inv % p).collect());
    }
    Some(out)
}

/// Builds the group, its classes and character table, verifying determinant
/// one, Σ dim² = |G| and both orthogonality relations exactly.
pub fn build_group(spec: GroupSpec) -> Result<GroupData> {
    build_group_with_cap(spec, DEFAULT_SIZE_CAP)
}

pub fn build_group_with_cap(spec: GroupSpec, cap: usize) -> Result<GroupData> {
    spec.validate()?;
    let field = CyclotomicField::new(spec.field_order());
    let gens = generators(spec, &field);
    for g in &gens {
        if g.det() != field.one() {
            return Err(Error::internal(format!("generator of {spec} has determinant ≠ 1")));
        }
    }
    let (elements, index) = close_group(&gens, &field, cap)?;
    let order = elements.len();

    // conjugacy classes: orbits under conjugation by the generators
    let gen_inv: Vec<Mat2> = gens.iter().map(Mat2::inverse_sl2).collect();
    let mut class_of = vec![usize::MAX; order];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for start in 0..order {
        if class_of[start] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let mut members = vec![start];
        class_of[start] = c;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for (g, gi) in gens.iter().zip(&gen_inv) {
                let y = index[&g.mul(&elements[x]).mul(gi)];
                if class_of[y] == usize::MAX {
                    class_of[y] = c;
                    members.push(y);
                    queue.push_back(y);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    let k = classes.len();
    let class_orders: Vec<usize> = classes.iter().map(|c| element_order(&elements[c[0]], &field)).collect();
    let exponent = class_orders.iter().fold(1usize, |a, &b| a.lcm(&b));
    if !field.order().is_multiple_of(exponent) {
        return Err(Error::internal(format!(
            "exponent {exponent} does not divide field order {}",
            field.order()
        )));
    }
    let inverse_class: Vec<usize> = classes
        .iter()
        .map(|c| class_of[index[&elements[c[0]].inverse_sl2()]])
        .collect();
    // power maps: class of rep^s for s in 0..order(rep)
    let power_class: Vec<Vec<usize>> = classes
        .iter()
        .zip(&class_orders)
        .map(|(c, &o)| {
            let g = &elements[c[0]];
            let mut p = Mat2::identity(&field);
            (0..o)
                .map(|_| {
                    let cls = class_of[index[&p]];
                    p = p.mul(g);
                    cls
                })
                .collect()
        })
        .collect();

    // class coefficients a[i][j][l] = #{(x, y) ∈ C_i × C_j : xy = z_l}
    let mut coeff = vec![vec![vec![0u64; k]; k]; k];
    for (l, cl) in classes.iter().enumerate() {
        let z = &elements[cl[0]];
        for (j, cj) in classes.iter().enumerate() {
            for &y in cj {
                let x = index[&z.mul(&elements[y].inverse_sl2())];
                coeff[class_of[x]][j][l] += 1;
            }
        }
    }

    let char_table = dixon_table(
        &field,
        order,
        &classes,
        &inverse_class,
        &class_orders,
        &power_class,
        &coeff,
        exponent,
    )?;

    let data = GroupData {
        spec,
        field,
        elements,
        classes,
        class_of,
        class_orders,
        char_table,
    };
    verify(&data)?;
    Ok(data)
}

#[allow(clippy::too_many_arguments)]
fn dixon_table(
    field: &CyclotomicField,
    order: usize,
    classes: &[Vec<usize>],
    inverse_class: &[usize],
    class_orders: &[usize],
    power_class: &[Vec<usize>],
    coeff: &[Vec<Vec<u64>>],
    exponent: usize,
) -> Result<Vec<Vec<Cyc>>> {
    let k = classes.len();
    let e = exponent as u64;
    let mut p = (2 * order as u64 / e + 1) * e + 1;
    for _attempt in 0..50 {
        while !is_prime(p) {
            p += e;
        }
        // M_i acting on w: (M_i)[j][l] = a[i][j][l]
        let mats: Vec<Vec<Vec<u64>>> = (1..k)
            .map(|i| (0..k).map(|j| (0..k).map(|l| coeff[i][j][l] % p).collect()).collect())
            .collect();
        if let Some(vectors) = joint_eigenvectors(&mats, k, p) {
            if let Some(table) = lift_characters(
                field,
                order,
                classes,
                inverse_class,
                class_orders,
                power_class,
                &vectors,
                p,
                e,
            ) {
                let mut table = table;
                table.sort_by(|a, b| (a[0].clone(), a.clone()).cmp(&(b[0].clone(), b.clone())));
                // trivial character first among degree one
                if let Some(t) = table.iter().position(|row| row.iter().all(|v| *v == field.one())) {
                    let row = table.remove(t);
                    table.insert(0, row);
                }
                return Ok(table);
            }
        }
        p += e;
    }
    Err(Error::internal("no suitable prime found for the character table"))
}

#[allow(clippy::too_many_arguments)]
fn lift_characters(
    field: &CyclotomicField,
    order: usize,
    classes: &[Vec<usize>],
    inverse_class: &[usize],
    class_orders: &[usize],
    power_class: &[Vec<usize>],
    vectors: &[Vec<u64>],
    p: u64,
    e: u64,
) -> Option<Vec<Vec<Cyc>>> {
    let k = classes.len();
    let z = pow_mod(primitive_root(p), (p - 1) / e, p);
    let g_mod = order as u64 % p;
    let mut table = Vec::with_capacity(k);
    for w in vectors {
        // χ(1)² = |G| / Σ_l ω_l ω_{l*} / |C_l|
        let mut s = 0u64;
        for l in 0..k {
            s = (s + w[l] * w[inverse_class[l]] % p * inv_mod(classes[l].len() as u64 % p, p)) % p;
        }
        if s == 0 {
            return None;
        }
        let d2 = g_mod * inv_mod(s, p) % p;
        let d = (1..=order as u64)
            .take_while(|d| d * d <= order as u64)
            .find(|d| d * d % p == d2)?;
        // χ(g_l) ≡ ω_l d / |C_l|
        let chi_mod: Vec<u64> = (0..k)
            .map(|l| w[l] * d % p * inv_mod(classes[l].len() as u64 % p, p) % p)
            .collect();
        let mut row = Vec::with_capacity(k);
        for l in 0..k {
            let o = class_orders[l] as u64;
            let zo = pow_mod(z, e / o, p);
            let inv_o = inv_mod(o % p, p);
            let mut value = field.zero();
            let mut total = 0u64;
            for t in 0..o {
                // multiplicity of eigenvalue ζ_o^t
                let mut m = 0u64;
                for s in 0..o {
                    let root = pow_mod(zo, (o * o - s * t % o) % o, p);
                    m = (m + chi_mod[power_class[l][s as usize]] * root) % p;
                }
                m = m * inv_o % p;
                if m > d {
                    return None;
                }
                total += m;
                if m > 0 {
                    let step = (field.order() as u64 / o * t) as i64;
                    value = value.add(&field.zeta_pow(step).scale(Rational64::from_integer(m as i64)));
                }
            }
            if total != d {
                return None;
            }
            row.push(value);
        }
        table.push(row);
    }
    Some(table)
}

fn verify(g: &GroupData) -> Result<()> {
    let one = g.field.one();
    for x in &g.elements {
        if x.det() != one {
            return Err(Error::internal("group element with determinant ≠ 1"));
        }
    }
    let k = g.class_count();
    if g.char_table.len() != k {
        return Err(Error::internal(format!(
            "{} irreducibles for {k} classes",
            g.char_table.len()
        )));
    }
    let sum_sq: u64 = g.dims().iter().map(|d| d * d).sum();
    if sum_sq != g.order() as u64 {
        return Err(Error::internal(format!("Σ dim² = {sum_sq} ≠ |G| = {}", g.order())));
    }
    for i in 0..k {
        for j in 0..k {
            let ip = g.integral_inner_product(&g.char_table[i], &g.char_table[j])?;
            if ip != i64::from(i == j) {
                return Err(Error::internal(format!("row orthogonality fails at ({i},{j}): {ip}")));
            }
        }
    }
    // columns: Σ_χ χ(a) conj χ(b) = δ_ab |G| / |C_a|
    for a in 0..k {
        for b in 0..k {
            let s = (0..k).fold(g.field.zero(), |acc, i| {
                acc.add(&g.char_table[i][a].mul(&g.char_table[i][b].conj()))
            });
            let expected = if a == b {
                (g.order() / g.classes[a].len()) as i64
            } else {
                0
            };
            if s != g.field.integer(expected) {
                return Err(Error::internal(format!("column orthogonality fails at ({a},{b})")));
            }
        }
    }
    Ok(())
}

/// McKay graph: vertex per irreducible, `i → j` with multiplicity
/// `[V ⊗ L_i : L_j] = ⟨χ_V χ_i, χ_j⟩`.
pub fn mckay_multiplicities(g: &GroupData) -> Result<ActionGraph> {
    let v = g.natural_character();
    let k = g.class_count();
    let dims = g.dims();
    let mut arrows = Vec::new();
    for i in 0..k {
        let prod: Vec<Cyc> = v.iter().zip(&g.char_table[i]).map(|(a, b)| a.mul(b)).collect();
        for j in 0..k {
            let m = g.integral_inner_product(&prod, &g.char_table[j])?;
            if m < 0 {
                return Err(Error::internal(format!("negative McKay multiplicity at ({i},{j})")));
            }
            arrows.push(((i, j), m as u64));
        }
    }
    let vertices = (0..k)
        .map(|i| Vertex {
            label: format!("χ{i}[{}]", dims[i]),
            weight: None,
            interior: true,
        })
        .collect();
    let window = Window {
        shape: WindowShape::Complete,
        bound: k as i64,
    };
    Ok(ActionGraph::new(GraphKind::Mckay, vertices, arrows, window)?.with_note(format!("McKay graph of {}", g.spec)))
}

/// Square multiplicity matrix of a McKay graph, rows = sources.
pub fn mckay_matrix(graph: &ActionGraph) -> Vec<Vec<u64>> {
    let k = graph.len();
    (0..k)
        .map(|i| (0..k).map(|j| graph.multiplicity(i, j)).collect())
        .collect()
}

#[derive(Clone, Debug)]
pub struct McKayReport {
    pub spec: GroupSpec,
    pub order: usize,
    pub class_count: usize,
    pub dims: Vec<u64>,
    pub matrix: Vec<Vec<u64>>,
    pub diagram: DiagramId,
    pub symmetric: bool,
    pub balanced: bool,
    pub zero_diagonal: bool,
    pub graph: ActionGraph,
}

impl McKayReport {
    pub fn to_json(&self) -> Value {
        json!({
            "group": self.spec.to_string(),
            "order": self.order,
            "class_count": self.class_count,
            "dims": self.dims,
            "mckay_matrix": self.matrix,
            "diagram": self.diagram.to_string(),
        })
    }
}

/// Full pipeline: group, McKay graph, simplification, spectral
/// classification. Fails unless the result is a simply laced affine diagram.
pub fn mckay_certify(spec: GroupSpec) -> Result<McKayReport> {
    let g = build_group(spec)?;
    let graph = mckay_multiplicities(&g)?;
    let matrix = mckay_matrix(&graph);
    let dims = g.dims();
    let k = dims.len();
    let symmetric = (0..k).all(|i| (0..k).all(|j| matrix[i][j] == matrix[j][i]));
    let balanced = (0..k).all(|i| (0..k).map(|j| matrix[i][j] * dims[j]).sum::<u64>() == 2 * dims[i]);
    let zero_diagonal = (0..k).all(|i| matrix[i][i] == 0);
    if !symmetric || !balanced {
        return Err(Error::internal(format!(
            "McKay matrix of {spec}: symmetric={symmetric}, balanced={balanced}"
        )));
    }
    // trivial row lists the constituents of V
    let v = g.natural_character();
    for j in 0..k {
        if g.integral_inner_product(&v, &g.char_table[j])? as u64 != matrix[0][j] {
            return Err(Error::internal("trivial row differs from the constituents of V"));
        }
    }
    let edges = EdgeGraph::from_mixed(&simplify_mixed(&graph));
    let verdict = smith_classify(&edges)?;
    let id = match (verdict.class, verdict.id) {
        (SmithClass::Critical, Some(id))
            if matches!(
                id.family,
                DiagramFamily::AffA
                    | DiagramFamily::AffA12
                    | DiagramFamily::AffD
                    | DiagramFamily::AffE6
                    | DiagramFamily::AffE7
                    | DiagramFamily::AffE8
            ) =>
        {
            id
        }
        other => {
            return Err(Error::internal(format!(
                "McKay graph of {spec} is not a simply laced affine diagram: {other:?}"
            )))
        }
    };
    Ok(McKayReport {
        spec,
        order: g.order(),
        class_count: g.class_count(),
        dims,
        matrix,
        diagram: id,
        symmetric,
        balanced,
        zero_diagonal,
        graph,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_four() {
        let g = build_group(GroupSpec::Cyclic(4)).unwrap();
        assert_eq!((g.order(), g.class_count()), (4, 4));
        assert_eq!(g.dims(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn quaternion_group() {
        let g = build_group(GroupSpec::BinaryDihedral(2)).unwrap();
        assert_eq!((g.order(), g.class_count()), (8, 5));
        assert_eq!(g.dims(), vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn binary_polyhedral_orders() {
        for (spec, order, classes) in [
            (GroupSpec::BinaryTetrahedral, 24, 7),
            (GroupSpec::BinaryOctahedral, 48, 8),
            (GroupSpec::BinaryIcosahedral, 120, 9),
        ] {
            let g = build_group(spec).unwrap();
            assert_eq!((g.order(), g.class_count()), (order, classes), "{spec}");
        }
        let g = build_group(GroupSpec::BinaryIcosahedral).unwrap();
        assert_eq!(g.dims(), vec![1, 2, 2, 3, 3, 4, 4, 5, 6]);
    }

    #[test]
    fn tetrahedral_has_complex_characters() {
        // degrees 1,1,1,2,2,2,3; two of the linear characters take value ω
        let g = build_group(GroupSpec::BinaryTetrahedral).unwrap();
        assert_eq!(g.dims(), vec![1, 1, 1, 2, 2, 2, 3]);
        let non_real = g
            .char_table
            .iter()
            .filter(|row| row.iter().any(|v| *v != v.conj()))
            .count();
        assert_eq!(non_real, 4);
    }

    #[test]
    fn size_cap_enforced() {
        assert!(matches!(
            build_group_with_cap(GroupSpec::BinaryIcosahedral, 50),
            Err(Error::Rejected(_))
        ));
    }

    #[test]
    fn invalid_specs() {
        assert!(build_group(GroupSpec::Cyclic(0)).is_err());
        assert!(build_group(GroupSpec::BinaryDihedral(1)).is_err());
        assert!("cyclic".parse::<GroupSpec>().is_err());
        assert_eq!("cyclic:5".parse::<GroupSpec>().unwrap(), GroupSpec::Cyclic(5));
        assert_eq!("2I".parse::<GroupSpec>().unwrap(), GroupSpec::BinaryIcosahedral);
    }

    #[test]
    fn cyclic_mckay_is_a_cycle() {
        for n in 3..8 {
            let g = build_group(GroupSpec::Cyclic(n)).unwrap();
            let m = mckay_matrix(&mckay_multiplicities(&g).unwrap());
            for row in &m {
                assert_eq!(row.iter().sum::<u64>(), 2);
                assert!(row.iter().all(|&x| x <= 1));
            }
        }
    }

    #[test]
    fn certify_small_cases() {
        for spec in [
            GroupSpec::Cyclic(1),
            GroupSpec::Cyclic(2),
            GroupSpec::Cyclic(5),
            GroupSpec::BinaryDihedral(3),
            GroupSpec::BinaryTetrahedral,
        ] {
            let r = mckay_certify(spec).unwrap();
            assert_eq!(r.diagram, spec.expected_diagram(), "{spec}");
        }
        let r = mckay_certify(GroupSpec::Cyclic(5)).unwrap();
        assert_eq!(r.to_json()["diagram"], "Ã4");
        assert_eq!(r.order, 5);
    }

    #[test]
    fn cyclic_one_has_double_loop() {
        let r = mckay_certify(GroupSpec::Cyclic(1)).unwrap();
        assert_eq!(r.matrix, vec![vec![2]]);
        assert!(!r.zero_diagonal);
    }
}
