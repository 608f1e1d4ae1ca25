//! Exact arithmetic in cyclotomic fields Q(zeta_m), plus recognition of
//! integer matrices of finite order through cyclotomic factorisation of the
//! characteristic polynomial.
//!
//! An element carries its conductor explicitly; binary operations embed both
//! operands into the lcm conductor first.  Coefficient vectors are reduced
//! modulo the m-th cyclotomic polynomial, so equal elements of the same
//! conductor have identical coefficients.

use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::matrix::IntMatrix;
use super::rat::Rat;
use super::ExactError;

pub fn euler_phi(m: u64) -> u64 {
    assert!(m >= 1);
    let mut n = m;
    let mut phi = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            phi = phi / p * (p - 1);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        phi = phi / n * (n - 1);
    }
    phi
}

pub fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut n = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            return n == 1;
        }
        p += 1;
    }
    true
}

fn poly_cache() -> &'static Mutex<HashMap<u64, Vec<BigInt>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of the m-th cyclotomic polynomial, ascending, monic.
pub fn cyclotomic_poly(m: u64) -> Vec<BigInt> {
    if let Some(p) = poly_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    let p = compute_cyclotomic_poly(m);
    poly_cache().lock().unwrap().insert(m, p.clone());
    p
}

fn compute_cyclotomic_poly(m: u64) -> Vec<BigInt> {
    // x^m - 1 divided by the cyclotomic polynomials of the proper divisors
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            num = int_poly_div_exact(&num, &cyclotomic_poly(d));
        }
    }
    num
}

/// Exact division of integer polynomials (ascending coefficients); the
/// divisor must be monic and divide exactly.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false));
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut q = vec![BigInt::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn].clone();
        q[k] = c.clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division was not exact");
    q
}

fn trim_zeros(p: &mut Vec<BigInt>) {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
}

/// Factor the characteristic polynomial of a square integer matrix as a
/// product of cyclotomic polynomials, returning (d, multiplicity) pairs in
/// increasing d.  Fails with `NotFiniteOrder` when a non-cyclotomic factor
/// remains, which for an integer matrix means it generates an infinite
/// group.
pub fn char_poly_cyclotomic_factor(m: &IntMatrix) -> Result<Vec<(u64, usize)>, ExactError> {
    let mut p = m.char_poly()?;
    trim_zeros(&mut p);
    let n = m.rows() as u64;
    if n == 0 {
        return Ok(Vec::new());
    }
    // phi(d) >= sqrt(d/2), so phi(d) <= n forces d <= 2n^2 + 1
    let bound = 2 * n * n + 1;
    let mut factors = Vec::new();
    for d in 1..=bound {
        if p.len() == 1 {
            break;
        }
        if euler_phi(d) as usize > p.len() - 1 {
            continue;
        }
        let phi_d = cyclotomic_poly(d);
        let mut mult = 0;
        while p.len() > phi_d.len() - 1 && divides(&phi_d, &p) {
            p = int_poly_div_exact(&p, &phi_d);
            mult += 1;
        }
        // the last factor can consume the rest
        while p.len() == phi_d.len() && p == phi_d {
            p = vec![BigInt::one()];
            mult += 1;
        }
        if mult > 0 {
            factors.push((d, mult));
        }
    }
    if p.len() != 1 || !p[0].is_one() {
        return Err(ExactError::NotFiniteOrder);
    }
    Ok(factors)
}

fn divides(den: &[BigInt], num: &[BigInt]) -> bool {
    if num.len() < den.len() {
        return false;
    }
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    for k in (0..=qn).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
    }
    rem.iter().all(|c| c.is_zero())
}

/// Order of a finite-order integer matrix: the lcm of the d's occurring in
/// the cyclotomic factorisation of its characteristic polynomial.
pub fn matrix_order(m: &IntMatrix) -> Result<u64, ExactError> {
    let factors = char_poly_cyclotomic_factor(m)?;
    Ok(factors.iter().fold(1u64, |acc, (d, _)| acc.lcm(d)))
}

/// An element of Q(zeta_m), reduced modulo the m-th cyclotomic polynomial.
#[derive(Debug, Clone)]
pub struct CycloElem {
    conductor: u64,
    coeffs: Vec<Rat>, // length phi(m), ascending powers of zeta_m
}

impl CycloElem {
    pub fn new(conductor: u64, coeffs: Vec<Rat>) -> Self {
        assert_eq!(coeffs.len() as u64, euler_phi(conductor));
        CycloElem { conductor, coeffs }
    }

    pub fn zero(conductor: u64) -> Self {
        CycloElem::new(conductor, vec![Rat::zero(); euler_phi(conductor) as usize])
    }

    pub fn one(conductor: u64) -> Self {
        CycloElem::from_rat(conductor, Rat::one())
    }

    pub fn from_rat(conductor: u64, r: Rat) -> Self {
        let mut c = CycloElem::zero(conductor);
        c.coeffs[0] = r;
        c
    }

    /// zeta_m itself.
    pub fn root(conductor: u64) -> Self {
        CycloElem::zeta_pow(conductor, 1)
    }

    /// zeta_m^k, reduced.
    pub fn zeta_pow(conductor: u64, k: i64) -> Self {
        let m = conductor as i64;
        let k = k.rem_euclid(m) as usize;
        let mut poly = vec![Rat::zero(); k + 1];
        poly[k] = Rat::one();
        CycloElem::from_poly(conductor, poly)
    }

    /// Reduce an arbitrary polynomial in zeta_m.
    pub fn from_poly(conductor: u64, poly: Vec<Rat>) -> Self {
        let phi: Vec<Rat> = cyclotomic_poly(conductor)
            .into_iter()
            .map(Rat::from_integer)
            .collect();
        let deg = phi.len() - 1;
        let mut rem = poly;
        while rem.len() > deg {
            let k = rem.len() - 1 - deg;
            let c = rem.pop().unwrap();
            if !c.is_zero() {
                for (i, d) in phi.iter().take(deg).enumerate() {
                    let v = &rem[k + i] - &c * d;
                    rem[k + i] = v;
                }
            }
        }
        rem.resize(deg, Rat::zero());
        CycloElem::new(conductor, rem)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational number this element represents, if it lies in Q.
    pub fn to_rat(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-express in Q(zeta_target); the current conductor must divide the
    /// target.
    pub fn embed_into(&self, target: u64) -> CycloElem {
        assert!(
            target % self.conductor == 0,
            "conductor {} does not divide target {}",
            self.conductor,
            target
        );
        if target == self.conductor {
            return self.clone();
        }
        let step = (target / self.conductor) as i64;
        // zeta_m = zeta_target^step
        let mut acc = CycloElem::zero(target);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut term = CycloElem::zeta_pow(target, step * k as i64);
                term.scale_in_place(c);
                acc = acc.add(&term);
            }
        }
        acc
    }

    fn scale_in_place(&mut self, r: &Rat) {
        for c in &mut self.coeffs {
            *c *= r;
        }
    }

    fn unify(&self, other: &CycloElem) -> (CycloElem, CycloElem) {
        if self.conductor == other.conductor {
            return (self.clone(), other.clone());
        }
        let m = self.conductor.lcm(&other.conductor);
        (self.embed_into(m), other.embed_into(m))
    }

    pub fn add(&self, other: &CycloElem) -> CycloElem {
        let (a, b) = self.unify(other);
        CycloElem::new(
            a.conductor,
            a.coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        )
    }

    pub fn sub(&self, other: &CycloElem) -> CycloElem {
        let (a, b) = self.unify(other);
        CycloElem::new(
            a.conductor,
            a.coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(x, y)| x - y)
                .collect(),
        )
    }

    pub fn neg(&self) -> CycloElem {
        CycloElem::new(self.conductor, self.coeffs.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, other: &CycloElem) -> CycloElem {
        let (a, b) = self.unify(other);
        let mut prod = vec![Rat::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    let v = &prod[i + j] + x * y;
                    prod[i + j] = v;
                }
            }
        }
        CycloElem::from_poly(a.conductor, prod)
    }

    pub fn scale(&self, r: &Rat) -> CycloElem {
        let mut out = self.clone();
        out.scale_in_place(r);
        out
    }

    /// Multiplicative inverse via the extended Euclidean algorithm modulo
    /// the cyclotomic polynomial.
    pub fn inv(&self) -> Result<CycloElem, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let modulus: Vec<Rat> = cyclotomic_poly(self.conductor)
            .into_iter()
            .map(Rat::from_integer)
            .collect();
        let mut r0 = modulus;
        let mut r1 = self.coeffs.clone();
        rat_poly_trim(&mut r1);
        let mut t0: Vec<Rat> = vec![Rat::zero()];
        let mut t1: Vec<Rat> = vec![Rat::one()];
        while !(r1.len() == 1 && r1[0].is_zero()) {
            let (q, r) = rat_poly_divmod(&r0, &r1);
            let t = rat_poly_sub(&t0, &rat_poly_mul(&q, &t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        // r0 is now the gcd, a nonzero constant since the modulus is
        // irreducible and self != 0
        debug_assert_eq!(r0.len(), 1);
        let scale = Rat::one() / r0[0].clone();
        let inv_poly = t0.iter().map(|c| c * &scale).collect();
        Ok(CycloElem::from_poly(self.conductor, inv_poly))
    }

    /// Complex conjugation: zeta_m -> zeta_m^(m-1).
    pub fn conjugate(&self) -> CycloElem {
        if self.conductor <= 2 {
            return self.clone();
        }
        let mut acc = CycloElem::zero(self.conductor);
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut term =
                    CycloElem::zeta_pow(self.conductor, (self.conductor as i64 - 1) * k as i64);
                term.scale_in_place(c);
                acc = acc.add(&term);
            }
        }
        acc
    }

    pub fn pow(&self, mut e: u64) -> CycloElem {
        let mut base = self.clone();
        let mut acc = CycloElem::one(self.conductor);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Is this element a root of the given polynomial (ascending
    /// coefficients)?
    pub fn is_root_of(&self, poly: &[CycloElem]) -> bool {
        eval_poly(poly, self).is_zero()
    }

    /// Multiplicative order when the element is a root of unity.
    pub fn root_of_unity_order(&self) -> Option<u64> {
        // a root of unity in Q(zeta_m) has order dividing lcm(2, m)
        let bound = self.conductor.lcm(&2);
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_one() {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.unify(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycloElem {}

impl std::fmt::Display for CycloElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = match k {
                0 => format!("{c}"),
                1 => format!("{c}*z{}", self.conductor),
                _ => format!("{c}*z{}^{k}", self.conductor),
            };
            parts.push(s);
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub fn eval_poly(poly: &[CycloElem], x: &CycloElem) -> CycloElem {
    let mut acc = CycloElem::zero(x.conductor());
    for c in poly.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

pub fn poly_derivative(poly: &[CycloElem]) -> Vec<CycloElem> {
    if poly.len() <= 1 {
        return vec![CycloElem::zero(poly.first().map(|c| c.conductor()).unwrap_or(1))];
    }
    poly.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale(&Rat::from_integer(BigInt::from(k as i64))))
        .collect()
}

fn rat_poly_trim(p: &mut Vec<Rat>) {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
}

fn rat_poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    rat_poly_trim(&mut out);
    out
}

fn rat_poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let v = &out[i + j] + x * y;
            out[i + j] = v;
        }
    }
    rat_poly_trim(&mut out);
    out
}

fn rat_poly_divmod(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem = num.to_vec();
    rat_poly_trim(&mut rem);
    let mut den = den.to_vec();
    rat_poly_trim(&mut den);
    let dn = den.len() - 1;
    if rem.len() - 1 < dn || (rem.len() == 1 && rem[0].is_zero()) {
        return (vec![Rat::zero()], rem);
    }
    let lead = den.last().unwrap().clone();
    let mut q = vec![Rat::zero(); rem.len() - dn];
    for k in (0..q.len()).rev() {
        let c = &rem[k + dn] / &lead;
        q[k] = c.clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            let v = &rem[k + i] - &c * d;
            rem[k + i] = v;
        }
    }
    rat_poly_trim(&mut rem);
    rat_poly_trim(&mut q);
    (q, rem)
}

/// Dense matrix over a cyclotomic field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<CycloElem>,
}

impl CycloMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<CycloElem>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        CycloMatrix { rows, cols, entries }
    }

    pub fn zero(rows: usize, cols: usize, conductor: u64) -> Self {
        CycloMatrix::new(rows, cols, vec![CycloElem::zero(conductor); rows * cols])
    }

    pub fn identity(n: usize, conductor: u64) -> Self {
        let mut m = CycloMatrix::zero(n, n, conductor);
        for i in 0..n {
            m.set(i, i, CycloElem::one(conductor));
        }
        m
    }

    pub fn scalar(n: usize, value: &CycloElem) -> Self {
        let mut m = CycloMatrix::zero(n, n, value.conductor());
        for i in 0..n {
            m.set(i, i, value.clone());
        }
        m
    }

    pub fn from_int(m: &IntMatrix, conductor: u64) -> Self {
        CycloMatrix::new(
            m.rows(),
            m.cols(),
            (0..m.rows())
                .flat_map(|r| {
                    (0..m.cols()).map(move |c| {
                        CycloElem::from_rat(conductor, Rat::from_integer(m.get(r, c).clone()))
                    })
                })
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &CycloElem {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycloElem) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &CycloMatrix) -> CycloMatrix {
        assert_eq!(self.cols, other.rows);
        let cond = self
            .entries
            .first()
            .map(|e| e.conductor())
            .unwrap_or(1)
            .lcm(&other.entries.first().map(|e| e.conductor()).unwrap_or(1));
        let mut out = CycloMatrix::zero(self.rows, other.cols, cond);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = out.get(r, c).add(&a.mul(other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn sub(&self, other: &CycloMatrix) -> CycloMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CycloMatrix::new(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn embed_into(&self, conductor: u64) -> CycloMatrix {
        CycloMatrix::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|e| e.embed_into(conductor)).collect(),
        )
    }

    /// Row-reduce in place, returning pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..self.cols {
                    let a = self.get(row, c).clone();
                    let b = self.get(p, c).clone();
                    self.set(row, c, b);
                    self.set(p, c, a);
                }
            }
            let inv = self.get(row, col).inv().expect("pivot is nonzero");
            for c in 0..self.cols {
                let v = self.get(row, c).mul(&inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r != row && !self.get(r, col).is_zero() {
                    let f = self.get(r, col).clone();
                    for c in 0..self.cols {
                        let v = self.get(r, c).sub(&f.mul(self.get(row, c)));
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    pub fn inverse(&self) -> Option<CycloMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let cond = self.entries.first().map(|e| e.conductor()).unwrap_or(1);
        let mut aug = CycloMatrix::zero(n, 2 * n, cond);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, CycloElem::one(cond));
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut out = CycloMatrix::zero(n, n, cond);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, aug.get(r, n + c).clone());
            }
        }
        Some(out)
    }

    pub fn trace(&self) -> CycloElem {
        assert_eq!(self.rows, self.cols);
        let cond = self.entries.first().map(|e| e.conductor()).unwrap_or(1);
        let mut t = CycloElem::zero(cond);
        for i in 0..self.rows {
            t = t.add(self.get(i, i));
        }
        t
    }

    pub fn determinant(&self) -> CycloElem {
        assert_eq!(self.rows, self.cols);
        let cond = self.entries.first().map(|e| e.conductor()).unwrap_or(1);
        // char poly constant term is (-1)^n det
        let p = self.char_poly();
        let det = p[0].clone();
        if self.rows % 2 == 1 {
            det.neg()
        } else {
            det
        }
        .embed_into(cond)
    }

    /// Monic characteristic polynomial (ascending), Faddeev-LeVerrier.
    pub fn char_poly(&self) -> Vec<CycloElem> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let cond = self.entries.first().map(|e| e.conductor()).unwrap_or(1);
        let mut coeffs = vec![CycloElem::zero(cond); n + 1];
        coeffs[n] = CycloElem::one(cond);
        let mut m = CycloMatrix::identity(n, cond);
        for k in 1..=n {
            m = self.mul(&m);
            let c = m
                .trace()
                .neg()
                .scale(&Rat::new(BigInt::one(), BigInt::from(k as i64)));
            for i in 0..n {
                let v = m.get(i, i).add(&c);
                m.set(i, i, v);
            }
            coeffs[n - k] = c;
        }
        coeffs
    }

    pub fn mul_rat_matrix(&self, m: &super::matrix::RatMatrix) -> CycloMatrix {
        assert_eq!(self.cols, m.rows());
        let cond = self.entries.first().map(|e| e.conductor()).unwrap_or(1);
        let mut out = CycloMatrix::zero(self.rows, m.cols(), cond);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..m.cols() {
                    if m.get(k, c).is_zero() {
                        continue;
                    }
                    let v = out.get(r, c).add(&a.scale(m.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        out
    }
}

/// Solve R * P = P * H for R, where P is a rows x cols matrix over a
/// cyclotomic field and H is an integer cols x cols matrix.  Returns `None`
/// when P is row-rank-deficient or no solution exists; callers that need to
/// distinguish the two check `P.rank()` first.
pub fn solve_intertwiner(p: &CycloMatrix, h: &IntMatrix) -> Option<CycloMatrix> {
    let n = p.rows();
    let cond = (0..n)
        .flat_map(|r| (0..p.cols()).map(move |c| p.get(r, c).conductor()))
        .fold(1u64, |a, b| a.lcm(&b));
    let p = p.embed_into(cond);
    // pick n independent columns of P
    let mut probe = p.clone();
    let pivots = probe.rref();
    if pivots.len() != n {
        return None;
    }
    let mut pj = CycloMatrix::zero(n, n, cond);
    for (j, &col) in pivots.iter().enumerate() {
        for i in 0..n {
            pj.set(i, j, p.get(i, col).clone());
        }
    }
    let ph = p.mul(&CycloMatrix::from_int(h, cond));
    let mut phj = CycloMatrix::zero(n, n, cond);
    for (j, &col) in pivots.iter().enumerate() {
        for i in 0..n {
            phj.set(i, j, ph.get(i, col).clone());
        }
    }
    let r = phj.mul(&pj.inverse()?);
    // verify on all columns
    if r.mul(&p).sub(&ph).is_zero() {
        Some(r)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat::{rat, rat_int};

    #[test]
    fn phi_and_prime_powers() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(9), 6);
        assert!(is_prime_power(8));
        assert!(is_prime_power(9));
        assert!(!is_prime_power(6));
        assert!(!is_prime_power(1));
    }

    #[test]
    fn cyclotomic_polys() {
        let to_i64 = |v: Vec<BigInt>| -> Vec<i64> {
            v.iter().map(|c| i64::try_from(c).unwrap()).collect()
        };
        assert_eq!(to_i64(cyclotomic_poly(1)), vec![-1, 1]);
        assert_eq!(to_i64(cyclotomic_poly(2)), vec![1, 1]);
        assert_eq!(to_i64(cyclotomic_poly(3)), vec![1, 1, 1]);
        assert_eq!(to_i64(cyclotomic_poly(4)), vec![1, 0, 1]);
        assert_eq!(to_i64(cyclotomic_poly(6)), vec![1, -1, 1]);
        assert_eq!(to_i64(cyclotomic_poly(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn factor_rotation_matrix() {
        let m = IntMatrix::from_rows(&[vec![0, -1], vec![1, -1]]);
        assert_eq!(char_poly_cyclotomic_factor(&m).unwrap(), vec![(3, 1)]);
        let m = IntMatrix::from_rows(&[vec![1, 0], vec![0, -1]]);
        assert_eq!(
            char_poly_cyclotomic_factor(&m).unwrap(),
            vec![(1, 1), (2, 1)]
        );
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 1]]);
        assert_eq!(
            char_poly_cyclotomic_factor(&m),
            Err(ExactError::NotFiniteOrder)
        );
    }

    #[test]
    fn matrix_orders() {
        let m = IntMatrix::from_rows(&[vec![0, -1], vec![1, -1]]);
        assert_eq!(matrix_order(&m).unwrap(), 3);
        assert_eq!(matrix_order(&IntMatrix::identity(3)).unwrap(), 1);
        let m = IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]]);
        assert_eq!(matrix_order(&m).unwrap(), 4);
    }

    #[test]
    fn zeta_cubed_is_one() {
        let z = CycloElem::root(3);
        assert!(z.mul(&z).mul(&z).is_one());
        assert!(!z.is_one());
        assert!(!z.mul(&z).is_one());
    }

    #[test]
    fn conjugate_of_i_cancels() {
        let i = CycloElem::root(4);
        assert!(i.add(&i.conjugate()).is_zero());
        assert!(i.mul(&i.conjugate()).is_one());
    }

    #[test]
    fn inverse_of_one_plus_zeta5() {
        let x = CycloElem::one(5).add(&CycloElem::root(5));
        let inv = x.inv().unwrap();
        assert!(x.mul(&inv).is_one());
    }

    #[test]
    fn embedding_preserves_value() {
        let z3 = CycloElem::root(3);
        let in6 = z3.embed_into(6);
        // zeta_6^2 = zeta_3
        assert_eq!(in6, CycloElem::zeta_pow(6, 2));
        assert_eq!(z3, in6);
        // sum of the two primitive cube roots is -1
        let s = z3.add(&z3.conjugate());
        assert_eq!(s.to_rat(), Some(rat_int(-1)));
    }

    #[test]
    fn root_orders() {
        assert_eq!(CycloElem::root(12).root_of_unity_order(), Some(12));
        assert_eq!(CycloElem::one(5).root_of_unity_order(), Some(1));
        let minus_one = CycloElem::from_rat(3, rat_int(-1));
        assert_eq!(minus_one.root_of_unity_order(), Some(2));
        let half = CycloElem::from_rat(3, rat(1, 2));
        assert_eq!(half.root_of_unity_order(), None);
    }

    #[test]
    fn intertwiner_diagonal_action() {
        // P = [1  z3] and H the multiplication-by-z3 matrix on the lattice
        let p = CycloMatrix::new(1, 2, vec![CycloElem::one(3), CycloElem::root(3)]);
        let h = IntMatrix::from_rows(&[vec![0, -1], vec![1, -1]]);
        let r = solve_intertwiner(&p, &h).unwrap();
        assert_eq!(r.get(0, 0), &CycloElem::root(3));
        // an incompatible H has no solution
        let bad = IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        assert!(solve_intertwiner(&p, &bad).is_none());
    }
}
