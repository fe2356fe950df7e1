//! Univariate polynomials over `F_p` and their factorization into irreducibles.
//!
//! Coefficients are stored lowest degree first with no trailing zeros.

use num_bigint::BigUint;
use rand::Rng;

use crate::exactlin::{Fp, Matrix};

pub type Poly = Vec<u32>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &Poly) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub fn add(f: Fp, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| f.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect(),
    )
}

pub fn sub(f: Fp, a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| f.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect(),
    )
}

pub fn mul(f: Fp, a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

pub fn monic(f: Fp, a: &Poly) -> Poly {
    match a.last() {
        None => vec![],
        Some(&lc) => {
            let inv = f.inv(lc);
            a.iter().map(|&c| f.mul(c, inv)).collect()
        }
    }
}

/// Quotient and remainder; panics on division by zero.
pub fn divrem(f: Fp, a: &Poly, b: &Poly) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let inv = f.inv(b[db]);
    let mut r = a.clone();
    if r.len() <= db {
        return (vec![], trim(r));
    }
    let mut q = vec![0; r.len() - db];
    for i in (db..r.len()).rev() {
        let c = f.mul(r[i], inv);
        if c == 0 {
            continue;
        }
        q[i - db] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[i - db + j] = f.sub(r[i - db + j], f.mul(c, bj));
        }
    }
    (trim(q), trim(r))
}

pub fn rem(f: Fp, a: &Poly, b: &Poly) -> Poly {
    divrem(f, a, b).1
}

/// Monic greatest common divisor.
pub fn gcd(f: Fp, a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn derivative(f: Fp, a: &Poly) -> Poly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, (i as u64 % f.p() as u64) as u32))
            .collect(),
    )
}

fn mulmod(f: Fp, a: &Poly, b: &Poly, m: &Poly) -> Poly {
    rem(f, &mul(f, a, b), m)
}

pub fn powmod(f: Fp, a: &Poly, e: &BigUint, m: &Poly) -> Poly {
    let mut acc: Poly = rem(f, &vec![1], m);
    let base = rem(f, a, m);
    for i in (0..e.bits()).rev() {
        acc = mulmod(f, &acc, &acc, m);
        if e.bit(i) {
            acc = mulmod(f, &acc, &base, m);
        }
    }
    acc
}

/// Squarefree decomposition: pairs `(g, e)` with `a = lc * prod g^e`, each `g` squarefree.
fn squarefree(f: Fp, a: &Poly) -> Vec<(Poly, usize)> {
    let p = f.p() as usize;
    let a = monic(f, a);
    if degree(&a).unwrap_or(0) == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    let d = derivative(f, &a);
    if d.is_empty() {
        // a is a p-th power
        let root: Poly = a.iter().step_by(p).copied().collect();
        for (g, e) in squarefree(f, &root) {
            out.push((g, e * p));
        }
        return out;
    }
    let mut c = gcd(f, &a, &d);
    let mut w = divrem(f, &a, &c).0;
    let mut i = 1;
    while degree(&w).unwrap_or(0) > 0 {
        let y = gcd(f, &w, &c);
        let z = divrem(f, &w, &y).0;
        if degree(&z).unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        c = divrem(f, &c, &y).0;
        w = y;
    }
    if degree(&c).unwrap_or(0) > 0 {
        let root: Poly = c.iter().step_by(p).copied().collect();
        for (g, e) in squarefree(f, &root) {
            out.push((g, e * p));
        }
    }
    out
}

/// Splits a squarefree monic polynomial into products of irreducibles of equal degree.
fn distinct_degree(f: Fp, a: &Poly) -> Vec<(Poly, usize)> {
    let p = BigUint::from(f.p());
    let mut out = Vec::new();
    let mut rest = a.clone();
    let x: Poly = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0;
    while degree(&rest).unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = powmod(f, &h, &p, &rest);
        let g = gcd(f, &rest, &sub(f, &h, &x));
        if degree(&g).unwrap_or(0) > 0 {
            rest = divrem(f, &rest, &g).0;
            h = rem(f, &h, &rest);
            out.push((g, d));
        }
    }
    if degree(&rest).unwrap_or(0) > 0 {
        let dr = degree(&rest).unwrap();
        out.push((rest, dr));
    }
    out
}

/// Cantor-Zassenhaus splitting of a product of irreducibles of degree `d`.
fn equal_degree<R: Rng>(f: Fp, a: &Poly, d: usize, rng: &mut R) -> Vec<Poly> {
    let n = degree(a).unwrap_or(0);
    if n <= d {
        return vec![a.clone()];
    }
    let p = f.p() as u64;
    loop {
        let mut r: Poly = (0..n).map(|_| rng.gen_range(0..f.p())).collect();
        r = trim(r);
        if degree(&r).unwrap_or(0) == 0 {
            continue;
        }
        let g = if p == 2 {
            // trace map r + r^2 + ... + r^(2^(d-1))
            let mut t = r.clone();
            let mut acc = r.clone();
            for _ in 1..d {
                t = mulmod(f, &t, &t, a);
                acc = add(f, &acc, &t);
            }
            gcd(f, a, &acc)
        } else {
            let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
            let s = powmod(f, &r, &e, a);
            gcd(f, a, &sub(f, &s, &vec![1]))
        };
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let h = divrem(f, a, &g).0;
            let mut out = equal_degree(f, &g, d, rng);
            out.extend(equal_degree(f, &h, d, rng));
            return out;
        }
    }
}

/// Monic irreducible factors with multiplicities, sorted for determinism.
pub fn factor<R: Rng>(f: Fp, a: &Poly, rng: &mut R) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    for (g, e) in squarefree(f, a) {
        for (h, d) in distinct_degree(f, &g) {
            for q in equal_degree(f, &h, d, rng) {
                out.push((q, e));
            }
        }
    }
    out.sort();
    out
}

/// `g(m)` for a square matrix `m`, by Horner's rule.
pub fn eval_matrix(f: Fp, g: &Poly, m: &Matrix) -> Matrix {
    let n = m.rows();
    let mut acc = Matrix::zeros(f, n, n);
    for &c in g.iter().rev() {
        acc = acc.mul(m).add(&Matrix::identity(f, n).scale(c));
    }
    acc
}

/// Minimal polynomial of a square matrix, found from the first linear
/// dependency among `I, m, m^2, ...`.
pub fn minimal_polynomial(m: &Matrix) -> Poly {
    let f = m.field();
    let n = m.rows();
    if n == 0 {
        return vec![1];
    }
    let mut powers: Vec<Vec<u32>> = vec![Matrix::identity(f, n).data().to_vec()];
    let mut cur = Matrix::identity(f, n);
    loop {
        cur = cur.mul(m);
        let target = cur.data().to_vec();
        let span = Matrix::from_columns(f, n * n, &powers);
        if let Some(x) = span.solve(&target) {
            let mut g: Poly = x.iter().map(|&c| f.neg(c)).collect();
            g.push(1);
            return g;
        }
        powers.push(target);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn expand(f: Fp, parts: &[(Poly, usize)]) -> Poly {
        let mut acc = vec![1];
        for (g, e) in parts {
            for _ in 0..*e {
                acc = mul(f, &acc, g);
            }
        }
        acc
    }

    #[test]
    fn factor_round_trip() {
        let f = Fp::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // (x - 3)^2 (x^2 + 2) (x + 5), x^2 + 2 irreducible since -2 is a non-residue mod 101
        let a = expand(
            f,
            &[
                (vec![f.from_i64(-3), 1], 2),
                (vec![2, 0, 1], 1),
                (vec![5, 1], 1),
            ],
        );
        let fac = factor(f, &a, &mut rng);
        assert_eq!(fac.len(), 3);
        assert_eq!(expand(f, &fac), a);
        assert!(fac.contains(&(vec![2, 0, 1], 1)));
    }

    #[test]
    fn factor_in_char_two_and_p_powers() {
        let f = Fp::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        // (x^2 + x + 1)^2 * x^3
        let a = expand(f, &[(vec![1, 1, 1], 2), (vec![0, 1], 3)]);
        let fac = factor(f, &a, &mut rng);
        assert_eq!(expand(f, &fac), a);
        assert_eq!(fac.len(), 2);
    }

    #[test]
    fn minimal_polynomial_of_nilpotent_block() {
        let f = Fp::new(7).unwrap();
        let m = Matrix::from_rows(f, &[vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 0]]);
        assert_eq!(minimal_polynomial(&m), vec![0, 0, 1]);
        assert!(eval_matrix(f, &minimal_polynomial(&m), &m).is_zero());
    }
}
