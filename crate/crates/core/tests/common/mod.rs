#![allow(dead_code)]

use buildtrop::building::permutation_matrix;
use buildtrop::chains::{gl2_chamber_fan, Decoration, MarkedFan};
use buildtrop::matrix::Matrix;
use buildtrop::scalar::{rat, OrderedField};
use buildtrop::{RatMatrix, Rational, ValuedMatrix, ValuedScalar};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_rat(r: &mut ChaCha8Rng, num: i64, den: i64) -> Rational {
    rat(r.gen_range(-num..=num), r.gen_range(1..=den))
}

pub fn rand_invertible(r: &mut ChaCha8Rng, n: usize) -> RatMatrix {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| rand_rat(r, 4, 3));
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// Weights with denominators at most 4.
pub fn rand_lambda(r: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| rand_rat(r, 8, 4)).collect()
}

/// A polynomial in `s = t^{1/d}` with non-negative exponents.
pub fn rand_integral(r: &mut ChaCha8Rng, d: u32, max_deg: i64) -> ValuedScalar {
    let terms: Vec<(i64, Rational)> = (0..=max_deg).map(|k| (k, rand_rat(r, 3, 2))).collect();
    ValuedScalar::from_terms(d, terms)
}

/// A random element of `GL_n(O)` over `Q(t^{1/d})`: a product of unipotent
/// triangular factors with integral entries, a permutation and unit constants.
pub fn rand_integral_unit(r: &mut ChaCha8Rng, n: usize, d: u32) -> ValuedMatrix {
    let one = || ValuedScalar::from_const(rat(1, 1));
    let zero = || ValuedScalar::zero_in(1);
    let upper = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => rand_integral(r, d, 2),
        std::cmp::Ordering::Equal => one(),
        std::cmp::Ordering::Greater => zero(),
    });
    let lower = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Greater => rand_integral(r, d, 2),
        std::cmp::Ordering::Equal => one(),
        std::cmp::Ordering::Less => zero(),
    });
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(r);
    let p: ValuedMatrix = permutation_matrix(&perm);
    let units: Vec<ValuedScalar> = (0..n)
        .map(|_| {
            let mut c = rand_rat(r, 5, 3);
            while c == rat(0, 1) {
                c = rand_rat(r, 5, 3);
            }
            ValuedScalar::from_const(c)
        })
        .collect();
    upper.mul(&p).mul(&lower).mul(&Matrix::diagonal(&units))
}

/// An invertible matrix of random Laurent polynomials in `t^{1/2}`.
pub fn rand_laurent_matrix(r: &mut ChaCha8Rng, n: usize) -> ValuedMatrix {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| {
            let terms = r.gen_range(0..=2);
            let t: Vec<(i64, Rational)> = (0..terms)
                .map(|_| (r.gen_range(-2..=4), rand_rat(r, 3, 2)))
                .collect();
            ValuedScalar::from_terms(2, t)
        });
        if !m.determinant().is_zero() {
            return m;
        }
    }
}

pub fn rand_perm(r: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(r);
    p
}

/// Random moves that preserve the Goldman–Iwahori norm of `(g, λ)`:
/// permuting the frame with the weights, rescaling frame vectors, and adding
/// a multiple of a frame vector to one of no greater weight.
pub fn equivalent_representative<F: OrderedField>(
    r: &mut ChaCha8Rng,
    g: &Matrix<F>,
    lambda: &[F],
    small: impl Fn(i64, i64) -> F,
) -> (Matrix<F>, Vec<F>) {
    let n = lambda.len();
    let mut g = g.clone();
    let mut lambda = lambda.to_vec();
    for _ in 0..4 {
        match r.gen_range(0..3) {
            0 => {
                let perm = rand_perm(r, n);
                let p: Matrix<F> = permutation_matrix(&perm);
                g = g.mul(&p);
                // (g·P)e_j = g e_{perm[j]}, so the new weight of slot j is λ_{perm[j]}
                lambda = (0..n).map(|j| lambda[perm[j]].clone()).collect();
            }
            1 => {
                let mut d = r.gen_range(-5..=5);
                while d == 0 {
                    d = r.gen_range(-5..=5);
                }
                let c = r.gen_range(0..n);
                let s = small(d, r.gen_range(1..=3));
                for row in 0..n {
                    g[(row, c)] = g[(row, c)].clone() * s.clone();
                }
            }
            _ => {
                let i = r.gen_range(0..n);
                let j = r.gen_range(0..n);
                if i != j && lambda[j] >= lambda[i] {
                    let c = small(r.gen_range(-4..=4), r.gen_range(1..=3));
                    for row in 0..n {
                        let v = g[(row, j)].clone() * c.clone();
                        g[(row, i)] = g[(row, i)].clone() + v;
                    }
                }
            }
        }
    }
    (g, lambda)
}

pub fn chamber_fan() -> MarkedFan {
    gl2_chamber_fan()
}

/// Decorations of the GL(2) chamber fan: every increasing ray list that spans
/// a cone.
pub fn all_decorations() -> Vec<Decoration> {
    let mut out = vec![Decoration { rays: vec![] }];
    for i in 0..4 {
        out.push(Decoration { rays: vec![i] });
    }
    for (a, b) in [(0, 1), (1, 2), (2, 3)] {
        out.push(Decoration { rays: vec![a, b] });
    }
    out
}
