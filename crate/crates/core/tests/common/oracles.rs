//! Reference computations written without the library's series, linear
//! algebra, or presentation code. Coefficients are plain sparse polynomials
//! over Q; series are dense arrays indexed by exponents.

use std::collections::BTreeMap;

use fgl_cobord::Poly;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Sparse polynomial over Q in `nvars` variables, optionally dropping
/// monomials whose weight exceeds `cap`.
#[derive(Clone, Debug, PartialEq)]
pub struct MPoly {
    pub terms: BTreeMap<Vec<u32>, BigRational>,
}

#[derive(Clone, Debug)]
pub struct Ctx {
    pub nvars: usize,
    pub weights: Vec<usize>,
    pub cap: Option<usize>,
}

impl Ctx {
    pub fn zero(&self) -> MPoly {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn constant(&self, c: BigRational) -> MPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; self.nvars], c);
        }
        MPoly { terms }
    }

    pub fn var(&self, k: usize) -> MPoly {
        let mut e = vec![0; self.nvars];
        e[k] = 1;
        let mut terms = BTreeMap::new();
        if self.cap.is_none_or(|c| self.weights[k] <= c) {
            terms.insert(e, BigRational::one());
        }
        MPoly { terms }
    }

    pub fn add(&self, a: &MPoly, b: &MPoly) -> MPoly {
        let mut out = a.clone();
        for (e, c) in &b.terms {
            let v = out.terms.entry(e.clone()).or_insert_with(BigRational::zero);
            *v += c;
            if v.is_zero() {
                out.terms.remove(e);
            }
        }
        out
    }

    pub fn neg(&self, a: &MPoly) -> MPoly {
        MPoly { terms: a.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        let mut out: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (e1, c1) in &a.terms {
            for (e2, c2) in &b.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                if let Some(cap) = self.cap {
                    let w: usize = e.iter().zip(&self.weights).map(|(k, w)| *k as usize * w).sum();
                    if w > cap {
                        continue;
                    }
                }
                *out.entry(e).or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        out.retain(|_, c| !c.is_zero());
        MPoly { terms: out }
    }
}

/// Univariate series `sum s[k] t^k`, `k <= d`.
fn uni_mul(ctx: &Ctx, a: &[MPoly], b: &[MPoly], d: usize) -> Vec<MPoly> {
    let mut out = vec![ctx.zero(); d + 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate().take(d + 1 - i.min(d + 1)) {
            if i + j <= d && !x.terms.is_empty() && !y.terms.is_empty() {
                out[i + j] = ctx.add(&out[i + j], &ctx.mul(x, y));
            }
        }
    }
    out
}

/// `outer(inner(t))` with `inner(0) = 0`.
fn uni_compose(ctx: &Ctx, outer: &[MPoly], inner: &[MPoly], d: usize) -> Vec<MPoly> {
    let mut out = vec![ctx.zero(); d + 1];
    let mut power = vec![ctx.zero(); d + 1];
    power[0] = ctx.constant(BigRational::one());
    for c in outer.iter().take(d + 1) {
        for k in 0..=d {
            out[k] = ctx.add(&out[k], &ctx.mul(c, &power[k]));
        }
        power = uni_mul(ctx, &power, inner, d);
    }
    out
}

/// Compositional inverse of `f = t + ...`.
fn reversion(ctx: &Ctx, f: &[MPoly], d: usize) -> Vec<MPoly> {
    let mut g = vec![ctx.zero(); d + 1];
    g[1] = ctx.constant(BigRational::one());
    for k in 2..=d {
        let c = uni_compose(ctx, f, &g, d)[k].clone();
        g[k] = ctx.neg(&c);
    }
    g
}

/// Bivariate series keyed by `(i, j)` with `i + j <= d`.
type Bi = BTreeMap<(usize, usize), MPoly>;

fn bi_mul(ctx: &Ctx, a: &Bi, b: &Bi, d: usize) -> Bi {
    let mut out = Bi::new();
    for (&(i1, j1), x) in a {
        for (&(i2, j2), y) in b {
            if i1 + j1 + i2 + j2 <= d {
                let key = (i1 + i2, j1 + j2);
                let v = ctx.add(out.get(&key).unwrap_or(&ctx.zero()), &ctx.mul(x, y));
                out.insert(key, v);
            }
        }
    }
    out.retain(|_, v| !v.terms.is_empty());
    out
}

/// `F(x, y) = exp(log x + log y)` through total degree `d`, for
/// `log t = sum log[k] t^k` with `log[1] = 1`.
pub fn fgl_from_log(ctx: &Ctx, log: &[MPoly], d: usize) -> Bi {
    let exp = reversion(ctx, log, d);
    let mut sum = Bi::new();
    for (k, c) in log.iter().enumerate().take(d + 1).skip(1) {
        sum.insert((k, 0), c.clone());
        sum.insert((0, k), c.clone());
    }
    let mut out = Bi::new();
    let mut power: Bi = Bi::from([((0, 0), ctx.constant(BigRational::one()))]);
    for c in exp.iter().take(d + 1).skip(1) {
        power = bi_mul(ctx, &power, &sum, d);
        for (key, v) in &power {
            let term = ctx.mul(c, v);
            let acc = ctx.add(out.get(key).unwrap_or(&ctx.zero()), &term);
            out.insert(*key, acc);
        }
    }
    out.retain(|_, v| !v.terms.is_empty());
    out
}

/// Rational coefficients of `F = exp(log x + log y)` for
/// `log t = t + sum cs[k-1] t^(k+1)`, keyed by `(i, j)` with `i, j >= 1`.
pub fn fgl_from_log_coefficients(cs: &[BigRational], d: usize) -> BTreeMap<(usize, usize), BigRational> {
    let ctx = Ctx { nvars: 0, weights: vec![], cap: None };
    let mut log = vec![ctx.zero(); d + 1];
    log[1] = ctx.constant(BigRational::one());
    for (k, c) in cs.iter().enumerate() {
        if k + 2 <= d {
            log[k + 2] = ctx.constant(c.clone());
        }
    }
    fgl_from_log(&ctx, &log, d)
        .into_iter()
        .filter(|((i, j), _)| *i >= 1 && *j >= 1)
        .map(|(k, v)| (k, v.terms.get(&Vec::new()).cloned().unwrap_or_else(BigRational::zero)))
        .filter(|(_, v)| !v.is_zero())
        .collect()
}

/// Coefficients of `[n](t) = exp(n log t)` through `t^d`, for the same
/// logarithm as [`fgl_from_log_coefficients`].
pub fn n_series_from_log(cs: &[BigRational], n: i64, d: usize) -> Vec<BigRational> {
    let ctx = Ctx { nvars: 0, weights: vec![], cap: None };
    let mut log = vec![ctx.zero(); d + 1];
    log[1] = ctx.constant(BigRational::one());
    for (k, c) in cs.iter().enumerate() {
        if k + 2 <= d {
            log[k + 2] = ctx.constant(c.clone());
        }
    }
    let exp = reversion(&ctx, &log, d);
    let scaled: Vec<MPoly> = log.iter().map(|c| ctx.mul(c, &ctx.constant(BigRational::from_integer(n.into())))).collect();
    uni_compose(&ctx, &exp, &scaled, d)
        .into_iter()
        .map(|c| c.terms.get(&Vec::new()).cloned().unwrap_or_else(BigRational::zero))
        .collect()
}

/// Rank over Q of a list of vectors.
pub fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let mut r = 0;
    let cols = rows.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for k in c..cols {
                    let sub = &f * &rows[r][k];
                    rows[i][k] -= sub;
                }
            }
        }
        r += 1;
    }
    r
}

/// Multisets of canonical generators `(i, j)`, `i <= j`, with total weight `w`.
fn generator_monomials(w: usize) -> Vec<Vec<(usize, usize)>> {
    let gens: Vec<(usize, usize)> =
        (1..=w).flat_map(|i| (i..=w + 1 - i).map(move |j| (i, j))).filter(|(i, j)| i + j - 1 <= w).collect();
    fn rec(gens: &[(usize, usize)], start: usize, left: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for k in start..gens.len() {
            let gw = gens[k].0 + gens[k].1 - 1;
            if gw <= left {
                cur.push(gens[k]);
                rec(gens, k, left - gw, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&gens, 0, w, &mut Vec::new(), &mut out);
    out
}

/// Dimension of the weight-`w` part of the image of the Lazard ring in
/// `Q[m_1, ..., m_n]` under `a_ij -> coefficient of x^i y^j` in
/// `exp(log x + log y)` with `log t = t + sum m_k t^(k+1)`.
pub fn buds_dimensions(n: usize) -> Vec<usize> {
    let ctx = Ctx { nvars: n, weights: (1..=n).collect(), cap: None };
    let d = n + 1;
    let mut log = vec![ctx.zero(); d + 1];
    log[1] = ctx.constant(BigRational::one());
    for k in 1..=n {
        log[k + 1] = ctx.var(k - 1);
    }
    let f = fgl_from_log(&ctx, &log, d);
    let mut dims = vec![1];
    for w in 1..=n {
        let images: Vec<MPoly> = generator_monomials(w)
            .into_iter()
            .map(|mono| {
                mono.iter().fold(ctx.constant(BigRational::one()), |acc, key| {
                    ctx.mul(&acc, f.get(key).unwrap_or(&ctx.zero()))
                })
            })
            .collect();
        let support: Vec<Vec<u32>> = {
            let mut s: Vec<Vec<u32>> = images.iter().flat_map(|p| p.terms.keys().cloned()).collect();
            s.sort();
            s.dedup();
            s
        };
        let rows: Vec<Vec<BigRational>> = images
            .iter()
            .map(|p| support.iter().map(|e| p.terms.get(e).cloned().unwrap_or_else(BigRational::zero)).collect())
            .collect();
        dims.push(rank(rows));
    }
    dims
}

/// Number of partitions of `n`.
pub fn partitions(n: usize) -> usize {
    let mut p = vec![0usize; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for k in part..=n {
            p[k] += p[k - part];
        }
    }
    p[n]
}

/// Coefficients of `F(F(x,y),z) - F(x,F(y,z))` through total degree `d`,
/// as raw polynomials in the canonical generators of weight `<= cap`
/// (listed in `generators`), with `a_ji` read as `a_ij`.
pub fn associativity_defects(generators: &[(usize, usize)], cap: usize, d: usize) -> Vec<([usize; 3], Poly)> {
    let weights: Vec<usize> = generators.iter().map(|(i, j)| i + j - 1).collect();
    let ctx = Ctx { nvars: generators.len(), weights, cap: Some(cap) };
    let a = |i: usize, j: usize| -> MPoly {
        let key = (i.min(j), i.max(j));
        match generators.iter().position(|g| *g == key) {
            Some(k) => ctx.var(k),
            None => ctx.zero(),
        }
    };
    // F(x, y) as a bivariate series.
    let mut f = Bi::new();
    f.insert((1, 0), ctx.constant(BigRational::one()));
    f.insert((0, 1), ctx.constant(BigRational::one()));
    for i in 1..d {
        for j in 1..=d - i {
            let c = a(i, j);
            if !c.terms.is_empty() {
                f.insert((i, j), c);
            }
        }
    }
    let mut powers = vec![Bi::from([((0, 0), ctx.constant(BigRational::one()))])];
    for _ in 0..d {
        let next = bi_mul(&ctx, powers.last().unwrap(), &f, d);
        powers.push(next);
    }
    // F(U, z) = U + z + sum a_ij U^i z^j with U = F(x, y); keys (x, y, z).
    let mut left: BTreeMap<[usize; 3], MPoly> = BTreeMap::new();
    // F(x, V) = x + V + sum a_ij x^i V^j with V = F(y, z); V's keys are (y, z).
    let mut right: BTreeMap<[usize; 3], MPoly> = BTreeMap::new();
    let push = |m: &mut BTreeMap<[usize; 3], MPoly>, k: [usize; 3], v: MPoly| {
        if k.iter().sum::<usize>() <= d {
            let acc = ctx.add(m.get(&k).unwrap_or(&ctx.zero()), &v);
            m.insert(k, acc);
        }
    };
    for i in 0..=d {
        for j in 0..=d {
            let c = match (i, j) {
                (0, 0) => continue,
                (1, 0) | (0, 1) => ctx.constant(BigRational::one()),
                (_, 0) | (0, _) => continue,
                _ => a(i, j),
            };
            if c.terms.is_empty() {
                continue;
            }
            for (&(p, q), v) in &powers[i] {
                push(&mut left, [p, q, j], ctx.mul(&c, v));
            }
            for (&(p, q), v) in &powers[j] {
                push(&mut right, [i, p, q], ctx.mul(&c, v));
            }
        }
    }
    let mut keys: Vec<[usize; 3]> = left.keys().chain(right.keys()).copied().collect();
    keys.sort();
    keys.dedup();
    keys.into_iter()
        .map(|k| {
            let diff = ctx.add(left.get(&k).unwrap_or(&ctx.zero()), &ctx.neg(right.get(&k).unwrap_or(&ctx.zero())));
            let mut p = Poly::zero();
            for (e, c) in diff.terms {
                p.add_term(e, c);
            }
            (k, p)
        })
        .collect()
}
