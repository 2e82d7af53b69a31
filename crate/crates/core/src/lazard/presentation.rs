use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fgl::{formal_sum, FglTable, KnownRange};
use crate::linalg::{hermite_normal_form, smith_normal_form_left, ExactMatrix};
use crate::poly::{compare_grlex, parse_terms, Exponents, Poly, PolyRing};
use crate::ring::{format_rational, rational_from_json, CoeffRing, Weight};
use crate::series::{SeriesSpace, TruncatedSeries};

pub const SCHEMA: &str = "fgl-cobord/1";

/// A coefficient `a_ij` with `i <= j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub i: usize,
    pub j: usize,
}

impl Generator {
    pub fn weight(&self) -> usize {
        self.i + self.j - 1
    }

    pub fn name(&self) -> String {
        generator_name(self.i, self.j)
    }
}

pub fn generator_name(i: usize, j: usize) -> String {
    if i < 10 && j < 10 {
        format!("a{i}{j}")
    } else {
        format!("a{i}_{j}")
    }
}

/// Parses `a12`, `a21` or `a3_10` into `(i, j)` (not canonicalized).
pub fn parse_generator_name(name: &str) -> Option<(usize, usize)> {
    let rest = name.strip_prefix('a')?;
    let (i, j) = match rest.split_once('_') {
        Some((i, j)) => (i.parse().ok()?, j.parse().ok()?),
        None if rest.len() == 2 && rest.chars().all(|c| c.is_ascii_digit()) => {
            (rest[..1].parse().ok()?, rest[1..].parse().ok()?)
        }
        None => return None,
    };
    (i >= 1 && j >= 1).then_some((i, j))
}

/// One weight-graded piece of the quotient: a free abelian group with an
/// explicit basis, plus the torsion read off the Smith form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Component {
    pub weight: usize,
    monomials: Vec<Exponents>,
    rank: usize,
    torsion: Vec<BigInt>,
    /// rank × (#monomials): coordinate functionals in Hermite normal form.
    coords: ExactMatrix,
    /// (#monomials) × rank: integral representatives of the basis.
    lifts: ExactMatrix,
    #[serde(skip)]
    index: HashMap<Exponents, usize>,
}

impl Component {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn monomials(&self) -> &[Exponents] {
        &self.monomials
    }

    fn rebuild_index(&mut self) {
        self.index = self.monomials.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
    }

    fn lift(&self, k: usize) -> Poly {
        let mut p = Poly::zero();
        for (m, mono) in self.monomials.iter().enumerate() {
            let c = self.lifts.get(m, k);
            if !c.is_zero() {
                p.add_term(mono.clone(), BigRational::from_integer(c));
            }
        }
        p
    }

    fn reduce_vector(&self, v: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.rank];
        for (&(r, c), a) in self.coords.entries() {
            if !v[c].is_zero() {
                out[r] += &v[c] * BigRational::from_integer(a.clone());
            }
        }
        out
    }
}

/// Element of the truncated Lazard ring, as rational coordinates on each
/// weight component's basis. Weights run `0..=N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GradedElement {
    coords: Vec<Vec<BigRational>>,
}

impl GradedElement {
    pub fn coords(&self, w: usize) -> &[BigRational] {
        &self.coords[w]
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &[BigRational])> {
        self.coords.iter().enumerate().map(|(w, c)| (w, c.as_slice()))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().flatten().all(Zero::is_zero)
    }

    /// Homogeneous component of weight `w`.
    pub fn part(&self, w: usize) -> GradedElement {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(k, c)| if k == w { c.clone() } else { vec![BigRational::zero(); c.len()] })
            .collect();
        GradedElement { coords }
    }
}

type ProductTable = Vec<Vec<Vec<(usize, BigInt)>>>;

/// The truncated Lazard ring `L_{<=N}`: generators `a_ij` (`i <= j`,
/// `i + j - 1 <= N`) modulo the associativity relations of the universal
/// formal group law, with everything of weight above `N` set to zero.
#[derive(Debug, Serialize, Deserialize)]
pub struct LazardPresentation {
    max_weight: usize,
    generators: Vec<Generator>,
    gen_ring: PolyRing,
    components: Vec<Component>,
    relations: Vec<Vec<Poly>>,
    #[serde(with = "crate::linalg::entry_list")]
    products: BTreeMap<(usize, usize), ProductTable>,
}


/// Builds `L_{<=N}` and the universal table over it.
pub fn build_universal_fgl(max_weight: usize) -> Result<(Arc<LazardPresentation>, FglTable<LazardPresentation>)> {
    let pres = Arc::new(LazardPresentation::build(max_weight)?);
    let table = pres.universal_table();
    Ok((pres, table))
}

impl LazardPresentation {
    pub fn build(max_weight: usize) -> Result<Self> {
        if max_weight == 0 {
            return Err(Error::EmptyTruncation);
        }
        let n = max_weight;
        let mut generators: Vec<Generator> =
            (1..=n).flat_map(|i| (i..=n + 1 - i).map(move |j| Generator { i, j })).collect();
        generators.sort_by_key(|g| (g.weight(), g.i, g.j));
        let gen_ring = PolyRing::new(
            generators.iter().map(Generator::name).collect(),
            generators.iter().map(Generator::weight).collect(),
            Some(n),
        )?;

        let relations = associativity_relations(&gen_ring, &generators, n)?;

        let mut monomials_by_weight: Vec<Vec<Exponents>> = (0..=n).map(|w| monomials_of_weight(&generators, w)).collect();
        for ms in &mut monomials_by_weight {
            ms.sort_by(|a, b| compare_grlex(b, a));
        }

        let mut components = Vec::with_capacity(n + 1);
        for w in 0..=n {
            components.push(build_component(w, &monomials_by_weight, &relations)?);
        }

        let mut pres = Self { max_weight: n, generators, gen_ring, components, relations, products: BTreeMap::new() };
        pres.products = pres.product_tables();
        Ok(pres)
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_ring(&self) -> &PolyRing {
        &self.gen_ring
    }

    pub fn component(&self, w: usize) -> Result<&Component> {
        self.components.get(w).ok_or_else(|| Error::BeyondTruncation(format!("weight {w} > {}", self.max_weight)))
    }

    /// Rank and torsion invariants of the weight-`w` component.
    pub fn graded_component(&self, w: usize) -> Result<(usize, Vec<BigInt>)> {
        let c = self.component(w)?;
        Ok((c.rank, c.torsion.clone()))
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.rank).collect()
    }

    /// Associativity relations of weight `w`, as polynomials in the canonical generators.
    pub fn relations(&self, w: usize) -> &[Poly] {
        self.relations.get(w).map_or(&[], Vec::as_slice)
    }

    pub fn generator_index(&self, i: usize, j: usize) -> Result<usize> {
        let (i, j) = (i.min(j), i.max(j));
        if i == 0 {
            return Err(Error::Parse("generator indices start at 1".into()));
        }
        if i + j - 1 > self.max_weight {
            return Err(Error::BeyondTruncation(format!(
                "{} has weight {} > {}",
                generator_name(i, j),
                i + j - 1,
                self.max_weight
            )));
        }
        self.generators
            .iter()
            .position(|g| g.i == i && g.j == j)
            .ok_or_else(|| Error::Parse(format!("no generator a_{i}{j}")))
    }

    /// The raw polynomial `a_ij` (rewritten to `a_ji` when `i > j`).
    pub fn generator_poly(&self, i: usize, j: usize) -> Result<Poly> {
        Ok(self.gen_ring.var(self.generator_index(i, j)?))
    }

    /// Parses a polynomial in the `a_ij`, accepting non-canonical names
    /// like `a21`. Monomials of weight above `N` are rejected.
    pub fn parse_raw(&self, s: &str) -> Result<Poly> {
        let mut out = Poly::zero();
        for (c, factors) in parse_terms(s)? {
            let mut e = vec![0u32; self.generators.len()];
            for (name, k) in factors {
                let (i, j) = parse_generator_name(&name)
                    .ok_or_else(|| Error::Parse(format!("{name:?} is not a generator a_ij")))?;
                e[self.generator_index(i, j)?] += k;
            }
            let w = self.gen_ring.monomial_weight(&e);
            if w > self.max_weight {
                return Err(Error::BeyondTruncation(format!("monomial of weight {w} > {}", self.max_weight)));
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// Canonical normal form of a raw polynomial in the generators.
    pub fn reduce(&self, p: &Poly) -> Result<GradedElement> {
        let mut vectors: Vec<Vec<BigRational>> =
            self.components.iter().map(|c| vec![BigRational::zero(); c.monomials.len()]).collect();
        for (e, c) in p.terms() {
            if e.len() != self.generators.len() {
                return Err(Error::Shape("monomial over the wrong generator set".into()));
            }
            let w = self.gen_ring.monomial_weight(e);
            if w > self.max_weight {
                return Err(Error::BeyondTruncation(format!("monomial of weight {w} > {}", self.max_weight)));
            }
            let k = self.components[w].index[e];
            vectors[w][k] += c;
        }
        Ok(GradedElement {
            coords: self.components.iter().zip(&vectors).map(|(c, v)| c.reduce_vector(v)).collect(),
        })
    }

    pub fn reduce_str(&self, s: &str) -> Result<GradedElement> {
        self.reduce(&self.parse_raw(s)?)
    }

    /// Integral representative of an element as a polynomial in the generators.
    pub fn lift(&self, x: &GradedElement) -> Poly {
        let mut out = Poly::zero();
        for (comp, coords) in self.components.iter().zip(&x.coords) {
            for (k, c) in coords.iter().enumerate() {
                if !c.is_zero() {
                    out = out.add(&comp.lift(k).scale(c));
                }
            }
        }
        out
    }

    /// Basis representatives of the weight-`w` component.
    pub fn basis_polys(&self, w: usize) -> Result<Vec<Poly>> {
        let c = self.component(w)?;
        Ok((0..c.rank).map(|k| c.lift(k)).collect())
    }

    pub fn basis_element(&self, w: usize, k: usize) -> Result<GradedElement> {
        let c = self.component(w)?;
        if k >= c.rank {
            return Err(Error::Shape(format!("basis index {k} >= rank {}", c.rank)));
        }
        let mut x = self.zero();
        x.coords[w][k] = BigRational::from_integer(1.into());
        Ok(x)
    }

    pub fn from_coords(&self, coords: Vec<Vec<BigRational>>) -> Result<GradedElement> {
        if coords.len() != self.components.len() {
            return Err(Error::LengthMismatch { expected: self.components.len(), got: coords.len() });
        }
        for (c, v) in self.components.iter().zip(&coords) {
            if c.rank != v.len() {
                return Err(Error::LengthMismatch { expected: c.rank, got: v.len() });
            }
        }
        Ok(GradedElement { coords })
    }

    pub fn universal_table(self: &Arc<Self>) -> FglTable<LazardPresentation> {
        let mut entries = BTreeMap::new();
        for g in &self.generators {
            let x = self.reduce(&self.gen_ring.var(self.generator_index(g.i, g.j).unwrap())).unwrap();
            entries.insert((g.i, g.j), x);
        }
        // Coefficients of weight above N vanish in the truncated ring.
        FglTable::symmetric(Arc::clone(self), entries, KnownRange::All).unwrap()
    }

    fn product_tables(&self) -> BTreeMap<(usize, usize), ProductTable> {
        let n = self.max_weight;
        let mut out = BTreeMap::new();
        let lifts: Vec<Vec<Poly>> = (0..=n).map(|w| self.basis_polys(w).unwrap()).collect();
        for w1 in 1..=n {
            for w2 in w1..=n - w1 {
                let target = &self.components[w1 + w2];
                let mut table = Vec::with_capacity(lifts[w1].len());
                for a in &lifts[w1] {
                    let mut row = Vec::with_capacity(lifts[w2].len());
                    for b in &lifts[w2] {
                        let prod = a.mul(b);
                        let mut v = vec![BigRational::zero(); target.monomials.len()];
                        for (e, c) in prod.terms() {
                            v[target.index[e]] += c;
                        }
                        let coords = target.reduce_vector(&v);
                        row.push(
                            coords
                                .into_iter()
                                .enumerate()
                                .filter(|(_, c)| !c.is_zero())
                                .map(|(k, c)| (k, c.to_integer()))
                                .collect(),
                        );
                    }
                    table.push(row);
                }
                out.insert((w1, w2), table);
            }
        }
        out
    }

    /// JSON export: generators, graded components, and the universal table.
    pub fn to_json(self: &Arc<Self>) -> Value {
        let names = self.gen_ring.vars();
        let components: Vec<Value> = self
            .components
            .iter()
            .map(|c| {
                json!({
                    "weight": c.weight,
                    "rank": c.rank,
                    "torsion": c.torsion.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "basis": (0..c.rank).map(|k| c.lift(k).display(names)).collect::<Vec<_>>(),
                })
            })
            .collect();
        let table = self.universal_table();
        let mut fgl = Vec::new();
        for i in 1..=self.max_weight {
            for j in 1..=self.max_weight + 1 - i {
                let c = table.coeff(i, j).unwrap();
                fgl.push(json!({ "i": i, "j": j, "coords": self.elem_to_json(&c) }));
            }
        }
        json!({
            "schema": SCHEMA,
            "max_weight": self.max_weight,
            "generators": names,
            "components": components,
            "fgl": fgl,
        })
    }

    /// Serialized form for the on-disk presentation cache.
    pub fn to_cache_string(&self) -> String {
        serde_json::to_string(&json!({ "schema": SCHEMA, "presentation": self })).expect("presentation serializes")
    }

    pub fn from_cache_str(s: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        if v.get("schema").and_then(Value::as_str) != Some(SCHEMA) {
            return Err(Error::Parse("cached presentation has a different schema".into()));
        }
        let mut p: Self = serde_json::from_value(v["presentation"].clone()).map_err(|e| Error::Parse(e.to_string()))?;
        for c in &mut p.components {
            c.rebuild_index();
        }
        Ok(p)
    }
}

fn associativity_relations(ring: &PolyRing, generators: &[Generator], n: usize) -> Result<Vec<Vec<Poly>>> {
    let ring = Arc::new(ring.clone());
    let mut upper = BTreeMap::new();
    for (k, g) in generators.iter().enumerate() {
        upper.insert((g.i, g.j), ring.var(k));
    }
    let table = FglTable::symmetric(Arc::clone(&ring), upper, KnownRange::All)?;
    let space = SeriesSpace::total_degree(&["x", "y", "z"], n + 1);
    let x = TruncatedSeries::var(Arc::clone(&ring), space.clone(), 0);
    let y = TruncatedSeries::var(Arc::clone(&ring), space.clone(), 1);
    let z = TruncatedSeries::var(Arc::clone(&ring), space.clone(), 2);
    let left = formal_sum(&table, &formal_sum(&table, &x, &y)?, &z)?;
    let right = formal_sum(&table, &x, &formal_sum(&table, &y, &z)?)?;
    let diff = left.sub(&right)?;

    let mut by_weight: Vec<BTreeSet<Poly>> = vec![BTreeSet::new(); n + 1];
    for (e, c) in diff.terms() {
        let w = e.iter().sum::<u32>() as usize - 1;
        by_weight[w].insert(normalize_sign(c));
    }
    Ok(by_weight.into_iter().map(|s| s.into_iter().collect()).collect())
}

fn normalize_sign(p: &Poly) -> Poly {
    let lead = p.terms().max_by(|(a, _), (b, _)| compare_grlex(a, b)).map(|(_, c)| c.is_negative());
    if lead == Some(true) {
        p.neg()
    } else {
        p.clone()
    }
}

fn monomials_of_weight(generators: &[Generator], w: usize) -> Vec<Exponents> {
    fn rec(gens: &[Generator], idx: usize, left: usize, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if idx == gens.len() {
            return;
        }
        let gw = gens[idx].weight();
        let mut k = 0;
        while k * gw <= left {
            cur[idx] = k as u32;
            rec(gens, idx + 1, left - k * gw, cur, out);
            k += 1;
        }
        cur[idx] = 0;
    }
    let mut out = Vec::new();
    rec(generators, 0, w, &mut vec![0; generators.len()], &mut out);
    out
}

fn build_component(w: usize, monomials: &[Vec<Exponents>], relations: &[Vec<Poly>]) -> Result<Component> {
    let basis = monomials[w].clone();
    let size = basis.len();
    let index: HashMap<Exponents, usize> = basis.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();

    // Relation ideal in weight w: stored relations of weight w' times monomials of weight w - w'.
    let mut columns: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for (rw, rels) in relations.iter().enumerate().take(w + 1).skip(1) {
        for r in rels {
            for m in &monomials[w - rw] {
                let mut v = vec![BigInt::zero(); size];
                for (e, c) in r.terms() {
                    let prod: Exponents = e.iter().zip(m).map(|(a, b)| a + b).collect();
                    v[index[&prod]] += c.to_integer();
                }
                if v.iter().any(|x| !x.is_zero()) {
                    columns.insert(v);
                }
            }
        }
    }
    let columns: Vec<Vec<BigInt>> = columns.into_iter().collect();
    let relation_matrix = ExactMatrix::from_columns(size, &columns)?;
    let snf = smith_normal_form_left(&relation_matrix);

    let mut free = Vec::new();
    let mut torsion = Vec::new();
    for i in 0..size {
        match snf.diagonal.get(i) {
            Some(d) if d.is_zero() => free.push(i),
            None => free.push(i),
            Some(d) if *d > BigInt::from(1) => torsion.push(d.clone()),
            Some(_) => {}
        }
    }
    let phi = snf.left_transform.select_rows(&free);
    let hnf = hermite_normal_form(&phi);
    let lifts = snf.left_inverse.select_columns(&free).mul(&hnf.transform_inverse)?;
    let lifts = reduce_lifts(&lifts, &relation_matrix.transpose());
    debug_assert!(hnf.h.mul(&lifts)?.is_identity() || free.is_empty());

    Ok(Component { weight: w, monomials: basis, rank: free.len(), torsion, coords: hnf.h, lifts, index })
}

/// Shortens each lift by subtracting relation vectors, rounding against the
/// Hermite form of the relation lattice. The result depends only on the
/// lattice, so representatives are canonical.
fn reduce_lifts(lifts: &ExactMatrix, relation_rows: &ExactMatrix) -> ExactMatrix {
    let rel = hermite_normal_form(relation_rows);
    let rows: Vec<Vec<BigInt>> = (0..rel.rank()).map(|k| rel.h.row(k)).collect();
    let mut columns = Vec::with_capacity(lifts.cols());
    for c in 0..lifts.cols() {
        let mut v = lifts.column(c);
        for (row, &p) in rows.iter().zip(&rel.pivots) {
            let d = &row[p];
            let two_d: BigInt = d * 2;
            let num: BigInt = &v[p] * BigInt::from(2) + d;
            let q = num.div_floor(&two_d);
            if !q.is_zero() {
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &q * r;
                }
            }
        }
        columns.push(v);
    }
    ExactMatrix::from_columns(lifts.rows(), &columns).expect("lift columns share a length")
}

impl CoeffRing for LazardPresentation {
    type Elem = GradedElement;

    fn zero(&self) -> GradedElement {
        GradedElement { coords: self.components.iter().map(|c| vec![BigRational::zero(); c.rank]).collect() }
    }

    fn one(&self) -> GradedElement {
        let mut x = self.zero();
        x.coords[0][0] = BigRational::from_integer(1.into());
        x
    }

    fn from_rational(&self, q: &BigRational) -> GradedElement {
        let mut x = self.zero();
        x.coords[0][0] = q.clone();
        x
    }

    fn add(&self, a: &GradedElement, b: &GradedElement) -> GradedElement {
        GradedElement {
            coords: a.coords.iter().zip(&b.coords).map(|(u, v)| u.iter().zip(v).map(|(x, y)| x + y).collect()).collect(),
        }
    }

    fn neg(&self, a: &GradedElement) -> GradedElement {
        GradedElement { coords: a.coords.iter().map(|u| u.iter().map(|x| -x).collect()).collect() }
    }

    fn mul(&self, a: &GradedElement, b: &GradedElement) -> GradedElement {
        let n = self.max_weight;
        let mut out = self.zero();
        for w1 in 0..=n {
            if a.coords[w1].iter().all(Zero::is_zero) {
                continue;
            }
            for w2 in 0..=n - w1 {
                if b.coords[w2].iter().all(Zero::is_zero) {
                    continue;
                }
                let w = w1 + w2;
                if w1 == 0 || w2 == 0 {
                    let (scalar, vec) = if w1 == 0 { (&a.coords[0][0], &b.coords[w2]) } else { (&b.coords[0][0], &a.coords[w1]) };
                    for (o, x) in out.coords[w].iter_mut().zip(vec) {
                        *o += scalar * x;
                    }
                    continue;
                }
                let (lo, hi, flip) = if w1 <= w2 { (w1, w2, false) } else { (w2, w1, true) };
                let table = &self.products[&(lo, hi)];
                for (k1, x) in a.coords[w1].iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (k2, y) in b.coords[w2].iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        let xy = x * y;
                        let entry = if flip { &table[k2][k1] } else { &table[k1][k2] };
                        for (k, s) in entry {
                            out.coords[w][*k] += &xy * BigRational::from_integer(s.clone());
                        }
                    }
                }
            }
        }
        out
    }

    fn scale(&self, a: &GradedElement, q: &BigRational) -> GradedElement {
        GradedElement { coords: a.coords.iter().map(|u| u.iter().map(|x| x * q).collect()).collect() }
    }

    fn is_zero(&self, a: &GradedElement) -> bool {
        a.is_zero()
    }

    fn weight(&self, a: &GradedElement) -> Weight {
        a.coords.iter().enumerate().fold(Weight::Zero, |acc, (w, c)| {
            if c.iter().all(Zero::is_zero) {
                acc
            } else {
                acc.join(Weight::Homogeneous(w))
            }
        })
    }

    fn integral_coordinates(&self, a: &GradedElement) -> Vec<BigRational> {
        a.coords.iter().flatten().cloned().collect()
    }

    fn compatible(&self, other: &Self) -> bool {
        self.max_weight == other.max_weight && self.generators == other.generators
    }

    fn truncation(&self) -> Option<usize> {
        Some(self.max_weight)
    }

    fn format(&self, a: &GradedElement) -> String {
        self.lift(a).display(self.gen_ring.vars())
    }

    fn elem_to_json(&self, a: &GradedElement) -> Value {
        let components: Vec<Value> = a
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| c.iter().any(|x| !x.is_zero()))
            .map(|(w, c)| json!({ "weight": w, "coords": c.iter().map(format_rational).collect::<Vec<_>>() }))
            .collect();
        json!({ "poly": self.format(a), "components": components })
    }

    fn elem_from_json(&self, v: &Value) -> Result<GradedElement> {
        match v {
            Value::String(s) => self.reduce_str(s),
            Value::Object(map) => {
                let Some(comps) = map.get("components").and_then(Value::as_array) else {
                    let poly = map.get("poly").and_then(Value::as_str).ok_or_else(|| {
                        Error::Parse("element JSON needs \"components\" or \"poly\"".into())
                    })?;
                    return self.reduce_str(poly);
                };
                let mut x = self.zero();
                for c in comps {
                    let w = c.get("weight").and_then(Value::as_u64).ok_or_else(|| Error::Parse("missing weight".into()))?
                        as usize;
                    let comp = self.component(w)?;
                    let coords = c.get("coords").and_then(Value::as_array).ok_or_else(|| Error::Parse("missing coords".into()))?;
                    if coords.len() != comp.rank {
                        return Err(Error::LengthMismatch { expected: comp.rank, got: coords.len() });
                    }
                    x.coords[w] = coords.iter().map(rational_from_json).collect::<Result<_>>()?;
                }
                Ok(x)
            }
            other => Ok(self.from_rational(&rational_from_json(other)?)),
        }
    }
}
