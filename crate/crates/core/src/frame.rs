//! The splitting environment for x^e - 1: a big field F_{q0^e} with an
//! automorphism theta extending sigma, a normal element alpha, and
//! beta = theta(alpha) alpha^{-1} whose theta-orbit supplies the e linear
//! right factors of x^e - 1. On top of that: beta-defining sets, mu-closed
//! sets, orbit minimal polynomials, and generators recovered from index sets.

use crate::error::{Error, Result};
use crate::field::{FieldAutomorphism, FieldElement, FiniteField, SubfieldEmbedding, FIELD_SIZE_CAP};
use crate::skew::SkewPoly;
use std::collections::BTreeSet;
use std::sync::Arc;

/// Options controlling frame construction; all fields are optional overrides.
#[derive(Default, Clone)]
pub struct FrameOptions {
    /// Explicit modulus for the big field.
    pub big_modulus: Option<Vec<u64>>,
    /// Which of the s conjugate embeddings of F_q to use (default 0, the root
    /// with the smallest discrete log).
    pub embed_index: Option<usize>,
    /// Discrete log of a normal element to use instead of the scan result.
    pub normal_dlog: Option<u64>,
    /// Size cap for the big field.
    pub cap: Option<u64>,
}

pub struct ExtensionFrame {
    base: FieldAutomorphism,
    e: u64,
    m: u64,
    big: FieldAutomorphism,
    base_to_big: Vec<u32>,
    big_to_base: Vec<u32>,
    embed_index: usize,
    embed_count: usize,
    alpha: FieldElement,
    beta: FieldElement,
    /// theta^i(beta) for 0 <= i < e
    beta_orbit: Vec<FieldElement>,
    /// the fixed subfield F_{q0} inside the big field
    fixed: SubfieldEmbedding,
}

impl ExtensionFrame {
    /// Build the frame for exponent `e` (lifted to lcm(e, mu) when needed).
    pub fn build(base: &FieldAutomorphism, e: u64, opts: &FrameOptions) -> Result<ExtensionFrame> {
        if e == 0 {
            return Err(Error::InvalidArgument("exponent must be >= 1".into()));
        }
        let mu = base.order() as u64;
        let e = lcm(e, mu);
        let m = e / mu;
        let p = base.field().characteristic();
        let s = base.field().degree() as u64;
        let r = base.frobenius_power() as u64;
        let g0 = if r == 0 { s } else { gcd(r, s) };
        let big_degree = g0
            .checked_mul(e)
            .ok_or_else(|| Error::CapExceeded("big field degree overflows".into()))?;
        let cap = opts.cap.unwrap_or(FIELD_SIZE_CAP);
        let big_field = FiniteField::with_cap(p, big_degree as u32, opts.big_modulus.as_deref(), cap)?;

        // theta = tau^R with R = r (mod s) and order exactly e
        let capital_s = big_degree;
        let mut chosen = None;
        let mut j = 0u64;
        while j <= 2 * e + 2 {
            let cand = (r + j * s) % capital_s;
            let g = gcd(cand, capital_s); // gcd(0, S) = S, order 1
            if capital_s / g == e {
                chosen = Some(cand);
                break;
            }
            j += 1;
        }
        let big_r = chosen.ok_or_else(|| Error::Internal("no extension automorphism found".into()))?;
        let big = FieldAutomorphism::new(big_field.clone(), big_r as u32)?;

        // embed F_q via a root of its modulus
        let (base_to_big, big_to_base, embed_index, embed_count) =
            embed_field(base.field(), &big_field, opts.embed_index)?;

        // theta restricted to the embedded F_q must agree with sigma
        let gen_base = base.field().generator();
        let gen_img = FieldElement::clone(&{
            let idx = base_to_big[gen_base.index() as usize];
            big_field.from_index(idx as u64)
        });
        let lhs = big.apply(gen_img, 1);
        let rhs = big_field.from_index(base_to_big[base.apply(gen_base, 1).index() as usize] as u64);
        if lhs != rhs {
            return Err(Error::Internal("theta does not extend sigma on the embedded field".into()));
        }

        // fixed subfield F_{q0} inside the big field, for normality tests
        let fixed = SubfieldEmbedding::new(big_field.clone(), if r == 0 { s as u32 } else { gcd(r, s) as u32 }, None)?;

        // normal element
        let alpha = match opts.normal_dlog {
            Some(k) => {
                let a = big_field.generator_pow(k);
                if !is_normal_element(&big, &fixed, a, e) {
                    return Err(Error::InvalidArgument(format!(
                        "g^{k} is not a normal element of the big field"
                    )));
                }
                a
            }
            None => {
                let mut found = None;
                for a in big_field.elements_by_log() {
                    if is_normal_element(&big, &fixed, a, e) {
                        found = Some(a);
                        break;
                    }
                }
                found.ok_or_else(|| Error::Internal("no normal element found".into()))?
            }
        };
        let beta = big_field.div(big.apply(alpha, 1), alpha)?;
        let beta_orbit: Vec<FieldElement> = (0..e).map(|i| big.apply(beta, i as i64)).collect();

        let frame = ExtensionFrame {
            base: base.clone(),
            e,
            m,
            big,
            base_to_big,
            big_to_base,
            embed_index,
            embed_count,
            alpha,
            beta,
            beta_orbit,
            fixed,
        };

        // the lclm of the orbit factors must reproduce x^e - 1 exactly
        let fold = frame.fold_factors(&(0..e).collect::<Vec<_>>())?;
        if fold != SkewPoly::x_pow_minus_one(frame.big_ring(), e as usize) {
            return Err(Error::Internal("beta orbit does not split x^e - 1".into()));
        }
        Ok(frame)
    }

    /// Build the frame for the right exponent of `f`.
    pub fn build_from_poly(base: &FieldAutomorphism, f: &SkewPoly, opts: &FrameOptions) -> Result<ExtensionFrame> {
        let e = f.right_exponent(f.default_exponent_cap())?;
        Self::build(base, e, opts)
    }

    pub fn base_ring(&self) -> &FieldAutomorphism {
        &self.base
    }

    pub fn big_ring(&self) -> &FieldAutomorphism {
        &self.big
    }

    pub fn exponent(&self) -> u64 {
        self.e
    }

    pub fn orbit_length(&self) -> u64 {
        self.m
    }

    pub fn mu(&self) -> u64 {
        self.base.order() as u64
    }

    pub fn alpha(&self) -> FieldElement {
        self.alpha
    }

    pub fn beta(&self) -> FieldElement {
        self.beta
    }

    pub fn embedding_index(&self) -> usize {
        self.embed_index
    }

    pub fn embedding_count(&self) -> usize {
        self.embed_count
    }

    pub fn fixed_subfield(&self) -> &SubfieldEmbedding {
        &self.fixed
    }

    /// theta^i(beta), reduced mod e.
    pub fn root(&self, i: u64) -> FieldElement {
        self.beta_orbit[(i % self.e) as usize]
    }

    pub fn is_normal(&self, a: FieldElement) -> bool {
        is_normal_element(&self.big, &self.fixed, a, self.e)
    }

    /// Image of a base-field element in the big field.
    pub fn embed(&self, a: FieldElement) -> FieldElement {
        let idx = self.base_to_big[a.index() as usize];
        self.big.field().from_index(idx as u64)
    }

    /// Preimage of a big-field element, when it lies in the embedded copy.
    pub fn unembed(&self, a: FieldElement) -> Option<FieldElement> {
        let idx = self.big_to_base[a.index() as usize];
        if idx == u32::MAX {
            None
        } else {
            Some(self.base.field().from_index(idx as u64))
        }
    }

    /// Lift a base-ring polynomial into the big skew ring.
    pub fn embed_poly(&self, f: &SkewPoly) -> SkewPoly {
        let coeffs = f.coeffs().iter().map(|&c| self.embed(c)).collect();
        SkewPoly::from_coeffs(&self.big, coeffs)
    }

    /// Push a big-ring polynomial down to the base ring; fails when some
    /// coefficient is outside the embedded copy of F_q.
    pub fn lower_poly(&self, f: &SkewPoly) -> Result<SkewPoly> {
        let coeffs: Result<Vec<FieldElement>> = f
            .coeffs()
            .iter()
            .map(|&c| {
                self.unembed(c)
                    .ok_or_else(|| Error::Internal("coefficient not in the embedded base field".into()))
            })
            .collect();
        Ok(SkewPoly::from_coeffs(&self.base, coeffs?))
    }

    /// The e linear factors x - theta^i(beta) of x^e - 1.
    pub fn factor_unity(&self) -> Vec<SkewPoly> {
        (0..self.e).map(|i| self.linear_factor_at(self.root(i))).collect()
    }

    fn linear_factor_at(&self, root: FieldElement) -> SkewPoly {
        let f = self.big.field();
        SkewPoly::from_coeffs(&self.big, vec![f.neg(root), f.one()])
    }

    fn fold_factors(&self, indices: &[u64]) -> Result<SkewPoly> {
        let mut acc = SkewPoly::one(&self.big);
        for &i in indices {
            let lin = self.linear_factor_at(self.root(i));
            acc = if acc.degree() == Some(0) {
                lin
            } else {
                SkewPoly::lclm(&acc, &lin)?
            };
        }
        Ok(acc)
    }

    /// Right roots gamma * theta^i(beta) of x^n - N_n(gamma), 0 <= i < n.
    pub fn constacyclic_roots(&self, gamma: FieldElement, n: u64) -> Result<Vec<FieldElement>> {
        if gamma.is_zero() {
            return Err(Error::InvalidArgument("gamma must be nonzero".into()));
        }
        let g = self.embed(gamma);
        let f = self.big.field();
        Ok((0..n).map(|i| f.mul(g, self.root(i))).collect())
    }

    /// The beta-defining set of g: indices i with (x - theta^i(beta)) |_r g.
    pub fn defining_set(&self, g: &SkewPoly) -> Result<DefiningSet> {
        if g.is_zero() {
            return Err(Error::InvalidArgument("defining set of the zero polynomial".into()));
        }
        let lifted = self.embed_poly(g);
        let set: BTreeSet<u64> = (0..self.e)
            .filter(|&i| lifted.evaluate_right(self.root(i)).is_zero())
            .collect();
        Ok(DefiningSet { e: self.e, mu: self.mu(), set })
    }

    /// Minimal polynomial of the orbit theta^{i + j mu}(beta), j < m; its
    /// coefficients land in the embedded F_q and are returned over the base
    /// ring.
    pub fn orbit_min_poly(&self, i: u64) -> Result<SkewPoly> {
        let mu = self.mu();
        if i >= mu {
            return Err(Error::InvalidArgument(format!("orbit index {i} must be < mu = {mu}")));
        }
        let indices: Vec<u64> = (0..self.m).map(|j| i + j * mu).collect();
        let big = self.fold_factors(&indices)?;
        let lowered = self.lower_poly(&big)?;
        if lowered.degree() != Some(self.m as usize) {
            return Err(Error::Internal("orbit polynomial has unexpected degree".into()));
        }
        Ok(lowered)
    }

    /// Monic generator with the given mu-closed beta-defining set.
    pub fn generator_from_defining_set(&self, set: &BTreeSet<u64>) -> Result<SkewPoly> {
        let ds = DefiningSet { e: self.e, mu: self.mu(), set: set.clone() };
        if !ds.is_mu_closed() {
            return Err(Error::NotClosed);
        }
        let indices: Vec<u64> = set.iter().copied().collect();
        let big = self.fold_factors(&indices)?;
        let g = self.lower_poly(&big)?;
        debug_assert_eq!(g.degree(), Some(set.len()));
        Ok(g)
    }
}

/// A subset of Z_e attached to a frame exponent and sigma-order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningSet {
    pub e: u64,
    pub mu: u64,
    set: BTreeSet<u64>,
}

impl DefiningSet {
    pub fn new(e: u64, mu: u64, set: BTreeSet<u64>) -> Result<DefiningSet> {
        if mu == 0 || !e.is_multiple_of(mu) {
            return Err(Error::InvalidArgument(format!("mu = {mu} must divide e = {e}")));
        }
        if set.iter().any(|&i| i >= e) {
            return Err(Error::InvalidArgument("index outside Z_e".into()));
        }
        Ok(DefiningSet { e, mu, set })
    }

    pub fn indices(&self) -> &BTreeSet<u64> {
        &self.set
    }

    pub fn contains(&self, i: u64) -> bool {
        self.set.contains(&(i % self.e))
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn is_mu_closed(&self) -> bool {
        is_mu_closed(&self.set, self.mu, self.e).expect("validated at construction")
    }

    pub fn representatives(&self) -> BTreeSet<u64> {
        representative_set(&self.set, self.mu, self.e).expect("validated at construction")
    }
}

/// Union of the (i + mu Z_e)-orbits meeting T.
pub fn mu_closure(set: &BTreeSet<u64>, mu: u64, e: u64) -> Result<BTreeSet<u64>> {
    check_mu(mu, e)?;
    let mut out = BTreeSet::new();
    for &i in set {
        let mut j = i % e;
        loop {
            out.insert(j);
            j = (j + mu) % e;
            if j == i % e {
                break;
            }
        }
    }
    Ok(out)
}

pub fn is_mu_closed(set: &BTreeSet<u64>, mu: u64, e: u64) -> Result<bool> {
    check_mu(mu, e)?;
    Ok(set.iter().all(|&i| set.contains(&((i + mu) % e))))
}

/// One representative i mod mu for each orbit fully contained in T.
pub fn representative_set(set: &BTreeSet<u64>, mu: u64, e: u64) -> Result<BTreeSet<u64>> {
    check_mu(mu, e)?;
    let m = e / mu;
    let mut out = BTreeSet::new();
    for i in 0..mu {
        if (0..m).all(|j| set.contains(&((i + j * mu) % e))) {
            out.insert(i);
        }
    }
    Ok(out)
}

fn check_mu(mu: u64, e: u64) -> Result<()> {
    if mu == 0 || e == 0 || !e.is_multiple_of(mu) {
        return Err(Error::InvalidArgument(format!("mu = {mu} must divide e = {e}")));
    }
    Ok(())
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// A normal element has a theta-orbit that is linearly independent over the
/// fixed subfield; checked by elimination on the coordinate matrix.
pub fn is_normal_element(
    theta: &FieldAutomorphism,
    fixed: &SubfieldEmbedding,
    a: FieldElement,
    e: u64,
) -> bool {
    if a.is_zero() {
        return false;
    }
    let sub = fixed.subfield().clone();
    let mut rows: Vec<Vec<FieldElement>> = Vec::with_capacity(e as usize);
    let mut cur = a;
    for _ in 0..e {
        rows.push(fixed.decompose(cur));
        cur = theta.apply(cur, 1);
    }
    rank_over(&sub, rows) == e as usize
}

fn rank_over(field: &Arc<FiniteField>, mut rows: Vec<Vec<FieldElement>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut col = 0;
    while col < ncols && rank < rows.len() {
        if let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) {
            rows.swap(rank, pivot);
            let inv = field.inv(rows[rank][col]).unwrap();
            for c in col..ncols {
                rows[rank][c] = field.mul(rows[rank][c], inv);
            }
            for r in 0..rows.len() {
                if r != rank && !rows[r][col].is_zero() {
                    let f = rows[r][col];
                    for c in col..ncols {
                        let t = field.mul(f, rows[rank][c]);
                        rows[r][c] = field.sub(rows[r][c], t);
                    }
                }
            }
            rank += 1;
        }
        col += 1;
    }
    rank
}

fn embed_field(
    base: &Arc<FiniteField>,
    big: &Arc<FiniteField>,
    embed_index: Option<usize>,
) -> Result<(Vec<u32>, Vec<u32>, usize, usize)> {
    let s = base.degree();
    let q = base.order();
    let mut base_to_big = vec![0u32; q as usize];
    let mut big_to_base = vec![u32::MAX; big.order() as usize];
    if s == 1 {
        // prime field: constants map to constants
        for c in 0..q {
            let img = big.from_coords(&[c]);
            base_to_big[c as usize] = img.index();
            big_to_base[img.index() as usize] = c as u32;
        }
        return Ok((base_to_big, big_to_base, 0, 1));
    }
    let modulus = base.modulus().to_vec();
    let mut roots = Vec::new();
    for a in big.elements_by_log() {
        let mut acc = big.zero();
        for &c in modulus.iter().rev() {
            acc = big.mul(acc, a);
            if c != 0 {
                acc = big.add(acc, big.from_coords(&[c]));
            }
        }
        if acc.is_zero() {
            roots.push(a);
        }
    }
    if roots.len() != s as usize {
        return Err(Error::Internal(format!(
            "expected {s} embedding roots, found {}",
            roots.len()
        )));
    }
    let index = embed_index.unwrap_or(0);
    if index >= roots.len() {
        return Err(Error::InvalidArgument(format!(
            "embedding index {index} out of range 0..{}",
            roots.len()
        )));
    }
    let y = roots[index];
    // powers of y
    let mut ypow = Vec::with_capacity(s as usize);
    let mut cur = big.one();
    for _ in 0..s {
        ypow.push(cur);
        cur = big.mul(cur, y);
    }
    for idx in 0..q {
        let coords = base.coords(base.from_index(idx));
        let mut acc = big.zero();
        for (d, &c) in coords.iter().enumerate() {
            if c != 0 {
                acc = big.add(acc, big.mul(big.from_coords(&[c]), ypow[d]));
            }
        }
        base_to_big[idx as usize] = acc.index();
        big_to_base[acc.index() as usize] = idx as u32;
    }
    Ok((base_to_big, big_to_base, index, roots.len()))
}
