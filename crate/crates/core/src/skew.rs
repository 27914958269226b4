//! The skew polynomial ring F_q[x;sigma] with multiplication twisted by
//! x a = sigma(a) x: both Euclidean divisions, extended gcrd, lclm, remainder
//! evaluation, right exponents, centrality, minimal polynomials of sets, and
//! the scale map f(x) -> f(ax).

use crate::error::{Error, Result};
use crate::field::{FieldAutomorphism, FieldElement};

/// A skew polynomial, stored as ascending coefficients over its ring context.
/// The zero polynomial has an empty coefficient vector.
#[derive(Clone)]
pub struct SkewPoly {
    ctx: FieldAutomorphism,
    coeffs: Vec<FieldElement>,
}

impl PartialEq for SkewPoly {
    fn eq(&self, other: &Self) -> bool {
        self.same_ctx(other) && self.coeffs == other.coeffs
    }
}
impl Eq for SkewPoly {}

impl std::fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.display())
    }
}

impl SkewPoly {
    pub fn zero(ctx: &FieldAutomorphism) -> SkewPoly {
        SkewPoly { ctx: ctx.clone(), coeffs: Vec::new() }
    }

    pub fn one(ctx: &FieldAutomorphism) -> SkewPoly {
        SkewPoly::constant(ctx, ctx.field().one())
    }

    pub fn constant(ctx: &FieldAutomorphism, c: FieldElement) -> SkewPoly {
        let mut p = SkewPoly { ctx: ctx.clone(), coeffs: vec![c] };
        p.trim();
        p
    }

    pub fn x(ctx: &FieldAutomorphism) -> SkewPoly {
        SkewPoly::monomial(ctx, ctx.field().one(), 1)
    }

    pub fn monomial(ctx: &FieldAutomorphism, c: FieldElement, degree: usize) -> SkewPoly {
        if c.is_zero() {
            return SkewPoly::zero(ctx);
        }
        let mut coeffs = vec![ctx.field().zero(); degree + 1];
        coeffs[degree] = c;
        SkewPoly { ctx: ctx.clone(), coeffs }
    }

    /// x^n - 1 in the given ring.
    pub fn x_pow_minus_one(ctx: &FieldAutomorphism, n: usize) -> SkewPoly {
        let f = ctx.field();
        let mut coeffs = vec![f.zero(); n + 1];
        coeffs[0] = f.neg(f.one());
        coeffs[n] = f.one();
        let mut p = SkewPoly { ctx: ctx.clone(), coeffs };
        p.trim();
        p
    }

    pub fn from_coeffs(ctx: &FieldAutomorphism, coeffs: Vec<FieldElement>) -> SkewPoly {
        let mut p = SkewPoly { ctx: ctx.clone(), coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn context(&self) -> &FieldAutomorphism {
        &self.ctx
    }

    fn same_ctx(&self, other: &SkewPoly) -> bool {
        self.ctx.field().id() == other.ctx.field().id()
            && self.ctx.frobenius_power() == other.ctx.frobenius_power()
    }

    #[track_caller]
    fn assert_ctx(&self, other: &SkewPoly) {
        assert!(self.same_ctx(other), "skew ring context mismatch");
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None encodes degree -infinity of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or_else(|| self.ctx.field().zero())
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == Some(self.ctx.field().one())
    }

    pub fn add(&self, other: &SkewPoly) -> SkewPoly {
        self.assert_ctx(other);
        let f = self.ctx.field();
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        SkewPoly::from_coeffs(&self.ctx, coeffs)
    }

    pub fn sub(&self, other: &SkewPoly) -> SkewPoly {
        self.assert_ctx(other);
        let f = self.ctx.field();
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        SkewPoly::from_coeffs(&self.ctx, coeffs)
    }

    pub fn neg(&self) -> SkewPoly {
        let f = self.ctx.field();
        SkewPoly::from_coeffs(&self.ctx, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    /// Twisted product: coefficient k of fg is sum_{i+j=k} f_i sigma^i(g_j).
    pub fn mul(&self, other: &SkewPoly) -> SkewPoly {
        self.assert_ctx(other);
        if self.is_zero() || other.is_zero() {
            return SkewPoly::zero(&self.ctx);
        }
        let f = self.ctx.field();
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let t = f.mul(a, self.ctx.apply(b, i as i64));
                out[i + j] = f.add(out[i + j], t);
            }
        }
        SkewPoly::from_coeffs(&self.ctx, out)
    }

    /// Left-scale every coefficient: c * f.
    pub fn scale(&self, c: FieldElement) -> SkewPoly {
        let f = self.ctx.field();
        SkewPoly::from_coeffs(&self.ctx, self.coeffs.iter().map(|&a| f.mul(c, a)).collect())
    }

    /// The monic associate lc(f)^{-1} f.
    pub fn monic(&self) -> SkewPoly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(self.ctx.field().inv(lc).expect("nonzero leading coeff")),
        }
    }

    /// Right division: f = q g + rem with deg rem < deg g.
    pub fn right_divmod(&self, g: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        self.assert_ctx(g);
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = self.ctx.field();
        let dg = g.degree().unwrap();
        let lg = g.leading_coeff().unwrap();
        let mut rem = self.clone();
        let mut quot = vec![f.zero(); self.coeffs.len().saturating_sub(dg)];
        while let Some(dr) = rem.degree() {
            if dr < dg {
                break;
            }
            let d = dr - dg;
            // (c x^d) g has leading coefficient c sigma^d(lg)
            let c = f
                .div(rem.leading_coeff().unwrap(), self.ctx.apply(lg, d as i64))
                .expect("leading coefficient nonzero");
            quot[d] = c;
            let t = SkewPoly::monomial(&self.ctx, c, d).mul(g);
            rem = rem.sub(&t);
        }
        Ok((SkewPoly::from_coeffs(&self.ctx, quot), rem))
    }

    /// Left division: f = g q + rem with deg rem < deg g.
    pub fn left_divmod(&self, g: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        self.assert_ctx(g);
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = self.ctx.field();
        let dg = g.degree().unwrap();
        let lg = g.leading_coeff().unwrap();
        let lg_inv = f.inv(lg).unwrap();
        let mut rem = self.clone();
        let mut quot = vec![f.zero(); self.coeffs.len().saturating_sub(dg)];
        while let Some(dr) = rem.degree() {
            if dr < dg {
                break;
            }
            let d = dr - dg;
            // g (c x^d) has leading coefficient lg sigma^{dg}(c)
            let c = self
                .ctx
                .apply(f.mul(lg_inv, rem.leading_coeff().unwrap()), -(dg as i64));
            quot[d] = c;
            let t = g.mul(&SkewPoly::monomial(&self.ctx, c, d));
            rem = rem.sub(&t);
        }
        Ok((SkewPoly::from_coeffs(&self.ctx, quot), rem))
    }

    pub fn right_divides(&self, other: &SkewPoly) -> bool {
        match other.right_divmod(self) {
            Ok((_, rem)) => rem.is_zero(),
            Err(_) => false,
        }
    }

    /// Right remainder evaluation f(a), computed via the twisted-norm sum
    /// f(a) = sum_i f_i N_i(a); it equals the remainder of right division by
    /// (x - a).
    pub fn evaluate_right(&self, a: FieldElement) -> FieldElement {
        let f = self.ctx.field();
        let mut acc = f.zero();
        let mut norm = f.one(); // N_0
        for (i, &c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = f.add(acc, f.mul(c, norm));
            }
            // N_{i+1}(a) = sigma^i(a) N_i(a)
            norm = f.mul(self.ctx.apply(a, i as i64), norm);
        }
        acc
    }

    /// Extended right Euclid: returns monic d = gcrd(f, g) together with left
    /// cofactors (u, v) satisfying d = u f + v g exactly.
    pub fn gcrd_extended(f: &SkewPoly, g: &SkewPoly) -> Result<(SkewPoly, SkewPoly, SkewPoly)> {
        f.assert_ctx(g);
        if f.is_zero() && g.is_zero() {
            return Err(Error::Undefined("gcrd(0, 0)".into()));
        }
        let ctx = &f.ctx;
        let fld = ctx.field();
        let mut r0 = f.clone();
        let mut r1 = g.clone();
        let mut u0 = SkewPoly::one(ctx);
        let mut v0 = SkewPoly::zero(ctx);
        let mut u1 = SkewPoly::zero(ctx);
        let mut v1 = SkewPoly::one(ctx);
        while !r1.is_zero() {
            let (q, r2) = r0.right_divmod(&r1)?;
            let u2 = u0.sub(&q.mul(&u1));
            let v2 = v0.sub(&q.mul(&v1));
            r0 = r1;
            r1 = r2;
            u0 = u1;
            v0 = v1;
            u1 = u2;
            v1 = v2;
        }
        let lc = r0.leading_coeff().unwrap();
        let c = fld.inv(lc).unwrap();
        Ok((r0.scale(c), u0.scale(c), v0.scale(c)))
    }

    pub fn gcrd(f: &SkewPoly, g: &SkewPoly) -> Result<SkewPoly> {
        Ok(Self::gcrd_extended(f, g)?.0)
    }

    /// Least common left multiple, monic. Computed from the cofactor at the
    /// vanishing step of the extended Euclidean sequence.
    pub fn lclm(f: &SkewPoly, g: &SkewPoly) -> Result<SkewPoly> {
        f.assert_ctx(g);
        if f.is_zero() || g.is_zero() {
            return Err(Error::Undefined("lclm with a zero argument".into()));
        }
        let ctx = &f.ctx;
        let mut r0 = f.clone();
        let mut r1 = g.clone();
        let mut u0 = SkewPoly::one(ctx);
        let mut u1 = SkewPoly::zero(ctx);
        while !r1.is_zero() {
            let (q, r2) = r0.right_divmod(&r1)?;
            let u2 = u0.sub(&q.mul(&u1));
            r0 = r1;
            r1 = r2;
            u0 = u1;
            u1 = u2;
        }
        // u1 f = -v1 g is the least common left multiple
        let m = u1.mul(f).monic();
        debug_assert_eq!(
            m.degree().unwrap() + r0.degree().unwrap(),
            f.degree().unwrap() + g.degree().unwrap(),
            "degree identity deg lclm + deg gcrd = deg f + deg g"
        );
        Ok(m)
    }

    /// Least e >= 1 with f right-dividing x^e - 1. When f(0) = 0, the maximal
    /// left factor x^h is stripped first. Errors with CapExceeded when e would
    /// exceed `cap`.
    pub fn right_exponent(&self, cap: u64) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::Undefined("right exponent of 0".into()));
        }
        let ctx = &self.ctx;
        let fld = ctx.field();
        // strip x^h: f = x^h g with g(0) != 0, shifting twists coefficients
        let h = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        let work: SkewPoly = if h > 0 {
            let coeffs = self.coeffs[h..]
                .iter()
                .map(|&c| ctx.apply(c, -(h as i64)))
                .collect();
            SkewPoly::from_coeffs(ctx, coeffs)
        } else {
            self.clone()
        };
        if work.degree() == Some(0) {
            return Ok(1); // unit divides x - 1
        }
        let one = SkewPoly::one(ctx);
        let x = SkewPoly::x(ctx);
        let mut r = one.clone(); // x^0 mod_r f
        let mut e: u64 = 0;
        loop {
            r = x.mul(&r).right_divmod(&work)?.1;
            e += 1;
            if r == one {
                return Ok(e);
            }
            if e >= cap {
                return Err(Error::CapExceeded(format!(
                    "right exponent exceeds cap {cap} (field order {}, degree {})",
                    fld.order(),
                    work.degree().unwrap()
                )));
            }
        }
    }

    /// Default right-exponent cap q^deg(f) * mu, saturating.
    pub fn default_exponent_cap(&self) -> u64 {
        let q = self.ctx.field().order();
        let d = self.degree().unwrap_or(0) as u32;
        let mut cap: u64 = self.ctx.order() as u64;
        for _ in 0..d {
            cap = cap.saturating_mul(q);
        }
        cap
    }

    /// Central iff all nonzero coefficients sit at exponents divisible by mu
    /// and lie in the fixed subfield.
    pub fn is_central(&self) -> bool {
        let mu = self.ctx.order() as usize;
        self.coeffs.iter().enumerate().all(|(i, &c)| {
            c.is_zero() || (i % mu == 0 && self.ctx.apply(c, 1) == c)
        })
    }

    /// Invariant iff f x and f xi are left multiples of f (the two ring
    /// generators suffice).
    pub fn is_invariant(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        let x = SkewPoly::x(&self.ctx);
        let xi = SkewPoly::constant(&self.ctx, self.ctx.field().generator());
        for gen in [x, xi] {
            let prod = self.mul(&gen);
            match prod.right_divmod(self) {
                Ok((_, rem)) if rem.is_zero() => {}
                _ => return false,
            }
        }
        true
    }

    /// Monic least left common multiple of {x - a : a in A}; the empty set
    /// yields 1.
    pub fn minimal_polynomial_of_set(ctx: &FieldAutomorphism, set: &[FieldElement]) -> SkewPoly {
        let f = ctx.field();
        let mut acc = SkewPoly::one(ctx);
        for &a in set {
            let lin = SkewPoly::from_coeffs(ctx, vec![f.neg(a), f.one()]);
            acc = if acc.degree() == Some(0) {
                lin
            } else {
                SkewPoly::lclm(&acc, &lin).expect("nonzero inputs")
            };
        }
        acc
    }

    /// Right vanishing set of f over its own coefficient field.
    pub fn vanishing_set(&self) -> Vec<FieldElement> {
        self.ctx
            .field()
            .elements()
            .filter(|&a| self.evaluate_right(a).is_zero())
            .collect()
    }

    /// g is a W-polynomial when it is the minimal polynomial of its own
    /// vanishing set.
    pub fn is_w_polynomial(&self) -> bool {
        if !self.is_monic() {
            return false;
        }
        let v = self.vanishing_set();
        &SkewPoly::minimal_polynomial_of_set(&self.ctx, &v) == self
    }

    /// The scale map phi_a: coefficient i becomes f_i N_i(a).
    pub fn scale_map(&self, a: FieldElement) -> Result<SkewPoly> {
        if a.is_zero() {
            return Err(Error::InvalidScale);
        }
        let f = self.ctx.field();
        let mut norm = f.one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (i, &c) in self.coeffs.iter().enumerate() {
            out.push(f.mul(c, norm));
            norm = f.mul(self.ctx.apply(a, i as i64), norm);
        }
        Ok(SkewPoly::from_coeffs(&self.ctx, out))
    }

    /// Apply a power of the ring automorphism to every coefficient.
    pub fn map_coeffs_by_aut(&self, power: i64) -> SkewPoly {
        SkewPoly::from_coeffs(
            &self.ctx,
            self.coeffs.iter().map(|&c| self.ctx.apply(c, power)).collect(),
        )
    }

    // -- text form -----------------------------------------------------------

    /// Canonical text form, descending exponents: `x^4 + g^52*x^3 + ... + g^33`.
    pub fn display(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = self.ctx.field();
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let lit = f.format_element(c);
            let part = match i {
                0 => lit,
                _ => {
                    let xp = if i == 1 { "x".to_string() } else { format!("x^{i}") };
                    if lit == "1" {
                        xp
                    } else {
                        format!("{lit}*{xp}")
                    }
                }
            };
            parts.push(part);
        }
        parts.join(" + ")
    }

    /// Parse the polynomial grammar `term ('+' term)*` where a term is a
    /// coefficient literal, `x^k`, or `coeff*x^k`.
    pub fn parse(ctx: &FieldAutomorphism, text: &str) -> Result<SkewPoly> {
        let f = ctx.field();
        let mut acc = SkewPoly::zero(ctx);
        let body = text.trim();
        if body.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        for raw in body.split('+') {
            let term = raw.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in {text:?}")));
            }
            let (coeff_txt, x_txt) = match term.find('x') {
                None => (term, None),
                Some(pos) => {
                    let c = term[..pos].trim().trim_end_matches('*').trim();
                    (c, Some(term[pos..].trim()))
                }
            };
            let coeff = if coeff_txt.is_empty() {
                f.one()
            } else {
                f.parse_element(coeff_txt)?
            };
            let degree = match x_txt {
                None => 0,
                Some("x") => 1,
                Some(xp) => {
                    let e = xp
                        .strip_prefix("x^")
                        .ok_or_else(|| Error::Parse(format!("bad term {term:?}")))?;
                    e.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {term:?}")))?
                }
            };
            acc = acc.add(&SkewPoly::monomial(ctx, coeff, degree));
        }
        Ok(acc)
    }
}
