//! Coefficient ring backends.
//!
//! Three computable backends: a prime field F_p, the ring Z/n, and a graded
//! quotient k[x_1..x_v]/(relations) of a polynomial ring over a prime field,
//! truncated at an internal-degree bound. The prime field is the special case
//! of a graded quotient with no variables, so the field backends share one
//! code path; Z/n has its own (lattice-based) path.
//!
//! Relations in graded quotients are restricted to homogeneous monomials and
//! binomials. They are oriented into rewrite rules (largest monomial in
//! degree-lex order becomes the lead), and confluence is verified exhaustively
//! on all monomials up to the degree bound at construction time. This covers
//! quotients like k[x,y]/(xy) and k[x,y]/(x^2,y^2) without a Gröbner engine.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::fp::FpMat;

/// Exponent vector; one entry per ring variable.
pub type Mono = Vec<u32>;

/// User-facing description of a coefficient ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum RingSpec {
    PrimeField {
        p: u64,
    },
    IntMod {
        n: u64,
    },
    GradedQuotient {
        p: u64,
        /// Variable names with their (positive) internal degrees.
        vars: Vec<(String, u32)>,
        /// Relation polynomials, e.g. `"x*y"` or `"x^2 + y^2"`.
        relations: Vec<String>,
        /// Internal-degree bound for ring arithmetic.
        bound: i64,
    },
}

#[derive(Debug, Clone)]
struct Rule {
    lead: Mono,
    /// `None` means the lead rewrites to zero.
    rhs: Option<(u64, Mono)>,
}

#[derive(Debug)]
struct GradedRing {
    p: u64,
    vars: Vec<(String, u32)>,
    bound: i64,
    rules: Vec<Rule>,
    /// Normal form of every monomial of degree <= bound.
    nf: BTreeMap<Mono, Option<(u64, Mono)>>,
    /// Irreducible monomials per degree 0..=bound, descending lex.
    slices: Vec<Vec<Mono>>,
    slice_index: BTreeMap<Mono, (usize, usize)>,
}

#[derive(Debug)]
enum Repr {
    Graded(GradedRing),
    IntMod { n: u64 },
}

/// Handle to a coefficient ring; cheap to clone, immutable after construction.
#[derive(Clone)]
pub struct Ring {
    spec: RingSpec,
    repr: Arc<Repr>,
}

impl std::fmt::Debug for Ring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ring({:?})", self.spec)
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}
impl Eq for Ring {}

/// A ring element in canonical form: a reduced residue for Z/n, or a
/// normal-form polynomial (truncated at the ring bound) for the field
/// backends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Mod(u64),
    Poly(BTreeMap<Mono, u64>),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
}

fn mono_divides(a: &Mono, b: &Mono) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| x <= y)
}

fn mono_div(b: &Mono, a: &Mono) -> Mono {
    b.iter().zip(a.iter()).map(|(y, x)| y - x).collect()
}

fn weighted_degree(m: &Mono, vars: &[(String, u32)]) -> i64 {
    m.iter()
        .zip(vars.iter())
        .map(|(&e, (_, w))| e as i64 * *w as i64)
        .sum()
}

/// Descending lexicographic order on exponent vectors (x before y).
fn lex_desc(a: &Mono, b: &Mono) -> std::cmp::Ordering {
    b.cmp(a)
}

fn enumerate_monomials(vars: &[(String, u32)], degree: i64, out: &mut Vec<Mono>) {
    fn rec(weights: &[u32], idx: usize, rem: i64, cur: &mut Mono, out: &mut Vec<Mono>) {
        if idx == weights.len() {
            if rem == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[idx] as i64;
        let max = rem / w;
        for e in 0..=max {
            cur.push(e as u32);
            rec(weights, idx + 1, rem - e * w, cur, out);
            cur.pop();
        }
    }
    if degree < 0 {
        return;
    }
    let weights: Vec<u32> = vars.iter().map(|(_, w)| *w).collect();
    let mut cur = Vec::new();
    rec(&weights, 0, degree, &mut cur, out);
}

impl GradedRing {
    fn build(p: u64, vars: Vec<(String, u32)>, relations: &[String], bound: i64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if bound < 0 {
            return Err(Error::Invalid("degree bound must be non-negative".into()));
        }
        for (name, w) in &vars {
            if *w == 0 {
                return Err(Error::Invalid(format!(
                    "variable `{name}` must have positive degree"
                )));
            }
        }
        let mut rules = Vec::new();
        for rel in relations {
            let terms = parse_poly(rel, &vars, p)?;
            let terms: Vec<(u64, Mono)> = terms.into_iter().filter(|(c, _)| *c % p != 0).collect();
            if terms.is_empty() {
                continue; // relation is zero mod p
            }
            let d0 = weighted_degree(&terms[0].1, &vars);
            if terms.iter().any(|(_, m)| weighted_degree(m, &vars) != d0) {
                return Err(Error::NonHomogeneousRelation(rel.clone()));
            }
            if terms.len() > 2 {
                return Err(Error::Invalid(format!(
                    "relation `{rel}` has more than two terms; only monomial and binomial relations are supported"
                )));
            }
            if terms.len() == 1 {
                rules.push(Rule { lead: terms[0].1.clone(), rhs: None });
            } else {
                let (c1, m1) = terms[0].clone();
                let (c2, m2) = terms[1].clone();
                if m1 == m2 {
                    // coefficients combined to a monomial relation or nothing
                    if (c1 + c2) % p != 0 {
                        rules.push(Rule { lead: m1, rhs: None });
                    }
                    continue;
                }
                let (lead, clead, tail, ctail) = if lex_desc(&m1, &m2).is_lt() {
                    (m1, c1, m2, c2)
                } else {
                    (m2, c2, m1, c1)
                };
                // lead*clead + tail*ctail = 0  =>  lead -> (-ctail/clead)*tail
                let coeff = (p - ctail % p) % p * crate::linalg::fp::inv_mod(clead, p) % p;
                rules.push(Rule { lead, rhs: Some((coeff, tail)) });
            }
        }

        let mut ring = GradedRing {
            p,
            vars,
            bound,
            rules,
            nf: BTreeMap::new(),
            slices: Vec::new(),
            slice_index: BTreeMap::new(),
        };
        ring.precompute()?;
        Ok(ring)
    }

    fn precompute(&mut self) -> Result<()> {
        // normal forms of all monomials of degree <= bound, checking confluence
        let mut all = Vec::new();
        for d in 0..=self.bound {
            enumerate_monomials(&self.vars, d, &mut all);
        }
        all.sort_by(|a, b| {
            weighted_degree(a, &self.vars)
                .cmp(&weighted_degree(b, &self.vars))
                .then_with(|| a.cmp(b))
        });
        for m in &all {
            let mut outcomes: Vec<Option<(u64, Mono)>> = Vec::new();
            let applicable: Vec<&Rule> = self
                .rules
                .iter()
                .filter(|r| mono_divides(&r.lead, m))
                .collect();
            if applicable.is_empty() {
                self.nf.insert(m.clone(), Some((1, m.clone())));
                continue;
            }
            for rule in applicable {
                let q = mono_div(m, &rule.lead);
                let step = match &rule.rhs {
                    None => None,
                    Some((c, tail)) => Some((*c, mono_mul(&q, tail))),
                };
                let nf = match step {
                    None => None,
                    Some((c, m2)) => {
                        // m2 has the same degree and is lex-smaller: already tabulated
                        let sub = self.nf.get(&m2).expect("normal form order violated");
                        sub.as_ref().map(|(c2, m3)| (c * c2 % self.p, m3.clone()))
                    }
                };
                let nf = nf.filter(|(c, _)| *c % self.p != 0);
                outcomes.push(nf);
            }
            outcomes.sort();
            outcomes.dedup();
            if outcomes.len() > 1 {
                let show = |o: &Option<(u64, Mono)>| match o {
                    None => "0".to_string(),
                    Some((c, m)) => format!("{}*{}", c, self.format_mono(m)),
                };
                return Err(Error::NonConfluent(
                    self.format_mono(m),
                    show(&outcomes[0]),
                    show(&outcomes[1]),
                ));
            }
            self.nf.insert(m.clone(), outcomes.into_iter().next().unwrap());
        }

        // irreducible monomials per degree
        for d in 0..=self.bound {
            let mut mons = Vec::new();
            enumerate_monomials(&self.vars, d, &mut mons);
            let mut slice: Vec<Mono> = mons
                .into_iter()
                .filter(|m| matches!(self.nf.get(m), Some(Some((c, m2))) if *c == 1 && m2 == m))
                .collect();
            slice.sort_by(lex_desc);
            let di = self.slices.len();
            for (i, m) in slice.iter().enumerate() {
                self.slice_index.insert(m.clone(), (di, i));
            }
            self.slices.push(slice);
        }
        Ok(())
    }

    fn format_mono(&self, m: &Mono) -> String {
        if m.iter().all(|&e| e == 0) {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in m.iter().enumerate() {
            if e == 1 {
                parts.push(self.vars[i].0.clone());
            } else if e > 1 {
                parts.push(format!("{}^{}", self.vars[i].0, e));
            }
        }
        parts.join("*")
    }
}

fn parse_poly(s: &str, vars: &[(String, u32)], p: u64) -> Result<Vec<(u64, Mono)>> {
    // grammar: term (("+"|"-") term)*, term = [int] ("*"? var ("^" int)?)*
    let nv = vars.len();
    let mut terms: Vec<(u64, Mono)> = Vec::new();
    let mut chars = s.chars().peekable();
    let mut sign = 1i64;
    let mut first = true;
    loop {
        while chars.peek().is_some_and(|c| c.is_whitespace()) {
            chars.next();
        }
        match chars.peek() {
            None => {
                if first {
                    return Err(Error::Invalid("empty polynomial".into()));
                }
                break;
            }
            Some('+') => {
                chars.next();
                sign = 1;
            }
            Some('-') => {
                chars.next();
                sign = -1;
            }
            Some(_) if first => {}
            Some(c) => {
                return Err(Error::Invalid(format!("unexpected `{c}` in polynomial `{s}`")));
            }
        }
        first = false;
        // one term
        let mut coeff: i64 = 1;
        let mut mono = vec![0u32; nv];
        let mut saw_anything = false;
        loop {
            while chars.peek().is_some_and(|c| c.is_whitespace() || *c == '*') {
                chars.next();
            }
            match chars.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let mut num = 0i64;
                    while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                        num = num * 10 + (chars.next().unwrap() as i64 - '0' as i64);
                    }
                    coeff *= num;
                    saw_anything = true;
                }
                Some(c) if c.is_alphabetic() || *c == '_' => {
                    let mut name = String::new();
                    while chars
                        .peek()
                        .is_some_and(|c| c.is_alphanumeric() || *c == '_')
                    {
                        name.push(chars.next().unwrap());
                    }
                    let idx = vars
                        .iter()
                        .position(|(v, _)| *v == name)
                        .ok_or(Error::UnknownVariable(name.clone()))?;
                    let mut exp = 1u32;
                    if chars.peek() == Some(&'^') {
                        chars.next();
                        let mut num = 0u32;
                        if !chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                            return Err(Error::Invalid(format!("missing exponent in `{s}`")));
                        }
                        while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                            num = num * 10 + (chars.next().unwrap() as u32 - '0' as u32);
                        }
                        exp = num;
                    }
                    mono[idx] += exp;
                    saw_anything = true;
                }
                _ => break,
            }
        }
        if !saw_anything {
            return Err(Error::Invalid(format!("empty term in polynomial `{s}`")));
        }
        let c = (sign * coeff).rem_euclid(p as i64) as u64;
        terms.push((c, mono));
    }
    // merge duplicate monomials
    let mut merged: BTreeMap<Mono, u64> = BTreeMap::new();
    for (c, m) in terms {
        *merged.entry(m).or_insert(0) += c;
    }
    Ok(merged
        .into_iter()
        .map(|(m, c)| (c % p, m))
        .filter(|(c, _)| *c != 0)
        .collect())
}

/// Construct a ring handle from its specification.
pub fn make_ring(spec: RingSpec) -> Result<Ring> {
    let repr = match &spec {
        RingSpec::PrimeField { p } => {
            if !is_prime(*p) {
                return Err(Error::NonPrime(*p));
            }
            Repr::Graded(GradedRing::build(*p, Vec::new(), &[], 0)?)
        }
        RingSpec::IntMod { n } => {
            if *n < 2 {
                return Err(Error::ModulusTooSmall(*n));
            }
            Repr::IntMod { n: *n }
        }
        RingSpec::GradedQuotient { p, vars, relations, bound } => {
            Repr::Graded(GradedRing::build(*p, vars.clone(), relations, *bound)?)
        }
    };
    Ok(Ring { spec, repr: Arc::new(repr) })
}

impl Ring {
    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    fn graded(&self) -> Option<&GradedRing> {
        match &*self.repr {
            Repr::Graded(g) => Some(g),
            Repr::IntMod { .. } => None,
        }
    }

    /// True for the graded-quotient backend with at least one variable.
    pub fn is_graded(&self) -> bool {
        self.graded().is_some_and(|g| !g.vars.is_empty())
    }

    /// True for both field backends (prime field and graded quotient).
    pub fn is_field_backend(&self) -> bool {
        self.graded().is_some()
    }

    pub fn is_int_mod(&self) -> bool {
        matches!(&*self.repr, Repr::IntMod { .. })
    }

    /// Characteristic of the base field, for the field backends.
    pub fn prime(&self) -> Option<u64> {
        self.graded().map(|g| g.p)
    }

    pub fn modulus(&self) -> Option<u64> {
        match &*self.repr {
            Repr::IntMod { n } => Some(*n),
            _ => None,
        }
    }

    pub fn degree_bound(&self) -> Option<i64> {
        self.graded().filter(|g| !g.vars.is_empty()).map(|g| g.bound)
    }

    pub fn num_vars(&self) -> usize {
        self.graded().map_or(0, |g| g.vars.len())
    }

    pub fn var_names(&self) -> Vec<String> {
        self.graded()
            .map_or(Vec::new(), |g| g.vars.iter().map(|(n, _)| n.clone()).collect())
    }

    pub fn zero(&self) -> Scalar {
        match &*self.repr {
            Repr::Graded(_) => Scalar::Poly(BTreeMap::new()),
            Repr::IntMod { .. } => Scalar::Mod(0),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> Scalar {
        match &*self.repr {
            Repr::Graded(g) => {
                let c = v.rem_euclid(g.p as i64) as u64;
                if c == 0 {
                    Scalar::Poly(BTreeMap::new())
                } else {
                    let mono = vec![0u32; g.vars.len()];
                    Scalar::Poly(BTreeMap::from([(mono, c)]))
                }
            }
            Repr::IntMod { n } => Scalar::Mod(v.rem_euclid(*n as i64) as u64),
        }
    }

    /// The scalar for a single variable, by name.
    pub fn var(&self, name: &str) -> Result<Scalar> {
        let g = self.graded().ok_or(Error::Backend("var".into()))?;
        let idx = g
            .vars
            .iter()
            .position(|(v, _)| v == name)
            .ok_or(Error::UnknownVariable(name.to_string()))?;
        let mut mono = vec![0u32; g.vars.len()];
        mono[idx] = 1;
        Ok(Scalar::Poly(BTreeMap::from([(mono, 1)])))
    }

    pub fn is_zero(&self, s: &Scalar) -> bool {
        match s {
            Scalar::Mod(v) => *v == 0,
            Scalar::Poly(m) => m.is_empty(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (&*self.repr, a, b) {
            (Repr::IntMod { n }, Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x + y) % n),
            (Repr::Graded(g), Scalar::Poly(x), Scalar::Poly(y)) => {
                let mut out = x.clone();
                for (m, c) in y {
                    let e = out.entry(m.clone()).or_insert(0);
                    *e = (*e + c) % g.p;
                    if *e == 0 {
                        out.remove(m);
                    }
                }
                Scalar::Poly(out)
            }
            _ => panic!("scalar backend mismatch"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (&*self.repr, a) {
            (Repr::IntMod { n }, Scalar::Mod(x)) => Scalar::Mod((n - x % n) % n),
            (Repr::Graded(g), Scalar::Poly(x)) => Scalar::Poly(
                x.iter()
                    .map(|(m, c)| (m.clone(), (g.p - c % g.p) % g.p))
                    .filter(|(_, c)| *c != 0)
                    .collect(),
            ),
            _ => panic!("scalar backend mismatch"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        match (&*self.repr, a, b) {
            (Repr::IntMod { n }, Scalar::Mod(x), Scalar::Mod(y)) => Ok(Scalar::Mod(x * y % n)),
            (Repr::Graded(g), Scalar::Poly(x), Scalar::Poly(y)) => {
                let mut out: BTreeMap<Mono, u64> = BTreeMap::new();
                for (ma, ca) in x {
                    for (mb, cb) in y {
                        let d = weighted_degree(ma, &g.vars) + weighted_degree(mb, &g.vars);
                        if d > g.bound {
                            return Err(Error::DegreeBound { degree: d, bound: g.bound });
                        }
                        let prod = mono_mul(ma, mb);
                        if let Some((cn, mn)) =
                            g.nf.get(&prod).expect("product within bound").clone()
                        {
                            let c = ca * cb % g.p * cn % g.p;
                            let e = out.entry(mn).or_insert(0);
                            *e = (*e + c) % g.p;
                        }
                    }
                }
                out.retain(|_, c| *c != 0);
                Ok(Scalar::Poly(out))
            }
            _ => panic!("scalar backend mismatch"),
        }
    }

    /// Degree of a homogeneous scalar; `None` for zero. Errors when the
    /// scalar mixes degrees.
    pub fn homogeneous_degree(&self, s: &Scalar) -> Result<Option<i64>> {
        match (&*self.repr, s) {
            (Repr::IntMod { .. }, Scalar::Mod(v)) => Ok(if *v == 0 { None } else { Some(0) }),
            (Repr::Graded(g), Scalar::Poly(m)) => {
                let mut deg = None;
                for mono in m.keys() {
                    let d = weighted_degree(mono, &g.vars);
                    match deg {
                        None => deg = Some(d),
                        Some(d0) if d0 != d => {
                            return Err(Error::Invalid(format!(
                                "scalar `{}` is not homogeneous",
                                self.format_scalar(s)
                            )))
                        }
                        _ => {}
                    }
                }
                Ok(deg)
            }
            _ => panic!("scalar backend mismatch"),
        }
    }

    /// Basis monomials of the degree-`d` slice of the ring.
    pub fn slice_basis(&self, d: i64) -> Result<&[Mono]> {
        let g = self.graded().ok_or(Error::Backend("slice_basis".into()))?;
        if d < 0 {
            return Ok(&[]);
        }
        if d > g.bound {
            return Err(Error::DegreeBound { degree: d, bound: g.bound });
        }
        Ok(&g.slices[d as usize])
    }

    pub fn slice_dim(&self, d: i64) -> Result<usize> {
        Ok(self.slice_basis(d)?.len())
    }

    /// Index of an irreducible monomial within its slice basis.
    pub fn slice_position(&self, m: &Mono) -> Option<(usize, usize)> {
        self.graded().and_then(|g| g.slice_index.get(m).copied())
    }

    /// Multiply a monomial into a scalar and expand over a slice basis:
    /// returns pairs (basis index in slice of degree deg(m) + deg(s), coeff).
    pub fn mono_scalar_expand(&self, m: &Mono, s: &Scalar) -> Result<Vec<(usize, u64)>> {
        let g = self.graded().ok_or(Error::Backend("mono_scalar_expand".into()))?;
        let Scalar::Poly(terms) = s else { panic!("scalar backend mismatch") };
        let mut out: BTreeMap<usize, u64> = BTreeMap::new();
        for (ms, c) in terms {
            let d = weighted_degree(m, &g.vars) + weighted_degree(ms, &g.vars);
            if d > g.bound {
                return Err(Error::DegreeBound { degree: d, bound: g.bound });
            }
            let prod = mono_mul(m, ms);
            if let Some((cn, mn)) = g.nf.get(&prod).expect("within bound") {
                let (_, idx) = g.slice_index[mn];
                let e = out.entry(idx).or_insert(0);
                *e = (*e + c * cn) % g.p;
            }
        }
        Ok(out.into_iter().filter(|(_, c)| *c != 0).collect())
    }

    pub fn format_scalar(&self, s: &Scalar) -> String {
        match (&*self.repr, s) {
            (Repr::IntMod { .. }, Scalar::Mod(v)) => v.to_string(),
            (Repr::Graded(g), Scalar::Poly(m)) => {
                if m.is_empty() {
                    return "0".to_string();
                }
                let mut terms: Vec<(&Mono, &u64)> = m.iter().collect();
                terms.sort_by(|(a, _), (b, _)| {
                    weighted_degree(a, &g.vars)
                        .cmp(&weighted_degree(b, &g.vars))
                        .then_with(|| lex_desc(a, b))
                });
                let mut out = String::new();
                for (i, (mono, c)) in terms.iter().enumerate() {
                    if i > 0 {
                        out.push_str(" + ");
                    }
                    let is_const = mono.iter().all(|&e| e == 0);
                    if is_const {
                        let _ = write!(out, "{c}");
                    } else if **c == 1 {
                        out.push_str(&g.format_mono(mono));
                    } else {
                        let _ = write!(out, "{}*{}", c, g.format_mono(mono));
                    }
                }
                out
            }
            _ => panic!("scalar backend mismatch"),
        }
    }

    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        match &*self.repr {
            Repr::IntMod { n } => {
                let v: i64 = s
                    .trim()
                    .parse()
                    .map_err(|_| Error::Invalid(format!("invalid integer `{s}`")))?;
                Ok(Scalar::Mod(v.rem_euclid(*n as i64) as u64))
            }
            Repr::Graded(g) => {
                let terms = parse_poly(s, &g.vars, g.p)?;
                let mut acc = self.zero();
                for (c, m) in terms {
                    let d = weighted_degree(&m, &g.vars);
                    if d > g.bound {
                        return Err(Error::DegreeBound { degree: d, bound: g.bound });
                    }
                    let reduced = match g.nf.get(&m).expect("within bound") {
                        None => self.zero(),
                        Some((cn, mn)) => {
                            Scalar::Poly(BTreeMap::from([(mn.clone(), c * cn % g.p)]))
                        }
                    };
                    acc = self.add(&acc, &reduced);
                }
                Ok(acc)
            }
        }
    }

    /// Is the backend local (unique maximal ideal)? Minimality of complexes
    /// is meaningful only over local backends.
    pub fn is_local(&self) -> bool {
        match &*self.repr {
            Repr::Graded(_) => true, // graded-local
            Repr::IntMod { n } => {
                let mut n = *n;
                let mut d = 2u64;
                while d * d <= n {
                    if n % d == 0 {
                        while n % d == 0 {
                            n /= d;
                        }
                        return n == 1;
                    }
                    d += 1;
                }
                true // n prime
            }
        }
    }

    /// Is the scalar in the (graded) maximal ideal / radical?
    pub fn in_max_ideal(&self, s: &Scalar) -> bool {
        match (&*self.repr, s) {
            (Repr::Graded(_), Scalar::Poly(m)) => {
                m.keys().all(|mono| mono.iter().any(|&e| e > 0))
            }
            (Repr::IntMod { n }, Scalar::Mod(v)) => {
                let mut rad = 1u64;
                let mut m = *n;
                let mut d = 2u64;
                while d * d <= m {
                    if m % d == 0 {
                        rad *= d;
                        while m % d == 0 {
                            m /= d;
                        }
                    }
                    d += 1;
                }
                if m > 1 {
                    rad *= m;
                }
                v % rad == 0
            }
            _ => panic!("scalar backend mismatch"),
        }
    }

    /// Largest degree <= bound with a nonzero slice, when the ring is
    /// (detectably) Artinian; `None` if the ring does not vanish within the
    /// bound.
    pub fn artinian_top_degree(&self) -> Option<i64> {
        let g = self.graded()?;
        if g.vars.is_empty() {
            return Some(0);
        }
        let max_w = g.vars.iter().map(|(_, w)| *w as i64).max().unwrap();
        let top = (0..=g.bound).rev().find(|&d| !g.slices[d as usize].is_empty())?;
        if top + max_w > g.bound {
            return None; // cannot certify vanishing above the bound
        }
        for d in top + 1..=top + max_w {
            if !g.slices[d as usize].is_empty() {
                return None;
            }
        }
        Some(top)
    }

    /// Self-injective Artinian backends: Z/n always; a field; an Artinian
    /// graded quotient with one-dimensional socle.
    pub fn is_self_injective(&self) -> bool {
        match &*self.repr {
            Repr::IntMod { .. } => true,
            Repr::Graded(g) => {
                if g.vars.is_empty() {
                    return true;
                }
                let Some(top) = self.artinian_top_degree() else {
                    return false;
                };
                let mut socle_dim = 0usize;
                for d in 0..=top {
                    let cols = g.slices[d as usize].len();
                    if cols == 0 {
                        continue;
                    }
                    // stack multiplication by each variable
                    let mut rows_total = 0usize;
                    let mut blocks = Vec::new();
                    for (vi, (_, w)) in g.vars.iter().enumerate() {
                        let dtgt = d + *w as i64;
                        let tgt = if dtgt <= g.bound {
                            g.slices[dtgt as usize].len()
                        } else {
                            0
                        };
                        let mut block = FpMat::zero(g.p, tgt, cols);
                        if tgt > 0 {
                            let mut vm = vec![0u32; g.vars.len()];
                            vm[vi] = 1;
                            for (j, mono) in g.slices[d as usize].iter().enumerate() {
                                let prod = mono_mul(&vm, mono);
                                if let Some(Some((c, mn))) = g.nf.get(&prod) {
                                    let (_, idx) = g.slice_index[mn];
                                    block.add_at(idx, j, *c);
                                }
                            }
                        }
                        rows_total += tgt;
                        blocks.push(block);
                    }
                    let mut stacked = FpMat::zero(g.p, rows_total, cols);
                    let mut off = 0;
                    for b in blocks {
                        for i in 0..b.rows {
                            for j in 0..cols {
                                stacked.set(off + i, j, b.get(i, j));
                            }
                        }
                        off += b.rows;
                    }
                    socle_dim += stacked.kernel_basis().cols;
                }
                socle_dim == 1
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fq_xy() -> Ring {
        make_ring(RingSpec::GradedQuotient {
            p: 2,
            vars: vec![("x".into(), 1), ("y".into(), 1)],
            relations: vec!["x*y".into()],
            bound: 8,
        })
        .unwrap()
    }

    #[test]
    fn prime_field_smallest() {
        let r = make_ring(RingSpec::PrimeField { p: 2 }).unwrap();
        assert!(r.is_field_backend());
        assert_eq!(r.add(&r.one(), &r.one()), r.zero());
        assert!(make_ring(RingSpec::PrimeField { p: 6 }).is_err());
    }

    #[test]
    fn int_mod_4() {
        let r = make_ring(RingSpec::IntMod { n: 4 }).unwrap();
        assert_eq!(r.mul(&r.from_int(2), &r.from_int(2)).unwrap(), r.zero());
        assert!(make_ring(RingSpec::IntMod { n: 1 }).is_err());
        assert!(r.is_local());
        assert!(r.in_max_ideal(&r.from_int(2)));
        assert!(!r.in_max_ideal(&r.from_int(3)));
    }

    #[test]
    fn xy_ring_slice_dims() {
        let r = fq_xy();
        assert_eq!(r.slice_dim(0).unwrap(), 1);
        for d in 1..=8 {
            assert_eq!(r.slice_dim(d).unwrap(), 2, "degree {d}");
        }
        let x = r.var("x").unwrap();
        let y = r.var("y").unwrap();
        assert_eq!(r.mul(&x, &y).unwrap(), r.zero());
        assert!(!r.is_zero(&r.mul(&x, &x).unwrap()));
    }

    #[test]
    fn square_zero_ring_is_self_injective() {
        let r = make_ring(RingSpec::GradedQuotient {
            p: 2,
            vars: vec![("x".into(), 1), ("y".into(), 1)],
            relations: vec!["x^2".into(), "y^2".into()],
            bound: 8,
        })
        .unwrap();
        assert_eq!(r.artinian_top_degree(), Some(2));
        assert!(r.is_self_injective());
        // k[x,y]/(xy) is not Artinian, hence not certified self-injective
        assert!(!fq_xy().is_self_injective());
        // k[x]/(x^2)
        let dual = make_ring(RingSpec::GradedQuotient {
            p: 2,
            vars: vec![("x".into(), 1)],
            relations: vec!["x^2".into()],
            bound: 8,
        })
        .unwrap();
        assert!(dual.is_self_injective());
        // k[x,y]/(x^2, xy) has socle {x, y^top}: not self-injective
        let bad = make_ring(RingSpec::GradedQuotient {
            p: 2,
            vars: vec![("x".into(), 1), ("y".into(), 1)],
            relations: vec!["x^2".into(), "x*y".into(), "y^3".into()],
            bound: 8,
        })
        .unwrap();
        assert!(!bad.is_self_injective());
    }

    #[test]
    fn rejects_bad_relations() {
        let err = make_ring(RingSpec::GradedQuotient {
            p: 2,
            vars: vec![("x".into(), 1), ("y".into(), 2)],
            relations: vec!["x + y".into()],
            bound: 4,
        });
        assert!(matches!(err, Err(Error::NonHomogeneousRelation(_))));

        // {x^2 - y^2, x*y} is not confluent without completing to y^3
        let err = make_ring(RingSpec::GradedQuotient {
            p: 3,
            vars: vec![("x".into(), 1), ("y".into(), 1)],
            relations: vec!["x^2 - y^2".into(), "x*y".into()],
            bound: 6,
        });
        assert!(matches!(err, Err(Error::NonConfluent(..))));
    }

    #[test]
    fn binomial_relation_normal_forms() {
        let r = make_ring(RingSpec::GradedQuotient {
            p: 3,
            vars: vec![("x".into(), 1), ("y".into(), 1)],
            relations: vec!["x^2 - y^2".into()],
            bound: 6,
        })
        .unwrap();
        let x = r.var("x").unwrap();
        let y = r.var("y").unwrap();
        let x2 = r.mul(&x, &x).unwrap();
        let y2 = r.mul(&y, &y).unwrap();
        assert_eq!(x2, y2);
        assert_eq!(r.slice_dim(2).unwrap(), 2); // y^2, x*y
    }

    #[test]
    fn scalar_print_parse_round_trip() {
        let r = fq_xy();
        let x = r.var("x").unwrap();
        let y = r.var("y").unwrap();
        let s = r.add(&r.add(&r.one(), &x), &r.mul(&y, &y).unwrap());
        let printed = r.format_scalar(&s);
        assert_eq!(r.parse_scalar(&printed).unwrap(), s);
        assert_eq!(r.parse_scalar("x*y + x").unwrap(), x);
    }

    #[test]
    fn degree_bound_flagged() {
        let r = make_ring(RingSpec::GradedQuotient {
            p: 2,
            vars: vec![("x".into(), 1)],
            relations: vec![],
            bound: 3,
        })
        .unwrap();
        let x = r.var("x").unwrap();
        let x2 = r.mul(&x, &x).unwrap();
        assert!(matches!(
            r.mul(&x2, &x2),
            Err(Error::DegreeBound { degree: 4, bound: 3 })
        ));
    }
}
