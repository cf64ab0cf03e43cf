//! Algebraic input for one CW-pair `(X, A)`: free generators of the image,
//! kernel and cokernel of `i_*`, the chain-level character coproduct, and a
//! library of built-in pairs.
//!
//! Homology-side letters: `η` = im i_*, `γ` = ker i_*, `α` = coker i_*, and
//! `β` = the lifts `x̄` of the `γ` generators with `d x̄ = x`. A `β` label is
//! written `bar:x`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlinalg::CoefficientRing;
use crate::indexed::Sector;
use crate::kalgebra::{Letter, ProductFlavor};

pub const UNIT: &str = "1";
const BAR: &str = "bar:";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairGen {
    pub label: String,
    pub deg: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsiTerm {
    pub src: String,
    pub left: String,
    pub right: String,
    pub coef: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairData {
    #[serde(default)]
    pub eta: Vec<PairGen>,
    #[serde(default)]
    pub gamma: Vec<PairGen>,
    #[serde(default)]
    pub alpha: Vec<PairGen>,
    pub psi: Vec<PsiTerm>,
    #[serde(default = "default_ring", with = "ring_string")]
    pub ring: CoefficientRing,
}

fn default_ring() -> CoefficientRing {
    CoefficientRing::Integers
}

mod ring_string {
    use super::CoefficientRing;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &CoefficientRing, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<CoefficientRing, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn bar(label: &str) -> String {
    format!("{BAR}{label}")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.rule, self.detail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassFlag {
    Normal,
    Special,
    RightNormal,
    RightSpecial,
    RightStrictlyNormal,
    RightWeaklySpecial,
    Epi,
    Mono,
    /// Every kernel generator odd and every image generator even: the
    /// interleaving sign of disjointly supported products is the shuffle sign.
    ParitySplit,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairClass {
    pub flags: BTreeSet<ClassFlag>,
}

impl PairClass {
    pub fn has(&self, f: ClassFlag) -> bool {
        self.flags.contains(&f)
    }

    /// Whether the flavor's product agrees with the universal one for this pair.
    pub fn admits(&self, flavor: ProductFlavor) -> bool {
        use ProductFlavor as F;
        match flavor {
            F::Universal => true,
            F::Normal => self.has(ClassFlag::Normal),
            F::Special => self.has(ClassFlag::Special),
            F::RightUniversal => self.has(ClassFlag::Mono),
            F::RightNormal => self.has(ClassFlag::RightNormal),
            F::RightSpecial => self.has(ClassFlag::RightSpecial),
            F::RightSpecialSigned => self.has(ClassFlag::RightSpecial) && self.has(ClassFlag::ParitySplit),
            F::RightStrictlyNormal => self.has(ClassFlag::RightStrictlyNormal),
            F::RightWeaklySpecial => self.has(ClassFlag::RightWeaklySpecial),
        }
    }
}

/// One cohomology generator of `H*_X(X, A)`, dual to a homology generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairGenerator {
    pub label: String,
    pub degree: i64,
    pub sector: Sector,
}

/// Structure constants of the dual product `π_{(X,A)}`; need not preserve degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairProduct {
    pub generators: Vec<PairGenerator>,
    pub unit: usize,
    pub table: BTreeMap<(usize, usize), Vec<(usize, BigInt)>>,
}

impl PairProduct {
    pub fn multiply(&self, i: usize, j: usize) -> &[(usize, BigInt)] {
        self.table.get(&(i, j)).map_or(&[], |v| v.as_slice())
    }

    pub fn in_sector(&self, s: Sector) -> Vec<usize> {
        (0..self.generators.len()).filter(|&i| self.generators[i].sector == s).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.label == label)
    }
}

/// `ψ_{(X,A)}` on the α/γ/η labels: source → (left, right, coefficient).
pub type Coproduct = BTreeMap<String, Vec<(String, String, BigInt)>>;

struct Resolved {
    letters: HashMap<String, (Letter, i64)>,
}

impl Resolved {
    fn new(p: &PairData, violations: &mut Vec<Violation>) -> Self {
        let mut letters = HashMap::new();
        let families = [(&p.eta, Letter::Eta), (&p.gamma, Letter::Gamma), (&p.alpha, Letter::Alpha)];
        for (gens, letter) in families {
            for g in gens {
                if g.label.is_empty() || g.label.starts_with(BAR) {
                    violations.push(Violation { rule: "labels", detail: format!("reserved or empty label '{}'", g.label) });
                }
                if g.deg < 0 {
                    violations.push(Violation { rule: "labels", detail: format!("negative degree on '{}'", g.label) });
                }
                if letters.insert(g.label.clone(), (letter, g.deg)).is_some() {
                    violations.push(Violation { rule: "labels", detail: format!("duplicate label '{}'", g.label) });
                }
            }
        }
        for g in &p.gamma {
            letters.insert(bar(&g.label), (Letter::Beta, g.deg + 1));
        }
        Resolved { letters }
    }

    fn get(&self, label: &str) -> Option<(Letter, i64)> {
        self.letters.get(label).copied()
    }
}

/// A chain-level tensor `Σ c · (left ⊗ right)`.
type Tensor = BTreeMap<(String, String), BigInt>;

fn psi_of(p: &PairData, src: &str) -> Tensor {
    let mut t = Tensor::new();
    for term in p.psi.iter().filter(|t| t.src == src) {
        *t.entry((term.left.clone(), term.right.clone())).or_insert_with(BigInt::zero) += term.coef;
    }
    let ring = p.ring;
    t.retain(|_, c| {
        *c = ring.reduce(std::mem::take(c));
        !c.is_zero()
    });
    t
}

fn letter_name(l: Letter) -> &'static str {
    match l {
        Letter::Alpha => "α",
        Letter::Beta => "β",
        Letter::Gamma => "γ",
        Letter::Eta => "η",
    }
}

/// Every violated condition; empty means the pair is usable.
pub fn validate(p: &PairData) -> Vec<Violation> {
    let mut out = Vec::new();
    let res = Resolved::new(p, &mut out);

    match res.get(UNIT) {
        Some((Letter::Eta, 0)) => {}
        _ => out.push(Violation { rule: "unit", detail: "missing degree-0 η generator \"1\"".into() }),
    }

    for term in &p.psi {
        let mut resolve = |label: &str| {
            let r = res.get(label);
            if r.is_none() {
                out.push(Violation { rule: "labels", detail: format!("unknown label '{label}' in ψ") });
            }
            r
        };
        let (Some((ls, ds)), Some((l1, d1)), Some((l2, d2))) =
            (resolve(&term.src), resolve(&term.left), resolve(&term.right))
        else {
            continue;
        };
        if d1 + d2 != ds {
            out.push(Violation {
                rule: "degree",
                detail: format!("ψ({}) has term {}⊗{} of degree {}", term.src, term.left, term.right, d1 + d2),
            });
        }
        if !ProductFlavor::Universal.letter_table(ls).contains(&(l1, l2)) {
            let rule = match ls {
                Letter::Eta => "sector (1)",
                Letter::Gamma => "sector (2)",
                Letter::Beta => "sector (3)",
                Letter::Alpha => "sector (4)",
            };
            out.push(Violation {
                rule,
                detail: format!(
                    "ψ({}) has a {}⊗{} term {}⊗{}",
                    term.src,
                    letter_name(l1),
                    letter_name(l2),
                    term.left,
                    term.right
                ),
            });
        }
    }
    if !out.is_empty() {
        return out;
    }

    let one = psi_of(p, UNIT);
    if one != Tensor::from([((UNIT.to_string(), UNIT.to_string()), BigInt::one())]) {
        out.push(Violation { rule: "unit", detail: "ψ(1) must be 1⊗1".into() });
    }

    let mut labels: Vec<&String> = res.letters.keys().collect();
    labels.sort();
    for label in labels {
        if label == UNIT {
            continue;
        }
        let t = psi_of(p, label);
        let left = t.get(&(UNIT.to_string(), label.clone())).cloned().unwrap_or_default();
        let right = t.get(&(label.clone(), UNIT.to_string())).cloned().unwrap_or_default();
        if !left.is_one() || !right.is_one() {
            out.push(Violation { rule: "counit", detail: format!("ψ({label}) must contain 1⊗{label} + {label}⊗1") });
        }
    }

    // chain map: (d⊗1 + 1⊗d) ψ(x̄) = ψ(x), with d(bar:x) = x
    let d = |label: &str| label.strip_prefix(BAR).map(str::to_string);
    for g in &p.gamma {
        let lift = psi_of(p, &bar(&g.label));
        let mut image = Tensor::new();
        for ((l, r), c) in &lift {
            if let Some(dl) = d(l) {
                *image.entry((dl, r.clone())).or_insert_with(BigInt::zero) += c;
            }
            if let Some(dr) = d(r) {
                let sign = if res.get(l).map_or(0, |(_, deg)| deg) % 2 == 0 { 1 } else { -1 };
                *image.entry((l.clone(), dr)).or_insert_with(BigInt::zero) += c * sign;
            }
        }
        image.retain(|_, c| {
            *c = p.ring.reduce(std::mem::take(c));
            !c.is_zero()
        });
        if image != psi_of(p, &g.label) {
            out.push(Violation {
                rule: "chain map",
                detail: format!("(d⊗1 + 1⊗d)ψ(bar:{0}) differs from ψ({0})", g.label),
            });
        }
    }
    out
}

fn ensure_valid(p: &PairData) -> Result<()> {
    let v = validate(p);
    if v.is_empty() {
        Ok(())
    } else {
        let msgs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        Err(Error::Validation(format!("invalid pair: {}", msgs.join("; "))))
    }
}

pub fn classify(p: &PairData) -> Result<PairClass> {
    ensure_valid(p)?;
    let mut dummy = Vec::new();
    let res = Resolved::new(p, &mut dummy);
    let sectors: Vec<(Letter, Letter, Letter)> = p
        .psi
        .iter()
        .filter(|t| !p.ring.reduce(BigInt::from(t.coef)).is_zero())
        .map(|t| (res.get(&t.src).unwrap().0, res.get(&t.left).unwrap().0, res.get(&t.right).unwrap().0))
        .collect();
    let fits = |f: ProductFlavor| sectors.iter().all(|(s, l, r)| f.letter_table(*s).contains(&(*l, *r)));
    let mono = p.alpha.is_empty();
    let mut flags = BTreeSet::new();
    let candidates = [
        (ClassFlag::Normal, ProductFlavor::Normal, false),
        (ClassFlag::Special, ProductFlavor::Special, false),
        (ClassFlag::RightNormal, ProductFlavor::RightNormal, true),
        (ClassFlag::RightSpecial, ProductFlavor::RightSpecial, true),
        (ClassFlag::RightStrictlyNormal, ProductFlavor::RightStrictlyNormal, true),
        (ClassFlag::RightWeaklySpecial, ProductFlavor::RightWeaklySpecial, true),
    ];
    for (flag, flavor, right) in candidates {
        if (!right || mono) && fits(flavor) {
            flags.insert(flag);
        }
    }
    if p.gamma.is_empty() {
        flags.insert(ClassFlag::Epi);
    }
    if mono {
        flags.insert(ClassFlag::Mono);
    }
    if p.gamma.iter().all(|g| g.deg % 2 == 1) && p.eta.iter().all(|g| g.deg % 2 == 0) {
        flags.insert(ClassFlag::ParitySplit);
    }
    Ok(PairClass { flags })
}

/// `ψ_{(X,A)}`: ψ itself on α and η; on a γ generator `x`, `ψ(x)` plus the
/// part of `ψ(x̄)` lying in `(α⊕η)⊗(α⊕η)`.
pub fn homology_coproduct(p: &PairData) -> Result<Coproduct> {
    ensure_valid(p)?;
    let mut dummy = Vec::new();
    let res = Resolved::new(p, &mut dummy);
    let plain = |l: &str| matches!(res.get(l), Some((Letter::Alpha | Letter::Eta, _)));
    let mut out = Coproduct::new();
    for g in p.eta.iter().chain(&p.gamma).chain(&p.alpha) {
        let mut t = psi_of(p, &g.label);
        if res.get(&g.label).unwrap().0 == Letter::Gamma {
            for ((l, r), c) in psi_of(p, &bar(&g.label)) {
                if plain(&l) && plain(&r) {
                    *t.entry((l, r)).or_insert_with(BigInt::zero) += c;
                }
            }
        }
        let terms = t
            .into_iter()
            .filter_map(|((l, r), c)| {
                let c = p.ring.reduce(c);
                (!c.is_zero()).then_some((l, r, c))
            })
            .collect();
        out.insert(g.label.clone(), terms);
    }
    Ok(out)
}

/// The transpose of `ψ_{(X,A)}`: `(f·g)(x) = Σ f(x′) g(x″)`.
pub fn dual_product(p: &PairData) -> Result<PairProduct> {
    let cop = homology_coproduct(p)?;
    let families = [(&p.eta, Sector::Neutral), (&p.gamma, Sector::Omega), (&p.alpha, Sector::Sigma)];
    let generators: Vec<PairGenerator> = families
        .iter()
        .flat_map(|(gens, sector)| {
            gens.iter().map(move |g| PairGenerator { label: g.label.clone(), degree: g.deg, sector: *sector })
        })
        .collect();
    let pos: HashMap<&str, usize> = generators.iter().enumerate().map(|(i, g)| (g.label.as_str(), i)).collect();
    let mut acc: BTreeMap<(usize, usize), BTreeMap<usize, BigInt>> = BTreeMap::new();
    for (src, terms) in &cop {
        for (l, r, c) in terms {
            let key = (pos[l.as_str()], pos[r.as_str()]);
            *acc.entry(key).or_default().entry(pos[src.as_str()]).or_insert_with(BigInt::zero) += c;
        }
    }
    let table = acc
        .into_iter()
        .map(|(k, v)| (k, v.into_iter().map(|(i, c)| (i, p.ring.reduce(c))).filter(|(_, c)| !c.is_zero()).collect::<Vec<_>>()))
        .filter(|(_, v): &(_, Vec<_>)| !v.is_empty())
        .collect();
    let unit = pos[UNIT];
    drop(pos);
    Ok(PairProduct { generators, unit, table })
}

// ---------------------------------------------------------------------------
// built-ins

fn gen(label: &str, deg: i64) -> PairGen {
    PairGen { label: label.into(), deg }
}

fn term(src: &str, left: &str, right: &str, coef: i64) -> PsiTerm {
    PsiTerm { src: src.into(), left: left.into(), right: right.into(), coef }
}

fn primitive(src: &str) -> [PsiTerm; 2] {
    [term(src, UNIT, src, 1), term(src, src, UNIT, 1)]
}

struct Builder {
    pair: PairData,
}

impl Builder {
    fn new() -> Self {
        Builder {
            pair: PairData {
                eta: vec![gen(UNIT, 0)],
                gamma: vec![],
                alpha: vec![],
                psi: vec![term(UNIT, UNIT, UNIT, 1)],
                ring: CoefficientRing::Integers,
            },
        }
    }

    fn eta(mut self, label: &str, deg: i64) -> Self {
        self.pair.eta.push(gen(label, deg));
        self.pair.psi.extend(primitive(label));
        self
    }

    fn alpha(mut self, label: &str, deg: i64) -> Self {
        self.pair.alpha.push(gen(label, deg));
        self.pair.psi.extend(primitive(label));
        self
    }

    /// A primitive kernel generator and its primitive lift.
    fn gamma(mut self, label: &str, deg: i64) -> Self {
        self.pair.gamma.push(gen(label, deg));
        self.pair.psi.extend(primitive(label));
        self.pair.psi.extend(primitive(&bar(label)));
        self
    }

    fn psi(mut self, src: &str, left: &str, right: &str, coef: i64) -> Self {
        self.pair.psi.push(term(src, left, right, coef));
        self
    }

    fn done(self) -> Result<PairData> {
        ensure_valid(&self.pair)?;
        Ok(self.pair)
    }
}

/// Homology data of a space `X` for the cone built-ins: reduced generators
/// and the non-primitive part of their coproduct.
struct SpaceData {
    gens: Vec<(String, i64)>,
    extra: Vec<(String, String, String, i64)>,
}

fn space_data(params: &[&str]) -> Result<SpaceData> {
    match params {
        ["torus"] => Ok(SpaceData {
            gens: vec![("a1".into(), 1), ("a2".into(), 1), ("t".into(), 2)],
            extra: vec![("t".into(), "a1".into(), "a2".into(), 1), ("t".into(), "a2".into(), "a1".into(), -1)],
        }),
        ["wedge", dims @ ..] if !dims.is_empty() => {
            let mut gens = Vec::new();
            for (i, d) in dims.iter().enumerate() {
                let d: i64 = d.parse().map_err(|_| Error::Parse(format!("bad sphere dimension '{d}'")))?;
                if d < 1 {
                    return Err(Error::Validation("wedge summands need dimension ≥ 1".into()));
                }
                gens.push((format!("s{}", i + 1), d));
            }
            Ok(SpaceData { gens, extra: vec![] })
        }
        _ => Err(Error::Parse(format!("cone data must be 'torus' or 'wedge:d1:d2…', got '{}'", params.join(":")))),
    }
}

pub fn disk_sphere(n: u32) -> Result<PairData> {
    if n == 0 {
        return Err(Error::Validation("disk_sphere needs n ≥ 1".into()));
    }
    if n == 1 {
        // S⁰ → D¹: the kernel class c = q − p is group-like up to the unit
        let mut b = Builder::new();
        b.pair.gamma.push(gen("c", 0));
        b.pair.psi.extend(primitive("c"));
        b.pair.psi.extend(primitive(&bar("c")));
        return b.psi("c", "c", "c", 1).psi(&bar("c"), &bar("c"), "c", 1).done();
    }
    Builder::new().gamma("c", n as i64 - 1).done()
}

pub fn sphere_pair(r: u32, p: u32) -> Result<PairData> {
    if p >= r {
        return Err(Error::Validation(format!("sphere_pair needs p < r, got r = {r}, p = {p}")));
    }
    if p == 0 {
        return Err(Error::Validation("sphere_pair needs p ≥ 1".into()));
    }
    Builder::new().gamma("c", p as i64).alpha("a", r as i64).done()
}

pub fn cp_truncated(n: u32) -> Result<PairData> {
    if n == 0 {
        return Err(Error::Validation("cp_truncated needs N ≥ 1".into()));
    }
    let mut b = Builder::new();
    let name = |k: u32| if k == 0 { UNIT.to_string() } else { format!("e{}", 2 * k) };
    for k in 1..=n {
        b.pair.alpha.push(gen(&name(k), 2 * k as i64));
        for i in 0..=k {
            b = b.psi(&name(k), &name(i), &name(k - i), 1);
        }
    }
    b.done()
}

/// `(CX, X)`: every reduced class of `X` dies in the cone.
pub fn cone_pair(params: &[&str]) -> Result<PairData> {
    let space = space_data(params)?;
    let mut b = Builder::new();
    for (g, d) in &space.gens {
        b = b.gamma(g, *d);
    }
    for (src, l, r, c) in &space.extra {
        // the lift of l⊗r is l̄⊗r, forced into the β⊗γ sector
        b = b.psi(src, l, r, *c).psi(&bar(src), &bar(l), r, *c);
    }
    b.done()
}

/// `(CΣX, ΣX)`: suspension kills all products, so every class is primitive.
pub fn suspended_cone_pair(params: &[&str]) -> Result<PairData> {
    let space = space_data(params)?;
    let mut b = Builder::new();
    for (g, d) in &space.gens {
        b = b.gamma(g, d + 1);
    }
    b.done()
}

pub fn example_2_9(which: u32) -> Result<PairData> {
    let b = Builder::new().eta("a", 2).gamma("b", 3);
    match which {
        1 => b.done(),
        2 => b.psi(&bar("b"), "a", "a", 1).done(),
        _ => Err(Error::Validation(format!("example_2_9 has variants 1 and 2, not {which}"))),
    }
}

fn num(s: &str) -> Result<u32> {
    s.parse().map_err(|_| Error::Parse(format!("expected a number, got '{s}'")))
}

pub fn builtin(name: &str, params: &[&str]) -> Result<PairData> {
    match (name, params) {
        ("disk_sphere", [n]) => disk_sphere(num(n)?),
        ("sphere_pair", [r, p]) => sphere_pair(num(r)?, num(p)?),
        ("cp_truncated", [n]) => cp_truncated(num(n)?),
        ("cone_pair", rest) => cone_pair(rest),
        ("suspended_cone_pair", rest) => suspended_cone_pair(rest),
        ("example_2_9", [w]) => example_2_9(num(w)?),
        _ => Err(Error::Parse(format!("unknown built-in pair '{name}' with parameters {params:?}"))),
    }
}

/// Parses `builtin:name:params…` or a pair JSON document.
pub fn parse_pair_spec(spec: &str) -> Result<Option<PairData>> {
    match spec.strip_prefix("builtin:") {
        Some(rest) => {
            let mut parts = rest.split(':');
            let name = parts.next().unwrap_or_default();
            let params: Vec<&str> = parts.collect();
            builtin(name, &params).map(Some)
        }
        None => Ok(None),
    }
}

impl PairData {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("pair file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("pair data serializes")
    }
}
