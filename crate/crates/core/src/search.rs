//! Exhaustive enumeration of small labeled posets and operation tables, and
//! the universally quantified properties checked over them.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::kleene::{build_pa, check_restricted_twist, involution_membership, pa_embedding, pa_pseudo_kleene, Gated};
use crate::order::{is_antitone_involution, Element, Poset};
use crate::residuation::{self, check_lemma_implications, classify, is_associative, synthesize_residuum, OpTable, ResStructure};
use crate::set::ElementSet;
use crate::twist::{check_embedding, check_operator_residuated, check_twist_groupoid, full_twist, OperatorTwist, PairMap};

/// Size limits for the enumerators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub posets: usize,
    /// Structures built from residuated maps.
    pub structures: usize,
    /// Structures with unconstrained `·` and `→` tables.
    pub raw_tables: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { posets: 5, structures: 3, raw_tables: 2 }
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded { size: n, cap });
    }
    Ok(())
}

fn digit_names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Every labeled partial order on `{0,..,n-1}`, each exactly once.
///
/// Element `k` is added to every poset on `{0,..,k-1}` with each admissible
/// pair of a strict down-set and a strict up-set.
pub fn enumerate_posets(n: usize, caps: &Caps) -> Result<Vec<Poset>> {
    check_cap(n, caps.posets)?;
    if n == 0 {
        return Err(Error::Invalid("posets need at least one element".into()));
    }
    // up-sets of each element, excluding itself
    let mut layer: Vec<Vec<ElementSet>> = vec![Vec::new()];
    for k in 0..n {
        let mut next = Vec::new();
        for strict_up in &layer {
            let down_of = |x: Element| -> ElementSet { (0..k).filter(|&y| strict_up[y].contains(x)).collect() };
            let downs: Vec<ElementSet> = subsets(k).filter(|&d| d.iter().all(|x| down_of(x).is_subset(d))).collect();
            let ups: Vec<ElementSet> = subsets(k).filter(|&u| u.iter().all(|x| strict_up[x].is_subset(u))).collect();
            for &d in &downs {
                for &u in &ups {
                    if !(d & u).is_empty() || !d.iter().all(|x| u.is_subset(strict_up[x])) {
                        continue;
                    }
                    let mut ext: Vec<ElementSet> = strict_up.clone();
                    for x in d {
                        ext[x] |= u.with(k);
                    }
                    ext.push(u);
                    next.push(ext);
                }
            }
        }
        layer = next;
    }
    Ok(layer
        .into_iter()
        .map(|strict| {
            let up = strict.iter().enumerate().map(|(x, s)| s.with(x)).collect();
            Poset::from_valid_up_sets(digit_names(n), up)
        })
        .collect())
}

fn subsets(k: usize) -> impl Iterator<Item = ElementSet> {
    (0u128..1 << k).map(ElementSet::from_bits)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StructureClass {
    /// Every `·`, `→` and unit.
    Any,
    LeftResiduated,
    BoundedLeftResiduated,
    CommutativeMonoid,
    BoundedCommutativeMonoid,
}

impl StructureClass {
    pub const ALL: [StructureClass; 5] = [
        StructureClass::Any,
        StructureClass::LeftResiduated,
        StructureClass::BoundedLeftResiduated,
        StructureClass::CommutativeMonoid,
        StructureClass::BoundedCommutativeMonoid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StructureClass::Any => "any",
            StructureClass::LeftResiduated => "lrg",
            StructureClass::BoundedLeftResiduated => "bounded-lrg",
            StructureClass::CommutativeMonoid => "crm",
            StructureClass::BoundedCommutativeMonoid => "bcrm",
        }
    }

    fn bounded(self) -> bool {
        matches!(self, StructureClass::BoundedLeftResiduated | StructureClass::BoundedCommutativeMonoid)
    }

    fn commutative(self) -> bool {
        matches!(self, StructureClass::CommutativeMonoid | StructureClass::BoundedCommutativeMonoid)
    }
}

impl fmt::Display for StructureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StructureClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let class = match s {
            "any" => StructureClass::Any,
            "lrg" | "left-residuated-groupoid" => StructureClass::LeftResiduated,
            "bounded-lrg" => StructureClass::BoundedLeftResiduated,
            "crm" | "commutative-residuated-monoid" => StructureClass::CommutativeMonoid,
            "bcrm" | "bounded-commutative-residuated-monoid" => StructureClass::BoundedCommutativeMonoid,
            _ => return Err(Error::Unknown { kind: "class", name: s.to_string() }),
        };
        Ok(class)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationSpec {
    pub size: usize,
    pub class: StructureClass,
    pub limit: Option<usize>,
    pub caps: Caps,
}

impl EnumerationSpec {
    pub fn new(size: usize, class: StructureClass) -> Self {
        EnumerationSpec { size, class, limit: None, caps: Caps::default() }
    }
}

/// A residuated self-map `x ↦ f(x)` together with its residual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResiduatedMap {
    pub map: Vec<Element>,
    pub residual: Vec<Element>,
}

/// All maps whose preimage of each principal down-set is principal.
pub fn residuated_maps(p: &Poset) -> Vec<ResiduatedMap> {
    let n = p.size();
    let mut out = Vec::new();
    let mut map = vec![0; n];
    loop {
        if let Some(residual) = residual_of(p, &map) {
            out.push(ResiduatedMap { map: map.clone(), residual });
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            map[i] += 1;
            if map[i] < n {
                break;
            }
            map[i] = 0;
        }
    }
}

fn residual_of(p: &Poset, map: &[Element]) -> Option<Vec<Element>> {
    let n = p.size();
    (0..n)
        .map(|z| {
            let pre: ElementSet = (0..n).filter(|&x| p.leq(map[x], z)).collect();
            let max = p.maximal_elements(pre);
            match max.len() {
                1 if p.down(max.first().unwrap()) == pre => max.first(),
                _ => None,
            }
        })
        .collect()
}

/// Every structure of the requested class over every labeled poset of the
/// requested size, in a fixed order.
pub fn enumerate_structures(spec: &EnumerationSpec) -> Result<Vec<ResStructure>> {
    let n = spec.size;
    let cap = if spec.class == StructureClass::Any { spec.caps.raw_tables } else { spec.caps.structures };
    check_cap(n, cap)?;
    let mut out = Vec::new();
    let full = |out: &Vec<ResStructure>| spec.limit.is_some_and(|l| out.len() >= l);
    for p in enumerate_posets(n, &Caps { posets: n, ..spec.caps })? {
        if spec.class == StructureClass::Any {
            raw_structures(&p, &mut out, spec.limit)?;
        } else {
            residuated_structures(&p, spec.class, &mut out, spec.limit)?;
        }
        if full(&out) {
            break;
        }
    }
    Ok(out)
}

fn tables(n: usize) -> impl Iterator<Item = OpTable> {
    let cells = n * n;
    let count = n.pow(cells as u32);
    (0..count).map(move |mut code| {
        let mut v = vec![0; cells];
        for c in v.iter_mut().rev() {
            *c = code % n;
            code /= n;
        }
        OpTable::new(n, v).expect("cells are in range")
    })
}

fn raw_structures(p: &Poset, out: &mut Vec<ResStructure>, limit: Option<usize>) -> Result<()> {
    let n = p.size();
    for mul in tables(n) {
        for imp in tables(n) {
            for one in 0..n {
                if limit.is_some_and(|l| out.len() >= l) {
                    return Ok(());
                }
                out.push(ResStructure::new(p.clone(), mul.clone(), Some(imp.clone()), one)?);
            }
        }
    }
    Ok(())
}

fn residuated_structures(
    p: &Poset,
    class: StructureClass,
    out: &mut Vec<ResStructure>,
    limit: Option<usize>,
) -> Result<()> {
    let n = p.size();
    let maps = residuated_maps(p);
    let identity = maps.iter().position(|m| m.map.iter().enumerate().all(|(i, &x)| i == x)).expect("identity is residuated");
    for one in 0..n {
        let zero = if class.bounded() {
            match (p.bottom(), p.top()) {
                (Some(b), Some(t)) if t == one => Some(b),
                _ => continue,
            }
        } else {
            None
        };
        let mut cols = vec![usize::MAX; n];
        cols[one] = identity;
        let mut emit = |cols: &[usize]| -> Result<bool> {
            if limit.is_some_and(|l| out.len() >= l) {
                return Ok(false);
            }
            let mul = OpTable::from_fn(n, |x, y| maps[cols[y]].map[x]);
            let imp = OpTable::from_fn(n, |y, z| maps[cols[y]].residual[z]);
            let mut s = ResStructure::new(p.clone(), mul, Some(imp), one)?;
            if class.commutative() && is_associative(&s).is_fail() {
                return Ok(true);
            }
            if let Some(z) = zero {
                s = s.with_zero(z)?;
            }
            out.push(s);
            Ok(true)
        };
        if !choose_columns(&maps, class.commutative(), &mut cols, 0, &mut emit)? {
            return Ok(());
        }
    }
    Ok(())
}

/// Assigns a residuated map to every column `y`, keeping `x·y = y·x` among
/// the columns fixed so far when `commutative` is set.
fn choose_columns(
    maps: &[ResiduatedMap],
    commutative: bool,
    cols: &mut Vec<usize>,
    y: usize,
    emit: &mut dyn FnMut(&[usize]) -> Result<bool>,
) -> Result<bool> {
    let n = cols.len();
    if y == n {
        return emit(cols);
    }
    let fixed = cols[y] != usize::MAX;
    let candidates: Vec<usize> = if fixed { vec![cols[y]] } else { (0..maps.len()).collect() };
    for c in candidates {
        let consistent =
            !commutative || (0..n).all(|x| x == y || cols[x] == usize::MAX || maps[c].map[x] == maps[cols[x]].map[y]);
        if !consistent {
            continue;
        }
        cols[y] = c;
        let go_on = choose_columns(maps, commutative, cols, y + 1, emit)?;
        if !fixed {
            cols[y] = usize::MAX;
        }
        if !go_on {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which sweep a property belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Lemmas,
    Theorems,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemmas => "lemmas",
            Suite::Theorems => "theorems",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemmas" => Ok(Suite::Lemmas),
            "theorems" => Ok(Suite::Theorems),
            _ => Err(Error::Unknown { kind: "suite", name: s.to_string() }),
        }
    }
}

pub struct Property {
    pub name: &'static str,
    pub suite: Suite,
    pub summary: &'static str,
    run: fn(&Caps) -> Result<Sweep>,
}

#[derive(Debug, Default)]
struct Sweep {
    checked: usize,
    witness: Option<String>,
}

impl Sweep {
    /// Counts one instance; returns `false` once a witness is recorded.
    fn record(&mut self, failure: Option<String>) -> bool {
        self.checked += 1;
        if let Some(w) = failure {
            self.witness = Some(w);
            return false;
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalReport {
    pub property: &'static str,
    pub checked: usize,
    pub witness: Option<String>,
}

impl UniversalReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    pub fn line(&self) -> String {
        match &self.witness {
            None => format!("CHECK ({}) PASS instances={}", self.property, self.checked),
            Some(w) => format!("CHECK ({}) FAIL witness {w}", self.property),
        }
    }
}

pub const PROPERTIES: &[Property] = &[
    Property {
        name: "isotone-adjoint-antitone",
        suite: Suite::Lemmas,
        summary: "(1) and (3) imply (5)",
        run: |c| lemma_sweep(c, "isotone-adjoint-antitone"),
    },
    Property {
        name: "commutative-decreasing",
        suite: Suite::Lemmas,
        summary: "commutative, (1) and (6) imply (7)",
        run: |c| lemma_sweep(c, "commutative-decreasing"),
    },
    Property {
        name: "commutative-decreasing-top-unit",
        suite: Suite::Lemmas,
        summary: "commutative, (1) and (6) with 1 the top element imply (7)",
        run: |c| top_unit_sweep(c, true, &[1, 6], 7),
    },
    Property {
        name: "currying",
        suite: Suite::Lemmas,
        summary: "associative, (2) and (3) imply (8)",
        run: |c| lemma_sweep(c, "currying"),
    },
    Property {
        name: "groupoid-consequences",
        suite: Suite::Lemmas,
        summary: "(3) and (6) imply (2), (4) and (9)",
        run: |c| lemma_sweep(c, "groupoid-consequences"),
    },
    Property {
        name: "implication-inflationary",
        suite: Suite::Lemmas,
        summary: "(5) and (9) imply (10)",
        run: |c| lemma_sweep(c, "implication-inflationary"),
    },
    Property {
        name: "implication-inflationary-top-unit",
        suite: Suite::Lemmas,
        summary: "(5) and (9) with 1 the top element imply (10)",
        run: |c| top_unit_sweep(c, false, &[5, 9], 10),
    },
    Property {
        name: "idempotent-upper-product",
        suite: Suite::Lemmas,
        summary: "a*a = a in a commutative residuated monoid implies (13)",
        run: idempotent_upper_product,
    },
    Property {
        name: "residuum-uniqueness",
        suite: Suite::Lemmas,
        summary: "an adjoint implication is the synthesized residuum",
        run: residuum_uniqueness,
    },
    Property {
        name: "cone-galois",
        suite: Suite::Lemmas,
        summary: "L and U form an antitone Galois connection on subsets",
        run: cone_galois,
    },
    Property {
        name: "lu-identities-agree",
        suite: Suite::Lemmas,
        summary: "both LU distributivity identities hold or fail together",
        run: lu_identities_agree,
    },
    Property {
        name: "lattice-witness-sound",
        suite: Suite::Lemmas,
        summary: "lattice verdicts match bound counts",
        run: lattice_witness_sound,
    },
    Property {
        name: "twist-groupoid-proj1",
        suite: Suite::Theorems,
        summary: "base is a left-residuated groupoid iff its twist is, f = proj1, g = proj2, unit (1,1)",
        run: |c| twist_groupoid(c, true),
    },
    Property {
        name: "twist-groupoid-proj2",
        suite: Suite::Theorems,
        summary: "base is a left-residuated groupoid iff its twist is, f = proj2, g = proj1, unit (1,1)",
        run: |c| twist_groupoid(c, false),
    },
    Property {
        name: "twist-cone-product",
        suite: Suite::Theorems,
        summary: "twist cones are products of base cones",
        run: twist_cone_product,
    },
    Property {
        name: "operator-twist-residuated",
        suite: Suite::Theorems,
        summary: "the operator twist of a bounded commutative residuated monoid is operator residuated and embeds the base",
        run: operator_twist_residuated,
    },
    Property {
        name: "restricted-twist-biconditional",
        suite: Suite::Theorems,
        summary: "(11) and (12) hold iff the operators restrict to an operator residuated P_a",
        run: restricted_twist_biconditional,
    },
    Property {
        name: "restricted-twist-pseudo-kleene",
        suite: Suite::Theorems,
        summary: "P_a with swap is pseudo-Kleene and x -> (x,a) embeds the base",
        run: restricted_twist_pseudo_kleene,
    },
    Property {
        name: "restricted-twist-involution-membership",
        suite: Suite::Theorems,
        summary: "(x,y)' lies in (x,y) => (0,1) on P_a",
        run: restricted_involution_membership,
    },
];

pub fn property(name: &str) -> Result<&'static Property> {
    PROPERTIES
        .iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::Unknown { kind: "property", name: name.to_string() })
}

/// Runs a registered property over its whole enumeration scope.
pub fn check_universal(name: &str, caps: &Caps) -> Result<UniversalReport> {
    let p = property(name)?;
    let sweep = (p.run)(caps)?;
    Ok(UniversalReport { property: p.name, checked: sweep.checked, witness: sweep.witness })
}

pub fn run_suite(suite: Suite, caps: &Caps) -> Result<Vec<UniversalReport>> {
    PROPERTIES.iter().filter(|p| p.suite == suite).map(|p| check_universal(p.name, caps)).collect()
}

/// Single-line rendering of a structure for witnesses.
pub fn describe(s: &ResStructure) -> String {
    let p = &s.poset;
    let row = |t: &OpTable| -> String {
        (0..t.size())
            .map(|x| t.row(x).iter().map(|&v| p.name(v)).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("|")
    };
    let covers: Vec<String> = p.covers().iter().map(|&(x, y)| format!("{}<{}", p.name(x), p.name(y))).collect();
    let mut out = format!(
        "elements=[{}] covers=[{}] one={} mul=[{}]",
        p.names().join(" "),
        covers.join(","),
        p.name(s.one),
        row(&s.mul)
    );
    if let Some(imp) = &s.imp {
        out.push_str(&format!(" imp=[{}]", row(imp)));
    }
    if let Some(a) = s.designated {
        out.push_str(&format!(" designated={}", p.name(a)));
    }
    out
}

fn structures(caps: &Caps, class: StructureClass, max: usize) -> Result<Vec<ResStructure>> {
    let cap = if class == StructureClass::Any { caps.raw_tables } else { caps.structures };
    let mut all = Vec::new();
    for n in 1..=max.min(cap) {
        all.extend(enumerate_structures(&EnumerationSpec { size: n, class, limit: None, caps: *caps })?);
    }
    Ok(all)
}

fn posets_up_to(caps: &Caps, max: usize) -> Result<Vec<Poset>> {
    let mut all = Vec::new();
    for n in 1..=max.min(caps.posets) {
        all.extend(enumerate_posets(n, caps)?);
    }
    Ok(all)
}

/// Arbitrary tables at the smallest sizes plus left-residuated groupoids.
fn lemma_universe(caps: &Caps) -> Result<Vec<ResStructure>> {
    let mut all = structures(caps, StructureClass::Any, caps.raw_tables)?;
    all.extend(
        structures(caps, StructureClass::LeftResiduated, caps.structures)?
            .into_iter()
            .filter(|s| s.size() > caps.raw_tables),
    );
    Ok(all)
}

fn lemma_sweep(caps: &Caps, name: &str) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for s in lemma_universe(caps)? {
        let outcome = check_lemma_implications(&s)?.into_iter().find(|o| o.name == name).expect("registered lemma");
        let failure = match outcome.outcome {
            residuation::Implication::Refuted(w) => Some(format!("{} in {}", w.render(&s.poset), describe(&s))),
            _ => None,
        };
        if !sweep.record(failure) {
            break;
        }
    }
    Ok(sweep)
}

fn top_unit_sweep(caps: &Caps, commutative: bool, hypotheses: &[u8], conclusion: u8) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for s in lemma_universe(caps)? {
        let holds = |c| residuation::check(&s, c).expect("imp present").is_pass();
        let hyp = s.poset.top() == Some(s.one)
            && (!commutative || residuation::is_commutative(&s).is_pass())
            && hypotheses.iter().all(|&c| holds(c));
        let failure = if hyp {
            residuation::check(&s, conclusion)?.witness().map(|w| format!("{} in {}", w.render(&s.poset), describe(&s)))
        } else {
            None
        };
        if !sweep.record(failure) {
            break;
        }
    }
    Ok(sweep)
}

fn idempotent_upper_product(caps: &Caps) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for s in structures(caps, StructureClass::CommutativeMonoid, caps.structures)? {
        for a in (0..s.size()).filter(|&a| s.mul(a, a) == a) {
            let t = s.clone().with_designated(a)?;
            let failure = residuation::check(&t, 13)?.witness().map(|w| format!("{} in {}", w.render(&t.poset), describe(&t)));
            if !sweep.record(failure) {
                return Ok(sweep);
            }
        }
    }
    Ok(sweep)
}

fn residuum_uniqueness(caps: &Caps) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for s in lemma_universe(caps)? {
        if residuation::check(&s, 3)?.is_fail() {
            continue;
        }
        let failure = match synthesize_residuum(&s.poset, &s.mul) {
            Ok(t) if Some(&t) == s.imp.as_ref() => None,
            Ok(_) => Some(format!("reason=different-residuum in {}", describe(&s))),
            Err(e) => Some(format!("{} in {}", e.witness().render(&s.poset), describe(&s))),
        };
        if !sweep.record(failure) {
            break;
        }
    }
    Ok(sweep)
}

fn cone_galois(caps: &Caps) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for p in posets_up_to(caps, 4)? {
        let n = p.size();
        let mut failure = None;
        'sets: for a in subsets(n) {
            let (l, u) = (p.lower_cone(a), p.upper_cone(a));
            if !a.is_subset(p.lower_cone(u)) || !a.is_subset(p.upper_cone(l)) {
                failure = Some(format!("A={a:?} law=extensive"));
                break;
            }
            if p.upper_cone(p.lower_cone(u)) != u || p.lower_cone(p.upper_cone(l)) != l {
                failure = Some(format!("A={a:?} law=closure"));
                break;
            }
            for b in subsets(n).filter(|&b| a.is_subset(b)) {
                if !p.lower_cone(b).is_subset(l) || !p.upper_cone(b).is_subset(u) {
                    failure = Some(format!("A={a:?} B={b:?} law=antitone"));
                    break 'sets;
                }
            }
        }
        let failure = failure.map(|f| format!("{f} in {}", poset_text(&p)));
        if !sweep.record(failure) {
            break;
        }
    }
    Ok(sweep)
}

fn poset_text(p: &Poset) -> String {
    let covers: Vec<String> = p.covers().iter().map(|&(x, y)| format!("{}<{}", p.name(x), p.name(y))).collect();
    format!("elements=[{}] covers=[{}]", p.names().join(" "), covers.join(","))
}

fn lu_identities_agree(caps: &Caps) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for p in posets_up_to(caps, caps.posets)? {
        let d = p.distributivity();
        let failure = (!d.agree()).then(|| format!("{d:?} in {}", poset_text(&p)));
        if !sweep.record(failure) {
            break;
        }
    }
    Ok(sweep)
}

fn lattice_witness_sound(caps: &Caps) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for p in posets_up_to(caps, 4)? {
        let n = p.size();
        let unique_bounds = |x: Element, y: Element| {
            let xy = ElementSet::singleton(x).with(y);
            p.minimal_elements(p.upper_cone(xy)).len() == 1 && p.maximal_elements(p.lower_cone(xy)).len() == 1
        };
        let all_unique = (0..n).all(|x| (0..n).all(|y| unique_bounds(x, y)));
        let failure = match p.is_lattice() {
            crate::Verdict::Pass if all_unique => None,
            crate::Verdict::Fail(f) if !unique_bounds(f.x, f.y) && f.extremal.len() != 1 => None,
            v => Some(format!("verdict={v:?} in {}", poset_text(&p))),
        };
        if !sweep.record(failure) {
            break;
        }
    }
    Ok(sweep)
}

/// The lemma universe plus every single-cell change of a commutative
/// residuated monoid at the largest size.
fn twist_universe(caps: &Caps) -> Result<Vec<ResStructure>> {
    let mut all = lemma_universe(caps)?;
    let n = caps.structures;
    if n > caps.raw_tables {
        let base = enumerate_structures(&EnumerationSpec::new(n, StructureClass::CommutativeMonoid).with_caps(*caps))?;
        for s in base {
            for cell in 0..n * n {
                for v in 0..n {
                    let (x, y) = (cell / n, cell % n);
                    if s.mul(x, y) != v {
                        let mut t = s.clone();
                        t.mul.set(x, y, v);
                        all.push(t);
                    }
                    if s.imp(x, y) != v {
                        let mut t = s.clone();
                        t.imp.as_mut().unwrap().set(x, y, v);
                        all.push(t);
                    }
                }
            }
        }
    }
    Ok(all)
}

impl EnumerationSpec {
    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.caps = caps;
        self
    }
}

fn twist_groupoid(caps: &Caps, first: bool) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for s in twist_universe(caps)? {
        let n = s.size();
        let (f, g) = if first { (PairMap::proj1(n), PairMap::proj2(n)) } else { (PairMap::proj2(n), PairMap::proj1(n)) };
        let (_, _, r) = check_twist_groupoid(&s, &f, &g, (s.one, s.one))?;
        let failure = (!(r.biconditional() && r.adjoint_transfer() && r.unit_refinement()))
            .then(|| format!("report={r:?} in {}", describe(&s)));
        if !sweep.record(failure) {
            break;
        }
    }
    Ok(sweep)
}

fn twist_cone_product(caps: &Caps) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for p in posets_up_to(caps, 4)? {
        let tp = full_twist(&p)?;
        let failure = tp.cone_law().witness().map(|&(i, j)| {
            format!("x={} y={} in {}", tp.poset.name(i), tp.poset.name(j), poset_text(&p))
        });
        if !sweep.record(failure) {
            break;
        }
    }
    Ok(sweep)
}

fn bcrms(caps: &Caps) -> Result<Vec<ResStructure>> {
    structures(caps, StructureClass::BoundedCommutativeMonoid, caps.structures)
}

fn operator_twist_residuated(caps: &Caps) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for s in bcrms(caps)? {
        let ot = OperatorTwist::new(&s)?;
        let report = check_operator_residuated(&ot.structure());
        let mut failure = report
            .items()
            .iter()
            .find(|(_, v)| v.is_fail())
            .map(|(id, v)| format!("{id} {} in {}", v.witness().unwrap().render(&ot.twist.poset), describe(&s)));
        if failure.is_none() {
            for a0 in 0..s.size() {
                if let crate::Verdict::Fail(w) = check_embedding(&s.poset, &ot.twist.poset, a0)? {
                    failure = Some(format!("embedding a0={} {} in {}", s.poset.name(a0), w.render(&s.poset), describe(&s)));
                    break;
                }
            }
        }
        if !sweep.record(failure) {
            break;
        }
    }
    Ok(sweep)
}

fn restricted_twist_biconditional(caps: &Caps) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for s in bcrms(caps)? {
        for a in 0..s.size() {
            let pa = build_pa(&s.poset, a)?;
            let Gated::Checked(r) = check_restricted_twist(&pa, &s)? else { continue };
            let failure = (!(r.biconditional() && r.closure_agrees_with_audit())).then(|| {
                format!(
                    "a={} conditions={} closed={} residuated={} in {}",
                    s.poset.name(a),
                    r.conditions_hold(),
                    r.closure.closed(),
                    r.operator_residuated(),
                    describe(&s)
                )
            });
            if !sweep.record(failure) {
                return Ok(sweep);
            }
        }
    }
    Ok(sweep)
}

fn restricted_twist_pseudo_kleene(caps: &Caps) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for p in posets_up_to(caps, 4)? {
        for a in 0..p.size() {
            let pa = build_pa(&p, a)?;
            let failure = if let crate::Verdict::Fail(w) = is_antitone_involution(&pa.poset, &pa.involution) {
                Some(format!("involution {w:?}"))
            } else if let crate::Verdict::Fail(w) = pa_pseudo_kleene(&pa) {
                Some(format!("pseudo-kleene {}", w.render(&pa.poset)))
            } else {
                pa_embedding(&pa).witness().map(|w| format!("embedding {}", w.render(&p)))
            };
            let failure = failure.map(|f| format!("{f} a={} in {}", p.name(a), poset_text(&p)));
            if !sweep.record(failure) {
                return Ok(sweep);
            }
        }
    }
    Ok(sweep)
}

fn restricted_involution_membership(caps: &Caps) -> Result<Sweep> {
    let mut sweep = Sweep::default();
    for s in bcrms(caps)? {
        let ot = OperatorTwist::new(&s)?;
        for a in 0..s.size() {
            let pa = build_pa(&s.poset, a)?;
            let failure = involution_membership(&pa, &ot)
                .witness()
                .map(|w| format!("{} a={} in {}", w.render(&s.poset), s.poset.name(a), describe(&s)));
            if !sweep.record(failure) {
                return Ok(sweep);
            }
        }
    }
    Ok(sweep)
}

/// Classification counts of an enumeration, used by the CLI summary.
pub fn class_counts(all: &[ResStructure]) -> [(StructureClass, usize); 4] {
    let mut counts = [
        (StructureClass::LeftResiduated, 0),
        (StructureClass::BoundedLeftResiduated, 0),
        (StructureClass::CommutativeMonoid, 0),
        (StructureClass::BoundedCommutativeMonoid, 0),
    ];
    for s in all {
        let c = classify(s);
        let flags = [
            c.left_residuated.is_pass(),
            c.left_residuated.is_pass() && c.bounded.is_pass(),
            c.commutative_residuated_monoid(),
            c.bounded_commutative_residuated_monoid(),
        ];
        for (slot, f) in counts.iter_mut().zip(flags) {
            slot.1 += usize::from(f);
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::residuation::fixtures::two;

    fn strict_oracle_count(n: usize) -> usize {
        // every strict relation on n points, kept when irreflexive and transitive
        let off: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|(x, y)| x != y).collect();
        (0u64..1 << off.len())
            .filter(|bits| {
                let r = |x: usize, y: usize| off.iter().position(|&q| q == (x, y)).is_some_and(|i| bits >> i & 1 == 1);
                (0..n).all(|x| {
                    (0..n).all(|y| {
                        !(r(x, y) && r(y, x)) && (0..n).all(|z| !(r(x, y) && r(y, z)) || r(x, z))
                    })
                })
            })
            .count()
    }

    #[test]
    fn poset_counts_match_brute_force() {
        let caps = Caps::default();
        for n in 1..=4 {
            assert_eq!(enumerate_posets(n, &caps).unwrap().len(), strict_oracle_count(n), "n={n}");
        }
        assert_eq!(enumerate_posets(2, &caps).unwrap().len(), 3);
        assert_eq!(enumerate_posets(3, &caps).unwrap().len(), 19);
        assert_eq!(enumerate_posets(5, &caps).unwrap().len(), 4231);
    }

    #[test]
    fn posets_are_distinct_and_deterministic() {
        let caps = Caps::default();
        let a = enumerate_posets(4, &caps).unwrap();
        let b = enumerate_posets(4, &caps).unwrap();
        assert_eq!(a, b);
        let mut ups: Vec<Vec<ElementSet>> = a.iter().map(|p| (0..4).map(|x| p.up(x)).collect()).collect();
        ups.sort_by_key(|v| v.iter().map(|s| s.bits()).collect::<Vec<_>>());
        ups.dedup();
        assert_eq!(ups.len(), a.len());
    }

    #[test]
    fn caps_are_enforced() {
        let caps = Caps::default();
        assert!(matches!(enumerate_posets(6, &caps), Err(Error::CapExceeded { size: 6, cap: 5 })));
        let spec = EnumerationSpec::new(3, StructureClass::Any);
        assert!(matches!(enumerate_structures(&spec), Err(Error::CapExceeded { size: 3, cap: 2 })));
        let spec = EnumerationSpec::new(4, StructureClass::LeftResiduated);
        assert!(matches!(enumerate_structures(&spec), Err(Error::CapExceeded { .. })));
        assert!(check_universal("no-such-property", &caps).is_err());
    }

    #[test]
    fn singleton_structures() {
        for class in StructureClass::ALL {
            let all = enumerate_structures(&EnumerationSpec::new(1, class)).unwrap();
            assert_eq!(all.len(), 1, "{class}");
        }
    }

    /// Independent count: every `·` table on each 2-element poset and unit,
    /// kept when a residuum exists and (3), (6) hold.
    fn lrg_oracle(n: usize) -> Vec<ResStructure> {
        let mut out = Vec::new();
        for p in enumerate_posets(n, &Caps::default()).unwrap() {
            for one in 0..n {
                for mul in tables(n) {
                    if let Ok(imp) = synthesize_residuum(&p, &mul) {
                        let s = ResStructure::new(p.clone(), mul.clone(), Some(imp), one).unwrap();
                        if residuation::check(&s, 3).unwrap().is_pass() && residuation::check(&s, 6).unwrap().is_pass() {
                            out.push(s);
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn left_residuated_count_at_two_is_pinned() {
        let got = enumerate_structures(&EnumerationSpec::new(2, StructureClass::LeftResiduated)).unwrap();
        let oracle = lrg_oracle(2);
        assert_eq!(got.len(), oracle.len());
        for s in &got {
            assert!(oracle.contains(s));
        }
        assert_eq!(got.len(), LRG_TWO);
    }

    const LRG_TWO: usize = 12;

    #[test]
    fn left_residuated_at_three_matches_oracle() {
        let got = enumerate_structures(&EnumerationSpec::new(3, StructureClass::LeftResiduated)).unwrap();
        let oracle = lrg_oracle(3);
        assert_eq!(got.len(), oracle.len());
    }

    #[test]
    fn classes_agree_with_classify() {
        for n in 1..=3 {
            for class in &StructureClass::ALL[1..] {
                for s in enumerate_structures(&EnumerationSpec::new(n, *class)).unwrap() {
                    let c = classify(&s);
                    assert!(c.left_residuated.is_pass());
                    if class.bounded() {
                        assert!(c.bounded.is_pass());
                    }
                    if class.commutative() {
                        assert!(c.commutative_residuated_monoid());
                    }
                }
            }
        }
        let lrg3 = enumerate_structures(&EnumerationSpec::new(3, StructureClass::LeftResiduated)).unwrap();
        let crm3 = enumerate_structures(&EnumerationSpec::new(3, StructureClass::CommutativeMonoid)).unwrap();
        let bcrm3 = enumerate_structures(&EnumerationSpec::new(3, StructureClass::BoundedCommutativeMonoid)).unwrap();
        let counts = class_counts(&lrg3);
        assert_eq!(counts[2].1, crm3.len());
        assert_eq!(counts[3].1, bcrm3.len());
    }

    #[test]
    fn two_element_product_is_enumerated() {
        let all = enumerate_structures(&EnumerationSpec::new(2, StructureClass::LeftResiduated)).unwrap();
        let t = two();
        assert!(all.iter().any(|s| s.poset.up(0) == t.poset.up(0)
            && s.poset.up(1) == t.poset.up(1)
            && s.mul == t.mul
            && s.imp == t.imp
            && s.one == t.one));
    }

    #[test]
    fn limit_truncates() {
        let mut spec = EnumerationSpec::new(3, StructureClass::LeftResiduated);
        spec.limit = Some(5);
        assert_eq!(enumerate_structures(&spec).unwrap().len(), 5);
    }
}
