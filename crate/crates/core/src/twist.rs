//! Full twist products: the order on `Q²`, pair-map parameterised operations,
//! and set-valued operators with their residuation audit.

use crate::error::{Error, Result};
use crate::order::{Element, Poset};
use crate::residuation::{self, classify, OpTable, ResStructure};
use crate::set::{ElementSet, MAX_ELEMENTS};
use crate::verdict::{Verdict, Witness};

pub type Pair = (Element, Element);

/// Display names for pairs: plain concatenation (`a0`) when that is
/// unambiguous over the whole of `Q²`, otherwise `x.y`.
pub fn pair_namer(base: &Poset) -> impl Fn(Pair) -> String + '_ {
    let n = base.size();
    let mut seen = std::collections::HashSet::new();
    let injective = (0..n).all(|x| (0..n).all(|y| seen.insert(format!("{}{}", base.name(x), base.name(y)))));
    move |(x, y)| {
        if injective {
            format!("{}{}", base.name(x), base.name(y))
        } else {
            format!("{}.{}", base.name(x), base.name(y))
        }
    }
}

/// `(x,y)` with base names.
pub fn long_pair_name(base: &Poset, (x, y): Pair) -> String {
    format!("({},{})", base.name(x), base.name(y))
}

/// Resolves `(x,y)`, `x,y`, or a compressed name of a pair.
pub fn parse_pair(base: &Poset, token: &str) -> Result<Pair> {
    let t = token.trim();
    let inner = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(t);
    let lookup = |s: &str| {
        base.index_of(s.trim())
            .ok_or_else(|| Error::Unknown { kind: "element", name: s.trim().to_string() })
    };
    if let Some((x, y)) = inner.split_once(',') {
        return Ok((lookup(x)?, lookup(y)?));
    }
    let namer = pair_namer(base);
    let n = base.size();
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&p| namer(p) == t)
        .ok_or_else(|| Error::Unknown { kind: "pair", name: t.to_string() })
}

/// `(Q², ≤)` with `(x,y) ≤ (z,v)` iff `x ≤ z` and `v ≤ y`; element `(x,y)`
/// has index `x·n + y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistPoset {
    pub base: Poset,
    pub poset: Poset,
    cone_law: Verdict<(Element, Element)>,
}

impl TwistPoset {
    pub fn index(&self, (x, y): Pair) -> Element {
        x * self.base.size() + y
    }

    pub fn pair(&self, i: Element) -> Pair {
        (i / self.base.size(), i % self.base.size())
    }

    /// Bottom `(0,1)` and top `(1,0)` when the base is bounded.
    pub fn bounds(&self) -> (Option<Element>, Option<Element>) {
        self.poset.bounds()
    }

    /// Recorded outcome of the cone product law at construction time.
    pub fn cone_law(&self) -> &Verdict<(Element, Element)> {
        &self.cone_law
    }
}

pub fn full_twist(p: &Poset) -> Result<TwistPoset> {
    let n = p.size();
    if n * n > MAX_ELEMENTS {
        return Err(Error::CarrierTooLarge(n * n));
    }
    let namer = pair_namer(p);
    let names: Vec<String> = (0..n * n).map(|i| namer((i / n, i % n))).collect();
    let up: Vec<ElementSet> = (0..n * n)
        .map(|i| {
            let (x, y) = (i / n, i % n);
            let mut s = ElementSet::EMPTY;
            for z in p.up(x) {
                for v in p.down(y) {
                    s.insert(z * n + v);
                }
            }
            s
        })
        .collect();
    let poset = Poset::from_valid_up_sets(names, up);
    let mut tp = TwistPoset { base: p.clone(), poset, cone_law: Verdict::Pass };
    tp.cone_law = cone_product_law(&tp);
    Ok(tp)
}

fn product_set(n: usize, left: ElementSet, right: ElementSet) -> ElementSet {
    let mut s = ElementSet::EMPTY;
    for x in left {
        for y in right {
            s.insert(x * n + y);
        }
    }
    s
}

/// `L((x,y),(z,v)) = L(x,z) × U(y,v)` and `U((x,y),(z,v)) = U(x,z) × L(y,v)`
/// for every pair of twist elements.
pub fn cone_product_law(tp: &TwistPoset) -> Verdict<(Element, Element)> {
    let n = tp.base.size();
    let b = &tp.base;
    for i in 0..n * n {
        for j in 0..n * n {
            let ((x, y), (z, v)) = (tp.pair(i), tp.pair(j));
            let both = ElementSet::singleton(i).with(j);
            let xz = ElementSet::singleton(x).with(z);
            let yv = ElementSet::singleton(y).with(v);
            let lower = product_set(n, b.lower_cone(xz), b.upper_cone(yv));
            let upper = product_set(n, b.upper_cone(xz), b.lower_cone(yv));
            if tp.poset.lower_cone(both) != lower || tp.poset.upper_cone(both) != upper {
                return Verdict::Fail((i, j));
            }
        }
    }
    Verdict::Pass
}

/// A map `Q² → Q`, indexed like [`TwistPoset`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairMap {
    n: usize,
    map: Vec<Element>,
}

impl PairMap {
    pub fn new(n: usize, map: Vec<Element>) -> Result<PairMap> {
        if map.len() != n * n {
            return Err(Error::Invalid(format!("pair map needs {} entries, found {}", n * n, map.len())));
        }
        if let Some(&bad) = map.iter().find(|&&z| z >= n) {
            return Err(Error::IndexOutOfRange { index: bad, size: n });
        }
        Ok(PairMap { n, map })
    }

    pub fn proj1(n: usize) -> PairMap {
        PairMap { n, map: (0..n * n).map(|i| i / n).collect() }
    }

    pub fn proj2(n: usize) -> PairMap {
        PairMap { n, map: (0..n * n).map(|i| i % n).collect() }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, (x, y): Pair) -> Element {
        self.map[x * self.n + y]
    }

    pub fn entries(&self) -> &[Element] {
        &self.map
    }

    pub fn is_proj1(&self) -> bool {
        *self == PairMap::proj1(self.n)
    }

    pub fn is_proj2(&self) -> bool {
        *self == PairMap::proj2(self.n)
    }

    /// First base element not in the image.
    pub fn missing_value(&self) -> Option<Element> {
        let image: ElementSet = self.map.iter().copied().collect();
        (ElementSet::full(self.n) - image).first()
    }
}

/// The twist structure with `(x,y)⊙(z,v) = (x·f(z,v), g(z,v)→y)`,
/// `(x,y)⇒(z,v) = (f(x,y)→z, v·g(x,y))` and unit `(a,b)`.
pub fn twist_operations(s: &ResStructure, f: &PairMap, g: &PairMap, unit: Pair) -> Result<(TwistPoset, ResStructure)> {
    let n = s.size();
    let imp = s.imp_table()?;
    for (name, m) in [("f", f), ("g", g)] {
        if m.size() != n {
            return Err(Error::Invalid(format!("pair map {name} is over {} elements, base has {n}", m.size())));
        }
        if let Some(z) = m.missing_value() {
            return Err(Error::Precondition(format!(
                "pair map {name} is not surjective: `{}` is never attained",
                s.poset.name(z)
            )));
        }
    }
    s.poset.check_index(unit.0)?;
    s.poset.check_index(unit.1)?;
    for (name, m) in [("f", f), ("g", g)] {
        if m.get(unit) != s.one {
            return Err(Error::Precondition(format!(
                "{name}{} = {} but must equal the unit `{}`",
                long_pair_name(&s.poset, unit),
                s.poset.name(m.get(unit)),
                s.poset.name(s.one)
            )));
        }
    }
    let tp = full_twist(&s.poset)?;
    let nn = n * n;
    let pr = |i: Element| (i / n, i % n);
    let mul = OpTable::from_fn(nn, |i, j| {
        let ((x, y), q) = (pr(i), pr(j));
        s.mul(x, f.get(q)) * n + imp.get(g.get(q), y)
    });
    let timp = OpTable::from_fn(nn, |i, j| {
        let (p, (z, v)) = (pr(i), pr(j));
        imp.get(f.get(p), z) * n + s.mul(v, g.get(p))
    });
    let one = tp.index(unit);
    let twisted = ResStructure::new(tp.poset.clone(), mul, Some(timp), one)?;
    Ok((tp, twisted))
}

/// Left-residuated groupoid status of a base and its twist.
///
/// The unit law on the twist reduces to `x·1 = x` together with `1→y = y`
/// on the base, reported as `unit_refinement`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistGroupoidReport {
    pub base_adjoint: Verdict,
    pub base_unit: Verdict,
    pub base_decreasing: Verdict,
    pub base_left_unit: Verdict,
    pub twist_adjoint: Verdict,
    pub twist_unit: Verdict,
}

impl TwistGroupoidReport {
    pub fn base_groupoid(&self) -> bool {
        self.base_adjoint.is_pass() && self.base_unit.is_pass()
    }

    pub fn twist_groupoid(&self) -> bool {
        self.twist_adjoint.is_pass() && self.twist_unit.is_pass()
    }

    pub fn biconditional(&self) -> bool {
        self.base_groupoid() == self.twist_groupoid()
    }

    pub fn adjoint_transfer(&self) -> bool {
        self.base_adjoint.is_pass() == self.twist_adjoint.is_pass()
    }

    pub fn unit_refinement(&self) -> bool {
        self.twist_unit.is_pass() == (self.base_unit.is_pass() && self.base_left_unit.is_pass())
    }
}

pub fn check_twist_groupoid(s: &ResStructure, f: &PairMap, g: &PairMap, unit: Pair) -> Result<(TwistPoset, ResStructure, TwistGroupoidReport)> {
    let (tp, t) = twist_operations(s, f, g, unit)?;
    let c = |st: &ResStructure, id| residuation::check(st, id).expect("imp present");
    let report = TwistGroupoidReport {
        base_adjoint: c(s, 3),
        base_unit: c(s, 6),
        base_decreasing: c(s, 7),
        base_left_unit: c(s, 9),
        twist_adjoint: c(&t, 3),
        twist_unit: c(&t, 6),
    };
    Ok((tp, t, report))
}

/// Set-valued operation table: `get(x, y)` is a subset of the carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorTable {
    n: usize,
    cells: Vec<ElementSet>,
}

impl OperatorTable {
    pub fn new(n: usize, cells: Vec<ElementSet>) -> Result<OperatorTable> {
        if cells.len() != n * n {
            return Err(Error::Invalid(format!("operator table needs {} cells, found {}", n * n, cells.len())));
        }
        Ok(OperatorTable { n, cells })
    }

    pub fn from_fn(n: usize, f: impl Fn(Element, Element) -> ElementSet) -> OperatorTable {
        OperatorTable { n, cells: (0..n * n).map(|i| f(i / n, i % n)).collect() }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: Element, y: Element) -> ElementSet {
        self.cells[x * self.n + y]
    }

    pub fn cells(&self) -> &[ElementSet] {
        &self.cells
    }
}

/// `(Q, ≤, ⊙, ⇒, 0, 1)` with operator-valued `⊙` and `⇒`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorStructure {
    pub poset: Poset,
    pub odot: OperatorTable,
    pub oimp: OperatorTable,
    pub zero: Element,
    pub one: Element,
}

impl OperatorStructure {
    pub fn new(poset: Poset, odot: OperatorTable, oimp: OperatorTable, zero: Element, one: Element) -> Result<Self> {
        let n = poset.size();
        for (name, t) in [("odot", &odot), ("oimp", &oimp)] {
            if t.size() != n {
                return Err(Error::Invalid(format!("operator table {name} is over {} elements, carrier has {n}", t.size())));
            }
        }
        poset.check_index(zero)?;
        poset.check_index(one)?;
        Ok(OperatorStructure { poset, odot, oimp, zero, one })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatorReport {
    pub bounded: Verdict,
    pub well_formed: Verdict,
    pub commutative: Verdict,
    pub associative: Verdict,
    pub adjoint: Verdict,
}

impl OperatorReport {
    pub fn all_pass(&self) -> bool {
        self.items().iter().all(|(_, v)| v.is_pass())
    }

    pub fn items(&self) -> [(&'static str, &Verdict); 5] {
        [
            ("op-bounded", &self.bounded),
            ("op-well-formed", &self.well_formed),
            ("op-commutative", &self.commutative),
            ("op-associative", &self.associative),
            ("op-adjoint", &self.adjoint),
        ]
    }
}

/// Audits boundedness, well-formed images, commutativity, operator
/// associativity and the set-level adjunction `x⊙y ≤ z ⇔ x ≤ y⇒z`.
pub fn check_operator_residuated(os: &OperatorStructure) -> OperatorReport {
    let p = &os.poset;
    let n = p.size();
    let carrier = p.carrier();
    let bounded = if p.bottom() != Some(os.zero) {
        Verdict::Fail(Witness::new().elem("zero", os.zero).text("bottom", bound_text(p, p.bottom())))
    } else if p.top() != Some(os.one) {
        Verdict::Fail(Witness::new().elem("one", os.one).text("top", bound_text(p, p.top())))
    } else {
        Verdict::Pass
    };

    let mut well_formed = Verdict::Pass;
    'wf: for (name, t) in [("odot", &os.odot), ("oimp", &os.oimp)] {
        for x in 0..n {
            for y in 0..n {
                let img = t.get(x, y);
                if img.is_empty() || !img.is_subset(carrier) {
                    well_formed = Verdict::Fail(Witness::new().text("op", name).elem("x", x).elem("y", y));
                    break 'wf;
                }
            }
        }
    }

    let mut commutative = Verdict::Pass;
    'c: for x in 0..n {
        for y in x + 1..n {
            if os.odot.get(x, y) != os.odot.get(y, x) {
                commutative = Verdict::Fail(Witness::new().elem("x", x).elem("y", y));
                break 'c;
            }
        }
    }

    // images outside the carrier cannot be fed back in
    let mut associative = Verdict::Pass;
    if well_formed.is_pass() {
        'a: for x in 0..n {
            for y in 0..n {
                let xy = os.odot.get(x, y);
                for z in 0..n {
                    let lhs = xy.iter().fold(ElementSet::EMPTY, |acc, u| acc | os.odot.get(u, z));
                    let rhs = os.odot.get(y, z).iter().fold(ElementSet::EMPTY, |acc, u| acc | os.odot.get(x, u));
                    if lhs != rhs {
                        associative = Verdict::Fail(Witness::new().elem("x", x).elem("y", y).elem("z", z));
                        break 'a;
                    }
                }
            }
        }
    } else {
        associative = Verdict::Fail(Witness::new().text("reason", "ill-formed-operator"));
    }

    let mut adjoint = Verdict::Pass;
    'r: for x in 0..n {
        for y in 0..n {
            let xy = os.odot.get(x, y);
            for z in 0..n {
                let left = xy.is_subset(p.down(z));
                let right = os.oimp.get(y, z).is_subset(p.up(x));
                if left != right {
                    adjoint = Verdict::Fail(Witness::new().elem("x", x).elem("y", y).elem("z", z));
                    break 'r;
                }
            }
        }
    }

    OperatorReport { bounded, well_formed, commutative, associative, adjoint }
}

fn bound_text(p: &Poset, b: Option<Element>) -> String {
    b.map_or_else(|| "none".to_string(), |x| p.name(x).to_string())
}

/// Operators on the full twist of a bounded commutative residuated monoid:
/// `(x,y)⊙(z,v) = {(x·z, x→v), (x·z, z→y)}` and
/// `(x,y)⇒(z,v) = {(x→z, x·v), (v→y, x·v)}`.
#[derive(Debug, Clone)]
pub struct OperatorTwist {
    pub base: ResStructure,
    pub twist: TwistPoset,
}

impl OperatorTwist {
    pub fn new(s: &ResStructure) -> Result<OperatorTwist> {
        let cls = classify(s);
        if let Some(flag) = cls.first_missing_bcrm_flag() {
            return Err(Error::Precondition(format!(
                "operator twist needs a bounded commutative residuated monoid; `{flag}` fails"
            )));
        }
        let mut base = s.clone();
        if base.zero.is_none() {
            base.zero = base.poset.bottom();
        }
        Ok(OperatorTwist { twist: full_twist(&s.poset)?, base })
    }

    pub fn product(&self, (x, y): Pair, (z, v): Pair) -> [Pair; 2] {
        let s = &self.base;
        let xz = s.mul(x, z);
        [(xz, s.imp(x, v)), (xz, s.imp(z, y))]
    }

    pub fn implication(&self, (x, y): Pair, (z, v): Pair) -> [Pair; 2] {
        let s = &self.base;
        let xv = s.mul(x, v);
        [(s.imp(x, z), xv), (s.imp(v, y), xv)]
    }

    /// Image as a sorted, duplicate-free list.
    pub fn product_set(&self, p: Pair, q: Pair) -> Vec<Pair> {
        normalize(self.product(p, q))
    }

    pub fn implication_set(&self, p: Pair, q: Pair) -> Vec<Pair> {
        normalize(self.implication(p, q))
    }

    pub fn zero(&self) -> Pair {
        (self.base.zero.unwrap(), self.base.one)
    }

    pub fn one(&self) -> Pair {
        (self.base.one, self.base.zero.unwrap())
    }

    pub fn structure(&self) -> OperatorStructure {
        let tp = &self.twist;
        let nn = tp.poset.size();
        let to_set = |ps: [Pair; 2]| -> ElementSet { ps.iter().map(|&p| tp.index(p)).collect() };
        let odot = OperatorTable::from_fn(nn, |i, j| to_set(self.product(tp.pair(i), tp.pair(j))));
        let oimp = OperatorTable::from_fn(nn, |i, j| to_set(self.implication(tp.pair(i), tp.pair(j))));
        OperatorStructure {
            poset: tp.poset.clone(),
            odot,
            oimp,
            zero: tp.index(self.zero()),
            one: tp.index(self.one()),
        }
    }
}

fn normalize(ps: [Pair; 2]) -> Vec<Pair> {
    let mut v = ps.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

pub fn operator_product(s: &ResStructure, p: Pair, q: Pair) -> Result<Vec<Pair>> {
    Ok(OperatorTwist::new(s)?.product_set(p, q))
}

pub fn operator_implication(s: &ResStructure, p: Pair, q: Pair) -> Result<Vec<Pair>> {
    Ok(OperatorTwist::new(s)?.implication_set(p, q))
}

/// `x ≤ y` iff `(x,a0) ≤ (y,a0)` in `twist`, whose element `(x,y)` has index
/// `x·n + y`.
pub fn check_embedding(base: &Poset, twist: &Poset, a0: Element) -> Result<Verdict> {
    let n = base.size();
    base.check_index(a0)?;
    if twist.size() != n * n {
        return Err(Error::Invalid(format!("twist carrier has {} elements, expected {}", twist.size(), n * n)));
    }
    for x in 0..n {
        for y in 0..n {
            if base.leq(x, y) != twist.leq(x * n + a0, y * n + a0) {
                return Ok(Verdict::Fail(Witness::new().elem("x", x).elem("y", y)));
            }
        }
    }
    Ok(Verdict::Pass)
}
