//! Binary operation tables over a poset and the numbered condition catalogue.
//!
//! Conditions are checked by exhaustive enumeration of element tuples; the
//! first failing tuple in lexicographic index order is the witness.

use std::fmt;

use crate::error::{Error, Result};
use crate::order::{Element, Poset};
use crate::set::ElementSet;
use crate::verdict::{Verdict, Witness};

/// A total binary operation, `get(x, y) = x ∘ y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpTable {
    n: usize,
    cells: Vec<Element>,
}

impl OpTable {
    pub fn new(n: usize, cells: Vec<Element>) -> Result<OpTable> {
        if cells.len() != n * n {
            return Err(Error::Invalid(format!(
                "operation table needs {} entries, found {}",
                n * n,
                cells.len()
            )));
        }
        if let Some(&bad) = cells.iter().find(|&&c| c >= n) {
            return Err(Error::IndexOutOfRange { index: bad, size: n });
        }
        Ok(OpTable { n, cells })
    }

    pub fn from_fn(n: usize, f: impl Fn(Element, Element) -> Element) -> OpTable {
        let cells = (0..n * n).map(|i| f(i / n, i % n)).collect();
        OpTable::new(n, cells).expect("operation closure left the carrier")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: Element, y: Element) -> Element {
        self.cells[x * self.n + y]
    }

    pub fn set(&mut self, x: Element, y: Element, v: Element) {
        assert!(v < self.n);
        self.cells[x * self.n + y] = v;
    }

    pub fn cells(&self) -> &[Element] {
        &self.cells
    }

    pub fn row(&self, x: Element) -> &[Element] {
        &self.cells[x * self.n..(x + 1) * self.n]
    }
}

/// `(Q, ≤, ·, →, 1)` with optional `0` and a designated element `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResStructure {
    pub poset: Poset,
    pub mul: OpTable,
    pub imp: Option<OpTable>,
    pub one: Element,
    pub zero: Option<Element>,
    pub designated: Option<Element>,
}

impl ResStructure {
    pub fn new(poset: Poset, mul: OpTable, imp: Option<OpTable>, one: Element) -> Result<ResStructure> {
        let s = ResStructure { poset, mul, imp, one, zero: None, designated: None };
        s.validate()?;
        Ok(s)
    }

    pub fn with_zero(mut self, zero: Element) -> Result<ResStructure> {
        self.zero = Some(zero);
        self.validate()?;
        Ok(self)
    }

    pub fn with_designated(mut self, a: Element) -> Result<ResStructure> {
        self.designated = Some(a);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.poset.size();
        if self.mul.size() != n {
            return Err(Error::Invalid(format!("mul table is {0}x{0}, carrier has {n}", self.mul.size())));
        }
        if let Some(imp) = &self.imp {
            if imp.size() != n {
                return Err(Error::Invalid(format!("imp table is {0}x{0}, carrier has {n}", imp.size())));
            }
        }
        self.poset.check_index(self.one)?;
        if let Some(a) = self.designated {
            self.poset.check_index(a)?;
        }
        if let Some(zero) = self.zero {
            self.poset.check_index(zero)?;
            if self.poset.bottom() != Some(zero) {
                return Err(Error::Invalid(format!("zero `{}` is not the bottom", self.poset.name(zero))));
            }
            if self.poset.top() != Some(self.one) {
                return Err(Error::Invalid(format!(
                    "one `{}` is not the top of a bounded structure",
                    self.poset.name(self.one)
                )));
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.poset.size()
    }

    #[inline]
    pub fn mul(&self, x: Element, y: Element) -> Element {
        self.mul.get(x, y)
    }

    /// Panics if the structure has no implication table.
    #[inline]
    pub fn imp(&self, x: Element, y: Element) -> Element {
        self.imp.as_ref().expect("structure has no implication table").get(x, y)
    }

    #[inline]
    pub fn leq(&self, x: Element, y: Element) -> bool {
        self.poset.leq(x, y)
    }

    pub fn imp_table(&self) -> Result<&OpTable> {
        self.imp.as_ref().ok_or(Error::MissingImplication)
    }

    pub fn zero_elem(&self) -> Result<Element> {
        self.zero.ok_or(Error::MissingConstant("zero"))
    }

    pub fn designated_elem(&self) -> Result<Element> {
        self.designated.ok_or(Error::MissingConstant("designated"))
    }
}

/// One of the thirteen numbered conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConditionId(u8);

impl ConditionId {
    pub const ALL: [ConditionId; 13] = {
        let mut out = [ConditionId(1); 13];
        let mut i = 0;
        while i < 13 {
            out[i] = ConditionId(i as u8 + 1);
            i += 1;
        }
        out
    };

    pub fn new(id: u8) -> Result<ConditionId> {
        if (1..=13).contains(&id) {
            Ok(ConditionId(id))
        } else {
            Err(Error::Unknown { kind: "condition", name: id.to_string() })
        }
    }

    pub fn number(self) -> u8 {
        self.0
    }

    pub fn needs_imp(self) -> bool {
        matches!(self.0, 3 | 4 | 5 | 8 | 9 | 10 | 12)
    }

    pub fn needs_designated(self) -> bool {
        matches!(self.0, 11..=13)
    }

    /// The law in symbols.
    pub fn formula(self) -> &'static str {
        match self.0 {
            1 => "x<=y implies z*x <= z*y",
            2 => "x<=y implies x*z <= y*z",
            3 => "x*y <= z iff x <= y->z",
            4 => "x<=y implies z->x <= z->y",
            5 => "x<=y implies y->z <= x->z",
            6 => "x*1 = x",
            7 => "x*y <= x and x*y <= y",
            8 => "(x*y)->z = x->(y->z)",
            9 => "1->x = x",
            10 => "x <= y->x",
            11 => "a*x < a implies a*x = 0",
            12 => "a < x implies x->a = a",
            _ => "a <= x and a <= y implies a <= x*y",
        }
    }
}

impl fmt::Display for ConditionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn first_pair(n: usize, mut bad: impl FnMut(Element, Element) -> bool) -> Option<(Element, Element)> {
    (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| bad(x, y))
}

fn first_triple(
    n: usize,
    mut bad: impl FnMut(Element, Element, Element) -> bool,
) -> Option<(Element, Element, Element)> {
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if bad(x, y, z) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

fn xyz((x, y, z): (Element, Element, Element)) -> Witness {
    Witness::new().elem("x", x).elem("y", y).elem("z", z)
}

fn xy((x, y): (Element, Element)) -> Witness {
    Witness::new().elem("x", x).elem("y", y)
}

/// Exhaustively checks condition `c` on `s`.
pub fn check_condition(s: &ResStructure, c: ConditionId) -> Result<Verdict> {
    if c.needs_imp() {
        s.imp_table()?;
    }
    let a = if c.needs_designated() { Some(s.designated_elem()?) } else { None };
    let zero = if c.number() == 11 { Some(s.zero_elem()?) } else { None };
    let n = s.size();
    let le = |x, y| s.leq(x, y);
    let one = s.one;
    let w = match c.number() {
        1 => first_triple(n, |x, y, z| le(x, y) && !le(s.mul(z, x), s.mul(z, y))).map(xyz),
        2 => first_triple(n, |x, y, z| le(x, y) && !le(s.mul(x, z), s.mul(y, z))).map(xyz),
        3 => first_triple(n, |x, y, z| le(s.mul(x, y), z) != le(x, s.imp(y, z))).map(xyz),
        4 => first_triple(n, |x, y, z| le(x, y) && !le(s.imp(z, x), s.imp(z, y))).map(xyz),
        5 => first_triple(n, |x, y, z| le(x, y) && !le(s.imp(y, z), s.imp(x, z))).map(xyz),
        6 => (0..n).find(|&x| s.mul(x, one) != x).map(|x| Witness::new().elem("x", x)),
        7 => first_pair(n, |x, y| {
            let p = s.mul(x, y);
            !le(p, x) || !le(p, y)
        })
        .map(xy),
        8 => first_triple(n, |x, y, z| s.imp(s.mul(x, y), z) != s.imp(x, s.imp(y, z))).map(xyz),
        9 => (0..n).find(|&x| s.imp(one, x) != x).map(|x| Witness::new().elem("x", x)),
        10 => first_pair(n, |x, y| !le(x, s.imp(y, x))).map(xy),
        11 => {
            let (a, zero) = (a.unwrap(), zero.unwrap());
            (0..n)
                .find(|&x| {
                    let p = s.mul(a, x);
                    s.poset.lt(p, a) && p != zero
                })
                .map(|x| Witness::new().elem("x", x))
        }
        12 => {
            let a = a.unwrap();
            (0..n)
                .find(|&x| s.poset.lt(a, x) && s.imp(x, a) != a)
                .map(|x| Witness::new().elem("x", x))
        }
        _ => {
            let a = a.unwrap();
            first_pair(n, |x, y| le(a, x) && le(a, y) && !le(a, s.mul(x, y))).map(xy)
        }
    };
    Ok(Verdict::from_option(w))
}

pub fn check(s: &ResStructure, c: u8) -> Result<Verdict> {
    check_condition(s, ConditionId::new(c)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub left_residuated: Verdict,
    pub bounded: Verdict,
    pub commutative: Verdict,
    pub associative: Verdict,
}

impl Classification {
    pub fn commutative_residuated_monoid(&self) -> bool {
        self.left_residuated.is_pass() && self.commutative.is_pass() && self.associative.is_pass()
    }

    pub fn bounded_commutative_residuated_monoid(&self) -> bool {
        self.commutative_residuated_monoid() && self.bounded.is_pass()
    }

    /// Name of the first flag blocking a bounded commutative residuated monoid.
    pub fn first_missing_bcrm_flag(&self) -> Option<&'static str> {
        [
            ("left-residuated", &self.left_residuated),
            ("bounded", &self.bounded),
            ("commutative", &self.commutative),
            ("associative", &self.associative),
        ]
        .into_iter()
        .find(|(_, v)| v.is_fail())
        .map(|(name, _)| name)
    }
}

pub fn is_commutative(s: &ResStructure) -> Verdict {
    let n = s.size();
    Verdict::from_option(first_pair(n, |x, y| x < y && s.mul(x, y) != s.mul(y, x)).map(xy))
}

pub fn is_associative(s: &ResStructure) -> Verdict {
    let n = s.size();
    Verdict::from_option(
        first_triple(n, |x, y, z| s.mul(s.mul(x, y), z) != s.mul(x, s.mul(y, z))).map(xyz),
    )
}

fn bounded(s: &ResStructure) -> Verdict {
    let (bottom, top) = s.poset.bounds();
    match (bottom, top) {
        (None, _) => Verdict::Fail(Witness::new().text("bottom", "none")),
        (_, None) => Verdict::Fail(Witness::new().text("top", "none")),
        (Some(b), Some(t)) => {
            if t != s.one {
                Verdict::Fail(Witness::new().elem("one", s.one).elem("top", t))
            } else if s.zero.is_some_and(|z| z != b) {
                Verdict::Fail(Witness::new().elem("zero", s.zero.unwrap()).elem("bottom", b))
            } else {
                Verdict::Pass
            }
        }
    }
}

pub fn classify(s: &ResStructure) -> Classification {
    let left_residuated = if s.imp.is_none() {
        Verdict::Fail(Witness::new().text("imp", "missing"))
    } else {
        match check(s, 3).expect("imp present") {
            Verdict::Pass => check(s, 6).expect("no constants needed"),
            fail => fail,
        }
    };
    Classification {
        left_residuated,
        bounded: bounded(s),
        commutative: is_commutative(s),
        associative: is_associative(s),
    }
}

/// Why `y → z` could not be solved from `x·y ≤ z ⇔ x ≤ y→z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResiduumFailure {
    /// No `x` satisfies `x·y ≤ z`.
    Empty { y: Element, z: Element },
    /// `{x | x·y ≤ z}` has several maximal elements.
    NoMaximum { y: Element, z: Element, maximal: ElementSet },
    /// `{x | x·y ≤ z}` has a maximum `m` but some `x ≤ m` lies outside it.
    NotDownSet { y: Element, z: Element, max: Element, x: Element },
}

impl ResiduumFailure {
    pub fn pair(&self) -> (Element, Element) {
        match *self {
            ResiduumFailure::Empty { y, z }
            | ResiduumFailure::NoMaximum { y, z, .. }
            | ResiduumFailure::NotDownSet { y, z, .. } => (y, z),
        }
    }

    pub fn witness(&self) -> Witness {
        match *self {
            ResiduumFailure::Empty { y, z } => Witness::new().elem("y", y).elem("z", z).text("solutions", "{}"),
            ResiduumFailure::NoMaximum { y, z, maximal } => {
                Witness::new().elem("y", y).elem("z", z).set("maximal", maximal)
            }
            ResiduumFailure::NotDownSet { y, z, max, x } => {
                Witness::new().elem("y", y).elem("z", z).elem("max", max).elem("x", x)
            }
        }
    }
}

/// Solves `y → z = max {x | x·y ≤ z}` for every pair, requiring the solution
/// set to be the principal down-set of its maximum.
pub fn synthesize_residuum(p: &Poset, mul: &OpTable) -> std::result::Result<OpTable, ResiduumFailure> {
    let n = p.size();
    assert_eq!(mul.size(), n, "table and poset sizes differ");
    let mut cells = Vec::with_capacity(n * n);
    for y in 0..n {
        for z in 0..n {
            let sols: ElementSet = (0..n).filter(|&x| p.leq(mul.get(x, y), z)).collect();
            if sols.is_empty() {
                return Err(ResiduumFailure::Empty { y, z });
            }
            let maximal = p.maximal_elements(sols);
            if maximal.len() != 1 {
                return Err(ResiduumFailure::NoMaximum { y, z, maximal });
            }
            let m = maximal.first().unwrap();
            if let Some(x) = (p.down(m) - sols).first() {
                return Err(ResiduumFailure::NotDownSet { y, z, max: m, x });
            }
            cells.push(m);
        }
    }
    Ok(OpTable { n, cells })
}

/// Outcome of a material implication between condition verdicts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Implication {
    Vacuous,
    Confirmed,
    Refuted(Witness),
}

impl Implication {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Implication::Refuted(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Implication::Vacuous => "VACUOUS",
            Implication::Confirmed => "CONFIRMED",
            Implication::Refuted(_) => "REFUTED",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaOutcome {
    pub name: &'static str,
    pub statement: &'static str,
    pub outcome: Implication,
}

fn implication(hypothesis: bool, conclusion: impl FnOnce() -> Verdict) -> Implication {
    if !hypothesis {
        return Implication::Vacuous;
    }
    match conclusion() {
        Verdict::Pass => Implication::Confirmed,
        Verdict::Fail(w) => Implication::Refuted(w),
    }
}

fn all_pass(s: &ResStructure, ids: &[u8]) -> Verdict {
    for &c in ids {
        if let Verdict::Fail(w) = check(s, c).expect("requirements checked by caller") {
            return Verdict::Fail(w.text("condition", format!("({c})")));
        }
    }
    Verdict::Pass
}

/// Evaluates the known implications between conditions on one structure.
///
/// Requires an implication table; the idempotent-upper-bound implication is
/// included only when a designated element is set.
pub fn check_lemma_implications(s: &ResStructure) -> Result<Vec<LemmaOutcome>> {
    s.imp_table()?;
    let holds = |c: u8| check(s, c).expect("imp present").is_pass();
    let comm = is_commutative(s).is_pass();
    let assoc = is_associative(s).is_pass();
    let mut out = vec![
        LemmaOutcome {
            name: "isotone-adjoint-antitone",
            statement: "(1) and (3) imply (5)",
            outcome: implication(holds(1) && holds(3), || all_pass(s, &[5])),
        },
        LemmaOutcome {
            name: "commutative-decreasing",
            statement: "commutative, (1) and (6) imply (7)",
            outcome: implication(comm && holds(1) && holds(6), || all_pass(s, &[7])),
        },
        LemmaOutcome {
            name: "currying",
            statement: "associative, (2) and (3) imply (8)",
            outcome: implication(assoc && holds(2) && holds(3), || all_pass(s, &[8])),
        },
        LemmaOutcome {
            name: "groupoid-consequences",
            statement: "(3) and (6) imply (2), (4) and (9)",
            outcome: implication(holds(3) && holds(6), || all_pass(s, &[2, 4, 9])),
        },
        LemmaOutcome {
            name: "implication-inflationary",
            statement: "(5) and (9) imply (10)",
            outcome: implication(holds(5) && holds(9), || all_pass(s, &[10])),
        },
    ];
    if let Some(a) = s.designated {
        let monoid = holds(3) && holds(6) && comm && assoc;
        out.push(LemmaOutcome {
            name: "idempotent-upper-product",
            statement: "commutative residuated monoid with a*a = a implies (13)",
            outcome: implication(monoid && s.mul(a, a) == a, || all_pass(s, &[13])),
        });
    }
    Ok(out)
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn example1_satisfies_one_to_ten() {
        let s = example1();
        for c in 1..=10 {
            assert_eq!(check(&s, c).unwrap(), Verdict::Pass, "condition ({c})");
        }
        let cls = classify(&s);
        assert!(cls.bounded_commutative_residuated_monoid(), "{cls:?}");
        // the column under 1 is the identity
        let p = &s.poset;
        assert_eq!((0..10).map(|x| p.name(s.mul(x, 9))).collect::<Vec<_>>().join(" "), "0 a b c d e f g h 1");
    }

    #[test]
    fn two_element_structure_is_adjoint() {
        // Oracle: the eight triples against the closed forms x*y and 1-x+xy.
        for x in 0..2usize {
            for y in 0..2usize {
                for z in 0..2usize {
                    assert_eq!(x * y <= z, x <= 1 - y + y * z);
                }
            }
        }
        assert!(check(&two(), 3).unwrap().is_pass());
        assert!(classify(&two()).bounded_commutative_residuated_monoid());
    }

    #[test]
    fn chain3_classifies() {
        assert!(classify(&chain3()).bounded_commutative_residuated_monoid());
        assert!(classify(&single()).bounded_commutative_residuated_monoid());
    }

    #[test]
    fn first_projection_is_not_commutative() {
        let p = Poset::chain(&["0", "1"]).unwrap();
        let s = ResStructure::new(p, OpTable::from_fn(2, |x, _| x), Some(OpTable::from_fn(2, |_, _| 0)), 1)
            .unwrap();
        match classify(&s).commutative {
            Verdict::Fail(w) => assert_eq!((w.get_elem("x"), w.get_elem("y")), (Some(0), Some(1))),
            Verdict::Pass => panic!(),
        }
    }

    #[test]
    fn missing_constants_are_input_errors() {
        let mut s = example1();
        assert_eq!(check(&s, 12), Err(Error::MissingConstant("designated")));
        s.designated = Some(1);
        s.zero = None;
        assert_eq!(check(&s, 11), Err(Error::MissingConstant("zero")));
        s.imp = None;
        assert_eq!(check(&s, 3), Err(Error::MissingImplication));
        assert!(check(&s, 1).is_ok());
        assert!(check(&s, 14).is_err());
    }

    #[test]
    fn synthesis_reproduces_example1_implication() {
        let s = example1();
        let imp = synthesize_residuum(&s.poset, &s.mul).unwrap();
        assert_eq!(&imp, s.imp.as_ref().unwrap());
    }

    #[test]
    fn synthesis_of_chain_meet_is_heyting() {
        let p = Poset::chain(&["0", "1"]).unwrap();
        let meet = OpTable::from_fn(2, |x, y| x.min(y));
        let imp = synthesize_residuum(&p, &meet).unwrap();
        // direct: max{u | min(u,x) <= z}
        for x in 0..2 {
            for z in 0..2 {
                let direct = (0..2).filter(|&u| u.min(x) <= z).max().unwrap();
                assert_eq!(imp.get(x, z), direct);
                assert_eq!(imp.get(x, z), if x <= z { 1 } else { z });
            }
        }
    }

    #[test]
    fn synthesis_fails_without_maximum() {
        let p = Poset::antichain(&["p", "q"]).unwrap();
        let mul = OpTable::from_fn(2, |_, _| 0);
        match synthesize_residuum(&p, &mul) {
            Err(ResiduumFailure::NoMaximum { y: 0, z: 0, maximal }) => assert_eq!(maximal.len(), 2),
            other => panic!("{other:?}"),
        }
        // non-monotone column: 0*y = 1, 1*y = 0 on a chain
        let c = Poset::chain(&["0", "1"]).unwrap();
        let flip = OpTable::from_fn(2, |x, _| 1 - x);
        assert!(matches!(
            synthesize_residuum(&c, &flip),
            Err(ResiduumFailure::NotDownSet { .. }) | Err(ResiduumFailure::Empty { .. })
        ));
    }

    #[test]
    fn lemma_implications_on_examples() {
        let s = example1();
        for outcome in check_lemma_implications(&s).unwrap() {
            assert_eq!(outcome.outcome, Implication::Confirmed, "{}", outcome.name);
        }
        assert!(check(&s, 8).unwrap().is_pass());
        for outcome in check_lemma_implications(&single().with_designated(0).unwrap()).unwrap() {
            assert_eq!(outcome.outcome, Implication::Confirmed);
        }
    }

    #[test]
    fn designated_conditions() {
        let s = chain3().with_designated(1).unwrap();
        for c in [11, 12, 13] {
            assert!(check(&s, c).unwrap().is_pass());
        }
        let e = example1().with_designated(9).unwrap();
        let w = check(&e, 11).unwrap();
        let x = w.witness().unwrap().get_elem("x").unwrap();
        let p = e.mul(9, x);
        assert!(e.poset.lt(0, p) && e.poset.lt(p, 9));
        let e0 = example1().with_designated(0).unwrap();
        assert_eq!(check(&e0, 12).unwrap().witness().unwrap().get_elem("x"), Some(1));
        assert_eq!(e0.imp(1, 0), 8);
        // designated top: nothing above it
        assert!(check(&example1().with_designated(9).unwrap(), 12).unwrap().is_pass());
        let t = two().with_designated(1).unwrap();
        assert!(check(&t, 11).unwrap().is_pass());
    }
}
