//! The restricted twist `P_a(Q) = {(x,y) | L(x,y) ≤ a ≤ U(x,y)}` with the swap
//! involution, and the conditions under which the twist operators restrict to it.

use crate::error::Result;
use crate::order::{is_antitone_involution, is_pseudo_kleene, Element, Involution, Poset};
use crate::residuation::{self, ResStructure};
use crate::set::ElementSet;
use crate::twist::{check_operator_residuated, pair_namer, OperatorReport, OperatorStructure, OperatorTable, OperatorTwist, Pair};
use crate::verdict::{Verdict, Witness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaPoset {
    pub base: Poset,
    pub a: Element,
    /// Carrier pairs in lexicographic index order.
    pub pairs: Vec<Pair>,
    pub poset: Poset,
    pub involution: Involution,
    lookup: Vec<Option<Element>>,
}

impl PaPoset {
    pub fn index(&self, (x, y): Pair) -> Option<Element> {
        self.lookup[x * self.base.size() + y]
    }

    pub fn contains(&self, p: Pair) -> bool {
        self.index(p).is_some()
    }

    pub fn pair(&self, i: Element) -> Pair {
        self.pairs[i]
    }

    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    /// Index of `(a,a)`.
    pub fn center(&self) -> Element {
        self.index((self.a, self.a)).expect("(a,a) is always in P_a")
    }
}

pub fn in_pa(p: &Poset, a: Element, (x, y): Pair) -> bool {
    let xy = ElementSet::singleton(x).with(y);
    let a_set = ElementSet::singleton(a);
    p.set_leq(p.lower_cone(xy), a_set) && p.set_leq(a_set, p.upper_cone(xy))
}

pub fn build_pa(p: &Poset, a: Element) -> Result<PaPoset> {
    p.check_index(a)?;
    let n = p.size();
    let pairs: Vec<Pair> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&q| in_pa(p, a, q))
        .collect();
    let mut lookup = vec![None; n * n];
    for (i, &(x, y)) in pairs.iter().enumerate() {
        lookup[x * n + y] = Some(i);
    }
    let namer = pair_namer(p);
    let names = pairs.iter().map(|&q| namer(q)).collect();
    let up = pairs
        .iter()
        .map(|&(x, y)| {
            pairs
                .iter()
                .enumerate()
                .filter(|(_, &(z, v))| p.leq(x, z) && p.leq(v, y))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    let poset = Poset::from_valid_up_sets(names, up);
    let swap = pairs
        .iter()
        .map(|&(x, y)| lookup[y * n + x].expect("P_a is closed under swapping coordinates"))
        .collect();
    let involution = Involution::new(swap)?;
    Ok(PaPoset { base: p.clone(), a, pairs, poset, involution, lookup })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaAssumptions {
    /// `a·a = a`.
    pub idempotent: Verdict,
    /// Every carrier pair is comparable with `(a,a)`.
    pub comparable: Verdict,
    /// Consequence: every base element is comparable with `a`.
    pub base_comparable: Verdict,
}

impl PaAssumptions {
    pub fn hold(&self) -> bool {
        self.idempotent.is_pass() && self.comparable.is_pass()
    }
}

pub fn check_pa_assumptions(pa: &PaPoset, s: &ResStructure) -> PaAssumptions {
    let a = pa.a;
    let aa = s.mul(a, a);
    let idempotent = if aa == a {
        Verdict::Pass
    } else {
        Verdict::Fail(Witness::new().elem("a", a).elem("a*a", aa))
    };
    let center = pa.center();
    let comparable = Verdict::from_option(
        (0..pa.size())
            .find(|&i| !pa.poset.comparable(i, center))
            .map(|i| Witness::new().text("pair", pa.poset.name(i))),
    );
    let base_comparable = Verdict::from_option(
        (0..s.size()).find(|&b| !s.poset.comparable(a, b)).map(|b| Witness::new().elem("b", b)),
    );
    PaAssumptions { idempotent, comparable, base_comparable }
}

fn with_designated(s: &ResStructure, a: Element) -> ResStructure {
    let mut t = s.clone();
    t.designated = Some(a);
    t
}

/// `a·x < a` implies `a·x = 0`.
pub fn check_condition_11(s: &ResStructure, a: Element) -> Result<Verdict> {
    s.poset.check_index(a)?;
    residuation::check(&with_designated(s, a), 11)
}

/// `a < x` implies `x → a = a`.
pub fn check_condition_12(s: &ResStructure, a: Element) -> Result<Verdict> {
    s.poset.check_index(a)?;
    residuation::check(&with_designated(s, a), 12)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Operator {
    Product,
    Implication,
}

impl Operator {
    pub fn name(self) -> &'static str {
        match self {
            Operator::Product => "odot",
            Operator::Implication => "oimp",
        }
    }
}

/// The eight sign patterns of `b, c, d, e` around `a` under which an
/// operator image can leave `P_a`, for `(b,c)` op `(d,e)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ProofCase {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
}

impl ProofCase {
    pub const ALL: [ProofCase; 8] =
        [ProofCase::A, ProofCase::B, ProofCase::C, ProofCase::D, ProofCase::E, ProofCase::F, ProofCase::G, ProofCase::H];

    pub fn label(self) -> char {
        (b'a' + self as u8) as char
    }

    /// The condition each pattern reduces to.
    pub fn condition(self) -> u8 {
        match self {
            ProofCase::A | ProofCase::B | ProofCase::C | ProofCase::H => 11,
            _ => 12,
        }
    }

    pub fn pattern(self) -> &'static str {
        match self {
            ProofCase::A => "b,d <= a <= c,e and b*e < a imply a <= b->d",
            ProofCase::B => "b,e <= a <= c,d and b*d < a imply a <= b->e",
            ProofCase::C => "c,d <= a <= b,e and b*d < a imply a <= d->c",
            ProofCase::D => "c,d <= a <= b,e and a < b*e imply b->d <= a",
            ProofCase::E => "c,d <= a <= b,e and a < b*e imply e->c <= a",
            ProofCase::F => "c,e <= a <= b,d and a < b*d imply b->e <= a",
            ProofCase::G => "c,e <= a <= b,d and a < b*d imply d->c <= a",
            ProofCase::H => "c,e <= a <= b,d and b*e < a imply a <= e->c",
        }
    }

    /// Whether `(b,c) op (d,e)`, formula member `member`, fits this pattern.
    fn matches(self, s: &ResStructure, a: Element, (b, c): Pair, (d, e): Pair, op: Operator, member: usize) -> bool {
        let p = &s.poset;
        let left_below = p.leq(b, a) && p.leq(a, c);
        let left_above = p.leq(a, b) && p.leq(c, a);
        let right_below = p.leq(d, a) && p.leq(a, e);
        let right_above = p.leq(a, d) && p.leq(e, a);
        let (bd, be) = (s.mul(b, d), s.mul(b, e));
        use Operator::*;
        match self {
            ProofCase::A => left_below && right_below && op == Implication && member == 0 && p.lt(be, a),
            ProofCase::B => left_below && right_above && op == Product && member == 0 && p.lt(bd, a),
            ProofCase::C => left_above && right_below && op == Product && member == 1 && p.lt(bd, a),
            ProofCase::D => left_above && right_below && op == Implication && member == 0 && p.lt(a, be),
            ProofCase::E => left_above && right_below && op == Implication && member == 1 && p.lt(a, be),
            ProofCase::F => left_above && right_above && op == Product && member == 0 && p.lt(a, bd),
            ProofCase::G => left_above && right_above && op == Product && member == 1 && p.lt(a, bd),
            ProofCase::H => left_above && right_above && op == Implication && member == 1 && p.lt(be, a),
        }
    }
}

/// An operator image member lying outside `P_a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Escape {
    pub left: Pair,
    pub right: Pair,
    pub op: Operator,
    pub member: Pair,
    pub case: Option<ProofCase>,
}

impl Escape {
    pub fn witness(&self, base: &Poset) -> Witness {
        let ln = |q: Pair| crate::twist::long_pair_name(base, q);
        let mut w = Witness::new()
            .text("left", ln(self.left))
            .text("right", ln(self.right))
            .text("op", self.op.name())
            .text("member", ln(self.member));
        match self.case {
            Some(c) => {
                w = w.text("case", format!("({})", c.label())).text("condition", format!("({})", c.condition()))
            }
            None => w = w.text("case", "unclassified"),
        }
        w
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub escapes: Vec<Escape>,
}

impl ClosureReport {
    pub fn closed(&self) -> bool {
        self.escapes.is_empty()
    }

    pub fn first(&self) -> Option<&Escape> {
        self.escapes.first()
    }
}

/// Result of a check that only applies under the idempotence and
/// comparability hypotheses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gated<T> {
    AssumptionFail(PaAssumptions),
    Checked(T),
}

impl<T> Gated<T> {
    pub fn checked(self) -> Option<T> {
        match self {
            Gated::Checked(t) => Some(t),
            Gated::AssumptionFail(_) => None,
        }
    }
}

fn closure_report(pa: &PaPoset, ot: &OperatorTwist) -> ClosureReport {
    let s = &ot.base;
    let mut escapes = Vec::new();
    for &l in &pa.pairs {
        for &r in &pa.pairs {
            for (op, members) in [(Operator::Product, ot.product(l, r)), (Operator::Implication, ot.implication(l, r))] {
                let mut seen: Vec<Pair> = Vec::new();
                let mut sorted = members;
                sorted.sort_unstable();
                for m in sorted {
                    if pa.contains(m) || seen.contains(&m) {
                        continue;
                    }
                    seen.push(m);
                    let case = ProofCase::ALL.into_iter().find(|c| {
                        (0..2).any(|k| members[k] == m && c.matches(s, pa.a, l, r, op, k))
                    });
                    escapes.push(Escape { left: l, right: r, op, member: m, case });
                }
            }
        }
    }
    ClosureReport { escapes }
}

/// Tests that every operator image of carrier pairs stays in the carrier,
/// mapping each escape onto its sign pattern.
pub fn check_pa_closure(pa: &PaPoset, s: &ResStructure) -> Result<Gated<ClosureReport>> {
    let assumptions = check_pa_assumptions(pa, s);
    if !assumptions.hold() {
        return Ok(Gated::AssumptionFail(assumptions));
    }
    let ot = OperatorTwist::new(s)?;
    Ok(Gated::Checked(closure_report(pa, &ot)))
}

/// The operators restricted to `P_a`, if every image stays inside.
pub fn restricted_structure(pa: &PaPoset, ot: &OperatorTwist) -> Option<OperatorStructure> {
    let n = pa.size();
    let image = |ps: [Pair; 2]| -> Option<ElementSet> { ps.iter().map(|&q| pa.index(q)).collect::<Option<ElementSet>>() };
    let mut odot = Vec::with_capacity(n * n);
    let mut oimp = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let (l, r) = (pa.pair(i), pa.pair(j));
            odot.push(image(ot.product(l, r))?);
            oimp.push(image(ot.implication(l, r))?);
        }
    }
    Some(OperatorStructure {
        poset: pa.poset.clone(),
        odot: OperatorTable::new(n, odot).ok()?,
        oimp: OperatorTable::new(n, oimp).ok()?,
        zero: pa.index(ot.zero())?,
        one: pa.index(ot.one())?,
    })
}

/// `(P_a, ≤, ')` is pseudo-Kleene.
pub fn pa_pseudo_kleene(pa: &PaPoset) -> Verdict {
    match is_pseudo_kleene(&pa.poset, &pa.involution) {
        Ok(Verdict::Pass) => Verdict::Pass,
        Ok(Verdict::Fail((x, y))) => Verdict::Fail(Witness::new().elem("x", x).elem("y", y)),
        Err(f) => Verdict::Fail(Witness::new().text("involution", format!("{f:?}"))),
    }
}

/// Pseudo-Kleene and distributive.
pub fn pa_kleene(pa: &PaPoset) -> Verdict {
    match pa_pseudo_kleene(pa) {
        Verdict::Pass => pa
            .poset
            .is_distributive()
            .map(|(x, y, z)| Witness::new().elem("x", x).elem("y", y).elem("z", z)),
        fail => fail,
    }
}

/// `x ↦ (x,a)` lands in `P_a` and is an order embedding. Witnesses use base names.
pub fn pa_embedding(pa: &PaPoset) -> Verdict {
    let n = pa.base.size();
    if let Some(x) = (0..n).find(|&x| !pa.contains((x, pa.a))) {
        return Verdict::Fail(Witness::new().elem("x", x).text("reason", "not-in-carrier"));
    }
    for x in 0..n {
        for y in 0..n {
            let (i, j) = (pa.index((x, pa.a)).unwrap(), pa.index((y, pa.a)).unwrap());
            if pa.base.leq(x, y) != pa.poset.leq(i, j) {
                return Verdict::Fail(Witness::new().elem("x", x).elem("y", y));
            }
        }
    }
    Verdict::Pass
}

/// `(x,y)' ∈ (x,y) ⇒ (0,1)` for every carrier pair.
pub fn involution_membership(pa: &PaPoset, ot: &OperatorTwist) -> Verdict {
    let bottom = ot.zero();
    for &(x, y) in &pa.pairs {
        if !ot.implication((x, y), bottom).contains(&(y, x)) {
            return Verdict::Fail(Witness::new().text("pair", crate::twist::long_pair_name(&pa.base, (x, y))));
        }
    }
    Verdict::Pass
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedReport {
    pub assumptions: PaAssumptions,
    pub c11: Verdict,
    pub c12: Verdict,
    pub closure: ClosureReport,
    /// Audit of the restricted operators; absent when they are not closed.
    pub operator: Option<OperatorReport>,
    pub pseudo_kleene: Verdict,
    pub kleene: Verdict,
    pub embedding: Verdict,
    pub involution_membership: Verdict,
}

impl RestrictedReport {
    pub fn conditions_hold(&self) -> bool {
        self.c11.is_pass() && self.c12.is_pass()
    }

    pub fn operator_residuated(&self) -> bool {
        self.closure.closed() && self.operator.as_ref().is_some_and(OperatorReport::all_pass)
    }

    /// `(11) ∧ (12)` iff the restriction is an operator residuated poset.
    pub fn biconditional(&self) -> bool {
        self.conditions_hold() == self.operator_residuated()
    }

    /// Closure and the full operator audit agree.
    pub fn closure_agrees_with_audit(&self) -> bool {
        self.closure.closed() == self.operator_residuated()
    }
}

/// Evaluates all four claims about `P_a` for a bounded commutative residuated
/// monoid, refusing a verdict when the hypotheses on `a` fail.
pub fn check_restricted_twist(pa: &PaPoset, s: &ResStructure) -> Result<Gated<RestrictedReport>> {
    let assumptions = check_pa_assumptions(pa, s);
    if !assumptions.hold() {
        return Ok(Gated::AssumptionFail(assumptions));
    }
    let ot = OperatorTwist::new(s)?;
    let closure = closure_report(pa, &ot);
    let operator = restricted_structure(pa, &ot).map(|os| check_operator_residuated(&os));
    debug_assert!(is_antitone_involution(&pa.poset, &pa.involution).is_pass());
    Ok(Gated::Checked(RestrictedReport {
        c11: check_condition_11(&ot.base, pa.a)?,
        c12: check_condition_12(&ot.base, pa.a)?,
        assumptions,
        closure,
        operator,
        pseudo_kleene: pa_pseudo_kleene(pa),
        kleene: pa_kleene(pa),
        embedding: pa_embedding(pa),
        involution_membership: involution_membership(pa, &ot),
    }))
}
