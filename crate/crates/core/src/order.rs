//! Finite posets, cones, distributivity and antitone involutions.
//!
//! A [`Poset`] stores, for every element, the bit set of elements above it and
//! the bit set of elements below it, so every cone computation is a handful of
//! word-wide intersections.

use std::collections::HashMap;

use crate::error::{Error, RelationViolation, Result};
use crate::set::{ElementSet, MAX_ELEMENTS};
use crate::verdict::Verdict;

/// Carrier index. Display names live on the owning [`Poset`].
pub type Element = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    index: HashMap<String, Element>,
    up: Vec<ElementSet>,
    down: Vec<ElementSet>,
}

fn check_names(names: &[String]) -> Result<HashMap<String, Element>> {
    if names.is_empty() {
        return Err(Error::Invalid("a poset needs at least one element".into()));
    }
    if names.len() > MAX_ELEMENTS {
        return Err(Error::CarrierTooLarge(names.len()));
    }
    let mut index = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if name.is_empty() {
            return Err(Error::Invalid(format!("element {i} has an empty name")));
        }
        if index.insert(name.clone(), i).is_some() {
            return Err(Error::Invalid(format!("duplicate element name `{name}`")));
        }
    }
    Ok(index)
}

impl Poset {
    /// Validates a full `leq` matrix, naming the first violated law.
    pub fn from_matrix(names: Vec<String>, leq: &[Vec<bool>]) -> Result<Poset> {
        let index = check_names(&names)?;
        let n = names.len();
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(Error::Invalid(format!("order matrix must be {n}x{n}")));
        }
        for x in 0..n {
            if !leq[x][x] {
                return Err(Error::Relation(RelationViolation::NotReflexive { x: names[x].clone() }));
            }
        }
        for x in 0..n {
            for y in 0..n {
                if x != y && leq[x][y] && leq[y][x] {
                    return Err(Error::Relation(RelationViolation::NotAntisymmetric {
                        x: names[x].clone(),
                        y: names[y].clone(),
                    }));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if leq[x][y] && leq[y][z] && !leq[x][z] {
                        return Err(Error::Relation(RelationViolation::NotTransitive {
                            x: names[x].clone(),
                            y: names[y].clone(),
                            z: names[z].clone(),
                        }));
                    }
                }
            }
        }
        let up: Vec<ElementSet> =
            (0..n).map(|x| (0..n).filter(|&y| leq[x][y]).collect()).collect();
        Ok(Self::from_up_sets(names, index, up))
    }

    /// Builds the reflexive-transitive closure of `pairs` (covers or any
    /// generating relation) and rejects cycles.
    pub fn from_pairs(names: Vec<String>, pairs: &[(Element, Element)]) -> Result<Poset> {
        let index = check_names(&names)?;
        let n = names.len();
        let mut up: Vec<ElementSet> = (0..n).map(ElementSet::singleton).collect();
        for &(x, y) in pairs {
            for i in [x, y] {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, size: n });
                }
            }
            up[x].insert(y);
        }
        // Warshall over bit rows.
        for k in 0..n {
            for x in 0..n {
                if up[x].contains(k) {
                    let row = up[k];
                    up[x] |= row;
                }
            }
        }
        for x in 0..n {
            for y in (up[x] - ElementSet::singleton(x)).iter() {
                if up[y].contains(x) {
                    let (x, y) = (x.min(y), x.max(y));
                    return Err(Error::Relation(RelationViolation::NotAntisymmetric {
                        x: names[x].clone(),
                        y: names[y].clone(),
                    }));
                }
            }
        }
        Ok(Self::from_up_sets(names, index, up))
    }

    fn from_up_sets(names: Vec<String>, index: HashMap<String, Element>, up: Vec<ElementSet>) -> Poset {
        let n = names.len();
        let down = (0..n).map(|y| (0..n).filter(|&x| up[x].contains(y)).collect()).collect();
        Poset { names, index, up, down }
    }

    /// Trusted constructor for relations already known to be partial orders.
    pub(crate) fn from_valid_up_sets(names: Vec<String>, up: Vec<ElementSet>) -> Poset {
        let index = names.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        Self::from_up_sets(names, index, up)
    }

    /// The chain `names[0] < names[1] < ...`.
    pub fn chain<S: AsRef<str>>(names: &[S]) -> Result<Poset> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let pairs: Vec<_> = (1..names.len()).map(|i| (i - 1, i)).collect();
        Poset::from_pairs(names, &pairs)
    }

    pub fn antichain<S: AsRef<str>>(names: &[S]) -> Result<Poset> {
        Poset::from_pairs(names.iter().map(|s| s.as_ref().to_string()).collect(), &[])
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn carrier(&self) -> ElementSet {
        ElementSet::full(self.size())
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: Element) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<Element> {
        self.index.get(name).copied()
    }

    pub fn check_index(&self, x: Element) -> Result<Element> {
        if x < self.size() {
            Ok(x)
        } else {
            Err(Error::IndexOutOfRange { index: x, size: self.size() })
        }
    }

    #[inline]
    pub fn leq(&self, x: Element, y: Element) -> bool {
        self.up[x].contains(y)
    }

    pub fn try_leq(&self, x: Element, y: Element) -> Result<bool> {
        Ok(self.leq(self.check_index(x)?, self.check_index(y)?))
    }

    #[inline]
    pub fn lt(&self, x: Element, y: Element) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: Element, y: Element) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Principal up-set of `x`.
    pub fn up(&self, x: Element) -> ElementSet {
        self.up[x]
    }

    /// Principal down-set of `x`.
    pub fn down(&self, x: Element) -> ElementSet {
        self.down[x]
    }

    /// `L(A)`: elements below every member of `a`. `L(∅)` is the whole carrier.
    pub fn lower_cone(&self, a: ElementSet) -> ElementSet {
        a.iter().fold(self.carrier(), |acc, y| acc & self.down[y])
    }

    /// `U(A)`: elements above every member of `a`. `U(∅)` is the whole carrier.
    pub fn upper_cone(&self, a: ElementSet) -> ElementSet {
        a.iter().fold(self.carrier(), |acc, y| acc & self.up[y])
    }

    /// `A ≤ B`; vacuously true when either side is empty.
    pub fn set_leq(&self, a: ElementSet, b: ElementSet) -> bool {
        a.iter().all(|x| b.is_subset(self.up[x]))
    }

    pub fn maximal_elements(&self, a: ElementSet) -> ElementSet {
        a.iter().filter(|&x| (self.up[x] & a) == ElementSet::singleton(x)).collect()
    }

    pub fn minimal_elements(&self, a: ElementSet) -> ElementSet {
        a.iter().filter(|&x| (self.down[x] & a) == ElementSet::singleton(x)).collect()
    }

    pub fn bottom(&self) -> Option<Element> {
        (0..self.size()).find(|&x| self.up[x] == self.carrier())
    }

    pub fn top(&self) -> Option<Element> {
        (0..self.size()).find(|&x| self.down[x] == self.carrier())
    }

    pub fn bounds(&self) -> (Option<Element>, Option<Element>) {
        (self.bottom(), self.top())
    }

    /// Hasse covers `x ⋖ y`, in lexicographic index order.
    pub fn covers(&self) -> Vec<(Element, Element)> {
        let mut out = Vec::new();
        for x in 0..self.size() {
            let above = self.up[x] - ElementSet::singleton(x);
            for y in self.minimal_elements(above) {
                out.push((x, y));
            }
        }
        out
    }

    pub fn is_lattice(&self) -> Verdict<LatticeFailure> {
        let n = self.size();
        for x in 0..n {
            for y in x + 1..n {
                let pair = ElementSet::singleton(x).with(y);
                let mub = self.minimal_elements(self.upper_cone(pair));
                if mub.len() != 1 {
                    return Verdict::Fail(LatticeFailure { x, y, side: BoundSide::Upper, extremal: mub });
                }
                let mlb = self.maximal_elements(self.lower_cone(pair));
                if mlb.len() != 1 {
                    return Verdict::Fail(LatticeFailure { x, y, side: BoundSide::Lower, extremal: mlb });
                }
            }
        }
        Verdict::Pass
    }

    /// Evaluates both LU-identities over all triples.
    pub fn distributivity(&self) -> Distributivity {
        let n = self.size();
        let mut first = None;
        let mut second = None;
        for x in 0..n {
            for y in 0..n {
                let xy = ElementSet::singleton(x).with(y);
                let uxy = self.upper_cone(xy);
                let lxy = self.lower_cone(xy);
                for z in 0..n {
                    if first.is_none() {
                        let lhs = self.lower_cone(uxy.with(z));
                        let lxz = self.lower_cone(ElementSet::singleton(x).with(z));
                        let lyz = self.lower_cone(ElementSet::singleton(y).with(z));
                        let rhs = self.lower_cone(self.upper_cone(lxz | lyz));
                        if lhs != rhs {
                            first = Some((x, y, z));
                        }
                    }
                    if second.is_none() {
                        let lhs = self.upper_cone(lxy.with(z));
                        let uxz = self.upper_cone(ElementSet::singleton(x).with(z));
                        let uyz = self.upper_cone(ElementSet::singleton(y).with(z));
                        let rhs = self.upper_cone(self.lower_cone(uxz | uyz));
                        if lhs != rhs {
                            second = Some((x, y, z));
                        }
                    }
                }
            }
        }
        Distributivity {
            lower_identity: Verdict::from_option(first),
            upper_identity: Verdict::from_option(second),
        }
    }

    /// Distributivity by the `L(U(x,y),z) = LU(L(x,z),L(y,z))` identity.
    pub fn is_distributive(&self) -> Verdict<(Element, Element, Element)> {
        self.distributivity().lower_identity
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundSide {
    Upper,
    Lower,
}

/// A pair without a join (`side = Upper`) or meet, with its minimal upper
/// (maximal lower) bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeFailure {
    pub x: Element,
    pub y: Element,
    pub side: BoundSide,
    pub extremal: ElementSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distributivity {
    pub lower_identity: Verdict<(Element, Element, Element)>,
    pub upper_identity: Verdict<(Element, Element, Element)>,
}

impl Distributivity {
    pub fn agree(&self) -> bool {
        self.lower_identity.is_pass() == self.upper_identity.is_pass()
    }
}

/// A self-map of a carrier, used as the unary `'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Involution {
    map: Vec<Element>,
}

impl Involution {
    pub fn new(map: Vec<Element>) -> Result<Involution> {
        let n = map.len();
        if let Some(&bad) = map.iter().find(|&&y| y >= n) {
            return Err(Error::IndexOutOfRange { index: bad, size: n });
        }
        Ok(Involution { map })
    }

    pub fn identity(n: usize) -> Involution {
        Involution { map: (0..n).collect() }
    }

    pub fn apply(&self, x: Element) -> Element {
        self.map[x]
    }

    pub fn as_slice(&self) -> &[Element] {
        &self.map
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InvolutionFailure {
    WrongSize { expected: usize, found: usize },
    NotInvolutive { x: Element },
    NotAntitone { x: Element, y: Element },
}

pub fn is_antitone_involution(p: &Poset, inv: &Involution) -> Verdict<InvolutionFailure> {
    let n = p.size();
    if inv.len() != n {
        return Verdict::Fail(InvolutionFailure::WrongSize { expected: n, found: inv.len() });
    }
    if let Some(x) = (0..n).find(|&x| inv.apply(inv.apply(x)) != x) {
        return Verdict::Fail(InvolutionFailure::NotInvolutive { x });
    }
    for x in 0..n {
        for y in p.up(x) {
            if !p.leq(inv.apply(y), inv.apply(x)) {
                return Verdict::Fail(InvolutionFailure::NotAntitone { x, y });
            }
        }
    }
    Verdict::Pass
}

/// `L(x,x') ≤ U(y,y')` for all `x, y`. A map that is not an antitone
/// involution is reported as `Err`, separately from a failed normality pair.
pub fn is_pseudo_kleene(
    p: &Poset,
    inv: &Involution,
) -> std::result::Result<Verdict<(Element, Element)>, InvolutionFailure> {
    if let Verdict::Fail(f) = is_antitone_involution(p, inv) {
        return Err(f);
    }
    let n = p.size();
    let lows: Vec<_> = (0..n)
        .map(|x| p.lower_cone(ElementSet::singleton(x).with(inv.apply(x))))
        .collect();
    let ups: Vec<_> = (0..n)
        .map(|y| p.upper_cone(ElementSet::singleton(y).with(inv.apply(y))))
        .collect();
    for (x, &low) in lows.iter().enumerate() {
        for (y, &up) in ups.iter().enumerate() {
            if !p.set_leq(low, up) {
                return Ok(Verdict::Fail((x, y)));
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Distributive and pseudo-Kleene.
pub fn is_kleene(p: &Poset, inv: &Involution) -> bool {
    matches!(is_pseudo_kleene(p, inv), Ok(Verdict::Pass)) && p.is_distributive().is_pass()
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn names(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    pub fn from_covers(elems: &str, covers: &str) -> Poset {
        let names = names(elems);
        let idx = |s: &str| names.iter().position(|n| n == s).unwrap();
        let pairs: Vec<_> = covers
            .split(',')
            .map(|c| {
                let (x, y) = c.trim().split_once('<').unwrap();
                (idx(x.trim()), idx(y.trim()))
            })
            .collect();
        Poset::from_pairs(names.clone(), &pairs).unwrap()
    }

    pub const DRAWN_ELEMS: &str = "0 a b c d e f g h 1";
    /// Covers as drawn, including the vertical segment through `c` and `f`.
    pub const DRAWN_COVERS: &str =
        "0<a, a<b, a<c, a<d, b<e, b<f, c<e, c<f, c<g, d<f, d<g, e<h, f<h, g<h, h<1";

    pub fn drawn() -> Poset {
        from_covers(DRAWN_ELEMS, DRAWN_COVERS)
    }

    pub fn m3() -> Poset {
        from_covers("0 p q r 1", "0<p, 0<q, 0<r, p<1, q<1, r<1")
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    /// Reachability by depth-first search over the generating cover list.
    fn reach_oracle(elems: &str, covers: &str) -> Vec<Vec<bool>> {
        let names = names(elems);
        let n = names.len();
        let idx = |s: &str| names.iter().position(|m| m == s).unwrap();
        let mut adj = vec![vec![]; n];
        for c in covers.split(',') {
            let (x, y) = c.trim().split_once('<').unwrap();
            adj[idx(x.trim())].push(idx(y.trim()));
        }
        (0..n)
            .map(|s| {
                let mut seen = vec![false; n];
                let mut stack = vec![s];
                while let Some(v) = stack.pop() {
                    if !seen[v] {
                        seen[v] = true;
                        stack.extend(adj[v].iter().copied());
                    }
                }
                seen
            })
            .collect()
    }

    fn set(p: &Poset, members: &str) -> ElementSet {
        members.split_whitespace().map(|m| p.index_of(m).unwrap()).collect()
    }

    #[test]
    fn closure_matches_path_search() {
        let p = drawn();
        let oracle = reach_oracle(DRAWN_ELEMS, DRAWN_COVERS);
        for (x, row) in oracle.iter().enumerate() {
            for (y, &reach) in row.iter().enumerate() {
                assert_eq!(p.leq(x, y), reach, "{} {}", p.name(x), p.name(y));
            }
        }
        let i = |s| p.index_of(s).unwrap();
        assert!(p.leq(i("b"), i("e")));
        assert!(!p.leq(i("b"), i("g")));
        assert!((0..p.size()).all(|x| p.leq(x, x)));
        assert!(p.try_leq(0, 10).is_err());
    }

    #[test]
    fn cones_on_drawn_order() {
        let p = drawn();
        assert_eq!(p.lower_cone(set(&p, "b c")), set(&p, "0 a"));
        assert_eq!(p.upper_cone(set(&p, "b c")), set(&p, "e f h 1"));
        assert_eq!(p.lower_cone(ElementSet::EMPTY), p.carrier());
        assert_eq!(p.upper_cone(ElementSet::EMPTY), p.carrier());
        assert!(p.set_leq(set(&p, "0 a"), set(&p, "e f")));
        assert!(!p.set_leq(set(&p, "b c"), set(&p, "e g")));
        assert!(p.set_leq(ElementSet::EMPTY, set(&p, "b")));
        assert!(p.set_leq(set(&p, "b"), ElementSet::EMPTY));
        assert_eq!(p.maximal_elements(set(&p, "0 a b c")), set(&p, "b c"));
        assert_eq!(p.maximal_elements(set(&p, "g")), set(&p, "g"));
        assert_eq!(p.maximal_elements(ElementSet::EMPTY), ElementSet::EMPTY);
        assert_eq!(p.bounds(), (Some(0), Some(9)));
    }

    #[test]
    fn chain_cones_and_bounds() {
        let c = Poset::chain(&["0", "a", "1"]).unwrap();
        assert_eq!(c.lower_cone(ElementSet::singleton(1)), ElementSet::from_iter([0, 1]));
        assert!(c.is_lattice().is_pass());
        assert!(c.is_distributive().is_pass());
        let anti = Poset::antichain(&["p", "q"]).unwrap();
        assert_eq!(anti.bounds(), (None, None));
    }

    #[test]
    fn drawn_order_is_not_a_lattice() {
        let p = drawn();
        match p.is_lattice() {
            Verdict::Fail(f) => {
                assert_eq!((p.name(f.x), p.name(f.y)), ("b", "c"));
                assert_eq!(f.side, BoundSide::Upper);
                assert_eq!(f.extremal, set(&p, "e f"));
            }
            Verdict::Pass => panic!("expected a lattice failure"),
        }
    }

    /// Literal evaluation of the first LU-identity on named sets.
    fn lu_oracle(p: &Poset) -> bool {
        let n = p.size();
        let low = |s: &[usize]| -> Vec<usize> {
            (0..n).filter(|&x| s.iter().all(|&y| p.leq(x, y))).collect()
        };
        let upp = |s: &[usize]| -> Vec<usize> {
            (0..n).filter(|&x| s.iter().all(|&y| p.leq(y, x))).collect()
        };
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    let mut a = upp(&[x, y]);
                    a.push(z);
                    let mut b = low(&[x, z]);
                    b.extend(low(&[y, z]));
                    low(&a) == low(&upp(&b))
                })
            })
        })
    }

    #[test]
    fn distributivity_cases() {
        let m3 = m3();
        assert!(!lu_oracle(&m3));
        assert!(m3.is_distributive().is_fail());
        assert!(m3.distributivity().agree());
        let c = Poset::chain(&["0", "a", "1"]).unwrap();
        assert!(lu_oracle(&c) && c.is_distributive().is_pass());
        let one = Poset::chain(&["x"]).unwrap();
        assert!(one.is_distributive().is_pass());
        assert!(is_kleene(&one, &Involution::identity(1)));
    }

    #[test]
    fn involutions() {
        let anti = Poset::antichain(&["p", "q"]).unwrap();
        assert!(is_antitone_involution(&anti, &Involution::identity(2)).is_pass());
        let swap = Involution::new(vec![1, 0]).unwrap();
        assert_eq!(is_pseudo_kleene(&anti, &swap), Ok(Verdict::Pass));

        let two = Poset::chain(&["0", "1"]).unwrap();
        assert_eq!(
            is_antitone_involution(&two, &Involution::identity(2)),
            Verdict::Fail(InvolutionFailure::NotAntitone { x: 0, y: 1 })
        );
        assert!(is_pseudo_kleene(&two, &Involution::identity(2)).is_err());
        let not_inv = Involution::new(vec![1, 1]).unwrap();
        assert_eq!(
            is_antitone_involution(&two, &not_inv),
            Verdict::Fail(InvolutionFailure::NotInvolutive { x: 0 })
        );
        assert!(Involution::new(vec![0, 2]).is_err());

        let m3 = m3();
        // 0<->1 with the atoms permuted is antitone; M3 still fails distributivity.
        for atoms in [[1, 2, 3], [2, 1, 3], [1, 3, 2], [3, 2, 1]] {
            let inv = Involution::new(vec![4, atoms[0], atoms[1], atoms[2], 0]).unwrap();
            if is_antitone_involution(&m3, &inv).is_pass() {
                assert!(!is_kleene(&m3, &inv));
            }
        }
    }

    #[test]
    fn relation_validation_names_the_law() {
        let n = names("x y z");
        let mut m = vec![vec![false; 3]; 3];
        match Poset::from_matrix(n.clone(), &m) {
            Err(Error::Relation(RelationViolation::NotReflexive { x })) => assert_eq!(x, "x"),
            other => panic!("{other:?}"),
        }
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = true;
        }
        m[0][1] = true;
        m[1][2] = true;
        match Poset::from_matrix(n.clone(), &m) {
            Err(Error::Relation(v @ RelationViolation::NotTransitive { .. })) => {
                assert_eq!(v.law(), "transitivity")
            }
            other => panic!("{other:?}"),
        }
        m[1][0] = true;
        assert!(matches!(
            Poset::from_matrix(n.clone(), &m),
            Err(Error::Relation(RelationViolation::NotAntisymmetric { .. }))
        ));
        assert!(matches!(
            Poset::from_pairs(n, &[(0, 1), (1, 2), (2, 0)]),
            Err(Error::Relation(RelationViolation::NotAntisymmetric { .. }))
        ));
        assert!(Poset::from_pairs(names("x x"), &[]).is_err());
    }

    #[test]
    fn covers_round_trip() {
        let p = drawn();
        let rebuilt = Poset::from_pairs(p.names().to_vec(), &p.covers()).unwrap();
        assert_eq!(rebuilt, p);
        assert_eq!(p.covers().len(), 15);
    }
}
