//! Structure of anchored collections of difference equalities.
//!
//! An anchored collection is a list of difference equalities that all involve
//! a fixed variable `x_i`. This module computes alignment relations,
//! certified indices, minimal implications and their boxes and blobs, the
//! path structure of 3-implications, the normalized collection `S'` whose
//! equations expose every certified index directly, and counts of implied
//! equalities avoiding the anchor.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::configuration::{independent, Configuration};
use crate::equality::DifferenceEquality;
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;

/// Alignment relation between two equalities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Alignment {
    /// Pairs `(i, j)` with opposite signs in both equalities.
    pub difference_at: Vec<(usize, usize)>,
    /// Pairs `(i, j)` with the same sign in both equalities.
    pub sum_at: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlignmentKind {
    None,
    Difference,
    Sum,
    Both,
}

impl Alignment {
    pub fn kind(&self) -> AlignmentKind {
        match (self.difference_at.is_empty(), self.sum_at.is_empty()) {
            (true, true) => AlignmentKind::None,
            (false, true) => AlignmentKind::Difference,
            (true, false) => AlignmentKind::Sum,
            (false, false) => AlignmentKind::Both,
        }
    }

    pub fn is_difference(&self) -> bool {
        !self.difference_at.is_empty()
    }

    pub fn is_sum(&self) -> bool {
        !self.sum_at.is_empty()
    }
}

/// Alignment of two nondegenerate equalities over the same `k`.
pub fn alignment(e1: &DifferenceEquality, e2: &DifferenceEquality) -> Result<Alignment> {
    for e in [e1, e2] {
        if e.is_degenerate() {
            return Err(Error::DegenerateInput(e.to_string()));
        }
    }
    Ok(alignment_unchecked(e1, e2))
}

pub(crate) fn alignment_unchecked(e1: &DifferenceEquality, e2: &DifferenceEquality) -> Alignment {
    let o2 = e2.opposite_pairs();
    let s2 = e2.same_sign_pairs();
    Alignment {
        difference_at: e1.opposite_pairs().into_iter().filter(|p| o2.contains(p)).collect(),
        sum_at: e1.same_sign_pairs().into_iter().filter(|p| s2.contains(p)).collect(),
    }
}

/// A collection of equalities that all involve the anchor variable.
#[derive(Debug, Clone)]
pub struct AnchoredCollection {
    k: usize,
    anchor: usize,
    equalities: Vec<DifferenceEquality>,
}

impl AnchoredCollection {
    /// Builds the collection, keeping the given order.
    pub fn new(k: usize, anchor: usize, equalities: Vec<DifferenceEquality>) -> Result<Self> {
        if anchor == 0 || anchor > k {
            return Err(Error::InvalidIndex { index: anchor, k });
        }
        let mut eqs = Vec::with_capacity(equalities.len());
        for e in equalities {
            let e = if e.k() == k { e } else { e.with_k(k)? };
            if !e.involves(anchor) {
                return Err(Error::AnchorMissing(e.to_string()));
            }
            eqs.push(e);
        }
        Ok(AnchoredCollection {
            k,
            anchor,
            equalities: eqs,
        })
    }

    pub fn from_quadruples(k: usize, anchor: usize, quads: &[[usize; 4]]) -> Result<Self> {
        let eqs = quads
            .iter()
            .map(|&q| DifferenceEquality::new(k, q))
            .collect::<Result<Vec<_>>>()?;
        Self::new(k, anchor, eqs)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn anchor(&self) -> usize {
        self.anchor
    }

    pub fn equalities(&self) -> &[DifferenceEquality] {
        &self.equalities
    }

    pub fn len(&self) -> usize {
        self.equalities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equalities.is_empty()
    }

    pub fn configuration(&self) -> Configuration {
        Configuration::new(self.k, self.equalities.clone()).expect("same k")
    }

    pub fn is_independent(&self) -> bool {
        independent(&self.equalities)
    }

    fn require_independent(&self) -> Result<()> {
        if self.is_independent() {
            Ok(())
        } else {
            Err(Error::NotIndependent)
        }
    }

    fn require_valid(&self, cfg: &Configuration) -> Result<()> {
        match cfg.validity_witness() {
            None => Ok(()),
            Some((a, b)) => Err(Error::InvalidParameter(format!(
                "collection is not valid: it implies x{a} - x{b} = 0"
            ))),
        }
    }

    /// Sub-collection on the given member indices.
    pub fn subset(&self, members: &[usize]) -> AnchoredCollection {
        AnchoredCollection {
            k: self.k,
            anchor: self.anchor,
            equalities: members.iter().map(|&m| self.equalities[m]).collect(),
        }
    }

    /// Variables appearing in the given members.
    pub fn variables_of(&self, members: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = members
            .iter()
            .flat_map(|&m| self.equalities[m].variables())
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Indices `j` such that some implied nondegenerate equality has `x_i` and
/// `x_j` with opposite signs.
pub fn certified_indices(s: &AnchoredCollection) -> Result<Vec<usize>> {
    let cfg = s.configuration();
    s.require_valid(&cfg)?;
    let i = s.anchor();
    let mut out: Vec<usize> = cfg
        .implied_on_support()
        .iter()
        .filter(|e| e.involves(i))
        .flat_map(|e| {
            let si = e.sign_of(i);
            e.variables().into_iter().filter(move |&j| j != i && e.sign_of(j) * si < 0)
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// A sub-collection minimally implying a difference equality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimalImplication {
    /// Indices into the collection, sorted.
    pub members: Vec<usize>,
    pub produced: DifferenceEquality,
    /// Coefficients expressing the produced content, aligned with `members`.
    #[serde(serialize_with = "crate::pointset::serialize_rationals")]
    pub coefficients: Vec<BigRational>,
}

/// Every minimal implication inside an independent collection.
///
/// In an independent collection each implied content has a unique expression,
/// and the members with nonzero coefficient form the unique minimal
/// sub-collection implying it. The list is sorted by members, then produced
/// equality.
pub fn minimal_implications(s: &AnchoredCollection) -> Result<Vec<MinimalImplication>> {
    s.require_independent()?;
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let cfg = s.configuration();
    let rows: Vec<Vec<i64>> = s.equalities().iter().map(|e| e.content()).collect();
    let m = RationalMatrix::from_int_rows(s.k(), &rows).transpose();
    let mut out = Vec::new();
    for e in cfg.implied_on_support() {
        let rhs: Vec<BigRational> = e.content().iter().map(|&x| BigRational::from_integer(x.into())).collect();
        let eps = m.solve(&rhs).ok_or_else(|| Error::Inconsistent(format!("{e} implied but not solvable")))?;
        let members: Vec<usize> = (0..eps.len()).filter(|&j| !eps[j].is_zero()).collect();
        let coefficients = members.iter().map(|&j| eps[j].clone()).collect();
        out.push(MinimalImplication {
            members,
            produced: e,
            coefficients,
        });
    }
    out.sort_by(|a, b| a.members.cmp(&b.members).then_with(|| a.produced.cmp(&b.produced)));
    Ok(out)
}

/// Minimal implications with `order` members whose produced equality involves
/// the anchor for odd orders and avoids it for even orders.
pub fn find_n_implications(s: &AnchoredCollection, order: usize) -> Result<Vec<MinimalImplication>> {
    let i = s.anchor();
    Ok(minimal_implications(s)?
        .into_iter()
        .filter(|mi| mi.members.len() == order && mi.produced.involves(i) == (order % 2 == 1))
        .collect())
}

/// A box: members minimally implying some equality that involves the anchor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImplicationBox {
    pub members: Vec<usize>,
    pub produced: Vec<DifferenceEquality>,
}

/// Boxes and the blobs formed by overlapping boxes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoxDecomposition {
    pub boxes: Vec<ImplicationBox>,
    /// Connected components of the box-overlap graph, each sorted, ordered by
    /// their smallest member.
    pub blobs: Vec<Vec<usize>>,
}

impl BoxDecomposition {
    pub fn blob_sizes(&self) -> Vec<usize> {
        self.blobs.iter().map(Vec::len).collect()
    }
}

pub fn decompose_boxes_blobs(s: &AnchoredCollection) -> Result<BoxDecomposition> {
    let i = s.anchor();
    let mut boxes: Vec<ImplicationBox> = Vec::new();
    for mi in minimal_implications(s)? {
        if !mi.produced.involves(i) {
            continue;
        }
        match boxes.iter_mut().find(|b| b.members == mi.members) {
            Some(b) => b.produced.push(mi.produced),
            None => boxes.push(ImplicationBox {
                members: mi.members,
                produced: vec![mi.produced],
            }),
        }
    }
    let n = s.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for b in &boxes {
        for w in b.members.windows(2) {
            let (a, c) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != c {
                parent[a.max(c)] = a.min(c);
            }
        }
    }
    let mut blobs: Vec<Vec<usize>> = Vec::new();
    let mut root_of: Vec<Option<usize>> = vec![None; n];
    for x in 0..n {
        let r = find(&mut parent, x);
        match root_of[r] {
            Some(b) => blobs[b].push(x),
            None => {
                root_of[r] = Some(blobs.len());
                blobs.push(vec![x]);
            }
        }
    }
    Ok(BoxDecomposition { boxes, blobs })
}

/// Difference-alignment graph of a 3-implication and its produced equality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlignmentPath {
    /// The three members followed by the produced equality.
    pub vertices: Vec<DifferenceEquality>,
    /// Edges `(u, v, (a, b))` between vertex positions, labelled by the first
    /// pair at which the endpoints are difference-aligned.
    pub edges: Vec<(usize, usize, (usize, usize))>,
    /// Vertex positions in path order, starting from the smaller endpoint.
    pub path: Vec<usize>,
}

impl AlignmentPath {
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|(a, b, _)| *a == v || *b == v).count()
    }
}

/// Builds the alignment graph on `members ∪ {produced}` and checks it is a
/// path on four vertices.
pub fn g3_graph(members: &[DifferenceEquality; 3], produced: &DifferenceEquality) -> Result<AlignmentPath> {
    let vertices = vec![members[0], members[1], members[2], *produced];
    let mut edges = Vec::new();
    for u in 0..4 {
        for v in u + 1..4 {
            let al = alignment_unchecked(&vertices[u], &vertices[v]);
            if let Some(&p) = al.difference_at.first() {
                edges.push((u, v, p));
            }
        }
    }
    let deg = |v: usize| edges.iter().filter(|(a, b, _)| *a == v || *b == v).count();
    if edges.len() != 3 {
        return Err(Error::NotAPath);
    }
    let ends: Vec<usize> = (0..4).filter(|&v| deg(v) == 1).collect();
    if ends.len() != 2 || (0..4).any(|v| deg(v) == 0 || deg(v) > 2) {
        return Err(Error::NotAPath);
    }
    let mut path = vec![ends[0]];
    let mut prev = usize::MAX;
    let mut cur = ends[0];
    while path.len() < 4 {
        let next = edges
            .iter()
            .filter_map(|&(a, b, _)| {
                if a == cur && b != prev {
                    Some(b)
                } else if b == cur && a != prev {
                    Some(a)
                } else {
                    None
                }
            })
            .next()
            .ok_or(Error::NotAPath)?;
        prev = cur;
        cur = next;
        path.push(cur);
    }
    Ok(AlignmentPath { vertices, edges, path })
}

/// Result of normalizing a collection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Normalized {
    pub equalities: Vec<DifferenceEquality>,
    /// One degree-2 vertex left out per 3-implication.
    pub dropped: Vec<DifferenceEquality>,
}

/// Replaces each 3-implication by three of the four equations on its path.
///
/// The dropped vertex is the degree-2 vertex nearest the produced equality:
/// the produced equality itself when it has degree 2, and otherwise its unique
/// neighbour. Members keep their positions; a kept produced equality follows
/// the last member of its 3-implication.
pub fn normalize_to_sprime(s: &AnchoredCollection) -> Result<Normalized> {
    let threes = find_n_implications(s, 3)?;
    for (a, x) in threes.iter().enumerate() {
        for y in &threes[a + 1..] {
            if x.members.iter().any(|m| y.members.contains(m)) {
                return Err(Error::NotTwoGood("3-implications overlap".into()));
            }
        }
    }
    let mut drop_member: Vec<Option<usize>> = Vec::new();
    let mut dropped = Vec::new();
    for t in &threes {
        let members = [s.equalities()[t.members[0]], s.equalities()[t.members[1]], s.equalities()[t.members[2]]];
        let g = g3_graph(&members, &t.produced)?;
        if g.degree(3) == 2 {
            drop_member.push(None);
            dropped.push(t.produced);
        } else {
            let (a, b, _) = *g
                .edges
                .iter()
                .find(|(a, b, _)| *a == 3 || *b == 3)
                .ok_or(Error::NotAPath)?;
            let nb = if a == 3 { b } else { a };
            drop_member.push(Some(t.members[nb]));
            dropped.push(members[nb]);
        }
    }
    let mut out = Vec::with_capacity(s.len());
    for (idx, e) in s.equalities().iter().enumerate() {
        let owner = threes.iter().position(|t| t.members.contains(&idx));
        match owner {
            None => out.push(*e),
            Some(o) => {
                if drop_member[o] != Some(idx) {
                    out.push(*e);
                }
                if threes[o].members.last() == Some(&idx) && drop_member[o].is_some() {
                    out.push(threes[o].produced);
                }
            }
        }
    }
    let certified = certified_indices(s)?;
    let read_off = opposite_sign_indices(&out, s.anchor());
    if certified != read_off {
        return Err(Error::Inconsistent(format!(
            "certified indices {certified:?} differ from those read off the normalized collection {read_off:?}"
        )));
    }
    Ok(Normalized {
        equalities: out,
        dropped,
    })
}

/// Indices `j` appearing with sign opposite to `x_i` in some listed equality.
pub fn opposite_sign_indices(eqs: &[DifferenceEquality], i: usize) -> Vec<usize> {
    let mut out: Vec<usize> = eqs
        .iter()
        .filter(|e| e.involves(i))
        .flat_map(|e| {
            let si = e.sign_of(i);
            e.variables().into_iter().filter(move |&j| e.sign_of(j) * si < 0)
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Number of implied nondegenerate equalities that avoid the anchor.
pub fn count_implied_not_involving(s: &AnchoredCollection) -> usize {
    let i = s.anchor();
    s.configuration()
        .implied_on_support()
        .iter()
        .filter(|e| !e.involves(i))
        .count()
}

/// Member pairs `(a, b)`, `a < b`, that are difference-aligned.
pub fn difference_aligned_pairs(eqs: &[DifferenceEquality]) -> Vec<(usize, usize)> {
    pairs_where(eqs, |al| al.is_difference())
}

/// Member pairs `(a, b)`, `a < b`, that are sum-aligned.
pub fn sum_aligned_pairs(eqs: &[DifferenceEquality]) -> Vec<(usize, usize)> {
    pairs_where(eqs, |al| al.is_sum())
}

fn pairs_where(eqs: &[DifferenceEquality], f: impl Fn(&Alignment) -> bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..eqs.len() {
        for b in a + 1..eqs.len() {
            if f(&alignment_unchecked(&eqs[a], &eqs[b])) {
                out.push((a, b));
            }
        }
    }
    out
}

/// Groups members by the variable sharing the anchor's sign.
pub fn stacks(s: &AnchoredCollection) -> Vec<Vec<usize>> {
    let i = s.anchor();
    let mut keys: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    for (idx, e) in s.equalities().iter().enumerate() {
        let si = e.sign_of(i);
        let key: Vec<usize> = e.variables().into_iter().filter(|&j| j != i && e.sign_of(j) == si).collect();
        match keys.iter_mut().find(|(k, _)| *k == key) {
            Some((_, v)) => v.push(idx),
            None => keys.push((key, vec![idx])),
        }
    }
    keys.into_iter().map(|(_, v)| v).collect()
}

/// Which bound on equalities avoiding the anchor applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AvoidingCase {
    /// No difference-aligned pair and more than one stack.
    NoDifferencePair,
    /// Exactly one difference-aligned pair.
    OneDifferencePair,
    /// Every pair sum-aligned.
    AllSumAligned,
    /// More than one difference-aligned pair; no bound applies.
    Unbounded,
}

pub fn avoiding_case(s: &AnchoredCollection) -> AvoidingCase {
    let eqs = s.equalities();
    let n = eqs.len();
    let diff = difference_aligned_pairs(eqs).len();
    let sum = sum_aligned_pairs(eqs).len();
    if diff == 0 && sum == n * n.saturating_sub(1) / 2 {
        AvoidingCase::AllSumAligned
    } else if diff == 0 {
        AvoidingCase::NoDifferencePair
    } else if diff == 1 {
        AvoidingCase::OneDifferencePair
    } else {
        AvoidingCase::Unbounded
    }
}

/// Upper bound on equalities avoiding the anchor for a collection of size `s`.
pub fn avoiding_bound(case: AvoidingCase, s: usize) -> Option<usize> {
    let c2 = |x: usize| x * x.saturating_sub(1) / 2;
    match case {
        AvoidingCase::NoDifferencePair => Some(c2(s.saturating_sub(1))),
        AvoidingCase::OneDifferencePair => Some(c2(s.saturating_sub(1)) + 1),
        AvoidingCase::AllSumAligned => Some(c2(s)),
        AvoidingCase::Unbounded => None,
    }
}

/// Whether all coefficients are `+1` or `-1`.
pub fn unit_coefficients(c: &[BigRational]) -> bool {
    c.iter().all(|x| x.abs() == BigRational::one())
}
