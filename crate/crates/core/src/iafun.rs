//! Inverse ambiguous functions on finite groups: bijections `f` with
//! `f(f(x)) = x^-1`.
//!
//! A finite group admits one iff `|G - S(G)|` is a multiple of 4, where
//! `S(G)` is the set of elements of order 1 or 2. [`construct`] builds a
//! witness whenever that holds; [`verify`] checks an arbitrary table;
//! [`brute_force_exists`] answers the existence question by search alone and
//! serves as an independent oracle for [`decide_existence`].

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use serde::Serialize;
use thiserror::Error;

use crate::groups::{ElementId, GroupError, GroupHandle, GroupKind};

/// Largest order accepted by [`brute_force_exists`].
pub const BRUTE_FORCE_MAX_ORDER: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IafunError {
    #[error("table has length {got}, group has order {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("witness group does not match the target factor")]
    HandleMismatch,
    #[error("H needs an even number of self-invertible elements ({even_s}) and a multiple of 4 others ({non_s_mult4})")]
    ConditionsNotMet { even_s: bool, non_s_mult4: bool },
    #[error("group of order {0} is too large for exhaustive search (max 24)")]
    OrderTooLarge(usize),
    #[error("group is not an additive vector space")]
    NotVectorSpace,
    #[error("the scalar field has no square root of -1")]
    NoSquareRootOfMinusOne,
    #[error("table is not inverse ambiguous: {0:?} fails at {1:?}")]
    NotInverseAmbiguous(Option<Law>, Option<ElementId>),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExistenceVerdict {
    pub exists: bool,
    pub s_count: u64,
    pub non_s_count: u64,
    pub reason: String,
}

/// The checks performed by [`verify`], in the order they are applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    /// `f` is a permutation of the elements.
    Bijection,
    /// `f(f(x)) = x^-1`.
    SquareIsInverse,
    /// `f(x^-1) = f(x)^-1`.
    InverseEquivariant,
    /// `f(S(G)) = S(G)`.
    PreservesSelfInvertible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub passed: bool,
    pub failed_law: Option<Law>,
    /// Least element violating `failed_law`.
    pub counterexample: Option<ElementId>,
    pub detail: Option<String>,
    pub order: usize,
}

/// A verified inverse ambiguous function, stored as its table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IAPermutation {
    group: GroupHandle,
    table: Vec<ElementId>,
}

impl IAPermutation {
    /// Accepts `table` only if it passes [`verify`].
    pub fn new(group: GroupHandle, table: Vec<ElementId>) -> Result<Self, IafunError> {
        let raw: Vec<usize> = table.iter().map(|e| e.0).collect();
        let report = verify(&group, &raw)?;
        if !report.passed {
            return Err(IafunError::NotInverseAmbiguous(report.failed_law, report.counterexample));
        }
        Ok(Self { group, table })
    }

    pub fn group(&self) -> &GroupHandle {
        &self.group
    }

    pub fn table(&self) -> &[ElementId] {
        &self.table
    }

    pub fn apply(&self, x: ElementId) -> ElementId {
        self.table[x.0]
    }

    pub fn indices(&self) -> Vec<usize> {
        self.table.iter().map(|e| e.0).collect()
    }
}

pub fn decide_existence(g: &GroupHandle) -> ExistenceVerdict {
    let s = g.self_invertible_set();
    let exists = s.non_s_count.is_multiple_of(4);
    let reason = format!(
        "|G| = {}, |S(G)| = {}, |G - S(G)| = {} {} a multiple of 4",
        g.order(),
        s.s_count,
        s.non_s_count,
        if exists { "is" } else { "is not" }
    );
    ExistenceVerdict {
        exists,
        s_count: s.s_count,
        non_s_count: s.non_s_count,
        reason,
    }
}

/// Greedy quadruples `{c, d, c^-1, d^-1}` over the non-self-invertible
/// elements, in canonical order. `None` when the count is not a multiple
/// of 4.
fn greedy_quadruples(g: &GroupHandle) -> Option<Vec<[usize; 4]>> {
    let n = g.order();
    let mut taken = vec![false; n];
    let mut out = Vec::new();
    let mut next = 0;
    loop {
        let Some(c) = (next..n).find(|&x| !taken[x] && g.inv_idx(x) != x) else {
            return Some(out);
        };
        next = c + 1;
        let ci = g.inv_idx(c);
        taken[c] = true;
        taken[ci] = true;
        let d = (next..n).find(|&x| !taken[x] && g.inv_idx(x) != x)?;
        let di = g.inv_idx(d);
        taken[d] = true;
        taken[di] = true;
        out.push([c, d, ci, di]);
    }
}

/// Identity on `S(G)`; on the rest, the 4-cycles `c -> d -> c^-1 -> d^-1 -> c`
/// over greedily chosen quadruples.
pub fn construct(g: &GroupHandle) -> Option<IAPermutation> {
    if !decide_existence(g).exists {
        return None;
    }
    let mut table: Vec<ElementId> = g.enumerate().collect();
    for [c, d, ci, di] in greedy_quadruples(g)? {
        table[c] = ElementId(d);
        table[d] = ElementId(ci);
        table[ci] = ElementId(di);
        table[di] = ElementId(c);
    }
    Some(IAPermutation {
        group: g.clone(),
        table,
    })
}

/// Checks a candidate table against every law in [`Law`], reporting the
/// first failing law and its least counterexample. Homomorphism is never
/// assumed.
pub fn verify(g: &GroupHandle, table: &[usize]) -> Result<WitnessReport, IafunError> {
    let n = g.order();
    if table.len() != n {
        return Err(IafunError::LengthMismatch {
            expected: n,
            got: table.len(),
        });
    }
    let fail = |law, x: usize, detail: String| WitnessReport {
        passed: false,
        failed_law: Some(law),
        counterexample: Some(ElementId(x)),
        detail: Some(detail),
        order: n,
    };

    let mut hits = vec![0u32; n];
    for &y in table {
        if y < n {
            hits[y] += 1;
        }
    }
    if let Some(x) = (0..n).find(|&x| table[x] >= n || hits[table[x]] != 1) {
        let detail = if table[x] >= n {
            format!("f({x}) = {} is not an element", table[x])
        } else {
            format!("f({x}) = {} is also the image of another element", table[x])
        };
        return Ok(fail(Law::Bijection, x, detail));
    }

    if let Some(x) = (0..n).find(|&x| table[table[x]] != g.inv_idx(x)) {
        let detail = format!("f(f({x})) = {} but {x}^-1 = {}", table[table[x]], g.inv_idx(x));
        return Ok(fail(Law::SquareIsInverse, x, detail));
    }

    if let Some(x) = (0..n).find(|&x| table[g.inv_idx(x)] != g.inv_idx(table[x])) {
        let detail = format!(
            "f({x}^-1) = {} but f({x})^-1 = {}",
            table[g.inv_idx(x)],
            g.inv_idx(table[x])
        );
        return Ok(fail(Law::InverseEquivariant, x, detail));
    }

    let self_inv = |x: usize| g.inv_idx(x) == x;
    if let Some(x) = (0..n).find(|&x| self_inv(x) != self_inv(table[x])) {
        let detail = format!("{x} and f({x}) = {} differ in self-invertibility", table[x]);
        return Ok(fail(Law::PreservesSelfInvertible, x, detail));
    }

    Ok(WitnessReport {
        passed: true,
        failed_law: None,
        counterexample: None,
        detail: None,
        order: n,
    })
}

/// Componentwise witness `(x, y) -> (f(x), h(y))` on `G x H`.
pub fn construct_product(fg: &IAPermutation, fh: &IAPermutation) -> Result<IAPermutation, IafunError> {
    let target = GroupHandle::product(vec![fg.group.clone(), fh.group.clone()])?;
    construct_product_on(&target, &[fg, fh])
}

/// Componentwise witness on an existing direct-product handle whose factors
/// must equal the witnesses' groups.
pub fn construct_product_on(
    target: &GroupHandle,
    parts: &[&IAPermutation],
) -> Result<IAPermutation, IafunError> {
    let factors = target.factors();
    if factors.len() != parts.len() || factors.iter().zip(parts).any(|(f, p)| *f != p.group) {
        return Err(IafunError::HandleMismatch);
    }
    let table = target
        .enumerate()
        .map(|x| {
            let images: Vec<ElementId> = target
                .split(x)
                .iter()
                .zip(parts)
                .map(|(c, p)| p.apply(*c))
                .collect();
            target.join(&images)
        })
        .collect();
    Ok(IAPermutation {
        group: target.clone(),
        table,
    })
}

/// The two hypotheses on `H` for the `G x H` construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Prop34Conditions {
    pub even_self_invertible: bool,
    pub non_self_invertible_mult4: bool,
}

impl Prop34Conditions {
    pub fn holds(&self) -> bool {
        self.even_self_invertible && self.non_self_invertible_mult4
    }
}

pub fn check_prop34(h: &GroupHandle) -> Prop34Conditions {
    let s = h.self_invertible_set();
    Prop34Conditions {
        even_self_invertible: s.s_count.is_multiple_of(2),
        non_self_invertible_mult4: s.non_s_count.is_multiple_of(4),
    }
}

/// Witness on `G x H` for any finite `G`, given the [`check_prop34`]
/// conditions on `H`.
///
/// `S(H)` is split into consecutive pairs `(a_i, b_i)` in canonical order and
/// the rest into greedy quadruples `{c_j, d_j, c_j^-1, d_j^-1}`. Then
///
/// ```text
/// (g, a_i)     -> (g, b_i)        (g, b_i)     -> (g^-1, a_i)
/// (g, c_j)     -> (g, d_j)        (g, d_j)     -> (g^-1, c_j^-1)
/// (g, c_j^-1)  -> (g, d_j^-1)     (g, d_j^-1)  -> (g^-1, c_j)
/// ```
pub fn construct_g_times_h(g: &GroupHandle, h: &GroupHandle) -> Result<IAPermutation, IafunError> {
    let cond = check_prop34(h);
    if !cond.holds() {
        return Err(IafunError::ConditionsNotMet {
            even_s: cond.even_self_invertible,
            non_s_mult4: cond.non_self_invertible_mult4,
        });
    }
    // rule[y] = (image in H, whether the G component is inverted)
    let mut rule = vec![(0usize, false); h.order()];
    let s = h.self_invertible_set().members;
    for pair in s.chunks(2) {
        let (a, b) = (pair[0].0, pair[1].0);
        rule[a] = (b, false);
        rule[b] = (a, true);
    }
    let quads = greedy_quadruples(h).expect("non-self-invertible count is a multiple of 4");
    for [c, d, ci, di] in quads {
        rule[c] = (d, false);
        rule[d] = (ci, true);
        rule[ci] = (di, false);
        rule[di] = (c, true);
    }
    let target = GroupHandle::product(vec![g.clone(), h.clone()])?;
    let table = target
        .enumerate()
        .map(|x| {
            let parts = target.split(x);
            let (gx, hx) = (parts[0], parts[1]);
            let (hy, invert) = rule[hx.0];
            let gy = if invert { ElementId(g.inv_idx(gx.0)) } else { gx };
            target.join(&[gy, ElementId(hy)])
        })
        .collect();
    Ok(IAPermutation { group: target, table })
}

/// `v -> alpha v` on `(F_q)^n`, where `alpha^2 = -1`.
pub fn scalar_witness(v: &GroupHandle) -> Result<IAPermutation, IafunError> {
    let GroupKind::VectorSpaceAdd { field, .. } = v.kind() else {
        return Err(IafunError::NotVectorSpace);
    };
    let alpha = field.sqrt_of_minus_one().ok_or(IafunError::NoSquareRootOfMinusOne)?;
    let table = v
        .enumerate()
        .map(|x| {
            let scaled: Vec<_> = v
                .vector_coords(x)
                .expect("vector space element")
                .iter()
                .map(|c| field.mul_raw(&alpha, c))
                .collect();
            v.vector_index(&scaled).expect("scaled vector stays in the space")
        })
        .collect();
    Ok(IAPermutation {
        group: v.clone(),
        table,
    })
}

/// Decides existence by backtracking over partial tables, using only the
/// functional equation and injectivity. Setting `f(x) = y` forces
/// `f(y) = x^-1`, `f(x^-1) = y^-1` and `f(y^-1) = x`.
pub fn brute_force_exists(g: &GroupHandle) -> Result<bool, IafunError> {
    let n = g.order();
    if n > BRUTE_FORCE_MAX_ORDER {
        return Err(IafunError::OrderTooLarge(n));
    }
    let inv: Vec<usize> = (0..n).map(|x| g.inv_idx(x)).collect();
    // Elements that are not their own inverse first: they constrain the
    // search most, so dead ends surface before any branching on the rest.
    let mut order: Vec<usize> = (0..n).filter(|&x| inv[x] != x).collect();
    order.extend((0..n).filter(|&x| inv[x] == x));
    let mut search = Search {
        inv,
        image: vec![None; n],
        preimage: vec![None; n],
        trail: Vec::new(),
    };
    Ok(search.run(&order, 0))
}

struct Search {
    inv: Vec<usize>,
    image: Vec<Option<usize>>,
    preimage: Vec<Option<usize>>,
    trail: Vec<usize>,
}

impl Search {
    fn run(&mut self, order: &[usize], pos: usize) -> bool {
        let Some(next) = order[pos..].iter().position(|&x| self.image[x].is_none()) else {
            return true;
        };
        let pos = pos + next;
        let x = order[pos];
        for y in 0..self.image.len() {
            let mark = self.trail.len();
            if self.assign_closure(x, y) && self.run(order, pos + 1) {
                return true;
            }
            self.undo(mark);
        }
        false
    }

    fn assign_closure(&mut self, x: usize, y: usize) -> bool {
        let (xi, yi) = (self.inv[x], self.inv[y]);
        self.assign(x, y) && self.assign(y, xi) && self.assign(xi, yi) && self.assign(yi, x)
    }

    fn assign(&mut self, from: usize, to: usize) -> bool {
        match (self.image[from], self.preimage[to]) {
            (Some(t), _) => t == to,
            (None, Some(_)) => false,
            (None, None) => {
                self.image[from] = Some(to);
                self.preimage[to] = Some(from);
                self.trail.push(from);
                true
            }
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let from = self.trail.pop().expect("trail above mark");
            let to = self.image[from].take().expect("assigned");
            self.preimage[to] = None;
        }
    }
}
