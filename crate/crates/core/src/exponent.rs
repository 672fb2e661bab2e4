//! The growth exponent of `H` in a class: the largest size of a duplicable
//! essential independent collection of separations of `H`.

use std::collections::{HashSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classes::{Budgets, DupRule, GraphClass};
use crate::counting::CountMode;
use crate::duplication::{wedge_collection, WedgeResult};
use crate::error::{Error, Result};
use crate::graph::{canonical_form, to_graph6, CanonicalForm, Graph, VertexSet};
use crate::separations::{
    enumerate_essential_collections, IndependentCollection, Separation, Torso,
};

/// Largest number of non-edges for which subgraph mode of a non-monotone
/// class enumerates the spanning supergraphs of the pattern.
const MAX_LIFT_NON_EDGES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum DupStatus {
    DuplicableProven,
    /// `failing_k` is the smallest `k` whose wedge leaves the class, when the
    /// rule that refuted the collection produced one.
    NotDuplicable {
        failing_k: Option<usize>,
    },
    DuplicableEmpirical {
        tested_up_to: usize,
    },
}

impl DupStatus {
    pub fn is_duplicable(&self) -> bool {
        !matches!(self, DupStatus::NotDuplicable { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// The wedge the verdict rests on (the passing threshold wedge, or the
    /// first failing one).
    Wedge(WedgeResult),
    /// A torso outside the class; index 0 is the central torso.
    FailingTorso { index: usize, torso: Torso },
    /// An order-2 member whose boundary vertices are joined inside `A` by a
    /// path of forbidden length.
    ShortPath { member: usize, path: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DuplicabilityVerdict {
    pub status: DupStatus,
    pub rule: DupRule,
    pub witness: Option<Evidence>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedFormula,
    TorsoTest,
    WedgeThreshold,
    GenericScan,
    CycleRule,
    EndBlocks,
    /// The pattern has no copy in any member of the class.
    Vanishing,
}

impl Method {
    fn of(rule: DupRule) -> Method {
        match rule {
            DupRule::ClosedFormula => Method::ClosedFormula,
            DupRule::TorsoTest => Method::TorsoTest,
            DupRule::WedgeThreshold(_) => Method::WedgeThreshold,
            DupRule::GenericScan => Method::GenericScan,
            DupRule::CycleRule { .. } => Method::CycleRule,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollectionVerdict {
    pub flaps: Vec<Vec<usize>>,
    pub verdict: DuplicabilityVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentReport {
    pub exponent: usize,
    /// A collection of `image` (or of the pattern when `image` is `None`).
    pub witness: IndependentCollection,
    pub method: Method,
    pub mode: CountMode,
    pub verdicts: Vec<CollectionVerdict>,
    /// The homomorphic image or spanning supergraph the witness lives in.
    pub image: Option<Graph>,
    /// Membership of the witness wedge at `k = 3`; `None` if not rechecked.
    pub recheck_k3: Option<bool>,
    /// Some verdict behind the exponent comes from a bounded scan.
    pub heuristic: bool,
}

#[derive(Serialize)]
struct VerdictJson<'a> {
    flaps: &'a [Vec<usize>],
    #[serde(flatten)]
    status: &'a DupStatus,
    rule: String,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    exponent: usize,
    mode: CountMode,
    method: Method,
    witness: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    image: Option<String>,
    recheck_k3: Option<bool>,
    heuristic: bool,
    verdicts: Vec<VerdictJson<'a>>,
}

impl ExponentReport {
    pub fn to_json_value(&self) -> serde_json::Value {
        let verdicts = self
            .verdicts
            .iter()
            .map(|v| VerdictJson {
                flaps: &v.flaps,
                status: &v.verdict.status,
                rule: rule_tag(v.verdict.rule),
            })
            .collect();
        let json = ReportJson {
            exponent: self.exponent,
            mode: self.mode,
            method: self.method,
            witness: self.witness.canonical_flaps(),
            image: self.image.as_ref().map(to_graph6),
            recheck_k3: self.recheck_k3,
            heuristic: self.heuristic,
            verdicts,
        };
        serde_json::to_value(json).expect("report serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("report serializes")
    }
}

pub fn rule_tag(rule: DupRule) -> String {
    match rule {
        DupRule::ClosedFormula => "closed_formula".into(),
        DupRule::TorsoTest => "torso_test".into(),
        DupRule::WedgeThreshold(w) => format!("wedge_threshold({w})"),
        DupRule::GenericScan => "generic_scan".into(),
        DupRule::CycleRule { ell } => format!("cycle_rule({ell})"),
    }
}

/// Knobs of the exponent search. `None` fields take the class's defaults.
#[derive(Clone, Debug, Default)]
pub struct ExponentOptions {
    /// Largest `k` tried by the generic scan; default `2|V(H)| + 4`.
    pub k_max: Option<usize>,
    pub order_cap: Option<usize>,
    /// Forces a duplicability rule instead of the class's own.
    pub rule: Option<DupRule>,
    pub budgets: Budgets,
}

impl ExponentOptions {
    fn k_max_for(&self, h: &Graph) -> usize {
        self.k_max.unwrap_or(2 * h.n() + 4)
    }
}

pub fn duplicable(
    class: &GraphClass,
    h: &Graph,
    c: &IndependentCollection,
) -> Result<DuplicabilityVerdict> {
    duplicable_with(class, h, c, &ExponentOptions::default())
}

pub fn duplicable_with(
    class: &GraphClass,
    h: &Graph,
    c: &IndependentCollection,
    opts: &ExponentOptions,
) -> Result<DuplicabilityVerdict> {
    if c.host() != h {
        return Err(Error::InvalidCollection(
            "collection belongs to another graph".into(),
        ));
    }
    if let Some(msg) = c.validation_error() {
        return Err(Error::InvalidCollection(msg));
    }
    if !c.is_essential() {
        return Err(Error::InvalidCollection(
            "collection is not essential".into(),
        ));
    }
    if let Some(cap) = opts.order_cap.or(class.order_bound()) {
        if c.max_order() > cap {
            return Err(Error::InvalidCollection(format!(
                "collection has order {} above the cap {cap}",
                c.max_order()
            )));
        }
    }
    let rule = opts.rule.unwrap_or(class.dup_rule());
    decide(class, h, c, rule, opts)
}

fn decide(
    class: &GraphClass,
    h: &Graph,
    c: &IndependentCollection,
    rule: DupRule,
    opts: &ExponentOptions,
) -> Result<DuplicabilityVerdict> {
    let verdict = |status, witness| DuplicabilityVerdict {
        status,
        rule,
        witness,
    };
    let member = |k: usize| -> Result<(bool, WedgeResult)> {
        let w = wedge_collection(h, c, k)?;
        Ok((class.contains_with(&w.graph, &opts.budgets)?, w))
    };
    match rule {
        DupRule::TorsoTest => {
            for (index, torso) in c.torsos().into_iter().enumerate() {
                if !class.contains_with(&torso.graph, &opts.budgets)? {
                    return Ok(verdict(
                        DupStatus::NotDuplicable { failing_k: None },
                        Some(Evidence::FailingTorso { index, torso }),
                    ));
                }
            }
            Ok(verdict(DupStatus::DuplicableProven, None))
        }
        DupRule::CycleRule { ell } => {
            let planar = GraphClass::Planar;
            for (index, torso) in c.torsos().into_iter().enumerate() {
                if !planar.contains(&torso.graph)? {
                    return Ok(verdict(
                        DupStatus::NotDuplicable { failing_k: None },
                        Some(Evidence::FailingTorso { index, torso }),
                    ));
                }
            }
            for (i, s) in c.members().iter().enumerate() {
                if s.order() != 2 {
                    continue;
                }
                if let Some(path) = short_boundary_path(h, s, ell) {
                    return Ok(verdict(
                        DupStatus::NotDuplicable { failing_k: None },
                        Some(Evidence::ShortPath { member: i, path }),
                    ));
                }
            }
            Ok(verdict(DupStatus::DuplicableProven, None))
        }
        DupRule::WedgeThreshold(w) => {
            let (ok, wedge) = member(w)?;
            if ok {
                return Ok(verdict(
                    DupStatus::DuplicableProven,
                    Some(Evidence::Wedge(wedge)),
                ));
            }
            // Wedges embed into larger ones, so failure is upward closed in k.
            let (mut lo, mut hi, mut failing) = (1, w, wedge);
            while hi - lo > 1 {
                let mid = (lo + hi) / 2;
                let (ok, wm) = member(mid)?;
                if ok {
                    lo = mid;
                } else {
                    hi = mid;
                    failing = wm;
                }
            }
            Ok(verdict(
                DupStatus::NotDuplicable {
                    failing_k: Some(hi),
                },
                Some(Evidence::Wedge(failing)),
            ))
        }
        DupRule::GenericScan | DupRule::ClosedFormula => {
            let k_max = opts.k_max_for(h);
            for k in 1..=k_max {
                match member(k) {
                    Ok((true, _)) => {}
                    Ok((false, w)) => {
                        return Ok(verdict(
                            DupStatus::NotDuplicable { failing_k: Some(k) },
                            Some(Evidence::Wedge(w)),
                        ))
                    }
                    Err(e) if e.is_budget() && k > 2 => {
                        log::warn!("generic scan stopped at k = {k}: {e}");
                        return Ok(verdict(
                            DupStatus::DuplicableEmpirical {
                                tested_up_to: k - 1,
                            },
                            None,
                        ));
                    }
                    Err(e) => return Err(e),
                }
            }
            Ok(verdict(
                DupStatus::DuplicableEmpirical {
                    tested_up_to: k_max,
                },
                None,
            ))
        }
    }
}

/// A path of length in `[2, ell]` between the two boundary vertices of `s`
/// using only vertices of `A`.
fn short_boundary_path(h: &Graph, s: &Separation, ell: usize) -> Option<Vec<usize>> {
    let ends = s.boundary().to_vec();
    let (u, v) = (ends[0], ends[1]);
    let mut path = vec![u];
    let mut on_path = VertexSet::new(h.n());
    on_path.insert(u);
    fn dfs(
        h: &Graph,
        a: &VertexSet,
        target: usize,
        ell: usize,
        path: &mut Vec<usize>,
        on_path: &mut VertexSet,
    ) -> bool {
        let x = *path.last().expect("path starts at u");
        let len = path.len() - 1;
        for &y in h.neighbors(x) {
            if !a.contains(y) || on_path.contains(y) {
                continue;
            }
            if y == target {
                if len + 1 >= 2 {
                    path.push(y);
                    return true;
                }
                continue;
            }
            // `y` is interior; the path needs at least one more edge.
            if len + 2 > ell {
                continue;
            }
            path.push(y);
            on_path.insert(y);
            if dfs(h, a, target, ell, path, on_path) {
                return true;
            }
            path.pop();
            on_path.remove(y);
        }
        false
    }
    dfs(h, &s.a, v, ell, &mut path, &mut on_path).then_some(path)
}

pub fn dup_exponent(class: &GraphClass, h: &Graph, mode: CountMode) -> Result<ExponentReport> {
    dup_exponent_with(class, h, mode, &ExponentOptions::default())
}

pub fn dup_exponent_with(
    class: &GraphClass,
    h: &Graph,
    mode: CountMode,
    opts: &ExponentOptions,
) -> Result<ExponentReport> {
    match mode {
        CountMode::Homomorphism => return hom_exponent_with(class, h, opts),
        CountMode::Subgraph if !class.is_monotone() => return lifted_exponent(class, h, opts),
        _ => {}
    }
    if !class.contains_with(h, &opts.budgets)? {
        return Err(Error::NotInClass(class.to_string()));
    }
    let rule = opts.rule.unwrap_or(class.dup_rule());
    if let (DupRule::ClosedFormula, GraphClass::Degenerate(d)) = (rule, class) {
        let mut r = exponent_degenerate(h, *d);
        r.mode = mode;
        return Ok(r);
    }
    search(class, h, mode, rule, opts)
}

fn search(
    class: &GraphClass,
    h: &Graph,
    mode: CountMode,
    rule: DupRule,
    opts: &ExponentOptions,
) -> Result<ExponentReport> {
    let cap = opts.order_cap.or(class.order_bound()).unwrap_or(h.n());
    let mut all = enumerate_essential_collections(h, cap)?;
    all.sort_by_cached_key(|c| (std::cmp::Reverse(c.len()), c.canonical_flaps()));
    let mut verdicts = Vec::new();
    let mut start = 0;
    let mut found: Option<(IndependentCollection, DuplicabilityVerdict)> = None;
    while start < all.len() {
        let size = all[start].len();
        let end = start + all[start..].iter().take_while(|c| c.len() == size).count();
        let level: Vec<Result<DuplicabilityVerdict>> = all[start..end]
            .par_iter()
            .map(|c| decide(class, h, c, rule, opts))
            .collect();
        for (c, v) in all[start..end].iter().zip(level) {
            let v = v?;
            if found.is_none() && v.status.is_duplicable() {
                found = Some((c.clone(), v.clone()));
            }
            verdicts.push(CollectionVerdict {
                flaps: c.canonical_flaps(),
                verdict: v,
            });
        }
        if found.is_some() {
            break;
        }
        start = end;
    }
    let (witness, verdict) = match found {
        Some(f) => f,
        None => (
            IndependentCollection::new(h.clone(), Vec::new()),
            DuplicabilityVerdict {
                status: DupStatus::DuplicableProven,
                rule,
                witness: None,
            },
        ),
    };
    let recheck_k3 = if verdict.status == DupStatus::DuplicableProven && !witness.is_empty() {
        recheck(class, h, &witness, opts)
    } else {
        None
    };
    Ok(ExponentReport {
        exponent: witness.len(),
        heuristic: class.is_heuristic()
            || matches!(verdict.status, DupStatus::DuplicableEmpirical { .. }),
        witness,
        method: Method::of(rule),
        mode,
        verdicts,
        image: None,
        recheck_k3,
    })
}

fn recheck(
    class: &GraphClass,
    h: &Graph,
    witness: &IndependentCollection,
    opts: &ExponentOptions,
) -> Option<bool> {
    let result =
        wedge_collection(h, witness, 3).and_then(|w| class.contains_with(&w.graph, &opts.budgets));
    match result {
        Ok(ok) => {
            if !ok {
                log::error!("witness wedge at k = 3 is not in {class}");
            }
            Some(ok)
        }
        Err(e) => {
            log::warn!("skipped the k = 3 recheck: {e}");
            None
        }
    }
}

fn vanishing(h: &Graph, mode: CountMode) -> ExponentReport {
    ExponentReport {
        exponent: 0,
        witness: IndependentCollection::new(h.clone(), Vec::new()),
        method: Method::Vanishing,
        mode,
        verdicts: Vec::new(),
        image: None,
        recheck_k3: None,
        heuristic: false,
    }
}

/// `α_d(H)`, witnessed by the single-vertex flaps of a maximum independent
/// set of vertices of degree at most `d`. A pattern that is not
/// `d`-degenerate has no copies at all and gets [`Method::Vanishing`].
pub fn exponent_degenerate(h: &Graph, d: usize) -> ExponentReport {
    if !h.is_degenerate(d) {
        return vanishing(h, CountMode::Subgraph);
    }
    let members = h
        .low_degree_independent_set(d)
        .into_iter()
        .map(|v| Separation::from_flap(h, &VertexSet::from_iter(h.n(), [v])))
        .collect();
    let witness = IndependentCollection::new(h.clone(), members);
    ExponentReport {
        exponent: witness.len(),
        witness,
        method: Method::ClosedFormula,
        mode: CountMode::Subgraph,
        verdicts: Vec::new(),
        image: None,
        recheck_k3: None,
        heuristic: false,
    }
}

/// The number of end-blocks, witnessed by each end-block minus its cut vertex.
pub fn exponent_outerplanar(h: &Graph) -> Result<ExponentReport> {
    if !crate::classes::is_outerplanar(h) {
        return Err(Error::NotInClass("outerplanar".into()));
    }
    let dec = h.blocks();
    let flaps: Vec<Vec<usize>> = dec
        .blocks
        .iter()
        .filter(|b| dec.is_end_block(b))
        .map(|b| {
            b.vertices
                .iter()
                .copied()
                .filter(|&v| !dec.cut_vertices.contains(v))
                .collect()
        })
        .collect();
    let witness = IndependentCollection::from_flaps(h, &flaps)?;
    debug_assert_eq!(witness.len(), h.end_block_count());
    Ok(ExponentReport {
        exponent: witness.len(),
        witness,
        method: Method::EndBlocks,
        mode: CountMode::Subgraph,
        verdicts: Vec::new(),
        image: None,
        recheck_k3: None,
        heuristic: false,
    })
}

/// All homomorphic images of `H` up to isomorphism, `H` itself first, by
/// repeatedly identifying non-adjacent pairs.
pub fn homomorphic_images(h: &Graph) -> Vec<Graph> {
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::from([h.clone()]);
    seen.insert(canonical_form(h));
    while let Some(g) = queue.pop_front() {
        let n = g.n();
        for v in 1..n {
            for u in 0..v {
                if g.has_edge(u, v) {
                    continue;
                }
                let q = identify(&g, u, v);
                if seen.insert(canonical_form(&q)) {
                    queue.push_back(q);
                }
            }
        }
        out.push(g);
    }
    out
}

/// `g` with `v` merged into `u` (`u < v`, not adjacent).
fn identify(g: &Graph, u: usize, v: usize) -> Graph {
    let map = |x: usize| match x.cmp(&v) {
        std::cmp::Ordering::Less => x,
        std::cmp::Ordering::Equal => u,
        std::cmp::Ordering::Greater => x - 1,
    };
    let edges: Vec<(usize, usize)> = g.edges().map(|(a, b)| (map(a), map(b))).collect();
    Graph::build(g.n() - 1, &edges)
        .expect("identifying non-adjacent vertices keeps the graph simple")
}

pub fn hom_exponent(class: &GraphClass, h: &Graph) -> Result<ExponentReport> {
    hom_exponent_with(class, h, &ExponentOptions::default())
}

/// Maximum subgraph-mode exponent over the homomorphic images of `H` that
/// lie in the class.
pub fn hom_exponent_with(
    class: &GraphClass,
    h: &Graph,
    opts: &ExponentOptions,
) -> Result<ExponentReport> {
    if !class.is_monotone() {
        return Err(Error::NotMonotone(format!(
            "no homomorphism exponent for the non-monotone class {class}"
        )));
    }
    let mut best: Option<ExponentReport> = None;
    for image in homomorphic_images(h) {
        if !class.contains_with(&image, &opts.budgets)? {
            continue;
        }
        let mut r = dup_exponent_with(class, &image, CountMode::Subgraph, opts)?;
        if best.as_ref().is_none_or(|b| r.exponent > b.exponent) {
            r.image = Some(image);
            best = Some(r);
        }
    }
    let mut r = best.unwrap_or_else(|| vanishing(h, CountMode::Homomorphism));
    r.mode = CountMode::Homomorphism;
    Ok(r)
}

/// Subgraph mode in a hereditary class that is not monotone: a copy of `H`
/// is an induced copy of some spanning supergraph of `H`, so the exponent is
/// the largest induced exponent among those supergraphs in the class.
fn lifted_exponent(
    class: &GraphClass,
    h: &Graph,
    opts: &ExponentOptions,
) -> Result<ExponentReport> {
    let n = h.n();
    let non_edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|v| (0..v).map(move |u| (u, v)))
        .filter(|&(u, v)| !h.has_edge(u, v))
        .collect();
    if non_edges.len() > MAX_LIFT_NON_EDGES {
        return Err(Error::TooLarge {
            what: "non-edges of a pattern lifted to supergraphs",
            max: MAX_LIFT_NON_EDGES,
            got: non_edges.len(),
        });
    }
    let mut seen = HashSet::new();
    let mut best: Option<ExponentReport> = None;
    for mask in 0u32..(1 << non_edges.len()) {
        let extra: Vec<(usize, usize)> = (0..non_edges.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| non_edges[i])
            .collect();
        let sup = h.with_edges(&extra);
        if !seen.insert(canonical_form(&sup)) || !class.contains_with(&sup, &opts.budgets)? {
            continue;
        }
        let mut r = dup_exponent_with(class, &sup, CountMode::Induced, opts)?;
        if best.as_ref().is_none_or(|b| r.exponent > b.exponent) {
            r.image = Some(sup);
            best = Some(r);
        }
    }
    let mut r = best.unwrap_or_else(|| vanishing(h, CountMode::Subgraph));
    r.mode = CountMode::Subgraph;
    Ok(r)
}

/// The family with `α_d < flap_d`: a clique `Z` on `d + 1` vertices, a
/// stable set `Y` of `d` vertices each adjacent to all of `Z` but one (no two
/// missing the same one), and a stable set `X` of `x` vertices with
/// `N(v) = Y`. Vertices: `Z = 0..=d`, `Y = d+1..=2d`, `X` after that.
pub fn degeneracy_gap_graph(d: usize, x: usize) -> Result<Graph> {
    if d < 2 || x == 0 {
        return Err(Error::Invalid(
            "the gap family needs d >= 2 and x >= 1".into(),
        ));
    }
    let mut edges = Vec::new();
    for a in 0..=d {
        for b in a + 1..=d {
            edges.push((a, b));
        }
    }
    for i in 0..d {
        let y = d + 1 + i;
        let missing = (i + 2) % (d + 1);
        edges.extend((0..=d).filter(|&z| z != missing).map(|z| (z, y)));
        edges.extend((0..x).map(|j| (y, 2 * d + 1 + j)));
    }
    Graph::build(2 * d + 1 + x, &edges)
}

/// Flaps `Z` and each `{v}` for `v ∈ X`: an independent collection of order
/// `d` and size `x + 1` in [`degeneracy_gap_graph`].
pub fn degeneracy_gap_flaps(d: usize, x: usize) -> Vec<Vec<usize>> {
    let mut flaps = vec![(0..=d).collect::<Vec<_>>()];
    flaps.extend((0..x).map(|j| vec![2 * d + 1 + j]));
    flaps
}
