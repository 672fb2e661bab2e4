//! The catalog of graph classes: membership, separation-order caps and the
//! rule used to decide duplicability.

pub mod minor;
pub mod planarity;
pub mod width;

use std::fmt;
use std::str::FromStr;

use crate::counting::{Counter, MapKind, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::graph::{parse_graph6, to_graph6, Graph};

pub use minor::{
    find_minor_model, has_minor, has_shallow_kst_model, has_subdivision, is_r_adherent, Lengths,
};
pub use planarity::{is_outerplanar, is_planar};
pub use width::{pathwidth, pathwidth_at_most, treewidth, treewidth_at_most};

/// Search limits shared by the predicates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budgets {
    /// Partial maps explored by the counting oracle.
    pub count: u64,
    /// Nodes of the minor, subdivision and width searches.
    pub search: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            count: DEFAULT_BUDGET,
            search: 5_000_000,
        }
    }
}

/// A named pattern graph used by minor-free and subgraph-restricted classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    pub name: String,
    pub graph: Graph,
}

impl Pattern {
    /// `K5`, `K3,3`, `C4`, `P4` (path on 4 vertices), `petersen`, or `g6:<graph6>`.
    pub fn parse(s: &str) -> Result<Pattern> {
        let bad = || Error::Parse(format!("unknown pattern {s:?}"));
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let graph = if let Some(code) = s.strip_prefix("g6:") {
            parse_graph6(code)?
        } else if s == "petersen" {
            Graph::petersen()
        } else if let Some(rest) = s.strip_prefix('K') {
            match rest.split_once(',') {
                Some((a, b)) => Graph::complete_bipartite(num(a)?, num(b)?),
                None => Graph::complete(num(rest)?),
            }
        } else if let Some(rest) = s.strip_prefix('C') {
            let n = num(rest)?;
            if n < 3 {
                return Err(bad());
            }
            Graph::cycle(n)
        } else if let Some(rest) = s.strip_prefix('P') {
            Graph::path(num(rest)?)
        } else {
            return Err(bad());
        };
        Ok(Pattern {
            name: s.to_string(),
            graph,
        })
    }

    pub fn from_graph(graph: Graph) -> Pattern {
        Pattern {
            name: format!("g6:{}", to_graph6(&graph)),
            graph,
        }
    }

    fn complete_order(&self) -> Option<usize> {
        let n = self.graph.n();
        (self.graph.m() == n * n.saturating_sub(1) / 2).then_some(n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphClass {
    Degenerate(usize),
    Forests,
    Outerplanar,
    Planar,
    TreewidthAtMost(usize),
    PathwidthAtMost(usize),
    /// Graphs without `minor` as a minor. For non-complete patterns the order
    /// cap of the exponent search is `order_cap` (unrestricted if `None`).
    MinorFree {
        minor: Pattern,
        order_cap: Option<usize>,
    },
    /// `K_{s,t}`-minor-free with `s <= t`.
    KstMinorFree(usize, usize),
    SubgraphRestricted {
        base: Box<GraphClass>,
        forbidden: Vec<Pattern>,
        induced: bool,
    },
}

/// How the duplicability of a collection is decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DupRule {
    /// `α_d(H)` directly; no per-collection decision.
    ClosedFormula,
    /// Every torso of the collection is in the class.
    TorsoTest,
    /// The wedge with `w` copies is in the class.
    WedgeThreshold(usize),
    /// Membership of the wedges for `k = 1..K_MAX`.
    GenericScan,
    /// Planar torsos, and no path of length in `[2, ell]` between the two
    /// boundary vertices of an order-2 member inside its `A` side.
    CycleRule { ell: usize },
}

impl GraphClass {
    pub fn forests() -> Self {
        GraphClass::Forests
    }

    pub fn minor_free(minor: Pattern) -> Self {
        GraphClass::MinorFree {
            minor,
            order_cap: None,
        }
    }

    /// Planar graphs without even cycles of length `4..=2·ell`.
    pub fn planar_without_even_cycles(ell: usize) -> Self {
        GraphClass::SubgraphRestricted {
            base: Box::new(GraphClass::Planar),
            forbidden: even_cycles(ell),
            induced: false,
        }
    }

    /// The cap on separation orders the exponent search uses; `None` means
    /// no cap beyond `|V(H)|`.
    pub fn order_bound(&self) -> Option<usize> {
        match self {
            GraphClass::Degenerate(d) => Some(*d),
            GraphClass::Forests => Some(1),
            GraphClass::Outerplanar => Some(1),
            GraphClass::Planar => Some(2),
            GraphClass::TreewidthAtMost(t) | GraphClass::PathwidthAtMost(t) => Some(*t),
            GraphClass::MinorFree { minor, order_cap } => match minor.complete_order() {
                Some(t) => Some(t.saturating_sub(2)),
                None => *order_cap,
            },
            GraphClass::KstMinorFree(s, _) => Some(s.saturating_sub(1)),
            GraphClass::SubgraphRestricted { base, .. } => base.order_bound(),
        }
    }

    pub fn dup_rule(&self) -> DupRule {
        match self {
            GraphClass::Degenerate(_) => DupRule::ClosedFormula,
            GraphClass::Forests
            | GraphClass::Outerplanar
            | GraphClass::Planar
            | GraphClass::TreewidthAtMost(_)
            | GraphClass::KstMinorFree(..) => DupRule::TorsoTest,
            GraphClass::PathwidthAtMost(t) => {
                DupRule::WedgeThreshold(t * t.saturating_sub(1) / 2 + 2 * t + 3)
            }
            GraphClass::MinorFree { minor, .. } => match minor.complete_order() {
                Some(_) => DupRule::TorsoTest,
                None => DupRule::GenericScan,
            },
            GraphClass::SubgraphRestricted { .. } => match self.even_cycle_ell() {
                Some(ell) => DupRule::CycleRule { ell },
                None => DupRule::GenericScan,
            },
        }
    }

    /// `Some(ell)` when this is planar graphs minus even cycles `4..=2·ell`.
    fn even_cycle_ell(&self) -> Option<usize> {
        if let GraphClass::SubgraphRestricted {
            base,
            forbidden,
            induced: false,
        } = self
        {
            if **base == GraphClass::Planar && !forbidden.is_empty() {
                let ell = forbidden.len() + 1;
                let expected = even_cycles(ell);
                if forbidden
                    .iter()
                    .map(|p| &p.graph)
                    .eq(expected.iter().map(|p| &p.graph))
                {
                    return Some(ell);
                }
            }
        }
        None
    }

    /// Closed under taking subgraphs. Only classes forbidding induced
    /// subgraphs fail this.
    pub fn is_monotone(&self) -> bool {
        match self {
            GraphClass::SubgraphRestricted { base, induced, .. } => !induced && base.is_monotone(),
            _ => true,
        }
    }

    /// Whether the per-collection verdicts of this class rest on a proven
    /// rule rather than a bounded scan.
    pub fn is_heuristic(&self) -> bool {
        matches!(self.dup_rule(), DupRule::GenericScan)
    }

    pub fn contains(&self, g: &Graph) -> Result<bool> {
        self.contains_with(g, &Budgets::default())
    }

    pub fn contains_with(&self, g: &Graph, budgets: &Budgets) -> Result<bool> {
        Ok(match self {
            GraphClass::Degenerate(d) => g.is_degenerate(*d),
            GraphClass::Forests => g.is_forest(),
            GraphClass::Outerplanar => is_outerplanar(g),
            GraphClass::Planar => is_planar(g),
            GraphClass::TreewidthAtMost(t) => treewidth_at_most(g, *t, budgets.search)?,
            GraphClass::PathwidthAtMost(t) => pathwidth_at_most(g, *t, budgets.search)?,
            GraphClass::MinorFree { minor, .. } => !kt_minor_shortcut(g, minor, budgets)?,
            GraphClass::KstMinorFree(s, t) => {
                !has_minor(g, &Graph::complete_bipartite(*s, *t), budgets.search)?
            }
            GraphClass::SubgraphRestricted {
                base,
                forbidden,
                induced,
            } => {
                if !base.contains_with(g, budgets)? {
                    return Ok(false);
                }
                let kind = if *induced {
                    MapKind::Induced
                } else {
                    MapKind::Injective
                };
                let counter = Counter::new(budgets.count);
                for p in forbidden {
                    if counter.exists(&p.graph, g, kind)? {
                        return Ok(false);
                    }
                }
                true
            }
        })
    }
}

/// Whether `g` has the pattern as a minor, with fast paths for small cliques.
fn kt_minor_shortcut(g: &Graph, minor: &Pattern, budgets: &Budgets) -> Result<bool> {
    let n = g.n();
    match minor.complete_order() {
        Some(0) => Ok(true),
        Some(1) => Ok(n >= 1),
        Some(2) => Ok(g.m() >= 1),
        Some(3) => Ok(!g.is_forest()),
        // K4-minor-free graphs are exactly those of treewidth at most 2.
        Some(4) => Ok(!treewidth_at_most(g, 2, budgets.search)?),
        Some(t) if t <= 7 && n + 1 >= t && g.m() > (t - 2) * n - (t - 1) * (t - 2) / 2 => {
            // More edges than any K_t-minor-free graph can have (t <= 7).
            Ok(true)
        }
        _ => has_minor(g, &minor.graph, budgets.search),
    }
}

fn even_cycles(ell: usize) -> Vec<Pattern> {
    (2..=ell)
        .map(|j| Pattern {
            name: format!("C{}", 2 * j),
            graph: Graph::cycle(2 * j),
        })
        .collect()
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphClass::Degenerate(d) => write!(f, "degenerate:{d}"),
            GraphClass::Forests => write!(f, "forests"),
            GraphClass::Outerplanar => write!(f, "outerplanar"),
            GraphClass::Planar => write!(f, "planar"),
            GraphClass::TreewidthAtMost(t) => write!(f, "treewidth:{t}"),
            GraphClass::PathwidthAtMost(t) => write!(f, "pathwidth:{t}"),
            GraphClass::MinorFree { minor, order_cap } => {
                write!(f, "minor-free:{}", minor.name)?;
                if let Some(c) = order_cap {
                    write!(f, "@{c}")?;
                }
                Ok(())
            }
            GraphClass::KstMinorFree(s, t) => write!(f, "kst-minor-free:{s},{t}"),
            GraphClass::SubgraphRestricted {
                base,
                forbidden,
                induced,
            } => {
                write!(f, "{base}")?;
                if let Some(ell) = self.even_cycle_ell() {
                    return write!(f, "+forbid-cycles:4-{}", 2 * ell);
                }
                let tag = if *induced { "forbid-induced" } else { "forbid" };
                for p in forbidden {
                    write!(f, "+{tag}:{}", p.name)?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for GraphClass {
    type Err = Error;

    /// `degenerate:D`, `forests`, `outerplanar`, `planar`, `treewidth:T`,
    /// `pathwidth:T`, `minor-free:M[@CAP]`, `kst-minor-free:S,T`, each
    /// optionally followed by `+forbid:M`, `+forbid-induced:M` (repeatable)
    /// or `+forbid-cycles:4-2L`.
    fn from_str(s: &str) -> Result<GraphClass> {
        let mut parts = s.split('+');
        let base = parse_base(parts.next().unwrap_or(""))?;
        let mut forbidden = Vec::new();
        let mut induced: Option<bool> = None;
        for part in parts {
            let (tag, arg) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("bad class modifier {part:?}")))?;
            let this_induced = match tag {
                "forbid" => false,
                "forbid-induced" => true,
                "forbid-cycles" => {
                    let (lo, hi) = arg
                        .split_once('-')
                        .ok_or_else(|| Error::Parse(format!("bad cycle range {arg:?}")))?;
                    let lo: usize = lo
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad cycle range {arg:?}")))?;
                    let hi: usize = hi
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad cycle range {arg:?}")))?;
                    if lo < 3 || hi < lo {
                        return Err(Error::Parse(format!("bad cycle range {arg:?}")));
                    }
                    for len in (lo..=hi).filter(|l| l % 2 == 0) {
                        forbidden.push(Pattern {
                            name: format!("C{len}"),
                            graph: Graph::cycle(len),
                        });
                    }
                    false
                }
                _ => return Err(Error::Parse(format!("unknown class modifier {tag:?}"))),
            };
            if tag != "forbid-cycles" {
                forbidden.push(Pattern::parse(arg)?);
            }
            if induced.is_some_and(|i| i != this_induced) {
                return Err(Error::Parse(
                    "cannot mix induced and non-induced forbidden patterns".into(),
                ));
            }
            induced = Some(this_induced);
        }
        Ok(match induced {
            None => base,
            Some(induced) => GraphClass::SubgraphRestricted {
                base: Box::new(base),
                forbidden,
                induced,
            },
        })
    }
}

fn parse_base(s: &str) -> Result<GraphClass> {
    let bad = || Error::Parse(format!("unknown class {s:?}"));
    let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
    let (name, arg) = match s.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (s, None),
    };
    Ok(match (name, arg) {
        ("forests", None) => GraphClass::Forests,
        ("outerplanar", None) => GraphClass::Outerplanar,
        ("planar", None) => GraphClass::Planar,
        ("degenerate", Some(a)) => GraphClass::Degenerate(num(a)?),
        ("treewidth", Some(a)) => GraphClass::TreewidthAtMost(num(a)?),
        ("pathwidth", Some(a)) => GraphClass::PathwidthAtMost(num(a)?),
        ("kst-minor-free", Some(a)) => {
            let (x, y) = a.split_once(',').ok_or_else(bad)?;
            let (x, y) = (num(x)?, num(y)?);
            GraphClass::KstMinorFree(x.min(y), x.max(y))
        }
        ("minor-free", Some(a)) => {
            let (pat, cap) = match a.split_once('@') {
                Some((p, c)) => (p, Some(num(c)?)),
                None => (a, None),
            };
            let minor = Pattern::parse(pat)?;
            // K_{s,t} patterns get their own class with the proven order cap.
            if let Some((x, y)) = pat.strip_prefix('K').and_then(|r| r.split_once(',')) {
                if cap.is_none() {
                    let (x, y) = (num(x)?, num(y)?);
                    return Ok(GraphClass::KstMinorFree(x.min(y), x.max(y)));
                }
            }
            GraphClass::MinorFree {
                minor,
                order_cap: cap,
            }
        }
        _ => return Err(bad()),
    })
}
