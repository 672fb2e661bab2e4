//! Exhaustive ground truth at desk scale: class members up to isomorphism,
//! exact `ex(H, 𝓖, n)` for small `n`, counts on wedge constructions and
//! log-log slope fits.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classes::{Budgets, GraphClass};
use crate::counting::{CountMode, Counter};
use crate::duplication::{wedge_collection, wedge_vertex_count};
use crate::error::{Error, Result};
use crate::exponent::{dup_exponent_with, ExponentOptions, Method};
use crate::graph::{canonical_form, to_graph6, CanonicalForm, Graph};
use crate::separations::IndependentCollection;

pub const DEFAULT_ENUM_CAP: usize = 8;

/// Every graph on `0..=n` vertices in `class` (all graphs when `None`), one
/// per isomorphism class, in canonical form. Level `i` holds the graphs on
/// `i` vertices, sorted by canonical form.
///
/// Each level extends the previous one by a vertex with every possible
/// neighbourhood; since the catalog classes are hereditary, every member
/// arises from a member one size down.
pub fn class_levels(
    class: Option<&GraphClass>,
    n: usize,
    cap: usize,
    budgets: &Budgets,
) -> Result<Vec<Vec<Graph>>> {
    if n > cap {
        return Err(Error::TooLarge {
            what: "exhaustive enumeration",
            max: cap,
            got: n,
        });
    }
    let mut levels = vec![vec![Graph::empty(0)]];
    for size in 1..=n {
        let prev = levels.last().expect("level 0 exists");
        let candidates: Vec<CanonicalForm> = prev
            .par_iter()
            .flat_map_iter(|g| {
                (0u64..1 << (size - 1)).map(move |mask| {
                    let edges: Vec<(usize, usize)> = (0..size - 1)
                        .filter(|&u| mask >> u & 1 == 1)
                        .map(|u| (u, size - 1))
                        .collect();
                    let mut bigger = g.disjoint_union(&Graph::empty(1));
                    bigger = bigger.with_edges(&edges);
                    canonical_form(&bigger)
                })
            })
            .collect();
        let mut forms = candidates;
        forms.par_sort_unstable();
        forms.dedup();
        let members: Vec<Result<Option<Graph>>> = forms
            .into_par_iter()
            .map(|f| {
                let g = f.to_graph();
                Ok(match class {
                    Some(c) if !c.contains_with(&g, budgets)? => None,
                    _ => Some(g),
                })
            })
            .collect();
        let level = members
            .into_iter()
            .filter_map(Result::transpose)
            .collect::<Result<Vec<_>>>()?;
        levels.push(level);
    }
    Ok(levels)
}

/// All graphs on `n` vertices up to isomorphism.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(
        class_levels(None, n, DEFAULT_ENUM_CAP, &Budgets::default())?
            .pop()
            .expect("level n"),
    )
}

/// The members of `class` on `n` vertices up to isomorphism.
pub fn enumerate_class_members(class: &GraphClass, n: usize) -> Result<Vec<Graph>> {
    enumerate_class_members_with(class, n, DEFAULT_ENUM_CAP, &Budgets::default())
}

pub fn enumerate_class_members_with(
    class: &GraphClass,
    n: usize,
    cap: usize,
    budgets: &Budgets,
) -> Result<Vec<Graph>> {
    Ok(class_levels(Some(class), n, cap, budgets)?
        .pop()
        .expect("level n"))
}

fn max_count(h: &Graph, members: &[Graph], mode: CountMode, counter: &Counter) -> Result<u64> {
    members
        .par_iter()
        .map(|g| counter.count(mode, h, g))
        .try_reduce(|| 0, |a, b| Ok(a.max(b)))
}

/// `ex(H, 𝓖, n)` in the given mode: the largest count over the members of
/// the class on `n` vertices.
pub fn brute_ex(h: &Graph, class: &GraphClass, n: usize, mode: CountMode) -> Result<u64> {
    let members = enumerate_class_members(class, n)?;
    max_count(h, &members, mode, &Counter::default())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesSource {
    Exhaustive,
    Construction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthSeries {
    /// `(n, count)` with `n` strictly increasing.
    pub points: Vec<(usize, u64)>,
    pub source: SeriesSource,
}

impl GrowthSeries {
    pub fn count_at(&self, n: usize) -> Option<u64> {
        self.points.iter().find(|p| p.0 == n).map(|p| p.1)
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        write_series_csv(std::slice::from_ref(self), out)
    }
}

/// Writes `source,n,count` rows for every point of every series.
pub fn write_series_csv<W: Write>(series: &[GrowthSeries], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let csv_err = |e: csv::Error| Error::Invalid(format!("csv output: {e}"));
    w.write_record(["source", "n", "count"]).map_err(csv_err)?;
    for s in series {
        let source = match s.source {
            SeriesSource::Exhaustive => "exhaustive",
            SeriesSource::Construction => "construction",
        };
        for &(n, c) in &s.points {
            w.write_record([source, &n.to_string(), &c.to_string()])
                .map_err(csv_err)?;
        }
    }
    w.flush()
        .map_err(|e| Error::Invalid(format!("csv output: {e}")))
}

/// `ex(H, 𝓖, n)` for every `n` in `ns`.
pub fn exhaustive_series(
    h: &Graph,
    class: &GraphClass,
    ns: &[usize],
    mode: CountMode,
    counter: &Counter,
    cap: usize,
) -> Result<GrowthSeries> {
    check_increasing(ns)?;
    let top = ns.last().copied().unwrap_or(0);
    let levels = class_levels(Some(class), top, cap, &Budgets::default())?;
    let points = ns
        .iter()
        .map(|&n| Ok((n, max_count(h, &levels[n], mode, counter)?)))
        .collect::<Result<_>>()?;
    Ok(GrowthSeries {
        points,
        source: SeriesSource::Exhaustive,
    })
}

fn check_increasing(xs: &[usize]) -> Result<()> {
    if xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid("range must be strictly increasing".into()));
    }
    Ok(())
}

/// Counts `h` in the wedge of `c` (over `c`'s host) for every `k` in `ks`.
/// `h` is usually the host of `c`; it differs when the collection lives in a
/// homomorphic image or supergraph of the counted pattern.
pub fn construction_series(
    h: &Graph,
    c: &IndependentCollection,
    ks: &[usize],
    mode: CountMode,
    counter: &Counter,
) -> Result<GrowthSeries> {
    check_increasing(ks)?;
    if c.is_empty() && ks.len() > 1 {
        return Err(Error::Invalid("the empty collection does not grow".into()));
    }
    let points = ks
        .iter()
        .map(|&k| {
            let w = wedge_collection(c.host(), c, k)?;
            Ok((w.graph.n(), counter.count(mode, h, &w.graph)?))
        })
        .collect::<Result<_>>()?;
    Ok(GrowthSeries {
        points,
        source: SeriesSource::Construction,
    })
}

/// Least-squares slope of `ln count` against `ln n`.
pub fn slope_fit(series: &GrowthSeries) -> Result<f64> {
    let pts = &series.points;
    if pts.len() < 3 {
        return Err(Error::Invalid(format!(
            "slope fit needs 3 points, got {}",
            pts.len()
        )));
    }
    if let Some(p) = pts.iter().find(|p| p.1 == 0 || p.0 == 0) {
        return Err(Error::Invalid(format!(
            "nonpositive point {p:?} in slope fit"
        )));
    }
    let xs: Vec<f64> = pts.iter().map(|p| (p.0 as f64).ln()).collect();
    let ys: Vec<f64> = pts.iter().map(|p| (p.1 as f64).ln()).collect();
    let m = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / m, ys.iter().sum::<f64>() / m);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}

/// Every `k` whose wedge of `c` has between `lo` and `hi` vertices.
pub fn ks_for_vertex_range(c: &IndependentCollection, lo: usize, hi: usize) -> Vec<usize> {
    let (h, z) = (c.host().n(), c.shared_set().len());
    if h == z {
        return Vec::new();
    }
    (1..=hi)
        .filter(|&k| (lo..=hi).contains(&wedge_vertex_count(h, z, k)))
        .collect()
}

/// An experiment, as read from a TOML file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LabConfig {
    /// Pattern name (`P3`, `K2`, `g6:...`) or a path to a `.g6`/`.el` file.
    pub pattern: Option<String>,
    pub class: Option<String>,
    pub mode: CountMode,
    /// Inclusive range of `n` for the exhaustive oracle.
    pub n_range: [usize; 2],
    /// Inclusive range of `k` for the construction; derived from
    /// `construction_n` when absent.
    pub k_range: Option<[usize; 2]>,
    /// Vertex counts the construction should cover when `k_range` is absent.
    pub construction_n: [usize; 2],
    /// Allowed distance between the fitted slope and the prediction.
    pub tolerance: f64,
    /// For predictions 0 and 1: how far `ex(n) / n^p` may rise above its
    /// first positive value.
    pub sanity_slack: f64,
    pub enum_cap: usize,
    pub budget: Option<u64>,
    /// Optional CSV destination for both series.
    pub csv: Option<String>,
}

impl Default for LabConfig {
    fn default() -> Self {
        LabConfig {
            pattern: None,
            class: None,
            mode: CountMode::Subgraph,
            n_range: [1, 7],
            k_range: None,
            construction_n: [10, 60],
            tolerance: 0.2,
            sanity_slack: 4.0,
            enum_cap: DEFAULT_ENUM_CAP,
            budget: None,
            csv: None,
        }
    }
}

impl LabConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        LabConfig::from_toml(&text)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub pattern: String,
    pub class: String,
    pub mode: CountMode,
    pub predicted: usize,
    pub method: Method,
    pub heuristic: bool,
    pub witness: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub image: Option<String>,
    pub construction: Option<GrowthSeries>,
    pub slope: Option<f64>,
    pub slope_ok: Option<bool>,
    pub exhaustive: GrowthSeries,
    /// `ex(n)` is at least the construction count wherever both exist.
    pub dominance_ok: bool,
    /// `ex(n)` never decreases with `n`.
    pub monotone_ok: bool,
    /// For predictions 0 and 1: the constant `C` with `ex(n) <= C n^p` checked.
    pub growth_constant: Option<f64>,
    pub sanity_ok: Option<bool>,
    /// Vanishing predictions: every exhaustive count is 0.
    pub vanishing_ok: Option<bool>,
    pub passed: bool,
}

/// Predicts the exponent and checks it against the construction slope and
/// the exhaustive oracle.
pub fn verify_exponent(
    h: &Graph,
    class: &GraphClass,
    mode: CountMode,
    cfg: &LabConfig,
) -> Result<VerifyReport> {
    let counter = Counter::new(cfg.budget.unwrap_or(crate::counting::DEFAULT_BUDGET));
    let opts = ExponentOptions::default();
    let report = match dup_exponent_with(class, h, mode, &opts) {
        Ok(r) => r,
        // Outside a monotone class the pattern has no copies at all.
        Err(Error::NotInClass(_)) => crate::exponent::ExponentReport {
            exponent: 0,
            witness: IndependentCollection::new(h.clone(), Vec::new()),
            method: Method::Vanishing,
            mode,
            verdicts: Vec::new(),
            image: None,
            recheck_k3: None,
            heuristic: false,
        },
        Err(e) => return Err(e),
    };
    let p = report.exponent;
    let ns: Vec<usize> = (cfg.n_range[0]..=cfg.n_range[1]).collect();
    let exhaustive = exhaustive_series(h, class, &ns, mode, &counter, cfg.enum_cap)?;
    let monotone_ok = exhaustive.points.windows(2).all(|w| w[0].1 <= w[1].1);

    let vanishing = report.method == Method::Vanishing;
    let (mut construction, mut slope, mut slope_ok) = (None, None, None);
    let mut dominance_ok = true;
    if !vanishing && p > 0 {
        let ks: Vec<usize> = match cfg.k_range {
            Some([lo, hi]) => (lo..=hi).collect(),
            None => ks_for_vertex_range(
                &report.witness,
                cfg.construction_n[0],
                cfg.construction_n[1],
            ),
        };
        let series = construction_series(h, &report.witness, &ks, mode, &counter)?;
        if let Ok(s) = slope_fit(&series) {
            slope_ok = Some((s - p as f64).abs() <= cfg.tolerance);
            slope = Some(s);
        }
        // Small wedges, for comparison with the oracle.
        let small_ks: Vec<usize> =
            ks_for_vertex_range(&report.witness, cfg.n_range[0], cfg.n_range[1]);
        let small = construction_series(h, &report.witness, &small_ks, mode, &counter)?;
        for &(n, c) in small.points.iter().chain(&series.points) {
            if let Some(e) = exhaustive.count_at(n) {
                dominance_ok &= e >= c;
            }
        }
        construction = Some(series);
    }

    let (mut growth_constant, mut sanity_ok) = (None, None);
    if !vanishing && p <= 1 {
        let ratios: Vec<f64> = exhaustive
            .points
            .iter()
            .filter(|pt| pt.1 > 0)
            .map(|&(n, c)| c as f64 / (n as f64).powi(p as i32))
            .collect();
        if let Some(&first) = ratios.first() {
            let bound = first * cfg.sanity_slack;
            growth_constant = Some(bound);
            sanity_ok = Some(ratios.iter().all(|&r| r <= bound));
        }
    }
    let vanishing_ok = vanishing.then(|| exhaustive.points.iter().all(|pt| pt.1 == 0));

    if let Some(path) = &cfg.csv {
        let file =
            std::fs::File::create(path).map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
        let mut all = vec![exhaustive.clone()];
        all.extend(construction.clone());
        write_series_csv(&all, file)?;
    }

    let passed = monotone_ok
        && dominance_ok
        && slope_ok != Some(false)
        && sanity_ok != Some(false)
        && vanishing_ok != Some(false);
    Ok(VerifyReport {
        pattern: to_graph6(h),
        class: class.to_string(),
        mode,
        predicted: p,
        method: report.method,
        heuristic: report.heuristic,
        witness: report.witness.canonical_flaps(),
        image: report.image.as_ref().map(to_graph6),
        construction,
        slope,
        slope_ok,
        exhaustive,
        dominance_ok,
        monotone_ok,
        growth_constant,
        sanity_ok,
        vanishing_ok,
        passed,
    })
}

/// Number of members per size, for quick summaries.
pub fn level_sizes(levels: &[Vec<Graph>]) -> BTreeMap<usize, usize> {
    levels
        .iter()
        .enumerate()
        .map(|(n, l)| (n, l.len()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_isomorphic;
    use std::collections::HashSet;

    fn class(s: &str) -> GraphClass {
        s.parse().unwrap()
    }

    #[test]
    fn graph_counts() {
        let levels = class_levels(None, 7, 8, &Budgets::default()).unwrap();
        let sizes: Vec<usize> = levels.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 1, 2, 4, 11, 34, 156, 1044]);
        for level in &levels {
            let forms: HashSet<_> = level.iter().map(canonical_form).collect();
            assert_eq!(forms.len(), level.len());
        }
        assert!(enumerate_graphs(9).is_err());
    }

    #[test]
    fn member_examples() {
        let forests = enumerate_class_members(&class("forests"), 3).unwrap();
        assert_eq!(forests.len(), 3);
        assert!(forests.iter().any(|g| is_isomorphic(g, &Graph::path(3))));
        assert_eq!(
            enumerate_class_members(&class("outerplanar"), 4)
                .unwrap()
                .len(),
            10
        );
        assert_eq!(
            enumerate_class_members(&class("planar"), 1).unwrap().len(),
            1
        );
        // Trees and forests on 6 vertices: 6 trees, 20 forests.
        let f6 = enumerate_class_members(&class("forests"), 6).unwrap();
        assert_eq!(f6.len(), 20);
        assert_eq!(f6.iter().filter(|g| g.is_connected()).count(), 6);
    }

    /// Oracle: `Σ_v C(deg v, 2)` counts paths on three vertices.
    fn p3_count(g: &Graph) -> u64 {
        (0..g.n())
            .map(|v| (g.degree(v) * g.degree(v).saturating_sub(1) / 2) as u64)
            .sum()
    }

    #[test]
    fn brute_ex_examples() {
        let forests = class("forests");
        for n in 2..=7 {
            assert_eq!(
                brute_ex(&Graph::complete(2), &forests, n, CountMode::Subgraph).unwrap(),
                n as u64 - 1
            );
        }
        assert_eq!(
            brute_ex(&Graph::complete(3), &forests, 6, CountMode::Subgraph).unwrap(),
            0
        );
        let outer = enumerate_class_members(&class("outerplanar"), 5).unwrap();
        let oracle = outer.iter().map(p3_count).max().unwrap();
        let got = brute_ex(
            &Graph::path(3),
            &class("outerplanar"),
            5,
            CountMode::Subgraph,
        )
        .unwrap();
        assert_eq!(got, oracle);
        // The fan: a vertex joined to a path on four vertices.
        assert_eq!(got, 14);
    }

    #[test]
    fn series_and_slopes() {
        let k2 = Graph::complete(2);
        let whole = IndependentCollection::from_flaps(&k2, &[vec![0, 1]]).unwrap();
        let s = construction_series(
            &k2,
            &whole,
            &[2, 4, 8],
            CountMode::Subgraph,
            &Counter::default(),
        )
        .unwrap();
        assert_eq!(s.points, vec![(4, 2), (8, 4), (16, 8)]);
        let p3 = Graph::path(3);
        let ends = IndependentCollection::from_flaps(&p3, &[vec![0], vec![2]]).unwrap();
        let s = construction_series(
            &p3,
            &ends,
            &[1, 2, 3],
            CountMode::Subgraph,
            &Counter::default(),
        )
        .unwrap();
        assert_eq!(s.points, vec![(3, 1), (5, 6), (7, 15)]);

        let square = GrowthSeries {
            points: (1..20).map(|n| (n, (n * n) as u64)).collect(),
            source: SeriesSource::Exhaustive,
        };
        assert!((slope_fit(&square).unwrap() - 2.0).abs() < 1e-9);
        let linear = GrowthSeries {
            points: (1..20).map(|n| (n, 3 * n as u64)).collect(),
            source: SeriesSource::Exhaustive,
        };
        assert!((slope_fit(&linear).unwrap() - 1.0).abs() < 1e-9);
        let short = GrowthSeries {
            points: vec![(1, 1), (2, 2)],
            source: SeriesSource::Exhaustive,
        };
        assert!(slope_fit(&short).is_err());
        let zero = GrowthSeries {
            points: vec![(1, 0), (2, 2), (3, 3)],
            source: SeriesSource::Exhaustive,
        };
        assert!(slope_fit(&zero).is_err());
    }

    #[test]
    fn csv_output() {
        let s = GrowthSeries {
            points: vec![(3, 1), (5, 6)],
            source: SeriesSource::Construction,
        };
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "source,n,count\nconstruction,3,1\nconstruction,5,6\n"
        );
    }

    #[test]
    fn config_parsing() {
        let cfg = LabConfig::from_toml(
            "pattern = \"P3\"\nclass = \"outerplanar\"\nmode = \"subgraph\"\nn_range = [1, 6]\nk_range = [5, 29]\ntolerance = 0.15\n",
        )
        .unwrap();
        assert_eq!(cfg.n_range, [1, 6]);
        assert_eq!(cfg.k_range, Some([5, 29]));
        assert_eq!(cfg.tolerance, 0.15);
        assert_eq!(cfg.enum_cap, DEFAULT_ENUM_CAP);
        assert!(LabConfig::from_toml("colour = 3").is_err());
    }

    #[test]
    fn verify_examples() {
        let cfg = LabConfig {
            n_range: [1, 6],
            ..LabConfig::default()
        };
        let r = verify_exponent(
            &Graph::path(3),
            &class("outerplanar"),
            CountMode::Subgraph,
            &cfg,
        )
        .unwrap();
        assert_eq!(r.predicted, 2);
        assert!(r.passed, "{r:?}");
        let r = verify_exponent(
            &Graph::complete(3),
            &class("forests"),
            CountMode::Subgraph,
            &cfg,
        )
        .unwrap();
        assert_eq!((r.method, r.vanishing_ok), (Method::Vanishing, Some(true)));
        let r = verify_exponent(
            &Graph::complete(2),
            &class("forests"),
            CountMode::Subgraph,
            &cfg,
        )
        .unwrap();
        assert_eq!(r.predicted, 1);
        assert!(r.passed && r.sanity_ok == Some(true));
    }
}
