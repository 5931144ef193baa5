use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use cxdim_bounds::{cor_chain, BoundReport, CorChain, Variant};
use cxdim_census::{census_flat_hexagons, census_s1, census_s2, census_triangle_ball, Fault, S1Census, S2Census};
use cxdim_core::{CoxeterGroup, DavisBall, DefiningGraph};
use cxdim_hyperbolic::{cat1_link_test, lm_flag_check, solve_y0, LinkRow, LmCertificate, Y0Case};
use cxdim_roundtree::{audit_inductive_hypotheses, build_round_tree, Mutation, RoundTreeReport};

use crate::{to_csv, CensusKind, CliError, GraphArgs, MutationArg, Output, Result};

fn parse_list(s: &str, n: usize, what: &str) -> Result<Vec<u32>> {
    let v: Vec<u32> = s
        .split(',')
        .map(|x| x.trim().parse::<u32>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("{what}: expected {n} comma-separated integers, got `{s}`")))?;
    if v.len() != n {
        return Err(CliError::Usage(format!("{what}: expected {n} comma-separated integers, got `{s}`")));
    }
    Ok(v)
}

#[derive(Serialize)]
struct BoundsResult {
    report: BoundReport,
    cor_chain: CorChain,
    grid: Vec<BoundReport>,
}

pub fn bounds(graph: &GraphArgs, y0: f64, variant: &str, m_max: Option<usize>, big_m_max: Option<u32>) -> Result<Output> {
    let g = graph.resolve()?;
    let variant: Variant = variant.parse().map_err(CliError::Usage)?;
    let (m, big_m) = (g.m() as u64, g.max_label() as u64);
    let report = BoundReport::new(m, big_m, y0, variant).map_err(CliError::usage)?;
    let chain = cor_chain(m, big_m).map_err(CliError::usage)?;
    let m_hi = m_max.map_or(m, |x| x as u64);
    let mm_hi = big_m_max.map_or(big_m, u64::from);
    let points: Vec<(u64, u64)> = (m..=m_hi).flat_map(|a| (big_m..=mm_hi).map(move |b| (a, b))).collect();
    let grid: Vec<BoundReport> = if points.len() > 1 {
        points
            .par_iter()
            .map(|&(a, b)| BoundReport::new(a, b, y0, variant))
            .collect::<std::result::Result<_, _>>()
            .map_err(CliError::usage)?
    } else {
        Vec::new()
    };
    let pass = report.sane() && chain.monotone && grid.iter().all(BoundReport::sane);
    let rows: Vec<&BoundReport> = if grid.is_empty() { vec![&report] } else { grid.iter().collect() };
    let csv = to_csv(&rows);
    Ok(Output::new("bounds", pass, BoundsResult { report, cor_chain: chain, grid }, csv))
}

#[derive(Serialize)]
struct RoundTreeResult {
    mutation: Option<Mutation>,
    /// The polygon touched by the mutation.
    mutated_polygon: Option<String>,
    report: RoundTreeReport,
}

#[derive(Serialize)]
struct StageRow {
    stage: usize,
    addresses: usize,
    polygons: usize,
    vertices: usize,
    ih1: bool,
    ih2: bool,
    ih3: bool,
    ih4: bool,
    convex: bool,
    meets_per_strip: Option<usize>,
    meets_all_strips: Option<usize>,
    meets_per_strip_edges: Option<usize>,
    max_flat_diameter: usize,
    witness: String,
}

pub fn round_tree(graph: &GraphArgs, v: Option<usize>, stages: usize, mutate: Option<MutationArg>) -> Result<Output> {
    let g = graph.resolve()?;
    let v = v.unwrap_or(g.m().saturating_sub(5) / 3);
    let mut tree = build_round_tree(&g, v, stages).map_err(CliError::usage)?;
    let mutation = mutate.map(|m| match m {
        MutationArg::Relabel => Mutation::RelabelIntoTriple,
        MutationArg::Delete => Mutation::DeletePolygon,
        MutationArg::Share => Mutation::ShareStripPolygon,
    });
    let mut mutated_polygon = None;
    if let Some(m) = mutation {
        if stages < 1 {
            return Err(CliError::Usage("--mutate needs --stages >= 1".into()));
        }
        let (t, p) = tree.mutated(m);
        tree = t;
        mutated_polygon = Some(p.to_string());
    }
    let report = audit_inductive_hypotheses(&tree);
    let rows: Vec<StageRow> = report
        .stages
        .iter()
        .map(|s| StageRow {
            stage: s.stage,
            addresses: s.addresses,
            polygons: s.polygons,
            vertices: s.vertices,
            ih1: s.ih1.pass,
            ih2: s.ih2.pass,
            ih3: s.ih3.pass,
            ih4: s.ih4.pass,
            convex: s.convex,
            meets_per_strip: s.meets.map(|m| m.per_strip),
            meets_all_strips: s.meets.map(|m| m.all_strips),
            meets_per_strip_edges: s.meets.map(|m| m.per_strip_edges),
            max_flat_diameter: s.max_flat_diameter,
            witness: [&s.ih1, &s.ih2, &s.ih3, &s.ih4]
                .iter()
                .filter_map(|c| c.witness.clone())
                .collect::<Vec<_>>()
                .join("; "),
        })
        .collect();
    let pass = report.pass;
    Ok(Output::new("round-tree", pass, RoundTreeResult { mutation, mutated_polygon, report }, to_csv(&rows)))
}

#[derive(Serialize)]
struct TripleLinks {
    triple: [u32; 3],
    /// `None` for Euclidean triples, which carry horoballs instead of caps.
    rows: Option<Vec<LinkRow>>,
}

#[derive(Serialize)]
struct LinksResult {
    y0: f64,
    triples: Vec<TripleLinks>,
    flag_complex: LmCertificate,
}

#[derive(Serialize)]
struct LinkCsvRow {
    p: u32,
    q: u32,
    r: u32,
    case: usize,
    n: u32,
    theta: f64,
    alpha: f64,
    sigma: f64,
    loop_length: f64,
    pass: bool,
}

/// Sorted label triples occurring on triangles of the graph.
fn label_triples(g: &DefiningGraph) -> Vec<[u32; 3]> {
    let set: BTreeSet<[u32; 3]> = g
        .triples()
        .into_iter()
        .map(|[a, b, c]| {
            let mut t = [g.label(a, b), g.label(a, c), g.label(b, c)];
            t.sort_unstable();
            t
        })
        .collect();
    set.into_iter().collect()
}

pub fn links(graph: &GraphArgs, y0: f64) -> Result<Output> {
    let g = graph.resolve()?;
    if !(y0 > 0.0) {
        return Err(CliError::Usage(format!("--y0 must be positive, got {y0}")));
    }
    let mut triples = Vec::new();
    let mut csv_rows = Vec::new();
    for t in label_triples(&g) {
        let rows = if t == [3, 3, 3] { None } else { Some(cat1_link_test((t[0], t[1], t[2]), y0).map_err(CliError::usage)?) };
        for r in rows.iter().flatten() {
            csv_rows.push(LinkCsvRow {
                p: t[0],
                q: t[1],
                r: t[2],
                case: r.case,
                n: r.n,
                theta: r.theta,
                alpha: r.alpha,
                sigma: r.sigma,
                loop_length: r.loop_length,
                pass: r.pass,
            });
        }
        triples.push(TripleLinks { triple: t, rows });
    }
    let flag_complex = lm_flag_check(g.m()).map_err(CliError::usage)?;
    let pass = flag_complex.pass && csv_rows.iter().all(|r| r.pass);
    Ok(Output::new("links", pass, LinksResult { y0, triples, flag_complex }, to_csv(&csv_rows)))
}

#[derive(Serialize)]
struct ShellResult {
    pair: [usize; 2],
    s1: S1Census,
    s2: S2Census,
}

#[derive(Serialize)]
struct CensusRow {
    kind: CensusKind,
    subject: String,
    radius: usize,
    count: u64,
    bound: f64,
    pass: bool,
}

pub fn census(
    graph: &GraphArgs,
    kind: CensusKind,
    pair: &str,
    triple: &str,
    k: usize,
    ell: u32,
    inject_fault: bool,
) -> Result<Output> {
    match kind {
        CensusKind::Shells => {
            let g = graph.resolve()?;
            let group = CoxeterGroup::new(g.clone());
            let pairs: Vec<(usize, usize)> = if pair == "all" {
                g.pairs().collect()
            } else {
                let p = parse_list(pair, 2, "--pair")?;
                let (i, j) = (p[0] as usize, p[1] as usize);
                if i == 0 || j == 0 || i > g.m() || j > g.m() || i == j {
                    return Err(CliError::Usage(format!("--pair {pair} is not a pair of generators 1..={}", g.m())));
                }
                vec![(i.min(j) - 1, i.max(j) - 1)]
            };
            let fault = inject_fault.then_some(Fault::AdjacentInS2);
            let results: Vec<ShellResult> = pairs
                .par_iter()
                .map(|&(i, j)| -> Result<ShellResult> {
                    Ok(ShellResult {
                        pair: [i + 1, j + 1],
                        s1: census_s1(&group, (i, j)).map_err(CliError::usage)?,
                        s2: census_s2(&group, (i, j), fault).map_err(CliError::usage)?,
                    })
                })
                .collect::<Result<_>>()?;
            let pass = results.iter().all(|r| r.s1.pass && r.s2.pass);
            let rows: Vec<CensusRow> = results
                .iter()
                .flat_map(|r| {
                    let subject = format!("{},{}", r.pair[0], r.pair[1]);
                    [
                        CensusRow {
                            kind,
                            subject: subject.clone(),
                            radius: 1,
                            count: r.s1.count as u64,
                            bound: r.s1.bound,
                            pass: r.s1.pass,
                        },
                        CensusRow { kind, subject, radius: 2, count: r.s2.count as u64, bound: r.s2.bound, pass: r.s2.pass },
                    ]
                })
                .collect();
            Ok(Output::new("census", pass, results, to_csv(&rows)))
        }
        CensusKind::Triangle => {
            let t = parse_list(triple, 3, "--triple")?;
            let c = census_triangle_ball(t[0], t[1], t[2], k).map_err(CliError::usage)?;
            let rows: Vec<CensusRow> = c
                .rows
                .iter()
                .flat_map(|row| {
                    (0..row.ball.len()).map(move |i| CensusRow {
                        kind,
                        subject: format!("label {}", row.label),
                        radius: i,
                        count: row.ball[i] as u64,
                        bound: row.bound[i] as f64,
                        pass: row.ball[i] as u64 <= row.bound[i],
                    })
                })
                .collect();
            Ok(Output::new("census", c.pass, &c, to_csv(&rows)))
        }
        CensusKind::Flat => {
            let all = (1..=ell)
                .into_par_iter()
                .map(|l| census_flat_hexagons(l, 1.0))
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(CliError::usage)?;
            let pass = all.iter().all(|c| c.centres.pass);
            let rows: Vec<CensusRow> = all
                .iter()
                .flat_map(|c| {
                    [("centres", c.centres), ("contained", c.contained)].map(|(name, h)| CensusRow {
                        kind,
                        subject: name.to_string(),
                        radius: c.ell as usize,
                        count: h.count,
                        bound: c.bound,
                        pass: h.pass,
                    })
                })
                .collect();
            Ok(Output::new("census", pass, &all, to_csv(&rows)))
        }
    }
}

#[derive(Serialize)]
struct Y0Row {
    #[serde(flatten)]
    case: Y0Case,
    /// `|closed form - stated decimal|`.
    stated_gap: f64,
}

#[derive(Serialize)]
struct Y0Result {
    y0: f64,
    minimum_feasible: f64,
    pass_at_y0: Option<bool>,
    cases: Vec<Y0Row>,
}

#[derive(Serialize)]
struct Y0CsvRow {
    case: usize,
    p: u32,
    q: u32,
    r: u32,
    closed_form: f64,
    bisection: f64,
    stated: f64,
    stated_gap: f64,
    pass_at_y0: Option<bool>,
}

pub fn y0(y0: f64) -> Result<Output> {
    if !(y0 > 0.0) {
        return Err(CliError::Usage(format!("--y0 must be positive, got {y0}")));
    }
    let r = solve_y0(Some(y0)).map_err(CliError::usage)?;
    let agree = r.cases.iter().all(|c| (c.closed_form - c.bisection).abs() < 1e-6);
    let pass = agree && r.pass_at_y0 == Some(true);
    let csv_rows: Vec<Y0CsvRow> = r
        .cases
        .iter()
        .map(|c| Y0CsvRow {
            case: c.case,
            p: c.labels.0,
            q: c.labels.1,
            r: c.labels.2,
            closed_form: c.closed_form,
            bisection: c.bisection,
            stated: c.stated,
            stated_gap: (c.closed_form - c.stated).abs(),
            pass_at_y0: c.pass_at_y0,
        })
        .collect();
    let cases = r.cases.into_iter().map(|c| Y0Row { stated_gap: (c.closed_form - c.stated).abs(), case: c }).collect();
    let result = Y0Result { y0, minimum_feasible: r.minimum_feasible, pass_at_y0: r.pass_at_y0, cases };
    Ok(Output::new("y0", pass, result, to_csv(&csv_rows)))
}

/// Outcome of comparing the wall criterion with breadth-first distances.
#[derive(Clone, Debug, Serialize)]
pub struct GeodesicAudit {
    pub seed: u64,
    pub checked: usize,
    pub geodesic: usize,
    pub skipped: usize,
    pub disagreements: usize,
    pub witness: Option<Vec<usize>>,
}

/// A shortest path from `from` to `to`, stepping to the smallest-index
/// neighbour one closer each time.
fn shortest_path(ball: &DavisBall, dist_from: &[Option<usize>], from: usize, to: usize) -> Vec<usize> {
    let m = ball.group().rank();
    let mut path = vec![to];
    let mut x = to;
    while x != from {
        let d = dist_from[x].unwrap();
        x = (0..m).filter_map(|s| ball.neighbour(x, s)).find(|&y| dist_from[y] == Some(d - 1)).unwrap();
        path.push(x);
    }
    path.reverse();
    path
}

/// Random paths `a -> w -> c` through the inner half of the ball, each
/// classified by `is_geodesic` and by comparing its length with the BFS
/// distance from `a` to `c`. Paths too close to the sphere are skipped.
pub fn geodesic_audit(ball: &DavisBall, pairs: usize, seed: u64) -> GeodesicAudit {
    let inner: Vec<usize> = (0..ball.vertices().len()).filter(|&v| 2 * ball.vertices()[v].len() <= ball.radius()).collect();
    let dist: Vec<Vec<Option<usize>>> = inner.iter().map(|&u| ball.bfs(u)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut audit = GeodesicAudit { seed, checked: 0, geodesic: 0, skipped: 0, disagreements: 0, witness: None };
    if inner.len() < 2 {
        return audit;
    }
    while audit.checked < pairs {
        let (a, c, w) = (rng.gen_range(0..inner.len()), rng.gen_range(0..inner.len()), rng.gen_range(0..inner.len()));
        let mut path = shortest_path(ball, &dist[a], inner[a], inner[w]);
        let mut back = shortest_path(ball, &dist[c], inner[c], inner[w]);
        back.reverse();
        path.extend(back.into_iter().skip(1));
        let Ok(geo) = ball.is_geodesic(&path) else {
            audit.skipped += 1;
            continue;
        };
        let shortest = dist[a][inner[c]] == Some(path.len() - 1);
        audit.checked += 1;
        audit.geodesic += geo as usize;
        if geo != shortest {
            audit.disagreements += 1;
            audit.witness.get_or_insert(path);
        }
    }
    audit
}

#[derive(Serialize)]
struct BallSummary {
    radius: usize,
    vertices: usize,
    edges: usize,
    polygons: usize,
    walls: usize,
    pairs_checked: usize,
    geodesic: usize,
    disagreements: usize,
}

pub fn ball(graph: &GraphArgs, radius: usize, cap: usize, pairs: usize, seed: u64) -> Result<Output> {
    let g = graph.resolve()?;
    let group = CoxeterGroup::new(g);
    let b = DavisBall::build(&group, radius, cap).map_err(CliError::usage)?;
    let audit = (pairs > 0).then(|| geodesic_audit(&b, pairs, seed));
    let summary = BallSummary {
        radius,
        vertices: b.vertices().len(),
        edges: b.edges().len(),
        polygons: b.polygons().len(),
        walls: b.walls().len(),
        pairs_checked: audit.as_ref().map_or(0, |a| a.checked),
        geodesic: audit.as_ref().map_or(0, |a| a.geodesic),
        disagreements: audit.as_ref().map_or(0, |a| a.disagreements),
    };
    let pass = audit.as_ref().map_or(true, |a| a.disagreements == 0 && a.checked == pairs);
    let csv = to_csv(&[&summary]);
    let result = serde_json::json!({ "ball": b.to_json(), "geodesic_audit": audit });
    Ok(Output::new("ball", pass, result, csv))
}
