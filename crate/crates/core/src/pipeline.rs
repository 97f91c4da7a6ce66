//! End-to-end mapping runs, artifact files and comparison tables.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::costmodel::{evaluate, write_placement_file, HardwareConfig, MappingReport, Placement};
use crate::error::{Error, Result};
use crate::generators::{gen_layered, gen_random_cyclic, LayeredSnnSpec, RandomSnnSpec};
use crate::hgraph::{
    check_constraints, parse_hgx, push_forward, write_partition_file, ConstraintKind,
    ConstraintReport, Hypergraph, IndexedHypergraph, ParseMode, Partitioning,
};
use crate::partitioning::{
    hierarchical_partition, make_order, overlap_partition, sequential_partition, NodeOrder,
    OrderStrategy, PartitionerKind,
};
use crate::placement::{
    force_directed_refine, hilbert_place, min_distance_place, spectral_place, PlacerKind,
    RefineOptions, RefineTrace, DEFAULT_MAX_ITERS,
};

pub const PARTITION_FILE: &str = "partition.txt";
pub const PLACEMENT_FILE: &str = "placement.txt";
pub const REPORT_FILE: &str = "report.json";
pub const TIMINGS_FILE: &str = "timings.json";
pub const CONSTRAINTS_FILE: &str = "constraints.json";
pub const COMPARE_FILE: &str = "compare.csv";

/// Where the network of a run comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum Input {
    File(PathBuf),
    Random(RandomSnnSpec),
    Layered(LayeredSnnSpec),
}

impl Input {
    pub fn load(&self) -> Result<Hypergraph> {
        match self {
            Input::File(path) => parse_hgx(&std::fs::read_to_string(path)?, ParseMode::Snn),
            Input::Random(spec) => gen_random_cyclic(spec),
            Input::Layered(spec) => gen_layered(spec),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub input: Input,
    pub hardware: HardwareConfig,
    pub partitioner: PartitionerKind,
    /// Node order for the sequential partitioner.
    pub order: OrderStrategy,
    pub placer: PlacerKind,
    pub refine: bool,
    pub max_iters: usize,
    pub time_limit: Option<Duration>,
    pub seed: u64,
    pub out_dir: Option<PathBuf>,
}

impl PipelineConfig {
    pub fn new(input: Input, hardware: HardwareConfig) -> Self {
        Self {
            input,
            hardware,
            partitioner: PartitionerKind::Overlap,
            order: OrderStrategy::Natural,
            placer: PlacerKind::Hilbert,
            refine: false,
            max_iters: DEFAULT_MAX_ITERS,
            time_limit: None,
            seed: 0,
            out_dir: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.hardware.validate()?;
        if let Input::File(path) = &self.input {
            if !path.is_file() {
                return Err(Error::Io(std::io::Error::new(
                    std::io::ErrorKind::NotFound,
                    format!("{} does not exist", path.display()),
                )));
            }
        }
        if matches!(&self.order, OrderStrategy::Layered(m) if m.is_empty()) {
            return Err(Error::InvalidOrder("layered order needs layer sizes".into()));
        }
        Ok(())
    }
}

/// Everything one mapping run produces.
#[derive(Debug, Clone)]
pub struct Mapping {
    pub partitioning: Partitioning,
    pub placement: Placement,
    pub report: MappingReport,
    pub constraints: ConstraintReport,
    /// Placer that produced the initial layout, after any fallback.
    pub placer_used: PlacerKind,
    pub refine_trace: Option<RefineTrace>,
}

/// Partitions `g`, returning the partitioning and the seconds spent ordering
/// and partitioning.
pub fn partition(
    g: &IndexedHypergraph,
    cfg: &PipelineConfig,
) -> Result<(Partitioning, f64, f64)> {
    let hw = &cfg.hardware;
    match cfg.partitioner {
        PartitionerKind::Sequential => {
            let t = Instant::now();
            let order = make_order(g, &cfg.order)?;
            let order_s = t.elapsed().as_secs_f64();
            let t = Instant::now();
            let rho = sequential_partition(g, &order, hw)?;
            Ok((rho, order_s, t.elapsed().as_secs_f64()))
        }
        PartitionerKind::Overlap => {
            let t = Instant::now();
            let rho = overlap_partition(g, hw)?;
            Ok((rho, 0.0, t.elapsed().as_secs_f64()))
        }
        PartitionerKind::Hierarchical => {
            let t = Instant::now();
            let rho = hierarchical_partition(g, hw, cfg.seed)?;
            Ok((rho, 0.0, t.elapsed().as_secs_f64()))
        }
    }
}

/// Turns a failed constraint check into the matching error.
pub fn require_valid(constraints: &ConstraintReport) -> Result<()> {
    if constraints.valid {
        return Ok(());
    }
    if let Some(v) = constraints
        .violations
        .iter()
        .find(|v| v.kind == ConstraintKind::PartitionCount)
    {
        return Err(Error::CapacityExceeded {
            partitions: v.observed,
            cores: v.limit,
        });
    }
    let mut listing = String::new();
    for v in &constraints.violations {
        let _ = write!(
            listing,
            "\npartition {}: {:?} {} > {}",
            v.partition.unwrap_or_default(),
            v.kind,
            v.observed,
            v.limit
        );
    }
    Err(Error::InvalidPartitioning(format!(
        "{} constraint violations:{listing}",
        constraints.violations.len()
    )))
}

/// Initial placement of the partition hypergraph. A spectral solver failure
/// falls back to the Hilbert placer.
pub fn initial_placement(
    gp: &IndexedHypergraph,
    placer: PlacerKind,
    hw: &HardwareConfig,
) -> Result<(Placement, PlacerKind)> {
    let k = gp.num_nodes();
    match placer {
        PlacerKind::Hilbert => Ok((hilbert_place(&NodeOrder::natural(k), hw)?, placer)),
        PlacerKind::Spectral => match spectral_place(gp, hw) {
            Ok(gamma) => Ok((gamma, placer)),
            Err(Error::SolverFailed { matvecs }) => hilbert_place(&NodeOrder::natural(k), hw)
                .map(|gamma| (gamma, PlacerKind::Hilbert))
                .map_err(|_| Error::SolverFailed { matvecs }),
            Err(e) => Err(e),
        },
        PlacerKind::MinDistance => {
            let order = make_order(gp, &OrderStrategy::Topological)?;
            Ok((min_distance_place(gp, hw, &order)?, placer))
        }
    }
}

/// Places the partitions of `rho` and refines the layout when configured.
/// Returns the placement, the placer used, the refinement trace and the
/// seconds spent placing and refining.
pub fn place_and_refine(
    g: &IndexedHypergraph,
    rho: &Partitioning,
    cfg: &PipelineConfig,
) -> Result<(Placement, PlacerKind, Option<RefineTrace>, f64, f64)> {
    let t = Instant::now();
    let gp = IndexedHypergraph::new(push_forward(g, rho)?);
    let (gamma0, placer_used) = initial_placement(&gp, cfg.placer, &cfg.hardware)?;
    let place_s = t.elapsed().as_secs_f64();

    let t = Instant::now();
    let (placement, refine_trace) = if cfg.refine {
        let options = RefineOptions {
            max_iters: cfg.max_iters,
            time_limit: cfg.time_limit,
            audit: false,
        };
        let (gamma, trace) = force_directed_refine(&gamma0, &gp, &options);
        (gamma, Some(trace))
    } else {
        (gamma0, None)
    };
    let refine_s = t.elapsed().as_secs_f64();

    Ok((placement, placer_used, refine_trace, place_s, refine_s))
}

/// Runs partitioning, placement, optional refinement and evaluation on an
/// already loaded network.
pub fn map_graph(g: &IndexedHypergraph, cfg: &PipelineConfig) -> Result<Mapping> {
    let hw = &cfg.hardware;
    let (rho, order_s, partition_s) = partition(g, cfg)?;
    let constraints = check_constraints(g, &rho, hw)?;
    require_valid(&constraints)?;

    let (placement, placer_used, refine_trace, place_s, refine_s) =
        place_and_refine(g, &rho, cfg)?;

    let t = Instant::now();
    let mut report = evaluate(g, &rho, &placement, hw)?;
    report.runtimes.order_s = order_s;
    report.runtimes.partition_s = partition_s;
    report.runtimes.place_s = place_s;
    report.runtimes.refine_s = refine_s;
    report.runtimes.evaluate_s = t.elapsed().as_secs_f64();

    Ok(Mapping {
        partitioning: rho,
        placement,
        report,
        constraints,
        placer_used,
        refine_trace,
    })
}

/// Loads the input, maps it and writes the artifacts when an output
/// directory is configured.
pub fn run_map(cfg: &PipelineConfig) -> Result<Mapping> {
    cfg.validate()?;
    let g = IndexedHypergraph::new(cfg.input.load()?);
    let mapping = map_graph(&g, cfg)?;
    if let Some(dir) = &cfg.out_dir {
        write_artifacts(dir, &mapping)?;
    }
    Ok(mapping)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    text
}

/// Writes the partition, placement, report, timings and constraint files.
pub fn write_artifacts(dir: &Path, mapping: &Mapping) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    write_atomic(&dir.join(PARTITION_FILE), &write_partition_file(&mapping.partitioning))?;
    write_atomic(&dir.join(PLACEMENT_FILE), &write_placement_file(&mapping.placement))?;
    write_atomic(&dir.join(REPORT_FILE), &to_json(&mapping.report))?;
    write_atomic(&dir.join(TIMINGS_FILE), &to_json(&mapping.report.runtimes))?;
    write_atomic(&dir.join(CONSTRAINTS_FILE), &to_json(&mapping.constraints))?;
    Ok(())
}

/// One node id per line.
pub fn write_order_file(order: &NodeOrder) -> String {
    order.sequence().iter().map(|n| format!("{n}\n")).collect()
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    std::io::Write::write_all(&mut tmp, contents.as_bytes())?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// Process exit status for a failed run.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::UnsatisfiableNode { .. } | Error::InvalidPartitioning(_) => 2,
        Error::CapacityExceeded { .. } => 3,
        Error::SolverFailed { .. } => 4,
        _ => 1,
    }
}

/// One line of a comparison table.
#[derive(Debug, Clone)]
pub struct CompareRow {
    pub label: String,
    pub outcome: std::result::Result<MappingReport, String>,
}

/// Maps `g` once per configuration, concurrently.
pub fn run_compare(g: &IndexedHypergraph, runs: &[(String, PipelineConfig)]) -> Vec<CompareRow> {
    std::thread::scope(|s| {
        let handles: Vec<_> = runs
            .iter()
            .map(|(label, cfg)| {
                s.spawn(move || CompareRow {
                    label: label.clone(),
                    outcome: map_graph(g, cfg).map(|m| m.report).map_err(|e| e.to_string()),
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("mapping thread panicked"))
            .collect()
    })
}

pub const METRIC_COLUMNS: [&str; 10] = [
    "connectivity",
    "energy_pj",
    "avg_latency_ns",
    "avg_congestion",
    "elp",
    "sr_arith",
    "sr_geo",
    "cl_arith",
    "cl_geo",
    "partitions",
];

const RUNTIME_COLUMNS: [&str; 5] = ["order_s", "partition_s", "place_s", "refine_s", "evaluate_s"];

/// Ratio columns compare with these metrics.
pub const RATIO_COLUMNS: [&str; 5] = ["connectivity", "energy_pj", "avg_latency_ns", "avg_congestion", "elp"];

pub fn metric_values(r: &MappingReport) -> [f64; 10] {
    [
        r.connectivity,
        r.energy_pj,
        r.avg_latency_ns,
        r.avg_congestion,
        r.elp,
        r.sr_arith,
        r.sr_geo,
        r.cl_arith,
        r.cl_geo,
        r.partitions as f64,
    ]
}

/// CSV with one row per run: label, status, metrics, runtimes, then each
/// cost metric divided by that of the first successful row. Failed rows
/// keep empty value cells.
pub fn compare_csv(rows: &[CompareRow]) -> String {
    let mut header: Vec<String> = vec!["label".into(), "status".into()];
    header.extend(METRIC_COLUMNS.iter().map(|c| c.to_string()));
    header.extend(RUNTIME_COLUMNS.iter().map(|c| c.to_string()));
    header.extend(RATIO_COLUMNS.iter().map(|c| format!("{c}_ratio")));

    let baseline = rows.iter().find_map(|r| r.outcome.as_ref().ok());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory csv");
    for row in rows {
        let mut record = vec![row.label.clone()];
        match &row.outcome {
            Ok(r) => {
                record.push("ok".into());
                let values = metric_values(r);
                record.extend(values.iter().map(|v| v.to_string()));
                let t = &r.runtimes;
                record.extend(
                    [t.order_s, t.partition_s, t.place_s, t.refine_s, t.evaluate_s]
                        .iter()
                        .map(|v| v.to_string()),
                );
                let base = metric_values(baseline.expect("a successful row exists"));
                for col in RATIO_COLUMNS {
                    let i = METRIC_COLUMNS.iter().position(|c| *c == col).unwrap();
                    record.push(if base[i] != 0.0 {
                        (values[i] / base[i]).to_string()
                    } else {
                        String::new()
                    });
                }
            }
            Err(e) => {
                record.push(format!("failed: {e}"));
                record.extend(std::iter::repeat_n(String::new(), header.len() - 2));
            }
        }
        w.write_record(&record).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::RandomSnnSpec;
    use crate::hgraph::{connectivity, Hyperedge};

    fn desk_config(seed: u64) -> PipelineConfig {
        let mut cfg = PipelineConfig::new(
            Input::Random(RandomSnnSpec::new(64, 4.0, seed)),
            HardwareConfig::desk(),
        );
        cfg.placer = PlacerKind::Spectral;
        cfg.refine = true;
        cfg.seed = seed;
        cfg
    }

    #[test]
    fn desk_smoke_run_is_valid() {
        let cfg = desk_config(3);
        let g = IndexedHypergraph::new(cfg.input.load().unwrap());
        let m = map_graph(&g, &cfg).unwrap();
        assert!(m.constraints.valid);
        let recount = check_constraints(&g, &m.partitioning, &cfg.hardware).unwrap();
        assert!(recount.valid);
        let gp = push_forward(&g, &m.partitioning).unwrap();
        assert_eq!(m.report.connectivity, connectivity(&gp));
    }

    #[test]
    fn single_partition_costs_nothing() {
        let g = Hypergraph::new_snn(
            4,
            vec![
                Hyperedge::new(0, vec![1, 2, 3], 0.4),
                Hyperedge::new(1, vec![0], 0.2),
            ],
        )
        .unwrap();
        let cfg = PipelineConfig::new(Input::File(PathBuf::new()), HardwareConfig::desk());
        let m = map_graph(&IndexedHypergraph::new(g), &cfg).unwrap();
        assert_eq!(m.report.partitions, 1);
        assert_eq!(m.report.connectivity, 0.0);
        assert_eq!(m.report.energy_pj, 0.0);
        assert_eq!(m.report.avg_latency_ns, 0.0);
        assert_eq!(m.report.avg_congestion, 0.0);
    }

    #[test]
    fn reruns_write_identical_files() {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        for dir in [&a, &b] {
            let mut cfg = desk_config(5);
            cfg.out_dir = Some(dir.path().to_owned());
            run_map(&cfg).unwrap();
        }
        for name in [PARTITION_FILE, PLACEMENT_FILE, REPORT_FILE, CONSTRAINTS_FILE] {
            let x = std::fs::read(a.path().join(name)).unwrap();
            let y = std::fs::read(b.path().join(name)).unwrap();
            assert_eq!(x, y, "{name}");
        }
    }

    #[test]
    fn exit_codes_are_distinct() {
        let codes = [
            exit_code(&Error::parse(1, "x")),
            exit_code(&Error::InvalidPartitioning("x".into())),
            exit_code(&Error::CapacityExceeded {
                partitions: 2,
                cores: 1,
            }),
            exit_code(&Error::SolverFailed { matvecs: 1 }),
        ];
        assert_eq!(codes, [1, 2, 3, 4]);
    }

    #[test]
    fn compare_has_a_row_per_run_and_consistent_ratios() {
        let base = desk_config(9);
        let g = IndexedHypergraph::new(base.input.load().unwrap());
        let mut seq = base.clone();
        seq.partitioner = PartitionerKind::Sequential;
        let runs = vec![("overlap".to_owned(), base), ("sequential".to_owned(), seq)];
        let rows = run_compare(&g, &runs);
        let csv = compare_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        let header: Vec<&str> = lines[0].split(',').collect();
        for col in METRIC_COLUMNS {
            assert!(header.contains(&col));
        }
        let cells: Vec<&str> = lines[2].split(',').collect();
        let at = |name: &str| header.iter().position(|h| *h == name).unwrap();
        let ratio: f64 = cells[at("connectivity_ratio")].parse().unwrap();
        let a = rows[0].outcome.as_ref().unwrap().connectivity;
        let b = rows[1].outcome.as_ref().unwrap().connectivity;
        assert_eq!(ratio, b / a);
    }
}
