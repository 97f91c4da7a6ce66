use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use snnmap::costmodel::{parse_placement_file, write_placement_file};
use snnmap::generators::{
    gen_layered, gen_random_cyclic, hardware_preset, FanIn, LayeredSnnSpec, RandomSnnSpec,
    SpikeFrequency, DEFAULT_DECAY_SCALE,
};
use snnmap::hgraph::{
    check_constraints, parse_partition_file, push_forward, write_hgx, write_partition_file,
};
use snnmap::metrics::{connections_locality, synaptic_reuse, MeanKind};
use snnmap::partitioning::{layer_map, make_order, OrderStrategy, PartitionerKind};
use snnmap::pipeline::{
    compare_csv, map_graph, partition, place_and_refine, require_valid, run_compare, to_json,
    write_artifacts, write_atomic, write_order_file, Input, PipelineConfig, COMPARE_FILE,
    CONSTRAINTS_FILE, PARTITION_FILE, PLACEMENT_FILE, REPORT_FILE,
};
use snnmap::placement::{PlacerKind, DEFAULT_MAX_ITERS};
use snnmap::{costmodel, Error, HardwareConfig, IndexedHypergraph, MappingReport, Result};

#[derive(Parser)]
#[command(name = "snnmap", version, about = "Map spiking neural networks onto neuromorphic core meshes")]
struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Hardware preset (small, large, desk) or a TOML file.
    #[arg(long, global = true, default_value = "desk")]
    hw: String,
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a synthetic network as HGX plus a metadata sidecar.
    Gen(GenArgs),
    /// Write a node order, one id per line.
    Order {
        input: PathBuf,
        #[command(flatten)]
        order: OrderArgs,
    },
    /// Partition a network and check the core constraints.
    Partition {
        input: PathBuf,
        #[command(flatten)]
        part: PartitionArgs,
    },
    /// Place the partitions of an existing partition file.
    Place {
        input: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[command(flatten)]
        place: PlaceArgs,
    },
    /// Partition, place, refine and evaluate.
    Map {
        input: PathBuf,
        #[command(flatten)]
        part: PartitionArgs,
        #[command(flatten)]
        place: PlaceArgs,
    },
    /// Evaluate an existing partition and placement.
    Eval {
        input: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[arg(long)]
        placement: PathBuf,
    },
    /// Map one network with every combination of partitioners and placers.
    Compare {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "sequential,overlap,hierarchical")]
        partitioners: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "hilbert,spectral")]
        placers: Vec<String>,
        #[command(flatten)]
        order: OrderArgs,
        #[arg(long, value_enum, default_value_t = Refine::None)]
        refine: Refine,
        #[arg(long, default_value_t = DEFAULT_MAX_ITERS)]
        max_iters: usize,
    },
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    kind: GenKind,
    /// Output file name inside --out.
    #[arg(long, global = true, default_value = "graph.hgx")]
    name: String,
    #[arg(long, global = true, default_value_t = snnmap::generators::SPIKE_MEDIAN)]
    median: f64,
    #[arg(long, global = true, default_value_t = snnmap::generators::SPIKE_CV)]
    cv: f64,
}

#[derive(Subcommand)]
enum GenKind {
    /// Recurrent network with distance-decaying connectivity.
    Random {
        #[arg(long)]
        nodes: usize,
        #[arg(long, default_value_t = 8.0)]
        mean_cardinality: f64,
        #[arg(long, default_value_t = DEFAULT_DECAY_SCALE)]
        decay_scale: f64,
    },
    /// Feedforward network of consecutive layers.
    Layered {
        #[arg(long, value_delimiter = ',', required = true)]
        layers: Vec<usize>,
        /// Windowed fan-in `SIZE:STRIDE` for every layer transition.
        #[arg(long)]
        window: Option<String>,
    },
}

#[derive(Args)]
struct OrderArgs {
    #[arg(long, default_value = "natural")]
    order: String,
    /// Layer sizes for the layered order.
    #[arg(long, value_delimiter = ',')]
    layers: Vec<usize>,
}

#[derive(Args)]
struct PartitionArgs {
    #[arg(long, default_value = "overlap")]
    partitioner: String,
    #[command(flatten)]
    order: OrderArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Refine {
    None,
    Force,
}

#[derive(Args)]
struct PlaceArgs {
    #[arg(long, default_value = "hilbert")]
    placer: String,
    #[arg(long, value_enum, default_value_t = Refine::None)]
    refine: Refine,
    #[arg(long, default_value_t = DEFAULT_MAX_ITERS)]
    max_iters: usize,
    #[arg(long)]
    time_limit_s: Option<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(snnmap::pipeline::exit_code(&e) as u8)
        }
    }
}

fn hardware(spec: &str) -> Result<HardwareConfig> {
    match hardware_preset(spec) {
        Ok(hw) => Ok(hw),
        Err(_) if Path::new(spec).is_file() => {
            HardwareConfig::from_toml(&std::fs::read_to_string(spec)?)
        }
        Err(e) => Err(e),
    }
}

fn order_strategy(args: &OrderArgs) -> Result<OrderStrategy> {
    match args.order.parse()? {
        OrderStrategy::Layered(_) => Ok(OrderStrategy::Layered(layer_map(&args.layers))),
        other => Ok(other),
    }
}

fn config(cli: &Cli, input: &Path, hw: HardwareConfig) -> PipelineConfig {
    let mut cfg = PipelineConfig::new(Input::File(input.to_owned()), hw);
    cfg.seed = cli.seed;
    cfg.out_dir = Some(cli.out.clone());
    cfg
}

fn apply_partition(cfg: &mut PipelineConfig, args: &PartitionArgs) -> Result<()> {
    cfg.partitioner = args.partitioner.parse()?;
    cfg.order = order_strategy(&args.order)?;
    Ok(())
}

fn apply_place(cfg: &mut PipelineConfig, args: &PlaceArgs) -> Result<()> {
    cfg.placer = args.placer.parse()?;
    cfg.refine = args.refine == Refine::Force;
    cfg.max_iters = args.max_iters;
    cfg.time_limit = args.time_limit_s.map(Duration::from_secs_f64);
    Ok(())
}

fn load(cfg: &PipelineConfig) -> Result<IndexedHypergraph> {
    cfg.validate()?;
    Ok(IndexedHypergraph::new(cfg.input.load()?))
}

fn print_report(r: &MappingReport) {
    println!("partitions      {}", r.partitions);
    println!("connectivity    {}", r.connectivity);
    println!("energy_pj       {}", r.energy_pj);
    println!("avg_latency_ns  {}", r.avg_latency_ns);
    println!("avg_congestion  {}", r.avg_congestion);
    println!("elp             {}", r.elp);
    println!("sr_arith        {}", r.sr_arith);
    println!("sr_geo          {}", r.sr_geo);
    println!("cl_arith        {}", r.cl_arith);
    println!("cl_geo          {}", r.cl_geo);
}

fn run(cli: Cli) -> Result<()> {
    let hw = hardware(&cli.hw)?;
    std::fs::create_dir_all(&cli.out)?;
    match &cli.command {
        Command::Gen(args) => gen(&cli, args),
        Command::Order { input, order } => {
            let cfg = config(&cli, input, hw);
            let g = load(&cfg)?;
            let order = make_order(&g, &order_strategy(order)?)?;
            write_atomic(&cli.out.join("order.txt"), &write_order_file(&order))?;
            println!("{:?} order of {} nodes", order.kind(), order.len());
            Ok(())
        }
        Command::Partition { input, part } => {
            let mut cfg = config(&cli, input, hw);
            apply_partition(&mut cfg, part)?;
            let g = load(&cfg)?;
            let (rho, _, seconds) = partition(&g, &cfg)?;
            let constraints = check_constraints(&g, &rho, &cfg.hardware)?;
            write_atomic(&cli.out.join(PARTITION_FILE), &write_partition_file(&rho))?;
            write_atomic(&cli.out.join(CONSTRAINTS_FILE), &to_json(&constraints))?;
            require_valid(&constraints)?;
            let gp = push_forward(&g, &rho)?;
            println!("partitions    {}", rho.num_partitions());
            println!("connectivity  {}", snnmap::hgraph::connectivity(&gp));
            println!("seconds       {seconds:.3}");
            Ok(())
        }
        Command::Place {
            input,
            partition,
            place,
        } => {
            let mut cfg = config(&cli, input, hw);
            apply_place(&mut cfg, place)?;
            let g = load(&cfg)?;
            let rho = parse_partition_file(&std::fs::read_to_string(partition)?, g.num_nodes())?;
            require_valid(&check_constraints(&g, &rho, &cfg.hardware)?)?;
            let (gamma, used, trace, _, _) = place_and_refine(&g, &rho, &cfg)?;
            write_atomic(&cli.out.join(PLACEMENT_FILE), &write_placement_file(&gamma))?;
            println!("placer  {}", used.name());
            if let Some(t) = trace {
                println!("refine  {} moves, {} swaps, potential {} -> {}",
                    t.moves, t.swaps, t.initial_potential, t.final_potential);
            }
            Ok(())
        }
        Command::Map { input, part, place } => {
            let mut cfg = config(&cli, input, hw);
            apply_partition(&mut cfg, part)?;
            apply_place(&mut cfg, place)?;
            let g = load(&cfg)?;
            let mapping = map_graph(&g, &cfg)?;
            write_artifacts(&cli.out, &mapping)?;
            if mapping.placer_used != cfg.placer {
                eprintln!("spectral solver failed, placed along the Hilbert curve");
            }
            print_report(&mapping.report);
            Ok(())
        }
        Command::Eval {
            input,
            partition,
            placement,
        } => {
            let cfg = config(&cli, input, hw);
            let g = load(&cfg)?;
            let hw = &cfg.hardware;
            let rho = parse_partition_file(&std::fs::read_to_string(partition)?, g.num_nodes())?;
            let gamma =
                parse_placement_file(&std::fs::read_to_string(placement)?, hw.width, hw.height)?;
            let report = costmodel::evaluate(&g, &rho, &gamma, hw)?;
            let gp = push_forward(&g, &rho)?;
            print_report(&report);
            for mean in [MeanKind::Arithmetic, MeanKind::Geometric] {
                println!(
                    "{mean:?}: synaptic_reuse {} connections_locality {}",
                    synaptic_reuse(&g, &rho, mean)?,
                    connections_locality(&gp, &gamma, mean)?
                );
            }
            write_atomic(&cli.out.join(REPORT_FILE), &to_json(&report))?;
            Ok(())
        }
        Command::Compare {
            input,
            partitioners,
            placers,
            order,
            refine,
            max_iters,
        } => {
            let mut base = config(&cli, input, hw);
            base.order = order_strategy(order)?;
            base.refine = *refine == Refine::Force;
            base.max_iters = *max_iters;
            let g = load(&base)?;
            let mut runs = Vec::new();
            for p in partitioners {
                let kind: PartitionerKind = p.parse()?;
                for q in placers {
                    let placer: PlacerKind = q.parse()?;
                    let mut cfg = base.clone();
                    cfg.partitioner = kind;
                    cfg.placer = placer;
                    runs.push((format!("{}+{}", kind.name(), placer.name()), cfg));
                }
            }
            let csv = compare_csv(&run_compare(&g, &runs));
            write_atomic(&cli.out.join(COMPARE_FILE), &csv)?;
            print!("{csv}");
            Ok(())
        }
    }
}

fn gen(cli: &Cli, args: &GenArgs) -> Result<()> {
    let spike = SpikeFrequency {
        median: args.median,
        cv: args.cv,
    };
    let (g, meta) = match &args.kind {
        GenKind::Random {
            nodes,
            mean_cardinality,
            decay_scale,
        } => {
            let spec = RandomSnnSpec {
                num_nodes: *nodes,
                mean_cardinality: *mean_cardinality,
                decay_scale: *decay_scale,
                spike,
                seed: cli.seed,
            };
            let g = gen_random_cyclic(&spec)?;
            (g, json!({ "generator": "random_cyclic", "spec": spec, "seed": cli.seed }))
        }
        GenKind::Layered { layers, window } => {
            let fan = match window {
                None => FanIn::Dense,
                Some(w) => {
                    let parse = |s: &str| {
                        s.trim().parse::<usize>().map_err(|_| Error::Unknown {
                            kind: "window",
                            name: w.clone(),
                        })
                    };
                    let (size, stride) = w.split_once(':').ok_or_else(|| Error::Unknown {
                        kind: "window",
                        name: w.clone(),
                    })?;
                    FanIn::Window {
                        size: parse(size)?,
                        stride: parse(stride)?,
                    }
                }
            };
            let spec = LayeredSnnSpec {
                layer_sizes: layers.clone(),
                fan_in: vec![fan; layers.len().saturating_sub(1)],
                spike,
                seed: cli.seed,
            };
            let g = gen_layered(&spec)?;
            (g, json!({ "generator": "layered", "spec": spec, "seed": cli.seed }))
        }
    };
    let path = cli.out.join(&args.name);
    write_atomic(&path, &write_hgx(&g))?;
    write_atomic(&path.with_extension("meta.json"), &to_json(&meta))?;
    println!("{} nodes, {} hyperedges -> {}", g.num_nodes(), g.num_hedges(), path.display());
    Ok(())
}
