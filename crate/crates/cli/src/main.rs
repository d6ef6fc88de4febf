//! simctl: scenario runner for the COFDM simulation lab.
//!
//! Subcommands mirror the library runners: `uncoded`, `coded`, `sweep`,
//! `scatter` and the canned `table1` campaign. A TOML config file can seed
//! any scenario; command-line flags override file values field by field.
//!
//! Exit codes: 0 success, 1 configuration error, 2 runtime failure.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use cofdm_core::channel::{EchoSpec, EnergyRef, NoiseRef};
use cofdm_core::ofdm::GuardFraction;
use cofdm_core::sim::{
    render_scatter_csv, run_coded_scenario, run_table1, run_uncoded_scenario, scatter_points,
    sweep_curve, Mode, Report, ScenarioConfig,
};
use cofdm_core::Scheme;

#[derive(Parser)]
#[command(
    name = "simctl",
    version,
    about = "COFDM baseband simulation lab: FEC, QAM, OFDM and Monte Carlo error-rate campaigns"
)]
struct Cli {
    /// TOML scenario file; flags override its values.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one uncoded modulator scenario (source -> map -> channel -> demap).
    Uncoded(UncodedArgs),
    /// Run the full concatenated chain once (RS + convolutional + OFDM).
    Coded(CodedArgs),
    /// Sweep Eb/N0 over the uncoded chain and emit curve data.
    Sweep(SweepArgs),
    /// Dump post-channel I/Q samples as `index,i,q` CSV.
    Scatter(ScatterArgs),
    /// Canned modulator-comparison campaign (three schemes at 12 and 15 dB).
    Table1(Table1Args),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Clone)]
#[command(group(ArgGroup::new("noise").args(["ebn0", "esn0", "snr"])))]
struct CommonArgs {
    /// Constellation: qpsk, qam16 or qam64.
    #[arg(long)]
    scheme: Option<Scheme>,

    /// Eb/N0 in dB.
    #[arg(long, allow_hyphen_values = true)]
    ebn0: Option<f64>,

    /// Es/N0 in dB.
    #[arg(long, allow_hyphen_values = true)]
    esn0: Option<f64>,

    /// SNR per sample in dB.
    #[arg(long, allow_hyphen_values = true)]
    snr: Option<f64>,

    /// Phase-noise level in dBc/Hz (enables the phase-noise stage).
    #[arg(long, value_name = "DBC_HZ", allow_hyphen_values = true)]
    phase_level: Option<f64>,

    /// Phase-noise offset frequency in Hz.
    #[arg(long, value_name = "HZ")]
    phase_offset: Option<f64>,

    /// Phase-noise simulation sample rate in Hz.
    #[arg(long, value_name = "HZ")]
    phase_sample_rate: Option<f64>,

    /// Master seed.
    #[arg(long)]
    seed: Option<u64>,

    /// Assume unit per-sample energy instead of measuring the block.
    #[arg(long)]
    nominal_es: bool,

    /// Output rendering.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,

    /// Write the rendered output to a file instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct UncodedArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Number of source symbols.
    #[arg(long)]
    symbols: Option<u64>,
}

#[derive(Args, Clone)]
struct CodedArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Payload size in bytes.
    #[arg(long)]
    payload_bytes: Option<usize>,

    /// OFDM transform size (power of two).
    #[arg(long)]
    fft_size: Option<usize>,

    /// Active carrier count.
    #[arg(long)]
    carriers: Option<usize>,

    /// Guard interval fraction: 1/4, 1/8, 1/16 or 1/32.
    #[arg(long)]
    guard: Option<GuardFraction>,

    /// Echo delay in samples (enables the echo stage).
    #[arg(long)]
    echo_delay: Option<usize>,

    /// Complex echo gain as `re,im`.
    #[arg(long, value_name = "RE,IM", allow_hyphen_values = true)]
    echo_gain: Option<String>,
}

#[derive(Args, Clone)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Comma-separated Eb/N0 grid, e.g. "0,3,6,9,12,15,18".
    #[arg(long, value_name = "LIST", allow_hyphen_values = true)]
    ebn0_list: Option<String>,

    /// Symbols per sweep point.
    #[arg(long)]
    symbols: Option<u64>,
}

#[derive(Args, Clone)]
struct ScatterArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Number of samples to dump.
    #[arg(long, default_value_t = 2500)]
    points: usize,
}

#[derive(Args, Clone)]
struct Table1Args {
    /// Number of master seeds to sweep.
    #[arg(long, default_value_t = 30)]
    seeds: usize,

    /// Campaign master seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Disable the -76 dBc/Hz phase-noise stage.
    #[arg(long)]
    no_phase_noise: bool,

    #[arg(long, value_enum, default_value = "text")]
    format: Format,

    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

enum CliError {
    Config(String),
    Runtime(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Runtime(m) => m,
        }
    }
}

impl From<cofdm_core::Error> for CliError {
    fn from(e: cofdm_core::Error) -> Self {
        match e {
            cofdm_core::Error::Config { .. } | cofdm_core::Error::InvalidParam { .. } => {
                CliError::Config(e.to_string())
            }
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let base = load_config(cli.config.as_deref())?;
    match cli.command {
        Command::Uncoded(args) => {
            let cfg = build_uncoded(base, &args);
            let report = run_uncoded_scenario(&cfg)?;
            emit_report(&report, &args.common)
        }
        Command::Coded(args) => {
            let cfg = build_coded(base, &args)?;
            let report = run_coded_scenario(&cfg)?;
            emit_report(&report, &args.common)
        }
        Command::Sweep(args) => {
            let cfg = build_sweep(base, &args)?;
            let report = sweep_curve(&cfg)?;
            emit_report(&report, &args.common)
        }
        Command::Scatter(args) => {
            let mut cfg = base;
            apply_common(&mut cfg, &args.common);
            cfg.mode = Mode::Uncoded;
            let points = scatter_points(&cfg, args.points)?;
            write_out(args.common.out.as_deref(), &render_scatter_csv(&points))
        }
        Command::Table1(args) => {
            let campaign = run_table1(args.seed, args.seeds, !args.no_phase_noise)?;
            let rendered = match args.format {
                Format::Text => campaign.to_text(),
                Format::Json => campaign.to_json(),
                Format::Csv => campaign.to_csv(),
            };
            write_out(args.out.as_deref(), &rendered)
        }
    }
}

fn load_config(path: Option<&std::path::Path>) -> Result<ScenarioConfig, CliError> {
    let Some(path) = path else {
        return Ok(ScenarioConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn apply_common(cfg: &mut ScenarioConfig, args: &CommonArgs) {
    if let Some(scheme) = args.scheme {
        cfg.scheme = scheme;
        // a scheme override invalidates a file-provided bits_per_symbol
        cfg.channel.bits_per_symbol = None;
    }
    if let Some(v) = args.ebn0 {
        cfg.channel.noise_ref = NoiseRef::Ebn0Db;
        cfg.channel.noise_value_db = Some(v);
    }
    if let Some(v) = args.esn0 {
        cfg.channel.noise_ref = NoiseRef::Esn0Db;
        cfg.channel.noise_value_db = Some(v);
    }
    if let Some(v) = args.snr {
        cfg.channel.noise_ref = NoiseRef::SnrPerSampleDb;
        cfg.channel.noise_value_db = Some(v);
    }
    if args.phase_level.is_some()
        || args.phase_offset.is_some()
        || args.phase_sample_rate.is_some()
    {
        let mut pn = cfg.channel.phase_noise.unwrap_or_default();
        if let Some(v) = args.phase_level {
            pn.level_dbc_hz = v;
        }
        if let Some(v) = args.phase_offset {
            pn.offset_hz = v;
        }
        if let Some(v) = args.phase_sample_rate {
            pn.sample_rate_hz = v;
        }
        cfg.channel.phase_noise = Some(pn);
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if args.nominal_es {
        cfg.energy_ref = EnergyRef::Nominal;
    }
}

fn build_uncoded(mut cfg: ScenarioConfig, args: &UncodedArgs) -> ScenarioConfig {
    apply_common(&mut cfg, &args.common);
    cfg.mode = Mode::Uncoded;
    cfg.sweep = None;
    if let Some(n) = args.symbols {
        cfg.n_symbols = n;
    }
    cfg
}

fn build_coded(mut cfg: ScenarioConfig, args: &CodedArgs) -> Result<ScenarioConfig, CliError> {
    apply_common(&mut cfg, &args.common);
    cfg.mode = Mode::Coded;
    cfg.sweep = None;
    if let Some(n) = args.payload_bytes {
        cfg.payload_bytes = n;
    }
    if args.fft_size.is_some() || args.carriers.is_some() || args.guard.is_some() {
        let mut ofdm = cfg.ofdm.unwrap_or_default();
        if let Some(v) = args.fft_size {
            ofdm.fft_size = v;
        }
        if let Some(v) = args.carriers {
            ofdm.active_carriers = v;
        }
        if let Some(v) = args.guard {
            ofdm.guard_fraction = v;
        }
        cfg.ofdm = Some(ofdm);
    }
    if args.echo_delay.is_some() || args.echo_gain.is_some() {
        let mut echo = cfg.channel.echo.unwrap_or(EchoSpec {
            delay_samples: 0,
            gain_re: 0.0,
            gain_im: 0.0,
        });
        if let Some(d) = args.echo_delay {
            echo.delay_samples = d;
        }
        if let Some(g) = &args.echo_gain {
            let (re, im) = parse_complex(g)?;
            echo.gain_re = re;
            echo.gain_im = im;
        }
        cfg.channel.echo = Some(echo);
    }
    Ok(cfg)
}

fn build_sweep(mut cfg: ScenarioConfig, args: &SweepArgs) -> Result<ScenarioConfig, CliError> {
    apply_common(&mut cfg, &args.common);
    cfg.mode = Mode::Uncoded;
    if let Some(n) = args.symbols {
        cfg.n_symbols = n;
    }
    if let Some(list) = &args.ebn0_list {
        let values: Result<Vec<f64>, _> =
            list.split(',').map(|v| v.trim().parse::<f64>()).collect();
        cfg.sweep = Some(values.map_err(|e| CliError::Config(format!("--ebn0-list: {e}")))?);
    }
    if cfg.sweep.is_none() {
        return Err(CliError::Config(
            "sweep needs --ebn0-list or a sweep entry in the config file".into(),
        ));
    }
    Ok(cfg)
}

fn parse_complex(s: &str) -> Result<(f64, f64), CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::Config(format!(
            "--echo-gain expects `re,im`, got `{s}`"
        )));
    }
    let re = parts[0]
        .trim()
        .parse::<f64>()
        .map_err(|e| CliError::Config(format!("--echo-gain re: {e}")))?;
    let im = parts[1]
        .trim()
        .parse::<f64>()
        .map_err(|e| CliError::Config(format!("--echo-gain im: {e}")))?;
    Ok((re, im))
}

fn emit_report(report: &Report, common: &CommonArgs) -> Result<(), CliError> {
    let rendered = match common.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    write_out(common.out.as_deref(), &rendered)
}

fn write_out(path: Option<&std::path::Path>, rendered: &str) -> Result<(), CliError> {
    match path {
        Some(path) => {
            std::fs::write(path, rendered)?;
            Ok(())
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(rendered.as_bytes())?;
            Ok(())
        }
    }
}
