// Copyright 2026 The qudisim Authors
// SPDX-License-Identifier: Apache-2.0

//! Command-line front end.
//!
//! Exit codes: 0 success, 2 input or image-dimension error, 3 configuration
//! error, 4 decode failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::circuit::{Circuit, GateKind};
use crate::compress::compress_encoding;
use crate::decompose::{lower_circuit, DecompositionStrategy, LowerOptions};
use crate::error::Error;
use crate::hqdqr::{
    decode, default_threshold, encoding_circuit, hqdqr_bound, table1_gate_counts, Channel, ImageDims,
    RegisterLayout,
};
use crate::imgops::{channel_swap, one_channel_op, ChannelPair};
use crate::ppm::{parse_ppm, write_ppm, PpmFormat};
use crate::sim::{sample_shots, NoiseModel, ShotHistogram};

#[derive(Debug, Parser)]
#[command(name = "qudisim", version, about = "Hybrid qudit RGB image encoding and simulation")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the encoding circuit for a PPM image.
    Encode(EncodeArgs),
    /// Sample measurement shots from a circuit.
    Simulate(SimulateArgs),
    /// Rebuild an image from a shot histogram.
    Decode(DecodeArgs),
    /// Print closed-form gate counts for `m` qutrit and `n` qubit position digits.
    Report(ReportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    AncillaChain,
    EffectiveQutrit,
    QubitAncilla,
}

impl From<StrategyArg> for DecompositionStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::AncillaChain => DecompositionStrategy::AncillaChain,
            StrategyArg::EffectiveQutrit => DecompositionStrategy::EffectiveQutrit,
            StrategyArg::QubitAncilla => DecompositionStrategy::QubitAncilla,
        }
    }
}

/// One `--ops` item: `swap=RG` or `invert=R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImageOp {
    Swap(ChannelPair),
    Invert(Channel),
}

impl FromStr for ImageOp {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (name, arg) = s.split_once('=').ok_or_else(|| format!("expected NAME=ARG, got {s:?}"))?;
        match name.trim() {
            "swap" => arg.trim().parse().map(ImageOp::Swap).map_err(|e: Error| e.to_string()),
            "invert" => arg.trim().parse().map(ImageOp::Invert).map_err(|e: Error| e.to_string()),
            other => Err(format!("unknown op {other:?}, expected swap or invert")),
        }
    }
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    /// Input image (P3 or P6, maxval 255).
    pub image: PathBuf,
    /// Output circuit JSON.
    #[arg(short, long)]
    pub output: PathBuf,
    /// Lower multi-controlled gates with this strategy.
    #[arg(long, value_enum)]
    pub strategy: Option<StrategyArg>,
    /// Split binary Toffolis of the qubit-ancilla strategy into controlled-X gates.
    #[arg(long)]
    pub split_toffoli: bool,
    /// Minimize per-bitplane position controls.
    #[arg(long)]
    pub compress: bool,
    /// Write the per-bitplane compression table here (requires --compress).
    #[arg(long, requires = "compress")]
    pub compress_report: Option<PathBuf>,
    /// Image operations applied after encoding, e.g. `swap=RG,invert=R`.
    #[arg(long, value_delimiter = ',')]
    pub ops: Vec<ImageOp>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Circuit JSON.
    pub circuit: PathBuf,
    /// Output histogram CSV.
    #[arg(short, long)]
    pub output: PathBuf,
    #[arg(long, default_value_t = 5000)]
    pub shots: u64,
    #[arg(long, env = "QUDISIM_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Depolarizing strength after single-qudit gates.
    #[arg(long)]
    pub noise_l1: Option<f64>,
    /// Depolarizing strength after two-qudit gates.
    #[arg(long)]
    pub noise_l2: Option<f64>,
    /// Worker threads; results do not depend on this.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    /// Histogram CSV.
    pub histogram: PathBuf,
    /// Output image.
    #[arg(short, long)]
    pub output: PathBuf,
    /// Image size as HEIGHTxWIDTH.
    #[arg(long, conflicts_with_all = ["height", "width"])]
    pub dims: Option<ImageDims>,
    #[arg(long, requires = "width")]
    pub height: Option<usize>,
    #[arg(long, requires = "height")]
    pub width: Option<usize>,
    /// Minimum count for an outcome to be trusted.
    #[arg(long)]
    pub threshold: Option<u64>,
    /// Write P3 instead of P6.
    #[arg(long)]
    pub ascii: bool,
    /// Diagnostics JSON path; defaults to the output path with a `.json` extension.
    #[arg(long)]
    pub diagnostics: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub n: u32,
}

/// A failed command: exit code and message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

pub fn exit_code(err: &Error) -> u8 {
    match err {
        Error::StrategyInapplicable { .. }
        | Error::NoiseOnUnloweredCircuit(_)
        | Error::InvalidArguments(_)
        | Error::InvalidStrength(_)
        | Error::TransformOutOfRange { .. } => 3,
        _ => 2,
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure::new(exit_code(&err), err.to_string())
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| Failure::new(2, format!("{}: {e}", path.display())))
}

pub fn run(config: RunConfig, out: &mut dyn Write) -> Result<(), Failure> {
    match config.command {
        Command::Encode(args) => cmd_encode(&args, out),
        Command::Simulate(args) => cmd_simulate(&args),
        Command::Decode(args) => cmd_decode(&args),
        Command::Report(args) => cmd_report(&args, out),
    }
}

fn io_fail(e: std::io::Error) -> Failure {
    Failure::new(2, e.to_string())
}

pub fn cmd_encode(args: &EncodeArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let image = parse_ppm(&read(&args.image)?)?;
    let (mut circuit, compression) = if args.compress {
        let (c, report) = compress_encoding(&image)?;
        (c, Some(report))
    } else {
        (encoding_circuit(&image)?, None)
    };
    let toffolis = circuit.count_kind(GateKind::GeneralizedToffoli);

    let mut current = image.clone();
    for op in &args.ops {
        match *op {
            ImageOp::Swap(pair) => {
                circuit = channel_swap(&circuit, pair)?;
                current = pair.apply_to_image(&current);
            }
            ImageOp::Invert(channel) => {
                let (c, img) = one_channel_op(&circuit, &current, channel, |v| 255 - v as u32)?;
                circuit = c;
                current = img;
            }
        }
    }
    let op_toffolis = circuit.count_kind(GateKind::GeneralizedToffoli) - toffolis;

    let logical_wires = circuit.spec().len();
    let lowered = match args.strategy {
        Some(s) => {
            let options = LowerOptions { split_binary_toffoli: args.split_toffoli };
            Some(lower_circuit(&circuit, s.into(), options)?)
        }
        None if args.split_toffoli => {
            return Err(Failure::new(3, "--split-toffoli needs --strategy qubit-ancilla"));
        }
        None => None,
    };
    if let Some((c, _)) = &lowered {
        circuit = c.clone();
    }
    write(&args.output, circuit.to_json()?.as_bytes())?;

    let layout = RegisterLayout::new(image.dims())?;
    let (n_qubit, n_qutrit) = layout.position_radix_counts();
    writeln!(out, "wires: {} ({} before ancillas)", circuit.spec().len(), logical_wires).map_err(io_fail)?;
    writeln!(out, "encoding_toffolis: {toffolis}").map_err(io_fail)?;
    writeln!(out, "op_toffolis: {op_toffolis}").map_err(io_fail)?;
    match &lowered {
        Some((_, report)) => {
            writeln!(out, "elementary_gates: {}", report.elementary_gate_count).map_err(io_fail)?;
            writeln!(out, "ancillas: {} qutrit, {} qubit", report.qutrit_ancillas, report.qubit_ancillas)
                .map_err(io_fail)?;
        }
        None => writeln!(out, "elementary_gates: unlowered").map_err(io_fail)?,
    }
    writeln!(out, "table1_bound: {}", hqdqr_bound(n_qubit as u32, n_qutrit as u32)).map_err(io_fail)?;
    if let Some(report) = compression {
        writeln!(out, "compression_ratio: {:.6}", report.ratio).map_err(io_fail)?;
        if let Some(path) = &args.compress_report {
            write(path, report.to_csv().as_bytes())?;
        }
    }
    Ok(())
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<(), Failure> {
    let text = String::from_utf8(read(&args.circuit)?).map_err(|e| Failure::new(2, e.to_string()))?;
    let circuit = Circuit::from_json(&text)?;
    let noise = match (args.noise_l1, args.noise_l2) {
        (None, None) => None,
        (l1, l2) => Some(NoiseModel::new(l1.unwrap_or(0.0), l2.unwrap_or(0.0))?),
    };
    let sample = || sample_shots(&circuit, args.shots, noise.as_ref(), args.seed);
    let hist = match args.threads {
        Some(0) => return Err(Failure::new(3, "--threads must be at least 1")),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Failure::new(3, e.to_string()))?
            .install(sample)?,
        None => sample()?,
    };
    write(&args.output, hist.to_csv().as_bytes())
}

pub fn cmd_decode(args: &DecodeArgs) -> Result<(), Failure> {
    let dims = match (args.dims, args.height, args.width) {
        (Some(d), _, _) => d,
        (None, Some(h), Some(w)) => ImageDims::new(h, w)?,
        _ => return Err(Failure::new(2, "image size required: --dims HxW or --height and --width")),
    };
    let text = String::from_utf8(read(&args.histogram)?).map_err(|e| Failure::new(2, e.to_string()))?;
    let hist = ShotHistogram::from_csv(&text)?;
    let threshold = args.threshold.unwrap_or_else(|| default_threshold(hist.shots(), dims));
    let decoded = decode(&hist, dims, threshold)?;

    let diag_path = args.diagnostics.clone().unwrap_or_else(|| args.output.with_extension("json"));
    let diag = serde_json::to_string_pretty(&decoded.diagnostics).map_err(Error::from)?;
    write(&diag_path, diag.as_bytes())?;

    match decoded.to_image() {
        Some(image) => {
            let format = if args.ascii { PpmFormat::Ascii } else { PpmFormat::Binary };
            write(&args.output, &write_ppm(&image, format))
        }
        None => Err(Failure::new(
            4,
            format!(
                "{} of {} pixels lack a channel at threshold {threshold}",
                decoded.diagnostics.missing_pixels,
                dims.pixel_count()
            ),
        )),
    }
}

pub fn cmd_report(args: &ReportArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let counts = table1_gate_counts(args.n, args.m)?;
    out.write_all(counts.to_csv().as_bytes()).map_err(io_fail)
}

/// Parses `args` and runs, returning the process exit code.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    match run(config, &mut stdout.lock()) {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("qudisim: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ops() {
        assert_eq!("swap=RG".parse::<ImageOp>().unwrap(), ImageOp::Swap(ChannelPair::RG));
        assert_eq!("invert=b".parse::<ImageOp>().unwrap(), ImageOp::Invert(Channel::B));
        assert!("blur=R".parse::<ImageOp>().is_err());
        assert!("swap".parse::<ImageOp>().is_err());
    }

    #[test]
    fn parses_commands() {
        let c = RunConfig::try_parse_from([
            "qudisim", "encode", "in.ppm", "-o", "c.json", "--strategy", "ancilla-chain", "--ops", "swap=RG,invert=R",
        ])
        .unwrap();
        match c.command {
            Command::Encode(a) => {
                assert_eq!(a.strategy, Some(StrategyArg::AncillaChain));
                assert_eq!(a.ops.len(), 2);
            }
            _ => panic!("wrong command"),
        }
        assert!(RunConfig::try_parse_from(["qudisim", "decode", "h.csv", "-o", "x.ppm", "--dims", "3x2", "--height", "3"]).is_err());
    }

    #[test]
    fn report_output() {
        let mut buf = Vec::new();
        cmd_report(&ReportArgs { m: 1, n: 1 }, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("HQDQR,1623"));
        assert!(text.contains("MCQI,352"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::InvalidDims { height: 5, width: 5 }), 2);
        assert_eq!(exit_code(&Error::NoiseOnUnloweredCircuit(3)), 3);
    }
}
