//! The `quditsynth` command line.
//!
//! Exit status: 0 on success, 1 when a verification fails (the
//! counterexample goes to standard output as `key=value` pairs), 2 on
//! unreadable or invalid input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::format::{self, ParseError};
use crate::gates::Circuit;
use crate::pauli::{StabilizerMatrix, DEFAULT_DISTANCE_CAP};
use crate::sim::{self, SimError};
use crate::synth_css::{self, CssInput, CssOptions};
use crate::synth_stab::{self, Variant};

const FORMATS: &str = "\
File formats (indices 1-based, field elements as integers sum a_i p^i):
  field p=<p> m=<m> poly=<c0,...,cm>        first line of every file
  stabilizer:  code n=<n> k=<k>, then n-k lines 'row <x_1..x_n> | <z_1..z_n>'
  matrix:      matrix rows=<r> cols=<n>, then r lines of n entries
  circuit:     optional headers '# direction=decoder|encoder', '# qudits=<n>',
               '# pivots=<i,j,..>', then one gate per line:
               F q<i> | M q<i> gamma=<e> | P q<i> gamma=<e> | X q<i> alpha=<e>
               Z q<i> beta=<e> | ADD c=<i> t=<j> | ADDINV c=<i> t=<j>
               HORNER a=<i> x=<j> t=<k>
  '#' starts a comment.";

#[derive(Debug, Parser)]
#[command(name = "quditsynth", version, about = "Encoding circuits for qudit stabilizer codes", after_help = FORMATS)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum VariantArg {
    X,
    Z,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Synthesize decoder and encoder for a stabilizer code.
    SynthStab {
        stabilizer: PathBuf,
        #[arg(long, value_enum, default_value = "x")]
        variant: VariantArg,
        /// Directory for per-row matrix snapshots.
        #[arg(long)]
        log: Option<PathBuf>,
        /// Output name; writes <name>.dec and <name>.enc.
        #[arg(short)]
        o: PathBuf,
    },
    /// Synthesize an encoder for a CSS code from classical generator matrices.
    SynthCss {
        #[arg(long)]
        g: PathBuf,
        #[arg(long)]
        h: PathBuf,
        /// Also try the construction with the two classical codes exchanged.
        #[arg(long)]
        swap_roles: bool,
        /// Combine adjacent multiplication gates.
        #[arg(long)]
        merge_mult: bool,
        /// Accept any generator matrices and bring them into echelon form.
        #[arg(long)]
        echelonize: bool,
        #[arg(short)]
        o: PathBuf,
    },
    /// Check an encoder against a stabilizer code by dense simulation.
    Verify {
        stabilizer: PathBuf,
        #[arg(long)]
        encoder: PathBuf,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Prepend Pauli X gates so that every generator has eigenvalue 1.
        #[arg(long)]
        normalize: bool,
        /// Where to write the normalized encoder.
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Run a circuit on a basis state and print the output amplitudes.
    Simulate {
        circuit: PathBuf,
        /// Digits such as 0120, or a comma-separated list.
        #[arg(long)]
        input: String,
    },
    /// Minimum distance by exhaustive search of the symplectic dual.
    Distance {
        stabilizer: PathBuf,
        #[arg(long, default_value_t = DEFAULT_DISTANCE_CAP)]
        cap: u64,
    },
    /// Gate counts of a circuit.
    Gatecount { circuit: PathBuf },
    /// Knill-Laflamme condition for a tiny code (n <= 5, q^k <= 4, t <= 1).
    KlCheck {
        stabilizer: PathBuf,
        #[arg(long)]
        t: usize,
    },
}

#[derive(Debug)]
enum Outcome {
    Input(String),
    Failed(String),
}

type CliResult = Result<(), Outcome>;

fn input_err(path: &Path, e: impl std::fmt::Display) -> Outcome {
    Outcome::Input(format!("{}: {e}", path.display()))
}

fn read(path: &Path) -> Result<String, Outcome> {
    fs::read_to_string(path).map_err(|e| input_err(path, e))
}

fn parsed<T>(path: &Path, r: Result<T, ParseError>) -> Result<T, Outcome> {
    r.map_err(|e| input_err(path, e))
}

fn write_file(path: &Path, contents: &str) -> CliResult {
    fs::write(path, contents).map_err(|e| input_err(path, e))
}

fn load_stabilizer(path: &Path) -> Result<StabilizerMatrix, Outcome> {
    parsed(path, format::parse_stabilizer(&read(path)?))
}

fn load_circuit(path: &Path) -> Result<Circuit, Outcome> {
    parsed(path, format::parse_circuit(&read(path)?))
}

fn with_extension(base: &Path, ext: &str) -> PathBuf {
    let mut s = base.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn join(v: &[usize]) -> String {
    v.iter().map(|p| (p + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn out_line(out: &mut dyn Write, s: impl std::fmt::Display) -> CliResult {
    writeln!(out, "{s}").map_err(|e| Outcome::Input(format!("stdout: {e}")))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, errout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(errout, "{rendered}") };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(Outcome::Failed(msg)) => {
            let _ = writeln!(out, "{msg}");
            1
        }
        Err(Outcome::Input(msg)) => {
            let _ = writeln!(errout, "{msg}");
            2
        }
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> CliResult {
    match cmd {
        Command::SynthStab { stabilizer, variant, log, o } => {
            let m = load_stabilizer(&stabilizer)?;
            let variant = match variant {
                VariantArg::X => Variant::XTarget,
                VariantArg::Z => Variant::ZTarget,
            };
            let res = synth_stab::synthesize(&m, variant).map_err(|e| input_err(&stabilizer, e))?;
            if let Some(dir) = log {
                fs::create_dir_all(&dir).map_err(|e| input_err(&dir, e))?;
                for step in &res.step_log {
                    let i = step.row + 1;
                    write_file(
                        &dir.join(format!("row{i}_T.stab")),
                        &format::write_rows(m.field(), m.n(), &step.after_t),
                    )?;
                    write_file(
                        &dir.join(format!("row{i}_A.stab")),
                        &format::write_rows(m.field(), m.n(), &step.after_a),
                    )?;
                }
            }
            write_file(&with_extension(&o, "dec"), &format::write_circuit(&res.decoder))?;
            write_file(&with_extension(&o, "enc"), &format::write_circuit(&res.encoder))?;
            out_line(
                out,
                format!(
                    "adds={} singles={} pivots={} add_bound={}",
                    res.add_count,
                    res.single_count,
                    join(&res.pivots),
                    synth_stab::gate_count_bound(m.n(), m.k())
                ),
            )
        }
        Command::SynthCss { g, h, swap_roles, merge_mult, echelonize, o } => {
            let (fg, gm) = parsed(&g, format::parse_matrix(&read(&g)?))?;
            let (fh, hm) = parsed(&h, format::parse_matrix(&read(&h)?))?;
            if fg != fh {
                return Err(input_err(&h, "field differs from the field of G"));
            }
            let input = if echelonize {
                out_line(out, "note=echelonized")?;
                CssInput::echelonized(fg, gm, hm)
            } else {
                CssInput::new(fg, gm, hm)
            }
            .map_err(|e| input_err(&h, e))?;
            let res = synth_css::synthesize_css_with(&input, CssOptions { swap_roles, merge_mult })
                .map_err(|e| input_err(&h, e))?;
            write_file(&o, &format::write_circuit(&res.circuit))?;
            let (fb, ab, mb) = synth_css::css_gate_bounds(input.n(), input.k1(), input.k2());
            out_line(
                out,
                format!(
                    "fourier={} adds={} mults={} swapped={} bounds={},{},{}",
                    res.counts.fourier, res.counts.add, res.counts.mult, res.swapped, fb, ab, mb
                ),
            )
        }
        Command::Verify { stabilizer, encoder, samples, seed, normalize, o } => {
            let m = load_stabilizer(&stabilizer)?;
            let mut enc = load_circuit(&encoder)?;
            if enc.field != *m.field() || enc.n != m.n() {
                return Err(input_err(&encoder, "circuit field or width does not match the stabilizer"));
            }
            if normalize {
                enc = match sim::normalize_encoder(&m, &enc) {
                    Ok(c) => c,
                    Err(SimError::Unnormalizable) => {
                        return Err(Outcome::Failed("result=fail kind=unnormalizable".into()));
                    }
                    Err(e) => return Err(input_err(&encoder, e)),
                };
                if let Some(path) = &o {
                    write_file(path, &format::write_circuit(&enc))?;
                }
            }
            let report = sim::verify_encoder(&m, &enc, samples, seed).map_err(|e| input_err(&encoder, e))?;
            let text = report.to_string();
            if report.passed() {
                write!(out, "{text}").map_err(|e| Outcome::Input(format!("stdout: {e}")))
            } else {
                Err(Outcome::Failed(text.trim_end().to_string()))
            }
        }
        Command::Simulate { circuit, input } => {
            let c = load_circuit(&circuit)?;
            let digits = format::parse_digits(&input).map_err(|e| Outcome::Input(format!("--input: {e}")))?;
            let state = sim::simulate(&c, &digits).map_err(|e| Outcome::Input(format!("--input: {e}")))?;
            for (d, a) in state.support(1e-12) {
                let label: Vec<String> = d.iter().map(u32::to_string).collect();
                let sep = if c.field.q() <= 10 { "" } else { "," };
                out_line(out, format!("|{}> {:.6}{:+.6}i", label.join(sep), a.re, a.im))?;
            }
            Ok(())
        }
        Command::Distance { stabilizer, cap } => {
            let m = load_stabilizer(&stabilizer)?;
            let d = m.min_distance_bruteforce(cap).map_err(|e| input_err(&stabilizer, e))?;
            out_line(out, format!("d={d}"))
        }
        Command::Gatecount { circuit } => {
            let c = load_circuit(&circuit)?;
            let counts = c.counts();
            out_line(out, counts)?;
            if !c.pivots.is_empty() && c.pivots.len() < c.n {
                let bound = synth_stab::gate_count_bound(c.n, c.n - c.pivots.len());
                out_line(out, format!("add_bound={bound} within_bound={}", counts.two_qudit() <= bound))?;
            }
            Ok(())
        }
        Command::KlCheck { stabilizer, t } => {
            let m = load_stabilizer(&stabilizer)?;
            let k_states = (m.field().q() as u64).checked_pow(m.k() as u32).unwrap_or(u64::MAX);
            if m.n() > 5 || k_states > 4 || t > 1 {
                return Err(input_err(&stabilizer, SimError::KlTooLarge { n: m.n(), k: k_states as usize, t }));
            }
            let res = synth_stab::synthesize(&m, Variant::XTarget).map_err(|e| input_err(&stabilizer, e))?;
            let codewords = sim::all_codewords(&res.encoder, m.k()).map_err(|e| input_err(&stabilizer, e))?;
            let report = sim::kl_check(&codewords, t).map_err(|e| input_err(&stabilizer, e))?;
            if report.passed() {
                out_line(out, format!("result=pass codewords={} errors={}", report.codewords, report.errors.len()))
            } else {
                let v = &report.violations[0];
                Err(Outcome::Failed(format!(
                    "result=fail violations={} i={} j={} error_k={} error_l={} value={:.6}{:+.6}i",
                    report.violations.len(),
                    v.i,
                    v.j,
                    report.errors[v.k],
                    report.errors[v.l],
                    v.value.re,
                    v.value.im
                )))
            }
        }
    }
}
