//! Command-line front end for `mincoupling-core`.
//!
//! [`run`] parses arguments, loads the input distributions, dispatches one
//! subcommand and writes a JSON or text report. It returns the process exit
//! code: 0 on success, 1 when an input fails validation, 2 on usage or IO
//! errors.

pub mod error;
pub mod input;
pub mod report;

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use mincoupling_core::kway::DEFAULT_DENSE_CAP;
use mincoupling_core::oracle::{enumerate_vertices_capped, DEFAULT_MAX_DIMS};
use mincoupling_core::prob::{DEFAULT_EPS_SUM, DEFAULT_EPS_ZERO};
use mincoupling_core::{
    bounds, distance_interval, glb_all, k_min_entropy_coupling, min_entropy_coupling, ProbVec,
    Tolerances,
};

pub use error::CliError;
use report::{sig12, sig12_all, Base, Order, Report};

pub const ENV_EPS_SUM: &str = "MINCOUPLING_TOLERANCE_SUM";
pub const ENV_EPS_ZERO: &str = "MINCOUPLING_TOLERANCE_ZERO";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Minimum-entropy couplings of discrete distributions.
///
/// Each DIST argument is a file path, `-` for stdin, or an inline vector such
/// as "0.5 0.5" or "[0.5,0.5]". Files hold a JSON array or whitespace
/// separated decimals.
#[derive(Debug, Parser)]
#[command(name = "mincoupling", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Unit for reported entropies.
    #[arg(long, global = true, value_enum, default_value_t = Base::Bits)]
    pub base: Base,

    /// Report matrices and index tuples in sorted (non-increasing) order.
    #[arg(long, global = true)]
    pub sorted: bool,

    /// Allowed deviation of an input's total from 1.
    #[arg(long, global = true, env = ENV_EPS_SUM, default_value_t = DEFAULT_EPS_SUM)]
    pub eps_sum: f64,

    /// Values below this are treated as zero.
    #[arg(long, global = true, env = ENV_EPS_ZERO, default_value_t = DEFAULT_EPS_ZERO)]
    pub eps_zero: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Greatest lower bound of two or more distributions and its entropy.
    Glb {
        #[arg(value_name = "DIST", num_args = 2.., required = true)]
        inputs: Vec<String>,
    },
    /// Coupling within one bit of the minimum entropy.
    Couple {
        #[arg(value_name = "P")]
        p: String,
        #[arg(value_name = "Q")]
        q: String,
    },
    /// Joint distribution of k marginals within ceil(log2 k) bits of the minimum.
    CoupleK {
        #[arg(value_name = "DIST", num_args = 2.., required = true)]
        inputs: Vec<String>,
        /// Also emit the row-major dense tensor.
        #[arg(long)]
        dense: bool,
        /// Refuse dense output with more cells than this.
        #[arg(long, default_value_t = DEFAULT_DENSE_CAP)]
        dense_cap: usize,
    },
    /// Entropy bounds computable from the marginals alone.
    Bounds {
        #[arg(value_name = "P")]
        p: String,
        #[arg(value_name = "Q")]
        q: String,
    },
    /// Certified interval for the entropic distance of two distributions.
    Distance {
        #[arg(value_name = "P")]
        p: String,
        #[arg(value_name = "Q")]
        q: String,
    },
    /// Exact minimum by vertex enumeration (small instances only).
    Oracle {
        #[arg(value_name = "P")]
        p: String,
        #[arg(value_name = "Q")]
        q: String,
        /// Largest accepted len(P) + len(Q).
        #[arg(long, default_value_t = DEFAULT_MAX_DIMS)]
        max_dims: usize,
    },
}

struct Ctx<'a> {
    tol: Tolerances,
    base: Base,
    sorted: bool,
    stdin: &'a mut dyn Read,
}

impl Ctx<'_> {
    fn dist(&mut self, arg: &str) -> Result<ProbVec, CliError> {
        let raw = input::load(arg, self.stdin)?;
        Ok(ProbVec::new(&raw, &self.tol)?)
    }

    fn h(&self, bits: f64) -> f64 {
        sig12(self.base.scale(bits))
    }

    fn order(&self) -> Order {
        if self.sorted {
            Order::Sorted
        } else {
            Order::Original
        }
    }
}

fn round_rows(rows: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    rows.iter().map(|r| sig12_all(r)).collect()
}

fn execute(cmd: &Command, ctx: &mut Ctx<'_>) -> Result<Report, CliError> {
    Ok(match cmd {
        Command::Glb { inputs } => {
            let ps = inputs
                .iter()
                .map(|a| ctx.dist(a))
                .collect::<Result<Vec<_>, _>>()?;
            let z = glb_all(&ps).expect("at least two inputs");
            Report::Glb(report::GlbReport {
                base: ctx.base,
                z: sig12_all(z.values()),
                entropy: ctx.h(z.entropy()),
            })
        }
        Command::Couple { p, q } => {
            let (p, q) = (ctx.dist(p)?, ctx.dist(q)?);
            let m = min_entropy_coupling(&p, &q, &ctx.tol)?;
            let h_glb = mincoupling_core::glb(&p, &q).z.entropy();
            let (rows, cols) = m.original_shape();
            let matrix = if ctx.sorted {
                m.sorted_rows()
            } else {
                m.original_rows()
            };
            Report::Couple(report::CoupleReport {
                base: ctx.base,
                order: ctx.order(),
                rows,
                cols,
                matrix: round_rows(matrix),
                entropy: ctx.h(m.entropy()),
                glb_entropy: ctx.h(h_glb),
                gap: ctx.h(m.entropy() - h_glb),
            })
        }
        Command::CoupleK {
            inputs,
            dense,
            dense_cap,
        } => {
            let ps = inputs
                .iter()
                .map(|a| ctx.dist(a))
                .collect::<Result<Vec<_>, _>>()?;
            let joint = k_min_entropy_coupling(&ps, &ctx.tol)?;
            let h_glb = glb_all(&ps).expect("at least two inputs").entropy();
            let levels = ps.len().next_power_of_two().trailing_zeros() as f64;
            // inverse permutations: original index -> sorted position
            let ranks: Vec<Vec<usize>> = ps
                .iter()
                .map(|p| {
                    let mut r = vec![0; p.len()];
                    for (s, &o) in p.perm().iter().enumerate() {
                        r[o] = s;
                    }
                    r
                })
                .collect();
            let entries = joint
                .entries()
                .iter()
                .map(|e| report::Entry {
                    value: sig12(e.value),
                    index: if ctx.sorted {
                        e.index.iter().zip(&ranks).map(|(&i, r)| r[i]).collect()
                    } else {
                        e.index.clone()
                    },
                })
                .collect();
            let dense = if *dense {
                Some(sig12_all(&joint.to_dense(*dense_cap)?))
            } else {
                None
            };
            Report::CoupleK(report::CoupleKReport {
                base: ctx.base,
                order: ctx.order(),
                dims: joint.dims().to_vec(),
                entries,
                entropy: ctx.h(joint.entropy()),
                glb_entropy: ctx.h(h_glb),
                bound: ctx.h(h_glb + levels),
                dense,
            })
        }
        Command::Bounds { p, q } => {
            let (p, q) = (ctx.dist(p)?, ctx.dist(q)?);
            let b = bounds(&p, &q);
            Report::Bounds(report::BoundsReport {
                base: ctx.base,
                h_p: ctx.h(b.h_p),
                h_q: ctx.h(b.h_q),
                h_glb: ctx.h(b.h_glb),
                mi_upper_improved: ctx.h(b.mi_upper_improved),
                mi_upper_classic: ctx.h(b.mi_upper_classic),
                joint_lower_classic: ctx.h(b.joint_lower_classic),
            })
        }
        Command::Distance { p, q } => {
            let (p, q) = (ctx.dist(p)?, ctx.dist(q)?);
            let d = distance_interval(&p, &q, &ctx.tol)?;
            Report::Distance(report::DistanceReport {
                base: ctx.base,
                lower: ctx.h(d.lower),
                upper: ctx.h(d.upper),
                estimate: ctx.h(d.estimate),
            })
        }
        Command::Oracle { p, q, max_dims } => {
            let (p, q) = (ctx.dist(p)?, ctx.dist(q)?);
            let vertices = enumerate_vertices_capped(&p, &q, &ctx.tol, *max_dims)?;
            let count = vertices.len();
            let best = vertices
                .into_iter()
                .map(|v| (v.entropy(), v))
                .min_by(|a, b| a.0.total_cmp(&b.0))
                .ok_or(mincoupling_core::Error::InternalInvariant {
                    reason: "no vertex found",
                })?;
            let (opt, v) = best;
            let mut matrix = vec![vec![0.0; v.cols]; v.rows];
            for i in 0..v.rows {
                for j in 0..v.cols {
                    let (oi, oj) = if ctx.sorted {
                        (i, j)
                    } else {
                        (p.perm()[i], q.perm()[j])
                    };
                    matrix[oi][oj] = v.get(i, j);
                }
            }
            Report::Oracle(report::OracleReport {
                base: ctx.base,
                order: ctx.order(),
                opt: ctx.h(opt),
                rows: v.rows,
                cols: v.cols,
                matrix: round_rows(matrix),
                support_size: v.support_size,
                vertices: count,
            })
        }
    })
}

fn report_error(e: &CliError, format: Format, stderr: &mut dyn Write) {
    let _ = match format {
        Format::Json => writeln!(
            stderr,
            "{}",
            serde_json::json!({ "error": { "code": e.code(), "message": e.to_string() } })
        ),
        Format::Text => writeln!(stderr, "error[{}]: {e}", e.code()),
    };
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{rendered}");
                    2
                }
            };
        }
    };
    let tol = match Tolerances::new(cli.eps_sum, cli.eps_zero) {
        Ok(t) => t,
        Err(e) => {
            report_error(&CliError::Usage(e.to_string()), cli.format, stderr);
            return 2;
        }
    };
    let mut ctx = Ctx {
        tol,
        base: cli.base,
        sorted: cli.sorted,
        stdin,
    };
    match execute(&cli.command, &mut ctx) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
            };
            if let Err(source) = stdout.write_all(text.as_bytes()) {
                let e = CliError::Io {
                    what: "<stdout>".into(),
                    source,
                };
                report_error(&e, cli.format, stderr);
                return e.exit_code();
            }
            0
        }
        Err(e) => {
            report_error(&e, cli.format, stderr);
            e.exit_code()
        }
    }
}
