//! arcdet: deterministic experiment runner for the arc-determinant library.
//!
//! Subcommands expose the verification suites as machine-readable tables;
//! `verify-all` runs the full acceptance suite and exits nonzero on any
//! criterion failure. All computations are seedless, so identical flags
//! produce byte-identical output.

mod table;

use arcdet::asympt::{self, LegendreArc};
use arcdet::fredholm::{closed_form_bs, convergence_report, fredholm_det};
use arcdet::kernels::{kernel_eval, kernel_from_symbol, KernelSpec, Representation};
use arcdet::toeplitz::{scaling_sequence, toeplitz_logdet_direct, ScalingFamily};
use arcdet::verify;

use clap::{Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use table::{Cell, Table};

#[derive(Parser)]
#[command(
    name = "arcdet",
    version,
    about = "Toeplitz and Wiener-Hopf determinant experiments on arc weights",
    max_term_width = 100
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format for tables
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write tables to this file instead of stdout
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,

    /// Fill omitted grid flags from a named parameter grid
    #[arg(long, global = true, value_enum)]
    preset: Option<Preset>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Preset {
    /// The acceptance-criteria grid
    Paper,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    F0,
    F1,
    F2,
    Cheb1,
    Cheb2,
    Bs,
}

#[derive(Subcommand)]
enum Command {
    /// Nystrom Fredholm determinants of K_BS(r) on [0, 2s] vs the closed form
    Fredholm {
        /// kernel parameters r (comma separated)
        #[arg(long, value_delimiter = ',')]
        r: Vec<f64>,
        /// interval parameters s (comma separated)
        #[arg(long, value_delimiter = ',')]
        s: Vec<f64>,
        /// Nystrom node count
        #[arg(long, default_value_t = 48)]
        nodes: usize,
    },
    /// Toeplitz log-determinants of scaled arc weights (alpha = 2s/n)
    Toeplitz {
        /// weight family
        #[arg(long, value_enum, default_value_t = FamilyArg::Cheb1)]
        family: FamilyArg,
        /// Bernstein-Szego parameters r (used with --family bs)
        #[arg(long, value_delimiter = ',')]
        r: Vec<f64>,
        /// scaling parameters s (comma separated; alpha = 2s/n)
        #[arg(long, value_delimiter = ',')]
        s: Vec<f64>,
        /// matrix orders n (comma separated, ascending)
        #[arg(long, value_delimiter = ',')]
        n: Vec<u32>,
        /// also run the direct-elimination determinant up to this order
        #[arg(long, default_value_t = 100)]
        direct_max: u32,
    },
    /// Kernel representations and the symbol inversion on a z grid
    Kernels {
        /// kernel parameters r (comma separated; default 0.3,1,2)
        #[arg(long, value_delimiter = ',')]
        r: Vec<f64>,
    },
    /// Exact vs asymptotic determinants of the sin(theta/2)^{+-1} weights
    Asympt {
        /// scaling parameters s (comma separated; alpha = 2s/n)
        #[arg(long, value_delimiter = ',')]
        s: Vec<f64>,
        /// matrix sizes n (comma separated)
        #[arg(long, value_delimiter = ',')]
        n: Vec<u32>,
    },
    /// Scaling sequences and Nystrom convergence tables side by side
    Converge {
        /// Bernstein-Szego parameters r (comma separated)
        #[arg(long, value_delimiter = ',')]
        r: Vec<f64>,
        /// interval/scaling parameters s (comma separated)
        #[arg(long, value_delimiter = ',')]
        s: Vec<f64>,
        /// scaling orders n; the Nystrom table doubles from 8 to --nodes
        #[arg(long, value_delimiter = ',')]
        n: Vec<u32>,
        #[arg(long, default_value_t = 64)]
        nodes: usize,
    },
    /// Run the full acceptance suite; exit 0 iff every criterion passes
    VerifyAll,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

/// Parallelism cap: ARCDET_THREADS, defaulting to the number of cores.
fn thread_cap() -> usize {
    std::env::var("ARCDET_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&t| t >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
}

/// Order-preserving parallel map over grid points.
fn parallel_map<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send + Sync,
    U: Send,
    F: Fn(&T) -> U + Sync,
{
    let threads = thread_cap().min(items.len().max(1));
    if threads <= 1 {
        return items.iter().map(&f).collect();
    }
    let slots: Vec<Mutex<Option<U>>> = items.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let v = f(&items[i]);
                *slots[i].lock().unwrap() = Some(v);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("worker filled slot"))
        .collect()
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let mut out: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(
            std::fs::File::create(path).map_err(|e| format!("cannot create {path:?}: {e}"))?,
        ),
        None => Box::new(std::io::stdout()),
    };
    match cli.command {
        Command::Fredholm { r, s, nodes } => {
            let (r, s) = fill_grid(
                cli.preset == Some(Preset::Paper),
                r,
                s,
                &[0.0, 0.5, 1.0, 2.0],
                &[0.5, 1.0, 2.0],
            );
            require_nonempty("--r", &r)?;
            require_nonempty("--s", &s)?;
            require_nonneg("--r", &r)?;
            require_nonneg("--s", &s)?;
            let grid: Vec<(f64, f64)> = r
                .iter()
                .flat_map(|&r| s.iter().map(move |&s| (r, s)))
                .collect();
            let rows = try_rows(parallel_map(grid, |&(r, s)| {
                let det = fredholm_det(&KernelSpec::bernstein_szego(r), s, nodes)
                    .map_err(|e| e.to_string())?;
                let closed = closed_form_bs(r, s);
                Ok(vec![
                    Cell::F(r),
                    Cell::F(s),
                    Cell::I(nodes as i64),
                    Cell::F(det),
                    Cell::F(closed),
                    Cell::F((det - closed).abs()),
                ])
            }))?;
            let table = Table {
                name: "fredholm",
                meta: format!(
                    "command=fredholm r={} s={} nodes={nodes}",
                    join_f(&r),
                    join_f(&s)
                ),
                headers: vec!["r", "s", "m", "nystrom", "closed_form", "abs_err"],
                rows,
            };
            emit(&mut out, cli.format, &[table])?;
        }
        Command::Toeplitz {
            family,
            r,
            s,
            n,
            direct_max,
        } => {
            let (r, s) = fill_grid(cli.preset == Some(Preset::Paper), r, s, &[1.0], &[1.0]);
            let n = if n.is_empty() && cli.preset == Some(Preset::Paper) {
                vec![50, 100, 200, 400]
            } else {
                n
            };
            require_nonempty("--s", &s)?;
            require_nonempty("--n", &n)?;
            require_nonneg("--s", &s)?;
            require_nonneg("--r", &r)?;
            let families: Vec<ScalingFamily> = match family {
                FamilyArg::F0 => vec![ScalingFamily::F0],
                FamilyArg::F1 => vec![ScalingFamily::F1],
                FamilyArg::F2 => vec![ScalingFamily::F2],
                FamilyArg::Cheb1 => vec![ScalingFamily::Chebyshev1],
                FamilyArg::Cheb2 => vec![ScalingFamily::Chebyshev2],
                FamilyArg::Bs => {
                    require_nonempty("--r", &r)?;
                    r.iter()
                        .map(|&r| ScalingFamily::BernsteinSzego { r })
                        .collect()
                }
            };
            let mut grid = Vec::new();
            for fam in &families {
                for &sv in &s {
                    for &nv in &n {
                        grid.push((*fam, sv, nv));
                    }
                }
            }
            let rows = try_rows(parallel_map(grid, |&(fam, sv, nv)| {
                let row = scaling_sequence(fam, sv, &[nv])
                    .map_err(|e| e.to_string())?
                    .remove(0);
                let direct = if nv <= direct_max {
                    let fw = fam.weight(row.alpha).map_err(|e| e.to_string())?;
                    Cell::F(
                        toeplitz_logdet_direct(&fw, nv, None)
                            .map_err(|e| e.to_string())?
                            .logmag,
                    )
                } else {
                    Cell::Empty
                };
                Ok(vec![
                    Cell::S(fam.label()),
                    Cell::F(sv),
                    Cell::I(nv as i64),
                    Cell::F(row.logdet.logmag),
                    direct,
                    row.closed_form.map_or(Cell::Empty, Cell::F),
                    row.deviation.map_or(Cell::Empty, Cell::F),
                ])
            }))?;
            let table = Table {
                name: "toeplitz",
                meta: format!(
                    "command=toeplitz family={} r={} s={} n={} direct_max={direct_max}",
                    families
                        .iter()
                        .map(|f| f.label())
                        .collect::<Vec<_>>()
                        .join("|"),
                    join_f(&r),
                    join_f(&s),
                    join_u(&n)
                ),
                headers: vec![
                    "family",
                    "s",
                    "n",
                    "logdet_product",
                    "logdet_direct",
                    "closed_form_limit",
                    "deviation",
                ],
                rows,
            };
            emit(&mut out, cli.format, &[table])?;
        }
        Command::Kernels { r } => {
            let r = if r.is_empty() { vec![0.3, 1.0, 2.0] } else { r };
            require_nonneg("--r", &r)?;
            let mut grid = Vec::new();
            for &rv in &r {
                let mut z = -10.0f64;
                while z <= 10.0 + 1e-12 {
                    grid.push((rv, z));
                    z += 0.25;
                }
            }
            let rows = parallel_map(grid, |&(rv, z)| {
                let cosh = kernel_eval(
                    &KernelSpec::bernstein_szego(rv).with_representation(Representation::CoshForm),
                    z,
                )
                .unwrap();
                let sine = if rv > 0.0 {
                    Some(
                        kernel_eval(
                            &KernelSpec::bernstein_szego(rv)
                                .with_representation(Representation::SineForm),
                            z,
                        )
                        .unwrap(),
                    )
                } else {
                    None
                };
                let bessel = if (rv - 1.0).abs() < 1e-14 {
                    Some(
                        kernel_eval(
                            &KernelSpec::bernstein_szego(rv)
                                .with_representation(Representation::BesselForm),
                            z,
                        )
                        .unwrap(),
                    )
                } else {
                    None
                };
                let mut diff = 0.0f64;
                for a in [Some(cosh), sine, bessel].iter().flatten() {
                    for b in [Some(cosh), sine, bessel].iter().flatten() {
                        diff = diff.max((a - b).abs());
                    }
                }
                let sym = kernel_from_symbol(rv, z);
                vec![
                    Cell::F(rv),
                    Cell::F(z),
                    Cell::F(cosh),
                    sine.map_or(Cell::Empty, Cell::F),
                    bessel.map_or(Cell::Empty, Cell::F),
                    Cell::F(diff),
                    Cell::F(sym),
                    Cell::F((sym - cosh).abs()),
                ]
            });
            let table = Table {
                name: "kernels",
                meta: format!("command=kernels r={} z=-10..10:0.25", join_f(&r)),
                headers: vec![
                    "r",
                    "z",
                    "cosh_form",
                    "sine_form",
                    "bessel_form",
                    "max_pairwise_diff",
                    "from_symbol",
                    "symbol_diff",
                ],
                rows,
            };
            emit(&mut out, cli.format, &[table])?;
        }
        Command::Asympt { s, n } => {
            let s = if s.is_empty() && cli.preset == Some(Preset::Paper) {
                vec![0.5, 1.0, 2.0]
            } else {
                s
            };
            let n = if n.is_empty() && cli.preset == Some(Preset::Paper) {
                vec![100, 200, 400]
            } else {
                n
            };
            require_nonempty("--s", &s)?;
            require_nonempty("--n", &n)?;
            let mut grid = Vec::new();
            for fam in [LegendreArc::F1, LegendreArc::F2] {
                for &sv in &s {
                    for &nv in &n {
                        grid.push((fam, sv, nv));
                    }
                }
            }
            let rows = try_rows(parallel_map(grid, |&(fam, sv, nv)| {
                let row = asympt::report(fam, sv, &[nv])
                    .map_err(|e| e.to_string())?
                    .remove(0);
                Ok(vec![
                    Cell::S(
                        match fam {
                            LegendreArc::F1 => "f1",
                            LegendreArc::F2 => "f2",
                        }
                        .into(),
                    ),
                    Cell::F(sv),
                    Cell::I(nv as i64),
                    Cell::F(row.exact_logdet.logmag),
                    Cell::F(row.asymptotic_logdet.logmag),
                    Cell::F(row.ratio),
                ])
            }))?;
            let table = Table {
                name: "asympt",
                meta: format!("command=asympt s={} n={}", join_f(&s), join_u(&n)),
                headers: vec![
                    "family",
                    "s",
                    "n",
                    "exact_logdet",
                    "asymptotic_logdet",
                    "ratio",
                ],
                rows,
            };
            emit(&mut out, cli.format, &[table])?;
        }
        Command::Converge { r, s, n, nodes } => {
            let (r, s) = fill_grid(cli.preset == Some(Preset::Paper), r, s, &[0.0, 1.0], &[1.0]);
            let n = if n.is_empty() {
                vec![50, 100, 200, 400]
            } else {
                n
            };
            require_nonempty("--r", &r)?;
            require_nonempty("--s", &s)?;
            require_nonneg("--r", &r)?;
            require_nonneg("--s", &s)?;
            // scaling table
            let mut grid = Vec::new();
            for &rv in &r {
                for &sv in &s {
                    for &nv in &n {
                        grid.push((rv, sv, nv));
                    }
                }
            }
            let scaling_rows = try_rows(parallel_map(grid, |&(rv, sv, nv)| {
                let fam = ScalingFamily::BernsteinSzego { r: rv };
                let row = scaling_sequence(fam, sv, &[nv])
                    .map_err(|e| e.to_string())?
                    .remove(0);
                Ok(vec![
                    Cell::F(rv),
                    Cell::F(sv),
                    Cell::I(nv as i64),
                    Cell::F(row.det),
                    Cell::F(row.closed_form.unwrap()),
                    Cell::F(row.deviation.unwrap()),
                ])
            }))?;
            let scaling = Table {
                name: "scaling",
                meta: format!(
                    "command=converge table=scaling r={} s={} n={}",
                    join_f(&r),
                    join_f(&s),
                    join_u(&n)
                ),
                headers: vec!["r", "s", "n", "det", "closed_form", "deviation"],
                rows: scaling_rows,
            };
            // Nystrom convergence table, m doubling from 8 up to `nodes`
            let mut m_list = vec![8usize];
            while *m_list.last().unwrap() * 2 <= nodes {
                m_list.push(m_list.last().unwrap() * 2);
            }
            let mut grid = Vec::new();
            for &rv in &r {
                for &sv in &s {
                    grid.push((rv, sv));
                }
            }
            let nystrom_chunks: Vec<Result<Vec<Vec<Cell>>, String>> =
                parallel_map(grid, |&(rv, sv)| {
                    let report = convergence_report(&KernelSpec::bernstein_szego(rv), sv, &m_list)
                        .map_err(|e| e.to_string())?;
                    Ok(report
                        .into_iter()
                        .map(|row| {
                            vec![
                                Cell::F(rv),
                                Cell::F(sv),
                                Cell::I(row.m as i64),
                                Cell::F(row.det),
                                Cell::F(row.err),
                            ]
                        })
                        .collect())
                });
            let nystrom_rows = nystrom_chunks
                .into_iter()
                .collect::<Result<Vec<_>, String>>()?;
            let nystrom = Table {
                name: "nystrom",
                meta: format!(
                    "command=converge table=nystrom r={} s={} m={}",
                    join_f(&r),
                    join_f(&s),
                    m_list
                        .iter()
                        .map(|m| m.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                ),
                headers: vec!["r", "s", "m", "det", "abs_err"],
                rows: nystrom_rows.into_iter().flatten().collect(),
            };
            emit(&mut out, cli.format, &[scaling, nystrom])?;
        }
        Command::VerifyAll => {
            let ids: Vec<u32> = (1..=verify::criterion_count()).collect();
            let mut results = parallel_map(ids, |&id| match id {
                1 => verify::criterion_1(),
                2 => verify::criterion_2(),
                3 => verify::criterion_3(),
                4 => verify::criterion_4(),
                5 => verify::criterion_5(),
                6 => verify::criterion_6(),
                7 => verify::criterion_7(),
                8 => verify::criterion_8(),
                _ => verify::criterion_9(),
            });
            results.sort_by_key(|r| r.id);
            let mut all_pass = true;
            let mut res = Ok(());
            for r in &results {
                res = res.and_then(|()| writeln!(out, "{}", r.line()));
                all_pass &= r.passed;
            }
            res = res.and_then(|()| {
                writeln!(
                    out,
                    "verify-all: {}",
                    if all_pass {
                        "all criteria PASS"
                    } else {
                        "FAILURES present"
                    }
                )
            });
            ignore_broken_pipe(res)?;
            return Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn require_nonneg(flag: &str, values: &[f64]) -> Result<(), String> {
    if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(format!("{flag} values must be finite and nonnegative"));
    }
    Ok(())
}

fn require_nonempty<T>(flag: &str, values: &[T]) -> Result<(), String> {
    if values.is_empty() {
        Err(format!("{flag} must be given (comma-separated list)"))
    } else {
        Ok(())
    }
}

fn fill_grid(
    preset: bool,
    r: Vec<f64>,
    s: Vec<f64>,
    preset_r: &[f64],
    preset_s: &[f64],
) -> (Vec<f64>, Vec<f64>) {
    let r = if r.is_empty() && preset {
        preset_r.to_vec()
    } else {
        r
    };
    let s = if s.is_empty() && preset {
        preset_s.to_vec()
    } else {
        s
    };
    (r, s)
}

fn join_f(v: &[f64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn join_u(v: &[u32]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn emit(out: &mut dyn Write, format: Format, tables: &[Table]) -> Result<(), String> {
    let res = match format {
        Format::Csv => {
            let mut res = Ok(());
            for (i, t) in tables.iter().enumerate() {
                if i > 0 {
                    res = res.and_then(|()| writeln!(out));
                }
                res = res.and_then(|()| t.write_csv(out));
            }
            res
        }
        Format::Json => table::write_json(out, tables),
    };
    ignore_broken_pipe(res)
}

/// A closed stdout (e.g. piping into `head`) is not an error.
fn ignore_broken_pipe(res: std::io::Result<()>) -> Result<(), String> {
    match res {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        Err(e) => Err(e.to_string()),
    }
}

/// Collect per-row results, surfacing the first failure as a usage error.
fn try_rows(rows: Vec<Result<Vec<Cell>, String>>) -> Result<Vec<Vec<Cell>>, String> {
    rows.into_iter().collect()
}
