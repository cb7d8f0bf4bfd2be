//! `mixed-moore`: bounds, constructions, verification, spectra and search
//! from the command line.
//!
//! Exit status: 0 success, 1 verification failure, 2 usage or input error,
//! 3 search budget exceeded. Diagnostic lines on stdout start with `#`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mixed_moore::bounds::{
    bipartite_digraph_bound, bipartite_graph_bound, bipartite_mixed_moore_bound, bounds_table,
    cross_check, mixed_closed_form, mixed_moore_bound, BoundParams,
};
use mixed_moore::canon::is_isomorphic;
use mixed_moore::constructions::{
    complete_bipartite, cycle, dense_family, fig2a, moore_mixed_k3, projective_plane_incidence,
    tutte_coxeter,
};
use mixed_moore::io::{parse, serialize, to_dot, write_certificate};
use mixed_moore::search::{enumerate, SearchError, SearchMode, SearchOptions, SearchSpec};
use mixed_moore::spectral::{cospectral, graph_char_poly, hoffman_identity, verify_spectrum_k3};
use mixed_moore::MixedGraph;

#[derive(Parser)]
#[command(
    name = "mixed-moore",
    version,
    about = "Degree/diameter toolkit for bipartite mixed graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Mixed,
    BipartiteMixed,
    BipartiteDigraph,
    BipartiteGraph,
}

#[derive(Clone, Copy, ValueEnum)]
enum Name {
    Kdd,
    Cycle,
    Lkdd,
    Pg,
    TutteCoxeter,
    Fig2a,
    DenseFamily,
}

#[derive(Subcommand)]
enum Command {
    /// Moore-type bound for undirected degree r, out-degree z and diameter k.
    Bound {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        z: u32,
        #[arg(long)]
        k: u32,
        /// Digraph and graph families use the total degree r + z.
        #[arg(long, value_enum, default_value = "bipartite-mixed")]
        family: Family,
    },
    /// Bipartite mixed bounds as polynomials in z, for d = 1..dmax and k = 2..kmax.
    Table {
        #[arg(long)]
        dmax: u32,
        #[arg(long)]
        kmax: u32,
        /// Also print an aligned grid.
        #[arg(long)]
        pretty: bool,
    },
    /// Build a graph and write it in the plain-text format.
    Construct {
        #[arg(long, value_enum)]
        name: Name,
        /// Degree for kdd and lkdd.
        #[arg(long)]
        d: Option<usize>,
        /// Length for cycle.
        #[arg(long)]
        n: Option<usize>,
        /// Orient the cycle.
        #[arg(long)]
        directed: bool,
        /// Prime order for pg and dense-family with k = 4.
        #[arg(long)]
        q: Option<u32>,
        /// Diameter for dense-family (4 or 5).
        #[arg(long)]
        k: Option<u32>,
        /// Write DOT instead of the graph format.
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check regularity, bipartiteness, diameter and bound attainment.
    Verify {
        file: PathBuf,
        /// Expected degrees as "r,z".
        #[arg(long, value_parser = parse_pair)]
        expect_regular: Option<(usize, usize)>,
        #[arg(long)]
        expect_diameter: Option<usize>,
        /// Require the order to equal the bipartite mixed Moore bound.
        #[arg(long)]
        moore: bool,
    },
    /// Exact characteristic polynomial and spectral identities.
    Spectrum {
        file: PathBuf,
        #[arg(long)]
        check_k3: bool,
        #[arg(long)]
        check_hoffman: bool,
        #[arg(long)]
        cospectral: Option<PathBuf>,
    },
    /// Isomorph-free enumeration of totally (r,z)-regular bipartite mixed graphs.
    Search {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        z: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Largest order accepted.
        #[arg(long, default_value_t = 14)]
        budget: usize,
        /// Node limit for the general (r,z) generator.
        #[arg(long)]
        max_nodes: Option<u64>,
        #[arg(long)]
        threads: Option<usize>,
        /// Stop at the first graph found.
        #[arg(long)]
        first_witness: bool,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Decide isomorphism of two graph files.
    Iso { file1: PathBuf, file2: PathBuf },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected r,z, got '{s}'"))?;
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad number '{t}'"))
    };
    Ok((num(a)?, num(b)?))
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: 2,
        message: message.to_string(),
    }
}

fn read_graph(path: &Path) -> Result<MixedGraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let parsed = parse(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    for w in &parsed.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(parsed.graph)
}

fn bound(r: u32, z: u32, k: u32, family: Family, out: &mut String) -> Result<u8, Failure> {
    let p = BoundParams::new(r, z, k).map_err(usage)?;
    let value = match family {
        Family::Mixed => mixed_moore_bound(p),
        Family::BipartiteMixed => bipartite_mixed_moore_bound(p),
        Family::BipartiteDigraph => bipartite_digraph_bound(p.d(), k),
        Family::BipartiteGraph => bipartite_graph_bound(p.d(), k),
    }
    .map_err(usage)?;
    let _ = writeln!(out, "{}", value.value);
    let _ = writeln!(out, "# method={}", value.method);
    match family {
        Family::BipartiteMixed => {
            let c = cross_check(p).map_err(usage)?;
            let _ = writeln!(
                out,
                "# parity-sum={} edge-hanging-sum={} closed-form={:.6} agree={}",
                c.parity_sum,
                c.edge_hanging_sum,
                c.closed_form,
                if c.agrees(1e-6) { "yes" } else { "no" }
            );
        }
        Family::Mixed => {
            let _ = writeln!(out, "# closed-form={:.6}", mixed_closed_form(p));
        }
        _ => {}
    }
    Ok(0)
}

fn table(dmax: u32, kmax: u32, pretty: bool, out: &mut String) -> Result<u8, Failure> {
    let t = bounds_table(dmax, kmax).map_err(usage)?;
    for k in 2..=kmax {
        for d in 1..=dmax {
            let _ = writeln!(out, "d={d} k={k}: {}", t.get(d, k).expect("cell in range"));
        }
    }
    if pretty {
        let cells: Vec<Vec<String>> = (1..=dmax)
            .map(|d| {
                (2..=kmax)
                    .map(|k| t.get(d, k).expect("cell in range").to_string())
                    .collect()
            })
            .collect();
        let width = cells
            .iter()
            .flatten()
            .map(String::len)
            .max()
            .unwrap_or(0)
            .max(4);
        let mut header = String::from("#  d ");
        for k in 2..=kmax {
            let _ = write!(header, " | {:>width$}", format!("k={k}"));
        }
        let _ = writeln!(out, "{header}");
        for (i, row) in cells.iter().enumerate() {
            let mut line = format!("# {:>2} ", i + 1);
            for c in row {
                let _ = write!(line, " | {c:>width$}");
            }
            let _ = writeln!(out, "{line}");
        }
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn construct(
    name: Name,
    d: Option<usize>,
    n: Option<usize>,
    directed: bool,
    q: Option<u32>,
    k: Option<u32>,
    dot: bool,
    path: Option<PathBuf>,
    out: &mut String,
) -> Result<u8, Failure> {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| usage(format!("--{flag} is required for this construction")))
    };
    let g = match name {
        Name::Kdd => complete_bipartite(need(d, "d")?),
        Name::Cycle => cycle(need(n, "n")?, directed),
        Name::Lkdd => moore_mixed_k3(need(d, "d")?),
        Name::Pg => projective_plane_incidence(need(q.map(|q| q as usize), "q")? as u32),
        Name::TutteCoxeter => Ok(tutte_coxeter()),
        Name::Fig2a => Ok(fig2a()),
        Name::DenseFamily => dense_family(need(k.map(|k| k as usize), "k")? as u32, q),
    }
    .map_err(usage)?;
    let text = if dot { to_dot(&g) } else { serialize(&g) };
    match path {
        Some(p) => {
            fs::write(&p, text).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            let _ = writeln!(out, "{}", p.display());
            let _ = writeln!(
                out,
                "# n={} edges={} arcs={}",
                g.order(),
                g.edges().len(),
                g.arcs().len()
            );
        }
        None => out.push_str(&text),
    }
    Ok(0)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn verify(
    path: &Path,
    expect_regular: Option<(usize, usize)>,
    expect_diameter: Option<usize>,
    moore: bool,
    out: &mut String,
) -> Result<u8, Failure> {
    let g = read_graph(path)?;
    let mut ok = true;
    let _ = writeln!(out, "order {}", g.order());

    let reg = g.total_regularity();
    let reg_ok = match (expect_regular, reg) {
        (Some(e), got) => got == Some(e),
        (None, _) => !moore || reg.is_some(),
    };
    let shown = reg.map_or("none".to_string(), |(r, z)| format!("{r},{z}"));
    let _ = writeln!(out, "regularity {shown} {}", verdict(reg_ok));
    ok &= reg_ok;

    let bip = g.bipartition().is_some();
    let bip_ok = bip || !moore;
    let _ = writeln!(
        out,
        "bipartite {} {}",
        if bip { "yes" } else { "no" },
        verdict(bip_ok)
    );
    ok &= bip_ok;

    let diam = g.diameter();
    let diam_ok = match expect_diameter {
        Some(k) => diam == Some(k),
        None => diam.is_some() || !moore,
    };
    let shown = diam.map_or("infinite".to_string(), |k| k.to_string());
    let _ = writeln!(out, "diameter {shown} {}", verdict(diam_ok));
    ok &= diam_ok;

    if let (Some((r, z)), Some(k)) = (reg, diam) {
        // shortest-path multiplicities by distance
        let dist = g.distances();
        let mut max_count = vec![0u128; k + 1];
        let mut min_count = vec![u128::MAX; k + 1];
        for u in 0..g.order() {
            let (_, counts) = g.path_counts_from(u);
            for v in 0..g.order() {
                if let Some(t) = dist.get(u, v).filter(|&t| t > 0) {
                    max_count[t] = max_count[t].max(counts[v]);
                    min_count[t] = min_count[t].min(counts[v]);
                }
            }
        }
        let unique = (1..k).all(|t| max_count[t] <= 1);
        for t in 1..=k {
            if min_count[t] != u128::MAX {
                let _ = writeln!(
                    out,
                    "paths distance={t} min={} max={}",
                    min_count[t], max_count[t]
                );
            }
        }
        if let Ok(p) = BoundParams::new(r as u32, z as u32, k as u32) {
            if let Ok(b) = bipartite_mixed_moore_bound(p) {
                let attained = g.order() as i128 == b.value;
                let _ = writeln!(
                    out,
                    "bound {} {}",
                    b.value,
                    if attained { "attained" } else { "not attained" }
                );
                if moore {
                    let _ = writeln!(out, "moore {}", verdict(attained && bip));
                    let _ = writeln!(out, "unique-paths-below-diameter {}", verdict(unique));
                    ok &= attained && bip && unique;
                }
            }
        }
    } else if moore {
        let _ = writeln!(out, "moore {}", verdict(false));
        ok = false;
    }
    let _ = writeln!(out, "result {}", verdict(ok));
    Ok(if ok { 0 } else { 1 })
}

fn spectrum(
    path: &Path,
    check_k3: bool,
    check_hoffman: bool,
    other: Option<PathBuf>,
    out: &mut String,
) -> Result<u8, Failure> {
    let g = read_graph(path)?;
    let _ = writeln!(out, "charpoly {}", graph_char_poly(&g).0);
    let mut ok = true;
    let mut report = |label: &str,
                      res: Result<bool, mixed_moore::spectral::SpectralError>,
                      out: &mut String| match res {
        Ok(b) => {
            let _ = writeln!(out, "{label} {}", verdict(b));
            ok &= b;
        }
        Err(e) => {
            let _ = writeln!(out, "{label} FAIL ({e})");
            ok = false;
        }
    };
    if check_k3 {
        report("k3-spectrum", verify_spectrum_k3(&g), out);
    }
    if check_hoffman {
        report("hoffman", hoffman_identity(&g), out);
    }
    if let Some(p) = other {
        let h = read_graph(&p)?;
        let _ = writeln!(out, "charpoly2 {}", graph_char_poly(&h).0);
        report("cospectral", cospectral(&g, &h), out);
    }
    Ok(if ok { 0 } else { 1 })
}

#[allow(clippy::too_many_arguments)]
fn search(
    spec: SearchSpec,
    budget: usize,
    max_nodes: Option<u64>,
    threads: Option<usize>,
    out_dir: Option<PathBuf>,
    out: &mut String,
) -> Result<u8, Failure> {
    let mut opts = SearchOptions {
        max_order: budget,
        threads,
        ..SearchOptions::default()
    };
    if let Some(m) = max_nodes {
        opts.max_nodes = m;
    }
    let cert = enumerate(spec, &opts).map_err(|e| match e {
        SearchError::BudgetExceeded(_) => Failure {
            code: 3,
            message: e.to_string(),
        },
        SearchError::InvalidSpec(_) => usage(e),
    })?;
    let _ = writeln!(out, "count={}", cert.count());
    if let Some(dir) = out_dir {
        fs::create_dir_all(&dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
        let path = dir.join(spec.file_name());
        fs::write(&path, write_certificate(&cert))
            .map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let _ = writeln!(out, "certificate={}", path.display());
    }
    let s = cert.stats;
    let _ = writeln!(
        out,
        "# nodes={} prunes={} leaves={}",
        s.nodes, s.prunes, s.leaves
    );
    Ok(0)
}

fn run(cli: Cli, out: &mut String) -> Result<u8, Failure> {
    match cli.command {
        Command::Bound { r, z, k, family } => bound(r, z, k, family, out),
        Command::Table { dmax, kmax, pretty } => table(dmax, kmax, pretty, out),
        Command::Construct {
            name,
            d,
            n,
            directed,
            q,
            k,
            dot,
            out: path,
        } => construct(name, d, n, directed, q, k, dot, path, out),
        Command::Verify {
            file,
            expect_regular,
            expect_diameter,
            moore,
        } => verify(&file, expect_regular, expect_diameter, moore, out),
        Command::Spectrum {
            file,
            check_k3,
            check_hoffman,
            cospectral,
        } => spectrum(&file, check_k3, check_hoffman, cospectral, out),
        Command::Search {
            r,
            z,
            k,
            n,
            budget,
            max_nodes,
            threads,
            first_witness,
            out_dir,
        } => {
            let mode = if first_witness {
                SearchMode::FirstWitness
            } else {
                SearchMode::CountAll
            };
            search(
                SearchSpec { r, z, k, n, mode },
                budget,
                max_nodes,
                threads,
                out_dir,
                out,
            )
        }
        Command::Iso { file1, file2 } => {
            let (g, h) = (read_graph(&file1)?, read_graph(&file2)?);
            let _ = writeln!(
                out,
                "{}",
                if is_isomorphic(&g, &h) {
                    "isomorphic"
                } else {
                    "not isomorphic"
                }
            );
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli, &mut out);
    print!("{out}");
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
