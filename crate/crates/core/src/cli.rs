//! Command-line front end. [`run`] parses arguments, writes to the given
//! sinks and returns the process exit code: 0 on success, 1 for usage or
//! parse errors, 2 when a computation hit its limits.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Value};

use crate::census::{build_census, CensusTable, Group, Identification, StringRecord};
use crate::error::Error;
use crate::invariants::{covering, covering_radii, n_values, pbm, u_polynomial};
use crate::moves::{random_homotopy, Limits};
use crate::nanoword::{letter_char, Nanoword};
use crate::store::CensusFile;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_TRUNCATED: i32 = 2;

/// Largest census computed on the fly for lookups.
const LOOKUP_CROSSINGS: usize = 5;

#[derive(Debug, Parser)]
#[command(
    name = "vstring",
    version,
    about = "Virtual strings as nanowords: invariants and census tables"
)]
pub struct Cli {
    #[command(flatten)]
    pub opts: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Worker threads (defaults to one per core).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Directory holding `census-N.json` files.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Cap on the size of one explored 3-class.
    #[arg(long, global = true, default_value_t = Limits::default().max_members)]
    pub max_members: usize,
    /// Cap on expansion steps in one 3-class walk.
    #[arg(long, global = true, default_value_t = Limits::default().max_steps)]
    pub max_steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// n-values, u-polynomial, primitive based matrix and coverings.
    Invariants {
        nanoword: String,
        #[arg(long)]
        json: bool,
    },
    /// Enumerates virtual strings up to a crossing count.
    Enumerate {
        #[arg(long, default_value_t = 4)]
        crossings: usize,
    },
    /// Renders one of the census tables (1 to 5).
    Tables {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=5))]
        which: u8,
        /// Largest crossing count shown (default 4 for tables 1-3, 5 otherwise).
        #[arg(long)]
        crossings: Option<usize>,
        /// Compute the census when no cached copy is found.
        #[arg(long)]
        compute: bool,
    },
    /// Names the census entry a nanoword is homotopic to.
    Identify { nanoword: String },
    /// Behaviour under reflection, inversion and reflected inversion.
    Symmetry { nanoword: String },
    /// The r-covering of a nanoword and its identification.
    Cover {
        #[arg(long)]
        r: u32,
        nanoword: String,
    },
    /// Applies random homotopy moves and checks that invariants survive.
    Perturb {
        nanoword: String,
        #[arg(long, default_value_t = 6)]
        steps: usize,
        /// Extra letters the walk may create.
        #[arg(long, default_value_t = 2)]
        insert_budget: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Entry point shared by the binary and the tests.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    if let Some(k) = cli.opts.jobs {
        // a pool may already exist when called repeatedly in one process
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build_global();
    }
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Truncated { .. } => EXIT_TRUNCATED,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let ctx = Context {
        opts: &cli.opts,
        limits: Limits {
            max_members: cli.opts.max_members,
            max_steps: cli.opts.max_steps,
        },
    };
    match &cli.command {
        Command::Invariants { nanoword, json } => ctx.invariants(nanoword, *json, out),
        Command::Enumerate { crossings } => ctx.enumerate(*crossings, out),
        Command::Tables {
            which,
            crossings,
            compute,
        } => ctx.tables(*which, *crossings, *compute, out),
        Command::Identify { nanoword } => ctx.identify(nanoword, out),
        Command::Symmetry { nanoword } => ctx.symmetry(nanoword, out),
        Command::Cover { r, nanoword } => ctx.cover(*r, nanoword, out),
        Command::Perturb {
            nanoword,
            steps,
            insert_budget,
            trials,
            seed,
        } => ctx.perturb(nanoword, *steps, *insert_budget, *trials, *seed, out),
    }
}

struct Context<'a> {
    opts: &'a GlobalOpts,
    limits: Limits,
}

fn parse(text: &str) -> Result<Nanoword, Failure> {
    Ok(Nanoword::parse_loose(text)?)
}

impl Context<'_> {
    fn json(&self, forced: bool) -> bool {
        forced || self.opts.format == Format::Json
    }

    /// Cached census covering `n` crossings, computing (and caching) it
    /// when `compute` allows.
    fn census(&self, n: usize, compute: bool) -> Result<CensusTable, Failure> {
        if let Some(dir) = &self.opts.cache {
            if let Some(file) = CensusFile::find(dir, n)? {
                return Ok(file.table());
            }
        }
        if !compute {
            return Err(Failure::Usage(format!(
                "no cached census for {n} crossings; pass --cache DIR holding one, or --compute"
            )));
        }
        let table = build_census(n, self.limits)?;
        if let Some(dir) = &self.opts.cache {
            CensusFile::new(&table, n, self.limits).save(dir)?;
        }
        Ok(table)
    }

    fn lookup_census(&self, nw: &Nanoword) -> Result<CensusTable, Failure> {
        self.census(nw.letter_count().min(LOOKUP_CROSSINGS), true)
    }

    fn invariants(&self, text: &str, json: bool, out: &mut dyn Write) -> Outcome {
        let nw = parse(text)?;
        let census = self.lookup_census(&nw)?;
        let n = n_values(&nw).n;
        let u = u_polynomial(&nw);
        let p = pbm(&nw);
        let mut covers = BTreeMap::new();
        for r in covering_radii(&nw) {
            let c = covering(&nw, r);
            let id = census.identify(&c, self.limits)?;
            covers.insert(r, (covering_text(&nw, r), id.to_string()));
        }
        if self.json(json) {
            let n_map: serde_json::Map<String, Value> = n
                .iter()
                .enumerate()
                .map(|(l, v)| (letter_char(l as u8).to_string(), json!(v)))
                .collect();
            let cov: serde_json::Map<String, Value> = covers
                .iter()
                .map(|(r, (w, id))| (r.to_string(), json!({"nanoword": w, "id": id})))
                .collect();
            let v = json!({
                "nanoword": nw.to_string(),
                "n": n_map,
                "u": u.to_string(),
                "u_pairs": u.pairs(),
                "rho": p.rho,
                "phi": p.phi,
                "coverings": cov,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
        } else {
            let n_text: Vec<String> = n
                .iter()
                .enumerate()
                .map(|(l, v)| format!("{}:{v}", letter_char(l as u8)))
                .collect();
            writeln!(out, "nanoword  {nw}")?;
            writeln!(
                out,
                "{}",
                format!("n         {}", n_text.join(" ")).trim_end()
            )?;
            writeln!(out, "u         {u}")?;
            writeln!(out, "rho       {}", p.rho)?;
            writeln!(out, "phi       {}", p.phi_text())?;
            for (r, (w, id)) in &covers {
                writeln!(out, "cover {r}   {w} -> {id}")?;
            }
        }
        Ok(EXIT_OK)
    }

    fn enumerate(&self, n: usize, out: &mut dyn Write) -> Outcome {
        let table = build_census(n, self.limits)?;
        if let Some(dir) = &self.opts.cache {
            CensusFile::new(&table, n, self.limits).save(dir)?;
        }
        let rows: Vec<&StringRecord> = table
            .records
            .iter()
            .filter(|r| r.crossings() == n)
            .collect();
        self.render_records(&rows, out)?;
        if self.opts.format == Format::Text {
            let groups = table.unresolved.len();
            let split = table.covering_separated.len();
            if groups + split > 0 {
                writeln!(
                    out,
                    "\n{groups} unresolved group(s), {split} group(s) separated only by coverings"
                )?;
            }
        }
        Ok(EXIT_OK)
    }

    fn tables(
        &self,
        which: u8,
        crossings: Option<usize>,
        compute: bool,
        out: &mut dyn Write,
    ) -> Outcome {
        let n = crossings.unwrap_or(if which <= 3 { 4 } else { 5 });
        let census = self.census(n, compute)?;
        let upto: Vec<&StringRecord> = census
            .records
            .iter()
            .filter(|r| r.crossings() <= n)
            .collect();
        match which {
            1 => self.render_records(&upto, out)?,
            2 => self.render_counts(&census, n, out)?,
            3 => self.render_symmetry(&census, n, out)?,
            4 => self.render_groups(&census.covering_separated, true, out)?,
            _ => self.render_groups(&census.unresolved, false, out)?,
        }
        Ok(EXIT_OK)
    }

    fn identify(&self, text: &str, out: &mut dyn Write) -> Outcome {
        let nw = parse(text)?;
        let census = self.lookup_census(&nw)?;
        let id = census.identify(&nw, self.limits)?;
        if self.json(false) {
            let v = match &id {
                Identification::Known(id) => json!({"status": "known", "id": id}),
                Identification::Ambiguous(g) => {
                    json!({"status": "ambiguous", "group": g.iter().map(|w| w.to_string()).collect::<Vec<_>>()})
                }
                Identification::Unknown => json!({"status": "unknown"}),
            };
            writeln!(out, "{v}")?;
        } else {
            writeln!(out, "{id}")?;
        }
        Ok(EXIT_OK)
    }

    fn symmetry(&self, text: &str, out: &mut dyn Write) -> Outcome {
        let nw = parse(text)?;
        let census = self.lookup_census(&nw)?;
        let Identification::Known(id) = census.identify(&nw, self.limits)? else {
            writeln!(out, "unknown")?;
            return Ok(EXIT_OK);
        };
        let record = census.record(&id).expect("identified record").clone();
        let s = census.symmetry_classify(&record, self.limits)?;
        if self.json(false) {
            writeln!(out, "{}", json!({"id": id, "symmetry": s}))?;
        } else {
            writeln!(out, "id              {id}")?;
            writeln!(out, "mirror          {}", s.mirror)?;
            writeln!(out, "inverse         {}", s.inverse)?;
            writeln!(out, "mirror-inverse  {}", s.mirror_inverse)?;
            writeln!(out, "type            {}", s.kind)?;
        }
        Ok(EXIT_OK)
    }

    fn cover(&self, r: u32, text: &str, out: &mut dyn Write) -> Outcome {
        if r == 0 {
            return Err(Failure::Usage("--r must be at least 1".into()));
        }
        let nw = parse(text)?;
        let census = self.lookup_census(&nw)?;
        let c = covering(&nw, r);
        let id = census.identify(&c, self.limits)?;
        let w = covering_text(&nw, r);
        if self.json(false) {
            writeln!(
                out,
                "{}",
                json!({"r": r, "covering": w, "normalized": c.to_string(), "id": id.to_string()})
            )?;
        } else {
            writeln!(out, "{w}")?;
            writeln!(out, "identified {id}")?;
        }
        Ok(EXIT_OK)
    }

    fn perturb(
        &self,
        text: &str,
        steps: usize,
        budget: usize,
        trials: usize,
        seed: u64,
        out: &mut dyn Write,
    ) -> Outcome {
        let nw = parse(text)?;
        let (u, p) = (u_polynomial(&nw), pbm(&nw));
        let mut rng = StdRng::seed_from_u64(seed);
        let mut broken = 0;
        for _ in 0..trials {
            let moved = random_homotopy(&nw, steps, budget, &mut rng);
            let same = u_polynomial(&moved) == u && pbm(&moved) == p;
            if !same {
                broken += 1;
                writeln!(out, "changed  {moved}")?;
            }
        }
        writeln!(
            out,
            "{} of {trials} perturbations preserved u and phi",
            trials - broken
        )?;
        Ok(if broken == 0 { EXIT_OK } else { EXIT_USAGE })
    }

    fn render_records(&self, rows: &[&StringRecord], out: &mut dyn Write) -> std::io::Result<()> {
        match self.opts.format {
            Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(rows).expect("json")),
            format => {
                let body: Vec<Vec<String>> = rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.id.clone(),
                            r.nanoword.to_string(),
                            r.u.to_string(),
                            r.rho.to_string(),
                            r.phi_text(),
                        ]
                    })
                    .collect();
                write_table(
                    out,
                    format,
                    &["ID", "Nanoword", "u(t)", "rho", "Based matrix"],
                    &[body],
                )
            }
        }
    }

    fn render_counts(
        &self,
        census: &CensusTable,
        n: usize,
        out: &mut dyn Write,
    ) -> std::io::Result<()> {
        let counts = census.counts(n);
        match self.opts.format {
            Format::Text => {
                let parts: Vec<String> = counts.iter().map(|(k, c)| format!("{k}:{c}")).collect();
                writeln!(out, "{}", parts.join(", "))
            }
            Format::Csv => {
                writeln!(out, "crossings,count")?;
                counts
                    .iter()
                    .try_for_each(|(k, c)| writeln!(out, "{k},{c}"))
            }
            Format::Json => {
                let m: BTreeMap<String, usize> =
                    counts.iter().map(|(k, c)| (k.to_string(), *c)).collect();
                writeln!(out, "{}", serde_json::to_string(&m).expect("json"))
            }
        }
    }

    fn render_symmetry(
        &self,
        census: &CensusTable,
        n: usize,
        out: &mut dyn Write,
    ) -> std::io::Result<()> {
        let rows: Vec<&StringRecord> = census
            .unoriented_classes()
            .into_iter()
            .filter(|r| r.crossings() <= n)
            .collect();
        let mut per_count: BTreeMap<usize, usize> = BTreeMap::new();
        for r in &rows {
            *per_count.entry(r.crossings()).or_default() += 1;
        }
        if self.opts.format == Format::Json {
            let v: Vec<Value> = rows
                .iter()
                .map(|r| json!({"id": r.id, "symmetry": r.symmetry}))
                .collect();
            return writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"));
        }
        let body: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                let s = r.symmetry.as_ref().expect("classified");
                vec![
                    r.id.clone(),
                    s.mirror.clone(),
                    s.inverse.clone(),
                    s.mirror_inverse.clone(),
                    s.kind.to_string(),
                ]
            })
            .collect();
        write_table(
            out,
            self.opts.format,
            &[
                "Virtual string",
                "Mirror",
                "Inverse",
                "Mirror-Inverse",
                "Symmetry type",
            ],
            &[body],
        )?;
        if self.opts.format == Format::Text {
            let parts: Vec<String> = per_count.iter().map(|(k, c)| format!("{k}:{c}")).collect();
            writeln!(out, "\nunoriented classes {}", parts.join(", "))?;
        }
        Ok(())
    }

    fn render_groups(
        &self,
        groups: &[Group],
        with_cover: bool,
        out: &mut dyn Write,
    ) -> std::io::Result<()> {
        if self.opts.format == Format::Json {
            return writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(groups).expect("json")
            );
        }
        let blocks: Vec<Vec<Vec<String>>> = groups
            .iter()
            .map(|g| {
                g.members
                    .iter()
                    .map(|m| {
                        let mut row = vec![m.nanoword.to_string()];
                        if with_cover {
                            row.push(g.phi_text());
                            row.push(m.coverings.get(&2).cloned().unwrap_or_else(|| "-".into()));
                        } else {
                            row.push(g.rho.to_string());
                            row.push(g.phi_text());
                        }
                        row
                    })
                    .collect()
            })
            .collect();
        let headers: &[&str] = if with_cover {
            &["Nanoword", "Based matrix", "2-covering"]
        } else {
            &["Nanoword", "rho", "Based matrix"]
        };
        write_table(out, self.opts.format, headers, &blocks)
    }
}

/// The covering under the original letter names (`BCBECE:aab`).
fn covering_text(nw: &Nanoword, r: u32) -> String {
    if r == 1 {
        return nw.to_string();
    }
    let n = n_values(nw).n;
    nw.subword_text(|l| n[l as usize] % r as i32 == 0)
}

/// Text tables pad columns and separate blocks with a blank line; CSV adds
/// a `group` column when there is more than one block.
fn write_table(
    out: &mut dyn Write,
    format: Format,
    headers: &[&str],
    blocks: &[Vec<Vec<String>>],
) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            let grouped = blocks.len() > 1;
            let mut head: Vec<String> = Vec::new();
            if grouped {
                head.push("group".into());
            }
            head.extend(headers.iter().map(|h| h.to_string()));
            writeln!(out, "{}", csv_line(&head))?;
            for (g, block) in blocks.iter().enumerate() {
                for row in block {
                    let mut cells = Vec::new();
                    if grouped {
                        cells.push((g + 1).to_string());
                    }
                    cells.extend(row.iter().cloned());
                    writeln!(out, "{}", csv_line(&cells))?;
                }
            }
            Ok(())
        }
        _ => {
            let mut width: Vec<usize> = headers.iter().map(|h| h.len()).collect();
            for row in blocks.iter().flatten() {
                for (w, cell) in width.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let line = |cells: Vec<&str>| -> String {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&width)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                padded.join(" | ").trim_end().to_string()
            };
            writeln!(out, "{}", line(headers.to_vec()))?;
            let rule: Vec<String> = width.iter().map(|w| "-".repeat(*w)).collect();
            writeln!(out, "{}", rule.join("-+-"))?;
            for (i, block) in blocks.iter().enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                for row in block {
                    writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
                }
            }
            Ok(())
        }
    }
}

fn csv_line(cells: &[String]) -> String {
    cells
        .iter()
        .map(|c| {
            if c.contains([',', '"', '\n']) {
                format!("\"{}\"", c.replace('"', "\"\""))
            } else {
                c.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}
