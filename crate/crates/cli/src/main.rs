use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use boxology::classifier::{classify_system, kautz_types};
use boxology::dsl;
use boxology::render::{Format, RankDir};
use boxology::{
    check_well_formed, decompose, default_rules, find_matches, to_dot, Catalog, ComposeError, Composer, Decomposition,
    Diagnostic, Exec, GlueMap, Match, PatternGraph, RenderOptions, SourceFile, Taxonomy, TypingRuleTable,
};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "boxology", version, about = "Check, match, compose and render typed architecture diagrams")]
struct Cli {
    /// Extra taxonomy leaves, one type path per line.
    #[arg(long, global = true, value_name = "FILE")]
    taxonomy: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CatalogOpt {
    /// Pattern catalog to use instead of the builtin one.
    #[arg(long, env = "BOXOLOGY_CATALOG", value_name = "FILE", global = true)]
    catalog: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and check files, reporting diagnostics on stderr.
    Check {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// List occurrences of catalog patterns.
    Match {
        file: PathBuf,
        #[arg(long, required_unless_present = "all", conflicts_with = "all")]
        pattern: Option<String>,
        /// Match every catalog entry.
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        catalog: CatalogOpt,
        #[arg(long)]
        json: bool,
    },
    /// Cover the processes of each pattern with elementary patterns.
    Decompose {
        file: PathBuf,
        #[command(flatten)]
        catalog: CatalogOpt,
        #[arg(long)]
        json: bool,
    },
    /// Print ML, KR, HYBRID or UNCLASSIFIED.
    Classify {
        file: PathBuf,
        #[command(flatten)]
        catalog: CatalogOpt,
        #[arg(long)]
        json: bool,
    },
    /// Report the Kautz system types evidenced by composite patterns.
    Kautz {
        file: PathBuf,
        #[command(flatten)]
        catalog: CatalogOpt,
        #[arg(long)]
        json: bool,
    },
    /// Stitch two catalog patterns on glue nodes.
    Compose {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Node pairs to fuse: leftId=rightId[,leftId=rightId...]
        #[arg(long)]
        glue: GlueMap,
        /// Name of the result (default: LEFT+RIGHT).
        #[arg(long)]
        name: Option<String>,
        #[command(flatten)]
        catalog: CatalogOpt,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Emit a Graphviz diagram.
    Render {
        file: PathBuf,
        #[arg(long, default_value = "dot")]
        format: Format,
        #[arg(long, default_value = "LR")]
        rankdir: RankDir,
        /// Show the pattern's meta entries as the graph label.
        #[arg(long)]
        show_meta: bool,
        /// Pattern to render when the file holds several.
        #[arg(long)]
        pattern: Option<String>,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Inspect the pattern catalog.
    Catalog {
        #[command(flatten)]
        catalog: CatalogOpt,
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Entry names in presentation order.
    List,
    /// Canonical text of one entry.
    Show { name: String },
}

enum Fail {
    /// Diagnostics with errors were reported.
    Errors,
    Usage(String),
}

type Outcome = Result<String, Fail>;

struct Ctx {
    taxonomy: Taxonomy,
    rules: TypingRuleTable,
}

fn read(path: &Path) -> Result<SourceFile, Fail> {
    SourceFile::read(path).map_err(|e| Fail::Usage(format!("cannot read {}: {e}", path.display())))
}

fn report(src: &SourceFile, diags: &[Diagnostic]) {
    let mut err = std::io::stderr().lock();
    for d in diags {
        let _ = writeln!(err, "{}", d.render(&src.path));
    }
}

impl Ctx {
    fn new(taxonomy_file: Option<&Path>) -> Result<Ctx, Fail> {
        let mut taxonomy = Taxonomy::default();
        if let Some(path) = taxonomy_file {
            let src = read(path)?;
            if let Err(diags) = taxonomy.load_extensions(&src) {
                report(&src, &diags);
                return Err(Fail::Errors);
            }
        }
        Ok(Ctx {
            taxonomy,
            rules: default_rules(),
        })
    }

    /// Parses and checks `src`. Returns the graphs and whether any error was
    /// reported; every diagnostic goes to stderr in source order.
    fn check_source(&self, src: &SourceFile) -> (Vec<PatternGraph>, bool) {
        let located = match dsl::parse_located(src, &self.taxonomy) {
            Ok(l) => l,
            Err(diags) => {
                report(src, &diags);
                return (Vec::new(), true);
            }
        };
        let mut diags = Vec::new();
        let mut graphs = Vec::new();
        for l in located {
            let mut ds = check_well_formed(&l.graph, &self.rules, &self.taxonomy);
            l.spans.locate_all(&mut ds);
            diags.extend(ds);
            graphs.push(l.graph);
        }
        diags.sort_by_key(|d| d.position);
        report(src, &diags);
        (graphs, diags.iter().any(Diagnostic::is_error))
    }

    fn load_checked(&self, path: &Path) -> Result<Vec<PatternGraph>, Fail> {
        let src = read(path)?;
        match self.check_source(&src) {
            (_, true) => Err(Fail::Errors),
            (graphs, false) => Ok(graphs),
        }
    }

    fn catalog(&self, opt: &CatalogOpt) -> Result<Catalog, Fail> {
        match &opt.catalog {
            None => Ok(Catalog::builtin().clone()),
            Some(path) => {
                let src = read(path)?;
                Catalog::load(&src, &self.taxonomy, &self.rules).map_err(|diags| {
                    report(&src, &diags);
                    Fail::Errors
                })
            }
        }
    }

    fn composer(&self) -> Composer<'_> {
        Composer {
            taxonomy: &self.taxonomy,
            rules: &self.rules,
        }
    }
}

fn match_line(m: &Match) -> String {
    let pairs: Vec<String> = m.mapping.iter().map(|(p, t)| format!("{p}={t}")).collect();
    format!("{}: {}\n", m.pattern, pairs.join(" "))
}

fn match_json(m: &Match) -> Value {
    json!({ "pattern": m.pattern, "mapping": m.mapping })
}

fn decomposition_json(g: &PatternGraph, d: &Decomposition) -> Value {
    json!({
        "graph": g.name(),
        "parts": d.parts.iter().map(match_json).collect::<Vec<_>>(),
        "uncovered": d.uncovered,
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Prefixes per-graph blocks with the graph name when a file holds several.
fn heading(out: &mut String, graphs: &[PatternGraph], g: &PatternGraph) {
    if graphs.len() > 1 {
        out.push_str(&format!("== {}\n", g.name()));
    }
}

fn cmd_check(ctx: &Ctx, files: &[PathBuf]) -> Outcome {
    let mut failed = false;
    for path in files {
        let src = read(path)?;
        failed |= ctx.check_source(&src).1;
    }
    if failed {
        Err(Fail::Errors)
    } else {
        Ok(String::new())
    }
}

fn cmd_match(ctx: &Ctx, file: &Path, pattern: Option<&str>, catalog: &CatalogOpt, as_json: bool) -> Outcome {
    let catalog = ctx.catalog(catalog)?;
    let patterns: Vec<&PatternGraph> = match pattern {
        Some(name) => vec![catalog
            .get(name)
            .ok_or_else(|| Fail::Usage(format!("no pattern named `{name}` in the catalog")))?],
        None => catalog.patterns().collect(),
    };
    let graphs = ctx.load_checked(file)?;
    let matches: Vec<Match> = graphs
        .iter()
        .flat_map(|g| patterns.iter().flat_map(move |p| find_matches(p, g)))
        .collect();
    if as_json {
        return Ok(pretty(&Value::Array(matches.iter().map(match_json).collect())));
    }
    Ok(matches.iter().map(match_line).collect())
}

fn decompositions(ctx: &Ctx, file: &Path, catalog: &Catalog) -> Result<Vec<(PatternGraph, Decomposition)>, Fail> {
    ctx.load_checked(file)?
        .into_iter()
        .map(|g| match decompose(&g, catalog) {
            Ok(d) => Ok((g, d)),
            Err(e) => {
                eprintln!("{}: error[decompose]: {e}", file.display());
                Err(Fail::Errors)
            }
        })
        .collect()
}

fn cmd_decompose(ctx: &Ctx, file: &Path, catalog: &CatalogOpt, as_json: bool) -> Outcome {
    let catalog = ctx.catalog(catalog)?;
    let results = decompositions(ctx, file, &catalog)?;
    if as_json {
        return Ok(pretty(&Value::Array(
            results.iter().map(|(g, d)| decomposition_json(g, d)).collect(),
        )));
    }
    let graphs: Vec<PatternGraph> = results.iter().map(|(g, _)| g.clone()).collect();
    let mut out = String::new();
    for (g, d) in &results {
        heading(&mut out, &graphs, g);
        for m in &d.parts {
            out.push_str(&match_line(m));
        }
        if d.uncovered.is_empty() {
            out.push_str("uncovered: none\n");
        } else {
            out.push_str(&format!("uncovered: {}\n", d.uncovered.join(" ")));
        }
    }
    Ok(out)
}

fn cmd_classify(ctx: &Ctx, file: &Path, catalog: &CatalogOpt, as_json: bool) -> Outcome {
    let catalog = ctx.catalog(catalog)?;
    let graphs = ctx.load_checked(file)?;
    let mut out = String::new();
    let mut docs = Vec::new();
    for g in &graphs {
        let sc = classify_system(g, &catalog).map_err(|e| {
            eprintln!("{}: error[decompose]: {e}", file.display());
            Fail::Errors
        })?;
        if as_json {
            let mut doc = decomposition_json(g, &sc.decomposition);
            doc["class"] = json!(sc.class.as_str());
            docs.push(doc);
        } else if graphs.len() > 1 {
            out.push_str(&format!("{}: {}\n", g.name(), sc.class));
        } else {
            out.push_str(&format!("{}\n", sc.class));
        }
    }
    if as_json {
        out = pretty(&Value::Array(docs));
    }
    Ok(out)
}

fn cmd_kautz(ctx: &Ctx, file: &Path, catalog: &CatalogOpt, as_json: bool) -> Outcome {
    let catalog = ctx.catalog(catalog)?;
    let graphs = ctx.load_checked(file)?;
    let mut out = String::new();
    let mut docs = Vec::new();
    for g in &graphs {
        let r = kautz_types(g, &catalog, Exec::default());
        if as_json {
            let evidence: serde_json::Map<String, Value> =
                r.evidence.iter().map(|(t, names)| (t.to_string(), json!(names))).collect();
            docs.push(json!({ "graph": g.name(), "types": r.types, "evidence": evidence }));
            continue;
        }
        heading(&mut out, &graphs, g);
        for (t, names) in &r.evidence {
            out.push_str(&format!("type {t}: {}\n", names.join(", ")));
        }
    }
    if as_json {
        out = pretty(&Value::Array(docs));
    }
    Ok(out)
}

fn write_output(output: Option<&Path>, text: String) -> Outcome {
    match output {
        None => Ok(text),
        Some(path) => {
            fs::write(path, text).map_err(|e| Fail::Usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(String::new())
        }
    }
}

fn cmd_compose(
    ctx: &Ctx,
    left: &str,
    right: &str,
    glue: &GlueMap,
    name: Option<&str>,
    catalog: &CatalogOpt,
    output: Option<&Path>,
) -> Outcome {
    let catalog = ctx.catalog(catalog)?;
    let get = |n: &str| {
        catalog
            .get(n)
            .ok_or_else(|| Fail::Usage(format!("no pattern named `{n}` in the catalog")))
    };
    let (l, r) = (get(left)?, get(right)?);
    let name = name.map_or_else(|| format!("{left}+{right}"), str::to_string);
    match ctx.composer().compose(l, r, glue, &name) {
        Ok(g) => write_output(output, dsl::print(&g)),
        Err(ComposeError::ResultIllTyped(diags)) => {
            eprintln!("{name}: error[compose]: the composed pattern fails checking");
            for d in diags {
                eprintln!("{name}: {d}");
            }
            Err(Fail::Errors)
        }
        Err(e @ ComposeError::IncompatibleGlue { .. }) => {
            eprintln!("{name}: error[compose]: {e}");
            Err(Fail::Errors)
        }
        Err(e) => Err(Fail::Usage(e.to_string())),
    }
}

fn cmd_render(ctx: &Ctx, file: &Path, opts: RenderOptions, pattern: Option<&str>, output: Option<&Path>) -> Outcome {
    let src = read(file)?;
    let graphs = dsl::parse(&src, &ctx.taxonomy).map_err(|diags| {
        report(&src, &diags);
        Fail::Errors
    })?;
    let g = match (pattern, graphs.as_slice()) {
        (Some(name), _) => graphs
            .iter()
            .find(|g| g.name() == name)
            .ok_or_else(|| Fail::Usage(format!("{} has no pattern named `{name}`", file.display())))?,
        (None, [g]) => g,
        (None, _) => {
            return Err(Fail::Usage(format!(
                "{} holds {} patterns; choose one with --pattern",
                file.display(),
                graphs.len()
            )))
        }
    };
    write_output(output, to_dot(g, &opts))
}

fn cmd_catalog(ctx: &Ctx, catalog: &CatalogOpt, action: &CatalogAction) -> Outcome {
    let catalog = ctx.catalog(catalog)?;
    match action {
        CatalogAction::List => Ok(catalog.names().map(|n| format!("{n}\n")).collect()),
        CatalogAction::Show { name } => catalog
            .get(name)
            .map(dsl::print)
            .ok_or_else(|| Fail::Usage(format!("no pattern named `{name}` in the catalog"))),
    }
}

fn run(cli: Cli) -> Outcome {
    let ctx = Ctx::new(cli.taxonomy.as_deref())?;
    match &cli.command {
        Command::Check { files } => cmd_check(&ctx, files),
        Command::Match {
            file,
            pattern,
            catalog,
            json,
            ..
        } => cmd_match(&ctx, file, pattern.as_deref(), catalog, *json),
        Command::Decompose { file, catalog, json } => cmd_decompose(&ctx, file, catalog, *json),
        Command::Classify { file, catalog, json } => cmd_classify(&ctx, file, catalog, *json),
        Command::Kautz { file, catalog, json } => cmd_kautz(&ctx, file, catalog, *json),
        Command::Compose {
            left,
            right,
            glue,
            name,
            catalog,
            output,
        } => cmd_compose(&ctx, left, right, glue, name.as_deref(), catalog, output.as_deref()),
        Command::Render {
            file,
            format,
            rankdir,
            show_meta,
            pattern,
            output,
        } => {
            let opts = RenderOptions {
                format: *format,
                rankdir: *rankdir,
                show_meta: *show_meta,
            };
            cmd_render(&ctx, file, opts, pattern.as_deref(), output.as_deref())
        }
        Command::Catalog { catalog, action } => cmd_catalog(&ctx, catalog, action),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            let _ = stdout.flush();
            ExitCode::SUCCESS
        }
        Err(Fail::Errors) => ExitCode::from(1),
        Err(Fail::Usage(msg)) => {
            eprintln!("boxology: {msg}");
            ExitCode::from(2)
        }
    }
}
