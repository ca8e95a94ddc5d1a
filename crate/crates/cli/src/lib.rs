//! Command-line front end for `isodil-core`.
//!
//! [`run`] parses arguments, writes to the given streams and returns the
//! process exit code:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | verification failed |
//! | 2 | input parse error |
//! | 3 | precondition (gate) failure |
//! | 4 | mask file error |

pub mod format;
pub mod report;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use isodil_core::refine::CONVENTION;
use isodil_core::{
    angle_table, decompose, enumerate_matrices, orbit_angles, power_identity_residual,
    render_grid, Error, GridSpec, GridTarget, IntMatrix2, Mask, Tail,
};

use crate::format::{human, sig, to_json, MACHINE_DIGITS};
use crate::report::{AnalysisReport, EllipseReport, RenderSidecar, VerifyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_GATE: i32 = 3;
pub const EXIT_MASK: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "isodil", version, about = "Rotation analysis of 2x2 integer dilation matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Freq,
    Spatial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TailArg {
    Unit,
    Centroid,
}

impl From<TailArg> for Tail {
    fn from(t: TailArg) -> Self {
        match t {
            TailArg::Unit => Tail::Unit,
            TailArg::Centroid => Tail::Centroid,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Angle classification, similarity decomposition and invariant form.
    Analyze {
        /// Matrix as "a,b;c,d".
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        #[arg(long)]
        json: bool,
    },
    /// Rotation angles over 1 <= det <= N and 0 <= trace <= M.
    Table {
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(i64).range(1..))]
        det_max: i64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(i64).range(0..))]
        trace_max: i64,
        #[arg(long)]
        csv: bool,
    },
    /// Integer matrices with given det and trace and entries in [-B, B].
    Enumerate {
        #[arg(long, allow_hyphen_values = true)]
        det: i64,
        #[arg(long, allow_hyphen_values = true)]
        trace: i64,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(i64).range(1..))]
        bound: i64,
        #[arg(long)]
        json: bool,
    },
    /// Geometry of the invariant ellipse x^T Q^-2 x = C.
    Ellipse {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        #[arg(long, default_value_t = 1.0)]
        level: f64,
        #[arg(long)]
        json: bool,
    },
    /// Rotation orbit j*theta, j = 1..N, reduced to (-pi, pi].
    Orbit {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        #[arg(short = 'n', default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        csv: bool,
    },
    /// Render |phi_hat| or its spatial reconstruction to a binary PGM.
    Render {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        #[arg(long)]
        mask: PathBuf,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        /// Half-width of the frequency window.
        #[arg(long, default_value_t = 4.0 * std::f64::consts::PI)]
        extent: f64,
        #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u32).range(1..))]
        depth: u32,
        #[arg(long, value_enum, default_value_t = Mode::Freq)]
        mode: Mode,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check the two-angle identity for phi_hat on seeded samples.
    Verify {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        #[arg(long)]
        mask: PathBuf,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        jprime: u32,
        #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 40, value_parser = clap::value_parser!(u32).range(1..))]
        depth: u32,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = TailArg::Centroid)]
        tail: TailArg,
        #[arg(long)]
        json: bool,
    },
}

/// A failure carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Mask(_) => EXIT_MASK,
            Error::InvalidInput(_) => EXIT_PARSE,
            _ => EXIT_GATE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(EXIT_PARSE, format!("I/O error: {e}"))
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

pub fn execute(cmd: &Command, out: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Analyze { matrix, json } => cmd_analyze(&parse_matrix(matrix)?, *json, out),
        Command::Table {
            det_max,
            trace_max,
            csv,
        } => cmd_table(*det_max, *trace_max, *csv, out),
        Command::Enumerate {
            det,
            trace,
            bound,
            json,
        } => cmd_enumerate(*det, *trace, *bound, *json, out),
        Command::Ellipse { matrix, level, json } => {
            cmd_ellipse(&parse_matrix(matrix)?, *level, *json, out)
        }
        Command::Orbit { matrix, n, csv } => cmd_orbit(&parse_matrix(matrix)?, *n as usize, *csv, out),
        Command::Render {
            matrix,
            mask,
            grid,
            extent,
            depth,
            mode,
            out: path,
        } => {
            let m = parse_matrix(matrix)?;
            let target = match mode {
                Mode::Freq => GridTarget::FrequencyMagnitude,
                Mode::Spatial => GridTarget::SpatialReconstruction,
            };
            let spec = GridSpec::new(*grid, *extent, target)?;
            cmd_render(&m, mask, &spec, *depth, path, out)
        }
        Command::Verify {
            matrix,
            mask,
            jprime,
            samples,
            seed,
            depth,
            tol,
            tail,
            json,
        } => {
            let m = parse_matrix(matrix)?;
            let opts = VerifyOptions {
                jprime: *jprime,
                samples: *samples as usize,
                seed: *seed,
                depth: *depth,
                tol: *tol,
                tail: (*tail).into(),
            };
            cmd_verify(&m, mask, &opts, *json, out)
        }
    }
}

pub fn parse_matrix(text: &str) -> std::result::Result<IntMatrix2, Failure> {
    text.parse()
        .map_err(|e| Failure::new(EXIT_PARSE, format!("cannot parse matrix {text:?}: {e}")))
}

fn gate(m: &IntMatrix2) -> std::result::Result<(), Failure> {
    m.rotational_gate()
        .map_err(|g| Failure::new(EXIT_GATE, format!("matrix {m} is not rotational: {g}")))
}

fn load_mask(path: &Path) -> std::result::Result<Mask, Failure> {
    Mask::load(path).map_err(|e| Failure::new(EXIT_MASK, format!("{}: {e}", path.display())))
}

fn fmt_matrix(rows: &[[f64; 2]; 2]) -> String {
    format!(
        "[[{}, {}], [{}, {}]]",
        human(rows[0][0]),
        human(rows[0][1]),
        human(rows[1][0]),
        human(rows[1][1])
    )
}

pub fn cmd_analyze(m: &IntMatrix2, json: bool, out: &mut dyn Write) -> CmdResult {
    let r = AnalysisReport::build(m)?;
    if json {
        out.write_all(to_json(&r).as_bytes())?;
        return Ok(EXIT_OK);
    }
    let opt = |v: &Option<String>| v.clone().unwrap_or_else(|| "-".into());
    let class = isodil_core::classify_angle(m);
    writeln!(out, "matrix         {m}")?;
    writeln!(out, "det            {}", r.det)?;
    writeln!(out, "trace          {}", r.trace)?;
    match &r.degeneracy {
        None => writeln!(out, "rotational     yes")?,
        Some(why) => writeln!(out, "rotational     no ({why})")?,
    }
    writeln!(out, "angle kind     {}", r.angle.kind)?;
    writeln!(out, "angle exact    {}", class.exact_label().unwrap_or_else(|| "-".into()))?;
    if let Some(t) = r.angle.theta_abs {
        writeln!(out, "|theta|        {} rad = {} deg", human(t), human(t.to_degrees()))?;
    }
    if let Some(t) = r.angle.theta_signed {
        writeln!(out, "theta signed   {} rad", human(t))?;
    }
    writeln!(out, "cos theta      {}", opt(&r.angle.cos_theta_radical))?;
    writeln!(out, "cos 2theta     {}", opt(&r.angle.cos_2theta))?;
    writeln!(out, "commensurable  {}", r.angle.commensurable)?;
    if let (Some(q), Some(rr), Some(res), Some(w)) = (&r.q, &r.r, &r.residuals, &r.invariant_form) {
        writeln!(out, "Q              {}", fmt_matrix(q))?;
        writeln!(out, "R              {}", fmt_matrix(rr))?;
        writeln!(out, "W = Q^-2       {}", fmt_matrix(w))?;
        match r.integer_form {
            Some(v) => writeln!(out, "integer form   [[{}, {}], [{}, {}]]", v[0][0], v[0][1], v[1][0], v[1][1])?,
            None => writeln!(out, "integer form   -")?,
        }
        writeln!(
            out,
            "residuals      similarity {}, orthogonality {}, invariance {}",
            human(res.similarity),
            human(res.orthogonality),
            human(res.invariance)
        )?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_table(det_max: i64, trace_max: i64, csv: bool, out: &mut dyn Write) -> CmdResult {
    let cells = angle_table(det_max, trace_max);
    if csv {
        writeln!(out, "det,trace,angle_kind,angle_exact,angle_radians,commensurable")?;
        for c in &cells {
            if c.is_inapplicable() {
                writeln!(out, "{},{},inapplicable,,,", c.delta, c.tau)?;
                continue;
            }
            writeln!(
                out,
                "{},{},{},{},{},{}",
                c.delta,
                c.tau,
                c.class.kind.as_str(),
                c.class.exact_ascii().unwrap_or_default(),
                c.class.theta_abs.map(|t| sig(t, MACHINE_DIGITS)).unwrap_or_default(),
                c.class.is_commensurable()
            )?;
        }
        return Ok(EXIT_OK);
    }
    let labels: Vec<String> = cells
        .iter()
        .map(|c| {
            if c.is_inapplicable() {
                "—".to_string()
            } else {
                c.class.exact_label().unwrap_or_default()
            }
        })
        .collect();
    let width = labels.iter().map(|s| s.chars().count()).max().unwrap_or(1).max(5);
    let pad = |s: &str| format!("{s}{}", " ".repeat(width - s.chars().count()));
    write!(out, "det\\trace")?;
    for tau in 0..=trace_max {
        write!(out, "  {}", pad(&tau.to_string()))?;
    }
    writeln!(out)?;
    for (i, delta) in (1..=det_max).enumerate() {
        write!(out, "{delta:<9}")?;
        let row = &labels[i * (trace_max as usize + 1)..(i + 1) * (trace_max as usize + 1)];
        for label in row {
            write!(out, "  {}", pad(label))?;
        }
        writeln!(out)?;
    }
    Ok(EXIT_OK)
}

pub fn cmd_enumerate(det: i64, trace: i64, bound: i64, json: bool, out: &mut dyn Write) -> CmdResult {
    let list = enumerate_matrices(det, trace, bound);
    if json {
        let entries: Vec<[i64; 4]> = list.iter().map(IntMatrix2::entries).collect();
        out.write_all(to_json(&entries).as_bytes())?;
    } else {
        for m in &list {
            writeln!(out, "{m}")?;
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_ellipse(m: &IntMatrix2, level: f64, json: bool, out: &mut dyn Write) -> CmdResult {
    gate(m)?;
    if !(level > 0.0 && level.is_finite()) {
        return Err(Failure::new(EXIT_PARSE, format!("--level must be positive, got {level}")));
    }
    let r = EllipseReport::build(m, level)?;
    if json {
        out.write_all(to_json(&r).as_bytes())?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "matrix         {m}")?;
    writeln!(out, "form W = Q^-2  {}", fmt_matrix(&r.invariant_form))?;
    match r.integer_form {
        Some(v) => writeln!(out, "integer form   [[{}, {}], [{}, {}]]", v[0][0], v[0][1], v[1][0], v[1][1])?,
        None => writeln!(out, "integer form   -")?,
    }
    writeln!(out, "level          {}", human(level))?;
    if r.circle {
        writeln!(out, "shape          circle of radius {}", human(r.semi_major))?;
    } else {
        writeln!(out, "shape          ellipse")?;
        writeln!(out, "semi-major     {}", human(r.semi_major))?;
        writeln!(out, "semi-minor     {}", human(r.semi_minor))?;
        writeln!(
            out,
            "orientation    {} rad = {} deg",
            human(r.orientation),
            human(r.orientation.to_degrees())
        )?;
    }
    writeln!(out, "residual       {}", human(r.invariance_residual))?;
    Ok(EXIT_OK)
}

/// `x` reduced to `(−π, π]`.
fn principal(x: f64) -> f64 {
    use std::f64::consts::{PI, TAU};
    if x > PI {
        x - TAU
    } else {
        x
    }
}

pub fn cmd_orbit(m: &IntMatrix2, n: usize, csv: bool, out: &mut dyn Write) -> CmdResult {
    gate(m)?;
    let d = decompose(m)?;
    let orbit = orbit_angles(d.theta_signed, n);
    if csv {
        writeln!(out, "j,angle_radians,angle_degrees")?;
    } else {
        writeln!(out, "theta = {} rad", human(d.theta_signed))?;
        writeln!(out, "{:>8}  {:>18}  {:>18}", "j", "radians", "degrees")?;
    }
    for (j, a) in orbit.angles.iter().enumerate() {
        let a = principal(*a);
        if csv {
            writeln!(out, "{},{},{}", j + 1, sig(a, MACHINE_DIGITS), sig(a.to_degrees(), MACHINE_DIGITS))?;
        } else {
            writeln!(out, "{:>8}  {:>18}  {:>18}", j + 1, human(a), human(a.to_degrees()))?;
        }
    }
    Ok(EXIT_OK)
}

/// Sidecar path for an image: `<out>.json`.
pub fn sidecar_path(image: &Path) -> PathBuf {
    let mut s = image.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

/// Binary PGM (P5, maxval 255) of `values`, scaled linearly from `[lo, hi]`.
pub fn pgm_bytes(n: usize, values: &[f64], lo: f64, hi: f64) -> Vec<u8> {
    let mut buf = format!("P5\n{n} {n}\n255\n").into_bytes();
    let span = hi - lo;
    buf.extend(values.iter().map(|&v| {
        if span > 0.0 {
            ((v - lo) / span * 255.0).round().clamp(0.0, 255.0) as u8
        } else {
            0
        }
    }));
    buf
}

pub fn cmd_render(
    m: &IntMatrix2,
    mask_path: &Path,
    spec: &GridSpec,
    depth: u32,
    path: &Path,
    out: &mut dyn Write,
) -> CmdResult {
    gate(m)?;
    let mask = load_mask(mask_path)?;
    let grid = render_grid(&mask, m, spec, depth)?;
    let (lo, hi) = grid.min_max();
    std::fs::write(path, pgm_bytes(spec.n, &grid.values, lo, hi))?;
    let side = RenderSidecar {
        matrix: m.entries(),
        mode: spec.target.as_str().to_string(),
        grid: spec.n,
        extent: spec.extent,
        depth,
        spacing: grid.spacing,
        min: lo,
        max: hi,
    };
    let side_path = sidecar_path(path);
    std::fs::write(&side_path, to_json(&side))?;
    writeln!(
        out,
        "wrote {} ({n}x{n}, {}) and {}; scaling [{}, {}]",
        path.display(),
        spec.target.as_str(),
        side_path.display(),
        human(lo),
        human(hi),
        n = spec.n
    )?;
    Ok(EXIT_OK)
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub jprime: u32,
    pub samples: usize,
    pub seed: u64,
    pub depth: u32,
    pub tol: f64,
    pub tail: Tail,
}

pub fn verify_report(m: &IntMatrix2, mask: &Mask, o: &VerifyOptions) -> std::result::Result<VerifyReport, Failure> {
    gate(m)?;
    let t = isodil_core::verify_two_angle(mask, m, o.jprime, o.samples, o.seed, o.depth, o.tail)?;
    let power = power_identity_residual(m, o.jprime)?;
    let pass = t.max_residual <= o.tol && power <= o.tol;
    Ok(VerifyReport {
        matrix: m.entries(),
        convention: CONVENTION.to_string(),
        jprime: o.jprime,
        vartheta: t.vartheta,
        samples: o.samples,
        seed: o.seed,
        depth: o.depth,
        tail: o.tail.as_str().to_string(),
        max_residual: t.max_residual,
        worst_xi: t.worst_xi,
        power_identity_residual: power,
        tol: o.tol,
        pass,
    })
}

pub fn cmd_verify(m: &IntMatrix2, mask_path: &Path, o: &VerifyOptions, json: bool, out: &mut dyn Write) -> CmdResult {
    gate(m)?;
    let mask = load_mask(mask_path)?;
    let r = verify_report(m, &mask, o)?;
    if json {
        out.write_all(to_json(&r).as_bytes())?;
    } else {
        writeln!(out, "convention               {}", r.convention)?;
        writeln!(out, "j'                       {}", r.jprime)?;
        writeln!(out, "vartheta                 {} rad", human(r.vartheta))?;
        writeln!(out, "samples / seed / depth   {} / {} / {} ({} tail)", r.samples, r.seed, r.depth, r.tail)?;
        writeln!(out, "max residual             {}", sig(r.max_residual, 3))?;
        writeln!(out, "power-identity residual  {}", sig(r.power_identity_residual, 3))?;
        writeln!(out, "tolerance                {}", sig(r.tol, 3))?;
        writeln!(out, "{}", if r.pass { "PASS" } else { "FAIL" })?;
    }
    Ok(if r.pass { EXIT_OK } else { EXIT_VERIFY_FAILED })
}
