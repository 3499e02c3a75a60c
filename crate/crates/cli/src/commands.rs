//! One function per subcommand. Each builds a serializable report and a
//! table rendering of the same data.

use std::fmt::Write as _;
use std::sync::Arc;

use clifford_mackey::characters::{
    decompose, irreps, restrict_character, restricted_kronecker, tensor_character, ClassFunction,
};
use clifford_mackey::clifford::split_top_level;
use clifford_mackey::gelfand::{gelfand_check_biinvariant, gelfand_check_characters, pair_name};
use clifford_mackey::models::{build_matrix_rep, entry_parts, RHO_MODEL_MAX_DEGREE};
use clifford_mackey::orbits::{enumerate_pair_orbits, orbit_of, predicted_orbit, Pair, PairOrbit};
use clifford_mackey::spherical::{spherical_closed_form, spherical_value, SphericalQuery};
use clifford_mackey::{
    CliffordElement, CliffordGroup, Decomposition, Error, GaussianRational, IrrepLabel,
};
use serde::Serialize;

use crate::args::{Command, Method};
use crate::verify;

/// Largest `n` for `irreps`, whose table has `(2^n + 2)²` entries.
pub const IRREPS_MAX_DEGREE: u32 = 8;

/// Largest `n` for the decomposition commands.
pub const DECOMPOSITION_MAX_DEGREE: u32 = 10;

pub struct Rendered {
    pub json: serde_json::Value,
    pub table: String,
    /// `false` when a `verify` check failed.
    pub success: bool,
}

impl Rendered {
    fn new<T: Serialize>(data: &T, table: String) -> Self {
        Self {
            json: serde_json::to_value(data).expect("reports serialize"),
            table,
            success: true,
        }
    }
}

fn guard(n: u32, max: u32, operation: &'static str) -> Result<(), Error> {
    if n > max {
        return Err(Error::DegreeTooLarge {
            degree: n,
            max,
            operation,
        });
    }
    Ok(())
}

pub fn execute(command: &Command, seed: u64) -> Result<Rendered, Error> {
    match command {
        Command::Irreps { n, matrices } => irreps_cmd(*n, *matrices),
        Command::Multiply { n, x, y } => multiply(*n, x, y),
        Command::Classes { n } => classes(*n),
        Command::Tensor { n, a, b } => tensor(*n, a, b),
        Command::Restrict {
            n,
            irreps,
            subgroup,
        } => restrict(*n, irreps, *subgroup),
        Command::Gelfand {
            n,
            subgroup,
            method,
        } => gelfand(*n, subgroup.unwrap_or(*n), *method),
        Command::Orbits { n, pair } => orbits(*n, pair.as_deref()),
        Command::Spherical { n, triple, at } => spherical(*n, triple, at),
        Command::Verify { level, criterion } => {
            let report = match criterion {
                Some(c) => verify::run_selected(&[*c], *level, seed),
                None => verify::run_all(*level, seed),
            };
            let mut out = Rendered::new(&report, report.table());
            out.success = report.passed;
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct IrrepRow {
    irrep: String,
    dim: u64,
    dual: String,
    values: Vec<String>,
}

#[derive(Serialize)]
struct MatrixEntry {
    re_num: i64,
    re_den: i64,
    im_num: i64,
    im_den: i64,
}

#[derive(Serialize)]
struct MatrixModel {
    irrep: String,
    /// Images of `γ_1, …, γ_n`, row-major.
    generators: Vec<Vec<Vec<MatrixEntry>>>,
}

#[derive(Serialize)]
struct IrrepsReport {
    n: u32,
    classes: Vec<String>,
    irreps: Vec<IrrepRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matrices: Option<Vec<MatrixModel>>,
}

fn irreps_cmd(n: u32, matrices: bool) -> Result<Rendered, Error> {
    guard(n, IRREPS_MAX_DEGREE, "irreps")?;
    if matrices {
        guard(n, RHO_MODEL_MAX_DEGREE, "irreps --matrices")?;
    }
    let group = CliffordGroup::new(n)?;
    let reps: Vec<CliffordElement> = group.classes().iter().map(|c| c.representative).collect();
    let labels = irreps(n)?;
    let mut rows = Vec::new();
    for l in &labels {
        rows.push(IrrepRow {
            irrep: l.to_string(),
            dim: l.dim(),
            dual: l.dual().to_string(),
            values: reps
                .iter()
                .map(|g| Ok(format!("{:#}", l.value(g)?)))
                .collect::<Result<_, Error>>()?,
        });
    }
    let models = if matrices {
        let mut out = Vec::new();
        for l in &labels {
            let rep = build_matrix_rep(l)?;
            let generators = rep
                .generator_images()
                .iter()
                .map(|m| {
                    (0..m.rows())
                        .map(|i| {
                            m.row(i)
                                .iter()
                                .map(|z| {
                                    let [re_num, re_den, im_num, im_den] = entry_parts(z);
                                    MatrixEntry {
                                        re_num,
                                        re_den,
                                        im_num,
                                        im_den,
                                    }
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect();
            out.push(MatrixModel {
                irrep: l.to_string(),
                generators,
            });
        }
        Some(out)
    } else {
        None
    };
    let report = IrrepsReport {
        n,
        classes: reps.iter().map(ToString::to_string).collect(),
        irreps: rows,
        matrices: models,
    };
    let mut t = String::new();
    let width = report
        .irreps
        .iter()
        .map(|r| r.irrep.len())
        .max()
        .unwrap_or(5)
        .max(5);
    let _ = writeln!(t, "{:width$}  dim  {}", "irrep", report.classes.join("  "));
    for r in &report.irreps {
        let _ = writeln!(
            t,
            "{:width$}  {:>3}  {}",
            r.irrep,
            r.dim,
            r.values.join("  ")
        );
    }
    if let Some(models) = &report.matrices {
        for m in models {
            let _ = writeln!(t, "\n{}", m.irrep);
            for (k, g) in m.generators.iter().enumerate() {
                let _ = writeln!(t, "  γ_{}:", k + 1);
                for row in g {
                    let cells: Vec<String> = row.iter().map(entry_text).collect();
                    let _ = writeln!(t, "    [{}]", cells.join(", "));
                }
            }
        }
    }
    Ok(Rendered::new(&report, t))
}

fn entry_text(e: &MatrixEntry) -> String {
    let q = GaussianRational::new(
        clifford_mackey::Rational::new(e.re_num, e.re_den),
        clifford_mackey::Rational::new(e.im_num, e.im_den),
    );
    format!("{q:#}")
}

#[derive(Serialize)]
struct MultiplyReport {
    n: u32,
    x: String,
    y: String,
    product: String,
}

fn multiply(n: u32, x: &str, y: &str) -> Result<Rendered, Error> {
    guard(n, clifford_mackey::MAX_DEGREE, "multiply")?;
    let (a, b) = (CliffordElement::parse(x, n)?, CliffordElement::parse(y, n)?);
    let p = a.multiply(&b)?;
    let report = MultiplyReport {
        n,
        x: a.to_string(),
        y: b.to_string(),
        product: p.to_string(),
    };
    let table = format!("{}\n", report.product);
    Ok(Rendered::new(&report, table))
}

#[derive(Serialize)]
struct ClassRow {
    representative: String,
    size: usize,
    members: Vec<String>,
}

#[derive(Serialize)]
struct ClassesReport {
    n: u32,
    count: usize,
    classes: Vec<ClassRow>,
}

fn classes(n: u32) -> Result<Rendered, Error> {
    guard(n, clifford_mackey::MAX_ENUMERATION_DEGREE, "classes")?;
    let group = CliffordGroup::new(n)?;
    let rows: Vec<ClassRow> = group
        .classes()
        .iter()
        .map(|c| ClassRow {
            representative: c.representative.to_string(),
            size: c.size(),
            members: c.members.iter().map(ToString::to_string).collect(),
        })
        .collect();
    let report = ClassesReport {
        n,
        count: rows.len(),
        classes: rows,
    };
    let mut t = format!("{} classes\n", report.count);
    for r in &report.classes {
        let _ = writeln!(t, "{:>2}  {}", r.size, r.members.join(" "));
    }
    Ok(Rendered::new(&report, t))
}

#[derive(Serialize)]
struct Term {
    irrep: String,
    mult: u64,
}

/// `{"terms":[{"irrep":"chi:{1}","mult":2}],"multiplicity_free":false}`
#[derive(Serialize)]
struct DecompositionReport {
    terms: Vec<Term>,
    multiplicity_free: bool,
}

fn decomposition_rendered(d: &Decomposition) -> Rendered {
    let report = DecompositionReport {
        terms: d
            .terms()
            .map(|(l, m)| Term {
                irrep: l.to_string(),
                mult: m,
            })
            .collect(),
        multiplicity_free: d.is_multiplicity_free(),
    };
    let width = report
        .terms
        .iter()
        .map(|r| r.irrep.len())
        .max()
        .unwrap_or(5)
        .max(5);
    let mut t = format!("{:width$}  mult\n", "irrep");
    for term in &report.terms {
        let _ = writeln!(t, "{:width$}  {}", term.irrep, term.mult);
    }
    let free = if report.multiplicity_free {
        "yes"
    } else {
        "no"
    };
    let _ = writeln!(t, "multiplicity-free: {free}");
    Rendered::new(&report, t)
}

fn tensor(n: u32, a: &str, b: &str) -> Result<Rendered, Error> {
    guard(n, DECOMPOSITION_MAX_DEGREE, "tensor")?;
    let (a, b) = (IrrepLabel::parse(a, n)?, IrrepLabel::parse(b, n)?);
    let group = Arc::new(CliffordGroup::new(n)?);
    Ok(decomposition_rendered(&decompose(&tensor_character(
        &group, &a, &b,
    )?)?))
}

fn restrict(n: u32, labels: &[String], subgroup: Option<u32>) -> Result<Rendered, Error> {
    guard(n, DECOMPOSITION_MAX_DEGREE, "restrict")?;
    let m = match subgroup {
        Some(m) => m,
        None if n > 0 => n - 1,
        None => return Err(Error::InvalidSubgroup { n, m: 0 }),
    };
    if m > n || m + 1 < n {
        return Err(Error::InvalidSubgroup { n, m });
    }
    let parsed = labels
        .iter()
        .map(|s| IrrepLabel::parse(s, n))
        .collect::<Result<Vec<_>, _>>()?;
    let (g, h) = (
        Arc::new(CliffordGroup::new(n)?),
        Arc::new(CliffordGroup::new(m)?),
    );
    let d = match parsed.as_slice() {
        [a] => decompose(&restrict_character(&ClassFunction::character(&g, a)?, &h)?)?,
        [a, b] => restricted_kronecker(&g, &h, a, b)?,
        _ => unreachable!("clap enforces one or two irreps"),
    };
    Ok(decomposition_rendered(&d))
}

#[derive(Serialize)]
struct Witness {
    triple: String,
    multiplicity: u64,
}

/// `{"pair":"(CL(3)xCL(3)xCL(2), diag)","gelfand":true,"max_multiplicity":1}`
#[derive(Serialize)]
struct GelfandOutput {
    pair: String,
    gelfand: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_multiplicity: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
    /// Verdict of the convolution-algebra method, when it was run.
    #[serde(skip_serializing_if = "Option::is_none")]
    biinvariant: Option<bool>,
}

fn gelfand(n: u32, m: u32, method: Method) -> Result<Rendered, Error> {
    let mut out = GelfandOutput {
        pair: pair_name(n, m),
        gelfand: false,
        max_multiplicity: None,
        witness: None,
        biinvariant: None,
    };
    if method != Method::Biinvariant {
        let r = gelfand_check_characters(n, m)?;
        out.gelfand = r.gelfand;
        out.max_multiplicity = Some(r.max_multiplicity);
        out.witness = r.witness.map(|(t, k)| Witness {
            triple: t.to_string(),
            multiplicity: k,
        });
    }
    if method != Method::Characters {
        let b = gelfand_check_biinvariant(n, m)?;
        out.biinvariant = Some(b);
        if method == Method::Biinvariant {
            out.gelfand = b;
        }
    }
    let mut t = String::new();
    if out.gelfand {
        let _ = write!(t, "{}: Gelfand pair", out.pair);
        if let Some(k) = out.max_multiplicity {
            let _ = write!(t, " (max multiplicity {k})");
        }
    } else {
        let _ = write!(t, "{}: NOT a Gelfand pair", out.pair);
        if let Some(w) = &out.witness {
            let _ = write!(t, "; witness {} multiplicity {}", w.triple, w.multiplicity);
        }
    }
    t.push('\n');
    if let Some(b) = out.biinvariant {
        let verdict = if b { "commutative" } else { "not commutative" };
        let _ = writeln!(t, "bi-invariant convolution algebra: {verdict}");
    }
    let mut rendered = Rendered::new(&out, t);
    if method == Method::Both && out.biinvariant != Some(out.gelfand) {
        rendered.success = false;
    }
    Ok(rendered)
}

#[derive(Serialize)]
struct OrbitReport {
    representative: [String; 2],
    size: usize,
    members: Vec<[String; 2]>,
    /// Whether the case analysis predicts exactly this orbit.
    predicted: bool,
}

#[derive(Serialize)]
struct OrbitsReport {
    n: u32,
    pairs: usize,
    orbit_count: usize,
    /// Number of orbits of size 1, 2 and 4.
    sizes: [usize; 3],
    orbits: Vec<OrbitReport>,
}

fn pair_strings(p: &Pair) -> [String; 2] {
    [p.0.to_string(), p.1.to_string()]
}

fn orbit_report(o: &PairOrbit) -> Result<OrbitReport, Error> {
    Ok(OrbitReport {
        representative: pair_strings(&o.representative),
        size: o.size(),
        members: o.members.iter().map(pair_strings).collect(),
        predicted: predicted_orbit(&o.representative)? == *o,
    })
}

fn orbit_line(o: &OrbitReport) -> String {
    let members: Vec<String> = o
        .members
        .iter()
        .map(|m| format!("({}, {})", m[0], m[1]))
        .collect();
    let flag = if o.predicted {
        ""
    } else {
        "  [prediction differs]"
    };
    format!("{}  {{{}}}{flag}", o.size, members.join(", "))
}

fn orbits(n: u32, pair: Option<&str>) -> Result<Rendered, Error> {
    guard(n, clifford_mackey::orbits::PAIR_ORBIT_MAX_DEGREE, "orbits")?;
    if let Some(text) = pair {
        let parts = split_top_level(text);
        if parts.len() != 2 {
            return Err(Error::Parse {
                input: text.into(),
                expected: "two comma-separated elements, e.g. \"+g{1},+g{2}\"",
            });
        }
        let p = (
            CliffordElement::parse(parts[0], n)?,
            CliffordElement::parse(parts[1], n)?,
        );
        let report = orbit_report(&orbit_of(&p)?)?;
        let table = format!("{}\n", orbit_line(&report));
        let mut rendered = Rendered::new(&report, table);
        rendered.success = report.predicted;
        return Ok(rendered);
    }
    let all = enumerate_pair_orbits(n)?;
    let orbits = all
        .iter()
        .map(orbit_report)
        .collect::<Result<Vec<_>, _>>()?;
    let mut sizes = [0; 3];
    for o in &orbits {
        sizes[o.size.trailing_zeros() as usize] += 1;
    }
    let report = OrbitsReport {
        n,
        pairs: orbits.iter().map(|o| o.size).sum(),
        orbit_count: orbits.len(),
        sizes,
        orbits,
    };
    let mut t = format!(
        "{} orbits on {} pairs (sizes 1/2/4: {}/{}/{})\n",
        report.orbit_count, report.pairs, sizes[0], sizes[1], sizes[2]
    );
    for o in &report.orbits {
        let _ = writeln!(t, "{}", orbit_line(o));
    }
    let success = report.orbits.iter().all(|o| o.predicted);
    let mut rendered = Rendered::new(&report, t);
    rendered.success = success;
    Ok(rendered)
}

#[derive(Serialize)]
struct SphericalReport {
    n: u32,
    triple: String,
    at: String,
    /// Exact value, `a/b + c/d i`.
    value: String,
    family: String,
    /// `false` when no closed form covers the triple and `value` comes from
    /// direct summation.
    analyzed: bool,
    /// Whether the closed form equals direct summation.
    agrees: bool,
}

fn spherical(n: u32, triple: &str, at: &str) -> Result<Rendered, Error> {
    guard(n, clifford_mackey::MAX_DEGREE, "spherical")?;
    let q = SphericalQuery::parse(triple, at, n)?;
    let cf = spherical_closed_form(&q);
    let direct = spherical_value(&q);
    let report = SphericalReport {
        n,
        triple: q.labels.to_string(),
        at: q.at.to_string(),
        value: direct.to_string(),
        family: cf.family.to_string(),
        analyzed: cf.analyzed,
        agrees: cf.value == direct,
    };
    let mut t = format!("{}\n", report.value);
    let status = if report.analyzed {
        format!("closed form ({}) agrees: {}", report.family, report.agrees)
    } else {
        String::from("unanalyzed family; direct summation only")
    };
    let _ = writeln!(t, "{status}");
    let mut rendered = Rendered::new(&report, t);
    rendered.success = report.agrees;
    Ok(rendered)
}
