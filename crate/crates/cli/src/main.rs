//! Command line front end. Every subcommand wraps one library operation
//! family and prints either plain text or, with --json, a machine-readable
//! object. Exit codes: 0 for any computed outcome, 1 when a certificate or
//! post-verification fails, 2 for usage and input errors.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use serde_json::json;

use toric_mds::arith::{format_rational, parse_rational};
use toric_mds::blowup::{class_of, degree_interval, intersect};
use toric_mds::certify::{
    certify_main1, certify_main2, example_family, scan, CertifyError, MdsCertificate,
    NonMdsCertificate, Premise, ScanOptions,
};
use toric_mds::curves::xi_over;
use toric_mds::lattice::{wps_weights, RationalPoint, RationalTriangle, WpsOutcome};
use toric_mds::laurent::{FieldSpec, LaurentPoly};
use toric_mds::sections::{
    build_zeta_p, constraint_matrix, hc_member, SectionProblem, SectionsError,
};

enum CliError {
    Usage(String),
    Input(String),
    Certificate(String),
}

fn usage() -> String {
    "usage: toric-mds <subcommand> [flags]\n\
     \n\
     subcommands:\n\
       xi --m M [--field Q|F_p]                      the family polynomial\n\
       triangle info --triangle T                    area, frame, points, fan\n\
       weights --triangle T                          weighted projective plane weights\n\
       class --poly P --triangle T [--field F]       curve class (h, e)\n\
       intersect --poly1 P --poly2 Q --triangle T    intersection number\n\
       degree-interval --poly P --triangle T         degree interval in T\n\
       sections --triangle T --order N [--vertex V]  vanishing constraint matrix (CSV)\n\
       hc --l L --triangle T --order N [--vertex V]  section-semigroup membership\n\
       zeta-p --m M --p P --alpha A --beta B         characteristic-p section\n\
       certify-main1 --m M --alpha A --beta B        Mori dream space certificate\n\
       certify-main2 --m M --alpha A --beta B [--primes 2,3,..] [--l-check N]\n\
       example-family --m M                          closed-form non-MDS family member\n\
       scan --m M --alphas A,.. --betas B,.. [--primes ..] [--l-check N]\n\
     \n\
     triangles are written \"x0,y0 x1,y1 x2,y2\"; rationals as n or n/d;\n\
     a --triangle or --poly value of @path reads the text from a file;\n\
     --json switches any subcommand to JSON output"
        .to_string()
}

struct Flags {
    values: BTreeMap<String, String>,
    switches: BTreeSet<String>,
}

impl Flags {
    fn parse(args: &[String], switch_names: &[&str]) -> Result<Flags, CliError> {
        let mut values = BTreeMap::new();
        let mut switches = BTreeSet::new();
        let mut it = args.iter();
        while let Some(a) = it.next() {
            let Some(name) = a.strip_prefix("--") else {
                return Err(CliError::Usage(format!("unexpected argument: {a}")));
            };
            if switch_names.contains(&name) {
                switches.insert(name.to_string());
            } else {
                let Some(v) = it.next() else {
                    return Err(CliError::Usage(format!("--{name} needs a value")));
                };
                values.insert(name.to_string(), v.clone());
            }
        }
        Ok(Flags { values, switches })
    }

    fn json(&self) -> bool {
        self.switches.contains("json")
    }

    fn req(&self, name: &str) -> Result<&str, CliError> {
        self.values
            .get(name)
            .map(|s| s.as_str())
            .ok_or_else(|| CliError::Usage(format!("missing required flag --{name}")))
    }

    /// Flag value, with `@path` meaning "read the value from this file".
    fn req_text(&self, name: &str) -> Result<String, CliError> {
        let raw = self.req(name)?;
        match raw.strip_prefix('@') {
            None => Ok(raw.to_string()),
            Some(path) => std::fs::read_to_string(path)
                .map(|s| s.trim().to_string())
                .map_err(|e| CliError::Input(format!("cannot read {path}: {e}"))),
        }
    }

    fn opt(&self, name: &str) -> Option<&str> {
        self.values.get(name).map(|s| s.as_str())
    }

    fn rational(&self, name: &str) -> Result<BigRational, CliError> {
        parse_rational(self.req(name)?).map_err(CliError::Input)
    }

    fn integer<T: std::str::FromStr>(&self, name: &str) -> Result<T, CliError> {
        self.req(name)?
            .parse()
            .map_err(|_| CliError::Input(format!("--{name} must be an integer")))
    }

    fn field(&self) -> Result<FieldSpec, CliError> {
        match self.opt("field") {
            None => Ok(FieldSpec::Rationals),
            Some(s) => s
                .parse()
                .map_err(|e: toric_mds::laurent::LaurentError| CliError::Input(e.to_string())),
        }
    }

    fn triangle(&self, name: &str) -> Result<RationalTriangle, CliError> {
        self.req_text(name)?
            .parse()
            .map_err(|e: toric_mds::lattice::LatticeError| CliError::Input(e.to_string()))
    }

    fn poly(&self, name: &str, field: FieldSpec) -> Result<LaurentPoly, CliError> {
        LaurentPoly::parse(&self.req_text(name)?, field)
            .map_err(|e| CliError::Input(e.to_string()))
    }

    fn point(&self, name: &str) -> Result<Option<RationalPoint>, CliError> {
        let Some(s) = self.opt(name) else {
            return Ok(None);
        };
        let mut parts = s.split(',');
        let (Some(xs), Some(ys), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(CliError::Input(format!("--{name} must look like x,y")));
        };
        let x = parse_rational(xs.trim()).map_err(CliError::Input)?;
        let y = parse_rational(ys.trim()).map_err(CliError::Input)?;
        Ok(Some(RationalPoint::new(x, y)))
    }

    fn rational_list(&self, name: &str) -> Result<Vec<BigRational>, CliError> {
        self.req(name)?
            .split(',')
            .map(|s| parse_rational(s.trim()).map_err(CliError::Input))
            .collect()
    }

    fn prime_list(&self) -> Result<Option<Vec<u64>>, CliError> {
        let Some(s) = self.opt("primes") else {
            return Ok(None);
        };
        let ps = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse()
                    .map_err(|_| CliError::Input(format!("bad prime: {t}")))
            })
            .collect::<Result<Vec<u64>, _>>()?;
        Ok(Some(ps))
    }
}

fn point_str(p: &RationalPoint) -> String {
    format!("({}, {})", format_rational(&p.x), format_rational(&p.y))
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let code = match dispatch(&args) {
        Ok(()) => 0,
        Err(CliError::Usage(msg)) => {
            eprintln!("{msg}");
            2
        }
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Certificate(msg)) => {
            eprintln!("{msg}");
            1
        }
    };
    std::process::exit(code);
}

fn dispatch(args: &[String]) -> Result<(), CliError> {
    let Some(cmd) = args.first() else {
        return Err(CliError::Usage(usage()));
    };
    match cmd.as_str() {
        "xi" => cmd_xi(&args[1..]),
        "triangle" => match args.get(1).map(|s| s.as_str()) {
            Some("info") => cmd_triangle_info(&args[2..]),
            _ => Err(CliError::Usage("usage: toric-mds triangle info --triangle T".to_string())),
        },
        "weights" => cmd_weights(&args[1..]),
        "class" => cmd_class(&args[1..]),
        "intersect" => cmd_intersect(&args[1..]),
        "degree-interval" => cmd_degree_interval(&args[1..]),
        "sections" => cmd_sections(&args[1..]),
        "hc" => cmd_hc(&args[1..]),
        "zeta-p" => cmd_zeta_p(&args[1..]),
        "certify-main1" => cmd_certify_main1(&args[1..]),
        "certify-main2" => cmd_certify_main2(&args[1..]),
        "example-family" => cmd_example_family(&args[1..]),
        "scan" => cmd_scan(&args[1..]),
        "--help" | "help" => {
            println!("{}", usage());
            Ok(())
        }
        other => Err(CliError::Usage(format!(
            "unknown subcommand: {other}\n\n{}",
            usage()
        ))),
    }
}

fn cmd_xi(args: &[String]) -> Result<(), CliError> {
    let flags = Flags::parse(args, &["json"])?;
    let m: u32 = flags.integer("m")?;
    if m == 0 {
        return Err(CliError::Input("m must be at least 1".to_string()));
    }
    let poly = xi_over(m, flags.field()?);
    if flags.json() {
        println!("{}", poly.to_json());
    } else {
        println!("{poly}");
    }
    Ok(())
}

fn cmd_triangle_info(args: &[String]) -> Result<(), CliError> {
    let flags = Flags::parse(args, &["json"])?;
    let t = flags.triangle("triangle")?;
    let points = t.lattice_points();
    let rays = t.normal_fan_rays();
    let frame = t.frame().ok();
    let weights = match wps_weights(&rays) {
        Ok(WpsOutcome::Weights(a, b, c)) => Some((a, b, c)),
        _ => None,
    };
    if flags.json() {
        println!(
            "{}",
            json!({
                "triangle": t.to_json(),
                "area": format_rational(&t.area()),
                "frame": frame.as_ref().map(|f| json!({
                    "s_left": format_rational(&f.s_left),
                    "s_right": format_rational(&f.s_right),
                })),
                "lattice_points": points.iter().map(|p| json!([p.i, p.j])).collect::<Vec<_>>(),
                "rays": rays.iter()
                    .map(|r| json!([r.u.0.to_string(), r.u.1.to_string()]))
                    .collect::<Vec<_>>(),
                "weights": weights.as_ref().map(|(a, b, c)| {
                    json!([a.to_string(), b.to_string(), c.to_string()])
                }),
            })
        );
        return Ok(());
    }
    let vs = t.vertices();
    println!(
        "vertices: {}, {}, {}",
        point_str(&vs[0]),
        point_str(&vs[1]),
        point_str(&vs[2])
    );
    println!("area: {}", format_rational(&t.area()));
    if let Some(f) = &frame {
        println!("left slope: {}", format_rational(&f.s_left));
        println!("right slope: {}", format_rational(&f.s_right));
    }
    println!("lattice points: {}", points.len());
    let ray_strs: Vec<String> = rays
        .iter()
        .map(|r| format!("({}, {})", r.u.0, r.u.1))
        .collect();
    println!("rays: {}", ray_strs.join(", "));
    match weights {
        Some((a, b, c)) => println!("weights: P({a}, {b}, {c})"),
        None => println!("weights: none"),
    }
    Ok(())
}

fn cmd_weights(args: &[String]) -> Result<(), CliError> {
    let flags = Flags::parse(args, &["json"])?;
    let t = flags.triangle("triangle")?;
    let outcome = wps_weights(&t.normal_fan_rays()).map_err(|e| CliError::Input(e.to_string()))?;
    match outcome {
        WpsOutcome::Weights(a, b, c) => {
            if flags.json() {
                println!(
                    "{}",
                    json!({"weights": [a.to_string(), b.to_string(), c.to_string()]})
                );
            } else {
                println!("P({a}, {b}, {c})");
            }
        }
        WpsOutcome::NotAWps => {
            if flags.json() {
                println!(
                    "{}",
                    json!({"weights": null, "reason": "rays generate a proper sublattice"})
                );
            } else {
                println!("not a weighted projective plane: rays generate a proper sublattice");
            }
        }
    }
    Ok(())
}

fn cmd_class(args: &[String]) -> Result<(), CliError> {
    let flags = Flags::parse(args, &["json"])?;
    let t = flags.triangle("triangle")?;
    let poly = flags.poly("poly", flags.field()?)?;
    let class = class_of(&poly, &t).map_err(|e| CliError::Input(e.to_string()))?;
    if flags.json() {
        println!("{}", class.to_json());
    } else {
        println!("{class}");
    }
    Ok(())
}

fn cmd_intersect(args: &[String]) -> Result<(), CliError> {
    let flags = Flags::parse(args, &["json"])?;
    let t = flags.triangle("triangle")?;
    let field = flags.field()?;
    let c1 = class_of(&flags.poly("poly1", field)?, &t).map_err(|e| CliError::Input(e.to_string()))?;
    let c2 = class_of(&flags.poly("poly2", field)?, &t).map_err(|e| CliError::Input(e.to_string()))?;
    let v = intersect(&c1, &c2, &t);
    if flags.json() {
        println!(
            "{}",
            json!({
                "class1": c1.to_json(),
                "class2": c2.to_json(),
                "value": format_rational(&v),
            })
        );
    } else {
        println!("{}", format_rational(&v));
    }
    Ok(())
}

fn cmd_degree_interval(args: &[String]) -> Result<(), CliError> {
    let flags = Flags::parse(args, &["json"])?;
    let t = flags.triangle("triangle")?;
    let poly = flags.poly("poly", flags.field()?)?;
    let iv = degree_interval(&poly, &t).map_err(|e| CliError::Input(e.to_string()))?;
    if flags.json() {
        println!("{}", iv.to_json());
    } else {
        println!("{iv}");
    }
    Ok(())
}

fn section_problem(flags: &Flags) -> Result<SectionProblem, CliError> {
    let t = flags.triangle("triangle")?;
    let order: u64 = flags.integer("order")?;
    let vertex = flags
        .point("vertex")?
        .unwrap_or_else(|| t.vertices()[0].clone());
    SectionProblem::new(t, order, vertex).map_err(|e| CliError::Input(e.to_string()))
}

fn cmd_sections(args: &[String]) -> Result<(), CliError> {
    let flags = Flags::parse(args, &["json"])?;
    let problem = section_problem(&flags)?;
    let matrix = constraint_matrix(&problem);
    if flags.json() {
        let points = problem.triangle.lattice_points();
        println!(
            "{}",
            json!({
                "order": problem.order,
                "points": points.iter().map(|p| json!([p.i, p.j])).collect::<Vec<_>>(),
                "rows": matrix.rows(),
                "cols": matrix.cols(),
                "csv": matrix.to_csv(),
            })
        );
    } else {
        print!("{}", matrix.to_csv());
    }
    Ok(())
}

fn cmd_hc(args: &[String]) -> Result<(), CliError> {
    let flags = Flags::parse(args, &["json"])?;
    let l: u32 = flags.integer("l")?;
    if l == 0 {
        return Err(CliError::Input("l must be at least 1".to_string()));
    }
    let t = flags.triangle("triangle")?;
    let order: u64 = flags.integer("order")?;
    let vertex = flags
        .point("vertex")?
        .unwrap_or_else(|| t.vertices()[0].clone());
    if !t.vertices().contains(&vertex) {
        return Err(CliError::Input(
            "the distinguished point must be a vertex of the triangle".to_string(),
        ));
    }
    let report = hc_member(l, &t, order, &vertex, flags.field()?);
    if flags.json() {
        println!("{}", report.to_json());
        return Ok(());
    }
    println!("member: {}", report.member);
    println!("reason: {}", report.reason);
    if let Some(dim) = report.kernel_dim {
        println!("kernel dimension: {dim}");
    }
    if let Some(w) = &report.witness {
        println!("witness: {w}");
    }
    Ok(())
}

fn cmd_zeta_p(args: &[String]) -> Result<(), CliError> {
    let flags = Flags::parse(args, &["json"])?;
    let m: u32 = flags.integer("m")?;
    let p: u64 = flags.integer("p")?;
    let alpha = flags.rational("alpha")?;
    let beta = flags.rational("beta")?;
    match build_zeta_p(m, p, &alpha, &beta) {
        Ok(r) => {
            if flags.json() {
                println!("{}", r.to_json());
            } else {
                println!("p = {} = (m+1)*{} + {}", r.p, r.k, r.l_rem);
                println!("j = {}", r.j);
                println!("degree interval: {}", r.degree);
                println!("multiplicity at (1, 1): {}", r.multiplicity);
                println!("constant term: {}", r.constant_term);
                println!("terms: {}", r.zeta.num_terms());
            }
            Ok(())
        }
        Err(SectionsError::NoValidJ { p, k }) => {
            if flags.json() {
                println!("{}", json!({"no_valid_j": true, "p": p, "k": k}));
            } else {
                println!("no valid split index for p = {p} (k = {k})");
            }
            Ok(())
        }
        Err(e @ SectionsError::PostVerificationFailed(_)) => {
            Err(CliError::Certificate(e.to_string()))
        }
        Err(e) => Err(CliError::Input(e.to_string())),
    }
}

fn print_premises(premises: &[Premise]) {
    for p in premises {
        let mark = if p.pass { "ok" } else { "FAIL" };
        println!("  [{mark}] {}: {}", p.name, p.actual);
    }
}

fn certify_exit(e: CertifyError) -> CliError {
    match e {
        CertifyError::PremiseFailed { clause } => {
            CliError::Certificate(format!("premise failed: {clause}"))
        }
        CertifyError::BadInput(msg) => CliError::Input(msg),
    }
}

fn print_mds_certificate(cert: &MdsCertificate, json: bool) {
    if json {
        println!("{}", cert.to_json());
        return;
    }
    println!("verdict: {}", cert.verdict);
    print_premises(&cert.premises);
}

fn print_non_mds_certificate(cert: &NonMdsCertificate, json: bool) {
    if json {
        println!("{}", cert.to_json());
        return;
    }
    println!("verdict: {}", cert.verdict);
    if let Some((a, b, c)) = &cert.weights {
        println!("weights: P({a}, {b}, {c})");
    }
    print_premises(&cert.premises);
    for c in &cert.caveats {
        println!("  note: {c}");
    }
}

fn cmd_certify_main1(args: &[String]) -> Result<(), CliError> {
    let flags = Flags::parse(args, &["json"])?;
    let m: u32 = flags.integer("m")?;
    let alpha = flags.rational("alpha")?;
    let beta = flags.rational("beta")?;
    let cert = certify_main1(m, &alpha, &beta).map_err(certify_exit)?;
    print_mds_certificate(&cert, flags.json());
    Ok(())
}

fn cmd_certify_main2(args: &[String]) -> Result<(), CliError> {
    let flags = Flags::parse(args, &["json"])?;
    let m: u32 = flags.integer("m")?;
    let alpha = flags.rational("alpha")?;
    let beta = flags.rational("beta")?;
    let primes = flags.prime_list()?;
    let l_check = match flags.opt("l-check") {
        Some(_) => Some(flags.integer::<u32>("l-check")?),
        None => None,
    };
    let cert = certify_main2(m, &alpha, &beta, primes.as_deref(), l_check).map_err(certify_exit)?;
    print_non_mds_certificate(&cert, flags.json());
    Ok(())
}

fn cmd_example_family(args: &[String]) -> Result<(), CliError> {
    let flags = Flags::parse(args, &["json"])?;
    let m: u32 = flags.integer("m")?;
    if m == 0 {
        return Err(CliError::Input("m must be at least 1".to_string()));
    }
    let fam = example_family(m);
    if flags.json() {
        println!("{}", fam.to_json());
        return Ok(());
    }
    println!("alpha = {}", format_rational(&fam.alpha));
    println!("beta = {}", format_rational(&fam.beta));
    let ray_strs: Vec<String> = fam
        .rays
        .iter()
        .map(|r| format!("({}, {})", r.u.0, r.u.1))
        .collect();
    println!("rays: {}", ray_strs.join(", "));
    let (a, b, c) = &fam.weights;
    println!("weights: P({a}, {b}, {c})");
    Ok(())
}

fn cmd_scan(args: &[String]) -> Result<(), CliError> {
    let flags = Flags::parse(args, &["json"])?;
    let m: u32 = flags.integer("m")?;
    let alphas = flags.rational_list("alphas")?;
    let betas = flags.rational_list("betas")?;
    let mut options = ScanOptions::default();
    if let Some(ps) = flags.prime_list()? {
        options.primes = ps;
    }
    if flags.opt("l-check").is_some() {
        options.l_check = Some(flags.integer::<u32>("l-check")?);
    }
    let table = scan(m, &alphas, &betas, &options);
    if flags.json() {
        println!("{}", table.to_json());
    } else {
        print!("{}", table.to_tsv());
    }
    Ok(())
}
