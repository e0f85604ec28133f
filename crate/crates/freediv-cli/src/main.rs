//! Command-line front end: parse rings, polynomials and derivations,
//! dispatch freeness checks and family constructions, emit and verify JSON
//! certificates.
//!
//! Exit codes: 0 certified / true, 1 check failed (not free, non-member,
//! refusal), 2 usage or parse error, 3 resource limit exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use freediv::cert::Certificate;
use freediv::deriv::Derivation;
use freediv::error::Error;
use freediv::families::{self, ConeOutcome, FamilyInstance};
use freediv::groebner::{buchberger, ideal_codim, ideal_membership, Limits, MonomialOrder};
use freediv::parse::{parse_derivation, parse_poly, parse_ring};
use freediv::poly::{Poly, Q};
use freediv::ring::RingRef;
use freediv::saito::{saito_check, verify_certificate, CheckResult};
use freediv::syzygy::{der_generators, is_free_oracle};
use freediv::weights::find_weight_vector;
use freediv::wme::{general_determinantal_freeness, wme_freeness};

#[derive(Parser)]
#[command(
    name = "freediv",
    version,
    about = "Exact freeness checks and certificates for divisors in weighted projective space"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct RingArg {
    /// Ring spec like "x:4,y:2,z:4" (weights default to 1)
    #[arg(long)]
    ring: String,
}

#[derive(Args)]
struct PolyArgs {
    #[command(flatten)]
    ring: RingArg,
    /// Polynomial in the ring variables
    #[arg(long)]
    f: String,
}

#[derive(Args)]
struct DerivArgs {
    #[command(flatten)]
    poly: PolyArgs,
    /// Derivation, either "g0; g1; ..." in variable order or sparse "dx: g, dy: h"
    #[arg(long)]
    deriv: String,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    poly: PolyArgs,
    /// Derivation (repeat the flag for several)
    #[arg(long, required = true)]
    deriv: Vec<String>,
    /// Write the certificate JSON to this path on success
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct ConeArgs {
    #[command(flatten)]
    check: CheckArgs,
    /// Name of the homogenizing variable
    #[arg(long, default_value = "x0")]
    cone_var: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Weighted degree of a polynomial (fails if not weighted homogeneous)
    Wdeg(PolyArgs),
    /// Check weighted homogeneity
    HomogCheck(PolyArgs),
    /// Print the weighted Euler derivation of the ring
    Euler(RingArg),
    /// Apply a derivation to a polynomial
    Apply(DerivArgs),
    /// Test membership of a derivation in Der(f)
    Member(DerivArgs),
    /// Saito's criterion on a full candidate basis
    SaitoCheck(CheckArgs),
    /// Weighted eigenscheme check: Euler row plus n-2 tensors
    Wme(CheckArgs),
    /// General determinantal check: n-1 rows, Euler not required
    WmeGeneral(CheckArgs),
    /// Lift a certified affine divisor to the cone x0 f^h
    Cone(ConeArgs),
    /// Explicit divisor families with their exponent formulas
    Family {
        #[command(subcommand)]
        family: FamilyCmd,
    },
    /// Groebner/syzygy oracle, independent of the constructive checks
    Oracle {
        #[command(subcommand)]
        oracle: OracleCmd,
    },
    /// Run the route matching the derivation count and write a certificate
    Emit(EmitArgs),
    /// Re-verify a certificate file from scratch
    Verify {
        /// Path to a certificate JSON file
        path: PathBuf,
    },
}

#[derive(Args)]
struct FamilyCommon {
    /// Write the certificate JSON to this path on success
    #[arg(long)]
    json: Option<PathBuf>,
    /// Also search for a minimal weight vector and print it
    #[arg(long)]
    weights: Option<String>,
}

#[derive(Args)]
struct ReflectionArgs {
    /// Comma-separated n_1,...,n_l
    #[arg(long, value_delimiter = ',')]
    n: Vec<i64>,
    /// Number of coordinate hyperplanes kept (0..=l)
    #[arg(long)]
    k: usize,
    /// Build the cone x0 F^h in projective space instead
    #[arg(long)]
    cone: bool,
    #[arg(long, default_value = "x0")]
    cone_var: String,
    #[command(flatten)]
    common: FamilyCommon,
}

#[derive(Args)]
struct BpArgs {
    /// Exponents r_0,r_1,r_2
    #[arg(long, value_delimiter = ',')]
    r: Vec<i64>,
    /// Nonzero pairwise distinct scalars, comma-separated rationals
    #[arg(long, value_delimiter = ',')]
    lambda: Vec<String>,
    /// Build the cone t F^h in P^3 instead
    #[arg(long)]
    cone: bool,
    #[arg(long, default_value = "t")]
    cone_var: String,
    #[command(flatten)]
    common: FamilyCommon,
}

#[derive(Args)]
struct PencilArgs {
    /// Ambient dimension n (variables x0..xn)
    #[arg(long)]
    n: usize,
    /// Split index m (first block is x0..xm)
    #[arg(long)]
    m: usize,
    /// Comma-separated r_0,...,r_n
    #[arg(long, value_delimiter = ',')]
    r: Vec<i64>,
    /// Extra pencil members as "a,b" pairs separated by ';' (e.g. "1,1;2,1")
    #[arg(long, default_value = "")]
    scalars: String,
    /// Build the cone in P^{n+1} instead
    #[arg(long)]
    cone: bool,
    /// Homogenizing variable (default x{n+1})
    #[arg(long)]
    cone_var: Option<String>,
    #[command(flatten)]
    common: FamilyCommon,
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// Reflection-style arrangement F_k (Thm 6.2/6.5) or its cone
    Reflection(ReflectionArgs),
    /// Brieskorn-Pham product F_Lambda (Thm 6.15) or its cone (Thm 6.18)
    Bp(BpArgs),
    /// Pencil of hypersurfaces (Thm 6.21) or its cone (Thm 6.23)
    Pencil(PencilArgs),
}

#[derive(Args)]
struct GensArgs {
    #[command(flatten)]
    ring: RingArg,
    /// Ideal generator (repeat the flag for several)
    #[arg(long, required = true)]
    gen: Vec<String>,
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Groebner basis of an ideal (grevlex)
    Gb(GensArgs),
    /// Ideal membership of f
    Member {
        #[command(flatten)]
        gens: GensArgs,
        #[arg(long)]
        f: String,
    },
    /// Codimension of the vanishing locus of an ideal
    Codim(GensArgs),
    /// Minimal generators of Der(f)
    DerGens(PolyArgs),
    /// Independent freeness verdict via the syzygy oracle
    IsFree(PolyArgs),
}

#[derive(Args)]
struct EmitArgs {
    #[command(flatten)]
    poly: PolyArgs,
    /// Derivation (repeat the flag); the count picks the route: a full
    /// basis runs Saito, n-2 tensors run wme, n-1 rows run wme-general
    #[arg(long, required = true)]
    deriv: Vec<String>,
    /// Output path for the certificate JSON
    #[arg(long)]
    out: PathBuf,
}

fn limits() -> Limits {
    let mut l = Limits::default();
    if let Ok(v) = std::env::var("FREEDIV_MAX_BASIS") {
        if let Ok(n) = v.parse() {
            l.max_basis = n;
        }
    }
    if let Ok(v) = std::env::var("FREEDIV_MAX_DEGREE") {
        if let Ok(n) = v.parse() {
            l.max_degree = n;
        }
    }
    l
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}

/// 2 for malformed input, 3 for oracle resource limits; everything that
/// reaches here is an input or environment problem, not a failed check.
fn exit_for(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit(_) => 3,
        _ => 2,
    }
}

fn run(cmd: Cmd) -> Result<u8, Error> {
    match cmd {
        Cmd::Wdeg(a) => {
            let (_, f) = poly_input(&a)?;
            match f.homogeneous_wdeg().and_then(|w| w.finite()) {
                Some(d) => {
                    println!("{d}");
                    Ok(0)
                }
                None => {
                    println!("not weighted homogeneous");
                    Ok(1)
                }
            }
        }
        Cmd::HomogCheck(a) => {
            let (_, f) = poly_input(&a)?;
            if f.is_weighted_homogeneous() {
                println!("weighted homogeneous of degree {}", f.wdeg());
                Ok(0)
            } else {
                println!("not weighted homogeneous");
                Ok(1)
            }
        }
        Cmd::Euler(a) => {
            let ring = parse_ring(&a.ring)?;
            println!("{}", Derivation::euler(&ring));
            Ok(0)
        }
        Cmd::Apply(a) => {
            let (ring, f) = poly_input(&a.poly)?;
            let d = parse_derivation(&a.deriv, &ring)?;
            println!("{}", d.apply(&f)?);
            Ok(0)
        }
        Cmd::Member(a) => {
            let (ring, f) = poly_input(&a.poly)?;
            let d = parse_derivation(&a.deriv, &ring)?;
            let m = d.in_der(&f)?;
            if m.member {
                if m.annihilates {
                    println!("member of Der_0(f): delta(f) = 0");
                } else {
                    println!(
                        "member of Der(f): delta(f) = ({}) * f",
                        m.cofactor.expect("member has a cofactor")
                    );
                }
                Ok(0)
            } else {
                println!("not a member of Der(f)");
                Ok(1)
            }
        }
        Cmd::SaitoCheck(a) => {
            let (_, f, derivs) = check_input(&a)?;
            report_check(saito_check(&f, &derivs)?, a.json.as_deref())
        }
        Cmd::Wme(a) => {
            let (_, f, derivs) = check_input(&a)?;
            report_check(wme_freeness(&f, &derivs, limits())?, a.json.as_deref())
        }
        Cmd::WmeGeneral(a) => {
            let (_, f, derivs) = check_input(&a)?;
            report_check(
                general_determinantal_freeness(&f, &derivs, limits())?,
                a.json.as_deref(),
            )
        }
        Cmd::Cone(a) => {
            let (_, f, derivs) = check_input(&a.check)?;
            match families::cone_check(&f, &derivs, &a.cone_var)? {
                ConeOutcome::Lifted(inst) => {
                    println!("lifted to {} in {}", inst.divisor, inst.ring);
                    report_instance(&inst, a.check.json.as_deref(), None)
                }
                ConeOutcome::Refused {
                    degree_sum,
                    divisor_degree,
                } => {
                    println!(
                        "refused: basis degrees sum to {degree_sum}, deg f = {divisor_degree}"
                    );
                    Ok(1)
                }
            }
        }
        Cmd::Family { family } => run_family(family),
        Cmd::Oracle { oracle } => run_oracle(oracle),
        Cmd::Emit(a) => {
            let ring = parse_ring(&a.poly.ring.ring)?;
            let f = parse_poly(&a.poly.f, &ring)?;
            let derivs = parse_derivs(&a.deriv, &ring)?;
            let nv = ring.num_vars();
            let res = if derivs.len() == nv {
                saito_check(&f, &derivs)?
            } else if derivs.len() + 2 == nv {
                wme_freeness(&f, &derivs, limits())?
            } else if derivs.len() + 1 == nv {
                general_determinantal_freeness(&f, &derivs, limits())?
            } else {
                return Err(Error::DerivationCount {
                    expected: nv,
                    got: derivs.len(),
                });
            };
            report_check(res, Some(&a.out))
        }
        Cmd::Verify { path } => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::MalformedCertificate(e.to_string()))?;
            let cert = Certificate::from_json(&text)?;
            let outcome = verify_certificate(&cert)?;
            if outcome.pass {
                println!("certificate verifies: exponents {:?}", cert.exponents);
                Ok(0)
            } else {
                println!(
                    "certificate FAILS: {}",
                    outcome.diagnostic.unwrap_or_else(|| "unknown".into())
                );
                Ok(1)
            }
        }
    }
}

fn poly_input(a: &PolyArgs) -> Result<(RingRef, Poly), Error> {
    let ring = parse_ring(&a.ring.ring)?;
    let f = parse_poly(&a.f, &ring)?;
    Ok((ring, f))
}

fn check_input(a: &CheckArgs) -> Result<(RingRef, Poly, Vec<Derivation>), Error> {
    let (ring, f) = poly_input(&a.poly)?;
    let derivs = parse_derivs(&a.deriv, &ring)?;
    Ok((ring, f, derivs))
}

fn parse_derivs(texts: &[String], ring: &RingRef) -> Result<Vec<Derivation>, Error> {
    texts.iter().map(|t| parse_derivation(t, ring)).collect()
}

fn report_check(res: CheckResult, json: Option<&std::path::Path>) -> Result<u8, Error> {
    match res {
        CheckResult::Certified(cert) => {
            println!("free: method {}", cert.method.as_str());
            println!("exponents: {:?}", cert.exponents);
            println!("der0 exponents: {:?}", cert.der0_exponents);
            println!("unit: {}", cert.unit);
            write_cert(&cert, json)?;
            Ok(0)
        }
        CheckResult::Failed(msg) => {
            println!("not certified: {msg}");
            Ok(1)
        }
    }
}

fn write_cert(cert: &Certificate, json: Option<&std::path::Path>) -> Result<(), Error> {
    if let Some(path) = json {
        std::fs::write(path, cert.to_json())
            .map_err(|e| Error::MalformedCertificate(format!("cannot write {path:?}: {e}")))?;
        println!("certificate written to {}", path.display());
    }
    Ok(())
}

fn report_instance(
    inst: &FamilyInstance,
    json: Option<&std::path::Path>,
    common: Option<&FamilyCommon>,
) -> Result<u8, Error> {
    println!("divisor ({}): {}", inst.ring, inst.divisor);
    println!(
        "expected exponents ({}): {:?}, der0 {:?}",
        inst.provenance, inst.expected_exponents, inst.expected_der0
    );
    if let Some(c) = common {
        if c.weights.as_deref() == Some("auto") {
            match find_weight_vector(&[inst.divisor.clone()], false) {
                Some(w) => println!(
                    "weights: canonical {:?}, minimal homogenizing {w:?}",
                    inst.ring.weights()
                ),
                None => println!("weights: no positive homogenizing vector found"),
            }
        }
    }
    match inst.certify(limits())? {
        CheckResult::Certified(cert) => {
            if cert.exponents != inst.expected_exponents {
                println!(
                    "MISMATCH: certified exponents {:?} differ from the formula",
                    cert.exponents
                );
                return Ok(1);
            }
            println!("certified: exponents {:?}", cert.exponents);
            write_cert(&cert, json)?;
            Ok(0)
        }
        CheckResult::Failed(msg) => {
            println!("not certified: {msg}");
            Ok(1)
        }
    }
}

fn run_family(cmd: FamilyCmd) -> Result<u8, Error> {
    match cmd {
        FamilyCmd::Reflection(a) => {
            let inst = if a.cone {
                families::reflection_cone(a.k, &a.n, &a.cone_var)?
            } else {
                families::reflection(a.k, &a.n)?
            };
            report_instance(&inst, a.common.json.as_deref(), Some(&a.common))
        }
        FamilyCmd::Bp(a) => {
            let r: [i64; 3] = a
                .r
                .as_slice()
                .try_into()
                .map_err(|_| Error::InvalidFamily("bp needs exactly three exponents".into()))?;
            let lambda = a
                .lambda
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>, _>>()?;
            let inst = families::brieskorn_pham(&r, &lambda, a.cone, &a.cone_var)?;
            report_instance(&inst, a.common.json.as_deref(), Some(&a.common))
        }
        FamilyCmd::Pencil(a) => {
            let scalars = parse_scalars(&a.scalars)?;
            let inst = if a.cone {
                let default = format!("x{}", a.n + 1);
                let cv = a.cone_var.as_deref().unwrap_or(&default);
                families::pencil_cone(a.n, a.m, &a.r, &scalars, cv)?
            } else {
                families::pencil_divisor(a.n, a.m, &a.r, &scalars)?
            };
            report_instance(&inst, a.common.json.as_deref(), Some(&a.common))
        }
    }
}

fn run_oracle(cmd: OracleCmd) -> Result<u8, Error> {
    match cmd {
        OracleCmd::Gb(a) => {
            let (_, gens) = gens_input(&a)?;
            let gb = buchberger(&gens, MonomialOrder::GrevLex, limits())?;
            for g in &gb.generators {
                println!("{g}");
            }
            Ok(0)
        }
        OracleCmd::Member { gens, f } => {
            let (ring, g) = gens_input(&gens)?;
            let f = parse_poly(&f, &ring)?;
            match ideal_membership(&f, &g, limits())? {
                Some(_) => {
                    println!("member");
                    Ok(0)
                }
                None => {
                    println!("not a member");
                    Ok(1)
                }
            }
        }
        OracleCmd::Codim(a) => {
            let (_, gens) = gens_input(&a)?;
            println!("{}", ideal_codim(&gens, limits())?);
            Ok(0)
        }
        OracleCmd::DerGens(a) => {
            let (_, f) = poly_input(&a)?;
            for d in der_generators(&f, limits())? {
                println!("{d}");
            }
            Ok(0)
        }
        OracleCmd::IsFree(a) => {
            let (_, f) = poly_input(&a)?;
            let out = is_free_oracle(&f, limits())?;
            if out.free {
                println!("free: exponents {:?}", out.degrees);
                Ok(0)
            } else {
                println!("not free: {}", out.diagnostic);
                println!("generator degrees: {:?}", out.degrees);
                Ok(1)
            }
        }
    }
}

fn gens_input(a: &GensArgs) -> Result<(RingRef, Vec<Poly>), Error> {
    let ring = parse_ring(&a.ring.ring)?;
    let gens = a
        .gen
        .iter()
        .map(|g| parse_poly(g, &ring))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((ring, gens))
}

fn parse_rational(s: &str) -> Result<Q, Error> {
    s.trim().parse().map_err(|_| Error::Parse {
        col: 1,
        msg: format!("bad rational {s:?}"),
    })
}

/// "a,b" pairs separated by ';', e.g. "1,1;2,1"; empty input means none.
fn parse_scalars(text: &str) -> Result<Vec<(Q, Q)>, Error> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(';')
        .map(|pair| {
            let (a, b) = pair.split_once(',').ok_or(Error::Parse {
                col: 1,
                msg: format!("scalar pair {pair:?} needs the form a,b"),
            })?;
            Ok((parse_rational(a)?, parse_rational(b)?))
        })
        .collect()
}
