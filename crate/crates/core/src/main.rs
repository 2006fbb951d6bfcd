//! Command-line front end: certify generator-set documents, enumerate
//! quadratic forms, explore transvection groups, and run the bundled demo.

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use twistcert::certifier::{
    assemble_set, certify, szepietowski_generators, verify_certificate, Certificate,
    CertificatePayload,
};
use twistcert::explorer::{
    all_even_axes, generate, is_subgroup_proper, reference_group, stabilizer_of_form,
    ExploreConfig, MatrixGroup,
};
use twistcert::io::{parse_input, to_canonical_json, OutputDocument};
use twistcert::quadform::{enumerate_forms, find_violating_transvection, Z4Form};
use twistcert::{Error, Z2Vector};

#[derive(Parser)]
#[command(name = "twistcert", version, about = "Necessary-condition certifier for generating sets of non-orientable mapping class groups")]
struct Cli {
    /// Accepted for harness compatibility and ignored; all computation is exact.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Certify a generator-set document.
    Certify {
        /// JSON input document.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Independently re-check the produced certificate.
        #[arg(long)]
        verify: bool,
    },
    /// List all 2^g Z4-quadratic forms at the given genus.
    EnumerateForms {
        #[arg(long)]
        genus: usize,
        /// Attach each form's violating transvection.
        #[arg(long)]
        violations: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Enumerate the matrix group generated by transvections.
    Explore {
        #[arg(long)]
        genus: usize,
        /// Axes as semicolon-separated classes, e.g. "1,2;2,3" or "1100;0110".
        #[arg(long, conflicts_with = "all")]
        axes: Option<String>,
        /// Use every nonzero even-weight axis.
        #[arg(long)]
        all: bool,
        /// Filter to the stabilizer of a form given by its basis values, e.g. "1,3,1,1".
        #[arg(long)]
        stabilizer: Option<String>,
        #[arg(long, default_value_t = 8)]
        max_genus: usize,
        #[arg(long, default_value_t = 512)]
        memory_budget_mb: usize,
        /// Dump group elements as lists of column index-lists.
        #[arg(long)]
        dump: bool,
    },
    /// Run a bundled generating set and print the verdict narrative.
    Demo {
        /// Bundled set name; currently "szepietowski".
        set: String,
        #[arg(long)]
        genus: usize,
        /// Drop one named generator (a1..a{g-1}, b2, y) to probe a proper subset.
        #[arg(long)]
        drop: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Certify {
            input,
            format,
            verify,
        } => {
            let text = std::fs::read_to_string(&input).map_err(|e| {
                Error::MalformedInput(format!("cannot read {}: {e}", input.display()))
            })?;
            let doc = parse_input(&text)?;
            let gs = doc.to_generator_set()?;
            let cert = certify(&gs)?;
            let verified = if verify {
                Some(verify_certificate(&gs, &cert)?)
            } else {
                None
            };
            match format {
                Format::Json => {
                    let out = OutputDocument::from_certificate(&cert);
                    println!("{}", to_canonical_json(&out)?);
                    if let Some(ok) = verified {
                        eprintln!("verification: {}", if ok { "ok" } else { "FAILED" });
                    }
                }
                Format::Text => {
                    print!("{}", render_certificate(&cert));
                    if let Some(ok) = verified {
                        println!("verification: {}", if ok { "ok" } else { "FAILED" });
                    }
                }
            }
            Ok(())
        }
        Command::EnumerateForms {
            genus,
            violations,
            format,
        } => {
            let forms = enumerate_forms(genus)?;
            match format {
                Format::Json => {
                    let mut rows = Vec::new();
                    for q in &forms {
                        let mut row = serde_json::json!({
                            "genus": genus,
                            "basis_values": q.basis_values(),
                        });
                        if violations {
                            let v = find_violating_transvection(q)?;
                            row["violation"] = serde_json::json!({
                                "axis": v.axis.support(),
                                "witness": v.witness.support(),
                                "discrepancy": v.discrepancy,
                            });
                        }
                        rows.push(row);
                    }
                    println!("{}", to_canonical_json(&rows)?);
                }
                Format::Text => {
                    for q in &forms {
                        if violations {
                            let v = find_violating_transvection(q)?;
                            println!(
                                "q = {:?}  violating axis {:?}  witness {:?}  discrepancy {}",
                                q.basis_values(),
                                v.axis.support(),
                                v.witness.support(),
                                v.discrepancy
                            );
                        } else {
                            println!("q = {:?}", q.basis_values());
                        }
                    }
                    println!("{} forms at genus {genus}", forms.len());
                }
            }
            Ok(())
        }
        Command::Explore {
            genus,
            axes,
            all,
            stabilizer,
            max_genus,
            memory_budget_mb,
            dump,
        } => {
            let config = ExploreConfig {
                max_genus,
                memory_budget_mb,
            };
            let axes = if all {
                all_even_axes(genus)?
            } else {
                let spec = axes.ok_or_else(|| {
                    Error::MalformedInput("pass --axes <classes> or --all".to_string())
                })?;
                parse_axes(&spec, genus)?
            };
            let group = generate(genus, &axes, &config)?;
            println!(
                "group over {} axes at genus {genus}: order {}",
                axes.len(),
                group.order()
            );
            if axes.len() < all_even_axes(genus)?.len() {
                let reference = reference_group(genus, &config)?;
                println!(
                    "reference twist-image group: order {} (proper subgroup: {})",
                    reference.order(),
                    is_subgroup_proper(&group, &reference)?
                );
            }
            if let Some(spec) = stabilizer {
                let form = parse_form(&spec, genus)?;
                let stab = stabilizer_of_form(&group, &form)?;
                println!(
                    "stabilizer of form {:?} within the group: order {}",
                    form.basis_values(),
                    stab.order()
                );
                if dump {
                    dump_group(&stab);
                }
            } else if dump {
                dump_group(&group);
            }
            Ok(())
        }
        Command::Demo {
            set,
            genus,
            drop,
            format,
        } => {
            if set != "szepietowski" {
                return Err(Error::MalformedInput(format!(
                    "unknown bundled set {set:?}; available: szepietowski"
                )));
            }
            let gens = szepietowski_generators(genus)?;
            let gs = assemble_set(genus, &gens, drop.as_deref())?;
            let cert = certify(&gs)?;
            match format {
                Format::Json => {
                    println!(
                        "{}",
                        to_canonical_json(&OutputDocument::from_certificate(&cert))?
                    );
                }
                Format::Text => {
                    match &drop {
                        None => println!(
                            "bundled generating set at genus {genus}: {} Dehn twists, 1 Y-homeomorphism",
                            gs.twist_classes().len()
                        ),
                        Some(name) => println!(
                            "bundled generating set at genus {genus} minus {name}: {} Dehn twists, {} Y-homeomorphisms",
                            gs.twist_classes().len(),
                            gs.y_count()
                        ),
                    }
                    for g in &gens {
                        if drop.as_deref() == Some(g.name.as_str()) {
                            continue;
                        }
                        match &g.class {
                            Some(c) => println!("  {}: class {:?}", g.name, c.support()),
                            None => println!("  {}: Y-homeomorphism (trivial on homology)", g.name),
                        }
                    }
                    print!("{}", render_certificate(&cert));
                }
            }
            Ok(())
        }
    }
}

fn render_certificate(cert: &Certificate) -> String {
    let mut out = String::new();
    out.push_str(&format!("verdict: {}\n", cert.verdict.as_str()));
    out.push_str(&format!(
        "genus: {}, n = {} Dehn twists, k = {} Y-homeomorphisms\n",
        cert.genus, cert.n, cert.k
    ));
    match &cert.payload {
        CertificatePayload::Pass { rank, note } => {
            out.push_str(&format!(
                "twist classes span H1+ (rank {rank}) and no quadratic form survives all generators\n{note}\n"
            ));
        }
        CertificatePayload::NoY { citation } => {
            out.push_str(&format!(
                "no Y-homeomorphism among the generators\naxiom: {citation}\n"
            ));
        }
        CertificatePayload::Span { witness, rank, .. } => {
            out.push_str(&format!(
                "twist classes only reach rank {rank} in H1+ (need {})\nwitness class outside the span: {:?}\n",
                cert.genus - 1,
                witness.support()
            ));
        }
        CertificatePayload::QuadraticForm {
            form,
            axis,
            witness,
            discrepancy,
            extended_criterion,
        } => {
            out.push_str(&format!(
                "invariant quadratic form preserved by every generator: q(x_i) = {:?}\n",
                form.basis_values()
            ));
            out.push_str(&format!(
                "violating transvection: axis {:?}, witness {:?}, value shifts by {}\n",
                axis.support(),
                witness.support(),
                discrepancy
            ));
            out.push_str(
                "a Dehn twist about a curve in the axis class moves the form, so it is not generated\n",
            );
            if *extended_criterion {
                out.push_str(
                    "(form existence decided by constraint solving over a dependent class set)\n",
                );
            }
        }
    }
    out.push_str("citations:\n");
    for c in &cert.citations {
        out.push_str(&format!("  - {c}\n"));
    }
    out
}

fn dump_group(group: &MatrixGroup) {
    for m in group.elements() {
        let cols: Vec<Vec<usize>> = m.columns().map(|c| c.support()).collect();
        println!("{cols:?}");
    }
}

fn parse_axes(spec: &str, genus: usize) -> Result<Vec<Z2Vector>, Error> {
    spec.split(';')
        .map(|token| parse_class(token.trim(), genus))
        .collect()
}

fn parse_class(token: &str, genus: usize) -> Result<Z2Vector, Error> {
    if token.contains(',') {
        let indices = token
            .split(',')
            .map(|t| {
                t.trim().parse::<usize>().map_err(|_| {
                    Error::MalformedInput(format!("bad basis index {t:?} in class {token:?}"))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Z2Vector::from_indices(genus, &indices)
    } else if !token.is_empty() && token.chars().all(|c| c == '0' || c == '1') && token.len() > 1 {
        let v = Z2Vector::from_bitstring(token)?;
        if v.dim() != genus {
            return Err(Error::DimensionMismatch {
                left: genus,
                right: v.dim(),
            });
        }
        Ok(v)
    } else {
        let i = token.trim().parse::<usize>().map_err(|_| {
            Error::MalformedInput(format!("bad class {token:?}; use \"1,2\" or \"1100\""))
        })?;
        Z2Vector::from_indices(genus, &[i])
    }
}

fn parse_form(spec: &str, genus: usize) -> Result<Z4Form, Error> {
    let values = spec
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u8>()
                .map_err(|_| Error::MalformedInput(format!("bad form value {t:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Z4Form::new(genus, values)
}
