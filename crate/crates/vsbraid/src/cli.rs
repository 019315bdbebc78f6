//! Command-line front end: every operation behind a subcommand with stable
//! text output, or one JSON record per line for scripting.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::abelian::{abelianization, class2_quotient};
use crate::freeproduct::{fp_normalize, render_vsg2_normal_form, vsg2_engine};
use crate::hom::{classify_triples, exponent_sums, phi_triple, Triple};
use crate::homcount::fingerprint;
use crate::iso::{parse_certificate, verify_iso};
use crate::kernels::kernel_presentation;
use crate::presentation::{build_presentation, format_presentation, GroupFamily};
use crate::structure::{decompose, forbidden_check};
use crate::suite::{run_all, SuiteConfig};
use crate::word::parse_word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    JsonLines,
}

#[derive(Parser, Debug)]
#[command(name = "vsbraid", version, about = "virtual singular braid group computations")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exponent sums and virtual parity of a braid word
    Exp {
        word: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Strand permutation of a word under the all-ones map
    Perm {
        word: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Split a word into a pure part and a virtual section
    Decompose {
        word: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value = "111")]
        triple: String,
    },
    /// Passing ε-triples for a family
    ClassifyTriples {
        #[arg(long, default_value = "VSG")]
        family: String,
        #[arg(long)]
        n: usize,
    },
    /// Check one φ-triple against every relator
    VerifyHom {
        #[arg(long, default_value = "VSG")]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        triple: String,
    },
    /// Derived presentation of a two-strand kernel
    KernelPresentation {
        #[arg(long, default_value = "VSG")]
        family: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        triple: String,
    },
    /// Abelian invariants of a registry presentation
    Abelianize {
        #[arg(long, default_value = "VSG")]
        family: String,
        #[arg(long)]
        n: usize,
    },
    /// Class-2 lower-central quotient data
    Lcs2 {
        #[arg(long, default_value = "VSG")]
        family: String,
        #[arg(long)]
        n: usize,
    },
    /// Separation reports for the four forbidden relations
    Forbidden {
        #[arg(long)]
        n: usize,
    },
    /// Normal form of a two-strand word
    Nf2 { word: String },
    /// Homomorphism-count fingerprints into S3 and S4
    Homcount {
        #[arg(long, default_value = "VSG")]
        family: String,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Fingerprint a two-strand kernel instead of the registry group
        #[arg(long)]
        kernel: Option<String>,
    },
    /// Validate an isomorphism certificate file
    VerifyIso { path: String },
    /// Run the full verification battery
    Suite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 40_000)]
        budget: usize,
    },
}

struct Out {
    format: Format,
}

impl Out {
    fn emit(&self, text: String, json: Value) {
        match self.format {
            Format::Text => println!("{text}"),
            Format::JsonLines => println!("{json}"),
        }
    }
}

const USAGE: i32 = 2;
const FAILURE: i32 = 1;

fn parse_family(s: &str) -> Result<GroupFamily, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_triple(s: &str) -> Result<Triple, String> {
    s.parse().map_err(|_| format!("bad triple `{s}`; expected three binary digits like 101"))
}

pub fn run(args: Vec<String>) -> i32 {
    let mut argv = vec!["vsbraid".to_string()];
    argv.extend(args);
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are successful exits
            let _ = e.print();
            return if e.use_stderr() { USAGE } else { 0 };
        }
    };
    let out = Out { format: cli.format };
    match dispatch(cli.command, &out) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            USAGE
        }
    }
}

fn dispatch(cmd: Command, out: &Out) -> Result<i32, String> {
    match cmd {
        Command::Exp { word, n } => {
            let w = parse_word(&word, n).map_err(|e| e.to_string())?;
            let e = exponent_sums(&w).map_err(|e| e.to_string())?;
            out.emit(
                e.to_string(),
                json!({"cmd": "exp", "expC": e.exp_c, "expS": e.exp_s,
                       "expCS": e.exp_cs, "parity": e.parity}),
            );
            Ok(0)
        }
        Command::Perm { word, n } => {
            let w = parse_word(&word, n).map_err(|e| e.to_string())?;
            let phi = phi_triple(GroupFamily::VSG, n, Triple(1, 1, 1))
                .map_err(|e| e.to_string())?;
            let p = phi.eval(&w).map_err(|e| e.to_string())?;
            out.emit(p.to_string(), json!({"cmd": "perm", "image": p.to_string()}));
            Ok(0)
        }
        Command::Decompose { word, n, triple } => {
            let w = parse_word(&word, n).map_err(|e| e.to_string())?;
            let t = parse_triple(&triple)?;
            let d = decompose(&w, t).map_err(|e| e.to_string())?;
            out.emit(
                format!("pure={} perm={} section={}", d.pure, d.perm, d.section_word),
                json!({"cmd": "decompose", "pure": d.pure.to_string(),
                       "perm": d.perm.to_string(), "section": d.section_word.to_string()}),
            );
            Ok(0)
        }
        Command::ClassifyTriples { family, n } => {
            let family = parse_family(&family)?;
            let got = classify_triples(family, n).map_err(|e| e.to_string())?;
            let list: Vec<String> = got.iter().map(|t| t.to_string()).collect();
            out.emit(
                list.join(","),
                json!({"cmd": "classify-triples", "family": family.to_string(),
                       "n": n, "passing": list}),
            );
            Ok(0)
        }
        Command::VerifyHom { family, n, triple } => {
            let family = parse_family(&family)?;
            let t = parse_triple(&triple)?;
            let m = phi_triple(family, n, t).map_err(|e| e.to_string())?;
            let report = m.verify().map_err(|e| e.to_string())?;
            if report.is_homomorphism() {
                out.emit(
                    "homomorphism: yes".to_string(),
                    json!({"cmd": "verify-hom", "homomorphism": true}),
                );
                Ok(0)
            } else {
                for f in &report.failures {
                    out.emit(
                        format!(
                            "relation {} = {} fails: {} vs {}",
                            f.relator.lhs, f.relator.rhs, f.lhs_image, f.rhs_image
                        ),
                        json!({"cmd": "verify-hom", "homomorphism": false,
                               "lhs": f.relator.lhs.to_string(),
                               "rhs": f.relator.rhs.to_string(),
                               "lhs_image": f.lhs_image.to_string(),
                               "rhs_image": f.rhs_image.to_string()}),
                    );
                }
                Ok(FAILURE)
            }
        }
        Command::KernelPresentation { family, n, triple } => {
            let family = parse_family(&family)?;
            let t = parse_triple(&triple)?;
            let kp = kernel_presentation(family, n, t).map_err(|e| e.to_string())?;
            let transversal: Vec<String> =
                kp.transversal.iter().map(|w| w.to_string()).collect();
            let mut text = String::new();
            text.push_str(&format!("# transversal: {{{}}}\n", transversal.join(", ")));
            text.push_str(&format!("# simplification moves: {}\n", kp.trace.moves.len()));
            for (g, w) in &kp.defining_words {
                text.push_str(&format!("# {g} = {w}\n"));
            }
            text.push_str(&format_presentation(&kp.presentation));
            out.emit(
                text.trim_end().to_string(),
                json!({"cmd": "kernel-presentation", "triple": t.to_string(),
                       "transversal": transversal,
                       "moves": kp.trace.moves.len(),
                       "presentation": format_presentation(&kp.presentation)}),
            );
            Ok(0)
        }
        Command::Abelianize { family, n } => {
            let family = parse_family(&family)?;
            let p = build_presentation(family, n).map_err(|e| e.to_string())?;
            let ab = abelianization(&p);
            out.emit(
                ab.to_string(),
                json!({"cmd": "abelianize", "family": family.to_string(), "n": n,
                       "invariants": ab.to_string()}),
            );
            Ok(0)
        }
        Command::Lcs2 { family, n } => {
            let family = parse_family(&family)?;
            let p = build_presentation(family, n).map_err(|e| e.to_string())?;
            let q = class2_quotient(&p);
            out.emit(
                format!("abelianization={} gamma2_mod_gamma3={}", q.abelianization, q.gamma2_mod_gamma3),
                json!({"cmd": "lcs2", "family": family.to_string(), "n": n,
                       "abelianization": q.abelianization.to_string(),
                       "gamma2_mod_gamma3": q.gamma2_mod_gamma3.to_string()}),
            );
            Ok(0)
        }
        Command::Forbidden { n } => {
            let mut all_separated = true;
            out.emit(
                format!("{:<9} {:<3} {:<15} {:<30} {:<30} separated", "relation", "i", "separator", "lhs image", "rhs image"),
                json!({"cmd": "forbidden", "header": true}),
            );
            for relation in 1..=4u8 {
                for i in 1..=n.saturating_sub(2) {
                    let rep = forbidden_check(n, relation, i).map_err(|e| e.to_string())?;
                    all_separated &= rep.separated;
                    out.emit(
                        format!(
                            "{:<9} {:<3} {:<15} {:<30} {:<30} {}",
                            rep.relation, rep.index, rep.separator.to_string(),
                            rep.lhs_image, rep.rhs_image, rep.separated
                        ),
                        json!({"cmd": "forbidden", "relation": rep.relation, "i": rep.index,
                               "separator": rep.separator.to_string(),
                               "lhs_image": rep.lhs_image, "rhs_image": rep.rhs_image,
                               "separated": rep.separated}),
                    );
                }
            }
            Ok(if all_separated { 0 } else { FAILURE })
        }
        Command::Nf2 { word } => {
            let w = parse_word(&word, 2).map_err(|e| e.to_string())?;
            let engine = vsg2_engine();
            let nf = fp_normalize(&w, &engine).map_err(|e| e.to_string())?;
            let rendered = render_vsg2_normal_form(&nf);
            out.emit(rendered.clone(), json!({"cmd": "nf2", "normal_form": rendered}));
            Ok(0)
        }
        Command::Homcount { family, n, kernel } => {
            let p = match kernel {
                Some(t) => {
                    let family = parse_family(&family)?;
                    let t = parse_triple(&t)?;
                    kernel_presentation(family, 2, t).map_err(|e| e.to_string())?.presentation
                }
                None => {
                    let family = parse_family(&family)?;
                    build_presentation(family, n).map_err(|e| e.to_string())?
                }
            };
            let prints = fingerprint(&p).map_err(|e| e.to_string())?;
            let text: Vec<String> =
                prints.iter().map(|(name, count)| format!("{name}={count}")).collect();
            out.emit(
                text.join(" "),
                json!({"cmd": "homcount",
                       "counts": prints.iter().map(|(k, v)| json!({"target": k, "count": v}))
                                 .collect::<Vec<_>>()}),
            );
            Ok(0)
        }
        Command::VerifyIso { path } => {
            let text = std::fs::read_to_string(&path).map_err(|e| format!("{path}: {e}"))?;
            let cert = parse_certificate(&text)?;
            let report = verify_iso(&cert, 40_000);
            if report.valid {
                out.emit("valid".to_string(), json!({"cmd": "verify-iso", "valid": true}));
                Ok(0)
            } else {
                for f in &report.failures {
                    out.emit(
                        format!("invalid: {f}"),
                        json!({"cmd": "verify-iso", "valid": false, "reason": f}),
                    );
                }
                Ok(FAILURE)
            }
        }
        Command::Suite { seed, samples, budget } => {
            let cfg = SuiteConfig { seed, samples, search_budget: budget };
            let results = run_all(&cfg);
            let mut all_pass = true;
            for r in &results {
                all_pass &= r.passed;
                out.emit(
                    r.render(),
                    json!({"cmd": "suite", "criterion": r.index, "name": r.name,
                           "passed": r.passed, "details": r.details}),
                );
            }
            Ok(if all_pass { 0 } else { FAILURE })
        }
    }
}
