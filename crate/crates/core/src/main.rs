use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use airpockets::automata::{enumerate, enumerate_ending, ModelId, Sampler};
use airpockets::cli::{render_report, render_series, render_words, Family, Format};
use airpockets::verify::{self, VerifyConfig};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "airpockets", version, about = "Partial Dyck paths with air pockets: closed forms and counting oracles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficients of a closed-form generating function.
    Series {
        family: Family,
        /// Level index, for the families that take one.
        #[arg(long, visible_alias = "end-level")]
        k: Option<usize>,
        #[arg(long, default_value_t = 30)]
        order: usize,
        #[arg(long, default_value_t = 500)]
        max_order: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List every path word of a model with the given number of steps.
    Enumerate {
        #[arg(long, value_parser = parse_model)]
        model: ModelId,
        #[arg(long)]
        n: usize,
        #[arg(long, visible_alias = "k")]
        end_level: Option<usize>,
        /// Highest level the words may visit (defaults to n).
        #[arg(long)]
        level_cap: Option<usize>,
        #[arg(long, default_value_t = 16)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Draw uniform random words with fixed length and end level.
    Sample {
        #[arg(long, value_parser = parse_model)]
        model: ModelId,
        #[arg(long)]
        n: usize,
        #[arg(long, visible_alias = "k")]
        end_level: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Cross-check every closed form against the counting oracles.
    Verify {
        #[arg(long, default_value_t = 30)]
        order: usize,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        #[arg(long, default_value_t = 500)]
        max_order: usize,
        #[arg(long, default_value_t = 16)]
        max_n: usize,
        #[arg(long, hide = true)]
        corrupt_s2: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn parse_model(s: &str) -> Result<ModelId, String> {
    s.parse().map_err(|e: airpockets::automata::AutomatonError| e.to_string())
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn run(cli: Cli) -> Result<(String, bool), Failure> {
    match cli.command {
        Command::Series {
            family,
            k,
            order,
            max_order,
            format,
        } => {
            if order > max_order {
                return Err(usage(format!("order {order} exceeds the cap of {max_order}")));
            }
            let k = match (family.takes_level(), k) {
                (true, Some(k)) => Some(k),
                (true, None) => return Err(usage(format!("{} needs --k", family.name()))),
                (false, Some(_)) => return Err(usage(format!("{} takes no --k", family.name()))),
                (false, None) => None,
            };
            let series = family
                .evaluate(k.unwrap_or(0), order)
                .map_err(|e| usage(format!("cannot evaluate {}: {e}", family.name())))?;
            Ok((render_series(family, k, &series, format), true))
        }
        Command::Enumerate {
            model,
            n,
            end_level,
            level_cap,
            max_n,
            format,
        } => {
            if n > max_n {
                return Err(usage(format!("n = {n} exceeds the enumeration cap of {max_n}")));
            }
            let words = match (end_level, level_cap) {
                (Some(end), None) => enumerate_ending(model, n, end),
                (end, cap) => {
                    let cap = match cap {
                        Some(cap) => cap,
                        None if model.unbounded_rise() => {
                            return Err(usage(format!(
                                "{model} has unbounded up-steps; give --end-level or --level-cap"
                            )))
                        }
                        None => n,
                    };
                    let mut words = enumerate(model, n, cap);
                    if let Some(end) = end {
                        words.retain(|w| w.end_level() == end);
                    }
                    words
                }
            };
            let params = json!({ "model": model.name(), "n": n, "end_level": end_level, "level_cap": level_cap });
            Ok((render_words("enumerate", params, &words, json!({}), format), true))
        }
        Command::Sample {
            model,
            n,
            end_level,
            count,
            seed,
            max_n,
            format,
        } => {
            if n.max(end_level) > max_n {
                return Err(usage(format!("n and end level must not exceed {max_n}")));
            }
            let sampler = Sampler::new(model, n, end_level).map_err(|e| usage(e.to_string()))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let words: Vec<_> = (0..count).map(|_| sampler.sample(&mut rng)).collect();
            let params = json!({ "model": model.name(), "n": n, "end_level": end_level, "count": count, "seed": seed });
            let extra = json!({ "support_size": sampler.support_size().to_string() });
            Ok((render_words("sample", params, &words, extra, format), true))
        }
        Command::Verify {
            order,
            n_max,
            max_order,
            max_n,
            corrupt_s2,
            format,
        } => {
            if order > max_order {
                return Err(usage(format!("order {order} exceeds the cap of {max_order}")));
            }
            if n_max > max_n {
                return Err(usage(format!("n_max {n_max} exceeds the enumeration cap of {max_n}")));
            }
            let report = verify::run(&VerifyConfig {
                order,
                n_max,
                corrupt_s2,
            });
            Ok((render_report(&report, format), report.success()))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFY_FAILED)
            }
        }
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
