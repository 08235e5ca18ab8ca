mod commands;
mod output;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use output::{Format, Report};

#[derive(Parser)]
#[command(
    name = "rowmotion",
    version,
    about = "Rowmotion orbits, toggleability certificates and homomesy checks"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Upper bound on enumerated states (ideals, labelings, orbit lengths).
    #[arg(long, default_value_t = 2_000_000, global = true)]
    cap: usize,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Orbit sizes and representatives of an action on J(P), antichains or labelings.
    Orbits {
        family: String,
        /// rowmotion | gyration | sigma:<ranks> | antichain | q:<r>,<s>
        #[arg(long, default_value = "rowmotion")]
        variant: String,
        /// Flavor cycle for q variants: default | random:<seed> | custom:<images>
        #[arg(long, default_value = "default")]
        theta: String,
        /// Also report orbit averages of this statistic.
        #[arg(long)]
        stat: Option<String>,
    },
    /// Write a statistic as c + Σ c_p T_p, or report that it is not in the span.
    Decompose {
        family: String,
        stat: String,
        /// Decompose over ℚ(q) with T^q_p = T⁺_p − q·T⁻_p.
        #[arg(long)]
        q: bool,
    },
    /// Run a verification suite.
    Verify {
        suite: verify::Suite,
        /// Largest poset (in elements) included.
        #[arg(long, default_value_t = 30)]
        max_cells: usize,
        /// Largest family parameter for the table2 suite.
        #[arg(long, default_value_t = 4)]
        max: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Required by suites that sample.
        #[arg(long)]
        seed: Option<u64>,
        /// Random points per statistic in the lifting suite.
        #[arg(long, default_value_t = 20)]
        points: usize,
    },
    /// q-rowmotion on J_{r,s}(P) and a q-homomesy check.
    Qrow {
        #[arg(
            required_unless_present = "family_flag",
            conflicts_with = "family_flag"
        )]
        family: Option<String>,
        /// Same as the positional family.
        #[arg(long = "family", value_name = "FAMILY")]
        family_flag: Option<String>,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        /// default | random:<seed> | custom:<images>
        #[arg(long, default_value = "default")]
        theta: String,
        #[arg(long, default_value = "antichain_card")]
        stat: String,
        /// Expected value c(q), e.g. "[2]*[3]/[5]".
        #[arg(long)]
        expect: Option<String>,
    },
    /// Check the PL and birational lift of a certified statistic at random points.
    Lift {
        family: String,
        stat: String,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long, value_enum, default_value_t = Level::Both)]
        level: Level,
        /// rowmotion | gyration | sigma:<ranks>, for the orbit check.
        #[arg(long, default_value = "rowmotion")]
        action: String,
        /// Fixed positive α, e.g. 1/2. Random per point when omitted.
        #[arg(long)]
        alpha: Option<String>,
        /// Fixed positive ω. Random per point when omitted.
        #[arg(long)]
        omega: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Level {
    Pl,
    #[value(alias = "birational")]
    B,
    Both,
}

/// Failure classes, mapped to exit codes.
pub enum Failure {
    Usage(String),
    Cap(String),
}

impl From<rowmotion::Error> for Failure {
    fn from(e: rowmotion::Error) -> Self {
        match e {
            rowmotion::Error::ResourceCap { .. } => Failure::Cap(e.to_string()),
            e => Failure::Usage(e.to_string()),
        }
    }
}

fn run(cli: Cli) -> Result<Report, Failure> {
    match cli.cmd {
        Cmd::Orbits {
            family,
            variant,
            theta,
            stat,
        } => commands::orbits(&family, &variant, &theta, stat.as_deref(), cli.cap),
        Cmd::Decompose { family, stat, q } => commands::decompose(&family, &stat, q, cli.cap),
        Cmd::Verify {
            suite,
            max_cells,
            max,
            jobs,
            seed,
            points,
        } => verify::run(
            suite,
            &verify::Bounds {
                max_cells,
                max,
                seed,
                points,
                cap: cli.cap,
            },
            jobs,
        ),
        Cmd::Qrow {
            family,
            family_flag,
            r,
            s,
            theta,
            stat,
            expect,
        } => commands::qrow(
            &family.or(family_flag).unwrap_or_default(),
            r,
            s,
            &theta,
            &stat,
            expect.as_deref(),
            cli.cap,
        ),
        Cmd::Lift {
            family,
            stat,
            seed,
            points,
            level,
            action,
            alpha,
            omega,
        } => commands::lift(
            &family,
            &stat,
            &commands::LiftArgs {
                seed,
                points,
                pl: level != Level::B,
                b: level != Level::Pl,
                action: &action,
                alpha: alpha.as_deref(),
                omega: omega.as_deref(),
            },
            cli.cap,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            if let Err(e) = report.emit(format) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if report.ok { 0 } else { 1 })
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("rowmotion").chain(args.iter().copied()))
    }

    #[test]
    fn level_accepts_birational() {
        let cli = parse(&[
            "lift",
            "rect:2,2",
            "ideal_card",
            "--seed",
            "1",
            "--level",
            "birational",
        ]);
        assert!(matches!(
            cli.unwrap().cmd,
            Cmd::Lift {
                level: Level::B,
                ..
            }
        ));
    }

    #[test]
    fn qrow_family_positional_or_flag() {
        assert!(parse(&["qrow", "rootA:2", "--r", "1", "--s", "2"]).is_ok());
        assert!(parse(&["qrow", "--family", "rootA:2", "--r", "1", "--s", "2"]).is_ok());
        assert!(parse(&["qrow", "--r", "1", "--s", "2"]).is_err());
        assert!(
            parse(&["qrow", "rootA:2", "--family", "rootA:2", "--r", "1", "--s", "2"]).is_err()
        );
    }

    #[test]
    fn caps_map_to_their_own_failure() {
        let cap = rowmotion::Error::ResourceCap {
            what: "order ideals".into(),
            limit: 5,
        };
        assert!(matches!(Failure::from(cap), Failure::Cap(_)));
        let bad = rowmotion::Error::InvalidArgument("n".into());
        assert!(matches!(Failure::from(bad), Failure::Usage(_)));
    }
}
