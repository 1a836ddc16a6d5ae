use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use qana_core::algorithms::ShorMode;

pub const CATALOG_ENV: &str = "QANA_CATALOG";

#[derive(Debug, Parser)]
#[command(name = "qana", version, about = "Statevector simulator, algorithm demos and lessons for learning quantum computing")]
pub struct Cli {
    /// Lesson directory to use instead of the built-in lessons.
    #[arg(long, env = CATALOG_ENV, global = true)]
    pub catalog: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a circuit file and print measurements and final probabilities.
    Run {
        path: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the probabilities after every instruction.
        #[arg(long)]
        trace: bool,
    },
    /// Apply instructions one at a time to a live register.
    Repl {
        #[arg(long, default_value_t = 1)]
        qubits: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run an algorithm demo.
    Demo {
        #[command(subcommand)]
        kind: DemoKind,
    },
    /// Browse lessons, take quizzes and track progress.
    Lesson {
        #[command(subcommand)]
        action: LessonAction,
    },
    /// Start the HTTP API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Idle time after which a session expires.
        #[arg(long, default_value_t = 1800)]
        session_ttl_secs: u64,
        /// Directory for per-student progress files.
        #[arg(long)]
        progress_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum DemoKind {
    /// Grover search over N items.
    Grover {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        marked: u64,
        #[arg(long)]
        iterations: Option<u64>,
    },
    /// Factor N with Shor's algorithm.
    Shor {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Hybrid)]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// QFT of a periodic register.
    Qft {
        #[arg(long, default_value_t = 3)]
        qubits: usize,
        #[arg(long, default_value_t = 4)]
        period: u64,
    },
    /// Check-bit mismatch rate with and without an interceptor.
    Eavesdrop {
        #[arg(long, default_value_t = 1000)]
        qubits: u64,
        #[arg(long)]
        intercept: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    #[value(alias = "full_circuit")]
    FullCircuit,
    Hybrid,
}

impl From<ModeArg> for ShorMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::FullCircuit => ShorMode::FullCircuit,
            ModeArg::Hybrid => ShorMode::Hybrid,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum LessonAction {
    /// List lessons by layer.
    List,
    /// Print a lesson.
    Show { id: String },
    /// Grade quiz answers, e.g. `--answers 1,0,2`.
    Quiz {
        id: String,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        answers: Vec<i64>,
        /// Progress file to record the score in.
        #[arg(long)]
        progress: Option<PathBuf>,
    },
    /// Mark a section (0-based) as completed.
    Done {
        id: String,
        section: usize,
        #[arg(long)]
        progress: PathBuf,
    },
    /// Show a progress file.
    Progress {
        #[arg(long)]
        progress: PathBuf,
    },
    /// Validate the catalog.
    Check,
}
