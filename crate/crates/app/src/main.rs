use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Duration;

use clap::{CommandFactory, Parser};
use qana::cli::{Cli, Command, DemoKind, LessonAction};
use qana::commands::{self, DemoError, EXIT_INPUT, EXIT_IO, EXIT_OK};
use qana::repl::run_repl;
use qana::server::{serve, ServerConfig};
use qana_lessons::{load_catalog, Catalog, CatalogSource};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { EXIT_OK as u8 });
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_IO as u8)
        }
    }
}

fn catalog(cli: &Cli) -> Result<Catalog, i32> {
    let source = match &cli.catalog {
        Some(dir) => CatalogSource::Directory(dir.clone()),
        None => CatalogSource::Bundled,
    };
    load_catalog(&source).map_err(|errors| {
        for e in errors {
            eprintln!("catalog error: {e}");
        }
        EXIT_INPUT
    })
}

fn dispatch(cli: Cli) -> io::Result<i32> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match &cli.command {
        Command::Run { path, seed, trace } => commands::cmd_run(path, *seed, *trace, &mut out, &mut io::stderr()),
        Command::Repl { qubits, seed } => {
            let cat = match catalog(&cli) {
                Ok(c) => c,
                Err(code) => return Ok(code),
            };
            match run_repl(io::stdin().lock(), &mut out, *qubits, *seed, &cat) {
                Err(e) if e.kind() == io::ErrorKind::InvalidInput => {
                    eprintln!("error: {e}");
                    Ok(EXIT_INPUT)
                }
                r => r.map(|_| EXIT_OK),
            }
        }
        Command::Demo { kind } => {
            let (name, result) = match *kind {
                DemoKind::Grover { n, marked, iterations } => ("grover", commands::demo_grover(n, marked, iterations, &mut out)),
                DemoKind::Shor { n, mode, seed } => ("shor", commands::demo_shor(n, mode.into(), seed, &mut out)),
                DemoKind::Qft { qubits, period } => ("qft", commands::demo_qft(qubits, period, &mut out)),
                DemoKind::Eavesdrop { qubits, intercept, seed } => {
                    ("eavesdrop", commands::demo_eavesdrop(qubits, intercept, seed, &mut out))
                }
            };
            match result {
                Ok(()) => Ok(EXIT_OK),
                Err(DemoError::Io(e)) => Err(e),
                Err(DemoError::Invalid(msg)) => {
                    let mut cmd = Cli::command();
                    cmd.build();
                    let usage = cmd
                        .find_subcommand_mut("demo")
                        .and_then(|d| d.find_subcommand_mut(name))
                        .map(|c| c.render_usage().to_string())
                        .unwrap_or_default();
                    eprintln!("error: {msg}\n{usage}");
                    Ok(EXIT_INPUT)
                }
            }
        }
        Command::Lesson { action } => {
            let cat = match catalog(&cli) {
                Ok(c) => c,
                Err(code) => return Ok(code),
            };
            match action {
                LessonAction::List => commands::lesson_list(&cat, &mut out).map(|_| EXIT_OK),
                LessonAction::Show { id } => commands::lesson_show(&cat, id, &mut out),
                LessonAction::Quiz { id, answers, progress } => {
                    commands::lesson_quiz(&cat, id, answers, progress.as_deref(), &mut out)
                }
                LessonAction::Done { id, section, progress } => commands::lesson_done(&cat, id, *section, progress, &mut out),
                LessonAction::Progress { progress } => commands::lesson_progress(&cat, progress, &mut out),
                LessonAction::Check => {
                    writeln!(out, "catalog ok: {} lessons, {} analogies", cat.lessons().len(), cat.analogies().count())?;
                    Ok(EXIT_OK)
                }
            }
        }
        Command::Serve { port, host, session_ttl_secs, progress_dir } => {
            let cat = match catalog(&cli) {
                Ok(c) => c,
                Err(code) => return Ok(code),
            };
            let mut config = ServerConfig::new(cat);
            config.session_ttl = Duration::from_secs(*session_ttl_secs);
            config.progress_dir = progress_dir.clone();
            let addr = format!("{host}:{port}");
            tokio::runtime::Builder::new_multi_thread().enable_all().build()?.block_on(async move {
                let listener = tokio::net::TcpListener::bind(&addr).await?;
                eprintln!("listening on http://{}", listener.local_addr()?);
                serve(listener, config).await
            })?;
            Ok(EXIT_OK)
        }
    }
}
