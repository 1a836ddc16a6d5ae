//! Non-interactive CLI commands. Each writes to the given sink and returns
//! the process exit code.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use qana_core::algorithms::{
    compare_search, eavesdrop_demo, grover_search, qft_period_demo, shor_factor, ShorMode,
};
use qana_core::dsl::{parse_and_validate, run};
use qana_core::Rng;
use qana_lessons::{
    grade_quiz, load_progress, now_timestamp, persist, record_progress, Catalog, ProgressEvent,
};

use crate::view::{fixed, ket, render_probabilities};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_IO: i32 = 2;

const BAR_WIDTH: usize = 50;

#[derive(Debug)]
pub enum DemoError {
    /// Parameters rejected by the algorithm.
    Invalid(String),
    Io(io::Error),
}

impl From<io::Error> for DemoError {
    fn from(e: io::Error) -> Self {
        DemoError::Io(e)
    }
}

fn invalid<E: ToString>(e: E) -> DemoError {
    DemoError::Invalid(e.to_string())
}

/// `qana run`: 0 on success, 1 on a parse or validation error, 2 on I/O.
pub fn cmd_run(path: &Path, seed: u64, trace: bool, out: &mut impl Write, err: &mut impl Write) -> io::Result<i32> {
    let source = match fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => {
            writeln!(err, "error: {}: {e}", path.display())?;
            return Ok(EXIT_IO);
        }
    };
    let circuit = match parse_and_validate(&source) {
        Ok(c) => c,
        Err(e) => {
            writeln!(err, "{}:{}:{}: error: {e}", path.display(), e.line, e.column)?;
            return Ok(EXIT_INPUT);
        }
    };
    let result = match run::<f64>(&circuit, &mut Rng::seeded(seed), trace) {
        Ok(r) => r,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_INPUT);
        }
    };
    if let Some(name) = &circuit.name {
        writeln!(out, "circuit: {name}")?;
    }
    writeln!(out, "qubits: {}, seed: {seed}", circuit.num_qubits)?;
    if let Some(steps) = &result.per_step_states {
        for (i, (instr, state)) in circuit.instructions.iter().zip(steps).enumerate() {
            writeln!(out, "step {i}: {instr}")?;
            write!(out, "{}", render_probabilities(state))?;
        }
    }
    if !result.measurements.is_empty() {
        writeln!(out, "measurements:")?;
        for m in &result.measurements {
            writeln!(
                out,
                "  [{}] qubit {} ({}) = {}",
                m.instruction_index,
                m.qubit,
                m.basis.mnemonic(),
                m.outcome
            )?;
        }
    }
    writeln!(out, "final probabilities:")?;
    write!(out, "{}", render_probabilities(&result.final_state))?;
    Ok(EXIT_OK)
}

/// Text bar chart of the marked probability after each Grover iteration.
pub fn grover_chart(trace: &[f64]) -> String {
    let mut s = String::new();
    for (i, a) in trace.iter().enumerate() {
        let p = a * a;
        let bar = "#".repeat((p * BAR_WIDTH as f64).round() as usize);
        let _ = writeln!(s, "{:>4} |{bar:<BAR_WIDTH$}| {}", i + 1, fixed(p, 4));
    }
    s
}

pub fn demo_grover(n: u64, marked: u64, iterations: Option<u64>, out: &mut impl Write) -> Result<(), DemoError> {
    let cmp = compare_search(n).map_err(invalid)?;
    let rep = grover_search(n, marked, iterations).map_err(invalid)?;
    writeln!(
        out,
        "classical worst case {}, pedagogical quantum queries {}",
        cmp.classical_steps, cmp.quantum_resource
    )?;
    writeln!(
        out,
        "search space {} (padded to {}), marked {}, iterations {}",
        rep.search_space_size, rep.padded_size, rep.marked_index, rep.iterations_run
    )?;
    writeln!(out, "marked probability per iteration:")?;
    out.write_all(grover_chart(&rep.marked_amplitude_trace).as_bytes())?;
    writeln!(out, "final success probability {}", fixed(rep.final_success_probability, 6))?;
    Ok(())
}

pub fn demo_shor(n: u64, mode: ShorMode, seed: u64, out: &mut impl Write) -> Result<(), DemoError> {
    let rep = shor_factor(n, mode, &mut Rng::seeded(seed)).map_err(invalid)?;
    let mut s = String::new();
    let mode_name = match mode {
        ShorMode::FullCircuit => "full circuit",
        ShorMode::Hybrid => "hybrid",
    };
    let _ = writeln!(s, "N = {n}, mode {mode_name}, seed {seed}");
    if let Some(t) = rep.counting_qubits {
        let _ = writeln!(s, "counting qubits {t}");
    }
    for (i, a) in rep.attempts.iter().enumerate() {
        let r = a.order_r.map_or("-".to_string(), |r| r.to_string());
        let _ = writeln!(s, "  attempt {}: a = {}, r = {r}: {}", i + 1, a.a, a.reason);
    }
    match rep.factors {
        Some((p, q)) => {
            let _ = writeln!(s, "factors {p} and {q}");
        }
        None => {
            let _ = writeln!(s, "no factors found within {} attempts", rep.attempts.len());
        }
    }
    Ok(out.write_all(s.as_bytes())?)
}

pub fn demo_qft(num_qubits: usize, period: u64, out: &mut impl Write) -> Result<(), DemoError> {
    let probs = qft_period_demo(num_qubits, period).map_err(invalid)?;
    let mut s = format!("period {period} on {num_qubits} qubits, outcome probabilities after the QFT:\n");
    for (i, p) in probs.iter().enumerate() {
        if *p > 1e-12 {
            let _ = writeln!(s, "  {} ({i})  {}", ket(i, num_qubits), fixed(*p, 6));
        }
    }
    Ok(out.write_all(s.as_bytes())?)
}

pub fn demo_eavesdrop(qubits: u64, intercept: bool, seed: u64, out: &mut impl Write) -> Result<(), DemoError> {
    let rep = eavesdrop_demo(qubits, intercept, &mut Rng::seeded(seed)).map_err(invalid)?;
    writeln!(
        out,
        "check bits {}, intercepted {}, mismatches {}, mismatch rate {}",
        rep.num_check_bits,
        if rep.intercepted { "yes" } else { "no" },
        rep.mismatch_count,
        fixed(rep.mismatch_rate, 4)
    )?;
    let verdict = if rep.mismatch_count > 0 { "interception detected" } else { "no interception detected" };
    writeln!(out, "{verdict}")?;
    Ok(())
}

pub fn lesson_list(catalog: &Catalog, out: &mut impl Write) -> io::Result<()> {
    for layer in [1, 2] {
        writeln!(out, "Layer {layer}")?;
        for l in catalog.lessons().iter().filter(|l| l.layer == layer) {
            writeln!(out, "  {:<22} {}", l.id, l.title)?;
        }
    }
    Ok(())
}

pub fn lesson_show(catalog: &Catalog, id: &str, out: &mut impl Write) -> io::Result<i32> {
    let Some(lesson) = catalog.lesson(id) else {
        writeln!(out, "no lesson `{id}`")?;
        return Ok(EXIT_INPUT);
    };
    writeln!(out, "{} (layer {})", lesson.title, lesson.layer)?;
    if let Some(b) = &lesson.banner {
        writeln!(out, "[{b}]")?;
    }
    for (i, s) in lesson.sections.iter().enumerate() {
        writeln!(out, "\n{}. {}", i + 1, s.prose)?;
        if let Some(a) = s.analogy_ref.as_deref().and_then(|r| catalog.analogy(r)) {
            writeln!(out, "   analogy ({}): {} - {}", a.paper_table, a.title, a.body)?;
        }
        if let Some(src) = &s.circuit_snippet {
            writeln!(out, "   circuit:")?;
            for line in src.lines() {
                writeln!(out, "     {line}")?;
            }
            if let Ok(state) = qana_lessons::check_snippet(src) {
                write!(out, "   result:\n{}", render_probabilities(&state))?;
            }
        }
        if let Some(d) = &s.demo_ref {
            writeln!(out, "   demo: {} {}", d.operation, serde_json::Value::Object(d.params.clone()))?;
        }
    }
    if !lesson.quiz.is_empty() {
        writeln!(out, "\nquiz:")?;
        for (i, q) in lesson.quiz.iter().enumerate() {
            writeln!(out, "  {}. {}", i + 1, q.question)?;
            for (j, c) in q.choices.iter().enumerate() {
                writeln!(out, "     {j}) {c}")?;
            }
        }
    }
    Ok(EXIT_OK)
}

pub fn lesson_quiz(
    catalog: &Catalog,
    id: &str,
    answers: &[i64],
    progress: Option<&Path>,
    out: &mut impl Write,
) -> io::Result<i32> {
    let Some(lesson) = catalog.lesson(id) else {
        writeln!(out, "no lesson `{id}`")?;
        return Ok(EXIT_INPUT);
    };
    let score = match grade_quiz(&lesson.quiz, answers) {
        Ok(s) => s,
        Err(e) => {
            writeln!(out, "error: {e}")?;
            return Ok(EXIT_INPUT);
        }
    };
    for (i, (q, a)) in lesson.quiz.iter().zip(answers).enumerate() {
        let mark = if q.answer_index == *a { "correct" } else { "wrong" };
        writeln!(out, "  {}. {mark}: {}", i + 1, q.explanation)?;
    }
    writeln!(out, "score {score}")?;
    if let Some(path) = progress {
        let event = ProgressEvent::QuizGraded { lesson_id: id.to_string(), score, timestamp: now_timestamp() };
        if let Err(code) = update_progress(path, event, out)? {
            return Ok(code);
        }
    }
    Ok(EXIT_OK)
}

pub fn lesson_done(catalog: &Catalog, id: &str, section: usize, path: &Path, out: &mut impl Write) -> io::Result<i32> {
    match catalog.lesson(id) {
        Some(l) if section < l.sections.len() => {}
        _ => {
            writeln!(out, "no section {section} in lesson `{id}`")?;
            return Ok(EXIT_INPUT);
        }
    }
    let event = ProgressEvent::SectionCompleted { lesson_id: id.to_string(), section_index: section };
    Ok(update_progress(path, event, out)?.err().unwrap_or(EXIT_OK))
}

fn update_progress(path: &Path, event: ProgressEvent, out: &mut impl Write) -> io::Result<Result<(), i32>> {
    let store = match load_progress(path) {
        Ok(s) => s,
        Err(e) => {
            writeln!(out, "error: {e}")?;
            return Ok(Err(EXIT_IO));
        }
    };
    if let Err(e) = persist(&record_progress(store, event), path) {
        writeln!(out, "error: {e}")?;
        return Ok(Err(EXIT_IO));
    }
    Ok(Ok(()))
}

pub fn lesson_progress(catalog: &Catalog, path: &Path, out: &mut impl Write) -> io::Result<i32> {
    let store = match load_progress(path) {
        Ok(s) => s,
        Err(e) => {
            writeln!(out, "error: {e}")?;
            return Ok(EXIT_IO);
        }
    };
    writeln!(out, "student {}", store.student_id)?;
    for s in &store.completed_sections {
        writeln!(out, "  completed {} section {}", s.lesson_id, s.section_index)?;
    }
    for q in &store.quiz_results {
        writeln!(out, "  quiz {} score {} at {}", q.lesson_id, q.score, q.timestamp)?;
    }
    for d in store.dangling_refs(catalog) {
        match d.section_index {
            Some(i) => writeln!(out, "  warning: {} section {i} is not in the catalog", d.lesson_id)?,
            None => writeln!(out, "  warning: lesson {} is not in the catalog", d.lesson_id)?,
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grover_1000_headline() {
        let mut out = Vec::new();
        demo_grover(1000, 0, None, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("classical worst case 1000, pedagogical quantum queries 32\n"), "{text}");
        assert_eq!(text.lines().filter(|l| l.matches('|').count() == 2).count(), 25);
    }

    #[test]
    fn chart_bars_scale_with_probability() {
        let chart = grover_chart(&[0.5, 1.0]);
        let lines: Vec<&str> = chart.lines().collect();
        assert_eq!(lines[0].matches('#').count(), 13);
        assert_eq!(lines[1].matches('#').count(), BAR_WIDTH);
    }

    #[test]
    fn shor_143_prints_factors() {
        let mut out = Vec::new();
        demo_shor(143, ShorMode::Hybrid, 3, &mut out).unwrap();
        assert!(String::from_utf8(out).unwrap().contains("factors 11 and 13"));
    }

    #[test]
    fn invalid_demo_parameters() {
        assert!(demo_shor(16, ShorMode::Hybrid, 0, &mut Vec::new()).is_err());
        assert!(demo_grover(10, 10, None, &mut Vec::new()).is_err());
        assert!(demo_qft(3, 3, &mut Vec::new()).is_err());
        assert!(demo_eavesdrop(0, true, 0, &mut Vec::new()).is_err());
    }
}
