use thiserror::Error;

use crate::model::QuizItem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuizError {
    #[error("expected {expected} answers, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("quiz has no questions")]
    Empty,
}

/// Fraction of answers matching `answer_index`.
pub fn grade_quiz(quiz: &[QuizItem], answers: &[i64]) -> Result<f64, QuizError> {
    if answers.len() != quiz.len() {
        return Err(QuizError::LengthMismatch { expected: quiz.len(), got: answers.len() });
    }
    if quiz.is_empty() {
        return Err(QuizError::Empty);
    }
    let correct = quiz.iter().zip(answers).filter(|(q, &a)| q.answer_index == a).count();
    Ok(correct as f64 / quiz.len() as f64)
}
