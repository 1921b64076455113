//! The Thue-Morse word `t` and the sequence of its abelian squares.

mod defect;
mod linrep;
mod recurrence;
mod sequence;
mod word;

pub use defect::{defect, factor_defect, tm_is_abelian_square_at, HalfInteger};
pub use linrep::{
    binary_digits, binary_string, tm_f_linear_rep, tm_f_linear_rep_traced,
    tm_linear_representation, LinearRepresentation, LinrepTrace, TM_LINREP_DATA, TM_LINREP_VERSION,
};
pub use recurrence::{
    Affine, Coefficient, RecurrenceEvaluator, RecurrenceSystem, Rule, RuleReport, RuleStatus, Term,
    ValidationReport, TM_RECURRENCE_DATA,
};
pub use sequence::{
    extrema_from_values, is_four_power_minus_one, is_three_times_power_of_two,
    tm_closed_form_arguments, tm_f_bruteforce, tm_f_bruteforce_table, tm_f_closed_forms,
    tm_f_extrema_scan, tm_f_linear_rep_range, tm_f_recurrence, tm_f_recurrence_range,
    tm_recurrence_system, validate_tm_recurrences, ExtremaReport, ExtremumRow, ValidatedRecurrence,
    TM_F_TABLE, VALIDATION_INSTANCES,
};
pub use word::{
    mu_squared, tm_complexity, tm_complexity_certified, tm_complexity_recurrence, tm_faa_fab,
    tm_prefix, tm_symbol, ThueMorseSource,
};
