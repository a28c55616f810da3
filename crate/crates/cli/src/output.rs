//! Text rendering for the human-facing subcommands.

use nsg::representations::{format_combination, InjectionResult};
use nsg::{AperyInvariants, NumericalSemigroup};

/// `ψ` with the redefinition count as used in the worked traces: `ψ`, `ψ′`,
/// `ψ″`, then `ψ⁽³⁾` and so on.
pub fn psi_name(redefinition: u32) -> String {
    match redefinition {
        0 => "ψ".to_string(),
        1 => "ψ′".to_string(),
        2 => "ψ″".to_string(),
        w => format!("ψ⁽{}⁾", superscript(w)),
    }
}

fn superscript(n: u32) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    n.to_string()
        .chars()
        .map(|c| DIGITS[c.to_digit(10).unwrap() as usize])
        .collect()
}

fn set_display(values: &[i64]) -> String {
    let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Renders the injection outcome; the step trace is included only when
/// `trace` is set.
pub fn injection_report(s: &NumericalSemigroup, result: &InjectionResult, trace: bool) -> String {
    let gens = s.generators();
    let h = result.level;
    let mut out = String::new();
    out.push_str(&format!("S = {s}, level {h}\n"));
    out.push_str(&format!("D_{h} = {}\n", set_display(&result.d_set)));
    for image in &result.initial {
        out.push_str(&format!(
            "ψ({}) = {} = {}\n",
            image.pre,
            format_combination(gens, &image.coeffs),
            image.value
        ));
    }
    if trace {
        for step in &result.trace {
            out.push_str(&format!(
                "block {}, tie at position {} (value {}): {}({}) = {} = {}\n",
                step.block,
                step.tie_position,
                step.tie_value,
                psi_name(step.redefinition),
                step.pre,
                format_combination(gens, &step.coeffs),
                step.value
            ));
        }
    }
    if result.success {
        out.push_str(&format!(
            "result: success — injective map into C_{h} after {} redefinitions\n",
            result.trace.len()
        ));
        for &(pre, image) in &result.assignment {
            out.push_str(&format!("ψ̃({pre}) = {image}\n"));
        }
    } else {
        let f = result.failure.as_ref().expect("failure point present");
        let name = psi_name(f.redefinitions_done);
        out.push_str(&format!(
            "result: failure — tie {}({}) = {}({}) = {} cannot be resolved \
             (no summand position left after {} redefinitions; |D_{h}| = {} > {})\n",
            name,
            f.pre_u,
            name,
            f.pre_v,
            f.tied_value,
            f.redefinitions_done,
            result.d_set.len(),
            h + 1
        ));
    }
    out
}

/// The Apéry set and the invariant table as a plain text table.
pub fn apery_report(s: &NumericalSemigroup, table: &AperyInvariants) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "S = {s}  (m = {}, e.d. = {}, f = {}{})\n",
        s.multiplicity(),
        s.embedding_dimension(),
        s.frobenius(),
        if s.is_symmetric() { ", symmetric" } else { "" }
    ));
    out.push_str(&format!("Ap(S) = {}\n", set_display(s.apery_set())));
    out.push_str("  i    ω_i   ω′_i    a_i    b_i    c_i\n");
    for row in table.rows() {
        out.push_str(&format!(
            "{:>3} {:>6} {:>6} {:>6} {:>6} {:>6}\n",
            row.residue, row.omega, row.omega_prime, row.a, row.b, row.c
        ));
    }
    out.push_str(&format!(
        "tangent cone Cohen-Macaulay: {}\n",
        table.is_cm()
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_names_follow_the_trace_notation() {
        assert_eq!(psi_name(0), "ψ");
        assert_eq!(psi_name(1), "ψ′");
        assert_eq!(psi_name(2), "ψ″");
        assert_eq!(psi_name(3), "ψ⁽³⁾");
        assert_eq!(psi_name(12), "ψ⁽¹²⁾");
    }
}
