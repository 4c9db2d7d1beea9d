//! Named example Coder pairs.

use crate::coalg::{
    binomial_bialgebra, comatrix, degree_weights, divided_power, grading_coderivation, grouplike, new_coder_pair,
    truncated_tensor_coalgebra, word_length_weights, zero_coproduct, Coalgebra, CoderPair, Endo,
};
use crate::error::{Error, Result};

pub const FAMILIES: [&str; 6] =
    ["divided_power", "binomial_bialgebra", "comatrix", "tensor", "grouplike", "zero_coproduct"];

#[derive(Debug, Clone)]
pub struct Example {
    pub name: String,
    pub pair: CoderPair,
}

fn params(family: &str, args: &[usize], count: usize) -> Result<()> {
    if args.len() != count {
        return Err(Error::Invalid(format!("{family} takes {count} parameter(s), got {}", args.len())));
    }
    Ok(())
}

/// Builds a family member. The default coderivation is the degree grading
/// for divided powers and binomials, word length for tensor coalgebras,
/// `diag(0, 1, …)` for the zero coproduct and zero otherwise; `zero_psi`
/// replaces it with the zero map.
pub fn build(family: &str, args: &[usize], zero_psi: bool) -> Result<Example> {
    let (name, c, weights): (String, Coalgebra, Option<Vec<_>>) = match family {
        "divided_power" | "binomial_bialgebra" => {
            params(family, args, 1)?;
            let n = args[0];
            let c = if family == "divided_power" { divided_power(n) } else { binomial_bialgebra(n) };
            (format!("{family}({n})"), c, Some(degree_weights(n + 1)))
        }
        "comatrix" => {
            params(family, args, 1)?;
            (format!("comatrix({})", args[0]), comatrix(args[0])?, None)
        }
        "tensor" => {
            params(family, args, 2)?;
            let (v, n) = (args[0], args[1]);
            (format!("tensor({v},{n})"), truncated_tensor_coalgebra(v, n)?, Some(word_length_weights(v, n)?))
        }
        "grouplike" => {
            params(family, args, 0)?;
            ("grouplike".into(), grouplike(), None)
        }
        "zero_coproduct" => {
            params(family, args, 1)?;
            let d = args[0];
            (format!("zero_coproduct({d})"), zero_coproduct(d)?, Some(degree_weights(d)))
        }
        other => return Err(Error::Invalid(format!("unknown example family '{other}'"))),
    };
    let d = c.dim();
    let (name, psi) = match weights {
        Some(w) if !zero_psi => (format!("{name}+grading"), grading_coderivation(&w, d)?),
        _ => (format!("{name}+zero"), Endo::zero(d)),
    };
    Ok(Example { name, pair: new_coder_pair(c, psi)? })
}

/// Family and parameters of every shipped example, smallest families first.
pub fn shipped_specs() -> Vec<(&'static str, Vec<usize>)> {
    let mut out = Vec::new();
    for n in 0..=6 {
        out.push(("divided_power", vec![n]));
    }
    for n in 0..=6 {
        out.push(("binomial_bialgebra", vec![n]));
    }
    for n in 1..=3 {
        out.push(("comatrix", vec![n]));
    }
    for v in 1..=2 {
        for n in 0..=3 {
            out.push(("tensor", vec![v, n]));
        }
    }
    out.push(("grouplike", vec![]));
    out.push(("zero_coproduct", vec![2]));
    out
}

/// File stem for a family member, e.g. `tensor_2_3`.
pub fn file_stem(family: &str, args: &[usize]) -> String {
    std::iter::once(family.to_string()).chain(args.iter().map(|a| a.to_string())).collect::<Vec<_>>().join("_")
}

pub fn shipped() -> Vec<Example> {
    shipped_specs().into_iter().map(|(f, a)| build(f, &a, false).expect("shipped examples are valid")).collect()
}
