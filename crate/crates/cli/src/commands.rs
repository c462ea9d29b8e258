//! Subcommand implementations; each produces one report.

use std::path::Path;

use liegrowth::counting::{avoidance_growth_rate, count_avoiding, graded_lie_dimension, witt_table};
use liegrowth::derivations::{escape_exponent, escaping_monomial, IndexedAlphabet};
use liegrowth::field::{parse_rational, rational_to_f64};
use liegrowth::freealg::{parse_expression, LetterNames};
use liegrowth::series::{exponential_base, greedy_base_sequence};
use liegrowth::subalgebra::{free_complement, leading_parts, subalgebra_growth, GeneratorSet};
use liegrowth::subideal::{fibonacci_cogrowth, ls_avoidance_cogrowth, subideal_closure};
use liegrowth::words::{generate_ls_words, standard_bracketing};
use liegrowth::{Field, Fp, GradedAlphabet, GrowthTable, Rational, Truncation};
use num_bigint::BigInt;

use crate::args::{Command, Engine, FieldMode, Generators, Linear};
use crate::report::{Cell, Format, Report};
use crate::Failure;

/// The report plus warnings for stderr.
pub struct Done {
    pub report: Report,
    pub format: Format,
    pub warnings: Vec<String>,
}

fn compute<T>(r: liegrowth::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Compute(e.to_string()))
}

fn alphabet(spec: &str) -> Result<GradedAlphabet, Failure> {
    compute(GradedAlphabet::parse(spec))
}

fn table_report(t: &GrowthTable) -> Report {
    let mut r = Report::new(["n", "d", "g"]);
    for row in t.rows() {
        r.push(vec![Cell::int(row.n), Cell::Int(row.d.clone().into()), Cell::Int(row.g.clone().into())]);
    }
    r
}

fn load_generators(alphabet: &GradedAlphabet, g: &Generators) -> Result<GeneratorSet, Failure> {
    let text = match (&g.generators, &g.generators_inline) {
        (Some(_), Some(_)) => {
            return Err(Failure::Usage(
                "give either --generators or --generators-inline, not both".into(),
            ))
        }
        (None, None) => return Err(Failure::Usage("missing --generators or --generators-inline".into())),
        (Some(path), None) => read(path)?,
        (None, Some(inline)) => inline.split(';').collect::<Vec<_>>().join("\n"),
    };
    compute(GeneratorSet::parse(alphabet, &text))
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Compute(format!("cannot read {}: {e}", path.display())))
}

fn truncation(max_degree: usize, linear: &Linear) -> Truncation {
    let t = Truncation::new(max_degree);
    match linear.degree_cap {
        Some(cap) => t.with_cap(cap),
        None => t,
    }
}

/// Runs `f` in the chosen field; prime-field reports carry the modulus.
fn in_field(
    linear: &Linear,
    exact: impl FnOnce() -> liegrowth::Result<Report>,
    prime: impl FnOnce() -> liegrowth::Result<Report>,
) -> Result<Report, Failure> {
    match linear.field_mode {
        FieldMode::Exact => compute(exact()),
        FieldMode::Prime => {
            let mut r = compute(prime())?;
            r.stamp("prime", Cell::int(Fp::MODULUS));
            Ok(r)
        }
    }
}

fn homogeneous(s: GeneratorSet, warnings: &mut Vec<String>) -> Result<GeneratorSet, Failure> {
    if s.is_homogeneous() {
        return Ok(s);
    }
    warnings.push("warning: nonhomogeneous generators replaced by their leading parts".into());
    compute(leading_parts(&s))
}

/// True when the alphabet is two letters of degree 1 and `s` is the greatest one.
fn is_single_top_letter(alphabet: &GradedAlphabet, s: &GeneratorSet) -> bool {
    let x = alphabet.greatest();
    alphabet.len() == 2
        && alphabet.histogram() == [2]
        && s.len() == 1
        && matches!(s.elements()[0].poly().terms(), [(w, _)] if w.letters() == [x])
}

pub fn execute(command: Command) -> Result<Done, Failure> {
    let mut warnings = Vec::new();
    let (report, format) = match command {
        Command::Witt {
            rank,
            alphabet: spec,
            max_degree,
            output,
        } => {
            let table = match (rank, spec) {
                (Some(m), None) => witt_table(m, max_degree),
                (None, Some(spec)) => compute(graded_lie_dimension(&alphabet(&spec)?.histogram(), max_degree))?,
                _ => return Err(Failure::Usage("give --rank or --alphabet".into())),
            };
            (table_report(&table), output.format)
        }
        Command::Lyndon {
            alphabet: spec,
            max_degree,
            degree,
            output,
        } => {
            let a = alphabet(&spec)?;
            let degrees = match degree {
                Some(d) if d > max_degree => return Err(Failure::Usage("--degree exceeds --max-degree".into())),
                Some(d) => d..=d,
                None => 1..=max_degree,
            };
            let mut r = Report::new(["n", "word", "commutator"]);
            for n in degrees {
                for w in generate_ls_words(&a, n as u32) {
                    let tree = compute(standard_bracketing(&w))?;
                    r.push(vec![Cell::int(n), Cell::text(a.format_word(&w)), Cell::text(a.format_tree(&tree))]);
                }
            }
            (r, output.format)
        }
        Command::Avoid {
            alphabet: spec,
            word,
            max_degree,
            rate,
            output,
        } => {
            let a = alphabet(&spec)?;
            let u = compute(a.parse_word(&word))?;
            let r = if rate {
                let mut r = Report::new(["word", "growth_rate"]);
                r.push(vec![Cell::text(a.format_word(&u)), Cell::real(compute(avoidance_growth_rate(&a, &u))?)]);
                r
            } else {
                table_report(&compute(count_avoiding(&a, &u, max_degree))?)
            };
            (r, output.format)
        }
        Command::Base {
            degrees,
            alphabet: spec,
            tolerance,
            greedy,
            steps,
            output,
        } => {
            let r = if let Some(m0) = greedy {
                greedy_report(&compute(parse_rational(&m0))?, steps)?
            } else {
                let histogram = match (degrees, spec) {
                    (Some(k), None) => k,
                    (None, Some(spec)) => alphabet(&spec)?.histogram(),
                    _ => return Err(Failure::Usage("give --degrees, --alphabet or --greedy".into())),
                };
                let tol = compute(parse_rational(&tolerance))?;
                let b = compute(exponential_base(&histogram, &tol))?;
                let mut r = Report::new(["z0", "lo", "hi", "exact", "certified", "polynomial"]);
                let poly: Vec<String> = b.poly.iter().map(BigInt::to_string).collect();
                r.push(vec![
                    Cell::real(b.z0),
                    Cell::text(b.lo.to_string()),
                    Cell::text(b.hi.to_string()),
                    Cell::Bool(b.exact),
                    Cell::Bool(b.verify(&histogram)),
                    Cell::text(poly.join(",")),
                ]);
                r
            };
            (r, output.format)
        }
        Command::Growth {
            alphabet: spec,
            generators,
            max_degree,
            linear,
            output,
        } => {
            let a = alphabet(&spec)?;
            let s = load_generators(&a, &generators)?;
            let t = truncation(max_degree, &linear);
            let r = in_field(
                &linear,
                || Ok(table_report(&subalgebra_growth::<Rational>(&s, t)?)),
                || Ok(table_report(&subalgebra_growth::<Fp>(&s, t)?)),
            )?;
            (r, output.format)
        }
        Command::Cogrowth {
            alphabet: spec,
            generators,
            level,
            max_degree,
            engine,
            linear,
            output,
        } => {
            let a = alphabet(&spec)?;
            let s = load_generators(&a, &generators)?;
            let r = match engine {
                Engine::Formula | Engine::Lswords if !is_single_top_letter(&a, &s) => {
                    return Err(Failure::Compute(
                        "the formula and lswords engines cover only S = {x} for two letters y < x of degree 1".into(),
                    ))
                }
                Engine::Formula => match level {
                    1 => table_report(&GrowthTable::from_graded(1, (1..=max_degree).map(|n| u32::from(n == 1)))),
                    2 => table_report(&fibonacci_cogrowth(max_degree)),
                    _ => {
                        return Err(Failure::Compute(
                            "no closed form beyond level 2; use --engine lswords or linear".into(),
                        ))
                    }
                },
                Engine::Lswords => table_report(&compute(ls_avoidance_cogrowth(level, max_degree))?),
                Engine::Linear => {
                    let s = homogeneous(s, &mut warnings)?;
                    let t = truncation(max_degree, &linear);
                    in_field(
                        &linear,
                        || Ok(table_report(&subideal_closure::<Rational>(&s, level, t)?.cogrowth_table())),
                        || Ok(table_report(&subideal_closure::<Fp>(&s, level, t)?.cogrowth_table())),
                    )?
                }
            };
            (r, output.format)
        }
        Command::Complement {
            alphabet: spec,
            generators,
            max_degree,
            list,
            linear,
            output,
        } => {
            let a = alphabet(&spec)?;
            let s = load_generators(&a, &generators)?;
            let t = truncation(max_degree, &linear);
            let r = in_field(
                &linear,
                || complement_report::<Rational>(&a, &s, t, list),
                || complement_report::<Fp>(&a, &s, t, list),
            )?;
            (r, output.format)
        }
        Command::Derive {
            element,
            k,
            max_steps,
            output,
        } => {
            let e = compute(parse_expression(&element, &IndexedAlphabet))?;
            let n = compute(escape_exponent(e.poly(), k, max_steps))?;
            let mut r = Report::new(["element", "k", "max_steps", "exponent", "witness"]);
            let witness = match n {
                Some(n) => {
                    let p = compute(liegrowth::derivations::apply_shift(e.poly(), n))?;
                    let w = escaping_monomial(&p, k).expect("escape was found");
                    let names: Vec<String> = w.letters().iter().map(|&l| IndexedAlphabet.letter_name(l)).collect();
                    Cell::text(names.join("*"))
                }
                None => Cell::Null,
            };
            r.push(vec![
                Cell::text(e.to_text(&IndexedAlphabet)),
                Cell::int(k),
                Cell::int(max_steps),
                n.map_or(Cell::Null, Cell::int),
                witness,
            ]);
            if n.is_none() {
                warnings.push(format!("warning: no escape within {max_steps} steps"));
            }
            (r, output.format)
        }
    };
    Ok(Done {
        report,
        format,
        warnings,
    })
}

fn greedy_report(m0: &Rational, steps: usize) -> Result<Report, Failure> {
    let seq = compute(greedy_base_sequence(m0, steps))?;
    let mut r = Report::new(["i", "k", "remainder", "below_bound"]);
    let mut power = Rational::from_integer(1.into());
    for (i, a) in seq.remainders.iter().enumerate().skip(1) {
        power /= m0.clone();
        r.push(vec![
            Cell::int(i),
            Cell::int(seq.k[i - 1]),
            Cell::real(rational_to_f64(a)),
            Cell::Bool(*a < power),
        ]);
    }
    Ok(r)
}

fn complement_report<F: Field>(
    alphabet: &GradedAlphabet,
    s: &GeneratorSet,
    t: Truncation,
    list: bool,
) -> liegrowth::Result<Report> {
    let c = free_complement::<F>(s, t)?;
    if list {
        let mut r = Report::new(["n", "element"]);
        for (d, e) in &c.added {
            r.push(vec![Cell::int(*d), Cell::text(e.to_text(alphabet))]);
        }
        return Ok(r);
    }
    let mut r = Report::new(["n", "added", "codim_d", "codim_g"]);
    for (row, added) in c.codim.rows().iter().zip(c.added_per_degree()) {
        r.push(vec![
            Cell::int(row.n),
            Cell::int(added),
            Cell::Int(row.d.clone().into()),
            Cell::Int(row.g.clone().into()),
        ]);
    }
    Ok(r)
}
