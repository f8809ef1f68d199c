//! Report builders: canonical JSON (sorted keys, exact integers) and the
//! human-readable text renderings.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{Map, Number, Value};

use pisot_core::coding::{self, CodingMapSpec};
use pisot_core::lattice::{self};
use pisot_core::numeration::{self, FinitaryVerdict};
use pisot_core::symbolic::{self, SymbolicGroup};
use pisot_core::{AlgebraicNumber, Error, Result};

use crate::sampling;
use crate::value::parse_value;
use crate::RunConfig;

/// Arbitrary-precision JSON integer (the arbitrary_precision feature keeps
/// the digits verbatim, so round-trips are byte-identical).
fn big(n: &BigInt) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integer literal"))
}

fn usize_num(n: usize) -> Value {
    Value::Number(Number::from(n as u64))
}

fn digits_json(word: &[u64]) -> Value {
    Value::Array(word.iter().map(|&d| Value::Number(Number::from(d))).collect())
}

fn algnum_json(a: &AlgebraicNumber) -> Value {
    let (num, den) = a.to_num_den();
    let mut m = Map::new();
    m.insert("den".into(), big(&den));
    m.insert("num".into(), Value::Array(num.iter().map(big).collect()));
    Value::Object(m)
}

fn matrix_json(m: &pisot_core::IntegerMatrix) -> Value {
    let mut rows = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        rows.push(Value::Array(m.row(i).iter().map(big).collect()));
    }
    Value::Array(rows)
}

fn emit(cfg: &RunConfig, json: Value, text: String) {
    if cfg.json {
        println!("{}", serde_json::to_string(&json).expect("serializable"));
    } else {
        println!("{text}");
    }
}

pub fn cmd_analyze(cfg: &RunConfig) -> Result<()> {
    let field = &cfg.field;
    let cert = field.verify_pisot(pisot_core::PRECISION_CAP)?;
    let gs = lattice::group_structure(field)?;
    let mb = lattice::trace_matrix(field);
    let beta = field.dominant_root(cfg.precision);

    let mut j = Map::new();
    j.insert("D".into(), big(&gs.discriminant));
    j.insert("M_beta".into(), matrix_json(&mb));
    j.insert("beta".into(), Value::String(beta.describe(20)));
    j.insert("cyclic".into(), Value::Bool(gs.is_cyclic));
    j.insert("d".into(), big(&gs.d));
    j.insert(
        "invariant_factors".into(),
        Value::Array(gs.invariant_factors.iter().map(big).collect()),
    );
    j.insert("poly".into(), Value::String(field.to_text()));
    j.insert("xi0".into(), algnum_json(&gs.xi0));

    let text = format!(
        "poly: {}\nbeta: {}\nconjugate modulus bound: {} (certified at {} bits)\nM_beta: {}\nD: {}\ninvariant factors: {:?}\nd: {}\ncyclic: {}\nadjugate entries coprime: {}\nxi0: {}",
        field.to_text(),
        beta.describe(20),
        cert.conjugate_modulus_bound.to_decimal(8),
        cert.precision_bits,
        mb,
        gs.discriminant,
        gs.invariant_factors.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        gs.d,
        gs.is_cyclic,
        gs.adjugate_coprime,
        gs.xi0,
    );
    emit(cfg, Value::Object(j), text);
    Ok(())
}

pub fn cmd_expand(cfg: &RunConfig, value_text: &str) -> Result<()> {
    let field = &cfg.field;
    let x = parse_value(field, value_text)?;
    let e = numeration::expand_positive(&x, cfg.steps)?;
    let back = numeration::evaluate_expansion(&e);
    let exact = back == x;
    if !exact {
        return Err(Error::InternalInconsistency(
            "expansion does not reconstruct its value".into(),
        ));
    }

    let mut j = Map::new();
    j.insert("frac_pre".into(), digits_json(e.preperiod()));
    j.insert("frac_period".into(), digits_json(e.period()));
    j.insert("int".into(), digits_json(e.int_digits()));
    j.insert("reconstruction_exact".into(), Value::Bool(exact));
    j.insert("value".into(), algnum_json(&x));

    let text = format!(
        "value: {}\nexpansion: {}\ninteger digits: {:?}\npreperiod: {:?}\nperiod: {:?} (length {})\nreconstruction: exact",
        x,
        e,
        e.int_digits(),
        e.preperiod(),
        e.period(),
        e.period().len(),
    );
    emit(cfg, Value::Object(j), text);
    Ok(())
}

pub fn cmd_group(cfg: &RunConfig) -> Result<()> {
    let field = &cfg.field;
    let grp = SymbolicGroup::enumerate(field, cfg.ext_height, cfg.steps)?;
    let disc = lattice::discriminant(field);

    let mut classes = Vec::with_capacity(grp.len());
    let mut text = format!(
        "group order: {} (= |D|, D = {})\nclasses (tail sets over translates of height <= {}):\n",
        grp.len(),
        disc,
        cfg.ext_height
    );
    for c in grp.classes() {
        let mut cj = Map::new();
        cj.insert("order".into(), big(&c.order));
        cj.insert("rep".into(), algnum_json(&c.representative));
        let mut tails = Vec::new();
        for w in &c.tail_set {
            let (canon, offset) = w.canonical_rotation();
            let mut tj = Map::new();
            tj.insert("offset".into(), usize_num(offset));
            tj.insert("word".into(), digits_json(canon.digits()));
            tails.push(Value::Object(tj));
        }
        cj.insert("tails".into(), Value::Array(tails));
        classes.push(Value::Object(cj));

        let tails_text: Vec<String> =
            c.tail_set.iter().map(|w| format!("{w}")).collect();
        text.push_str(&format!(
            "  [{}] rep = {}  order {}  canonical tail {}  tails {{{}}}\n",
            c.coords.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
            c.representative,
            c.order,
            c.canonical_tail,
            tails_text.join(", ")
        ));
    }
    let mut j = Map::new();
    j.insert("D".into(), big(&disc));
    j.insert("classes".into(), Value::Array(classes));
    j.insert("count".into(), usize_num(grp.len()));
    emit(cfg, Value::Object(j), text.trim_end().to_string());
    Ok(())
}

pub fn cmd_finitary(cfg: &RunConfig, carry: bool) -> Result<()> {
    let field = &cfg.field;
    let rep = numeration::finitary_classify(field, cfg.height, cfg.steps)?;

    let mut j = Map::new();
    let mut text = String::new();
    match &rep.verdict {
        FinitaryVerdict::ProvenFinitary(c) => {
            j.insert("verdict".into(), Value::String("ProvenFinitary".into()));
            j.insert("criterion".into(), Value::String(format!("{c}")));
            text.push_str(&format!("verdict: ProvenFinitary ({c})"));
        }
        FinitaryVerdict::ProvenNotFinitary { criterion, witness } => {
            j.insert("verdict".into(), Value::String("ProvenNotFinitary".into()));
            if let Some(c) = criterion {
                j.insert("criterion".into(), Value::String(format!("{c}")));
            }
            text.push_str("verdict: ProvenNotFinitary");
            if let Some(c) = criterion {
                text.push_str(&format!(" ({c})"));
            }
            if let Some(w) = witness {
                let mut wj = Map::new();
                wj.insert("element".into(), algnum_json(&w.element));
                wj.insert("frac_pre".into(), digits_json(w.expansion.preperiod()));
                wj.insert("frac_period".into(), digits_json(w.expansion.period()));
                j.insert("witness".into(), Value::Object(wj));
                text.push_str(&format!(
                    "\nwitness: {} expands as {}",
                    w.element, w.expansion
                ));
            }
        }
        FinitaryVerdict::NoCounterexampleUpTo(h) => {
            j.insert("verdict".into(), Value::String("NoCounterexampleUpTo".into()));
            j.insert("height".into(), Value::Number(Number::from(*h)));
            text.push_str(&format!("verdict: NoCounterexampleUpTo({h})"));
        }
    }
    if carry {
        if !rep.is_proven_finitary() {
            return Err(Error::NotFinitary("carry bound is only meaningful for finitary β".into()));
        }
        let h = cfg.height.min(3);
        let l = numeration::measure_carry_bound(field, 1000, h, cfg.steps)?;
        j.insert("carry_bound_observed".into(), Value::Number(Number::from(l)));
        j.insert("carry_height".into(), Value::Number(Number::from(h)));
        text.push_str(&format!("\ncarry bound observed: {l} (pairs of height <= {h})"));
    }
    emit(cfg, Value::Object(j), text);
    Ok(())
}

pub fn cmd_coding(cfg: &RunConfig) -> Result<()> {
    let field = &cfg.field;
    let companion = coding::companion_matrix(field);
    let a = coding::endomorphism_matrix(field)?;
    let det_a = a.determinant();
    let parry = numeration::parry_sequence(field, numeration::DEFAULT_PARRY_LEN)?;

    // kernel over the enumerated group when finitary; skipped otherwise
    let kernel = match SymbolicGroup::enumerate(field, cfg.ext_height.min(3), cfg.steps) {
        Ok(grp) => {
            let probes = sampling::random_periodic_words(
                &parry,
                (cfg.samples / 10).max(3),
                parry.quasi_period.len().max(4) + 1,
                cfg.seed,
            )?;
            Some(coding::verify_kernel(&grp, cfg.precision, &probes)?)
        }
        Err(Error::NotFinitary(_)) => None,
        Err(e) => return Err(e),
    };

    let samples = sampling::random_expansions(field, &parry, cfg.samples, 4, 24, cfg.seed)?;
    let unit = CodingMapSpec::unit(field);
    let fundamental = CodingMapSpec::fundamental(field);
    let semi_unit = coding::verify_semiconjugacy(&unit, &samples, cfg.precision)?;
    let semi_fund = coding::verify_semiconjugacy(&fundamental, &samples, cfg.precision)?;
    let fact = coding::verify_factorization(field, &samples, cfg.precision)?;
    let semi_max = pisot_core::Dyadic::max(&semi_unit.max_error, &semi_fund.max_error);

    let mut j = Map::new();
    j.insert("A".into(), matrix_json(&a));
    j.insert("companion".into(), matrix_json(&companion));
    j.insert("detA".into(), big(&det_a));
    j.insert(
        "factorization_max_err".into(),
        Value::String(coding::log2_bound_text(&fact.max_error)),
    );
    j.insert(
        "kernel_classes".into(),
        match &kernel {
            Some(k) => usize_num(k.kernel_cardinality),
            None => Value::Null,
        },
    );
    j.insert(
        "semiconjugacy_max_err".into(),
        Value::String(coding::log2_bound_text(&semi_max)),
    );

    let mut text = format!(
        "companion matrix: {companion}\nA: {a}\ndet A: {det_a}\nsemiconjugacy max torus error: {} over {} samples\nfactorization max torus error: {} over {} samples",
        coding::log2_bound_text(&semi_max),
        semi_unit.samples,
        coding::log2_bound_text(&fact.max_error),
        fact.samples,
    );
    match &kernel {
        Some(k) => {
            text.push_str(&format!(
                "\nkernel: {} classes at the origin ({} tail words checked, max distance {}); {} non-kernel probes kept away",
                k.kernel_cardinality,
                k.tails_checked,
                coding::log2_bound_text(&k.max_origin_distance),
                k.converse.len()
            ));
        }
        None => text.push_str("\nkernel: skipped (β not proven finitary)"),
    }
    emit(cfg, Value::Object(j), text);
    Ok(())
}

pub fn cmd_recurrent(cfg: &RunConfig, xi_text: &str, n: usize) -> Result<()> {
    let field = &cfg.field;
    let xi = parse_value(field, xi_text)?;
    let seq = symbolic::recurrent_sequence(&xi, n)?;
    let recognized = symbolic::recognize_xi(&seq.terms, field)?;
    let limits = symbolic::partial_limit_tails(&seq.terms, field, cfg.steps).ok();

    let mut j = Map::new();
    j.insert("onset".into(), usize_num(seq.onset));
    j.insert("recognized_xi".into(), algnum_json(&recognized));
    if let Some(rep) = &limits {
        j.insert(
            "tails".into(),
            Value::Array(rep.tails.iter().map(|w| digits_json(w.digits())).collect()),
        );
    }
    j.insert("terms".into(), Value::Array(seq.terms.iter().map(big).collect()));
    j.insert("xi".into(), algnum_json(&xi));

    let mut text = format!(
        "xi: {xi}\nterms: {:?}\nrecurrence onset: {}\nrecognized xi: {recognized}",
        seq.terms.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        seq.onset,
    );
    match &limits {
        Some(rep) => {
            let tails: Vec<String> = rep.tails.iter().map(|w| format!("{w}")).collect();
            text.push_str(&format!(
                "\npartial limit tails (period {}): {{{}}}",
                rep.period_used,
                tails.join(", ")
            ));
            if !rep.boundary_escapes.is_empty() {
                let esc: Vec<String> =
                    rep.boundary_escapes.iter().map(|w| format!("{w}")).collect();
                text.push_str(&format!("\nboundary escapes (inadmissible limits): {{{}}}", esc.join(", ")));
            }
        }
        None => text.push_str("\npartial limit tails: need more terms to stabilize"),
    }
    emit(cfg, Value::Object(j), text);
    Ok(())
}
