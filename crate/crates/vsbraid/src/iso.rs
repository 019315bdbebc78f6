//! Two-way isomorphism certificates between presentations and concrete
//! computable models (free products, ℤ×Sₙ).
//!
//! A certificate carries generator maps in both directions. Verification
//! checks that relators die under both maps and that both composites fix the
//! generators. Equality on a model side is exact arithmetic; equality on a
//! presented side is the bounded word-problem engine, and an inconclusive
//! search rejects the certificate instead of approximating.

use std::collections::BTreeMap;
use std::fmt;

use crate::freeproduct::{standard_presentation, FactorSpec};
use crate::hom::GeneratorMap;
use crate::perm::{Permutation, ZxSn};
use crate::target::TargetGroup;
use crate::presentation::{
    format_presentation, parse_presentation, Presentation, PresentationError,
};
use crate::trivialize::{Triviality, Trivializer};
use crate::word::{Gen, Word};

/// A concrete group with exact arithmetic and a standard presentation.
#[derive(Debug, Clone)]
pub enum Model {
    FreeProduct(FactorSpec),
    ZxSn(usize),
}

impl Model {
    /// The standard presentation: factor generators `f<i>g<j>` with
    /// commutators and torsion powers, or `t` plus Coxeter generators
    /// `w1..w(n-1)` with the central relations.
    pub fn presentation(&self, strands: usize) -> Presentation {
        match self {
            Model::FreeProduct(spec) => standard_presentation(spec, strands).0,
            Model::ZxSn(n) => zxsn_presentation(*n, strands).source,
        }
    }

    fn word_is_identity(&self, w: &Word, strands: usize) -> Result<bool, String> {
        match self {
            Model::FreeProduct(spec) => {
                let (_, map) = standard_presentation(spec, strands);
                let v = map.eval(w).map_err(|e| e.to_string())?;
                Ok(v.is_identity())
            }
            Model::ZxSn(n) => {
                let map = zxsn_presentation(*n, strands);
                let v = map.eval(w).map_err(|e| e.to_string())?;
                Ok(v == map.group.identity())
            }
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Model::FreeProduct(spec) => write!(f, "factorspec {spec}"),
            Model::ZxSn(n) => write!(f, "zxsn n={n}"),
        }
    }
}

/// The standard presentation of ℤ×Sₙ with its canonical interpretation.
pub fn zxsn_presentation(n: usize, strands: usize) -> GeneratorMap<ZxSn> {
    use crate::presentation::{Relator, RelatorTag};
    let t = Gen::named("t");
    let w: Vec<Gen> = (1..n).map(|i| Gen::named(&format!("w{i}"))).collect();
    let mut gens = vec![t.clone()];
    gens.extend(w.iter().cloned());
    let mut relators = Vec::new();
    let word = |letters: &[(Gen, i64)]| Word::from_letters(strands, letters.iter().cloned());
    for wi in &w {
        relators.push(Relator::from_word(RelatorTag::Derived, word(&[(wi.clone(), 2)])));
    }
    for i in 0..w.len().saturating_sub(1) {
        let braid = word(&[
            (w[i].clone(), 1),
            (w[i + 1].clone(), 1),
            (w[i].clone(), 1),
            (w[i + 1].clone(), -1),
            (w[i].clone(), -1),
            (w[i + 1].clone(), -1),
        ]);
        relators.push(Relator::from_word(RelatorTag::Derived, braid));
    }
    for i in 0..w.len() {
        for j in (i + 2)..w.len() {
            let comm = word(&[
                (w[i].clone(), 1),
                (w[j].clone(), 1),
                (w[i].clone(), -1),
                (w[j].clone(), -1),
            ]);
            relators.push(Relator::from_word(RelatorTag::Derived, comm));
        }
    }
    for wi in &w {
        let central =
            word(&[(t.clone(), 1), (wi.clone(), 1), (t.clone(), -1), (wi.clone(), -1)]);
        relators.push(Relator::from_word(RelatorTag::Derived, central));
    }
    let p = Presentation::custom(strands, gens, relators);
    let group = ZxSn { degree: n };
    let mut images = BTreeMap::new();
    images.insert(t, group.elem(1, Permutation::identity(n)));
    for (i, wi) in w.iter().enumerate() {
        images.insert(wi.clone(), group.elem(0, Permutation::adjacent(n, i + 1)));
    }
    GeneratorMap::new(p, group, images)
}

/// One side of a certificate.
#[derive(Debug, Clone)]
pub enum IsoSide {
    Presented(Presentation),
    Concrete(Model),
}

impl IsoSide {
    pub fn presentation(&self, strands: usize) -> Presentation {
        match self {
            IsoSide::Presented(p) => p.clone(),
            IsoSide::Concrete(m) => m.presentation(strands),
        }
    }
}

/// Mutually inverse generator maps between two sides.
#[derive(Debug, Clone)]
pub struct IsoCertificate {
    pub side1: IsoSide,
    pub side2: IsoSide,
    /// side-1 generator → word over side-2 generators
    pub map12: BTreeMap<Gen, Word>,
    /// side-2 generator → word over side-1 generators
    pub map21: BTreeMap<Gen, Word>,
}

#[derive(Debug, Clone)]
pub struct IsoReport {
    pub valid: bool,
    pub failures: Vec<String>,
}

enum Engine<'a> {
    Exact(&'a Model, usize),
    Search(Box<Trivializer>, &'a Presentation),
}

impl Engine<'_> {
    fn word_is_identity(&self, w: &Word, budget: usize) -> Result<bool, String> {
        match self {
            Engine::Exact(m, strands) => m.word_is_identity(w, *strands),
            Engine::Search(t, p) => match t.decide(w, budget) {
                Triviality::Trivial => Ok(true),
                Triviality::Nontrivial => Ok(false),
                Triviality::Unknown => {
                    // a small separating quotient can settle nontriviality
                    let id = Word::identity(p.strands);
                    let targets = [crate::target::SmallGroup::symmetric(3)];
                    if let Ok(Some(wit)) =
                        crate::homcount::search_separating_quotient(p, w, &id, &targets)
                    {
                        return Err(format!(
                            "word is nontrivial: it maps to {} in a verified {} quotient",
                            wit.a_image, wit.target
                        ));
                    }
                    Err("word-problem search inconclusive; certificate rejected".to_string())
                }
            },
        }
    }
}

fn substitute_total(
    w: &Word,
    map: &BTreeMap<Gen, Word>,
    side: &str,
) -> Result<Word, String> {
    for l in w.letters() {
        if !map.contains_key(&l.gen) {
            return Err(format!("{side} map has no image for generator `{}`", l.gen));
        }
    }
    Ok(w.substitute(map))
}

/// Runs the four certificate checks at the given search budget.
pub fn verify_iso(cert: &IsoCertificate, budget: usize) -> IsoReport {
    let mut failures = Vec::new();
    let strands = match (&cert.side1, &cert.side2) {
        (IsoSide::Presented(p), _) => p.strands,
        (_, IsoSide::Presented(p)) => p.strands,
        _ => 2,
    };
    let p1 = cert.side1.presentation(strands);
    let p2 = cert.side2.presentation(strands);
    let engine1 = match &cert.side1 {
        IsoSide::Concrete(m) => Engine::Exact(m, strands),
        IsoSide::Presented(p) => Engine::Search(Box::new(Trivializer::new(p)), p),
    };
    let engine2 = match &cert.side2 {
        IsoSide::Concrete(m) => Engine::Exact(m, strands),
        IsoSide::Presented(p) => Engine::Search(Box::new(Trivializer::new(p)), p),
    };

    // (a) side-1 relators die on side 2
    for r in &p1.relators {
        match substitute_total(&r.word, &cert.map12, "map12")
            .and_then(|img| engine2.word_is_identity(&img, budget))
        {
            Ok(true) => {}
            Ok(false) => failures.push(format!("relator `{}` of side 1 survives on side 2", r.word)),
            Err(e) => failures.push(format!("relator `{}` of side 1: {e}", r.word)),
        }
        if !failures.is_empty() {
            return IsoReport { valid: false, failures };
        }
    }
    // (b) side-2 relators die on side 1
    for r in &p2.relators {
        match substitute_total(&r.word, &cert.map21, "map21")
            .and_then(|img| engine1.word_is_identity(&img, budget))
        {
            Ok(true) => {}
            Ok(false) => failures.push(format!("relator `{}` of side 2 survives on side 1", r.word)),
            Err(e) => failures.push(format!("relator `{}` of side 2: {e}", r.word)),
        }
        if !failures.is_empty() {
            return IsoReport { valid: false, failures };
        }
    }
    // (c) map21 ∘ map12 fixes side-1 generators
    for g in &p1.generators {
        let image = match cert.map12.get(g) {
            Some(w) => w.clone(),
            None => {
                failures.push(format!("map12 has no image for generator `{g}`"));
                return IsoReport { valid: false, failures };
            }
        };
        let back = match substitute_total(&image, &cert.map21, "map21") {
            Ok(w) => w,
            Err(e) => {
                failures.push(e);
                return IsoReport { valid: false, failures };
            }
        };
        let diff = back.concat(&Word::gen(strands, g.clone(), -1)).expect("same strands");
        match engine1.word_is_identity(&diff, budget) {
            Ok(true) => {}
            Ok(false) => failures.push(format!("map21∘map12 moves generator `{g}`")),
            Err(e) => failures.push(format!("map21∘map12 on `{g}`: {e}")),
        }
        if !failures.is_empty() {
            return IsoReport { valid: false, failures };
        }
    }
    // (d) map12 ∘ map21 fixes side-2 generators
    for g in &p2.generators {
        let image = match cert.map21.get(g) {
            Some(w) => w.clone(),
            None => {
                failures.push(format!("map21 has no image for generator `{g}`"));
                return IsoReport { valid: false, failures };
            }
        };
        let back = match substitute_total(&image, &cert.map12, "map12") {
            Ok(w) => w,
            Err(e) => {
                failures.push(e);
                return IsoReport { valid: false, failures };
            }
        };
        let diff = back.concat(&Word::gen(strands, g.clone(), -1)).expect("same strands");
        match engine2.word_is_identity(&diff, budget) {
            Ok(true) => {}
            Ok(false) => failures.push(format!("map12∘map21 moves generator `{g}`")),
            Err(e) => failures.push(format!("map12∘map21 on `{g}`: {e}")),
        }
        if !failures.is_empty() {
            return IsoReport { valid: false, failures };
        }
    }
    IsoReport { valid: true, failures }
}

/// Emits the certificate file format: two side blocks followed by
/// `map12` / `map21` blocks of `gen -> word` lines.
pub fn format_certificate(cert: &IsoCertificate) -> String {
    let mut out = String::new();
    for (label, side) in [("side1", &cert.side1), ("side2", &cert.side2)] {
        match side {
            IsoSide::Presented(p) => {
                out.push_str(&format!("{label} presentation\n"));
                out.push_str(&format_presentation(p));
                out.push_str("end\n");
            }
            IsoSide::Concrete(m) => out.push_str(&format!("{label} {m}\n")),
        }
    }
    out.push_str("map12\n");
    for (g, w) in &cert.map12 {
        out.push_str(&format!("{g} -> {w}\n"));
    }
    out.push_str("map21\n");
    for (g, w) in &cert.map21 {
        out.push_str(&format!("{g} -> {w}\n"));
    }
    out
}

/// Parses the certificate file format.
pub fn parse_certificate(text: &str) -> Result<IsoCertificate, String> {
    let mut side1: Option<IsoSide> = None;
    let mut side2: Option<IsoSide> = None;
    let mut map12: Vec<(String, String)> = Vec::new();
    let mut map21: Vec<(String, String)> = Vec::new();
    let mut lines = text.lines().peekable();
    let mut section = "";
    while let Some(line) = lines.next() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("side1 ").or_else(|| line.strip_prefix("side2 ")) {
            let is_one = line.starts_with("side1");
            let side = if rest == "presentation" {
                let mut block = String::new();
                for inner in lines.by_ref() {
                    if inner.trim() == "end" {
                        break;
                    }
                    block.push_str(inner);
                    block.push('\n');
                }
                IsoSide::Presented(parse_presentation(&block).map_err(|e| e.to_string())?)
            } else if let Some(spec) = rest.strip_prefix("factorspec ") {
                IsoSide::Concrete(Model::FreeProduct(spec.parse().map_err(
                    |e: crate::freeproduct::FactorError| e.to_string(),
                )?))
            } else if let Some(nspec) = rest.strip_prefix("zxsn ") {
                let n = nspec
                    .strip_prefix("n=")
                    .and_then(|v| v.parse().ok())
                    .ok_or_else(|| format!("bad zxsn spec `{nspec}`"))?;
                IsoSide::Concrete(Model::ZxSn(n))
            } else {
                return Err(format!("unrecognized side spec `{rest}`"));
            };
            if is_one {
                side1 = Some(side);
            } else {
                side2 = Some(side);
            }
        } else if line == "map12" {
            section = "map12";
        } else if line == "map21" {
            section = "map21";
        } else if let Some((name, word)) = line.split_once("->") {
            let entry = (name.trim().to_string(), word.trim().to_string());
            match section {
                "map12" => map12.push(entry),
                "map21" => map21.push(entry),
                _ => return Err(format!("map line outside a map block: `{line}`")),
            }
        } else {
            return Err(format!("unrecognized line `{line}`"));
        }
    }
    let side1 = side1.ok_or("missing side1")?;
    let side2 = side2.ok_or("missing side2")?;
    let strands = match (&side1, &side2) {
        (IsoSide::Presented(p), _) => p.strands,
        (_, IsoSide::Presented(p)) => p.strands,
        _ => 2,
    };
    let p1 = side1.presentation(strands);
    let p2 = side2.presentation(strands);
    let resolve = |entries: &[(String, String)],
                   src: &Presentation,
                   dst: &Presentation|
     -> Result<BTreeMap<Gen, Word>, String> {
        let mut out = BTreeMap::new();
        for (name, word) in entries {
            let g = src
                .generators
                .iter()
                .find(|g| g.to_string() == *name)
                .ok_or_else(|| format!("unknown generator `{name}`"))?;
            let w = crate::word::parse_word_over(word, strands, &dst.generators)
                .map_err(|e| e.to_string())?;
            out.insert(g.clone(), w);
        }
        Ok(out)
    };
    Ok(IsoCertificate {
        map12: resolve(&map12, &p1, &p2)?,
        map21: resolve(&map21, &p2, &p1)?,
        side1,
        side2,
    })
}

/// Convenience builder: certificate between a presentation and a model from
/// textual generator → word pairs.
pub fn certificate(
    side1: IsoSide,
    side2: IsoSide,
    map12: &[(&str, &str)],
    map21: &[(&str, &str)],
) -> Result<IsoCertificate, PresentationError> {
    let strands = match (&side1, &side2) {
        (IsoSide::Presented(p), _) => p.strands,
        (_, IsoSide::Presented(p)) => p.strands,
        _ => 2,
    };
    let p1 = side1.presentation(strands);
    let p2 = side2.presentation(strands);
    let resolve = |entries: &[(&str, &str)], src: &Presentation, dst: &Presentation| {
        let mut out = BTreeMap::new();
        for (name, word) in entries {
            let g = src
                .generators
                .iter()
                .find(|g| g.to_string() == *name)
                .unwrap_or_else(|| panic!("unknown generator `{name}`"))
                .clone();
            let w = crate::word::parse_word_over(word, strands, &dst.generators)?;
            out.insert(g, w);
        }
        Ok::<_, crate::word::WordError>(out)
    };
    Ok(IsoCertificate {
        map12: resolve(map12, &p1, &p2)?,
        map21: resolve(map21, &p2, &p1)?,
        side1,
        side2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{build_presentation, GroupFamily};

    const BUDGET: usize = 20_000;

    fn vsg2_free_product_cert() -> IsoCertificate {
        let p = build_presentation(GroupFamily::VSG, 2).unwrap();
        certificate(
            IsoSide::Presented(p),
            IsoSide::Concrete(Model::FreeProduct("Z^2 * Z_2".parse().unwrap())),
            &[("s1", "f0g0"), ("t1", "f0g1"), ("v1", "f1g0")],
            &[("f0g0", "s1"), ("f0g1", "t1"), ("f1g0", "v1")],
        )
        .unwrap()
    }

    #[test]
    fn vsg2_is_z2_free_product_z2() {
        let cert = vsg2_free_product_cert();
        let report = verify_iso(&cert, BUDGET);
        assert!(report.valid, "{:?}", report.failures);
    }

    #[test]
    fn wrong_assignment_rejected() {
        let p = build_presentation(GroupFamily::VSG, 2).unwrap();
        // sending the involution to an infinite-order generator must fail
        let cert = certificate(
            IsoSide::Presented(p),
            IsoSide::Concrete(Model::FreeProduct("Z^2 * Z_2".parse().unwrap())),
            &[("s1", "f1g0"), ("t1", "f0g1"), ("v1", "f0g0")],
            &[("f0g0", "v1"), ("f0g1", "t1"), ("f1g0", "s1")],
        )
        .unwrap();
        let report = verify_iso(&cert, BUDGET);
        assert!(!report.valid);
    }

    #[test]
    fn zxsn_model_presentation_is_sound() {
        for n in [2, 3, 4] {
            let map = zxsn_presentation(n, 2);
            assert!(map.is_homomorphism().unwrap(), "n={n}");
        }
    }

    #[test]
    fn certificate_text_round_trip() {
        let cert = vsg2_free_product_cert();
        let text = format_certificate(&cert);
        let parsed = parse_certificate(&text).unwrap();
        assert_eq!(format_certificate(&parsed), text);
        let report = verify_iso(&parsed, BUDGET);
        assert!(report.valid, "{:?}", report.failures);
    }

    #[test]
    fn presented_to_presented_certificate() {
        // <a,b | ab=ba> vs Z^2: identity-style maps across different names
        use crate::presentation::{Presentation, Relator, RelatorTag};
        let gens = vec![Gen::named("a"), Gen::named("b")];
        let w = crate::word::parse_word_over("a b a^-1 b^-1", 2, &gens).unwrap();
        let p = Presentation::custom(2, gens, vec![Relator::from_word(RelatorTag::Derived, w)]);
        let cert = certificate(
            IsoSide::Presented(p),
            IsoSide::Concrete(Model::FreeProduct("Z^2".parse().unwrap())),
            &[("a", "f0g0"), ("b", "f0g1")],
            &[("f0g0", "a"), ("f0g1", "b")],
        )
        .unwrap();
        assert!(verify_iso(&cert, BUDGET).valid);
    }
}
