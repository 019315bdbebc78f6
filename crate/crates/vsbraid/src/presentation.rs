//! Group presentations: the registry of braid-group families, ad-hoc
//! quotients, custom presentations, and the line-oriented text format.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::word::{parse_word_over, Family as GenFamily, Gen, Word, WordError};

/// Group families covered by the registry, plus CUSTOM for derived
/// presentations with arbitrary generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupFamily {
    B,
    VB,
    SG,
    VSG,
    WCSG,
    WSG,
    UCVSG,
    UVSG,
    FCVSG,
    FCWSG,
    FWSG,
    GCVSG,
    Custom,
}

impl GroupFamily {
    /// The nine quotient-diagram families (VSG itself included).
    pub const QUOTIENT_DIAGRAM: [GroupFamily; 9] = [
        GroupFamily::VSG,
        GroupFamily::WCSG,
        GroupFamily::WSG,
        GroupFamily::UCVSG,
        GroupFamily::UVSG,
        GroupFamily::FCVSG,
        GroupFamily::FCWSG,
        GroupFamily::FWSG,
        GroupFamily::GCVSG,
    ];

    pub const ALL_REGISTRY: [GroupFamily; 12] = [
        GroupFamily::B,
        GroupFamily::VB,
        GroupFamily::SG,
        GroupFamily::VSG,
        GroupFamily::WCSG,
        GroupFamily::WSG,
        GroupFamily::UCVSG,
        GroupFamily::UVSG,
        GroupFamily::FCVSG,
        GroupFamily::FCWSG,
        GroupFamily::FWSG,
        GroupFamily::GCVSG,
    ];

    /// Generator families used by this group family.
    fn gen_families(self) -> &'static [GenFamily] {
        match self {
            GroupFamily::B => &[GenFamily::Classical],
            GroupFamily::VB => &[GenFamily::Classical, GenFamily::Virtual],
            GroupFamily::SG => &[GenFamily::Classical, GenFamily::Singular],
            _ => &[GenFamily::Classical, GenFamily::Singular, GenFamily::Virtual],
        }
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupFamily::B => "B",
            GroupFamily::VB => "VB",
            GroupFamily::SG => "SG",
            GroupFamily::VSG => "VSG",
            GroupFamily::WCSG => "WCSG",
            GroupFamily::WSG => "WSG",
            GroupFamily::UCVSG => "UCVSG",
            GroupFamily::UVSG => "UVSG",
            GroupFamily::FCVSG => "FCVSG",
            GroupFamily::FCWSG => "FCWSG",
            GroupFamily::FWSG => "FWSG",
            GroupFamily::GCVSG => "GCVSG",
            GroupFamily::Custom => "CUSTOM",
        };
        write!(f, "{s}")
    }
}

impl FromStr for GroupFamily {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "B" => GroupFamily::B,
            "VB" => GroupFamily::VB,
            "SG" => GroupFamily::SG,
            "VSG" => GroupFamily::VSG,
            "WCSG" => GroupFamily::WCSG,
            "WSG" => GroupFamily::WSG,
            "UCVSG" => GroupFamily::UCVSG,
            "UVSG" => GroupFamily::UVSG,
            "FCVSG" => GroupFamily::FCVSG,
            "FCWSG" => GroupFamily::FCWSG,
            "FWSG" => GroupFamily::FWSG,
            "GCVSG" => GroupFamily::GCVSG,
            "CUSTOM" => GroupFamily::Custom,
            _ => return Err(PresentationError::UnknownFamily(s.to_string())),
        })
    }
}

/// Identifies the relation family a relator came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelatorTag {
    TwoPR,
    ThreePR1,
    ThreePR2,
    ThreePR3,
    ThreePR4,
    ThreePR5,
    CR,
    AR1,
    AR2,
    PR1,
    PR2,
    PR3,
    MR1,
    MR2,
    MR3,
    MR4,
    SR1,
    Q1,
    Q2,
    Q3,
    Q4,
    Q5,
    Q6,
    /// Relators produced by rewriting, quotient construction or file input.
    Derived,
}

/// A relation L = R stored as the single relator L·R⁻¹, cyclically reduced.
/// The original sides are retained for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relator {
    pub tag: RelatorTag,
    pub lhs: Word,
    pub rhs: Word,
    pub word: Word,
}

impl Relator {
    pub fn new(tag: RelatorTag, lhs: Word, rhs: Word) -> Relator {
        let word = lhs
            .concat(&rhs.invert())
            .expect("relator sides share strand count")
            .cyclic_reduce();
        Relator { tag, lhs, rhs, word }
    }

    pub fn from_word(tag: RelatorTag, word: Word) -> Relator {
        let strands = word.strands();
        Relator { tag, lhs: word.clone(), rhs: Word::identity(strands), word: word.cyclic_reduce() }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("strand count must be at least 2, got {0}")]
    BadStrandCount(usize),
    #[error("unknown group family `{0}`")]
    UnknownFamily(String),
    #[error("the CUSTOM family has no registry presentation")]
    CustomNotInRegistry,
    #[error("bad presentation text: {0}")]
    BadText(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("invalid insertion position {0}")]
    BadPosition(usize),
}

/// A finite presentation: generators plus relators, with the originating
/// family and strand count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub family: GroupFamily,
    pub strands: usize,
    pub generators: Vec<Gen>,
    pub relators: Vec<Relator>,
    /// Generators g subject to a relator g².
    pub involutions: BTreeSet<Gen>,
}

impl Presentation {
    pub fn custom(strands: usize, generators: Vec<Gen>, relators: Vec<Relator>) -> Presentation {
        let involutions = find_involutions(&relators);
        Presentation { family: GroupFamily::Custom, strands, generators, relators, involutions }
    }

    /// The quotient presentation: same generators, extra relators appended.
    pub fn quotient(&self, extra: impl IntoIterator<Item = Relator>) -> Presentation {
        let mut relators = self.relators.clone();
        relators.extend(extra);
        let involutions = find_involutions(&relators);
        Presentation {
            family: GroupFamily::Custom,
            strands: self.strands,
            generators: self.generators.clone(),
            relators,
            involutions,
        }
    }

    /// Parses a word over this presentation's generators.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        parse_word_over(text, self.strands, &self.generators)
    }

    pub fn generator_index(&self, gen: &Gen) -> Option<usize> {
        self.generators.iter().position(|g| g == gen)
    }

    /// Inserts a cyclic conjugate of the relator (or its inverse) at the
    /// given letter position, freely reducing. The result represents the
    /// same group element.
    pub fn apply_relation(
        &self,
        w: &Word,
        relator: &Relator,
        position: usize,
        direction: InsertDirection,
        rotation: usize,
    ) -> Result<Word, PresentationError> {
        apply_relation(w, relator, position, direction, rotation)
    }
}

/// Orientation of a relator insertion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InsertDirection {
    Forward,
    Inverse,
}

/// Inserts a cyclic conjugate of `relator` (or its inverse) into `w` at unit
/// position `position`, then freely reduces.
pub fn apply_relation(
    w: &Word,
    relator: &Relator,
    position: usize,
    direction: InsertDirection,
    rotation: usize,
) -> Result<Word, PresentationError> {
    let units: Vec<(Gen, i64)> = w.unit_letters().map(|(g, s)| (g.clone(), s)).collect();
    if position > units.len() {
        return Err(PresentationError::BadPosition(position));
    }
    let ins = match direction {
        InsertDirection::Forward => relator.word.rotate(rotation),
        InsertDirection::Inverse => relator.word.invert().rotate(rotation),
    };
    let raw = units[..position]
        .iter()
        .cloned()
        .chain(ins.letters().iter().map(|l| (l.gen.clone(), l.exp)))
        .chain(units[position..].iter().cloned());
    Ok(Word::from_letters(w.strands(), raw))
}

fn find_involutions(relators: &[Relator]) -> BTreeSet<Gen> {
    let mut out = BTreeSet::new();
    for r in relators {
        let w = &r.word;
        if w.letters().len() == 1 && w.letters()[0].exp.abs() == 2 {
            out.insert(w.letters()[0].gen.clone());
        }
    }
    out
}

fn gens_for(family: GroupFamily, n: usize) -> Vec<Gen> {
    let mut gens = Vec::new();
    for &f in family.gen_families() {
        for i in 1..n {
            gens.push(Gen::Braid { family: f, index: i });
        }
    }
    gens.sort();
    gens
}

struct Builder {
    n: usize,
    relators: Vec<Relator>,
}

impl Builder {
    fn word(&self, letters: &[(Gen, i64)]) -> Word {
        Word::from_letters(self.n, letters.iter().cloned())
    }

    fn relation(&mut self, tag: RelatorTag, lhs: &[(Gen, i64)], rhs: &[(Gen, i64)]) {
        let l = self.word(lhs);
        let r = self.word(rhs);
        self.relators.push(Relator::new(tag, l, r));
    }

    /// v_i² = 1 style power relators.
    fn power(&mut self, tag: RelatorTag, gen: Gen, e: i64) {
        let l = self.word(&[(gen, e)]);
        let r = Word::identity(self.n);
        self.relators.push(Relator::new(tag, l, r));
    }
}

fn artin_relations(b: &mut Builder, n: usize) {
    for i in 1..=n.saturating_sub(2) {
        let (s_i, s_j) = (Gen::s(i), Gen::s(i + 1));
        b.relation(
            RelatorTag::AR1,
            &[(s_i.clone(), 1), (s_j.clone(), 1), (s_i.clone(), 1)],
            &[(s_j.clone(), 1), (s_i.clone(), 1), (s_j.clone(), 1)],
        );
    }
    far_commutes(b, n, RelatorTag::AR2, &[(GenFamily::Classical, GenFamily::Classical)]);
}

/// g_i h_j = h_j g_i for all index pairs with j ≥ i+2 and the listed
/// (family-at-i, family-at-j) combinations.
fn far_commutes(b: &mut Builder, n: usize, tag: RelatorTag, pairs: &[(GenFamily, GenFamily)]) {
    for i in 1..n {
        for j in (i + 2)..n {
            for &(gf, hf) in pairs {
                let g = Gen::Braid { family: gf, index: i };
                let h = Gen::Braid { family: hf, index: j };
                b.relation(tag, &[(g.clone(), 1), (h.clone(), 1)], &[(h, 1), (g, 1)]);
            }
        }
    }
}

fn vsg_relations(b: &mut Builder, n: usize) {
    // (2PR) v_i^2 = 1 and σ_iτ_i = τ_iσ_i
    for i in 1..n {
        b.power(RelatorTag::TwoPR, Gen::v(i), 2);
    }
    for i in 1..n {
        b.relation(
            RelatorTag::TwoPR,
            &[(Gen::s(i), 1), (Gen::t(i), 1)],
            &[(Gen::t(i), 1), (Gen::s(i), 1)],
        );
    }
    // (3PR) one relator per shape per adjacent pair (i, i+1)
    for i in 1..=n.saturating_sub(2) {
        let j = i + 1;
        b.relation(
            RelatorTag::ThreePR1,
            &[(Gen::s(i), 1), (Gen::s(j), 1), (Gen::s(i), 1)],
            &[(Gen::s(j), 1), (Gen::s(i), 1), (Gen::s(j), 1)],
        );
        b.relation(
            RelatorTag::ThreePR2,
            &[(Gen::v(i), 1), (Gen::v(j), 1), (Gen::v(i), 1)],
            &[(Gen::v(j), 1), (Gen::v(i), 1), (Gen::v(j), 1)],
        );
        b.relation(
            RelatorTag::ThreePR3,
            &[(Gen::v(i), 1), (Gen::s(j), 1), (Gen::v(i), 1)],
            &[(Gen::v(j), 1), (Gen::s(i), 1), (Gen::v(j), 1)],
        );
        b.relation(
            RelatorTag::ThreePR4,
            &[(Gen::v(i), 1), (Gen::t(j), 1), (Gen::v(i), 1)],
            &[(Gen::v(j), 1), (Gen::t(i), 1), (Gen::v(j), 1)],
        );
        b.relation(
            RelatorTag::ThreePR5,
            &[(Gen::s(i), 1), (Gen::s(j), 1), (Gen::t(i), 1)],
            &[(Gen::t(j), 1), (Gen::s(i), 1), (Gen::s(j), 1)],
        );
    }
    // (CR) all nine family combinations per far index pair
    let fams = [GenFamily::Classical, GenFamily::Singular, GenFamily::Virtual];
    let pairs: Vec<(GenFamily, GenFamily)> =
        fams.iter().flat_map(|&g| fams.iter().map(move |&h| (g, h))).collect();
    far_commutes(b, n, RelatorTag::CR, &pairs);
}

fn q_relations(b: &mut Builder, n: usize, tag: RelatorTag) {
    match tag {
        RelatorTag::Q1 => {
            for i in 1..=n.saturating_sub(2) {
                b.relation(
                    tag,
                    &[(Gen::v(i), 1), (Gen::s(i + 1), 1), (Gen::s(i), 1)],
                    &[(Gen::s(i + 1), 1), (Gen::s(i), 1), (Gen::v(i + 1), 1)],
                );
            }
        }
        RelatorTag::Q2 => {
            for i in 1..=n.saturating_sub(2) {
                b.relation(
                    tag,
                    &[(Gen::v(i + 1), 1), (Gen::s(i), 1), (Gen::s(i + 1), 1)],
                    &[(Gen::s(i), 1), (Gen::s(i + 1), 1), (Gen::v(i), 1)],
                );
            }
        }
        RelatorTag::Q3 => {
            for i in 1..=n.saturating_sub(2) {
                b.relation(
                    tag,
                    &[(Gen::v(i), 1), (Gen::t(i + 1), 1), (Gen::t(i), 1)],
                    &[(Gen::t(i + 1), 1), (Gen::t(i), 1), (Gen::v(i + 1), 1)],
                );
            }
        }
        RelatorTag::Q4 => {
            for i in 1..=n.saturating_sub(2) {
                b.relation(
                    tag,
                    &[(Gen::v(i + 1), 1), (Gen::t(i), 1), (Gen::t(i + 1), 1)],
                    &[(Gen::t(i), 1), (Gen::t(i + 1), 1), (Gen::v(i), 1)],
                );
            }
        }
        RelatorTag::Q5 => {
            for i in 1..n {
                b.power(tag, Gen::s(i), 2);
            }
        }
        RelatorTag::Q6 => {
            for i in 1..n {
                b.relation(
                    tag,
                    &[(Gen::s(i), 1), (Gen::v(i), 1)],
                    &[(Gen::v(i), 1), (Gen::s(i), 1)],
                );
            }
        }
        _ => unreachable!("not a quotient relation tag"),
    }
}

fn quotient_tags(family: GroupFamily) -> &'static [RelatorTag] {
    match family {
        GroupFamily::VSG => &[],
        GroupFamily::WCSG => &[RelatorTag::Q1],
        GroupFamily::UCVSG => &[RelatorTag::Q1, RelatorTag::Q2],
        GroupFamily::WSG => &[RelatorTag::Q1, RelatorTag::Q3],
        GroupFamily::UVSG => &[RelatorTag::Q1, RelatorTag::Q3, RelatorTag::Q2, RelatorTag::Q4],
        GroupFamily::FCVSG => &[RelatorTag::Q5],
        GroupFamily::FCWSG => &[RelatorTag::Q1, RelatorTag::Q5],
        GroupFamily::FWSG => &[RelatorTag::Q1, RelatorTag::Q3, RelatorTag::Q5],
        GroupFamily::GCVSG => &[RelatorTag::Q5, RelatorTag::Q6],
        _ => &[],
    }
}

/// Builds the registry presentation of `family` on `n` strands.
pub fn build_presentation(family: GroupFamily, n: usize) -> Result<Presentation, PresentationError> {
    if n < 2 {
        return Err(PresentationError::BadStrandCount(n));
    }
    if family == GroupFamily::Custom {
        return Err(PresentationError::CustomNotInRegistry);
    }
    let mut b = Builder { n, relators: Vec::new() };
    match family {
        GroupFamily::B => artin_relations(&mut b, n),
        GroupFamily::VB => {
            artin_relations(&mut b, n);
            for i in 1..=n.saturating_sub(2) {
                let (v_i, v_j) = (Gen::v(i), Gen::v(i + 1));
                b.relation(
                    RelatorTag::PR1,
                    &[(v_i.clone(), 1), (v_j.clone(), 1), (v_i.clone(), 1)],
                    &[(v_j.clone(), 1), (v_i.clone(), 1), (v_j.clone(), 1)],
                );
            }
            far_commutes(&mut b, n, RelatorTag::PR2, &[(GenFamily::Virtual, GenFamily::Virtual)]);
            for i in 1..n {
                b.power(RelatorTag::PR3, Gen::v(i), 2);
            }
            far_commutes(
                &mut b,
                n,
                RelatorTag::MR1,
                &[
                    (GenFamily::Classical, GenFamily::Virtual),
                    (GenFamily::Virtual, GenFamily::Classical),
                ],
            );
            for i in 1..=n.saturating_sub(2) {
                b.relation(
                    RelatorTag::MR2,
                    &[(Gen::v(i), 1), (Gen::v(i + 1), 1), (Gen::s(i), 1)],
                    &[(Gen::s(i + 1), 1), (Gen::v(i), 1), (Gen::v(i + 1), 1)],
                );
            }
        }
        GroupFamily::SG => {
            artin_relations(&mut b, n);
            far_commutes(&mut b, n, RelatorTag::SR1, &[(GenFamily::Singular, GenFamily::Singular)]);
            far_commutes(
                &mut b,
                n,
                RelatorTag::MR1,
                &[
                    (GenFamily::Singular, GenFamily::Classical),
                    (GenFamily::Classical, GenFamily::Singular),
                ],
            );
            for i in 1..n {
                b.relation(
                    RelatorTag::MR2,
                    &[(Gen::t(i), 1), (Gen::s(i), 1)],
                    &[(Gen::s(i), 1), (Gen::t(i), 1)],
                );
            }
            for i in 1..=n.saturating_sub(2) {
                b.relation(
                    RelatorTag::MR3,
                    &[(Gen::s(i), 1), (Gen::s(i + 1), 1), (Gen::t(i), 1)],
                    &[(Gen::t(i + 1), 1), (Gen::s(i), 1), (Gen::s(i + 1), 1)],
                );
                b.relation(
                    RelatorTag::MR4,
                    &[(Gen::s(i + 1), 1), (Gen::s(i), 1), (Gen::t(i + 1), 1)],
                    &[(Gen::t(i), 1), (Gen::s(i + 1), 1), (Gen::s(i), 1)],
                );
            }
        }
        _ => {
            vsg_relations(&mut b, n);
            for &tag in quotient_tags(family) {
                q_relations(&mut b, n, tag);
            }
        }
    }
    let relators = b.relators;
    let involutions = find_involutions(&relators);
    Ok(Presentation { family, strands: n, generators: gens_for(family, n), relators, involutions })
}

/// Closed-form relator count for a registry family, derived independently of
/// the builder.
pub fn relator_census(family: GroupFamily, n: usize) -> usize {
    let each = n - 1;
    let adj = n.saturating_sub(2);
    let far = if n >= 4 { (n - 2) * (n - 3) / 2 } else { 0 };
    let vsg = 2 * each + 5 * adj + 9 * far;
    match family {
        GroupFamily::B => adj + far,
        GroupFamily::VB => (adj + far) + (adj + far + each) + (2 * far + adj),
        GroupFamily::SG => (adj + far) + far + 2 * far + each + 2 * adj,
        GroupFamily::VSG => vsg,
        GroupFamily::WCSG => vsg + adj,
        GroupFamily::UCVSG => vsg + 2 * adj,
        GroupFamily::WSG => vsg + 2 * adj,
        GroupFamily::UVSG => vsg + 4 * adj,
        GroupFamily::FCVSG => vsg + each,
        GroupFamily::FCWSG => vsg + adj + each,
        GroupFamily::FWSG => vsg + 2 * adj + each,
        GroupFamily::GCVSG => vsg + 2 * each,
        GroupFamily::Custom => 0,
    }
}

/// Emits the line-oriented presentation text format.
pub fn format_presentation(p: &Presentation) -> String {
    let mut out = String::new();
    out.push_str(&format!("group {} n={}\n", p.family, p.strands));
    if p.family == GroupFamily::Custom {
        for g in &p.generators {
            out.push_str(&format!("gen {g}\n"));
        }
    }
    for r in &p.relators {
        out.push_str(&format!("rel {}\n", r.word));
    }
    out
}

/// Parses the presentation text format. A registry-family header with no
/// `rel` lines yields the registry presentation; explicit `rel` lines
/// override the relator list.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let mut family: Option<GroupFamily> = None;
    let mut strands: usize = 0;
    let mut gens: Vec<Gen> = Vec::new();
    let mut rel_texts: Vec<String> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("group ") {
            let mut parts = rest.split_whitespace();
            let fam = parts
                .next()
                .ok_or_else(|| PresentationError::BadText("missing family".into()))?;
            family = Some(fam.parse()?);
            let nspec = parts
                .next()
                .ok_or_else(|| PresentationError::BadText("missing n=<int>".into()))?;
            let n = nspec
                .strip_prefix("n=")
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| PresentationError::BadText(format!("bad strand spec `{nspec}`")))?;
            strands = n;
        } else if let Some(rest) = line.strip_prefix("gen ") {
            let name = rest.trim();
            let g = crate::word::braid_gen_from_name(name)
                .unwrap_or_else(|| Gen::Named(name.to_string()));
            gens.push(g);
        } else if let Some(rest) = line.strip_prefix("rel ") {
            rel_texts.push(rest.trim().to_string());
        } else {
            return Err(PresentationError::BadText(format!("unrecognized line `{line}`")));
        }
    }
    let family = family.ok_or_else(|| PresentationError::BadText("missing group header".into()))?;
    if strands < 2 {
        return Err(PresentationError::BadStrandCount(strands));
    }
    if family == GroupFamily::Custom {
        let mut relators = Vec::new();
        for t in &rel_texts {
            let w = parse_word_over(t, strands, &gens)?;
            relators.push(Relator::from_word(RelatorTag::Derived, w));
        }
        Ok(Presentation::custom(strands, gens, relators))
    } else {
        let base = build_presentation(family, strands)?;
        if rel_texts.is_empty() {
            return Ok(base);
        }
        let mut relators = Vec::new();
        for t in &rel_texts {
            let w = parse_word_over(t, strands, &base.generators)?;
            relators.push(Relator::from_word(RelatorTag::Derived, w));
        }
        let involutions = find_involutions(&relators);
        Ok(Presentation { family, strands, generators: base.generators, relators, involutions })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    #[test]
    fn vsg2_presentation() {
        let p = build_presentation(GroupFamily::VSG, 2).unwrap();
        assert_eq!(p.generators, vec![Gen::s(1), Gen::t(1), Gen::v(1)]);
        assert_eq!(p.relators.len(), 2);
        let words: Vec<String> = p.relators.iter().map(|r| r.word.to_string()).collect();
        assert!(words.contains(&"v1^2".to_string()));
        assert!(words.contains(&"s1 t1 s1^-1 t1^-1".to_string()));
        assert_eq!(p.involutions.iter().cloned().collect::<Vec<_>>(), vec![Gen::v(1)]);
    }

    #[test]
    fn vsg3_relator_count() {
        let p = build_presentation(GroupFamily::VSG, 3).unwrap();
        // 2 + 2 two-point, 5 three-point, no commuting relators
        assert_eq!(p.relators.len(), 9);
        assert!(p.relators.iter().all(|r| r.tag != RelatorTag::CR));
    }

    #[test]
    fn gcvsg3_adds_flat_and_gauss_relators() {
        let p = build_presentation(GroupFamily::GCVSG, 3).unwrap();
        let base = build_presentation(GroupFamily::VSG, 3).unwrap();
        assert_eq!(p.relators.len(), base.relators.len() + 4);
        let extra: Vec<String> = p.relators[base.relators.len()..]
            .iter()
            .map(|r| r.word.to_string())
            .collect();
        assert_eq!(extra, vec!["s1^2", "s2^2", "s1 v1 s1^-1 v1^-1", "s2 v2 s2^-1 v2^-1"]);
    }

    #[test]
    fn census_matches_builder() {
        for family in GroupFamily::ALL_REGISTRY {
            for n in 2..=8 {
                let p = build_presentation(family, n).unwrap();
                assert_eq!(
                    p.relators.len(),
                    relator_census(family, n),
                    "census mismatch for {family} at n={n}"
                );
            }
        }
    }

    #[test]
    fn quotient_families_coincide_with_vsg_at_n2() {
        // the welded/unrestricted quotient relations are vacuous on two strands
        let vsg = build_presentation(GroupFamily::VSG, 2).unwrap();
        for family in [GroupFamily::WCSG, GroupFamily::WSG, GroupFamily::UCVSG, GroupFamily::UVSG] {
            let p = build_presentation(family, 2).unwrap();
            let a: Vec<_> = p.relators.iter().map(|r| r.word.clone()).collect();
            let b: Vec<_> = vsg.relators.iter().map(|r| r.word.clone()).collect();
            assert_eq!(a, b, "{family} at n=2");
        }
        // the flat/Gauss quotients genuinely add relations at n=2
        let f = build_presentation(GroupFamily::FCVSG, 2).unwrap();
        assert_eq!(f.relators.len(), vsg.relators.len() + 1);
    }

    #[test]
    fn relators_are_cyclically_reduced() {
        for family in GroupFamily::ALL_REGISTRY {
            for n in 2..=6 {
                let p = build_presentation(family, n).unwrap();
                for r in &p.relators {
                    assert_eq!(r.word, r.word.cyclic_reduce());
                }
            }
        }
    }

    #[test]
    fn apply_relation_inserts_identity_valued_words() {
        let p = build_presentation(GroupFamily::VSG, 2).unwrap();
        let vsq = p.relators.iter().find(|r| r.word.to_string() == "v1^2").unwrap();
        let w = parse_word("s1", 2).unwrap();
        let out = apply_relation(&w, vsq, 0, InsertDirection::Forward, 0).unwrap();
        assert_eq!(out, parse_word("v1^2 s1", 2).unwrap());
        let empty = Word::identity(2);
        let out = apply_relation(&empty, vsq, 0, InsertDirection::Inverse, 0).unwrap();
        assert_eq!(out, parse_word("v1^-2", 2).unwrap());
        assert!(matches!(
            apply_relation(&w, vsq, 5, InsertDirection::Forward, 0),
            Err(PresentationError::BadPosition(5))
        ));
    }

    #[test]
    fn apply_relation_rewrites_three_point() {
        // inserting the inverse 3PR5 relator in front of s1 s2 t1 leaves t2 s1 s2
        let p = build_presentation(GroupFamily::VSG, 3).unwrap();
        let r = p.relators.iter().find(|r| r.tag == RelatorTag::ThreePR5).unwrap();
        let w = parse_word("s1 s2 t1", 3).unwrap();
        let out = apply_relation(&w, r, 0, InsertDirection::Inverse, 0).unwrap();
        assert_eq!(out, parse_word("t2 s1 s2", 3).unwrap());
    }

    #[test]
    fn text_format_round_trip() {
        for family in [GroupFamily::VSG, GroupFamily::B, GroupFamily::GCVSG] {
            for n in [2, 3, 4] {
                let p = build_presentation(family, n).unwrap();
                let text = format_presentation(&p);
                let q = parse_presentation(&text).unwrap();
                assert_eq!(format_presentation(&q), text, "{family} n={n}");
                let words_p: Vec<_> = p.relators.iter().map(|r| r.word.clone()).collect();
                let words_q: Vec<_> = q.relators.iter().map(|r| r.word.clone()).collect();
                assert_eq!(words_p, words_q);
            }
        }
        // registry header with no rel lines expands to the registry relators
        let q = parse_presentation("group VSG n=2\n").unwrap();
        assert_eq!(q.relators.len(), 2);
    }

    #[test]
    fn custom_presentation_round_trip() {
        let gens = vec![Gen::named("a"), Gen::named("b"), Gen::named("c")];
        let w = parse_word_over("a c b a^-1 c^-1 b^-1", 2, &gens).unwrap();
        let p = Presentation::custom(2, gens, vec![Relator::from_word(RelatorTag::Derived, w)]);
        let text = format_presentation(&p);
        let q = parse_presentation(&text).unwrap();
        assert_eq!(format_presentation(&q), text);
        assert_eq!(q.generators, p.generators);
    }
}
