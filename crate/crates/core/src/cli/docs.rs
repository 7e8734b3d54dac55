//! Machine-readable documents emitted by the commands. Words are strings in
//! the input syntax (`1` for the empty word); paths are
//! `{base, edges: [{left, rule, sign, right}]}`.

use serde::{Deserialize, Serialize};

use crate::audit::Report;
use crate::error::{Error, Result};
use crate::schutz::{Relation, RelationTag, SchutzPresentation};
use crate::squier::base::{HomotopyBase, Member, Over, Provenance};
use crate::squier::graph::{DGEdge, DGPath};
use crate::words::{Alphabet, Presentation, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub left: String,
    pub rule: usize,
    pub sign: i8,
    pub right: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathDoc {
    pub base: String,
    pub edges: Vec<EdgeDoc>,
}

impl PathDoc {
    pub fn from_path(alphabet: &Alphabet, p: &DGPath) -> Self {
        PathDoc {
            base: alphabet.format_word(p.start()),
            edges: p
                .edges()
                .iter()
                .map(|e| EdgeDoc {
                    left: alphabet.format_word(&e.left),
                    rule: e.rule,
                    sign: e.sign.as_i8(),
                    right: alphabet.format_word(&e.right),
                })
                .collect(),
        }
    }

    /// Rebuilds and validates the path.
    pub fn to_path(&self, pres: &Presentation) -> Result<DGPath> {
        let a = &pres.alphabet;
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let sign = Sign::from_i8(e.sign).ok_or_else(|| Error::Input(format!("bad edge sign {}", e.sign)))?;
                Ok(DGEdge::new(a.parse_word(&e.left)?, e.rule, sign, a.parse_word(&e.right)?))
            })
            .collect::<Result<Vec<_>>>()?;
        let path = DGPath::from_edges(pres, a.parse_word(&self.base)?, edges)?;
        path.validate(pres)?;
        Ok(path)
    }
}

/// `[lhs, rhs, tags]`, tags separated by `; `.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationDoc(pub String, pub String, pub String);

impl RelationDoc {
    pub fn from_relation(alphabet: &Alphabet, r: &Relation) -> Self {
        let tags: Vec<String> = r.tags.iter().map(|t| t.to_string()).collect();
        RelationDoc(alphabet.format_word(&r.lhs), alphabet.format_word(&r.rhs), tags.join("; "))
    }

    pub fn to_relation(&self, alphabet: &Alphabet) -> Result<Relation> {
        let tags = self.2.split("; ").map(|t| t.parse::<RelationTag>()).collect::<Result<Vec<_>>>()?;
        Ok(Relation { lhs: alphabet.parse_word(&self.0)?, rhs: alphabet.parse_word(&self.1)?, tags })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub relations_checked: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub h_class: Vec<String>,
    pub h: String,
    pub e: String,
    pub generators: Vec<String>,
    pub relations: Vec<RelationDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trivial: Vec<RelationDoc>,
    pub verification: Verification,
}

impl PresentationDoc {
    pub fn relations_of(q: &SchutzPresentation) -> (Vec<RelationDoc>, Vec<RelationDoc>) {
        let a = q.alphabet();
        (
            q.relations.iter().map(|r| RelationDoc::from_relation(a, r)).collect(),
            q.trivial.iter().map(|r| RelationDoc::from_relation(a, r)).collect(),
        )
    }

    /// The presentation ⟨B|U⟩ this document describes.
    pub fn to_presentation(&self) -> Result<SchutzPresentation> {
        parse_group_presentation(&self.generators, &self.relations, &self.trivial)
    }
}

fn parse_group_presentation(
    generators: &[String],
    relations: &[RelationDoc],
    trivial: &[RelationDoc],
) -> Result<SchutzPresentation> {
    let alphabet = Alphabet::generated(generators.to_vec());
    let rels = relations.iter().map(|r| r.to_relation(&alphabet)).collect::<Result<Vec<_>>>()?;
    let triv = trivial.iter().map(|r| r.to_relation(&alphabet)).collect::<Result<Vec<_>>>()?;
    SchutzPresentation::from_relations(alphabet, rels, triv)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MemberDoc {
    pub provenance: String,
    pub label: String,
    pub path: PathDoc,
}

impl MemberDoc {
    fn from_member(alphabet: &Alphabet, m: &Member) -> Self {
        MemberDoc { provenance: m.provenance.to_string(), label: m.label.clone(), path: PathDoc::from_path(alphabet, &m.path) }
    }

    fn to_member(&self, pres: &Presentation) -> Result<Member> {
        let provenance = match self.provenance.as_str() {
            "X" => Provenance::Critical,
            "Y1" => Provenance::Y1,
            "Y2" => Provenance::Y2,
            "Y3" => Provenance::Y3,
            other => return Err(Error::Input(format!("unknown provenance `{other}`"))),
        };
        Ok(Member { provenance, label: self.label.clone(), path: self.path.to_path(pres)? })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sizes {
    pub b: usize,
    pub u: usize,
    pub x: usize,
    pub y1: usize,
    pub y2: usize,
    pub y3: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseAudit {
    pub all_closed: bool,
    pub all_valid: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyBaseDoc {
    pub alphabet: Vec<String>,
    /// The completed rules that edges of X refer to.
    pub monoid_rules: Vec<(String, String)>,
    pub h_class: Vec<String>,
    pub generators: Vec<String>,
    pub relations: Vec<RelationDoc>,
    pub sizes: Sizes,
    pub x: Vec<MemberDoc>,
    pub y: Vec<MemberDoc>,
    pub audit: BaseAudit,
}

impl HomotopyBaseDoc {
    pub fn new(
        pc: &Presentation,
        h_class: Vec<String>,
        q: &SchutzPresentation,
        x: &HomotopyBase,
        y: &HomotopyBase,
    ) -> Self {
        let all_valid = x.validate(pc).is_ok() && y.validate(&q.presentation).is_ok();
        HomotopyBaseDoc {
            alphabet: pc.alphabet.names().to_vec(),
            monoid_rules: pc
                .rules()
                .iter()
                .map(|r| (pc.alphabet.format_word(&r.lhs), pc.alphabet.format_word(&r.rhs)))
                .collect(),
            h_class,
            generators: q.alphabet().names().to_vec(),
            relations: PresentationDoc::relations_of(q).0,
            sizes: Sizes {
                b: q.alphabet().len(),
                u: q.relations.len(),
                x: x.members.len(),
                y1: y.count(Provenance::Y1),
                y2: y.count(Provenance::Y2),
                y3: y.count(Provenance::Y3),
            },
            x: x.members.iter().map(|m| MemberDoc::from_member(&pc.alphabet, m)).collect(),
            y: y.members.iter().map(|m| MemberDoc::from_member(q.alphabet(), m)).collect(),
            audit: BaseAudit { all_closed: x.all_closed() && y.all_closed(), all_valid },
        }
    }

    /// Rebuilds both presentations and both bases, validating every path.
    pub fn to_bases(&self) -> Result<(Presentation, HomotopyBase, SchutzPresentation, HomotopyBase)> {
        let alphabet = Alphabet::new(self.alphabet.iter().map(String::as_str))?;
        let pairs = self
            .monoid_rules
            .iter()
            .map(|(l, r)| Ok((alphabet.parse_word(l)?, alphabet.parse_word(r)?)))
            .collect::<Result<Vec<_>>>()?;
        let pc = Presentation::new(alphabet, pairs)?;
        let q = parse_group_presentation(&self.generators, &self.relations, &[])?;
        let x = HomotopyBase {
            over: Over::Monoid,
            members: self.x.iter().map(|m| m.to_member(&pc)).collect::<Result<Vec<_>>>()?,
        };
        let y = HomotopyBase {
            over: Over::Group,
            members: self.y.iter().map(|m| m.to_member(&q.presentation)).collect::<Result<Vec<_>>>()?,
        };
        Ok((pc, x, q, y))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateDoc {
    pub alphabet: Vec<String>,
    pub completed_rules: Vec<(String, String)>,
    pub elements: Vec<String>,
    /// `right[x][a]`: index of x·a
    pub right: Vec<Vec<usize>>,
    /// `left[a][x]`: index of a·x
    pub left: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaDoc {
    pub label: String,
    pub h_class: Vec<String>,
    /// One entry per letter; `null` where the action is zero.
    pub action: Vec<Option<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexDoc {
    pub label: String,
    pub rep: String,
    pub r_class: Vec<String>,
    pub action: Vec<Option<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectedDoc {
    pub h_class: Vec<String>,
    pub is_group: bool,
    pub h: String,
    pub e: String,
    pub lambda: Vec<LambdaDoc>,
    /// I, in index order
    pub indices: Vec<IndexDoc>,
    /// R-classes of K, the orbit of the class of e
    pub orbit: Vec<Vec<String>>,
    pub j: Vec<String>,
    pub omega: String,
    pub eta: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreenDoc {
    pub elements: Vec<String>,
    pub r_classes: Vec<Vec<String>>,
    pub l_classes: Vec<Vec<String>>,
    pub h_classes: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub selected: Option<SelectedDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassVerification {
    pub h_class: Vec<String>,
    pub is_group: bool,
    pub presented_order: usize,
    pub direct_order: usize,
    pub isomorphic: bool,
    pub lemmas: Report,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paths: Option<Report>,
}

impl ClassVerification {
    pub fn failures(&self) -> usize {
        let bad = usize::from(self.presented_order != self.direct_order) + usize::from(!self.isomorphic);
        bad + self.lemmas.failures() + self.paths.as_ref().map_or(0, Report::failures)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub seed: u64,
    pub classes: Vec<ClassVerification>,
    pub failures: usize,
}
