//! Congruence verdicts for the realization questions, and the symbolic
//! reduced-real-K-theory recipe attached to each classification label.
//!
//! Every verdict is an arithmetic statement (a congruence between Euler
//! characteristics modulo the group's numeric invariant n_G) plus, where the
//! underlying theorem demands it, a symbolic tangent-bundle condition that is
//! reported but never evaluated.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::taxonomy::{ClassLabel, Classification, SixClassLabel};
use serde::Serialize;

pub use crate::taxonomy::{InvariantSource, OliverNumber};

/// The realization question a verdict answers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Question {
    DiskFixedSet,
    TemplateFixedSet,
    TemplateStablyParallelizable,
    FixedPointFree,
    Rp2nFixedPointFree,
}

impl Question {
    pub fn parse(s: &str) -> Result<Question> {
        Ok(match s {
            "disk_fixed_set" => Question::DiskFixedSet,
            "template_fixed_set" => Question::TemplateFixedSet,
            "template_stably_parallelizable" => Question::TemplateStablyParallelizable,
            "fixed_point_free" => Question::FixedPointFree,
            "rp2n_fixed_point_free" => Question::Rp2nFixedPointFree,
            other => {
                return Err(Error::Parse(format!(
                    "unknown question {other:?}; expected one of disk_fixed_set, \
                     template_fixed_set, template_stably_parallelizable, \
                     fixed_point_free, rp2n_fixed_point_free"
                )))
            }
        })
    }
}

/// Truth value of a congruence whose modulus may be unknown.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CongruenceOk {
    Known(bool),
    Unknown,
}

impl CongruenceOk {
    pub fn as_bool(self) -> Option<bool> {
        match self {
            CongruenceOk::Known(b) => Some(b),
            CongruenceOk::Unknown => None,
        }
    }
}

impl Serialize for CongruenceOk {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CongruenceOk::Known(b) => s.serialize_bool(*b),
            CongruenceOk::Unknown => s.serialize_str("unknown"),
        }
    }
}

/// The symbolic right-hand side for the reduced real K-theory subgroup
/// attached to a classification label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KoRecipe {
    /// 0 for prime-power order; 1-6 for the six refined labels.
    pub recipe_id: u8,
    pub formula_text: String,
    /// When set, quasidivisible subgroups replace torsion subgroups.
    pub infinite_complex_variant: bool,
}

/// Map a classification to its recipe id (0 for prime-power order).
pub fn recipe_id(class: &Classification) -> u8 {
    match class.five {
        ClassLabel::PrimePower => 0,
        _ => match class.six.expect("non-prime-power groups carry a six-class label") {
            SixClassLabel::ANormalSylow2 => 1,
            SixClassLabel::BNormalSylow2 => 2,
            SixClassLabel::ANotNormalSylow2 => 3,
            SixClassLabel::BNotNormalSylow2 => 4,
            SixClassLabel::C => 5,
            SixClassLabel::D => 6,
        },
    }
}

/// The symbolic formula for a classification label; `infinite_complex`
/// substitutes quasidivisible subgroups for torsion subgroups.
pub fn ko_recipe(class: &Classification, infinite_complex: bool) -> KoRecipe {
    let id = recipe_id(class);
    let base = match id {
        0 => "KO~(X,G) = r_C(KU~(X))",
        1 => "KO~(X,G) = r_C(tor KU~(X))",
        2 => "KO~(X,G) = r_C(KU~(X))",
        3 => "KO~(X,G) = tor KO~(X)",
        4 => "KO~(X,G) = tor KO~(X) + r_C(KU~(X))",
        5 => "KO~(X,G) = c_R^{-1}(tor KU~(X) + c_H(KSp~(X)))",
        6 => "KO~(X,G) = KO~(X)",
        _ => unreachable!(),
    };
    let formula_text = if infinite_complex {
        base.replace("tor ", "qdiv ")
    } else {
        base.to_string()
    };
    KoRecipe {
        recipe_id: id,
        formula_text,
        infinite_complex_variant: infinite_complex,
    }
}

/// Whether a = b modulo n, with modulus 0 meaning equality.
pub fn congruent_mod(a: i64, b: i64, n: u64) -> bool {
    if n == 0 {
        a == b
    } else {
        (a - b).rem_euclid(n as i64) == 0
    }
}

fn congruence(a: i64, b: i64, n: OliverNumber) -> CongruenceOk {
    match n.value {
        Some(v) => CongruenceOk::Known(congruent_mod(a, b, v)),
        None => CongruenceOk::Unknown,
    }
}

/// One answered realization question.
#[derive(Debug, Clone, Serialize)]
pub struct RealizabilityVerdict {
    pub question: Question,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_f: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_y_g: Option<i64>,
    pub n_g: OliverNumber,
    pub congruence_ok: CongruenceOk,
    /// Tangent-bundle condition, reported symbolically and never evaluated.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tangent_condition: Option<KoRecipe>,
    pub cited_theorem: String,
}

/// Can a compact manifold with the given Euler characteristic be the fixed
/// point set of a smooth action on some disk?
pub fn disk_fixed_set(chi_f: i64, n: OliverNumber) -> RealizabilityVerdict {
    RealizabilityVerdict {
        question: Question::DiskFixedSet,
        chi_f: Some(chi_f),
        chi_y_g: None,
        n_g: n,
        congruence_ok: congruence(chi_f, 1, n),
        tangent_condition: None,
        cited_theorem: "disk fixed-point realization theorem: chi(F) = 1 (mod n_G)".into(),
    }
}

/// Can a compact manifold with Euler characteristic `chi_f` be the fixed
/// point set of an action modeled on a template whose fixed set has Euler
/// characteristic `chi_y_g`? When the candidate is not stably
/// parallelizable, the verdict additionally reports the symbolic
/// tangent-bundle membership condition for the group's class.
pub fn template_fixed_set(
    chi_f: i64,
    chi_y_g: i64,
    n: OliverNumber,
    stably_parallelizable: bool,
    class: &Classification,
) -> RealizabilityVerdict {
    let (question, tangent_condition, cited) = if stably_parallelizable {
        (
            Question::TemplateStablyParallelizable,
            None,
            "stably parallelizable template realization theorem: chi(F) = chi(Y^G) (mod n_G)"
                .to_string(),
        )
    } else {
        (
            Question::TemplateFixedSet,
            Some(ko_recipe(class, false)),
            "template realization theorem: chi(F) = chi(Y^G) (mod n_G) and [TF] in KO~(F,G)"
                .to_string(),
        )
    };
    RealizabilityVerdict {
        question,
        chi_f: Some(chi_f),
        chi_y_g: Some(chi_y_g),
        n_g: n,
        congruence_ok: congruence(chi_f, chi_y_g, n),
        tangent_condition,
        cited_theorem: cited,
    }
}

/// Does the group act without fixed points on some manifold modeled on a
/// template whose fixed set has Euler characteristic `chi_y_g`?
pub fn fixed_point_free(chi_y_g: i64, n: OliverNumber) -> RealizabilityVerdict {
    RealizabilityVerdict {
        question: Question::FixedPointFree,
        chi_f: None,
        chi_y_g: Some(chi_y_g),
        n_g: n,
        congruence_ok: congruence(chi_y_g, 0, n),
        tangent_condition: None,
        cited_theorem: "fixed-point-free realization theorem: chi(Y^G) = 0 (mod n_G)".into(),
    }
}

/// Fixed-point-free actions on manifolds pseudo-equivalent to an
/// even-dimensional real projective space: the template fixed set is a
/// point, so the congruence reads 1 = 0 (mod n_G).
pub fn rp2n_fixed_point_free(n: OliverNumber) -> RealizabilityVerdict {
    let mut v = fixed_point_free(1, n);
    v.question = Question::Rp2nFixedPointFree;
    v.cited_theorem =
        "even projective space fixed-point-free theorem: chi(RP^2n) = 1 = 0 (mod n_G)".into();
    v
}

/// Derive the numeric invariant for a group, echoing a supplied value for
/// groups outside the computable case.
pub fn oliver_number(g: &FiniteGroup, supplied: Option<u64>) -> Result<OliverNumber> {
    OliverNumber::for_group(g, supplied)
}
