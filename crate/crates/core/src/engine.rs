//! Inference rules turning group facts and Kleppner's condition into
//! verdicts on simplicity and the unique trace property.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cocycle::Cocycle;
use crate::error::{Error, Result};
use crate::fc::{fc_center, upper_fc_series, FcSeries, DEFAULT_MAX_STEPS};
use crate::group::{Group, Metadata};
use crate::kleppner::{kleppner_condition, KleppnerStatus, KleppnerVerdict};
use crate::quotient::{quotient_by, Quotient};
use crate::subgroup::Subgroup;
use crate::verdict::Decision;

/// One rule firing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Justification {
    pub rule: &'static str,
    pub citation: &'static str,
    pub used: Vec<String>,
}

/// FC data gathered while classifying, kept for reports.
#[derive(Debug, Clone)]
pub struct FcSummary {
    pub center: Subgroup,
    pub series: FcSeries,
    pub hypercenter: Subgroup,
    pub icc_quotient: Option<Quotient>,
    /// Why the ICC quotient is missing, when it is.
    pub icc_quotient_error: Option<String>,
}

impl FcSummary {
    /// `FCH(G) = G` with a certified series.
    pub fn hypercentral(&self) -> Decision {
        if self.hypercenter.is_uncertain() {
            Decision::Unknown
        } else if self.hypercenter.is_whole() {
            Decision::Yes
        } else {
            Decision::No
        }
    }

    /// Class-P membership of `ICC(G)`.
    pub fn icc_in_class_p(&self) -> Decision {
        self.icc_quotient
            .as_ref()
            .map_or(Decision::Unknown, |q| q.group().metadata().in_class_p.value)
    }
}

#[derive(Debug, Clone)]
pub struct ClassificationResult {
    pub kleppner: KleppnerVerdict,
    pub simple: Decision,
    pub unique_trace: Decision,
    pub justification: Vec<Justification>,
    pub metadata: Metadata,
    pub fc: FcSummary,
    /// Kleppner's condition for `(FCH(G), σ|FCH)`, when it was evaluated.
    pub hypercenter_kleppner: Option<KleppnerVerdict>,
}

pub const R1_CITE: &str = "Kleppner's condition is necessary for simplicity and for uniqueness of the trace";
pub const R2_CITE: &str = "FC-hypercentral groups: simplicity, unique trace and Kleppner's condition are equivalent";
pub const R3_CITE: &str = "ICC(G) in class P: unique trace holds iff Kleppner's condition holds";
pub const R4_CITE: &str = "ICC(G) in class P and Kleppner's condition on (FCH(G), restricted cocycle) give simplicity";
pub const R5_CITE: &str = "an amenable nontrivial group with trivial cocycle has a one-dimensional representation";
pub const R6_CITE: &str = "for amenable groups the unique trace property implies simplicity";

/// FC-structure of `g` without touching a cocycle.
pub fn fc_summary(g: &Group, max_steps: usize, effort: u32) -> Result<FcSummary> {
    let center = fc_center(g, effort)?;
    let series = upper_fc_series(g, max_steps, effort)?;
    let mut hypercenter = series.steps[series.stabilization_index].clone().with_label("FCH(G)");
    if !series.stabilized {
        hypercenter.mark_uncertain();
    }
    let (icc_quotient, icc_quotient_error) = if hypercenter.is_uncertain() {
        (None, Some(format!("FC-hypercenter of {} is not certified", g.name())))
    } else {
        match quotient_by(g, &hypercenter) {
            Ok(q) => (Some(q), None),
            Err(Error::UnsupportedQuotient(msg)) => (None, Some(msg)),
            Err(e) => return Err(e),
        }
    };
    Ok(FcSummary {
        center,
        series,
        hypercenter,
        icc_quotient,
        icc_quotient_error,
    })
}

struct Verdicts {
    simple: Decision,
    unique_trace: Decision,
    justification: Vec<Justification>,
}

impl Verdicts {
    fn fire(
        &mut self,
        rule: &'static str,
        citation: &'static str,
        used: Vec<String>,
        simple: Option<Decision>,
        unique_trace: Option<Decision>,
    ) -> Result<()> {
        for (slot, value, what) in [
            (&mut self.simple, simple, "simple"),
            (&mut self.unique_trace, unique_trace, "unique_trace"),
        ] {
            let Some(v) = value else { continue };
            match *slot {
                Decision::Unknown => *slot = v,
                current if current == v => {}
                current => {
                    return Err(Error::InternalInconsistency(format!(
                        "{rule} sets {what} = {v} but an earlier rule set {current}"
                    )))
                }
            }
        }
        self.justification.push(Justification { rule, citation, used });
        Ok(())
    }
}

/// Classifies `(G, σ)` with the default series depth.
pub fn classify(s: &Cocycle, effort: u32) -> Result<ClassificationResult> {
    classify_with(s, DEFAULT_MAX_STEPS, effort)
}

pub fn classify_with(s: &Cocycle, max_steps: usize, effort: u32) -> Result<ClassificationResult> {
    let g = s.group();
    let metadata = g.metadata();
    let kleppner = kleppner_condition(s, effort)?;
    let fc = fc_summary(g, max_steps, effort)?;
    let in_p = fc.icc_in_class_p();
    let amenable = metadata.amenable.value;
    let trivial_cocycle = s.is_identically_trivial()?;

    let hypercenter_kleppner = if in_p.is_yes() {
        if fc.hypercenter.is_whole() {
            Some(kleppner.clone())
        } else {
            match s.restrict(&fc.hypercenter) {
                Ok(r) => Some(kleppner_condition(&r, effort)?),
                Err(Error::UnsupportedSubgroup(_) | Error::UnsupportedFamily(_)) => None,
                Err(e) => return Err(e),
            }
        }
    } else {
        None
    };

    let mut v = Verdicts {
        simple: Decision::Unknown,
        unique_trace: Decision::Unknown,
        justification: Vec::new(),
    };
    use Decision::{No, Yes};

    if let KleppnerStatus::Fails(w) = &kleppner.status {
        let used = vec![
            String::from("kleppner:fails"),
            format!("witness: {}", g.format_element(&w.element)),
            format!("class size: {}", class_size_str(&w.class_size)),
        ];
        v.fire("R1", R1_CITE, used, Some(No), Some(No))?;
    }
    if amenable.is_yes() && trivial_cocycle && !g.is_trivial() {
        let used = vec![
            format!("amenable: {}", metadata.amenable.citation),
            String::from("cocycle trivial"),
            String::from("g -> 1 is a one-dimensional representation"),
        ];
        v.fire("R5", R5_CITE, used, Some(No), Some(No))?;
    }
    if fc.hypercentral().is_yes() && kleppner.holds() {
        let used = vec![String::from("FCH(G) = G"), String::from("kleppner:holds")];
        v.fire("R2", R2_CITE, used, Some(Yes), Some(Yes))?;
    }
    if in_p.is_yes() && hypercenter_kleppner.as_ref().is_some_and(KleppnerVerdict::holds) {
        let used = vec![
            icc_in_p_note(&fc),
            format!("kleppner(FCH(G) = {}, restricted):holds", fc.hypercenter.label()),
        ];
        v.fire("R4", R4_CITE, used, Some(Yes), Some(Yes))?;
    }
    if in_p.is_yes() && kleppner.holds() {
        let used = vec![String::from("kleppner:holds"), icc_in_p_note(&fc)];
        v.fire("R3", R3_CITE, used, None, Some(Yes))?;
    }
    if amenable.is_yes() && v.unique_trace.is_yes() {
        let used = vec![
            format!("amenable: {}", metadata.amenable.citation),
            String::from("unique_trace:yes"),
        ];
        v.fire("R6", R6_CITE, used, Some(Yes), None)?;
    }

    if (v.simple.is_yes() || v.unique_trace.is_yes()) && !kleppner.holds() {
        return Err(Error::InternalInconsistency(String::from(
            "positive verdict without Kleppner's condition",
        )));
    }
    Ok(ClassificationResult {
        kleppner,
        simple: v.simple,
        unique_trace: v.unique_trace,
        justification: v.justification,
        metadata,
        fc,
        hypercenter_kleppner,
    })
}

fn icc_in_p_note(fc: &FcSummary) -> String {
    match &fc.icc_quotient {
        Some(q) => format!("icc_quotient {} in P", q.group().name()),
        None => String::from("icc_quotient in P"),
    }
}

pub fn class_size_str(c: &crate::group::ClassSize) -> String {
    use crate::group::ClassSize;
    match c {
        ClassSize::Finite(n) => format!("{n}"),
        ClassSize::Infinite(_) => String::from("infinite"),
        ClassSize::UnknownBeyond(b) => format!("unknown beyond {b}"),
    }
}
