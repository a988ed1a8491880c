//! Report model shared by the JSON and text renderers.

use std::fmt::Write as _;

use serde::Serialize;

pub const SCHEMA: &str = "1";

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub name: Option<String>,
    pub group: GroupReport,
    pub cocycle: CocycleReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fc: Option<FcReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kleppner: Option<KleppnerReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metadata: Option<MetadataReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupReport {
    pub family: String,
    pub name: String,
    pub order: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CocycleReport {
    #[serde(rename = "type")]
    pub kind: String,
    pub validation: ValidationSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d_sigma: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationSummary {
    pub mode: String,
    pub checked_triples: u64,
    pub violations: u64,
    pub normalization_failures: usize,
    pub homomorphism_failures: u64,
    pub valid: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub first_violations: Vec<[String; 3]>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubgroupReport {
    pub label: String,
    pub generators: Vec<String>,
    pub certified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FcReport {
    pub fc_center: SubgroupReport,
    pub series: Vec<SubgroupReport>,
    pub stabilized: bool,
    pub stabilization_index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<String>,
    pub fch: SubgroupReport,
    pub icc_quotient: IccQuotientReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct IccQuotientReport {
    pub family: Option<String>,
    pub name: Option<String>,
    pub is_icc: Option<String>,
    pub in_class_p: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unavailable: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub element: String,
    pub class_size: String,
    pub centralizer_generators: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct KleppnerReport {
    pub status: String,
    pub witness: Option<WitnessReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub evidence: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regular_classes: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct JustificationReport {
    pub rule: String,
    pub cite: String,
    pub used: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub simple: String,
    pub unique_trace: String,
    pub justification: Vec<JustificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fch_kleppner: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FactReport {
    pub value: String,
    pub citation: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct MetadataReport {
    pub amenable: FactReport,
    pub in_class_p: FactReport,
    pub fc_hypercentral: FactReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleChecks {
    pub carey_moran_max_residual: Option<String>,
    pub conjugation_max_defect: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Agreement {
    pub regular_classes_vs_center: bool,
    pub kleppner_vs_center: bool,
    pub blocks_vs_center: bool,
    pub traces_vs_center: bool,
    pub verdict: bool,
    pub identities: bool,
    pub all: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleBlock {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta_numeric: Option<f64>,
    pub center_dim: Option<usize>,
    pub blocks: Vec<usize>,
    pub invariant_trace_dim: Option<usize>,
    pub checks: Option<OracleChecks>,
    pub agreement: Option<Agreement>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
}

/// Fixed-precision rendering keeps reports stable across platforms.
pub fn sci(x: f64) -> String {
    format!("{x:.2e}")
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        if let Some(n) = &self.name {
            let _ = writeln!(w, "analysis: {n}");
        }
        let g = &self.group;
        let order = g.order.map_or("infinite".to_string(), |n| n.to_string());
        let _ = writeln!(w, "group: {} ({}, order {order})", g.name, g.family);
        let c = &self.cocycle;
        let v = &c.validation;
        let _ = writeln!(
            w,
            "cocycle: {} | validation {} over {} triples: {}",
            c.kind,
            v.mode,
            v.checked_triples,
            if v.valid { "valid" } else { "INVALID" }
        );
        for [a, b, k] in &v.first_violations {
            let _ = writeln!(w, "  violation at ({a}, {b}, {k})");
        }
        if let Some(d) = &c.d_sigma {
            let _ = writeln!(w, "D^sigma: {d}");
        }
        if let Some(fc) = &self.fc {
            let _ = writeln!(w, "FC-center: {}", subgroup_line(&fc.fc_center));
            let series: Vec<String> = fc.series.iter().map(subgroup_line).collect();
            let _ = writeln!(w, "upper FC-series: {}", series.join(" <= "));
            let _ = writeln!(
                w,
                "  stabilized: {} at index {}",
                fc.stabilized, fc.stabilization_index
            );
            if let Some(t) = &fc.truncation {
                let _ = writeln!(w, "  truncated: {t}");
            }
            let _ = writeln!(w, "FCH: {}", subgroup_line(&fc.fch));
            let q = &fc.icc_quotient;
            match (&q.name, &q.unavailable) {
                (Some(name), _) => {
                    let _ = writeln!(
                        w,
                        "ICC quotient: {name} [{}] icc={} in_P={}",
                        q.family.as_deref().unwrap_or("?"),
                        q.is_icc.as_deref().unwrap_or("unknown"),
                        q.in_class_p.as_deref().unwrap_or("unknown")
                    );
                }
                (None, Some(why)) => {
                    let _ = writeln!(w, "ICC quotient: unavailable ({why})");
                }
                _ => {}
            }
        }
        if let Some(k) = &self.kleppner {
            let _ = writeln!(w, "kleppner: {}", k.status);
            if let Some(wt) = &k.witness {
                let _ = writeln!(
                    w,
                    "  witness: {} (class size {}, centralizer <{}>)",
                    wt.element,
                    wt.class_size,
                    wt.centralizer_generators.join(", ")
                );
            }
            if let Some(r) = &k.reason {
                let _ = writeln!(w, "  reason: {r}");
            }
            if let Some(n) = k.regular_classes {
                let _ = writeln!(w, "  sigma-regular classes: {n}");
            }
            for e in &k.evidence {
                let _ = writeln!(w, "  - {e}");
            }
        }
        if let Some(cl) = &self.classification {
            let _ = writeln!(w, "simple: {}", cl.simple);
            let _ = writeln!(w, "unique trace: {}", cl.unique_trace);
            for j in &cl.justification {
                let _ = writeln!(w, "  {}: {} [{}]", j.rule, j.cite, j.used.join("; "));
            }
            if let Some(f) = &cl.fch_kleppner {
                let _ = writeln!(w, "  kleppner on FCH: {f}");
            }
        }
        if let Some(m) = &self.metadata {
            let _ = writeln!(w, "amenable: {} ({})", m.amenable.value, m.amenable.citation);
            let _ = writeln!(w, "in class P: {} ({})", m.in_class_p.value, m.in_class_p.citation);
            let _ = writeln!(w, "FC-hypercentral (catalog): {} ({})", m.fc_hypercentral.value, m.fc_hypercentral.citation);
        }
        if let Some(o) = &self.oracle {
            let _ = writeln!(w, "oracle:");
            if let Some(t) = o.theta_numeric {
                let _ = writeln!(w, "  theta = {t}");
            }
            if let Some(e) = &o.error {
                let _ = writeln!(w, "  error: {e}");
            }
            if let Some(d) = o.center_dim {
                let _ = writeln!(w, "  center dimension: {d}");
                let _ = writeln!(w, "  blocks: {:?}", o.blocks);
            }
            if let Some(d) = o.invariant_trace_dim {
                let _ = writeln!(w, "  invariant trace dimension: {d}");
            }
            if let Some(c) = &o.checks {
                let _ = writeln!(
                    w,
                    "  max conjugation defect: {}; max Carey-Moran residual: {}",
                    c.conjugation_max_defect,
                    c.carey_moran_max_residual.as_deref().unwrap_or("n/a")
                );
            }
            if let Some(a) = &o.agreement {
                let _ = writeln!(w, "  agreement: {}", a.all);
            }
        }
        if let Some(e) = &self.error {
            let _ = writeln!(w, "error ({}): {}", e.kind, e.message);
        }
        out
    }
}

fn subgroup_line(s: &SubgroupReport) -> String {
    let gens = if s.generators.is_empty() {
        String::new()
    } else {
        format!(" = <{}>", s.generators.join(", "))
    };
    let flag = if s.certified { "" } else { " (uncertified)" };
    format!("{}{gens}{flag}", s.label)
}
