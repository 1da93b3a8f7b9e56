use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::keyvalue::{split_list, Section};
use crate::poly::parse::{parse_field_element, parse_polynomial_at, ring_from_headers, ring_headers};
use crate::poly::{FieldElement, MonomialOrder, Polynomial, Ring};
use crate::singularity::{
    analyze_singular_locus, Ambient, AnalysisOptions, Hypersurface, LocalModel, SingularityReport,
};

/// A deformation of a local model depending on named parameters.
#[derive(Clone, Debug)]
pub struct SplittingFamily {
    local_model: LocalModel,
    /// Lives in the local model's variables followed by the parameters.
    deformed: Polynomial,
    parameters: Vec<String>,
    values: BTreeMap<String, FieldElement>,
    expected_nodes_per_point: usize,
}

impl SplittingFamily {
    pub fn new(
        local_model: LocalModel,
        deformed: Polynomial,
        parameters: Vec<String>,
        values: BTreeMap<String, FieldElement>,
        expected_nodes_per_point: usize,
    ) -> Result<Self> {
        let s = SplittingFamily {
            local_model,
            deformed,
            parameters,
            values,
            expected_nodes_per_point,
        };
        let base = s.local_model.germ().ring();
        let expected: Vec<String> = base.vars().iter().chain(&s.parameters).cloned().collect();
        if s.deformed.ring().vars() != expected.as_slice() || s.deformed.field() != base.field() {
            return Err(Error::InvalidRecord(
                "deformed model must use the germ's variables followed by the parameters".into(),
            ));
        }
        if let Some(p) = s.values.keys().find(|k| !s.parameters.contains(k)) {
            return Err(Error::InvalidRecord(format!("value given for unknown parameter {p}")));
        }
        if let Some(p) = s.parameters.iter().find(|p| !s.values.contains_key(*p)) {
            return Err(Error::InvalidRecord(format!("no value for parameter {p}")));
        }
        let zeros = s.parameters.iter().map(|p| (p.clone(), base.field().zero())).collect();
        if &s.specialize(&zeros)? != s.local_model.germ() {
            return Err(Error::InvalidRecord(
                "deformed model does not reduce to the germ at zero parameters".into(),
            ));
        }
        Ok(s)
    }

    pub fn local_model(&self) -> &LocalModel {
        &self.local_model
    }

    pub fn deformed(&self) -> &Polynomial {
        &self.deformed
    }

    pub fn parameters(&self) -> &[String] {
        &self.parameters
    }

    pub fn values(&self) -> &BTreeMap<String, FieldElement> {
        &self.values
    }

    pub fn expected_nodes_per_point(&self) -> usize {
        self.expected_nodes_per_point
    }

    /// The deformed model at the given parameter values, in the germ's ring.
    pub fn specialize(&self, values: &BTreeMap<String, FieldElement>) -> Result<Polynomial> {
        let base = self.local_model.germ().ring();
        let offset = base.nvars();
        let mut assignments = BTreeMap::new();
        for (i, p) in self.parameters.iter().enumerate() {
            let v = values
                .get(p)
                .ok_or_else(|| Error::InvalidRecord(format!("no value for parameter {p}")))?;
            assignments.insert(offset + i, Polynomial::constant(base, v.clone()));
        }
        self.deformed.substitute_into(base, &assignments)
    }

    /// Same family with different parameter values.
    pub fn with_values(&self, values: BTreeMap<String, FieldElement>) -> Result<Self> {
        SplittingFamily::new(
            self.local_model.clone(),
            self.deformed.clone(),
            self.parameters.clone(),
            values,
            self.expected_nodes_per_point,
        )
    }

    pub(crate) fn from_section(s: &Section) -> Result<Self> {
        let vars = s.require("vars")?;
        let ring = ring_from_headers(&vars.value, s.value("field"), vars.line)?;
        let parameters: Vec<String> = s
            .value("params")
            .map(split_list)
            .unwrap_or_default()
            .into_iter()
            .map(String::from)
            .collect();
        let all: Vec<String> = ring.vars().iter().chain(&parameters).cloned().collect();
        let big = Ring::new(all, ring.field().clone());
        let germ_entry = s.require("germ")?;
        let germ = parse_polynomial_at(&germ_entry.value, &ring, germ_entry.line)?;
        let def_entry = s.require("deformed")?;
        let deformed = parse_polynomial_at(&def_entry.value, &big, def_entry.line)?;
        let mut values = BTreeMap::new();
        if let Some(v) = s.get("values") {
            for item in split_list(&v.value) {
                let (k, x) = item
                    .split_once('=')
                    .ok_or_else(|| Error::parse(v.line, format!("expected name=value, found {item:?}")))?;
                let x = parse_field_element(x.trim(), ring.field())
                    .map_err(|_| Error::parse(v.line, format!("bad value {x:?}")))?;
                values.insert(k.trim().to_string(), x);
            }
        }
        let expected = s.parse_required::<usize>("expected_nodes_per_point")?;
        SplittingFamily::new(LocalModel::new(germ)?, deformed, parameters, values, expected)
    }

    pub(crate) fn write_entries(&self, out: &mut String) {
        let base = self.local_model.germ().ring();
        let order = MonomialOrder::degrevlex(base.nvars());
        for line in ring_headers(base).lines() {
            let _ = writeln!(out, "{line}");
        }
        if !self.parameters.is_empty() {
            let _ = writeln!(out, "params: {}", self.parameters.join(","));
        }
        let _ = writeln!(out, "germ: {}", self.local_model.germ().to_text(&order));
        let big_order = MonomialOrder::degrevlex(self.deformed.ring().nvars());
        let _ = writeln!(out, "deformed: {}", self.deformed.to_text(&big_order));
        if !self.values.is_empty() {
            let gen = base.field().name().to_string();
            let vals: Vec<String> = self
                .parameters
                .iter()
                .map(|p| {
                    let mut s = String::new();
                    let _ = self.values[p].fmt_with(&gen, &mut s);
                    format!("{p}={s}")
                })
                .collect();
            let _ = writeln!(out, "values: {}", vals.join(", "));
        }
        let _ = writeln!(out, "expected_nodes_per_point: {}", self.expected_nodes_per_point);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittingReport {
    pub report: SingularityReport,
    pub expected_nodes_per_point: usize,
    pub verified: bool,
}

impl SplittingReport {
    pub fn to_text(&self) -> String {
        format!(
            "{}expected nodes per point: {}\nverified: {}\n",
            self.report.to_text(),
            self.expected_nodes_per_point,
            self.verified
        )
    }
}

/// Analyzes the deformed local model at the family's parameter values.
/// Verified iff it has exactly the expected number of singular points, all
/// certified nodes.
pub fn verify_splitting_family(s: &SplittingFamily, opts: &AnalysisOptions) -> Result<SplittingReport> {
    let f = s.specialize(&s.values)?;
    let n = f.ring().nvars();
    let report = analyze_singular_locus(&Hypersurface::new(f, Ambient::Affine(n))?, opts)?;
    let verified = report.all_nodes && report.point_count == s.expected_nodes_per_point;
    Ok(SplittingReport {
        report,
        expected_nodes_per_point: s.expected_nodes_per_point,
        verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::keyvalue::parse_sections;

    fn node_family() -> SplittingFamily {
        let text = "[witness]\nvars: x,y,z,w\ngerm: x^2 + y^2 + z^2 + w^2\ndeformed: x^2 + y^2 + z^2 + w^2\nexpected_nodes_per_point: 1\n";
        SplittingFamily::from_section(&parse_sections(text).unwrap()[0]).unwrap()
    }

    #[test]
    fn node_with_empty_deformation() {
        let r = verify_splitting_family(&node_family(), &AnalysisOptions::default()).unwrap();
        assert!(r.verified);
        assert_eq!(r.report.point_count, 1);
    }

    #[test]
    fn rejects_family_not_reducing_to_germ() {
        let text = "[witness]\nvars: x,y\nparams: a\ngerm: x^2 + y^3\ndeformed: x^2 + y^3 + a*y + 1\nvalues: a=1\nexpected_nodes_per_point: 2\n";
        assert!(SplittingFamily::from_section(&parse_sections(text).unwrap()[0]).is_err());
    }

    #[test]
    fn splitting_a_cusp_into_nodes() {
        let text = "[witness]\nvars: x,y\nparams: a\ngerm: x^2 - y^3\ndeformed: x^2 - y^3 + a*y^2\nvalues: a=1\nexpected_nodes_per_point: 1\n";
        let s = SplittingFamily::from_section(&parse_sections(text).unwrap()[0]).unwrap();
        let r = verify_splitting_family(&s, &AnalysisOptions::default()).unwrap();
        assert!(r.verified, "{}", r.to_text());
        let zero = s
            .with_values([("a".to_string(), s.local_model().germ().field().zero())].into())
            .unwrap();
        let r = verify_splitting_family(&zero, &AnalysisOptions::default()).unwrap();
        assert!(!r.verified);
        assert_eq!(r.report.multiplicity_total, 2);
    }
}
