use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, PointCount, QuotientRing, RadicalCertificate, DEFAULT_PAIR_BUDGET};
use crate::poly::{parse_document, MonomialOrder, Polynomial, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ambient {
    Affine(usize),
    Projective(usize),
    WeightedProjective(Vec<u64>),
}

impl Ambient {
    /// Parses `affine 4`, `projective 4` or `weighted 1,1,1,1,2`.
    pub fn parse(text: &str) -> Result<Ambient> {
        let mut parts = text.split_whitespace();
        let kind = parts.next().unwrap_or("");
        let arg = parts.next().unwrap_or("");
        if parts.next().is_some() {
            return Err(Error::InvalidHypersurface(format!("unexpected ambient text {text:?}")));
        }
        let dim = || {
            arg.parse::<usize>()
                .map_err(|_| Error::InvalidHypersurface(format!("bad dimension in {text:?}")))
        };
        match kind {
            "affine" => Ok(Ambient::Affine(dim()?)),
            "projective" => Ok(Ambient::Projective(dim()?)),
            "weighted" => {
                let w = arg
                    .split(',')
                    .map(|x| x.trim().parse::<u64>().ok().filter(|&v| v > 0))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::InvalidHypersurface(format!("bad weights in {text:?}")))?;
                Ok(Ambient::WeightedProjective(w))
            }
            _ => Err(Error::InvalidHypersurface(format!("unknown ambient {text:?}"))),
        }
    }

    fn expected_vars(&self) -> usize {
        match self {
            Ambient::Affine(n) => *n,
            Ambient::Projective(n) => n + 1,
            Ambient::WeightedProjective(w) => w.len(),
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::Affine(n) => write!(f, "affine {n}"),
            Ambient::Projective(n) => write!(f, "projective {n}"),
            Ambient::WeightedProjective(w) => {
                let w: Vec<String> = w.iter().map(u64::to_string).collect();
                write!(f, "weighted {}", w.join(","))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Hypersurface {
    equation: Polynomial,
    ambient: Ambient,
}

impl Hypersurface {
    pub fn new(equation: Polynomial, ambient: Ambient) -> Result<Self> {
        let nvars = equation.ring().nvars();
        if nvars != ambient.expected_vars() {
            return Err(Error::InvalidHypersurface(format!(
                "ambient {ambient} needs {} variables, ring has {nvars}",
                ambient.expected_vars()
            )));
        }
        if equation.is_zero() {
            return Err(Error::InvalidHypersurface("zero equation".into()));
        }
        match &ambient {
            Ambient::Affine(_) => {}
            Ambient::Projective(_) => {
                if equation.is_homogeneous().is_none() {
                    return Err(Error::InvalidHypersurface(
                        "projective equation is not homogeneous".into(),
                    ));
                }
            }
            Ambient::WeightedProjective(w) => {
                if equation.is_weighted_homogeneous(w).is_none() {
                    return Err(Error::InvalidHypersurface(
                        "equation is not weighted homogeneous for the given weights".into(),
                    ));
                }
            }
        }
        Ok(Hypersurface { equation, ambient })
    }

    /// Reads a `.hsf` document: one equation and an `ambient:` header.
    pub fn from_text(text: &str) -> Result<Self> {
        let doc = parse_document(text)?;
        let ambient = doc
            .header("ambient")
            .ok_or_else(|| Error::InvalidHypersurface("missing ambient header".into()))?;
        Hypersurface::new(doc.single()?.clone(), Ambient::parse(ambient)?)
    }

    pub fn equation(&self) -> &Polynomial {
        &self.equation
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn chart_count(&self) -> usize {
        match &self.ambient {
            Ambient::Affine(_) => 1,
            Ambient::Projective(n) => n + 1,
            Ambient::WeightedProjective(w) => w.len(),
        }
    }

    /// Equation of the affine chart: itself for affine ambient, `x_chart = 1` otherwise.
    pub fn chart_equation(&self, chart: usize) -> Result<Polynomial> {
        match &self.ambient {
            Ambient::Affine(_) => Ok(self.equation.clone()),
            _ => {
                if chart >= self.chart_count() {
                    return Err(Error::VariableOutOfRange {
                        index: chart,
                        nvars: self.chart_count(),
                    });
                }
                self.equation.dehomogenize(chart)
            }
        }
    }

    /// Generators `{f, ∂f/∂x_1, ..., ∂f/∂x_n}` of the singular scheme in a chart.
    pub fn singular_scheme(&self, chart: usize) -> Result<Vec<Polynomial>> {
        let f = self.chart_equation(chart)?;
        let mut gens = vec![f.clone()];
        gens.extend(f.gradient());
        Ok(gens)
    }
}

/// Knobs shared by every analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Seed for the random linear forms of the radicality certificate.
    pub seed: u64,
    /// Pair budget per Gröbner basis computation.
    pub budget: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            seed: 1,
            budget: DEFAULT_PAIR_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartReport {
    /// Name of the coordinate set to 1, or `None` for an affine ambient.
    pub chart: Option<String>,
    pub point_count: usize,
    pub multiplicity: usize,
    pub radical_certified: bool,
    pub all_nodes: bool,
    pub certificate: Option<RadicalCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityReport {
    pub point_count: usize,
    pub multiplicity_total: usize,
    pub all_nodes: bool,
    pub radical_certified: bool,
    pub charts: Vec<ChartReport>,
}

impl SingularityReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.charts {
            let name = c.chart.as_deref().map_or("affine".to_string(), |v| format!("{v}=1"));
            let cert = match &c.certificate {
                None => "empty".to_string(),
                Some(RadicalCertificate::SquarefreeLinearForm { coefficients, .. }) => {
                    let cs: Vec<String> = coefficients.iter().map(i64::to_string).collect();
                    format!("squarefree linear form [{}]", cs.join(","))
                }
                Some(RadicalCertificate::SeidenbergRadical) => "exact radical".to_string(),
            };
            s.push_str(&format!(
                "chart {name}: points={} multiplicity={} radical={} nodes={} certificate={cert}\n",
                c.point_count, c.multiplicity, c.radical_certified, c.all_nodes
            ));
        }
        s.push_str(&format!(
            "{} distinct singular points, all nodes: {}\nmultiplicity total: {}\nradical certified: {}\n",
            self.point_count, self.all_nodes, self.multiplicity_total, self.radical_certified
        ));
        s
    }

    pub const CSV_HEADER: &'static str = "point_count,multiplicity_total,all_nodes,radical_certified";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{}",
            self.point_count, self.multiplicity_total, self.all_nodes, self.radical_certified
        )
    }
}

/// Matrix of second partials.
pub fn hessian(f: &Polynomial) -> Vec<Vec<Polynomial>> {
    let grad = f.gradient();
    grad.iter().map(|g| g.gradient()).collect()
}

/// Determinant of a polynomial matrix modulo a Gröbner basis, by cofactor
/// expansion with reduction after every product.
pub fn determinant_modulo(m: &[Vec<Polynomial>], gb: &GroebnerBasis) -> Polynomial {
    let n = m.len();
    let ring = gb.ring();
    let reduced: Vec<Vec<Polynomial>> = m
        .iter()
        .map(|row| row.iter().map(|p| gb.normal_form(p)).collect())
        .collect();
    let cols: Vec<usize> = (0..n).collect();
    det_rec(&reduced, 0, &cols, gb, ring)
}

fn det_rec(m: &[Vec<Polynomial>], row: usize, cols: &[usize], gb: &GroebnerBasis, ring: &Arc<Ring>) -> Polynomial {
    if cols.is_empty() {
        return gb.normal_form(&Polynomial::one(ring));
    }
    let mut acc = Polynomial::zero(ring);
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[row][c];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_rec(m, row + 1, &rest, gb, ring);
        let term = gb.normal_form(&entry.mul(&minor));
        acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Counts and certifies the singular points of a hypersurface.
///
/// A projective point is attributed to the chart of its first nonvanishing
/// coordinate: in chart `i` the coordinates `x_j`, `j < i`, are forced to
/// vanish. Multiplicities are the lengths of the singular scheme at the
/// attributed points, read off from `J_i + (x_j^M)` with `M = dim k[x]/J_i`.
pub fn analyze_singular_locus(h: &Hypersurface, opts: &AnalysisOptions) -> Result<SingularityReport> {
    if let Ambient::WeightedProjective(_) = h.ambient() {
        return Err(Error::Unsupported(
            "singular-locus analysis on weighted projective charts".into(),
        ));
    }
    let projective = matches!(h.ambient(), Ambient::Projective(_));
    let mut charts = Vec::new();
    for chart in 0..h.chart_count() {
        let f = h.chart_equation(chart)?;
        let ring = f.ring().clone();
        let order = MonomialOrder::degrevlex(ring.nvars());
        let mut gens = vec![f.clone()];
        gens.extend(f.gradient());
        let name = projective.then(|| h.equation().ring().vars()[chart].clone());
        let chart_gb = if projective && chart > 0 {
            // Cheap emptiness test first: the attributed points satisfy x_j = 0.
            let mut restricted = gens.clone();
            restricted.extend((0..chart).map(|j| Polynomial::var(&ring, j)));
            let probe = GroebnerBasis::compute_with_budget(&restricted, &order, opts.budget)?;
            if probe.is_unit_ideal() {
                charts.push(empty_chart(name));
                continue;
            }
            let full = GroebnerBasis::compute_with_budget(&gens, &order, opts.budget)?;
            let q = full.quotient_ring()?;
            let bound = q.dimension() as u32;
            let mut fat = full.generators().to_vec();
            for j in 0..chart {
                fat.push(reduced_power(&full, &Polynomial::var(&ring, j), bound));
            }
            GroebnerBasis::compute_with_budget(&fat, &order, opts.budget)?
        } else {
            GroebnerBasis::compute_with_budget(&gens, &order, opts.budget)?
        };
        if chart_gb.is_unit_ideal() {
            charts.push(empty_chart(name));
            continue;
        }
        let q = QuotientRing::new(chart_gb)?;
        let PointCount {
            distinct,
            multiplicity_total,
            radical,
            certificate,
        } = q.count_points(opts.seed)?;
        let det = determinant_modulo(&hessian(&f), q.groebner_basis());
        let nodes = radical && q.is_unit(&det);
        charts.push(ChartReport {
            chart: name,
            point_count: distinct,
            multiplicity: multiplicity_total,
            radical_certified: radical,
            all_nodes: nodes,
            certificate: Some(certificate),
        });
    }
    let point_count = charts.iter().map(|c| c.point_count).sum();
    let multiplicity_total = charts.iter().map(|c| c.multiplicity).sum();
    Ok(SingularityReport {
        point_count,
        multiplicity_total,
        all_nodes: charts.iter().all(|c| c.all_nodes),
        radical_certified: charts.iter().all(|c| c.radical_certified),
        charts,
    })
}

fn reduced_power(gb: &GroebnerBasis, g: &Polynomial, e: u32) -> Polynomial {
    let mut acc = gb.normal_form(&Polynomial::one(gb.ring()));
    for _ in 0..e {
        acc = gb.normal_form(&acc.mul(g));
        if acc.is_zero() {
            break;
        }
    }
    acc
}

fn empty_chart(name: Option<String>) -> ChartReport {
    ChartReport {
        chart: name,
        point_count: 0,
        multiplicity: 0,
        radical_certified: true,
        all_nodes: true,
        certificate: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::poly;

    #[test]
    fn plane_curve_nodes_across_charts() {
        // three lines in general position: three nodes, one per chart
        let r = Ring::rational(&["x", "y", "z"]);
        let h = Hypersurface::new(poly(&r, "x*y*z"), Ambient::Projective(2)).unwrap();
        let rep = analyze_singular_locus(&h, &AnalysisOptions::default()).unwrap();
        assert_eq!(rep.point_count, 3);
        assert!(rep.all_nodes);
        assert_eq!(
            rep.charts.iter().map(|c| c.point_count).collect::<Vec<_>>(),
            vec![1, 1, 1]
        );
    }

    #[test]
    fn cusp_is_not_a_node() {
        let r = Ring::rational(&["x", "y", "z"]);
        let h = Hypersurface::new(poly(&r, "y^2*z - x^3"), Ambient::Projective(2)).unwrap();
        let rep = analyze_singular_locus(&h, &AnalysisOptions::default()).unwrap();
        assert_eq!(rep.point_count, 1);
        assert_eq!(rep.multiplicity_total, 2);
        assert!(!rep.all_nodes);
        assert!(!rep.radical_certified);
    }

    #[test]
    fn smooth_fermat_quintic_charts_are_empty() {
        let r = Ring::rational(&["x0", "x1", "x2", "x3", "x4"]);
        let h = Hypersurface::new(poly(&r, "x0^5 + x1^5 + x2^5 + x3^5 + x4^5"), Ambient::Projective(4)).unwrap();
        for chart in 0..5 {
            let gens = h.singular_scheme(chart).unwrap();
            let gb = GroebnerBasis::compute(&gens, &MonomialOrder::degrevlex(4)).unwrap();
            assert!(gb.is_unit_ideal());
        }
        let rep = analyze_singular_locus(&h, &AnalysisOptions::default()).unwrap();
        assert_eq!(rep.point_count, 0);
    }

    #[test]
    fn positive_dimensional_locus_is_an_error() {
        let r = Ring::rational(&["x", "y", "z"]);
        let h = Hypersurface::new(poly(&r, "x^2*z"), Ambient::Projective(2)).unwrap();
        assert_eq!(
            analyze_singular_locus(&h, &AnalysisOptions::default()),
            Err(Error::PositiveDimensional)
        );
    }

    #[test]
    fn construction_checks() {
        let r = Ring::rational(&["x", "y", "z"]);
        assert!(Hypersurface::new(poly(&r, "x^2 + y"), Ambient::Projective(2)).is_err());
        assert!(Hypersurface::new(poly(&r, "x^2 + y"), Ambient::Affine(2)).is_err());
        assert!(Hypersurface::new(poly(&r, "x^2 + y"), Ambient::WeightedProjective(vec![1, 2, 1])).is_ok());
        assert_eq!(
            Ambient::parse("weighted 1,2,1").unwrap(),
            Ambient::WeightedProjective(vec![1, 2, 1])
        );
        assert!(Ambient::parse("projective").is_err());
    }
}
