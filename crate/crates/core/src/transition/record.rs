use std::fmt;
use std::fmt::Write as _;

use super::fingerprint::{Fingerprint, FINGERPRINT_KEYS};
use super::splitting::{verify_splitting_family, SplittingFamily, SplittingReport};
use crate::error::{Error, Result};
use crate::keyvalue::{parse_bool, parse_sections, split_list, Section};
use crate::singularity::AnalysisOptions;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeTag {
    Conifold,
    Small,
    TypeII,
    Other,
}

impl TypeTag {
    pub fn parse(s: &str) -> Result<TypeTag> {
        match s {
            "conifold" => Ok(TypeTag::Conifold),
            "small" => Ok(TypeTag::Small),
            "typeII" => Ok(TypeTag::TypeII),
            "other" => Ok(TypeTag::Other),
            _ => Err(Error::InvalidRecord(format!("unknown transition type {s:?}"))),
        }
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeTag::Conifold => "conifold",
            TypeTag::Small => "small",
            TypeTag::TypeII => "typeII",
            TypeTag::Other => "other",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularDatum {
    pub count: usize,
    pub milnor_each: Vec<u64>,
    pub terminal: bool,
    pub cdv_type: Option<String>,
}

impl SingularDatum {
    pub fn milnor_total(&self) -> u64 {
        self.milnor_each.iter().sum()
    }
}

/// An exceptional tree of rational curves labelled by its Dynkin graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    pub label: String,
    pub curves: u64,
}

impl Tree {
    /// `A4`, `D5`, `E6`, ...; the curve count is the rank of the diagram.
    pub fn parse(label: &str) -> Result<Tree> {
        let bad = || Error::InvalidRecord(format!("unknown Dynkin label {label:?}"));
        let (kind, rank) = label.split_at(1.min(label.len()));
        let rank: u64 = rank.parse().map_err(|_| bad())?;
        let ok = match kind {
            "A" => rank >= 1,
            "D" => rank >= 4,
            "E" => (6..=8).contains(&rank),
            _ => false,
        };
        if !ok {
            return Err(bad());
        }
        Ok(Tree {
            label: label.to_string(),
            curves: rank,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionDatum {
    pub trees: Vec<Tree>,
    /// Rank of the span of exceptional curve classes in `H_2(Y)`.
    pub k_independent: u64,
    pub k_source: Option<String>,
    /// Set when the contraction collapses a divisor to a point.
    pub divisor_contraction: bool,
}

impl ResolutionDatum {
    pub fn curve_total(&self) -> u64 {
        self.trees.iter().map(|t| t.curves).sum()
    }

    /// Groups consecutive equal labels: `10 x A4, 2 x A1`.
    pub fn trees_text(&self) -> String {
        let mut groups: Vec<(usize, &str)> = Vec::new();
        for t in &self.trees {
            match groups.last_mut() {
                Some((n, l)) if *l == t.label => *n += 1,
                _ => groups.push((1, &t.label)),
            }
        }
        if groups.is_empty() {
            return "none".to_string();
        }
        groups
            .iter()
            .map(|(n, l)| format!("{n} x {l}"))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn parse_trees(text: &str, line: usize) -> Result<Vec<Tree>> {
    if text == "none" {
        return Ok(Vec::new());
    }
    let mut trees = Vec::new();
    for group in split_list(text) {
        let (n, label) = match group.split_once(" x ") {
            Some((n, l)) => (
                n.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::parse(line, format!("bad tree count in {group:?}")))?,
                l.trim(),
            ),
            None => (1, group),
        };
        let tree = Tree::parse(label).map_err(|e| Error::parse(line, e.to_string()))?;
        trees.extend(std::iter::repeat_n(tree, n));
    }
    Ok(trees)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessStatus {
    Unchecked,
    Verified,
    Failed,
}

/// Explicit deformation of a transition to a conifold transition.
#[derive(Clone, Debug)]
pub struct Witness {
    pub family: SplittingFamily,
    /// Name of the nodal variety the family produces.
    pub conifold_name: Option<String>,
    /// `h^1(Θ)` of that nodal variety, when known.
    pub h1_theta_singular: Option<u64>,
    pub status: WitnessStatus,
}

#[derive(Clone, Debug)]
pub struct TransitionRecord {
    pub name: String,
    pub type_tag: TypeTag,
    pub description: Option<String>,
    pub smoothing_name: String,
    pub smoothing: Fingerprint,
    pub singular_name: String,
    pub singular: SingularDatum,
    pub resolution_name: String,
    pub resolution: ResolutionDatum,
    /// Fundamental-group tag of the resolution `Y`.
    pub resolution_pi1: Option<String>,
    pub resolution_fp: Option<Fingerprint>,
    pub singular_fp: Option<Fingerprint>,
    pub witness: Option<Witness>,
    /// `(h^1(Θ_Ȳ), h^1(Θ_Y))`.
    pub h1_theta_pair: Option<(u64, u64)>,
}

const RECORD_KEYS: [&str; 3] = ["name", "type", "description"];
const SINGULAR_KEYS: [&str; 6] = ["name", "count", "milnor", "terminal", "cdv", "h1_theta"];
const RESOLUTION_KEYS: [&str; 7] = ["name", "trees", "k", "k_source", "divisor", "pi1", "h1_theta"];
const WITNESS_KEYS: [&str; 10] = [
    "vars",
    "field",
    "params",
    "germ",
    "deformed",
    "values",
    "expected_nodes_per_point",
    "conifold_name",
    "h1_theta_singular",
    "note",
];

impl TransitionRecord {
    pub fn from_text(text: &str) -> Result<Self> {
        let sections = parse_sections(text)?;
        let find = |name: &str| -> Result<Option<&Section>> {
            let mut it = sections.iter().filter(|s| s.name == name);
            let first = it.next();
            if let Some(dup) = it.next() {
                return Err(Error::parse(dup.line, format!("duplicate [{name}] section")));
            }
            Ok(first)
        };
        let known = [
            "record",
            "smoothing",
            "singular",
            "resolution",
            "resolution_fp",
            "singular_fp",
            "witness",
        ];
        if let Some(s) = sections.iter().find(|s| !known.contains(&s.name.as_str())) {
            return Err(Error::parse(s.line, format!("unknown section [{}]", s.name)));
        }
        let need = |name: &str| find(name)?.ok_or_else(|| Error::parse(1, format!("missing [{name}] section")));

        let rec = need("record")?;
        rec.check_keys(&RECORD_KEYS)?;
        let type_entry = rec.require("type")?;
        let type_tag = TypeTag::parse(&type_entry.value).map_err(|e| Error::parse(type_entry.line, e.to_string()))?;

        let sm = need("smoothing")?;
        let mut sm_keys = FINGERPRINT_KEYS.to_vec();
        sm_keys.push("name");
        sm.check_keys(&sm_keys)?;
        let smoothing = Fingerprint::from_section(sm, true)?;

        let si = need("singular")?;
        si.check_keys(&SINGULAR_KEYS)?;
        let count = si.parse_required::<usize>("count")?;
        let mu = si.require("milnor")?;
        let mut milnor_each: Vec<u64> = split_list(&mu.value)
            .iter()
            .map(|x| x.parse())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::parse(mu.line, format!("bad Milnor numbers {:?}", mu.value)))?;
        if milnor_each.len() == 1 && count != 1 {
            milnor_each = vec![milnor_each[0]; count];
        }
        if milnor_each.len() != count {
            return Err(Error::parse(
                mu.line,
                format!("{} Milnor numbers for {count} points", milnor_each.len()),
            ));
        }
        let singular = SingularDatum {
            count,
            milnor_each,
            terminal: si.get("terminal").map_or(Ok(false), parse_bool)?,
            cdv_type: si.value("cdv").map(str::to_string),
        };

        let re = need("resolution")?;
        re.check_keys(&RESOLUTION_KEYS)?;
        let trees_entry = re.require("trees")?;
        let resolution = ResolutionDatum {
            trees: parse_trees(&trees_entry.value, trees_entry.line)?,
            k_independent: re.parse_required("k")?,
            k_source: re.value("k_source").map(str::to_string),
            divisor_contraction: re.get("divisor").map_or(Ok(false), parse_bool)?,
        };

        let fp_section = |name: &str, smooth: bool| -> Result<Option<Fingerprint>> {
            match find(name)? {
                None => Ok(None),
                Some(s) => {
                    s.check_keys(&FINGERPRINT_KEYS)?;
                    Fingerprint::from_section(s, smooth).map(Some)
                }
            }
        };
        let witness = match find("witness")? {
            None => None,
            Some(w) => {
                w.check_keys(&WITNESS_KEYS)?;
                Some(Witness {
                    family: SplittingFamily::from_section(w)?,
                    conifold_name: w.value("conifold_name").map(str::to_string),
                    h1_theta_singular: w.parse_value("h1_theta_singular")?,
                    status: WitnessStatus::Unchecked,
                })
            }
        };
        let h1_theta_pair = match (si.parse_value::<u64>("h1_theta")?, re.parse_value::<u64>("h1_theta")?) {
            (Some(a), Some(b)) => Some((a, b)),
            (None, None) => None,
            _ => {
                return Err(Error::parse(
                    si.line,
                    "h1_theta must be given for both [singular] and [resolution] or neither",
                ))
            }
        };
        let name_of = |s: &Section, default: &str| s.value("name").unwrap_or(default).to_string();
        let record = TransitionRecord {
            name: rec.require("name")?.value.clone(),
            type_tag,
            description: rec.value("description").map(str::to_string),
            smoothing_name: name_of(sm, "Ytilde"),
            smoothing,
            singular_name: name_of(si, "Ybar"),
            singular,
            resolution_name: name_of(re, "Y"),
            resolution,
            resolution_pi1: re.value("pi1").map(str::to_string),
            resolution_fp: fp_section("resolution_fp", true)?,
            singular_fp: fp_section("singular_fp", false)?,
            witness,
            h1_theta_pair,
        };
        record.validate()?;
        Ok(record)
    }

    /// Structural invariants tied to the type tag.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidRecord(format!("{}: {m}", self.name)));
        if !self.smoothing.smooth {
            return bad("the smoothing must be smooth".into());
        }
        if self.resolution.k_independent > self.resolution.curve_total() && !self.resolution.divisor_contraction {
            return bad(format!(
                "k = {} exceeds the {} exceptional curves",
                self.resolution.k_independent,
                self.resolution.curve_total()
            ));
        }
        match self.type_tag {
            TypeTag::Conifold => {
                if self.singular.milnor_each.iter().any(|&m| m != 1) {
                    return bad("a conifold record has only nodes (every Milnor number 1)".into());
                }
                if self.resolution.trees.iter().any(|t| t.label != "A1")
                    || self.resolution.trees.len() != self.singular.count
                {
                    return bad("a conifold record resolves each node by one A1 curve".into());
                }
            }
            TypeTag::Small => {
                if !self.singular.terminal {
                    return bad("a small record needs terminal singularities".into());
                }
                if self.resolution.divisor_contraction {
                    return bad("a small contraction has no exceptional divisor".into());
                }
            }
            TypeTag::TypeII => {
                if !self.resolution.divisor_contraction || !self.resolution.trees.is_empty() {
                    return bad("a type II record contracts one divisor and carries no trees".into());
                }
                if self.resolution_fp.is_none() {
                    return bad("a type II record must supply the resolution fingerprint".into());
                }
            }
            TypeTag::Other => {}
        }
        Ok(())
    }

    /// Runs the witness, if any, and stores the outcome on the record.
    pub fn verify_witness(&mut self, opts: &AnalysisOptions) -> Result<Option<SplittingReport>> {
        let Some(w) = self.witness.as_mut() else {
            return Ok(None);
        };
        let report = verify_splitting_family(&w.family, opts)?;
        w.status = if report.verified {
            WitnessStatus::Verified
        } else {
            WitnessStatus::Failed
        };
        Ok(Some(report))
    }

    pub fn witness_status(&self) -> Option<WitnessStatus> {
        self.witness.as_ref().map(|w| w.status)
    }

    /// Fundamental-group tag of `Y`, from the resolution data or its fingerprint.
    pub fn pi1_of_resolution(&self) -> Option<&str> {
        self.resolution_pi1
            .as_deref()
            .or_else(|| self.resolution_fp.as_ref().and_then(|f| f.pi1.as_deref()))
    }

    /// Canonical text form; parsing it back yields an equal record.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "[record]\nname: {}\ntype: {}", self.name, self.type_tag);
        if let Some(d) = &self.description {
            let _ = writeln!(s, "description: {d}");
        }
        let _ = writeln!(s, "\n[smoothing]\nname: {}", self.smoothing_name);
        self.smoothing.write_entries(&mut s);
        let sd = &self.singular;
        let _ = writeln!(s, "\n[singular]\nname: {}\ncount: {}", self.singular_name, sd.count);
        let uniform = sd.milnor_each.windows(2).all(|w| w[0] == w[1]) && !sd.milnor_each.is_empty();
        let mu = if uniform && sd.count > 1 {
            sd.milnor_each[0].to_string()
        } else {
            sd.milnor_each.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
        };
        let _ = writeln!(s, "milnor: {mu}\nterminal: {}", sd.terminal);
        if let Some(c) = &sd.cdv_type {
            let _ = writeln!(s, "cdv: {c}");
        }
        if let Some((a, _)) = self.h1_theta_pair {
            let _ = writeln!(s, "h1_theta: {a}");
        }
        let r = &self.resolution;
        let _ = writeln!(
            s,
            "\n[resolution]\nname: {}\ntrees: {}\nk: {}",
            self.resolution_name,
            r.trees_text(),
            r.k_independent
        );
        if let Some(src) = &r.k_source {
            let _ = writeln!(s, "k_source: {src}");
        }
        let _ = writeln!(s, "divisor: {}", r.divisor_contraction);
        if let Some(p) = &self.resolution_pi1 {
            let _ = writeln!(s, "pi1: {p}");
        }
        if let Some((_, b)) = self.h1_theta_pair {
            let _ = writeln!(s, "h1_theta: {b}");
        }
        for (name, fp) in [
            ("resolution_fp", &self.resolution_fp),
            ("singular_fp", &self.singular_fp),
        ] {
            if let Some(fp) = fp {
                let _ = writeln!(s, "\n[{name}]");
                fp.write_entries(&mut s);
            }
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(s, "\n[witness]");
            w.family.write_entries(&mut s);
            if let Some(n) = &w.conifold_name {
                let _ = writeln!(s, "conifold_name: {n}");
            }
            if let Some(h) = w.h1_theta_singular {
                let _ = writeln!(s, "h1_theta_singular: {h}");
            }
        }
        s
    }
}
