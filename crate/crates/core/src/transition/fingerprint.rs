use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::keyvalue::{parse_bool, split_list, Section};

/// Invariant tuple standing in for a deformation class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    /// Betti numbers `b_0 .. b_6`.
    pub b: [u64; 7],
    pub chi: i64,
    pub h11: Option<u64>,
    pub h21: Option<u64>,
    pub h1_theta: Option<u64>,
    /// Opaque fundamental-group tag such as `trivial` or `Z/5`; `None` when unknown.
    pub pi1: Option<String>,
    pub smooth: bool,
    pub kahler: bool,
}

pub(crate) const FINGERPRINT_KEYS: [&str; 8] = ["b", "chi", "h11", "h21", "h1_theta", "pi1", "smooth", "kahler"];

impl Fingerprint {
    /// Smooth Calabi–Yau fingerprint from Hodge numbers.
    pub fn calabi_yau(h11: u64, h21: u64) -> Self {
        Fingerprint {
            b: [1, 0, h11, 2 + 2 * h21, h11, 0, 1],
            chi: 2 * (h11 as i64 - h21 as i64),
            h11: Some(h11),
            h21: Some(h21),
            h1_theta: None,
            pi1: None,
            smooth: true,
            kahler: true,
        }
    }

    /// Profile with `b_0 = b_6 = 1`, `b_1 = b_5 = 0` and `χ` the alternating sum.
    pub fn from_betti(b2: u64, b3: u64, b4: u64, smooth: bool) -> Self {
        let b = [1, 0, b2, b3, b4, 0, 1];
        Fingerprint {
            b,
            chi: alternating_sum(&b),
            h11: None,
            h21: None,
            h1_theta: None,
            pi1: None,
            smooth,
            kahler: true,
        }
    }

    pub fn alternating_sum(&self) -> i64 {
        alternating_sum(&self.b)
    }

    /// `h^{2,1}` implied by `b_3 = 2 + 2 h^{2,1}`, when `b_3` is even and at least 2.
    pub fn expected_h21(&self) -> Option<u64> {
        let b3 = self.b[3];
        (b3 >= 2 && b3.is_multiple_of(2)).then(|| (b3 - 2) / 2)
    }

    /// The Betti profile every variety in scope must have.
    pub fn check_profile(&self) -> Result<()> {
        if self.b[0] != 1 || self.b[6] != 1 || self.b[1] != 0 || self.b[5] != 0 {
            let b: Vec<String> = self.b.iter().map(u64::to_string).collect();
            return Err(Error::InvalidRecord(format!(
                "Betti profile ({}) needs b0 = b6 = 1 and b1 = b5 = 0",
                b.join(",")
            )));
        }
        Ok(())
    }

    pub(crate) fn from_section(s: &Section, smooth_default: bool) -> Result<Self> {
        let b_entry = s.require("b")?;
        let parts = split_list(&b_entry.value);
        let b: Vec<u64> = parts
            .iter()
            .map(|x| x.parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::parse(b_entry.line, format!("bad Betti numbers {:?}", b_entry.value)))?;
        let b: [u64; 7] = b
            .try_into()
            .map_err(|_| Error::parse(b_entry.line, "expected seven Betti numbers b0..b6"))?;
        let chi = s.parse_value::<i64>("chi")?.unwrap_or_else(|| alternating_sum(&b));
        let flag = |key: &str, default: bool| s.get(key).map_or(Ok(default), parse_bool);
        let fp = Fingerprint {
            b,
            chi,
            h11: s.parse_value("h11")?,
            h21: s.parse_value("h21")?,
            h1_theta: s.parse_value("h1_theta")?,
            pi1: s.value("pi1").map(str::to_string),
            smooth: flag("smooth", smooth_default)?,
            kahler: flag("kahler", true)?,
        };
        fp.check_profile()?;
        Ok(fp)
    }

    /// `key: value` lines in the order of [`FINGERPRINT_KEYS`].
    pub(crate) fn write_entries(&self, out: &mut String) {
        let b: Vec<String> = self.b.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "b: {}", b.join(","));
        let _ = writeln!(out, "chi: {}", self.chi);
        for (key, v) in [("h11", self.h11), ("h21", self.h21), ("h1_theta", self.h1_theta)] {
            if let Some(v) = v {
                let _ = writeln!(out, "{key}: {v}");
            }
        }
        if let Some(p) = &self.pi1 {
            let _ = writeln!(out, "pi1: {p}");
        }
        let _ = writeln!(out, "smooth: {}", self.smooth);
        let _ = writeln!(out, "kahler: {}", self.kahler);
    }

    /// Same Betti numbers and Euler number.
    pub fn same_topology(&self, other: &Fingerprint) -> bool {
        self.b == other.b && self.chi == other.chi
    }
}

fn alternating_sum(b: &[u64; 7]) -> i64 {
    b.iter()
        .enumerate()
        .map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quintic() {
        let q = Fingerprint::calabi_yau(1, 101);
        assert_eq!(q.b, [1, 0, 1, 204, 1, 0, 1]);
        assert_eq!(q.chi, -200);
        assert_eq!(q.alternating_sum(), -200);
        assert_eq!(q.expected_h21(), Some(101));
    }

    #[test]
    fn profile_rejects_odd_betti() {
        let mut f = Fingerprint::from_betti(1, 4, 1, true);
        f.b[1] = 1;
        assert!(f.check_profile().is_err());
    }
}
