//! Built-in named Lie algebras and example structures, with the
//! expected-rank table that drives classification verification.
//!
//! The data lives in two embedded files: `data/algebras.salamon` (the
//! algebras, in Salamon text form) and `data/catalog.json` (base co-frames
//! for complex presentations, named structures, expectations and frozen
//! search witnesses).

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::acs::{standard_acs, CoFrame};
use crate::error::{Error, Result};
use crate::exterior::LieAlgebra;
use crate::salamon::parse_salamon;
use crate::survey::{rank_bound, realize_structure, verify_witness_rank};

const ALGEBRAS_TEXT: &str = include_str!("../data/algebras.salamon");
const CATALOG_JSON: &str = include_str!("../data/catalog.json");

/// Per-rank existence status in the expected-rank table.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankStatus {
    Exists,
    NotExists,
    Unknown,
}

/// How a stored structure is presented: a deformation of the entry's base
/// co-frame, or an explicit co-frame over the entry's algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureSpec {
    Phi(Vec<Vec<String>>),
    CoFrame(Vec<Vec<String>>),
}

#[derive(Clone, Debug)]
pub struct NamedStructure {
    pub label: String,
    pub expected_rank: usize,
    pub spec: StructureSpec,
}

pub struct CatalogEntry {
    name: String,
    salamon: String,
    algebra: LieAlgebra,
    base: CoFrame,
    expected: Vec<RankStatus>,
    structures: Vec<NamedStructure>,
    witnesses: BTreeMap<usize, StructureSpec>,
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// The tuple this entry was loaded from.
    pub fn salamon(&self) -> &str {
        &self.salamon
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    /// The co-frame deformations are taken against; the standard structure
    /// unless the entry carries a complex presentation.
    pub fn base(&self) -> &CoFrame {
        &self.base
    }

    pub fn half_dim(&self) -> usize {
        self.algebra.dim() / 2
    }

    pub fn expected(&self, rank: usize) -> RankStatus {
        self.expected
            .get(rank)
            .copied()
            .unwrap_or(RankStatus::Unknown)
    }

    pub fn structures(&self) -> &[NamedStructure] {
        &self.structures
    }

    pub fn frozen_witness(&self, rank: usize) -> Option<&StructureSpec> {
        self.witnesses.get(&rank)
    }

    pub fn realize(&self, spec: &StructureSpec) -> Result<CoFrame> {
        realize_structure(&self.base, spec)
    }
}

#[derive(Deserialize)]
struct RawCatalog {
    #[allow(dead_code)]
    schema_version: String,
    entries: Vec<RawEntry>,
}

#[derive(Deserialize)]
struct RawEntry {
    name: String,
    #[serde(default)]
    base_coframe: Option<Vec<Vec<String>>>,
    expected: Vec<String>,
    #[serde(default)]
    structures: Vec<RawStructure>,
    #[serde(default)]
    witnesses: BTreeMap<String, RawSpec>,
}

#[derive(Deserialize)]
struct RawStructure {
    label: String,
    rank: usize,
    #[serde(default)]
    phi: Option<Vec<Vec<String>>>,
    #[serde(default)]
    coframe: Option<Vec<Vec<String>>>,
}

#[derive(Deserialize)]
struct RawSpec {
    #[serde(default)]
    phi: Option<Vec<Vec<String>>>,
    #[serde(default)]
    coframe: Option<Vec<Vec<String>>>,
}

fn spec_from_raw(phi: Option<Vec<Vec<String>>>, coframe: Option<Vec<Vec<String>>>) -> Result<StructureSpec> {
    match (phi, coframe) {
        (Some(p), None) => Ok(StructureSpec::Phi(p)),
        (None, Some(c)) => Ok(StructureSpec::CoFrame(c)),
        _ => Err(Error::InvalidInput(
            "structure needs exactly one of phi/coframe".into(),
        )),
    }
}

fn status_from_str(s: &str) -> Result<RankStatus> {
    match s {
        "exists" => Ok(RankStatus::Exists),
        "not-exists" => Ok(RankStatus::NotExists),
        "unknown" => Ok(RankStatus::Unknown),
        other => Err(Error::InvalidInput(format!("unknown rank status {other:?}"))),
    }
}

fn parse_algebra_lines(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, tuple) = match line.split_once('=') {
            Some((n, t)) => (n.trim().to_owned(), t.trim().to_owned()),
            None => (line.to_owned(), line.to_owned()),
        };
        out.push((name, tuple));
    }
    Ok(out)
}

fn build_catalog() -> Result<Vec<CatalogEntry>> {
    let tuples: BTreeMap<String, String> = parse_algebra_lines(ALGEBRAS_TEXT)?.into_iter().collect();
    let order: Vec<String> = parse_algebra_lines(ALGEBRAS_TEXT)?
        .into_iter()
        .map(|(n, _)| n)
        .collect();
    let raw: RawCatalog = serde_json::from_str(CATALOG_JSON)
        .map_err(|e| Error::InvalidInput(format!("catalog.json: {e}")))?;
    let mut raw_by_name: BTreeMap<String, RawEntry> =
        raw.entries.into_iter().map(|e| (e.name.clone(), e)).collect();

    let mut entries = Vec::new();
    for name in order {
        let tuple = &tuples[&name];
        let raw = raw_by_name
            .remove(&name)
            .ok_or_else(|| Error::InvalidInput(format!("no catalog.json entry for {name}")))?;
        let algebra = parse_salamon(tuple)?.with_name(name.clone());
        let m = algebra.dim() / 2;
        let base = match raw.base_coframe {
            Some(rows) => CoFrame::from_string_rows(&rows)?,
            None => standard_acs(m),
        };
        if base.dim() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: algebra.dim(),
                found: base.dim(),
            });
        }
        let expected = raw
            .expected
            .iter()
            .map(|s| status_from_str(s))
            .collect::<Result<Vec<_>>>()?;
        if expected.len() != m + 1 {
            return Err(Error::InvalidInput(format!(
                "{name}: expected-rank table needs {} statuses",
                m + 1
            )));
        }
        let structures = raw
            .structures
            .into_iter()
            .map(|s| {
                Ok(NamedStructure {
                    label: s.label,
                    expected_rank: s.rank,
                    spec: spec_from_raw(s.phi, s.coframe)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let witnesses = raw
            .witnesses
            .into_iter()
            .map(|(k, v)| {
                let rank: usize = k
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad witness rank {k:?}")))?;
                Ok((rank, spec_from_raw(v.phi, v.coframe)?))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        entries.push(CatalogEntry {
            name,
            salamon: tuple.clone(),
            algebra,
            base,
            expected,
            structures,
            witnesses,
        });
    }
    if let Some(extra) = raw_by_name.keys().next() {
        return Err(Error::InvalidInput(format!(
            "catalog.json entry {extra} has no algebra line"
        )));
    }
    Ok(entries)
}

/// The bundled catalog; built once, validated lazily by
/// [`catalog_selftest`].
pub fn load_catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| build_catalog().expect("embedded catalog data is well-formed"))
}

/// Looks an entry up by name (or tuple used as a name).
pub fn find_entry(name: &str) -> Option<&'static CatalogEntry> {
    load_catalog().iter().find(|e| e.name == name)
}

#[derive(Clone, Debug, Serialize)]
pub struct SelfTestReport {
    pub entries: usize,
    pub structures_checked: usize,
    pub witnesses_checked: usize,
    pub failures: Vec<String>,
}

impl SelfTestReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Re-validates the whole catalog: Jacobi on every algebra, Salamon
/// round-trip, named structures and frozen witnesses reproducing their
/// claimed ranks through both rank routes, and coherence of the
/// expected-rank table with the topological bound.
pub fn catalog_selftest() -> SelfTestReport {
    let entries = load_catalog();
    let mut failures = Vec::new();
    let mut structures_checked = 0;
    let mut witnesses_checked = 0;
    for entry in entries {
        let g = entry.algebra();
        if let Err(v) = g.check_jacobi() {
            failures.push(format!("{}: Jacobi fails: {v}", entry.name));
        }
        match crate::salamon::format_salamon(g).and_then(|s| parse_salamon(&s)) {
            Ok(back) => {
                if &back != g {
                    failures.push(format!("{}: Salamon round-trip changed the algebra", entry.name));
                }
            }
            Err(e) => failures.push(format!("{}: Salamon round-trip failed: {e}", entry.name)),
        }
        let m = entry.half_dim();
        let bound = match rank_bound(g) {
            Ok(b) => b,
            Err(e) => {
                failures.push(format!("{}: {e}", entry.name));
                continue;
            }
        };
        for rank in 0..=m {
            if entry.expected(rank) == RankStatus::Exists && rank > bound.min(m) {
                failures.push(format!(
                    "{}: claims a rank-{rank} structure above the bound {bound}",
                    entry.name
                ));
            }
        }
        for s in entry.structures() {
            structures_checked += 1;
            match entry.realize(&s.spec) {
                Ok(cf) => {
                    if !verify_witness_rank(g, &cf, s.expected_rank) {
                        failures.push(format!(
                            "{}/{}: rank != {}",
                            entry.name, s.label, s.expected_rank
                        ));
                    }
                }
                Err(e) => failures.push(format!("{}/{}: {e}", entry.name, s.label)),
            }
        }
        for (rank, spec) in &entry.witnesses {
            witnesses_checked += 1;
            match entry.realize(spec) {
                Ok(cf) => {
                    if !verify_witness_rank(g, &cf, *rank) {
                        failures.push(format!("{}: frozen rank-{rank} witness fails", entry.name));
                    }
                }
                Err(e) => failures.push(format!("{}: frozen rank-{rank} witness: {e}", entry.name)),
            }
        }
    }
    SelfTestReport {
        entries: entries.len(),
        structures_checked,
        witnesses_checked,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::survey;

    #[test]
    fn catalog_loads_with_expected_contents() {
        let entries = load_catalog();
        assert_eq!(entries.len(), 31);
        for required in [
            "torus6",
            "kt",
            "iwasawa",
            "nakamura",
            "(0,0,12,13,14+23,34-25)",
            "(0,0,0,12,13,23)",
            "(0,0,0,0,0,12)",
            "(0,0,0,0,0,12+34)",
            "(0,0,0,12,13,14)",
            "(0,0,0,12,14,15)",
            "(0,0,12,13,14,15)",
            "(0,0,0,12,23,14-35)",
            "(0,0,0,0,12,14+25)",
        ] {
            assert!(find_entry(required).is_some(), "missing {required}");
        }
        // rank-3 existence list has 21 members plus the Nakamura algebra
        let rank3 = entries
            .iter()
            .filter(|e| e.half_dim() == 3 && e.expected(3) == RankStatus::Exists)
            .count();
        assert_eq!(rank3, 22);
        // the four algebras with no rank-2 structure
        let no2 = entries
            .iter()
            .filter(|e| e.half_dim() == 3 && e.expected(2) == RankStatus::NotExists)
            .count();
        assert_eq!(no2, 4);
        // the two with no rank-1 structure
        let no1 = entries
            .iter()
            .filter(|e| e.half_dim() == 3 && e.expected(1) == RankStatus::NotExists)
            .count();
        assert_eq!(no1, 2);
    }

    #[test]
    fn named_structure_lookup() {
        let iw = find_entry("iwasawa").unwrap();
        let rank2 = iw
            .structures()
            .iter()
            .find(|s| s.label == "rank2")
            .expect("iwasawa has the rank-2 deformation");
        assert_eq!(rank2.expected_rank, 2);
        match &rank2.spec {
            StructureSpec::Phi(rows) => {
                assert_eq!(rows[0][2], "1");
                assert_eq!(rows[1][1], "2");
            }
            _ => panic!("expected a deformation"),
        }
        let nak = find_entry("nakamura").unwrap();
        let rank3 = nak.structures().iter().find(|s| s.label == "rank3").unwrap();
        match &rank3.spec {
            StructureSpec::Phi(rows) => assert_eq!(rows[1][1], "1/2"),
            _ => panic!("expected a deformation"),
        }
    }

    #[test]
    fn selftest_passes() {
        let report = catalog_selftest();
        assert!(report.ok(), "selftest failures: {:#?}", report.failures);
        assert!(report.structures_checked >= 10);
    }

    #[test]
    fn kt_catalog_entry_matches_printed_presentation() {
        let kt = find_entry("kt").unwrap();
        assert_eq!(crate::salamon::format_salamon(kt.algebra()).unwrap(), "(0,0,0,-23)");
        // base co-frame satisfies d phi^2 = -(i/2) phi^{1 1-bar}
        let phi1 = kt.base().row_form(1);
        let phi2 = kt.base().row_form(2);
        let lhs = kt.algebra().differential(&phi2).unwrap();
        let rhs = phi1
            .wedge(&phi1.conjugate())
            .unwrap()
            .scale(&crate::GaussianRational::complex(0, 1, -1, 2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn iwasawa_base_satisfies_printed_presentation() {
        let iw = find_entry("iwasawa").unwrap();
        let phi1 = iw.base().row_form(1);
        let phi2 = iw.base().row_form(2);
        let phi3 = iw.base().row_form(3);
        assert!(iw.algebra().differential(&phi1).unwrap().is_zero());
        assert!(iw.algebra().differential(&phi2).unwrap().is_zero());
        let lhs = iw.algebra().differential(&phi3).unwrap();
        let rhs = phi1.wedge(&phi2).unwrap().neg();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn bound_proofs_match_expectations() {
        // bound 0 on the torus, 1 on the one-relation algebras, <= 2 on the
        // (0,0,0,0,*,*) family
        assert_eq!(survey::rank_bound(find_entry("torus6").unwrap().algebra()).unwrap(), 0);
        assert_eq!(
            survey::rank_bound(find_entry("(0,0,0,0,0,12)").unwrap().algebra()).unwrap(),
            1
        );
        assert_eq!(
            survey::rank_bound(find_entry("(0,0,0,0,0,12+34)").unwrap().algebra()).unwrap(),
            1
        );
        assert_eq!(survey::rank_bound(find_entry("iwasawa").unwrap().algebra()).unwrap(), 2);
        assert_eq!(
            survey::rank_bound(find_entry("(0,0,0,0,12,14+25)").unwrap().algebra()).unwrap(),
            2
        );
    }
}
