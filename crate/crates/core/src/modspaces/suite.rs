//! One-shot verification of a selection of spaces against the references.

use super::analysis::{m3_analysis, q2_checks, M3Report};
use super::pipeline::Pipeline;
use super::reference::ReferenceTables;
use super::rep::GradedRep;
use super::verify::{find_global_bijection, mismatches, verify_space, BijectionSearch, Check, LabelBijection, Report};
use super::{ModSpaceError, Recipe, SpaceId};
use crate::lattice::IntPoly;
use num_bigint::BigInt;
use std::fmt;
use std::str::FromStr;

/// What to verify.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    All,
    Space(SpaceId),
    /// The plane quartic table against the flex and bitangent spaces.
    Q2,
    /// Bounds for the whole genus three moduli space.
    M3,
}

impl Scope {
    /// Computed spaces whose reference tables fix the label bijection.
    pub fn bijection_tables(self) -> Vec<SpaceId> {
        match self {
            Scope::All => SpaceId::with_reference().collect(),
            Scope::Space(id) if id.reference_name().is_some() => vec![id],
            Scope::Space(_) => Vec::new(),
            Scope::Q2 => vec![SpaceId::QFlx, SpaceId::PC22QBar],
            Scope::M3 => vec![SpaceId::Hyp3],
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scope::All => f.write_str("all"),
            Scope::Space(id) => write!(f, "{id}"),
            Scope::Q2 => f.write_str("q2"),
            Scope::M3 => f.write_str("m3"),
        }
    }
}

impl FromStr for Scope {
    type Err = ModSpaceError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Scope::All),
            "q2" => Ok(Scope::Q2),
            "m3" => Ok(Scope::M3),
            _ => s.parse().map(Scope::Space),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ScopeReport {
    pub report: Report,
    pub search: Option<BijectionSearch>,
    pub m3: Option<M3Report>,
}

/// Searches the bijection over `tables` and reports whether one reconciles
/// them all, naming the first disagreeing cell of the best otherwise.
pub fn bijection_check(
    tables: &[(SpaceId, &GradedRep)],
    references: &ReferenceTables,
) -> Result<(BijectionSearch, Check), ModSpaceError> {
    let mut pairs = Vec::with_capacity(tables.len());
    for &(id, rep) in tables {
        let reference = references
            .for_space(id)
            .ok_or_else(|| ModSpaceError::Reference(format!("{id} has no reference table")))?;
        pairs.push((id.reference_name().unwrap_or_default(), rep, reference));
    }
    let search = find_global_bijection(&pairs)?;
    let (_, computed, reference) = pairs[0];
    let renamed: Vec<String> =
        search.best.renamed(&computed.labels, &reference.labels).iter().map(|(c, r)| format!("{c}->{r}")).collect();
    let renamed = if renamed.is_empty() { "none".to_string() } else { renamed.join(" ") };
    let check = if search.perfect > 0 {
        Check::new(
            "label bijection",
            true,
            format!("{} of {} reconcile {} tables; renamed {renamed}", search.perfect, search.candidates, pairs.len()),
        )
    } else {
        let first = pairs.iter().flat_map(|(n, c, r)| mismatches(n, c, r, &search.best)).next();
        Check::new(
            "label bijection",
            false,
            format!(
                "none of {} reconciles all {} tables; best leaves {} cells, first {}",
                search.candidates,
                pairs.len(),
                search.mismatches,
                first.map_or_else(String::new, |m| m.to_string())
            ),
        )
    };
    Ok((search, check))
}

fn shifted(p: &IntPoly) -> IntPoly {
    p * &IntPoly::monomial(BigInt::from(1), 1)
}

/// `P(open) = P(closure) + t P(boundary)` on computed and, where shipped, on
/// reference tables.
pub fn closure_identity(
    pipeline: &mut Pipeline<'_>,
    references: &ReferenceTables,
    closure: SpaceId,
) -> Result<Option<Check>, ModSpaceError> {
    let Recipe::Closure { open, boundary } = closure.recipe() else { return Ok(None) };
    let lhs = pipeline.space(open)?.poincare();
    let rhs = &pipeline.space(closure)?.poincare() + &shifted(&pipeline.space(boundary)?.poincare());
    let mut ok = lhs == rhs;
    let mut detail = format!("P({open}) = {}", lhs.display_with("t"));
    if let (Some(o), Some(c), Some(b)) =
        (references.for_space(open), references.for_space(closure), references.for_space(boundary))
    {
        let reference_ok = o.poincare() == &c.poincare() + &shifted(&b.poincare());
        ok &= reference_ok;
        detail.push_str(if reference_ok { "; reference tables agree" } else { "; reference tables disagree" });
    }
    Ok(Some(Check::new(format!("{closure} closure identity"), ok, detail)))
}

/// Runs every check in `scope`.
pub fn verify_scope(
    pipeline: &mut Pipeline<'_>,
    references: &ReferenceTables,
    scope: Scope,
) -> Result<ScopeReport, ModSpaceError> {
    let mut report = Report::default();
    let ids = scope.bijection_tables();
    let computed: Vec<(SpaceId, GradedRep)> =
        ids.iter().map(|&id| pipeline.space(id).map(|r| (id, r))).collect::<Result<_, _>>()?;
    let search = if computed.is_empty() {
        None
    } else {
        let tables: Vec<(SpaceId, &GradedRep)> = computed.iter().map(|(id, r)| (*id, r)).collect();
        let (search, check) = bijection_check(&tables, references)?;
        report.push(check);
        Some(search)
    };
    let bijection = search.as_ref().map_or_else(|| LabelBijection::identity(30), |s| s.best.clone());

    match scope {
        Scope::All | Scope::Space(_) => {
            for (id, rep) in &computed {
                report.extend(verify_space(*id, rep, references, &bijection)?);
            }
            let closures: Vec<SpaceId> = match scope {
                Scope::Space(id) => vec![id],
                _ => SpaceId::ALL.to_vec(),
            };
            for id in closures {
                if let Some(c) = closure_identity(pipeline, references, id)? {
                    report.push(c);
                }
            }
            if let Scope::Space(id) = scope {
                if computed.is_empty() {
                    let rep = pipeline.space(id)?;
                    report.push(Check::new(
                        format!("{id} decomposition"),
                        true,
                        format!("nonnegative in {} degrees; P = {}", rep.degrees(), rep.poincare().display_with("t")),
                    ));
                }
            }
        }
        Scope::Q2 | Scope::M3 => {}
    }
    if matches!(scope, Scope::All | Scope::Q2) {
        let ctx = pipeline.context();
        let (qflx, pc22qbar) = (pipeline.space(SpaceId::QFlx)?, pipeline.space(SpaceId::PC22QBar)?);
        report.extend(q2_checks(ctx, references, &qflx, &pc22qbar, &bijection)?);
    }
    let m3 = if matches!(scope, Scope::All | Scope::M3) {
        let m3 = m3_analysis(references, &pipeline.space(SpaceId::Hyp3)?, &bijection)?;
        report.extend(m3.checks.clone());
        Some(m3)
    } else {
        None
    };
    Ok(ScopeReport { report, search, m3 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scopes_parse() {
        assert_eq!("all".parse::<Scope>().unwrap(), Scope::All);
        assert_eq!("m3".parse::<Scope>().unwrap(), Scope::M3);
        assert_eq!("hyp3".parse::<Scope>().unwrap(), Scope::Space(SpaceId::Hyp3));
        assert!("bogus".parse::<Scope>().is_err());
        for s in ["all", "q2", "m3", "q-ord"] {
            assert_eq!(s.parse::<Scope>().unwrap().to_string(), s);
        }
        assert_eq!(Scope::All.bijection_tables().len(), 9);
        assert!(Scope::Space(SpaceId::H211).bijection_tables().is_empty());
    }
}
