//! Consistency checks for plane quartics, bounds for the whole moduli space
//! of genus three curves, and the strata of canonical divisors.

use super::groups::Context;
use super::reference::{ReferenceTables, M3_LOWER_BOUND, Q2};
use super::rep::GradedRep;
use super::verify::{Check, LabelBijection, Report};
use super::{ModSpaceError, SpaceId};
use crate::chartab::{decompose, induce, partitions, restrict};
use crate::lattice::IntPoly;
use num_bigint::BigInt;

/// Checks relating the reference quartic table to computed spaces:
/// its Poincare polynomial, containment in the flex space degree by degree,
/// and `Ind Res` from W(E6) reproducing the closed bitangent stratum.
pub fn q2_checks(
    ctx: &Context,
    references: &ReferenceTables,
    qflx: &GradedRep,
    pc22qbar: &GradedRep,
    bijection: &LabelBijection,
) -> Result<Report, ModSpaceError> {
    let q2_ref = references.table(Q2)?;
    let q2 = bijection.to_computed(q2_ref, &qflx.labels);
    let mut report = Report::default();

    let p = q2.poincare();
    let stated = references.theorems.get(Q2).ok_or_else(|| ModSpaceError::Reference("no stated polynomial".into()))?;
    report.push(Check::new(
        "q2 Poincare",
        &p == stated,
        format!("table rows {}, stated {}", p.display_with("t"), stated.display_with("t")),
    ));

    let mut witness = None;
    'outer: for i in 0..q2.degrees() {
        for j in 0..q2.dims.len() {
            let bound = qflx.rows.get(i).map_or(0, |r| r[j]);
            if q2.rows[i][j] > bound {
                witness = Some(format!("H^{i} phi_{}: {} > {bound}", q2_ref.labels[bijection.map[j]], q2.rows[i][j]));
                break 'outer;
            }
        }
    }
    report.push(Check::new(
        "q2 contained in q-flx",
        witness.is_none(),
        witness.unwrap_or_else(|| format!("all {} degrees", q2.degrees())),
    ));

    let s = &ctx.parabolic;
    let mut witness = None;
    for i in 0..q2.degrees().max(pc22qbar.degrees()) {
        let chi = if i < q2.degrees() { q2.character(i, &ctx.table) } else { crate::chartab::ClassFunction::zero(ctx.sp_info().len()) };
        let back = induce(&restrict(&chi, &s.to_sp, ctx.sp_info())?, &s.to_sp, &s.info, ctx.sp_info())?;
        let m = decompose(&back, &ctx.table)?;
        let target: Vec<BigInt> = pc22qbar.rows.get(i).map_or(vec![BigInt::from(0); m.len()], |r| r.iter().map(|&v| BigInt::from(v)).collect());
        if let Some(j) = (0..m.len()).find(|&j| m[j] != target[j]) {
            witness = Some(format!("H^{i} phi_{}: Ind Res gives {}, pc22qbar has {}", ctx.table.irreducibles[j].label, m[j], target[j]));
            break;
        }
    }
    report.push(Check::new(
        "q2 Ind Res equals pc22qbar",
        witness.is_none(),
        witness.unwrap_or_else(|| format!("index {} in every degree", ctx.sp_info().order / s.info.order)),
    ));
    Ok(report)
}

/// Degree `k` of the sequence
/// `0 -> W_2k H^k(M) -> H^k(Q) -> H^{k-1}(Hyp)(-1) -> W_2k H^{k+1}(M) -> 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourTermSequence {
    pub k: usize,
    pub quartic: u64,
    pub hyperelliptic: u64,
    /// Irreducible-wise lower bounds for the kernel and the cokernel.
    pub kernel_bound: u64,
    pub cokernel_bound: u64,
}

#[derive(Clone, Debug)]
pub struct M3Report {
    pub sequences: Vec<FourTermSequence>,
    /// Irreducible-wise bound for `dim H^7(M_3[2])`.
    pub lower_bound: u64,
    pub published_lower_bound: u64,
    /// Dimension-only bound `dim H^5(Hyp) - dim H^6(Q)`.
    pub naive_bound: i64,
    pub upper_bound: u64,
    /// Weighted Euler characteristic in `u`.
    pub euler: IntPoly,
    /// Its class-function-valued refinement: virtual multiplicities in
    /// reference columns for each power of `u`.
    pub equivariant_euler: Vec<Vec<i64>>,
    pub labels: Vec<String>,
    pub checks: Report,
}

/// Kernel and cokernel bounds, Euler characteristic and low-degree
/// consistency from the decomposition of M_3[2] into quartics and
/// hyperelliptic curves.
pub fn m3_analysis(references: &ReferenceTables, hyp3: &GradedRep, bijection: &LabelBijection) -> Result<M3Report, ModSpaceError> {
    let q = references.table(Q2)?;
    let h = bijection.to_reference(hyp3, &q.labels);
    let dims = &q.dims;
    let row = |r: &GradedRep, i: Option<usize>| -> Vec<u64> {
        i.and_then(|i| r.rows.get(i).cloned()).unwrap_or_else(|| vec![0; dims.len()])
    };
    let excess = |a: &[u64], b: &[u64]| -> u64 { (0..dims.len()).map(|j| a[j].saturating_sub(b[j]) * dims[j]).sum() };
    let top = q.degrees().max(h.degrees() + 1);
    let sequences: Vec<FourTermSequence> = (0..top)
        .map(|k| {
            let qk = row(q, Some(k));
            let hk = row(&h, k.checked_sub(1));
            FourTermSequence {
                k,
                quartic: (0..dims.len()).map(|j| qk[j] * dims[j]).sum(),
                hyperelliptic: (0..dims.len()).map(|j| hk[j] * dims[j]).sum(),
                kernel_bound: excess(&qk, &hk),
                cokernel_bound: excess(&hk, &qk),
            }
        })
        .collect();
    let six = &sequences[6];
    let lower_bound = six.cokernel_bound;
    let upper_bound = six.hyperelliptic;
    let naive_bound = six.hyperelliptic as i64 - six.quartic as i64;

    let weights = 2 * top;
    let mut euler = vec![0i64; weights + 1];
    let mut equivariant = vec![vec![0i64; dims.len()]; weights + 1];
    for (rep, shift) in [(q, 0usize), (&h, 2usize)] {
        for (i, r) in rep.rows.iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            let w = 2 * i + shift;
            for j in 0..dims.len() {
                euler[w] += sign * (r[j] * dims[j]) as i64;
                equivariant[w][j] += sign * r[j] as i64;
            }
        }
    }
    let euler = IntPoly::from_i64(&euler);

    let mut checks = Report::default();
    checks.push(Check::new(
        "m3 lower bound",
        lower_bound == M3_LOWER_BOUND,
        format!("irreducible-wise {lower_bound}, published {M3_LOWER_BOUND}"),
    ));
    checks.push(Check::new("m3 upper bound", upper_bound == h.dimension(5), format!("dim H^5 = {upper_bound}")));
    checks.push(Check::new(
        "m3 naive bound below equivariant",
        naive_bound <= lower_bound as i64,
        format!("{naive_bound} <= {lower_bound}"),
    ));
    // H^0(M) = H^0(Q) is trivial; H^1(M) = 0 makes H^1(Q) inject into
    // H^0(Hyp) with a trivial one-dimensional cokernel H^2(M).
    let trivial = q.labels.iter().position(|l| l == "1a");
    let low = sequences[0].kernel_bound == 1
        && sequences[0].quartic == 1
        && (0..dims.len()).all(|j| row(q, Some(1))[j] <= row(&h, Some(0))[j])
        && trivial.is_some_and(|t| {
            (0..dims.len()).all(|j| row(&h, Some(0))[j] - row(q, Some(1))[j] == u64::from(j == t))
        });
    checks.push(Check::new("m3 low degrees", low, "H^0 = 1a, H^1 = 0, H^2 = 1a"));
    Ok(M3Report {
        sequences,
        lower_bound,
        published_lower_bound: M3_LOWER_BOUND,
        naive_bound,
        upper_bound,
        euler,
        equivariant_euler: equivariant,
        labels: q.labels.clone(),
        checks,
    })
}

/// A stratum of canonical divisors by zero multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub partition: Vec<usize>,
    /// Partitions whose strata make up the closure: all coarsenings.
    pub closure: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct StrataListing {
    pub strata: Vec<Stratum>,
    /// Spaces identified with projectivized strata.
    pub aliases: Vec<(SpaceId, &'static str)>,
    /// `[Sp(6,2) : S8]`.
    pub hyperelliptic_components: u64,
    /// `[Sp(6,2) : W(E6)]`, half the 56 marked bitangent points.
    pub bitangent_components: u64,
}

/// Whether `fine` refines `coarse`: the parts of `fine` split into groups
/// summing to the parts of `coarse`.
fn refines(fine: &[usize], coarse: &[usize]) -> bool {
    fn fill(parts: &[usize], bins: &mut [usize]) -> bool {
        let Some((&p, rest)) = parts.split_first() else { return bins.iter().all(|&b| b == 0) };
        for i in 0..bins.len() {
            if bins[i] >= p && !bins[..i].contains(&bins[i]) {
                bins[i] -= p;
                let ok = fill(rest, bins);
                bins[i] += p;
                if ok {
                    return true;
                }
            }
        }
        false
    }
    fine.iter().sum::<usize>() == coarse.iter().sum::<usize>() && fill(fine, &mut coarse.to_vec())
}

pub fn strata_registry(ctx: &Context) -> StrataListing {
    let mut parts = partitions(4);
    parts.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let strata = parts
        .iter()
        .map(|p| Stratum { partition: p.clone(), closure: parts.iter().filter(|c| refines(p, c)).cloned().collect() })
        .collect();
    StrataListing {
        strata,
        aliases: vec![
            (SpaceId::QOrd, "P(H[2,1^2])"),
            (SpaceId::QFlx, "P(H[3,1])"),
            (SpaceId::QHfl, "P(C[4],q)"),
            (SpaceId::QOrdBar, "P(closure of H[2,1^2])"),
            (SpaceId::PC22Q, "P(C[2,2],q)"),
            (SpaceId::PC22QBar, "P(closure of C[2,2],q)"),
        ],
        hyperelliptic_components: ctx.sp_info().order / ctx.s8.info.order,
        bitangent_components: ctx.sp_info().order / ctx.parabolic_order,
    }
}
