use level2coh::lattice::IntPoly;
use level2coh::modspaces::*;
use num_bigint::BigInt;
use std::cell::RefCell;
use std::collections::BTreeMap;
use std::sync::OnceLock;

/// Every space, computed once per test binary.
fn all_spaces() -> &'static BTreeMap<SpaceId, GradedRep> {
    static SPACES: OnceLock<BTreeMap<SpaceId, GradedRep>> = OnceLock::new();
    SPACES.get_or_init(|| {
        let mut p = Pipeline::new(Context::shared().unwrap());
        SpaceId::ALL.into_iter().map(|id| (id, p.space(id).unwrap())).collect()
    })
}

fn space(id: SpaceId) -> &'static GradedRep {
    &all_spaces()[&id]
}

/// Tables whose labels agree among themselves; q_ord and q_ordbar exchange
/// the two 210-dimensional irreducibles relative to these.
const CONSISTENT: [SpaceId; 7] =
    [SpaceId::QFlx, SpaceId::QBtg, SpaceId::QHfl, SpaceId::QBtgBar, SpaceId::Hyp3, SpaceId::PC22Q, SpaceId::PC22QBar];

fn consistent_bijection(refs: &ReferenceTables) -> BijectionSearch {
    let pairs: Vec<(&str, &GradedRep, &GradedRep)> =
        CONSISTENT.iter().map(|&id| (id.slug(), space(id), refs.for_space(id).unwrap())).collect();
    find_global_bijection(&pairs).unwrap()
}

fn shift(p: &IntPoly) -> IntPoly {
    p * &IntPoly::monomial(BigInt::from(1), 1)
}

#[test]
fn every_space_decomposes_with_nonnegative_multiplicities() {
    for (id, rep) in all_spaces() {
        assert!(rep.degrees() > 0, "{id}");
        assert_eq!(rep.dims.len(), 30, "{id}");
    }
    // A virtual character is rejected rather than clamped.
    let ctx = Context::shared().unwrap();
    let virtual_char = &ctx.irreducible(0) - &ctx.irreducible(1);
    let err = GradedRep::from_class_functions(&[ctx.irreducible(0), virtual_char], &ctx.table).unwrap_err();
    assert!(matches!(err, ModSpaceError::Negative { degree: 1, .. }), "{err}");
}

#[test]
fn one_bijection_reconciles_the_consistent_tables() {
    let refs = ReferenceTables::shipped().unwrap();
    let search = consistent_bijection(&refs);
    assert_eq!(search.candidates, 576);
    assert_eq!(search.perfect, 1);
    assert_eq!(search.mismatches, 0);
}

#[test]
fn ordinary_point_tables_differ_only_by_the_210_exchange() {
    let refs = ReferenceTables::shipped().unwrap();
    let bij = consistent_bijection(&refs).best;
    for id in [SpaceId::QOrd, SpaceId::QOrdBar] {
        let reference = refs.for_space(id).unwrap();
        let cells = mismatches(id.slug(), space(id), reference, &bij);
        assert_eq!(cells.len(), 12, "{id}");
        assert!(cells.iter().all(|m| m.label.starts_with("210")), "{id}");
    }
    // Exchanging the two columns of the reference q_ord removes every
    // mismatch there, and the reference closure is derived from it.
    let reference = refs.for_space(SpaceId::QOrd).unwrap();
    let a = reference.labels.iter().position(|l| l == "210a").unwrap();
    let b = reference.labels.iter().position(|l| l == "210b").unwrap();
    let mut swapped = reference.clone();
    for row in &mut swapped.rows {
        row.swap(a, b);
    }
    assert!(mismatches("q_ord", space(SpaceId::QOrd), &swapped, &bij).is_empty());
    let flx = refs.for_space(SpaceId::QFlx).unwrap();
    assert_eq!(&closure_subtract(reference, flx).unwrap(), refs.for_space(SpaceId::QOrdBar).unwrap());
    let repaired = closure_subtract(&swapped, flx).unwrap();
    assert!(mismatches("q_ordbar", space(SpaceId::QOrdBar), &repaired, &bij).is_empty());

    // H^k(Q[2]) injects into H^k(Q_ordbar[2]). The computed closure satisfies
    // this in every cell; the reference closure lacks the 210a of H^2(Q[2]).
    let q2 = refs.table("q2").unwrap();
    let below = |r: &GradedRep| -> Vec<(usize, String)> {
        (0..q2.degrees())
            .flat_map(|i| (0..30).map(move |j| (i, j)))
            .filter(|&(i, j)| r.rows.get(i).map_or(0, |row| row[j]) < q2.rows[i][j])
            .map(|(i, j)| (i, q2.labels[j].clone()))
            .collect()
    };
    let computed = bij.to_reference(space(SpaceId::QOrdBar), &q2.labels);
    assert!(below(&computed).is_empty());
    assert_eq!(below(refs.for_space(SpaceId::QOrdBar).unwrap()), [(2, "210a".to_string())]);
}

#[test]
fn poincare_polynomials_equal_table_row_sums() {
    let refs = ReferenceTables::shipped().unwrap();
    for id in SpaceId::with_reference() {
        assert_eq!(space(id).poincare(), refs.for_space(id).unwrap().poincare(), "{id}");
    }
}

#[test]
fn closure_identity_holds_for_computed_and_reference_tables() {
    let refs = ReferenceTables::shipped().unwrap();
    for (open, closure, boundary) in [
        (SpaceId::QOrd, SpaceId::QOrdBar, SpaceId::QFlx),
        (SpaceId::QBtg, SpaceId::QBtgBar, SpaceId::QHfl),
        (SpaceId::PC22Q, SpaceId::PC22QBar, SpaceId::QHfl),
    ] {
        let computed = &space(closure).poincare() + &shift(&space(boundary).poincare());
        assert_eq!(space(open).poincare(), computed, "{open}");
        let r = |id| refs.for_space(id).unwrap().poincare();
        assert_eq!(r(open), &r(closure) + &shift(&r(boundary)), "{open}");
    }
}

#[test]
fn stated_polynomials_differ_from_rows_exactly_at_two_coefficients() {
    let refs = ReferenceTables::shipped().unwrap();
    let bij = consistent_bijection(&refs).best;
    let mut failing = Vec::new();
    for id in SpaceId::with_reference() {
        for c in verify_space(id, space(id), &refs, &bij).unwrap().failures() {
            failing.push(c.name.clone());
        }
    }
    assert_eq!(failing, ["q-ord table", "q-ord Poincare vs stated", "q-flx Poincare vs stated", "q-ordbar table"]);
}

#[test]
fn strata_components_match_degree_zero() {
    let ctx = Context::shared().unwrap();
    let listing = strata_registry(ctx);
    assert_eq!(listing.hyperelliptic_components, 36);
    assert_eq!(listing.bitangent_components, 28);
    assert_eq!(space(SpaceId::Hyp3).dimension(0), 36);
    assert_eq!(space(SpaceId::QBtg).dimension(0), 28);
    assert_eq!(listing.strata.len(), 5);
    assert_eq!(listing.strata[0].partition, vec![1, 1, 1, 1]);
    assert_eq!(listing.strata[0].closure.len(), 5);
    assert_eq!(listing.strata[4].closure, vec![vec![4]]);
}

#[test]
fn bundles_add_a_shifted_copy_of_the_base() {
    for id in SpaceId::ALL {
        if let Recipe::Bundle { base, .. } = id.recipe() {
            let (total, base) = (space(id), space(base));
            assert_eq!(total.degrees(), base.degrees() + 2, "{id}");
            let p = &base.poincare() * &IntPoly::from_i64(&[1, 0, 1]);
            assert_eq!(total.poincare(), p, "{id}");
        }
    }
    assert_eq!(space(SpaceId::Hyp31).dimension(0), 36);
}

#[test]
fn q2_checks_pass() {
    let ctx = Context::shared().unwrap();
    let refs = ReferenceTables::shipped().unwrap();
    let bij = consistent_bijection(&refs).best;
    let report = q2_checks(ctx, &refs, space(SpaceId::QFlx), space(SpaceId::PC22QBar), &bij).unwrap();
    assert_eq!(report.checks.len(), 3);
    assert!(report.passed(), "{report}");
}

#[test]
fn m3_bounds() {
    let refs = ReferenceTables::shipped().unwrap();
    let bij = consistent_bijection(&refs).best;
    let m3 = m3_analysis(&refs, space(SpaceId::Hyp3), &bij).unwrap();
    assert!(m3.checks.passed(), "{}", m3.checks);
    assert_eq!(m3.lower_bound, 7680);
    assert_eq!(m3.upper_bound, 25920);
    // Euler characteristic of Q[2] plus u^2 times that of Hyp3.
    let q2 = refs.table("q2").unwrap();
    let eul = |r: &GradedRep| {
        let mut c = vec![0i64; 2 * r.degrees()];
        for i in 0..r.degrees() {
            c[2 * i] = if i % 2 == 0 { 1 } else { -1 } * r.dimension(i) as i64;
        }
        IntPoly::from_i64(&c)
    };
    let expected = &eul(q2) + &(&eul(space(SpaceId::Hyp3)) * &IntPoly::from_i64(&[0, 0, 1]));
    assert_eq!(m3.euler, expected);
    // The class-function refinement sums to the numeric one.
    for (w, row) in m3.equivariant_euler.iter().enumerate() {
        let total: i64 = row.iter().zip(&q2.dims).map(|(m, &d)| m * d as i64).sum();
        assert_eq!(BigInt::from(total), m3.euler.coeff(w));
    }
}

#[test]
fn corrupted_reference_cell_is_pinpointed() {
    let refs = ReferenceTables::shipped().unwrap();
    let bij = consistent_bijection(&refs).best;
    let dir = tempfile::tempdir().unwrap();
    for (name, table) in &refs.tables {
        let mut text = table.to_csv();
        if name == "hyp3" {
            let mut t = table.clone();
            t.rows[3][5] += 1;
            text = t.to_csv();
        }
        std::fs::write(dir.path().join(format!("{name}.csv")), text).unwrap();
    }
    let corrupted = ReferenceTables::from_dir(dir.path()).unwrap();
    let report = verify_space(SpaceId::Hyp3, space(SpaceId::Hyp3), &corrupted, &bij).unwrap();
    let failure = report.failures().next().expect("corruption is detected");
    let label = &refs.table("hyp3").unwrap().labels[5];
    let witness = format!("hyp3 H^3 phi_{label}: reference ");
    assert!(failure.name == "hyp3 table" && failure.detail.contains(&witness), "{failure}");
    let names: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
    assert_eq!(names, ["hyp3 table", "hyp3 Poincare vs table rows"]);
}

#[test]
fn exported_tables_verify_against_themselves() {
    let refs = ReferenceTables::shipped().unwrap();
    for id in SpaceId::ALL {
        let rep = space(id);
        let back = GradedRep::from_csv(&rep.to_csv()).unwrap();
        assert_eq!(&back, rep, "{id}");
        let m = mismatches(id.slug(), rep, &back, &LabelBijection::identity(30));
        assert!(m.is_empty(), "{id}");
    }
    assert!(refs.tables.values().all(|t| &GradedRep::from_csv(&t.to_csv()).unwrap() == t));
}

#[derive(Default)]
struct MemoryStore {
    entries: RefCell<BTreeMap<String, Traces>>,
    loads: RefCell<usize>,
}

impl ArtifactStore for MemoryStore {
    fn load(&self, key: &ArtifactKey) -> Result<Option<Traces>, ModSpaceError> {
        *self.loads.borrow_mut() += 1;
        Ok(self.entries.borrow().get(&key.material).cloned())
    }
    fn save(&self, key: &ArtifactKey, traces: &Traces) -> Result<(), ModSpaceError> {
        self.entries.borrow_mut().insert(key.material.clone(), traces.clone());
        Ok(())
    }
}

#[test]
fn stored_artifacts_are_reused_and_shape_checked() {
    let ctx = Context::shared().unwrap();
    let store = MemoryStore::default();
    let cold = Pipeline::with_store(ctx, &store).space(SpaceId::Hyp3).unwrap();
    assert_eq!(store.entries.borrow().len(), 1);
    let warm = Pipeline::with_store(ctx, &store).space(SpaceId::Hyp3).unwrap();
    assert_eq!(cold, warm);
    assert_eq!(cold.to_csv(), space(SpaceId::Hyp3).to_csv());
    assert_eq!(*store.loads.borrow(), 2);

    for traces in store.entries.borrow_mut().values_mut() {
        traces[0].pop();
    }
    let err = Pipeline::with_store(ctx, &store).space(SpaceId::Hyp3).unwrap_err();
    assert!(matches!(err, ModSpaceError::Cache(_)), "{err}");
}

#[test]
fn keys_separate_artifacts() {
    let ctx = Context::shared().unwrap();
    let keys: Vec<ArtifactKey> = BaseArtifact::ALL.iter().map(|a| a.key(ctx)).collect();
    for (i, a) in keys.iter().enumerate() {
        for b in &keys[i + 1..] {
            assert_ne!(a.material, b.material);
        }
        assert_eq!(a, &BaseArtifact::ALL[i].key(ctx));
    }
}
