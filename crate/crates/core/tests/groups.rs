use level2coh::group::{FiniteGroup, GroupStore};
use level2coh::rootsys::*;
use std::sync::Arc;
use std::time::Instant;

#[test]
fn e7_group_structure() {
    let t = Instant::now();
    let e7 = Arc::new(build_root_system(CartanType::E7).unwrap());
    let lg = LatticeGroup::new(e7.clone());
    let gens = (0..7).map(|i| lg.simple_reflection(i)).collect();
    let weyl = GroupStore::enumerate_exact(lg, gens, 2_903_040).unwrap();
    eprintln!("W(E7) {:?}", t.elapsed());
    assert!(minus_identity_membership(&weyl));
    let sp = mod2_symplectic_reduction(e7.clone()).unwrap();
    eprintln!("Sp {:?}", t.elapsed());
    assert_eq!(sp.store.order(), 1_451_520);
    assert_eq!(split_direct_product(&weyl, &sp).unwrap(), 2_903_040);
    eprintln!("split {:?}", t.elapsed());
    let par = parabolic_e6_in_e7(e7.clone(), 6).unwrap();
    let ext = extended_e6_with_inversion(&weyl, &par).unwrap();
    assert_eq!(ext.sigma, weyl.group().minus_identity());
    assert_eq!(ext.store.order(), 103_680);
    let s8 = s8_symplectic_embedding(&sp).unwrap();
    assert_eq!(sp.store.order() / s8.image_order, 36);
    assert_eq!(weyl.order() / par.store.order(), 56);
    eprintln!("all {:?}", t.elapsed());
    let _ = weyl.group().identity();
}

#[test]
fn sp6_and_s8_character_tables() {
    use level2coh::chartab::*;
    let t = Instant::now();
    let e7 = Arc::new(build_root_system(CartanType::E7).unwrap());
    let sp = mod2_symplectic_reduction(e7).unwrap();
    let cc = conjugacy_classes(&sp.store);
    eprintln!("classes {:?}", t.elapsed());
    assert_eq!(cc.info.len(), 30);
    let table = dixon_character_table(&sp.store, &cc).unwrap();
    eprintln!("table {:?}", t.elapsed());
    let mut dims = table.degrees();
    dims.sort();
    assert_eq!(
        dims,
        vec![1, 7, 15, 21, 21, 27, 35, 35, 56, 70, 84, 105, 105, 105, 120, 168, 189, 189, 189, 210, 210, 216, 280, 280, 315, 336, 378, 405, 420, 512]
    );
    let s8 = s8_symplectic_embedding(&sp).unwrap();
    let scc = conjugacy_classes(&s8.perms);
    let st = dixon_character_table(&s8.perms, &scc).unwrap();
    let (mn, mn_classes) = murnaghan_nakayama_table(8);
    let perm_group = *s8.perms.group();
    let column: Vec<usize> = scc
        .reps
        .iter()
        .map(|&r| mn_classes.iter().position(|c| *c == perm_group.cycle_type(r)).unwrap())
        .collect();
    let mut a: Vec<Vec<i64>> = st.irreducibles.iter().map(|c| c.values.clone()).collect();
    let mut b: Vec<Vec<i64>> =
        mn.irreducibles.iter().map(|c| column.iter().map(|&k| c.values[k]).collect()).collect();
    a.sort();
    b.sort();
    assert_eq!(a, b);
    eprintln!("s8 {:?}", t.elapsed());
}
