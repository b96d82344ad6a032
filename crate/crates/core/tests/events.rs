use std::sync::Arc;

use bvengine_core::events::Envelope;
use bvengine_core::finbase::{terminal, z2_discrete, z2_group, FinCategory};
use bvengine_core::prof::Shape;
use bvengine_core::setval::nat_set;

fn env(c: FinCategory) -> Envelope {
    Envelope::new(Arc::new(c)).unwrap()
}

/// All `(a, a')` pairs of the base.
fn pairs(e: &Envelope) -> Vec<(usize, usize)> {
    let n = e.stprof.base().num_objects();
    (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect()
}

#[test]
fn event_shapes_over_z2() {
    let e = env(z2_group());
    let ev = e.event(0, 0).unwrap();
    assert_eq!(ev.a.sizes(), &[2]);
    assert_eq!(ev, e.chu.embed(&e.stprof.intervention(0, 0).unwrap()).unwrap());
    let f = e.faithful(0, 0).unwrap();
    assert_eq!(f.a2.sizes(), &[2]);
    let fo = e.first_order(0).unwrap();
    assert_eq!(fo.a.sizes(), &[2]);
    assert_eq!(fo.a2.sizes(), &[2]);
}

#[test]
fn local_combs_trivial_on_terminal() {
    let e = env(terminal());
    let lc = e.local_combs((0, 0), (0, 0)).unwrap();
    assert_eq!(lc.module.sizes(), &[1]);
}

/// Pairs `(φ, ψ)` of `[C_a, y_b](k) × [C_b, y_a](k)` enumerated from scratch
/// with `nat_set`, kept when both pair to the same element of `1` on every
/// `x ⊗ y`.
fn local_combs_oracle(e: &Envelope, a: (usize, usize), b: (usize, usize), k: usize) -> usize {
    let st = &e.stprof;
    let m = &st.modules;
    let (fa, fb) = (e.faithful(a.0, a.1).unwrap(), e.faithful(b.0, b.1).unwrap());
    let (ca, cb) = (&fa.a, &fb.a);
    let (ya, yb) = (&fa.a2, &fb.a2);
    let phis = nat_set(&ca.functor, &yb.functor.shifted(k), 1_000_000).unwrap();
    let psis = nat_set(&cb.functor, &ya.functor.shifted(k), 1_000_000).unwrap();
    let pair_in = |p: &Arc<bvengine_core::prof::Module>, q: &Arc<bvengine_core::prof::Module>, e1, e2, x, y| {
        let t = m.tensor(p, q).unwrap();
        match &t.shape {
            Shape::Day { day, .. } => day.pair(e1, e2, x, y),
            _ => unreachable!(),
        }
    };
    let opt = st.optic_cat();
    let mut count = 0;
    for phi in &phis {
        for psi in &psis {
            let mut ok = true;
            'outer: for e1 in opt.objects() {
                for e2 in opt.objects() {
                    for x in 0..ca.functor.size(e1) {
                        for y in 0..cb.functor.size(e2) {
                            // s(y, φx) and r(x, ψy), both in 1(k⊗e1⊗e2)
                            let s = fb.r.map.at(
                                opt.tensor_obj(e2, opt.tensor_obj(k, e1)),
                                pair_in(cb, yb, e2, opt.tensor_obj(k, e1), y, phi.at(e1, x)),
                            );
                            let r = fa.r.map.at(
                                opt.tensor_obj(e1, opt.tensor_obj(k, e2)),
                                pair_in(ca, ya, e1, opt.tensor_obj(k, e2), x, psi.at(e2, y)),
                            );
                            if s != r {
                                ok = false;
                                break 'outer;
                            }
                        }
                    }
                }
            }
            if ok {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn local_combs_match_oracle_on_z2() {
    let e = env(z2_group());
    let lc = e.local_combs((0, 0), (0, 0)).unwrap();
    assert_eq!(lc.module.sizes()[0], local_combs_oracle(&e, (0, 0), (0, 0), 0));
    let t = e.chu.tensor(&e.faithful(0, 0).unwrap(), &e.faithful(0, 0).unwrap()).unwrap();
    assert_eq!(t.a2, lc.module);
}

#[test]
fn lemma_par() {
    for c in [terminal(), z2_group()] {
        let e = env(c);
        e.check_lemma_par((0, 0), (0, 0)).unwrap();
    }
    let e = env(z2_discrete());
    let cert = e.check_lemma_par((0, 0), (1, 1)).unwrap();
    assert_eq!(cert.sizes[0].1, cert.sizes[2].1);
    for a in pairs(&e) {
        for b in pairs(&e) {
            e.check_lemma_par(a, b).unwrap();
        }
    }
}

#[test]
fn first_order_collapse() {
    for c in [z2_group(), z2_discrete()] {
        let e = env(c);
        let n = e.stprof.base().num_objects();
        for a in 0..n {
            for b in 0..n {
                let (p, q) = (e.first_order(a).unwrap(), e.first_order(b).unwrap());
                let t = e.chu.tensor(&p, &q).unwrap();
                let s = e.chu.seq(&p, &q).unwrap();
                let r = e.chu.par(&p, &q).unwrap();
                e.certify(&t, &s).unwrap();
                e.certify(&s, &r).unwrap();
                // and the canonical maps themselves are invertible
                let tl = e.chu.tau_l(&p, &q).unwrap();
                assert!(e.chu.inverse(&tl).unwrap().is_some());
                let pl = e.chu.tau_par_l(&p, &q).unwrap();
                assert!(e.chu.inverse(&pl).unwrap().is_some());
            }
        }
    }
}

#[test]
fn supermaps_are_optics() {
    for c in [z2_group(), z2_discrete()] {
        let e = env(c);
        for a in pairs(&e) {
            for b in pairs(&e) {
                let optics = e.classify_supermaps(a, b).unwrap();
                let (pa, pb) = (e.stprof.pair(a.0, a.1), e.stprof.pair(b.0, b.1));
                assert_eq!(optics.len(), e.stprof.optic_cat().hom(pa, pb).len());
            }
        }
    }
    let e = env(z2_group());
    let f = e.faithful(0, 0).unwrap();
    let ms = e.enumerate_supermaps(&f, &f).unwrap();
    assert_eq!(ms.len(), 2);
    assert!(ms.contains(&e.chu.id(&f)));
}

#[test]
fn first_order_maps_are_base_maps() {
    for c in [z2_group(), z2_discrete()] {
        let e = env(c);
        let base = e.stprof.base().clone();
        for a in base.objects() {
            for b in base.objects() {
                let ms = e.enumerate_supermaps(&e.first_order(a).unwrap(), &e.first_order(b).unwrap()).unwrap();
                assert_eq!(ms.len(), base.hom(a, b).len());
            }
        }
    }
}

#[test]
fn maps_out_of_tensor_and_seq_are_combs() {
    let e = env(z2_discrete());
    let st = &e.stprof;
    for a in [(0, 0), (0, 1)] {
        for b in [(0, 0), (1, 1)] {
            let (fa, fb) = (e.faithful(a.0, a.1).unwrap(), e.faithful(b.0, b.1).unwrap());
            let t = e.chu.tensor(&fa, &fb).unwrap();
            let s = e.chu.seq(&fa, &fb).unwrap();
            let lc = e.local_combs(a, b).unwrap();
            let two_hole =
                st.stprof_seq(&st.representable_context(a.0, a.1), &st.representable_context(b.0, b.1)).unwrap();
            assert_eq!(s.a2, two_hole);
            for c in pairs(&e) {
                let fc = e.faithful(c.0, c.1).unwrap();
                let k = st.pair(c.0, c.1);
                assert_eq!(e.enumerate_supermaps(&t, &fc).unwrap().len(), lc.module.functor.size(k));
                assert_eq!(e.enumerate_supermaps(&s, &fc).unwrap().len(), two_hole.functor.size(k));
            }
        }
    }
}

#[test]
fn par_of_events_is_bounded() {
    for c in [terminal(), z2_group(), z2_discrete()] {
        let e = env(c);
        let i = e.stprof.base().unit();
        let b = e.par_bounds((i, i), (i, i)).unwrap();
        b.upper.check().unwrap();
        let names: Vec<_> = b.sizes.iter().map(|(n, _)| n.as_str()).collect();
        assert_eq!(names, ["join", "par", "C_ab"]);
    }
    let e = env(z2_discrete());
    e.par_bounds((0, 1), (1, 0)).unwrap();
}
