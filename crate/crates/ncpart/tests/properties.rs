use std::sync::OnceLock;

use proptest::prelude::*;

use ncpart::complex::{Chamber, ChamberComplex, Tag};
use ncpart::linalg::{Embedding, F2Subspace, Subspace};
use ncpart::ncp::{set_partitions, NcLattice, Partition};
use ncpart::perm::{CoxType, Group};
use ncpart::trees::{all_labelings, spanning_trees, Forest, LabeledTree};

fn groups() -> Vec<Group> {
    let mut v: Vec<Group> = (2..=7).map(Group::a).collect();
    v.extend((2..=5).map(Group::b));
    v.extend((3..=5).map(Group::d));
    v
}

fn lattice(g: Group) -> &'static NcLattice {
    static CACHE: OnceLock<Vec<(Group, NcLattice)>> = OnceLock::new();
    let all = CACHE.get_or_init(|| groups().into_iter().filter(|g| g.n <= 6).map(|g| (g, NcLattice::build(g))).collect());
    &all.iter().find(|(h, _)| *h == g).expect("cached group").1
}

fn complex(tag: Tag) -> &'static ChamberComplex {
    static NCP: OnceLock<ChamberComplex> = OnceLock::new();
    static PN: OnceLock<ChamberComplex> = OnceLock::new();
    match tag {
        Tag::Ncp => NCP.get_or_init(|| ChamberComplex::build(Tag::Ncp, 6)),
        _ => PN.get_or_init(|| ChamberComplex::build(Tag::Pn, 6)),
    }
}

fn arb_group() -> impl Strategy<Value = Group> {
    proptest::sample::select(groups())
}

fn arb_lattice_group() -> impl Strategy<Value = Group> {
    proptest::sample::select(groups().into_iter().filter(|g| g.n <= 6).collect::<Vec<_>>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn elements_round_trip(g in arb_group(), seed in any::<prop::sample::Index>()) {
        let els = g.elements();
        let w = &els[seed.index(els.len())];
        let s = g.fmt_elem(w);
        prop_assert_eq!(&g.parse(&s).unwrap(), w, "{}", s);
    }

    #[test]
    fn nc_partitions_round_trip(g in arb_lattice_group(), seed in any::<prop::sample::Index>()) {
        let l = lattice(g);
        let i = seed.index(l.len());
        let pi = l.partition(i);
        prop_assert_eq!(Partition::parse(g.ty, g.n, &pi.to_string()).unwrap(), pi.clone());
        prop_assert_eq!(l.parse_elem(&l.fmt_elem(i)).unwrap(), i);
    }

    #[test]
    fn set_partitions_round_trip(n in 1usize..=7, seed in any::<prop::sample::Index>()) {
        let all = set_partitions(n);
        let pi = &all[seed.index(all.len())];
        prop_assert_eq!(&Partition::parse(CoxType::A, n, &pi.to_string()).unwrap(), pi);
    }

    #[test]
    fn trees_round_trip(n in 2usize..=6, seed in any::<prop::sample::Index>(), lab in any::<prop::sample::Index>()) {
        let ts = spanning_trees(n);
        let t = &ts[seed.index(ts.len())];
        prop_assert_eq!(&Forest::parse(n, &t.to_string()).unwrap(), t);
        let ls: Vec<LabeledTree> = all_labelings(t).collect();
        let l = &ls[lab.index(ls.len())];
        prop_assert_eq!(&LabeledTree::parse(n, &l.to_string()).unwrap(), l);
    }

    #[test]
    fn subspaces_round_trip(m in 1usize..=6, vecs in proptest::collection::vec(1u32..64, 0..4)) {
        let u = F2Subspace::span(m, vecs.iter().map(|v| v & ((1 << m) - 1)));
        prop_assert_eq!(F2Subspace::parse(m, &u.to_string()).unwrap(), u);
        let s = u.to_subspace();
        prop_assert_eq!(Subspace::parse(2, m, &s.to_string()).unwrap(), s);
    }

    #[test]
    fn chambers_round_trip(seed in any::<prop::sample::Index>()) {
        let cx = complex(Tag::Pn);
        let c = cx.chamber(seed.index(cx.len()));
        prop_assert_eq!(Chamber::parse(6, &c.to_string()).unwrap(), c.clone());
        if let Some(word) = c.to_word() {
            prop_assert_eq!(Chamber::from_word(6, &word).unwrap(), c);
        }
    }

    #[test]
    fn distances_are_monotone_at_n6(a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let (ncp, pn) = (complex(Tag::Ncp), complex(Tag::Pn));
        let (c, d) = (ncp.chamber(a.index(ncp.len())), ncp.chamber(b.index(ncp.len())));
        let dn = ncp.distance(ncp.index_of(&c).unwrap(), ncp.index_of(&d).unwrap());
        let dp = pn.distance(pn.index_of(&c).unwrap(), pn.index_of(&d).unwrap());
        prop_assert!(dn >= dp);
        prop_assert_eq!(dp, c.building_distance(&d));
    }

    #[test]
    fn pn_distance_is_building_distance_at_n6(a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let pn = complex(Tag::Pn);
        let (i, j) = (a.index(pn.len()), b.index(pn.len()));
        prop_assert_eq!(pn.distance(i, j), pn.chamber(i).building_distance(&pn.chamber(j)));
    }

    #[test]
    fn lattice_axioms(g in arb_lattice_group(), x in any::<prop::sample::Index>(), y in any::<prop::sample::Index>(), z in any::<prop::sample::Index>()) {
        let l = lattice(g);
        let (x, y, z) = (x.index(l.len()), y.index(l.len()), z.index(l.len()));
        prop_assert_eq!(l.join(x, y), l.join(y, x));
        prop_assert_eq!(l.meet(x, y), l.meet(y, x));
        prop_assert_eq!(l.join(x, x), x);
        prop_assert_eq!(l.join(x, l.meet(x, y)), x);
        prop_assert_eq!(l.meet(x, l.join(x, y)), x);
        prop_assert_eq!(l.join(l.join(x, y), z), l.join(x, l.join(y, z)));
        prop_assert_eq!(l.le(x, y), l.join(x, y) == y);
        prop_assert_eq!(l.rank(l.kreweras(x)), l.max_rank() - l.rank(x));
    }

    #[test]
    fn kreweras_squared_is_conjugation(g in arb_lattice_group(), x in any::<prop::sample::Index>()) {
        let l = lattice(g);
        let i = x.index(l.len());
        let w = l.element(i);
        let c = l.coxeter_element();
        prop_assert_eq!(l.element(l.kreweras(l.kreweras(i))), &w.conjugate_by(&c.inverse()));
        let h = g.coxeter_number();
        let mut j = i;
        for _ in 0..2 * h {
            j = l.kreweras(j);
        }
        prop_assert_eq!(j, i);
    }

    #[test]
    fn embedding_is_join_of_letters(g in arb_lattice_group(), x in any::<prop::sample::Index>()) {
        let l = lattice(g);
        let p = if g.ty == CoxType::A { 2 } else { 3 };
        let emb = Embedding::new(g, p).unwrap();
        let w = l.element(x.index(l.len()));
        let joined = g
            .some_reduced_word(w)
            .iter()
            .fold(Subspace::zero(p, emb.ambient()), |acc, t| acc.sum(&emb.embed(t)).unwrap());
        prop_assert_eq!(joined, emb.embed(w));
    }
}
