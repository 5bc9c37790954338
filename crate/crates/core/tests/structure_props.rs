mod common;

use posetcausal::blockmat::{compressed_product, embed, project, structured_inverse, structured_multiply, BlockMatrix};
use posetcausal::poset::{DerivedKind, NodeSet};
use posetcausal::random::{random_partition, random_structured};
use posetcausal::rational::int;
use posetcausal::{Matrix, Partition, Poset};
use proptest::prelude::*;

#[derive(Debug)]
struct Instance {
    poset: Poset,
    n: Partition,
    g: BlockMatrix,
    h: BlockMatrix,
}

fn instance() -> impl Strategy<Value = Instance> {
    (common::poset(5), any::<u64>()).prop_map(|(poset, seed)| {
        let mut rng = common::rng(seed);
        let n = random_partition(&mut rng, poset.size(), 0, 3);
        let g = random_structured(&mut rng, &poset, &n, &n, 3, 0.8);
        let h = random_structured(&mut rng, &poset, &n, &n, 3, 0.8);
        Instance {
            g: BlockMatrix::new(g, n.clone(), n.clone()).unwrap(),
            h: BlockMatrix::new(h, n.clone(), n.clone()).unwrap(),
            poset,
            n,
        }
    })
}

fn shifted(m: &BlockMatrix, shift: i64) -> BlockMatrix {
    let n = m.row_partition().clone();
    let entries = m.entries().add(&Matrix::identity(n.total()).scale(&int(shift))).unwrap();
    BlockMatrix::new(entries, n.clone(), n).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn products_stay_structured(inst in instance()) {
        let gh = structured_multiply(&inst.g, &inst.h, &inst.poset).unwrap();
        prop_assert!(gh.is_incident(&inst.poset).unwrap());
    }

    #[test]
    fn inverses_stay_structured(inst in instance(), shift in 20i64..40) {
        let k = shifted(&inst.g, shift);
        // diagonal blocks are diagonally dominant, so K is invertible
        let inv = structured_inverse(&k, &inst.poset).unwrap();
        prop_assert!(inv.is_incident(&inst.poset).unwrap());
        prop_assert_eq!(k.entries().mul(inv.entries()).unwrap(), Matrix::identity(inst.n.total()));
    }

    #[test]
    fn compression_identity(inst in instance(), qmask in any::<u8>(), smask in any::<u8>(), extra in any::<u8>()) {
        let p = inst.poset.size();
        let q: NodeSet = (0..p).filter(|k| qmask >> k & 1 == 1).collect();
        let s: NodeSet = (0..p).filter(|k| smask >> k & 1 == 1).collect();
        let down = inst.poset.derived_set(&s, DerivedKind::Down).unwrap();
        let r: NodeSet = down.iter().copied().chain((0..p).filter(|k| extra >> k & 1 == 1)).collect();
        let full = inst.g.mul(&inst.h).unwrap().compress(&q, &s);
        prop_assert_eq!(compressed_product(&inst.g, &inst.h, &inst.poset, &q, &s, Some(&r)).unwrap(), full);
    }

    #[test]
    fn down_sets_are_invariant(inst in instance(), smask in any::<u8>(), k in 0u32..4) {
        // H^k I(:, ↓S) = I(:, ↓S) H(↓S, ↓S)^k
        let p = inst.poset.size();
        let s: NodeSet = (0..p).filter(|k| smask >> k & 1 == 1).collect();
        let down = inst.poset.derived_set(&s, DerivedKind::Down).unwrap();
        let e = embed(&inst.n, &down);
        let hk = inst.h.entries().pow(k).unwrap();
        let local = inst.h.compress(&down, &down).entries().pow(k).unwrap();
        prop_assert_eq!(hk.mul(e.entries()).unwrap(), e.entries().mul(&local).unwrap());
        // I(i, ↓i) H(↓i, i) = H_ii
        for i in 0..p {
            let di: NodeSet = inst.poset.down(i).into_iter().collect();
            let one = NodeSet::from([i]);
            let col = inst.h.compress(&di, &one);
            let head = project(&inst.n, &one).compress(&one, &di);
            let picked = head.mul(&col).unwrap();
            prop_assert_eq!(picked.entries(), &inst.h.block(i, i));
        }
    }

    #[test]
    fn transpose_is_structured_for_dual(inst in instance()) {
        prop_assert!(inst.g.transpose().is_incident(&inst.poset.dual()).unwrap());
    }
}
