// dev scratch: find a conflict instance with explicit family tables
use binact::action::BinaryAction;
use binact::extension::{extend_structural, ExtensionError, PartialEquivariantMap};
use binact::group::FiniteGroup;

fn z2_family_action(bits: [bool; 2]) -> BinaryAction {
    // bits[x1]: whether the slot at x1 swaps {0,1}
    let id = vec![vec![0, 1], vec![0, 1]];
    let sw = vec![vec![0, 1], vec![1, 0]];
    let fam: Vec<_> = bits.iter().map(|&b| if b { sw.clone() } else { id.clone() }).collect();
    BinaryAction::from_family(FiniteGroup::cyclic(2), 2, &fam).unwrap()
}

fn main() {
    for sbits in 0..4u8 {
        for tbits in 0..4u8 {
            let src = z2_family_action([sbits & 1 != 0, sbits & 2 != 0]);
            let tgt = z2_family_action([tbits & 1 != 0, tbits & 2 != 0]);
            for p in 0..2usize {
                for v in 0..2usize {
                    let f = PartialEquivariantMap::new(&src, &tgt, &[(p, v)]).unwrap();
                    match extend_structural(&f) {
                        Err(ExtensionError::Conflict(r)) => println!(
                            "CONFLICT src={sbits:02b} tgt={tbits:02b} f({p})={v} point={} labels=({},{}) der1={:?} der2={:?}",
                            r.point, r.first_label, r.second_label, r.first_derivation.len(), r.second_derivation.len()
                        ),
                        Err(ExtensionError::Sm1Violation(_)) => println!("SM1 src={sbits:02b} tgt={tbits:02b} f({p})={v}"),
                        Err(e) => println!("OTHER {e}"),
                        Ok(_) => {}
                    }
                }
            }
        }
    }
}
