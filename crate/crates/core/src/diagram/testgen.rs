use proptest::prelude::*;

use super::{Pass, Role, Sign, VirtualLinkDiagram};

/// Random diagrams with up to six crossings, one to three components.
pub(crate) fn arb_diagram() -> impl Strategy<Value = VirtualLinkDiagram> {
    arb_diagram_upto(6)
}

pub(crate) fn arb_diagram_upto(max: usize) -> impl Strategy<Value = VirtualLinkDiagram> {
    (1usize..max + 1)
        .prop_flat_map(|n| {
            let passes: Vec<(u32, Role)> = (1..=n as u32)
                .flat_map(|c| [(c, Role::Over), (c, Role::Under)])
                .collect();
            (
                Just(passes).prop_shuffle(),
                proptest::collection::vec(any::<bool>(), n),
                0usize..3,
            )
        })
        .prop_map(|(passes, signs, cut)| {
            let passes: Vec<Pass> = passes
                .into_iter()
                .map(|(crossing, role)| Pass { crossing, role })
                .collect();
            let split = if cut > 0 && passes.len() > 2 { passes.len() / 2 } else { passes.len() };
            let mut comps = vec![passes[..split].to_vec()];
            if split < passes.len() {
                comps.push(passes[split..].to_vec());
            }
            if cut == 2 {
                comps.push(vec![]);
            }
            let signs = signs
                .into_iter()
                .enumerate()
                .map(|(i, b)| (i as u32 + 1, if b { Sign::Positive } else { Sign::Negative }))
                .collect();
            VirtualLinkDiagram::new(comps, signs).unwrap()
        })
}
