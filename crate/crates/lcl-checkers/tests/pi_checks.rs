//! The composed two-sided problem on a hand-checkable instance: a one-state
//! machine that halts immediately, a 4-row aliased grid, and a 4x2 carrier.

use std::collections::HashMap;

use graph_core::{vocab, Label, LabeledGraph, NodeId};
use lcl_checkers::*;
use structures::{attach_gadgets, FamilyG, FamilyParams};
use tm_engine::{run, transcript_grid, TuringMachine};

fn tiny() -> (TuringMachine, FamilyG, Vec<Vec<Label>>) {
    let m = TuringMachine::new(1, 0, &[0]);
    let f = FamilyG::build(FamilyParams { l_ag: 2, w_ag: 1, l_sag: 2, lp_sag: 1 });
    let r = run(&m, &[1, 0], 8);
    assert!(r.complete);
    let cells = transcript_grid(&r, 4, 2).unwrap();
    (m, f, cells)
}

/// The transcript's output column holds #L, 1, 0, #R top to bottom.
fn honest_bit(r: u32, _c: u32) -> u8 {
    u8::from(r == 1)
}

fn honest_outputs(f: &FamilyG) -> HashMap<NodeId, Label> {
    HashMap::from([
        (f.ag.grid_id(0, 0), vocab::bit_vote(1, false)),
        (f.ag.grid_id(1, 0), vocab::bit_vote(1, true)),
        (f.ag.grid_id(2, 0), vocab::bit_vote(0, true)),
        (f.ag.grid_id(3, 0), vocab::bit_vote(1, false)),
        (f.ag.tree_id(0, 1, 0), vocab::vote(true)),
        (f.ag.tree_id(0, 1, 1), vocab::vote(true)),
        (f.ag.tree_id(0, 0, 0), vocab::vote(true)),
    ])
}

fn apply(g: &LabeledGraph, outs: &HashMap<NodeId, Label>) -> LabeledGraph {
    g.with_outputs(|v| outs.get(&v).cloned(), |_, _| None)
}

#[test]
fn echoing_the_transcript_is_accepted() {
    let (m, f, cells) = tiny();
    let inst = f.instance(&cells, |_| false, honest_bit);
    assert_eq!(classify_pi(&inst, &m), Possibility::Echo);

    let labeled = apply(&inst, &honest_outputs(&f));
    let report = check_pi(&labeled, &m);
    assert!(report.ok(), "violations: {:?}", report.sample);
}

#[test]
fn named_rules_fire_on_broken_verdicts() {
    let (m, f, cells) = tiny();
    let inst = f.instance(&cells, |_| false, honest_bit);
    let fire = |patch: Vec<(NodeId, Label)>, at: NodeId, rule: &str| {
        let mut outs = honest_outputs(&f);
        for (v, l) in patch {
            outs.insert(v, l);
        }
        let r = check_pi(&apply(&inst, &outs), &m);
        assert!(
            r.rules_at(at).contains(&rule),
            "wanted {rule} at {at}, got {:?}",
            r.sample
        );
    };

    // a middle row denying its own echo
    let r1 = f.ag.grid_id(1, 0);
    fire(vec![(r1, vocab::bit_vote(1, false))], r1, "pi.connect-echo");
    // a border claiming YES
    let r0 = f.ag.grid_id(0, 0);
    fire(vec![(r0, vocab::bit_vote(1, true))], r0, "pi.connect-border");
    // the root denying a child's YES
    let root = f.ag.tree_id(0, 0, 0);
    fire(vec![(root, vocab::vote(false))], root, "pi.root-yes");
    // an internal node contradicting its children
    let mid = f.ag.tree_id(0, 1, 0);
    fire(vec![(mid, vocab::vote(false))], mid, "pi.vote");
    // silence is not a verdict
    let mut outs = honest_outputs(&f);
    outs.remove(&root);
    let r = check_pi(&apply(&inst, &outs), &m);
    assert!(r.rules_at(root).contains(&"pi.must-decide"));
    // grid vocabulary on a tree node
    fire(vec![(mid, vocab::bit_vote(1, true))], mid, "pi.output");
    // an unprovoked error verdict leaks into the projected constraint system
    fire(vec![(r1, vocab::err())], r1, "badag.err-iff");
}

#[test]
fn lying_about_the_input_frees_the_row() {
    let (m, f, cells) = tiny();
    // claimed input 0 on row 1 where the transcript says 1
    let inst = f.instance(&cells, |_| false, |_, _| 0);
    assert_eq!(classify_pi(&inst, &m), Possibility::InputLie);

    let mut outs = honest_outputs(&f);
    outs.insert(f.ag.grid_id(1, 0), vocab::bit_vote(0, true));
    let report = check_pi(&apply(&inst, &outs), &m);
    assert!(report.ok(), "violations: {:?}", report.sample);

    // the freed row must still answer YES
    outs.insert(f.ag.grid_id(1, 0), vocab::bit_vote(0, false));
    let r = check_pi(&apply(&inst, &outs), &m);
    assert!(r.rules_at(f.ag.grid_id(1, 0)).contains(&"pi.connect-wrong-input"));
}

#[test]
fn marked_carrier_forces_yes() {
    let (m, f, cells) = tiny();
    let marked_satm = f.satm_node(f.sag.bottom_id(0, 1));
    let inst = f.instance(&cells, |v| v == marked_satm, honest_bit);
    assert_eq!(classify_pi(&inst, &m), Possibility::CarrierInvalid);

    let mut outs = honest_outputs(&f);
    outs.insert(marked_satm, vocab::err());
    outs.insert(f.ag.grid_id(0, 0), vocab::bit_vote(1, true));
    let report = check_pi(&apply(&inst, &outs), &m);
    assert!(report.ok(), "violations: {:?}", report.sample);

    // the disqualified row may not answer NO
    outs.insert(f.ag.grid_id(0, 0), vocab::bit_vote(1, false));
    let r = check_pi(&apply(&inst, &outs), &m);
    assert!(r.rules_at(f.ag.grid_id(0, 0)).contains(&"pi.connect-forced-yes"));

    // and the mark must be flagged on the carrier side
    outs.insert(f.ag.grid_id(0, 0), vocab::bit_vote(1, true));
    outs.remove(&marked_satm);
    let r = check_pi(&apply(&inst, &outs), &m);
    assert!(r.rules_at(marked_satm).contains(&"badsag.err-iff"));
}

#[test]
fn carrier_nodes_answer_in_carrier_vocabulary() {
    let (m, f, cells) = tiny();
    let inst = f.instance(&cells, |_| false, honest_bit);
    let stray = f.satm_node(f.sag.side_id(0, 0));
    let mut outs = honest_outputs(&f);
    outs.insert(stray, vocab::vote(true));
    let r = check_pi(&apply(&inst, &outs), &m);
    assert!(r.rules_at(stray).contains(&"badsag.output"));
}

#[test]
fn two_row_family_admits_no_silent_carrier_labeling() {
    let m = TuringMachine::new(1, 0, &[0]);
    let f = FamilyG::build(FamilyParams { l_ag: 1, w_ag: 1, l_sag: 2, lp_sag: 1 });
    let r = run(&m, &[1, 0], 8);
    let cells = transcript_grid(&r, 4, 2).unwrap();
    let inst = f.instance(&cells, |_| false, |r, _| u8::from(r == 1));

    // both grid rows are borders pinned to NO, yet the root must vote YES
    let nodes = [f.ag.grid_id(0, 0), f.ag.grid_id(1, 0), f.ag.tree_id(0, 0, 0)];
    let options: Vec<Option<Label>> = {
        let mut o: Vec<Option<Label>> = vec![None, Some(vocab::err())];
        for d in ["P", "CR", "L", "R"] {
            o.push(Some(vocab::colerr_ptr(d)));
        }
        for yes in [false, true] {
            o.push(Some(vocab::vote(yes)));
            for b in [0, 1] {
                o.push(Some(vocab::bit_vote(b, yes)));
            }
        }
        o
    };
    let k = options.len();
    for pick in 0..k * k * k {
        let outs: HashMap<NodeId, Label> = nodes
            .iter()
            .enumerate()
            .filter_map(|(i, &v)| {
                options[pick / k.pow(i as u32) % k].clone().map(|l| (v, l))
            })
            .collect();
        assert!(
            !check_pi(&apply(&inst, &outs), &m).ok(),
            "accepted: {outs:?}"
        );
    }
}

#[test]
fn gadgets_pin_the_yes_bits() {
    let (m, f, cells) = tiny();
    let inst = f.instance(&cells, |_| false, honest_bit);
    let labeled = apply(&inst, &honest_outputs(&f));

    let good = attach_gadgets(
        &labeled,
        &[(f.ag.grid_id(1, 0), 1), (f.ag.grid_id(2, 0), 0)],
    );
    let report = check_pi2(&good, &m);
    assert!(report.ok(), "violations: {:?}", report.sample);
    // gadgets are foreign to the ungadgeted problem
    assert!(!check_pi(&good, &m).ok());

    // a YES verdict whose gadget carves the other bit
    let bad = attach_gadgets(
        &labeled,
        &[(f.ag.grid_id(1, 0), 0), (f.ag.grid_id(2, 0), 0)],
    );
    let r = check_pi2(&bad, &m);
    assert!(r.rules_at(f.ag.grid_id(1, 0)).contains(&"pi2.gadget-bit"));

    // a YES verdict with no gadget at all
    let r = check_pi2(&labeled, &m);
    assert!(r.rules_at(f.ag.grid_id(1, 0)).contains(&"pi2.gadget-bit"));

    // gadget nodes stay silent
    let chatty = good.with_outputs(
        |v| {
            if v == f.graph.n() {
                Some(vocab::err())
            } else {
                good.node_output(v).cloned()
            }
        },
        |_, _| None,
    );
    let r = check_pi2(&chatty, &m);
    assert!(r.rules_at(f.graph.n()).contains(&"pi2.gadget-output"));
}
