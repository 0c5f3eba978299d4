//! Output-side semantics of the error-reporting problems: marks force error
//! labels, clean nodes stay silent, and pointer chains obey the leg
//! discipline.

use std::collections::HashMap;

use graph_core::{vocab, Label, LabelSite, LabeledGraph, NodeId};
use lcl_checkers::*;
use structures::{attach_gadgets, AliasedGrid, NodeKey, Sag, TreeLike};
use tm_engine::{flip_machine, run};

fn with_node_outputs(g: &LabeledGraph, outs: &HashMap<NodeId, Label>) -> LabeledGraph {
    g.with_outputs(|v| outs.get(&v).cloned(), |_, _| None)
}

// ---- layered trees ----

#[test]
fn marked_tree_demands_an_error() {
    let t = TreeLike::build(2);
    let marked = TreeLike::id(2, 3);
    let inst = t.marked_instance(&[marked]);

    let silent = check_bad_tree(&inst);
    assert!(!silent.ok());
    assert!(silent.rules_at(marked).contains(&"badtree.err-iff"));

    let mut outs = HashMap::from([(marked, vocab::err())]);
    assert!(check_bad_tree(&with_node_outputs(&inst, &outs)).ok());

    // an error where nothing is wrong is also rejected
    outs.insert(TreeLike::id(1, 0), vocab::err());
    let over = check_bad_tree(&with_node_outputs(&inst, &outs));
    assert!(over.rules_at(TreeLike::id(1, 0)).contains(&"badtree.err-iff"));
}

#[test]
fn tree_pointer_chains() {
    let t = TreeLike::build(2);
    let marked = TreeLike::id(2, 3);
    let inst = t.marked_instance(&[marked]);

    // along the marked node's layer and down through ancestors
    let outs = HashMap::from([
        (marked, vocab::err()),
        (TreeLike::id(2, 2), vocab::ptr_node("R")),
        (TreeLike::id(2, 1), vocab::ptr_node("R")),
        (TreeLike::id(2, 0), vocab::ptr_node("R")),
        (TreeLike::id(1, 1), vocab::ptr_node("CR")),
        (TreeLike::id(0, 0), vocab::ptr_node("CR")),
    ]);
    assert!(check_bad_tree(&with_node_outputs(&inst, &outs)).ok());

    // a layer pointer may not continue into a child pointer
    let bad = HashMap::from([
        (marked, vocab::err()),
        (TreeLike::id(1, 1), vocab::ptr_node("CR")),
        (TreeLike::id(1, 0), vocab::ptr_node("R")),
    ]);
    let r = check_bad_tree(&with_node_outputs(&inst, &bad));
    assert!(r.rules_at(TreeLike::id(1, 0)).contains(&"badtree.chain"));

    // a pointer into a silent node dangles
    let dangling = HashMap::from([
        (marked, vocab::err()),
        (TreeLike::id(2, 0), vocab::ptr_node("P")),
    ]);
    let r = check_bad_tree(&with_node_outputs(&inst, &dangling));
    assert!(r.rules_at(TreeLike::id(2, 0)).contains(&"badtree.chain"));

    // CL is not a chain direction
    let sideways = HashMap::from([
        (marked, vocab::err()),
        (TreeLike::id(1, 1), vocab::ptr_node("CL")),
    ]);
    let r = check_bad_tree(&with_node_outputs(&inst, &sideways));
    assert!(r.rules_at(TreeLike::id(1, 1)).contains(&"badtree.output"));
}

// ---- labeled aliased grids ----

#[test]
fn broken_certificate_bit_must_be_flagged() {
    let ag = AliasedGrid::build(2, 2);
    let diag = ag.diagonal_bits();
    let inst = ag.labeled(|r, c| if (r, c) == (0, 0) { 0 } else { diag(r, c) });

    // flipping the corner bit invalidates exactly the corner and the next
    // diagonal cell reading it
    let silent = check_bad_ag(&inst);
    assert_eq!(silent.violation_count, 2);
    assert!(silent.rules_at(ag.grid_id(0, 0)).contains(&"badag.err-iff"));
    assert!(silent.rules_at(ag.grid_id(1, 1)).contains(&"badag.err-iff"));

    let outs = HashMap::from([
        (ag.grid_id(0, 0), vocab::err()),
        (ag.grid_id(1, 1), vocab::err()),
    ]);
    assert!(check_bad_ag(&with_node_outputs(&inst, &outs)).ok());
}

#[test]
fn column_error_pointers_trace_to_the_error() {
    let ag = AliasedGrid::build(2, 2);
    let inst = {
        let diag = ag.diagonal_bits();
        ag.labeled(|r, c| if (r, c) == (0, 0) { 0 } else { diag(r, c) })
    };
    let err_at = |outs: &mut HashMap<NodeId, Label>| {
        outs.insert(ag.grid_id(0, 0), vocab::err());
        outs.insert(ag.grid_id(1, 1), vocab::err());
    };

    // leaf-layer chain up the column plus an ancestor chain from the root
    let mut outs = HashMap::new();
    err_at(&mut outs);
    outs.insert(ag.grid_id(3, 0), vocab::colerr_ptr("R"));
    outs.insert(ag.grid_id(2, 0), vocab::colerr_ptr("R"));
    outs.insert(ag.grid_id(1, 0), vocab::colerr_ptr("R"));
    outs.insert(ag.tree_id(0, 0, 0), vocab::colerr_ptr("CR"));
    outs.insert(ag.tree_id(0, 1, 1), vocab::colerr_ptr("CR"));
    assert!(check_bad_ag(&with_node_outputs(&inst, &outs)).ok());

    // dangling pointer
    let mut outs = HashMap::new();
    err_at(&mut outs);
    outs.insert(ag.grid_id(3, 1), vocab::colerr_ptr("R"));
    let r = check_bad_ag(&with_node_outputs(&inst, &outs));
    assert!(r.rules_at(ag.grid_id(3, 1)).contains(&"badag.chain"));

    // pointers are for clean nodes only
    let mut outs = HashMap::new();
    err_at(&mut outs);
    outs.insert(ag.grid_id(0, 0), vocab::colerr_ptr("L"));
    let r = check_bad_ag(&with_node_outputs(&inst, &outs));
    assert!(r.rules_at(ag.grid_id(0, 0)).contains(&"badag.err-iff"));
}

// ---- gadget-carrying aliased grids ----

fn gadgeted(ag: &AliasedGrid, sites: &[(NodeId, u8)]) -> LabeledGraph {
    attach_gadgets(&ag.labeled(ag.diagonal_bits()), sites)
}

#[test]
fn grid_nodes_own_their_gadgets() {
    let ag = AliasedGrid::build(1, 1);
    let s0 = ag.grid_id(0, 0);
    let s1 = ag.grid_id(1, 0);

    // exactly one healthy silent gadget per cell: all quiet
    assert!(check_bad_agg(&gadgeted(&ag, &[(s0, 1), (s1, 0)])).ok());

    // a cell without a gadget must err
    let bare = gadgeted(&ag, &[(s0, 1)]);
    let r = check_bad_agg(&bare);
    assert!(r.rules_at(s1).contains(&"badagg.err-iff"));
    let outs = HashMap::from([(s1, vocab::err())]);
    assert!(check_bad_agg(&with_node_outputs(&bare, &outs)).ok());

    // two gadgets on one cell: the cell errs, both gadgets stay quiet
    let twin = gadgeted(&ag, &[(s0, 1), (s0, 0), (s1, 1)]);
    let r = check_bad_agg(&twin);
    assert!(r.rules_at(s0).contains(&"badagg.err-iff"));
    let outs = HashMap::from([(s0, vocab::err())]);
    assert!(check_bad_agg(&with_node_outputs(&twin, &outs)).ok());
}

#[test]
fn internal_nodes_may_not_carry_gadgets() {
    let ag = AliasedGrid::build(1, 1);
    let root = ag.tree_id(0, 0, 0);
    let inst = attach_gadgets(
        &gadgeted(&ag, &[(ag.grid_id(0, 0), 1), (ag.grid_id(1, 0), 0)]),
        &[(root, 1)],
    );
    let r = check_bad_agg(&inst);
    assert!(r.rules_at(root).contains(&"badagg.err-iff"));
    let outs = HashMap::from([(root, vocab::err())]);
    assert!(check_bad_agg(&with_node_outputs(&inst, &outs)).ok());
}

#[test]
fn mangled_gadgets_take_the_blame() {
    let ag = AliasedGrid::build(1, 1);
    let s0 = ag.grid_id(0, 0);
    let s1 = ag.grid_id(1, 0);
    let root = ag.tree_id(0, 0, 0);
    let inst = gadgeted(&ag, &[(s0, 1), (s1, 0)]);
    let n = ag.graph.n();
    let (anchor, a, b1, b2) = (n, n + 1, n + 2, n + 3);

    // a healthy gadget may not speak, and its cell must flag the noise
    let gerr = vocab::err_kind("gadget");
    let noisy = HashMap::from([(anchor, gerr.clone())]);
    let r = check_bad_agg(&with_node_outputs(&inst, &noisy));
    assert!(r.rules_at(anchor).contains(&"badagg.gadget"));
    assert!(r.rules_at(s0).contains(&"badagg.err-iff"));

    // cut one strap of cell 0's triangle: the component no longer depicts
    // a bit
    let site = LabelSite::HalfEdgeInput { node: b1, other: b2 };
    let cut = inst.mutate_label(site, None, None).unwrap();
    let r = check_bad_agg(&cut);
    assert!(r.rules_at(b1).contains(&"badagg.gadget"));

    // the component confesses, the carrying cell errs with it, and column
    // pointers may trace to that cell
    let mut outs = HashMap::from([
        (anchor, gerr.clone()),
        (a, gerr.clone()),
        (b1, gerr.clone()),
        (b2, gerr),
        (s0, vocab::err()),
        (s1, vocab::colerr_ptr("R")),
        (root, vocab::colerr_ptr("CR")),
    ]);
    assert!(check_bad_agg(&with_node_outputs(&cut, &outs)).ok());

    // a quiet cell above a confessed gadget is itself a violation
    outs.remove(&s0);
    outs.remove(&s1);
    outs.remove(&root);
    let r = check_bad_agg(&with_node_outputs(&cut, &outs));
    assert!(r.rules_at(s0).contains(&"badagg.err-iff"));

    // edge outputs are forbidden
    let chatty = inst.with_outputs(|_| None, |v, w| (v == s0 && w == s1).then(vocab::err));
    assert!(check_bad_agg(&chatty).rules_at(s0).contains(&"badagg.edge-output"));
}

// ---- marked carriers ----

fn find_key(sag: &Sag, key: NodeKey) -> NodeId {
    (0..sag.n()).find(|&v| sag.key(v) == key).expect("key exists")
}

struct ChainOuts {
    node: HashMap<NodeId, Label>,
    half_edge: HashMap<(NodeId, NodeId), Label>,
}

impl ChainOuts {
    fn new() -> Self {
        ChainOuts { node: HashMap::new(), half_edge: HashMap::new() }
    }

    fn err(&mut self, v: NodeId) {
        self.node.insert(v, vocab::err());
    }

    fn hop(&mut self, v: NodeId, w: NodeId, c: u8, p: &str, t: &'static str) {
        self.node.insert(v, vocab::ptr_mark());
        self.half_edge.insert((v, w), vocab::sag_ptr(c, p, t));
    }

    fn apply(&self, g: &LabeledGraph) -> LabeledGraph {
        g.with_outputs(
            |v| self.node.get(&v).cloned(),
            |v, w| self.half_edge.get(&(v, w)).cloned(),
        )
    }
}

#[test]
fn marked_carrier_demands_an_error() {
    let m = flip_machine();
    let sag = Sag::build(2, 3);
    let inst = sag.transcript_instance(&run(&m, &[1], 64)).unwrap();
    let marked = sag.bottom_id(0, 1);
    let inst = Sag::marked(&inst, &[marked]);

    let silent = check_bad_satm(&inst, &m);
    assert!(!silent.ok());
    assert!(silent.rules_at(marked).contains(&"badsag.err-iff"));

    let mut outs = ChainOuts::new();
    outs.err(marked);
    assert!(check_bad_satm(&outs.apply(&inst), &m).ok());
}

#[test]
fn carrier_pointer_legs_climb_cross_and_descend() {
    let m = flip_machine();
    let sag = Sag::build(2, 3);
    let inst = sag.transcript_instance(&run(&m, &[1], 64)).unwrap();
    let marked = sag.bottom_id(0, 1);
    let inst = Sag::marked(&inst, &[marked]);

    let leaf0 = sag.bottom_id(0, 0);
    let mid0 = find_key(&sag, NodeKey::ColInner { col: 0, d: 1, i: 1 });
    let root0 = sag.side_id(1, 0);
    let root1 = sag.side_id(1, 1);
    let mid1 = find_key(&sag, NodeKey::ColInner { col: 1, d: 1, i: 1 });

    let mut outs = ChainOuts::new();
    outs.err(marked);
    outs.hop(leaf0, mid0, 1, "P", vocab::roles::COL_TREE);
    outs.hop(mid0, root0, 1, "P", vocab::roles::COL_TREE);
    outs.hop(root0, root1, 2, "R", vocab::roles::TOP_TREE);
    outs.hop(root1, mid1, 3, "CR", vocab::roles::COL_TREE);
    outs.hop(mid1, marked, 3, "CR", vocab::roles::COL_TREE);
    assert!(check_bad_satm(&outs.apply(&inst), &m).ok());

    // leg counters may never decrease
    let mut outs = ChainOuts::new();
    outs.err(marked);
    outs.hop(root0, root1, 2, "R", vocab::roles::TOP_TREE);
    outs.hop(root1, mid1, 1, "CR", vocab::roles::COL_TREE);
    outs.hop(mid1, marked, 1, "CR", vocab::roles::COL_TREE);
    let r = check_bad_satm(&outs.apply(&inst), &m);
    assert!(r.rules_at(root0).contains(&"badsag.chain"));

    // the crossing leg is the only one on the top tree
    let mut outs = ChainOuts::new();
    outs.err(marked);
    outs.hop(root0, root1, 2, "R", vocab::roles::COL_TREE);
    let r = check_bad_satm(&outs.apply(&inst), &m);
    assert!(r.rules_at(root0).contains(&"badsag.chain"));

    // the hop direction must be carried by that half-edge
    let mut outs = ChainOuts::new();
    outs.err(marked);
    outs.hop(leaf0, mid0, 1, "CR", vocab::roles::COL_TREE);
    let r = check_bad_satm(&outs.apply(&inst), &m);
    assert!(r.rules_at(leaf0).contains(&"badsag.chain"));

    // a pointer mark needs exactly one outgoing hop
    let mut outs = ChainOuts::new();
    outs.err(marked);
    outs.hop(mid0, root0, 1, "P", vocab::roles::COL_TREE);
    outs.half_edge.insert(
        (mid0, sag.side_id(0, 0)),
        vocab::sag_ptr(1, "P", vocab::roles::COL_TREE),
    );
    let r = check_bad_satm(&outs.apply(&inst), &m);
    assert!(r.rules_at(mid0).contains(&"badsag.chain"));

    // silent and erring nodes may not emit hops
    let mut outs = ChainOuts::new();
    outs.err(marked);
    outs.half_edge
        .insert((marked, mid1), vocab::sag_ptr(3, "P", vocab::roles::COL_TREE));
    let r = check_bad_satm(&outs.apply(&inst), &m);
    assert!(r.rules_at(marked).contains(&"badsag.edge-output"));
}

#[test]
fn bare_marked_carrier() {
    let sag = Sag::build(2, 2);
    let base = sag.graph.with_node_inputs(|_, _| Some(vocab::struct_node()));
    let marked = sag.side_id(0, 2);
    let inst = Sag::marked(&base, &[marked]);

    assert!(!check_bad_sag(&inst).ok());
    let outs = HashMap::from([(marked, vocab::err())]);
    assert!(check_bad_sag(&with_node_outputs(&inst, &outs)).ok());
}
