//! Hashconsed e-graph with a union-find over e-class ids and deferred
//! congruence repair.
//!
//! Every call to [`EGraph::add`] that creates a node allocates a fresh id,
//! which is also the id of the singleton e-class holding it. Unions only
//! update the union-find and queue the affected parents; [`EGraph::rebuild`]
//! restores the congruence and hashcons invariants in one batch.
//!
//! Each e-class also carries an optional constant: the value the class
//! denotes under every assignment, when that is known from constant
//! children. It is kept up to date across unions and rebuilds and is what
//! the constant-folding rules consult.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use crate::expr::{BinOp, Expr, UnOp, Width};

/// Opaque e-class handle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Id(u32);

impl Id {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Id {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Interned variable name. Symbols are numbered in first-insertion order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(u32);

/// Operator of an e-node, ordered `Const < Var < Add < ... < Shl`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpTag {
    Const,
    Var,
    Bin(BinOp),
}

/// An operator applied to child e-classes. The derived ordering is the
/// extraction tie-break: operator first, then children by index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ENode {
    Const(u64),
    Var(Symbol),
    Bin(BinOp, [Id; 2]),
}

impl ENode {
    pub fn children(&self) -> &[Id] {
        match self {
            ENode::Bin(_, ch) => ch,
            _ => &[],
        }
    }

    pub fn tag(&self) -> OpTag {
        match self {
            ENode::Const(_) => OpTag::Const,
            ENode::Var(_) => OpTag::Var,
            ENode::Bin(op, _) => OpTag::Bin(*op),
        }
    }

    fn map_children(&self, mut f: impl FnMut(Id) -> Id) -> ENode {
        match self {
            ENode::Bin(op, [a, b]) => ENode::Bin(*op, [f(*a), f(*b)]),
            other => other.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct EClass {
    pub id: Id,
    /// Canonical and deduplicated whenever the graph is clean.
    pub nodes: Vec<ENode>,
    /// Ids of nodes that use this class as a child.
    parents: Vec<Id>,
    /// Value of the class under every assignment, if known.
    pub constant: Option<u64>,
}

impl EClass {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct EGraph {
    width: Width,
    parent: Vec<Id>,
    /// Each id's node as originally added; used to re-canonicalize parents.
    nodes: Vec<ENode>,
    classes: Vec<Option<EClass>>,
    memo: HashMap<ENode, Id>,
    pending: Vec<Id>,
    analysis_pending: Vec<Id>,
    symbols: Vec<String>,
    symbol_ids: HashMap<String, Symbol>,
    node_count: usize,
    clean: bool,
}

impl EGraph {
    pub fn new(width: Width) -> Self {
        EGraph {
            width,
            parent: Vec::new(),
            nodes: Vec::new(),
            classes: Vec::new(),
            memo: HashMap::new(),
            pending: Vec::new(),
            analysis_pending: Vec::new(),
            symbols: Vec::new(),
            symbol_ids: HashMap::new(),
            node_count: 0,
            clean: true,
        }
    }

    pub fn width(&self) -> Width {
        self.width
    }

    /// Total e-nodes across all classes.
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn class_count(&self) -> usize {
        self.classes.iter().filter(|c| c.is_some()).count()
    }

    pub fn is_clean(&self) -> bool {
        self.clean
    }

    pub fn intern(&mut self, name: &str) -> Symbol {
        if let Some(&s) = self.symbol_ids.get(name) {
            return s;
        }
        let s = Symbol(self.symbols.len() as u32);
        self.symbols.push(name.to_string());
        self.symbol_ids.insert(name.to_string(), s);
        s
    }

    pub fn symbol_name(&self, s: Symbol) -> &str {
        &self.symbols[s.0 as usize]
    }

    /// Canonical representative, without path compression.
    pub fn find(&self, mut id: Id) -> Id {
        while self.parent[id.index()] != id {
            id = self.parent[id.index()];
        }
        id
    }

    /// Canonical representative, compressing the path behind it.
    pub fn find_mut(&mut self, id: Id) -> Id {
        let root = self.find(id);
        let mut cur = id;
        while self.parent[cur.index()] != root {
            let next = self.parent[cur.index()];
            self.parent[cur.index()] = root;
            cur = next;
        }
        root
    }

    /// Canonical classes in increasing id order.
    pub fn classes(&self) -> impl Iterator<Item = &EClass> {
        self.classes.iter().flatten()
    }

    pub fn class(&self, id: Id) -> &EClass {
        self.classes[self.find(id).index()]
            .as_ref()
            .expect("canonical id has a class")
    }

    pub fn constant(&self, id: Id) -> Option<u64> {
        self.class(id).constant
    }

    pub fn canonicalize(&self, node: &ENode) -> ENode {
        node.map_children(|c| self.find(c))
    }

    /// Class already holding `node`, if any.
    pub fn lookup(&self, node: &ENode) -> Option<Id> {
        self.memo.get(&self.canonicalize(node)).map(|&id| self.find(id))
    }

    /// Value of a node whose children's constants are known.
    fn fold(&self, node: &ENode) -> Option<u64> {
        match node {
            ENode::Const(v) => Some(*v),
            ENode::Var(_) => None,
            ENode::Bin(op, [a, b]) => {
                let a = self.constant(*a)?;
                let b = self.constant(*b)?;
                Some(op.apply(a, b, self.width))
            }
        }
    }

    /// Adds a node, returning the existing class if an equal canonical node
    /// is already present.
    pub fn add(&mut self, node: ENode) -> Id {
        let node = match node {
            ENode::Const(v) => ENode::Const(self.width.reduce(v)),
            other => other.map_children(|c| self.find_mut(c)),
        };
        if let Some(&existing) = self.memo.get(&node) {
            return self.find_mut(existing);
        }
        let id = Id(self.parent.len() as u32);
        self.parent.push(id);
        self.nodes.push(node.clone());
        for &child in node.children() {
            let child = self.find(child);
            self.classes[child.index()]
                .as_mut()
                .expect("canonical")
                .parents
                .push(id);
        }
        let constant = self.fold(&node);
        self.classes.push(Some(EClass {
            id,
            nodes: vec![node.clone()],
            parents: Vec::new(),
            constant,
        }));
        self.memo.insert(node, id);
        self.node_count += 1;
        id
    }

    pub fn add_const(&mut self, value: u64) -> Id {
        self.add(ENode::Const(value))
    }

    pub fn add_var(&mut self, name: &str) -> Id {
        let s = self.intern(name);
        self.add(ENode::Var(s))
    }

    /// Loads an expression bottom-up and returns its root class. Unary
    /// operators are eliminated on the way in.
    pub fn add_expr(&mut self, e: &Expr) -> Id {
        match e {
            Expr::Const(v) => self.add_const(*v),
            Expr::Var(n) => self.add_var(n),
            Expr::Unary(UnOp::Neg, c) => {
                let zero = self.add_const(0);
                let c = self.add_expr(c);
                self.add(ENode::Bin(BinOp::Sub, [zero, c]))
            }
            Expr::Unary(UnOp::Not, c) => {
                let c = self.add_expr(c);
                let mask = self.add_const(self.width.mask());
                self.add(ENode::Bin(BinOp::Xor, [c, mask]))
            }
            Expr::Binary(op, l, r) => {
                let l = self.add_expr(l);
                let r = self.add_expr(r);
                self.add(ENode::Bin(*op, [l, r]))
            }
        }
    }

    /// Merges two classes. Returns the new canonical id and whether the
    /// classes were distinct. Congruence is not restored until
    /// [`EGraph::rebuild`].
    ///
    /// # Panics
    ///
    /// If the classes are known to denote different constants, which can
    /// only follow from an unsound rewrite.
    pub fn union(&mut self, a: Id, b: Id) -> (Id, bool) {
        let a = self.find_mut(a);
        let b = self.find_mut(b);
        if a == b {
            return (a, false);
        }
        let (size_a, size_b) = (self.class(a).len(), self.class(b).len());
        let (root, other) = if size_a > size_b || (size_a == size_b && a < b) {
            (a, b)
        } else {
            (b, a)
        };
        self.parent[other.index()] = root;
        let absorbed = self.classes[other.index()].take().expect("canonical");
        self.pending.extend(absorbed.parents.iter().copied());

        let root_class = self.classes[root.index()].as_mut().expect("canonical");
        let constant = match (root_class.constant, absorbed.constant) {
            (Some(x), Some(y)) if x != y => {
                panic!("unsound union: classes {root} and {other} hold constants {x} and {y}")
            }
            (x, y) => x.or(y),
        };
        if constant != root_class.constant {
            self.analysis_pending.extend(root_class.parents.iter().copied());
        }
        if constant != absorbed.constant {
            self.analysis_pending.extend(absorbed.parents.iter().copied());
        }
        root_class.constant = constant;
        root_class.nodes.extend(absorbed.nodes);
        root_class.parents.extend(absorbed.parents);
        self.clean = false;
        (root, true)
    }

    /// Restores congruence closure, the hashcons and the constant facts.
    /// Returns the number of merges congruence forced.
    pub fn rebuild(&mut self) -> usize {
        let mut merges = 0;
        while !self.pending.is_empty() || !self.analysis_pending.is_empty() {
            while let Some(id) = self.pending.pop() {
                let node = self.nodes[id.index()].clone().map_children(|c| self.find_mut(c));
                let class = self.find_mut(id);
                if let Some(prev) = self.memo.insert(node, class) {
                    if self.union(prev, class).1 {
                        merges += 1;
                    }
                }
            }
            while let Some(id) = self.analysis_pending.pop() {
                let node = self.canonicalize(&self.nodes[id.index()]);
                let Some(value) = self.fold(&node) else {
                    continue;
                };
                let class = self.find(id);
                let data = self.classes[class.index()].as_mut().expect("canonical");
                match data.constant {
                    None => {
                        data.constant = Some(value);
                        let parents = data.parents.clone();
                        self.analysis_pending.extend(parents);
                    }
                    Some(c) => assert_eq!(c, value, "unsound graph: class {class} folds to both {c} and {value}"),
                }
            }
        }
        self.rebuild_classes();
        self.clean = true;
        debug_assert_eq!(self.check_invariants(), Ok(()));
        merges
    }

    fn rebuild_classes(&mut self) {
        let mut classes = std::mem::take(&mut self.classes);
        self.memo.clear();
        self.node_count = 0;
        for class in classes.iter_mut().flatten() {
            for node in class.nodes.iter_mut() {
                *node = node.map_children(|c| self.find(c));
            }
            class.nodes.sort_unstable();
            class.nodes.dedup();
            class.parents.sort_unstable();
            class.parents.dedup();
            for node in &class.nodes {
                self.memo.insert(node.clone(), class.id);
            }
            self.node_count += class.nodes.len();
        }
        self.classes = classes;
    }

    /// Full scan of the clean-state invariants.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut seen: HashMap<&ENode, Id> = HashMap::new();
        for class in self.classes() {
            if self.find(class.id) != class.id {
                return Err(format!("class {} is not canonical", class.id));
            }
            for node in &class.nodes {
                if node.children().iter().any(|&c| self.find(c) != c) {
                    return Err(format!("class {} holds a non-canonical node", class.id));
                }
                if let Some(other) = seen.insert(node, class.id) {
                    return Err(format!("congruent node {node:?} in classes {other} and {}", class.id));
                }
                if self.memo.get(node) != Some(&class.id) {
                    return Err(format!("hashcons disagrees for {node:?}"));
                }
                if let Some(v) = self.fold(node) {
                    if class.constant != Some(v) {
                        return Err(format!("class {} misses constant {v}", class.id));
                    }
                }
            }
        }
        Ok(())
    }

    /// Graphviz rendering: one dotted cluster per e-class, one node per
    /// e-node, and edges from e-nodes to the clusters of their children.
    pub fn dump_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("digraph egraph {\n");
        out.push_str("  compound=true\n");
        out.push_str("  clusterrank=local\n");
        for class in self.classes() {
            let _ = writeln!(out, "  subgraph cluster_{} {{", class.id);
            out.push_str("    style=dotted\n");
            for (i, node) in class.nodes.iter().enumerate() {
                let _ = writeln!(out, "    {}.{} [label = \"{}\"]", class.id, i, self.node_label(node));
            }
            out.push_str("  }\n");
        }
        for class in self.classes() {
            for (i, node) in class.nodes.iter().enumerate() {
                for (arg, &child) in node.children().iter().enumerate() {
                    let child = self.find(child);
                    let _ = writeln!(
                        out,
                        "  {}.{} -> {}.0 [lhead = cluster_{}, label = {}]",
                        class.id, i, child, child, arg
                    );
                }
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn node_label(&self, node: &ENode) -> String {
        match node {
            ENode::Const(v) => v.to_string(),
            ENode::Var(s) => self.symbol_name(*s).to_string(),
            ENode::Bin(op, _) => op.symbol().to_string(),
        }
    }
}
