//! Simple-module labels and blocks at generic q.
//!
//! Blocks are the fibres of the 2-core map on the simple labels. Residue linkage of
//! up-down tableaux is computed independently and compared with them.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde_json::{json, Value};

use crate::combin::{
    in_sigma_plus, partition_count, residues, sharp, sigma_plus, two_core, updown_tableaux, Node,
    Partition, UpDownTableau,
};
use crate::error::{Error, Result};
use crate::repmod::{radical_rank, StandardModule};

/// Rejects a finite quantum characteristic; everything here assumes e = infinity.
pub fn require_generic(e: Option<usize>) -> Result<()> {
    match e {
        None => Ok(()),
        Some(e) => Err(Error::Unsupported(format!(
            "generic q only (requested e = {e})"
        ))),
    }
}

/// Labels of the simple modules of B_{q,l}: every label of degree l, except the empty
/// partition when l is even and positive.
pub fn simple_labels(l: usize) -> Vec<Partition> {
    sigma_plus(l)
        .into_iter()
        .filter(|p| !(p.is_empty() && l.is_multiple_of(2) && l > 0))
        .collect()
}

/// Expected number of simple labels.
pub fn simple_label_count(l: usize) -> usize {
    let all: usize = (0..=l / 2).map(|f| partition_count(l - 2 * f)).sum();
    all - usize::from(l.is_multiple_of(2) && l > 0)
}

/// Outcome of comparing residue sequences of two labels.
#[derive(Clone, Debug)]
pub struct Linkage {
    pub linked: bool,
    /// Tableaux of the two types with equal residue sequences.
    pub witness: Option<(UpDownTableau, UpDownTableau)>,
    /// For |mu| > |lambda|: a pairing of the nodes of mu / lambda into (p, q) with
    /// c(p) - c(q) = 1, if one exists.
    pub certificate: Option<Vec<(Node, Node)>>,
}

fn residue_key(t: &UpDownTableau) -> String {
    residues(t)
        .iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join("|")
}

fn residue_table(lambda: &Partition, l: usize) -> Result<BTreeMap<String, UpDownTableau>> {
    let mut out = BTreeMap::new();
    for t in updown_tableaux(l, lambda)? {
        out.entry(residue_key(&t)).or_insert(t);
    }
    Ok(out)
}

fn check_labels(lambda: &Partition, mu: &Partition, l: usize) -> Result<()> {
    for p in [lambda, mu] {
        if !in_sigma_plus(p, l) {
            return Err(Error::InvalidInput(format!("{p} is not a label of degree {l}")));
        }
    }
    Ok(())
}

/// Whether some tableau of type lambda and some tableau of type mu share their residue
/// sequence.
pub fn residue_linked(lambda: &Partition, mu: &Partition, l: usize) -> Result<Linkage> {
    check_labels(lambda, mu, l)?;
    let a = residue_table(lambda, l)?;
    let b = residue_table(mu, l)?;
    let witness = a
        .iter()
        .find_map(|(k, t)| b.get(k).map(|s| (t.clone(), s.clone())));
    let certificate = if mu.size() > lambda.size() {
        pairing_certificate(lambda, mu)
    } else {
        None
    };
    Ok(Linkage {
        linked: witness.is_some(),
        witness,
        certificate,
    })
}

/// Pairs the nodes of mu / lambda as (p, q) with c(p) - c(q) = 1.
pub fn pairing_certificate(lambda: &Partition, mu: &Partition) -> Option<Vec<(Node, Node)>> {
    let inner: HashSet<Node> = lambda.nodes().into_iter().collect();
    let outer = mu.nodes();
    if !inner.iter().all(|n| outer.contains(n)) {
        return None;
    }
    let skew: Vec<Node> = outer.into_iter().filter(|n| !inner.contains(n)).collect();
    if skew.len() % 2 == 1 {
        return None;
    }
    fn go(rest: &mut Vec<Node>, acc: &mut Vec<(Node, Node)>) -> bool {
        let Some(p) = rest.pop() else {
            return true;
        };
        for k in 0..rest.len() {
            let q = rest[k];
            let pair = if p.content() - q.content() == 1 {
                (p, q)
            } else if q.content() - p.content() == 1 {
                (q, p)
            } else {
                continue;
            };
            rest.remove(k);
            acc.push(pair);
            if go(rest, acc) {
                return true;
            }
            acc.pop();
            rest.insert(k, q);
        }
        rest.push(p);
        false
    }
    let mut rest = skew;
    let mut acc = Vec::new();
    go(&mut rest, &mut acc).then_some(acc)
}

/// One block: members in label order, with their common 2-core and sharp value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub members: Vec<Partition>,
    pub core: Partition,
    pub sharp: i64,
}

/// Fibres of the 2-core map on the simple labels, in order of first member.
pub fn block_partition(l: usize) -> Vec<Block> {
    let mut blocks: Vec<Block> = Vec::new();
    for p in simple_labels(l) {
        let core = two_core(&p);
        match blocks.iter_mut().find(|b| b.core == core) {
            Some(b) => b.members.push(p),
            None => blocks.push(Block {
                members: vec![p.clone()],
                sharp: sharp(&core),
                core,
            }),
        }
    }
    blocks
}

/// Classes of equal sharp value on the simple labels, in order of first member.
pub fn sharp_partition(l: usize) -> Vec<Vec<Partition>> {
    classes_by(simple_labels(l), sharp)
}

fn classes_by<K: PartialEq>(labels: Vec<Partition>, key: impl Fn(&Partition) -> K) -> Vec<Vec<Partition>> {
    let mut out: Vec<(K, Vec<Partition>)> = Vec::new();
    for p in labels {
        let k = key(&p);
        match out.iter_mut().find(|(x, _)| *x == k) {
            Some((_, v)) => v.push(p),
            None => out.push((k, vec![p])),
        }
    }
    out.into_iter().map(|(_, v)| v).collect()
}

/// Transitive closure of residue linkage on the simple labels.
pub fn linkage_classes(l: usize) -> Result<Vec<Vec<Partition>>> {
    let labels = simple_labels(l);
    let tables: Vec<HashSet<String>> = labels
        .iter()
        .map(|p| Ok(residue_table(p, l)?.into_keys().collect()))
        .collect::<Result<_>>()?;
    let n = labels.len();
    let mut root: Vec<usize> = (0..n).collect();
    fn find(root: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while root[x] != x {
            root[x] = root[root[x]];
            x = root[x];
        }
        x
    }
    for i in 0..n {
        for j in i + 1..n {
            if !tables[i].is_disjoint(&tables[j]) {
                let (a, b) = (find(&mut root, i), find(&mut root, j));
                root[a.max(b)] = a.min(b);
            }
        }
    }
    let ids: Vec<usize> = (0..n).map(|i| find(&mut root, i)).collect();
    let mut out: Vec<(usize, Vec<Partition>)> = Vec::new();
    for (p, id) in labels.into_iter().zip(ids) {
        match out.iter_mut().find(|(x, _)| *x == id) {
            Some((_, v)) => v.push(p),
            None => out.push((id, vec![p])),
        }
    }
    Ok(out.into_iter().map(|(_, v)| v).collect())
}

/// Blocks from the 2-core map next to the two independent partitions.
#[derive(Clone, Debug)]
pub struct BlockReport {
    pub l: usize,
    pub blocks: Vec<Block>,
    pub sharp_classes: Vec<Vec<Partition>>,
    pub linkage_classes: Vec<Vec<Partition>>,
}

impl BlockReport {
    fn core_classes(&self) -> Vec<Vec<Partition>> {
        self.blocks.iter().map(|b| b.members.clone()).collect()
    }

    pub fn sharp_agrees(&self) -> bool {
        same_classes(&self.core_classes(), &self.sharp_classes)
    }

    pub fn linkage_agrees(&self) -> bool {
        same_classes(&self.core_classes(), &self.linkage_classes)
    }

    /// Fails as a falsified invariant on any disagreement.
    pub fn check(&self) -> Result<()> {
        if !self.sharp_agrees() {
            return Err(Error::Falsified(format!(
                "l = {}: 2-core blocks {} differ from sharp classes {}",
                self.l,
                show_classes(&self.core_classes()),
                show_classes(&self.sharp_classes)
            )));
        }
        if !self.linkage_agrees() {
            return Err(Error::Falsified(format!(
                "l = {}: 2-core blocks {} differ from residue linkage classes {}",
                self.l,
                show_classes(&self.core_classes()),
                show_classes(&self.linkage_classes)
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let classes = |c: &[Vec<Partition>]| -> Value {
            json!(c
                .iter()
                .map(|v| v.iter().map(|p| p.to_json()).collect::<Vec<_>>())
                .collect::<Vec<_>>())
        };
        json!({
            "l": self.l,
            "blocks": self.blocks.iter().enumerate().map(|(k, b)| json!({
                "id": k,
                "members": b.members.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
                "two_core": b.core.to_json(),
                "sharp": b.sharp,
            })).collect::<Vec<_>>(),
            "sharp_classes": classes(&self.sharp_classes),
            "linkage_classes": classes(&self.linkage_classes),
            "sharp_agrees": self.sharp_agrees(),
            "linkage_agrees": self.linkage_agrees(),
        })
    }
}

pub fn block_report(l: usize) -> Result<BlockReport> {
    Ok(BlockReport {
        l,
        blocks: block_partition(l),
        sharp_classes: sharp_partition(l),
        linkage_classes: linkage_classes(l)?,
    })
}

fn normalize(c: &[Vec<Partition>]) -> Vec<Vec<Partition>> {
    let mut out: Vec<Vec<Partition>> = c
        .iter()
        .map(|v| {
            let mut v = v.clone();
            v.sort();
            v
        })
        .collect();
    out.sort();
    out
}

fn same_classes(a: &[Vec<Partition>], b: &[Vec<Partition>]) -> bool {
    normalize(a) == normalize(b)
}

pub fn show_classes(c: &[Vec<Partition>]) -> String {
    let parts: Vec<String> = c
        .iter()
        .map(|v| {
            let s: Vec<String> = v.iter().map(|p| p.to_string()).collect();
            format!("{{{}}}", s.join(","))
        })
        .collect();
    parts.join(" ")
}

/// Evidence attached to a semisimplicity verdict.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// C(lambda) has a Gram matrix of positive corank.
    Radical { lambda: Partition, dim: usize, radical_rank: usize },
    /// A block with more than one simple label.
    Block(Vec<Partition>),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Radical { lambda, dim, radical_rank } => {
                write!(f, "C({lambda}) of dim {dim} has radical rank {radical_rank}")
            }
            Witness::Block(ms) => {
                let ms: Vec<String> = ms.iter().map(|p| p.to_string()).collect();
                write!(f, "block {{{}}}", ms.join(", "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SemisimplicityReport {
    pub l: usize,
    pub semisimple: bool,
    pub witness: Option<Witness>,
}

impl SemisimplicityReport {
    pub fn to_json(&self) -> Value {
        let w = match &self.witness {
            None => Value::Null,
            Some(Witness::Radical { lambda, dim, radical_rank }) => json!({
                "kind": "radical",
                "lambda": lambda.to_json(),
                "dim": dim,
                "radical_rank": radical_rank,
            }),
            Some(Witness::Block(m)) => json!({
                "kind": "block",
                "members": m.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
            }),
        };
        json!({"l": self.l, "semisimple": self.semisimple, "witness": w})
    }
}

/// Semisimple unless a witness is found: first a standard module of the top level with
/// a degenerate form, then a block with two or more members.
pub fn semisimplicity_report(l: usize) -> Result<SemisimplicityReport> {
    let top = if l.is_multiple_of(2) {
        Partition::empty()
    } else {
        Partition::new(vec![1])?
    };
    let mut witness = None;
    if l >= 1 {
        let rr = radical_rank(&top, l)?;
        if rr > 0 {
            witness = Some(Witness::Radical {
                dim: StandardModule::get(&top, l)?.dim(),
                lambda: top,
                radical_rank: rr,
            });
        }
    }
    if witness.is_none() {
        witness = block_partition(l)
            .into_iter()
            .find(|b| b.members.len() > 1)
            .map(|b| Witness::Block(b.members));
    }
    Ok(SemisimplicityReport {
        l,
        semisimple: witness.is_none(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn ps(v: &[&str]) -> Vec<Partition> {
        v.iter().map(|s| p(s)).collect()
    }

    #[test]
    fn simple_label_examples() {
        assert_eq!(simple_labels(2), ps(&["[2]", "[1,1]"]));
        assert_eq!(simple_labels(1), ps(&["[1]"]));
        let mut l3 = simple_labels(3);
        l3.sort();
        let mut want = ps(&["[3]", "[2,1]", "[1,1,1]", "[1]"]);
        want.sort();
        assert_eq!(l3, want);
        for l in 0..=8 {
            assert_eq!(simple_labels(l).len(), simple_label_count(l), "l={l}");
        }
    }

    #[test]
    fn linkage_examples() {
        let r = residue_linked(&p("[]"), &p("[1,1]"), 2).unwrap();
        assert!(r.linked);
        let (t, s) = r.witness.unwrap();
        assert_eq!(residues(&t), residues(&s));
        let c = r.certificate.unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].0.content() - c[0].1.content(), 1);
        assert!(residue_linked(&p("[2,1]"), &p("[2,1]"), 3).unwrap().linked);
        assert!(!residue_linked(&p("[2,1]"), &p("[3]"), 3).unwrap().linked);
        assert!(residue_linked(&p("[5]"), &p("[1]"), 2).is_err());
    }

    #[test]
    fn block_examples() {
        let b = block_partition(2);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].members, ps(&["[2]", "[1,1]"]));
        let mut b3: Vec<Vec<Partition>> = block_partition(3)
            .into_iter()
            .map(|b| {
                let mut m = b.members;
                m.sort();
                m
            })
            .collect();
        b3.sort();
        let mut want = vec![ps(&["[1]", "[1,1,1]", "[3]"]), ps(&["[2,1]"])];
        for v in want.iter_mut() {
            v.sort();
        }
        want.sort();
        assert_eq!(b3, want);
        assert_eq!(block_partition(1).len(), 1);
    }

    #[test]
    fn linkage_needs_equal_cores() {
        for l in 1..=5 {
            let labels = sigma_plus(l);
            for a in &labels {
                for b in &labels {
                    if two_core(a) != two_core(b) {
                        assert!(!residue_linked(a, b, l).unwrap().linked, "{a} {b} l={l}");
                    }
                }
            }
        }
    }

    #[test]
    fn semisimplicity_examples() {
        let r = semisimplicity_report(1).unwrap();
        assert!(r.semisimple);
        let r = semisimplicity_report(2).unwrap();
        assert!(!r.semisimple);
        assert_eq!(
            r.witness,
            Some(Witness::Radical { lambda: p("[]"), dim: 1, radical_rank: 1 })
        );
        assert!(!semisimplicity_report(3).unwrap().semisimple);
    }

    #[test]
    fn finite_e_is_rejected() {
        assert!(matches!(require_generic(Some(3)), Err(Error::Unsupported(_))));
        assert!(require_generic(None).is_ok());
    }
}
