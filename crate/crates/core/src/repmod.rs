//! Standard modules C(lambda) with their Murphy bases, action matrices, the branching
//! filtration, Gram matrices and restriction bookkeeping.
//!
//! Matrices act on row vectors: entry (t, s) is the coefficient of m_s in m_t g.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::coeff::LaurentScalar;
use crate::combin::{
    coset_count, hook_dim, in_sigma_plus, level, order_leq_unchecked, partitions, residues,
    tableau_order, updown_tableaux, Partition, UpDownTableau,
};
use crate::error::{Error, Result};
use crate::linalg::{rank, zero_matrix, BasisSolver, Matrix};
use crate::pqbrauer::hecke::{x_lambda, HeckeElement};
use crate::pqbrauer::mbasis::e_f;
use crate::pqbrauer::standard::{reduce_mod, right_mul_jm, t_ij, StandardBasis, StandardBasisIndex};
use crate::pqbrauer::{AlgebraElement, Gen};

/// Sum of coefficient times word.
pub type WordSum = Vec<(LaurentScalar, Vec<Gen>)>;

/// `T^-1_{i,j}`, the inverse of `T_{i,j}`.
pub fn t_ij_inv(i: usize, j: usize) -> Vec<Gen> {
    t_ij(i, j).iter().rev().map(|g| Gen::t_inv(g.i)).collect()
}

fn right_words(a: &AlgebraElement, ws: &WordSum) -> AlgebraElement {
    let mut out = AlgebraElement::zero(a.l);
    for (c, w) in ws {
        out.add_assign_scaled(&a.right_gens(w), c);
    }
    out
}

fn left_words(ws: &WordSum, a: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero(a.l);
    for (c, w) in ws {
        out.add_assign_scaled(&a.left_gens(w), c);
    }
    out
}

/// `a h` for a Hecke element on the letters `offset + 1, ...`.
pub fn right_hecke(a: &AlgebraElement, h: &HeckeElement, offset: usize) -> AlgebraElement {
    let ws: WordSum = h
        .terms
        .iter()
        .map(|(p, c)| {
            let w = crate::combin::perm_to_word(p)
                .into_iter()
                .map(|x| Gen::t(x + offset))
                .collect();
            (c.clone(), w)
        })
        .collect();
    right_words(a, &ws)
}

/// `E^f x_lambda` in degree l.
pub fn e_f_x_lambda(lambda: &Partition, l: usize) -> Result<AlgebraElement> {
    let f = level(lambda, l);
    let e = AlgebraElement::from_gens(&e_f(f), l)?;
    Ok(right_hecke(&e, &x_lambda(lambda), 2 * f))
}

fn row_end(lambda: &Partition, r: usize) -> usize {
    (0..r).map(|i| lambda.part(i)).sum()
}

/// Factor contributed to b_t by step k of t.
pub fn step_factor(t: &UpDownTableau, k: usize) -> WordSum {
    let lam = &t.path[k];
    let f = level(lam, k);
    let (node, added) = t.step(k);
    if added {
        let a = 2 * f + row_end(lam, node.row);
        vec![(LaurentScalar::one(), t_ij(a, k))]
    } else {
        // The sum runs over the whole row of t^mu that loses the node.
        let lo = 2 * f - 1 + row_end(lam, node.row - 1);
        let hi = 2 * f - 1 + row_end(lam, node.row);
        (lo..=hi)
            .map(|j| {
                let mut w = t_ij_inv(k, 2 * f);
                w.extend(t_ij_inv(j, 2 * f - 1));
                (LaurentScalar::q_pow((hi - j) as i64), w)
            })
            .collect()
    }
}

/// `m_t = E^f x_lambda b_t`.
pub fn murphy_element(t: &UpDownTableau) -> Result<AlgebraElement> {
    let l = t.degree();
    let mut a = e_f_x_lambda(t.shape(), l)?;
    for k in (1..=l).rev() {
        a = right_words(&a, &step_factor(t, k));
    }
    Ok(a)
}

/// `m_t` from `m_{t restricted}` by left multiplication, degree by degree, in degree `l`.
/// Independent of `murphy_element`; used to cross-check it.
pub fn murphy_element_recursive(t: &UpDownTableau, l: usize) -> Result<AlgebraElement> {
    let k = t.degree();
    if k <= 1 {
        return Ok(AlgebraElement::one(l));
    }
    let inner = murphy_element_recursive(&t.truncated(), l)?;
    let lam = t.shape();
    let f = level(lam, k);
    let (node, added) = t.step(k);
    let ws: WordSum = if added {
        let lo = 2 * f + row_end(lam, node.row - 1) + 1;
        let hi = 2 * f + row_end(lam, node.row);
        (lo..=hi)
            .map(|i| (LaurentScalar::q_pow((hi - i) as i64), t_ij(i, k)))
            .collect()
    } else {
        let b = 2 * f - 1 + row_end(lam, node.row);
        let mut w = vec![Gen::e(2 * f - 1)];
        w.extend(t_ij_inv(k, 2 * f));
        w.extend(t_ij_inv(b, 2 * f - 1));
        vec![(LaurentScalar::one(), w)]
    };
    Ok(left_words(&ws, &inner))
}

/// y-element generating layer mu of the branching filtration of C(lambda).
pub fn y_element(lambda: &Partition, mu: &Partition, l: usize) -> Result<AlgebraElement> {
    let f = level(lambda, l);
    if mu.size() < lambda.size() {
        let r = (0..lambda.parts.len())
            .find(|&r| lambda.part(r) != mu.part(r))
            .ok_or_else(|| Error::InvalidInput(format!("{mu} is not below {lambda}")))?;
        let a = 2 * f + row_end(lambda, r + 1);
        Ok(e_f_x_lambda(lambda, l)?.right_gens(&t_ij(a, l)))
    } else {
        if f == 0 {
            return Err(Error::InvalidInput("adding a node needs a cap".into()));
        }
        let r = (0..mu.parts.len())
            .find(|&r| lambda.part(r) != mu.part(r))
            .ok_or_else(|| Error::InvalidInput(format!("{mu} is not above {lambda}")))?;
        let b = 2 * f - 1 + row_end(lambda, r + 1);
        let mut w = vec![Gen::e(2 * f - 1)];
        w.extend(t_ij_inv(l, 2 * f));
        w.extend(t_ij_inv(b, 2 * f - 1));
        w.extend(e_f(f - 1));
        let a = AlgebraElement::from_gens(&w, l)?;
        Ok(right_hecke(&a, &x_lambda(mu), 2 * (f - 1)))
    }
}

/// C(lambda) with the Murphy basis ordered higher tableaux first.
pub struct StandardModule {
    pub l: usize,
    pub f: usize,
    pub lambda: Partition,
    pub basis: Vec<UpDownTableau>,
    pub position: HashMap<UpDownTableau, usize>,
    pub murphy: Vec<AlgebraElement>,
    /// Left index (coset, tableau) shared by all elements `E^f x_lambda h`.
    head: (usize, usize),
    solver: BasisSolver<(usize, usize)>,
}

impl StandardModule {
    fn build(lambda: &Partition, l: usize) -> Result<StandardModule> {
        if !in_sigma_plus(lambda, l) {
            return Err(Error::InvalidInput(format!("{lambda} is not a label of degree {l}")));
        }
        let f = level(lambda, l);
        let basis = updown_tableaux(l, lambda)?;
        let expect = coset_count(f, l) * hook_dim(lambda);
        if basis.len() as u128 != expect {
            return Err(Error::Falsified(format!(
                "{} up-down tableaux of type {lambda}, expected {expect}",
                basis.len()
            )));
        }
        let murphy: Vec<AlgebraElement> = basis
            .par_iter()
            .map(murphy_element)
            .collect::<Result<_>>()?;
        let sb = StandardBasis::get(l);
        let id = sb
            .coset_reps(f)
            .iter()
            .position(|d| d.is_identity())
            .expect("identity coset");
        let top = sb
            .tableaux(lambda, l)
            .iter()
            .position(|t| t.d.is_empty())
            .expect("initial tableau");
        let head = (id, top);
        let rows: Vec<Vec<((usize, usize), LaurentScalar)>> = murphy
            .par_iter()
            .map(|m| cell_row(m, lambda, l, head))
            .collect::<Result<_>>()?;
        let solver = BasisSolver::new(&rows).map_err(|e| {
            Error::Falsified(format!("Murphy elements of C({lambda}) are not a basis: {e}"))
        })?;
        let position = basis.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        Ok(StandardModule {
            l,
            f,
            lambda: lambda.clone(),
            basis,
            position,
            murphy,
            head,
            solver,
        })
    }

    /// Cached module.
    pub fn get(lambda: &Partition, l: usize) -> Result<Arc<StandardModule>> {
        type Cache = Mutex<HashMap<(Partition, usize), Arc<StandardModule>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let key = (lambda.clone(), l);
        if let Some(m) = cache.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let m = Arc::new(StandardModule::build(lambda, l)?);
        cache.lock().unwrap().insert(key, m.clone());
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Murphy coordinates of `E^f x_lambda h` modulo higher cells.
    pub fn coords(&self, a: &AlgebraElement) -> Result<ModuleVector> {
        let row = cell_row(a, &self.lambda, self.l, self.head)?;
        let coords = self.solver.coords(row.iter().map(|(k, c)| (k, c)))?;
        Ok(ModuleVector {
            lambda: self.lambda.clone(),
            l: self.l,
            coords,
        })
    }

    fn matrix_by<F>(&self, act: F) -> Result<Matrix>
    where
        F: Fn(&AlgebraElement) -> Result<AlgebraElement> + Sync,
    {
        let n = self.dim();
        let rows: Vec<Vec<LaurentScalar>> = self
            .murphy
            .par_iter()
            .map(|m| {
                let v = self.coords(&act(m)?)?;
                let mut row = vec![LaurentScalar::zero(); n];
                for (j, c) in v.coords {
                    row[j] = c;
                }
                Ok(row)
            })
            .collect::<Result<_>>()?;
        Ok(rows)
    }

    /// Matrix of right multiplication by a word in the generators.
    pub fn gens_matrix(&self, gens: &[Gen]) -> Result<Matrix> {
        crate::pqbrauer::check_gens(gens, self.l)?;
        self.matrix_by(|m| Ok(m.right_gens(gens)))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "l": self.l,
            "lambda": self.lambda.to_json(),
            "dim": self.dim(),
            "basis": self.basis.iter().map(|t| t.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// Cell coordinates of `a` on the cell of lambda, keyed by right index, after checking
/// that every left index is `head`.
fn cell_row(
    a: &AlgebraElement,
    lambda: &Partition,
    l: usize,
    head: (usize, usize),
) -> Result<Vec<((usize, usize), LaurentScalar)>> {
    let mut out = Vec::new();
    for ((left, right), c) in reduce_mod(a, lambda, l)? {
        if left != head {
            return Err(Error::Falsified(format!(
                "component with left index {left:?} in C({lambda})"
            )));
        }
        out.push((right, c));
    }
    Ok(out)
}

/// Coordinates over the Murphy basis of one standard module.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleVector {
    pub lambda: Partition,
    pub l: usize,
    pub coords: BTreeMap<usize, LaurentScalar>,
}

impl ModuleVector {
    pub fn to_json(&self, m: &StandardModule) -> Value {
        let entries: Vec<Value> = self
            .coords
            .iter()
            .map(|(i, c)| json!({"tableau": m.basis[*i].to_json(), "coeff": c.to_json()}))
            .collect();
        json!({"l": self.l, "lambda": self.lambda.to_json(), "coords": entries})
    }
}

/// Matrix of right multiplication by g on C(lambda).
pub fn action_matrix(g: &AlgebraElement, lambda: &Partition, l: usize) -> Result<Matrix> {
    if g.l != l {
        return Err(Error::InvalidInput("degree mismatch".into()));
    }
    let m = StandardModule::get(lambda, l)?;
    let ws = crate::pqbrauer::mbasis::word_sum(g)?;
    m.matrix_by(|x| Ok(right_words(x, &ws)))
}

/// Matrix of x_i on C(lambda), with its diagonal.
#[derive(Clone, Debug)]
pub struct JmAction {
    pub i: usize,
    pub matrix: Matrix,
    pub diagonal: Vec<LaurentScalar>,
}

/// Matrix of x_i on C(lambda). Fails as a falsified invariant unless entry (t, s) vanishes
/// whenever s is neither t nor above t, and the diagonal is the residue sequence.
pub fn jm_action(i: usize, lambda: &Partition, l: usize) -> Result<JmAction> {
    if i == 0 || i > l {
        return Err(Error::InvalidInput(format!("JM index {i} out of range for l = {l}")));
    }
    let m = StandardModule::get(lambda, l)?;
    let matrix = m.matrix_by(|x| Ok(right_mul_jm(x, i)))?;
    for (a, t) in m.basis.iter().enumerate() {
        let c = &residues(t)[i - 1];
        if matrix[a][a] != *c {
            return Err(Error::Falsified(format!(
                "x_{i} on C({lambda}): diagonal at {t} is {}, residue {c}",
                matrix[a][a]
            )));
        }
        for (b, s) in m.basis.iter().enumerate() {
            if a != b && !matrix[a][b].is_zero() && !tableau_order(t, s)? {
                return Err(Error::Falsified(format!(
                    "x_{i} on C({lambda}): m_{t} has a component on m_{s}, which is not above it"
                )));
            }
        }
    }
    let diagonal = (0..m.dim()).map(|a| matrix[a][a].clone()).collect();
    Ok(JmAction { i, matrix, diagonal })
}

/// Generators of B_{q,k}.
pub fn algebra_generators(k: usize) -> Vec<Gen> {
    (1..k)
        .flat_map(|i| [Gen::t(i), Gen::t_inv(i), Gen::e(i)])
        .collect()
}

/// One layer M_k / M_{k-1} of the filtration.
#[derive(Clone, Debug)]
pub struct BranchLayer {
    pub mu: Partition,
    /// Positions in the basis of C(lambda) of the tableaux with t_{l-1} = mu.
    pub new_basis: Vec<usize>,
    /// Positions of all tableaux with t_{l-1} ⊵ mu.
    pub sub_basis: Vec<usize>,
    /// Every generator of B_{q,l-1} maps M_k into M_k.
    pub stable: bool,
    /// The quotient action equals the action on C(mu) under t -> t restricted.
    pub quotient_matches: bool,
    /// The y-element of mu lies in M_k but not in M_{k-1}.
    pub y_in_layer: bool,
}

impl BranchLayer {
    pub fn holds(&self) -> bool {
        self.stable && self.quotient_matches && self.y_in_layer
    }
}

/// The B_{q,l-1}-filtration of C(lambda), one layer per element of RA(lambda).
pub fn branching_filtration(lambda: &Partition, l: usize) -> Result<Vec<BranchLayer>> {
    if l == 0 {
        return Err(Error::InvalidInput("degree 0 has no restriction".into()));
    }
    let m = StandardModule::get(lambda, l)?;
    let mus = crate::combin::ra_set(lambda, l)?;
    let gens = algebra_generators(l - 1);
    let mats: Vec<Matrix> = gens
        .iter()
        .map(|g| m.gens_matrix(&[*g]))
        .collect::<Result<_>>()?;
    let prev_shape = |a: usize| &m.basis[a].path[l - 1];
    let mut layers = Vec::new();
    for (k, mu) in mus.iter().enumerate() {
        let new_basis: Vec<usize> = (0..m.dim()).filter(|&a| prev_shape(a) == mu).collect();
        let in_sub = |a: usize| order_leq_unchecked(mu, prev_shape(a));
        let in_prev = |a: usize| k > 0 && order_leq_unchecked(&mus[k - 1], prev_shape(a));
        let sub_basis: Vec<usize> = (0..m.dim()).filter(|&a| in_sub(a)).collect();
        let stable = mats.iter().all(|mat| {
            sub_basis
                .iter()
                .all(|&a| (0..m.dim()).all(|b| mat[a][b].is_zero() || in_sub(b)))
        });
        let small = StandardModule::get(mu, l - 1)?;
        let down: Vec<usize> = new_basis
            .iter()
            .map(|&a| small.position[&m.basis[a].truncated()])
            .collect();
        let mut quotient_matches = true;
        for (g, mat) in gens.iter().zip(&mats) {
            let q = small.gens_matrix(&[*g])?;
            for (x, &a) in new_basis.iter().enumerate() {
                for (y, &b) in new_basis.iter().enumerate() {
                    if mat[a][b] != q[down[x]][down[y]] {
                        quotient_matches = false;
                    }
                }
            }
        }
        let y = m.coords(&y_element(lambda, mu, l)?)?;
        let y_in_layer = y.coords.keys().all(|&a| in_sub(a))
            && y.coords.keys().any(|&a| !in_prev(a));
        layers.push(BranchLayer {
            mu: mu.clone(),
            new_basis,
            sub_basis,
            stable,
            quotient_matches,
            y_in_layer,
        });
    }
    Ok(layers)
}

/// Index set I(lambda) of pairs (coset position, tableau position).
pub fn cell_indices(lambda: &Partition, l: usize) -> Result<Vec<(usize, usize)>> {
    if !in_sigma_plus(lambda, l) {
        return Err(Error::InvalidInput(format!("{lambda} is not a label of degree {l}")));
    }
    let sb = StandardBasis::get(l);
    let f = level(lambda, l);
    let nv = sb.coset_reps(f).len();
    let nt = sb.tableaux(lambda, l).len();
    Ok((0..nv).flat_map(|v| (0..nt).map(move |t| (v, t))).collect())
}

fn cell_position(
    sb: &StandardBasis,
    lambda: &Partition,
    l: usize,
    left: (usize, usize),
    right: (usize, usize),
) -> Result<usize> {
    let ix = StandardBasisIndex {
        f: level(lambda, l),
        lambda: lambda.clone(),
        left,
        right,
    };
    sb.position
        .get(&ix)
        .copied()
        .ok_or_else(|| Error::InvalidInput(format!("no standard basis element {ix}")))
}

/// Standard basis element C_{left, right} on the cell of lambda.
pub fn cell_element(
    lambda: &Partition,
    l: usize,
    left: (usize, usize),
    right: (usize, usize),
) -> Result<AlgebraElement> {
    let sb = StandardBasis::get(l);
    let k = cell_position(&sb, lambda, l, left, right)?;
    Ok(sb.entries[k].1.clone())
}

fn cell_word_sum(
    lambda: &Partition,
    l: usize,
    left: (usize, usize),
    right: (usize, usize),
) -> Result<WordSum> {
    let sb = StandardBasis::get(l);
    let k = cell_position(&sb, lambda, l, left, right)?;
    Ok(sb.word_sum(k))
}

/// The form beta_lambda, computed from products
/// `C_{a,(v,t)} C_{(w,s),b} = beta((v,t),(w,s)) C_{a,b}` modulo higher cells,
/// for the given outer indices a and b.
pub fn gram_matrix_with(
    lambda: &Partition,
    l: usize,
    a: (usize, usize),
    b: (usize, usize),
) -> Result<Matrix> {
    let ix = cell_indices(lambda, l)?;
    let n = ix.len();
    let lefts: Vec<AlgebraElement> = ix
        .iter()
        .map(|&r| cell_element(lambda, l, a, r))
        .collect::<Result<_>>()?;
    // Right factors as generator words: right multiplication is cheap, general products
    // are not.
    let rights: Vec<WordSum> = ix
        .iter()
        .map(|&r| cell_word_sum(lambda, l, r, b))
        .collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let vals: Vec<LaurentScalar> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let p = right_words(&lefts[i], &rights[j]);
            let mut out = LaurentScalar::zero();
            for (key, c) in reduce_mod(&p, lambda, l)? {
                if key != (a, b) {
                    return Err(Error::Falsified(format!(
                        "product of cell elements of {lambda} has a component at {key:?}"
                    )));
                }
                out = c;
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut g = zero_matrix(n, n);
    for (&(i, j), v) in pairs.iter().zip(vals) {
        g[i][j] = v;
    }
    Ok(g)
}

/// Gram matrix of C(lambda), indexed by I(lambda).
pub fn gram_matrix(lambda: &Partition, l: usize) -> Result<Matrix> {
    let m = StandardModule::get(lambda, l)?;
    gram_matrix_with(lambda, l, m.head, m.head)
}

/// |I(lambda)| minus the rank of the Gram matrix over Q(q).
pub fn radical_rank(lambda: &Partition, l: usize) -> Result<usize> {
    let g = gram_matrix(lambda, l)?;
    Ok(g.len() - rank(&g))
}

/// H_l-restriction of C(lambda) for lambda of size l - 2.
#[derive(Clone, Debug)]
pub struct RestrictionReport {
    pub lambda: Partition,
    pub l: usize,
    /// Each mu once, with dim S^mu.
    pub parts: Vec<(Partition, u128)>,
    pub module_dim: u128,
}

impl RestrictionReport {
    pub fn holds(&self) -> bool {
        self.parts.iter().map(|(_, d)| d).sum::<u128>() == self.module_dim
    }
}

/// mu obtained from lambda by adding two nodes, not both in one row.
pub fn restriction_dims(lambda: &Partition) -> RestrictionReport {
    let l = lambda.size() + 2;
    let parts = partitions(l)
        .into_iter()
        .filter(|mu| {
            let contains = (0..mu.parts.len().max(lambda.parts.len()))
                .all(|r| mu.part(r) >= lambda.part(r));
            let same_row = (0..mu.parts.len()).any(|r| mu.part(r) == lambda.part(r) + 2);
            contains && !same_row
        })
        .map(|mu| {
            let d = hook_dim(&mu);
            (mu, d)
        })
        .collect();
    RestrictionReport {
        lambda: lambda.clone(),
        l,
        parts,
        module_dim: coset_count(1, l) * hook_dim(lambda),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn path(ps: &[&str]) -> UpDownTableau {
        UpDownTableau::new(ps.iter().map(|s| p(s)).collect()).unwrap()
    }

    fn el(s: &str, l: usize) -> AlgebraElement {
        AlgebraElement::parse(s, l).unwrap()
    }

    fn scalar(s: &str) -> LaurentScalar {
        s.parse().unwrap()
    }

    #[test]
    fn murphy_examples() {
        let x2 = AlgebraElement::one(2).add(&el("T1", 2).scale(&LaurentScalar::q()));
        assert_eq!(murphy_element(&path(&["[]", "[1]", "[2]"])).unwrap(), x2);
        assert_eq!(
            murphy_element(&path(&["[]", "[1]", "[1,1]"])).unwrap(),
            AlgebraElement::one(2)
        );
        assert_eq!(murphy_element(&path(&["[]", "[1]", "[]"])).unwrap(), el("E1", 2));
    }

    #[test]
    fn murphy_forms_agree() {
        for l in 1..=4 {
            for lambda in crate::combin::sigma_plus(l) {
                for t in updown_tableaux(l, &lambda).unwrap() {
                    let a = murphy_element(&t).unwrap();
                    let b = murphy_element_recursive(&t, l).unwrap();
                    assert_eq!(a, b, "{t}");
                }
            }
        }
    }

    #[test]
    fn action_examples() {
        let l = 2;
        let m = action_matrix(&el("T1", l), &p("[2]"), l).unwrap();
        assert_eq!(m, vec![vec![LaurentScalar::q()]]);
        let m = action_matrix(&el("E1", l), &p("[]"), l).unwrap();
        assert_eq!(m, vec![vec![LaurentScalar::zero()]]);
        let m = action_matrix(&AlgebraElement::one(3), &p("[1]"), 3).unwrap();
        assert_eq!(m, crate::linalg::identity_matrix(3));
    }

    #[test]
    fn jm_examples() {
        let a = jm_action(2, &p("[2]"), 2).unwrap();
        assert_eq!(a.matrix, vec![vec![LaurentScalar::q()]]);
        let a = jm_action(2, &p("[1,1]"), 2).unwrap();
        assert_eq!(a.matrix, vec![vec![scalar("-q^-1")]]);
        let a = jm_action(1, &p("[1]"), 3).unwrap();
        assert!(a.matrix.iter().flatten().all(|x| x.is_zero()));
        for lambda in crate::combin::sigma_plus(3) {
            for i in 1..=3 {
                jm_action(i, &lambda, 3).unwrap();
            }
        }
    }

    #[test]
    fn branching_examples() {
        let b = branching_filtration(&p("[2]"), 2).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].mu, p("[1]"));
        assert!(b[0].holds());
        let b = branching_filtration(&p("[]"), 2).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].new_basis.len(), 1);
        let b = branching_filtration(&p("[1]"), 3).unwrap();
        let dims: Vec<usize> = b.iter().map(|x| x.new_basis.len()).collect();
        assert_eq!(dims, vec![1, 1, 1]);
        assert!(b.iter().all(|x| x.holds()));
    }

    #[test]
    fn gram_examples() {
        assert_eq!(gram_matrix(&p("[]"), 2).unwrap(), vec![vec![LaurentScalar::zero()]]);
        assert_eq!(radical_rank(&p("[]"), 2).unwrap(), 1);
        assert_eq!(gram_matrix(&p("[2]"), 2).unwrap(), vec![vec![scalar("q^2 + 1")]]);
        assert_eq!(radical_rank(&p("[2]"), 2).unwrap(), 0);
        assert_eq!(radical_rank(&p("[3]"), 3).unwrap(), 0);
    }

    #[test]
    fn gram_is_independent_of_outer_indices() {
        for l in 2..=3 {
            for lambda in crate::combin::sigma_plus(l) {
                let ix = cell_indices(&lambda, l).unwrap();
                let g = gram_matrix(&lambda, l).unwrap();
                for &a in &ix {
                    for &b in &ix {
                        assert_eq!(gram_matrix_with(&lambda, l, a, b).unwrap(), g);
                    }
                }
            }
        }
    }

    #[test]
    fn restriction_examples() {
        let r = restriction_dims(&p("[]"));
        assert_eq!(r.parts, vec![(p("[1,1]"), 1)]);
        assert!(r.holds());
        let r = restriction_dims(&p("[1]"));
        assert_eq!(r.parts, vec![(p("[2,1]"), 2), (p("[1,1,1]"), 1)]);
        assert!(r.holds());
        // (2,2) puts both new nodes in one row.
        let r = restriction_dims(&p("[2]"));
        assert_eq!(r.parts, vec![(p("[3,1]"), 3), (p("[2,1,1]"), 3)]);
        assert_eq!(r.module_dim, 6);
        assert!(r.holds());
    }
}
