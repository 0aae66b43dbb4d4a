//! Homomorphisms into the one-atom generator and membership by separation.
//!
//! Every member algebra embeds into a product of copies of the one-atom
//! full algebra, one coordinate per homomorphism. The embedding is
//! injective exactly when the homomorphisms separate every pair of
//! distinct same-sort elements, so membership in the class is decided by
//! enumerating all of them and checking separation — an algorithm
//! independent of the axiom checkers, which lets the two verify each
//! other.

use crate::algebra::{FiniteAlgebra, Kind, SortName};
use crate::error::{Error, Result};
use crate::rep::{ActionRep, BandRep, BiactionRep, SetRepresentation};
use crate::Limits;

/// One homomorphism into the one-atom generator.
///
/// Values are codomain indices: states map into {0,1}; action and band
/// operations map into the three pairs (1,0) < (0,0) < (1,1) as 0..3;
/// biaction operations map into {0,1} per sort.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hom {
    pub c: Vec<usize>,
    pub down: Vec<usize>,
    pub up: Vec<usize>,
}

/// The complete homomorphism set, in enumeration order.
#[derive(Debug, Clone)]
pub struct HomSet {
    pub kind: Kind,
    pub homs: Vec<Hom>,
}

/// A same-sort pair no homomorphism separates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unseparated {
    pub sort: SortName,
    pub a: String,
    pub b: String,
}

/// The outcome of the membership decision.
#[derive(Debug, Clone)]
pub enum Decision {
    Member(SetRepresentation),
    NotMember(Unseparated),
}

// The one-atom action table and band product, hard-wired: act(c, s) for
// s among (1,0), (0,0), (1,1), and x·y = x when y is the identity pair,
// else y.
fn act1(c: usize, s: usize) -> usize {
    match s {
        0 => c,
        1 => 0,
        _ => 1,
    }
}

fn band1(x: usize, y: usize) -> usize {
    if y == 0 {
        x
    } else {
        y
    }
}

/// The shape of one backtracking problem: per-variable domain sizes plus
/// a table-consistency check run when variable `k` gets a value.
struct Search<'a> {
    radix: Vec<usize>,
    alg: &'a FiniteAlgebra,
}

impl Search<'_> {
    fn consistent(&self, values: &[usize], k: usize) -> bool {
        match self.alg {
            FiniteAlgebra::Action(a) => {
                let n = a.c_len();
                if k < n {
                    return true;
                }
                let s = k - n;
                (0..n).all(|c| values[a.act(c, s)] == act1(values[c], values[k]))
            }
            FiniteAlgebra::Biaction(b) => {
                let n = b.c_len();
                let m = b.sdown_len();
                if k < n {
                    true
                } else if k < n + m {
                    let s = k - n;
                    (0..n).all(|c| values[b.act_down(c, s)] == (values[c] & values[k]))
                } else {
                    let t = k - n - m;
                    (0..n).all(|c| values[b.act_up(c, t)] == (values[c] | values[k]))
                }
            }
            FiniteAlgebra::SetBand(band) => {
                // Check every product whose arguments and result are all
                // assigned and which involves the new variable.
                for p in 0..=k {
                    for q in 0..=k {
                        let pq = band.mul(p, q);
                        if pq <= k && (p == k || q == k || pq == k) {
                            if values[pq] != band1(values[p], values[q]) {
                                return false;
                            }
                        }
                    }
                }
                true
            }
        }
    }
}

/// Enumerates every homomorphism into the one-atom generator.
///
/// Backtracking assigns states first and operations after, each sort in
/// element order with codomain values tried ascending, so the output
/// order is lexicographic. Each attempted assignment counts one node
/// against the configured cap.
pub fn enumerate_homs(alg: &FiniteAlgebra, limits: &Limits) -> Result<HomSet> {
    let radix = match alg {
        FiniteAlgebra::Action(a) => {
            let mut r = vec![2; a.c_len()];
            r.extend(std::iter::repeat(3).take(a.s_len()));
            r
        }
        FiniteAlgebra::Biaction(b) => vec![2; b.c_len() + b.sdown_len() + b.sup_len()],
        FiniteAlgebra::SetBand(band) => vec![3; band.s_len()],
    };
    let search = Search { radix, alg };
    let mut values = vec![0; search.radix.len()];
    let mut homs = Vec::new();
    let mut nodes: u64 = 0;
    complete(&search, &mut values, 0, &mut nodes, limits, &mut homs)?;
    let split = |values: &[usize]| -> Hom {
        match alg {
            FiniteAlgebra::Action(a) => Hom {
                c: values[..a.c_len()].to_vec(),
                down: values[a.c_len()..].to_vec(),
                up: Vec::new(),
            },
            FiniteAlgebra::Biaction(b) => {
                let (n, m) = (b.c_len(), b.sdown_len());
                Hom {
                    c: values[..n].to_vec(),
                    down: values[n..n + m].to_vec(),
                    up: values[n + m..].to_vec(),
                }
            }
            FiniteAlgebra::SetBand(_) => {
                Hom { c: Vec::new(), down: values.to_vec(), up: Vec::new() }
            }
        }
    };
    Ok(HomSet { kind: alg.kind(), homs: homs.iter().map(|v| split(v)).collect() })
}

fn complete(
    search: &Search,
    values: &mut Vec<usize>,
    k: usize,
    nodes: &mut u64,
    limits: &Limits,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    if k == search.radix.len() {
        out.push(values.clone());
        return Ok(());
    }
    for value in 0..search.radix[k] {
        *nodes += 1;
        if *nodes > limits.max_hom_nodes {
            return Err(Error::LimitExceeded {
                what: "homomorphism search nodes",
                size: *nodes,
                cap: limits.max_hom_nodes,
            });
        }
        values[k] = value;
        if search.consistent(values, k) {
            complete(search, values, k + 1, nodes, limits, out)?;
        }
    }
    values[k] = 0;
    Ok(())
}

fn first_unseparated(alg: &FiniteAlgebra, homs: &[Hom]) -> Option<Unseparated> {
    let scan = |sort: SortName, labels: &[String], get: &dyn Fn(&Hom, usize) -> usize| {
        for i in 0..labels.len() {
            for j in i + 1..labels.len() {
                if homs.iter().all(|h| get(h, i) == get(h, j)) {
                    return Some(Unseparated {
                        sort,
                        a: labels[i].clone(),
                        b: labels[j].clone(),
                    });
                }
            }
        }
        None
    };
    match alg {
        FiniteAlgebra::Action(a) => scan(SortName::C, a.c_labels(), &|h, i| h.c[i])
            .or_else(|| scan(SortName::S, a.s_labels(), &|h, i| h.down[i])),
        FiniteAlgebra::Biaction(b) => scan(SortName::C, b.c_labels(), &|h, i| h.c[i])
            .or_else(|| scan(SortName::SDown, b.sdown_labels(), &|h, i| h.down[i]))
            .or_else(|| scan(SortName::SUp, b.sup_labels(), &|h, i| h.up[i])),
        FiniteAlgebra::SetBand(band) => scan(SortName::S, band.s_labels(), &|h, i| h.down[i]),
    }
}

/// Decides membership and, for members, builds the canonical embedding
/// into the product of one-atom algebras indexed by the homomorphisms.
///
/// The universe has one atom `hom:<k>` per homomorphism; a state's set
/// collects the homomorphisms sending it to 1, and an operation's pair
/// collects those whose value meets (down) or equals (up) the top pair.
/// Non-members are reported through the first unseparated same-sort pair,
/// states before operations, in index order.
pub fn canonical_representation(alg: &FiniteAlgebra, limits: &Limits) -> Result<Decision> {
    let hom_set = enumerate_homs(alg, limits)?;
    let homs = &hom_set.homs;
    if let Some(unseparated) = first_unseparated(alg, homs) {
        return Ok(Decision::NotMember(unseparated));
    }
    let universe: Vec<String> = (0..homs.len()).map(|k| format!("hom:{k}")).collect();
    let nbits = homs.len();
    let collect = |pred: &dyn Fn(&Hom) -> bool| -> crate::atomset::AtomSet {
        crate::atomset::AtomSet::from_indices(
            nbits,
            homs.iter().enumerate().filter(|(_, h)| pred(h)).map(|(k, _)| k),
        )
    };
    let rep = match alg {
        FiniteAlgebra::Action(a) => {
            let c_sets =
                (0..a.c_len()).map(|c| collect(&|h: &Hom| h.c[c] == 1)).collect::<Vec<_>>();
            let s_pairs = (0..a.s_len())
                .map(|s| {
                    (collect(&|h: &Hom| h.down[s] != 1), collect(&|h: &Hom| h.down[s] == 2))
                })
                .collect::<Vec<_>>();
            ActionRep::from_sets(
                universe,
                a.c_labels().to_vec(),
                c_sets,
                a.s_labels().to_vec(),
                s_pairs,
                false,
            )?
            .into()
        }
        FiniteAlgebra::Biaction(b) => {
            let c_sets =
                (0..b.c_len()).map(|c| collect(&|h: &Hom| h.c[c] == 1)).collect::<Vec<_>>();
            let down_sets = (0..b.sdown_len())
                .map(|s| collect(&|h: &Hom| h.down[s] == 1))
                .collect::<Vec<_>>();
            let up_sets =
                (0..b.sup_len()).map(|t| collect(&|h: &Hom| h.up[t] == 1)).collect::<Vec<_>>();
            BiactionRep::from_sets(
                universe,
                b.c_labels().to_vec(),
                c_sets,
                b.sdown_labels().to_vec(),
                down_sets,
                b.sup_labels().to_vec(),
                up_sets,
            )?
            .into()
        }
        FiniteAlgebra::SetBand(band) => {
            let s_pairs = (0..band.s_len())
                .map(|x| {
                    (collect(&|h: &Hom| h.down[x] != 1), collect(&|h: &Hom| h.down[x] == 2))
                })
                .collect::<Vec<_>>();
            BandRep::from_sets(universe, band.s_labels().to_vec(), s_pairs)?.into()
        }
    };
    Ok(Decision::Member(rep))
}

/// Thin wrapper: membership is success of the canonical embedding.
pub fn is_member(alg: &FiniteAlgebra, limits: &Limits) -> Result<bool> {
    Ok(matches!(canonical_representation(alg, limits)?, Decision::Member(_)))
}
