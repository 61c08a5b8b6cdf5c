use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::OnceLock;

use crate::arith::lcm;
use crate::error::{Error, Result};

/// A finite group given by its multiplication table. Element 0 is the
/// identity.
#[derive(Debug)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    element_orders: Vec<u64>,
    subgroups: OnceLock<Vec<Subgroup>>,
}

/// A subgroup as a sorted list of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    /// Position of `g` within `elements()`.
    pub fn position(&self, g: usize) -> Option<usize> {
        self.elements.binary_search(&g).ok()
    }
}

impl FiniteGroup {
    /// Validates the group axioms. The identity may be any element; the
    /// table is relabelled so that it becomes element 0.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if table
            .iter()
            .any(|row| row.len() != n || row.iter().any(|&x| x >= n))
        {
            return Err(Error::InvalidGroup("table is not n x n over 0..n".into()));
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        for a in 0..n {
            if !(0..n).any(|b| table[a][b] == e) {
                return Err(Error::InvalidGroup(format!("element {a} has no inverse")));
            }
        }
        // swap labels e <-> 0
        let relabel = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut t = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                t[relabel(a)][relabel(b)] = relabel(table[a][b]);
            }
        }
        Ok(Self::from_valid_table(t))
    }

    /// The group generated by permutations of {0, ..., d−1}; elements are
    /// numbered in breadth-first order from the identity.
    pub fn from_permutations(generators: &[Vec<usize>]) -> Result<Self> {
        let degree = generators.iter().map(Vec::len).max().unwrap_or(0);
        let pad = |p: &Vec<usize>| {
            let mut q = p.clone();
            q.extend(p.len()..degree);
            q
        };
        let gens: Vec<Vec<usize>> = generators.iter().map(pad).collect();
        for g in &gens {
            let set: BTreeSet<_> = g.iter().collect();
            if set.len() != degree || g.iter().any(|&x| x >= degree) {
                return Err(Error::InvalidGroup(format!("not a permutation: {g:?}")));
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &gens {
                // apply g after elements[i]
                let p: Vec<usize> = elements[i].iter().map(|&x| g[x]).collect();
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
            if elements.len() > 100_000 {
                return Err(Error::InvalidGroup("permutation group too large".into()));
            }
        }
        let n = elements.len();
        let mut table = vec![vec![0; n]; n];
        for (a, pa) in elements.iter().enumerate() {
            for (b, pb) in elements.iter().enumerate() {
                // product a·b means "apply b, then a"
                let p: Vec<usize> = pb.iter().map(|&x| pa[x]).collect();
                table[a][b] = index[&p];
            }
        }
        Ok(Self::from_valid_table(table))
    }

    fn from_valid_table(table: Vec<Vec<usize>>) -> Self {
        let n = table.len();
        let inverse: Vec<usize> = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == 0).expect("validated"))
            .collect();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if class_of[g] != usize::MAX {
                continue;
            }
            let mut class: Vec<usize> = (0..n)
                .map(|x| table[table[x][g]][inverse[x]])
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            class.sort_unstable();
            for &h in &class {
                class_of[h] = classes.len();
            }
            classes.push(class);
        }
        let element_orders = (0..n)
            .map(|g| {
                let mut x = g;
                let mut k = 1;
                while x != 0 {
                    x = table[x][g];
                    k += 1;
                }
                k
            })
            .collect();
        FiniteGroup {
            table,
            inverse,
            classes,
            class_of,
            element_orders,
            subgroups: OnceLock::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn element_order(&self, g: usize) -> u64 {
        self.element_orders[g]
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        self.element_orders.iter().fold(1, |acc, &o| lcm(acc, o))
    }

    /// Conjugacy classes, ordered by smallest member; class 0 is {e}.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.order()
    }

    /// Smallest subgroup containing `generators`.
    pub fn closure(&self, generators: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut elems = vec![0usize];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &g in generators {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        Subgroup { elements: elems }
    }

    /// Validates that `elements` form a subgroup.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Subgroup> {
        let set: BTreeSet<usize> = elements.iter().copied().collect();
        if !set.contains(&0) {
            return Err(Error::InvalidGroup(
                "subgroup must contain the identity".into(),
            ));
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&self.mul(a, b)) {
                    return Err(Error::InvalidGroup("subset is not closed".into()));
                }
            }
        }
        Ok(Subgroup {
            elements: set.into_iter().collect(),
        })
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            elements: (0..self.order()).collect(),
        }
    }

    /// Every subgroup, sorted by order descending and then by element list.
    pub fn subgroups(&self) -> &[Subgroup] {
        self.subgroups.get_or_init(|| {
            let cyclic: BTreeSet<Subgroup> =
                (0..self.order()).map(|g| self.closure(&[g])).collect();
            let mut all: BTreeSet<Subgroup> = cyclic.clone();
            let mut frontier: Vec<Subgroup> = all.iter().cloned().collect();
            while !frontier.is_empty() {
                let mut next = Vec::new();
                for h in &frontier {
                    for c in &cyclic {
                        if c.elements.iter().all(|&x| h.contains(x)) {
                            continue;
                        }
                        let gens: Vec<usize> =
                            h.elements.iter().chain(&c.elements).copied().collect();
                        let j = self.closure(&gens);
                        if all.insert(j.clone()) {
                            next.push(j);
                        }
                    }
                }
                frontier = next;
            }
            let mut out: Vec<Subgroup> = all.into_iter().collect();
            out.sort_by(|a, b| b.order().cmp(&a.order()).then_with(|| a.cmp(b)));
            out
        })
    }

    /// Commutator subgroup of `h`.
    pub fn derived_subgroup(&self, h: &Subgroup) -> Subgroup {
        let mut comms = BTreeSet::new();
        for &x in h.elements() {
            for &y in h.elements() {
                let c = self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y)));
                comms.insert(c);
            }
        }
        let gens: Vec<usize> = comms.into_iter().collect();
        self.closure(&gens)
    }
}

/// Parse cycle notation on 1-based points, e.g. "(1 2 3)(4 5)".
pub fn parse_cycles(line: &str) -> Result<Vec<usize>> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = line.trim();
    while !rest.is_empty() {
        let open = rest
            .find('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in `{line}`")))?;
        let close = rest[open..]
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed cycle in `{line}`")))?
            + open;
        let inner = &rest[open + 1..close];
        let pts = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| match t.parse::<usize>() {
                Ok(p) if p >= 1 => Ok(p - 1),
                _ => Err(Error::Parse(format!("bad point `{t}` in `{line}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        cycles.push(pts);
        rest = rest[close + 1..].trim();
    }
    let degree = cycles.iter().flatten().map(|&p| p + 1).max().unwrap_or(0);
    let mut perm: Vec<usize> = (0..degree).collect();
    let mut touched = BTreeSet::new();
    for cyc in &cycles {
        for (i, &p) in cyc.iter().enumerate() {
            if !touched.insert(p) {
                return Err(Error::Parse(format!(
                    "point {} repeated in `{line}`",
                    p + 1
                )));
            }
            perm[p] = cyc[(i + 1) % cyc.len()];
        }
    }
    Ok(perm)
}

/// Parse the plain-text group format: a header `order n`, then either
/// `table` followed by n rows of n indices, or `perm` followed by one
/// generator per line in cycle notation. Blank lines and `#` comments are
/// ignored. Table entries may be 0-based or 1-based.
pub fn parse_group(text: &str) -> Result<FiniteGroup> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty group file".into()))?;
    let mut words = header.split_whitespace();
    if words.next() != Some("order") {
        return Err(Error::Parse(format!(
            "expected `order n`, found `{header}`"
        )));
    }
    let n: usize = words
        .next()
        .and_then(|w| w.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad order line `{header}`")))?;
    let kind = lines
        .next()
        .ok_or_else(|| Error::Parse("missing `table` or `perm`".into()))?;
    let group = match kind {
        "table" => {
            let rows: Vec<Vec<usize>> = lines
                .map(|l| {
                    l.split_whitespace()
                        .map(|t| {
                            t.parse::<usize>()
                                .map_err(|_| Error::Parse(format!("bad entry `{t}`")))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?;
            if rows.len() != n {
                return Err(Error::Parse(format!(
                    "expected {n} table rows, found {}",
                    rows.len()
                )));
            }
            let one_based =
                rows.iter().flatten().all(|&x| x >= 1) && rows.iter().flatten().any(|&x| x == n);
            let rows = if one_based {
                rows.into_iter()
                    .map(|r| r.into_iter().map(|x| x - 1).collect())
                    .collect()
            } else {
                rows
            };
            FiniteGroup::from_table(rows)?
        }
        "perm" => {
            let gens: Vec<Vec<usize>> = lines.map(parse_cycles).collect::<Result<_>>()?;
            FiniteGroup::from_permutations(&gens)?
        }
        other => {
            return Err(Error::Parse(format!(
                "expected `table` or `perm`, found `{other}`"
            )))
        }
    };
    if group.order() != n {
        return Err(Error::Parse(format!(
            "header says order {n} but the group has order {}",
            group.order()
        )));
    }
    Ok(group)
}

/// Small groups used by tests and the bundled corpus.
pub mod examples {
    use super::*;

    fn perms(lines: &[&str]) -> FiniteGroup {
        let gens: Vec<Vec<usize>> = lines
            .iter()
            .map(|l| parse_cycles(l).expect("valid"))
            .collect();
        FiniteGroup::from_permutations(&gens).expect("valid")
    }

    pub fn cyclic(n: usize) -> FiniteGroup {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteGroup::from_table(table).expect("valid")
    }

    pub fn s3() -> FiniteGroup {
        perms(&["(1 2 3)", "(1 2)"])
    }

    pub fn d4() -> FiniteGroup {
        perms(&["(1 2 3 4)", "(1 3)"])
    }

    pub fn q8() -> FiniteGroup {
        perms(&["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"])
    }

    pub fn a4() -> FiniteGroup {
        perms(&["(1 2 3)", "(1 2)(3 4)"])
    }

    pub fn s4() -> FiniteGroup {
        perms(&["(1 2 3 4)", "(1 2)"])
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    fn class_sizes(g: &FiniteGroup) -> Vec<usize> {
        let mut s: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    }

    #[test]
    fn conjugacy_class_examples() {
        let c4 = cyclic(4);
        assert_eq!(c4.conjugacy_classes().len(), 4);
        assert!(c4.conjugacy_classes().iter().all(|c| c.len() == 1));
        assert_eq!(class_sizes(&s3()), vec![1, 2, 3]);
        assert_eq!(q8().order(), 8);
        assert_eq!(class_sizes(&q8()), vec![1, 1, 2, 2, 2]);
        assert_eq!(class_sizes(&d4()), vec![1, 1, 2, 2, 2]);
        assert_eq!(class_sizes(&a4()), vec![1, 3, 4, 4]);
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(s3().subgroups().len(), 6);
        assert_eq!(d4().subgroups().len(), 10);
        assert_eq!(q8().subgroups().len(), 6);
        assert_eq!(a4().subgroups().len(), 10);
        assert_eq!(s4().subgroups().len(), 30);
        assert_eq!(cyclic(12).subgroups().len(), 6);
        let s4 = s4();
        let subs = s4.subgroups();
        assert_eq!(subs[0].order(), 24);
        assert_eq!(subs.last().unwrap().order(), 1);
    }

    #[test]
    fn derived_subgroups() {
        assert_eq!(s3().derived_subgroup(&s3().whole()).order(), 3);
        assert_eq!(q8().derived_subgroup(&q8().whole()).order(), 2);
        assert_eq!(a4().derived_subgroup(&a4().whole()).order(), 4);
    }

    #[test]
    fn parse_formats() {
        let g = parse_group("# S3\norder 6\nperm\n(1 2 3)\n(1 2)\n").unwrap();
        assert_eq!(g.order(), 6);
        let t = parse_group("order 2\ntable\n 1 2\n2 1\n").unwrap();
        assert_eq!(t.order(), 2);
        let t0 = parse_group("order 3\ntable\n0 1 2\n1 2 0\n2 0 1\n").unwrap();
        assert!(t0.is_abelian());
        assert!(parse_group("order 5\nperm\n(1 2 3)\n").is_err());
        assert!(parse_group("order 2\ntable\n0 0\n0 0\n").is_err());
        assert!(parse_group("size 2").is_err());
        assert!(parse_cycles("(1 2)(2 3)").is_err());
    }

    #[test]
    fn relabels_identity() {
        // identity given as element 1
        let g = FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.mul(0, 0), 0);
        assert_eq!(g.inv(1), 1);
    }
}
