//! Minimal transversals (hitting sets) of a family of vertex sets, by
//! incremental Berge multiplication with minimality pruning. This is the
//! engine behind minimal nonfaces, Stanley-Reisner generators and the
//! facets of a complex recovered from a squarefree ideal.

/// Minimal transversals of `supports` (bitmask sets). The transversals of an
/// empty family consist of the empty set alone; if some support is empty
/// there is no transversal at all.
pub fn minimal_transversals(supports: &[u32]) -> Vec<u32> {
    let mut current: Vec<u32> = vec![0];
    // processing larger supports last keeps intermediate families small
    let mut sorted: Vec<u32> = supports.to_vec();
    sorted.sort_by_key(|s| s.count_ones());
    for s in sorted {
        if s == 0 {
            return vec![];
        }
        let mut next: Vec<u32> = Vec::with_capacity(current.len());
        let mut extended: Vec<u32> = Vec::new();
        for t in &current {
            if t & s != 0 {
                next.push(*t);
            } else {
                let mut rest = s;
                while rest != 0 {
                    let v = rest & rest.wrapping_neg();
                    rest &= rest - 1;
                    extended.push(t | v);
                }
            }
        }
        // keep only minimal extended sets (next entries are minimal among
        // themselves already, and no extended set can sit below a next entry)
        extended.sort_by_key(|t| t.count_ones());
        for e in extended {
            if next.iter().all(|t| t & !e != 0 || *t == e)
                && !next.contains(&e)
            {
                next.push(e);
            }
        }
        current = next;
    }
    current.sort_unstable();
    current.dedup();
    current
}
