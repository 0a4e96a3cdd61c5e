use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::repchar::{center_character, weyl_dim, IrrLabel, TensorProbe};

/// Whether `O(1) (x) O(k)` on `P(V) x P(U)` can carry a `PGL_3`-linearization
/// for some `k`: the center acts through `class(V) + k class(U)` (mod 3).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Linearization {
    pub class_v: u32,
    pub class_u: u32,
    /// Twists `k mod 3` making the center act trivially.
    pub admissible_twists: Vec<u32>,
    pub obstructed: bool,
}

impl Linearization {
    fn new(v: &IrrLabel, u: &IrrLabel) -> Self {
        let class_v = center_character(v)[0];
        let class_u = center_character(u)[0];
        let admissible_twists: Vec<u32> = (0..3).filter(|k| (class_v + k * class_u) % 3 == 0).collect();
        Linearization { class_v, class_u, obstructed: admissible_twists.is_empty(), admissible_twists }
    }
}

/// `V` inside `Hom(U, W_1 + ... + W_r)` with `dim U = dim W + 1` and
/// `dim P(V) > dim P(U)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoubleBundleCandidate {
    pub v: IrrLabel,
    pub u: IrrLabel,
    pub w: Vec<IrrLabel>,
    pub dim_v: u64,
    pub dim_u: u64,
    pub dim_w: Vec<u64>,
    /// Multiplicity of `V` in `U* (x) W_i`, per summand.
    pub hom_multiplicities: Vec<u64>,
    pub linearization: Linearization,
}

/// SL3 labels of dimension at most `cap`, sorted by dimension then label.
fn labels_up_to(cap: u64) -> Vec<(u64, IrrLabel)> {
    let mut out = Vec::new();
    for a in 0u32.. {
        if weyl_dim(&IrrLabel::sl3(a, 0)) > cap {
            break;
        }
        for b in 0u32.. {
            let l = IrrLabel::sl3(a, b);
            let d = weyl_dim(&l);
            if d > cap {
                break;
            }
            out.push((d, l));
        }
    }
    out.sort();
    out
}

/// Multisets of at most `slots` labels (indices non-decreasing from `start`)
/// whose dimensions add up to `target`.
fn dimension_splits(labels: &[(u64, IrrLabel)], target: u64, slots: usize, start: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if target == 0 {
        if !prefix.is_empty() {
            out.push(prefix.clone());
        }
        return;
    }
    if slots == 0 {
        return;
    }
    for i in start..labels.len() {
        let d = labels[i].0;
        if d > target {
            break;
        }
        prefix.push(i);
        dimension_splits(labels, target - d, slots - 1, i, prefix, out);
        prefix.pop();
    }
}

/// Searches SL3 labels `U` with `dim U <= dim_cap` and multisets `W` of at most
/// `w_max` irreducibles for the dimension and multiplicity conditions of the
/// double bundle method, and attaches the linearization verdict.
pub fn double_bundle_search(v: &IrrLabel, w_max: usize, dim_cap: u64) -> Result<Vec<DoubleBundleCandidate>> {
    if v.shape().factors() != [3] {
        return Err(Error::Inapplicable(format!("{v} is not an SL3 label")));
    }
    let dim_v = weyl_dim(v);
    let labels = labels_up_to(dim_cap);
    let probe = TensorProbe::new(v);
    let mut found: Vec<DoubleBundleCandidate> = labels
        .par_iter()
        .filter(|(d, _)| *d >= 2 && *d < dim_v)
        .flat_map_iter(|(dim_u, u)| {
            let mut splits = Vec::new();
            dimension_splits(&labels, dim_u - 1, w_max, 0, &mut Vec::new(), &mut splits);
            // V in U* (x) W_i  iff  W_i in U (x) V
            let mut cache = std::collections::HashMap::new();
            let mut local = Vec::new();
            for split in splits {
                let mults: Vec<u64> =
                    split.iter().map(|&i| *cache.entry(i).or_insert_with(|| probe.multiplicity(&labels[i].1, u))).collect();
                if mults.iter().all(|&m| m >= 1) {
                    local.push(DoubleBundleCandidate {
                        v: v.clone(),
                        u: u.clone(),
                        w: split.iter().map(|&i| labels[i].1.clone()).collect(),
                        dim_v,
                        dim_u: *dim_u,
                        dim_w: split.iter().map(|&i| labels[i].0).collect(),
                        hom_multiplicities: mults,
                        linearization: Linearization::new(v, u),
                    });
                }
            }
            local
        })
        .collect();
    found.sort_by(|a, b| (a.dim_u, &a.u, &a.w).cmp(&(b.dim_u, &b.u, &b.w)));
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_enumeration() {
        let l = labels_up_to(10);
        let dims: Vec<u64> = l.iter().map(|(d, _)| *d).collect();
        assert_eq!(dims, vec![1, 3, 3, 6, 6, 8, 10, 10]);
    }

    #[test]
    fn linearization_classes() {
        let lin = Linearization::new(&IrrLabel::sl3(0, 34), &IrrLabel::sl3(30, 0));
        assert_eq!((lin.class_v, lin.class_u), (2, 0));
        assert!(lin.obstructed);
        let ok = Linearization::new(&IrrLabel::sl3(0, 34), &IrrLabel::sl3(1, 0));
        assert_eq!(ok.admissible_twists, vec![1]);
    }

    #[test]
    fn small_search_is_consistent() {
        let found = double_bundle_search(&IrrLabel::sl3(0, 6), 2, 30).unwrap();
        for c in &found {
            assert_eq!(c.dim_u, c.dim_w.iter().sum::<u64>() + 1);
            assert!(c.dim_v > c.dim_u);
            assert!(c.hom_multiplicities.iter().all(|&m| m >= 1));
        }
        assert!(double_bundle_search(&IrrLabel::sl2(4), 2, 30).is_err());
    }

    #[test]
    fn v0_34_has_one_candidate() {
        let found = double_bundle_search(&IrrLabel::sl3(0, 34), 2, 640).unwrap();
        let summary: Vec<String> = found.iter().map(|c| format!("{} -> {:?}", c.u, c.w.iter().map(|w| w.to_string()).collect::<Vec<_>>())).collect();
        assert_eq!(found.len(), 1, "{summary:?}");
        let c = &found[0];
        assert_eq!(c.u, IrrLabel::sl3(30, 0));
        assert_eq!(c.w, vec![IrrLabel::sl3(0, 4), IrrLabel::sl3(5, 9)]);
        assert_eq!((c.dim_u, c.dim_w.clone()), (496, vec![15, 480]));
        assert!(c.linearization.obstructed);
    }
}
