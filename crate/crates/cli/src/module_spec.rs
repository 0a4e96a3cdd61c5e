//! Module syntax: `+` separates summands, `;` separates the factors of a
//! summand (one per group factor, tensored together). A factor is a label
//! list `a,b`, `sym:d` or `ext:k` of the standard representation, each with an
//! optional `-dual` suffix.

use nullstrat_core::repchar::irr_character;
use nullstrat_core::{CharacterMultiset, GroupShape, IrrLabel};

use crate::CliError;

pub fn parse_group(s: &str) -> Result<GroupShape, CliError> {
    s.parse().map_err(|e| CliError::Malformed(format!("group `{s}`: {e}")))
}

pub fn parse_module(shape: &GroupShape, s: &str) -> Result<CharacterMultiset, CliError> {
    let mut total: Option<CharacterMultiset> = None;
    for term in s.split('+') {
        let pieces: Vec<&str> = term.split(';').map(str::trim).collect();
        if pieces.len() != shape.factors().len() {
            return Err(CliError::Malformed(format!(
                "summand `{term}` has {} factors, {shape} has {}",
                pieces.len(),
                shape.factors().len()
            )));
        }
        let mut acc = CharacterMultiset::trivial(shape);
        for (t, piece) in pieces.iter().enumerate() {
            acc = acc.tensor(&factor_character(shape, t, piece)?)?;
        }
        total = Some(match total {
            None => acc,
            Some(m) => m.direct_sum(&acc)?,
        });
    }
    total.ok_or_else(|| CliError::Malformed("empty module".into()))
}

fn factor_character(shape: &GroupShape, factor: usize, piece: &str) -> Result<CharacterMultiset, CliError> {
    let (body, dual) = match piece.strip_suffix("-dual") {
        Some(b) => (b.trim(), true),
        None => (piece, false),
    };
    let number = |t: &str| t.trim().parse::<usize>().map_err(|_| CliError::Malformed(format!("bad number in `{piece}`")));
    let ch = if let Some(d) = body.strip_prefix("sym:") {
        CharacterMultiset::standard(shape, factor)?.sym_power(number(d)?)
    } else if let Some(k) = body.strip_prefix("ext:") {
        CharacterMultiset::standard(shape, factor)?.ext_power(number(k)?)
    } else {
        let n = shape.factors()[factor];
        let own = body
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| CliError::Malformed(format!("bad label `{piece}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        if own.len() != n - 1 {
            return Err(CliError::Malformed(format!("label `{body}` needs {} entries for SL{n}", n - 1)));
        }
        let labels = shape.factors().iter().enumerate().map(|(t, &m)| if t == factor { own.clone() } else { vec![0; m - 1] }).collect();
        irr_character(&IrrLabel::new(shape, labels)?)
    };
    Ok(if dual { ch.dual() } else { ch })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nullstrat_core::repchar::weyl_dim;

    #[test]
    fn labels_and_duals() {
        let sl3 = parse_group("SL3").unwrap();
        let m = parse_module(&sl3, "0,4").unwrap();
        assert_eq!(m, irr_character(&IrrLabel::sl3(0, 4)));
        assert_eq!(parse_module(&sl3, "0,4-dual").unwrap(), irr_character(&IrrLabel::sl3(4, 0)));
        assert_eq!(parse_module(&sl3, "sym:4").unwrap(), irr_character(&IrrLabel::sl3(4, 0)));
        assert_eq!(parse_module(&sl3, "ext:2").unwrap(), irr_character(&IrrLabel::sl3(0, 1)));
        assert_eq!(parse_module(&sl3, "1,0 + 0,1").unwrap().dim(), 6);
    }

    #[test]
    fn products() {
        let g = parse_group("SL4 x SL2").unwrap();
        let m = parse_module(&g, "1,0,0-dual; 1").unwrap();
        assert_eq!(m.dim(), 8);
        let e = IrrLabel::from_factors(vec![vec![0, 0, 1], vec![1]]).unwrap();
        assert_eq!(m, irr_character(&e));
        assert_eq!(weyl_dim(&e), 8);
    }

    #[test]
    fn malformed() {
        let sl3 = parse_group("SL3").unwrap();
        for bad in ["0,4,1", "a,b", "sym:x", "0,4; 1,0", ""] {
            assert!(parse_module(&sl3, bad).is_err(), "{bad}");
        }
        assert!(parse_group("GL3").is_err());
    }
}
