//! Catalog selectors: a label (`P1`, `(P1,S2)_f`), a dimension vector
//! (`dim:1,1`), or both (`dim:1,1/P1`).

use qrep::subcat::Subcategory;
use qrep::IndecCatalog;

use crate::CliError;

fn parse_dims(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|d| {
            d.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Selector(format!("bad dimension vector `{text}`")))
        })
        .collect()
}

pub fn resolve_one(cat: &IndecCatalog, sel: &str) -> Result<usize, CliError> {
    let (dims, label) = match sel.strip_prefix("dim:") {
        Some(rest) => match rest.split_once('/') {
            Some((d, l)) => (Some(parse_dims(d)?), Some(l)),
            None => (Some(parse_dims(rest)?), None),
        },
        None => (None, Some(sel)),
    };
    let hits: Vec<usize> = (0..cat.len())
        .filter(|&i| {
            dims.as_ref()
                .is_none_or(|d| cat.item(i).dims() == d.as_slice())
        })
        .filter(|&i| label.is_none_or(|l| cat.label(i) == l))
        .collect();
    match hits.as_slice() {
        [i] => Ok(*i),
        [] => Err(CliError::Selector(format!(
            "`{sel}` matches no catalog item"
        ))),
        _ => Err(CliError::Selector(format!(
            "`{sel}` is ambiguous ({} matches)",
            hits.len()
        ))),
    }
}

pub fn resolve(cat: &IndecCatalog, sels: &[String]) -> Result<Subcategory, CliError> {
    Ok(Subcategory::new(
        sels.iter()
            .map(|s| resolve_one(cat, s))
            .collect::<Result<Vec<_>, _>>()?,
    ))
}
