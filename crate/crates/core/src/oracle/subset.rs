use super::OracleError;

const LIMIT: usize = 24;

/// Whether some subset of `items` sums to `target`, by enumerating all subsets.
pub fn subset_sum_bruteforce(items: &[u64], target: u64) -> Result<bool, OracleError> {
    if items.len() > LIMIT {
        return Err(OracleError::Guard {
            limit: LIMIT,
            got: items.len(),
        });
    }
    Ok((0u32..1 << items.len()).any(|mask| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &a)| a)
            .sum::<u64>()
            == target
    }))
}
