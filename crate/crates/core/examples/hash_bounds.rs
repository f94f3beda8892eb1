//! Security bounds for keyed hash properties against an adversary mixing
//! classical and quantum oracle queries.

use dsearch::crypto::{hash_bound, ow_reduction_sd_bound, HashProperty, HashSecurityParams};
use dsearch::QueryBudget;

pub fn run_example() {
    let params = HashSecurityParams {
        n: 128,
        m_in: 256,
        k: 128,
        p: 1.0,
        budget: QueryBudget::new(1 << 20, 1 << 10),
    };
    for property in HashProperty::ALL {
        let b = hash_bound(property, &params).unwrap();
        println!(
            "{:>6}: log2 bound {:9.3}, clamped {:.3e}",
            property.name(),
            b.log2_raw,
            b.clamped
        );
    }
    println!(
        "one-wayness reduction distance: {:.3e}",
        ow_reduction_sd_bound(128, 256)
    );
}

fn main() {
    run_example();
}
