use super::report::CheckReport;
use crate::genus::{narrow_genus, select_i0, GenusInstance};

/// For `J = E_i` and `F = E_j`: whenever `e_{P_i}(J) ≤ e_{P_j}(F)` and
/// `1 < e_∞(J)` with `e_∞(F) ≤ e_∞(J)`, then `ν_ℓ(deg P_i) ≤ ν_ℓ(deg P_j)`.
/// Also checks `d_j ≥ d_{i0}` for `j < i0` when `m > t`.
pub fn check_prop31(inst: &GenusInstance) -> CheckReport {
    let space = inst.space();
    let fields = narrow_genus(inst);
    let mut pairs = 0usize;
    let mut bad = Vec::new();
    for (ji, j_field) in fields.iter().enumerate() {
        let pi = &inst.primes()[ji];
        let e_p = space.ram_index_finite(j_field, pi.prime.index);
        let e_inf_j = space.ram_index_infinity(j_field);
        if e_inf_j <= 1 {
            continue;
        }
        for (fi, f_field) in fields.iter().enumerate() {
            if fi == ji {
                continue;
            }
            let pq = &inst.primes()[fi];
            let e_q = space.ram_index_finite(f_field, pq.prime.index);
            if e_p <= e_q && space.ram_index_infinity(f_field) <= e_inf_j {
                pairs += 1;
                if pi.d > pq.d {
                    bad.push(format!(
                        "(P{}, P{}): ν(deg) = {} > {}",
                        pi.prime.index, pq.prime.index, pi.d, pq.d
                    ));
                }
            }
        }
    }
    let sel = select_i0(inst);
    if sel.m > sel.t {
        let d0 = inst.prime(sel.i0).d;
        for p in &inst.primes()[..sel.i0 - 1] {
            if p.d < d0 {
                bad.push(format!("d_{} = {} < d_i0 = {d0}", p.prime.index, p.d));
            }
        }
    }
    if bad.is_empty() {
        CheckReport::pass(
            "degree_order",
            format!("{pairs} pairs satisfy the hypothesis"),
        )
    } else {
        CheckReport::fail("degree_order", bad.join("; "))
    }
}
