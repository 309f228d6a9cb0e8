//! Deterministic parallel products of sparse multivariate polynomials.
//!
//! One factor's term list is split into chunks, each chunk is multiplied on
//! a worker thread and the partial products are summed. Exact rational
//! addition is associative and commutative, so the result is bit-identical
//! to the sequential product for any job count.

use hallcross_core::multilaurent::MultiLaurent;

/// `a * b` with up to `jobs` worker threads.
pub fn mul_jobs(a: &MultiLaurent, b: &MultiLaurent, jobs: usize) -> MultiLaurent {
    if jobs <= 1 || a.num_terms() < 2 * jobs {
        return a.try_mul(b).expect("matching variable counts");
    }
    let terms: Vec<_> = a.terms().map(|(m, c)| (*m, c.clone())).collect();
    let chunk = terms.len().div_ceil(jobs);
    let nvars = a.nvars();
    let partials: Vec<MultiLaurent> = std::thread::scope(|scope| {
        let handles: Vec<_> = terms
            .chunks(chunk)
            .map(|slice| {
                let b = b.clone();
                scope.spawn(move || {
                    let part = MultiLaurent::from_terms(nvars, slice.iter().cloned());
                    part.try_mul(&b).expect("matching variable counts")
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut acc = MultiLaurent::zero(nvars);
    for p in &partials {
        acc = &acc + p;
    }
    acc
}
