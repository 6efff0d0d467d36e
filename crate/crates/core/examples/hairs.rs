//! Hairs by inverse iteration, their endpoints, and the separation of
//! endpoints by itinerary.
use expbouquet::symbolic::{
    default_anchor, endpoint_estimate, itinerary, separation_index, trace_hair, ExternalAddress,
};
use expbouquet::{Complex64, Params};

fn main() {
    let p = Params::new(Complex64::new(-2.0, 0.0)).unwrap();
    let addresses: Vec<ExternalAddress> = ["|0", "|1", "0,1|0", "0,-1|0", "0,0,2|0"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();

    let s = &addresses[2];
    for depth in [2, 4, 8, 16] {
        let h = trace_hair(&p, s, depth, default_anchor(&p)).unwrap();
        println!(
            "hair {s} depth {depth:>2}: z = {:.10}, itinerary {:?}",
            h.z,
            itinerary(&p, h.z, 4).unwrap()
        );
    }

    let ends: Vec<Complex64> = addresses
        .iter()
        .map(|s| {
            let e = endpoint_estimate(&p, s, 1e-10, 400).unwrap();
            println!(
                "endpoint {s:<8} = {:.12} (depth {}, converged {})",
                e.point.z, e.point.depth, e.converged
            );
            e.point.z
        })
        .collect();

    for i in 0..ends.len() {
        for j in i + 1..ends.len() {
            let k = separation_index(&p, ends[i], ends[j], 8).unwrap();
            println!(
                "{} / {}: separated at step {k:?}",
                addresses[i], addresses[j]
            );
        }
    }
}
