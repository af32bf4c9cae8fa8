//! Fixed workloads shared by the criterion benches.

use dynamis_core::generators::{gen_random, Family, GenSpec};
use dynamis_core::scaling::ScalingFamily;
use dynamis_core::{Algorithm, UpdateStream};

/// A named stream together with the algorithms that can consume it.
pub struct Workload {
    pub name: &'static str,
    pub stream: UpdateStream,
    pub algorithms: &'static [Algorithm],
}

fn random(family: Family, n: usize, events: usize, p_insert: f64) -> UpdateStream {
    let mut spec = GenSpec::random(family, n, events, 17);
    spec.p_insert = p_insert;
    gen_random(&spec).expect("valid spec")
}

pub fn workloads() -> Vec<Workload> {
    use Algorithm::*;
    vec![
        Workload {
            name: "random-fd-200",
            stream: random(Family::RandomEdges, 200, 4000, 0.7),
            algorithms: &[MisSimple, Mis2Level, MisImplicit],
        },
        Workload {
            name: "random-inc-200",
            stream: random(Family::RandomEdges, 200, 4000, 1.0),
            algorithms: &[MisInc, MisImplicit, MatchInc],
        },
        Workload {
            name: "arbitrary-removal-4096",
            stream: ScalingFamily::ArbitraryRemoval
                .stream(4096)
                .expect("valid size"),
            algorithms: &[MisSimple, Mis2Level],
        },
        Workload {
            name: "degree-biased-4096",
            stream: ScalingFamily::DegreeBiased
                .stream(4096)
                .expect("valid size"),
            algorithms: &[MisInc, Mis2Level],
        },
        Workload {
            name: "flow-fd-60",
            stream: random(Family::RandomFlow, 60, 1500, 0.7),
            algorithms: &[FlowFd],
        },
        Workload {
            name: "flow-inc-60",
            stream: random(Family::RandomFlow, 60, 1500, 1.0),
            algorithms: &[FlowInc],
        },
        Workload {
            name: "matching-fd-100",
            stream: random(Family::RandomMatching, 100, 2000, 0.7),
            algorithms: &[MatchFd],
        },
    ]
}
