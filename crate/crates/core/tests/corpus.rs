use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ribbon_core::corpus;
use ribbon_core::fd::BrauerQuotient;
use ribbon_core::field::PrimeField;
use ribbon_core::polarization::Polarization;
use ribbon_core::quiver::{GentleQuiver, MultiplicityMap};
use ribbon_core::specfile::{parse_instance, to_spec_string};

/// Every orbit assignment with entries in 1..=3 when there are few orbits,
/// otherwise the uniform ones plus a seeded sample.
fn assignments(orbits: usize) -> Vec<Vec<u32>> {
    if orbits <= 4 {
        let mut out = vec![vec![]];
        for _ in 0..orbits {
            out = out.into_iter().flat_map(|v| (1..=3).map(move |m| [v.clone(), vec![m]].concat())).collect();
        }
        return out;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut out: Vec<Vec<u32>> = (1..=3).map(|m| vec![m; orbits]).collect();
    out.extend((0..12).map(|_| (0..orbits).map(|_| rng.gen_range(1..=3)).collect()));
    out
}

fn multiplicity(q: &GentleQuiver, values: &[u32]) -> MultiplicityMap {
    let pairs: Vec<(String, u32)> = (0..q.orbits().len())
        .map(|o| (q.arrow_name(q.orbits().representative(o)).to_string(), values[o]))
        .collect();
    MultiplicityMap::from_pairs(q, 1, &pairs).unwrap()
}

#[test]
fn quotient_dimensions_over_multiplicities_up_to_three() {
    let f = PrimeField::new(2).unwrap();
    for entry in corpus::all() {
        let q = entry.instance().quiver;
        let eps = Polarization::standard(&q);
        for values in assignments(q.orbits().len()) {
            let m = multiplicity(&q, &values);
            // each arrow of an orbit of size s has a cycle of length s
            let want: usize = q.orbits().iter().zip(&values).map(|(o, &mv)| mv as usize * o.len() * o.len()).sum();
            let a = BrauerQuotient::twisted(f, &q, &m, &eps);
            let b = BrauerQuotient::untwisted(f, &q, &m, &eps);
            assert_eq!((a.dim(), b.dim()), (want, want), "{} m={values:?}", entry.name);
        }
    }
}

#[test]
fn corpus_entries_round_trip_through_spec_text() {
    for entry in corpus::all() {
        let inst = entry.instance();
        let again = parse_instance(&to_spec_string(&inst.quiver, &inst.multiplicity)).unwrap();
        assert_eq!(again.quiver, inst.quiver, "{}", entry.name);
        assert_eq!(again.multiplicity, inst.multiplicity, "{}", entry.name);
    }
}
