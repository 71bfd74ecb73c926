mod support;

use proptest::prelude::*;

use binmach::baselines::{berlekamp_massey, decimate_synthesis, lfsr_parallelize, LfsrSpec};
use binmach::logic::machine_cost;
use binmach::logic::UnitCosts;
use binmach::machine::file::{read_machine, write_machine};
use binmach::machine::{binarize, DcPolicy};
use binmach::sequence::{decode_m_ary, encode_m_ary, DigitSequence};
use binmach::synth::{synthesize_machine, PermutationPolicy};

use support::*;

fn bits() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..2, 1..200)
}

fn policy() -> impl Strategy<Value = PermutationPolicy> {
    prop_oneof![Just(PermutationPolicy::Identity), any::<u64>().prop_map(PermutationPolicy::Shuffle)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn m_ary_and_binary_runs_agree(b in bits(), p in 1u32..=6, perm in policy()) {
        let a = DigitSequence::binary(b.clone()).unwrap();
        let enc = encode_m_ary(&a, p).unwrap();
        let (digits, pad) = encode_oracle(&b, p as usize);
        prop_assert_eq!(enc.sequence.digits(), &digits[..]);
        prop_assert_eq!(&enc.pad, &pad);

        let mm = synthesize_machine(&enc.sequence, perm).unwrap();
        let bm = binarize(&mm).unwrap();
        let cycles = enc.sequence.len();
        let m_out = mm.run(cycles).unwrap();
        prop_assert_eq!(&m_out, &enc.sequence);
        prop_assert_eq!(decode_m_ary(&m_out, p).unwrap(), bm.run(cycles).unwrap());
        prop_assert_eq!(bm.stage_count(), ceil_log2(n_max(&digits)) + p as usize);
    }

    #[test]
    fn every_policy_regenerates(b in bits(), p in 1u32..=5) {
        let a = DigitSequence::binary(b.clone()).unwrap();
        let enc = encode_m_ary(&a, p).unwrap();
        let bm = binarize(&synthesize_machine(&enc.sequence, PermutationPolicy::Identity).unwrap()).unwrap();
        let cycles = enc.sequence.len();
        let units = UnitCosts::default();
        let mut costs = Vec::new();
        for policy in [DcPolicy::Zero, DcPolicy::One, DcPolicy::Minimize] {
            let done = bm.complete(policy).unwrap();
            prop_assert!(done.is_complete());
            let out = done.run(cycles).unwrap();
            prop_assert_eq!(&out.digits()[..b.len()], &b[..]);
            // a file round trip preserves behaviour
            let back = read_machine(&write_machine(&done)).unwrap();
            prop_assert_eq!(back.run(3 * cycles).unwrap(), done.run(3 * cycles).unwrap());
            costs.push(machine_cost(&bm, policy, &units).unwrap());
        }
        prop_assert!(costs[2].and2_count + costs[2].xor2_count <= costs[0].and2_count + costs[0].xor2_count);
        prop_assert!(costs[2].and2_count + costs[2].xor2_count <= costs[1].and2_count + costs[1].xor2_count);
        if let (Some(min), Some(zero)) = (costs[2].sop_literals, costs[0].sop_literals) {
            prop_assert!(min <= zero);
        }
    }

    #[test]
    fn bm_matches_oracle_and_grows_with_prefix(b in prop::collection::vec(0u8..2, 1..300)) {
        let a = DigitSequence::binary(b.iter().map(|&x| u32::from(x))).unwrap();
        let l = berlekamp_massey(&a).unwrap();
        prop_assert_eq!(l.length(), bm_oracle(&b));
        prop_assert!(l.generates(&a));
        let mut prev = 0;
        for n in (1..=b.len()).step_by(17) {
            let ln = bm_oracle(&b[..n]);
            prop_assert!(ln >= prev);
            prev = ln;
        }
    }

    #[test]
    fn parallel_map_matches_serial(len in 1usize..40, seed in any::<u64>()) {
        let bit = |i: usize| (seed.rotate_left(i as u32 * 7) ^ (i as u64 * 0x9e37)) & 1 == 1;
        let coeffs: Vec<bool> = (0..len).map(bit).collect();
        let fill: Vec<bool> = (0..len).map(|i| bit(i + 64)).collect();
        let l = LfsrSpec::new(coeffs, fill).unwrap();
        let serial = l.generate(500);
        for p in 1..=len {
            prop_assert_eq!(&lfsr_parallelize(&l, p).unwrap().run(500usize.div_ceil(p))[..500], &serial[..]);
        }
        let text = l.to_text();
        prop_assert_eq!(LfsrSpec::parse_text(&text).unwrap(), l);
    }

    #[test]
    fn decimation_bound(b in prop::collection::vec(0u32..2, 2..200), p in 1usize..12) {
        prop_assume!(p < b.len());
        let a = DigitSequence::binary(b.clone()).unwrap();
        let bank = decimate_synthesis(&a, p).unwrap();
        let want: Vec<bool> = b.iter().map(|&x| x == 1).collect();
        prop_assert_eq!(bank.interleave(b.len()), want);
        prop_assert!(bank.total_bits() <= p * berlekamp_massey(&a).unwrap().length());
    }
}
