use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use wreathhom::counting::fit_decay;
use wreathhom::oracle::{enumerate_homs, WREATH_CAP};
use wreathhom::serial::rational_string;
use wreathhom::{
    build_wreath_group, oracle_delta, AbelianGroup, DistributionTable, FiniteGroup, Sampler,
    WreathModel,
};

use crate::job::{resolve_group, JobError};

const DESK_GROUPS: [&str; 6] = ["C1", "C2", "C3", "C4", "V4", "S3"];
const DESK_TARGETS: [&[usize]; 3] = [&[2], &[3], &[2, 2]];

fn ratio(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

/// Adds `"n"` to a record when the job covers more than one value of `n`.
fn tag(range: &RangeInclusive<usize>, n: usize, mut record: Value) -> Value {
    if range.start() != range.end() {
        let mut tagged = serde_json::Map::new();
        tagged.insert("n".into(), json!(n));
        tagged.extend(record.as_object_mut().expect("records are objects").clone());
        record = Value::Object(tagged);
    }
    record
}

pub fn count(g: &FiniteGroup, a: &AbelianGroup, range: RangeInclusive<usize>, cap: usize, out: &mut Vec<Value>) -> Result<(), JobError> {
    let table = WreathModel::new(g, a).count_table_with_cap(*range.end(), cap)?;
    for n in range {
        out.push(json!({ "n": n, "count": table.count(n).to_string() }));
    }
    Ok(())
}

pub fn pfree(g: &FiniteGroup, a: &AbelianGroup, range: RangeInclusive<usize>, cap: usize, out: &mut Vec<Value>) -> Result<(), JobError> {
    let p = WreathModel::new(g, a).fixed_point_free_table_with_cap(*range.end(), cap)?;
    for n in range.clone() {
        out.push(tag(&range, n, json!({ "p": rational_string(&p[n]) })));
    }
    Ok(())
}

pub fn delta(g: &FiniteGroup, a: &AbelianGroup, range: RangeInclusive<usize>, cap: usize, out: &mut Vec<Value>) -> Result<(), JobError> {
    let model = WreathModel::new(g, a);
    let fibers = model.fiber_table_with_cap(*range.end(), cap)?;
    let p = model.fixed_point_free_table_with_cap(*range.end(), cap)?;
    for n in range {
        let dist = DistributionTable::from_fibers(n, fibers[n].clone());
        out.push(json!({
            "n": n,
            "fibers": dist.fiber_counts.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "total": dist.total().to_string(),
            "supDistance": rational_string(&dist.sup_distance_from_uniform()),
            "p": rational_string(&p[n]),
        }));
    }
    if out.len() == 1 {
        out[0]["homs"] = model.homs().to_json();
    }
    Ok(())
}

pub fn weyl(g: &FiniteGroup, range: RangeInclusive<usize>, cap: usize, out: &mut Vec<Value>) -> Result<(), JobError> {
    let c2 = AbelianGroup::cyclic(2)?;
    let model = WreathModel::new(g, &c2);
    let fibers = model.fiber_table_with_cap(*range.end(), cap)?;
    let totals = model.count_table_with_cap(*range.end(), cap)?;
    let limit = BigRational::new(1.into(), BigInt::from(model.homs().len()));
    for n in range.clone() {
        let count = &fibers[n][0];
        out.push(tag(
            &range,
            n,
            json!({
                "count": count.to_string(),
                "ratio": rational_string(&ratio(count, totals.count(n))),
                "limit": rational_string(&limit),
            }),
        ));
    }
    Ok(())
}

pub fn sample(
    g: &FiniteGroup,
    a: &AbelianGroup,
    range: RangeInclusive<usize>,
    draws: usize,
    seed: u64,
    cap: usize,
    out: &mut Vec<Value>,
) -> Result<(), JobError> {
    if *range.end() > cap {
        return Err(JobError::CapExceeded(format!("n = {} exceeds the cap {cap}", range.end())));
    }
    let model = WreathModel::new(g, a);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in range {
        let sampler = Sampler::new(&model, n)?;
        for _ in 0..draws {
            let hom = sampler.sample_hom(&mut rng);
            out.push(serde_json::to_value(&hom).map_err(|e| JobError::Other(e.to_string()))?);
        }
    }
    Ok(())
}

/// Checks recurrence, direct stratified sum and brute-force enumeration
/// against each other on the desk suite, optionally narrowed to one group or
/// one coefficient group.
pub fn oracle_check(
    group: Option<&str>,
    target: Option<&AbelianGroup>,
    out: &mut Vec<Value>,
) -> Result<(), JobError> {
    let groups: Vec<String> = match group {
        Some(name) => vec![name.to_string()],
        None => DESK_GROUPS.iter().map(|s| s.to_string()).collect(),
    };
    let targets: Vec<AbelianGroup> = match target {
        Some(a) => vec![a.clone()],
        None => DESK_TARGETS
            .iter()
            .map(|f| AbelianGroup::new(f.to_vec()))
            .collect::<Result<_, _>>()?,
    };
    let mut failures = 0usize;
    for name in &groups {
        let g = resolve_group(name)?;
        for a in &targets {
            let model = WreathModel::new(&g, a);
            for n in 1..=4usize {
                let wreath_order = BigUint::from(a.order()).pow(n as u32)
                    * (1..=n).product::<usize>();
                if n == 4 && wreath_order > BigUint::from(WREATH_CAP) {
                    continue;
                }
                let recurrence = model.hom_count_wreath(n)?;
                let direct = model.hom_count_direct(n)?;
                let enumerated = enumerate_homs(&g, &build_wreath_group(a, n)?)?.len();
                let fibers = model.delta_distribution(n)?.fiber_counts;
                let oracle_fibers = oracle_delta(&g, model.homs(), n)?.fiber_counts;
                let ok = recurrence == direct
                    && recurrence == BigUint::from(enumerated)
                    && fibers == oracle_fibers;
                failures += usize::from(!ok);
                out.push(json!({
                    "group": name,
                    "A": a.factors(),
                    "n": n,
                    "recurrence": recurrence.to_string(),
                    "direct": direct.to_string(),
                    "enumerated": enumerated.to_string(),
                    "fibersMatch": fibers == oracle_fibers,
                    "ok": ok,
                }));
            }
        }
    }
    out.push(json!({ "cases": out.len(), "failures": failures }));
    if failures > 0 {
        return Err(JobError::VerificationFailed(format!("{failures} cases disagree")));
    }
    Ok(())
}

pub fn fit(g: &FiniteGroup, a: &AbelianGroup, range: RangeInclusive<usize>, cap: usize, out: &mut Vec<Value>) -> Result<(), JobError> {
    let model = WreathModel::new(g, a);
    let p = model.fixed_point_free_table_with_cap(*range.end(), cap)?;
    let points: Vec<(usize, BigRational)> = range.map(|n| (n, p[n].clone())).collect();
    let (slope, intercept, used) = fit_decay(&points, g.order()).ok_or_else(|| {
        JobError::Other("fewer than two n in the range have pₙ > 0".into())
    })?;
    let constant = model.decay_constant();
    out.push(json!({
        "slope": slope,
        "intercept": intercept,
        "points": used,
        "d": g.order(),
        "constant": constant.value,
        "conservative": rational_string(&constant.conservative),
    }));
    Ok(())
}
