//! Acceptance gate: one PASS/FAIL line per criterion, then a single assert.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use dslice::lattice::detection_residues;
use dslice::{
    classify_4strand_pretzel, component_count, denominator_sequence, embeds_in_ZHS1xS3,
    neg_cf_eval, neg_cf_expand, torsion_image_test, weak_ds_orientation_filter, Factorization,
    IntMatrix, LinkData, MontesinosLink, PairedPlumbing, PretzelVerdict, Rational,
    SeifertInvariants,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sfs(e: i64, pairs: &[(i64, i64)]) -> SeifertInvariants {
    SeifertInvariants::from_pairs(e, pairs).unwrap()
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn worked_q() -> IntMatrix {
    IntMatrix::from_rows(&[
        vec![2, -1, -1, -1, 0, -1, 0, 0],
        vec![-1, 2, 0, 0, 0, 0, 0, 0],
        vec![-1, 0, 2, 0, 0, 0, 0, 0],
        vec![-1, 0, 0, 3, -1, 0, 0, 0],
        vec![0, 0, 0, -1, 3, 0, 0, 0],
        vec![-1, 0, 0, 0, 0, 2, -1, 0],
        vec![0, 0, 0, 0, 0, -1, 3, -1],
        vec![0, 0, 0, 0, 0, 0, -1, 2],
    ])
    .unwrap()
}

fn worked_a_transpose() -> IntMatrix {
    IntMatrix::from_rows(&[
        vec![1, 1, 0, 0, 0, 0, 0],
        vec![-1, 0, 1, 0, 0, 0, 0],
        vec![-1, 0, -1, 0, 0, 0, 0],
        vec![0, -1, 0, 1, 1, 0, 0],
        vec![0, 0, 0, 0, -1, 1, 1],
        vec![0, -1, 0, -1, 0, 0, 0],
        vec![0, 0, 0, 1, -1, -1, 0],
        vec![0, 0, 0, 0, 0, 1, -1],
    ])
    .unwrap()
}

fn worked_example() -> Check {
    let start = Instant::now();
    let pp = PairedPlumbing::new(&sfs(2, &[(2, 1), (2, 1), (8, 3), (8, 5)])).unwrap();
    let q = pp.gram_matrix().unwrap();
    ensure(q == worked_q(), || format!("gram matrix differs:\n{q}"))?;
    let v0 = pp.kernel_vector().unwrap();
    ensure(v0.entries == big(&[8, 4, 4, 3, 1, 5, 2, 1]), || {
        format!("v0 = {:?}", v0.entries)
    })?;
    let fs = dslice::enumerate_factorizations(&q, 7).unwrap();
    let displayed = Factorization::new(worked_a_transpose().transpose(), &q)
        .unwrap()
        .canonical();
    ensure(fs == vec![displayed], || {
        format!("{} classes, expected exactly the displayed one", fs.len())
    })?;
    let w = pp.image_detection_vector(0).unwrap();
    ensure(w == big(&[0, 1, 1, 0, 0, 0, 0, 0]), || {
        format!("wbar = {w:?}")
    })?;
    let witness = pp.coprimality_obstruction().unwrap().ok_or("no witness")?;
    ensure(witness.x == big(&[0, 1, 0, 0, -4, 0, 0, 0]), || {
        format!("x = {:?}", witness.x)
    })?;
    ensure(v0.dot(&witness.x).is_zero(), || "v0·x != 0".into())?;
    let wx: BigInt = w.iter().zip(&witness.x).map(|(a, b)| a * b).sum();
    ensure(wx == BigInt::from(1), || format!("wbar·x = {wx}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })
}

fn random_space(rng: &mut ChaCha8Rng) -> SeifertInvariants {
    let k = rng.gen_range(0..=5);
    let e: i64 = rng.gen_range(-6..=6);
    let coeffs = (0..k)
        .map(|_| loop {
            let p: i64 = rng.gen_range(2..=20) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let q: i64 = rng.gen_range(-25..=25);
            if q != 0 && p.gcd(&q) == 1 {
                break Rational::new(p, q).unwrap();
            }
        })
        .collect();
    SeifertInvariants::new(e, coeffs).unwrap()
}

fn homology_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut spaces: Vec<SeifertInvariants> = (0..200).map(|_| random_space(&mut rng)).collect();
    spaces.extend([
        sfs(2, &[(2, 1), (2, 1), (8, 3), (8, 5)]),
        sfs(0, &[(5, 1), (5, 2), (-5, 2), (-5, 1)]),
        sfs(0, &[(5, 2), (-5, 2), (5, 2), (-5, 2)]),
        sfs(0, &[(2, 1), (-2, 1), (3, 1), (-3, 1)]),
        sfs(0, &[(3, 1), (-3, 1), (3, 1), (-3, 1)]),
        sfs(1, &[(2, 1)]),
        sfs(0, &[]),
    ]);
    for y in &spaces {
        ensure(y.homology() == y.homology_oracle(), || {
            format!("{y}: {} vs {}", y.homology(), y.homology_oracle())
        })?;
    }
    Ok(())
}

fn continued_fractions() -> Check {
    for p in 2..=200i64 {
        for q in 1..p {
            if p.gcd(&q) != 1 {
                continue;
            }
            let r = Rational::new(p, q).unwrap();
            let cf = neg_cf_expand(&r).map_err(|e| format!("{r}: {e}"))?;
            ensure(cf.terms().iter().all(|a| *a >= BigInt::from(2)), || {
                format!("{r}: {cf}")
            })?;
            ensure(neg_cf_eval(&cf) == r, || {
                format!("{r}: eval {}", neg_cf_eval(&cf))
            })?;
            ensure(denominator_sequence(&cf)[0] == BigInt::from(q), || {
                format!("{r}: b1")
            })?;
        }
    }
    Ok(())
}

const SEEDS: &[(i64, &[(i64, i64)])] = &[
    (1, &[(2, 1), (2, 1)]),
    (2, &[(2, 1), (2, 1), (2, 1), (2, 1)]),
    (1, &[(3, 1), (3, 2)]),
    (2, &[(2, 1), (2, 1), (3, 1), (3, 2)]),
    (2, &[(3, 1), (3, 2), (3, 1), (3, 2)]),
    (2, &[(3, 1), (3, 2), (4, 1), (4, 3)]),
    (2, &[(2, 1), (2, 1), (5, 2), (5, 3)]),
    (2, &[(3, 1), (3, 2), (5, 2), (5, 3)]),
    (2, &[(2, 1), (2, 1), (5, 1), (5, 4)]),
    (3, &[(2, 1), (2, 1), (2, 1), (2, 1), (2, 1), (2, 1)]),
    (3, &[(2, 1), (2, 1), (2, 1), (2, 1), (3, 1), (3, 2)]),
    (2, &[(4, 1), (4, 3), (4, 1), (4, 3)]),
    (2, &[(2, 1), (2, 1), (7, 2), (7, 5)]),
    (2, &[(2, 1), (2, 1), (7, 3), (7, 4)]),
    (2, &[(5, 2), (5, 3), (5, 2), (5, 3)]),
    (
        4,
        &[
            (2, 1),
            (2, 1),
            (2, 1),
            (2, 1),
            (2, 1),
            (2, 1),
            (2, 1),
            (2, 1),
        ],
    ),
    (2, &[(2, 1), (2, 1), (4, 1), (4, 3)]),
    (2, &[(4, 1), (4, 3), (2, 1), (2, 1)]),
    (2, &[(2, 1), (2, 1), (8, 3), (8, 5)]),
    (2, &[(8, 3), (8, 5), (2, 1), (2, 1)]),
    (2, &[(2, 1), (2, 1), (6, 1), (6, 5)]),
    (3, &[(2, 1), (2, 1), (2, 1), (2, 1), (4, 1), (4, 3)]),
    (2, &[(2, 1), (2, 1), (9, 2), (9, 7)]),
    (2, &[(3, 2), (3, 1), (5, 3), (5, 2)]),
];

struct Seed {
    y: SeifertInvariants,
    pp: PairedPlumbing,
    fs: Vec<Factorization>,
}

fn seeds() -> Vec<Seed> {
    SEEDS
        .iter()
        .map(|&(e, pairs)| {
            let y = sfs(e, pairs);
            let pp = PairedPlumbing::new(&y).unwrap();
            let fs = pp.factorizations().unwrap();
            Seed { y, pp, fs }
        })
        .collect()
}

fn cross_validation(seeds: &[Seed]) -> Check {
    let (mut yes, mut no) = (0, 0);
    for s in seeds {
        ensure(s.pp.graph().vertex_count() <= 9, || {
            format!("{}: too many vertices", s.y)
        })?;
        ensure(s.y.euler_number().is_zero(), || {
            format!("{}: eps != 0", s.y)
        })?;
        let v0 = s.pp.kernel_vector().unwrap();
        let witness = s.pp.coprimality_obstruction().unwrap();
        if embeds_in_ZHS1xS3(&s.y).is_yes() {
            yes += 1;
            ensure(witness.is_none(), || {
                format!("{}: YES but a witness exists", s.y)
            })?;
        } else {
            no += 1;
            let w = witness.ok_or_else(|| format!("{}: NO without witness", s.y))?;
            for a1 in &s.fs {
                for a2 in &s.fs {
                    ensure(!torsion_image_test(a1, a2, &v0, &w.x), || {
                        format!("{}: witness lies in the image", s.y)
                    })?;
                }
            }
        }
    }
    ensure(yes > 0 && no > 0 && seeds.len() >= 20, || {
        format!("seed mix {yes} YES / {no} NO")
    })
}

fn binary(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_dslice"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        String::from_utf8_lossy(&out.stderr).into_owned()
    })?;
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn montesinos_pipeline() -> Check {
    let v = binary(&["montesinos", "M(0; 5, 5/2, -5/2, -5)"])?;
    ensure(v["components"] == 2, || {
        format!("components {}", v["components"])
    })?;
    ensure(v["weak_ds"] == "YES-both", || {
        format!("weak_ds {}", v["weak_ds"])
    })?;
    ensure(v["strong_ds"]["answer"] == "NO", || {
        format!("strong_ds {}", v["strong_ds"])
    })?;
    let w = &v["strong_ds"]["witness"];
    ensure(w["kind"] == "common_factor" && w["gcd"] == 5, || {
        format!("witness {w}")
    })?;
    let v = binary(&["montesinos", "M(0; 3, -3, 3, -3)"])?;
    ensure(v["strong_ds"]["answer"] == "YES", || {
        format!("strong_ds {}", v["strong_ds"])
    })
}

fn pretzel_table() -> Check {
    for a in 2..=9i64 {
        for b in 2..=9i64 {
            if a % 2 == 0 && b % 2 == 0 {
                continue;
            }
            let v = classify_4strand_pretzel([a, b, -b, -a]);
            ensure(v == Ok(PretzelVerdict::SliceWeakDsBoth), || {
                format!("P({a},{b},{},{}): {v:?}", -b, -a)
            })?;
        }
    }
    // strands of the form a, b, -b, -a sum to zero in every order
    let mut sample: Vec<[i64; 4]> = vec![[3, 5, -5, -7]];
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    while sample.len() < 50 {
        let s: [i64; 4] =
            std::array::from_fn(|_| rng.gen_range(2..=9) * if rng.gen_bool(0.5) { 1 } else { -1 });
        if s.iter().sum::<i64>() != 0 && component_count(&MontesinosLink::pretzel(&s)) == 2 {
            sample.push(s);
        }
    }
    for s in sample {
        let v = classify_4strand_pretzel(s);
        ensure(v == Ok(PretzelVerdict::NotSlice), || {
            format!("P{s:?}: {v:?}")
        })?;
    }
    Ok(())
}

fn orientation_filter() -> Check {
    for n in 1..=3i64 {
        // components T (the odd strand's torus knot), U1, U2
        let data = LinkData {
            n: 3,
            lk: vec![vec![0, n, n], vec![n, 0, n], vec![n, n, 0]],
            slice: vec![false, true, true],
        };
        let good = weak_ds_orientation_filter(&data).map_err(|e| e.to_string())?;
        ensure(good.len() == 1, || {
            format!("n = {n}: {} quasi-orientations", good.len())
        })?;
    }
    Ok(())
}

fn lemma_properties(seeds: &[Seed]) -> Check {
    let mut total = 0;
    for s in seeds {
        let l = s.pp.graph().central_weight() as usize;
        for f in &s.fs {
            total += 1;
            let centre = f.matrix().col(0);
            let mut normalized: Vec<i64> = centre.iter().map(|x| x.abs()).collect();
            normalized.sort_by(|a, b| b.cmp(a));
            let mut expected = vec![1; l];
            expected.resize(centre.len(), 0);
            ensure(normalized == expected, || {
                format!("{}: central row {centre:?}", s.y)
            })?;
            let part =
                s.pp.central_row_structure(f)
                    .map_err(|e| format!("{}: {e}", s.y))?;
            for (a, b) in part.classes {
                let sum =
                    s.pp.graph().arm_fraction(a).recip() + s.pp.graph().arm_fraction(b).recip();
                ensure(sum == Rational::one(), || {
                    format!("{}: arms {a},{b} sum {sum}", s.y)
                })?;
            }
            for (j, class) in s.pp.classes().iter().enumerate() {
                let w = s.pp.image_detection_vector(j).unwrap();
                let res = detection_residues(&w, f, &class.p);
                ensure(res.iter().all(Zero::is_zero), || {
                    format!("{}: wbar residues {res:?}", s.y)
                })?;
            }
        }
    }
    ensure(total > 0, || "no factorizations enumerated".into())
}

#[test]
fn acceptance() {
    let mut results: Vec<(&str, Check)> = Vec::new();
    results.push(("1 worked 8-vertex example", worked_example()));
    results.push(("2 homology formula vs Smith normal form", homology_oracle()));
    results.push(("3 continued fraction suite", continued_fractions()));
    let start = Instant::now();
    let seeds = seeds();
    let c4 = cross_validation(&seeds).and_then(|()| {
        let t = start.elapsed();
        ensure(t < Duration::from_secs(600), || format!("took {t:?}"))
    });
    results.push(("4 classifier / obstruction cross-validation", c4));
    results.push(("5 Montesinos pipeline via CLI", montesinos_pipeline()));
    results.push(("6 four-strand pretzel table", pretzel_table()));
    results.push(("7 quasi-orientation filter", orientation_filter()));
    results.push((
        "8 central row, arm pairs and wbar on all factorizations",
        lemma_properties(&seeds),
    ));
    // written to the raw handle so the lines survive libtest's capture
    let mut err = std::io::stderr().lock();
    let mut failed = 0;
    for (name, r) in &results {
        let line = match r {
            Ok(()) => format!("PASS criterion {name}\n"),
            Err(e) => {
                failed += 1;
                format!("FAIL criterion {name}: {e}\n")
            }
        };
        err.write_all(line.as_bytes()).unwrap();
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
