use std::collections::BTreeSet;
use std::io::Write;

use catalan_core::mountain::{rank_dyck, unrank_dyck};
use catalan_core::oracle::{count_avoiding, enumerate_dyck, enumerate_triangulations};
use catalan_core::triangulation::{
    count_triangulations, ear, rank_triangulation, unrank_triangulation, validate, PolygonContext,
};
use catalan_core::{ballot, catalan, verify_generating_function, BcTable, Natural};

use crate::{CliResult, Failure};

type Outcome = Result<String, String>;

fn recursion(t: &BcTable) -> Outcome {
    t.recheck().map_err(|(n, m)| format!("cell ({n}, {m})"))?;
    Ok(format!("all cells up to n = {}", t.n_max()))
}

fn closed_forms(t: &BcTable) -> Outcome {
    for n in 0..=t.n_max() {
        if t.lookup(n, 0).unwrap() != &catalan(n as u64) {
            return Err(format!("a[{n}][0] != C_{n}"));
        }
        // a[0][0] = 1 sits outside the ballot identity.
        for m in 0..n {
            let b = ballot(n as u64, n as i64 - 1 - m as i64).map_err(|e| e.to_string())?;
            if t.lookup(n, m).unwrap() != &b {
                return Err(format!("a[{n}][{m}] != ballot"));
            }
        }
    }
    Ok("catalan and ballot agree".into())
}

fn generating_function(degree: usize) -> Outcome {
    let r = verify_generating_function(degree);
    if r.is_clean() {
        Ok(format!("degree {degree}, {} coefficients", r.checked))
    } else {
        Err(format!("{} mismatches", r.mismatches.len()))
    }
}

fn triangulation_bijection(t: &BcTable) -> Outcome {
    let top = 10.min(t.n_max() + 2);
    for vertices in 3..=top {
        let ctx = PolygonContext::new(vertices, 0).unwrap();
        let count: u64 = t.lookup(vertices - 2, 0).unwrap().try_into().unwrap();
        let mut seen = BTreeSet::new();
        for c in 0..count {
            let tr = unrank_triangulation(t, &ctx, &Natural::from(c)).map_err(|e| e.to_string())?;
            validate(&ctx, &tr).map_err(|v| format!("N={vertices} code {c}: {v}"))?;
            let back = rank_triangulation(t, &ctx, &tr).map_err(|e| e.to_string())?;
            if back.value != Natural::from(c) {
                return Err(format!("N={vertices} code {c} ranks to {}", back.value));
            }
            seen.insert(tr);
        }
        let oracle: BTreeSet<_> = enumerate_triangulations(vertices)
            .map_err(|e| e.to_string())?
            .into_iter()
            .collect();
        if seen != oracle {
            return Err(format!(
                "N={vertices}: decoded set differs from enumeration"
            ));
        }
    }
    Ok(format!("N = 3..{top} matches enumeration"))
}

fn forbidden_ears(t: &BcTable) -> Outcome {
    let top = 9.min(t.n_max() + 2);
    for vertices in 4..=top {
        for m in 0..=vertices {
            let fast = count_triangulations(t, vertices, m).map_err(|e| e.to_string())?;
            let forbidden: Vec<_> = (0..m).map(|i| ear(vertices, i)).collect();
            let slow = count_avoiding(vertices, &forbidden).map_err(|e| e.to_string())?;
            if fast != slow {
                return Err(format!("N={vertices} m={m}: {fast} vs {slow}"));
            }
        }
    }
    Ok(format!("N = 4..{top}, all m"))
}

fn dyck_bijection(t: &BcTable) -> Outcome {
    let top = 10.min(t.n_max());
    for n in 0..=top {
        let oracle = enumerate_dyck(n).map_err(|e| e.to_string())?;
        for (c, w) in oracle.iter().enumerate() {
            let got = unrank_dyck(t, n, &Natural::from(c)).map_err(|e| e.to_string())?;
            let back = rank_dyck(t, w).map_err(|e| e.to_string())?;
            if &got != w || back.value != Natural::from(c) {
                return Err(format!("n={n} code {c}"));
            }
        }
    }
    Ok(format!("n = 0..{top} matches enumeration in order"))
}

pub(crate) fn run(nmax: usize, degree: usize, out: &mut impl Write) -> CliResult {
    let t = BcTable::build_with_cap(nmax, usize::MAX)?;
    let results = [
        ("recursion", recursion(&t)),
        ("closed forms", closed_forms(&t)),
        ("generating function", generating_function(degree)),
        ("triangulation bijection", triangulation_bijection(&t)),
        ("forbidden ears", forbidden_ears(&t)),
        ("dyck bijection", dyck_bijection(&t)),
    ];
    let mut failures = 0;
    for (name, result) in results {
        match result {
            Ok(msg) => writeln!(out, "ok   {name}: {msg}")?,
            Err(msg) => {
                failures += 1;
                writeln!(out, "FAIL {name}: {msg}")?;
            }
        }
    }
    if failures > 0 {
        return Err(Failure::Internal(format!(
            "{failures} selftest checks failed"
        )));
    }
    writeln!(out, "selftest passed")?;
    Ok(())
}
