use std::collections::BTreeMap;

use arrzeta::arrangement::ArrangementJson;
use arrzeta::bfunc::{conjecture_report, ConjectureReport};
use arrzeta::corpus::{check_entry, AnnotationCheck, CorpusEntry};
use arrzeta::igusa::{
    brute_force_igusa, euler_from_point_count, good_reduction, igusa_zeta, specialization_bridge, Enclosure, GoodReductionCheck,
};
use arrzeta::lattice::{build_lattice, matroid_decompose, poincare_polynomial, proj_complement_euler, IntersectionLattice};
use arrzeta::symbolic::{fmt_q, Q};
use arrzeta::topzeta::{candidate_poles_in, certify_poles, monodromy_zeta, zeta_top, CandidatePole, EigenvalueCertificate};
use arrzeta::{Arrangement, Error, Result};
use serde::Serialize;

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub primes: Vec<u64>,
    pub brute_depth: Option<u32>,
    pub specialize: bool,
}

#[derive(Serialize)]
pub struct EdgeRow {
    pub id: usize,
    pub dim: usize,
    pub codim: usize,
    pub support: Vec<usize>,
    pub a_w: u32,
    pub mobius: i64,
    pub dense: bool,
}

#[derive(Serialize)]
pub struct LatticeSummary {
    pub edges: Vec<EdgeRow>,
    pub poincare: String,
    pub euler: i64,
    pub matroid_parts: Vec<Vec<usize>>,
    pub decomposable: bool,
}

pub fn lattice_summary(a: &Arrangement, l: &IntersectionLattice) -> Result<LatticeSummary> {
    let euler = proj_complement_euler(l)?;
    let parts = matroid_decompose(&a.essentialize()?.0);
    Ok(LatticeSummary {
        edges: l
            .edges()
            .iter()
            .map(|e| EdgeRow {
                id: e.id,
                dim: e.dim,
                codim: e.codim,
                support: e.support.clone(),
                a_w: e.a_w,
                mobius: e.mobius,
                dense: e.dense,
            })
            .collect(),
        poincare: poincare_polynomial(l).to_string_in("t"),
        euler,
        decomposable: euler == 0,
        matroid_parts: parts,
    })
}

#[derive(Serialize)]
pub struct Pole {
    pub value: String,
    pub order: u32,
}

#[derive(Serialize)]
pub struct ZetaSection {
    pub zeta_top: String,
    pub poles: Vec<Pole>,
    pub candidates: Vec<CandidatePole>,
    pub certificates: Vec<EigenvalueCertificate>,
}

pub fn zeta_section(a: &Arrangement, l: &IntersectionLattice) -> Result<ZetaSection> {
    let z = zeta_top(a)?;
    Ok(ZetaSection {
        zeta_top: z.to_string(),
        poles: z.poles().into_iter().map(|(v, order)| Pole { value: fmt_q(&v), order }).collect(),
        candidates: candidate_poles_in(l),
        certificates: certify_poles(a)?,
    })
}

#[derive(Serialize)]
pub struct BruteSection {
    pub enclosure: Enclosure,
    pub exact: String,
    pub contained: bool,
}

#[derive(Serialize)]
pub struct IgusaSection {
    pub prime: u64,
    pub good_reduction: GoodReductionCheck,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zeta: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pole_real_parts: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_force: Option<BruteSection>,
}

pub fn exact_at(a: &Arrangement, p: u64, s: u32) -> Result<Q> {
    let pq = Q::from_integer(p.into());
    let t = Q::from_integer(1.into()) / Q::from_integer(pq.to_integer().pow(s));
    igusa_zeta(a)?.eval(&pq, &t).ok_or(Error::DivisionByZero)
}

pub fn brute_section(a: &Arrangement, p: u64, k: u32, s: u32) -> Result<BruteSection> {
    let enclosure = brute_force_igusa(a, p, k, s)?;
    let exact = exact_at(a, p, s)?;
    Ok(BruteSection { contained: enclosure.contains(&exact), exact: fmt_q(&exact), enclosure })
}

pub fn igusa_section(a: &Arrangement, p: u64, brute: Option<(u32, u32)>) -> Result<IgusaSection> {
    let check = good_reduction(a, p)?;
    if !check.ok {
        return Ok(IgusaSection { prime: p, good_reduction: check, zeta: None, pole_real_parts: None, brute_force: None });
    }
    let z = igusa_zeta(a)?;
    let brute_force = match brute {
        Some((k, s)) => Some(brute_section(a, p, k, s)?),
        None => None,
    };
    Ok(IgusaSection {
        prime: p,
        good_reduction: check,
        zeta: Some(z.at_prime(p).to_string()),
        pole_real_parts: Some(z.pole_real_parts().iter().map(fmt_q).collect()),
        brute_force,
    })
}

#[derive(Serialize)]
pub struct BridgeSection {
    pub igusa: String,
    pub limit: String,
    pub top: String,
}

#[derive(Serialize)]
pub struct Report {
    pub arrangement: ArrangementJson,
    pub degree: u32,
    pub central: bool,
    pub essential: bool,
    pub lattice: LatticeSummary,
    pub zeta: ZetaSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monodromy: Option<String>,
    pub conjecture: ConjectureReport,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub igusa: Vec<IgusaSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bridge: Option<BridgeSection>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<AnnotationCheck>,
}

pub fn conjecture_with_literature(a: &Arrangement, entry: Option<&CorpusEntry>) -> Result<ConjectureReport> {
    let mut rep = conjecture_report(a)?;
    if let Some((c, note)) = entry.and_then(|e| e.literature()) {
        rep.annotate(&c, &note);
    }
    Ok(rep)
}

pub fn build_report(a: &Arrangement, entry: Option<&CorpusEntry>, opts: &Options) -> Result<Report> {
    a.require_central()?;
    let l = build_lattice(a)?;
    let lattice = lattice_summary(a, &l)?;
    let zeta = zeta_section(a, &l)?;
    let monodromy = if a.is_essential() { Some(monodromy_zeta(a)?.to_string()) } else { None };
    let conjecture = conjecture_with_literature(a, entry)?;
    let mut igusa = Vec::new();
    for &p in &opts.primes {
        igusa.push(igusa_section(a, p, opts.brute_depth.map(|k| (k, 1)))?);
    }
    let bridge = if opts.specialize {
        let b = specialization_bridge(a)?;
        Some(BridgeSection { igusa: b.igusa.to_string(), limit: b.limit.to_string(), top: b.top.to_string() })
    } else {
        None
    };
    let annotations = match entry {
        Some(e) => check_entry(e)?,
        None => Vec::new(),
    };
    Ok(Report {
        arrangement: a.to_json(),
        degree: a.degree(),
        central: a.is_central(),
        essential: a.is_essential(),
        lattice,
        zeta,
        monodromy,
        conjecture,
        igusa,
        bridge,
        annotations,
    })
}

/// Outcome of the cross-checks run on one corpus entry.
#[derive(Serialize)]
pub struct EntryOutcome {
    pub name: String,
    pub passed: bool,
    pub failures: Vec<String>,
    pub checks: BTreeMap<String, bool>,
}

pub fn run_entry(e: &CorpusEntry, opts: &Options) -> EntryOutcome {
    let mut failures = Vec::new();
    let mut checks = BTreeMap::new();
    let mut record = |name: &str, r: Result<Option<String>>| {
        let ok = matches!(r, Ok(None));
        checks.insert(name.to_string(), ok);
        match r {
            Ok(None) => {}
            Ok(Some(msg)) => failures.push(format!("{name}: {msg}")),
            Err(err) => failures.push(format!("{name}: {err}")),
        }
    };
    let a = e.arrangement();
    record(
        "annotations",
        check_entry(e).map(|cs| {
            let bad: Vec<String> = cs
                .iter()
                .filter(|c| !c.ok)
                .map(|c| format!("{} expected {} computed {}", c.key, c.expected, c.computed))
                .collect();
            (!bad.is_empty()).then(|| bad.join("; "))
        }),
    );
    record("pole_witnesses", certify_poles(&a).map(|_| None));
    record(
        "decomposition",
        (|| {
            let l = build_lattice(&a)?;
            let euler = proj_complement_euler(&l)?;
            let parts = matroid_decompose(&a.essentialize()?.0).len();
            let by_count = euler_from_point_count(&l)?;
            if (euler == 0) != (parts > 1) {
                return Ok(Some(format!("euler {euler} but {parts} matroid parts")));
            }
            if euler != by_count {
                return Ok(Some(format!("euler {euler} but point count gives {by_count}")));
            }
            Ok(None)
        })(),
    );
    for &p in &opts.primes {
        record(
            &format!("igusa_{p}"),
            (|| {
                if !good_reduction(&a, p)?.ok {
                    return Ok(None);
                }
                let z = igusa_zeta(&a)?;
                let one = Q::from_integer(1.into());
                if z.eval(&Q::from_integer(p.into()), &one) != Some(one) {
                    return Ok(Some("value at t = 1 is not 1".to_string()));
                }
                if let Some(k) = opts.brute_depth {
                    if a.dim() <= 3 && a.degree() <= 6 {
                        let b = brute_section(&a, p, k, 1)?;
                        if !b.contained {
                            return Ok(Some(format!("exact {} outside enclosure", b.exact)));
                        }
                    }
                }
                Ok(None)
            })(),
        );
    }
    if opts.specialize && a.is_essential() && a.dim() <= 3 {
        record("bridge", specialization_bridge(&a).map(|_| None));
    }
    EntryOutcome { name: e.name.to_string(), passed: failures.is_empty(), failures, checks }
}
